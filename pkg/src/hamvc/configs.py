"""Detectors for the geometric configurations that force shattered sets.

Conventions for d = 2: a point is (column, row). A *column* (vertical line)
fixes coordinate 0 and frees coordinate 1; a *row* (horizontal line) fixes
coordinate 1 and frees coordinate 0.

Every detector is deterministic: lines are scanned by (free coordinate,
fixed values), members in index order, and the first hit wins.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional

from .core import Line, Plane, Point, PointSet, PreconditionError, collinear, slice_set
from .shatter import ShatterWitness, witness_failure

KINDS = ("LineTriple", "Corner", "Fist", "Rectangle", "Pluck", "FourOnALine")


class ConfigError(ValueError):
    """A configuration cannot be turned into a witness; ``role`` names what is missing."""

    def __init__(self, message: str, role: Optional[str] = None):
        super().__init__(message)
        self.role = role


@dataclass(frozen=True)
class Configuration:
    kind: str
    roles: dict = field(hash=False)
    lines: tuple[Line, ...] = ()
    hole: Optional[Point] = None
    orientation: Optional[str] = None
    plane: Optional[Plane] = None

    def __getitem__(self, role: str) -> Point:
        return self.roles[role]

    def to_json(self):
        out = {
            "kind": self.kind,
            "roles": {k: list(v) for k, v in self.roles.items()},
            "lines": [ln.to_json() for ln in self.lines],
            "hole": list(self.hole) if self.hole is not None else None,
        }
        if self.orientation is not None:
            out["orientation"] = self.orientation
        if self.plane is not None:
            out["plane"] = self.plane.to_json()
        return out


def _require(U: PointSet, *, t: int, d: Optional[int] = None, min_d: int = 1, what: str):
    p = U.params
    if p.t != t:
        raise PreconditionError(f"{what} detection needs t={t}, got {p}")
    if d is not None and p.d != d:
        raise PreconditionError(f"{what} detection needs d={d}, got {p}")
    if p.d < min_d:
        raise PreconditionError(f"{what} detection needs d >= {min_d}, got {p}")


def _lines(U: PointSet) -> dict[tuple[int, tuple[int, ...]], list[Point]]:
    """Members grouped by line, keyed (free_coord, fixed values) and sorted by key."""
    groups = defaultdict(list)
    for p in U.points:
        for j in range(len(p)):
            groups[(j, p[:j] + p[j + 1 :])].append(p)
    return dict(sorted(groups.items()))


def find_line_triple(U: PointSet) -> Optional[Configuration]:
    """Three points x, y, z of U on a line L and a fourth u0 off L.

    x and y are picked so that neither shares a line with u0; at most one
    point of L can, and that one becomes z.
    """
    _require(U, t=1, what="line-triple")
    for (j, fixed), pts in _lines(U).items():
        if len(pts) < 3:
            continue
        L = Line(j, fixed)
        u0 = next((p for p in U.points if not L.contains(p)), None)
        if u0 is None:
            continue
        clash = [p for p in pts if collinear(p, u0)]
        z = clash[0] if clash else pts[2]
        x, y = [p for p in pts if p != z][:2]
        return Configuration("LineTriple", {"x": x, "y": y, "z": z, "u0": u0}, (L,))
    return None


def find_corner(U: PointSet) -> Optional[Configuration]:
    """Points (a,d), (b,c), (b,d) of U whose rectangle-completing (a,c) is missing."""
    _require(U, t=1, d=2, what="corner")
    q = U.params.q
    for a, c in product(range(q), repeat=2):
        if (a, c) in U:
            continue
        for b in range(q):
            if b == a or (b, c) not in U:
                continue
            for d in range(q):
                if d != c and (a, d) in U and (b, d) in U:
                    roles = {"x": (a, d), "y": (b, c), "u_xy": (b, d)}
                    lines = (Line.through((b, d), 0), Line.through((b, d), 1))
                    return Configuration("Corner", roles, lines, hole=(a, c))
    return None


def find_fist(U: PointSet) -> Optional[Configuration]:
    """A fist: four points of U on a line L, three of them (x, y, z) with a
    support on their crossing lines, plus u0 off L and off all three crossing
    lines. Vertical fists (L a column) are tried first, by column index.
    """
    _require(U, t=1, d=2, what="fist")
    groups = _lines(U)
    # free coord 1 is a column (vertical), free coord 0 a row (horizontal)
    for free, orientation in ((1, "vertical"), (0, "horizontal")):
        cross = 1 - free
        for (j, fixed), pts in groups.items():
            if j != free or len(pts) < 4:
                continue
            L = Line(j, fixed)
            supports = {}
            for p in pts:
                others = [s for s in groups.get((cross, p[:cross] + p[cross + 1 :]), []) if s != p]
                if others:
                    supports[p] = others[0]
            for trio in combinations([p for p in pts if p in supports], 3):
                u3 = next(p for p in pts if p not in trio)
                crossing = [Line.through(p, cross) for p in trio]
                u0 = next(
                    (u for u in U.points if not L.contains(u) and not any(ln.contains(u) for ln in crossing)),
                    None,
                )
                if u0 is None:
                    continue
                x, y, z = trio
                roles = {
                    "x": x, "y": y, "z": z, "u3": u3,
                    "u_x": supports[x], "u_y": supports[y], "u_z": supports[z],
                    "u0": u0,
                }
                return Configuration("Fist", roles, (L, *crossing), orientation=orientation)
    return None


def find_rectangle(U: PointSet) -> Optional[Configuration]:
    """Four members at the corners {a, a'} x {b, b'} of some plane.

    Each rectangle is found from its lexicographically least corner p by
    probing the three other corners, so the cost is O(|U| d^2 q^2).
    """
    _require(U, t=1, min_d=2, what="rectangle")
    q = U.params.q
    for p in U.points:
        for i, j in combinations(range(len(p)), 2):
            for vi in range(p[i] + 1, q):
                pi = p[:i] + (vi,) + p[i + 1 :]
                if pi not in U:
                    continue
                for vj in range(p[j] + 1, q):
                    pj = p[:j] + (vj,) + p[j + 1 :]
                    pij = pi[:j] + (vj,) + pi[j + 1 :]
                    if pj in U and pij in U:
                        roles = {"p00": p, "p01": pj, "p10": pi, "p11": pij}
                        return Configuration("Rectangle", roles, plane=Plane.through(p, (i, j)))
    return None


def find_four_on_line(U: PointSet) -> Optional[Configuration]:
    _require(U, t=1, what="four-on-a-line")
    for (j, fixed), pts in _lines(U).items():
        if len(pts) >= 4:
            roles = {f"p{k + 1}": p for k, p in enumerate(pts[:4])}
            return Configuration("FourOnALine", roles, (Line(j, fixed),))
    return None


def find_pluck(U: PointSet) -> Optional[Configuration]:
    """A row-pluck (then column-pluck) in H(2,q,2) with an unrelated point.

    Pivots x, y share the principal line; u_y lies on the crossing line through
    x and u_x on the one through y (each off the principal line); the unrelated
    point u_xy avoids all three lines.
    """
    _require(U, t=2, d=2, what="pluck")
    groups = _lines(U)
    for free, orientation in ((0, "row"), (1, "column")):
        cross = 1 - free
        for (j, fixed), pts in groups.items():
            if j != free or len(pts) < 2:
                continue
            principal = Line(j, fixed)
            for x, y in combinations(pts, 2):
                lx, ly = Line.through(x, cross), Line.through(y, cross)
                u_y = next((s for s in groups.get((cross, lx.fixed), []) if s != x), None)
                u_x = next((s for s in groups.get((cross, ly.fixed), []) if s != y), None)
                if u_x is None or u_y is None:
                    continue
                far = next(
                    (u for u in U.points if not (principal.contains(u) or lx.contains(u) or ly.contains(u))),
                    None,
                )
                if far is None:
                    continue
                roles = {"x": x, "y": y, "u_x": u_x, "u_y": u_y, "u_xy": far}
                return Configuration("Pluck", roles, (principal, lx, ly), orientation=orientation)
    return None


DETECTORS = {
    "line-triple": find_line_triple,
    "corner": find_corner,
    "fist": find_fist,
    "rectangle": find_rectangle,
    "four-on-line": find_four_on_line,
    "pluck": find_pluck,
}


def _corner_roles(c: Configuration, U: PointSet) -> dict:
    x, y, uxy = c["x"], c["y"], c["u_xy"]
    # the line through x (resp. y) that avoids u_xy carries the one-sided witness
    lx = next(ln for ln in (Line.through(x, 0), Line.through(x, 1)) if not ln.contains(uxy))
    ly = next(ln for ln in (Line.through(y, 0), Line.through(y, 1)) if not ln.contains(uxy))
    u_x = next((p for p in U.points if lx.contains(p) and p != x), None)
    if u_x is None:
        raise ConfigError(f"corner at hole {c.hole}: no second point of U on the line through {x} avoiding {uxy}", "u_x")
    u_y = next((p for p in U.points if ly.contains(p) and p != y), None)
    if u_y is None:
        raise ConfigError(f"corner at hole {c.hole}: no second point of U on the line through {y} avoiding {uxy}", "u_y")
    named = {x, y, uxy, u_x, u_y}
    u0 = next((p for p in U.points if p not in named and not collinear(p, x) and not collinear(p, y)), None)
    if u0 is None:
        raise ConfigError(f"corner at hole {c.hole}: no fifth point of U adjacent to neither {x} nor {y}", "u0")
    return {"u0": u0, "u_x": u_x, "u_y": u_y}


def witness_from_config(c: Configuration, U: PointSet) -> ShatterWitness:
    """Turn a detected configuration into the explicit shatter witness.

    Subsets are listed by bitmask over W: index 1 is {W[0]}, 2 is {W[1]}, 3 is
    {W[0], W[1]} and so on.
    """
    r = c.roles
    if c.kind == "LineTriple":
        W = (r["x"], r["y"])
        assign = (r["u0"], r["y"], r["x"], r["z"])
    elif c.kind == "Corner":
        extra = _corner_roles(c, U)
        W = (r["x"], r["y"])
        assign = (extra["u0"], extra["u_x"], extra["u_y"], r["u_xy"])
    elif c.kind == "Fist":
        W = (r["x"], r["y"], r["z"])
        assign = (r["u0"], r["u_x"], r["u_y"], r["z"], r["u_z"], r["y"], r["x"], r["u3"])
    elif c.kind == "Pluck":
        W = (r["x"], r["y"])
        assign = (r["x"], r["u_x"], r["u_y"], r["u_xy"])
    else:
        raise ConfigError(f"no witness construction for {c.kind}")
    w = ShatterWitness(W, assign)
    msg = witness_failure(w, U)
    if msg is not None:
        raise ConfigError(f"{c.kind} witness does not validate: {msg}")
    return w


def pigeonhole_slice(U: PointSet, threshold: int) -> Optional[tuple[Plane, PointSet]]:
    """First axis plane holding at least ``threshold`` members of U.

    The pair of free coordinates (d-2, d-1) is scanned first, then the other
    pairs in lexicographic order; within a pair there are q^(d-2) planes,
    scanned by their fixed values.
    """
    _require(U, t=1, min_d=3, what="slice pigeonhole")
    d = U.params.d
    last = (d - 2, d - 1)
    pairs = [last] + [pr for pr in combinations(range(d), 2) if pr != last]
    for pair in pairs:
        counts = defaultdict(int)
        for p in U.points:
            counts[tuple(c for j, c in enumerate(p) if j not in pair)] += 1
        for fixed in sorted(counts):
            if counts[fixed] >= threshold:
                plane = Plane(pair, fixed)
                return plane, slice_set(U, plane)
    return None
