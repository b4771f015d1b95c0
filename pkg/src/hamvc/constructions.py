"""Explicit extremal point sets: the tightness examples for each bound."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product

from .core import HammingParams, ParameterError, PointSet

BOX = ((0, 0), (0, 1), (1, 0), (1, 1))


def construct_u1(q: int) -> PointSet:
    """2x2 boxes down the diagonal of H(2,q,1); odd q adds the corner (q-1, q-1).

    Size 2q for even q, 2q-1 for odd q.
    """
    if q < 2:
        raise ParameterError("U1 needs q >= 2")
    even = q - (q % 2)
    pts = [(a + 2 * i, b + 2 * i) for i in range(even // 2) for a, b in BOX]
    if q % 2:
        pts.append((q - 1, q - 1))
    return PointSet.from_points(HammingParams(2, q, 1), pts)


def construct_u2(q: int) -> PointSet:
    """Row r keeps columns r, r+1, r+2 (mod q): three points on every line."""
    if q < 3:
        raise ParameterError("U2 needs q >= 3")
    pts = [((r + s) % q, r) for r in range(q) for s in range(3)]
    return PointSet.from_points(HammingParams(2, q, 1), pts)


def construct_u3(q: int) -> PointSet:
    """Layered boxes in H(3,q,1): q/2 layers of two sheets each.

    In layer l, box i is B + (2(i+l) mod q, 2i) in sheet z = 2l, with an apex
    above its anchor corner in sheet 2l+1. Every box lands in a distinct pair
    of coarse rows and columns, so the induced graph is q^2/4 copies of a
    4-cycle with one pendant vertex.
    """
    if q < 4 or q % 2:
        raise ParameterError("U3 needs an even q >= 4 (q must be even)")
    pts = []
    half = q // 2
    for layer, i in product(range(half), repeat=2):
        x0, y0 = (2 * (i + layer)) % q, 2 * i
        pts += [(x0 + a, y0 + b, 2 * layer) for a, b in BOX]
        pts.append((x0, y0, 2 * layer + 1))
    return PointSet.from_points(HammingParams(3, q, 1), pts)


def _diagonal_shifts(d: int, q: int, shifts) -> PointSet:
    params = HammingParams(d, q, 1)
    pts = []
    for head in product(range(q), repeat=d - 1):
        s = sum(head)
        pts += [head + ((s + e) % q,) for e in shifts]
    return PointSet.from_points(params, pts)


def construct_diag(d: int, q: int) -> PointSet:
    """Last coordinate equals the sum of the others mod q. Edge-free, size q^(d-1)."""
    if d < 2 or q < 2:
        raise ParameterError("DIAG needs d >= 2 and q >= 2")
    return _diagonal_shifts(d, q, (0,))


def construct_band3(d: int, q: int) -> PointSet:
    """Three diagonal hyperplanes, last coordinate = sum + e for e in {-1, 0, 2}.

    Size 3q^(d-1). Needs q >= 4 for the shifts to be distinct; the guarantee
    of no four-point line and no rectangle needs q >= 6.
    """
    if d < 3:
        raise ParameterError("BAND3 needs d >= 3")
    if q <= 3:
        raise ParameterError("BAND3 needs q >= 4 (shifts -1, 0, 2 collide mod q)")
    if q < 6:
        warnings.warn(f"BAND3 with q={q} < 6 may contain rectangles", stacklevel=2)
    return _diagonal_shifts(d, q, (q - 1, 0, 2))


def construct_ustar(q: int) -> PointSet:
    """The two coordinate axes of H(2,q,2): points with a zero coordinate."""
    if q < 2:
        raise ParameterError("USTAR needs q >= 2")
    pts = [(a, 0) for a in range(q)] + [(0, b) for b in range(1, q)]
    return PointSet.from_points(HammingParams(2, q, 2), pts)


_BUILDERS = {
    "U1": (construct_u1, ("q",)),
    "U2": (construct_u2, ("q",)),
    "U3": (construct_u3, ("q",)),
    "DIAG": (construct_diag, ("d", "q")),
    "BAND3": (construct_band3, ("d", "q")),
    "USTAR": (construct_ustar, ("q",)),
}

NAMES = tuple(_BUILDERS)


@dataclass(frozen=True)
class ConstructionSpec:
    name: str
    q: int
    d: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "name", self.name.upper())
        if self.name not in _BUILDERS:
            raise ParameterError(f"unknown construction {self.name!r}; choose from {', '.join(NAMES)}")
        _, args = _BUILDERS[self.name]
        if "d" in args and self.d is None:
            raise ParameterError(f"{self.name} needs d")

    def label(self) -> str:
        args = f"d={self.d}, q={self.q}" if self.d is not None and "d" in _BUILDERS[self.name][1] else f"q={self.q}"
        return f"{self.name}({args})"


def construct(spec: ConstructionSpec) -> PointSet:
    fn, args = _BUILDERS[spec.name]
    kwargs = {"q": spec.q}
    if "d" in args:
        kwargs["d"] = spec.d
    return fn(**kwargs)
