"""Generalized Hamming graphs H(d, q, t) and point-set containers.

Vertices are d-tuples over Z_q. Internally a vertex is an integer index in
mixed radix with coordinate 0 most significant, so lexicographic order on
tuples and numeric order on indices coincide. Point sets are Python ints used
as bitsets over those indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

Point = tuple[int, ...]

DEFAULT_VERTEX_CAP = 1 << 24


class ParameterError(ValueError):
    """Invalid Hamming parameters, or points that do not fit them."""


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class HammingParams:
    d: int
    q: int
    t: int = 1
    vertex_cap: int = field(default=DEFAULT_VERTEX_CAP, compare=False, repr=False)

    def __post_init__(self):
        if self.d < 1 or self.q < 1 or self.t < 0:
            raise ParameterError(f"need d >= 1, q >= 1, t >= 0; got d={self.d} q={self.q} t={self.t}")
        if self.q ** self.d > self.vertex_cap:
            raise ParameterError(
                f"H({self.d},{self.q},{self.t}) has {self.q ** self.d} vertices, above the cap {self.vertex_cap}"
            )

    def __str__(self):
        return f"H({self.d},{self.q},{self.t})"

    @cached_property
    def n_vertices(self) -> int:
        return self.q ** self.d

    @cached_property
    def weights(self) -> tuple[int, ...]:
        return tuple(self.q ** (self.d - 1 - j) for j in range(self.d))

    def point(self, coords: Iterable[int]) -> Point:
        """Validate a coordinate sequence, reducing each entry mod q."""
        p = tuple(int(c) % self.q for c in coords)
        if len(p) != self.d:
            raise ParameterError(f"point {tuple(coords)} has {len(p)} coordinates, expected {self.d}")
        return p

    def encode(self, p: Sequence[int]) -> int:
        i = 0
        for c in p:
            i = i * self.q + c
        return i

    def decode(self, i: int) -> Point:
        if not 0 <= i < self.n_vertices:
            raise ParameterError(f"index {i} out of range for {self}")
        out = [0] * self.d
        for j in range(self.d - 1, -1, -1):
            i, out[j] = divmod(i, self.q)
        return tuple(out)

    def vertices(self) -> Iterator[Point]:
        return product(range(self.q), repeat=self.d)

    def neighbor_indices(self, i: int) -> Iterator[int]:
        """Indices of all vertices at Hamming distance exactly t from vertex i."""
        if self.t == 0:
            yield i
            return
        x = self.decode(i)
        for coords in combinations(range(self.d), self.t):
            deltas = [[(v - x[j]) * self.weights[j] for v in range(self.q) if v != x[j]] for j in coords]
            for combo in product(*deltas):
                yield i + sum(combo)

    @cached_property
    def degree(self) -> int:
        if self.t > self.d:
            return 0
        if self.t == 0:
            return 1
        from math import comb

        return comb(self.d, self.t) * (self.q - 1) ** self.t


def hamming_distance(x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y):
        raise ParameterError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return sum(a != b for a, b in zip(x, y))


def adjacent(x: Sequence[int], y: Sequence[int], params: HammingParams) -> bool:
    return hamming_distance(x, y) == params.t


def collinear(x: Sequence[int], y: Sequence[int]) -> bool:
    return hamming_distance(x, y) <= 1


@dataclass(frozen=True)
class Line:
    """The q vertices obtained by letting coordinate ``free_coord`` vary."""

    free_coord: int
    fixed: tuple[int, ...]

    @classmethod
    def through(cls, p: Sequence[int], free_coord: int) -> "Line":
        return cls(free_coord, tuple(c for j, c in enumerate(p) if j != free_coord))

    def contains(self, p: Sequence[int]) -> bool:
        return tuple(c for j, c in enumerate(p) if j != self.free_coord) == self.fixed

    def points(self, q: int) -> list[Point]:
        f = list(self.fixed)
        return [tuple(f[: self.free_coord] + [v] + f[self.free_coord :]) for v in range(q)]

    def to_json(self):
        return {"free_coord": self.free_coord, "fixed": list(self.fixed)}


def lines_through(p: Sequence[int]) -> list[Line]:
    return [Line.through(p, j) for j in range(len(p))]


@dataclass(frozen=True)
class Plane:
    """The q^2 vertices obtained by letting two coordinates vary."""

    free_coords: tuple[int, int]
    fixed: tuple[int, ...]

    def __post_init__(self):
        a, b = self.free_coords
        if a == b:
            raise ParameterError("plane needs two distinct free coordinates")

    @classmethod
    def through(cls, p: Sequence[int], free_coords: tuple[int, int]) -> "Plane":
        return cls(tuple(free_coords), tuple(c for j, c in enumerate(p) if j not in free_coords))

    def contains(self, p: Sequence[int]) -> bool:
        return tuple(c for j, c in enumerate(p) if j not in self.free_coords) == self.fixed

    def project(self, p: Sequence[int]) -> Point:
        a, b = self.free_coords
        return (p[a], p[b])

    def to_json(self):
        return {"free_coords": list(self.free_coords), "fixed": list(self.fixed)}


@dataclass(frozen=True)
class PointSet:
    """An immutable vertex subset U of H(d, q, t).

    ``members`` is a bitset over vertex indices. Neighborhood masks restricted
    to U are computed once, on first use, over *local* positions: bit i stands
    for the i-th member in index order.
    """

    params: HammingParams
    members: int = 0

    def __post_init__(self):
        if self.members < 0 or self.members >> self.params.n_vertices:
            raise ParameterError(f"member index out of range for {self.params}")

    @classmethod
    def from_points(cls, params: HammingParams, points: Iterable[Sequence[int]]) -> "PointSet":
        mask = 0
        for p in points:
            mask |= 1 << params.encode(params.point(p))
        return cls(params, mask)

    @classmethod
    def from_indices(cls, params: HammingParams, indices: Iterable[int]) -> "PointSet":
        mask = 0
        for i in indices:
            mask |= 1 << i
        return cls(params, mask)

    @classmethod
    def full(cls, params: HammingParams) -> "PointSet":
        return cls(params, (1 << params.n_vertices) - 1)

    @cached_property
    def size(self) -> int:
        return self.members.bit_count()

    def __len__(self):
        return self.size

    def __bool__(self):
        return self.members != 0

    def __contains__(self, p) -> bool:
        i = self.params.encode(p) if not isinstance(p, int) else p
        return bool(self.members >> i & 1)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    @cached_property
    def indices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.members))

    @cached_property
    def points(self) -> tuple[Point, ...]:
        return tuple(self.params.decode(i) for i in self.indices)

    @cached_property
    def position(self) -> dict[int, int]:
        """Vertex index -> local position."""
        return {v: i for i, v in enumerate(self.indices)}

    @cached_property
    def local_neighbors(self) -> tuple[int, ...]:
        """For each member, the bitmask (over local positions) of its neighbors in U."""
        pos = self.position
        n = self.size
        deg = self.params.degree
        out = [0] * n
        if deg * n <= n * n:
            for i, v in enumerate(self.indices):
                m = 0
                for w in self.params.neighbor_indices(v):
                    j = pos.get(w)
                    if j is not None:
                        m |= 1 << j
                out[i] = m
        else:
            pts = self.points
            t = self.params.t
            for i in range(n):
                for j in range(i, n):
                    if hamming_distance(pts[i], pts[j]) == t:
                        out[i] |= 1 << j
                        out[j] |= 1 << i
        return tuple(out)

    @property
    def local_all(self) -> int:
        return (1 << self.size) - 1

    def neighborhood(self, x: Sequence[int]) -> "PointSet":
        """n(x) restricted to U; x need not belong to U."""
        x = self.params.point(x)
        i = self.params.encode(x)
        mask = 0
        for w in self.params.neighbor_indices(i):
            mask |= 1 << w
        return PointSet(self.params, mask & self.members)

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet(self.params, self.members | other.members)

    def with_points(self, points: Iterable[Sequence[int]]) -> "PointSet":
        return self.union(PointSet.from_points(self.params, points))

    def subset(self, local_mask: int) -> "PointSet":
        """The sub-point-set picked out by a mask over local positions."""
        return PointSet.from_indices(self.params, (self.indices[i] for i in iter_bits(local_mask)))

    def edge_count(self) -> int:
        loops = sum(m >> i & 1 for i, m in enumerate(self.local_neighbors))
        total = sum(m.bit_count() for m in self.local_neighbors)
        return loops + (total - loops) // 2

    def components(self) -> list[tuple[Point, ...]]:
        """Connected components of the induced subgraph, each sorted, ordered by least member."""
        nbrs = self.local_neighbors
        seen = 0
        comps = []
        for start in range(self.size):
            if seen >> start & 1:
                continue
            comp = frontier = 1 << start
            while frontier:
                nxt = 0
                for i in iter_bits(frontier):
                    nxt |= nbrs[i]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(tuple(self.points[i] for i in iter_bits(comp)))
        return comps

    def relabel(self, fn) -> "PointSet":
        """Image of U under a map on points (used for automorphism tests)."""
        return PointSet.from_points(self.params, (fn(p) for p in self.points))


def neighborhood(x: Sequence[int], U: PointSet) -> PointSet:
    return U.neighborhood(x)


def slice_set(U: PointSet, plane: Plane) -> PointSet:
    """Members of U in ``plane``, re-indexed as a point set of H(2, q, t)."""
    p = U.params
    if len(plane.fixed) != p.d - 2 or max(plane.free_coords) >= p.d:
        raise ParameterError(f"plane {plane} does not fit {p}")
    sub = HammingParams(2, p.q, p.t, vertex_cap=p.vertex_cap)
    return PointSet.from_points(sub, (plane.project(x) for x in U.points if plane.contains(x)))
