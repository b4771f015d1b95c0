"""Exact shattering checks and neighborhood VC-dimension of (U, n(U)).

The search works on local bit positions of U. For a candidate W = (w_0, ...,
w_{k-1}) the members of U are split into 2^k cells, cell S holding the u with
n(u) ∩ W = S (bit j of S standing for w_j). W is shattered exactly when every
cell is nonempty. Extending W by one point splits every cell in two, so a
depth-first search over W in increasing position order can stop a branch as
soon as a cell empties: subsets of shattered sets are shattered.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import Point, PointSet, PreconditionError, iter_bits

log = logging.getLogger(__name__)

DEFAULT_MAX_K = 4
MAX_SHATTER_SIZE = 5


@dataclass(frozen=True)
class ShatterWitness:
    """W plus, for every subset S of W (as a bitmask over W), a realizing u_S."""

    W: tuple[Point, ...]
    assignments: tuple[Point, ...]  # indexed by subset bitmask

    def __post_init__(self):
        if len(self.assignments) != 1 << len(self.W):
            raise ValueError(f"need {1 << len(self.W)} assignments, got {len(self.assignments)}")

    @property
    def size(self) -> int:
        return len(self.W)

    def subset(self, mask: int) -> tuple[Point, ...]:
        return tuple(w for j, w in enumerate(self.W) if mask >> j & 1)

    def items(self):
        for mask, u in enumerate(self.assignments):
            yield self.subset(mask), u

    def to_json(self):
        return {
            "W": [list(w) for w in self.W],
            "assignments": [
                {"S": [j for j in range(len(self.W)) if mask >> j & 1], "u": list(u)}
                for mask, u in enumerate(self.assignments)
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "ShatterWitness":
        W = tuple(tuple(w) for w in obj["W"])
        slots: list[Optional[Point]] = [None] * (1 << len(W))
        for a in obj["assignments"]:
            mask = sum(1 << j for j in a["S"])
            slots[mask] = tuple(a["u"])
        if any(s is None for s in slots):
            raise ValueError("witness JSON does not assign every subset")
        return cls(W, tuple(slots))


@dataclass(frozen=True)
class VcResult:
    dimension: int
    witness: Optional[ShatterWitness] = None
    refuted_at: Optional[int] = None

    def to_json(self):
        return {
            "dimension": self.dimension,
            "refuted_at": self.refuted_at,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _pattern(U: PointSet, u: Point, W: Sequence[Point]) -> int:
    t = U.params.t
    mask = 0
    for j, w in enumerate(W):
        if sum(a != b for a, b in zip(u, w)) == t:
            mask |= 1 << j
    return mask


def witness_failure(w: ShatterWitness, U: PointSet) -> Optional[str]:
    """None if the witness checks out against U, else a description of the first failure."""
    for p in w.W:
        if p not in U:
            return f"W member {p} is not in U"
    if len(set(w.W)) != len(w.W):
        return "W has repeated points"
    for mask, u in enumerate(w.assignments):
        if len(u) != U.params.d or any(not 0 <= c < U.params.q for c in u) or u not in U:
            return f"u_S={u} for S={list(w.subset(mask))} is not in U"
        got = _pattern(U, u, w.W)
        if got != mask:
            return f"S={list(w.subset(mask))}: n({u}) ∩ W = {list(w.subset(got))}"
    return None


def validate_witness(w: ShatterWitness, U: PointSet) -> bool:
    msg = witness_failure(w, U)
    if msg is not None:
        log.debug("witness rejected: %s", msg)
    return msg is None


def _cells(U: PointSet, positions: Sequence[int]) -> list[int]:
    nbrs = U.local_neighbors
    cells = [U.local_all]
    for p in positions:
        N = nbrs[p]
        cells = [c & ~N for c in cells] + [c & N for c in cells]
    return cells


def _witness_from_cells(U: PointSet, positions: Sequence[int], cells: Sequence[int]) -> ShatterWitness:
    pts = U.points
    W = tuple(pts[p] for p in positions)
    return ShatterWitness(W, tuple(pts[(c & -c).bit_length() - 1] for c in cells))


def _positions_of(W: Sequence[Sequence[int]], U: PointSet) -> list[int]:
    out = []
    for p in W:
        p = U.params.point(p)
        if p not in U:
            raise PreconditionError(f"{p} is not a member of U")
        out.append(U.position[U.params.encode(p)])
    if len(set(out)) != len(out):
        raise PreconditionError("W has repeated points")
    return out


def shatters(W: Sequence[Sequence[int]], U: PointSet, max_size: int = MAX_SHATTER_SIZE) -> Optional[ShatterWitness]:
    """A validated witness that n(U) shatters W, or None."""
    if len(W) > max_size:
        raise PreconditionError(f"|W| = {len(W)} exceeds the configured maximum {max_size}")
    positions = _positions_of(W, U)
    if not U:
        return None
    cells = _cells(U, positions)
    if not all(cells):
        return None
    return _witness_from_cells(U, positions, cells)


def unrealized_subset(W: Sequence[Sequence[int]], U: PointSet) -> Optional[tuple[Point, ...]]:
    """The first S ⊆ W (by bitmask order) that no n(u), u in U, cuts out of W."""
    positions = _positions_of(W, U)
    cells = _cells(U, positions) if U else [0] * (1 << len(W))
    for mask, c in enumerate(cells):
        if not c:
            return tuple(U.points[p] for j, p in enumerate(positions) if mask >> j & 1)
    return None


def cocover_masks(U: PointSet) -> tuple[int, ...]:
    """For each member x, the members y != x sharing some neighbor u in U with x."""
    nbrs = U.local_neighbors
    out = []
    for i, N in enumerate(nbrs):
        m = 0
        for u in iter_bits(N):
            m |= nbrs[u]
        out.append(m & ~(1 << i))
    return tuple(out)


def find_shattered(U: PointSet, k: int, prune: bool = True) -> Optional[ShatterWitness]:
    """The lexicographically least W of size k shattered by n(U), as a witness."""
    n = U.size
    if n == 0:
        return None
    nbrs = U.local_neighbors
    full = U.local_all
    if k == 0:
        return _witness_from_cells(U, [], [full])
    cover = cocover_masks(U) if prune and k >= 2 else None

    def dfs(W: list[int], cells: list[int], cand: int):
        if len(W) == k:
            return W, cells
        # every cell must survive the remaining splits, so it needs 2^(remaining) members
        need = 1 << (k - len(W) - 1) if prune else 1
        for p in iter_bits(cand):
            N = nbrs[p]
            split = [c & ~N for c in cells] + [c & N for c in cells]
            if any(c.bit_count() < need for c in split):
                continue
            rest = cand & ~((2 << p) - 1)
            if cover is not None:
                rest &= cover[p]
            if rest.bit_count() < k - len(W) - 1:
                continue
            found = dfs(W + [p], split, rest)
            if found:
                return found
        return None

    found = dfs([], [full], full)
    if found is None:
        return None
    return _witness_from_cells(U, *found)


def vc_dimension(U: PointSet, max_k: Optional[int] = DEFAULT_MAX_K, prune: bool = True) -> VcResult:
    """Exact neighborhood VC-dimension of (U, n(U)), searched up to ``max_k``.

    The empty set gets dimension -1: not even the empty subset is realized.
    ``refuted_at`` is set when the search proved that no larger set is
    shattered, either by exhausting the next size or by the counting bound
    2^k <= |U|.
    """
    n = U.size
    if n == 0:
        return VcResult(-1, None, 0)
    best = find_shattered(U, 0)
    cap = n.bit_length() - 1  # floor(log2 n)
    limit = cap if max_k is None else min(max_k, cap)
    for k in range(1, limit + 1):
        w = find_shattered(U, k, prune=prune)
        if w is None:
            return VcResult(k - 1, best, k)
        best = w
    refuted = limit + 1 if limit == cap else None
    return VcResult(best.size, best, refuted)
