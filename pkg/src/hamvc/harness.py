"""Executable checks for the size thresholds and their tightness.

Universal claims ("every U of size >= m has vc REL k") are checked at size
exactly m: vc is monotone under inclusion, so size m is the hardest case.
Exhaustive mode walks all m-subsets in colex order; sampled mode draws
uniform m-subsets from a seeded generator. Work is counted in subsets, not
seconds, so caps behave the same on every machine.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from math import comb
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import kernel
from .configs import find_four_on_line, find_rectangle
from .constructions import (
    ConstructionSpec,
    construct,
    construct_band3,
    construct_diag,
    construct_u1,
    construct_u2,
    construct_u3,
    construct_ustar,
)
from .core import HammingParams, ParameterError, PointSet, iter_bits
from .shatter import VcResult, find_shattered, vc_dimension

DEFAULT_WORK_CAP = 10**7
DEFAULT_SAMPLES = 10**4
KERNEL_UPPER_CANDIDATES = 20000

CLAIM_IDS = ("P1.1", "T1.2", "T1.3", "C1.4", "P1.5", "P1.6", "P1.8", "T1.8t2", "L3.1", "L4.1")
RELATIONS = {"ge": ">=", "eq": "=", "le": "<="}

DIAG_NOTE = (
    "stated VC-dimension 1 for the diagonal set; the set is edge-free, so every "
    "n(u) misses it entirely and only the empty trace is realized: oracle value 0"
)


class Infeasible(RuntimeError):
    def __init__(self, reason: str, projected: Optional[int] = None):
        super().__init__(reason)
        self.projected = projected


@dataclass(frozen=True)
class ClaimSpec:
    """One checkable instance of a claim.

    kind is "universal" (all U of size m), "tightness" (one construction of
    size m - 1 that misses the bound), "construction" (properties of a named
    set) or "property" (an implication over all subsets).
    """

    claim_id: str
    params: HammingParams
    kind: str
    k: int
    relation: str = "ge"
    m: Optional[int] = None
    construction: Optional[ConstructionSpec] = None

    def label(self) -> str:
        rel = RELATIONS[self.relation]
        if self.kind == "universal":
            return f"{self.claim_id} {self.params}: every |U| = {self.m} has vc {rel} {self.k}"
        if self.kind == "property":
            return f"{self.claim_id} {self.params}: vc = {self.k} forces the configuration"
        return f"{self.claim_id} {self.params}: {self.construction.label()} has vc {rel} {self.k}"

    def to_json(self):
        p = self.params
        out = {
            "id": self.claim_id,
            "kind": self.kind,
            "params": {"d": p.d, "q": p.q, "t": p.t},
            "m": self.m,
            "k": self.k,
            "relation": self.relation,
        }
        if self.construction is not None:
            out["construction"] = self.construction.label()
        return out


@dataclass
class VerificationReport:
    claim: Optional[ClaimSpec]
    mode: str  # exhaustive | sampled | constructive
    outcome: str  # verified | refuted | infeasible
    work: int = 0
    elapsed: float = 0.0
    seed: Optional[int] = None
    samples: Optional[int] = None
    counterexample: Optional[PointSet] = None
    counter_vc: Optional[VcResult] = None
    reason: Optional[str] = None
    notes: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self, timing: bool = False):
        out = {
            "claim": self.claim.to_json() if self.claim else None,
            "mode": self.mode,
            "outcome": self.outcome,
            "work": self.work,
            "seed": self.seed,
            "counterexample": [list(p) for p in self.counterexample.points] if self.counterexample is not None else None,
        }
        if self.samples is not None:
            out["samples"] = self.samples
        if self.counter_vc is not None:
            out["counterexample_vc"] = self.counter_vc.dimension
        if self.reason:
            out["reason"] = self.reason
        if self.notes:
            out["notes"] = list(self.notes)
        if self.details:
            out["details"] = self.details
        if timing:
            out["elapsed"] = round(self.elapsed, 4)
        return out


def _relation_holds(vc: int, k: int, relation: str) -> bool:
    return {"ge": vc >= k, "eq": vc == k, "le": vc <= k}[relation]


def _masks_violating(masks: np.ndarray, adj: np.ndarray, params: HammingParams, m: int, k: int, relation: str) -> np.ndarray:
    """Boolean array marking subsets (all of size m) whose vc breaks ``vc REL k``."""
    bad = np.zeros(len(masks), dtype=bool)
    if relation in ("ge", "eq"):
        bad |= ~kernel.has_shattered(masks, adj, k)
    if relation in ("le", "eq") and (1 << (k + 1)) <= m:
        rows = np.nonzero(~bad)[0]
        if comb(len(adj), k + 1) <= KERNEL_UPPER_CANDIDATES:
            bad[rows] |= kernel.has_shattered(masks[rows], adj, k + 1)
        else:
            # a miss scans every candidate in the kernel; the pruned search is far cheaper
            for i in rows:
                if find_shattered(PointSet(params, int(masks[i])), k + 1) is not None:
                    bad[i] = True
    return bad


def _first_bad_chunk(args):
    masks, adj, params, m, k, relation = args
    bad = _masks_violating(masks, adj, params, m, k, relation)
    idx = np.nonzero(bad)[0]
    return int(masks[idx[0]]) if len(idx) else None


def _python_violates(U: PointSet, k: int, relation: str) -> bool:
    if relation in ("ge", "eq") and find_shattered(U, k) is None:
        return True
    if relation in ("le", "eq") and (1 << (k + 1)) <= U.size and find_shattered(U, k + 1) is not None:
        return True
    return False


def _gosper(n: int, m: int) -> Iterable[int]:
    if m == 0:
        yield 0
        return
    x = (1 << m) - 1
    while x < 1 << n:
        yield x
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


def check_universal(
    params: HammingParams,
    m: int,
    k: int,
    mode: str = "auto",
    relation: str = "ge",
    *,
    seed: Optional[int] = None,
    samples: int = DEFAULT_SAMPLES,
    cap: int = DEFAULT_WORK_CAP,
    probes: Sequence[PointSet] = (),
    jobs: int = 1,
    progress: Optional[Callable[[int, int], None]] = None,
    claim: Optional[ClaimSpec] = None,
) -> VerificationReport:
    """Check ``vc(U) REL k`` for every (or every sampled) U of size m.

    ``probes`` are candidate counterexamples of size m tried before the
    enumeration; a failing probe is reported in place of the first failure in
    rank order. Exhaustive mode is infeasible when C(q^d, m) exceeds ``cap``;
    ``auto`` then falls back to sampling, which needs a seed.
    """
    if claim is None:
        claim = ClaimSpec("adhoc", params, "universal", k, relation, m)
    n = params.n_vertices
    total = comb(n, m)
    start = time.perf_counter()

    def report(mode_, outcome, work, **kw):
        return VerificationReport(claim, mode_, outcome, work, time.perf_counter() - start, **kw)

    if not 0 <= m <= n:
        return report(mode, "infeasible", 0, reason=f"no subsets of size {m} in {params}")
    if mode == "auto":
        mode = "exhaustive" if total <= cap else "sampled"
    if mode == "exhaustive" and total > cap:
        return report(mode, "infeasible", 0, reason=f"C({n},{m}) = {total} subsets exceeds the work cap {cap}")
    if mode == "sampled" and seed is None:
        return report(mode, "infeasible", 0, reason="sampled verification needs a seed")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")

    def refuted(U: PointSet, work: int, **kw):
        return report(mode, "refuted", work, counterexample=U, counter_vc=vc_dimension(U, max_k=k + 1), **kw)

    for P in probes:
        if P.params == params and P.size == m and _python_violates(P, k, relation):
            return refuted(P, 0, notes=["counterexample supplied as a probe set"])

    extra = {"seed": seed, "samples": min(samples, cap)} if mode == "sampled" else {}
    if mode == "exhaustive" and kernel.fits(params):
        adj = kernel.adjacency_masks(params)
        chunks = list(kernel.colex_chunks(n, m))
        args = ((c, adj, params, m, k, relation) for c in chunks)
        pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
        # results come back in rank order, so the first hit is the colex-first counterexample
        results = pool.map(_first_bad_chunk, args) if pool else map(_first_bad_chunk, args)
        work = 0
        try:
            for chunk, first in zip(chunks, results):
                if first is not None:
                    pos = int(np.nonzero(chunk == np.uint64(first))[0][0])
                    return refuted(PointSet(params, first), work + pos + 1)
                work += len(chunk)
                if progress:
                    progress(work, total)
        finally:
            if pool is not None:
                pool.shutdown(cancel_futures=True)
        return report(mode, "verified", work)

    if mode == "exhaustive":
        work = 0
        for mask in _gosper(n, m):
            work += 1
            U = PointSet(params, mask)
            if _python_violates(U, k, relation):
                return refuted(U, work)
            if progress and work % 10000 == 0:
                progress(work, total)
        return report(mode, "verified", work)

    count = min(samples, cap)
    rng = np.random.default_rng(seed)
    if kernel.fits(params):
        adj = kernel.adjacency_masks(params)
        masks = kernel.sample_subsets(n, m, count, rng)
        bad = np.nonzero(_masks_violating(masks, adj, params, m, k, relation))[0]
        if len(bad):
            return refuted(PointSet(params, int(masks[bad[0]])), int(bad[0]) + 1, **extra)
        return report(mode, "verified", count, **extra)
    for i in range(count):
        picks = rng.choice(n, size=m, replace=False)
        U = PointSet.from_indices(params, (int(v) for v in picks))
        if _python_violates(U, k, relation):
            return refuted(U, i + 1, **extra)
    return report(mode, "verified", count, **extra)


# tightness: claim id -> (construction builder, bound k, relation the construction must satisfy, expected size)
def _tightness_table(claim_id: str, q: int):
    if claim_id == "P1.1":
        if q % 2 or q < 4:
            raise ParameterError("P1.1 tightness is the even-q construction; needs even q >= 4")
        return ConstructionSpec("U1", q), 2, 2 * q
    if claim_id == "T1.2":
        if q % 2 == 0 or q < 3:
            raise ParameterError("T1.2 tightness needs odd q >= 3")
        return ConstructionSpec("U1", q), 2, 2 * q - 1
    if claim_id == "T1.3":
        if q < 4:
            raise ParameterError("T1.3 tightness needs q >= 4")
        return ConstructionSpec("U2", q), 3, 3 * q
    if claim_id == "T1.8t2":
        if q < 3:
            raise ParameterError("T1.8t2 tightness needs q >= 3")
        return ConstructionSpec("USTAR", q), 2, 2 * q - 1
    raise ParameterError(f"{claim_id} has no tightness construction")


def check_tightness(claim_id: str, q: int) -> VerificationReport:
    """Build the extremal set for ``claim_id`` and confirm it misses the bound.

    The set has one point fewer than the threshold and vc < k, so the
    threshold cannot be lowered.
    """
    spec, k, size = _tightness_table(claim_id, q)
    start = time.perf_counter()
    U = construct(spec)
    claim = ClaimSpec(claim_id, U.params, "tightness", k - 1, "le", size + 1, spec)
    res = vc_dimension(U, max_k=k)
    details = {"size": U.size, "expected_size": size, "vc": res.dimension}
    ok = U.size == size and res.dimension < k
    rep = VerificationReport(
        claim, "constructive", "verified" if ok else "refuted", 1, time.perf_counter() - start, details=details
    )
    if not ok:
        rep.counterexample, rep.counter_vc = U, res
        rep.reason = f"size {U.size} (expected {size}), vc {res.dimension} (needed < {k})"
    return rep


def check_construction(claim: ClaimSpec) -> VerificationReport:
    """Constructive claims: U3 (P1.5), the diagonal set (P1.6), the band set (P1.8)."""
    start = time.perf_counter()
    U = construct(claim.construction)
    res = vc_dimension(U, max_k=claim.k + 1)
    q, d = U.params.q, U.params.d
    details = {"size": U.size, "vc": res.dimension}
    notes = []
    failures = []
    cid = claim.claim_id
    if cid == "P1.5":
        expected = 5 * q * q // 4
        comps = U.components()
        shapes = sorted({tuple(sorted(_degrees(U, c))) for c in comps})
        details.update(expected_size=expected, components=len(comps), component_degrees=[list(s) for s in shapes])
        if U.size != expected:
            failures.append(f"size {U.size} != {expected}")
        if len(comps) != q * q // 4 or shapes != [(1, 2, 2, 2, 3)]:
            failures.append(f"components {len(comps)} with degree sequences {shapes}")
    elif cid == "P1.6":
        expected = q ** (d - 1)
        edges = U.edge_count()
        details.update(expected_size=expected, edges=edges, stated_vc=1)
        if U.size != expected:
            failures.append(f"size {U.size} != {expected}")
        if edges:
            failures.append(f"{edges} edges in a set meant to be edge-free")
        if res.dimension != 1:
            notes.append(f"discrepancy: {DIAG_NOTE}")
    elif cid == "P1.8":
        expected = 3 * q ** (d - 1)
        line4 = find_four_on_line(U)
        rect = find_rectangle(U)
        details.update(
            expected_size=expected,
            four_on_line=line4.to_json() if line4 else None,
            rectangle=rect.to_json() if rect else None,
        )
        if U.size != expected:
            failures.append(f"size {U.size} != {expected}")
        if line4:
            failures.append("a line carries four points")
        if rect:
            failures.append(f"rectangle at {sorted(rect.roles.values())}")
    if not _relation_holds(res.dimension, claim.k, claim.relation):
        failures.append(f"vc = {res.dimension}, claimed {RELATIONS[claim.relation]} {claim.k}")
    rep = VerificationReport(
        claim, "constructive", "refuted" if failures else "verified", 1, time.perf_counter() - start,
        notes=notes, details=details,
    )
    if failures:
        rep.counterexample, rep.counter_vc = U, res
        rep.reason = "; ".join(failures)
    return rep


def _degrees(U: PointSet, comp) -> list[int]:
    nbrs = U.local_neighbors
    pos = U.position
    return [nbrs[pos[U.params.encode(p)]].bit_count() for p in comp]


def check_property(
    params: HammingParams,
    mode: str = "auto",
    *,
    with_rectangles: bool = True,
    seed: Optional[int] = None,
    samples: int = DEFAULT_SAMPLES,
    cap: int = DEFAULT_WORK_CAP,
    claim: Optional[ClaimSpec] = None,
) -> VerificationReport:
    """Every U with vc(U) >= 3 has a line with four points (or a rectangle).

    Exhaustive mode covers all 2^(q^d) subsets; sampled mode draws random
    subsets with a uniformly random size.
    """
    if claim is None:
        claim = ClaimSpec("adhoc", params, "property", 3, "eq")
    start = time.perf_counter()
    n = params.n_vertices
    total = 1 << n
    if not kernel.fits(params):
        return VerificationReport(claim, mode, "infeasible", 0, reason=f"{params} exceeds {kernel.MAX_BITS} vertices")
    if mode == "auto":
        mode = "exhaustive" if total <= cap else "sampled"
    if mode == "exhaustive" and total > cap:
        return VerificationReport(claim, mode, "infeasible", 0, reason=f"2^{n} subsets exceeds the work cap {cap}")
    if mode == "sampled" and seed is None:
        return VerificationReport(claim, mode, "infeasible", 0, reason="sampled verification needs a seed")
    adj = kernel.adjacency_masks(params)
    lines = kernel.line_masks(params)
    rects = kernel.rectangle_masks(params) if with_rectangles else np.zeros(0, dtype=np.uint64)
    if mode == "exhaustive":
        chunks = kernel.all_subsets_chunks(n)
        extra = {}
    else:
        count = min(samples, cap)
        chunks = [kernel.random_subsets(n, count, np.random.default_rng(seed))]
        extra = {"seed": seed, "samples": count}
    work = 0
    high = 0
    for masks in chunks:
        vc3 = kernel.has_shattered(masks, adj, 3)
        sel = masks[vc3]
        high += len(sel)
        covered = kernel.contains_any(sel, lines, at_least=4) | kernel.contains_any(sel, rects)
        if not covered.all():
            i = int(np.nonzero(vc3)[0][np.nonzero(~covered)[0][0]])
            U = PointSet(params, int(masks[i]))
            return VerificationReport(
                claim, mode, "refuted", work + i + 1, time.perf_counter() - start,
                counterexample=U, counter_vc=vc_dimension(U), **extra,
            )
        work += len(masks)
    return VerificationReport(
        claim, mode, "verified", work, time.perf_counter() - start, details={"vc3_subsets": high}, **extra
    )


def threshold_search(
    params: HammingParams, k: int, *, prune: bool = True, cap: int = DEFAULT_WORK_CAP
) -> tuple[int, PointSet, int]:
    """Exact universal threshold m* for ``vc >= k``: the least m such that every
    m-subset has vc >= k.

    Returns (m*, C, work) with C a maximum-size subset with vc(C) < k (the
    colex-first one), so m* = |C| + 1. With ``prune`` only low-vc sets are
    extended, one vertex above their largest member at a time; this reaches
    every low-vc set because the family is closed under taking subsets.
    """
    n = params.n_vertices
    if not kernel.fits(params) and (1 << n) > cap:
        raise Infeasible(f"{params}: 2^{n} subsets and no pruning kernel beyond {kernel.MAX_BITS} vertices", 1 << n)
    adj = kernel.adjacency_masks(params)
    if not prune:
        if (1 << n) > cap:
            raise Infeasible(f"{params}: 2^{n} subsets exceeds the work cap {cap}", 1 << n)
        best_size, best = -1, None
        for masks in kernel.all_subsets_chunks(n):
            low = masks[~kernel.has_shattered(masks, adj, k)]
            if len(low):
                sizes = np.bitwise_count(low)
                top = int(sizes.max())
                if top > best_size:
                    best_size, best = top, int(low[np.nonzero(sizes == top)[0][0]])
        return best_size + 1, PointSet(params, best), 1 << n

    level = np.zeros(1, dtype=np.uint64)
    work = 1
    while True:
        highest = np.zeros(len(level), dtype=np.int64)
        nz = level != 0
        highest[nz] = np.floor(np.log2(level[nz].astype(np.float64))).astype(np.int64)
        highest[~nz] = -1
        # exact highest bit (float log2 can round up near powers of two)
        over = (np.uint64(1) << highest[nz].astype(np.uint64)) > level[nz]
        highest[np.nonzero(nz)[0][over]] -= 1
        parts = []
        for v in range(n):
            src = level[highest < v]
            if len(src):
                parts.append(src | np.uint64(1 << v))
        cands = np.unique(np.concatenate(parts)) if parts else np.zeros(0, dtype=np.uint64)
        if work + len(cands) > cap:
            raise Infeasible(
                f"{params}: pruned search needs more than {cap} subset evaluations", 1 << n
            )
        work += len(cands)
        low = cands[~kernel.has_shattered(cands, adj, k)]
        if len(low) == 0:
            best = int(level.min())
            return bin(best).count("1") + 1, PointSet(params, best), work
        level = low


# claim instantiation ------------------------------------------------------


def claims_for(claim_id: str, q: int, d: Optional[int] = None) -> list[ClaimSpec]:
    """All checks a claim id expands to at alphabet size q (empty if q is out of its range)."""
    H = HammingParams
    out = []
    if claim_id == "P1.1" and q >= 3:
        for dd in ((d,) if d else (2, 3)):
            out.append(ClaimSpec("P1.1", H(dd, q, 1), "universal", 2, "ge", 2 * q ** (dd - 1) + 1))
        if q % 2 == 0:
            out.append(_tight_spec("P1.1", q))
    elif claim_id == "T1.2" and q >= 3 and q % 2:
        out += [ClaimSpec("T1.2", H(2, q, 1), "universal", 2, "ge", 2 * q), _tight_spec("T1.2", q)]
    elif claim_id == "T1.3" and q >= 4:
        out += [ClaimSpec("T1.3", H(2, q, 1), "universal", 3, "eq", 3 * q + 1), _tight_spec("T1.3", q)]
    elif claim_id == "C1.4" and q >= 4:
        dd = d or 3
        out.append(ClaimSpec("C1.4", H(dd, q, 1), "universal", 3, "eq", 3 * q ** (dd - 1) + 1))
    elif claim_id == "P1.5" and q >= 4 and q % 2 == 0:
        out.append(ClaimSpec("P1.5", H(3, q, 1), "construction", 1, "eq", construction=ConstructionSpec("U3", q)))
    elif claim_id == "P1.6" and q >= 2:
        for dd in ((d,) if d else (2, 3)):
            out.append(
                ClaimSpec("P1.6", H(dd, q, 1), "construction", 1, "le", construction=ConstructionSpec("DIAG", q, dd))
            )
    elif claim_id == "P1.8" and q >= 6:
        dd = d or 3
        out.append(
            ClaimSpec("P1.8", H(dd, q, 1), "construction", 2, "le", construction=ConstructionSpec("BAND3", q, dd))
        )
    elif claim_id == "T1.8t2" and q >= 3:
        out += [ClaimSpec("T1.8t2", H(2, q, 2), "universal", 2, "ge", 2 * q), _tight_spec("T1.8t2", q)]
    elif claim_id == "L3.1" and q >= 4:
        out.append(ClaimSpec("L3.1", H(2, q, 1), "property", 3, "eq"))
    elif claim_id == "L4.1" and q >= 2:
        out.append(ClaimSpec("L4.1", H(d or 3, q, 1), "property", 3, "eq"))
    elif claim_id not in CLAIM_IDS:
        raise ParameterError(f"unknown claim id {claim_id!r}; choose from {', '.join(CLAIM_IDS)}")
    return out


def _tight_spec(claim_id: str, q: int) -> ClaimSpec:
    spec, k, size = _tightness_table(claim_id, q)
    t = 2 if claim_id == "T1.8t2" else 1
    return ClaimSpec(claim_id, HammingParams(2, q, t), "tightness", k - 1, "le", size + 1, spec)


@dataclass
class Budget:
    cap: int = DEFAULT_WORK_CAP
    samples: int = DEFAULT_SAMPLES
    seed: Optional[int] = None
    mode: str = "auto"  # auto | exhaustive | sampled
    jobs: int = 1


def _probes_for(claim: ClaimSpec) -> list[PointSet]:
    # the known extremal sets, when sized to the bound, are tried first
    out = []
    for builder in (construct_u1, construct_u2, construct_ustar):
        try:
            U = builder(claim.params.q)
        except ParameterError:
            continue
        if U.params == claim.params and U.size == claim.m:
            out.append(U)
    return out


def run_claim(claim: ClaimSpec, budget: Budget, progress=None) -> VerificationReport:
    if claim.kind == "universal":
        return check_universal(
            claim.params, claim.m, claim.k, budget.mode, claim.relation,
            seed=budget.seed, samples=budget.samples, cap=budget.cap,
            probes=_probes_for(claim), jobs=budget.jobs, progress=progress, claim=claim,
        )
    if claim.kind == "tightness":
        rep = check_tightness(claim.claim_id, claim.params.q)
        rep.claim = claim
        return rep
    if claim.kind == "construction":
        return check_construction(claim)
    if claim.kind == "property":
        return check_property(
            claim.params, budget.mode, with_rectangles=claim.claim_id == "L4.1",
            seed=budget.seed, samples=budget.samples, cap=budget.cap, claim=claim,
        )
    raise ValueError(f"unknown claim kind {claim.kind!r}")


def run_suite(claims: Sequence[ClaimSpec], budget: Optional[Budget] = None, progress=None) -> list[VerificationReport]:
    """Run claims in order. Exhaustive items that do not fit the work cap are
    downgraded to sampling (budget.mode "auto"); failures are recorded, never raised.
    """
    budget = budget or Budget()
    return [run_claim(c, budget, progress) for c in claims]


def suite_exit_code(reports: Sequence[VerificationReport]) -> int:
    outcomes = {r.outcome for r in reports}
    if "refuted" in outcomes:
        return 1
    if "infeasible" in outcomes:
        return 2
    return 0


def suite_json(reports: Sequence[VerificationReport], skipped: Sequence[str] = (), timing: bool = False) -> dict:
    discrepancies = [
        f"{r.claim.claim_id} {r.claim.params}: {n}" for r in reports for n in r.notes if n.startswith("discrepancy")
    ]
    return {
        "reports": [r.to_json(timing=timing) for r in reports],
        "skipped": list(skipped),
        "discrepancies": discrepancies,
        "exit_code": suite_exit_code(reports),
    }
