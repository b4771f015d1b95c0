"""Command-line entry point: compute, construct, detect, verify, threshold.

Exit codes: 0 success or verified, 1 a valid negative outcome (nothing
detected, a claim refuted), 2 usage errors and infeasible work.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from typing import Optional

from .configs import DETECTORS, ConfigError, witness_from_config
from .constructions import NAMES, ConstructionSpec, construct
from .core import HammingParams, ParameterError, PreconditionError
from .formats import FormatError, format_point_set, read_point_set, write_point_set
from .harness import (
    CLAIM_IDS,
    DEFAULT_SAMPLES,
    DEFAULT_WORK_CAP,
    Budget,
    Infeasible,
    claims_for,
    run_suite,
    suite_json,
    threshold_search,
)
from .shatter import DEFAULT_MAX_K, vc_dimension

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


@dataclass
class CliConfig:
    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    format: str = "text"
    seed: Optional[int] = None
    cap: int = DEFAULT_WORK_CAP
    max_k: Optional[int] = None
    jobs: int = 1
    progress: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        return cls(
            command=args.command,
            input=getattr(args, "input", None),
            output=getattr(args, "output", None),
            format=getattr(args, "format", "text"),
            seed=getattr(args, "seed", None),
            cap=getattr(args, "cap", DEFAULT_WORK_CAP),
            max_k=getattr(args, "max_k", None),
            jobs=args.jobs,
            progress=args.progress,
        )


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _progress(cfg: CliConfig):
    if not cfg.progress:
        return None

    def report(done: int, total: int):
        print(f"progress: {done}/{total} subsets", file=sys.stderr, flush=True)

    return report


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pt(p) -> str:
    return "(" + ", ".join(map(str, p)) + ")"


def _witness_lines(w) -> list[str]:
    out = ["W = " + " ".join(_pt(p) for p in w.W)]
    for mask, u in enumerate(w.assignments):
        S = "{" + ", ".join(str(j) for j in range(w.size) if mask >> j & 1) + "}"
        out.append(f"  S = {S}: u = {_pt(u)}")
    return out


def cmd_compute(args, cfg: CliConfig) -> int:
    try:
        U = read_point_set(cfg.input)
    except (OSError, FormatError) as e:
        return _fail(f"{cfg.input}: {e}")
    res = vc_dimension(U, max_k=cfg.max_k)
    if cfg.format == "json":
        obj = res.to_json()
        obj["size"] = U.size
        obj["params"] = {"d": U.params.d, "q": U.params.q, "t": U.params.t}
        _emit(json.dumps(obj) + "\n", cfg.output)
        return EXIT_OK
    lines = [f"vc = {res.dimension}"]
    if res.refuted_at is None:
        lines[0] += f" (search stopped at max-k {cfg.max_k}; may be larger)"
    if res.witness is not None and res.witness.size:
        lines += _witness_lines(res.witness)
    _emit("\n".join(lines) + "\n", cfg.output)
    return EXIT_OK


def cmd_construct(args, cfg: CliConfig) -> int:
    try:
        spec = ConstructionSpec(args.name, args.q, args.d)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            U = construct(spec)
    except ParameterError as e:
        return _fail(str(e))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    header = [f"construction {spec.label()} in {U.params}", f"size {U.size}"]
    if cfg.output:
        write_point_set(U, cfg.output, header)
    else:
        sys.stdout.write(format_point_set(U, header))
    return EXIT_OK


def cmd_detect(args, cfg: CliConfig) -> int:
    try:
        U = read_point_set(cfg.input)
    except (OSError, FormatError) as e:
        return _fail(f"{cfg.input}: {e}")
    try:
        found = DETECTORS[args.kind](U)
    except PreconditionError as e:
        return _fail(str(e))
    if found is None:
        if cfg.format == "json":
            _emit("null\n", cfg.output)
        else:
            _emit(f"no {args.kind} in U\n", cfg.output)
        return EXIT_NEGATIVE
    witness, why = None, None
    if args.emit_witness:
        try:
            witness = witness_from_config(found, U)
        except ConfigError as e:
            why = f"missing {e.role}: {e}" if e.role else str(e)
    if cfg.format == "json":
        obj = found.to_json()
        if args.emit_witness:
            obj["witness"] = witness.to_json() if witness else None
            if why:
                obj["witness_error"] = why
        _emit(json.dumps(obj) + "\n", cfg.output)
        return EXIT_OK
    lines = [found.kind + (f" ({found.orientation})" if found.orientation else "")]
    lines += [f"  {role} = {_pt(p)}" for role, p in found.roles.items()]
    if found.hole is not None:
        lines.append(f"  hole = {_pt(found.hole)}")
    if found.plane is not None:
        lines.append(f"  plane free {list(found.plane.free_coords)} fixed {list(found.plane.fixed)}")
    if witness is not None:
        lines.append(f"witness (validated, size {witness.size}):")
        lines += ["  " + s for s in _witness_lines(witness)]
    elif why:
        lines.append(f"witness unavailable: {why}")
    _emit("\n".join(lines) + "\n", cfg.output)
    return EXIT_OK


def cmd_verify(args, cfg: CliConfig) -> int:
    ids = list(CLAIM_IDS) if args.claims == ["all"] else args.claims
    unknown = [c for c in ids if c not in CLAIM_IDS]
    if unknown:
        return _fail(f"unknown claim id {unknown[0]!r}; choose from {', '.join(CLAIM_IDS)} or 'all'")
    if args.mode == "sampled" and cfg.seed is None:
        return _fail("sampled mode needs --seed")
    claims, skipped = [], []
    for q in args.q:
        for cid in ids:
            try:
                got = claims_for(cid, q, args.d)
            except ParameterError as e:
                return _fail(str(e))
            if got:
                claims += got
            else:
                skipped.append(f"{cid} at q={q}: outside the claim's range")
    budget = Budget(cap=cfg.cap, samples=args.samples, seed=cfg.seed, mode=args.mode, jobs=cfg.jobs)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        reports = run_suite(claims, budget, _progress(cfg))
    doc = suite_json(reports, skipped, timing=args.timing)
    _emit(json.dumps(doc, indent=2) + "\n", cfg.output)
    for r in reports:
        print(f"{r.outcome:10s} {r.claim.label()}", file=sys.stderr)
    return doc["exit_code"]


def cmd_threshold(args, cfg: CliConfig) -> int:
    try:
        params = HammingParams(args.d, args.q, args.t)
        m, C, work = threshold_search(params, args.k, prune=not args.no_prune, cap=cfg.cap)
    except ParameterError as e:
        return _fail(str(e))
    except Infeasible as e:
        return _fail(f"infeasible: {e} (projected {e.projected} subsets)")
    print(f"m* = {m}")
    print(f"certificate: {C.size} points with vc < {args.k} ({work} subsets examined)")
    header = [f"threshold certificate for vc >= {args.k} in {params}", f"size {C.size}, m* = {m}"]
    if cfg.output:
        write_point_set(C, cfg.output, header)
    else:
        sys.stdout.write(format_point_set(C, header))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--progress", action="store_true", help="subset-count checkpoints on stderr")
    shared.add_argument("--jobs", type=int, default=1, help="worker processes for exhaustive enumeration")

    parser = argparse.ArgumentParser(prog="hamvc", description="Neighborhood VC-dimension in Hamming graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[shared], help="VC-dimension of a point-set file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--max-k", type=int, default=DEFAULT_MAX_K, help="largest W size searched")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output")

    p = sub.add_parser("construct", parents=[shared], help="write one of the extremal sets")
    p.add_argument("name", type=str.upper, choices=NAMES, metavar="NAME", help=", ".join(n.lower() for n in NAMES))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("-o", "--output")

    p = sub.add_parser("detect", parents=[shared], help="find a witness configuration")
    p.add_argument("kind", choices=sorted(DETECTORS))
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--emit-witness", action="store_true", help="also build and validate the shatter witness")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", parents=[shared], help="check claims; JSON report")
    p.add_argument("claims", nargs="+", help=f"claim ids ({', '.join(CLAIM_IDS)}) or 'all'")
    p.add_argument("--q", type=int, nargs="+", default=[3, 4])
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--cap", type=int, default=DEFAULT_WORK_CAP, help="work cap in subsets")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds (breaks byte-stability)")
    p.add_argument("-o", "--output")

    p = sub.add_parser("threshold", parents=[shared], help="exact universal threshold by search")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_WORK_CAP, help="work cap in subsets")
    p.add_argument("--no-prune", action="store_true", help="enumerate all 2^(q^d) subsets")
    p.add_argument("-o", "--output")
    return parser


COMMANDS = {
    "compute": cmd_compute,
    "construct": cmd_construct,
    "detect": cmd_detect,
    "verify": cmd_verify,
    "threshold": cmd_threshold,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    cfg = CliConfig.from_args(args)
    return COMMANDS[args.command](args, cfg)


if __name__ == "__main__":
    sys.exit(main())
