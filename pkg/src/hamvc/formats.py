"""Point-set text files and the JSON schemas for every report we emit.

Text format::

    # comment
    d q t
    x_0 x_1 ... x_{d-1}
    ...

Coordinates in files must already lie in [0, q); the library reduces mod q
when points are built in code, but a file with an out-of-range value is
almost always a mistake, so the parser rejects it.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, TextIO, Union

from .core import HammingParams, ParameterError, PointSet

SCHEMA_NAMES = ("witness", "vc_result", "configuration", "report", "suite")


class FormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def _content_lines(lines: Iterable[str]):
    for no, raw in enumerate(lines, 1):
        text = raw.split("#", 1)[0].strip()
        if text:
            yield no, text


def _ints(text: str, no: int) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise FormatError(f"expected integers, got {text!r}", no) from None


def parse_point_set(lines: Iterable[str], vertex_cap: Optional[int] = None) -> PointSet:
    it = _content_lines(lines)
    try:
        no, header = next(it)
    except StopIteration:
        raise FormatError("missing 'd q t' header") from None
    vals = _ints(header, no)
    if len(vals) != 3:
        raise FormatError(f"header must be 'd q t', got {header!r}", no)
    try:
        kw = {} if vertex_cap is None else {"vertex_cap": vertex_cap}
        params = HammingParams(*vals, **kw)
    except ParameterError as e:
        raise FormatError(str(e), no) from None
    seen: dict[int, int] = {}
    for no, text in it:
        coords = _ints(text, no)
        if len(coords) != params.d:
            raise FormatError(f"expected {params.d} coordinates, got {len(coords)}", no)
        bad = [c for c in coords if not 0 <= c < params.q]
        if bad:
            raise FormatError(f"coordinate {bad[0]} outside [0, {params.q})", no)
        idx = params.encode(tuple(coords))
        if idx in seen:
            raise FormatError(f"duplicate point {tuple(coords)} (first on line {seen[idx]})", no)
        seen[idx] = no
    return PointSet.from_indices(params, seen)


def read_point_set(source: Union[str, Path, TextIO], vertex_cap: Optional[int] = None) -> PointSet:
    if hasattr(source, "read"):
        return parse_point_set(source, vertex_cap)
    with open(source) as fh:
        return parse_point_set(fh, vertex_cap)


def format_point_set(U: PointSet, header: Iterable[str] = ()) -> str:
    p = U.params
    out = [f"# {line}" for line in header]
    out.append(f"{p.d} {p.q} {p.t}")
    out += [" ".join(map(str, pt)) for pt in U.points]
    return "\n".join(out) + "\n"


def write_point_set(U: PointSet, path: Union[str, Path], header: Iterable[str] = ()) -> None:
    Path(path).write_text(format_point_set(U, header))


def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise KeyError(f"no schema {name!r}; choose from {', '.join(SCHEMA_NAMES)}")
    text = resources.files("hamvc").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)
