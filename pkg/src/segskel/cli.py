"""Command-line entry point.

    segskel --input scene.json --graph beta --beta 2 --variant lune
    segskel --input scene.txt --graph dt --svg out.svg

Exit status: 0 on success, 1 on usage or internal errors, 2 when the input
is malformed or not in general position.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .delaunay import delaunay_graph
from .gabriel import gg_graph
from .geom import GeometryError, InvalidInputError, Segment, SegmentSet, require_general_position
from .graph import SkeletonGraph
from .neighborhoods import CLOSURES, LUNE, VARIANTS, BetaSpec
from .oracle import OracleConfig, oracle_skeleton
from .solver import DEFAULT_EPSILON, beta_skeleton
from .svg import render_svg

FORMAT_VERSION = 1
GRAPHS = ("beta", "gg", "dt")


class InputFormatError(ValueError):
    """Malformed scene file; the message carries the line number."""


@dataclass(frozen=True)
class RunConfig:
    input: str
    graph: str = "beta"
    beta: Optional[float] = None
    variant: str = LUNE
    closure: str = "default"
    epsilon: float = DEFAULT_EPSILON
    grid: int = 256
    svg: Optional[str] = None
    oracle: bool = False
    normalize: bool = False
    output: Optional[str] = None

    def __post_init__(self):
        if self.graph not in GRAPHS:
            raise ValueError(f"unknown graph kind {self.graph!r}")
        if (self.beta is not None) != (self.graph == "beta"):
            raise ValueError("--beta is required with --graph beta and not accepted otherwise")
        if self.beta is not None and not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValueError(f"beta must be a positive number, got {self.beta}")
        if not 0.0 < self.epsilon < 0.5:
            raise ValueError(f"epsilon must lie in (0, 0.5), got {self.epsilon}")
        if self.oracle and self.graph == "dt":
            raise ValueError("--oracle supports --graph beta and gg only")

    def spec(self) -> Optional[BetaSpec]:
        closure = None if self.closure == "default" else self.closure
        if self.graph == "beta":
            return BetaSpec(self.beta, self.variant, closure)
        if self.graph == "gg":
            return BetaSpec(1.0, LUNE, "closed")
        return None


def _parse_text(text: str) -> list[Segment]:
    segs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        try:
            vals = [float(p) for p in parts]
        except ValueError:
            raise InputFormatError(f"line {lineno}: expected four numbers, got {line!r}") from None
        if len(vals) != 4 or not all(math.isfinite(v) for v in vals):
            raise InputFormatError(f"line {lineno}: expected four finite numbers, got {line!r}")
        segs.append(Segment.from_coords(*vals))
    return segs


def _parse_json(text: str) -> list[Segment]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"line {e.lineno}: invalid JSON ({e.msg})") from None
    rows = doc.get("segments") if isinstance(doc, dict) else None
    if not isinstance(rows, list):
        raise InputFormatError('line 1: JSON input needs a "segments" list')
    segs = []
    for k, row in enumerate(rows):
        ok = (
            isinstance(row, list)
            and len(row) == 4
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v) for v in row)
        )
        if not ok:
            raise InputFormatError(f"segment {k}: expected [x1, y1, x2, y2], got {row!r}")
        segs.append(Segment.from_coords(*row))
    return segs


def normalize_segments(segs: Sequence[Segment]) -> list[Segment]:
    """Translate and scale uniformly so the scene fits [0, 1]^2 touching x=0 and y=0."""
    xs = [c for s in segs for c in (s.a.x, s.b.x)]
    ys = [c for s in segs for c in (s.a.y, s.b.y)]
    x0, y0 = min(xs), min(ys)
    span = max(max(xs) - x0, max(ys) - y0)
    if span == 0.0:
        span = 1.0
    return [Segment.from_coords((s.a.x - x0) / span, (s.a.y - y0) / span, (s.b.x - x0) / span, (s.b.y - y0) / span) for s in segs]


def parse_segments(path, normalize: bool = False) -> SegmentSet:
    """Read a scene, JSON or whitespace text, and check general position."""
    text = Path(path).read_text()
    segs = _parse_json(text) if text.lstrip().startswith("{") else _parse_text(text)
    if not segs:
        raise InputFormatError("no segments in input")
    if normalize:
        segs = normalize_segments(segs)
    try:
        S = SegmentSet(tuple(segs))
    except GeometryError as e:
        raise InputFormatError(str(e)) from None
    require_general_position(S)
    return S


def dump_segments(S: SegmentSet) -> str:
    rows = ",\n    ".join("[" + ", ".join(_num(v) for v in s.coords()) + "]" for s in S)
    return '{\n  "segments": [\n    ' + rows + "\n  ]\n}\n"


def _num(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    r = format(float(v), ".17g")
    if "e" not in r and "." not in r and "inf" not in r and "nan" not in r:
        r += ".0"
    return r


def _dump(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(f'{pad}  {json.dumps(k)}: {_dump(v, indent + 1)}' for k, v in value.items())
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if all(isinstance(v, dict) for v in value):
            inner = ",\n".join(pad + "  " + _dump_flat(v) for v in value)
            return "[\n" + inner + "\n" + pad + "]"
        return "[" + ", ".join(_dump(v, indent) for v in value) + "]"
    if isinstance(value, str):
        return json.dumps(value)
    return _num(value)


def _dump_flat(d: dict) -> str:
    return "{" + ", ".join(f"{json.dumps(k)}: {_dump(v)}" for k, v in d.items()) + "}"


def graph_document(S: SegmentSet, G: SkeletonGraph, config: RunConfig) -> dict:
    spec = config.spec()
    doc = {
        "format": FORMAT_VERSION,
        "graph": config.graph,
        "n": len(S),
        "beta": spec.beta if spec else None,
        "variant": spec.variant if spec else None,
        "closure": (("closed" if spec.closed else "open") if spec else None),
        "epsilon": config.epsilon if config.graph != "dt" else None,
    }
    if config.oracle:
        doc["oracle"] = True
        doc["grid"] = config.grid
    edges = []
    for i, j in G:
        w = G.witness(i, j)
        edges.append({"i": i, "j": j, "t1": None if w is None else w.t1, "t2": None if w is None else w.t2})
    doc["edges"] = edges
    return doc


def compute(S: SegmentSet, config: RunConfig) -> SkeletonGraph:
    spec = config.spec()
    if config.oracle:
        return oracle_skeleton(S, spec, OracleConfig(grid=config.grid))
    if config.graph == "dt":
        return delaunay_graph(S)
    if config.graph == "gg":
        return gg_graph(S, config.epsilon, validate=False)
    return beta_skeleton(S, spec, config.epsilon, validate=False)


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        S = parse_segments(config.input, config.normalize)
    except InvalidInputError as e:
        print(f"segskel: invalid input: {e.violation.kind}: {e}", file=stderr)
        return 2
    except (InputFormatError, OSError) as e:
        print(f"segskel: invalid input: {e}", file=stderr)
        return 2
    try:
        G = compute(S, config)
        text = _dump(graph_document(S, G, config)) + "\n"
        if config.output:
            Path(config.output).write_text(text)
        else:
            stdout.write(text)
        if config.svg:
            Path(config.svg).write_text(render_svg(S, G, config.spec()))
    except Exception as e:  # noqa: BLE001 - reported as an internal error
        print(f"segskel: internal error: {type(e).__name__}: {e}", file=stderr)
        return 1
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="segskel", description="Proximity graphs of planar line segments.")
    p.add_argument("--input", required=True, help="scene file: JSON {\"segments\": [...]} or lines 'x1 y1 x2 y2'")
    p.add_argument("--graph", choices=GRAPHS, default="beta")
    p.add_argument("--beta", type=float, help="skeleton parameter (required with --graph beta)")
    p.add_argument("--variant", choices=VARIANTS, default=LUNE)
    p.add_argument("--closure", choices=CLOSURES + ("default",), default="default")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON, help="generator search resolution")
    p.add_argument("--grid", type=int, default=256, help="oracle samples per axis (with --oracle)")
    p.add_argument("--svg", help="write an SVG rendering to this path")
    p.add_argument("--oracle", action="store_true", help="use the brute-force grid oracle")
    p.add_argument("--normalize", action="store_true", help="map the scene into the unit square first")
    p.add_argument("--output", help="write JSON here instead of standard output")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(**vars(args))
    except ValueError as e:
        parser.error(str(e))
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
