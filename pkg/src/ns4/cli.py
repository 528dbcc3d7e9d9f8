"""Command-line front end: ``ns4 {check,analyze,normalize,reduce,render,report}``.

Exit codes: 0 success, 1 semantic failure (invalid derivation, nothing to
reduce, result not normal), 2 I/O or parse failure, 3 step budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import corpus
from .analysis import critical_paths, is_critical, is_simplified, maximal_segments, measures
from .checker import SYSTEMS, check
from .derivation import get_at, replace_at, size
from .reduction import (
    BudgetExhausted,
    ReductionError,
    TraceStep,
    normalize,
    reduce_step,
)
from .render import FORMATS, render
from .syntax import ParseError, SourceSpan, parse_derivation_with_spans

OK, FAILED, IO_ERROR, BUDGET = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple
    system: str = "ns4"
    budget: Optional[int] = None
    format: str = "ascii-tree"
    trace: bool = True
    out: Optional[Path] = None


class _Fail(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


def _say(*lines: str, err: bool = False):
    stream = sys.stderr if err else sys.stdout
    for line in lines:
        print(line, file=stream)


def _load(name: str):
    p = Path(name)
    try:
        src = p.read_text(encoding="utf-8")
    except OSError as e:
        raise _Fail(IO_ERROR, f"{name}: cannot read: {e.strerror or e}") from None
    try:
        d, spans = parse_derivation_with_spans(src)
    except ParseError as e:
        raise _Fail(IO_ERROR, f"{name}:{e.span}: parse: {e.message}") from None
    return d, spans


def _span(spans: Dict, path) -> SourceSpan:
    while path not in spans and path:
        path = path[:-1]
    return spans.get(path, SourceSpan(0, 0))


def _violations(name, spans, report) -> List[str]:
    return [f"{name}:{_span(spans, v.path)}: {v.rule}: {v.reason}" for v in report.violations]


def _require_valid(name, d, spans, system):
    rep = check(d, system)
    if not rep.valid:
        _say(*_violations(name, spans, rep))
        raise _Fail(FAILED, f"{name}: not a valid {system} derivation")


def _budget(cfg: RunConfig, d) -> int:
    if cfg.budget is not None:
        return cfg.budget
    env = os.environ.get("NS4_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise _Fail(IO_ERROR, f"NS4_BUDGET must be an integer, got {env!r}") from None
    return 10 * size(d) ** 2


def _emit(text: str, out: Optional[Path]):
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _bool(b: bool) -> str:
    return "true" if b else "false"


# -- commands --------------------------------------------------------------


def cmd_check(cfg: RunConfig) -> int:
    worst = OK
    for name in cfg.inputs:
        try:
            d, spans = _load(name)
        except _Fail as e:
            _say(e.message, err=True)
            worst = max(worst, e.code)
            continue
        rep = check(d, cfg.system)
        if rep.valid:
            _say(f"{name}: valid {cfg.system} derivation of {d.conclusion}")
        else:
            _say(*_violations(name, spans, rep))
            worst = max(worst, FAILED)
    return worst


def analysis_lines(d) -> List[str]:
    m = measures(d)
    maxsegs = maximal_segments(d, validate=False)
    head = (
        f"G={m.G} I={m.I} #G={m.top_count} len={m.length} "
        f"normal={_bool(not maxsegs)} simplified={_bool(is_simplified(d))} "
        f"critical={_bool(is_critical(d))}"
    )
    lines = [head]
    for s in maxsegs:
        start = "/" + "/".join(map(str, s.occurrences[0]))
        lines.append(f"maximal {s.formula} length={s.length} degree={s.degree} at={start}")
    return lines


def cmd_analyze(cfg: RunConfig) -> int:
    name = cfg.inputs[0]
    d, spans = _load(name)
    _require_valid(name, d, spans, cfg.system)
    _say(*analysis_lines(d))
    return OK


def _trace_path(cfg: RunConfig, name: str) -> Path:
    if cfg.out is not None:
        return cfg.out.with_name(cfg.out.name + ".trace")
    return Path(Path(name).stem + ".trace")


def cmd_normalize(cfg: RunConfig) -> int:
    name = cfg.inputs[0]
    d, spans = _load(name)
    _require_valid(name, d, spans, "ns4")
    budget = _budget(cfg, d)
    trace_file = _trace_path(cfg, name) if cfg.trace else None
    try:
        n, trace = normalize(d, budget=budget)
    except BudgetExhausted as e:
        if trace_file is not None:
            trace_file.write_text(e.trace.dump(), encoding="utf-8")
        _say(f"{name}: {e}", err=True)
        return BUDGET
    if trace_file is not None:
        trace_file.write_text(trace.dump(), encoding="utf-8")
    _emit(render(n, cfg.format), cfg.out)
    return OK if measures(n).G == 0 else FAILED


def cmd_reduce(cfg: RunConfig) -> int:
    name = cfg.inputs[0]
    d, spans = _load(name)
    _require_valid(name, d, spans, "ns4")
    paths = critical_paths(d)
    if not paths:
        raise _Fail(FAILED, f"{name}: no applicable reduction (derivation is normal)")
    path = paths[0]
    before = measures(d)
    try:
        case, sub = reduce_step(get_at(d, path))
    except ReductionError as e:
        raise _Fail(FAILED, f"{name}: no applicable reduction: {e}") from None
    out = replace_at(d, path, sub)
    step = TraceStep(case, before, measures(out), path, 0)
    _say(step.line(), err=cfg.out is None)
    _emit(render(out, cfg.format), cfg.out)
    return OK


def cmd_render(cfg: RunConfig) -> int:
    d, _ = _load(cfg.inputs[0])
    _emit(render(d, cfg.format), cfg.out)
    return OK


def _expand(inputs: Sequence[str]) -> List[str]:
    files: List[str] = []
    for item in inputs or [str(corpus.directory())]:
        p = Path(item)
        files.extend(sorted(map(str, p.glob("*.nd"))) if p.is_dir() else [item])
    return files


def cmd_report(cfg: RunConfig) -> int:
    from .plots import plot_overview, plot_trace

    outdir = cfg.out or Path("ns4-report")
    outdir.mkdir(parents=True, exist_ok=True)
    header = "name\tvalid\tG\tI\t#G\tlen\tnormal_len\tsteps\ttransient\touter_decreasing\tstatus"
    rows = [header]
    traces = {}
    worst = OK
    for f in _expand(cfg.inputs):
        stem = Path(f).stem
        try:
            d, _ = _load(f)
        except _Fail as e:
            _say(e.message, err=True)
            rows.append(f"{stem}\t-\t-\t-\t-\t-\t-\t-\t-\t-\tunreadable")
            worst = max(worst, e.code)
            continue
        valid = check(d, "ns4").valid
        m = measures(d)
        cols = [stem, _bool(valid), str(m.G), str(m.I), str(m.top_count), str(m.length)]
        if not valid:
            rows.append("\t".join(cols + ["-", "-", "-", "-", "skipped"]))
            continue
        try:
            n, tr = normalize(d, budget=_budget(cfg, d))
            status = "normal"
        except BudgetExhausted as e:
            n, tr, status = e.derivation, e.trace, "budget"
            worst = max(worst, BUDGET)
        traces[stem] = tr
        cols += [
            str(size(n)),
            str(len(tr)),
            str(len(tr.transient_steps())),
            _bool(tr.outer_strictly_decreasing()),
            status,
        ]
        rows.append("\t".join(cols))
        if tr.steps:
            plot_trace(tr, outdir / f"{stem}-trace.png", title=stem)
    (outdir / "summary.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    plot_overview(traces, outdir / "index-overview.png")
    _say(*rows)
    return worst


COMMANDS = {
    "check": cmd_check,
    "analyze": cmd_analyze,
    "normalize": cmd_normalize,
    "reduce": cmd_reduce,
    "render": cmd_render,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ns4", description="Check, analyze and normalize S4 natural deduction derivations.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help, many=False):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("inputs", nargs="*" if name == "report" else ("+" if many else 1), metavar="FILE")
        return sp

    sp = add("check", "check derivations against a system", many=True)
    sp.add_argument("--system", choices=SYSTEMS, default="ns4")

    sp = add("analyze", "print degree, index and maximal segments")
    sp.add_argument("--system", choices=SYSTEMS, default="ns4", help="system used to validate the input")

    for name, help in (("normalize", "normalize a derivation"), ("reduce", "apply one critical reduction")):
        sp = add(name, help)
        sp.add_argument("--format", choices=FORMATS, default="ascii-tree")
        sp.add_argument("--out", type=Path, help="write the derivation here instead of stdout")
        if name == "normalize":
            sp.add_argument("--budget", type=int, help="maximum number of critical reductions")
            sp.add_argument("--no-trace", dest="trace", action="store_false", help="do not write the .trace file")

    sp = add("render", "print a derivation in another format")
    sp.add_argument("--format", choices=FORMATS, default="ascii-tree")
    sp.add_argument("--out", type=Path)

    sp = add("report", "normalize files (default: bundled corpus), write summary.tsv and figures")
    sp.add_argument("--out", type=Path, help="output directory (default ns4-report)")
    sp.add_argument("--budget", type=int)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        inputs=tuple(args.inputs),
        system=getattr(args, "system", "ns4"),
        budget=getattr(args, "budget", None),
        format=getattr(args, "format", "ascii-tree"),
        trace=getattr(args, "trace", True),
        out=getattr(args, "out", None),
    )
    try:
        return COMMANDS[cfg.command](cfg)
    except _Fail as e:
        if e.message:
            _say(e.message, err=True)
        return e.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
