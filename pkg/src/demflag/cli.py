"""``demflag`` command line.

Every subcommand writes its artifact to stdout (or ``--output``) and any
failure to stderr as one JSON object.  Exit codes:

    0  success
    1  a verification or identity check failed
    2  usage error (argparse)
    3  partition syntax error
    4  level below the largest part
    5  a part exceeds the level of the graph
    6  inconsistent options (e.g. ``--format dot`` outside ``graph``)
    7  any other domain error
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import __version__
from .characters import graded_character
from .errors import DemflagError, LevelTooSmall, MaxPartExceedsLevel, ParseError
from .flags import multiplicity_table
from .graph import (
    build,
    entry_vertex,
    multiplicity_via_graph,
    target_vertex,
    to_dot,
)
from .partition import Partition, parse_partition
from .qpoly import ZERO
from .series import (
    DEFAULT_ORDER,
    gen_fn,
    level23_table,
    q1_multiplicity,
    theta_identities,
)
from .verify import SUITES, Bounds, run_all

SCHEMA = "1"
FORMATS = ("json", "csv", "dot", "text")
SUBCOMMANDS = ("mult", "table", "graph", "char", "series", "verify")

# formats each subcommand can emit; the first is the default
ALLOWED = {
    "mult": ("json", "csv", "text"),
    "table": ("json", "csv", "text"),
    "graph": ("json", "dot"),
    "char": ("json", "text"),
    "series": ("json", "csv", "text"),
    "verify": ("json", "text"),
}


class ConfigError(DemflagError):
    code = "config_error"


EXIT_CODES = [
    (ParseError, 3),
    (LevelTooSmall, 4),
    (MaxPartExceedsLevel, 5),
    (ConfigError, 6),
    (DemflagError, 7),
]


def exit_code_for(err: DemflagError) -> int:
    for cls, code in EXIT_CODES:
        if isinstance(err, cls):
            return code
    return 7


@dataclass
class RunConfig:
    subcommand: str
    partition_spec: str = ""
    level: int = 0
    weight: Optional[int] = None
    format: Optional[str] = None
    truncation: int = DEFAULT_ORDER
    fast_path: bool = True
    reachable_only: bool = False
    output_path: Optional[str] = None
    normalize: bool = False
    route: str = "recursion"
    # series
    series_mode: str = "table"
    series_arg: int = 10
    # verify
    max_weight: int = 10
    max_s: int = 20
    jobs: int = 1
    suites: list = field(default_factory=list)

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        allowed = ALLOWED[self.subcommand]
        if self.format is None:
            self.format = allowed[0]
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if self.format == "dot" and self.subcommand != "graph":
            raise ConfigError("--format dot is only valid with the graph subcommand")
        if self.format not in allowed:
            raise ConfigError(f"{self.subcommand} cannot emit {self.format}")
        if self.truncation < 0:
            raise ConfigError("--truncation must be non-negative")
        if self.jobs < 1:
            raise ConfigError("--jobs must be at least 1")
        for name in self.suites:
            if name not in SUITES:
                raise ConfigError(f"unknown suite {name!r}")

    def partition(self) -> Partition:
        return parse_partition(self.partition_spec, normalize=self.normalize)

    def checked_partition(self) -> Partition:
        """Parse the partition and check the level before any computation."""
        xi = self.partition()
        if self.subcommand == "graph":
            if self.level < 2:
                raise LevelTooSmall(f"graphs need level >= 2, got {self.level}")
            if xi.largest > self.level:
                raise MaxPartExceedsLevel(f"part {xi.largest} exceeds level {self.level}")
        elif self.level < max(1, xi.largest):
            raise LevelTooSmall(
                f"level {self.level} is below the largest part {max(1, xi.largest)} of ({xi})"
            )
        return xi


# -- rendering --------------------------------------------------------------


def _json(obj: dict) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=2) + "\n"


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _do_mult(cfg: RunConfig) -> tuple[int, str]:
    xi = cfg.checked_partition()
    if cfg.weight is None:
        raise ConfigError("mult needs --weight")
    extra = {}
    if cfg.route == "graph":
        if cfg.level < 2:
            raise LevelTooSmall("the graph route needs level >= 2")
        poly = multiplicity_via_graph(xi, cfg.level, cfg.weight)
        tgt = target_vertex(xi, cfg.level, cfg.weight) if 0 <= cfg.weight else None
        extra = {"entry": list(entry_vertex(xi, cfg.level)),
                 "target": list(tgt) if tgt is not None else None}
    else:
        poly = multiplicity_table(xi, cfg.level, fast_path=cfg.fast_path)[cfg.weight]
    if cfg.format == "json":
        return 0, _json({
            "xi": list(xi.parts), "level": cfg.level, "weight": cfg.weight,
            "route": cfg.route, **extra,
            "multiplicity": poly.to_json(), "text": str(poly),
        })
    if cfg.format == "csv":
        return 0, _csv(["r", "degree", "coefficient"],
                       [(cfg.weight, d, c) for d, c in poly.terms().items()])
    return 0, f"[V({xi.exponent_string()}) : D({cfg.level}, {cfg.weight}w)]_q = {poly}\n"


def _do_table(cfg: RunConfig) -> tuple[int, str]:
    xi = cfg.checked_partition()
    t = multiplicity_table(xi, cfg.level, fast_path=cfg.fast_path)
    if cfg.format == "json":
        return 0, _json({**t.to_json(), "dimension": xi.dimension()})
    if cfg.format == "csv":
        return 0, _csv(["r", "degree", "coefficient"], t.csv_rows())
    lines = [f"V({xi.exponent_string()}) at level {cfg.level}"]
    lines += [f"  r={r}: {p}" for r, p in t.entries.items()]
    return 0, "\n".join(lines) + "\n"


def _do_graph(cfg: RunConfig) -> tuple[int, str]:
    xi = cfg.checked_partition()
    g = build(xi, cfg.level)
    entry = entry_vertex(xi, cfg.level)
    if cfg.reachable_only:
        g = g.restrict(g.reachable_from(entry))
    if cfg.format == "dot":
        return 0, to_dot(g)
    return 0, _json({**g.to_json(), "entry": list(entry)})


def _do_char(cfg: RunConfig) -> tuple[int, str]:
    xi = cfg.partition()
    ch = graded_character(xi)
    if cfg.format == "json":
        return 0, _json({"xi": list(xi.parts), "dimension": ch.dimension(), **ch.to_json()})
    return 0, f"ch_gr V({xi.exponent_string()})\n" + ch.text_table()


def _do_series(cfg: RunConfig) -> tuple[int, str]:
    mode, n = cfg.series_mode, cfg.series_arg
    if mode in ("table", "q1", "genfn") and n < 0:
        raise ConfigError(f"--{mode} needs a non-negative argument")
    if mode == "table":
        t = level23_table(n)
        if cfg.format == "json":
            return 0, _json(t.to_json())
        if cfg.format == "csv":
            return 0, _csv(["s", "r", "degree", "coefficient"], t.csv_rows())
        lines = [f"p_({s},{r}) = {p}" for (s, r), p in sorted(t.entries.items())]
        return 0, "\n".join(lines) + "\n"
    if mode == "q1":
        rows = [(s, r, q1_multiplicity(s, r)) for s in range(n + 1) for r in range(s % 2, s + 1, 2)]
        rows = [row for row in rows if row[2]]
        if cfg.format == "json":
            out: dict[str, dict] = {}
            for s, r, m in rows:
                out.setdefault(str(s), {})[str(r)] = m
            return 0, _json({"smax": n, "q1": out})
        if cfg.format == "csv":
            return 0, _csv(["s", "r", "multiplicity"], rows)
        return 0, "".join(f"[D(2,{s}w) : D(3,{r}w)] = {m}\n" for s, r, m in rows)
    if mode == "genfn":
        f = gen_fn(n, cfg.truncation)
        if cfg.format == "json":
            return 0, _json({"n": n, **f.to_json()})
        if cfg.format == "csv":
            return 0, _csv(["t", "degree", "coefficient"],
                           [(t, d, c) for t in range(f.order + 1) for d, c in f[t].terms().items()])
        lines = [f"u^{t}: {f[t]}" for t in range(f.order + 1) if f[t] != ZERO]
        return 0, f"P_{n}(q, u) to order {f.order}\n" + "\n".join(lines) + "\n"
    if mode == "theta":
        res = {k: lhs.agrees_with(rhs) for k, (lhs, rhs) in theta_identities(cfg.truncation).items()}
        status = 0 if all(res.values()) else 1
        if cfg.format == "json":
            return status, _json({"order": cfg.truncation, "identities": res,
                                  "index": "u^(s/2) for even r, u^((s+1)/2) for odd r"})
        if cfg.format == "csv":
            return status, _csv(["identity", "passed"], [(k, int(v)) for k, v in res.items()])
        return status, "".join(f"{k}: {'PASS' if v else 'FAIL'}\n" for k, v in res.items())
    raise ConfigError(f"unknown series mode {mode!r}")


def _do_verify(cfg: RunConfig) -> tuple[int, str]:
    bounds = Bounds(max_weight=cfg.max_weight, max_s=cfg.max_s, order=cfg.truncation)
    results = run_all(bounds, cfg.suites or None, jobs=cfg.jobs)
    status = 0 if all(r.passed for r in results) else 1
    if cfg.format == "json":
        # timings vary between runs, so they stay out of the artifact
        suites = [{k: v for k, v in r.to_json().items() if k != "seconds"} for r in results]
        return status, _json({"bounds": vars(bounds), "passed": status == 0, "suites": suites})
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.checks} checks)"
             + (f": {r.failure}" if r.failure else "") for r in results]
    return status, "\n".join(lines) + "\n"


HANDLERS = {
    "mult": _do_mult,
    "table": _do_table,
    "graph": _do_graph,
    "char": _do_char,
    "series": _do_series,
    "verify": _do_verify,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute ``cfg``; returns ``(exit_status, artifact_text)``.

    Domain errors propagate; :func:`main` turns them into exit codes.
    """
    cfg.validate()
    return HANDLERS[cfg.subcommand](cfg)


# -- argument parsing -------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, partition=True, level=True) -> None:
    if partition:
        p.add_argument("--partition", "-p", required=True,
                       help="e.g. '1^8', '1^2*3' or '3,1,1'")
        p.add_argument("--normalize", action="store_true",
                       help="accept unsorted comma lists and drop zeros")
    if level:
        p.add_argument("--level", "-l", type=int, required=True)
    p.add_argument("--format", "-f", choices=FORMATS)
    p.add_argument("--output", "-o", help="write the artifact here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="demflag", description="Graded Demazure flag multiplicities for sl2[t].")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("mult", help="one multiplicity [V(xi) : D(l, r w)]_q")
    _add_common(p)
    p.add_argument("--weight", "-r", type=int, required=True)
    p.add_argument("--route", choices=("recursion", "graph"), default="recursion")
    p.add_argument("--no-fast-path", action="store_true")

    p = sub.add_parser("table", help="all multiplicities of V(xi) at level l")
    _add_common(p)
    p.add_argument("--no-fast-path", action="store_true")

    p = sub.add_parser("graph", help="the labeled graph H_l(xi)")
    _add_common(p)
    p.add_argument("--reachable", action="store_true", help="keep only vertices reachable from the entry")

    p = sub.add_parser("char", help="graded character of V(xi)")
    _add_common(p, level=False)

    p = sub.add_parser("series", help="level-2 in level-3 multiplicities and generating functions")
    _add_common(p, partition=False, level=False)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--table", type=int, metavar="SMAX")
    mode.add_argument("--genfn", type=int, metavar="R")
    mode.add_argument("--theta-check", action="store_true")
    mode.add_argument("--q1", type=int, metavar="SMAX", help="numerical multiplicities from q = 1")
    p.add_argument("--truncation", "--order", type=int, default=DEFAULT_ORDER, dest="truncation")

    p = sub.add_parser("verify", help="run the cross-route consistency suites")
    _add_common(p, partition=False, level=False)
    p.add_argument("--max-weight", type=int, default=10)
    p.add_argument("--max-s", type=int, default=20)
    p.add_argument("--truncation", "--order", type=int, default=DEFAULT_ORDER, dest="truncation")
    p.add_argument("--jobs", "-j", type=int, default=1)
    p.add_argument("--suite", action="append", default=[], choices=sorted(SUITES), dest="suites")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=ns.subcommand, format=ns.format, output_path=ns.output)
    for name in ("level", "weight", "route", "truncation", "max_weight", "max_s", "jobs", "suites", "normalize"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if hasattr(ns, "partition"):
        cfg.partition_spec = ns.partition
    cfg.fast_path = not getattr(ns, "no_fast_path", False)
    cfg.reachable_only = getattr(ns, "reachable", False)
    if ns.subcommand == "series":
        if ns.theta_check:
            cfg.series_mode = "theta"
        else:
            for mode in ("table", "genfn", "q1"):
                if getattr(ns, mode) is not None:
                    cfg.series_mode, cfg.series_arg = mode, getattr(ns, mode)
    return cfg


def _error(err: Exception, code: int) -> str:
    obj = {"schema": SCHEMA, "error": {
        "type": type(err).__name__,
        "code": getattr(err, "code", "error"),
        "message": str(err),
        "exit_code": code,
    }}
    return json.dumps(obj) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        status, text = run(cfg)
    except DemflagError as err:
        code = exit_code_for(err)
        sys.stderr.write(_error(err, code))
        return code
    if cfg.output_path:
        try:
            with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as err:
            sys.stderr.write(_error(err, 7))
            return 7
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
