"""
Command-line front end.

    zddcolor solve GRAPH.col [options]
    zddcolor batch DIR [options]

Every option can also be set through an environment variable named
``ZDDCOLOR_<OPTION>`` (for example ``ZDDCOLOR_TIME_LIMIT=30``); explicit
flags win. Exit status is 0 when optimality is proven, 2 when a limit was
hit, and 1 on errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path

from .bnp import CONTOURS, STRATEGIES, SolverConfig, solve
from .graph import DimacsError, read_dimacs
from .miszdd import DEFAULT_NODE_BUDGET

EXIT_OPTIMAL = 0
EXIT_ERROR = 1
EXIT_LIMIT = 2

ENV_PREFIX = "ZDDCOLOR_"

# CSV header, in the order of the notation table of the reporting columns
CSV_FIELDS = [
    "instance",
    "n",
    "m",
    "LB",
    "UB",
    "optimal",
    "t_Z",
    "t",
    "exp",
    "id",
    "Z_i",
    "Z_f",
    "pct_change",
    "cols",
    "t_price",
    "status",
    "error",
]

TIME_FIELDS = ("t_Z", "t", "t_price")


@dataclass
class RunConfig:
    instance: Path
    time_limit: float = 600.0
    zdd_budget: int = DEFAULT_NODE_BUDGET
    strategy: str = "cbfs"
    contour: str = "positive-assignment"
    pool_filter: float | None = 0.8
    seed: int = 0
    format: str = "text"
    no_times: bool = False

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            strategy=self.strategy,
            contour=self.contour,
            time_limit=self.time_limit,
            zdd_budget=self.zdd_budget,
            pool_filter=self.pool_filter,
            seed=self.seed,
        )


@dataclass
class RunReport:
    instance: str
    n: int
    m: int
    LB: int
    UB: int
    optimal: bool
    t_Z: float | None
    t: float | None
    exp: int
    id: int
    Z_i: int
    Z_f: int
    pct_change: float
    cols: int
    t_price: float | None
    status: str
    coloring: list[int]

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls(**json.loads(text))

    def to_text(self) -> str:
        def sec(x: float | None) -> str:
            return "-" if x is None else f"{x:.2f}s"

        verdict = f"chi = {self.UB}" if self.optimal else f"{self.LB} <= chi <= {self.UB} ({self.status})"
        return (
            f"{self.instance}: n={self.n} m={self.m} {verdict}\n"
            f"  ZDD build {sec(self.t_Z)}, search {sec(self.t)}, pricing {sec(self.t_price)}\n"
            f"  explored {self.exp}, identified {self.id}, columns {self.cols}\n"
            f"  ZDD nodes {self.Z_i} -> {self.Z_f} ({self.pct_change:+.1f}%)\n"
        )

    def csv_row(self) -> dict:
        row = {k: getattr(self, k) for k in CSV_FIELDS if k != "error"}
        row["error"] = ""
        return row


def schema() -> dict:
    """JSON schema of :class:`RunReport`, shipped with the package."""
    return json.loads(resources.files("zddcolor").joinpath("report.schema.json").read_text())


def run(config: RunConfig) -> RunReport:
    """Solve one instance; raises ``DimacsError``/``OSError`` on bad input."""
    g = read_dimacs(config.instance)
    res = solve(g, config.solver_config())
    st = res.stats
    coloring = [0] * g.n
    for c, cls in enumerate(res.coloring):
        for v in cls:
            coloring[v] = c + 1

    def timed(x: float) -> float | None:
        return None if config.no_times else round(x, 6)

    return RunReport(
        instance=config.instance.stem,
        n=res.n,
        m=res.m,
        LB=res.lb,
        UB=res.ub,
        optimal=res.optimal,
        t_Z=timed(st.zdd_time),
        t=timed(st.search_time),
        exp=st.explored,
        id=st.identified,
        Z_i=st.zdd_initial,
        Z_f=st.zdd_final,
        pct_change=round(st.zdd_growth, 4),
        cols=st.columns_generated,
        t_price=timed(st.pricing_time),
        status=res.status,
        coloring=coloring,
    )


def batch(directory: Path, config: RunConfig) -> tuple[str, list[RunReport | None]]:
    """Run every ``.col`` file in ``directory``; returns CSV text and the reports.

    A failing instance yields a row with ``status=error`` and does not stop the batch.
    """
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    reports: list[RunReport | None] = []
    for path in sorted(Path(directory).glob("*.col")):
        cfg = RunConfig(**{**asdict(config), "instance": path})
        try:
            rep = run(cfg)
        except (DimacsError, OSError, ValueError) as exc:
            reports.append(None)
            writer.writerow({"instance": path.stem, "status": "error", "error": str(exc)})
            continue
        reports.append(rep)
        writer.writerow(rep.csv_row())
    return out.getvalue(), reports


# ----------------------------------------------------------------------


def _env(name: str, default):
    value = os.environ.get(ENV_PREFIX + name.upper())
    return default if value is None else value


def _pool_filter(text: str) -> float | None:
    return None if text.lower() in ("none", "off") else float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zddcolor", description="Exact graph coloring by branch-and-price with ZDD pricing.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--time-limit", type=float, default=float(_env("time_limit", 600.0)), help="seconds (default 600)")
    common.add_argument("--zdd-budget", type=int, default=int(_env("zdd_budget", DEFAULT_NODE_BUDGET)), help="ZDD node limit")
    common.add_argument("--strategy", choices=STRATEGIES, default=_env("strategy", "cbfs"))
    common.add_argument("--contour", choices=CONTOURS, default=_env("contour", "positive-assignment"), help="CBFS contour label")
    common.add_argument("--pool-filter", type=_pool_filter, default=_pool_filter(str(_env("pool_filter", "0.8"))),
                        help="dual-price threshold for extra initial columns, or 'off'")
    common.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    common.add_argument("--format", choices=("text", "json"), default=_env("format", "text"))
    common.add_argument("--output", type=Path, default=_env("output", None), help="write the report here instead of stdout")
    common.add_argument("--no-times", action="store_true", default=_env("no_times", "") not in ("", "0"),
                        help="omit wall-clock fields so reports are reproducible byte for byte")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("solve", parents=[common], help="solve one DIMACS .col file")
    p.add_argument("instance", type=Path)
    b = sub.add_parser("batch", parents=[common], help="solve every .col file in a directory, CSV output")
    b.add_argument("directory", type=Path)
    return parser


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        config = RunConfig(
            instance=getattr(args, "instance", Path()),
            time_limit=args.time_limit,
            zdd_budget=args.zdd_budget,
            strategy=args.strategy,
            contour=args.contour,
            pool_filter=args.pool_filter,
            seed=args.seed,
            format=args.format,
            no_times=args.no_times,
        )
        config.solver_config()  # validates limits
        if args.command == "batch":
            if not args.directory.is_dir():
                raise NotADirectoryError(f"not a directory: {args.directory}")
            text, reports = batch(args.directory, config)
            _emit(text, args.output)
            if any(r is None for r in reports):
                return EXIT_ERROR
            return EXIT_OPTIMAL if all(r.optimal for r in reports) else EXIT_LIMIT
        report = run(config)
    except (DimacsError, OSError, ValueError) as exc:
        print(f"zddcolor: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit(report.to_json() if args.format == "json" else report.to_text(), args.output)
    return EXIT_OPTIMAL if report.optimal else EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
