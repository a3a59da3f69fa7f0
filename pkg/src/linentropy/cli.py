"""Command-line interface.

    linentropy measure [--format probs|counts] [--json] [FILE]
    linentropy curve uniform --max-n N
    linentropy curve bernoulli --steps K
    linentropy verify [--trials T] [--max-alphabet M] [--seed S]
                      [--functional lin|shannon-normalized|logical]

Input is UTF-8 text, one record per line. ``#`` starts a comment line and
blank lines are skipped. A record may start with an ``id:`` prefix.

* ``probs``:  ``coin: 0.5, 0.5`` (commas and/or whitespace; brackets allowed)
* ``counts``: ``coin: h=1, t=1``

Output is tab-separated with a header row, or JSON lines with ``--json``.
Reals carry 15 significant digits. Exit status is 0 on success, 1 on bad
input data or a failed verification, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass

from . import __version__
from .distributions import Distribution, empirical_distribution, make_distribution
from .divergences import normalized_shannon_entropy, shannon_entropy
from .errors import InvalidConfig, InvalidSpec, LinEntropyError, ParseError
from .lin import lin_entropy, lin_entropy_uniform, logical_entropy
from .verification import FUNCTIONALS, SuiteConfig, get_functional, reports_to_jsonl, run_suite

UNDEFINED = "undefined"
MEASURE_COLUMNS = (
    "input_id",
    "alphabet_size",
    "shannon",
    "normalized_shannon",
    "lin",
    "logical",
    "max_symbol",
)


def fmt(x: float) -> str:
    return f"{x:.15g}"


def _round15(x: float) -> float:
    return float(fmt(x))


@dataclass(frozen=True)
class MeasureReport:
    input_id: str
    alphabet_size: int
    shannon: float
    normalized_shannon: float | str
    lin: float
    logical: float
    max_symbol: str

    def to_row(self) -> list[str]:
        ns = self.normalized_shannon
        return [
            self.input_id,
            str(self.alphabet_size),
            fmt(self.shannon),
            ns if isinstance(ns, str) else fmt(ns),
            fmt(self.lin),
            fmt(self.logical),
            self.max_symbol,
        ]

    def to_json(self) -> str:
        d = asdict(self)
        for k in ("shannon", "lin", "logical"):
            d[k] = _round15(d[k])
        if not isinstance(d["normalized_shannon"], str):
            d["normalized_shannon"] = _round15(d["normalized_shannon"])
        return json.dumps(d)


def measure(input_id: str, p: Distribution) -> MeasureReport:
    n = len(p)
    return MeasureReport(
        input_id=input_id,
        alphabet_size=n,
        shannon=shannon_entropy(p),
        normalized_shannon=UNDEFINED if n < 2 else normalized_shannon_entropy(p),
        lin=lin_entropy(p),
        logical=logical_entropy(p),
        max_symbol=p.argmax(),
    )


_SPLIT = re.compile(r"[,\s]+")


def _split_id(body: str, lineno: int, fmt_name: str) -> tuple[str, str]:
    head, sep, rest = body.partition(":")
    if sep and (fmt_name == "probs" or "=" not in head):
        record_id = head.strip()
        if not record_id:
            raise ParseError("empty record id before ':'", lineno)
        return record_id, rest
    return f"line{lineno}", body


def parse_probs(body: str, lineno: int) -> Distribution:
    body = body.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    tokens = [t for t in _SPLIT.split(body) if t]
    if not tokens:
        raise ParseError("no probabilities in record", lineno)
    try:
        masses = [float(t) for t in tokens]
    except ValueError as e:
        raise ParseError(f"bad probability: {e}", lineno) from None
    return make_distribution([str(i) for i in range(len(masses))], masses)


def parse_counts(body: str, lineno: int) -> Distribution:
    counts: dict[str, int] = {}
    for item in body.split(","):
        item = item.strip()
        if not item:
            continue
        label, sep, value = item.rpartition("=")
        label = label.strip()
        if not sep or not label:
            raise ParseError(f"expected label=count, got {item!r}", lineno)
        try:
            count = int(value.strip())
        except ValueError:
            raise ParseError(f"count for {label!r} is not an integer: {value.strip()!r}", lineno) from None
        if label in counts:
            raise ParseError(f"label {label!r} appears twice", lineno)
        counts[label] = count
    if not counts:
        raise ParseError("no counts in record", lineno)
    return empirical_distribution(counts)


def parse_records(lines: Iterable[str], fmt_name: str = "probs") -> list[tuple[str, Distribution]]:
    """Parse input lines into ``(record_id, distribution)`` pairs.

    Validation failures are re-raised as the same error class, with the line
    number and record id prepended.
    """
    parse = {"probs": parse_probs, "counts": parse_counts}[fmt_name]
    records = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        record_id, body = _split_id(line, lineno, fmt_name)
        try:
            records.append((record_id, parse(body, lineno)))
        except ParseError:
            raise
        except LinEntropyError as e:
            raise type(e)(f"line {lineno} ({record_id}): {e}") from None
    return records


def cmd_measure(lines: Iterable[str], fmt_name: str = "probs") -> list[MeasureReport]:
    return [measure(rid, p) for rid, p in parse_records(lines, fmt_name)]


def format_measure_tsv(reports: Sequence[MeasureReport]) -> str:
    rows = ["\t".join(MEASURE_COLUMNS)] + ["\t".join(r.to_row()) for r in reports]
    return "\n".join(rows) + "\n"


def parse_measure_tsv(text: str) -> list[MeasureReport]:
    lines = text.splitlines()
    if not lines or tuple(lines[0].split("\t")) != MEASURE_COLUMNS:
        raise ParseError("missing or unexpected header row", 1)
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        f = line.split("\t")
        if len(f) != len(MEASURE_COLUMNS):
            raise ParseError(f"expected {len(MEASURE_COLUMNS)} columns", lineno)
        out.append(
            MeasureReport(
                input_id=f[0],
                alphabet_size=int(f[1]),
                shannon=float(f[2]),
                normalized_shannon=f[3] if f[3] == UNDEFINED else float(f[3]),
                lin=float(f[4]),
                logical=float(f[5]),
                max_symbol=f[6],
            )
        )
    return out


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    max_n: int | None = None
    steps: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "uniform":
            if self.max_n is None or self.max_n < 1:
                raise InvalidSpec("uniform curve needs max_n >= 1")
        elif self.kind == "bernoulli":
            if self.steps is None or self.steps < 2:
                raise InvalidSpec("bernoulli curve needs steps >= 2")
        else:
            raise InvalidSpec(f"unknown curve kind: {self.kind!r}")


def cmd_curve(spec: CurveSpec) -> tuple[tuple[str, ...], list[tuple]]:
    """Curve data as ``(header, rows)``.

    ``uniform``: rows ``(N, 1/N, H*(U_N))`` for ``N = 1..max_n``.
    ``bernoulli``: rows ``(alpha, H*([alpha, 1-alpha]))`` on an evenly spaced
    grid of ``steps`` points over ``[0, 1]``, endpoints included.
    """
    if spec.kind == "uniform":
        rows = [(n, 1.0 / n, lin_entropy_uniform(n)) for n in range(1, spec.max_n + 1)]
        return ("n", "inv_n", "lin"), rows
    k = spec.steps - 1
    rows = []
    for i in range(spec.steps):
        alpha = i / k
        rows.append((alpha, lin_entropy(make_distribution(["1", "0"], [alpha, 1.0 - alpha]))))
    return ("alpha", "lin"), rows


def _cell(v) -> str:
    return str(v) if isinstance(v, int) else fmt(v)


def format_table(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = ["\t".join(header)] + ["\t".join(_cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: SuiteConfig, functional: str = "lin"):
    """Run the suite; returns ``(reports, exit_status)``."""
    reports = run_suite(cfg, get_functional(functional))
    return reports, 0 if all(r.passed for r in reports) else 1


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _at_least_two(text: str) -> int:
    value = _positive_int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"must be at least 2, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linentropy",
        description="One-bounded Lin entropy and classical information measures.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="compute measures for each input record")
    m.add_argument("--format", choices=("probs", "counts"), default="probs")
    m.add_argument("--json", action="store_true", help="emit JSON lines instead of TSV")
    m.add_argument("file", nargs="?", help="input file (default: standard input)")

    c = sub.add_parser("curve", help="emit curve data for uniform or Bernoulli inputs")
    csub = c.add_subparsers(dest="kind", required=True)
    cu = csub.add_parser("uniform", help="H*(U_N) against 1/N")
    cu.add_argument("--max-n", type=_positive_int, required=True)
    cb = csub.add_parser("bernoulli", help="H*(Ber(alpha)) against alpha")
    cb.add_argument("--steps", type=_at_least_two, required=True)

    v = sub.add_parser("verify", help="run the entropy-functional property suite")
    v.add_argument("--trials", type=_positive_int, default=SuiteConfig.trials)
    v.add_argument("--max-alphabet", type=_at_least_two, default=SuiteConfig.max_alphabet)
    v.add_argument("--seed", type=int, default=SuiteConfig.seed)
    v.add_argument("--sweep-max", type=_at_least_two, default=SuiteConfig.sweep_max,
                   help="largest N in the uniform sweeps")
    v.add_argument("--functional", choices=sorted(FUNCTIONALS), default="lin")
    v.add_argument("--json", action="store_true", help="emit JSON lines instead of text")
    return parser


def _run_measure(args, out) -> int:
    try:
        if args.file is None:
            reports = cmd_measure(sys.stdin, args.format)
        else:
            with open(args.file, encoding="utf-8") as fh:
                reports = cmd_measure(fh, args.format)
    except OSError as e:
        print(f"linentropy: cannot read input: {e}", file=sys.stderr)
        return 1
    except LinEntropyError as e:
        print(f"linentropy: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    if args.json:
        out.write("".join(r.to_json() + "\n" for r in reports))
    else:
        out.write(format_measure_tsv(reports))
    return 0


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.command == "measure":
        return _run_measure(args, out)
    if args.command == "curve":
        spec = CurveSpec(args.kind, getattr(args, "max_n", None), getattr(args, "steps", None))
        out.write(format_table(*cmd_curve(spec)))
        return 0
    try:
        cfg = SuiteConfig(
            trials=args.trials, max_alphabet=args.max_alphabet, seed=args.seed,
            sweep_max=args.sweep_max,
        )
    except InvalidConfig as e:
        print(f"linentropy: {e}", file=sys.stderr)
        return 2
    reports, status = cmd_verify(cfg, args.functional)
    if args.json:
        out.write(reports_to_jsonl(reports))
    else:
        out.write("".join(r.summary_line() + "\n" for r in reports))
    return status


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
