"""Command-line interface: classify, solve, analyze, and corpus statistics.

Exit codes: 0 success, 1 a structural diagnostic prevented a completeness
claim, 2 parse or input error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .analysis import INFINITY, Point, classify, indicial_data, laurent_order_bound
from .diffpoly import supports
from .engine import polynomial_solutions, rational_solutions
from .errors import AodeError, CapError, ParseError, ZeroIndicialError
from .factor import is_irreducible
from .parser import parse_equation, parse_poly
from .render import (
    classification_to_json,
    indicial_to_json,
    render_classification_text,
    render_indicial_text,
    render_report_text,
    report_to_json,
)

EXIT_OK = 0
EXIT_INCOMPLETE = 1
EXIT_PARSE = 2
EXIT_CAP = 3


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="aode",
        description="Exact structural classification and polynomial/rational "
        "solving of algebraic ordinary differential equations.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="structural classification of an equation")
    p.add_argument("equation")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("solve", help="enumerate polynomial or rational solutions")
    p.add_argument("equation")
    p.add_argument("--mode", choices=["poly", "rational"], default="rational")
    p.add_argument("--json", action="store_true")
    p.add_argument(
        "--order-cap",
        type=int,
        default=None,
        metavar="K",
        help="proceed at places without a computable bound, using K as the pole order",
    )

    p = sub.add_parser("analyze", help="exponent data and indicial information at a place")
    p.add_argument("equation")
    p.add_argument("--point", metavar="RAT", help="finite rational place x0")
    p.add_argument("--factor", metavar="POLY", help="finite place given by a monic irreducible polynomial")
    p.add_argument("--infinity", action="store_true", help="the place at infinity (default)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("stats", help="aggregate classification over a corpus file")
    p.add_argument("--corpus", metavar="PATH", default=None, help="corpus file; defaults to the bundled mini corpus")
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, default=1, metavar="K")

    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "stats":
            return _cmd_stats(args)
        raise AssertionError("unreachable")
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except CapError as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except AodeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


def _cmd_classify(args) -> int:
    F = parse_equation(args.equation)
    c = classify(F)
    if args.json:
        print(json.dumps(classification_to_json(c), indent=2))
    else:
        print(render_classification_text(c))
    return EXIT_OK


def _cmd_solve(args) -> int:
    F = parse_equation(args.equation)
    if args.mode == "poly":
        report = polynomial_solutions(F)
    else:
        report = rational_solutions(F, order_cap=args.order_cap)
    if args.json:
        print(json.dumps(report_to_json(report), indent=2))
    else:
        print(render_report_text(report))
    structural = [d for d in report.diagnostics if d.kind != "CompleteUpToCap"]
    return EXIT_INCOMPLETE if structural else EXIT_OK


def _cmd_analyze(args) -> int:
    F = parse_equation(args.equation)
    if args.point is not None and args.factor is not None:
        print("choose one of --point, --factor, --infinity", file=sys.stderr)
        return EXIT_PARSE
    if args.point is not None:
        try:
            x0 = Fraction(args.point)
        except (ValueError, ZeroDivisionError):
            print(f"invalid rational point: {args.point!r}", file=sys.stderr)
            return EXIT_PARSE
        pt = Point.finite(x0)
    elif args.factor is not None:
        p = parse_poly(args.factor).monic()
        if p.degree < 1 or not is_irreducible(p):
            print("the place must be a monic irreducible polynomial", file=sys.stderr)
            return EXIT_PARSE
        pt = Point.at_factor(p, trusted=True)
    else:
        pt = INFINITY
    E, d, D = supports(F)
    data = indicial_data(F, pt)
    try:
        bound = laurent_order_bound(F, pt)
    except ZeroIndicialError:
        bound = None
    if args.json:
        payload = {
            "order": F.order,
            "total_degree": d,
            "exponents": sorted(list(I) for I in E),
            "top_exponents": sorted(list(I) for I in D),
        }
        payload.update(indicial_to_json(data, bound))
        print(json.dumps(payload, indent=2))
    else:
        lines = [
            f"order: {F.order}",
            f"total degree: {d}",
            "exponents: " + ", ".join(str(tuple(I)) for I in sorted(E)),
            "top exponents: " + ", ".join(str(tuple(I)) for I in sorted(D)),
            render_indicial_text(data),
        ]
        if bound is None:
            lines.append("order bound: none (zero indicial polynomial)")
        else:
            lines.append(f"order bound: {bound}")
        print("\n".join(lines))
    return EXIT_OK


# -- corpus statistics -----------------------------------------------------------

_LABELS = {
    "noncritical": ("noncritical", True),
    "critical": ("noncritical", False),
    "maximally_comparable": ("maximally_comparable", True),
    "not_maximally_comparable": ("maximally_comparable", False),
    "completely": ("completely", True),
    "not_completely": ("completely", False),
}


@dataclass
class CorpusEntry:
    id: str
    equation: str
    expected: dict[str, bool]


def parse_corpus(text: str) -> tuple[list[CorpusEntry], list[str]]:
    """One entry per line: ``id ; equation [; labels]``; '#' comments allowed."""
    entries: list[CorpusEntry] = []
    problems: list[str] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) < 2 or not parts[0] or not parts[1]:
            problems.append(f"line {lineno}: expected 'id ; equation [; labels]'")
            continue
        entry_id, equation = parts[0], parts[1]
        if entry_id in seen:
            problems.append(f"line {lineno}: duplicate id {entry_id!r}")
            continue
        expected: dict[str, bool] = {}
        bad = False
        if len(parts) >= 3 and parts[2]:
            for token in parts[2].split(","):
                token = token.strip()
                if token not in _LABELS:
                    problems.append(f"line {lineno}: unknown label {token!r}")
                    bad = True
                    break
                key, val = _LABELS[token]
                expected[key] = val
        if bad:
            continue
        seen.add(entry_id)
        entries.append(CorpusEntry(entry_id, equation, expected))
    return entries, problems


def _classify_entry(entry: CorpusEntry) -> dict:
    try:
        c = classify(parse_equation(entry.equation))
    except AodeError as e:
        return {"id": entry.id, "error": str(e)}
    got = {
        "noncritical": c.noncritical,
        "maximally_comparable": c.maximally_comparable,
        "completely": bool(c.completely) if c.completely is not None else False,
    }
    mismatches = sorted(
        k for k, want in entry.expected.items() if got[k] is not want
    )
    return {"id": entry.id, "labels": got, "mismatches": mismatches}


def run_stats(entries: list[CorpusEntry], jobs: int = 1) -> dict:
    """Deterministic aggregate over the corpus, independent of the job count."""
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(_classify_entry, entries))
    results.sort(key=lambda r: r["id"])
    parsed = [r for r in results if "labels" in r]
    failures = [r for r in results if "error" in r]
    total = len(parsed)

    def count(key: str) -> int:
        return sum(1 for r in parsed if r["labels"][key])

    def pct(n: int) -> float:
        return round(100.0 * n / total, 2) if total else 0.0

    nc, mc, cmc = count("noncritical"), count("maximally_comparable"), count("completely")
    return {
        "entries": len(entries),
        "classified": total,
        "parse_failures": [{"id": r["id"], "error": r["error"]} for r in failures],
        "noncritical": {"count": nc, "percent": pct(nc)},
        "maximally_comparable": {"count": mc, "percent": pct(mc)},
        "completely_maximally_comparable": {"count": cmc, "percent": pct(cmc)},
        "label_mismatches": [
            {"id": r["id"], "labels": r["mismatches"]}
            for r in parsed
            if r["mismatches"]
        ],
    }


def bundled_corpus_text() -> str:
    return resources.files("aode").joinpath("data/mini_corpus.txt").read_text()


def _cmd_stats(args) -> int:
    if args.corpus is None:
        text = bundled_corpus_text()
    else:
        try:
            with open(args.corpus, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            print(f"cannot read corpus: {e}", file=sys.stderr)
            return EXIT_PARSE
    entries, problems = parse_corpus(text)
    stats = run_stats(entries, jobs=args.jobs)
    stats["malformed_lines"] = problems
    if args.json:
        print(json.dumps(stats, indent=2))
    else:
        print(f"entries: {stats['entries']}  classified: {stats['classified']}")
        for key in ("noncritical", "maximally_comparable", "completely_maximally_comparable"):
            row = stats[key]
            print(f"{key.replace('_', ' ')}: {row['count']} ({row['percent']}%)")
        for pf in stats["parse_failures"]:
            print(f"parse failure [{pf['id']}]: {pf['error']}")
        for m in problems:
            print(f"malformed: {m}")
        for mm in stats["label_mismatches"]:
            print(f"label mismatch [{mm['id']}]: {', '.join(mm['labels'])}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
