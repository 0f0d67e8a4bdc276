"""Command-line front end and report rendering.

Subcommands: enumerate, survey, verify, witness, mu.  Exit codes:
0 = success / verdict holds, 1 = contradiction of the surveyed claims,
2 = usage error, 3 = resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .perm import PermError, PermGroup, format_perm
from .dense import BudgetExceeded, DenseError
from .subgroup_enum import EnumError
from .cache import CacheError
from .group_ops import fingerprint
from .mindeg import MinDegError, mu
from .pipeline import (
    DegreeReport,
    PipelineError,
    enumerate_degree,
    survey_degree,
    verify_up_to,
    witness_degree_10,
)

EXIT_OK = 0
EXIT_CONTRADICTION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _cache_dir(args) -> str | None:
    return args.cache or os.environ.get("PERMDEG_CACHE") or None


def _report_json(r: DegreeReport) -> str:
    data = {
        "degree": r.degree,
        "total_classes": r.total_classes,
        "minemb_count": r.minemb_count,
        "ind_multiset": {str(k): v for k, v in sorted(r.ind_multiset.items())},
        "comp_nonempty": r.comp_nonempty,
        "contradictions": r.contradictions,
        "classes": [
            {
                "class_id": e.cls.class_id,
                "order": e.cls.order,
                "class_size": e.cls.class_size,
                "generators": e.cls.representative.gen_strings(),
                "fingerprint": fingerprint(e.cls.representative).canonical(),
                "ind": e.ind,
                "comp_witness": format_perm(e.comp_witness) if e.comp_witness else None,
            }
            for e in r.entries
        ],
    }
    return json.dumps(data, separators=(",", ":"), sort_keys=False)


def _report_table(r: DegreeReport) -> str:
    lines = [
        f"degree {r.degree}: {r.total_classes} subgroup classes, "
        f"{r.minemb_count} minimally embedded"
    ]
    lines.append(f"{'class':>6} {'order':>8} {'size':>8} {'ind':>4}  comp")
    for e in r.entries:
        comp = format_perm(e.comp_witness) if e.comp_witness else "-"
        lines.append(
            f"{e.cls.class_id:>6} {e.cls.order:>8} {e.cls.class_size:>8} "
            f"{e.ind:>4}  {comp}"
        )
    ind = ", ".join(f"{k}:{v}" for k, v in sorted(r.ind_multiset.items()))
    lines.append(f"ind multiset: {{{ind}}}")
    lines.append("comp: " + ("NONEMPTY" if r.comp_nonempty else "empty"))
    return "\n".join(lines)


def _split_gen_texts(text: str) -> list[str]:
    """Split a comma-separated generator list; commas inside cycles stay."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _group_from_args(args) -> PermGroup:
    if args.file:
        degree = None
        gen_text = None
        with open(args.file, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line.startswith("degree:"):
                    degree = int(line.split(":", 1)[1])
                elif line.startswith("gens:"):
                    gen_text = line.split(":", 1)[1]
        if degree is None or gen_text is None:
            raise PermError("group file needs 'degree: n' and 'gens: ...' lines")
        return PermGroup.parse(degree, _split_gen_texts(gen_text))
    if args.gens is None or args.degree is None:
        raise PermError("provide --file, or both --gens and --degree")
    return PermGroup.parse(args.degree, _split_gen_texts(args.gens))


def _cmd_enumerate(args) -> int:
    classes = enumerate_degree(args.m, _cache_dir(args))
    total = sum(c.class_size for c in classes)
    print(f"degree {args.m}: {len(classes)} subgroup classes, {total} subgroups")
    return EXIT_OK


def _cmd_survey(args) -> int:
    r = survey_degree(args.m, _cache_dir(args))
    print(_report_json(r) if args.json else _report_table(r))
    if r.contradictions:
        for c in r.contradictions:
            print(f"CONTRADICTION: {c}", file=sys.stderr)
        return EXIT_CONTRADICTION
    return EXIT_OK


def _cmd_verify(args) -> int:
    top = min(args.max, 8) if args.skip_9 else args.max
    verdict = verify_up_to(top, _cache_dir(args))
    bad = []
    for r in verdict.reports:
        ind = ", ".join(f"{k}:{v}" for k, v in sorted(r.ind_multiset.items()))
        comp = "NONEMPTY" if r.comp_nonempty else "empty"
        print(f"m={r.degree}: minemb classes={r.minemb_count} ind={{{ind}}} comp={comp}")
        bad.extend(r.contradictions)
    if bad or not verdict.no_complement:
        for c in bad:
            print(f"CONTRADICTION: {c}", file=sys.stderr)
        return EXIT_CONTRADICTION
    print(f"verdict: no centralizer complement at any degree <= {top}")
    return EXIT_OK


def _cmd_witness(args) -> int:
    w = witness_degree_10()
    print(f"|G(2,2,5)| = 1920 on 10 points")
    print(f"mu(G(2,2,5)) = {w.mu_value}")
    print(f"order-2 centralizing element outside G: {format_perm(w.witness_element)}")
    print(f"mu(G x C2) = {w.product_mu}")
    print(f"{w.product_mu} < {w.mu_value} + 2 = {w.mu_value + 2}: strict inequality")
    if w.contradictions:
        for c in w.contradictions:
            print(f"CONTRADICTION: {c}", file=sys.stderr)
        return EXIT_CONTRADICTION
    return EXIT_OK


def _cmd_mu(args) -> int:
    G = _group_from_args(args)
    result = mu(G)
    print(result.value)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="permdeg",
        description="Minimal faithful degree surveys over symmetric groups",
    )
    ap.add_argument("--threads", type=int, default=0,
                    help="worker hint; execution is sequential and deterministic")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate subgroup classes of Sym(m)")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--cache", default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("survey", help="minemb/Ind/Comp survey of one degree")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--cache", default=None)
    p.set_defaults(func=_cmd_survey)

    p = sub.add_parser("verify", help="surveys for all degrees 2..M plus verdict")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--skip-9", dest="skip_9", action="store_true")
    p.add_argument("--cache", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("witness", help="degree-10 strict-inequality certificate")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("mu", help="minimal faithful degree of a given group")
    p.add_argument("--file", default=None)
    p.add_argument("--gens", default=None)
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=_cmd_mu)
    return ap


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DenseError, EnumError, MinDegError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PermError, CacheError, PipelineError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
