"""Command-line front end.

Writes one JSON object per line (or CSV rows for campaign commands) to
stdout and diagnostics to stderr.  Exit codes: 0 no violations, 1 violations
found, 2 usage or configuration error, 3 exhaustive budget refused.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Iterable, Sequence

from . import bounds
from .sums import escape_count, escape_profile, is_complete, k_fold_sums, subset_sums
from .verify import (
    CLAIMS,
    BudgetExceededError,
    check_conjecture,
    max_incomplete_size,
    replay_lemma_eh,
    replay_main_proof,
    run_audit,
    verify_theorem,
)
from .zn import ResidueSet, ZnSet, parse_literal, subgroup_generated

JOBS_ENV = "ZNCOMPLETE_JOBS"
CSV_FIELDS = ["check", "n", "mode", "instances_tested", "violation_count", "finding_count", "seed", "elapsed_ms"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _n_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _literal(text: str) -> list[int]:
    try:
        return parse_literal(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zncomplete", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def single(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--n", type=int, required=True)
        return sp

    sp = single("sums", "nonempty subset sums S_A and S_A with 0 adjoined")
    sp.add_argument("--set", type=_literal, required=True)
    sp = single("kfold", "sums of exactly k distinct elements")
    sp.add_argument("--set", type=_literal, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp = single("complete", "is every element of <A> a nonempty distinct-element sum")
    sp.add_argument("--set", type=_literal, required=True)
    sp = single("lambda", "escape count |(B + x) minus B|, or the whole profile")
    sp.add_argument("--set", type=_literal, required=True, help="the set B")
    sp.add_argument("--x", type=int)

    def ranged(name, help_, campaign=True):
        sp = sub.add_parser(name, help=help_)
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--n", type=int)
        g.add_argument("--n-range", type=_n_range, help="inclusive a:b")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        if campaign:
            sp.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
            sp.add_argument("--trials", type=int)
            sp.add_argument("--seed", type=int)
            sp.add_argument("--jobs", type=int)
            sp.add_argument("--allow-large", action="store_true", help="lift the 10^9 instance budget")
            sp.add_argument("--max-witnesses", type=int, default=1000)
        return sp

    ranged("threshold", "integer-exact thresholds", campaign=False)
    ranged("max-incomplete", "largest incomplete unit set", campaign=False)
    for name in ("verify-theorem", "verify-conjecture"):
        sp = ranged(name, "campaign over unit subsets")
        sp.add_argument("--rank-range", type=_n_range, help="half-open colex rank range lo:hi")
    sp = ranged("audit", "audit one supporting claim")
    sp.add_argument("--claim", choices=CLAIMS, required=True)

    sp = single("replay", "replay an argument on one instance")
    sp.add_argument("--proof", choices=("main", "lemma-eh"), required=True)
    sp.add_argument("--set", type=_literal, required=True, help="the set A")
    sp.add_argument("--b-set", type=_literal, help="the set B (lemma-eh)")
    return p


def _moduli(args) -> Iterable[int]:
    if args.n is not None:
        return [args.n]
    lo, hi = args.n_range
    return range(lo, hi + 1)


def _jobs(args) -> int:
    if args.jobs is not None:
        jobs = args.jobs
    else:
        env = os.environ.get(JOBS_ENV)
        try:
            jobs = int(env) if env else 1
        except ValueError:
            raise UsageError(f"{JOBS_ENV}={env!r} is not an integer") from None
    if jobs < 1:
        raise UsageError("--jobs must be >= 1")
    return jobs


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj) + "\n")


def _campaign_rows(args, run_one, out) -> int:
    if args.mode == "sampled" and (args.trials is None or args.trials < 1):
        raise UsageError("--mode sampled needs --trials >= 1")
    jobs = _jobs(args)
    writer = None
    if args.format == "csv":
        writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
    bad = False
    for n in _moduli(args):
        report = run_one(n, jobs)
        bad |= report.violation_count > 0
        if writer:
            row = {k: v for k, v in report.to_json().items() if k in CSV_FIELDS}
            row["mode"] = report.params.get("mode")
            writer.writerow(row)
        else:
            _emit(report.to_json(), out)
    return 1 if bad else 0


def _common(args, jobs) -> dict:
    return dict(
        mode=args.mode,
        trials=args.trials,
        seed=args.seed,
        jobs=jobs,
        allow_large=args.allow_large,
        max_witnesses=args.max_witnesses,
    )


def _dispatch(args, out) -> int:
    cmd = args.command
    if cmd in ("sums", "kfold", "complete", "replay"):
        a = ResidueSet(args.n, args.set)
    if cmd == "sums":
        pair = subset_sums(a)
        _emit({"n": args.n, "set": a.to_literal(), "s": list(pair.s), "s0": list(pair.s0),
               "size_s": len(pair.s), "size_s0": len(pair.s0)}, out)
        return 0
    if cmd == "kfold":
        res = k_fold_sums(a, args.k)
        _emit({"n": args.n, "set": a.to_literal(), "k": args.k, "result": list(res), "size": len(res)}, out)
        return 0
    if cmd == "complete":
        if not len(a):
            raise UsageError("--set must be nonempty")
        _emit({"n": args.n, "set": a.to_literal(), "complete": is_complete(a),
               "s": list(subset_sums(a).s), "subgroup": list(subgroup_generated(a))}, out)
        return 0
    if cmd == "lambda":
        b = ZnSet.from_iterable(args.n, args.set)
        if args.x is not None:
            _emit({"n": args.n, "set": b.to_literal(), "x": args.x % args.n,
                   "lambda": escape_count(b, args.x % args.n)}, out)
        else:
            _emit({"n": args.n, "set": b.to_literal(), "profile": escape_profile(b)}, out)
        return 0
    if cmd == "threshold":
        rows = []
        for n in _moduli(args):
            k, size = bounds.conjecture_params(n)
            rows.append({
                "n": n,
                "main_theorem": bounds.main_threshold(n) if n >= 5 else None,
                "olson": bounds.olson_threshold(n),
                "conjecture_k": k,
                "conjecture_size": size,
            })
        _rows(rows, args.format, out)
        return 0
    if cmd == "max-incomplete":
        rows = []
        for n in _moduli(args):
            size, witness = max_incomplete_size(n)
            rows.append({"n": n, "size": size, "witness": witness.to_literal()})
        _rows(rows, args.format, out)
        return 0
    if cmd == "verify-theorem":
        return _campaign_rows(
            args, lambda n, jobs: verify_theorem(n, rank_range=args.rank_range, **_common(args, jobs)), out
        )
    if cmd == "verify-conjecture":
        return _campaign_rows(
            args, lambda n, jobs: check_conjecture(n, rank_range=args.rank_range, **_common(args, jobs)), out
        )
    if cmd == "audit":
        return _campaign_rows(args, lambda n, jobs: run_audit(args.claim, n, **_common(args, jobs)), out)
    if cmd == "replay":
        if args.proof == "main":
            trace = replay_main_proof(args.n, a)
        else:
            if args.b_set is None:
                raise UsageError("--proof lemma-eh needs --b-set")
            trace = replay_lemma_eh(args.n, a, ZnSet.from_iterable(args.n, args.b_set))
        _emit(trace.to_json(), out)
        return 0
    raise UsageError(f"unknown command {cmd}")


def _rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        for r in rows:
            _emit(r, out)


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args, out)
    except UsageError as e:
        err.write(f"zncomplete: error: {e}\n")
        return 2
    except BudgetExceededError as e:
        err.write(f"zncomplete: budget: {e}\n")
        return 3
    except (ValueError, TypeError) as e:
        err.write(f"zncomplete: error: {e}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
