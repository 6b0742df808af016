#!/usr/bin/env python3
"""Generate a labeled synthetic commit corpus and verify the filter pipeline on it.

Writes the corpus as JSON lines, runs the full two-stage filter chain over it,
and checks the observed per-rule rejection counts against the labels baked in
at generation time. Exits nonzero on any mismatch.
"""
from __future__ import annotations

import argparse
import io
import sys

from commitkit.filters import run_pipeline
from commitkit.synthetic import make_labeled_corpus


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=1000, help="records to generate")
    parser.add_argument("--seed", type=int, default=20_240_817, help="corpus RNG seed")
    parser.add_argument(
        "--output", default="synthetic_corpus.jsonl", help="where to write the records"
    )
    args = parser.parse_args(argv)

    corpus = make_labeled_corpus(count=args.count, seed=args.seed)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.writelines(corpus.lines)
    print(f"wrote {len(corpus.lines)} records to {args.output}")

    kept_sink = io.StringIO()
    report = run_pipeline(iter(corpus.lines), corpus.config, "ft", kept_sink)
    expected = corpus.expected_counts()
    observed = {r: c for r, c in report.per_rule_reject_counts.items() if c}

    width = max(len(rule) for rule in expected) if expected else 0
    for rule in sorted(expected):
        print(f"  {rule:<{width}}  expected {expected[rule]:4d}  observed {observed.get(rule, 0):4d}")
    print(f"kept {report.kept_count} of {args.count}")

    if observed != dict(expected):
        print("MISMATCH between labels and pipeline", file=sys.stderr)
        return 1
    if kept_sink.getvalue() != "".join(corpus.expected_kept_lines()):
        print("MISMATCH in kept record bytes", file=sys.stderr)
        return 1
    print("pipeline agrees with labels")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
