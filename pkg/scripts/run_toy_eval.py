#!/usr/bin/env python3
"""Run the execution-based eval on the built-in toy problems with a stub backend.

Useful as a smoke test of the whole scenario pipeline (prompting, generation,
sandboxed runs, pass@k scoring) without any model in the loop. The oracle stub
should score pass@1 = 1.0 on every scenario; the failing stub should score 0.0.
"""
from __future__ import annotations

import argparse

from commitkit.backends import make_backend
from commitkit.runners import default_registry
from commitkit.scenario import ScenarioRunConfig, run_scenario
from commitkit.synthetic import TOY_PROBLEMS

SCENARIOS = ("fix-tests", "fix-docstring", "explain", "synthesize")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--backend", default="oracle", help="backend spec, e.g. oracle or failing"
    )
    parser.add_argument(
        "--scenario", choices=SCENARIOS, action="append", dest="scenarios",
        help="scenario to run (repeatable; default: all)",
    )
    parser.add_argument("--n", type=int, default=1, help="samples per task")
    parser.add_argument(
        "--k", type=int, action="append", dest="k_values", help="k for pass@k (repeatable)"
    )
    parser.add_argument("--jobs", type=int, default=4, help="parallel sandbox runs")
    args = parser.parse_args(argv)

    backend = make_backend(args.backend)
    registry = default_registry()
    config = ScenarioRunConfig(
        n=args.n, k_values=tuple(args.k_values or [1]), jobs=args.jobs
    )
    for scenario in args.scenarios or SCENARIOS:
        report = run_scenario(TOY_PROBLEMS, scenario, backend, registry, config)
        print(report.to_json(), end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
