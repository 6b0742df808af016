"""Command-line front end.

Subcommands: curate, stats, diff, apply, prompt, eval. Exit codes are shared
across all of them:

    0  success
    1  data errors that still let the run complete (unparseable corpus
       lines, diffs that do not apply)
    2  configuration and registry errors (bad config keys, unknown
       templates/backends/runners, missing seed)

Every subcommand writes deterministic bytes for identical inputs, config,
and seed; reports carry no timestamps.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .backends import make_backend
from .filters import (
    ConfigError,
    FilterConfig,
    compute_word_stats,
    config_as_dict,
    config_from_dict,
    run_pipeline,
)
from .linediff import (
    DiffError,
    apply_line_diff,
    compute_line_diff,
    default_width,
    parse_line_diff,
    serialize_line_diff,
)
from .prompts import (
    MissingPartError,
    PromptParts,
    UnknownTemplateError,
    load_template_registry,
    render,
    render_commit_format,
    render_fim,
)
from .records import iter_corpus
from .runners import ToolchainMissingError, default_registry, load_runner_registry_file
from .scenario import ScenarioRunConfig, run_scenario
from .tasks import SCENARIOS, load_task_file
from .tokenizers import UnknownTokenizerError
from .unidiff import UnifiedDiffError, apply_unified_diff, compute_unified_diff

__all__ = ["main"]


def _load_filter_config(args: argparse.Namespace) -> FilterConfig:
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            config = config_from_dict(json.load(fh))
    else:
        config = FilterConfig()
    if getattr(args, "seed", None) is not None:
        config = dataclasses.replace(config, seed=args.seed)
    return config


def _write_report(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_curate(args: argparse.Namespace) -> int:
    config = _load_filter_config(args)
    if args.show_config:
        sys.stdout.write(json.dumps(config_as_dict(config), indent=2) + "\n")
        return 0
    if not args.input:
        print("curate: --input is required", file=sys.stderr)
        return 2
    with open(args.input, encoding="utf-8") as fh:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as out:
                report = run_pipeline(fh, config, args.stage, out)
        else:
            report = run_pipeline(fh, config, args.stage, sys.stdout)
    _write_report(args.report, report.as_dict())
    if report.parse_error_count:
        print(
            f"curate: {report.parse_error_count} unparseable line(s) skipped",
            file=sys.stderr,
        )
        return 1
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    parse_errors = 0
    records = []
    with open(args.input, encoding="utf-8") as fh:
        for _, item in iter_corpus(fh):
            if isinstance(item, Exception):
                parse_errors += 1
            else:
                records.append(item)
    stats = compute_word_stats(records)
    payload = {
        "record_count": len(records),
        "parse_error_count": parse_errors,
        "word_stats": {name: stat.as_dict() for name, stat in stats.items()},
    }
    _write_report(args.report, payload)
    return 1 if parse_errors else 0


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _cmd_diff(args: argparse.Namespace) -> int:
    before = _read(args.before)
    after = _read(args.after)
    if args.format == "line":
        diff = compute_line_diff(before, after)
        sys.stdout.write(serialize_line_diff(diff, default_width(before, after)))
    else:
        sys.stdout.write(compute_unified_diff(before, after, context=args.context))
    return 0


def _cmd_apply(args: argparse.Namespace) -> int:
    before = _read(args.before)
    diff_text = _read(args.diff)
    if args.format == "line":
        result = apply_line_diff(before, parse_line_diff(diff_text))
    else:
        result = apply_unified_diff(before, diff_text)
    sys.stdout.write(result)
    return 0


def _cmd_prompt(args: argparse.Namespace) -> int:
    with open(args.input, encoding="utf-8") as fh:
        payload = json.load(fh)
    if args.template_file:
        load_template_registry(args.template_file)
    if args.mode == "commit":
        text = render_commit_format(
            payload["before"], payload["message"], payload.get("after")
        )
    elif args.mode == "fim":
        text = render_fim(payload["prefix"], payload["suffix"])
    else:
        parts = PromptParts(**payload)
        text = render(args.template, parts)
    sys.stdout.write(text)
    return 0


def _parse_k(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part)
    except ValueError:
        raise ConfigError(f"--k expects comma-separated integers, got {text!r}")
    if not values:
        raise ConfigError("--k expects at least one value")
    return values


def _cmd_eval(args: argparse.Namespace) -> int:
    problems = load_task_file(args.input)
    backend = make_backend(args.backend)
    registry = load_runner_registry_file(args.runner) if args.runner else default_registry()
    cfg = ScenarioRunConfig(
        n=args.n,
        k_values=_parse_k(args.k),
        jobs=args.jobs,
        template=args.template,
    )
    report = run_scenario(problems, args.scenario, backend, registry, cfg)
    text = report.to_json()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commitkit",
        description="Commit-data curation, compact diffs, prompts, and execution-based scoring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curate", help="filter a corpus and write the kept records")
    p.add_argument("--input")
    p.add_argument("--output")
    p.add_argument("--config")
    p.add_argument("--stage", choices=("base", "ft"), default="base")
    p.add_argument("--seed", type=int)
    p.add_argument("--report")
    p.add_argument("--show-config", action="store_true")
    p.set_defaults(func=_cmd_curate)

    p = sub.add_parser("stats", help="word-count statistics over a corpus")
    p.add_argument("--input", required=True)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("diff", help="diff two files")
    p.add_argument("before")
    p.add_argument("after")
    p.add_argument("--format", choices=("line", "unified"), default="line")
    p.add_argument("--context", type=int, default=3)
    p.set_defaults(func=_cmd_diff)

    p = sub.add_parser("apply", help="apply a diff to a file")
    p.add_argument("before")
    p.add_argument("diff")
    p.add_argument("--format", choices=("line", "unified"), default="line")
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("prompt", help="render a prompt from a JSON parts file")
    p.add_argument("--input", required=True)
    p.add_argument("--template", default="qa")
    p.add_argument("--template-file")
    p.add_argument(
        "--mode", choices=("template", "commit", "fim"), default="template"
    )
    p.set_defaults(func=_cmd_prompt)

    p = sub.add_parser("eval", help="run a scenario over a task file")
    p.add_argument("--input", required=True)
    p.add_argument("--scenario", choices=SCENARIOS, required=True)
    p.add_argument("--backend", required=True)
    p.add_argument("--runner", help="runner registry JSON; defaults to built-ins")
    p.add_argument("--template", default="qa")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--k", default="1")
    p.add_argument("--jobs", type=int, default=4)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_eval)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except (
        ConfigError,
        UnknownTemplateError,
        UnknownTokenizerError,
        ToolchainMissingError,
        MissingPartError,
    ) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        code = 2
    except (KeyError, ValueError) as exc:
        # Registry lookups and config shape problems.
        if isinstance(exc, (DiffError, UnifiedDiffError)):
            print(f"{args.command}: {exc}", file=sys.stderr)
            code = 1
        else:
            print(f"{args.command}: {exc}", file=sys.stderr)
            code = 2
    except OSError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        code = 1
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
