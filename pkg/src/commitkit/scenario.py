"""End-to-end scenario evaluation: prompt, generate, execute, score.

The explain scenario is a two-stage chain. Stage one asks for a natural
language description of the reference code under a character budget; the
description is scrubbed of long verbatim overlaps with the reference
solution and clipped to the budget. Stage two asks for code given only that
description (the original docstring is never shown), and the regenerated
code is what gets executed. One stage-two completion is drawn per stage-one
sample, so n descriptions yield n scored programs.

Reports are plain data with a stable field order and no timestamps, so a
deterministic backend reproduces a byte-identical report.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .backends import Backend, DecodingConfig, GenerationBatch, GenerationRequest
from .passk import EvalOutcome, aggregate, pass_at_k
from .prompts import PromptParts, render
from .runners import RunnerRegistry, assemble_program, run_candidate
from .tasks import (
    TaskInstance,
    build_explain_stage2,
    build_task,
    default_stop_sequences,
    enforce_char_limit,
    postprocess_generation,
    scrub_overlap,
)

__all__ = [
    "ScenarioRunConfig",
    "TaskResult",
    "EvalReport",
    "run_scenario",
]

MIN_OVERLAP_RUN = 20


@dataclass(frozen=True)
class ScenarioRunConfig:
    n: int = 1
    k_values: tuple[int, ...] = (1,)
    jobs: int = 4
    template: str = "qa"
    decoding: DecodingConfig = field(default_factory=DecodingConfig)
    stop_sequences: tuple[str, ...] | None = None  # None = per-language default
    min_overlap: int = MIN_OVERLAP_RUN

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.k_values:
            raise ValueError("at least one k value required")
        for k in self.k_values:
            if not 1 <= k <= self.n:
                raise ValueError(f"k={k} outside 1..n={self.n}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


@dataclass
class TaskResult:
    task_id: str
    n: int
    c: int
    statuses: list[str]
    empty_explanations: int = 0

    def outcome(self) -> EvalOutcome:
        return EvalOutcome(task_id=self.task_id, n=self.n, c=self.c)


@dataclass
class EvalReport:
    scenario: str
    n: int
    k_values: tuple[int, ...]
    results: list[TaskResult]
    aggregates: dict[str, float]

    def as_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "n": self.n,
            "k": list(self.k_values),
            "aggregates": {key: self.aggregates[key] for key in sorted(self.aggregates)},
            "tasks": [
                {
                    "task_id": r.task_id,
                    "n": r.n,
                    "c": r.c,
                    "pass@1": pass_at_k(r.n, r.c, 1),
                    "statuses": r.statuses,
                    "empty_explanations": r.empty_explanations,
                }
                for r in self.results
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False) + "\n"


def _render_prompt(task: TaskInstance, template: str) -> str:
    parts = PromptParts(
        instruction=task.instruction,
        context=task.context,
        function_start=task.function_start,
    )
    return render(template, parts)


def _stops(task: TaskInstance, cfg: ScenarioRunConfig) -> tuple[str, ...]:
    if cfg.stop_sequences is not None:
        return cfg.stop_sequences
    return default_stop_sequences(task.language)


def _generate(backend: Backend, task: TaskInstance, prompt: str, n: int, cfg: ScenarioRunConfig) -> list[str]:
    samples = backend(GenerationRequest(task=task, prompt=prompt, n=n, decoding=cfg.decoding))
    # The batch type enforces the "exactly n samples" contract on any backend.
    return GenerationBatch(task.task_id, list(samples), n, cfg.decoding).samples


@dataclass
class _PreparedTask:
    task_id: str
    programs: list[str | None]  # None = sample already failed before execution
    language: str
    empty_explanations: int = 0


def _prepare_direct(
    problem: dict, scenario: str, backend: Backend, cfg: ScenarioRunConfig
) -> _PreparedTask:
    task = build_task(scenario, problem)
    prompt = _render_prompt(task, cfg.template)
    samples = _generate(backend, task, prompt, cfg.n, cfg)
    stops = _stops(task, cfg)
    programs: list[str | None] = []
    for sample in samples:
        try:
            body = postprocess_generation(sample, stops, task.language)
            programs.append(assemble_program(scenario, body, task))
        except Exception:
            programs.append(None)
    return _PreparedTask(task.task_id, programs, task.language)


def _prepare_explain(problem: dict, backend: Backend, cfg: ScenarioRunConfig) -> _PreparedTask:
    stage1 = build_task("explain", problem)
    prompt = _render_prompt(stage1, cfg.template)
    descriptions = _generate(backend, stage1, prompt, cfg.n, cfg)
    stops = _stops(stage1, cfg)
    programs: list[str | None] = []
    empty = 0
    for raw in descriptions:
        try:
            text = postprocess_generation(raw, stops, "")
            text = scrub_overlap(text, stage1.canonical_solution, cfg.min_overlap)
            if stage1.char_limit is not None:
                text = enforce_char_limit(text, stage1.char_limit)
            if not text.strip():
                empty += 1
            stage2 = build_explain_stage2(text, problem)
            stage2_prompt = _render_prompt(stage2, cfg.template)
            completion = _generate(backend, stage2, stage2_prompt, 1, cfg)[0]
            body = postprocess_generation(completion, _stops(stage2, cfg), stage2.language)
            programs.append(assemble_program("synthesize", body, stage2))
        except Exception:
            programs.append(None)
    return _PreparedTask(stage1.task_id, programs, stage1.language, empty)


def run_scenario(
    problems: list[dict],
    scenario: str,
    backend: Backend,
    runners: RunnerRegistry,
    cfg: ScenarioRunConfig,
) -> EvalReport:
    """Score every problem under one scenario.

    Generation and chaining happen serially per task (backends may hold
    sequential state); candidate executions fan out across a thread pool
    bounded by cfg.jobs. A failure anywhere in one sample's pipeline marks
    that sample non-passing without stopping the run. Missing runners are a
    configuration error and do abort.
    """
    prepared: list[_PreparedTask] = []
    for problem in problems:
        try:
            if scenario == "explain":
                prepared.append(_prepare_explain(problem, backend, cfg))
            else:
                prepared.append(_prepare_direct(problem, scenario, backend, cfg))
        except Exception:
            task_id = str(problem.get("task_id", "?"))
            prepared.append(_PreparedTask(task_id, [None] * cfg.n, ""))

    for item in prepared:
        if item.language:
            runners.get(item.language)  # raise before spending any execution time

    jobs: list[tuple[int, int, str]] = []
    for t_index, item in enumerate(prepared):
        for s_index, program in enumerate(item.programs):
            if program is not None:
                jobs.append((t_index, s_index, program))

    statuses: dict[tuple[int, int], str] = {}
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        futures = {
            pool.submit(
                run_candidate, program, runners.get(prepared[t_index].language)
            ): (t_index, s_index)
            for t_index, s_index, program in jobs
        }
        for future, key in futures.items():
            try:
                statuses[key] = future.result().status
            except Exception:
                statuses[key] = "runtime-error"

    results: list[TaskResult] = []
    for t_index, item in enumerate(prepared):
        per_sample = [
            statuses.get((t_index, s_index), "error")
            for s_index in range(len(item.programs))
        ]
        c = sum(1 for status in per_sample if status == "pass")
        results.append(
            TaskResult(
                task_id=item.task_id,
                n=cfg.n,
                c=c,
                statuses=per_sample,
                empty_explanations=item.empty_explanations,
            )
        )

    outcomes = [r.outcome() for r in results]
    aggregates = {f"pass@{k}": aggregate(outcomes, k) for k in cfg.k_values}
    return EvalReport(
        scenario=scenario,
        n=cfg.n,
        k_values=cfg.k_values,
        results=results,
        aggregates=aggregates,
    )
