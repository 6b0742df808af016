"""Commit-data curation and execution-based evaluation toolkit.

The pieces, bottom to top: line-delimited commit records (records), token
counting (tokenizers), the two-stage filter pipeline (filters), the compact
numbered line-diff codec (linediff) and a unified-diff codec (unidiff),
prompt templates (prompts), the pass@k estimator (passk), task construction
and generation postprocessing (tasks), generation backends (backends),
sandboxed program execution (runners), the scenario evaluation loop
(scenario), synthetic fixtures (synthetic), and the command line (cli).
"""
from .filters import FilterConfig, FilterDecision, FilterReport, run_pipeline
from .linediff import (
    LineDiff,
    LineDiffEntry,
    apply_line_diff,
    compute_line_diff,
    parse_line_diff,
    serialize_line_diff,
)
from .passk import EvalOutcome, aggregate, pass_at_k
from .prompts import PromptParts, render, render_commit_format, render_fim
from .records import CommitRecord, parse_record, serialize_record
from .scenario import EvalReport, ScenarioRunConfig, run_scenario
from .tasks import TaskInstance, build_task, scrub_overlap
from .unidiff import apply_unified_diff, compute_unified_diff

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CommitRecord",
    "parse_record",
    "serialize_record",
    "FilterConfig",
    "FilterDecision",
    "FilterReport",
    "run_pipeline",
    "LineDiff",
    "LineDiffEntry",
    "compute_line_diff",
    "serialize_line_diff",
    "parse_line_diff",
    "apply_line_diff",
    "compute_unified_diff",
    "apply_unified_diff",
    "PromptParts",
    "render",
    "render_commit_format",
    "render_fim",
    "EvalOutcome",
    "pass_at_k",
    "aggregate",
    "TaskInstance",
    "build_task",
    "scrub_overlap",
    "ScenarioRunConfig",
    "EvalReport",
    "run_scenario",
]
