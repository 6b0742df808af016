"""Evaluation task construction for the three scenario shapes.

A problem record (one JSON object per line in a task file) carries:

    task_id             unique id, e.g. "toy/0"
    language            lowercase tag: python, javascript, java, go, cpp, rust
    prompt_parts        {entry_point, signature, declaration,
                         declaration_with_docstring}
    canonical_solution  reference completion (function body continuing the
                        declaration)
    buggy_solution      completion with a planted bug
    docstring           plain docstring text
    tests               executable check harness referencing the entry point
    bug_type            metadata label for the planted bug

Scenarios:

    fix-tests      instruction + buggy code + tests -> fixed code
    fix-docstring  instruction + buggy code with docstring (no tests) -> code
    explain        stage 1: describe code under a character budget;
                   stage 2 (build_explain_stage2): regenerate from the
                   description alone. The docstring itself is never shown,
                   and solution overlap is scrubbed from the description.
    synthesize     instruction embedding the docstring -> code

Code fields are stored without a trailing newline; builders join code blocks
with a single newline.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

__all__ = [
    "SCENARIOS",
    "TaskInstance",
    "MissingFieldError",
    "load_task_file",
    "build_task",
    "build_explain_stage2",
    "scrub_overlap",
    "enforce_char_limit",
    "postprocess_generation",
    "language_display_name",
    "default_stop_sequences",
]

SCENARIOS = ("fix-tests", "fix-docstring", "explain", "synthesize")

_LANGUAGE_NAMES = {
    "python": "Python",
    "javascript": "JavaScript",
    "java": "Java",
    "go": "Go",
    "cpp": "C++",
    "c++": "C++",
    "rust": "Rust",
}

# Fence labels accepted as "this language" when extracting code blocks.
_FENCE_ALIASES = {
    "python": {"python", "py", "python3"},
    "javascript": {"javascript", "js", "node"},
    "java": {"java"},
    "go": {"go", "golang"},
    "cpp": {"cpp", "c++", "cxx"},
    "c++": {"cpp", "c++", "cxx"},
    "rust": {"rust", "rs"},
}

_DEFAULT_STOPS = {
    "python": ("\ndef ", "\nclass ", "\nif __name__", "\nprint("),
    "javascript": ("\nfunction ", "\nconst ", "\nclass ", "\nconsole.log("),
    "java": ("\n    public static void main", "\npublic class "),
    "go": ("\nfunc ", "\npackage "),
    "cpp": ("\nint main(", "\n#include"),
    "rust": ("\nfn main(", "\npub fn main("),
}


class MissingFieldError(ValueError):
    def __init__(self, field: str, task_id: str = "") -> None:
        where = f" in problem {task_id!r}" if task_id else ""
        super().__init__(f"missing or empty field {field!r}{where}")
        self.field = field


@dataclass
class TaskInstance:
    task_id: str
    scenario: str
    language: str
    instruction: str
    context: str
    function_start: str
    canonical_solution: str
    docstring: str
    tests: str
    char_limit: int | None = None


def language_display_name(tag: str) -> str:
    return _LANGUAGE_NAMES.get(tag.lower(), tag)


def default_stop_sequences(language: str) -> tuple[str, ...]:
    return _DEFAULT_STOPS.get(language.lower(), ())


def load_task_file(path: str) -> list[dict]:
    problems = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                problems.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{line_no}: not valid JSON: {exc}") from exc
    return problems


def _field(problem: dict, name: str) -> str:
    value = problem.get(name)
    if not value:
        raise MissingFieldError(name, str(problem.get("task_id", "")))
    return value


def _part(problem: dict, name: str) -> str:
    parts = problem.get("prompt_parts")
    if not isinstance(parts, dict) or not parts.get(name):
        raise MissingFieldError(f"prompt_parts.{name}", str(problem.get("task_id", "")))
    return parts[name]


def build_task(scenario: str, problem: dict) -> TaskInstance:
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")
    task_id = _field(problem, "task_id")
    language = _field(problem, "language")
    lang_name = language_display_name(language)
    entry_point = _part(problem, "entry_point")
    declaration = _part(problem, "declaration")
    canonical = _field(problem, "canonical_solution")
    docstring = problem.get("docstring", "")
    tests = problem.get("tests", "")

    common = dict(
        task_id=task_id,
        scenario=scenario,
        language=language,
        canonical_solution=canonical,
        docstring=docstring,
        tests=tests,
    )

    if scenario == "fix-tests":
        if not tests:
            raise MissingFieldError("tests", task_id)
        buggy = _field(problem, "buggy_solution")
        return TaskInstance(
            instruction=f"Fix bugs in {entry_point}.",
            context=f"{declaration}\n{buggy}\n{tests}",
            function_start=declaration,
            **common,
        )

    if scenario == "fix-docstring":
        if not docstring:
            raise MissingFieldError("docstring", task_id)
        buggy = _field(problem, "buggy_solution")
        with_doc = _part(problem, "declaration_with_docstring")
        return TaskInstance(
            instruction=f"Fix bugs in {entry_point}.",
            context=f"{with_doc}\n{buggy}",
            function_start=with_doc,
            **common,
        )

    if scenario == "explain":
        if not docstring:
            raise MissingFieldError("docstring", task_id)
        limit = len(docstring)
        return TaskInstance(
            instruction=(
                "Provide a concise natural language description of the code"
                f" using at most {limit} characters."
            ),
            context=f"{declaration}\n{canonical}",
            function_start="",
            char_limit=limit,
            **common,
        )

    # synthesize
    if not tests:
        raise MissingFieldError("tests", task_id)
    if not docstring:
        raise MissingFieldError("docstring", task_id)
    signature = _part(problem, "signature")
    return TaskInstance(
        instruction=(
            f"Write a {lang_name} function `{signature}` to solve the following"
            f" problem:\n{docstring}"
        ),
        context="",
        function_start=_part(problem, "declaration_with_docstring"),
        **common,
    )


def build_explain_stage2(explanation: str, problem: dict) -> TaskInstance:
    """Second half of the explain chain: regenerate code from a description.

    The description must already be scrubbed and limit-enforced; it is used
    verbatim as the context. The function start is the declaration without
    the docstring, which is never shown at either stage.
    """
    task_id = _field(problem, "task_id")
    language = _field(problem, "language")
    if not problem.get("tests"):
        raise MissingFieldError("tests", task_id)
    return TaskInstance(
        task_id=task_id,
        scenario="synthesize",
        language=language,
        instruction=(
            f"Write functional code in {language_display_name(language)}"
            " according to the description."
        ),
        context=explanation,
        function_start=_part(problem, "declaration"),
        canonical_solution=_field(problem, "canonical_solution"),
        docstring=problem.get("docstring", ""),
        tests=problem["tests"],
    )


# --------------------------------------------------------------------------
# Explain-chain text hygiene
# --------------------------------------------------------------------------


def _longest_common_run(a: str, b: str) -> tuple[int, int]:
    """(start in a, length) of the longest substring of a that occurs in b.

    Rolling dynamic program over b per position; O(len(a)*len(b)) worst case,
    which is fine at explanation scale. Ties resolve to the earliest start in
    a, keeping the scrub deterministic.
    """
    best_start, best_len = 0, 0
    if not a or not b:
        return best_start, best_len
    prev = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        ai = a[i - 1]
        for j in range(1, len(b) + 1):
            if ai == b[j - 1]:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best_len:
                    best_len = cur[j]
                    best_start = i - cur[j]
        prev = cur
    return best_start, best_len


def scrub_overlap(explanation: str, solution: str, min_len: int = 20) -> str:
    """Remove every substring of length >= min_len shared with the solution.

    Longest shared run first, splicing without padding, repeated until no
    qualifying run remains. Deterministic; runs of min_len - 1 are untouched.
    """
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    text = explanation
    while True:
        start, length = _longest_common_run(text, solution)
        if length < min_len:
            return text
        text = text[:start] + text[start + length :]


def enforce_char_limit(explanation: str, limit: int) -> str:
    if limit < 0:
        raise ValueError("limit must be >= 0")
    return explanation[:limit]


# --------------------------------------------------------------------------
# Generation postprocessing
# --------------------------------------------------------------------------

_FENCE = re.compile(r"```([^\n`]*)\n(.*?)(?:```|\Z)", re.DOTALL)


def postprocess_generation(
    text: str, stop_sequences: tuple[str, ...] = (), language: str = ""
) -> str:
    """Truncate at the earliest stop sequence, then prefer the inner text of
    a code fence labeled for the task's language (or unlabeled) when present.

    Unfenced output is returned as-is after the stop cut: completions that
    continue a prompt are code already and must not be trimmed.
    """
    cut = len(text)
    for stop in stop_sequences:
        idx = text.find(stop)
        if idx != -1:
            cut = min(cut, idx)
    text = text[:cut]

    aliases = _FENCE_ALIASES.get(language.lower(), {language.lower()} if language else set())
    unlabeled = None
    for m in _FENCE.finditer(text):
        label = m.group(1).strip().lower()
        if label and label in aliases:
            return m.group(2).strip("\n")
        if not label and unlabeled is None:
            unlabeled = m.group(2)
    if unlabeled is not None:
        return unlabeled.strip("\n")
    return text
