"""Prompt templates for code-editing models, rendered byte-exactly.

Templates are declarative pattern strings over four placeholders:
``{instruction}`` (required), ``{context}``, ``{function_start}``, and
``{filename}`` (required where it appears). When an optional part is empty it
is omitted together with the newline that would have preceded it; if the part
opens the template, the newline that follows it goes instead. That single
rule reproduces every registered format for every combination of present and
absent parts, so adding a template never needs bespoke whitespace code.

Registered ids:

``qa``                       Question/Answer framing
``instruct-response``        Instruction/Response sections, response on its own line
``instruct-response-inline`` same, but the response continues on the header line
``chat-markers``             chat-token framing (<|system|>/<|user|>/<|assistant|>)
``plain``                    context, instruction, function start
``plain-no-start``           context, instruction
``plain-start-hint``         plain plus an explicit "Start your code with:" line
``file-diff``                <NME>/<BEF>/<MSG>/<DFF> file-edit framing

Two fixed formats live outside the registry because their signatures differ:
the commit edit format (render_commit_format) and infix completion
(render_fim).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

__all__ = [
    "PromptParts",
    "UnknownTemplateError",
    "MissingPartError",
    "TEMPLATES",
    "render",
    "render_commit_format",
    "render_fim",
    "load_template_registry",
]


class UnknownTemplateError(KeyError):
    pass


class MissingPartError(ValueError):
    def __init__(self, part: str, template_id: str) -> None:
        super().__init__(f"template {template_id!r} requires a non-empty {part}")
        self.part = part


@dataclass
class PromptParts:
    instruction: str = ""
    context: str = ""
    function_start: str = ""
    filename: str = ""
    char_limit: int | None = None  # carried for explain tasks; not rendered
    prefix: str = ""  # infix completion only
    suffix: str = ""  # infix completion only


TEMPLATES: dict[str, str] = {
    "qa": "Question: {instruction}\n{context}\n\nAnswer:\n{function_start}",
    "instruct-response": (
        "Below is an instruction that describes a task."
        " Write a response that appropriately completes the request."
        "\n\n### Instruction:\n{instruction}\n{context}"
        "\n\n### Response:\n{function_start}"
    ),
    "instruct-response-inline": (
        "Below is an instruction that describes a task."
        " Write a response that appropriately completes the request."
        "\n\n### Instruction:\n{instruction}\n{context}"
        "\n\n### Response:{function_start}"
    ),
    "chat-markers": (
        "<|system|>\n<|end|>\n<|user|>\n{instruction}\n{context}<|end|>"
        "\n<|assistant|>\n{function_start}"
    ),
    "plain": "{context}\n{instruction}\n{function_start}",
    "plain-no-start": "{context}\n{instruction}",
    "plain-start-hint": "{context}\n{instruction}\nStart your code with:\n{function_start}",
    "file-diff": "<NME> {filename}\n<BEF> {context}\n<MSG> {instruction}\n<DFF>",
}

_REQUIRED = ("instruction", "filename")
_OPTIONAL = ("context", "function_start")

_PLACEHOLDER = re.compile(r"\{(instruction|context|function_start|filename)\}")


def _tokenize(pattern: str) -> list[tuple[str, str]]:
    """Pattern -> [("lit", text) | ("ph", name)] tokens."""
    tokens: list[tuple[str, str]] = []
    pos = 0
    for m in _PLACEHOLDER.finditer(pattern):
        if m.start() > pos:
            tokens.append(("lit", pattern[pos : m.start()]))
        tokens.append(("ph", m.group(1)))
        pos = m.end()
    if pos < len(pattern):
        tokens.append(("lit", pattern[pos:]))
    return tokens


def render(template_id: str, parts: PromptParts) -> str:
    try:
        pattern = TEMPLATES[template_id]
    except KeyError:
        raise UnknownTemplateError(
            f"unknown template {template_id!r}; available: {', '.join(sorted(TEMPLATES))}"
        ) from None

    values = {
        "instruction": parts.instruction,
        "context": parts.context,
        "function_start": parts.function_start,
        "filename": parts.filename,
    }
    tokens = _tokenize(pattern)

    for name in _REQUIRED:
        if any(tok == ("ph", name) for tok in tokens) and not values[name]:
            raise MissingPartError(name, template_id)

    # Drop empty optional parts along with one adjoining newline.
    i = 0
    while i < len(tokens):
        kind, value = tokens[i]
        if kind == "ph" and value in _OPTIONAL and not values[value]:
            del tokens[i]
            if i > 0 and tokens[i - 1][0] == "lit" and tokens[i - 1][1].endswith("\n"):
                tokens[i - 1] = ("lit", tokens[i - 1][1][:-1])
            elif i == 0 and tokens and tokens[0][0] == "lit" and tokens[0][1].startswith("\n"):
                tokens[0] = ("lit", tokens[0][1][1:])
            continue
        i += 1

    return "".join(values[v] if k == "ph" else v for k, v in tokens)


def render_commit_format(before: str, message: str, after: str | None = None) -> str:
    """Commit edit format: delimiters are plain text here; mapping them to
    special vocabulary items is a tokenizer concern.

    With ``after`` absent the string ends at the final delimiter, the form
    used to request a completion.
    """
    if not before:
        raise ValueError("before-code must be non-empty")
    if not message:
        raise ValueError("commit message must be non-empty")
    rendered = f"<commit_before>{before}<commit_msg>{message}<commit_after>"
    if after is not None:
        rendered += after
    return rendered


def render_fim(prefix: str, suffix: str) -> str:
    """Infix-completion prompt: the model fills the span between the markers."""
    return f"<fim_prefix>{prefix}<fim_suffix>{suffix}<fim_middle>"


def load_template_registry(path: str, merge: bool = True) -> dict[str, str]:
    """Load template patterns from a JSON file ({id: pattern}).

    Patterns may reference only the known placeholders. With merge=True the
    built-in registry is extended/overridden in place.
    """
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError("template registry must be a JSON object of id -> pattern")
    for template_id, pattern in raw.items():
        if not isinstance(pattern, str):
            raise ValueError(f"template {template_id!r} pattern must be a string")
        for m in re.finditer(r"\{(\w+)\}", pattern):
            if m.group(1) not in ("instruction", "context", "function_start", "filename"):
                raise ValueError(
                    f"template {template_id!r} uses unknown placeholder {{{m.group(1)}}}"
                )
    if merge:
        TEMPLATES.update(raw)
    return dict(raw)
