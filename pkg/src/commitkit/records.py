"""Commit record model and line-delimited JSON corpus codec.

A corpus is UTF-8 text, one JSON object per line. Known keys:

    commit, subject, message, old_contents, new_contents,
    old_file, new_file, lang, license, repos, author

``subject`` is the first line of the commit message and ``message`` the rest.
Some corpora store only a combined ``message`` blob; in that case the subject
is everything before the first line break and the body is the remainder with
leading blank lines stripped. Unknown keys are carried through untouched in
``CommitRecord.extra`` so that a filter pass never destroys sidecar data.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

__all__ = [
    "CommitRecord",
    "MalformedRecordError",
    "parse_record",
    "serialize_record",
    "iter_corpus",
]

# Corpus key -> CommitRecord attribute, in canonical serialization order.
_KEY_TO_ATTR = (
    ("commit", "commit_id"),
    ("subject", "subject"),
    ("message", "body"),
    ("old_contents", "old_contents"),
    ("new_contents", "new_contents"),
    ("old_file", "old_path"),
    ("new_file", "new_path"),
    ("lang", "language"),
    ("license", "license"),
    ("repos", "repo"),
    ("author", "author"),
)

_KNOWN_KEYS = frozenset(k for k, _ in _KEY_TO_ATTR)

# Everything Python considers a line boundary; a subject must contain none.
_LINE_BREAK = re.compile(r"[\n\r\v\f\x1c\x1d\x1e\x85  ]")


class MalformedRecordError(ValueError):
    """A corpus line that cannot become a CommitRecord.

    ``key`` names the offending corpus key when one can be identified.
    """

    def __init__(self, message: str, key: str | None = None) -> None:
        super().__init__(message)
        self.key = key


@dataclass
class CommitRecord:
    commit_id: str = ""
    subject: str = ""
    body: str = ""
    old_contents: str = ""
    new_contents: str = ""
    old_path: str = ""
    new_path: str = ""
    language: str = ""
    license: str = ""
    repo: str = ""
    author: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        """Raise ValueError if the record violates its structural rules."""
        if not self.old_path:
            raise ValueError("old_path must be non-empty")
        if not self.new_path:
            raise ValueError("new_path must be non-empty")
        if _LINE_BREAK.search(self.subject):
            raise ValueError("subject must not contain line breaks")


def _split_message_blob(blob: str) -> tuple[str, str]:
    """Split a combined message into (subject, body).

    The subject is the text before the first line break; the body is the rest
    with leading blank lines removed.
    """
    m = _LINE_BREAK.search(blob)
    if m is None:
        return blob, ""
    return blob[: m.start()], blob[m.end() :].lstrip("\r\n")


def parse_record(line: str | bytes) -> CommitRecord:
    """Parse one corpus line. Total: any input yields a record or a
    MalformedRecordError, never an unstructured crash."""
    if isinstance(line, bytes):
        try:
            line = line.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedRecordError(f"line is not valid UTF-8: {exc}") from exc
    try:
        obj = json.loads(line)
    except (json.JSONDecodeError, ValueError) as exc:
        raise MalformedRecordError(f"line is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedRecordError("line is not a JSON object")

    values: dict[str, str] = {}
    for key, attr in _KEY_TO_ATTR:
        raw = obj.get(key)
        if raw is None:
            values[attr] = ""
        elif isinstance(raw, str):
            values[attr] = raw
        else:
            raise MalformedRecordError(
                f"key {key!r} must be a string, got {type(raw).__name__}", key=key
            )

    if "subject" in obj and obj["subject"] is not None:
        if _LINE_BREAK.search(values["subject"]):
            raise MalformedRecordError("subject contains a line break", key="subject")
    elif values["body"]:
        # Only a combined message blob was provided; split it.
        subject, body = _split_message_blob(values["body"])
        values["subject"], values["body"] = subject, body

    for key in ("old_file", "new_file"):
        attr = "old_path" if key == "old_file" else "new_path"
        if not values[attr]:
            raise MalformedRecordError(f"key {key!r} is missing or empty", key=key)

    extra = {k: v for k, v in obj.items() if k not in _KNOWN_KEYS}
    return CommitRecord(**values, extra=extra)


def serialize_record(record: CommitRecord) -> str:
    """Render a record as one corpus line (no trailing newline).

    Keys appear in canonical order, then any extra keys in their stored order;
    parse_record(serialize_record(r)) == r for every valid record.
    """
    record.validate()
    obj: dict[str, Any] = {}
    for key, attr in _KEY_TO_ATTR:
        obj[key] = getattr(record, attr)
    for key, value in record.extra.items():
        if key in _KNOWN_KEYS:
            raise ValueError(f"extra key {key!r} collides with a known key")
        obj[key] = value
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def iter_corpus(lines: Iterable[str | bytes]) -> Iterator[tuple[int, CommitRecord | MalformedRecordError]]:
    """Yield (1-based line number, record-or-error) for each input line."""
    for i, line in enumerate(lines, start=1):
        try:
            yield i, parse_record(line)
        except MalformedRecordError as exc:
            yield i, exc
