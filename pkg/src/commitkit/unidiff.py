"""Unified diffs: generation, application, and the compactness comparison.

Output uses bare ``@@ -a,b +c,d @@`` hunks (no file-header lines); standard
patch tools apply such diffs when the target file is given explicitly. Hunks
carry three context lines by default and use the usual end-of-file marker
(``\\ No newline at end of file``) when a side lacks a trailing newline.

compactness_ratio quantifies how much shorter the numbered line-diff encoding
is than the unified encoding for the same change.
"""
from __future__ import annotations

import difflib
import re

from .linediff import compute_line_diff, default_width, serialize_line_diff

__all__ = [
    "UnifiedDiffError",
    "MalformedHunkError",
    "ContextMismatchError",
    "compute_unified_diff",
    "apply_unified_diff",
    "compactness_ratio",
]

NO_NEWLINE_MARKER = "\\ No newline at end of file"


class UnifiedDiffError(ValueError):
    """Base for unified-diff parse and apply failures."""


class MalformedHunkError(UnifiedDiffError):
    pass


class ContextMismatchError(UnifiedDiffError):
    def __init__(self, message: str, hunk_index: int) -> None:
        super().__init__(f"hunk {hunk_index}: {message}")
        self.hunk_index = hunk_index


def _split_keepends(text: str) -> list[str]:
    """Split on '\\n' keeping terminators; a final atom without '\\n' records
    a missing trailing newline."""
    if text == "":
        return []
    parts = text.split("\n")
    atoms = [part + "\n" for part in parts[:-1]]
    if parts[-1] != "":
        atoms.append(parts[-1])
    return atoms


def _format_range(start: int, length: int) -> str:
    # GNU convention: single-line ranges omit the length; empty ranges are
    # anchored on the line before the position.
    beginning = start + 1
    if length == 1:
        return str(beginning)
    if length == 0:
        beginning -= 1
    return f"{beginning},{length}"


def _emit(out: list[str], prefix: str, atom: str) -> None:
    if atom.endswith("\n"):
        out.append(prefix + atom)
    else:
        out.append(prefix + atom + "\n")
        out.append(NO_NEWLINE_MARKER + "\n")


def compute_unified_diff(before: str, after: str, context: int = 3) -> str:
    a = _split_keepends(before)
    b = _split_keepends(after)
    matcher = difflib.SequenceMatcher(None, a, b, autojunk=False)
    out: list[str] = []
    for group in matcher.get_grouped_opcodes(context):
        i1, i2 = group[0][1], group[-1][2]
        j1, j2 = group[0][3], group[-1][4]
        out.append(f"@@ -{_format_range(i1, i2 - i1)} +{_format_range(j1, j2 - j1)} @@\n")
        for tag, ai, aj, bi, bj in group:
            if tag == "equal":
                for atom in a[ai:aj]:
                    _emit(out, " ", atom)
                continue
            if tag in ("replace", "delete"):
                for atom in a[ai:aj]:
                    _emit(out, "-", atom)
            if tag in ("replace", "insert"):
                for atom in b[bi:bj]:
                    _emit(out, "+", atom)
    return "".join(out)


_HUNK_HEADER = re.compile(r"^@@ -(\d+)(?:,(\d+))? \+(\d+)(?:,(\d+))? @@")


def _parse_range(start_text: str, length_text: str | None) -> tuple[int, int]:
    """Header range to (0-based start index, length)."""
    start = int(start_text)
    length = 1 if length_text is None else int(length_text)
    if length == 0:
        return start, 0  # empty range anchors after the stated line
    return start - 1, length


def apply_unified_diff(before: str, diff_text: str) -> str:
    """Apply a unified diff produced by compute_unified_diff (or any diff in
    the same bare-hunk dialect) to ``before``."""
    if diff_text.strip() == "":
        return before

    lines = diff_text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    atoms = _split_keepends(before)
    out: list[str] = []
    a_pos = 0
    hunk_index = 0
    i = 0
    while i < len(lines):
        header = _HUNK_HEADER.match(lines[i])
        if header is None:
            raise MalformedHunkError(f"expected hunk header, got {lines[i]!r}")
        hunk_index += 1
        a_start, a_len = _parse_range(header.group(1), header.group(2))
        b_len = _parse_range(header.group(3), header.group(4))[1]
        i += 1

        # Collect the body, gluing no-newline markers onto their lines.
        body: list[tuple[str, str]] = []
        while i < len(lines) and not lines[i].startswith("@@"):
            line = lines[i]
            if line.startswith("\\"):
                if not body:
                    raise MalformedHunkError("no-newline marker before any hunk line")
                op, text = body[-1]
                if not text.endswith("\n"):
                    raise MalformedHunkError("doubled no-newline marker")
                body[-1] = (op, text[:-1])
            elif line[:1] in (" ", "-", "+"):
                body.append((line[:1], line[1:] + "\n"))
            else:
                raise MalformedHunkError(f"unexpected hunk line {line!r}")
            i += 1

        got_a = sum(1 for op, _ in body if op in (" ", "-"))
        got_b = sum(1 for op, _ in body if op in (" ", "+"))
        if got_a != a_len or got_b != b_len:
            raise MalformedHunkError(
                f"hunk {hunk_index} declares -{a_len}/+{b_len} lines, body has {got_a}/{got_b}"
            )
        if a_start < a_pos:
            raise MalformedHunkError(f"hunk {hunk_index} overlaps the previous hunk")
        if a_start > len(atoms):
            raise ContextMismatchError(
                f"hunk starts at line {a_start + 1}, source has {len(atoms)} lines",
                hunk_index,
            )

        out.extend(atoms[a_pos:a_start])
        a_pos = a_start
        for op, text in body:
            if op in (" ", "-"):
                if a_pos >= len(atoms):
                    raise ContextMismatchError("source exhausted mid-hunk", hunk_index)
                if atoms[a_pos] != text:
                    raise ContextMismatchError(
                        f"expected {text!r}, source has {atoms[a_pos]!r}", hunk_index
                    )
                a_pos += 1
                if op == " ":
                    out.append(text)
            else:
                out.append(text)

    out.extend(atoms[a_pos:])
    return "".join(out)


def compactness_ratio(before: str, after: str) -> float:
    """1 - len(line diff)/len(unified diff) for the same change.

    Positive values mean the numbered line-diff encoding is shorter. Raises
    ValueError when the texts do not differ (the unified diff is empty and the
    ratio is undefined).
    """
    unified = compute_unified_diff(before, after)
    if unified == "":
        raise ValueError("texts are identical; compactness ratio is undefined")
    line = serialize_line_diff(
        compute_line_diff(before, after), default_width(before, after)
    )
    return 1.0 - len(line) / len(unified)
