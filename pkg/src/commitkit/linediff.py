"""Compact numbered line diffs.

The serialized form lists only changed lines, one entry per line:

    entry := sign SP padded-number SP content NL
    sign  := '-' | '+'

Removal numbers index into the source text, addition numbers into the target
text; both increase strictly across a diff. Entries are grouped into hunks
(touching line ranges) with removals before additions, so a 1:1 replacement
renders as a -/+ pair sharing one number:

    -  7                 distance = elem - elem2
    +  7                 distance = abs(elem - elem2)

Line numbers are right-aligned; the conventional width is the digit count of
the longer text (see default_width). A final line starting with a backslash
marks that trailing-newline presence differs between source and target; it is
the only non-entry form in the grammar and keeps roundtrips exact.

compute_line_diff produces a shortest edit script (Myers' algorithm), so the
diff never mentions an unchanged line and the entry count is minimal for
insert/delete scripts at line granularity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "LineDiffEntry",
    "LineDiff",
    "NumberedText",
    "DiffError",
    "DiffSyntaxError",
    "OrderingViolationError",
    "RemovalMismatchError",
    "InconsistentDiffError",
    "EOL_MARKER",
    "number_lines",
    "default_width",
    "compute_line_diff",
    "serialize_line_diff",
    "parse_line_diff",
    "apply_line_diff",
]

EOL_MARKER = "\\ trailing newline changed"


class DiffError(ValueError):
    """Base for every parse/apply failure of the numbered line format."""


class DiffSyntaxError(DiffError):
    def __init__(self, message: str, line_index: int) -> None:
        super().__init__(f"line {line_index}: {message}")
        self.line_index = line_index


class OrderingViolationError(DiffError):
    pass


class RemovalMismatchError(DiffError):
    pass


class InconsistentDiffError(DiffError):
    pass


@dataclass(frozen=True)
class LineDiffEntry:
    sign: str  # '-' removes a source line, '+' adds a target line
    line_number: int
    content: str

    def __post_init__(self) -> None:
        if self.sign not in ("-", "+"):
            raise ValueError(f"sign must be '-' or '+', got {self.sign!r}")
        if self.line_number < 1:
            raise ValueError("line numbers are 1-based")
        if "\n" in self.content:
            raise ValueError("entry content cannot contain a newline")


@dataclass(frozen=True)
class LineDiff:
    entries: tuple[LineDiffEntry, ...] = ()
    # True when source and target disagree about a trailing final newline.
    eol_change: bool = False

    def validate(self) -> None:
        last = {"-": 0, "+": 0}
        for entry in self.entries:
            if entry.line_number <= last[entry.sign]:
                raise OrderingViolationError(
                    f"{entry.sign} line numbers must strictly increase "
                    f"(saw {entry.line_number} after {last[entry.sign]})"
                )
            last[entry.sign] = entry.line_number


@dataclass(frozen=True)
class NumberedText:
    lines: tuple[tuple[int, str], ...]
    width: int

    def render(self) -> str:
        return "".join(f"{n:>{self.width}} {content}\n" for n, content in self.lines)


def _split_lines(text: str) -> tuple[list[str], bool]:
    """Split on newlines; return (lines, has-trailing-newline).

    The empty text has zero lines and canonically "has" the trailing newline,
    so "" and adding nothing stay fixpoints of the roundtrip.
    """
    if text == "":
        return [], True
    parts = text.split("\n")
    if parts[-1] == "":
        return parts[:-1], True
    return parts, False


def _join_lines(lines: list[str], trailing: bool) -> str:
    if not lines:
        return ""
    return "\n".join(lines) + ("\n" if trailing else "")


def number_lines(code: str) -> NumberedText:
    lines, _ = _split_lines(code)
    width = len(str(len(lines))) if lines else 1
    return NumberedText(
        lines=tuple((i, content) for i, content in enumerate(lines, start=1)),
        width=width,
    )


def default_width(before: str, after: str) -> int:
    """Digit count of the longer text's line count (minimum 1)."""
    n = max(len(_split_lines(before)[0]), len(_split_lines(after)[0]))
    return len(str(n)) if n else 1


# --------------------------------------------------------------------------
# Myers shortest edit script
# --------------------------------------------------------------------------


def _myers_backtrack(a: list[str], b: list[str]) -> list[tuple[str, int, int]]:
    """Return a minimal edit script as ('del', i, _) / ('ins', i, j) ops.

    'del' removes a[i]; 'ins' inserts b[j] after a-position i. Classic greedy
    forward search over d (script length) and diagonal k, with the trace kept
    per round for backtracking.
    """
    n, m = len(a), len(b)
    max_d = n + m
    # v[k] = furthest x on diagonal k (k = x - y), offset by max_d.
    v = [0] * (2 * max_d + 2)
    trace: list[list[int]] = []
    found = False
    for d in range(max_d + 1):
        trace.append(v.copy())
        for k in range(-d, d + 1, 2):
            if k == -d or (k != d and v[k - 1 + max_d] < v[k + 1 + max_d]):
                x = v[k + 1 + max_d]  # move down: insertion
            else:
                x = v[k - 1 + max_d] + 1  # move right: deletion
            y = x - k
            while x < n and y < m and a[x] == b[y]:
                x += 1
                y += 1
            v[k + max_d] = x
            if x >= n and y >= m:
                found = True
                break
        if found:
            break

    # Backtrack from (n, m) through the recorded rounds.
    ops: list[tuple[str, int, int]] = []
    x, y = n, m
    for d in range(len(trace) - 1, 0, -1):
        prev = trace[d]
        k = x - y
        if k == -d or (k != d and prev[k - 1 + max_d] < prev[k + 1 + max_d]):
            prev_k = k + 1  # came via insertion
        else:
            prev_k = k - 1  # came via deletion
        prev_x = prev[prev_k + max_d]
        prev_y = prev_x - prev_k
        while x > prev_x and y > prev_y:  # snake: matched lines
            x -= 1
            y -= 1
        if prev_k == k + 1:
            y -= 1
            ops.append(("ins", x, y))
        else:
            x -= 1
            ops.append(("del", x, y))
    ops.reverse()
    return ops


def compute_line_diff(before: str, after: str) -> LineDiff:
    """Minimal line-level diff from before to after.

    apply_line_diff(before, result) == after for every text pair, including
    pairs that differ only in final-newline presence.
    """
    a, a_trailing = _split_lines(before)
    b, b_trailing = _split_lines(after)
    entries: list[LineDiffEntry] = []
    if a != b:
        ops = _myers_backtrack(a, b)
        # Group ops into hunks of touching positions, removals first.
        removals: list[LineDiffEntry] = []
        additions: list[LineDiffEntry] = []
        for op, i, j in ops:
            if op == "del":
                removals.append(LineDiffEntry("-", i + 1, a[i]))
            else:
                additions.append(LineDiffEntry("+", j + 1, b[j]))
        entries = _group_hunks(removals, additions)
    return LineDiff(entries=tuple(entries), eol_change=a_trailing != b_trailing)


def _group_hunks(
    removals: list[LineDiffEntry], additions: list[LineDiffEntry]
) -> list[LineDiffEntry]:
    """Interleave removal/addition runs so touching ranges form one hunk with
    removals first, ordered by line number."""
    entries: list[LineDiffEntry] = []
    ri = ai = 0
    while ri < len(removals) or ai < len(additions):
        # Start a hunk at the smallest pending line number.
        if ai >= len(additions):
            take_removal = True
        elif ri >= len(removals):
            take_removal = False
        else:
            take_removal = removals[ri].line_number <= additions[ai].line_number
        hunk_removals: list[LineDiffEntry] = []
        hunk_additions: list[LineDiffEntry] = []
        cursor = (removals[ri] if take_removal else additions[ai]).line_number
        while True:
            progressed = False
            while ri < len(removals) and removals[ri].line_number <= cursor + 1:
                hunk_removals.append(removals[ri])
                cursor = max(cursor, removals[ri].line_number)
                ri += 1
                progressed = True
            while ai < len(additions) and additions[ai].line_number <= cursor + 1:
                hunk_additions.append(additions[ai])
                cursor = max(cursor, additions[ai].line_number)
                ai += 1
                progressed = True
            if not progressed:
                break
        entries.extend(hunk_removals)
        entries.extend(hunk_additions)
    return entries


# --------------------------------------------------------------------------
# Serialization
# --------------------------------------------------------------------------

_ENTRY = re.compile(r"^([+-]) ( *)(\d+)(?: (.*))?$")


def serialize_line_diff(diff: LineDiff, width: int) -> str:
    diff.validate()
    widest = max((len(str(e.line_number)) for e in diff.entries), default=1)
    if width < widest:
        raise ValueError(f"width {width} cannot hold a {widest}-digit line number")
    out = [f"{e.sign} {e.line_number:>{width}} {e.content}\n" for e in diff.entries]
    if diff.eol_change:
        out.append(EOL_MARKER + "\n")
    return "".join(out)


def parse_line_diff(text: str) -> LineDiff:
    if text == "":
        return LineDiff()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    entries: list[LineDiffEntry] = []
    eol_change = False
    for idx, line in enumerate(lines, start=1):
        if line.startswith("\\"):
            if idx != len(lines):
                raise DiffSyntaxError("end-of-file marker must be the last line", idx)
            eol_change = True
            continue
        m = _ENTRY.match(line)
        if m is None:
            raise DiffSyntaxError(f"not a diff entry: {line!r}", idx)
        sign, _pad, number, content = m.groups()
        entries.append(LineDiffEntry(sign, int(number), content or ""))
    diff = LineDiff(entries=tuple(entries), eol_change=eol_change)
    diff.validate()
    return diff


# --------------------------------------------------------------------------
# Application
# --------------------------------------------------------------------------


def apply_line_diff(before: str, diff: LineDiff) -> str:
    """Apply a diff: removals are checked against the source text, additions
    land at their stated target line numbers, surviving source lines fill the
    remaining positions in order."""
    try:
        diff.validate()
    except OrderingViolationError as exc:
        raise InconsistentDiffError(str(exc)) from exc

    lines, trailing = _split_lines(before)

    removed_at: set[int] = set()
    for entry in diff.entries:
        if entry.sign != "-":
            continue
        if entry.line_number > len(lines):
            raise RemovalMismatchError(
                f"removal at line {entry.line_number} but source has {len(lines)} lines"
            )
        actual = lines[entry.line_number - 1]
        if actual != entry.content:
            raise RemovalMismatchError(
                f"removal at line {entry.line_number} expected {entry.content!r}, "
                f"source has {actual!r}"
            )
        removed_at.add(entry.line_number)

    survivors = [line for i, line in enumerate(lines, start=1) if i not in removed_at]
    additions = {e.line_number: e.content for e in diff.entries if e.sign == "+"}
    total = len(survivors) + len(additions)
    for number in additions:
        if number > total:
            raise InconsistentDiffError(
                f"addition at line {number} cannot be placed in a {total}-line result"
            )

    result: list[str] = []
    survivor_iter = iter(survivors)
    for position in range(1, total + 1):
        if position in additions:
            result.append(additions[position])
        else:
            result.append(next(survivor_iter))

    trailing_after = trailing != diff.eol_change  # XOR: marker flips presence
    return _join_lines(result, trailing_after)
