from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commitkit.linediff import (
    EOL_MARKER,
    DiffSyntaxError,
    InconsistentDiffError,
    LineDiff,
    LineDiffEntry,
    OrderingViolationError,
    RemovalMismatchError,
    apply_line_diff,
    compute_line_diff,
    default_width,
    number_lines,
    parse_line_diff,
    serialize_line_diff,
)

DATA = Path(__file__).parent / "data"

BUGGY = (DATA / "has_close_elements_before.py").read_text()
FIXED = (DATA / "has_close_elements_after.py").read_text()

FIXED_SERIALIZED = (
    "-  7                 distance = elem - elem2\n"
    "+  7                 distance = abs(elem - elem2)\n"
)

# A model-written diff against a JavaScript nesting-depth function: two 1:1
# replacements followed by a four-line block rewritten as ten lines.
JS_DIFF = """\
-  3     let depth = 0, max_depth = 0;
+  3     let depth = 0, max_depth = 1;
- 12     return max_depth;
+ 12     return max_depth - 1;
- 14   return paren_string.split(' ')
- 15           .filter(x => x != '')
- 16           .map(x => parseParenGroup(x));
- 17 }
+ 14   let paren_list = paren_string.split(' ');
+ 15   let nested_parens = paren_list.map(x => parseParenGroup(x));
+ 16   return nested_parens.reduce((prev, curr) => {
+ 17     if (prev == 0) {
+ 18       return curr;
+ 19     } else {
+ 20       return curr - 1;
+ 21     }
+ 22   });
+ 23 }
"""


def lcs_length(a: list[str], b: list[str]) -> int:
    prev = [0] * (len(b) + 1)
    for x in a:
        curr = [0]
        for j, y in enumerate(b, start=1):
            curr.append(prev[j - 1] + 1 if x == y else max(prev[j], curr[j - 1]))
        prev = curr
    return prev[-1]


def split(text: str) -> list[str]:
    if not text:
        return []
    lines = text.split("\n")
    return lines[:-1] if lines[-1] == "" else lines


lines_strategy = st.lists(
    st.sampled_from(["alpha", "beta", "gamma", "delta", "", "alpha"]), max_size=10
)
texts = st.builds(
    lambda lines, trailing: "\n".join(lines) + ("\n" if lines and trailing else ""),
    lines_strategy,
    st.booleans(),
)


# -------------------------------------------------------------------------
# compute_line_diff
# -------------------------------------------------------------------------


def test_identical_texts_give_empty_diff():
    diff = compute_line_diff(BUGGY, BUGGY)
    assert diff == LineDiff()


def test_single_line_replacement_is_one_hunk():
    diff = compute_line_diff(BUGGY, FIXED)
    assert diff.entries == (
        LineDiffEntry("-", 7, "                distance = elem - elem2"),
        LineDiffEntry("+", 7, "                distance = abs(elem - elem2)"),
    )
    assert not diff.eol_change


def test_insertion_numbers_index_the_target_text():
    diff = compute_line_diff("a\nb\n", "a\nx\nb\n")
    assert diff.entries == (LineDiffEntry("+", 2, "x"),)


def test_pure_move_is_two_entries():
    diff = compute_line_diff("a\nb\nc\n", "c\na\nb\n")
    assert diff.entries == (
        LineDiffEntry("+", 1, "c"),
        LineDiffEntry("-", 3, "c"),
    ) or diff.entries == (
        LineDiffEntry("-", 3, "c"),
        LineDiffEntry("+", 1, "c"),
    )
    assert apply_line_diff("a\nb\nc\n", diff) == "c\na\nb\n"


def test_trailing_newline_only_change_sets_marker():
    diff = compute_line_diff("a\n", "a")
    assert diff.entries == ()
    assert diff.eol_change
    assert apply_line_diff("a\n", diff) == "a"


def test_random_single_line_edits_touch_one_line():
    rng = random.Random(7)
    for _ in range(50):
        lines = [f"line {i} {rng.randint(0, 9)}" for i in range(30)]
        before = "\n".join(lines) + "\n"
        target = rng.randrange(30)
        lines[target] = "replaced"
        after = "\n".join(lines) + "\n"
        diff = compute_line_diff(before, after)
        assert len(diff.entries) == 2
        assert diff.entries[0] == LineDiffEntry("-", target + 1, f"line {target} {before.splitlines()[target][-1]}")
        assert diff.entries[1] == LineDiffEntry("+", target + 1, "replaced")
        assert apply_line_diff(before, diff) == after


# -------------------------------------------------------------------------
# Serialization and parsing
# -------------------------------------------------------------------------


def test_empty_diff_serializes_to_empty_string():
    assert serialize_line_diff(LineDiff(), width=3) == ""
    assert parse_line_diff("") == LineDiff()


def test_replacement_serializes_to_golden_form():
    diff = compute_line_diff(BUGGY, FIXED)
    assert serialize_line_diff(diff, default_width(BUGGY, FIXED)) == FIXED_SERIALIZED


def test_mixed_hunk_sizes_parse_and_reserialize_exactly():
    diff = parse_line_diff(JS_DIFF)
    assert len(diff.entries) == 18
    signs = [e.sign for e in diff.entries]
    assert signs == ["-", "+"] * 2 + ["-"] * 4 + ["+"] * 10
    last_hunk = diff.entries[4:]
    assert len(last_hunk) == 14
    assert [e.line_number for e in last_hunk] == [14, 15, 16, 17] + list(range(14, 24))
    assert serialize_line_diff(diff, width=2) == JS_DIFF


def test_entry_content_may_be_empty():
    diff = LineDiff(entries=(LineDiffEntry("+", 3, ""),))
    text = serialize_line_diff(diff, width=1)
    assert text == "+ 3 \n"
    assert parse_line_diff(text) == diff


def test_serialize_rejects_width_too_narrow():
    diff = LineDiff(entries=(LineDiffEntry("-", 100, "x"),))
    with pytest.raises(ValueError):
        serialize_line_diff(diff, width=2)


def test_eol_marker_roundtrips():
    diff = LineDiff(entries=(LineDiffEntry("-", 1, "a"),), eol_change=True)
    text = serialize_line_diff(diff, width=1)
    assert text.endswith(EOL_MARKER + "\n")
    assert parse_line_diff(text) == diff


def test_parse_rejects_garbage_with_line_index():
    with pytest.raises(DiffSyntaxError) as exc:
        parse_line_diff("- 1 fine\n? 2 nope\n")
    assert exc.value.line_index == 2


def test_parse_rejects_marker_before_entries():
    with pytest.raises(DiffSyntaxError):
        parse_line_diff(EOL_MARKER + "\n- 1 x\n")


def test_parse_rejects_decreasing_numbers_per_sign():
    with pytest.raises(OrderingViolationError):
        parse_line_diff("+ 5 five\n+ 3 three\n")
    with pytest.raises(OrderingViolationError):
        parse_line_diff("- 3 a\n- 3 b\n")


def test_parse_allows_interleaved_signs_with_independent_numbering():
    diff = parse_line_diff("- 3 c\n+ 1 c\n- 5 e\n+ 4 x\n")
    assert len(diff.entries) == 4


def test_entry_invariants():
    with pytest.raises(ValueError):
        LineDiffEntry("~", 1, "x")
    with pytest.raises(ValueError):
        LineDiffEntry("+", 0, "x")
    with pytest.raises(ValueError):
        LineDiffEntry("+", 1, "two\nlines")


# -------------------------------------------------------------------------
# Width helpers
# -------------------------------------------------------------------------


def test_number_lines_width_follows_line_count():
    code = "\n".join(f"line{i}" for i in range(1, 13)) + "\n"
    numbered = number_lines(code)
    assert numbered.width == 2
    rendered = numbered.render()
    assert " 7 line7\n" in rendered
    assert "12 line12\n" in rendered


def test_default_width_uses_longer_side():
    assert default_width("", "") == 1
    nine = "x\n" * 9
    hundred = "y\n" * 100
    assert default_width(nine, nine) == 1
    assert default_width(nine, hundred) == 3


# -------------------------------------------------------------------------
# Application
# -------------------------------------------------------------------------


def test_apply_empty_diff_is_identity():
    assert apply_line_diff(BUGGY, LineDiff()) == BUGGY


def test_apply_fixes_the_fixture():
    diff = parse_line_diff(FIXED_SERIALIZED)
    assert apply_line_diff(BUGGY, diff) == FIXED


def test_apply_rejects_content_mismatch():
    diff = parse_line_diff("- 7 not the real line\n")
    with pytest.raises(RemovalMismatchError):
        apply_line_diff(BUGGY, diff)


def test_apply_rejects_removal_past_end():
    diff = LineDiff(entries=(LineDiffEntry("-", 99, "x"),))
    with pytest.raises(RemovalMismatchError):
        apply_line_diff("a\nb\n", diff)


def test_apply_rejects_unplaceable_addition():
    diff = LineDiff(entries=(LineDiffEntry("+", 99, "x"),))
    with pytest.raises(InconsistentDiffError):
        apply_line_diff("a\nb\n", diff)


def test_apply_checks_ordering_before_touching_text():
    diff = LineDiff(
        entries=(LineDiffEntry("+", 5, "x"), LineDiffEntry("+", 3, "y"))
    )
    with pytest.raises(InconsistentDiffError):
        apply_line_diff("a\nb\n", diff)


def test_apply_grows_empty_text():
    diff = compute_line_diff("", "x\ny\n")
    assert apply_line_diff("", diff) == "x\ny\n"


def test_apply_can_erase_everything():
    diff = compute_line_diff("x\ny\n", "")
    assert apply_line_diff("x\ny\n", diff) == ""


# -------------------------------------------------------------------------
# Properties
# -------------------------------------------------------------------------


@given(texts, texts)
@settings(max_examples=300)
def test_roundtrip_reconstructs_after(before, after):
    diff = compute_line_diff(before, after)
    assert apply_line_diff(before, diff) == after


@given(texts, texts)
@settings(max_examples=300)
def test_serialization_bijection(before, after):
    diff = compute_line_diff(before, after)
    width = max(default_width(before, after), 1)
    assert parse_line_diff(serialize_line_diff(diff, width)) == diff


@given(texts, texts)
@settings(max_examples=300)
def test_entry_count_matches_quadratic_oracle(before, after):
    a, b = split(before), split(after)
    diff = compute_line_diff(before, after)
    assert len(diff.entries) == len(a) + len(b) - 2 * lcs_length(a, b)


@given(texts, texts)
@settings(max_examples=300)
def test_no_unchanged_line_appears(before, after):
    a, b = split(before), split(after)
    diff = compute_line_diff(before, after)
    removed = {e.line_number for e in diff.entries if e.sign == "-"}
    added = {e.line_number for e in diff.entries if e.sign == "+"}
    for entry in diff.entries:
        if entry.sign == "-":
            assert a[entry.line_number - 1] == entry.content
            # A removal of a line that survives verbatim at the same spot
            # would contradict minimality, checked above; here we only need
            # the numbers to stay in range.
            assert entry.line_number <= len(a)
        else:
            assert b[entry.line_number - 1] == entry.content
            assert entry.line_number <= len(b)
    assert len(removed) == sum(1 for e in diff.entries if e.sign == "-")
    assert len(added) == sum(1 for e in diff.entries if e.sign == "+")
