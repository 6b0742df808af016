from __future__ import annotations

import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commitkit.filters import (
    BASE_RULES,
    DEFAULT_NOISE_SUBSTRINGS,
    DEFAULT_VERB_ALLOWLIST,
    FT_RULES,
    ConfigError,
    FilterConfig,
    FilterDecision,
    apply_base_filters,
    apply_ft_filters,
    clean_subject,
    compile_blacklist,
    config_as_dict,
    config_from_dict,
    downsample_draw,
    matches_blacklist_regex,
    matches_noise_substring,
    run_pipeline,
    starts_with_allowed_verb,
)
from commitkit.records import CommitRecord, serialize_record

GOOD_OLD = " ".join(["alpha"] * 40)
GOOD_NEW = " ".join(["omega"] * 60)


def record(**over) -> CommitRecord:
    fields = dict(
        commit_id="abc123",
        subject="Add range checks to the parser module",
        body="",
        old_contents=GOOD_OLD,
        new_contents=GOOD_NEW,
        old_path="src/parser.py",
        new_path="src/parser.py",
        language="Python",
        license="MIT",
        repo="acme/widgets",
        author="dev",
    )
    fields.update(over)
    return CommitRecord(**fields)


def ft_rule(rec: CommitRecord, config: FilterConfig | None = None) -> str | None:
    config = config or FilterConfig(seed=1)
    decision = apply_base_filters(rec, config)
    if decision.kept:
        decision = apply_ft_filters(rec, config)
    return decision.failed_rule


# -------------------------------------------------------------------------
# Subject cleaning
# -------------------------------------------------------------------------


def test_clean_strips_ci_tags_anywhere():
    assert clean_subject("Fix the build [skip ci]") == "Fix the build"
    assert clean_subject("[CI SKIP] Fix the build") == "Fix the build"


def test_clean_strips_leading_bracket_group():
    assert clean_subject("[JIRA-42] Fix the build") == "Fix the build"
    assert clean_subject("(api) Fix the build") == "Fix the build"


def test_clean_strips_trailing_bracket_group():
    assert clean_subject("Fix the build (#99)") == "Fix the build"
    assert clean_subject("Fix the build [backport]") == "Fix the build"


def test_clean_strips_leading_colon_prefix():
    assert clean_subject("api: fix the build") == "fix the build"
    assert clean_subject("fix: handle empty input") == "handle empty input"


def test_clean_iterates_to_fixed_point():
    assert clean_subject("[a] [b] core: trim cache (x) (y)") == "trim cache"


def test_clean_preserves_plain_subjects():
    assert clean_subject("Add a parser") == "Add a parser"


@given(st.text(max_size=120))
@settings(max_examples=200)
def test_clean_is_idempotent(subject):
    once = clean_subject(subject)
    assert clean_subject(once) == once


# -------------------------------------------------------------------------
# Predicates
# -------------------------------------------------------------------------


def test_verb_match_requires_word_boundary():
    verbs = DEFAULT_VERB_ALLOWLIST
    assert starts_with_allowed_verb("add a parser", verbs)
    assert starts_with_allowed_verb("Add a parser".lower(), verbs)
    assert not starts_with_allowed_verb("added a parser", verbs)
    assert not starts_with_allowed_verb("additional parser", verbs)
    assert starts_with_allowed_verb("fix", verbs)


def test_multiword_verbs_match_as_phrases():
    verbs = DEFAULT_VERB_ALLOWLIST
    assert starts_with_allowed_verb("speed up the loop", verbs)
    assert starts_with_allowed_verb("deal with empty input", verbs)
    assert not starts_with_allowed_verb("speedy loop", verbs)


def test_noise_substring_short_entries_are_whole_words():
    entries = DEFAULT_NOISE_SUBSTRINGS
    assert matches_noise_substring("mark wip for later", entries) == "wip"
    assert matches_noise_substring("add swipe gesture", entries) is None


def test_noise_substring_long_entries_match_anywhere():
    entries = DEFAULT_NOISE_SUBSTRINGS
    assert matches_noise_substring("x merge branch y", entries) == "merge branch"
    assert matches_noise_substring("see https://example.com", entries) == "https://"


def test_noise_substring_conjunctive_tuple_needs_all_members():
    entries = DEFAULT_NOISE_SUBSTRINGS
    assert matches_noise_substring("thanks to ada for the patch", entries) == "thanks to + for"
    assert matches_noise_substring("thanks to ada", entries) is None


def test_noise_substring_first_person_markers():
    entries = DEFAULT_NOISE_SUBSTRINGS
    assert matches_noise_substring("now i think it works", entries) == " i "
    assert matches_noise_substring("i've fixed it", entries) == "i've"


def test_blacklist_version_string_wants_terminal_or_glued_match():
    compiled = compile_blacklist(
        (("version-string", r"(?:v)?\d+\.\d+\.\d+(?=$|\S)"),)
    )
    assert matches_blacklist_regex("bump to v1.2.3", compiled) == "version-string"
    assert matches_blacklist_regex("bump to 1.2.3-rc1", compiled) == "version-string"
    assert matches_blacklist_regex("mention v1.2.3 casually", compiled) is None


def test_blacklist_hex_patterns():
    config = FilterConfig(seed=1)
    compiled = compile_blacklist(config.blacklist_patterns)
    assert matches_blacklist_regex("a" * 40, compiled) is not None
    assert matches_blacklist_regex("deadbeef-cafe", compiled) == "hex-run"
    assert matches_blacklist_regex("fix issue 123", compiled) == "issue-ref"
    assert matches_blacklist_regex("fix bug2", compiled) == "bug-ref"
    assert matches_blacklist_regex("plain words only", compiled) is None


def test_blacklist_reports_first_matching_pattern_id():
    config = FilterConfig(seed=1)
    compiled = compile_blacklist(config.blacklist_patterns)
    # Contains both a version string and an issue reference; pattern order
    # decides the attribution.
    assert matches_blacklist_regex("fix issue 9 in v1.2.3", compiled) == "version-string"


def test_bad_blacklist_pattern_fails_at_config_time():
    with pytest.raises(ConfigError):
        FilterConfig(blacklist_patterns=(("broken", "("),))


def test_downsample_draw_is_deterministic_and_uniformish():
    a = downsample_draw(1, "commit-a")
    assert a == downsample_draw(1, "commit-a")
    assert a != downsample_draw(2, "commit-a")
    assert a != downsample_draw(1, "commit-b")
    assert 0.0 <= a < 1.0


# -------------------------------------------------------------------------
# Base stage
# -------------------------------------------------------------------------


def test_base_accepts_good_record():
    decision = apply_base_filters(record(), FilterConfig(seed=1))
    assert decision == FilterDecision(kept=True, failed_rule=None, stage="base")


def test_base_license_allowlist():
    assert ft_rule(record(license="GPL-3.0")) == "license"
    assert ft_rule(record(license="")) is None  # unknown license passes


def test_base_subject_length_bounds():
    assert ft_rule(record(subject="Oops")) == "subject-length"
    assert ft_rule(record(subject="A" + "b" * 10_000)) == "subject-length"


def test_base_noise_subjects_case_insensitive():
    assert ft_rule(record(subject="Update README")) == "noise-subject"
    assert ft_rule(record(subject="Initial commit")) == "noise-subject"
    assert ft_rule(record(subject="Merge pull request #1")) == "noise-subject"


def test_base_opt_out_repo():
    config = FilterConfig(seed=1, opt_out_repos=frozenset({"acme/widgets"}))
    assert ft_rule(record(), config) == "opt-out"


# -------------------------------------------------------------------------
# Instruction stage: first-failure attribution in registry order
# -------------------------------------------------------------------------


def test_ft_accepts_good_record():
    assert ft_rule(record()) is None


def test_ft_pre_code_length():
    assert ft_rule(record(old_contents="x" * 50_001)) == "pre-code-length"


def test_ft_post_code_empty():
    assert ft_rule(record(new_contents="")) == "post-code-empty"


def test_ft_no_change():
    assert ft_rule(record(old_contents="same", new_contents="same")) == "no-change"


def test_ft_hashtag_on_raw_subject():
    assert ft_rule(record(subject="Add tracking for #42 regressions")) == "hashtag"


def test_ft_extension_must_fit_language():
    assert ft_rule(record(new_path="src/parser.txt")) == "extension"
    assert ft_rule(record(language="UnmappedLang", new_path="src/x.weird")) is None


def test_ft_filename_in_message():
    assert (
        ft_rule(record(subject="Update parser.py to handle unicode paths"))
        == "filename-in-message"
    )


def test_ft_capitalization_after_cleaning():
    assert ft_rule(record(subject="add range checks to the parser module")) == "capitalization"
    # The bracket prefix is stripped before the capital check.
    assert ft_rule(record(subject="[tag] Add range checks to the parser module")) is None


def test_ft_word_count_on_cleaned_subject():
    assert ft_rule(record(subject="Fix broken tests")) == "word-count"
    assert ft_rule(record(subject="Xx " * 1_001)) == "word-count"


def test_ft_message_length_window():
    assert ft_rule(record(subject="A b c d e")) == "message-length"
    long_subject = "Fix " + " ".join(["overlong"] * 130)
    assert ft_rule(record(subject=long_subject)) == "message-length"


def test_ft_token_budget_includes_separator():
    # 24 + 1 + 25 tokens == 50 sits exactly on the inclusive lower bound.
    rec = record(
        old_contents=" ".join(["a"] * 24), new_contents=" ".join(["b"] * 25)
    )
    assert ft_rule(rec) is None
    rec = record(
        old_contents=" ".join(["a"] * 24), new_contents=" ".join(["b"] * 24)
    )
    assert ft_rule(rec) == "token-count"


def test_ft_verb_start():
    assert (
        ft_rule(record(subject="Mystify the reticulated spline tracker thoroughly"))
        == "verb-start"
    )


def test_ft_noise_substring():
    assert (
        ft_rule(record(subject="Add work in progress notes to the parser"))
        == "noise-substring"
    )


def test_ft_regex():
    assert ft_rule(record(subject="Add support for the release v1.2.3")) == "regex"


def test_ft_downsample_requires_seed():
    config = FilterConfig()
    rec = record(subject="Bump version counter for release")
    with pytest.raises(ConfigError):
        apply_ft_filters(rec, config)


def test_ft_downsample_is_keyed_by_commit_id():
    config = FilterConfig(seed=1)
    outcomes = {
        ft_rule(record(subject="Bump version counter for release", commit_id=f"c{i}"), config)
        for i in range(200)
    }
    assert outcomes == {None, "downsample"}


def test_ft_downsample_prefix_checked_after_cleaning():
    config = FilterConfig(seed=1, downsample_keep_probability=0.0)
    rec = record(subject="[tag] Bump version counter for release")
    assert ft_rule(rec, config) == "downsample"


def test_rule_registries_are_disjoint_and_complete():
    base_ids = [rule_id for rule_id, _ in BASE_RULES]
    ft_ids = [rule_id for rule_id, _ in FT_RULES]
    assert len(set(base_ids + ft_ids)) == len(base_ids) + len(ft_ids)
    assert base_ids == ["license", "subject-length", "noise-subject", "opt-out"]
    assert ft_ids[-1] == "downsample"


# Build a record failing rules[i] for every instruction rule, then check that
# relaxing the triggering field restores the next failure or acceptance.
def test_ft_first_failure_attribution_is_ordered():
    rec = record(
        subject="update parser.py v1.2.3 #tag",
        old_contents="x" * 50_001,
        new_contents="",
    )
    config = FilterConfig(seed=1)
    assert ft_rule(rec, config) == "pre-code-length"
    rec.old_contents = GOOD_OLD
    assert ft_rule(rec, config) == "post-code-empty"
    rec.new_contents = GOOD_OLD
    assert ft_rule(rec, config) == "no-change"
    rec.new_contents = GOOD_NEW
    assert ft_rule(rec, config) == "hashtag"
    rec.subject = "update parser.py v1.2.3 release"
    rec.new_path = "src/parser.cc"
    assert ft_rule(rec, config) == "extension"
    rec.new_path = "src/parser.py"
    assert ft_rule(rec, config) == "filename-in-message"
    rec.subject = "update parser for the v1.2.3 release"
    assert ft_rule(rec, config) == "capitalization"
    rec.subject = "Update parser v1.2.3"
    assert ft_rule(rec, config) == "word-count"
    rec.subject = "A b c d e"
    assert ft_rule(rec, config) == "message-length"
    rec.subject = "Update the parser for the v1.2.3 release"
    rec.old_contents = "a b"
    rec.new_contents = "c d"
    assert ft_rule(rec, config) == "token-count"
    rec.old_contents = GOOD_OLD
    rec.new_contents = GOOD_NEW
    rec.subject = "Parser rework for the v1.2.3 release"
    assert ft_rule(rec, config) == "verb-start"
    rec.subject = "Update the wip parser for the v1.2.3 release"
    assert ft_rule(rec, config) == "noise-substring"
    rec.subject = "Update the parser for release v1.2.3"
    assert ft_rule(rec, config) == "regex"
    rec.subject = "Update the parser for the next release"
    assert ft_rule(rec, config) is None


# -------------------------------------------------------------------------
# Pipeline and reporting
# -------------------------------------------------------------------------


def _lines(records):
    return [serialize_record(r) + "\n" for r in records]


def test_pipeline_base_stage_writes_kept_lines_verbatim():
    lines = _lines([record(), record(subject="update readme")])
    lines.append("this is not json\n")
    out = io.StringIO()
    report = run_pipeline(lines, FilterConfig(seed=1), "base", out)
    assert report.line_count == 3
    assert report.parse_error_count == 1
    assert report.input_count == 2
    assert report.kept_count == 1
    assert report.per_rule_reject_counts == {"noise-subject": 1}
    assert out.getvalue() == lines[0]


def test_pipeline_preserves_unknown_keys_in_kept_output():
    rec = record()
    rec.extra = {"sidecar": [1, 2, 3]}
    line = serialize_record(rec) + "\n"
    out = io.StringIO()
    run_pipeline([line], FilterConfig(seed=1), "ft", out)
    assert out.getvalue() == line
    assert json.loads(out.getvalue())["sidecar"] == [1, 2, 3]


def test_pipeline_ft_stage_applies_base_rules_first():
    lines = _lines([record(subject="update readme")])
    report = run_pipeline(lines, FilterConfig(seed=1), "ft")
    assert report.per_rule_reject_counts == {"noise-subject": 1}


def test_pipeline_rejects_unknown_stage():
    with pytest.raises(ConfigError):
        run_pipeline([], FilterConfig(seed=1), "weird")


def test_pipeline_ft_without_seed_is_config_error():
    with pytest.raises(ConfigError):
        run_pipeline([], FilterConfig(), "ft")


def test_pipeline_empty_input_reports_zero_counts():
    report = run_pipeline([], FilterConfig(seed=1), "base")
    assert report.line_count == 0
    assert report.kept_count == 0
    report.validate()


def test_report_word_stats_cover_kept_records():
    lines = _lines([record(), record()])
    report = run_pipeline(lines, FilterConfig(seed=1), "ft")
    stats = report.word_stats["pre_code"]
    assert stats.count == 2
    assert stats.mean == 40.0
    assert stats.stderr == 0.0


def test_report_as_dict_zero_fills_all_stage_rules():
    report = run_pipeline([], FilterConfig(seed=1), "ft")
    counts = report.as_dict()["per_rule_reject_counts"]
    assert set(counts) == {rid for rid, _ in BASE_RULES} | {rid for rid, _ in FT_RULES}
    assert all(v == 0 for v in counts.values())


def test_config_dict_roundtrip():
    config = FilterConfig(
        seed=7,
        token_min=10,
        token_max=20,
        opt_out_repos=frozenset({"a/b"}),
    )
    back = config_from_dict(config_as_dict(config))
    assert back == config


def test_config_rejects_unknown_key():
    with pytest.raises(ConfigError):
        config_from_dict({"definitely_not_a_key": 1})


def test_config_validates_probability_and_bounds():
    with pytest.raises(ConfigError):
        FilterConfig(downsample_keep_probability=1.5)
    with pytest.raises(ConfigError):
        FilterConfig(token_min=100, token_max=50)
    with pytest.raises(ConfigError):
        FilterConfig(seed=-3)


def test_decision_invariant_enforced():
    with pytest.raises(ValueError):
        FilterDecision(kept=True, failed_rule="license", stage="base")


# Mutating one passing record into each single-rule violation must shift the
# attribution to exactly that rule.
_MUTATIONS = [
    ("license", dict(license="WTFPL")),
    ("subject-length", dict(subject="Tiny")),
    ("noise-subject", dict(subject="update data.js")),
    ("pre-code-length", dict(old_contents="y" * 50_001)),
    ("post-code-empty", dict(new_contents="")),
    ("hashtag", dict(subject="Add checks to the parser #now")),
    ("extension", dict(new_path="src/parser.rs")),
    ("capitalization", dict(subject="add range checks to the parser module")),
    ("word-count", dict(subject="Fix it")),
    ("verb-start", dict(subject="Parser range checks got added today")),
    ("noise-substring", dict(subject="Add code review notes to the parser")),
    ("regex", dict(subject="Add handling for issue 99 to the parser")),
]


@pytest.mark.parametrize("expected,mutation", _MUTATIONS)
def test_single_field_mutation_shifts_attribution(expected, mutation):
    assert ft_rule(record(**mutation)) == expected


@given(st.sampled_from(_MUTATIONS), st.integers(0, 2**32))
@settings(max_examples=60)
def test_mutation_attribution_is_stable_across_commit_ids(mutation, commit_seed):
    expected, over = mutation
    rec = record(commit_id=f"{commit_seed:x}", **over)
    assert ft_rule(rec) == expected
