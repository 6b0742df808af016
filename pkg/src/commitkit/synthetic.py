"""Deterministic synthetic fixtures for the test suite and the demo scripts.

Three families live here:

* a labeled commit corpus where every record is constructed to trigger one
  known first-failing filter rule (or none), so pipeline output can be
  checked bit-exactly against labels derived from the rule definitions
  rather than from the code under test;
* a large corpus of version-bump commits for exercising the downsampling
  draw statistically;
* ten toy programming problems small enough to run the full generation →
  execution → pass@k loop in seconds.

Everything is seeded; identical arguments produce identical bytes.
"""
from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass

from .filters import FilterConfig
from .records import CommitRecord, serialize_record

__all__ = [
    "LabeledCorpus",
    "make_labeled_corpus",
    "iter_bump_corpus",
    "BUMP_SUBJECT",
    "make_scrub_pairs",
    "ScrubPair",
    "make_edit_pair",
    "TOY_PROBLEMS",
    "write_toy_task_file",
]


# Word bank safe against every subject rule: alphabetic, length >= 4, no
# noise phrases, no digits, no hex-only words.
_WORDS = (
    "quartz", "marble", "walnut", "copper", "velvet", "ginger",
    "harbor", "lantern", "meadow", "orchid", "pepper", "saffron",
    "timber", "willow", "yonder", "zephyr", "basalt", "clover",
)


def _contents(rng: random.Random, n_words: int) -> str:
    """Code-stand-in text with exactly n_words whitespace-punct tokens."""
    words = [_WORDS[rng.randrange(len(_WORDS))] for _ in range(n_words)]
    lines = [" ".join(words[i : i + 8]) for i in range(0, len(words), 8)]
    return "\n".join(lines)


def _record(index: int, rng: random.Random, **over) -> CommitRecord:
    """A record that passes both filter stages unless fields are overridden."""
    fields = dict(
        commit_id=f"{index:040x}",
        subject="Add range checks to the parser module",
        body="",
        old_contents=_contents(rng, 40),
        new_contents=_contents(rng, 60),
        old_path="src/parser.py",
        new_path="src/parser.py",
        language="Python",
        license="MIT",
        repo="acme/widgets",
        author="dev",
    )
    fields.update(over)
    return CommitRecord(**fields)


_OPT_OUT_REPO = "spammer/poison"

_KEPT_SUBJECTS = (
    ("Add range checks to the parser module", "Python", "src/parser.py"),
    ("Remove deprecated helpers from the utils module", "Python", "src/utils.py"),
    ("Fix crash when the config file is missing", "Python", "src/config.py"),
    ("Improve error messages for malformed headers", "JavaScript", "lib/headers.js"),
    ("Refactor the session cache for clarity", "Go", "pkg/session.go"),
    ("Rename the legacy resolver to avoid confusion", "Python", "src/resolver.py"),
    ("Simplify retry logic in the downloader", "Haskell", "src/Downloader.hs"),
    ("Speed up the cache lookup for large repositories", "Python", "src/cache.py"),
)

_FORTY_HEX = "deadbeefcafefeedface" * 2


def _recipes() -> list[tuple[str | None, dict]]:
    """(expected first-failing rule | None, record field overrides)."""
    slots: list[tuple[str | None, dict]] = []
    for subject, language, path in _KEPT_SUBJECTS:
        slots.append((None, dict(subject=subject, language=language,
                                 old_path=path, new_path=path)))

    slots += [
        # base stage
        ("license", dict(license="GPL-3.0")),
        ("license", dict(license="Proprietary")),
        ("subject-length", dict(subject="Oops")),
        ("subject-length", dict(subject="A" + "b" * 10_000)),
        ("noise-subject", dict(subject="update readme")),
        ("noise-subject", dict(subject="Initial commit")),
        ("noise-subject", dict(subject="Merge branch dev into main")),
        ("opt-out", dict(repo=_OPT_OUT_REPO)),
        # instruction stage, code-shape rules
        ("pre-code-length", dict(old_contents="x " * 30_000)),
        ("post-code-empty", dict(new_contents="")),
        ("no-change", dict(old_contents="same text here", new_contents="same text here")),
        # raw-subject rules
        ("hashtag", dict(subject="Add tracking for #42 regressions")),
        ("extension", dict(new_path="src/parser.txt", old_path="src/parser.txt")),
        ("filename-in-message", dict(subject="Update parser.py to handle unicode paths")),
        # cleaned-subject rules
        ("capitalization", dict(subject="add range checks to the parser module")),
        ("capitalization", dict(subject="2nd attempt at fixing the resolver cache")),
        ("word-count", dict(subject="Fix broken tests")),
        ("word-count", dict(subject="Xx " * 1_001)),
        ("message-length", dict(subject="A b c d e")),
        ("message-length", dict(subject="Fix " + " ".join(["overlong"] * 130))),
        ("token-count", dict(old_contents="tiny old", new_contents="tiny new text")),
        ("token-count", dict(old_contents=None, new_contents=None, _tokens=(400, 401))),
        ("verb-start", dict(subject="Mystify the reticulated spline tracker thoroughly")),
        ("verb-start", dict(subject="The parser now handles unicode gracefully")),
        ("noise-substring", dict(subject="Add work in progress notes to the parser")),
        ("noise-substring", dict(subject="Update wip branch handling logic now")),
        ("noise-substring", dict(subject="Add thanks to the reviewers for their patience")),
        ("regex", dict(subject="Add support for the release v1.2.3")),
        ("regex", dict(subject=f"Revert commit {_FORTY_HEX} from the history")),
        ("regex", dict(subject="Fix the flaky retry in issue 4821")),
    ]
    return slots


@dataclass
class LabeledCorpus:
    """Serialized records plus the rule each is expected to fail (None = kept)."""

    lines: list[str]
    expected_rules: list[str | None]
    config: FilterConfig

    def expected_kept_lines(self) -> list[str]:
        return [line for line, rule in zip(self.lines, self.expected_rules) if rule is None]

    def expected_counts(self) -> Counter:
        return Counter(rule for rule in self.expected_rules if rule is not None)


def make_labeled_corpus(count: int = 1000, seed: int = 20_240_817) -> LabeledCorpus:
    rng = random.Random(seed)
    slots = _recipes()
    lines: list[str] = []
    rules: list[str | None] = []
    for i in range(count):
        rule, over = slots[i % len(slots)]
        over = dict(over)
        tokens = over.pop("_tokens", None)
        if tokens is not None:
            over["old_contents"] = _contents(rng, tokens[0])
            over["new_contents"] = _contents(rng, tokens[1])
        record = _record(i, rng, **over)
        lines.append(serialize_record(record) + "\n")
        rules.append(rule)
    order = list(range(count))
    rng.shuffle(order)
    config = FilterConfig(seed=1, opt_out_repos=frozenset({_OPT_OUT_REPO}))
    return LabeledCorpus(
        lines=[lines[i] for i in order],
        expected_rules=[rules[i] for i in order],
        config=config,
    )


BUMP_SUBJECT = "Bump version counter for release"


def iter_bump_corpus(count: int = 100_000):
    """Records that all reach the downsampling rule and nothing before it."""
    rng = random.Random(4242)
    old = _contents(rng, 40)
    new = _contents(rng, 60)
    for i in range(count):
        record = CommitRecord(
            commit_id=f"bump{i:012d}",
            subject=BUMP_SUBJECT,
            body="",
            old_contents=old,
            new_contents=new,
            old_path="src/release.py",
            new_path="src/release.py",
            language="Python",
            license="MIT",
            repo="acme/widgets",
            author="dev",
        )
        yield serialize_record(record) + "\n"


# --------------------------------------------------------------------------
# Scrubbing pairs
# --------------------------------------------------------------------------

_SOLUTION_ALPHABET = "abcdefghijklm"
_FILLER_ALPHABET = "nopqrstuvwxyz"


@dataclass
class ScrubPair:
    explanation: str
    solution: str
    surviving_run: str | None  # an implanted exactly-19-char shared run, if any


def _solution_text(rng: random.Random) -> str:
    words = [
        "".join(rng.choice(_SOLUTION_ALPHABET) for _ in range(rng.randint(3, 8)))
        for _ in range(rng.randint(60, 120))
    ]
    return " ".join(words)


def _filler(rng: random.Random) -> str:
    return "".join(
        rng.choice(_FILLER_ALPHABET + "_") for _ in range(rng.randint(10, 40))
    )


def make_scrub_pairs(count: int = 200, seed: int = 1337) -> list[ScrubPair]:
    """Explanation/solution pairs with implanted shared runs.

    Solutions use only letters a-m and spaces; filler uses only n-z and
    underscores. Any character run shared between the two strings is
    therefore one of the implants, and an implanted 19-character run cannot
    accidentally extend to 20.
    """
    rng = random.Random(seed)
    pairs: list[ScrubPair] = []
    for index in range(count):
        solution = _solution_text(rng)
        segments = [_filler(rng)]
        for _ in range(rng.randint(1, 3)):
            length = rng.randint(20, min(60, len(solution)))
            start = rng.randrange(len(solution) - length + 1)
            segments.append(solution[start : start + length])
            segments.append(_filler(rng))
        surviving = None
        if index % 2 == 0:
            start = rng.randrange(len(solution) - 19 + 1)
            surviving = solution[start : start + 19]
            segments.append(surviving)
            segments.append(_filler(rng))
        pairs.append(ScrubPair("".join(segments), solution, surviving))
    return pairs


# --------------------------------------------------------------------------
# Randomized edit pairs for diff roundtrips
# --------------------------------------------------------------------------


def make_edit_pair(rng: random.Random) -> tuple[str, str]:
    """A (before, after) text pair with mixed insert/delete/replace edits.

    Lines repeat heavily (small alphabet) to stress hunk grouping and the
    shortest-script search; trailing newlines vary to exercise the marker.
    """
    alphabet = ["alpha", "beta", "gamma", "delta", "", "alpha", "omega"]
    before = [rng.choice(alphabet) for _ in range(rng.randint(0, 30))]
    after = list(before)
    for _ in range(rng.randint(0, 8)):
        op = rng.choice(("insert", "delete", "replace"))
        if op == "insert" or not after:
            after.insert(rng.randint(0, len(after)), rng.choice(alphabet))
        elif op == "delete":
            after.pop(rng.randrange(len(after)))
        else:
            after[rng.randrange(len(after))] = rng.choice(alphabet)
    before_text = "\n".join(before) + ("\n" if before and rng.random() < 0.8 else "")
    after_text = "\n".join(after) + ("\n" if after and rng.random() < 0.8 else "")
    return before_text, after_text


# --------------------------------------------------------------------------
# Toy problems
# --------------------------------------------------------------------------


def _problem(
    index: int,
    entry_point: str,
    signature: str,
    docstring: str,
    canonical: str,
    buggy: str,
    tests: str,
    bug_type: str,
) -> dict:
    declaration = f"def {signature}:"
    body_doc = f'    """{docstring}"""'
    return {
        "task_id": f"toy/{index}",
        "language": "python",
        "prompt_parts": {
            "entry_point": entry_point,
            "signature": signature,
            "declaration": declaration,
            "declaration_with_docstring": f"{declaration}\n{body_doc}",
        },
        "docstring": docstring,
        "canonical_solution": canonical,
        "buggy_solution": buggy,
        "bug_type": bug_type,
        "tests": tests,
    }


TOY_PROBLEMS: list[dict] = [
    _problem(
        0,
        "add_numbers",
        "add_numbers(a, b)",
        "Return the sum of a and b.",
        "    return a + b",
        "    return a - b",
        "def check(candidate):\n"
        "    assert candidate(1, 2) == 3\n"
        "    assert candidate(-4, 2) == -2\n"
        "    assert candidate(0, 0) == 0\n"
        "\n"
        "check(add_numbers)",
        "wrong logic",
    ),
    _problem(
        1,
        "is_even",
        "is_even(n)",
        "Return True when n is an even integer, False otherwise.",
        "    return n % 2 == 0",
        "    return n % 2 == 1",
        "def check(candidate):\n"
        "    assert candidate(4) is True\n"
        "    assert candidate(7) is False\n"
        "    assert candidate(0) is True\n"
        "\n"
        "check(is_even)",
        "wrong logic",
    ),
    _problem(
        2,
        "reverse_text",
        "reverse_text(s)",
        "Return the characters of s in reverse order.",
        "    return s[::-1]",
        "    return s",
        "def check(candidate):\n"
        "    assert candidate('abc') == 'cba'\n"
        "    assert candidate('') == ''\n"
        "    assert candidate('ab') == 'ba'\n"
        "\n"
        "check(reverse_text)",
        "missing logic",
    ),
    _problem(
        3,
        "largest_of_three",
        "largest_of_three(a, b, c)",
        "Return the largest of the three arguments.",
        "    return max(a, max(b, c))",
        "    return max(a, b)",
        "def check(candidate):\n"
        "    assert candidate(1, 2, 3) == 3\n"
        "    assert candidate(9, 2, 3) == 9\n"
        "    assert candidate(1, 5, 3) == 5\n"
        "\n"
        "check(largest_of_three)",
        "missing logic",
    ),
    _problem(
        4,
        "count_vowels",
        "count_vowels(s)",
        "Count how many characters of s are lowercase vowels (a, e, i, o, u).",
        "    return sum(1 for ch in s if ch in 'aeiou')",
        "    return sum(1 for ch in s if ch in 'aeio')",
        "def check(candidate):\n"
        "    assert candidate('queue') == 4\n"
        "    assert candidate('xyz') == 0\n"
        "    assert candidate('aeiou') == 5\n"
        "\n"
        "check(count_vowels)",
        "missing logic",
    ),
    _problem(
        5,
        "factorial",
        "factorial(n)",
        "Return n factorial for a non-negative integer n, with factorial(0) == 1.",
        "    result = 1\n    for i in range(2, n + 1):\n        result *= i\n    return result",
        "    result = 0\n    for i in range(2, n + 1):\n        result *= i\n    return result",
        "def check(candidate):\n"
        "    assert candidate(0) == 1\n"
        "    assert candidate(1) == 1\n"
        "    assert candidate(5) == 120\n"
        "\n"
        "check(factorial)",
        "value misuse",
    ),
    _problem(
        6,
        "clamp",
        "clamp(x, low, high)",
        "Clamp x into the closed interval [low, high].",
        "    return min(max(x, low), high)",
        "    return max(min(x, low), high)",
        "def check(candidate):\n"
        "    assert candidate(5, 0, 10) == 5\n"
        "    assert candidate(-3, 0, 10) == 0\n"
        "    assert candidate(42, 0, 10) == 10\n"
        "\n"
        "check(clamp)",
        "operator misuse",
    ),
    _problem(
        7,
        "running_total",
        "running_total(values)",
        "Return a list of partial sums of values, same length as the input.",
        "    total = 0\n    out = []\n    for v in values:\n        total += v\n        out.append(total)\n    return out",
        "    total = 0\n    out = []\n    for v in values:\n        out.append(total)\n        total += v\n    return out",
        "def check(candidate):\n"
        "    assert candidate([1, 2, 3]) == [1, 3, 6]\n"
        "    assert candidate([]) == []\n"
        "    assert candidate([5]) == [5]\n"
        "\n"
        "check(running_total)",
        "wrong logic",
    ),
    _problem(
        8,
        "word_lengths",
        "word_lengths(sentence)",
        "Return the length of each whitespace-separated word in the sentence.",
        "    return [len(word) for word in sentence.split()]",
        "    return [len(word) for word in sentence]",
        "def check(candidate):\n"
        "    assert candidate('a bb ccc') == [1, 2, 3]\n"
        "    assert candidate('') == []\n"
        "    assert candidate('hello') == [5]\n"
        "\n"
        "check(word_lengths)",
        "function misuse",
    ),
    _problem(
        9,
        "unique_sorted",
        "unique_sorted(values)",
        "Return the distinct values in ascending order.",
        "    return sorted(set(values))",
        "    return sorted(values)",
        "def check(candidate):\n"
        "    assert candidate([3, 1, 2, 1]) == [1, 2, 3]\n"
        "    assert candidate([]) == []\n"
        "    assert candidate([7, 7, 7]) == [7]\n"
        "\n"
        "check(unique_sorted)",
        "missing logic",
    ),
]


def write_toy_task_file(path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for problem in TOY_PROBLEMS:
            fh.write(json.dumps(problem, ensure_ascii=False) + "\n")
