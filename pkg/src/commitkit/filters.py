"""Two-stage commit filtering with per-rule attribution.

The base stage keeps permissively-licensed, single-file commits whose subject
is not boilerplate noise. The instruction stage then keeps only commits whose
subject reads like an imperative instruction: cleaned of CI tags and prefixes,
capitalized, within length/word/token budgets, starting with a known verb, and
free of noise substrings, version strings, hex ids, and issue references.

Every rejection names the first failing rule from the registry below, so a
report can attribute exactly why each record fell out. Evaluation order:

base stage
    license, subject-length, noise-subject, opt-out
instruction stage
    pre-code-length, post-code-empty, no-change, hashtag, extension,
    filename-in-message, then on the cleaned subject: capitalization,
    word-count, message-length, token-count, verb-start, noise-substring,
    regex, downsample

Subject-content rules run on the cleaned subject (clean_subject), except
hashtag and filename-in-message which inspect the raw subject. Downsampling
is a deterministic keyed-hash Bernoulli draw, so identical (input, config,
seed) always produce identical outputs.
"""
from __future__ import annotations

import hashlib
import math
import re
import unicodedata
from dataclasses import dataclass, field, fields
from typing import IO, Iterable, Pattern

from .records import CommitRecord, MalformedRecordError, parse_record
from .tokenizers import count_tokens

__all__ = [
    "ConfigError",
    "FilterDecision",
    "FilterConfig",
    "WordStat",
    "FilterReport",
    "BASE_RULES",
    "FT_RULES",
    "clean_subject",
    "starts_with_allowed_verb",
    "matches_noise_substring",
    "matches_blacklist_regex",
    "downsample_draw",
    "apply_base_filters",
    "apply_ft_filters",
    "run_pipeline",
    "compute_word_stats",
]


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# Defaults. These are the shipped curation values; FilterConfig overrides all.
# --------------------------------------------------------------------------

DEFAULT_LICENSE_ALLOWLIST = frozenset(
    {
        "MIT",
        "Artistic-2.0",
        "ISC",
        "CC0-1.0",
        "EPL-1.0",
        "MPL-2.0",
        "Apache-2.0",
        "BSD-3-Clause",
        "AGPL-3.0",
        "LGPL-2.1",
        "BSD-2-Clause",
    }
)

DEFAULT_NOISE_SUBJECTS = frozenset(
    {
        "add files via upload",
        "can't you see i'm updating the time?",
        "commit",
        "create readme.md",
        "dummy",
        "first commit",
        "heartbeat update",
        "initial commit",
        "mirroring from micro.blog.",
        "no message",
        "pi push",
        "readme",
        "update",
        "updates",
        "update _config.yaml",
        "update index.html",
        "update readme.md",
        "update readme",
        "updated readme",
        "update log",
        "update data.js",
        "update data.json",
    }
)

DEFAULT_VERB_ALLOWLIST = (
    'abort', 'accelerate', 'access', 'accumulate', 'add', 'address',
    'adjust', 'advance', 'align', 'allot', 'allow', 'amplify',
    'annotate', 'append', 'apply', 'archive', 'arrange', 'attach',
    'augment', 'automate', 'backup', 'boost', 'break', 'bring',
    'brush up', 'build', 'bump', 'call', 'change', 'check',
    'choose', 'clarify', 'clean', 'clear', 'clone', 'comment',
    'complete', 'compress', 'concatenate', 'configure', 'connect', 'consolidate',
    'convert', 'copy', 'correct', 'cover', 'create', 'customize',
    'cut', 'deal with', 'debug', 'decipher', 'declare', 'decommission',
    'decomplexify', 'decompress', 'decrease', 'decrypt', 'define', 'delete',
    'deploy', 'designate', 'destroy', 'detach', 'determine', 'develop',
    'diminish', 'disable', 'discard', 'disentangle', 'dismantle', 'divide',
    'document', 'downgrade', 'drop', 'duplicate', 'edit', 'embed',
    'emphasize', 'enable', 'encrypt', 'enforce', 'enhance', 'enlarge',
    'enumerate', 'eradicate', 'escalate', 'establish', 'exclude', 'exit',
    'expand', 'expedite', 'expire', 'extend', 'facilitate', 'fix',
    'format', 'gather', 'generalize', 'halt', 'handle', 'hasten',
    'hide', 'implement', 'improve', 'include', 'increase', 'increment',
    'indent', 'index', 'inflate', 'initialize', 'insert', 'install',
    'integrate', 'interpolate', 'interrupt', 'introduce', 'isolate', 'join',
    'kill', 'leverage', 'load', 'magnify', 'maintain', 'make',
    'manage', 'mark', 'mask', 'mend', 'merge', 'migrate',
    'modify', 'monitor', 'move', 'multiply', 'normalize', 'optimize',
    'orchestrate', 'order', 'package', 'paraphrase', 'paste', 'patch',
    'plug ', 'prepare', 'prepend', 'print', 'provision', 'purge',
    'put', 'quit', 'raise', 'read', 'reannotate', 'rearrange',
    'rebase', 'reboot', 'rebuild', 'recomment', 'recompile', 'reconfigure',
    'reconnect', 'rectify', 'redact', 'redefine', 'reduce', 'refactor',
    'reformat', 'refresh', 'reimplement', 'reinforce', 'relocate', 'remove',
    'rename', 'reorder', 'reorganize', 'repackage', 'repair', 'rephrase',
    'replace', 'reposition', 'reschedule', 'reset', 'reshape', 'resolve',
    'restructure', 'return', 'revert', 'revise', 'revoke', 'reword',
    'rework', 'rewrite', 'rollback', 'save', 'scale', 'scrub',
    'secure', 'select', 'send', 'set', 'settle', 'simplify',
    'solve', 'sort', 'speed up', 'split', 'stabilize', 'standardize',
    'stipulate', 'stop', 'store', 'streamline', 'strengthen', 'structure',
    'substitute', 'subtract', 'support', 'swap', 'switch', 'synchronize',
    'tackle', 'tag', 'terminate', 'test', 'throw', 'tidy',
    'transform', 'transpose', 'trim', 'troubleshoot', 'truncate', 'tweak',
    'unblock', 'uncover', 'undo', 'unify', 'uninstall', 'unplug',
    'unpublish', 'unravel', 'unstage', 'unsync', 'untangle', 'unwind',
    'update', 'upgrade', 'use', 'validate', 'verify', 'watch',
    'watermark', 'whitelist', 'withdraw', 'work', 'write',
)

# A plain string matches as a substring (entries of <= 3 letters as whole
# words; see matches_noise_substring). A tuple is conjunctive: reject only
# when every member appears.
DEFAULT_NOISE_SUBSTRINGS: tuple[str | tuple[str, ...], ...] = (
    "auto commit",
    "update contributing",
    "<?xml",
    "merge branch",
    "merge pull request",
    "signed-off-by",
    "fix that bug where things didn't work but now they should",
    "put the thingie in the thingie",
    "add a beter commit message",
    "code review",
    "//codereview",
    "work in progress",
    "wip",
    "https://",
    "http://",
    "| leetcode",
    "cdpcp",
    " i ",
    "i've",
    "i'm",
    ("thanks to", "for"),
)

DEFAULT_BLACKLIST_PATTERNS = (
    ("version-string", r"(?:v)?\d+\.\d+\.\d+(?=$|\S)"),
    ("hex-run", r"^[a-f0-9]+(?:-[a-f0-9]+)*$"),
    ("forty-hex", r"([a-f0-9]{40})"),
    ("issue-ref", r"issue\s*\d+"),
    ("bug-ref", r"bug\s*\d+"),
    ("feature-ref", r"feature\s*\d+"),
)

DEFAULT_DOWNSAMPLE_PREFIXES = ("Bump", "Set version", "Update version")

DEFAULT_EXTENSION_MAP: dict[str, tuple[str, ...]] = {
    "python": ("py",),
    "javascript": ("js",),
    "java": ("java",),
    "go": ("go",),
    "c++": ("cpp", "cc", "cxx", "hpp", "h"),
    "rust": ("rs",),
}

SUBJECT_MIN_CHARS = 5
SUBJECT_MAX_CHARS = 10_000
PRE_CODE_MAX_CHARS = 50_000
MESSAGE_MIN_CHARS_EXCL = 10  # keep iff len > 10
MESSAGE_MAX_CHARS_EXCL = 1000  # keep iff len < 1000
WORDS_MIN_EXCL = 4  # keep iff words > 4
WORDS_MAX_EXCL = 1000  # keep iff words < 1000

BASE_RULES: tuple[tuple[str, str], ...] = (
    ("license", "license not in the allowlist (empty license is allowed)"),
    ("subject-length", f"subject shorter than {SUBJECT_MIN_CHARS} or longer than {SUBJECT_MAX_CHARS} characters"),
    ("noise-subject", "lowercased subject is a known noise message or starts with 'merge'"),
    ("opt-out", "repository owner opted out of inclusion"),
)

FT_RULES: tuple[tuple[str, str], ...] = (
    ("pre-code-length", f"before-code longer than {PRE_CODE_MAX_CHARS} characters"),
    ("post-code-empty", "after-code is empty"),
    ("no-change", "before and after code are identical"),
    ("hashtag", "subject contains a hashtag"),
    ("extension", "filename extension atypical for the language"),
    ("filename-in-message", "changed filename appears in the subject"),
    ("capitalization", "cleaned subject does not start with an uppercase letter"),
    ("word-count", f"cleaned subject does not split into more than {WORDS_MIN_EXCL} and fewer than {WORDS_MAX_EXCL} words"),
    ("message-length", f"cleaned subject not between {MESSAGE_MIN_CHARS_EXCL + 1} and {MESSAGE_MAX_CHARS_EXCL - 1} characters"),
    ("token-count", "before-code + separator + after-code outside the token budget"),
    ("verb-start", "cleaned subject does not start with an allowlisted verb"),
    ("noise-substring", "cleaned subject contains a noise phrase"),
    ("regex", "cleaned subject matches a blacklist pattern"),
    ("downsample", "version-bump subject removed by the downsampling draw"),
)


@dataclass(frozen=True)
class FilterDecision:
    kept: bool
    failed_rule: str | None
    stage: str  # "base" or "ft"

    def __post_init__(self) -> None:
        if self.kept != (self.failed_rule is None):
            raise ValueError("kept must be true exactly when failed_rule is none")


@dataclass
class FilterConfig:
    license_allowlist: frozenset[str] = DEFAULT_LICENSE_ALLOWLIST
    noise_subjects: frozenset[str] = DEFAULT_NOISE_SUBJECTS
    verb_allowlist: tuple[str, ...] = DEFAULT_VERB_ALLOWLIST
    noise_substrings: tuple[str | tuple[str, ...], ...] = DEFAULT_NOISE_SUBSTRINGS
    blacklist_patterns: tuple[tuple[str, str], ...] = DEFAULT_BLACKLIST_PATTERNS
    downsample_prefixes: tuple[str, ...] = DEFAULT_DOWNSAMPLE_PREFIXES
    downsample_keep_probability: float = 0.10
    token_min: int = 50
    token_max: int = 768
    seed: int | None = None
    tokenizer: str = "whitespace-punct"
    extension_map: dict[str, tuple[str, ...]] = field(
        default_factory=lambda: dict(DEFAULT_EXTENSION_MAP)
    )
    opt_out_repos: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if not 0.0 <= self.downsample_keep_probability <= 1.0:
            raise ConfigError("downsample_keep_probability must be in [0, 1]")
        if self.token_min > self.token_max:
            raise ConfigError("token_min must be <= token_max")
        if self.seed is not None and self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        compile_blacklist(self.blacklist_patterns)  # fail fast on bad patterns

    def downsampling_active(self) -> bool:
        return bool(self.downsample_prefixes) and self.downsample_keep_probability < 1.0


def compile_blacklist(patterns: Iterable[tuple[str, str]]) -> tuple[tuple[str, Pattern[str]], ...]:
    compiled = []
    for rule_id, source in patterns:
        try:
            compiled.append((rule_id, re.compile(source)))
        except re.error as exc:
            raise ConfigError(f"blacklist pattern {rule_id!r} does not compile: {exc}") from exc
    return tuple(compiled)


# --------------------------------------------------------------------------
# Subject cleaning
# --------------------------------------------------------------------------

_SKIP_CI = re.compile(r"\[(?:skip ci|ci skip)\]", re.IGNORECASE)
_LEAD_BRACKET = re.compile(r"^(?:\[[^\[\]]*\]|\([^()]*\))")
_TRAIL_BRACKET = re.compile(r"(?:\[[^\[\]]*\]|\([^()]*\))$")
_LEAD_COLON = re.compile(r"^\S+?:")


def _clean_pass(subject: str) -> str:
    s = _SKIP_CI.sub("", subject)
    s = s.strip()
    s = _LEAD_BRACKET.sub("", s).strip()
    s = _TRAIL_BRACKET.sub("", s).strip()
    s = _LEAD_COLON.sub("", s, count=1).strip()
    return s


def clean_subject(subject: str) -> str:
    """Strip CI tags, bracketed groups at either end, and leading colon
    prefixes from a commit subject.

    Each pass removes at most one group per position; the pass is iterated to
    a fixed point, which makes the function idempotent on every input.
    """
    current = subject
    while True:
        cleaned = _clean_pass(current)
        if cleaned == current:
            return cleaned
        current = cleaned


# --------------------------------------------------------------------------
# Subject predicates
# --------------------------------------------------------------------------


def starts_with_allowed_verb(subject: str, allowlist: Iterable[str]) -> bool:
    """True iff the lowercased subject begins with an allowlisted word or
    phrase at a word boundary ("added" does not count for "add")."""
    lowered = subject.lower()
    for entry in allowlist:
        if not lowered.startswith(entry):
            continue
        if not entry or not entry[-1].isalpha():
            return True
        rest = lowered[len(entry) :]
        if not rest or not rest[0].isalpha():
            return True
    return False


def _whole_word_present(text: str, word: str) -> bool:
    return re.search(rf"(?<![0-9A-Za-z]){re.escape(word)}(?![0-9A-Za-z])", text) is not None


def matches_noise_substring(
    subject: str, entries: Iterable[str | tuple[str, ...]]
) -> str | None:
    """Return the first matching noise entry, or None.

    Entries that are single tokens of at most three letters ("wip") match as
    whole words so that e.g. "swipe" survives; longer entries match as plain
    substrings. Tuple entries are conjunctive: all members must appear.
    """
    lowered = subject.lower()
    for entry in entries:
        if isinstance(entry, tuple):
            if all(member in lowered for member in entry):
                return " + ".join(entry)
        elif len(entry) <= 3 and entry.isalpha():
            if _whole_word_present(lowered, entry):
                return entry
        elif entry in lowered:
            return entry
    return None


def matches_blacklist_regex(
    subject: str, patterns: Iterable[tuple[str, Pattern[str]]]
) -> str | None:
    """Return the id of the first pattern matching the (lowercased) subject."""
    for rule_id, pattern in patterns:
        if pattern.search(subject):
            return rule_id
    return None


def downsample_draw(seed: int, commit_id: str) -> float:
    """Deterministic uniform draw in [0, 1) keyed by (seed, commit_id).

    64-bit blake2b digest of the seed and id joined by an unambiguous
    delimiter, read big-endian, divided by 2**64.
    """
    payload = f"{seed}\x1f{commit_id}".encode("utf-8")
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "big") / 2.0**64


def _starts_with_uppercase(text: str) -> bool:
    return bool(text) and unicodedata.category(text[0]) == "Lu"


def _extension_of(path: str) -> str:
    basename = path.rsplit("/", 1)[-1]
    if "." not in basename:
        return ""
    return basename.rsplit(".", 1)[-1].lower()


# --------------------------------------------------------------------------
# Stage evaluation
# --------------------------------------------------------------------------


def apply_base_filters(record: CommitRecord, config: FilterConfig) -> FilterDecision:
    """Base-stage decision: license, subject length, noise subject, opt-out."""
    fail = None
    lowered = record.subject.lower()
    if record.license and record.license not in config.license_allowlist:
        fail = "license"
    elif not SUBJECT_MIN_CHARS <= len(record.subject) <= SUBJECT_MAX_CHARS:
        fail = "subject-length"
    elif lowered in config.noise_subjects or lowered.startswith("merge"):
        fail = "noise-subject"
    elif record.repo in config.opt_out_repos:
        fail = "opt-out"
    return FilterDecision(kept=fail is None, failed_rule=fail, stage="base")


def apply_ft_filters(
    record: CommitRecord,
    config: FilterConfig,
    compiled_blacklist: tuple[tuple[str, Pattern[str]], ...] | None = None,
) -> FilterDecision:
    """Instruction-stage decision. Assumes the record already passed the base
    stage (the pipeline enforces that ordering)."""
    if compiled_blacklist is None:
        compiled_blacklist = compile_blacklist(config.blacklist_patterns)

    def reject(rule: str) -> FilterDecision:
        return FilterDecision(kept=False, failed_rule=rule, stage="ft")

    if len(record.old_contents) > PRE_CODE_MAX_CHARS:
        return reject("pre-code-length")
    if len(record.new_contents) == 0:
        return reject("post-code-empty")
    if record.old_contents == record.new_contents:
        return reject("no-change")
    if "#" in record.subject:
        return reject("hashtag")

    language = record.language.lower()
    allowed_exts = config.extension_map.get(language)
    if allowed_exts is not None and _extension_of(record.new_path) not in allowed_exts:
        return reject("extension")

    basename = record.new_path.rsplit("/", 1)[-1]
    if basename and basename.lower() in record.subject.lower():
        return reject("filename-in-message")

    cleaned = clean_subject(record.subject)
    if not _starts_with_uppercase(cleaned):
        return reject("capitalization")
    if not WORDS_MIN_EXCL < len(cleaned.split()) < WORDS_MAX_EXCL:
        return reject("word-count")
    if not MESSAGE_MIN_CHARS_EXCL < len(cleaned) < MESSAGE_MAX_CHARS_EXCL:
        return reject("message-length")

    total_tokens = (
        count_tokens(record.old_contents, config.tokenizer)
        + 1  # separator between old and new code counts as one token
        + count_tokens(record.new_contents, config.tokenizer)
    )
    if not config.token_min <= total_tokens <= config.token_max:
        return reject("token-count")

    if not starts_with_allowed_verb(cleaned, config.verb_allowlist):
        return reject("verb-start")
    if matches_noise_substring(cleaned, config.noise_substrings) is not None:
        return reject("noise-substring")
    if matches_blacklist_regex(cleaned.lower(), compiled_blacklist) is not None:
        return reject("regex")

    if any(cleaned.startswith(prefix) for prefix in config.downsample_prefixes):
        if config.downsample_keep_probability < 1.0:
            if config.seed is None:
                raise ConfigError("seed is required when downsampling is active")
            if downsample_draw(config.seed, record.commit_id) >= config.downsample_keep_probability:
                return reject("downsample")

    return FilterDecision(kept=True, failed_rule=None, stage="ft")


# --------------------------------------------------------------------------
# Reporting
# --------------------------------------------------------------------------


@dataclass
class WordStat:
    """Mean and standard error of space-separated word counts."""

    count: int = 0
    mean: float | None = None
    stderr: float | None = None

    # Welford accumulator state (not part of equality-relevant payload).
    _m2: float = 0.0

    def add(self, value: float) -> None:
        self.count += 1
        if self.mean is None:
            self.mean = 0.0
        delta = value - self.mean
        self.mean += delta / self.count
        self._m2 += delta * (value - self.mean)
        if self.count >= 2:
            variance = self._m2 / (self.count - 1)
            self.stderr = math.sqrt(variance) / math.sqrt(self.count)
        else:
            self.stderr = None

    def as_dict(self) -> dict:
        return {"count": self.count, "mean": self.mean, "stderr": self.stderr}


_STAT_FIELDS = ("subject", "message", "pre_code", "post_code")


@dataclass
class FilterReport:
    stage: str
    line_count: int = 0
    parse_error_count: int = 0
    input_count: int = 0  # successfully parsed records
    kept_count: int = 0
    per_rule_reject_counts: dict[str, int] = field(default_factory=dict)
    word_stats: dict[str, WordStat] = field(
        default_factory=lambda: {name: WordStat() for name in _STAT_FIELDS}
    )

    def validate(self) -> None:
        if self.kept_count + sum(self.per_rule_reject_counts.values()) != self.input_count:
            raise ValueError("kept_count + rejects must equal input_count")
        if self.input_count + self.parse_error_count != self.line_count:
            raise ValueError("records + parse errors must equal line count")

    def as_dict(self) -> dict:
        rule_ids = [rid for rid, _ in BASE_RULES]
        if self.stage == "ft":
            rule_ids += [rid for rid, _ in FT_RULES]
        return {
            "stage": self.stage,
            "line_count": self.line_count,
            "parse_error_count": self.parse_error_count,
            "input_count": self.input_count,
            "kept_count": self.kept_count,
            "per_rule_reject_counts": {
                rid: self.per_rule_reject_counts.get(rid, 0) for rid in rule_ids
            },
            "word_stats": {name: self.word_stats[name].as_dict() for name in _STAT_FIELDS},
        }


def _observe(stats: dict[str, WordStat], record: CommitRecord) -> None:
    stats["subject"].add(len(record.subject.split()))
    stats["message"].add(len(record.body.split()))
    stats["pre_code"].add(len(record.old_contents.split()))
    stats["post_code"].add(len(record.new_contents.split()))


def compute_word_stats(records: Iterable[CommitRecord]) -> dict[str, WordStat]:
    """Word-count statistics over any record stream (mean and standard error
    of space-separated word counts per field)."""
    stats = {name: WordStat() for name in _STAT_FIELDS}
    for record in records:
        _observe(stats, record)
    return stats


def run_pipeline(
    lines: Iterable[str | bytes],
    config: FilterConfig,
    stage: str,
    out: IO[str] | None = None,
) -> FilterReport:
    """Stream a corpus through the configured stage(s).

    stage "base" applies the base rules; stage "ft" applies base rules then
    instruction rules per record. Kept records are written to ``out`` verbatim
    (original line, one per output line) so unknown keys survive untouched.
    Per-line parse failures are counted and skipped, never fatal. The returned
    report's word statistics describe the kept records.
    """
    if stage not in ("base", "ft"):
        raise ConfigError(f"unknown stage {stage!r}; expected 'base' or 'ft'")
    if stage == "ft" and config.downsampling_active() and config.seed is None:
        raise ConfigError("seed is required when downsampling is active")

    compiled = compile_blacklist(config.blacklist_patterns)
    report = FilterReport(stage=stage)

    for raw in lines:
        report.line_count += 1
        try:
            record = parse_record(raw)
        except MalformedRecordError:
            report.parse_error_count += 1
            continue
        report.input_count += 1

        decision = apply_base_filters(record, config)
        if decision.kept and stage == "ft":
            decision = apply_ft_filters(record, config, compiled)

        if decision.kept:
            report.kept_count += 1
            _observe(report.word_stats, record)
            if out is not None:
                text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
                out.write(text.rstrip("\r\n") + "\n")
        else:
            rule = decision.failed_rule
            report.per_rule_reject_counts[rule] = report.per_rule_reject_counts.get(rule, 0) + 1

    report.validate()
    return report


def config_as_dict(config: FilterConfig) -> dict:
    """Plain-data view of a config, used by --show-config and reports."""
    out: dict = {}
    for f in fields(config):
        value = getattr(config, f.name)
        if isinstance(value, frozenset):
            out[f.name] = sorted(value)
        elif f.name == "noise_substrings":
            out[f.name] = [list(v) if isinstance(v, tuple) else v for v in value]
        elif f.name == "blacklist_patterns":
            out[f.name] = [list(v) for v in value]
        elif f.name == "extension_map":
            out[f.name] = {k: list(v) for k, v in value.items()}
        elif isinstance(value, tuple):
            out[f.name] = list(value)
        else:
            out[f.name] = value
    out["rules"] = {
        "base": [list(r) for r in BASE_RULES],
        "ft": [list(r) for r in FT_RULES],
    }
    return out


def config_from_dict(data: dict) -> FilterConfig:
    """Inverse of config_as_dict for the user-facing config file."""
    known = {f.name for f in fields(FilterConfig)}
    kwargs: dict = {}
    for key, value in data.items():
        if key == "rules":
            continue  # informational output of --show-config; not an input
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        if key in ("license_allowlist", "noise_subjects", "opt_out_repos"):
            kwargs[key] = frozenset(value)
        elif key == "noise_substrings":
            kwargs[key] = tuple(tuple(v) if isinstance(v, list) else v for v in value)
        elif key == "blacklist_patterns":
            kwargs[key] = tuple((rid, src) for rid, src in value)
        elif key in ("verb_allowlist", "downsample_prefixes"):
            kwargs[key] = tuple(value)
        elif key == "extension_map":
            kwargs[key] = {k: tuple(v) for k, v in value.items()}
        else:
            kwargs[key] = value
    return FilterConfig(**kwargs)
