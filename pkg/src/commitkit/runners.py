"""Sandboxed execution of candidate programs.

Each candidate runs in a fresh temporary directory in its own process group,
killed as a group on timeout so grandchildren cannot linger. Memory/process
caps are applied with setrlimit when the platform supports it; the module
constant RESOURCE_LIMITS_SUPPORTED reports the capability. This is process
isolation, not a container: run only code you are prepared to execute.

Statuses: pass (exit 0), fail (nonzero exit), compile-error (build step
failed), timeout, runtime-error (killed by a signal). Every input maps to a
status; run_candidate never raises for candidate misbehavior.
"""
from __future__ import annotations

import json
import os
import re
import shutil
import signal
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass, field

from .tasks import TaskInstance

__all__ = [
    "RESOURCE_LIMITS_SUPPORTED",
    "RunnerConfig",
    "ExecResult",
    "ToolchainMissingError",
    "RunnerRegistry",
    "default_registry",
    "run_candidate",
    "assemble_program",
    "load_runner_registry_file",
]

try:
    import resource

    RESOURCE_LIMITS_SUPPORTED = True
except ImportError:  # non-POSIX platforms
    resource = None  # type: ignore[assignment]
    RESOURCE_LIMITS_SUPPORTED = False


class ToolchainMissingError(RuntimeError):
    pass


@dataclass(frozen=True)
class RunnerConfig:
    language: str
    run_cmd: tuple[str, ...]  # templates may use {dir} and {file}
    build_cmd: tuple[str, ...] | None = None
    source_name: str = "candidate.txt"
    timeout: float = 15.0
    max_output_bytes: int = 16384
    memory_limit_bytes: int | None = None
    env_allowlist: tuple[str, ...] = ("PATH", "HOME", "LANG", "TMPDIR", "GOCACHE", "GOPATH")

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


@dataclass
class ExecResult:
    status: str  # pass | fail | compile-error | timeout | runtime-error
    output: str
    wall_time: float


def _expand(cmd: tuple[str, ...], directory: str, filename: str) -> list[str]:
    return [part.format(dir=directory, file=filename) for part in cmd]


def _limit_resources(memory_limit: int | None):
    if resource is None:
        return None

    def apply() -> None:
        if memory_limit is not None:
            try:
                resource.setrlimit(resource.RLIMIT_AS, (memory_limit, memory_limit))
            except (ValueError, OSError):
                pass  # best effort; capability is reported, not guaranteed
        try:
            resource.setrlimit(resource.RLIMIT_CORE, (0, 0))
        except (ValueError, OSError):
            pass

    return apply


def _run_stage(
    argv: list[str], cwd: str, cfg: RunnerConfig, deadline_budget: float
) -> tuple[int | None, bytes, bool]:
    """Run one stage. Returns (returncode or None on timeout, output, timed_out)."""
    env = {key: os.environ[key] for key in cfg.env_allowlist if key in os.environ}
    proc = subprocess.Popen(
        argv,
        cwd=cwd,
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
        stdin=subprocess.DEVNULL,
        env=env,
        start_new_session=True,
        preexec_fn=_limit_resources(cfg.memory_limit_bytes),
    )
    try:
        output, _ = proc.communicate(timeout=deadline_budget)
        return proc.returncode, output, False
    except subprocess.TimeoutExpired:
        try:
            os.killpg(os.getpgid(proc.pid), signal.SIGKILL)
        except (ProcessLookupError, PermissionError):
            proc.kill()
        output, _ = proc.communicate()
        return None, output, True


def run_candidate(source: str, cfg: RunnerConfig) -> ExecResult:
    start = time.monotonic()
    workdir = tempfile.mkdtemp(prefix="candidate-")
    try:
        path = os.path.join(workdir, cfg.source_name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(source)

        chunks: list[bytes] = []
        if cfg.build_cmd is not None:
            rc, out, timed_out = _run_stage(
                _expand(cfg.build_cmd, workdir, path), workdir, cfg, cfg.timeout
            )
            chunks.append(out)
            if timed_out:
                return _result("timeout", chunks, cfg, start)
            if rc != 0:
                return _result("compile-error", chunks, cfg, start)

        rc, out, timed_out = _run_stage(
            _expand(cfg.run_cmd, workdir, path), workdir, cfg, cfg.timeout
        )
        chunks.append(out)
        if timed_out:
            return _result("timeout", chunks, cfg, start)
        if rc == 0:
            return _result("pass", chunks, cfg, start)
        if rc is not None and rc < 0:
            return _result("runtime-error", chunks, cfg, start)
        return _result("fail", chunks, cfg, start)
    except OSError as exc:
        return ExecResult("runtime-error", f"runner error: {exc}", time.monotonic() - start)
    finally:
        shutil.rmtree(workdir, ignore_errors=True)


def _result(status: str, chunks: list[bytes], cfg: RunnerConfig, start: float) -> ExecResult:
    blob = b"".join(chunks)[: cfg.max_output_bytes]
    return ExecResult(status, blob.decode("utf-8", errors="replace"), time.monotonic() - start)


# --------------------------------------------------------------------------
# Registry
# --------------------------------------------------------------------------


@dataclass
class RunnerRegistry:
    runners: dict[str, RunnerConfig] = field(default_factory=dict)

    def register(self, cfg: RunnerConfig, probe: bool = True) -> None:
        if probe:
            for cmd in (cfg.build_cmd, cfg.run_cmd):
                if cmd and shutil.which(cmd[0].format(dir="", file="")) is None:
                    raise ToolchainMissingError(
                        f"{cfg.language}: executable {cmd[0]!r} not found on PATH"
                    )
        self.runners[cfg.language] = cfg

    def get(self, language: str) -> RunnerConfig:
        try:
            return self.runners[language]
        except KeyError:
            raise KeyError(
                f"no runner registered for {language!r}; have: {', '.join(sorted(self.runners))}"
            ) from None


def default_registry() -> RunnerRegistry:
    """Interpreter runners for whatever is installed; Python is always
    available since it runs this process."""
    registry = RunnerRegistry()
    registry.register(
        RunnerConfig(
            language="python",
            run_cmd=(sys.executable, "{file}"),
            source_name="candidate.py",
        ),
        probe=False,
    )
    optional = [
        RunnerConfig(
            language="javascript",
            run_cmd=("node", "{file}"),
            source_name="candidate.js",
        ),
        RunnerConfig(
            language="go",
            run_cmd=("go", "run", "{file}"),
            source_name="candidate.go",
        ),
    ]
    for cfg in optional:
        try:
            registry.register(cfg)
        except ToolchainMissingError:
            continue
    return registry


def load_runner_registry_file(path: str) -> RunnerRegistry:
    """Runner registry from JSON: {language: {run_cmd: [...], build_cmd: [...],
    source_name, timeout, ...}}. Toolchains are probed at load."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    registry = RunnerRegistry()
    for language, entry in raw.items():
        cfg = RunnerConfig(
            language=language,
            run_cmd=tuple(entry["run_cmd"]),
            build_cmd=tuple(entry["build_cmd"]) if entry.get("build_cmd") else None,
            source_name=entry.get("source_name", "candidate.txt"),
            timeout=entry.get("timeout", 15.0),
            max_output_bytes=entry.get("max_output_bytes", 16384),
            memory_limit_bytes=entry.get("memory_limit_bytes"),
        )
        registry.register(cfg)
    return registry


# --------------------------------------------------------------------------
# Program assembly
# --------------------------------------------------------------------------


def _join_function(function_start: str, completion: str) -> str:
    if function_start.endswith("\n") or completion.startswith("\n"):
        return function_start + completion
    return function_start + "\n" + completion


_GO_IMPORT_SINGLE = re.compile(r'^import\s+(\(|"[^"]+"|\w+\s+"[^"]+")\s*$')


def _parse_go_unit(text: str) -> tuple[str | None, list[str], list[str]]:
    """Split a Go source into (package line, import items, remaining lines).

    Only the region before the first top-level func is scanned for package
    and import declarations, so string literals inside functions are safe.
    """
    package_line: str | None = None
    imports: list[str] = []
    rest: list[str] = []
    lines = text.split("\n")
    i = 0
    in_decls = True
    while i < len(lines):
        line = lines[i]
        stripped = line.strip()
        if in_decls and stripped.startswith("func "):
            in_decls = False
        if in_decls and stripped.startswith("package "):
            if package_line is None:
                package_line = stripped
            i += 1
            continue
        if in_decls and _GO_IMPORT_SINGLE.match(stripped):
            if stripped == "import (":
                i += 1
                while i < len(lines) and lines[i].strip() != ")":
                    item = lines[i].strip()
                    if item:
                        imports.append(item)
                    i += 1
                i += 1  # closing paren
            else:
                imports.append(stripped[len("import") :].strip())
                i += 1
            continue
        rest.append(line)
        i += 1
    return package_line, imports, rest


def _assemble_go(unit: str, harness: str) -> str:
    """Merge the candidate function unit with the test harness: one package
    clause, one import block with duplicates removed, declarations in order.
    Candidate imports are never repaired, only deduplicated against the
    harness preamble."""
    unit_pkg, unit_imports, unit_rest = _parse_go_unit(unit)
    harness_pkg, harness_imports, harness_rest = _parse_go_unit(harness)
    package_line = unit_pkg or harness_pkg or "package main"
    merged = list(unit_imports)
    for item in harness_imports:
        if item not in merged:
            merged.append(item)
    parts = [package_line, ""]
    if merged:
        parts.append("import (")
        parts.extend(f"\t{item}" for item in merged)
        parts.extend([")", ""])
    body = "\n".join(unit_rest).strip("\n")
    tests = "\n".join(harness_rest).strip("\n")
    if body:
        parts.extend([body, ""])
    if tests:
        parts.append(tests)
    return "\n".join(parts) + "\n"


def assemble_program(scenario: str, function_text: str, task: TaskInstance) -> str:
    """Candidate function plus test harness as one compilable source file.

    The candidate continues the task's function start; the harness follows
    after a blank line. Go sources additionally get their package clause and
    imports merged, since duplicate imports are fatal there.
    """
    unit = _join_function(task.function_start, function_text)
    if task.language.lower() == "go":
        return _assemble_go(unit, task.tests)
    return f"{unit}\n\n{task.tests}\n"
