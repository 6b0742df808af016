"""Generation backends.

A backend is a callable taking a GenerationRequest and returning exactly
``request.n`` strings. Model inference is out of scope for this package, so
the shipped backends are a subprocess bridge (one process call per sample,
prompt on stdin, completion on stdout, decoding parameters in the
environment) and deterministic stubs for testing and calibration.

The request carries the TaskInstance alongside the prompt so that reference
stubs can answer with the task's canonical solution; model-facing backends
should treat the prompt as the entire input.
"""
from __future__ import annotations

import shlex
import subprocess
from dataclasses import dataclass, field
from typing import Callable, Protocol

from .tasks import TaskInstance

__all__ = [
    "DecodingConfig",
    "GenerationRequest",
    "GenerationBatch",
    "Backend",
    "oracle_backend",
    "failing_backend",
    "half_oracle_backend",
    "fixed_backend",
    "subprocess_backend",
    "make_backend",
    "BACKEND_SPECS",
]

FAILING_TEXT = "!!! this is not parseable code !!!"


@dataclass(frozen=True)
class DecodingConfig:
    temperature: float = 0.2
    top_p: float = 0.95
    max_length: int | None = None


@dataclass(frozen=True)
class GenerationRequest:
    task: TaskInstance
    prompt: str
    n: int
    decoding: DecodingConfig = field(default_factory=DecodingConfig)


@dataclass
class GenerationBatch:
    task_id: str
    samples: list[str]
    n: int
    decoding: DecodingConfig

    def __post_init__(self) -> None:
        if len(self.samples) != self.n:
            raise ValueError(f"expected {self.n} samples, got {len(self.samples)}")


class Backend(Protocol):
    def __call__(self, request: GenerationRequest) -> list[str]: ...


def oracle_backend(request: GenerationRequest) -> list[str]:
    """Always answers with the task's canonical solution."""
    return [request.task.canonical_solution] * request.n


def failing_backend(request: GenerationRequest) -> list[str]:
    """Always answers with text no language will compile."""
    return [FAILING_TEXT] * request.n


def half_oracle_backend(request: GenerationRequest) -> list[str]:
    """Canonical solution for the first half of the samples, garbage for the
    rest (useful for exercising fractional pass@k values)."""
    half = request.n // 2
    return [request.task.canonical_solution] * half + [FAILING_TEXT] * (request.n - half)


def fixed_backend(text: str) -> Backend:
    def backend(request: GenerationRequest) -> list[str]:
        return [text] * request.n

    return backend


def subprocess_backend(argv: list[str]) -> Backend:
    """One process invocation per sample: prompt on stdin, completion on
    stdout. Decoding parameters and the sample index are exported as
    GEN_TEMPERATURE, GEN_TOP_P, GEN_MAX_LENGTH, GEN_SAMPLE_INDEX."""
    import os

    def backend(request: GenerationRequest) -> list[str]:
        samples = []
        for index in range(request.n):
            env = dict(os.environ)
            env["GEN_TEMPERATURE"] = str(request.decoding.temperature)
            env["GEN_TOP_P"] = str(request.decoding.top_p)
            if request.decoding.max_length is not None:
                env["GEN_MAX_LENGTH"] = str(request.decoding.max_length)
            env["GEN_SAMPLE_INDEX"] = str(index)
            proc = subprocess.run(
                argv,
                input=request.prompt,
                capture_output=True,
                text=True,
                env=env,
                check=True,
            )
            samples.append(proc.stdout)
        return samples

    return backend


BACKEND_SPECS = ("oracle", "failing", "half-oracle", "fixed:<path>", "cmd:<command>")


def make_backend(spec: str) -> Backend:
    """Build a backend from a CLI spec string.

    oracle | failing | half-oracle | fixed:<path to a response file> |
    cmd:<shell command>
    """
    if spec == "oracle":
        return oracle_backend
    if spec == "failing":
        return failing_backend
    if spec == "half-oracle":
        return half_oracle_backend
    if spec.startswith("fixed:"):
        with open(spec[len("fixed:") :], encoding="utf-8") as fh:
            return fixed_backend(fh.read())
    if spec.startswith("cmd:"):
        return subprocess_backend(shlex.split(spec[len("cmd:") :]))
    raise ValueError(f"unknown backend spec {spec!r}; expected one of {BACKEND_SPECS}")
