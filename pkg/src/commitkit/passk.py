"""Unbiased pass@k estimation.

Given n samples per task of which c pass all tests, the probability that a
random size-k subset contains at least one passing sample is

    pass@k = 1 - C(n-c, k) / C(n, k)
           = 1 - prod_{i=0..k-1} (n-c-i) / (n-i)

The product form avoids the huge intermediate binomials; it is evaluated over
exact rationals and rounded to float once, so results agree bit-for-bit with
subset enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["EvalOutcome", "pass_at_k", "aggregate"]


@dataclass(frozen=True)
class EvalOutcome:
    task_id: str
    n: int
    c: int

    def __post_init__(self) -> None:
        if not 0 <= self.c <= self.n:
            raise ValueError(f"need 0 <= c <= n, got c={self.c}, n={self.n}")


def _pass_at_k_exact(n: int, c: int, k: int) -> Fraction:
    if n < 0 or c < 0:
        raise ValueError("n and c must be non-negative")
    if c > n:
        raise ValueError(f"c ({c}) cannot exceed n ({n})")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if c == 0:
        return Fraction(0)
    if n - c < k:
        return Fraction(1)  # every size-k subset must contain a passing sample
    failing = Fraction(1)
    for i in range(k):
        failing *= Fraction(n - c - i, n - i)
    return 1 - failing


def pass_at_k(n: int, c: int, k: int) -> float:
    return float(_pass_at_k_exact(n, c, k))


def aggregate(outcomes: list[EvalOutcome], k: int) -> float:
    """Unweighted mean of per-task pass@k.

    The mean is taken over exact rationals and rounded once, so ten tasks
    that each score 5/6 aggregate to exactly float(5/6) rather than an
    accumulation of float rounding.
    """
    if not outcomes:
        raise ValueError("cannot aggregate an empty outcome list")
    total = sum(_pass_at_k_exact(o.n, o.c, k) for o in outcomes)
    return float(total / len(outcomes))
