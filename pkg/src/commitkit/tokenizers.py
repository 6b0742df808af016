"""Pluggable token counting.

The filter pipeline gates records on token counts. Counting is behind a small
registry so a trained subword vocabulary can be dropped in; the defaults are
deliberately simple and dependency-free:

``whitespace``
    str.split() tokens.
``whitespace-punct``
    words plus each punctuation character as its own token. This is the
    default used by the filter configuration.

A minimal byte-level BPE is also provided (``BytePairEncoder``) so counts can
be produced from an explicit merges list loaded from a file. It exists to make
the registry genuinely pluggable and testable, not to replicate any particular
trained vocabulary.
"""
from __future__ import annotations

import json
import re
from typing import Callable

__all__ = [
    "UnknownTokenizerError",
    "register_tokenizer",
    "count_tokens",
    "available_tokenizers",
    "BytePairEncoder",
    "load_bpe_file",
]


class UnknownTokenizerError(KeyError):
    pass


_WORD_OR_PUNCT = re.compile(r"\w+|[^\w\s]")

_REGISTRY: dict[str, Callable[[str], int]] = {}


def register_tokenizer(name: str, count_fn: Callable[[str], int]) -> None:
    _REGISTRY[name] = count_fn


def available_tokenizers() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def count_tokens(text: str, tokenizer: str = "whitespace-punct") -> int:
    try:
        fn = _REGISTRY[tokenizer]
    except KeyError:
        raise UnknownTokenizerError(
            f"unknown tokenizer {tokenizer!r}; available: {', '.join(available_tokenizers())}"
        ) from None
    return fn(text)


register_tokenizer("whitespace", lambda text: len(text.split()))
register_tokenizer("whitespace-punct", lambda text: len(_WORD_OR_PUNCT.findall(text)))


class BytePairEncoder:
    """Greedy byte-pair encoder over UTF-8 bytes.

    ``merges`` is an ordered list of (left, right) byte-string pairs; earlier
    entries merge first, exactly as in standard BPE inference. Token count is
    the length of the final symbol sequence.
    """

    def __init__(self, merges: list[tuple[bytes, bytes]]) -> None:
        self.ranks = {pair: i for i, pair in enumerate(merges)}

    def encode(self, text: str) -> list[bytes]:
        symbols = [bytes([b]) for b in text.encode("utf-8")]
        while len(symbols) > 1:
            best_rank = None
            best_idx = -1
            for i in range(len(symbols) - 1):
                rank = self.ranks.get((symbols[i], symbols[i + 1]))
                if rank is not None and (best_rank is None or rank < best_rank):
                    best_rank, best_idx = rank, i
            if best_rank is None:
                break
            symbols[best_idx : best_idx + 2] = [symbols[best_idx] + symbols[best_idx + 1]]
        return symbols

    def count(self, text: str) -> int:
        return len(self.encode(text))


def load_bpe_file(path: str, name: str | None = None) -> BytePairEncoder:
    """Load a merges list from JSON ([["ab","c"], ...]) and register it.

    Pairs are UTF-8 encoded in file order. Registered under ``name`` when
    given, making the vocabulary usable as FilterConfig.tokenizer.
    """
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    merges = [(a.encode("utf-8"), b.encode("utf-8")) for a, b in raw]
    enc = BytePairEncoder(merges)
    if name:
        register_tokenizer(name, enc.count)
    return enc
