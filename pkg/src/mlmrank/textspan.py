"""Word-sequence primitives: normalization, splitting, and index spans."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Sequence

Words = tuple[str, ...]


def to_words(text: str) -> Words:
    """Split on whitespace after NFC normalization.

    Punctuation stays attached to its word; consecutive whitespace
    collapses, so joining with single spaces round-trips.
    """
    return tuple(unicodedata.normalize("NFC", text).split())


def join_words(words: Sequence[str]) -> str:
    return " ".join(words)


@dataclass(frozen=True)
class Span:
    """Half-open index range [start, stop) over a word sequence."""

    start: int
    stop: int

    def __post_init__(self):
        if self.start < 0 or self.stop < self.start:
            raise ValueError(f"invalid span [{self.start}, {self.stop})")

    def __len__(self) -> int:
        return self.stop - self.start

    def __contains__(self, index: int) -> bool:
        return self.start <= index < self.stop

    def indices(self) -> range:
        return range(self.start, self.stop)

    def slice(self, words: Sequence[str]) -> Words:
        return tuple(words[self.start : self.stop])
