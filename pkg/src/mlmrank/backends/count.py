"""Count-based reconstruction probabilities from a plain word corpus.

Deterministic and desk-sized: the whole model is an additive-smoothing
count table, so every probability it returns can be recomputed by hand.
In unigram mode a word's probability ignores the query context entirely,
which makes the backend a controlled instrument for isolating what the
scoring layer itself contributes. Bigram mode conditions the first word
of a masked span on the span's left neighbor; deeper span positions have
a masked neighbor, so they fall back to the unigram estimate.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

from ..textspan import Words
from .base import (
    LOG_PROB_FLOOR,
    Backend,
    BackendDescriptor,
    MaskQuery,
    MaskResponse,
)

BOS = "<s>"

_MODES = ("unigram", "bigram")


class CountBackend(Backend):
    """Additive-smoothing count table over a fitting corpus."""

    def __init__(
        self,
        unigram_counts: Counter,
        bigram_counts: Counter,
        left_totals: Counter,
        total: int,
        smoothing_k: float,
        mode: str,
    ):
        self._unigram = unigram_counts
        self._bigram = bigram_counts
        self._left_totals = left_totals
        self._total = total
        self._k = float(smoothing_k)
        self._mode = mode
        self._vocab_size = len(unigram_counts)
        self._descriptor = BackendDescriptor(
            name=f"count-{mode}", differentiable=False, thread_safe=True, max_batch=1024
        )

    @classmethod
    def fit(cls, corpus: Sequence[Words], smoothing_k: float = 1.0, mode: str = "unigram") -> "CountBackend":
        """Build the table from word sequences.

        ``smoothing_k`` is added to every count; with k = 0 an unseen
        word gets probability zero, which is reported as the finite
        floor ``LOG_PROB_FLOOR``.
        """
        if mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
        if smoothing_k < 0:
            raise ValueError("smoothing_k must be non-negative")
        sequences = [tuple(sequence) for sequence in corpus]
        if not sequences or all(len(sequence) == 0 for sequence in sequences):
            raise ValueError("fitting corpus must contain at least one word")
        unigram: Counter = Counter()
        bigram: Counter = Counter()
        left_totals: Counter = Counter()
        for sequence in sequences:
            unigram.update(sequence)
            left = BOS
            for word in sequence:
                bigram[(left, word)] += 1
                left_totals[left] += 1
                left = word
        total = sum(unigram.values())
        return cls(unigram, bigram, left_totals, total, smoothing_k, mode)

    @property
    def descriptor(self) -> BackendDescriptor:
        return self._descriptor

    @property
    def vocab_size(self) -> int:
        return self._vocab_size

    def word_log_prob(self, word: str) -> float:
        """Context-free smoothed log-probability of one word."""
        numerator = self._unigram.get(word, 0) + self._k
        denominator = self._total + self._k * self._vocab_size
        return self._log_ratio(numerator, denominator)

    def conditional_log_prob(self, word: str, left: str) -> float:
        """Smoothed log-probability of ``word`` given its left neighbor."""
        numerator = self._bigram.get((left, word), 0) + self._k
        denominator = self._left_totals.get(left, 0) + self._k * self._vocab_size
        return self._log_ratio(numerator, denominator)

    @staticmethod
    def _log_ratio(numerator: float, denominator: float) -> float:
        if numerator <= 0 or denominator <= 0:
            return LOG_PROB_FLOOR
        return min(0.0, math.log(numerator / denominator))

    def fill_log_probs(self, queries: Sequence[MaskQuery]) -> list[MaskResponse]:
        self._check_batch(queries)
        responses = []
        for query in queries:
            values = []
            for offset, target in enumerate(query.targets):
                if self._mode == "bigram" and offset == 0:
                    start = query.masked_span.start
                    left = query.words[start - 1] if start > 0 else BOS
                    values.append(self.conditional_log_prob(target, left))
                else:
                    values.append(self.word_log_prob(target))
            responses.append(MaskResponse(tuple(values)))
        return responses
