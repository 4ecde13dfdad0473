"""Masked-word inference contracts shared by every model backend.

A backend answers one kind of question: given a word sequence and a
contiguous masked span, what is the log-probability of each original
word at its masked position, with all span words hidden simultaneously?
Backends own their tokenization; the built-in ones are word-level, so
one word is one maskable unit. An adapter for a subword model must mask
every unit of a word at once and report the word's log-probability as
the sum over its units.

All log-probabilities are natural logs, accumulated in 64-bit floats,
finite, and never positive.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..errors import BackendError
from ..textspan import Span, Words

# Stand-in for log(0): near the smallest magnitude a float64 can hold
# without underflowing to -inf, keeping scores finite and totally ordered.
LOG_PROB_FLOOR = -745.0


@dataclass(frozen=True)
class MaskQuery:
    """One masked-reconstruction request.

    ``words`` is the complete sequence; ``masked_span`` marks the hidden
    window; ``targets`` are the words whose probabilities are requested,
    one per masked position. A backend must not condition on any word
    inside the span.
    """

    words: Words
    masked_span: Span
    targets: Words

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.masked_span) < 1:
            raise ValueError("masked span must cover at least one word")
        if self.masked_span.stop > len(self.words):
            raise ValueError(
                f"masked span {self.masked_span} exceeds {len(self.words)} words"
            )
        if len(self.targets) != len(self.masked_span):
            raise ValueError(
                f"{len(self.targets)} targets for a span of {len(self.masked_span)} words"
            )

    def context_indices(self) -> tuple[int, ...]:
        return tuple(
            i for i in range(len(self.words)) if i not in self.masked_span
        )


@dataclass(frozen=True)
class MaskResponse:
    """Per-word natural-log probabilities for one query, span order."""

    per_word_log_prob: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.per_word_log_prob)
        object.__setattr__(self, "per_word_log_prob", values)
        for value in values:
            if not np.isfinite(value) or value > 0.0:
                raise ValueError(f"log-probability {value!r} is not a finite non-positive value")

    @property
    def total(self) -> float:
        return float(sum(self.per_word_log_prob))


@dataclass(frozen=True)
class BackendDescriptor:
    name: str
    differentiable: bool
    thread_safe: bool
    max_batch: int

    def __post_init__(self):
        if self.max_batch < 1:
            raise ValueError("max_batch must be at least 1")


class Backend(ABC):
    """Interface every scoring backend implements."""

    @property
    @abstractmethod
    def descriptor(self) -> BackendDescriptor: ...

    @abstractmethod
    def fill_log_probs(self, queries: Sequence[MaskQuery]) -> list[MaskResponse]:
        """Log-probabilities for each query, order-preserving.

        The caller must keep ``len(queries)`` within
        ``descriptor.max_batch``; use :func:`fill_in_chunks` otherwise.
        """

    def _check_batch(self, queries: Sequence[MaskQuery]) -> None:
        limit = self.descriptor.max_batch
        if len(queries) > limit:
            raise ValueError(f"batch of {len(queries)} exceeds max_batch={limit}")


class DifferentiableBackend(Backend):
    """A backend whose parameters can be trained through its scores."""

    @property
    @abstractmethod
    def parameters(self) -> Mapping[str, np.ndarray]:
        """Live parameter arrays, keyed by name."""

    @abstractmethod
    def grads(
        self,
        queries: Sequence[MaskQuery],
        upstream: Sequence[Sequence[float]],
    ) -> dict[str, np.ndarray]:
        """Parameter gradients for sum_q sum_t upstream[q][t] * log_prob[q][t].

        One upstream sensitivity per target word of each query. The same
        parameter set serves every query in the batch.
        """

    @abstractmethod
    def pooled(self, words: Words) -> np.ndarray:
        """Mean of the per-word context representations of ``words``."""

    @abstractmethod
    def pooled_grads(
        self, words: Words, upstream: np.ndarray, into: dict[str, np.ndarray]
    ) -> None:
        """Accumulate d(upstream . pooled(words))/d(params) into ``into``."""

    @abstractmethod
    def get_state(self) -> dict[str, np.ndarray]:
        """Deep copy of the parameters, suitable for snapshots."""

    @abstractmethod
    def set_state(self, state: Mapping[str, np.ndarray]) -> None: ...

    def zero_grads(self) -> dict[str, np.ndarray]:
        return {name: np.zeros_like(array) for name, array in self.parameters.items()}


def fill_in_chunks(backend: Backend, queries: Sequence[MaskQuery]) -> list[MaskResponse]:
    """Run queries through the backend in max_batch-sized chunks.

    Chunk boundaries never affect the results; the concatenated responses
    equal what a single unbounded call would return.
    """
    limit = backend.descriptor.max_batch
    responses: list[MaskResponse] = []
    for start in range(0, len(queries), limit):
        responses.extend(backend.fill_log_probs(queries[start : start + limit]))
    return responses


def require_valid_remote_value(value, context: str) -> float:
    """Validate one wire value as a usable log-probability."""
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise BackendError(f"{context}: non-numeric log-probability {value!r}")
    value = float(value)
    if not np.isfinite(value):
        raise BackendError(f"{context}: non-finite log-probability {value!r}")
    if value > 0.0:
        raise BackendError(
            f"{context}: log-probability {value!r} is positive (probability above one)"
        )
    return value
