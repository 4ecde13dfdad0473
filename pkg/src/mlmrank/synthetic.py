"""Deterministic synthetic fixtures for training and probing studies.

Two families of sets:

- separable sets, where every gold hypothesis contains a marker word that
  no distractor uses, so a context-sensitive model can learn the task;
- probe sets, used with a count backend fit on :func:`probe_corpus`, where
  gold hypotheses either come from a high-frequency vocabulary (biased) or
  from the same pool as the distractors (unbiased).
"""

from __future__ import annotations

import random

from .data import Example, ExampleSet, Relation, Split, Task
from .textspan import Words

PREMISE_VOCAB: Words = tuple(f"ctx{i:02d}" for i in range(10))
FILLER_VOCAB: Words = tuple(f"pad{i:02d}" for i in range(20))
DEFAULT_MARKER = "veritex"

COMMON_WORDS: Words = tuple(f"common{i:02d}" for i in range(12))
RARE_WORDS: Words = tuple(f"rare{i:02d}" for i in range(12))


def separable_set(
    size: int,
    *,
    seed: int,
    split: Split,
    arity: int = 2,
    premise_len: int = 3,
    hypothesis_len: int = 3,
    marker: str = DEFAULT_MARKER,
) -> ExampleSet:
    """A set whose gold hypotheses all contain ``marker`` and whose
    distractors never do. Deterministic for a fixed seed."""
    if size < 1:
        raise ValueError("size must be positive")
    if arity < 2:
        raise ValueError("arity must be at least 2")
    if hypothesis_len < 1:
        raise ValueError("hypothesis_len must be positive")
    rng = random.Random(seed)
    examples = []
    for index in range(size):
        premise = tuple(rng.choice(PREMISE_VOCAB) for _ in range(premise_len))
        gold_index = rng.randrange(arity)
        hypotheses = []
        for position in range(arity):
            words = [rng.choice(FILLER_VOCAB) for _ in range(hypothesis_len)]
            if position == gold_index:
                words[rng.randrange(hypothesis_len)] = marker
            hypotheses.append(tuple(words))
        examples.append(
            Example(
                id=f"sep-{split.value}-{index:05d}",
                premise=premise,
                hypotheses=tuple(hypotheses),
                gold_index=gold_index,
                task=Task.SYNTHETIC,
                relation=Relation.NONE,
            )
        )
    return ExampleSet(tuple(examples), split)


def separating_words(example_set: ExampleSet) -> tuple[str, ...]:
    """Words present in every gold hypothesis and in no distractor.

    A plain counting check: a non-empty result certifies that gold and
    distractor hypotheses are distinguishable from surface evidence
    alone, before any model is trained. Labeled examples only.
    """
    candidates: set[str] | None = None
    labeled = 0
    for example in example_set:
        if example.gold_index is None:
            continue
        labeled += 1
        gold_words = set(example.hypotheses[example.gold_index])
        distractor_words: set[str] = set()
        for position, hypothesis in enumerate(example.hypotheses):
            if position != example.gold_index:
                distractor_words.update(hypothesis)
        usable = gold_words - distractor_words
        candidates = usable if candidates is None else candidates & usable
        if not candidates:
            return ()
    if labeled == 0:
        return ()
    return tuple(sorted(candidates or ()))


def probe_corpus() -> tuple[Words, ...]:
    """Fitting corpus for probe studies: common words dominate the counts.

    Word i of COMMON_WORDS appears 30 + 2i times, word i of RARE_WORDS
    appears 1 + (i mod 3) times, so per-word frequencies vary but the two
    vocabularies stay widely separated.
    """
    sequences: list[Words] = []
    for index, word in enumerate(COMMON_WORDS):
        sequences.append((word,) * (30 + 2 * index))
    for index, word in enumerate(RARE_WORDS):
        sequences.append((word,) * (1 + index % 3))
    return tuple(sequences)


def probe_set(
    size: int,
    *,
    seed: int,
    split: Split,
    biased: bool,
    arity: int = 4,
    premise_len: int = 3,
    hypothesis_len: int = 4,
) -> ExampleSet:
    """A probe fixture. Biased: gold hypotheses use COMMON_WORDS and
    distractors RARE_WORDS. Unbiased: every hypothesis samples from the
    combined pool, so hypothesis-only accuracy has no edge over chance."""
    if size < 1:
        raise ValueError("size must be positive")
    if arity < 2:
        raise ValueError("arity must be at least 2")
    rng = random.Random(seed)
    pool = COMMON_WORDS + RARE_WORDS
    examples = []
    for index in range(size):
        premise = tuple(rng.choice(PREMISE_VOCAB) for _ in range(premise_len))
        gold_index = rng.randrange(arity)
        hypotheses = []
        for position in range(arity):
            if biased:
                source = COMMON_WORDS if position == gold_index else RARE_WORDS
            else:
                source = pool
            hypotheses.append(tuple(rng.choice(source) for _ in range(hypothesis_len)))
        kind = "biased" if biased else "unbiased"
        examples.append(
            Example(
                id=f"probe-{kind}-{split.value}-{index:05d}",
                premise=premise,
                hypotheses=tuple(hypotheses),
                gold_index=gold_index,
                task=Task.SYNTHETIC,
                relation=Relation.NONE,
            )
        )
    return ExampleSet(tuple(examples), split)
