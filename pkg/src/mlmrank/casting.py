"""Casting of ranking examples into scoring-ready word sequences.

Two output shapes:

- full-text: one natural sentence built as
  (left, premise, middle, hypothesis, right) from the task's conjunction
  entry, with word-index spans recording where the premise and hypothesis
  landed. COPA joins its clauses with "because"/"so" and needs a small
  surface adjustment (drop the premise's trailing period, lowercase the
  hypothesis opener) to read as one sentence.
- separated-sentence: two segments for classifier-style consumers. COPA
  cause examples swap premise and hypothesis so every pair reads in
  effect order.

Conjunction entries are data, not code: the defaults below can be
overridden from a JSON config file, so a new task needs no code change.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .data import Example, Relation, Task
from .errors import SchemaError
from .textspan import Span, Words

COPA_MIDDLE_WORDS = ("because", "so")


class AdjustmentPolicy(str, Enum):
    """Surface adjustment applied before joining premise and hypothesis."""

    NONE = "none"
    # Strip one trailing period from the premise and lowercase the first
    # character of the hypothesis; used where a middle conjunction fuses
    # two standalone sentences into one clause pair.
    CLAUSE_JOIN = "clause_join"


@dataclass(frozen=True)
class ConjunctionSpec:
    """Per-task casting entry.

    ``left``/``middle``/``right`` are the conjunction word sequences
    inserted around premise and hypothesis in full-text order.
    ``hypothesis_prefix`` is the label attached to a hypothesis whenever
    it appears as its own segment (separated second sentence,
    hypothesis-only probing).
    """

    left: Words = ()
    middle: Words = ()
    right: Words = ()
    adjustment: AdjustmentPolicy = AdjustmentPolicy.NONE
    hypothesis_prefix: Words = ()

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "middle", tuple(self.middle))
        object.__setattr__(self, "right", tuple(self.right))
        object.__setattr__(self, "hypothesis_prefix", tuple(self.hypothesis_prefix))


CastingConfig = dict[tuple[Task, Relation], ConjunctionSpec]

DEFAULT_CASTING: CastingConfig = {
    (Task.COPA, Relation.CAUSE): ConjunctionSpec(
        middle=("because",), adjustment=AdjustmentPolicy.CLAUSE_JOIN
    ),
    (Task.COPA, Relation.EFFECT): ConjunctionSpec(
        middle=("so",), adjustment=AdjustmentPolicy.CLAUSE_JOIN
    ),
    (Task.COMMONSENSEQA, Relation.NONE): ConjunctionSpec(
        left=("Q:",), middle=("A:",), hypothesis_prefix=("A:",)
    ),
    (Task.SWAG, Relation.NONE): ConjunctionSpec(),
    (Task.HELLASWAG, Relation.NONE): ConjunctionSpec(),
    (Task.SYNTHETIC, Relation.NONE): ConjunctionSpec(),
}


def load_casting_config(path) -> CastingConfig:
    """Read conjunction entries from JSON, overlaid on the defaults.

    Keys are "task" or "task:relation"; values may set any subset of
    {left, middle, right, adjustment, hypothesis_prefix}.
    """
    with open(path, encoding="utf-8") as handle:
        raw = json.load(handle)
    if not isinstance(raw, dict):
        raise SchemaError(f"{path}: casting config must be a JSON object")
    config = dict(DEFAULT_CASTING)
    for key, entry in raw.items():
        task_name, _, relation_name = key.partition(":")
        try:
            task = Task(task_name)
            relation = Relation(relation_name) if relation_name else Relation.NONE
        except ValueError as exc:
            raise SchemaError(f"{path}: bad casting key {key!r}: {exc}") from None
        if not isinstance(entry, dict):
            raise SchemaError(f"{path}: entry for {key!r} must be an object")
        try:
            adjustment = AdjustmentPolicy(entry.get("adjustment", "none"))
        except ValueError:
            raise SchemaError(
                f"{path}: unknown adjustment {entry.get('adjustment')!r} for {key!r}"
            ) from None
        config[(task, relation)] = ConjunctionSpec(
            left=tuple(entry.get("left", ())),
            middle=tuple(entry.get("middle", ())),
            right=tuple(entry.get("right", ())),
            adjustment=adjustment,
            hypothesis_prefix=tuple(entry.get("hypothesis_prefix", ())),
        )
    return config


def conjunction_for(
    task: Task, relation: Relation, config: CastingConfig | None = None
) -> ConjunctionSpec:
    """The casting entry for a task and relation pair."""
    if task is Task.COPA and relation not in (Relation.CAUSE, Relation.EFFECT):
        raise ValueError("COPA casting requires a cause or effect relation")
    table = DEFAULT_CASTING if config is None else config
    try:
        return table[(task, relation)]
    except KeyError:
        raise ValueError(f"no casting entry for task={task.value} relation={relation.value}") from None


@dataclass(frozen=True)
class FullTextInput:
    """One joined word sequence plus the premise and hypothesis spans.

    The premise span may be empty only for hypothesis-only inputs; it
    always precedes the hypothesis span.
    """

    words: Words
    premise_span: Span
    hypothesis_span: Span

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        total = len(self.words)
        for name, span in (("premise", self.premise_span), ("hypothesis", self.hypothesis_span)):
            if span.stop > total:
                raise ValueError(f"{name} span {span} exceeds {total} words")
        if len(self.hypothesis_span) == 0:
            raise ValueError("hypothesis span must be non-empty")
        if self.premise_span.stop > self.hypothesis_span.start:
            raise ValueError("premise span must precede the hypothesis span")

    @property
    def premise_words(self) -> Words:
        return self.premise_span.slice(self.words)

    @property
    def hypothesis_words(self) -> Words:
        return self.hypothesis_span.slice(self.words)

    def span_for(self, target) -> Span:
        # target is scoring.Target or its string value
        value = getattr(target, "value", target)
        return self.premise_span if value == "premise" else self.hypothesis_span


@dataclass(frozen=True)
class PairInput:
    """Two separate segments, classifier-style."""

    first: Words
    second: Words

    def __post_init__(self):
        object.__setattr__(self, "first", tuple(self.first))
        object.__setattr__(self, "second", tuple(self.second))
        if not self.first or not self.second:
            raise ValueError("both segments of a pair input must be non-empty")

    @property
    def words(self) -> Words:
        return self.first + self.second


def _strip_trailing_period(words: Words) -> Words:
    last = words[-1]
    if not last.endswith("."):
        return words
    trimmed = last[:-1]
    if trimmed:
        return words[:-1] + (trimmed,)
    if len(words) > 1:
        return words[:-1]
    raise ValueError("premise is a lone period; cannot adjust")


def _lowercase_opener(words: Words) -> Words:
    first = words[0]
    return (first[0].lower() + first[1:],) + words[1:]


def _adjusted(policy: AdjustmentPolicy, premise: Words, hypothesis: Words) -> tuple[Words, Words]:
    if policy is AdjustmentPolicy.CLAUSE_JOIN:
        return _strip_trailing_period(premise), _lowercase_opener(hypothesis)
    return premise, hypothesis


def _check_hypothesis_index(example: Example, hypothesis_index: int) -> None:
    if not 0 <= hypothesis_index < len(example.hypotheses):
        raise ValueError(
            f"hypothesis index {hypothesis_index} out of range for example {example.id}"
        )


def to_full_text(
    example: Example, hypothesis_index: int, config: CastingConfig | None = None
) -> FullTextInput:
    """Cast one premise-hypothesis pair into the full-text shape."""
    _check_hypothesis_index(example, hypothesis_index)
    spec = conjunction_for(example.task, example.relation, config)
    premise, hypothesis = _adjusted(
        spec.adjustment, example.premise, example.hypotheses[hypothesis_index]
    )
    words = spec.left + premise + spec.middle + hypothesis + spec.right
    premise_start = len(spec.left)
    premise_span = Span(premise_start, premise_start + len(premise))
    hypothesis_start = premise_span.stop + len(spec.middle)
    hypothesis_span = Span(hypothesis_start, hypothesis_start + len(hypothesis))
    return FullTextInput(words=words, premise_span=premise_span, hypothesis_span=hypothesis_span)


def to_separated_sentence(
    example: Example, hypothesis_index: int, config: CastingConfig | None = None
) -> PairInput:
    """Cast one pair into two segments.

    COPA cause examples come out reversed (hypothesis first) so that the
    pair reads in effect order; other tasks keep premise first. Prefix
    labels from the casting entry attach to their segments.
    """
    _check_hypothesis_index(example, hypothesis_index)
    spec = conjunction_for(example.task, example.relation, config)
    premise_segment = spec.left + example.premise
    hypothesis_segment = spec.hypothesis_prefix + example.hypotheses[hypothesis_index]
    if example.task is Task.COPA and example.relation is Relation.CAUSE:
        return PairInput(first=hypothesis_segment, second=premise_segment)
    return PairInput(first=premise_segment, second=hypothesis_segment)


def to_hypothesis_only(
    example: Example, hypothesis_index: int, config: CastingConfig | None = None
) -> FullTextInput:
    """A hypothesis with its prefix label and an empty premise span.

    Used by probing: the premise and any middle conjunction are dropped,
    and only the hypothesis span is available for masking.
    """
    _check_hypothesis_index(example, hypothesis_index)
    spec = conjunction_for(example.task, example.relation, config)
    hypothesis = example.hypotheses[hypothesis_index]
    words = spec.hypothesis_prefix + hypothesis
    start = len(spec.hypothesis_prefix)
    return FullTextInput(
        words=words,
        premise_span=Span(0, 0),
        hypothesis_span=Span(start, start + len(hypothesis)),
    )


def swap_copa_conjunction(text: FullTextInput) -> FullTextInput:
    """Exchange the middle conjunction between its two clause senses.

    The word between the premise and hypothesis spans must be exactly
    "so" or "because"; applying the swap twice restores the input.
    """
    middle = tuple(text.words[text.premise_span.stop : text.hypothesis_span.start])
    if middle == ("so",):
        replacement = "because"
    elif middle == ("because",):
        replacement = "so"
    else:
        raise ValueError(
            "input has no single so/because middle conjunction; "
            f"found {middle!r} between the spans"
        )
    words = (
        text.words[: text.premise_span.stop]
        + (replacement,)
        + text.words[text.hypothesis_span.start :]
    )
    return FullTextInput(
        words=words, premise_span=text.premise_span, hypothesis_span=text.hypothesis_span
    )
