"""Dataset ingestion into a canonical ranking-example schema.

Every loader normalizes its source format into :class:`Example` records:
a premise, an ordered hypothesis set, an optional gold index, and a task
tag that downstream casting uses to pick conjunctions. The canonical
line-delimited format (one JSON object per line) round-trips through
:func:`dump_canonical` / :func:`load_canonical` and is what the CLI emits
for synthetic fixtures.
"""

from __future__ import annotations

import csv
import json
import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Sequence

from .errors import ParseError, SchemaError, SplitError
from .textspan import Words, join_words, to_words

# Number of records carved off the end of the CommonsenseQA validation
# file to stand in for the withheld test set.
CSQA_HELDOUT_SIZE = 611

COPA_ARITY = 2
CSQA_ARITY = 5
SWAG_ARITY = 4


class Task(str, Enum):
    COPA = "copa"
    COMMONSENSEQA = "commonsenseqa"
    SWAG = "swag"
    HELLASWAG = "hellaswag"
    SYNTHETIC = "synthetic"


class Relation(str, Enum):
    CAUSE = "cause"
    EFFECT = "effect"
    NONE = "none"


class Split(str, Enum):
    TRAIN = "train"
    VAL = "val"
    TEST = "test"
    TEST_STAR = "test_star"


@dataclass(frozen=True)
class Example:
    """One ranking instance: a premise and candidate hypotheses.

    ``gold_index`` is None for unlabeled records. COPA examples carry a
    cause/effect relation and exactly two hypotheses; CommonsenseQA
    carries five hypotheses and no relation.
    """

    id: str
    premise: Words
    hypotheses: tuple[Words, ...]
    gold_index: int | None
    task: Task
    relation: Relation = Relation.NONE

    def __post_init__(self):
        if isinstance(self.premise, str) or any(isinstance(h, str) for h in self.hypotheses):
            raise SchemaError("premise and hypotheses must be word sequences, not strings")
        object.__setattr__(self, "premise", tuple(self.premise))
        object.__setattr__(self, "hypotheses", tuple(tuple(h) for h in self.hypotheses))
        if not self.id:
            raise SchemaError("example id must be non-empty")
        if not self.premise:
            raise SchemaError(f"{self.id}: empty premise")
        if len(self.hypotheses) < 2:
            raise SchemaError(f"{self.id}: need at least two hypotheses")
        if any(not hyp for hyp in self.hypotheses):
            raise SchemaError(f"{self.id}: empty hypothesis")
        if self.gold_index is not None and not 0 <= self.gold_index < len(self.hypotheses):
            raise SchemaError(
                f"{self.id}: gold_index {self.gold_index} out of range for "
                f"{len(self.hypotheses)} hypotheses"
            )
        if self.task is Task.COPA:
            if len(self.hypotheses) != COPA_ARITY:
                raise SchemaError(f"{self.id}: COPA examples need exactly two hypotheses")
            if self.relation not in (Relation.CAUSE, Relation.EFFECT):
                raise SchemaError(f"{self.id}: COPA relation must be cause or effect")
        elif self.task is Task.COMMONSENSEQA:
            if len(self.hypotheses) != CSQA_ARITY:
                raise SchemaError(f"{self.id}: CommonsenseQA examples need exactly five hypotheses")
            if self.relation is not Relation.NONE:
                raise SchemaError(f"{self.id}: CommonsenseQA examples carry no relation")
        elif self.task in (Task.SWAG, Task.HELLASWAG) and self.relation is not Relation.NONE:
            raise SchemaError(f"{self.id}: {self.task.value} examples carry no relation")

    @property
    def arity(self) -> int:
        return len(self.hypotheses)


@dataclass(frozen=True)
class ExampleSet:
    """An ordered, immutable collection of examples under one split tag."""

    examples: tuple[Example, ...]
    split: Split

    def __post_init__(self):
        object.__setattr__(self, "examples", tuple(self.examples))
        seen: set[str] = set()
        for example in self.examples:
            if example.id in seen:
                raise SchemaError(f"duplicate example id {example.id!r}")
            seen.add(example.id)

    def __len__(self) -> int:
        return len(self.examples)

    def __iter__(self) -> Iterator[Example]:
        return iter(self.examples)

    def __getitem__(self, index: int) -> Example:
        return self.examples[index]


def _jsonl_records(path) -> Iterator[tuple[int, dict]]:
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=line_no) from exc
            if not isinstance(record, dict):
                raise ParseError("record is not a JSON object", path=path, line=line_no)
            yield line_no, record


def _field(record: dict, name: str, path, line: int):
    if name not in record or record[name] is None:
        raise ParseError(f"missing field {name!r}", path=path, line=line)
    return record[name]


def _located(exc: SchemaError, path, line: int) -> SchemaError:
    return SchemaError(f"{path}, line {line}: {exc}")


def load_copa(path, split: Split) -> ExampleSet:
    """Load a COPA file in the SuperGLUE line-delimited layout."""
    examples = []
    for line_no, record in _jsonl_records(path):
        premise = _field(record, "premise", path, line_no)
        choice1 = _field(record, "choice1", path, line_no)
        choice2 = _field(record, "choice2", path, line_no)
        question = _field(record, "question", path, line_no)
        try:
            relation = Relation(question)
        except ValueError:
            raise SchemaError(
                f"{path}, line {line_no}: unknown question value {question!r}"
            ) from None
        if relation is Relation.NONE:
            raise SchemaError(f"{path}, line {line_no}: unknown question value {question!r}")
        gold = record.get("label")
        if gold is not None and gold not in (0, 1):
            raise SchemaError(f"{path}, line {line_no}: label must be 0 or 1, got {gold!r}")
        identifier = str(record["idx"]) if "idx" in record else f"copa-{line_no}"
        try:
            examples.append(
                Example(
                    id=identifier,
                    premise=to_words(premise),
                    hypotheses=(to_words(choice1), to_words(choice2)),
                    gold_index=gold,
                    task=Task.COPA,
                    relation=relation,
                )
            )
        except SchemaError as exc:
            raise _located(exc, path, line_no) from None
    return ExampleSet(tuple(examples), split)


def load_commonsenseqa(path, split: Split) -> ExampleSet:
    """Load a CommonsenseQA file in its published line-delimited layout.

    ``split=test_star`` keeps exactly the last ``CSQA_HELDOUT_SIZE``
    records of the given (validation) file; ``split=val`` keeps the
    records before them. Other splits load the file unchanged.
    """
    parsed: list[tuple[int, Example]] = []
    for line_no, record in _jsonl_records(path):
        question = _field(record, "question", path, line_no)
        if not isinstance(question, dict):
            raise ParseError("field 'question' is not an object", path=path, line=line_no)
        stem = _field(question, "stem", path, line_no)
        choices = _field(question, "choices", path, line_no)
        if not isinstance(choices, list):
            raise ParseError("field 'choices' is not a list", path=path, line=line_no)
        if len(choices) != CSQA_ARITY:
            raise SchemaError(
                f"{path}, line {line_no}: expected {CSQA_ARITY} choices, found {len(choices)}"
            )
        labels = []
        texts = []
        for choice in choices:
            labels.append(_field(choice, "label", path, line_no))
            texts.append(_field(choice, "text", path, line_no))
        gold = None
        key = record.get("answerKey")
        if key:
            if key not in labels:
                raise SchemaError(f"{path}, line {line_no}: answerKey {key!r} not among choices")
            gold = labels.index(key)
        identifier = str(record["id"]) if "id" in record else f"csqa-{line_no}"
        try:
            example = Example(
                id=identifier,
                premise=to_words(stem),
                hypotheses=tuple(to_words(text) for text in texts),
                gold_index=gold,
                task=Task.COMMONSENSEQA,
            )
        except SchemaError as exc:
            raise _located(exc, path, line_no) from None
        parsed.append((line_no, example))

    examples = [example for _, example in parsed]
    if split in (Split.TEST_STAR, Split.VAL):
        if len(examples) < CSQA_HELDOUT_SIZE:
            raise SplitError(
                f"{path}: need at least {CSQA_HELDOUT_SIZE} validation records to carve out "
                f"the held-out split, found {len(examples)}"
            )
        if split is Split.TEST_STAR:
            examples = examples[-CSQA_HELDOUT_SIZE:]
        else:
            examples = examples[:-CSQA_HELDOUT_SIZE]
    return ExampleSet(tuple(examples), split)


def load_swag(path, split: Split = Split.VAL) -> ExampleSet:
    """Load a Swag CSV file in its published column layout.

    The premise is the caption sentence; each hypothesis is the second
    sentence opener joined with one of the four endings.
    """
    examples = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        fieldnames = set(reader.fieldnames or ())
        ending_columns = [f"ending{i}" for i in range(SWAG_ARITY)]
        missing_endings = [column for column in ending_columns if column not in fieldnames]
        if missing_endings:
            raise SchemaError(
                f"{path}: expected {SWAG_ARITY} ending columns, missing {missing_endings}"
            )
        if "sent1" not in fieldnames:
            raise ParseError("missing column 'sent1'", path=path)
        for line_no, row in enumerate(reader, start=2):
            sent1 = row.get("sent1")
            if sent1 is None:
                raise ParseError("short row, missing 'sent1'", path=path, line=line_no)
            sent2 = row.get("sent2") or ""
            endings = []
            for column in ending_columns:
                value = row.get(column)
                if value is None:
                    raise ParseError(f"short row, missing {column!r}", path=path, line=line_no)
                endings.append(value)
            gold = _parse_choice_label(row.get("label"), SWAG_ARITY, path, line_no)
            hypotheses = tuple(
                to_words(f"{sent2} {ending}" if sent2.strip() else ending) for ending in endings
            )
            identifier = row.get("fold-ind") or f"swag-{line_no}"
            try:
                examples.append(
                    Example(
                        id=identifier,
                        premise=to_words(sent1),
                        hypotheses=hypotheses,
                        gold_index=gold,
                        task=Task.SWAG,
                    )
                )
            except SchemaError as exc:
                raise _located(exc, path, line_no) from None
    return ExampleSet(tuple(examples), split)


def load_hellaswag(path, split: Split = Split.VAL) -> ExampleSet:
    """Load a HellaSwag file in its published line-delimited layout."""
    examples = []
    for line_no, record in _jsonl_records(path):
        context = record.get("ctx")
        if context is None:
            parts = [record.get("ctx_a"), record.get("ctx_b")]
            present = [part for part in parts if part]
            if not present:
                raise ParseError("missing field 'ctx'", path=path, line=line_no)
            context = " ".join(present)
        endings = _field(record, "endings", path, line_no)
        if not isinstance(endings, list):
            raise ParseError("field 'endings' is not a list", path=path, line=line_no)
        if len(endings) != SWAG_ARITY:
            raise SchemaError(
                f"{path}, line {line_no}: expected {SWAG_ARITY} endings, found {len(endings)}"
            )
        gold = _parse_choice_label(record.get("label"), SWAG_ARITY, path, line_no)
        identifier = str(record["ind"]) if "ind" in record else f"hellaswag-{line_no}"
        try:
            examples.append(
                Example(
                    id=identifier,
                    premise=to_words(context),
                    hypotheses=tuple(to_words(ending) for ending in endings),
                    gold_index=gold,
                    task=Task.HELLASWAG,
                )
            )
        except SchemaError as exc:
            raise _located(exc, path, line_no) from None
    return ExampleSet(tuple(examples), split)


def _parse_choice_label(value, arity: int, path, line: int) -> int | None:
    if value is None or value == "":
        return None
    try:
        gold = int(value)
    except (TypeError, ValueError):
        raise SchemaError(f"{path}, line {line}: label {value!r} is not an integer") from None
    if not 0 <= gold < arity:
        raise SchemaError(f"{path}, line {line}: label {gold} out of range for {arity} choices")
    return gold


def canonical_record(example: Example) -> dict:
    return {
        "id": example.id,
        "premise": join_words(example.premise),
        "hypotheses": [join_words(hyp) for hyp in example.hypotheses],
        "gold_index": example.gold_index,
        "task": example.task.value,
        "relation": example.relation.value,
    }


def dump_canonical(example_set: ExampleSet, path) -> Path:
    """Write one canonical JSON record per line. Returns the path."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as handle:
        for example in example_set:
            handle.write(json.dumps(canonical_record(example), ensure_ascii=False))
            handle.write("\n")
    return path


def load_canonical(path, split: Split = Split.TEST) -> ExampleSet:
    """Load records written by :func:`dump_canonical` (or hand-authored)."""
    examples = []
    for line_no, record in _jsonl_records(path):
        identifier = str(_field(record, "id", path, line_no))
        premise = _field(record, "premise", path, line_no)
        hypotheses = _field(record, "hypotheses", path, line_no)
        if not isinstance(hypotheses, list):
            raise ParseError("field 'hypotheses' is not a list", path=path, line=line_no)
        task_value = _field(record, "task", path, line_no)
        try:
            task = Task(task_value)
        except ValueError:
            raise SchemaError(f"{path}, line {line_no}: unknown task {task_value!r}") from None
        relation_value = record.get("relation", Relation.NONE.value)
        try:
            relation = Relation(relation_value)
        except ValueError:
            raise SchemaError(
                f"{path}, line {line_no}: unknown relation {relation_value!r}"
            ) from None
        gold = record.get("gold_index")
        if gold is not None and not isinstance(gold, int):
            raise SchemaError(f"{path}, line {line_no}: gold_index must be an integer or null")
        try:
            examples.append(
                Example(
                    id=identifier,
                    premise=to_words(premise),
                    hypotheses=tuple(to_words(hyp) for hyp in hypotheses),
                    gold_index=gold,
                    task=task,
                    relation=relation,
                )
            )
        except SchemaError as exc:
            raise _located(exc, path, line_no) from None
    return ExampleSet(tuple(examples), split)


def subsample(example_set: ExampleSet, fraction, seed: int) -> ExampleSet:
    """Keep a deterministic ceil(fraction * N) subset, original order.

    The kept indices come from a seeded shuffle, then are re-sorted by
    original position, so the result is stable for a fixed
    (set, fraction, seed) triple. ``fraction`` may be a float or a
    :class:`fractions.Fraction`; floats are interpreted through their
    decimal representation so 0.1 of 400 is exactly 40.
    """
    fraction = Fraction(str(fraction)) if isinstance(fraction, float) else Fraction(fraction)
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    size = len(example_set)
    if size == 0:
        raise ValueError("cannot subsample an empty example set")
    if fraction == 1:
        return example_set
    keep = math.ceil(fraction * size)
    rng = random.Random(seed)
    order = list(range(size))
    rng.shuffle(order)
    chosen = sorted(order[:keep])
    return ExampleSet(tuple(example_set[i] for i in chosen), example_set.split)


def text_corpus(example_set: ExampleSet) -> tuple[Words, ...]:
    """All premise and hypothesis word sequences, in set order."""
    sequences: list[Words] = []
    for example in example_set:
        sequences.append(example.premise)
        sequences.extend(example.hypotheses)
    return tuple(sequences)


def vocabulary(sequences: Sequence[Words]) -> tuple[str, ...]:
    """Sorted distinct words across the given sequences."""
    seen: set[str] = set()
    for sequence in sequences:
        seen.update(sequence)
    return tuple(sorted(seen))
