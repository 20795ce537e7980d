"""Conditional language models over (source, target-prefix) contexts.

The concrete model is a smoothed n-gram trained on concatenated streams
[BOS, source..., SEP, target'..., EOS], where target' is the target as-is
for a regular-direction model and element-wise reversed for a reverse one.
Only positions after SEP are predicted; the source is context, never output.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import BOS_ID, EOS_ID, SEP_ID, SentencePair, Vocabulary, reverse_target
from .errors import (
    DirectionError,
    FormatError,
    ParameterError,
    VocabularyMismatchError,
)

REGULAR = "regular"
REVERSE = "reverse"

MODEL_FORMAT_VERSION = 1

DEFAULT_ORDER = 3
DEFAULT_WEIGHTS = (0.2, 0.3, 0.5)
DEFAULT_K = 0.1


class LanguageModel(ABC):
    """Pure conditional scorer: next-token distributions given (source, prefix)."""

    direction: str
    vocab: Vocabulary

    @abstractmethod
    def next_token_logprobs(
        self, source: Sequence[int], prefix: Sequence[int]
    ) -> np.ndarray:
        """Length-V vector of log P(w | source, prefix); exps sum to 1."""

    def sequence_logprob(self, source: Sequence[int], target: Sequence[int]) -> float:
        """Chain-rule sum of per-step log-probabilities.

        The target must end with EOS and contain EOS exactly once.  The sum
        is accumulated left to right so that it is bit-identical to adding
        up individual next_token_logprobs lookups.
        """
        target = tuple(target)
        if not target or target[-1] != EOS_ID or target.count(EOS_ID) != 1:
            raise ParameterError("target must contain EOS exactly once, at the end")
        total = 0.0
        for t, token in enumerate(target):
            total += float(self.next_token_logprobs(source, target[:t])[token])
        return total


def _check_ids(vocab_size: int, ids: Sequence[int], what: str) -> None:
    for i in ids:
        if not 0 <= i < vocab_size:
            raise VocabularyMismatchError(
                f"{what} id {i} outside vocabulary of size {vocab_size}"
            )


class ConditionalNGramLM(LanguageModel):
    """Interpolated add-k n-gram model conditioned on the source sequence.

    Probabilities interpolate orders 1..n with fixed weights; add-k smoothing
    at every order guarantees strictly positive probability for all V ids.
    """

    def __init__(
        self,
        vocab: Vocabulary,
        order: int,
        direction: str,
        weights: Sequence[float],
        k: float,
        counts: dict[int, dict[tuple[int, ...], dict[int, int]]],
    ):
        if order < 1:
            raise ParameterError("order must be >= 1")
        if direction not in (REGULAR, REVERSE):
            raise ParameterError(f"unknown direction {direction!r}")
        weights = tuple(float(w) for w in weights)
        if len(weights) != order:
            raise ParameterError("need exactly one interpolation weight per order")
        if any(w < 0 for w in weights):
            raise ParameterError("interpolation weights must be non-negative")
        if abs(sum(weights) - 1.0) > 1e-9:
            raise ParameterError("interpolation weights must sum to 1")
        if not k > 0:
            raise ParameterError("additive constant k must be positive")
        self.vocab = vocab
        self.order = order
        self.direction = direction
        self.weights = weights
        self.k = float(k)
        self._counts = counts
        self._totals = {
            o: {ctx: sum(bucket.values()) for ctx, bucket in table.items()}
            for o, table in counts.items()
        }

    @classmethod
    def train(
        cls,
        pairs: Sequence[SentencePair],
        vocab: Vocabulary,
        order: int = DEFAULT_ORDER,
        direction: str = REGULAR,
        weights: Sequence[float] = DEFAULT_WEIGHTS,
        k: float = DEFAULT_K,
    ) -> "ConditionalNGramLM":
        if not pairs:
            raise ParameterError("cannot train on an empty corpus")
        counts: dict[int, dict[tuple[int, ...], dict[int, int]]] = {
            o: {} for o in range(1, order + 1)
        }
        for pair in pairs:
            target = pair.target if direction == REGULAR else reverse_target(pair.target)
            stream = (BOS_ID,) + tuple(pair.source) + (SEP_ID,) + tuple(target) + (EOS_ID,)
            first_predicted = 2 + len(pair.source)  # position right after SEP
            for i in range(first_predicted, len(stream)):
                token = stream[i]
                for o in range(1, order + 1):
                    ctx = stream[max(0, i - (o - 1)) : i]
                    bucket = counts[o].setdefault(ctx, {})
                    bucket[token] = bucket.get(token, 0) + 1
        return cls(vocab, order, direction, weights, k, counts)

    def next_token_logprobs(
        self, source: Sequence[int], prefix: Sequence[int]
    ) -> np.ndarray:
        if EOS_ID in prefix:
            raise ParameterError("prefix must not contain EOS")
        v = self.vocab.size
        _check_ids(v, source, "source")
        _check_ids(v, prefix, "prefix")
        stream = (BOS_ID,) + tuple(source) + (SEP_ID,) + tuple(prefix)
        probs = np.zeros(v)
        for o, weight in zip(range(1, self.order + 1), self.weights):
            ctx = stream[max(0, len(stream) - (o - 1)) :] if o > 1 else ()
            total = self._totals[o].get(ctx, 0)
            denom = total + self.k * v
            probs += weight * (self.k / denom)
            bucket = self._counts[o].get(ctx)
            if bucket:
                for token, count in bucket.items():
                    probs[token] += weight * count / denom
        return np.log(probs)

    def save(self, path: str | Path) -> None:
        """Write a canonical JSON dump; counts are sorted so reruns are bit-identical."""
        payload = {
            "format_version": MODEL_FORMAT_VERSION,
            "order": self.order,
            "direction": self.direction,
            "vocab_size": self.vocab.size,
            "weights": list(self.weights),
            "k": self.k,
            "counts": [
                [
                    o,
                    [
                        [list(ctx), sorted(bucket.items())]
                        for ctx, bucket in sorted(self._counts[o].items())
                    ],
                ]
                for o in sorted(self._counts)
            ],
        }
        Path(path).write_text(
            json.dumps(payload, separators=(",", ":")) + "\n", encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path, vocab: Vocabulary) -> "ConditionalNGramLM":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not a valid model file ({exc.msg})") from None
        if payload.get("format_version") != MODEL_FORMAT_VERSION:
            raise FormatError(f"{path}: unsupported model format version")
        if payload["vocab_size"] != vocab.size:
            raise VocabularyMismatchError(
                f"{path}: model was trained with vocabulary size "
                f"{payload['vocab_size']}, got {vocab.size}"
            )
        counts: dict[int, dict[tuple[int, ...], dict[int, int]]] = {}
        for o, table in payload["counts"]:
            counts[int(o)] = {
                tuple(ctx): {int(w): int(c) for w, c in bucket}
                for ctx, bucket in table
            }
        return cls(
            vocab,
            int(payload["order"]),
            payload["direction"],
            payload["weights"],
            payload["k"],
            counts,
        )


def reverse_sequence_logprob(
    model: LanguageModel, source: Sequence[int], target_regular_order: Sequence[int]
) -> float:
    """Score a regular-order target under a reverse-direction model.

    The target is given without EOS; it is reversed into the model's native
    order and EOS is appended before scoring.
    """
    if model.direction != REVERSE:
        raise DirectionError("reverse_sequence_logprob requires a reverse-direction model")
    if EOS_ID in target_regular_order:
        raise ParameterError("target must be given without EOS")
    reversed_target = reverse_target(target_regular_order) + (EOS_ID,)
    return model.sequence_logprob(source, reversed_target)
