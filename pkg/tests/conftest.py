"""Shared fixtures: dummy vocabularies, scripted and randomized models."""

from __future__ import annotations

import numpy as np
import pytest
from scipy.special import logsumexp

from bidibeam.corpus import RESERVED, Vocabulary
from bidibeam.lm import REGULAR, LanguageModel


def dummy_vocab(size: int) -> Vocabulary:
    """A vocabulary of the given total size; ids 4+ get surfaces w4, w5, ..."""
    if size < 4:
        raise ValueError("vocabularies start with the four reserved markers")
    return Vocabulary(list(RESERVED) + [f"w{i}" for i in range(4, size)])


class RandomTableLM(LanguageModel):
    """Deterministic pseudo-random next-token tables, pure in (source, prefix).

    The per-prefix distribution is derived from the seed and the query
    alone, so any two consumers (the decoder and an oracle) observe
    identical floats regardless of query order.
    """

    def __init__(self, vocab: Vocabulary, seed: int, direction: str = REGULAR,
                 spread: float = 2.0):
        self.vocab = vocab
        self.direction = direction
        self._seed = seed
        self._spread = spread
        self._cache: dict[tuple, np.ndarray] = {}
        self.calls = 0

    def next_token_logprobs(self, source, prefix) -> np.ndarray:
        key = (tuple(source), tuple(prefix))
        if key not in self._cache:
            rng = np.random.default_rng([self._seed, 9176, *key[0], 733, *key[1]])
            logits = rng.normal(0.0, self._spread, size=self.vocab.size)
            self._cache[key] = logits - logsumexp(logits)
        self.calls += 1
        return self._cache[key]


class PeakedEosLM(LanguageModel):
    """P(EOS | anything) = 1 exactly; every other token has probability 0."""

    def __init__(self, vocab: Vocabulary, direction: str = REGULAR):
        self.vocab = vocab
        self.direction = direction

    def next_token_logprobs(self, source, prefix) -> np.ndarray:
        probs = np.zeros(self.vocab.size)
        probs[1] = 1.0
        with np.errstate(divide="ignore"):
            return np.log(probs)


class NoEosLM(LanguageModel):
    """EOS nearly impossible; everything else uniform.  Keeps beams full."""

    def __init__(self, vocab: Vocabulary, direction: str = REGULAR):
        self.vocab = vocab
        self.direction = direction

    def next_token_logprobs(self, source, prefix) -> np.ndarray:
        v = self.vocab.size
        probs = np.full(v, (1.0 - 1e-12) / (v - 1))
        probs[1] = 1e-12
        return np.log(probs)


@pytest.fixture
def vocab6() -> Vocabulary:
    return dummy_vocab(6)
