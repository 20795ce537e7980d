"""Vanilla beam search with length-normalized scoring and a finished-candidate
stopping rule.

Scores are log-probabilities divided by the length penalty
lp(Y) = (5 + |Y|)^alpha / (5 + 1)^alpha; the search stops once B finished
candidates have been collected or the length limit T is reached.  All ties
are broken by lexicographic token-id order so decoding is fully
deterministic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional, Sequence

from .corpus import EOS_ID
from .errors import ParameterError
from .instrumentation import ComplexityReport
from .lm import LanguageModel

if TYPE_CHECKING:
    from .bidi import AgreementPair


@dataclass(frozen=True)
class SearchParams:
    beam_size: int
    max_length: int
    alpha: float = 0.6

    def __post_init__(self):
        if self.beam_size < 1:
            raise ParameterError("beam size must be >= 1")
        if self.max_length < 1:
            raise ParameterError("maximum sentence length must be >= 1")
        if not 0.0 <= self.alpha <= 1.0:
            raise ParameterError("length-penalty exponent must lie in [0, 1]")


@dataclass(frozen=True)
class Hypothesis:
    """A partial or finished target sequence with its cumulative log-probability.

    Tokens never include BOS; EOS is present iff the hypothesis is finished.
    """

    tokens: tuple[int, ...]
    logprob: float
    finished: bool

    def core(self) -> tuple[int, ...]:
        """Tokens with the trailing EOS stripped."""
        return self.tokens[:-1] if self.finished else self.tokens


@dataclass
class DecodeOutput:
    """A decode result: the selected sentence plus the full final beam.

    ``scores`` holds the value each algorithm ordered the beam by (the
    normalized score for plain beam search, the combined bidirectional score
    after re-ranking).  ``selected_index`` is the selected hypothesis's
    1-based rank in the ordering of the underlying left-to-right search,
    which is what rank analysis plots.
    """

    selected: Hypothesis
    beam: tuple[Hypothesis, ...]
    selected_index: int
    expansions: int
    scores: tuple[float, ...]
    report: ComplexityReport
    reverse_beam: Optional[tuple[Hypothesis, ...]] = None
    agreement: Optional["AgreementPair"] = None


def length_penalty(length: int, alpha: float) -> float:
    """GNMT length normalizer ((5 + length) / 6) ** alpha."""
    if length < 1:
        raise ParameterError("length must be >= 1")
    return (5.0 + length) ** alpha / 6.0**alpha


def normalized_score(logprob: float, length: int, alpha: float) -> float:
    return logprob / length_penalty(length, alpha)


def _ranked(
    hypotheses: Sequence[Hypothesis], alpha: float
) -> list[tuple[float, Hypothesis]]:
    """Sort by normalized score descending, ties by lexicographic token ids."""
    scored = [
        (normalized_score(h.logprob, len(h.tokens), alpha), h) for h in hypotheses
    ]
    scored.sort(key=lambda pair: (-pair[0], pair[1].tokens))
    return scored


def vbs_decode(
    model: LanguageModel, source: Sequence[int], params: SearchParams
) -> DecodeOutput:
    """Vanilla beam search over the model's next-token distributions.

    Each step expands every alive hypothesis by all V tokens and ranks the
    candidates by normalized score.  Finished candidates ranked inside the
    top B are set aside (they do not consume alive slots); the B best
    unfinished candidates survive.  If fewer than B hypotheses finish within
    the length limit, the output beam is padded with the best unfinished
    ones.
    """
    v = model.vocab.size
    if v < 2:
        raise ParameterError("cannot decode with a vocabulary of fewer than 2 tokens")
    b, t, alpha = params.beam_size, params.max_length, params.alpha
    report = ComplexityReport(algorithm="vbs")
    started = time.perf_counter()

    alive: list[Hypothesis] = [Hypothesis((), 0.0, False)]
    finished: list[Hypothesis] = []
    step = 0
    while alive and len(finished) < b and step < t:
        step += 1
        candidates: list[tuple[float, Hypothesis]] = []
        for hyp in alive:
            logprobs = model.next_token_logprobs(source, hyp.tokens)
            report.expansions += v
            base = hyp.logprob
            tokens = hyp.tokens
            length = len(tokens) + 1
            for token in range(v):
                child = Hypothesis(
                    tokens + (token,), base + float(logprobs[token]), token == EOS_ID
                )
                candidates.append(
                    (normalized_score(child.logprob, length, alpha), child)
                )
        report.sort_events.append((step, len(candidates)))
        candidates.sort(key=lambda pair: (-pair[0], pair[1].tokens))
        for _, child in candidates[:b]:
            if child.finished and len(finished) < b:
                finished.append(child)
        alive = [child for _, child in candidates if not child.finished][:b]

    beam_set = list(finished)
    if len(beam_set) < b:
        beam_set.extend(alive[: b - len(beam_set)])
    ranked = _ranked(beam_set, alpha)
    report.wall_time = time.perf_counter() - started
    return DecodeOutput(
        selected=ranked[0][1],
        beam=tuple(h for _, h in ranked),
        selected_index=1,
        expansions=report.expansions,
        scores=tuple(s for s, _ in ranked),
        report=report,
    )
