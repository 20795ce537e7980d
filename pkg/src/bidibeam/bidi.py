"""Bidirectional decoding: reverse-model re-scoring and two-beam agreement.

Both decoders combine a left-to-right (regular) and a right-to-left
(reverse) model.  Re-scoring decodes a beam with the regular model and
re-ranks it by a weighted sum of the normalized log-probabilities under
both directions.  Agreement decodes half-size beams under each model and
outputs the regular-side member of the most similar cross-beam pair.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .beam import (
    DecodeOutput,
    Hypothesis,
    SearchParams,
    length_penalty,
    vbs_decode,
)
from .corpus import EOS_ID
from .errors import DirectionError, ParameterError, VocabularyMismatchError
from .instrumentation import ComplexityReport
from .lm import LanguageModel, reverse_sequence_logprob
from .similarity import SimilaritySpec, dissimilarity


@dataclass(frozen=True)
class BidiSParams:
    """Re-scoring parameters: the reverse-direction weight plus search settings.

    The weight compensates the scale difference between the two directions'
    normalized log-probabilities; it should be selected on validation data,
    with 1.0 as the unvalidated fallback.
    """

    search: SearchParams
    reverse_weight: float = 1.0

    def __post_init__(self):
        if self.reverse_weight < 0:
            raise ParameterError("reverse weight must be non-negative")


@dataclass(frozen=True)
class AgreementPair:
    """The selected cross-beam pair; the reverse member is in regular order."""

    regular_hypothesis: Hypothesis
    reverse_hypothesis_regular_order: Hypothesis
    dissimilarity: float


def _check_directions(regular: LanguageModel, reverse: LanguageModel) -> None:
    if regular.direction != "regular":
        raise DirectionError("first model must be regular-direction")
    if reverse.direction != "reverse":
        raise DirectionError("second model must be reverse-direction")
    if regular.vocab.size != reverse.vocab.size:
        raise VocabularyMismatchError("regular and reverse models must share a vocabulary")


def rescore_terms(
    beam: Sequence[Hypothesis],
    reverse: LanguageModel,
    source: Sequence[int],
    alpha: float,
) -> list[tuple[float, float]]:
    """Per-hypothesis (regular, reverse) normalized log-probability terms.

    Both terms divide by the length penalty of the hypothesis's own token
    count, so the combined score for weight w is term1 + w * term2.
    """
    terms = []
    for hyp in beam:
        lp = length_penalty(len(hyp.tokens), alpha)
        term1 = hyp.logprob / lp
        term2 = reverse_sequence_logprob(reverse, source, hyp.core()) / lp
        terms.append((term1, term2))
    return terms


def rank_by_combined_score(
    beam: Sequence[Hypothesis],
    terms: Sequence[tuple[float, float]],
    reverse_weight: float,
) -> list[tuple[int, float]]:
    """Order beam positions by combined score descending, ties by token ids."""
    combined = [
        (i, t1 + reverse_weight * t2) for i, (t1, t2) in enumerate(terms)
    ]
    combined.sort(key=lambda pair: (-pair[1], beam[pair[0]].tokens))
    return combined


def bidis_decode(
    regular: LanguageModel,
    reverse: LanguageModel,
    source: Sequence[int],
    params: BidiSParams,
) -> DecodeOutput:
    """Decode with the regular model, then re-rank by both directions.

    ``selected_index`` reports the winning candidate's original rank in the
    regular beam, which is what rank analysis histograms.
    """
    _check_directions(regular, reverse)
    started = time.perf_counter()
    base = vbs_decode(regular, source, params.search)
    terms = rescore_terms(base.beam, reverse, source, params.search.alpha)
    order = rank_by_combined_score(base.beam, terms, params.reverse_weight)
    report = ComplexityReport(algorithm="bidis")
    report.merge_search(base.report)
    report.rescoring_evals = len(base.beam)
    report.wall_time = time.perf_counter() - started
    best_index = order[0][0]
    return DecodeOutput(
        selected=base.beam[best_index],
        beam=tuple(base.beam[i] for i, _ in order),
        selected_index=best_index + 1,
        expansions=base.expansions,
        scores=tuple(score for _, score in order),
        report=report,
    )


def unreverse_hypothesis(hyp: Hypothesis) -> Hypothesis:
    """Flip a reverse-model hypothesis into regular order, EOS kept last."""
    core = tuple(reversed(hyp.core()))
    tokens = core + (EOS_ID,) if hyp.finished else core
    return Hypothesis(tokens, hyp.logprob, hyp.finished)


def bidia_decode(
    regular: LanguageModel,
    reverse: LanguageModel,
    source: Sequence[int],
    params: SearchParams,
    measure: SimilaritySpec,
) -> DecodeOutput:
    """Agreement decoding over two half-size beams.

    Runs beam search with size B/2 under each model, un-reverses the
    reverse-side hypotheses, evaluates the dissimilarity of every cross-beam
    pair and outputs the regular-side member of the minimizing pair.  Ties
    prefer the higher regular normalized score, then the lower regular
    index, then the lower reverse index.
    """
    _check_directions(regular, reverse)
    if params.beam_size % 2 != 0 or params.beam_size < 2:
        raise ParameterError("agreement decoding needs an even beam size >= 2")
    started = time.perf_counter()
    half = SearchParams(params.beam_size // 2, params.max_length, params.alpha)
    run_regular = vbs_decode(regular, source, half)
    run_reverse = vbs_decode(reverse, source, half)
    unreversed = tuple(unreverse_hypothesis(h) for h in run_reverse.beam)

    best_key = None
    best: tuple[int, int, float] | None = None
    evals = 0
    for i, hyp_n in enumerate(run_regular.beam):
        for j, hyp_r in enumerate(unreversed):
            d = dissimilarity(hyp_n.core(), hyp_r.core(), measure)
            evals += 1
            key = (d, -run_regular.scores[i], i, j)
            if best_key is None or key < best_key:
                best_key = key
                best = (i, j, d)
    assert best is not None
    i0, j0, d0 = best

    report = ComplexityReport(algorithm="bidia")
    report.merge_search(run_regular.report)
    report.merge_search(run_reverse.report)
    report.pairwise_sim_evals = evals
    report.wall_time = time.perf_counter() - started
    return DecodeOutput(
        selected=run_regular.beam[i0],
        beam=run_regular.beam,
        selected_index=i0 + 1,
        expansions=run_regular.expansions + run_reverse.expansions,
        scores=run_regular.scores,
        report=report,
        reverse_beam=unreversed,
        agreement=AgreementPair(run_regular.beam[i0], unreversed[j0], d0),
    )
