"""
Training two direction models and decoding three ways
=====================================================

A left-to-right model alone can paint itself into a corner: the first few
words look great, the ending does not.  This walk-through trains a
left-to-right and a right-to-left model on a small synthetic
question-answer corpus, then decodes the same question with plain beam
search, bidirectional re-scoring and bidirectional agreement.
"""

from bidibeam.beam import SearchParams, vbs_decode
from bidibeam.bidi import BidiSParams, bidia_decode, bidis_decode
from bidibeam.corpus import build_vocabulary, encode_pairs, split_corpus
from bidibeam.lm import REGULAR, REVERSE, ConditionalNGramLM
from bidibeam.similarity import BLEU_T, SimilaritySpec
from bidibeam.synth import synthetic_pairs

# A reproducible corpus of 500 question-answer pairs about eight topics.
pairs = synthetic_pairs(500, seed=3)
split = split_corpus(pairs, (0.97, 0.01, 0.02), seed=0)
print(f"corpus: {len(split.train)} train / {len(split.validation)} validation / {len(split.test)} test")

# The vocabulary comes from the train split only; ids 0..3 are reserved
# markers and everything else is ranked by frequency.
vocab = build_vocabulary(split.train)
train = encode_pairs(split.train, vocab)
print(f"vocabulary: {vocab.size} entries")

# One model per direction.  The reverse model sees every target reversed,
# so it learns how sentences end rather than how they start.
regular = ConditionalNGramLM.train(train, vocab, order=4, direction=REGULAR,
                                   weights=(0.1, 0.2, 0.3, 0.4))
reverse = ConditionalNGramLM.train(train, vocab, order=4, direction=REVERSE,
                                   weights=(0.1, 0.2, 0.3, 0.4))

# Decode one held-out question with a beam of 8, at most 12 tokens.
question = encode_pairs(split.test, vocab)[0]
params = SearchParams(beam_size=8, max_length=12)
print("\nsource:", " ".join(vocab.decode(question.source)))
print("reference:", " ".join(vocab.decode(question.target)))

# Plain beam search keeps the 8 best partial sentences per step and picks
# the finished sentence with the best length-normalized log-probability.
plain = vbs_decode(regular, question.source, params)
print("\nplain beam search beam (best first):")
for hyp, score in zip(plain.beam, plain.scores):
    print(f"  {score:9.4f}  {' '.join(vocab.decode(hyp.core()))}")

# Bidirectional re-scoring re-ranks that same beam by adding the reverse
# model's opinion of each candidate.  The selected index reports where the
# winner sat in the original left-to-right ranking.
rescored = bidis_decode(regular, reverse, question.source,
                        BidiSParams(params, reverse_weight=1.0))
print("\nre-scored selection (was left-to-right rank "
      f"{rescored.selected_index}): {' '.join(vocab.decode(rescored.selected.core()))}")

# Bidirectional agreement runs both directions with half-size beams and
# outputs the left-to-right member of the most similar cross-direction
# pair: a sentence both directions can live with.
agreed = bidia_decode(regular, reverse, question.source, params,
                      SimilaritySpec(BLEU_T, max_length=params.max_length))
pair = agreed.agreement
print("\nagreement selection:")
print(f"  left-to-right  {' '.join(vocab.decode(pair.regular_hypothesis.core()))}")
print(f"  right-to-left  {' '.join(vocab.decode(pair.reverse_hypothesis_regular_order.core()))}")
print(f"  dissimilarity  {pair.dissimilarity:.4f}")

# Every decode carries its own complexity counters.
for name, out in (("vbs", plain), ("bidis", rescored), ("bidia", agreed)):
    r = out.report
    print(f"\n{name}: {r.expansions} expansions, "
          f"{r.rescoring_evals} re-scores, {r.pairwise_sim_evals} pairwise evals")
