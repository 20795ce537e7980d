"""
Sentence similarity with a decoder-aware brevity penalty
========================================================

Agreement decoding needs to compare a left-to-right sentence with a
right-to-left one.  Plain BLEU would let two suspiciously short sentences
agree by saying almost nothing, so both measures here anchor their brevity
penalty to the decoder's maximum length T instead of a reference length.
"""

import numpy as np

from bidibeam.similarity import (
    BLEU_T,
    WMD_T,
    EmbeddingTable,
    SimilaritySpec,
    TransportProblem,
    bleu_t,
    bp_t,
    dissimilarity,
    solve_transport,
    wmd,
)

T = 8

# The brevity penalty is 1 at full length and decays exponentially below
# it: a one-word answer in an 8-token budget keeps only e^(1 - 8) of its
# similarity.
print("brevity penalty against T=8:")
for length in (8, 6, 4, 2, 1):
    print(f"  {length} tokens -> {bp_t(length, T):.4f}")

# BLEU against the budget: even a perfect match scores below 1 when it is
# shorter than T, which is exactly the point.
spec = SimilaritySpec(BLEU_T, max_length=T)
a = ["the", "cat", "sat", "on", "the", "mat"]
b = ["the", "cat", "lay", "on", "the", "mat"]
print(f"\nbleu_t(identical 6-word sentence) = {bleu_t(a, a, spec):.4f}"
      f"  (= bp_t = {bp_t(6, T):.4f})")
print(f"bleu_t(one word changed)          = {bleu_t(a, b, spec):.4f}")

# Word Mover's Distance works in embedding space, so it can tell that two
# sentences with no words in common still mean nearby things.  Tiny
# hand-made 2-d embeddings: felines cluster, weather clusters.
vectors = {
    "cat": np.array([1.0, 0.1]),
    "kitten": np.array([1.1, 0.2]),
    "tiger": np.array([1.3, 0.0]),
    "rain": np.array([-1.0, 0.8]),
    "storm": np.array([-1.2, 0.9]),
    "purrs": np.array([0.8, -0.6]),
}
table = EmbeddingTable(vectors)
print(f"\nwmd(cat purrs, kitten purrs) = {wmd(['cat', 'purrs'], ['kitten', 'purrs'], table):.4f}")
print(f"wmd(cat purrs, rain storm)   = {wmd(['cat', 'purrs'], ['rain', 'storm'], table):.4f}")
print(f"wmd(x, x)                    = {wmd(['cat', 'purrs'], ['cat', 'purrs'], table):.4f}")

# Underneath WMD sits a balanced transportation problem: move one
# sentence's word mass onto the other's as cheaply as possible.  The
# solver returns the optimal flow, which is readable by itself.
problem = TransportProblem(
    supply=np.array([0.5, 0.5]),
    demand=np.array([1.0 / 3, 1.0 / 3, 1.0 / 3]),
    cost=np.array([[0.0, 2.0, 4.0], [2.0, 0.0, 1.0]]),
)
flow, total = solve_transport(problem)
print(f"\ntransport flow (total cost {total:.4f}):")
for row in flow:
    print("  " + "  ".join(f"{cell:.4f}" for cell in row))

# The agreement dissimilarity wraps either measure: 1 - bleu_t, or WMD
# combined with the same brevity penalty so short pairs cannot win.
wmd_spec = SimilaritySpec(WMD_T, max_length=T, embeddings=table,
                          stopwords=frozenset())
short = ["cat"]
print(f"\ndissimilarity, bleu: {dissimilarity(a, b, spec):.4f}")
print(f"dissimilarity, wmd, full length: {dissimilarity(['cat', 'purrs'], ['kitten', 'purrs'], wmd_spec):.4f}")
print(f"dissimilarity, wmd, one word:    {dissimilarity(short, ['kitten'], wmd_spec):.4f}"
      "  (tiny transport cost, huge length penalty)")
