"""Bidirectional beam search decoding over pluggable conditional language models.

Three decoding strategies share one beam core: plain length-normalized
beam search, re-scoring of the beam under a right-to-left model, and
agreement selection between a left-to-right and a right-to-left beam.
"""

from .beam import (
    DecodeOutput,
    Hypothesis,
    SearchParams,
    length_penalty,
    normalized_score,
    vbs_decode,
)
from .bidi import (
    AgreementPair,
    BidiSParams,
    bidia_decode,
    bidis_decode,
    unreverse_hypothesis,
)
from .corpus import (
    BOS_ID,
    EOS_ID,
    SEP_ID,
    UNK_ID,
    CorpusSplit,
    SentencePair,
    Vocabulary,
    build_vocabulary,
    encode_pairs,
    load_corpus,
    reverse_target,
    split_corpus,
    tokenize,
)
from .errors import (
    BidibeamError,
    ConfigError,
    DegeneratePairError,
    DirectionError,
    FormatError,
    ParameterError,
    VocabularyMismatchError,
)
from .evaluation import (
    BleuAccumulator,
    RankHistogram,
    best_hypothesis,
    corpus_bleu4,
    distinct_n,
    rank_histogram,
    sentence_bleu4,
    word_position_frequency,
)
from .instrumentation import BoundsResult, ComplexityReport, check_bounds
from .lm import (
    REGULAR,
    REVERSE,
    ConditionalNGramLM,
    LanguageModel,
    reverse_sequence_logprob,
)
from .similarity import (
    BLEU_T,
    WMD_T,
    EmbeddingTable,
    SimilaritySpec,
    TransportProblem,
    bleu_t,
    bp_t,
    dissimilarity,
    load_embeddings,
    load_stopwords,
    solve_transport,
    wmd,
)

__version__ = "0.1.0"

__all__ = [
    "AgreementPair",
    "BLEU_T",
    "BOS_ID",
    "BidiSParams",
    "BidibeamError",
    "BleuAccumulator",
    "BoundsResult",
    "ComplexityReport",
    "ConditionalNGramLM",
    "ConfigError",
    "CorpusSplit",
    "DecodeOutput",
    "DegeneratePairError",
    "DirectionError",
    "EOS_ID",
    "EmbeddingTable",
    "FormatError",
    "Hypothesis",
    "LanguageModel",
    "ParameterError",
    "REGULAR",
    "REVERSE",
    "RankHistogram",
    "SEP_ID",
    "SearchParams",
    "SentencePair",
    "SimilaritySpec",
    "TransportProblem",
    "UNK_ID",
    "Vocabulary",
    "VocabularyMismatchError",
    "WMD_T",
    "best_hypothesis",
    "bidia_decode",
    "bidis_decode",
    "bleu_t",
    "bp_t",
    "build_vocabulary",
    "check_bounds",
    "corpus_bleu4",
    "dissimilarity",
    "distinct_n",
    "encode_pairs",
    "length_penalty",
    "load_corpus",
    "load_embeddings",
    "load_stopwords",
    "normalized_score",
    "rank_histogram",
    "reverse_sequence_logprob",
    "reverse_target",
    "sentence_bleu4",
    "solve_transport",
    "split_corpus",
    "tokenize",
    "unreverse_hypothesis",
    "vbs_decode",
    "wmd",
    "word_position_frequency",
]
