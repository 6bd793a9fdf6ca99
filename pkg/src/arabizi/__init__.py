"""Rule-based candidate generation plus corpus-driven selection for
transliterating Algerian Arabizi into Arabic script."""

from .candgen import CandidateSet, Segmentation, generate, segment
from .charmap import (ArabiziSymbol, MappingTable, Position, dump_table, load_default_table,
                      load_table, lookup)
from .evalharness import EvalReport, GoldPair, classify_error, evaluate, run_grid
from .langmodel import (CorpusSlice, FrequencyModel, NGramModel, build_frequency, build_ngram,
                        load_model, query_frequency, query_unigram_logprob, save_model,
                        slice_corpus)
from .selector import (Backend, SelectionPolicy, TransliterationResult, select,
                       transliterate_message, transliterate_word)
from .textprep import RawMessage, Token, TokenKind, classify_token, filter_arabic_corpus, \
    reduce_elongation, tokenize

__version__ = "0.1.0"
