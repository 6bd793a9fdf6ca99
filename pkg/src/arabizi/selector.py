"""Best-candidate selection and whole-message transliteration."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from .candgen import DEFAULT_CAP, CandidateSet, generate
from .charmap import MappingTable
from .errors import EmptyCandidates, ModelMismatch, UnknownSymbol
from .langmodel import FrequencyModel, NGramModel, query_unigram_logprob
from .textprep import TokenKind, detokenize, reduce_elongation, tokenize

log = logging.getLogger(__name__)


class Backend(enum.Enum):
    SIMPLE = "simple"
    NGRAM = "ngram"


class Fallback(enum.Enum):
    PREFERENCE_ORDER = "preference"


@dataclass(frozen=True)
class SelectionPolicy:
    backend: Backend = Backend.SIMPLE
    fallback: Fallback = Fallback.PREFERENCE_ORDER

    @classmethod
    def for_backend(cls, name) -> "SelectionPolicy":
        return cls(Backend(name))


@dataclass(frozen=True)
class TransliterationResult:
    source: str
    chosen: str
    score: float
    matched: bool
    candidate_count: int

    def tsv(self) -> str:
        return "\t".join([self.source, self.chosen, repr(self.score),
                          str(self.matched).lower(), str(self.candidate_count)])


def _scorer(policy, model):
    if policy.backend is Backend.SIMPLE:
        if not isinstance(model, FrequencyModel):
            raise ModelMismatch(f"simple search needs a frequency model, got {type(model).__name__}")
        return lambda w: (w in model, model.query(w))
    if not isinstance(model, NGramModel):
        raise ModelMismatch(f"n-gram backend needs an n-gram model, got {type(model).__name__}")
    return lambda w: (w in model, query_unigram_logprob(model, w))


def select(candidates: CandidateSet, policy: SelectionPolicy, model) -> TransliterationResult:
    """Highest-scoring in-vocabulary candidate; earlier candidates win ties.

    With nothing in vocabulary, the first (most preferred) candidate is
    returned with ``matched=False``.
    """
    if not len(candidates):
        raise EmptyCandidates(f"no candidates for {candidates.source!r}")
    score_of = _scorer(policy, model)
    best = None
    for cand in candidates:
        known, score = score_of(cand)
        # strict > keeps the earlier candidate on ties
        if known and (best is None or score > best[1]):
            best = (cand, score)
    if best is None:
        first = candidates.candidates[0]
        result = TransliterationResult(candidates.source, first, score_of(first)[1],
                                       False, len(candidates))
    else:
        result = TransliterationResult(candidates.source, best[0], best[1], True, len(candidates))
    assert result.chosen in candidates
    return result


def transliterate_word(word: str, table: MappingTable, policy: SelectionPolicy, model,
                       cap: int = DEFAULT_CAP) -> TransliterationResult:
    cands = generate(reduce_elongation(word), table, cap)
    res = select(cands, policy, model)
    if res.source != word:
        res = TransliterationResult(word, res.chosen, res.score, res.matched, res.candidate_count)
    return res


def transliterate_message(text: str, table: MappingTable, policy: SelectionPolicy, model,
                          cap: int = DEFAULT_CAP) -> tuple[str, list[TransliterationResult]]:
    """Transliterate the Arabizi words of ``text``; everything else is copied.

    Words containing a symbol the table does not know are copied verbatim
    and logged, so one odd token never sinks the message.
    """
    tokens = tokenize(text)
    surfaces, results = [], []
    for tok in tokens:
        if tok.kind is not TokenKind.ARABIZI:
            surfaces.append(tok.surface)
            continue
        try:
            res = transliterate_word(tok.surface, table, policy, model, cap)
        except UnknownSymbol as exc:
            log.warning("kept %r verbatim: %s", tok.surface, exc)
            surfaces.append(tok.surface)
            continue
        surfaces.append(res.chosen)
        results.append(res)
    return detokenize(text, tokens, surfaces), results
