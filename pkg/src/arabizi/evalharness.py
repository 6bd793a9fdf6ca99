"""Word accuracy against gold transliterations, error classes, fraction grid."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Container, Iterable, Optional, Sequence

from .candgen import DEFAULT_CAP, generate
from .charmap import MappingTable, is_arabic_char, load_default_table
from .errors import EmptyCorpus, EmptyTestSet, MalformedGold, UnknownSymbol
from .langmodel import (FRACTIONS, FrequencyModel, NGramModel, build_frequency, build_ngram,
                        slice_corpus)
from .selector import Backend, SelectionPolicy, select
from .textprep import TokenKind, classify_token, fold_arabizi, reduce_elongation

LONG_VOWELS = frozenset("ايوة")


class ErrorClass(enum.Enum):
    VOWEL_OMITTED = "VowelOmitted"
    VOWEL_INSERTED = "VowelInserted"
    CONTEXT_AMBIGUOUS = "ContextAmbiguous"
    FOREIGN_WORD = "ForeignWord"
    OTHER = "Other"


@dataclass(frozen=True)
class GoldPair:
    arabizi: str
    gold: str
    alternatives: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.arabizi or classify_token(self.arabizi).kind is not TokenKind.ARABIZI:
            raise MalformedGold(f"{self.arabizi!r} is not an Arabizi word")
        for g in self.accepted:
            if not g or not all(is_arabic_char(ch) for ch in g):
                raise MalformedGold(f"gold {g!r} for {self.arabizi!r} is not Arabic script")

    @property
    def accepted(self) -> tuple[str, ...]:
        return (self.gold,) + self.alternatives


def load_gold(text: str) -> list[GoldPair]:
    """Parse ``arabizi<TAB>gold[|gold2...]`` lines; ``#`` starts a comment."""
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.rstrip("\r").split("\t")
        if len(cols) != 2:
            raise MalformedGold(f"line {lineno}: expected 2 tab-separated fields")
        golds = [g.strip() for g in cols[1].split("|")]
        try:
            pairs.append(GoldPair(cols[0].strip(), golds[0], tuple(golds[1:])))
        except MalformedGold as exc:
            raise MalformedGold(f"line {lineno}: {exc}") from None
    return pairs


def read_gold(path) -> list[GoldPair]:
    try:
        return load_gold(Path(path).read_text(encoding="utf-8"))
    except UnicodeDecodeError as exc:
        raise MalformedGold(f"{path}: not UTF-8") from exc


# -- error classes -----------------------------------------------------------

def _extends_with_vowels(longer: str, shorter: str) -> bool:
    """True if ``longer`` is ``shorter`` with >=1 long-vowel letters inserted."""
    if len(longer) <= len(shorter):
        return False

    @lru_cache(maxsize=None)
    def fits(i, j):
        if i == len(longer):
            return j == len(shorter)
        if j < len(shorter) and longer[i] == shorter[j] and fits(i + 1, j + 1):
            return True
        return longer[i] in LONG_VOWELS and fits(i + 1, j)

    return fits(0, 0)


# Trigrams typical of French spelling, minus those common in Algerian Arabizi.
_FRENCH_WORDS = (
    "les des une pour avec dans sur pas plus tout mais comme elle nous vous "
    "leur cette sont fait aussi tres bien merci bonjour quoi encore toujours "
    "affichage message voiture travail probleme semestre question telephone "
    "vraiment normalement maintenant"
).split()
_ARABIZI_WORDS = (
    "rani raki wach kifach bezaf mlih sahbi khoya chwiya nta nti ana howa hiya "
    "ghir bark kraht hiati rahou rahi lyoum ghodwa drahem 3andek 7ata ma3lich "
    "wallah inchallah saha khir bled dar tbib 5obz 9alb"
).split()


def _trigrams(words):
    return {w[i:i + 3] for w in words for i in range(len(w) - 2)}


FOREIGN_TRIGRAMS = frozenset(_trigrams(_FRENCH_WORDS) - _trigrams(_ARABIZI_WORDS))


def looks_foreign(source: str) -> bool:
    word = reduce_elongation(fold_arabizi(source))
    return any(word[i:i + 3] in FOREIGN_TRIGRAMS for i in range(len(word) - 2))


def classify_error(source: str, chosen: str, gold: str,
                   candidates: Optional[Container[str]] = None,
                   vocab: Optional[Container[str]] = None) -> ErrorClass:
    """Diagnose a wrong transliteration.

    Context ambiguity is tested first: when both spellings are generated
    and both are attested words, a vowel difference between them is a
    sense choice rather than a rule failure.
    """
    if (candidates is not None and vocab is not None
            and chosen in candidates and gold in candidates
            and chosen in vocab and gold in vocab):
        return ErrorClass.CONTEXT_AMBIGUOUS
    if _extends_with_vowels(gold, chosen):
        return ErrorClass.VOWEL_OMITTED
    if _extends_with_vowels(chosen, gold):
        return ErrorClass.VOWEL_INSERTED
    if looks_foreign(source):
        return ErrorClass.FOREIGN_WORD
    return ErrorClass.OTHER


# -- reports -----------------------------------------------------------------

@dataclass
class EvalReport:
    total_words: int
    correct: int
    breakdown: dict[str, int] = field(default_factory=dict)
    grid: dict[tuple[int, str], float] = field(default_factory=dict)
    rows: list[tuple[str, str, str, bool, str]] = field(default_factory=list, repr=False)
    slices: dict[int, object] = field(default_factory=dict, repr=False)

    @property
    def accuracy(self) -> float:
        return self.correct / self.total_words if self.total_words else 0.0

    def to_dict(self) -> dict:
        grid = {}
        for (fraction, backend), acc in sorted(self.grid.items()):
            grid.setdefault(backend, {})[str(fraction)] = acc
        return {
            "total": self.total_words,
            "correct": self.correct,
            "accuracy": self.accuracy,
            "breakdown": dict(sorted(self.breakdown.items())),
            "grid": grid,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=False)


def evaluate(pairs: Sequence[GoldPair], table: MappingTable, policy: SelectionPolicy, model,
             cap: int = DEFAULT_CAP) -> EvalReport:
    if not pairs:
        raise EmptyTestSet("no gold pairs to evaluate")
    correct = 0
    breakdown = {c.value: 0 for c in ErrorClass}
    rows = []
    for pair in pairs:
        try:
            cands = generate(reduce_elongation(pair.arabizi), table, cap)
            chosen = select(cands, policy, model).chosen
        except UnknownSymbol:
            chosen, cands = pair.arabizi, None
        if chosen in pair.accepted:
            correct += 1
            rows.append((pair.arabizi, chosen, pair.gold, True, ""))
            continue
        err = classify_error(pair.arabizi, chosen, pair.gold, cands, model)
        breakdown[err.value] += 1
        rows.append((pair.arabizi, chosen, pair.gold, False, err.value))
    return EvalReport(len(pairs), correct, breakdown, rows=rows)


def run_grid(train_corpus: Iterable, pairs: Sequence[GoldPair],
             fractions: Iterable[int] = FRACTIONS,
             backends: Iterable = (Backend.SIMPLE, Backend.NGRAM),
             seed: int = 42, table: Optional[MappingTable] = None,
             order: int = 2, cap: int = DEFAULT_CAP) -> EvalReport:
    """Train on nested corpus slices and evaluate each (fraction, backend).

    The headline totals of the returned report belong to the largest
    fraction under the first backend.
    """
    if table is None:
        table = load_default_table()
    fractions = sorted(set(fractions))
    for f in fractions:
        if f not in FRACTIONS:
            raise ValueError(f"fraction must be one of {FRACTIONS}, got {f!r}")
    backends = [Backend(b) if not isinstance(b, Backend) else b for b in backends]
    corpus = list(train_corpus)
    grid, slices = {}, {}
    headline = None
    for fraction in fractions:
        info, part = slice_corpus(corpus, fraction, seed)
        slices[fraction] = info
        for backend in backends:
            try:
                if backend is Backend.SIMPLE:
                    model = build_frequency(part)
                else:
                    model = build_ngram(part, order)
            except EmptyCorpus:
                # every word falls back to its preferred candidate
                model = FrequencyModel() if backend is Backend.SIMPLE else NGramModel.empty(order)
            rep = evaluate(pairs, table, SelectionPolicy(backend), model, cap)
            grid[(fraction, backend.value)] = rep.accuracy
            headline = rep if backend is backends[0] else headline
    headline.grid = grid
    headline.slices = slices
    return headline


def trend_summary(report: EvalReport) -> list[str]:
    """One line per backend saying whether accuracy grows with corpus size."""
    lines = []
    for backend in sorted({b for _, b in report.grid}):
        series = sorted((f, acc) for (f, b), acc in report.grid.items() if b == backend)
        drops = [f"{a[0]}%->{b[0]}%" for a, b in zip(series, series[1:]) if b[1] < a[1]]
        if drops:
            lines.append(f"{backend}: accuracy drops at {', '.join(drops)}")
        else:
            lines.append(f"{backend}: accuracy nondecreasing in corpus fraction "
                         f"({series[0][1]:.4f} -> {series[-1][1]:.4f})")
    return lines


_BACKEND_LABELS = {"simple": "simple-search", "ngram": "n-gram"}


def render_table(reports: dict[str, EvalReport]) -> str:
    """Tab-separated accuracy table: one row per backend and test set."""
    fractions = sorted({f for rep in reports.values() for f, _ in rep.grid})
    backends = sorted({b for rep in reports.values() for _, b in rep.grid},
                      key=lambda b: list(_BACKEND_LABELS).index(b) if b in _BACKEND_LABELS else 99)
    out = ["\t".join(["approach", "test_set"] + [f"{f}%" for f in fractions])]
    for backend in backends:
        for name, rep in reports.items():
            cells = [f"{100 * rep.grid[(f, backend)]:.2f}" if (f, backend) in rep.grid else "-"
                     for f in fractions]
            out.append("\t".join([_BACKEND_LABELS.get(backend, backend), name] + cells))
    return "\n".join(out) + "\n"
