"""Word-frequency and n-gram scoring backends over an Arabic corpus.

The n-gram model uses interpolated absolute discounting.  It is stored in
backoff form, ARPA style: every seen n-gram carries its full interpolated
log10 probability and every lower-order n-gram a log10 backoff weight, so
a query is a handful of dict lookups.  The unigram level interpolates
with a uniform distribution over the observed types plus one ``<unk>``
event, so unknown words always score below known ones.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Union

from .errors import BadOrder, CorruptModel, EmptyCorpus, IoFailure, VersionMismatch
from .textprep import RawMessage, TokenKind, normalize_arabic, tokenize

BOS, EOS, UNK = "<s>", "</s>", "<unk>"
DISCOUNT = 0.75
MAX_ORDER = 5
FRACTIONS = (1, 5, 10, 25, 50, 75, 100)
FORMAT_VERSION = "v1"

_SKIP_KINDS = (TokenKind.PUNCT, TokenKind.NUMBER)


def corpus_words(message) -> list[str]:
    """Scoring tokens of one message; punctuation and numbers are skipped."""
    text = message.text if isinstance(message, RawMessage) else message
    return [normalize_arabic(t.surface) for t in tokenize(text) if t.kind not in _SKIP_KINDS]


# -- frequency backend -------------------------------------------------------

@dataclass
class FrequencyModel:
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def total_tokens(self) -> int:
        return sum(self.counts.values())

    @property
    def vocab_size(self) -> int:
        return len(self.counts)

    def __contains__(self, word) -> bool:
        return word in self.counts

    def query(self, word: str) -> int:
        return self.counts.get(word, 0)

    def merge(self, other: "FrequencyModel") -> "FrequencyModel":
        merged = Counter(self.counts)
        merged.update(other.counts)
        return FrequencyModel(dict(merged))


def build_frequency(corpus: Iterable) -> FrequencyModel:
    counts = Counter()
    for msg in corpus:
        counts.update(corpus_words(msg))
    if not counts:
        raise EmptyCorpus("corpus has no words")
    return FrequencyModel(dict(counts))


def query_frequency(model: FrequencyModel, word: str) -> int:
    return model.query(word)


# -- n-gram backend ----------------------------------------------------------

@dataclass
class NGramModel:
    order: int
    logprobs: dict[tuple[str, ...], float]
    backoffs: dict[tuple[str, ...], float]
    vocab: frozenset[str]
    discount: float = DISCOUNT

    def __contains__(self, word) -> bool:
        return word in self.vocab

    def _known(self, word):
        return word if word in self.vocab or word in (BOS, EOS) else UNK

    def logprob(self, word: str, history=()) -> float:
        """log10 p(word | history)."""
        word = self._known(word)
        if word == BOS:
            word = UNK
        hist = tuple(self._known(h) for h in history)
        hist = hist[max(0, len(hist) - self.order + 1):] if self.order > 1 else ()
        total = 0.0
        while True:
            lp = self.logprobs.get(hist + (word,))
            if lp is not None:
                return total + lp
            total += self.backoffs.get(hist, 0.0)
            hist = hist[1:]

    def prob(self, word: str, history=()) -> float:
        return 10.0 ** self.logprob(word, history)

    @classmethod
    def empty(cls, order: int = 2) -> "NGramModel":
        """A model that knows no words; every query gets the whole mass."""
        backoffs = {(UNK,): 0.0, (BOS,): 0.0} if order > 1 else {}
        return cls(order, {(UNK,): 0.0}, backoffs, frozenset())

    @property
    def events(self) -> list[str]:
        """Every predictable outcome: the vocabulary, ``</s>`` and ``<unk>``."""
        return sorted(self.vocab) + [EOS, UNK]


def _ngrams(seq, n):
    for i in range(len(seq) - n + 1):
        yield tuple(seq[i:i + n])


def _interpolated(probs, gammas, word, hist):
    weight = 1.0
    while hist + (word,) not in probs:
        weight *= gammas.get(hist, 1.0)
        hist = hist[1:]
    return weight * probs[hist + (word,)]


def build_ngram(corpus: Iterable, order: int = 2, discount: float = DISCOUNT) -> NGramModel:
    if isinstance(order, bool) or not isinstance(order, int) or not 1 <= order <= MAX_ORDER:
        raise BadOrder(f"order must be in 1..{MAX_ORDER}, got {order!r}")
    counts = [Counter() for _ in range(order + 1)]
    for msg in corpus:
        words = corpus_words(msg)
        if not words:
            continue
        sent = [BOS] + words + [EOS]
        counts[1].update(sent[1:])
        for k in range(2, order + 1):
            counts[k].update(_ngrams(sent, k))
    if not counts[1]:
        raise EmptyCorpus("corpus has no words")

    # unigrams interpolate with a uniform floor over the types plus <unk>
    n_tokens = sum(counts[1].values())
    n_types = len(counts[1])
    floor = discount * n_types / n_tokens / (n_types + 1)
    probs = {(w,): (c - discount) / n_tokens + floor for w, c in counts[1].items()}
    probs[(UNK,)] = floor

    gammas = {}
    for k in range(2, order + 1):
        hist_total, hist_types = Counter(), Counter()
        for g, c in counts[k].items():
            hist_total[g[:-1]] += c
            hist_types[g[:-1]] += 1
        for h, total in hist_total.items():
            gammas[h] = discount * hist_types[h] / total
        for g, c in counts[k].items():
            h = g[:-1]
            lower = _interpolated(probs, gammas, g[-1], h[1:])
            probs[g] = (c - discount) / hist_total[h] + gammas[h] * lower

    logprobs = {g: math.log10(p) for g, p in probs.items()}
    backoffs = {}
    if order > 1:
        for g in probs:
            if len(g) < order:
                backoffs[g] = math.log10(gammas.get(g, 1.0))
        backoffs[(BOS,)] = math.log10(gammas[(BOS,)])
    vocab = frozenset(w for w in counts[1] if w != EOS)
    return NGramModel(order, logprobs, backoffs, vocab, discount)


def query_unigram_logprob(model: NGramModel, word: str) -> float:
    """log10 unigram probability; out-of-vocabulary words get the ``<unk>`` mass."""
    lp = model.logprobs.get((word,)) if word in model.vocab else None
    return model.logprobs[(UNK,)] if lp is None else lp


# -- nested corpus slices ----------------------------------------------------

@dataclass(frozen=True)
class CorpusSlice:
    fraction: int
    seed: int
    message_count: int
    indices: tuple[int, ...] = field(default=(), repr=False)

    @property
    def digest(self) -> str:
        return hashlib.sha256(",".join(map(str, self.indices)).encode()).hexdigest()

    def issubset(self, other: "CorpusSlice") -> bool:
        return set(self.indices) <= set(other.indices)


def slice_score(text: str, index: int, seed: int) -> float:
    """Uniform-looking value in [0, 1) fixed by (seed, position, text)."""
    h = hashlib.sha256(f"{seed}\x1f{index}\x1f{text}".encode("utf-8")).digest()
    return int.from_bytes(h[:8], "big") / 2.0 ** 64


def _check_fraction(fraction):
    if fraction not in FRACTIONS:
        raise ValueError(f"fraction must be one of {FRACTIONS}, got {fraction!r}")


def iter_slice(corpus: Iterable, fraction: int, seed: int) -> Iterator[tuple[int, object]]:
    """Yield ``(index, message)`` for the messages inside the slice.

    A message is kept when its score is below ``fraction / 100``, so a
    smaller fraction always selects a subset of a larger one.
    """
    _check_fraction(fraction)
    threshold = fraction / 100.0
    for i, msg in enumerate(corpus):
        text = msg.text if isinstance(msg, RawMessage) else msg
        if fraction == 100 or slice_score(text, i, seed) < threshold:
            yield i, msg


def slice_corpus(corpus: Iterable, fraction: int, seed: int) -> tuple[CorpusSlice, list]:
    picked = list(iter_slice(corpus, fraction, seed))
    info = CorpusSlice(fraction, seed, len(picked), tuple(i for i, _ in picked))
    return info, [m for _, m in picked]


# -- persistence -------------------------------------------------------------

Model = Union[FrequencyModel, NGramModel]


def _fmt(x: float) -> str:
    return repr(float(x))


def dump_model(model: Model) -> str:
    if isinstance(model, FrequencyModel):
        body = "".join(f"{w}\t{c}\n" for w, c in sorted(model.counts.items()))
        digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
        head = (f"#FREQ {FORMAT_VERSION} total={model.total_tokens} "
                f"vocab={model.vocab_size} sha256={digest}\n")
        return head + body
    if isinstance(model, NGramModel):
        lines = []
        for k in range(1, model.order + 1):
            lines.append(f"\\{k}-grams:")
            grams = sorted(g for g in model.logprobs if len(g) == k)
            if k == 1 and model.order > 1:
                grams = [(BOS,)] + grams
            for g in grams:
                lp = model.logprobs.get(g, float("-inf"))
                row = [_fmt(lp), " ".join(g)]
                if k < model.order:
                    row.append(_fmt(model.backoffs[g]))
                lines.append("\t".join(row))
        body = "\n".join(lines) + "\n"
        digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
        head = (f"#NGRAM {FORMAT_VERSION} order={model.order} vocab={len(model.vocab)} "
                f"discount={_fmt(model.discount)} sha256={digest}\n")
        return head + body
    raise TypeError(f"not a model: {type(model).__name__}")


def _parse_header(line):
    parts = line.split()
    if len(parts) < 2 or parts[0] not in ("#FREQ", "#NGRAM"):
        raise CorruptModel("missing model header")
    if parts[1] != FORMAT_VERSION:
        raise VersionMismatch(f"model format {parts[1]!r}, expected {FORMAT_VERSION!r}")
    fields = {}
    for p in parts[2:]:
        key, sep, value = p.partition("=")
        if not sep:
            raise CorruptModel(f"bad header field {p!r}")
        fields[key] = value
    return parts[0], fields


def parse_model(text: str) -> Model:
    head, nl, body = text.partition("\n")
    if not nl:
        raise CorruptModel("truncated model file")
    kind, fields = _parse_header(head)
    if hashlib.sha256(body.encode("utf-8")).hexdigest() != fields.get("sha256"):
        raise CorruptModel("checksum mismatch")
    try:
        if kind == "#FREQ":
            counts = {}
            for line in body.splitlines():
                w, c = line.split("\t")
                counts[w] = int(c)
            model = FrequencyModel(counts)
            if model.total_tokens != int(fields["total"]) or model.vocab_size != int(fields["vocab"]):
                raise CorruptModel("header totals disagree with body")
            return model
        order = int(fields["order"])
        logprobs, backoffs = {}, {}
        k = 0
        for line in body.splitlines():
            if line.startswith("\\"):
                k = int(line[1:line.index("-")])
                continue
            cols = line.split("\t")
            g = tuple(cols[1].split(" "))
            if len(g) != k or len(cols) != (3 if k < order else 2):
                raise CorruptModel(f"bad {k}-gram line {line!r}")
            lp = float(cols[0])
            if lp != float("-inf"):
                logprobs[g] = lp
            if k < order:
                backoffs[g] = float(cols[2])
        vocab = frozenset(g[0] for g in logprobs if len(g) == 1 and g[0] not in (EOS, UNK))
        if len(vocab) != int(fields["vocab"]):
            raise CorruptModel("header vocabulary size disagrees with body")
        return NGramModel(order, logprobs, backoffs, vocab, float(fields["discount"]))
    except (KeyError, ValueError, IndexError) as exc:
        raise CorruptModel(f"unparsable model body: {exc}") from None


def save_model(model: Model, path) -> None:
    try:
        Path(path).write_text(dump_model(model), encoding="utf-8")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def load_model(path) -> Model:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise CorruptModel(f"{path}: not UTF-8") from exc
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    return parse_model(text)
