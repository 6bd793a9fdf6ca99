"""Social-media text normalisation: elongation, tokens, Arabic-only filter."""

from __future__ import annotations

import enum
import logging
import re
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .charmap import is_arabic_char

log = logging.getLogger(__name__)

_ELONGATION_RE = re.compile(r"(.)\1{2,}", re.DOTALL)
_ARABIZI_RE = re.compile(r"^[a-z0-9]+$")
_ARABIZI_MARKERS = frozenset("abcdefghijklmnopqrstuvwxyz3579")
_APOSTROPHES = "'’"


class TokenKind(enum.Enum):
    ARABIZI = "ArabiziWord"
    ARABIC = "ArabicWord"
    NUMBER = "Number"
    PUNCT = "Punctuation"
    OTHER = "Other"


@dataclass(frozen=True)
class RawMessage:
    text: str
    source_id: str = "-"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: TokenKind
    # offset into the text that was tokenized; not part of token identity
    start: int = field(default=0, compare=False)

    @property
    def end(self) -> int:
        return self.start + len(self.surface)


def reduce_elongation(word: str) -> str:
    """Collapse every run of 3+ identical characters to one character.

    >>> reduce_elongation("hiaaaaaati")
    'hiati'
    """
    return _ELONGATION_RE.sub(r"\1", word)


def _is_presentation_form(ch: str) -> bool:
    return "\ufb50" <= ch <= "\ufdff" or "\ufe70" <= ch <= "\ufefe"


def normalize_arabic(text: str) -> str:
    # presentation forms -> base letters, then canonical composition
    text = "".join(
        unicodedata.normalize("NFKC", ch) if _is_presentation_form(ch) else ch
        for ch in text
    )
    return unicodedata.normalize("NFC", text)


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] == "P"


def fold_arabizi(surface: str) -> str:
    """Lowercase and drop word-internal apostrophes ("m3a'k" -> "m3ak")."""
    s = surface.lower()
    if not any(a in s for a in _APOSTROPHES):
        return s
    out = []
    for i, ch in enumerate(s):
        if ch in _APOSTROPHES and 0 < i < len(s) - 1 and s[i - 1].isalnum() and s[i + 1].isalnum():
            continue
        out.append(ch)
    return "".join(out)


def classify_token(surface: str) -> Token:
    if surface and all(_is_punct(ch) for ch in surface):
        return Token(surface, TokenKind.PUNCT)
    folded = fold_arabizi(surface)
    if _ARABIZI_RE.match(folded) and any(ch in _ARABIZI_MARKERS for ch in folded):
        return Token(surface, TokenKind.ARABIZI)
    if surface.isdecimal():
        return Token(surface, TokenKind.NUMBER)
    if all(is_arabic_char(ch) for ch in surface):
        return Token(surface, TokenKind.ARABIC)
    return Token(surface, TokenKind.OTHER)


def _peel(chunk: str, offset: int) -> list[Token]:
    i, j = 0, len(chunk)
    while i < j and _is_punct(chunk[i]):
        i += 1
    if i == j:
        return [Token(chunk, TokenKind.PUNCT, offset)]
    while j > i and _is_punct(chunk[j - 1]):
        j -= 1
    out = []
    if i:
        out.append(Token(chunk[:i], TokenKind.PUNCT, offset))
    core = classify_token(chunk[i:j])
    out.append(Token(core.surface, core.kind, offset + i))
    if j < len(chunk):
        out.append(Token(chunk[j:], TokenKind.PUNCT, offset + j))
    return out


def tokenize(message) -> list[Token]:
    """Whitespace split, then split leading/trailing punctuation runs off.

    Accepts a :class:`RawMessage` or a plain string.  Token offsets index
    into the input text, so :func:`detokenize` can restore the separators.
    """
    text = message.text if isinstance(message, RawMessage) else message
    tokens = []
    for m in re.finditer(r"\S+", text):
        tokens.extend(_peel(m.group(), m.start()))
    return tokens


def detokenize(text: str, tokens: list[Token], surfaces: Optional[list[str]] = None) -> str:
    """Rebuild ``text`` with each token's surface replaced by ``surfaces[i]``."""
    if surfaces is None:
        surfaces = [t.surface for t in tokens]
    out, pos = [], 0
    for tok, surf in zip(tokens, surfaces):
        out.append(text[pos:tok.start])
        out.append(surf)
        pos = tok.end
    out.append(text[pos:])
    return "".join(out)


@dataclass
class FilterStats:
    kept: int = 0
    dropped: int = 0

    def __str__(self):
        return f"kept/dropped: {self.kept}/{self.dropped}"


def filter_arabic_corpus(messages: Iterable, stats: Optional[FilterStats] = None) -> Iterator[RawMessage]:
    """Yield only messages written purely in Arabic script, de-elongated.

    A message survives when it has at least one Arabic word and every token
    is Arabic, a number or punctuation.  ``stats`` (if given) is updated in
    place as the stream is consumed.
    """
    if stats is None:
        stats = FilterStats()
    for msg in messages:
        if not isinstance(msg, RawMessage):
            msg = RawMessage(msg)
        text = normalize_arabic(msg.text)
        tokens = tokenize(text)
        kinds = {t.kind for t in tokens}
        if TokenKind.ARABIC not in kinds or kinds - {TokenKind.ARABIC, TokenKind.NUMBER, TokenKind.PUNCT}:
            stats.dropped += 1
            continue
        stats.kept += 1
        cleaned = detokenize(text, tokens, [reduce_elongation(t.surface) for t in tokens])
        yield RawMessage(cleaned, msg.source_id)
    log.debug("arabic filter %s", stats)
