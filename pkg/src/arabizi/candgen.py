"""Segmentation of Arabizi words and Cartesian candidate expansion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .charmap import ArabiziSymbol, MappingTable, Position
from .errors import EmptyResult, UnknownSymbol
from .textprep import fold_arabizi

DEFAULT_CAP = 4096


@dataclass(frozen=True)
class Segmentation:
    units: tuple[tuple[ArabiziSymbol, Position], ...]

    @property
    def text(self) -> str:
        return "".join(sym.text for sym, _ in self.units)

    def __len__(self):
        return len(self.units)


@dataclass(frozen=True)
class CandidateSet:
    source: str
    candidates: tuple[str, ...]
    truncated: bool = False

    def __len__(self):
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)

    def __contains__(self, item):
        return item in self.candidates

    def rank(self, candidate: str) -> int:
        return self.candidates.index(candidate)


def _position(i: int, n: int) -> Position:
    if n == 1:
        return Position.SOLE
    if i == 0:
        return Position.INITIAL
    if i == n - 1:
        return Position.FINAL
    return Position.MEDIAL


def segment(word: str, table: MappingTable) -> Segmentation:
    """Greedy left-to-right split into digraphs and single symbols."""
    folded = fold_arabizi(word)
    pieces = []
    i = 0
    while i < len(folded):
        pair = folded[i:i + 2]
        if len(pair) == 2 and pair in table.digraphs:
            pieces.append(pair)
            i += 2
            continue
        ch = folded[i]
        if ch not in table:
            raise UnknownSymbol(ch, i, folded)
        pieces.append(ch)
        i += 1
    n = len(pieces)
    return Segmentation(tuple(
        (ArabiziSymbol(p), _position(k, n)) for k, p in enumerate(pieces)
    ))


def generate(word: str, table: MappingTable, cap: int = DEFAULT_CAP) -> CandidateSet:
    """Every Arabic spelling the table allows for ``word``, best-first.

    The product is walked in preference order (first unit most significant),
    duplicates produced by empty vowel choices are dropped, and enumeration
    stops once ``cap`` distinct candidates are collected.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    seg = segment(word, table)
    options = [table.lookup(sym, pos) for sym, pos in seg.units]
    seen = {}
    truncated = False
    for combo in itertools.product(*options):
        cand = "".join(combo)
        if not cand or cand in seen:
            continue
        if len(seen) == cap:
            truncated = True
            break
        seen[cand] = None
    if not seen:
        raise EmptyResult(f"no nonempty candidate for {word!r}")
    return CandidateSet(word, tuple(seen), truncated)
