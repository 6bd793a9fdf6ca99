"""Arabizi -> Arabic symbol table with position-dependent vowel rules.

The table maps ``(symbol, position)`` to an ordered list of Arabic
replacement strings.  The first replacement is the preferred one; the order
drives candidate ordering and tie-breaking downstream.  The empty string
stands for "write nothing" and is only allowed for vowels in mid-word.

Mapping files are plain UTF-8 text::

    # version: default-1
    t<TAB>final<TAB>ت|ط
    a<TAB>medial<TAB>ا|NULL
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .errors import DuplicateEntry, MalformedEntry, MissingPosition, UnknownSymbol

NULL_TOKEN = "NULL"
VOWELS = frozenset({"a", "e", "i", "o", "u", "y", "ou"})
DEFAULT_VERSION = "default-1"

_SYMBOL_RE = re.compile(r"^[a-z0-9]{1,2}$")
_VERSION_RE = re.compile(r"^#\s*version:\s*(\S+)\s*$")


class Position(enum.Enum):
    INITIAL = "initial"
    MEDIAL = "medial"
    FINAL = "final"
    SOLE = "sole"

    @classmethod
    def parse(cls, name: str) -> "Position":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise MalformedEntry(f"bad position {name!r}") from None


@dataclass(frozen=True)
class ArabiziSymbol:
    text: str

    def __post_init__(self):
        folded = self.text.lower()
        if not _SYMBOL_RE.match(folded):
            raise MalformedEntry(f"bad Arabizi symbol {self.text!r}")
        object.__setattr__(self, "text", folded)

    @property
    def is_digraph(self) -> bool:
        return len(self.text) == 2

    def __str__(self):
        return self.text


def is_arabic_char(ch: str) -> bool:
    return "؀" <= ch <= "ۿ"


def _consonant(*repl):
    return {pos: tuple(repl) for pos in Position}


def _vowel(initial, medial, final):
    return {
        Position.INITIAL: tuple(initial),
        Position.MEDIAL: tuple(medial),
        Position.FINAL: tuple(final),
        Position.SOLE: tuple(initial),
    }


# Consonants read off the published letter table; vowel rows are positional.
# Row "a" deliberately leaves out ع, which stays reachable through "3".
_DEFAULT_ROWS = {
    "a": _vowel(["أ"], ["ا", ""], ["ة", "ا"]),
    "b": _consonant("ب"),
    "c": _consonant("س", "ك"),
    "d": _consonant("د", "ض", "ظ"),
    "e": _vowel(["ا"], ["ا", ""], ["ا"]),
    "f": _consonant("ف"),
    "g": _consonant("ق"),
    "h": _consonant("ه", "ح"),
    "i": _vowel(["اي"], ["ي", ""], ["ي"]),
    "j": _consonant("ج"),
    "k": _consonant("ك", "ق"),
    "l": _consonant("ل"),
    "m": _consonant("م"),
    "n": _consonant("ن"),
    "o": _vowel(["أو"], ["و", ""], ["و"]),
    "p": _consonant("ب"),
    "q": _consonant("ك"),
    "r": _consonant("ر", "غ"),
    "s": _consonant("س", "ص"),
    "t": _consonant("ت", "ط"),
    "u": _vowel(["أو"], ["و", ""], ["و"]),
    "v": _consonant("ف"),
    "w": _consonant("و"),
    "x": _consonant("كس"),
    "y": _vowel(["اي"], ["ي", ""], ["ي"]),
    "z": _consonant("ز"),
    "3": _consonant("ع"),
    "5": _consonant("خ"),
    "7": _consonant("ح"),
    "9": _consonant("ق"),
    # digraphs, matched greedily before single letters
    "dj": _consonant("ج"),
    "kh": _consonant("خ"),
    "gh": _consonant("غ"),
    "ch": _consonant("ش"),
    "sh": _consonant("ش"),
    "th": _consonant("ث"),
    "ou": _vowel(["أو"], ["و", ""], ["و"]),
}


class MappingTable:
    """Immutable ``(symbol, position) -> replacements`` table.

    Construction validates every entry; an instance that exists is valid.
    Symbol iteration order is the order the rows were given in, which is
    also the order :func:`dump_table` writes them back.
    """

    __slots__ = ("_entries", "_symbols", "_digraphs", "version")

    def __init__(self, entries: Mapping[tuple[str, Position], Iterable[str]],
                 version: str = DEFAULT_VERSION):
        clean = {}
        symbols = []
        for (sym, pos), repl in entries.items():
            sym = ArabiziSymbol(sym).text
            if not isinstance(pos, Position):
                pos = Position.parse(pos)
            repl = tuple(repl)
            _check_replacements(sym, pos, repl)
            if (sym, pos) in clean:
                raise DuplicateEntry(f"duplicate entry for ({sym!r}, {pos.value})")
            clean[(sym, pos)] = repl
            if sym not in symbols:
                symbols.append(sym)
        for sym in symbols:
            missing = [p.value for p in Position if (sym, p) not in clean]
            if missing:
                raise MissingPosition(f"symbol {sym!r} lacks positions {missing}")
        self._entries = MappingProxyType(clean)
        self._symbols = tuple(symbols)
        self._digraphs = frozenset(s for s in symbols if len(s) == 2)
        self.version = version

    @property
    def entries(self) -> Mapping[tuple[str, Position], tuple[str, ...]]:
        return self._entries

    @property
    def symbols(self) -> tuple[str, ...]:
        return self._symbols

    @property
    def digraphs(self) -> frozenset[str]:
        return self._digraphs

    def __contains__(self, sym) -> bool:
        return (str(sym).lower(), Position.INITIAL) in self._entries

    def lookup(self, sym: Union[str, ArabiziSymbol], pos: Position) -> tuple[str, ...]:
        key = (str(sym).lower(), pos)
        try:
            return self._entries[key]
        except KeyError:
            raise UnknownSymbol(str(sym)) from None

    def __eq__(self, other):
        if not isinstance(other, MappingTable):
            return NotImplemented
        return (self.version == other.version
                and self._symbols == other._symbols
                and dict(self._entries) == dict(other._entries))

    def __hash__(self):
        return hash((self.version, self._symbols))

    def __repr__(self):
        return f"MappingTable(version={self.version!r}, symbols={len(self._symbols)})"


def _check_replacements(sym, pos, repl):
    if not repl:
        raise MalformedEntry(f"({sym!r}, {pos.value}) has no replacements")
    if len(set(repl)) != len(repl):
        raise MalformedEntry(f"({sym!r}, {pos.value}) lists a replacement twice")
    for r in repl:
        if len(r) > 2 or not all(is_arabic_char(ch) for ch in r):
            raise MalformedEntry(f"({sym!r}, {pos.value}): {r!r} is not 0-2 Arabic letters")
        if r == "" and (sym not in VOWELS or pos is not Position.MEDIAL):
            raise MalformedEntry(f"({sym!r}, {pos.value}): NULL only allowed for medial vowels")


def lookup(table: MappingTable, sym, pos: Position) -> tuple[str, ...]:
    return table.lookup(sym, pos)


def load_default_table() -> MappingTable:
    entries = {}
    for sym, row in _DEFAULT_ROWS.items():
        for pos in Position:
            entries[(sym, pos)] = row[pos]
    return MappingTable(entries, DEFAULT_VERSION)


def load_table(source: str) -> MappingTable:
    """Parse mapping-file text into a validated table."""
    entries = {}
    version = DEFAULT_VERSION
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        if line.startswith("#"):
            m = _VERSION_RE.match(line)
            if m:
                version = m.group(1)
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise MalformedEntry(f"line {lineno}: expected 3 tab-separated fields")
        sym, pos, repl = parts
        try:
            sym = ArabiziSymbol(sym.strip()).text
        except MalformedEntry as exc:
            raise MalformedEntry(f"line {lineno}: {exc}") from None
        pos = Position.parse(pos)
        if (sym, pos) in entries:
            raise DuplicateEntry(f"line {lineno}: duplicate entry for ({sym!r}, {pos.value})")
        entries[(sym, pos)] = tuple("" if r == NULL_TOKEN else r for r in repl.split("|"))
    return MappingTable(entries, version)


def dump_table(table: MappingTable) -> str:
    lines = [f"# version: {table.version}", "# symbol\tposition\treplacements"]
    for sym in table.symbols:
        for pos in Position:
            repl = "|".join(r if r else NULL_TOKEN for r in table.lookup(sym, pos))
            lines.append(f"{sym}\t{pos.value}\t{repl}")
    return "\n".join(lines) + "\n"


def read_table(path) -> MappingTable:
    return load_table(Path(path).read_text(encoding="utf-8"))


def write_table(table: MappingTable, path) -> None:
    Path(path).write_text(dump_table(table), encoding="utf-8")
