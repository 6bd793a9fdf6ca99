import pytest

from arabizi.charmap import (VOWELS, ArabiziSymbol, MappingTable, Position, dump_table,
                             load_default_table, load_table, lookup, read_table, write_table)
from arabizi.errors import DuplicateEntry, MalformedEntry, MissingPosition, UnknownSymbol

from oracles import CONSONANTS, MULTI


def test_table_rows(table):
    assert lookup(table, "b", Position.MEDIAL) == ("ب",)
    assert lookup(table, "3", Position.INITIAL) == ("ع",)
    assert lookup(table, "t", Position.FINAL) == ("ت", "ط")


def test_positional_vowel_rules(table):
    assert table.lookup("a", Position.INITIAL) == ("أ",)
    assert table.lookup("a", Position.MEDIAL) == ("ا", "")
    assert table.lookup("dj", Position.MEDIAL) == ("ج",)


@pytest.mark.parametrize("sym,pos,size", [
    ("a", Position.MEDIAL, 2), ("i", Position.MEDIAL, 2),
    ("i", Position.FINAL, 1), ("a", Position.FINAL, 2),
])
def test_vowel_cardinalities(table, sym, pos, size):
    assert len(table.lookup(sym, pos)) == size


def test_consonants_match_hand_transcription(table):
    for sym, letters in CONSONANTS.items():
        for pos in Position:
            assert table.lookup(sym, pos) == tuple(letters)
    assert table.lookup("x", Position.MEDIAL) == tuple(MULTI["x"])


def test_sole_uses_initial(table):
    for sym in table.symbols:
        assert table.lookup(sym, Position.SOLE) == table.lookup(sym, Position.INITIAL)


def test_entry_invariants(table):
    for (sym, pos), repl in table.entries.items():
        assert repl and len(set(repl)) == len(repl)
        if "" in repl:
            assert sym in VOWELS and pos is Position.MEDIAL
    for sym in VOWELS:
        assert "" in table.lookup(sym, Position.MEDIAL)


def test_unknown_symbol(table):
    with pytest.raises(UnknownSymbol):
        table.lookup("2", Position.INITIAL)


def test_symbol_type():
    assert ArabiziSymbol("DJ").text == "dj"
    assert ArabiziSymbol("dj").is_digraph
    assert not ArabiziSymbol("7").is_digraph
    for bad in ["", "abc", "é", "-"]:
        with pytest.raises(MalformedEntry):
            ArabiziSymbol(bad)


def test_round_trip(table, tmp_path):
    text = dump_table(table)
    assert load_table(text) == table
    assert dump_table(load_table(text)) == text
    write_table(table, tmp_path / "t.map")
    assert read_table(tmp_path / "t.map") == table
    assert (tmp_path / "t.map").read_bytes() == text.encode("utf-8")


def test_table_is_immutable(table):
    with pytest.raises(TypeError):
        table.entries[("b", Position.MEDIAL)] = ("ت",)


def _rows(*lines):
    return "\n".join(lines) + "\n"


FULL_B = [f"b\t{p.value}\tب" for p in Position]


def test_duplicate_entry():
    src = _rows(*FULL_B, "t\tinitial\tت", "t\tmedial\tت", "t\tfinal\tت|ط",
                "t\tfinal\tت", "t\tsole\tت")
    with pytest.raises(DuplicateEntry):
        load_table(src)


def test_latin_replacement_rejected():
    with pytest.raises(MalformedEntry):
        load_table(_rows("b\tinitial\tb", *FULL_B[1:]))


def test_missing_position():
    with pytest.raises(MissingPosition):
        load_table(_rows(*FULL_B[:3]))


@pytest.mark.parametrize("line", [
    "b\tmedial\tNULL",          # silent consonant
    "a\tinitial\tNULL",         # silent vowel outside mid-word
    "b\tmedial\tب|ب",           # repeated replacement
    "b\tmiddle\tب",             # unknown position
    "b\tmedial",                # missing column
    "b\tmedial\tببب",           # too long
])
def test_malformed_lines(line):
    with pytest.raises(MalformedEntry):
        load_table(_rows(line))


def test_comments_and_version():
    src = "# version: exp-2\n# a comment\n" + _rows(*FULL_B)
    t = load_table(src)
    assert t.version == "exp-2"
    assert t.symbols == ("b",)
    assert isinstance(t, MappingTable)
