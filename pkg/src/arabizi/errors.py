"""Exception hierarchy shared by the package.

Everything derives from :class:`ArabiziError` so callers (the CLI in
particular) can separate data problems from programming errors.
"""


class ArabiziError(Exception):
    pass


class MappingError(ArabiziError):
    pass


class MalformedEntry(MappingError):
    pass


class DuplicateEntry(MappingError):
    pass


class MissingPosition(MappingError):
    pass


class UnknownSymbol(ArabiziError):
    """A character (or digraph) with no entry in the mapping table.

    ``index`` is the offset of the offending character in the folded word,
    or ``None`` when the lookup was not made on behalf of a word.
    """

    def __init__(self, symbol, index=None, word=None):
        self.symbol = symbol
        self.index = index
        self.word = word
        where = f" at index {index} of {word!r}" if index is not None else ""
        super().__init__(f"unknown Arabizi symbol {symbol!r}{where}")


class EmptyResult(ArabiziError):
    pass


class EmptyCorpus(ArabiziError):
    pass


class BadOrder(ArabiziError):
    pass


class ModelError(ArabiziError):
    pass


class IoFailure(ModelError):
    pass


class CorruptModel(ModelError):
    pass


class VersionMismatch(ModelError):
    pass


class EmptyCandidates(ArabiziError):
    pass


class EmptyTestSet(ArabiziError):
    pass


class MalformedGold(ArabiziError):
    pass


class ModelMismatch(ArabiziError):
    """The model kind does not match the selection backend."""
