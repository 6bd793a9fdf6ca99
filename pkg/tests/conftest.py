import random

import pytest

from arabizi.candgen import generate
from arabizi.charmap import load_default_table
from arabizi.evalharness import GoldPair
from arabizi.langmodel import slice_score

# (arabizi, gold) pairs of everyday Algerian words
GOLD_WORDS = [
    ("kraht", "كرهت"), ("hiati", "حياتي"), ("3afsa", "عفسة"), ("djabat", "جابت"),
    ("raht", "رحت"), ("matar", "مطر"), ("bik", "بيك"), ("bark", "برك"),
    ("sahbi", "صاحبي"), ("khoya", "خويا"), ("mlih", "مليح"), ("bezaf", "بزاف"),
    ("wach", "واش"), ("chwiya", "شوية"), ("3andek", "عندك"), ("rani", "راني"),
    ("kifach", "كيفاش"), ("ghir", "غير"), ("drahem", "دراهم"), ("sba7", "صباح"),
    ("lyoum", "ليوم"), ("mazal", "مازال"), ("tbib", "طبيب"), ("5obz", "خبز"),
    ("9alb", "قلب"), ("7ob", "حب"), ("dar", "دار"), ("bled", "بلاد"),
]

FILLER = ["في", "من", "على", "هذا", "اللي", "والله", "بصح", "كاين", "نتاع", "معا",
          "قاع", "برشا", "يعني", "هاذي", "ماشي"]


@pytest.fixture(scope="session")
def table():
    return load_default_table()


@pytest.fixture(scope="session")
def gold_pairs():
    return [GoldPair(a, g) for a, g in GOLD_WORDS]


def candidate_universe(pairs, table):
    return {c for p in pairs for c in generate(p.arabizi, table)}


def selection_corpus(pairs, table, total_words=200, seed=0):
    """Arabic messages where each gold is its word's unique most frequent candidate."""
    rng = random.Random(seed)
    universe = candidate_universe(pairs, table)
    filler = [w for w in FILLER if w not in universe]
    assert len(filler) >= 10
    tokens = []
    for p in pairs:
        others = [c for c in generate(p.arabizi, table) if c != p.gold]
        tokens += [p.gold] * 3 + rng.sample(others, min(2, len(others)))
    assert len(tokens) <= total_words
    tokens += [rng.choice(filler) for _ in range(total_words - len(tokens))]
    rng.shuffle(tokens)
    return [" ".join(tokens[i:i + 5]) for i in range(0, len(tokens), 5)]


def growing_corpus(pairs, n_filler=400, copies=2, seed=7):
    """Messages holding gold forms only (no distractors) among filler messages.

    A gold word is known to a slice as soon as one of its messages is in it,
    so coverage can only grow with the fraction.
    """
    rng = random.Random(seed)
    msgs = [" ".join(rng.sample(FILLER, 3)) for _ in range(n_filler)]
    for p in pairs:
        for _ in range(copies):
            msgs.insert(rng.randrange(len(msgs) + 1), f"{rng.choice(FILLER)} {p.gold}")
    return msgs


def full_only_corpus(pairs, seed=42, n=300):
    """Gold forms sit only in messages that no 1% slice (for ``seed``) contains."""
    rng = random.Random(3)
    msgs = [" ".join(rng.sample(FILLER, 3)) for _ in range(n)]
    golds = iter(p.gold for p in pairs)
    for i, m in enumerate(msgs):
        if slice_score(m, i, seed) >= 0.01:
            g = next(golds, None)
            if g is None:
                break
            msgs[i] = m + " " + g
            # the edit changed the score; keep it only if still outside 1%
            if slice_score(msgs[i], i, seed) < 0.01:
                msgs[i] = m
                golds = iter([g] + list(golds))
    return msgs


# -- acceptance summary: one line per criterion ------------------------------

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and (rep.when == "call" or rep.failed):
        if rep.when == "call" or not any(n == mark.args[0] for n, _ in _CRITERIA):
            _CRITERIA.append((mark.args[0], rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
