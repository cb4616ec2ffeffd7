import random

from hypothesis import given, settings
from hypothesis import strategies as st

from socialbot import _editdist_py, textmatch

from .helpers import exhaustive_best_match


def test_levenshtein_known_values():
    cases = [
        ("", "", 0),
        ("abc", "", 3),
        ("", "abc", 3),
        ("kitten", "sitting", 3),
        ("flaw", "lawn", 2),
        ("inception", "inception", 0),
    ]
    for a, b, expected in cases:
        assert textmatch.levenshtein(a, b) == expected
        assert _editdist_py.levenshtein(a, b) == expected


@settings(max_examples=300)
@given(st.text(max_size=24), st.text(max_size=24))
def test_kernel_matches_pure_python(a, b):
    assert textmatch.levenshtein(a, b) == _editdist_py.levenshtein(a, b)


@settings(max_examples=200)
@given(st.text(max_size=20), st.text(max_size=20))
def test_distance_metric_properties(a, b):
    d = _editdist_py.levenshtein(a, b)
    assert d == _editdist_py.levenshtein(b, a)
    assert (d == 0) == (a == b)
    assert d <= max(len(a), len(b))


def test_similarity_components():
    assert textmatch.edit_similarity("Titanic", "titanic") == 1.0
    assert textmatch.token_overlap("wolf of wallstreet", "the wolf of wall street") == 2 / 6
    assert textmatch.similarity("", "") == 1.0
    assert textmatch.similarity("abc", "") == 0.0


def test_best_match_agrees_with_exhaustive_scan():
    rng = random.Random(4)
    names = [
        f"{rng.choice('ABCDEFG')}{''.join(rng.choice('aeiourstln') for _ in range(rng.randint(3, 12)))}"
        for _ in range(300)
    ]
    popularity = {name: rng.random() for name in names}.__getitem__
    for _ in range(120):
        base = rng.choice(names)
        chars = list(base)
        for _ in range(rng.randint(0, 3)):
            chars.insert(rng.randrange(len(chars) + 1), rng.choice("xyz"))
        query = "".join(chars)
        got = textmatch.best_match(query, names, popularity=popularity)
        want = exhaustive_best_match(query, names, popularity)
        assert got == want


def test_best_match_tie_breaks():
    # equal similarity to both: higher popularity wins
    name, _ = textmatch.best_match(
        "abx", ["abc", "abd"], popularity={"abc": 0.0, "abd": 5.0}.__getitem__
    )
    assert name == "abd"
    # equal similarity and popularity: lexicographic
    name, _ = textmatch.best_match("abx", ["abd", "abc"])
    assert name == "abc"


def test_best_match_empty_candidates():
    assert textmatch.best_match("anything", []) == (None, 0.0)
