import random

from hypothesis import given, strategies as st

from shortpa.words import (
    Word,
    conjugate_generator_power,
    cyclic_reduce,
    invert,
    multiply,
    power,
    powerblind_length,
    reduce,
    reduced_words,
)

letters = st.lists(st.sampled_from("aAbB"), max_size=14)
words = letters.map(lambda s: Word.parse("".join(s)))


def test_reduce_examples():
    assert reduce(["a", "A"]) == Word.identity()
    assert reduce(["a", "b", "b", "a"]).syllables == (("a", 1), ("b", 2), ("a", 1))
    assert reduce("aaaBBa").syllables == (("a", 3), ("b", -2), ("a", 1))


def test_multiply_invert_power():
    a, b = Word.letter("a"), Word.letter("b")
    assert multiply(a, ~a) == Word.identity()
    assert invert(Word([("a", 1), ("b", 2)])).syllables == (("b", -2), ("a", -1))
    assert power(a * b, 3) == Word.parse("ababab")


def test_powerblind():
    assert powerblind_length(Word.identity()) == 0
    assert powerblind_length(Word.letter("a", 5)) == 1
    fig = Word([("a", 1), ("b", 2), ("a", 3), ("b", 4), ("a", 5)])
    assert fig.powerblind_length() == 5
    assert len(fig) == 15


def test_cyclic_reduce_examples():
    a3 = Word.letter("a", 3)
    assert cyclic_reduce(a3) == (Word.identity(), a3)
    assert cyclic_reduce(Word.parse("baB")) == (Word.letter("b"), Word.letter("a"))
    conj, core = cyclic_reduce(Word.parse("abAB"))
    assert not conj and core.powerblind_length() == 4


def test_generator_power_examples():
    assert conjugate_generator_power(Word.parse("baaaaaB")) == ("a", 5)
    assert conjugate_generator_power(Word.parse("ab")) is None
    assert conjugate_generator_power(Word.identity()) == ("a", 0)


def test_parse_roundtrip_and_errors():
    w = Word.parse("aabAbbB")
    assert Word.from_json(w.to_json()) == w
    try:
        Word.parse("abc")
    except ValueError:
        pass
    else:
        raise AssertionError("expected a parse error")


def test_reduced_words_count():
    # 4 * 3^(n-1) reduced words of length n
    ws = list(reduced_words(4))
    assert len(ws) == 1 + 4 + 12 + 36 + 108
    assert len(set(ws)) == len(ws)


@given(words, words, words)
def test_group_axioms(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * ~u == Word.identity()
    assert ~(u * v) == ~v * ~u


@given(words)
def test_cyclic_reduce_identity(w):
    conj, core = cyclic_reduce(w)
    assert conj * core * ~conj == w
    s = core.syllables
    if len(s) >= 2:
        assert s[0][0] != s[-1][0]
        assert len(s) % 2 == 0


@given(words, st.integers(-4, 4))
def test_power_matches_repeated_product(w, n):
    acc = Word.identity()
    for _ in range(abs(n)):
        acc = acc * (w if n > 0 else ~w)
    assert w ** n == acc


@given(st.sampled_from("ab"), st.integers(-6, 6).filter(bool), words)
def test_generator_power_detects_conjugates(x, e, c):
    w = c * Word.letter(x, e) * ~c
    assert conjugate_generator_power(w) == (x, e)


def test_generator_power_rejects_two_letter_cores():
    rng = random.Random(3)
    for _ in range(200):
        core = Word([("a", rng.choice([1, -1, 2])), ("b", rng.choice([1, -2, 3]))])
        c = Word.parse("".join(rng.choice("aAbB") for _ in range(5)))
        assert conjugate_generator_power(c * core * ~c) is None
