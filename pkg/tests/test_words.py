import itertools

import hypothesis
import hypothesis.strategies as strat
import pytest

from cpmonoid import (
    Alphabet,
    AlphabetError,
    FormatError,
    Word,
    collapse_to,
    count_words,
    custom_morphism,
    erase,
    format_morphism,
    identify,
    identity_morphism,
    iter_word_tuples,
    iter_words,
    parse_morphism,
    project,
)

from conftest import ABC, AB, words


def test_alphabet_basics():
    assert len(ABC) == 3
    assert "a" in ABC and "z" not in ABC
    assert str(ABC) == "abc"
    assert ABC.index("c") == 2
    assert list(ABC) == ["a", "b", "c"]


def test_alphabet_rejects_bad_letters():
    with pytest.raises(AlphabetError):
        Alphabet.of("a a")  # whitespace
    with pytest.raises(AlphabetError):
        Alphabet.of('a"b')  # reserved for the quoted text format
    with pytest.raises(AlphabetError):
        Alphabet.of("a\\b")
    with pytest.raises(AlphabetError):
        Alphabet.of("aab")  # duplicate
    with pytest.raises(AlphabetError):
        Alphabet.of("")


def test_alphabet_extended():
    ext = ABC.extended("xy")
    assert str(ext) == "abcxy"
    assert ABC.extended("ab") is not None
    assert str(ABC.extended("")) == "abc"


def test_word_basics():
    w = ABC.word("abca")
    assert len(w) == 4
    assert str(w) == "abca"
    assert w.count("a") == 2
    assert w.count() == 4
    assert not w.is_empty
    assert ABC.word("").is_empty
    assert w.quoted() == '"abca"'


def test_word_rejects_foreign_letters():
    with pytest.raises(AlphabetError):
        ABC.word("abd")


def test_word_equality_ignores_alphabet():
    # words live in the free monoid; the carrier alphabet is bookkeeping
    assert AB.word("ab") == ABC.word("ab")
    assert hash(AB.word("ab")) == hash(ABC.word("ab"))


def test_concat_and_power():
    u, v = ABC.word("ab"), ABC.word("c")
    assert (u + v).letters == "abc"
    assert u.power(3).letters == "ababab"
    assert u.power(0).is_empty


def test_prefix_and_split():
    w = ABC.word("abcab")
    assert w.has_prefix("ab")
    assert not w.has_prefix("ba")
    parts = w.split_on_letter("b")
    assert [p.letters for p in parts] == ["a", "ca", ""]


@hypothesis.given(words(), words(), words())
def test_concat_associative(u, v, w):
    assert ((u + v) + w).letters == (u + (v + w)).letters


@hypothesis.given(words())
def test_empty_word_is_identity(w):
    eps = ABC.word("")
    assert (eps + w) == w == (w + eps)


def test_morphism_factories_frozen_values():
    assert collapse_to(ABC, "a").apply(ABC.word("abcba")).letters == "aaaaa"
    assert project(ABC, "b").apply(ABC.word("abcba")).letters == "bb"
    assert erase(ABC, "b").apply(ABC.word("abcba")).letters == "aca"
    assert identify(ABC, "b", "a").apply(ABC.word("abcba")).letters == "aacaa"
    assert identity_morphism(ABC).apply(ABC.word("cab")).letters == "cab"


def test_morphism_factories_validate():
    with pytest.raises(AlphabetError):
        collapse_to(ABC, "z")
    with pytest.raises(AlphabetError):
        identify(ABC, "a", "z")
    with pytest.raises(ValueError):
        identify(ABC, "a", "a")


def test_morphism_labels():
    assert collapse_to(ABC, "a").label == "collapse_to(a)"
    assert identify(ABC, "b", "a").label == "identify(b->a)"


def test_custom_morphism_into_other_alphabet():
    target = Alphabet.of("xy")
    phi = custom_morphism(ABC, {"a": "xy", "b": "", "c": "x"}, target)
    assert phi.apply(ABC.word("cab")).letters == "xxy"
    assert not phi.is_endomorphism


def test_morphism_is_endomorphism():
    assert collapse_to(ABC, "a").is_endomorphism
    phi = custom_morphism(ABC, {"a": "xy", "b": "", "c": "x"}, Alphabet.of("xy"))
    assert not phi.is_endomorphism


@hypothesis.given(words())
def test_length_is_sum_of_letter_counts(w):
    assert w.count() == sum(w.count(ch) for ch in ABC)


@hypothesis.given(words(), words())
def test_morphism_respects_concat(u, v):
    phi = custom_morphism(ABC, {"a": "bc", "b": "", "c": "ab"})
    assert phi.apply(u + v).letters == phi.apply(u).letters + phi.apply(v).letters
    assert phi.apply(ABC.word("")).is_empty


@hypothesis.given(words())
def test_projection_length_counts_letter(w):
    assert len(project(ABC, "c").apply(w)) == w.count("c")


@hypothesis.given(words(max_len=8))
def test_split_interleave_reconstructs(w):
    parts = w.split_on_letter("a")
    assert len(parts) == w.count("a") + 1
    assert "a".join(p.letters for p in parts) == w.letters


def test_morphism_compose():
    phi = identify(ABC, "b", "a")  # b -> a
    psi = collapse_to(ABC, "c")
    both = psi @ phi
    w = ABC.word("abcab")
    assert both.apply(w) == psi.apply(phi.apply(w))


def test_compose_frozen_examples():
    # c folded into b, then b erased: only the a survives
    first = erase(ABC, "b") @ identify(ABC, "c", "b")
    assert first.apply(ABC.word("abc")).letters == "a"
    # erase a, then send what is left to a
    second = collapse_to(ABC, "a") @ erase(ABC, "a")
    assert second.apply(ABC.word("ab")).letters == "a"
    third = identity_morphism(ABC) @ erase(ABC, "c")
    assert third.apply(ABC.word("cacb")).letters == erase(ABC, "c").apply(
        ABC.word("cacb")
    ).letters


def test_compose_rejects_mismatched_alphabets():
    phi = custom_morphism(ABC, {"a": "x", "b": "x", "c": "x"}, Alphabet.of("x"))
    with pytest.raises(AlphabetError):
        phi.compose(phi)


def test_iter_words_order_and_count():
    seen = [w.letters for w in iter_words(AB, 2)]
    assert seen == ["", "a", "b", "aa", "ab", "ba", "bb"]
    assert count_words(AB, 2) == 7
    assert count_words(ABC, 3) == 1 + 3 + 9 + 27


@hypothesis.given(strat.integers(0, 4))
def test_count_words_matches_enumeration(n):
    assert count_words(ABC, n) == sum(1 for _ in iter_words(ABC, n))


def test_iter_words_unique():
    seen = list(iter_words(ABC, 3))
    assert len(seen) == len({w.letters for w in seen})


def test_iter_word_tuples_leftmost_slowest():
    pairs = [tuple(w.letters for w in t) for t in iter_word_tuples(AB, 2, 1)]
    expected = list(
        itertools.product(["", "a", "b"], repeat=2)
    )
    assert pairs == expected


def test_morphism_format_round_trip():
    phi = custom_morphism(ABC, {"a": "ab", "b": "", "c": "a"})
    text = format_morphism(phi)
    back = parse_morphism(text)
    assert back.image == phi.image
    assert back.source == phi.source


def test_morphism_format_with_target():
    phi = custom_morphism(ABC, {"a": "x", "b": "xy", "c": ""}, Alphabet.of("xy"))
    back = parse_morphism(format_morphism(phi))
    assert back.target == phi.target
    assert back.apply(ABC.word("ab")).letters == "xxy"


def test_parse_morphism_rejects_incomplete():
    with pytest.raises(FormatError):
        parse_morphism("alphabet abc\na=ab\nb=b\n")  # c missing


def test_parse_morphism_rejects_junk():
    with pytest.raises(FormatError):
        parse_morphism("a=ab\n")  # no header
    with pytest.raises(FormatError):
        parse_morphism("alphabet abc\na=ab\nb=b\nc=a\nd=x\n")
