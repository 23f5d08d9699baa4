import hypothesis
import hypothesis.strategies as strat
import pytest

from cpmonoid import (
    BUILTIN_NAMES,
    BuiltinFunction,
    FormatError,
    TableFunction,
    TableMissError,
    Template,
    TemplateFunction,
    Word,
    builtin,
    builtin_catalog,
    format_table,
    freeze,
    parse_table,
)

from conftest import ABC, AB, templates, words


def test_template_function_evaluates():
    t = Template.of(ABC, "a", 1, "b")
    fn = TemplateFunction(t)
    assert fn("c").letters == "acb"
    assert fn("").letters == "ab"
    assert fn.arity == 1


def test_template_function_counts_misses_not_hits():
    fn = TemplateFunction(Template.of(ABC, "", 1, ""))
    assert fn.query_count == 0
    fn("ab")
    fn("ab")
    fn("ab")
    assert fn.query_count == 1
    fn("ba")
    assert fn.query_count == 2


def test_evaluate_validates_arity_and_letters():
    fn = TemplateFunction(Template.of(ABC, "", 1, ""))
    with pytest.raises(ValueError):
        fn("a", "b")
    # sort_letters cannot extend, so foreign letters are rejected up front
    strict = builtin("sort_letters", ABC)
    assert not strict.supports_extension
    with pytest.raises(Exception):
        strict("xyz")


def test_template_function_accepts_fresh_letters():
    # template oracles extend to any letters: they only splice
    fn = TemplateFunction(Template.of(ABC, "a", 1, "b"))
    assert fn.supports_extension
    out = fn.evaluate((Word(ABC.extended("Z"), "Z"),))
    assert out.letters == "aZb"


def test_builtin_reverse():
    fn = builtin("reverse", ABC)
    assert fn("abc").letters == "cba"
    assert fn("").letters == ""


def test_builtin_frozen_io():
    assert builtin("sort_letters", ABC)("cabab").letters == "aabbc"
    assert builtin("square", ABC)("ab").letters == "abab"
    assert builtin("collapse_b_to_a", ABC)("abcb").letters == "aaca"
    assert builtin("erase_a", ABC)("abcab").letters == "bcb"
    assert builtin("first_letter_or_empty", ABC)("cab").letters == "c"
    assert builtin("first_letter_or_empty", ABC)("").letters == ""


def test_builtin_names_and_unknown():
    assert set(BUILTIN_NAMES) == {
        "reverse",
        "sort_letters",
        "square",
        "collapse_b_to_a",
        "erase_a",
        "first_letter_or_empty",
    }
    with pytest.raises(ValueError):
        builtin("nope", ABC)


def test_builtin_needs_letters():
    # collapse_b_to_a needs both a and b in the alphabet
    import cpmonoid

    cd = cpmonoid.Alphabet.of("cd")
    with pytest.raises(ValueError):
        builtin("collapse_b_to_a", cd)
    names = {fn.name for fn in builtin_catalog(cd)}
    assert "collapse_b_to_a" not in names
    assert "reverse" in names


def test_builtin_catalog_default():
    names = [fn.name for fn in builtin_catalog(ABC)]
    assert names == list(BUILTIN_NAMES)


def test_builtin_function_wrapper():
    fn = BuiltinFunction("twice_b", ABC, lambda args: args[0] + "bb")
    assert fn("a").letters == "abb"


def test_table_function_hit_and_miss():
    fn = TableFunction(AB, 1, {("a",): "b", ("",): ""}, name="tiny")
    assert fn("a").letters == "b"
    with pytest.raises(TableMissError):
        fn("bb")


def test_table_round_trip():
    fn = TableFunction(AB, 1, {("",): "", ("a",): "aa", ("b",): "ab"}, name="tiny")
    text = format_table(fn)
    back = parse_table(text)
    for key in ["", "a", "b"]:
        assert back(key) == fn(key)


def test_parse_table_infers_shape():
    fn = parse_table("a\tb\taa\nb\ta\tbb\n")
    assert fn.arity == 2
    assert set(fn.alphabet.letters) == {"a", "b"}
    assert fn("a", "b").letters == "aa"


def test_parse_table_rejects_duplicates():
    with pytest.raises(FormatError):
        parse_table("a\tb\na\tc\n")


def test_parse_table_empty_fields_are_epsilon():
    fn = parse_table("\tx\na\t\n", alphabet=AB.extended("x"))
    assert fn("").letters == "x"
    assert fn("a").letters == ""


def test_freeze_basic():
    base = TemplateFunction(Template.of(ABC, "", 1, "", 2, ""))
    pinned = freeze(base, 1, ABC.word("ab"))
    assert pinned.arity == 1
    assert pinned("c").letters == "abc"


def test_freeze_merges():
    base = TemplateFunction(Template.of(ABC, "", 1, "", 2, "", 3, ""))
    once = freeze(base, 2, ABC.word("b"))
    twice = freeze(once, 1, ABC.word("a"))  # reduced position 1 = original 1
    assert twice.arity == 1
    assert twice("c").letters == "abc"
    assert twice.free_positions == (3,)


def test_freeze_query_count_delegates():
    base = TemplateFunction(Template.of(ABC, "", 1, "", 2, ""))
    pinned = freeze(base, 1, ABC.word("a"))
    pinned("b")
    pinned("b")
    assert base.query_count == 1
    assert pinned.query_count == 1


@hypothesis.given(templates(max_arity=3), strat.data())
def test_freeze_agrees_with_direct_eval(t, data):
    hypothesis.assume(t.arity >= 2)
    base = TemplateFunction(t)
    pos = data.draw(strat.integers(1, t.arity))
    pin = data.draw(words(max_len=3))
    pinned = freeze(base, pos, pin)
    rest = [data.draw(words(max_len=3)) for _ in range(t.arity - 1)]
    full = list(rest)
    full.insert(pos - 1, pin)
    assert pinned.evaluate(tuple(rest)) == base.evaluate(tuple(full))


def test_freeze_unary_to_nullary():
    base = TemplateFunction(Template.of(ABC, "a", 1, "b"))
    const = freeze(base, 1, ABC.word("cc"))
    assert const.arity == 0
    assert const.evaluate(()).letters == "accb"


def test_freeze_validates_position():
    base = TemplateFunction(Template.of(ABC, "", 1, ""))
    with pytest.raises(ValueError):
        freeze(base, 2, ABC.word("a"))
    with pytest.raises(ValueError):
        freeze(base, 0, ABC.word("a"))


def test_name_strings():
    fn = builtin("reverse", ABC)
    assert fn.name == "reverse"
    t = TemplateFunction(Template.of(ABC, "", 1, ""))
    assert "x1" in t.name or "template" in t.name
