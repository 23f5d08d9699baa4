import itertools

import pytest

from cpmonoid import (
    AuditResult,
    Budgets,
    CertifiedCP,
    Indeterminate,
    RefutedCP,
    RestrictedCongruence,
    Template,
    TemplateFunction,
    Witness,
    audit,
    builtin,
    check_preservation,
    collapse_to,
    congruent_pairs,
    custom_morphism,
    family_congruences,
    finite_monoid_congruences,
    identify,
    iter_words,
    project,
    random_congruences,
    standard_congruences,
    theorem_check,
    verify_witness,
)

from conftest import ABC


def brute_first_witness(fn, spec, bound):
    """Independent oracle: first violated congruent pair in scan order."""
    ws = list(iter_words(spec.alphabet, bound))
    classes = {}
    for w in ws:
        classes.setdefault(spec.word_image(w), []).append(w)
    for x, y in congruent_pairs(spec, bound):
        if spec.word_image(fn(x.letters)) != spec.word_image(fn(y.letters)):
            return (x.letters, y.letters)
    return None


def test_standard_family_census():
    specs = list(standard_congruences(ABC))
    # 3 collapse + 3 project + 3 erase + 6 ordered identifications
    assert len(specs) == 15
    labels = [s.describe() for s in specs]
    assert any("collapse_to(a)" in text for text in labels)
    assert any("identify(c->b)" in text for text in labels)


def test_finite_monoid_family_census():
    specs = list(finite_monoid_congruences(ABC))
    # every assignment of three letters into each catalog monoid
    from cpmonoid import monoid_catalog

    expected = sum(len(m.elements) ** 3 for m in monoid_catalog())
    assert len(specs) == expected


def test_random_family_deterministic():
    a = [s.describe() for s in random_congruences(ABC, seed=7, count=5, image_len=2)]
    b = [s.describe() for s in random_congruences(ABC, seed=7, count=5, image_len=2)]
    c = [s.describe() for s in random_congruences(ABC, seed=8, count=5, image_len=2)]
    assert a == b
    assert a != c


def test_family_congruences_all():
    n_all = sum(1 for _ in family_congruences("all", ABC, count=3))
    n_std = sum(1 for _ in family_congruences("standard", ABC))
    n_fin = sum(1 for _ in family_congruences("finite_monoids", ABC))
    assert n_all == n_std + n_fin + 3
    with pytest.raises(ValueError):
        list(family_congruences("bogus", ABC))


def test_check_preservation_finds_reverse_witness():
    # a |-> ab, b |-> b, c |-> a identifies 'a' with 'cb'; reversal tells
    # them apart, and the scan finds that exact first pair
    phi = custom_morphism(ABC, {"a": "ab", "b": "b", "c": "a"})
    spec = RestrictedCongruence(phi)
    fn = builtin("reverse", ABC)
    w = check_preservation(fn, spec, length_bound=2)
    assert w is not None
    assert (w.left[0].letters, w.right[0].letters) == brute_first_witness(
        fn, spec, 2
    )
    assert (w.left[0].letters, w.right[0].letters) == ("a", "cb")


def test_reverse_witness_ab_cbb_is_valid():
    # a larger hand-checked witness for the same kernel: ab and cbb share
    # the image abb, their reversals do not
    phi = custom_morphism(ABC, {"a": "ab", "b": "b", "c": "a"})
    spec = RestrictedCongruence(phi)
    fn = builtin("reverse", ABC)
    w = Witness(
        spec,
        (ABC.word("ab"),),
        (ABC.word("cbb"),),
        fn("ab"),
        fn("cbb"),
    )
    assert spec.word_image(ABC.word("ab")).letters == "abb"
    assert spec.word_image(ABC.word("cbb")).letters == "abb"
    assert verify_witness(fn, w)


def test_check_preservation_none_for_templates():
    fn = TemplateFunction(Template.of(ABC, "b", 1, "", 1, ""))
    for spec in standard_congruences(ABC):
        assert check_preservation(fn, spec, length_bound=2) is None


def test_check_preservation_alphabet_mismatch():
    from conftest import AB

    fn = builtin("reverse", AB)
    spec = RestrictedCongruence(collapse_to(ABC, "a"))
    with pytest.raises(ValueError):
        check_preservation(fn, spec, 2)


def test_verify_witness_accepts_real_and_rejects_fake():
    phi = custom_morphism(ABC, {"a": "ab", "b": "b", "c": "a"})
    spec = RestrictedCongruence(phi)
    fn = builtin("reverse", ABC)
    w = check_preservation(fn, spec, length_bound=2)
    assert verify_witness(fn, w)
    fake = Witness(
        spec,
        w.left,
        w.left,  # x = y: images cannot differ
        w.out_left,
        w.out_left,
    )
    assert not verify_witness(fn, fake)


def test_verify_witness_rejects_noncongruent_inputs():
    spec = RestrictedCongruence(collapse_to(ABC, "a"))
    fn = builtin("reverse", ABC)
    bad = Witness(
        spec,
        (ABC.word("a"),),
        (ABC.word("ab"),),  # different lengths: not congruent
        fn("a"),
        fn("ab"),
    )
    assert not verify_witness(fn, bad)


def test_audit_reverse_standard_comes_up_empty():
    # no endomorphism kernel in the standard family separates a word from
    # its reversal: the standard audit must pass
    result = audit(builtin("reverse", ABC), family="standard")
    assert isinstance(result, AuditResult)
    assert result.ok
    assert result.specs_checked == 15
    assert not result.truncated


def test_audit_reverse_finite_monoids_refutes():
    result = audit(builtin("reverse", ABC), family="finite_monoids")
    assert not result.ok
    assert verify_witness(builtin("reverse", ABC), result.witness)


def test_audit_budget_truncates():
    result = audit(builtin("reverse", ABC), family="standard", budget=10)
    assert result.ok  # nothing found...
    assert result.truncated  # ...but the sweep was cut short
    assert result.checks <= 10


def test_audit_collapse_witness_is_early():
    result = audit(builtin("collapse_b_to_a", ABC), family="standard")
    w = result.witness
    assert w is not None
    pair = (w.left[0].letters, w.right[0].letters)
    # (a, ab) under the a-projection kernel, or anything even earlier
    order = lambda s: (len(s), s)
    assert order(pair[0]) <= order("a") and order(pair[1]) <= order("ab")


def test_theorem_check_certifies_templates():
    fn = TemplateFunction(Template.of(ABC, "ca", 1, "", 1, "b"))
    verdict = theorem_check(fn)
    assert isinstance(verdict, CertifiedCP)
    assert str(verdict.template) == '"ca" x1 "" x1 "b"'
    assert "certified-cp" in verdict.render()


def test_theorem_check_certifies_square():
    verdict = theorem_check(builtin("square", ABC))
    assert isinstance(verdict, CertifiedCP)


NON_CP = [
    "reverse",
    "sort_letters",
    "collapse_b_to_a",
    "erase_a",
    "first_letter_or_empty",
]


@pytest.mark.parametrize("name", NON_CP)
def test_theorem_check_refutes_non_cp(name):
    fn = builtin(name, ABC)
    verdict = theorem_check(fn)
    assert isinstance(verdict, RefutedCP), verdict.render()
    assert verify_witness(builtin(name, ABC), verdict.witness)
    assert "WITNESS" in verdict.render()


def test_theorem_check_reverse_needs_finite_monoids():
    verdict = theorem_check(builtin("reverse", ABC))
    assert isinstance(verdict, RefutedCP)
    assert verdict.family == "finite_monoids"


def test_theorem_check_indeterminate_under_starvation():
    budgets = Budgets(checks_per_family=2, random_count=1, random_image_lens=(1,))
    verdict = theorem_check(builtin("reverse", ABC), budgets)
    assert isinstance(verdict, Indeterminate)
    assert "budget exhausted" in verdict.note
    assert "indeterminate" in verdict.render()


def test_theorem_check_requires_three_letters():
    from conftest import AB

    with pytest.raises(ValueError):
        theorem_check(builtin("reverse", AB))


def test_witness_render_shape():
    result = audit(builtin("erase_a", ABC), family="standard")
    text = result.witness.render()
    assert text.splitlines()[0] == "WITNESS"
    assert "f(x):" in text and "f(y):" in text
    assert "image(f(x)):" in text
