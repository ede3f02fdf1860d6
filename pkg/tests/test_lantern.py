"""The rewriting layer: the reduced normal form, cyclic rotations with
their conjugacy certificates, the e/f mirror, serialization, and
positive factorizations."""

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lanternbook.engine import equal_in_mcg
from lanternbook.errors import PreconditionError
from lanternbook.lantern import (ReducedForm, canonical_form,
                                 cyclic_rotations, expand, mirror_ef,
                                 positive_factorization, reduce,
                                 rf_from_json, rf_to_json,
                                 rotation_conjugator, substitute_gh)
from lanternbook.words import (concat, exponent_class, format_word,
                               free_reduce, invert, merge_terms, mirror_word,
                               parse)

raw_terms = st.lists(
    st.tuples(st.sampled_from("abcdefgh"),
              st.integers(min_value=-4, max_value=4).filter(bool)),
    max_size=8)
words = raw_terms.map(lambda ts: merge_terms(ts))


def form_strategy(rmax=4, emax=4, smax=3):
    """Valid reduced forms: m1 and the last n may be zero, interior
    exponents are nonzero."""
    nz = st.integers(min_value=-emax, max_value=emax).filter(bool)
    z = st.integers(min_value=-emax, max_value=emax)
    r = st.tuples(*(st.integers(min_value=-rmax, max_value=rmax),) * 4)

    def build(rv, first_m, inner, last_n):
        if not inner and first_m == 0 and last_n == 0:
            return ReducedForm(rv, ())
        mids = list(inner)
        ms = [first_m] + [m for m, _ in mids]
        ns = [n for _, n in mids] + [last_n]
        blocks = tuple(zip(ms, ns))
        return ReducedForm(rv, blocks)

    return st.builds(build, r, z,
                     st.lists(st.tuples(nz, nz), max_size=smax - 1), z)


forms = form_strategy()


# -- reduce / expand ----------------------------------------------------

def test_reduce_examples():
    rf = reduce(parse("g"))
    assert rf.r == (1, 1, 1, 1) and rf.blocks == ((0, -1), (-1, 0))
    rf = reduce(())
    assert rf.r == (0, 0, 0, 0) and rf.blocks == ()
    rf = reduce(parse("g e f"))
    assert rf.r == (1, 1, 1, 1) and rf.blocks == ()


def test_substitute_gh_examples():
    assert format_word(substitute_gh(parse("g"))) == "a b c d f^-1 e^-1"
    assert format_word(substitute_gh(parse("h"))) == "a b c d e^-1 f^-1"
    # the inverse expansion trails its boundary twists before free
    # reduction fronts them; the result is the same group element
    out = substitute_gh(parse("g^-1"))
    assert out == free_reduce(parse("e f a^-1 b^-1 c^-1 d^-1"))
    assert equal_in_mcg(out, parse("e f a^-1 b^-1 c^-1 d^-1"))
    assert all(l not in "gh"
               for l, _ in substitute_gh(parse("g^2 h^-3 e g^-1")))


@given(words)
def test_substitute_gh_preserves_exponent_class(w):
    assert exponent_class(substitute_gh(w)) == exponent_class(w)


@given(words)
def test_reduce_is_idempotent(w):
    rf = reduce(w)
    assert reduce(expand(rf)) == rf


@given(forms)
def test_expand_then_reduce_is_identity_on_forms(rf):
    assert reduce(expand(rf)) == rf


# -- the ReducedForm invariants ------------------------------------------

def test_interior_zero_exponents_are_rejected():
    with pytest.raises(PreconditionError):
        ReducedForm((0, 0, 0, 0), ((2, -1), (0, 3)))
    with pytest.raises(PreconditionError):
        ReducedForm((0, 0, 0, 0), ((2, 0), (-1, 3)))


def test_degenerate_single_block_normalizes_away():
    assert ReducedForm((1, 0, 0, 0), ((0, 0),)).blocks == ()


def test_r_must_have_four_components():
    with pytest.raises(PreconditionError):
        ReducedForm((1, 2, 3), ())


def test_json_round_trip():
    rf = ReducedForm((1, -2, 0, 3), ((0, 2), (-1, -1), (4, 0)))
    text = rf_to_json(rf)
    assert json.loads(text) == \
        {"r": [1, -2, 0, 3], "blocks": [[0, 2], [-1, -1], [4, 0]]}
    assert rf_from_json(text) == rf
    assert rf_from_json(json.loads(text)) == rf


def test_json_rejects_malformed_documents():
    for doc in [{}, {"r": [1, 2, 3], "blocks": []},
                {"r": [0, 0, 0, 0], "blocks": [[1]]},
                {"r": [0, 0, 0, 0], "blocks": [[1, 0], [1, 1]]}]:
        with pytest.raises(PreconditionError):
            rf_from_json(doc)


# -- cyclic rotations ----------------------------------------------------

def test_rotation_examples():
    rots = {r.blocks for r in
            cyclic_rotations(ReducedForm((0, 0, 0, 0), ((2, 2),)))}
    assert ((2, 2),) in rots and ((0, 2), (2, 0)) in rots
    rf = ReducedForm((3, 1, 4, 1), ())
    assert cyclic_rotations(rf) == [rf]
    rots = {r.blocks for r in
            cyclic_rotations(ReducedForm((0, 0, 0, 0), ((1, 1), (1, 1))))}
    assert rots == {((1, 1), (1, 1)), ((0, 1), (1, 1), (1, 0))}


@given(forms)
def test_rotations_preserve_boundary_and_exponent_class(rf):
    base = exponent_class(expand(rf))
    for rho in cyclic_rotations(rf):
        assert rho.r == rf.r
        assert exponent_class(expand(rho)) == base


@given(forms)
def test_rotation_set_is_a_conjugacy_class_fixpoint(rf):
    base = set(cyclic_rotations(rf))
    for rho in base:
        assert set(cyclic_rotations(rho)) == base


def test_rotation_conjugators_certify_conjugacy():
    rng = random.Random(11)
    checked = 0
    for _ in range(10):
        w = tuple((rng.choice("abcdefgh"), rng.choice([-2, -1, 1, 2]))
                  for _ in range(rng.randrange(0, 5)))
        rf = reduce(w)
        for k, rho in enumerate(cyclic_rotations(rf)):
            u = rotation_conjugator(rf, k)
            lhs = concat(invert(u), expand(rf), u)
            assert equal_in_mcg(lhs, expand(rho)), (rf, k)
            checked += 1
    assert checked >= 10


@given(forms)
def test_canonical_form_is_constant_on_rotations(rf):
    key = canonical_form(rf)
    for rho in cyclic_rotations(rf):
        assert canonical_form(rho) == key
    assert key in cyclic_rotations(rf)


# -- mirror ---------------------------------------------------------------

def test_mirror_ef_is_an_involution_permuting_r():
    rf = ReducedForm((1, 2, 3, 4), ((-1, 2), (3, 0)))
    m = mirror_ef(rf)
    assert m.r == (3, 2, 1, 4)
    assert mirror_ef(m) == rf


@given(words)
def test_mirror_commutes_with_reduction(w):
    assert reduce(mirror_word(w)) == mirror_ef(reduce(w))


# -- positive factorizations ----------------------------------------------

def test_factorization_examples():
    f = positive_factorization(ReducedForm((0, 0, 0, 0), ((1, 1),)))
    assert format_word(f.word) == "e f" and f.rule == "H1"
    f = positive_factorization(ReducedForm((1, 1, 1, 1), ((-1, 0),)))
    assert format_word(f.word) == "h f" and f.rule == "H1"
    f = positive_factorization(ReducedForm((1, 1, 1, 1), ((-1, -1),)))
    assert format_word(f.word) == "h" and f.rule == "H2"


def test_factorization_h3_and_h4_cases():
    f = positive_factorization(ReducedForm((2, 2, 2, 2), ((-2, -2),)))
    assert f.rule == "H3"
    assert all(e > 0 for _, e in f.word)
    f = positive_factorization(ReducedForm((2, 2, 2, 2), ((-1, 1), (1, -1))))
    assert f.rule == "H4"
    assert all(e > 0 for _, e in f.word)


def test_factorization_absent_without_an_h_rule():
    assert positive_factorization(ReducedForm((1, 1, 1, 1), ((-2, -1),))) \
        is None
    assert positive_factorization(ReducedForm((-1, 0, 0, 0), ((1, 1),))) \
        is None


def test_factorizations_recertify_externally():
    # the factorization routine certifies internally; re-check a few by
    # hand against the documented conjugacy statement
    for rf in [ReducedForm((1, 1, 1, 1), ((-1, -1),)),
               ReducedForm((1, 1, 1, 1), ((-1, 0),)),
               ReducedForm((3, 2, 2, 2), ((-2, -2),)),
               ReducedForm((1, 1, 1, 1), ((0, -1), (-1, 0)))]:
        f = positive_factorization(rf)
        rho = cyclic_rotations(rf)[f.rotation]
        u = f.conjugator
        lhs = concat(u, f.word, invert(u))
        assert equal_in_mcg(lhs, expand(rho)), rf
