"""The arc engine: canonical arcs, the side comparison, the certified
twist action, the equality oracle, the witness library, and the bounded
left-witness search (including cross-validation of the pruned search
against the unpruned reference sweep)."""

import itertools
import random

import pytest

from lanternbook.engine import (IDENTITY_ACTION, LEFT, PORTS_OF_COMPONENT,
                                RIGHT, Arc, _naive_first_witness, apply_twist,
                                apply_word, arc_from_json, arc_to_json,
                                canonical, certify_model, equal_in_mcg,
                                get_model, is_right_veering_upto, make_arc,
                                reverse, side_at_start, witness_library)
from lanternbook.errors import (MalformedArcError, PreconditionError,
                                WordSyntaxError)
from lanternbook.geometry import PORTS
from lanternbook.words import concat, invert, parse

GENERATORS = "abcdefgh"


def _small_arcs(max_crossings=1):
    """Deterministic basis of small canonical arcs for spot checks."""
    out = []
    for s in PORTS:
        for t in PORTS:
            out.append(Arc(s, (), t))
            if max_crossings >= 1:
                for x in (1, -1, 2, -2, 3, -3):
                    out.append(Arc(s, (x,), t))
    return out


# -- model construction ----------------------------------------------------

def test_certify_model_reports_the_batteries():
    info = certify_model()
    assert sorted(info["tables"]) == list(GENERATORS)
    assert info["lantern"] == (True, True)
    assert len(info["library"]) == 9


# -- arcs -------------------------------------------------------------------

def test_make_arc_removes_backtracks():
    arc = make_arc("P1", [1, 2, -2, -1, 3], "P4")
    assert arc.crossings == (3,)
    assert canonical(arc) == arc


def test_make_arc_rejects_garbage():
    with pytest.raises(MalformedArcError):
        make_arc("P9", [], "P1")
    with pytest.raises(MalformedArcError):
        make_arc("P1", [4], "P1")
    with pytest.raises(MalformedArcError):
        make_arc("P1", ["d1"], "P1")


def test_arc_json_round_trip():
    arc = make_arc("P2a", [1, -3, 2], "P4")
    doc = arc_to_json(arc)
    assert doc["start"] == ["C2", 0] and doc["end"] == ["C4", 0]
    assert doc["crossings"] == [["d1", "+"], ["d3", "-"], ["d2", "+"]]
    assert arc_from_json(doc) == arc


def test_arc_json_rejects_malformed_documents():
    for doc in [{}, {"start": ["C1", 0], "end": ["C9", 0], "crossings": []},
                {"start": ["C1", 0], "end": ["C2", 0],
                 "crossings": [["d4", "+"]]},
                {"start": ["C1", 0], "end": ["C2", 0],
                 "crossings": [["d1", "*"]]}]:
        with pytest.raises(MalformedArcError):
            arc_from_json(doc)


def test_reverse_is_an_involution():
    arc = make_arc("P1", [1, 2], "P3a")
    assert reverse(reverse(arc)) == arc
    assert reverse(arc).start == "P3a"


# -- side comparison ----------------------------------------------------------

def test_side_of_itself_is_equal():
    arc = make_arc("P1", [1, 2], "P3a")
    assert side_at_start(arc, arc) == "Equal"


def test_side_requires_a_common_start():
    with pytest.raises(PreconditionError):
        side_at_start(Arc("P1", (), "P4"), Arc("P4", (), "P1"))


def test_side_antisymmetry_on_small_arcs():
    arcs = [a for a in _small_arcs() if a.start == "P1"]
    for alpha, beta in itertools.combinations(arcs, 2):
        ab = side_at_start(alpha, beta)
        ba = side_at_start(beta, alpha)
        if ab == "Equal":
            assert ba == "Equal" and alpha == beta
        else:
            assert {ab, ba} == {LEFT, RIGHT}, (alpha, beta)


# -- the twist action ----------------------------------------------------------

def test_twists_are_invertible_on_small_arcs():
    for arc in _small_arcs():
        for g in GENERATORS:
            assert apply_twist(apply_twist(arc, g, +1), g, -1) == arc


def test_boundary_twist_misses_far_arcs():
    # the twist parallel to C1 fixes arcs with no endpoint on C1
    arc = Arc("P3a", (), "P3b")
    assert apply_twist(arc, "a", +1) == arc


def test_inverse_pair_on_a_library_witness():
    alpha = witness_library()[0][1]
    assert apply_twist(apply_twist(alpha, "e", +1), "e", -1) == alpha


def test_apply_word_identity_and_relations():
    arc = make_arc("P2a", [1], "P4")
    assert apply_word(arc, ()) == arc
    for alpha in _small_arcs():
        assert apply_word(alpha, parse("g e f")) == \
            apply_word(alpha, parse("a b c d"))
        assert apply_word(alpha, parse("h f e")) == \
            apply_word(alpha, parse("a b c d"))


def test_apply_word_parses_strings():
    arc = Arc("P1", (), "P4")
    assert apply_word(arc, "e e^-1") == arc
    with pytest.raises(WordSyntaxError):
        apply_word(arc, "x")


# -- the equality oracle ---------------------------------------------------------

def test_lantern_relations_certify():
    assert equal_in_mcg("g e f", "a b c d")
    assert equal_in_mcg("h f e", "a b c d")


def test_distinctness():
    assert not equal_in_mcg("e^2 f^2", "e f e f")


def test_boundary_twists_are_central():
    for k in "abcd":
        for g in GENERATORS:
            assert equal_in_mcg("%s %s" % (k, g), "%s %s" % (g, k))


def test_generators_act_pairwise_distinctly():
    for x, y in itertools.combinations(GENERATORS, 2):
        assert not equal_in_mcg(x, y), (x, y)


def test_conjugation_sanity():
    assert equal_in_mcg("a e a^-1", "e")
    assert not equal_in_mcg("f e f^-1", "e")


# -- witness search ---------------------------------------------------------------

def test_rv_examples():
    rep = is_right_veering_upto("a b c d e^-2 f^-1", 12)
    assert rep.outcome == "NotRightVeering"
    assert rep.boundary in ("C2", "C4")
    img = apply_word(rep.witness, "a b c d e^-2 f^-1")
    assert side_at_start(rep.witness, img) == LEFT
    assert is_right_veering_upto("e f", 12).outcome == "NoWitnessUpToBound"
    assert is_right_veering_upto("", 12).outcome == "NoWitnessUpToBound"


def test_rv_bound_is_validated():
    with pytest.raises(PreconditionError):
        is_right_veering_upto("e", 0)


def test_rv_report_serialization():
    doc = is_right_veering_upto("a b c d e^-1 f^-2", 12).to_json()
    assert doc["outcome"] == "NotRightVeering"
    assert doc["witness"]["start"][0] in ("C1", "C2", "C3", "C4")
    doc = is_right_veering_upto("e", 3).to_json()
    assert doc == {"outcome": "NoWitnessUpToBound", "bound": 3,
                   "word": "e", "witness": None}


def test_witness_library_entries_are_certified():
    entries = witness_library()
    assert len(entries) == 9
    for word, arc in entries:
        img = apply_word(arc, word)
        assert side_at_start(arc, img) == LEFT


def test_witness_library_covers_the_documented_families():
    entries = witness_library()
    # the negative-boundary family starts on each component in turn
    for k in range(4):
        word, arc = entries[k]
        assert ("abcd"[k], -1) in word
        assert arc.start in PORTS_OF_COMPONENT["C%d" % (k + 1)]
    # the crossing witness is left-veering at both of its ends
    word, gamma = entries[8]
    for w in ("a b c d e^-2 f^-1", "a b c d e^-1 f^-2"):
        img = apply_word(gamma, w)
        assert side_at_start(gamma, img) == LEFT
        assert side_at_start(reverse(gamma), reverse(img)) == LEFT


def test_pruned_search_matches_the_reference_sweep():
    words = ["a b c d e^-2 f^-1", "a b c d e^-1 f^-2", "a^-1 e^2 f^2",
             "e^-1 f", "e f", "a b c d e^-1", "b^-1 f^3", "e^-2 f^2",
             "a b c d e^-1 f^-1", "c^-1", "e^2 f^-1", ""]
    for text in words:
        for bound in (3, 5):
            rep = is_right_veering_upto(text, bound)
            naive = _naive_first_witness(text, bound)
            assert (rep.outcome == "NotRightVeering") == \
                (naive is not None), (text, bound)
            if rep.witness is not None:
                img = apply_word(rep.witness, text)
                assert side_at_start(rep.witness, img) == LEFT


def test_conjugation_consistency_of_no_witness_answers():
    # a conjugate of a right-veering monodromy is right-veering; bounded
    # evidence: every 1-letter conjugate of these no-witness words is
    # witness-free at bound 8
    for base in ("e f", "a b c d e^-1", "a b c d e^-1 f^-1"):
        w = parse(base)
        assert is_right_veering_upto(w, 12).outcome == "NoWitnessUpToBound"
        for s in GENERATORS:
            for sign in (1, -1):
                conj = ((s, sign),)
                ww = concat(conj, w, invert(conj))
                assert is_right_veering_upto(ww, 8).outcome == \
                    "NoWitnessUpToBound", (base, s, sign)


def test_identity_action_is_identity():
    model = get_model()
    for arc in _small_arcs():
        assert model.apply_action(IDENTITY_ACTION, arc) == arc
