from fractions import Fraction

import pytest
from hypothesis import given, settings

from corpus import TORUS_PAIRS, box, knotlike, rank_one, scramble
from upsilontor.complex import (BifilteredComplex, ComplexError, DifferentialEntry, Generator,
                                alexander_exponents, dual, infer_gradings, is_isomorphic,
                                staircase, tensor, torus_knot_staircase, unknot, validate)
from upsilontor.filtration import reduce


def positions(c):
    return [(g.id, g.i, g.j, g.maslov) for g in c.generators]


def arrows(c):
    return sorted((e.source, e.target, e.u_power) for e in c.differential)


def test_unknot_is_valid():
    c = unknot()
    assert len(c) == 1 and not c.differential
    assert validate(c).ok


def test_trefoil_staircase():
    c = torus_knot_staircase(2, 3)
    assert [(g.i, g.j) for g in c.generators] == [(0, 1), (1, 1), (1, 0)]
    assert arrows(c) == [("b", "a", 0), ("b", "c", 0)]


def test_t34_staircase_matches_level_tables():
    c = torus_knot_staircase(3, 4)
    assert [(g.id, g.i, g.j) for g in c.generators] == [
        ("a", 0, 3), ("b", 1, 3), ("c", 1, 1), ("d", 3, 1), ("e", 3, 0)]
    assert arrows(c) == [("b", "a", 0), ("b", "c", 0), ("d", "c", 0), ("d", "e", 0)]
    assert validate(c).ok


def test_surviving_generator_has_grading_zero():
    c = torus_knot_staircase(3, 4)
    assert {g.maslov for g in c.generators if g.id in "ace"} == {0}
    assert {g.maslov for g in c.generators if g.id in "bd"} == {1}


@pytest.mark.parametrize("p,q", [(1, 1), (1, 7), (5, 1)])
def test_trivial_torus_knots_are_unknots(p, q):
    c = torus_knot_staircase(p, q)
    assert positions(c) == [("x", 0, 0, 0)]


@pytest.mark.parametrize("p,q", [(2, 4), (6, 9), (0, 3), (-2, 3)])
def test_torus_rejects_bad_parameters(p, q):
    with pytest.raises(ComplexError):
        torus_knot_staircase(p, q)


def test_not_coprime_message():
    with pytest.raises(ComplexError, match="not coprime"):
        torus_knot_staircase(2, 4)


@pytest.mark.parametrize("p,q", TORUS_PAIRS)
def test_torus_staircases(p, q):
    c = torus_knot_staircase(p, q)
    assert validate(c).ok
    genus = (p - 1) * (q - 1) // 2
    # one generator per nonzero term of the Alexander polynomial
    assert len(c) == len(alexander_exponents(p, q))
    assert c.generators[0].i == 0 and c.generators[0].j == genus
    assert c.generators[-1].i == genus and c.generators[-1].j == 0
    assert sorted((g.i, g.j) for g in c.generators) == sorted(
        (g.j, g.i) for g in c.generators)


def test_alexander_exponents_known():
    assert alexander_exponents(2, 3) == [2, 1, 0]
    assert alexander_exponents(3, 4) == [6, 5, 3, 1, 0]
    assert alexander_exponents(3, 5) == [8, 7, 5, 4, 3, 1, 0]


def test_validate_flags_bumped_u_power():
    c = torus_knot_staircase(3, 4)
    diff = list(c.differential)
    diff[0] = DifferentialEntry(diff[0].source, diff[0].target, diff[0].u_power + 1)
    report = validate(BifilteredComplex(c.generators, diff))
    assert "grading" in report.rules()


def test_validate_rules_individually():
    a, b = Generator("a", 0, 0, 1), Generator("b", 0, 0, 0)
    cases = {
        "unique-id": BifilteredComplex([a, a]),
        "dangling-ref": BifilteredComplex([a], [DifferentialEntry("a", "zz")]),
        "duplicate-entry": BifilteredComplex([a, b], [DifferentialEntry("a", "b")] * 2),
        "filtered": BifilteredComplex([a, Generator("b", 1, 0, 0)], [DifferentialEntry("a", "b")]),
        "grading": BifilteredComplex([a, Generator("b", 0, 0, 1)], [DifferentialEntry("a", "b")]),
    }
    for rule, c in cases.items():
        report = validate(c)
        assert not report.ok and rule in report.rules(), (rule, str(report))


def test_validate_d_squared():
    gens = [Generator("x", 2, 2, 2), Generator("y", 1, 1, 1), Generator("z", 0, 0, 0)]
    c = BifilteredComplex(gens, [DifferentialEntry("x", "y"), DifferentialEntry("y", "z")])
    assert validate(c).rules() == {"d-squared"}


def test_report_text():
    assert str(validate(unknot())) == "ok"
    bad = validate(BifilteredComplex([unknot().generators[0]] * 2))
    assert str(bad).startswith("unique-id:")


def test_negative_u_powers_allowed():
    x, a = Generator("x", 0, 0, 0), Generator("a", 1, 1, 1)
    ok = BifilteredComplex([x, a, Generator("b", 0, 0, -2)], [DifferentialEntry("a", "b", -1)])
    assert validate(ok).ok
    high = BifilteredComplex([x, a, Generator("b", 1, 0, -2)], [DifferentialEntry("a", "b", -1)])
    assert validate(high).rules() == {"filtered"}


def test_tensor_with_unknot():
    c = torus_knot_staircase(3, 4)
    assert is_isomorphic(tensor(unknot(), c), c)
    assert is_isomorphic(tensor(c, unknot()), c)


def test_tensor_sizes_and_validity():
    t = torus_knot_staircase(2, 3)
    c = tensor(t, t)
    assert len(c) == 9 and validate(c).ok
    assert len(tensor(c, dual(t))) == 27


def test_dual_of_unknot():
    assert is_isomorphic(dual(unknot()), unknot())


def test_dual_positions():
    c = dual(torus_knot_staircase(2, 3))
    assert positions(c) == [("a*", 0, -1, 0), ("b*", -1, -1, -1), ("c*", -1, 0, 0)]
    assert arrows(c) == [("a*", "b*", 0), ("c*", "b*", 0)]


def test_tensor_rejects_invalid_input():
    bad = BifilteredComplex([Generator("a", 0, 0, 0)], [DifferentialEntry("a", "q")])
    with pytest.raises(ComplexError):
        tensor(bad, unknot())


def test_is_isomorphic_negative():
    assert not is_isomorphic(torus_knot_staircase(2, 3), torus_knot_staircase(2, 5))
    t = torus_knot_staircase(2, 3)
    assert not is_isomorphic(t, t.shift(1, 1, 2))


def test_shift_and_flip():
    c = torus_knot_staircase(3, 4)
    assert positions(c.shift(1, 2, 3))[0] == ("a", 1, 5, 3)
    assert is_isomorphic(c.flip(), c)  # torus knot staircases are symmetric
    assert not is_isomorphic(staircase([1, 2]).flip(), staircase([1, 2]))


def test_infer_gradings():
    c = torus_knot_staircase(3, 4)
    g = infer_gradings([(x.id, x.i, x.j) for x in c.generators], list(c.differential))
    assert {x.id: x.maslov - g[x.id] for x in c.generators} == {x: 0 for x in "abcde"}
    with pytest.raises(ComplexError):
        infer_gradings([("a", 0, 0), ("b", 0, 0)],
                       [DifferentialEntry("a", "b"), DifferentialEntry("b", "a")])


def test_staircase_rejects_odd_steps():
    with pytest.raises(ComplexError):
        staircase([1, 2, 3])


def test_box_is_acyclic():
    c = box(0, 0, 1, 2)
    assert validate(c).ok
    with pytest.raises(ComplexError, match="homology rank violation"):
        reduce(c, Fraction(1))


@settings(max_examples=40, deadline=None)
@given(knotlike)
def test_dual_is_an_involution(c):
    assert is_isomorphic(dual(dual(c)), c)


@settings(max_examples=40, deadline=None)
@given(rank_one)
def test_generated_complexes_validate(c):
    assert validate(c).ok
    assert validate(dual(c)).ok


@settings(max_examples=25, deadline=None)
@given(rank_one, rank_one)
def test_tensor_commutes_up_to_barcodes(a, b):
    ab, ba = tensor(a, b), tensor(b, a)
    assert validate(ab).ok
    for t in (Fraction(1, 3), Fraction(1), Fraction(7, 5)):
        assert reduce(ab, t).normalized() == reduce(ba, t).normalized()


def test_tensor_associative_up_to_barcodes():
    a, b, c = (torus_knot_staircase(2, 3), dual(torus_knot_staircase(2, 5)),
               torus_knot_staircase(3, 4))
    left, right = tensor(tensor(a, b), c), tensor(a, tensor(b, c))
    for k in range(1, 11):
        t = Fraction(2 * k, 11)
        assert reduce(left, t).normalized() == reduce(right, t).normalized()


def test_scramble_preserves_barcodes():
    import random
    rng = random.Random(5)
    c = torus_knot_staircase(3, 5)
    s = scramble(c, rng, 6)
    for t in (Fraction(1, 2), Fraction(1), Fraction(5, 4)):
        assert reduce(c, t).normalized() == reduce(s, t).normalized()
