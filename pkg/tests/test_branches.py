from fractions import Fraction as F

import pytest

from divstrata import fixtures
from divstrata.branches import (
    BranchSpec,
    GermSpec,
    PuiseuxCharacteristic,
    TruncatedSeries,
    complete_intersection_matrix,
    format_polynomial,
    germ_from_json,
    germ_invariants,
    intersection_multiplicity,
    parse_polynomial,
    semigroup_and_delta,
)
from divstrata.errors import IncompleteGerm, InputError, InvalidCharacteristic, NeedsMoreTerms

import oracles


def series(terms, prec=None):
    return TruncatedSeries(tuple((F(e), F(c)) for e, c in terms), prec)


def branch(i, ch=(1,), x=None, y=None, poly=None, prec=None):
    par = None if x is None else (series(x, prec), series(y, prec))
    return BranchSpec(i, PuiseuxCharacteristic.from_list(list(ch)), par, parse_polynomial(poly) if poly else None)


@pytest.mark.parametrize(
    "ch,gens,delta",
    [((1,), (1,), 0), ((2, 3), (2, 3), 1), ((4, 6, 7), (4, 6, 13), 8), ((3, 7), (3, 7), 6)],
)
def test_semigroup_and_delta(ch, gens, delta):
    got = semigroup_and_delta(PuiseuxCharacteristic.from_list(list(ch)))
    assert got == (gens, delta)
    assert oracles.semigroup_gap_delta(gens) == delta


@pytest.mark.parametrize("bad", [[0], [2], [2, 4], [4, 6], [4, 6, 8, 9], [3, 2], [4, 6, 6], []])
def test_invalid_characteristics(bad):
    with pytest.raises(InvalidCharacteristic):
        PuiseuxCharacteristic.from_list(bad)


def test_parse_polynomial():
    assert parse_polynomial("x*y*(x^2-y^2)") == {(3, 1): 1, (1, 3): -1}
    assert parse_polynomial("-2xy + 3") == {(0, 0): 3, (1, 1): -2}
    assert parse_polynomial("(x+y)**2") == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert parse_polynomial("x − y") == {(1, 0): 1, (0, 1): -1}
    assert parse_polynomial("x - x") == {}
    for bad in ("x +", "z", "x^y", "(x", "2 $ 3"):
        with pytest.raises(InputError):
            parse_polynomial(bad)


def test_format_round_trip():
    for text in ("x^3 - y^2", "x*y*(x^2-y^2)", "-x + 2*y^3 - 7", "y"):
        p = parse_polynomial(text)
        assert parse_polynomial(format_polynomial(p)) == p


def test_intersection_spec_examples():
    l1 = branch(1, x=[(1, 1)], y=[(1, 1)], poly="x - y")
    l2 = branch(2, x=[(1, 1)], y=[(1, -1)], poly="x + y")
    assert intersection_multiplicity(l1, l2) == 1
    cusp = branch(1, (2, 3), x=[(2, 1)], y=[(3, 1)], poly="x^3 - y^2")
    line = branch(2, x=[(1, 1)], y=[], poly="y")
    assert intersection_multiplicity(cusp, line) == 3
    p1 = branch(1, x=[(1, 1)], y=[(2, 1)], poly="y - x^2")
    p2 = branch(2, x=[(1, 1)], y=[(2, -1)], poly="y + x^2")
    assert intersection_multiplicity(p1, p2) == 2


def test_intersection_symmetric_on_pairs():
    pairs = [
        (branch(1, (2, 3), x=[(2, 1)], y=[(3, 1)], poly="x^3 - y^2"), branch(2, x=[(1, 1)], y=[], poly="y")),
        (branch(1, x=[(1, 1)], y=[(2, 1)], poly="y - x^2"), branch(2, x=[(1, 1)], y=[(2, -1)], poly="y + x^2")),
        (branch(1, (2, 3), x=[(2, 1)], y=[(3, 1)], poly="x^3 - y^2"),
         branch(2, (2, 5), x=[(2, 1)], y=[(5, 1)], poly="x^5 - y^2")),
    ]
    for a, b in pairs:
        assert intersection_multiplicity(a, b) == intersection_multiplicity(b, a)


def test_rational_exponents_use_common_uniformizer():
    # y = x^(3/2) is the cusp written in x; t = x^(1/2) uniformizes
    h = branch(1, (2, 3), x=[(1, 1)], y=[(F(3, 2), 1)])
    assert intersection_multiplicity(h, branch(2, poly="y")) == 3
    assert intersection_multiplicity(h, branch(2, poly="x")) == 2


def test_needs_more_terms():
    tr = branch(1, x=[(1, 1)], y=[(2, 1)], prec=3)
    with pytest.raises(NeedsMoreTerms) as err:
        intersection_multiplicity(tr, branch(2, poly="y - x^2"))
    assert err.value.required_order == 3
    # the same truncation is enough against a transverse line
    assert intersection_multiplicity(tr, branch(2, poly="y - 2*x^2")) == 2


def test_branch_on_curve_has_no_multiplicity():
    with pytest.raises(InputError):
        intersection_multiplicity(branch(1, x=[(1, 1)], y=[(2, 1)]), branch(2, poly="y - x^2"))


def test_self_consistency():
    assert branch(1, (2, 3), x=[(2, 1)], y=[(3, 1)], poly="x^3 - y^2").self_consistent()
    assert not branch(1, (2, 3), x=[(2, 1)], y=[(3, 1)], poly="x^3 + y^2").self_consistent()


def test_germ_invariants_examples():
    g, _ = fixtures.load("gl4")
    inv = germ_invariants(g)
    assert (inv.r, inv.delta, inv.mu, inv.tau_hint) == (4, 6, 9, 9)
    smooth = GermSpec((branch(1, poly="y"),))
    assert germ_invariants(smooth).delta == 0 and germ_invariants(smooth).mu == 0
    cusp, _ = fixtures.load("cusp")
    inv = germ_invariants(cusp)
    assert (inv.delta, inv.mu) == (1, 2)


def test_tau_hint_absent_without_equations():
    g = GermSpec((BranchSpec(1, PuiseuxCharacteristic(2, (3,))),))
    assert germ_invariants(g).tau_hint is None


def test_incomplete_germ():
    g = GermSpec((branch(1), branch(2)))
    with pytest.raises(IncompleteGerm):
        germ_invariants(g)
    g = GermSpec((branch(1), branch(2)), ((None, None), (None, None)))
    with pytest.raises(IncompleteGerm):
        germ_invariants(g)


def test_matrix_validation():
    with pytest.raises(InputError):
        GermSpec((branch(1), branch(2)), ((None, 1), (2, None)))
    with pytest.raises(InputError):
        GermSpec((branch(1), branch(2)), ((None, 0), (0, None)))
    with pytest.raises(InputError):
        GermSpec((branch(1), branch(3)))


def test_complete_intersection_matrix():
    data = fixtures.load_json("gl4_germ.json")
    del data["intersection_matrix"]
    g = complete_intersection_matrix(germ_from_json(data))
    assert all(g.C(i, j) == 1 for i in range(1, 5) for j in range(1, 5) if i != j)
    assert g.provenance[0][1] == "computed"
    assert germ_invariants(g).delta == 6


def test_json_round_trip():
    for name in fixtures.NAMES:
        g, _ = fixtures.load(name)
        again = germ_from_json(g.to_json())
        assert germ_invariants(again) == germ_invariants(g)
        assert [b.characteristic for b in again.branches] == [b.characteristic for b in g.branches]
