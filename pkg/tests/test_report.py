import pytest

from divstrata import fixtures
from divstrata.errors import BudgetExceeded, ValidationFailed
from divstrata.report import decompose, homology_limit_report, sub_germ_numbers


def test_gl4_decomposition_n2():
    g, d = fixtures.load("gl4")
    rep = decompose(g, d, 2)
    assert rep.consistent
    main = rep.main_terms
    assert [t.degree for t in main] == list(range(13))
    assert all(t.lambda_invariant and t.multiplicity == 1 for t in main)
    parts = {str(t.partition) for t in rep.stratum_terms}
    assert len(parts) == 7
    assert all(t.partition.length == 2 and t.multiplicity == 1 for t in rep.stratum_terms)
    assert not any(t.lambda_invariant for t in rep.stratum_terms)
    for t in rep.stratum_terms:
        assert t.shift == t.degree + 2 * t.h and t.twist == -t.h
        assert 0 <= t.degree <= 2 * (6 - t.h)


def test_node_decomposition_n3():
    g, d = fixtures.load("node")
    rep = decompose(g, d, 3)
    assert len(rep.main_terms) == 3
    (t,) = rep.stratum_terms
    assert (str(t.partition), t.degree, t.shift, t.twist, t.multiplicity) == ("1|2", 0, 2, -1, 2)


def test_text_rendering():
    g, d = fixtures.load("node")
    text = decompose(g, d, 3).to_text()
    assert "partition 1|2  h=1  multiplicity=2" in text
    assert text.endswith("partition-sum identity: ok at 1 partitions\n")


def test_decompose_rejects_invalid_divide():
    g, d = fixtures.load("gl4")
    with pytest.raises(ValidationFailed):
        decompose(g, d.without_region(3), 2)


def test_gl4_limit_report():
    g, d = fixtures.load("gl4")
    terms = homology_limit_report(g, d, max_degree=6)
    at2 = [t for t in terms if t.degree == 2]
    assert [t.i_prime for t in at2] == [0, 1, 2] and all(t.kind == "main" for t in at2)
    st6 = [t for t in terms if t.degree == 6 and t.kind == "stratum"]
    assert {str(t.partition) for t in st6} == {"1|2,3,4", "1,3,4|2", "1,2,4|3", "1,2,3|4"}
    assert all(t.i_double == 0 and sum(t.i_tuple) == 0 and sum(t.j_tuple) == 0 for t in st6)
    assert all(t.twist == t.h == 3 for t in st6)


def test_limit_full_and_budget():
    g, d = fixtures.load("gl4")
    assert len(homology_limit_report(g, d)) == 390
    with pytest.raises(BudgetExceeded):
        homology_limit_report(g, d, term_budget=50)


def test_sub_germ_numbers():
    g, _ = fixtures.load("gl4")
    assert sub_germ_numbers(g, (1,)) == (0, 0)
    assert sub_germ_numbers(g, (1, 2)) == (1, 1)
    assert sub_germ_numbers(g, (1, 2, 3, 4)) == (6, 9)
