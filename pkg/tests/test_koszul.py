from __future__ import annotations

import itertools
import pytest
from hypothesis import given, settings, strategies as st

from dgkoszul.bar_cobar import bar
from dgkoszul.dg_algebra import from_presentation, parse_presentation
from dgkoszul.dg_coalgebra import is_coalgebra_morphism
from dgkoszul.koszul import (
    choose_complement, koszul_check, koszul_construction, priddy, quadratic_dual, two_homogeneous_check,
)
from dgkoszul.labels import Word
from conftest import corpus
import oracle


def algebra(text, cutoff=10):
    return from_presentation(parse_presentation(text), cutoff)


def first_mismatch(bar_ranks: dict, priddy_ranks: dict):
    bad = sorted(n for n in bar_ranks if bar_ranks[n] != priddy_ranks.get(n, 0))
    return bad[0] if bad else None


# --- two-homogeneity -----------------------------------------------------------------

def test_two_homogeneity_verdicts():
    assert two_homogeneous_check(algebra("gen x 1\nrel x*x*x*x")).holds
    assert two_homogeneous_check(corpus("trunc3.alg", 10)).holds
    th = two_homogeneous_check(corpus("nonhomog.alg", 10))
    assert not th.holds and th.failure == 4
    # in degree 4, y*y lies in V² and also equals x^4 in Ā³
    rv, r3, r2 = th.square_ranks[4]
    assert rv + r3 > r2


def test_complement_is_the_generators_for_presented_algebras():
    A = corpus("exterior2.alg", 10)
    assert choose_complement(A) == [Word(("x1",), "alg"), Word(("x2",), "alg")]
    assert choose_complement(A, [Word(("x2",), "alg"), Word(("x1",), "alg")]) == \
        [Word(("x2",), "alg"), Word(("x1",), "alg")]


# --- quadratic dual ----------------------------------------------------------------------

@pytest.mark.parametrize("name,gens,rels", [
    # the dual relations are the annihilator of the relation space, written in ξ generators
    ("exterior2", {"a": 2, "b": 2}, [{("a", "b"): 1, ("b", "a"): -1}]),
    ("trunc3", {"a": 2}, [{("a", "a"): 1}]),
    ("dual", {"a": 2}, []),
    ("trivext1", {"a": 2}, []),
])
def test_shriek_ranks_match_oracle(name, gens, rels):
    A = corpus(name + ".alg", 10)
    qd = quadratic_dual(A, 9)
    want = oracle.quadratic_quotient_ranks(gens, rels, 8)
    assert {n: qd.shriek_ranks.get(-n, 0) for n in range(9)} == want
    qd.shriek.check(limit=None)


def test_exterior_dual_is_polynomial():
    qd = quadratic_dual(corpus("exterior2.alg", 10), 9)
    assert [qd.shriek_ranks[-2 * p] for p in range(5)] == [1, 2, 3, 4, 5]
    assert qd.as_dict()["relations"] == ["-1*xi_x1*xi_x2 + 1*xi_x2*xi_x1"]


def test_negative_polarity_shriek():
    qd = quadratic_dual(corpus("negative.alg", 10), 8)
    assert {n: qd.shriek_ranks[n] for n in range(8)} == {n: 1 for n in range(8)}


def test_refusals():
    with pytest.raises(ValueError):
        quadratic_dual(corpus("nonhomog.alg", 10))
    with pytest.raises(ValueError):
        priddy(corpus("nonhomog.alg", 10), 6)
    with pytest.raises(ValueError):
        koszul_check(corpus("massey1.alg", 10))
    with pytest.raises(ValueError):
        quadratic_dual(corpus("massey1.alg", 10))


# --- Priddy coalgebra -----------------------------------------------------------------

@pytest.mark.parametrize("name", ["dual", "trunc3", "exterior2", "trivext1", "negative"])
def test_priddy_coalgebra(name):
    A = corpus(name + ".alg", 10)
    pd = priddy(A, 7)
    pd.coalgebra.check(limit=None)
    assert is_coalgebra_morphism(pd.inclusion, pd.coalgebra, pd.bar)
    assert pd.tau.is_twisting()
    qd = quadratic_dual(A, 7)
    for n in pd.coalgebra.carrier.degrees():
        if pd.coalgebra.window.known(n) and abs(n) <= 6:
            assert pd.coalgebra.carrier.rank(n) == qd.shriek_ranks.get(-n, 0)


def test_priddy_exterior_degree_four():
    pd = priddy(corpus("exterior2.alg", 10), 7)
    assert pd.coalgebra.carrier.rank(4) == 3


# --- verdicts -----------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["dual", "exterior2", "trivext1", "negative"])
def test_koszul_algebras(name):
    c = koszul_check(corpus(name + ".alg", 10), 8)
    assert c.koszul and c.rank_agreement and c.acyclicity.acyclic and c.first_failure is None
    assert c.ext_ranks == {-n: r for n, r in c.bar_homology_ranks.items()}
    assert c.shriek_ranks == c.ext_ranks


@pytest.mark.parametrize("text,table", [
    ("gen x 1\nrel x*x*x", oracle.truncated(3)),
    ("gen x 1\nrel x*x*x*x", oracle.truncated(4)),
])
def test_non_koszul_first_failure_matches_oracle(text, table):
    A = algebra(text)
    c = koszul_check(A, 9)
    want_bar = oracle.bar_homology(table, 9)
    assert c.bar_homology_ranks == {n: want_bar[n] for n in c.bar_homology_ranks}
    # A^< = {[], [x]} in both cases, so the first extra bar class is the failure
    assert first_mismatch(want_bar, {0: 1, 2: 1}) == c.first_failure
    assert not c.koszul and not c.acyclicity.acyclic


def test_frozen_failure_degrees():
    assert koszul_check(corpus("trunc3.alg", 10), 9).first_failure == 5
    assert koszul_check(algebra("gen x 1\nrel x*x*x*x"), 9).first_failure == 6


def test_nonhomogeneous_is_not_koszul():
    c = koszul_check(corpus("nonhomog.alg", 10), 8)
    assert not c.two_homogeneous and not c.koszul and c.first_failure == 4


def test_monotone_in_cutoff():
    A = corpus("trunc3.alg", 12)
    certs = [koszul_check(A, c) for c in range(3, 10)]
    verdicts = [c.koszul for c in certs]
    # once rejected, a larger window never accepts again
    assert verdicts == sorted(verdicts, reverse=True)
    assert verdicts[:2] == [True, True]
    # at cutoff 5 the ranks still agree, but x²⊗[x] is a twisted cycle that bounds nothing
    assert certs[2].rank_agreement and certs[2].first_failure == 4
    assert all(c.first_failure == 5 for c in certs[3:])
    for c in range(3, 9):
        assert koszul_check(corpus("exterior2.alg", 12), c).koszul


def test_relabelled_generators_give_the_same_answer():
    A = algebra("gen x2 1\ngen x1 1\nrel x2*x2\nrel x1*x1\nrel x2*x1 + x1*x2")
    B = corpus("exterior2.alg", 10)
    a, b = koszul_check(A, 7), koszul_check(B, 7)
    assert a.koszul == b.koszul
    assert a.shriek_ranks == b.shriek_ranks and a.ext_ranks == b.ext_ranks
    qa = quadratic_dual(B, 7, prefer=[Word(("x2",), "alg"), Word(("x1",), "alg")])
    assert qa.shriek_ranks == quadratic_dual(B, 7).shriek_ranks


@st.composite
def monomial_quadratic(draw):
    n = draw(st.integers(1, 2))
    gens = [f"g{i}" for i in range(n)]
    pairs = list(itertools.product(gens, repeat=2))
    # at least one relation on two generators keeps the growth polynomial
    rels = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=n - 1, max_size=len(pairs)))
    return gens, rels


@settings(max_examples=15)
@given(monomial_quadratic())
def test_quadratic_monomial_algebras_are_koszul(data):
    gens, rels = data
    text = "\n".join([f"gen {g} 1" for g in gens] + [f"rel {a}*{b}" for a, b in rels])
    c = koszul_check(algebra(text, 7), 6)
    assert c.koszul
    assert c.ext_ranks == {n: c.shriek_ranks.get(n, 0) for n in c.ext_ranks}


# --- Koszul construction ---------------------------------------------------------------

@pytest.mark.parametrize("name", ["dual", "exterior2", "trivext1", "trunc3", "negative"])
def test_koszul_construction(name):
    A = corpus(name + ".alg", 10)
    kc = koszul_construction(A, 6)
    assert kc.d_square_zero and kc.d_star_square_zero and kc.sigma_matches and kc.matches_priddy
    acyclic = all(r == (1 if n == 0 else 0) for n, r in kc.homology.items())
    assert acyclic == koszul_check(A, 6).koszul
