from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from dgkoszul.chains import (
    Complex, DegreeWindow, DifferentialError, GradedMap, Homology, InputError, NotAChainMap,
    WindowError, delta_hom, double_dual_iso, dual, dual_map, hom_complex, identity_map,
    map_to_hom, mapping_cone, quasi_iso_check, read_complex, shift, shift_map, tensor,
    tensor_map, tensor_window, varpi, write_complex,
)
from dgkoszul.labels import sign
from dgkoszul.linalg import axpy
from dgkoszul.scalars import GF101, QQ, field_ops
from gen import random_chain_map, random_complex, random_map, random_space
from oracle import dense_homology

FIELDS = [GF101, QQ, field_ops("gf:3")]
seeds = st.integers(0, 10**6)
fields = st.sampled_from(FIELDS)


@given(seed=seeds, F=fields)
def test_homology_matches_construction_and_dense_oracle(seed, F):
    X, ranks = random_complex(F, random.Random(seed))
    H = Homology(X)
    assert {n: H.rank(n) for n in ranks} == ranks
    assert dense_homology(X) == {n: r for n, r in ranks.items()}


@given(seed=seeds)
def test_homology_representatives_and_boundaries(seed):
    F = GF101
    rng = random.Random(seed)
    X, _ = random_complex(F, rng)
    H = Homology(X)
    for n in X.basis:
        for i, z in enumerate(H.reps[n]):
            assert X.diff(z) == {}
            want = [F.zero] * len(H.reps[n])
            want[i] = F.one
            assert H.class_of(z, n) == want
        # a random boundary is solvable and has class zero
        if X.labels(n + 1):
            x = {lab: F.random(rng) for lab in X.labels(n + 1)}
            b = X.diff(x)
            sol = H.solve_boundary(b, n)
            assert sol is not None and X.diff(sol) == b
            assert H.is_boundary(b, n)
        for z in H.reps[n]:
            assert H.solve_boundary(z, n) is None


@given(seed=seeds, F=fields)
def test_kunneth(seed, F):
    rng = random.Random(seed)
    U, ru = random_complex(F, rng, -2, 2, prefix="u")
    V, rv = random_complex(F, rng, -1, 2, prefix="v")
    T = tensor(U, V)
    T.check()
    H = Homology(T)
    for n in T.degrees():
        assert H.rank(n) == sum(ru.get(i, 0) * rv.get(n - i, 0) for i in ru)


@given(seed=seeds)
def test_tensor_interchange(seed):
    F = GF101
    rng = random.Random(seed)
    U, V, W = (random_space(F, rng, -2, 2, 2, p) for p in "uvw")
    U2, V2, W2 = (random_space(F, rng, -2, 2, 2, p) for p in "xyz")
    a, b = rng.randint(-1, 1), rng.randint(-1, 1)
    c, e = rng.randint(-1, 1), rng.randint(-1, 1)
    f1 = random_map(F, rng, U, V, a)
    f2 = random_map(F, rng, V, W, c)
    g1 = random_map(F, rng, U2, V2, b)
    g2 = random_map(F, rng, V2, W2, e)
    lhs = tensor_map(f2, g2).compose(tensor_map(f1, g1))
    rhs = tensor_map(f2.compose(f1), g2.compose(g1))
    s = sign(e, a)
    for lab in lhs.source.all_labels():
        want = {k: F.signed(s, v) for k, v in rhs.image(lab).items()}
        assert lhs.image(lab) == want


@given(seed=seeds)
def test_hom_complex_and_chain_maps(seed):
    F = GF101
    rng = random.Random(seed)
    U, _ = random_complex(F, rng, -2, 2, prefix="u")
    V, _ = random_complex(F, rng, -2, 2, prefix="v")
    H = hom_complex(U, V)
    H.check()
    deg = rng.randint(-1, 1)
    f = random_chain_map(F, rng, U, V, deg)
    assert f.is_chain_map()
    assert H.diff(map_to_hom(f)) == {}
    # tensor of chain maps is a chain map
    W, _ = random_complex(F, rng, -1, 1, prefix="w")
    g = random_chain_map(F, rng, W, W, rng.randint(-1, 1))
    assert tensor_map(f, g).is_chain_map()


@given(seed=seeds)
def test_dual_is_functorial(seed):
    F = QQ
    rng = random.Random(seed)
    U, ru = random_complex(F, rng, -2, 2, prefix="u")
    V, _ = random_complex(F, rng, -2, 2, prefix="v")
    W, _ = random_complex(F, rng, -2, 2, prefix="w")
    D = dual(U)
    D.check()
    HD = Homology(D)
    assert {n: HD.rank(-n) for n in ru} == ru
    f = random_chain_map(F, rng, U, V, rng.randint(-1, 1))
    g = random_chain_map(F, rng, V, W, rng.randint(-1, 1))
    assert dual_map(f).is_chain_map()
    lhs = dual_map(g.compose(f))
    rhs = dual_map(f).compose(dual_map(g))
    s = sign(f.degree, g.degree)
    for lab in lhs.source.all_labels():
        assert lhs.image(lab) == {k: F.signed(s, v) for k, v in rhs.image(lab).items()}


@given(seed=seeds)
def test_canonical_maps_are_chain_isomorphisms(seed):
    F = GF101
    rng = random.Random(seed)
    U, _ = random_complex(F, rng, -2, 2, prefix="u")
    V, _ = random_complex(F, rng, -2, 2, prefix="v")
    for f in (double_dual_iso(U), varpi(U, V), delta_hom(U, V)):
        assert f.is_chain_map()
        assert all(len(img) == 1 for img in f.images.values())
        assert len({k for img in f.images.values() for k in img}) == f.source.dimension() == f.target.dimension()


@given(seed=seeds, s=st.integers(-3, 3))
def test_shift(seed, s):
    F = GF101
    U, ru = random_complex(F, random.Random(seed))
    S = shift(U, s)
    S.check()
    H = Homology(S)
    assert {n - s: H.rank(n) for n in S.degrees()} == ru
    assert shift_map(U, s, S).is_chain_map()


@given(seed=seeds)
def test_quasi_iso_via_cone(seed):
    F = GF101
    rng = random.Random(seed)
    U, ru = random_complex(F, rng, -2, 2)
    mapping_cone(identity_map(U)).check()
    assert quasi_iso_check(identity_map(U)).holds
    zero = GradedMap(U, U, 0, {})
    assert quasi_iso_check(zero).holds == (not any(ru.values()))


def test_non_chain_map_rejected():
    F = GF101
    X = Complex(F, DegreeWindow.finite(0, 1), {0: ["a"], 1: ["b"]}, {"b": {"a": 1}})
    Y = Complex(F, DegreeWindow.finite(0, 1), {0: ["a"], 1: ["b"]}, {})
    f = identity_map(X)
    f = GradedMap(X, Y, 0, f.images)
    assert f.chain_map_witness() == "b"
    with pytest.raises(NotAChainMap):
        quasi_iso_check(f)


def test_differential_error_witness():
    F = GF101
    X = Complex(F, DegreeWindow.finite(0, 2), {0: ["a"], 1: ["b"], 2: ["c"]},
                {"c": {"b": 1}, "b": {"a": 2}})
    with pytest.raises(DifferentialError) as e:
        X.check()
    assert (e.value.degree, e.value.source, e.value.target, e.value.coeff) == (2, "c", "a", "2")


@given(seed=seeds, F=fields)
def test_text_roundtrip(seed, F):
    X, _ = random_complex(F, random.Random(seed))
    text = write_complex(X)
    Y = read_complex(text, F)
    assert write_complex(Y) == text
    assert Y.d == X.d and Y.basis == X.basis


@pytest.mark.parametrize("text,needle", [
    ("basis 0 a\n", "header"),
    ("complex\nbasis 0 a\nfoo 1\n", "line 3"),
    ("complex\nbasis 0 a\nbasis 1 b\nd 1 b a 1\n", "line 4"),
    ("complex\nbasis 0 a\nbasis 1 b\nd 1 a b x\n", "line 4"),
    ("complex\nwindow 0\n", "line 2"),
    ("complex\nfield gf:4\n", "line 2"),
])
def test_read_complex_errors(text, needle):
    with pytest.raises(InputError) as e:
        read_complex(text)
    assert needle in str(e.value)


def test_windows():
    bb = DegreeWindow.bounded_below(0, 5)
    w = tensor_window(bb, bb)
    assert (w.lo, w.hi, w.polarity) == (0, 5, "bounded-below")
    fin = DegreeWindow.finite(-1, 1)
    w = tensor_window(bb, fin)
    assert (w.lo, w.hi) == (-1, 4)
    with pytest.raises(WindowError):
        tensor_window(bb, DegreeWindow.bounded_above(-5, 0))
    assert bb.dual().polarity == "bounded-above"
    assert not bb.certified(5) and bb.certified(4) and bb.certified(-7)


def test_homology_outside_window():
    F = GF101
    X = Complex(F, DegreeWindow.bounded_below(0, 3), {0: ["a"]})
    H = Homology(X)
    assert H.rank(-4) == 0 and not H.is_certified(3) and H.is_certified(2)
    with pytest.raises(WindowError):
        H.rank(9)
