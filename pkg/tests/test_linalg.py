from __future__ import annotations

import random

from hypothesis import given, strategies as st

from dgkoszul.linalg import Echelon, axpy, kernel, rank_of_columns, rref, vsub
from dgkoszul.scalars import GF101, QQ, field_ops
from oracle import dense_rank

FIELDS = [GF101, QQ, field_ops("gf:2")]


def _random_vectors(F, seed, n, m, density=0.5):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        out.append({j: F.random(rng, nonzero=True) for j in range(m) if rng.random() < density})
    return out


def _dense(F, vecs, m):
    return [[(int(v.get(j, 0)) if F.p else v.get(j, 0)) for j in range(m)] for v in vecs]


@given(seed=st.integers(0, 10**6), n=st.integers(0, 8), m=st.integers(1, 8), fi=st.integers(0, 2))
def test_rank_matches_dense_oracle(seed, n, m, fi):
    F = FIELDS[fi]
    vecs = _random_vectors(F, seed, n, m)
    order = {j: j for j in range(m)}
    r = rank_of_columns(F, vecs, order)
    assert r == (dense_rank(_dense(F, vecs, m), F.p) if vecs else 0)


def _apply(F, tags_images, combo):
    out = {}
    for t, c in combo.items():
        axpy(F, out, c, tags_images[t])
    return out


@given(seed=st.integers(0, 10**6), n=st.integers(1, 8), m=st.integers(1, 6), fi=st.integers(0, 2))
def test_kernel_is_kernel(seed, n, m, fi):
    F = FIELDS[fi]
    imgs = _random_vectors(F, seed, n, m)
    tags = list(range(n))
    order = {j: j for j in range(m)}
    K = kernel(F, imgs, tags, order)
    table = dict(zip(tags, imgs))
    for k in K:
        assert k and _apply(F, table, k) == {}
    assert len(K) == n - rank_of_columns(F, imgs, order)
    assert rank_of_columns(F, K, {t: t for t in tags}) == len(K)


@given(seed=st.integers(0, 10**6), n=st.integers(1, 8), m=st.integers(1, 6))
def test_solve_and_membership(seed, n, m):
    F = GF101
    imgs = _random_vectors(F, seed, n, m)
    order = {j: j for j in range(m)}
    e = Echelon(F, order)
    for i, v in enumerate(imgs):
        e.add(v, i)
    rng = random.Random(seed + 1)
    combo = {i: F.random(rng) for i in range(n)}
    target = _apply(F, dict(enumerate(imgs)), combo)
    used = e.solve(target)
    assert used is not None and _apply(F, dict(enumerate(imgs)), used) == target
    assert e.contains(target)


@given(seed=st.integers(0, 10**6), n=st.integers(1, 7), m=st.integers(1, 7))
def test_rref_shape(seed, n, m):
    F = QQ
    vecs = _random_vectors(F, seed, n, m)
    order = {j: j for j in range(m)}
    rows = rref(F, vecs, order)
    pivots = [p for p, _ in rows]
    assert pivots == sorted(pivots)
    for p, row in rows:
        assert row[p] == 1
        assert all(q not in row for q in pivots if q != p)
    # same span
    e = Echelon(F, order)
    for _, row in rows:
        e.add(row)
    assert all(e.contains(v) for v in vecs)
    assert len(rows) == rank_of_columns(F, vecs, order)


def test_axpy_drops_zeros():
    F = GF101
    y = {"a": 1, "b": 2}
    axpy(F, y, F(-1), {"a": 1})
    assert y == {"b": 2}
    assert vsub(F, {"a": 3}, {"a": 3}) == {}
