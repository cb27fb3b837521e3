"""Random graded objects for property tests."""

from __future__ import annotations

import random

from dgkoszul.chains import Complex, DegreeWindow, GradedMap, hom_complex, hom_to_map
from dgkoszul.linalg import axpy, kernel


def random_space(F, rng: random.Random, lo=-3, hi=3, maxdim=3, prefix="e"):
    basis = {}
    for n in range(lo, hi + 1):
        k = rng.randint(0, maxdim)
        if k:
            basis[n] = [f"{prefix}{n}_{i}" for i in range(k)]
    if not basis:
        basis[0] = [f"{prefix}0_0"]
    return Complex(F, DegreeWindow.finite(lo, hi), basis)


def random_chain_map(F, rng: random.Random, U, V, degree: int):
    """A random cycle of Hom(U, V) of the given degree, as a map."""
    H = hom_complex(U, V)
    cycles = kernel(F, [H.d.get(h, {}) for h in H.labels(degree)], list(H.labels(degree)),
                    H.order(degree - 1))
    vec: dict = {}
    for z in cycles:
        axpy(F, vec, F.random(rng), z)
    return hom_to_map(vec, U, V, degree)


def random_map(F, rng: random.Random, U, V, degree: int, density=0.6):
    imgs = {}
    for u in U.all_labels():
        img = {}
        for v in V.labels(U.degree(u) + degree):
            if rng.random() < density:
                c = F.random(rng, nonzero=True)
                img[v] = c
        imgs[u] = img
    return GradedMap(U, V, degree, imgs)


def random_complex(F, rng: random.Random, lo=-3, hi=3, maxpieces=2, ops=12, prefix="c"):
    """A finite complex with known homology.

    Built from free classes and contractible pairs e -> f, then scrambled
    by random elementary changes of basis. Returns (complex, ranks).
    """
    basis: dict = {}
    d: dict = {}
    ranks = {}
    count = [0]

    def new(n):
        lab = f"{prefix}{n}_{count[0]}"
        count[0] += 1
        basis.setdefault(n, []).append(lab)
        return lab

    for n in range(lo, hi + 1):
        h = rng.randint(0, maxpieces)
        ranks[n] = h
        for _ in range(h):
            new(n)
        if n > lo:
            for _ in range(rng.randint(0, maxpieces)):
                e, f = new(n), new(n - 1)
                d[e] = {f: F.one}
    for _ in range(ops if basis else 0):
        n = rng.choice(sorted(basis))
        labs = basis[n]
        if len(labs) < 2:
            continue
        i, j = rng.sample(labs, 2)
        c = F.random(rng, nonzero=True)
        # new e_j = e_j + c e_i
        dj = dict(d.get(j, {}))
        for k, v in d.get(i, {}).items():
            nv = F.add(dj.get(k, F.zero), F.mul(c, v))
            if nv:
                dj[k] = nv
            else:
                dj.pop(k, None)
        d[j] = dj
        for src, img in d.items():
            if j in img:
                nv = F.sub(img.get(i, F.zero), F.mul(c, img[j]))
                if nv:
                    img[i] = nv
                else:
                    img.pop(i, None)
    d = {k: v for k, v in d.items() if v}
    for n in range(lo, hi + 1):
        ranks.setdefault(n, 0)
    return Complex(F, DegreeWindow.finite(lo, hi), basis, d), ranks
