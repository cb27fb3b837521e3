"""Convolution algebra Hom(C, A) and its actions.

Elements are ``GradedMap`` objects. For a left C-comodule X and a left
A-module M the cup product pairs Hom(C, A) with Hom(X, M); the cap
product lets Hom(C, A) act on Y⊗M for a right comodule Y. The opposite
versions pair right modules with left comodules.
"""

from __future__ import annotations

from .chains import GradedMap, hom_complex, tensor
from .dg_algebra import DGAlgebra, DGModule
from .dg_coalgebra import DGCoalgebra, DGComodule
from .labels import HomLabel, sign
from .linalg import add_term, axpy


def cup(xi: GradedMap, zeta: GradedMap, X: DGComodule, M: DGModule) -> GradedMap:
    """(ξ⌣ζ)(x) = sum (-1)^(|ζ||c_i|) ξ(c_i)·ζ(x_i) where ψ(x) = sum c_i⊗x_i."""
    F = xi.F
    C = X.coalgebra
    imgs = {}
    for x in X.carrier.all_labels():
        n = X.carrier.degree(x)
        if not M.carrier.window.known(n + xi.degree + zeta.degree):
            continue
        out: dict = {}
        for (c, x1), a in X.coact(x).items():
            s = sign(zeta.degree, C.degree(c))
            left, right = xi.image(c), zeta.image(x1)
            if left and right:
                axpy(F, out, F.signed(s, a), M.act_vec(left, right))
        imgs[x] = out
    return GradedMap(X.carrier, M.carrier, xi.degree + zeta.degree, imgs)


def opposite_cup(xi: GradedMap, zeta: GradedMap, Y: DGComodule, N: DGModule) -> GradedMap:
    """(ξ⌣̇ζ)(y) = (-1)^(|ζ||ξ|) sum (-1)^(|ξ||y_i|) ζ(y_i)·ξ(c_i), ψ(y) = sum y_i⊗c_i."""
    F = xi.F
    imgs = {}
    s0 = sign(zeta.degree, xi.degree)
    for y in Y.carrier.all_labels():
        n = Y.carrier.degree(y)
        if not N.carrier.window.known(n + xi.degree + zeta.degree):
            continue
        out: dict = {}
        for (y1, c), a in Y.coact(y).items():
            s = s0 * sign(xi.degree, Y.carrier.degree(y1))
            left, right = zeta.image(y1), xi.image(c)
            if left and right:
                axpy(F, out, F.signed(s, a), N.act_vec(left, right))
        imgs[y] = out
    return GradedMap(Y.carrier, N.carrier, xi.degree + zeta.degree, imgs)


def cap(xi: GradedMap, Y: DGComodule, M: DGModule, target=None) -> GradedMap:
    """λ(ξ) on Y⊗M: ξ⌢(y⊗m) = sum (-1)^(|ξ||y_i|) y_i ⊗ ξ(c_i)·m."""
    F = xi.F
    T = target or tensor(Y.carrier, M.carrier)
    imgs = {}
    for (y, m) in T.all_labels():
        out: dict = {}
        for (y1, c), a in Y.coact(y).items():
            v = xi.image(c)
            if not v:
                continue
            s = sign(xi.degree, Y.carrier.degree(y1))
            for m2, b in M.act_vec(v, {m: F.one}).items():
                add_term(F, out, (y1, m2), F.signed(s, F.mul(a, b)))
        imgs[(y, m)] = out
    return GradedMap(T, T, xi.degree, imgs)


def opposite_cap(xi: GradedMap, N: DGModule, X: DGComodule, target=None) -> GradedMap:
    """λ°(ξ) on N⊗X: ξ⌢̇(n⊗x) = sum (-1)^(|ξ||n|) n·ξ(c_i) ⊗ x_i."""
    F = xi.F
    T = target or tensor(N.carrier, X.carrier)
    imgs = {}
    for (n, x) in T.all_labels():
        out: dict = {}
        s = sign(xi.degree, N.carrier.degree(n))
        for (c, x1), a in X.coact(x).items():
            v = xi.image(c)
            if not v:
                continue
            for n2, b in N.act_vec({n: F.one}, v).items():
                add_term(F, out, (n2, x1), F.signed(s, F.mul(a, b)))
        imgs[(n, x)] = out
    return GradedMap(T, T, xi.degree, imgs)


def convolution_unit(C: DGCoalgebra, A: DGAlgebra) -> GradedMap:
    """η^A ε^C."""
    F = A.F
    imgs = {c: {A.unit: e} for c, e in C.counit.items()}
    return GradedMap(C.carrier, A.carrier, 0, imgs)


def convolution_algebra(C: DGCoalgebra, A: DGAlgebra) -> DGAlgebra:
    """Hom(C, A) with the cup product, on the basis of elementary maps.

    Requires an adapted (co)augmentation so that 1 -> 1 is the unit.
    """
    F = A.F
    H = hom_complex(C.carrier, A.carrier)
    labs = list(H.all_labels())
    # e_{c->a} ⌣ e_{c'->a'} sends x to (-1)^(|e'||c|) coeff(ψx, c⊗c') a·a'
    by_pair: dict = {}
    for x in C.carrier.all_labels():
        for (c1, c2), k in C.coprod(x).items():
            by_pair.setdefault((c1, c2), []).append((x, k))
    prods = {}
    for e in labs:
        for f in labs:
            if not H.window.known(H.degree(e) + H.degree(f)):
                continue
            out: dict = {}
            ab = A.mul(e.tgt, f.tgt) if A.product_defined(e.tgt, f.tgt) else {}
            if not ab:
                continue
            s = sign(H.degree(f), C.degree(e.src))
            for x, k in by_pair.get((e.src, f.src), ()):
                for a, ca in ab.items():
                    add_term(F, out, HomLabel(x, a), F.signed(s, F.mul(k, ca)))
            if out:
                prods[(e, f)] = out
    unit = HomLabel(C.unit, A.unit)
    return DGAlgebra(H, prods, unit, False, "Hom(C,A)")


def omega_CA(theta: GradedMap, A: DGAlgebra, C: DGCoalgebra, M: DGModule, target_X=None,
             source=None) -> GradedMap:
    """Hom_C(X, C⊗M) -> Hom_A(A⊗X, M): a⊗x -> (-1)^(|ϑ||a|) sum ε(c) a·m."""
    F = A.F
    X = theta.source
    S = source or tensor(A.carrier, X)
    imgs = {}
    for (a, x) in S.all_labels():
        s = sign(theta.degree, A.degree(a))
        out: dict = {}
        for (c, m), k in theta.image(x).items():
            e = C.counit.get(c)
            if e:
                axpy(F, out, F.signed(s, F.mul(k, e)), M.act(a, m))
        imgs[(a, x)] = out
    return GradedMap(S, M.carrier, theta.degree, imgs)


def omega_AC(theta: GradedMap, A: DGAlgebra, X: DGComodule, target=None) -> GradedMap:
    """Hom_A(A⊗X, M) -> Hom_C(X, C⊗M): x -> sum (-1)^(|θ||c_i|) c_i ⊗ θ(1⊗x_i)."""
    F = A.F
    C = X.coalgebra
    T = target or tensor(C.carrier, theta.target)
    imgs = {}
    for x in X.carrier.all_labels():
        out: dict = {}
        for (c, x1), k in X.coact(x).items():
            s = sign(theta.degree, C.degree(c))
            for m, b in theta.image((A.unit, x1)).items():
                add_term(F, out, (c, m), F.signed(s, F.mul(k, b)))
        imgs[x] = out
    return GradedMap(X.carrier, T, theta.degree, imgs)


def omega_CA_right(theta: GradedMap, A: DGAlgebra, C: DGCoalgebra, N: DGModule,
                   source=None) -> GradedMap:
    """Hom_C°(Y, N⊗C) -> Hom_A°(Y⊗A, N): y⊗a -> sum ε(c) n·a."""
    F = A.F
    Y = theta.source
    S = source or tensor(Y, A.carrier)
    imgs = {}
    for (y, a) in S.all_labels():
        out: dict = {}
        for (n, c), k in theta.image(y).items():
            e = C.counit.get(c)
            if e:
                axpy(F, out, F.mul(k, e), N.act(n, a))
        imgs[(y, a)] = out
    return GradedMap(S, N.carrier, theta.degree, imgs)


def omega_AC_right(theta: GradedMap, A: DGAlgebra, Y: DGComodule, target=None) -> GradedMap:
    """Hom_A°(Y⊗A, N) -> Hom_C°(Y, N⊗C): y -> sum θ(y_i⊗1) ⊗ c_i."""
    F = A.F
    C = Y.coalgebra
    T = target or tensor(theta.target, C.carrier)
    imgs = {}
    for y in Y.carrier.all_labels():
        out: dict = {}
        for (y1, c), k in Y.coact(y).items():
            for n, b in theta.image((y1, A.unit)).items():
                add_term(F, out, (n, c), F.mul(k, b))
        imgs[y] = out
    return GradedMap(Y.carrier, T, theta.degree, imgs)
