"""Vector space duality between DG coalgebras and DG algebras.

Dual bases reuse the original labels wrapped in ``Dual``; c* sits in
degree -|c|. The structure maps are the transposes of the original ones
composed with ϖ or its inverse, so every formula below is a signed
transpose:

* C*:  c1*·c2* = (-1)^(|c1||c2|) sum_c [ψc]_(c1⊗c2) c*
* A*:  ψ(a*) = sum (-1)^(|a1||a2|) [a1 a2]_a a1*⊗a2*
* τ*:  τ*(a*) = (-1)^|a| sum_c [τc]_a c*
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import (Complex, GradedMap, Homology, dual, dual_map, delta_hom, hom_complex,
                     quasi_iso_check, tensor, unit_complex)
from .convolution import convolution_algebra
from .dg_algebra import DGAlgebra, DGModule, StructureError, is_algebra_morphism
from .dg_coalgebra import DGCoalgebra, DGComodule
from .labels import Dual, HomLabel, render, sign
from .linalg import add_term, axpy, rank_of_columns
from .twisting import (TwistingMap, acyclic_check, epsilon_AC, epsilon_ACM, left_twisted,
                       right_twisted, triple_NCM)


@dataclass
class DualPair:
    original: object
    dual: object

    def pairing(self, n) -> dict:
        """Evaluation matrix between degree n of the original and degree -n of the dual."""
        F = self.original.F
        labs = self.original.carrier.labels(n)
        return {(Dual(x), x): F.one for x in labs}


# --- coalgebras to algebras -------------------------------------------------------

def dual_coalgebra_to_algebra(C: DGCoalgebra) -> DGAlgebra:
    """C* with product (ψ^C)*ϖ and unit ε^C."""
    F = C.F
    if len(C.counit) != 1 or next(iter(C.counit.values())) != F.one:
        raise StructureError("the counit must be a single dual basis vector to serve as a unit")
    unit = next(iter(C.counit))
    D = dual(C.carrier)
    prods: dict = {}
    for c in C.carrier.all_labels():
        for (c1, c2), k in C.coprod(c).items():
            if c1 == unit or c2 == unit:
                continue
            key = (Dual(c1), Dual(c2))
            prods.setdefault(key, {})
            add_term(F, prods[key], Dual(c), F.signed(sign(C.degree(c1), C.degree(c2)), k))
    A = DGAlgebra(D, prods, Dual(unit), C.unit is not None, f"{C.name}*")
    A.source_coalgebra = C
    return A


def dual_comodule_to_module(X: DGComodule, Cs: DGAlgebra) -> DGModule:
    """X* as a DG module over C*, on the same side as the coaction."""
    F, C = X.F, X.coalgebra
    D = dual(X.carrier)
    left = X.side == "left"
    act: dict = {}
    for x in X.carrier.all_labels():
        for pair, k in X.coact(x).items():
            c, y = pair if left else pair[::-1]
            if c == C.unit:
                continue
            s = sign(C.degree(c), X.carrier.degree(y))
            key = (Dual(c), Dual(y)) if left else (Dual(y), Dual(c))
            act.setdefault(key, {})
            add_term(F, act[key], Dual(x), F.signed(s, k))
    return DGModule(Cs, D, act, X.side)


# --- algebras to coalgebras -------------------------------------------------------

def _check_dualizable(A: DGAlgebra):
    w = A.window
    if not (w.zero_below or w.zero_above):
        raise StructureError("ϖ^(AA) is bijective only when A vanishes in degrees far below or far above")


def dual_algebra_to_coalgebra(A: DGAlgebra) -> DGCoalgebra:
    """A* with coproduct ϖ^(-1)(φ^A)* and counit (η^A)*."""
    _check_dualizable(A)
    F = A.F
    D = dual(A.carrier)
    u = A.unit
    cop: dict = {}
    for a in A.carrier.all_labels():
        cop[Dual(a)] = {(Dual(u), Dual(a)): F.one}
        add_term(F, cop[Dual(a)], (Dual(a), Dual(u)), F.one)
    for (a1, a2), v in A.products.items():
        s = sign(A.degree(a1), A.degree(a2))
        for a, k in v.items():
            add_term(F, cop[Dual(a)], (Dual(a1), Dual(a2)), F.signed(s, k))
    cop[Dual(u)] = {(Dual(u), Dual(u)): F.one}
    C = DGCoalgebra(D, cop, {Dual(u): F.one}, Dual(u) if A.augmented else None, f"{A.name}*")
    C.source_algebra = A
    return C


def dual_module_to_comodule(M: DGModule, As: DGCoalgebra) -> DGComodule:
    """M* as a DG comodule over A*, on the same side as the action."""
    F, A = M.F, M.algebra
    D = dual(M.carrier)
    left = M.side == "left"
    co: dict = {}
    for m in M.carrier.all_labels():
        key = (Dual(A.unit), Dual(m)) if left else (Dual(m), Dual(A.unit))
        co.setdefault(Dual(m), {})[key] = F.one
    for a in A.ideal_labels():
        for m in M.carrier.all_labels():
            if not M.carrier.window.known(A.degree(a) + M.carrier.degree(m)):
                continue
            v = M.act(a, m) if left else M.act(m, a)
            s = sign(A.degree(a), M.carrier.degree(m))
            for m2, k in v.items():
                key = (Dual(a), Dual(m)) if left else (Dual(m), Dual(a))
                add_term(F, co.setdefault(Dual(m2), {}), key, F.signed(s, k))
    return DGComodule(As, D, co, M.side)


# --- twisting maps ------------------------------------------------------------------

def dual_twisting(tau: TwistingMap, As: DGCoalgebra | None = None,
                  Cs: DGAlgebra | None = None) -> TwistingMap:
    """τ*: A* -> C*."""
    As = As or dual_algebra_to_coalgebra(tau.A)
    Cs = Cs or dual_coalgebra_to_algebra(tau.C)
    m = dual_map(tau.map, As.carrier, Cs.carrier)
    t = TwistingMap(As, Cs, m.images, f"{tau.name}*")
    t.source = tau
    return t


def sigma(A: DGAlgebra, C: DGCoalgebra, Cs: DGAlgebra | None = None):
    """σ: A⊗C* -> Ξ_CA, a⊗c* -> e(c->a); returns (A⊗C*, Ξ_CA, σ)."""
    Cs = Cs or dual_coalgebra_to_algebra(C)
    T = tensor_algebras(A, Cs)
    Xi = convolution_algebra(C, A)
    imgs = {}
    for (a, cs) in T.carrier.all_labels():
        h = HomLabel(cs.label, a)
        if h in Xi.carrier:
            imgs[(a, cs)] = {h: A.F.one}
    return T, Xi, GradedMap(T.carrier, Xi.carrier, 0, imgs)


def sigma_report(A: DGAlgebra, C: DGCoalgebra) -> dict:
    T, Xi, s = sigma(A, C)
    F = A.F
    bij = {}
    for n in Xi.carrier.degrees():
        if s.defined(n):
            cols = [s.image(x) for x in T.carrier.labels(n)]
            r = rank_of_columns(F, cols, Xi.carrier.order(n))
            bij[n] = r == len(cols) == Xi.carrier.rank(n)
    unit = s.image((A.unit, Dual(C.unit))) == {Xi.unit: F.one} if C.unit is not None else None
    return {
        "unit": unit,
        "algebra_morphism": is_algebra_morphism(s, T, Xi),
        "opposite_algebra_morphism": is_algebra_morphism(s, T.opposite(), Xi.opposite()),
        "bijective": bij,
    }


def tensor_algebras(A1: DGAlgebra, A2: DGAlgebra) -> DGAlgebra:
    """A1⊗A2 with (a⊗b)(a'⊗b') = (-1)^(|b||a'|) aa'⊗bb'."""
    F = A1.F
    T = tensor(A1.carrier, A2.carrier)
    prods = {}
    labs = list(T.all_labels())
    for (a, b) in labs:
        for (a2, b2) in labs:
            if not T.window.known(T.degree((a, b)) + T.degree((a2, b2))):
                continue
            if (a == A1.unit and b == A2.unit) or (a2 == A1.unit and b2 == A2.unit):
                continue
            x = A1.mul(a, a2)
            if not x:
                continue
            y = A2.mul(b, b2)
            if not y:
                continue
            s = sign(A2.degree(b), A1.degree(a2))
            out: dict = {}
            for k1, c1 in x.items():
                for k2, c2 in y.items():
                    add_term(F, out, (k1, k2), F.signed(s, F.mul(c1, c2)))
            prods[((a, b), (a2, b2))] = out
    return DGAlgebra(T, prods, (A1.unit, A2.unit), A1.augmented and A2.augmented,
                     f"{A1.name}⊗{A2.name}")


def delta_report(C: DGCoalgebra, A: DGAlgebra) -> dict:
    """δ^(CA): Ξ_CA -> Ξ_(A*C*) is an injective morphism of DG algebras."""
    As, Cs = dual_algebra_to_coalgebra(A), dual_coalgebra_to_algebra(C)
    X1 = convolution_algebra(C, A)
    X2 = convolution_algebra(As, Cs)
    dlt = delta_hom(C.carrier, A.carrier, X1.carrier, X2.carrier)
    inj = all(rank_of_columns(A.F, [dlt.image(h) for h in X1.carrier.labels(n)],
                              X2.carrier.order(n + 0)) == X1.carrier.rank(n)
              for n in X1.carrier.degrees() if dlt.defined(n))
    return {"algebra_morphism": is_algebra_morphism(dlt, X1, X2), "injective": inj}


def _varpi_pairs(source: Complex, target: Complex, deg_first, deg_second) -> GradedMap:
    F = source.F
    imgs = {}
    for (a, b) in source.all_labels():
        u, v = a.label, b.label
        lab = Dual((u, v))
        if lab in target:
            imgs[(a, b)] = {lab: F.signed(sign(deg_first(u), deg_second(v)), F.one)}
    return GradedMap(source, target, 0, imgs)


def varpi_tau(N: DGModule, X: DGComodule, tau: TwistingMap, tau_star: TwistingMap) -> dict:
    """ϖ_τ: N* ⋉τ* X* -> (N ⋊τ X)*, with chain-map and rank verdicts."""
    As, Cs = tau_star.C, tau_star.A
    Ns = dual_module_to_comodule(N, As)
    Xs = dual_comodule_to_module(X, Cs)
    src = right_twisted(Ns, Xs, tau_star)
    tgt = dual(left_twisted(N, X, tau))
    w = _varpi_pairs(src, tgt, N.carrier.degree, X.carrier.degree)
    return _iso_report(w)


def varpi_tau_right(Y: DGComodule, M: DGModule, tau: TwistingMap, tau_star: TwistingMap) -> dict:
    """ϖ_τ: Y* ⋊τ* M* -> (Y ⋉τ M)*."""
    As, Cs = tau_star.C, tau_star.A
    Ys = dual_comodule_to_module(Y, Cs)
    Ms = dual_module_to_comodule(M, As)
    src = left_twisted(Ys, Ms, tau_star)
    tgt = dual(right_twisted(Y, M, tau))
    w = _varpi_pairs(src, tgt, Y.carrier.degree, M.carrier.degree)
    return _iso_report(w)


def _iso_report(f: GradedMap) -> dict:
    F = f.F
    inj, bij = True, True
    for n in f.source.degrees():
        if not f.defined(n):
            continue
        cols = [f.image(x) for x in f.source.labels(n)]
        r = rank_of_columns(F, cols, f.target.order(n))
        inj &= r == len(cols)
        bij &= r == len(cols) == f.target.rank(n)
    return {"map": f, "chain_map": f.is_chain_map(), "injective": inj, "bijective": bij}


# --- Moore duality --------------------------------------------------------------------

def _quasi_iso_verdict(f: GradedMap, cutoff: int | None) -> dict:
    q = quasi_iso_check(f)
    per = {n: v for n, v in q.per_degree.items() if cutoff is None or abs(n) <= cutoff}
    return {"holds": all(v for v in per.values() if v is not None),
            "certified": sorted(n for n, v in per.items() if v is not None),
            "per_degree": per}


def _transport_double_dual(C: DGCoalgebra, Cs: DGAlgebra) -> DGComodule:
    """The left C**-comodule (C*)* pulled back to a left C-comodule along
    ev: C -> C**, u -> (-1)^|u| u**."""
    F = C.F
    Css = dual_algebra_to_coalgebra(Cs)
    L = dual_module_to_comodule(Cs.left_module(), Css)
    co = {}
    for x in L.carrier.all_labels():
        out: dict = {}
        for (c2, y), k in L.coact(x).items():
            c = c2.label.label
            add_term(F, out, (c, y), F.signed(sign(C.degree(c)), k))
        co[x] = out
    return DGComodule(C, L.carrier, co, "left")


def moore_value_checks(tau: TwistingMap, cutoff: int | None = None) -> dict:
    """The four values A⋊τk* ≃ A, A⋊τC** ≃ k, C*⋊τ*k* ≃ C*, C*⋊τ*A* ≃ k."""
    A, C, F = tau.A, tau.C, tau.F
    ts = dual_twisting(tau)
    As, Cs = ts.C, ts.A
    out = {}

    # A ⋊τ k*: k is the trivial C*-module, its dual the trivial C-comodule
    L1 = left_twisted(A.right_module(), C.trivial_comodule("left"), tau)
    f1 = GradedMap(L1, A.carrier, 0, {(a, x): {a: F.one} for (a, x) in L1.all_labels()})
    out["A⋊k*≃A"] = _quasi_iso_verdict(f1, cutoff)

    # A ⋊τ C**, with C** transported to a left C-comodule
    X = _transport_double_dual(C, Cs)
    L2 = left_twisted(A.right_module(), X, tau)
    K = unit_complex(F)
    # ε^A⊗(ε^C ev^(-1)); only 1⊗1** survives since ε^C lives in degree 0
    top = (A.unit, Dual(Dual(C.unit)))
    imgs = {top: {"1": F.one}} if top in L2 else {}
    out["A⋊C**≃k"] = _quasi_iso_verdict(GradedMap(L2, K, 0, imgs), cutoff)

    # C* ⋊τ* k*
    L3 = left_twisted(Cs.right_module(), As.trivial_comodule("left"), ts)
    f3 = GradedMap(L3, Cs.carrier, 0, {(a, x): {a: F.one} for (a, x) in L3.all_labels()})
    out["C*⋊k*≃C*"] = _quasi_iso_verdict(f3, cutoff)

    # C* ⋊τ* A*
    out["C*⋊A*≃k"] = _quasi_iso_verdict(epsilon_AC(ts), cutoff)
    out["holds"] = all(v["holds"] for k, v in out.items() if isinstance(v, dict))
    return out


def moore_unit_check(tau: TwistingMap, M: DGModule, cutoff: int | None = None) -> dict:
    """The round trip M -> C*⋊τ*M* -> A⋊τ(C*⋊τ*M*)*.

    P = C*⋊τ*M* is dualized; P* is identified with C⋉τM through
    ϖ∘(ev⊗ev), which must be an isomorphism of complexes, and then
    ε^(ACM): A⋊τC⋉τM -> M must be a quasi-isomorphism.
    """
    A, C, F = tau.A, tau.C, tau.F
    ts = dual_twisting(tau)
    As, Cs = ts.C, ts.A
    Ms = dual_module_to_comodule(M, As)
    P = left_twisted(Cs.right_module(), Ms, ts)
    Pd = dual(P)
    R = right_twisted(C.right_comodule(), M, tau)
    imgs = {}
    for (c, m) in R.all_labels():
        lab = Dual((Dual(c), Dual(m)))
        if lab in Pd:
            # ev⊗ev then ϖ^(C*,M*)
            s = sign(C.degree(c)) * sign(M.carrier.degree(m)) * sign(C.degree(c), M.carrier.degree(m))
            imgs[(c, m)] = {lab: F.signed(s, F.one)}
    phi = GradedMap(R, Pd, 0, imgs)
    iso = _iso_report(phi)
    S = triple_NCM(A.right_module(), M, tau)
    eps = epsilon_ACM(tau, M, S)
    res = _quasi_iso_verdict(eps, cutoff)
    res["transport_chain_map"] = iso["chain_map"]
    res["transport_bijective"] = iso["bijective"]
    res["holds"] = res["holds"] and iso["chain_map"] and iso["injective"]
    return res


# --- Ext --------------------------------------------------------------------------------

def ext_ranks(tau: TwistingMap, M: DGModule | None = None, cutoff: int | None = None,
              check_acyclic: bool = True) -> dict:
    """Ranks of Ext_A(M, k) as H((C⋉τM)*), on certified degrees.

    For M = k (the default) the ranks are cross-checked against H(C*).
    """
    A, C = tau.A, tau.C
    if check_acyclic:
        cert = acyclic_check(tau, cutoff)
        if not cert.acyclic:
            raise ValueError(f"twisting map is not acyclic (witness degree {cert.witness[0]})")
    trivial = M is None
    M = M or A.trivial_module("left")
    R = right_twisted(C.right_comodule(), M, tau)
    H = Homology(dual(R))
    keep = (lambda n: True) if cutoff is None else (lambda n: abs(n) <= cutoff - 1)
    ranks = {n: H.ranks[n] for n in sorted(H.ranks) if H.certified[n] and keep(n)}
    out = {"ranks": ranks}
    if trivial:
        H2 = Homology(dual(C.carrier))
        other = {n: H2.ranks[n] for n in sorted(H2.ranks) if H2.certified[n] and keep(n)}
        common = set(ranks) & set(other)
        out["coalgebra_dual_ranks"] = other
        out["agree"] = all(ranks[n] == other[n] for n in common)
    return out
