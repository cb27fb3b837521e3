"""Twisting maps, twisted tensor products and the acyclicity test.

For a twisting map τ: C -> A (degree -1, normalized, dτ + τd = τ⌣τ):

* N ⋊τ X  on N⊗X: d = d⊗ + λ°(τ), using the opposite cap product;
* Y ⋉τ M  on Y⊗M: d = d⊗ - λ(τ), using the cap product;

and the three-fold products N ⋊τ C ⋉τ M and Y ⋉τ A ⋊τ X.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import (Complex, GradedMap, Homology, WindowError, quasi_iso_check, tensor,
                     tensor_basis, tensor_map, tensor_window, unit_complex, identity_map)
from .dg_algebra import DGAlgebra, DGModule, is_algebra_morphism
from .dg_coalgebra import DGCoalgebra, DGComodule, is_coalgebra_morphism
from .labels import flatten, render, sign
from .linalg import add_term, axpy


class PolarityError(ValueError):
    pass


class InconsistencyError(RuntimeError):
    """Two routes that must agree did not."""


class TwistingMap:
    def __init__(self, C: DGCoalgebra, A: DGAlgebra, images: dict, name: str = ""):
        if C.F != A.F:
            raise ValueError("coalgebra and algebra live over different fields")
        self.C, self.A, self.F = C, A, A.F
        self.name = name
        self.map = GradedMap(C.carrier, A.carrier, -1, images)

    def __call__(self, c) -> dict:
        return self.map.image(c)

    def defect(self):
        """First label where normalization or the twisting equation fails."""
        C, A, F = self.C, self.A, self.F
        if C.unit is not None and self(C.unit):
            return (C.unit, "τ(1) != 0")
        for c in C.carrier.all_labels():
            if A.augmented and A.unit in self(c):
                return (c, "ε τ != 0")
        for c in C.carrier.all_labels():
            n = C.degree(c)
            if not (A.window.known(n - 2) and self.map.defined(n) and self.map.defined(n - 1)):
                continue
            lhs = A.carrier.diff(self(c))
            axpy(F, lhs, F.one, self.map(C.carrier.diff({c: F.one})))
            rhs: dict = {}
            for (c1, c2), a in C.coprod(c).items():
                t1, t2 = self(c1), self(c2)
                if t1 and t2:
                    axpy(F, rhs, F.signed(sign(C.degree(c1)), a), A.mul_vec(t1, t2))
            if lhs != rhs:
                return (c, "dτ + τd != τ⌣τ")
        return None

    def is_twisting(self) -> bool:
        return self.defect() is None

    def check(self):
        bad = self.defect()
        if bad is not None:
            raise ValueError(f"not a twisting map at {render(bad[0])}: {bad[1]}")
        return self


def _check_field(*objs):
    fs = {o.F for o in objs}
    if len(fs) > 1:
        raise ValueError("inputs live over different fields")


def left_twisted(N: DGModule, X: DGComodule, tau: TwistingMap) -> Complex:
    """N ⋊τ X for a right A-module N and a left C-comodule X."""
    if N.side != "right" or X.side != "left":
        raise ValueError("N ⋊ X needs a right module and a left comodule")
    _check_field(N, X, tau)
    F = tau.F
    T = tensor(N.carrier, X.carrier)
    d = {}
    for (n, x) in T.all_labels():
        if not T.window.known(T.degree((n, x)) - 1):
            continue
        img = dict(T.d.get((n, x), {}))
        s = sign(N.carrier.degree(n))
        for (c, x1), a in X.coact(x).items():
            t = tau(c)
            if not t:
                continue
            for n2, b in N.act_vec({n: F.one}, t).items():
                add_term(F, img, (n2, x1), F.signed(s, F.mul(a, b)))
        d[(n, x)] = img
    return Complex(F, T.window, T.basis, d)


def right_twisted(Y: DGComodule, M: DGModule, tau: TwistingMap) -> Complex:
    """Y ⋉τ M for a right C-comodule Y and a left A-module M."""
    if Y.side != "right" or M.side != "left":
        raise ValueError("Y ⋉ M needs a right comodule and a left module")
    _check_field(Y, M, tau)
    F = tau.F
    T = tensor(Y.carrier, M.carrier)
    d = {}
    for (y, m) in T.all_labels():
        if not T.window.known(T.degree((y, m)) - 1):
            continue
        img = dict(T.d.get((y, m), {}))
        for (y1, c), a in Y.coact(y).items():
            t = tau(c)
            if not t:
                continue
            s = -sign(Y.carrier.degree(y1))
            for m2, b in M.act_vec(t, {m: F.one}).items():
                add_term(F, img, (y1, m2), F.signed(s, F.mul(a, b)))
        d[(y, m)] = img
    return Complex(F, T.window, T.basis, d)


def _triple_basis(U, V, W):
    w1 = tensor_window(U.window, V.window)
    window = tensor_window(w1, W.window)
    basis = {}
    for n in window.degrees():
        labs = [(u, v, w) for i in sorted(U.basis) for u in U.basis[i]
                for j in sorted(V.basis) for v in V.basis[j] for w in W.labels(n - i - j)]
        if labs:
            basis[n] = labs
    return window, basis


def _triple_plain_diff(F, U, V, W, u, v, w) -> dict:
    img: dict = {}
    for k, c in U.d.get(u, {}).items():
        add_term(F, img, (k, v, w), c)
    s = sign(U.degree(u))
    for k, c in V.d.get(v, {}).items():
        add_term(F, img, (u, k, w), F.signed(s, c))
    s2 = sign(U.degree(u) + V.degree(v))
    for k, c in W.d.get(w, {}).items():
        add_term(F, img, (u, v, k), F.signed(s2, c))
    return img


def triple_NCM(N: DGModule, M: DGModule, tau: TwistingMap) -> Complex:
    """N ⋊τ C ⋉τ M: d = d⊗ + λ°(τ)⊗M - N⊗λ(τ), labels (n, c, m)."""
    F, C = tau.F, tau.C
    window, basis = _triple_basis(N.carrier, C.carrier, M.carrier)
    d = {}
    for k, labs in basis.items():
        if not window.known(k - 1):
            continue
        for (n, c, m) in labs:
            img = _triple_plain_diff(F, N.carrier, C.carrier, M.carrier, n, c, m)
            sn = sign(N.carrier.degree(n))
            for (c1, c2), a in C.coprod(c).items():
                t1 = tau(c1)
                if t1:
                    for n2, b in N.act_vec({n: F.one}, t1).items():
                        add_term(F, img, (n2, c2, m), F.signed(sn, F.mul(a, b)))
                t2 = tau(c2)
                if t2:
                    s = -sn * sign(C.degree(c1))
                    for m2, b in M.act_vec(t2, {m: F.one}).items():
                        add_term(F, img, (n, c1, m2), F.signed(s, F.mul(a, b)))
            d[(n, c, m)] = img
    return Complex(F, window, basis, d)


def triple_YAX(Y: DGComodule, X: DGComodule, tau: TwistingMap) -> Complex:
    """Y ⋉τ A ⋊τ X: d = d⊗ - λ(τ)⊗X + Y⊗λ°(τ), labels (y, a, x)."""
    F, A = tau.F, tau.A
    window, basis = _triple_basis(Y.carrier, A.carrier, X.carrier)
    d = {}
    for k, labs in basis.items():
        if not window.known(k - 1):
            continue
        for (y, a, x) in labs:
            img = _triple_plain_diff(F, Y.carrier, A.carrier, X.carrier, y, a, x)
            for (y1, c), e in Y.coact(y).items():
                t = tau(c)
                if t:
                    s = -sign(Y.carrier.degree(y1))
                    for a2, b in A.mul_vec(t, {a: F.one}).items():
                        add_term(F, img, (y1, a2, x), F.signed(s, F.mul(e, b)))
            sy = sign(Y.carrier.degree(y)) * sign(A.degree(a))
            for (c, x1), e in X.coact(x).items():
                t = tau(c)
                if t:
                    for a2, b in A.mul_vec({a: F.one}, t).items():
                        add_term(F, img, (y, a2, x1), F.signed(sy, F.mul(e, b)))
            d[(y, a, x)] = img
    return Complex(F, window, basis, d)


def right_twisted_comodule(C: DGCoalgebra, M: DGModule, tau: TwistingMap) -> DGComodule:
    """C ⋉τ M as a left C-comodule via ψ⊗M."""
    K = right_twisted(C.right_comodule(), M, tau)
    F = tau.F
    coact = {}
    for (c, m) in K.all_labels():
        coact[(c, m)] = {(c1, (c2, m)): a for (c1, c2), a in C.coprod(c).items()}
    return DGComodule(C, K, coact, "left")


def left_twisted_comodule(N: DGModule, C: DGCoalgebra, tau: TwistingMap) -> DGComodule:
    """N ⋊τ C as a right C-comodule via N⊗ψ."""
    K = left_twisted(N, C.left_comodule(), tau)
    coact = {}
    for (n, c) in K.all_labels():
        coact[(n, c)] = {((n, c1), c2): a for (c1, c2), a in C.coprod(c).items()}
    return DGComodule(C, K, coact, "right")


def left_twisted_module(A: DGAlgebra, X: DGComodule, tau: TwistingMap) -> DGModule:
    """A ⋊τ X as a left A-module via φ⊗X."""
    K = left_twisted(A.right_module(), X, tau)
    act = {}
    for b in A.carrier.all_labels():
        for (a, x) in K.all_labels():
            if K.window.known(A.degree(b) + K.degree((a, x))) and A.product_defined(b, a):
                v = A.mul(b, a)
                if v:
                    act[(b, (a, x))] = {(k, x): c for k, c in v.items()}
    return DGModule(A, K, act, "left")


def associativity_check(N: DGModule, M: DGModule, tau: TwistingMap) -> dict:
    """Compare the three bracketings of N ⋊ C ⋉ M entry by entry."""
    C = tau.C
    direct = triple_NCM(N, M, tau)
    inner = right_twisted_comodule(C, M, tau)
    a = left_twisted(N, inner, tau)
    outer = left_twisted_comodule(N, C, tau)
    b = right_twisted(outer, M, tau)

    def flat(X):
        return {(flatten(lab), flatten(k)): c for lab, img in X.d.items() for k, c in img.items()}

    def flat_basis(X):
        return {n: {flatten(l) for l in labs} for n, labs in X.basis.items()}

    m0, m1, m2 = flat(direct), flat(a), flat(b)
    same_basis = flat_basis(direct) == flat_basis(a) == flat_basis(b)
    return {"equal": same_basis and m0 == m1 == m2, "entries": len(m0),
            "basis_equal": same_basis, "direct": direct}


# --- comparison maps -----------------------------------------------------------

def epsilon_ACM(tau: TwistingMap, M: DGModule, source: Complex | None = None) -> GradedMap:
    """A ⋊ C ⋉ M -> M, a⊗c⊗m -> ε(c) a·m."""
    A, C, F = tau.A, tau.C, tau.F
    S = source or triple_NCM(A.right_module(), M, tau)
    imgs = {}
    for (a, c, m) in S.all_labels():
        e = C.counit.get(c)
        if e:
            imgs[(a, c, m)] = {k: F.mul(e, v) for k, v in M.act(a, m).items()}
    return GradedMap(S, M.carrier, 0, imgs)


def epsilon_NCA(tau: TwistingMap, N: DGModule, source: Complex | None = None) -> GradedMap:
    """N ⋊ C ⋉ A -> N, n⊗c⊗a -> ε(c) n·a."""
    A, C, F = tau.A, tau.C, tau.F
    S = source or triple_NCM(N, A.left_module(), tau)
    imgs = {}
    for (n, c, a) in S.all_labels():
        e = C.counit.get(c)
        if e:
            imgs[(n, c, a)] = {k: F.mul(e, v) for k, v in N.act(n, a).items()}
    return GradedMap(S, N.carrier, 0, imgs)


def eta_CAX(tau: TwistingMap, X: DGComodule, target: Complex | None = None) -> GradedMap:
    """X -> C ⋉ A ⋊ X, x -> sum c_i⊗1⊗x_i."""
    A, C = tau.A, tau.C
    T = target or triple_YAX(C.right_comodule(), X, tau)
    imgs = {x: {(c, A.unit, x1): a for (c, x1), a in X.coact(x).items()}
            for x in X.carrier.all_labels()}
    return GradedMap(X.carrier, T, 0, imgs)


def eta_YAC(tau: TwistingMap, Y: DGComodule, target: Complex | None = None) -> GradedMap:
    """Y -> Y ⋉ A ⋊ C, y -> sum y_i⊗1⊗c_i."""
    A, C = tau.A, tau.C
    T = target or triple_YAX(Y, C.left_comodule(), tau)
    imgs = {y: {(y1, A.unit, c): a for (y1, c), a in Y.coact(y).items()}
            for y in Y.carrier.all_labels()}
    return GradedMap(Y.carrier, T, 0, imgs)


def epsilon_AC(tau: TwistingMap, source: Complex | None = None) -> GradedMap:
    """A ⋊ C -> k, a⊗c -> ε(a)ε(c)."""
    A, C, F = tau.A, tau.C, tau.F
    S = source or left_twisted(A.right_module(), C.left_comodule(), tau)
    K = unit_complex(F)
    imgs = {}
    for (a, c) in S.all_labels():
        e = C.counit.get(c)
        if a == A.unit and e:
            imgs[(a, c)] = {"1": e}
    return GradedMap(S, K, 0, imgs)


def eta_CA(tau: TwistingMap, target: Complex | None = None) -> GradedMap:
    """k -> C ⋉ A, 1 -> 1⊗1."""
    A, C, F = tau.A, tau.C, tau.F
    T = target or right_twisted(C.right_comodule(), A.left_module(), tau)
    return GradedMap(unit_complex(F), T, 0, {"1": {(C.unit, A.unit): F.one}})


# --- acyclicity ----------------------------------------------------------------

def check_polarity(A: DGAlgebra, C: DGCoalgebra) -> str:
    pa, pc = A.bar_polarity(), C.cobar_polarity()
    if pa == "p" and pc == "p":
        return "p"
    if pa == "n" and pc == "n":
        return "n"
    raise PolarityError(
        "acyclicity test needs the ideal of A in degrees >= 1 and the coideal of C in "
        "degrees >= 2, or the ideal of A in degrees <= -2 and the coideal of C in degrees <= -1"
    )


def _k_profile(H: Homology) -> tuple:
    """(matches k on all certified degrees, first failing degree or None)."""
    bad = [n for n, r in sorted(H.ranks.items(), key=lambda t: abs(t[0]))
           if H.certified[n] and r != (1 if n == 0 else 0)]
    return (not bad, bad[0] if bad else None)


@dataclass
class AcyclicityCertificate:
    polarity: str
    left_ranks: dict
    right_ranks: dict
    certified: list
    acyclic: bool
    witness: tuple | None = None  # (degree, route)
    through: int | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "polarity": self.polarity,
            "acyclic": self.acyclic,
            "certified_degrees": self.certified,
            "through_degree": self.through,
            "witness": None if self.witness is None else {"degree": self.witness[0], "route": self.witness[1]},
            "left_twisted_ranks": {str(n): r for n, r in sorted(self.left_ranks.items())},
            "right_twisted_ranks": {str(n): r for n, r in sorted(self.right_ranks.items())},
        }


def acyclic_check(tau: TwistingMap, cutoff: int | None = None) -> AcyclicityCertificate:
    """Decide on certified degrees whether H(A ⋊τ C) = k = H(C ⋉τ A).

    Both routes are computed; they must return the same verdict.
    ``cutoff`` restricts attention to degrees with |n| <= cutoff - 1.
    """
    A, C = tau.A, tau.C
    pol = check_polarity(A, C)
    bad = tau.defect()
    if bad is not None:
        raise ValueError(f"not a twisting map at {render(bad[0])}: {bad[1]}")
    L = left_twisted(A.right_module(), C.left_comodule(), tau)
    R = right_twisted(C.right_comodule(), A.left_module(), tau)
    HL, HR = Homology(L), Homology(R)

    def keep(n):
        return cutoff is None or abs(n) <= cutoff - 1

    for H in (HL, HR):
        for n in list(H.ranks):
            if not keep(n):
                H.certified[n] = False
    okL, wL = _k_profile(HL)
    okR, wR = _k_profile(HR)
    certL = {n for n, c in HL.certified.items() if c}
    certR = {n for n, c in HR.certified.items() if c}
    common = sorted(certL & certR, key=abs)
    if okL != okR:
        # a failure seen by one route must be inside the other's certified range
        w = wL if wL is not None else wR
        if w in certL and w in certR:
            raise InconsistencyError(f"the two acyclicity routes disagree at degree {w}")
    witness = None
    if wL is not None or wR is not None:
        cands = [(w, r) for w, r in ((wL, "left"), (wR, "right")) if w is not None]
        witness = min(cands, key=lambda t: abs(t[0]))
    step = 1 if pol == "p" else -1
    through = None
    n = 0
    while n in certL and n in certR and (witness is None or abs(n) < abs(witness[0])):
        through = n
        n += step
    return AcyclicityCertificate(
        pol,
        {n: r for n, r in HL.ranks.items() if HL.certified[n]},
        {n: r for n, r in HR.ranks.items() if HR.certified[n]},
        common, witness is None, witness, through,
    )


# --- resolutions and naturality ---------------------------------------------------

def natural_resolution(tau: TwistingMap, M: DGModule):
    """A ⋊τ C ⋉τ M together with ε^{ACM} and its quasi-isomorphism check."""
    S = triple_NCM(tau.A.right_module(), M, tau)
    eps = epsilon_ACM(tau, M, S)
    return S, eps, quasi_iso_check(eps)


def coalgebra_change(gamma: GradedMap, tau2: TwistingMap, C1: DGCoalgebra):
    """From γ: C1 -> C2 and τ2 on C2, the twisting τ2γ and the induced
    maps A ⋊ C1 -> A ⋊ C2 and C1 ⋉ A -> C2 ⋉ A."""
    if not is_coalgebra_morphism(gamma, C1, tau2.C):
        raise ValueError("γ is not a morphism of DG coalgebras")
    A = tau2.A
    tau1 = TwistingMap(C1, A, {c: tau2.map(gamma.image(c)) for c in C1.carrier.all_labels()})
    L1 = left_twisted(A.right_module(), C1.left_comodule(), tau1)
    L2 = left_twisted(A.right_module(), tau2.C.left_comodule(), tau2)
    R1 = right_twisted(C1.right_comodule(), A.left_module(), tau1)
    R2 = right_twisted(tau2.C.right_comodule(), A.left_module(), tau2)
    idA = identity_map(A.carrier)
    return tau1, tensor_map(idA, gamma, L1, L2), tensor_map(gamma, idA, R1, R2)


def algebra_change(alpha: GradedMap, tau1: TwistingMap, A2: DGAlgebra):
    """From α: A1 -> A2 and τ1: C -> A1, the twisting ατ1 and the induced
    maps A1 ⋊ C -> A2 ⋊ C and C ⋉ A1 -> C ⋉ A2."""
    if not is_algebra_morphism(alpha, tau1.A, A2):
        raise ValueError("α is not a morphism of DG algebras")
    C = tau1.C
    tau2 = TwistingMap(C, A2, {c: alpha(tau1(c)) for c in C.carrier.all_labels()})
    L1 = left_twisted(tau1.A.right_module(), C.left_comodule(), tau1)
    L2 = left_twisted(A2.right_module(), C.left_comodule(), tau2)
    R1 = right_twisted(C.right_comodule(), tau1.A.left_module(), tau1)
    R2 = right_twisted(C.right_comodule(), A2.left_module(), tau2)
    idC = identity_map(C.carrier)
    return tau2, tensor_map(alpha, idC, L1, L2), tensor_map(idC, alpha, R1, R2)
