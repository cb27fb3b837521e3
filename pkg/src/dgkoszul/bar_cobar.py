"""Bar and cobar constructions, their universal twisting maps, the maps
they classify, and the bar-cobar unit and counit.

B(A) is the tensor coalgebra on ΣĀ; a word [a1|...|ap] has degree
sum(|ai| + 1). Ω(C) is the tensor algebra on Σ^{-1}C̄; a word <c1|...|cp>
has degree sum(|ci| - 1).
"""

from __future__ import annotations

import itertools

from .chains import Complex, GradedMap, quasi_iso_check
from .dg_algebra import DGAlgebra, is_algebra_morphism, polarity_window, words_by_degree
from .dg_coalgebra import DGCoalgebra, coalgebra_map_to_tensor, is_coalgebra_morphism
from .labels import Word, render, sign
from .linalg import add_term, rank_of_columns
from .twisting import PolarityError, TwistingMap


def _bar_cutoff(A: DGAlgebra, pol: str, cutoff):
    w = A.window
    # a letter of unknown degree can only sit in words of degree > hi
    # (positive) or <= lo (negative), because the shift is +1 either way
    if pol == "p":
        top = None if w.zero_above else w.hi + 1
    else:
        top = None if w.zero_below else -w.lo - 1
    if cutoff is None:
        if top is None:
            raise ValueError("a cutoff is needed for a finite algebra")
        return top
    return cutoff if top is None else min(cutoff, top)


def bar(A: DGAlgebra, cutoff: int | None = None) -> DGCoalgebra:
    """B(A) up to |degree| <= cutoff (clamped to what A's window supports)."""
    pol = A.bar_polarity()
    if pol is None:
        raise PolarityError("bar construction needs the augmentation ideal in degrees >= 1 or <= -2")
    cutoff = _bar_cutoff(A, pol, cutoff)
    F = A.F
    window = polarity_window(pol, cutoff)
    letters = [(a, A.degree(a) + 1) for a in A.ideal_labels()]
    words = words_by_degree(letters, window.lo, window.hi)
    basis = {n: [Word(w, "bar") for w in ws] for n, ws in words.items()}
    d = {}
    for n, ws in words.items():
        if not window.known(n - 1):
            continue
        for w in ws:
            img: dict = {}
            pre = 0
            for i, a in enumerate(w):
                s = sign(pre)
                for k, c in A.carrier.d.get(a, {}).items():
                    add_term(F, img, Word(w[:i] + (k,) + w[i + 1:], "bar"), F.signed(-s, c))
                if i + 1 < len(w):
                    s2 = s * sign(A.degree(a))
                    for k, c in A.mul(a, w[i + 1]).items():
                        add_term(F, img, Word(w[:i] + (k,) + w[i + 2:], "bar"), F.signed(s2, c))
                pre += A.degree(a) + 1
            d[Word(w, "bar")] = img
    carrier = Complex(F, window, basis, d)
    cop = {}
    for w in carrier.all_labels():
        L = w.letters
        cop[w] = {(Word(L[:j], "bar"), Word(L[j:], "bar")): F.one for j in range(len(L) + 1)}
    empty = Word((), "bar")
    B = DGCoalgebra(carrier, cop, {empty: F.one}, empty, f"B({A.name})")
    B.source_algebra = A
    carrier.check()
    return B


def tau_A(A: DGAlgebra, B: DGCoalgebra | None = None, cutoff: int | None = None) -> TwistingMap:
    """Universal twisting map B(A) -> A, [a] -> -a.

    The sign makes τ_A twisting against the bar differential with
    corestriction [a1|a2] -> (-1)^|a1| [a1 a2].
    """
    B = B or bar(A, cutoff)
    F = A.F
    imgs = {Word((a,), "bar"): {a: F.minus_one} for a in A.ideal_labels() if Word((a,), "bar") in B.carrier}
    return TwistingMap(B, A, imgs, "τ_A")


def _cobar_cutoff(C: DGCoalgebra, pol: str, cutoff):
    w = C.window
    if pol == "p":
        top = None if w.zero_above else w.hi - 1
    else:
        top = None if w.zero_below else -w.lo + 1
    if cutoff is None:
        if top is None:
            raise ValueError("a cutoff is needed for a finite coalgebra")
        return top
    return cutoff if top is None else min(cutoff, top)


def cobar(C: DGCoalgebra, cutoff: int | None = None) -> DGAlgebra:
    """Ω(C) up to |degree| <= cutoff (clamped to what C's window supports)."""
    pol = C.cobar_polarity()
    if pol is None:
        raise PolarityError("cobar construction needs the coideal in degrees >= 2 or <= -1")
    if C.unit is None:
        raise ValueError("cobar construction needs a coaugmented coalgebra")
    cutoff = _cobar_cutoff(C, pol, cutoff)
    F = C.F
    window = polarity_window(pol, cutoff)
    letters = [(c, C.degree(c) - 1) for c in C.ideal_labels()]
    words = words_by_degree(letters, window.lo, window.hi)
    basis = {n: [Word(w, "cobar") for w in ws] for n, ws in words.items()}
    d = {}
    for n, ws in words.items():
        if not window.known(n - 1):
            continue
        for w in ws:
            img: dict = {}
            pre = 0
            for i, c in enumerate(w):
                s = sign(pre)
                for (x, y), k in C.reduced(c).items():
                    add_term(F, img, Word(w[:i] + (x, y) + w[i + 1:], "cobar"),
                             F.signed(s * sign(C.degree(x)), k))
                for x, k in C.carrier.d.get(c, {}).items():
                    add_term(F, img, Word(w[:i] + (x,) + w[i + 1:], "cobar"), F.signed(-s, k))
                pre += C.degree(c) - 1
            d[Word(w, "cobar")] = img
    carrier = Complex(F, window, basis, d)
    prods = {}
    for a in carrier.all_labels():
        for b in carrier.all_labels():
            if a.letters and b.letters and window.known(carrier.degree(a) + carrier.degree(b)):
                nw = Word(a.letters + b.letters, "cobar")
                if nw in carrier:
                    prods[(a, b)] = {nw: F.one}
    O = DGAlgebra(carrier, prods, Word((), "cobar"), True, f"Ω({C.name})")
    O.source_coalgebra = C
    carrier.check()
    return O


def tau_C(C: DGCoalgebra, O: DGAlgebra | None = None, cutoff: int | None = None) -> TwistingMap:
    """Universal twisting map C -> Ω(C), c -> <c - ηε(c)>."""
    O = O or cobar(C, cutoff)
    F = C.F
    imgs = {c: {Word((c,), "cobar"): F.one} for c in C.ideal_labels() if Word((c,), "cobar") in O.carrier}
    return TwistingMap(C, O, imgs, "τ_C")


def gamma_tau(tau: TwistingMap, B: DGCoalgebra | None = None):
    """The coalgebra map γ: C -> B(A) with τ_A γ = τ; returns (B, γ)."""
    C, A = tau.C, tau.A
    if B is None:
        w = C.window
        cut = w.hi if tau.A.bar_polarity() == "p" else -w.lo
        B = bar(A, cut)
    # corestriction -τ, so p-letter words carry (-1)^p
    g = coalgebra_map_to_tensor(C, B, {c: {k: A.F.neg(v) for k, v in tau(c).items()}
                                       for c in C.ideal_labels()})
    return B, g


def alpha_tau(tau: TwistingMap, O: DGAlgebra | None = None):
    """The algebra map α: Ω(C) -> A with α τ_C = τ; returns (Ω, α)."""
    C, A, F = tau.C, tau.A, tau.F
    if O is None:
        pol = C.cobar_polarity()
        w = A.window
        cut = None
        if pol == "p" and not w.zero_above:
            cut = w.hi
        if pol == "n" and not w.zero_below:
            cut = -w.lo
        O = cobar(C, cut)
    imgs = {}
    for word in O.carrier.all_labels():
        if not A.window.known(O.degree(word)):
            continue
        v = {A.unit: F.one}
        for c in word.letters:
            v = A.mul_vec(v, tau(c))
            if not v:
                break
        imgs[word] = v
    return O, GradedMap(O.carrier, A.carrier, 0, imgs)


def verify_gamma(tau: TwistingMap, B: DGCoalgebra, g: GradedMap) -> dict:
    comp = tau_A(tau.A, B).map.compose(g)
    return {
        "coalgebra_morphism": is_coalgebra_morphism(g, tau.C, B),
        "chain_map": g.is_chain_map(),
        "classifies_tau": all(comp.image(c) == tau(c) for c in tau.C.carrier.all_labels()
                              if comp.defined(tau.C.degree(c))),
    }


def verify_alpha(tau: TwistingMap, O: DGAlgebra, a: GradedMap) -> dict:
    comp = a.compose(tau_C(tau.C, O).map)
    return {
        "algebra_morphism": is_algebra_morphism(a, O, tau.A),
        "chain_map": a.is_chain_map(),
        "classifies_tau": all(comp.image(c) == tau(c) for c in tau.C.carrier.all_labels()
                              if comp.defined(tau.C.degree(c))
                              and O.window.known(tau.C.degree(c) - 1)),
    }


def bar_cobar_counit(A: DGAlgebra, cutoff: int):
    """α^A: Ω(B(A)) -> A with its quasi-isomorphism check.

    Everything is built two degrees further so that the verdict is
    certified up to |degree| <= cutoff.
    """
    B = bar(A, cutoff + 3)
    t = tau_A(A, B)
    O, a = alpha_tau(t, cobar(B, cutoff + 2))
    surj = {}
    for n in O.carrier.degrees():
        if a.defined(n):
            r = rank_of_columns(A.F, [a.image(w) for w in O.carrier.labels(n)], A.carrier.order(n))
            surj[n] = r == A.carrier.rank(n)
    return O, a, quasi_iso_check(a), surj


def bar_cobar_unit(C: DGCoalgebra, cutoff: int):
    """γ^C: C -> B(Ω(C)) with its quasi-isomorphism check."""
    O = cobar(C, cutoff + 2)
    t = tau_C(C, O)
    B, g = gamma_tau(t, bar(O, cutoff + 2))
    inj = {}
    for n in C.carrier.degrees():
        if g.defined(n):
            cols = [g.image(c) for c in C.carrier.labels(n)]
            inj[n] = rank_of_columns(C.F, cols, B.carrier.order(n)) == len(cols)
    return B, g, quasi_iso_check(g), inj


def bar_functor(alpha: GradedMap, A1: DGAlgebra, B1: DGCoalgebra, B2: DGCoalgebra) -> GradedMap:
    """B(α): [a1|...|ap] -> [α(a1)|...|α(ap)]."""
    F = alpha.F
    imgs = {}
    for w in B1.carrier.all_labels():
        if not B2.window.known(B1.degree(w)):
            continue
        parts = [list(alpha.image(a).items()) for a in w.letters]
        out: dict = {}
        for combo in itertools.product(*parts):
            coeff = F.one
            for _, c in combo:
                coeff = F.mul(coeff, c)
            add_term(F, out, Word(tuple(k for k, _ in combo), "bar"), coeff)
        imgs[w] = out
    return GradedMap(B1.carrier, B2.carrier, 0, imgs)


def cobar_functor(gamma: GradedMap, O1: DGAlgebra, O2: DGAlgebra) -> GradedMap:
    """Ω(γ): <c1|...|cp> -> <γ(c1)|...|γ(cp)>."""
    F = gamma.F
    imgs = {}
    for w in O1.carrier.all_labels():
        if not O2.window.known(O1.degree(w)):
            continue
        parts = [list(gamma.image(c).items()) for c in w.letters]
        out: dict = {}
        for combo in itertools.product(*parts):
            coeff = F.one
            for _, c in combo:
                coeff = F.mul(coeff, c)
            add_term(F, out, Word(tuple(k for k, _ in combo), "cobar"), coeff)
        imgs[w] = out
    return GradedMap(O1.carrier, O2.carrier, 0, imgs)


def _coideal_signs(C: DGCoalgebra) -> set:
    """{'p'} if C̄ sits in degrees >= 2, {'n'} if in degrees <= -1; both when C̄ = 0."""
    degs = {C.degree(c) for c in C.carrier.all_labels() if c != C.unit}
    out = set()
    if C.window.zero_below and all(n >= 2 for n in degs):
        out.add("p")
    if C.window.zero_above and all(n <= -1 for n in degs):
        out.add("n")
    return out


def cobar_functor_quasi_iso(gamma: GradedMap, C1: DGCoalgebra, C2: DGCoalgebra,
                            O1: DGAlgebra, O2: DGAlgebra):
    """Ω(γ) and its quasi-isomorphism check.

    Ω only reflects quasi-isomorphisms when both coideals sit in degrees >= 2,
    or both in degrees <= -1; outside that the map is still built but no
    verdict is given.
    """
    f = cobar_functor(gamma, O1, O2)
    if not _coideal_signs(C1) & _coideal_signs(C2):
        raise PolarityError("Ω(γ) is only certified when both coideals sit in degrees >= 2 or both in <= -1")
    return f, quasi_iso_check(f)
