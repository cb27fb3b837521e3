"""Two-homogeneity, quadratic duals, the Priddy coalgebra and Koszulness.

V is a complement of Ā² in Ā spanned by basis labels, W = ΣV. In the
bar construction ςv is the one-letter word [v], and τ^A([v]) = -v, so
the generator of A^! dual to v is taken as ξ = -[v]*; with that choice
σ(d) = τ^p holds on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import re

from .bar_cobar import bar, tau_A
from .chains import Complex, GradedMap, Homology, dual
from .dg_algebra import DGAlgebra, Presentation, from_presentation, polarity_window, words_by_degree
from .dg_coalgebra import DGCoalgebra
from .duality import dual_coalgebra_to_algebra
from .labels import Dual, Tag, Word, render, sign
from .linalg import Echelon, add_term, axpy, kernel, rref
from .twisting import AcyclicityCertificate, TwistingMap, acyclic_check, left_twisted

CONVENTION = "A^! = T(W*)/(Im φ*), with (W⊗W)* identified with W*⊗W* through ϖ"


def _products(A: DGAlgebra, left: list, right: list, n: int) -> list:
    """All products a·b with a in left, b in right (vectors), landing in degree n."""
    out = []
    for a in left:
        for b in right:
            if A.carrier.vector_degree(a) + A.carrier.vector_degree(b) == n:
                v = A.mul_vec(a, b)
                if v:
                    out.append(v)
    return out


def _graded_algebra_check(A: DGAlgebra):
    if not A.is_graded():
        raise ValueError("Koszul theory here needs a graded algebra (zero differential)")
    if A.bar_polarity() is None:
        raise ValueError("the augmentation ideal must sit in degrees >= 1 or <= -2")


def _known_degrees(A: DGAlgebra):
    return [n for n in A.carrier.degrees() if n != 0 and A.window.known(n)]


@dataclass
class TwoHomogeneity:
    V: list
    square_ranks: dict  # n -> (rank V², rank Ā³, rank Ā²)
    holds: bool
    failure: int | None = None

    def as_dict(self):
        return {
            "two_homogeneous": self.holds,
            "complement": [render(v) for v in self.V],
            "failure_degree": self.failure,
            "ranks": {str(n): {"V2": a, "A3": b, "A2": c} for n, (a, b, c) in sorted(self.square_ranks.items())},
        }


def choose_complement(A: DGAlgebra, prefer: list | None = None) -> list:
    """Basis labels spanning a complement of Ā² in Ā, first pivots in ``prefer`` order."""
    V = []
    for n in sorted(_known_degrees(A), key=abs):
        labs = list(A.ideal_labels(n))
        if prefer is not None:
            rank = {x: i for i, x in enumerate(prefer)}
            labs.sort(key=lambda x: rank.get(x, len(rank)))
        sq = _square_span(A, n)
        order = {x: i for i, x in enumerate(A.carrier.labels(n))}
        e = Echelon(A.F, order)
        for v in sq:
            e.add(v)
        for x in labs:
            if e.add({x: A.F.one}) is None:
                V.append(x)
    return V


def _square_span(A: DGAlgebra, n: int) -> list:
    ideal = [{x: A.F.one} for x in A.ideal_labels()]
    return _products(A, ideal, ideal, n)


def _rank(A: DGAlgebra, vecs: list, n: int) -> int:
    order = {x: i for i, x in enumerate(A.carrier.labels(n))}
    e = Echelon(A.F, order)
    for v in vecs:
        e.add(v)
    return len(e)


def two_homogeneous_check(A: DGAlgebra, prefer: list | None = None) -> TwoHomogeneity:
    """Ā² = V² ⊕ Ā³, degree by degree over the known window."""
    _graded_algebra_check(A)
    V = choose_complement(A, prefer)
    Vv = [{v: A.F.one} for v in V]
    ideal = [{x: A.F.one} for x in A.ideal_labels()]
    ranks = {}
    failure = None
    for n in sorted(_known_degrees(A), key=abs):
        sq = _products(A, ideal, ideal, n)
        cube_left = []
        for m in A.carrier.degrees():
            if m != 0 and A.window.known(m):
                cube_left += _products(A, ideal, ideal, m)
        cube = _products(A, ideal, cube_left, n)
        r2, r3, rv = _rank(A, sq, n), _rank(A, cube, n), _rank(A, _products(A, Vv, Vv, n), n)
        ranks[n] = (rv, r3, r2)
        if rv + r3 != r2 and failure is None:
            failure = n
    return TwoHomogeneity(V, ranks, failure is None, failure)


# --- quadratic dual ----------------------------------------------------------------

def _xi_name(v) -> str:
    return "xi_" + re.sub(r"[^A-Za-z0-9_]", "_", render(v))


@dataclass
class QuadraticData:
    A: DGAlgebra
    V: list
    W: list  # one-letter bar words [v]
    phi: dict  # (v_i, v_j) -> vector over a basis of V² (coordinates of (-1)^|v_i| v_i v_j)
    presentation: Presentation
    shriek: DGAlgebra
    shriek_ranks: dict
    names: dict  # v -> generator name
    convention: str = CONVENTION

    def as_dict(self):
        gens = [[self.names[v], self.shriek.degree(Word((self.names[v],), "alg"))] for v in self.V]
        rels = []
        for r in self.presentation.relations:
            rels.append(" + ".join(f"{self.A.F.render(c)}*{'*'.join(w)}" for w, c in sorted(r.items())))
        return {
            "convention": self.convention,
            "generators": gens,
            "relations": rels,
            "ranks": {str(n): r for n, r in sorted(self.shriek_ranks.items())},
        }


def quadratic_dual(A: DGAlgebra, cutoff: int = 10, prefer: list | None = None) -> QuadraticData:
    """A^! = T(W*)/(Im φ*) with φ(ςv⊗ςv') = (-1)^|v| ς²(vv')."""
    th = two_homogeneous_check(A, prefer)
    if not th.holds:
        raise ValueError(f"A is not two-homogeneous (degree {th.failure}); A^! is undefined")
    F = A.F
    V = th.V
    names = {v: _xi_name(v) for v in V}
    deg = {v: A.degree(v) for v in V}
    # coordinates of v_i v_j in a basis of V², per degree
    by_deg: dict = {}
    for vi in V:
        for vj in V:
            n = deg[vi] + deg[vj]
            if A.window.known(n):
                by_deg.setdefault(n, []).append((vi, vj))
    phi = {}
    relations = []
    for n, pairs in sorted(by_deg.items(), key=lambda t: abs(t[0])):
        order = {x: i for i, x in enumerate(A.carrier.labels(n))}
        e = Echelon(F, order)
        basis_tags = []
        prods = {}
        for (vi, vj) in pairs:
            p = A.mul(vi, vj)
            prods[(vi, vj)] = p
            if p and e.add(p, (vi, vj)) is None:
                basis_tags.append((vi, vj))
        # each basis product q_k gives the relation sum_ij ± coord_k(v_i v_j) ξ_i ξ_j
        coords = {}
        for (vi, vj), p in prods.items():
            used = e.solve(p) if p else {}
            coords[(vi, vj)] = used
            s = sign(deg[vi])
            phi[(vi, vj)] = {t: F.signed(s, c) for t, c in used.items()}
        for k in basis_tags:
            rel = {}
            for (vi, vj), used in coords.items():
                c = used.get(k)
                if c:
                    s = sign(deg[vi] + 1, deg[vj] + 1) * sign(deg[vi])
                    add_term(F, rel, (names[vi], names[vj]), F.signed(s, c))
            if rel:
                relations.append(rel)
    gens = [(names[v], -(deg[v] + 1)) for v in V]
    pol = "n" if A.bar_polarity() == "p" else "p"
    P = Presentation(gens, relations, {}, pol, cutoff, str(F.spec), f"{A.name}^!")
    S = from_presentation(P, cutoff, pol, F)
    ranks = {n: S.carrier.rank(n) for n in S.carrier.degrees() if S.window.known(n)}
    W = [Word((v,), "bar") for v in V]
    return QuadraticData(A, V, W, phi, P, S, ranks, names)


# --- Priddy coalgebra ------------------------------------------------------------------

@dataclass
class PriddyData:
    A: DGAlgebra
    bar: DGCoalgebra
    coalgebra: DGCoalgebra  # A^<
    inclusion: GradedMap  # A^< -> B(A)
    tau: TwistingMap  # τ^p
    V: list


def priddy(A: DGAlgebra, cutoff: int = 10, B: DGCoalgebra | None = None,
           V: list | None = None) -> PriddyData:
    """A^< = Ker ∂ on the V-words of B(A), with zero differential, and τ^p = τ^A restricted."""
    _graded_algebra_check(A)
    F = A.F
    if V is None:
        th = two_homogeneous_check(A)
        if not th.holds:
            raise ValueError(f"A is not two-homogeneous (degree {th.failure})")
        V = th.V
    B = B or bar(A, cutoff)
    pol = A.bar_polarity()
    window = B.window
    letters = [(v, A.degree(v) + 1) for v in V]
    words = words_by_degree(letters, window.lo, window.hi)
    basis: dict = {}
    rows: dict = {}
    for n, ws in words.items():
        labs = [Word(w, "bar") for w in ws]
        if n == 0:
            kern = [{labs[0]: F.one}]
        else:
            if not window.known(n - 1):
                continue
            kern = kernel(F, [B.carrier.d.get(w, {}) for w in labs], labs, B.carrier.order(n - 1))
        order = {w: i for i, w in enumerate(labs)}
        for piv, row in rref(F, kern, order):
            lab = Tag("<", piv)
            basis.setdefault(n, []).append(lab)
            rows[lab] = row
    carrier = Complex(F, polarity_window(pol, window.hi if pol == "p" else -window.lo), basis, {})
    pivot_of = {lab.label: lab for lab in rows}
    cop = {}
    for lab, row in rows.items():
        full: dict = {}
        for w, c in row.items():
            L = w.letters
            for j in range(len(L) + 1):
                add_term(F, full, (Word(L[:j], "bar"), Word(L[j:], "bar")), c)
        out = {}
        for (x, y), c in full.items():
            if x in pivot_of and y in pivot_of:
                out[(pivot_of[x], pivot_of[y])] = c
        # the coefficients read at pivots must reassemble the full coproduct
        back: dict = {}
        for (a, b), c in out.items():
            for x, cx in rows[a].items():
                for y, cy in rows[b].items():
                    add_term(F, back, (x, y), F.mul(c, F.mul(cx, cy)))
        if back != full:
            raise ArithmeticError(f"A^< is not a subcoalgebra at {render(lab)}")
        cop[lab] = out
    unit = Tag("<", Word((), "bar"))
    C = DGCoalgebra(carrier, cop, {unit: F.one}, unit, f"{A.name}^<")
    inc = GradedMap(carrier, B.carrier, 0, {lab: dict(row) for lab, row in rows.items()})
    tA = tau_A(A, B)
    t = TwistingMap(C, A, {lab: tA.map(row) for lab, row in rows.items()}, "τ^p")
    return PriddyData(A, B, C, inc, t, V)


# --- Koszulness --------------------------------------------------------------------------

@dataclass
class KoszulCertificate:
    cutoff: int
    two_homogeneous: bool
    shriek_ranks: dict
    priddy_ranks: dict
    bar_homology_ranks: dict
    ext_ranks: dict
    acyclicity: AcyclicityCertificate | None
    rank_agreement: bool
    koszul: bool
    first_failure: int | None
    details: dict = field(default_factory=dict)

    def as_dict(self):
        s = lambda d: {str(n): r for n, r in sorted(d.items())}
        return {
            "cutoff": self.cutoff,
            "two_homogeneous": self.two_homogeneous,
            "shriek_ranks": s(self.shriek_ranks),
            "priddy_ranks": s(self.priddy_ranks),
            "bar_homology_ranks": s(self.bar_homology_ranks),
            "ext_ranks": s(self.ext_ranks),
            "acyclicity": None if self.acyclicity is None else self.acyclicity.as_dict(),
            "rank_agreement": self.rank_agreement,
            "koszul": self.koszul,
            "first_failure_degree": self.first_failure,
            "convention": CONVENTION,
        }


def koszul_check(A: DGAlgebra, cutoff: int = 10) -> KoszulCertificate:
    """Koszul up to |degree| <= cutoff - 1: τ^p acyclic and rank A^<_n = rank H_n(B A)."""
    th = two_homogeneous_check(A)
    if not th.holds:
        return KoszulCertificate(cutoff, False, {}, {}, {}, {}, None, False, False, th.failure)
    qd = quadratic_dual(A, cutoff)
    B = bar(A, cutoff)
    pd = priddy(A, cutoff, B, th.V)
    keep = lambda n: abs(n) <= cutoff - 1
    HB = Homology(B.carrier)
    hb = {n: r for n, r in HB.ranks.items() if HB.certified[n] and keep(n)}
    pr = {n: pd.coalgebra.carrier.rank(n) for n in hb}
    HD = Homology(dual(B.carrier))
    ext = {n: r for n, r in HD.ranks.items() if HD.certified[n] and keep(n)}
    mismatch = sorted((n for n in hb if hb[n] != pr[n]), key=abs)
    cert = acyclic_check(pd.tau, cutoff)
    agree = not mismatch
    first = mismatch[0] if mismatch else None
    if first is None and not cert.acyclic:
        first = cert.witness[0]
    shriek = {n: r for n, r in qd.shriek_ranks.items() if keep(n)}
    return KoszulCertificate(cutoff, True, shriek, pr, hb, ext, cert, agree,
                             agree and cert.acyclic, first,
                             {"quadratic": qd, "priddy": pd})


# --- Koszul construction ------------------------------------------------------------------

@dataclass
class KoszulConstruction:
    d: dict  # element of A⊗A^! (presentation labels)
    d_square_zero: bool
    d_star: dict  # the same element in A⊗(A^<)*
    d_star_square_zero: bool
    sigma_matches: bool  # σ(d) = τ^p
    module: Complex  # K^A = A ⊗ A^< with ∂(a⊗x) = (a⊗x)·d
    matches_priddy: bool  # equal to A ⋊τ^p A^<
    homology: dict


def _tensor_square(A1: DGAlgebra, A2: DGAlgebra, x: dict) -> dict:
    """x·x in A1⊗A2, (a⊗b)(a'⊗b') = (-1)^(|b||a'|) aa'⊗bb'."""
    F = A1.F
    out: dict = {}
    for (a, b), c in x.items():
        for (a2, b2), c2 in x.items():
            s = sign(A2.degree(b), A1.degree(a2))
            for k1, e1 in A1.mul(a, a2).items():
                for k2, e2 in A2.mul(b, b2).items():
                    add_term(F, out, (k1, k2), F.signed(s, F.mul(F.mul(c, c2), F.mul(e1, e2))))
    return out


def koszul_construction(A: DGAlgebra, cutoff: int = 10) -> KoszulConstruction:
    qd = quadratic_dual(A, cutoff)
    pd = priddy(A, cutoff, V=qd.V)
    F = A.F
    S = qd.shriek
    d = {}
    for v in qd.V:
        add_term(F, d, (v, Word((qd.names[v],), "alg")), F.one)
    sq = _tensor_square(A, S, d)
    Cs = dual_coalgebra_to_algebra(pd.coalgebra)
    xi = {v: Dual(Tag("<", Word((v,), "bar"))) for v in qd.V}
    d_star = {}
    for v in qd.V:
        add_term(F, d_star, (v, xi[v]), F.minus_one)
    sq2 = _tensor_square(A, Cs, d_star)
    # σ(d)(c) = sum_i ξ_i(c) v_i
    C = pd.coalgebra
    sig = {}
    for c in C.carrier.all_labels():
        out: dict = {}
        for (v, x), k in d_star.items():
            if x.label == c:
                add_term(F, out, v, k)
        if out:
            sig[c] = out
    sigma_ok = all(sig.get(c, {}) == pd.tau(c) for c in C.carrier.all_labels())
    # ∂(a⊗x) = sum_i (-1)^|a| a v_i ⊗ ξ_i(x_(1)) x_(2)
    P = left_twisted(A.right_module(), C.left_comodule(), pd.tau)
    dmat = {}
    for (a, x) in P.all_labels():
        if not P.window.known(P.degree((a, x)) - 1):
            continue
        out: dict = {}
        s = sign(A.degree(a))
        for (c1, c2), k in C.coprod(x).items():
            for (v, xl), coef in d_star.items():
                if xl.label != c1 or not A.product_defined(a, v):
                    continue
                for b, cb in A.mul(a, v).items():
                    add_term(F, out, (b, c2), F.signed(s, F.mul(coef, F.mul(k, cb))))
        dmat[(a, x)] = out
    K = Complex(F, P.window, P.basis, dmat)
    K.check()
    same = {k: v for k, v in K.d.items() if v} == {k: v for k, v in P.d.items() if v}
    H = Homology(K)
    hom = {n: r for n, r in H.ranks.items() if H.certified[n] and abs(n) <= cutoff - 1}
    return KoszulConstruction(d, not sq, d_star, not sq2, sigma_ok, K, same, hom)
