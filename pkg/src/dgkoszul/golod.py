"""Trivial Massey operations, the twisting map they induce on T^c(ΣH̄),
and the Golod check.

A tuple (h1,...,hp) is stored as the bar word [h1|...|hp] of the tensor
coalgebra T^c(W), W = ΣH̄, which is B(k⋉H̄) with zero differential. The
value o(h1,...,hp) has degree |[h1|...|hp]| - 1, and the defining
equation for p >= 2 is

    ∂ o(h1,...,hp) = sum_j (-1)^(|h1|+...+|hj|+j) o(h1,...,hj) o(h_{j+1},...,hp),

which is exactly the twisting equation for w -> o(w).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bar_cobar import bar
from .chains import DegreeWindow, GradedSpace, Homology, dual
from .dg_algebra import DGAlgebra, trivial_extension
from .dg_coalgebra import DGCoalgebra
from .labels import Word, render, sign
from .linalg import axpy
from .twisting import AcyclicityCertificate, TwistingMap, acyclic_check

__all__ = [
    "MasseyOperation", "Obstruction", "GolodCertificate", "homology_basis",
    "product_triviality_check", "massey_build", "verify_massey", "tau_from_massey",
    "free_ranks", "golod_check", "trivial_extension",
]


class PolarityError(ValueError):
    pass


@dataclass
class HomologyBasis:
    B: DGAlgebra
    H: Homology
    polarity: str
    names: list  # class names, in degree order
    degree: dict  # name -> degree
    rep: dict  # name -> cycle


def _vec_name(F, v: dict) -> str:
    if len(v) == 1:
        (k, c), = v.items()
        if c == F.one:
            return render(k)
    return None


def homology_basis(B: DGAlgebra) -> HomologyBasis:
    """Reduced homology classes with their representatives; checks the polarity of H̄."""
    if not B.augmented:
        raise PolarityError("B must be augmented")
    H = Homology(B.carrier)
    w = B.window
    red = {n: r for n, r in H.ranks.items() if n != 0 and r}
    if H.rank(0) != 1:
        raise PolarityError(f"H_0 has rank {H.rank(0)}, expected 1")
    if all(n >= 1 for n in red) and w.zero_below:
        pol = "p"
    elif all(n <= -2 for n in red) and w.zero_above:
        pol = "n"
    else:
        bad = min(red, key=abs)
        raise PolarityError(f"reduced homology in degree {bad} violates both polarities")
    names, degree, rep = [], {}, {}
    for n in sorted(red, key=abs):
        for i, z in enumerate(H.reps[n]):
            nm = _vec_name(B.F, z) or f"h{n}_{i}"
            names.append(nm)
            degree[nm] = n
            rep[nm] = z
    return HomologyBasis(B, H, pol, names, degree, rep)


@dataclass
class ProductTriviality:
    trivial: bool
    witness: tuple | None = None  # (class, class)
    witness_class: list | None = None

    def as_dict(self):
        return {
            "products_trivial": self.trivial,
            "witness": None if self.witness is None else "·".join(self.witness),
            "witness_class": None if self.witness_class is None else [str(c) for c in self.witness_class],
        }


def product_triviality_check(B: DGAlgebra, hb: HomologyBasis | None = None) -> ProductTriviality:
    """All products of reduced homology classes vanish in H(B)."""
    hb = hb or homology_basis(B)
    F = B.F
    for x in hb.names:
        for y in hb.names:
            n = hb.degree[x] + hb.degree[y]
            if not B.window.known(n):
                continue
            z = B.mul_vec(hb.rep[x], hb.rep[y])
            if not z or not hb.H.is_certified(n):
                continue
            cls = hb.H.class_of(z, n)
            if any(cls):
                return ProductTriviality(False, (x, y), cls)
    return ProductTriviality(True)


@dataclass
class Obstruction:
    word: Word
    rhs: dict
    homology_class: list

    def as_dict(self):
        return {"tuple": [str(h) for h in self.word.letters], "rhs": {render(k): str(c) for k, c in sorted(
            self.rhs.items(), key=lambda t: render(t[0]))}, "class": [str(c) for c in self.homology_class]}


@dataclass
class MasseyOperation:
    hb: HomologyBasis
    T: DGCoalgebra  # T^c(W)
    values: dict  # bar word -> chain of B
    log: list = field(default_factory=list)


def _tensor_coalgebra(hb: HomologyBasis, cutoff: int) -> DGCoalgebra:
    F = hb.B.F
    basis: dict = {}
    for nm in hb.names:
        basis.setdefault(hb.degree[nm], []).append(nm)
    if basis:
        lo, hi = min(basis), max(basis)
    else:
        lo = hi = 1 if hb.polarity == "p" else -2
    H = trivial_extension(GradedSpace(F, DegreeWindow.finite(min(lo, 0), max(hi, 0)), basis),
                          unit=("unit",), name="k⋉H̄")
    T = bar(H, cutoff)
    T.name = "T^c(W)"
    return T


def _massey_rhs(B: DGAlgebra, T: DGCoalgebra, values: dict, w: Word) -> dict:
    """sum over splittings of (-1)^|c1| o(c1) o(c2), c1 and c2 nonempty."""
    F = B.F
    out: dict = {}
    L = w.letters
    for j in range(1, len(L)):
        c1, c2 = Word(L[:j], "bar"), Word(L[j:], "bar")
        a, b = values.get(c1, {}), values.get(c2, {})
        if a and b:
            axpy(F, out, F(sign(T.degree(c1))), B.mul_vec(a, b))
    return out


def massey_build(B: DGAlgebra, cutoff: int = 10):
    """Greedy trivial Massey operation on words of degree |n| <= cutoff - 1.

    Words are treated by total degree, then lexicographically in the order
    of the homology basis. Returns a MasseyOperation, or an Obstruction
    for the first word whose right-hand side is not a boundary.
    """
    hb = homology_basis(B)
    T = _tensor_coalgebra(hb, cutoff)
    F = B.F
    pos = {nm: i for i, nm in enumerate(hb.names)}
    words = [w for w in T.carrier.all_labels() if w.letters and abs(T.degree(w)) <= cutoff - 1
             and B.window.known(T.degree(w))]
    words.sort(key=lambda w: (abs(T.degree(w)), len(w), [pos[h] for h in w.letters]))
    values: dict = {}
    log = []
    for w in words:
        if len(w) == 1:
            values[w] = dict(hb.rep[w.letters[0]])
            log.append({"tuple": [w.letters[0]], "status": "representative"})
            continue
        z = _massey_rhs(B, T, values, w)
        x = hb.H.solve_boundary(z, T.degree(w) - 2) if z else {}
        if x is None:
            cls = hb.H.class_of(z, T.degree(w) - 2)
            log.append({"tuple": list(w.letters), "status": "obstruction"})
            return Obstruction(w, z, cls), log
        values[w] = x
        log.append({"tuple": list(w.letters), "status": "solved" if z else "zero"})
    return MasseyOperation(hb, T, {w: v for w, v in values.items() if v}, log), log


def verify_massey(o: MasseyOperation):
    """First tuple violating the cycle, class, degree or boundary conditions, or None."""
    hb, B, F = o.hb, o.hb.B, o.hb.B.F
    D = B.carrier
    for w in o.T.carrier.all_labels():
        L = w.letters
        if not L:
            continue
        deg = sum(hb.degree[h] for h in L) + len(L) - 1
        v = o.values.get(w, {})
        if v and D.vector_degree(v) != deg:
            return (w, "degree")
        if not B.window.known(deg + 1):
            continue
        if len(L) == 1:
            if not v or D.diff(v):
                return (w, "representative is not a nonzero cycle")
            want = [F.one if nm == L[0] else F.zero for nm in hb.names if hb.degree[nm] == deg]
            if hb.H.class_of(v, deg) != want:
                return (w, "representative has the wrong class")
            continue
        rhs: dict = {}
        for j in range(1, len(L)):
            a = o.values.get(Word(L[:j], "bar"), {})
            b = o.values.get(Word(L[j:], "bar"), {})
            if a and b:
                s = sign(sum(hb.degree[h] for h in L[:j]) + j)
                axpy(F, rhs, F(s), B.mul_vec(a, b))
        if D.diff(v) != rhs:
            return (w, "boundary condition")
    return None


def tau_from_massey(o: MasseyOperation) -> TwistingMap:
    """τ^o: T^c(W) -> B, [h1|...|hp] -> o(h1,...,hp)."""
    return TwistingMap(o.T, o.hb.B, dict(o.values), "τ^o")


def free_ranks(gen_degrees: list, polarity: str, cutoff: int) -> dict:
    """Graded ranks of the free algebra on generators of the given degrees, |n| <= cutoff - 1."""
    step = 1 if polarity == "p" else -1
    out = {0: 1}
    for k in range(1, cutoff):
        n = step * k
        out[n] = sum(out.get(n - g, 0) for g in gen_degrees if 0 < step * g <= k)
    return out


@dataclass
class GolodCertificate:
    cutoff: int
    polarity: str
    products: ProductTriviality
    massey_log: list
    obstruction: Obstruction | None
    acyclicity: AcyclicityCertificate | None
    ext_ranks: dict
    free_ranks: dict
    verdict: str  # golod | not-golod | inconclusive
    details: dict = field(default_factory=dict)

    @property
    def golod(self) -> bool:
        return self.verdict == "golod"

    def as_dict(self):
        s = lambda d: {str(n): r for n, r in sorted(d.items())}
        return {
            "cutoff": self.cutoff,
            "homology_polarity": self.polarity,
            "product_triviality": self.products.as_dict(),
            "massey_log": self.massey_log,
            "obstruction": None if self.obstruction is None else self.obstruction.as_dict(),
            "acyclicity": None if self.acyclicity is None else self.acyclicity.as_dict(),
            "ext_ranks": s(self.ext_ranks),
            "free_ranks": s(self.free_ranks),
            "ext_within_free_bound": all(self.ext_ranks[n] <= self.free_ranks.get(n, 0) for n in self.ext_ranks),
            "verdict": self.verdict,
        }


def golod_check(B: DGAlgebra, cutoff: int = 10) -> GolodCertificate:
    hb = homology_basis(B)
    keep = lambda n: abs(n) <= cutoff - 1
    # Ext from the bar dual, independently of any Massey data
    HD = Homology(dual(bar(B, cutoff).carrier))
    ext = {n: r for n, r in HD.ranks.items() if HD.certified[n] and keep(n)}
    gens = [-(hb.degree[h] + 1) for h in hb.names]
    free = free_ranks(gens, "n" if hb.polarity == "p" else "p", cutoff)
    free = {n: r for n, r in free.items() if n in ext}
    prods = product_triviality_check(B, hb)
    o, log = massey_build(B, cutoff)
    if not prods.trivial:
        obs = o if isinstance(o, Obstruction) else None
        return GolodCertificate(cutoff, hb.polarity, prods, log, obs, None, ext, free, "not-golod")
    if isinstance(o, Obstruction):
        return GolodCertificate(cutoff, hb.polarity, prods, log, o, None, ext, free, "inconclusive")
    t = tau_from_massey(o)
    cert = acyclic_check(t, cutoff)
    ok = cert.acyclic and verify_massey(o) is None and ext == free
    return GolodCertificate(cutoff, hb.polarity, prods, log, None, cert, ext, free,
                            "golod" if ok else "inconclusive", {"massey": o, "tau": t})
