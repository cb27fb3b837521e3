"""Graded vector spaces, complexes and graded maps over an exact field.

Everything lives inside a ``DegreeWindow``: a range [lo, hi] of degrees
that are computed exactly, together with flags saying whether the
object is known to vanish below lo and/or above hi. Degrees outside the
computed range that are not known to vanish are *unknown*; homology is
certified only where degrees n-1, n, n+1 are all known.

Matrices act on column vectors: the image of a basis label is a sparse
vector (dict label -> coefficient) in the target.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math
import re

from .labels import Dual, HomLabel, Tag, render, sign
from .linalg import Echelon, add_term, axpy, kernel
from .scalars import Field, FieldSpec, field_ops

INF = math.inf


class WindowError(ValueError):
    pass


class DifferentialError(ValueError):
    """Raised when a differential does not square to zero."""

    def __init__(self, degree, source, target, coeff):
        self.degree, self.source, self.target, self.coeff = degree, source, target, coeff
        super().__init__(
            f"d∘d != 0 at degree {degree}: {render(source)} -> {render(target)} "
            f"has coefficient {coeff}"
        )


class NotAChainMap(ValueError):
    def __init__(self, label, detail=""):
        self.label = label
        super().__init__(f"not a chain map at basis element {render(label)} {detail}".strip())


@dataclass(frozen=True)
class DegreeWindow:
    lo: int
    hi: int
    zero_below: bool = True
    zero_above: bool = False

    @classmethod
    def bounded_below(cls, lo, hi):
        return cls(lo, hi, True, False)

    @classmethod
    def bounded_above(cls, lo, hi):
        return cls(lo, hi, False, True)

    @classmethod
    def finite(cls, lo, hi):
        return cls(lo, hi, True, True)

    @classmethod
    def from_polarity(cls, lo, hi, polarity: str):
        table = {
            "bounded-below": (True, False),
            "bounded-above": (False, True),
            "finite": (True, True),
            "truncated": (False, False),
        }
        if polarity not in table:
            raise WindowError(f"unknown polarity {polarity!r}")
        return cls(lo, hi, *table[polarity])

    @property
    def polarity(self) -> str:
        return {
            (True, False): "bounded-below",
            (False, True): "bounded-above",
            (True, True): "finite",
            (False, False): "truncated",
        }[(self.zero_below, self.zero_above)]

    def computed(self, n) -> bool:
        return self.lo <= n <= self.hi

    def known(self, n) -> bool:
        if self.lo <= n <= self.hi:
            return True
        return (n < self.lo and self.zero_below) or (n > self.hi and self.zero_above)

    def certified(self, n) -> bool:
        return self.known(n - 1) and self.known(n) and self.known(n + 1)

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def shift(self, s: int) -> "DegreeWindow":
        return DegreeWindow(self.lo + s, self.hi + s, self.zero_below, self.zero_above)

    def dual(self) -> "DegreeWindow":
        return DegreeWindow(-self.hi, -self.lo, self.zero_above, self.zero_below)

    # interval form: where the object may be nonzero, and where it is known
    def _nz(self):
        return (self.lo if self.zero_below else -INF, self.hi if self.zero_above else INF)

    def _ek(self):
        return (-INF if self.zero_below else self.lo, INF if self.zero_above else self.hi)

    def as_dict(self):
        return {"lo": self.lo, "hi": self.hi, "polarity": self.polarity}


def _window_from(nz, ek) -> DegreeWindow:
    lo_k, hi_k = ek
    if lo_k <= nz[0]:
        lo_k = -INF
    if hi_k >= nz[1]:
        hi_k = INF
    lo, hi = max(nz[0], lo_k), min(nz[1], hi_k)
    if lo_k > hi_k or math.isinf(lo) or math.isinf(hi):
        raise WindowError("result is not degreewise computable in any finite window")
    return DegreeWindow(int(lo), int(hi), lo_k == -INF, hi_k == INF)


def tensor_window(w1: DegreeWindow, w2: DegreeWindow) -> DegreeWindow:
    """Exact window of a tensor product of two windowed objects."""
    n1, k1 = w1._nz(), w1._ek()
    n2, k2 = w2._nz(), w2._ek()
    nz = (n1[0] + n2[0], n1[1] + n2[1])
    lo, hi = -INF, INF
    if n1[0] < k1[0]:
        lo = max(lo, k1[0] + n2[1])
    if n1[1] > k1[1]:
        hi = min(hi, k1[1] + n2[0])
    if n2[0] < k2[0]:
        lo = max(lo, k2[0] + n1[1])
    if n2[1] > k2[1]:
        hi = min(hi, k2[1] + n1[0])
    return _window_from(nz, (lo, hi))


def sum_window(*ws: DegreeWindow) -> DegreeWindow:
    """Window of a direct sum."""
    nz = (min(w._nz()[0] for w in ws), max(w._nz()[1] for w in ws))
    ek = (max(w._ek()[0] for w in ws), min(w._ek()[1] for w in ws))
    return _window_from(nz, ek)


def hom_window(wu: DegreeWindow, wv: DegreeWindow) -> DegreeWindow:
    return tensor_window(wu.dual(), wv)


class GradedSpace:
    """Graded vector space with an ordered basis in each computed degree."""

    def __init__(self, F: Field, window: DegreeWindow, basis: dict):
        self.F = F
        self.window = window
        self.basis: dict = {}
        self._deg: dict = {}
        self._idx: dict = {}
        for n in sorted(basis):
            labels = tuple(basis[n])
            if not labels:
                continue
            if not window.computed(n):
                raise WindowError(f"basis given in degree {n} outside window [{window.lo}, {window.hi}]")
            self.basis[n] = labels
            for i, lab in enumerate(labels):
                if lab in self._deg:
                    raise ValueError(f"duplicate basis label {render(lab)}")
                self._deg[lab] = n
                self._idx[lab] = i

    def labels(self, n) -> tuple:
        return self.basis.get(n, ())

    def rank(self, n) -> int:
        return len(self.basis.get(n, ()))

    def degree(self, label) -> int:
        return self._deg[label]

    def index(self, label) -> int:
        return self._idx[label]

    def __contains__(self, label):
        return label in self._deg

    def all_labels(self):
        for n in sorted(self.basis):
            yield from self.basis[n]

    def degrees(self):
        return self.window.degrees()

    def dimension(self) -> int:
        return len(self._deg)

    def order(self, n=None) -> dict:
        """Label -> position, used as the pivot order in elimination."""
        if n is None:
            return {lab: i for i, lab in enumerate(self.all_labels())}
        return {lab: i for i, lab in enumerate(self.labels(n))}

    def vector_degree(self, v: dict):
        degs = {self._deg[k] for k in v}
        if len(degs) > 1:
            raise ValueError("vector is not homogeneous")
        return degs.pop() if degs else None


class Complex(GradedSpace):
    """Chain complex: differential of degree -1, images stored per label.

    The image of a label of degree n is present only when degree n-1 is
    known.
    """

    def __init__(self, F: Field, window: DegreeWindow, basis: dict, d: dict | None = None):
        super().__init__(F, window, basis)
        self.d: dict = {}
        for lab, img in (d or {}).items():
            img = {k: c for k, c in img.items() if c}
            if img:
                self.d[lab] = img

    def diff_defined(self, n) -> bool:
        return self.window.known(n - 1)

    def diff(self, v: dict) -> dict:
        out: dict = {}
        for k, c in v.items():
            img = self.d.get(k)
            if img:
                axpy(self.F, out, c, img)
        return out

    def check(self):
        """Raise DifferentialError if d∘d != 0 somewhere it is defined."""
        F = self.F
        for lab, img in self.d.items():
            n = self._deg[lab]
            if not self.window.known(n - 2):
                continue
            for k, c in img.items():
                if k not in self._deg:
                    raise ValueError(f"differential of {render(lab)} leaves the basis: {render(k)}")
                if self._deg[k] != n - 1:
                    raise ValueError(f"differential of {render(lab)} has wrong degree")
            dd = self.diff(img)
            if dd:
                k = next(iter(dd))
                raise DifferentialError(n, lab, k, F.render(dd[k]))
        return self

    def matrix(self, n) -> dict:
        """Sparse block of d from degree n to n-1 as {(row, col): coeff}."""
        out = {}
        for col in self.labels(n):
            for row, c in self.d.get(col, {}).items():
                out[(row, col)] = c
        return out


def zero_complex(F: Field) -> Complex:
    return Complex(F, DegreeWindow.finite(0, 0), {})


def unit_complex(F: Field, label="1") -> Complex:
    """The ground field k in degree 0."""
    return Complex(F, DegreeWindow.finite(0, 0), {0: [label]})


class GradedMap:
    """Homogeneous linear map of a given degree between graded spaces."""

    def __init__(self, source: GradedSpace, target: GradedSpace, degree: int, images: dict):
        self.source, self.target, self.degree = source, target, degree
        self.F = source.F
        self.images: dict = {}
        for lab, img in images.items():
            img = {k: c for k, c in img.items() if c}
            if img:
                self.images[lab] = img

    def defined(self, n) -> bool:
        return self.source.window.known(n) and self.target.window.known(n + self.degree)

    def image(self, label) -> dict:
        return self.images.get(label, {})

    def __call__(self, v: dict) -> dict:
        out: dict = {}
        for k, c in v.items():
            img = self.images.get(k)
            if img:
                axpy(self.F, out, c, img)
        return out

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self ∘ other."""
        imgs = {}
        for lab in other.source.all_labels():
            n = other.source.degree(lab)
            if other.defined(n) and self.defined(n + other.degree):
                imgs[lab] = self(other.image(lab))
        return GradedMap(other.source, self.target, self.degree + other.degree, imgs)

    def add(self, other: "GradedMap", coeff=None) -> "GradedMap":
        F = self.F
        coeff = F.one if coeff is None else coeff
        imgs = {k: dict(v) for k, v in self.images.items()}
        for lab, img in other.images.items():
            axpy(F, imgs.setdefault(lab, {}), coeff, img)
        return GradedMap(self.source, self.target, self.degree, imgs)

    def matrix(self, n) -> dict:
        out = {}
        for col in self.source.labels(n):
            for row, c in self.image(col).items():
                out[(row, col)] = c
        return out

    def equals(self, other: "GradedMap") -> bool:
        return self.degree == other.degree and self.images == other.images

    def chain_map_witness(self):
        """First basis label where d f != (-1)^|f| f d, or None."""
        U, V, F = self.source, self.target, self.F
        s = sign(self.degree)
        for lab in U.all_labels():
            n = U.degree(lab)
            if not (self.defined(n) and self.defined(n - 1) and U.window.known(n - 1)
                    and V.window.known(n + self.degree - 1)):
                continue
            lhs = V.diff(self.image(lab))
            rhs = self(U.diff({lab: F.one}))
            if s < 0:
                rhs = {k: F.neg(c) for k, c in rhs.items()}
            if lhs != rhs:
                return lab
        return None

    def is_chain_map(self) -> bool:
        return self.chain_map_witness() is None

    def transpose(self) -> dict:
        """target label -> list of (source label, coeff)."""
        out: dict = {}
        for lab, img in self.images.items():
            for k, c in img.items():
                out.setdefault(k, []).append((lab, c))
        return out


def identity_map(U: GradedSpace) -> GradedMap:
    return GradedMap(U, U, 0, {lab: {lab: U.F.one} for lab in U.all_labels()})


def _transpose_d(U: Complex) -> dict:
    out: dict = {}
    for lab, img in U.d.items():
        for k, c in img.items():
            out.setdefault(k, []).append((lab, c))
    return out


# --- constructions ---------------------------------------------------------

def shift(U: Complex, s: int = 1) -> Complex:
    """Σ^s U: degrees raised by s, differential scaled by (-1)^s."""
    F = U.F
    tag = f"s{s}"
    basis = {n + s: [Tag(tag, lab) for lab in labs] for n, labs in U.basis.items()}
    eps = sign(s)
    d = {Tag(tag, lab): {Tag(tag, k): F.signed(eps, c) for k, c in img.items()}
         for lab, img in U.d.items()}
    return Complex(F, U.window.shift(s), basis, d)


def shift_map(U: Complex, s: int = 1, target: Complex | None = None) -> GradedMap:
    """The degree-s map u -> ς^s u."""
    target = target or shift(U, s)
    tag = f"s{s}"
    return GradedMap(U, target, s, {lab: {Tag(tag, lab): U.F.one} for lab in U.all_labels()})


def tensor_basis(U: GradedSpace, V: GradedSpace, window: DegreeWindow) -> dict:
    basis = {}
    for n in window.degrees():
        labs = []
        for i in sorted(U.basis):
            for u in U.basis[i]:
                for v in V.labels(n - i):
                    labs.append((u, v))
        if labs:
            basis[n] = labs
    return basis


def tensor(U: Complex, V: Complex) -> Complex:
    """U ⊗ V with d(u⊗v) = du⊗v + (-1)^|u| u⊗dv."""
    F = U.F
    window = tensor_window(U.window, V.window)
    basis = tensor_basis(U, V, window)
    d = {}
    for n, labs in basis.items():
        if not window.known(n - 1):
            continue
        for (u, v) in labs:
            img: dict = {}
            for k, c in U.d.get(u, {}).items():
                add_term(F, img, (k, v), c)
            su = sign(U.degree(u))
            for k, c in V.d.get(v, {}).items():
                add_term(F, img, (u, k), F.signed(su, c))
            d[(u, v)] = img
    return Complex(F, window, basis, d)


def tensor_map(f: GradedMap, g: GradedMap, source: Complex | None = None,
               target: Complex | None = None) -> GradedMap:
    """(f⊗g)(u⊗v) = (-1)^(|g||u|) f(u)⊗g(v)."""
    F = f.F
    source = source or tensor(f.source, g.source)
    target = target or tensor(f.target, g.target)
    imgs = {}
    for (u, v) in source.all_labels():
        s = sign(g.degree, f.source.degree(u))
        img: dict = {}
        fu, gv = f.image(u), g.image(v)
        for a, ca in fu.items():
            for b, cb in gv.items():
                add_term(F, img, (a, b), F.signed(s, F.mul(ca, cb)))
        imgs[(u, v)] = img
    return GradedMap(source, target, f.degree + g.degree, imgs)


def hom_complex(U: Complex, V: Complex) -> Complex:
    """Hom(U, V) with d(f) = d_V f - (-1)^|f| f d_U, on elementary maps."""
    F = U.F
    window = hom_window(U.window, V.window)
    basis = {}
    for p in window.degrees():
        labs = [HomLabel(u, v) for i in sorted(U.basis) for u in U.basis[i] for v in V.labels(i + p)]
        if labs:
            basis[p] = labs
    dUt = _transpose_d(U)
    d = {}
    for p, labs in basis.items():
        if not window.known(p - 1):
            continue
        s = sign(p)
        for h in labs:
            img: dict = {}
            for k, c in V.d.get(h.tgt, {}).items():
                add_term(F, img, HomLabel(h.src, k), c)
            for (u2, c) in dUt.get(h.src, ()):
                add_term(F, img, HomLabel(u2, h.tgt), F.signed(-s, c))
            d[h] = img
    return Complex(F, window, basis, d)


def map_to_hom(f: GradedMap) -> dict:
    out = {}
    for u, img in f.images.items():
        for v, c in img.items():
            out[HomLabel(u, v)] = c
    return out


def hom_to_map(vec: dict, U: GradedSpace, V: GradedSpace, degree: int) -> GradedMap:
    imgs: dict = {}
    for h, c in vec.items():
        imgs.setdefault(h.src, {})[h.tgt] = c
    return GradedMap(U, V, degree, imgs)


def dual(U: Complex) -> Complex:
    """U* with (U*)_i = (U_{-i})* and d(α) = (-1)^(|α|+1) α∘d_U."""
    F = U.F
    basis = {-n: [Dual(lab) for lab in labs] for n, labs in U.basis.items()}
    window = U.window.dual()
    dUt = _transpose_d(U)
    d = {}
    for lab in U.all_labels():
        n = U.degree(lab)
        if not window.known(-n - 1):
            continue
        s = sign(n + 1)
        d[Dual(lab)] = {Dual(w): F.signed(s, c) for (w, c) in dUt.get(lab, ())}
    return Complex(F, window, basis, d)


def dual_map(f: GradedMap, source: Complex | None = None, target: Complex | None = None) -> GradedMap:
    """f*: V* -> U*, f*(β) = (-1)^(|f||β|) β∘f."""
    F = f.F
    source = source or dual(f.target)
    target = target or dual(f.source)
    ft = f.transpose()
    imgs = {}
    for v in f.target.all_labels():
        s = sign(f.degree, f.target.degree(v))
        imgs[Dual(v)] = {Dual(u): F.signed(s, c) for (u, c) in ft.get(v, ())}
    return GradedMap(source, target, f.degree, imgs)


def varpi(U: Complex, V: Complex, source: Complex | None = None,
          target: Complex | None = None) -> GradedMap:
    """U*⊗V* -> (U⊗V)*, (α⊗β)(u⊗v) = (-1)^(|β||u|) α(u)β(v)."""
    F = U.F
    source = source or tensor(dual(U), dual(V))
    target = target or dual(tensor(U, V))
    imgs = {}
    for (a, b) in source.all_labels():
        u, v = a.label, b.label
        imgs[(a, b)] = {Dual((u, v)): F.signed(sign(U.degree(u), V.degree(v)), F.one)}
    return GradedMap(source, target, 0, imgs)


def delta_hom(U: Complex, V: Complex, source: Complex | None = None,
              target: Complex | None = None) -> GradedMap:
    """Hom(U, V) -> Hom(V*, U*), f -> f*."""
    F = U.F
    source = source or hom_complex(U, V)
    target = target or hom_complex(dual(V), dual(U))
    imgs = {}
    for h in source.all_labels():
        p = V.degree(h.tgt) - U.degree(h.src)
        s = sign(p, V.degree(h.tgt))
        imgs[h] = {HomLabel(Dual(h.tgt), Dual(h.src)): F.signed(s, F.one)}
    return GradedMap(source, target, 0, imgs)


def double_dual_iso(U: Complex, target: Complex | None = None) -> GradedMap:
    """Evaluation U -> U**, u -> (α -> (-1)^(|α||u|) α(u))."""
    F = U.F
    target = target or dual(dual(U))
    return GradedMap(U, target, 0, {
        lab: {Dual(Dual(lab)): F.signed(sign(U.degree(lab)), F.one)} for lab in U.all_labels()
    })


def direct_sum(*parts: Complex, tags=None) -> Complex:
    F = parts[0].F
    tags = tags or [str(i) for i in range(len(parts))]
    window = sum_window(*(P.window for P in parts))
    basis: dict = {}
    d = {}
    for t, P in zip(tags, parts):
        for n, labs in P.basis.items():
            basis.setdefault(n, []).extend(Tag(t, lab) for lab in labs)
        for lab, img in P.d.items():
            d[Tag(t, lab)] = {Tag(t, k): c for k, c in img.items()}
    return Complex(F, window, basis, d)


def mapping_cone(f: GradedMap) -> Complex:
    """Cone(f)_n = X_{n-1} ⊕ Y_n, d(x, y) = (-dx, f(x) + dy)."""
    X, Y, F = f.source, f.target, f.F
    if f.degree != 0:
        raise ValueError("mapping cone needs a degree-0 map")
    window = sum_window(X.window.shift(1), Y.window)
    basis: dict = {}
    for n, labs in X.basis.items():
        if window.computed(n + 1):
            basis.setdefault(n + 1, []).extend(Tag("x", lab) for lab in labs)
    for n, labs in Y.basis.items():
        if window.computed(n):
            basis.setdefault(n, []).extend(Tag("y", lab) for lab in labs)
    d = {}
    for n, labs in basis.items():
        if not window.known(n - 1):
            continue
        for lab in labs:
            img: dict = {}
            if lab.tag == "x":
                for k, c in X.d.get(lab.label, {}).items():
                    add_term(F, img, Tag("x", k), F.neg(c))
                for k, c in f.image(lab.label).items():
                    add_term(F, img, Tag("y", k), c)
            else:
                for k, c in Y.d.get(lab.label, {}).items():
                    add_term(F, img, Tag("y", k), c)
            d[lab] = img
    return Complex(F, window, basis, d)


# --- homology ----------------------------------------------------------------

class Homology:
    """Homology of a complex, degree by degree.

    Cycle representatives are the kernel vectors produced by elimination
    that are independent of the boundaries, taken in basis order.
    """

    def __init__(self, X: Complex):
        X.check()
        self.X = X
        self.F = X.F
        self.ranks: dict = {}
        self.cycle_ranks: dict = {}
        self.boundary_ranks: dict = {}
        self.certified: dict = {}
        self.reps: dict = {}
        self._ech: dict = {}
        for n in X.degrees():
            self._compute(n)

    def _compute(self, n):
        X, F = self.X, self.F
        labs = X.labels(n)
        order = X.order(n)
        lower = X.order(n - 1)
        cycles = kernel(F, [X.d.get(u, {}) for u in labs], list(labs), lower) if labs else []
        ech = Echelon(F, order)
        nb = 0
        for w in X.labels(n + 1):
            if ech.add(X.d.get(w, {}), ("b", w)) is None:
                nb += 1
        reps = []
        for z in cycles:
            if ech.add(z, ("h", len(reps))) is None:
                reps.append(z)
        self._ech[n] = ech
        self.reps[n] = reps
        self.ranks[n] = len(reps)
        self.cycle_ranks[n] = len(cycles)
        self.boundary_ranks[n] = nb
        self.certified[n] = X.window.certified(n)

    def rank(self, n) -> int:
        if n in self.ranks:
            return self.ranks[n]
        if self.X.window.known(n):
            return 0
        raise WindowError(f"degree {n} is outside the known window")

    def is_certified(self, n) -> bool:
        if n in self.certified:
            return self.certified[n]
        return self.X.window.certified(n)

    def certified_ranks(self) -> dict:
        return {n: r for n, r in self.ranks.items() if self.certified[n]}

    def solve_boundary(self, z: dict, n=None):
        """x with dx = z, or None if z is not a boundary."""
        if not z:
            return {}
        n = self.X.vector_degree(z) if n is None else n
        if n not in self._ech:
            return None
        used = self._ech[n].solve(z)
        if used is None or any(t[0] == "h" for t in used):
            return None
        return {t[1]: c for t, c in used.items()}

    def class_of(self, z: dict, n=None) -> list:
        """Coordinates of the cycle z in the basis of representatives."""
        n = self.X.vector_degree(z) if n is None else n
        reps = self.reps.get(n, [])
        if not z:
            return [self.F.zero] * len(reps)
        used = self._ech[n].solve(z)
        if used is None:
            raise ValueError("not a cycle")
        coords = [self.F.zero] * len(reps)
        for t, c in used.items():
            if t[0] == "h":
                coords[t[1]] = c
        return coords

    def is_boundary(self, z: dict, n=None) -> bool:
        return not any(self.class_of(z, n))


def homology(X: Complex) -> Homology:
    return Homology(X)


@dataclass
class QuasiIsoResult:
    cone_ranks: dict
    certified: dict
    per_degree: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(v for n, v in self.per_degree.items() if v is not None)

    def as_dict(self):
        return {
            "quasi_isomorphism": self.holds,
            "cone_ranks": {str(n): r for n, r in sorted(self.cone_ranks.items())},
            "certified": {str(n): c for n, c in sorted(self.certified.items())},
        }


def quasi_iso_check(f: GradedMap) -> QuasiIsoResult:
    """Certify H(f) is an isomorphism via the homology of its cone.

    H_n(f) is an isomorphism once the cone is acyclic in degrees n and n+1.
    """
    w = f.chain_map_witness()
    if w is not None:
        raise NotAChainMap(w)
    C = mapping_cone(f)
    H = Homology(C)
    res = QuasiIsoResult(dict(H.ranks), dict(H.certified))
    degrees = sorted(set(f.source.basis) | set(f.target.basis))
    for n in degrees:
        if H.is_certified(n) and H.is_certified(n + 1):
            res.per_degree[n] = H.rank(n) == 0 and H.rank(n + 1) == 0
        else:
            res.per_degree[n] = None
    return res


# --- text serialization -------------------------------------------------------

class InputError(ValueError):
    pass


def locate(where: str, line: str, token: str) -> str:
    """Append the 1-based column of token in line, when it can be found."""
    i = line.find(token) if line and token else -1
    return f"{where}, column {i + 1}" if i >= 0 else where


def _parse_coeff(F: Field, tok: str, where: str):
    from fractions import Fraction
    try:
        return F(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: bad coefficient {tok!r}") from None


def write_complex(X: Complex) -> str:
    F = X.F
    lines = ["complex", f"field {F.spec}",
             f"window {X.window.lo} {X.window.hi} {X.window.polarity}"]
    for n in sorted(X.basis):
        lines.append(f"basis {n} " + " ".join(render(lab) for lab in X.basis[n]))
    for n in sorted(X.basis):
        for col in X.basis[n]:
            for row, c in X.d.get(col, {}).items():
                lines.append(f"d {n} {render(row)} {render(col)} {F.render(c)}")
    return "\n".join(lines) + "\n"


def read_complex(text: str, F: Field | None = None) -> Complex:
    """Parse the textual complex format. Labels are read as strings."""
    window = None
    basis: dict = {}
    entries = []
    spec = None
    seen_header = False
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {no}"
        toks = line.split()
        head = toks[0]
        if head == "complex":
            seen_header = True
        elif head == "field":
            try:
                spec = FieldSpec.parse(toks[1])
            except (ValueError, IndexError) as e:
                raise InputError(f"{where}: {e}") from None
        elif head == "window":
            try:
                window = DegreeWindow.from_polarity(int(toks[1]), int(toks[2]), toks[3])
            except (ValueError, IndexError):
                raise InputError(f"{where}: expected 'window <lo> <hi> <polarity>'") from None
        elif head == "basis":
            try:
                n = int(toks[1])
            except (ValueError, IndexError):
                raise InputError(f"{where}: expected 'basis <degree> <labels...>'") from None
            basis.setdefault(n, []).extend(toks[2:])
        elif head == "d":
            if len(toks) != 5:
                raise InputError(f"{where}: expected 'd <degree> <row> <col> <coeff>'")
            try:
                n = int(toks[1])
            except ValueError:
                raise InputError(f"{locate(where, raw, toks[1])}: bad degree {toks[1]!r}") from None
            cols = [m.start() + 1 for m in re.finditer(r"\S+", raw)]
            entries.append((where, cols, n, toks[2], toks[3], toks[4]))
        else:
            raise InputError(f"{locate(where, raw, head)}: unknown directive {head!r}")
    if not seen_header:
        raise InputError("missing 'complex' header")
    if F is None:
        F = field_ops(spec or FieldSpec("prime", 101))
    if window is None:
        degs = sorted(basis) or [0]
        window = DegreeWindow.finite(degs[0], degs[-1])
    try:
        X = Complex(F, window, basis)
    except (WindowError, ValueError) as e:
        raise InputError(str(e)) from None
    for where, cols, n, row, col, tok in entries:
        if col not in X or X.degree(col) != n:
            raise InputError(f"{where}, column {cols[3]}: column label {col!r} is not a basis element of degree {n}")
        if row not in X or X.degree(row) != n - 1:
            raise InputError(f"{where}, column {cols[2]}: row label {row!r} is not a basis element of degree {n - 1}")
        add_term(F, X.d.setdefault(col, {}), row, _parse_coeff(F, tok, f"{where}, column {cols[4]}"))
    X.d = {k: v for k, v in X.d.items() if v}
    return X
