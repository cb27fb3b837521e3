"""DG algebras, DG modules, tensor algebras and finite presentations.

Products are sparse structure constants on pairs of basis labels. Bases
are adapted to the augmentation: the unit label spans k and every other
label lies in the augmentation ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import random
import re

from .chains import (Complex, DegreeWindow, GradedMap, GradedSpace, InputError, locate,
                     WindowError, unit_complex)
from .labels import Tag, Word, render, sign
from .linalg import Echelon, add_term, axpy, vsub
from .scalars import Field, FieldSpec, field_ops


class StructureError(ValueError):
    pass


def _sample(items, limit, seed=0):
    items = list(items)
    if limit is None or len(items) <= limit:
        return items
    return random.Random(seed).sample(items, limit)


class DGAlgebra:
    def __init__(self, carrier: Complex, products: dict, unit, augmented: bool = True, name: str = ""):
        self.carrier = carrier
        self.F: Field = carrier.F
        self.window = carrier.window
        self.unit = unit
        self.augmented = augmented
        self.name = name
        self.products = {k: v for k, v in products.items() if v}
        if unit not in carrier or carrier.degree(unit) != 0:
            raise StructureError("unit must be a basis label of degree 0")

    def __repr__(self):
        return f"DGAlgebra({self.name or '?'}, dim={self.carrier.dimension()})"

    def degree(self, label) -> int:
        return self.carrier.degree(label)

    def ideal_labels(self, n=None):
        labs = self.carrier.all_labels() if n is None else self.carrier.labels(n)
        return [lab for lab in labs if lab != self.unit]

    def product_defined(self, a, b) -> bool:
        return self.window.known(self.degree(a) + self.degree(b))

    def mul(self, a, b) -> dict:
        if a == self.unit:
            return {b: self.F.one}
        if b == self.unit:
            return {a: self.F.one}
        if not self.product_defined(a, b):
            raise WindowError(f"product {render(a)}·{render(b)} falls outside the window")
        return self.products.get((a, b), {})

    def mul_vec(self, x: dict, y: dict) -> dict:
        F = self.F
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                axpy(F, out, F.mul(ca, cb), self.mul(a, b))
        return out

    def augmentation(self, v: dict):
        return v.get(self.unit, self.F.zero) if self.augmented else None

    def bar_polarity(self):
        """'p' if the ideal sits in degrees >= 1, 'n' if in degrees <= -2."""
        degs = {self.degree(a) for a in self.ideal_labels()}
        if all(n >= 1 for n in degs) and self.window.zero_below:
            return "p"
        if all(n <= -2 for n in degs) and self.window.zero_above:
            return "n"
        return None

    def is_graded(self) -> bool:
        return not self.carrier.d

    def check(self, limit: int | None = 20000):
        """Verify unit, associativity, Leibniz and the augmentation."""
        F, C = self.F, self.carrier
        C.check()
        if C.d.get(self.unit):
            raise StructureError("d(1) != 0")
        labs = list(C.all_labels())
        if self.augmented:
            for a, b in itertools.product(self.ideal_labels(), repeat=2):
                if self.product_defined(a, b) and self.unit in self.mul(a, b):
                    raise StructureError(f"augmentation is not multiplicative at {render(a)}, {render(b)}")
            for a in self.ideal_labels():
                if self.unit in C.d.get(a, {}):
                    raise StructureError(f"augmentation does not kill d({render(a)})")
        triples = [(a, b, c) for a in labs for b in labs for c in labs
                   if C.window.known(self.degree(a) + self.degree(b) + self.degree(c))
                   and self.product_defined(a, b) and self.product_defined(b, c)]
        for a, b, c in _sample(triples, limit):
            lhs = self.mul_vec(self.mul(a, b), {c: F.one})
            rhs = self.mul_vec({a: F.one}, self.mul(b, c))
            if lhs != rhs:
                raise StructureError(f"associativity fails at ({render(a)}, {render(b)}, {render(c)})")
        pairs = [(a, b) for a in labs for b in labs if self.product_defined(a, b)
                 and C.window.known(self.degree(a) + self.degree(b) - 1)
                 and C.window.known(self.degree(a) - 1) and C.window.known(self.degree(b) - 1)]
        for a, b in _sample(pairs, limit):
            lhs = C.diff(self.mul(a, b))
            rhs = self.mul_vec(C.diff({a: F.one}), {b: F.one})
            axpy(F, rhs, F(sign(self.degree(a))), self.mul_vec({a: F.one}, C.diff({b: F.one})))
            if lhs != rhs:
                raise StructureError(f"Leibniz rule fails at ({render(a)}, {render(b)})")
        return self

    def opposite(self) -> "DGAlgebra":
        """Product a·b = (-1)^(|a||b|) ba."""
        F = self.F
        prods = {}
        for (a, b), v in self.products.items():
            s = sign(self.degree(a), self.degree(b))
            prods[(b, a)] = {k: F.signed(s, c) for k, c in v.items()}
        return DGAlgebra(self.carrier, prods, self.unit, self.augmented, self.name + "°")

    def left_module(self) -> "DGModule":
        return DGModule(self, self.carrier, self.products, "left", regular=True)

    def right_module(self) -> "DGModule":
        return DGModule(self, self.carrier, self.products, "right", regular=True)

    def trivial_module(self, side: str = "left") -> "DGModule":
        """k with A acting through the augmentation."""
        K = unit_complex(self.F)
        return DGModule(self, K, {}, side)


class DGModule:
    """Left or right DG module. ``action`` keys are (a, m) on the left and
    (m, a) on the right; missing keys mean zero, the unit acts as 1."""

    def __init__(self, algebra: DGAlgebra, carrier: Complex, action: dict, side: str = "left",
                 regular: bool = False):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.algebra, self.carrier, self.side = algebra, carrier, side
        self.F = carrier.F
        self.action = {k: v for k, v in action.items() if v}
        self.regular = regular

    def act(self, x, y) -> dict:
        """a·m for left modules (x=a, y=m), n·a for right modules (x=n, y=a)."""
        A = self.algebra
        a, m = (x, y) if self.side == "left" else (y, x)
        if a == A.unit:
            return {m: self.F.one}
        if self.regular:
            return A.mul(x, y)
        return self.action.get((x, y), {})

    def act_vec(self, x: dict, y: dict) -> dict:
        F = self.F
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                axpy(F, out, F.mul(ca, cb), self.act(a, b))
        return out

    def check(self, limit: int | None = 20000):
        A, M, F = self.algebra, self.carrier, self.F
        M.check()
        alabs, mlabs = list(A.carrier.all_labels()), list(M.all_labels())
        ok = lambda n: M.window.known(n)
        for a, b, m in _sample([(a, b, m) for a in alabs for b in alabs for m in mlabs
                                if ok(A.degree(a) + A.degree(b) + M.degree(m)) and A.product_defined(a, b)
                                and ok(A.degree(b) + M.degree(m)) and ok(A.degree(a) + M.degree(m))],
                               limit):
            if self.side == "left":
                lhs = self.act_vec(A.mul(a, b), {m: F.one})
                rhs = self.act_vec({a: F.one}, self.act(b, m))
            else:
                lhs = self.act_vec({m: F.one}, A.mul(a, b))
                rhs = self.act_vec(self.act(m, a), {b: F.one})
            if lhs != rhs:
                raise StructureError(f"module associativity fails at {render(a)}, {render(b)}, {render(m)}")
        for a, m in _sample([(a, m) for a in alabs for m in mlabs
                             if ok(A.degree(a) + M.degree(m)) and ok(A.degree(a) + M.degree(m) - 1)
                             and A.window.known(A.degree(a) - 1) and ok(M.degree(m) - 1)], limit):
            da, dm = A.carrier.diff({a: F.one}), M.diff({m: F.one})
            if self.side == "left":
                lhs = M.diff(self.act(a, m))
                rhs = self.act_vec(da, {m: F.one})
                axpy(F, rhs, F(sign(A.degree(a))), self.act_vec({a: F.one}, dm))
            else:
                lhs = M.diff(self.act(m, a))
                rhs = self.act_vec(dm, {a: F.one})
                axpy(F, rhs, F(sign(M.degree(m))), self.act_vec({m: F.one}, da))
            if lhs != rhs:
                raise StructureError(f"module Leibniz rule fails at {render(a)}, {render(m)}")
        return self

    def as_left_over_opposite(self) -> "DGModule":
        """A right module N as a left A°-module: a·n = (-1)^(|n||a|) na."""
        if self.side != "right":
            raise ValueError("expected a right module")
        F, A = self.F, self.algebra
        act = {}
        for a in A.carrier.all_labels():
            for n in self.carrier.all_labels():
                if not self.carrier.window.known(A.degree(a) + self.carrier.degree(n)):
                    continue
                v = self.act(n, a)
                if v:
                    s = sign(self.carrier.degree(n), A.degree(a))
                    act[(a, n)] = {k: F.signed(s, c) for k, c in v.items()}
        return DGModule(A.opposite(), self.carrier, act, "left")


def quotient_module(A: DGAlgebra, keep: list) -> DGModule:
    """A/I as a left module, where I is spanned by the basis labels not in ``keep``.

    I must be a left ideal stable under d; this is verified by check().
    """
    F = A.F
    keep = set(keep)
    if A.unit not in keep:
        raise ValueError("the quotient must keep the unit")
    basis = {n: [x for x in A.carrier.labels(n) if x in keep] for n in A.carrier.degrees()}
    basis = {n: labs for n, labs in basis.items() if labs}
    d = {x: {k: c for k, c in A.carrier.d.get(x, {}).items() if k in keep} for x in keep}
    X = Complex(F, A.window, basis, d)
    act = {}
    for a in A.carrier.all_labels():
        for m in keep:
            if A.product_defined(a, m):
                v = {k: c for k, c in A.mul(a, m).items() if k in keep}
                if v:
                    act[(a, m)] = v
    for x in A.carrier.all_labels():
        if x in keep:
            continue
        for a in A.carrier.all_labels():
            if A.product_defined(a, x) and any(k in keep for k in A.mul(a, x)):
                raise StructureError(f"span of the dropped labels is not a left ideal at {render(a)}·{render(x)}")
        if any(k in keep for k in A.carrier.d.get(x, {})):
            raise StructureError(f"span of the dropped labels is not stable under d at {render(x)}")
    return DGModule(A, X, act, "left").check()


def shift_module(M: DGModule, s: int) -> DGModule:
    """Σ^s M with a·ς^s(m) = (-1)^(|a|s) ς^s(a·m)."""
    from .chains import shift
    if M.side != "left":
        raise ValueError("shift_module expects a left module")
    F, A = M.F, M.algebra
    SM = shift(M.carrier, s)
    tag = f"s{s}"
    act = {}
    for a in A.carrier.all_labels():
        for m in M.carrier.all_labels():
            if not M.carrier.window.known(A.degree(a) + M.carrier.degree(m)):
                continue
            v = M.act(a, m)
            if v:
                e = sign(A.degree(a), s)
                act[(a, Tag(tag, m))] = {Tag(tag, k): F.signed(e, c) for k, c in v.items()}
    return DGModule(A, SM, act, "left")


def is_derivation(A: DGAlgebra, delta: GradedMap) -> bool:
    """delta(ab) = delta(a) b + (-1)^(|delta||a|) a delta(b) on all defined pairs."""
    F = A.F
    for a in A.carrier.all_labels():
        for b in A.carrier.all_labels():
            n = A.degree(a) + A.degree(b)
            if not (A.window.known(n) and A.window.known(n + delta.degree)):
                continue
            lhs = delta(A.mul(a, b))
            rhs = A.mul_vec(delta.image(a), {b: F.one})
            axpy(F, rhs, F(sign(delta.degree, A.degree(a))), A.mul_vec({a: F.one}, delta.image(b)))
            if lhs != rhs:
                return False
    return True


def is_algebra_morphism(f: GradedMap, A1: DGAlgebra, A2: DGAlgebra) -> bool:
    F = f.F
    if f.image(A1.unit) != {A2.unit: F.one}:
        return False
    for a in A1.carrier.all_labels():
        for b in A1.carrier.all_labels():
            if not A1.product_defined(a, b) or not f.defined(A1.degree(a) + A1.degree(b)):
                continue
            if f(A1.mul(a, b)) != A2.mul_vec(f.image(a), f.image(b)):
                return False
    return f.is_chain_map()


# --- tensor algebras ---------------------------------------------------------

def words_by_degree(letters: list, lo: int, hi: int) -> dict:
    """All words in the given (label, degree) letters with total degree in
    [lo, hi]. Letter degrees must all be >= 1 or all <= -1."""
    if not letters:
        return {0: [()]} if lo <= 0 <= hi else {}
    positive = all(d >= 1 for _, d in letters)
    if not positive and not all(d <= -1 for _, d in letters):
        raise WindowError("letters must all have positive or all negative degree")
    bound = hi if positive else -lo
    memo: dict = {}

    def build(m):  # words of absolute degree m
        if m in memo:
            return memo[m]
        out = [()] if m == 0 else []
        for lab, d in letters:
            ad = abs(d)
            if ad <= m:
                out.extend((lab,) + w for w in build(m - ad))
        memo[m] = out
        return out

    res = {}
    for m in range(0, bound + 1):
        n = m if positive else -m
        if lo <= n <= hi:
            ws = build(m)
            if ws:
                res[n] = ws
    return res


def polarity_window(polarity: str, cutoff: int) -> DegreeWindow:
    if polarity == "p":
        return DegreeWindow.bounded_below(0, cutoff)
    if polarity == "n":
        return DegreeWindow.bounded_above(-cutoff, 0)
    raise WindowError(f"polarity must be 'p' or 'n', got {polarity!r}")


def tensor_algebra(V: GradedSpace, cutoff: int, polarity: str = "p", kind: str = "alg") -> DGAlgebra:
    """Free algebra on V (zero differential) up to |degree| <= cutoff."""
    F = V.F
    letters = [(v, V.degree(v)) for v in V.all_labels()]
    window = polarity_window(polarity, cutoff)
    words = words_by_degree(letters, window.lo, window.hi)
    basis = {n: [Word(w, kind) for w in ws] for n, ws in words.items()}
    C = Complex(F, window, basis)
    prods = {}
    for a in C.all_labels():
        for b in C.all_labels():
            if a.letters and b.letters and window.computed(C.degree(a) + C.degree(b)):
                prods[(a, b)] = {Word(a.letters + b.letters, kind): F.one}
    return DGAlgebra(C, prods, Word((), kind), True, "T(V)")


def algebra_map_from_tensor(T: DGAlgebra, A: DGAlgebra, images: dict) -> GradedMap:
    """Extend v -> images[v] multiplicatively on the words of T."""
    F = A.F
    out = {}
    for w in T.carrier.all_labels():
        if not A.window.known(T.degree(w)):
            continue
        v = {A.unit: F.one}
        for letter in w.letters:
            v = A.mul_vec(v, images.get(letter, {}))
        out[w] = v
    return GradedMap(T.carrier, A.carrier, 0, out)


def derivation_extend(T: DGAlgebra, images: dict, degree: int = -1) -> dict:
    """Differential images on words from images of letters (Koszul signs)."""
    F = T.F
    out = {}
    for w in T.carrier.all_labels():
        if not T.window.known(T.degree(w) + degree):
            continue
        img: dict = {}
        pre = 0
        for i, letter in enumerate(w.letters):
            s = sign(degree, pre)
            for word, c in images.get(letter, {}).items():
                new = Word(w.letters[:i] + word.letters + w.letters[i + 1:], w.kind)
                add_term(F, img, new, F.signed(s, c))
            pre += T.degree(Word((letter,), w.kind))
        out[w] = img
    return out


# --- presentations -----------------------------------------------------------

@dataclass
class Presentation:
    generators: list  # [(name, degree)]
    relations: list = field(default_factory=list)  # [{tuple_of_names: int_or_Fraction}]
    differential: dict = field(default_factory=dict)  # name -> {tuple: coeff}
    polarity: str | None = None
    cutoff: int | None = None
    field_spec: str | None = None
    name: str = ""

    def degree_of(self, word: tuple) -> int:
        degs = dict(self.generators)
        return sum(degs[g] for g in word)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.']*")


def parse_poly(text: str, gens: dict, where: str, line: str = "") -> dict:
    """Parse '2*x1*x2 - x2*x1 + 3' into {('x1','x2'): 2, ('x2','x1'): -1, (): 3}."""
    s = text.replace(" ", "")
    if not s:
        raise InputError(f"{where}: empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise InputError(f"{locate(where, line, text)}: cannot parse polynomial {text!r}")
    out: dict = {}
    for t in terms:
        sgn = -1 if t.startswith("-") else 1
        t = t.lstrip("+-")
        if not t:
            raise InputError(f"{locate(where, line, text)}: dangling sign in {text!r}")
        factors = t.split("*")
        coeff = Fraction(sgn)
        word = []
        for fct in factors:
            if re.fullmatch(r"\d+(/\d+)?", fct):
                if word:
                    raise InputError(f"{locate(where, line, fct)}: coefficient must precede the word in {t!r}")
                coeff *= Fraction(fct)
            elif _NAME.fullmatch(fct):
                if fct not in gens:
                    raise InputError(f"{locate(where, line, fct)}: unknown generator {fct!r}")
                word.append(fct)
            else:
                raise InputError(f"{locate(where, line, fct)}: bad factor {fct!r}")
        key = tuple(word)
        out[key] = out.get(key, 0) + coeff
    return {k: v for k, v in out.items() if v}


def parse_presentation(text: str) -> Presentation:
    gens: list = []
    gdeg: dict = {}
    rels, diff = [], {}
    pol = cutoff = fspec = None
    name = ""
    pending = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {no}"
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "gen":
            parts = rest.split()
            if len(parts) != 2 or not _NAME.fullmatch(parts[0]):
                raise InputError(f"{locate(where, raw, rest)}: expected 'gen <label> <degree>'")
            try:
                d = int(parts[1])
            except ValueError:
                raise InputError(f"{locate(where, raw, parts[1])}: bad degree {parts[1]!r}") from None
            if parts[0] in gdeg:
                raise InputError(f"{locate(where, raw, parts[0])}: duplicate generator {parts[0]!r}")
            gens.append((parts[0], d))
            gdeg[parts[0]] = d
        elif head in ("rel", "diff"):
            pending.append((head, rest, where, raw))
        elif head == "polarity":
            if rest not in ("p", "n"):
                raise InputError(f"{locate(where, raw, rest)}: polarity must be p or n")
            pol = rest
        elif head == "cutoff":
            try:
                cutoff = int(rest)
            except ValueError:
                raise InputError(f"{locate(where, raw, rest)}: bad cutoff {rest!r}") from None
        elif head == "field":
            try:
                FieldSpec.parse(rest)
            except ValueError as e:
                raise InputError(f"{locate(where, raw, rest)}: {e}") from None
            fspec = rest
        elif head == "name":
            name = rest
        else:
            raise InputError(f"{locate(where, raw, head)}: unknown directive {head!r}")
    if not gens:
        raise InputError("presentation has no generators")
    for head, rest, where, raw in pending:
        if head == "rel":
            rels.append(parse_poly(rest, gdeg, where, raw))
        else:
            g, _, poly = rest.partition("=")
            g = g.strip()
            if g not in gdeg:
                raise InputError(f"{locate(where, raw, rest)}: expected 'diff <generator> = <polynomial>'")
            diff[g] = parse_poly(poly, gdeg, where, raw)
    return Presentation(gens, rels, diff, pol, cutoff, fspec, name)


def _poly_degree(P: Presentation, poly: dict, where: str) -> int:
    degs = {P.degree_of(w) for w in poly}
    if len(degs) != 1:
        raise InputError(f"{where}: polynomial is not homogeneous")
    return degs.pop()


def from_presentation(P: Presentation, cutoff: int | None = None, polarity: str | None = None,
                      F: Field | None = None) -> DGAlgebra:
    """Materialize T(V)/(R) degreewise by elimination over all u·r·w.

    Basis words are the non-pivot words of each ideal slice; pivots are
    taken on the lexicographically largest words. If the quotient
    vanishes on a run of consecutive degrees as long as the largest
    generator degree, it vanishes beyond, and the window is marked finite.
    """
    F = F or field_ops(P.field_spec or "gf:101")
    cutoff = cutoff if cutoff is not None else (P.cutoff if P.cutoff is not None else 10)
    degs = [d for _, d in P.generators]
    if polarity is None:
        polarity = P.polarity or ("p" if all(d >= 1 for d in degs) else "n")
    for g, d in P.generators:
        if polarity == "p" and d < 1:
            raise InputError(f"polarity p needs generator degrees >= 1; generator {g!r} has degree {d}")
        if polarity == "n" and d > -2:
            raise InputError(f"polarity n needs generator degrees <= -2; generator {g!r} has degree {d}")
    window = polarity_window(polarity, cutoff)
    words = words_by_degree(list(P.generators), window.lo, window.hi)
    rel_deg = []
    for i, r in enumerate(P.relations):
        if () in r:
            raise InputError(f"relation {i + 1} has a constant term")
        rel_deg.append((r, _poly_degree(P, r, f"relation {i + 1}")))
    gmap = dict(P.generators)

    ech: dict = {}
    spans: dict = {}
    for n, ws in words.items():
        order = {w: len(ws) - 1 - i for i, w in enumerate(ws)}
        e = Echelon(F, order)
        span = []
        for r, dr in rel_deg:
            for a in range(window.lo, window.hi + 1):
                b = n - dr - a
                for u in words.get(a, []):
                    for w in words.get(b, []):
                        vec = {}
                        for word, c in r.items():
                            add_term(F, vec, u + word + w, F(c))
                        if vec:
                            span.append(vec)
                            e.add(vec)
        ech[n] = e
        spans[n] = span

    def nf(vec: dict, n: int) -> dict:
        if n not in ech:
            return {}
        r, _ = ech[n].reduce(vec, track=False)
        return r

    basis = {n: [w for w in ws if w not in ech[n].rows] for n, ws in words.items()}
    basis = {n: ws for n, ws in basis.items() if ws}
    # finiteness certificate
    dmax = max(abs(d) for d in degs)
    absdeg = sorted(abs(n) for n in basis)
    top = max(absdeg) if absdeg else 0
    if cutoff - top >= dmax:
        lo, hi = (0, top) if polarity == "p" else (-top, 0)
        window = DegreeWindow.finite(lo, hi)

    lab = lambda w: Word(w, "alg")
    d = {}
    if P.differential:
        for g, poly in P.differential.items():
            if poly and _poly_degree(P, poly, f"diff {g}") != gmap[g] - 1:
                raise InputError(f"diff {g}: differential must have degree {gmap[g] - 1}")

        def dword(w: tuple) -> dict:
            out: dict = {}
            pre = 0
            for i, g in enumerate(w):
                s = sign(pre)
                for word, c in P.differential.get(g, {}).items():
                    add_term(F, out, w[:i] + word + w[i + 1:], F.signed(s, F(c)))
                pre += gmap[g]
            return out

        for n, span in spans.items():
            if not window.known(n - 1):
                continue
            for vec in span:
                img: dict = {}
                for w, c in vec.items():
                    axpy(F, img, c, dword(w))
                if nf(img, n - 1):
                    raise InputError(f"differential does not preserve the relations in degree {n}")
        for n, ws in basis.items():
            if window.known(n - 1):
                for w in ws:
                    d[lab(w)] = {lab(k): c for k, c in nf(dword(w), n - 1).items()}
    carrier = Complex(F, window, {n: [lab(w) for w in ws] for n, ws in basis.items()}, d)
    prods = {}
    for n1, ws1 in basis.items():
        for n2, ws2 in basis.items():
            n = n1 + n2
            if n1 == 0 or n2 == 0 or not window.known(n):
                continue
            for u in ws1:
                for w in ws2:
                    v = nf({u + w: F.one}, n)
                    if v:
                        prods[(lab(u), lab(w))] = {lab(k): c for k, c in v.items()}
    A = DGAlgebra(carrier, prods, lab(()), True, P.name)
    carrier.check()
    return A


def trivial_extension(V: GradedSpace, unit="1", name: str = "") -> DGAlgebra:
    """k ⋉ V: square-zero extension, zero differential."""
    F = V.F
    basis: dict = {0: [unit]}
    for n, labs in V.basis.items():
        basis.setdefault(n, []).extend(labs)
    lo = min(basis)
    hi = max(basis)
    C = Complex(F, DegreeWindow.finite(lo, hi), basis)
    return DGAlgebra(C, {}, unit, True, name or "k⋉V")


# --- twisters -------------------------------------------------------------------

def twister_defect(host: DGAlgebra, tau: dict):
    """None if ∂τ = τ² with τ of degree -1, else the first offending label."""
    F = host.F
    degs = {host.degree(k) for k in tau}
    if degs - {-1}:
        raise StructureError("a twister has degree -1")
    diff = vsub(F, host.carrier.diff(tau), host.mul_vec(tau, tau))
    return next(iter(diff), None)


def is_twister(host: DGAlgebra, tau: dict) -> bool:
    return twister_defect(host, tau) is None


def twist_module(U: DGModule, tau: dict) -> Complex:
    """The twisted complex: ∂ - λ(τ) on a left module, ∂ + λ°(τ) on a right one,
    where λ°(τ)(v) = (-1)^|v| v·τ."""
    F = U.F
    bad = twister_defect(U.algebra, tau)
    if bad is not None:
        raise StructureError(f"not a twister: ∂τ - τ² has a term at {render(bad)}")
    X = U.carrier
    d = {}
    for n, labs in X.basis.items():
        if not X.window.known(n - 1):
            continue
        for u in labs:
            img = dict(X.d.get(u, {}))
            if U.side == "left":
                axpy(F, img, F.minus_one, U.act_vec(tau, {u: F.one}))
            else:
                axpy(F, img, F(sign(n)), U.act_vec({u: F.one}, tau))
            d[u] = img
    out = Complex(F, X.window, X.basis, d)
    out.check()
    return out
