"""DG coalgebras, DG comodules and tensor coalgebras.

Coproducts are sparse: a basis label maps to a vector over pairs of
labels. Coaugmented coalgebras use an adapted basis, so the
coaugmentation is a basis label of degree 0 and the counit kills every
other label.
"""

from __future__ import annotations

import itertools
import re

from .chains import Complex, GradedMap, GradedSpace, WindowError, unit_complex
from .dg_algebra import StructureError, _sample, polarity_window, words_by_degree
from .labels import Word, render, sign
from .linalg import add_term, axpy
from .scalars import Field


def _tensor_diff(F, X, Y, v: dict) -> dict:
    """(d⊗1 + 1⊗d) on a vector over pairs (x, y)."""
    out: dict = {}
    for (x, y), c in v.items():
        for k, cc in X.d.get(x, {}).items():
            add_term(F, out, (k, y), F.mul(c, cc))
        s = sign(X.degree(x))
        for k, cc in Y.d.get(y, {}).items():
            add_term(F, out, (x, k), F.signed(s, F.mul(c, cc)))
    return out


class DGCoalgebra:
    def __init__(self, carrier: Complex, coproducts: dict, counit: dict, unit=None, name: str = ""):
        self.carrier = carrier
        self.F: Field = carrier.F
        self.window = carrier.window
        self.coproducts = {k: v for k, v in coproducts.items() if v}
        self.counit = {k: v for k, v in counit.items() if v}
        self.unit = unit  # coaugmentation label, if any
        self.name = name

    def __repr__(self):
        return f"DGCoalgebra({self.name or '?'}, dim={self.carrier.dimension()})"

    def degree(self, label) -> int:
        return self.carrier.degree(label)

    def coprod(self, c) -> dict:
        return self.coproducts.get(c, {})

    def coprod_vec(self, v: dict) -> dict:
        out: dict = {}
        for c, a in v.items():
            axpy(self.F, out, a, self.coprod(c))
        return out

    def counit_of(self, v: dict):
        F = self.F
        out = F.zero
        for c, a in v.items():
            out = F.add(out, F.mul(a, self.counit.get(c, F.zero)))
        return out

    def ideal_labels(self, n=None):
        labs = self.carrier.all_labels() if n is None else self.carrier.labels(n)
        return [lab for lab in labs if lab != self.unit]

    def reduced(self, c) -> dict:
        """ψ̄(c) = ψ(c) - 1⊗c - c⊗1 for c in the coaugmentation coideal."""
        u = self.unit
        return {k: v for k, v in self.coprod(c).items() if k[0] != u and k[1] != u}

    def cobar_polarity(self):
        """'p' if the coideal sits in degrees >= 2, 'n' if in degrees <= -1."""
        degs = {self.degree(c) for c in self.ideal_labels()}
        if all(n >= 2 for n in degs) and self.window.zero_below:
            return "p"
        if all(n <= -1 for n in degs) and self.window.zero_above:
            return "n"
        return None

    def check(self, limit: int | None = 20000):
        F, C = self.F, self.carrier
        C.check()
        labs = list(C.all_labels())
        if self.unit is not None:
            u = self.unit
            if self.coprod(u) != {(u, u): F.one} or self.counit.get(u) != F.one:
                raise StructureError("coaugmentation is not a coalgebra map")
            if C.d.get(u):
                raise StructureError("d(1) != 0")
            for c in self.ideal_labels():
                if self.counit.get(c):
                    raise StructureError(f"counit does not vanish on {render(c)}")
                full = self.coprod(c)
                if full.get((u, c)) != F.one or full.get((c, u)) != F.one:
                    raise StructureError(f"coproduct of {render(c)} lacks 1⊗c + c⊗1")
                extra = {k for k in full if (k[0] == u) != (k[1] == u) and c not in k}
                if extra or (u, u) in full:
                    raise StructureError(f"coproduct of {render(c)} is not adapted to the coaugmentation")
        for c in _sample(labs, limit):
            psi = self.coprod(c)
            for (x, y) in psi:
                if self.degree(x) + self.degree(y) != self.degree(c):
                    raise StructureError(f"coproduct of {render(c)} is not homogeneous")
            lhs: dict = {}
            rhs: dict = {}
            for (x, y), a in psi.items():
                for (x1, x2), b in self.coprod(x).items():
                    add_term(F, lhs, (x1, x2, y), F.mul(a, b))
                for (y1, y2), b in self.coprod(y).items():
                    add_term(F, rhs, (x, y1, y2), F.mul(a, b))
            if lhs != rhs:
                raise StructureError(f"coassociativity fails at {render(c)}")
            left: dict = {}
            right: dict = {}
            for (x, y), a in psi.items():
                add_term(F, left, y, F.mul(a, self.counit.get(x, F.zero)))
                add_term(F, right, x, F.mul(a, self.counit.get(y, F.zero)))
            if left != {c: F.one} or right != {c: F.one}:
                raise StructureError(f"counit law fails at {render(c)}")
            if C.window.known(self.degree(c) - 1):
                if self.coprod_vec(C.d.get(c, {})) != _tensor_diff(F, C, C, psi):
                    raise StructureError(f"coproduct does not commute with d at {render(c)}")
        for c, a in self.counit.items():
            if self.degree(c) != 0:
                raise StructureError("counit must have degree 0")
        for c in labs:
            if self.degree(c) == 1 and self.counit_of(C.d.get(c, {})):
                raise StructureError("counit is not a chain map")
        return self

    def left_comodule(self) -> "DGComodule":
        return DGComodule(self, self.carrier, self.coproducts, "left", regular=True)

    def right_comodule(self) -> "DGComodule":
        return DGComodule(self, self.carrier, self.coproducts, "right", regular=True)

    def trivial_comodule(self, side: str = "left") -> "DGComodule":
        if self.unit is None:
            raise StructureError("trivial comodule needs a coaugmentation")
        K = unit_complex(self.F)
        key = (self.unit, "1") if side == "left" else ("1", self.unit)
        return DGComodule(self, K, {"1": {key: self.F.one}}, side)


class DGComodule:
    """Left comodules coact by x -> sum c⊗x', right ones by y -> sum y'⊗c."""

    def __init__(self, coalgebra: DGCoalgebra, carrier: Complex, coaction: dict, side: str = "left",
                 regular: bool = False):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.coalgebra, self.carrier, self.side = coalgebra, carrier, side
        self.F = carrier.F
        self.coaction = {k: v for k, v in coaction.items() if v}
        self.regular = regular

    def coact(self, x) -> dict:
        return self.coaction.get(x, {})

    def check(self, limit: int | None = 20000):
        C, X, F = self.coalgebra, self.carrier, self.F
        X.check()
        left = self.side == "left"
        for x in _sample(list(X.all_labels()), limit):
            psi = self.coact(x)
            lhs: dict = {}
            rhs: dict = {}
            cnt: dict = {}
            for pair, a in psi.items():
                c, y = pair if left else pair[::-1]
                for (c1, c2), b in C.coprod(c).items():
                    key = (c1, c2, y) if left else (y, c1, c2)
                    add_term(F, lhs, key, F.mul(a, b))
                for pair2, b in self.coact(y).items():
                    key = (c,) + pair2 if left else pair2 + (c,)
                    add_term(F, rhs, key, F.mul(a, b))
                add_term(F, cnt, y, F.mul(a, C.counit.get(c, F.zero)))
            if lhs != rhs:
                raise StructureError(f"comodule coassociativity fails at {render(x)}")
            if cnt != {x: F.one}:
                raise StructureError(f"comodule counit law fails at {render(x)}")
            if X.window.known(X.degree(x) - 1):
                img: dict = {}
                for y, a in X.d.get(x, {}).items():
                    axpy(F, img, a, self.coact(y))
                other = _tensor_diff(F, C.carrier, X, psi) if left else _tensor_diff(F, X, C.carrier, psi)
                if img != other:
                    raise StructureError(f"coaction does not commute with d at {render(x)}")
        return self


def psi_iter(C: DGCoalgebra, p: int, c) -> dict:
    """ψ̄^(p)(c) as a vector over p-tuples in the coideal.

    psi_iter(1) is the identity on the coideal and psi_iter(2) = ψ̄.
    """
    F = C.F
    if c == C.unit:
        return {}
    if p == 1:
        return {(c,): F.one}
    out: dict = {}
    for (x, y), a in C.reduced(c).items():
        for t, b in psi_iter(C, p - 1, x).items():
            add_term(F, out, t + (y,), F.mul(a, b))
    return out


def cocomplete_check(C: DGCoalgebra) -> dict:
    """For each coideal label, the least p with ψ̄^(p)(c) = 0."""
    cert = {}
    for c in C.ideal_labels():
        p = 1
        while psi_iter(C, p, c):
            p += 1
            if p > 64:
                raise StructureError(f"{render(c)} is not killed by iterated reduced coproducts")
        cert[c] = p
    return cert


def is_coalgebra_morphism(f: GradedMap, C1: DGCoalgebra, C2: DGCoalgebra) -> bool:
    F = f.F
    for c in C1.carrier.all_labels():
        if not f.defined(C1.degree(c)):
            continue
        lhs = C2.coprod_vec(f.image(c))
        rhs: dict = {}
        for (x, y), a in C1.coprod(c).items():
            for u, b in f.image(x).items():
                for v, e in f.image(y).items():
                    add_term(F, rhs, (u, v), F.mul(a, F.mul(b, e)))
        if lhs != rhs:
            return False
        if C2.counit_of(f.image(c)) != C1.counit.get(c, F.zero):
            return False
    return f.is_chain_map()


def tensor_coalgebra(W: GradedSpace, cutoff: int, polarity: str = "p", kind: str = "co") -> DGCoalgebra:
    """Deconcatenation coalgebra on words in W, zero differential."""
    F = W.F
    letters = [(w, W.degree(w)) for w in W.all_labels()]
    window = polarity_window(polarity, cutoff)
    words = words_by_degree(letters, window.lo, window.hi)
    basis = {n: [Word(w, kind) for w in ws] for n, ws in words.items()}
    C = Complex(F, window, basis)
    cop = {}
    for w in C.all_labels():
        L = w.letters
        cop[w] = {(Word(L[:j], kind), Word(L[j:], kind)): F.one for j in range(len(L) + 1)}
    empty = Word((), kind)
    return DGCoalgebra(C, cop, {empty: F.one}, empty, "T^c(W)")


def coalgebra_map_to_tensor(C: DGCoalgebra, T: DGCoalgebra, beta: dict) -> GradedMap:
    """The coalgebra map C -> T^c(W) whose corestriction to W is beta.

    beta sends coideal labels of C to vectors over letters of W; the map
    is c -> sum_p beta^{⊗p} ψ̄^(p)(c), with the unit sent to the empty word.
    """
    F = C.F
    kind = T.unit.kind
    imgs = {}
    for c in C.carrier.all_labels():
        if not T.window.known(C.degree(c)):
            continue
        if c == C.unit:
            imgs[c] = {T.unit: F.one}
            continue
        out: dict = {}
        p = 1
        while True:
            it = psi_iter(C, p, c)
            if not it:
                break
            for tup, a in it.items():
                parts = [beta.get(x, {}) for x in tup]
                for combo in itertools.product(*(list(pt.items()) for pt in parts)):
                    coeff = a
                    for _, b in combo:
                        coeff = F.mul(coeff, b)
                    add_term(F, out, Word(tuple(l for l, _ in combo), kind), coeff)
            p += 1
        imgs[c] = out
    return GradedMap(C.carrier, T.carrier, 0, imgs)


def coderivation_extend(T: DGCoalgebra, corestriction, degree: int, letter_degree) -> dict:
    """Coderivation of T^c(W) from its corestriction to W.

    ``corestriction(letters)`` returns a vector over single letters for a
    nonempty subword; ``letter_degree(letter)`` gives degrees in W. Result
    maps each word to its image.
    """
    F = T.F
    kind = T.unit.kind
    out = {}
    for w in T.carrier.all_labels():
        if not T.window.known(T.degree(w) + degree):
            continue
        L = w.letters
        img: dict = {}
        pre = 0
        for i in range(len(L)):
            s = sign(degree, pre)
            for j in range(i, len(L)):
                for letter, c in corestriction(L[i:j + 1]).items():
                    add_term(F, img, Word(L[:i] + (letter,) + L[j + 1:], kind), F.signed(s, c))
            pre += letter_degree(L[i])
        out[w] = img
    return out


# --- tabulated coalgebras ------------------------------------------------------

def _parse_terms(F, text: str, arity: int, known: dict, where: str, line: str = "") -> dict:
    """'2*a|b - c|1' -> {(a, b): 2, (c, 1): -1}; arity 1 reads plain labels."""
    from fractions import Fraction

    from .chains import InputError, locate
    s = text.replace(" ", "")
    if not s:
        return {}
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise InputError(f"{locate(where, line, text)}: cannot parse {text!r}")
    out: dict = {}
    for t in terms:
        sgn = -1 if t.startswith("-") else 1
        t = t.lstrip("+-")
        coeff = Fraction(sgn)
        if "*" in t:
            c, _, t = t.partition("*")
            try:
                coeff *= Fraction(c)
            except (ValueError, ZeroDivisionError):
                raise InputError(f"{locate(where, line, c)}: bad coefficient {c!r}") from None
        parts = t.split("|")
        if len(parts) != arity or any(p not in known for p in parts):
            raise InputError(f"{locate(where, line, t)}: bad term {t!r}")
        key = parts[0] if arity == 1 else tuple(parts)
        add_term(F, out, key, F(coeff))
    return out


def parse_coalgebra(text: str, F: Field | None = None) -> DGCoalgebra:
    """Read a finite coaugmented coalgebra.

        coalgebra
        field gf:101
        elem 1 0
        elem c 2
        unit 1
        coprod c = 1|c + c|1
        diff c = ...

    Elements without a coprod line are primitive.
    """
    from .chains import DegreeWindow, InputError, locate
    from .scalars import field_ops
    elems: dict = {}
    order = []
    unit = None
    fspec = None
    pending = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {no}"
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "coalgebra":
            continue
        if head == "field":
            fspec = rest
        elif head == "elem":
            parts = rest.split()
            if len(parts) != 2:
                raise InputError(f"{where}: expected 'elem <label> <degree>'")
            try:
                elems[parts[0]] = int(parts[1])
            except ValueError:
                raise InputError(f"{locate(where, raw, parts[1])}: bad degree {parts[1]!r}") from None
            order.append(parts[0])
        elif head == "unit":
            unit = rest
        elif head in ("coprod", "diff"):
            lab, eq, poly = rest.partition("=")
            if not eq:
                raise InputError(f"{where}: expected '{head} <label> = <terms>'")
            pending.append((head, lab.strip(), poly, where, raw))
        else:
            raise InputError(f"{locate(where, raw, head)}: unknown directive {head!r}")
    if unit is None or elems.get(unit) != 0:
        raise InputError("a coalgebra needs 'unit <label>' naming an element of degree 0")
    if F is None:
        try:
            F = field_ops(fspec or "gf:101")
        except ValueError as e:
            raise InputError(str(e)) from None
    basis: dict = {}
    for x in order:
        basis.setdefault(elems[x], []).append(x)
    cop = {x: {(unit, x): F.one, (x, unit): F.one} for x in order if x != unit}
    cop[unit] = {(unit, unit): F.one}
    d = {}
    for head, lab, poly, where, raw in pending:
        if lab not in elems:
            raise InputError(f"{locate(where, raw, lab)}: unknown element {lab!r}")
        if head == "coprod":
            cop[lab] = _parse_terms(F, poly, 2, elems, where, raw)
        else:
            d[lab] = _parse_terms(F, poly, 1, elems, where, raw)
    X = Complex(F, DegreeWindow.finite(min(basis), max(basis)), basis, d)
    C = DGCoalgebra(X, cop, {unit: F.one}, unit, "C")
    try:
        C.check()
    except (StructureError, ValueError) as e:
        raise InputError(str(e)) from None
    return C
