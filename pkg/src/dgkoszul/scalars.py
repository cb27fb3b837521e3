"""Exact coefficient fields: prime fields GF(p) and the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "prime" or "rational"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "prime":
            if not _is_prime(self.characteristic):
                raise ValueError(f"characteristic {self.characteristic} is not prime")
        elif self.kind == "rational":
            if self.characteristic != 0:
                raise ValueError("the rational field has characteristic 0")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse 'gf:<p>' or 'q'."""
        t = text.strip().lower()
        if t in ("q", "qq", "rational"):
            return cls("rational")
        if t.startswith("gf:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
            return cls("prime", p)
        raise ValueError(f"bad field spec {text!r}; expected gf:<p> or q")

    def __str__(self) -> str:
        return "q" if self.kind == "rational" else f"gf:{self.characteristic}"


class Field:
    """Arithmetic on canonical representatives.

    Prime field elements are ints in [0, p); rationals are Fractions.
    Zero coefficients never appear in stored vectors.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.characteristic
        self.zero = self(0)
        self.one = self(1)
        self.minus_one = self(-1)

    def __repr__(self):
        return f"Field({self.spec})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __call__(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def signed(self, s: int, a):
        """Return a or -a according to s = +1 or -1."""
        return a if s > 0 else self.neg(a)

    def random(self, rng: random.Random, nonzero: bool = False):
        if self.p:
            lo = 1 if nonzero else 0
            return rng.randrange(lo, self.p)
        while True:
            x = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            if x or not nonzero:
                return x

    def render(self, a) -> str:
        if self.p:
            # balanced representative reads better for signs
            return str(a - self.p if a > self.p // 2 else a)
        return str(a)


def field_ops(spec: FieldSpec | str) -> Field:
    if isinstance(spec, str):
        spec = FieldSpec.parse(spec)
    return Field(spec)


GF101 = field_ops(FieldSpec("prime", 101))
QQ = field_ops(FieldSpec("rational"))
