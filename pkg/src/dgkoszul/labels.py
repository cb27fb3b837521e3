"""Basis labels and the Koszul sign.

Atomic labels are strings. Tensor products use plain tuples; words,
duals and tagged copies use the small frozen classes below.
"""

from __future__ import annotations

from dataclasses import dataclass


def sign(p: int, q: int = 1) -> int:
    """(-1)**(p*q). Every sign in the package goes through here."""
    return -1 if (p * q) % 2 else 1


_WORD_STYLE = {
    "alg": ("", "*", "", "1"),
    "bar": ("[", "|", "]", "[]"),
    "cobar": ("<", "|", ">", "<>"),
    "co": ("(", "|", ")", "()"),
}


@dataclass(frozen=True)
class Word:
    letters: tuple
    kind: str = "alg"

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        left, sep, right, empty = _WORD_STYLE[self.kind]
        if not self.letters:
            return empty
        return left + sep.join(render(x) for x in self.letters) + right


@dataclass(frozen=True)
class Dual:
    label: object

    def __str__(self):
        return render(self.label) + "*"


@dataclass(frozen=True)
class Tag:
    tag: str
    label: object

    def __str__(self):
        return f"{self.tag}:{render(self.label)}"


@dataclass(frozen=True)
class HomLabel:
    """Elementary map sending basis element src to tgt, all others to zero."""

    src: object
    tgt: object

    def __str__(self):
        return f"{render(self.src)}->{render(self.tgt)}"


def render(label) -> str:
    if isinstance(label, tuple):
        parts = []
        for x in label:
            s = render(x)
            parts.append(f"({s})" if isinstance(x, tuple) else s)
        return "⊗".join(parts)
    return str(label)


def flatten(label) -> tuple:
    """Flatten nested tensor labels, so (a, (b, c)) and ((a, b), c) agree."""
    if isinstance(label, tuple):
        out = ()
        for x in label:
            out += flatten(x)
        return out
    return (label,)
