"""Exact Koszul duality computations for DG algebras over GF(p) or Q.

Everything is computed degree by degree inside explicit windows; every
verdict names the degrees on which it is certified.
"""

from __future__ import annotations

from importlib import resources

__version__ = "0.1.0"


def corpus_path(name: str) -> str:
    """Path of a bundled presentation, e.g. corpus_path('exterior2.alg')."""
    return str(resources.files(__package__).joinpath("data", name))


def load_corpus(name: str, cutoff: int = 12, field: str | None = None):
    from .dg_algebra import from_presentation, parse_presentation
    from .scalars import field_ops
    with open(corpus_path(name), encoding="utf-8") as fh:
        P = parse_presentation(fh.read())
    F = field_ops(field or P.field_spec or "gf:101")
    return from_presentation(P, cutoff, None, F)
