from __future__ import annotations

import functools

import pytest
from hypothesis import settings

from dgkoszul import load_corpus
from dgkoszul.scalars import GF101, QQ, field_ops

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def corpus(name: str, cutoff: int = 12):
    return load_corpus(name, cutoff)


@pytest.fixture(params=["gf:101", "gf:2", "q"])
def field(request):
    return field_ops(request.param)


@pytest.fixture
def F():
    return GF101


@pytest.fixture
def Q():
    return QQ
