"""Sparse vectors (dicts label -> nonzero coefficient) and elimination."""

from __future__ import annotations

import heapq

from .scalars import Field


def axpy(F: Field, y: dict, a, x: dict) -> dict:
    """y += a*x in place; zero entries are removed."""
    if not a:
        return y
    for k, c in x.items():
        v = F.add(y.get(k, F.zero), F.mul(a, c))
        if v:
            y[k] = v
        else:
            y.pop(k, None)
    return y


def add_term(F: Field, y: dict, key, c) -> None:
    if not c:
        return
    v = F.add(y.get(key, F.zero), c)
    if v:
        y[key] = v
    else:
        y.pop(key, None)


def scale(F: Field, a, x: dict) -> dict:
    if not a:
        return {}
    return {k: F.mul(a, c) for k, c in x.items()}


def vsum(F: Field, *vs: dict) -> dict:
    out: dict = {}
    for v in vs:
        axpy(F, out, F.one, v)
    return out


def vsub(F: Field, x: dict, y: dict) -> dict:
    out = dict(x)
    return axpy(F, out, F.minus_one, y)


class Echelon:
    """Incremental row reduction keyed by labels.

    ``order`` maps every label that can occur to an int; the pivot of a
    row is its entry of smallest order. Each stored row remembers which
    combination of the inserted inputs produced it, so the structure
    answers rank, membership, kernel and solve queries.
    """

    def __init__(self, F: Field, order: dict):
        self.F = F
        self.order = order
        self.rows: dict = {}  # pivot label -> (row, combo)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict, track: bool = True):
        """Return (r, used) with r = v - sum(used[t] * input_t)."""
        F, order, rows = self.F, self.order, self.rows
        r = dict(v)
        used: dict = {}
        heap = [(order[k], k) for k in r if k in rows]
        heapq.heapify(heap)
        while heap:
            _, k = heapq.heappop(heap)
            c = r.get(k)
            if not c or k not in rows:
                continue
            row, combo = rows[k]
            for kk, cc in row.items():
                nv = F.sub(r.get(kk, F.zero), F.mul(c, cc))
                if nv:
                    if kk not in r and kk in rows:
                        heapq.heappush(heap, (order[kk], kk))
                    r[kk] = nv
                else:
                    r.pop(kk, None)
            if track:
                axpy(F, used, c, combo)
        return r, used

    def add(self, v: dict, tag=None):
        """Insert v; returns None if v was independent, else the relation
        expressing v in earlier inputs (as a dict tag -> coeff)."""
        r, used = self.reduce(v)
        if not r:
            return used
        F = self.F
        piv = min(r, key=self.order.__getitem__)
        inv = F.inv(r[piv])
        combo = scale(F, F.minus_one, used)
        if tag is not None:
            add_term(F, combo, tag, F.one)
        self.rows[piv] = (scale(F, inv, r), scale(F, inv, combo))
        return None

    def contains(self, v: dict) -> bool:
        r, _ = self.reduce(v, track=False)
        return not r

    def solve(self, v: dict):
        """Combination of inserted tags summing to v, or None."""
        r, used = self.reduce(v)
        return None if r else used


def rank_of_columns(F: Field, columns, order: dict) -> int:
    e = Echelon(F, order)
    for col in columns:
        e.add(col)
    return len(e)


def kernel(F: Field, images: list, tags: list, order: dict) -> list:
    """Kernel basis of the map sending tags[i] to images[i]."""
    e = Echelon(F, order)
    out = []
    for tag, img in zip(tags, images):
        rel = e.add(img, tag)
        if rel is not None:
            k = scale(F, F.minus_one, rel)
            add_term(F, k, tag, F.one)
            out.append(k)
    return out


def rref(F: Field, vectors, order: dict) -> list:
    """Reduced row echelon basis of the span: a list of (pivot, row) with
    row[pivot] = 1 and every row vanishing at the other pivots."""
    e = Echelon(F, order)
    for v in vectors:
        e.add(v)
    piv = sorted(e.rows, key=order.__getitem__, reverse=True)
    done: dict = {}
    for p in piv:
        row = dict(e.rows[p][0])
        for q in list(row):
            if q != p and q in done:
                axpy(F, row, F.neg(row[q]), done[q])
        done[p] = row
    return [(p, done[p]) for p in sorted(done, key=order.__getitem__)]
