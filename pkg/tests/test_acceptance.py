"""Acceptance criteria, one test each. Every test prints a single
PASS/FAIL line with its runtime before asserting."""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time

import pytest

from dgkoszul import corpus_path
from dgkoszul.bar_cobar import bar, bar_cobar_counit, cobar, tau_A
from dgkoszul.chains import Homology, delta_hom, dual, tensor_map, varpi
from dgkoszul.dg_algebra import quotient_module
from dgkoszul.dg_coalgebra import parse_coalgebra
from dgkoszul.duality import dual_twisting, moore_unit_check, moore_value_checks
from dgkoszul.golod import golod_check, tau_from_massey
from dgkoszul.koszul import koszul_check, koszul_construction, priddy, quadratic_dual
from dgkoszul.labels import Dual, sign
from dgkoszul.scalars import GF101
from dgkoszul.twisting import TwistingMap, acyclic_check, associativity_check, left_twisted, right_twisted
from dgkoszul import load_corpus as corpus
from gen import random_complex, random_map, random_space
import oracle

FOUR = ["dual", "trunc3", "exterior2", "trivext1"]


def report(capsys, number, title, ok, start, limit=None):
    took = time.perf_counter() - start
    timed = limit is None or took < limit
    verdict = "PASS" if ok and timed else "FAIL"
    bound = f" (limit {limit:g}s)" if limit else ""
    with capsys.disabled():
        print(f"\ncriterion {number:2d} {verdict}: {title} [{took:.2f}s{bound}]")
    assert ok, f"criterion {number} failed"
    assert timed, f"criterion {number} exceeded {limit}s ({took:.2f}s)"


# --- 1 ---------------------------------------------------------------------------------

def _interchange(rng):
    F = GF101
    U, V, W = (random_space(F, rng, -2, 2, 2, p) for p in "uvw")
    U2, V2, W2 = (random_space(F, rng, -2, 2, 2, p) for p in "xyz")
    a, b, c, e = (rng.randint(-1, 1) for _ in range(4))
    f1, f2 = random_map(F, rng, U, V, a), random_map(F, rng, V, W, c)
    g1, g2 = random_map(F, rng, U2, V2, b), random_map(F, rng, V2, W2, e)
    lhs = tensor_map(f2, g2).compose(tensor_map(f1, g1))
    rhs = tensor_map(f2.compose(f1), g2.compose(g1))
    s = sign(e, a)
    return all(lhs.image(x) == {k: F.signed(s, v) for k, v in rhs.image(x).items()}
               for x in lhs.source.all_labels())


def _dual_differential(rng):
    F = GF101
    U, _ = random_complex(F, rng, -2, 2, prefix="u")
    D = dual(U)
    for u in U.all_labels():
        for v, c in U.d.get(u, {}).items():
            # (dv*)(u) = (-1)^(|v*|+1) v*(du)
            want = F.signed(sign(-U.degree(v) + 1), c)
            if D.d.get(Dual(v), {}).get(Dual(u)) != want:
                return False
    total = sum(len(img) for img in D.d.values())
    return total == sum(len(img) for img in U.d.values())


def _canonical(rng):
    F = GF101
    U, _ = random_complex(F, rng, -1, 1, prefix="u")
    V, _ = random_complex(F, rng, -1, 1, prefix="v")
    return varpi(U, V).is_chain_map() and delta_hom(U, V).is_chain_map()


def test_criterion_01_sign_kernel(capsys):
    start = time.perf_counter()
    rng = random.Random(20261016)
    counts = {"interchange": 0, "dual differential": 0, "canonical maps": 0}
    ok = True
    for i in range(600):
        kind, fn = [("interchange", _interchange), ("dual differential", _dual_differential),
                    ("canonical maps", _canonical)][i % 3]
        ok = fn(rng) and ok
        counts[kind] += 1
    ok = ok and sum(counts.values()) >= 500
    report(capsys, 1, f"sign kernel on {sum(counts.values())} random instances", ok, start, 5)


# --- 2 ---------------------------------------------------------------------------------

def test_criterion_02_twisting_certification(capsys):
    start = time.perf_counter()
    ok = True
    for name in FOUR:
        A = corpus(name + ".alg", 12)
        t = tau_A(A, bar(A, 11))
        cert = acyclic_check(t, 10)
        ok = ok and t.is_twisting() and cert.acyclic
        ok = ok and cert.certified == list(range(10))
        ok = ok and cert.left_ranks == cert.right_ranks == {n: (1 if n == 0 else 0) for n in range(10)}
    report(capsys, 2, "τ^A twisting and acyclic to cutoff 10", ok, start, 30)


# --- 3 ---------------------------------------------------------------------------------

def test_criterion_03_three_bracketings(capsys):
    start = time.perf_counter()
    ok = True
    for name in FOUR + ["negative", "massey1"]:
        A = corpus(name + ".alg", 10)
        B = bar(A, 6)
        taus = [tau_A(A, B)]
        if name != "massey1":
            taus.append(priddy(A, 6).tau)
        for t in taus:
            for N, M in ((A.right_module(), A.left_module()), (A.trivial_module("right"), A.left_module()),
                         (A.right_module(), A.trivial_module()), (A.trivial_module("right"), A.trivial_module())):
                res = associativity_check(N, M, t)
                ok = ok and res["equal"] and res["basis_equal"]
    report(capsys, 3, "three bracketings of N⋊C⋉M agree exactly", ok, start)


# --- 4 ---------------------------------------------------------------------------------

def test_criterion_04_bar_cobar_counit(capsys):
    start = time.perf_counter()
    A = corpus("dual.alg", 12)
    O, _, q, _ = bar_cobar_counit(A, 6)
    H = Homology(O.carrier)
    ranks = tuple(H.rank(n) for n in range(6))
    ok = ranks == (1, 1, 0, 0, 0, 0) and all(H.is_certified(n) for n in range(6)) and q.holds
    report(capsys, 4, f"H(ΩB(dual numbers)) = {ranks}", ok, start, 10)


# --- 5 ---------------------------------------------------------------------------------

def test_criterion_05_koszul_verdicts(capsys):
    start = time.perf_counter()
    d = koszul_check(corpus("dual.alg", 12), 10)
    e = koszul_check(corpus("exterior2.alg", 12), 10)
    t = koszul_check(corpus("trunc3.alg", 12), 10)
    ok = d.koszul and e.koszul and not t.koszul and t.first_failure == 5
    ok = ok and d.ext_ranks == {-n: (1 if n % 2 == 0 else 0) for n in range(10)}
    ok = ok and e.ext_ranks == {-n: (n // 2 + 1 if n % 2 == 0 else 0) for n in range(10)}
    report(capsys, 5, "Koszul: dual and exterior accepted, trunc3 rejected at 5", ok, start)


# --- 6 ---------------------------------------------------------------------------------

def test_criterion_06_shriek_ranks(capsys):
    start = time.perf_counter()
    ok = True
    for name in FOUR + ["negative"]:
        A = corpus(name + ".alg", 12)
        qd = quadratic_dual(A, 10)
        pd = priddy(A, 10)
        C = pd.coalgebra
        shriek = {n: r for n, r in qd.shriek_ranks.items() if abs(n) <= 9}
        # the dual of A^< sits in the negated degrees
        ok = ok and all(C.carrier.rank(-n) == r for n, r in shriek.items())
        ok = ok and all(C.window.known(-n) for n in shriek)
        c = koszul_check(A, 10)
        if c.koszul:
            ok = ok and c.ext_ranks == {n: shriek.get(n, 0) for n in c.ext_ranks}
            ok = ok and set(c.ext_ranks) == {n for n in shriek}
    report(capsys, 6, "A^! ranks = (A^<)* ranks = Ext ranks when Koszul", ok, start)


# --- 7 ---------------------------------------------------------------------------------

def test_criterion_07_golod(capsys):
    start = time.perf_counter()
    ok = True
    for name in ("trivext1", "dual"):
        c = golod_check(corpus(name + ".alg", 12), 10)
        free = oracle.free_series([2], 9)
        ok = ok and c.verdict == "golod" and c.ext_ranks == {-n: free[n] for n in range(10)}
    c = golod_check(corpus("exterior2.alg", 12), 10)
    ok = ok and c.verdict == "not-golod" and c.products.witness == ("x1", "x2")
    report(capsys, 7, "Golod: trivext1 and dual accepted, exterior rejected at x1·x2", ok, start)


# --- 8 ---------------------------------------------------------------------------------

def test_criterion_08_moore(capsys):
    start = time.perf_counter()
    ok = True
    for name in ("dual", "exterior2", "trunc3"):
        A = corpus(name + ".alg", 12)
        t = tau_A(A, bar(A, 9))
        vals = moore_value_checks(t, 8)
        ok = ok and vals["holds"] and all(v["certified"] for v in vals.values() if isinstance(v, dict))
        first = sorted(A.ideal_labels(1), key=str)[0]
        two = quotient_module(A, [A.unit, first])
        ok = ok and two.carrier.dimension() == 2
        for M in (A.trivial_module(), A.left_module(), two):
            r = moore_unit_check(t, M, 8)
            ok = ok and r["holds"] and r["certified"] and r["transport_bijective"]
    report(capsys, 8, "Moore value isomorphisms and units for k, A and a 2-dim module", ok, start, 60)


# --- 9 ---------------------------------------------------------------------------------

def test_criterion_09_dual_transfer(capsys):
    start = time.perf_counter()
    ok = True
    seen = 0
    for name in FOUR + ["negative"]:
        A = corpus(name + ".alg", 12)
        B = bar(A, 8)
        for t in (tau_A(A, B), TwistingMap(B, A, {}), priddy(A, 8).tau):
            a, b = acyclic_check(t, 8), acyclic_check(dual_twisting(t), 8)
            ok = ok and a.acyclic == b.acyclic and b.certified == [-n for n in a.certified]
            seen += 1
    for name in ("massey1", "trivext1"):
        o = golod_check(corpus(name + ".alg", 12), 8).details["massey"]
        t = tau_from_massey(o)
        a, b = acyclic_check(t, 8), acyclic_check(dual_twisting(t), 8)
        ok = ok and a.acyclic and b.acyclic
        seen += 1
    report(capsys, 9, f"acyclicity of τ and τ* agree on {seen} twisting maps", ok, start)


# --- 10 --------------------------------------------------------------------------------

def _corpus_complexes():
    out = []
    for name in ["dual", "trunc3", "exterior2", "trivext1", "massey1", "negative", "nonhomog"]:
        A = corpus(name + ".alg", 10)
        B = bar(A, 8)
        out += [(name, A.carrier), (f"B({name})", B.carrier), (f"B({name})*", dual(B.carrier))]
        t = tau_A(A, B)
        out += [(f"A⋊B({name})", left_twisted(A.right_module(), B.left_comodule(), t)),
                (f"B⋉A({name})", right_twisted(B.right_comodule(), A.left_module(), t))]
        if name not in ("massey1", "nonhomog"):
            out.append((f"K({name})", koszul_construction(A, 7).module))
    with open(corpus_path("dualcoalg3.coalg"), encoding="utf-8") as fh:
        out.append(("Ω(dualcoalg3)", cobar(parse_coalgebra(fh.read()), 6).carrier))
    return out


def _cli(args, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    return subprocess.run([sys.executable, "-m", "dgkoszul.cli"] + args, capture_output=True, env=env).stdout


def test_criterion_10_oracle_and_determinism(capsys):
    start = time.perf_counter()
    ok = True
    checked = 0
    for name, X in _corpus_complexes():
        if X.dimension() > 200:
            continue
        H = Homology(X)
        want = oracle.dense_homology(X)
        ok = ok and all(H.rank(n) == r for n, r in want.items())
        ok = ok and all(want.get(n) == r for n, r in H.ranks.items() if H.certified[n])
        checked += 1
    runs = [["koszul-check", corpus_path("exterior2.alg"), "--cutoff", "8"],
            ["golod-check", corpus_path("massey1.alg"), "--cutoff", "6"],
            ["bar", corpus_path("trunc3.alg"), "--cutoff", "6", "--emit-matrices", "--format", "text"]]
    for args in runs:
        a, b = _cli(args, 1), _cli(args, 2)
        ok = ok and a == b and len(a) > 0
    ok = ok and checked >= 30
    report(capsys, 10, f"dense oracle on {checked} corpus complexes, byte-identical CLI", ok, start)
