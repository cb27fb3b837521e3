"""Command-line front end.

Every command reads one input file, runs one check and prints a report,
JSON by default. Exit status: 0 certified pass, 1 certified fail,
2 inconclusive, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .bar_cobar import bar, cobar, tau_A
from .chains import DifferentialError, Homology, InputError, WindowError, read_complex
from .dg_algebra import DGAlgebra, StructureError, from_presentation, parse_presentation
from .dg_coalgebra import parse_coalgebra
from .duality import dual_algebra_to_coalgebra, ext_ranks, moore_unit_check, moore_value_checks
from .golod import PolarityError as HomologyPolarityError, golod_check
from .koszul import koszul_check, priddy, quadratic_dual, two_homogeneous_check
from .labels import render
from .scalars import field_ops
from .twisting import PolarityError, acyclic_check, natural_resolution

SCHEMA_VERSION = "1"
PASS, FAIL, INCONCLUSIVE, INPUT_ERROR = 0, 1, 2, 3
COMMANDS = ["homology", "bar", "cobar", "acyclic-check", "ext", "quadratic-dual",
            "koszul-check", "golod-check", "moore-check", "resolve"]


def _ranks(d: dict) -> dict:
    return {str(n): r for n, r in sorted(d.items())}


def _matrices(X) -> dict:
    F = X.F
    out = {}
    for n in sorted(X.basis):
        rows = []
        for col in X.basis[n]:
            for row, c in X.d.get(col, {}).items():
                rows.append([render(row), render(col), F.render(c)])
        if rows:
            out[str(n)] = sorted(rows)
    return out


def _homology_table(X, cutoff) -> dict:
    H = Homology(X)
    keep = lambda n: abs(n) <= cutoff - 1
    return {
        "ranks": _ranks({n: X.rank(n) for n in X.degrees() if keep(n)}),
        "homology_ranks": _ranks({n: r for n, r in H.ranks.items() if keep(n)}),
        "certified": {str(n): bool(H.certified[n]) for n in sorted(H.ranks) if keep(n)},
    }


class Job:
    def __init__(self, args):
        self.args = args
        self.text = _read(args.input)
        self.cutoff = args.cutoff
        if self.cutoff < 2:
            raise InputError("cutoff must be at least 2")

    def field(self, file_spec=None):
        spec = self.args.field or file_spec or "gf:101"
        try:
            return field_ops(spec)
        except ValueError as e:
            raise InputError(str(e)) from None

    def algebra(self, extra: int = 2) -> DGAlgebra:
        P = parse_presentation(self.text)
        P.name = P.name or _stem(self.args.input)
        return from_presentation(P, self.cutoff + extra, self.args.polarity, self.field(P.field_spec))

    def header(self, F) -> dict:
        return {"schema_version": SCHEMA_VERSION, "command": self.args.command,
                "input": os.path.basename(self.args.input), "field": str(F.spec),
                "cutoff": self.cutoff}


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _stem(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def _is_header(text: str, word: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return line.split()[0] == word
    return False


# --- commands ------------------------------------------------------------------------

def cmd_homology(job: Job):
    if _is_header(job.text, "complex"):
        F = job.field()
        X = read_complex(job.text, F)
    else:
        A = job.algebra(extra=1)
        F, X = A.F, A.carrier
    rep = job.header(F)
    rep.update(_homology_table(X, job.cutoff))
    if job.args.emit_matrices:
        rep["matrices"] = _matrices(X)
    return rep, PASS


def cmd_bar(job: Job):
    A = job.algebra()
    B = bar(A, job.cutoff)
    rep = job.header(A.F)
    rep["polarity"] = A.bar_polarity()
    rep.update(_homology_table(B.carrier, job.cutoff))
    if job.args.emit_matrices:
        rep["matrices"] = _matrices(B.carrier)
    return rep, PASS


def cmd_cobar(job: Job):
    if _is_header(job.text, "coalgebra"):
        C = parse_coalgebra(job.text, field_ops(job.args.field) if job.args.field else None)
        C.name = _stem(job.args.input)
        source = "coalgebra"
    else:
        A = job.algebra()
        C = dual_algebra_to_coalgebra(A)
        source = "dual of the algebra"
    O = cobar(C, job.cutoff)
    rep = job.header(C.F)
    rep["source"] = source
    rep["polarity"] = C.cobar_polarity()
    rep.update(_homology_table(O.carrier, job.cutoff))
    if job.args.emit_matrices:
        rep["matrices"] = _matrices(O.carrier)
    return rep, PASS


def _twisting(job: Job, A: DGAlgebra):
    if job.args.twisting == "priddy":
        return priddy(A, job.cutoff).tau
    return tau_A(A, bar(A, job.cutoff + 1))


def cmd_acyclic(job: Job):
    A = job.algebra()
    t = _twisting(job, A)
    cert = acyclic_check(t, job.cutoff)
    rep = job.header(A.F)
    rep["twisting_map"] = t.name
    rep["certificate"] = cert.as_dict()
    rep["verdict"] = "acyclic" if cert.acyclic else "not-acyclic"
    return rep, PASS if cert.acyclic else FAIL


def cmd_ext(job: Job):
    A = job.algebra()
    t = _twisting(job, A)
    res = ext_ranks(t, cutoff=job.cutoff)
    rep = job.header(A.F)
    rep["twisting_map"] = t.name
    rep["ext_ranks"] = _ranks(res["ranks"])
    rep["coalgebra_dual_ranks"] = _ranks(res["coalgebra_dual_ranks"])
    rep["routes_agree"] = res["agree"]
    rep["certified_degrees"] = sorted(res["ranks"])
    return rep, PASS if res["agree"] else FAIL


def cmd_quadratic_dual(job: Job):
    A = job.algebra()
    th = two_homogeneous_check(A)
    rep = job.header(A.F)
    rep["two_homogeneity"] = th.as_dict()
    if not th.holds:
        rep["verdict"] = "not-two-homogeneous"
        return rep, FAIL
    rep["quadratic_dual"] = quadratic_dual(A, job.cutoff).as_dict()
    rep["verdict"] = "ok"
    return rep, PASS


def cmd_koszul(job: Job):
    A = job.algebra()
    th = two_homogeneous_check(A)
    cert = koszul_check(A, job.cutoff)
    rep = job.header(A.F)
    rep["two_homogeneity"] = th.as_dict()
    rep["certificate"] = cert.as_dict()
    rep["verdict"] = "koszul" if cert.koszul else "not-koszul"
    return rep, PASS if cert.koszul else FAIL


def cmd_golod(job: Job):
    A = job.algebra()
    try:
        cert = golod_check(A, job.cutoff)
    except HomologyPolarityError as e:
        raise InputError(f"homology polarity: {e}") from None
    rep = job.header(A.F)
    rep["certificate"] = cert.as_dict()
    rep["verdict"] = cert.verdict
    code = {"golod": PASS, "not-golod": FAIL}.get(cert.verdict, INCONCLUSIVE)
    return rep, code


def _modules(job: Job, A: DGAlgebra):
    mods = {"k": A.trivial_module("left")}
    if A.window.zero_above and A.window.zero_below:
        mods["A"] = A.left_module()
    return mods


def cmd_moore(job: Job):
    A = job.algebra()
    t = tau_A(A, bar(A, job.cutoff + 1))
    vals = moore_value_checks(t, job.cutoff)
    rep = job.header(A.F)
    rep["values"] = {k: {"holds": v["holds"], "certified": v["certified"]}
                     for k, v in vals.items() if isinstance(v, dict)}
    units = {}
    for nm, M in _modules(job, A).items():
        r = moore_unit_check(t, M, job.cutoff)
        units[nm] = {"holds": r["holds"], "certified": r["certified"],
                     "transport_bijective": r["transport_bijective"]}
    rep["unit"] = units
    ok = vals["holds"] and all(u["holds"] for u in units.values())
    rep["verdict"] = "holds" if ok else "fails"
    return rep, PASS if ok else FAIL


def cmd_resolve(job: Job):
    A = job.algebra()
    t = _twisting(job, A)
    mods = _modules(job, A)
    if job.args.module not in mods:
        raise InputError(f"module {job.args.module!r} is not available for this algebra")
    M = mods[job.args.module]
    S, eps, q = natural_resolution(t, M)
    keep = lambda n: abs(n) <= job.cutoff - 1
    per = {n: v for n, v in q.per_degree.items() if keep(n)}
    rep = job.header(A.F)
    rep["twisting_map"] = t.name
    rep["module"] = job.args.module
    rep["resolution_ranks"] = _ranks({n: S.rank(n) for n in S.degrees() if keep(n)})
    rep["quasi_isomorphism"] = {str(n): v for n, v in sorted(per.items())}
    ok = all(v for v in per.values() if v is not None)
    rep["verdict"] = "resolution" if ok else "not-a-resolution"
    return rep, PASS if ok else FAIL


HANDLERS = {
    "homology": cmd_homology, "bar": cmd_bar, "cobar": cmd_cobar,
    "acyclic-check": cmd_acyclic, "ext": cmd_ext, "quadratic-dual": cmd_quadratic_dual,
    "koszul-check": cmd_koszul, "golod-check": cmd_golod, "moore-check": cmd_moore,
    "resolve": cmd_resolve,
}


# --- output --------------------------------------------------------------------------

def _text(rep, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    for k, v in rep.items():
        if isinstance(v, dict) and v and all(_is_degree(x) for x in v) and \
                all(not isinstance(y, (dict, list)) for y in v.values()):
            lines.append(f"{pad}{k}:")
            degs = sorted(v, key=int)
            w = max(len(d) for d in degs)
            for d in degs:
                lines.append(f"{pad}  {d.rjust(w)}  {_scalar(v[d])}")
        elif isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_text(v, indent + 1))
        elif isinstance(v, list):
            lines.append(f"{pad}{k}: " + ", ".join(json.dumps(x, ensure_ascii=False, sort_keys=True)
                                                 if isinstance(x, (dict, list)) else _scalar(x) for x in v))
        else:
            lines.append(f"{pad}{k}: {_scalar(v)}")
    return lines


def _is_degree(s) -> bool:
    try:
        int(s)
        return True
    except (TypeError, ValueError):
        return False


def _scalar(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    return str(x)


def render_report(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return "\n".join(_text(_sorted(rep))) + "\n"


def _sorted(rep):
    if isinstance(rep, dict):
        return {k: _sorted(rep[k]) for k in sorted(rep)}
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dgkoszul", description="Koszul duality checks for DG algebras.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("input")
        s.add_argument("--field", default=None, help="gf:<p> or q (default gf:101)")
        s.add_argument("--cutoff", type=int, default=10)
        s.add_argument("--polarity", choices=["p", "n"], default=None)
        s.add_argument("--format", choices=["json", "text"], default="json")
        s.add_argument("--emit-matrices", action="store_true")
        if name in ("acyclic-check", "ext", "resolve"):
            s.add_argument("--twisting", choices=["bar", "priddy"], default="bar")
        if name == "resolve":
            s.add_argument("--module", choices=["k", "A"], default="k")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        job = Job(args)
        rep, code = HANDLERS[args.command](job)
    except DifferentialError as e:
        return _input_error(args, out, err, str(e), {"degree": e.degree, "source": render(e.source),
                                                      "target": render(e.target), "coefficient": e.coeff})
    except (InputError, PolarityError, StructureError, WindowError, ValueError) as e:
        return _input_error(args, out, err, str(e), None)
    out.write(render_report(rep, args.format))
    return code


def _input_error(args, out, err, msg, witness) -> int:
    err.write(f"dgkoszul: error: {msg}\n")
    rep = {"schema_version": SCHEMA_VERSION, "command": args.command, "error": msg, "witness": witness}
    out.write(render_report(rep, args.format))
    return INPUT_ERROR


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
