"""Batch front end: build the algebras, run verification suites, export
reports.

Reports are deterministic: the same configuration produces byte-identical
output, one row per check with PASS or FAIL and the failure details.
Exit status is 0 when every selected check passes, 1 when any fails, 2
for usage errors.
"""

import argparse
import json
import sys
from fractions import Fraction

from .algebra import get_algebra
from .calculus import Calculus
from .hochschild import get_hochschild
from .barcomplex import check_comparison_squares, check_euler_degree
from . import verification as ver

ONE_ = Fraction(1)

SUITES = ("hilbert", "resolution", "hh", "cup", "calculus", "appendix")
T_ONLY = ("cup", "calculus")


class _Build:
    """Lazy shared state so suites reuse one resolution."""

    def __init__(self, kind, size, periods, deep=False):
        self.kind = kind
        self.size = size
        # products of window-1 classes live four periods out
        self.nterms = max(6 * periods + 1, 24 if deep else 0)
        self._hh = None
        self._cal = None

    @property
    def hh(self):
        if self._hh is None:
            self._hh = get_hochschild(self.kind, self.size, self.nterms)
        return self._hh

    @property
    def cal(self):
        if self._cal is None:
            self._cal = Calculus(self.hh)
        return self._cal


def _wrap(fn):
    try:
        fn()
        return []
    except ArithmeticError as e:
        return [str(e)]


def _suite_hilbert(b):
    yield "hilbert closed form", ver.check_hilbert(b.kind, b.size)
    if b.kind == "T":
        yield "center and cocenter", ver.check_structure(b.size)


def _suite_resolution(b):
    res = b.hh.res
    yield "differential squares to zero", _wrap(res.check_dd_zero)
    yield "interior exactness", _wrap(res.check_exactness)
    yield "period shift", _wrap(res.check_period_shift)
    if b.kind == "T":
        yield "self duality", _wrap(res.check_self_duality)


def _suite_hh(b):
    through = b.nterms - 1
    yield "cohomology dimensions", ver.check_cohomology_dims(
        b.kind, b.size, through_index=through)
    if b.kind == "T":
        yield "homology dimensions", ver.check_homology_dims(
            b.size, through_index=through)
        yield "Connes differential structure", ver.check_connes_structure(
            b.cal, through_index=7)
        yield "cyclic dimensions", ver.check_cyclic_dims(b.cal)


def _suite_cup(b):
    yield "cup product table", ver.check_cup_products(b.cal)
    yield "alpha matrix closed form", ver.check_alpha(
        b.kind, b.size, nterms=b.nterms)


def _suite_calculus(b):
    yield "duality squares", _wrap(lambda: b.cal.check_duality_squares(0))
    yield "Connes differential formulas", ver.check_connes_formulas(b.cal)
    yield "BV operator formulas", ver.check_bv_formulas(b.cal)
    yield "contraction table", ver.check_contraction_table(b.cal)
    yield "Lie derivative table", ver.check_lie_table(b.cal)
    yield "bracket table", ver.check_bracket_table(b.cal)
    yield "bracket properties", ver.check_bracket_properties(b.cal)
    yield "chain comparison squares", check_comparison_squares(b.hh)
    yield "degree action transport", check_euler_degree(b.hh)


def _suite_appendix(b):
    if b.kind == "T":
        for m in (4, 5):
            yield f"alpha matrix chain case {m}", ver.check_alpha("A", m)
        if b.size <= 2:
            yield (f"folded dimension comparison {b.size}",
                   ver.check_folded_comparison(b.size))
    else:
        if b.size in (4, 5):
            yield "alpha matrix closed form", ver.check_alpha("A", b.size)
        if b.size % 2 == 0 and b.size <= 4:
            yield (f"folded dimension comparison {b.size // 2}",
                   ver.check_folded_comparison(b.size // 2))


_RUNNERS = {
    "hilbert": _suite_hilbert,
    "resolution": _suite_resolution,
    "hh": _suite_hh,
    "cup": _suite_cup,
    "calculus": _suite_calculus,
    "appendix": _suite_appendix,
}


def run_verify(kind, size, suites, periods):
    deep = any(s in ("cup", "calculus") for s in suites)
    b = _Build(kind, size, periods, deep=deep)
    rows = []
    for suite in suites:
        for name, failures in _RUNNERS[suite](b):
            rows.append({
                "suite": suite,
                "check": name,
                "status": "FAIL" if failures else "PASS",
                "detail": sorted(failures),
            })
    return rows


def render_report(config, rows, fmt):
    if fmt == "json":
        doc = {
            "config": config,
            "checks": rows,
            "summary": {
                "passed": sum(r["status"] == "PASS" for r in rows),
                "failed": sum(r["status"] == "FAIL" for r in rows),
            },
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    lines = ["suite\tcheck\tstatus\tdetail"]
    for r in rows:
        lines.append("\t".join(
            [r["suite"], r["check"], r["status"], "; ".join(r["detail"])]))
    return "\n".join(lines) + "\n"


def dump_algebra(kind, size):
    A = get_algebra(kind, size)
    verts = A.quiver.vertices
    hilbert = [[[len(A.block_indices(d, i, j)) for j in verts]
                for i in verts] for d in range(A.top_degree + 1)]
    triples = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in A.mul({i: ONE_}, {j: ONE_}).items():
                triples.append([i, j, k, str(c)])
    doc = {
        "quiver": A.quiver.to_dict(),
        "basis": [
            {"index": bp.index, "degree": bp.degree, "source": bp.source,
             "target": bp.target, "word": list(bp.word)}
            for bp in A.basis
        ],
        "hilbert": hilbert,
        "structure_constants": triples,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _parser():
    p = argparse.ArgumentParser(
        prog="preproj",
        description="exact homological calculus for path-with-loop quivers")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--type", choices=("t", "a"), required=True,
                   help="quiver family")
    v.add_argument("--n", type=int, required=True, help="family size")
    v.add_argument("--suite", action="append", choices=SUITES + ("all",),
                   help="suite to run, repeatable (default all)")
    v.add_argument("--periods", type=int, default=2,
                   help="resolution periods to build (default 2)")
    v.add_argument("--format", choices=("json", "tsv"), default="json")
    v.add_argument("--out", help="write the report here instead of stdout")

    d = sub.add_parser("dump", help="export the algebra as JSON")
    d.add_argument("--type", choices=("t", "a"), required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--out", help="write the dump here instead of stdout")
    return p


def main(argv=None):
    p = _parser()
    args = p.parse_args(argv)
    kind = args.type.upper()
    if args.n < 1 or (kind == "A" and args.n < 2):
        p.error("size out of range for the family")

    if args.command == "dump":
        text = dump_algebra(kind, args.n)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0

    suites = args.suite or ["all"]
    if "all" in suites:
        suites = [s for s in SUITES
                  if kind == "T" or s not in T_ONLY]
    else:
        seen = []
        for s in suites:
            if s not in seen:
                seen.append(s)
        suites = seen
        if kind == "A":
            blocked = [s for s in suites if s in T_ONLY]
            if blocked:
                p.error(f"suite {blocked[0]} needs the loop family")

    if args.periods < 2:
        p.error("need at least two periods")

    rows = run_verify(kind, args.n, suites, args.periods)
    config = {"type": args.type, "n": args.n, "periods": args.periods,
              "suites": suites}
    text = render_report(config, rows, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r["status"] == "PASS" for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
