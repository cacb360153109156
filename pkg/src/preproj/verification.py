"""Closed-form expectations for the desk-scale algebras.

Every function returns a list of failure strings, empty when the check
passes.  The expectations are closed forms: graded dimension tables, the
cup product table, the Connes differential, the BV operator, and the
three calculus tables (contraction, Gerstenhaber bracket, Lie
derivative).  The CLI verify subcommand and the test suite both run these.
"""

from fractions import Fraction

from .algebra import get_algebra
from .hochschild import HClass, get_hochschild
from .calculus import (Calculus, alpha_closed_form, alpha_folded_form,
                       _invert)

ZERO = Fraction(0)
ONE = Fraction(1)


def _scale(c, cls):
    return HClass(cls.side, cls.index, cls.degree,
                  tuple(Fraction(c) * x for x in cls.coords))


def _add(a, b):
    if (a.side, a.index, a.degree) != (b.side, b.index, b.degree):
        raise ArithmeticError("adding classes from different spaces")
    return HClass(a.side, a.index, a.degree,
                  tuple(x + y for x, y in zip(a.coords, b.coords)))


class _Named:
    """Builds signed combinations of named classes on either side."""

    def __init__(self, cal: Calculus):
        self.cal = cal
        self.h = cal.h
        self.n = cal.A.nvert
        self.M = alpha_closed_form(cal.A)
        self.Minv = _invert(self.M)

    def _valid(self, fam, k):
        if fam in ("z", "th", "ze", "ps"):
            return k >= 0 and k <= self.h - 3 and k % 2 == 0
        return 1 <= k <= self.n

    def combo(self, side, terms, like):
        """Sum of named classes on the given side; like fixes the target
        space when every term dies."""
        total = None
        for (c, fam, k, w) in terms:
            if not c or w < 0 or not self._valid(fam, k):
                continue
            cls = (self.cal.hom_named_cls(fam, k, w) if side == "hom"
                   else self.cal.named.cls(fam, k, w))
            total = _scale(c, cls) if total is None else \
                _add(total, _scale(c, cls))
        return total

    def alpha_terms(self, k, w, coeff=ONE):
        """alpha(f_k) in the h-line at window w."""
        return [(coeff * self.M[p][k - 1], "h", p + 1, w)
                for p in range(self.n)]

    def alpha_inv_terms(self, k, w, coeff=ONE):
        """alpha^{-1}(h_k) in the f-line at window w."""
        return [(coeff * self.Minv[p][k - 1], "f", p + 1, w)
                for p in range(self.n)]


# ----------------------------------------------------------------------
# table expectations; (a-family, b-family) -> list of terms

def _contraction_terms(nd, ra, k, s, cb, l, t):
    h, n = nd.h, nd.n
    w = t - s
    pair = (ra, cb)
    if ra == "om":
        return []
    if ra == "z":
        if cb in ("ps", "ze"):
            return [(1, cb, l - k, w)]
        if cb in ("h", "f"):
            return [(1 if k == 0 else 0, cb, l, w)]
        return [(1, cb, k + l, w)]
    if pair == ("th", "ze"):
        return [(1, "ps", l - k, w)]
    if pair == ("th", "f"):
        return nd.alpha_terms(l, w) if k == 0 else []
    if pair == ("th", "z"):
        return [(1, "th", k + l, w)]
    if pair == ("f", "ps"):
        return [(k if l == h - 3 else 0, "th", h - 3, w - 1)]
    if pair == ("f", "ze"):
        return [(k if l == h - 3 else 0, "z", h - 3, w - 1)]
    if pair == ("f", "h"):
        return [(1 if k == l else 0, "ps", 0, w)]
    if pair == ("f", "f"):
        return [(nd.M[k - 1][l - 1], "ze", 0, w)]
    if pair == ("f", "th"):
        return nd.alpha_terms(k, w) if l == 0 else []
    if pair == ("f", "z"):
        return [(1 if l == 0 else 0, "f", k, w)]
    if pair == ("h", "ze"):
        return [(1 if (k == n and l == h - 3) else 0, "th", h - 3, w - 1)]
    if pair == ("h", "f"):
        return [(1 if k == l else 0, "ps", 0, w)]
    if pair == ("h", "z"):
        return [(1 if l == 0 else 0, "h", k, w)]
    if pair == ("ze", "ps"):
        return (nd.alpha_terms(n, w - 1)
                if (k == h - 3 and l == h - 3) else [])
    if pair == ("ze", "ze"):
        return [(1 if (k == h - 3 and l == h - 3) else 0, "f", n, w - 1)]
    if pair == ("ze", "h"):
        return [(1 if (k == h - 3 and l == n) else 0, "th", h - 3, w - 1)]
    if pair == ("ze", "f"):
        return [(l if k == h - 3 else 0, "z", h - 3, w - 1)]
    if pair == ("ze", "th"):
        return [(1, "ps", k - l, w)]
    if pair == ("ze", "z"):
        return [(1, "ze", k - l, w)]
    if pair == ("ps", "ze"):
        return (nd.alpha_terms(n, w - 1)
                if (k == h - 3 and l == h - 3) else [])
    if pair == ("ps", "f"):
        return [(l if k == h - 3 else 0, "th", h - 3, w - 1)]
    if pair == ("ps", "z"):
        return [(1, "ps", k - l, w)]
    if ra in ("th", "h", "ps"):
        return []
    raise ValueError(pair)


def _lie_terms(nd, ra, k, s, cb, l, t):
    h, n = nd.h, nd.n
    w = t - s
    pair = (ra, cb)
    if ra == "th":
        if cb == "ps":
            return [((2 * t + 1) * h - 2 - l, "ps", l - k, w)]
        if cb == "ze":
            return [((2 * w + 1) * h - 2 - l + k, "ze", l - k, w)]
        if cb == "h":
            return [((2 * t + 1) * h if k == 0 else 0, "h", l, w)]
        if cb == "f":
            return [((2 * w + 1) * h if k == 0 else 0, "f", l, w)]
        if cb == "th":
            return [((2 * t + 1) * h + 2 + l, "th", k + l, w)]
        return [((2 * w + 1) * h + 2 + k + l, "z", k + l, w)]
    if pair == ("f", "ps"):
        return [(-2 * k * (1 + s * h) if l == h - 3 else 0,
                 "z", h - 3, w - 1)]
    if pair == ("f", "h"):
        return [(-2 * (1 + s * h) if k == l else 0, "ze", 0, w)]
    if pair == ("f", "th"):
        return [(-2 * (1 + s * h) if l == 0 else 0, "f", k, w)]
    if pair == ("h", "ps"):
        return [(2 * t * h + 1 if (k == n and l == h - 3) else 0,
                 "th", h - 3, w - 1)]
    if pair == ("h", "ze"):
        return [(2 * w * h - 1 if (k == n and l == h - 3) else 0,
                 "z", h - 3, w - 1)]
    if pair == ("h", "h"):
        return [((2 * t + 1) * h * nd.Minv[l - 1][k - 1], "ps", 0, w)]
    if pair == ("h", "f"):
        return [((2 * w + 1) * h - 2 if k == l else 0, "ze", 0, w)]
    if pair == ("h", "th"):
        return [((2 * t + 1) * h + 2 if l == 0 else 0, "h", k, w)]
    if pair == ("h", "z"):
        return (nd.alpha_inv_terms(k, w, coeff=(2 * w + 1) * h)
                if l == 0 else [])
    if pair == ("ze", "ps"):
        return [(-((2 * s + 1) * h + 1)
                 if (k == h - 3 and l == h - 3) else 0, "f", n, w - 1)]
    if pair == ("ze", "h"):
        return [(-((2 * s + 1) * h + 1)
                 if (k == h - 3 and l == n) else 0, "z", h - 3, w - 1)]
    if pair == ("ze", "th"):
        return [(-(2 * s * h + 4 + k), "ze", k - l, w)]
    if pair == ("ps", "ps"):
        return (nd.alpha_terms(n, w - 1, coeff=2 * t * h + 1)
                if (k == h - 3 and l == h - 3) else [])
    if pair == ("ps", "ze"):
        return [((2 * w - 1) * h if (k == h - 3 and l == h - 3) else 0,
                 "f", n, w - 1)]
    if pair == ("ps", "h"):
        return [((2 * t + 1) * h if (k == h - 3 and l == n) else 0,
                 "th", h - 3, w - 1)]
    if pair == ("ps", "f"):
        return [(l * (2 * w * h - 1) if k == h - 3 else 0,
                 "z", h - 3, w - 1)]
    if pair == ("ps", "th"):
        return [((2 * t + 1) * h + 2 + l, "ps", k - l, w)]
    if pair == ("ps", "z"):
        return [((2 * w + 1) * h - 2 - k + l, "ze", k - l, w)]
    if pair == ("z", "ps"):
        return [(k - 2 * s * h, "ze", l - k, w)]
    if pair == ("z", "h"):
        return (nd.alpha_inv_terms(l, w, coeff=-2 * s * h)
                if k == 0 else [])
    if pair == ("z", "th"):
        return [(k - 2 * s * h, "z", k + l, w)]
    if ra in ("f", "h", "ze", "ps", "z"):
        return []
    raise ValueError(pair)


def _bracket_terms(nd, ra, k, s, cb, l, t):
    h, n = nd.h, nd.n
    u = s + t
    if ra == "om" or cb == "om":
        return []
    pair = (ra, cb)
    if pair == ("z", "z"):
        return []
    if pair == ("z", "th"):
        return [(k - 2 * s * h, "z", k + l, u)]
    if pair == ("z", "f"):
        return []
    if pair == ("z", "h"):
        return (nd.alpha_inv_terms(l, u, coeff=-2 * s * h)
                if k == 0 else [])
    if pair == ("z", "ze"):
        return []
    if pair == ("z", "ps"):
        return [(k - 2 * s * h, "ze", l - k, u)]
    if pair == ("th", "th"):
        return [(l - k + 2 * (s - t) * h, "th", k + l, u)]
    if pair == ("th", "f"):
        return [(-2 * (1 + t * h) if k == 0 else 0, "f", l, u)]
    if pair == ("th", "h"):
        return [(2 * (-1 + (s - t) * h) if k == 0 else 0, "h", l, u)]
    if pair == ("th", "ze"):
        return [(-(4 + l + 2 * t * h), "ze", l - k, u)]
    if pair == ("th", "ps"):
        return [(-(4 + k + l + 2 * (t - s) * h), "ps", l - k, u)]
    if pair == ("f", "f"):
        return []
    if pair == ("f", "h"):
        return [(-2 * (1 + s * h) if k == l else 0, "ze", 0, u)]
    if pair == ("f", "ze"):
        return []
    if pair == ("f", "ps"):
        return [(-2 * k * (1 + s * h) if l == h - 3 else 0,
                 "z", h - 3, u + 1)]
    if pair == ("h", "h"):
        return [(2 * (s - t) * h * nd.Minv[k - 1][l - 1], "ps", 0, u)]
    if pair == ("h", "ze"):
        return [(-(h + 1 + 2 * t * h)
                 if (k == n and l == h - 3) else 0, "z", h - 3, u + 1)]
    if pair == ("h", "ps"):
        return [((2 * (s - t) * h - (h - 1))
                 if (k == n and l == h - 3) else 0,
                 "th", h - 3, u + 1)]
    if pair == ("ze", "ze"):
        return []
    if pair == ("ze", "ps"):
        return [(-(2 * s * h + h + 1)
                 if (k == h - 3 and l == h - 3) else 0, "f", n, u + 1)]
    if pair == ("ps", "ps"):
        return (nd.alpha_terms(n, u + 1, coeff=2 * (s - t) * h)
                if (k == h - 3 and l == h - 3) else [])
    raise ValueError(pair)


_COCH_ORDER = ("z", "om", "th", "f", "h", "ze", "ps")
_HOM_COLS = ("ps", "ze", "h", "f", "th", "z")


def _labels(nd, fams, windows, with_om):
    out = []
    for fam in fams:
        if fam == "om":
            if with_om:
                out.extend(("om", i, 0) for i in range(1, nd.n + 1))
            continue
        ks = (range(1, nd.n + 1) if fam in ("f", "h")
              else range(0, nd.h - 2, 2))
        for k in ks:
            for w in windows:
                out.append((fam, k, w))
    return out


def check_contraction_table(cal, windows=(0, 1)):
    nd = _Named(cal)
    bad = []
    rows = _labels(nd, _COCH_ORDER, windows, with_om=True)
    cols = _labels(nd, _HOM_COLS, windows, with_om=False)
    for (ra, k, s) in rows:
        a = cal.named.cls(ra, k, s)
        for (cb, l, t) in cols:
            b = cal.hom_named_cls(cb, l, t)
            got = cal.contract(a, b)
            want = nd.combo("hom", _contraction_terms(nd, ra, k, s,
                                                      cb, l, t),
                            like=got)
            if want is None:
                if got.index >= 0 and not got.is_zero():
                    bad.append(f"iota {ra}{k}^({s}) {cb}{l},{t}: "
                               f"expected 0")
            elif got != want:
                bad.append(f"iota {ra}{k}^({s}) {cb}{l},{t}")
    return bad


def check_lie_table(cal, windows=(0, 1)):
    nd = _Named(cal)
    bad = []
    rows = _labels(nd, ("th", "f", "h", "ze", "ps", "z"), windows, False)
    cols = _labels(nd, _HOM_COLS, windows, with_om=False)
    for (ra, k, s) in rows:
        a = cal.named.cls(ra, k, s)
        for (cb, l, t) in cols:
            b = cal.hom_named_cls(cb, l, t)
            got = cal.lie(a, b)
            want = nd.combo("hom", _lie_terms(nd, ra, k, s, cb, l, t),
                            like=got)
            if want is None:
                if got.index >= 0 and not got.is_zero():
                    bad.append(f"L {ra}{k}^({s}) {cb}{l},{t}: expected 0")
            elif got != want:
                bad.append(f"L {ra}{k}^({s}) {cb}{l},{t}")
    return bad


def check_bracket_table(cal, windows=(0, 1)):
    """Entrywise bracket table; every cell must be independent of the
    duality window.  The one exception is bracketing a socle class with
    the Euler class: the socle sits outside the duality, the cell is
    outside the BV route's domain, and each window w reports the value
    -((2w+1)h+2) om_k instead.  That exact shape is asserted."""
    nd = _Named(cal)
    h = nd.h
    bad = []
    labels = _labels(nd, _COCH_ORDER, windows, with_om=True)
    order = {fam: i for i, fam in enumerate(_COCH_ORDER)}
    for ia, (ra, k, s) in enumerate(labels):
        a = cal.named.cls(ra, k, s)
        for (cb, l, t) in labels[ia:]:
            if order[cb] < order[ra]:
                continue
            if ra == cb and ((l, t) < (k, s)):
                continue
            b = cal.named.cls(cb, l, t)
            label = f"[{ra}{k}^({s}),{cb}{l}^({t})]"
            if ra == "om" and cb == "th" and l == 0 and t == 0:
                try:
                    cal.bracket(a, b)
                except ArithmeticError:
                    for w in (0, 1):
                        want = _scale(-((2 * w + 1) * h + 2), a)
                        if cal.bracket(a, b, w) != want:
                            bad.append(label + f": window {w} value")
                else:
                    bad.append(label + ": expected window dependence")
                continue
            try:
                got = cal.bracket(a, b)
            except ArithmeticError:
                bad.append(label + ": window dependent")
                continue
            want = nd.combo("coh", _bracket_terms(nd, ra, k, s, cb, l, t),
                            like=got)
            if want is None:
                if not got.is_zero():
                    bad.append(label + ": expected 0")
            elif got != want:
                bad.append(label)
    return bad


def check_bracket_properties(cal):
    """Graded antisymmetry, the Leibniz rule, and agreement of the BV
    route with the contraction-identity route on sampled classes."""
    nd = _Named(cal)
    N = cal.named.cls
    bad = []
    top = nd.h - 3
    names = sorted(set([("z", top, 0), ("th", 0, 0), ("th", top, 0),
                        ("f", 1, 0), ("h", nd.n, 0), ("ze", top, 0),
                        ("ps", top, 0), ("f", nd.n, 1)]))
    samples = [N(*lab) for lab in names]
    for i, a in enumerate(samples):
        for j in range(i, len(samples)):
            b = samples[j]
            ab = cal.gerstenhaber(a, b)
            ba = cal.gerstenhaber(b, a)
            sgn = -ONE if ((a.index - 1) * (b.index - 1)) % 2 else ONE
            if ab != _scale(-sgn, ba):
                bad.append(f"antisymmetry {names[i]} {names[j]}")
            if cal.bracket(a, b) != cal.bracket_via_calculus(a, b):
                bad.append(f"route disagreement {names[i]} {names[j]}")
    for a in samples[:4]:
        for b in samples[2:6]:
            for c in samples[4:]:
                lhs = cal.gerstenhaber(a, cal.cup(b, c))
                sgn = -ONE if ((a.index - 1) * b.index) % 2 else ONE
                rhs = _add(cal.cup(cal.gerstenhaber(a, b), c),
                           _scale(sgn, cal.cup(b, cal.gerstenhaber(a, c))))
                if lhs != rhs:
                    bad.append("leibniz failure")
    return bad


# ----------------------------------------------------------------------
# dimension tables

def expected_cohomology_dims(kind, size, index):
    """Graded dimensions of the index-th cohomology for the desk cases,
    from the closed forms; window shifts handled by the caller through
    the rigid periodicity."""
    if kind == "T":
        n, h = size, 2 * size + 1
        if index == 0:
            d = {k: 1 for k in range(0, 2 * n - 1, 2)}
            d[h - 2] = n
            return d
        if index == 1:
            return {k: 1 for k in range(0, 2 * n - 1, 2)}
        if index in (2, 3):
            return {-2: n}
        if index in (4, 5):
            return {k: 1 for k in range(-h - 1, -3, 2) if (k + 4) % 2 == 0}
        if index == 6:
            return {k: 1 for k in range(-2 * h, -h - 2, 2)}
        raise ValueError(index)
    raise ValueError(kind)


def check_cohomology_dims(kind, size, through_index=12):
    hh = get_hochschild(kind, size, nterms=through_index + 2)
    bad = []
    if kind == "T":
        h = hh.h
        for i in range(through_index + 1):
            if i == 0:
                want = expected_cohomology_dims(kind, size, 0)
            else:
                base = ((i - 1) % 6) + 1
                shift = 2 * h * ((i - 1) // 6)
                tab = expected_cohomology_dims(kind, size, base)
                want = {d - shift: v for d, v in tab.items()}
            got = dict(hh.cohomology_dims(i))
            if got != want:
                bad.append(f"HH^{i} dims: got {got} want {want}")
    return bad


def expected_homology_dims(size, index):
    n, h = size, 2 * size + 1
    if index == 0:
        d = {k: 1 for k in range(1, h - 1, 2)}
        d[0] = n
        return d
    if index == 1:
        return {k: 1 for k in range(1, h - 1, 2)}
    if index in (2, 3):
        return {h: n}
    if index in (4, 5):
        return {k: 1 for k in range(h + 2, 2 * h, 2)}
    if index == 6:
        return {k: 1 for k in range(2 * h + 1, 3 * h - 1, 2)}
    raise ValueError(index)


def check_homology_dims(size, through_index=12):
    hh = get_hochschild("T", size, nterms=through_index + 2)
    h = hh.h
    bad = []
    for i in range(through_index + 1):
        if i == 0:
            want = expected_homology_dims(size, 0)
        else:
            base = ((i - 1) % 6) + 1
            shift = 2 * h * ((i - 1) // 6)
            want = {d + shift: v
                    for d, v in expected_homology_dims(size, base).items()}
        got = dict(hh.homology_dims(i))
        if got != want:
            bad.append(f"HH_{i} dims: got {got} want {want}")
    return bad


# ----------------------------------------------------------------------
# cup product table

def check_cup_products(cal):
    nd = _Named(cal)
    hh = cal.hh
    h, n = nd.h, nd.n
    top = h - 3
    nm = cal.named
    M = nd.M
    bad = []

    def N(fam, k, s=0):
        return nm.cls(fam, k, s)

    def expect(label, got, terms):
        want = nd.combo("coh", terms, like=got)
        if want is None:
            if not got.is_zero():
                bad.append(label + ": expected 0")
        elif got != want:
            bad.append(label)

    ks = nm.parameters("z")
    for a in ks:
        for b in ks:
            expect(f"z{a} z{b}", cal.cup(N("z", a), N("z", b)),
                   [(1, "z", a + b, 0)])
            expect(f"z{a} th{b}", cal.cup(N("z", a), N("th", b)),
                   [(1, "th", a + b, 0)])
            expect(f"z{a} ze{b}", cal.cup(N("z", a), N("ze", b)),
                   [(1, "ze", b - a, 0)])
            expect(f"z{a} ps{b}", cal.cup(N("z", a), N("ps", b)),
                   [(1, "ps", b - a, 0)])
            expect(f"th{a} th{b}", cal.cup(N("th", a), N("th", b)), [])
            expect(f"th{a} ze{b}", cal.cup(N("th", a), N("ze", b)),
                   [(1, "ps", b - a, 0)])
        for i in range(1, n + 1):
            if a > 0:
                expect(f"z{a} f{i}", cal.cup(N("z", a), N("f", i)), [])
                expect(f"z{a} h{i}", cal.cup(N("z", a), N("h", i)), [])
                expect(f"th{a} f{i}", cal.cup(N("th", a), N("f", i)), [])
    for i in range(1, n + 1):
        expect(f"th0 f{i}", cal.cup(N("th", 0), N("f", i)),
               nd.alpha_terms(i, 0))
        for j in range(1, n + 1):
            expect(f"f{i} f{j}", cal.cup(N("f", i), N("f", j)),
                   [(M[i - 1][j - 1], "ze", 0, 0)])
            expect(f"f{i} h{j}", cal.cup(N("f", i), N("h", j)),
                   [(1 if i == j else 0, "ps", 0, 0)])
        expect(f"f{i} ze{top}", cal.cup(N("f", i), N("ze", top)),
               [(i, "z", top, 1)])
        expect(f"f{i} ps{top}", cal.cup(N("f", i), N("ps", top)),
               [(i, "th", top, 1)])
        expect(f"h{i} ze{top}", cal.cup(N("h", i), N("ze", top)),
               [(1 if i == n else 0, "th", top, 1)])
        expect(f"om{i} th0", cal.cup(N("om", i), N("th", 0)), [])
        expect(f"om{i} f1", cal.cup(N("om", i), N("f", 1)), [])
        expect(f"om{i} ze{top}", cal.cup(N("om", i), N("ze", top)), [])
    expect("ze ze", cal.cup(N("ze", top), N("ze", top)),
           [(1, "f", n, 1)])
    expect("ze ps", cal.cup(N("ze", top), N("ps", top)),
           [(i, "h", i, 1) for i in range(1, n + 1)])
    # commutativity spot checks
    for (la, a), (lb, b) in [
            (("f1", N("f", 1)), ("h%d" % n, N("h", n))),
            (("th0", N("th", 0)), ("ze%d" % top, N("ze", top))),
            (("f%d" % n, N("f", n)), ("ps%d" % top, N("ps", top)))]:
        sign = -1 if (a.index % 2 and b.index % 2) else 1
        if cal.cup(a, b) != _scale(sign, cal.cup(b, a)):
            bad.append(f"commutativity {la} {lb}")
    return bad


def check_alpha(kind, size, nterms=12):
    hh = get_hochschild(kind, size, nterms=nterms)
    cal = Calculus(hh)
    bad = []
    if kind == "T":
        M = alpha_closed_form(hh.A)
        vs = list(range(1, size + 1))
        got = cal.alpha_matrix(cal.generic_f_classes(vs),
                               cal.generic_h_classes(vs))
        if got != M:
            bad.append(f"T_{size} alpha route: got {got} want {M}")
    else:
        M = alpha_folded_form(size)
        fs = cal.folded_f_classes()
        hs = cal.folded_h_classes()
        got = cal.alpha_matrix(fs, hs)
        if got != M:
            bad.append(f"A_{size} alpha route: got {got} want {M}")
        gram = [[cal.cup(fi, fj).coords for fj in fs] for fi in fs]
        for i in range(len(fs)):
            for j in range(len(fs)):
                if gram[i][j][0] != M[i][j]:
                    bad.append(f"A_{size} pairing ({i+1},{j+1})")
    return bad


# ----------------------------------------------------------------------
# Connes differential, cyclic homology, BV operator

def check_connes_formulas(cal, windows=(0, 1)):
    nd = _Named(cal)
    h, n = nd.h, nd.n
    bad = []
    for s in windows:
        H = (2 * s + 1) * h
        for k in range(0, h - 2, 2):
            cases = [
                ("ps", k, [(H - 2 - k, "ze", k, s)]),
                ("ze", k, []),
                ("th", k, [(H + 2 + k, "z", k, s)]),
                ("z", k, []),
            ]
            for fam, kk, terms in cases:
                got = cal.connes(cal.hom_named_cls(fam, kk, s))
                want = nd.combo("hom", terms, like=got)
                label = f"B {fam}{kk},{s}"
                if want is None:
                    if not got.is_zero():
                        bad.append(label + ": expected 0")
                elif got != want:
                    bad.append(label)
        for k in range(1, n + 1):
            got = cal.connes(cal.hom_named_cls("h", k, s))
            want = nd.combo("hom", nd.alpha_inv_terms(k, s, coeff=H),
                            like=got)
            if got != want:
                bad.append(f"B h{k},{s}")
            if not cal.connes(cal.hom_named_cls("f", k, s)).is_zero():
                bad.append(f"B f{k},{s}: expected 0")
    return bad


def check_connes_structure(cal, through_index=7):
    bad = []
    degs = sorted(set(d for m in range(through_index + 2)
                      for d in cal.hom_degrees(m)))
    try:
        cal.check_b_squared(through_index, degs)
    except ArithmeticError as e:
        bad.append(str(e))
    try:
        cal.check_connes_exactness(through_index - 1)
    except ArithmeticError as e:
        bad.append(str(e))
    return bad


def check_cyclic_dims(cal, through_index=6):
    n = cal.A.nvert
    want = {m: (2 * n if m == 0 else (0 if m % 2 else n))
            for m in range(through_index + 1)}
    got = cal.cyclic_dims(through_index)
    return [] if got == want else [f"HC dims: got {got} want {want}"]


def check_bv_formulas(cal, windows=(0, 1)):
    nd = _Named(cal)
    h, n = nd.h, nd.n
    nm = cal.named
    bad = []
    for s in windows:
        for m in (s, s + 1):
            C = (1 + 2 * (m - s)) * h
            for k in range(0, h - 2, 2):
                cases = [
                    ("th", k, [(C + k + 2, "z", k, s)]),
                    ("ps", k, [(C - k - 2, "ze", k, s)]),
                    ("ze", k, []),
                ]
                if s + k > 0:
                    cases.append(("z", k, []))
                for fam, kk, terms in cases:
                    got = cal.bv_delta(nm.cls(fam, kk, s), m)
                    want = nd.combo("coh", terms, like=got)
                    label = f"Delta_{m} {fam}{kk}^({s})"
                    if want is None:
                        if got.index >= 0 and not got.is_zero():
                            bad.append(label + ": expected 0")
                    elif got != want:
                        bad.append(label)
            for k in range(1, n + 1):
                got = cal.bv_delta(nm.cls("h", k, s), m)
                want = nd.combo("coh", nd.alpha_inv_terms(k, s, coeff=C),
                                like=got)
                if got != want:
                    bad.append(f"Delta_{m} h{k}^({s})")
                if not cal.bv_delta(nm.cls("f", k, s), m).is_zero():
                    bad.append(f"Delta_{m} f{k}^({s}): expected 0")
    return bad


# ----------------------------------------------------------------------
# chain quotient comparison (even chain quivers against the T-family)

def check_folded_comparison(n, through_index=12):
    """Graded dimensions of the 2n-vertex chain case against the T-case:
    equal for index >= 1; at index 0 equal after dropping the extra
    top-degree socle summand of the T-side."""
    hhA = get_hochschild("A", 2 * n, nterms=through_index + 2)
    hhT = get_hochschild("T", n, nterms=through_index + 2)
    bad = []
    for i in range(through_index + 1):
        da = dict(hhA.cohomology_dims(i))
        dt = dict(hhT.cohomology_dims(i))
        if i == 0:
            top = hhT.A.top_degree
            dt[top] = dt.get(top, 0) - n
            if dt[top] == 0:
                del dt[top]
        if da != dt:
            bad.append(f"HH^{i}: chain {da} vs T {dt}")
    return bad


# ----------------------------------------------------------------------
# algebra-level structure

def check_hilbert(kind, size):
    """Graded dimension matrices against the closed form, including the
    vanishing above the top degree."""
    A = get_algebra(kind, size)
    verts = A.quiver.vertices
    closed = A.hilbert_closed_form(A.top_degree + 2)
    bad = []
    for d in range(A.top_degree + 3):
        got = [[len(A.block_indices(d, i, j)) for j in verts]
               for i in verts]
        want = closed[d] if d <= A.top_degree else [[0] * A.nvert
                                                    for _ in verts]
        if got != want:
            bad.append(f"degree {d}: got {got} want {want}")
        if d > A.top_degree and closed[d] != want:
            bad.append(f"closed form does not vanish in degree {d}")
    if kind == "T" and size == 2:
        total = [[sum(len(A.block_indices(d, i, j))
                      for d in range(A.top_degree + 1)) for j in verts]
                 for i in verts]
        if total != [[2, 2], [2, 4]]:
            bad.append(f"total dimension matrix {total}")
    return bad


def check_structure(size):
    """Center and cocenter layout, symmetry of the trace form, and the
    sign rule for conjugated loop-reflected paths."""
    A = get_algebra("T", size)
    h = A.h
    bad = []
    degs = sorted(A.degree_of(z) for z in A.center_basis())
    want = list(range(0, h - 2, 2)) + [h - 2] * size
    if degs != want:
        bad.append(f"center degrees {degs} want {want}")
    cod = A.cocenter_dims()
    want_cod = [size if d == 0 else (1 if d % 2 else 0)
                for d in range(h - 1)]
    if cod != want_cod:
        bad.append(f"cocenter dims {cod} want {want_cod}")
    ident = [[ONE if i == j else ZERO for j in range(A.dim)]
             for i in range(A.dim)]
    if A.nakayama_matrix() != ident:
        bad.append("trace form is not symmetric")
    for bp in A.basis:
        got = A.rho_conj(A.phi({bp.index: ONE}))
        want_x = {bp.index: -ONE if bp.degree % 2 else ONE}
        if got != want_x:
            bad.append(f"sign rule fails on path {bp.index}")
    return bad
