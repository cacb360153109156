"""Transport of cycles into the standard Hochschild chain complex.

The periodic resolution is where everything gets computed, but the
degree action of the Euler cocycle that seeds the cyclic structure is
native to the standard chain complex of the algebra.  This module
carries resolution cycles across explicit comparison maps into that
complex, transports the Euler cocycle the other way through a chain
section, and rechecks the degree action slot by slot.

Standard chains are stored sparsely as dicts mapping tuples of
monomial-basis indices to coefficients.  All tensors are taken over the
vertex ring, so every tuple is cyclically composable: slot 0 is the
coefficient factor and each slot walks after the one to its right.
"""

from fractions import Fraction

from .hochschild import HClass, NamedCocycles

ZERO = Fraction(0)
ONE = Fraction(1)


def _acc(out, key, c):
    s = out.get(key, ZERO) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


class BarTransport:
    def __init__(self, hh):
        self.hh = hh
        self.res = hh.res
        self.A = hh.A
        q = self.A.quiver
        self._arrow_idx = {a.idx: next(iter(self.A.arrow(a.idx)))
                           for a in q.arrows}
        self._vgid = {i: {g.key: g.gid for g in self.res.gens[i]}
                      for i in (0, 2, 3)}
        self._scale3 = self._kernel_scale()

    # ------------------------------------------------------------------
    # the standard complex

    def _mul_idx(self, i, j):
        return self.A.mul({i: ONE}, {j: ONE})

    def tuple_degree(self, tup):
        return sum(self.A.basis[i].degree for i in tup)

    def boundary(self, ch):
        """Hochschild boundary: fold neighbouring slots, wrap the last
        slot onto the coefficient, alternating signs."""
        out = {}
        for tup, c in ch.items():
            k = len(tup) - 1
            if k == 0:
                continue
            for i in range(k):
                s = c if i % 2 == 0 else -c
                for m, cm in self._mul_idx(tup[i], tup[i + 1]).items():
                    _acc(out, tup[:i] + (m,) + tup[i + 2:], s * cm)
            s = c if k % 2 == 0 else -c
            for m, cm in self._mul_idx(tup[k], tup[0]).items():
                _acc(out, (m,) + tup[1:k], s * cm)
        return out

    def lie_slotwise(self, dfunc, ch):
        """Lie derivative of a degree-zero 1-cochain: apply its value map
        to one slot at a time and sum, the coefficient slot included."""
        out = {}
        for tup, c in ch.items():
            for i in range(len(tup)):
                for m, cm in dfunc(tup[i]).items():
                    _acc(out, tup[:i] + (m,) + tup[i + 1:], c * cm)
        return out

    # ------------------------------------------------------------------
    # comparison maps out of the resolution, indices 0..3

    def carry(self, i, values):
        """Image in the standard complex of a resolution chain
        {gid: element} at index i."""
        if i == 0:
            return self._carry0(values)
        if i == 1:
            return self._carry1(values)
        if i == 2:
            return self._carry2(values)
        if i == 3:
            return self._carry3(values)
        raise ValueError("comparison maps stop at index 3")

    def _carry0(self, values):
        out = {}
        for x in values.values():
            for xi, xc in x.items():
                _acc(out, (xi,), xc)
        return out

    def _carry1(self, values):
        out = {}
        for g in self.res.gens[1]:
            x = values.get(g.gid)
            if not x:
                continue
            aid = self._arrow_idx[g.key]
            for xi, xc in x.items():
                _acc(out, (xi, aid), xc)
        return out

    def _relation_terms(self, v):
        """Arrow pairs of the relation at vertex v: (sign, a, a~) with
        a ending at v and a~ its reverse, the loop counted once."""
        q = self.A.quiver
        terms = []
        for a in q.arrows:
            if q.is_loop(a.idx):
                if v == q.loop_vertex:
                    terms.append((-ONE, a.idx, a.idx))
            elif a.target == v:
                terms.append((Fraction(q.eps[a.idx]), a.idx, q.star[a.idx]))
        return terms

    def _carry2(self, values):
        out = {}
        for g in self.res.gens[2]:
            x = values.get(g.gid)
            if not x:
                continue
            for sgn, aidx, sidx in self._relation_terms(g.key):
                aid = self._arrow_idx[aidx]
                sid = self._arrow_idx[sidx]
                for xi, xc in x.items():
                    _acc(out, (xi, aid, sid), sgn * xc)
        return out

    def _carry3(self, values):
        """Dual-basis insertion: a value x at the vertex-k generator goes
        to sum of (y* x, phi(y), a, a~) over basis paths y into k and
        relation pairs at the source of y, scaled to match the kernel
        generator the third differential actually inserts."""
        A = self.A
        out = {}
        for g in self.res.gens[3]:
            x = values.get(g.gid)
            if not x:
                continue
            lam = self._scale3[g.key]
            for src, u, dual in self.res.casimir_pairs[g.key]:
                head = A.mul(dual, x)
                if not head:
                    continue
                for sgn, aidx, sidx in self._relation_terms(src):
                    aid = self._arrow_idx[aidx]
                    sid = self._arrow_idx[sidx]
                    for ui, uc in u.items():
                        for hi, hc in head.items():
                            _acc(out, (hi, ui, aid, sid),
                                 lam * sgn * uc * hc)
        return out

    def _kernel_scale(self):
        """Per-vertex ratio between the solver-normalised kernel
        generator inserted by the third differential and the closed-form
        dual-basis element sum phi(y) (x) y*; the two must be
        proportional."""
        vg2 = self._vgid[2]
        scale = {}
        for k, wk in self.res.w.items():
            cas = {}
            for src, u, dual in self.res.casimir_pairs[k]:
                for ui, uc in u.items():
                    for di, dc in dual.items():
                        _acc(cas, (vg2[src], ui, di), uc * dc)
            if set(cas) != set(wk):
                raise ArithmeticError(
                    "kernel generator and dual-basis element differ in "
                    f"support at vertex {k}")
            ratios = {wk[key] / c for key, c in cas.items()}
            if len(ratios) != 1:
                raise ArithmeticError(
                    f"kernel generator is not proportional to the "
                    f"dual-basis element at vertex {k}")
            scale[k] = ratios.pop()
        return scale

    # ------------------------------------------------------------------
    # the chain section at index 1 and cochain transport

    def section1(self, ch):
        """Section of the index-1 comparison map: split each letter out
        of the bar slot in turn, walking the coefficient around."""
        A = self.A
        out = {}
        gids = {g.key: g.gid for g in self.res.gens[1]}
        for (x0, x1), c in ch.items():
            bp = A.basis[x1]
            w = bp.word
            for j in range(len(w)):
                before = A.from_word(bp.source, w[:j])
                after = A.from_word(self._walk_target(bp.source, w[:j + 1]),
                                    w[j + 1:])
                val = A.mul(before, A.mul({x0: ONE}, after))
                gid = gids[w[j]]
                for vi, vc in val.items():
                    slot = out.setdefault(gid, {})
                    s = slot.get(vi, ZERO) + c * vc
                    if s:
                        slot[vi] = s
                    else:
                        slot.pop(vi, None)
        return {g: v for g, v in out.items() if v}

    def _walk_target(self, source, word):
        v = source
        for idx in word:
            a = self.A.quiver.arrows[idx]
            if a.source != v:
                raise ValueError("word does not walk")
            v = a.target
        return v

    def transported_cochain(self, values):
        """1-cochain on the algebra induced through the section: replace
        one letter of a monomial at a time by the cochain's value at that
        letter's generator."""
        A = self.A
        gids = {g.key: g.gid for g in self.res.gens[1]}

        def dfunc(mi):
            bp = A.basis[mi]
            w = bp.word
            out = {}
            for j in range(len(w)):
                val = values.get(gids[w[j]])
                if not val:
                    continue
                before = A.from_word(bp.source, w[:j])
                after = A.from_word(self._walk_target(bp.source, w[:j + 1]),
                                    w[j + 1:])
                for m, cm in A.mul(after, A.mul(val, before)).items():
                    _acc(out, m, cm)
            return out

        return dfunc


# ----------------------------------------------------------------------
# checks


def check_comparison_squares(hh):
    """Boundary compatibility of the comparison maps at indices 1..3 on
    every block basis element, and of the section at index 1."""
    bt = BarTransport(hh)
    A, res = hh.A, hh.res
    bad = []
    for i in (1, 2, 3):
        for g in res.gens[i]:
            tv, sv = g.left, res.block_right(i, g)
            for pd in range(A.top_degree + 1):
                for b in A.block_indices(pd, sv, tv):
                    val = {g.gid: {b: ONE}}
                    lhs = bt.boundary(bt.carry(i, val))
                    rhs = bt.carry(i - 1, hh.apply_chain_diff(i, val))
                    if lhs != rhs:
                        bad.append(f"square {i} gen {g.gid} path {b}")
    vgid0 = {g.key: g.gid for g in res.gens[0]}
    for bp1 in A.basis:
        for pd in range(A.top_degree + 1):
            for b0 in A.block_indices(pd, bp1.source, bp1.target):
                ch = {(b0, bp1.index): ONE}
                lhs = hh.apply_chain_diff(1, bt.section1(ch))
                rhs = {}
                for m, c in A.mul({b0: ONE}, {bp1.index: ONE}).items():
                    gid = vgid0[A.basis[m].source]
                    rhs.setdefault(gid, {})[m] = c
                for m, c in A.mul({bp1.index: ONE}, {b0: ONE}).items():
                    gid = vgid0[A.basis[m].source]
                    slot = rhs.setdefault(gid, {})
                    s = slot.get(m, ZERO) - c
                    if s:
                        slot[m] = s
                    else:
                        slot.pop(m, None)
                rhs = {g: v for g, v in rhs.items() if v}
                if lhs != rhs:
                    bad.append(f"section square {b0} {bp1.index}")
    return bad


def check_euler_degree(hh):
    """Degree action of the Euler cocycle rebuilt from scratch: transport
    the cocycle through the section, check it scales every monomial by
    its degree, then check its slotwise Lie derivative multiplies every
    carried homology cycle by the internal degree of its class."""
    bt = BarTransport(hh)
    A = hh.A
    bad = []
    _, euler = NamedCocycles(hh).values("th", 0)
    dfunc = bt.transported_cochain(euler)
    for bp in A.basis:
        if dfunc(bp.index) != ({bp.index: Fraction(bp.degree)}
                               if bp.degree else {}):
            bad.append(f"cochain transport on path {bp.index}")
    for i in (0, 1, 2, 3):
        for delta in hh.chain_degrees(i):
            q = hh.homology(i, delta)
            for pos in range(q.dim):
                coords = tuple(ONE if j == pos else ZERO
                               for j in range(q.dim))
                rep = hh.class_rep_values(HClass("hom", i, delta, coords))
                ch = bt.carry(i, rep)
                if bt.boundary(ch):
                    bad.append(f"carried class {i} {delta} {pos} not a cycle")
                want = {t: Fraction(delta) * c for t, c in ch.items() if delta}
                if bt.lie_slotwise(dfunc, ch) != want:
                    bad.append(f"degree action {i} {delta} {pos}")
    return bad
