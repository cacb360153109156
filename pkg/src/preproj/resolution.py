"""Periodic projective bimodule resolution of the preprojective algebra.

The resolution has period six.  Terms are free bimodules on either vertex
generators or arrow generators; terms 3, 4, 5 mod 6 carry a right action
twisted by an algebra automorphism psi (the loop-negating map for family T,
the diagram flip composed with arrow reversal for family A).  An element of
a term is stored as a dict {(gen, p, q): coeff} where p, q are monomial
basis indices, p a path into the generator's left vertex, q a path out of
its right vertex.

Differentials are stored as generator images, lists of (gen', u, w) with
u, w algebra elements; the value on p (x) q is sum (p u) (x) (w tau(q))
where tau composes the twists of the two terms.  The first three
differentials implement multiplication, the bar-type map and the relation
map; the third inserts the dual-basis element sum phi(x_j) (x) x_j^*, and
the next three repeat the pattern through the twist.

Everything is validated numerically: d o d = 0, exactness in the interior,
the degree shift of 2h per period, and for family T the self-duality of
the initial stretch against the twisted trace forms.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import LinearSolver, RowSpace
from .algebra import PreprojectiveAlgebra, get_algebra

ZERO = Fraction(0)
ONE = Fraction(1)

TWIST = (0, 0, 0, 1, 1, 1)
SHIFT = (0, 1, 2, None, None, None)  # 3,4,5 filled with h, h+1, h+2


@dataclass(frozen=True)
class Gen:
    gid: int
    kind: str  # "v" vertex generator, "e" arrow generator
    key: int   # vertex number or arrow index
    left: int
    right: int


class BimoduleResolution:
    def __init__(self, algebra: PreprojectiveAlgebra, nterms: int):
        if nterms < 3:
            raise ValueError("need at least terms 0..3")
        self.A = algebra
        self.h = algebra.h
        self.nterms = nterms
        self._by_source = self._index_paths(lambda bp: bp.source)
        self._by_target = self._index_paths(lambda bp: bp.target)
        self._solver_cache = {}
        self._basis_cache = {}
        self.flip = algebra.quiver.flip()
        self.psi_on_basis = None  # filled by _twist_setup
        self.gens = {i: self._make_gens(i) for i in range(nterms + 1)}
        self.casimir_pairs = self._casimir_pairs()
        self.pairs = {1: self._make_pairs(1), 2: self._make_pairs(2)}
        self._twist_setup()
        for i in range(3, nterms + 1):
            self.pairs[i] = self._make_pairs(i)

    # ------------------------------------------------------------------
    # bookkeeping helpers

    def _index_paths(self, keyfn):
        out = {}
        for bp in self.A.basis:
            out.setdefault((keyfn(bp), bp.degree), []).append(bp.index)
        return out

    def paths_from(self, vertex, degree):
        """Basis indices of paths with the given source."""
        return self._by_source.get((vertex, degree), [])

    def paths_into(self, vertex, degree):
        return self._by_target.get((vertex, degree), [])

    def twist_flag(self, i):
        return TWIST[i % 6]

    def shift(self, i):
        r = i % 6
        base = (0, 1, 2, self.h, self.h + 1, self.h + 2)[r]
        return base + 2 * self.h * (i // 6)

    def psi(self, x):
        """The twist automorphism applied to an algebra element."""
        out = {}
        for i, c in x.items():
            for k, ck in self.psi_on_basis[i].items():
                s = out.get(k, ZERO) + c * ck
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def tau(self, i, x):
        """Twist composition tw(i-1) o tw(i) applied to x."""
        if (self.twist_flag(i - 1) + self.twist_flag(i)) % 2:
            return self.psi(x)
        return dict(x)

    # ------------------------------------------------------------------
    # the twist automorphism and the dual-basis insertion

    def _casimir_pairs(self):
        """Per vertex k: the terms of sum phi(x_j) (x) x_j^* with target k."""
        A = self.A
        duals = A.dual_basis()
        out = {k: [] for k in A.quiver.vertices}
        for bp in A.basis:
            u = A.phi({bp.index: ONE})
            out[bp.target].append((bp.source, u, duals[bp.index]))
        return out

    def _kernel_generators(self):
        """Canonical generators of ker d_2 in internal degree h, one per
        left vertex."""
        A = self.A
        basis2 = self.term_basis(2, self.h)
        sol = self.diff_solver(2, self.h)
        ker = sol.kernel()
        if len(ker) != A.nvert:
            raise ArithmeticError(
                f"relation-term kernel has rank {len(ker)}, expected {A.nvert}")
        by_vertex = {}
        for vec in ker:
            elems = {}
            for pos, c in enumerate(vec):
                if c:
                    elems[basis2[pos]] = c
            lefts = {A.basis[p].target for (_, p, _) in elems}
            if len(lefts) != 1:
                raise ArithmeticError("kernel generator mixes left vertices")
            k = lefts.pop()
            rights = {A.basis[qq].source for (_, _, qq) in elems}
            if rights != {self.flip[k]}:
                raise ArithmeticError(
                    "kernel generator does not close at the flipped vertex")
            if k in by_vertex:
                raise ArithmeticError("two kernel generators at one vertex")
            first = min(elems)
            lead = elems[first]
            by_vertex[k] = {key: c / lead for key, c in elems.items()}
        return by_vertex

    def _twist_setup(self):
        """Solve a w_source(a) = w_target(a) psi(a) for the twist map psi,
        then tabulate psi on the monomial basis."""
        A = self.A
        q = A.quiver
        if q.kind == "T":
            w = {k: self._elem_from_pairs(2, self.casimir_pairs[k])
                 for k in q.vertices}
            kerw = self._kernel_generators()
            for k in q.vertices:
                lead = min(w[k])
                scaled = {key: c / w[k][lead] for key, c in w[k].items()}
                if scaled != kerw[k]:
                    raise ArithmeticError(
                        "dual-basis insertion does not match the kernel of the relation map")
        else:
            w = self._kernel_generators()
        self.w = w

        arrow_psi = {}
        for a in q.arrows:
            lhs = self._left_mul(A.arrow(a.idx), w[a.source])
            ti, si = self.flip[a.target], self.flip[a.source]
            cand = [c for c in q.arrows if c.source == si and c.target == ti]
            if len(cand) != 1:
                raise ArithmeticError("twist image of an arrow is not unique")
            rhs = self._right_mul(w[a.target], A.arrow(cand[0].idx), twisted=False)
            coeff = _ratio(lhs, rhs)
            arrow_psi[a.idx] = A.scale(coeff, A.arrow(cand[0].idx))

        psi_on_basis = []
        for bp in A.basis:
            img = A.e(self.flip[bp.source])
            for aidx in bp.word:
                img = A.mul(arrow_psi[aidx], img)
            psi_on_basis.append(img)
        self.psi_on_basis = psi_on_basis
        if q.kind == "T":
            for bp in A.basis:
                if psi_on_basis[bp.index] != A.phi({bp.index: ONE}):
                    raise ArithmeticError("solved twist differs from the loop sign map")
        for bp in A.basis:
            twice = self.psi(self.psi({bp.index: ONE}))
            if twice != {bp.index: ONE}:
                raise ArithmeticError("twist map is not an involution")
        # the defining intertwining must hold for every basis path
        for bp in A.basis:
            x = {bp.index: ONE}
            lhs = self._left_mul(x, w[bp.source])
            rhs = self._right_mul(w[bp.target], self.psi(x), twisted=False)
            if lhs != rhs:
                raise ArithmeticError("twist map fails the intertwining identity")

    def _elem_from_pairs(self, term_idx, pair_list):
        out = {}
        for (gv, u, wv) in pair_list:
            gen = self._vertex_gen(term_idx, gv)
            for p, cp in u.items():
                for qq, cq in wv.items():
                    key = (gen.gid, p, qq)
                    s = out.get(key, ZERO) + cp * cq
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return out

    def _vertex_gen(self, term_idx, vertex):
        for g in self.gens[term_idx]:
            if g.kind == "v" and g.key == vertex:
                return g
        raise KeyError(vertex)

    def _left_mul(self, x, elem):
        A = self.A
        out = {}
        for (g, p, q), c in elem.items():
            for pi, ci in A.mul(x, {p: ONE}).items():
                key = (g, pi, q)
                s = out.get(key, ZERO) + c * ci
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    def _right_mul(self, elem, x, twisted):
        A = self.A
        xx = self.psi(x) if twisted else x
        out = {}
        for (g, p, q), c in elem.items():
            for qi, ci in A.mul({q: ONE}, xx).items():
                key = (g, p, qi)
                s = out.get(key, ZERO) + c * ci
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    # ------------------------------------------------------------------
    # terms and differentials

    def _make_gens(self, i):
        """Generators with their slot vertices: p runs over A e_left, q over
        e_right A.  The twist never moves the slots, only the action."""
        q = self.A.quiver
        r = i % 6
        gens = []
        if r in (1, 4):
            for a in q.arrows:
                gens.append(Gen(len(gens), "e", a.idx, a.target, a.source))
        else:
            for k in q.vertices:
                gens.append(Gen(len(gens), "v", k, k, k))
        return gens

    def block_right(self, i, gen):
        """Vertex closing the generator on the right in homology blocks:
        the slot vertex moved by the flip when the term is twisted."""
        return self.flip[gen.right] if self.twist_flag(i) else gen.right

    def _gen_for_arrow(self, i, aidx):
        for g in self.gens[i]:
            if g.kind == "e" and g.key == aidx:
                return g
        raise KeyError(aidx)

    def _make_pairs(self, i):
        """Generator images of d_i as {gid: [(gid', u, w), ...]}."""
        A = self.A
        q = A.quiver
        r = (i - 1) % 6 + 1
        out = {}
        if r in (1, 4):
            for g in self.gens[i]:
                a = q.arrows[g.key]
                lo = self.gens[i - 1]
                gs = next(x for x in lo if x.kind == "v" and x.key == a.source)
                gt = next(x for x in lo if x.kind == "v" and x.key == a.target)
                out[g.gid] = [
                    (gs.gid, A.arrow(a.idx), A.e(gs.right)),
                    (gt.gid, A.scale(-1, A.e(a.target)), A.arrow(a.idx)),
                ]
        elif r in (2, 5):
            for g in self.gens[i]:
                k = g.key
                terms = []
                for a in q.arrows:
                    if q.is_loop(a.idx) or a.target != k:
                        continue
                    s = q.eps[a.idx]
                    ga = self._gen_for_arrow(i - 1, a.idx)
                    gst = self._gen_for_arrow(i - 1, q.star[a.idx])
                    terms.append((gst.gid, A.scale(s, A.arrow(a.idx)), A.e(gst.right)))
                    terms.append((ga.gid, A.scale(s, A.e(k)), A.arrow(q.star[a.idx])))
                if q.loop_vertex == k:
                    b = q.by_name["b"]
                    gb = self._gen_for_arrow(i - 1, b.idx)
                    terms.append((gb.gid, A.scale(-1, A.arrow(b.idx)), A.e(gb.right)))
                    terms.append((gb.gid, A.scale(-1, A.e(k)), A.arrow(b.idx)))
                out[g.gid] = terms
        else:  # r in (3, 6): insert the kernel generator
            for g in self.gens[i]:
                k = g.key
                terms = []
                for (gid2, p, qq), c in self.w[k].items():
                    u = {p: c}
                    wv = {qq: ONE}
                    terms.append((gid2, u, wv))
                out[g.gid] = terms
        return out

    # ------------------------------------------------------------------
    # bases, matrices, application

    def term_basis(self, i, deg):
        """Ordered triples (gid, p, q) of internal degree deg in term i."""
        key = (i, deg)
        got = self._basis_cache.get(key)
        if got is not None:
            return got
        rel = deg - self.shift(i)
        out = []
        for g in self.gens[i]:
            for dp in range(rel + 1):
                for p in self.paths_from(g.left, dp):
                    for q in self.paths_into(g.right, rel - dp):
                        out.append((g.gid, p, q))
        self._basis_cache[key] = out
        return out

    def term_dim(self, i, deg):
        return len(self.term_basis(i, deg))

    def degrees(self, i):
        s = self.shift(i)
        return range(s, s + 2 * (self.h - 2) + 1)

    def apply_diff(self, i, elem):
        """Image in term i-1 of an element of term i (i >= 1)."""
        A = self.A
        pairs = self.pairs[i]
        out = {}
        for (g, p, q), c in elem.items():
            tq = self.tau(i, {q: ONE})
            for (g2, u, wv) in pairs[g]:
                pu = A.mul({p: ONE}, u)
                if not pu:
                    continue
                wq = A.mul(wv, tq)
                if not wq:
                    continue
                for pi, cp in pu.items():
                    for qi, cq in wq.items():
                        key = (g2, pi, qi)
                        s = out.get(key, ZERO) + c * cp * cq
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
        return out

    def apply_d0(self, elem):
        A = self.A
        out = {}
        for (g, p, q), c in elem.items():
            for k, ck in A.mul({p: ONE}, {q: ONE}).items():
                s = out.get(k, ZERO) + c * ck
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def diff_matrix(self, i, deg):
        """Matrix of d_i on the degree slice, rows over term i-1 (or the
        algebra for i = 0)."""
        if i == 0:
            rows = self.A.by_degree.get(deg, [])
            rpos = {b: a for a, b in enumerate(rows)}
            cols = self.term_basis(0, deg)
            mat = [[ZERO] * len(cols) for _ in rows]
            for ci, trip in enumerate(cols):
                img = self.apply_d0({trip: ONE})
                for bi, c in img.items():
                    mat[rpos[bi]][ci] = c
            return mat
        rows = self.term_basis(i - 1, deg)
        rpos = {t: a for a, t in enumerate(rows)}
        cols = self.term_basis(i, deg)
        mat = [[ZERO] * len(cols) for _ in rows]
        for ci, trip in enumerate(cols):
            img = self.apply_diff(i, {trip: ONE})
            for t, c in img.items():
                mat[rpos[t]][ci] = c
        return mat

    def diff_solver(self, i, deg):
        key = (i, deg)
        got = self._solver_cache.get(key)
        if got is None:
            nrows = (len(self.A.by_degree.get(deg, [])) if i == 0
                     else self.term_dim(i - 1, deg))
            got = LinearSolver(self.diff_matrix(i, deg), nrows=nrows,
                               ncols=self.term_dim(i, deg))
            self._solver_cache[key] = got
        return got

    def solve_preimage(self, i, deg, target_elem):
        """x in term i, degree deg, with d_i(x) = target; None if impossible."""
        if i == 0:
            rows = self.A.by_degree.get(deg, [])
        else:
            rows = self.term_basis(i - 1, deg)
        rpos = {t: a for a, t in enumerate(rows)}
        rhs = [ZERO] * len(rows)
        for t, c in target_elem.items():
            if t not in rpos:
                return None
            rhs[rpos[t]] = c
        sol = self.diff_solver(i, deg).solve(rhs)
        if sol is None:
            return None
        basis = self.term_basis(i, deg)
        return {basis[a]: c for a, c in enumerate(sol) if c}

    # ------------------------------------------------------------------
    # validation

    def check_dd_zero(self, through=None):
        top = self.nterms if through is None else through
        for i in range(2, top + 1):
            for deg in self.degrees(i):
                for trip in self.term_basis(i, deg):
                    once = self.apply_diff(i, {trip: ONE})
                    if self.apply_diff(i - 1, once):
                        raise ArithmeticError(f"d_{i-1} d_{i} != 0 at degree {deg}")
        for deg in self.degrees(1):
            for trip in self.term_basis(1, deg):
                if self.apply_d0(self.apply_diff(1, {trip: ONE})):
                    raise ArithmeticError(f"d_0 d_1 != 0 at degree {deg}")
        return True

    def check_exactness(self, through=None):
        """Augmented complex is exact at terms 0..through-1."""
        top = (self.nterms if through is None else through)
        for i in range(0, top):
            for deg in self.degrees(i):
                dim = self.term_dim(i, deg)
                r_out = self.diff_solver(i, deg).rank
                r_in = (self.diff_solver(i + 1, deg).rank
                        if deg in self.diff_degrees(i + 1) else 0)
                if r_out + r_in != dim:
                    raise ArithmeticError(
                        f"complex not exact at term {i}, degree {deg}")
        for deg in range(self.A.top_degree + 1):
            if self.diff_solver(0, deg).rank != len(self.A.by_degree.get(deg, [])):
                raise ArithmeticError("multiplication map is not surjective")
        return True

    def diff_degrees(self, i):
        return set(self.degrees(i))

    def check_period_shift(self):
        for i in range(self.nterms - 5):
            a, b = self.gens[i], self.gens[i + 6]
            if [(g.kind, g.key, g.left, g.right) for g in a] != \
               [(g.kind, g.key, g.left, g.right) for g in b]:
                raise ArithmeticError("generator pattern breaks period six")
            if self.shift(i + 6) - self.shift(i) != 2 * self.h:
                raise ArithmeticError("period does not shift degree by 2h")
        return True

    def check_self_duality(self):
        """The twisted trace forms exhibit i = d_0* and d_2 = d_1*."""
        A = self.A
        if A.quiver.kind != "T":
            raise ValueError("self-duality check applies to family T")

        def tr(x):
            return A.trace(x)

        def phi(x):
            return A.phi(x)

        # (i(x), y (x) z) = (x, yz) for all basis x and P_0 slots y, z
        for bx in A.basis:
            x = {bx.index: ONE}
            ix = {}
            for k, (gv, u, wv) in (
                    (kk, t) for kk in A.quiver.vertices
                    for t in self.casimir_pairs[kk]):
                xu = A.mul(x, u)
                if xu:
                    ix.setdefault(gv, []).append((xu, wv))
            for deg in range(A.top_degree + 1):
                for (g0, py, qz) in self.term_basis(0, deg):
                    kvert = self.gens[0][g0].key
                    y, z = {py: ONE}, {qz: ONE}
                    lhs = ZERO
                    for (xu, wv) in ix.get(kvert, []):
                        lhs += tr(A.mul(xu, phi(z))) * tr(A.mul(wv, y))
                    rhs = tr(A.mul(x, phi(A.mul(y, z))))
                    if lhs != rhs:
                        raise ArithmeticError("first self-duality identity fails")

        # (d_1(x (x) v (x) y), z (x) t) = (x (x) v (x) y, d_2(z (x) t))
        q = A.quiver
        for dega in self.degrees(1):
            for (ga, px, qy) in self.term_basis(1, dega):
                va = q.arrows[self.gens[1][ga].key]
                x, y = {px: ONE}, {qy: ONE}
                d1 = self.apply_diff(1, {(ga, px, qy): ONE})
                for degb in self.degrees(2):
                    for (gb, pz, qt) in self.term_basis(2, degb):
                        z, t = {pz: ONE}, {qt: ONE}
                        lhs = ZERO
                        for (g0, pp, qq), c in d1.items():
                            # pairing of A (x) A elements against z (x) t
                            lhs += c * tr(A.mul({pp: ONE}, phi(t))) * \
                                tr(A.mul({qq: ONE}, z))
                        d2 = self.apply_diff(2, {(gb, pz, qt): ONE})
                        rhs = ZERO
                        for (g1, pp, qq), c in d2.items():
                            vb = q.arrows[self.gens[1][g1].key]
                            if q.star[va.idx] != vb.idx:
                                continue
                            pairing = q.eps[vb.idx]
                            rhs += c * pairing * \
                                tr(A.mul(x, phi({qq: ONE}))) * \
                                tr(A.mul(y, {pp: ONE}))
                        if lhs != rhs:
                            raise ArithmeticError("second self-duality identity fails")
        return True


def _ratio(lhs, rhs):
    """lhs = c * rhs for elements as dicts; error if no consistent c."""
    if not rhs:
        raise ArithmeticError("cannot scale the zero element")
    if set(lhs) != set(rhs):
        raise ArithmeticError("elements are not proportional")
    items = iter(rhs.items())
    k0, v0 = next(items)
    c = lhs[k0] / v0
    for k, v in items:
        if lhs[k] != c * v:
            raise ArithmeticError("elements are not proportional")
    return c


@lru_cache(maxsize=None)
def get_resolution(kind, size, nterms):
    return BimoduleResolution(get_algebra(kind, size), nterms)
