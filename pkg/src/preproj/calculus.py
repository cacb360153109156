"""Cup products, duality, Connes differential, and the calculus structure.

A cocycle lifts to a chain self-map of the resolution; the cup product of
two classes is the left cocycle composed with the lift of the right one.
The Calabi-Yau duality turns chains into cochains window by window (chain
index m maps to cochain index 6w+5-m, losing (2w+1)h+2 in degree); it is
a blockwise map: transpose every path and weight arrow generators by minus
the arrow sign.  Contraction is cup product conjugated by the duality, and
the Connes differential is bootstrapped from the Cartan identity with the
Euler cocycle theta (the arrow-identity cochain), whose Lie derivative is
multiplication by internal degree.  The BV operator is the Connes
differential conjugated by the duality, and the Gerstenhaber bracket is
its deviation from being a cup-product derivation.
"""

from fractions import Fraction

from .linalg import LinearSolver, matmul
from .hochschild import HClass, HochschildComplex, NamedCocycles

ZERO = Fraction(0)
ONE = Fraction(1)

# chain index (mod 6) of the duality partner of each cochain family
HOM_BASE = {"ps": 0, "ze": 1, "h": 2, "f": 3, "th": 4, "z": 5}
COCH_BASE = {"z": 0, "th": 1, "f": 2, "h": 3, "ze": 4, "ps": 5}


class Calculus:
    def __init__(self, hh: HochschildComplex):
        self.hh = hh
        self.res = hh.res
        self.A = hh.A
        self.h = hh.h
        self.named = (NamedCocycles(hh)
                      if self.A.quiver.kind == "T" else None)
        self._lift_cache = {}
        self._iota_mat = {}
        self._b_mat = {}

    # ------------------------------------------------------------------
    # zero classes and expansion in a named basis

    def zero_cochain_cls(self, index, degree):
        dim = self.hh.cohomology(index, degree).dim
        return HClass("coh", index, degree, (ZERO,) * dim)

    def zero_chain_cls(self, index, degree):
        dim = self.hh.homology(index, degree).dim
        return HClass("hom", index, degree, (ZERO,) * dim)

    def expand(self, cls, labelled):
        """Write cls as a combination of the labelled classes; hard error
        on any residual."""
        if cls.is_zero():
            return {}
        cand = [(lab, c) for lab, c in labelled.items()
                if c.side == cls.side and c.index == cls.index
                and c.degree == cls.degree]
        cols = [list(c.coords) for _, c in cand]
        mat = [[cols[j][i] for j in range(len(cols))]
               for i in range(len(cls.coords))]
        sol = LinearSolver(mat, nrows=len(cls.coords),
                           ncols=len(cols)).solve(list(cls.coords))
        if sol is None:
            raise ArithmeticError("class does not lie in the named span")
        return {cand[j][0]: c for j, c in enumerate(sol) if c}

    # ------------------------------------------------------------------
    # lifting cocycles through the resolution

    def _split_p0(self, x):
        """Element of A as an element of the degree-zero resolution term."""
        out = {}
        for b, c in x.items():
            s = self.A.basis[b].source
            g = self._gen(0, "v", s)
            e_idx = next(iter(self.A.e(s)))
            out[(g.gid, b, e_idx)] = c
        return out

    def _gen(self, term, kind, key):
        for g in self.res.gens[term]:
            if g.kind == kind and g.key == key:
                return g
        raise KeyError((term, kind, key))

    def apply_cocycle(self, i, values, elem):
        """Cocycle at index i applied to an element of term i."""
        A = self.A
        out = {}
        for (gid, p, q), c in elem.items():
            val = values.get(gid)
            if not val:
                continue
            tq = {q: c}
            if self.res.twist_flag(i):
                tq = self.res.psi(tq)
            y = A.mul(A.mul({p: ONE}, val), tq)
            out = A.add(out, y)
        return out

    def apply_genmap(self, m, k, genvals, elem):
        """Bimodule map P_m -> P_k given by generator values, applied to an
        element of term m."""
        res = self.res
        A = self.A
        twist = (res.twist_flag(m) + res.twist_flag(k)) % 2
        out = {}
        for (gid, p, q), c in elem.items():
            val = genvals.get(gid)
            if not val:
                continue
            tq = {q: c}
            if twist:
                tq = res.psi(tq)
            for (g2, u, w), cv in val.items():
                pu = A.mul({p: ONE}, {u: cv})
                if not pu:
                    continue
                wq = A.mul({w: ONE}, tq)
                if not wq:
                    continue
                for pi, cp in pu.items():
                    for qi, cq in wq.items():
                        key = (g2, pi, qi)
                        s = out.get(key, ZERO) + cp * cq
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
        return out

    def _elem_degree(self, i, elem):
        for (gid, p, q) in elem:
            return (self.A.basis[p].degree + self.A.basis[q].degree
                    + self.res.shift(i))
        return None

    def lift(self, j, values, steps):
        """Chain maps g_k: P_(j+k) -> P_k, k <= steps, lifting the cocycle.

        Returns a list of generator-value dicts.  g_0 splits the cocycle
        values into the free term; each next step solves the commuting
        square against the cached degree-slice solvers."""
        res = self.res
        lifts = [{g.gid: self._split_p0(values[g.gid])
                  for g in res.gens[j] if values.get(g.gid)}]
        for k in range(1, steps + 1):
            cur = {}
            for g in res.gens[j + k]:
                target = {}
                for (g2, u, w) in res.pairs[j + k][g.gid]:
                    elem = {}
                    for ui, cu in u.items():
                        for wi, cw in w.items():
                            elem[(g2, ui, wi)] = cu * cw
                    part = self.apply_genmap(j + k - 1, k - 1,
                                             lifts[k - 1], elem)
                    for key, c in part.items():
                        s = target.get(key, ZERO) + c
                        if s:
                            target[key] = s
                        else:
                            target.pop(key, None)
                if not target:
                    continue
                deg = self._elem_degree(k - 1, target)
                x = res.solve_preimage(k, deg, target)
                if x is None:
                    raise ArithmeticError(
                        f"lift step {k} has no preimage (term {j + k})")
                if x:
                    cur[g.gid] = x
            lifts.append(cur)
        return lifts

    def _lifts_for(self, cls, steps):
        key = (cls.index, cls.degree, cls.coords)
        got = self._lift_cache.get(key)
        if got is None or len(got) <= steps:
            values = self.hh.class_rep_values(cls)
            got = self.lift(cls.index, values, steps)
            self._lift_cache[key] = got
        return got

    def cup(self, f, g):
        """Cup product of cohomology classes (f first, g lifted)."""
        if f.index < 0 or g.index < 0:
            return HClass("coh", f.index + g.index,
                          f.degree + g.degree, ())
        if f.is_zero() or g.is_zero():
            return self.zero_cochain_cls(f.index + g.index,
                                         f.degree + g.degree)
        fvals = self.hh.class_rep_values(f)
        lifts = self._lifts_for(g, f.index)
        out = {}
        for G in self.res.gens[f.index + g.index]:
            elem = lifts[f.index].get(G.gid)
            if not elem:
                continue
            val = self.apply_cocycle(f.index, fvals, elem)
            if val:
                out[G.gid] = val
        if not out:
            return self.zero_cochain_cls(f.index + g.index,
                                         f.degree + g.degree)
        return self.hh.cohomology_class(f.index + g.index, out)

    # ------------------------------------------------------------------
    # duality between chains and cochains

    def _dual_weight(self, gen):
        if gen.kind != "e":
            return ONE
        return -Fraction(self.A.quiver.eps[gen.key])

    def dual_values_to_cochain(self, m, chain_values):
        out = {}
        for g in self.res.gens[m]:
            c = chain_values.get(g.gid)
            if not c:
                continue
            out[g.gid] = self.A.scale(self._dual_weight(g), self.A.gamma(c))
        return out

    def _match_gens(self, src_term, dst_term, values):
        """Re-key generator values between terms with equal generator sets."""
        out = {}
        for g in self.res.gens[src_term]:
            v = values.get(g.gid)
            if v:
                out[self._gen(dst_term, g.kind, g.key).gid] = v
        return out

    def D(self, cls, w):
        """Duality on classes: homology index m to cohomology index 6w+5-m."""
        m = cls.index
        j = 6 * w + 5 - m
        if j < 0:
            raise ValueError("window too small for this chain index")
        deg = cls.degree - (2 * w + 1) * self.h - 2
        if cls.is_zero():
            return self.zero_cochain_cls(j, deg)
        vals = self.dual_values_to_cochain(m, self.hh.class_rep_values(cls))
        out = self.hh.cohomology_class(j, self._match_gens(m, j, vals))
        if out.degree != deg:
            raise ArithmeticError("duality degree bookkeeping failed")
        return out

    def D_inv(self, cls, w):
        j = cls.index
        m = 6 * w + 5 - j
        if m < 0:
            raise ValueError("window too small for this cochain index")
        deg = cls.degree + (2 * w + 1) * self.h + 2
        if cls.is_zero():
            return self.zero_chain_cls(m, deg)
        vals = self._match_gens(j, m, self.hh.class_rep_values(cls))
        out = {}
        for g in self.res.gens[m]:
            c = vals.get(g.gid)
            if c:
                out[g.gid] = self.A.scale(self._dual_weight(g),
                                          self.A.gamma(c))
        cls2 = self.hh.homology_class(m, out)
        if cls2.degree != deg:
            raise ArithmeticError("duality degree bookkeeping failed")
        return cls2

    def check_duality_squares(self, w):
        """Assert the duality is a chain map on every slice of the window."""
        hh = self.hh
        for m in range(1, 6 * w + 6):
            j = 6 * w + 5 - m
            for delta in hh.chain_degrees(m):
                for (gid, b) in hh.chain_basis(m, delta):
                    chain = {gid: {b: ONE}}
                    lhs = self.dual_values_to_cochain(
                        m - 1, hh.apply_chain_diff(m, chain))
                    lhs = self._match_gens(m - 1, j + 1, lhs)
                    rhs = hh.apply_cochain_diff(
                        j, self._match_gens(
                            m, j, self.dual_values_to_cochain(m, chain)))
                    if lhs != rhs:
                        raise ArithmeticError(
                            f"duality square fails at chain index {m}, "
                            f"degree {delta}")
        return True

    # ------------------------------------------------------------------
    # named homology classes and theta

    def theta0(self):
        return self.named.cls("th", 0)

    def hom_named_cls(self, family, k, t=0):
        """Duality preimage of the window-0 named cocycle, placed in the
        window-t chain index."""
        cls = self.named.cls(family, k, 0)
        return self.D_inv(cls, t)

    def hom_named_basis(self, windows=1):
        out = {}
        for fam in HOM_BASE:
            for k in self.named.parameters(fam):
                for t in range(windows + 1):
                    out[(fam, k, t)] = self.hom_named_cls(fam, k, t)
        return out

    def named_basis(self, windows=1):
        out = {}
        for fam in COCH_BASE:
            for k in self.named.parameters(fam):
                for s in range(windows + 1):
                    out[(fam, k, s)] = self.named.cls(fam, k, s)
        for i in self.named.parameters("om"):
            out[("om", i, 0)] = self.named.cls("om", i)
        return out

    # ------------------------------------------------------------------
    # contraction and Connes differential

    def contract(self, eta, c):
        """iota_eta(c) through the duality; zero when the index drops
        below the complex."""
        m = c.index - eta.index
        if m < 0:
            return HClass("hom", m, c.degree + eta.degree, ())
        w = 0
        while 6 * w + 5 < c.index:
            w += 1
        return self.D_inv(self.cup(eta, self.D(c, w)), w)

    def iota_matrix(self, m, delta):
        """Matrix of contraction with theta over the canonical bases,
        HH_m(delta) -> HH_(m-1)(delta)."""
        key = (m, delta)
        got = self._iota_mat.get(key)
        if got is None:
            n = self.hh.homology(m, delta).dim
            rows = self.hh.homology(m - 1, delta).dim if m >= 1 else 0
            got = [[ZERO] * n for _ in range(rows)]
            if n and rows:
                th = self.theta0()
                for jcol in range(n):
                    coords = tuple(ONE if a == jcol else ZERO
                                   for a in range(n))
                    img = self.contract(th, HClass("hom", m, delta, coords))
                    for irow, cv in enumerate(img.coords):
                        got[irow][jcol] = cv
            self._iota_mat[key] = got
        return got

    def b_matrix(self, m, delta):
        """Connes differential HH_m(delta) -> HH_(m+1)(delta), bootstrapped
        from the Cartan identity: deg(x) x = B(iota x) + iota(B x)."""
        key = (m, delta)
        got = self._b_mat.get(key)
        if got is not None:
            return got
        n = self.hh.homology(m, delta).dim
        rows = self.hh.homology(m + 1, delta).dim
        out = [[ZERO] * n for _ in range(rows)]
        if n and rows:
            iota_here = self.iota_matrix(m, delta)
            iota_up = self.iota_matrix(m + 1, delta)
            solver = LinearSolver(iota_up, nrows=n, ncols=rows)
            below = self.b_matrix(m - 1, delta) if m > 0 else None
            for jcol in range(n):
                rhs = [delta * (ONE if a == jcol else ZERO) for a in range(n)]
                if below is not None:
                    for a in range(n):
                        acc = ZERO
                        for t in range(len(iota_here)):
                            if below[a][t] and iota_here[t][jcol]:
                                acc += below[a][t] * iota_here[t][jcol]
                        rhs[a] -= acc
                if not any(rhs):
                    continue
                sol = solver.solve(rhs)
                if sol is None:
                    raise ArithmeticError(
                        f"Cartan identity unsolvable at index {m}, "
                        f"degree {delta}")
                if solver.kernel():
                    raise ArithmeticError(
                        f"Connes differential underdetermined at index {m}, "
                        f"degree {delta}")
                for irow, cv in enumerate(sol):
                    out[irow][jcol] = cv
        self._b_mat[key] = out
        return out

    def connes(self, cls):
        mat = self.b_matrix(cls.index, cls.degree)
        coords = tuple(
            sum((row[j] * c for j, c in enumerate(cls.coords)
                 if c and row[j]), ZERO)
            for row in mat)
        return HClass("hom", cls.index + 1, cls.degree, coords)

    def check_b_squared(self, through_index, degrees):
        for m in range(through_index):
            for delta in degrees:
                b1 = self.b_matrix(m, delta)
                b2 = self.b_matrix(m + 1, delta)
                if b1 and b2 and any(any(x) for x in matmul(b2, b1)):
                    raise ArithmeticError(
                        f"B squared is nonzero at index {m}, degree {delta}")
        return True

    def connes_ranks(self, m, degrees):
        """Rank of B_m per degree (only nonzero entries)."""
        out = {}
        for delta in degrees:
            mat = self.b_matrix(m, delta)
            if mat and any(any(r) for r in mat):
                out[delta] = LinearSolver(
                    mat, nrows=len(mat), ncols=len(mat[0])).rank
        return out

    def hom_degrees(self, m):
        return [d for d in self.hh.chain_degrees(m)
                if self.hh.homology(m, d).dim]

    def cyclic_dims(self, through_index):
        """Reduced cyclic homology dimensions: the rank of the Connes
        differential out of each homology index; the full degree-zero part
        is added back at index 0."""
        out = {}
        for m in range(through_index + 1):
            degs = set(self.hom_degrees(m)) | set(self.hom_degrees(m + 1))
            total = sum(self.connes_ranks(m, sorted(degs)).values())
            if m == 0:
                total += self.hh.homology(0, 0).dim
            out[m] = total
        return out

    def check_connes_exactness(self, through_index):
        """ker B_(m+1) = im B_m on the reduced spaces, and B_0 is injective
        outside degree zero."""
        for m in range(through_index):
            degs = set(self.hom_degrees(m)) | set(self.hom_degrees(m + 1)) \
                | set(self.hom_degrees(m + 2))
            for delta in sorted(degs):
                up = self.b_matrix(m + 1, delta)
                here = self.b_matrix(m, delta)
                n = self.hh.homology(m + 1, delta).dim
                rank_here = (LinearSolver(here, nrows=len(here), ncols=len(
                    here[0])).rank if here and here[0] else 0)
                null_up = (n - LinearSolver(
                    up, nrows=len(up), ncols=n).rank if n else 0)
                if null_up != rank_here:
                    raise ArithmeticError(
                        f"Connes sequence not exact at index {m + 1}, "
                        f"degree {delta}")
        for delta in self.hom_degrees(0):
            if delta == 0:
                continue
            mat = self.b_matrix(0, delta)
            n = self.hh.homology(0, delta).dim
            if LinearSolver(mat, nrows=len(mat), ncols=n).rank != n:
                raise ArithmeticError(
                    f"Connes differential not injective in degree {delta}")
        return True

    # ------------------------------------------------------------------
    # BV operator, bracket, Lie derivative

    def bv_delta(self, cls, w):
        """BV operator: the Connes differential conjugated by the duality
        of window w."""
        if cls.index <= 0:
            return HClass("coh", cls.index - 1, cls.degree, ())
        if cls.is_zero():
            return self.zero_cochain_cls(cls.index - 1, cls.degree)
        return self.D(self.connes(self.D_inv(cls, w)), w)

    def bracket(self, a, b, w=None):
        """Gerstenhaber bracket from the BV identity.  Without an explicit
        window the minimal one is used and the next one must agree; socle
        classes sit outside the duality, so there the identity genuinely
        depends on the window and this raises."""
        if w is None:
            w = 0
            while 6 * w + 5 < a.index + b.index:
                w += 1
            got = self._bracket_at(a, b, w)
            if got != self._bracket_at(a, b, w + 1):
                raise ArithmeticError("bracket depends on the duality "
                                      "window")
            return got
        return self._bracket_at(a, b, w)

    def _bracket_at(self, a, b, w):
        sign = -ONE if a.index % 2 else ONE
        d_ab = self.bv_delta(self.cup(a, b), w)
        da_b = self.cup(self.bv_delta(a, w), b)
        a_db = self.cup(a, self.bv_delta(b, w))
        # classes coming through the negative-index guard carry no
        # coordinates; they are zeros of the common target space
        dim = max(len(d_ab.coords), len(da_b.coords), len(a_db.coords))

        def pad(c):
            return c.coords if len(c.coords) == dim else (ZERO,) * dim

        coords = tuple(x - y - sign * z for x, y, z in
                       zip(pad(d_ab), pad(da_b), pad(a_db)))
        return HClass("coh", d_ab.index, d_ab.degree, coords)

    def gerstenhaber(self, a, b, w=None):
        """The graded-antisymmetric normalization of the bracket.  The BV
        identity as implemented twists antisymmetry by the parity of the
        left argument; scaling by that parity restores the graded Lie
        axioms."""
        got = self.bracket(a, b, w)
        if a.index % 2 == 0:
            return got
        return HClass(got.side, got.index, got.degree,
                      tuple(-x for x in got.coords))

    def fundamental_class(self, w):
        """Chain class at index 6w+5 whose duality image is the unit."""
        return self.D_inv(self.named.cls("z", 0, 0), w)

    def bracket_via_calculus(self, a, b, w=None):
        """Bracket read off the calculus identity: contraction with [a,b]
        is the graded commutator of the Lie derivative along a with the
        contraction by b, evaluated on the fundamental class."""
        if a.index + b.index == 0:
            return HClass("coh", -1, a.degree + b.degree, ())
        if w is None:
            w = 0
            while 6 * w + 5 < a.index + b.index:
                w += 1
        c = self.fundamental_class(w)
        x = self.lie(a, self.contract(b, c))
        y = self.contract(b, self.lie(a, c))
        sign = -ONE if ((a.index - 1) * b.index) % 2 else ONE
        coords = tuple(p - sign * q for p, q in zip(x.coords, y.coords))
        return self.D(HClass("hom", x.index, x.degree, coords), w)

    def lie(self, eta, c):
        """Lie derivative of the homology class c along the cocycle eta,
        from the Cartan identity."""
        sign = -ONE if eta.index % 2 else ONE
        target_index = c.index - eta.index + 1
        target_degree = c.degree + eta.degree
        if target_index < 0:
            return HClass("hom", target_index, target_degree, ())
        first = self.contract(eta, self.connes(c))
        ic = self.contract(eta, c)
        second = (self.connes(ic) if ic.index >= 0
                  else self.zero_chain_cls(target_index, target_degree))
        coords = tuple(x - sign * y for x, y in
                       zip(second.coords, first.coords))
        return HClass("hom", target_index, target_degree, coords)

    # ------------------------------------------------------------------
    # the multiplication-by-theta matrix on the vertex-delta classes

    def alpha_matrix(self, f_classes, h_classes):
        """Matrix of cup with theta from the span of the f classes to the
        span of the h classes: column j expands theta cup f_j."""
        th = self.theta0() if self.named else self._theta0_generic()
        cols = []
        labelled = {i: c for i, c in enumerate(h_classes)}
        for fc in f_classes:
            exp = self.expand(self.cup(th, fc), labelled)
            cols.append([exp.get(i, ZERO) for i in range(len(h_classes))])
        return [[cols[j][i] for j in range(len(f_classes))]
                for i in range(len(h_classes))]

    def _theta0_generic(self):
        vals = {}
        for g in self.res.gens[1]:
            vals[g.gid] = self.A.arrow(g.key)
        return self.hh.cohomology_class(1, vals)

    def generic_f_classes(self, vertices):
        out = []
        for i in vertices:
            g = self._gen(2, "v", i)
            out.append(self.hh.cohomology_class(
                2, {g.gid: self.A.scale(-1, self.A.e(i))}))
        return out

    def generic_h_classes(self, vertices):
        out = []
        for i in vertices:
            g = self._gen(3, "v", i)
            out.append(self.hh.cohomology_class(3, {g.gid: self.A.omega(i)}))
        return out

    def folded_f_classes(self):
        """Index-2 classes of a chain quiver: vertex deltas antisymmetrized
        over the diagram involution (the symmetric combinations are not
        cocycles there)."""
        A = self.A
        flip = A.quiver.flip()
        out = []
        for i in range(1, A.nvert // 2 + 1):
            gi = self._gen(2, "v", i)
            gj = self._gen(2, "v", flip[i])
            vals = {gi.gid: A.scale(-1, A.e(i)), gj.gid: A.e(flip[i])}
            out.append(self.hh.cohomology_class(2, vals))
        return out

    def folded_h_classes(self):
        """Index-3 partners of the folded vertex deltas, antisymmetrized
        the opposite way."""
        A = self.A
        flip = A.quiver.flip()
        out = []
        for i in range(1, A.nvert // 2 + 1):
            gi = self._gen(3, "v", i)
            gj = self._gen(3, "v", flip[i])
            vals = {gi.gid: A.omega(i),
                    gj.gid: A.scale(-1, A.omega(flip[i]))}
            out.append(self.hh.cohomology_class(3, vals))
        return out


def alpha_closed_form(algebra):
    """h times the inverse of the sign-conjugated (2 + adjacency) matrix."""
    q = algebra.quiver
    n = q.nvert
    c = q.adjacency()
    mat = [[(2 if i == j else 0) + c[i][j] for j in range(n)]
           for i in range(n)]
    for i in range(n):
        for j in range(n):
            sign = -1 if (i + j) % 2 else 1
            mat[i][j] = Fraction(sign * mat[i][j])
    inv = _invert(mat)
    h = Fraction(q.h)
    return [[h * inv[i][j] for j in range(n)] for i in range(n)]


def alpha_folded_form(m):
    """Closed form for the m-vertex chain quiver: h times the inverse of
    the half-size Cartan-type matrix, last diagonal entry 3 when m is
    even."""
    n = m // 2
    mat = [[Fraction(2 if i == j else (-1 if abs(i - j) == 1 else 0))
            for j in range(n)] for i in range(n)]
    if m % 2 == 0:
        mat[n - 1][n - 1] = Fraction(3)
    inv = _invert(mat)
    h = Fraction(m + 1)
    return [[h * inv[i][j] for j in range(n)] for i in range(n)]


def _invert(mat):
    n = len(mat)
    sol = LinearSolver([row[:] for row in mat], nrows=n, ncols=n)
    cols = []
    for j in range(n):
        rhs = [ONE if i == j else ZERO for i in range(n)]
        x = sol.solve(rhs)
        if x is None:
            raise ArithmeticError("matrix is singular")
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]
