"""Degreewise construction of the preprojective algebra of a double quiver.

The algebra is the path algebra of the double modulo the homogeneous ideal
generated by the vertex components of sum_a eps(a) a a* (minus b^2 at the
loop vertex).  We build one degree slice at a time: the slice-d ideal is
spanned by arrow extensions of the slice-(d-1) ideal, and a reduced row
echelon form over the word basis picks canonical monomial representatives
for the quotient.

Conventions, used everywhere downstream:
  * a path is a word of arrows in walk order; word (v, (w1,..,wk)) starts
    at vertex v and walks w1 first,
  * the product x*y means "walk y, then walk x", so x*y is nonzero exactly
    when y ends where x starts, and e_i * A * e_j is spanned by paths from
    j to i,
  * elements are sparse dicts {basis index: Fraction}.

The canonical basis element of each residue class is the lexicographically
smallest path under (degree, source, target, word); the echelon reduction
eliminates larger words first to make that happen.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import RowSpace, rref, make_matrix, solve
from .quiver import DoubleQuiver, type_t, type_a

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class BasisPath:
    index: int
    degree: int
    source: int
    target: int
    word: tuple


def _word_key(source, target, arrows):
    return (source, target, arrows)


class PreprojectiveAlgebra:
    def __init__(self, quiver: DoubleQuiver):
        self.quiver = quiver
        self.h = quiver.h
        self.kind = quiver.kind
        self.nvert = quiver.nvert
        self._build()
        self._mul_cache = {}
        self._gram = None
        self._duals = None

    # ------------------------------------------------------------------
    # construction

    def _enumerate_words(self, prev_words):
        arrows = self.quiver.arrows
        out = []
        for (src, w) in prev_words:
            end = arrows[w[-1]].target if w else src
            for a in arrows:
                if a.source == end:
                    out.append((src, w + (a.idx,)))
        out.sort(key=lambda sw: _word_key(sw[0], self._word_target(sw), sw[1]))
        return out

    def _word_target(self, sw):
        src, w = sw
        return self.quiver.arrows[w[-1]].target if w else src

    def _relation_rows(self, windex):
        """The defining relations as vectors over the degree-2 word basis."""
        q = self.quiver
        nbase = sum(1 for a in q.arrows if not a.name.endswith("*") and not q.is_loop(a.idx))
        rows = []
        for j in q.vertices:
            vec = {}
            if j >= 2:
                am = q.by_name[f"a{j-1}"]
                vec[(j, (q.star[am.idx], am.idx))] = ONE
            if j <= nbase:
                a = q.by_name[f"a{j}"]
                vec[(j, (a.idx, q.star[a.idx]))] = -ONE
            if q.loop_vertex == j:
                b = q.by_name["b"]
                vec[(j, (b.idx, b.idx))] = -ONE
            row = [ZERO] * len(windex)
            for w, c in vec.items():
                row[windex[w]] = c
            rows.append(row)
        return rows

    def _build(self):
        q = self.quiver
        arrows = q.arrows
        self.basis = []
        self.word_to_index = {}
        self.by_degree = {}
        self._blocks = {}
        self._reduce = {}
        self.hilbert = []

        words = [(i, ()) for i in q.vertices]
        degree = 0
        ideal_rows = None
        while True:
            if degree > 0:
                words = self._enumerate_words(words)
            if not words:
                top_plus = degree
                break
            # Columns in descending key order so echelon pivots eliminate the
            # lexicographically larger words.
            keyed = sorted(
                words,
                key=lambda sw: _word_key(sw[0], self._word_target(sw), sw[1]),
            )
            desc = list(reversed(keyed))
            col = {w: c for c, w in enumerate(desc)}
            space = RowSpace(len(desc))
            if degree == 2:
                asc_index = {w: i for i, w in enumerate(keyed)}
                for row in self._relation_rows(asc_index):
                    v = [ZERO] * len(desc)
                    for i, x in enumerate(row):
                        if x:
                            v[col[keyed[i]]] = x
                    space.add(v)
            elif degree > 2 and ideal_rows:
                for vec in ideal_rows:
                    for a in arrows:
                        left = [ZERO] * len(desc)
                        right = [ZERO] * len(desc)
                        any_l = any_r = False
                        for (sw, c) in vec:
                            src, w = sw
                            end = arrows[w[-1]].target
                            if end == a.source:
                                left[col[(src, w + (a.idx,))]] = c
                                any_l = True
                            if a.target == src:
                                right[col[(a.source, (a.idx,) + w)]] = c
                                any_r = True
                        if any_l:
                            space.add(left)
                        if any_r:
                            space.add(right)
            pivot_set = set(space.pivots)
            free_words = [desc[c] for c in range(len(desc)) if c not in pivot_set]
            free_words.sort(key=lambda sw: _word_key(sw[0], self._word_target(sw), sw[1]))
            if not free_words:
                # Confirm the slice above is also dead before halting.
                cur_rows = [[(desc[c], row[c]) for c in range(len(desc)) if row[c]]
                            for row in space.rows]
                nxt = self._enumerate_words(words)
                if nxt:
                    ncol = {w: c for c, w in enumerate(reversed(sorted(
                        nxt, key=lambda sw: _word_key(sw[0], self._word_target(sw), sw[1]))))}
                    nspace = RowSpace(len(nxt))
                    for vec in cur_rows:
                        for a in arrows:
                            left = [ZERO] * len(nxt)
                            right = [ZERO] * len(nxt)
                            any_l = any_r = False
                            for (sw, c) in vec:
                                src, w = sw
                                end = arrows[w[-1]].target
                                if end == a.source:
                                    left[ncol[(src, w + (a.idx,))]] = c
                                    any_l = True
                                if a.target == src:
                                    right[ncol[(a.source, (a.idx,) + w)]] = c
                                    any_r = True
                            if any_l:
                                nspace.add(left)
                            if any_r:
                                nspace.add(right)
                    if nspace.dim != len(nxt):
                        raise ArithmeticError("graded slice revived past a zero slice")
                top_plus = degree
                break

            degree_start = len(self.basis)
            for sw in free_words:
                src, w = sw
                bp = BasisPath(len(self.basis), degree, src, self._word_target(sw), w)
                self.basis.append(bp)
                self.word_to_index[sw] = bp.index
            self.by_degree[degree] = list(range(degree_start, len(self.basis)))

            red = {}
            for sw in free_words:
                red[sw] = {self.word_to_index[sw]: ONE}
            for row, p in zip(space.rows, space.pivots):
                pw = desc[p]
                expr = {}
                for c in range(p + 1, len(desc)):
                    if row[c]:
                        expr[self.word_to_index[desc[c]]] = -row[c]
                red[pw] = expr
            self._reduce[degree] = red

            hmat = [[0] * self.nvert for _ in range(self.nvert)]
            for sw in free_words:
                src, w = sw
                hmat[self._word_target(sw) - 1][src - 1] += 1
            self.hilbert.append(hmat)

            ideal_rows = []
            for row, p in zip(space.rows, space.pivots):
                vec = [(desc[c], row[c]) for c in range(len(desc)) if row[c]]
                ideal_rows.append(vec)
            degree += 1

        self.top_degree = len(self.hilbert) - 1
        self.dim = len(self.basis)
        if self.top_degree != self.h - 2:
            raise ArithmeticError(
                f"top degree {self.top_degree} != h-2 = {self.h - 2}")
        self._check_hilbert()
        for i, j in self._block_iter():
            self._blocks[(i, j)] = {}
        for bp in self.basis:
            blk = self._blocks[(bp.target, bp.source)]
            blk.setdefault(bp.degree, []).append(bp.index)

    def _block_iter(self):
        for i in self.quiver.vertices:
            for j in self.quiver.vertices:
                yield i, j

    def _check_hilbert(self):
        expected = self.hilbert_closed_form(self.top_degree + 2)
        got = [make_matrix(m) for m in self.hilbert]
        got += [make_matrix([[0] * self.nvert] * self.nvert)
                for _ in range(len(expected) - len(got))]
        if got != expected:
            raise ArithmeticError("graded dimensions disagree with the closed form")

    def hilbert_closed_form(self, through_degree):
        """Coefficient matrices of (1 + nu t^h) (1 - C t + t^2)^(-1).

        nu is the diagram flip permutation matrix (identity for kind T).
        """
        n = self.nvert
        c = make_matrix(self.quiver.adjacency())
        flip = self.quiver.flip()
        s = [identity_m(n), c]
        for d in range(2, through_degree + 1):
            s.append(mat_sub(mat_mul(c, s[d - 1]), s[d - 2]))
        out = []
        for d in range(through_degree + 1):
            m = [row[:] for row in s[d]]
            if d >= self.h:
                prev = s[d - self.h]
                for i in range(n):
                    for j in range(n):
                        m[i][j] += prev[flip[i + 1] - 1][j]
            out.append(m)
        return out

    # ------------------------------------------------------------------
    # element utilities

    def zero(self):
        return {}

    def e(self, i):
        return {self.word_to_index[(i, ())]: ONE}

    def unit(self):
        out = {}
        for i in self.quiver.vertices:
            out.update(self.e(i))
        return out

    def arrow(self, idx):
        a = self.quiver.arrows[idx]
        return {self.word_to_index[(a.source, (idx,))]: ONE}

    def from_word(self, source, arrows):
        """Reduce an arbitrary walk word to basis coordinates."""
        d = len(arrows)
        if d > self.top_degree:
            return {}
        red = self._reduce[d].get((source, tuple(arrows)))
        if red is None:
            return {}
        return dict(red)

    def add(self, x, y):
        out = dict(x)
        for k, v in y.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def scale(self, c, x):
        c = Fraction(c)
        if not c:
            return {}
        return {k: c * v for k, v in x.items()}

    def sub(self, x, y):
        return self.add(x, self.scale(-1, y))

    def _mul_basis(self, i, j):
        key = (i, j)
        got = self._mul_cache.get(key)
        if got is not None:
            return got
        p, q2 = self.basis[i], self.basis[j]
        if p.source != q2.target or p.degree + q2.degree > self.top_degree:
            out = {}
        else:
            out = self.from_word(q2.source, q2.word + p.word)
        self._mul_cache[key] = out
        return out

    def mul(self, x, y):
        out = {}
        for i, ci in x.items():
            for j, cj in y.items():
                for k, ck in self._mul_basis(i, j).items():
                    s = out.get(k, ZERO) + ci * cj * ck
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def degree_of(self, x):
        """Degree of a homogeneous element, None for 0."""
        ds = {self.basis[i].degree for i in x}
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("element is not homogeneous")
        return ds.pop()

    def block_indices(self, degree, target, source):
        return self._blocks.get((target, source), {}).get(degree, [])

    def block_of(self, x):
        """(target, source) for an element in a single block, None for 0."""
        bs = {(self.basis[i].target, self.basis[i].source) for i in x}
        if not bs:
            return None
        if len(bs) > 1:
            raise ValueError("element spans several blocks")
        return bs.pop()

    def vertex_components(self, x):
        """Split into blocks: dict (target, source) -> element."""
        out = {}
        for i, c in x.items():
            bp = self.basis[i]
            out.setdefault((bp.target, bp.source), {})[i] = c
        return out

    # ------------------------------------------------------------------
    # Frobenius structure

    def omega(self, i):
        """Canonical top-degree monomial ending at vertex i.  It starts at
        the mirror vertex when the graph has a nontrivial involution."""
        idx = self.block_indices(self.top_degree, i, self.quiver.flip()[i])
        if len(idx) != 1:
            raise ValueError(f"top block at vertex {i} has dimension {len(idx)}")
        return {idx[0]: ONE}

    def trace(self, x):
        return sum((c for i, c in x.items()
                    if self.basis[i].degree == self.top_degree), ZERO)

    def pairing(self, x, y):
        return self.trace(self.mul(x, y))

    def gram(self):
        if self._gram is None:
            n = self.dim
            g = [[ZERO] * n for _ in range(n)]
            for i in range(n):
                di = self.basis[i].degree
                for j in range(n):
                    if self.basis[j].degree == self.top_degree - di:
                        g[i][j] = self.trace(self._mul_basis(i, j))
            self._gram = g
        return self._gram

    def dual_basis(self):
        """x*_j aligned with the monomial basis: trace(x_i x*_j) = delta_ij."""
        if self._duals is None:
            g = self.gram()
            n = self.dim
            aug = [g[i][:] + [ONE if k == i else ZERO for k in range(n)]
                   for i, _ in enumerate(g)]
            red, pivots = rref(aug)
            if pivots != list(range(n)):
                raise ArithmeticError("the trace pairing is degenerate")
            ginv = [row[n:] for row in red]
            duals = []
            for j in range(n):
                duals.append({k: ginv[k][j] for k in range(n) if ginv[k][j]})
            self._duals = duals
        return self._duals

    def nakayama_matrix(self):
        """Matrix N with trace(x y) = trace(y N(x)) on the monomial basis."""
        n = self.dim
        g = self.gram()
        cols = []
        for a in range(n):
            rhs = [g[a][c] for c in range(n)]
            col = solve(g, rhs)
            if col is None:
                raise ArithmeticError("trace pairing is degenerate")
            cols.append(col)
        return [[cols[a][b] for a in range(n)] for b in range(n)]

    # ------------------------------------------------------------------
    # the standard (anti)automorphisms

    def phi(self, x):
        """Algebra automorphism: negates the loop, fixes everything else."""
        loop = self.quiver.loop_vertex
        if loop is None:
            return dict(x)
        bidx = self.quiver.by_name["b"].idx
        out = {}
        for i, c in x.items():
            k = sum(1 for a in self.basis[i].word if a == bidx)
            out[i] = -c if k % 2 else c
        return out

    def gamma(self, x):
        """Anti-automorphism: reverse the path and star each arrow."""
        star = self.quiver.star
        out = {}
        for i, c in x.items():
            bp = self.basis[i]
            rev = tuple(star[a] for a in reversed(bp.word))
            for k, ck in self.from_word(bp.target, rev).items():
                s = out.get(k, ZERO) + c * ck
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def rho_conj(self, x):
        """Conjugation by rho = sum_i (-1)^(n+i) e_i."""
        out = {}
        for i, c in x.items():
            bp = self.basis[i]
            sgn = (-1) ** (bp.source + bp.target)
            out[i] = sgn * c
        return out

    # ------------------------------------------------------------------
    # center and cocenter

    def center_basis(self):
        """Canonical basis of the center, listed degree by degree."""
        out = []
        arrows = [self.arrow(a.idx) for a in self.quiver.arrows]
        for d in range(self.top_degree + 1):
            # commuting with the idempotents forces diagonal components
            idxs = [i for i in self.by_degree.get(d, [])
                    if self.basis[i].source == self.basis[i].target]
            if not idxs:
                continue
            rows = []
            for i in idxs:
                x = {i: ONE}
                row = []
                for v in arrows:
                    comm = self.sub(self.mul(v, x), self.mul(x, v))
                    row.extend(self._dense(comm, d + 1))
                rows.append(row)
            cols = [list(col) for col in zip(*rows)] if rows and rows[0] else []
            if cols:
                ker = kernel_of(cols, len(idxs))
            else:
                ker = [[ONE if a == b else ZERO for a in range(len(idxs))]
                       for b in range(len(idxs))]
            for v in ker:
                out.append({idxs[a]: v[a] for a in range(len(idxs)) if v[a]})
        return out

    def commutator_space(self):
        """Per-degree RowSpaces spanned by all [x, y] with x, y basis paths."""
        spaces = {d: RowSpace(len(ix)) for d, ix in self.by_degree.items()}
        for i in range(self.dim):
            di = self.basis[i].degree
            for j in range(i, self.dim):
                d = di + self.basis[j].degree
                if d > self.top_degree:
                    continue
                comm = self.sub(self._mul_basis(i, j), self._mul_basis(j, i))
                if comm:
                    spaces[d].add(self._dense(comm, d))
        return spaces

    def cocenter_dims(self):
        sp = self.commutator_space()
        return [len(self.by_degree[d]) - sp[d].dim
                for d in range(self.top_degree + 1)]

    def _dense(self, x, degree):
        idxs = self.by_degree.get(degree, [])
        pos = {b: a for a, b in enumerate(idxs)}
        v = [ZERO] * len(idxs)
        for i, c in x.items():
            v[pos[i]] = c
        return v


def identity_m(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    return [[sum((a[i][t] * b[t][j] for t in range(k)), ZERO)
             for j in range(m)] for i in range(n)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def kernel_of(rows, ncols):
    from .linalg import kernel_basis
    return kernel_basis(rows, ncols)


@lru_cache(maxsize=None)
def get_algebra(kind, size):
    q = type_t(size) if kind == "T" else type_a(size)
    return PreprojectiveAlgebra(q)
