"""Exact linear algebra over the rationals.

A matrix is a list of rows, each row a list of Fraction.  Everything here
is dense and deterministic: pivoting always takes the first viable row, so
repeated runs produce byte-identical bases.  Scale is small (dimensions in
the hundreds), exactness matters more than speed.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def make_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def zeros(nrows, ncols):
    return [[ZERO] * ncols for _ in range(nrows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def transpose(mat):
    if not mat:
        return []
    return [list(col) for col in zip(*mat)]


def matmul(a, b):
    if not a or not b:
        return []
    nk = len(b)
    out = []
    for row in a:
        acc = [ZERO] * len(b[0])
        for k in range(nk):
            x = row[k]
            if x:
                brow = b[k]
                for j, y in enumerate(brow):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def mat_vec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def is_zero_matrix(mat):
    return all(not x for row in mat for x in row)


def rref(mat):
    """Reduced row echelon form.  Returns (reduced copy, pivot column list)."""
    m = [row[:] for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(mat):
    return len(rref(mat)[1])


def kernel_basis(mat, ncols=None):
    """Basis of the right kernel {v : mat @ v = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    if not mat:
        return [row[:] for row in identity(ncols)]
    red, pivots = rref(mat)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][free]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """One solution of mat @ x = rhs with free variables zero, or None."""
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    aug = [mat[i][:] + [rhs[i]] for i in range(nrows)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][ncols]
    return x


class RowSpace:
    """A subspace of Q^n kept in reduced row echelon form.

    Supports incremental inserts, canonical coset reduction and coordinates
    relative to the stored echelon basis.  The echelon invariant makes
    `reduce` a projection onto a canonical complement, so coset
    representatives are unique.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []
        self.pivots = []

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def contains(self, vec):
        return not any(self.reduce(vec))

    def add(self, vec):
        """Insert vec; returns True if the dimension grew."""
        v = self.reduce(vec)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = ONE / v[p]
        v = [x * inv for x in v]
        for i, row in enumerate(self.rows):
            if row[p]:
                f = row[p]
                self.rows[i] = [x - f * y for x, y in zip(row, v)]
        k = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(k, v)
        self.pivots.insert(k, p)
        return True

    def add_all(self, vecs):
        for v in vecs:
            self.add(v)
        return self

    def coords(self, vec):
        """Coefficients of vec in the echelon basis, or None if outside."""
        v = list(vec)
        cs = []
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            cs.append(c)
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        if any(v):
            return None
        return cs

    def basis(self):
        return [row[:] for row in self.rows]


class LinearSolver:
    """Reusable solver for a fixed matrix: factor once, solve many rhs."""

    def __init__(self, mat, nrows=None, ncols=None):
        self.nrows = len(mat) if nrows is None else nrows
        self.ncols = (len(mat[0]) if mat else 0) if ncols is None else ncols
        aug = [mat[i][:] + [ONE if k == i else ZERO for k in range(self.nrows)]
               for i in range(self.nrows)]
        if not aug:
            self.red, self.trans, self.pivots = [], [], []
            self.rank = 0
            return
        red, pivots = rref_partial(aug, self.ncols)
        self.red = [row[:self.ncols] for row in red]
        self.trans = [row[self.ncols:] for row in red]
        self.pivots = pivots
        self.rank = len(pivots)

    def solve(self, rhs):
        """Solution with free variables zero, or None if inconsistent."""
        v = [sum((t * r for t, r in zip(row, rhs) if t and r), ZERO)
             for row in self.trans]
        for i in range(self.rank, self.nrows):
            if v[i]:
                return None
        x = [ZERO] * self.ncols
        for r, p in enumerate(self.pivots):
            x[p] = v[r]
        return x

    def kernel(self):
        pivot_set = set(self.pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            v = [ZERO] * self.ncols
            v[free] = ONE
            for r, p in enumerate(self.pivots):
                v[p] = -self.red[r][free]
            basis.append(v)
        return basis


def rref_partial(mat, stop_col):
    """RREF using only the first stop_col columns for pivoting."""
    m = [row[:] for row in mat]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(stop_col):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def quotient_basis(ambient_vectors, sub):
    """Canonical reps of a basis of span(ambient_vectors)/sub.

    `sub` is a RowSpace.  Returns (reps, space) where space is a RowSpace
    spanned by the reps; reps are sub-reduced echelon rows, so every coset
    has the unique representative space.reduce-compatible coordinates.
    """
    reps = RowSpace(sub.ncols)
    for v in ambient_vectors:
        reps.add(sub.reduce(v))
    return reps.basis(), reps
