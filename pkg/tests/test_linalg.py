from fractions import Fraction

from hypothesis import given, settings, strategies as st

from preproj.linalg import (LinearSolver, RowSpace, identity, kernel_basis,
                            make_matrix, mat_vec, matmul, quotient_basis,
                            rank, rref, solve, transpose)

ZERO = Fraction(0)

entries = st.integers(min_value=-5, max_value=5).map(Fraction)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    nrows = draw(st.integers(1, max_rows))
    ncols = draw(st.integers(1, max_cols))
    return [[draw(entries) for _ in range(ncols)] for _ in range(nrows)]


@st.composite
def systems(draw):
    m = draw(matrices())
    x = [draw(entries) for _ in range(len(m[0]))]
    return m, x


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_is_idempotent(m):
    red, pivots = rref(m)
    again, pivots2 = rref(red)
    assert again == red
    assert pivots2 == pivots


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_bounds_and_transpose_invariance(m):
    r = rank(m)
    assert 0 <= r <= min(len(m), len(m[0]))
    assert rank(transpose(m)) == r


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_vectors_annihilate(m):
    ker = kernel_basis(m)
    assert len(ker) == len(m[0]) - rank(m)
    for v in ker:
        assert all(x == ZERO for x in mat_vec(m, v))


@settings(max_examples=60, deadline=None)
@given(systems())
def test_solve_returns_actual_solutions(mx):
    m, x = mx
    rhs = mat_vec(m, x)
    got = solve(m, rhs)
    assert got is not None
    assert mat_vec(m, got) == rhs


@settings(max_examples=60, deadline=None)
@given(systems())
def test_solver_agrees_with_direct_solve(mx):
    m, x = mx
    rhs = mat_vec(m, x)
    sol = LinearSolver(m)
    assert sol.rank == rank(m)
    got = sol.solve(rhs)
    assert got is not None
    assert mat_vec(m, got) == rhs
    for v in sol.kernel():
        assert all(c == ZERO for c in mat_vec(m, v))


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=4, max_cols=4), matrices(max_rows=4, max_cols=4),
       matrices(max_rows=4, max_cols=4))
def test_matmul_is_associative(a, b, c):
    if len(a[0]) != len(b) or len(b[0]) != len(c):
        return
    assert matmul(matmul(a, b), c) == matmul(a, matmul(b, c))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rowspace_membership_and_coords(m):
    sp = RowSpace(len(m[0]))
    for row in m:
        grew = sp.add(row)
        assert sp.contains(row)
        assert grew in (True, False)
    assert sp.dim == rank(m)
    for row in m:
        cs = sp.coords(row)
        assert cs is not None
        combo = [ZERO] * len(m[0])
        for c, b in zip(cs, sp.basis()):
            combo = [x + c * y for x, y in zip(combo, b)]
        assert combo == [Fraction(x) for x in row]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rowspace_reduce_is_canonical(m):
    sp = RowSpace(len(m[0]))
    sp.add_all(m)
    for row in m:
        red = sp.reduce(row)
        assert all(x == ZERO for x in red)
        shifted = [x + y for x, y in zip(row, m[0])]
        assert sp.reduce(shifted) == sp.reduce([Fraction(x) for x in m[0]])


@settings(max_examples=40, deadline=None)
@given(matrices(), matrices())
def test_quotient_basis_dimension(a, b):
    if len(a[0]) != len(b[0]):
        return
    sub = RowSpace(len(b[0]))
    sub.add_all(b)
    reps, space = quotient_basis(a, sub)
    assert len(reps) == rank(a + b) - sub.dim
    for v in reps:
        assert space.contains(v)
        assert sub.reduce(v) == v


def test_identity_is_neutral():
    m = make_matrix([[1, 2], [3, 4], [5, 6]])
    assert matmul(m, identity(2)) == m
    assert matmul(identity(3), m) == m
