"""Tests for the periodic bimodule resolution."""

from fractions import Fraction

from preproj.algebra import get_algebra
from preproj.resolution import get_resolution

ZERO = Fraction(0)
ONE = Fraction(1)


def test_differentials_square_to_zero(hh_t1, hh_t2, hh_t3):
    for hh in (hh_t1, hh_t2, hh_t3):
        hh.res.check_dd_zero()


def test_complex_is_exact(hh_t1, hh_t2, hh_t3):
    for hh in (hh_t1, hh_t2, hh_t3):
        hh.res.check_exactness()


def test_period_six_shift(hh_t1, hh_t2, hh_t3):
    for hh in (hh_t1, hh_t2, hh_t3):
        hh.res.check_period_shift()


def test_self_duality(hh_t1, hh_t2, hh_t3):
    for hh in (hh_t1, hh_t2, hh_t3):
        hh.res.check_self_duality()


def test_chain_case_dd_zero_and_exactness():
    res = get_resolution("A", 2, 13)
    res.check_dd_zero()
    res.check_exactness()
    res.check_period_shift()
    res = get_resolution("A", 4, 13)
    res.check_dd_zero()
    res.check_exactness()


def test_twist_is_an_algebra_automorphism(hh_t2):
    res = hh_t2.res
    A = res.A
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = res.psi(A.mul({i: ONE}, {j: ONE}))
            rhs = A.mul(res.psi({i: ONE}), res.psi({j: ONE}))
            assert lhs == rhs
    # involution
    for i in range(A.dim):
        back = res.psi(res.psi({i: ONE}))
        assert back == {i: ONE}


def test_twist_fixes_vertices_and_flips_loop_sign(hh_t2):
    res = hh_t2.res
    A = res.A
    q = A.quiver
    for v in q.vertices:
        e = A.e(v)
        assert res.psi(e) == e
    loop_idx = next(a.idx for a in q.arrows if q.is_loop(a.idx))
    bl = A.arrow(loop_idx)
    assert res.psi(bl) == {k: -c for k, c in bl.items()}


def test_shift_and_twist_bookkeeping(hh_t1):
    res = hh_t1.res
    h = res.h
    assert [res.shift(i) for i in range(6)] == [0, 1, 2, h, h + 1, h + 2]
    assert res.shift(6) == 2 * h
    assert res.shift(9) == 3 * h
    assert [res.twist_flag(i) for i in range(12)] == [0, 0, 0, 1, 1, 1] * 2


def test_generator_counts_follow_the_pattern(hh_t3):
    # terms 0 and 3 are vertex-indexed, 1 and 4 arrow-indexed, 2 and 5 vertex-indexed
    res = hh_t3.res
    nv = len(res.A.quiver.vertices)
    na = len(res.A.quiver.arrows)
    counts = [len(res.gens[i]) for i in range(12)]
    assert counts == [nv, na, nv, nv, na, nv] * 2


def test_kernel_generators_match_casimir():
    # the kernel of d_2 into term 2 is spanned, per vertex, by the plain
    # Casimir element sum phi(x_j) (x) x_j^*
    for kind, size in (("T", 1), ("T", 2), ("A", 3)):
        A = get_algebra(kind, size)
        res = get_resolution(kind, size, 7)
        duals = A.dual_basis()
        gid_of = {g.key: g.gid for g in res.gens[2]}
        for k in A.quiver.vertices:
            cas = {}
            for j in range(A.dim):
                if A.basis[j].target != k:
                    continue
                pj = A.phi({j: ONE})
                src = A.basis[j].source
                for hi, hc in pj.items():
                    for di, dc in duals[j].items():
                        key = (gid_of[src], hi, di)
                        s = cas.get(key, ZERO) + hc * dc
                        if s:
                            cas[key] = s
                        else:
                            cas.pop(key, None)
            w = res.w[k]
            assert set(w) == set(cas)
            ratios = {cas[key] / w[key] for key in w}
            assert len(ratios) == 1
