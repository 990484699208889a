"""Exact integer linear algebra: Smith form, groups, limits."""

import random

import numpy as np
import pytest

from tilecohom import abelian as ab


def random_matrix(rng, max_dim=8, max_entry=9):
    m = rng.randrange(0, max_dim + 1)
    n = rng.randrange(0, max_dim + 1)
    return ab.intmat([[rng.randint(-max_entry, max_entry) for _ in range(n)] for _ in range(m)])


def check_snf(a):
    dec = ab.smith_normal_form(a)
    assert ab.mat_eq(dec.u.dot(a).dot(dec.v), dec.s)
    assert abs(ab.det(dec.u)) == 1
    assert abs(ab.det(dec.v)) == 1
    assert ab.mat_eq(dec.u.dot(dec.u_inv), ab.eye(a.shape[0]))
    assert ab.mat_eq(dec.v.dot(dec.v_inv), ab.eye(a.shape[1]))
    divs = dec.divisors
    assert all(d >= 0 for d in divs)
    for x, y in zip(divs, divs[1:]):
        assert (x == 0 and y == 0) or (x != 0 and y % x == 0)
    # off-diagonal entries vanish
    m, n = dec.s.shape
    for i in range(m):
        for j in range(n):
            if i != j:
                assert dec.s[i, j] == 0
    return dec


class TestSmithNormalForm:
    def test_identity(self):
        dec = check_snf(ab.eye(3))
        assert dec.divisors == [1, 1, 1]

    def test_zero_1x1(self):
        dec = check_snf(ab.intmat([[0]]))
        assert dec.divisors == [0]

    def test_divisor_chain_2x2(self):
        # gcd of entries is 2, |det| = 8, so the chain is (2, 4)
        dec = check_snf(ab.intmat([[2, 4], [6, 8]]))
        assert dec.divisors == [2, 4]

    def test_empty_shapes(self):
        for shape in [(0, 0), (0, 3), (3, 0)]:
            check_snf(ab.zeros(*shape))

    def test_randomized(self):
        rng = random.Random(20260401)
        for _ in range(300):
            check_snf(random_matrix(rng))

    def test_kernel_is_saturated(self):
        rng = random.Random(7)
        for _ in range(50):
            a = random_matrix(rng, max_dim=6, max_entry=5)
            k = ab.kernel_basis(a)
            if k.shape[1]:
                assert ab.is_zero(a.dot(k))
            # saturation: Smith form of the kernel basis has unit divisors
            assert all(d == 1 for d in ab.smith_normal_form(k).nonzero_divisors())


class TestSolver:
    def test_solve_roundtrip(self):
        rng = random.Random(13)
        for _ in range(100):
            a = random_matrix(rng, max_dim=5, max_entry=4)
            x = np.array([rng.randint(-3, 3) for _ in range(a.shape[1])], dtype=object)
            b = a.dot(x)
            sol = ab.LinearSolver(a).solve(b)
            assert sol is not None
            assert all(v == 0 for v in (a.dot(sol) - b).flat)

    def test_unsolvable(self):
        a = ab.intmat([[2]])
        assert ab.LinearSolver(a).solve([1]) is None


class TestFgAbGroup:
    def test_canonical_str(self):
        assert str(ab.FgAbGroup(2, (5,))) == "Z^2 + Z/5"
        assert str(ab.FgAbGroup(0)) == "0"
        assert str(ab.FgAbGroup(1)) == "Z"

    def test_divisor_chain_enforced(self):
        with pytest.raises(ValueError):
            ab.FgAbGroup(0, (4, 2))
        with pytest.raises(ValueError):
            ab.FgAbGroup(0, (1,))

    def test_direct_sum_rechains(self):
        s = ab.FgAbGroup(1, (2,)).direct_sum(ab.FgAbGroup(0, (3,)))
        assert s == ab.FgAbGroup(1, (6,))

    def test_cokernel(self):
        assert ab.cokernel(ab.intmat([[5]])) == ab.FgAbGroup(0, (5,))
        assert ab.cokernel(ab.zeros(2, 0)) == ab.FgAbGroup(2)


def homology_oracle(d_in, d_out):
    """Rank and torsion straight from the two Smith decompositions.

    Rank by rank-nullity; torsion from the Smith form of d_in rewritten in
    kernel coordinates obtained from the Smith form of d_out.
    """
    d_in, d_out = ab.as_intmat(d_in), ab.as_intmat(d_out)
    n = d_out.shape[1]
    dec_out = ab.smith_normal_form(d_out)
    r_out = dec_out.rank
    kernel = dec_out.v[:, r_out:n]
    # coordinates of d_in columns w.r.t. kernel columns: rows r_out.. of v_inv @ d_in
    coords = dec_out.v_inv.dot(d_in)[r_out:n, :]
    dec_in = ab.smith_normal_form(coords)
    torsion = tuple(d for d in dec_in.nonzero_divisors() if d > 1)
    free = (n - r_out) - dec_in.rank
    del kernel
    return free, torsion


class TestHomology:
    def test_circle(self):
        # one vertex, one edge: boundary of the edge is zero
        d_out = ab.zeros(0, 1)
        d_in = ab.zeros(1, 0)
        assert ab.homology_at(d_in, d_out) == ab.FgAbGroup(1)

    def test_mod5(self):
        assert ab.homology_at(ab.intmat([[5]]), ab.zeros(1, 1)) == ab.FgAbGroup(0, (5,))

    def test_two_empty_maps(self):
        assert ab.homology_at(ab.zeros(4, 0), ab.zeros(0, 4)) == ab.FgAbGroup(4)

    def test_composition_checked(self):
        with pytest.raises(ab.CompositionNotZero):
            ab.homology_at(ab.intmat([[1], [0]]), ab.intmat([[1, 0]]))

    def test_against_oracle_randomized(self):
        rng = random.Random(99)
        for _ in range(150):
            n, p = 4, 4
            d_in = ab.intmat([[rng.randint(-3, 3) for _ in range(p)] for _ in range(n)])
            # rows of d_out live in the left kernel of d_in
            left_kernel = ab.kernel_basis(d_in.T).T
            rows = rng.randrange(0, 5)
            mix = ab.zeros(rows, left_kernel.shape[0])
            for i in range(rows):
                for j in range(left_kernel.shape[0]):
                    mix[i, j] = rng.randint(-2, 2)
            d_out = mix.dot(left_kernel)
            assert ab.is_zero(d_out.dot(d_in))
            h = ab.homology_at(d_in, d_out)
            free, torsion = homology_oracle(d_in, d_out)
            assert h.free_rank == free
            assert h.torsion == torsion


ORDER_TEN_DEGREE1_MATRIX = [
    [1, 0, 0, 0, 0],
    [0, 0, 0, 0, -1],
    [0, 1, 0, 0, 1],
    [0, 0, 1, 0, -1],
    [0, 0, 0, 1, 1],
]


class TestInvariantsCoinvariants:
    def test_identity(self):
        f = ab.GroupHom.identity(ab.FgAbGroup(3))
        assert ab.invariants_of(f) == ab.FgAbGroup(3)
        assert ab.coinvariants_of(f) == ab.FgAbGroup(3)

    def test_negation(self):
        f = ab.GroupHom(ab.FgAbGroup(1), ab.FgAbGroup(1), ab.intmat([[-1]]))
        assert ab.invariants_of(f) == ab.FgAbGroup(0)
        assert ab.coinvariants_of(f) == ab.FgAbGroup(0, (2,))

    def test_rotation_matrix_on_z5(self):
        g = ab.FgAbGroup(5)
        f = ab.GroupHom(g, g, ab.intmat(ORDER_TEN_DEGREE1_MATRIX))
        assert ab.invariants_of(f) == ab.FgAbGroup(1)
        assert ab.coinvariants_of(f) == ab.FgAbGroup(1)

    def test_requires_endo(self):
        f = ab.GroupHom(ab.FgAbGroup(1), ab.FgAbGroup(2), ab.intmat([[1], [0]]))
        with pytest.raises(ab.NotEndomorphism):
            ab.invariants_of(f)

    def test_invariants_free_on_free_groups(self):
        rng = random.Random(5)
        for _ in range(50):
            n = rng.randrange(1, 5)
            g = ab.FgAbGroup(n)
            mat = ab.intmat([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
            assert ab.invariants_of(ab.GroupHom(g, g, mat)).is_free()

    def test_torsion_respect_enforced(self):
        g = ab.FgAbGroup(0, (2,))
        h = ab.FgAbGroup(1)
        with pytest.raises(ValueError):
            ab.GroupHom(g, h, ab.intmat([[1]]))


class TestDirectLimit:
    def test_identity_system(self):
        g = ab.FgAbGroup(3)
        sys = ab.DirectSystem(g, ab.GroupHom.identity(g))
        res = ab.direct_limit_full(sys)
        assert res.group == g
        assert res.stage == 0

    def test_doubling_does_not_stabilize(self):
        g = ab.FgAbGroup(1)
        sys = ab.DirectSystem(g, ab.GroupHom(g, g, ab.intmat([[2]])))
        with pytest.raises(ab.NotStabilizing):
            ab.direct_limit(sys)

    def test_unimodular_fibonacci_matrix(self):
        g = ab.FgAbGroup(2)
        f = ab.GroupHom(g, g, ab.intmat([[1, 1], [1, 0]]))
        assert ab.direct_limit(ab.DirectSystem(g, f)) == ab.FgAbGroup(2)

    def test_projection_stabilizes_at_one(self):
        g = ab.FgAbGroup(2)
        f = ab.GroupHom(g, g, ab.intmat([[1, 0], [0, 0]]))
        res = ab.direct_limit_full(ab.DirectSystem(g, f))
        assert res.group == ab.FgAbGroup(1)
        assert res.stage == 1

    def test_restrict_commuting_map(self):
        # limit of (Z^2, projection); a commuting diagonal map restricts to it
        g = ab.FgAbGroup(2)
        f = ab.GroupHom(g, g, ab.intmat([[1, 0], [0, 0]]))
        res = ab.direct_limit_full(ab.DirectSystem(g, f))
        n = ab.GroupHom(g, g, ab.intmat([[-1, 0], [0, 7]]))
        restricted = res.restrict(n)
        assert restricted.source == ab.FgAbGroup(1)
        assert abs(restricted.matrix[0, 0]) == 1


class TestMappingTorus:
    def test_identity_on_point_gives_circle(self):
        g = ab.FgAbGroup(1)
        degs = ab.mapping_torus_cohomology([ab.GroupHom.identity(g)])
        assert [d.group for d in degs] == [ab.FgAbGroup(1), ab.FgAbGroup(1)]
        assert not any(d.extension_ambiguous for d in degs)

    def test_negation_toy(self):
        g = ab.FgAbGroup(1)
        f = ab.GroupHom(g, g, ab.intmat([[-1]]))
        degs = ab.mapping_torus_cohomology([f])
        assert degs[0].group == ab.FgAbGroup(0)
        assert degs[1].group == ab.FgAbGroup(0, (2,))
        assert not degs[1].extension_ambiguous


class TestSubquotientTransport:
    def test_induced_endomorphism(self):
        # chain complex 0 -> Z^2 -> 0 with a swap map
        sq = ab.Subquotient.of_pair(ab.zeros(2, 0), ab.zeros(0, 2))
        f = sq.induced_endomorphism(ab.intmat([[0, 1], [1, 0]]))
        assert f.source == ab.FgAbGroup(2)
        assert ab.characteristic_polynomial(f.matrix) == [1, 0, -1]


def test_characteristic_polynomial():
    assert ab.characteristic_polynomial(ab.eye(2)) == [1, -2, 1]
    m = ab.intmat(ORDER_TEN_DEGREE1_MATRIX)
    # (x - 1)(x^4 - x^3 + x^2 - x + 1)
    assert ab.characteristic_polynomial(m) == [1, -2, 2, -2, 2, -1]
