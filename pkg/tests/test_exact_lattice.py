"""Unit tests for the exact integer linear algebra core.

Independent oracles used here: brute-force small-coefficient membership
search, minor-gcd characterization of SNF diagonals, and sympy's normal
forms as a cross-implementation check.
"""

import random
from itertools import product

import pytest
from sympy import Matrix as SymMatrix
from sympy.matrices.normalforms import smith_normal_form

from tropic_pic.exact_lattice import (
    AbGroup,
    IntMatrix,
    Lattice,
    LatticeError,
    cokernel,
    det,
    gcd_of_maximal_minors,
    hnf,
    invariant_factors,
    kernel,
    lattice_contains,
    lattice_intersect,
    lattice_member,
    lattice_sum,
    quotient,
    rank,
    snf,
    solve_columns,
)


def random_matrix(rng, rows, cols, lo=-5, hi=5):
    return IntMatrix(rows, cols, [rng.randint(lo, hi) for _ in range(rows * cols)])


def brute_force_member(basis_cols, v, bound=4):
    """Search integer combinations with coefficients in [-bound, bound]."""
    k = len(basis_cols)
    n = len(v)
    for coeffs in product(range(-bound, bound + 1), repeat=k):
        vec = [sum(c * col[i] for c, col in zip(coeffs, basis_cols)) for i in range(n)]
        if vec == list(v):
            return True
    return False


# -- hnf ---------------------------------------------------------------------


def test_hnf_identity():
    m = IntMatrix.identity(3)
    h, u = hnf(m)
    assert h == m
    assert u == m


def test_hnf_zero_matrix():
    m = IntMatrix.zeros(2, 3)
    h, u = hnf(m)
    assert h == m
    assert abs(det(u)) == 1


def test_hnf_factorization_and_span():
    rng = random.Random(7)
    for _ in range(60):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        h, u = hnf(m)
        assert m @ u == h
        assert abs(det(u)) == 1
        # span equality by mutual membership
        lm = Lattice.from_matrix(m)
        lh = Lattice.from_matrix(h)
        assert lm == lh
        for j in range(m.cols):
            assert lattice_member(lh, m.col(j))[0]
            assert lattice_member(lm, h.col(j))[0]


def test_hnf_canonical_under_unimodular_change():
    # Same column span written with different generators gives the same h.
    m = IntMatrix.from_rows([[2, 1], [0, 1]])
    shuffled = IntMatrix.from_rows([[1, 2 + 3 * 1], [1, 3 * 1]])  # cols: c2, c1+3*c2
    assert Lattice.from_matrix(m) == Lattice.from_matrix(shuffled)


def test_hnf_example_from_contract():
    m = IntMatrix.from_rows([[2, 1], [0, 1]])
    h, u = hnf(m)
    assert m @ u == h
    lat = Lattice.from_matrix(m)
    assert lattice_member(lat, (1, 1))[0]
    assert lattice_member(lat, (2, 0))[0]
    assert brute_force_member(m.col_list(), [2, 0])


# -- snf ---------------------------------------------------------------------


def test_snf_diag_2_3():
    d, s, t = snf(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert [d[0, 0], d[1, 1]] == [1, 6]
    assert d[0, 1] == d[1, 0] == 0


def test_snf_zero():
    d, s, t = snf(IntMatrix.zeros(2, 2))
    assert d.is_zero()


def test_snf_factorization_divisibility_unimodular():
    rng = random.Random(11)
    for _ in range(60):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        d, s, t = snf(m)
        assert (s @ m) @ t == d
        assert abs(det(s)) == 1
        assert abs(det(t)) == 1
        diag = [d[i, i] for i in range(min(d.rows, d.cols))]
        for i in range(d.rows):
            for j in range(d.cols):
                if i != j:
                    assert d[i, j] == 0
        for i, x in enumerate(diag):
            assert x >= 0
            if i and diag[i - 1]:
                assert x % diag[i - 1] == 0
            if i and diag[i - 1] == 0:
                assert x == 0


def test_snf_minor_gcd_oracle():
    rng = random.Random(13)
    for _ in range(25):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), -4, 4)
        facs = invariant_factors(m)
        r = len(facs)
        assert r == rank(m)
        if r:
            prod = 1
            for f in facs:
                prod *= f
            assert prod == gcd_of_maximal_minors(m, r)


def test_snf_matches_sympy():
    rng = random.Random(17)
    for _ in range(20):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        ours = invariant_factors(m)
        sym = smith_normal_form(SymMatrix(m.row_list()))
        sym_diag = [int(sym[i, i]) for i in range(min(sym.rows, sym.cols))]
        sym_diag = [abs(x) for x in sym_diag if x != 0]
        assert ours == sym_diag


# -- kernel ------------------------------------------------------------------


def test_kernel_identity_is_zero():
    assert kernel(IntMatrix.identity(3)).rank == 0


def test_kernel_row_of_ones():
    k = kernel(IntMatrix.from_rows([[1, 1]]))
    assert k.rank == 1
    ok, _ = lattice_member(k, (1, -1))
    assert ok


def test_kernel_exactness_and_saturation():
    rng = random.Random(19)
    for _ in range(40):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
        k = kernel(m)
        assert k.rank == m.cols - rank(m)
        for j in range(k.rank):
            assert all(x == 0 for x in m.mul_vec(k.basis.col(j)))
        # saturation: divide a combination by its content and stay inside
        if k.rank:
            coeffs = [rng.randint(-3, 3) for _ in range(k.rank)]
            x = k.basis.mul_vec(coeffs)
            scaled = [3 * v for v in x]
            assert lattice_member(k, scaled)[0]
            content = 0
            for v in x:
                content = abs(v) if content == 0 else _gcd(content, abs(v))
            if content > 1:
                assert lattice_member(k, [v // content for v in x])[0]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- membership ---------------------------------------------------------------


def test_member_trivial_examples():
    lat = Lattice.from_generators(2, [(1, 1), (1, -1)])
    ok, w = lattice_member(lat, (2, 0))
    assert ok
    assert lat.basis.mul_vec(w) == (2, 0)

    lat2 = Lattice.from_generators(2, [(2, 0)])
    assert lattice_member(lat2, (1, 0)) == (False, None)

    lat3 = Lattice.from_generators(2, [(2, 0), (0, 2)])
    assert lattice_member(lat3, (2, 2))[0]


def test_member_against_brute_force():
    rng = random.Random(23)
    for _ in range(30):
        ncols = rng.randint(1, 3)
        gens = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(ncols)]
        lat = Lattice.from_generators(4, gens)
        for _ in range(6):
            if rng.random() < 0.5:
                coeffs = [rng.randint(-4, 4) for _ in range(ncols)]
                v = [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(4)]
            else:
                v = [rng.randint(-4, 4) for _ in range(4)]
            ok, w = lattice_member(lat, v)
            if ok:
                assert list(lat.basis.mul_vec(w)) == list(v)
            brute = brute_force_member(gens, v)
            if brute:
                assert ok
            if not ok:
                assert not brute


def test_solve_columns_witness_in_original_coordinates():
    rng = random.Random(29)
    for _ in range(30):
        m = random_matrix(rng, 4, 3)
        x = [rng.randint(-4, 4) for _ in range(3)]
        v = m.mul_vec(x)
        sol = solve_columns(m, v)
        assert sol is not None
        assert m.mul_vec(sol) == v
    assert solve_columns(IntMatrix.from_rows([[2], [0]]), (1, 0)) is None


# -- intersection --------------------------------------------------------------


def test_intersect_scaled_lattices():
    a = Lattice.from_generators(2, [(2, 0), (0, 2)])
    b = Lattice.from_generators(2, [(3, 0), (0, 3)])
    c = lattice_intersect(a, b)
    assert c == Lattice.from_generators(2, [(6, 0), (0, 6)])


def test_intersect_with_full_lattice_is_identity():
    rng = random.Random(31)
    full = Lattice.full(3)
    for _ in range(20):
        b = Lattice.from_matrix(random_matrix(rng, 3, rng.randint(0, 3)))
        assert lattice_intersect(full, b) == b
        assert lattice_intersect(b, full) == b


def test_intersect_orthogonal_lines_is_zero():
    a = Lattice.from_generators(2, [(1, 0)])
    b = Lattice.from_generators(2, [(0, 1)])
    assert lattice_intersect(a, b).rank == 0


def test_intersect_is_greatest_lower_bound():
    rng = random.Random(37)
    for _ in range(20):
        a = Lattice.from_matrix(random_matrix(rng, 4, rng.randint(1, 4)))
        b = Lattice.from_matrix(random_matrix(rng, 4, rng.randint(1, 4)))
        c = lattice_intersect(a, b)
        assert lattice_contains(a, c)
        assert lattice_contains(b, c)
        # any random member of both lies in c
        for j in range(c.rank):
            v = c.basis.col(j)
            assert lattice_member(a, v)[0] and lattice_member(b, v)[0]


# -- quotient -------------------------------------------------------------------


def test_quotient_z2_mod_2z2():
    big = Lattice.full(2)
    small = Lattice.from_generators(2, [(2, 0), (0, 2)])
    q = quotient(big, small)
    assert q == AbGroup(0, (2, 2))


def test_quotient_self_is_trivial():
    lat = Lattice.from_generators(3, [(1, 2, 3), (0, 1, 1)])
    assert quotient(lat, lat).is_trivial()


def test_quotient_rejects_non_sublattice():
    big = Lattice.from_generators(2, [(2, 0)])
    small = Lattice.from_generators(2, [(1, 0)])
    with pytest.raises(LatticeError):
        quotient(big, small)


def test_quotient_rank_additivity():
    rng = random.Random(41)
    for _ in range(25):
        big = Lattice.from_matrix(random_matrix(rng, 4, rng.randint(1, 4)))
        if big.rank == 0:
            continue
        mult = random_matrix(rng, big.rank, rng.randint(0, big.rank), -3, 3)
        small_gens = [big.basis.mul_vec(mult.col(j)) for j in range(mult.cols)]
        small = Lattice.from_generators(4, small_gens)
        q = quotient(big, small)
        assert q.free_rank + small.rank == big.rank


# -- groups ---------------------------------------------------------------------


def test_abgroup_validation_and_str():
    assert str(AbGroup(0, ())) == "0"
    assert str(AbGroup(1, ())) == "Z"
    assert str(AbGroup(2, (3,))) == "Z^2 + Z/3"
    with pytest.raises(LatticeError):
        AbGroup(0, (1,))
    with pytest.raises(LatticeError):
        AbGroup(0, (4, 6))


def test_abgroup_direct_sum_canonicalizes():
    a = AbGroup(1, (3,))
    b = AbGroup(1, (4,))
    s = AbGroup.direct_sum(a, b, AbGroup.free(1))
    assert s == AbGroup(3, (12,))
    s2 = AbGroup.direct_sum(AbGroup(0, (2,)), AbGroup(0, (2,)))
    assert s2 == AbGroup(0, (2, 2))


def test_cokernel_free_part():
    m = IntMatrix.from_rows([[2, 0], [0, 0]])
    assert cokernel(m) == AbGroup(1, (2,))


def test_empty_edge_cases():
    empty = IntMatrix.zeros(0, 0)
    h, u = hnf(empty)
    assert h.rows == 0 and h.cols == 0
    d, s, t = snf(empty)
    assert d.rows == 0
    assert kernel(IntMatrix.zeros(0, 3)).rank == 3
    assert kernel(IntMatrix.zeros(3, 0)).rank == 0
    assert Lattice.zero(4).rank == 0
    assert quotient(Lattice.full(2), Lattice.zero(2)) == AbGroup(2, ())
    assert lattice_sum(Lattice.zero(2), Lattice.full(2)) == Lattice.full(2)
