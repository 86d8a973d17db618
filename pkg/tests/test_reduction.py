"""Tests for quadratic form reduction, completions, and enumeration windows."""

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from fjcert.reduction import (
    CapacityError,
    SymMatQ,
    UnimodularMat,
    act,
    corner_swap,
    enumerate_r,
    enumerate_S,
    hermite_check,
    is_positive_definite,
    minkowski_reduce,
    torsion_decomposition,
    unimodular_completion,
)


def mat2(a, b, c, d):
    return SymMatQ([[Fraction(a), Fraction(b)], [Fraction(c), Fraction(d)]])


# ---------------------------------------------------------------------------
# matrix containers


def test_symmat_text_round_trip():
    t = SymMatQ([[Fraction(5), Fraction(4)], [Fraction(4), Fraction(5)]])
    assert SymMatQ.from_text(t.to_text()) == t
    u = SymMatQ.from_text("1,1/2;1/2,1")
    assert u[0, 1] == Fraction(1, 2)


def test_symmat_rejects_asymmetric():
    with pytest.raises(ValueError):
        SymMatQ([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(1)]])


def test_unimodular_rejects_det_two():
    with pytest.raises(ValueError):
        UnimodularMat([[2, 0], [0, 1]])


def test_unimodular_inverse_is_integral():
    u = UnimodularMat([[2, 3], [1, 2]])
    assert u @ u.inverse() == UnimodularMat.identity(2)
    assert u.inverse() @ u == UnimodularMat.identity(2)


def test_corner_swap_shapes():
    assert corner_swap(2) == UnimodularMat([[0, 1], [1, 0]])
    assert corner_swap(3) == UnimodularMat([[0, 0, 1], [0, 1, 0], [1, 0, 0]])


# ---------------------------------------------------------------------------
# positivity and the action


def test_positive_definite_examples():
    assert is_positive_definite(SymMatQ([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]))
    assert not is_positive_definite(mat2(1, 2, 2, 1))
    assert is_positive_definite(mat2(2, 1, 1, 2))


def test_act_identity_and_swap():
    t = mat2(3, Fraction(1, 2), Fraction(1, 2), 7)
    assert act(t, UnimodularMat.identity(2)) == t
    swapped = act(t, UnimodularMat([[0, 1], [1, 0]]))
    assert swapped == mat2(7, Fraction(1, 2), Fraction(1, 2), 3)


def test_act_lower_shear():
    # [[n,r/2],[r/2,m]] under [[1,0],[1,1]] picks up n+r+m in the corner
    n, r, m = 2, 3, 5
    t = mat2(n, Fraction(r, 2), Fraction(r, 2), m)
    out = act(t, UnimodularMat([[1, 0], [1, 1]]))
    assert out == mat2(n + r + m, Fraction(r + 2 * m, 2), Fraction(r + 2 * m, 2), m)


def test_act_size_mismatch():
    with pytest.raises(ValueError):
        act(mat2(1, 0, 0, 1), UnimodularMat.identity(3))


int_mat2 = st.lists(st.integers(-9, 9), min_size=4, max_size=4)


@given(int_mat2, int_mat2, st.lists(st.fractions(min_value=-5, max_value=5), min_size=3, max_size=3))
def test_act_is_right_action(ur, vr, tv):
    t = SymMatQ([[tv[0], tv[1]], [tv[1], tv[2]]])
    u = [[ur[0], ur[1]], [ur[2], ur[3]]]
    v = [[vr[0], vr[1]], [vr[2], vr[3]]]
    uv = [
        [sum(u[i][k] * v[k][j] for k in range(2)) for j in range(2)]
        for i in range(2)
    ]
    assert act(act(t, u), v) == act(t, uv)


# ---------------------------------------------------------------------------
# Minkowski reduction


def random_pd2(rng):
    while True:
        a = Fraction(rng.randint(1, 40), rng.randint(1, 4))
        d = Fraction(rng.randint(1, 40), rng.randint(1, 4))
        b = Fraction(rng.randint(-20, 20), rng.randint(1, 4))
        if a * d - b * b > 0:
            return mat2(a, b, b, d)


def primitive_pairs(limit):
    import math

    out = []
    for x in range(-limit, limit + 1):
        for y in range(-limit, limit + 1):
            if math.gcd(x, y) == 1 and (x, y) >= (0, -limit):
                out.append((x, y))
    return out


def test_minkowski_identity_is_fixed():
    t = mat2(1, 0, 0, 1)
    reduced, u = minkowski_reduce(t)
    assert reduced == t
    assert act(t, u) == reduced


def test_minkowski_swaps_descending_diagonal():
    reduced, u = minkowski_reduce(mat2(2, 0, 0, 1))
    assert reduced == mat2(1, 0, 0, 2)
    assert act(mat2(2, 0, 0, 1), u) == reduced


def test_minkowski_pinned_minimum():
    # 5x^2 + 8xy + 5y^2 attains 2 at (1,-1)
    reduced, u = minkowski_reduce(mat2(5, 4, 4, 5))
    assert reduced[0, 0] == 2
    assert act(mat2(5, 4, 4, 5), u) == reduced
    assert reduced.det() == mat2(5, 4, 4, 5).det()


def test_minkowski_rejects_indefinite():
    with pytest.raises(ValueError):
        minkowski_reduce(mat2(1, 2, 2, 1))


def test_minkowski_idempotent_and_hermite():
    rng = random.Random(5)
    for _ in range(40):
        t = random_pd2(rng)
        reduced, u = minkowski_reduce(t)
        assert act(t, u) == reduced
        assert hermite_check(reduced)
        again, _ = minkowski_reduce(reduced)
        assert again == reduced


def test_minkowski_leading_entry_is_exhaustive_minimum():
    # the corner of any image t[u] is the form evaluated at u's first
    # column, so scanning primitive vectors covers every unimodular image
    vectors = primitive_pairs(5)
    rng = random.Random(11)
    for _ in range(200):
        t = random_pd2(rng)
        reduced, _ = minkowski_reduce(t)
        best = min(
            t[0, 0] * x * x + 2 * t[0, 1] * x * y + t[1, 1] * y * y
            for x, y in vectors
        )
        assert reduced[0, 0] == best


def random_pd3(rng):
    while True:
        a = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        det = (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
        if det == 0:
            continue
        rows = [
            [
                Fraction(sum(a[k][i] * a[k][j] for k in range(3)))
                for j in range(3)
            ]
            for i in range(3)
        ]
        return SymMatQ(rows)


def test_minkowski_three_by_three_conditions():
    rng = random.Random(23)
    for _ in range(25):
        t = random_pd3(rng)
        reduced, u = minkowski_reduce(t)
        assert act(t, u) == reduced
        assert reduced[0, 0] <= reduced[1, 1] <= reduced[2, 2]
        for i in range(3):
            for j in range(i + 1, 3):
                assert 2 * abs(reduced[i, j]) <= reduced[i, i]
        assert hermite_check(reduced)


# ---------------------------------------------------------------------------
# Hermite bound check


def test_hermite_examples():
    assert hermite_check(mat2(1, 0, 0, 1))
    # boundary: 1 <= (4/3)(3/4) with equality
    assert hermite_check(mat2(1, Fraction(1, 2), Fraction(1, 2), 1))
    with pytest.raises(ValueError):
        hermite_check(mat2(2, 0, 0, 1))


def test_hermite_one_by_one():
    assert hermite_check(SymMatQ([[Fraction(7)]]))


# ---------------------------------------------------------------------------
# unimodular completion


def test_completion_examples():
    assert unimodular_completion((0, 1)) == UnimodularMat.identity(2)
    assert unimodular_completion((1, 0)) == UnimodularMat([[0, 1], [1, 0]])
    u = unimodular_completion((2, 3))
    assert u.det() in (1, -1)
    assert tuple(u.rows[-1]) == (2, 3)


def test_completion_rejects_imprimitive():
    with pytest.raises(ValueError):
        unimodular_completion((2, 4))
    with pytest.raises(ValueError):
        unimodular_completion(())


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=3))
def test_completion_random_vectors(v):
    import math

    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    if g != 1:
        with pytest.raises(ValueError):
            unimodular_completion(v)
        return
    u = unimodular_completion(v)
    assert u.det() in (1, -1)
    assert tuple(u.rows[-1]) == tuple(v)


# ---------------------------------------------------------------------------
# torsion decomposition


def decomposition_sides(lam, M, u, rho, xi):
    """Both sides of the defining identity, as exact rational matrices."""
    g = len(lam) + 1
    left_factor = [[Fraction(int(i == j)) for j in range(g)] for i in range(g)]
    for j, x in enumerate(lam):
        left_factor[g - 1][j] = -Fraction(x)
    left = [
        [sum(left_factor[i][k] * u.rows[k][j] for k in range(g)) for j in range(g)]
        for i in range(g)
    ]
    right_block = [[Fraction(0)] * g for _ in range(g)]
    for i in range(g - 1):
        for j in range(g - 1):
            right_block[i][j] = Fraction(rho[i][j])
        right_block[i][g - 1] = Fraction(xi[i])
    right_block[g - 1][g - 1] = Fraction(1, M)
    s = corner_swap(g)
    right = [
        [sum(right_block[i][k] * s.rows[k][j] for k in range(g)) for j in range(g)]
        for i in range(g)
    ]
    return left, right


def det_int(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]


def test_torsion_pinned_zero():
    u, rho, xi = torsion_decomposition((0,), 1)
    assert u == UnimodularMat([[0, 1], [1, 0]])
    assert rho == ((1,),)
    assert xi == (0,)


def test_torsion_half_and_third():
    for lam, M in [((Fraction(1, 2),), 2), ((Fraction(1, 3),), 3)]:
        u, rho, xi = torsion_decomposition(lam, M)
        assert u.det() in (1, -1)
        assert abs(det_int(rho)) == M
        left, right = decomposition_sides(lam, M, u, rho, xi)
        assert left == right


def test_torsion_identity_all_small_denominators():
    import math

    for M in range(1, 13):
        for a in range(M):
            if math.gcd(a, M) != 1 and M > 1:
                continue
            lam = (Fraction(a, M),)
            u, rho, xi = torsion_decomposition(lam, M)
            left, right = decomposition_sides(lam, M, u, rho, xi)
            assert left == right
            assert abs(det_int(rho)) == M


def test_torsion_identity_genus_three():
    import math

    for M in range(1, 13):
        for a in range(M):
            for c in range(M):
                if math.gcd(math.gcd(a, c), M) != 1 and M > 1:
                    continue
                lam = (Fraction(a, M), Fraction(c, M))
                u, rho, xi = torsion_decomposition(lam, M)
                left, right = decomposition_sides(lam, M, u, rho, xi)
                assert left == right
                assert abs(det_int(rho)) == M


def test_torsion_reduces_target():
    # with a target form supplied, u is adjusted so n[rho] is reduced
    n = mat2(5, 4, 4, 5)
    lam = (Fraction(1, 3), Fraction(2, 3))
    u, rho, xi = torsion_decomposition(lam, 3, n)
    left, right = decomposition_sides(lam, 3, u, rho, xi)
    assert left == right
    assert abs(det_int(rho)) == 3
    image = act(n, [list(r) for r in rho])
    assert image[0, 0] <= image[1, 1]
    assert 2 * abs(image[0, 1]) <= image[0, 0]
    assert hermite_check(image)


def test_torsion_rejects_bad_denominator():
    with pytest.raises(ValueError):
        torsion_decomposition((Fraction(1, 2),), 4)
    with pytest.raises(ValueError):
        torsion_decomposition((Fraction(1, 3),), 2)


# ---------------------------------------------------------------------------
# enumeration windows


def test_enumerate_s_small_windows():
    half = SymMatQ([[Fraction(1, 2)]])
    assert enumerate_S(1, 1, 2) == [half]
    assert enumerate_S(1, 2, 2) == [
        SymMatQ([[Fraction(k, 2)]]) for k in (1, 2, 3)
    ]


def test_enumerate_s_level_two():
    out = enumerate_S(2, Fraction(1, 32), 2)
    assert len(out) == 63
    assert out[0] == SymMatQ([[Fraction(1, 8)]])
    assert out[-1] == SymMatQ([[Fraction(63, 8)]])
    for t in out:
        assert 0 < t[0, 0] < Fraction(1, 32) * 2 ** 8
        assert (t[0, 0] * 8).denominator == 1


def test_enumerate_s_capacity_guard():
    with pytest.raises(CapacityError):
        enumerate_S(1, 100, 2, cap=10)


def test_enumerate_s_genus_three_closed_under_predicate():
    out = enumerate_S(1, Fraction(3, 2), 3)
    seen = set()
    for t in out:
        key = tuple(t.scaled_entries())
        assert key not in seen
        seen.add(key)
        assert is_positive_definite(t)
        for i in range(2):
            assert t[i, i] < Fraction(3, 2)
            for j in range(2):
                assert (2 * t[i, j]).denominator == 1
    # completeness spot check: the half-integer identity is in the window
    assert SymMatQ([[Fraction(1, 2), Fraction(0)], [Fraction(0), Fraction(1, 2)]]) in out


def test_enumerate_s_ordering_is_deterministic():
    a = enumerate_S(1, Fraction(3, 2), 3)
    b = enumerate_S(1, Fraction(3, 2), 3)
    assert a == b
    keys = [tuple(t.scaled_entries()) for t in a]
    assert keys == sorted(keys)


def test_enumerate_r_small_windows():
    out = enumerate_r(1, Fraction(1, 16), 1, 2)
    assert list(out) == [(Fraction(0),)]
    assert out.count_constant == 1.0
    assert list(enumerate_r(1, 0, 1, 2)) == []


def test_enumerate_r_closed_under_predicate():
    m, b, N = 3, Fraction(1, 4), 2
    out = enumerate_r(m, b, N, 2)
    bound = 4 * m * b * N ** 8
    assert len(set(out)) == len(out)
    for (r,) in out:
        assert r * 8 == int(r * 8)
        assert r * r < bound
    # nothing just outside the stated bound is missing
    want = set()
    j = 0
    while Fraction(j, 8) ** 2 < bound:
        want.add((Fraction(j, 8),))
        want.add((Fraction(-j, 8),))
        j += 1
    assert set(out) == want


def test_enumerate_r_count_ratio_bounded():
    for m in range(1, 101):
        out = enumerate_r(m, 1, 1, 2)
        assert out.count_constant == len(out) / m ** 0.5
        assert out.count_constant <= 9.0
