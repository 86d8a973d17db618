"""Reduction theory for small positive definite rational matrices.

Covers exact Minkowski reduction at sizes one to three, unimodular
completions of primitive integer vectors, the torsion block decomposition
used when a series is restricted to a rational torsion point, and the
enumeration of the finite exponent windows and shift ranges that the
convergence checks consume.

All matrix arithmetic is exact over Fraction entries.  Unimodular matrices
keep integer entries and determinant +-1 as a constructor invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import parse_rat, rat_str

__all__ = [
    "CapacityError",
    "SymMatQ",
    "UnimodularMat",
    "HalfIntIndex",
    "is_positive_definite",
    "act",
    "minkowski_reduce",
    "hermite_check",
    "unimodular_completion",
    "torsion_decomposition",
    "corner_swap",
    "enumerate_S",
    "enumerate_r",
    "RVectors",
]


class CapacityError(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""


# ---------------------------------------------------------------------------
# matrix types


class SymMatQ:
    """Symmetric matrix with Fraction entries, size one to four."""

    __slots__ = ("size", "rows")

    def __init__(self, rows):
        rows = [tuple(Fraction(x) for x in row) for row in rows]
        s = len(rows)
        if s < 1 or any(len(r) != s for r in rows):
            raise ValueError("matrix must be square")
        if s > 4:
            raise ValueError("matrix size above four is not supported")
        for i in range(s):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix must be symmetric")
        self.size = s
        self.rows = tuple(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def det(self) -> Fraction:
        return _det([list(r) for r in self.rows])

    def leading_minor(self, k: int) -> Fraction:
        return _det([list(self.rows[i][:k]) for i in range(k)])

    def scaled_entries(self):
        """Diagonal-then-off-diagonal entry tuple, used for deterministic order."""
        s = self.size
        diag = tuple(self.rows[i][i] for i in range(s))
        off = tuple(self.rows[i][j] for i in range(s) for j in range(i + 1, s))
        return diag + off

    def __eq__(self, other):
        return isinstance(other, SymMatQ) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "SymMatQ(%s)" % (self.to_text(),)

    def to_text(self) -> str:
        return ";".join(",".join(rat_str(x) for x in row) for row in self.rows)

    @classmethod
    def from_text(cls, s: str) -> "SymMatQ":
        rows = [[parse_rat(x) for x in part.split(",")] for part in s.strip().split(";")]
        return cls(rows)


class UnimodularMat:
    """Integer matrix with determinant +1 or -1."""

    __slots__ = ("size", "rows")

    def __init__(self, rows):
        rows = [tuple(int(x) for x in row) for row in rows]
        s = len(rows)
        if any(len(r) != s for r in rows):
            raise ValueError("matrix must be square")
        d = _det([list(r) for r in rows])
        if d not in (1, -1):
            raise ValueError("determinant must be +1 or -1, got %s" % d)
        self.size = s
        self.rows = tuple(rows)

    @classmethod
    def identity(cls, s: int) -> "UnimodularMat":
        return cls([[1 if i == j else 0 for j in range(s)] for i in range(s)])

    def det(self) -> int:
        return int(_det([list(r) for r in self.rows]))

    def __matmul__(self, other: "UnimodularMat") -> "UnimodularMat":
        return UnimodularMat(_matmul(self.rows, other.rows))

    def transpose(self) -> "UnimodularMat":
        return UnimodularMat(list(zip(*self.rows)))

    def inverse(self) -> "UnimodularMat":
        d = self.det()
        adj = _adjugate(self.rows)
        return UnimodularMat([[x * d for x in row] for row in adj])

    def column(self, j: int):
        return tuple(self.rows[i][j] for i in range(self.size))

    def __eq__(self, other):
        return isinstance(other, UnimodularMat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "UnimodularMat(%s)" % (self.to_text(),)

    def to_text(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.rows)

    @classmethod
    def from_text(cls, s: str) -> "UnimodularMat":
        return cls([[int(x) for x in part.split(",")] for part in s.strip().split(";")])


@dataclass(frozen=True)
class HalfIntIndex:
    """Index triple (n, r, m) standing for the matrix [[n, r/2], [r/2, m]]."""

    n: Fraction
    r: Fraction
    m: int

    def __post_init__(self):
        object.__setattr__(self, "n", Fraction(self.n))
        object.__setattr__(self, "r", Fraction(self.r))
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.m < 0:
            raise ValueError("m must be nonnegative")

    def mat(self) -> SymMatQ:
        h = self.r / 2
        return SymMatQ([[self.n, h], [h, Fraction(self.m)]])

    def det(self) -> Fraction:
        return self.n * self.m - self.r * self.r / 4

    def disc(self) -> Fraction:
        """4 n m - r^2, nonnegative exactly when the matrix is positive semidefinite."""
        return 4 * self.n * self.m - self.r * self.r


# ---------------------------------------------------------------------------
# dense helpers (lists of lists over Fraction or int)


def _det(m):
    s = len(m)
    if s == 1:
        return m[0][0]
    if s == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if s == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    total = 0
    for j in range(s):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def _matmul(a, b):
    n, k, m2 = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m2)] for i in range(n)]


def _adjugate(rows):
    s = len(rows)
    if s == 1:
        return [[1]]
    out = [[0] * s for _ in range(s)]
    for i in range(s):
        for j in range(s):
            minor = [
                [rows[r][c] for c in range(s) if c != j] for r in range(s) if r != i
            ]
            cof = _det(minor)
            out[j][i] = cof if (i + j) % 2 == 0 else -cof
    return out


def _rows_of(u):
    if isinstance(u, UnimodularMat):
        return u.rows
    if isinstance(u, SymMatQ):
        return u.rows
    return [tuple(row) for row in u]


# ---------------------------------------------------------------------------
# core operations


def is_positive_definite(t: SymMatQ) -> bool:
    """True iff all leading principal minors are positive."""
    return all(t.leading_minor(k) > 0 for k in range(1, t.size + 1))


def act(t: SymMatQ, u) -> SymMatQ:
    """Right action t[u] = u^T t u for an integer matrix u of matching size."""
    ur = _rows_of(u)
    if len(ur) != t.size:
        raise ValueError("size mismatch between matrix and action")
    ut = list(zip(*ur))
    inner = _matmul([list(r) for r in t.rows], ur)
    return SymMatQ(_matmul([list(r) for r in ut], inner))


def _form_value(t: SymMatQ, x) -> Fraction:
    s = t.size
    return sum(t.rows[i][j] * x[i] * x[j] for i in range(s) for j in range(s))


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def _round_half_to_zero(x: Fraction) -> int:
    """Nearest integer, ties toward zero, so a boundary off-diagonal entry
    with 2|t_ij| = t_ii is left in place instead of oscillating."""
    if x > 0:
        return math.ceil(x - Fraction(1, 2))
    return math.floor(x + Fraction(1, 2))


def _reduce2(t: SymMatQ):
    u = UnimodularMat.identity(2)
    swap = UnimodularMat([[0, 1], [1, 0]])
    for _ in range(10000):
        if t[0, 0] > t[1, 1]:
            t, u = act(t, swap), u @ swap
        r = _round_half_to_zero(t[0, 1] / t[0, 0])
        if r != 0:
            shear = UnimodularMat([[1, -r], [0, 1]])
            t, u = act(t, shear), u @ shear
        if r == 0 and t[0, 0] <= t[1, 1]:
            break
    else:  # pragma: no cover
        raise RuntimeError("reduction failed to terminate")
    if t[0, 1] < 0:
        flip = UnimodularMat([[1, 0], [0, -1]])
        t, u = act(t, flip), u @ flip
    return t, u


def _inv_diag(t: SymMatQ):
    d = t.det()
    adj = _adjugate(t.rows)
    return [adj[i][i] / d for i in range(t.size)]


def _min_vector(t: SymMatQ):
    """Lexicographically smallest integer vector achieving the exact minimum."""
    s = t.size
    bound0 = min(t.rows[i][i] for i in range(s))
    inv = _inv_diag(t)
    # x' t x <= m forces x_i^2 <= m * (t^{-1})_ii by Cauchy-Schwarz
    box = [math.isqrt(math.floor(bound0 * inv[i])) for i in range(s)]
    volume = 1
    for b in box:
        volume *= 2 * b + 1
    if volume > 10**7:
        raise CapacityError("exact minimum search box is too large")
    best = None
    best_key = None
    def rec(i, x):
        nonlocal best, best_key
        if i == s:
            if not any(x):
                return
            # only canonical representative of +-x: first nonzero positive
            lead = next(v for v in x if v != 0)
            if lead < 0:
                return
            val = _form_value(t, x)
            key = (val, tuple(x))
            if best_key is None or key < best_key:
                best, best_key = (val, tuple(x)), key
        else:
            for v in range(-box[i], box[i] + 1):
                rec(i + 1, x + [v])
    rec(0, [])
    return best  # (value, vector)


def _first_column_completion(v) -> UnimodularMat:
    """Unimodular matrix whose first column is the primitive vector v."""
    w = unimodular_completion(tuple(v))
    # completion has v as its last row; transpose puts it in the last
    # column, the corner swap moves it to the front
    s = len(v)
    return w.transpose() @ corner_swap(s)


def _reduce3(t: SymMatQ):
    u = UnimodularMat.identity(3)
    for _ in range(1000):
        val, v = _min_vector(t)
        if val < t[0, 0]:
            c = _first_column_completion(_primitive(v))
            t, u = act(t, c), u @ c
        # clear first-row off-diagonals, then reduce the trailing block,
        # and iterate: each pass only shrinks the scaled entry vector
        changed = True
        inner = 0
        while changed:
            inner += 1
            if inner > 1000:  # pragma: no cover
                raise RuntimeError("reduction failed to terminate")
            changed = False
            for j in (1, 2):
                r = _round_half_to_zero(t[0, j] / t[0, 0])
                if r:
                    rows = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
                    rows[0][j] = -r
                    shear = UnimodularMat(rows)
                    t, u = act(t, shear), u @ shear
                    changed = True
            block = SymMatQ([[t[1, 1], t[1, 2]], [t[2, 1], t[2, 2]]])
            rb, ub = _reduce2(block)
            if ub != UnimodularMat.identity(2):
                rows = [
                    [1, 0, 0],
                    [0, ub.rows[0][0], ub.rows[0][1]],
                    [0, ub.rows[1][0], ub.rows[1][1]],
                ]
                emb = UnimodularMat(rows)
                moved = act(t, emb)
                if moved != t:
                    t, u = moved, u @ emb
                    changed = True
        ok = (
            t[0, 0] <= t[1, 1] <= t[2, 2]
            and 2 * abs(t[0, 1]) <= t[0, 0]
            and 2 * abs(t[0, 2]) <= t[0, 0]
            and 2 * abs(t[1, 2]) <= t[1, 1]
            and _min_vector(t)[0] == t[0, 0]
        )
        if ok:
            break
    else:  # pragma: no cover
        raise RuntimeError("reduction failed to terminate")
    # deterministic sign normalization on the off-diagonal entries
    s2 = -1 if t[0, 1] < 0 else 1
    s3 = -1 if t[0, 2] < 0 else 1
    if s2 < 0 or s3 < 0:
        flip = UnimodularMat([[1, 0, 0], [0, s2, 0], [0, 0, s3]])
        t, u = act(t, flip), u @ flip
    return t, u


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    return tuple(x // g for x in v)


def minkowski_reduce(n: SymMatQ):
    """Reduce a positive definite matrix of size one to three.

    Returns (reduced, rho) with reduced = n[rho], rho unimodular, the
    diagonal of the result nondecreasing with twice each off-diagonal entry
    bounded by the matching diagonal entry, and the leading entry equal to
    the exact minimum of the form over nonzero integer vectors.
    """
    if not is_positive_definite(n):
        raise ValueError("matrix must be positive definite")
    if n.size == 1:
        return n, UnimodularMat.identity(1)
    if n.size == 2:
        return _reduce2(n)
    if n.size == 3:
        return _reduce3(n)
    raise ValueError("reduction implemented for sizes one to three only")


_HERMITE_POW = {1: Fraction(1), 2: Fraction(4, 3), 3: Fraction(2)}


def hermite_check(n: SymMatQ) -> bool:
    """Check (n_11)^s <= gamma_s^s det(n) for a Minkowski reduced matrix.

    gamma_s^s is 1, 4/3, 2 at sizes 1, 2, 3.  Raises if the input does not
    satisfy the reduction conditions.
    """
    s = n.size
    if s not in _HERMITE_POW:
        raise ValueError("size must be one to three")
    for i in range(s - 1):
        if n[i, i] > n[i + 1, i + 1]:
            raise ValueError("input is not Minkowski reduced (diagonal order)")
    for i in range(s):
        for j in range(i + 1, s):
            if 2 * abs(n[i, j]) > n[i, i]:
                raise ValueError("input is not Minkowski reduced (off-diagonal bound)")
    if not is_positive_definite(n):
        raise ValueError("matrix must be positive definite")
    return n[0, 0] ** s <= _HERMITE_POW[s] * n.det()


# ---------------------------------------------------------------------------
# unimodular completion and torsion decomposition


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _col_reduce(v):
    """Unimodular W with v @ W = (1, 0, ..., 0) for primitive integer v."""
    s = len(v)
    w = list(v)
    cols = [[1 if i == j else 0 for i in range(s)] for j in range(s)]  # cols[j][i]
    for i in range(1, s):
        if w[i] == 0:
            continue
        g, x, y = _xgcd(w[0], w[i])
        c0 = [x * cols[0][t] + y * cols[i][t] for t in range(s)]
        ci = [
            -(w[i] // g) * cols[0][t] + (w[0] // g) * cols[i][t] for t in range(s)
        ]
        cols[0], cols[i] = c0, ci
        w[0], w[i] = g, 0
    if w[0] == -1:
        cols[0] = [-x for x in cols[0]]
        w[0] = 1
    if w[0] != 1:
        raise ValueError("vector must be primitive")
    rows = [[cols[j][i] for j in range(s)] for i in range(s)]
    return UnimodularMat(rows)


def corner_swap(g: int) -> UnimodularMat:
    """Permutation matrix exchanging the first and last coordinates."""
    rows = [[1 if i == j else 0 for j in range(g)] for i in range(g)]
    rows[0][0] = rows[g - 1][g - 1] = 0
    rows[0][g - 1] = rows[g - 1][0] = 1
    return UnimodularMat(rows)


def unimodular_completion(v) -> UnimodularMat:
    """Unimodular matrix whose last row is the primitive vector v."""
    v = tuple(int(x) for x in v)
    if len(v) < 1:
        raise ValueError("vector must be nonempty")
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    if g != 1:
        raise ValueError("vector must be primitive")
    if len(v) == 1:
        return UnimodularMat([[v[0]]])
    if len(v) == 2:
        a, b = v
        # minimal top row solving x*b - y*a = 1, sign-normalized so that
        # (0,1) completes to the identity and (1,0) to the plain swap
        gg, x0, y0 = _xgcd(b, -a)
        assert gg == 1
        # shift by multiples of (a, b) to minimize the top row
        k = _round_half_up(Fraction(x0 * a + y0 * b, a * a + b * b))
        x0, y0 = x0 - k * a, y0 - k * b
        if x0 < 0 or (x0 == 0 and y0 < 0):
            x0, y0 = -x0, -y0
        return UnimodularMat([[x0, y0], [a, b]])
    w = _col_reduce(v)
    # v equals the first row of w^{-1}; rotate that row to the bottom
    rows = list(w.inverse().rows)
    return UnimodularMat(rows[1:] + rows[:1])


def torsion_decomposition(lam, M: int, n: SymMatQ | None = None):
    """Block decomposition attached to a torsion direction lambda.

    lam is a vector of g-1 rationals in (1/M)Z with lcm of denominators
    exactly M.  Returns (u, rho, xi) with u unimodular of size g, rho an
    integer (g-1)x(g-1) block with |det rho| = M, and xi an integer column,
    satisfying [[I, 0], [-lam^T, 1]] u = [[rho, xi], [0, 1/M]] s where s is
    the corner swap permutation.  When a positive definite target n is
    supplied, u is post-composed so that n[rho] is Minkowski reduced.
    """
    lam = [Fraction(x) for x in lam]
    gm1 = len(lam)
    if gm1 < 1 or gm1 > 2:
        raise ValueError("unsupported genus")
    if M < 1:
        raise ValueError("denominator must be positive")
    nums = []
    for x in lam:
        y = x * M
        if y.denominator != 1:
            raise ValueError("lambda is not in (1/M)Z")
        nums.append(int(y))
    g = 0
    for x in nums:
        g = math.gcd(g, abs(x))
    if math.gcd(g, M) != 1:
        raise ValueError("M is not the exact denominator of lambda")
    size = gm1 + 1
    w = tuple(-x for x in nums) + (M,)
    u = _col_reduce(w)
    # flip the kernel columns so their topmost nonzero entry is positive
    cols = [list(u.column(j)) for j in range(size)]
    for j in range(1, size):
        lead = next((x for x in cols[j] if x != 0), 0)
        if lead < 0:
            cols[j] = [-x for x in cols[j]]
    u = UnimodularMat([[cols[j][i] for j in range(size)] for i in range(size)])
    rho, xi = _extract_blocks(lam, M, u)
    if n is not None:
        _, vhat = minkowski_reduce(act(n, rho))
        u = u @ _rho_transform(size, vhat)
        rho, xi = _extract_blocks(lam, M, u)
    return u, rho, xi


def _extract_blocks(lam, M, u):
    size = u.size
    gm1 = size - 1
    # the top block of B u is just the top block of u
    top = [u.rows[i] for i in range(gm1)]
    # column positions of rho inside B u: last column first, then middle
    pos = [size - 1] + list(range(1, size - 1))
    rho = tuple(tuple(top[i][pos[j]] for j in range(gm1)) for i in range(gm1))
    xi = tuple(top[i][0] for i in range(gm1))
    # exactness audit of the bottom row: (-lam, 1) u = (1/M) e_1
    bottom = [
        sum(-lam[t] * u.rows[t][j] for t in range(gm1)) + u.rows[gm1][j]
        for j in range(size)
    ]
    expect = [Fraction(1, M)] + [Fraction(0)] * (size - 1)
    if bottom != expect:
        raise AssertionError("internal decomposition identity failed")
    if abs(_det([list(r) for r in rho])) != M:
        raise AssertionError("internal block determinant check failed")
    return rho, xi


def _rho_transform(size: int, vhat: UnimodularMat) -> UnimodularMat:
    """Right factor replacing rho by rho vhat while fixing xi."""
    gm1 = size - 1
    pos = [size - 1] + list(range(1, size - 1))
    rows = [[0] * size for _ in range(size)]
    rows[0][0] = 1
    for i in range(gm1):
        for j in range(gm1):
            rows[pos[i]][pos[j]] = vhat.rows[i][j]
    return UnimodularMat(rows)


# ---------------------------------------------------------------------------
# exponent window and shift range enumeration


def _strict_int_bound(x: Fraction) -> int:
    """Largest integer k with k < x."""
    if x.denominator == 1:
        return x.numerator - 1
    return math.floor(x)


def enumerate_S(N: int, b, g: int, cap: int = 10**6):
    """Exponent window: positive definite (g-1)-matrices over (1/(2 N^2)) Z
    with diagonal entries below b * N^(8 (g-1)^2), in lexicographic order of
    scaled entries."""
    if N < 1:
        raise ValueError("N must be positive")
    b = Fraction(b)
    if b < 0:
        raise ValueError("b must be nonnegative")
    s = g - 1
    if s < 1 or s > 3:
        raise ValueError("unsupported genus")
    den = 2 * N * N
    kmax = _strict_int_bound(b * N ** (8 * s * s) * den)
    out = []
    if s == 1:
        for k in range(1, kmax + 1):
            out.append(SymMatQ([[Fraction(k, den)]]))
            if len(out) > cap:
                raise CapacityError("enumeration exceeds cap")
        return out
    if s == 2:
        for k11 in range(1, kmax + 1):
            for k22 in range(1, kmax + 1):
                lim = math.isqrt(k11 * k22)
                if lim * lim == k11 * k22:
                    lim -= 1
                for k12 in range(-lim, lim + 1):
                    out.append(
                        SymMatQ(
                            [
                                [Fraction(k11, den), Fraction(k12, den)],
                                [Fraction(k12, den), Fraction(k22, den)],
                            ]
                        )
                    )
                    if len(out) > cap:
                        raise CapacityError("enumeration exceeds cap")
        out.sort(key=lambda t: tuple(x * den for x in t.scaled_entries()))
        return out
    # s == 3: diagonal loops with positive definiteness filtered exactly
    for k11 in range(1, kmax + 1):
        for k22 in range(1, kmax + 1):
            for k33 in range(1, kmax + 1):
                l12 = math.isqrt(k11 * k22)
                l13 = math.isqrt(k11 * k33)
                l23 = math.isqrt(k22 * k33)
                for k12 in range(-l12, l12 + 1):
                    for k13 in range(-l13, l13 + 1):
                        for k23 in range(-l23, l23 + 1):
                            t = SymMatQ(
                                [
                                    [Fraction(k11, den), Fraction(k12, den), Fraction(k13, den)],
                                    [Fraction(k12, den), Fraction(k22, den), Fraction(k23, den)],
                                    [Fraction(k13, den), Fraction(k23, den), Fraction(k33, den)],
                                ]
                            )
                            if is_positive_definite(t):
                                out.append(t)
                                if len(out) > cap:
                                    raise CapacityError("enumeration exceeds cap")
    out.sort(key=lambda t: tuple(x * den for x in t.scaled_entries()))
    return out


class RVectors(list):
    """List of shift vectors with the normalized count constant attached."""

    count_constant: float = 0.0


def enumerate_r(m: int, b, N: int, g: int) -> RVectors:
    """Shift range: vectors r in (1/(2 N^2)) Z^(g-1) with every component
    satisfying r_i^2 < 4 m b N^(8 (g-1)^2).  The returned list carries
    count_constant = len / m^((g-1)/2)."""
    if m < 1:
        raise ValueError("m must be positive")
    if N < 1:
        raise ValueError("N must be positive")
    b = Fraction(b)
    if b < 0:
        raise ValueError("b must be nonnegative")
    s = g - 1
    if s < 1 or s > 3:
        raise ValueError("unsupported genus")
    den = 2 * N * N
    bound = 4 * m * b * N ** (8 * s * s) * den * den  # j^2 < bound for j = r*den
    jmax = 0
    if bound > 0:
        jmax = math.isqrt(math.floor(bound))
        if Fraction(jmax * jmax) >= bound:
            jmax -= 1
    vals = [Fraction(j, den) for j in range(-jmax, jmax + 1)] if bound > 0 else []
    out = RVectors()
    if vals:
        def rec(i, acc):
            if i == s:
                out.append(tuple(acc))
            else:
                for v in vals:
                    rec(i + 1, acc + [v])
        rec(0, [])
    out.count_constant = len(out) / m ** (s / 2)
    return out
