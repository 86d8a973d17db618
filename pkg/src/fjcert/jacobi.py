"""Jacobi form q-expansions: generators, index-one bases, products,
torsion specialization, and numerical point evaluation.

A :class:`JacobiFormQExp` stores coefficients c(n, r) of a weight-k,
index-m form for integer n below the precision bound; missing entries
under the bound are zero.  Index-one forms are built internally from their
two theta components, the series h_0 and h_1 collecting coefficients with
even and odd r.  For index one c(n, r) depends only on 4n - r^2 and the
parity of r, which is what makes the large-precision constructions cheap:
every product and division happens on one-variable integer series.

Restriction to a rational torsion point (N, lambda, mu) with z = tau1 *
lambda + mu produces a :class:`SpecializedExpansion`, a q-expansion in
fractional exponents whose coefficients are formal combinations of N^2-th
roots of unity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import (
    CycElem,
    PrecisionError,
    QExpansion,
    _dict_add,
    _dict_div,
    _dict_mul,
    _dict_scale,
    _dict_shift,
    _eis_dict,
    cyc_eval,
    parse_rat,
    rat_str,
)

__all__ = [
    "JacobiFormQExp",
    "TorsionPoint",
    "SpecializedExpansion",
    "EvalResult",
    "weak_generators",
    "jacobi_space",
    "multiply",
    "specialize_torsion",
    "fe_norm",
    "evaluate",
    "index0_from_qexp",
]


class JacobiFormQExp:
    """Truncated Fourier expansion of a Jacobi form of weight k and index m.

    coeffs maps integer pairs (n, r) to exact values for 0 <= n < prec.
    For index zero only r = 0 occurs.  Weak forms may carry entries with
    4 n m - r^2 < 0; holomorphic and cusp forms are recognized by
    :meth:`is_holomorphic` and :meth:`is_cusp`.
    """

    __slots__ = ("k", "m", "prec", "coeffs", "_fterms")

    def __init__(self, k: int, m: int, prec: int, coeffs: dict):
        if m < 0:
            raise ValueError("index must be nonnegative")
        if prec < 0:
            raise ValueError("precision must be nonnegative")
        self.k = int(k)
        self.m = int(m)
        self.prec = int(prec)
        out = {}
        for (n, r), v in coeffs.items():
            if not v:
                continue
            if n < 0 or n >= prec:
                raise ValueError("stored n outside [0, prec)")
            if m == 0 and r != 0:
                raise ValueError("index zero forms have r = 0 only")
            out[(int(n), int(r))] = v
        self.coeffs = out
        self._fterms = None

    @classmethod
    def zero(cls, k: int, m: int, prec: int) -> "JacobiFormQExp":
        return cls(k, m, prec, {})

    def coeff(self, n: int, r: int):
        if n >= self.prec:
            raise PrecisionError("coefficient n=%d is beyond precision %d" % (n, self.prec))
        if n < 0:
            raise ValueError("n must be nonnegative")
        return self.coeffs.get((n, r), Fraction(0))

    def support(self):
        return sorted(self.coeffs)

    def truncated(self, prec: int) -> "JacobiFormQExp":
        if prec > self.prec:
            raise PrecisionError("cannot extend precision from %d to %d" % (self.prec, prec))
        if prec == self.prec:
            return self
        return JacobiFormQExp(self.k, self.m, prec, {key: v for key, v in self.coeffs.items() if key[0] < prec})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_holomorphic(self) -> bool:
        return all(4 * n * self.m - r * r >= 0 for (n, r) in self.coeffs)

    def is_cusp(self) -> bool:
        return all(4 * n * self.m - r * r > 0 for (n, r) in self.coeffs)

    def add(self, other: "JacobiFormQExp") -> "JacobiFormQExp":
        if self.k != other.k:
            raise ValueError("weight mismatch in addition")
        if self.m != other.m:
            raise ValueError("index mismatch in addition")
        prec = min(self.prec, other.prec)
        out = {key: v for key, v in self.coeffs.items() if key[0] < prec}
        for key, v in other.coeffs.items():
            if key[0] < prec:
                w = out.get(key, 0) + v
                if w:
                    out[key] = w
                elif key in out:
                    del out[key]
        return JacobiFormQExp(self.k, self.m, prec, out)

    __add__ = add

    def scalar_mul(self, c) -> "JacobiFormQExp":
        c = Fraction(c)
        if not c:
            return JacobiFormQExp.zero(self.k, self.m, self.prec)
        return JacobiFormQExp(self.k, self.m, self.prec, {key: v * c for key, v in self.coeffs.items()})

    def __neg__(self):
        return self.scalar_mul(-1)

    def __sub__(self, other):
        return self.add(other.scalar_mul(-1))

    def __mul__(self, other):
        if isinstance(other, JacobiFormQExp):
            return multiply(self, other)
        return self.scalar_mul(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, JacobiFormQExp):
            return NotImplemented
        return (
            self.k == other.k
            and self.m == other.m
            and self.prec == other.prec
            and len(self.coeffs) == len(other.coeffs)
            and all(other.coeffs.get(key) == v for key, v in self.coeffs.items())
        )

    def __hash__(self):
        return hash((self.k, self.m, self.prec, len(self.coeffs)))

    def __repr__(self):
        return "JacobiFormQExp(k=%d, m=%d, prec=%d, %d terms)" % (
            self.k,
            self.m,
            self.prec,
            len(self.coeffs),
        )

    def to_record(self):
        return {
            "k": self.k,
            "m": self.m,
            "prec": self.prec,
            "coeffs": [[n, r, rat_str(v)] for (n, r), v in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_record(cls, rec) -> "JacobiFormQExp":
        coeffs = {(int(n), int(r)): parse_rat(v) for n, r, v in rec["coeffs"]}
        return cls(int(rec["k"]), int(rec["m"]), int(rec["prec"]), coeffs)

    def float_terms(self):
        if self._fterms is None:
            self._fterms = [(n, r, float(v)) for (n, r), v in sorted(self.coeffs.items())]
        return self._fterms


def index0_from_qexp(k: int, qe: QExpansion) -> JacobiFormQExp:
    """Embed an integer-exponent q-expansion as an index-zero Jacobi form."""
    if qe.L != 1:
        raise ValueError("index zero embedding needs integer exponents")
    prec = int(qe.prec)
    return JacobiFormQExp(k, 0, prec, {(e, 0): v for e, v in qe.coeffs.items()})


def multiply(a: JacobiFormQExp, b: JacobiFormQExp) -> JacobiFormQExp:
    """Product of Jacobi forms; weights and indices add, precision is the min."""
    prec = min(a.prec, b.prec)
    k = a.k + b.k
    m = a.m + b.m
    if not a.coeffs or not b.coeffs:
        return JacobiFormQExp.zero(k, m, prec)
    den_a = 1
    for v in a.coeffs.values():
        den_a = den_a * Fraction(v).denominator // math.gcd(den_a, Fraction(v).denominator)
    den_b = 1
    for v in b.coeffs.values():
        den_b = den_b * Fraction(v).denominator // math.gcd(den_b, Fraction(v).denominator)
    a_by_n: dict = {}
    for (n, r), v in a.coeffs.items():
        if n < prec:
            a_by_n.setdefault(n, []).append((r, int(v * den_a)))
    b_by_n: dict = {}
    for (n, r), v in b.coeffs.items():
        if n < prec:
            b_by_n.setdefault(n, []).append((r, int(v * den_b)))
    bns = sorted(b_by_n)
    acc: dict = {}
    for n1 in sorted(a_by_n):
        rows1 = a_by_n[n1]
        for n2 in bns:
            n = n1 + n2
            if n >= prec:
                break
            rows2 = b_by_n[n2]
            for r1, v1 in rows1:
                for r2, v2 in rows2:
                    key = (n, r1 + r2)
                    prev = acc.get(key)
                    acc[key] = v1 * v2 if prev is None else prev + v1 * v2
    d = den_a * den_b
    if d == 1:
        out = {key: v for key, v in acc.items() if v}
    else:
        out = {}
        for key, v in acc.items():
            if v:
                out[key] = Fraction(v, d)
    return JacobiFormQExp(k, m, prec, out)


# ---------------------------------------------------------------------------
# index-one generator series
#
# All building blocks are integer-keyed series.  With SA' = sum over odd
# j >= 1 of q^((j^2-1)/4) and SBq = 1 + 2 sum_{i>=1} q^(i^2), the two weak
# generators have theta components (even-r series H0[j] at discriminant 4j,
# odd-r series H1[j] at discriminant 4j - 1):
#
#   weight -2:  H0 = -2 SA' / P6,             H1 = SBq / P6
#   weight  0:  H0 = 2 SA'/T2 + 8 SBq T32/T44, H1 = SBq/T2 - 64 q SA' T2d/T44
#
# where P6 is the sixth power of the eta product without its q^(1/4)
# prefactor, T2 = (sum q^(n(n+1)/2))^2, T2d the same at doubled argument,
# T32 = theta_3(2 tau)^2 and T44 = theta_4(2 tau)^4.  The tests pin these
# against a brute-force two-variable theta quotient.


@lru_cache(maxsize=None)
def _series_sa(emax: int):
    out = {}
    j = 1
    while (j * j - 1) // 4 < emax:
        out[(j * j - 1) // 4] = 1
        j += 2
    return out


@lru_cache(maxsize=None)
def _series_sbq(emax: int):
    out = {0: 1}
    i = 1
    while i * i < emax:
        out[i * i] = 2
        i += 1
    return out


@lru_cache(maxsize=None)
def _series_p3(emax: int):
    out = {}
    j = 0
    while j * (j + 1) // 2 < emax:
        out[j * (j + 1) // 2] = (1 if j % 2 == 0 else -1) * (2 * j + 1)
        j += 1
    return out


@lru_cache(maxsize=None)
def _series_p6(emax: int):
    p3 = _series_p3(emax)
    return _dict_mul(p3, p3, emax)


@lru_cache(maxsize=None)
def _series_t2(emax: int):
    base = {}
    n = 0
    while n * (n + 1) // 2 < emax:
        base[n * (n + 1) // 2] = 1
        n += 1
    return _dict_mul(base, base, emax)


@lru_cache(maxsize=None)
def _series_t2_double(emax: int):
    base = {}
    n = 0
    while n * (n + 1) < emax:
        base[n * (n + 1)] = 1
        n += 1
    return _dict_mul(base, base, emax)


@lru_cache(maxsize=None)
def _series_t32(emax: int):
    base = {0: 1}
    n = 1
    while n * n < emax:
        base[n * n] = 2
        n += 1
    return _dict_mul(base, base, emax)


@lru_cache(maxsize=None)
def _series_t44(emax: int):
    base = {0: 1}
    n = 1
    while n * n < emax:
        base[n * n] = -2 if n % 2 else 2
        n += 1
    sq = _dict_mul(base, base, emax)
    return _dict_mul(sq, sq, emax)


@lru_cache(maxsize=None)
def _phi_m2_components(jlen: int):
    p6 = _series_p6(jlen)
    h0 = _dict_scale(_dict_div(_series_sa(jlen), p6, jlen), -2)
    h1 = _dict_div(_series_sbq(jlen), p6, jlen)
    return h0, h1


@lru_cache(maxsize=None)
def _phi0_components(jlen: int):
    sa = _series_sa(jlen)
    sbq = _series_sbq(jlen)
    t2 = _series_t2(jlen)
    t44 = _series_t44(jlen)
    h0 = _dict_add(
        _dict_scale(_dict_div(sa, t2, jlen), 2),
        _dict_scale(_dict_div(_dict_mul(sbq, _series_t32(jlen), jlen), t44, jlen), 8),
    )
    corr = _dict_div(_dict_mul(sa, _series_t2_double(jlen), jlen), t44, jlen)
    h1 = _dict_add(
        _dict_div(sbq, t2, jlen),
        {e: v for e, v in _dict_shift(_dict_scale(corr, -64), 1).items() if e < jlen},
    )
    return h0, h1


def _materialize_index1(k: int, prec: int, h0: dict, h1: dict) -> JacobiFormQExp:
    coeffs = {}
    for n in range(prec):
        rmax = math.isqrt(4 * n + 1)
        for r in range(-rmax, rmax + 1):
            d = 4 * n - r * r
            if d % 4 == 0:
                v = h0.get(d // 4, 0)
            else:
                v = h1.get((d + 1) // 4, 0)
            if v:
                coeffs[(n, r)] = v
    return JacobiFormQExp(k, 1, prec, coeffs)


@lru_cache(maxsize=None)
def weak_generators(prec: int):
    """The two standard weak index-one generators, of weights -2 and 0.

    Normalized so the n = 0 coefficient rows in r = -1, 0, 1 are (1, -2, 1)
    and (1, 10, 1) respectively.
    """
    if prec < 1:
        raise ValueError("precision must be at least 1")
    h0, h1 = _phi_m2_components(prec)
    phi_m2 = _materialize_index1(-2, prec, h0, h1)
    g0, g1 = _phi0_components(prec)
    phi_0 = _materialize_index1(0, prec, g0, g1)
    return phi_m2, phi_0


def _mform_monomials(w: int, emax: int):
    """Integer q-expansions of the monomials E4^a E6^b of weight w, a descending."""
    if w < 0 or w % 2 == 1 or w == 2:
        return []
    if w == 0:
        return [{0: 1}]
    out = []
    for a in range(w // 4, -1, -1):
        rem = w - 4 * a
        if rem % 6:
            continue
        b = rem // 6
        cur = {0: 1}
        e4 = _eis_dict(4, emax)
        e6 = _eis_dict(6, emax)
        for _ in range(a):
            cur = _dict_mul(cur, e4, emax)
        for _ in range(b):
            cur = _dict_mul(cur, e6, emax)
        out.append(cur)
    return out


def _kernel_basis(rows, ncols):
    """Reduced kernel basis of a small rational matrix, deterministic order."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -mat[i][f]
        basis.append(vec)
    return basis


def jacobi_space(k: int, cusp: bool, prec: int):
    """Basis of the index-one space of weight k, holomorphic or cuspidal.

    Each basis element is normalized so its first nonzero coefficient in
    lexicographic (n, |r|) order equals one.  Returns [] when the space is
    trivial.
    """
    if k < 4 or k % 2 == 1:
        raise ValueError("weight must be an even integer at least 4")
    if prec < 1:
        raise ValueError("precision must be at least 1")
    mons_a = _mform_monomials(k + 2, prec)
    mons_b = _mform_monomials(k, prec)
    na, nb = len(mons_a), len(mons_b)
    ncand = na + nb
    if ncand == 0:
        return []
    # the only linear conditions are at discriminants -1 (holomorphy) and 0
    # (cuspidality); both generators contribute their constant there
    rows = [[Fraction(1)] * ncand]
    if cusp:
        rows.append([Fraction(-2)] * na + [Fraction(10)] * nb)
    basis_vecs = _kernel_basis(rows, ncand)
    if not basis_vecs:
        return []
    h_m2 = _phi_m2_components(prec)
    h_0 = None
    out = []
    for vec in basis_vecs:
        acc0: dict = {}
        acc1: dict = {}
        for i, x in enumerate(vec):
            if not x:
                continue
            if i < na:
                mon = mons_a[i]
                comp = h_m2
            else:
                mon = mons_b[i - na]
                if h_0 is None:
                    h_0 = _phi0_components(prec)
                comp = h_0
            acc0 = _dict_add(acc0, _dict_scale(_dict_mul(mon, comp[0], prec), x))
            acc1 = _dict_add(acc1, _dict_scale(_dict_mul(mon, comp[1], prec), x))
        form = _materialize_index1(k, prec, acc0, acc1)
        out.append(_lex_normalize(form))
    return out


def _lex_normalize(phi: JacobiFormQExp) -> JacobiFormQExp:
    lead = min(phi.coeffs, key=lambda nr: (nr[0], abs(nr[1]), nr[1])) if phi.coeffs else None
    if lead is None:
        return phi
    c = phi.coeffs[lead]
    if c == 1:
        return phi
    return phi.scalar_mul(Fraction(1) / Fraction(c))


# ---------------------------------------------------------------------------
# torsion specialization


@dataclass(frozen=True)
class TorsionPoint:
    """Rational torsion datum (N, lambda, mu), entries stored as integer
    numerators over N; z = tau1 * lambda + mu."""

    N: int
    lam: tuple
    mu: tuple

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        lam = self.lam if isinstance(self.lam, tuple) else (self.lam,)
        mu = self.mu if isinstance(self.mu, tuple) else (self.mu,)
        if len(lam) != len(mu) or not lam:
            raise ValueError("lambda and mu must have equal positive length")
        object.__setattr__(self, "lam", tuple(int(x) for x in lam))
        object.__setattr__(self, "mu", tuple(int(x) for x in mu))

    @property
    def genus_minus_one(self) -> int:
        return len(self.lam)

    def lam_frac(self, i: int = 0) -> Fraction:
        return Fraction(self.lam[i], self.N)

    def mu_frac(self, i: int = 0) -> Fraction:
        return Fraction(self.mu[i], self.N)

    def z_at(self, tau1: complex) -> complex:
        return tau1 * float(self.lam_frac()) + float(self.mu_frac())


@dataclass(frozen=True)
class SpecializedExpansion:
    """Restriction of an index-m slice to a torsion point: a q-expansion in
    exponents over N^2 with root-of-unity coefficients, weight k, level
    marker N^2."""

    k: int
    N: int
    expansion: QExpansion

    @property
    def level(self) -> int:
        return self.N * self.N


def _ceil_2sqrt(p: int, m: int) -> int:
    x = 4 * p * m
    s = math.isqrt(x)
    return s if s * s == x else s + 1


def specialize_torsion(phi: JacobiFormQExp, p: TorsionPoint) -> SpecializedExpansion:
    """Expansion of e(m lam^2 tau1) phi(tau1, tau1 lam + mu) in powers of
    e(tau1 / N^2).

    The exponent attached to (n, r) is n + r lam + m lam^2 and the
    root-of-unity factor is e(r mu).  The certified output precision is
    (sqrt(P) - |lam| sqrt(m))^2 for input precision P, the sharp threshold
    below which no discarded row can contribute.
    """
    if p.genus_minus_one != 1:
        raise ValueError("unsupported genus")
    N = p.N
    a = p.lam[0]
    c = p.mu[0]
    m = phi.m
    P = phi.prec
    L = N * N
    # sharp certified precision: exponents from unknown rows n >= P are at
    # least P - |a|/N * 2 sqrt(P m) + m a^2/N^2
    shift = Fraction(abs(a), N) * _ceil_2sqrt(P, m)
    p2 = Fraction(P) + Fraction(m * a * a, L) - shift
    if p2 < 0:
        p2 = Fraction(0)
    bound_num = p2 * L
    acc: dict = {}
    for (n, r), v in phi.coeffs.items():
        num = n * L + r * a * N + m * a * a
        if num < 0:
            raise ValueError("specialization needs nonnegative exponents; input is not holomorphic")
        if num >= bound_num:
            continue
        j = (r * c * N) % L
        slot = acc.setdefault(num, {})
        slot[j] = slot.get(j, Fraction(0)) + Fraction(v)
    coeffs = {num: CycElem(L, w) for num, w in acc.items()}
    coeffs = {num: v for num, v in coeffs.items() if not v.is_zero()}
    return SpecializedExpansion(phi.k, N, QExpansion(L, coeffs, p2))


def fe_norm(eta: SpecializedExpansion, S) -> float:
    """Sum of coefficient magnitudes of eta over the exponent window S.

    S is a list of 1x1 matrices (or plain rationals).  Every requested
    exponent must lie below the certified precision of eta.
    """
    exp = eta.expansion if isinstance(eta, SpecializedExpansion) else eta
    vals = []
    for t in S:
        x = t[0, 0] if hasattr(t, "rows") else Fraction(t)
        if x >= exp.prec:
            raise PrecisionError("window exponent %s is beyond specialized precision %s" % (x, exp.prec))
        vals.append(abs(cyc_eval(exp.coeff(x))))
    return math.fsum(vals)


# ---------------------------------------------------------------------------
# numerical evaluation


@dataclass(frozen=True)
class EvalResult:
    value: complex
    tail_bound: float


def evaluate(phi: JacobiFormQExp, tau1: complex, z: complex) -> EvalResult:
    """Numerical value sum c(n, r) e(n tau1 + r z) over the stored window.

    The tail estimate is the geometric majorant with ratio |e(tau1)| per
    missing row, anchored at the largest stored row sums; it is a heuristic
    truncation indicator, not a certified bound.
    """
    t_im = tau1.imag
    if t_im <= 0:
        raise ValueError("tau1 must have positive imaginary part")
    x = cmath.exp(2j * math.pi * tau1)
    y = cmath.exp(2j * math.pi * z)
    terms = phi.float_terms()
    if not terms:
        return EvalResult(0j, 0.0)
    xs = [1.0 + 0j]
    for _ in range(phi.prec - 1):
        xs.append(xs[-1] * x)
    ypw = {0: 1.0 + 0j}
    rmin = min(r for _, r, _ in terms)
    rmax = max(r for _, r, _ in terms)
    cur = 1.0 + 0j
    for r in range(1, rmax + 1):
        cur *= y
        ypw[r] = cur
    cur = 1.0 + 0j
    yinv = 1.0 / y
    for r in range(-1, rmin - 1, -1):
        cur *= yinv
        ypw[r] = cur
    res = []
    ims = []
    wabs = abs(y)
    rowsums: dict = {}
    for n, r, c in terms:
        v = c * xs[n] * ypw[r]
        res.append(v.real)
        ims.append(v.imag)
        rowsums[n] = rowsums.get(n, 0.0) + abs(c) * wabs ** r
    t = abs(x)
    rowmax = max(rowsums.values())
    tail = rowmax * t ** phi.prec / (1.0 - t)
    return EvalResult(complex(math.fsum(res), math.fsum(ims)), tail)
