"""Exact arithmetic primitives: rationals, roots of unity, q-expansions.

Coefficient arithmetic throughout the package is exact.  Rational numbers
are ``fractions.Fraction`` (re-exported as ``BigRational``); coefficients
mixing rationals with roots of unity use :class:`CycElem`, a formal group
ring element ``sum_j w[j] * e(j/L)`` with ``e(x) = exp(2 pi i x)``.  The
group ring is deliberately not reduced modulo cyclotomic relations, so
equality of ``CycElem`` values is formal; numerical comparisons must go
through :func:`cyc_eval`.

A :class:`QExpansion` is a truncated series ``sum c(x) q^x`` whose
exponents ``x`` are nonnegative elements of ``(1/L) * Z`` below a rational
precision bound ``prec``: absent exponents under the bound are zero, and
reading at or above the bound raises :class:`PrecisionError`.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

BigRational = Fraction
ComplexVal = complex

__all__ = [
    "BigRational",
    "ComplexVal",
    "PrecisionError",
    "CycElem",
    "QExpansion",
    "bernoulli",
    "sigma",
    "eisenstein_qexp",
    "cyc_eval",
    "rat_str",
    "parse_rat",
]


class PrecisionError(ValueError):
    """Raised when a coefficient beyond the stored precision is requested."""


def rat_str(x) -> str:
    return str(Fraction(x))


def parse_rat(s: str) -> Fraction:
    return Fraction(str(s).strip())


# ---------------------------------------------------------------------------
# elementary number theory


@lru_cache(maxsize=None)
def _bernoulli_upto(n: int) -> tuple:
    if n == 0:
        return (Fraction(1),)
    prev = _bernoulli_upto(n - 1)
    # recurrence sum_{k=0}^{m} binom(m+1, k) B_k = 0, solved for B_m
    acc = Fraction(0)
    for k in range(n):
        acc += math.comb(n + 1, k) * prev[k]
    return prev + (-acc / (n + 1),)


def bernoulli(n: int) -> Fraction:
    """n-th Bernoulli number, with the convention bernoulli(1) = -1/2."""
    if n < 0:
        raise ValueError("bernoulli index must be nonnegative")
    return _bernoulli_upto(n)[n]


def sigma(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n) = sum of d^k over positive d dividing n."""
    if n < 1:
        raise ValueError("sigma requires n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


# ---------------------------------------------------------------------------
# roots of unity


class CycElem:
    """Formal rational combination of L-th roots of unity.

    ``CycElem(L, {j: w_j})`` stands for ``sum_j w_j e(j/L)``.  Addition and
    multiplication act on exponents mod L; mixed orders are lifted to the
    lcm.  No cyclotomic reduction is performed, so two elements may be
    formally distinct while numerically equal; use :func:`cyc_eval` when a
    numerical comparison is intended.
    """

    __slots__ = ("L", "w")

    def __init__(self, L: int, weights):
        if L < 1:
            raise ValueError("order must be a positive integer")
        self.L = L
        acc: dict = {}
        items = weights.items() if isinstance(weights, dict) else weights
        for j, c in items:
            c = Fraction(c)
            if c:
                j = j % L
                acc[j] = acc.get(j, Fraction(0)) + c
        self.w = {j: c for j, c in acc.items() if c}

    @classmethod
    def root(cls, j: int, L: int) -> "CycElem":
        """The single root of unity e(j/L)."""
        return cls(L, {j: Fraction(1)})

    @classmethod
    def coerce(cls, x, L: int = 1) -> "CycElem":
        if isinstance(x, CycElem):
            return x if L % x.L == 0 and L == x.L else x.rescaled(_lcm(x.L, L))
        return cls(L, {0: Fraction(x)})

    def rescaled(self, L2: int) -> "CycElem":
        if L2 % self.L != 0:
            raise ValueError("new order must be a multiple of the old one")
        f = L2 // self.L
        return CycElem(L2, {j * f: c for j, c in self.w.items()})

    def is_zero(self) -> bool:
        return not self.w

    def __bool__(self) -> bool:
        return bool(self.w)

    def _pair(self, other):
        other = CycElem.coerce(other)
        L = _lcm(self.L, other.L)
        a = self if self.L == L else self.rescaled(L)
        b = other if other.L == L else other.rescaled(L)
        return a, b, L

    def __add__(self, other):
        a, b, L = self._pair(other)
        w = dict(a.w)
        for j, c in b.w.items():
            w[j] = w.get(j, Fraction(0)) + c
        return CycElem(L, w)

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.L, {j: -c for j, c in self.w.items()})

    def __sub__(self, other):
        return self + (-CycElem.coerce(other))

    def __rsub__(self, other):
        return CycElem.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return CycElem(self.L, {j: w * c for j, w in self.w.items()})
        a, b, L = self._pair(other)
        out: dict = {}
        for j1, c1 in a.w.items():
            for j2, c2 in b.w.items():
                j = (j1 + j2) % L
                out[j] = out.get(j, Fraction(0)) + c1 * c2
        return CycElem(L, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycElem.coerce(other)
        if not isinstance(other, CycElem):
            return NotImplemented
        a, b, _ = self._pair(other)
        return a.w == b.w

    def __hash__(self):
        # hash on the reduced support over the exact order
        g = math.gcd(self.L, math.gcd(*self.w.keys())) if self.w else self.L
        return hash((self.L // g, tuple(sorted((j // g, c) for j, c in self.w.items()))))

    def __repr__(self):
        if not self.w:
            return "CycElem(%d, 0)" % self.L
        parts = " + ".join("%s*e(%d/%d)" % (c, j, self.L) for j, c in sorted(self.w.items()))
        return "CycElem(%s)" % parts

    def to_record(self):
        return {"L": self.L, "w": [[j, rat_str(c)] for j, c in sorted(self.w.items())]}

    @classmethod
    def from_record(cls, rec) -> "CycElem":
        return cls(int(rec["L"]), {int(j): parse_rat(c) for j, c in rec["w"]})


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def cyc_eval(x) -> complex:
    """Numerical value of a CycElem (or plain rational) as a complex number."""
    if isinstance(x, (int, Fraction)):
        return complex(x)
    re = []
    im = []
    for j, c in x.w.items():
        v = float(c) * cmath.exp(2j * math.pi * j / x.L)
        re.append(v.real)
        im.append(v.imag)
    return complex(math.fsum(re), math.fsum(im))


# ---------------------------------------------------------------------------
# value helpers shared by QExpansion (Fraction or CycElem entries)


def _vadd(a, b):
    if isinstance(a, CycElem) or isinstance(b, CycElem):
        return CycElem.coerce(a) + b
    return a + b


def _vmul(a, b):
    if isinstance(a, CycElem) or isinstance(b, CycElem):
        return CycElem.coerce(a) * b
    return a * b


def _viszero(x) -> bool:
    if isinstance(x, CycElem):
        return x.is_zero()
    return x == 0


def _value_record(v):
    if isinstance(v, CycElem):
        return v.to_record()
    return rat_str(v)


def _value_from_record(rec):
    if isinstance(rec, dict):
        return CycElem.from_record(rec)
    return parse_rat(rec)


# ---------------------------------------------------------------------------
# q-expansions


class QExpansion:
    """Truncated q-expansion with exponents in (1/L)*Z and exact coefficients.

    ``coeffs`` maps exponent numerators (integers, the exponent times L) to
    Fraction or CycElem values.  Invariants: numerators are >= 0 and lie
    strictly below ``prec * L``.  Anything absent below the bound is zero;
    reading at or beyond the bound raises PrecisionError.
    """

    __slots__ = ("L", "prec", "coeffs")

    def __init__(self, L: int, coeffs: dict, prec):
        if L < 1:
            raise ValueError("exponent denominator must be positive")
        prec = Fraction(prec)
        if prec < 0:
            raise ValueError("precision must be nonnegative")
        self.L = L
        self.prec = prec
        bound = prec * L
        out = {}
        for e, v in coeffs.items():
            if _viszero(v):
                continue
            if e < 0:
                raise ValueError("negative exponent in q-expansion")
            if e >= bound:
                raise ValueError("stored exponent at or beyond precision")
            out[int(e)] = v
        self.coeffs = out

    @classmethod
    def zero(cls, prec, L: int = 1) -> "QExpansion":
        return cls(L, {}, prec)

    @classmethod
    def one(cls, prec, L: int = 1) -> "QExpansion":
        return cls(L, {0: Fraction(1)} if Fraction(prec) > 0 else {}, prec)

    def coeff(self, x):
        """Coefficient at rational exponent x; PrecisionError beyond prec."""
        x = Fraction(x)
        if x >= self.prec:
            raise PrecisionError("exponent %s is at or beyond precision %s" % (x, self.prec))
        num = x * self.L
        if num.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(int(num), Fraction(0))

    def items(self):
        """Sorted (exponent, value) pairs with exponents as Fractions."""
        return [(Fraction(e, self.L), v) for e, v in sorted(self.coeffs.items())]

    def rescaled(self, L2: int) -> "QExpansion":
        if L2 % self.L != 0:
            raise ValueError("new denominator must be a multiple of the old one")
        f = L2 // self.L
        return QExpansion(L2, {e * f: v for e, v in self.coeffs.items()}, self.prec)

    def truncated(self, prec2) -> "QExpansion":
        prec2 = Fraction(prec2)
        if prec2 > self.prec:
            raise PrecisionError("cannot extend precision by truncation")
        bound = prec2 * self.L
        return QExpansion(self.L, {e: v for e, v in self.coeffs.items() if e < bound}, prec2)

    def _pair(self, other):
        L = _lcm(self.L, other.L)
        a = self if self.L == L else self.rescaled(L)
        b = other if other.L == L else other.rescaled(L)
        return a, b, L

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QExpansion(1, {0: Fraction(other)}, self.prec)
        a, b, L = self._pair(other)
        prec = min(a.prec, b.prec)
        bound = prec * L
        out = {e: v for e, v in a.coeffs.items() if e < bound}
        for e, v in b.coeffs.items():
            if e < bound:
                out[e] = _vadd(out.get(e, Fraction(0)), v)
        return QExpansion(L, {e: v for e, v in out.items() if not _viszero(v)}, prec)

    __radd__ = __add__

    def __neg__(self):
        return self.scalar_mul(Fraction(-1))

    def __sub__(self, other):
        return self + (-other if isinstance(other, QExpansion) else -Fraction(other))

    def scalar_mul(self, c) -> "QExpansion":
        if isinstance(c, CycElem) or Fraction(c) != 0:
            return QExpansion(self.L, {e: _vmul(v, c) for e, v in self.coeffs.items()}, self.prec)
        return QExpansion.zero(self.prec, self.L)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycElem)):
            return self.scalar_mul(other)
        a, b, L = self._pair(other)
        prec = min(a.prec, b.prec)
        bound = prec * L
        out: dict = {}
        bi = sorted(b.coeffs.items())
        for e1, v1 in sorted(a.coeffs.items()):
            lim = bound - e1
            if bi and bi[0][0] >= lim:
                break
            for e2, v2 in bi:
                if e2 >= lim:
                    break
                e = e1 + e2
                prev = out.get(e)
                tv = _vmul(v1, v2)
                out[e] = tv if prev is None else _vadd(prev, tv)
        return QExpansion(L, {e: v for e, v in out.items() if not _viszero(v)}, prec)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        a, b, _ = self._pair(other)
        if a.prec != b.prec or set(a.coeffs) != set(b.coeffs):
            return False
        return all(a.coeffs[e] == b.coeffs[e] for e in a.coeffs)

    def __hash__(self):
        return hash((self.L, self.prec, tuple(sorted(self.coeffs))))

    def __repr__(self):
        head = ", ".join(
            "q^%s: %s" % (Fraction(e, self.L), v) for e, v in sorted(self.coeffs.items())[:6]
        )
        more = "" if len(self.coeffs) <= 6 else ", ..."
        return "QExpansion(L=%d, prec=%s, {%s%s})" % (self.L, self.prec, head, more)

    def to_record(self):
        return {
            "L": self.L,
            "prec": rat_str(self.prec),
            "coeffs": [[e, _value_record(v)] for e, v in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_record(cls, rec) -> "QExpansion":
        coeffs = {int(e): _value_from_record(v) for e, v in rec["coeffs"]}
        return cls(int(rec["L"]), coeffs, parse_rat(rec["prec"]))


def eisenstein_qexp(k: int, prec) -> QExpansion:
    """Level-one Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k not in (4, 6):
        raise ValueError("unsupported weight for eisenstein_qexp: %r" % (k,))
    if Fraction(prec) < 1:
        raise ValueError("precision must be at least 1")
    return QExpansion(1, _eis_dict(k, int(Fraction(prec))), prec)


@lru_cache(maxsize=None)
def _eis_dict_cached(k: int, emax: int):
    factor = -2 * k / bernoulli(k)
    assert factor.denominator == 1
    factor = int(factor)
    d = {0: 1}
    for n in range(1, emax):
        d[n] = factor * sigma(k - 1, n)
    return d


def _eis_dict(k: int, emax: int) -> dict:
    return dict(_eis_dict_cached(k, emax))


# ---------------------------------------------------------------------------
# integer-keyed series helpers (internal work horses)
#
# Plain dicts {exponent: value} truncated below emax, with integer values on
# the hot paths.  These back the generator constructions in the jacobi
# module, where convolutions at length in the low thousands must stay fast.


def _dict_mul(a: dict, b: dict, emax: int) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    ai = sorted(a.items())
    bi = sorted(b.items())
    b0 = bi[0][0]
    out: dict = {}
    for e1, v1 in ai:
        lim = emax - e1
        if b0 >= lim:
            break
        for e2, v2 in bi:
            if e2 >= lim:
                break
            e = e1 + e2
            prev = out.get(e)
            out[e] = v1 * v2 if prev is None else prev + v1 * v2
    return {e: v for e, v in out.items() if v}


def _dict_div(num: dict, den: dict, emax: int) -> dict:
    """Exact truncated quotient num/den of integer-keyed series."""
    if not den:
        raise ZeroDivisionError("division by zero series")
    e0 = min(den)
    c0 = den[e0]
    if num and min(num) < e0:
        raise ValueError("quotient would have exponents below zero")
    tail = sorted((e - e0, c) for e, c in den.items() if e != e0)
    unit = c0 == 1
    res: dict = {}
    nmin = (min(num) - e0) if num else 0
    for k in range(nmin, emax):
        v = num.get(k + e0, 0)
        for j, c in tail:
            if j > k - nmin:
                break
            prev = res.get(k - j)
            if prev is not None:
                v -= c * prev
        if not unit:
            v = Fraction(v, c0) if not isinstance(v, Fraction) else v / c0
            if v.denominator == 1:
                v = int(v)
        if v:
            res[k] = v
    return res


def _dict_scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def _dict_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, v in b.items():
        w = out.get(e, 0) + v
        if w:
            out[e] = w
        elif e in out:
            del out[e]
    return out


def _dict_shift(a: dict, s: int) -> dict:
    return {e + s: v for e, v in a.items()}
