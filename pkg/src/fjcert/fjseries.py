"""Symmetric formal Fourier-Jacobi series of cogenus one.

A :class:`FormalFJ` of weight k holds Jacobi expansions phi_0 .. phi_{M_max}
with phi_m of index m, standing for the series sum phi_m(tau1, z) q2^m.
Its combined coefficient view c(f; t) attaches phi_m's coefficient at
(n, r) to the half-integral matrix t = [[n, r/2], [r/2, m]].  The symmetry
c(f; t[u]) = det(u)^k c(f; t) is audited on a finite window against the
three standard generators of GL2(Z).

The module also provides the arithmetic lift that generates honest
symmetric test series from an index-one cusp form, polynomials over the
graded ring acting on such series, and the monicization step that turns a
polynomial relation with cuspidal leading behavior into a monic one.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .core import PrecisionError, parse_rat, rat_str
from .jacobi import JacobiFormQExp, evaluate, index0_from_qexp, multiply
from .reduction import HalfIntIndex

__all__ = [
    "FormalFJ",
    "SymmetryReport",
    "PolynomialOverM",
    "check_symmetry",
    "gritsenko_lift",
    "extract_phi_m",
    "poly_eval",
    "monicize",
    "evaluate_partial",
]

# generators of GL2(Z): swap, a reflection, a shear
_GENERATORS = (
    ((0, 1), (1, 0)),
    ((1, 0), (0, -1)),
    ((1, 0), (1, 1)),
)


def _gen_det(u) -> int:
    return u[0][0] * u[1][1] - u[0][1] * u[1][0]


class FormalFJ:
    """Formal Fourier-Jacobi series: weight k, slices phis[0..M_max]."""

    __slots__ = ("k", "M_max", "phis")

    def __init__(self, k: int, M_max: int, phis):
        phis = tuple(phis)
        if M_max < 0 or len(phis) != M_max + 1:
            raise ValueError("need exactly M_max + 1 slices")
        for m, phi in enumerate(phis):
            if phi.m != m:
                raise ValueError("slice %d has index %d" % (m, phi.m))
            if phi.k != k:
                raise ValueError("slice %d has weight %d, series has weight %d" % (m, phi.k, k))
        self.k = int(k)
        self.M_max = int(M_max)
        self.phis = phis

    @classmethod
    def zero(cls, k: int, M_max: int, prec: int) -> "FormalFJ":
        return cls(k, M_max, [JacobiFormQExp.zero(k, m, prec) for m in range(M_max + 1)])

    @classmethod
    def one(cls, M_max: int, prec: int) -> "FormalFJ":
        phis = [JacobiFormQExp(0, 0, prec, {(0, 0): Fraction(1)})]
        phis += [JacobiFormQExp.zero(0, m, prec) for m in range(1, M_max + 1)]
        return cls(0, M_max, phis)

    @classmethod
    def pad_index0(cls, k: int, qe, M_max: int, prec: int) -> "FormalFJ":
        """Series whose only slice is an index-zero embedding of qe."""
        phi0 = index0_from_qexp(k, qe).truncated(prec)
        phis = [phi0] + [JacobiFormQExp.zero(k, m, prec) for m in range(1, M_max + 1)]
        return cls(k, M_max, phis)

    @property
    def prec(self) -> int:
        return min(phi.prec for phi in self.phis)

    def coeff(self, *args):
        """Combined coefficient c(f; t), t = [[n, r/2], [r/2, m]].

        Accepts a HalfIntIndex or the three integers n, r, m.
        """
        if len(args) == 1:
            t = args[0]
            if not isinstance(t, HalfIntIndex):
                raise TypeError("expected HalfIntIndex or (n, r, m)")
            if t.n.denominator != 1 or t.r.denominator != 1:
                raise ValueError("coefficient index must be integral")
            n, r, m = int(t.n), int(t.r), t.m
        elif len(args) == 3:
            n, r, m = args
        else:
            raise TypeError("coeff takes a HalfIntIndex or (n, r, m)")
        if m < 0 or m > self.M_max:
            raise PrecisionError("slice index m=%d is beyond M_max=%d" % (m, self.M_max))
        return self.phis[m].coeff(n, r)

    def coeff_table(self, bound: int | None = None):
        """All stored coefficients as a HalfIntIndex-keyed map."""
        out = {}
        mtop = self.M_max if bound is None else min(bound, self.M_max)
        for m in range(mtop + 1):
            for (n, r), v in self.phis[m].coeffs.items():
                out[HalfIntIndex(Fraction(n), Fraction(r), m)] = v
        return out

    def is_cuspidal(self) -> bool:
        return self.phis[0].is_zero()

    def is_zero(self) -> bool:
        return all(phi.is_zero() for phi in self.phis)

    def add(self, other: "FormalFJ") -> "FormalFJ":
        if self.k != other.k:
            raise ValueError("weight mismatch in addition")
        mmax = min(self.M_max, other.M_max)
        return FormalFJ(self.k, mmax, [self.phis[m].add(other.phis[m]) for m in range(mmax + 1)])

    __add__ = add

    def scalar_mul(self, c) -> "FormalFJ":
        return FormalFJ(self.k, self.M_max, [phi.scalar_mul(c) for phi in self.phis])

    def __neg__(self):
        return self.scalar_mul(-1)

    def __sub__(self, other):
        return self.add(other.scalar_mul(-1))

    def multiply(self, other: "FormalFJ") -> "FormalFJ":
        k = self.k + other.k
        mmax = min(self.M_max, other.M_max)
        prec = min(self.prec, other.prec)
        slices = []
        for m in range(mmax + 1):
            acc = None
            for i in range(m + 1):
                a, b = self.phis[i], other.phis[m - i]
                if a.is_zero() or b.is_zero():
                    continue
                p = multiply(a, b).truncated(prec)
                acc = p if acc is None else acc.add(p)
            slices.append(acc if acc is not None else JacobiFormQExp.zero(k, m, prec))
        return FormalFJ(k, mmax, slices)

    def __mul__(self, other):
        if isinstance(other, FormalFJ):
            return self.multiply(other)
        return self.scalar_mul(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalFJ):
            return NotImplemented
        return self.k == other.k and self.M_max == other.M_max and self.phis == other.phis

    def __repr__(self):
        return "FormalFJ(k=%d, M_max=%d, prec=%d)" % (self.k, self.M_max, self.prec)

    def to_record(self):
        return {
            "k": self.k,
            "M_max": self.M_max,
            "phis": [phi.to_record() for phi in self.phis],
        }

    @classmethod
    def from_record(cls, rec) -> "FormalFJ":
        return cls(
            int(rec["k"]),
            int(rec["M_max"]),
            [JacobiFormQExp.from_record(r) for r in rec["phis"]],
        )


class SymmetryReport:
    """Result of the finite symmetry audit.

    violations holds dicts {"t": (n, r, m), "u": row tuples, "lhs": value,
    "rhs": value}; checked counts verified identities, skipped counts
    window images that fell outside the stored precision.
    """

    def __init__(self, weight: int, bound: int, checked: int, skipped: int, violations):
        self.weight = weight
        self.bound = bound
        self.checked = checked
        self.skipped = skipped
        self.violations = list(violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_record(self):
        return {
            "weight": self.weight,
            "bound": self.bound,
            "checked": self.checked,
            "skipped": self.skipped,
            "violations": [
                {
                    "t": list(v["t"]),
                    "u": ";".join(",".join(str(x) for x in row) for row in v["u"]),
                    "lhs": rat_str(v["lhs"]),
                    "rhs": rat_str(v["rhs"]),
                }
                for v in self.violations
            ],
        }

    def to_text(self) -> str:
        lines = [
            "symmetry audit: weight %d, bound %d" % (self.weight, self.bound),
            "checked %d, skipped %d, violations %d" % (self.checked, self.skipped, len(self.violations)),
        ]
        for v in self.to_record()["violations"]:
            lines.append("t=%s u=%s lhs=%s rhs=%s" % (tuple(v["t"]), v["u"], v["lhs"], v["rhs"]))
        return "\n".join(lines) + "\n"


def check_symmetry(f: FormalFJ, bound: int) -> SymmetryReport:
    """Audit c(f; t[u]) = det(u)^k c(f; t) on the window n, m <= bound,
    |r| <= 2 bound, for the three GL2(Z) generators.

    Images falling outside the stored window are skipped and counted, not
    treated as violations.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    if bound > f.M_max or bound >= f.prec:
        raise ValueError("bound %d exceeds stored precision (prec %d, M_max %d)" % (bound, f.prec, f.M_max))
    sign = -1 if f.k % 2 else 1
    checked = 0
    skipped = 0
    violations = []
    prec = f.prec
    for n in range(bound + 1):
        for m in range(bound + 1):
            for r in range(-2 * bound, 2 * bound + 1):
                for u in _GENERATORS:
                    # doubled Gram matrix keeps everything integral
                    a, b = u[0]
                    c, d = u[1]
                    t00, t01, t11 = 2 * n, r, 2 * m
                    # u^T T u
                    s00 = a * (a * t00 + c * t01) + c * (a * t01 + c * t11)
                    s01 = b * (a * t00 + c * t01) + d * (a * t01 + c * t11)
                    s11 = b * (b * t00 + d * t01) + d * (b * t01 + d * t11)
                    n2, r2, m2 = s00 // 2, s01, s11 // 2
                    if n2 < 0 or m2 < 0 or n2 >= prec or m2 > f.M_max:
                        skipped += 1
                        continue
                    det = _gen_det(u)
                    lhs = f.phis[m2].coeffs.get((n2, r2), Fraction(0))
                    rhs = f.phis[m].coeffs.get((n, r), Fraction(0))
                    if det == -1 and sign == -1:
                        rhs = -rhs
                    checked += 1
                    if lhs != rhs:
                        violations.append({"t": (n, r, m), "u": u, "lhs": lhs, "rhs": rhs})
    return SymmetryReport(f.k, bound, checked, skipped, violations)


def gritsenko_lift(phi: JacobiFormQExp, M_max: int, prec: int) -> FormalFJ:
    """Arithmetic lift of an index-one cusp form to a symmetric cuspidal
    series: c(F; n, r, m) = sum over d | gcd(n, r, m) of d^(k-1)
    c(phi; n m / d^2, r / d).

    Needs phi stored past (prec - 1) * M_max.
    """
    if phi.m != 1:
        raise ValueError("lift input must have index 1")
    if not phi.is_cusp():
        raise ValueError("lift input must be cuspidal")
    need = (prec - 1) * M_max
    if phi.prec <= need:
        raise PrecisionError(
            "generator stores %d rows; the requested series needs more than %d" % (phi.prec, need)
        )
    k = phi.k
    dpow = {d: Fraction(d) ** (k - 1) for d in range(1, max(M_max, 1) + 1)}
    table = phi.coeffs
    slices = [JacobiFormQExp.zero(k, 0, prec)]
    for m in range(1, M_max + 1):
        coeffs = {}
        for n in range(1, prec):
            rb = math.isqrt(4 * n * m - 1)
            for r in range(-rb, rb + 1):
                g = math.gcd(math.gcd(n, m), abs(r))
                total = Fraction(0)
                for d in range(1, g + 1):
                    if g % d:
                        continue
                    v = table.get((n * m // (d * d), r // d))
                    if v:
                        total += dpow[d] * v
                if total:
                    coeffs[(n, r)] = total
        slices.append(JacobiFormQExp(k, m, prec, coeffs))
    return FormalFJ(k, M_max, slices)


def extract_phi_m(full, m: int, *, k: int = 0, prec: int | None = None) -> JacobiFormQExp:
    """Slice a combined coefficient table at index m.

    full maps HalfIntIndex (or (n, r, m) triples) to values.  Weight and
    precision are metadata the table itself does not carry; prec defaults
    to one past the largest stored n.
    """
    entries = {}
    max_n = -1
    for key, v in full.items():
        if isinstance(key, HalfIntIndex):
            if key.n.denominator != 1 or key.r.denominator != 1:
                raise ValueError("table keys must be integral")
            n, r, mm = int(key.n), int(key.r), key.m
        else:
            n, r, mm = key
        max_n = max(max_n, n)
        if mm == m and v:
            entries[(n, r)] = v
    if prec is None:
        prec = max_n + 1 if max_n >= 0 else 0
    return JacobiFormQExp(k, m, prec, {key: v for key, v in entries.items() if key[0] < prec})


class PolynomialOverM:
    """Polynomial sum a_i X^i with FormalFJ coefficients obeying the weight
    ladder weight(a_i) = k0 + (d - i) k."""

    __slots__ = ("coeffs", "k0", "k")

    def __init__(self, coeffs, k0: int, k: int):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("need at least one coefficient")
        d = len(coeffs) - 1
        for i, a in enumerate(coeffs):
            want = k0 + (d - i) * k
            if a.k != want:
                raise ValueError("coefficient %d has weight %d, ladder requires %d" % (i, a.k, want))
        self.coeffs = coeffs
        self.k0 = int(k0)
        self.k = int(k)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> FormalFJ:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        lead = self.coeffs[-1]
        if lead.k != 0:
            return False
        one = FormalFJ.one(lead.M_max, lead.prec)
        return all(lead.phis[m].truncated(one.prec) == one.phis[m] for m in range(lead.M_max + 1))

    def to_record(self):
        return {
            "k0": self.k0,
            "k": self.k,
            "coeffs": [a.to_record() for a in self.coeffs],
        }

    @classmethod
    def from_record(cls, rec) -> "PolynomialOverM":
        return cls(
            [FormalFJ.from_record(r) for r in rec["coeffs"]],
            int(rec["k0"]),
            int(rec["k"]),
        )


def poly_eval(q: PolynomialOverM, f: FormalFJ) -> FormalFJ:
    """Horner evaluation sum a_i f^i."""
    if f.k != q.k:
        raise ValueError("series weight %d does not match polynomial step %d" % (f.k, q.k))
    acc = q.coeffs[-1]
    for i in range(q.degree - 1, -1, -1):
        acc = acc.multiply(f).add(q.coeffs[i])
    return acc


def monicize(q: PolynomialOverM, f: FormalFJ, f_c: FormalFJ):
    """Monic relation from a general one: R has coefficients
    b_i = a_d^(d-1-i) f_c^(d-i) a_i (and b_d = 1), h = a_d f_c f.

    f_c must be a nonzero cuspidal series; h is then cuspidal, and
    poly_eval(R, h) vanishes whenever poly_eval(Q, f) does.
    """
    a_d = q.coeffs[-1]
    if a_d.is_zero():
        raise ValueError("leading coefficient is zero")
    if f_c.is_zero():
        raise ValueError("f_c is zero")
    if not f_c.is_cuspidal():
        raise ValueError("f_c must be cuspidal")
    d = q.degree
    ell = f_c.k
    h = a_d.multiply(f_c).multiply(f)
    step = q.k0 + ell + q.k
    bs = []
    for i in range(d):
        b = q.coeffs[i]
        for _ in range(d - 1 - i):
            b = b.multiply(a_d)
        for _ in range(d - i):
            b = b.multiply(f_c)
        bs.append(b)
    mmax = min([b.M_max for b in bs] + [h.M_max])
    prec = min([b.prec for b in bs] + [h.prec])
    bs = [FormalFJ(b.k, mmax, [b.phis[m].truncated(prec) for m in range(mmax + 1)]) for b in bs]
    bs.append(FormalFJ.one(mmax, prec))
    return PolynomialOverM(bs, 0, step), h


def _rho2(tau) -> float:
    t1 = complex(tau[0][0])
    z = complex(tau[0][1])
    t2 = complex(tau[1][1])
    return t2.imag - z.imag * z.imag / t1.imag


def evaluate_partial(f: FormalFJ, tau, M: int) -> complex:
    """Value of the partial series sum_{m <= M} phi_m(tau1, z) q2^m.

    tau is a 2x2 complex symmetric matrix with positive definite
    imaginary part.
    """
    if M > f.M_max:
        raise PrecisionError("partial sum M=%d is beyond M_max=%d" % (M, f.M_max))
    if complex(tau[0][1]) != complex(tau[1][0]):
        raise ValueError("tau must be symmetric")
    t1 = complex(tau[0][0])
    z = complex(tau[0][1])
    t2 = complex(tau[1][1])
    if t1.imag <= 0 or _rho2(tau) <= 0:
        raise ValueError("imaginary part of tau is not positive definite")
    q2 = cmath.exp(2j * math.pi * t2)
    res = []
    ims = []
    w = 1.0 + 0j
    for m in range(M + 1):
        if not f.phis[m].is_zero():
            v = evaluate(f.phis[m], t1, z).value * w
            res.append(v.real)
            ims.append(v.imag)
        w *= q2
    return complex(math.fsum(res), math.fsum(ims))
