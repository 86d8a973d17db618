"""Numerical certification of the analytic behavior of formal
Fourier-Jacobi series at and near rational torsion points.

Everything here is sampled, not proved: growth exponents come from
least-squares fits of FE-norms, suprema over compact boxes are taken over
deterministic tensor grids, and convergence is audited through Cauchy gaps
and term decay of truncated sums.  Each check returns a
:class:`ConvergenceReport` carrying its verdict, the witnessing numbers,
and the tolerances used, so failures are reproducible from the report
alone.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import linear_regression

from .core import PrecisionError, cyc_eval
from .fjseries import FormalFJ, PolynomialOverM, evaluate_partial, poly_eval
from .jacobi import SpecializedExpansion, TorsionPoint, evaluate, fe_norm

__all__ = [
    "BoundConfig",
    "CompactBoxSpec",
    "ConvergenceReport",
    "write_csv",
    "c_constant",
    "c_constant_exact",
    "rho",
    "growth_fit",
    "pointwise_convergence_check",
    "k_eps_grid",
    "d_eps",
    "partial_sum_bound_check",
    "hecke_coeff_check",
    "torsion_approximate",
]


@dataclass(frozen=True)
class BoundConfig:
    """Knobs for the sampled bounds: the coefficient-determination constant
    b, the slack allowed on fitted exponents, and enumeration caps."""

    b: Fraction = Fraction(1)
    slack: float = 0.5
    caps: int = 10**6

    def __post_init__(self):
        object.__setattr__(self, "b", Fraction(self.b))
        if self.b <= 0:
            raise ValueError("b must be positive")
        if self.slack < 0:
            raise ValueError("slack must be nonnegative")


@dataclass(frozen=True)
class CompactBoxSpec:
    """Finite sample U of (tau1, z) pairs plus the box parameter eps."""

    U: tuple
    eps: float

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        pts = tuple((complex(t), complex(z)) for t, z in self.U)
        for t, _ in pts:
            if t.imag <= 0:
                raise ValueError("tau1 samples need positive imaginary part")
        object.__setattr__(self, "U", pts)

    def to_record(self):
        return {"eps": self.eps, "U": [[_cplx_str(t), _cplx_str(z)] for t, z in self.U]}

    @classmethod
    def from_record(cls, rec) -> "CompactBoxSpec":
        return cls(
            tuple((complex(t), complex(z)) for t, z in rec["U"]),
            float(rec["eps"]),
        )


def _cplx_str(x: complex) -> str:
    return repr(complex(x))[1:-1] if repr(complex(x)).startswith("(") else repr(complex(x))


@dataclass
class ConvergenceReport:
    """Outcome of one certification check.

    verdict is one of pass, degenerate-pass, fail, hypothesis-failure.
    witnesses carry the numbers behind the verdict; series holds named
    (header, rows) tables for CSV export.
    """

    criterion: str
    paper_ref: str
    verdict: str
    witnesses: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    series: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict in ("pass", "degenerate-pass")

    def to_record(self):
        return {
            "criterion": self.criterion,
            "paper_ref": self.paper_ref,
            "verdict": self.verdict,
            "witnesses": {k: _plain(v) for k, v in self.witnesses.items()},
            "tolerances": {k: _plain(v) for k, v in self.tolerances.items()},
            "series": {k: {"header": h, "rows": [[_plain(x) for x in row] for row in rows]} for k, (h, rows) in self.series.items()},
        }

    def to_text(self) -> str:
        lines = [
            "criterion: %s" % self.criterion,
            "paper_ref: %s" % self.paper_ref,
            "verdict: %s" % self.verdict,
            "witnesses:",
        ]
        for key in sorted(self.witnesses):
            lines.append("  %s = %s" % (key, _plain(self.witnesses[key])))
        lines.append("tolerances:")
        for key in sorted(self.tolerances):
            lines.append("  %s = %s" % (key, _plain(self.tolerances[key])))
        for name, (header, rows) in self.series.items():
            lines.append("%s: %d rows (%s)" % (name, len(rows), ", ".join(header)))
        return "\n".join(lines) + "\n"

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_text())

    def save_csv(self, name: str, path):
        header, rows = self.series[name]
        write_csv(path, header, rows)


def _plain(v):
    if isinstance(v, Fraction):
        return "%d/%d" % (v.numerator, v.denominator) if v.denominator != 1 else str(v.numerator)
    if isinstance(v, complex):
        return _cplx_str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_plain(x) for x in row])


# ---------------------------------------------------------------------------
# geometry of the Siegel variables


def c_constant_exact(im_tau1: Fraction, p: TorsionPoint) -> Fraction:
    """Exact disc constant C = lambda^2 Im(tau1) at a torsion point."""
    if p.genus_minus_one != 1:
        raise ValueError("unsupported genus")
    lam = p.lam_frac()
    return lam * lam * Fraction(im_tau1)


def c_constant(tau1: complex, p: TorsionPoint) -> float:
    """Disc constant C = (Im z)^T (Im tau1)^(-1) (Im z) = lambda^2 Im(tau1)
    at the torsion point z = tau1 lambda + mu; |q2| < exp(-2 pi C) is the
    certified disc."""
    return float(c_constant_exact(Fraction(complex(tau1).imag), p))


def rho(tau) -> float:
    """Schur complement of Im(tau): Im(tau2) - (Im z)^2 / Im(tau1).

    Im(tau) is positive definite iff Im(tau1) > 0 and rho(tau) > 0.
    """
    t1 = complex(tau[0][0])
    z = complex(tau[0][1])
    t2 = complex(tau[1][1])
    if t1.imag <= 0:
        raise ValueError("Im(tau1) must be positive")
    return t2.imag - z.imag * z.imag / t1.imag


def torsion_approximate(tau1: complex, z: complex, delta: float) -> TorsionPoint:
    """Smallest-N torsion point with |tau1 lambda + mu - z| < delta, found
    by rounding the real coordinates of z in the lattice basis (tau1, 1)."""
    tau1 = complex(tau1)
    z = complex(z)
    if tau1.imag <= 0:
        raise ValueError("Im(tau1) must be positive")
    if delta <= 0:
        raise ValueError("delta must be positive")
    lam_star = z.imag / tau1.imag
    mu_star = z.real - tau1.real * lam_star
    n = 1
    while True:
        a = round(n * lam_star)
        c = round(n * mu_star)
        approx = tau1 * (a / n) + (c / n)
        if abs(approx - z) < delta:
            return TorsionPoint(n, (a,), (c,))
        n += 1


# ---------------------------------------------------------------------------
# growth of specialized slices


def growth_fit(etas, k: int, g: int, S, cfg: BoundConfig) -> ConvergenceReport:
    """Fit the FE-norm growth of eta_m against m^(k + (g-1)/2).

    etas lists the specializations for m = 1..M in order.  Passes when the
    fitted log-log slope stays below k + (g-1)/2 + slack.  All-zero norms
    give a degenerate pass (nothing to fit).
    """
    etas = list(etas)
    m_count = len(etas)
    if m_count < 8:
        raise ValueError("need at least 8 slices to fit growth")
    exponent = k + (g - 1) / 2.0
    threshold = exponent + cfg.slack
    claim = (
        "FE-norms of torsion specializations grow at most like "
        "m^(k + (g-1)/2) = m^%.1f up to a constant" % exponent
    )
    norms = []
    ratio_max = 0.0
    for i, eta in enumerate(etas):
        m = i + 1
        norm = fe_norm(eta, S)
        norms.append((m, norm))
        exp_obj = eta.expansion if isinstance(eta, SpecializedExpansion) else eta
        for t in S:
            x = t[0, 0] if hasattr(t, "rows") else Fraction(t)
            ratio = abs(cyc_eval(exp_obj.coeff(x))) / m**exponent
            ratio_max = max(ratio_max, ratio)
    pts = [(math.log(m), math.log(norm)) for m, norm in norms if norm > 0]
    tolerances = {"slack": cfg.slack, "threshold": threshold}
    series = {"fe_norms": (["m", "fe_norm"], [[m, norm] for m, norm in norms])}
    if len(pts) < 2:
        return ConvergenceReport(
            "growth-bound",
            claim,
            "degenerate-pass",
            {"b": cfg.b, "nonzero_points": len(pts), "ratio_max": ratio_max, "window_size": len(list(S))},
            tolerances,
            series,
        )
    fit = linear_regression([x for x, _ in pts], [y for _, y in pts])
    verdict = "pass" if fit.slope <= threshold else "fail"
    witnesses = {
        "b": cfg.b,
        "slope": fit.slope,
        "intercept": fit.intercept,
        "ratio_max": ratio_max,
        "nonzero_points": len(pts),
        "window_size": len(list(S)),
    }
    return ConvergenceReport("growth-bound", claim, verdict, witnesses, tolerances, series)


# ---------------------------------------------------------------------------
# pointwise convergence on the torsion disc


def pointwise_convergence_check(
    f: FormalFJ,
    p: TorsionPoint,
    tau1: complex,
    theta: float,
    M: int,
    rtol: float = 1e-8,
) -> ConvergenceReport:
    """Audit absolute convergence at |q2| = theta exp(-2 pi C).

    Checks the Cauchy gap |S_2M - S_M| of the absolute partial sums and
    that term magnitudes are nonincreasing from some index at or below M.
    """
    if not f.is_cuspidal():
        raise ValueError("input series must be cuspidal")
    if not 0 < theta < 1:
        raise ValueError("theta must lie in (0, 1)")
    if 2 * M > f.M_max:
        raise PrecisionError("need slices up to 2M = %d, have M_max = %d" % (2 * M, f.M_max))
    if M < 1:
        raise ValueError("M must be positive")
    tau1 = complex(tau1)
    c_val = c_constant(tau1, p)
    radius = math.exp(-2 * math.pi * c_val)
    q2_abs = theta * radius
    z = p.z_at(tau1)
    terms = [0.0]
    for m in range(1, 2 * M + 1):
        val = evaluate(f.phis[m], tau1, z).value
        terms.append(abs(val) * q2_abs**m)
    sums = [0.0]
    for m in range(1, 2 * M + 1):
        sums.append(sums[-1] + terms[m])
    s_m, s_2m = sums[M], sums[2 * M]
    gap = s_2m - s_m
    tol = rtol * max(1.0, s_m)
    cauchy_ok = gap < tol
    # first index from which the term sequence never increases
    tail_start = 2 * M
    for m in range(2 * M - 1, 0, -1):
        if terms[m + 1] <= terms[m] * (1 + 1e-12):
            tail_start = m
        else:
            break
    decreasing_ok = tail_start <= M
    verdict = "pass" if (cauchy_ok and decreasing_ok) else "fail"
    witnesses = {
        "C": c_val,
        "disc_radius": radius,
        "q2_abs": q2_abs,
        "S_M": s_m,
        "S_2M": s_2m,
        "cauchy_gap": gap,
        "tail_start": tail_start,
        "M": M,
    }
    if not cauchy_ok:
        witnesses["cauchy_witness"] = "gap %.6g exceeds tolerance %.6g" % (gap, tol)
    if not decreasing_ok:
        witnesses["decay_witness"] = "terms still increasing at index %d > M" % tail_start
    series = {"partial_sums": (["M", "partial_sum"], [[m, sums[m]] for m in range(1, 2 * M + 1)])}
    return ConvergenceReport(
        "pointwise-convergence",
        "the series converges absolutely at the torsion point on the disc |q2| < exp(-2 pi C)",
        verdict,
        witnesses,
        {"rtol": rtol, "theta": theta},
        series,
    )


# ---------------------------------------------------------------------------
# compact boxes and the locally-bounded certificate


def k_eps_grid(box: CompactBoxSpec, eps_scale: float = 1.0, points: int = 5):
    """Deterministic tensor sample of the box: every (tau1, z) in U crossed
    with `points` values of the Schur complement in [eps', 1/eps'] and of
    Re(tau2) in [0, 1), eps' = eps_scale * eps."""
    eps = box.eps * eps_scale
    if not 0 < eps < 1:
        raise ValueError("scaled eps leaves (0, 1)")
    grid = []
    for t1, z in box.U:
        base = z.imag * z.imag / t1.imag
        for i in range(points):
            r = eps + (1 / eps - eps) * i / (points - 1) if points > 1 else eps
            for j in range(points):
                re2 = j / points
                t2 = complex(re2, base + r)
                grid.append(((t1, z), (z, t2)))
    return grid


def d_eps(q: PolynomialOverM, box: CompactBoxSpec, grid) -> float:
    """Sampled sup of 1 + sum of |a_i(tau)| over the grid, i < degree."""
    if not q.is_monic():
        raise ValueError("polynomial must be monic")
    grid = list(grid)
    if not grid:
        raise ValueError("empty sample grid")
    best = 0.0
    for tau in grid:
        total = 1.0
        for a in q.coeffs[:-1]:
            if a.is_zero():
                continue
            total += abs(evaluate_partial(a, tau, a.M_max))
        best = max(best, total)
    return best


def _is_near_torsion(tau1: complex, z: complex, n_cap: int = 16, tol: float = 1e-9) -> bool:
    lam_star = z.imag / tau1.imag
    mu_star = z.real - tau1.real * lam_star
    for n in range(1, n_cap + 1):
        a = round(n * lam_star)
        c = round(n * mu_star)
        if abs(tau1 * (a / n) + (c / n) - z) < tol:
            return True
    return False


def partial_sum_bound_check(
    f: FormalFJ,
    q: PolynomialOverM,
    box: CompactBoxSpec,
    M_list,
    kappa: float = 1.1,
    points: int = 5,
) -> ConvergenceReport:
    """Certify the geometric majorant on the shrunken box.

    For tau sampled in K_{2 eps}(U), every partial sum with M in M_list
    must stay below kappa * D_eps(U) * e^(-2 pi eps) / (1 - e^(-2 pi eps)).
    Monicity of q, cuspidality of f, and q(f) = 0 are hypotheses; their
    failure is reported as such, not as a bound violation.
    """
    claim = "partial sums on the shrunken box stay below the geometric majorant"
    tolerances = {"kappa": kappa, "eps": box.eps}
    if not q.is_monic():
        return ConvergenceReport(
            "partial-sum-bound", claim, "hypothesis-failure",
            {"failed_precondition": "polynomial is not monic"}, tolerances,
        )
    if not f.is_cuspidal():
        return ConvergenceReport(
            "partial-sum-bound", claim, "hypothesis-failure",
            {"failed_precondition": "series is not cuspidal"}, tolerances,
        )
    residue = poly_eval(q, f)
    if not residue.is_zero():
        return ConvergenceReport(
            "partial-sum-bound", claim, "hypothesis-failure",
            {"failed_precondition": "q(f) is nonzero to stored precision"}, tolerances,
        )
    M_list = sorted(set(int(m) for m in M_list))
    if not M_list or M_list[0] < 1 or M_list[-1] > f.M_max:
        raise ValueError("M_list entries must lie in [1, M_max]")
    eps = box.eps
    d_val = d_eps(q, box, k_eps_grid(box, 1.0, points))
    decay = math.exp(-2 * math.pi * eps)
    bound = kappa * d_val * decay / (1.0 - decay)
    mtop = M_list[-1]
    max_abs = 0.0
    max_abs_torsion = 0.0
    max_abs_other = 0.0
    argmax = None
    rows = {m: 0.0 for m in M_list}
    for t1, z in box.U:
        slice_vals = [0j]
        for m in range(1, mtop + 1):
            slice_vals.append(evaluate(f.phis[m], t1, z).value)
        near = _is_near_torsion(t1, z)
        base = z.imag * z.imag / t1.imag
        for i in range(points):
            r = 2 * eps + (1 / (2 * eps) - 2 * eps) * i / (points - 1) if points > 1 else 2 * eps
            for j in range(points):
                t2 = complex(j / points, base + r)
                q2 = cmath.exp(2j * math.pi * t2)
                acc = 0j
                w = 1.0 + 0j
                idx = 0
                for m in range(1, mtop + 1):
                    w *= q2
                    acc += slice_vals[m] * w
                    if idx < len(M_list) and M_list[idx] == m:
                        a = abs(acc)
                        rows[m] = max(rows[m], a)
                        if a > max_abs:
                            max_abs = a
                            argmax = (m, t1, z, t2)
                        if near:
                            max_abs_torsion = max(max_abs_torsion, a)
                        else:
                            max_abs_other = max(max_abs_other, a)
                        idx += 1
    verdict = "pass" if max_abs <= bound else "fail"
    witnesses = {
        "D_eps": d_val,
        "bound": bound,
        "max_partial_sum": max_abs,
        "margin": bound - max_abs,
        "max_on_torsion_subgrid": max_abs_torsion,
        "max_off_torsion": max_abs_other,
        "torsion_subgrid_pass": max_abs_torsion <= bound,
        "grid_size": len(box.U) * points * points,
    }
    if argmax is not None:
        witnesses["argmax"] = "M=%d tau1=%s z=%s tau2=%s" % (argmax[0], _cplx_str(argmax[1]), _cplx_str(argmax[2]), _cplx_str(argmax[3]))
    series = {"partial_sums": (["M", "max_abs_partial_sum"], [[m, rows[m]] for m in M_list])}
    return ConvergenceReport("partial-sum-bound", claim, verdict, witnesses, tolerances, series)


# ---------------------------------------------------------------------------
# coefficient bound


def hecke_coeff_check(f: FormalFJ, bound: int, const_slack: float = 1.1) -> ConvergenceReport:
    """Fit the minimal C with |c(f; t)| <= C det(t)^k over positive
    definite t in the window, and compare against the half-window fit.

    Passes when the constant is stable: C(bound) <= const_slack *
    C(bound // 2), or both vanish.
    """
    if not f.is_cuspidal():
        raise ValueError("input series must be cuspidal")
    if bound < 2:
        raise ValueError("bound must be at least 2")
    if bound > f.M_max or bound >= f.prec:
        raise ValueError("bound exceeds stored precision")
    k = f.k

    def scan(top: int):
        best = 0.0
        arg = None
        for m in range(1, top + 1):
            for (n, r), v in f.phis[m].coeffs.items():
                if n > top or 4 * n * m - r * r <= 0:
                    continue
                det = Fraction(4 * n * m - r * r, 4)
                ratio = abs(v) / det**k
                ratio = float(ratio)
                if ratio > best:
                    best = ratio
                    arg = (n, r, m)
        return best, arg

    c_full, arg_full = scan(bound)
    c_half, _ = scan(bound // 2)
    if c_full == 0.0:
        verdict = "pass"
    elif c_half == 0.0:
        verdict = "fail"
    else:
        verdict = "pass" if c_full <= const_slack * c_half else "fail"
    witnesses = {"C_H": c_full, "C_H_half": c_half, "bound": bound}
    if arg_full is not None:
        witnesses["argmax_t"] = list(arg_full)
    return ConvergenceReport(
        "hecke-bound",
        "cuspidal coefficients stay below a stable constant times det(t)^k",
        verdict,
        witnesses,
        {"const_slack": const_slack},
    )
