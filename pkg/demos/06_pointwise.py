"""Check convergence of a series on its pointwise disc.

The synthetic series here has a single unit coefficient per slice, so its
partial sums are exactly geometric and the check passes; real lifts have
oscillating slice values and typically trip the strict tail clause.
"""

from fractions import Fraction

from fjcert import FormalFJ, JacobiFormQExp, TorsionPoint, c_constant_exact, pointwise_convergence_check

prec = 3
phis = [JacobiFormQExp.zero(10, 0, prec)]
phis += [JacobiFormQExp(10, m, prec, {(1, 0): Fraction(1)}) for m in range(1, 61)]
f = FormalFJ(10, 60, phis)

p = TorsionPoint(2, 1, 0)
print("disc constant at tau1=i:", c_constant_exact(1.0, p))

rep = pointwise_convergence_check(f, p, 1j, 0.5, 25)
print("verdict:", rep.verdict)
for key in ("C", "q2_abs", "S_M", "S_2M", "cauchy_gap", "tail_start"):
    print("  %-10s %s" % (key, rep.witnesses[key]))
print("partial sum rows:", len(rep.series["partial_sums"][1]))
