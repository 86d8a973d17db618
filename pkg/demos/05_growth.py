"""Specialize lift slices at a torsion point and fit their norm growth."""

from fractions import Fraction

from fjcert import (
    BoundConfig,
    TorsionPoint,
    enumerate_S,
    fe_norm,
    gritsenko_lift,
    growth_fit,
    jacobi_space,
    specialize_torsion,
)

phi = jacobi_space(10, True, 9 * 12 + 1)[0]
f = gritsenko_lift(phi, 12, 10)

p = TorsionPoint(2, 1, 0)
etas = [specialize_torsion(f.phis[m], p) for m in range(1, f.M_max + 1)]
b = Fraction(1, 128)
s = enumerate_S(2, b, 2)
print("torsion point lambda=1/2, window of %d exponents" % len(s))
for m in (1, 4, 8, 12):
    print("  m=%2d  fe_norm %.6g" % (m, fe_norm(etas[m - 1], s)))

rep = growth_fit(etas, f.k, 2, s, BoundConfig(b=b))
print("verdict:", rep.verdict)
print("fitted slope %.4f against threshold %.1f" % (rep.witnesses["slope"], f.k + 0.5 + 0.5))
print("scale-invariant ratio max: %.6g" % rep.witnesses["ratio_max"])
