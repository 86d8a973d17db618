"""Minkowski reduction of small rational positive definite forms."""

from fractions import Fraction

from fjcert import SymMatQ, act, hermite_check, minkowski_reduce

t = SymMatQ([[Fraction(5), Fraction(4)], [Fraction(4), Fraction(5)]])
reduced, u = minkowski_reduce(t)
print("input    :", t.rows)
print("reduced  :", reduced.rows)
print("transform:", u.rows, "det", u.det())
print("hermite conditions hold:", hermite_check(reduced))
assert act(t, u) == reduced

# the reduced corner entry is the minimum of the form
t3 = SymMatQ([
    [Fraction(9, 2), Fraction(3), Fraction(1)],
    [Fraction(3), Fraction(7), Fraction(2)],
    [Fraction(1), Fraction(2), Fraction(11, 3)],
])
reduced3, _ = minkowski_reduce(t3)
print("3x3 diagonal after reduction:", [reduced3[i, i] for i in range(3)])
