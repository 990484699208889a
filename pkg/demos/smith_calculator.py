"""The exact-algebra layer on its own: Smith forms, groups, limits.

Run:  python3 demos/smith_calculator.py
"""

from tilecohom import abelian as ab

print("== Smith normal form ==")
a = ab.intmat([[2, 4], [6, 8]])
dec = ab.smith_normal_form(a)
print("matrix [[2,4],[6,8]] has divisor chain", dec.nonzero_divisors())
print("U A V = S holds exactly:", ab.mat_eq(dec.u.dot(a).dot(dec.v), dec.s))

print("\n== homology of a chain complex ==")
print("circle (one vertex, one edge):",
      ab.homology_at(ab.zeros(1, 0), ab.zeros(0, 1)))
print("multiplication by 5 as a boundary gives",
      ab.homology_at(ab.intmat([[5]]), ab.zeros(1, 1)))

print("\n== invariants and coinvariants ==")
g = ab.FgAbGroup(5)
m = ab.intmat([
    [1, 0, 0, 0, 0],
    [0, 0, 0, 0, -1],
    [0, 1, 0, 0, 1],
    [0, 0, 1, 0, -1],
    [0, 0, 0, 1, 1],
])
f = ab.GroupHom(g, g, m)
print("an order-ten action on Z^5:")
print("  invariants:  ", ab.invariants_of(f))
print("  coinvariants:", ab.coinvariants_of(f))
print("  characteristic polynomial:", ab.characteristic_polynomial(m))

print("\n== direct limits ==")
fib = ab.GroupHom(ab.FgAbGroup(2), ab.FgAbGroup(2), ab.intmat([[1, 1], [1, 0]]))
print("unimodular self-map of Z^2:",
      ab.direct_limit(ab.DirectSystem(ab.FgAbGroup(2), fib)))
doubling = ab.GroupHom(ab.FgAbGroup(1), ab.FgAbGroup(1), ab.intmat([[2]]))
try:
    ab.direct_limit(ab.DirectSystem(ab.FgAbGroup(1), doubling))
except ab.NotStabilizing as exc:
    print("doubling on Z does not stabilize:", exc)

print("\n== mapping torus of the identity on a point ==")
circle = ab.mapping_torus_cohomology([ab.GroupHom.identity(ab.FgAbGroup(1))])
print("a circle:", ", ".join(str(d.group) for d in circle))
