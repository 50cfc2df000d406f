"""Finitely generated multiplicative groups and unit equations."""

from fractions import Fraction

from prtoolkit.sunit import (
    count_unit_equation_solutions,
    decide_sunit_3var,
    enumerate_group_elements,
    make_group,
    sunit_solution_bound,
    two_term_unit_bound,
)

# rank comes from the prime-exponent lattice: 4 and 8 are both powers
# of 2, so together they generate a rank-1 group
for gens in ((2, 3), (4, 8), (-1,), (3, Fraction(3, 5))):
    g = make_group(gens)
    print(f"<{', '.join(str(x) for x in gens)}>: rank {g.rank}, primes {g.primes}")

# ax + by + cz = 0 is PR over any such group iff a + b + c = 0
print("\nx + y - z over <2,3>:", decide_sunit_3var(1, 1, -1).status)
print("x + y - 2z over <2,3>:", decide_sunit_3var(1, 1, -2).status)

# x + y = 1 with x, y units: the classical three solutions
group = make_group([-1, 2])
count, sols = count_unit_equation_solutions(1, 1, group, 6)
print(f"\nx + y = 1 over <-1,2>, exponents up to 6: {count} solutions")
for x, y in sols:
    print(f"  x = {x}, y = {y}")
print("bound for rank", group.rank, "is 2^32 =", sunit_solution_bound(group.rank))
print("two-term bound:", two_term_unit_bound(group.rank))

# group elements themselves, smallest exponent box first
print("\n<2> with exponent box 2:", enumerate_group_elements(make_group([2]), 2))
