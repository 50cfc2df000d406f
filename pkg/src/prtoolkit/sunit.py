"""Three-term equations over finitely generated subgroups of Q*.

A subgroup G of the nonzero rationals given by generators is, modulo
the torsion {1, -1}, free abelian; its rank is the rank of the integer
matrix whose rows are the prime exponent vectors of the generators
(signs contribute only torsion).  The classical finiteness theorem for
unit equations bounds the number of solutions of a x + b y = 1 with
x, y in a rank-r group by 2^(8 (r + 2)); running the unknowns over G
itself, i.e. over the rank-2r group G x G, gives the form 2^(16 (r+1)).
Both bounds are exact integers here.

For a three-variable equation a x + b y + c z = 0 with x, y, z ranging
over G, partition regularity with respect to finite colorings of G
holds exactly when a + b + c = 0: then every constant triple
x = y = z = g is a solution and trivially monochromatic, while for
a + b + c != 0 the finiteness theorem leaves too few essentially
different solutions to survive every coloring.

Coefficients and generators are restricted to exact rationals;
enumeration is truncated by an exponent box rather than numeric height,
which keeps it exact and finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import DEFAULT_FACTOR_BUDGET, factor_integer, matrix_rank

Rational = Union[int, Fraction]

DEFAULT_ENUM_CELLS = 5_000_000


@dataclass(frozen=True)
class GroupSpec:
    """A finitely generated multiplicative subgroup of Q*.

    `exponents` has one row per generator, giving its exponent over the
    sorted prime basis `primes`; `signs` holds 1 for negative
    generators.  Every generator recomposes exactly as
    (-1)^sign * prod primes^row.  `rank` is the rank of the exponent
    matrix: the free rank of the group.
    """

    generators: Tuple[Fraction, ...]
    primes: Tuple[int, ...]
    exponents: Tuple[Tuple[int, ...], ...]
    signs: Tuple[int, ...]
    rank: int


def _exponent_map(q: Fraction, budget: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    num, den = abs(q.numerator), q.denominator
    if num != 1:
        for p, e in factor_integer(num, budget)[1]:
            out[p] = out.get(p, 0) + e
    if den != 1:
        for p, e in factor_integer(den, budget)[1]:
            out[p] = out.get(p, 0) - e
    return {p: e for p, e in out.items() if e != 0}


def make_group(
    generators: Sequence[Rational], budget: int = DEFAULT_FACTOR_BUDGET
) -> GroupSpec:
    """Derive the exponent lattice, signs and rank from the generators."""
    gens = tuple(Fraction(g) for g in generators)
    if not gens:
        raise ValueError("need at least one generator")
    if any(g == 0 for g in gens):
        raise ValueError("generators must be nonzero")
    maps = [_exponent_map(g, budget) for g in gens]
    primes = tuple(sorted({p for m in maps for p in m}))
    rows = tuple(tuple(m.get(p, 0) for p in primes) for m in maps)
    if primes:
        rank = matrix_rank([list(r) for r in rows])
    else:
        rank = 0
    return GroupSpec(
        generators=gens,
        primes=primes,
        exponents=rows,
        signs=tuple(0 if g > 0 else 1 for g in gens),
        rank=rank,
    )


def _as_group(group: Union[GroupSpec, Sequence[Rational]], budget: int) -> GroupSpec:
    return group if isinstance(group, GroupSpec) else make_group(group, budget)


def subgroup_rank(
    generators: Union[GroupSpec, Sequence[Rational]],
    budget: int = DEFAULT_FACTOR_BUDGET,
) -> int:
    """Rank of the free part of the generated group: {2,3} -> 2, {-1} -> 0."""
    return _as_group(generators, budget).rank


def sunit_solution_bound(r: int) -> int:
    """Exact bound 2^(16 (r + 1)) on solutions of x + y = 1 over a rank-r group.

    This is the two-term bound applied to the rank-2r product group."""
    if r < 0:
        raise ValueError("rank must be nonnegative")
    return 2 ** (16 * (r + 1))


def two_term_unit_bound(r: int) -> int:
    """Exact bound 2^(8 (r + 2)) for a x + b y = 1 over a rank-r group."""
    if r < 0:
        raise ValueError("rank must be nonnegative")
    return 2 ** (8 * (r + 2))


def enumerate_group_elements(
    group: Union[GroupSpec, Sequence[Rational]],
    exp_bound: int,
    budget: int = DEFAULT_FACTOR_BUDGET,
    max_cells: int = DEFAULT_ENUM_CELLS,
) -> List[Fraction]:
    """All products g_1^{e_1} .. g_k^{e_k} with |e_i| <= exp_bound, sorted.

    A finite, deduplicated window into the group; completeness holds
    only relative to the exponent box.
    """
    if exp_bound < 0:
        raise ValueError("exponent bound must be nonnegative")
    spec = _as_group(group, budget)
    k = len(spec.generators)
    if (2 * exp_bound + 1) ** k > max_cells:
        raise ValueError("enumeration box too large")
    out = set()
    for exps in product(range(-exp_bound, exp_bound + 1), repeat=k):
        val = Fraction(1)
        for g, e in zip(spec.generators, exps):
            val *= g ** e
        out.add(val)
    return sorted(out)


def count_unit_equation_solutions(
    a: Rational,
    b: Rational,
    group: Union[GroupSpec, Sequence[Rational]],
    exp_bound: int,
    budget: int = DEFAULT_FACTOR_BUDGET,
) -> Tuple[int, Tuple[Tuple[Fraction, Fraction], ...]]:
    """Pairs (x, y) in the exponent box with a x + b y = 1, exactly.

    An exhaustive scan of the box squared; every solution re-verifies
    by exact arithmetic, and the count is asserted against the bound
    2^(16 (r + 1)) (the two-term bound for the product group of rank
    2r, which covers pairs from a rank-r group).
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("coefficients must be nonzero")
    spec = _as_group(group, budget)
    elements = enumerate_group_elements(spec, exp_bound)
    sols = []
    for x in elements:
        for y in elements:
            if a * x + b * y == 1:
                sols.append((x, y))
    sols.sort()
    bound = sunit_solution_bound(spec.rank)
    assert len(sols) <= bound, "solution count exceeds the finiteness bound"
    return len(sols), tuple(sols)


@dataclass(frozen=True)
class SUnitVerdict:
    """Partition-regularity verdict for a x + b y + c z = 0 over a group.

    PR_CONSTANT iff the coefficient sum vanishes; then every constant
    triple is a solution.  `bound` = 2^(16 (rank + 1)) contextualizes
    the NOT_PR case: solutions exist in only finitely many shapes.
    """

    status: str  # "PR_CONSTANT" | "NOT_PR"
    coefficient_sum: Fraction
    rank: Optional[int]
    bound: Optional[int]
    note: str = ""


def decide_sunit_3var(
    a: Rational,
    b: Rational,
    c: Rational,
    group: Union[GroupSpec, Sequence[Rational], None] = None,
    budget: int = DEFAULT_FACTOR_BUDGET,
) -> SUnitVerdict:
    """Decide a x + b y + c z = 0 for x, y, z ranging over the group.

    The criterion a + b + c = 0 is scale-invariant and independent of
    the particular group; the group, when given, only furnishes the
    rank and the finiteness bound reported for context.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if 0 in (a, b, c):
        raise ValueError("all three coefficients must be nonzero")
    s = a + b + c
    rank = None
    bound = None
    if group is not None:
        rank = _as_group(group, budget).rank
        bound = sunit_solution_bound(rank)
    if s == 0:
        return SUnitVerdict(
            status="PR_CONSTANT",
            coefficient_sum=s,
            rank=rank,
            bound=bound,
            note="x = y = z = g solves the equation for every group element g",
        )
    return SUnitVerdict(
        status="NOT_PR",
        coefficient_sum=s,
        rank=rank,
        bound=bound,
        note="coefficient sum is nonzero: no constant solutions, and only "
        "finitely many solution shapes exist",
    )
