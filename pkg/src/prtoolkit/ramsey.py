"""Finite coloring search: the experimental side of partition regularity.

Partition-regularity claims about {1, .., N} are finitely checkable:
enumerate all solutions of the system inside [1, N], then search the
space of r-colorings for one avoiding monochromatic solutions.  An
avoiding coloring refutes forced monochromatism at this N; exhaustion
proves that every r-coloring of [1, N] contains a monochromatic
solution.  Both outcomes are machine-checkable, and `verify_coloring`
rechecks any claimed avoiding coloring against a fresh enumeration.

The search assigns colors to 1, 2, .., N in order, prunes a color as
soon as it would complete a monochromatic solution (solutions are
indexed by their largest element, so each is checked exactly once,
when its last element is colored), and breaks color symmetry by
allowing at most one brand-new color per step.  The first coloring
found is therefore the lexicographically least canonical avoiding
coloring.

Budgets guard both enumeration (grid cells) and search (assignment
nodes); the PRTOOLKIT_BUDGET environment variable overrides the node
default, with a tenth of it used for cells.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import MultiPoly, UniPoly, integer_roots
from .equations import (
    GeneralPolySystem,
    LinearSystem,
    TwoVarPolySystem,
)
from .polyexp import PolyExpEquation, polyexp_eval

DEFAULT_NODE_BUDGET = 100_000_000
DEFAULT_CELL_BUDGET = 10_000_000

Coloring = Tuple[int, ...]


class BudgetExceeded(Exception):
    """Raised when enumeration or search would exceed its budget."""


def _budgets(node_budget: Optional[int], cell_budget: Optional[int]) -> Tuple[int, int]:
    env = os.environ.get("PRTOOLKIT_BUDGET")
    base = int(env) if env else DEFAULT_NODE_BUDGET
    nodes = node_budget if node_budget is not None else base
    cells = cell_budget if cell_budget is not None else (
        base // 10 if env else DEFAULT_CELL_BUDGET
    )
    return nodes, cells


def _system_polys(cls) -> Tuple[Tuple[str, ...], List[MultiPoly]]:
    """Every supported class as (variables, polynomial equations = 0)."""
    if isinstance(cls, LinearSystem):
        vars_ = cls.variables
        polys = []
        for row, b in zip(cls.matrix.rows, cls.rhs):
            terms = {}
            for j, a in enumerate(row):
                if a != 0:
                    terms[tuple(1 if t == j else 0 for t in range(len(vars_)))] = Fraction(a)
            if b != 0:
                terms[tuple(0 for _ in vars_)] = -Fraction(b)
            polys.append(MultiPoly(vars_, terms))
        return vars_, polys
    if isinstance(cls, (TwoVarPolySystem, GeneralPolySystem)):
        return cls.variables, [p.with_vars(cls.variables) for p in cls.polys]
    raise TypeError("unsupported class for polynomial enumeration: %r" % (cls,))


def _residual(poly: MultiPoly, prefix: Sequence[int]) -> UniPoly:
    """Substitute all variables but the last; returns a polynomial in it."""
    k = len(poly.vars)
    coeffs: Dict[int, Fraction] = {}
    for exps, c in poly.terms.items():
        val = c
        for j in range(k - 1):
            if exps[j]:
                val *= Fraction(prefix[j]) ** exps[j]
        d = exps[k - 1]
        coeffs[d] = coeffs.get(d, Fraction(0)) + val
    top = max(coeffs, default=0)
    return UniPoly([coeffs.get(i, Fraction(0)) for i in range(top + 1)])


def enumerate_solutions(
    cls,
    N: int,
    cell_budget: Optional[int] = None,
) -> Tuple[Tuple[int, ...], ...]:
    """All solutions of the system with every variable in [1, N].

    Polynomial classes are enumerated by back-substitution: iterate the
    first k-1 variables and read the last one off the integer roots of
    the residual polynomial (a zero residual leaves it unconstrained,
    a nonzero constant kills the prefix).  Exponential equations are
    scanned directly.  Output is in lexicographic order.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    _, cells_max = _budgets(None, cell_budget)

    if isinstance(cls, PolyExpEquation):
        k = len(cls.variables)
        if N ** k > cells_max:
            raise BudgetExceeded("direct scan needs %d cells" % (N ** k))
        return tuple(
            vals
            for vals in product(range(1, N + 1), repeat=k)
            if polyexp_eval(cls, vals) == 0
        )

    vars_, polys = _system_polys(cls)
    k = len(vars_)
    if N ** max(k - 1, 0) > cells_max:
        raise BudgetExceeded("enumeration needs %d prefix cells" % (N ** (k - 1)))

    sols: List[Tuple[int, ...]] = []
    for prefix in product(range(1, N + 1), repeat=k - 1):
        candidates: Optional[List[int]] = None
        dead = False
        for poly in polys:
            res = _residual(poly, prefix)
            if res.is_zero():
                continue
            if res.degree == 0:
                dead = True
                break
            roots = [r for r in integer_roots(res) if 1 <= r <= N]
            candidates = roots if candidates is None else [
                r for r in candidates if r in roots
            ]
            if not candidates:
                dead = True
                break
        if dead:
            continue
        if candidates is None:
            candidates = list(range(1, N + 1))
        for last in sorted(candidates):
            full = prefix + (last,)
            if all(
                p.eval([Fraction(v) for v in full]) == 0 for p in polys
            ):
                sols.append(full)
    return tuple(sols)


def filter_injectivity(
    solutions: Sequence[Tuple[int, ...]], r: int
) -> Tuple[Tuple[int, ...], ...]:
    """Keep solutions taking at least r distinct values.

    r = 2 drops exactly the constant solutions; r equal to the arity
    keeps only fully injective tuples.
    """
    if r < 1:
        raise ValueError("injectivity threshold must be at least 1")
    if solutions and r > len(solutions[0]):
        raise ValueError("injectivity threshold exceeds tuple arity")
    return tuple(s for s in solutions if len(set(s)) >= r)


def verify_coloring(
    coloring: Sequence[int], solutions: Sequence[Tuple[int, ...]]
) -> Tuple[bool, Tuple[Tuple[int, ...], ...]]:
    """(no solution monochromatic, all offending solutions).

    `coloring[i]` is the color of the integer i + 1; a solution value
    outside the colored range is an error.
    """
    offenders = []
    for sol in solutions:
        if any(v < 1 or v > len(coloring) for v in sol):
            raise ValueError("solution %r escapes the colored range" % (sol,))
        if len({coloring[v - 1] for v in sol}) == 1:
            offenders.append(tuple(sol))
    return not offenders, tuple(offenders)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of the exhaustive avoiding-coloring search.

    status "AVOIDING": `coloring` is the lexicographically least
    canonical coloring of [1, N] with no monochromatic solution.
    status "FORCED": the search space was exhausted, so every coloring
    with this many colors contains a monochromatic solution; `nodes`
    documents the exhaustion.  status "UNKNOWN": a budget ran out
    before either outcome; never a silent wrong FORCED.
    """

    status: str  # "AVOIDING" | "FORCED" | "UNKNOWN"
    coloring: Optional[Coloring]
    N: int
    colors: int
    nodes: int
    solution_count: int
    note: str = ""


def search_avoiding_coloring(
    cls,
    N: int,
    colors: int,
    min_injectivity: int = 1,
    node_budget: Optional[int] = None,
    cell_budget: Optional[int] = None,
) -> SearchResult:
    """Search all r-colorings of [1, N] for one avoiding the system.

    `min_injectivity` = 2 ignores constant solutions (which force
    trivially).  Budget exhaustion yields an UNKNOWN outcome with the
    partial node count.
    """
    if colors < 1:
        raise ValueError("need at least one color")
    nodes_max, _ = _budgets(node_budget, cell_budget)
    try:
        solutions = enumerate_solutions(cls, N, cell_budget=cell_budget)
    except BudgetExceeded as e:
        return SearchResult(
            status="UNKNOWN", coloring=None, N=N, colors=colors, nodes=0,
            solution_count=0, note=str(e),
        )
    if min_injectivity > 1:
        solutions = filter_injectivity(solutions, min_injectivity)

    singleton = next((s for s in solutions if len(set(s)) == 1), None)
    if singleton is not None:
        return SearchResult(
            status="FORCED",
            coloring=None,
            N=N,
            colors=colors,
            nodes=0,
            solution_count=len(solutions),
            note="constant solution %r is monochromatic under every coloring"
            % (singleton,),
        )

    by_max: Dict[int, List[Tuple[int, ...]]] = {}
    for sol in solutions:
        support = tuple(sorted(set(sol)))
        top = support[-1]
        by_max.setdefault(top, [])
        if support not in by_max[top]:
            by_max[top].append(support)

    color = [0] * (N + 1)
    nodes = 0

    def ok(e: int, c: int) -> bool:
        for support in by_max.get(e, ()):
            if all(color[v] == c for v in support if v != e):
                return False
        return True

    def dfs(e: int, used: int) -> bool:
        nonlocal nodes
        if e > N:
            return True
        limit = min(used + 1, colors)
        for c in range(limit):
            nodes += 1
            if nodes > nodes_max:
                raise BudgetExceeded(
                    "coloring search exceeded %d nodes" % nodes_max
                )
            if ok(e, c):
                color[e] = c
                if dfs(e + 1, max(used, c + 1)):
                    return True
        return False

    try:
        found = dfs(1, 0)
    except BudgetExceeded as e:
        return SearchResult(
            status="UNKNOWN", coloring=None, N=N, colors=colors, nodes=nodes,
            solution_count=len(solutions), note=str(e),
        )
    if found:
        return SearchResult(
            status="AVOIDING",
            coloring=tuple(color[1:]),
            N=N,
            colors=colors,
            nodes=nodes,
            solution_count=len(solutions),
        )
    return SearchResult(
        status="FORCED",
        coloring=None,
        N=N,
        colors=colors,
        nodes=nodes,
        solution_count=len(solutions),
        note="search space exhausted",
    )


def canonical_coloring(kind: str, N: int, r: int = 2) -> Coloring:
    """Classical colorings for experiments, as explicit tables.

    "parity": n mod 2.  "mod": n mod r (residue classes).  "dyadic":
    floor(log2 n) mod r (blocks [2^k, 2^(k+1))), which for r = 2 avoids
    y = 2 x at every N.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if kind == "parity":
        return tuple(n % 2 for n in range(1, N + 1))
    if kind == "mod":
        if r < 2:
            raise ValueError("mod coloring needs r >= 2")
        return tuple(n % r for n in range(1, N + 1))
    if kind == "dyadic":
        if r < 2:
            raise ValueError("dyadic coloring needs r >= 2")
        return tuple((n.bit_length() - 1) % r for n in range(1, N + 1))
    raise ValueError("unknown coloring kind %r" % (kind,))
