"""Partition regularity of polynomial-exponential equations over the integers.

The equations handled here have the shape

    sum_i  P_i(x_1..x_n, y) * f_i(y) * a_{i,1}^{x_1} * ... * a_{i,n}^{x_n} = 0

with integer character bases a_{i,j} != 0.  Such an equation always has
the diagonal family x_1 = ... = x_n = y = s, which collapses it to the
single-variable exponential sum

    g(s) = sum_i  a_i^s * A_i(s),     a_i = prod_j a_{i,j},
                                      A_i = P_i(s,..,s) * f_i(s).

A constant solution (an integer zero of g) is monochromatic under every
coloring, so it certifies partition regularity outright.  Conversely,
when the character-group hypothesis below holds, the absence of constant
solutions decides non-regularity, because every monochromatic solution
family would otherwise be forced through the diagonal.

Hypothesis.  For a partition of the term indices, the group
G = { z in Z^n : a_i^z = a_j^z whenever i, j share a block } must be
trivial for every partition with at least one block of size >= 2
(single-block-free partitions impose no constraint and are skipped).
G is trivial exactly when the matrix of prime-exponent differences
v_p(a_{i,k}) - v_p(a_{j,k}) over all in-block pairs has full rank n:
sign conditions alone cannot rescue triviality, since a finite-index
subgroup of a nontrivial lattice is nontrivial.

Deciding whether g has an integer zero is done with exact arithmetic
only: a dominance certificate confines all zeros to a finite window
which is then scanned, and an independent modular certificate (all
residues of g nonzero modulo some M coprime to the bases) can confirm
emptiness a second way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .algebra import (
    DEFAULT_FACTOR_BUDGET,
    IncompleteFactorization,
    MultiPoly,
    RatMatrix,
    UniPoly,
    factor_integer,
    integer_roots,
)

DEFAULT_PARTITION_CAP = 12
DEFAULT_MODULUS_CAP = 200


# ---------------------------------------------------------------------
# equation structure


@dataclass(frozen=True)
class PolyExpTerm:
    """One additive term: poly * f(param) * product of characters."""

    poly: MultiPoly
    f: Union[UniPoly, Callable[[int], Union[int, Fraction]], None]
    characters: Tuple[int, ...]


@dataclass(frozen=True)
class PolyExpEquation:
    """A polynomial-exponential equation, normalized to `sum = 0` form.

    `variables` lists every variable in declaration order; `exp_vars`
    are the ones appearing in exponent position (character vectors are
    aligned with this tuple); `param_var` is the distinguished variable
    appearing only polynomially, if any.
    """

    variables: Tuple[str, ...]
    exp_vars: Tuple[str, ...]
    param_var: Optional[str]
    terms: Tuple[PolyExpTerm, ...]

    def __post_init__(self):
        if not self.exp_vars:
            raise ValueError("a polyexp equation needs at least one exponent variable")
        if not self.terms:
            raise ValueError("a polyexp equation needs at least one term")
        seen = set()
        for t in self.terms:
            if len(t.characters) != len(self.exp_vars):
                raise ValueError("character vector length must match exp_vars")
            if any((not isinstance(b, int)) or b == 0 for b in t.characters):
                raise ValueError("character entries must be nonzero integers")
            if t.poly.is_zero():
                raise ValueError("term polynomial must be nonzero")
            if isinstance(t.f, UniPoly) and t.f.is_zero():
                raise ValueError("term f must be nonzero")
            if t.characters in seen:
                raise ValueError(
                    "duplicate character vector %r; merge the terms" % (t.characters,)
                )
            seen.add(t.characters)


def polyexp_eval(eq: PolyExpEquation, values: Sequence[Union[int, Fraction]]) -> Fraction:
    """Evaluate the equation's left-hand side at integer variable values."""
    if len(values) != len(eq.variables):
        raise ValueError("need one value per variable")
    vmap = dict(zip(eq.variables, values))
    total = Fraction(0)
    for t in eq.terms:
        part = t.poly.eval([vmap[v] for v in t.poly.vars])
        if t.f is not None:
            if eq.param_var is None:
                raise ValueError("term has f but the equation has no parameter variable")
            y = vmap[eq.param_var]
            fv = t.f.eval(y) if isinstance(t.f, UniPoly) else Fraction(t.f(int(y)))
            part *= fv
        for b, v in zip(t.characters, eq.exp_vars):
            part *= Fraction(b) ** int(vmap[v])
        total += part
    return total


# ---------------------------------------------------------------------
# exponential sums in one variable


class ExpSum:
    """Exact exponential sum  g(s) = sum_i a_i^s * A_i(s)  over Z.

    Bases are pairwise distinct nonzero integers and coefficient
    polynomials are nonzero with integer coefficients; construction
    merges duplicate bases, drops canceled terms and clears denominators
    by a common positive factor (which preserves the zero set).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[int, Union[UniPoly, Iterable]]]):
        merged: Dict[int, UniPoly] = {}
        order: List[int] = []
        for base, coeff in terms:
            if not isinstance(base, int) or base == 0:
                raise ValueError("bases must be nonzero integers, got %r" % (base,))
            poly = coeff if isinstance(coeff, UniPoly) else UniPoly(coeff)
            if base in merged:
                merged[base] = merged[base] + poly
            else:
                merged[base] = poly
                order.append(base)
        den = 1
        for base in order:
            for c in merged[base].coeffs:
                den = lcm(den, c.denominator)
        out = []
        for base in order:
            poly = merged[base].scale(den)
            if not poly.is_zero():
                out.append((base, poly))
        object.__setattr__(self, "terms", tuple(out))

    def __setattr__(self, name, value):
        raise AttributeError("ExpSum is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def eval(self, s: int) -> Fraction:
        total = Fraction(0)
        for base, poly in self.terms:
            total += Fraction(base) ** s * poly.eval(s)
        return total

    def __eq__(self, other):
        if not isinstance(other, ExpSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return "ExpSum(%s)" % ", ".join(
            "(%d)^s * [%r]" % (b, p) for b, p in self.terms
        )


def diagonalize(eq: PolyExpEquation) -> ExpSum:
    """Collapse an equation along the diagonal x_1 = ... = y = s.

    Each term contributes base prod_j a_{i,j} with coefficient
    polynomial P_i(s,..,s) * f_i(s); terms whose bases coincide merge.
    Raises if some f is not a polynomial (no exact representation; use a
    pointwise scan with a user-supplied bound instead).
    """
    out = []
    for t in eq.terms:
        if t.f is not None and not isinstance(t.f, UniPoly):
            raise ValueError(
                "non-polynomial f has no exact diagonal; supply a search bound"
            )
        base = 1
        for b in t.characters:
            base *= b
        poly = t.poly.diagonal()
        if t.f is not None:
            poly = poly * t.f
        out.append((base, poly))
    return ExpSum(out)


def diagonal_eval(eq: PolyExpEquation, s: int) -> Fraction:
    """g(s) evaluated pointwise; works even when some f is a callable."""
    base_vals = [v for v in eq.variables]
    return polyexp_eval(eq, [s] * len(base_vals))


# ---------------------------------------------------------------------
# set partitions and Bell numbers

_BELL_CACHE: List[int] = [1]


def bell_number(m: int) -> int:
    """Number of set partitions of [m], by the binomial recurrence.

    B(0) = 1 and B(k+1) = sum_l C(k, l) B(l).
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    while len(_BELL_CACHE) <= m:
        k = len(_BELL_CACHE) - 1
        _BELL_CACHE.append(sum(comb(k, l) * _BELL_CACHE[l] for l in range(k + 1)))
    return _BELL_CACHE[m]


def enumerate_partitions(m: int, cap: int = DEFAULT_PARTITION_CAP):
    """Yield all set partitions of {0, .., m-1} as tuples of index tuples.

    Partitions are produced in restricted-growth-string order, so the
    sequence is deterministic; blocks are ordered by their least element.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if m > cap:
        raise ValueError("partition enumeration cap exceeded: %d > %d" % (m, cap))

    rgs = [0] * m

    def rec(i: int, maxval: int):
        if i == m:
            nblocks = maxval + 1
            blocks: List[List[int]] = [[] for _ in range(nblocks)]
            for idx, b in enumerate(rgs):
                blocks[b].append(idx)
            yield tuple(tuple(b) for b in blocks)
            return
        for c in range(maxval + 2):
            rgs[i] = c
            yield from rec(i + 1, max(maxval, c))

    yield from rec(1, 0) if m >= 1 else iter(())


# ---------------------------------------------------------------------
# character-group triviality


def _abs_factorization(x: int, budget: int) -> Dict[int, int]:
    _, factors = factor_integer(abs(x), budget) if abs(x) != 1 else (1, ())
    return dict(factors)


def character_group_trivial(
    characters: Sequence[Tuple[int, ...]],
    partition: Sequence[Sequence[int]],
    budget: int = DEFAULT_FACTOR_BUDGET,
) -> bool:
    """Whether G = {z : a_i^z = a_j^z for i~j} is the zero subgroup of Z^n.

    For every pair in a common block and every prime p dividing any
    involved entry, the vector of valuation differences
    (v_p(a_{i,k}) - v_p(a_{j,k}))_k is a linear constraint on z; G is
    trivial iff the stacked constraint matrix has rank n.  Signs are
    immaterial: the sign conditions carve out a finite-index subgroup,
    and a finite-index subgroup of a nontrivial lattice is nontrivial.

    Raises IncompleteFactorization when an entry cannot be factored
    within the budget.
    """
    chars = [tuple(c) for c in characters]
    if not chars:
        raise ValueError("need at least one character")
    n = len(chars[0])
    if n < 1 or any(len(c) != n for c in chars):
        raise ValueError("characters must share a positive common length")
    if any(b == 0 for c in chars for b in c):
        raise ValueError("character entries must be nonzero")

    cache: Dict[int, Dict[int, int]] = {}

    def vals(x: int) -> Dict[int, int]:
        if x not in cache:
            cache[x] = _abs_factorization(x, budget)
        return cache[x]

    rows: List[List[int]] = []
    for block in partition:
        block = list(block)
        for a in range(len(block)):
            for b in range(a + 1, len(block)):
                i, j = block[a], block[b]
                primes = set()
                for k in range(n):
                    primes.update(vals(chars[i][k]))
                    primes.update(vals(chars[j][k]))
                for p in sorted(primes):
                    rows.append(
                        [
                            vals(chars[i][k]).get(p, 0) - vals(chars[j][k]).get(p, 0)
                            for k in range(n)
                        ]
                    )
    if not rows:
        return False  # no pair constraints: G = Z^n, never trivial for n >= 1
    return RatMatrix(rows).rank() == n


def mutually_coprime(characters: Sequence[Tuple[int, ...]]) -> Tuple[bool, bool]:
    """(pairwise-coprime, unit-entry-warning) across all distinct entries.

    Entries of absolute value 1 contribute zero exponent vectors and are
    flagged; the rank-based triviality check remains authoritative.
    """
    entries = [abs(b) for c in characters for b in c]
    unit = any(e == 1 for e in entries)
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            if gcd(entries[i], entries[j]) != 1:
                return False, unit
    return True, unit


# ---------------------------------------------------------------------
# combinatorial constants


@dataclass(frozen=True)
class ABConstants:
    A: int
    B: int


def compute_constants(eq: PolyExpEquation) -> ABConstants:
    """A = sum_l C(n + d_l, n) over terms, B = max(n, A).

    Here n is the number of exponent variables and d_l the degree of
    the l-th polynomial in those variables (a constant polynomial has
    d_l = 0, so constants give A = m and B = max(n, m)).
    """
    n = len(eq.exp_vars)
    A = 0
    for t in eq.terms:
        present = [v for v in eq.exp_vars if v in t.poly.vars]
        d = t.poly.degree_in(present) if present else 0
        d = max(d, 0)
        A += comb(n + d, n)
    return ABConstants(A=A, B=max(n, A))


def solution_count_bound(eq: PolyExpEquation, d: int = 1) -> int:
    """Exact integer bound  Bell(m) * 2^(35 B^3) * d^(6 B^2).

    `d` is the degree of the number field the characters live in (1 for
    the rationals).  The value is exact and can be astronomically large.
    """
    if d < 1:
        raise ValueError("field degree must be at least 1")
    m = len(eq.terms)
    B = compute_constants(eq).B
    return bell_number(m) * 2 ** (35 * B ** 3) * d ** (6 * B ** 2)


# ---------------------------------------------------------------------
# dominance certificates


@dataclass(frozen=True)
class BranchCertificate:
    """Tail guarantee for one direction of (a parity class of) g.

    The branch sum is an exponential sum in a local coordinate t >= 0
    (`direction` "plus": t = s or s = 2t / 2t+1; "minus": t = -s up to
    the parity mapping), with the listed signed bases and integer
    coefficient polynomials.  The guarantee is: for every integer
    t > threshold the branch sum is nonzero.

    kind "single": one base only, so zeros are the nonnegative integer
    roots of the lone coefficient polynomial, all <= threshold.

    kind "ratio": with terms sorted by decreasing |base|, threshold T
    satisfies T >= max(t1, tstar, 1) and the exact inequality
        2 * sum_{i>=2} Chat_i(T) |b_i|^T  <  |lead(C_1)| T^{deg C_1} |b_1|^T
    where Chat is the absolute-coefficient companion.  t1 makes
    |C_1(t)| >= |lead| t^deg / 2 for all t >= t1, and tstar makes every
    tail ratio term strictly decreasing from tstar on, so the inequality
    persists for all t >= T.
    """

    parity: str  # "all" | "even" | "odd"
    direction: str  # "plus" | "minus"
    bases: Tuple[int, ...]
    coeffs: Tuple[Tuple[int, ...], ...]
    kind: str  # "single" | "ratio"
    threshold: int
    t1: int
    tstar: int


@dataclass(frozen=True)
class DominanceCertificate:
    """Window [-s_minus, s_plus] containing every integer zero of g.

    `zero_parities` lists parity classes on which g vanishes
    identically (each such class is an infinite solution family and is
    excluded from the branch guarantees).
    """

    s_plus: int
    s_minus: int
    branches: Tuple[BranchCertificate, ...]
    zero_parities: Tuple[str, ...]


def _int_coeffs(p: UniPoly) -> Tuple[int, ...]:
    out = []
    for c in p.coeffs:
        if c.denominator != 1:
            raise ValueError("expected integer coefficients, got %r" % (c,))
        out.append(int(c))
    return tuple(out)


def _abs_eval(coeffs: Sequence[int], t: int) -> int:
    total = 0
    for c in reversed(coeffs):
        total = total * t + abs(c)
    return total


def _split_parity(g: ExpSum) -> Tuple[Optional[ExpSum], Optional[ExpSum]]:
    """(even part in t with s=2t, odd part in t with s=2t+1), None if zero.

    Both parts have pairwise distinct positive bases a^2; bases a and -a
    merge, which is the only way distinct bases can collide.
    """
    even_terms: List[Tuple[int, UniPoly]] = []
    odd_terms: List[Tuple[int, UniPoly]] = []
    for base, poly in g.terms:
        sq = base * base
        even_terms.append((sq, poly.compose_linear(2, 0)))
        odd_terms.append((sq, poly.compose_linear(2, 1).scale(base)))
    even = ExpSum(even_terms)
    odd = ExpSum(odd_terms)
    return (None if even.is_zero() else even), (None if odd.is_zero() else odd)


def _negation_transform(terms: Sequence[Tuple[int, UniPoly]]) -> List[Tuple[int, UniPoly]]:
    """Terms of  g(-k) * (prod |a_i|)^k  as an exponential sum in k.

    Each base a_i becomes sign(a_i) * prod_{j != i} |a_j| and the
    coefficient becomes A_i(-k); when the |a_i| are pairwise distinct so
    are the new absolute bases, and all-positive bases stay positive.
    """
    total = 1
    for b, _ in terms:
        total *= abs(b)
    out = []
    for b, poly in terms:
        newbase = (total // abs(b)) * (1 if b > 0 else -1)
        out.append((newbase, poly.compose_linear(-1, 0)))
    return out


def _branch(
    terms: Sequence[Tuple[int, UniPoly]], parity: str, direction: str
) -> BranchCertificate:
    ordered = sorted(terms, key=lambda t: abs(t[0]), reverse=True)
    bases = tuple(b for b, _ in ordered)
    coeffs = tuple(_int_coeffs(p) for _, p in ordered)

    if len(ordered) == 1:
        roots = integer_roots(ordered[0][1])
        threshold = max([r for r in roots if r >= 0], default=0)
        return BranchCertificate(parity, direction, bases, coeffs, "single", threshold, 0, 0)

    c1 = coeffs[0]
    d1 = len(c1) - 1
    cd = abs(c1[-1])
    b1 = abs(bases[0])
    b2 = abs(bases[1])

    t = 1
    while 2 * _abs_eval(c1[:-1], t) > cd * t ** d1:
        t += 1
    t1 = t

    dmax = max(len(c) - 1 for c in coeffs[1:])
    t = 1
    while (t + 1) ** dmax * b2 >= t ** dmax * b1:
        t += 1
    tstar = t

    t = max(t1, tstar, 1)
    guard = 0
    while 2 * sum(
        _abs_eval(c, t) * abs(b) ** t for b, c in zip(bases[1:], coeffs[1:])
    ) >= cd * t ** d1 * b1 ** t:
        t += 1
        guard += 1
        if guard > 500_000:
            raise RuntimeError("dominance threshold search failed to converge")
    return BranchCertificate(parity, direction, bases, coeffs, "ratio", t, t1, tstar)


def _branch_pairs(g: ExpSum) -> Tuple[List[Tuple[str, Tuple[Tuple[int, UniPoly], ...]]], List[str]]:
    """Decompose g into parity parts needing certification.

    Returns ([(parity, terms)], zero_parities).  When all absolute bases
    are distinct the single part "all" is g itself; otherwise the even
    and odd subsequences are treated separately (that is the only way
    base collisions |a| = |-a| can occur over the integers).
    """
    abs_bases = [abs(b) for b, _ in g.terms]
    if len(set(abs_bases)) == len(abs_bases):
        return [("all", g.terms)], []
    even, odd = _split_parity(g)
    parts = []
    zero: List[str] = []
    if even is None:
        zero.append("even")
    else:
        parts.append(("even", even.terms))
    if odd is None:
        zero.append("odd")
    else:
        parts.append(("odd", odd.terms))
    if not parts:
        raise ValueError("nonzero exponential sum cannot vanish on all of Z")
    return parts, zero


def _map_to_s(parity: str, direction: str, threshold: int) -> int:
    """Largest |s| reachable by a branch zero, given its t-threshold."""
    if parity == "all":
        return threshold
    if parity == "even":
        return 2 * threshold
    # odd: s = 2t + 1 for plus (max 2T+1), s = -2k + 1 for minus (min 1 - 2T)
    return 2 * threshold + 1 if direction == "plus" else max(0, 2 * threshold - 1)


def dominance_bound(g: ExpSum) -> DominanceCertificate:
    """Certificate confining every integer zero of g to a finite window.

    Raises ValueError on the identically zero sum (no finite window
    exists; every integer is a zero).
    """
    if g.is_zero():
        raise ValueError("the zero sum vanishes everywhere; no finite window")
    parts, zero_parities = _branch_pairs(g)
    branches = []
    s_plus = 0
    s_minus = 0
    for parity, terms in parts:
        plus = _branch(terms, parity, "plus")
        minus = _branch(_negation_transform(terms), parity, "minus")
        branches.extend((plus, minus))
        s_plus = max(s_plus, _map_to_s(parity, "plus", plus.threshold))
        s_minus = max(s_minus, _map_to_s(parity, "minus", minus.threshold))
    return DominanceCertificate(
        s_plus=s_plus,
        s_minus=s_minus,
        branches=tuple(branches),
        zero_parities=tuple(zero_parities),
    )


def verify_dominance(g: ExpSum, cert: DominanceCertificate) -> bool:
    """Re-verify a dominance certificate from scratch, exactly.

    Reconstructs the branch sums from g, matches them against the
    certificate, and recomputes every claimed inequality (including at
    threshold+1 and threshold+2) together with the monotonicity
    witnesses t1 and tstar.  Pure function: no state, no floats.
    """
    try:
        parts, zero_parities = _branch_pairs(g)
    except ValueError:
        return False
    if tuple(zero_parities) != cert.zero_parities:
        return False
    expected: Dict[Tuple[str, str], Tuple[Tuple[int, UniPoly], ...]] = {}
    for parity, terms in parts:
        expected[(parity, "plus")] = tuple(terms)
        expected[(parity, "minus")] = tuple(_negation_transform(terms))
    if len(cert.branches) != len(expected):
        return False
    s_plus = 0
    s_minus = 0
    for br in cert.branches:
        key = (br.parity, br.direction)
        if key not in expected:
            return False
        ordered = sorted(expected.pop(key), key=lambda t: abs(t[0]), reverse=True)
        if tuple(b for b, _ in ordered) != br.bases:
            return False
        if tuple(_int_coeffs(p) for _, p in ordered) != br.coeffs:
            return False
        if br.kind == "single":
            if len(br.bases) != 1:
                return False
            roots = integer_roots(ordered[0][1])
            if any(r > br.threshold for r in roots if r >= 0):
                return False
        elif br.kind == "ratio":
            if len(br.bases) < 2:
                return False
            c1 = br.coeffs[0]
            d1 = len(c1) - 1
            cd = abs(c1[-1])
            b1 = abs(br.bases[0])
            b2 = abs(br.bases[1])
            t1, tstar, T = br.t1, br.tstar, br.threshold
            if T < max(t1, tstar, 1) or t1 < 1 or tstar < 1:
                return False
            if 2 * _abs_eval(c1[:-1], t1) > cd * t1 ** d1:
                return False
            dmax = max(len(c) - 1 for c in br.coeffs[1:])
            if (tstar + 1) ** dmax * b2 >= tstar ** dmax * b1:
                return False
            for t in (T, T + 1, T + 2):
                lhs = 2 * sum(
                    _abs_eval(c, t) * abs(b) ** t
                    for b, c in zip(br.bases[1:], br.coeffs[1:])
                )
                if lhs >= cd * t ** d1 * b1 ** t:
                    return False
        else:
            return False
        if br.direction == "plus":
            s_plus = max(s_plus, _map_to_s(br.parity, "plus", br.threshold))
        else:
            s_minus = max(s_minus, _map_to_s(br.parity, "minus", br.threshold))
    if expected:
        return False
    return cert.s_plus >= s_plus and cert.s_minus >= s_minus


# ---------------------------------------------------------------------
# modular certificates


def multiplicative_order(a: int, m: int) -> int:
    if m < 2:
        raise ValueError("modulus must be at least 2")
    a %= m
    if gcd(a, m) != 1:
        raise ValueError("element not invertible modulo %d" % m)
    k = 1
    t = a
    while t != 1:
        t = t * a % m
        k += 1
    return k


@dataclass(frozen=True)
class ModularCertificate:
    """Proof that g(s) != 0 for every integer s, via residues.

    M is coprime to every base, so s -> g(s) mod M is defined on all of
    Z and periodic with period `period` (the lcm of the base orders,
    joined with M itself when some coefficient polynomial is
    non-constant).  All `residues` over one full period are nonzero, so
    g has no integer zero at all.
    """

    modulus: int
    period: int
    residues: Tuple[int, ...]


def _modular_period(g: ExpSum, m: int) -> int:
    period = 1
    for base, _ in g.terms:
        period = lcm(period, multiplicative_order(base, m))
    if any(p.degree >= 1 for _, p in g.terms):
        period = lcm(period, m)
    return period


def _residues(
    g: ExpSum, m: int, start: int, count: int, early_abort: bool = False
) -> Optional[List[int]]:
    """Residues g(start), ..., g(start+count-1) mod m.

    Base powers are carried incrementally, one modular product per term
    and step.  With early_abort, returns None at the first zero residue
    instead of finishing the scan."""
    terms = [
        (base % m, [int(c) % m for c in reversed(_int_coeffs(poly))])
        for base, poly in g.terms
    ]
    powers = [pow(base, start, m) for base, _ in terms]
    out = []
    for s in range(start, start + count):
        total = 0
        sm = s % m
        for i, (base, rev_coeffs) in enumerate(terms):
            c = 0
            for coeff in rev_coeffs:
                c = (c * sm + coeff) % m
            total = (total + powers[i] * c) % m
            powers[i] = powers[i] * base % m
        if early_abort and total == 0:
            return None
        out.append(total)
    return out


def modular_certificate_search(
    g: ExpSum, m_max: int = DEFAULT_MODULUS_CAP
) -> Optional[ModularCertificate]:
    """Smallest modulus M <= m_max certifying that g never vanishes.

    Only moduli coprime to every base are usable (otherwise g(s) mod M
    is undefined for negative s).  Returns None when no modulus works;
    absence proves nothing.
    """
    if g.is_zero():
        return None
    for m in range(2, m_max + 1):
        if any(gcd(base, m) != 1 for base, _ in g.terms):
            continue
        period = _modular_period(g, m)
        residues = _residues(g, m, 0, period, early_abort=True)
        if residues is not None:
            return ModularCertificate(modulus=m, period=period, residues=tuple(residues))
    return None


def verify_modular(g: ExpSum, cert: ModularCertificate) -> bool:
    """Recheck coprimality, the period, all residues, plus one extra period."""
    m = cert.modulus
    if m < 2:
        return False
    if any(gcd(base, m) != 1 for base, _ in g.terms):
        return False
    if cert.period != _modular_period(g, m):
        return False
    table = _residues(g, m, 0, cert.period)
    if tuple(table) != cert.residues or any(r == 0 for r in table):
        return False
    return _residues(g, m, cert.period, cert.period) == table


# ---------------------------------------------------------------------
# constant-solution decision


@dataclass(frozen=True)
class ConstantSolutionResult:
    """Outcome of the integer-zero search for a diagonal sum g.

    status FOUND: `witness` is the zero of least |s| (nonnegative wins
    ties); `solutions_in_window` lists every zero inside the certified
    window and `families` names parity classes consisting entirely of
    zeros ("all", "even", "odd").  status NONE: the dominance window was
    scanned exhaustively and is empty, and `modular`, when present, is
    an independent second proof.  status UNKNOWN: only a user-supplied
    window was scanned; nothing outside it is claimed.
    """

    status: str
    witness: Optional[int]
    solutions_in_window: Tuple[int, ...]
    families: Tuple[str, ...]
    window: Optional[Tuple[int, int]]
    dominance: Optional[DominanceCertificate]
    modular: Optional[ModularCertificate]
    note: str = ""


def _least_witness(candidates: Iterable[int]) -> Optional[int]:
    best = None
    for s in candidates:
        key = (abs(s), 0 if s >= 0 else 1)
        if best is None or key < best[0]:
            best = (key, s)
    return None if best is None else best[1]


def decide_constant_solution(
    g: ExpSum,
    user_bound: Optional[int] = None,
    m_max: int = DEFAULT_MODULUS_CAP,
) -> ConstantSolutionResult:
    """Decide whether g(s) = 0 for some integer s, with certificates.

    Without `user_bound` the decision is complete: a dominance
    certificate confines zeros to a finite window which is scanned
    exactly.  With `user_bound` only [-user_bound, user_bound] is
    scanned and an empty scan yields UNKNOWN.
    """
    if g.is_zero():
        return ConstantSolutionResult(
            status="FOUND",
            witness=0,
            solutions_in_window=(),
            families=("all",),
            window=None,
            dominance=None,
            modular=None,
            note="all terms canceled: every integer is a solution",
        )
    if user_bound is not None:
        if user_bound < 0:
            raise ValueError("user bound must be nonnegative")
        zeros = [s for s in range(-user_bound, user_bound + 1) if g.eval(s) == 0]
        if zeros:
            return ConstantSolutionResult(
                status="FOUND",
                witness=_least_witness(zeros),
                solutions_in_window=tuple(zeros),
                families=(),
                window=(-user_bound, user_bound),
                dominance=None,
                modular=None,
                note="witness found by bounded scan",
            )
        return ConstantSolutionResult(
            status="UNKNOWN",
            witness=None,
            solutions_in_window=(),
            families=(),
            window=(-user_bound, user_bound),
            dominance=None,
            modular=None,
            note="no solution within the user bound; nothing outside it is claimed",
        )

    cert = dominance_bound(g)
    if not verify_dominance(g, cert):
        raise RuntimeError("internal error: dominance certificate failed re-verification")
    window = (-cert.s_minus, cert.s_plus)
    zeros = [s for s in range(window[0], window[1] + 1) if g.eval(s) == 0]
    families = tuple(cert.zero_parities)
    if zeros or families:
        family_reps = [0 if f in ("all", "even") else 1 for f in families]
        return ConstantSolutionResult(
            status="FOUND",
            witness=_least_witness(list(zeros) + family_reps),
            solutions_in_window=tuple(zeros),
            families=families,
            window=window,
            dominance=cert,
            modular=None,
        )
    modular = modular_certificate_search(g, m_max)
    if modular is not None and not verify_modular(g, modular):
        raise RuntimeError("internal error: modular certificate failed re-verification")
    return ConstantSolutionResult(
        status="NONE",
        witness=None,
        solutions_in_window=(),
        families=(),
        window=window,
        dominance=cert,
        modular=modular,
        note="window scanned exhaustively; no integer zero exists",
    )


# ---------------------------------------------------------------------
# the partition-regularity decision


@dataclass(frozen=True)
class HypothesisReport:
    """Character-group hypothesis audit for a polyexp equation.

    `trivial_for_all` covers every partition of the term set having at
    least one block of size >= 2 (all-singleton partitions impose no
    pair constraints and are skipped).  `degenerate_possible` flags
    whether the pure polynomial system {P_k = 0 for all k} might
    contribute solution families outside the exponential analysis; it
    is reported, not decided.
    """

    checked_partitions: int
    trivial_for_all: bool
    failing_partition: Optional[Tuple[Tuple[int, ...], ...]]
    coprime: bool
    unit_entry_warning: bool
    degenerate_possible: bool


@dataclass(frozen=True)
class PolyExpVerdict:
    status: str  # "PR_CONSTANT" | "NOT_PR" | "UNKNOWN"
    result: Optional[ConstantSolutionResult]
    hypothesis: Optional[HypothesisReport]
    diagonal: Optional[ExpSum]
    notes: Tuple[str, ...]


def check_hypothesis(
    eq: PolyExpEquation,
    partition_cap: int = DEFAULT_PARTITION_CAP,
    budget: int = DEFAULT_FACTOR_BUDGET,
) -> HypothesisReport:
    chars = [t.characters for t in eq.terms]
    m = len(chars)
    checked = 0
    trivial = True
    failing = None
    for partition in enumerate_partitions(m, cap=partition_cap):
        if all(len(b) < 2 for b in partition):
            continue
        checked += 1
        if trivial and not character_group_trivial(chars, partition, budget):
            trivial = False
            failing = partition
    coprime, unit = mutually_coprime(chars)
    safe = any(
        t.poly.degree() == 0 and (t.f is None or (isinstance(t.f, UniPoly) and t.f.degree == 0))
        for t in eq.terms
    )
    return HypothesisReport(
        checked_partitions=checked,
        trivial_for_all=trivial,
        failing_partition=failing,
        coprime=coprime,
        unit_entry_warning=unit,
        degenerate_possible=not safe,
    )


def decide_polyexp_pr(
    eq: PolyExpEquation,
    user_bound: Optional[int] = None,
    m_max: int = DEFAULT_MODULUS_CAP,
    partition_cap: int = DEFAULT_PARTITION_CAP,
) -> PolyExpVerdict:
    """Decide partition regularity over the integers via the diagonal.

    A FOUND constant solution certifies regularity unconditionally.
    An empty certified window decides non-regularity provided the
    character-group hypothesis holds; when the hypothesis fails, no
    negative claim is made and the verdict is UNKNOWN.
    """
    notes: List[str] = []
    try:
        hypothesis = check_hypothesis(eq, partition_cap=partition_cap)
    except IncompleteFactorization as e:
        return PolyExpVerdict(
            status="UNKNOWN",
            result=None,
            hypothesis=None,
            diagonal=None,
            notes=("hypothesis check aborted: %s" % e,),
        )
    if hypothesis.unit_entry_warning:
        notes.append("characters contain unit entries (zero exponent vectors)")
    if hypothesis.degenerate_possible:
        notes.append(
            "pure polynomial system {P_k = 0} not analyzed; it may carry "
            "solution families of its own"
        )

    has_callable_f = any(
        t.f is not None and not isinstance(t.f, UniPoly) for t in eq.terms
    )
    if has_callable_f:
        if user_bound is None:
            raise ValueError(
                "non-polynomial f requires a user-supplied search bound"
            )
        zeros = [
            s
            for s in range(-user_bound, user_bound + 1)
            if diagonal_eval(eq, s) == 0
        ]
        if zeros:
            result = ConstantSolutionResult(
                status="FOUND",
                witness=_least_witness(zeros),
                solutions_in_window=tuple(zeros),
                families=(),
                window=(-user_bound, user_bound),
                dominance=None,
                modular=None,
                note="witness found by pointwise bounded scan",
            )
            return PolyExpVerdict("PR_CONSTANT", result, hypothesis, None, tuple(notes))
        result = ConstantSolutionResult(
            status="UNKNOWN",
            witness=None,
            solutions_in_window=(),
            families=(),
            window=(-user_bound, user_bound),
            dominance=None,
            modular=None,
            note="pointwise scan exhausted the user bound",
        )
        return PolyExpVerdict("UNKNOWN", result, hypothesis, None, tuple(notes))

    g = diagonalize(eq)
    result = decide_constant_solution(g, user_bound=user_bound, m_max=m_max)
    if result.status == "FOUND":
        status = "PR_CONSTANT"
    elif result.status == "NONE":
        if hypothesis.trivial_for_all:
            status = "NOT_PR"
        else:
            status = "UNKNOWN"
            notes.append(
                "no constant solution, but the character-group hypothesis "
                "fails on partition %r; no regularity claim either way"
                % (hypothesis.failing_partition,)
            )
    else:
        status = "UNKNOWN"
    return PolyExpVerdict(status, result, hypothesis, g, tuple(notes))
