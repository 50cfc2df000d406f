"""Two-variable polynomial systems: constant witnesses and infinite PR.

The criterion: a two-variable system is PR exactly when some w solves
every diagonal P_i(w, w) = 0, and infinitely PR exactly when every
diagonal vanishes identically, i.e. (x - y) divides every P_i.
"""

import random
from fractions import Fraction

import pytest

from prtoolkit.algebra import MultiPoly
from prtoolkit.diophantine import (
    decide_infinitely_pr,
    decide_twovar,
    diagonal_polys,
    twovar_from_linear,
)
from prtoolkit.equations import (
    TwoVarPolySystem,
    classify,
    parse_equation_text,
)


def poly2(terms):
    return MultiPoly(("x", "y"), {k: Fraction(v) for k, v in terms.items()})


def system(*polys):
    return TwoVarPolySystem(variables=("x", "y"), polys=tuple(polys))


# --- worked instances -----------------------------------------------------


def test_shifted_double():
    # 2x - y = n has the single constant solution x = y = n
    for n in range(1, 11):
        cls = classify(parse_equation_text("2*x - y = %d" % n))
        v = decide_twovar(twovar_from_linear(cls))
        assert v.status == "PR_CONSTANT"
        assert v.witness == n
        assert v.witnesses == (n,)
        assert not v.infinitely_pr


def test_x_minus_y_infinitely_pr():
    cls = classify(parse_equation_text("x - y = 0"))
    v = decide_twovar(twovar_from_linear(cls))
    assert v.status == "PR_CONSTANT"
    assert v.witnesses == "all"
    assert v.infinitely_pr
    assert v.all_divisible_by_x_minus_y


def test_difference_of_squares():
    # x^2 - y^2 = (x-y)(x+y): diagonal vanishes identically
    v = decide_twovar(classify(parse_equation_text("x^2 - y^2 = 0")))
    assert v.infinitely_pr
    assert v.witnesses == "all"


def test_quadratic_with_two_roots():
    # x*y - 4 = 0: diagonal w^2 - 4, roots -2 and 2, only 2 lies in N
    v = decide_twovar(classify(parse_equation_text("x*y = 4")))
    assert v.status == "PR_CONSTANT"
    assert v.witnesses == (2,)
    assert v.witness == 2
    assert not v.infinitely_pr
    vz = decide_twovar(classify(parse_equation_text("x*y = 4")), domain="Z")
    assert set(vz.witnesses) == {-2, 2}
    assert vz.witness == 2  # least absolute value, nonnegative wins ties


def test_no_constant_solution():
    # x + y = 1 needs w = 1/2
    v = decide_twovar(twovar_from_linear(classify(parse_equation_text("x + y = 1"))))
    assert v.status == "NOT_PR"
    assert v.witnesses == ()


def test_zero_only_root_excluded_over_n():
    # x + y = 0: diagonal 2w, root 0 only; no N witness, Z witness 0
    lin = classify(parse_equation_text("x + y = 0"))
    v = decide_twovar(twovar_from_linear(lin))
    assert v.status == "NOT_PR"
    vz = decide_twovar(twovar_from_linear(lin), domain="Z")
    assert vz.status == "PR_CONSTANT" and vz.witness == 0


def test_system_intersects_witness_sets():
    # x*y = 4 (w = ±2) and x + y = 4 (w = 2): intersection {2}
    cls = classify(parse_equation_text("x*y = 4 ; x + y = 4"))
    v = decide_twovar(cls, domain="Z")
    assert v.witnesses == (2,)


def test_unsatisfiable_constant_equation():
    sys_bad = system(poly2({(0, 0): 5}))
    with pytest.raises(ValueError):
        decide_twovar(sys_bad)


def test_decide_infinitely_pr_helper():
    assert decide_infinitely_pr(classify(parse_equation_text("x^2 - y^2 = 0")))
    assert not decide_infinitely_pr(classify(parse_equation_text("x*y = 4")))


# --- oracle cross-checks ----------------------------------------------------


def division_by_x_minus_y_is_exact(p):
    """Oracle: substitute x := y and check the collapse is zero."""
    rem = {}
    for (ex, ey), c in p.terms.items():
        rem[ex + ey] = rem.get(ex + ey, Fraction(0)) + c
    return all(v == 0 for v in rem.values())


def random_poly2(rng, force_divisible):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        key = (rng.randint(0, 2), rng.randint(0, 2))
        terms[key] = terms.get(key, 0) + rng.randint(-6, 6)
    p = poly2(terms)
    if p.is_zero():
        p = poly2({(1, 0): 1, (0, 1): -1})
    if force_divisible:
        p = p * poly2({(1, 0): 1, (0, 1): -1})
    return p


def test_infinitely_pr_iff_every_diagonal_vanishes():
    rng = random.Random(401)
    for trial in range(100):
        divisible = trial % 2 == 0
        polys = [random_poly2(rng, divisible) for _ in range(rng.randint(1, 3))]
        sys_ = system(*polys)
        want = all(division_by_x_minus_y_is_exact(p) for p in polys)
        try:
            got = decide_twovar(sys_, domain="Z").infinitely_pr
        except ValueError:
            continue  # nonzero-constant equation: unsatisfiable, skip
        assert got == want, [p.terms for p in polys]


def test_witnesses_against_brute_scan():
    rng = random.Random(402)
    for _ in range(60):
        polys = [random_poly2(rng, False) for _ in range(rng.randint(1, 2))]
        sys_ = system(*polys)
        try:
            v = decide_twovar(sys_)
        except ValueError:
            continue
        brute = [
            w for w in range(1, 1001)
            if all(p.eval((w, w)) == 0 for p in polys)
        ]
        if v.witnesses == "all":
            assert brute == list(range(1, 1001))
        else:
            # roots of integer polynomials of these sizes stay well inside
            # the scanned range
            assert [w for w in v.witnesses if w <= 1000] == brute


def test_diagonal_polys_shape():
    ds = diagonal_polys(classify(parse_equation_text("x^2 - y = 0")))
    assert len(ds) == 1
    # w^2 - w
    assert list(ds[0].coeffs) == [0, -1, 1]
