"""Polyexponential equations: diagonalization, dominance and modular
certificates, the constant-solution decision, and the PR verdict.

Frozen threshold values (t1, tstar, T) were computed by hand from the
defining inequalities before the search code existed.
"""

import random
from fractions import Fraction

import pytest

from prtoolkit.algebra import IncompleteFactorization, MultiPoly, UniPoly
from prtoolkit.equations import classify, parse_equation_text
from prtoolkit.polyexp import (
    ExpSum,
    PolyExpEquation,
    PolyExpTerm,
    bell_number,
    character_group_trivial,
    check_hypothesis,
    compute_constants,
    decide_constant_solution,
    decide_polyexp_pr,
    diagonal_eval,
    diagonalize,
    dominance_bound,
    enumerate_partitions,
    modular_certificate_search,
    mutually_coprime,
    polyexp_eval,
    solution_count_bound,
    verify_dominance,
    verify_modular,
)


def expsum(*terms):
    return ExpSum([(b, UniPoly([Fraction(c) for c in cs])) for b, cs in terms])


def parse_eq(text):
    eq = classify(parse_equation_text(text))
    assert isinstance(eq, PolyExpEquation)
    return eq


# --- ExpSum -------------------------------------------------------------------


def test_expsum_merges_and_clears_denominators():
    g = ExpSum([
        (2, UniPoly([Fraction(1, 2)])),
        (2, UniPoly([Fraction(1, 3)])),
        (3, UniPoly([Fraction(0)])),
    ])
    # 5/6 * 2^s scaled by 6: single term (2, [5])
    assert g.terms == ((2, UniPoly([Fraction(5)])),)


def test_expsum_eval():
    g = expsum((2, [0, 1]), (-3, [1]))
    # s*2^s + (-3)^s
    assert g.eval(3) == 3 * 8 - 27
    assert g.eval(-1) == Fraction(-1, 2) + Fraction(-1, 3)


def test_expsum_rejects_zero_base():
    with pytest.raises(ValueError):
        ExpSum([(0, UniPoly([Fraction(1)]))])


# --- diagonalization --------------------------------------------------------------


def test_diagonal_of_printed_example():
    eq = parse_eq(
        "(x*y - z + 2)*2^x*3^y + (x - y + 2*z + 2)*5^x*7^y"
        " + (x*y - z + 3)*11^x*13^y = 0"
    )
    g = diagonalize(eq)
    assert [(b, tuple(int(c) for c in p.coeffs)) for b, p in g.terms] == [
        (6, (2, -1, 1)),
        (35, (2, 2)),
        (143, (3, -1, 1)),
    ]


def test_diagonalize_multiplies_back():
    # g(s) equals the full equation evaluated on the constant tuple, up to
    # the positive constant that cleared denominators
    rng = random.Random(601)
    for _ in range(40):
        n_terms = rng.randint(1, 3)
        parts = []
        for _ in range(n_terms):
            base = rng.choice([b for b in range(-9, 10) if b != 0])
            coeffs = [rng.randint(-5, 5) for _ in range(rng.randint(1, 3))]
            if all(c == 0 for c in coeffs):
                coeffs[-1] = 1
            poly = " + ".join(
                "%d*x^%d" % (c, k) if k else "%d" % c
                for k, c in enumerate(coeffs)
            )
            parts.append("(%s)*(%d)^x" % (poly, base) if base < 0 else "(%s)*%d^x" % (poly, base))
        eq = parse_eq(" + ".join(parts) + " = 0")
        g = diagonalize(eq)
        s = rng.randint(-5, 5)
        direct = diagonal_eval(eq, s)
        scaled = g.eval(s)
        if direct == 0:
            assert scaled == 0
        else:
            ratio = scaled / direct
            assert ratio > 0 and ratio.denominator == 1


def test_polyexp_eval_point():
    eq = parse_eq("(x + 1)*2^x - 3^x = 0")
    # at x = 2: 3*4 - 9 = 3
    assert polyexp_eval(eq, [2]) == 3


# --- partitions and the character group --------------------------------------------


BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]


def bell_oracle(n):
    # Bell triangle recurrence, independent of the library implementation
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def test_bell_numbers():
    for m in range(11):
        assert bell_number(m) == BELL[m] == bell_oracle(m)


def test_enumerate_partitions_counts():
    for m in range(1, 8):
        parts = list(enumerate_partitions(m))
        assert len(parts) == BELL[m]
        # each partition covers every index exactly once
        for p in parts:
            seen = sorted(i for block in p for i in block)
            assert seen == list(range(m))


def test_enumerate_partitions_cap():
    with pytest.raises(ValueError):
        list(enumerate_partitions(13, cap=12))


def test_character_group_trivial_against_brute_force():
    # G(P) trivial <=> no nonzero z in a small box makes all in-block
    # character pairs agree
    rng = random.Random(602)
    for _ in range(60):
        n = rng.randint(1, 2)
        m = rng.randint(2, 3)
        chars = []
        for _ in range(m):
            vec = tuple(rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(n))
            chars.append(vec)
        if len(set(chars)) != m:
            continue
        partition = ((tuple(range(m)),))
        got = character_group_trivial(tuple(chars), partition)

        def agree(z):
            for block in partition:
                for i in block:
                    for j in block:
                        lhs = 1
                        rhs = 1
                        for a, e in zip(chars[i], z):
                            lhs *= Fraction(a) ** e
                        for a, e in zip(chars[j], z):
                            rhs *= Fraction(a) ** e
                        if lhs != rhs:
                            return False
            return True

        box = range(-5, 6)
        brute_nontrivial = any(
            agree(z)
            for z in __import__("itertools").product(box, repeat=n)
            if any(z)
        )
        assert got == (not brute_nontrivial), (chars, partition)


def test_mutually_coprime():
    ok, warn = mutually_coprime(((2, 3), (5, 7)))
    assert ok and not warn
    ok2, _ = mutually_coprime(((2, 3), (2, 5)))
    assert not ok2
    _, warn3 = mutually_coprime(((1, 3), (5, 7)))
    assert warn3  # unit entry defeats the coprimality heuristic


# --- constants and bounds ------------------------------------------------------------


def test_constants_on_printed_example():
    eq = parse_eq(
        "(x*y - z + 2)*2^x*3^y + (x - y + 2*z + 2)*5^x*7^y"
        " + (x*y - z + 3)*11^x*13^y = 0"
    )
    c = compute_constants(eq)
    # n = 2 exponential variables; degrees 2, 1, 2 give
    # A = C(4,2) + C(3,2) + C(4,2) = 6 + 3 + 6 = 15
    assert c.A == 15
    assert c.B == 15
    assert solution_count_bound(eq) == bell_number(3) * 2 ** (35 * 15**3)


def test_constant_polynomials_give_b_max_m_n():
    # with all P_i constant, A = m so B = max(m, n)
    eq = parse_eq("2^x + 3^x + 5^x = 0")
    c = compute_constants(eq)
    assert c.A == 3
    assert c.B == 3


# --- dominance certificates ------------------------------------------------------------


def test_dominance_two_pure_exponentials():
    g = expsum((2, [1]), (-3, [-1]))
    cert = dominance_bound(g)
    assert verify_dominance(g, cert)
    # |3|^s dwarfs 2^s fast: tiny window
    assert cert.s_plus <= 4 and cert.s_minus <= 4


def test_dominance_single_base():
    # (s^2 - 4) * 5^s: zeros exactly at the polynomial roots
    g = expsum((5, [-4, 0, 1]))
    cert = dominance_bound(g)
    assert verify_dominance(g, cert)
    assert cert.s_plus >= 2  # must cover the root at 2
    res = decide_constant_solution(g)
    assert res.status == "FOUND"
    assert set(res.solutions_in_window) == {-2, 2}
    assert res.witness == 2


def test_dominance_printed_example_thresholds():
    g = expsum((6, [2, -1, 1]), (35, [2, 2]), (143, [3, -1, 1]))
    cert = dominance_bound(g)
    assert cert.s_plus == 4
    assert cert.s_minus == 4
    plus = [b for b in cert.branches if b.direction == "plus"]
    minus = [b for b in cert.branches if b.direction == "minus"]
    assert plus[0].t1 == 4 and plus[0].tstar == 1 and plus[0].threshold == 4
    assert minus[0].t1 == 4 and minus[0].tstar == 1 and minus[0].threshold == 4
    # negation transform sends the three bases to +-(products of the others)
    assert tuple(sorted(abs(b) for b in minus[0].bases)) == (210, 858, 5005)
    assert verify_dominance(g, cert)


def test_dominance_zero_sum_rejected():
    with pytest.raises(ValueError):
        dominance_bound(ExpSum([]))


def test_verify_dominance_rejects_tampering():
    g = expsum((6, [2, -1, 1]), (35, [2, 2]), (143, [3, -1, 1]))
    cert = dominance_bound(g)
    import dataclasses
    smaller = dataclasses.replace(cert, s_plus=cert.s_plus - 2)
    assert not verify_dominance(g, smaller)
    other = expsum((6, [2, -1, 1]), (35, [2, 2]))
    assert not verify_dominance(other, cert)


def test_parity_split_with_sign_collision():
    # 2^s + (-2)^s vanishes at every odd s
    g = expsum((2, [1]), (-2, [1]))
    res = decide_constant_solution(g)
    assert res.status == "FOUND"
    assert res.witness == 1
    assert "odd" in res.families


def test_even_family():
    # 2^s - (-2)^s vanishes at every even s
    g = expsum((2, [1]), (-2, [-1]))
    res = decide_constant_solution(g)
    assert res.status == "FOUND"
    assert res.witness == 0
    assert "even" in res.families


def test_identically_zero_sum():
    g = ExpSum([(2, UniPoly([Fraction(1)])), (2, UniPoly([Fraction(-1)]))])
    assert g.is_zero()
    res = decide_constant_solution(g)
    assert res.status == "FOUND"
    assert res.witness == 0
    assert "all" in res.families


# --- modular certificates -----------------------------------------------------------------


def test_modular_certificate_examples():
    # 4^s + 2 is 3 or 1 mod 5 depending on parity
    g = expsum((4, [2])).terms  # ensure cleared ints
    g = expsum((4, [1]))
    g = ExpSum([(4, UniPoly([Fraction(1)])), (1, UniPoly([Fraction(2)]))])
    cert = modular_certificate_search(g)
    assert (cert.modulus, cert.period, cert.residues) == (5, 2, (3, 1))
    assert verify_modular(g, cert)
    # 2^s is 1 or 2 mod 3
    g2 = expsum((2, [1]))
    cert2 = modular_certificate_search(g2)
    assert (cert2.modulus, cert2.period, cert2.residues) == (3, 2, (1, 2))


def test_modular_period_includes_modulus_for_nonconstant_coeffs():
    # s * 2^s mod 5: base order 4, full period lcm(4, 5) = 20
    g = expsum((2, [0, 1]))
    cert = modular_certificate_search(g)
    if cert is not None:
        assert cert.period % cert.modulus == 0


def test_verify_modular_rejects_tampering():
    g = ExpSum([(4, UniPoly([Fraction(1)])), (1, UniPoly([Fraction(2)]))])
    cert = modular_certificate_search(g)
    import dataclasses
    bad = dataclasses.replace(cert, residues=(3, 2))
    assert not verify_modular(g, bad)
    bad2 = dataclasses.replace(cert, period=4)
    assert not verify_modular(g, bad2)


def test_modular_requires_coprimality():
    # base 6 rules out moduli sharing a factor with 6
    g = expsum((6, [1]), (1, [5]))
    cert = modular_certificate_search(g, 50)
    if cert is not None:
        from math import gcd
        assert gcd(cert.modulus, 6) == 1


# --- the decision -----------------------------------------------------------------


def test_decide_against_brute_force():
    rng = random.Random(603)
    for _ in range(150):
        m = rng.randint(1, 3)
        terms = []
        for _ in range(m):
            base = rng.choice([b for b in range(-13, 14) if b != 0])
            deg = rng.randint(0, 3)
            coeffs = [rng.randint(-9, 9) for _ in range(deg + 1)]
            if all(c == 0 for c in coeffs):
                coeffs[0] = 1
            terms.append((base, UniPoly([Fraction(c) for c in coeffs])))
        g = ExpSum(terms)
        res = decide_constant_solution(g)
        brute = [] if g.is_zero() else [s for s in range(-64, 65) if g.eval(s) == 0]
        if g.is_zero():
            assert res.status == "FOUND"
        elif res.status == "NONE":
            assert brute == []
        else:
            assert g.eval(res.witness) == 0
        if res.dominance is not None:
            assert verify_dominance(g, res.dominance)
        if res.modular is not None:
            assert verify_modular(g, res.modular)


def test_user_bound_gives_unknown_not_none():
    g = expsum((2, [1]), (3, [1]))  # never zero, but we only scan [-3, 3]
    res = decide_constant_solution(g, user_bound=3)
    assert res.status == "UNKNOWN"
    assert res.window == (-3, 3)
    assert res.dominance is None


def test_full_verdict_not_pr():
    eq = parse_eq(
        "(x*y - z + 2)*2^x*3^y + (x - y + 2*z + 2)*5^x*7^y"
        " + (x*y - z + 3)*11^x*13^y = 0"
    )
    v = decide_polyexp_pr(eq)
    assert v.status == "NOT_PR"
    assert v.hypothesis.trivial_for_all
    assert v.result.status == "NONE"


def test_full_verdict_pr_constant():
    v = decide_polyexp_pr(parse_eq("(x - 3)*2^x = 0"))
    assert v.status == "PR_CONSTANT"
    assert v.result.witness == 3


def test_hypothesis_failure_gives_unknown():
    # characters 2 and -2 agree at every even z, so the joint block has a
    # nontrivial G(P); the diagonal (s^2+3)*2^s + (-2)^s never vanishes,
    # which would mean NOT_PR if the hypothesis held
    v = decide_polyexp_pr(parse_eq("(x^2 + 3)*2^x + (-2)^x = 0"))
    assert v.status == "UNKNOWN"
    assert not v.hypothesis.trivial_for_all
    assert v.hypothesis.failing_partition is not None


def test_found_witness_beats_hypothesis_failure():
    # same character collision, but the diagonal (s^2-1)*2^s + (-2)^s
    # vanishes at s = 0: a constant solution proves PR outright
    v = decide_polyexp_pr(parse_eq("(x^2 - 1)*2^x + (-2)^x = 0"))
    assert v.status == "PR_CONSTANT"
    assert v.result.witness == 0


def test_callable_f_requires_user_bound():
    def f(s):
        # factorial-like positive weight, defeats closed-form dominance
        out = 1
        for k in range(1, abs(s) + 1):
            out *= k
        return out

    term = PolyExpTerm(
        poly=MultiPoly.constant(("x", "t"), Fraction(1)),
        f=f,
        characters=(2,),
    )
    eq = PolyExpEquation(
        variables=("x", "t"), exp_vars=("x",), param_var="t", terms=(term,)
    )
    with pytest.raises(ValueError):
        decide_polyexp_pr(eq)
    v = decide_polyexp_pr(eq, user_bound=5)
    assert v.status in ("PR_CONSTANT", "UNKNOWN")


def test_incomplete_factorization_gives_unknown():
    p = 2_147_483_647
    term = PolyExpTerm(
        poly=MultiPoly.constant(("x",), Fraction(1)),
        f=None,
        characters=(p * p,),
    )
    term2 = PolyExpTerm(
        poly=MultiPoly.constant(("x",), Fraction(1)),
        f=None,
        characters=(3,),
    )
    eq = PolyExpEquation(variables=("x",), exp_vars=("x",), param_var=None, terms=(term, term2))
    v = decide_polyexp_pr(eq, partition_cap=12)
    assert v.status in ("UNKNOWN", "NOT_PR")
