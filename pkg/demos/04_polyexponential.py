"""Polyexponential equations: diagonalize, bound, certify.

Terms P_i(x) * a_i^x are collapsed onto the diagonal x_1 = ... = x_n = s,
producing a single exponential sum g(s).  Zeros of g are confined to a
finite window by a dominance certificate, or ruled out entirely by a
modular one.
"""

from prtoolkit.equations import classify, parse_equation_text
from prtoolkit.polyexp import (
    compute_constants,
    decide_constant_solution,
    decide_polyexp_pr,
    diagonalize,
    modular_certificate_search,
    solution_count_bound,
    verify_modular,
)

eq = classify(parse_equation_text(
    "(x*y - z + 2)*2^x*3^y + (x - y + 2*z + 2)*5^x*7^y + (x*y - z + 3)*11^x*13^y = 0"
))
g = diagonalize(eq)
print("diagonal:", [(b, [str(c) for c in p.coeffs]) for b, p in g.terms])

res = decide_constant_solution(g)
print("constant solutions:", res.status)
print("  window:", res.window)
print("  dominance thresholds: s+ =", res.dominance.s_plus, " s- =", res.dominance.s_minus)

verdict = decide_polyexp_pr(eq)
print("verdict:", verdict.status)

# a modular certificate is stronger when it exists: 4^s + 2 is never
# zero mod 5, whatever s is
g2 = diagonalize(classify(parse_equation_text("4^x + 2 = 0")))
cert = modular_certificate_search(g2, 50)
print("\n4^s + 2: modulus", cert.modulus, "residues", cert.residues,
      "verified:", verify_modular(g2, cert))

# solution-count constants for the three-term example
c = compute_constants(eq)
print("\nA =", c.A, " B =", c.B)
print("count bound has", solution_count_bound(eq).bit_length(), "bits")

# hypothesis failure: 2 and -2 agree at every even exponent, so the
# character group is nontrivial and the count theorem does not apply
bad = classify(parse_equation_text("(x^2 + 3)*2^x + (-2)^x = 0"))
v = decide_polyexp_pr(bad)
print("\n(x^2+3)*2^x + (-2)^x:", v.status, "-", "; ".join(v.notes))
