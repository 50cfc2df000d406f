"""Two-variable polynomial systems: PR and infinitely PR.

P(x, y) = 0 is partition regular iff it has a constant solution
P(t, t) = 0, and infinitely so iff (x - y) divides P, in which case
every diagonal pair solves it.
"""

from prtoolkit.diophantine import decide_twovar, diagonal_polys, twovar_from_linear
from prtoolkit.equations import classify, parse_equation_text


def show(text, domain="N"):
    cls = classify(parse_equation_text(text))
    if hasattr(cls, "matrix"):
        cls = twovar_from_linear(cls)
    v = decide_twovar(cls, domain=domain)
    print(f"{text!r} over {domain}: {v.status}, infinitely_pr={v.infinitely_pr}, "
          f"witnesses={v.witnesses}")


show("x - y = 0")             # infinitely PR
show("x^2 - y^2 = 0")         # (x-y)(x+y): still infinitely PR
show("x*y = 4")               # only t = 2 on the diagonal
show("x*y = 4", domain="Z")   # t = -2 joins
show("x + y = 1")             # diagonal 2t = 1 has no integer root
show("x*y = 4 ; x + y = 4")   # intersection of two diagonals

# the diagonal is an ordinary univariate polynomial
cls = classify(parse_equation_text("x^2 - y = 0"))
print("diagonal of x^2 - y:", [str(c) for c in diagonal_polys(cls)[0].coeffs])
