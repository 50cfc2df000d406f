"""Decide partition regularity for linear systems.

A homogeneous system is partition regular over the positive integers
exactly when its coefficient matrix satisfies the columns condition;
non-homogeneous systems reduce to constant solutions.
"""

from prtoolkit.equations import classify, parse_equation_text
from prtoolkit.rado import columns_condition, decide_linear, verify_columns_condition

for text in (
    "x + y = z",            # Schur: PR, no constant solution in N
    "x + y = 3*z",          # fails the columns condition
    "2*x - y = 7",          # shifted: x = y = 7 works
    "x - y = 1",            # no constant solution, not PR
    "x + y = z ; 2*x = y",  # a genuine system
):
    system = classify(parse_equation_text(text))
    verdict = decide_linear(system)
    print(f"{text!r}: {verdict.status}")
    if verdict.witness is not None:
        print(f"  constant witness: x_i = {verdict.witness}")
    if verdict.partition is not None:
        ok = verify_columns_condition(system.matrix, verdict.partition)
        print(f"  column partition {verdict.partition} (re-verified: {ok})")

# the columns condition on the raw matrix, without the decision wrapper
schur = classify(parse_equation_text("x + y = z"))
print("\ncolumns condition blocks for Schur:", columns_condition(schur.matrix))
