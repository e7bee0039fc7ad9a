"""
The semidirect product Lambda_A
===============================
"""

from skewbrace.enumeration import enumerate_all
from skewbrace.catalog import identify_group
from skewbrace.groups import lower_central
from skewbrace.semidirect import build_lambda_group, verify_gamma_decomposition

for tag, A in enumerate_all(6):
    L = build_lambda_group(A).group
    sizes = [len(lower_central(L, n)) for n in (1, 2, 3)]
    print(tag, "->", identify_group(A.circ), "|Lambda| =", L.order, "lower central", sizes,
          "split:", all(verify_gamma_decomposition(A, n) for n in (1, 2, 3)))
