"""
Isoclinic braces and their fiber product
========================================
"""

from skewbrace.braces import trivial_brace
from skewbrace.catalog import catalog_group
from skewbrace.isoclinism import embed_W, fiber_product, find_isoclinism, isoclinism_classes
from skewbrace.enumeration import enumerate_all

# the trivial braces on D8 and Q8 are isoclinic, like the groups themselves
D = trivial_brace(catalog_group("D8"))
Q = trivial_brace(catalog_group("Q8"))
w = find_isoclinism(D, Q, 1)
print("xi on A/Ann(A):", w.xi)

fp = fiber_product(D, Q, w)
print("fiber product order", fp.C.order, "with |N1| =", len(fp.N1), "|N2| =", len(fp.N2))

emb = embed_W(D, Q, w)
print("both embed in a brace of order", emb.W.order)

# isoclinism classes among all 47 braces of order 8
braces = [B for _, B in enumerate_all(8)]
classes = isoclinism_classes(braces, 1)
print(len(classes), "classes, sizes", sorted((len(c) for c in classes), reverse=True))
