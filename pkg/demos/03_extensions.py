"""
Annihilator extensions and the transgression map
================================================

Build every extension of the trivial brace on V4 by Z/2 from a generating
set of H^2, and compare kernel and image of the transgression.
"""

from skewbrace.braces import trivial_brace
from skewbrace.catalog import catalog_group, cyclic, identify_group
from skewbrace.cohomology import annihilator_extension, h2_group, transgression

K = trivial_brace(catalog_group("C2xC2"))
H2 = h2_group(K, cyclic(2))
print("H^2 has order", H2.order, "generator orders", H2.generator_orders)

for p in H2.generators:
    ext = annihilator_extension(p)
    G = ext.G
    t = transgression(G, frozenset(ext.i))
    print(identify_group(G.dot), identify_group(G.circ), "image", t.image_order, "kernel", t.kernel_order)
