"""
Ordered complexes, subdivision and the Moebius function
=======================================================

"""

from stableorder import complex as cx

# a path a - b - c and the boundary of a triangle
path = cx.validate([("a",), ("b",), ("c",), ("a", "b"), ("b", "c")])
circle = cx.validate([("a",), ("b",), ("c",), ("a", "b"), ("b", "c"), ("a", "c")])
print("rho(a, c) on the path:", cx.rho(path, ("a",), ("c",)))

###############################################################################
# Each subdivision names its vertices by the simplices they subdivide.
# The map back sends a barycentre to the highest (delta) or lowest
# (delta') vertex; Delta is the composite of the two.
dL, phi = cx.subdivide_delta(path)
print("delta vertices:", dL.vertices)
print("phi:", phi.vmap)
DL, Phi = cx.subdivide_Delta(path)
print("Delta has", len(DL.of_dim(1)), "edges")

###############################################################################
# Distances halve under Phi, up to rounding.
for u in DL.vertices[:4]:
    for v in DL.vertices[-4:]:
        d = cx.rho(DL, (u,), (v,))
        assert cx.rho(path, (Phi.vmap[u],), (Phi.vmap[v],)) <= -(-d // 2)

###############################################################################
# mu(x) = 1 - chi(link of x), with the empty simplex linking to the whole
# complex.  Summing mu over x with x & y = z gives 1 when y = z, else 0.
for x, m in cx.mu_table(circle).items():
    print(f"mu{x} = {m}")
print(all(cx.moebius_identity(circle, y, z) == (y == z) for y in circle.diamond for z in circle.diamond))
