"""
Raising theta by subdivision and modification
=============================================

On an edge K with E the minimal circle, an ensemble U with theta = 1 and
eta = 2 is carried to L = Delta^c K.  The modified ensemble M(U) has
theta >= 2 while its restriction to L still agrees with U pulled back.
"""

from stableorder import complex as cx
from stableorder import modify as md
from stableorder.freealg import GroupRingElt, aug_degree

K = cx.Polyhedron(cx.subtuples((0, 1)))
e = lambda k: GroupRingElt.of(md.EXP, md.EXP.make({(0, 1): k}))
U = e(2) - e(1) * 2 + e(0)
print("theta(U) =", md.ens_theta(U, 2), " eta(U) =", aug_degree(U, 3))

###############################################################################
# Semantic constants keep the subdivision small (c = 2: 16 edges).
const = md.Constants(2, 4, 8, 12, 20, 2)
mod = md.Modifier(K, const, md.Pipeline(1))
MU = mod.M(U)
print("L has", len(mod.L), "simplices; M(U) has", len(MU.terms), "terms")
print("theta(M(U)) =", md.ens_theta(MU, 2), " eta(M(U)) =", aug_degree(MU, 3))

###############################################################################
# With the strict constants, L has 2^15 + 1 simplices.  M(U) is then only
# queried lazily: each query touches the patches near T.  An empty
# answer means the restriction to T is zero.
strict = md.Modifier(K, md.Constants.strict(), md.Pipeline(1))
T = strict.L.simplices[:2]
print(len(strict.L), strict.query_pruned(U, T))

###############################################################################
# The whole loop, twice, on the semantic constants.
L, V, history = md.main_procedure(K, U, 2, const)
print(history, "theta =", md.ens_theta(V, 2))
