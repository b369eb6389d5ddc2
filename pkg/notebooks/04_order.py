"""
Degree on filtered groups and order on finite models
====================================================

"""

from stableorder import invariant as inv

###############################################################################
# Z/4 filtered by P_1 = Z/4, P_2 = {0, 2}.  The identity into Z/4 has degree
# 2; the parity map into Z never dies under differences.
P = inv.FiltAbGroup([4], [[(1,)], [(2,)]])
ident = {x: x for x in P.elements}
print(inv.deg_exact(P, inv.Cyclic((4,)), ident))
Q = inv.FiltAbGroup([2], [[(1,)]])
parity = {(0,): (0,), (1,): (1,)}
print(inv.deg_exact(Q, inv.Cyclic((0,)), parity))

###############################################################################
# On all maps {0,1} -> {0,1}, the indicator of one map has order 2.  The
# factorization test and the theta test give the same answer, and the
# violating combination at r = 1 is the alternating sum of all four maps.
M = inv.FiniteModel(range(2), range(2))
Z2 = inv.Cyclic((2,))
f = {a: (int(a == (0, 0)),) for a in M.maps}
print(inv.order(M, Z2, f), inv.order(M, Z2, f, inv.order_via_theta))
print(inv.order_violation(M, Z2, f, 1))
