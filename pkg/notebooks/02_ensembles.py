"""
Ensembles of sections and their two degrees
===========================================

Sections of the free simplicial group on the minimal 2-sphere over a
triangle, formal combinations of them, and the two measures: eta (Magnus
degree of the full restriction) and theta (smallest set of simplices that
sees the combination).
"""

import random

from stableorder import complex as cx
from stableorder import freealg as fa
from stableorder.simpset import sphere

rng = random.Random(1)
L = cx.Polyhedron(cx.subtuples((0, 1, 2)))
G = fa.FreeSimplicialGroup(sphere(2))
SG = fa.SectionGroup(L, G)


def nontrivial():
    # many random sections are the identity on a triangle; draw again
    while True:
        u = fa.random_section(L, G, rng)
        if u != SG.one:
            return u


v = nontrivial()
w = nontrivial()
while w == v:
    w = nontrivial()
print("v at the 2-simplex:", v.table[(0, 1, 2)])
print("w at the 2-simplex:", w.table[(0, 1, 2)])

###############################################################################
# A single section has theta = eta = 0; a difference has theta = 1; the
# product of two augmentation-ideal elements has eta >= 2.
one = fa.GroupRingElt.of(SG, v)
diff = fa.GroupRingElt.of(SG, v) - fa.GroupRingElt.of(SG, w)
prod = fa.delta(SG, v) * fa.delta(SG, w)
for name, V in (("<v>", one), ("<v>-<w>", diff), ("(<v>-1)(<w>-1)", prod)):
    print(f"{name:>16}: theta={fa.theta(V, 3)}  eta={fa.eta(V, 4)}")

###############################################################################
# theta never exceeds eta.  Sampled generators of the s-th power of the
# augmentation ideal illustrate it.
# Products often collapse to zero, which shows up as inf for both.
for s in range(4):
    V = fa.Is_generator_sample(SG, s, rng)
    print(s, fa.theta(V, 7), fa.eta(V, 4))
