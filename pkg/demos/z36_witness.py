"""In Z36 the ideal (6) is weakly S-primary for S = {3, 9, 27}, with witness 3."""

from wsprimary import oracle
from wsprimary.modules import regular, submodule_span
from wsprimary.predicates import check
from wsprimary.rings import mult_set_closure, zn

M = regular(zn(36))
N = submodule_span(M, [6])
S = mult_set_closure(M.ring, [3])
print("N =", N.short(), " S =", S.short())

for kind in ("weakly-primary", "weakly-s-primary", "s-primary"):
    v = check(kind, N, S)
    print(f"{kind:18s} holds={v.holds} witness={v.witness} counterexample={v.counterexample}")

# the same answer from the brute-force oracle
print("oracle:", oracle.naive_check("weakly-s-primary", N.members, M, S.members))
