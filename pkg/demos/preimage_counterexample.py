"""A preimage under a monomorphism need not stay weakly S-primary.

Take N' = (2) in Z6 and the inclusion of N' itself.  The preimage is the
whole source, so its residual is the whole ring and meets every S.  With
the extra disjointness hypothesis the transfer goes through.
"""

from wsprimary.errors import NotDisjoint
from wsprimary.modules import hom_transport, regular, submodule_as_module, submodule_span
from wsprimary.predicates import check
from wsprimary.rings import mult_set_closure, zn

M = regular(zn(6))
Np = submodule_span(M, [2])
S = mult_set_closure(M.ring, [1])
print("N' =", Np.short(), "weakly S-primary:", check("weakly-s-primary", Np, S).holds)

src, inc = submodule_as_module(Np)
pre = hom_transport(inc, Np, "preimage")
print("preimage is proper:", pre.is_proper)
try:
    check("weakly-s-primary", pre, S)
except NotDisjoint:
    print("preimage: residual meets S, so it cannot be weakly S-primary")

# a monomorphism whose preimage keeps a disjoint residual
src, inc = submodule_as_module(submodule_span(M, [3]))
pre = hom_transport(inc, Np, "preimage")
print("preimage along (3) -> Z6:", pre.short(), "weakly S-primary:",
      check("weakly-s-primary", pre, S).holds)
