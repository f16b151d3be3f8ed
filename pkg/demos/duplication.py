"""Transfer along the amalgamated duplication of Z12 along J = (6)."""

from wsprimary.constructions import dup_bar, dup_join, dup_multset_join, make_duplication
from wsprimary.modules import regular, submodule_span
from wsprimary.predicates import check
from wsprimary.rings import ideal_span, mult_set_closure, zn

R = zn(12)
M = regular(R)
J = ideal_span(R, [6])
ctx = make_duplication(M, J)
print("duplicated ring order:", ctx.ring.order, " module order:", ctx.module.order)

S = mult_set_closure(R, [1])
Sd = dup_multset_join(ctx, S)
for g in (2, 3, 4):
    N = submodule_span(M, [g])
    base = check("weakly-s-primary", N, S).holds
    lifted = check("weakly-s-primary", dup_join(ctx, N), Sd).holds
    print(f"N = ({g}): in M {base}, N join J in the duplication {lifted}, "
          f"bar size {len(dup_bar(ctx, N))}")
