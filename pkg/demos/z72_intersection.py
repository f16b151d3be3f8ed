"""In Z72, (4) cap (9) = (36) is weakly S-primary for S = {3, 9, 27} but not weakly primary."""

from wsprimary.corpus import FIXTURE_BUILDERS
from wsprimary.errors import NotDisjoint
from wsprimary.predicates import check, weakly_s_elements

d = FIXTURE_BUILDERS["INT-CE-Z72"]().data
print("N =", d["N"].short(), " K =", d["K"].short(), " S =", d["S"].short())
for name in ("N", "K", "NK"):
    try:
        v = check("weakly-s-primary", d[name], d["S"])
        print(f"{name:2s} weakly S-primary: {v.holds} (witness {v.witness})")
    except NotDisjoint:
        print(f"{name:2s} residual meets S")
w = check("weakly-primary", d["NK"])
print("N cap K weakly primary:", w.holds, "counterexample", w.counterexample)
print("weakly S-elements of N cap K:", sorted(weakly_s_elements(d["NK"], d["S"])))
