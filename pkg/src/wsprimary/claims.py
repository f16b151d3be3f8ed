"""Executable claim registry.

Each claim pairs an instance family with an ``evaluate(ev, inst)``
function returning

* ``None`` when the instance does not meet the hypothesis,
* ``True`` when the conclusion holds,
* a ``dict`` describing the violation otherwise.

All predicate decisions go through an :class:`Evaluator`, so a reported
violation can be replayed with the naive oracle substituted for the fast
path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable

import numpy as np

from . import oracle
from .constructions import (
    amalg_multset,
    amalg_submodule,
    dup_bar,
    dup_join,
    dup_multset_bar,
    dup_multset_join,
    homog_ideal,
    idealization_multset,
    lemma_ha_probe,
    radical_identity_holds,
)
from .corpus import Instance, InstanceCorpus
from .errors import NotDisjoint, NotProper, UnknownClaim
from .modules import (
    FiniteModule,
    Submodule,
    ideal_action,
    localize,
    m_radical,
    quotient,
    regular,
    residual_by_submodule,
    residual_in_module,
    residual_in_ring,
    submodule_as_module,
    submodule_intersection,
    submodule_product,
    submodule_sum,
    zero_divisors_on,
)
from .predicates import (
    PRIME,
    PRIMARY,
    S_PRIMARY,
    S_PRIME,
    W_PRIMARY,
    W_S_PRIMARY,
    W_S_PRIME,
    PredicateKind,
    char_conditions,
    check,
)
from .rings import Ideal, MultClosedSet, radical_mask, saturate, special_subset, zero_ideal


# ---------------------------------------------------------------------------
# evaluators


class Evaluator:
    """Predicate backend used by claim checkers (fast, cached)."""

    naive = False

    def holds(self, kind, N: Submodule, S: MultClosedSet | None = None) -> bool:
        kind = PredicateKind.parse(kind)
        try:
            return check(kind, N, S).holds
        except (NotDisjoint, NotProper):
            return False

    def status(self, kind, N: Submodule, S: MultClosedSet | None = None):
        kind = PredicateKind.parse(kind)
        try:
            return check(kind, N, S).holds
        except NotDisjoint:
            return "NotDisjoint"
        except NotProper:
            return "NotProper"

    # shorthands
    def wsp(self, N, S):
        return self.holds(W_S_PRIMARY, N, S)

    def sp(self, N, S):
        return self.holds(S_PRIMARY, N, S)

    def wp(self, N):
        return self.holds(W_PRIMARY, N)

    def ideal_holds(self, kind, I: Ideal, S: MultClosedSet | None = None) -> bool:
        return self.holds(kind, ideal_submodule(I), S)


class NaiveEvaluator(Evaluator):
    """Same interface, answered by the cache-free oracle."""

    naive = True

    def status(self, kind, N, S=None):
        kind = PredicateKind.parse(kind)
        r = oracle.naive_check(kind.value, N.members, N.module,
                               S.members if (S is not None and kind.uses_s) else None)
        if isinstance(r, str):
            return r
        return r[0]

    def holds(self, kind, N, S=None):
        return self.status(kind, N, S) is True


FAST = Evaluator()
NAIVE = NaiveEvaluator()


@lru_cache(maxsize=None)
def _regular(R):
    return regular(R)


def ideal_submodule(I: Ideal) -> Submodule:
    return Submodule(_regular(I.ring), I.members)


def disjoint(N: Submodule, S: MultClosedSet) -> bool:
    return not (residual_in_ring(N).mask & S.mask).any()


def meets(N: Submodule, S: MultClosedSet) -> bool:
    return not disjoint(N, S)


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Claim:
    claim_id: str
    description: str
    anchor: str
    style: str          # "implication" | "equivalence" | "fixture"
    family: str
    evaluate: Callable
    describe: Callable

    def to_dict(self) -> dict:
        return {"claim_id": self.claim_id, "description": self.description,
                "anchor": self.anchor, "style": self.style, "family": self.family}


REGISTRY: dict[str, Claim] = {}


def _describe_default(inst) -> dict:
    if hasattr(inst, "describe"):
        return inst.describe()
    if isinstance(inst, tuple):
        out = {}
        for i, x in enumerate(inst):
            out[f"arg{i}"] = _short(x)
        return out
    return {"instance": _short(inst)}


def _short(x):
    if isinstance(x, (Submodule, Ideal, MultClosedSet)):
        return x.short()
    if hasattr(x, "id"):
        return x.id
    if hasattr(x, "describe"):
        return x.describe()
    return repr(x)


def claim(claim_id, family, anchor, description, style="implication", describe=None):
    def deco(fn):
        REGISTRY[claim_id] = Claim(claim_id, description, anchor, style, family, fn,
                                   describe or _describe_default)
        return fn
    return deco


def claims() -> list[Claim]:
    return [REGISTRY[k] for k in sorted(REGISTRY)]


def get_claim(claim_id: str) -> Claim:
    try:
        return REGISTRY[claim_id]
    except KeyError:
        raise UnknownClaim(f"unknown claim {claim_id!r}") from None


# ---------------------------------------------------------------------------
# families


def family(corpus: InstanceCorpus, name: str) -> list:
    cache = corpus.__dict__.setdefault("_families", {})
    if name not in cache:
        cache[name] = list(FAMILIES[name](corpus))
    return cache[name]


def _fam_base(c):
    return c.base


def _fam_base36(c):
    return c.base_upto(36)


def _fam_faithful_mult_ideals(c):
    for M in c.modules:
        pr = M.properties
        if not (pr.faithful and pr.multiplication):
            continue
        for I in M.ring.ideals:
            for S in c.multsets(M.ring):
                yield (M, I, S)


def _small_modules(c):
    return [M for M in c.modules if M.order <= c.params.hom_max_order]


def _fam_epi(c):
    for hs in c.epimorphisms:
        for N in hs.h.source.submodules:
            for S in c.multsets(hs.h.source.ring):
                yield (hs, N, S)


def _fam_mono(c):
    for hs in c.monomorphisms:
        for N in hs.h.target.submodules:
            for S in c.multsets(hs.h.source.ring):
                yield (hs, N, S)


def _fam_chains(c):
    for M in _small_modules(c):
        subs = M.submodules
        for K in subs:
            for N in subs:
                if K <= N:
                    for S in c.multsets(M.ring):
                        yield (M, K, N, S)


def _fam_pairs(c):
    for M in _small_modules(c):
        subs = M.submodules
        for N in subs:
            for K in subs:
                for S in c.multsets(M.ring):
                    yield (M, N, K, S)


def _fam_products(c):
    for A, B, P in c.products:
        sa = _singleton_multsets(c, A.ring)
        sb = _singleton_multsets(c, B.ring)
        na = [N for N in A.submodules if not N.is_zero]
        nb = [N for N in B.submodules if not N.is_zero]
        for N in na:
            for Np in nb:
                for S in sa:
                    for Sp in sb:
                        yield (A, B, P, N, Np, S, Sp)


def _singleton_multsets(c, R):
    cache = c.__dict__.setdefault("_singleton_multsets", {})
    if R.id not in cache:
        from .rings import mult_set_closure
        seen = {}
        for x in range(R.order):
            S = mult_set_closure(R, [x])
            seen.setdefault(S.members, S)
        cache[R.id] = sorted(seen.values(), key=lambda S: (len(S), S.members))
    return cache[R.id]


def _fam_triples(c):
    return c.triples


def _fam_idealization(c):
    for R, M, T in c.idealizations:
        for I in R.ideals:
            IM = ideal_action(I, M)
            for N in M.submodules:
                if not IM <= N:
                    continue
                for K in M.submodules:
                    if not K <= N:
                        continue
                    for S in _singleton_multsets(c, R):
                        yield (R, M, T, I, N, K, S)


def _fam_homogeneous(c):
    for R, M, T in c.idealizations:
        for I in R.ideals:
            IM = ideal_action(I, M)
            for N in M.submodules:
                if IM <= N:
                    yield (R, M, I, N)


def _fam_amalg_contexts(c):
    return c.amalgamations


def _fam_amalg_first(c):
    for ctx in c.amalgamations:
        for N in ctx.M1.submodules:
            for S in _singleton_multsets(c, ctx.R1):
                yield (ctx, N, S)


def _fam_amalg_first_plain(c):
    for ctx in c.amalgamations:
        for N in ctx.M1.submodules:
            yield (ctx, N)


def _fam_amalg_second(c):
    for ctx in c.amalgamations:
        for N in ctx.M2.submodules:
            for S in _singleton_multsets(c, ctx.R2):
                yield (ctx, N, S)


def _fam_amalg_second_plain(c):
    for ctx in c.amalgamations:
        for N in ctx.M2.submodules:
            yield (ctx, N)


def _fam_dup(c):
    for ctx in c.amalgamations:
        if not ctx.is_duplication:
            continue
        for N in ctx.M1.submodules:
            for S in _singleton_multsets(c, ctx.R1):
                yield (ctx, N, S)


def _fam_mult_modules(c):
    for M in c.modules:
        if M.properties.multiplication:
            for N in M.submodules:
                yield (M, N)


def _fam_modules(c):
    for M in c.modules:
        for S in c.multsets(M.ring):
            yield (M, S)


def _fam_e14_sweep(c):
    out = []
    for pp, qq in ((2, 3), (3, 2), (2, 5), (5, 2), (3, 5)):
        for n in range(2, 7):
            for m in range(2, 7):
                order = pp ** n * qq ** m
                if order > c.params.ring_cap or not c.params.allows(order):
                    continue
                for k in range(1, n):
                    for t in range(1, m):
                        out.append((pp, qq, n, m, k, t))
    return out


def _fixture_family(name):
    def gen(c):
        fx = c.fixtures[name]
        return [fx]
    return gen


FAMILIES = {
    "base": _fam_base,
    "base<=36": _fam_base36,
    "faithful-mult-ideals": _fam_faithful_mult_ideals,
    "epimorphisms": _fam_epi,
    "monomorphisms": _fam_mono,
    "chains": _fam_chains,
    "pairs": _fam_pairs,
    "products": _fam_products,
    "triples": _fam_triples,
    "idealization": _fam_idealization,
    "homogeneous": _fam_homogeneous,
    "amalg-contexts": _fam_amalg_contexts,
    "amalg-first": _fam_amalg_first,
    "amalg-first-plain": _fam_amalg_first_plain,
    "amalg-second": _fam_amalg_second,
    "amalg-second-plain": _fam_amalg_second_plain,
    "duplication": _fam_dup,
    "mult-modules": _fam_mult_modules,
    "modules": _fam_modules,
    "e14-sweep": _fam_e14_sweep,
}
for _name in ("E1-1", "E1-2", "E1-3", "E1-4", "INT-CE-Z72", "EX11", "NM-CE", "QUOT-CE", "EX2"):
    FAMILIES[f"fixture:{_name}"] = _fixture_family(_name)


def _fail(**kw) -> dict:
    return {k: (_short(v) if not isinstance(v, (str, int, float, bool, list, dict, tuple, type(None)))
                else v) for k, v in kw.items()}


# ---------------------------------------------------------------------------
# hierarchy and characterisations


@claim("HIER", "base", "implication lattice of the seven predicates",
       "prime => primary => weakly primary; S-prime => S-primary => weakly S-primary; "
       "S-prime => weakly S-prime => weakly S-primary; weakly primary with disjoint residual => "
       "weakly S-primary, with equality when S consists of units")
def _hier(ev, inst: Instance):
    N, S = inst.N, inst.S
    v = {k: ev.holds(k, N, S) for k in PredicateKind}
    edges = [(PRIME, PRIMARY), (PRIMARY, W_PRIMARY), (S_PRIME, S_PRIMARY), (S_PRIMARY, W_S_PRIMARY),
             (S_PRIME, W_S_PRIME), (W_S_PRIME, W_S_PRIMARY)]
    for a, b in edges:
        if v[a] and not v[b]:
            return _fail(edge=f"{a.value} => {b.value}")
    dis = disjoint(N, S)
    if v[W_PRIMARY] and dis and not v[W_S_PRIMARY]:
        return _fail(edge="weakly-primary and disjoint => weakly-s-primary")
    if set(S.members) <= N.module.ring.units and v[W_PRIMARY] != v[W_S_PRIMARY]:
        return _fail(edge="S inside the units: weakly-primary <=> weakly-s-primary")
    return True


@claim("CHAR-EQ", "base<=36", "characterisation theorem, items (1)-(5)",
       "with (N:M) disjoint from S the five conditions are equivalent", style="equivalence")
def _char_eq(ev, inst: Instance):
    N, S = inst.N, inst.S
    if not disjoint(N, S):
        return None
    c = char_conditions(N, S, fm=False)
    w = ev.wsp(N, S)
    vals = {"c1": w, "c2": c.c2, "c3": c.c3, "c4": c.c4, "c5": c.c5}
    if len(set(vals.values())) != 1:
        return _fail(values=vals)
    return True


@claim("FM", "base", "characterisation via products of submodules",
       "on faithful multiplication modules: weakly S-primary <=> disjoint and "
       "0 != KL <= N forces sK <= M-rad(N) or sL <= N", style="equivalence")
def _fm(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    pr = M.properties
    if not (pr.faithful and pr.multiplication):
        return None
    w = ev.wsp(N, S)
    rhs = disjoint(N, S) and bool(char_conditions(N, S, fm=True).fm)
    if w != rhs:
        return _fail(weakly_s_primary=w, kl_condition=rhs)
    return True


# ---------------------------------------------------------------------------
# residual ideal transfer


@claim("NM-1", "base", "residual transfer, item (1)",
       "N weakly S-primary, Ann(K)=0 and (N:K) disjoint from S => (N:K) is a weakly S-primary ideal")
def _nm1(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    if not ev.wsp(N, S):
        return None
    tested = False
    for K in M.submodules:
        ann = residual_by_submodule(M.zero_sub, K)
        if len(ann) != 1:
            continue
        I = residual_by_submodule(N, K)
        if (I.mask & S.mask).any():
            continue
        tested = True
        if not ev.ideal_holds(W_S_PRIMARY, I, S):
            return _fail(K=K.short(), residual=I.short())
    return True if tested else None


@claim("NM-2", "base", "residual transfer, item (2)",
       "M multiplication and (N:M) a weakly S-primary ideal => N weakly S-primary")
def _nm2(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    if not M.properties.multiplication:
        return None
    if not ev.ideal_holds(W_S_PRIMARY, residual_in_ring(N), S):
        return None
    return True if ev.wsp(N, S) else _fail(residual=residual_in_ring(N).short())


@claim("NM-3", "faithful-mult-ideals", "residual transfer, item (3)",
       "M faithful multiplication: I weakly S-primary ideal <=> IM weakly S-primary submodule",
       style="equivalence",
       describe=lambda t: {"module": t[0].id, "I": t[1].short(), "S": t[2].short()})
def _nm3(ev, inst):
    M, I, S = inst
    a = ev.ideal_holds(W_S_PRIMARY, I, S)
    IM = ideal_action(I, M)
    b = ev.wsp(IM, S)
    return True if a == b else _fail(ideal=a, submodule=b, IM=IM.short())


def _subsets_T(R, small: bool):
    out = [(x,) for x in range(R.order)]
    if small:
        out += list(combinations(range(R.order), 2))
    return out


@claim("NM-4", "base", "residual transfer, item (4)",
       "N weakly S-primary, (0:_M T)=0 and T avoids Z_(N:M)(R) => (N:_M T) weakly S-primary")
def _nm4(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    if not ev.wsp(N, S):
        return None
    R = M.ring
    res = residual_in_ring(N)
    Z = special_subset(R, "zdiv_mod_ideal", res)
    tested = False
    for T in _subsets_T(R, R.order <= 12):
        if any(t in Z for t in T):
            continue
        if not residual_in_module(M.zero_sub, T).is_zero:
            continue
        tested = True
        C = residual_in_module(N, T)
        if not ev.wsp(C, S):
            return _fail(T=[R.labels[t] for t in T], colon=C.short())
    return True if tested else None


@claim("NM-CE", "fixture:NM-CE", "example after the residual transfer theorem",
       "faithfulness cannot be dropped: N = 0 in Z_10 + Z_10 is weakly S-primary while "
       "(N:M) = (10) is not a weakly S-primary ideal", style="fixture")
def _nm_ce(ev, fx):
    if not fx.validated:
        return _fail(reason="fixture failed to validate", tried=fx.candidates_tried)
    d = fx.data
    M, N, S = d["M"], d["N"], d["S"]
    res = Submodule(_regular(M.ring), residual_in_ring(N).members)
    ok = (ev.wsp(N, S) and not M.properties.faithful and res == d["residual"]
          and not ev.wsp(res, S))
    return True if ok else _fail(module=M.id)


@claim("IM", "base", "corollary on faithful multiplication modules",
       "(1) N weakly S-primary <=> (2) (N:M) weakly S-primary ideal <=> (3) N = IM for a "
       "weakly S-primary ideal I", style="equivalence")
def _im(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    pr = M.properties
    if not (pr.faithful and pr.multiplication):
        return None
    a = ev.wsp(N, S)
    b = ev.ideal_holds(W_S_PRIMARY, residual_in_ring(N), S)
    c = any(ev.ideal_holds(W_S_PRIMARY, I, S) and ideal_action(I, M) == N for I in M.ring.ideals)
    return True if a == b == c else _fail(values=[a, b, c])


@claim("MAXIMAL", "base", "corollary on maximal weakly S-primary submodules",
       "Z_(N:M)(R) u Z(M) inside sqrt(N:M) and N maximal weakly S-primary => N S-primary")
def _maximal(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    if not N.is_proper or not ev.wsp(N, S):
        return None
    res = residual_in_ring(N)
    rad = radical_mask(M.ring, res.mask)
    Z = special_subset(M.ring, "zdiv_mod_ideal", res) | zero_divisors_on(M)
    if not all(rad[z] for z in Z):
        return None
    maximal = not any(N < P and ev.wsp(P, S) for P in M.submodules)
    if not maximal:
        return None
    return True if ev.sp(N, S) else _fail(reason="maximal but not S-primary")


# ---------------------------------------------------------------------------
# colon by s, localization, saturation


@claim("IS-1", "base", "colon-by-s proposition, item (1)",
       "(N:M) disjoint from S and (N:_M s) weakly primary for some s => N weakly S-primary")
def _is1(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    if not disjoint(N, S):
        return None
    hit = next((s for s in S.members if ev.wp(residual_in_module(N, s))), None)
    if hit is None:
        return None
    return True if ev.wsp(N, S) else _fail(s=M.ring.labels[hit])


@claim("IS-2", "base", "colon-by-s proposition, item (2)",
       "N nonzero weakly S-primary and S disjoint from Z(M) => (N:_M s) weakly primary for some s")
def _is2(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    if N.is_zero or not ev.wsp(N, S):
        return None
    if set(S.members) & zero_divisors_on(M):
        return None
    ok = any(ev.wp(residual_in_module(N, s)) for s in S.members)
    return True if ok else _fail(reason="no s gives a weakly primary colon")


@claim("EX11", "fixture:EX11", "example following the colon-by-s proposition",
       "with S meeting Z(M): N = 0 is weakly S-primary but every (N:_M s) fails to be weakly "
       "primary", style="fixture")
def _ex11(ev, fx):
    if not fx.validated:
        return _fail(reason="fixture failed to validate", tried=fx.candidates_tried)
    d = fx.data
    M, N, S = d["M"], d["N"], d["S"]
    if not set(S.members) & zero_divisors_on(M):
        return _fail(reason="S avoids Z(M)")
    if not ev.wsp(N, S):
        return _fail(reason="N not weakly S-primary")
    bad = [s for s in S.members if ev.wp(residual_in_module(N, s))]
    return True if not bad else _fail(weakly_primary_colons=bad)


def _faithful_mult(M):
    pr = M.properties
    return pr.faithful and pr.multiplication


@claim("P1-1", "base", "radical proposition, item (1)",
       "M faithful multiplication, N weakly S-primary, {0} an S-primary ideal => M-rad(N) S-prime")
def _p11(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    if not _faithful_mult(M) or not ev.wsp(N, S):
        return None
    if not ev.ideal_holds(S_PRIMARY, zero_ideal(M.ring), S):
        return None
    rad = m_radical(N)
    return True if ev.holds(S_PRIME, rad, S) else _fail(m_rad=rad.short())


@claim("P1-2", "base", "radical proposition, item (2)",
       "M faithful multiplication, N weakly S-primary but not S-primary => N^2 = 0 and "
       "M-rad(N) = M-rad(0); over a reduced ring nonzero weakly S-primary => S-primary")
def _p12(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    if not _faithful_mult(M) or not ev.wsp(N, S):
        return None
    sp = ev.sp(N, S)
    if sp and not (M.ring.is_reduced and not N.is_zero):
        return None
    if not sp:
        sq = submodule_product(N, N)
        if not sq.is_zero:
            return _fail(square=sq.short())
        if m_radical(N) != m_radical(M.zero_sub):
            return _fail(m_rad=m_radical(N).short())
        if M.ring.is_reduced and not N.is_zero:
            return _fail(reason="reduced ring, nonzero N, not S-primary")
    return True


@lru_cache(maxsize=None)
def _localized(M: FiniteModule, S: MultClosedSet):
    return localize(M, S, audit=False)


def _colon_chain_witness(N, S):
    cols = {t: residual_in_module(N, t) for t in S.members}
    for s in S.members:
        if all(cols[t] <= cols[s] for t in S.members):
            return s
    return None


@claim("LOC-1", "base", "localization proposition, item (1)",
       "N weakly S-primary => S^-1 N weakly primary in S^-1 M; if also Z(M) avoids S some s has "
       "(N:_M t) <= (N:_M s) for every t")
def _loc1(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    if not ev.wsp(N, S):
        return None
    L = _localized(M, S)
    SN = L.localize_submodule(N)
    if not ev.wp(SN):
        return _fail(localized=SN.short(), localized_module=L.module.id)
    if not set(S.members) & zero_divisors_on(M):
        if _colon_chain_witness(N, S) is None:
            return _fail(reason="no s dominates the colons")
    return True


@claim("LOC-2", "base", "localization proposition, item (2)",
       "Z(M) avoids S, S^-1 N weakly primary and some s dominates the colons => N weakly S-primary")
def _loc2(ev, inst: Instance):
    M, N, S = inst.M, inst.N, inst.S
    if set(S.members) & zero_divisors_on(M) or S.contains_zero:
        return None
    if _colon_chain_witness(N, S) is None:
        return None
    L = _localized(M, S)
    if not ev.wp(L.localize_submodule(N)):
        return None
    return True if ev.wsp(N, S) else _fail(reason="N not weakly S-primary")


@claim("SAT", "base", "saturation proposition",
       "N weakly S-primary <=> N weakly S*-primary (identical verdicts)", style="equivalence")
def _sat(ev, inst: Instance):
    N, S = inst.N, inst.S
    S2 = saturate(S)
    a, b = ev.status(W_S_PRIMARY, N, S), ev.status(W_S_PRIMARY, N, S2)
    return True if a == b else _fail(S_star=S2.short(), verdict=str(a), verdict_star=str(b))


# ---------------------------------------------------------------------------
# homomorphisms, quotients, intersections


def _hom_desc(t):
    hs, N, S = t
    return {**hs.describe(), "N": N.short(), "S": S.short()}


@claim("F-1", "epimorphisms", "homomorphism proposition, item (1)",
       "f onto, N weakly S-primary containing Ker f => f(N) weakly S-primary",
       describe=_hom_desc)
def _f1(ev, t):
    from .modules import hom_transport
    hs, N, S = t
    h = hs.h
    if not h.kernel <= N or not ev.wsp(N, S):
        return None
    img = hom_transport(h, N, "image")
    return True if ev.wsp(img, S) else _fail(image=img.short())


@claim("F-2", "monomorphisms", "homomorphism proposition, item (2)",
       "f one-to-one, N' weakly S-primary => f^-1(N') weakly S-primary", describe=_hom_desc)
def _f2(ev, t):
    from .modules import hom_transport
    hs, Np, S = t
    if not ev.wsp(Np, S):
        return None
    pre = hom_transport(hs.h, Np, "preimage")
    if ev.wsp(pre, S):
        return True
    return _fail(preimage=pre.short(), preimage_is_everything=not pre.is_proper,
                 disjoint=disjoint(pre, S))


def _chain_desc(t):
    M, K, N, S = t
    return {"module": M.id, "K": K.short(), "N": N.short(), "S": S.short()}


@lru_cache(maxsize=None)
def _quotient(M, K):
    return quotient(M, K)


def _image(pi, Q, N):
    return Submodule(Q, sorted({int(pi(x)) for x in N.members}))


@claim("F-2-DISJOINT", "monomorphisms", "homomorphism proposition, item (2), repaired",
       "f one-to-one, N' weakly S-primary and (f^-1(N'):M) disjoint from S => f^-1(N') weakly "
       "S-primary", describe=_hom_desc)
def _f2d(ev, t):
    from .modules import hom_transport
    hs, Np, S = t
    if not ev.wsp(Np, S):
        return None
    pre = hom_transport(hs.h, Np, "preimage")
    if not disjoint(pre, S):
        return None
    return True if ev.wsp(pre, S) else _fail(preimage=pre.short())


@claim("QUOT-1", "chains", "quotient corollary, item (1)",
       "K <= N, N weakly S-primary => N/K weakly S-primary in M/K", describe=_chain_desc)
def _quot1(ev, t):
    M, K, N, S = t
    if not ev.wsp(N, S):
        return None
    Q, pi = _quotient(M, K)
    NK = _image(pi, Q, N)
    return True if ev.wsp(NK, S) else _fail(quotient=NK.short())


def _pairs_desc(t):
    M, N, K, S = t
    return {"module": M.id, "N": N.short(), "K": K.short(), "S": S.short()}


@lru_cache(maxsize=None)
def _as_module(N):
    return submodule_as_module(N)


@claim("QUOT-2", "pairs", "quotient corollary, item (2)",
       "K' weakly S-primary in M => K' n N weakly S-primary in N", describe=_pairs_desc)
def _quot2(ev, t):
    M, N, Kp, S = t
    if not ev.wsp(Kp, S):
        return None
    sub, inc = _as_module(N)
    pre = Submodule(sub, [i for i, x in enumerate(N.members) if Kp.mask[x]])
    if ev.wsp(pre, S):
        return True
    return _fail(intersection=submodule_intersection(Kp, N).short(),
                 equals_N=bool(N <= Kp), disjoint=disjoint(pre, S))


@claim("QUOT-2-DISJOINT", "pairs", "quotient corollary, item (2), repaired",
       "K' weakly S-primary in M and (K' n N :_R N) disjoint from S => K' n N weakly S-primary "
       "in N", describe=_pairs_desc)
def _quot2d(ev, t):
    M, N, Kp, S = t
    if not ev.wsp(Kp, S):
        return None
    sub, inc = _as_module(N)
    pre = Submodule(sub, [i for i, x in enumerate(N.members) if Kp.mask[x]])
    if not disjoint(pre, S):
        return None
    return True if ev.wsp(pre, S) else _fail(intersection=submodule_intersection(Kp, N).short())


@claim("QUOT-3", "chains", "quotient corollary, item (3)",
       "N/K weakly S-primary and K weakly S-primary => N weakly S-primary; "
       "N/K weakly S-primary and K S-primary => N S-primary (both readings)", describe=_chain_desc)
def _quot3(ev, t):
    M, K, N, S = t
    Q, pi = _quotient(M, K)
    NK = _image(pi, Q, N)
    if not ev.wsp(NK, S):
        return None
    kw, ks = ev.wsp(K, S), ev.sp(K, S)
    if not (kw or ks):
        return None
    if kw and not ev.wsp(N, S):
        return _fail(reading="weak")
    if ks and not ev.sp(N, S):
        return _fail(reading="strong")
    return True


@claim("QUOT-CE", "fixture:QUOT-CE", "remark after the quotient corollary",
       "N = K = (p1 p2): N/K = 0 is weakly S-primary while N is not", style="fixture")
def _quot_ce(ev, fx):
    if not fx.validated:
        return _fail(reason="fixture failed to validate", tried=fx.candidates_tried)
    d = fx.data
    return True if ev.wsp(d["NK"], d["S"]) and not ev.wsp(d["N"], d["S"]) else _fail(n=d["M"].id)


@claim("INT-1", "pairs", "intersection proposition, item (1)",
       "N weakly S-primary, (K:M)M = K and (K:M) meets S => N n K weakly S-primary",
       describe=_pairs_desc)
def _int1(ev, t):
    M, N, K, S = t
    resK = residual_in_ring(K)
    if not (resK.mask & S.mask).any() or ideal_action(resK, M) != K:
        return None
    if not ev.wsp(N, S):
        return None
    NK = submodule_intersection(N, K)
    return True if ev.wsp(NK, S) else _fail(intersection=NK.short())


@claim("INT-2", "pairs", "intersection proposition, item (2)",
       "N, K weakly S-primary and (N+K:M) disjoint from S => N+K weakly S-primary",
       describe=_pairs_desc)
def _int2(ev, t):
    M, N, K, S = t
    NK = submodule_sum(N, K)
    if not disjoint(NK, S) or not ev.wsp(N, S) or not ev.wsp(K, S):
        return None
    return True if ev.wsp(NK, S) else _fail(sum=NK.short())


@claim("INT-CE-Z72", "fixture:INT-CE-Z72", "example after the intersection proposition",
       "N = (4), K = (9) in Z_72: N n K = (36) is weakly S-primary (witness 9) but not weakly "
       "primary", style="fixture")
def _int_ce(ev, fx):
    if not fx.validated:
        return _fail(reason="fixture failed to validate", tried=fx.candidates_tried)
    d = fx.data
    M, N, K, S, NK = d["M"], d["N"], d["K"], d["S"], d["NK"]
    resK = residual_in_ring(K)
    ok = (ev.wp(N) and ideal_action(resK, M) == K and (resK.mask & S.mask).any()
          and ev.wsp(NK, S) and not ev.wp(NK))
    return True if ok else _fail(intersection=NK.short())


# ---------------------------------------------------------------------------
# cartesian products


def _pair_multset(P, S, Sp, nb):
    return MultClosedSet(P.ring, [s * nb + t for s in S.members for t in Sp.members])


def _prod_sub(P, N, Np, nb):
    return Submodule(P, [a * nb + b for a in N.members for b in Np.members])


def _cart_desc(t):
    A, B, P, N, Np, S, Sp = t
    return {"module": P.id, "N": N.short(), "N'": Np.short(), "S": S.short(), "S'": Sp.short()}


@claim("CART", "products", "cartesian product theorem",
       "for nonzero N, N': (1) N x N' weakly S x S'-primary <=> (2) one factor S-primary with "
       "the other residual meeting its set <=> (3) N x N' S x S'-primary",
       style="equivalence", describe=_cart_desc)
def _cart(ev, t):
    A, B, P, N, Np, S, Sp = t
    nb = B.order
    NN = _prod_sub(P, N, Np, nb)
    SS = _pair_multset(P, S, Sp, B.ring.order)
    one = ev.wsp(NN, SS)
    three = ev.sp(NN, SS)
    two = (ev.sp(N, S) and meets(Np, Sp)) or (ev.sp(Np, Sp) and meets(N, S))
    return True if one == two == three else _fail(values=[one, two, three])


def _triple_desc(t):
    return {"factors": [(M.id, N.short(), S.short()) for M, N, S in t]}


@claim("CART3", "triples", "finite product theorem at n = 3",
       "N1 x N2 x N3 weakly S-primary <=> some N_i is S_i-primary with the other residuals "
       "meeting their sets; the garbled second sentence of item (2) is not encoded",
       style="equivalence", describe=_triple_desc)
def _cart3(ev, t):
    (A, N1, S1), (B, N2, S2), (C, N3, S3) = t
    from .modules import product as mprod
    AB = mprod(A, B)
    P = mprod(AB, C)
    nb, nc = B.order, C.order
    rb, rc = B.ring.order, C.ring.order
    NN = Submodule(P, [(a * nb + b) * nc + c for a in N1.members for b in N2.members
                       for c in N3.members])
    SS = MultClosedSet(P.ring, [(x * rb + y) * rc + z for x in S1.members for y in S2.members
                                for z in S3.members])
    one = ev.wsp(NN, SS)
    facs = [(N1, S1), (N2, S2), (N3, S3)]
    two = any(ev.sp(facs[i][0], facs[i][1])
              and all(meets(facs[j][0], facs[j][1]) for j in range(3) if j != i)
              for i in range(3))
    return True if one == two else _fail(values=[one, two])


# ---------------------------------------------------------------------------
# idealization


def _ideal_desc(t):
    R, M, T, I, N, K, S = t
    return {"ring": T.id, "I": I.short(), "N": N.short(), "K": K.short(), "S": S.short()}


def _ideal_tail(R, M, I, N, S):
    rad_I = radical_mask(R, I.mask)
    res = residual_in_ring(N)
    rad_res = radical_mask(R, res.mask)
    annN = residual_by_submodule(M.zero_sub, N)
    annI = [c for c in range(R.order) if all(R.mul[c, a] == R.zero for a in I.members)]
    zero_I = residual_in_module(M.zero_sub, I.members)
    for s in S.members:
        ok = True
        for a in range(R.order):
            for b in range(R.order):
                if (R.mul[a, b] == R.zero and not rad_I[R.mul[s, a]] and not I.mask[R.mul[s, b]]
                        and not (annN.mask[a] and annN.mask[b])):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for c in range(R.order):
                for m in range(M.order):
                    if (M.act[c, m] == M.zero and not rad_res[R.mul[s, c]]
                            and not N.mask[M.act[s, m]]
                            and not (c in annI and zero_I.mask[m])):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            return s
    return None


@claim("IDEAL", "idealization", "idealization theorem",
       "I x N weakly S x K-primary => I weakly S-primary, N weakly S-primary when (N:M) misses S, "
       "and some s satisfies both annihilator tail conditions", describe=_ideal_desc)
def _ideal(ev, t):
    R, M, T, I, N, K, S = t
    H = homog_ideal(I, N)
    SK = idealization_multset(S, K)
    if not ev.ideal_holds(W_S_PRIMARY, H, SK):
        return None
    if not ev.ideal_holds(W_S_PRIMARY, I, S):
        return _fail(part="ideal")
    if disjoint(N, S) and not ev.wsp(N, S):
        return _fail(part="submodule")
    if _ideal_tail(R, M, I, N, S) is None:
        return _fail(part="tail")
    return True


@claim("IDEAL-RAD", "homogeneous", "radical of a homogeneous ideal",
       "sqrt(I x N) = sqrt(I) x M for every homogeneous ideal",
       describe=lambda t: {"module": t[1].id, "I": t[2].short(), "N": t[3].short()})
def _ideal_rad(ev, t):
    R, M, I, N = t
    return True if radical_identity_holds(I, N) else _fail(reason="identity fails")


# ---------------------------------------------------------------------------
# amalgamation


def _ctx_desc(t):
    ctx = t[0] if isinstance(t, tuple) else t
    out = {"context": ctx.module.id}
    if isinstance(t, tuple):
        out["N"] = t[1].short()
        if len(t) > 2:
            out["S"] = t[2].short()
    return out


@claim("HA", "amalg-contexts", "residual lemma for amalgamations",
       "(r, f(r)+j) lies in (N1 |><| JM2 : M) iff r in (N1:M1); with f, phi onto, it lies in "
       "(N2-bar : M) iff f(r)+j in (N2:M2)", describe=_ctx_desc)
def _ha(ev, ctx):
    epi = ctx.f.is_surjective and ctx.phi.is_surjective
    for N1 in ctx.M1.submodules:
        p = lemma_ha_probe(ctx, N1=N1)
        if not p.passed:
            return _fail(part=1, N1=N1.short(), pair=p.part1_failure)
    if epi:
        for N2 in ctx.M2.submodules:
            p = lemma_ha_probe(ctx, N2=N2)
            if not p.passed:
                return _fail(part=2, N2=N2.short(), pair=p.part2_failure)
    return True


def _amalg_cond_first(ctx, N1, S_members):
    """r1 m1 = 0, all s miss both targets => f(r1)m2 + j phi(m1) + j m2 = 0."""
    R1, M1, M2 = ctx.R1, ctx.M1, ctx.M2
    rad = radical_mask(R1, residual_in_ring(N1).mask)
    J = np.array(ctx.J.members)
    JM = np.array(ctx.JM2.members)
    S_arr = np.array(S_members)
    for r in range(R1.order):
        for m in range(M1.order):
            if M1.act[r, m] != M1.zero:
                continue
            if rad[R1.mul[S_arr, r]].any() or N1.mask[M1.act[S_arr, m]].any():
                continue
            fr = ctx.f(r)
            pm = ctx.phi(m)
            a = M2.act[fr, JM][None, :]                # f(r) m2
            b = M2.act[J, pm][:, None]                 # j phi(m1)
            c = M2.act[J[:, None], JM[None, :]]        # j m2
            tot = M2.add[M2.add[a, b], c]
            if (tot != M2.zero).any():
                return (r, m)
    return None


@claim("AMALG-1", "amalg-first", "amalgamation theorem, item (1)",
       "N1 |><| JM2 is S |><| J-primary <=> N1 is S-primary", style="equivalence",
       describe=_ctx_desc)
def _amalg1(ev, t):
    ctx, N1, S = t
    big = amalg_submodule(ctx, "first", N1)
    SJ = amalg_multset(ctx, "first", S)
    a, b = ev.sp(big, SJ), ev.sp(N1, S)
    return True if a == b else _fail(amalgamated=a, base=b)


@claim("AMALG-2", "amalg-first", "amalgamation theorem, item (2)",
       "N1 |><| JM2 weakly S |><| J-primary <=> N1 weakly S-primary and the annihilation "
       "condition on f(r1)m2 + j phi(m1) + j m2", style="equivalence", describe=_ctx_desc)
def _amalg2(ev, t):
    ctx, N1, S = t
    big = amalg_submodule(ctx, "first", N1)
    SJ = amalg_multset(ctx, "first", S)
    a = ev.wsp(big, SJ)
    bad = _amalg_cond_first(ctx, N1, S.members)
    b = ev.wsp(N1, S) and bad is None
    return True if a == b else _fail(amalgamated=a, base=ev.wsp(N1, S), condition_break=bad)


@claim("CA1-1", "amalg-first-plain", "first amalgamation corollary, item (1)",
       "N1 |><| JM2 primary <=> N1 primary", style="equivalence", describe=_ctx_desc)
def _ca11(ev, t):
    ctx, N1 = t
    a = ev.holds(PRIMARY, amalg_submodule(ctx, "first", N1))
    b = ev.holds(PRIMARY, N1)
    return True if a == b else _fail(amalgamated=a, base=b)


@claim("CA1-2", "amalg-first-plain", "first amalgamation corollary, item (2)",
       "N1 |><| JM2 weakly primary <=> N1 weakly primary and the annihilation condition",
       style="equivalence", describe=_ctx_desc)
def _ca12(ev, t):
    ctx, N1 = t
    a = ev.wp(amalg_submodule(ctx, "first", N1))
    bad = _amalg_cond_first(ctx, N1, [ctx.R1.one])
    b = ev.wp(N1) and bad is None
    return True if a == b else _fail(amalgamated=a, base=ev.wp(N1), condition_break=bad)


def _amalg_cond_second(ctx, N2, S_members, prime=False):
    """(f(r1)+j)(phi(m1)+m2) = 0 with all s missing both targets => r1 m1 = 0."""
    R2, M1, M2 = ctx.R2, ctx.M1, ctx.M2
    res = residual_in_ring(N2).mask
    target = res if prime else radical_mask(R2, res)
    S_arr = np.array(S_members)
    for r1, y in ctx.ring_pairs:
        if target[R2.mul[S_arr, y]].any():
            continue
        for m1, x in ctx.module_pairs:
            if M2.act[y, x] != M2.zero:
                continue
            if N2.mask[M2.act[S_arr, x]].any():
                continue
            if M1.act[r1, m1] != M1.zero:
                return (r1, y, m1, x)
    return None


def _epi(ctx):
    return ctx.f.is_surjective and ctx.phi.is_surjective


@claim("AMALG2-1", "amalg-second", "second amalgamation theorem, item (1)",
       "f, phi onto: N2-bar is S-bar-primary <=> N2 is S-primary", style="equivalence",
       describe=_ctx_desc)
def _amalg21(ev, t):
    ctx, N2, S = t
    if not _epi(ctx):
        return None
    big = amalg_submodule(ctx, "second", N2)
    SB = amalg_multset(ctx, "second", S)
    a, b = ev.sp(big, SB), ev.sp(N2, S)
    return True if a == b else _fail(amalgamated=a, base=b)


@claim("AMALG2-2", "amalg-second", "second amalgamation theorem, item (2)",
       "f, phi onto: N2-bar weakly S-bar-primary <=> N2 weakly S-primary and the condition "
       "forcing r1 m1 = 0", style="equivalence", describe=_ctx_desc)
def _amalg22(ev, t):
    ctx, N2, S = t
    if not _epi(ctx):
        return None
    big = amalg_submodule(ctx, "second", N2)
    SB = amalg_multset(ctx, "second", S)
    a = ev.wsp(big, SB)
    bad = _amalg_cond_second(ctx, N2, S.members)
    b = ev.wsp(N2, S) and bad is None
    return True if a == b else _fail(amalgamated=a, base=ev.wsp(N2, S), condition_break=bad)


@claim("CA2-1", "amalg-second-plain", "second amalgamation corollary, item (1)",
       "f, phi onto: N2-bar primary <=> N2 primary", style="equivalence", describe=_ctx_desc)
def _ca21(ev, t):
    ctx, N2 = t
    if not _epi(ctx):
        return None
    a = ev.holds(PRIMARY, amalg_submodule(ctx, "second", N2))
    b = ev.holds(PRIMARY, N2)
    return True if a == b else _fail(amalgamated=a, base=b)


@claim("CA2-2", "amalg-second-plain", "second amalgamation corollary, item (2)",
       "f, phi onto: N2-bar weakly primary <=> N2 weakly primary and the condition forcing "
       "r1 m1 = 0", style="equivalence", describe=_ctx_desc)
def _ca22(ev, t):
    ctx, N2 = t
    if not _epi(ctx):
        return None
    a = ev.wp(amalg_submodule(ctx, "second", N2))
    bad = _amalg_cond_second(ctx, N2, [ctx.R2.one])
    b = ev.wp(N2) and bad is None
    return True if a == b else _fail(amalgamated=a, base=ev.wp(N2), condition_break=bad)


# ---------------------------------------------------------------------------
# duplication


@claim("DUP", "duplication", "duplication corollary",
       "N S-primary <=> N |><| J (S |><| J)-primary <=> N-bar S-bar-primary", style="equivalence",
       describe=_ctx_desc)
def _dup(ev, t):
    ctx, N, S = t
    a = ev.sp(N, S)
    b = ev.sp(dup_join(ctx, N), dup_multset_join(ctx, S))
    c = ev.sp(dup_bar(ctx, N), dup_multset_bar(ctx, S))
    return True if a == b == c else _fail(values=[a, b, c])


def _dup1_cond(ctx, N, S):
    """Printed form: rm = 0, all s miss both targets => (r + j) m' = 0 for j in J, m' in JM."""
    R, M = ctx.R1, ctx.M1
    rad = radical_mask(R, residual_in_ring(N).mask)
    S_arr = np.array(S.members)
    J = np.array(ctx.J.members)
    JM = np.array(ctx.JM2.members)
    for r in range(R.order):
        for m in range(M.order):
            if M.act[r, m] != M.zero:
                continue
            if rad[R.mul[S_arr, r]].any() or N.mask[M.act[S_arr, m]].any():
                continue
            rj = R.add[r, J]
            if (M.act[rj[:, None], JM[None, :]] != M.zero).any():
                return (r, m)
    return None


@claim("DUP1", "duplication", "first weak duplication corollary (as printed)",
       "N |><| J weakly (S |><| J)-primary <=> N weakly S-primary and rm = 0 (with all s "
       "missing) forces (r + j)m' = 0 for j in J, m' in JM", style="equivalence",
       describe=_ctx_desc)
def _dup1(ev, t):
    ctx, N, S = t
    a = ev.wsp(dup_join(ctx, N), dup_multset_join(ctx, S))
    bad = _dup1_cond(ctx, N, S)
    b = ev.wsp(N, S) and bad is None
    return True if a == b else _fail(duplicated=a, base=ev.wsp(N, S), condition_break=bad)


def _dup2_cond(ctx, N, S, prime: bool):
    R, M = ctx.R1, ctx.M1
    res = residual_in_ring(N).mask
    target = res if prime else radical_mask(R, res)
    S_arr = np.array(S.members)
    for r, y in ctx.ring_pairs:
        if target[R.mul[S_arr, y]].any():
            continue
        for m, x in ctx.module_pairs:
            if M.act[y, x] != M.zero or N.mask[M.act[S_arr, x]].any():
                continue
            if M.act[r, m] != M.zero:
                return (r, y, m, x)
    return None


@claim("DUP2", "duplication", "second weak duplication corollary (as printed, prime wording)",
       "N-bar weakly S-bar-prime <=> N weakly S-prime and (r+j)(m+m') = 0 (with all s missing "
       "(N:M) and N) forces rm = 0", style="equivalence", describe=_ctx_desc)
def _dup2(ev, t):
    ctx, N, S = t
    a = ev.holds(W_S_PRIME, dup_bar(ctx, N), dup_multset_bar(ctx, S))
    bad = _dup2_cond(ctx, N, S, prime=True)
    b = ev.holds(W_S_PRIME, N, S) and bad is None
    return True if a == b else _fail(duplicated=a, base=ev.holds(W_S_PRIME, N, S),
                                     condition_break=bad)


@claim("DUP2-PRIMARY", "duplication", "second weak duplication corollary, primary reading",
       "N-bar weakly S-bar-primary <=> N weakly S-primary and (r+j)(m+m') = 0 (with all s "
       "missing sqrt(N:M) and N) forces rm = 0", style="equivalence", describe=_ctx_desc)
def _dup2p(ev, t):
    ctx, N, S = t
    a = ev.wsp(dup_bar(ctx, N), dup_multset_bar(ctx, S))
    bad = _dup2_cond(ctx, N, S, prime=False)
    b = ev.wsp(N, S) and bad is None
    return True if a == b else _fail(duplicated=a, base=ev.wsp(N, S), condition_break=bad)


@claim("EX2", "fixture:EX2", "duplication example",
       "N = 0 is weakly primary while neither N |><| J nor N-bar is", style="fixture")
def _ex2(ev, fx):
    if not fx.validated:
        return _fail(reason="fixture failed to validate", tried=fx.candidates_tried)
    d = fx.data
    ctx, N = d["ctx"], d["N"]
    ok = ev.wp(N) and not ev.wp(d["NJ"]) and not ev.wp(d["NB"])
    # the condition of the first weak duplication corollary must fail here
    one = MultClosedSet(ctx.R1, [ctx.R1.one])
    return True if ok and _dup1_cond(ctx, N, one) is not None else _fail(ctx=ctx.module.id)


# ---------------------------------------------------------------------------
# examples


@claim("E1-1", "fixture:E1-1", "example: the zero submodule need not be weakly S-primary",
       "Z_4 over Z_12 with S = {4}: (0:M) meets S, while 0 is weakly primary", style="fixture")
def _e11(ev, fx):
    if not fx.validated:
        return _fail(reason="fixture failed to validate", tried=fx.candidates_tried)
    d = fx.data
    ok = ev.status(W_S_PRIMARY, d["N"], d["S"]) == "NotDisjoint" and ev.wp(d["N"])
    return True if ok else _fail(module=d["M"].id)


@claim("E1-2", "modules", "example: zero submodule",
       "(0:M) disjoint from S => 0 is weakly S-primary; a separation (weakly S-primary, not "
       "S-primary) is recorded by the fixture",
       describe=lambda t: {"module": t[0].id, "S": t[1].short()})
def _e12(ev, t):
    M, S = t
    if not disjoint(M.zero_sub, S):
        return None
    return True if ev.wsp(M.zero_sub, S) else _fail(reason="zero not weakly S-primary")


@claim("E1-2-SEP", "fixture:E1-2", "example: weakly S-primary but not S-primary",
       "a submodule that is weakly S-primary without being S-primary", style="fixture")
def _e12sep(ev, fx):
    if not fx.validated:
        return _fail(reason="fixture failed to validate", tried=fx.candidates_tried)
    d = fx.data
    ok = ev.wsp(d["N"], d["S"]) and not ev.sp(d["N"], d["S"])
    return True if ok else _fail(module=d["M"].id)


@claim("E1-3", "fixture:E1-3", "example: S-primary but not weakly S-prime",
       "Z_8 + Z_8 stand-in: N = (4) x Z_8 is S-primary but not weakly S-prime", style="fixture")
def _e13(ev, fx):
    if not fx.validated:
        return _fail(reason="fixture failed to validate", tried=fx.candidates_tried)
    d = fx.data
    ok = (ev.sp(d["N"], d["S"]) and ev.wsp(d["N"], d["S"])
          and not ev.holds(W_S_PRIME, d["N"], d["S"]))
    return True if ok else _fail(module=d["M"].id)


@claim("E1-4", "fixture:E1-4", "example: cyclic modules of order p^n q^m",
       "Z_36, N = (6), S = {3, 9, 27}: N is weakly S-primary with weakly S-element q^t = 3",
       style="fixture")
def _e14(ev, fx):
    if not fx.validated:
        return _fail(reason="fixture failed to validate", tried=fx.candidates_tried)
    d = fx.data
    return _e14_case(ev, d["M"], d["N"], d["S"], d["s"])


def _e14_case(ev, M, N, S, s):
    from .predicates import weakly_s_elements
    if not ev.wsp(N, S):
        return _fail(reason="not weakly S-primary")
    if ev.naive:
        ok = oracle.naive_check("weakly-s-primary", N.members, M, [s]) == (True, s)
    else:
        ok = s in weakly_s_elements(N, S)
    return True if ok else _fail(reason="q^t is not a weakly S-element")


@claim("E1-4-SWEEP", "e14-sweep", "example: cyclic modules of order p^n q^m",
       "every N = (p^k q^t) in Z_{p^n q^m} within the ring cap, S generated by q, is weakly "
       "S-primary with weakly S-element q^t",
       describe=lambda t: {"p": t[0], "q": t[1], "n": t[2], "m": t[3], "k": t[4], "t": t[5]})
def _e14_sweep(ev, t):
    from .modules import submodule_span
    from .rings import mult_set_closure, zn
    pp, qq, n, m, k, tt = t
    order = pp ** n * qq ** m
    R = zn(order)
    M = _regular(R)
    N = submodule_span(M, [pp ** k * qq ** tt % order])
    S = mult_set_closure(R, [qq])
    return _e14_case(ev, M, N, S, qq ** tt % order)


@claim("MRAD", "mult-modules", "M-radical on multiplication modules",
       "definition and sqrt(N:M)M agree, and (M-rad(N):M) = sqrt(N:M)",
       describe=lambda t: {"module": t[0].id, "N": t[1].short()})
def _mrad(ev, t):
    M, N = t
    a = m_radical(N, "definition")
    b = m_radical(N, "mult_formula")
    if a != b:
        return _fail(definition=a.short(), formula=b.short())
    if not N.is_proper:
        return True
    lhs = residual_in_ring(a)
    rhs = radical_mask(M.ring, residual_in_ring(N).mask)
    return True if (lhs.mask == rhs).all() else _fail(residual=lhs.short())


# ---------------------------------------------------------------------------
# reports


MAX_COUNTEREXAMPLES = 10


class Status:
    PASS = "PASS"
    FAIL = "FAIL"
    VACUOUS = "VACUOUS"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return _short(x)


@dataclass
class ClaimReport:
    claim_id: str
    instances_checked: int
    instances_skipped_by_hypothesis: int
    holds: bool
    counterexamples: list
    violations: int
    status: str
    elapsed: float
    corpus_size: int
    replay_mismatches: int = 0
    fixture: dict | None = None

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "claim_id": self.claim_id,
            "status": self.status,
            "holds": self.holds,
            "instances_checked": self.instances_checked,
            "instances_skipped_by_hypothesis": self.instances_skipped_by_hypothesis,
            "corpus_size": self.corpus_size,
            "violations": self.violations,
            "counterexamples": self.counterexamples,
            "replay_mismatches": self.replay_mismatches,
        }
        if self.fixture is not None:
            d["fixture"] = self.fixture
        if timing:
            d["elapsed"] = round(self.elapsed, 3)
        return d


def run_claim(c: Claim, corpus: InstanceCorpus, ev: Evaluator = FAST,
              replay: bool = True, limit: int = MAX_COUNTEREXAMPLES) -> ClaimReport:
    import time
    t0 = time.perf_counter()
    insts = family(corpus, c.family)
    checked = skipped = violations = mismatches = 0
    cexs = []
    for inst in insts:
        r = c.evaluate(ev, inst)
        if r is None:
            skipped += 1
            continue
        checked += 1
        if r is True:
            continue
        violations += 1
        if len(cexs) >= limit:
            continue
        entry = {"instance": _jsonable(c.describe(inst)), "detail": _jsonable(r)}
        if replay and not ev.naive:
            rr = c.evaluate(NAIVE, inst)
            entry["replayed"] = rr is not None and rr is not True
            if not entry["replayed"]:
                mismatches += 1
        cexs.append(entry)
    fixture = None
    if c.family.startswith("fixture:"):
        fixture = insts[0].record() if insts else None
    status = Status.FAIL if violations else (Status.VACUOUS if checked == 0 else Status.PASS)
    return ClaimReport(c.claim_id, checked, skipped, violations == 0, cexs, violations, status,
                       time.perf_counter() - t0, len(insts), mismatches, fixture)


def resolve_claim_ids(claim_ids) -> list[str]:
    if claim_ids is None or claim_ids == "all":
        return sorted(REGISTRY)
    if isinstance(claim_ids, str):
        claim_ids = [x for x in claim_ids.split(",") if x]
    out = []
    for cid in claim_ids:
        if cid == "all":
            out.extend(k for k in sorted(REGISTRY) if k not in out)
            continue
        get_claim(cid)
        if cid not in out:
            out.append(cid)
    return out


def verify(claim_ids, corpus: InstanceCorpus | None = None, ev: Evaluator = FAST,
           replay: bool = True) -> list[ClaimReport]:
    """Run the named claims (or ``"all"``) over ``corpus``; reports come back sorted."""
    ids = resolve_claim_ids(claim_ids)
    corpus = corpus or InstanceCorpus()
    return [run_claim(REGISTRY[cid], corpus, ev, replay) for cid in sorted(ids)]
