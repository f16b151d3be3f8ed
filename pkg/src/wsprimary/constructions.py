"""Idealization, amalgamation and amalgamated duplication.

Every derived carrier is a list of index pairs stored in lexicographic
order; element labels are ``"(x|y)"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    CapExceeded,
    EmptySet,
    EpimorphismRequired,
    InvalidSpec,
    NotASubmodule,
    NotHomogeneous,
    NotLinear,
)
from .modules import (
    DEFAULT_MODULE_CAP,
    FiniteModule,
    ModuleHom,
    Submodule,
    _validated as _validated_module,
    ideal_action,
    make_hom,
    make_module,
    regular,
    residual_in_ring,
)
from .rings import (
    DEFAULT_ORDER_CAP,
    FiniteRing,
    Ideal,
    MultClosedSet,
    RingHom,
    _validated as _validated_ring,
    ideal_span,
    identity_hom,
    make_ring,
    make_ring_hom,
    pair_label,
    radical_of_ideal,
    reduction_hom,
)

# ---------------------------------------------------------------------------
# idealization


@lru_cache(maxsize=None)
def idealize(R: FiniteRing, M: FiniteModule, cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """``R x M`` with ``(r, m)(s, n) = (rs, rn + sm)``; element ``(r, m)`` has index ``r*|M| + m``."""
    if M.ring != R:
        raise InvalidSpec("module is not over the given ring")
    k = M.order
    n = R.order * k
    if n > cap:
        raise CapExceeded(f"idealization order {n} > cap {cap}")
    r, m = np.divmod(np.arange(n), k)
    add = R.add[r[:, None], r[None, :]] * k + M.add[m[:, None], m[None, :]]
    rn = M.act[r[:, None], m[None, :]]
    sm = M.act[r[None, :], m[:, None]]
    mul = R.mul[r[:, None], r[None, :]] * k + M.add[rn, sm]
    labels = tuple(pair_label(R.labels[a], M.labels[b]) for a, b in zip(r, m))
    T = FiniteRing(f"({R.id}*{M.id})", add, mul, R.zero * k + M.zero, R.one * k + M.zero, labels,
                   ("idealization", R.id, M.id))
    return _validated_ring(T, cap)


def _idealized_pairs(R: FiniteRing, M: FiniteModule, first, second) -> list[int]:
    k = M.order
    return [int(a) * k + int(b) for a in first for b in second]


def homog_ideal(I: Ideal, N: Submodule, cap: int = DEFAULT_ORDER_CAP) -> Ideal:
    """``I x N`` as an ideal of ``R x M``; requires ``IM <= N``."""
    M = N.module
    if I.ring != M.ring:
        raise InvalidSpec("ideal and submodule live over different rings")
    if not ideal_action(I, M) <= N:
        raise NotHomogeneous("IM is not contained in N")
    T = idealize(M.ring, M, cap)
    return Ideal(T, _idealized_pairs(M.ring, M, I.members, N.members))


def radical_identity_holds(I: Ideal, N: Submodule, cap: int = DEFAULT_ORDER_CAP) -> bool:
    """Audit ``sqrt(I x N) = sqrt(I) x M``."""
    M = N.module
    T = idealize(M.ring, M, cap)
    lhs = radical_of_ideal(homog_ideal(I, N, cap))
    rhs = Ideal(T, _idealized_pairs(M.ring, M, radical_of_ideal(I).members, range(M.order)))
    return lhs == rhs


def idealization_multset(S: MultClosedSet, K: Submodule, cap: int = DEFAULT_ORDER_CAP) -> MultClosedSet:
    M = K.module
    if S.ring != M.ring:
        raise InvalidSpec("multiplicative set and submodule live over different rings")
    T = idealize(M.ring, M, cap)
    return MultClosedSet(T, _idealized_pairs(M.ring, M, S.members, K.members))


def embedded_module(R: FiniteRing, M: FiniteModule, cap: int = DEFAULT_ORDER_CAP) -> Ideal:
    """``0 x M`` inside ``R x M``."""
    T = idealize(R, M, cap)
    return Ideal(T, _idealized_pairs(R, M, [R.zero], range(M.order)))


# ---------------------------------------------------------------------------
# amalgamation


@dataclass(frozen=True, eq=False)
class AmalgamationContext:
    """``R1 |><|^f J`` acting on ``M1 |><|^phi JM2``.

    ``ring_pairs[i] = (r, y)`` with ``y = f(r) + j``; ``module_pairs[i] =
    (m1, x)`` with ``x = phi(m1) + m2``.  ``M2r`` is ``M2`` viewed over
    ``R1`` through ``f``.
    """

    R1: FiniteRing
    R2: FiniteRing
    f: RingHom
    J: Ideal
    M1: FiniteModule
    M2: FiniteModule
    phi: ModuleHom
    JM2: Submodule
    ring: FiniteRing
    module: FiniteModule
    ring_pairs: tuple[tuple[int, int], ...] = field(repr=False)
    module_pairs: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def id(self) -> str:
        return self.module.id

    @cached_property
    def is_duplication(self) -> bool:
        return (self.R1 == self.R2 and self.M1 == self.M2 and self.f.is_identity
                and bool((self.phi.table == np.arange(self.M1.order)).all()))

    def ring_index(self, r: int, y: int) -> int:
        return self._ring_pos[(r, y)]

    def module_index(self, m1: int, x: int) -> int:
        return self._module_pos[(m1, x)]

    @cached_property
    def _ring_pos(self) -> dict:
        return {p: i for i, p in enumerate(self.ring_pairs)}

    @cached_property
    def _module_pos(self) -> dict:
        return {p: i for i, p in enumerate(self.module_pairs)}


def _pair_ring(R1, R2, pairs, ident: str, cap: int) -> FiniteRing:
    pos = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    if n > cap:
        raise CapExceeded(f"amalgamated ring order {n} > cap {cap}")
    a = np.array([p[0] for p in pairs])
    b = np.array([p[1] for p in pairs])
    lookup = np.full((R1.order, R2.order), -1)
    lookup[a, b] = np.arange(n)
    add = lookup[R1.add[a[:, None], a[None, :]], R2.add[b[:, None], b[None, :]]]
    mul = lookup[R1.mul[a[:, None], a[None, :]], R2.mul[b[:, None], b[None, :]]]
    if (add < 0).any() or (mul < 0).any():
        raise InvalidSpec("amalgamated ring is not closed")
    labels = tuple(pair_label(R1.labels[x], R2.labels[y]) for x, y in pairs)
    T = FiniteRing(ident, add, mul, pos[(R1.zero, R2.zero)], pos[(R1.one, R2.one)], labels,
                   ("amalgamation",))
    return _validated_ring(T, cap)


def make_amalgamation(R1: FiniteRing, R2: FiniteRing, f, J: Ideal, M1: FiniteModule,
                      M2: FiniteModule, phi, ring_cap: int = DEFAULT_ORDER_CAP,
                      module_cap: int = DEFAULT_MODULE_CAP) -> AmalgamationContext:
    """Build and audit an amalgamation context.

    ``f`` may be a :class:`RingHom` or a table; ``phi`` a :class:`ModuleHom`
    ``M1 -> M2`` (with scalar bridge ``f``) or a table.
    """
    if not isinstance(f, RingHom):
        f = make_ring_hom(R1, R2, f)
    if f.source != R1 or f.target != R2:
        raise InvalidSpec("ring hom does not go from R1 to R2")
    if J.ring != R2:
        raise InvalidSpec("J must be an ideal of R2")
    if M1.ring != R1 or M2.ring != R2:
        raise InvalidSpec("modules are over the wrong rings")
    table = phi.table if isinstance(phi, ModuleHom) else phi
    bridge = None if f.is_identity and R1 == R2 else f
    phi = make_hom(M1, M2, table, scalar_bridge=bridge)

    jm2 = ideal_action(J, M2)
    ring_pairs = sorted({(r, int(R2.add[f(r), j])) for r in range(R1.order) for j in J.members})
    module_pairs = sorted({(m, int(M2.add[phi(m), x])) for m in range(M1.order) for x in jm2.members})
    tag = f"{R1.id},{R2.id},{J.short()}"
    T = _pair_ring(R1, R2, ring_pairs, f"Amalg[{tag},f={_digest(f.table)}]", ring_cap)

    if len(module_pairs) > module_cap:
        raise CapExceeded(f"amalgamated module order {len(module_pairs)} > cap {module_cap}")
    a = np.array([p[0] for p in module_pairs])
    b = np.array([p[1] for p in module_pairs])
    lookup = np.full((M1.order, M2.order), -1)
    lookup[a, b] = np.arange(len(module_pairs))
    add = lookup[M1.add[a[:, None], a[None, :]], M2.add[b[:, None], b[None, :]]]
    ra = np.array([p[0] for p in ring_pairs])
    rb = np.array([p[1] for p in ring_pairs])
    act = lookup[M1.act[ra[:, None], a[None, :]], M2.act[rb[:, None], b[None, :]]]
    if (add < 0).any() or (act < 0).any():
        raise InvalidSpec("amalgamated module is not closed")
    # second coordinate against the expansion phi(rm1) + f(r)m2 + j phi(m1) + j m2
    for i, (r, y) in enumerate(ring_pairs):
        j = int(R2.sub(y, f(r)))
        for k, (m1, x) in enumerate(module_pairs):
            m2 = int(M2.sub(x, phi(m1)))
            terms = [phi(M1.act[r, m1]), M2.act[f(r), m2], M2.act[j, phi(m1)], M2.act[j, m2]]
            total = M2.zero
            for t in terms:
                total = M2.add[total, t]
            if module_pairs[act[i, k]][1] != total:
                raise NotLinear("scalar action disagrees with the expanded formula")
    labels = tuple(pair_label(M1.labels[x], M2.labels[y]) for x, y in module_pairs)
    AM = FiniteModule(f"Amalg[{tag},{M1.id},{M2.id},phi={_digest(phi.table)}]", T, add, act,
                      int(lookup[M1.zero, M2.zero]), labels, ("amalgamation", M1.id, M2.id))
    AM = _validated_module(AM, module_cap)
    return AmalgamationContext(R1, R2, f, J, M1, M2, phi, jm2, T, AM, tuple(ring_pairs),
                               tuple(module_pairs))


def _digest(table) -> str:
    return "".join(str(int(x)) + "." for x in np.asarray(table))[:-1]


def make_duplication(M: FiniteModule, J: Ideal, **caps) -> AmalgamationContext:
    R = M.ring
    return make_amalgamation(R, R, identity_hom(R), J, M, M, np.arange(M.order), **caps)


def amalg_submodule(ctx: AmalgamationContext, which: str, N: Submodule) -> Submodule:
    if which == "first":
        if N.module != ctx.M1:
            raise NotASubmodule("N1 must be a submodule of M1")
        members = [i for i, (m1, _) in enumerate(ctx.module_pairs) if N.mask[m1]]
    elif which == "second":
        if N.module != ctx.M2:
            raise NotASubmodule("N2 must be a submodule of M2")
        members = [i for i, (_, x) in enumerate(ctx.module_pairs) if N.mask[x]]
    else:
        raise InvalidSpec(f"unknown side {which!r}")
    return Submodule(ctx.module, members)


def amalg_multset(ctx: AmalgamationContext, which: str, S: MultClosedSet) -> MultClosedSet:
    if which == "first":
        if S.ring != ctx.R1:
            raise InvalidSpec("S1 must live in R1")
        members = [i for i, (r, _) in enumerate(ctx.ring_pairs) if S.mask[r]]
    elif which == "second":
        if S.ring != ctx.R2:
            raise InvalidSpec("S2 must live in R2")
        members = [i for i, (_, y) in enumerate(ctx.ring_pairs) if S.mask[y]]
    else:
        raise InvalidSpec(f"unknown side {which!r}")
    if not members:
        raise EmptySet("no element of the amalgamated ring lands in the set")
    return MultClosedSet(ctx.ring, members)


# direct definitions for the duplication case, used to cross-check the general ones


def dup_join(ctx: AmalgamationContext, N: Submodule) -> Submodule:
    """``N |><| J = {(n, m) in N x M : n - m in JM}``."""
    M = ctx.M1
    members = [ctx.module_index(n, m) for n in N.members for m in range(M.order)
               if ctx.JM2.mask[M.sub(n, m)]]
    return Submodule(ctx.module, members)


def dup_bar(ctx: AmalgamationContext, N: Submodule) -> Submodule:
    """``N-bar = {(m, n) in M x N : m - n in JM}``."""
    M = ctx.M1
    members = [ctx.module_index(m, n) for m in range(M.order) for n in N.members
               if ctx.JM2.mask[M.sub(m, n)]]
    return Submodule(ctx.module, members)


def dup_multset_join(ctx: AmalgamationContext, S: MultClosedSet) -> MultClosedSet:
    R = ctx.R1
    members = {ctx.ring_index(s, int(R.add[s, j])) for s in S.members for j in ctx.J.members}
    return MultClosedSet(ctx.ring, members)


def dup_multset_bar(ctx: AmalgamationContext, S: MultClosedSet) -> MultClosedSet:
    R = ctx.R1
    members = {ctx.ring_index(r, int(R.add[r, j])) for r in range(R.order) for j in ctx.J.members
               if S.mask[R.add[r, j]]}
    if not members:
        raise EmptySet("S-bar is empty")
    return MultClosedSet(ctx.ring, members)


# ---------------------------------------------------------------------------
# the residual lemma


@dataclass(frozen=True)
class HAProbe:
    """Outcome of the two residual biconditionals, one flag per direction.

    ``None`` means the part was not requested.  Failures record the
    first offending ring pair ``(r, y)``.
    """

    part1_forward: bool | None = None
    part1_backward: bool | None = None
    part1_failure: tuple[int, int] | None = None
    part2_forward: bool | None = None
    part2_backward: bool | None = None
    part2_failure: tuple[int, int] | None = None

    @property
    def passed(self) -> bool:
        flags = [self.part1_forward, self.part1_backward, self.part2_forward, self.part2_backward]
        return all(x is not False for x in flags)


def _biconditional(pairs, lhs_mask, rhs):
    fwd = bwd = True
    first = None
    for i, p in enumerate(pairs):
        a, b = bool(lhs_mask[i]), bool(rhs(p))
        if a and not b:
            fwd = False
        if b and not a:
            bwd = False
        if a != b and first is None:
            first = p
    return fwd, bwd, first


def lemma_ha_probe(ctx: AmalgamationContext, N1: Submodule | None = None,
                   N2: Submodule | None = None) -> HAProbe:
    out = {}
    if N1 is not None:
        big = residual_in_ring(amalg_submodule(ctx, "first", N1))
        small = residual_in_ring(N1)
        f1, b1, x1 = _biconditional(ctx.ring_pairs, big.mask, lambda p: small.mask[p[0]])
        out.update(part1_forward=f1, part1_backward=b1, part1_failure=x1)
    if N2 is not None:
        if not (ctx.f.is_surjective and ctx.phi.is_surjective):
            raise EpimorphismRequired("part 2 needs f and phi to be onto")
        big = residual_in_ring(amalg_submodule(ctx, "second", N2))
        small = residual_in_ring(N2)
        f2, b2, x2 = _biconditional(ctx.ring_pairs, big.mask, lambda p: small.mask[p[1]])
        out.update(part2_forward=f2, part2_backward=b2, part2_failure=x2)
    return HAProbe(**out)


# ---------------------------------------------------------------------------
# recipes


def _hom_from_recipe(R1: FiniteRing, R2: FiniteRing, spec) -> RingHom:
    if spec in (None, "identity"):
        return identity_hom(R1) if R1 == R2 else _raise(InvalidSpec("identity needs equal rings"))
    if spec == "reduction":
        n, m = R1.order, R2.order
        if R1.id != f"Z{n}" or R2.id != f"Z{m}":
            raise InvalidSpec("reduction hom needs cyclic rings")
        return reduction_hom(n, m)
    return make_ring_hom(R1, R2, spec)


def _raise(exc):
    raise exc


def _module_hom_table(M1: FiniteModule, M2: FiniteModule, spec):
    if spec in (None, "identity"):
        if M1 != M2:
            raise InvalidSpec("identity needs equal modules")
        return np.arange(M1.order)
    if spec == "reduction":
        if M1.order % M2.order:
            raise InvalidSpec("reduction needs |M2| dividing |M1|")
        return np.arange(M1.order) % M2.order
    return np.asarray(spec)


def make_amalgamation_from_recipe(spec: dict, ring_cap: int = DEFAULT_ORDER_CAP,
                                  module_cap: int = DEFAULT_MODULE_CAP) -> AmalgamationContext:
    """``{"R1", "R2", "f", "J", "M1", "M2", "phi"}`` with nested ring/module recipes.

    ``J`` is a list of generators in ``R2``; ``f`` and ``phi`` are tables
    or one of ``"identity"`` / ``"reduction"``.
    """
    R1 = make_ring(spec["R1"], ring_cap)
    R2 = make_ring(spec.get("R2", spec["R1"]), ring_cap)
    f = _hom_from_recipe(R1, R2, spec.get("f"))
    J = ideal_span(R2, [R2.index(g) for g in spec.get("J", [])])
    M1 = make_module(spec.get("M1", {"regular": R1}), module_cap, ring_cap)
    M2 = make_module(spec.get("M2", {"regular": R2}), module_cap, ring_cap)
    phi = _module_hom_table(M1, M2, spec.get("phi"))
    return make_amalgamation(R1, R2, f, J, M1, M2, phi, ring_cap, module_cap)


def make_construction_ring(kind: str, arg, cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    if kind == "idealization":
        M = make_module(arg["module"], DEFAULT_MODULE_CAP, cap)
        return idealize(M.ring, M, cap)
    if kind == "duplication":
        R = make_ring(arg["ring"], cap)
        J = ideal_span(R, [R.index(g) for g in arg.get("J", [])])
        return make_duplication(regular(R), J, ring_cap=cap).ring
    if kind == "amalgamation":
        return make_amalgamation_from_recipe(arg, ring_cap=cap).ring
    raise InvalidSpec(f"unknown construction {kind!r}")


__all__ = [
    "AmalgamationContext", "HAProbe", "amalg_multset", "amalg_submodule", "dup_bar", "dup_join",
    "dup_multset_bar", "dup_multset_join", "embedded_module", "homog_ideal", "idealization_multset",
    "idealize", "lemma_ha_probe", "make_amalgamation", "make_amalgamation_from_recipe",
    "make_construction_ring", "make_duplication", "radical_identity_holds",
]
