"""Finite unital modules over finite rings and the submodule calculus."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _lattice
from .errors import (
    ActionUndefined,
    CapExceeded,
    EmptyMultSet,
    ImageNotSubmodule,
    InvalidSpec,
    MethodInapplicable,
    NotASubmodule,
    NotAdditive,
    NotLinear,
    NotMultiplicationModule,
)
from .rings import (
    DEFAULT_ORDER_CAP,
    FiniteRing,
    Ideal,
    MultClosedSet,
    RingHom,
    _frozen,
    _Subset,
    coset_partition,
    ideal_product,
    make_ring,
    pair_label,
    radical_of_ideal,
    zn,
)
from . import rings as _rings

DEFAULT_LATTICE_CAP = 4096
DEFAULT_MODULE_CAP = 256


@dataclass(frozen=True, eq=False)
class FiniteModule:
    """A finite unital module: an abelian group table plus a scalar action.

    ``act[r, m]`` is the index of ``r*m``.
    """

    id: str
    ring: FiniteRing
    add: np.ndarray
    act: np.ndarray
    zero: int
    labels: tuple[str, ...]
    provenance: tuple = ()
    lattice_cap: int = DEFAULT_LATTICE_CAP

    def __post_init__(self):
        object.__setattr__(self, "add", _frozen(self.add))
        object.__setattr__(self, "act", _frozen(self.act))
        k = self.add.shape[0]
        if self.add.shape != (k, k) or self.act.shape != (self.ring.order, k):
            raise InvalidSpec(f"module {self.id}: table shapes do not match")
        if len(self.labels) != k:
            raise InvalidSpec(f"module {self.id}: wrong number of labels")

    @property
    def ring_id(self) -> str:
        return self.ring.id

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @cached_property
    def neg(self) -> np.ndarray:
        out = np.argmax(self.add == self.zero, axis=1).astype(np.int32)
        out.setflags(write=False)
        return out

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def index(self, ref) -> int:
        if isinstance(ref, (int, np.integer)) and not isinstance(ref, bool):
            if 0 <= ref < self.order:
                return int(ref)
            raise InvalidSpec(f"module {self.id}: index {ref} out of range")
        try:
            return self._label_index[str(ref)]
        except KeyError:
            raise InvalidSpec(f"module {self.id}: unknown element {ref!r}") from None

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def submodules(self) -> list["Submodule"]:
        masks = _lattice.enumerate_closed(self.add, self.act, self.zero, self.lattice_cap)
        return [Submodule._from_mask(self, m) for m in masks]

    @cached_property
    def properties(self) -> "ModuleProperties":
        return module_properties(self)

    @cached_property
    def whole(self) -> "Submodule":
        return Submodule._from_mask(self, np.ones(self.order, dtype=bool))

    @cached_property
    def zero_sub(self) -> "Submodule":
        mask = np.zeros(self.order, dtype=bool)
        mask[self.zero] = True
        return Submodule._from_mask(self, mask)

    def __eq__(self, other):
        return isinstance(other, FiniteModule) and other.id == self.id

    def __hash__(self):
        return hash(("module", self.id))

    def __repr__(self):
        return f"FiniteModule({self.id} over {self.ring.id}, order={self.order})"


def audit_module(M: FiniteModule) -> list[str]:
    R, add, act, k = M.ring, M.add, M.act, M.order
    bad = []
    ix = np.arange(k)
    if not (add[M.zero] == ix).all():
        bad.append("additive identity")
    if not (add == add.T).all():
        bad.append("additive commutativity")
    if not (add[add] == add[:, add]).all():
        bad.append("additive associativity")
    if not (add == M.zero).any(axis=1).all():
        bad.append("additive inverses")
    if not (act[R.one] == ix).all():
        bad.append("unital action")
    # r(m + n) = rm + rn
    if not (act[:, add] == add[act[:, :, None], act[:, None, :]]).all():
        bad.append("additive in the module argument")
    # (r + s)m = rm + sm
    if not (act[R.add] == add[act[:, None, :], act[None, :, :]]).all():
        bad.append("additive in the ring argument")
    # r(sm) = (rs)m
    if not (act[:, act] == act[R.mul]).all():
        bad.append("associative action")
    return bad


def _validated(M: FiniteModule, cap: int = DEFAULT_MODULE_CAP) -> FiniteModule:
    if M.order > cap:
        raise CapExceeded(f"module {M.id} has order {M.order} > cap {cap}")
    bad = audit_module(M)
    if bad:
        raise InvalidSpec(f"module {M.id} fails axioms: {', '.join(bad)}")
    return M


# ---------------------------------------------------------------------------
# constructors


def regular(R: FiniteRing) -> FiniteModule:
    return FiniteModule(f"{R.id}", R, R.add, R.mul, R.zero, R.labels, ("regular", R.id))


def zero_module(R: FiniteRing) -> FiniteModule:
    return FiniteModule(f"0@{R.id}", R, [[0]], np.zeros((R.order, 1), dtype=int), 0, ("0",),
                        ("zero", R.id))


def reduction(n: int, m: int) -> FiniteModule:
    """Z_m as a Z_n-module; needs m | n."""
    if m < 1 or n % m:
        raise ActionUndefined(f"Z_{m} is not a Z_{n}-module ({m} does not divide {n})")
    if m == 1:
        return zero_module(zn(n))
    ix = np.arange(m)
    r = np.arange(n)
    return FiniteModule(f"Z{m}@Z{n}", zn(n), (ix[:, None] + ix) % m, (r[:, None] * ix) % m, 0,
                        tuple(str(i) for i in range(m)), ("reduction", n, m))


def restriction(M: FiniteModule, f: RingHom) -> FiniteModule:
    """``M`` viewed as a module over ``f.source`` through ``r*m = f(r)m``."""
    if f.target != M.ring:
        raise InvalidSpec("ring hom target is not the module's ring")
    if f.is_identity:
        return M
    return FiniteModule(f"{M.id}@{f.source.id}", f.source, M.add, M.act[f.table], M.zero, M.labels,
                        ("restriction", M.id, f.source.id))


def _pair_tables(A_add, B_add):
    na, nb = A_add.shape[0], B_add.shape[0]
    ia, ib = np.divmod(np.arange(na * nb), nb)
    return A_add[ia[:, None], ia] * nb + B_add[ib[:, None], ib], ia, ib


def direct_sum(*mods: FiniteModule, cap: int = DEFAULT_MODULE_CAP) -> FiniteModule:
    """External direct sum of modules over one ring."""
    if len(mods) < 2:
        raise InvalidSpec("direct_sum needs at least two summands")
    if len(mods) > 2:
        return direct_sum(direct_sum(*mods[:-1], cap=cap), mods[-1], cap=cap)
    A, B = mods
    if A.ring != B.ring:
        raise InvalidSpec("direct_sum summands must share the ring")
    if A.order * B.order > cap:
        raise CapExceeded(f"direct sum order {A.order * B.order} > cap {cap}")
    nb = B.order
    add, ia, ib = _pair_tables(A.add, B.add)
    act = A.act[:, ia] * nb + B.act[:, ib]
    labels = tuple(pair_label(A.labels[a], B.labels[b]) for a, b in zip(ia, ib))
    return FiniteModule(f"({A.id}+{B.id})", A.ring, add, act, A.zero * nb + B.zero, labels,
                        ("direct_sum", A.id, B.id))


def product(A: FiniteModule, B: FiniteModule, cap: int = DEFAULT_MODULE_CAP) -> FiniteModule:
    """``A x B`` as a module over ``A.ring x B.ring`` (componentwise action)."""
    P = _rings.product(A.ring, B.ring, cap=max(cap, A.ring.order * B.ring.order))
    if A.order * B.order > cap:
        raise CapExceeded(f"product module order {A.order * B.order} > cap {cap}")
    nb = B.order
    add, ia, ib = _pair_tables(A.add, B.add)
    ra, rb = np.divmod(np.arange(P.order), B.ring.order)
    act = A.act[ra[:, None], ia[None, :]] * nb + B.act[rb[:, None], ib[None, :]]
    labels = tuple(pair_label(A.labels[a], B.labels[b]) for a, b in zip(ia, ib))
    return FiniteModule(f"({A.id}x{B.id})", P, add, act, A.zero * nb + B.zero, labels,
                        ("product", A.id, B.id))


def from_tables(R: FiniteRing, add, act, zero: int = 0, labels=None, id: str | None = None,
                cap: int = DEFAULT_MODULE_CAP) -> FiniteModule:
    add = np.asarray(add)
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(add.shape[0]))
    if id is None:
        id = "T" + str(abs(hash((add.tobytes(), np.asarray(act).tobytes()))) % 10**10)
    return _validated(FiniteModule(id, R, add, act, zero, labels, ("tables",)), cap)


def quotient(M: FiniteModule, K: "Submodule") -> tuple[FiniteModule, "ModuleHom"]:
    """``M/K`` with the canonical projection."""
    if K.module != M:
        raise NotASubmodule("K is not a submodule of M")
    rep = coset_partition(M.add, K.mask)
    reps = np.unique(rep)
    pos = np.full(M.order, -1)
    pos[reps] = np.arange(len(reps))
    add = pos[rep[M.add[np.ix_(reps, reps)]]]
    act = pos[rep[M.act[:, reps]]]
    labels = tuple(f"[{M.labels[r]}]" for r in reps)
    Q = FiniteModule(f"{M.id}/{K.short()}", M.ring, add, act, int(pos[rep[M.zero]]), labels,
                     ("quotient", M.id, K.members))
    return Q, ModuleHom(M, Q, _frozen(pos[rep]))


def submodule_as_module(N: "Submodule") -> tuple[FiniteModule, "ModuleHom"]:
    """``N`` as a module in its own right, with the inclusion into the ambient module."""
    M = N.module
    mem = np.array(N.members)
    pos = np.full(M.order, -1)
    pos[mem] = np.arange(len(mem))
    sub = FiniteModule(f"{N.short()}<{M.id}", M.ring, pos[M.add[np.ix_(mem, mem)]],
                       pos[M.act[:, mem]], int(pos[M.zero]), tuple(M.labels[i] for i in mem),
                       ("submodule", M.id, N.members))
    return sub, ModuleHom(sub, M, _frozen(mem))


def make_module(recipe, cap: int = DEFAULT_MODULE_CAP, ring_cap: int = DEFAULT_ORDER_CAP):
    """Build a validated module from a recipe dict.

    ``{"regular": ring}``, ``{"reduction": {"n": n, "m": m}}``,
    ``{"direct_sum": [...]}``, ``{"product": [A, B]}``,
    ``{"quotient": {"module": M, "gens": [...]}}`` (returns ``(Q, projection)``),
    ``{"zero": ring}`` and ``{"tables": {"ring": r, "add": ..., "act": ...}}``.
    """
    if isinstance(recipe, FiniteModule):
        return recipe
    if not isinstance(recipe, dict) or len(recipe) != 1:
        raise InvalidSpec(f"bad module recipe {recipe!r}")
    (kind, arg), = recipe.items()
    if kind == "regular":
        return _validated(regular(make_ring(arg, ring_cap)), cap)
    if kind == "zero":
        return zero_module(make_ring(arg, ring_cap))
    if kind == "reduction":
        return _validated(reduction(int(arg["n"]), int(arg["m"])), cap)
    if kind == "direct_sum":
        return _validated(direct_sum(*(make_module(r, cap, ring_cap) for r in arg), cap=cap), cap)
    if kind == "product":
        A, B = (make_module(r, cap, ring_cap) for r in arg)
        return _validated(product(A, B, cap=cap), cap)
    if kind == "quotient":
        M = make_module(arg["module"], cap, ring_cap)
        K = submodule_span(M, [M.index(g) for g in arg.get("gens", [])])
        return quotient(M, K)
    if kind == "tables":
        R = make_ring(arg["ring"], ring_cap)
        return from_tables(R, arg["add"], arg["act"], arg.get("zero", 0), arg.get("labels"),
                           arg.get("id"), cap)
    raise InvalidSpec(f"unknown module recipe {kind!r}")


# ---------------------------------------------------------------------------
# submodules


class Submodule(_Subset):
    __slots__ = ("module",)

    def __init__(self, module: FiniteModule, members: Iterable[int]):
        mask = np.zeros(module.order, dtype=bool)
        mask[list(members)] = True
        self.module = module
        self._init(mask)
        bad = _submodule_violation(module, self.mask)
        if bad:
            raise NotASubmodule(f"not a submodule of {module.id}: {bad}")

    @classmethod
    def _from_mask(cls, module: FiniteModule, mask) -> "Submodule":
        obj = cls.__new__(cls)
        obj.module = module
        obj._init(mask)
        return obj

    @property
    def module_id(self) -> str:
        return self.module.id

    @property
    def is_proper(self) -> bool:
        return len(self) < self.module.order

    @property
    def is_zero(self) -> bool:
        return len(self) == 1

    def short(self) -> str:
        return "{" + ",".join(self.module.labels[i] for i in self.members) + "}"

    def __eq__(self, other):
        return (isinstance(other, Submodule) and other.module == self.module
                and other.members == self.members)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("sub", self.module.id, self.members))
        return self._hash

    def __repr__(self):
        return f"Submodule({self.module.id}, {self.short()})"


def _submodule_violation(M: FiniteModule, mask: np.ndarray) -> str | None:
    if not mask[M.zero]:
        return "missing zero"
    m = np.flatnonzero(mask)
    if not mask[M.add[np.ix_(m, m)]].all():
        return "not closed under addition"
    if not mask[M.act[:, m]].all():
        return "not closed under the ring action"
    return None


def submodule_span(M: FiniteModule, gens: Iterable[int]) -> Submodule:
    return Submodule._from_mask(M, _lattice.span_mask(M.add, M.act, M.zero, [int(g) for g in gens]))


def submodule_sum(N: Submodule, K: Submodule) -> Submodule:
    return Submodule._from_mask(N.module, _lattice.join_masks(N.module.add, N.mask, K.mask))


def submodule_intersection(N: Submodule, K: Submodule) -> Submodule:
    return Submodule._from_mask(N.module, N.mask & K.mask)


def enumerate_submodules(M: FiniteModule, cap: int | None = None) -> list[Submodule]:
    """All submodules, smallest first (ties broken by member tuple).

    ``cap`` overrides the module's lattice cap for this call only.
    """
    if cap is None or cap == M.lattice_cap:
        return M.submodules
    masks = _lattice.enumerate_closed(M.add, M.act, M.zero, cap)
    return [Submodule._from_mask(M, m) for m in masks]


def residual_in_ring(N: Submodule, M: FiniteModule | None = None) -> Ideal:
    """``(N :_R M) = {r : rM <= N}``."""
    M = N.module if M is None else M
    return Ideal._from_mask(M.ring, N.mask[M.act].all(axis=1))


def residual_by_submodule(N: Submodule, K: Submodule) -> Ideal:
    """``(N :_R K) = {r : rK <= N}``."""
    M = N.module
    return Ideal._from_mask(M.ring, N.mask[M.act[:, list(K.members)]].all(axis=1))


def annihilator(M: FiniteModule) -> Ideal:
    return residual_in_ring(M.zero_sub, M)


def residual_in_module(N: Submodule, by) -> Submodule:
    """``(N :_M A) = {m : Am <= N}`` for a ring element or a collection of them."""
    M = N.module
    rows = [int(by)] if isinstance(by, (int, np.integer)) else [int(a) for a in by]
    if not rows:
        return M.whole
    return Submodule._from_mask(M, N.mask[M.act[rows]].all(axis=0))


def zero_divisors_on(M: FiniteModule) -> frozenset[int]:
    """``Z(M) = {r : rm = 0 for some nonzero m}``."""
    nz = np.arange(M.order) != M.zero
    return frozenset(np.flatnonzero(((M.act == M.zero) & nz).any(axis=1)).tolist())


@dataclass(frozen=True)
class ModuleProperties:
    faithful: bool
    multiplication: bool
    zdivisors: frozenset[int]


def _is_multiplication(M: FiniteModule) -> bool:
    for N in M.submodules:
        if ideal_action(residual_in_ring(N, M), M) != N:
            return False
    return True


def module_properties(M: FiniteModule) -> ModuleProperties:
    return ModuleProperties(
        faithful=len(annihilator(M)) == 1,
        multiplication=_is_multiplication(M),
        zdivisors=zero_divisors_on(M),
    )


def ideal_action(I: Ideal, M: FiniteModule) -> Submodule:
    """``IM``: the span of all ``a*m`` with ``a`` in ``I``."""
    if I.ring != M.ring:
        raise InvalidSpec("ideal and module live over different rings")
    vals = np.unique(M.act[list(I.members)])
    return submodule_span(M, vals.tolist())


def ideal_times_submodule(I: Ideal, K: Submodule) -> Submodule:
    """``IK``: the span of ``a*k`` for ``a`` in ``I`` and ``k`` in ``K``."""
    M = K.module
    vals = np.unique(M.act[np.ix_(I.members, K.members)])
    return submodule_span(M, vals.tolist())


def presentations(N: Submodule) -> list[Ideal]:
    """All ideals ``I`` with ``IM = N``."""
    M = N.module
    return [I for I in M.ring.ideals if ideal_action(I, M) == N]


def submodule_product(N: Submodule, K: Submodule, audit: bool = False) -> Submodule:
    """``NK = (N:M)(K:M)M`` on a multiplication module.

    With ``audit=True`` every pair of ideal presentations of ``N`` and ``K``
    is tried and must give the same product.
    """
    M = N.module
    if not M.properties.multiplication:
        raise NotMultiplicationModule(f"{M.id} is not a multiplication module")
    out = ideal_action(ideal_product(residual_in_ring(N, M), residual_in_ring(K, M)), M)
    if audit:
        for I in presentations(N):
            for J in presentations(K):
                if ideal_action(ideal_product(I, J), M) != out:
                    raise AssertionError(f"product depends on presentation: {I} {J}")
    return out


def is_prime_submodule(P: Submodule) -> bool:
    M = P.module
    if not P.is_proper:
        return False
    inP = P.mask[M.act]
    res = inP.all(axis=1)
    return not (inP & ~res[:, None] & ~P.mask[None, :]).any()


def m_radical(N: Submodule, method: str = "auto") -> Submodule:
    """``M-rad(N)``: intersection of the prime submodules containing ``N``.

    ``method="mult_formula"`` uses ``sqrt((N:M)) M`` and is only valid on
    multiplication modules.  When no prime submodule contains ``N`` the
    result is ``M``.
    """
    M = N.module
    if method == "auto":
        method = "mult_formula" if M.properties.multiplication else "definition"
    if method == "mult_formula":
        if not M.properties.multiplication:
            raise MethodInapplicable(f"{M.id} is not a multiplication module")
        return ideal_action(radical_of_ideal(residual_in_ring(N, M)), M)
    if method == "definition":
        mask = np.ones(M.order, dtype=bool)
        for P in M.submodules:
            if N <= P and is_prime_submodule(P):
                mask &= P.mask
        return Submodule._from_mask(M, mask)
    raise InvalidSpec(f"unknown M-rad method {method!r}")


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class ModuleHom:
    source: FiniteModule
    target: FiniteModule
    table: np.ndarray = field(repr=False)
    scalar_bridge: RingHom | None = None

    def __call__(self, m):
        return self.table[m]

    @cached_property
    def is_injective(self) -> bool:
        return len(np.unique(self.table)) == self.source.order

    @cached_property
    def is_surjective(self) -> bool:
        return len(np.unique(self.table)) == self.target.order

    @cached_property
    def kernel(self) -> Submodule:
        return Submodule._from_mask(self.source, self.table == self.target.zero)


def make_hom(source: FiniteModule, target: FiniteModule, table: Sequence[int],
             scalar_bridge: RingHom | None = None) -> ModuleHom:
    t = _frozen(table)
    if t.shape != (source.order,) or t.min() < 0 or t.max() >= target.order:
        raise NotAdditive("table is not a total map between the carriers")
    if not (t[source.add] == target.add[t[:, None], t[None, :]]).all():
        raise NotAdditive("h(m + n) != h(m) + h(n)")
    if scalar_bridge is None:
        if source.ring != target.ring:
            raise NotLinear("modules over different rings need a scalar bridge")
        f = np.arange(source.ring.order)
    else:
        if scalar_bridge.source != source.ring or scalar_bridge.target != target.ring:
            raise NotLinear("scalar bridge does not connect the two scalar rings")
        f = scalar_bridge.table
    if not (t[source.act] == target.act[f[:, None], t[None, :]]).all():
        raise NotLinear("h(rm) != f(r)h(m)")
    return ModuleHom(source, target, t, scalar_bridge)


def hom_transport(h: ModuleHom, N: Submodule, direction: str) -> Submodule:
    if direction == "image":
        if N.module != h.source:
            raise NotASubmodule("N is not a submodule of the source")
        mask = np.zeros(h.target.order, dtype=bool)
        mask[h.table[list(N.members)]] = True
        if _submodule_violation(h.target, mask):
            raise ImageNotSubmodule("image is not a submodule of the target")
        return Submodule._from_mask(h.target, mask)
    if direction == "preimage":
        if N.module != h.target:
            raise NotASubmodule("N is not a submodule of the target")
        return Submodule._from_mask(h.source, N.mask[h.table])
    raise InvalidSpec(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# localization


@dataclass(frozen=True, eq=False)
class LocalizedStructure:
    """Fractions ``x/s`` of a ring or module by a multiplicative set.

    ``classes[c]`` lists the ``(x, s)`` pairs in class ``c``;
    ``canonical_map[x]`` is the class of ``x/1``.
    ``ring`` is the localized scalar ring and ``module`` the localized
    module (``None`` when a ring was localized).
    """

    base_id: str
    mult_set: MultClosedSet
    classes: tuple[tuple[tuple[int, int], ...], ...]
    canonical_map: np.ndarray
    ring: FiniteRing
    module: FiniteModule | None
    ring_loc: "LocalizedStructure | None" = None
    class_of: dict = field(default_factory=dict, repr=False)

    def localize_submodule(self, N: Submodule) -> Submodule:
        """``S^{-1}N``: the classes meeting ``N x S``."""
        if self.module is None:
            raise InvalidSpec("localize_submodule needs a localized module")
        mask = np.zeros(self.module.order, dtype=bool)
        for c, pairs in enumerate(self.classes):
            mask[c] = any(N.mask[x] for x, _ in pairs)
        return Submodule._from_mask(self.module, mask)

    def localize_ideal(self, I: Ideal) -> Ideal:
        base = self if self.module is None else self.ring_loc
        mask = np.zeros(base.ring.order, dtype=bool)
        for c, pairs in enumerate(base.classes):
            mask[c] = any(I.mask[x] for x, _ in pairs)
        return Ideal._from_mask(base.ring, mask)


def _fraction_classes(order, sub, act, S_members, zero, kill):
    """Partition ``carrier x S`` under ``(x,s) ~ (y,t)  iff  u(tx - sy) = 0`` for some u in S."""
    pairs = [(x, s) for x in range(order) for s in S_members]
    rep_x: list[int] = []
    rep_s: list[int] = []
    members: list[list[tuple[int, int]]] = []
    class_of = {}
    for x, s in pairs:
        if rep_x:
            rx = np.array(rep_x)
            rs = np.array(rep_s)
            z = sub(act[rs, x], act[s, rx])
            hit = np.flatnonzero(kill[z])
        else:
            hit = ()
        if len(hit):
            c = int(hit[0])
        else:
            c = len(rep_x)
            rep_x.append(x)
            rep_s.append(s)
            members.append([])
        members[c].append((x, s))
        class_of[(x, s)] = c
    return members, class_of


def _kill_vector(act, S_members, zero):
    return (act[list(S_members)] == zero).any(axis=0)


def _localize_ring(R: FiniteRing, S: MultClosedSet) -> LocalizedStructure:
    Sm = list(S.members)
    kill = _kill_vector(R.mul, Sm, R.zero)
    members, class_of = _fraction_classes(R.order, R.sub, R.mul, Sm, R.zero, kill)
    n = len(members)
    if n == 1:
        raise InvalidSpec("localization is the zero ring (the set contains a nilpotent)")
    reps = [m[0] for m in members]
    add = np.zeros((n, n), dtype=int)
    mul = np.zeros((n, n), dtype=int)
    for i, (x, s) in enumerate(reps):
        for j, (y, t) in enumerate(reps):
            st = int(R.mul[s, t])
            add[i, j] = class_of[(int(R.add[R.mul[t, x], R.mul[s, y]]), st)]
            mul[i, j] = class_of[(int(R.mul[x, y]), st)]
    s0 = Sm[0]
    canon = np.array([class_of[(int(R.mul[s0, x]), s0)] for x in range(R.order)])
    labels = tuple(f"{R.labels[x]}/{R.labels[s]}" for x, s in reps)
    L = FiniteRing(f"{R.id}[{S.short()}^-1]", add, mul, canon[R.zero], canon[R.one], labels,
                   ("localization", R.id, S.members))
    return LocalizedStructure(R.id, S, tuple(tuple(m) for m in members), _frozen(canon), L, None,
                              None, class_of)


def audit_localization(L: LocalizedStructure, base) -> list[str]:
    """Exhaustively verify well-definedness of the induced operations."""
    bad = []
    S = L.mult_set
    R = S.ring
    if L.module is None:
        for cx in range(len(L.classes)):
            for cy in range(len(L.classes)):
                sums = set()
                prods = set()
                for x, s in L.classes[cx]:
                    for y, t in L.classes[cy]:
                        st = int(R.mul[s, t])
                        sums.add(L.class_of[(int(R.add[R.mul[t, x], R.mul[s, y]]), st)])
                        prods.add(L.class_of[(int(R.mul[x, y]), st)])
                if sums != {int(L.ring.add[cx, cy])}:
                    bad.append(f"addition of classes {cx},{cy}")
                if prods != {int(L.ring.mul[cx, cy])}:
                    bad.append(f"multiplication of classes {cx},{cy}")
        return bad
    M = base
    RL = L.ring_loc
    for cx in range(len(L.classes)):
        for cy in range(len(L.classes)):
            sums = set()
            for m, s in L.classes[cx]:
                for n, t in L.classes[cy]:
                    sums.add(L.class_of[(int(M.add[M.act[t, m], M.act[s, n]]), int(R.mul[s, t]))])
            if sums != {int(L.module.add[cx, cy])}:
                bad.append(f"addition of classes {cx},{cy}")
    for cr in range(len(RL.classes)):
        for cm in range(len(L.classes)):
            vals = set()
            for r, s in RL.classes[cr]:
                for m, t in L.classes[cm]:
                    vals.add(L.class_of[(int(M.act[r, m]), int(R.mul[s, t]))])
            if vals != {int(L.module.act[cr, cm])}:
                bad.append(f"action of ring class {cr} on class {cm}")
    return bad


def _localize_module(M: FiniteModule, S: MultClosedSet, audit: bool) -> LocalizedStructure:
    R = M.ring
    RL = _localize_ring(R, S)
    if audit:
        _audit_ring_loc(RL, R)
    Sm = list(S.members)
    kill = _kill_vector(M.act, Sm, M.zero)
    members, class_of = _fraction_classes(M.order, M.sub, M.act, Sm, M.zero, kill)
    n = len(members)
    reps = [m[0] for m in members]
    add = np.zeros((n, n), dtype=int)
    for i, (x, s) in enumerate(reps):
        for j, (y, t) in enumerate(reps):
            add[i, j] = class_of[(int(M.add[M.act[t, x], M.act[s, y]]), int(R.mul[s, t]))]
    act = np.zeros((RL.ring.order, n), dtype=int)
    for i, (r, s) in enumerate(m[0] for m in RL.classes):
        for j, (x, t) in enumerate(reps):
            act[i, j] = class_of[(int(M.act[r, x]), int(R.mul[s, t]))]
    s0 = Sm[0]
    canon = np.array([class_of[(int(M.act[s0, x]), s0)] for x in range(M.order)])
    labels = tuple(f"{M.labels[x]}/{R.labels[s]}" for x, s in reps)
    LM = FiniteModule(f"{M.id}[{S.short()}^-1]", RL.ring, add, act, int(canon[M.zero]), labels,
                      ("localization", M.id, S.members))
    out = LocalizedStructure(M.id, S, tuple(tuple(m) for m in members), _frozen(canon), RL.ring,
                             LM, RL, class_of)
    if audit:
        bad = audit_localization(out, M) + audit_module(LM)
        if bad:
            raise InvalidSpec(f"localized module is ill-defined: {bad[:3]}")
    return out


def _audit_ring_loc(L: LocalizedStructure, R: FiniteRing) -> None:
    bad = audit_localization(L, R) + _rings.audit_ring(L.ring)
    if bad:
        raise InvalidSpec(f"localized ring is ill-defined: {bad[:3]}")


def localize(target, S: MultClosedSet, audit: bool = True) -> LocalizedStructure:
    if S is None or len(S) == 0:
        raise EmptyMultSet("localization needs a nonempty multiplicative set")
    if isinstance(target, FiniteRing):
        if S.ring != target:
            raise InvalidSpec("multiplicative set lives in another ring")
        L = _localize_ring(target, S)
        if audit:
            _audit_ring_loc(L, target)
        return L
    if S.ring != target.ring:
        raise InvalidSpec("multiplicative set lives in another ring")
    return _localize_module(target, S, audit)

