"""Finite commutative rings with identity, their ideals and multiplicative sets.

Every ring is stored as dense operation tables over the index range
``0..order-1``; all the calculus in this module is a table scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _lattice
from .errors import (
    CapExceeded,
    EmptyGenerators,
    ImproperIdeal,
    InvalidSpec,
    MissingIdeal,
    NotRingHom,
)

DEFAULT_ORDER_CAP = 96


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.int32)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite commutative ring with nonzero identity, given by tables.

    ``add[a, b]`` and ``mul[a, b]`` hold the indices of ``a + b`` and
    ``a * b``.  Instances are compared by ``id``; two rings built from the
    same recipe share an id and identical tables.
    """

    id: str
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    labels: tuple[str, ...]
    provenance: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "add", _frozen(self.add))
        object.__setattr__(self, "mul", _frozen(self.mul))
        n = self.add.shape[0]
        if self.add.shape != (n, n) or self.mul.shape != (n, n):
            raise InvalidSpec(f"ring {self.id}: tables must be square")
        if len(self.labels) != n:
            raise InvalidSpec(f"ring {self.id}: {len(self.labels)} labels for order {n}")

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def neg(self) -> np.ndarray:
        out = np.argmax(self.add == self.zero, axis=1).astype(np.int32)
        out.setflags(write=False)
        return out

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def power(self, x: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = int(self.mul[out, x])
        return out

    def label(self, x: int) -> str:
        return self.labels[x]

    def index(self, ref) -> int:
        """Resolve an element reference (label string or index)."""
        if isinstance(ref, (int, np.integer)) and not isinstance(ref, bool):
            if 0 <= ref < self.order:
                return int(ref)
            raise InvalidSpec(f"ring {self.id}: index {ref} out of range")
        try:
            return self._label_index[str(ref)]
        except KeyError:
            raise InvalidSpec(f"ring {self.id}: unknown element {ref!r}") from None

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def units(self) -> frozenset[int]:
        return frozenset(np.flatnonzero((self.mul == self.one).any(axis=1)).tolist())

    @cached_property
    def is_reduced(self) -> bool:
        return len(radical_of_ideal(zero_ideal(self))) == 1

    @cached_property
    def ideals(self) -> list["Ideal"]:
        masks = _lattice.enumerate_closed(self.add, self.mul, self.zero, cap=1 << 20)
        return [Ideal._from_mask(self, m) for m in masks]

    def __eq__(self, other):
        return isinstance(other, FiniteRing) and other.id == self.id

    def __hash__(self):
        return hash(("ring", self.id))

    def __repr__(self):
        return f"FiniteRing({self.id}, order={self.order})"


@dataclass(frozen=True)
class RingElement:
    ring_id: str
    idx: int


def audit_ring(R: FiniteRing) -> list[str]:
    """Exhaustive axiom audit; returns the list of violated axioms."""
    add, mul, n = R.add, R.mul, R.order
    bad = []
    if R.zero == R.one:
        bad.append("zero equals one")
    ix = np.arange(n)
    if not (add[R.zero] == ix).all():
        bad.append("additive identity")
    if not (add == add.T).all():
        bad.append("additive commutativity")
    if not (add[add] == add[:, add]).all():
        # add[add][a, b, c] = add[add[a, b], c] ; add[:, add][a, b, c] = add[a, add[b, c]]
        bad.append("additive associativity")
    if not (add == R.zero).any(axis=1).all():
        bad.append("additive inverses")
    if not (mul[R.one] == ix).all():
        bad.append("multiplicative identity")
    if not (mul == mul.T).all():
        bad.append("multiplicative commutativity")
    if not (mul[mul] == mul[:, mul]).all():
        bad.append("multiplicative associativity")
    # a(b + c) == ab + ac
    lhs = mul[:, add]
    rhs = add[mul[:, :, None], mul[:, None, :]]
    if not (lhs == rhs).all():
        bad.append("distributivity")
    return bad


def _validated(R: FiniteRing, cap: int) -> FiniteRing:
    if R.order > cap:
        raise CapExceeded(f"ring {R.id} has order {R.order} > cap {cap}")
    bad = audit_ring(R)
    if bad:
        raise InvalidSpec(f"ring {R.id} fails axioms: {', '.join(bad)}")
    return R


def from_tables(add, mul, zero: int = 0, one: int = 1, labels=None, id: str | None = None,
                cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    add = np.asarray(add)
    n = add.shape[0]
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    if id is None:
        id = "T" + str(abs(hash((add.tobytes(), np.asarray(mul).tobytes()))) % 10**10)
    return _validated(FiniteRing(id, add, mul, zero, one, labels, ("tables",)), cap)


def zn(n: int) -> FiniteRing:
    if n < 2:
        raise InvalidSpec(f"Z_n needs n >= 2, got {n}")
    ix = np.arange(n)
    return FiniteRing(
        f"Z{n}", (ix[:, None] + ix) % n, (ix[:, None] * ix) % n, 0, 1,
        tuple(str(i) for i in range(n)), ("zn", n),
    )


def pair_label(a: str, b: str) -> str:
    return f"({a}|{b})"


def product(*rings: FiniteRing, cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Direct product; element index is the lexicographic (row-major) index."""
    if len(rings) < 2:
        raise InvalidSpec("product needs at least two factors")
    if len(rings) > 2:
        return product(product(*rings[:-1], cap=cap), rings[-1], cap=cap)
    A, B = rings
    if A.order * B.order > cap:
        raise CapExceeded(f"product order {A.order * B.order} > cap {cap}")
    nb = B.order
    ia, ib = np.divmod(np.arange(A.order * nb), nb)
    add = A.add[ia[:, None], ia] * nb + B.add[ib[:, None], ib]
    mul = A.mul[ia[:, None], ia] * nb + B.mul[ib[:, None], ib]
    labels = tuple(pair_label(A.labels[a], B.labels[b]) for a, b in zip(ia, ib))
    return FiniteRing(
        f"({A.id}x{B.id})", add, mul, A.zero * nb + B.zero, A.one * nb + B.one,
        labels, ("product", A.id, B.id),
    )


def coset_partition(add: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Map each element to the least index of its coset modulo a subgroup."""
    members = np.flatnonzero(mask)
    # coset of x is {x + k : k in subgroup}; least element is the representative
    return add[:, members].min(axis=1)


def quotient(R: FiniteRing, I: "Ideal") -> FiniteRing:
    if I.ring != R:
        raise InvalidSpec("ideal belongs to a different ring")
    if not I.is_proper:
        raise InvalidSpec("quotient by the whole ring")
    rep = coset_partition(R.add, I.mask)
    reps = np.unique(rep)
    pos = np.full(R.order, -1)
    pos[reps] = np.arange(len(reps))
    add = pos[rep[R.add[np.ix_(reps, reps)]]]
    mul = pos[rep[R.mul[np.ix_(reps, reps)]]]
    labels = tuple(f"[{R.labels[r]}]" for r in reps)
    return FiniteRing(
        f"{R.id}/{I.short()}", add, mul, int(pos[rep[R.zero]]), int(pos[rep[R.one]]),
        labels, ("quotient", R.id, I.members),
    )


def quotient_map(R: FiniteRing, I: "Ideal", Q: FiniteRing) -> "RingHom":
    rep = coset_partition(R.add, I.mask)
    reps = np.unique(rep)
    pos = np.full(R.order, -1)
    pos[reps] = np.arange(len(reps))
    return make_ring_hom(R, Q, pos[rep])


def make_ring(recipe, cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Build a validated ring from a recipe.

    Recipes are dicts with one key: ``{"zn": n}``, ``{"product": [r1, r2, ...]}``,
    ``{"quotient": {"ring": r, "gens": [...]}}`` or ``{"tables": {...}}``.
    Nested recipes may be given in place of rings.  The idealization,
    duplication and amalgamation recipes are handled by
    :func:`wsprimary.constructions.make_construction_ring`.
    """
    if isinstance(recipe, FiniteRing):
        return recipe
    if not isinstance(recipe, dict) or len(recipe) != 1:
        raise InvalidSpec(f"bad ring recipe {recipe!r}")
    (kind, arg), = recipe.items()
    if kind == "zn":
        if not isinstance(arg, int):
            raise InvalidSpec(f"zn expects an integer, got {arg!r}")
        return _validated(zn(arg), cap)
    if kind == "product":
        return _validated(product(*(make_ring(r, cap) for r in arg), cap=cap), cap)
    if kind == "quotient":
        R = make_ring(arg["ring"], cap)
        I = ideal_span(R, [R.index(g) for g in arg.get("gens", [])])
        if not I.is_proper:
            raise InvalidSpec("quotient by an improper ideal")
        return _validated(quotient(R, I), cap)
    if kind == "tables":
        return from_tables(arg["add"], arg["mul"], arg.get("zero", 0), arg.get("one", 1),
                           arg.get("labels"), arg.get("id"), cap)
    if kind in ("idealization", "duplication", "amalgamation"):
        from .constructions import make_construction_ring

        return make_construction_ring(kind, arg, cap)
    raise InvalidSpec(f"unknown ring recipe {kind!r}")


# ---------------------------------------------------------------------------
# ideals


class _Subset:
    """Canonical sorted subset of a carrier, with a boolean mask for lookups."""

    __slots__ = ("members", "mask", "_hash")

    def _init(self, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool).copy()
        mask.setflags(write=False)
        self.mask = mask
        self.members = tuple(np.flatnonzero(mask).tolist())
        self._hash = None

    def __contains__(self, x) -> bool:
        return bool(self.mask[x])

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other) -> bool:
        return not (self.mask & ~other.mask).any()

    def __lt__(self, other) -> bool:
        return self <= other and len(self) < len(other)

    def __ge__(self, other) -> bool:
        return other <= self

    def __gt__(self, other) -> bool:
        return other < self


class Ideal(_Subset):
    __slots__ = ("ring",)

    def __init__(self, ring: FiniteRing, members: Iterable[int]):
        mask = np.zeros(ring.order, dtype=bool)
        mask[list(members)] = True
        self.ring = ring
        self._init(mask)
        bad = _ideal_violation(ring, self.mask)
        if bad:
            raise InvalidSpec(f"not an ideal of {ring.id}: {bad}")

    @classmethod
    def _from_mask(cls, ring: FiniteRing, mask) -> "Ideal":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._init(mask)
        return obj

    @property
    def ring_id(self) -> str:
        return self.ring.id

    @property
    def is_proper(self) -> bool:
        return not self.mask[self.ring.one]

    def short(self) -> str:
        return "{" + ",".join(self.ring.labels[i] for i in self.members) + "}"

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.ring == self.ring and other.members == self.members

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("ideal", self.ring.id, self.members))
        return self._hash

    def __repr__(self):
        return f"Ideal({self.ring.id}, {self.short()})"


def _ideal_violation(R: FiniteRing, mask: np.ndarray) -> str | None:
    if not mask[R.zero]:
        return "missing zero"
    m = np.flatnonzero(mask)
    if not mask[R.add[np.ix_(m, m)]].all():
        return "not closed under addition"
    if not mask[R.mul[:, m]].all():
        return "not closed under ring multiplication"
    return None


def zero_ideal(R: FiniteRing) -> Ideal:
    mask = np.zeros(R.order, dtype=bool)
    mask[R.zero] = True
    return Ideal._from_mask(R, mask)


def unit_ideal(R: FiniteRing) -> Ideal:
    return Ideal._from_mask(R, np.ones(R.order, dtype=bool))


def ideal_span(R: FiniteRing, gens: Iterable[int]) -> Ideal:
    """Smallest ideal containing ``gens`` (the zero ideal when empty)."""
    return Ideal._from_mask(R, _lattice.span_mask(R.add, R.mul, R.zero, [int(g) for g in gens]))


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return Ideal._from_mask(I.ring, _lattice.join_masks(I.ring.add, I.mask, J.mask))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    R = I.ring
    prods = np.unique(R.mul[np.ix_(I.members, J.members)])
    return ideal_span(R, prods.tolist())


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    return Ideal._from_mask(I.ring, I.mask & J.mask)


def radical_mask(R: FiniteRing, mask: np.ndarray) -> np.ndarray:
    # the power sequence of x enters its cycle within order(R) steps
    cur = np.arange(R.order)
    out = np.zeros(R.order, dtype=bool)
    for _ in range(R.order):
        out |= mask[cur]
        cur = R.mul[cur, np.arange(R.order)]
    return out


def radical_of_ideal(I: Ideal) -> Ideal:
    return Ideal._from_mask(I.ring, radical_mask(I.ring, I.mask))


def ideal_residual(I: Ideal, by) -> Ideal:
    """``(I : by)`` for an ideal or a single ring element ``by``."""
    R = I.ring
    if isinstance(by, Ideal):
        cols = list(by.members)
        return Ideal._from_mask(R, I.mask[R.mul[:, cols]].all(axis=1))
    return Ideal._from_mask(R, I.mask[R.mul[:, int(by)]])


def annihilator_of_ideal(I: Ideal) -> Ideal:
    return ideal_residual(zero_ideal(I.ring), I)


# ---------------------------------------------------------------------------
# multiplicatively closed sets


class MultClosedSet(_Subset):
    """A nonempty subset closed under multiplication.

    The identity is not required to belong to the set.
    """

    __slots__ = ("ring",)

    def __init__(self, ring: FiniteRing, members: Iterable[int]):
        members = list(members)
        if not members:
            raise EmptyGenerators("a multiplicatively closed set must be nonempty")
        mask = np.zeros(ring.order, dtype=bool)
        mask[members] = True
        self.ring = ring
        self._init(mask)
        m = list(self.members)
        if not mask[ring.mul[np.ix_(m, m)]].all():
            raise InvalidSpec(f"{self.short()} is not closed under multiplication")

    @classmethod
    def _from_mask(cls, ring: FiniteRing, mask) -> "MultClosedSet":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._init(mask)
        return obj

    @property
    def ring_id(self) -> str:
        return self.ring.id

    @property
    def contains_zero(self) -> bool:
        return bool(self.mask[self.ring.zero])

    def short(self) -> str:
        return "{" + ",".join(self.ring.labels[i] for i in self.members) + "}"

    def meets(self, other) -> bool:
        return bool((self.mask & other.mask).any())

    def __eq__(self, other):
        return (isinstance(other, MultClosedSet) and other.ring == self.ring
                and other.members == self.members)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("mset", self.ring.id, self.members))
        return self._hash

    def __repr__(self):
        return f"MultClosedSet({self.ring.id}, {self.short()})"


def mult_set_closure(R: FiniteRing, gens: Iterable[int]) -> MultClosedSet:
    gens = sorted({int(g) for g in gens})
    if not gens:
        raise EmptyGenerators("mult_set_closure needs at least one generator")
    mask = np.zeros(R.order, dtype=bool)
    mask[gens] = True
    while True:
        m = np.flatnonzero(mask)
        new = mask.copy()
        new[R.mul[np.ix_(m, m)].ravel()] = True
        if (new == mask).all():
            break
        mask = new
    return MultClosedSet._from_mask(R, mask)


def saturate(S: MultClosedSet) -> MultClosedSet:
    """``{x : x*y in S for some y}``."""
    R = S.ring
    return MultClosedSet._from_mask(R, S.mask[R.mul].any(axis=1))


def special_subset(R: FiniteRing, kind: str, I: Ideal | None = None) -> frozenset[int]:
    """``units`` -> U(R);  ``zdiv_mod_ideal`` -> {r : r*s in I for some s not in I}."""
    if kind == "units":
        return R.units
    if kind == "zdiv_mod_ideal":
        if I is None:
            raise MissingIdeal("zdiv_mod_ideal needs an ideal")
        if not I.is_proper:
            raise ImproperIdeal("zdiv_mod_ideal needs a proper ideal")
        hits = I.mask[R.mul] & ~I.mask[None, :]
        return frozenset(np.flatnonzero(hits.any(axis=1)).tolist())
    raise InvalidSpec(f"unknown special subset {kind!r}")


# ---------------------------------------------------------------------------
# ring homomorphisms


@dataclass(frozen=True, eq=False)
class RingHom:
    source: FiniteRing
    target: FiniteRing
    table: np.ndarray = field(repr=False)

    def __call__(self, x):
        return self.table[x]

    @cached_property
    def is_surjective(self) -> bool:
        return len(np.unique(self.table)) == self.target.order

    @cached_property
    def is_injective(self) -> bool:
        return len(np.unique(self.table)) == self.source.order

    @cached_property
    def is_identity(self) -> bool:
        return self.source == self.target and (self.table == np.arange(self.source.order)).all()


def make_ring_hom(source: FiniteRing, target: FiniteRing, table: Sequence[int]) -> RingHom:
    t = _frozen(table)
    if t.shape != (source.order,) or t.min() < 0 or t.max() >= target.order:
        raise NotRingHom("table is not a total map between the carriers")
    if t[source.one] != target.one:
        raise NotRingHom("identity is not preserved")
    if not (t[source.add] == target.add[t[:, None], t[None, :]]).all():
        raise NotRingHom("not additive")
    if not (t[source.mul] == target.mul[t[:, None], t[None, :]]).all():
        raise NotRingHom("not multiplicative")
    return RingHom(source, target, t)


def identity_hom(R: FiniteRing) -> RingHom:
    return make_ring_hom(R, R, np.arange(R.order))


def reduction_hom(n: int, m: int) -> RingHom:
    """Z_n -> Z_m, r -> r mod m (requires m | n)."""
    if n % m:
        raise NotRingHom(f"{m} does not divide {n}")
    return make_ring_hom(zn(n), zn(m), np.arange(n) % m)


def all_ring_homs(source: FiniteRing, target: FiniteRing) -> list[RingHom]:
    """Brute-force search, intended for tiny rings only."""
    out = []
    for t in itertools.product(range(target.order), repeat=source.order):
        try:
            out.append(make_ring_hom(source, target, t))
        except NotRingHom:
            pass
    return out
