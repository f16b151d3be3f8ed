"""Decision procedures for the (weakly) (S-)prime / primary hierarchy.

All seven predicates share one shape.  For a candidate ``s`` and a pair
``(a, m)`` the *premise* is ``am in N`` (or ``0 != am in N`` for the weak
kinds) and the *conclusion* is ``sa in T or sm in N`` where ``T`` is
``(N:_R M)`` for prime kinds and its radical for primary kinds.  The
non-S kinds are the same test with the single candidate ``s = 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    FmHypothesisUnmet,
    MissingMultSet,
    NotDisjoint,
    NotProper,
    NotWeaklySPrimary,
    InvalidSpec,
)
from .modules import Submodule, is_prime_submodule, submodule_product
from .rings import MultClosedSet, radical_mask


class PredicateKind(enum.Enum):
    PRIME = "prime"
    PRIMARY = "primary"
    W_PRIMARY = "weakly-primary"
    S_PRIME = "s-prime"
    W_S_PRIME = "weakly-s-prime"
    S_PRIMARY = "s-primary"
    W_S_PRIMARY = "weakly-s-primary"

    @property
    def uses_s(self) -> bool:
        return self in (PredicateKind.S_PRIME, PredicateKind.W_S_PRIME,
                        PredicateKind.S_PRIMARY, PredicateKind.W_S_PRIMARY)

    @property
    def weak(self) -> bool:
        return self in (PredicateKind.W_PRIMARY, PredicateKind.W_S_PRIME, PredicateKind.W_S_PRIMARY)

    @property
    def radical(self) -> bool:
        return self not in (PredicateKind.PRIME, PredicateKind.S_PRIME, PredicateKind.W_S_PRIME)

    @classmethod
    def parse(cls, name) -> "PredicateKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        for k in cls:
            if key in (k.value, k.name.lower().replace("_", "-")):
                return k
        raise InvalidSpec(f"unknown predicate kind {name!r}")


PRIME, PRIMARY, W_PRIMARY = PredicateKind.PRIME, PredicateKind.PRIMARY, PredicateKind.W_PRIMARY
S_PRIME, W_S_PRIME = PredicateKind.S_PRIME, PredicateKind.W_S_PRIME
S_PRIMARY, W_S_PRIMARY = PredicateKind.S_PRIMARY, PredicateKind.W_S_PRIMARY


@dataclass(frozen=True)
class PredicateVerdict:
    """Outcome of :func:`check`.

    ``defeats`` maps every rejected candidate ``s`` to the least pair
    ``(a, m)`` that defeats it.  ``counterexample`` is the least pair among
    those defeating the largest number of candidates.
    """

    kind: PredicateKind
    holds: bool
    witness: int | None = None
    counterexample: tuple[int, int] | None = None
    defeats: tuple[tuple[int, tuple[int, int]], ...] = ()
    disjointness_checked: bool = False
    submodule: Submodule | None = field(default=None, compare=False, repr=False)
    mult_set: MultClosedSet | None = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        M = self.submodule.module if self.submodule is not None else None
        R = M.ring if M is not None else None

        def rl(x):
            return R.labels[x] if R is not None else x

        def ml(x):
            return M.labels[x] if M is not None else x

        out = {
            "kind": self.kind.value,
            "holds": self.holds,
            "witness": None if self.witness is None else rl(self.witness),
            "counterexample": None,
            "defeats": [{"s": rl(s), "a": rl(a), "m": ml(m)} for s, (a, m) in self.defeats],
            "disjointness_checked": self.disjointness_checked,
        }
        if self.counterexample is not None:
            a, m = self.counterexample
            out["counterexample"] = {"a": rl(a), "m": ml(m)}
        return out


@lru_cache(maxsize=None)
def _residual_masks(N: Submodule) -> tuple[np.ndarray, np.ndarray]:
    """``(N:_R M)`` and its radical, as masks over the ring."""
    M = N.module
    res = N.mask[M.act].all(axis=1)
    rad = radical_mask(M.ring, res)
    return res, rad


def residual_meets(N: Submodule, S: MultClosedSet) -> bool:
    return bool((_residual_masks(N)[0] & S.mask).any())


def _candidates(kind: PredicateKind, N: Submodule, S: MultClosedSet | None) -> list[int]:
    M = N.module
    if kind.uses_s:
        if S is None:
            raise MissingMultSet(f"{kind.value} needs a multiplicatively closed set")
        if S.ring != M.ring:
            raise InvalidSpec("multiplicative set lives in another ring")
        if residual_meets(N, S):
            raise NotDisjoint("(N :_R M) meets S")
        return list(S.members)
    if not N.is_proper:
        raise NotProper(f"{kind.value} needs a proper submodule")
    return [M.ring.one]


def _violations(kind: PredicateKind, N: Submodule, cands: list[int]) -> np.ndarray:
    """Boolean array ``V[i, a, m]``: pair ``(a, m)`` defeats candidate ``cands[i]``."""
    M = N.module
    R = M.ring
    res, rad = _residual_masks(N)
    target = rad if kind.radical else res
    in_n = N.mask[M.act]
    premise = in_n & (M.act != M.zero) if kind.weak else in_n
    c = np.array(cands)
    sa_ok = target[R.mul[c]]            # (|S|, |R|)
    sm_ok = N.mask[M.act[c]]            # (|S|, |M|)
    return premise[None] & ~sa_ok[:, :, None] & ~sm_ok[:, None, :]


@lru_cache(maxsize=None)
def _check_cached(kind: PredicateKind, N: Submodule, S: MultClosedSet | None) -> PredicateVerdict:
    cands = _candidates(kind, N, S)
    V = _violations(kind, N, cands)
    k = N.module.order
    failed = V.reshape(len(cands), -1).any(axis=1)
    if not failed.all():
        i = int(np.argmin(failed))
        return PredicateVerdict(kind, True, witness=cands[i] if kind.uses_s else None,
                                disjointness_checked=kind.uses_s, submodule=N, mult_set=S)
    defeats = []
    for i, s in enumerate(cands):
        a, m = divmod(int(np.argmax(V[i].ravel())), k)
        defeats.append((s, (a, m)))
    counts = V.sum(axis=0)
    a, m = divmod(int(np.argmax((counts == counts.max()).ravel())), k)
    return PredicateVerdict(kind, False, counterexample=(a, m),
                            defeats=tuple(defeats) if kind.uses_s else (),
                            disjointness_checked=kind.uses_s, submodule=N, mult_set=S)


def check(kind, N: Submodule, S: MultClosedSet | None = None) -> PredicateVerdict:
    """Decide ``kind`` for ``N``; non-S kinds ignore ``S``.

    Raises ``NotDisjoint`` when an S-kind is asked for ``N`` whose residual
    meets ``S`` and ``NotProper`` for a non-S kind on ``N = M``.
    """
    kind = PredicateKind.parse(kind)
    return _check_cached(kind, N, S if kind.uses_s else None)


def holds(kind, N: Submodule, S: MultClosedSet | None = None) -> bool:
    """Like :func:`check` but precondition failures count as ``False``."""
    try:
        return check(kind, N, S).holds
    except (NotDisjoint, NotProper):
        return False


def weakly_s_elements(N: Submodule, S: MultClosedSet) -> frozenset[int]:
    cands = _candidates(W_S_PRIMARY, N, S)
    V = _violations(W_S_PRIMARY, N, cands)
    ok = ~V.reshape(len(cands), -1).any(axis=1)
    return frozenset(c for c, good in zip(cands, ok) if good)


# ---------------------------------------------------------------------------
# characterisations


@dataclass(frozen=True)
class CharConditions:
    c2: bool
    c3: bool
    c4: bool
    c5: bool
    fm: bool | None
    witnesses: dict = field(default_factory=dict)

    def as_tuple(self):
        return (self.c2, self.c3, self.c4, self.c5)


def _first(ok_per_s: list[bool], cands: list[int]):
    for ok, s in zip(ok_per_s, cands):
        if ok:
            return s
    return None


@lru_cache(maxsize=None)
def _submodule_matrix(M) -> np.ndarray:
    return np.array([K.mask for K in M.submodules])


@lru_cache(maxsize=None)
def _ideal_matrix(R) -> np.ndarray:
    return np.array([I.mask for I in R.ideals])


@lru_cache(maxsize=None)
def _prime_submodules(M) -> tuple[Submodule, ...]:
    return tuple(P for P in M.submodules if is_prime_submodule(P))


def m_radical_definition(N: Submodule) -> Submodule:
    M = N.module
    mask = np.ones(M.order, dtype=bool)
    for P in _prime_submodules(M):
        if N <= P:
            mask &= P.mask
    return Submodule._from_mask(M, mask)


def char_conditions(N: Submodule, S: MultClosedSet, fm: bool | None = None) -> CharConditions:
    """Evaluate the equivalent reformulations of the weakly S-primary condition.

    * ``c2``: some ``s`` has ``(N:a) <= (0:a) u (N:s)`` for all ``a`` outside ``(sqrt(N:M) : s)``
    * ``c3``: same ``a``, but ``(N:a) = (0:a)`` or ``(N:a) <= (N:s)``
    * ``c4``: ``0 != aK <= N`` forces ``sa`` in the radical or ``sK <= N``
    * ``c5``: ``0 != IK <= N`` forces ``sI`` in the radical or ``sK <= N``
    * ``fm``: ``0 != KL <= N`` forces ``sK <= M-rad(N)`` or ``sL <= N``

    ``fm=None`` evaluates the last condition only when the module is
    faithful and multiplication; ``fm=True`` demands it.
    """
    M = N.module
    R = M.ring
    cands = _candidates(W_S_PRIMARY, N, S)
    props = M.properties
    fm_ok_module = props.faithful and props.multiplication
    if fm and not fm_ok_module:
        raise FmHypothesisUnmet(f"{M.id} is not a faithful multiplication module")
    do_fm = fm_ok_module if fm is None else bool(fm)

    _, rad = _residual_masks(N)
    in_n = N.mask[M.act]                     # (|R|, |M|): a*m in N
    kills = M.act == M.zero                  # a*m == 0

    Kmat = _submodule_matrix(M).astype(np.int32)
    sub_in_n = ((~in_n).astype(np.int32) @ Kmat.T) == 0      # aK <= N
    nonzero = ((~kills).astype(np.int32) @ Kmat.T) > 0        # aK != 0
    Imat = _ideal_matrix(R).astype(np.int32)
    IK_in_n = (Imat @ (~sub_in_n).astype(np.int32)) == 0      # IK <= N
    IK_nonzero = (Imat @ nonzero.astype(np.int32)) > 0        # IK != 0

    ok2, ok3, ok4, ok5 = [], [], [], []
    for s in cands:
        sa_rad = rad[R.mul[s]]
        ns = in_n[s]
        outside = ~sa_rad
        bad2 = (in_n & ~kills & ~ns[None, :]).any(axis=1) & outside
        ok2.append(not bad2.any())
        equal = (in_n == kills).all(axis=1)
        contained = ~(in_n & ~ns[None, :]).any(axis=1)
        ok3.append(not (outside & ~equal & ~contained).any())
        sK = sub_in_n[s]
        ok4.append(not (sub_in_n & nonzero & outside[:, None] & ~sK[None, :]).any())
        sI = (Imat @ outside.astype(np.int32)) == 0
        ok5.append(not (IK_in_n & IK_nonzero & ~sI[:, None] & ~sK[None, :]).any())

    fm_val = None
    wit = {
        "c2": _first(ok2, cands), "c3": _first(ok3, cands),
        "c4": _first(ok4, cands), "c5": _first(ok5, cands),
    }
    if do_fm:
        okfm = _fm_condition(N, cands)
        fm_val = any(okfm)
        wit["fm"] = _first(okfm, cands)
    return CharConditions(any(ok2), any(ok3), any(ok4), any(ok5), fm_val, wit)


@lru_cache(maxsize=None)
def _product_matrix(M) -> np.ndarray:
    """``P[i, j]`` = index of ``K_i K_j`` in ``M.submodules``."""
    subs = M.submodules
    pos = {K.members: i for i, K in enumerate(subs)}
    P = np.zeros((len(subs), len(subs)), dtype=np.int64)
    for i, K in enumerate(subs):
        for j in range(i, len(subs)):
            P[i, j] = P[j, i] = pos[submodule_product(K, subs[j]).members]
    return P


def _fm_condition(N: Submodule, cands: list[int]) -> list[bool]:
    M = N.module
    rad = m_radical_definition(N)
    in_n = N.mask[M.act]
    in_rad = rad.mask[M.act]
    Kmat = _submodule_matrix(M)
    Ki = Kmat.astype(np.int32)
    s_in_n = ((~in_n).astype(np.int32) @ Ki.T) == 0        # sL <= N, rows indexed by s
    s_in_rad = ((~in_rad).astype(np.int32) @ Ki.T) == 0    # sK <= M-rad(N)
    sub_of_n = ~(Kmat & ~N.mask).any(axis=1)
    nonzero = Kmat.sum(axis=1) > 1
    P = _product_matrix(M)
    premise = sub_of_n[P] & nonzero[P]
    out = []
    for s in cands:
        out.append(not (premise & ~s_in_rad[s][:, None] & ~s_in_n[s][None, :]).any())
    return out


def is_maximal_weakly_s_primary(N: Submodule, S: MultClosedSet) -> bool:
    if not check(W_S_PRIMARY, N, S).holds:
        raise NotWeaklySPrimary("N is not weakly S-primary")
    for P in N.module.submodules:
        if N < P and holds(W_S_PRIMARY, P, S):
            return False
    return True


def clear_caches() -> None:
    _check_cached.cache_clear()
    _residual_masks.cache_clear()
    _submodule_matrix.cache_clear()
    _ideal_matrix.cache_clear()
    _prime_submodules.cache_clear()
    _product_matrix.cache_clear()
