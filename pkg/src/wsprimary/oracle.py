"""Slow reference implementations used to cross-check the fast paths.

Nothing here touches numpy tables beyond converting them to nested lists
up front, and nothing is cached.  The loops follow the textbook
definitions literally so that disagreements point at the fast code.
"""

from __future__ import annotations

from itertools import product as cartesian

import numpy as np

_S_KINDS = {"s-prime", "weakly-s-prime", "s-primary", "weakly-s-primary"}
_WEAK = {"weakly-primary", "weakly-s-prime", "weakly-s-primary"}
_RADICAL = {"primary", "weakly-primary", "s-primary", "weakly-s-primary"}


def _tables(M):
    R = M.ring
    return R.add.tolist(), R.mul.tolist(), M.add.tolist(), M.act.tolist(), R.one, M.zero


def naive_residual(M, n_set: set[int]) -> set[int]:
    act = M.act.tolist()
    return {r for r in range(M.ring.order) if all(act[r][m] in n_set for m in range(M.order))}


def naive_radical(R, ideal: set[int]) -> set[int]:
    mul = R.mul.tolist()
    out = set()
    for x in range(R.order):
        p = x
        for _ in range(R.order):
            if p in ideal:
                out.add(x)
                break
            p = mul[p][x]
    return out


def naive_check(kind: str, n_members, M, s_members=None):
    """Return ``(holds, witness)`` or the string ``"NotDisjoint"`` / ``"NotProper"``."""
    kind = getattr(kind, "value", kind)
    _, mul, _, act, one, zero = _tables(M)
    n_set = set(n_members)
    res = naive_residual(M, n_set)
    target = naive_radical(M.ring, res) if kind in _RADICAL else res
    if kind in _S_KINDS:
        cands = sorted(s_members)
        if any(s in res for s in cands):
            return "NotDisjoint"
    else:
        if len(n_set) == M.order:
            return "NotProper"
        cands = [one]
    weak = kind in _WEAK
    for s in cands:
        good = True
        for a in range(M.ring.order):
            for m in range(M.order):
                am = act[a][m]
                if am not in n_set or (weak and am == zero):
                    continue
                if mul[s][a] in target or act[s][m] in n_set:
                    continue
                good = False
                break
            if not good:
                break
        if good:
            return True, (s if kind in _S_KINDS else None)
    return False, None


def defeats(kind: str, n_members, M, s: int, a: int, m: int) -> bool:
    """Does the pair ``(a, m)`` violate the condition for candidate ``s``?"""
    kind = getattr(kind, "value", kind)
    n_set = set(n_members)
    _, mul, _, act, _, zero = _tables(M)
    res = naive_residual(M, n_set)
    target = naive_radical(M.ring, res) if kind in _RADICAL else res
    am = act[a][m]
    if am not in n_set or (kind in _WEAK and am == zero):
        return False
    return mul[s][a] not in target and act[s][m] not in n_set


def brute_force_submodules(M) -> list[tuple[int, ...]]:
    """All subsets closed under addition and action, by bitmask filtering.

    Only sensible for order <= 16; the subset masks are scanned in numpy
    blocks so that 2**16 candidates stay cheap.
    """
    k = M.order
    if k > 16:
        raise ValueError("brute force limited to order <= 16")
    masks = np.arange(1 << k, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(k)) & 1).astype(bool)
    ok = bits[:, M.zero].copy()
    for x in range(k):
        for y in range(x, k):
            both = bits[:, x] & bits[:, y]
            ok &= ~both | bits[:, M.add[x, y]]
    for r in range(M.ring.order):
        for x in range(k):
            ok &= ~bits[:, x] | bits[:, M.act[r, x]]
    out = [tuple(np.flatnonzero(b)) for b in bits[ok]]
    out.sort(key=lambda t: (len(t), t))
    return [tuple(int(i) for i in t) for t in out]


def localization_class_count(R, s_members) -> int:
    """Number of fractions ``x/s`` via the idempotent shortcut.

    In a finite ring the powers of ``t = prod(S)`` reach an idempotent
    ``e``; then ``S^-1 R`` is ``eR`` and the fraction ``x/s`` corresponds
    to ``e * x * s'`` where ``s'`` inverts ``s`` inside ``eR``.
    """
    mul = R.mul.tolist()
    t = R.one
    for s in s_members:
        t = mul[t][s]
    p = t
    seen = []
    while p not in seen:
        seen.append(p)
        p = mul[p][t]
    e = next(q for q in seen if mul[q][q] == q)
    eR = {mul[e][x] for x in range(R.order)}
    return len(eR)


def localization_key_map(R, s_members) -> dict[tuple[int, int], int]:
    """Map each pair ``(x, s)`` to an element of ``eR`` identifying its class."""
    mul = R.mul.tolist()
    t = R.one
    for s in s_members:
        t = mul[t][s]
    p = t
    seen = []
    while p not in seen:
        seen.append(p)
        p = mul[p][t]
    e = next(q for q in seen if mul[q][q] == q)
    out = {}
    for s in s_members:
        es = mul[e][s]
        inv = next(y for y in range(R.order) if mul[es][y] == e)
        for x in range(R.order):
            out[(x, s)] = mul[mul[e][x]][inv]
    return out


def all_pairs(n: int):
    return cartesian(range(n), range(n))
