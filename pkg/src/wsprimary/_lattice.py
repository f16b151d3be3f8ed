"""Closed-subset enumeration shared by the ideal and submodule lattices.

A "closed subset" is an additive subgroup that is stable under a scalar
action table ``act[r, x]``.  Every such subset is a finite sum of cyclic
pieces ``{act[r, x] : r}``, so a breadth-first join closure starting from
the zero subset reaches all of them.
"""

from __future__ import annotations

import numpy as np

from .errors import LatticeTooLarge


def mask_key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


def span_mask(add: np.ndarray, act: np.ndarray, zero: int, gens) -> np.ndarray:
    """Least closed subset containing ``gens``."""
    k = add.shape[0]
    mask = np.zeros(k, dtype=bool)
    mask[zero] = True
    members = np.array([zero])
    for g in gens:
        if mask[g] and len(members) > 1:
            continue
        cyclic = np.unique(act[:, g])
        members = np.unique(add[np.ix_(members, cyclic)])
        mask[:] = False
        mask[members] = True
    return mask


def join_masks(add: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Sum of two closed subsets (itself closed)."""
    out = np.zeros(add.shape[0], dtype=bool)
    out[np.unique(add[np.ix_(np.flatnonzero(a), np.flatnonzero(b))])] = True
    return out


def enumerate_closed(add: np.ndarray, act: np.ndarray, zero: int, cap: int) -> list[np.ndarray]:
    k = add.shape[0]
    cyclics: dict[bytes, np.ndarray] = {}
    for x in range(k):
        m = np.zeros(k, dtype=bool)
        m[act[:, x]] = True
        cyclics.setdefault(mask_key(m), m)
    gens = list(cyclics.values())

    start = np.zeros(k, dtype=bool)
    start[zero] = True
    seen = {mask_key(start): start}
    queue = [start]
    while queue:
        cur = queue.pop()
        for c in gens:
            if not (c & ~cur).any():
                continue
            nxt = join_masks(add, cur, c)
            key = mask_key(nxt)
            if key not in seen:
                seen[key] = nxt
                if len(seen) > cap:
                    raise LatticeTooLarge(
                        f"lattice exceeds cap {cap} (found {len(seen)} so far)", len(seen)
                    )
                queue.append(nxt)
    out = list(seen.values())
    out.sort(key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m))))
    return out
