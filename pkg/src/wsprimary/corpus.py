"""Deterministic instance corpora for the claim harness.

A corpus is built from :class:`CorpusParams`; every family is generated
lazily and cached on the corpus object.  Fixtures are the finite stand-ins
for the infinite examples; each is validated by the naive oracle before
use and falls back along a documented candidate list when a candidate
fails to separate.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import oracle
from .constructions import idealize, make_amalgamation, make_duplication
from .errors import CapExceeded, LatticeTooLarge, NotRingHom
from .modules import (
    DEFAULT_LATTICE_CAP,
    DEFAULT_MODULE_CAP,
    FiniteModule,
    ModuleHom,
    Submodule,
    direct_sum,
    make_hom,
    product as module_product,
    quotient,
    reduction,
    regular,
    residual_in_module,
    submodule_as_module,
    submodule_intersection,
    submodule_span,
)
from .rings import (
    DEFAULT_ORDER_CAP,
    FiniteRing,
    MultClosedSet,
    from_tables,
    ideal_span,
    identity_hom,
    make_ring_hom,
    mult_set_closure,
    product as ring_product,
    reduction_hom,
    zn,
)

FIXTURE_ORDERS = (16, 24, 36, 72, 90)


@dataclass(frozen=True)
class CorpusParams:
    ring_orders: tuple[int, ...] = tuple(range(2, 13)) + FIXTURE_ORDERS
    extra_rings: bool = True
    max_ring_order: int | None = None
    small_module_ring_max: int = 12
    direct_sum_max_order: int = 16
    multset_pair_max_ring: int = 12
    product_factor_max: int = 8
    triple_factor_max: int = 4
    triple_samples: int = 120
    idealization_max_order: int = 72
    amalg_max_order: int = 96
    hom_max_order: int = 24
    seed: int = 7
    ring_cap: int = DEFAULT_ORDER_CAP
    module_cap: int = DEFAULT_MODULE_CAP
    lattice_cap: int = DEFAULT_LATTICE_CAP

    def to_json(self) -> dict:
        d = asdict(self)
        d["ring_orders"] = list(self.ring_orders)
        return d

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def allows(self, order: int) -> bool:
        return self.max_ring_order is None or order <= self.max_ring_order


# ---------------------------------------------------------------------------
# instance records


@dataclass(frozen=True)
class Instance:
    """A module, one of its submodules and a multiplicative set of its ring."""

    M: FiniteModule
    N: Submodule
    S: MultClosedSet

    def describe(self) -> dict:
        return {"module": self.M.id, "N": self.N.short(), "S": self.S.short()}


@dataclass(frozen=True)
class HomSample:
    kind: str
    h: ModuleHom

    def describe(self) -> dict:
        return {"hom": self.kind, "source": self.h.source.id, "target": self.h.target.id}


@dataclass
class Fixture:
    name: str
    data: dict
    candidates_tried: list = field(default_factory=list)
    validated: bool = False

    @property
    def substituted(self) -> bool:
        return len(self.candidates_tried) > 1

    def record(self) -> dict:
        return {"fixture": self.name, "validated": self.validated,
                "candidates_tried": list(self.candidates_tried),
                "substituted": self.substituted}


# ---------------------------------------------------------------------------
# rings and modules


def gf4() -> FiniteRing:
    """The field with four elements as ``Z_2[x]/(x^2 + x + 1)``."""
    def mul(a, b):
        p = 0
        for i in range(2):
            if (b >> i) & 1:
                p ^= a << i
        if p & 4:
            p ^= 0b111
        return p
    add = [[a ^ b for b in range(4)] for a in range(4)]
    table = [[mul(a, b) for b in range(4)] for a in range(4)]
    return from_tables(add, table, 0, 1, ("0", "1", "x", "x+1"), "GF4")


def extra_rings() -> list[FiniteRing]:
    z2, z3, z4 = zn(2), zn(3), zn(4)
    return [
        ring_product(z2, z2),
        ring_product(z2, z4),
        idealize(z2, regular(z2)),
        idealize(z2, direct_sum(regular(z2), regular(z2))),
        idealize(z4, reduction(4, 2)),
        idealize(z3, regular(z3)),
        gf4(),
    ]


def _is_cyclic_ring(R: FiniteRing) -> bool:
    return R.id == f"Z{R.order}"


def modules_over(R: FiniteRing, p: CorpusParams) -> list[FiniteModule]:
    out = [regular(R)]
    if not _is_cyclic_ring(R) or R.order > p.small_module_ring_max:
        return out
    n = R.order
    divs = [d for d in range(2, n + 1) if n % d == 0]
    out += [reduction(n, d) for d in divs if d < n]
    for i, a in enumerate(divs):
        for b in divs[i:]:
            if a * b <= p.direct_sum_max_order:
                A = regular(R) if a == n else reduction(n, a)
                B = regular(R) if b == n else reduction(n, b)
                out.append(direct_sum(A, B))
    if n == 2:
        out.append(direct_sum(regular(R), regular(R), regular(R)))
    return out


def multsets_of(R: FiniteRing, p: CorpusParams) -> list[MultClosedSet]:
    seen = {}
    gens = [(x,) for x in range(R.order)]
    if R.order <= p.multset_pair_max_ring:
        gens += list(combinations(range(R.order), 2))
    for g in gens:
        S = mult_set_closure(R, g)
        seen.setdefault(S.members, S)
    return sorted(seen.values(), key=lambda S: (len(S), S.members))


def _cyclic_direct_sum(n: int, *orders: int) -> FiniteModule:
    parts = [regular(zn(n)) if d == n else reduction(n, d) for d in orders]
    return direct_sum(*parts)


# ---------------------------------------------------------------------------
# fixtures


def _oracle_holds(kind, N, S=None) -> bool:
    r = oracle.naive_check(kind, N.members, N.module, S.members if S is not None else None)
    return isinstance(r, tuple) and r[0]


def _fixture_e1_4() -> Fixture:
    """Z_{p^n q^m} with N = (p^k q^t) and S generated by q, witness q^t."""
    fx = Fixture("E1-4", {})
    for (pp, qq, n, m, k, t) in [(2, 3, 2, 2, 1, 1), (2, 3, 3, 2, 1, 1), (3, 2, 2, 3, 1, 1)]:
        order = pp ** n * qq ** m
        fx.candidates_tried.append(order)
        R = zn(order)
        M = regular(R)
        N = submodule_span(M, [pp ** k * qq ** t])
        S = mult_set_closure(R, [qq])
        r = oracle.naive_check("weakly-s-primary", N.members, M, S.members)
        if isinstance(r, tuple) and r[0]:
            fx.data = dict(M=M, N=N, S=S, s=qq ** t % order, params=(pp, qq, n, m, k, t))
            fx.validated = True
            return fx
    return fx


def _fixture_int_ce() -> Fixture:
    """Z_72 style: N = (4), K = (9), N cap K weakly S-primary but not weakly primary."""
    fx = Fixture("INT-CE-Z72", {})
    for (n, a, b, g) in [(72, 4, 9, 3), (200, 8, 25, 5), (144, 16, 9, 3)]:
        fx.candidates_tried.append(n)
        R = zn(n)
        M = regular(R)
        N, K = submodule_span(M, [a]), submodule_span(M, [b])
        S = mult_set_closure(R, [g])
        NK = submodule_intersection(N, K)
        if _oracle_holds("weakly-s-primary", NK, S) and not _oracle_holds("weakly-primary", NK):
            fx.data = dict(M=M, N=N, K=K, S=S, NK=NK)
            fx.validated = True
            return fx
    return fx


def _fixture_ex11() -> Fixture:
    """Z_{p^a} + Z_{pq} over Z_lcm, S generated by p, N = 0."""
    fx = Fixture("EX11", {})
    # the first summand stands in for a torsion-free factor; its order must be
    # prime to pq, which is why the later candidates replace Z_4 by Z_5 / Z_7
    for (n, a, b, pp) in [(12, 4, 6, 2), (30, 5, 6, 2), (42, 7, 6, 2)]:
        fx.candidates_tried.append(n)
        M = _cyclic_direct_sum(n, a, b)
        S = mult_set_closure(M.ring, [pp])
        N = M.zero_sub
        if not _oracle_holds("weakly-s-primary", N, S):
            continue
        cols = [residual_in_module(N, s) for s in S.members]
        if all(not _oracle_holds("weakly-primary", C) for C in cols):
            fx.data = dict(M=M, N=N, S=S, colons=dict(zip(S.members, cols)))
            fx.validated = True
            return fx
    return fx


def _fixture_nm_ce() -> Fixture:
    """Z_10 + Z_10 over Z_90: 0 is weakly S-primary, (0 : M) = (10) is not."""
    fx = Fixture("NM-CE", {})
    for (n, d, g) in [(90, 10, 3), (70, 10, 3), (30, 10, 3)]:
        fx.candidates_tried.append(n)
        M = _cyclic_direct_sum(n, d, d)
        R = M.ring
        S = mult_set_closure(R, [g])
        N = M.zero_sub
        ann = Submodule(regular(R), [x for x in range(n) if x % d == 0])
        if _oracle_holds("weakly-s-primary", N, S) and not _oracle_holds("weakly-s-primary", ann, S):
            fx.data = dict(M=M, N=N, S=S, residual=ann)
            fx.validated = True
            return fx
    return fx


def _fixture_quot_ce() -> Fixture:
    """N = K = (p1 p2) in Z_n, S generated by p3: N/K weakly S-primary, N not."""
    fx = Fixture("QUOT-CE", {})
    for (n, a, g) in [(30, 6, 5), (60, 6, 5), (42, 6, 7)]:
        fx.candidates_tried.append(n)
        M = regular(zn(n))
        N = submodule_span(M, [a])
        S = mult_set_closure(M.ring, [g])
        Q, pi = quotient(M, N)
        NK = Submodule(Q, [pi(x) for x in N.members])
        if _oracle_holds("weakly-s-primary", NK, S) and not _oracle_holds("weakly-s-primary", N, S):
            fx.data = dict(M=M, N=N, K=N, S=S, Q=Q, NK=NK)
            fx.validated = True
            return fx
    return fx


def _fixture_e1_3() -> Fixture:
    """Z_n + Z_n, N = (4) x Z_n, S generated by 3: S-primary, not weakly S-prime."""
    fx = Fixture("E1-3", {})
    for n in (8, 16, 24):
        fx.candidates_tried.append(n)
        M = _cyclic_direct_sum(n, n, n)
        N = Submodule(M, [a * n + b for a in range(0, n, 4) for b in range(n)])
        S = mult_set_closure(M.ring, [3])
        if _oracle_holds("s-primary", N, S) and not _oracle_holds("weakly-s-prime", N, S):
            fx.data = dict(M=M, N=N, S=S)
            fx.validated = True
            return fx
    return fx


def _fixture_e1_2() -> Fixture:
    """A weakly S-primary submodule that is not S-primary.

    The textbook-shaped candidates ``Z_n + Z_2 + Z_2`` with ``N = 0 + <(1,0)>``
    are tried first.  Their separation relies on a torsion-free summand and
    does not survive the passage to finite rings, so the last candidate is
    the zero submodule of regular ``Z_6`` with ``S = {1}``.
    """
    fx = Fixture("E1-2", {})
    for n in (10, 14, 22):
        fx.candidates_tried.append(n)
        M = _cyclic_direct_sum(n, n, 2, 2)
        # element (0, 1, 0) has index ((0*2)+1)*2 + 0 in the nested pair encoding
        N = submodule_span(M, [(0 * 2 + 1) * 2 + 0])
        S = mult_set_closure(M.ring, [3])
        if _oracle_holds("weakly-s-primary", N, S) and not _oracle_holds("s-primary", N, S):
            fx.data = dict(M=M, N=N, S=S)
            fx.validated = True
            return fx
    fx.candidates_tried.append(6)
    M = regular(zn(6))
    S = mult_set_closure(M.ring, [1])
    N = M.zero_sub
    if _oracle_holds("weakly-s-primary", N, S) and not _oracle_holds("s-primary", N, S):
        fx.data = dict(M=M, N=N, S=S)
        fx.validated = True
    return fx


def _fixture_e1_1() -> Fixture:
    """Z_4 over Z_12 with S = {4}: the zero submodule meets the disjointness wall."""
    fx = Fixture("E1-1", {})
    for (n, d, g) in [(12, 4, 4), (20, 4, 4)]:
        fx.candidates_tried.append(n)
        M = reduction(n, d)
        S = mult_set_closure(M.ring, [g])
        r = oracle.naive_check("weakly-s-primary", [M.zero], M, S.members)
        if r == "NotDisjoint" and _oracle_holds("weakly-primary", M.zero_sub):
            fx.data = dict(M=M, N=M.zero_sub, S=S)
            fx.validated = True
            return fx
    return fx


def _fixture_ex2() -> Fixture:
    """Duplication of regular Z_n along J = (2) with N = 0."""
    fx = Fixture("EX2", {})
    for n in (12, 6, 10):
        fx.candidates_tried.append(n)
        R = zn(n)
        M = regular(R)
        ctx = make_duplication(M, ideal_span(R, [2]))
        from .constructions import dup_bar, dup_join
        N = M.zero_sub
        NJ, NB = dup_join(ctx, N), dup_bar(ctx, N)
        if (_oracle_holds("weakly-primary", N) and not _oracle_holds("weakly-primary", NJ)
                and not _oracle_holds("weakly-primary", NB)):
            fx.data = dict(ctx=ctx, N=N, NJ=NJ, NB=NB)
            fx.validated = True
            return fx
    return fx


FIXTURE_BUILDERS = {
    "E1-1": _fixture_e1_1,
    "E1-2": _fixture_e1_2,
    "E1-3": _fixture_e1_3,
    "E1-4": _fixture_e1_4,
    "INT-CE-Z72": _fixture_int_ce,
    "EX11": _fixture_ex11,
    "NM-CE": _fixture_nm_ce,
    "QUOT-CE": _fixture_quot_ce,
    "EX2": _fixture_ex2,
}


# ---------------------------------------------------------------------------
# the corpus


class InstanceCorpus:
    def __init__(self, params: CorpusParams | None = None):
        self.params = params or CorpusParams()
        self.skipped: list[str] = []

    @property
    def fingerprint(self) -> str:
        return self.params.fingerprint()

    # rings / modules -------------------------------------------------------

    @cached_property
    def rings(self) -> list[FiniteRing]:
        p = self.params
        out = [zn(n) for n in p.ring_orders if p.allows(n)]
        if p.extra_rings:
            out += [R for R in extra_rings() if p.allows(R.order)]
        return out

    @cached_property
    def fixtures(self) -> dict[str, Fixture]:
        return {name: build() for name, build in FIXTURE_BUILDERS.items()}

    @cached_property
    def modules(self) -> list[FiniteModule]:
        p = self.params
        out: dict[str, FiniteModule] = {}
        for R in self.rings:
            for M in modules_over(R, p):
                out.setdefault(M.id, M)
        for fx in self.fixtures.values():
            M = fx.data.get("M")
            if M is not None and p.allows(M.ring.order):
                out.setdefault(M.id, M)
        mods = []
        for M in out.values():
            try:
                M.submodules
            except LatticeTooLarge as exc:
                self.skipped.append(f"{M.id}: {exc}")
                continue
            mods.append(M)
        return mods

    def multsets(self, R: FiniteRing) -> list[MultClosedSet]:
        cache = self.__dict__.setdefault("_multsets", {})
        if R.id not in cache:
            cache[R.id] = multsets_of(R, self.params)
        return cache[R.id]

    # families --------------------------------------------------------------

    @cached_property
    def base(self) -> list[Instance]:
        out = []
        for M in self.modules:
            for N in M.submodules:
                for S in self.multsets(M.ring):
                    out.append(Instance(M, N, S))
        return out

    def base_upto(self, order: int) -> list[Instance]:
        return [i for i in self.base if i.M.ring.order <= order]

    @cached_property
    def epimorphisms(self) -> list[HomSample]:
        out = []
        for M in self.modules:
            if M.order > self.params.hom_max_order:
                continue
            for K in M.submodules:
                if K.is_zero or not K.is_proper:
                    continue
                out.append(HomSample(f"projection mod {K.short()}", quotient(M, K)[1]))
            out += self._unit_automorphisms(M)
        for R in self.rings:
            if not _is_cyclic_ring(R) or R.order > self.params.small_module_ring_max:
                continue
            n = R.order
            for d in range(2, n):
                if n % d == 0:
                    T = reduction(n, d)
                    out.append(HomSample(f"reduction Z{n}->Z{d}",
                                         make_hom(regular(R), T, np.arange(n) % d)))
        return out

    @cached_property
    def monomorphisms(self) -> list[HomSample]:
        out = []
        for M in self.modules:
            if M.order > self.params.hom_max_order:
                continue
            for K in M.submodules:
                if K.is_zero or not K.is_proper:
                    continue
                sub, inc = submodule_as_module(K)
                out.append(HomSample(f"inclusion of {K.short()}", inc))
            out += self._unit_automorphisms(M)
        for R in self.rings:
            if not _is_cyclic_ring(R) or R.order > self.params.small_module_ring_max:
                continue
            n = R.order
            for d in range(2, n):
                if n % d == 0:
                    out.append(HomSample(f"injection Z{d}->Z{n}",
                                         make_hom(reduction(n, d), regular(R),
                                                  (np.arange(d) * (n // d)) % n)))
        return out

    @staticmethod
    def _unit_automorphisms(M: FiniteModule) -> list[HomSample]:
        R = M.ring
        out = []
        for u in sorted(R.units):
            if u == R.one:
                continue
            out.append(HomSample(f"scaling by {R.labels[u]}", make_hom(M, M, M.act[u])))
            break
        return out

    @cached_property
    def product_factors(self) -> list[FiniteModule]:
        lim = self.params.product_factor_max
        return [M for M in self.modules if M.order <= lim and M.ring.order <= lim]

    @cached_property
    def products(self) -> list[tuple[FiniteModule, FiniteModule, FiniteModule]]:
        fac = self.product_factors
        out = []
        for i, A in enumerate(fac):
            for B in fac[i:]:
                try:
                    out.append((A, B, module_product(A, B)))
                except CapExceeded:
                    continue
        return out

    @cached_property
    def triples(self) -> list[tuple]:
        """Sampled ``(M_i, N_i, S_i)`` triples over factors of order <= triple_factor_max."""
        lim = self.params.triple_factor_max
        fac = [M for M in self.modules if M.order <= lim and M.ring.order <= lim]
        rng = np.random.default_rng(self.params.seed)
        out = []
        seen = set()
        attempts = 0
        while len(out) < self.params.triple_samples and attempts < 50 * self.params.triple_samples:
            attempts += 1
            picks = []
            for _ in range(3):
                M = fac[int(rng.integers(len(fac)))]
                nz = [N for N in M.submodules if not N.is_zero]
                N = nz[int(rng.integers(len(nz)))]
                ms = self.multsets(M.ring)
                S = ms[int(rng.integers(len(ms)))]
                picks.append((M, N, S))
            key = tuple((M.id, N.members, S.members) for M, N, S in picks)
            if key in seen:
                continue
            seen.add(key)
            out.append(tuple(picks))
        return out

    @cached_property
    def idealizations(self) -> list[tuple[FiniteRing, FiniteModule, FiniteRing]]:
        out = []
        for M in self.modules:
            R = M.ring
            if R.order * M.order > self.params.idealization_max_order:
                continue
            if not _is_cyclic_ring(R):
                continue
            out.append((R, M, idealize(R, M)))
        return out

    @cached_property
    def amalgamations(self) -> list:
        """Duplications and amalgamations with module order <= amalg_max_order."""
        lim = self.params.amalg_max_order
        out = []
        seen = set()

        def add(ctx_fn):
            try:
                ctx = ctx_fn()
            except CapExceeded:
                return
            if ctx.module.order > lim or ctx.ring.order > self.params.ring_cap:
                return
            if ctx.module.id in seen:
                return
            seen.add(ctx.module.id)
            out.append(ctx)

        small = [R for R in self.rings if R.order <= self.params.small_module_ring_max]
        for R in small:
            for J in R.ideals:
                for M in modules_over(R, self.params):
                    if M.order * len(J) <= lim:
                        add(lambda M=M, J=J: make_duplication(M, J))
        # reductions Z_n -> Z_m with regular and reduction modules
        for n in range(2, self.params.small_module_ring_max + 1):
            if not self.params.allows(n):
                continue
            for m in range(2, n):
                if n % m:
                    continue
                f = reduction_hom(n, m)
                R1, R2 = zn(n), zn(m)
                for J in R2.ideals:
                    add(lambda f=f, R1=R1, R2=R2, J=J: make_amalgamation(
                        R1, R2, f, J, regular(R1), regular(R2), np.arange(n) % m))
        # a non-surjective phi: scaling by a non-unit on a regular module
        for n in (4, 6, 8):
            R = zn(n)
            for J in R.ideals:
                add(lambda R=R, J=J, n=n: make_amalgamation(
                    R, R, identity_hom(R), J, regular(R), regular(R), (2 * np.arange(n)) % n))
        # a non-surjective f: the diagonal Z_2 -> Z_2 x Z_2
        z2 = zn(2)
        P = ring_product(z2, z2)
        try:
            diag = make_ring_hom(z2, P, [0, 3])
        except NotRingHom:
            diag = None
        if diag is not None:
            for J in P.ideals:
                add(lambda J=J: make_amalgamation(z2, P, diag, J, regular(z2), regular(P),
                                                  np.array([0, 3])))
        return out

    # summary ---------------------------------------------------------------

    def summary(self) -> dict:
        return {
            "rings": len(self.rings),
            "modules": len(self.modules),
            "base_instances": len(self.base),
            "epimorphisms": len(self.epimorphisms),
            "monomorphisms": len(self.monomorphisms),
            "products": len(self.products),
            "triples": len(self.triples),
            "idealizations": len(self.idealizations),
            "amalgamations": len(self.amalgamations),
            "fixtures": {k: v.record() for k, v in sorted(self.fixtures.items())},
            "skipped": list(self.skipped),
        }


def corpus_generate(params: CorpusParams | None = None) -> InstanceCorpus:
    return InstanceCorpus(params)


def gcd_all(xs) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, x)
    return g
