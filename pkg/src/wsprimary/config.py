"""JSON workbench configuration for the command line.

Layout (all sections optional)::

    {
      "rings":         {"R": {"zn": 36}},
      "modules":       {"M": {"regular": "R"}},
      "submodules":    {"N": {"module": "M", "gens": [6]}},
      "multsets":      {"S": {"ring": "R", "gens": [3]}},
      "homs":          {"h": {"source": "M", "target": "M2", "table": [...]}},
      "amalgamations": {"A": {"R1": "R", "J": [2]}},
      "caps":          {"ring_order": 96, "module_order": 256, "lattice_size": 4096}
    }

Wherever a ring or module recipe is expected a declared name may be used
instead.  Element references are labels where the structure defines them
and indices otherwise.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .constructions import AmalgamationContext, make_amalgamation_from_recipe
from .errors import AlgebraError, AuditFailure, ParseError, UnresolvedReference
from .modules import (
    DEFAULT_LATTICE_CAP,
    DEFAULT_MODULE_CAP,
    FiniteModule,
    ModuleHom,
    Submodule,
    make_hom,
    make_module,
    regular,
    submodule_span,
)
from .rings import DEFAULT_ORDER_CAP, FiniteRing, MultClosedSet, make_ring, mult_set_closure, zn

SECTIONS = ("rings", "modules", "submodules", "multsets", "homs", "amalgamations", "caps")
_ZN = re.compile(r"^Z(\d+)$")


@dataclass
class Caps:
    ring_order: int = DEFAULT_ORDER_CAP
    module_order: int = DEFAULT_MODULE_CAP
    lattice_size: int = DEFAULT_LATTICE_CAP


@dataclass
class WorkbenchConfig:
    rings: dict[str, FiniteRing] = field(default_factory=dict)
    modules: dict[str, FiniteModule] = field(default_factory=dict)
    submodules: dict[str, Submodule] = field(default_factory=dict)
    multsets: dict[str, MultClosedSet] = field(default_factory=dict)
    homs: dict[str, ModuleHom] = field(default_factory=dict)
    amalgamations: dict[str, AmalgamationContext] = field(default_factory=dict)
    caps: Caps = field(default_factory=Caps)
    source: str | None = None

    # lookups used by the CLI; ``Zn`` is accepted for the regular module of Z_n

    def ring(self, name: str) -> FiniteRing:
        if name in self.rings:
            return self.rings[name]
        if name in self.modules:
            return self.modules[name].ring
        m = _ZN.match(str(name))
        if m:
            return zn(int(m.group(1)))
        raise UnresolvedReference(f"unknown ring {name!r}")

    def module(self, name: str) -> FiniteModule:
        if name in self.modules:
            return self.modules[name]
        if name in self.amalgamations:
            return self.amalgamations[name].module
        m = _ZN.match(str(name))
        if m or name in self.rings:
            return regular(self.ring(name))
        raise UnresolvedReference(f"unknown module {name!r}")

    def submodule(self, name: str, M: FiniteModule | None = None) -> Submodule:
        if name in self.submodules:
            N = self.submodules[name]
            if M is not None and N.module != M:
                raise UnresolvedReference(f"submodule {name!r} lives in {N.module.id}, not {M.id}")
            return N
        if M is not None and str(name).startswith("gens:"):
            return submodule_span(M, [_elem(M, g) for g in _split(name[5:])])
        raise UnresolvedReference(f"unknown submodule {name!r}")

    def multset(self, name: str, R: FiniteRing | None = None) -> MultClosedSet:
        if name in self.multsets:
            S = self.multsets[name]
            if R is not None and S.ring != R:
                raise UnresolvedReference(f"multset {name!r} lives in {S.ring.id}, not {R.id}")
            return S
        if R is not None and str(name).startswith("gens:"):
            return mult_set_closure(R, [_elem(R, g) for g in _split(name[5:])])
        raise UnresolvedReference(f"unknown multset {name!r}")

    def lookup(self, name: str):
        """Any declared structure, searched section by section."""
        for sec in SECTIONS[:-1]:
            table = getattr(self, sec)
            if name in table:
                return sec, table[name]
        m = _ZN.match(str(name))
        if m:
            return "rings", zn(int(m.group(1)))
        raise UnresolvedReference(f"unknown name {name!r}")


def _split(text: str) -> list:
    return [int(t) if t.lstrip("-").isdigit() else t for t in text.split(",") if t]


def _elem(structure, ref) -> int:
    if isinstance(ref, str) and ref.lstrip("-").isdigit():
        ref = int(ref)
    return structure.index(ref)


def _load(path) -> dict:
    p = Path(path)
    if not p.exists():
        raise ParseError(f"{p}: no such file")
    text = p.read_text()
    if not text.strip():
        return {}
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{p}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{p}:1:1: top level must be an object")
    return data


def parse_config(path) -> WorkbenchConfig:
    return build_config(_load(path), source=str(path))


def build_config(data: dict, source: str | None = None) -> WorkbenchConfig:
    unknown = set(data) - set(SECTIONS)
    if unknown:
        raise ParseError(f"unknown config section(s): {', '.join(sorted(unknown))}")
    cfg = WorkbenchConfig(source=source)
    caps = data.get("caps", {})
    try:
        cfg.caps = Caps(**caps)
    except TypeError as e:
        raise ParseError(f"caps: {e}") from None
    if min(cfg.caps.ring_order, cfg.caps.module_order, cfg.caps.lattice_size) <= 0:
        raise AuditFailure("caps must be positive")
    rc, mc = cfg.caps.ring_order, cfg.caps.module_order

    def ring_ref(x):
        if isinstance(x, str):
            if x in cfg.rings:
                return cfg.rings[x]
            if _ZN.match(x):
                return cfg.ring(x)
            raise UnresolvedReference(f"unknown ring {x!r}")
        if isinstance(x, dict):
            return _resolve_recipe(x, ring_ref, module_ref)
        return x

    def module_ref(x):
        if isinstance(x, str):
            if x in cfg.modules:
                return cfg.modules[x]
            raise UnresolvedReference(f"unknown module {x!r}")
        if isinstance(x, dict):
            return _resolve_recipe(x, ring_ref, module_ref)
        return x

    with _context("rings"):
        for name, rec in data.get("rings", {}).items():
            with _context(f"rings.{name}"):
                cfg.rings[name] = make_ring(ring_ref(rec), rc)
    with _context("modules"):
        for name, rec in data.get("modules", {}).items():
            with _context(f"modules.{name}"):
                M = make_module(_resolve_module(rec, ring_ref, module_ref), mc, rc)
                cfg.modules[name] = M[0] if isinstance(M, tuple) else M
    for name, rec in data.get("amalgamations", {}).items():
        with _context(f"amalgamations.{name}"):
            rec = {k: (ring_ref(v) if k in ("R1", "R2") else
                       module_ref(v) if k in ("M1", "M2") else v) for k, v in rec.items()}
            cfg.amalgamations[name] = make_amalgamation_from_recipe(rec, rc, mc)
    for name, rec in data.get("submodules", {}).items():
        with _context(f"submodules.{name}"):
            M = cfg.module(_need(rec, "module"))
            cfg.submodules[name] = submodule_span(M, [_elem(M, g) for g in rec.get("gens", [])])
    for name, rec in data.get("multsets", {}).items():
        with _context(f"multsets.{name}"):
            R = cfg.ring(_need(rec, "ring"))
            gens = [_elem(R, g) for g in _need(rec, "gens")]
            S = mult_set_closure(R, gens)
            if rec.get("closure", True) is False and set(S.members) != set(gens):
                raise AuditFailure(f"generators of {name!r} are not multiplicatively closed")
            cfg.multsets[name] = S
    for name, rec in data.get("homs", {}).items():
        with _context(f"homs.{name}"):
            A, B = cfg.module(_need(rec, "source")), cfg.module(_need(rec, "target"))
            table = [_elem(B, x) for x in _need(rec, "table")]
            cfg.homs[name] = make_hom(A, B, table)
    return cfg


def _need(rec: dict, key: str):
    if not isinstance(rec, dict) or key not in rec:
        raise ParseError(f"missing key {key!r}")
    return rec[key]


def _resolve_recipe(rec: dict, ring_ref, module_ref) -> dict:
    """Swap declared names for structures inside a ring recipe."""
    if len(rec) != 1:
        return rec
    (kind, arg), = rec.items()
    if kind == "product":
        return {kind: [ring_ref(r) for r in arg]}
    if kind == "quotient":
        return {kind: {**arg, "ring": ring_ref(arg["ring"])}}
    if kind == "idealization":
        return {kind: {**arg, "module": module_ref(arg["module"])}}
    if kind == "duplication":
        return {kind: {**arg, "ring": ring_ref(arg["ring"])}}
    return rec


def _resolve_module(rec, ring_ref, module_ref):
    if isinstance(rec, str):
        return module_ref(rec)
    if not isinstance(rec, dict) or len(rec) != 1:
        return rec
    (kind, arg), = rec.items()
    if kind in ("regular", "zero"):
        return {kind: ring_ref(arg)}
    if kind in ("direct_sum", "product"):
        return {kind: [_resolve_module(m, ring_ref, module_ref) for m in arg]}
    if kind == "quotient":
        return {kind: {**arg, "module": _resolve_module(arg["module"], ring_ref, module_ref)}}
    if kind == "tables":
        return {kind: {**arg, "ring": ring_ref(arg["ring"])}}
    return rec


class _context:
    """Prefix configuration errors with the section being built."""

    def __init__(self, where: str):
        self.where = where

    def __enter__(self):
        return self

    def __exit__(self, tp, exc, tb):
        if exc is None or not isinstance(exc, AlgebraError):
            return False
        if getattr(exc, "_where", None):
            return False
        if isinstance(exc, (ParseError, UnresolvedReference, AuditFailure)):
            exc.args = (f"{self.where}: {exc}",)
            exc._where = self.where
            return False
        err = AuditFailure(f"{self.where}: {type(exc).__name__}: {exc}")
        err._where = self.where
        raise err from exc
