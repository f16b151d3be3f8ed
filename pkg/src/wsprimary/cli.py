"""Command line front end.

    wsprimary check kind=weakly-s-primary module=M submodule=N multset=S
    wsprimary witnesses module=M submodule=N multset=S
    wsprimary enumerate module=M
    wsprimary verify claims=all
    wsprimary describe target=M

Arguments are ``key=value`` tokens naming entries of the ``--config`` file.
Without a config, ``Zn`` names the regular module of ``Z_n`` and
``gens:a,b`` spans a submodule or multiplicative set from generators.
``fixture=<name>`` (optionally ``part=<key>``, e.g. ``part=NK``) selects a
submodule of one of the built-in fixtures instead.

Exit codes: 0 all requested properties hold, 1 some property is false,
2 usage, configuration or audit error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import metadata

from . import claims as harness
from .config import WorkbenchConfig, build_config, parse_config
from .corpus import CorpusParams, InstanceCorpus, FIXTURE_BUILDERS
from .errors import AlgebraError, NotDisjoint, NotProper
from .modules import FiniteModule, Submodule, enumerate_submodules, residual_in_ring
from .predicates import PredicateKind, check, weakly_s_elements
from .rings import FiniteRing, MultClosedSet

COMMANDS = ("check", "witnesses", "enumerate", "verify", "describe")
EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def version() -> str:
    try:
        return metadata.version("wsprimary")
    except metadata.PackageNotFoundError:
        return "0+unknown"


# ---------------------------------------------------------------------------
# argument handling


def parse_tokens(tokens: list[str]) -> dict[str, str]:
    out = {}
    for t in tokens:
        if "=" not in t:
            raise UsageError(f"expected key=value, got {t!r}")
        k, v = t.split("=", 1)
        if not k or k in out:
            raise UsageError(f"bad or repeated key {k!r}")
        out[k] = v
    return out


def _require(args: dict, *keys: str):
    missing = [k for k in keys if k not in args]
    if missing:
        raise UsageError(f"missing argument(s): {', '.join(missing)}")
    return [args[k] for k in keys]


def _fixture_instance(name: str, part: str = "N"):
    if name not in FIXTURE_BUILDERS:
        raise UsageError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURE_BUILDERS))}")
    fx = FIXTURE_BUILDERS[name]()
    d = fx.data
    N = d.get(part)
    if not isinstance(N, Submodule):
        raise UsageError(f"fixture {name!r} has no submodule {part!r}")
    return N.module, N, d.get("S"), fx


def _target(cfg: WorkbenchConfig, args: dict, need_s: bool):
    fx = None
    if "fixture" in args:
        M, N, S, fx = _fixture_instance(args["fixture"], args.get("part", "N"))
        if "multset" in args:
            S = cfg.multset(args["multset"], M.ring)
    else:
        mname, nname = _require(args, "module", "submodule")
        M = cfg.module(mname)
        N = cfg.submodule(nname, M)
        S = cfg.multset(args["multset"], M.ring) if "multset" in args else None
    if need_s and S is None:
        raise UsageError("this predicate needs multset=<name>")
    return M, N, S, fx


# ---------------------------------------------------------------------------
# commands; each returns (results, claim_reports, exit_code)


def cmd_check(cfg, args, ctx):
    (kind_name,) = _require(args, "kind")
    kind = PredicateKind.parse(kind_name)
    M, N, S, fx = _target(cfg, args, kind.uses_s)
    res = {"command": "check", "module": M.id, "submodule": N.short(),
           "multset": S.short() if (S is not None and kind.uses_s) else None}
    if fx is not None:
        res["fixture"] = fx.record()
    try:
        v = check(kind, N, S)
    except NotDisjoint:
        res.update(kind=kind.value, holds=False, error="NotDisjoint",
                   reason="the residual (N:M) meets S")
        return [res], [], EXIT_FALSE
    except NotProper:
        res.update(kind=kind.value, holds=False, error="NotProper", reason="N equals M")
        return [res], [], EXIT_FALSE
    res.update(v.to_dict())
    return [res], [], EXIT_OK if v.holds else EXIT_FALSE


def cmd_witnesses(cfg, args, ctx):
    M, N, S, fx = _target(cfg, args, True)
    res = {"command": "witnesses", "module": M.id, "submodule": N.short(), "multset": S.short()}
    if (residual_in_ring(N).mask & S.mask).any():
        res.update(witnesses=[], error="NotDisjoint", reason="the residual (N:M) meets S")
        return [res], [], EXIT_FALSE
    w = sorted(weakly_s_elements(N, S))
    res["witnesses"] = [M.ring.labels[s] for s in w]
    return [res], [], EXIT_OK if w else EXIT_FALSE


def cmd_enumerate(cfg, args, ctx):
    (mname,) = _require(args, "module")
    M = cfg.module(mname)
    subs = enumerate_submodules(M, cfg.caps.lattice_size)
    pos = {N: i for i, N in enumerate(subs)}
    rows = []
    for N in subs:
        above = [P for P in subs if N < P]
        covers = [pos[P] for P in above if not any(N < Q < P for Q in above)]
        rows.append({"index": pos[N], "members": N.short(), "order": len(N),
                     "covered_by": sorted(covers)})
    res = {"command": "enumerate", "module": M.id, "count": len(subs), "lattice": rows}
    return [res], [], EXIT_OK


def _describe_ring(R: FiniteRing) -> dict:
    return {"kind": "ring", "id": R.id, "order": R.order, "ideals": len(R.ideals),
            "units": [R.labels[u] for u in sorted(R.units)], "reduced": bool(R.is_reduced)}


def _describe_module(M: FiniteModule) -> dict:
    pr = M.properties
    return {"kind": "module", "id": M.id, "ring": M.ring.id, "order": M.order,
            "submodules": len(M.submodules), "faithful": bool(pr.faithful),
            "multiplication": bool(pr.multiplication),
            "zero_divisors": [M.ring.labels[z] for z in sorted(pr.zdivisors)]}


def cmd_describe(cfg, args, ctx):
    (name,) = _require(args, "target")
    sec, obj = cfg.lookup(name)
    if isinstance(obj, FiniteRing):
        res = _describe_ring(obj)
    elif isinstance(obj, FiniteModule):
        res = _describe_module(obj)
    elif isinstance(obj, Submodule):
        res = {"kind": "submodule", "module": obj.module.id, "members": obj.short(),
               "order": len(obj), "proper": obj.is_proper,
               "residual": residual_in_ring(obj).short()}
    elif isinstance(obj, MultClosedSet):
        res = {"kind": "multset", "ring": obj.ring.id, "members": obj.short(),
               "contains_zero": bool(obj.contains_zero)}
    elif sec == "homs":
        res = {"kind": "hom", "source": obj.source.id, "target": obj.target.id,
               "injective": obj.is_injective, "surjective": obj.is_surjective,
               "kernel": obj.kernel.short()}
    else:
        res = {"kind": "amalgamation", "ring": _describe_ring(obj.ring),
               "module": _describe_module(obj.module), "duplication": obj.is_duplication}
    res = {"command": "describe", "name": name, **res, "audit": "ok"}
    return [res], [], EXIT_OK


def cmd_verify(cfg, args, ctx):
    ids = args.get("claims", ctx.claims or "all")
    ids = harness.resolve_claim_ids(ids)
    corpus = ctx.corpus
    reports = harness.verify(ids, corpus)
    out = [r.to_dict() for r in reports]
    code = EXIT_FALSE if any(r.status == harness.Status.FAIL for r in reports) else EXIT_OK
    return [], out, code


HANDLERS = {"check": cmd_check, "witnesses": cmd_witnesses, "enumerate": cmd_enumerate,
            "verify": cmd_verify, "describe": cmd_describe}


# ---------------------------------------------------------------------------
# rendering


def _render_human(report: dict) -> str:
    lines = [f"wsprimary {report['version']}  params {report['params_fingerprint'][:16]}"]
    for r in report["results"]:
        cmd = r.get("command")
        head = f"describe: {r['name']}" if cmd == "describe" else f"{cmd}: module {r['module']}"
        lines.append(head
                     + (f", submodule {r['submodule']}" if r.get("submodule") else "")
                     + (f", multset {r['multset']}" if r.get("multset") else ""))
        if cmd == "check":
            if "error" in r:
                lines.append(f"{r['kind']}: false ({r['error']}: {r['reason']})")
            else:
                lines.append(f"{r['kind']}: {'holds' if r['holds'] else 'fails'}")
                if r.get("witness") is not None:
                    lines.append(f"  witness s = {r['witness']}")
                if r.get("counterexample"):
                    c = r["counterexample"]
                    lines.append(f"  counterexample a={c['a']}, m={c['m']}")
        elif cmd == "witnesses":
            lines.append("weakly S-elements: " + (", ".join(r["witnesses"]) or "none"))
            if "error" in r:
                lines.append(f"  ({r['error']}: {r['reason']})")
        elif cmd == "enumerate":
            lines.append(f"{r['count']} submodules")
            for row in r["lattice"]:
                lines.append(f"  [{row['index']}] order {row['order']} {row['members']} "
                             f"< {row['covered_by']}")
        else:
            for k, v in r.items():
                if k not in ("command", "name"):
                    lines.append(f"  {k}: {v}")
    for c in report["claims"]:
        lines.append(f"{c['claim_id']:16s} {c['status']:8s} checked={c['instances_checked']} "
                     f"skipped={c['instances_skipped_by_hypothesis']} "
                     f"violations={c['violations']} elapsed={c.get('elapsed', 0)}s")
        for cx in c["counterexamples"]:
            lines.append("    " + json.dumps(cx, sort_keys=True))
    lines.append(f"exit {report['exit_code']}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# entry points


class _Context:
    def __init__(self, ns):
        self.claims = ns.claims
        self.max_ring_order = ns.max_ring_order
        self._corpus = None

    @property
    def params(self) -> CorpusParams:
        return CorpusParams(max_ring_order=self.max_ring_order)

    @property
    def corpus(self) -> InstanceCorpus:
        if self._corpus is None:
            self._corpus = InstanceCorpus(self.params)
        return self._corpus


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wsprimary",
                                description="Finite workbench for weakly S-primary submodules.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("args", nargs="*", help="key=value arguments")
    p.add_argument("--config", help="JSON workbench configuration")
    p.add_argument("--claims", help="comma separated claim ids or 'all' (verify)")
    p.add_argument("--max-ring-order", type=int, help="drop corpus rings above this order")
    p.add_argument("--report", help="write the JSON report to this path")
    p.add_argument("--format", choices=("human", "json"), default="human")
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> tuple[dict | None, int]:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return None, EXIT_ERROR if e.code else EXIT_OK
    try:
        if ns.max_ring_order is not None and ns.max_ring_order <= 0:
            raise UsageError("--max-ring-order must be positive")
        args = parse_tokens(ns.args)
        cfg = parse_config(ns.config) if ns.config else build_config({})
        ctx = _Context(ns)
        results, claim_reports, code = HANDLERS[ns.command](cfg, args, ctx)
    except (UsageError, AlgebraError) as e:
        print(f"error: {type(e).__name__}: {e}", file=stderr)
        return None, EXIT_ERROR
    report = {
        "version": version(),
        "params_fingerprint": ctx.params.fingerprint(),
        "command": {"name": ns.command, "args": args, "config": ns.config,
                    "claims": ns.claims, "max_ring_order": ns.max_ring_order},
        "results": results,
        "claims": claim_reports,
        "exit_code": code,
    }
    if ns.report:
        with open(ns.report, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if ns.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True), file=stdout)
    else:
        print(_render_human(report), file=stdout)
    return report, code


def main(argv: list[str] | None = None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
