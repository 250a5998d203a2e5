"""``ordwalk``: command-line front end.

Every command builds a :class:`RunReport` and prints it as canonical JSON;
``suite`` prints one line per check unless ``--json`` is given.  Exit codes: 0 the
computation succeeded or the property holds, 1 the property is violated,
2 fuel ran out or the answer is unknown, 3 the input was invalid.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import acceptance, cech, families, walks
from .csystem import CSystem
from .finfun import MODES, OrdinalFunction, Unsupported, compare_functions, transform
from .groupsalg import FgAbelianGroup, GroupHom
from .ordcore import OrdinalSyntaxError, add, classify, compare, format_ordinal, fund_seq, parse
from .sampling import probe_points

EXIT_OK, EXIT_VIOLATED, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3
OUTCOME = {EXIT_OK: "pass", EXIT_VIOLATED: "fail", EXIT_UNKNOWN: "unknown"}


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    digest: str
    code: int = EXIT_OK
    result: object = None
    witnesses: list = field(default_factory=list)
    seed: int = 0
    seconds: float | None = None

    def to_json(self, timing: bool = False):
        out = {"command": self.command, "inputs_sha256": self.digest, "seed": self.seed,
               "outcome": OUTCOME.get(self.code, "error"), "exit_code": self.code,
               "result": self.result, "witnesses": self.witnesses}
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 3)
        return out

    def render(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# input helpers


def _ord(text):
    try:
        return parse(str(text))
    except OrdinalSyntaxError as exc:
        raise InputError(f"bad ordinal {text!r}: {exc}") from None


def _load(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _csystem(name: str) -> CSystem:
    if name in ("canonical", "full"):
        return CSystem(name)
    return CSystem.from_json(_load(name))


def _inputs(args) -> dict:
    """Everything that determines the output, for the digest."""
    data = {k: v for k, v in sorted(vars(args).items())
            if k not in ("func", "json", "out", "timing") and not k.startswith("_")}
    for key in ("infile", "other"):
        p = getattr(args, key, None)
        if p:
            try:
                data[key + "_content"] = Path(p).read_text()
            except OSError:
                pass
    csys = getattr(args, "csystem", None)
    if csys and csys not in ("canonical", "full"):
        try:
            data["csystem_content"] = Path(csys).read_text()
        except OSError:
            pass
    return data


def _digest(data) -> str:
    return hashlib.sha256(json.dumps(data, sort_keys=True, default=str).encode()).hexdigest()


def _verdict_code(status: str) -> int:
    return {"yes": EXIT_OK, "no": EXIT_VIOLATED}.get(status, EXIT_UNKNOWN)


# ---------------------------------------------------------------------------
# ord


def cmd_ord(args, rep: RunReport):
    a = _ord(args.a)
    if args.action == "parse":
        kind, pred = classify(a)
        rep.result = {"canonical": format_ordinal(a), "class": kind}
        if pred is not None:
            rep.result["predecessor"] = format_ordinal(pred)
    elif args.action == "compare":
        rep.result = {"compare": compare(a, _ord(args.b))}
    elif args.action == "add":
        rep.result = {"sum": format_ordinal(add(a, _ord(args.b)))}
    elif args.action == "fund":
        if not a.is_limit:
            raise InputError(f"{format_ordinal(a)} is not a limit")
        rep.result = {"sequence": [format_ordinal(fund_seq(a, k)) for k in range(args.count)]}


# ---------------------------------------------------------------------------
# walk


def cmd_walk(args, rep: RunReport):
    C = _csystem(args.csystem)
    if args.action == "profile":
        if args.kind not in (1, 2):
            raise InputError("profiles exist for kinds 1 and 2")
        prof = walks.coherence_profile(args.kind, C, _ord(args.beta), _ord(args.gamma), args.fuel)
        out = prof.outcome
        res = {"kind": prof.kind, "cells": prof.cells, "outcome": type(out).__name__}
        if isinstance(out, walks.FiniteDiff):
            res["points"] = [format_ordinal(p) for p in out.points]
        elif isinstance(out, walks.PiecewiseDiff):
            res["pieces"] = [[format_ordinal(lo), format_ordinal(hi), v] for lo, hi, v in out.pieces]
            inf = walks.infinite_nonzero_piece(out)
            if inf is not None:
                res["infinite_nonzero_piece"] = [format_ordinal(inf.interval.lo),
                                                 format_ordinal(inf.interval.hi), inf.value]
        else:
            rep.code = EXIT_UNKNOWN
        rep.result = res
        return
    alpha, beta = _ord(args.alpha), _ord(args.beta)
    if args.action == "trace":
        rep.result = {"steps": [format_ordinal(s) for s in walks.trace(C, alpha, beta, args.fuel)]}
    elif args.action == "rho":
        v = walks.rho(args.kind, C, alpha, beta)
        rep.result = {"kind": args.kind, "value": v if isinstance(v, int) else format_ordinal(v)}
    elif args.action == "maxl":
        rep.result = {"maxl": format_ordinal(walks.max_l(C, alpha, beta))}


# ---------------------------------------------------------------------------
# fun


def _function(path) -> OrdinalFunction:
    return OrdinalFunction.from_json(_load(path))


def cmd_fun(args, rep: RunReport):
    f = _function(args.infile)
    if args.action == "eval":
        rep.result = {"at": format_ordinal(_ord(args.at)), "value": list(f(_ord(args.at)))}
    elif args.action == "compare":
        g = _function(args.other)
        v = compare_functions(args.mode, f, g, args.fuel, seed=args.seed)
        rep.code = _verdict_code(v.status)
        rep.result = {"mode": args.mode, "status": v.status, "reason": v.reason}
        if v.witness is not None:
            rep.witnesses.append(v.witness_json())
    elif args.action == "transform":
        rep.result = transform(args.direction, f).to_json()


# ---------------------------------------------------------------------------
# coh


def _family(data) -> families.IndexedFamily:
    return families.IndexedFamily.from_json(data)


def cmd_coh(args, rep: RunReport):
    if args.action == "game":
        h, log = families.play_game(args.n, args.stages, args.seed)
        bad = [s for s, dag, inc in log if (dag is not None and not dag.holds) or not inc.holds]
        rep.code = EXIT_VIOLATED if bad else EXIT_OK
        rep.witnesses = [{"stage": s} for s in bad]
        rep.result = {"n": args.n, "stages": args.stages,
                      "tops": [format_ordinal(t) for t in h.tops],
                      "dagger_checked": sum(1 for _, dag, _ in log if dag is not None)}
        return
    data = _load(args.infile)
    if args.action == "check":
        v = families.is_coherent(_family(data), args.mode, args.fuel)
        rep.code = _verdict_code(v.status)
        rep.result = {"mode": args.mode, "status": v.status}
        if v.status != "yes":
            rep.witnesses.append(v.to_json())
    elif args.action == "trivialize":
        fam = _family(data)
        try:
            psi = families.trivialize_with_top(fam, args.mode)
        except families.IncoherentError as exc:
            rep.code = _verdict_code(exc.verdict.status)
            rep.witnesses.append(exc.verdict.to_json())
            rep.result = {"status": "not coherent"}
            return
        rep.result = psi.to_json()
    elif args.action == "extend":
        phi, psi = _family(data["phi"]), _family(data["psi"])
        out = families.extend_trivialization(phi, psi, _ord(data["xi"]), args.mode)
        rep.result = out.to_json()
    elif args.action == "stretch":
        fam = _family(data["family"])
        rule = data.get("rule", {})
        if rule.get("identity"):
            club = families.ClubRule.ident()
        else:
            club = families.ClubRule.ladder(_ord(rule["ladder"]),
                                            [(_ord(a), _ord(b)) for a, b in rule.get("table", {}).items()])
        delta = _ord(data["delta"]) if "delta" in data else None
        rep.result = families.stretch(fam, club, delta).to_json()
    elif args.action == "tree":
        fam = _family(data)
        top = fam.indices[-1] if fam.indices else None
        probes = probe_points(top, args.probes, args.seed) if top is not None else []
        rep.result = {"levels": [lv.to_json() for lv in families.tree_report(fam, probes)]}


# ---------------------------------------------------------------------------
# cech


def _hom(data, src, dst) -> GroupHom:
    return GroupHom(tuple(src), tuple(dst), data)


def _coeff_presheaves(data, kind):
    groups = {k: FgAbelianGroup.from_json(data[k]) for k in ("P", "E", "F")}
    ps = {k: cech.PointPresheaf(kind, g.orders) for k, g in groups.items()}
    inj = _hom(data["inj"], groups["P"].orders, groups["E"].orders)
    surj = _hom(data["surj"], groups["E"].orders, groups["F"].orders)
    return ps, inj, surj


def cmd_cech(args, rep: RunReport):
    data = _load(args.infile)
    if args.action in ("complex", "cohomology"):
        cover, P = cech.cover_from_json(data)
        top = max(args.max_degree, args.degree + 1)
        cx = cech.build_complex(cover, P, top)
        if args.action == "complex":
            rep.result = {"groups": [str(cx.group(j)) for j in range(cx.top + 1)],
                          "differentials": [[list(r) for r in d.matrix] for d in cx.differentials]}
        else:
            H = cech.cohomology(cx, args.degree)
            rep.result = {"degree": args.degree, "group": str(H), **H.to_json()}
    elif args.action == "refine":
        V, P = cech.cover_from_json(data["cover"])
        W, _ = cech.cover_from_json(data["refinement"])
        maps = [cech.refinement_map(V, W, r, P, args.max_degree) for r in data["maps"]]
        res = {"commutes": [m.commutes for m in maps]}
        degrees = range(args.max_degree)
        if len(maps) > 1:
            res["induced_equal"] = {str(n): all(maps[0].induced_equal(m, n) for m in maps[1:])
                                    for n in degrees}
        res["isomorphism"] = {str(n): maps[0].is_isomorphism(n) for n in degrees}
        ok = all(res["commutes"]) and all(res.get("induced_equal", {}).values())
        rep.code = EXIT_OK if ok else EXIT_VIOLATED
        rep.result = res
    elif args.action == "les":
        cover = cech.CoverModel.from_sets(data["sets"])
        ps, inj, surj = _coeff_presheaves(data, data.get("presheaf", "constant"))
        P, E, F = ps["P"], ps["E"], ps["F"]
        r = cech.les_segment(cover, P, E, F, lambda L: P.hom_from_coeff(inj, L, E),
                             lambda L: E.hom_from_coeff(surj, L, F), args.degree)
        rep.code = EXIT_OK if r.exact else EXIT_VIOLATED
        rep.result = r.to_json()
    elif args.action == "homotopy":
        C = [_ord(x) for x in data["C"]]
        mbar = ({_ord(a): _ord(b) for a, b in data["mbar"].items()} if "mbar" in data
                else cech.successor_map(C))
        k = int(data.get("k", args.degree))
        group = FgAbelianGroup.from_json(data.get("group", {"rank": 1}))
        if "cochain" in data:
            f = {}
            for key, fj in data["cochain"].items():
                t = tuple(_ord(x) for x in key.split("|"))
                fj = dict(fj)
                fj.setdefault("domain", format_ordinal(t[0]))
                fj.setdefault("group", group.to_json())
                f[t] = OrdinalFunction.from_json(fj)
        else:
            f = cech.random_cochain(C, mbar, k, random.Random(args.seed), group)
        reports = [cech.homotopy_check(C, mbar, f, k, group, which) for which in ("im", "mi")]
        rep.code = EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATED
        rep.result = {"checks": [r.to_json() for r in reports]}
        rep.witnesses = [r.to_json() for r in reports if not r.holds]


# ---------------------------------------------------------------------------
# suite


def cmd_suite(args, rep: RunReport):
    ids = sorted(set(args.checks)) if args.checks else None
    results = acceptance.run_suite(args.seed, args.profile, ids)
    rep.code = max((r.code for r in results), default=0)
    rep.result = {"profile": args.profile,
                  "checks": [r.to_json(args.timing) for r in sorted(results, key=lambda r: r.id)]}
    rep.witnesses = [{"id": r.id, "name": r.name} for r in results if r.outcome != "pass"]


def _suite_text(rep: RunReport) -> str:
    lines = [f"[{c['outcome']}] {c['id']:2d} {c['name']}" for c in rep.result["checks"]]
    lines.append(f"suite {rep.to_json()['outcome']} (seed {rep.seed}, {rep.result['profile']})")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--json", action="store_true", default=S, help="print the JSON report")
    common.add_argument("--seed", type=int, default=S, help="random seed (default 0)")
    common.add_argument("--fuel", type=int, default=S, help="step/cell budget (default 100000)")
    common.add_argument("--out", default=S, help="write the JSON report to this path")
    common.add_argument("--timing", action="store_true", default=S,
                        help="include wall-clock timings (breaks byte determinism)")

    p = argparse.ArgumentParser(prog="ordwalk", parents=[common],
                                description="Walks on ordinals, coherent families and Cech complexes.")
    p.set_defaults(json=False, seed=0, fuel=walks.DEFAULT_PROFILE_FUEL, out=None, timing=False)
    sub = p.add_subparsers(dest="command", required=True)

    o = sub.add_parser("ord", parents=[common], help="ordinal notation")
    o.add_argument("action", choices=["parse", "compare", "add", "fund"])
    o.add_argument("a")
    o.add_argument("b", nargs="?")
    o.add_argument("--count", type=int, default=5)
    o.set_defaults(func=cmd_ord)

    w = sub.add_parser("walk", parents=[common], help="walks and rho functions")
    w.add_argument("action", choices=["trace", "rho", "maxl", "profile"])
    w.add_argument("--csystem", default="canonical")
    w.add_argument("--alpha")
    w.add_argument("--beta")
    w.add_argument("--gamma")
    w.add_argument("--kind", type=int, default=2, choices=[1, 2, 3])
    w.set_defaults(func=cmd_walk)

    f = sub.add_parser("fun", parents=[common], help="ordinal functions")
    f.add_argument("action", choices=["eval", "compare", "transform"])
    f.add_argument("--in", dest="infile", required=True)
    f.add_argument("--other")
    f.add_argument("--at")
    f.add_argument("--mode", choices=MODES, default="exact")
    f.add_argument("--direction", choices=["del", "del_inv", "shift_r", "shift_r_inv"], default="del")
    f.set_defaults(func=cmd_fun)

    c = sub.add_parser("coh", parents=[common], help="coherent families")
    c.add_argument("action", choices=["check", "trivialize", "extend", "stretch", "game", "tree"])
    c.add_argument("--in", dest="infile")
    c.add_argument("--mode", choices=["exact", "modFinite"], default="modFinite")
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--stages", type=int, default=20)
    c.add_argument("--probes", type=int, default=32)
    c.set_defaults(func=cmd_coh)

    e = sub.add_parser("cech", parents=[common], help="Cech complexes of covers")
    e.add_argument("action", choices=["complex", "cohomology", "refine", "les", "homotopy"])
    e.add_argument("--in", dest="infile", required=True)
    e.add_argument("--degree", type=int, default=0)
    e.add_argument("--max-degree", type=int, default=3)
    e.set_defaults(func=cmd_cech)

    s = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    s.add_argument("--profile", choices=acceptance.PROFILES, default="quick")
    s.add_argument("--checks", type=int, nargs="*", choices=sorted(acceptance.CHECKS))
    s.set_defaults(func=cmd_suite)
    return p


_REQUIRED = {("walk", "trace"): ("alpha", "beta"), ("walk", "rho"): ("alpha", "beta"),
             ("walk", "maxl"): ("alpha", "beta"), ("walk", "profile"): ("beta", "gamma"),
             ("fun", "eval"): ("at",), ("fun", "compare"): ("other",),
             ("coh", "check"): ("infile",), ("coh", "trivialize"): ("infile",),
             ("coh", "extend"): ("infile",), ("coh", "stretch"): ("infile",),
             ("coh", "tree"): ("infile",)}


def run(argv=None) -> tuple:
    """Parse ``argv`` and execute; returns ``(exit code, report or None)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_INPUT if exc.code else EXIT_OK), None
    rep = RunReport(f"{args.command} {getattr(args, 'action', '')}".strip(),
                    _digest(_inputs(args)), seed=args.seed)
    missing = [k for k in _REQUIRED.get((args.command, getattr(args, "action", None)), ())
               if getattr(args, k, None) is None]
    if args.command == "ord" and args.action in ("compare", "add") and args.b is None:
        missing.append("b")
    t0 = time.perf_counter()
    try:
        if missing:
            raise InputError("missing " + ", ".join("--" + m.replace("infile", "in") for m in missing))
        args.func(args, rep)
    except (InputError, ValueError, KeyError, Unsupported) as exc:
        rep.code = EXIT_INPUT
        rep.result = {"error": f"{type(exc).__name__}: {exc}"}
    except walks.FuelExhaustedError as exc:
        rep.code = EXIT_UNKNOWN
        rep.result = {"error": str(exc)}
    rep.seconds = time.perf_counter() - t0
    return rep.code, (rep, args)


def main(argv=None) -> int:
    code, packed = run(argv)
    if packed is None:
        return code
    rep, args = packed
    text = rep.render(args.timing)
    if args.out:
        Path(args.out).write_text(text + "\n")
    if args.json:
        print(text)
    elif args.command == "suite" and rep.code != EXIT_INPUT:
        print(_suite_text(rep))
    elif not args.out:
        print(text)
    if rep.code == EXIT_INPUT:
        print(f"ordwalk: {rep.result['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
