"""
The ``coxcat`` command line.

Every command prints a JSON document carrying ``"schema": "coxcat/1"``
(``charts show`` and the DOT/OFF exports print plain text). Group elements
are written as one-line forms, with negative entries as ``-k``; a word in
the simple labels is accepted instead when prefixed by ``s``, as in
``s0,1,0``.

Exit codes: 0 when everything checked passes, 1 when a check fails, 2 for
usage errors.

>>> main(["cohomology", "betti", "--type", "B", "--rank", "2", "--coxeter", "0,1"])
{
  "betti": [
    1,
    2,
    3
  ],
  "schema": "coxcat/1"
}
0
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .catalan import (
    CoxeterElement, build_nc, coxeter_element, enumerate_coxeter_elements, verify_clusters,
)
from .rootsys import (
    CoxcatError, RootSystemData, ValidationError, WeylElement, parse_one_line, root_system,
)

SCHEMA = "coxcat/1"
RANK_LIMITS = {"A": 7, "B": 4, "C": 4, "D": 4}
SUITES = ("hasseunion", "equivwwc", "bruhatmax", "cluster", "polypositroid",
          "complex", "tiling", "gkm", "plucker")


class UsageError(CoxcatError):
    pass


@dataclass
class RunConfig:
    type: str
    rank: int
    coxeter: tuple[int, ...] | None = None
    lam: tuple[int, ...] | None = None
    prime: int = 10007
    trials: int = 100
    seed: int = 0
    fmt: str = "json"
    out: str | None = None

    def root_system(self) -> RootSystemData:
        return root_system(self.type, self.rank)

    def coxeter_element(self) -> CoxeterElement:
        rs = self.root_system()
        word = self.coxeter if self.coxeter is not None else rs.datum.labels
        if sorted(word) != sorted(rs.datum.labels):
            raise UsageError(f"Coxeter word must use each of {list(rs.datum.labels)} once")
        return coxeter_element(rs, word)


# encoding

def _elt(w: WeylElement):
    return list(w.one_line) if w.one_line is not None else ["s"] + list(w.word_labels)


def _key(w: WeylElement) -> str:
    from .orders import element_label
    return element_label(w)


def _jsonable(x):
    if isinstance(x, WeylElement):
        return _elt(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(_key(k) if isinstance(k, WeylElement) else k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    return x


def parse_element(rs: RootSystemData, text: str) -> WeylElement:
    text = text.strip()
    if text.startswith("s"):
        word = [int(a) for a in text[1:].split(",") if a]
        for a in word:
            if a not in rs.datum.labels:
                raise UsageError(f"{a} is not a simple label")
        return rs.from_word(word, labels=True)
    try:
        return rs.from_one_line(parse_one_line(text))
    except (ValueError, ValidationError) as e:
        raise UsageError(str(e)) from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in text.split(",") if a.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("COXCAT_THREADS", "1")))
    except ValueError:
        return 1


# verification suites

def _suite_hasseunion(c, cfg):
    from .intervals import verify_hasse_union
    r = verify_hasse_union(c)
    fails = list(r.failures)
    if not r.edges_covered:
        fails.append({"reason": "translated covers do not give every Kreweras cover"})
    return r.checked, fails


def _suite_equivwwc(c, cfg):
    from .intervals import classify_translates
    r = classify_translates(c)
    fails = list(r.failures)
    if len(r.classes) != len(build_nc(c).positive_subset):
        fails.append({"reason": "number of translates differs from the positive Catalan number"})
    return r.checked, fails


def _suite_bruhatmax(c, cfg):
    from .intervals import length_additive_elements, translated_interval
    from .sortable import nc_c, pi_down, psi_labels
    rs = c.rs
    nc = build_nc(c)
    fails, n = [], 0
    for w in length_additive_elements(c):
        n += 1
        I = translated_interval(w, c)
        u = I.bruhat_max
        if u != nc_c(pi_down(w.inverse() * rs.w0, c), c):
            fails.append({"w": w, "reason": "Bruhat max is not nc_c of the projection", "u": u})
        if I.neighbors_of_max() != sorted(t * u for t in nc.inv_nc[u]):
            fails.append({"w": w, "reason": "neighbours of the max", "u": u})
        if sorted(psi_labels(w, c)) != sorted(I.decreasing_labels()):
            fails.append({"w": w, "reason": "skip labels differ from the decreasing chain"})
    return n, fails


def _suite_cluster(c, cfg):
    return len(build_nc(c).elements), verify_clusters(c)


def _suite_polypositroid(c, cfg):
    from .polytope import build_moment_complex, moment_polytope, polypositroid_test
    mc = build_moment_complex(c, cfg.lam)
    fails, n = [], 0
    for face, rec in mc.faces.items():
        if rec["dim"] < 1:
            continue
        n += 1
        if not polypositroid_test(moment_polytope(face, cfg.lam), c):
            fails.append({"face": sorted(face), "reason": "not a polypositroid"})
    return n, fails


def _suite_complex(c, cfg):
    from .polytope import build_moment_complex
    fails = []
    try:
        mc = build_moment_complex(c, cfg.lam)
    except CoxcatError as e:
        return 1, [{"reason": str(e)}]
    if len(mc.top_faces) != len(build_nc(c).positive_subset):
        fails.append({"reason": "top faces differ from the positive Catalan number"})
    if mc.euler_characteristic() != 1:
        fails.append({"reason": "Euler characteristic", "value": mc.euler_characteristic()})
    return len(mc.faces), fails


def _suite_tiling(c, cfg):
    from .polytope import hhmp_tiling_check
    r = hhmp_tiling_check(c, cfg.lam)
    fails = []
    if r.total != r.permutahedron_volume:
        fails.append({"reason": "volumes", "total": r.total, "permutahedron": r.permutahedron_volume})
    fails += [{"reason": "overlap", "pieces": list(p)} for p in r.overlaps]
    return len(r.piece_volumes), fails


def _suite_gkm(c, cfg):
    from .gkm import verify_gkm_bases
    r = verify_gkm_bases(c)
    return r.checked, r.failures


def _suite_plucker(c, cfg):
    from .charts import verify_plucker_vanishing
    r = verify_plucker_vanishing(c, cfg.trials, cfg.prime, cfg.seed)
    fails = list(r.failures)
    if r.min_nonvanishing_rate < 0.99:
        fails.append({"reason": "Pl_u vanishes too often", "rate": r.min_nonvanishing_rate})
    return r.samples, fails


def run_suite(name: str, c: CoxeterElement, cfg: RunConfig) -> dict:
    fn = globals()[f"_suite_{name}"]
    try:
        checked, fails = fn(c, cfg)
    except CoxcatError as e:
        checked, fails = 0, [{"reason": f"{type(e).__name__}: {e}"}]
    return {"checked": checked, "failures": _jsonable(fails[:20]),
            "failure_count": len(fails), "ok": not fails}


# commands

def _cmd_enumerate(args, cfg):
    rs = cfg.root_system()
    what = args.what
    if what == "weyl":
        return {"elements": [_elt(w) for w in rs.elements()], "order": len(rs.elements())}, 0
    if what == "coxeter":
        return {"coxeter_elements": [{"word": list(c.labels), "element": _elt(c.element)}
                                     for c in enumerate_coxeter_elements(rs)]}, 0
    if what == "reflections":
        return {"reflections": [{"element": _elt(t.element), "root": list(t.root.coords)}
                                for t in rs.reflections]}, 0
    c = cfg.coxeter_element()
    if what == "sortable":
        from .sortable import sortable_elements
        return {"coxeter": list(c.labels), "sortable": [_elt(x) for x in sortable_elements(c)]}, 0
    nc = build_nc(c)
    return {
        "coxeter": list(c.labels),
        "elements": [_elt(u) for u in nc.elements],
        "hasse": [[_elt(a), _elt(b), _elt(t)] for a, b, t in nc.kreweras_hasse],
        "positive": [_elt(u) for u in nc.positive_subset],
        "inv_nc": {_key(u): sorted(_elt(t) for t in nc.inv_nc[u]) for u in nc.elements},
        "clust_plus": {_key(u): sorted(list(r.coords) for r in nc.clust_plus[u]) for u in nc.elements},
    }, 0


def _cmd_sortable(args, cfg):
    from .sortable import c_sorting_word, is_sortable, nc_c, pi_down, pi_up, skips
    rs = cfg.root_system()
    c = cfg.coxeter_element()
    x = parse_element(rs, args.element)
    lab = rs.datum.labels
    sw = c_sorting_word(x, c)
    out = {
        "coxeter": list(c.labels),
        "element": _elt(x),
        "sorting_word": [lab[s] for s in sw.letters],
        "syllables": [sorted(lab[s] for s in syl) for syl in sw.syllables],
        "sortable": is_sortable(x, c),
        "pi_down": _elt(pi_down(x, c)),
        "pi_up": _elt(pi_up(x, c)),
    }
    if out["sortable"]:
        sk = skips(x, c)
        out["skips"] = [{"position": p, "reflection": _elt(t), "forced": f}
                        for p, t, f in zip(sk.positions, sk.reflections, sk.forced)]
        out["nc_c"] = _elt(nc_c(x, c))
    return out, 0


def _cmd_verify(args, cfg):
    c = cfg.coxeter_element()
    names = SUITES if args.suite == "all" else (args.suite,)
    with ThreadPoolExecutor(max_workers=_threads()) as ex:
        results = dict(zip(names, ex.map(lambda s: run_suite(s, c, cfg), names)))
    ok = all(r["ok"] for r in results.values())
    return {"coxeter": list(c.labels), "suites": dict(sorted(results.items())), "ok": ok}, 0 if ok else 1


def _cmd_export(args, cfg):
    rs = cfg.root_system()
    what, fmt = args.what, cfg.fmt
    if what == "root-system":
        d = rs.datum
        return {"type": d.type_label, "rank": d.rank, "labels": list(d.labels),
                "cartan_matrix": [list(r) for r in d.cartan_matrix],
                "positive_roots": [list(rs.root(i).coords) for i in rs.positive_indices]}, 0
    if what == "complex":
        from .polytope import build_moment_complex
        mc = build_moment_complex(cfg.coxeter_element(), cfg.lam)
        if fmt == "dot":
            return mc.to_dot(), 0
        if fmt == "off":
            return mc.to_off(), 0
        return json.loads(mc.to_json()), 0
    from .orders import bruhat_interval, hasse_to_dot, hasse_to_json
    poset = build_nc(cfg.coxeter_element()) if what == "nc" else bruhat_interval(rs.identity, rs.w0)
    if fmt == "dot":
        return hasse_to_dot(poset), 0
    if fmt == "off":
        raise UsageError("OFF export is only available for the moment complex")
    return json.loads(hasse_to_json(poset)), 0


def _cmd_cohomology(args, cfg):
    from . import gkm
    c = cfg.coxeter_element()
    if args.what == "betti":
        return {"betti": gkm.betti(c)}, 0
    if args.what == "betti-full":
        return {"betti": gkm.betti_full(cfg.root_system())}, 0
    if args.what == "schubert":
        classes = gkm.schubert_classes(cfg.root_system())
    elif args.what == "duality":
        classes = gkm.duality_basis(c)
    else:
        classes = gkm.flowup_basis_interpolate(c)
    return {"classes": {_key(u): {_key(v): p.to_json() for v, p in sorted(f.values.items())}
                        for u, f in sorted(classes.items())}}, 0


def _cmd_charts(args, cfg):
    from . import charts
    rs = cfg.root_system()
    if args.what == "show":
        if not args.cell:
            raise UsageError("charts show needs --cell")
        u = parse_element(rs, args.cell)
        pat = charts.nc_cell_chart(u, cfg.coxeter_element()) if args.nc else charts.schubert_chart(u)
        if args.fmt == "json":
            return pat.to_json(), 0
        return pat.render_labelled(), 0
    rep = charts.verify_plucker_vanishing(cfg.coxeter_element(), cfg.trials, cfg.prime, cfg.seed)
    return _jsonable(rep.to_json()), 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", required=True, type=str.upper, choices=sorted(RANK_LIMITS))
    common.add_argument("--rank", required=True, type=int)
    common.add_argument("--coxeter", type=_int_list, help="Coxeter word in simple labels, e.g. 2,1,0")
    common.add_argument("--lambda", dest="lam", type=_int_list, help="regular weight override in ambient coordinates")
    common.add_argument("--prime", type=int, default=10007)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", dest="fmt", choices=["json", "dot", "off", "text"],
                        help="output format (default json; text for charts show)")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--allow-large", action="store_true", help="lift the default rank limits")

    p = argparse.ArgumentParser(prog="coxcat", description="Coxeter-Catalan combinatorics and geometry")
    sub = p.add_subparsers(dest="command", required=True)
    e = sub.add_parser("enumerate", parents=[common])
    e.add_argument("what", choices=["weyl", "coxeter", "reflections", "nc", "sortable"])
    s = sub.add_parser("sortable", parents=[common])
    s.add_argument("--element", required=True)
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("suite", choices=SUITES + ("all",))
    x = sub.add_parser("export", parents=[common])
    x.add_argument("what", choices=["root-system", "hasse", "nc", "complex"])
    h = sub.add_parser("cohomology", parents=[common])
    h.add_argument("what", choices=["betti", "betti-full", "schubert", "duality", "flowup"])
    ch = sub.add_parser("charts", parents=[common])
    ch.add_argument("what", choices=["show", "sample"])
    ch.add_argument("--cell")
    ch.add_argument("--nc", action="store_true", help="show the Coxeter Schubert cell chart")
    return p


def _config(args) -> RunConfig:
    from .charts import is_prime
    t, n = args.type, args.rank
    if n < 1 or (n > RANK_LIMITS[t] and not args.allow_large):
        raise UsageError(f"rank {n} out of range for type {t} (limit {RANK_LIMITS[t]})")
    if t == "D" and n < 2:
        raise UsageError("type D needs rank at least 2")
    if not is_prime(args.prime):
        raise UsageError(f"{args.prime} is not prime")
    if args.trials < 1:
        raise UsageError("trials must be positive")
    cfg = RunConfig(t, n, args.coxeter, args.lam, args.prime, args.trials, args.seed, args.fmt or "json", args.out)
    dim = cfg.root_system().datum.ambient_dim
    if cfg.lam is not None and len(cfg.lam) != dim:
        raise UsageError(f"--lambda needs {dim} ambient coordinates")
    return cfg


_COMMANDS = {
    "enumerate": _cmd_enumerate, "sortable": _cmd_sortable, "verify": _cmd_verify,
    "export": _cmd_export, "cohomology": _cmd_cohomology, "charts": _cmd_charts,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = _config(args)
        if cfg.lam is not None:
            from .polytope import is_regular
            if not is_regular(cfg.root_system(), cfg.lam):
                raise UsageError("--lambda is not regular dominant")
        result, code = _COMMANDS[args.command](args, cfg)
    except (UsageError, ValidationError) as e:
        print(json.dumps({"schema": SCHEMA, "error": str(e)}), file=sys.stderr)
        return 2
    except CoxcatError as e:
        result, code = {"error": f"{type(e).__name__}: {e}", "ok": False}, 1
    if isinstance(result, dict):
        result = dict(result, schema=SCHEMA)
        text = json.dumps(result, indent=2, sort_keys=True)
    else:
        text = result
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
