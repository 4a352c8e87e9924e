"""Command-line driver: listings, character tables, mutation, verification.

Subcommands
-----------
arcs N                 list every arc of the surface, one encoding per line
triangulations N       list every triangulation as a JSON array of arcs
cc-table N [--tau ...] character table of a triangulation (text or JSON)
mutate SEED K1,K2,...  apply a mutation sequence to a seed JSON file
verify N [suites]      run the identity suites and print a JSON report

All output is deterministic.  ``verify`` exits nonzero when any requested
check fails, and each check carries a counterexample payload when it does.
The bound on N (default 6) can be raised with ``--max-n`` or the
ORBIFOLD_MAX_N environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources

from . import algebra as ag
from . import ccfun as cf
from . import covering as cov
from . import gca
from . import strings as st
from . import surface as sf
from .laurent import LaurentPoly


def _max_n(args) -> int:
    if getattr(args, "max_n", None):
        return args.max_n
    env = os.environ.get("ORBIFOLD_MAX_N")
    return int(env) if env else sf.MAX_N


def _parse_tau(text: str | None, n: int) -> sf.Triangulation:
    if not text:
        return sf.special_triangulation(n)
    return sf.Triangulation.from_json(json.loads(text), n)


def load_golden(name: str) -> dict:
    with resources.files("orbicc.goldens").joinpath(name).open() as fh:
        return json.load(fh)


def golden_module(alg: ag.GentleAlgebra, spec: dict) -> st.StringDecRep:
    """Materialize a golden-file module descriptor over ``alg``."""
    kind = spec["kind"]
    if kind == "negative_simple":
        return st.sdr_negative_simple(alg, spec["vertex"] - 1)
    if kind == "trivial":
        return st.sdr_of_word(alg, st.trivial_string(spec["vertex"] - 1))
    if kind == "string":
        letters = []
        for tail, head, direction in spec["letters"]:
            arrow = alg.arrow_between(tail - 1, head - 1)
            letters.append((arrow.idx, +1 if direction == "+" else -1))
        return st.sdr_of_word(alg, st.StringWord(tuple(letters), None))
    raise ValueError(f"unknown module kind {kind!r}")


# ---------------------------------------------------------------------------
# verification suites


def _result(name: str, passed: bool, details, started: float) -> dict:
    return {
        "name": name,
        "passed": bool(passed),
        "details": details,
        "seconds": round(time.time() - started, 3),
    }


def check_golden_sigma3() -> dict:
    """Character table of the flipped triangulation against the stored data."""
    t0 = time.time()
    data = load_golden("sigma3_flipped_tau_cc.json")
    tau = sf.Triangulation.from_json(data["triangulation"], data["n"])
    om = cov.orbit_map(tau)
    bad = []
    for entry in data["entries"]:
        sdr = golden_module(om.base_alg, entry["module"])
        got = cf.cc_function(om.base_alg, sdr)
        want = LaurentPoly.from_json_dict({"vars": data["n"], "terms": entry["terms"]})
        if got != want:
            bad.append({"module": entry["module"], "got": got.to_json_dict()})
    details = {"entries": len(data["entries"]), "mismatches": bad}
    return _result("golden-table", not bad, details, t0)


def check_golden_sigma5() -> dict:
    t0 = time.time()
    data = load_golden("sigma5_fan_arc_cc.json")
    tau = sf.special_triangulation(data["n"])
    got = cf.arc_cc(tau, sf.Arc.decode(data["arc"]))
    want = LaurentPoly.from_json_dict({"vars": data["n"], "terms": data["terms"]})
    ok = got == want
    details = {} if ok else {"got": got.to_json_dict()}
    return _result("golden-arc", ok, details, t0)


def check_theorem(n: int) -> dict:
    """Mutation closure equals the character image of the arcs, position-wise."""
    t0 = time.time()
    closure = gca.mutation_closure(n)
    tau0 = sf.special_triangulation(n)
    table = {j: cf.arc_cc(tau0, j) for j in sf.all_arcs(n)}
    bad = []
    if set(closure.variables) != set(table.values()):
        bad.append("variable sets differ")
    if len(closure.variables) != n * (n + 1):
        bad.append(f"{len(closure.variables)} variables, wanted {n * (n + 1)}")
    for tkey, arcs in sorted(closure.arc_lists.items()):
        seed = closure.seeds[closure.pairs[tkey]]
        for k, arc in enumerate(arcs):
            if seed.cluster[k] != table[arc]:
                bad.append({"triangulation": list(tkey), "position": k})
        for k in range(n):
            back = gca.mutate(gca.mutate(seed, k), k)
            if back.cluster != seed.cluster or back.b != seed.b:
                bad.append({"involution": list(tkey), "position": k})
    details = {
        "seeds": len(closure.seeds),
        "triangulations": len(sf.enumerate_triangulations(n)),
        "variables": len(closure.variables),
        "failures": bad,
    }
    if details["seeds"] != details["triangulations"]:
        bad.append("seed and triangulation counts differ")
    return _result("theorem", not bad, details, t0)


def check_flip_exchange(n: int) -> dict:
    """x_j times the flipped arc's character equals the exchange polynomial."""
    t0 = time.time()
    bad = []
    pending_shapes = 0
    for tau in sf.enumerate_triangulations(n):
        seed = gca.initial_seed(tau)
        om = cov.orbit_map(tau)
        for k, arc in enumerate(tau.arcs):
            _, replacement = sf.flip(tau, arc)
            lhs = cf.cc_function(om.base_alg, st.arc_rep(tau, arc)) * cf.cc_function(
                om.base_alg, st.arc_rep(tau, replacement)
            )
            th = gca.theta(seed, k)
            if lhs != th:
                bad.append({"tau": list(tau.key()), "arc": arc.encode()})
            if arc.kind == "P":
                vplus, vminus = gca.exchange_monomials(seed, k)
                want = vplus ** 2 + vplus * vminus + vminus ** 2
                if th != want:
                    bad.append({"tau": list(tau.key()), "pending-shape": arc.encode()})
                pending_shapes += 1
    details = {"pending_exchanges": pending_shapes, "failures": bad}
    return _result("flip-exchange", not bad, details, t0)


def check_rigidity(n: int) -> dict:
    """Rigid indecomposables are exactly the arc modules (census per triangulation)."""
    t0 = time.time()
    taus = sf.enumerate_triangulations(n) if n <= 3 else [sf.special_triangulation(n)]
    bad = []
    counts = []
    for tau in taus:
        try:
            census = cf.classify_e_rigid(tau)
        except cf.CCError as exc:
            bad.append({"tau": list(tau.key()), "error": str(exc)})
            continue
        rigid = len(census.rigid_strings) + len(census.negative_simples)
        counts.append(rigid)
        if rigid != n * (n + 1):
            bad.append({"tau": list(tau.key()), "rigid": rigid})
    details = {"triangulations": len(taus), "rigid_counts": sorted(set(counts)), "failures": bad}
    return _result("rigidity", not bad, details, t0)


def check_covering(n: int) -> dict:
    """Euler-sum and character-projection identities for every string."""
    t0 = time.time()
    bad = []
    strings_checked = 0
    for tau in sf.enumerate_triangulations(n):
        om = cov.orbit_map(tau)
        for w in st.all_strings(om.base_alg):
            strings_checked += 1
            if not cov.euler_sum_check(tau, w):
                bad.append({"tau": list(tau.key()), "string": st.serialize(om.base_alg, w), "check": "euler"})
            if not cov.verify_morphip_word(om, w):
                bad.append({"tau": list(tau.key()), "string": st.serialize(om.base_alg, w), "check": "projection"})
    details = {"strings": strings_checked, "failures": bad}
    return _result("covering", not bad, details, t0)


def expected_fan_g_vector(n: int, j: sf.Arc, dims: tuple[int, ...]) -> tuple[int, ...] | None:
    """g-vector of an arc module over the fan triangulation, from its dims.

    Pending arcs get 2 one step before their vertex and -1 at the loop
    vertex; arcs through the loop region get 1 before the first dimension-1
    and dimension-2 indices and -1 at the loop vertex; the remaining arcs
    get 1 before their support and -1 at its end.
    """
    g = [0] * n
    if j.kind == "P":
        if j.r >= 2:
            g[j.r - 2] = 2
        g[n - 1] = -1
        return tuple(g)
    if dims[n - 1] > 0:  # crosses the pending arc of the fan
        first_one = next((k for k, d in enumerate(dims) if d == 1), None)
        first_two = next((k for k, d in enumerate(dims) if d == 2), None)
        if first_one is not None and first_one >= 1:
            g[first_one - 1] += 1
        if first_two is not None and first_two >= 1:
            g[first_two - 1] += 1
        g[n - 1] = -1
        return tuple(g)
    first = next(k for k, d in enumerate(dims) if d)
    last = max(k for k, d in enumerate(dims) if d)
    if first >= 1:
        g[first - 1] += 1
    g[last] = -1
    return tuple(g)


def check_g_vectors(n: int) -> dict:
    """Closed-form fan g-vectors, and the two g-vector computations agree."""
    t0 = time.time()
    bad = []
    tau0 = sf.special_triangulation(n)
    om0 = cov.orbit_map(tau0)
    for j in sf.all_arcs(n):
        if j in tau0.arcs:
            continue
        dm = st.arc_rep(tau0, j).dec_rep(om0.base_alg)
        want = expected_fan_g_vector(n, j, dm.rep.dims)
        got = ag.g_vector(om0.base_alg, dm)
        if want is not None and got != want:
            bad.append({"arc": j.encode(), "got": list(got), "want": list(want)})
    taus = sf.enumerate_triangulations(n) if n <= 3 else [tau0]
    modules = 0
    for tau in taus:
        om = cov.orbit_map(tau)
        for w in st.all_strings(om.base_alg):
            dm = st.sdr_of_word(om.base_alg, w).dec_rep(om.base_alg)
            modules += 1
            if ag.g_vector(om.base_alg, dm) != ag.g_vector_inj(om.base_alg, dm):
                bad.append({"tau": list(tau.key()), "string": st.serialize(om.base_alg, w)})
        for i in range(n):
            dm = ag.DecRep.negative_simple(om.base_alg, i)
            if ag.g_vector(om.base_alg, dm) != ag.g_vector_inj(om.base_alg, dm):
                bad.append({"tau": list(tau.key()), "negative_simple": i})
    details = {"modules": modules, "failures": bad}
    return _result("g-vectors", not bad, details, t0)


SUITES = {
    "golden": lambda n: [check_golden_sigma3(), check_golden_sigma5()],
    "theorem": lambda n: [check_theorem(n)],
    "flip-exchange": lambda n: [check_flip_exchange(n)],
    "rigidity": lambda n: [check_rigidity(n)],
    "covering": lambda n: [check_covering(n)],
    "g-vectors": lambda n: [check_g_vectors(n)],
}


def run_verification(n: int, suites: list[str]) -> dict:
    t0 = time.time()
    checks = []
    for name in suites:
        checks.extend(SUITES[name](n))
    report = {
        "n": n,
        "triangulations": len(sf.enumerate_triangulations(n)),
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
        "seconds": round(time.time() - t0, 3),
    }
    return report


# ---------------------------------------------------------------------------
# subcommands


def cmd_arcs(args) -> int:
    if not 2 <= args.n <= _max_n(args):
        print(f"n must be between 2 and {_max_n(args)}", file=sys.stderr)
        return 2
    for arc in sf.all_arcs(args.n):
        print(arc.encode())
    return 0


def cmd_triangulations(args) -> int:
    if not 2 <= args.n <= _max_n(args):
        print(f"n must be between 2 and {_max_n(args)}", file=sys.stderr)
        return 2
    for tau in sf.enumerate_triangulations(args.n, bound=_max_n(args)):
        print(json.dumps(tau.to_json()))
    return 0


def cmd_cc_table(args) -> int:
    if not 2 <= args.n <= _max_n(args):
        print(f"n must be between 2 and {_max_n(args)}", file=sys.stderr)
        return 2
    try:
        tau = _parse_tau(args.tau, args.n)
    except (ValueError, KeyError) as exc:
        print(f"cannot parse triangulation: {exc}", file=sys.stderr)
        return 2
    table = cf.cc_table(tau)
    if args.json:
        print(json.dumps(table.to_json_dict(), sort_keys=True))
    else:
        for key, poly in sorted(table.arc_entries.items()):
            print(f"{key}\t{poly.to_text()}")
        for key, poly in sorted(table.string_entries.items()):
            print(f"str:{key}\t{poly.to_text()}")
    if args.golden:
        with open(args.golden) as fh:
            data = json.load(fh)
        om = cov.orbit_map(tau)
        for entry in data["entries"]:
            sdr = golden_module(om.base_alg, entry["module"])
            got = cf.cc_function(om.base_alg, sdr)
            want = LaurentPoly.from_json_dict({"vars": data["n"], "terms": entry["terms"]})
            if got != want:
                print(f"golden mismatch: {entry['module']}", file=sys.stderr)
                return 1
        print(f"golden: {len(data['entries'])} entries match", file=sys.stderr)
    return 0


def cmd_mutate(args) -> int:
    with open(args.seed) as fh:
        seed = gca.Seed.from_json_dict(json.load(fh))
    sequence = [int(x) for x in args.sequence.split(",")] if args.sequence else []
    for k in sequence:
        if not 1 <= k <= seed.rank:
            print(f"index {k} out of range", file=sys.stderr)
            return 2
        try:
            seed = gca.mutate(seed, k - 1)
        except gca.LaurentPhenomenonViolation as exc:
            print(f"LaurentPhenomenonViolation: {exc}", file=sys.stderr)
            return 1
    print(json.dumps(seed.to_json_dict(), sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    if not 2 <= args.n <= _max_n(args):
        print(f"n must be between 2 and {_max_n(args)}", file=sys.stderr)
        return 2
    suites = []
    if args.all:
        suites = list(SUITES)
    else:
        for name in SUITES:
            if getattr(args, name.replace("-", "_")):
                suites.append(name)
    if not suites:
        suites = list(SUITES)
    report = run_verification(args.n, suites)
    print(json.dumps(report, sort_keys=True))
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbicc",
        description="Exact cluster characters and generalized mutation for the orbifold polygon.",
    )
    parser.add_argument("--max-n", type=int, default=None, help="override the size bound")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("arcs", help="list all arcs")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_arcs)

    p = sub.add_parser("triangulations", help="list all triangulations")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_triangulations)

    p = sub.add_parser("cc-table", help="character table of a triangulation")
    p.add_argument("n", type=int)
    p.add_argument("--tau", help="JSON array of arc encodings (default: fan triangulation)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--golden", help="compare against a stored golden file")
    p.set_defaults(func=cmd_cc_table)

    p = sub.add_parser("mutate", help="apply a mutation sequence to a seed file")
    p.add_argument("seed", help="path to a seed JSON file")
    p.add_argument("sequence", nargs="?", default="", help="comma-separated 1-based indices")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("verify", help="run identity suites and print a JSON report")
    p.add_argument("n", type=int)
    p.add_argument("--all", action="store_true")
    for name in SUITES:
        p.add_argument(f"--{name}", dest=name.replace("-", "_"), action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
