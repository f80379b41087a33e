"""Command-line interface.

Weyl group elements are written as generator words (``e``, ``w0``, ``s1s2`` or
``12``); ring elements as integer expressions in ``x1 .. xn`` (additive) or
``e1 .. en`` and ``b`` (connective).  Exit codes: 0 when every check passes,
1 on a verification failure, 2 on a usage error or unsupported request.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from .coproduct import (
    bimonoid_compat_check,
    coassociativity_check,
    counit_diagrams_check,
    delta,
    delta_oracle_check,
)
from .dihedral import double_quotient, hopf_on_quotient, unit_prime_certificates
from .exact_arith import SUPPORTED_DIHEDRAL_PRIMES, CapabilityError, ConsistencyError
from .formulas import (
    IDENTITIES,
    VerificationReport,
    hecke_weyl_commutation_check,
    new_report,
    projection_formula_check,
    random_demazure_element,
    random_elements,
    random_qw_element,
    run_identity,
)
from .golden import check_document, golden_dir, load_golden
from .root_system import parse_type
from .structure import StructureAlgebra

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated command-line settings.

    Defaults: type A2, root lattice, additive backend, seed 0, 5 trials, text.
    """

    type_tag: str = "A2"
    lattice: str = "root"
    fgl: str = "additive"
    seed: int = 0
    trials: int = 5
    fmt: str = "text"
    golden_path: Optional[str] = None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        tag = getattr(args, "type", "A2")
        try:
            parse_type(tag)
        except (ValueError, CapabilityError) as exc:
            raise UsageError(str(exc)) from exc
        trials = getattr(args, "trials", 5)
        if trials < 1:
            raise UsageError("--trials must be positive")
        return cls(tag, getattr(args, "lattice", "root"), getattr(args, "fgl", "additive"),
                   getattr(args, "seed", 0), trials, getattr(args, "format", "text"), getattr(args, "dir", None))

    def algebra(self) -> StructureAlgebra:
        return StructureAlgebra.of(self.type_tag, self.fgl, self.lattice)


# ----------------------------------------------------------------- helpers
def _element(alg: StructureAlgebra, text: str) -> int:
    try:
        return alg.rs.parse_element(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot read Weyl group element {text!r}: {exc}") from exc


def _names(alg: StructureAlgebra, order: Sequence[int]) -> List[str]:
    return [alg.rs.elements[w].word_string() for w in order]


def _fmt(alg: StructureAlgebra, value) -> str:
    return alg.ring.format(alg.ring.lift(value).normalize())


def _class_json(alg: StructureAlgebra, z) -> Dict[str, str]:
    return {alg.rs.elements[v].word_string(): _fmt(alg, z.coords[v]) for v in range(alg.order)}


def _canonical_order(alg: StructureAlgebra, alternative_order: bool) -> List[int]:
    if alternative_order:
        return alg.rs.alternative_a2_order()
    return list(range(alg.order))


def _text_table(row_names, col_names, cells) -> str:
    widths = [max(len(col_names[j]), *(len(cells[i][j]) for i in range(len(row_names)))) for j in range(len(col_names))]
    head = max(len(r) for r in row_names)
    lines = [" " * head + " | " + "  ".join(c.rjust(w) for c, w in zip(col_names, widths))]
    for name, row in zip(row_names, cells):
        lines.append(name.rjust(head) + " | " + "  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


def _emit(cfg: RunConfig, payload: Dict, text: Callable[[Dict], str]) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text(payload))


def _report_text(payload: Dict) -> str:
    lines = []
    for rep in payload["reports"]:
        failed = [i for i in rep["instances"] if not i["equal"]]
        status = "PASS" if rep["passed"] else "FAIL"
        lines.append(f"{status} {rep['identity']} [{rep['root_system']}, {rep['backend']}] "
                     f"{len(rep['instances']) - len(failed)}/{len(rep['instances'])} instances")
        for inst in failed[:5]:
            lines.append(f"  failed: {inst['inputs']} lhs={inst['lhs']} rhs={inst['rhs']}")
    lines.append("overall: " + ("PASS" if payload["passed"] else "FAIL"))
    return "\n".join(lines)


# ------------------------------------------------------------- subcommands
def cmd_rootsys(cfg: RunConfig, args) -> int:
    alg = cfg.algebra()
    rs = alg.rs
    graph = rs.moment_graph()
    payload = {
        "type": rs.tag,
        "lattice": rs.lattice.value,
        "crystallographic": rs.crystallographic,
        "rank": rs.rank,
        "order": rs.order,
        "positive_roots": [rs.root_name(k) for k in range(rs.n_pos)],
        "elements": [{"word": rs.elements[w].word_string(), "length": rs.length(w)} for w in range(rs.order)],
        "w0": rs.elements[rs.w0].word_string(),
        "moment_graph": sorted(
            [rs.elements[a].word_string(), rs.elements[b].word_string(), rs.root_name(k)] for a, b, k in graph.edges
        ),
        "ring_variables": alg.ring.variable_names(),
    }

    def text(p):
        lines = [f"{p['type']} ({p['lattice']} lattice), rank {p['rank']}, |W| = {p['order']}, "
                 f"{'crystallographic' if p['crystallographic'] else 'non-crystallographic'}",
                 "positive roots: " + ", ".join(p["positive_roots"]),
                 "elements: " + ", ".join(f"{e['word']}({e['length']})" for e in p["elements"]),
                 f"moment graph: {len(p['moment_graph'])} edges",
                 "ring variables: " + ", ".join(p["ring_variables"])]
        return "\n".join(lines)

    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_classes(cfg: RunConfig, args) -> int:
    alg = cfg.algebra()
    builders = {"zeta": alg.zeta, "sigma": alg.sigma, "theta": alg.theta}
    which = list(builders) if args.which == "all" else [args.which]
    payload = {"type": alg.rs.tag, "lattice": alg.rs.lattice.value, "fgl": alg.ring.kind.value, "classes": {}}
    failures = []
    for name in which:
        table = {}
        for w in range(alg.order):
            z = builders[name](w)
            bad = alg.membership_failures(z)
            if bad:
                failures.append(f"{name}_{alg.rs.elements[w].word_string()}: {bad[0]}")
            table[alg.rs.elements[w].word_string()] = _class_json(alg, z)
        payload["classes"][name] = table
    payload["membership_failures"] = failures

    def text(p):
        lines = []
        for name, table in p["classes"].items():
            for w, coords in table.items():
                lines.append(f"{name}_{w} = (" + ", ".join(f"{v}: {c}" for v, c in coords.items()) + ")")
        lines.extend("membership failure: " + f for f in p["membership_failures"])
        return "\n".join(lines)

    _emit(cfg, payload, text)
    return EXIT_FAIL if failures else EXIT_OK


def cmd_duals(cfg: RunConfig, args) -> int:
    alg = cfg.algebra()
    duals = alg.dual_basis()
    payload = {
        "type": alg.rs.tag,
        "lattice": alg.rs.lattice.value,
        "fgl": alg.ring.kind.value,
        "duals": {alg.rs.elements[w].word_string(): _class_json(alg, z) for w, z in enumerate(duals)},
    }

    def text(p):
        return "\n".join(f"dual_{w} = (" + ", ".join(f"{v}: {c}" for v, c in coords.items()) + ")"
                         for w, coords in p["duals"].items())

    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_multiplicities(cfg: RunConfig, args) -> int:
    alg = cfg.algebra()
    u = _element(alg, args.u)
    c, d = alg.multiplicity_matrices(u)
    order = _canonical_order(alg, args.alternative_order)
    names = _names(alg, order)
    payload = {
        "type": alg.rs.tag,
        "lattice": alg.rs.lattice.value,
        "fgl": alg.ring.kind.value,
        "u": alg.rs.elements[u].word_string(),
        "order": names,
        "C": [[_fmt(alg, c[i][j]) for j in order] for i in order],
        "D": [[_fmt(alg, d[i][j]) for j in order] for i in order],
    }
    if alg.rs.type_name == "A2":
        payload["alternative_order_permutation"] = alg.rs.alternative_a2_order()

    def text(p):
        return (f"C_{p['u']}:\n" + _text_table(p["order"], p["order"], p["C"])
                + f"\n\nD_{p['u']}:\n" + _text_table(p["order"], p["order"], p["D"]))

    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_nu(cfg: RunConfig, args) -> int:
    alg = cfg.algebra()
    u = _element(alg, args.u)
    nu = alg.nu(u)
    names = _names(alg, range(alg.order))
    table = {f"{names[x]},{names[y]},{names[z]}": alg.ring.format(c) for (x, y, z), c in nu.items() if c}
    payload = {"type": alg.rs.tag, "lattice": alg.rs.lattice.value, "fgl": alg.ring.kind.value,
               "u": names[u], "nu": table}

    def text(p):
        return "\n".join(f"nu({p['u']})[{k}] = {v}" for k, v in sorted(p["nu"].items()))

    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_coproduct(cfg: RunConfig, args) -> int:
    alg = cfg.algebra()
    u = _element(alg, args.u)
    w = _element(alg, getattr(args, "class"))
    z = alg.zeta(w)
    model = delta(alg, z, u)
    oracle = delta_oracle_check(alg, z, u)
    payload = {"type": alg.rs.tag, "lattice": alg.rs.lattice.value, "fgl": alg.ring.kind.value,
               "u": alg.rs.elements[u].word_string(), "class": alg.rs.elements[w].word_string(),
               "model": model.to_json(alg), "matches_product_model": oracle.passed}

    def text(p):
        lines = [f"Delta(zeta_{p['class']}) with u = {p['u']} on W x W:"]
        lines.extend(f"  ({k}) -> {v}" for k, v in p["model"].items() if v != "0")
        lines.append("matches (v1, v2) -> z_(v1 v2): " + ("yes" if p["matches_product_model"] else "NO"))
        return "\n".join(lines)

    _emit(cfg, payload, text)
    return EXIT_OK if oracle.passed else EXIT_FAIL


# ---------------------------------------------------------------- verify
def _verify_braid(alg, cfg):
    rep = new_report(alg, "braid")
    res = alg.dem.braid_check()
    rep.add({"words_checked": str(res["words_checked"])}, "Y_I", "Y_I'", res["passed"])
    for word in res["discrepancies"]:
        rep.add({"word": "".join(map(str, word))}, "Y_word", "Y_(canonical word)", False)
    return rep


def _schubert_basis(alg):
    return [alg.zeta(w) for w in range(alg.order)]


def _verify_coassoc(alg, cfg):
    rep = new_report(alg, "coassociativity")
    for u in (0, alg.rs.w0):
        for z in _schubert_basis(alg):
            rep.merge(coassociativity_check(alg, z, u))
    return rep


def _verify_counit(alg, cfg):
    rep = new_report(alg, "counit")
    for u in (0, alg.rs.w0):
        for z in _schubert_basis(alg):
            rep.merge(counit_diagrams_check(alg, z, u))
    return rep


def _verify_delta(alg, cfg):
    rep = new_report(alg, "delta_oracle")
    for u in (0, alg.rs.w0):
        for z in _schubert_basis(alg):
            rep.merge(delta_oracle_check(alg, z, u))
    return rep


def _verify_bimonoid(alg, cfg):
    rep = new_report(alg, "bimonoid")
    basis = _schubert_basis(alg)
    rng = random.Random(cfg.seed)
    for _ in range(cfg.trials):
        a, b = rng.randrange(alg.order), rng.randrange(alg.order)
        rep.merge(bimonoid_compat_check(alg, basis[a], basis[b], alg.rs.w0))
    return rep


def _verify_membership(alg, cfg):
    rep = new_report(alg, "membership")
    rs = alg.rs
    for v in range(alg.order):
        for w in range(alg.order):
            bad = alg.membership_failures(alg.schubert(v, w))
            rep.add({"class": f"zeta({rs.elements[v].word_string()})_{rs.elements[w].word_string()}"}, "; ".join(bad), "", not bad)
    try:
        duals = alg.dual_basis()
    except ConsistencyError as exc:
        rep.add({"class": "dual basis"}, str(exc), "", False)
        return rep
    for w, z in enumerate(duals):
        bad = alg.membership_failures(z)
        rep.add({"class": f"dual_{rs.elements[w].word_string()}"}, "; ".join(bad), "", not bad)
    return rep


def _verify_hecke_weyl(alg, cfg):
    rep = new_report(alg, "hecke_weyl_commutation")
    rng = random.Random(cfg.seed)
    # the actions are on Z, so test on the Schubert classes that lie in Z
    basis = [z for z in _schubert_basis(alg) if alg.is_member(z)]
    for _ in range(cfg.trials):
        a = random_demazure_element(alg, rng)
        b = random_qw_element(alg, rng)
        rep.merge(hecke_weyl_commutation_check(alg, a, b, basis[rng.randrange(len(basis))]))
    return rep


def _verify_iota(alg, cfg):
    rep = new_report(alg, "iota")
    dem, rs = alg.dem, alg.rs
    for w in range(alg.order):
        word = rs.word(w)
        lhs = dem.iota(dem.y_word(word))
        rhs = dem.y_word(tuple(reversed(word)))
        rep.add({"w": rs.elements[w].word_string()}, "iota(Y_I)", "Y_(reversed I)", lhs == rhs)
    rng = random.Random(cfg.seed)
    for _ in range(cfg.trials):
        a, b = random_qw_element(alg, rng), random_qw_element(alg, rng)
        rep.add({"form": "anti-homomorphism"}, "iota(ab)", "iota(b) iota(a)", dem.iota(a * b) == dem.iota(b) * dem.iota(a))
    return rep


def _verify_projection(alg, cfg):
    rep = new_report(alg, "projection_formula")
    rng = random.Random(cfg.seed)
    basis = _schubert_basis(alg)
    for _ in range(cfg.trials):
        z, zp = basis[rng.randrange(alg.order)], basis[rng.randrange(alg.order)]
        rep.merge(projection_formula_check(alg, z, zp, rng.randint(1, alg.rs.rank)))
    return rep


def _verify_pairing(alg, cfg):
    rep = new_report(alg, "perfect_pairing")
    ring = alg.ring
    duals = alg.dual_basis()
    for w in range(alg.order):
        for u in range(alg.order):
            value = alg.pi_pair(alg.zeta(w), duals[u])
            rep.add({"w": alg.rs.elements[w].word_string(), "u": alg.rs.elements[u].word_string()},
                    ring.format(value), "1" if w == u else "0", value == ring.const(1 if w == u else 0))
    return rep


def _verify_multiplicities(alg, cfg):
    rep = new_report(alg, "multiplicities")
    for u in range(alg.order):
        try:
            alg.multiplicity_matrices(u, check=True)
            ok, note = True, ""
        except ConsistencyError as exc:
            ok, note = False, str(exc)
        rep.add({"u": alg.rs.elements[u].word_string()}, note, "", ok)
    return rep


def _verify_formula(name):
    def run(alg, cfg):
        return run_identity(alg, name, seed=cfg.seed, trials=cfg.trials)
    return run


VERIFIERS: Dict[str, Callable] = {
    "braid": _verify_braid,
    "coassoc": _verify_coassoc,
    "counit": _verify_counit,
    "delta": _verify_delta,
    "bimonoid": _verify_bimonoid,
    "membership": _verify_membership,
    "hecke-weyl": _verify_hecke_weyl,
    "iota": _verify_iota,
    "projection": _verify_projection,
    "pairing": _verify_pairing,
    "multiplicities": _verify_multiplicities,
}
VERIFIERS.update({name: _verify_formula(name) for name in IDENTITIES})


def cmd_verify(cfg: RunConfig, args) -> int:
    alg = cfg.algebra()
    names = sorted(VERIFIERS) if args.identity == "all" else [args.identity]
    reports: List[VerificationReport] = []
    for name in names:
        try:
            reports.append(VERIFIERS[name](alg, cfg))
        except ArithmeticError as exc:
            rep = new_report(alg, name)
            rep.add({}, f"{type(exc).__name__}: {exc}", "", False)
            reports.append(rep)
        except ValueError as exc:
            if args.identity != "all":
                raise CapabilityError(str(exc)) from exc
    payload = {"seed": cfg.seed, "trials": cfg.trials, "reports": [r.to_dict() for r in reports],
               "passed": all(r.passed for r in reports)}
    _emit(cfg, payload, _report_text)
    return EXIT_OK if payload["passed"] else EXIT_FAIL


# -------------------------------------------------------------- dihedral
def cmd_dihedral(cfg: RunConfig, args) -> int:
    p = args.p
    quotient = double_quotient(f"I2:{p}", "root")
    alg = StructureAlgebra.of(f"I2:{p}", "additive", "root")
    hopf = hopf_on_quotient(p)
    certs = unit_prime_certificates(p)
    payload = {
        "p": p,
        "quotient": quotient.to_dict(alg),
        "graded_dims": [len(f) for f in quotient.summary()[:p]],
        "coefficient_rings": [f[0] if f else "0" for f in quotient.summary()[:p]],
        "top_degree_trivial": all(not f for f in quotient.summary()[p:]),
        "certificates": certs,
        "a": {str(k): v for k, v in hopf["a"].items()},
        "a_expected": {str(k): v for k, v in hopf["a_expected"].items()},
        "delta": hopf["delta"],
        "upsilon": [{"w": r["w"], "upsilon": {str(k): v for k, v in r["upsilon"].items()},
                     "expected": {str(k): v for k, v in r["expected"].items()}} for r in hopf["upsilon"]],
        "checks": hopf["checks"],
        "passed": hopf["passed"] and certs["passed"],
    }

    def text(p_):
        lines = [f"I2({p_['p']}) double quotient over O = Z[gamma]:"]
        for deg, factors in enumerate(quotient.summary()):
            lines.append(f"  degree {deg}: " + (" + ".join(factors) if factors else "0"))
        lines.append("unit/prime certificates: " + ("ok" if certs["passed"] else "FAILED"))
        lines.append("a_k: " + ", ".join(f"a_{k} = {v}" for k, v in p_["a"].items()) + f" (mod {p_['p']})")
        lines.append("Delta on pr(theta_w):")
        for row in p_["delta"]:
            lines.append(f"  {row['w']}: " + (", ".join(f"{k}: {v}" for k, v in row["delta"].items()) or "0"))
        lines.append("checks: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in p_["checks"].items()))
        lines.append("overall: " + ("PASS" if p_["passed"] else "FAIL"))
        return "\n".join(lines)

    _emit(cfg, payload, text)
    return EXIT_OK if payload["passed"] else EXIT_FAIL


def cmd_golden(cfg: RunConfig, args) -> int:
    docs = load_golden(cfg.golden_path)
    if args.name:
        docs = [d for d in docs if d.get("id") in args.name]
        missing = set(args.name) - {d.get("id") for d in docs}
        if missing:
            raise UsageError(f"no golden document named {sorted(missing)}")
    results = [check_document(d) for d in docs]
    payload = {"directory": str(cfg.golden_path or golden_dir()), "results": results,
               "passed": all(r["passed"] for r in results)}

    def text(p):
        lines = []
        for r in p["results"]:
            lines.append(f"{'PASS' if r['passed'] else 'FAIL'} {r['id']}")
            lines.extend("  " + diff for diff in r["diffs"])
        lines.append("overall: " + ("PASS" if p["passed"] else "FAIL"))
        return "\n".join(lines)

    _emit(cfg, payload, text)
    return EXIT_OK if payload["passed"] else EXIT_FAIL


# ---------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", default="A2", help="A1, A2, B2, G2 or I2:m with m in 3, 5, 7 (default A2)")
    common.add_argument("--lattice", choices=["root", "weight"], default="root")
    common.add_argument("--fgl", choices=["additive", "connective"], default="additive")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=5)
    common.add_argument("--format", choices=["text", "json"], default="text")

    parser = argparse.ArgumentParser(prog="gkmhopf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("rootsys", parents=[common], help="root system, Weyl group and moment graph")
    p = sub.add_parser("classes", parents=[common], help="Schubert classes zeta, sigma, theta")
    p.add_argument("--which", choices=["zeta", "sigma", "theta", "all"], default="all")
    sub.add_parser("duals", parents=[common], help="dual Schubert basis")
    p = sub.add_parser("multiplicities", parents=[common], help="matrices C_u and D_u")
    p.add_argument("--u", default="e")
    p.add_argument("--paper-order", dest="alternative_order", action="store_true", help="A2 only: order (e, s1, s2, s2s1, s1s2, w0)")
    p = sub.add_parser("nu", parents=[common], help="coproduct structure constants nu(u)")
    p.add_argument("--u", default="e")
    p = sub.add_parser("coproduct", parents=[common], help="W x W model of Delta(zeta_w)")
    p.add_argument("--u", default="e")
    p.add_argument("--class", default="w0", help="Schubert class label w")
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("identity", choices=sorted(VERIFIERS) + ["all"])
    p = sub.add_parser("dihedral", parents=[common], help="double quotient and Hopf structure for I2(p)")
    p.add_argument("--p", type=int, required=True, choices=list(SUPPORTED_DIHEDRAL_PRIMES))
    p = sub.add_parser("golden", parents=[common], help="compare live output with the reference tables")
    p.add_argument("--name", action="append", help="restrict to a golden document id (repeatable)")
    p.add_argument("--dir", default=None, help="golden directory (default: bundled v1 corpus)")
    return parser


COMMANDS = {
    "rootsys": cmd_rootsys,
    "classes": cmd_classes,
    "duals": cmd_duals,
    "multiplicities": cmd_multiplicities,
    "nu": cmd_nu,
    "coproduct": cmd_coproduct,
    "verify": cmd_verify,
    "dihedral": cmd_dihedral,
    "golden": cmd_golden,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[args.command](cfg, args)
    except (UsageError, CapabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
