"""Command-line front end: load JSON inputs, run analyses, emit reports.

Commands: module-analyze, gkm, weyl-verify, cartan, filtration-verify,
integrate.  Reports list every invariant checked with the name of the
classical statement it verifies and carry an ``inputs_echo`` of the parsed
input, so re-running on the echo reproduces the verdicts byte for byte.

Exit codes: 0 all checks pass (or are not applicable), 1 at least one
check failed, 2 malformed or inconsistent input.
"""

import argparse
import json
import random
import sys

from .polyring import GradedPolynomialRing, Vector
from .gradmod import (
    FPModule, NEG_INF, betti_table, dimension, depth, cohen_macaulay,
    syzygy_order, minimal_resolution, iso_surrogate_equal,
)
from .weyl import group_from_json, GroupClosureError
from .cartan import (
    GStarModule, build_cartan, cartan_cohomology, dualize_gstar,
    equivariant_homology, uct_collapse_check,
)
from .equivtop import (
    GKMGraph, FiltrationDatum, DatumError, gkm_cohomology, ab_cohomology,
    cm_filtration_check, verify_ext_duality, partial_exactness_vs_syzygy,
    descend_invariants, integrate, pairing_perfection, syzygy_gap_check,
    truncation_additivity_check,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError("cannot read %s: %s" % (path, exc))


def _check(name, theorem, ok, details=None):
    return {"name": name, "theorem": theorem,
            "verdict": "pass" if ok else "fail", "details": details or {}}


def _na(name, theorem, details=None):
    return {"name": name, "theorem": theorem, "verdict": "not applicable",
            "details": details or {}}


def _from_report(rep):
    return {"name": rep.name, "theorem": rep.name, "verdict": rep.verdict,
            "details": rep.details}


def _betti_json(module):
    return sorted([[k, d, n] for (k, d), n in betti_table(module).items()])


def _hilbert_json(module, nmax):
    h = module.hilbert()
    return {"numerator": sorted([[k, v] for k, v in h.numerator.items()]),
            "coefficients": sorted([[k, v] for k, v in h.coefficients(nmax).items()])}


def run_module_analyze(obj, checks, nmax, seed):
    module = FPModule.from_json(obj)
    r = module.ring.num_vars
    out = []
    summary = {}
    m0 = module.minimized()
    summary["betti"] = _betti_json(module)
    summary["hilbert"] = _hilbert_json(module, nmax)
    d = dimension(module)
    summary["dimension"] = "-infinity" if d == NEG_INF else d
    if m0.num_gens:
        dep = depth(module)
        summary["depth"] = dep
        res = minimal_resolution(module)
        out.append(_check("resolution length within the variable count",
                          "hilbert-syzygy-bound", res.length <= r,
                          {"length": res.length}))
        out.append(_check("resolution is minimal and exact",
                          "minimal-free-resolution",
                          res.is_minimal() and res.verify_exact()))
        out.append(_check("depth + projective dimension = variable count",
                          "auslander-buchsbaum", dep + res.length == r,
                          {"depth": dep, "pd": res.length}))
        if seed is not None:
            out.append(_check("random regular sequences are module-regular up "
                              "to the depth", "depth-regular-sequences",
                              _depth_spot_check(module, dep, seed),
                              {"seed": seed}))
    cm = cohen_macaulay(module)
    summary["cohen_macaulay"] = cm.status
    out.append(_check("Ext concentration agrees with depth = dim",
                      "ext-concentration-vs-depth", cm.tests_agree,
                      {"status": cm.status, "ext_nonzero": cm.ext_nonzero}))
    syz = syzygy_order(module)
    summary["syzygy_order"] = syz.order
    out.append(_check("syzygy witness complex is exact where claimed",
                      "syzygy-order-witness", syz.witness_verified,
                      {"order": syz.order, "kind": syz.kind}))
    return out, summary


def _depth_spot_check(module, dep, seed, attempts=8):
    """A regular sequence of length = depth exists among random linear forms.

    Generic forms of the minimal variable degree realize the depth, so at
    each step several candidates are sampled and one regular element must
    be found; a single unlucky draw does not fail the check.
    """
    ring = module.ring
    if dep <= 0:
        return True
    rng = random.Random(seed)
    dmin = min(ring.degrees)
    small = [i for i in range(ring.num_vars) if ring.degrees[i] == dmin]
    current = module.minimized()
    for _ in range(dep):
        for _ in range(attempts):
            f = ring.zero()
            for i in small:
                c = rng.randint(-5, 5)
                if c:
                    f = f + ring.var(i).scale(c)
            if f.is_zero():
                continue
            nxt = _quotient_if_regular(current, f)
            if nxt is not None:
                current = nxt
                break
        else:
            return False
    return True


def _quotient_if_regular(module, f):
    """M/fM when f is a nonzerodivisor on M, else None."""
    from .gradmod import FPMap, fp_kernel, FPModule as FP
    ring = module.ring
    if module.num_gens == 0:
        return None
    mul = FPMap(module.shifted(f.homogeneous_degree()), module,
                [[f if i == j else ring.zero()
                  for j in range(module.num_gens)]
                 for i in range(module.num_gens)], check=False)
    ker, _ = fp_kernel(mul)
    if not ker.is_zero():
        return None
    cols = module.relation_columns()
    extra = [Vector(ring, module.num_gens, {(i, e): c for e, c in f.terms.items()})
             for i in range(module.num_gens)]
    return FP.from_columns(ring, module.gens_degrees, cols + extra).minimized()


def run_weyl_verify(obj, checks, nmax, seed):
    try:
        group = group_from_json(obj)
    except GroupClosureError as exc:
        raise InputError(str(exc))
    report = group.verify(nmax)
    out = [_check(name, _weyl_tag(name), ok) for name, ok in report.checks]
    summary = {
        "order": group.order,
        "invariant_degrees": list(group.invariant_degrees),
        "poincare_polynomial": sorted(group.poincare_polynomial().items())
        if report.ok else None,
    }
    return out, summary


def _weyl_tag(name):
    if "Molien" in name:
        return "molien-series"
    if "Kostant" in name or "coinvariant" in name:
        return "kostant-freeness"
    if "order" in name:
        return "invariant-degree-product"
    return "invariance"


def run_cartan(obj, checks, nmax, seed):
    rank = int(obj.get("rank", 1))
    names = obj.get("vars") or ["t%d" % (i + 1) for i in range(rank)]
    ring = GradedPolynomialRing(names, (2,) * rank)
    try:
        gstar = GStarModule.from_json(obj)
        complex_ = build_cartan(gstar, ring)
    except ValueError as exc:
        raise InputError(str(exc))
    out = [_check("operator relations and twisted differential square to zero",
                  "cartan-differential", True)]
    coh = cartan_cohomology(complex_)
    hom = equivariant_homology(gstar, ring)
    summary = {
        "cohomology_betti": _betti_json(coh),
        "cohomology_hilbert": _hilbert_json(coh, nmax),
        "homology_betti": _betti_json(hom),
    }
    # specializing the differential at 0 must recover the input complex
    poincare = gstar.poincare_polynomial()
    specialized = _specialized_cohomology_dims(complex_)
    out.append(_check("specialized complex recovers the nonequivariant "
                      "cohomology", "cartan-restriction", specialized == poincare,
                      {"expected": sorted(poincare.items()),
                       "got": sorted(specialized.items())}))
    dd = dualize_gstar(dualize_gstar(gstar))
    out.append(_check("double dualization restores the operators",
                      "dualization-involution",
                      dd.d == gstar.d and dd.iotas == gstar.iotas))
    if "uct" in checks:
        rep = uct_collapse_check(gstar, ring, nmax)
        item = {"name": "universal-coefficient collapse",
                "theorem": "uct-collapse", "verdict": rep.status,
                "details": {"shift": rep.shift}}
        out.append(item)
    return out, summary


def _specialized_cohomology_dims(complex_):
    from .cartan import GStarModule, _rank
    mat = complex_.specialized_at_zero()
    degs = complex_.gstar.degrees
    out = {}
    for ddeg in sorted(set(degs)):
        idx = [i for i, x in enumerate(degs) if x == ddeg]
        nxt = [i for i, x in enumerate(degs) if x == ddeg + 1]
        prv = [i for i, x in enumerate(degs) if x == ddeg - 1]
        d_here = [[mat[i][j] for j in idx] for i in nxt]
        d_prev = [[mat[i][j] for j in prv] for i in idx]
        h = len(idx) - _rank(d_here) - _rank(d_prev)
        if h:
            out[ddeg] = h
    return out


def run_gkm(obj, checks, nmax, seed):
    try:
        graph = GKMGraph.from_json(obj)
        kernel = gkm_cohomology(graph)
    except DatumError as exc:
        raise InputError(str(exc))
    out = []
    summary = {
        "kernel_betti": _betti_json(kernel.module),
        "kernel_free": kernel.module.num_rels == 0,
        "kernel_rank": kernel.module.num_gens,
    }
    if "cs" in checks:
        from .gradmod import biduality
        bd = biduality(kernel.module)
        out.append(_check("kernel is torsion-free", "chang-skjelbred-kernel",
                          bd.torsion_free))
        syz = syzygy_order(kernel.module)
        out.append(_check("reflexivity matches second-syzygy order",
                          "reflexivity-vs-cs-exactness",
                          bd.reflexive == (syz.order >= min(2, graph.rank)),
                          {"reflexive": bd.reflexive, "order": syz.order}))
    if "pairing" in checks:
        rep = pairing_perfection(graph, kernel=kernel)
        out.append(_from_report(rep))
    if "descend" in checks:
        if graph.symmetry is None:
            out.append(_na("descend-invariants", "weyl-descent",
                           {"reason": "no symmetry data"}))
        else:
            res = descend_invariants(graph, nmax=nmax)
            out.extend(_from_report(c) for c in res.checks)
            summary["invariants_betti"] = _betti_json(res.module)
    return out, summary


def run_filtration_verify(obj, checks, nmax, seed):
    try:
        datum = FiltrationDatum.from_json(obj)
    except (DatumError, ValueError) as exc:
        raise InputError(str(exc))
    out = []
    hs = ab_cohomology(datum)
    summary = {"homology_betti": {str(i): _betti_json(m)
                                  for i, m in sorted(hs.items())},
               "assumptions": datum.assumptions}
    if "cm" in checks:
        out.append(_from_report(cm_filtration_check(datum)))
    if "ext" in checks:
        if datum.homology_module is None:
            out.append(_na("ext-duality", "ext-duality",
                           {"reason": "no homology-side module"}))
        else:
            out.append(_from_report(verify_ext_duality(datum, nmax)))
    if "partial" in checks:
        if datum.augmentation is None:
            out.append(_na("partial-exactness-vs-syzygy-order",
                           "partial-exactness",
                           {"reason": "no augmentation"}))
        else:
            out.append(_from_report(partial_exactness_vs_syzygy(datum)))
    if "gap" in checks:
        if datum.augmentation is None:
            out.append(_na("syzygy-gap-bound", "syzygy-gap-bound",
                           {"reason": "no augmentation"}))
        else:
            out.append(_from_report(syzygy_gap_check(datum)))
    if "ses" in checks:
        out.append(_from_report(truncation_additivity_check(datum, nmax)))
    return out, summary


def run_integrate(obj, checks, nmax, seed, klass=None):
    try:
        graph = GKMGraph.from_json(obj)
        kernel = gkm_cohomology(graph)
        if klass is None:
            raise InputError("no class supplied")
        polys = [graph.ring.parse(s) for s in klass]
        if len(polys) != len(graph.vertices):
            raise InputError("class needs one component per vertex")
        value = integrate(graph, polys, kernel=kernel)
    except DatumError as exc:
        raise InputError(str(exc))
    out = [_check("class is an element of the kernel and localizes to a "
                  "polynomial", "fixed-point-localization", True,
                  {"value": str(value)})]
    return out, {"value": str(value)}


COMMANDS = {
    "module-analyze": (run_module_analyze, ("betti",), ("betti",)),
    "weyl-verify": (run_weyl_verify, (), ()),
    "cartan": (run_cartan, ("uct",), ("uct",)),
    "gkm": (run_gkm, ("cs", "pairing", "descend"), ("cs", "pairing", "descend")),
    "filtration-verify": (run_filtration_verify,
                          ("cm", "ext", "partial", "gap", "ses"),
                          ("cm", "ext", "partial", "gap", "ses")),
    "integrate": (run_integrate, (), ()),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="equisyz",
        description="Syzygy and equivariant-cohomology analyses over Q.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", help="path to the JSON input")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--check", default=None,
                       help="comma-separated list of checks to run")
        p.add_argument("--max-degree", type=int, default=20,
                       help="number of series coefficients to compare "
                            "(series are truncated at twice this degree)")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomized spot checks")
        if name == "integrate":
            p.add_argument("--klass", "--class", dest="klass", default=None,
                           help="JSON list of polynomials, one per vertex")
    return parser


def run(argv):
    """Parse arguments, run the command, return (exit code, report dict)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit:
        return EXIT_INPUT, {"error": "unrecognized arguments"}
    func, default_checks, allowed = COMMANDS[args.command]
    try:
        obj = _load(args.input)
        checks = (set(args.check.split(",")) if args.check
                  else set(default_checks))
        unknown = checks - set(allowed)
        if unknown:
            raise InputError("unknown checks for %s: %s"
                             % (args.command, ",".join(sorted(unknown))))
        nmax = max(2 * args.max_degree, args.max_degree)
        kwargs = {}
        if args.command == "integrate":
            if args.klass is None:
                raise InputError("integrate needs --klass")
            kwargs["klass"] = json.loads(args.klass)
        items, summary = func(obj, checks, nmax, args.seed, **kwargs)
    except InputError as exc:
        return EXIT_INPUT, {"command": args.command, "error": str(exc)}
    except (ValueError, KeyError, TypeError) as exc:
        return EXIT_INPUT, {"command": args.command,
                            "error": "invalid input: %s" % exc}
    status = "pass" if all(i["verdict"] != "fail" for i in items) else "fail"
    report = {
        "command": args.command,
        "inputs_echo": obj,
        "options": {"check": sorted(checks), "max_degree": args.max_degree,
                    "seed": args.seed},
        "summary": summary,
        "checks": items,
        "status": status,
    }
    return (EXIT_PASS if status == "pass" else EXIT_FAIL), report


def render_text(report):
    if "error" in report:
        return "error: %s" % report["error"]
    lines = ["%s: %s" % (report["command"], report["status"])]
    for key, val in sorted(report["summary"].items()):
        if key.endswith("betti") and isinstance(val, list):
            from .gradmod import betti_text
            table = {(k, d): n for (k, d, n) in val}
            lines.append("  %s:" % key)
            lines.extend("    " + row for row in betti_text(table).splitlines())
        else:
            lines.append("  %s: %s" % (key, val))
    for item in report["checks"]:
        lines.append("  [%s] %s (%s)" % (item["verdict"], item["name"],
                                         item["theorem"]))
    return "\n".join(lines)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    code, report = run(argv)
    fmt = "text"
    if "--format" in argv:
        idx = argv.index("--format")
        if idx + 1 < len(argv):
            fmt = argv[idx + 1]
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
