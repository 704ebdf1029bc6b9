"""``harmco``: JSON-in, JSON-out command line for workspaces.

Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 internal
invariant violation.  Errors are written to standard error as a JSON
object; reports go to standard output.  ``HARMCO_LOG`` sets the log level.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import __version__, verify
from .cocycle import mu_center, relator_residuals
from .energy import EnergyFunction
from .errors import HarmonicError, InvariantViolation, InputError
from .harmonic_functions import dirichlet_solve, lipschitz_from_cocycle
from .harmonize import h1_dimensions, harmonize_direct, harmonize_iterative
from .induction import induce_cocycle, induce_rep, transfer_dimensions
from .measure import validate_reasonable
from .products import decompose_product, dimension_additivity
from .rep import encode_vector
from .workspace import DEFAULT_OPTIONS, load

log = logging.getLogger("harmonic_cocycles")


def _clean(obj):
    """Make numpy values JSON-serializable."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _options(ws, args) -> dict:
    opts = dict(ws.options) if ws is not None else dict(DEFAULT_OPTIONS)
    for key in ("tol", "max_iter", "seed", "radius_cap", "gen_radius"):
        val = getattr(args, key, None)
        if val is not None:
            opts[key] = val
    return opts


# -- subcommands ---------------------------------------------------------------

def cmd_check(ws, args, opts):
    reasonable = {name: validate_reasonable(ws.group, mu, opts["gen_radius"],
                                            opts["radius_cap"]).to_json()
                  for name, mu in ws.measures.items()}
    cocycles = {}
    for name, c in ws.cocycles.items():
        res = relator_residuals(c.rep, c.values)
        cocycles[name] = {"max_relator_residual": max((r for _, r in res), default=0.0),
                          "harmonic_for": {m: mu_center(c, mu)[1]
                                           for m, mu in ws.measures.items()}}
    return {"all_valid": True, "validations": ws.validations, "measures": reasonable,
            "cocycles": cocycles}


def cmd_energy(ws, args, opts):
    c = ws.cocycle(args.cocycle)
    mu = ws.measure(args.measure)
    E = EnergyFunction(c, mu)
    v = ws.vector(args.vector, c.rep.dim)
    out = {"energy": E(), "cocycle": args.cocycle, "measure": args.measure}
    if v is not None:
        out["energy_at"] = E(v)
        out["vector"] = encode_vector(v, c.rep.field)
    w = ws.vector(args.direction, c.rep.dim)
    if w is not None:
        out["directional_derivative"] = E.derivative(w)
    center, harmonic = mu_center(c, mu)
    out["center"] = encode_vector(center, c.rep.field)
    out["is_harmonic"] = harmonic
    return out


def cmd_harmonize(ws, args, opts):
    c = ws.cocycle(args.cocycle)
    mu = ws.measure(args.measure)
    if args.method == "iterative":
        report = harmonize_iterative(c, mu, tol=opts["tol"], max_iter=opts["max_iter"],
                                     gen_radius=opts["gen_radius"])
    else:
        report = harmonize_direct(c, mu, gen_radius=opts["gen_radius"])
    out = report.to_json()
    out["cohomology"] = h1_dimensions(c.rep, mu).to_json()
    return out


def cmd_h1(ws, args, opts):
    rep = ws.rep(args.rep)
    mu = ws.measure(args.measure) if args.measure else None
    out = h1_dimensions(rep, mu).to_json()
    out["measure"] = args.measure or "uniform_on_generators"
    return out


def cmd_decompose(ws, args, opts):
    c = ws.cocycle(args.cocycle)
    mus = ws.factor_measure_list(args.measure)
    dec = decompose_product(c, mus, opts["gen_radius"])
    out = dec.to_json()
    out["dimension_additivity"] = dimension_additivity(c.rep, mus)
    return out


def cmd_induce(ws, args, opts):
    entry = ws.subgroup(args.subgroup)
    sub = entry.sub
    G = sub.ambient
    table = []
    for s, label in zip(G.generators, G.labels):
        for f in sub.coset_reps:
            gamma, f_new = sub.alpha(s, f)
            table.append({"g": label, "f": G.describe(f), "alpha": sub.subgroup.describe(gamma),
                          "f_new": G.describe(f_new)})
    out = {"index": sub.index, "membership": sub.membership, "alpha_table": table,
           "integrability": sub.integrability(), "integrable": True}
    if entry.reps or args.rep:
        pi = entry.reps.get(args.rep) if args.rep else next(iter(entry.reps.values()))
        if pi is None:
            raise InputError(f"unknown subgroup representation {args.rep!r}")
        ind = induce_rep(sub, pi)
        out["induced_rep"] = ind.induced.to_json()
        out["transfer"] = transfer_dimensions(sub, pi)
        if args.cocycle:
            if args.cocycle not in entry.cocycles:
                raise InputError(f"unknown subgroup cocycle {args.cocycle!r}")
            out["induced_cocycle"] = induce_cocycle(sub, entry.cocycles[args.cocycle], ind).to_json()
    return out


def cmd_dirichlet(ws, args, opts):
    mu = ws.measure(args.measure)
    b = ws.boundary(args.boundary)
    f = dirichlet_solve(ws.group, mu, b["radius"], b["values"], int(ws.options["ball_limit"]))
    return f.to_json()


def cmd_phiv(ws, args, opts):
    c = ws.cocycle(args.cocycle)
    mu = ws.measure(args.measure)
    name = args.vector
    if name is None and len(ws.vectors) == 1:
        name = next(iter(ws.vectors))
    v = ws.vector(name, c.rep.dim)
    if v is None:
        raise InputError("phiv needs --vector")
    f, cert = lipschitz_from_cocycle(c, v, args.radius, mu, int(ws.options["ball_limit"]))
    return {"function": f.to_json(), "certificate": cert.to_json()}


def cmd_selftest(ws, args, opts):
    seed = int(opts["seed"])
    checks = verify.CRITERIA + ([] if args.criteria_only else verify.INVARIANTS)
    results = verify.run_checks(checks, seed)
    for r in results:
        log.info("%s", r.line())
    rows = []
    for r in results:
        row = r.to_json()
        if not args.timings:
            row.pop("elapsed")
        rows.append(row)
    passed = all(r.passed for r in results)
    out = {"passed": passed, "checks": rows}
    if not passed:
        failed = [r.name for r in results if not r.passed]
        raise SelftestFailed(out, failed)
    return out


class SelftestFailed(InvariantViolation):
    def __init__(self, report, failed):
        super().__init__(f"{len(failed)} check(s) failed", failed=failed)
        self.report = report


COMMANDS = {"check": cmd_check, "energy": cmd_energy, "harmonize": cmd_harmonize, "h1": cmd_h1,
            "decompose": cmd_decompose, "induce": cmd_induce, "dirichlet": cmd_dirichlet,
            "phiv": cmd_phiv, "selftest": cmd_selftest}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="harmco", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, workspace=True):
        sp = sub.add_parser(name, help=help_)
        if workspace:
            sp.add_argument("workspace", help="workspace JSON file")
        else:
            sp.add_argument("workspace", nargs="?", help="optional workspace (for its seed)")
        sp.add_argument("--tol", type=float, help="convergence tolerance override")
        sp.add_argument("--max-iter", dest="max_iter", type=int, help="iteration cap override")
        sp.add_argument("--seed", type=int, help="seed override")
        sp.add_argument("--radius-cap", dest="radius_cap", type=int)
        sp.add_argument("--gen-radius", dest="gen_radius", type=int)
        return sp

    add("check", "validate every object in the workspace")
    sp = add("energy", "energy, shifted energy and directional derivative")
    sp.add_argument("--cocycle")
    sp.add_argument("--measure")
    sp.add_argument("--vector", help="shift vector: workspace name or JSON list")
    sp.add_argument("--direction", help="direction for the derivative")
    sp = add("harmonize", "harmonic representative of a cocycle's class")
    sp.add_argument("--cocycle")
    sp.add_argument("--measure")
    sp.add_argument("--method", choices=["direct", "iterative"], default="direct")
    sp = add("h1", "dimensions of Z^1, B^1, H^1 and harmonic cocycles")
    sp.add_argument("--rep")
    sp.add_argument("--measure")
    sp = add("decompose", "decomposition of a cocycle on a direct product")
    sp.add_argument("--cocycle")
    sp.add_argument("--measure", help="measure given with 'product' factors")
    sp = add("induce", "coset cocycle and induction from a finite-index subgroup")
    sp.add_argument("--subgroup")
    sp.add_argument("--rep", help="representation of the subgroup")
    sp.add_argument("--cocycle", help="cocycle of the subgroup")
    sp = add("dirichlet", "mean-value Dirichlet problem on a Cayley ball")
    sp.add_argument("--measure")
    sp.add_argument("--boundary")
    sp = add("phiv", "Lipschitz harmonic function from a harmonic cocycle")
    sp.add_argument("--cocycle")
    sp.add_argument("--measure")
    sp.add_argument("--vector", help="defaults to the only workspace vector")
    sp.add_argument("--radius", type=int, default=4)
    sp = add("selftest", "run every identity and invariant check", workspace=False)
    sp.add_argument("--criteria-only", action="store_true", help="skip module invariant checks")
    sp.add_argument("--timings", action="store_true", help="include run times in the report")
    return p


def _emit_error(exc: HarmonicError) -> int:
    err = exc.to_dict()
    err["exit_code"] = exc.exit_code
    print(json.dumps(_clean(err), sort_keys=True), file=sys.stderr)
    return exc.exit_code


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("HARMCO_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        ws = load(args.workspace) if args.workspace else None
        opts = _options(ws, args)
        log.info("running %s", args.command)
        result = COMMANDS[args.command](ws, args, opts)
        report = {"command": args.command, "input_digest": ws.digest if ws else None,
                  "seed": opts["seed"],
                  "tolerances": {"tol": opts["tol"], "max_iter": opts["max_iter"],
                                 "radius_cap": opts["radius_cap"],
                                 "gen_radius": opts["gen_radius"]},
                  "result": result}
        print(json.dumps(_clean(report), sort_keys=True, indent=2))
        return 0
    except SelftestFailed as exc:
        print(json.dumps(_clean(exc.report), sort_keys=True, indent=2))
        return _emit_error(exc)
    except HarmonicError as exc:
        return _emit_error(exc)
    except Exception as exc:  # anything unexpected is an internal fault
        log.debug("internal error", exc_info=True)
        return _emit_error(InvariantViolation(f"internal error: {type(exc).__name__}: {exc}"))


if __name__ == "__main__":
    sys.exit(main())
