"""Command-line interface: reduction, membership, volumes, spectral checks.

Every command reads single-document JSON (file or stdin), writes a single
RunReport JSON document to stdout, and keeps diagnostics on stderr.  Exit
codes: 0 success, 2 parse/usage error, 3 numeric failure.  Reports are
deterministic for fixed inputs and --seed; only the timing field varies.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
import numpy as np

from .geometry import (VOLUME_TARGETS, laplacian_apply, metric_jacobi,
                       metric_p, metric_siegel, volume_f1, volume_fg_mc)
from .group_core import IllConditionedActionError, JacobiPoint, SiegelPoint
from .jacobi_domain import in_F_gh, in_P_omega, jacobi_reduce
from .jsonio import (decode_complex, decode_jacobi_point, decode_matrix,
                     decode_siegel_point, encode_jacobi_element,
                     encode_jacobi_point, encode_matrix, encode_siegel_point,
                     encode_symplectic)
from .minkowski import ReductionError, is_minkowski_reduced, minkowski_reduce
from .siegel import (SiegelReductionError, resolve_candidates,
                     siegel_membership, siegel_reduce)
from .torus_spectral import (FourierIndex, QuadratureGridError,
                             character_table, eigenvalue_E, eval_E_omega,
                             frequency_indices, torus_grid)

_NUMERIC_ERRORS = (ReductionError, SiegelReductionError,
                   IllConditionedActionError, QuadratureGridError,
                   np.linalg.LinAlgError)


class _InputError(ValueError):
    pass


def _read_json(path):
    try:
        if path is None or path == "-":
            raw = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                raw = fh.read()
    except OSError as exc:
        raise _InputError(str(exc)) from None
    digest = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw), digest
    except json.JSONDecodeError as exc:
        raise _InputError("malformed JSON: %s" % exc) from None


def _report(args, digest, outputs, tolerances, t0):
    rep = {
        "command": " ".join(args),
        "inputs_digest": digest,
        "outputs": outputs,
        "tolerances": tolerances,
        "timing_s": round(time.perf_counter() - t0, 6),
    }
    json.dump(rep, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _decode_pd(obj):
    if "Y" not in obj:
        raise _InputError("point.Y missing")
    return decode_matrix(obj["Y"], "point.Y")


def _cmd_reduce(ns, argv, t0):
    obj, digest = _read_json(ns.point)
    tol = {"eps": ns.eps}
    if ns.minkowski:
        y = _decode_pd(obj)
        cert = minkowski_reduce(y, bound=ns.bound, eps=ns.eps)
        out = {"reduced": encode_matrix(cert.reduced),
               "transform": encode_matrix(cert.transform.entries),
               "iterations": cert.iterations}
    elif ns.siegel:
        p = decode_siegel_point(obj)
        cands = resolve_candidates(p.g, ns.candidates)
        cert = siegel_reduce(p, cands, eps=ns.eps)
        out = {"reduced": encode_siegel_point(cert.reduced),
               "gamma": encode_symplectic(cert.gamma),
               "iterations": cert.iterations,
               "on_boundary": cert.on_boundary}
    else:
        p = decode_jacobi_point(obj)
        cands = resolve_candidates(p.g, ns.candidates)
        cert = jacobi_reduce(p, cands, eps=ns.eps)
        out = {"reduced": encode_jacobi_point(cert.reduced),
               "gammaJ": encode_jacobi_element(cert.gammaJ),
               "on_boundary": cert.on_boundary}
    _report(argv, digest, out, tol, t0)
    return 0


def _cmd_member(ns, argv, t0):
    obj, digest = _read_json(ns.point)
    tol = {"eps": ns.eps}
    if ns.minkowski:
        y = _decode_pd(obj)
        out = {"member": bool(is_minkowski_reduced(y, bound=ns.bound, eps=ns.eps))}
    elif ns.siegel:
        p = decode_siegel_point(obj)
        cands = resolve_candidates(p.g, ns.candidates)
        member, boundary = siegel_membership(p, cands, eps=ns.eps)
        out = {"member": member, "on_boundary": boundary}
    elif ns.p_omega:
        if ns.omega is None:
            raise _InputError("--omega FILE is required for --p-omega")
        om_obj, _ = _read_json(ns.omega)
        omega = decode_siegel_point(om_obj)
        if "Z" not in obj:
            raise _InputError("point.Z missing")
        z = decode_complex(obj["Z"], "point.Z")
        res = in_P_omega(z, omega, eps=ns.eps)
        out = {"member": res.inside, "on_boundary": res.on_boundary}
    else:
        p = decode_jacobi_point(obj)
        cands = resolve_candidates(p.g, ns.candidates)
        member = in_F_gh(p, cands, eps=ns.eps)
        res = in_P_omega(p.Z, p.omega, eps=ns.eps)
        out = {"member": member, "on_boundary": member and res.on_boundary}
    _report(argv, digest, out, tol, t0)
    return 0


def _cmd_volume(ns, argv, t0):
    tol = {"eps": ns.eps}
    target = VOLUME_TARGETS.get(ns.g)
    if ns.samples is None:
        if ns.g != 1:
            raise _InputError("deterministic quadrature is only available for --g 1; "
                              "pass --samples for Monte Carlo")
        est = volume_f1(ns.nodes)
        out = {"estimate": est, "stderr": 0.0, "target": target,
               "sigmas": None, "method": "quadrature", "nodes": ns.nodes}
    else:
        cands = resolve_candidates(ns.g, ns.candidates)
        res = volume_fg_mc(ns.g, ns.samples, ns.seed, threads=ns.threads,
                           eps=ns.eps, cands=cands)
        sig = abs(res.estimate - target) / res.stderr if (target and res.stderr) else None
        out = {"estimate": res.estimate, "stderr": res.stderr, "target": target,
               "sigmas": sig, "method": "monte-carlo", "samples": ns.samples,
               "seed": ns.seed, "acceptance_rate": res.acceptance_rate}
    digest = hashlib.sha256(json.dumps(
        {"g": ns.g, "samples": ns.samples, "seed": ns.seed}, sort_keys=True
    ).encode()).hexdigest()
    _report(argv, digest, out, tol, t0)
    return 0


def _cmd_spectral_check(ns, argv, t0):
    if ns.omega is not None:
        obj, digest = _read_json(ns.omega)
        omega = decode_siegel_point(obj)
        if omega.g != ns.g:
            raise _InputError("--omega has g=%d, expected --g %d" % (omega.g, ns.g))
    else:
        omega = SiegelPoint.from_omega(1j * np.eye(ns.g))
        digest = hashlib.sha256(b"default-omega").hexdigest()
    h, g = ns.h, ns.g
    rng = np.random.default_rng(ns.seed)

    p, q = torus_grid(h, g, ns.nodes)
    idxs = frequency_indices(h, g, 1)
    table = character_table(idxs, p, q, omega)
    gram = table.conj() @ table.T / p.shape[0]
    orth_dev = float(np.max(np.abs(gram - np.eye(len(idxs)))))

    per_dev = 0.0
    for _ in range(100):
        idx = FourierIndex(rng.integers(-2, 3, (h, g)), rng.integers(-2, 3, (h, g)))
        z = rng.normal(size=(h, g)) + 1j * rng.normal(size=(h, g))
        lam = rng.integers(-3, 4, (h, g))
        mu = rng.integers(-3, 4, (h, g))
        shift = z + lam @ omega.omega + mu
        per_dev = max(per_dev, float(abs(
            eval_E_omega(idx, shift, omega) - eval_E_omega(idx, z, omega))))

    eig_residuals = []
    for _ in range(ns.eigen_checks):
        idx = FourierIndex(rng.integers(-ns.max_freq, ns.max_freq + 1, (h, g)),
                           rng.integers(-ns.max_freq, ns.max_freq + 1, (h, g)))
        lam = eigenvalue_E(idx, omega)
        z0 = rng.normal(size=(h, g)) + 1j * rng.normal(size=(h, g))
        pt = JacobiPoint.from_z(omega, z0)
        val = laplacian_apply("omega", lambda zz: eval_E_omega(idx, zz, omega), pt)
        base = eval_E_omega(idx, z0, omega)
        if abs(lam) > 1e-12:
            eig_residuals.append(float(abs(val / base - lam) / abs(lam)))
        else:
            eig_residuals.append(float(abs(val / base)))
    out = {"orthonormality_max_dev": orth_dev,
           "periodicity_max_dev": per_dev,
           "eigen_residuals": eig_residuals}
    _report(argv, digest, out, {"eps": ns.eps}, t0)
    return 0


def _cmd_metric_eval(ns, argv, t0):
    obj, digest = _read_json(ns.point)
    if ns.kind == "P":
        y = _decode_pd(obj)
        for key in ("H1", "H2"):
            if key not in obj:
                raise _InputError("point.%s missing" % key)
        val = metric_p(y, decode_matrix(obj["H1"], "point.H1"),
                       decode_matrix(obj["H2"], "point.H2"))
    elif ns.kind == "siegel":
        p = decode_siegel_point(obj)
        for key in ("T1", "T2"):
            if key not in obj:
                raise _InputError("point.%s missing" % key)
        val = metric_siegel(p, decode_complex(obj["T1"], "point.T1"),
                            decode_complex(obj["T2"], "point.T2"))
    else:
        p = decode_jacobi_point(obj)
        tangents = []
        for key in ("T1", "T2"):
            if key not in obj or "dOmega" not in obj[key] or "dZ" not in obj[key]:
                raise _InputError("point.%s.dOmega/dZ missing" % key)
            tangents.append((decode_complex(obj[key]["dOmega"], key + ".dOmega"),
                             decode_complex(obj[key]["dZ"], key + ".dZ")))
        val = metric_jacobi(p, tangents[0], tangents[1])
    _report(argv, digest, {"value": val}, {"eps": ns.eps}, t0)
    return 0


def _build_parser():
    ap = argparse.ArgumentParser(prog="sjk", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, with_cands=True):
        p.add_argument("--eps", type=float, default=1e-9,
                       help="membership tolerance fed to every inequality")
        p.add_argument("--bound", type=int, default=3,
                       help="candidate box bound for the Minkowski conditions")
        if with_cands:
            p.add_argument("--candidates", default=None,
                           help="JSON file overriding the built-in candidate set")

    p = sub.add_parser("reduce", help="reduce a point into its fundamental domain")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--minkowski", action="store_true")
    mode.add_argument("--siegel", action="store_true")
    mode.add_argument("--jacobi", action="store_true")
    p.add_argument("--point", default=None, help="point JSON file (default: stdin)")
    common(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("member", help="membership tests with boundary flags")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--minkowski", action="store_true")
    mode.add_argument("--siegel", action="store_true")
    mode.add_argument("--jacobi", action="store_true")
    mode.add_argument("--p-omega", dest="p_omega", action="store_true")
    p.add_argument("--point", default=None)
    p.add_argument("--omega", default=None, help="base point file for --p-omega")
    common(p)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("volume", help="fundamental domain volume")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--samples", type=int, default=None,
                   help="Monte Carlo sample count (omit for g=1 quadrature)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--nodes", type=int, default=64)
    common(p)
    p.set_defaults(func=_cmd_volume)

    p = sub.add_parser("spectral-check", help="orthonormality/periodicity/eigen report")
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--omega", default=None)
    p.add_argument("--max-freq", dest="max_freq", type=int, default=2)
    p.add_argument("--nodes", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eigen-checks", dest="eigen_checks", type=int, default=5)
    common(p, with_cands=False)
    p.set_defaults(func=_cmd_spectral_check)

    p = sub.add_parser("metric-eval", help="evaluate an invariant metric")
    p.add_argument("--kind", choices=("P", "siegel", "jacobi"), required=True)
    p.add_argument("--point", default=None)
    common(p, with_cands=False)
    p.set_defaults(func=_cmd_metric_eval)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = _build_parser()
    ns = ap.parse_args(argv)
    t0 = time.perf_counter()
    try:
        return ns.func(ns, argv, t0)
    except _NUMERIC_ERRORS as exc:
        print("numeric failure: %s" % exc, file=sys.stderr)
        return 3
    except (_InputError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
