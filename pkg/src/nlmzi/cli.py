"""Command-line front end.

Every data command writes one CSV (deterministic bytes: 17-significant-digit
floats, '\\n' endings, header row) plus a JSON run manifest recording the
full argv, engine version, cutoffs, tail masses, wall time, and a sha256
digest of each output. `rerun` replays a manifest into a scratch directory
and verifies the digests still match.

Exit codes: 0 success, 2 usage error, 3 numeric/configuration failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile
import time

import numpy as np

from . import __version__, coherence, evolution, fock, optomech, thermo
from .errors import ConfigurationError, DomainError, FitError
from .operators import CrossPhase, DegeneratePDC, Exchange, NonDegeneratePDC

PDC_HEAD = 9


def parse_grid(spec: str) -> np.ndarray:
    """Inclusive grid 'start:stop:count' -> linspace."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError("grid must be start:stop:count, got %r" % spec)
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if count < 1:
        raise ValueError("grid count must be >= 1")
    return np.linspace(start, stop, count)


def grid_arg(spec: str) -> str:
    parse_grid(spec)
    return spec


def _fmt(x) -> str:
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return ""
    return "%.17g" % x


def write_csv(path: str, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def sha256_of(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _json_safe(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, complex):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return [_json_safe(x) for x in v]
    return repr(v)


def write_manifest(args, argv, out_path, extras, cutoffs, tail_masses, wall):
    params = {k: _json_safe(v) for k, v in vars(args).items() if k != "func"}
    manifest = {
        "command": args.command,
        "argv": list(argv),
        "parameters": params,
        "engine_version": __version__,
        "cutoffs": cutoffs,
        "tail_masses": tail_masses,
        "wall_time_s": wall,
        "outputs": {os.path.basename(out_path): sha256_of(out_path)},
    }
    manifest.update(extras)
    mpath = out_path + ".manifest.json"
    with open(mpath, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, sort_keys=True, ensure_ascii=False, indent=2)
        fh.write("\n")
    return mpath


def build_process(args):
    if args.process == "cross-kerr":
        return CrossPhase(s=args.s, chi=1.0)
    return Exchange(k=args.k, g=1.0, allow_high_order=args.allow_high_order)


def add_process_flags(p):
    p.add_argument("--process", choices=["cross-kerr", "exchange"],
                   required=True)
    p.add_argument("--s", type=int, default=1, help="cross-phase order")
    p.add_argument("--k", type=int, default=2, help="exchange order")
    p.add_argument("--allow-high-order", action="store_true")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_wc_sweep(args, argv):
    t0 = time.perf_counter()
    process = build_process(args)
    thetas = parse_grid(args.theta)
    res = thermo.wc_sweep(process, args.nbar, thetas, tail_tol=args.tail_tol)
    rows = zip(res.thetas, res.wc, res.eta, res.wc_dispersion,
               res.mean_a, res.mean_b, res.odd_mass)
    write_csv(args.out, ["theta", "W", "eta", "wc_dispersion",
                         "mean_a", "mean_b", "parity_odd_mass"], rows)
    n_max = fock.thermal_cutoff(args.nbar, args.tail_tol)
    write_manifest(args, argv, args.out, {}, {"n_max": n_max},
                   {"input": res.tail_mass}, time.perf_counter() - t0)
    return 0


def cmd_max_efficiency(args, argv):
    t0 = time.perf_counter()
    process = build_process(args)
    rows = []
    cutoffs = {}
    tails = {}
    for nbar in args.nbar:
        eta, theta_star = thermo.max_efficiency(
            process, nbar, args.theta_max, grid=args.grid,
            tail_tol=args.tail_tol)
        rows.append((nbar, eta, theta_star, eta * nbar))
        key = "nbar=%s" % _fmt(nbar)
        cutoffs[key] = fock.thermal_cutoff(nbar, args.tail_tol)
        tails[key] = fock.thermal_tail_mass(nbar, cutoffs[key])
    write_csv(args.out, ["nbar", "eta_max", "theta_star",
                         "eta_max_times_nbar"], rows)
    write_manifest(args, argv, args.out, {}, cutoffs, tails,
                   time.perf_counter() - t0)
    return 0


def cmd_coherence(args, argv):
    t0 = time.perf_counter()
    process = build_process(args)
    thetas = parse_grid(args.theta)
    da, _, _ = evolution.sweep_distributions(process, args.nbar, thetas,
                                             tail_tol=args.tail_tol)
    rows = []
    for j, th in enumerate(thetas):
        p = da[:, j]
        rep = thermo.ergotropy(p)
        coh = coherence.coherence_report(p)
        rows.append((th, rep.wc, coh.g2, coh.g3, coh.g4,
                     coh.g2_norm, coh.g3_norm, coh.g4_norm,
                     coherence.g2_from_wc(rep)))
    write_csv(args.out, ["theta", "W", "g2", "g3", "g4", "g2_norm",
                         "g3_norm", "g4_norm", "g2_from_wc"], rows)
    n_max = fock.thermal_cutoff(args.nbar, args.tail_tol)
    write_manifest(args, argv, args.out, {}, {"n_max": n_max},
                   {"input": fock.thermal_tail_mass(args.nbar, n_max)},
                   time.perf_counter() - t0)
    return 0


def cmd_optomech(args, argv):
    t0 = time.perf_counter()
    process = build_process(args)
    dist_a, _ = evolution.mzi_output(process, args.t, args.nbar,
                                     tail_tol=args.tail_tol)
    taus = parse_grid(args.tau)
    cfg = optomech.OscillatorConfig(
        G=args.G, Omega=args.Omega, init=optomech.CoherentInit(args.alpha))
    osc_cutoff = args.osc_cutoff
    if osc_cutoff <= 0:
        amp = abs(args.alpha) + 2.0 * abs(args.G) * (dist_a.size - 1) / args.Omega
        osc_cutoff = int(math.ceil(amp * amp + 10.0 * amp + 20.0))
    closed = optomech.phonon_trace_coherent(dist_a, cfg, taus)
    oracle = optomech.full_quantum_oracle(dist_a, cfg, osc_cutoff, taus)
    rows = zip(taus, closed.phonon, oracle.phonon, oracle.xvar)
    write_csv(args.out, ["tau", "phonon_closed_form", "phonon_oracle",
                         "xvar"], rows)
    inf = optomech.infer_wc(oracle)
    n_max = fock.thermal_cutoff(args.nbar, args.tail_tol)
    extras = {
        "wc_inferred": inf.wc,
        "wc_direct": closed.field_summary.wc,
        "quad_inferred": inf.quad,
        "dispersion_inferred": inf.wc_dispersion,
        "fit_residual": inf.residual,
    }
    write_manifest(args, argv, args.out, extras,
                   {"n_max": n_max, "osc_cutoff": osc_cutoff},
                   {"input": fock.thermal_tail_mass(args.nbar, n_max)},
                   time.perf_counter() - t0)
    return 0


def cmd_pdc(args, argv):
    t0 = time.perf_counter()
    process = DegeneratePDC(g=1.0) if args.variant == "degenerate" \
        else NonDegeneratePDC(g=1.0)
    gts = parse_grid(args.gt)
    signal = evolution.pdc_signal_sweep(process, args.nbar, gts,
                                        tail_tol=args.tail_tol)
    head = np.zeros((PDC_HEAD, gts.size))
    m = min(PDC_HEAD, signal.shape[0])
    head[:m] = signal[:m]
    rows = []
    for j, gt in enumerate(gts):
        w = thermo.wc_from_dist(signal[:, j])
        rows.append((gt, *head[:, j], w))
    write_csv(args.out, ["gt"] + ["p%d" % n for n in range(PDC_HEAD)]
              + ["W_signal"], rows)
    n_max = fock.thermal_cutoff(args.nbar, args.tail_tol)
    write_manifest(args, argv, args.out, {}, {"pump_cutoff": n_max},
                   {"input": fock.thermal_tail_mass(args.nbar, n_max)},
                   time.perf_counter() - t0)
    return 0


def cmd_rerun(args, argv):
    with open(args.manifest, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    old_argv = list(manifest["argv"])
    if "--out" not in old_argv:
        raise ConfigurationError("manifest argv carries no --out flag")
    i = old_argv.index("--out")
    tmp = tempfile.mkdtemp(prefix="nlmzi-rerun-")
    new_out = os.path.join(tmp, os.path.basename(old_argv[i + 1]))
    old_argv[i + 1] = new_out
    rc = _dispatch(old_argv)
    if rc != 0:
        return rc
    ok = True
    for name, digest in manifest["outputs"].items():
        fresh = sha256_of(os.path.join(tmp, name))
        match = fresh == digest
        ok = ok and match
        print("%s %s" % ("MATCH" if match else "MISMATCH", name))
    return 0 if ok else 3


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nlmzi",
        description="thermal-noise interferometer sweeps and readout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wc-sweep", help="work capacity vs interaction phase")
    add_process_flags(p)
    p.add_argument("--nbar", type=float, required=True)
    p.add_argument("--theta", "--gt", dest="theta", type=grid_arg,
                   required=True, metavar="START:STOP:COUNT")
    p.add_argument("--tail-tol", type=float, default=1e-12)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_wc_sweep)

    p = sub.add_parser("max-efficiency", help="peak eta over a phase window")
    add_process_flags(p)
    p.add_argument("--nbar", type=float, nargs="+", required=True)
    p.add_argument("--theta-max", type=float, required=True)
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--tail-tol", type=float, default=1e-12)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_max_efficiency)

    p = sub.add_parser("coherence", help="factorial-moment ratios vs phase")
    add_process_flags(p)
    p.add_argument("--nbar", type=float, required=True)
    p.add_argument("--theta", "--gt", dest="theta", type=grid_arg,
                   required=True, metavar="START:STOP:COUNT")
    p.add_argument("--tail-tol", type=float, default=1e-12)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_coherence)

    p = sub.add_parser("optomech", help="oscillator readout of one output")
    add_process_flags(p)
    p.add_argument("--nbar", type=float, required=True)
    p.add_argument("--t", type=float, required=True,
                   help="interferometer interaction time")
    p.add_argument("--alpha", type=complex, default=complex(10.0))
    p.add_argument("--G", type=float, default=0.01)
    p.add_argument("--Omega", type=float, default=1.0)
    p.add_argument("--tau", type=grid_arg,
                   default="0:%.17g:256" % (4.0 * math.pi),
                   metavar="START:STOP:COUNT")
    p.add_argument("--osc-cutoff", type=int, default=0,
                   help="oscillator truncation; <=0 picks one automatically")
    p.add_argument("--tail-tol", type=float, default=1e-12)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_optomech)

    p = sub.add_parser("pdc", help="down-conversion signal distributions")
    p.add_argument("--variant", choices=["degenerate", "non-degenerate"],
                   required=True)
    p.add_argument("--nbar", type=float, required=True)
    p.add_argument("--gt", type=grid_arg, required=True,
                   metavar="START:STOP:COUNT")
    p.add_argument("--tail-tol", type=float, default=1e-12)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pdc)

    p = sub.add_parser("rerun", help="replay a manifest and verify digests")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_rerun)

    return ap


def _dispatch(argv) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args, argv)
    except (DomainError, ConfigurationError, FitError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    return _dispatch(list(argv))


if __name__ == "__main__":
    sys.exit(main())
