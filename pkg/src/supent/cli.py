"""Command line front end.

    supent gme     --family ghz-sup --n 4 --i 0 --j 3 --alpha 'asin(sqrt(27/32))' --mode both
    supent ree     --family two-block --m 2 --n 2 --alpha 0.32 --check-css
    supent discord --family w --n 4 --sweep-p 0:1:0.001
    supent fig1    --grid 201 --m 2 --n 2 --out fig1.csv
    supent fig2    --n 4 --grid 1001 --out fig2.csv
    supent verify  --suite all --seed 42

Compute commands print one JSON object. Exit codes: 0 ok, 1 verification
failure, 2 usage or state-description error, 3 optimizer did not converge.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__, acceptance, discord, gme, ree
from .figures import FIG1_COLUMNS, FIG2_COLUMNS, fig1_rows, fig2_rows, to_csv
from .numerics import relative_entropy
from .qstate import (DensityMatrix, DomainError, GhzSuperpositionSpec, PureState, TwoBlockSpec,
                     css_ghz_superposition, density, dicke, ghz_canonical, ghz_superposition,
                     reduce_to_two_block, two_block_canonical, w_state, w_superposition, w_tilde)

SEED_ENV = "SUPENT_SEED"
EXIT_VERIFY, EXIT_USAGE, EXIT_NONCONV = 1, 2, 3


class UsageError(Exception):
    pass


_SQRT_FORM = re.compile(r"^(asin|acos)\(sqrt\((\d+)(?:/(\d+))?\)\)$")
_PI_FORM = re.compile(r"^(-?)(\d+(?:\.\d+)?\*)?pi(?:/(\d+(?:\.\d+)?))?$")


def parse_angle(text: str) -> float:
    """Radians, ``[k*]pi[/d]``, or ``asin(sqrt(p/q))`` / ``acos(sqrt(p/q))`` with exact p/q."""
    t = text.replace(" ", "")
    m = _SQRT_FORM.match(t)
    if m:
        r = Fraction(int(m.group(2)), int(m.group(3) or 1))
        if r > 1:
            raise UsageError(f"radicand {r} exceeds 1 in {text!r}")
        # asin(sqrt(r)) = atan2(sqrt(r), sqrt(1 - r)) keeps full precision near pi/2
        a = math.atan2(math.sqrt(r.numerator), math.sqrt(r.denominator - r.numerator))
        return a if m.group(1) == "asin" else math.pi / 2 - a
    m = _PI_FORM.match(t)
    if m:
        k = float(m.group(2)[:-1]) if m.group(2) else 1.0
        d = float(m.group(3)) if m.group(3) else 1.0
        return (-1 if m.group(1) else 1) * k * math.pi / d
    try:
        return float(t)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None


def _sign(text: str) -> int:
    if text in ("+", "+1", "1", "plus"):
        return 1
    if text in ("-", "-1", "minus"):
        return -1
    raise UsageError(f"sign must be + or -, got {text!r}")


def read_amplitudes(path: str) -> PureState:
    """Text file, one ``index real imag`` triple per line; '#' starts a comment."""
    entries = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) not in (2, 3):
                raise UsageError(f"bad amplitude line {line!r}")
            idx = int(parts[0])
            re_, im = float(parts[1]), float(parts[2]) if len(parts) == 3 else 0.0
            entries.append((idx, complex(re_, im)))
    if not entries:
        raise UsageError("amplitude file is empty")
    top = max(i for i, _ in entries)
    N = max(1, top.bit_length())
    vec = np.zeros(2**N, dtype=complex)
    for i, a in entries:
        vec[i] += a
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise UsageError("amplitude file describes the zero vector")
    return PureState(N, vec / norm)


FAMILIES = ("ghz", "ghz-sup", "w", "w-tilde", "w-sup", "dicke", "two-block", "custom")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise UsageError(f"family {args.family} needs --" + ", --".join(missing))


def build_state(args) -> tuple[PureState, dict]:
    """Resolve the state description into a state and its parameters."""
    fam = args.family
    alpha = parse_angle(args.alpha) if args.alpha is not None else None
    gamma = parse_angle(args.gamma) if args.gamma is not None else 0.0
    p = {"family": fam}
    if fam == "ghz":
        _need(args, "n")
        i = args.i or 0
        p.update(n=args.n, i=i, sign_i=_sign(args.sign_i))
        return ghz_canonical(args.n, i, p["sign_i"]), p
    if fam == "ghz-sup":
        _need(args, "n", "i", "j", "alpha")
        spec = GhzSuperpositionSpec(args.n, args.i, args.j, _sign(args.sign_i), _sign(args.sign_j),
                                    alpha, gamma)
        tb = spec.two_block()
        p.update(n=args.n, i=args.i, j=args.j, sign_i=spec.sign_i, sign_j=spec.sign_j,
                 alpha=alpha, gamma=gamma, m_block=tb.m, n_block=tb.n, composite_sign=tb.sign)
        return ghz_superposition(spec), p
    if fam == "w":
        _need(args, "n")
        p.update(n=args.n)
        return w_state(args.n), p
    if fam == "w-tilde":
        _need(args, "n")
        p.update(n=args.n)
        return w_tilde(args.n), p
    if fam == "w-sup":
        _need(args, "n", "alpha")
        p.update(n=args.n, alpha=alpha, gamma=gamma)
        return w_superposition(args.n, alpha, gamma), p
    if fam == "dicke":
        _need(args, "n", "k")
        p.update(n=args.n, k=args.k)
        return dicke(args.n, args.k), p
    if fam == "two-block":
        _need(args, "m", "n", "alpha")
        spec = TwoBlockSpec(args.m, args.n, alpha, gamma, _sign(args.sign))
        p.update(m_block=args.m, n_block=args.n, alpha=alpha, gamma=gamma, composite_sign=spec.sign)
        return two_block_canonical(spec), p
    if fam == "custom":
        _need(args, "amplitudes-file")
        p.update(amplitudes_file=args.amplitudes_file)
        return read_amplitudes(args.amplitudes_file), p
    raise UsageError(f"unknown family {fam!r}")


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def run_record(argv, params, seed, outputs, t0) -> dict:
    return _jsonable({
        "command": list(argv),
        "parameters": params,
        "seed": seed,
        "outputs": outputs,
        "wall_time": time.perf_counter() - t0,
        "version": __version__,
    })


def _emit(record: dict, out=None):
    print(json.dumps(record, sort_keys=True), file=out or sys.stdout)


def _opt_config(args) -> gme.OptimizerConfig:
    return gme.OptimizerConfig(num_starts=args.starts, max_sweeps=args.max_sweeps,
                               tolerance=args.tol, seed=args.seed)


def _witness_dict(w: gme.ProductState) -> dict:
    th, lam = w.angles
    return {"theta": th, "lambda": lam, "symmetry": w.symmetry_tag}


def analytic_pmax(params: dict) -> float | None:
    fam = params["family"]
    if fam == "ghz":
        return 0.5
    if fam in ("ghz-sup", "two-block"):
        return gme.pmax_ghz_sup_analytic(params["m_block"], params["n_block"], params["alpha"])
    if fam in ("w", "w-tilde", "w-sup") and params["n"] >= 3:
        alpha = {"w": 0.0, "w-tilde": math.pi / 2}.get(fam, params.get("alpha"))
        return gme.pmax_w_sup(params["n"], alpha)[0]
    return None


# --------------------------------------------------------------------------
# commands


def cmd_gme(args, argv) -> int:
    t0 = time.perf_counter()
    psi, params = build_state(args)
    out, code = {}, 0
    if args.mode in ("analytic", "both"):
        pa = analytic_pmax(params)
        if pa is None and args.mode == "analytic":
            raise UsageError(f"no closed form for family {params['family']}")
        out["analytic"] = None if pa is None else {"pmax": pa, "G": gme.gme_from_pmax(pa)}
    if args.mode in ("numeric", "both"):
        r = gme.pmax_numeric(psi, _opt_config(args))
        out["numeric"] = {"pmax": r.value, "G": r.gme, "converged": r.converged,
                          "starts_agreeing": r.starts_agreeing, "witness": _witness_dict(r.witness)}
        if not r.converged:
            code = EXIT_NONCONV
    if args.mode == "both" and out.get("analytic"):
        out["discrepancy"] = out["numeric"]["pmax"] - out["analytic"]["pmax"]
    _emit(run_record(argv, params, args.seed, out, t0))
    return code


def _read_sigma(path: str) -> DensityMatrix:
    mat = np.loadtxt(path, dtype=complex)
    return DensityMatrix.from_matrix(np.atleast_2d(mat))


def cmd_ree(args, argv) -> int:
    t0 = time.perf_counter()
    psi, params = build_state(args)
    cfg = _opt_config(args)
    code = 0
    pm = gme.pmax_numeric(psi, cfg)
    out = {"pmax": pm.value, "pmax_bound": ree.pmax_lower_bound(psi, pm.value)}
    if not pm.converged:
        code = EXIT_NONCONV
    fam = params["family"]
    rho, sigma = density(psi), None
    if args.sigma_file:
        sigma = _read_sigma(args.sigma_file)
        out["candidate"] = "file"
    elif fam in ("ghz", "ghz-sup", "two-block"):
        if fam == "ghz":
            m, n, alpha = 1, params["n"] - 1, 0.0
        elif fam == "ghz-sup":
            # work in the LU-equivalent two-block frame
            red, tb = reduce_to_two_block(GhzSuperpositionSpec(
                params["n"], params["i"], params["j"], params["sign_i"], params["sign_j"],
                params["alpha"], params["gamma"]))
            rho = density(red)
            m, n, alpha = tb.m, tb.n, tb.alpha
        else:
            m, n, alpha = params["m_block"], params["n_block"], params["alpha"]
        sigma = css_ghz_superposition(m, n, alpha)
        out["candidate"] = "diagonal two-block CSS"
        out["formula_1_plus_H"] = ree.ree_ghz_superposition(alpha)
        out["formula_regime"] = "m,n >= 2" if min(m, n) >= 2 else "m or n = 1 (formula not established)"
    if sigma is not None:
        if sigma.num_qubits != psi.num_qubits:
            raise UsageError("candidate and state have different qubit counts")
        out["relative_entropy"] = relative_entropy(rho, sigma)
        if args.check_css:
            try:
                r = ree.css_criterion_max(rho, sigma, cfg)
                out["css_check"] = {"max_value": r.max_value, "verdict": r.verdict,
                                    "tolerance": r.tolerance, "converged": r.converged}
            except DomainError as e:
                out["css_check"] = {"verdict": "inapplicable", "reason": str(e)}
    _emit(run_record(argv, params, args.seed, out, t0))
    return code


def _parse_range(text: str) -> np.ndarray:
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--sweep-p expects lo:hi:step, got {text!r}") from None
    if step <= 0 or hi < lo or lo < 0 or hi > 1:
        raise UsageError("sweep range must satisfy 0 <= lo <= hi <= 1 and step > 0")
    K = int(round((hi - lo) / step)) + 1
    return np.clip(lo + step * np.arange(K), lo, hi)


def cmd_discord(args, argv) -> int:
    t0 = time.perf_counter()
    if args.sweep_p is not None:
        if args.family != "w":
            raise UsageError("--sweep-p is defined for the W family only")
        _need(args, "n")
        grid = _parse_range(args.sweep_p)
        sw = discord.w_discord_sweep(args.n, grid)
        text = to_csv(FIG2_COLUMNS, zip(sw.grid, sw.entropy))
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
            _emit(run_record(argv, {"family": "w", "n": args.n, "grid": len(grid)}, None,
                             {"min": sw.min, "argmin": sw.argmin, "log2N": math.log2(args.n),
                              "csv": args.out}, t0))
        else:
            sys.stdout.write(text)
        return 0
    psi, params = build_state(args)
    cfg = discord.SearchConfig(num_bases=args.bases, seed=args.seed)
    r = discord.discord_search(density(psi), cfg)
    out = {"D": r.value, "S_rho": r.entropy_state, "S_chi": r.entropy_dephased,
           "basis_angles": {"theta": r.angles[0::2], "phi": r.angles[1::2]}}
    _emit(run_record(argv, params, args.seed, out, t0))
    return 0


def _write_or_print(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_fig1(args, argv) -> int:
    if args.m < 2 or args.n < 2:
        raise UsageError("fig1 needs m, n >= 2")
    if args.grid < 2:
        raise UsageError("--grid must be >= 2")
    _write_or_print(to_csv(FIG1_COLUMNS, fig1_rows(args.grid)), args.out)
    return 0


def cmd_fig2(args, argv) -> int:
    if args.grid < 2 or args.n < 2:
        raise UsageError("need --n >= 2 and --grid >= 2")
    _write_or_print(to_csv(FIG2_COLUMNS, fig2_rows(args.n, args.grid)), args.out)
    return 0


def cmd_verify(args, argv) -> int:
    t0 = time.perf_counter()
    checks = acceptance.run_suite(args.suite, args.seed, echo=lambda s: print(s, flush=True))
    if args.suite in ("css", "all"):
        for line in acceptance.thin_block_report(args.seed):
            print("[INFO] css m or n = 1: " + line, flush=True)
    summary = {c.number: {"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks}
    failed = [c.number for c in checks if not c.passed]
    _emit(run_record(argv, {"suite": args.suite}, args.seed,
                     {"checks": summary, "failed": failed, "all_passed": not failed}, t0))
    return EXIT_VERIFY if failed else 0


# --------------------------------------------------------------------------


def _default_seed() -> int:
    try:
        return int(os.environ.get(SEED_ENV, "0"))
    except ValueError:
        return 0


def _add_state_args(p):
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, help="qubit count (block size n for two-block)")
    p.add_argument("--m", type=int, help="first block size (two-block)")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--sign-i", default="+")
    p.add_argument("--sign-j", default="+")
    p.add_argument("--sign", default="+", help="composite sign (two-block)")
    p.add_argument("--alpha")
    p.add_argument("--gamma")
    p.add_argument("--amplitudes-file")


def _add_opt_args(p):
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--max-sweeps", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-10)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="supent", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gme", help="P_max and geometric measure")
    _add_state_args(p)
    _add_opt_args(p)
    p.add_argument("--mode", choices=("numeric", "analytic", "both"), default="numeric")
    p.set_defaults(func=cmd_gme)

    p = sub.add_parser("ree", help="REE bounds, candidate CSS and criterion check")
    _add_state_args(p)
    _add_opt_args(p)
    p.add_argument("--check-css", action="store_true")
    p.add_argument("--sigma-file", help="candidate density matrix (numpy.loadtxt format)")
    p.set_defaults(func=cmd_ree)

    p = sub.add_parser("discord", help="discord search or the W symmetric-basis sweep")
    _add_state_args(p)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--bases", type=int, default=200)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sweep-p", metavar="LO:HI:STEP")
    g.add_argument("--search", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_discord)

    p = sub.add_parser("fig1", help="bounds vs exact values CSV")
    p.add_argument("--grid", type=int, default=201)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("fig2", help="W symmetric-basis entropy CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--suite", choices=sorted(acceptance.SUITES), default="all")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = make_parser().parse_args(argv)
    try:
        return args.func(args, argv)
    except (UsageError, DomainError) as e:
        print(f"supent: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
