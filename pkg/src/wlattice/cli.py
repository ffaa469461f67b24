"""Command-line front end: ``wlattice <subcommand> [options]``.

Exit status is 0 on success, 1 when the inputs are well formed but the
computation rejects them (bad carrier, dimension mismatch, unsupported
operation) and 2 on usage errors, including missing input files.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional


from . import io as wio
from .clodum import CLODUM_NAMES, DEFAULT_TOLERANCE, make_clodum
from .errors import WLatticeError



def _existing(path: str) -> str:
    if not os.path.isfile(path):
        raise argparse.ArgumentTypeError(f"no such file: {path}")
    return path


def _clodum(args, default="max-plus"):
    return make_clodum(args.clodum or default, args.tolerance)


def _kv_csv(payload: dict) -> str:
    rows = []
    for k, v in payload.items():
        if isinstance(v, (list, dict)):
            v = wio.json.dumps(v, separators=(",", ":"))
            v = '"' + v.replace('"', '""') + '"'
        rows.append((k, v))
    return wio.table_csv(["field", "value"], rows)


def _report(obj) -> tuple:
    payload = wio.to_jsonable(obj)
    return payload, _kv_csv(payload)


# ---------------------------------------------------------------- handlers


def cmd_solve(args):
    from .solve import solve_max, solve_min

    c = _clodum(args)
    A = wio.read_matrix(args.matrix, c)
    b = wio.read_vector(args.rhs, c)
    rep = (solve_min if args.min else solve_max)(A, b)
    payload = wio.to_jsonable(rep)
    rows = [(i, float(x), float(y), float(t))
            for i, (x, y, t) in enumerate(zip(rep.solution.data, rep.achieved.data, b.data))]
    return payload, wio.table_csv(["i", "solution", "achieved", "target"], rows)


def cmd_spectral(args):
    from .spectral import spectral_report

    A = wio.read_matrix(args.matrix, _clodum(args))
    return _report(spectral_report(A))


def _system(args):
    cfg = wio.load_system(args.system, args.clodum, args.tolerance)
    return cfg


def cmd_simulate(args):
    from .systems import closed_form_response, simulate

    cfg = _system(args)
    sys_ = cfg.system
    x0 = wio.read_vector(args.x0, sys_.clodum) if args.x0 else cfg.x0
    u = wio.read_matrix(args.input, sys_.clodum).data if args.input else cfg.u
    T = args.T if args.T is not None else cfg.T
    if T is None:
        # input rows are u(1)..u(T)
        T = 10 if u is None else u.shape[0]
    run = closed_form_response if args.closed_form else simulate
    traj = run(sys_, x0, u, T)
    payload = {"T": traj.T, "states": wio.to_jsonable(traj.states),
               "outputs": wio.to_jsonable(traj.outputs)}
    return payload, traj.to_csv()


def cmd_impulse(args):
    from .systems import Signal, impulse_response

    cfg = _system(args)
    T = args.T if args.T is not None else (cfg.T or 20)
    h = impulse_response(cfg.system, T)
    H = h.window(0, T)[:, None, None] if isinstance(h, Signal) else h
    q, p = H.shape[1:]
    names = ["h"] if q == p == 1 else [f"h{i + 1}{j + 1}" for i in range(q) for j in range(p)]
    rows = [[t] + [float(v) for v in H[t].ravel()] for t in range(T + 1)]
    return {"T": T, "h": wio.to_jsonable(H if q * p > 1 else H[:, 0, 0])}, \
        wio.table_csv(["t"] + names, rows)


def cmd_stability(args):
    from .systems import check_causal_stable

    cfg = _system(args)
    return _report(check_causal_stable(cfg.system, horizon=args.horizon))


def cmd_reach(args):
    from .control import reach

    cfg = _system(args)
    c = cfg.system.clodum
    target = wio.read_vector(args.target, c)
    x0 = wio.read_vector(args.x0, c) if args.x0 else None
    rep = reach(cfg.system, args.k, target, x0)
    payload = wio.to_jsonable(rep)
    # solution is ordered u(k), ..., u(1)
    rows = [(args.k - j, float(v)) for j, v in enumerate(rep.solution.data)]
    return payload, wio.table_csv(["t", "u"], rows)


def cmd_observe(args):
    from .control import observe

    cfg = _system(args)
    y = wio.read_matrix(args.outputs, cfg.system.clodum)
    rep = observe(cfg.system, args.k, y.data.ravel())
    payload = wio.to_jsonable(rep)
    rows = [(i + 1, float(v)) for i, v in enumerate(rep.solution.data)]
    return payload, wio.table_csv(["i", "x0"], rows)


def cmd_filter(args):
    from .applications.filters import (FilterSpec, companion_matrix, filter_eigenvalue,
                                       run_filter)
    from .spectral import cycle_mean_eigenvalue, dual_cycle_mean
    from .systems import Signal, check_causal_stable

    c = _clodum(args)
    f = FilterSpec(tuple(args.a), tuple(args.b), args.mode, c)
    if args.input:
        u = wio.read_vector(args.input, c).data
    else:
        u = Signal.impulse(c, args.mode)
    y = run_filter(f, u, args.T)
    A = companion_matrix(f)
    lam = cycle_mean_eigenvalue(A)[0] if args.mode == "max" else dual_cycle_mean(A)
    payload = {"eigenvalue": filter_eigenvalue(f), "companion_eigenvalue": lam,
               "response": y.window(0, args.T)}
    if not args.input:
        payload["stability"] = check_causal_stable(y)
    rows = [(t, float(v)) for t, v in enumerate(y.window(0, args.T))]
    return wio.to_jsonable(payload), wio.table_csv(["t", "y"], rows)


def cmd_dt(args):
    from .applications.distance import GridField, distance_transform

    # the grid is read as plain extended reals; min-plus lives in the DT itself
    c = make_clodum("max-plus", args.tolerance)
    field = wio.read_matrix(args.grid, c).data
    obst = wio.read_matrix(args.obstacles, c).data != 0 if args.obstacles else None
    g = GridField(field, obst, tuple(args.steps))
    res = distance_transform(g, args.max_passes, keep_history=args.history)
    payload = {"passes_used": res.passes_used, "converged": res.converged,
               "field": res.field}
    if args.history:
        payload["history"] = res.history
    text = "".join(f"# pass {k + 1}\n" + wio.matrix_to_text(h) for k, h in enumerate(res.history))
    text += ("# result\n" if args.history else "") + wio.matrix_to_text(res.field)
    csv_text = "".join(ln if ln.startswith("#") else ln.replace(" ", ",")
                       for ln in text.splitlines(keepends=True))
    return wio.to_jsonable(payload), csv_text


def cmd_viterbi(args):
    from .applications.hmm import viterbi

    h = wio.load_hmm(args.hmm, args.clodum, args.tolerance)
    res = viterbi(h, args.T)
    payload = {"score": res.score, "path": list(res.path),
               "scores": res.trajectory.states}
    rows = [(t, s, float(res.trajectory.states[t, s])) for t, s in enumerate(res.path)]
    return wio.to_jsonable(payload), wio.table_csv(["t", "state", "score"], rows)


def cmd_fmc(args):
    from .applications.fuzzy import FmcSpec, fmc_analyze

    c = make_clodum("max-min" if args.tnorm == "min" else "product-tnorm", args.tolerance)
    M = wio.read_matrix(args.matrix, c).data
    f = FmcSpec(M, args.tnorm) if args.relation else FmcSpec.from_state_matrix(M, args.tnorm)
    rep = fmc_analyze(f)
    payload = {"tau": rep.tau, "period": rep.period, "ergodic": rep.ergodic,
               "unit_diagonal": rep.unit_diagonal, "metric_matrix": rep.metric,
               "limit": rep.limit, "stationary": rep.stationary, "powers": rep.powers}
    return wio.to_jsonable(payload), _kv_csv(wio.to_jsonable(
        {k: payload[k] for k in ("tau", "period", "ergodic", "metric_matrix", "stationary")}))


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--clodum", choices=CLODUM_NAMES, default=None,
                        help="scalar algebra (default depends on the subcommand)")
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                        help="scalar comparison tolerance (default %(default)g)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")

    p = argparse.ArgumentParser(prog="wlattice",
                                description="Weighted-lattice algebra and dynamical systems.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, handler, default_format, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        sp.set_defaults(handler=handler, default_format=default_format)
        return sp

    sp = add("solve", cmd_solve, "json", "greatest subsolution of A x = b")
    sp.add_argument("matrix", type=_existing)
    sp.add_argument("rhs", type=_existing)
    sp.add_argument("--min", action="store_true", help="least supersolution of the min equation")

    sp = add("spectral", cmd_spectral, "json", "principal eigenvalue, critical cycle, metric matrix")
    sp.add_argument("matrix", type=_existing)

    for name, handler, fmt, help_ in (
            ("simulate", cmd_simulate, "csv", "state trajectory of a system"),
            ("impulse", cmd_impulse, "csv", "impulse response of a constant system"),
            ("stability", cmd_stability, "json", "causality and stability report"),
            ("reach", cmd_reach, "json", "greatest control sequence reaching a target"),
            ("observe", cmd_observe, "json", "greatest initial state matching outputs")):
        sp = add(name, handler, fmt, help_)
        sp.add_argument("system", type=_existing, help="YAML system file")
        if name in ("simulate", "impulse"):
            sp.add_argument("--T", type=int, default=None, help="horizon")
        if name == "simulate":
            sp.add_argument("--x0", type=_existing)
            sp.add_argument("--input", type=_existing, help="input rows u(1)..u(T)")
            sp.add_argument("--closed-form", action="store_true")
        if name == "stability":
            sp.add_argument("--horizon", type=int, default=None)
        if name == "reach":
            sp.add_argument("--k", type=int, required=True)
            sp.add_argument("--target", type=_existing, required=True)
            sp.add_argument("--x0", type=_existing)
        if name == "observe":
            sp.add_argument("--k", type=int, required=True)
            sp.add_argument("--outputs", type=_existing, required=True,
                            help="stacked y(1)..y(k)")

    sp = add("filter", cmd_filter, "csv", "run a recursive max/min-sum filter")
    sp.add_argument("--a", type=float, nargs="+", required=True, help="feedback a_1..a_n")
    sp.add_argument("--b", type=float, nargs="+", default=[0.0], help="feedforward b_0..b_m")
    sp.add_argument("--mode", choices=("max", "min"), default="max")
    sp.add_argument("--T", type=int, default=50)
    sp.add_argument("--input", type=_existing, help="input samples u(0), u(1), ...")

    sp = add("dt", cmd_dt, "csv", "chamfer distance transform of a grid")
    sp.add_argument("grid", type=_existing, help="0 on sources, inf elsewhere")
    sp.add_argument("--obstacles", type=_existing, help="nonzero marks an obstacle")
    sp.add_argument("--steps", type=float, nargs=2, default=[1.0, 2 ** 0.5],
                    metavar=("A", "B"))
    sp.add_argument("--max-passes", type=int, default=8)
    sp.add_argument("--history", action="store_true", help="also emit every pass")

    sp = add("viterbi", cmd_viterbi, "json", "most likely HMM state sequence")
    sp.add_argument("hmm", type=_existing, help="YAML HMM file")
    sp.add_argument("--T", type=int, default=None)

    sp = add("fmc", cmd_fmc, "json", "powers and stationary states of a fuzzy Markov chain")
    sp.add_argument("matrix", type=_existing, help="state-update matrix A")
    sp.add_argument("--tnorm", choices=("min", "product"), default="min")
    sp.add_argument("--relation", action="store_true",
                    help="the file holds the relation P = A^T instead of A")
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, csv_text = args.handler(args)
    except (WLatticeError, ValueError) as exc:
        print(f"wlattice {args.command}: error: {exc}", file=sys.stderr)
        return 1
    fmt = args.format or args.default_format
    text = wio.dumps_json(payload) if fmt == "json" else csv_text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
