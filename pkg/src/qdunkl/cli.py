"""Command line interface.

    qdunkl kernel --chi 0.6 --theta 1.0 --x 1.2 --y 0.8
    qdunkl transform2d --gen "hermite(1,2)" --theta1 1.047 --compare
    qdunkl verify --suite heisenberg --chi1 0.5 --chi2 1.0 --theta1 1.0 --theta2 0.7
    qdunkl moments --p 2 --gen "gaussian(0.5)"

Exit codes: 0 all checks pass, 1 some check failed, 2 bad configuration.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import frqdt2d as F
from . import uncertainty as U
from .basis import frac_kernel, is_special_angle
from .errors import QDunklError
from .quadrature import Grid2D, build_rule, max_abs_diff, read_csv, read_json, write_csv, write_json
from .quatcore import Quaternion, UnitAxis, scalar_field
from .report import Report
from .transform1d import (
    AxisTransformSpec,
    Side,
    frac_dunkl_quadrature,
    frac_dunkl_spectral,
    frac_hankel,
    hankel_gaussian_complex,
)

SUITES = ["plancherel", "inversion", "composition", "bochner", "eigen", "gaussian",
          "heisenberg", "higher_order", "frqft", "bounds"]

DEFAULT_TOL = {
    "plancherel": 1e-7, "inversion": 1e-7, "composition": 1e-6, "bochner": 1e-6,
    "eigen": 1e-7, "gaussian": 1e-7, "heisenberg": 1e-6, "higher_order": 1e-6,
    "frqft": 1e-6, "bounds": 1e-9, "compare": 1e-7, "table_p1": 1e-10,
}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    chi1: float = 0.5
    chi2: float = 0.5
    theta1: float = math.pi / 3
    theta2: float = 2 * math.pi / 5
    axis_a: str = "i"
    axis_b: str = "j"
    N: int = 48
    nmax: int = 16
    seed: int = 0
    threads: int = 1
    suites: list = field(default_factory=list)
    tol: dict = field(default_factory=dict)
    out: str | None = None
    alphas: tuple = (0.5, 0.8, 1.3)
    beta: tuple = (math.pi / 4, math.pi / 6)

    def spec(self) -> F.TransformSpec:
        return F.TransformSpec(self.chi1, self.chi2, self.theta1, self.theta2,
                               UnitAxis.parse(self.axis_a), UnitAxis.parse(self.axis_b))

    def grid(self) -> Grid2D:
        return Grid2D.build(self.chi1, self.chi2, self.N)

    def tolerance(self, name: str) -> float:
        return self.tol.get(name, DEFAULT_TOL[name])


# ---------------------------------------------------------------------------
# built-in generators

_GEN = re.compile(r"^\s*(\w+)\s*\(([^)]*)\)\s*$")


def make_field(text: str, grid: Grid2D, cfg: RunConfig):
    m = _GEN.match(text)
    if not m:
        raise ConfigError(f"cannot parse generator {text!r}")
    name = m.group(1)
    try:
        args = [float(v) for v in m.group(2).split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"bad generator arguments in {text!r}") from None
    if name == "gaussian" and len(args) == 1:
        return F.gaussian_field(args[0], grid)
    if name == "hermite" and len(args) == 2:
        n, k = int(args[0]), int(args[1])
        return F.hermite_field(n, k, grid)
    if name == "example_eigen" and len(args) == 4:
        spec = cfg.spec()
        return F.example_eigen_field(grid, *args, a=spec.a, b=spec.b)
    raise ConfigError(f"unknown generator {text!r}; use gaussian(a), hermite(n,m), example_eigen(t1,r1,t2,r2)")


def load_input(path: str, grid: Grid2D):
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"input file {path} not found")
    return read_json(p, grid) if p.suffix == ".json" else read_csv(p, grid)


def save_field(f, path: str) -> None:
    if path.endswith(".json"):
        write_json(f, path)
    else:
        write_csv(f, path)


# ---------------------------------------------------------------------------
# verification suites; each returns a list of reports


def _random_set(cfg: RunConfig, grid: Grid2D, count: int):
    rng = np.random.default_rng(cfg.seed)
    return [F.random_bandlimited(grid, rng) for _ in range(count)]


def _aggregate(name: str, reports: list[Report], tol: float, params: dict) -> Report:
    res = max((r.residual for r in reports), default=0.0)
    return Report(name, dict(params, cases=len(reports)), tol,
                  all(r.passed for r in reports), residual=res)


def suite_plancherel(cfg):
    spec, grid, tol = cfg.spec(), cfg.grid(), cfg.tolerance("plancherel")
    reps = [F.plancherel_check(f, spec, tol) for f in _random_set(cfg, grid, 20)]
    return [_aggregate("plancherel", reps, tol, dict(spec.params(), seed=cfg.seed))]


def suite_inversion(cfg):
    spec, grid, tol = cfg.spec(), cfg.grid(), cfg.tolerance("inversion")
    fs = [F.gaussian_field(0.5, grid)] + _random_set(cfg, grid, 20)
    reps = [F.inversion_check(f, spec, tol) for f in fs]
    return [_aggregate("inversion", reps, tol, dict(spec.params(), seed=cfg.seed))]


def suite_composition(cfg):
    beta = cfg.beta
    spec, grid, tol = cfg.spec(), cfg.grid(), cfg.tolerance("composition")
    spec2 = F.TransformSpec(spec.chi1, spec.chi2, beta[0], beta[1], spec.a, spec.b)
    fs = [F.gaussian_field(0.5, grid)] + _random_set(cfg, grid, 5)
    reps = [F.compose_check(f, spec, spec2, tol) for f in fs]
    return [_aggregate("composition", reps, tol, dict(spec.params(), beta=list(beta)))]


def suite_bochner(cfg):
    spec, grid, tol = cfg.spec(), cfg.grid(), cfg.tolerance("bochner")
    out = []
    for d in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        out.append(F.bochner_check(d, spec, grid, tol=tol))
    out.append(F.bochner_check((1, 0), spec, grid, p=Quaternion(1.0, 0.0, 0.0, 1.0), tol=tol))
    return out


def suite_eigen(cfg):
    spec, grid, tol = cfg.spec(), cfg.grid(), cfg.tolerance("eigen")
    out = []
    for path in ("quadrature", "spectral"):
        err = 0.0
        for n in range(7):
            for m in range(7):
                f = F.hermite_field(n, m, grid)
                ex = F.frqdt_spectral(F.SpectralCoeffs(n, m, _delta(n, m)), spec)
                expected = F.synthesize(ex, grid)
                err = max(err, max_abs_diff(F.frqdt(f, spec, path), expected))
        out.append(Report("eigen", dict(spec.params(), path=path, nmax=6), tol, err <= tol, residual=err))
    return out


def _delta(n, m):
    c = np.zeros((n + 1, m + 1, 4))
    c[n, m, 0] = 1.0
    return c


def suite_gaussian(cfg):
    spec, grid, tol = cfg.spec(), cfg.grid(), cfg.tolerance("gaussian")
    return [F.gaussian_check(a, spec, grid, tol=tol) for a in cfg.alphas]


def _unit_quaternions(rng, k):
    q = rng.standard_normal((k, 4))
    return [Quaternion.from_array(v / np.linalg.norm(v)) for v in q]


def suite_heisenberg(cfg):
    spec, grid, tol = cfg.spec(), cfg.grid(), cfg.tolerance("heisenberg")
    rng = np.random.default_rng(cfg.seed)
    gauss = [U.heisenberg_check(F.gaussian_field(0.5, grid, C), spec, 1.0, tol=tol)
             for C in _unit_quaternions(rng, 5)]
    gdev = max(abs(r.ratio - 1.0) for r in gauss)
    rand = [U.heisenberg_check(f, spec, 1.0, tol=tol) for f in _random_set(cfg, grid, 50)]
    rmin = min(r.ratio for r in rand)
    C = U.sharp_constant_p1(spec.chi1, spec.chi2)
    return [
        Report("heisenberg_equality", dict(spec.params(), constant=C), tol, gdev <= tol,
               ratio=gauss[0].ratio, extra={"max_abs_ratio_minus_1": gdev,
                                            "ratio_ground_state_constant": gauss[0].extra["ratio_ground_state_constant"]}),
        Report("heisenberg_random", dict(spec.params(), constant=C, cases=50), tol, rmin >= 1 - tol, ratio=rmin),
    ]


def suite_higher_order(cfg, ps=(1.5, 2.0)):
    spec, grid, tol = cfg.spec(), cfg.grid(), cfg.tolerance("higher_order")
    out = []
    fs = _random_set(cfg, grid, 50)
    for p in ps:
        dc = U.diagonal_coeffs(p, spec.chi1, spec.chi2, cfg.nmax)
        reps = []
        for f in fs:
            g = F.frqdt_quadrature(f, spec)
            mx, my = U.weighted_moment(f, p), U.weighted_moment(g, p)
            reps.append(mx * my / (dc.amin ** 2 * F.norm2(f) ** 4))
        rmin = min(reps)
        out.append(Report("higher_order", dict(spec.params(), p=p, amin=dc.amin, argmin=list(dc.argmin)),
                          tol, rmin >= 1 - tol, ratio=rmin))
    dc = U.diagonal_coeffs(1.0, spec.chi1, spec.chi2, 8)
    ttol = cfg.tolerance("table_p1")
    err = float(np.max(np.abs(dc.table - dc.stated_p1_table())))
    exact = float(np.max(np.abs(dc.table - dc.exact_p1_table())))
    out.append(Report("diagonal_table_p1", dict(spec.params(), nmax=8), ttol, err <= ttol,
                      residual=err, extra={"residual_vs_beta_sum": exact}))
    return out


def suite_frqft(cfg):
    grid = Grid2D.build(0.0, 0.0, cfg.N)
    tol = cfg.tolerance("frqft")
    rep = U.frqft_corollary_check(F.gaussian_field(0.5, grid), cfg.theta1, cfg.theta2, tol)
    ok = rep.passed and abs(rep.ratio - 1.0) <= tol and rep.sharp_constant == 4.0
    print(f"note: {U.MEASURE_CAVEAT}", file=sys.stderr)
    return [Report("frqft", dict(rep.params), tol, ok, ratio=rep.ratio,
                   extra={"constant": rep.sharp_constant, "measure_caveat": U.MEASURE_CAVEAT})]


def suite_bounds(cfg):
    spec, grid, tol = cfg.spec(), cfg.grid(), cfg.tolerance("bounds")
    if is_special_angle(spec.theta1) or is_special_angle(spec.theta2):
        raise ConfigError("the sup bound needs |sin theta_i| above the floor")
    fs = [F.gaussian_field(0.5, grid)] + _random_set(cfg, grid, 20)
    reps = [F.sup_bound_check(f, spec, tol) for f in fs]
    worst = max(r.ratio for r in reps)
    return [Report("bounds", dict(spec.params(), cases=len(reps)), tol,
                   all(r.passed for r in reps), ratio=worst)]


SUITE_FUNCS = {
    "plancherel": suite_plancherel, "inversion": suite_inversion, "composition": suite_composition,
    "bochner": suite_bochner, "eigen": suite_eigen, "gaussian": suite_gaussian,
    "heisenberg": suite_heisenberg, "higher_order": suite_higher_order, "frqft": suite_frqft,
    "bounds": suite_bounds,
}


def run_suites(cfg: RunConfig) -> list[Report]:
    names = cfg.suites or SUITES
    for n in names:
        if n not in SUITE_FUNCS:
            raise ConfigError(f"unknown suite {n!r}; choose from {', '.join(SUITES)}")
    if cfg.threads <= 1:
        results = [SUITE_FUNCS[n](cfg) for n in names]
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
            results = list(ex.map(lambda n: SUITE_FUNCS[n](cfg), names))
    return [r for group in results for r in group]


# ---------------------------------------------------------------------------
# commands


def _emit(payload, cfg: RunConfig) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if cfg.out:
        Path(cfg.out).write_text(text + "\n")
    else:
        print(text)


def cmd_verify(cfg: RunConfig) -> int:
    reports = run_suites(cfg)
    _emit([r.to_dict() for r in reports], cfg)
    failed = [r.check for r in reports if not r.passed]
    if failed:
        print("failed checks: " + ", ".join(failed), file=sys.stderr)
        return 1
    return 0


def cmd_kernel(cfg: RunConfig, args) -> int:
    axis = UnitAxis.parse(args.axis)
    q = frac_kernel(args.chi, args.theta, args.x, args.y, axis)
    _emit({"chi": args.chi, "theta": args.theta, "x": args.x, "y": args.y, "axis": axis.label(),
           "kernel": list(q.as_array()), "modulus": abs(q)}, cfg)
    return 0


def cmd_transform1d(cfg: RunConfig, args) -> int:
    rule = build_rule(args.chi, cfg.N)
    x = rule.nodes
    if args.func.startswith("gaussian"):
        alpha = float(args.func.split(":")[1]) if ":" in args.func else 0.5
        f = scalar_field(np.exp(-alpha * x * x))
    elif args.func.startswith("hermite"):
        from .basis import hermite_h

        n = int(args.func.split(":")[1])
        f = scalar_field(hermite_h(n, args.chi, x))
    else:
        raise ConfigError(f"unknown function {args.func!r}; use gaussian:alpha or hermite:n")
    spec = AxisTransformSpec(args.chi, args.theta, UnitAxis.parse(args.axis), Side(args.side))
    out = frac_dunkl_spectral(f, spec, rule) if args.path == "spectral" else frac_dunkl_quadrature(f, spec, rule)
    payload = {"chi": args.chi, "theta": args.theta, "path": args.path,
               "y": list(x), "values": [list(v) for v in out]}
    if args.compare:
        other = frac_dunkl_spectral(f, spec, rule) if args.path != "spectral" else frac_dunkl_quadrature(f, spec, rule)
        payload["compare_residual"] = float(np.max(np.abs(out - other)))
    _emit(payload, cfg)
    return 0


def cmd_transform2d(cfg: RunConfig, args) -> int:
    grid = cfg.grid()
    if args.input:
        f = load_input(args.input, grid)
    elif args.gen:
        f = make_field(args.gen, grid, cfg)
    else:
        raise ConfigError("transform2d needs --input or --gen")
    spec = cfg.spec()
    g = F.frqdt(f, spec, args.path)
    code = 0
    if args.output:
        save_field(g, args.output)
    if args.compare:
        other = F.frqdt(f, spec, "spectral" if args.path == "quadrature" else "quadrature")
        res = F._rel(g - other, f)
        tol = cfg.tolerance("compare")
        _emit(Report("compare", dict(spec.params(), path=args.path), tol, res <= tol, residual=res).to_dict(), cfg)
        code = 0 if res <= tol else 1
    elif not args.output:
        from .quadrature import field_to_json

        _emit(field_to_json(g), cfg)
    return code


def cmd_hankel(cfg: RunConfig, args) -> int:
    axis = UnitAxis.parse(args.axis)
    y = np.array(args.y, dtype=float)
    q = frac_hankel(lambda x: np.exp(-args.alpha * x * x), args.nu, args.theta, axis, y, N=cfg.N)
    payload = {"nu": args.nu, "theta": args.theta, "alpha": args.alpha, "y": list(y),
               "quadrature": [list(v) for v in q]}
    code = 0
    if 0 < math.remainder(args.theta, 2 * math.pi) < math.pi:
        z = hankel_gaussian_complex(args.alpha, args.nu, args.theta, y)
        cf = np.stack([z.real] + [z.imag * c for c in axis.vec], axis=-1)
        res = float(np.max(np.abs(cf - q)))
        payload["closed_form"] = [list(v) for v in cf]
        payload["residual"] = res
        code = 0 if res <= cfg.tolerance("gaussian") else 1
    _emit(payload, cfg)
    return code


def cmd_moments(cfg: RunConfig, args) -> int:
    grid = cfg.grid()
    spec = cfg.spec()
    if args.batch:
        rng = np.random.default_rng(cfg.seed)
        reps = []
        for _ in range(args.batch):
            f = F.random_bandlimited(grid, rng)
            g = F.frqdt_quadrature(f, spec)
            for p in args.p:
                reps.append(U.heisenberg_check(f, spec, p, cfg.nmax, cfg.tolerance("higher_order"), g))
        text = U.batch_csv(reps)
        if cfg.out:
            Path(cfg.out).write_text(text)
        else:
            sys.stdout.write(text)
        return 0 if all(r.passed for r in reps) else 1
    f = load_input(args.input, grid) if args.input else make_field(args.gen or "gaussian(0.5)", grid, cfg)
    reps = [U.heisenberg_check(f, spec, p, cfg.nmax, cfg.tolerance("higher_order")) for p in args.p]
    _emit([r.to_dict() for r in reps], cfg)
    return 0 if all(r.passed for r in reps) else 1


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--chi1", type=float, default=0.5)
    p.add_argument("--chi2", type=float, default=0.5)
    p.add_argument("--theta1", type=float, default=math.pi / 3)
    p.add_argument("--theta2", type=float, default=2 * math.pi / 5)
    p.add_argument("--axis-a", default="i", help="i, j, k, -i, ... or a triple 'x,y,z'")
    p.add_argument("--axis-b", default="j")
    p.add_argument("--N", type=int, default=48, help="quadrature nodes per axis (even)")
    p.add_argument("--nmax", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                   help="tolerance override, e.g. --tol plancherel=1e-9")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qdunkl", description="Fractional quaternionic Dunkl transforms")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="evaluate the fractional kernel")
    _common(p)
    p.add_argument("--chi", type=float, default=0.5)
    p.add_argument("--theta", type=float, default=math.pi / 2)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--axis", default="i")

    p = sub.add_parser("transform1d", help="1-D fractional Dunkl transform on the rule nodes")
    _common(p)
    p.add_argument("--chi", type=float, default=0.5)
    p.add_argument("--theta", type=float, default=math.pi / 3)
    p.add_argument("--axis", default="i")
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--func", default="gaussian:0.5", help="gaussian:alpha or hermite:n")
    p.add_argument("--path", choices=["quadrature", "spectral"], default="quadrature")
    p.add_argument("--compare", action="store_true")

    p = sub.add_parser("transform2d", help="2-D transform of a field")
    _common(p)
    p.add_argument("--input", default=None, help="CSV or JSON field on the (chi1, chi2, N) grid")
    p.add_argument("--gen", default=None, help="gaussian(a) | hermite(n,m) | example_eigen(t1,r1,t2,r2)")
    p.add_argument("--output", default=None, help="write the transformed field (.csv or .json)")
    p.add_argument("--path", choices=["quadrature", "spectral"], default="quadrature")
    p.add_argument("--compare", action="store_true", help="report the residual between both paths")

    p = sub.add_parser("hankel", help="fractional Hankel transform of a Gaussian")
    _common(p)
    p.add_argument("--nu", type=float, default=0.5)
    p.add_argument("--theta", type=float, default=math.pi / 3)
    p.add_argument("--alpha", type=float, default=0.7)
    p.add_argument("--axis", default="i")
    p.add_argument("--y", type=float, nargs="+", default=[0.0, 0.5, 1.0, 2.0])

    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("--suite", action="append", default=[], help=f"one of {', '.join(SUITES)} (repeatable)")
    p.add_argument("--alpha", type=float, nargs="+", default=None, help="Gaussian parameters for the gaussian suite")
    p.add_argument("--beta1", type=float, default=math.pi / 4)
    p.add_argument("--beta2", type=float, default=math.pi / 6)

    p = sub.add_parser("moments", help="Heisenberg-type moment products")
    _common(p)
    p.add_argument("--p", type=float, nargs="+", default=[1.0])
    p.add_argument("--input", default=None)
    p.add_argument("--gen", default=None)
    p.add_argument("--batch", type=int, default=0, help="random band-limited inputs; emits CSV rows")
    return ap


def config_from_args(args) -> RunConfig:
    threads = args.threads
    if threads is None:
        env = os.environ.get("QDUNKL_THREADS", "1")
        try:
            threads = int(env)
        except ValueError:
            raise ConfigError(f"QDUNKL_THREADS must be an integer, got {env!r}") from None
    if threads < 1:
        raise ConfigError("--threads must be >= 1")
    if args.N < 2 or args.N % 2 or args.N > 512:
        raise ConfigError("--N must be an even integer in [2, 512]")
    if args.nmax < 0:
        raise ConfigError("--nmax must be >= 0")
    tol = {}
    for item in args.tol:
        name, _, val = item.partition("=")
        if name not in DEFAULT_TOL:
            raise ConfigError(f"unknown tolerance name {name!r}")
        try:
            tol[name] = float(val)
        except ValueError:
            raise ConfigError(f"bad tolerance value in {item!r}") from None
    suites = []
    for s in getattr(args, "suite", []) or []:
        suites.extend(x.strip() for x in s.split(",") if x.strip())
    cfg = RunConfig(args.command, args.chi1, args.chi2, args.theta1, args.theta2, args.axis_a,
                    args.axis_b, args.N, args.nmax, args.seed, threads, suites, tol, args.out)
    if args.command == "verify":
        if args.alpha:
            if min(args.alpha) <= 0:
                raise ConfigError("--alpha values must be positive")
            cfg.alphas = tuple(args.alpha)
        cfg.beta = (args.beta1, args.beta2)
    return cfg


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        cfg = config_from_args(args)
        cfg.spec()  # validates chi and axes early
        if args.command == "verify":
            return cmd_verify(cfg)
        handler = {"kernel": cmd_kernel, "transform1d": cmd_transform1d, "transform2d": cmd_transform2d,
                   "hankel": cmd_hankel, "moments": cmd_moments}[args.command]
        return handler(cfg, args)
    except (ConfigError, QDunklError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
