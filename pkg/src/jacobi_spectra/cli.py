"""Command-line frontend.

Subcommands: ``sample``, ``roots``, ``deviation``, ``compare``, ``fmatrix``,
``verify``. All numeric output is serialized with 17 significant digits and a
locale-independent decimal point; JSON payloads carry ``"schema_version": 1``.
The default seed is the documented constant 0x4A41434F424921, so every
subcommand is reproducible without flags.

Exit codes: 0 success, 2 parameter error, 3 I/O failure, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .betarand import RngStream
from .ensemble import JacobiParams, random_matrix, sample_alphas
from .errors import NumericalFailureError, ParameterDomainError
from .fmatrix import (
    FDims,
    TRANSFORMS,
    f_eigs_direct,
    f_eigs_tridiag,
    sample_gaussian_pair,
    transform_limit_cdf,
)
from .polyroots import JacobiPolyParams, jacobi_roots_scaled
from .spectra import (
    ArcsineDensity,
    Ecdf,
    EdgeDensity,
    RatioDensity,
    ScalingSequence,
    SemicircleDensity,
    density_eval,
    deviation_probability_bound,
    deviation_report,
    ks_distance,
    model_cdf,
    monte_carlo_esd,
    run_trials,
)
from .trieig import eig_tridiag
from .verify import DEFAULT_SEED, run_all

SCHEMA_VERSION = 1


def _fmt(v: float) -> str:
    return f"{float(v):.17g}"


def _resolve_threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("JACOBI_SPECTRA_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ParameterDomainError(
                f"JACOBI_SPECTRA_THREADS must be an integer, got {env!r}"
            ) from exc
    return 1


def _jacobi_params(args) -> JacobiParams:
    """Build ensemble parameters; --a-tilde/--b-tilde override --a/--b."""
    a, b = args.a, args.b
    if args.a_tilde is not None:
        a = args.beta * args.a_tilde / 2.0 - 1.0
    if args.b_tilde is not None:
        b = args.beta * args.b_tilde / 2.0 - 1.0
    return JacobiParams(args.n, a, b, args.beta)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _rows_payload(header: tuple[str, ...], rows, fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
        return "\n".join(lines)
    return json.dumps(
        {"schema_version": SCHEMA_VERSION, "columns": list(header),
         "rows": [list(r) for r in rows]},
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_sample(args) -> int:
    p = _jacobi_params(args)
    threads = _resolve_threads(args)
    rng = RngStream(args.seed, 0)

    def one(t: int) -> np.ndarray:
        return eig_tridiag(random_matrix(sample_alphas(p, rng.substream(t)))).values

    spectra = run_trials(one, args.trials, threads)
    rows = [
        (t, i, float(v))
        for t, vals in enumerate(spectra)
        for i, v in enumerate(vals)
    ]
    _write(_rows_payload(("trial", "index", "value"), rows, args.format), args.out)
    return 0


def cmd_roots(args) -> int:
    p = _jacobi_params(args)
    roots = jacobi_roots_scaled(
        JacobiPolyParams(p.n, p.a_tilde - 1.0, p.b_tilde - 1.0)
    ).values
    rows = [(i, float(v)) for i, v in enumerate(roots)]
    _write(_rows_payload(("index", "value"), rows, args.format), args.out)
    return 0


def _quantiles(vals) -> dict:
    qs = np.quantile(np.asarray(vals), [0.0, 0.25, 0.5, 0.75, 1.0])
    return {k: float(v) for k, v in zip(("min", "q25", "median", "q75", "max"), qs)}


def cmd_deviation(args) -> int:
    p = _jacobi_params(args)
    threads = _resolve_threads(args)
    rng = RngStream(args.seed, 0)
    roots = jacobi_roots_scaled(
        JacobiPolyParams(p.n, p.a_tilde - 1.0, p.b_tilde - 1.0)
    ).values

    reports = run_trials(
        lambda t: deviation_report(p, rng.substream(t), roots=roots),
        args.trials, threads,
    )
    violations = sum(1 for r in reports if r.max_dev > r.chain_bound)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "params": {"n": p.n, "a": p.a, "b": p.b, "beta": p.beta},
        "trials": args.trials,
        "max_dev": _quantiles([r.max_dev for r in reports]),
        "alpha_max_dev": _quantiles([r.alpha_max_dev for r in reports]),
        "chain_bound_violations": violations,
        "probability_bound": {
            "eps": args.eps,
            "value": deviation_probability_bound(p.n, p.a, p.b, args.eps),
        },
        "scaled_dev_median": float(np.median([r.scaled_dev for r in reports])),
    }
    _write(json.dumps(payload), args.out)
    return 0


def _compare_model(args, p: JacobiParams):
    """Model + plug-in parameters + documented automatic scaling."""
    n, at, bt = p.n, p.a_tilde, p.b_tilde
    if args.model == "ratio":
        model = RatioDensity(at / n, bt / n)
        auto = ("plain", 1.0, 0.0)
    elif args.model == "arcsine":
        model = ArcsineDensity()
        auto = ("plain", 1.0, 0.0)
    elif args.model == "semicircle":
        g = at / bt
        model = SemicircleDensity(4.0 * g / (1.0 + g) ** 1.5)
        if at <= 1.0:
            raise ParameterDomainError("semicircle scaling needs a_tilde > 1")
        auto = ("plain", 2.0 * math.sqrt(n / (at - 1.0)),
                -2.0 * (at - bt) / (at + bt - 2.0))
    elif args.model == "edge":
        model = EdgeDensity(bt / n)
        if at <= 1.0:
            raise ParameterDomainError("edge scaling needs a_tilde > 1")
        auto = ("plain", 2.0 * n / (at - 1.0), -2.0)
    elif args.model == "shifted-semicircle":
        model = SemicircleDensity(4.0, 2.0)
        if at <= 1.0 or bt <= 1.0:
            raise ParameterDomainError("shifted-semicircle scaling needs a_tilde, b_tilde > 1")
        w = math.sqrt(n * (bt - 1.0))
        auto = ("plain", 2.0 * w / (at - 1.0),
                -2.0 * (at + 2.0 * w - bt) / (2.0 * n + at + bt - 2.0))
    else:
        raise ParameterDomainError(f"unknown model {args.model!r}")
    if args.scaling == "auto":
        mode, delta, eps = auto
    else:
        parts = args.scaling.split(":")
        if len(parts) != 3 or parts[0] not in ("plain", "doubled"):
            raise ParameterDomainError(
                "--scaling must be 'auto' or '<plain|doubled>:<delta>:<eps>'"
            )
        mode, delta, eps = parts[0], float(parts[1]), float(parts[2])
    return model, mode, ScalingSequence(delta, eps, p.n)


def cmd_compare(args) -> int:
    p = _jacobi_params(args)
    threads = _resolve_threads(args)
    model, mode, scaling = _compare_model(args, p)
    if (args.bins or args.grid) and args.out is None:
        raise ParameterDomainError("--bins/--grid emit CSV companions and need --out")
    ecdf = monte_carlo_esd(p, scaling, args.trials, RngStream(args.seed, 0),
                           mode=mode, threads=threads)
    ks = ks_distance(ecdf, model_cdf(model))
    lo, hi = model.support
    payload = {
        "schema_version": SCHEMA_VERSION,
        "model": args.model,
        "model_params": {
            k: float(v) for k, v in vars(model).items() if isinstance(v, (int, float))
        },
        "params": {"n": p.n, "a": p.a, "b": p.b, "beta": p.beta},
        "scaling": {"mode": mode, "delta": scaling.delta_n, "eps": scaling.epsilon_n},
        "trials": args.trials,
        "n_pooled": ecdf.n,
        "ks": ks,
        "support": [lo, hi],
    }
    _write(json.dumps(payload), args.out)
    if args.bins:
        counts, edges = np.histogram(ecdf.points, bins=args.bins, range=(lo, hi))
        rows = [
            (float(edges[i]), float(edges[i + 1]), int(c)) for i, c in enumerate(counts)
        ]
        lines = ["bin_left,bin_right,count"]
        lines += [f"{_fmt(a)},{_fmt(b)},{c}" for a, b, c in rows]
        _write("\n".join(lines), args.out + ".hist.csv")
    if args.grid:
        # midpoint-spaced grid avoids evaluating at singular support endpoints
        step = (hi - lo) / args.grid
        xs = lo + step * (np.arange(args.grid) + 0.5)
        fs = density_eval(model, xs)
        lines = ["x,f"]
        lines += [f"{_fmt(x)},{_fmt(f)}" for x, f in zip(xs, fs)]
        _write("\n".join(lines), args.out + ".density.csv")
    return 0


def cmd_fmatrix(args) -> int:
    d = FDims(args.n, args.n1, args.n2)
    threads = _resolve_threads(args)
    rng = RngStream(args.seed, 0)
    transform = args.transform
    if transform not in TRANSFORMS:
        raise ParameterDomainError(f"unknown transform {transform!r}")
    tf = TRANSFORMS[transform]
    if args.route == "direct":

        def one(t: int) -> np.ndarray:
            g = sample_gaussian_pair(d, rng.substream(t))
            return np.sort(np.asarray(tf(f_eigs_direct(g, d).values, d)))

    elif args.route == "tridiag":

        def one(t: int) -> np.ndarray:
            vals = f_eigs_tridiag(d, rng.substream(t)).values
            return np.sort(np.asarray(tf(vals, d)))

    else:
        raise ParameterDomainError(f"unknown route {args.route!r}; use direct or tridiag")
    spectra = run_trials(one, args.trials, threads)

    if args.format == "json":
        pool = Ecdf(np.concatenate(spectra))
        payload = {
            "schema_version": SCHEMA_VERSION,
            "dims": {"n": d.n, "n1": d.n1, "n2": d.n2},
            "route": args.route,
            "transform": transform,
            "trials": args.trials,
            "n_pooled": pool.n,
            "ks_vs_limit": ks_distance(pool, transform_limit_cdf(transform, d)),
        }
        _write(json.dumps(payload), args.out)
    else:
        rows = [
            (t, i, float(v))
            for t, vals in enumerate(spectra)
            for i, v in enumerate(vals)
        ]
        _write(_rows_payload(("trial", "index", "value"), rows, "csv"), args.out)
    return 0


def cmd_verify(args) -> int:
    threads = _resolve_threads(args)
    report = run_all(seed=args.seed, threads=threads)
    _write(json.dumps(report, indent=2), args.out)
    return 0 if report["all_pass"] else 1


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(sp, *, trials=True, ensemble=False, dims=False):
    sp.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                    help="64-bit seed (default 0x4A41434F424921)")
    sp.add_argument("--threads", type=int, default=None,
                    help="worker cap; env JACOBI_SPECTRA_THREADS is the fallback")
    sp.add_argument("--out", type=str, default=None, help="output path (default stdout)")
    if trials:
        sp.add_argument("--trials", type=int, default=1)
    if ensemble:
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--a", type=float, default=0.0)
        sp.add_argument("--b", type=float, default=0.0)
        sp.add_argument("--beta", type=float, default=2.0)
        sp.add_argument("--a-tilde", dest="a_tilde", type=float, default=None,
                        help="set a via a = beta*a_tilde/2 - 1")
        sp.add_argument("--b-tilde", dest="b_tilde", type=float, default=None,
                        help="set b via b = beta*b_tilde/2 - 1")
    if dims:
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--n1", type=int, required=True)
        sp.add_argument("--n2", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="jacobi-spectra",
        description="beta-Jacobi ensemble sampling, root approximations and "
                    "F-matrix experiments",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="sample ensemble eigenvalues (CSV trial,index,value)")
    _add_common(sp, ensemble=True)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(fn=cmd_sample)

    sp = sub.add_parser("roots", help="deterministic root approximations (CSV index,value)")
    _add_common(sp, trials=False, ensemble=True)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(fn=cmd_roots)

    sp = sub.add_parser("deviation", help="deviation statistics and bounds (JSON)")
    _add_common(sp, ensemble=True)
    sp.add_argument("--eps", type=float, default=1.0,
                    help="epsilon in (0,1] for the probability bound")
    sp.set_defaults(fn=cmd_deviation)

    sp = sub.add_parser("compare", help="pooled scaled ESD vs a limit density (JSON)")
    _add_common(sp, ensemble=True)
    sp.add_argument("--model", required=True,
                    choices=("ratio", "arcsine", "semicircle", "edge", "shifted-semicircle"))
    sp.add_argument("--scaling", type=str, default="auto",
                    help="'auto' or '<plain|doubled>:<delta>:<eps>'")
    sp.add_argument("--grid", type=int, default=None,
                    help="emit OUT.density.csv with this many midpoint grid rows")
    sp.add_argument("--bins", type=int, default=None,
                    help="emit OUT.hist.csv with this many bins")
    sp.set_defaults(fn=cmd_compare)

    sp = sub.add_parser("fmatrix", help="F-matrix spectra (CSV) or summary (JSON)")
    _add_common(sp, dims=True)
    sp.add_argument("--route", choices=("tridiag", "direct"), default="tridiag")
    sp.add_argument("--transform", choices=("none", "thm42", "thm43", "thm44"),
                    default="none")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(fn=cmd_fmatrix)

    sp = sub.add_parser("verify", help="run the full acceptance suite (JSON report)")
    _add_common(sp, trials=False)
    sp.set_defaults(fn=cmd_verify)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ParameterDomainError, IndexError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
