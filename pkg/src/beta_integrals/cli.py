"""Batch verification driver.

Usage::

    beta-integrals list-targets
    beta-integrals run CONFIG [--seed N] [--count N] [--tol ID=VALUE] [--output PATH]
                              [--workers N] [-q | -v]

Config grammar (INI, parsed with :mod:`configparser`)::

    [run]
    targets = EQ_0_2, W1          ; comma-separated ids, "all", or empty
    count = 5                     ; random points per target (default 3)
    seed = 42                     ; base seed (default 0)
    output = report.csv           ; report path (default: standard output)
    workers = 1                   ; worker processes (default 1)

    [tolerances]                  ; optional per-id overrides
    EQ_0_2 = 1e-8

    [points.EQ_0_2]               ; optional explicit points, used instead of sampling
    symmetric = a1=0.5, a2=0.5, a3=0.5, a4=0.5

Report: a ``# seed=...`` line, a CSV header, then one record per
verification ``id,params,lhs,rhs,rel_error,tol,passed,seconds``. ``params``
joins ``name=value`` pairs with ``;``. Numbers carry 17 significant digits.
Rows are sorted by target id, then point order, so identical configs give
identical reports apart from the ``seconds`` column. For the image-pair,
Wilson and biorthogonality targets ``lhs`` holds a residual and ``rhs`` is 0.
The exit status is 1 when any record fails, 2 on configuration errors.
"""

import argparse
import configparser
import csv
import io
import logging
import math
import sys
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import identity_catalog as catalog
from . import index_transform as it
from . import wilson
from .errors import BetaIntegralsError, ConfigError, DomainError

log = logging.getLogger("beta_integrals")

DEFAULT_COUNT = 3
HEADER = ("id", "params", "lhs", "rhs", "rel_error", "tol", "passed", "seconds")


@dataclass(frozen=True)
class Target:
    """A verifiable item: an identity, an image pair, a Wilson system or the Jacobi check."""

    id: str
    anchor: str
    param_names: tuple
    tolerance: float
    sampler: Callable
    evaluate: Callable
    domain: str = ""


@dataclass(frozen=True)
class Record:
    """One row of the report."""

    id: str
    params: tuple
    lhs: float
    rhs: float
    rel_error: float
    tol: float
    passed: bool
    seconds: float
    reason: str = ""


# targets ---------------------------------------------------------------------------

def _identity_target(spec):
    def sample(rng):
        return catalog.sample_params(spec.id, rng)

    def evaluate(params, tol):
        r = catalog.verify(spec.id, params, tol)
        return r.lhs_value, r.rhs_value, r.rel_error, r.passed, r.reason

    return Target(spec.id, spec.anchor, spec.param_names, spec.tolerance, sample, evaluate,
                  catalog.DOMAIN_NOTES.get(spec.id, ""))


def _image_target(pair_id):
    names = ("a", "b") + it.IMAGE_PARAMS[pair_id]

    def sample(rng):
        for _ in range(1000):
            v = {}
            for n in names:
                v[n] = float(rng.choice(catalog.AUX_ARGUMENTS)) if n in ("y", "z") else float(rng.uniform(0.3, 1.2))
            try:
                it.image_pair(pair_id, _extra(v), it.JParams(v["a"], v["b"]))
            except DomainError:
                continue
            return v
        raise DomainError(f"no admissible sample for {pair_id}")

    def _extra(v):
        return {k: v[k] for k in it.IMAGE_PARAMS[pair_id]}

    def evaluate(params, tol):
        res = it.image_residual(pair_id, _extra(params), it.JParams(params["a"], params["b"]))
        return res, 0.0, res, res <= tol, ""

    anchor = f"{pair_id}: index transform image: {it.IMAGE_DESCRIPTIONS[pair_id]}"
    return Target(pair_id, anchor, names, 1e-6, sample, evaluate)


def _classical_sample(rng):
    return {n: float(rng.uniform(0.3, 1.2)) for n in "abcd"}


def _classical_eval(params, tol):
    wp = wilson.WilsonParams(*(params[n] for n in "abcd"))
    gram = wilson.classical_gram(wp, 3)
    off = wilson.offdiagonal_residual(gram)
    diag = max(abs(gram[n, n] / wilson.wilson_norm(wp, n) - 1) for n in range(4))
    res = max(off, diag)
    return res, 0.0, res, res <= tol, ""


def _w1_sample(rng):
    v = {n: float(rng.uniform(0.3, 1.2)) for n in ("p", "u", "v")}
    v["q"] = v["p"] + v["u"] + v["v"] + float(rng.uniform(5.0, 10.0))
    return v


def _dougall_sample(rng):
    v = {f"a{j}": float(rng.uniform(1.5, 2.5)) for j in range(1, 5)}
    v["alpha"] = float(rng.uniform(0.1, 0.4))
    return v


def _askey_sample(rng):
    return {f"a{j}": float(rng.uniform(1.5, 2.5)) for j in range(1, 5)}


def _finite_eval(kind):
    def evaluate(params, tol):
        fs = wilson.finite_system(kind, params)
        alg = wilson.finite_gram(fs, wilson.ALGEBRAIC)
        res = wilson.offdiagonal_residual(alg)
        if kind in ("W1", "W2_DOUGALL"):
            num = wilson.finite_gram(fs, wilson.NUMERIC)
            res = max(res, float(np.max(np.abs(num - alg)) / np.max(np.abs(alg))))
        else:
            companion = dict(params, alpha=0.25)
            ref = wilson.finite_gram(wilson.finite_system("W2_DOUGALL", companion), wilson.ALGEBRAIC)
            res = max(res, wilson.gram_proportionality(alg, ref)[1])
        return res, 0.0, res, res <= tol, ""

    return evaluate


def _jacobi_sample(rng):
    return {"mu": float(rng.uniform(0.3, 2.0)), "nu": float(rng.uniform(0.3, 2.0))}


def _jacobi_eval(params, tol):
    mu, nu = params["mu"], params["nu"]
    residual, norms = wilson.jacobi_biorthogonal(mu, nu, 6)
    norm_err = max(abs(norms[n] / wilson.jacobi_norm(mu, nu, n) - 1) for n in range(6))
    res = max(residual, norm_err)
    return res, 0.0, res, res <= tol, ""


def build_targets():
    """All targets keyed by id."""
    targets = {i: _identity_target(catalog.REGISTRY[i]) for i in catalog.list_identities()}
    for pair_id in it.IMAGE_IDS:
        targets[pair_id] = _image_target(pair_id)
    targets["CLASSICAL_W"] = Target(
        "CLASSICAL_W", "CLASSICAL_W: Wilson polynomial orthogonality, n <= 3, Gram matrix by quadrature",
        tuple("abcd"), 1e-8, _classical_sample, _classical_eval)
    targets["W1"] = Target(
        "W1", "W1: finite Wilson system of the three-over-one weight (4n < q-p-u-v-1)",
        ("p", "u", "v", "q"), 1e-6, _w1_sample, _finite_eval("W1"))
    targets["W2"] = Target(
        "W2", "W2: finite Wilson system of the Dougall sum (4n < a1+a2+a3+a4-3)",
        ("a1", "a2", "a3", "a4", "alpha"), 1e-7, _dougall_sample, _finite_eval("W2_DOUGALL"))
    targets["W3"] = Target(
        "W3", "W3: finite Wilson system of the Askey weight, proportional to W2",
        ("a1", "a2", "a3", "a4"), 1e-9, _askey_sample, _finite_eval("W3_ASKEY"))
    targets["JACOBI_BIORTHOGONAL"] = Target(
        "JACOBI_BIORTHOGONAL", "JACOBI_BIORTHOGONAL: Jacobi-type biorthogonality of R_n, T_n and their norms, N = 6",
        ("mu", "nu"), 1e-10, _jacobi_sample, _jacobi_eval)
    return targets


TARGETS = build_targets()


def list_targets():
    """Sorted listing: one line per target with its anchor, parameters and tolerance."""
    lines = []
    for tid in sorted(TARGETS):
        t = TARGETS[tid]
        lines.append(f"{t.anchor}")
        domain = f"; domain: {t.domain}" if t.domain else ""
        lines.append(f"    params: {', '.join(t.param_names)}{domain}; default tolerance {t.tolerance:g}")
    return "\n".join(lines) + "\n"


# configuration ------------------------------------------------------------------------

@dataclass
class RunConfig:
    """Parsed run configuration."""

    targets: list
    count: int = DEFAULT_COUNT
    seed: int = 0
    output: str = ""
    workers: int = 1
    tolerances: dict = None
    points: dict = None


def _parse_point(text, where):
    point = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ConfigError(f"{where}: expected name=value, got {item!r}")
        name, value = (x.strip() for x in item.split("=", 1))
        try:
            point[name] = float(value)
        except ValueError:
            raise ConfigError(f"{where}: {name} has non-numeric value {value!r}") from None
    return point


def parse_config(text, source="<config>"):
    """Parse the INI grammar described in the module docstring.

    Raises
    ------
    ConfigError
        With the offending line, section or key.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from None
    if not parser.has_section("run"):
        raise ConfigError(f"{source}: missing [run] section")
    run = parser["run"]
    known = {"targets", "count", "seed", "output", "workers"}
    unknown = [k for k in run if k not in known]
    if unknown:
        raise ConfigError(f"{source}: [run] has unknown keys {', '.join(unknown)}")
    raw = run.get("targets", "").strip()
    if raw.lower() == "all":
        targets = sorted(TARGETS)
    else:
        targets = [x.strip() for x in raw.split(",") if x.strip()]
    for tid in targets:
        if tid not in TARGETS:
            raise ConfigError(f"{source}: [run] targets: unknown id {tid!r}")

    def integer(key, default):
        try:
            return run.getint(key, default)
        except ValueError:
            raise ConfigError(f"{source}: [run] {key} must be an integer, got {run.get(key)!r}") from None

    cfg = RunConfig(targets, integer("count", DEFAULT_COUNT), integer("seed", 0), run.get("output", ""),
                    integer("workers", 1), {}, {})
    if cfg.count < 0 or cfg.workers < 1:
        raise ConfigError(f"{source}: count must be >= 0 and workers >= 1")
    if parser.has_section("tolerances"):
        for key, value in parser["tolerances"].items():
            if key not in TARGETS:
                raise ConfigError(f"{source}: [tolerances] unknown id {key!r}")
            try:
                cfg.tolerances[key] = float(value)
            except ValueError:
                raise ConfigError(f"{source}: [tolerances] {key} must be a number, got {value!r}") from None
    for section in parser.sections():
        if section.startswith("points."):
            tid = section[len("points."):]
            if tid not in TARGETS:
                raise ConfigError(f"{source}: [{section}] unknown id {tid!r}")
            pts = []
            for label, value in parser[section].items():
                point = _parse_point(value, f"{source}: [{section}] {label}")
                missing = [n for n in TARGETS[tid].param_names if n not in point]
                if missing:
                    raise ConfigError(f"{source}: [{section}] {label} misses {', '.join(missing)}")
                pts.append(point)
            cfg.points[tid] = pts
        elif section not in ("run", "tolerances"):
            raise ConfigError(f"{source}: unknown section [{section}]")
    return cfg


# running ---------------------------------------------------------------------------------

def target_seed(seed, tid):
    """Per-target seed: independent of which other targets run."""
    return (int(seed) + zlib.crc32(tid.encode())) % 2 ** 32


def plan(cfg):
    """``(target id, params, tolerance)`` jobs in report order."""
    jobs = []
    for tid in sorted(set(cfg.targets)):
        target = TARGETS[tid]
        tol = cfg.tolerances.get(tid, target.tolerance)
        if tid in cfg.points:
            points = cfg.points[tid]
        else:
            rng = np.random.default_rng(target_seed(cfg.seed, tid))
            points = [target.sampler(rng) for _ in range(cfg.count)]
        jobs.extend((tid, {n: p[n] for n in target.param_names}, tol) for p in points)
    return jobs


def run_job(job):
    """Evaluate one job; numerical failures become failed records."""
    tid, params, tol = job
    start = time.perf_counter()
    try:
        lhs, rhs, rel, passed, reason = TARGETS[tid].evaluate(params, tol)
    except (BetaIntegralsError, ArithmeticError, ValueError) as exc:
        lhs = rhs = rel = math.nan
        passed, reason = False, f"{type(exc).__name__}: {exc}"
    passed = bool(passed) and math.isfinite(lhs) and math.isfinite(rhs)
    return Record(tid, tuple(params.items()), float(lhs), float(rhs), float(rel), tol, passed,
                  time.perf_counter() - start, reason)


def _num(x):
    return f"{x:.17g}"


def format_report(records, seed):
    """Report text; see the module docstring for the layout."""
    buf = io.StringIO()
    buf.write(f"# seed={seed}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for r in records:
        params = ";".join(f"{k}={_num(v)}" for k, v in r.params)
        writer.writerow((r.id, params, _num(r.lhs), _num(r.rhs), _num(r.rel_error), _num(r.tol),
                         "true" if r.passed else "false", f"{r.seconds:.3f}"))
    return buf.getvalue()


def run(cfg):
    """Execute every job of ``cfg``.

    Returns
    -------
    (exit_status, records, report_text)
    """
    jobs = plan(cfg)
    if not jobs:
        log.warning("no targets selected; nothing to verify")
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(run_job, jobs))
    else:
        records = []
        for job in jobs:
            records.append(run_job(job))
            r = records[-1]
            log.info("%s %s rel=%.3g %.2fs %s", r.id, "pass" if r.passed else "FAIL", r.rel_error, r.seconds, r.reason)
    text = format_report(records, cfg.seed)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    failed = [r for r in records if not r.passed]
    for r in failed:
        log.error("FAILED %s %s: %s", r.id, dict(r.params), r.reason or f"rel_error {r.rel_error:.3g}")
    log.warning("%d records, %d failed", len(records), len(failed))
    return (1 if failed else 0), records, text


def _build_parser():
    parser = argparse.ArgumentParser(prog="beta-integrals", description="Numerical verification of beta integrals.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list-targets", help="list every verifiable target")
    r = sub.add_parser("run", help="run the verifications of a config file")
    r.add_argument("config", help="INI config path")
    r.add_argument("--seed", type=int, help="override [run] seed")
    r.add_argument("--count", type=int, help="override [run] count")
    r.add_argument("--output", help="override [run] output path")
    r.add_argument("--workers", type=int, help="override [run] workers")
    r.add_argument("--tol", action="append", default=[], metavar="ID=VALUE", help="tolerance override (repeatable)")
    level = r.add_mutually_exclusive_group()
    level.add_argument("-q", "--quiet", action="store_true", help="errors only")
    level.add_argument("-v", "--verbose", action="store_true", help="one line per record")
    return parser


def main(argv=None):
    """Console entry point; returns the process exit status."""
    args = _build_parser().parse_args(argv)
    if args.command == "list-targets":
        sys.stdout.write(list_targets())
        return 0
    level = logging.ERROR if args.quiet else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = parse_config(fh.read(), args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        if args.count is not None:
            cfg.count = args.count
        if args.output is not None:
            cfg.output = args.output
        if args.workers is not None:
            cfg.workers = args.workers
        for item in args.tol:
            if "=" not in item:
                raise ConfigError(f"--tol expects ID=VALUE, got {item!r}")
            tid, value = item.split("=", 1)
            if tid not in TARGETS:
                raise ConfigError(f"--tol: unknown id {tid!r}")
            cfg.tolerances[tid] = float(value)
    except (OSError, ConfigError, ValueError) as exc:
        log.error("%s", exc)
        return 2
    status, _, text = run(cfg)
    if not cfg.output:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
