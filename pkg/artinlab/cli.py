#!/usr/bin/env python3
"""
Main CLI module for artinlab.

Data goes to stdout (or --output, written atomically), diagnostics to
stderr. Exit codes: 0 success, 2 invalid arguments, 3 exhausted search
bound under --strict-exhaustion.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import click
from colorama import Fore, Style, just_fix_windows_console
from dotenv import load_dotenv

from . import __version__
from .config import Settings, load_settings
from .constants import (
    DensityValue,
    artin_A,
    artin_A0,
    artin_A1,
    delta_star_table,
    delta_table,
    hooley_sum_truncated,
    mean_pg_predicted,
    mean_pg_star_predicted,
    sigma_m,
    tilde_A0,
    tilde_A1,
    twin_prime_C2,
    varrho,
    varrho0,
)
from .envelope import Metadata, OutputEnvelope
from .errors import DomainError, ExhaustionError, InvalidArgumentError
from .experiments import (
    ExperimentRecord,
    exp_exceptional_count,
    exp_max_pg,
    exp_mean_pg,
    exp_mean_pg_star,
    exp_pg_distribution,
    exp_tamed_mean,
    exp_tamed_mean_star,
    exp_uniformity_sweep,
    exp_vaughan_convergence,
)
from .numth import decompose, least_primitive_root
from .roots import (
    ResultKind,
    SearchMode,
    batch_search,
    count_Nd,
    count_Pi,
    count_Pi0,
    least_almost_artin_prime,
    least_artin_prime,
)
from .sieves import (
    count_S,
    gallagher_problem,
    large_sieve_J,
    large_sieve_bound,
    larger_sieve_bound,
    larger_sieve_y,
    vaughan_problem,
)
from .utils import flatten_row, rational_columns, render_csv, write_atomic

logger = logging.getLogger(__name__)

DELTA_COLUMNS = ["p", "delta_p_num", "delta_p_den", "partial_sum_num", "partial_sum_den", "p_delta_p_float"]
PG_RANGE_COLUMNS = ["g", "kind", "p", "search_bound"]
DIST_COLUMNS = ["p", "count", "empirical", "delta_p", "abs_error"]
SWEEP_COLUMNS = ["g", "x", "pi_xg", "A_g", "pi_x", "ratio", "error_scale"]

_LEVEL_COLORS = {
    logging.DEBUG: Style.DIM,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class _ClickLogHandler(logging.Handler):
    """Colored log lines on stderr, resolved at emit time."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            color = _LEVEL_COLORS.get(record.levelno, "")
            reset = Style.RESET_ALL if color else ""
            click.echo(f"{color}{self.format(record)}{reset}", err=True)
        except Exception:
            self.handleError(record)


class _WarningCollector(logging.Handler):
    def __init__(self, sink: list[str]):
        super().__init__(level=logging.WARNING)
        self.sink = sink

    def emit(self, record: logging.LogRecord) -> None:
        self.sink.append(record.getMessage())


def _configure_logging(level: int, sink: list[str]) -> None:
    package_logger = logging.getLogger("artinlab")
    for handler in list(package_logger.handlers):
        if getattr(handler, "_artinlab_cli", False):
            package_logger.removeHandler(handler)

    console = _ClickLogHandler(level=level)
    console.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    collector = _WarningCollector(sink)
    for handler in (console, collector):
        handler._artinlab_cli = True
        package_logger.addHandler(handler)
    package_logger.setLevel(min(level, logging.WARNING))


@dataclass
class CLIState:
    settings: Settings
    format: str
    output: Optional[str]
    threads: int
    seed: int
    strict_exhaustion: bool
    started: float = field(default_factory=time.perf_counter)
    warnings: list[str] = field(default_factory=list)


class _StrictExhaustion(click.ClickException):
    exit_code = 3


class ArtinlabGroup(click.Group):
    """Maps library errors onto CLI exit codes."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except (InvalidArgumentError, DomainError) as e:
            raise click.UsageError(str(e)) from e
        except ExhaustionError as e:
            raise _StrictExhaustion(str(e)) from e


def _emit(
    state: CLIState,
    command: str,
    params: dict[str, Any],
    rows: list[dict[str, Any]],
    columns: Optional[list[str]] = None,
    table_limit: Optional[int] = None,
) -> None:
    flat = [flatten_row(r) for r in rows]
    if state.format == "csv":
        text = render_csv(flat, columns)
    else:
        envelope = OutputEnvelope(
            command=command,
            params=flatten_row(params),
            results=flat,
            metadata=Metadata(
                version=__version__,
                prime_table_limit=table_limit,
                elapsed_ms=int((time.perf_counter() - state.started) * 1000),
                warnings=list(state.warnings),
            ),
        )
        text = envelope.to_json() + "\n"

    if state.output:
        target = write_atomic(state.output, text)
        click.echo(f"✅ Wrote {len(flat)} result rows to {target}", err=True)
    else:
        click.echo(text, nl=False)


def _check_exhaustion(state: CLIState, count: int, search_bound: int) -> None:
    if count and state.strict_exhaustion:
        raise ExhaustionError(count, search_bound)


def _density_row(name: str, value: DensityValue, **params: Any) -> dict[str, Any]:
    row: dict[str, Any] = {"constant": name, **params, "approx": value.approx, "error_bound": value.error_bound}
    if value.exact is not None:
        row.update(rational_columns("exact", value.exact))
    else:
        row.update({"exact_num": None, "exact_den": None})
    row["heuristic"] = value.heuristic
    return row


def _record_row(record: ExperimentRecord) -> dict[str, Any]:
    row: dict[str, Any] = {"experiment_id": record.experiment_id, **record.params}
    row["empirical"] = float(record.empirical)
    if isinstance(record.empirical, Fraction):
        row.update(rational_columns("empirical", record.empirical))
    row.update(
        {
            "predicted": record.predicted,
            "abs_error": record.abs_error,
            "rel_error": record.rel_error,
        }
    )
    for key, value in record.extra.items():
        row[key] = float(value) if isinstance(value, Fraction) else value
    return row


def _override_state(ctx: click.Context, param: click.Parameter, value: Any) -> Any:
    state = ctx.find_object(CLIState)
    if value is not None and state is not None:
        setattr(state, param.name, value)
    return value


def output_options(f):
    """Accept --format and --output after the subcommand as well."""
    f = click.option(
        "--output",
        "-o",
        "output",
        type=click.Path(dir_okay=False),
        expose_value=False,
        callback=_override_state,
        help="Write results to PATH (atomic rename)",
    )(f)
    f = click.option(
        "--format",
        "format",
        type=click.Choice(["json", "csv"]),
        expose_value=False,
        callback=_override_state,
        help="Output format",
    )(f)
    return f


def _require(value: Any, flag: str, constant: str) -> Any:
    if value is None:
        raise click.UsageError(f"{flag} is required for --which {constant}")
    return value


@click.group(cls=ArtinlabGroup)
@click.version_option(version=__version__, prog_name="artinlab")
@click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default="json", help="Output format")
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write results to PATH (atomic rename)")
@click.option("--threads", type=click.IntRange(min=1), help="Worker processes for batch searches")
@click.option("--seed", type=int, default=0, help="Seed for randomized spot checks; ignored by deterministic commands")
@click.option("--strict-exhaustion", is_flag=True, help="Fail with exit 3 when a search exhausts its bound")
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging")
@click.pass_context
def cli(ctx, output_format, output, threads, seed, strict_exhaustion, verbose):
    """Artin primitive roots: densities, least Artin primes, sieves and experiments."""
    just_fix_windows_console()
    load_dotenv(override=True)

    sink: list[str] = []
    # settings load before handlers exist, so route their warnings too
    _configure_logging(logging.WARNING, sink)
    settings = load_settings()
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level, logging.WARNING)
    _configure_logging(level, sink)

    ctx.obj = CLIState(
        settings=settings,
        format=output_format,
        output=output,
        threads=threads or settings.threads,
        seed=seed,
        strict_exhaustion=strict_exhaustion or settings.strict_exhaustion,
        warnings=sink,
    )


@cli.command()
@click.option(
    "--which",
    type=click.Choice(["A", "A0", "A1", "tilde-A0", "tilde-A1", "C2", "sigma", "varrho", "varrho0", "hooley"]),
    default="A",
    show_default=True,
    help="Constant to evaluate",
)
@click.option("--g", type=int, help="Integer g (A, A1, tilde-A1, hooley; A0 reads h from g)")
@click.option("--h", type=int, help="Exponent h for A0 when --g is not given")
@click.option("--m", type=int, help="Index m for sigma")
@click.option("--x", type=float, help="Cutoff x for tilde-A0 and tilde-A1")
@click.option("--prime-limit", type=int, help="Euler product cutoff")
@click.option("--d-limit", type=int, help="Truncation for the hooley sum")
@click.option("--m-max", type=int, help="Truncation for varrho")
@output_options
@click.pass_obj
def constant(state, which, g, h, m, x, prime_limit, d_limit, m_max):
    """Evaluate a density constant with its rigorous error bound."""
    s = state.settings
    prime_limit = prime_limit or s.prime_limit
    params: dict[str, Any] = {"which": which}

    if which == "A":
        g = _require(g, "--g", which)
        value = artin_A(g, prime_limit)
        params.update(g=g, prime_limit=prime_limit)
    elif which == "A0":
        if g is not None:
            h = decompose(g).h
        h = _require(h, "--g or --h", which)
        value = artin_A0(h, prime_limit)
        params.update(h=h, prime_limit=prime_limit)
    elif which == "A1":
        g = _require(g, "--g", which)
        value = artin_A1(decompose(g))
        params.update(g=g)
    elif which == "tilde-A0":
        x = _require(x, "--x", which)
        value = tilde_A0(x)
        params.update(x=x)
    elif which == "tilde-A1":
        g, x = _require(g, "--g", which), _require(x, "--x", which)
        value = tilde_A1(decompose(g), x)
        params.update(g=g, x=x)
    elif which == "C2":
        value = twin_prime_C2(prime_limit)
        params.update(prime_limit=prime_limit)
    elif which == "sigma":
        m = _require(m, "--m", which)
        value = sigma_m(m, prime_limit)
        params.update(m=m, prime_limit=prime_limit)
    elif which in ("varrho", "varrho0"):
        m_max = m_max or s.m_max
        value = (varrho if which == "varrho" else varrho0)(m_max, prime_limit)
        params.update(m_max=m_max, prime_limit=prime_limit)
    else:
        g = _require(g, "--g", which)
        d_limit = d_limit or s.d_limit
        value = hooley_sum_truncated(decompose(g), d_limit)
        params.update(g=g, d_limit=d_limit)

    _emit(state, "constant", params, [_density_row(which, value, **params)], table_limit=prime_limit)


@cli.command()
@click.option("--g", type=int, required=True, help="Integer g")
@click.option("--almost", is_flag=True, help="Search for p*_g (almost primitive) instead of p_g")
@click.option("--search-bound", type=int, help="Largest prime to try")
@output_options
@click.pass_obj
def pg(state, g, almost, search_bound):
    """Least prime for which g is a primitive (or almost primitive) root."""
    search_bound = search_bound or state.settings.search_bound
    search = least_almost_artin_prime if almost else least_artin_prime
    result = search(g, search_bound)
    row = {"g": g, "kind": result.kind, "p": result.prime, "search_bound": search_bound}
    _emit(state, "pg", {"g": g, "almost": almost, "search_bound": search_bound}, [row], PG_RANGE_COLUMNS, search_bound)
    _check_exhaustion(state, int(result.kind is ResultKind.BOUND_EXHAUSTED), search_bound)


@cli.command("pg-range")
@click.option("--g-min", type=int, required=True)
@click.option("--g-max", type=int, required=True)
@click.option("--almost", is_flag=True, help="Search for p*_g instead of p_g")
@click.option("--search-bound", type=int, help="Largest prime to try")
@output_options
@click.pass_obj
def pg_range(state, g_min, g_max, almost, search_bound):
    """Batch least (almost) Artin primes for every g in [G_MIN, G_MAX]."""
    search_bound = search_bound or state.settings.search_bound
    mode = SearchMode.ALMOST if almost else SearchMode.PRIMITIVE
    result = batch_search(
        g_min, g_max, search_bound, mode=mode, workers=state.threads, block_size=state.settings.block_size
    )
    rows = [
        {"g": g, "kind": kind, "p": int(p) if found else None, "search_bound": search_bound}
        for g, kind, p, found in zip(result.g.tolist(), result.kind_labels(), result.prime.tolist(), result.found.tolist())
    ]
    params = {"g_min": g_min, "g_max": g_max, "almost": almost, "search_bound": search_bound}
    _emit(state, "pg-range", params, rows, PG_RANGE_COLUMNS, search_bound)
    _check_exhaustion(state, int(result.exhausted.sum()), search_bound)


@cli.command("count-pi")
@click.option("--x", type=int, required=True)
@click.option("--g", type=int, required=True)
@click.option("--variant", type=click.Choice(["pi", "pi0", "nd"]), default="pi", show_default=True)
@click.option("--d", type=int, help="Squarefree d for the nd variant")
@output_options
@click.pass_obj
def count_pi(state, x, g, variant, d):
    """Count primes p <= x where g is a primitive root (or the sieve variants)."""
    if variant == "pi":
        count = count_Pi(x, g)
    elif variant == "pi0":
        count = count_Pi0(x, g)
    else:
        if d is None:
            raise click.UsageError("--d is required for --variant nd")
        count = count_Nd(x, g, d)
    params = {"x": x, "g": g, "variant": variant, "d": d}
    _emit(state, "count-pi", params, [{**params, "count": count}], table_limit=x)


@cli.command()
@click.option("--max-prime", type=int, help="Last prime of the table")
@click.option("--star", is_flag=True, help="Tabulate delta*_p instead of delta_p")
@output_options
@click.pass_obj
def delta(state, max_prime, star):
    """Exact densities delta_p (or delta*_p) with telescoping partial sums."""
    max_prime = max_prime or state.settings.delta_max_prime
    table = (delta_star_table if star else delta_table)(max_prime)
    rows = []
    for row in table.rows:
        rows.append(
            {
                "p": row.p,
                "delta_p": row.delta,
                "partial_sum": row.partial_sum,
                "p_delta_p_float": float(row.p * row.delta),
            }
        )
    _emit(state, "delta", {"max_prime": max_prime, "star": star}, rows, DELTA_COLUMNS, max_prime)


@cli.command("mean-predicted")
@click.option("--max-prime", type=int, help="Truncation of the sum over p")
@click.option("--star", is_flag=True, help="Predicted mean of p*_g instead of p_g")
@output_options
@click.pass_obj
def mean_predicted(state, max_prime, star):
    """The heuristic mean sum_p p delta_p with its tail estimate."""
    max_prime = max_prime or state.settings.delta_max_prime
    value = (mean_pg_star_predicted if star else mean_pg_predicted)(max_prime)
    params = {"max_prime": max_prime, "star": star}
    name = "mean-pg-star" if star else "mean-pg"
    _emit(state, "mean-predicted", params, [_density_row(name, value, max_prime=max_prime)], table_limit=max_prime)


@cli.command()
@click.option("--p", type=int, required=True, help="Prime p")
@output_options
@click.pass_obj
def gp(state, p):
    """Least positive primitive root modulo p."""
    _emit(state, "gp", {"p": p}, [{"p": p, "g_p": least_primitive_root(p)}])


@cli.command("count-s")
@click.option("--x", type=int, required=True)
@click.option("--g", type=int, required=True)
@output_options
@click.pass_obj
def count_s(state, x, g):
    """Count the prime set S(x; g) against its predicted main term."""
    sc = count_S(x, g)
    row = {
        "x": sc.x,
        "g": sc.g,
        "count": sc.count,
        "tilde_A0": sc.tilde_a0,
        "tilde_A1": sc.tilde_a1,
        "li": sc.li,
        "predicted": sc.predicted,
    }
    _emit(state, "count-s", {"x": x, "g": g}, [row], table_limit=x)


@cli.group("sieve-bound")
def sieve_bound():
    """Numerical large and larger sieve bounds."""
    pass


@sieve_bound.command("large")
@click.option("--x", type=int, required=True, help="Sieve the integers |g| <= x")
@click.option("--Y", "Y", type=float, help="Sieve primes up to Y (default log^2 N)")
@output_options
@click.pass_obj
def sieve_bound_large(state, x, Y):
    """Large sieve bound for #{|g| <= x : p_g > Y}."""
    if Y is None:
        Y = math.log(2 * x + 1) ** 2
    problem = vaughan_problem(x, Y)
    row = {
        "x": x,
        "Y": Y,
        "M": problem.M,
        "N": problem.N,
        "Q": problem.Q,
        "sieved_primes": len(problem.nu),
        "J": large_sieve_J(problem),
        "bound": large_sieve_bound(problem),
    }
    _emit(state, "sieve-bound large", {"x": x, "Y": Y}, [row])


@sieve_bound.command("larger")
@click.option("--x", type=int, required=True, help="Sieve the integers |g| <= x")
@click.option("--theta", type=float, help="Exponent theta in (0, 1)")
@output_options
@click.pass_obj
def sieve_bound_larger(state, x, theta):
    """Larger sieve bound for #{|g| <= x : p*_g > y}."""
    theta = theta or state.settings.theta
    y = larger_sieve_y(x, theta)
    problem = gallagher_problem(x, theta)
    outcome = larger_sieve_bound(problem)
    if not outcome.available:
        logger.warning(f"Larger sieve unavailable at x={x}, theta={theta}: denominator {outcome.denominator:.6g}")
    row = {
        "x": x,
        "theta": theta,
        "y": y,
        "N": problem.N,
        "D_size": len(problem.D),
        "available": outcome.available,
        "numerator": outcome.numerator,
        "denominator": outcome.denominator,
        "bound": outcome.bound,
    }
    _emit(state, "sieve-bound larger", {"x": x, "theta": theta}, [row], table_limit=math.ceil(y))


@cli.group()
def exp():
    """Desk-scale experiments comparing measurements with predictions."""
    pass


@exp.command("mean")
@click.option("--x", type=int, required=True)
@click.option("--almost", is_flag=True, help="Average p*_g over 0 < |g| <= x")
@click.option("--search-bound", type=int)
@click.option("--max-prime", type=int, help="Truncation of the predicted mean")
@click.option("--spot-check", type=click.FloatRange(0, 1), default=0.0, help="Fraction of g re-checked on the scalar path")
@output_options
@click.pass_obj
def exp_mean(state, x, almost, search_bound, max_prime, spot_check):
    """Empirical mean of p_g (or p*_g) against the heuristic prediction."""
    search_bound = search_bound or state.settings.search_bound
    max_prime = max_prime or state.settings.delta_max_prime
    run = exp_mean_pg_star if almost else exp_mean_pg
    record = run(
        x,
        search_bound=search_bound,
        max_prime=max_prime,
        workers=state.threads,
        spot_fraction=spot_check,
        seed=state.seed,
    )
    if record.extra.get("spot_mismatches"):
        logger.error(f"Spot check mismatches at g = {record.extra['spot_mismatches']}")
    tolerance = state.settings.mean_rel_tol
    within = record.rel_error is not None and record.rel_error <= tolerance
    if record.rel_error is not None and not within:
        logger.warning(f"exp mean: relative error {record.rel_error:.4g} exceeds {tolerance} at x={x}")
    params = {"x": x, "almost": almost, "search_bound": search_bound, "max_prime": max_prime}
    _emit(state, "exp mean", params, [{**_record_row(record), "within_tolerance": within}], table_limit=search_bound)
    _check_exhaustion(state, record.extra["exhausted"], search_bound)


@exp.command("tamed")
@click.option("--x", type=int, required=True)
@click.option("--eta", type=float, help="Cap exponent in (0, 1/2)")
@click.option("--almost", is_flag=True, help="Average min(p*_g, x^(1 - epsilon)) over 0 < |g| <= x instead")
@click.option("--epsilon", type=float, default=0.5, show_default=True, help="Cap exponent is 1 - epsilon with --almost")
@click.option("--max-prime", type=int)
@output_options
@click.pass_obj
def exp_tamed(state, x, eta, almost, epsilon, max_prime):
    """Mean of min(p_g, x^eta), or of min(p*_g, x^(1 - epsilon)) with --almost."""
    max_prime = max_prime or state.settings.delta_max_prime
    if almost:
        record = exp_tamed_mean_star(x, epsilon, max_prime=max_prime, workers=state.threads)
        params = {"x": x, "almost": True, "epsilon": epsilon, "max_prime": max_prime}
    else:
        eta = eta or state.settings.eta
        record = exp_tamed_mean(x, eta, max_prime=max_prime, workers=state.threads)
        params = {"x": x, "almost": False, "eta": eta, "max_prime": max_prime}
    _emit(state, "exp tamed", params, [_record_row(record)])


@exp.command("dist")
@click.option("--x", type=int, required=True)
@click.option("--max-p", type=int, default=100, show_default=True)
@output_options
@click.pass_obj
def exp_dist(state, x, max_p):
    """Frequency of p_g = p against delta_p."""
    records = exp_pg_distribution(x, max_p, workers=state.threads)
    rows = [
        {
            "p": r.params["p"],
            "count": r.extra["count"],
            "empirical": float(r.empirical),
            "delta_p": float(r.extra["delta_p"]),
            "abs_error": r.abs_error,
        }
        for r in records
    ]
    _emit(state, "exp dist", {"x": x, "max_p": max_p}, rows, DIST_COLUMNS, max_p)


@exp.command("exceptional")
@click.option("--x", type=int, required=True)
@click.option("--Y", "Y", type=float, help="Threshold for p_g (default log^2 N)")
@click.option("--theta", type=float, help="Also run the larger sieve with this theta")
@output_options
@click.pass_obj
def exp_exceptional(state, x, Y, theta):
    """Counts of exceptionally large p_g and p*_g against sieve bounds."""
    records = exp_exceptional_count(x, Y=Y, theta=theta, workers=state.threads)
    _emit(state, "exp exceptional", {"x": x, "Y": Y, "theta": theta}, [_record_row(r) for r in records])


@exp.command("sweep")
@click.option("--g", "g_list", type=int, multiple=True, required=True, help="Repeatable")
@click.option("--x", "x_list", type=int, multiple=True, required=True, help="Repeatable")
@click.option("--prime-limit", type=int)
@output_options
@click.pass_obj
def exp_sweep(state, g_list, x_list, prime_limit):
    """Pi(x; g) / (A(g) pi(x)) across g and x."""
    prime_limit = prime_limit or state.settings.prime_limit
    records = exp_uniformity_sweep(g_list, x_list, prime_limit=prime_limit)
    low, high = state.settings.sweep_low, state.settings.sweep_high
    for r in records:
        if not low <= r.empirical <= high:
            logger.warning(f"exp sweep: ratio {r.empirical:.4f} at g={r.params['g']}, x={r.params['x']} outside [{low}, {high}]")
    rows = [
        {
            "g": r.params["g"],
            "x": r.params["x"],
            "pi_xg": r.extra["pi_xg"],
            "A_g": r.extra["A_g"],
            "pi_x": r.extra["pi_x"],
            "ratio": r.empirical,
            "error_scale": r.extra["error_scale"],
        }
        for r in records
    ]
    params = {"g": list(g_list), "x": list(x_list), "prime_limit": prime_limit}
    _emit(state, "exp sweep", params, rows, SWEEP_COLUMNS, max(x_list))


@exp.command("vaughan")
@click.option("--k", "k_list", type=int, multiple=True, required=True, help="Repeatable")
@click.option("--m-max", type=int)
@click.option("--prime-limit", type=int)
@output_options
@click.pass_obj
def exp_vaughan(state, k_list, m_max, prime_limit):
    """L_k / k against the constant varrho_0."""
    m_max = m_max or state.settings.m_max
    prime_limit = prime_limit or state.settings.prime_limit
    records = exp_vaughan_convergence(k_list, m_max=m_max, prime_limit=prime_limit)
    params = {"k": list(k_list), "m_max": m_max, "prime_limit": prime_limit}
    _emit(state, "exp vaughan", params, [_record_row(r) for r in records], table_limit=prime_limit)


@exp.command("maxpg")
@click.option("--x", type=int, required=True)
@click.option("--search-bound", type=int)
@output_options
@click.pass_obj
def exp_maxpg(state, x, search_bound):
    """Largest p_g over |g| <= x against the heuristic r_k0."""
    s = state.settings
    search_bound = search_bound or s.search_bound
    record = exp_max_pg(x, search_bound=search_bound, m_max=s.m_max, prime_limit=s.prime_limit, workers=state.threads)
    _emit(state, "exp maxpg", {"x": x, "search_bound": search_bound}, [_record_row(record)], table_limit=search_bound)
    _check_exhaustion(state, record.extra["exhausted"], search_bound)


def main():
    """Entry point for the CLI application."""
    cli()


if __name__ == "__main__":
    main()
