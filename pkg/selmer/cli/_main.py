#
# Copyright (c) 2026 The selmer-census authors.
#
# This file is part of selmer-census.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
#
import argparse
import csv
import json
import logging
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Any, Dict, List, IO, Callable

from sympy import primerange

from selmer.__version__ import __version__
from selmer.census import (
    CensusCache,
    METHOD_SP_ONLY,
    METHOD_FIBER,
    METHOD_EXHAUSTIVE,
    census_range,
    render_decimal,
    write_csv,
    table1,
)
from selmer.core import (
    Settings,
    SelmerError,
    CensusIntegrityError,
    ConfigurationError,
    RegressionFailure,
    OracleFailureError,
    DEFAULT_CENSUS_CEILING,
    DEFAULT_PADIC_PRECISION,
)
from selmer.curves import (
    GlobalCurve,
    FineSelmerInputs,
    scan_primes,
    fine_selmer_verdict,
    classical_selmer_verdict,
    minimal_pair_fraction,
)
from selmer.densities import BOUNDS, BOUND_FP, BOUND_BP, BOUND_DP, bound_report, zeta
from selmer.hurwitz import enumerate_reduced_forms, hurwitz_H, kronecker_decomposition
from selmer.sieve import (
    SieveConfig,
    run_sieve_experiment,
    sieve_primes,
    MODE_EXHAUSTIVE,
    MODE_MONTE_CARLO,
    DEFAULT_BETAS,
)
from ._suites import SUITES, run_suite

FORMAT_TEXT = "text"
FORMAT_JSON = "json"
FORMAT_CSV = "csv"
FORMATS = (FORMAT_TEXT, FORMAT_JSON, FORMAT_CSV)

SCHEMA_VERSION = 1

THEOREM_BOUNDS = {"4.4": BOUND_FP, "4.6": BOUND_BP, "4.8": BOUND_DP}

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

_GLOBAL_FLAGS = ("settings", "profile", "cache", "parallelism", "seed", "output_format", "verbose", "command")

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandConfig:
    """Resolved configuration of one CLI run: explicit flags override the settings profile and the environment."""

    command: str
    flags: Tuple[Tuple[str, Any], ...]
    output_format: str
    cache_path: str
    parallelism: int
    seed: int
    census_ceiling: int = DEFAULT_CENSUS_CEILING
    padic_precision: int = DEFAULT_PADIC_PRECISION

    def flag(self, name: str, default: Any = None) -> Any:
        return dict(self.flags).get(name, default)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "flags": dict(self.flags),
            "format": self.output_format,
            "cache": self.cache_path,
            "parallelism": self.parallelism,
            "seed": self.seed,
            "census-ceiling": self.census_ceiling,
            "padic-precision": self.padic_precision,
        }


def _int_list(value: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in value.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {value!r}")


def _float_list(value: str) -> Tuple[float, ...]:
    try:
        return tuple(float(part) for part in value.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {value!r}")


def _prime_range(value: str) -> Tuple[int, int]:
    low, separator, high = value.partition("..")
    try:
        bounds = int(low), int(high)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 5..50, got {value!r}")
    if not separator or bounds[0] > bounds[1]:
        raise argparse.ArgumentTypeError(f"expected a range like 5..50, got {value!r}")
    return bounds


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--settings", help="Settings file (JSON with named profiles)")
    common.add_argument("--profile", help="Profile to apply from the settings file")
    common.add_argument("--cache", help="Census cache file, overrides settings and environment")
    common.add_argument("--parallelism", type=int, help="Worker count; 0 uses all cores, negative leaves cores free")
    common.add_argument("--seed", type=int, help="Seed for every randomized step")
    common.add_argument("--format", dest="output_format", choices=FORMATS, help="Output format (default: text)")
    common.add_argument("--json", dest="output_format", action="store_const", const=FORMAT_JSON)
    common.add_argument("--csv", dest="output_format", action="store_const", const=FORMAT_CSV)
    common.add_argument("-v", "--verbose", action="store_true", help="Log debug detail on stderr")

    parser = argparse.ArgumentParser(
        prog="selmer", description="Exact censuses of anomalous and local torsion elliptic curves"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    hurwitz = commands.add_parser("hurwitz", parents=[common], help="Hurwitz class number and reduced forms")
    hurwitz.add_argument("--disc", type=int, required=True, help="Negative discriminant")

    census = commands.add_parser("census", parents=[common], help="Anomalous and local torsion counts")
    primes = census.add_mutually_exclusive_group(required=True)
    primes.add_argument("--prime", type=int)
    primes.add_argument("--prime-range", type=_prime_range, metavar="LOW..HIGH")
    census.add_argument("--exact-ap", action="store_true", help="Also count the pairs mod p^2 of p-rank 2")
    census.add_argument("--mode", choices=(METHOD_FIBER, METHOD_EXHAUSTIVE), help="Implies --exact-ap")
    census.add_argument("--allow-large", action="store_true", help="Permit exhaustive counts above p = 13")

    table = commands.add_parser("table1", parents=[common], help="Proportions #S_p / p^2 against published values")
    table.add_argument("--max-p", type=int, default=150, help="Exclusive upper prime bound")
    table.add_argument("--min-p", type=int, default=7)
    table.add_argument("--check", action="store_true", help="Fail when a published row is not reproduced")

    scan = commands.add_parser("scan", parents=[common], help="Anomalous and local torsion primes of a curve")
    scan.add_argument("--a", type=int, required=True)
    scan.add_argument("--b", type=int, required=True)
    scan.add_argument("--max-p", type=int, required=True)
    scan.add_argument("--sha-order", type=int)
    scan.add_argument("--tamagawa", type=_int_list, default=())

    verdict = commands.add_parser("verdict", parents=[common], help="Selmer group verdict at one prime")
    verdict.add_argument("--a", type=int, required=True)
    verdict.add_argument("--b", type=int, required=True)
    verdict.add_argument("--prime", type=int, required=True)
    verdict.add_argument("--rank", type=int, required=True)
    verdict.add_argument("--sha-order", type=int, default=1, help="Order of the p-primary part of Sha")
    verdict.add_argument("--tamagawa", type=_int_list, default=(), metavar="C1,C2,...")
    verdict.add_argument("--phi-isomorphism", action="store_true", help="Assert that phi_E is an isomorphism")
    verdict.add_argument("--classical", action="store_true", help="Decide the full Selmer group instead")

    bounds = commands.add_parser("bounds", parents=[common], help="Upper densities of curves at one prime")
    bounds.add_argument("--prime", type=int, required=True)
    which = bounds.add_mutually_exclusive_group(required=True)
    which.add_argument("--theorem", choices=sorted(THEOREM_BOUNDS), help="Bound by its theorem label")
    which.add_argument("--bound", choices=BOUNDS, help="Bound by the census quantity it reads")
    bounds.add_argument("--e5-density", type=float)

    sieve = commands.add_parser("sieve", parents=[common], help="Large-sieve experiment on local torsion counts")
    sieve.add_argument("--y", type=int, required=True)
    sieve.add_argument("--box-c", type=int, required=True)
    sieve.add_argument("--box-d", type=int, required=True)
    sampling = sieve.add_mutually_exclusive_group(required=True)
    sampling.add_argument("--samples", type=int)
    sampling.add_argument("--exhaustive", action="store_true")
    sieve.add_argument("--betas", type=_float_list, default=DEFAULT_BETAS)
    sieve.add_argument("--minimal-only", action="store_true")
    sieve.add_argument("--allow-small-box", action="store_true")

    verify = commands.add_parser("verify", parents=[common], help="Run verification suites")
    verify.add_argument("--check", choices=SUITES + ("all",), default="all")
    verify.add_argument("--prime-range", type=_prime_range, default=(5, 50), metavar="LOW..HIGH")

    minimality = commands.add_parser("minimality", parents=[common], help="Exact fraction of minimal pairs")
    minimality.add_argument("--a-max", type=int, required=True)
    minimality.add_argument("--b-max", type=int, required=True)
    return parser


def resolve_config(args: argparse.Namespace) -> CommandConfig:
    settings = Settings(profile=args.profile, settings=args.settings)
    flags = tuple(
        sorted((name, value) for name, value in vars(args).items() if name not in _GLOBAL_FLAGS)
    )
    return CommandConfig(
        command=args.command,
        flags=flags,
        output_format=args.output_format or FORMAT_TEXT,
        cache_path=args.cache or settings.cache_path,
        parallelism=settings.parallelism if args.parallelism is None else args.parallelism,
        seed=settings.seed if args.seed is None else args.seed,
        census_ceiling=settings.census_ceiling,
        padic_precision=settings.padic_precision,
    )


def _emit_json(out: IO[str], config: CommandConfig, payload: Any) -> None:
    document = {"schema": SCHEMA_VERSION, "command": config.command, "result": payload}
    out.write(json.dumps(document, sort_keys=True, indent=2) + "\n")


def _emit_csv(out: IO[str], header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _emit_mapping(out: IO[str], payload: Dict[str, Any]) -> None:
    for key in sorted(payload):
        out.write(f"{key}: {payload[key]}\n")


def _emit(out: IO[str], config: CommandConfig, payload: Dict[str, Any]) -> None:
    if config.output_format == FORMAT_JSON:
        _emit_json(out, config, payload)
    elif config.output_format == FORMAT_CSV:
        _emit_csv(out, sorted(payload), [[payload[key] for key in sorted(payload)]])
    else:
        _emit_mapping(out, payload)


def _cmd_hurwitz(config: CommandConfig, out: IO[str]) -> int:
    disc = config.flag("disc")
    forms = enumerate_reduced_forms(disc)
    if config.output_format == FORMAT_JSON:
        decomposition = {str(f): count for f, count in kronecker_decomposition(disc).items()}
        payload = {
            "disc": disc,
            "H": hurwitz_H(disc),
            "forms": [[f.a, f.b, f.c] for f in forms],
            "decomposition": decomposition,
        }
        _emit_json(out, config, payload)
    elif config.output_format == FORMAT_CSV:
        _emit_csv(out, ("a", "b", "c", "primitive"), [(f.a, f.b, f.c, int(f.is_primitive())) for f in forms])
    else:
        out.write(f"H({disc}) = {hurwitz_H(disc)}\n")
        for f in forms:
            out.write(f"{f}{'' if f.is_primitive() else '  content ' + str(f.content)}\n")
    return EXIT_OK


def _check_census_ceiling(config: CommandConfig, primes: Sequence[int]) -> None:
    beyond = [p for p in primes if p > config.census_ceiling]
    if beyond:
        raise ConfigurationError(
            f"Census for p={beyond[0]} exceeds the census-ceiling {config.census_ceiling} of the settings profile"
        )


def _cmd_census(config: CommandConfig, out: IO[str]) -> int:
    mode = config.flag("mode")
    method = (mode or METHOD_FIBER) if (config.flag("exact_ap") or mode) else METHOD_SP_ONLY
    if config.flag("prime") is not None:
        primes = [config.flag("prime")]
    else:
        low, high = config.flag("prime_range")
        primes = list(primerange(max(low, 5), high + 1))

    cache = CensusCache(config.cache_path)
    records = {}
    missing = []
    for p in primes:
        exact = method != METHOD_SP_ONLY
        cached = cache.lookup(p, require_ap=exact, method=method if exact else None)
        if cached is None:
            missing.append(p)
        else:
            records[p] = cached
    _check_census_ceiling(config, missing)
    for result in census_range(missing, method, config.parallelism, config.flag("allow_large")):
        if not result.successful():
            raise result.exception
        cache.append(result.data)
        records[result.source] = result.data
    ordered = [records[p] for p in primes]

    if config.output_format == FORMAT_JSON:
        _emit_json(out, config, [record.to_json_dict() for record in ordered])
    elif config.output_format == FORMAT_CSV:
        write_csv(ordered, out)
    else:
        for record in ordered:
            ap = "" if not record.has_ap else f"  ap={record.ap} (ap1={record.ap1}, ap2={record.ap2})"
            out.write(
                f"p={record.p}  sbar={record.sbar}  sp={record.sp}  sp_j0={record.sp_j0}  "
                f"sp_j1728={record.sp_j1728}{ap}  [{record.method}]\n"
            )
    return EXIT_OK


def _cmd_table1(config: CommandConfig, out: IO[str]) -> int:
    rows = table1(config.flag("max_p"), config.flag("min_p"), config.flag("check"), config.parallelism)
    if config.output_format == FORMAT_JSON:
        payload = [
            {"p": r.p, "sp": r.sp, "proportion": r.rendered, "published": r.published, "match": r.matches}
            for r in rows
        ]
        _emit_json(out, config, payload)
    elif config.output_format == FORMAT_CSV:
        _emit_csv(
            out,
            ("p", "sp", "proportion", "published"),
            [(r.p, r.sp, r.rendered, r.published or "") for r in rows],
        )
    else:
        for r in rows:
            status = "" if r.matches is None else ("  ok" if r.matches else "  MISMATCH")
            out.write(f"{r.p:>6}  {r.rendered:<20}{status}\n")
    return EXIT_OK


def _cmd_scan(config: CommandConfig, out: IO[str]) -> int:
    curve = GlobalCurve.of(config.flag("a"), config.flag("b"))
    report = scan_primes(
        curve, config.flag("max_p"), config.parallelism, config.flag("sha_order"), config.flag("tamagawa")
    )
    payload = report.to_dict()
    if config.output_format == FORMAT_JSON:
        _emit_json(out, config, payload)
    elif config.output_format == FORMAT_CSV:
        kinds = {p: "bad" for p in report.bad}
        kinds.update({p: "anomalous" for p in report.anomalous})
        kinds.update({p: "local-torsion" for p in report.local_torsion})
        _emit_csv(out, ("p", "kind"), sorted(kinds.items()))
    else:
        _emit_mapping(out, payload)
    return EXIT_OK


def _cmd_verdict(config: CommandConfig, out: IO[str]) -> int:
    inputs = FineSelmerInputs(
        a=config.flag("a"),
        b=config.flag("b"),
        p=config.flag("prime"),
        rank=config.flag("rank"),
        sha_p_order=config.flag("sha_order"),
        tamagawa=tuple(config.flag("tamagawa")),
        phi_isomorphism=config.flag("phi_isomorphism"),
    )
    decide = classical_selmer_verdict if config.flag("classical") else fine_selmer_verdict
    verdict = decide(inputs)
    _emit(
        out,
        config,
        {
            "p": verdict.p,
            "status": verdict.status,
            "failed_condition": verdict.failed_condition,
            "local_torsion": verdict.local_torsion,
            "anomalous": verdict.anomalous,
        },
    )
    return EXIT_OK


def _cmd_bounds(config: CommandConfig, out: IO[str]) -> int:
    p = config.flag("prime")
    bound = config.flag("bound") or THEOREM_BOUNDS[config.flag("theorem")]
    cache = CensusCache(config.cache_path)
    method = METHOD_SP_ONLY if bound == BOUND_FP else METHOD_FIBER
    if cache.lookup(p, require_ap=method != METHOD_SP_ONLY) is None:
        _check_census_ceiling(config, [p])
    record = cache.get_or_compute(p, method)
    report = bound_report(bound, p, record, config.flag("e5_density"))
    _emit(out, config, report.to_dict())
    return EXIT_OK


def _cmd_sieve(config: CommandConfig, out: IO[str]) -> int:
    exhaustive = config.flag("exhaustive")
    sieve_config = SieveConfig(
        Y=config.flag("y"),
        box_c=config.flag("box_c"),
        box_d=config.flag("box_d"),
        mode=MODE_EXHAUSTIVE if exhaustive else MODE_MONTE_CARLO,
        samples=0 if exhaustive else config.flag("samples"),
        seed=config.seed,
        betas=tuple(config.flag("betas")),
        minimal_only=config.flag("minimal_only"),
        allow_small_box=config.flag("allow_small_box"),
    )
    cache = CensusCache(config.cache_path)
    uncached = [p for p in sieve_primes(sieve_config.Y) if cache.lookup(p, require_ap=True) is None]
    _check_census_ceiling(config, uncached)
    for p in uncached:
        cache.get_or_compute(p)
    report = run_sieve_experiment(sieve_config, cache, config.parallelism)
    if config.output_format == FORMAT_JSON:
        _emit_json(out, config, report.to_dict())
    elif config.output_format == FORMAT_CSV:
        _emit_csv(
            out,
            ("beta", "observed_fraction", "chebyshev_ceiling"),
            [(row.beta, float(row.observed_fraction), float(row.chebyshev_ceiling)) for row in report.bands],
        )
    else:
        out.write(f"P({report.Y}) = {report.P_Y} ~ {float(report.P_Y):.12g}\n")
        out.write(f"heuristic mass: {report.heuristic_mass:.12g}\n")
        out.write(f"samples: {report.sample_size} ({report.mode})\n")
        out.write(f"mean: {float(report.mean):.12g}  variance: {float(report.variance):.12g}\n")
        out.write(f"normalized mean square: {float(report.mean_square_ratio):.12g}\n")
        for row in report.bands:
            out.write(
                f"beta={row.beta:g}  observed={float(row.observed_fraction):.6g}  "
                f"ceiling={float(row.chebyshev_ceiling):.6g}  margin={row.margin:.3g}\n"
            )
    return EXIT_OK


def _cmd_verify(config: CommandConfig, out: IO[str]) -> int:
    requested = config.flag("check")
    suites = SUITES if requested == "all" else (requested,)
    low, high = config.flag("prime_range")
    outcomes: List[Dict[str, Any]] = []
    failed = False
    for suite in suites:
        for result in run_suite(suite, low, high, config.seed, config.parallelism, config.padic_precision):
            if result.successful():
                outcome = result.data
                failed = failed or not outcome.passed
                outcomes.append(outcome.to_dict())
            else:
                failed = True
                outcomes.append({"suite": suite, "p": result.source, "passed": False, "error": str(result.exception)})
    if config.output_format == FORMAT_JSON:
        _emit_json(out, config, {"passed": not failed, "outcomes": outcomes})
    elif config.output_format == FORMAT_CSV:
        _emit_csv(
            out,
            ("suite", "p", "checked", "passed", "skipped"),
            [(o["suite"], o["p"], o.get("checked", 0), int(o["passed"]), int(o.get("skipped", False))) for o in outcomes],
        )
    else:
        for o in outcomes:
            status = "skipped" if o.get("skipped") else ("ok" if o["passed"] else "FAILED")
            out.write(f"{o['suite']:<20} p={o['p']:<6} {status}\n")
            for row in o.get("rows", []):
                out.write("    " + "  ".join(f"{key}={row[key]}" for key in row) + "\n")
            if "error" in o:
                out.write(f"    {o['error']}\n")
    return EXIT_VERIFICATION_FAILED if failed else EXIT_OK


def _cmd_minimality(config: CommandConfig, out: IO[str]) -> int:
    fraction = minimal_pair_fraction(config.flag("a_max"), config.flag("b_max"))
    target = zeta(10)
    _emit(
        out,
        config,
        {
            "fraction": str(fraction),
            "decimal": render_decimal(fraction),
            "inverse_zeta_10": 1 / target.value,
            "distance": abs(float(fraction) - 1 / target.value),
        },
    )
    return EXIT_OK


COMMANDS: Dict[str, Callable[[CommandConfig, IO[str]], int]] = {
    "hurwitz": _cmd_hurwitz,
    "census": _cmd_census,
    "table1": _cmd_table1,
    "scan": _cmd_scan,
    "verdict": _cmd_verdict,
    "bounds": _cmd_bounds,
    "sieve": _cmd_sieve,
    "verify": _cmd_verify,
    "minimality": _cmd_minimality,
}


def run(argv: Optional[Sequence[str]] = None, out: Optional[IO[str]] = None) -> int:
    """
    Parses ``argv`` and runs one subcommand.

    :return: 0 on success, 1 when a verification fails, 2 on usage errors.
    """
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr)
    try:
        config = resolve_config(args)
        logger.info(f"selmer-census {__version__}: {json.dumps(config.as_dict(), sort_keys=True, default=str)}")
        return COMMANDS[config.command](config, out)
    except (RegressionFailure, CensusIntegrityError, OracleFailureError) as e:
        logger.error(str(e))
        print(f"selmer: verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    except (SelmerError, ValueError, OSError) as e:
        logger.error(str(e))
        print(f"selmer: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
