"""Experiment driver: sample specialization points, check verdicts, report.

A sample is *good* when the specialized ideal is certified prime and its
dimension matches the expected fiber dimension; *bad* when it is
certifiably not prime, collapses to the unit ideal, or has the wrong
dimension; *inconclusive* when the probabilistic test cannot decide or a
budget runs out.  Densities are reported both against all samples and
against the decisive ones, always as exact fractions alongside floats.

Reports are deterministic for a fixed config and seed: every sample owns
an independent random stream derived from (seed, index), so the worker
pool never affects results.  ``report_hash`` ignores the timestamp and
per-sample timings, which are the only run-dependent fields.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from random import Random

from . import __version__
from .context import context as make_context
from .errors import BudgetExceededError, ConfigError, HypothesisViolationError, PrimespecError
from .groebner import GBLimits, Ideal, eliminate
from .orders import grevlex
from .parse import parse_ideal_source, parse_polynomial
from .poly import Polynomial, monomials_upto, space_dimension
from .primality import (DEFAULT_BOX_CAP, DEFAULT_BOX_START, DEFAULT_TRIALS,
                        INCONCLUSIVE, NOT_PRIME, PRIME, UNIT_IDEAL, is_prime)
from .specialize import (LambdaAssignment, SpecializationPoint, intersect_generic,
                         specialize_polynomial, specialize_scalar)

SCALAR_SPEC = "ScalarSpec"
GENERIC_INTERSECT = "GenericIntersect"
POLY_SPEC = "PolySpec"
CONSISTENCY = "Consistency"
KINDS = (SCALAR_SPEC, GENERIC_INTERSECT, POLY_SPEC, CONSISTENCY)

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class Budgets:
    gb_max_pairs: int = 50_000
    gb_max_term_count: int = 200_000
    primality_box_start: int = DEFAULT_BOX_START
    primality_box_cap: int = DEFAULT_BOX_CAP
    sample_timeout_ms: int = 20_000


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    ideal_path: str
    box: int
    samples: int
    seed: int = 0
    trials: int = DEFAULT_TRIALS
    degrees: tuple[int, ...] = ()
    rho: int | None = None
    workers: int = 1
    budgets: Budgets = field(default_factory=Budgets)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        if self.samples < 1:
            raise ConfigError("n must be >= 1")
        if self.box < 1:
            raise ConfigError("H must be >= 1")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.kind == GENERIC_INTERSECT and not self.degrees:
            raise ConfigError("GenericIntersect needs a degrees list")
        if self.rho is not None and self.rho != len(self.degrees):
            raise ConfigError("rho must match the number of degrees")


_CONFIG_KEYS = {
    "kind", "ideal", "H", "n", "seed", "trials", "degrees", "rho", "workers",
    "gb.max_pairs", "gb.max_term_count", "primality.trials",
    "primality.box_start", "primality.box_cap", "sample.timeout_ms",
}


def parse_experiment_config(text: str, base_dir: str = ".") -> ExperimentConfig:
    """Read ``key = value`` lines; unknown keys are errors."""
    data = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key == "primality.trials":
            key = "trials"
        if key in data:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        data[key] = value
    for required in ("kind", "ideal", "H", "n"):
        if required not in data:
            raise ConfigError(f"missing required key {required!r}")

    def as_int(key, default=None):
        if key not in data:
            return default
        try:
            return int(data[key])
        except ValueError as exc:
            raise ConfigError(f"key {key!r} must be an integer") from exc

    degrees = ()
    if "degrees" in data:
        try:
            degrees = tuple(int(part) for part in data["degrees"].split(",") if part.strip())
        except ValueError as exc:
            raise ConfigError("degrees must be a comma-separated integer list") from exc
        if any(d < 0 for d in degrees):
            raise ConfigError("degrees must be non-negative")

    budgets = Budgets(
        gb_max_pairs=as_int("gb.max_pairs", Budgets.gb_max_pairs),
        gb_max_term_count=as_int("gb.max_term_count", Budgets.gb_max_term_count),
        primality_box_start=as_int("primality.box_start", Budgets.primality_box_start),
        primality_box_cap=as_int("primality.box_cap", Budgets.primality_box_cap),
        sample_timeout_ms=as_int("sample.timeout_ms", Budgets.sample_timeout_ms),
    )
    return ExperimentConfig(
        kind=data["kind"],
        ideal_path=os.path.normpath(os.path.join(base_dir, data["ideal"])),
        box=as_int("H"),
        samples=as_int("n"),
        seed=as_int("seed", 0),
        trials=as_int("trials", DEFAULT_TRIALS),
        degrees=degrees,
        rho=as_int("rho"),
        workers=as_int("workers", 1),
        budgets=budgets,
    )


def read_experiment_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="ascii") as handle:
        return parse_experiment_config(handle.read(), base_dir=os.path.dirname(path) or ".")


# -- sampling -----------------------------------------------------------------


def derive_seed(seed: int, index: int, purpose: str = "sample") -> int:
    """Independent per-sample stream seed, stable across platforms."""
    digest = hashlib.sha256(f"{seed}/{index}/{purpose}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def sample_scalar(r: int, box: int, rng: Random) -> SpecializationPoint:
    return SpecializationPoint("scalar",
                               scalars=tuple(rng.randint(-box, box) for _ in range(r)))


def sample_lambda(degrees, s: int, box: int, rng: Random) -> LambdaAssignment:
    blocks = []
    for degree in degrees:
        count = space_dimension(s, degree).count
        blocks.append(tuple(Fraction(rng.randint(-box, box)) for _ in range(count)))
    return LambdaAssignment(tuple(blocks))


def sample_poly_values(degrees, y_context, box: int, rng: Random) -> SpecializationPoint:
    s = y_context.s
    polys = []
    for degree in degrees:
        terms = {}
        for exp in monomials_upto(s, degree):
            c = rng.randint(-box, box)
            if c:
                terms[exp] = Fraction(c)
        polys.append(Polynomial(y_context, terms))
    return SpecializationPoint("poly", polys=tuple(polys), degree_bounds=tuple(degrees))


def sample_point(kind: str, ideal: Ideal, degrees, box: int, rng: Random):
    """Draw one specialization point with coordinates uniform on [-H, H]."""
    if kind in (SCALAR_SPEC, CONSISTENCY):
        return sample_scalar(ideal.context.r, box, rng)
    if kind == POLY_SPEC:
        return sample_poly_values(degrees, ideal.context.drop_role("param"), box, rng)
    if kind == GENERIC_INTERSECT:
        return sample_lambda(degrees, ideal.context.s, box, rng)
    raise ConfigError(f"unknown experiment kind {kind!r}")


# -- per-sample work ----------------------------------------------------------


def _point_json(point):
    if isinstance(point, LambdaAssignment):
        return {"kind": "lambda", "blocks": [[str(v) for v in b] for b in point.blocks]}
    if point.kind == "scalar":
        return {"kind": "scalar", "values": [str(v) for v in point.scalars]}
    return {"kind": "poly", "values": [str(p) for p in point.polys],
            "degrees": list(point.degree_bounds)}


def _specialize_for_kind(kind, ideal, degrees, point):
    if kind in (SCALAR_SPEC, CONSISTENCY):
        return specialize_scalar(ideal, point.scalars)
    if kind == POLY_SPEC:
        return specialize_polynomial(ideal, point.polys)
    return intersect_generic(ideal, degrees, point)


def _is_degenerate(kind, point, specialized):
    if kind == GENERIC_INTERSECT:
        return any(all(v == 0 for v in block) for block in point.blocks)
    return specialized.is_zero


def run_sample(ideal: Ideal, config: ExperimentConfig, expected: int, index: int) -> dict:
    """Process one sample; budget overruns record an inconclusive verdict."""
    rng = Random(derive_seed(config.seed, index))
    point = sample_point(config.kind, ideal, config.degrees, config.box, rng)
    budgets = config.budgets
    start = time.perf_counter()
    limits = GBLimits(budgets.gb_max_pairs, budgets.gb_max_term_count,
                      deadline=time.monotonic() + budgets.sample_timeout_ms / 1000.0)
    record = {
        "index": index,
        "point": _point_json(point),
        "verdict": INCONCLUSIVE,
        "dimension": None,
        "expected_dimension": expected,
        "certificate": None,
        "elapsed_ms": 0.0,
    }
    try:
        specialized = _specialize_for_kind(config.kind, ideal, config.degrees, point)
        if _is_degenerate(config.kind, point, specialized):
            record["degenerate_specialization"] = True
        if config.kind == CONSISTENCY:
            twin = specialize_polynomial(
                ideal, tuple(Polynomial.constant(specialized.context, v)
                             for v in point.scalars))
            same = (specialized.groebner(grevlex, limits).polys
                    == twin.groebner(grevlex, limits).polys)
            record["verdict"] = CONSISTENT if same else INCONSISTENT
            record["dimension"] = specialized.dimension(limits)
        else:
            record["dimension"] = specialized.dimension(limits)
            verdict = is_prime(specialized, trials=config.trials,
                               seed=derive_seed(config.seed, index, "prime"),
                               box_start=budgets.primality_box_start,
                               box_cap=budgets.primality_box_cap, limits=limits)
            record["verdict"] = verdict.status
            if verdict.certificate is not None:
                f, g = verdict.certificate
                record["certificate"] = {"f": str(f), "g": str(g)}
            if verdict.status == INCONCLUSIVE and verdict.reason:
                record["reason"] = verdict.reason
    except BudgetExceededError as exc:
        record["verdict"] = INCONCLUSIVE
        record["reason"] = f"budget: {exc}"
    record["elapsed_ms"] = round((time.perf_counter() - start) * 1000.0, 3)
    return record


def classify(record) -> str:
    verdict = record["verdict"]
    if verdict == CONSISTENT:
        return "good"
    if verdict == INCONSISTENT:
        return "bad"
    if verdict == INCONCLUSIVE:
        return "inconclusive"
    if verdict == PRIME and record["dimension"] == record["expected_dimension"]:
        return "good"
    return "bad"


# -- the experiment -----------------------------------------------------------


def _baseline(ideal: Ideal, config: ExperimentConfig, limits: GBLimits) -> int:
    """Hypothesis gate plus the expected dimension of good specializations."""
    ctx = ideal.context
    if config.kind in (SCALAR_SPEC, POLY_SPEC, CONSISTENCY):
        if ctx.r == 0:
            raise ConfigError(f"{config.kind} requires a params: block in the ideal file")
        if config.kind == POLY_SPEC and len(config.degrees) != ctx.r:
            raise ConfigError(f"PolySpec needs {ctx.r} degrees, got {len(config.degrees)}")
        meet = eliminate(ideal, ctx.param_names, limits)
        if not meet.is_zero:
            raise HypothesisViolationError(meet.generators[0])
        return ideal.dimension(limits) - ctx.r
    if ctx.r:
        raise ConfigError("GenericIntersect expects an ideal without parameters")
    d = ideal.dimension(limits)
    rho = len(config.degrees)
    if not 0 < rho <= d:
        raise ConfigError(f"need 0 < rho <= dim = {d}, got rho = {rho}")
    return d - rho


def _pool_task(args):
    payload, index = args
    config = ExperimentConfig(
        kind=payload["kind"], ideal_path=payload["ideal_path"], box=payload["box"],
        samples=payload["samples"], seed=payload["seed"], trials=payload["trials"],
        degrees=tuple(payload["degrees"]), workers=1,
        budgets=Budgets(**payload["budgets"]))
    ctx, gens = parse_ideal_source(payload["ideal_text"])
    return run_sample(Ideal(ctx, gens), config, payload["expected"], index)


def run_experiment(config: ExperimentConfig) -> dict:
    """Run all samples and assemble the report dictionary."""
    with open(config.ideal_path, "r", encoding="ascii") as handle:
        ideal_text = handle.read()
    ctx, gens = parse_ideal_source(ideal_text)
    ideal = Ideal(ctx, gens)
    limits = GBLimits(config.budgets.gb_max_pairs, config.budgets.gb_max_term_count)
    expected = _baseline(ideal, config, limits)

    if config.workers > 1:
        payload = {
            "kind": config.kind, "ideal_path": config.ideal_path, "box": config.box,
            "samples": config.samples, "seed": config.seed, "trials": config.trials,
            "degrees": list(config.degrees), "budgets": asdict(config.budgets),
            "ideal_text": ideal_text, "expected": expected,
        }
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_pool_task,
                                    ((payload, i) for i in range(config.samples))))
    else:
        records = [run_sample(ideal, config, expected, i) for i in range(config.samples)]
    records.sort(key=lambda r: r["index"])

    counts = {"good": 0, "bad": 0, "inconclusive": 0}
    for record in records:
        counts[classify(record)] += 1
    n = config.samples
    decisive = counts["good"] + counts["bad"]
    aggregate = {
        "good": counts["good"],
        "bad": counts["bad"],
        "inconclusive": counts["inconclusive"],
        "density_exact": str(Fraction(counts["good"], n)),
        "density_float": counts["good"] / n,
        "decisive_density_exact": str(Fraction(counts["good"], decisive)) if decisive else None,
        "decisive_density_float": counts["good"] / decisive if decisive else None,
    }
    config_echo = {
        "kind": config.kind,
        "ideal": config.ideal_path,
        "ideal_source": {
            "params": list(ctx.param_names),
            "vars": list(ctx.var_names),
            "gens": [str(g) for g in ideal.generators],
        },
        "H": config.box,
        "n": config.samples,
        "seed": config.seed,
        "trials": config.trials,
        "degrees": list(config.degrees),
        "rho": len(config.degrees) if config.kind == GENERIC_INTERSECT else None,
        "budgets": asdict(config.budgets),
        "expected_dimension": expected,
    }
    return {
        "config": config_echo,
        "samples": records,
        "aggregate": aggregate,
        "tool_version": __version__,
        "seed": config.seed,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }


# -- emission and replay -------------------------------------------------------


def report_hash(report: dict) -> str:
    """Content hash that ignores the timestamp and per-sample timings."""
    stripped = json.loads(json.dumps(report))
    stripped.pop("timestamp", None)
    for sample in stripped.get("samples", ()):
        sample.pop("elapsed_ms", None)
    blob = json.dumps(stripped, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def emit_report(report: dict, fmt: str, path) -> None:
    """Write the report as JSON or one-row-per-sample CSV."""
    import csv

    if fmt == "json":
        with open(path, "w", encoding="ascii") as handle:
            json.dump(report, handle, indent=2)
            handle.write("\n")
        return
    if fmt != "csv":
        raise ConfigError(f"unknown report format {fmt!r}")
    with open(path, "w", encoding="ascii", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["index", "point", "verdict", "dimension",
                         "expected_dimension", "certificate", "elapsed_ms"])
        for sample in report["samples"]:
            writer.writerow([
                sample["index"],
                json.dumps(sample["point"], sort_keys=True),
                sample["verdict"],
                "" if sample["dimension"] is None else sample["dimension"],
                sample["expected_dimension"],
                json.dumps(sample["certificate"], sort_keys=True)
                if sample["certificate"] else "",
                sample["elapsed_ms"],
            ])


def _rebuild_specialized(config_echo, sample):
    source = config_echo["ideal_source"]
    ctx = make_context(source["vars"], params=source["params"])
    ideal = Ideal(ctx, [parse_polynomial(g, ctx) for g in source["gens"]])
    point_json = sample["point"]
    kind = config_echo["kind"]
    if point_json["kind"] == "scalar":
        point = SpecializationPoint("scalar",
                                    scalars=tuple(Fraction(v) for v in point_json["values"]))
    elif point_json["kind"] == "poly":
        y_ctx = ctx.drop_role("param")
        point = SpecializationPoint(
            "poly",
            polys=tuple(parse_polynomial(v, y_ctx) for v in point_json["values"]),
            degree_bounds=tuple(point_json["degrees"]))
    else:
        point = LambdaAssignment(tuple(tuple(Fraction(v) for v in block)
                                       for block in point_json["blocks"]))
    return _specialize_for_kind(kind, ideal, tuple(config_echo["degrees"]), point), ideal


def verify_report(report: dict) -> list[str]:
    """Replay every failure witness in a report; raises on any mismatch.

    Confirms the sample accounting, every NotPrime certificate (product
    in the ideal, factors outside), every unit-ideal collapse, every
    dimension mismatch, and every consistency failure.  Returns one
    confirmation message per replayed check.
    """
    messages = []
    samples = report["samples"]
    aggregate = report["aggregate"]
    counts = {"good": 0, "bad": 0, "inconclusive": 0}
    for sample in samples:
        counts[classify(sample)] += 1
    n = len(samples)
    if n != report["config"]["n"]:
        raise PrimespecError(f"sample count {n} differs from configured n")
    for key in ("good", "bad", "inconclusive"):
        if counts[key] != aggregate[key]:
            raise PrimespecError(f"aggregate {key} is {aggregate[key]}, recomputed {counts[key]}")
    if counts["good"] + counts["bad"] + counts["inconclusive"] != n:
        raise PrimespecError("sample counts do not sum to n")
    if str(Fraction(counts["good"], n)) != aggregate["density_exact"]:
        raise PrimespecError("density_exact does not match good/n")
    messages.append(f"accounting confirmed for {n} samples")

    for sample in samples:
        if classify(sample) != "bad":
            continue
        index = sample["index"]
        specialized, base_ideal = _rebuild_specialized(report["config"], sample)
        verdict = sample["verdict"]
        if verdict == NOT_PRIME:
            cert = sample["certificate"]
            basis = specialized.groebner()
            f = parse_polynomial(cert["f"], specialized.context)
            g = parse_polynomial(cert["g"], specialized.context)
            if not basis.contains(f * g):
                raise PrimespecError(f"sample {index}: certificate product not in ideal")
            if basis.contains(f) or basis.contains(g):
                raise PrimespecError(f"sample {index}: certificate factor lies in ideal")
            messages.append(f"sample {index}: NotPrime certificate replayed")
        elif verdict == UNIT_IDEAL:
            if not specialized.groebner().is_unit:
                raise PrimespecError(f"sample {index}: unit-ideal verdict does not replay")
            messages.append(f"sample {index}: unit ideal confirmed")
        elif verdict == INCONSISTENT:
            twin = specialize_polynomial(
                base_ideal,
                tuple(Polynomial.constant(specialized.context, Fraction(v))
                      for v in sample["point"]["values"]))
            if specialized.groebner().polys == twin.groebner().polys:
                raise PrimespecError(f"sample {index}: inconsistency does not replay")
            messages.append(f"sample {index}: inconsistency confirmed")
        else:
            dim = specialized.dimension()
            if dim != sample["dimension"]:
                raise PrimespecError(
                    f"sample {index}: recorded dimension {sample['dimension']}, recomputed {dim}")
            if dim == sample["expected_dimension"] and verdict == PRIME:
                raise PrimespecError(f"sample {index}: classified bad but replay looks good")
            messages.append(f"sample {index}: dimension mismatch confirmed ({dim})")
    return messages
