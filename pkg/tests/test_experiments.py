"""Experiment configs, sampling, reports, replay verification."""

import json

import pytest

from primespec import ConfigError, HypothesisViolationError, PrimespecError, context
from primespec.experiments import (Budgets, ExperimentConfig, classify, derive_seed,
                                   emit_report, parse_experiment_config, report_hash,
                                   run_experiment, sample_lambda, sample_point,
                                   sample_poly_values, sample_scalar, verify_report)
from primespec.groebner import Ideal
from primespec.parse import parse_polynomial

from conftest import seeded

PARABOLA = "params: T\nvars: Y\ngens:\nY^2 - T\n"
CIRCLE = "vars: Y1, Y2\ngens:\nY1^2 + Y2^2 - 1\n"
BAD = "params: T\nvars: Y\ngens:\nY - T\nY - 1\n"


@pytest.fixture
def parabola_path(tmp_path):
    path = tmp_path / "parabola.ideal"
    path.write_text(PARABOLA)
    return str(path)


@pytest.fixture
def circle_path(tmp_path):
    path = tmp_path / "circle.ideal"
    path.write_text(CIRCLE)
    return str(path)


def scalar_config(path, n=40, box=1000, seed=5, **kw):
    return ExperimentConfig(kind="ScalarSpec", ideal_path=path, box=box,
                            samples=n, seed=seed, **kw)


def test_config_parsing(tmp_path):
    (tmp_path / "i.ideal").write_text(PARABOLA)
    text = """
    kind = ScalarSpec
    ideal = i.ideal
    H = 100          # box half-width
    n = 10
    seed = 3
    trials = 4
    gb.max_pairs = 123
    """
    config = parse_experiment_config(text, str(tmp_path))
    assert config.kind == "ScalarSpec"
    assert config.box == 100 and config.samples == 10
    assert config.trials == 4
    assert config.budgets.gb_max_pairs == 123


def test_config_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        parse_experiment_config("kind = ScalarSpec\nideal = x\nH = 1\nn = 1\nfoo = 2\n")


def test_config_requires_fields():
    with pytest.raises(ConfigError):
        parse_experiment_config("kind = ScalarSpec\nH = 1\nn = 1\n")
    with pytest.raises(ConfigError):
        parse_experiment_config("kind = ScalarSpec\nideal = x\nH = 1\nn = 0\n")
    with pytest.raises(ConfigError):
        parse_experiment_config("kind = Bogus\nideal = x\nH = 1\nn = 1\n")


def test_sampling_is_deterministic():
    a = sample_scalar(3, 50, seeded(9))
    b = sample_scalar(3, 50, seeded(9))
    assert a == b
    assert all(-50 <= v <= 50 for v in a.scalars)
    la = sample_lambda((1, 2), 2, 10, seeded(9))
    lb = sample_lambda((1, 2), 2, 10, seeded(9))
    assert la == lb
    assert [len(block) for block in la.blocks] == [3, 6]


def test_poly_sampling_respects_degree_bounds():
    y_ctx = context(("Y",))
    point = sample_poly_values((1,), y_ctx, 1, seeded(3))
    assert point.polys[0].total_degree() <= 1
    # box 1, degree 1: coefficients drawn from {-1,0,1}
    seen = set()
    for s in range(60):
        p = sample_poly_values((1,), y_ctx, 1, seeded(s)).polys[0]
        for coeff in p.terms.values():
            assert coeff in (-1, 1)
        seen.add(str(p))
    assert len(seen) > 3


def test_sample_point_dispatch():
    ideal_ctx = context(("Y",), params=("T",))
    ideal = Ideal(ideal_ctx, [parse_polynomial("Y^2 - T", ideal_ctx)])
    assert sample_point("ScalarSpec", ideal, (), 5, seeded(1)).kind == "scalar"
    assert sample_point("PolySpec", ideal, (2,), 5, seeded(1)).kind == "poly"


def test_derived_seeds_differ():
    assert derive_seed(7, 0) != derive_seed(7, 1)
    assert derive_seed(7, 0) != derive_seed(8, 0)
    assert derive_seed(7, 3, "prime") != derive_seed(7, 3)


def test_scalar_experiment_accounting(parabola_path):
    report = run_experiment(scalar_config(parabola_path))
    agg = report["aggregate"]
    assert agg["good"] + agg["bad"] + agg["inconclusive"] == report["config"]["n"]
    assert 0.0 <= agg["density_float"] <= 1.0
    assert report["config"]["expected_dimension"] == 0
    for sample in report["samples"]:
        assert classify(sample) in ("good", "bad", "inconclusive")


def test_hypothesis_gate_fails_fast(tmp_path):
    path = tmp_path / "bad.ideal"
    path.write_text(BAD)
    with pytest.raises(HypothesisViolationError) as err:
        run_experiment(scalar_config(str(path), n=3))
    assert str(err.value.witness) == "T - 1"


def test_reports_are_reproducible(parabola_path):
    config = scalar_config(parabola_path, n=30)
    first = run_experiment(config)
    second = run_experiment(config)
    assert report_hash(first) == report_hash(second)
    # the hash ignores timings but the verdict payload must be identical
    strip = lambda rep: [
        {k: v for k, v in s.items() if k != "elapsed_ms"} for s in rep["samples"]]
    assert strip(first) == strip(second)


def test_different_seeds_differ(parabola_path):
    first = run_experiment(scalar_config(parabola_path, n=30, seed=1))
    second = run_experiment(scalar_config(parabola_path, n=30, seed=2))
    assert report_hash(first) != report_hash(second)


def test_emit_json_and_csv_roundtrip(parabola_path, tmp_path):
    report = run_experiment(scalar_config(parabola_path, n=25, box=100))
    json_path = tmp_path / "report.json"
    csv_path = tmp_path / "report.csv"
    emit_report(report, "json", json_path)
    emit_report(report, "csv", csv_path)
    loaded = json.loads(json_path.read_text())
    assert report_hash(loaded) == report_hash(report)
    import csv as csv_module

    with open(csv_path, newline="") as handle:
        rows = list(csv_module.DictReader(handle))
    assert len(rows) == 25
    for row, sample in zip(rows, report["samples"]):
        assert row["verdict"] == sample["verdict"]
        assert json.loads(row["point"]) == sample["point"]
        if sample["certificate"]:
            assert json.loads(row["certificate"]) == sample["certificate"]


def test_verify_report_confirms_certificates(parabola_path):
    # squares in a tiny box force NotPrime samples
    report = run_experiment(scalar_config(parabola_path, n=60, box=9, seed=2))
    assert any(s["verdict"] == "not_prime" for s in report["samples"])
    messages = verify_report(report)
    assert any("NotPrime certificate replayed" in m for m in messages)


def test_verify_report_detects_tampering(parabola_path):
    report = run_experiment(scalar_config(parabola_path, n=60, box=9, seed=2))
    tampered = json.loads(json.dumps(report))
    for sample in tampered["samples"]:
        if sample["verdict"] == "not_prime":
            sample["certificate"]["f"] = "Y + 12345"
            break
    with pytest.raises(PrimespecError):
        verify_report(tampered)
    counted = json.loads(json.dumps(report))
    counted["aggregate"]["good"] += 1
    with pytest.raises(PrimespecError):
        verify_report(counted)


def test_intersect_experiment_runs(circle_path):
    config = ExperimentConfig(kind="GenericIntersect", ideal_path=circle_path,
                              box=30, samples=40, seed=6, degrees=(1,))
    report = run_experiment(config)
    agg = report["aggregate"]
    assert agg["good"] > 0
    assert report["config"]["expected_dimension"] == 0
    verify_report(report)


def test_intersect_rho_validation(circle_path):
    config = ExperimentConfig(kind="GenericIntersect", ideal_path=circle_path,
                              box=10, samples=5, seed=1, degrees=(1, 1))
    with pytest.raises(ConfigError):
        run_experiment(config)


def test_consistency_experiment(parabola_path):
    config = ExperimentConfig(kind="Consistency", ideal_path=parabola_path,
                              box=50, samples=20, seed=8, degrees=())
    report = run_experiment(config)
    assert report["aggregate"]["good"] == 20
    assert all(s["verdict"] == "consistent" for s in report["samples"])


def test_worker_pool_matches_sequential(parabola_path):
    sequential = run_experiment(scalar_config(parabola_path, n=16, seed=4))
    parallel = run_experiment(scalar_config(parabola_path, n=16, seed=4, workers=2))
    assert report_hash(sequential) == report_hash(parallel)


def test_budget_errors_mark_samples_inconclusive(parabola_path):
    config = scalar_config(parabola_path, n=6,
                           budgets=Budgets(gb_max_term_count=0))
    report = run_experiment(config)
    assert report["aggregate"]["inconclusive"] == 6
    assert all("budget" in s.get("reason", "") for s in report["samples"])


def test_degenerate_specialization_flagged(tmp_path):
    # T specializes the lone generator to zero at t = 0
    path = tmp_path / "line.ideal"
    path.write_text("params: T\nvars: Y\ngens:\nT*Y\n")
    config = ExperimentConfig(kind="ScalarSpec", ideal_path=str(path), box=1,
                              samples=40, seed=0)
    report = run_experiment(config)
    flagged = [s for s in report["samples"] if s.get("degenerate_specialization")]
    assert flagged
    for sample in flagged:
        assert sample["dimension"] == 1  # the whole affine line


TWO_PARAMS = "params: T1, T2\nvars: Y1, Y2\ngens:\nY1^2 - T1\nY2 - T2*Y1\n"


def test_two_parameter_family(tmp_path):
    path = tmp_path / "two.ideal"
    path.write_text(TWO_PARAMS)
    config = ExperimentConfig(kind="ScalarSpec", ideal_path=str(path), box=500,
                              samples=60, seed=21)
    report = run_experiment(config)
    assert report["config"]["expected_dimension"] == 0
    assert report["aggregate"]["good"] > 0
    for sample in report["samples"]:
        assert len(sample["point"]["values"]) == 2
    verify_report(report)


def test_two_parameter_polynomial_values(tmp_path):
    path = tmp_path / "two.ideal"
    path.write_text(TWO_PARAMS)
    config = ExperimentConfig(kind="PolySpec", ideal_path=str(path), box=8,
                              samples=60, seed=22, degrees=(1, 0))
    report = run_experiment(config)
    assert report["aggregate"]["good"] > 0
    verify_report(report)
    # the second value is degree-bounded by 0, hence constant
    y_ctx = context(("Y1", "Y2"))
    for sample in report["samples"]:
        second = parse_polynomial(sample["point"]["values"][1], y_ctx)
        assert second.is_constant
