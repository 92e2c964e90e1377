from synergy import expressions as ex
from synergy import set_methods
from synergy.axioms import (
    METHODS,
    MethodUnderTest,
    SuiteConfig,
    check_baseline_test,
    check_completeness,
    check_continuity,
    check_interaction_distribution,
    check_linearity,
    check_null_feature,
    check_symmetry,
    check_uniqueness_support,
    run_suite,
)
from synergy.core import Instance, InteractionReport


def _scaled_shapley(table, k, factor=0.9):
    report = set_methods.shapley(table)
    entries = {c: factor * v for c, v in report.entries.items()}
    entries[()] = report.entries[()]
    return InteractionReport(n=report.n, order=1, entries=entries)


BROKEN_COMPLETENESS = MethodUnderTest("broken", "table", 1, _scaled_shapley)


def _leaky_shapley(table, k):
    report = set_methods.shapley(table)
    entries = dict(report.entries)
    entries[(1,)] = entries[(1,)] + 0.05
    return InteractionReport(n=report.n, order=1, entries=entries)


BROKEN_NULL = MethodUnderTest("leaky", "table", 1, _leaky_shapley)


def test_completeness_passes_for_shapley():
    result = check_completeness("shapley", trials=50, seed=1)
    assert result.status == "pass"
    assert result.max_residual < 1e-10


def test_completeness_catches_planted_fault():
    result = check_completeness(BROKEN_COMPLETENESS, trials=20, seed=1)
    assert result.status == "fail"
    assert result.witness is not None
    assert result.witness["kind"] == "table"


def test_completeness_quadrature_on_transcendental():
    result = check_completeness("ig-quad", trials=25, seed=2)
    assert result.status == "pass"
    assert result.max_residual < 1e-7


def test_linearity_exact_and_quadrature():
    assert check_linearity("ih", trials=30, seed=3).status == "pass"
    assert check_linearity("ig-quad", trials=10, seed=3).status == "pass"


def test_null_feature_passes_and_catches_fault():
    assert check_null_feature("sop", trials=30, seed=4).status == "pass"
    result = check_null_feature(BROKEN_NULL, trials=20, seed=4)
    assert result.status == "fail"
    assert result.witness["coalition"] == [1]


def test_symmetry_pass():
    assert check_symmetry("shapley-taylor", trials=30, seed=5).status == "pass"
    assert check_symmetry("sop", trials=30, seed=5).status == "pass"


def test_baseline_test_expected_failures_have_witnesses():
    failing = check_baseline_test("ih", trials=30, seed=6)
    assert failing.status == "fail"
    assert failing.ok  # documented violator
    assert failing.witness["coalition"]
    passing = check_baseline_test("ih-aug", trials=30, seed=6)
    assert passing.status == "pass" and passing.ok


def test_interaction_distribution_matrix():
    assert check_interaction_distribution("shapley-taylor", 30, seed=7).status == "pass"
    assert check_interaction_distribution("sop", 30, seed=7).status == "pass"
    assert check_interaction_distribution("rs-aug", 30, seed=7).status == "fail"
    assert check_interaction_distribution("ih-aug", 30, seed=7).status == "fail"
    na = check_interaction_distribution("shapley", 30, seed=7)
    assert na.status == "not-applicable" and na.ok


def test_continuity_against_quadrature_reference():
    probe = ex.parse("exp(x1*x2) - 1", 2)
    inst = Instance(x=(0.5, 0.5), baseline=(0.0, 0.0))
    result = check_continuity("ig", probe, inst, max_order=10, k=1)
    assert result.status == "pass"
    assert result.details["mode"] == "quadrature-reference"
    residuals = result.details["residuals"]
    assert all(b < a for a, b in zip(residuals, residuals[1:]))
    assert residuals[-1] < 1e-6


def test_continuity_on_polynomial_input_is_immediate():
    probe = ex.parse("x1^3*x2 - 2*x1", 2)
    inst = Instance(x=(0.5, -0.75), baseline=(0.0, 0.0))
    result = check_continuity("ig", probe, inst, max_order=8, k=1)
    assert result.status == "pass"
    # truncations at or past the degree are the polynomial itself
    assert result.details["residuals"][-1] == result.details["residuals"][-2]


def test_continuity_self_convergence_mode():
    probe = ex.parse("sin(x1)*sin(x2)", 2)
    inst = Instance(x=(0.5, 0.5), baseline=(0.0, 0.0))
    result = check_continuity("sop", probe, inst, max_order=12, k=2)
    assert result.details["mode"] == "cauchy-self-convergence"
    assert result.status == "pass"


def test_uniqueness_support():
    result = check_uniqueness_support(trials=50, seed=8)
    assert result.status == "pass"
    assert result.max_residual < 1e-10


def test_suite_is_deterministic():
    config = SuiteConfig(seed=77, trials=10, methods=("shapley", "rs"))
    first = run_suite(config).to_json_dict()
    second = run_suite(config).to_json_dict()
    assert first == second


def test_suite_honors_expected_failures():
    config = SuiteConfig(
        seed=3, trials=15, methods=("rs", "ih"), axioms=("baseline-test",)
    )
    result = run_suite(config)
    assert result.ok
    assert all(r.status == "fail" for r in result.results)


def test_suite_flags_unexpected_failure():
    registry = dict(METHODS)
    registry["shapley"] = MethodUnderTest("shapley", "table", 1, _scaled_shapley)
    config = SuiteConfig(seed=3, trials=10, methods=("shapley",), axioms=("completeness",))
    result = run_suite(config, methods=registry)
    assert not result.ok


def test_suite_tolerance_overrides():
    config = SuiteConfig(
        seed=5,
        trials=10,
        methods=("shapley",),
        axioms=("completeness",),
        tolerance_overrides={"completeness": 1e-30},
    )
    result = run_suite(config)
    assert not result.ok  # machine noise now counts as failure


def test_suite_config_json_roundtrip():
    payload = {
        "seed": 9,
        "trials": 25,
        "methods": ["shapley", "ig"],
        "axioms": ["completeness"],
        "tolerance_overrides": {"completeness": 1e-9},
    }
    config = SuiteConfig.from_json_dict(payload)
    assert config.seed == 9
    assert config.methods == ("shapley", "ig")
    result = run_suite(config)
    assert result.ok
