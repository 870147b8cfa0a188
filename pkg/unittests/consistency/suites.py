import pytest

from src.context import Context
from src.errors import UnknownSuite
from src.utils.laws import SUITES, run_suite, run_suites, suite_names

cases = {"poly-monoidal": 20, "poly-adjunction": 10, "comonoid-roundtrip": 10, "garner": 3, "query-oracle": 5,
         "migration": 10, "duality": 20, "fin-skeleton": 1, "finitary": 10, "aggregation-coherence": 20,
         "fin-module": 2}


def test_every_suite_has_a_case_count():
    assert set(cases) == set(SUITES)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name: str):
    report = run_suite(Context(), name, seed=0, cases=cases[name])
    assert report.passed, report.failures[:3]
    assert report.cases == cases[name]
    assert report.skipped < report.cases


@pytest.mark.parametrize("name", sorted(SUITES))
def test_self_test_fails(name: str):
    report = run_suite(Context(), name, seed=0, cases=min(cases[name], 2), self_test=True)
    assert not report.passed
    diagram = report.failures[0].diagram
    assert isinstance(diagram, str) and diagram


@pytest.mark.parametrize("name,seed", [("poly-monoidal", 1), ("aggregation-coherence", 7)])
def test_documented_seeds(name: str, seed: int):
    assert run_suite(Context(), name, seed=seed, cases=50).passed


def test_runs_are_reproducible():
    first = run_suite(Context(), "duality", seed=3, cases=2, self_test=True)
    second = run_suite(Context(), "duality", seed=3, cases=2, self_test=True)
    assert [f.witness for f in first.failures] == [f.witness for f in second.failures]


def test_suite_names():
    assert suite_names("all") == list(SUITES)
    assert suite_names("aggregation") == ["aggregation-coherence"]
    with pytest.raises(UnknownSuite):
        suite_names("frobnicate")


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("POLYAGG_SEED", "5")
    ctx = Context()
    assert ctx.suite.seed == 5
    assert run_suites(ctx, "fin-module", cases=1)[0].seed == 5
