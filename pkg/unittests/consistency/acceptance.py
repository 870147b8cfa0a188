import pytest

from src.context import Context
from src.utils.laws import SUITES, run_suite

seconds = {"poly-monoidal": 5, "poly-adjunction": 10, "comonoid-roundtrip": 5, "garner": 30, "query-oracle": 5,
           "migration": 10, "duality": 5, "fin-skeleton": 2, "finitary": 5, "aggregation-coherence": 5,
           "fin-module": 2}
default_cases = {"poly-monoidal": 500, "poly-adjunction": 200, "comonoid-roundtrip": 100, "garner": 50,
                 "query-oracle": 20, "migration": 100, "duality": 200, "fin-skeleton": 1, "finitary": 100,
                 "aggregation-coherence": 200, "fin-module": 2}


def test_every_suite_has_a_bound():
    assert set(seconds) == set(SUITES) == set(default_cases)
    assert {name: cases for name, (_, cases) in SUITES.items()} == default_cases


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_at_default_size(name: str):
    report = run_suite(Context(), name, seed=0)
    assert report.cases == default_cases[name]
    assert report.passed, report.failures[:3]
    assert report.elapsed < seconds[name], f"{name} took {report.elapsed:.2f}s"
