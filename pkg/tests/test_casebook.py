"""Casebook registry: known ids, expected outcomes, idempotence."""
import pytest

from tailorder import UnknownCase, run_all, run_case
from tailorder.casebook import case_ids

FAST_CASES = [
    "EX_POLYEXP",
    "MAXEXP_HEREDITY_FAIL",
    "MAXEXP_DFR_ONSET",
    "PARALLEL_TAIL_DOM",
    "PARALLEL_HOMOG_CLOSURE",
    "MAJORIZATION_CE",
    "HOLDER_BOUNDS",
]


def test_registry_contents():
    ids = case_ids()
    assert len(ids) == 14
    for cid in FAST_CASES:
        assert cid in ids


@pytest.mark.parametrize("cid", FAST_CASES)
def test_fast_cases_pass(cid):
    result = run_case(cid)
    assert result.passed, [(c.name, c.detail) for c in result.checks if not c.passed]


def test_branched_pareto_case():
    result = run_case("BP_COUNTEREXAMPLE")
    assert result.passed, [(c.name, c.detail) for c in result.checks if not c.passed]
    names = [c.name for c in result.checks]
    assert "order-1-supported" in names
    assert "order-2-refuted" in names


def test_unknown_case_rejected():
    with pytest.raises(UnknownCase):
        run_case("NO_SUCH_CASE")


def test_case_runs_are_idempotent():
    first = run_case("MAJORIZATION_CE")
    second = run_case("MAJORIZATION_CE")
    assert first.documents_json() == second.documents_json()


def test_run_all_aggregates(monkeypatch):
    # keep the smoke test quick: run the fast subset through the aggregator
    import tailorder.casebook as cb
    subset = {cid: cb._REGISTRY[cid] for cid in FAST_CASES[:3]}
    monkeypatch.setattr(cb, "_REGISTRY", subset)
    results = run_all()
    assert [r.case_id for r in results] == FAST_CASES[:3]
    assert all(r.passed for r in results)
    assert all(r.runtime_s >= 0 for r in results)
