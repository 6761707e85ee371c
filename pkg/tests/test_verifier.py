import json
import math
from dataclasses import asdict, replace

import numpy as np
import pytest

from src.components.verifier import (PROBE, REGISTRY, THEOREM, random_density, random_sandwich_pair,
                                     random_symmetric_with_spectrum, replay_trial, run_campaign,
                                     run_campaign_with_slacks, slack_table_rows)
from src.constants import DENSITY_EIGEN_FLOOR
from src.entity.artifact_entity import FailureRecord
from src.entity.config_entity import TrialSpec
from src.exception import BadParameter
from src.utils.main_utils import dump_json

SMALL = TrialSpec(seed=7, trials=12, dim_range=(2, 4), density_dim_range=(2, 3))


def _records_json(records) -> str:
    return dump_json([asdict(record) for record in records])


def test_registry_kinds():
    assert len(REGISTRY) == 28
    assert {name for name, kind in REGISTRY.items() if kind == PROBE} == {"corollary32", "von_neumann_bound"}
    assert all(kind in (THEOREM, PROBE) for kind in REGISTRY.values())


def test_random_symmetric_with_spectrum_respects_interval():
    A = random_symmetric_with_spectrum(3, 4, 0.5, 2.0, force_endpoints=True)
    values = np.linalg.eigvalsh(A.entries)
    assert values[0] == pytest.approx(0.5, abs=1e-12)
    assert values[-1] == pytest.approx(2.0, abs=1e-12)

    inside = np.linalg.eigvalsh(random_symmetric_with_spectrum(4, 5, 0.5, 2.0, force_endpoints=False).entries)
    assert np.all(inside >= 0.5 - 1e-12) and np.all(inside <= 2.0 + 1e-12)
    with pytest.raises(BadParameter):
        random_symmetric_with_spectrum(1, 3, 2.0, 2.0)


def test_random_density_is_a_state():
    rho = random_density(11, 4)
    values = np.linalg.eigvalsh(rho.rho.entries)
    assert rho.rho.trace == pytest.approx(1.0, abs=1e-14)
    assert values[0] >= 0.5 * DENSITY_EIGEN_FLOOR
    assert rho.m == pytest.approx(values[0], abs=1e-12)


def test_random_sandwich_pair_carries_hull_or_requested_interval():
    exact = random_sandwich_pair(5, 3, 0.5, 2.5, force_endpoints=True)
    assert exact.m == pytest.approx(0.5, abs=1e-10)
    assert exact.M == pytest.approx(2.5, abs=1e-10)

    widened = random_sandwich_pair(6, 3, 0.5, 2.5, widened=True)
    assert (widened.m, widened.M) == (0.5, 2.5)
    with pytest.raises(BadParameter):
        random_sandwich_pair(6, 3, 0.0, 2.5)


def test_trial_spec_validation():
    with pytest.raises(BadParameter):
        TrialSpec(trials=0)
    with pytest.raises(BadParameter):
        TrialSpec(dim_range=(1, 3))
    with pytest.raises(BadParameter):
        TrialSpec(map_set=("corner", "transpose"))
    with pytest.raises(BadParameter):
        TrialSpec(tolerance=0.0)


def test_trial_spec_from_yaml_applies_overrides(monkeypatch):
    monkeypatch.delenv("OPINEQ_SEED", raising=False)
    spec = TrialSpec.from_yaml({"seed": 3, "trials": 50, "maps": ["corner"]}, trials=5, workers=None)
    assert (spec.seed, spec.trials, spec.map_set) == (3, 5, ("corner",))

    monkeypatch.setenv("OPINEQ_SEED", "99")
    assert TrialSpec.from_yaml({"seed": 3}).seed == 99


@pytest.fixture(scope="module")
def small_campaign():
    return run_campaign_with_slacks(SMALL)


def test_small_campaign_has_no_theorem_failures(small_campaign):
    report, _ = small_campaign
    theorem_failures = [f for f in report.failures if f.kind == THEOREM]
    assert report.theorem_failures == 0, [(f.inequality, f.trial, f.slack, f.inputs.get("error"))
                                          for f in theorem_failures]


def test_every_inequality_is_accounted_for_in_every_trial(small_campaign):
    report, records = small_campaign
    assert set(report.summaries) == set(REGISTRY)
    for summary in report.summaries.values():
        assert summary.trials == SMALL.trials
        assert summary.passed + summary.failed + summary.skipped == SMALL.trials
    for trial in range(SMALL.trials):
        names = sorted(record.inequality for record in records if record.trial == trial)
        assert names == sorted(REGISTRY)


def test_campaign_is_deterministic(small_campaign):
    report, _ = small_campaign
    assert dump_json(run_campaign(SMALL).to_dict()) == dump_json(report.to_dict())


def test_replayed_trial_matches_campaign(small_campaign):
    _, records = small_campaign
    for index in (0, 5, SMALL.trials - 1):
        replayed = replay_trial(SMALL, index)
        assert _records_json(replayed.records) == _records_json([r for r in records if r.trial == index])


def test_replay_rejects_out_of_range_index():
    with pytest.raises(BadParameter):
        replay_trial(SMALL, SMALL.trials)
    with pytest.raises(BadParameter):
        replay_trial(SMALL, -1)


def test_parallel_campaign_matches_serial(small_campaign):
    report, _ = small_campaign
    parallel = run_campaign(replace(SMALL, workers=2))
    assert dump_json(parallel.to_dict()) == dump_json(report.to_dict())


def test_slack_rows_exclude_skipped_records(small_campaign):
    _, records = small_campaign
    rows = slack_table_rows(records)
    assert len(rows) == sum(not record.skipped for record in records)
    assert set(rows[0]) == {"inequality", "trial", "dim", "slack", "pass"}


@pytest.mark.slow
def test_default_campaign_has_no_theorem_failures():
    report = run_campaign(TrialSpec())
    assert report.trials == 1000
    assert report.theorem_failures == 0, [(f.inequality, f.trial, f.slack) for f in report.failures
                                          if f.kind == THEOREM][:10]


@pytest.mark.slow
def test_default_seed_campaign_of_three_hundred_trials():
    report = run_campaign(TrialSpec(trials=300))
    assert report.theorem_failures == 0, [(f.inequality, f.trial, f.slack) for f in report.failures
                                          if f.kind == THEOREM][:10]


def test_failure_record_with_non_finite_slack_is_valid_json():
    record = FailureRecord(inequality="prop31_lower", kind=THEOREM, trial=3, trial_seed=11, dim=2,
                           slack=math.nan, tolerance=1e-8, inputs={"gaps": [1.0, -math.inf]})
    text = dump_json(asdict(record))
    assert "NaN" not in text and "Infinity" not in text
    parsed = json.loads(text)
    assert parsed["slack"] is None
    assert parsed["inputs"]["gaps"] == [1.0, None]
    assert parsed["trial"] == 3
