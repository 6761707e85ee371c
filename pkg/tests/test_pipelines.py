import json
import os

import pandas as pd
import pytest

from src.entity.config_entity import (CheckConfig, EntropyConfig, FuzzOutputConfig, ReferenceExamplesConfig,
                                      TrialSpec)
from src.exception import BadParameter, MatrixFileError, NotPositiveDefinite
from src.pipline.check_pipeline import CheckPipeline, map_from_spec
from src.pipline.entropy_pipeline import EntropyPipeline
from src.pipline.fuzz_pipeline import SLACK_TABLE_COLUMNS, FuzzPipeline
from src.pipline.reference_examples_pipeline import ReferenceExamplesPipeline


def test_reference_examples_all_match():
    artifact = ReferenceExamplesPipeline().run_pipeline()
    assert artifact.passed, [check for check in artifact.checks if not check.passed]
    assert {check.section for check in artifact.checks} == {"counterexample", "vector_state_cubic",
                                                            "kantorovich_trace"}


def test_reference_examples_default_config_is_not_shared():
    first, second = ReferenceExamplesPipeline(), ReferenceExamplesPipeline()
    assert first.config is not second.config
    assert first.config == second.config


def test_reference_examples_reject_unknown_section():
    with pytest.raises(BadParameter):
        ReferenceExamplesPipeline(ReferenceExamplesConfig(sections=["tetrahedron"])).run_pipeline()


def test_check_pipeline_on_cubic_example(fixture_path):
    config = CheckConfig(matrix_file_path=fixture_path("cubic_vector_state_matrix.json"),
                         map_spec=f"vecstate:{fixture_path('cubic_vector_state_x.json')}",
                         function_spec="power:3", m=0.25, M=3.8)
    artifact = CheckPipeline(config).run_pipeline()
    assert artifact.holds
    assert (artifact.alpha, artifact.beta) == pytest.approx((1.5, 22.8))
    assert [report.label for report in artifact.reports][-2:] == ["theorem2_lower", "theorem2_upper"]
    assert artifact.informational[0].holds


def test_check_pipeline_notes_failing_plain_inequality(fixture_path):
    config = CheckConfig(matrix_file_path=fixture_path("cdj_counterexample.json"), map_spec="corner",
                         function_spec="power:4")
    artifact = CheckPipeline(config).run_pipeline()
    assert artifact.holds
    assert not artifact.informational[0].holds
    assert any("does not hold" in note for note in artifact.notes)


def test_check_pipeline_skips_theorem2_for_sign_changing_function(write_matrix_file):
    path = write_matrix_file({"dim": 2, "data": [0.5, 0.1, 0.1, 2.0]})
    artifact = CheckPipeline(CheckConfig(matrix_file_path=path, map_spec="trace", function_spec="log")).run_pipeline()
    assert artifact.holds
    assert any(note.startswith("theorem 2 skipped") for note in artifact.notes)


def test_check_pipeline_kantorovich(fixture_path):
    config = CheckConfig(matrix_file_path=fixture_path("kantorovich_trace_example.json"), map_spec="trace",
                         function_spec="power:-1", m=2.0, M=8.0, kantorovich=True)
    artifact = CheckPipeline(config).run_pipeline()
    labels = [report.label for report in artifact.reports]
    assert {"improved_kantorovich", "kantorovich_improvement", "classical_kantorovich"} <= set(labels)
    assert artifact.holds


@pytest.mark.parametrize("spec", ["corner:x", "vecstate", "rotation"])
def test_map_from_spec_errors(spec):
    with pytest.raises(BadParameter):
        map_from_spec(spec, 3)


def test_map_from_spec_defaults():
    assert map_from_spec("corner", 3).out_dim == 2
    assert map_from_spec("corner:1", 3).out_dim == 1
    assert map_from_spec("trace", 4).out_dim == 1
    assert map_from_spec("identity", 4).out_dim == 4


def test_fuzz_pipeline_writes_report_and_slack_table(tmp_path):
    spec = TrialSpec(seed=3, trials=4, dim_range=(2, 3), density_dim_range=(2, 3))
    output = FuzzOutputConfig(report_file_path=str(tmp_path / "report.json"),
                              slack_table_file_path=str(tmp_path / "slacks.csv"))
    artifact = FuzzPipeline(spec, output).run_pipeline()

    with open(artifact.report_file_path, encoding="utf-8") as file:
        report = json.load(file)
    assert report["trials"] == 4
    assert report["theorem_failures"] == 0
    assert set(report["summaries"]) == set(artifact.report.summaries)

    table = pd.read_csv(artifact.slack_table_file_path)
    assert list(table.columns) == SLACK_TABLE_COLUMNS
    assert set(table["trial"]) == {0, 1, 2, 3}


def test_fuzz_output_defaults_to_artifact_directory(tmp_path):
    output = FuzzOutputConfig(output_dir=str(tmp_path))
    assert output.report_file_path == os.path.join(str(tmp_path), "campaign_report.json")
    assert output.slack_table_file_path is None


def test_entropy_pipeline_on_random_densities():
    artifact = EntropyPipeline(EntropyConfig(random_count=5, p=0.5, seed=17)).run_pipeline()
    assert len(artifact.rows) == 5
    assert artifact.holds
    for row in artifact.rows:
        assert 2 <= row.dim <= 6
        assert row.entropy >= 0.0 and row.tsallis_entropy >= 0.0


def test_entropy_pipeline_on_file(fixture_path):
    config = EntropyConfig(rho_file_path=fixture_path("maximally_mixed_qubit.json"), p=0.5)
    (row,) = EntropyPipeline(config).run_pipeline().rows
    assert row.m == pytest.approx(0.5) and row.M == pytest.approx(0.5)
    assert row.corollary32.holds and row.von_neumann.holds


@pytest.mark.parametrize("config, error", [
    (EntropyConfig(), BadParameter),
    (EntropyConfig(rho_file_path="x.json", random_count=2), BadParameter),
    (EntropyConfig(random_count=0), BadParameter),
    (EntropyConfig(rho_file_path="absent.json"), MatrixFileError),
])
def test_entropy_pipeline_errors(config, error):
    with pytest.raises(error):
        EntropyPipeline(config).run_pipeline()


def test_entropy_pipeline_rejects_singular_density(write_matrix_file):
    path = write_matrix_file({"dim": 2, "data": [1.0, 0.0, 0.0, 0.0]})
    with pytest.raises(NotPositiveDefinite):
        EntropyPipeline(EntropyConfig(rho_file_path=path)).run_pipeline()
