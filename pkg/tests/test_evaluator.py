#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
메타 테스트, 기준 모델, 스윕, 비교 테스트
"""

import csv
import json
import os

import numpy as np
import pytest

from metavrf_toolkit.core.enums import BaselineKind, InferenceMode, ModelKind, TaskFamily
from metavrf_toolkit.managers.evaluator import (
    EvalReport,
    confidence_half_width,
    meta_test,
    run_ablation,
    run_baseline,
    sweep_basis_count,
)
from metavrf_toolkit.managers.tasks import TaskSampler
from metavrf_toolkit.managers.trainer import meta_train


def test_confidence_half_width():
    assert confidence_half_width([0.5]) == 0.0
    values = [1.0, 2.0, 3.0, 4.0]
    expected = 1.96 * np.std(values, ddof=1) / 2.0
    assert confidence_half_width(values) == pytest.approx(expected)


def test_report_from_metrics():
    report = EvalReport.from_metrics("accuracy", [1.0, 0.5], {"seed": 3})
    assert report.mean == pytest.approx(0.75)
    assert report.episodes == 2
    assert report.to_dict()["config"] == {"seed": 3}
    assert "accuracy" in report.summary()


@pytest.fixture
def trained_blobs(blobs_config):
    sampler = TaskSampler.from_config(blobs_config)
    return meta_train(blobs_config, sampler), sampler


def test_meta_test_report(trained_blobs, tmp_path):
    result, sampler = trained_blobs
    checksum = result.model.params.checksum()
    report = meta_test(result.checkpoint_path, 4, sampler=sampler, output_dir=str(tmp_path / "eval"))

    assert report.metric == "accuracy" and report.episodes == 4
    assert all(0.0 <= m <= 1.0 for m in report.metrics)
    assert report.config["param_checksum"] == checksum
    with open(tmp_path / "eval" / "report.json", encoding="utf-8") as f:
        saved = json.load(f)
    assert saved["mean"] == pytest.approx(report.mean)
    assert saved["config"]["eval_ways"] == 3


def test_meta_test_does_not_touch_parameters(trained_blobs):
    result, sampler = trained_blobs
    checksum = result.model.params.checksum()
    meta_test(result.model, 3, sampler=sampler)
    assert result.model.params.checksum() == checksum


def test_workers_do_not_change_results(trained_blobs):
    result, sampler = trained_blobs
    serial = meta_test(result.model, 6, sampler=sampler, seed=2)
    parallel = meta_test(result.model, 6, sampler=sampler, seed=2, workers=3)
    assert serial.metrics == parallel.metrics


def test_evaluation_ways_and_shots_can_differ(trained_blobs):
    result, sampler = trained_blobs
    report = meta_test(result.model, 2, ways=4, shots=3, sampler=sampler)
    assert report.config["eval_ways"] == 4 and report.config["eval_shots"] == 3


def test_task_family_mismatch(trained_blobs):
    result, sampler = trained_blobs
    with pytest.raises(ValueError):
        meta_test(result.model, 2, sampler=sampler, task=TaskFamily.SINE)
    with pytest.raises(ValueError):
        meta_test(result.model, 0, sampler=sampler)


def test_sine_curve_file(sine_config, tmp_path):
    result = meta_train(sine_config)
    with pytest.raises(ValueError):
        meta_test(result.model, 2, ways=3)

    out = tmp_path / "curve"
    report = meta_test(result.model, 7, shots=10, output_dir=str(out))
    assert report.metric == "mse" and report.mean >= 0.0
    with open(out / "curve.csv", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["task", "x", "y_true", "y_pred"]
    assert len(rows) == 1 + 5 * 100
    assert {row[0] for row in rows[1:]} == {"0", "1", "2", "3", "4"}


def test_fixed_rff_baseline_defaults_to_2048_bases(blobs_config, tmp_path):
    out = tmp_path / "rff"
    report = run_baseline(blobs_config, BaselineKind.RFF, episodes=2, output_dir=str(out))
    assert report.config["model"] == ModelKind.FIXED_RFF.value
    assert report.config["bases"] == 2048
    assert (out / "checkpoint.mvrf").exists() and (out / "report.json").exists()


def test_exact_rbf_baseline(sine_config):
    report = run_baseline(sine_config, BaselineKind.RBF, episodes=2)
    assert report.config["model"] == ModelKind.EXACT_RBF.value
    assert np.isfinite(report.mean)
    with pytest.raises(ValueError):
        run_baseline(sine_config, ModelKind.METAVRF)


def test_exact_rbf_single_support_point(sine_config):
    from metavrf_toolkit.models.metavrf import MetaVRFModel

    model = MetaVRFModel(sine_config.with_overrides(model=ModelKind.EXACT_RBF))
    report = meta_test(model, 3, shots=1)
    assert report.episodes == 3
    assert np.all(np.isfinite(report.metrics))


def test_sweep_writes_csv(blobs_config, tmp_path):
    out = tmp_path / "sweep"
    rows = sweep_basis_count(blobs_config, [4, 12], episodes=2, output_dir=str(out))
    assert [row.bases for row in rows] == [4, 12]
    with open(out / "sweep.csv", encoding="utf-8") as f:
        lines = list(csv.reader(f))
    assert lines[0] == ["D", "metric", "ci95"]
    assert [line[0] for line in lines[1:]] == ["4", "12"]
    assert os.path.isdir(out / "bases_4")
    with pytest.raises(ValueError):
        sweep_basis_count(blobs_config, [], episodes=2)


def test_more_bases_are_no_worse(blobs_config):
    few, many = sweep_basis_count(blobs_config, [8, 512], episodes=100)
    assert many.metric >= few.metric - (few.ci95 + many.ci95)


def test_ablation_compares_all_modes(sine_config, tmp_path):
    out = tmp_path / "compare"
    reports = run_ablation(sine_config, episodes=2, output_dir=str(out))
    assert set(reports) == set(InferenceMode)
    with open(out / "compare.json", encoding="utf-8") as f:
        assert set(json.load(f)) == {"none", "lstm", "bilstm"}
    assert (out / "mode_bilstm" / "report.json").exists()


def test_untrained_model_on_identical_blobs_is_at_chance(blobs_config):
    from metavrf_toolkit.models.metavrf import MetaVRFModel

    config = blobs_config.with_overrides(ways=5, shots=1, query=15, blob_separation=0.0,
                                         blob_classes=[6, 3, 5], blob_examples=16)
    report = meta_test(MetaVRFModel(config), 500, sampler=TaskSampler.from_config(config))
    assert 0.16 <= report.mean <= 0.24
