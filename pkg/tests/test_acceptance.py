#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
전체 규모 실행 테스트 (pytest -m slow)
"""

import os

import pytest

from metavrf_toolkit.core.config import ExperimentConfig
from metavrf_toolkit.core.enums import (
    DATA_ROOT_ENV,
    FIXED_RFF_DEFAULT_BASES,
    BaselineKind,
    InferenceMode,
    ModelKind,
    TaskFamily,
)
from metavrf_toolkit.managers.evaluator import meta_test, run_ablation, run_baseline
from metavrf_toolkit.managers.tasks import TaskSampler
from metavrf_toolkit.managers.trainer import meta_train

pytestmark = pytest.mark.slow


def test_sine_more_shots_lower_error_and_beats_fixed_rff(tmp_path):
    config = ExperimentConfig.preset(TaskFamily.SINE, out=str(tmp_path / "sine"), eval_episodes=100)
    sampler = TaskSampler.from_config(config)
    result = meta_train(config, sampler)

    ten_shot = meta_test(result.model, 100, shots=10, sampler=sampler)
    three_shot = meta_test(result.model, 100, shots=3, sampler=sampler)
    assert ten_shot.mean < three_shot.mean

    first, last = result.losses[:100], result.losses[-100:]
    assert sum(last) / len(last) * 10.0 <= sum(first) / len(first)

    rff_config = config.with_overrides(model=ModelKind.FIXED_RFF, bases=FIXED_RFF_DEFAULT_BASES)
    rff = meta_train(rff_config, sampler, output_dir="", save=False)
    baseline = meta_test(rff.model, 100, shots=10, sampler=sampler)
    assert ten_shot.mean * 5.0 <= baseline.mean


def test_blobs_five_way_one_shot(tmp_path):
    config = ExperimentConfig.preset(TaskFamily.BLOBS, out=str(tmp_path / "blobs"))
    sampler = TaskSampler.from_config(config)
    result = meta_train(config, sampler)
    report = meta_test(result.model, 500, sampler=sampler)
    assert report.mean >= 0.9

    wider = meta_test(result.model, 100, ways=10, sampler=sampler)
    assert wider.mean >= 5 * 0.1

    rff = run_baseline(config, BaselineKind.RFF, episodes=500, sampler=sampler)
    assert report.mean >= rff.mean


@pytest.mark.skipif(not os.environ.get(DATA_ROOT_ENV), reason=f"{DATA_ROOT_ENV} 가 설정되지 않았습니다")
def test_omniglot_reduced_run(tmp_path):
    config = ExperimentConfig.preset(TaskFamily.OMNIGLOT, data_root=os.environ[DATA_ROOT_ENV],
                                     out=str(tmp_path / "omniglot"))
    reports = run_ablation(config, 1000, modes=(InferenceMode.NONE, InferenceMode.BILSTM),
                           output_dir=config.out)
    assert reports[InferenceMode.BILSTM].mean >= 0.9
    assert reports[InferenceMode.BILSTM].mean >= reports[InferenceMode.NONE].mean
