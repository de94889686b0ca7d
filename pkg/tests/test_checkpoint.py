#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
체크포인트 저장 / 로드 테스트
"""

import struct

import numpy as np
import pytest

from metavrf_toolkit.core.errors import CheckpointError
from metavrf_toolkit.managers.checkpoint import CHECKPOINT_MAGIC, CheckpointManager
from metavrf_toolkit.managers.evaluator import meta_test
from metavrf_toolkit.managers.tasks import TaskSampler
from metavrf_toolkit.managers.trainer import meta_train


@pytest.fixture
def trained(blobs_config):
    sampler = TaskSampler.from_config(blobs_config)
    return meta_train(blobs_config, sampler), sampler


def test_round_trip_preserves_everything(trained):
    result, _ = trained
    loaded = CheckpointManager.load(result.checkpoint_path)
    original = result.checkpoint

    assert loaded.iteration == original.iteration == 3
    assert loaded.config == original.config
    assert loaded.params.checksum() == original.params.checksum()
    assert loaded.state.direction is original.state.direction
    np.testing.assert_array_equal(loaded.state.h_backward, original.state.h_backward)
    assert loaded.adam_t == 3
    assert set(loaded.adam_m) == set(original.params.names())
    assert loaded.rng_state == original.rng_state


def test_loaded_model_predicts_identically(trained):
    result, sampler = trained
    model = CheckpointManager.load(result.checkpoint_path).to_model()
    task = sampler.sample(np.random.default_rng(4), "test", evaluation=True)
    np.testing.assert_array_equal(result.model.predict_task(task, np.random.default_rng(8)),
                                  model.predict_task(task, np.random.default_rng(8)))


def test_loaded_checkpoint_reproduces_report(trained):
    result, sampler = trained
    before = meta_test(result.model, 20, sampler=sampler)
    after = meta_test(result.checkpoint_path, 20, sampler=sampler)
    assert after.metrics == before.metrics
    assert (after.mean, after.ci95, after.episodes) == (before.mean, before.ci95, before.episodes)
    assert after.config == before.config


def test_bad_magic(tmp_path):
    path = tmp_path / "bad.mvrf"
    path.write_bytes(b"NOTACKPT" + b"\x00" * 32)
    with pytest.raises(CheckpointError):
        CheckpointManager.load(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(CheckpointError):
        CheckpointManager.load(str(tmp_path / "nothing.mvrf"))


def test_truncated_and_trailing_bytes(trained, tmp_path):
    result, _ = trained
    with open(result.checkpoint_path, "rb") as f:
        data = f.read()

    truncated = tmp_path / "truncated.mvrf"
    truncated.write_bytes(data[:-16])
    with pytest.raises(CheckpointError):
        CheckpointManager.load(str(truncated))

    trailing = tmp_path / "trailing.mvrf"
    trailing.write_bytes(data + b"\x00" * 8)
    with pytest.raises(CheckpointError):
        CheckpointManager.load(str(trailing))


def test_unknown_version(trained, tmp_path):
    result, _ = trained
    with open(result.checkpoint_path, "rb") as f:
        data = bytearray(f.read())
    data[len(CHECKPOINT_MAGIC):len(CHECKPOINT_MAGIC) + 4] = struct.pack("<I", 99)
    path = tmp_path / "future.mvrf"
    path.write_bytes(bytes(data))
    with pytest.raises(CheckpointError):
        CheckpointManager.load(str(path))
