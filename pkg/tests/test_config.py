#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
실험 설정 테스트
"""

import json

import pytest

from metavrf_toolkit.core.config import (
    ExperimentConfig,
    create_sample_config,
    load_config_with_fallback,
    resolve_data_root,
)
from metavrf_toolkit.core.enums import DATA_ROOT_ENV, InferenceMode, ModelKind, ScaleMode, TaskFamily


def test_presets_per_task():
    sine = ExperimentConfig.preset(TaskFamily.SINE)
    assert sine.ways == 1 and sine.shots == 5 and sine.batch == 6
    omniglot = ExperimentConfig.preset("omniglot", shots=5)
    assert omniglot.task is TaskFamily.OMNIGLOT
    assert omniglot.shots == 5 and omniglot.embedding_dim == 4 * omniglot.cnn_channels
    assert ExperimentConfig.preset(TaskFamily.BLOBS, ways=None).ways == 5


def test_default_config_is_valid():
    is_valid, errors = ExperimentConfig().validate()
    assert is_valid and errors == []


def test_validate_collects_every_error():
    config = ExperimentConfig(bases=0, batch=0, lr=0.0, keep_prob=1.5, task=TaskFamily.BLOBS, ways=1)
    is_valid, errors = config.validate()
    assert not is_valid
    assert len(errors) == 5


def test_omniglot_needs_data_and_matching_embedding(tmp_path):
    _, errors = ExperimentConfig.preset(TaskFamily.OMNIGLOT).validate()
    assert any(DATA_ROOT_ENV in e for e in errors)

    config = ExperimentConfig.preset(TaskFamily.OMNIGLOT, data_root=str(tmp_path), embedding_dim=100)
    is_valid, errors = config.validate()
    assert not is_valid and len(errors) == 1


def test_enum_strings_are_converted():
    config = ExperimentConfig(task="blobs", model="exact-rbf", mode="none", scale_mode="unbiased")
    assert config.task is TaskFamily.BLOBS
    assert config.model is ModelKind.EXACT_RBF
    assert config.mode is InferenceMode.NONE
    assert config.scale_mode is ScaleMode.UNBIASED
    with pytest.raises(ValueError):
        ExperimentConfig(mode="gru")


def test_posterior_input_dim_follows_mode():
    config = ExperimentConfig(embedding_dim=10, context_dim=7)
    assert config.with_overrides(mode=InferenceMode.NONE).posterior_input_dim == 10
    assert config.with_overrides(mode=InferenceMode.LSTM).posterior_input_dim == 7
    assert config.with_overrides(mode=InferenceMode.BILSTM).posterior_input_dim == 14


def test_file_round_trip(tmp_path, blobs_config):
    path = str(tmp_path / "nested" / "config.json")
    assert blobs_config.save_to_file(path)
    assert ExperimentConfig.from_file(path) == blobs_config


def test_unknown_keys_are_ignored():
    config = ExperimentConfig.from_dict({"task": "sine", "bases": 32, "legacy_option": True})
    assert config.bases == 32


def test_from_file_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        ExperimentConfig.from_file(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ValueError):
        ExperimentConfig.from_file(str(broken))


def test_fallback_to_preset(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    assert load_config_with_fallback(str(broken), TaskFamily.BLOBS) == ExperimentConfig.preset(TaskFamily.BLOBS)
    assert load_config_with_fallback(None).task is TaskFamily.SINE


def test_resolve_data_root(monkeypatch):
    monkeypatch.delenv(DATA_ROOT_ENV, raising=False)
    assert resolve_data_root() is None
    monkeypatch.setenv(DATA_ROOT_ENV, "/data/from-env")
    assert resolve_data_root() == "/data/from-env"
    assert resolve_data_root("/data/from-cli") == "/data/from-cli"


def test_create_sample_config(tmp_path):
    path = tmp_path / "sample.json"
    assert create_sample_config(str(path), TaskFamily.BLOBS)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["task"] == "blobs" and data["mode"] == "bilstm"
