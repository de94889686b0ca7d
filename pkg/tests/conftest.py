#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit 테스트 공용 픽스처
"""

import os

import imageio.v3 as iio
import numpy as np
import pytest

from metavrf_toolkit.core.config import ExperimentConfig
from metavrf_toolkit.core.enums import InferenceMode, TaskFamily
from metavrf_toolkit.core.logger import set_log_level

OMNIGLOT_ALPHABETS = 2
OMNIGLOT_CHARACTERS = 3
OMNIGLOT_DRAWINGS = 4
OMNIGLOT_RAW_SIZE = 10


@pytest.fixture(autouse=True)
def quiet_logger():
    set_log_level("WARNING")
    yield
    set_log_level("INFO")


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def blobs_config(tmp_path):
    """몇 초 안에 학습이 끝나는 작은 블롭 분류 설정"""
    return ExperimentConfig(
        task=TaskFamily.BLOBS,
        mode=InferenceMode.BILSTM,
        ways=3,
        shots=2,
        query=3,
        bases=16,
        iterations=3,
        batch=2,
        lr=1e-3,
        embedding_dim=8,
        context_dim=6,
        inference_width=8,
        blob_dim=4,
        blob_classes=[6, 3, 4],
        blob_examples=8,
        log_every=1,
        eval_episodes=3,
        out=str(tmp_path / "run"),
    )


@pytest.fixture
def sine_config(tmp_path):
    """작은 사인 회귀 설정"""
    return ExperimentConfig(
        task=TaskFamily.SINE,
        mode=InferenceMode.LSTM,
        ways=1,
        shots=3,
        query=4,
        bases=8,
        iterations=3,
        batch=2,
        lr=1e-3,
        embedding_dim=6,
        context_dim=5,
        inference_width=6,
        log_every=2,
        eval_episodes=3,
        out=str(tmp_path / "sine"),
    )


@pytest.fixture
def omniglot_root(tmp_path):
    """root/<alphabet>/<character>/*.png 형태의 합성 Omniglot 트리"""
    root = tmp_path / "omniglot"
    images = np.random.default_rng(1)
    for a in range(OMNIGLOT_ALPHABETS):
        for c in range(OMNIGLOT_CHARACTERS):
            character_dir = root / f"alphabet_{a}" / f"character{c:02d}"
            os.makedirs(character_dir)
            for d in range(OMNIGLOT_DRAWINGS):
                pixels = images.integers(0, 256, size=(OMNIGLOT_RAW_SIZE, OMNIGLOT_RAW_SIZE), dtype=np.uint8)
                iio.imwrite(str(character_dir / f"{d:02d}.png"), pixels)
    return str(root)
