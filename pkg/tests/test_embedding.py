#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
특징 추출 네트워크 테스트
"""

import numpy as np
import pytest

from metavrf_toolkit.core.errors import ShapeError
from metavrf_toolkit.models.embedding import (
    count_parameters,
    dropout_mask,
    embed_cnn,
    embed_mlp,
    init_cnn_embedder,
    init_mlp_embedder,
)


def test_mlp_embedder_shape_and_relu(rng):
    params = init_mlp_embedder(rng, input_dim=1, hidden=7)
    out = embed_mlp(rng.uniform(-5, 5, size=10), params)
    assert out.shape == (10, 7)
    assert np.all(out >= 0.0)
    assert count_parameters(params, "embed/") == 1 * 7 + 7 + 7 * 7 + 7


def test_cnn_embedder_flattens_to_four_channels_worth(rng):
    params = init_cnn_embedder(rng, channels=2)
    out = embed_cnn(rng.random((3, 28, 28)), params)
    assert out.shape == (3, 8)


def test_cnn_embedder_rejects_wrong_image_size(rng):
    params = init_cnn_embedder(rng, channels=2)
    with pytest.raises(ShapeError):
        embed_cnn(rng.random((2, 10, 10)), params)


def test_dropout_mask_scaling(rng):
    mask = dropout_mask(rng, (20000,), 0.9)
    assert set(np.unique(mask)) <= {0.0, 1.0 / 0.9}
    assert mask.mean() == pytest.approx(1.0, abs=0.02)
    for bad in (0.0, 1.5):
        with pytest.raises(ValueError):
            dropout_mask(rng, (3,), bad)


@pytest.mark.parametrize("keep_prob", [0.9, 0.5])
def test_dropout_zero_fraction_is_binomial(rng, keep_prob):
    units = 100_000
    dropped = np.mean(dropout_mask(rng, (units,), keep_prob) == 0.0)
    sigma = np.sqrt(keep_prob * (1.0 - keep_prob) / units)
    assert abs(dropped - (1.0 - keep_prob)) <= 5.0 * sigma
    assert not np.any(dropout_mask(rng, (units,), 1.0) == 0.0)


def test_train_mode_needs_rng(rng):
    params = init_cnn_embedder(rng, channels=2)
    with pytest.raises(ValueError):
        embed_cnn(rng.random((1, 28, 28)), params, train_mode=True)


def test_eval_mode_is_deterministic_and_train_mode_is_not(rng):
    params = init_cnn_embedder(rng, channels=4, blocks=2)
    images = rng.random((2, 8, 8))
    first = embed_cnn(images, params, image_size=8)
    np.testing.assert_array_equal(first, embed_cnn(images, params, image_size=8))
    dropped = embed_cnn(images, params, train_mode=True, rng=np.random.default_rng(1), keep_prob=0.5, image_size=8)
    assert dropped.shape == first.shape
