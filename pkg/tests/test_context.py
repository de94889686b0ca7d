#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
문맥 LSTM 테스트
"""

import numpy as np
import pytest
from scipy.special import expit

from metavrf_toolkit.core.enums import Direction
from metavrf_toolkit.core.errors import ShapeError
from metavrf_toolkit.models.context import (
    BACKWARD_PREFIX,
    FORWARD_PREFIX,
    init_lstm_params,
    lstm_cell,
    pool_support,
    step_sequence,
    zero_state,
)


def _random_params(rng, input_dim, hidden, prefix=FORWARD_PREFIX):
    return {k: rng.normal(scale=0.5, size=v.shape) for k, v in init_lstm_params(rng, input_dim, hidden, prefix).items()}


def test_lstm_cell_matches_reference(rng):
    params = _random_params(rng, 3, 2)
    x, h, c = rng.normal(size=3), rng.normal(size=2), rng.normal(size=2)
    h_next, c_next = lstm_cell(x, (h, c), params)

    z = np.concatenate([x, h]) @ params[f"{FORWARD_PREFIX}/w"] + params[f"{FORWARD_PREFIX}/b"]
    i, f, o, g = expit(z[0:2]), expit(z[2:4]), expit(z[4:6]), np.tanh(z[6:8])
    expected_c = f * c + i * g
    np.testing.assert_allclose(c_next, expected_c)
    np.testing.assert_allclose(h_next, o * np.tanh(expected_c))


def test_lstm_cell_checks_state_size(rng):
    params = _random_params(rng, 3, 2)
    with pytest.raises(ShapeError):
        lstm_cell(rng.normal(size=3), (np.zeros(3), np.zeros(3)), params)
    with pytest.raises(ShapeError):
        lstm_cell(rng.normal(size=4), (np.zeros(2), np.zeros(2)), params)


def test_pool_support_means_rows():
    np.testing.assert_allclose(pool_support(np.array([[1.0, 2.0], [3.0, 6.0]])), [2.0, 4.0])
    with pytest.raises(ValueError):
        pool_support(np.zeros((0, 2)))


def test_vanilla_sequence_carries_state(rng):
    params = _random_params(rng, 3, 4)
    pooled = [rng.normal(size=3) for _ in range(3)]
    outputs, final = step_sequence(pooled, zero_state(4), params)
    assert len(outputs) == 3
    assert final.direction is Direction.VANILLA
    np.testing.assert_allclose(final.h, outputs[-1])

    again, _ = step_sequence(pooled[:1], final, params)
    fresh, _ = step_sequence(pooled[:1], zero_state(4), params)
    assert not np.allclose(again[0], fresh[0])


def test_split_batches_equal_one_long_sequence(rng):
    params = _random_params(rng, 3, 4)
    pooled = [rng.normal(size=3) for _ in range(6)]
    whole, whole_final = step_sequence(pooled, zero_state(4), params)

    first, carried = step_sequence(pooled[:3], zero_state(4), params)
    second, final = step_sequence(pooled[3:], carried.detach(), params)
    np.testing.assert_array_equal(np.stack(first + second), np.stack(whole))
    np.testing.assert_array_equal(final.h, whole_final.h)
    np.testing.assert_array_equal(final.c, whole_final.c)


def test_bidirectional_sequence(rng):
    params = _random_params(rng, 3, 2)
    params.update(_random_params(rng, 3, 2, BACKWARD_PREFIX))
    pooled = [rng.normal(size=3) for _ in range(4)]
    outputs, final = step_sequence(pooled, zero_state(2, Direction.BIDIRECTIONAL), params)

    assert all(o.shape == (4,) for o in outputs)
    last_backward, last_cell = lstm_cell(pooled[-1], (np.zeros(2), np.zeros(2)), params, BACKWARD_PREFIX)
    np.testing.assert_allclose(outputs[-1][2:], last_backward)
    np.testing.assert_allclose(final.h_backward, last_backward)
    np.testing.assert_allclose(final.c_backward, last_cell)
    np.testing.assert_allclose(final.output, np.concatenate([final.h, final.h_backward]))


def test_detach_copies_arrays(rng):
    state = zero_state(3, Direction.BIDIRECTIONAL)
    detached = state.detach()
    detached.h[0] = 1.0
    assert state.h[0] == 0.0
    assert detached.hidden_size == 3


def test_empty_sequence_rejected(rng):
    with pytest.raises(ValueError):
        step_sequence([], zero_state(2), _random_params(rng, 3, 2))


def test_zero_parameters_halve_the_cell(rng):
    params = {k: np.zeros_like(v) for k, v in init_lstm_params(rng, 3, 2).items()}
    h, c = lstm_cell(rng.normal(size=3), (np.ones(2), np.zeros(2)), params)
    np.testing.assert_array_equal(c, np.zeros(2))
    np.testing.assert_array_equal(h, np.zeros(2))

    c0 = np.array([1.0, -2.0])
    h, c = lstm_cell(rng.normal(size=3), (np.zeros(2), c0), params)
    np.testing.assert_allclose(c, 0.5 * c0)
    np.testing.assert_allclose(h, 0.5 * np.tanh(0.5 * c0))


def test_vanilla_sequence_equals_manual_unrolling(rng):
    params = _random_params(rng, 3, 4)
    pooled = [rng.normal(size=3) for _ in range(3)]
    outputs, final = step_sequence(pooled, zero_state(4), params)

    h, c = np.zeros(4), np.zeros(4)
    for x, out in zip(pooled, outputs):
        h, c = lstm_cell(x, (h, c), params)
        np.testing.assert_allclose(out, h, atol=1e-12)
    np.testing.assert_allclose(final.c, c, atol=1e-12)


def test_pooling_matches_loop(rng):
    rows = rng.normal(size=(10, 4))
    expected = np.zeros(4)
    for row in rows:
        expected += row
    np.testing.assert_allclose(pool_support(rows), expected / 10, atol=1e-12)
