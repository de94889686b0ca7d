#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
커널 릿지 회귀 기저 학습기 테스트
"""

import numpy as np
import pytest

from metavrf_toolkit.core.enums import LabelEncoding
from metavrf_toolkit.core.errors import SingularSystemError
from metavrf_toolkit.engine.autodiff import Graph
from metavrf_toolkit.engine.gradcheck import grad_check
from metavrf_toolkit.models.ridge import (
    LabelMatrix,
    accuracy,
    fit,
    mse_loss,
    one_hot,
    predict,
    ridge_lambda,
    softmax_xent_loss,
)


def test_zero_kernel_returns_targets_over_lambda():
    y = np.array([[1.0, -2.0, 0.5]])
    solution = fit(np.zeros((3, 3)), y, 2.0)
    np.testing.assert_allclose(solution.alpha, y / 2.0)
    assert solution.support_count == 3


def test_fit_matches_closed_form(rng):
    z = rng.normal(size=(5, 4))
    k = z @ z.T
    y = rng.normal(size=(2, 5))
    solution = fit(k, y, 0.3)
    expected = y @ np.linalg.inv(k + 0.3 * np.eye(5))
    np.testing.assert_allclose(solution.alpha, expected, atol=1e-10)

    zq = rng.normal(size=(3, 4))
    np.testing.assert_allclose(predict(solution, z @ zq.T), expected @ (z @ zq.T), atol=1e-10)


def test_singular_system_raises():
    with pytest.raises(SingularSystemError) as excinfo:
        fit(np.zeros((3, 3)), np.ones((1, 3)), 0.0)
    assert "λ" in str(excinfo.value)


def test_negative_lambda_rejected():
    with pytest.raises(ValueError):
        fit(np.eye(2), np.ones((1, 2)), -1.0)


def test_one_hot_columns():
    labels = one_hot(np.array([2, 0, 1, 2]), 3)
    assert labels.encoding is LabelEncoding.ONE_HOT
    np.testing.assert_array_equal(labels.values.sum(axis=0), np.ones(4))
    np.testing.assert_array_equal(np.argmax(labels.values, axis=0), [2, 0, 1, 2])
    with pytest.raises(ValueError):
        one_hot(np.array([0, 3]), 3)
    with pytest.raises(ValueError):
        LabelMatrix(np.array([[1.0, 1.0], [1.0, 0.0]]), LabelEncoding.ONE_HOT)


def test_losses_and_accuracy():
    assert float(softmax_xent_loss(np.zeros((4, 3)), np.array([0, 1, 3]))) == pytest.approx(np.log(4.0))
    assert float(mse_loss(np.array([[1.0, 2.0]]), np.array([[1.0, 4.0]]))) == pytest.approx(2.0)
    logits = np.array([[2.0, 0.0, 0.1], [1.0, 3.0, 0.0]])
    assert accuracy(logits, np.array([0, 1, 1])) == pytest.approx(2.0 / 3.0)


def test_gradient_through_solve_matches_finite_differences(rng):
    graph = Graph()
    z = graph.parameter("z", rng.normal(size=(5, 4)))
    zq = graph.constant(rng.normal(size=(3, 4)))
    rho = graph.parameter("rho", np.array(0.2))
    solution = fit(z @ z.T, graph.constant(rng.normal(size=(1, 5))), ridge_lambda(rho))
    loss = mse_loss(predict(solution, z @ zq.T), graph.constant(rng.normal(size=(1, 3))))
    assert grad_check(graph, loss) <= 1e-4


def test_identity_kernel():
    y = np.array([[1.0, 2.0, 3.0], [0.0, -1.0, 4.0]])
    np.testing.assert_allclose(fit(np.eye(3), y, 0.0).alpha, y)
    np.testing.assert_allclose(fit(np.eye(3), y, 1.0).alpha, y / 2.0)


@pytest.mark.parametrize("seed", range(100))
def test_solution_residual(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(8, 8))
    k = a @ a.T + 0.1 * np.eye(8)
    y = rng.normal(size=(3, 8))
    lam = rng.uniform(0.1, 1.0)
    alpha = fit(k, y, lam).alpha
    assert np.max(np.abs(alpha @ (lam * np.eye(8) + k) - y)) <= 1e-10


def test_support_permutation_equivariance(rng):
    z, zq = rng.normal(size=(8, 6)), rng.normal(size=(4, 6))
    y = rng.normal(size=(2, 8))
    perm = rng.permutation(8)
    solution = fit(z @ z.T, y, 0.5)
    permuted = fit(z[perm] @ z[perm].T, y[:, perm], 0.5)
    np.testing.assert_allclose(permuted.alpha, solution.alpha[:, perm], rtol=0, atol=1e-12)
    np.testing.assert_allclose(predict(permuted, z[perm] @ zq.T), predict(solution, z @ zq.T), rtol=0, atol=1e-12)


def test_interpolates_support_as_lambda_vanishes(rng):
    z = rng.normal(size=(5, 8))
    k = z @ z.T
    y = rng.normal(size=(1, 5))
    np.testing.assert_allclose(predict(fit(k, y, 1e-10), k), y, atol=1e-6)


def test_separated_one_hot_features_classify_every_query():
    features = np.eye(5)
    solution = fit(features @ features.T, one_hot(np.arange(5), 5), 1e-3)
    queries = features[[3, 0, 4, 1, 2]] * 0.9
    logits = predict(solution, features @ queries.T)
    np.testing.assert_array_equal(np.argmax(logits, axis=0), [3, 0, 4, 1, 2])
    assert accuracy(logits, np.array([3, 0, 4, 1, 2])) == 1.0


def test_cross_entropy_matches_explicit_loop(rng):
    logits = rng.normal(size=(4, 6))
    labels = rng.integers(0, 4, size=6)
    expected = 0.0
    for j, label in enumerate(labels):
        column = logits[:, j]
        expected -= np.log(np.exp(column[label]) / np.sum(np.exp(column)))
    assert float(softmax_xent_loss(logits, labels)) == pytest.approx(expected / 6, abs=1e-10)
    assert float(softmax_xent_loss(np.array([[50.0], [0.0]]), np.array([0]))) <= 1e-8
