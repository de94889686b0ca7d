#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
역방향 자동미분 엔진 테스트
"""

import numpy as np
import pytest

from metavrf_toolkit.core.errors import GraphError, ShapeError
from metavrf_toolkit.engine.autodiff import Graph, concat, conv2d, max_pool2d, registered_ops, sigmoid, softmax


def test_square_gradient():
    graph = Graph()
    x = graph.parameter("x", 3.0)
    grads = graph.backward(x * x)
    assert grads["x"] == pytest.approx(6.0)


def test_linear_gradient_is_input_broadcast():
    graph = Graph()
    v = np.array([[1.0], [2.0], [-0.5]])
    w = graph.parameter("w", np.ones((2, 3)))
    grads = graph.backward((w @ v).sum())
    np.testing.assert_allclose(grads["w"], np.tile(v.T, (2, 1)))


def test_unused_parameter_gets_zero_gradient():
    graph = Graph()
    x = graph.parameter("x", np.array([1.0, 2.0]))
    graph.parameter("unused", np.ones((2, 2)))
    grads = graph.backward((x * 2.0).sum())
    np.testing.assert_array_equal(grads["unused"], np.zeros((2, 2)))
    np.testing.assert_allclose(grads["x"], [2.0, 2.0])


def test_shared_parameter_accumulates():
    graph = Graph()
    w = graph.parameter("w", 2.0)
    assert graph.parameter("w") is w
    loss = w * 3.0 + w * w
    assert graph.backward(loss)["w"] == pytest.approx(3.0 + 4.0)


def test_nodes_are_topologically_ordered():
    graph = Graph()
    a = graph.parameter("a", np.ones(3))
    b = graph.constant(np.arange(3.0))
    (a * b + a).sum()
    for node in graph.nodes:
        assert all(i < node.id for i in node.inputs)


def test_backward_requires_scalar_loss():
    graph = Graph()
    x = graph.parameter("x", np.ones(3))
    with pytest.raises(GraphError):
        graph.backward(x * 2.0)


def test_lazy_graph_backward_before_forward():
    graph = Graph(eager=False)
    p = graph.parameter("p", 2.0)
    loss = p * p
    with pytest.raises(GraphError):
        graph.backward(loss)
    graph.forward()
    assert graph.backward(loss)["p"] == pytest.approx(4.0)


def test_forward_rebinds_leaves():
    graph = Graph()
    x = graph.leaf(2.0, name="x")
    y = x * x + 1.0
    assert float(y.value) == pytest.approx(5.0)
    values = graph.forward({"x": 3.0})
    assert float(values[y.id]) == pytest.approx(10.0)
    with pytest.raises(GraphError):
        graph.forward({y: 1.0})


def test_shape_error_names_node():
    graph = Graph()
    a = graph.constant(np.ones((2, 3)))
    b = graph.constant(np.ones((2, 3)))
    with pytest.raises(ShapeError) as excinfo:
        a @ b
    assert excinfo.value.node_id is not None
    assert excinfo.value.op == "matmul"


def test_nodes_from_different_graphs_do_not_mix():
    a = Graph().constant(1.0)
    b = Graph().constant(2.0)
    with pytest.raises(GraphError):
        a + b


def test_broadcast_gradient_is_reduced():
    graph = Graph()
    bias = graph.parameter("b", np.zeros(3))
    x = graph.constant(np.ones((4, 3)))
    grads = graph.backward((x + bias).sum())
    np.testing.assert_allclose(grads["b"], [4.0, 4.0, 4.0])


def test_softmax_rows_sum_to_one():
    graph = Graph()
    z = graph.constant(np.array([[1.0, 2.0, 3.0], [1000.0, 0.0, -1000.0]]))
    out = softmax(z, axis=1).value
    np.testing.assert_allclose(out.sum(axis=1), [1.0, 1.0])
    assert np.all(np.isfinite(out))


def test_sigmoid_saturates():
    graph = Graph()
    x = graph.parameter("x", np.array([-1000.0, 0.0, 1000.0]))
    y = sigmoid(x)
    grads = graph.backward(y.sum())
    np.testing.assert_array_equal(y.value, [0.0, 0.5, 1.0])
    np.testing.assert_array_equal(grads["x"], [0.0, 0.25, 0.0])


def test_concat_gradient_splits():
    graph = Graph()
    a = graph.parameter("a", np.ones((1, 2)))
    b = graph.parameter("b", np.ones((2, 2)))
    weights = np.arange(6.0).reshape(3, 2)
    grads = graph.backward((concat([a, b]) * weights).sum())
    np.testing.assert_allclose(grads["a"], weights[:1])
    np.testing.assert_allclose(grads["b"], weights[1:])


def test_conv2d_identity_kernel():
    graph = Graph()
    x = np.random.default_rng(0).normal(size=(2, 5, 5, 1))
    kernel = np.zeros((3, 3, 1, 1))
    kernel[1, 1, 0, 0] = 1.0
    out = conv2d(graph.constant(x), graph.constant(kernel)).value
    np.testing.assert_allclose(out, x)


def test_max_pool2d_picks_window_maximum():
    graph = Graph()
    x = np.arange(16.0).reshape(1, 4, 4, 1)
    out = max_pool2d(graph.constant(x)).value
    np.testing.assert_array_equal(out[0, :, :, 0], [[5.0, 7.0], [13.0, 15.0]])


def test_max_pool2d_same_padding_on_odd_size():
    graph = Graph()
    out = max_pool2d(graph.constant(np.ones((1, 7, 7, 2)))).value
    assert out.shape == (1, 4, 4, 2)


def test_registered_ops_cover_primitives():
    ops = set(registered_ops())
    for name in ("add", "mul", "matmul", "exp", "log", "cos", "sum", "mean", "concat", "softmax",
                 "solve", "conv2d", "max_pool2d", "elu", "clip"):
        assert name in ops
