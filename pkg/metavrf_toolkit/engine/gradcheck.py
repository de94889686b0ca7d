#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Gradient Check
중앙 유한차분으로 역전파 기울기를 검증합니다.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.errors import GraphError
from ..core.logger import logger
from .autodiff import Graph, Node

DEFAULT_EPS = 1e-5
MAX_EPS = 1e-2
DEFAULT_TOLERANCE = 1e-4
ERROR_FLOOR = 1e-3


def relative_error(analytic: float, numeric: float) -> float:
    """|a - n| / max(|a|, |n|, 1e-3)"""
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), ERROR_FLOOR)


def gradient_errors(graph: Graph, loss: Node, eps: float = DEFAULT_EPS, max_entries: Optional[int] = None,
                    rng: Optional[np.random.Generator] = None) -> Dict[str, float]:
    """파라미터별 최악 상대 오차를 반환합니다.

    max_entries 가 주어지면 파라미터마다 그 개수만큼의 원소만 무작위로 검사합니다.
    검사가 끝나면 그래프는 원래 파라미터 값으로 다시 평가됩니다.
    """
    if not 0.0 < eps <= MAX_EPS:
        raise ValueError(f"eps 는 (0, {MAX_EPS}] 범위여야 합니다: {eps}")
    if loss.graph is not graph:
        raise GraphError("손실 노드가 이 그래프에 속하지 않습니다")
    graph.forward()
    analytic = graph.backward(loss)
    rng = rng or np.random.default_rng(0)

    errors: Dict[str, float] = {}
    try:
        for name, node in graph.parameters.items():
            base = np.array(graph.value_of(node), dtype=np.float64)
            flat_indices = np.arange(base.size)
            if max_entries is not None and base.size > max_entries:
                flat_indices = rng.choice(base.size, size=max_entries, replace=False)

            worst = 0.0
            for flat in flat_indices:
                index = np.unravel_index(int(flat), base.shape)
                plus, minus = base.copy(), base.copy()
                plus[index] += eps
                minus[index] -= eps
                f_plus = float(graph.forward({node: plus})[loss.id])
                f_minus = float(graph.forward({node: minus})[loss.id])
                numeric = (f_plus - f_minus) / (2.0 * eps)
                worst = max(worst, relative_error(float(analytic[name][index]), numeric))
            errors[name] = worst
    finally:
        graph.forward()
    return errors


def grad_check(graph: Graph, loss: Node, eps: float = DEFAULT_EPS, max_entries: Optional[int] = None,
               rng: Optional[np.random.Generator] = None) -> float:
    """모든 파라미터 기울기와 유한차분 사이의 최악 상대 오차"""
    errors = gradient_errors(graph, loss, eps, max_entries, rng)
    return max(errors.values(), default=0.0)


# ----------------------------------------------------------------------
# 기울기 검증 모음
# ----------------------------------------------------------------------

GraphBuilder = Callable[[np.random.Generator], Tuple[Graph, Node]]


@dataclass
class GradCheckRow:
    name: str
    error: float
    passed: bool

    def __iter__(self):
        return iter((self.name, self.error, self.passed))


def _signed(rng: np.random.Generator, shape, low: float = 0.2, high: float = 1.0) -> np.ndarray:
    """꺾이는 점(0)에서 떨어진 부호 있는 값"""
    return rng.uniform(low, high, size=shape) * rng.choice([-1.0, 1.0], size=shape)


def _distinct(rng: np.random.Generator, shape) -> np.ndarray:
    """원소 간 간격이 충분한 값 (max pooling 동률 방지)"""
    size = int(np.prod(shape))
    return (rng.permutation(size) * 0.1 + rng.uniform(0.0, 0.01, size)).reshape(shape)


def _weighted_sum(graph: Graph, out: Node, rng: np.random.Generator) -> Node:
    weights = graph.constant(rng.normal(size=out.shape))
    return (out * weights).sum()


def _unary(op: str, sampler: Callable[[np.random.Generator], np.ndarray], **attrs) -> GraphBuilder:
    def build(rng: np.random.Generator) -> Tuple[Graph, Node]:
        graph = Graph()
        a = graph.parameter("a", sampler(rng))
        return graph, _weighted_sum(graph, graph.apply(op, a, **attrs), rng)
    return build


def _binary(op: str, left: Callable[[np.random.Generator], np.ndarray],
            right: Callable[[np.random.Generator], np.ndarray]) -> GraphBuilder:
    def build(rng: np.random.Generator) -> Tuple[Graph, Node]:
        graph = Graph()
        a = graph.parameter("a", left(rng))
        b = graph.parameter("b", right(rng))
        return graph, _weighted_sum(graph, graph.apply(op, a, b), rng)
    return build


def _concat_builder(rng: np.random.Generator) -> Tuple[Graph, Node]:
    graph = Graph()
    a = graph.parameter("a", rng.normal(size=(2, 3)))
    b = graph.parameter("b", rng.normal(size=(1, 3)))
    return graph, _weighted_sum(graph, graph.apply("concat", a, b, axis=0), rng)


def _solve_builder(rng: np.random.Generator) -> Tuple[Graph, Node]:
    graph = Graph()
    a = graph.parameter("a", rng.normal(size=(3, 3)) + 3.0 * np.eye(3))
    b = graph.parameter("b", rng.normal(size=(3, 2)))
    return graph, _weighted_sum(graph, graph.apply("solve", a, b), rng)


def _normal(shape) -> Callable[[np.random.Generator], np.ndarray]:
    return lambda rng: rng.normal(size=shape)


def _positive(shape) -> Callable[[np.random.Generator], np.ndarray]:
    return lambda rng: rng.uniform(0.5, 2.0, size=shape)


def _away_from_zero(shape) -> Callable[[np.random.Generator], np.ndarray]:
    return lambda rng: _signed(rng, shape)


def primitive_builders() -> Dict[str, GraphBuilder]:
    """연산 이름 → 작은 shape 의 검증 그래프 생성기"""
    return {
        "add": _binary("add", _normal((2, 3)), _normal((3,))),
        "sub": _binary("sub", _normal((2, 3)), _normal((2, 1))),
        "mul": _binary("mul", _normal((2, 3)), _normal((2, 3))),
        "div": _binary("div", _normal((2, 3)), _away_from_zero((3,))),
        "neg": _unary("neg", _normal((3,))),
        "exp": _unary("exp", _normal((3,))),
        "log": _unary("log", _positive((3,))),
        "tanh": _unary("tanh", _normal((3,))),
        "sigmoid": _unary("sigmoid", _normal((3,))),
        "cos": _unary("cos", _normal((3,))),
        "abs": _unary("abs", _away_from_zero((3,))),
        "relu": _unary("relu", _away_from_zero((3,))),
        "elu": _unary("elu", _away_from_zero((3,))),
        "square": _unary("square", _normal((3,))),
        "power": _unary("power", _positive((3,)), exponent=1.5),
        "clip": _unary("clip", lambda rng: _signed(rng, (4,), 0.1, 0.9) * 2.0, low=-1.0, high=1.0),
        "matmul": _binary("matmul", _normal((2, 3)), _normal((3, 2))),
        "solve": _solve_builder,
        "sum": _unary("sum", _normal((2, 3)), axis=0, keepdims=False),
        "mean": _unary("mean", _normal((2, 3)), axis=1, keepdims=True),
        "concat": _concat_builder,
        "getitem": _unary("getitem", _normal((3, 4)), index=(slice(0, 2), 1)),
        "broadcast_to": _unary("broadcast_to", _normal((1, 3)), shape=(2, 3)),
        "reshape": _unary("reshape", _normal((2, 3)), shape=(3, 2)),
        "transpose": _unary("transpose", _normal((2, 3, 2)), axes=(2, 0, 1)),
        "softmax": _unary("softmax", _normal((2, 3)), axis=-1),
        "log_softmax": _unary("log_softmax", _normal((2, 3)), axis=0),
        "conv2d": _binary("conv2d", _normal((1, 3, 3, 2)), _normal((3, 3, 2, 2))),
        "max_pool2d": _unary("max_pool2d", lambda rng: _distinct(rng, (1, 3, 4, 2))),
    }


def model_builders() -> Dict[str, GraphBuilder]:
    """LSTM, 임베더, 릿지, 전체 ELBO 검증 그래프 생성기"""
    from ..core.config import ExperimentConfig
    from ..core.enums import InferenceMode, TaskFamily
    from ..managers.tasks import Task
    from ..models.context import init_lstm_params, lstm_cell
    from ..models.embedding import embed_cnn, embed_mlp, init_cnn_embedder, init_mlp_embedder
    from ..models.metavrf import MetaVRFModel
    from ..models.ridge import fit, mse_loss, predict, ridge_lambda

    def scaled(params: Dict[str, np.ndarray], rng: np.random.Generator, std: float = 0.5) -> Dict[str, np.ndarray]:
        return {k: rng.normal(scale=std, size=v.shape) for k, v in params.items()}

    def lstm_step(rng):
        graph = Graph()
        p = {k: graph.parameter(k, v) for k, v in scaled(init_lstm_params(rng, 3, 2), rng).items()}
        h, c = lstm_cell(graph.parameter("x", rng.normal(size=3)), (np.zeros(2), np.zeros(2)), p)
        return graph, _weighted_sum(graph, h, rng) + c.sum()

    def lstm_two_steps(rng):
        graph = Graph()
        p = {k: graph.parameter(k, v) for k, v in scaled(init_lstm_params(rng, 3, 2), rng).items()}
        state = (graph.parameter("h0", rng.normal(size=2)), graph.parameter("c0", rng.normal(size=2)))
        for _ in range(2):
            state = lstm_cell(graph.constant(rng.normal(size=3)), state, p)
        return graph, _weighted_sum(graph, state[0], rng)

    def mlp_embedder(rng):
        graph = Graph()
        p = {k: graph.parameter(k, v) for k, v in scaled(init_mlp_embedder(rng, 2, 3), rng).items()}
        out = embed_mlp(graph.constant(rng.normal(size=(4, 2))), p)
        return graph, _weighted_sum(graph, out, rng)

    def cnn_embedder(rng):
        graph = Graph()
        p = {k: graph.parameter(k, v)
             for k, v in scaled(init_cnn_embedder(rng, channels=2, blocks=2), rng).items()}
        images = graph.constant(rng.uniform(size=(2, 4, 4, 1)))
        out = embed_cnn(images, p, train_mode=True, rng=rng, keep_prob=0.8, image_size=4)
        return graph, _weighted_sum(graph, out, rng)

    def ridge(rng):
        graph = Graph()
        z = graph.parameter("z", rng.normal(size=(5, 4)))
        zq = graph.constant(rng.normal(size=(3, 4)))
        log_lambda = graph.parameter("log_lambda", np.array(rng.uniform(-0.5, 0.5)))
        solution = fit(z @ z.T, graph.constant(rng.normal(size=(1, 5))), ridge_lambda(log_lambda))
        prediction = predict(solution, z @ zq.T)
        return graph, mse_loss(prediction, graph.constant(rng.normal(size=(1, 3))))

    def elbo_toy(rng):
        config = ExperimentConfig(task=TaskFamily.BLOBS, mode=InferenceMode.LSTM, ways=2, shots=1, query=2,
                                  bases=4, blob_dim=2, embedding_dim=3, context_dim=3, inference_width=4,
                                  batch=1, seed=int(rng.integers(0, 2 ** 31)))
        model = MetaVRFModel(config)
        model.params.update(scaled(dict(model.params.items()), rng, 0.3))
        task = Task(rng.normal(size=(2, 2)), np.array([0, 1]), rng.normal(size=(4, 2)), np.array([0, 0, 1, 1]),
                    ways=2, shots=1)
        graph = Graph()
        result = model.batch_loss(graph, [task], [rng], train=True)
        return graph, result.loss

    return {
        "lstm_cell": lstm_step,
        "lstm_two_steps": lstm_two_steps,
        "mlp_embedder": mlp_embedder,
        "cnn_embedder": cnn_embedder,
        "ridge_5x5": ridge,
        "elbo_toy": elbo_toy,
    }


def check_builder(builder: GraphBuilder, trials: int, seed: int, eps: float,
                  max_entries: Optional[int] = None) -> float:
    """시드별로 그래프를 새로 만들어 검사하고 최악 오차를 반환합니다."""
    worst = 0.0
    for child in np.random.SeedSequence(seed).spawn(trials):
        rng = np.random.default_rng(child)
        graph, loss = builder(rng)
        worst = max(worst, grad_check(graph, loss, eps, max_entries, rng))
    return worst


def run_gradient_suite(trials: int = 100, seed: int = 0, eps: float = DEFAULT_EPS,
                       tolerance: float = DEFAULT_TOLERANCE, model_trials: int = 5) -> List[GradCheckRow]:
    """모든 연산과 모델 구성 요소에 대해 기울기를 검증합니다."""
    rows: List[GradCheckRow] = []
    logger.start(f"기울기 검증 시작: 연산당 {trials}회, 모델 그래프당 {model_trials}회")
    suites = [(primitive_builders(), trials), (model_builders(), model_trials)]
    for builders, count in suites:
        for name, builder in builders.items():
            error = check_builder(builder, count, seed, eps)
            row = GradCheckRow(name, error, error <= tolerance)
            rows.append(row)
            if row.passed:
                logger.success(f"{name:<16} max rel err {error:.2e}")
            else:
                logger.error(f"{name:<16} max rel err {error:.2e} (허용 {tolerance:.0e})")

    failed = [r.name for r in rows if not r.passed]
    if failed:
        logger.error(f"기울기 검증 실패: {failed}")
    else:
        logger.complete(f"기울기 검증 통과: {len(rows)}개 항목")
    return rows
