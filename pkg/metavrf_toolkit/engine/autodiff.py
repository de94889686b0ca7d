#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Autodiff Engine
밀집 실수 텐서 위의 역방향 자동미분 엔진

그래프는 노드를 생성 순서대로 기록합니다 (입력은 항상 앞선 노드).
기본 모드에서는 노드를 만들 때 바로 값을 계산하고, forward(bindings) 로
리프 값을 바꿔 전체 테이프를 다시 평가할 수 있습니다.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import expit, logsumexp
from typing_extensions import TypeAlias

from ..core.errors import GraphError, ShapeError

Tensor: TypeAlias = np.ndarray
ArrayLike: TypeAlias = Union[np.ndarray, float, int, Sequence[float]]

_LEAF_OPS = ("leaf", "constant", "parameter")


@dataclass(frozen=True)
class OpDef:
    """연산 정의: forward(*inputs, **attrs) 와 vjp(g, inputs, out, needs, **attrs)"""
    forward: Callable[..., np.ndarray]
    vjp: Callable[..., List[Optional[np.ndarray]]]


_OPS: Dict[str, OpDef] = {}


def register_op(name: str, forward: Callable[..., np.ndarray],
                vjp: Callable[..., List[Optional[np.ndarray]]]) -> None:
    """새 연산을 등록합니다."""
    _OPS[name] = OpDef(forward, vjp)


def registered_ops() -> List[str]:
    """등록된 연산 이름 목록을 반환합니다."""
    return sorted(_OPS)


def _unbroadcast(g: np.ndarray, shape: Tuple[int, ...]) -> np.ndarray:
    while g.ndim > len(shape):
        g = g.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and g.shape[axis] != 1:
            g = g.sum(axis=axis, keepdims=True)
    return g.reshape(shape)


def _broadcast_check(op: str, a: np.ndarray, b: np.ndarray) -> None:
    try:
        np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeError(op, f"broadcastable with {a.shape}", b.shape)


# ----------------------------------------------------------------------
# 원소별 이항 연산
# ----------------------------------------------------------------------

def _add(a, b):
    _broadcast_check("add", a, b)
    return a + b


def _sub(a, b):
    _broadcast_check("sub", a, b)
    return a - b


def _mul(a, b):
    _broadcast_check("mul", a, b)
    return a * b


def _div(a, b):
    _broadcast_check("div", a, b)
    return a / b


register_op("add", _add, lambda g, ins, out, needs: [
    _unbroadcast(g, ins[0].shape), _unbroadcast(g, ins[1].shape)])
register_op("sub", _sub, lambda g, ins, out, needs: [
    _unbroadcast(g, ins[0].shape), _unbroadcast(-g, ins[1].shape)])
register_op("mul", _mul, lambda g, ins, out, needs: [
    _unbroadcast(g * ins[1], ins[0].shape) if needs[0] else None,
    _unbroadcast(g * ins[0], ins[1].shape) if needs[1] else None])
register_op("div", _div, lambda g, ins, out, needs: [
    _unbroadcast(g / ins[1], ins[0].shape) if needs[0] else None,
    _unbroadcast(-g * ins[0] / ins[1] ** 2, ins[1].shape) if needs[1] else None])

# ----------------------------------------------------------------------
# 원소별 단항 연산
# ----------------------------------------------------------------------

register_op("neg", lambda a: -a, lambda g, ins, out, needs: [-g])
register_op("exp", np.exp, lambda g, ins, out, needs: [g * out])
register_op("log", np.log, lambda g, ins, out, needs: [g / ins[0]])
register_op("tanh", np.tanh, lambda g, ins, out, needs: [g * (1.0 - out ** 2)])
register_op("sigmoid", expit, lambda g, ins, out, needs: [g * out * (1.0 - out)])
register_op("cos", np.cos, lambda g, ins, out, needs: [-g * np.sin(ins[0])])
register_op("abs", np.abs, lambda g, ins, out, needs: [g * np.sign(ins[0])])
register_op("relu", lambda a: np.maximum(a, 0.0), lambda g, ins, out, needs: [g * (ins[0] > 0)])
register_op("elu", lambda a: np.where(a > 0, a, np.expm1(np.minimum(a, 0.0))),
            lambda g, ins, out, needs: [g * np.where(ins[0] > 0, 1.0, out + 1.0)])
register_op("square", np.square, lambda g, ins, out, needs: [2.0 * g * ins[0]])
register_op("power", lambda a, exponent: a ** exponent,
            lambda g, ins, out, needs, exponent: [g * exponent * ins[0] ** (exponent - 1)])
register_op("clip", lambda a, low, high: np.clip(a, low, high),
            lambda g, ins, out, needs, low, high: [g * ((ins[0] >= low) & (ins[0] <= high))])

# ----------------------------------------------------------------------
# 선형대수
# ----------------------------------------------------------------------


def _matmul(a, b):
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError("matmul", f"(n, {a.shape[-1] if a.ndim else '?'}) @ ({a.shape[-1] if a.ndim else '?'}, m)",
                         (a.shape, b.shape))
    return a @ b


register_op("matmul", _matmul, lambda g, ins, out, needs: [
    g @ ins[1].T if needs[0] else None,
    ins[0].T @ g if needs[1] else None])


def _solve(a, b):
    if a.ndim != 2 or a.shape[0] != a.shape[1] or b.shape[0] != a.shape[0] or b.ndim > 2:
        raise ShapeError("solve", "A (n, n), B (n,) or (n, k)", (a.shape, b.shape))
    return np.linalg.solve(a, b)


def _solve_vjp(g, ins, out, needs):
    # X = A⁻¹B  →  Ḡ_B = A⁻ᵀ G,  Ḡ_A = −Ḡ_B Xᵀ
    a = ins[0]
    grad_b = np.linalg.solve(a.T, g)
    if not needs[0]:
        return [None, grad_b]
    if out.ndim == 1:
        grad_a = -np.outer(grad_b, out)
    else:
        grad_a = -grad_b @ out.T
    return [grad_a, grad_b]


register_op("solve", _solve, _solve_vjp)

# ----------------------------------------------------------------------
# 축소 / 배치 변환
# ----------------------------------------------------------------------


def _expand_reduced(g, shape, axis, keepdims):
    if axis is not None and not keepdims:
        g = np.expand_dims(g, axis)
    return np.broadcast_to(g, shape)


def _reduced_count(shape, axis):
    if axis is None:
        return int(np.prod(shape))
    axes = axis if isinstance(axis, tuple) else (axis,)
    return int(np.prod([shape[ax] for ax in axes]))


register_op("sum", lambda a, axis=None, keepdims=False: np.sum(a, axis=axis, keepdims=keepdims),
            lambda g, ins, out, needs, axis=None, keepdims=False: [
                _expand_reduced(g, ins[0].shape, axis, keepdims)])
register_op("mean", lambda a, axis=None, keepdims=False: np.mean(a, axis=axis, keepdims=keepdims),
            lambda g, ins, out, needs, axis=None, keepdims=False: [
                _expand_reduced(g, ins[0].shape, axis, keepdims) / _reduced_count(ins[0].shape, axis)])


def _concat(*arrays, axis=0):
    try:
        return np.concatenate(arrays, axis=axis)
    except ValueError:
        raise ShapeError("concat", f"matching shapes except axis {axis}", tuple(a.shape for a in arrays))


def _concat_vjp(g, ins, out, needs, axis=0):
    splits = np.cumsum([a.shape[axis] for a in ins])[:-1]
    return list(np.split(g, splits, axis=axis))


register_op("concat", _concat, _concat_vjp)


def _getitem_vjp(g, ins, out, needs, index):
    grad = np.zeros_like(ins[0])
    np.add.at(grad, index, g)
    return [grad]


register_op("getitem", lambda a, index: a[index], _getitem_vjp)


def _broadcast_to(a, shape):
    try:
        return np.broadcast_to(a, shape).copy()
    except ValueError:
        raise ShapeError("broadcast_to", shape, a.shape)


register_op("broadcast_to", _broadcast_to,
            lambda g, ins, out, needs, shape: [_unbroadcast(g, ins[0].shape)])


def _reshape(a, shape):
    if int(np.prod(shape)) != a.size and -1 not in shape:
        raise ShapeError("reshape", shape, a.shape)
    return a.reshape(shape)


register_op("reshape", _reshape, lambda g, ins, out, needs, shape: [g.reshape(ins[0].shape)])
register_op("transpose", lambda a, axes=None: np.transpose(a, axes),
            lambda g, ins, out, needs, axes=None: [
                np.transpose(g, None if axes is None else np.argsort(axes))])

# ----------------------------------------------------------------------
# softmax 계열
# ----------------------------------------------------------------------


def _softmax(a, axis=-1):
    shifted = np.exp(a - np.max(a, axis=axis, keepdims=True))
    return shifted / np.sum(shifted, axis=axis, keepdims=True)


register_op("softmax", _softmax, lambda g, ins, out, needs, axis=-1: [
    out * (g - np.sum(g * out, axis=axis, keepdims=True))])
register_op("log_softmax", lambda a, axis=-1: a - logsumexp(a, axis=axis, keepdims=True),
            lambda g, ins, out, needs, axis=-1: [
                g - np.exp(out) * np.sum(g, axis=axis, keepdims=True)])

# ----------------------------------------------------------------------
# 합성곱 / 풀링 (NHWC)
# ----------------------------------------------------------------------


def _conv2d(x, w):
    if x.ndim != 4 or w.ndim != 4 or x.shape[3] != w.shape[2] or w.shape[0] % 2 == 0 or w.shape[1] % 2 == 0:
        raise ShapeError("conv2d", "x (N, H, W, C), w (odd kh, odd kw, C, C_out)", (x.shape, w.shape))
    kh, kw = w.shape[:2]
    n, h, width, _ = x.shape
    padded = np.pad(x, ((0, 0), (kh // 2, kh // 2), (kw // 2, kw // 2), (0, 0)))
    out = np.zeros((n, h, width, w.shape[3]))
    for i in range(kh):
        for j in range(kw):
            out += padded[:, i:i + h, j:j + width, :] @ w[i, j]
    return out


def _conv2d_vjp(g, ins, out, needs):
    x, w = ins
    kh, kw = w.shape[:2]
    n, h, width, _ = x.shape
    ph, pw = kh // 2, kw // 2
    padded = np.pad(x, ((0, 0), (ph, ph), (pw, pw), (0, 0)))
    grad_padded = np.zeros_like(padded) if needs[0] else None
    grad_w = np.zeros_like(w) if needs[1] else None
    for i in range(kh):
        for j in range(kw):
            window = (slice(None), slice(i, i + h), slice(j, j + width), slice(None))
            if grad_padded is not None:
                grad_padded[window] += g @ w[i, j].T
            if grad_w is not None:
                grad_w[i, j] = np.tensordot(padded[window], g, axes=([0, 1, 2], [0, 1, 2]))
    grad_x = grad_padded[:, ph:ph + h, pw:pw + width, :] if grad_padded is not None else None
    return [grad_x, grad_w]


register_op("conv2d", _conv2d, _conv2d_vjp)


def _pool_windows(x):
    n, h, w, c = x.shape
    ho, wo = -(-h // 2), -(-w // 2)
    padded = np.full((n, 2 * ho, 2 * wo, c), -np.inf)
    padded[:, :h, :w, :] = x
    windows = padded.reshape(n, ho, 2, wo, 2, c).transpose(0, 1, 3, 5, 2, 4).reshape(n, ho, wo, c, 4)
    return windows, windows.argmax(axis=-1)


def _max_pool2d(x):
    if x.ndim != 4:
        raise ShapeError("max_pool2d", "(N, H, W, C)", x.shape)
    windows, index = _pool_windows(x)
    return np.take_along_axis(windows, index[..., None], axis=-1)[..., 0]


def _max_pool2d_vjp(g, ins, out, needs):
    x = ins[0]
    n, h, w, c = x.shape
    windows, index = _pool_windows(x)
    grad_windows = np.zeros_like(windows)
    np.put_along_axis(grad_windows, index[..., None], g[..., None], axis=-1)
    ho, wo = windows.shape[1:3]
    grad = grad_windows.reshape(n, ho, wo, c, 2, 2).transpose(0, 1, 4, 2, 5, 3).reshape(n, 2 * ho, 2 * wo, c)
    return [grad[:, :h, :w, :]]


register_op("max_pool2d", _max_pool2d, _max_pool2d_vjp)


# ----------------------------------------------------------------------
# 그래프
# ----------------------------------------------------------------------


class Node:
    """그래프 노드 (연산 기록). 값은 그래프가 캐시합니다."""

    __slots__ = ("graph", "id", "op", "inputs", "attrs", "name", "trainable", "needs_grad")
    __array_priority__ = 100

    def __init__(self, graph: "Graph", node_id: int, op: str, inputs: Tuple[int, ...],
                 attrs: Dict[str, Any], name: Optional[str], trainable: bool, needs_grad: bool):
        self.graph = graph
        self.id = node_id
        self.op = op
        self.inputs = inputs
        self.attrs = attrs
        self.name = name
        self.trainable = trainable
        self.needs_grad = needs_grad

    def __repr__(self) -> str:
        label = f" '{self.name}'" if self.name else ""
        return f"Node(#{self.id} {self.op}{label})"

    @property
    def is_leaf(self) -> bool:
        return self.op in _LEAF_OPS

    @property
    def value(self) -> Tensor:
        return self.graph.value_of(self)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.value.shape

    @property
    def T(self) -> "Node":
        return transpose(self)

    def __add__(self, other): return add(self, other)
    def __radd__(self, other): return add(other, self)
    def __sub__(self, other): return sub(self, other)
    def __rsub__(self, other): return sub(other, self)
    def __mul__(self, other): return mul(self, other)
    def __rmul__(self, other): return mul(other, self)
    def __truediv__(self, other): return div(self, other)
    def __rtruediv__(self, other): return div(other, self)
    def __matmul__(self, other): return matmul(self, other)
    def __rmatmul__(self, other): return matmul(other, self)
    def __neg__(self): return self.graph.apply("neg", self)
    def __pow__(self, exponent: float): return power(self, exponent)
    def __getitem__(self, index): return getitem(self, index)

    def sum(self, axis=None, keepdims: bool = False) -> "Node":
        return sum_(self, axis=axis, keepdims=keepdims)

    def mean(self, axis=None, keepdims: bool = False) -> "Node":
        return mean(self, axis=axis, keepdims=keepdims)

    def reshape(self, *shape) -> "Node":
        if len(shape) == 1 and isinstance(shape[0], tuple):
            shape = shape[0]
        return reshape(self, shape)


class Graph:
    """연산 테이프 (노드는 위상 순서로 저장됨)"""

    def __init__(self, eager: bool = True):
        self.eager = eager
        self.nodes: List[Node] = []
        self._values: Dict[int, Tensor] = {}
        self._defaults: Dict[int, Optional[Tensor]] = {}
        self._params: Dict[str, Node] = {}

    def __len__(self) -> int:
        return len(self.nodes)

    # -- 리프 ---------------------------------------------------------

    def _add_leaf(self, op: str, value: Optional[ArrayLike], name: Optional[str], trainable: bool) -> Node:
        node = Node(self, len(self.nodes), op, (), {}, name, trainable, needs_grad=trainable)
        self.nodes.append(node)
        default = None if value is None else np.array(value, dtype=np.float64)
        self._defaults[node.id] = default
        if self.eager:
            if default is None:
                raise GraphError(f"eager 그래프의 리프에는 기본값이 필요합니다: {name}")
            self._values[node.id] = default
        return node

    def constant(self, value: ArrayLike, name: Optional[str] = None) -> Node:
        """상수 리프를 추가합니다."""
        return self._add_leaf("constant", value, name, trainable=False)

    def leaf(self, value: Optional[ArrayLike] = None, name: Optional[str] = None) -> Node:
        """바인딩 가능한 입력 리프를 추가합니다."""
        return self._add_leaf("leaf", value, name, trainable=False)

    def parameter(self, name: str, value: Optional[ArrayLike] = None) -> Node:
        """학습 가능한 리프를 반환합니다. 같은 이름은 같은 노드를 공유합니다."""
        if name in self._params:
            return self._params[name]
        node = self._add_leaf("parameter", value, name, trainable=True)
        self._params[name] = node
        return node

    @property
    def parameters(self) -> Dict[str, Node]:
        return dict(self._params)

    # -- 연산 ---------------------------------------------------------

    def apply(self, op: str, *inputs: Union[Node, ArrayLike], name: Optional[str] = None, **attrs: Any) -> Node:
        """연산 노드를 추가합니다. eager 모드에서는 즉시 평가합니다."""
        if op not in _OPS:
            raise GraphError(f"등록되지 않은 연산입니다: {op}")
        input_nodes = []
        for item in inputs:
            if isinstance(item, Node):
                if item.graph is not self:
                    raise GraphError("다른 그래프의 노드는 섞어 쓸 수 없습니다")
                input_nodes.append(item)
            else:
                input_nodes.append(self.constant(item))
        node = Node(self, len(self.nodes), op, tuple(n.id for n in input_nodes), attrs, name,
                    trainable=False, needs_grad=any(n.needs_grad for n in input_nodes))
        self.nodes.append(node)
        if self.eager:
            self._evaluate(node)
        return node

    def _evaluate(self, node: Node) -> None:
        args = [self._values[i] for i in node.inputs]
        try:
            out = _OPS[node.op].forward(*args, **node.attrs)
        except ShapeError as e:
            raise e.at(node.id, node.name) from None
        self._values[node.id] = np.asarray(out, dtype=np.float64)

    def value_of(self, node: Node) -> Tensor:
        """노드의 캐시된 값을 반환합니다."""
        if node.id not in self._values:
            raise GraphError(f"{node!r} 이(가) 아직 평가되지 않았습니다 (forward 를 먼저 실행하세요)")
        return self._values[node.id]

    def forward(self, bindings: Optional[Mapping[Union[Node, str, int], ArrayLike]] = None) -> Dict[int, Tensor]:
        """리프 바인딩으로 전체 테이프를 평가하고 노드별 값을 반환합니다."""
        resolved: Dict[int, Tensor] = {}
        for key, value in (bindings or {}).items():
            if isinstance(key, Node):
                node_id = key.id
            elif isinstance(key, str):
                matches = [n.id for n in self.nodes if n.is_leaf and n.name == key]
                if not matches:
                    raise GraphError(f"이름이 '{key}' 인 리프가 없습니다")
                node_id = matches[0]
            else:
                node_id = int(key)
            if not self.nodes[node_id].is_leaf:
                raise GraphError(f"리프가 아닌 노드에는 값을 바인딩할 수 없습니다: {self.nodes[node_id]!r}")
            resolved[node_id] = np.array(value, dtype=np.float64)

        self._values = {}
        for node in self.nodes:
            if node.is_leaf:
                value = resolved.get(node.id, self._defaults[node.id])
                if value is None:
                    raise GraphError(f"바인딩되지 않았고 기본값도 없는 리프입니다: {node!r}")
                self._values[node.id] = value
            else:
                self._evaluate(node)
        return dict(self._values)

    def backward(self, loss: Node) -> Dict[str, Tensor]:
        """스칼라 손실에 대한 모든 학습 파라미터의 기울기를 반환합니다."""
        if loss.graph is not self:
            raise GraphError("손실 노드가 이 그래프에 속하지 않습니다")
        if loss.id not in self._values:
            raise GraphError("forward 전에 backward 를 호출했습니다")
        loss_value = self._values[loss.id]
        if loss_value.size != 1:
            raise GraphError(f"손실은 스칼라여야 합니다: shape={loss_value.shape}")

        grads: Dict[int, Tensor] = {loss.id: np.ones_like(loss_value)}
        for node in reversed(self.nodes[:loss.id + 1]):
            if node.is_leaf or not node.needs_grad:
                continue
            g = grads.pop(node.id, None)
            if g is None:
                continue
            inputs = [self.value_of(self.nodes[i]) for i in node.inputs]
            needs = [self.nodes[i].needs_grad for i in node.inputs]
            input_grads = _OPS[node.op].vjp(g, inputs, self._values[node.id], needs, **node.attrs)
            for input_id, needed, grad in zip(node.inputs, needs, input_grads):
                if not needed or grad is None:
                    continue
                grads[input_id] = grads[input_id] + grad if input_id in grads else np.array(grad)

        return {
            name: grads.get(node.id, np.zeros_like(self.value_of(node)))
            for name, node in self._params.items()
        }


# ----------------------------------------------------------------------
# 함수형 API
# ----------------------------------------------------------------------


def _graph_of(*items: Any) -> Graph:
    for item in items:
        if isinstance(item, Node):
            return item.graph
    raise GraphError("그래프 노드가 하나 이상 필요합니다")


def lift(*values: Any) -> Tuple[Graph, List[Optional[Node]], bool]:
    """배열과 노드를 한 그래프의 노드로 맞춥니다. 노드가 없으면 새 그래프를 만듭니다."""
    graphs = {id(v.graph): v.graph for v in values if isinstance(v, Node)}
    if len(graphs) > 1:
        raise GraphError("다른 그래프의 노드는 섞어 쓸 수 없습니다")
    symbolic = bool(graphs)
    graph = next(iter(graphs.values())) if graphs else Graph()
    nodes = [v if isinstance(v, Node) or v is None else graph.constant(v) for v in values]
    return graph, nodes, symbolic


def unlift(node: Node, symbolic: bool) -> Union[Node, Tensor]:
    """lift 로 들어온 입력 형태에 맞춰 노드 또는 배열을 돌려줍니다."""
    return node if symbolic else node.value


def value_of(item: Union[Node, ArrayLike]) -> Tensor:
    """노드면 값을, 배열이면 float64 배열을 반환합니다."""
    return item.value if isinstance(item, Node) else np.asarray(item, dtype=np.float64)


def add(a, b) -> Node: return _graph_of(a, b).apply("add", a, b)
def sub(a, b) -> Node: return _graph_of(a, b).apply("sub", a, b)
def mul(a, b) -> Node: return _graph_of(a, b).apply("mul", a, b)
def div(a, b) -> Node: return _graph_of(a, b).apply("div", a, b)
def matmul(a, b) -> Node: return _graph_of(a, b).apply("matmul", a, b)
def solve(a, b) -> Node: return _graph_of(a, b).apply("solve", a, b)
def neg(a: Node) -> Node: return a.graph.apply("neg", a)
def exp(a: Node) -> Node: return a.graph.apply("exp", a)
def log(a: Node) -> Node: return a.graph.apply("log", a)
def tanh(a: Node) -> Node: return a.graph.apply("tanh", a)
def sigmoid(a: Node) -> Node: return a.graph.apply("sigmoid", a)
def cos(a: Node) -> Node: return a.graph.apply("cos", a)
def abs_(a: Node) -> Node: return a.graph.apply("abs", a)
def relu(a: Node) -> Node: return a.graph.apply("relu", a)
def elu(a: Node) -> Node: return a.graph.apply("elu", a)
def square(a: Node) -> Node: return a.graph.apply("square", a)
def power(a: Node, exponent: float) -> Node: return a.graph.apply("power", a, exponent=float(exponent))
def clip(a: Node, low: float, high: float) -> Node: return a.graph.apply("clip", a, low=low, high=high)
def softmax(a: Node, axis: int = -1) -> Node: return a.graph.apply("softmax", a, axis=axis)
def log_softmax(a: Node, axis: int = -1) -> Node: return a.graph.apply("log_softmax", a, axis=axis)
def conv2d(x, w) -> Node: return _graph_of(x, w).apply("conv2d", x, w)
def max_pool2d(x: Node) -> Node: return x.graph.apply("max_pool2d", x)


def sum_(a: Node, axis=None, keepdims: bool = False) -> Node:
    return a.graph.apply("sum", a, axis=axis, keepdims=keepdims)


def mean(a: Node, axis=None, keepdims: bool = False) -> Node:
    return a.graph.apply("mean", a, axis=axis, keepdims=keepdims)


def concat(items: Iterable[Node], axis: int = 0) -> Node:
    items = list(items)
    return _graph_of(*items).apply("concat", *items, axis=axis)


def getitem(a: Node, index) -> Node:
    return a.graph.apply("getitem", a, index=index)


def broadcast_to(a: Node, shape: Tuple[int, ...]) -> Node:
    return a.graph.apply("broadcast_to", a, shape=tuple(shape))


def reshape(a: Node, shape: Tuple[int, ...]) -> Node:
    return a.graph.apply("reshape", a, shape=tuple(shape))


def transpose(a: Node, axes: Optional[Tuple[int, ...]] = None) -> Node:
    return a.graph.apply("transpose", a, axes=None if axes is None else tuple(axes))


def forward(graph: Graph, bindings: Optional[Mapping[Union[Node, str, int], ArrayLike]] = None) -> Dict[int, Tensor]:
    """graph.forward 의 함수형 별칭"""
    return graph.forward(bindings)


def backward(graph: Graph, loss: Node) -> Dict[str, Tensor]:
    """graph.backward 의 함수형 별칭"""
    return graph.backward(loss)
