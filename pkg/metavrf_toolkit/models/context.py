#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Context
LSTM 기반 문맥 추론 (인스턴스 풀링, 셀 상태 전달)
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.enums import Direction
from ..core.errors import ShapeError
from ..engine.autodiff import Node, concat, lift, mean, reshape, sigmoid, tanh, unlift, value_of
from .layers import Params, lift_params, truncated_normal

TensorLike = Union[np.ndarray, Node]

FORWARD_PREFIX = "lstm/fw"
BACKWARD_PREFIX = "lstm/bw"


@dataclass
class ContextState:
    """전달되는 LSTM 상태. 양방향이면 마지막 역방향 상태도 함께 보관합니다."""
    h: TensorLike
    c: TensorLike
    direction: Direction = Direction.VANILLA
    h_backward: Optional[TensorLike] = None
    c_backward: Optional[TensorLike] = None

    @property
    def hidden_size(self) -> int:
        return int(value_of(self.h).shape[0])

    @property
    def output(self) -> TensorLike:
        """마지막으로 내보낸 h (양방향이면 [h→, h←])"""
        if self.direction is Direction.BIDIRECTIONAL:
            graph, (h, hb), symbolic = lift(self.h, self.h_backward)
            return unlift(concat([h, hb]), symbolic)
        return self.h

    def detach(self) -> "ContextState":
        """그래프에서 분리된 배열 복사본을 반환합니다."""
        def _copy(x):
            return None if x is None else np.array(value_of(x), dtype=np.float64)
        return ContextState(_copy(self.h), _copy(self.c), self.direction,
                            _copy(self.h_backward), _copy(self.c_backward))


def zero_state(hidden: int, direction: Direction = Direction.VANILLA) -> ContextState:
    """h = 0, c = 0"""
    if direction is Direction.BIDIRECTIONAL:
        return ContextState(np.zeros(hidden), np.zeros(hidden), direction, np.zeros(hidden), np.zeros(hidden))
    return ContextState(np.zeros(hidden), np.zeros(hidden), direction)


def init_lstm_params(rng: np.random.Generator, input_dim: int, hidden: int,
                     prefix: str = FORWARD_PREFIX) -> Dict[str, np.ndarray]:
    """[x, h] → 4·hidden 융합 게이트 가중치 (input, forget, output, candidate 순)"""
    return {
        f"{prefix}/w": truncated_normal(rng, (input_dim + hidden, 4 * hidden)),
        f"{prefix}/b": np.zeros(4 * hidden),
    }


def pool_support(embeddings: TensorLike) -> TensorLike:
    """서포트 임베딩의 행 평균 S̄"""
    graph, (emb,), symbolic = lift(embeddings)
    if len(emb.shape) != 2 or emb.shape[0] == 0:
        raise ValueError(f"풀링할 서포트 행이 없습니다: shape={emb.shape}")
    return unlift(mean(emb, axis=0), symbolic)


def lstm_cell(x: TensorLike, state: Tuple[TensorLike, TensorLike], params: Params,
              prefix: str = FORWARD_PREFIX) -> Tuple[TensorLike, TensorLike]:
    """표준 LSTM 한 스텝: c′ = f⊙c + i⊙g, h′ = o⊙tanh(c′)"""
    h, c = state
    graph, (xn, hn, cn), p, symbolic = lift_params([x, h, c], params, [f"{prefix}/w", f"{prefix}/b"])
    w = p[f"{prefix}/w"]
    hidden = w.shape[1] // 4
    if hn.shape != (hidden,) or cn.shape != (hidden,):
        raise ShapeError("lstm_cell", (hidden,), (hn.shape, cn.shape), name=prefix)
    if len(xn.shape) != 1 or xn.shape[0] + hidden != w.shape[0]:
        raise ShapeError("lstm_cell", (w.shape[0] - hidden,), xn.shape, name=prefix)

    joined = reshape(concat([xn, hn]), (1, w.shape[0]))
    z = reshape(joined @ w, (4 * hidden,)) + p[f"{prefix}/b"]
    input_gate = sigmoid(z[0:hidden])
    forget_gate = sigmoid(z[hidden:2 * hidden])
    output_gate = sigmoid(z[2 * hidden:3 * hidden])
    candidate = tanh(z[3 * hidden:])

    c_next = forget_gate * cn + input_gate * candidate
    h_next = output_gate * tanh(c_next)
    return unlift(h_next, symbolic), unlift(c_next, symbolic)


def step_sequence(pooled: Sequence[TensorLike], initial: ContextState,
                  params: Params) -> Tuple[List[TensorLike], ContextState]:
    """태스크 순서대로 LSTM 을 진행하고 태스크별 h 와 마지막 상태를 반환합니다.

    양방향이면 같은 시퀀스에 대해 영 상태에서 시작하는 역방향 패스를 따로 돌려
    [h→_t, h←_t] 를 내보냅니다. 전달되는 것은 정방향 h, c 뿐입니다.
    """
    if len(pooled) == 0:
        raise ValueError("빈 시퀀스는 처리할 수 없습니다")

    forward_outputs: List[TensorLike] = []
    h, c = initial.h, initial.c
    for x in pooled:
        h, c = lstm_cell(x, (h, c), params, FORWARD_PREFIX)
        forward_outputs.append(h)

    if initial.direction is not Direction.BIDIRECTIONAL:
        return forward_outputs, ContextState(h, c, Direction.VANILLA)

    hidden = value_of(initial.h).shape[0]
    hb, cb = np.zeros(hidden), np.zeros(hidden)
    backward_outputs: List[TensorLike] = [None] * len(pooled)
    backward_cells: List[TensorLike] = [None] * len(pooled)
    for t in reversed(range(len(pooled))):
        hb, cb = lstm_cell(pooled[t], (hb, cb), params, BACKWARD_PREFIX)
        backward_outputs[t] = hb
        backward_cells[t] = cb

    outputs = []
    for fw, bw in zip(forward_outputs, backward_outputs):
        graph, (a, b), symbolic = lift(fw, bw)
        outputs.append(unlift(concat([a, b]), symbolic))
    # 마지막 태스크 위치의 역방향 상태를 함께 기록
    final = ContextState(h, c, Direction.BIDIRECTIONAL, backward_outputs[-1], backward_cells[-1])
    return outputs, final
