#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Layers
네트워크 공통 도우미 (초기화, 완전연결층, 파라미터 바인딩)
"""

from typing import Dict, List, Mapping, Sequence, Tuple, Union

import numpy as np
from scipy.stats import truncnorm

from ..core.errors import ShapeError
from ..engine.autodiff import Graph, Node, elu, lift, relu

ParamLike = Union[np.ndarray, Node]
Params = Mapping[str, ParamLike]

INIT_STD = 0.02


def truncated_normal(rng: np.random.Generator, shape: Tuple[int, ...], std: float = INIT_STD) -> np.ndarray:
    """±2σ 에서 잘린 정규분포 가중치를 반환합니다."""
    return truncnorm.rvs(-2.0, 2.0, loc=0.0, scale=std, size=shape, random_state=rng).astype(np.float64)


def init_dense(rng: np.random.Generator, prefix: str, fan_in: int, fan_out: int) -> Dict[str, np.ndarray]:
    return {
        f"{prefix}/w": truncated_normal(rng, (fan_in, fan_out)),
        f"{prefix}/b": np.zeros(fan_out),
    }


def lift_params(inputs: Sequence[object], params: Params,
                names: Sequence[str]) -> Tuple[Graph, List[Node], Dict[str, Node], bool]:
    """입력과 이름이 지정된 파라미터를 같은 그래프의 노드로 맞춥니다."""
    missing = [n for n in names if n not in params]
    if missing:
        raise KeyError(f"파라미터가 없습니다: {missing}")
    graph, nodes, symbolic = lift(*inputs, *(params[n] for n in names))
    return graph, nodes[:len(inputs)], dict(zip(names, nodes[len(inputs):])), symbolic


def dense(x: Node, p: Mapping[str, Node], prefix: str) -> Node:
    """x @ w + b"""
    w = p[f"{prefix}/w"]
    if x.shape[-1] != w.shape[0]:
        raise ShapeError("dense", (None, w.shape[0]), x.shape, name=prefix)
    return x @ w + p[f"{prefix}/b"]


_ACTIVATIONS = {"relu": relu, "elu": elu}


def activate(x: Node, kind: str) -> Node:
    return _ACTIVATIONS[kind](x)


def layer_names(prefix: str, layers: Sequence[str]) -> List[str]:
    return [f"{prefix}/{layer}/{part}" for layer in layers for part in ("w", "b")]
