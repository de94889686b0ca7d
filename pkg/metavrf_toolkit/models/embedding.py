#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Embedding
특징 추출 네트워크 (회귀/블롭 MLP, Omniglot CNN)
"""

from typing import Dict, Optional, Tuple, Union

import numpy as np

from ..core.enums import OMNIGLOT_IMAGE_SIZE
from ..core.errors import ShapeError
from ..engine.autodiff import Node, conv2d, max_pool2d, relu, reshape, unlift, value_of
from .layers import Params, dense, init_dense, layer_names, lift_params, truncated_normal

TensorLike = Union[np.ndarray, Node]

EMBED_PREFIX = "embed"
MLP_LAYERS = ("fc0", "fc1")


def init_mlp_embedder(rng: np.random.Generator, input_dim: int = 1, hidden: int = 40,
                      prefix: str = EMBED_PREFIX) -> Dict[str, np.ndarray]:
    """fc(input→hidden)-ReLU-fc(hidden→hidden)-ReLU"""
    params: Dict[str, np.ndarray] = {}
    params.update(init_dense(rng, f"{prefix}/fc0", input_dim, hidden))
    params.update(init_dense(rng, f"{prefix}/fc1", hidden, hidden))
    return params


def init_cnn_embedder(rng: np.random.Generator, channels: int = 64, blocks: int = 4, in_channels: int = 1,
                      kernel: int = 3, prefix: str = EMBED_PREFIX) -> Dict[str, np.ndarray]:
    params: Dict[str, np.ndarray] = {}
    fan_in = in_channels
    for block in range(blocks):
        params[f"{prefix}/conv{block}/w"] = truncated_normal(rng, (kernel, kernel, fan_in, channels))
        params[f"{prefix}/conv{block}/b"] = np.zeros(channels)
        fan_in = channels
    return params


def count_parameters(params: Params, prefix: str = "") -> int:
    """접두사가 일치하는 파라미터의 스칼라 개수"""
    return int(sum(value_of(v).size for k, v in params.items() if k.startswith(prefix)))


def dropout_mask(rng: np.random.Generator, shape: Tuple[int, ...], keep_prob: float) -> np.ndarray:
    """역스케일 드롭아웃 마스크 (유지된 값은 1/keep_prob)"""
    if not (0.0 < keep_prob <= 1.0):
        raise ValueError(f"keep_prob 범위를 벗어났습니다 (0-1]: {keep_prob}")
    return (rng.random(shape) < keep_prob).astype(np.float64) / keep_prob


def embed_mlp(x: TensorLike, params: Params, prefix: str = EMBED_PREFIX) -> TensorLike:
    """입력 (n,) 또는 (n, input_dim) → (n, hidden)"""
    graph, (xs,), p, symbolic = lift_params([x], params, layer_names(prefix, MLP_LAYERS))
    if len(xs.shape) == 1:
        xs = reshape(xs, (xs.shape[0], 1))
    out = xs
    for layer in MLP_LAYERS:
        out = relu(dense(out, p, f"{prefix}/{layer}"))
    return unlift(out, symbolic)


def _conv_blocks(params: Params, prefix: str) -> int:
    blocks = 0
    while f"{prefix}/conv{blocks}/w" in params:
        blocks += 1
    return blocks


def embed_cnn(images: TensorLike, params: Params, train_mode: bool = False,
              rng: Optional[np.random.Generator] = None, keep_prob: float = 0.9,
              image_size: int = OMNIGLOT_IMAGE_SIZE, prefix: str = EMBED_PREFIX) -> TensorLike:
    """conv(3×3, SAME)-ReLU-dropout-maxpool(2×2) 블록을 거쳐 평탄화합니다.

    28×28 입력의 공간 크기는 28→14→7→4→2 이고 출력은 2·2·64 = 256 차원입니다.
    드롭아웃은 train_mode 에서만 적용됩니다.
    """
    blocks = _conv_blocks(params, prefix)
    graph, (x,), p, symbolic = lift_params([images], params, layer_names(prefix, [f"conv{b}" for b in range(blocks)]))
    if len(x.shape) == 3:
        x = reshape(x, x.shape + (1,))
    if len(x.shape) != 4 or x.shape[1:3] != (image_size, image_size):
        raise ShapeError("embed_cnn", (None, image_size, image_size, 1), x.shape)
    if train_mode and keep_prob < 1.0 and rng is None:
        raise ValueError("train_mode 드롭아웃에는 rng 가 필요합니다")

    out = x
    for block in range(blocks):
        out = relu(conv2d(out, p[f"{prefix}/conv{block}/w"]) + p[f"{prefix}/conv{block}/b"])
        if train_mode and keep_prob < 1.0:
            out = out * dropout_mask(rng, out.shape, keep_prob)
        out = max_pool2d(out)
    n = out.shape[0]
    return unlift(reshape(out, (n, int(np.prod(out.shape[1:])))), symbolic)
