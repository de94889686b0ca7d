#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Kernels
랜덤 푸리에 특징 맵, 그람 행렬, 정확한 RBF 커널
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.spatial.distance import pdist

from ..core.enums import ScaleMode
from ..core.errors import ShapeError
from ..engine.autodiff import Node, cos, exp, lift, relu, square, sum_, unlift, value_of

TensorLike = Union[np.ndarray, Node]

TWO_PI = 2.0 * np.pi


@dataclass
class SpectralBasis:
    """D 개의 주파수 벡터와 바이어스 (하나의 특징 맵)"""
    frequencies: TensorLike
    biases: np.ndarray
    scale_mode: ScaleMode = ScaleMode.RSQRT

    def __post_init__(self):
        self.biases = np.asarray(self.biases, dtype=np.float64)
        shape = value_of(self.frequencies).shape
        if len(shape) != 2 or shape[0] < 1:
            raise ShapeError("spectral_basis", "(D >= 1, d)", shape)
        if self.biases.shape != (shape[0],):
            raise ShapeError("spectral_basis", (shape[0],), self.biases.shape)
        if np.any(self.biases < 0) or np.any(self.biases > TWO_PI):
            raise ValueError("biases 는 [0, 2π] 범위여야 합니다")
        if not np.all(np.isfinite(value_of(self.frequencies))):
            raise ValueError("frequencies 에 유한하지 않은 값이 있습니다")

    @property
    def count(self) -> int:
        return int(self.biases.shape[0])

    @property
    def scale(self) -> float:
        if self.scale_mode is ScaleMode.UNBIASED:
            return float(np.sqrt(2.0 / self.count))
        return float(1.0 / np.sqrt(self.count))


@dataclass
class KernelMatrix:
    values: TensorLike

    @property
    def left_count(self) -> int:
        return value_of(self.values).shape[0]

    @property
    def right_count(self) -> int:
        return value_of(self.values).shape[1]

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        v = value_of(self.values)
        return v.shape[0] == v.shape[1] and bool(np.max(np.abs(v - v.T), initial=0.0) <= tol)

    def min_eigenvalue(self) -> float:
        v = value_of(self.values)
        return float(np.linalg.eigvalsh(0.5 * (v + v.T)).min())


def sample_biases(rng: np.random.Generator, count: int) -> np.ndarray:
    """Uniform[0, 2π] 바이어스를 반환합니다."""
    return rng.uniform(0.0, TWO_PI, size=count)


def sample_gaussian_basis(rng: np.random.Generator, count: int, dim: int, sigma: float = 1.0,
                          scale_mode: ScaleMode = ScaleMode.UNBIASED) -> SpectralBasis:
    """N(0, σ⁻²I) 주파수의 기저를 반환합니다 (RBF 커널의 스펙트럼 분포)."""
    if sigma <= 0:
        raise ValueError(f"sigma 는 양수여야 합니다: {sigma}")
    frequencies = rng.standard_normal((count, dim)) / sigma
    return SpectralBasis(frequencies, sample_biases(rng, count), scale_mode)


def feature_map(basis: SpectralBasis, x: TensorLike) -> TensorLike:
    """z(x)_j = s · cos(ω_j·x + b_j) 로 n × D 특징 행렬을 계산합니다."""
    graph, (w, xs), symbolic = lift(basis.frequencies, x)
    if len(xs.shape) != 2 or xs.shape[1] != w.shape[1]:
        raise ShapeError("feature_map", (None, w.shape[1]), xs.shape)
    projection = xs @ w.T + basis.biases
    return unlift(cos(projection) * basis.scale, symbolic)


def gram(z_left: TensorLike, z_right: TensorLike) -> KernelMatrix:
    """K = Z_left · Z_rightᵀ"""
    graph, (left, right), symbolic = lift(z_left, z_right)
    if left.shape[-1] != right.shape[-1]:
        raise ShapeError("gram", (None, left.shape[-1]), right.shape)
    return KernelMatrix(unlift(left @ right.T, symbolic))


def squared_distances(x: TensorLike, x_prime: TensorLike) -> TensorLike:
    graph, (a, b), symbolic = lift(x, x_prime)
    if a.shape[-1] != b.shape[-1]:
        raise ShapeError("squared_distances", (None, a.shape[-1]), b.shape)
    sq = sum_(square(a), axis=1, keepdims=True) + sum_(square(b), axis=1, keepdims=True).T - 2.0 * (a @ b.T)
    # 반올림으로 생기는 음수 제거
    return unlift(relu(sq), symbolic)


def rbf_exact(x: TensorLike, x_prime: TensorLike, sigma: float) -> KernelMatrix:
    """exp(−‖x − x′‖² / 2σ²)"""
    if not sigma > 0:
        raise ValueError(f"sigma 는 양수여야 합니다: {sigma}")
    graph, (a, b), symbolic = lift(x, x_prime)
    sq = squared_distances(a, b)
    return KernelMatrix(unlift(exp(sq * (-1.0 / (2.0 * sigma ** 2))), symbolic))


def mean_pairwise_bandwidth(x: TensorLike) -> float:
    """서로 다른 모든 점 쌍의 평균 유클리드 거리"""
    points = value_of(x)
    if points.ndim != 2 or points.shape[0] < 2:
        raise ValueError(f"대역폭 계산에는 2개 이상의 점이 필요합니다: shape={points.shape}")
    return float(np.mean(pdist(points, metric="euclidean")))


def kernel_values(k: Union[KernelMatrix, TensorLike]) -> TensorLike:
    """KernelMatrix 또는 원시 행렬에서 값을 꺼냅니다."""
    return k.values if isinstance(k, KernelMatrix) else k
