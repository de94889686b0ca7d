#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Ridge
커널 릿지 회귀 기저 학습기 (닫힌 형태 적합, 예측, 손실)
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from ..core.enums import LabelEncoding
from ..core.errors import ShapeError, SingularSystemError
from ..engine.autodiff import Node, exp, lift, log_softmax, mean, solve, square, sum_, unlift, value_of
from .kernels import KernelMatrix, kernel_values

TensorLike = Union[np.ndarray, Node]


@dataclass
class LabelMatrix:
    """C_out × n 타깃 행렬"""
    values: np.ndarray
    encoding: LabelEncoding = LabelEncoding.REAL_TARGETS

    def __post_init__(self):
        self.values = np.atleast_2d(np.asarray(self.values, dtype=np.float64))
        if self.encoding is LabelEncoding.ONE_HOT:
            column_sums = self.values.sum(axis=0)
            ones = (self.values == 1.0).sum(axis=0)
            binary = np.isin(self.values, (0.0, 1.0)).all()
            if not (binary and np.all(column_sums == 1.0) and np.all(ones == 1)):
                raise ValueError("one-hot 열은 정확히 하나의 1 을 가져야 합니다")


@dataclass
class RidgeSolution:
    """쌍대 계수 α (C_out × n) 와 정규화 계수 λ"""
    alpha: TensorLike
    lam: TensorLike

    @property
    def support_count(self) -> int:
        return value_of(self.alpha).shape[1]


def one_hot(labels: np.ndarray, num_classes: int) -> LabelMatrix:
    """클래스 인덱스를 C × n one-hot 행렬로 변환합니다."""
    labels = np.asarray(labels)
    if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
        raise ValueError(f"labels 는 [0, {num_classes}) 범위여야 합니다: {labels}")
    values = np.zeros((num_classes, labels.size))
    values[labels.astype(int), np.arange(labels.size)] = 1.0
    return LabelMatrix(values, LabelEncoding.ONE_HOT)


def ridge_lambda(log_lambda: TensorLike) -> TensorLike:
    """λ = exp(ρ)"""
    graph, (rho,), symbolic = lift(log_lambda)
    return unlift(exp(rho), symbolic)


def fit(k: Union[KernelMatrix, TensorLike], y: Union[LabelMatrix, TensorLike],
        lam: Union[float, TensorLike]) -> RidgeSolution:
    """α = Y(λI + K)⁻¹ 를 선형 방정식 (λI + K)ᵀαᵀ = Yᵀ 로 풉니다."""
    targets = y.values if isinstance(y, LabelMatrix) else y
    graph, (kn, yn, lamn), symbolic = lift(kernel_values(k), targets, lam)
    n = kn.shape[0]
    if len(kn.shape) != 2 or kn.shape[1] != n:
        raise ShapeError("ridge_fit", "(n, n)", kn.shape)
    if len(yn.shape) != 2 or yn.shape[1] != n:
        raise ShapeError("ridge_fit", (None, n), yn.shape)
    lam_value = float(np.asarray(lamn.value).reshape(-1)[0])
    if lam_value < 0:
        raise ValueError(f"lambda 는 음수일 수 없습니다: {lam_value}")
    system = kn + lamn * np.eye(n)
    try:
        alpha = solve(system.T, yn.T).T
    except np.linalg.LinAlgError:
        raise SingularSystemError(lam_value) from None
    return RidgeSolution(unlift(alpha, symbolic), unlift(lamn, symbolic))


def predict(solution: RidgeSolution, k_cross: Union[KernelMatrix, TensorLike]) -> TensorLike:
    """Ŷ = α · K̃ (C_out × m)"""
    graph, (alpha, kc), symbolic = lift(solution.alpha, kernel_values(k_cross))
    if len(kc.shape) != 2 or kc.shape[0] != alpha.shape[1]:
        raise ShapeError("ridge_predict", (alpha.shape[1], None), kc.shape)
    return unlift(alpha @ kc, symbolic)


def mse_loss(pred: TensorLike, target: TensorLike) -> TensorLike:
    """원소별 제곱 오차의 평균"""
    graph, (p, t), symbolic = lift(pred, target)
    if p.shape != t.shape:
        raise ShapeError("mse_loss", p.shape, t.shape)
    return unlift(mean(square(p - t)), symbolic)


def softmax_xent_loss(logits: TensorLike, labels: np.ndarray) -> TensorLike:
    """logits (C × m) 에 대한 평균 −log softmax[label]"""
    graph, (z,), symbolic = lift(logits)
    labels = np.asarray(labels)
    num_classes, count = z.shape
    if labels.shape != (count,):
        raise ShapeError("softmax_xent_loss", (count,), labels.shape)
    targets = one_hot(labels, num_classes).values
    per_query = sum_(log_softmax(z, axis=0) * targets, axis=0)
    return unlift(-mean(per_query), symbolic)


def accuracy(logits: TensorLike, labels: np.ndarray) -> float:
    """열별 argmax 가 정답과 일치하는 비율"""
    predicted = np.argmax(value_of(logits), axis=0)
    return float(np.mean(predicted == np.asarray(labels)))
