#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Inference
주파수 공간의 변분 사후분포, 조건부 사전분포, KL, ELBO
"""

from dataclasses import dataclass
from typing import Dict, Optional, Union

import numpy as np

from ..core.enums import ScaleMode
from ..core.errors import ShapeError
from ..engine.autodiff import Node, abs_, clip, concat, exp, lift, mean, reshape, softmax, sum_, unlift, value_of
from .kernels import SpectralBasis, feature_map, gram, sample_biases
from .layers import Params, activate, dense, init_dense, layer_names, lift_params
from .ridge import fit, mse_loss, one_hot, predict, ridge_lambda, softmax_xent_loss

TensorLike = Union[np.ndarray, Node]

LOG_VAR_RANGE = (-10.0, 10.0)
POSTERIOR_HIDDEN = ("fc0", "fc1", "fc2")
# 사후분포 은닉층 수 (회귀 40×2, 이미지 분류 256×3)
REGRESSION_POSTERIOR_DEPTH = 2
CLASSIFICATION_POSTERIOR_DEPTH = 3
PRIOR_LAYERS = ("fc0", "fc1", "mu", "log_var")


@dataclass
class GaussianPosterior:
    """대각 공분산 가우시안 (μ, log σ²)"""
    mu: TensorLike
    log_var: TensorLike

    @property
    def sigma(self) -> np.ndarray:
        return np.exp(0.5 * value_of(self.log_var))


@dataclass
class ElboTerms:
    loss: TensorLike
    data_term: TensorLike
    kl_term: TensorLike


@dataclass
class EmbeddedTask:
    """임베딩이 끝난 에피소드"""
    support: TensorLike
    support_y: np.ndarray
    query: TensorLike
    query_y: np.ndarray
    ways: int
    classification: bool


def init_posterior_params(rng: np.random.Generator, input_dim: int, width: int, feature_dim: int,
                          prefix: str = "posterior",
                          depth: int = CLASSIFICATION_POSTERIOR_DEPTH) -> Dict[str, np.ndarray]:
    """depth 개의 ELU 은닉층과 μ / log σ² 헤드"""
    if not 1 <= depth <= len(POSTERIOR_HIDDEN):
        raise ValueError(f"depth 는 1-{len(POSTERIOR_HIDDEN)} 범위여야 합니다: {depth}")
    params: Dict[str, np.ndarray] = {}
    fan_in = input_dim
    for layer in POSTERIOR_HIDDEN[:depth]:
        params.update(init_dense(rng, f"{prefix}/{layer}", fan_in, width))
        fan_in = width
    params.update(init_dense(rng, f"{prefix}/mu", width, feature_dim))
    params.update(init_dense(rng, f"{prefix}/log_var", width, feature_dim))
    return params


def init_prior_params(rng: np.random.Generator, feature_dim: int, width: int,
                      prefix: str = "prior") -> Dict[str, np.ndarray]:
    params: Dict[str, np.ndarray] = {}
    params.update(init_dense(rng, f"{prefix}/fc0", feature_dim, width))
    params.update(init_dense(rng, f"{prefix}/fc1", width, width))
    params.update(init_dense(rng, f"{prefix}/mu", width, feature_dim))
    params.update(init_dense(rng, f"{prefix}/log_var", width, feature_dim))
    return params


def _gaussian_head(x: TensorLike, params: Params, prefix: str, hidden: tuple) -> GaussianPosterior:
    graph, (inputs,), p, symbolic = lift_params([x], params, layer_names(prefix, hidden + ("mu", "log_var")))
    vector = len(inputs.shape) == 1
    expected = p[f"{prefix}/{hidden[0]}/w"].shape[0]
    if inputs.shape[-1] != expected:
        raise ShapeError(prefix, (expected,), inputs.shape, name=prefix)
    out = reshape(inputs, (1, expected)) if vector else inputs
    for layer in hidden:
        out = activate(dense(out, p, f"{prefix}/{layer}"), "elu")
    mu = dense(out, p, f"{prefix}/mu")
    log_var = clip(dense(out, p, f"{prefix}/log_var"), *LOG_VAR_RANGE)
    if vector:
        mu = reshape(mu, (mu.shape[1],))
        log_var = reshape(log_var, (log_var.shape[1],))
    return GaussianPosterior(unlift(mu, symbolic), unlift(log_var, symbolic))


def posterior(h: TensorLike, params: Params, prefix: str = "posterior") -> GaussianPosterior:
    """q(ω | h): 문맥 벡터에서 주파수 사후분포를 계산합니다. 은닉층 수는 params 에서 정해집니다."""
    hidden = tuple(layer for layer in POSTERIOR_HIDDEN if f"{prefix}/{layer}/w" in params)
    return _gaussian_head(h, params, prefix, hidden)


def attention_weights(query: TensorLike, keys: TensorLike) -> TensorLike:
    """softmax_j(−‖query − key_j‖₁), 결과 shape (m, C)"""
    graph, (q, k), symbolic = lift(query, keys)
    if len(k.shape) != 2 or k.shape[0] == 0:
        raise ValueError(f"attention 에는 하나 이상의 key 가 필요합니다: shape={k.shape}")
    qm = reshape(q, (1, q.shape[0])) if len(q.shape) == 1 else q
    if qm.shape[1] != k.shape[1]:
        raise ShapeError("laplace_attention", (None, k.shape[1]), qm.shape)
    m, d = qm.shape
    c = k.shape[0]
    diff = reshape(qm, (m, 1, d)) - reshape(k, (1, c, d))
    distance = sum_(abs_(diff), axis=2)
    return unlift(softmax(-distance, axis=1), symbolic)


def laplace_attention(query: TensorLike, keys: TensorLike, values: TensorLike) -> TensorLike:
    """Laplace 커널 cross attention 표현을 반환합니다."""
    graph, (q, k, v), symbolic = lift(query, keys, values)
    if k.shape[0] != v.shape[0]:
        raise ShapeError("laplace_attention", (k.shape[0], None), v.shape)
    out = attention_weights(q, k) @ v
    if len(q.shape) == 1:
        out = reshape(out, (v.shape[1],))
    return unlift(out, symbolic)


def prior(query_embedding: TensorLike, class_means: TensorLike, params: Params,
          prefix: str = "prior") -> GaussianPosterior:
    """p(ω | x, S): 클래스 평균에 대한 attention 표현을 MLP 에 통과시킵니다."""
    attended = laplace_attention(query_embedding, class_means, class_means)
    return _gaussian_head(attended, params, prefix, PRIOR_LAYERS[:2])


def reparameterize(post: GaussianPosterior, count: int, rng: Optional[np.random.Generator] = None,
                   eps: Optional[np.ndarray] = None) -> TensorLike:
    """ω_l = μ + σ ⊙ ε_l 로 D × d 주파수를 샘플링합니다."""
    if count < 1:
        raise ValueError(f"D 는 1 이상이어야 합니다: {count}")
    graph, (mu, log_var), symbolic = lift(post.mu, post.log_var)
    dim = mu.shape[-1]
    if eps is None:
        if rng is None:
            raise ValueError("rng 또는 eps 가 필요합니다")
        eps = rng.standard_normal((count, dim))
    eps = np.asarray(eps, dtype=np.float64)
    if eps.shape != (count, dim):
        raise ShapeError("reparameterize", (count, dim), eps.shape)
    return unlift(mu + exp(log_var * 0.5) * eps, symbolic)


def kl_diag_gaussians(q: GaussianPosterior, p: GaussianPosterior) -> TensorLike:
    """KL(q ‖ p), 마지막 축에 대해 합산합니다."""
    graph, (mq, lq, mp, lp), symbolic = lift(q.mu, q.log_var, p.mu, p.log_var)
    if mq.shape[-1] != mp.shape[-1]:
        raise ShapeError("kl_diag_gaussians", mq.shape, mp.shape)
    terms = (lp - lq) * 0.5 + (exp(lq) + (mq - mp) ** 2) / (exp(lp) * 2.0) - 0.5
    return unlift(sum_(terms, axis=-1), symbolic)


def class_means(embeddings: TensorLike, labels: np.ndarray, ways: int) -> TensorLike:
    """클래스별 서포트 임베딩 평균 (C × d)"""
    graph, (emb,), symbolic = lift(embeddings)
    labels = np.asarray(labels)
    rows = []
    for c in range(ways):
        index = np.flatnonzero(labels == c)
        if index.size == 0:
            raise ValueError(f"클래스 {c} 의 서포트 예제가 없습니다")
        rows.append(mean(emb[index], axis=0, keepdims=True))
    return unlift(concat(rows, axis=0), symbolic)


def support_targets(task: EmbeddedTask) -> np.ndarray:
    """릿지 타깃 행렬 (분류: one-hot, 회귀: 1 × n)"""
    if task.classification:
        return one_hot(task.support_y, task.ways).values
    return np.asarray(task.support_y, dtype=np.float64).reshape(1, -1)


def kernel_ridge_predict(task: EmbeddedTask, basis: SpectralBasis, log_lambda: TensorLike) -> TensorLike:
    """하나의 기저로 서포트에 적합하고 쿼리 예측 (C_out × m) 을 반환합니다."""
    z_support = feature_map(basis, task.support)
    z_query = feature_map(basis, task.query)
    solution = fit(gram(z_support, z_support), support_targets(task), ridge_lambda(log_lambda))
    return predict(solution, gram(z_support, z_query))


def task_loss(task: EmbeddedTask, prediction: TensorLike) -> TensorLike:
    """분류는 cross-entropy, 회귀는 MSE"""
    if task.classification:
        return softmax_xent_loss(prediction, task.query_y)
    target = np.asarray(task.query_y, dtype=np.float64).reshape(1, -1)
    return mse_loss(prediction, target)


def prior_keys(task: EmbeddedTask) -> TensorLike:
    """사전분포 attention 의 key: 분류는 클래스 평균, 회귀는 서포트 점 자체"""
    if task.classification:
        return class_means(task.support, task.support_y, task.ways)
    return task.support


def elbo_loss(task: EmbeddedTask, post: GaussianPosterior, prior_params: Params, log_lambda: TensorLike,
              count: int, rng: np.random.Generator, scale_mode: ScaleMode = ScaleMode.RSQRT,
              kl_weight: float = 1.0) -> ElboTerms:
    """음의 ELBO = 쿼리 평균 데이터 손실 + 쿼리 평균 KL(q ‖ p(ω|x, S))"""
    graph, (support, query, mu, log_var, rho), symbolic = lift(task.support, task.query, post.mu, post.log_var,
                                                               log_lambda)
    post = GaussianPosterior(mu, log_var)
    embedded = EmbeddedTask(support, task.support_y, query, task.query_y, task.ways, task.classification)

    conditional_prior = prior(query, prior_keys(embedded), prior_params)
    kl_term = mean(kl_diag_gaussians(post, conditional_prior))

    frequencies = reparameterize(post, count, rng)
    basis = SpectralBasis(frequencies, sample_biases(rng, count), scale_mode)
    data_term = task_loss(embedded, kernel_ridge_predict(embedded, basis, rho))

    loss = data_term + kl_term * kl_weight
    return ElboTerms(unlift(loss, symbolic), unlift(data_term, symbolic), unlift(kl_term, symbolic))
