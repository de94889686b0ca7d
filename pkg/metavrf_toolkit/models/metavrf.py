#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Model
임베더, 문맥 LSTM, 추론 네트워크, 커널 릿지 기저 학습기를 묶는 모델
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import ExperimentConfig
from ..core.enums import Direction, InferenceMode, ModelKind, TaskFamily
from ..core.logger import logger
from ..engine.autodiff import Graph, Node, value_of
from ..engine.optim import ParameterStore
from .context import (
    BACKWARD_PREFIX,
    FORWARD_PREFIX,
    ContextState,
    init_lstm_params,
    pool_support,
    step_sequence,
    zero_state,
)
from .embedding import embed_cnn, embed_mlp, init_cnn_embedder, init_mlp_embedder
from .inference import (
    CLASSIFICATION_POSTERIOR_DEPTH,
    REGRESSION_POSTERIOR_DEPTH,
    ElboTerms,
    EmbeddedTask,
    elbo_loss,
    init_posterior_params,
    init_prior_params,
    kernel_ridge_predict,
    posterior,
    reparameterize,
    support_targets,
    task_loss,
)
from .kernels import SpectralBasis, mean_pairwise_bandwidth, rbf_exact, sample_biases
from .layers import Params
from .ridge import accuracy, fit, mse_loss, predict, ridge_lambda

if TYPE_CHECKING:
    from ..managers.tasks import Task

LOG_LAMBDA = "ridge/log_lambda"
BASIS_FREQUENCIES = "basis/frequencies"
BASIS_BIASES = "basis/biases"
MIN_BANDWIDTH = 1e-6
# 서포트 점이 하나뿐일 때의 RBF 대역폭
FALLBACK_BANDWIDTH = 1.0


@dataclass
class BatchResult:
    loss: Node
    terms: List[ElboTerms]
    state: ContextState


def mode_direction(mode: InferenceMode) -> Direction:
    return Direction.BIDIRECTIONAL if mode is InferenceMode.BILSTM else Direction.VANILLA


class MetaVRFModel:
    """메타 학습기 전체 (파라미터, 고정 버퍼, 전달되는 문맥 상태)"""

    def __init__(self, config: ExperimentConfig, params: Optional[ParameterStore] = None,
                 buffers: Optional[Dict[str, np.ndarray]] = None, state: Optional[ContextState] = None):
        self.config = config
        if params is None:
            params, init_buffers = self.initialize(config)
            buffers = init_buffers if buffers is None else buffers
        self.params = params
        self.buffers: Dict[str, np.ndarray] = dict(buffers or {})
        self.state = state if state is not None else self.initial_state()

    # ------------------------------------------------------------------
    # 초기화
    # ------------------------------------------------------------------

    @property
    def kind(self) -> ModelKind:
        return self.config.model

    @property
    def uses_context(self) -> bool:
        return self.kind is ModelKind.METAVRF and self.config.mode is not InferenceMode.NONE

    def initial_state(self) -> ContextState:
        return zero_state(self.config.context_dim, mode_direction(self.config.mode))

    @staticmethod
    def initialize(config: ExperimentConfig) -> Tuple[ParameterStore, Dict[str, np.ndarray]]:
        """시드에서 파라미터와 버퍼를 결정적으로 초기화합니다."""
        rng = np.random.default_rng(np.random.SeedSequence([config.seed, 0]))
        params = ParameterStore()
        buffers: Dict[str, np.ndarray] = {}

        if config.task is TaskFamily.OMNIGLOT:
            params.update(init_cnn_embedder(rng, channels=config.cnn_channels))
        else:
            input_dim = 1 if config.task is TaskFamily.SINE else config.blob_dim
            params.update(init_mlp_embedder(rng, input_dim, config.embedding_dim))

        if config.model is ModelKind.METAVRF:
            depth = CLASSIFICATION_POSTERIOR_DEPTH if config.classification else REGRESSION_POSTERIOR_DEPTH
            params.update(init_posterior_params(rng, config.posterior_input_dim, config.inference_width,
                                                config.embedding_dim, depth=depth))
            params.update(init_prior_params(rng, config.embedding_dim, config.inference_width))
            if config.mode is not InferenceMode.NONE:
                params.update(init_lstm_params(rng, config.embedding_dim, config.context_dim, FORWARD_PREFIX))
            if config.mode is InferenceMode.BILSTM:
                params.update(init_lstm_params(rng, config.embedding_dim, config.context_dim, BACKWARD_PREFIX))
        elif config.model is ModelKind.FIXED_RFF:
            buffers[BASIS_FREQUENCIES] = rng.standard_normal((config.bases, config.embedding_dim))
            buffers[BASIS_BIASES] = sample_biases(rng, config.bases)

        params[LOG_LAMBDA] = np.array(0.0)
        logger.debug(f"모델 초기화: kind={config.model.value}, 파라미터 {params.count()}개")
        return params, buffers

    # ------------------------------------------------------------------
    # 순전파 구성 요소
    # ------------------------------------------------------------------

    def embed(self, x: np.ndarray, params: Params, train: bool = False,
              rng: Optional[np.random.Generator] = None):
        if self.config.task is TaskFamily.OMNIGLOT:
            return embed_cnn(x, params, train_mode=train, rng=rng, keep_prob=self.config.keep_prob)
        return embed_mlp(x, params)

    def embed_task(self, task: "Task", params: Params, train: bool = False,
                   rng: Optional[np.random.Generator] = None) -> EmbeddedTask:
        support = self.embed(task.support_x, params, train, rng)
        query = self.embed(task.query_x, params, train, rng)
        return EmbeddedTask(support, task.support_y, query, task.query_y, task.ways, task.classification)

    def infer_contexts(self, supports: Sequence, params: Params,
                       state: ContextState) -> Tuple[List, ContextState]:
        """태스크별 사후분포 입력과 다음 문맥 상태를 반환합니다."""
        pooled = [pool_support(s) for s in supports]
        if not self.uses_context:
            return pooled, state
        return step_sequence(pooled, state, params)

    def basis_for(self, post, rng: np.random.Generator) -> SpectralBasis:
        frequencies = reparameterize(post, self.config.bases, rng)
        return SpectralBasis(frequencies, sample_biases(rng, self.config.bases), self.config.scale_mode)

    def baseline_predict(self, task: EmbeddedTask, params: Params):
        """고정 RFF 또는 정확한 RBF 커널로 쿼리 예측을 반환합니다."""
        if self.kind is ModelKind.FIXED_RFF:
            basis = SpectralBasis(self.buffers[BASIS_FREQUENCIES], self.buffers[BASIS_BIASES],
                                  self.config.scale_mode)
            return kernel_ridge_predict(task, basis, params[LOG_LAMBDA])

        if value_of(task.support).shape[0] < 2:
            bandwidth = FALLBACK_BANDWIDTH
        else:
            bandwidth = mean_pairwise_bandwidth(task.support)
        sigma = max(bandwidth, MIN_BANDWIDTH)
        solution = fit(rbf_exact(task.support, task.support, sigma), support_targets(task),
                       ridge_lambda(params[LOG_LAMBDA]))
        return predict(solution, rbf_exact(task.support, task.query, sigma))

    # ------------------------------------------------------------------
    # 학습 / 평가
    # ------------------------------------------------------------------

    def batch_loss(self, graph: Graph, tasks: Sequence["Task"], rngs: Sequence[np.random.Generator],
                   train: bool = True) -> BatchResult:
        """메타 배치의 평균 음의 ELBO 노드와 분리된 다음 문맥 상태를 반환합니다."""
        if not tasks:
            raise ValueError("빈 메타 배치입니다")
        nodes = {name: graph.parameter(name, value) for name, value in self.params.items()}
        embedded = [self.embed_task(t, nodes, train, rng) for t, rng in zip(tasks, rngs)]

        terms: List[ElboTerms] = []
        state = self.state
        if self.kind is ModelKind.METAVRF:
            contexts, state = self.infer_contexts([e.support for e in embedded], nodes, self.state)
            for task, h, rng in zip(embedded, contexts, rngs):
                terms.append(elbo_loss(task, posterior(h, nodes), nodes, nodes[LOG_LAMBDA], self.config.bases,
                                       rng, self.config.scale_mode))
        else:
            for task in embedded:
                data = task_loss(task, self.baseline_predict(task, nodes))
                terms.append(ElboTerms(data, data, graph.constant(0.0)))

        loss = terms[0].loss
        for extra in terms[1:]:
            loss = loss + extra.loss
        loss = loss * (1.0 / len(terms))
        return BatchResult(loss, terms, state.detach())

    def predict_task(self, task: "Task", rng: np.random.Generator) -> np.ndarray:
        """고정된 네트워크와 문맥 상태로 피드포워드 예측만 수행합니다 (C_out × m)."""
        params = dict(self.params.items())
        embedded = self.embed_task(task, params)
        if self.kind is not ModelKind.METAVRF:
            return self.baseline_predict(embedded, params)
        (h,), _ = self.infer_contexts([embedded.support], params, self.state)
        basis = self.basis_for(posterior(h, params), rng)
        return kernel_ridge_predict(embedded, basis, params[LOG_LAMBDA])

    def score_task(self, task: "Task", rng: np.random.Generator) -> Tuple[float, np.ndarray]:
        """(지표, 예측) 을 반환합니다. 분류는 정확도, 회귀는 MSE 입니다."""
        prediction = self.predict_task(task, rng)
        if task.classification:
            return accuracy(prediction, task.query_y), prediction
        target = np.asarray(task.query_y, dtype=np.float64).reshape(1, -1)
        return float(mse_loss(prediction, target)), prediction
