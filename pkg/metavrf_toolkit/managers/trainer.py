#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Trainer
에피소드 메타 학습 루프 (배치 ELBO, Adam, 문맥 상태 전달)
"""

import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..core.config import ExperimentConfig
from ..core.errors import TrainingDivergedError
from ..core.logger import logger
from ..engine.autodiff import Graph
from ..engine.optim import Adam
from ..models.metavrf import MetaVRFModel
from .checkpoint import CHECKPOINT_FILE, Checkpoint, CheckpointManager
from .outputs import CONFIG_FILE, DIVERGED_FILE, LOG_FILE, OutputManager
from .tasks import TaskSampler

SEED_BOUND = 2 ** 32


@dataclass
class TrainResult:
    model: MetaVRFModel
    checkpoint: Checkpoint
    checkpoint_path: Optional[str]
    losses: List[float] = field(default_factory=list)
    metrics: List[Dict[str, float]] = field(default_factory=list)


def ensure_valid(config: ExperimentConfig) -> None:
    """유효하지 않은 설정이면 모든 오류를 로그로 남기고 ValueError 를 발생시킵니다."""
    is_valid, errors = config.validate()
    if not is_valid:
        for error in errors:
            logger.error(error)
        raise ValueError("설정 검증 실패: " + "; ".join(errors))


class MetaTrainer:
    """메타 학습 실행기"""

    def __init__(self, config: ExperimentConfig, sampler: Optional[TaskSampler] = None,
                 output_dir: Optional[str] = None, save: bool = True, resume: Optional[Checkpoint] = None):
        ensure_valid(config)
        self.config = config
        self.sampler = sampler or TaskSampler.from_config(config)
        self.outputs = OutputManager(output_dir if output_dir is not None else config.out)
        self.save = save
        self.model = MetaVRFModel(config)
        self.optimizer = Adam(config.lr)
        self.rng = np.random.default_rng(np.random.SeedSequence([config.seed, 1]))
        self.start_iteration = 0
        if resume is not None:
            self._restore(resume)

    def _restore(self, checkpoint: Checkpoint) -> None:
        """체크포인트의 파라미터, 문맥 상태, Adam 상태, rng 상태에서 이어서 학습합니다."""
        saved = checkpoint.config
        if (saved.task, saved.model) != (self.config.task, self.config.model):
            raise ValueError(
                f"이어서 학습할 수 없는 체크포인트입니다: {saved.task.value}/{saved.model.value} "
                f"!= {self.config.task.value}/{self.config.model.value}"
            )
        expected = {name: value.shape for name, value in self.model.params.items()}
        actual = {name: value.shape for name, value in checkpoint.params.items()}
        if expected != actual:
            raise ValueError("체크포인트 파라미터 구조가 현재 설정과 다릅니다")
        if checkpoint.iteration >= self.config.iterations:
            raise ValueError(
                f"체크포인트가 이미 {checkpoint.iteration}회 학습되었습니다 (iterations={self.config.iterations})"
            )

        self.model = MetaVRFModel(self.config, checkpoint.params.copy(),
                                  {k: b.copy() for k, b in checkpoint.buffers.items()}, checkpoint.state.detach())
        self.optimizer.load_state(checkpoint.adam_t, checkpoint.adam_m, checkpoint.adam_v)
        if checkpoint.rng_state:
            self.rng.bit_generator.state = checkpoint.rng_state
        self.start_iteration = checkpoint.iteration
        logger.info(f"체크포인트에서 이어서 학습: iteration {checkpoint.iteration + 1}부터")

    def _batch_seeds(self) -> List[int]:
        return [int(s) for s in self.rng.integers(0, SEED_BOUND, size=self.config.batch)]

    def step(self, iteration: int) -> float:
        """한 번의 메타 배치 갱신을 수행하고 손실을 반환합니다."""
        seeds = self._batch_seeds()
        rngs = [np.random.default_rng(seed) for seed in seeds]
        tasks = [self.sampler.sample(rng, "train", task_seed=seed) for rng, seed in zip(rngs, seeds)]

        graph = Graph()
        result = self.model.batch_loss(graph, tasks, rngs, train=True)
        loss = float(result.loss.value)
        if not math.isfinite(loss):
            self._dump_divergence(iteration, seeds, loss)

        grads = graph.backward(result.loss)
        self.optimizer.step(self.model.params, grads)
        self.model.state = result.state
        return loss

    def _dump_divergence(self, iteration: int, seeds: List[int], loss: float) -> None:
        dump = self.outputs.write_json(DIVERGED_FILE, {
            "iteration": iteration,
            "task_seeds": seeds,
            "loss": repr(loss),
            "config": self.config.to_dict(),
        })
        logger.error(f"손실 발산: iteration {iteration}, task_seeds={seeds}")
        raise TrainingDivergedError(iteration, seeds, loss, dump)

    def run(self) -> TrainResult:
        """설정된 반복 횟수만큼 학습하고 체크포인트를 저장합니다."""
        config = self.config
        log_path = self.outputs.path(LOG_FILE)
        if log_path:
            logger.attach_file(log_path)
        if self.start_iteration == 0:
            self.outputs.reset_metrics()
        self.outputs.write_json(CONFIG_FILE, config.to_dict())

        logger.start(
            f"메타 학습 시작: task={config.task.value}, model={config.model.value}, mode={config.mode.value}, "
            f"D={config.bases}, iterations={config.iterations}, batch={config.batch}"
        )
        losses: List[float] = []
        metrics: List[Dict[str, float]] = []
        start = time.perf_counter()
        try:
            for iteration in range(self.start_iteration + 1, config.iterations + 1):
                losses.append(self.step(iteration))
                if iteration % config.log_every == 0 or iteration == config.iterations:
                    window = losses[-config.log_every:]
                    record = {
                        "iteration": iteration,
                        "loss": float(np.mean(window)),
                        "wall_ms": (time.perf_counter() - start) * 1000.0,
                    }
                    metrics.append(record)
                    self.outputs.append_metrics(record)
                    logger.progress(f"iteration {iteration}/{config.iterations} loss={record['loss']:.6f}")

            checkpoint = Checkpoint.from_model(self.model, config.iterations, self.rng.bit_generator.state,
                                               self.optimizer.state())
            checkpoint_path = None
            if self.save and self.outputs.directory:
                checkpoint_path = CheckpointManager.save(checkpoint, self.outputs.path(CHECKPOINT_FILE))
            logger.success(f"메타 학습 완료: 마지막 손실 {losses[-1]:.6f}")
            return TrainResult(self.model, checkpoint, checkpoint_path, losses, metrics)
        finally:
            if log_path:
                logger.detach_file()


def meta_train(config: ExperimentConfig, sampler: Optional[TaskSampler] = None,
               output_dir: Optional[str] = None, save: bool = True,
               resume: Optional[Checkpoint] = None) -> TrainResult:
    """메타 학습을 실행합니다. resume 이 주어지면 그 체크포인트에서 이어서 학습합니다."""
    return MetaTrainer(config, sampler, output_dir, save, resume).run()
