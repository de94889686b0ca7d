#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Evaluator
메타 테스트, 기준 모델 비교, 기저 개수 스윕, LSTM 유무 비교
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.config import ExperimentConfig
from ..core.enums import FIXED_RFF_DEFAULT_BASES, BaselineKind, InferenceMode, ModelKind, TaskFamily
from ..core.logger import logger
from ..models.metavrf import MetaVRFModel
from .checkpoint import Checkpoint, CheckpointManager
from .outputs import CURVE_FILE, REPORT_FILE, SWEEP_FILE, OutputManager
from .tasks import Task, TaskSampler
from .trainer import meta_train

CI_Z = 1.96
CURVE_TASKS = 5
COMPARE_FILE = "compare.json"


def confidence_half_width(values: Sequence[float]) -> float:
    """정규 근사 95% 신뢰구간 반폭 1.96·s/√N"""
    if len(values) < 2:
        return 0.0
    return float(CI_Z * np.std(values, ddof=1) / np.sqrt(len(values)))


@dataclass
class EvalReport:
    """에피소드별 지표, 평균, 95% 신뢰구간"""
    metric: str
    metrics: List[float]
    mean: float
    ci95: float
    episodes: int
    config: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_metrics(cls, metric: str, values: Sequence[float], config: Optional[Dict[str, Any]] = None) -> "EvalReport":
        values = [float(v) for v in values]
        return cls(metric, values, float(np.mean(values)), confidence_half_width(values), len(values),
                   dict(config or {}))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "metric": self.metric,
            "mean": self.mean,
            "ci95": self.ci95,
            "episodes": self.episodes,
            "metrics": self.metrics,
            "config": self.config,
        }

    def summary(self) -> str:
        return f"{self.metric} = {self.mean:.4f} ± {self.ci95:.4f} ({self.episodes} episodes)"


@dataclass
class SweepRow:
    bases: int
    metric: float
    ci95: float


def _resolve_model(source: Union[Checkpoint, MetaVRFModel, str]) -> MetaVRFModel:
    if isinstance(source, MetaVRFModel):
        return source
    if isinstance(source, str):
        source = CheckpointManager.load(source)
    return source.to_model()


class MetaEvaluator:
    """고정된 모델로 에피소드를 평가합니다 (파라미터 갱신 없음)."""

    def __init__(self, model: MetaVRFModel, sampler: TaskSampler):
        self.model = model
        self.sampler = sampler

    def _episode(self, index: int, seed: np.random.SeedSequence, ways: Optional[int],
                 shots: Optional[int]) -> Tuple[float, Task, np.ndarray]:
        rng = np.random.default_rng(seed)
        task = self.sampler.sample(rng, "test", ways=ways, shots=shots, evaluation=True, task_seed=index)
        metric, prediction = self.model.score_task(task, rng)
        return metric, task, prediction

    def evaluate(self, episodes: int, ways: Optional[int] = None, shots: Optional[int] = None,
                 seed: Optional[int] = None, workers: int = 1) -> Tuple[List[float], List[Tuple[Task, np.ndarray]]]:
        """에피소드 순서대로 지표와 (태스크, 예측) 목록을 반환합니다."""
        if episodes < 1:
            raise ValueError(f"episodes 는 1 이상이어야 합니다: {episodes}")
        children = np.random.SeedSequence(self.model.config.seed if seed is None else seed).spawn(episodes)

        if workers > 1:
            results: List[Optional[Tuple[float, Task, np.ndarray]]] = [None] * episodes
            with ThreadPoolExecutor(max_workers=workers) as executor:
                future_to_index = {
                    executor.submit(self._episode, i, child, ways, shots): i
                    for i, child in enumerate(children)
                }
                for future, index in future_to_index.items():
                    results[index] = future.result()
        else:
            results = [self._episode(i, child, ways, shots) for i, child in enumerate(children)]

        metrics = [r[0] for r in results]
        outputs = [(r[1], r[2]) for r in results]
        return metrics, outputs


def meta_test(source: Union[Checkpoint, MetaVRFModel, str], episodes: int, ways: Optional[int] = None,
              shots: Optional[int] = None, seed: Optional[int] = None, workers: int = 1,
              sampler: Optional[TaskSampler] = None, task: Optional[TaskFamily] = None,
              output_dir: Optional[str] = None) -> EvalReport:
    """고정된 네트워크와 전달된 문맥 상태로 피드포워드 평가만 수행합니다."""
    model = _resolve_model(source)
    config = model.config
    if task is not None and TaskFamily(task) is not config.task:
        raise ValueError(f"체크포인트 태스크({config.task.value})와 평가 태스크({TaskFamily(task).value})가 다릅니다")
    if config.task is TaskFamily.SINE and ways not in (None, 1):
        raise ValueError(f"회귀 태스크의 ways 는 1 입니다: {ways}")
    sampler = sampler or TaskSampler.from_config(config)

    checksum_before = model.params.checksum()
    logger.start(f"메타 테스트: {episodes} episodes, ways={ways or config.ways}, shots={shots or config.shots}")
    metrics, outputs = MetaEvaluator(model, sampler).evaluate(episodes, ways, shots, seed, workers)
    checksum_after = model.params.checksum()
    if checksum_before != checksum_after:
        raise RuntimeError("메타 테스트 중 파라미터가 변경되었습니다")

    echo = config.to_dict()
    echo.update({"eval_ways": ways or config.ways, "eval_shots": shots or config.shots,
                 "eval_seed": config.seed if seed is None else seed, "param_checksum": checksum_after})
    report = EvalReport.from_metrics("accuracy" if config.classification else "mse", metrics, echo)
    logger.complete(f"메타 테스트 완료: {report.summary()}")

    if output_dir:
        out = OutputManager(output_dir)
        out.write_json(REPORT_FILE, report.to_dict())
        if not config.classification:
            rows = []
            for index, (curve_task, prediction) in enumerate(outputs[:CURVE_TASKS]):
                for x, y_true, y_pred in zip(curve_task.query_x[:, 0], curve_task.query_y, prediction[0]):
                    rows.append((index, float(x), float(y_true), float(y_pred)))
            out.write_csv(CURVE_FILE, ("task", "x", "y_true", "y_pred"), rows)
    return report


def run_baseline(config: ExperimentConfig, kind: Union[BaselineKind, ModelKind], bases: Optional[int] = None,
                 episodes: Optional[int] = None, sampler: Optional[TaskSampler] = None,
                 output_dir: Optional[str] = None, workers: int = 1) -> EvalReport:
    """고정 RFF 또는 정확한 RBF 커널 기준 모델을 학습하고 평가합니다."""
    model_kind = kind.model_kind if isinstance(kind, BaselineKind) else ModelKind(kind)
    if model_kind is ModelKind.METAVRF:
        raise ValueError("기준 모델 종류는 fixed-rff 또는 exact-rbf 입니다")
    if bases is None:
        bases = FIXED_RFF_DEFAULT_BASES if model_kind is ModelKind.FIXED_RFF else config.bases
    baseline_config = config.with_overrides(model=model_kind, bases=bases)
    sampler = sampler or TaskSampler.from_config(baseline_config)

    logger.start(f"기준 모델 실행: {model_kind.value} (D={bases})")
    result = meta_train(baseline_config, sampler, output_dir or "", save=bool(output_dir))
    return meta_test(result.model, episodes or config.eval_episodes, sampler=sampler,
                     output_dir=output_dir, workers=workers)


def sweep_basis_count(config: ExperimentConfig, bases_list: Sequence[int], episodes: Optional[int] = None,
                      sampler: Optional[TaskSampler] = None, output_dir: Optional[str] = None,
                      workers: int = 1) -> List[SweepRow]:
    """기저 개수 D 별로 학습/평가하고 sweep.csv 를 기록합니다."""
    if not bases_list:
        raise ValueError("D 목록이 비어 있습니다")
    sampler = sampler or TaskSampler.from_config(config)
    rows: List[SweepRow] = []
    for bases in bases_list:
        run_config = config.with_overrides(bases=int(bases))
        run_dir = os.path.join(output_dir, f"bases_{bases}") if output_dir else ""
        logger.progress(f"스윕: D={bases}")
        result = meta_train(run_config, sampler, run_dir, save=bool(run_dir))
        report = meta_test(result.model, episodes or config.eval_episodes, sampler=sampler,
                           output_dir=run_dir or None, workers=workers)
        rows.append(SweepRow(int(bases), report.mean, report.ci95))

    if output_dir:
        OutputManager(output_dir).write_csv(SWEEP_FILE, ("D", "metric", "ci95"),
                                            [(r.bases, r.metric, r.ci95) for r in rows])
    logger.complete(f"스윕 완료: {len(rows)}개 설정")
    return rows


def run_ablation(config: ExperimentConfig, episodes: Optional[int] = None,
                 modes: Sequence[InferenceMode] = tuple(InferenceMode),
                 sampler: Optional[TaskSampler] = None, output_dir: Optional[str] = None,
                 workers: int = 1) -> Dict[InferenceMode, EvalReport]:
    """같은 시드로 문맥 추론 방식별 (none / lstm / bilstm) 성능을 비교합니다."""
    sampler = sampler or TaskSampler.from_config(config)
    reports: Dict[InferenceMode, EvalReport] = {}
    for mode in modes:
        mode = InferenceMode(mode)
        run_config = config.with_overrides(mode=mode, model=ModelKind.METAVRF)
        run_dir = os.path.join(output_dir, f"mode_{mode.value}") if output_dir else ""
        logger.progress(f"비교 실행: mode={mode.value}")
        result = meta_train(run_config, sampler, run_dir, save=bool(run_dir))
        reports[mode] = meta_test(result.model, episodes or config.eval_episodes, sampler=sampler,
                                  output_dir=run_dir or None, workers=workers)

    if output_dir:
        OutputManager(output_dir).write_json(COMPARE_FILE, {m.value: r.to_dict() for m, r in reports.items()})
    for mode, report in reports.items():
        logger.info(f"{mode.value:>7}: {report.summary()}")
    return reports
