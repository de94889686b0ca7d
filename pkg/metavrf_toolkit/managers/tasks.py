#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Task Manager
에피소드 생성 (사인 회귀, C-way k-shot 분류, 합성 블롭 데이터셋)
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy.spatial.distance import pdist

from ..core.config import ExperimentConfig
from ..core.enums import PARTITIONS, TaskFamily
from ..core.logger import logger

SINE_AMPLITUDE = (0.1, 5.0)
SINE_FREQUENCY = (0.8, 1.2)
SINE_PHASE = (0.0, math.pi)
SINE_INPUT = (-5.0, 5.0)
SINE_TRAIN_QUERY = 10
SINE_EVAL_POINTS = 100


@dataclass
class Task:
    """하나의 에피소드 (서포트 / 쿼리 집합과 메타데이터)"""
    support_x: np.ndarray
    support_y: np.ndarray
    query_x: np.ndarray
    query_y: np.ndarray
    ways: int
    shots: int
    task_seed: Optional[int] = None
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def classification(self) -> bool:
        return np.issubdtype(self.support_y.dtype, np.integer)

    @property
    def query_per_class(self) -> int:
        return len(self.query_y) // max(self.ways, 1)


@dataclass
class DatasetSplit:
    """train / val / test 클래스 파티션. 각 클래스는 (예제 수, ...) 배열입니다."""
    train: List[np.ndarray]
    val: List[np.ndarray]
    test: List[np.ndarray]
    name: str = "dataset"
    means: Optional[np.ndarray] = None

    def partition(self, name: str) -> List[np.ndarray]:
        """이름으로 파티션을 반환합니다."""
        if name not in PARTITIONS:
            raise ValueError(f"알 수 없는 파티션입니다: {name} (가능: {', '.join(PARTITIONS)})")
        return getattr(self, name)

    def class_counts(self) -> Dict[str, int]:
        return {name: len(self.partition(name)) for name in PARTITIONS}

    @property
    def input_shape(self) -> tuple:
        return tuple(self.train[0].shape[1:]) if self.train else ()


def sine_function(x: np.ndarray, amplitude: float, frequency: float, phase: float) -> np.ndarray:
    """y = A sin(wx + b)"""
    return amplitude * np.sin(frequency * x + phase)


def _sine_task(rng: np.random.Generator, shots: int, query_x: Optional[np.ndarray], query: int,
               task_seed: Optional[int]) -> Task:
    if shots < 1:
        raise ValueError(f"shots 는 1 이상이어야 합니다: {shots}")
    amplitude = rng.uniform(*SINE_AMPLITUDE)
    frequency = rng.uniform(*SINE_FREQUENCY)
    phase = rng.uniform(*SINE_PHASE)
    support_x = rng.uniform(*SINE_INPUT, size=shots)
    if query_x is None:
        query_x = rng.uniform(*SINE_INPUT, size=query)
    return Task(
        support_x=support_x.reshape(-1, 1),
        support_y=sine_function(support_x, amplitude, frequency, phase),
        query_x=query_x.reshape(-1, 1),
        query_y=sine_function(query_x, amplitude, frequency, phase),
        ways=1,
        shots=shots,
        task_seed=task_seed,
        meta={"amplitude": amplitude, "frequency": frequency, "phase": phase},
    )


def sample_sine_task(rng: np.random.Generator, shots: int, query: int = SINE_TRAIN_QUERY,
                     task_seed: Optional[int] = None) -> Task:
    """학습용 사인 태스크 (쿼리 x 는 [−5, 5] 균등 샘플)"""
    return _sine_task(rng, shots, None, query, task_seed)


def sample_sine_eval_task(rng: np.random.Generator, shots: int, points: int = SINE_EVAL_POINTS,
                          task_seed: Optional[int] = None) -> Task:
    """평가용 사인 태스크 (쿼리 x 는 [−5, 5] 균등 격자)"""
    return _sine_task(rng, shots, np.linspace(*SINE_INPUT, points), points, task_seed)


def sample_classification_episode(split: DatasetSplit, ways: int, shots: int, query: int,
                                  rng: np.random.Generator, partition: str = "train",
                                  task_seed: Optional[int] = None) -> Task:
    """C 개 클래스에서 클래스당 k 서포트 + m 쿼리를 겹치지 않게 뽑습니다. 라벨은 0..C−1 로 다시 매깁니다."""
    classes = split.partition(partition)
    if ways < 1 or shots < 1 or query < 1:
        raise ValueError(f"ways, shots, query 는 1 이상이어야 합니다: {ways}, {shots}, {query}")
    if len(classes) < ways:
        raise ValueError(f"{partition} 파티션의 클래스가 부족합니다: {len(classes)} < {ways}")

    chosen = rng.choice(len(classes), size=ways, replace=False)
    support_x, query_x, support_idx, query_idx = [], [], [], []
    for class_id in chosen:
        examples = classes[class_id]
        if len(examples) < shots + query:
            raise ValueError(
                f"클래스 {class_id} 의 예제가 부족합니다: {len(examples)} < {shots + query}"
            )
        order = rng.permutation(len(examples))[:shots + query]
        support_idx.append(order[:shots])
        query_idx.append(order[shots:])
        support_x.append(np.asarray(examples[order[:shots]], dtype=np.float64))
        query_x.append(np.asarray(examples[order[shots:]], dtype=np.float64))

    return Task(
        support_x=np.concatenate(support_x),
        support_y=np.repeat(np.arange(ways), shots),
        query_x=np.concatenate(query_x),
        query_y=np.repeat(np.arange(ways), query),
        ways=ways,
        shots=shots,
        task_seed=task_seed,
        meta={"partition": partition, "classes": chosen.tolist(),
              "support_index": support_idx, "query_index": query_idx},
    )


def make_blob_dataset(class_counts: Sequence[int], dim: int, separation: float, examples: int,
                      rng: np.random.Generator) -> DatasetSplit:
    """단위 분산 가우시안 군집. 클래스 평균 사이 최소 거리가 separation 이 되도록 조정합니다."""
    if separation < 0:
        raise ValueError(f"separation 은 음수일 수 없습니다: {separation}")
    if len(class_counts) != len(PARTITIONS):
        raise ValueError(f"class_counts 는 {len(PARTITIONS)} 개여야 합니다: {class_counts}")
    total = int(sum(class_counts))
    if total < 1:
        raise ValueError("클래스가 하나 이상 필요합니다")

    means = rng.standard_normal((total, dim))
    if separation == 0:
        means = np.zeros_like(means)
    elif total > 1:
        means *= separation / pdist(means).min()

    classes = [mean + rng.standard_normal((examples, dim)) for mean in means]
    bounds = np.cumsum([0, *class_counts])
    return DatasetSplit(*(classes[bounds[i]:bounds[i + 1]] for i in range(len(PARTITIONS))),
                        name="blobs", means=means)


class TaskSampler:
    """설정에 맞는 태스크 생성기"""

    def __init__(self, config: ExperimentConfig, split: Optional[DatasetSplit] = None):
        self.config = config
        self.split = split
        if config.classification and split is None:
            raise ValueError("분류 태스크에는 DatasetSplit 이 필요합니다")

    @classmethod
    def from_config(cls, config: ExperimentConfig) -> "TaskSampler":
        """설정에서 데이터셋을 준비합니다."""
        if config.task is TaskFamily.SINE:
            return cls(config)
        if config.task is TaskFamily.BLOBS:
            split = make_blob_dataset(config.blob_classes, config.blob_dim, config.blob_separation,
                                      config.blob_examples, np.random.default_rng(config.dataset_seed))
            logger.info(f"블롭 데이터셋 생성: {split.class_counts()}")
            return cls(config, split)

        from .omniglot import load_omniglot
        split = load_omniglot(config.data_root, config.omniglot_split, seed=config.dataset_seed)
        return cls(config, split)

    def sample(self, rng: np.random.Generator, partition: str = "train", ways: Optional[int] = None,
               shots: Optional[int] = None, evaluation: bool = False, task_seed: Optional[int] = None) -> Task:
        shots = shots or self.config.shots
        if self.config.task is TaskFamily.SINE:
            if evaluation:
                return sample_sine_eval_task(rng, shots, task_seed=task_seed)
            return sample_sine_task(rng, shots, self.config.query, task_seed=task_seed)
        return sample_classification_episode(self.split, ways or self.config.ways, shots, self.config.query,
                                             rng, partition, task_seed)
