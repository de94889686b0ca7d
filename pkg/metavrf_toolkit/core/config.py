#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Configuration
실험 설정 관리 시스템
"""

import os
import json
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from typing import Any, Dict, List, Optional

from typing_extensions import Self

from .enums import (
    DATA_ROOT_ENV,
    InferenceMode,
    ModelKind,
    OMNIGLOT_SPLIT_SIZES,
    ScaleMode,
    TaskFamily,
)

# 태스크별 기본값 (iterations, batch, ways, shots, query, embedding, context)
_PRESETS: Dict[TaskFamily, Dict[str, Any]] = {
    TaskFamily.SINE: dict(iterations=20000, batch=6, ways=1, shots=5, query=10,
                          embedding_dim=40, context_dim=40, inference_width=40),
    TaskFamily.BLOBS: dict(iterations=5000, batch=8, ways=5, shots=1, query=15,
                           embedding_dim=40, context_dim=40, inference_width=40),
    TaskFamily.OMNIGLOT: dict(iterations=10000, batch=6, ways=5, shots=1, query=15,
                              embedding_dim=256, context_dim=256, inference_width=256),
}

_ENUM_FIELDS = {
    "task": TaskFamily,
    "model": ModelKind,
    "mode": InferenceMode,
    "scale_mode": ScaleMode,
}


@dataclass
class ExperimentConfig:
    """메타 학습 실험 설정"""
    task: TaskFamily = TaskFamily.SINE
    model: ModelKind = ModelKind.METAVRF
    mode: InferenceMode = InferenceMode.BILSTM
    ways: int = 1
    shots: int = 5
    query: int = 10
    bases: int = 780
    iterations: int = 20000
    batch: int = 6
    lr: float = 1e-4
    seed: int = 0
    out: str = "runs/metavrf"
    data_root: Optional[str] = None
    scale_mode: ScaleMode = ScaleMode.RSQRT
    embedding_dim: int = 40
    context_dim: int = 40
    inference_width: int = 40
    cnn_channels: int = 64
    keep_prob: float = 0.9
    log_every: int = 100
    eval_episodes: int = 100
    workers: int = 1
    dataset_seed: int = 0
    blob_dim: int = 16
    blob_separation: float = 6.0
    blob_classes: List[int] = field(default_factory=lambda: [64, 16, 20])
    blob_examples: int = 40
    omniglot_split: List[int] = field(default_factory=lambda: list(OMNIGLOT_SPLIT_SIZES))

    def __post_init__(self):
        # JSON 이나 CLI 에서 문자열로 들어온 열거형 값을 변환
        for name, enum_type in _ENUM_FIELDS.items():
            value = getattr(self, name)
            if not isinstance(value, enum_type):
                setattr(self, name, enum_type(value))
        self.blob_classes = list(self.blob_classes)
        self.omniglot_split = list(self.omniglot_split)

    @classmethod
    def preset(cls, task: TaskFamily, **overrides: Any) -> Self:
        """태스크 종류에 맞는 기본 설정을 반환합니다."""
        task = TaskFamily(task)
        values: Dict[str, Any] = dict(_PRESETS[task])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(task=task, **values)

    @property
    def classification(self) -> bool:
        return self.task.is_classification

    @property
    def posterior_input_dim(self) -> int:
        """사후분포 MLP 입력 차원 (none: 임베딩, lstm: h, bilstm: [h→, h←])"""
        if self.mode is InferenceMode.NONE:
            return self.embedding_dim
        if self.mode is InferenceMode.BILSTM:
            return 2 * self.context_dim
        return self.context_dim

    def with_overrides(self, **overrides: Any) -> Self:
        """None 이 아닌 값만 덮어쓴 복사본을 반환합니다."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> Dict[str, Any]:
        """JSON 직렬화 가능한 딕셔너리로 변환합니다."""
        data = {}
        for f in fields(self):
            value = getattr(self, f.name)
            data[f.name] = value.value if isinstance(value, Enum) else value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> Self:
        """딕셔너리에서 설정을 생성합니다. 알 수 없는 키는 무시합니다."""
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})

    @classmethod
    def from_file(cls, config_path: str) -> Self:
        """설정 파일에서 ExperimentConfig를 로드합니다."""
        if not os.path.exists(config_path):
            raise FileNotFoundError(f"설정 파일을 찾을 수 없습니다: {config_path}")

        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                config_data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"설정 파일 JSON 파싱 오류: {e}")

        return cls.from_dict(config_data)

    def save_to_file(self, config_path: str) -> bool:
        """설정을 파일로 저장합니다."""
        from .logger import logger

        try:
            directory = os.path.dirname(config_path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(config_path, 'w', encoding='utf-8') as f:
                json.dump(self.to_dict(), f, indent=4, ensure_ascii=False)

            logger.info(f"설정 파일 저장 완료: {config_path}")
            return True
        except OSError as e:
            logger.error(f"설정 파일 저장 오류: {e}")
            return False

    def validate(self) -> tuple[bool, List[str]]:
        """설정의 유효성을 검사합니다."""
        errors = []

        if self.bases < 1:
            errors.append(f"기저 개수 D 는 1 이상이어야 합니다: {self.bases}")
        if self.iterations < 1:
            errors.append(f"iterations 는 1 이상이어야 합니다: {self.iterations}")
        if self.batch < 1:
            errors.append(f"batch 는 1 이상이어야 합니다: {self.batch}")
        if self.shots < 1:
            errors.append(f"shots 는 1 이상이어야 합니다: {self.shots}")
        if self.query < 1:
            errors.append(f"query 는 1 이상이어야 합니다: {self.query}")
        if self.classification and self.ways < 2:
            errors.append(f"분류 태스크의 ways 는 2 이상이어야 합니다: {self.ways}")
        if not self.lr > 0:
            errors.append(f"학습률은 양수여야 합니다: {self.lr}")
        if not (0.0 < self.keep_prob <= 1.0):
            errors.append(f"keep_prob 범위를 벗어났습니다 (0-1]: {self.keep_prob}")
        if self.log_every < 1:
            errors.append(f"log_every 는 1 이상이어야 합니다: {self.log_every}")
        if self.workers < 1:
            errors.append(f"workers 는 1 이상이어야 합니다: {self.workers}")
        if self.blob_separation < 0:
            errors.append(f"blob_separation 은 음수일 수 없습니다: {self.blob_separation}")
        if len(self.blob_classes) != 3:
            errors.append(f"blob_classes 는 [train, val, test] 세 값이어야 합니다: {self.blob_classes}")
        if len(self.omniglot_split) != 3 or min(self.omniglot_split) < 1:
            errors.append(f"omniglot_split 은 양수 [train, val, test] 세 값이어야 합니다: {self.omniglot_split}")
        if self.task is TaskFamily.OMNIGLOT and self.embedding_dim != 4 * self.cnn_channels:
            errors.append(f"Omniglot CNN 임베딩 차원은 4 × cnn_channels 입니다: {self.embedding_dim}")
        if self.task is TaskFamily.OMNIGLOT and not self.data_root:
            errors.append(f"Omniglot 데이터 경로가 필요합니다 (--data 또는 {DATA_ROOT_ENV})")
        if self.data_root and not os.path.isdir(self.data_root):
            errors.append(f"데이터 경로가 존재하지 않습니다: {self.data_root}")

        return len(errors) == 0, errors


def resolve_data_root(cli_value: Optional[str] = None) -> Optional[str]:
    """데이터 경로를 결정합니다. CLI 값이 환경 변수보다 우선합니다."""
    if cli_value:
        return cli_value
    return os.environ.get(DATA_ROOT_ENV) or None


def create_sample_config(file_path: str = "metavrf_config.json",
                         task: TaskFamily = TaskFamily.BLOBS) -> bool:
    """샘플 설정 파일을 생성합니다."""
    from .logger import logger

    sample_config = ExperimentConfig.preset(task)
    success = sample_config.save_to_file(file_path)
    if success:
        logger.info(f"샘플 설정 파일 생성 완료: {file_path}")
        logger.info("설정 파일을 수정한 후 --config 옵션으로 사용하세요.")

    return success


def load_config_with_fallback(config_path: Optional[str] = None,
                              task: TaskFamily = TaskFamily.SINE) -> ExperimentConfig:
    """설정 파일을 로드하거나 태스크 기본 설정을 반환합니다."""
    if config_path and os.path.exists(config_path):
        try:
            return ExperimentConfig.from_file(config_path)
        except (ValueError, TypeError) as e:
            from .logger import logger
            logger.warning(f"설정 파일 로드 실패, 기본 설정 사용: {e}")

    return ExperimentConfig.preset(task)
