#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Enums
명령 타입과 기타 열거형 정의
"""

from enum import Enum


class CommandType(Enum):
    """CLI 에서 실행 가능한 명령들"""
    TRAIN = "train"
    TEST = "test"
    BASELINE = "baseline"
    SWEEP = "sweep"
    COMPARE = "compare"
    GRADCHECK = "gradcheck"
    CREATE_CONFIG = "create-config"


class TaskFamily(Enum):
    """태스크 종류"""
    SINE = "sine"
    OMNIGLOT = "omniglot"
    BLOBS = "blobs"

    @property
    def is_classification(self) -> bool:
        return self is not TaskFamily.SINE


class InferenceMode(Enum):
    """문맥 추론 방식 (CLI 값 none | lstm | bilstm)"""
    NONE = "none"
    LSTM = "lstm"
    BILSTM = "bilstm"


class Direction(Enum):
    """LSTM 방향"""
    VANILLA = "vanilla"
    BIDIRECTIONAL = "bidirectional"


class ModelKind(Enum):
    """기저 학습기의 커널 종류"""
    METAVRF = "metavrf"
    FIXED_RFF = "fixed-rff"
    EXACT_RBF = "exact-rbf"


class BaselineKind(Enum):
    """비교 기준 모델 (CLI 값 rff | rbf)"""
    RFF = "rff"
    RBF = "rbf"

    @property
    def model_kind(self) -> ModelKind:
        return ModelKind.FIXED_RFF if self is BaselineKind.RFF else ModelKind.EXACT_RBF


class ScaleMode(Enum):
    """랜덤 푸리에 특징의 스케일 규칙"""
    RSQRT = "rsqrt"          # 1/√D
    UNBIASED = "unbiased"    # √(2/D)


class LabelEncoding(Enum):
    """기저 학습기 타깃 인코딩"""
    REAL_TARGETS = "real"
    ONE_HOT = "one_hot"


class LogLevel(Enum):
    """로그 레벨"""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


# 데이터셋 파티션 이름
PARTITIONS = ("train", "val", "test")

# Omniglot 클래스 분할 (회전 증강 전)
OMNIGLOT_SPLIT_SIZES = (1100, 200, 423)
OMNIGLOT_ROTATIONS = (0, 1, 2, 3)
OMNIGLOT_IMAGE_SIZE = 28

# 환경 변수
DATA_ROOT_ENV = "METAVRF_DATA"

# 고정 RFF 기준 모델의 기본 기저 개수
FIXED_RFF_DEFAULT_BASES = 2048
