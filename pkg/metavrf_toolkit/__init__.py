#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit
메타 변분 랜덤 특징 기반 퓨샷 학습 도구

Version: 1.1.0
License: MIT
"""

# 버전 정보 (cli 에서 참조하므로 import 보다 먼저 정의)
__version__ = "1.1.0"
__license__ = "MIT"

from .core.config import ExperimentConfig
from .core.enums import CommandType, InferenceMode, ModelKind, TaskFamily
from .core.logger import MetaVRFLogger
from .core.toolkit import MetaVRFToolkit

__all__ = [
    'MetaVRFToolkit',
    'ExperimentConfig',
    'MetaVRFLogger',
    'CommandType',
    'TaskFamily',
    'InferenceMode',
    'ModelKind',
    '__version__',
    '__license__'
]


def get_version():
    """패키지 버전을 반환합니다."""
    return __version__
