"""
MetaVRF Toolkit Core 모듈
설정, 열거형, 로거, 예외, 메인 툴킷 클래스
"""

from .config import ExperimentConfig
from .enums import CommandType, TaskFamily
from .errors import MetaVRFError
from .logger import MetaVRFLogger
from .toolkit import MetaVRFToolkit

__all__ = [
    'ExperimentConfig',
    'CommandType',
    'TaskFamily',
    'MetaVRFError',
    'MetaVRFLogger',
    'MetaVRFToolkit'
]
