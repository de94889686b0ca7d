"""
MetaVRF Toolkit Models
커널, 릿지 회귀, 추론 네트워크, 문맥 LSTM, 임베더
"""

from .metavrf import MetaVRFModel

__all__ = [
    'MetaVRFModel'
]
