"""
MetaVRF Toolkit Engine
역전파 그래프, 기울기 검증, 옵티마이저
"""

from .autodiff import Graph, Node
from .gradcheck import grad_check, run_gradient_suite
from .optim import Adam, ParameterStore

__all__ = [
    'Graph',
    'Node',
    'grad_check',
    'run_gradient_suite',
    'Adam',
    'ParameterStore'
]
