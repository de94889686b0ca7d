"""
MetaVRF Toolkit Managers
태스크, 데이터셋, 체크포인트, 학습/평가 관리자
"""

from .checkpoint import Checkpoint, CheckpointManager
from .evaluator import EvalReport, meta_test, run_ablation, run_baseline, sweep_basis_count
from .omniglot import OmniglotManager
from .tasks import Task, TaskSampler
from .trainer import MetaTrainer, meta_train

__all__ = [
    'Checkpoint',
    'CheckpointManager',
    'EvalReport',
    'meta_test',
    'run_ablation',
    'run_baseline',
    'sweep_basis_count',
    'OmniglotManager',
    'Task',
    'TaskSampler',
    'MetaTrainer',
    'meta_train'
]
