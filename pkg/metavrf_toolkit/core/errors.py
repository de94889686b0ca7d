#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Errors
툴킷 전용 예외 계층
"""

from typing import Any, List, Optional, Sequence


class MetaVRFError(Exception):
    """MetaVRF Toolkit 예외의 최상위 클래스"""


class ShapeError(MetaVRFError, ValueError):
    """연산 입력의 shape 가 맞지 않을 때 발생합니다."""

    def __init__(self, op: str, expected: Any, actual: Any, node_id: Optional[int] = None,
                 name: Optional[str] = None):
        self.op = op
        self.expected = expected
        self.actual = actual
        self.node_id = node_id
        self.name = name
        where = f"node #{node_id}" if node_id is not None else "node"
        if name:
            where += f" ({name})"
        super().__init__(f"shape 불일치: {where} op={op} expected={expected} actual={actual}")

    def at(self, node_id: int, name: Optional[str] = None) -> "ShapeError":
        """노드 정보를 채운 새 예외를 반환합니다."""
        return ShapeError(self.op, self.expected, self.actual, node_id, name)


class GraphError(MetaVRFError, RuntimeError):
    """계산 그래프를 잘못 사용했을 때 발생합니다."""


class SingularSystemError(MetaVRFError, ValueError):
    """λI + K 가 특이행렬일 때 발생합니다."""

    def __init__(self, lam: float):
        self.lam = lam
        super().__init__(
            f"λI + K 가 특이행렬입니다 (λ={lam}). 양수 λ 를 사용하세요."
        )


class DatasetError(MetaVRFError, ValueError):
    """데이터셋 파일이 없거나 손상되었을 때 발생합니다."""

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        super().__init__(f"{message}: {path}" if path else message)


class CheckpointError(MetaVRFError, ValueError):
    """체크포인트 파일 형식 오류"""


class TrainingDivergedError(MetaVRFError, RuntimeError):
    """학습 중 손실이 유한하지 않을 때 발생합니다."""

    def __init__(self, iteration: int, task_seeds: Sequence[int], loss: float,
                 dump_path: Optional[str] = None):
        self.iteration = iteration
        self.task_seeds: List[int] = list(task_seeds)
        self.loss = loss
        self.dump_path = dump_path
        super().__init__(
            f"iteration {iteration} 에서 손실이 발산했습니다 (loss={loss}, task_seeds={self.task_seeds}, dump={dump_path})"
        )
