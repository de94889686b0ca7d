#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Optimizer
파라미터 저장소와 Adam 최적화기
"""

import hashlib
from collections import OrderedDict
from typing import Dict, Iterator, Mapping, Optional, Tuple

import numpy as np
from typing_extensions import Self

from ..core.errors import ShapeError


class ParameterStore:
    """이름 → 배열 의 순서 있는 파라미터 저장소"""

    def __init__(self, params: Optional[Mapping[str, np.ndarray]] = None):
        self._params: "OrderedDict[str, np.ndarray]" = OrderedDict()
        for name, value in (params or {}).items():
            self[name] = value

    def __getitem__(self, name: str) -> np.ndarray:
        return self._params[name]

    def __setitem__(self, name: str, value: np.ndarray) -> None:
        self._params[name] = np.array(value, dtype=np.float64)

    def __contains__(self, name: object) -> bool:
        return name in self._params

    def __iter__(self) -> Iterator[str]:
        return iter(self._params)

    def __len__(self) -> int:
        return len(self._params)

    def items(self):
        return self._params.items()

    def names(self):
        return list(self._params)

    def update(self, params: Mapping[str, np.ndarray]) -> None:
        for name, value in params.items():
            self[name] = value

    def count(self) -> int:
        """전체 스칼라 파라미터 개수를 반환합니다."""
        return int(sum(v.size for v in self._params.values()))

    def copy(self) -> Self:
        return type(self)({k: v.copy() for k, v in self._params.items()})

    def checksum(self) -> str:
        """이름과 little-endian 바이트의 SHA-256 체크섬을 반환합니다."""
        digest = hashlib.sha256()
        for name, value in self._params.items():
            digest.update(name.encode("utf-8"))
            digest.update(str(value.shape).encode("utf-8"))
            digest.update(np.ascontiguousarray(value, dtype="<f8").tobytes())
        return digest.hexdigest()


class Adam:
    """Adam 최적화기 (편향 보정 포함)"""

    def __init__(self, lr: float = 1e-4, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        if not lr > 0:
            raise ValueError(f"lr 는 양수여야 합니다: {lr}")
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m: Dict[str, np.ndarray] = {}
        self.v: Dict[str, np.ndarray] = {}

    def step(self, params: ParameterStore, grads: Mapping[str, np.ndarray]) -> None:
        """기울기로 파라미터를 제자리에서 갱신합니다. 기울기가 없는 파라미터는 건너뜁니다."""
        self.t += 1
        correction1 = 1.0 - self.beta1 ** self.t
        correction2 = 1.0 - self.beta2 ** self.t
        for name, grad in grads.items():
            if name not in params:
                continue
            value = params[name]
            if grad.shape != value.shape:
                raise ShapeError("adam", value.shape, grad.shape, name=name)
            m = self.m.get(name, np.zeros_like(value))
            v = self.v.get(name, np.zeros_like(value))
            m = self.beta1 * m + (1.0 - self.beta1) * grad
            v = self.beta2 * v + (1.0 - self.beta2) * grad * grad
            self.m[name] = m
            self.v[name] = v
            params[name] = value - self.lr * (m / correction1) / (np.sqrt(v / correction2) + self.eps)

    def state(self) -> Tuple[int, Dict[str, np.ndarray], Dict[str, np.ndarray]]:
        """(t, m, v) 상태를 반환합니다."""
        return self.t, dict(self.m), dict(self.v)

    def load_state(self, t: int, m: Mapping[str, np.ndarray], v: Mapping[str, np.ndarray]) -> None:
        self.t = int(t)
        self.m = {k: np.array(a, dtype=np.float64) for k, a in m.items()}
        self.v = {k: np.array(a, dtype=np.float64) for k, a in v.items()}
