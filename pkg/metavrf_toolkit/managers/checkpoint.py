#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Checkpoint Manager
바이너리 체크포인트 저장/로드 (매직 헤더, JSON 매니페스트, little-endian float64)
"""

import json
import os
import struct
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.config import ExperimentConfig
from ..core.enums import Direction
from ..core.errors import CheckpointError
from ..core.logger import logger
from ..engine.optim import ParameterStore
from ..models.context import ContextState
from ..models.metavrf import MetaVRFModel

CHECKPOINT_MAGIC = b"MVRFCKPT"
CHECKPOINT_VERSION = 1
CHECKPOINT_FILE = "checkpoint.mvrf"

_STATE_FIELDS = ("h", "c", "h_backward", "c_backward")


@dataclass
class Checkpoint:
    """학습된 파라미터, 마지막 문맥 상태, 설정, 반복 횟수, rng 상태"""
    config: ExperimentConfig
    params: ParameterStore
    state: ContextState
    iteration: int = 0
    rng_state: Dict[str, Any] = field(default_factory=dict)
    buffers: Dict[str, np.ndarray] = field(default_factory=dict)
    adam_t: int = 0
    adam_m: Dict[str, np.ndarray] = field(default_factory=dict)
    adam_v: Dict[str, np.ndarray] = field(default_factory=dict)

    @classmethod
    def from_model(cls, model: MetaVRFModel, iteration: int, rng_state: Optional[Dict[str, Any]] = None,
                   adam_state: Optional[Tuple[int, Dict[str, np.ndarray], Dict[str, np.ndarray]]] = None) -> "Checkpoint":
        t, m, v = adam_state or (0, {}, {})
        return cls(model.config, model.params.copy(), model.state.detach(), iteration, dict(rng_state or {}),
                   {k: b.copy() for k, b in model.buffers.items()}, t, dict(m), dict(v))

    def to_model(self) -> MetaVRFModel:
        """체크포인트에서 모델을 복원합니다."""
        return MetaVRFModel(self.config, self.params.copy(), {k: b.copy() for k, b in self.buffers.items()},
                            self.state.detach())

    def tensors(self) -> List[Tuple[str, np.ndarray]]:
        """매니페스트 순서의 (이름, 배열) 목록"""
        items: List[Tuple[str, np.ndarray]] = []
        items += [(f"param/{k}", v) for k, v in self.params.items()]
        items += [(f"buffer/{k}", v) for k, v in self.buffers.items()]
        for name in _STATE_FIELDS:
            value = getattr(self.state, name)
            if value is not None:
                items.append((f"context/{name}", np.asarray(value)))
        items += [(f"adam/m/{k}", v) for k, v in self.adam_m.items()]
        items += [(f"adam/v/{k}", v) for k, v in self.adam_v.items()]
        return items


class CheckpointManager:
    """체크포인트 파일 관리 클래스"""

    @staticmethod
    def save(checkpoint: Checkpoint, path: str) -> str:
        """체크포인트를 저장하고 경로를 반환합니다."""
        tensors = checkpoint.tensors()
        header = {
            "config": checkpoint.config.to_dict(),
            "iteration": checkpoint.iteration,
            "rng_state": checkpoint.rng_state,
            "adam_t": checkpoint.adam_t,
            "direction": checkpoint.state.direction.value,
            "tensors": [{"name": name, "shape": list(np.shape(value))} for name, value in tensors],
        }
        header_bytes = json.dumps(header, ensure_ascii=False).encode("utf-8")

        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "wb") as f:
            f.write(CHECKPOINT_MAGIC)
            f.write(struct.pack("<I", CHECKPOINT_VERSION))
            f.write(struct.pack("<Q", len(header_bytes)))
            f.write(header_bytes)
            for _, value in tensors:
                f.write(np.ascontiguousarray(value, dtype="<f8").tobytes())

        logger.info(f"체크포인트 저장: {path} (iteration {checkpoint.iteration})")
        return path

    @staticmethod
    def load(path: str) -> Checkpoint:
        """체크포인트를 읽습니다."""
        if not os.path.exists(path):
            raise CheckpointError(f"체크포인트 파일을 찾을 수 없습니다: {path}")

        with open(path, "rb") as f:
            data = f.read()

        offset = len(CHECKPOINT_MAGIC)
        if data[:offset] != CHECKPOINT_MAGIC:
            raise CheckpointError(f"체크포인트 매직 헤더가 올바르지 않습니다: {path}")
        try:
            (version,) = struct.unpack_from("<I", data, offset)
            (header_length,) = struct.unpack_from("<Q", data, offset + 4)
        except struct.error:
            raise CheckpointError(f"체크포인트 헤더가 잘렸습니다: {path}") from None
        if version != CHECKPOINT_VERSION:
            raise CheckpointError(f"지원하지 않는 체크포인트 버전입니다: {version}")
        offset += 12
        try:
            header = json.loads(data[offset:offset + header_length].decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise CheckpointError(f"체크포인트 헤더 파싱 오류: {e}") from None
        offset += header_length

        arrays: Dict[str, np.ndarray] = {}
        for entry in header["tensors"]:
            shape = tuple(entry["shape"])
            size = int(np.prod(shape, dtype=np.int64))
            end = offset + 8 * size
            if end > len(data):
                raise CheckpointError(f"체크포인트 데이터가 잘렸습니다: {entry['name']}")
            arrays[entry["name"]] = np.frombuffer(data, dtype="<f8", count=size, offset=offset).reshape(shape).astype(np.float64)
            offset = end
        if offset != len(data):
            raise CheckpointError(f"체크포인트 끝에 알 수 없는 데이터가 있습니다: {len(data) - offset} bytes")

        def _section(prefix: str) -> Dict[str, np.ndarray]:
            return {k[len(prefix):]: v for k, v in arrays.items() if k.startswith(prefix)}

        context = _section("context/")
        state = ContextState(context.get("h"), context.get("c"), Direction(header["direction"]),
                             context.get("h_backward"), context.get("c_backward"))
        checkpoint = Checkpoint(
            config=ExperimentConfig.from_dict(header["config"]),
            params=ParameterStore(_section("param/")),
            state=state,
            iteration=int(header["iteration"]),
            rng_state=header.get("rng_state", {}),
            buffers=_section("buffer/"),
            adam_t=int(header.get("adam_t", 0)),
            adam_m=_section("adam/m/"),
            adam_v=_section("adam/v/"),
        )
        logger.info(f"체크포인트 로드: {path} (iteration {checkpoint.iteration})")
        return checkpoint
