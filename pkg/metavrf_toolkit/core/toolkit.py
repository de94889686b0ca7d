#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Main Class
학습, 평가, 기준 모델, 스윕, 비교, 기울기 검증을 통합하는 메인 툴킷 클래스
"""

import os
from typing import Any, Optional, Sequence

from .config import ExperimentConfig, create_sample_config
from .enums import BaselineKind, CommandType
from .errors import MetaVRFError
from .logger import logger


class MetaVRFToolkit:
    """MetaVRF Toolkit - 메인 클래스"""

    def __init__(self, config: Optional[ExperimentConfig] = None):
        self.config = config or ExperimentConfig()
        self._sampler = None

        logger.info("🚀 MetaVRF Toolkit 초기화 완료")
        logger.info(f"Task: {self.config.task.value}, Model: {self.config.model.value}, Mode: {self.config.mode.value}")
        logger.info(f"Output: {self.config.out}")

    @property
    def sampler(self):
        """데이터셋은 한 번만 준비해 명령 간에 공유합니다."""
        if self._sampler is None:
            from ..managers.tasks import TaskSampler
            self._sampler = TaskSampler.from_config(self.config)
        return self._sampler

    def validate(self) -> bool:
        is_valid, errors = self.config.validate()
        for error in errors:
            logger.error(f"설정 오류: {error}")
        return is_valid

    def execute_command(self, command: CommandType, **options: Any) -> bool:
        """명령을 실행하고 성공 여부를 반환합니다."""
        logger.start(f"명령 실행: {command.value}")

        if command == CommandType.CREATE_CONFIG:
            return create_sample_config(options.get("path") or "metavrf_config.json", self.config.task)
        if command == CommandType.GRADCHECK:
            return self.gradcheck(options.get("trials", 100), options.get("seed", 0))
        if command == CommandType.TEST:
            return self.test(options["checkpoint"], options.get("episodes"), options.get("ways"),
                             options.get("shots"), options.get("seed"), options.get("output_dir"))

        if not self.validate():
            return False
        try:
            if command == CommandType.TRAIN:
                return self.train(options.get("resume"))
            elif command == CommandType.BASELINE:
                return self.baseline(BaselineKind(options["kind"]), options.get("bases"))
            elif command == CommandType.SWEEP:
                return self.sweep(options["bases_list"])
            elif command == CommandType.COMPARE:
                return self.compare()
            else:
                logger.error(f"지원하지 않는 명령: {command}")
                return False
        except MetaVRFError as e:
            logger.exception(f"명령 실패: {command.value}", e)
            return False

    # ------------------------------------------------------------------
    # 명령 구현
    # ------------------------------------------------------------------

    def train(self, resume_path: Optional[str] = None) -> bool:
        from ..managers.checkpoint import CheckpointManager
        from ..managers.evaluator import meta_test
        from ..managers.trainer import meta_train

        resume = CheckpointManager.load(resume_path) if resume_path else None
        try:
            result = meta_train(self.config, self.sampler, self.config.out, resume=resume)
        except ValueError as e:
            logger.exception("메타 학습 실패", e)
            return False
        if self.config.eval_episodes > 0:
            meta_test(result.model, self.config.eval_episodes, sampler=self.sampler,
                      workers=self.config.workers, output_dir=self.config.out)
        return True

    def test(self, checkpoint_path: str, episodes: Optional[int] = None, ways: Optional[int] = None,
             shots: Optional[int] = None, seed: Optional[int] = None, output_dir: Optional[str] = None) -> bool:
        from ..managers.checkpoint import CheckpointManager
        from ..managers.evaluator import meta_test
        from ..managers.tasks import TaskSampler

        try:
            checkpoint = CheckpointManager.load(checkpoint_path)
        except MetaVRFError as e:
            logger.exception("체크포인트 로드 실패", e)
            return False

        saved = checkpoint.config
        # 데이터 경로는 현재 실행 환경의 값을 따름
        if self.config.data_root:
            saved = saved.with_overrides(data_root=self.config.data_root)
            checkpoint.config = saved
        logger.info(f"체크포인트 태스크: {saved.task.value}, 학습 {checkpoint.iteration}회")

        out = output_dir or os.path.dirname(checkpoint_path)
        try:
            meta_test(checkpoint, episodes or self.config.eval_episodes, ways, shots, seed,
                      workers=self.config.workers, sampler=TaskSampler.from_config(saved), output_dir=out)
        except (MetaVRFError, ValueError) as e:
            logger.exception("메타 테스트 실패", e)
            return False
        return True

    def baseline(self, kind: BaselineKind, bases: Optional[int] = None) -> bool:
        from ..managers.evaluator import run_baseline

        report = run_baseline(self.config, kind, bases, self.config.eval_episodes, self.sampler,
                              self.config.out, self.config.workers)
        logger.success(f"{kind.value}: {report.summary()}")
        return True

    def sweep(self, bases_list: Sequence[int]) -> bool:
        from ..managers.evaluator import sweep_basis_count

        rows = sweep_basis_count(self.config, bases_list, self.config.eval_episodes, self.sampler,
                                 self.config.out, self.config.workers)
        for row in rows:
            logger.info(f"D={row.bases:>5}: {row.metric:.4f} ± {row.ci95:.4f}")
        return True

    def compare(self) -> bool:
        from ..managers.evaluator import run_ablation

        run_ablation(self.config, self.config.eval_episodes, sampler=self.sampler, output_dir=self.config.out,
                     workers=self.config.workers)
        return True

    def gradcheck(self, trials: int = 100, seed: int = 0) -> bool:
        from ..engine.gradcheck import run_gradient_suite

        rows = run_gradient_suite(trials=trials, seed=seed, model_trials=min(trials, 5))
        return all(passed for _, _, passed in rows)

