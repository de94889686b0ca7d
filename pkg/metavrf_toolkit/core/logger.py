#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Logger
이모지 태그와 다양한 로그 레벨을 지원하는 로깅 시스템
"""

import logging
import os
from typing import Optional


class MetaVRFLogger:
    """MetaVRF Toolkit 전용 로거"""

    FORMAT = '%(asctime)s - [%(levelname)s] - %(message)s'
    DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

    def __init__(self, name: str = "MetaVRF", level: str = "INFO"):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(getattr(logging, level.upper()))
        self.logger.propagate = False

        # 핸들러가 이미 있으면 제거 (중복 방지)
        if self.logger.handlers:
            self.logger.handlers.clear()

        self.formatter = logging.Formatter(self.FORMAT, datefmt=self.DATE_FORMAT)

        console_handler = logging.StreamHandler()
        console_handler.setFormatter(self.formatter)
        self.logger.addHandler(console_handler)

        self._file_handler: Optional[logging.FileHandler] = None

    def attach_file(self, path: str) -> None:
        """로그 파일 핸들러를 연결합니다. 기존 파일 핸들러는 교체됩니다."""
        self.detach_file()
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        handler = logging.FileHandler(path, encoding='utf-8')
        handler.setFormatter(self.formatter)
        self.logger.addHandler(handler)
        self._file_handler = handler

    def detach_file(self) -> None:
        """연결된 로그 파일 핸들러를 닫습니다."""
        if self._file_handler is not None:
            self.logger.removeHandler(self._file_handler)
            self._file_handler.close()
            self._file_handler = None

    def info(self, message: str):
        """정보 로그"""
        self.logger.info(f"✅ {message}")

    def log(self, message: str):
        """일반 로그 (info의 별칭)"""
        self.info(message)

    def warning(self, message: str):
        """경고 로그"""
        self.logger.warning(f"⚠️ {message}")

    def error(self, message: str):
        """에러 로그"""
        self.logger.error(f"❌ {message}")

    def debug(self, message: str):
        """디버그 로그"""
        self.logger.debug(f"🐛 {message}")

    def start(self, message: str):
        """시작 로그"""
        self.logger.info(f"🚀 {message}")

    def complete(self, message: str):
        """완료 로그"""
        self.logger.info(f"🎯 {message}")

    def progress(self, message: str):
        """진행 로그"""
        self.logger.info(f"🔄 {message}")

    def success(self, message: str):
        """성공 로그"""
        self.logger.info(f"🎉 {message}")

    def exception(self, message: str, exception: Exception):
        """예외 로그"""
        self.logger.error(f"❌ {message}: {exception}")
        self.logger.debug(f"스택 트레이스: {exception!r}")

    def verbose(self, message: str):
        """상세 로그"""
        self.logger.debug(f"📝 {message}")

    def set_level(self, level: str):
        """로거 레벨 변경"""
        self.logger.setLevel(getattr(logging, level.upper()))


# 전역 로거 인스턴스
logger = MetaVRFLogger()


def set_log_level(level: str):
    """로그 레벨을 설정합니다."""
    logger.set_level(level)
