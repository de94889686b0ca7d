#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Output Manager
실행 결과 파일 (metrics.jsonl, report.json, sweep.csv, curve.csv, diverged.json)
"""

import csv
import json
import os
from typing import Any, Dict, Iterable, Optional, Sequence

from ..core.logger import logger

METRICS_FILE = "metrics.jsonl"
REPORT_FILE = "report.json"
SWEEP_FILE = "sweep.csv"
CURVE_FILE = "curve.csv"
DIVERGED_FILE = "diverged.json"
LOG_FILE = "train.log"
CONFIG_FILE = "config.json"


class OutputManager:
    """출력 디렉토리 관리 클래스"""

    def __init__(self, directory: Optional[str]):
        self.directory = directory
        if directory:
            os.makedirs(directory, exist_ok=True)

    def path(self, filename: str) -> Optional[str]:
        return os.path.join(self.directory, filename) if self.directory else None

    def reset_metrics(self) -> None:
        """metrics.jsonl 을 비웁니다."""
        path = self.path(METRICS_FILE)
        if path:
            open(path, "w", encoding="utf-8").close()

    def append_metrics(self, record: Dict[str, Any]) -> None:
        path = self.path(METRICS_FILE)
        if path:
            with open(path, "a", encoding="utf-8") as f:
                f.write(json.dumps(record, ensure_ascii=False) + "\n")

    def write_json(self, filename: str, data: Dict[str, Any]) -> Optional[str]:
        path = self.path(filename)
        if not path:
            return None
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=4, ensure_ascii=False)
        logger.verbose(f"저장: {path}")
        return path

    def write_csv(self, filename: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Optional[str]:
        path = self.path(filename)
        if not path:
            return None
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            writer.writerows(rows)
        logger.verbose(f"저장: {path}")
        return path


def read_metrics(path: str) -> list:
    """metrics.jsonl 레코드 목록을 읽습니다."""
    with open(path, "r", encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]
