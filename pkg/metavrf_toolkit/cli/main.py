#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit CLI Main
명령행 인터페이스 메인 모듈
"""

import argparse
import sys
from typing import List, Optional

from .. import __version__
from ..core.config import ExperimentConfig, load_config_with_fallback, resolve_data_root
from ..core.enums import BaselineKind, CommandType, InferenceMode, LogLevel, ModelKind, ScaleMode, TaskFamily
from ..core.logger import logger
from .commands import execute_command


def parse_int_list(value: str) -> List[int]:
    """'8,64,256' → [8, 64, 256]"""
    try:
        items = [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"정수 목록이 아닙니다: {value}") from None
    if not items or min(items) < 1:
        raise argparse.ArgumentTypeError(f"양의 정수 목록이어야 합니다: {value}")
    return items


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--log-level",
        choices=[level.value for level in LogLevel],
        default="INFO",
        help="로그 레벨 (기본값: INFO)"
    )
    common.add_argument(
        "--quiet",
        action="store_true",
        help="최소한의 출력만 표시"
    )
    common.add_argument(
        "--config",
        help="실험 설정 파일 (JSON 형식)"
    )
    common.add_argument(
        "--data",
        help="데이터셋 루트 경로 (METAVRF_DATA 환경 변수보다 우선)"
    )
    return common


def _add_experiment_arguments(parser: argparse.ArgumentParser, bases_list: bool = False) -> None:
    parser.add_argument("--task", choices=[t.value for t in TaskFamily], help="태스크 종류")
    parser.add_argument("--ways", type=int, help="클래스 수 C")
    parser.add_argument("--shots", type=int, help="클래스당 서포트 예제 수 K")
    parser.add_argument("--query", type=int, help="클래스당 쿼리 예제 수")
    if bases_list:
        parser.add_argument("--bases", type=parse_int_list, required=True, help="기저 개수 목록 (예: 8,64,256,780,2048)")
    else:
        parser.add_argument("--bases", type=int, help="기저 개수 D")
    parser.add_argument("--mode", choices=[m.value for m in InferenceMode], help="문맥 추론 방식")
    parser.add_argument("--model", choices=[m.value for m in ModelKind], help="기저 학습기 커널 종류")
    parser.add_argument("--scale", choices=[s.value for s in ScaleMode], help="랜덤 특징 스케일 규칙")
    parser.add_argument("--iters", type=int, help="메타 학습 반복 횟수")
    parser.add_argument("--batch", type=int, help="메타 배치 크기 (태스크 수)")
    parser.add_argument("--lr", type=float, help="Adam 학습률")
    parser.add_argument("--seed", type=int, help="난수 시드")
    parser.add_argument("--out", help="출력 디렉토리")
    parser.add_argument("--episodes", type=int, help="평가 에피소드 수")
    parser.add_argument("--workers", type=int, help="평가 병렬 워커 수")
    parser.add_argument("--log-every", type=int, help="손실 로그 간격")


def create_argument_parser() -> argparse.ArgumentParser:
    """명령행 인수 파서를 생성합니다."""
    parser = argparse.ArgumentParser(
        prog="metavrf-toolkit",
        description="MetaVRF Toolkit - 메타 변분 랜덤 특징 기반 퓨샷 학습 도구",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
예시:
  # 사인 회귀 5-shot 메타 학습
  python -m metavrf_toolkit train --task sine --shots 5 --mode bilstm --out runs/sine

  # 체크포인트로 10-shot 평가
  python -m metavrf_toolkit test --ckpt runs/sine/checkpoint.mvrf --shots 10 --episodes 1000

  # 고정 RFF 기준 모델
  python -m metavrf_toolkit baseline --kind rff --task blobs --out runs/rff

  # 기저 개수 스윕
  python -m metavrf_toolkit sweep --task blobs --bases 8,64,256,780 --out runs/sweep

  # 기울기 검증
  python -m metavrf_toolkit gradcheck
        """)

    parser.add_argument(
        "--version",
        action="version",
        version=f"MetaVRF Toolkit v{__version__}"
    )

    common = _common_parser()
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    train = subparsers.add_parser(CommandType.TRAIN.value, parents=[common], help="메타 학습 후 체크포인트 저장")
    _add_experiment_arguments(train)
    train.add_argument("--resume", metavar="CKPT", help="이어서 학습할 체크포인트 파일 경로")

    test = subparsers.add_parser(CommandType.TEST.value, parents=[common], help="체크포인트 메타 테스트")
    test.add_argument("--ckpt", required=True, help="체크포인트 파일 경로")
    test.add_argument("--episodes", type=int, help="평가 에피소드 수")
    test.add_argument("--ways", type=int, help="평가 ways (학습과 달라도 됨)")
    test.add_argument("--shots", type=int, help="평가 shots (학습과 달라도 됨)")
    test.add_argument("--seed", type=int, help="평가 시드")
    test.add_argument("--workers", type=int, help="평가 병렬 워커 수")
    test.add_argument("--out", help="report.json 출력 디렉토리 (기본값: 체크포인트 디렉토리)")

    baseline = subparsers.add_parser(CommandType.BASELINE.value, parents=[common], help="기준 모델 학습/평가")
    baseline.add_argument("--kind", choices=[k.value for k in BaselineKind], required=True, help="기준 모델 종류")
    _add_experiment_arguments(baseline)

    sweep = subparsers.add_parser(CommandType.SWEEP.value, parents=[common], help="기저 개수 D 스윕")
    _add_experiment_arguments(sweep, bases_list=True)

    compare = subparsers.add_parser(CommandType.COMPARE.value, parents=[common],
                                    help="문맥 추론 방식 비교 (none / lstm / bilstm)")
    _add_experiment_arguments(compare)

    gradcheck = subparsers.add_parser(CommandType.GRADCHECK.value, parents=[common], help="유한차분 기울기 검증")
    gradcheck.add_argument("--trials", type=int, default=100, help="연산당 시드 수 (기본값: 100)")
    gradcheck.add_argument("--seed", type=int, default=0, help="시드 (기본값: 0)")

    create = subparsers.add_parser(CommandType.CREATE_CONFIG.value, parents=[common], help="샘플 설정 파일 생성")
    create.add_argument("--path", default="metavrf_config.json", help="생성할 파일 경로")
    create.add_argument("--task", choices=[t.value for t in TaskFamily], default=TaskFamily.BLOBS.value,
                        help="기본 설정 태스크 (기본값: blobs)")

    return parser


# CLI 인수 → 설정 필드
_OVERRIDES = {
    "ways": "ways",
    "shots": "shots",
    "query": "query",
    "bases": "bases",
    "mode": "mode",
    "model": "model",
    "scale": "scale_mode",
    "iters": "iterations",
    "batch": "batch",
    "lr": "lr",
    "seed": "seed",
    "out": "out",
    "episodes": "eval_episodes",
    "workers": "workers",
    "log_every": "log_every",
}


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """설정 파일(또는 태스크 기본값) 위에 CLI 값을 덮어씁니다."""
    task = TaskFamily(args.task) if getattr(args, "task", None) else None
    if args.config:
        config = load_config_with_fallback(args.config, task or TaskFamily.SINE)
        if task is not None:
            config = config.with_overrides(task=task)
    else:
        config = ExperimentConfig.preset(task or TaskFamily.SINE)

    overrides = {}
    for arg_name, field_name in _OVERRIDES.items():
        value = getattr(args, arg_name, None)
        # sweep 의 --bases 는 목록이므로 설정에 넣지 않음
        if value is not None and not isinstance(value, list):
            overrides[field_name] = value
    overrides["data_root"] = resolve_data_root(args.data) or config.data_root
    return config.with_overrides(**overrides)


def main(argv: Optional[List[str]] = None) -> int:
    """메인 실행 함수"""
    parser = create_argument_parser()
    args = parser.parse_args(argv)

    # 로거 설정
    if args.quiet:
        logger.set_level("ERROR")
    else:
        logger.set_level(args.log_level)

    logger.info("🚀 MetaVRF Toolkit 시작")

    try:
        config = build_config(args)
        success = execute_command(args, config)
        return 0 if success else 1

    except KeyboardInterrupt:
        logger.warning("사용자에 의해 중단되었습니다.")
        return 130
    except Exception as e:
        logger.error(f"예상치 못한 오류 발생: {e}")
        return 1
    finally:
        logger.info("MetaVRF Toolkit 종료")


if __name__ == "__main__":
    sys.exit(main())
