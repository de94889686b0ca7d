#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit CLI Commands
CLI 명령어 실행 로직
"""

import argparse

from ..core.config import ExperimentConfig
from ..core.enums import CommandType
from ..core.logger import logger
from ..core.toolkit import MetaVRFToolkit


def execute_command(args: argparse.Namespace, config: ExperimentConfig) -> bool:
    """CLI 명령어를 실행합니다."""
    command = CommandType(args.command)
    toolkit = MetaVRFToolkit(config)
    logger.info(f"실행 명령: {command.value}")

    if command == CommandType.TRAIN:
        return toolkit.execute_command(command, resume=args.resume)
    elif command == CommandType.TEST:
        return toolkit.execute_command(command, checkpoint=args.ckpt, episodes=args.episodes,
                                       ways=args.ways, shots=args.shots, seed=args.seed, output_dir=args.out)
    elif command == CommandType.BASELINE:
        return toolkit.execute_command(command, kind=args.kind, bases=args.bases)
    elif command == CommandType.SWEEP:
        logger.info(f"스윕 D 목록: {args.bases}")
        return toolkit.execute_command(command, bases_list=args.bases)
    elif command == CommandType.GRADCHECK:
        return toolkit.execute_command(command, trials=args.trials, seed=args.seed)
    elif command == CommandType.CREATE_CONFIG:
        return toolkit.execute_command(command, path=args.path)
    else:
        return toolkit.execute_command(command)
