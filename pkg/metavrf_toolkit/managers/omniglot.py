#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MetaVRF Toolkit Omniglot Manager
Omniglot 로딩, 클래스 분할, 회전 증강, 바이너리 캐시
"""

import os
import struct
from typing import List, Optional, Sequence

import imageio.v3 as iio
import numpy as np
from scipy.ndimage import zoom

from ..core.enums import (
    OMNIGLOT_IMAGE_SIZE,
    OMNIGLOT_ROTATIONS,
    OMNIGLOT_SPLIT_SIZES,
)
from ..core.errors import DatasetError
from ..core.logger import logger
from .tasks import DatasetSplit

CACHE_FILE = ".metavrf_omniglot.bin"
CACHE_MAGIC = b"MVRFOMNI"
CACHE_VERSION = 1
IMAGE_EXTENSIONS = (".png",)


class OmniglotManager:
    """Omniglot 디렉토리 관리 클래스"""

    @staticmethod
    def find_character_dirs(root: str) -> List[str]:
        """root/<alphabet>/<character> 디렉토리를 정렬된 순서로 반환합니다."""
        if not root or not os.path.isdir(root):
            raise DatasetError("Omniglot 루트 디렉토리를 찾을 수 없습니다", root)

        characters = []
        for alphabet in sorted(os.listdir(root)):
            alphabet_dir = os.path.join(root, alphabet)
            if not os.path.isdir(alphabet_dir) or alphabet.startswith("."):
                continue
            for character in sorted(os.listdir(alphabet_dir)):
                character_dir = os.path.join(alphabet_dir, character)
                if os.path.isdir(character_dir):
                    characters.append(character_dir)

        if not characters:
            raise DatasetError("문자 클래스 디렉토리가 없습니다 (root/<alphabet>/<character>)", root)
        return characters

    @staticmethod
    def to_unit_range(image: np.ndarray, path: Optional[str] = None) -> np.ndarray:
        """픽셀 dtype 에 따라 [0, 1] float64 로 변환합니다."""
        if image.dtype == np.bool_:
            return image.astype(np.float64)
        if np.issubdtype(image.dtype, np.integer):
            return image.astype(np.float64) / float(np.iinfo(image.dtype).max)
        if np.issubdtype(image.dtype, np.floating):
            return image.astype(np.float64)
        raise DatasetError(f"지원하지 않는 픽셀 형식입니다: dtype={image.dtype}", path)

    @staticmethod
    def load_image(path: str, image_size: int = OMNIGLOT_IMAGE_SIZE) -> np.ndarray:
        """이미지를 [0, 1] 범위의 image_size × image_size 흑백 배열로 읽습니다."""
        try:
            image = np.asarray(iio.imread(path))
        except Exception as e:
            raise DatasetError(f"이미지를 읽을 수 없습니다 ({e})", path) from e

        image = OmniglotManager.to_unit_range(image, path)
        if image.ndim == 3:
            image = image[..., :3].mean(axis=-1) if image.shape[-1] >= 3 else image[..., 0]
        if image.ndim != 2 or image.size == 0:
            raise DatasetError(f"지원하지 않는 이미지 형태입니다: shape={image.shape}", path)

        if image.shape != (image_size, image_size):
            image = zoom(image, (image_size / image.shape[0], image_size / image.shape[1]), order=1)
        return np.clip(image, 0.0, 1.0).astype(np.float32)

    @staticmethod
    def load_character(character_dir: str, image_size: int = OMNIGLOT_IMAGE_SIZE) -> np.ndarray:
        files = sorted(f for f in os.listdir(character_dir) if f.lower().endswith(IMAGE_EXTENSIONS))
        if not files:
            raise DatasetError("이미지가 없는 문자 디렉토리입니다", character_dir)
        return np.stack([OmniglotManager.load_image(os.path.join(character_dir, f), image_size) for f in files])

    @staticmethod
    def write_cache(path: str, images: np.ndarray) -> bool:
        """분할 전 이미지 배열을 캐시 파일로 저장합니다. 실패해도 로딩은 계속됩니다."""
        try:
            with open(path, "wb") as f:
                f.write(CACHE_MAGIC)
                f.write(struct.pack("<I", CACHE_VERSION))
                np.save(f, images.astype("<f4"))
            logger.info(f"Omniglot 캐시 저장: {path}")
            return True
        except OSError as e:
            logger.warning(f"Omniglot 캐시 저장 실패: {path} - {e}")
            return False

    @staticmethod
    def read_cache(path: str) -> np.ndarray:
        """(문자 수, 그림 수, H, W) 이미지 배열을 읽습니다."""
        try:
            with open(path, "rb") as f:
                if f.read(len(CACHE_MAGIC)) != CACHE_MAGIC:
                    raise DatasetError("캐시 매직 헤더가 올바르지 않습니다", path)
                (version,) = struct.unpack("<I", f.read(4))
                if version != CACHE_VERSION:
                    raise DatasetError(f"지원하지 않는 캐시 버전입니다: {version}", path)
                images = np.load(f, allow_pickle=False)
        except (OSError, ValueError, EOFError, struct.error) as e:
            if isinstance(e, DatasetError):
                raise
            raise DatasetError(f"캐시 파일이 손상되었습니다 ({e})", path) from e
        if images.ndim != 4:
            raise DatasetError(f"캐시 이미지 형태가 올바르지 않습니다: shape={images.shape}", path)
        return images


def rotate_classes(images: np.ndarray, indices: Sequence[int],
                   rotations: Sequence[int] = OMNIGLOT_ROTATIONS) -> List[np.ndarray]:
    """각 클래스의 90° 회전 변형을 별도 클래스로 만듭니다 (rot90 뷰)."""
    return [np.rot90(images[i], k, axes=(1, 2)) for i in indices for k in rotations]


def load_omniglot(root: Optional[str], split_sizes: Sequence[int] = OMNIGLOT_SPLIT_SIZES, seed: int = 0,
                  image_size: int = OMNIGLOT_IMAGE_SIZE, use_cache: bool = True) -> DatasetSplit:
    """Omniglot 을 읽어 시드 셔플로 클래스를 분할하고 4방향 회전 증강을 적용합니다."""
    if not root:
        raise DatasetError("Omniglot 데이터 경로가 지정되지 않았습니다 (--data 또는 METAVRF_DATA)")
    cache_path = os.path.join(root, CACHE_FILE)
    images: Optional[np.ndarray] = None

    if use_cache and os.path.exists(cache_path):
        try:
            cached_images = OmniglotManager.read_cache(cache_path)
            if cached_images.shape[2:] == (image_size, image_size):
                images = cached_images
                logger.info(f"Omniglot 캐시 사용: {cache_path}")
        except DatasetError as e:
            logger.warning(f"캐시를 무시하고 다시 읽습니다: {e}")

    if images is None:
        characters = OmniglotManager.find_character_dirs(root)
        logger.progress(f"Omniglot 로딩: {len(characters)}개 문자 클래스")
        per_class = [OmniglotManager.load_character(c, image_size) for c in characters]
        counts = {len(c) for c in per_class}
        if len(counts) != 1:
            raise DatasetError(f"문자별 예제 수가 일정하지 않습니다: {sorted(counts)}", root)
        images = np.stack(per_class)
        if use_cache:
            OmniglotManager.write_cache(cache_path, images)

    total = int(sum(split_sizes))
    if images.shape[0] < total:
        raise DatasetError(f"문자 클래스가 부족합니다: {images.shape[0]} < {total}", root)

    order = np.random.default_rng(seed).permutation(images.shape[0])
    bounds = np.cumsum([0, *split_sizes])
    partitions = [rotate_classes(images, order[bounds[i]:bounds[i + 1]]) for i in range(len(split_sizes))]
    split = DatasetSplit(*partitions, name="omniglot")
    logger.info(f"Omniglot 분할 완료: {split.class_counts()}")
    return split
