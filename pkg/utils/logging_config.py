import logging
import os
import sys

import colorlog

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def setup_logger():
    """
    중앙집중식 로거 설정
    모든 모듈에서 동일한 로거를 사용하도록 함
    콘솔 출력은 stderr로 보내 stdout은 CLI 리포트 전용으로 남김
    RESLAB_LOG_FILE이 있으면 파일 핸들러 추가
    """
    logger = logging.getLogger("reslab")

    if not logger.handlers:
        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(colorlog.ColoredFormatter('%(log_color)s' + LOG_FORMAT))
        logger.addHandler(console)

        log_file = os.getenv("RESLAB_LOG_FILE")
        if log_file:
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            logger.addHandler(file_handler)

        level_name = os.getenv("RESLAB_LOG_LEVEL", "INFO").upper()
        logger.setLevel(getattr(logging, level_name, logging.INFO))
        logger.propagate = False
        logger.info("Centralized logger initialized")

    return logger
