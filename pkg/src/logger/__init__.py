import logging
import os
from logging.handlers import RotatingFileHandler
from from_root import from_root
from datetime import datetime

from src.constants import LOG_DIR, LOG_LEVEL_ENV_KEY

LOG_FILE = f"{datetime.now().strftime('%m_%d_%Y_%H_%M_%S')}.log"
MAX_LOG_SIZE = 5 * 1024 * 1024  # 5 MB
BACKUP_COUNT = 3

log_dir_path = os.path.join(from_root(), LOG_DIR)
os.makedirs(log_dir_path, exist_ok=True)
log_file_path = os.path.join(log_dir_path, LOG_FILE)

_HANDLER_MARK = "_opineq_handler"


def configure_logger(console_level: str = None) -> logging.Logger:
    """
    Configures the root logger with a rotating file handler and a console handler.
    Safe to call more than once; handlers are only attached the first time.
    """
    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG)

    if any(getattr(handler, _HANDLER_MARK, False) for handler in logger.handlers):
        return logger

    console_level = console_level or os.getenv(LOG_LEVEL_ENV_KEY, "INFO")
    formatter = logging.Formatter("[ %(asctime)s ] %(name)s - %(levelname)s - %(message)s")

    file_handler = RotatingFileHandler(log_file_path, maxBytes=MAX_LOG_SIZE, backupCount=BACKUP_COUNT)
    file_handler.setFormatter(formatter)
    file_handler.setLevel(logging.DEBUG)
    setattr(file_handler, _HANDLER_MARK, True)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    console_handler.setLevel(console_level.upper())
    setattr(console_handler, _HANDLER_MARK, True)

    logger.addHandler(file_handler)
    logger.addHandler(console_handler)
    return logger


configure_logger()
