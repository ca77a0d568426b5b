from __future__ import annotations

import logging
import os

from cr_config import LOG_LEVELS, CRSettings

LOG_FORMAT = "[%(asctime)s] %(levelname)s: %(message)s"


class MaxSizeFileHandler(logging.FileHandler):
    def __init__(self, filename: str, max_bytes: int, **kwargs):
        self.max_bytes = max_bytes
        super().__init__(filename, **kwargs)

    def emit(self, record):
        try:
            if os.path.exists(self.baseFilename):
                if os.path.getsize(self.baseFilename) >= self.max_bytes:
                    return
            super().emit(record)
        except Exception:
            self.handleError(record)


def configure_logging(settings: CRSettings) -> None:
    level_name = settings.log_level if settings.log_level in LOG_LEVELS else "INFO"
    # Reports go to stdout; logs stay on stderr.
    logging.basicConfig(level=getattr(logging, level_name), format=LOG_FORMAT)

    if settings.log_file:
        root = logging.getLogger()
        already = any(
            isinstance(handler, MaxSizeFileHandler)
            and handler.baseFilename == os.path.abspath(settings.log_file)
            for handler in root.handlers
        )
        if not already:
            handler = MaxSizeFileHandler(
                settings.log_file, max(1, settings.log_max_bytes), encoding="utf-8"
            )
            handler.setFormatter(logging.Formatter(LOG_FORMAT))
            root.addHandler(handler)
