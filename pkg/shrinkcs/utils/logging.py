# Copyright (c) The shrinkcs authors.
# Some codes are borrowed from AllenNLP.
# https://github.com/allenai/allennlp/blob/HEAD/allennlp/common/logging.py
# Copyright (c) AI2 AllenNLP. Licensed under the Apache License, Version 2.0.

import logging
import os
import sys
from logging import Filter
from os import PathLike
from typing import Union

from modelscope.utils.logger import get_logger


class ShrinkCSLogger(logging.Logger):
    """
    A custom subclass of 'logging.Logger' that keeps a set of messages to
    implement {debug,info,etc.}_once() methods.
    """

    def __init__(self, name):
        super().__init__(name)
        self._seen_msgs = set()

    def _log_once(self, level: int, msg, *args, **kwargs):
        if msg not in self._seen_msgs:
            self.log(level, msg, *args, **kwargs)
            self._seen_msgs.add(msg)

    def debug_once(self, msg, *args, **kwargs):  # noqa: D102
        self._log_once(logging.DEBUG, msg, *args, **kwargs)

    def info_once(self, msg, *args, **kwargs):  # noqa: D102
        self._log_once(logging.INFO, msg, *args, **kwargs)

    def warning_once(self, msg, *args, **kwargs):  # noqa: D102
        self._log_once(logging.WARNING, msg, *args, **kwargs)

    def error_once(self, msg, *args, **kwargs):  # noqa: D102
        self._log_once(logging.ERROR, msg, *args, **kwargs)

    def critical_once(self, msg, *args, **kwargs):  # noqa: D102
        self._log_once(logging.CRITICAL, msg, *args, **kwargs)


logging.setLoggerClass(ShrinkCSLogger)
logger = logging.getLogger(__name__)

_FORMAT = '%(asctime)s - %(levelname)s - %(name)s - %(message)s'


class ErrorFilter(Filter):
    """
    Filters out everything that is at the ERROR level or higher. This is meant to be used
    with a stdout handler when a stderr handler is also configured. That way ERROR
    messages aren't duplicated.
    """

    def filter(self, record):  # noqa: D102
        return record.levelno < logging.ERROR


def _resolve_level(log_level: int) -> int:
    if os.environ.get('SHRINKCS_DEBUG'):
        return logging.DEBUG
    return log_level


def prepare_global_logging(log_level: int = logging.INFO) -> None:
    """
    Prepare global logging.
    """

    # clear modelscope logger handlers to remove duplicate logs.
    get_logger().handlers.clear()

    root_logger = logging.getLogger()

    formatter = logging.Formatter(_FORMAT)
    stdout_handler: logging.Handler = logging.StreamHandler(sys.stdout)
    stderr_handler: logging.Handler = logging.StreamHandler(sys.stderr)

    for handler in [stdout_handler, stderr_handler]:
        handler.setFormatter(formatter)

    # Remove the already set handlers in root logger.
    # Not doing this will result in duplicate log messages
    root_logger.handlers.clear()

    level = _resolve_level(log_level)
    stdout_handler.setLevel(level)
    stdout_handler.addFilter(ErrorFilter())  # Make sure errors only go to stderr
    stderr_handler.setLevel(logging.ERROR)
    root_logger.setLevel(level)

    root_logger.addHandler(stdout_handler)
    root_logger.addHandler(stderr_handler)


def prepare_logging(work_dir: Union[str, PathLike], log_level: int = logging.INFO) -> None:
    """
    Prepare logging for an experiment run, additionally log to `out.log` in `work_dir`.
    """
    prepare_global_logging(log_level)

    file_handler: logging.Handler = logging.FileHandler(os.path.join(work_dir, 'out.log'))
    file_handler.setFormatter(logging.Formatter(_FORMAT))
    file_handler.setLevel(_resolve_level(log_level))
    logging.getLogger().addHandler(file_handler)
