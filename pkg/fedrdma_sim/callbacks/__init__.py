"""
Callbacks Module

This module regroups the hooks the federation loop calls at round boundaries.
"""
from .base import Callback, CallbackList
from .csv_logger import CsvLoggerCallback
from .progress import ProgressLoggerCallback


__all__ = [
    "Callback",
    "CallbackList",
    "CsvLoggerCallback",
    "ProgressLoggerCallback",
]
