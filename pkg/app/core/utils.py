import os
import json
import logging
from datetime import datetime
from typing import Dict, Any, List, Optional

from app.config import settings

logger = logging.getLogger(__name__)

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))


def reports_directory() -> str:
    """Ensure the reports directory exists and return it"""
    reports_dir = settings.REPORTS_DIR
    if not os.path.isabs(reports_dir):
        reports_dir = os.path.join(PROJECT_ROOT, reports_dir)
    os.makedirs(reports_dir, exist_ok=True)
    return reports_dir


def save_verification_summary(verdicts: List[Dict[str, Any]], suite: str) -> str:
    """Write the verdicts of one verify run as JSON next to the process logs"""
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    filename = f"verify_{suite.replace('.', '_')}_{timestamp}.json"
    filepath = os.path.join(reports_directory(), filename)
    summary = {
        "suite": suite,
        "timestamp": datetime.now().isoformat(),
        "passed": all(v["passed"] for v in verdicts),
        "verdicts": verdicts,
    }
    with open(filepath, 'w', encoding='utf-8') as f:
        json.dump(summary, f, indent=2, default=str)
    logger.info(f"Verification summary saved to: {filename}")
    return filepath


class ProcessLogger:
    """
    Plain-text log of one analysis run, written under REPORTS_DIR.

    Usage:
        with ProcessLogger("verify.log") as plog:
            plog.section("cuts.banana")
            plog.failure("violation", context={"cut": [0, 4]})
    """

    def __init__(self, filename: str, auto_clear: bool = True):
        """
        Args:
            filename: Name of log file (e.g., "verify.log")
            auto_clear: Whether to clear the file on first write (default: True)
        """
        self.filename = filename
        self.auto_clear = auto_clear
        self._first_write = True
        self.log_file_path = os.path.join(reports_directory(), self.filename)

    def _write_log(self, level: str, message: str, context: Optional[Dict[str, Any]] = None):
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")

        if self._first_write and self.auto_clear:
            mode = 'w'
            self._first_write = False
        else:
            mode = 'a'

        log_entry = f"[{timestamp}] {level}: {message}"
        if context:
            context_str = ", ".join([f"{k}={v}" for k, v in context.items()])
            log_entry += f" | Context: {context_str}"
        log_entry += "\n"

        try:
            with open(self.log_file_path, mode, encoding='utf-8') as f:
                f.write(log_entry)
        except OSError as e:
            logger.error(f"❌ Failed to write to log file {self.filename}: {e}")

    def info(self, message: str, context: Optional[Dict[str, Any]] = None):
        self._write_log("INFO", message, context)

    def error(self, message: str, context: Optional[Dict[str, Any]] = None):
        self._write_log("ERROR", message, context)

    def warning(self, message: str, context: Optional[Dict[str, Any]] = None):
        self._write_log("WARNING", message, context)

    def section(self, title: str):
        """Section header, one per check"""
        separator = "=" * 50
        self._write_log("SECTION", f"\n{separator}\n{title}\n{separator}")

    def success(self, message: str, context: Optional[Dict[str, Any]] = None):
        self._write_log("SUCCESS", f"✅ {message}", context)

    def failure(self, message: str, context: Optional[Dict[str, Any]] = None):
        self._write_log("FAILURE", f"❌ {message}", context)

    def get_log_path(self) -> str:
        return self.log_file_path

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type:
            self.error(f"Run terminated with exception: {exc_val}",
                       context={"exception_type": exc_type.__name__})
