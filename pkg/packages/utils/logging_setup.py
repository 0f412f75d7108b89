"""Logging setup utilities for the tag pipeline"""

import logging
from pathlib import Path
from typing import Optional, Union


def clear_existing_logs(logs_dir: Path):
    """Clear log files left by a previous run in the same output directory"""
    if not logs_dir.exists():
        return
    for log_file in logs_dir.glob("*.log"):
        try:
            log_file.unlink()
        except OSError as e:
            print(f"Warning: Could not clear {log_file.name}: {e}")


def setup_logging(debug_mode: bool, log_dir: Optional[Union[str, Path]] = None):
    """Setup logging configuration based on debug mode

    Args:
        debug_mode: Send DEBUG records to the log file
        log_dir: Directory for pipeline.log (console only when None)
    """
    root = logging.getLogger()
    root.handlers.clear()
    root.setLevel(logging.DEBUG if debug_mode else logging.INFO)

    detailed_formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')
    simple_formatter = logging.Formatter('%(levelname)s: %(message)s')

    if log_dir is not None:
        logs_dir = Path(log_dir)
        clear_existing_logs(logs_dir)
        logs_dir.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(logs_dir / 'pipeline.log', mode='w')
        file_handler.setLevel(logging.DEBUG if debug_mode else logging.INFO)
        file_handler.setFormatter(detailed_formatter)
        root.addHandler(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.INFO)
    console_handler.setFormatter(simple_formatter)
    root.addHandler(console_handler)

    if debug_mode:
        logging.debug("Debug mode enabled - detailed logs in pipeline.log")
