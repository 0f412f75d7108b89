"""
Performance Profiling for the tag pipeline
Per-operation wall-clock timing, written to the logs directory on request
"""

import time
import json
import logging
import threading
from pathlib import Path
from functools import wraps
from typing import Dict, Optional, Any


class PerformanceProfiler:
    """
    Collects call counts and durations per component.operation key

    Timings only ever reach logs/; stage artifacts stay free of them so that
    repeated runs produce identical files.
    """

    def __init__(self, enabled: bool = False):
        self.enabled = enabled
        self.timing_data: Dict[str, Dict[str, Any]] = {}
        self.session_start_time = time.time()
        self._lock = threading.Lock()

        if self.enabled:
            logging.info("Performance profiling enabled")

    def profile_timing(self, operation_name: str, component: Optional[str] = None, tier: str = "method"):
        """
        Decorator for timing function execution

        Args:
            operation_name: Name of the operation being timed
            component: Package name (e.g. 'tag_cluster', 'oneclass_knn')
            tier: Profiling tier ('system', 'stage', 'method')
        """
        operation_key = f"{component}.{operation_name}" if component else operation_name

        def decorator(func):
            @wraps(func)
            def wrapper(*args, **kwargs):
                if not self.enabled:
                    return func(*args, **kwargs)

                start_time = time.perf_counter()
                success = True
                try:
                    return func(*args, **kwargs)
                except Exception:
                    success = False
                    raise
                finally:
                    self._record_timing(operation_key, tier, time.perf_counter() - start_time, success)
            return wrapper
        return decorator

    def _record_timing(self, operation_key: str, tier: str, duration: float, success: bool):
        with self._lock:
            entry = self.timing_data.setdefault(operation_key, {
                'tier': tier,
                'calls': 0,
                'failures': 0,
                'total_seconds': 0.0,
                'max_seconds': 0.0,
            })
            entry['calls'] += 1
            entry['total_seconds'] += duration
            entry['max_seconds'] = max(entry['max_seconds'], duration)
            if not success:
                entry['failures'] += 1

        if tier in ('system', 'stage'):
            logging.info(f"⏱️  {operation_key} took {duration:.2f}s")
        else:
            logging.debug(f"{operation_key} took {duration:.4f}s")

    def generate_performance_report(self) -> str:
        """Human readable table of the slowest operations"""
        lines = ["PERFORMANCE REPORT", "-" * 40]
        ordered = sorted(self.timing_data.items(), key=lambda kv: kv[1]['total_seconds'], reverse=True)
        for key, entry in ordered:
            lines.append(
                f"{key}: {entry['calls']} calls, {entry['total_seconds']:.2f}s total, "
                f"{entry['max_seconds']:.2f}s max"
            )
        if not ordered:
            lines.append("No operations recorded")
        return "\n".join(lines)

    def save_detailed_report(self, output_path: Path) -> Optional[Path]:
        """Save timing data as JSON; returns the path or None when disabled"""
        if not self.enabled:
            return None
        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            'session_duration': time.time() - self.session_start_time,
            'operations': self.timing_data,
        }
        with open(output_path, 'w', encoding='utf-8') as f:
            json.dump(payload, f, indent=2, sort_keys=True)
        logging.info(f"Detailed performance report saved to: {output_path}")
        return output_path


_global_profiler: Optional[PerformanceProfiler] = None


def get_profiler() -> PerformanceProfiler:
    """Get the global profiler instance"""
    global _global_profiler
    if _global_profiler is None:
        _global_profiler = PerformanceProfiler(enabled=False)
    return _global_profiler


def initialize_profiler(enabled: bool = False) -> PerformanceProfiler:
    """Initialize global profiler with specified settings"""
    global _global_profiler
    _global_profiler = PerformanceProfiler(enabled=enabled)
    return _global_profiler


def profile_timing(operation_name: str, component: Optional[str] = None, tier: str = "method"):
    """Convenience decorator using the global profiler at call time"""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            timed = get_profiler().profile_timing(operation_name, component, tier)(func)
            return timed(*args, **kwargs)
        return wrapper
    return decorator
