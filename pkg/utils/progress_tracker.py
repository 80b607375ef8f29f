import logging
import time

logger = logging.getLogger(__name__)


class ProgressTracker:
    """Track elapsed time and grid progress of a long-running computation."""

    def __init__(self, operation: str, total: int = 0, interval: float = 2.0):
        self.operation = operation
        self.total = total
        self.interval = interval
        self.start_time = time.perf_counter()
        self.last_update = self.start_time

    def update_progress(self, current: int) -> None:
        """Log progress, at most once per interval to keep stderr readable."""
        now = time.perf_counter()
        if now - self.last_update < self.interval:
            return
        self.last_update = now

        if self.total > 0:
            percentage = (current / self.total) * 100
        else:
            percentage = 0

        bar_length = 20
        filled = int(bar_length * percentage / 100)
        bar = "#" * filled + "." * (bar_length - filled)
        logger.info(
            f"{self.operation}: [{bar}] {percentage:.1f}% "
            f"({current}/{self.total}), elapsed {self._format_time(now - self.start_time)}"
        )

    def elapsed_ms(self) -> float:
        """Milliseconds since the tracker was created."""
        return (time.perf_counter() - self.start_time) * 1000.0

    def final_status(self, message: str) -> None:
        """Log the closing line with total time."""
        elapsed = time.perf_counter() - self.start_time
        logger.info(f"{message} in {self._format_time(elapsed)}")

    @staticmethod
    def _format_time(seconds: float) -> str:
        """Format seconds to human readable format."""
        if seconds < 1:
            return f"{seconds * 1000:.0f}ms"
        elif seconds < 60:
            return f"{seconds:.1f}s"
        elif seconds < 3600:
            return f"{int(seconds // 60)}m {int(seconds % 60)}s"
        else:
            hours = int(seconds // 3600)
            minutes = int((seconds % 3600) // 60)
            return f"{hours}h {minutes}m"
