import cProfile
import io
import pstats
import time
from contextlib import contextmanager
from functools import wraps
from typing import Callable, Iterator, Optional

from src.utils.log import get_logger

logger = get_logger("PROFILE")


class Stopwatch:
    def __init__(self):
        self.start = time.perf_counter()
        self.stop: float | None = None

    @property
    def elapsed(self) -> float:
        end = self.stop if self.stop is not None else time.perf_counter()
        return end - self.start


@contextmanager
def timed() -> Iterator[Stopwatch]:
    clock = Stopwatch()
    try:
        yield clock
    finally:
        clock.stop = time.perf_counter()


def profile_performance(output_file: Optional[str] = None, context: Optional[Callable[..., str]] = None,
                        top: int = 20):
    """
    cProfile the wrapped call. The report opens with `context(*args, **kwargs)`,
    the elapsed time and the call count, then lists the `top` package frames by
    cumulative time. It goes to output_file, or to the log at INFO.
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            profiler = cProfile.Profile()
            with timed() as clock:
                profiler.enable()
                try:
                    result = func(*args, **kwargs)
                finally:
                    profiler.disable()

            s = io.StringIO()
            stats = pstats.Stats(profiler, stream=s).sort_stats("cumulative")
            title = context(*args, **kwargs) if context else func.__name__
            s.write(f"# {title}\n# {clock.elapsed:.4f}s, {stats.total_calls} calls\n")
            stats.print_stats(r"src[/\\]", top)
            logger.info(f"{title}: {clock.elapsed:.4f}s, {stats.total_calls} calls")

            if output_file:
                with open(output_file, "w") as f:
                    f.write(s.getvalue())
            else:
                logger.info(s.getvalue())
            return result
        return wrapper
    return decorator
