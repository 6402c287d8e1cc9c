"""
Logging, error handling and execution utilities for GMOCSO.
"""
import asyncio
import functools
import logging
import os
from concurrent.futures import Executor
from time import perf_counter
from typing import (Awaitable, Callable, Generator, Optional, ParamSpec, Sequence, TypeVar,
                    cast)

from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler
from rich.traceback import install as ins
from tenacity import retry as retry_
from tenacity import retry_if_exception_type, stop_after_attempt, wait_exponential

load_dotenv()

T = TypeVar("T")
P = ParamSpec("P")

LOG_LEVEL = os.environ.get("GMOCSO_LOG_LEVEL", "INFO").upper()
console = Console(stderr=True)


class GmocsoError(Exception):
    """Base error. `exit_code` is the process status the CLI reports for it."""

    exit_code: int = 1

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


class ContractViolation(GmocsoError, ValueError):
    """A caller broke a documented precondition."""

    exit_code = 2


class EmptyArchiveError(ContractViolation):
    """Grid or leader requested on an archive with no members."""


class MetricError(ContractViolation):
    """A front-quality metric was asked for on fronts that cannot support it."""


class ConfigError(GmocsoError):
    """Configuration could not be parsed or validated."""

    exit_code = 2


class StorageError(GmocsoError):
    """Reading or writing a harness artifact failed."""

    exit_code = 3


class MissingReferenceError(GmocsoError):
    """No reference front could be resolved for a problem."""

    exit_code = 4


class CommandFailed(Exception):
    """Raised by `handle_errors` once a command failure has been logged."""

    def __init__(self, exit_code: int, detail: str) -> None:
        super().__init__(detail)
        self.exit_code = exit_code
        self.detail = detail


def setup_logging(name: str) -> logging.Logger:
    """
    Return a logger that writes through a single stderr RichHandler on the root logger.

    Arguments:
    name -- Logger name, normally the calling module's `__name__`. The level comes from GMOCSO_LOG_LEVEL.
    """
    root = logging.getLogger()
    if not any(isinstance(h, RichHandler) for h in root.handlers):
        console_handler = RichHandler(
            console=console,
            markup=True,
            rich_tracebacks=True,
            tracebacks_show_locals=False,
        )
        console_handler.setFormatter(logging.Formatter("%(message)s"))
        root.addHandler(console_handler)
    logger_ = logging.getLogger(name)
    logger_.setLevel(LOG_LEVEL)
    return logger_


logger = setup_logging(__name__)


def install_tracebacks() -> None:
    """Route uncaught exceptions through rich. Only the CLI entry point calls this."""
    ins(console=console, show_locals=False)


def process_time(func: Callable[P, T]) -> Callable[P, T]:
    """
    A decorator to measure the execution time of a call.

    Arguments:
    func -- The function whose execution time is to be measured.
    """

    @functools.wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> T:
        start = perf_counter()
        result = func(*args, **kwargs)
        logger.info("Time taken to execute %s: %.3f seconds", func.__name__, perf_counter() - start)
        return result

    return wrapper


def handle_errors(func: Callable[P, T]) -> Callable[P, T]:
    """
    A decorator to handle errors in a CLI command.

    Known failures are logged and re-raised as `CommandFailed` carrying the exit code of
    the error class; anything else maps to exit code 1.

    Arguments:
    func -- The command whose errors are to be handled.
    """

    @functools.wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> T:
        try:
            return func(*args, **kwargs)
        except GmocsoError as exc:
            detail = str(exc.detail).strip() or exc.__class__.__name__
            logger.error(detail)
            raise CommandFailed(exc.exit_code, detail) from exc
        except Exception as exc:  # pylint: disable=broad-except
            detail = str(exc).strip() or exc.__class__.__name__
            logger.exception(detail)
            raise CommandFailed(1, detail) from exc

    return wrapper


def chunker(seq: Sequence[T], size: int) -> Generator[Sequence[T], None, None]:
    """
    Yield consecutive slices of `seq` holding at most `size` items each.

    Arguments:
    seq -- Any sliceable sequence, numpy arrays included.
    size -- Slice length; the last slice may be shorter.
    """
    return (seq[pos : pos + size] for pos in range(0, len(seq), size))


def retry(
    retries: int = 3, wait: float = 0.1, max_wait: float = 2.0
) -> Callable[[Callable[P, T]], Callable[P, T]]:
    """Wrap an I/O function with exponential backoff on `OSError`."""

    def decorator(func: Callable[P, T]) -> Callable[P, T]:
        return cast(
            Callable[P, T],
            functools.wraps(func)(
                retry_(
                    stop=stop_after_attempt(retries),
                    wait=wait_exponential(multiplier=wait, max=max_wait),
                    retry=retry_if_exception_type(OSError),
                    reraise=True,
                )(func)
            ),
        )

    return decorator


def async_cpu(
    func: Callable[P, T], executor: Optional[Executor] = None
) -> Callable[P, Awaitable[T]]:
    """
    Convert a CPU bound function to a coroutine by running it in an executor.

    The function and its arguments must be picklable when `executor` is a process pool.
    """

    @functools.wraps(func)
    async def wrapper(*args: P.args, **kwargs: P.kwargs) -> T:
        return await asyncio.get_running_loop().run_in_executor(
            executor, functools.partial(func, *args, **kwargs)
        )

    return wrapper
