"""Persistent storage for computed constants with secure permissions."""

import json
import logging
import os
import threading
from fractions import Fraction

import platformdirs

from .constants import CacheLocation
from .superscalar import Rational, as_rational, format_rational

logger = logging.getLogger(__name__)


def default_constants_file() -> str:
    """constants.json in the per-user cache directory."""
    return os.path.join(
        platformdirs.user_cache_dir(CacheLocation.APP_NAME, CacheLocation.APP_AUTHOR),
        CacheLocation.CONSTANTS_FILE,
    )


def _parse_rational(text: str) -> Rational:
    return as_rational(Fraction(text))


class ConstantStore:
    """Manages a JSON map of named rational constants ("p/q" strings)."""

    def __init__(self, constants_file: str):
        self.constants_file = constants_file
        self._lock = threading.Lock()

    def load(self) -> dict[str, Rational] | None:
        """Loads all constants from storage."""
        if not os.path.exists(self.constants_file):
            logger.debug(f"Constants file does not exist: {self.constants_file}")
            return None

        try:
            with open(self.constants_file, "r") as f:
                raw = json.load(f)
            if not isinstance(raw, dict):
                raise ValueError("top-level value is not an object")
            constants = {str(key): _parse_rational(value) for key, value in raw.items()}
            logger.debug(f"Loaded {len(constants)} constants from {self.constants_file}")
            return constants
        except (json.JSONDecodeError, IOError, ValueError, TypeError, ZeroDivisionError) as e:
            logger.warning(f"Error loading constants: {e}")
            self._remove_invalid_file()
            return None

    def get(self, key: str) -> Rational | None:
        with self._lock:
            constants = self.load()
        if constants is None:
            return None
        return constants.get(key)

    def put(self, key: str, value: Rational) -> None:
        """Stores one constant, keeping the others."""
        with self._lock:
            constants = self.load() or {}
            constants[key] = value
            self.save(constants)

    def save(self, constants: dict[str, Rational]) -> None:
        """Saves constants to storage with secure permissions."""
        directory = os.path.dirname(self.constants_file)
        if directory and not os.path.exists(directory):
            logger.info(f"Creating directory: {directory}")
            os.makedirs(directory, mode=0o700)

        try:
            with open(self.constants_file, "w") as f:
                json.dump(
                    {key: format_rational(value) for key, value in sorted(constants.items())},
                    f,
                    indent=2,
                )

            # owner read/write only
            os.chmod(self.constants_file, 0o600)
            logger.info(f"Saved constants to {self.constants_file}")
        except (IOError, OSError) as e:
            logger.error(f"Error saving constants: {e}")
            raise

    def clear(self) -> None:
        """Removes stored constants."""
        self._remove_invalid_file()

    def _remove_invalid_file(self) -> None:
        if os.path.exists(self.constants_file):
            try:
                os.remove(self.constants_file)
                logger.info(f"Removed constants file: {self.constants_file}")
            except OSError as e:
                logger.error(f"Error removing constants file: {e}")
