"""Run configuration: defaults, environment overrides and CLI arguments."""

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

logger = logging.getLogger(__name__)

ENV_THREADS = "REID_GALE_THREADS"

# Default values
DEFAULTS = {
    "run/threads": 0,
    "run/strict": False,
    "output/format": "json",
    "advanced/debugLogging": False,
}

COMMANDS = ("analyze", "matrix", "validate-fan")
FORMATS = ("json", "csv")


class ConfigManager:
    """Settings lookup over an environment mapping with DEFAULTS fallback."""

    ENV_KEYS = {
        "run/threads": ENV_THREADS,
        "advanced/debugLogging": "REID_GALE_DEBUG",
    }

    def __init__(self, environ: Mapping[str, str] | None = None):
        self._environ = os.environ if environ is None else environ

    def _raw(self, key: str):
        env_key = self.ENV_KEYS.get(key)
        if env_key and env_key in self._environ:
            return self._environ[env_key]
        return DEFAULTS.get(key)

    def get_string(self, key: str) -> str:
        val = self._raw(key)
        return "" if val is None else str(val)

    def get_int(self, key: str) -> int:
        val = self._raw(key)
        try:
            return int(val)
        except (ValueError, TypeError):
            logger.warning("Ignoring non-integer value %r for %s", val, key)
            return DEFAULTS.get(key, 0)

    def get_bool(self, key: str) -> bool:
        val = self._raw(key)
        if isinstance(val, bool):
            return val
        if isinstance(val, str):
            return val.lower() in ("true", "1", "yes")
        return bool(val)


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    fan: Path | None = None
    L: Path | None = None
    K: Path | None = None
    v: str | None = None
    labels: str | None = None
    output: Path | None = None
    format: str = DEFAULTS["output/format"]
    strict: bool = DEFAULTS["run/strict"]
    dump_degrees: Path | None = None
    dump_euler: Path | None = None
    threads: int = DEFAULTS["run/threads"]
    debug: bool = DEFAULTS["advanced/debugLogging"]

    def validate(self) -> list[str]:
        """Problems with the combination of options; empty when usable."""
        problems = []
        if self.command not in COMMANDS:
            problems.append(f"unknown command {self.command!r}")
        if self.command == "analyze" and (self.group is None or self.fan is None):
            problems.append("analyze requires --group and --fan")
        if self.command == "matrix" and self.L is None:
            problems.append("matrix requires --L")
        if self.command == "validate-fan" and self.fan is None:
            problems.append("validate-fan requires --fan")
        if self.format not in FORMATS:
            problems.append(f"unknown format {self.format!r}")
        if self.threads < 0:
            problems.append("thread count must be nonnegative")
        return problems


def _path(value) -> Path | None:
    return Path(value) if value else None


def build_run_config(args, config: ConfigManager | None = None) -> RunConfig:
    """Merge parsed arguments over environment settings and DEFAULTS."""
    config = config or ConfigManager()
    threads = getattr(args, "threads", None)
    return RunConfig(
        command=args.command,
        group=getattr(args, "group", None),
        fan=_path(getattr(args, "fan", None)),
        L=_path(getattr(args, "L", None)),
        K=_path(getattr(args, "K", None)),
        v=getattr(args, "v", None),
        labels=getattr(args, "labels", None),
        output=_path(getattr(args, "output", None)),
        format=getattr(args, "format", None) or config.get_string("output/format"),
        strict=bool(getattr(args, "strict", False)) or config.get_bool("run/strict"),
        dump_degrees=_path(getattr(args, "dump_degrees", None)),
        dump_euler=_path(getattr(args, "dump_euler", None)),
        threads=threads if threads is not None else config.get_int("run/threads"),
        debug=bool(getattr(args, "debug", False)) or config.get_bool("advanced/debugLogging"),
    )
