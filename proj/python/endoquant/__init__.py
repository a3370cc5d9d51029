"""Exact star products with separation of variables on Hermitian vector bundles.

Every function takes a config (a dict in the CLI's JSON layout, or a path to
such a file) and returns the same JSON document the command-line tool writes.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Any, Mapping, Union

from ._endoquant import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_VERIFICATION_FAILURE,
    InvalidInput,
    run,
)

__all__ = [
    "EXIT_INPUT_ERROR",
    "EXIT_OK",
    "EXIT_VERIFICATION_FAILURE",
    "InvalidInput",
    "Result",
    "graphs",
    "load_config",
    "mul",
    "run_command",
    "tensor",
    "verify",
]

Config = Union[Mapping[str, Any], str, os.PathLike]


@dataclass(frozen=True)
class Result:
    status: int
    output: dict
    text: str


def load_config(path: Union[str, os.PathLike]) -> dict:
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def run_command(command: str, config: Config, **overrides: Any) -> Result:
    """Runs a command; keyword overrides replace top-level config fields."""
    cfg = dict(config) if isinstance(config, Mapping) else load_config(config)
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    status, output, text = run(command, json.dumps(cfg))
    return Result(status, json.loads(output), text)


def graphs(config: Config, order: int | None = None, family: str | None = None) -> dict:
    return run_command("graphs", config, order=order, family=family).output


def tensor(config: Config, order: int | None = None, route: str | None = None) -> dict:
    return run_command("tensor", config, order=order, route=route).output


def mul(config: Config, order: int | None = None, route: str | None = None) -> dict:
    return run_command("mul", config, order=order, route=route).output


def verify(config: Config, order: int | None = None, seed: int | None = None) -> Result:
    return run_command("verify", config, order=order, seed=seed)
