import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from app.config import AppConfig


def _plain(value):
    """numpy scalars and arrays to JSON-native values."""
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def dumps(data) -> str:
    return json.dumps(_plain(data), sort_keys=True)


@dataclass
class CommandReport:
    """
    Output of one CLI command.

    Attributes:
        - command: subcommand name
        - config: the arguments that determine the payload (paths, sizes, seeds; no worker count)
        - payload: JSON-ready result of the command
        - table: optional DataFrame rendered for humans instead of the payload
        - ok: False when a check the command ran did not pass
        - wall_time: seconds, kept out of the payload so reruns compare equal
    """
    command: str
    config: dict
    payload: dict = field(default_factory=dict)
    table: Optional[pd.DataFrame] = None
    ok: bool = True
    wall_time: float = 0.0
    error: Optional[dict] = None

    def config_hash(self) -> str:
        return hashlib.sha256(dumps({'command': self.command, **self.config}).encode()).hexdigest()

    def payload_hash(self) -> str:
        return hashlib.sha256(dumps(self.payload).encode()).hexdigest()

    def to_json(self) -> dict:
        report = {'app': AppConfig.APP_NAME, 'command': self.command, 'config': _plain(self.config),
                  'config_hash': self.config_hash(), 'payload': _plain(self.payload), 'ok': self.ok,
                  'wall_time': round(self.wall_time, 6)}
        if self.error is not None:
            report['error'] = self.error
        return report

    def render(self, as_json: bool) -> str:
        if as_json:
            return dumps(self.to_json())
        lines = [f"{AppConfig.APP_NAME} {self.command}"]
        if self.table is not None and not self.table.empty:
            lines.append(self.table.to_string(index=False))
        for key, value in self.payload.items():
            if isinstance(value, (list, dict)):
                continue
            lines.append(f"{key}: {value}")
        if self.error is not None:
            lines.append(f"error [{self.error['code']}] {self.error['type']}: {self.error['message']}")
        lines.append(f"{'OK' if self.ok else 'FAILED'} ({self.wall_time:.2f}s)")
        return '\n'.join(lines)
