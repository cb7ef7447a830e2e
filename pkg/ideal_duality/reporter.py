import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ideal_duality.config import Config

logger = logging.getLogger(__name__)


@dataclass
class Report:
    """
    Result of one CLI command. Serialized with sorted keys and no timestamps,
    so the same input and command always give the same bytes.
    """
    command: str
    input_digest: str
    result: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = 0
    engine_version: str = Config.ENGINE_VERSION

    @classmethod
    def failure(cls, command: str, input_digest: str, exit_code: int, reason: str, message: str):
        return cls(command, input_digest, {"error": {"reason": reason, "message": message}}, exit_code)

    @property
    def ok(self) -> bool:
        return self.exit_code == 0

    def as_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "engine_version": self.engine_version,
            "input_digest": self.input_digest,
            "result": self.result,
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        indent = Config.REPORT_INDENT if indent is None else indent
        return json.dumps(self.as_dict(), sort_keys=True, indent=indent, ensure_ascii=False) + "\n"

    def generate_report(self, output_file: str):
        """Write the JSON report, creating the parent folder if needed."""
        folder = os.path.dirname(output_file)
        if folder and not os.path.exists(folder):
            os.makedirs(folder)
        try:
            with open(output_file, "w", encoding="utf-8") as f:
                f.write(self.to_json())
            logger.info(f"Report written to {output_file}")
        except OSError as e:
            logger.error(f"Failed to write report to {output_file}: {e}")
            raise
