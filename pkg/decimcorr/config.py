"""
Command-line configuration for decimcorr runs.
"""
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from decimcorr.errors import ParameterError
from decimcorr.fieldcore import parse_modulus

SUBCOMMANDS = ("verify", "distribution", "sequence", "sums", "field-info")
FORMATS = ("json", "table")
MODES = ("full", "sampled")


@dataclass
class CliConfig:
    """Parameters of one CLI invocation."""

    subcommand: str = "verify"

    # Field and decimation
    k: int = 3
    l: int = 1
    modulus_override: Optional[str] = None

    # Verification
    mode: str = "full"
    sample_size: int = 10000
    seed: int = 0

    # Output
    format: str = "json"
    output_path: Optional[str] = None

    # 0 = auto (environment variable, then physical cores)
    threads: int = 0
    verbose: bool = False

    @classmethod
    def from_args(cls, args: Dict[str, Any]) -> "CliConfig":
        """Build from the argparse namespace dict; unknown keys are ignored."""
        names = cls.__dataclass_fields__.keys()
        values = {key: value for key, value in args.items() if key in names and value is not None}
        if args.get("modulus") is not None:
            values["modulus_override"] = args["modulus"]
        config = cls(**values)
        config.validate()
        return config

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ParameterError(f"unknown subcommand {self.subcommand!r}")
        if self.format not in FORMATS:
            raise ParameterError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.sample_size < 1:
            raise ParameterError(f"sample_size must be >= 1, got {self.sample_size}")
        if self.threads < 0:
            raise ParameterError(f"threads must be >= 0, got {self.threads}")
        if self.modulus_override is not None:
            parse_modulus(self.modulus_override)

    @property
    def modulus(self) -> Optional[int]:
        if self.modulus_override is None:
            return None
        return parse_modulus(self.modulus_override)

    @property
    def m(self) -> int:
        return 2 * self.k

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
