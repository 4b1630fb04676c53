import os
from dataclasses import dataclass
from typing import Optional

from .base_field import ABORT_DEGREE_ENV, DEFAULT_ABORT_DEGREE, FqConfig
from .exceptions import ConfigError

OUTPUT_FORMATS = ("json", "pretty")


def abort_degree_from_env(default=DEFAULT_ABORT_DEGREE):
    raw = os.environ.get(ABORT_DEGREE_ENV)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{ABORT_DEGREE_ENV} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class CliConfig:
    """Settings shared by every subcommand."""

    field: FqConfig
    seed: int = 0
    trials: int = 100
    degree_bound: Optional[int] = None
    output: str = "pretty"
    normalize: bool = False
    abort_theta_degree: int = DEFAULT_ABORT_DEGREE
    verbosity: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.degree_bound is not None and self.degree_bound < 0:
            raise ConfigError(f"degree bound must be >= 0, got {self.degree_bound}")
        if self.output not in OUTPUT_FORMATS:
            raise ConfigError(f"output must be one of {OUTPUT_FORMATS}, got {self.output!r}")
        if self.abort_theta_degree < 1:
            raise ConfigError(f"abort degree must be >= 1, got {self.abort_theta_degree}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @classmethod
    def from_args(cls, args):
        field = FqConfig.from_q(args.q, args.modulus)
        return cls(
            field=field,
            seed=args.seed,
            trials=args.trials,
            degree_bound=args.bound,
            output=args.output,
            normalize=args.normalize,
            abort_theta_degree=abort_degree_from_env(),
            verbosity=args.verbose,
        )
