"""
Run configuration shared by the command line and the library defaults.
"""

from dataclasses import dataclass, field
from typing import List, Optional

from .errors import ValidationError

__version__ = "0.1.0"

CAP_WORDS = 20_000_000  # words per oracle call / blocks per power system
CAP_SUM = 10_000_000  # terms of an almost-periodic partial sum
DEPTH = 6  # almost-periodic schedule depth


@dataclass
class RunConfig:
    command: str = ""
    inputs: List[str] = field(default_factory=list)
    output: Optional[str] = None
    cap_words: int = CAP_WORDS
    cap_sum: int = CAP_SUM
    depth: int = DEPTH
    seed: int = 0
    svg: bool = False

    def __post_init__(self):
        for name in ("cap_words", "cap_sum", "depth"):
            if getattr(self, name) <= 0:
                raise ValidationError(
                    "%s must be positive, got %s" % (name, getattr(self, name))
                )

    def stamp(self):
        """The fields every JSON output carries for reproducibility."""
        return {
            "command": self.command,
            "seed": self.seed,
            "caps": {"words": self.cap_words, "sum": self.cap_sum, "depth": self.depth},
        }
