"""Run configuration shared by the command-line workflows."""

from dataclasses import dataclass, field
from typing import List, Optional

from .errors import DomainError

COMMANDS = ("solve", "shoot", "majorana", "reconstruct", "compare", "invariance")

#: Shooting tolerance per command; ``compare`` needs the slope to the last
#: bit because the decaying solution is unstable in x.
SHOOT_TOL = {"shoot": 1e-8, "solve": 1e-14, "compare": 1e-14}


@dataclass
class RunConfig:
    command: str
    p: float = 1.5
    ps: List[float] = field(default_factory=lambda: [1.2, 1.5, 2.0, 2.5, 3.0])
    lambdas: List[float] = field(default_factory=lambda: [0.5, 2.0])
    slope: Optional[float] = None
    lane_emden: bool = False
    theta0: float = 1.0
    x_min: float = 0.01
    x_max: float = 50.0
    step_tol: float = 1e-10
    quad_tol: float = 1e-10
    shoot_tol: Optional[float] = None
    bracket: List[float] = field(default_factory=lambda: [-2.0, -1.0])
    grid: int = 2001
    eps: float = 1e-6
    eps_rec: float = 1e-4
    points: int = 200
    bound: Optional[float] = None
    chart: str = "majorana"
    input: Optional[str] = None
    format: str = "csv"
    output: Optional[str] = None
    summary: Optional[str] = None
    seed: int = 0

    def __post_init__(self):
        if self.shoot_tol is None:
            self.shoot_tol = SHOOT_TOL.get(self.command, 1e-8)
        if self.bound is None:
            self.bound = 1e-6 if self.command == "invariance" else 1e-4
        self.validate()

    def validate(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        for name in ("step_tol", "quad_tol", "shoot_tol", "eps", "eps_rec",
                     "bound", "theta0"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")
        for name in ("grid", "points"):
            if getattr(self, name) < 2:
                raise DomainError(f"{name} must be at least 2, got {getattr(self, name)}")
        if not self.x_max > 0:
            raise DomainError("x_max must be positive")
        if self.command in ("compare", "invariance") and not 0 < self.x_min < self.x_max:
            raise DomainError("need 0 < x_min < x_max")
        if any(lam <= 0 for lam in self.lambdas):
            raise DomainError("lambda values must be positive")
        if len(self.bracket) != 2 or self.bracket[0] >= self.bracket[1]:
            raise DomainError("bracket must be two increasing slopes")
        if self.format not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.format!r}")
        if self.chart not in ("majorana", "dresner"):
            raise DomainError("reconstruction chart must be majorana or dresner")


def read_config_file(path):
    """Parse a flat ``key = value`` file; blank lines and ``#`` comments skipped."""
    entries = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            entries[key.replace("_", "-")] = value
    return entries
