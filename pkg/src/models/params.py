"""Parameter records fixing one Jacobi analysis or one Damek-Ricci space."""
import json
import math
from dataclasses import dataclass, field

from src.errors import DomainError


@dataclass(frozen=True)
class JacobiParams:
    """Jacobi function parameters (alpha, beta) with rho0 = alpha + beta + 1."""

    alpha: float
    beta: float
    rho0: float = field(init=False)

    def __post_init__(self):
        if not self.alpha > -1:
            raise DomainError(f"alpha must exceed -1, got {self.alpha}")
        object.__setattr__(self, "rho0", self.alpha + self.beta + 1)

    @classmethod
    def disk(cls) -> "JacobiParams":
        """Parameters of radial analysis on the unit disk."""
        return cls(0.0, 0.0)

    @classmethod
    def disk_mode(cls, n: int) -> "JacobiParams":
        """Parameters (|n|, -|n|) of the radial factor of angular mode n."""
        return cls(float(abs(n)), -float(abs(n)))

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta}

    @classmethod
    def from_dict(cls, data: dict) -> "JacobiParams":
        return cls(float(data["alpha"]), float(data["beta"]))


@dataclass(frozen=True)
class NAParams:
    """Dimensions (m, k) of a Damek-Ricci space NA and the constants they fix."""

    m: int  # dim of p, even
    k: int  # dim of the centre z

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """Raise DomainError unless m is even positive and k positive."""
        if not isinstance(self.m, int) or self.m <= 0 or self.m % 2:
            raise DomainError(f"m must be an even positive integer, got {self.m!r}")
        if not isinstance(self.k, int) or self.k <= 0:
            raise DomainError(f"k must be a positive integer, got {self.k!r}")

    @property
    def Q(self) -> float:
        """Homogeneous dimension m/2 + k."""
        return self.m / 2 + self.k

    @property
    def alpha(self) -> float:
        return (self.m + self.k - 1) / 2

    @property
    def beta(self) -> float:
        return (self.k - 1) / 2

    @property
    def c_mk(self) -> float:
        """Inversion constant 2^{k-1} Gamma((2m+k+1)/2) pi^{-(2m+k+1)/2}."""
        e = (2 * self.m + self.k + 1) / 2
        return 2.0 ** (self.k - 1) * math.gamma(e) * math.pi ** (-e)

    @property
    def jacobi(self) -> JacobiParams:
        return JacobiParams(self.alpha, self.beta)

    @property
    def dimension(self) -> int:
        return self.m + self.k + 1

    def to_dict(self) -> dict:
        return {"m": self.m, "k": self.k}

    @classmethod
    def from_dict(cls, data: dict) -> "NAParams":
        return cls(m=int(data["m"]), k=int(data["k"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "NAParams":
        return cls.from_dict(json.loads(text))
