"""Run configuration, report records and result containers."""
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from src.errors import ConfigError, DomainError

EXPERIMENTS = (
    "spherical",
    "project",
    "roundtrip",
    "plancherel",
    "l2-bound",
    "residue-sum",
    "pw-envelope",
    "koornwinder",
    "density",
    "geometry",
    "eigen",
    "cross-check",
    "product-formula",
    "verify-all",
)

SPACES = ("disk", "na")


def json_safe(value: Any) -> Any:
    """Convert numpy scalars, complex numbers and non-finite floats into JSON values."""
    if isinstance(value, dict):
        return {str(k): json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, np.ndarray):
        return json_safe(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [json_safe(float(value.real)), json_safe(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    return value


@dataclass
class RunConfig:
    """One CLI invocation: space, experiment, profile and grids."""

    experiment: str
    space: str = "disk"
    m: int = 2
    k: int = 1
    mode: int = 0
    R: float = 1.0
    profile_csv: Optional[str] = None
    lambda_min: float = 0.5
    lambda_max: float = 8.0
    lambda_step: float = 0.5
    im_min: float = -3.0
    im_max: float = 3.0
    im_step: float = 0.25
    rho: float = 0.0
    out: str = "reports"
    threads: int = 1
    lambda_cutoff: float = 128.0
    K: int = 20
    tolerances: Dict[str, float] = field(default_factory=dict)

    def validate(self) -> None:
        """Raise ConfigError on any invalid field."""
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        if self.space not in SPACES:
            raise ConfigError(f"unknown space {self.space!r}")
        if self.space == "na" and (self.m <= 0 or self.m % 2 or self.k <= 0):
            raise ConfigError(f"NA needs even m > 0 and k > 0, got m={self.m}, k={self.k}")
        if not self.R > 0:
            raise ConfigError(f"support radius must be positive, got {self.R}")
        if self.profile_csv is not None and not Path(self.profile_csv).is_file():
            raise ConfigError(f"profile file not found: {self.profile_csv}")
        if not (self.lambda_step > 0 and self.lambda_max >= self.lambda_min):
            raise ConfigError("lambda grid needs step > 0 and max >= min")
        if not (self.im_step > 0 and self.im_max >= self.im_min):
            raise ConfigError("imaginary grid needs step > 0 and max >= min")
        if self.rho < 0:
            raise ConfigError(f"rho must be >= 0, got {self.rho}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")
        if not self.lambda_cutoff > 0:
            raise ConfigError("lambda cutoff must be positive")
        if self.K < abs(self.mode):
            raise ConfigError(f"K={self.K} must be >= |mode|={abs(self.mode)}")
        for name, value in self.tolerances.items():
            if not (isinstance(value, float) and value >= 0):
                raise ConfigError(f"tolerance {name} must be a non-negative number")

    def lambdas(self) -> np.ndarray:
        count = int(round((self.lambda_max - self.lambda_min) / self.lambda_step)) + 1
        return np.array([round(self.lambda_min + i * self.lambda_step, 12) for i in range(count)])

    def to_dict(self) -> dict:
        return json_safe(asdict(self))

    def with_experiment(self, experiment: str) -> "RunConfig":
        data = asdict(self)
        data["experiment"] = experiment
        return RunConfig(**data)


@dataclass
class ReportRecord:
    """Outcome of one experiment.

    ``tolerances`` are upper bounds and ``minimums`` lower bounds on named
    metrics; the record passes iff every bounded metric is within its bound and
    no error occurred.
    """

    experiment: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    metrics: Dict[str, float] = field(default_factory=dict)
    tolerances: Dict[str, float] = field(default_factory=dict)
    minimums: Dict[str, float] = field(default_factory=dict)
    wall_time: float = 0.0
    artifacts: List[str] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def failures(self) -> List[str]:
        failed = []
        for name, bound in self.tolerances.items():
            value = self.metrics.get(name)
            if value is None or not (value <= bound):
                failed.append(name)
        for name, bound in self.minimums.items():
            value = self.metrics.get(name)
            if value is None or not (value >= bound):
                failed.append(name)
        return failed

    @property
    def passed(self) -> bool:
        return self.error is None and not self.failures

    def apply_overrides(self, overrides: Dict[str, float]) -> None:
        """Replace declared bounds by user overrides of the same name."""
        for name, value in overrides.items():
            if name in self.minimums:
                self.minimums[name] = value
            elif name in self.tolerances:
                self.tolerances[name] = value

    def to_dict(self) -> dict:
        return json_safe({
            "experiment": self.experiment,
            "inputs": self.inputs,
            "metrics": self.metrics,
            "tolerances": self.tolerances,
            "minimums": self.minimums,
            "passed": self.passed,
            "failures": self.failures,
            "wall_time": self.wall_time,
            "artifacts": self.artifacts,
            "error": self.error,
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class ResidueResult:
    """Residue of a projection at lambda = i(2k+1); ``is_pole`` False means the point is regular."""

    value: complex
    pole: complex
    k: int
    is_pole: bool


@dataclass
class MeromorphicProfile:
    """A projection as a function of lambda with its pole and zero bookkeeping."""

    mode: int
    value: Callable[[complex], complex]
    poles: List[complex]
    zeros: List[complex]
    residues: Dict[complex, complex] = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """Poles are +-i(2k+1) with k >= |mode|; zeros avoid them."""
        for pole in self.poles:
            k = (abs(pole.imag) - 1) / 2
            if pole.real != 0 or k != int(k) or int(k) < abs(self.mode):
                raise DomainError(f"{pole} is not a pole of a mode-{self.mode} projection")
        if set(self.poles) & set(self.zeros):
            raise DomainError("pole and zero sets intersect")

    def is_pole(self, lam: complex, radius: float = 0.0) -> bool:
        return any(abs(lam - p) <= radius for p in self.poles)

    def evenness_defect(self, lams) -> float:
        """max |value(lambda) - value(-lambda)| / max |value| over the sample."""
        gaps, scale = [], 0.0
        for lam in lams:
            v, w = self.value(lam), self.value(-lam)
            gaps.append(abs(v - w))
            scale = max(scale, abs(v))
        return max(gaps) / scale if scale else 0.0

    def to_dict(self) -> dict:
        return json_safe({
            "mode": self.mode,
            "poles": self.poles,
            "zeros": self.zeros,
            "residues": [{"pole": p, "residue": r} for p, r in self.residues.items()],
        })


@dataclass(frozen=True)
class EigenExpansion:
    """Coefficients a_k(lambda), |k| <= cutoff, of a Laplace eigenfunction."""

    lam: complex
    coefficients: Dict[int, complex]
    reference_radius: float
    cutoff: int

    def coefficient(self, k: int) -> complex:
        return self.coefficients.get(k, 0j)

    def to_dict(self) -> dict:
        return json_safe({
            "lambda": self.lam,
            "reference_radius": self.reference_radius,
            "cutoff": self.cutoff,
            "coefficients": [{"k": k, "a": a} for k, a in sorted(self.coefficients.items())],
        })


@dataclass(frozen=True, eq=False)
class PolarSamples:
    """Values on a product grid of geodesic radii (rows) and uniform angles (columns)."""

    r: np.ndarray
    values: np.ndarray
    theta0: float = 0.0

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float).reshape(-1)
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 2 or values.shape[0] != r.size or values.shape[1] < 2:
            raise DomainError(f"values must have shape (len(r), n_theta), got {values.shape}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "values", values)

    @property
    def n_theta(self) -> int:
        return self.values.shape[1]

    @property
    def theta(self) -> np.ndarray:
        return self.theta0 + 2 * math.pi * np.arange(self.n_theta) / self.n_theta

    @classmethod
    def from_function(cls, f: Callable[[np.ndarray, np.ndarray], np.ndarray],
                      r: np.ndarray, n_theta: int, theta0: float = 0.0) -> "PolarSamples":
        """Sample f(r, theta) on the grid."""
        r = np.asarray(r, dtype=float).reshape(-1)
        theta = theta0 + 2 * math.pi * np.arange(n_theta) / n_theta
        rr, tt = np.meshgrid(r, theta, indexing="ij")
        return cls(r, np.asarray(f(rr, tt), dtype=complex), theta0)

    def grid_l2(self, weight: Optional[np.ndarray] = None) -> Tuple[np.ndarray, float]:
        """Per-radius mean of |f|^2 over the angles, and its weighted sum over radii."""
        per_radius = np.mean(np.abs(self.values) ** 2, axis=1)
        total = float(np.sum(per_radius * (weight if weight is not None else 1.0)))
        return per_radius, total
