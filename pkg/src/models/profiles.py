"""Compactly supported test functions: radial profiles and SO(2)-finite disk functions."""
import hashlib
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy.interpolate import CubicSpline

from src.errors import DomainError

ArrayLike = Union[float, np.ndarray]


def bump(x: ArrayLike, R: float) -> np.ndarray:
    """f_R(x) = exp(-1/(1-(x/R)^2)) for |x| < R, else 0."""
    x = np.abs(np.asarray(x, dtype=float))
    out = np.zeros_like(x)
    inside = x < R
    u = (x[inside] / R) ** 2
    out[inside] = np.exp(-1.0 / (1.0 - u))
    return out


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Function of a radius, smooth, even in the radius and vanishing beyond ``support``.

    Either ``func`` (vectorized callable) or ``samples`` (radii, values) is set.
    ``key`` identifies the profile for caching.
    """

    support: float
    func: Optional[Callable[[np.ndarray], np.ndarray]] = None
    samples: Optional[Tuple[np.ndarray, np.ndarray]] = None
    key: Tuple = ()
    _spline: Optional[CubicSpline] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if not self.support > 0:
            raise DomainError(f"support radius must be positive, got {self.support}")
        if (self.func is None) == (self.samples is None):
            raise DomainError("exactly one of func or samples must be given")
        if self.samples is not None:
            rho = np.asarray(self.samples[0], dtype=float)
            values = np.asarray(self.samples[1])
            if rho.ndim != 1 or rho.shape != values.shape or rho.size < 4:
                raise DomainError("samples need matching 1-d radius and value arrays (>= 4 points)")
            if np.any(np.diff(rho) <= 0) or rho[0] < 0:
                raise DomainError("sample radii must be non-negative and strictly increasing")
            object.__setattr__(self, "samples", (rho, values))
            object.__setattr__(self, "_spline", CubicSpline(rho, values))
            if not self.key:
                digest = hashlib.sha1(rho.tobytes() + np.ascontiguousarray(values).tobytes())
                object.__setattr__(self, "key", ("samples", digest.hexdigest()))

    # Constructors

    @classmethod
    def bump(cls, R: float = 1.0) -> "RadialProfile":
        return cls(support=R, func=lambda x: bump(x, R), key=("bump", float(R)))

    @classmethod
    def mode_bump(cls, R: float = 1.0, n: int = 0) -> "RadialProfile":
        """(tanh r)^{|n|} f_R(r): smooth at the origin when paired with e^{in theta}."""
        p = abs(n)
        return cls(
            support=R,
            func=lambda x: np.tanh(np.abs(x)) ** p * bump(x, R),
            key=("mode_bump", float(R), p),
        )

    @classmethod
    def zero(cls, R: float = 1.0) -> "RadialProfile":
        return cls(support=R, func=lambda x: np.zeros_like(np.asarray(x, dtype=float)), key=("zero", R))

    @classmethod
    def from_samples(cls, rho: Iterable[float], values: Iterable[complex], support: Optional[float] = None):
        rho = np.asarray(list(rho), dtype=float)
        values = np.asarray(list(values))
        return cls(support=float(support if support is not None else rho[-1]), samples=(rho, values))

    # Evaluation

    def __call__(self, rho: ArrayLike) -> np.ndarray:
        x = np.abs(np.asarray(rho, dtype=float))
        if self.func is not None:
            values = np.asarray(self.func(x))
        else:
            values = self._spline(np.clip(x, 0.0, self.samples[0][-1]))
        return np.where(x < self.support, values, 0.0)

    @property
    def is_zero(self) -> bool:
        return bool(self.key and self.key[0] == "zero")

    def scaled(self, c: complex) -> "RadialProfile":
        base = self
        return RadialProfile(support=self.support, func=lambda x: c * base(x), key=("scaled", c, self.key))

    def plus(self, other: "RadialProfile") -> "RadialProfile":
        a, b = self, other
        return RadialProfile(
            support=max(a.support, b.support),
            func=lambda x: a(x) + b(x),
            key=("sum", a.key, b.key),
        )

    def sample(self, n: int = 201) -> Tuple[np.ndarray, np.ndarray]:
        rho = np.linspace(0.0, self.support, n)
        return rho, self(rho)

    # Serialization

    def to_csv(self, path: Union[str, Path], n: int = 201) -> None:
        """Write ``rho,value`` rows on a uniform grid of [0, support]."""
        rho, values = self.sample(n)
        lines = ["rho,value"] + [f"{r:.17g},{float(np.real(v)):.17g}" for r, v in zip(rho, values)]
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "RadialProfile":
        """Read a ``rho,value`` file; the last radius is the support."""
        with open(path) as fh:
            header = fh.readline().strip().replace(" ", "")
            if header != "rho,value":
                raise DomainError(f"expected header 'rho,value', got {header!r}")
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
        return cls.from_samples(data[:, 0], data[:, 1])


@dataclass(frozen=True, eq=False)
class SO2FiniteFunction:
    """f(u) = sum_n f_n(r) e^{in theta} where (r, theta) are the geodesic polar
    coordinates of u = (z - z0)/(1 - conj(z0) z)."""

    modes: Dict[int, RadialProfile]
    R: float
    z0: complex = 0j

    def __post_init__(self):
        if not self.R > 0:
            raise DomainError(f"support radius must be positive, got {self.R}")
        if not abs(self.z0) < 1:
            raise DomainError(f"centre must lie in the open disk, got {self.z0}")
        object.__setattr__(self, "modes", {int(n): p for n, p in sorted(self.modes.items())})
        object.__setattr__(self, "z0", complex(self.z0))
        for n, profile in self.modes.items():
            if profile.support > self.R + 1e-12:
                raise DomainError(f"mode {n} has support {profile.support} > R={self.R}")

    @classmethod
    def bump(cls, R: float = 1.0, n: int = 0, z0: complex = 0j) -> "SO2FiniteFunction":
        return cls({n: RadialProfile.mode_bump(R, n)}, R, z0)

    @classmethod
    def zero(cls, R: float = 1.0, n: int = 0, z0: complex = 0j) -> "SO2FiniteFunction":
        return cls({n: RadialProfile.zero(R)}, R, z0)

    @property
    def mode_numbers(self) -> List[int]:
        return list(self.modes)

    @property
    def is_single_mode(self) -> bool:
        return len(self.modes) == 1

    @property
    def single_mode(self) -> Tuple[int, RadialProfile]:
        if not self.is_single_mode:
            raise DomainError(f"expected a single mode, got {self.mode_numbers}")
        return next(iter(self.modes.items()))

    def mode(self, n: int) -> RadialProfile:
        return self.modes.get(n, RadialProfile.zero(self.R))

    def restrict(self, n: int) -> "SO2FiniteFunction":
        return SO2FiniteFunction({n: self.mode(n)}, self.R, self.z0)

    def centred(self) -> "SO2FiniteFunction":
        return SO2FiniteFunction(self.modes, self.R, 0j)

    @property
    def fingerprint(self) -> Tuple:
        return (self.R, self.z0.real, self.z0.imag) + tuple((n, p.key) for n, p in self.modes.items())

    def evaluate_polar(self, r: ArrayLike, theta: ArrayLike) -> np.ndarray:
        """Value at local geodesic polar coordinates (r, theta) around z0."""
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(np.broadcast(r, theta).shape, dtype=complex)
        for n, profile in self.modes.items():
            out = out + profile(r) * np.exp(1j * n * theta)
        return out

    def __call__(self, z: Union[complex, np.ndarray]) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        u = (z - self.z0) / (1 - np.conj(self.z0) * z)
        return self.evaluate_polar(np.arctanh(np.abs(u)), np.angle(u))

    # Serialization

    def to_dict(self, n_samples: int = 201) -> dict:
        """JSON form {R, z0, modes: [{n, samples: [{r, value}]}]}."""
        modes = []
        for n, profile in self.modes.items():
            rho, values = profile.sample(n_samples)
            samples = []
            for r, v in zip(rho, values):
                v = complex(v)
                samples.append({"r": float(r), "value": v.real if v.imag == 0 else [v.real, v.imag]})
            modes.append({"n": n, "samples": samples})
        z0 = self.z0.real if self.z0.imag == 0 else [self.z0.real, self.z0.imag]
        return {"R": self.R, "z0": z0, "modes": modes}

    @classmethod
    def from_dict(cls, data: dict) -> "SO2FiniteFunction":
        def as_complex(v) -> complex:
            return complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)

        R = float(data["R"])
        modes = {}
        for entry in data.get("modes", []):
            rho = [s["r"] for s in entry["samples"]]
            values = [as_complex(s["value"]) for s in entry["samples"]]
            modes[int(entry["n"])] = RadialProfile.from_samples(rho, values, support=min(R, rho[-1]))
        return cls(modes, R, as_complex(data.get("z0", 0.0)))


def linear_combination(terms: Iterable[Tuple[complex, SO2FiniteFunction]]) -> SO2FiniteFunction:
    """sum c_i f_i for functions sharing a centre."""
    terms = list(terms)
    if not terms:
        raise DomainError("empty combination")
    z0 = terms[0][1].z0
    R = max(f.R for _, f in terms)
    modes: Dict[int, RadialProfile] = {}
    for c, f in terms:
        if f.z0 != z0:
            raise DomainError("functions must share a centre")
        for n, profile in f.modes.items():
            scaled = profile.scaled(c)
            modes[n] = modes[n].plus(scaled) if n in modes else scaled
    return SO2FiniteFunction(modes, R, z0)


def angle_grid(n: int) -> np.ndarray:
    return 2 * math.pi * np.arange(n) / n
