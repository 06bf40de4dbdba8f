"""Points of NA and of the unit disk, and H-type structures on p + z."""
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from src.errors import DimensionMismatch, DomainError


def _frozen_vector(values) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class NAPoint:
    """Group element n·a of NA written as (V, Z, a)."""

    V: np.ndarray
    Z: np.ndarray
    a: float

    def __post_init__(self):
        object.__setattr__(self, "V", _frozen_vector(self.V))
        object.__setattr__(self, "Z", _frozen_vector(self.Z))
        object.__setattr__(self, "a", float(self.a))
        if not self.a > 0:
            raise DomainError(f"NA coordinate a must be positive, got {self.a}")

    @classmethod
    def identity(cls, m: int, k: int) -> "NAPoint":
        return cls(np.zeros(m), np.zeros(k), 1.0)

    @property
    def m(self) -> int:
        return self.V.size

    @property
    def k(self) -> int:
        return self.Z.size

    def as_array(self) -> np.ndarray:
        """Flat coordinates (V, Z, a)."""
        return np.concatenate([self.V, self.Z, [self.a]])

    def allclose(self, other: "NAPoint", atol: float = 1e-12) -> bool:
        return self.m == other.m and self.k == other.k and bool(
            np.allclose(self.as_array(), other.as_array(), rtol=0.0, atol=atol)
        )


@dataclass(frozen=True)
class DiskPoint:
    """Point of the open unit disk with cached geodesic polar coordinates."""

    z: complex
    r: float = field(init=False)
    theta: float = field(init=False)

    def __post_init__(self):
        z = complex(self.z)
        modulus = abs(z)
        if not modulus < 1:
            raise DomainError(f"|z| must be < 1, got {modulus}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "r", math.atanh(modulus))
        object.__setattr__(self, "theta", math.atan2(z.imag, z.real) % (2 * math.pi))

    @classmethod
    def from_polar(cls, r: float, theta: float) -> "DiskPoint":
        if r < 0:
            raise DomainError(f"geodesic radius must be >= 0, got {r}")
        return cls(math.tanh(r) * complex(math.cos(theta), math.sin(theta)))

    @property
    def origin(self) -> bool:
        return self.z == 0


@dataclass(frozen=True)
class BoundaryPoint:
    """Point of the circle S^1, stored by its angle so that |w| = 1 exactly."""

    phi: float

    def __post_init__(self):
        object.__setattr__(self, "phi", float(self.phi) % (2 * math.pi))

    @property
    def w(self) -> complex:
        return complex(math.cos(self.phi), math.sin(self.phi))


@dataclass(frozen=True, eq=False)
class HTypeStructure:
    """Bracket [V, V']_j = V^T B_j V' on p with values in z, and the maps J_Z.

    ``bracket`` has shape (k, m, m); J_Z = sum_j Z_j B_j^T so that
    <J_Z V, V'> = <[V, V'], Z>.
    """

    bracket: np.ndarray

    def __post_init__(self):
        b = np.array(self.bracket, dtype=float)
        if b.ndim != 3 or b.shape[1] != b.shape[2]:
            raise DimensionMismatch(f"bracket table must have shape (k, m, m), got {b.shape}")
        b.setflags(write=False)
        object.__setattr__(self, "bracket", b)

    @classmethod
    def from_bracket_table(cls, table: Sequence[Sequence[Sequence[float]]]) -> "HTypeStructure":
        """Build and validate a user-supplied bracket table."""
        structure = cls(np.asarray(table, dtype=float))
        structure.validate()
        return structure

    @property
    def m(self) -> int:
        return self.bracket.shape[1]

    @property
    def k(self) -> int:
        return self.bracket.shape[0]

    def bracket_of(self, V: np.ndarray, W: np.ndarray) -> np.ndarray:
        return np.einsum("i,jik,k->j", V, self.bracket, W)

    def J(self, Z: np.ndarray) -> np.ndarray:
        """Matrix of J_Z acting on p."""
        return np.einsum("j,jik->ki", Z, self.bracket)

    def apply_J(self, Z: np.ndarray, V: np.ndarray) -> np.ndarray:
        return self.J(Z) @ V

    def check_dimensions(self, m: int, k: int) -> None:
        if (m, k) != (self.m, self.k):
            raise DimensionMismatch(f"point has (m, k)=({m}, {k}), structure has ({self.m}, {self.k})")

    def clifford_defect(self) -> float:
        """Max entry of J_{e_i}J_{e_j} + J_{e_j}J_{e_i} + 2 delta_ij I over basis pairs."""
        mats = [self.J(np.eye(self.k)[j]) for j in range(self.k)]
        eye = np.eye(self.m)
        defect = 0.0
        for i, Ji in enumerate(mats):
            for j, Jj in enumerate(mats):
                target = -2.0 * eye if i == j else np.zeros_like(eye)
                defect = max(defect, float(np.max(np.abs(Ji @ Jj + Jj @ Ji - target))))
        return defect

    def skew_defect(self) -> float:
        return float(np.max(np.abs(self.bracket + np.transpose(self.bracket, (0, 2, 1)))))

    def validate(self, tol: float = 1e-12) -> None:
        """Raise DomainError unless the bracket is skew and J_Z^2 = -|Z|^2."""
        if self.m % 2:
            raise DomainError(f"H-type algebras need even dim p, got m={self.m}")
        if self.skew_defect() > tol:
            raise DomainError("bracket table is not skew-symmetric")
        if self.clifford_defect() > tol:
            raise DomainError("J_Z^2 = -|Z|^2 fails on the basis of z")


def htype_heisenberg(m_prime: int = 1) -> HTypeStructure:
    """Heisenberg algebra with p = R^{2m'} and one-dimensional centre.

    On each coordinate pair J_{(1)}(v, w) = (-w, v).
    """
    if m_prime < 1:
        raise DomainError(f"m' must be >= 1, got {m_prime}")
    m = 2 * m_prime
    B = np.zeros((1, m, m))
    for i in range(m_prime):
        B[0, 2 * i, 2 * i + 1] = 1.0
        B[0, 2 * i + 1, 2 * i] = -1.0
    return HTypeStructure(B)
