"""Paley-Wiener type growth certificates on complex lambda grids."""
import logging
from typing import Callable, Mapping, Tuple, Union

import numpy as np

from src.errors import DomainError
from src.models.grids import EnvelopeFit

logger = logging.getLogger(__name__)

Samples = Union[Mapping[complex, float], Tuple[np.ndarray, np.ndarray]]


def _unpack(values: Samples) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(values, Mapping):
        lams = np.array(list(values.keys()), dtype=complex)
        mags = np.array(list(values.values()), dtype=float)
    else:
        lams = np.asarray(values[0], dtype=complex).reshape(-1)
        mags = np.asarray(values[1], dtype=float).reshape(-1)
    if lams.size == 0 or lams.shape != mags.shape:
        raise DomainError("envelope fit needs a non-empty set of (lambda, magnitude) pairs")
    return lams, np.abs(mags)


def certify(values: Samples, envelope: Callable[[np.ndarray], np.ndarray], model_order: int) -> EnvelopeFit:
    """Smallest C with |value| <= C * envelope(lambda) on every sampled lambda."""
    lams, mags = _unpack(values)
    env = np.asarray(envelope(lams), dtype=float)
    if np.any(env <= 0) or not np.all(np.isfinite(env)):
        raise DomainError("envelope must be positive and finite on the grid")
    ratio = mags / env
    C = float(np.max(ratio))
    violation = float(np.max(np.clip(ratio - C, 0.0, None)))
    return EnvelopeFit(model_order=model_order, fitted_constant=C, max_violation=violation, n_points=lams.size)


def paley_wiener_envelope(N: int, width: float, squared: bool = True) -> Callable[[np.ndarray], np.ndarray]:
    """(1+|lambda|^2)^{-N} e^{width |Im lambda|}, or (1+|lambda|)^{-N} e^{...} if not squared."""

    def envelope(lams: np.ndarray) -> np.ndarray:
        modulus = np.abs(lams)
        base = 1.0 + modulus**2 if squared else 1.0 + modulus
        return base ** (-float(N)) * np.exp(width * np.abs(lams.imag))

    return envelope


def envelope_fit(values: Samples, N: int, a: float, d: float, squared: bool = True) -> EnvelopeFit:
    """Certificate for the envelope (1+|lambda|^2)^{-N} e^{|Im lambda|(d+a)}.

    Args:
        values: Mapping lambda -> magnitude, or a pair of arrays.
        N: Decay order.
        a: Support radius.
        d: Distance of the evaluation point from the support centre.
        squared: Use 1+|lambda|^2 (NA form); otherwise 1+|lambda| (disk form).
    """
    fit = certify(values, paley_wiener_envelope(N, a + d, squared), N)
    logger.debug(f"Envelope N={N}, width={a + d}: C={fit.fitted_constant:.6g} on {fit.n_points} points")
    return fit
