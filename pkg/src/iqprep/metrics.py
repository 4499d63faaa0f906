"""Lightweight full-reference similarity measures over preprocessed channels.

These are deliberately small stand-ins with the same shape as the
established full-reference metrics: a structure term from gradient
magnitudes on the luminance channel, and a pointwise similarity term on
each chroma channel, combined with a configurable chroma exponent. They
exist so that end-to-end score invariance under a front-end strategy swap
is assertable on something realistic, not to compete on prediction
accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from iqprep.pipeline import PreprocessedChannels

__all__ = [
    "MetricConfig",
    "QualityScore",
    "gradient_similarity",
    "chroma_similarity",
    "score",
]

# Prewitt masks, 1/3-normalized as in the gradient-based IQA family;
# applied by cross-correlation with replicate edges.
_PREWITT_H = np.array([[1.0, 0.0, -1.0], [1.0, 0.0, -1.0], [1.0, 0.0, -1.0]]) / 3.0
_PREWITT_V = _PREWITT_H.T


@dataclass(frozen=True)
class MetricConfig:
    """Stability constants and the chroma exponent.

    ``gradient_c`` and ``chroma_t`` guard the similarity ratios against
    division by zero and are sized for the 0..255 dynamic range; they move
    absolute scores but not any of the invariances the tests pin down.
    """

    gradient_c: float = 160.0
    chroma_t: float = 200.0
    chroma_weight: float = 0.5

    def __post_init__(self) -> None:
        if not self.gradient_c > 0:
            raise ValueError(f"gradient_c must be positive, got {self.gradient_c}")
        if not self.chroma_t > 0:
            raise ValueError(f"chroma_t must be positive, got {self.chroma_t}")
        if not 0.0 <= self.chroma_weight <= 1.0:
            raise ValueError(f"chroma_weight must lie in [0, 1], got {self.chroma_weight}")


@dataclass(frozen=True)
class QualityScore:
    """Pooled similarity with its per-term breakdown."""

    value: float
    gradient: float
    chroma1: float | None = None
    chroma2: float | None = None


def _check_pair(ref: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(ref, dtype=np.float64)
    b = np.asarray(dst, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"plane dimensions differ: {a.shape} vs {b.shape}")
    return a, b


def prewitt_magnitude(plane: np.ndarray) -> np.ndarray:
    """Gradient magnitude from the two Prewitt masks, replicate-edge padded."""
    gh = ndimage.correlate(plane, _PREWITT_H, mode="nearest")
    gv = ndimage.correlate(plane, _PREWITT_V, mode="nearest")
    return np.sqrt(gh * gh + gv * gv)


def gradient_similarity(ref_luma: np.ndarray, dst_luma: np.ndarray, c: float = 160.0) -> np.ndarray:
    """Local structure similarity map from Prewitt gradient magnitudes.

    Parameters
    ----------
    ref_luma, dst_luma : ndarray
      Luminance planes of identical shape, at least 3 x 3.
    c : float
      Positive stability constant.

    Returns
    -------
    ndarray
      Per-pixel scores ``(2*g_r*g_d + c) / (g_r^2 + g_d^2 + c)``, each in
      (0, 1], exactly 1 where the local gradients agree.
    """
    if not c > 0:
        raise ValueError(f"stability constant must be positive, got {c}")
    ref, dst = _check_pair(ref_luma, dst_luma)
    if ref.shape[0] < 3 or ref.shape[1] < 3:
        raise ValueError(f"gradient similarity needs planes of at least 3x3, got {ref.shape}")
    g_ref = prewitt_magnitude(ref)
    g_dst = prewitt_magnitude(dst)
    return (2.0 * g_ref * g_dst + c) / (g_ref**2 + g_dst**2 + c)


def chroma_similarity(ref_chroma: np.ndarray, dst_chroma: np.ndarray, t: float = 200.0) -> np.ndarray:
    """Pointwise chroma similarity map ``(2*r*d + t) / (r^2 + d^2 + t)``.

    Values lie in [-1, 1]: at most 1, exactly 1 where the planes agree,
    and possibly negative where the chroma values have opposite signs and
    dominate the stability constant. Always finite for ``t > 0``.
    """
    if not t > 0:
        raise ValueError(f"stability constant must be positive, got {t}")
    ref, dst = _check_pair(ref_chroma, dst_chroma)
    return (2.0 * ref * dst + t) / (ref**2 + dst**2 + t)


def _chroma_power(product: np.ndarray, weight: float) -> np.ndarray:
    # Principal-branch power, real part: for a negative base this equals
    # |x|^w * cos(pi*w), matching the real() convention the established
    # metrics use for their chroma exponent; weight 0 gives exactly 1.
    return np.power(product.astype(np.complex128), weight).real


def score(
    ref: PreprocessedChannels,
    dst: PreprocessedChannels,
    config: MetricConfig = MetricConfig(),
) -> QualityScore:
    """Pool the similarity maps of two preprocessed images into one scalar.

    The pooled value is the pixel mean of
    ``gradient_map * (chroma1_map * chroma2_map) ** chroma_weight``
    over whichever chroma channels are present, or of the gradient map
    alone for luminance-only inputs. Identical inputs score exactly 1.0.

    Raises
    ------
    ValueError
      If the two inputs carry different channel sets or dimensions, or if
      the luminance channel is missing.
    """
    for name, a, b in zip(("luma", "chroma1", "chroma2"), ref.planes, dst.planes):
        if (a is None) != (b is None):
            raise ValueError(f"channel sets differ: {name} present on one input only")
    if ref.luma is None:
        raise ValueError("scoring requires the luminance channel")

    gradient_map = gradient_similarity(ref.luma, dst.luma, config.gradient_c)
    chroma_maps: list[np.ndarray] = []
    chroma_means: list[float | None] = []
    for ref_c, dst_c in ((ref.chroma1, dst.chroma1), (ref.chroma2, dst.chroma2)):
        if ref_c is None:
            chroma_means.append(None)
            continue
        cmap = chroma_similarity(ref_c, dst_c, config.chroma_t)
        chroma_maps.append(cmap)
        chroma_means.append(float(cmap.mean()))

    if chroma_maps:
        product = chroma_maps[0]
        for cmap in chroma_maps[1:]:
            product = product * cmap
        composite = gradient_map * _chroma_power(product, config.chroma_weight)
    else:
        composite = gradient_map

    return QualityScore(
        value=float(composite.mean()),
        gradient=float(gradient_map.mean()),
        chroma1=chroma_means[0],
        chroma2=chroma_means[1],
    )
