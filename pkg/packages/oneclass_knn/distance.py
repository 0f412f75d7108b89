"""Angular distance on the nonnegative unit sphere"""

import numpy as np
import scipy.sparse as sp

from ..configuration import config
from ..utils.error_handling import require


def _dense(vector) -> np.ndarray:
    if sp.issparse(vector):
        return np.asarray(vector.toarray()).ravel()
    return np.asarray(vector, dtype=np.float64).ravel()


def angular_from_cosine(cosine):
    """arccos(clip(cos, 0, 1)) / π, with near-identical directions snapped to 0"""
    cosine = np.clip(np.asarray(cosine, dtype=np.float64), 0.0, 1.0)
    cosine = np.where(cosine >= 1.0 - config.IDENTICAL_COSINE_TOLERANCE, 1.0, cosine)
    distance = np.arccos(cosine) / np.pi
    return float(distance) if distance.ndim == 0 else distance


def angular_distance(u, v) -> float:
    """
    Angular distance of two nonnegative unit vectors, in [0, 0.5]

    Args:
        u: Unit vector (dense or sparse row)
        v: Unit vector (dense or sparse row)

    Returns:
        0 for identical directions, 0.5 for disjoint supports
    """
    u, v = _dense(u), _dense(v)
    require(u.shape == v.shape, f"vector shapes differ: {u.shape} vs {v.shape}")
    for name, vector in (('u', u), ('v', v)):
        require(bool(np.all(vector >= 0)), f"{name} has negative coordinates")
        require(abs(float(np.linalg.norm(vector)) - 1.0) <= config.UNIT_NORM_TOLERANCE,
                f"{name} is not a unit vector")
    return angular_from_cosine(float(np.dot(u, v)))


def pairwise_angular(rows, columns) -> np.ndarray:
    """Distance matrix between two stacks of unit row vectors"""
    if sp.issparse(rows):
        cosine = rows @ (columns.T if sp.issparse(columns) else np.asarray(columns).T)
    else:
        cosine = np.asarray(rows) @ (columns.T.toarray() if sp.issparse(columns) else np.asarray(columns).T)
    if sp.issparse(cosine):
        cosine = cosine.toarray()
    return angular_from_cosine(np.asarray(cosine))
