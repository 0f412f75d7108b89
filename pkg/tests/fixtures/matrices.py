"""Small hand-made matrices for unit tests"""

import numpy as np
import scipy.sparse as sp

from packages.feature_matrix import FeatureMatrix
from packages.tag_normalize import FilmTagMatrix


def make_gamma(dense, item_ids=None, stems=None) -> FilmTagMatrix:
    """FilmTagMatrix from a dense 0/1 array"""
    dense = np.asarray(dense, dtype=np.int64)
    n_films, n_tags = dense.shape
    item_ids = np.arange(n_films) if item_ids is None else np.asarray(item_ids)
    stems = stems or [f"tag{t:03d}" for t in range(n_tags)]
    return FilmTagMatrix(
        incidence=sp.csr_matrix(dense),
        item_ids=np.asarray(item_ids, dtype=np.int64),
        stems=list(stems),
        labels=list(stems),
        tag_user_count=dense.sum(axis=0),
        tag_film_count=dense.sum(axis=0),
    )


def make_features(dense, item_ids=None) -> FeatureMatrix:
    """FeatureMatrix from dense nonnegative weights"""
    dense = np.asarray(dense, dtype=np.float64)
    item_ids = np.arange(dense.shape[0]) if item_ids is None else np.asarray(item_ids)
    return FeatureMatrix(sp.csr_matrix(dense), np.asarray(item_ids, dtype=np.int64))


def unit_rows(dense) -> np.ndarray:
    dense = np.asarray(dense, dtype=np.float64)
    return dense / np.linalg.norm(dense, axis=1, keepdims=True)
