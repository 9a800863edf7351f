"""Scikit-learn style wrappers around the metric-space pipelines.

``ContinuityComponents`` behaves like a clustering estimator: fit on a
coordinate array (or a precomputed distance matrix) and read the component
labels.  ``DistortionLowerBound`` fits the same inputs and exposes the
certified lower bound on the lp embedding distortion together with the
full per-component report.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_array

from .continuity import MetricSpace, build_continuity_graph
from .distortion import distortion_bound


def _point_ids(n):
    width = max(1, len(str(n - 1)))
    return [f"p{i:0{width}d}" for i in range(n)]


def _space_from_array(X, metric):
    ids = _point_ids(len(X))
    if metric == "precomputed":
        return MetricSpace.from_matrix(ids, X)
    return MetricSpace.from_coords(ids, X, metric=metric)


class ContinuityComponents(ClusterMixin, BaseEstimator):
    """Group points into nearest-neighbour continuity components.

    Parameters
    ----------
    metric : str, default="euclidean"
        "euclidean" to treat X as coordinates, "precomputed" to treat X
        as a full distance matrix.

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
        Integer component label per row.
    neighbor_radius_ : ndarray of shape (n_samples,)
        Nearest-neighbour distance per row.
    component_steps_ : ndarray of shape (n_components_,)
        Common neighbour radius of each component.
    n_components_ : int
    graph_ : ContinuityGraph
    """

    def __init__(self, metric="euclidean"):
        self.metric = metric

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        space = _space_from_array(X, self.metric)
        graph = build_continuity_graph(space)
        label_index = {label: k for k, label in enumerate(graph.components)}
        self.space_ = space
        self.graph_ = graph
        self.labels_ = np.array(
            [label_index[graph.component_label[p]] for p in space.ids],
            dtype=np.intp,
        )
        self.neighbor_radius_ = np.array(
            [graph.neighbor_radius[p] for p in space.ids], dtype=np.float64
        )
        self.component_steps_ = np.array(
            [graph.component_step[label] for label in graph.components],
            dtype=np.float64,
        )
        self.n_components_ = len(graph.components)
        return self


class DistortionLowerBound(BaseEstimator):
    """Certified lower bound on the lp embedding distortion.

    Parameters
    ----------
    p : float, default=2.0
    metric : str, default="euclidean"
        Same convention as :class:`ContinuityComponents`.
    restarts : int, default=20
        Descent restarts for the spectral gap when p != 2.
    edge_set_mode : str, default="all-geodesics"
    max_geodesics : int, default=10000
    seed : int, default=0

    Attributes
    ----------
    bound_ : float
        Supremum of the per-component lower bounds.
    report_ : dict
        Full per-component report (sizes, deviation, displacement, gap).
    n_components_ : int
    """

    def __init__(self, p=2.0, metric="euclidean", restarts=20,
                 edge_set_mode="all-geodesics", max_geodesics=10_000, seed=0):
        self.p = p
        self.metric = metric
        self.restarts = restarts
        self.edge_set_mode = edge_set_mode
        self.max_geodesics = max_geodesics
        self.seed = seed

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        space = _space_from_array(X, self.metric)
        report = distortion_bound(
            space,
            p=self.p,
            restarts=self.restarts,
            edge_set_mode=self.edge_set_mode,
            max_geodesics=self.max_geodesics,
            seed=self.seed,
        )
        self.space_ = space
        self.report_ = report.to_dict()
        self.bound_ = report.sup_bound
        self.n_components_ = len(report.components)
        return self
