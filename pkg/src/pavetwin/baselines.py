"""Classical regressors trained on the standardized node features.

All six are implemented directly on numpy with deterministic tie-breaking
so repeated runs (and parallel tree fits) give identical predictions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError, NotFitted

BASELINE_KINDS = (
    "linear",
    "knn",
    "decision_tree",
    "random_forest",
    "gradient_boosting",
    "svr_linear",
)


def _as_2d(X):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionError(f"expected 2-D feature matrix, got shape {X.shape}")
    return X


class _Fitted:
    _is_fit = False
    _n_features = None

    def _check_fit(self, X):
        if not self._is_fit:
            raise NotFitted(f"{type(self).__name__} used before fit")
        X = _as_2d(X)
        if X.shape[1] != self._n_features:
            raise DimensionError(f"expected {self._n_features} features, got {X.shape[1]}")
        return X


class LinearRegressionModel(_Fitted):
    """Ordinary least squares via normal equations; falls back to a tiny
    ridge (lambda=1e-8) when the Gram matrix is singular."""

    def __init__(self):
        self.coef_ = None
        self.intercept_ = 0.0

    def fit(self, X, y):
        X = _as_2d(X)
        y = np.asarray(y, dtype=np.float64)
        A = np.hstack([X, np.ones((X.shape[0], 1))])
        gram = A.T @ A
        rhs = A.T @ y
        try:
            beta = np.linalg.solve(gram, rhs)
        except np.linalg.LinAlgError:
            beta = np.linalg.solve(gram + 1e-8 * np.eye(gram.shape[0]), rhs)
        self.coef_ = beta[:-1]
        self.intercept_ = float(beta[-1])
        self._is_fit = True
        self._n_features = X.shape[1]
        return self

    def predict(self, X):
        X = self._check_fit(X)
        return X @ self.coef_ + self.intercept_


class KNNRegressor(_Fitted):
    """k-nearest neighbors with Euclidean distance and uniform averaging;
    distance ties resolve to the lower training-row index."""

    def __init__(self, k: int = 5):
        if k < 1:
            raise ConfigError("k must be >= 1")
        self.k = k
        self._X = None
        self._y = None

    def fit(self, X, y):
        self._X = _as_2d(X)
        self._y = np.asarray(y, dtype=np.float64)
        self._is_fit = True
        self._n_features = self._X.shape[1]
        return self

    def predict(self, X):
        X = self._check_fit(X)
        k = min(self.k, len(self._y))
        out = np.empty(X.shape[0])
        for i, row in enumerate(X):
            d2 = ((self._X - row) ** 2).sum(axis=1)
            nearest = np.argsort(d2, kind="stable")[:k]
            out[i] = self._y[nearest].mean()
        return out


@dataclass
class _TreeNode:
    value: float
    feature: int = -1
    threshold: float = 0.0
    left: "_TreeNode | None" = None
    right: "_TreeNode | None" = None


class RegressionTree(_Fitted):
    """CART with variance-reduction splits.

    The split search scans candidate features in ascending index order and
    keeps a new split only on strict improvement, making ties deterministic.
    """

    def __init__(self, max_depth=None, min_samples_leaf=1, max_features=None, rng=None):
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.rng = rng
        self._root = None

    def _best_split(self, X, y, idx, features):
        best = None  # (sse, feature, threshold)
        n = len(idx)
        ml = self.min_samples_leaf
        lo, hi = max(ml, 1), min(n - ml, n - 1)
        if lo > hi:
            return None
        cuts = np.arange(lo, hi + 1)  # left-side sizes
        for f in features:
            order = idx[np.argsort(X[idx, f], kind="stable")]
            vals = X[order, f]
            valid = vals[cuts] != vals[cuts - 1]
            if not valid.any():
                continue
            ys = y[order]
            csum = np.cumsum(ys)
            csum2 = np.cumsum(ys * ys)
            sl, sl2 = csum[cuts - 1], csum2[cuts - 1]
            sr, sr2 = csum[-1] - sl, csum2[-1] - sl2
            sse = (sl2 - sl * sl / cuts) + (sr2 - sr * sr / (n - cuts))
            sse[~valid] = np.inf
            j = int(np.argmin(sse))  # first minimum: lowest threshold wins ties
            if np.isfinite(sse[j]) and (best is None or sse[j] < best[0] - 1e-12):
                cut = int(cuts[j])
                best = (float(sse[j]), f, 0.5 * (vals[cut - 1] + vals[cut]))
        return best

    def fit(self, X, y):
        X = _as_2d(X)
        y = np.asarray(y, dtype=np.float64)
        self._n_features = X.shape[1]
        self._root = _TreeNode(value=float(y.mean()))
        stack = [(self._root, np.arange(len(y)), 0)]
        while stack:
            node, idx, depth = stack.pop()
            node.value = float(y[idx].mean())
            if (
                len(idx) < 2 * self.min_samples_leaf
                or (self.max_depth is not None and depth >= self.max_depth)
                or np.all(y[idx] == y[idx[0]])
            ):
                continue
            if self.max_features is not None and self.max_features < self._n_features:
                features = np.sort(
                    self.rng.choice(self._n_features, size=self.max_features, replace=False)
                )
            else:
                features = np.arange(self._n_features)
            best = self._best_split(X, y, idx, features)
            if best is None:
                continue
            _, f, thr = best
            mask = X[idx, f] <= thr
            node.feature, node.threshold = int(f), float(thr)
            node.left = _TreeNode(value=0.0)
            node.right = _TreeNode(value=0.0)
            stack.append((node.left, idx[mask], depth + 1))
            stack.append((node.right, idx[~mask], depth + 1))
        self._is_fit = True
        return self

    def predict(self, X):
        X = self._check_fit(X)
        out = np.empty(X.shape[0])
        for i, row in enumerate(X):
            node = self._root
            while node.left is not None:
                node = node.left if row[node.feature] <= node.threshold else node.right
            out[i] = node.value
        return out


class RandomForest(_Fitted):
    """Bagged CART ensemble; per-tree RNG streams derive from (seed, index)
    so results are independent of fitting order."""

    def __init__(self, n_trees=100, max_features=2, seed=42):
        self.n_trees = n_trees
        self.max_features = max_features
        self.seed = seed
        self._trees: list[RegressionTree] = []

    def fit(self, X, y):
        X = _as_2d(X)
        y = np.asarray(y, dtype=np.float64)
        n = len(y)
        self._trees = []
        for t in range(self.n_trees):
            rng = np.random.default_rng([self.seed, t])
            boot = rng.integers(0, n, size=n)
            tree = RegressionTree(max_features=self.max_features, rng=rng)
            tree.fit(X[boot], y[boot])
            self._trees.append(tree)
        self._is_fit = True
        self._n_features = X.shape[1]
        return self

    def predict(self, X):
        X = self._check_fit(X)
        return np.mean([tree.predict(X) for tree in self._trees], axis=0)


class GradientBoosting(_Fitted):
    """Stagewise depth-limited trees fit to residuals; initial prediction
    is the train mean."""

    def __init__(self, n_stages=100, learning_rate=0.1, max_depth=3):
        self.n_stages = n_stages
        self.learning_rate = learning_rate
        self.max_depth = max_depth
        self._init = 0.0
        self._trees: list[RegressionTree] = []

    def fit(self, X, y):
        X = _as_2d(X)
        y = np.asarray(y, dtype=np.float64)
        self._init = float(y.mean())
        self._trees = []
        residual = y - self._init
        for _ in range(self.n_stages):
            tree = RegressionTree(max_depth=self.max_depth)
            tree.fit(X, residual)
            residual = residual - self.learning_rate * tree.predict(X)
            self._trees.append(tree)
        self._is_fit = True
        self._n_features = X.shape[1]
        return self

    def predict(self, X):
        X = self._check_fit(X)
        out = np.full(X.shape[0], self._init)
        for tree in self._trees:
            out += self.learning_rate * tree.predict(X)
        return out


class LinearSVR(_Fitted):
    """Linear epsilon-insensitive regression trained by deterministic
    per-sample subgradient descent in row order."""

    def __init__(self, epsilon=0.1, C=1.0, passes=1000, step=1e-3):
        self.epsilon = epsilon
        self.C = C
        self.passes = passes
        self.step = step
        self.coef_ = None
        self.intercept_ = 0.0

    def fit(self, X, y):
        X = _as_2d(X)
        y = np.asarray(y, dtype=np.float64)
        n, d = X.shape
        w = np.zeros(d)
        b = 0.0
        for _ in range(self.passes):
            for i in range(n):
                r = y[i] - (X[i] @ w + b)
                gw = w / n
                gb = 0.0
                if abs(r) > self.epsilon:
                    s = -np.sign(r)
                    gw = gw + self.C * s * X[i]
                    gb = self.C * s
                w -= self.step * gw
                b -= self.step * gb
        self.coef_ = w
        self.intercept_ = float(b)
        self._is_fit = True
        self._n_features = d
        return self

    def predict(self, X):
        X = self._check_fit(X)
        return X @ self.coef_ + self.intercept_


def make_baseline(kind: str, seed: int = 42):
    if kind == "linear":
        return LinearRegressionModel()
    if kind == "knn":
        return KNNRegressor(k=5)
    if kind == "decision_tree":
        return RegressionTree()
    if kind == "random_forest":
        return RandomForest(seed=seed)
    if kind == "gradient_boosting":
        return GradientBoosting()
    if kind == "svr_linear":
        return LinearSVR()
    raise ConfigError(f"unknown baseline kind {kind!r}")
