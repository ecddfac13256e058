"""Dense tensor arithmetic on small Euclidean spaces.

Tensors live on R^n with the standard basis declared orthonormal, so the
metric is the identity matrix and index placement never matters.  Components
are stored as full numpy arrays in C (lexicographic) order; alternating forms
keep a compact layout over strictly increasing multi-indices.  All values are
immutable after construction and every operation is a pure function.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

MAX_N_ENV = "CURVOP_MAX_N"
_DEFAULT_MAX_N = 8


def max_dimension() -> int:
    """Current dimension cap; override with the CURVOP_MAX_N variable."""
    raw = os.environ.get(MAX_N_ENV)
    if raw is None:
        return _DEFAULT_MAX_N
    value = int(raw)
    if value < 2:
        raise ValueError(f"{MAX_N_ENV} must be at least 2, got {raw!r}")
    return value


def check_dimension(n) -> int:
    n = int(n)
    if n < 2:
        raise ValueError(f"dimension must be at least 2, got {n}")
    cap = max_dimension()
    if n > cap:
        raise ValueError(
            f"dimension {n} exceeds the cap {cap} (set {MAX_N_ENV} to raise it)"
        )
    return n


@lru_cache(maxsize=None)
def wedge_pairs(n):
    """Index pairs (i, j) with i < j in lexicographic order."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def _wedge_index_map(n):
    return {pair: a for a, pair in enumerate(wedge_pairs(n))}


def wedge_count(n) -> int:
    return n * (n - 1) // 2


def wedge_index(n, i, j) -> int:
    """Position of e_i^e_j (i < j, 0-based) in the lexicographic wedge basis."""
    try:
        return _wedge_index_map(n)[(i, j)]
    except KeyError:
        raise ValueError(f"({i}, {j}) is not an increasing pair in 0..{n - 1}") from None


class Space:
    """An n-dimensional Euclidean space and its lexicographic wedge basis."""

    __slots__ = ("n",)

    def __init__(self, n):
        self.n = check_dimension(n)

    @property
    def wedge_dim(self) -> int:
        return wedge_count(self.n)

    @property
    def pairs(self):
        return wedge_pairs(self.n)

    def __repr__(self):
        return f"Space(n={self.n})"

    def __eq__(self, other):
        return isinstance(other, Space) and other.n == self.n

    def __hash__(self):
        return hash(("Space", self.n))


def _freeze(arr):
    arr.setflags(write=False)
    return arr

def _require_finite(arr, what):
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} must be finite")


def same_dimension(a, b):
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


class Tensor0k:
    """Dense (0, k)-tensor; array shape (n, ..., n) with k axes."""

    __slots__ = ("n", "k", "array")

    def __init__(self, array):
        arr = np.array(array, dtype=float)
        if arr.ndim < 1:
            raise ValueError("tensor order must be at least 1")
        n = arr.shape[0]
        if any(s != n for s in arr.shape):
            raise ValueError(f"axes must have equal length, got shape {arr.shape}")
        check_dimension(n)
        _require_finite(arr, "tensor components")
        self.n = n
        self.k = arr.ndim
        self.array = _freeze(arr)

    @classmethod
    def from_flat(cls, n, k, comps):
        """Build from the flat length-n^k lexicographic component list."""
        comps = np.asarray(comps, dtype=float)
        if comps.size != n ** k:
            raise ValueError(f"expected {n ** k} components, got {comps.size}")
        return cls(comps.reshape((n,) * k))

    @classmethod
    def zeros(cls, n, k):
        return cls(np.zeros((n,) * k))

    def flat(self):
        return self.array.reshape(-1)

    def norm_sq(self) -> float:
        return float(np.sum(self.array * self.array))

    def __repr__(self):
        return f"Tensor0k(n={self.n}, k={self.k})"


class Sym2:
    """Symmetric (0, 2)-tensor, stored exactly symmetric."""

    __slots__ = ("n", "mat")

    def __init__(self, mat, tol=1e-9):
        m = np.array(mat, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        check_dimension(m.shape[0])
        _require_finite(m, "matrix entries")
        scale = max(1.0, float(np.abs(m).max()))
        if float(np.abs(m - m.T).max()) > tol * scale:
            raise ValueError("matrix is not symmetric")
        m = (m + m.T) / 2.0  # exact: float addition commutes entrywise
        self.n = m.shape[0]
        self.mat = _freeze(m)

    def trace(self) -> float:
        return float(np.trace(self.mat))

    def traceless(self) -> "Sym2":
        """Trace-free part h - (tr h / n) g."""
        return Sym2(self.mat - (self.trace() / self.n) * np.eye(self.n))

    def norm_sq(self) -> float:
        return float(np.sum(self.mat * self.mat))

    def to_tensor(self) -> Tensor0k:
        return Tensor0k(self.mat)

    def __repr__(self):
        return f"Sym2(n={self.n})"


def identity_sym2(n) -> Sym2:
    """The metric tensor g of R^n."""
    return Sym2(np.eye(check_dimension(n)))


@lru_cache(maxsize=None)
def increasing_tuples(n, p):
    """Strictly increasing p-tuples in 0..n-1, lexicographic order."""
    return tuple(combinations(range(n), p))


@lru_cache(maxsize=None)
def _tuple_index_map(n, p):
    return {t: i for i, t in enumerate(increasing_tuples(n, p))}


@lru_cache(maxsize=None)
def _perm_signs(p):
    out = []
    for perm in permutations(range(p)):
        sign = 1
        for i in range(p):
            for j in range(i + 1, p):
                if perm[i] > perm[j]:
                    sign = -sign
        out.append((perm, sign))
    return tuple(out)


@lru_cache(maxsize=None)
def _dense_scatter(n, p):
    """Flat positions and signs for spreading compact form components over a
    dense array: one row per slot permutation, one column per increasing
    tuple.  Positions never collide."""
    tuples = increasing_tuples(n, p)
    perms = _perm_signs(p)
    flat = np.empty((len(perms), len(tuples)), dtype=np.intp)
    signs = np.empty(len(perms))
    for s, (perm, sign) in enumerate(perms):
        signs[s] = sign
        for c, idx in enumerate(tuples):
            pos = 0
            for d in range(p):
                pos = pos * n + idx[perm[d]]
            flat[s, c] = pos
    flat.setflags(write=False)
    signs.setflags(write=False)
    return flat, signs


@lru_cache(maxsize=None)
def _increasing_ravel(n, p):
    tuples = increasing_tuples(n, p)
    out = np.empty(len(tuples), dtype=np.intp)
    for c, idx in enumerate(tuples):
        pos = 0
        for d in range(p):
            pos = pos * n + idx[d]
        out[c] = pos
    out.setflags(write=False)
    return out


def sort_with_sign(indices):
    """Sort an index tuple, returning (sorted tuple, permutation sign).

    Sign is 0 when an index repeats.
    """
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(idx)):
        if idx[i - 1] == idx[i]:
            return tuple(idx), 0
    return tuple(idx), sign


class PForm:
    """Alternating (0, p)-tensor on increasing multi-indices.

    The squared norm sums over increasing indices only, so unit wedge basis
    forms have norm one.
    """

    __slots__ = ("n", "p", "comps")

    def __init__(self, n, p, comps):
        n = check_dimension(n)
        p = int(p)
        if not 1 <= p <= n:
            raise ValueError(f"form degree must be in 1..{n}, got {p}")
        comps = np.array(comps, dtype=float).reshape(-1)
        want = math.comb(n, p)
        if comps.size != want:
            raise ValueError(f"expected {want} components for (n={n}, p={p}), got {comps.size}")
        _require_finite(comps, "form components")
        self.n = n
        self.p = p
        self.comps = _freeze(comps)

    @classmethod
    def zero(cls, n, p):
        return cls(n, p, np.zeros(math.comb(n, p)))

    def value(self, indices) -> float:
        """Evaluate at an arbitrary index tuple, with the permutation sign."""
        if len(indices) != self.p:
            raise ValueError(f"expected {self.p} indices, got {len(indices)}")
        key, sign = sort_with_sign(indices)
        if sign == 0:
            return 0.0
        return sign * float(self.comps[_tuple_index_map(self.n, self.p)[key]])

    def norm_sq(self) -> float:
        return float(self.comps @ self.comps)

    def to_tensor(self) -> Tensor0k:
        """Dense alternating representative; norm_sq scales by p factorial."""
        arr = np.zeros(self.n ** self.p)
        flat, signs = _dense_scatter(self.n, self.p)
        arr[flat.reshape(-1)] = np.outer(signs, self.comps).reshape(-1)
        return Tensor0k(arr.reshape((self.n,) * self.p))

    @classmethod
    def from_tensor(cls, t: Tensor0k, tol=1e-12):
        """Read a dense alternating tensor back into compact storage."""
        comps = t.array.reshape(-1)[_increasing_ravel(t.n, t.k)]
        form = cls(t.n, t.k, comps)
        scale = max(1.0, float(np.abs(t.array).max()))
        if float(np.abs(form.to_tensor().array - t.array).max()) > tol * scale:
            raise ValueError("tensor is not alternating")
        return form

    def __repr__(self):
        return f"PForm(n={self.n}, p={self.p})"


def wedge_basis_form(n, indices) -> PForm:
    """Unit basis form e^{i_1}^...^e^{i_p} for strictly increasing indices."""
    idx = tuple(int(i) for i in indices)
    if any(not 0 <= i < n for i in idx):
        raise ValueError(f"indices must lie in 0..{n - 1}, got {idx}")
    if any(a >= b for a, b in zip(idx, idx[1:])) or len(idx) == 0:
        raise ValueError(f"indices must be strictly increasing, got {idx}")
    comps = np.zeros(math.comb(n, len(idx)))
    comps[_tuple_index_map(n, len(idx))[idx]] = 1.0
    return PForm(n, len(idx), comps)


class CurvTensor:
    """(0, 4)-tensor of curvature type, with cached symmetry flags.

    Flags record whether the components are skew in each pair, symmetric
    under pair exchange, and whether the first Bianchi sum vanishes; they are
    detected against the stored components on first access and cached, never
    assumed.
    """

    __slots__ = ("n", "array", "_tol", "_pair_skew", "_pair_symmetric", "_bianchi")

    def __init__(self, array, tol=1e-12):
        arr = np.array(array, dtype=float)
        if arr.ndim != 4 or any(s != arr.shape[0] for s in arr.shape):
            raise ValueError(f"expected shape (n, n, n, n), got {arr.shape}")
        check_dimension(arr.shape[0])
        _require_finite(arr, "tensor components")
        self.n = arr.shape[0]
        self.array = _freeze(arr)
        self._tol = tol
        self._pair_skew = None
        self._pair_symmetric = None
        self._bianchi = None

    @property
    def pair_skew(self) -> bool:
        if self._pair_skew is None:
            arr = self.array
            bound = self._tol * max(1.0, float(np.abs(arr).max()))
            self._pair_skew = bool(
                float(np.abs(arr + arr.transpose(1, 0, 2, 3)).max()) <= bound
                and float(np.abs(arr + arr.transpose(0, 1, 3, 2)).max()) <= bound
            )
        return self._pair_skew

    @property
    def pair_symmetric(self) -> bool:
        if self._pair_symmetric is None:
            arr = self.array
            bound = self._tol * max(1.0, float(np.abs(arr).max()))
            self._pair_symmetric = bool(
                float(np.abs(arr - arr.transpose(2, 3, 0, 1)).max()) <= bound
            )
        return self._pair_symmetric

    @property
    def bianchi(self) -> bool:
        if self._bianchi is None:
            arr = self.array
            bound = self._tol * max(1.0, float(np.abs(arr).max()))
            self._bianchi = bool(self.bianchi_residual() <= bound)
        return self._bianchi

    def norm_sq(self) -> float:
        return float(np.sum(self.array * self.array))

    def bianchi_residual(self) -> float:
        cyc = self.array + self.array.transpose(1, 2, 0, 3) + self.array.transpose(2, 0, 1, 3)
        return float(np.abs(cyc).max())

    def to_tensor(self) -> Tensor0k:
        return Tensor0k(self.array)

    def __repr__(self):
        return (
            f"CurvTensor(n={self.n}, pair_skew={self.pair_skew}, "
            f"pair_symmetric={self.pair_symmetric}, bianchi={self.bianchi})"
        )


def norm_sq(t) -> float:
    """Squared norm in the convention of the tensor's kind."""
    return t.norm_sq()


def inner(a, b) -> float:
    """Inner product of two tensors of the same kind and dimension."""
    if type(a) is not type(b):
        raise TypeError(f"kind mismatch: {type(a).__name__} vs {type(b).__name__}")
    same_dimension(a, b)
    if isinstance(a, Tensor0k):
        if a.k != b.k:
            raise ValueError(f"order mismatch: {a.k} vs {b.k}")
        return float(np.sum(a.array * b.array))
    if isinstance(a, Sym2):
        return float(np.sum(a.mat * b.mat))
    if isinstance(a, PForm):
        if a.p != b.p:
            raise ValueError(f"degree mismatch: {a.p} vs {b.p}")
        return float(a.comps @ b.comps)
    if isinstance(a, CurvTensor):
        return float(np.sum(a.array * b.array))
    raise TypeError(f"unsupported kind {type(a).__name__}")


def permute(t: Tensor0k, sigma) -> Tensor0k:
    """Slot permutation (T o sigma)(X_1, ..., X_k) = T(X_sigma(1), ..., X_sigma(k)).

    sigma is a 0-based permutation of range(k).  numpy's transpose carries
    slot d of the source to slot axes^-1(d), so the inverse permutation makes
    component [i_1, ..., i_k] read the source at [i_sigma(1), ..., i_sigma(k)].
    """
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(t.k)):
        raise ValueError(f"not a permutation of 0..{t.k - 1}: {sigma}")
    inverse = np.argsort(sigma)
    return Tensor0k(np.transpose(t.array, inverse))


def contract(t: Tensor0k, i, j):
    """Metric contraction over slots i < j (0-based).

    Returns a float when the order drops to zero, otherwise a Tensor0k.
    """
    if t.k < 2:
        raise ValueError("contraction needs order at least 2")
    if not (0 <= i < j < t.k):
        raise ValueError(f"slots must satisfy 0 <= i < j < {t.k}, got ({i}, {j})")
    traced = np.trace(t.array, axis1=i, axis2=j)
    if t.k == 2:
        return float(traced)
    return Tensor0k(traced)


def kulkarni_nomizu(s: Sym2, t: Sym2) -> CurvTensor:
    """Kulkarni-Nomizu product of two symmetric tensors.

    (S * T)(X,Y,Z,W) = S(X,Z)T(Y,W) - S(X,W)T(Y,Z)
                     + S(Y,W)T(X,Z) - S(Y,Z)T(X,W)

    The result carries all curvature-type symmetries including Bianchi.
    """
    same_dimension(s, t)
    a, b = s.mat, t.mat
    arr = (
        np.einsum("ik,jl->ijkl", a, b)
        - np.einsum("il,jk->ijkl", a, b)
        + np.einsum("jl,ik->ijkl", a, b)
        - np.einsum("jk,il->ijkl", a, b)
    )
    return CurvTensor(arr)
