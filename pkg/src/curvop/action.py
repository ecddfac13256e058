"""The derivation action of so(n) on tensors and the machinery built on it.

so(n) is identified with wedge space by (x^y)z = g(x,z)y - g(y,z)x together
with the inner product <A,B> = tr(A^T B)/2, which makes the lexicographic
wedge basis orthonormal.  An element L acts on a (0,k)-tensor by

    (L T)(X_1, ..., X_k) = - sum_i T(X_1, ..., L X_i, ..., X_k)

and on a curvature operator by the induced commutator.  The hat tensor
collects the action of the whole wedge basis; curvature terms and the Ricci
curvature of a tensor are bilinear expressions in those blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .operators import CurvatureOperator, _wedge_patterns
from .tensors import (
    CurvTensor,
    PForm,
    Sym2,
    Tensor0k,
    _freeze,
    _require_finite,
    _tuple_index_map,
    check_dimension,
    increasing_tuples,
    wedge_count,
    wedge_index,
    wedge_pairs,
)


class SoElement:
    """Element of so(n) in lexicographic wedge coordinates."""

    __slots__ = ("n", "comps")

    def __init__(self, n, comps):
        n = check_dimension(n)
        comps = np.array(comps, dtype=float).reshape(-1)
        if comps.size != wedge_count(n):
            raise ValueError(
                f"expected {wedge_count(n)} coordinates for n={n}, got {comps.size}"
            )
        _require_finite(comps, "so(n) coordinates")
        self.n = n
        self.comps = _freeze(comps)

    @classmethod
    def from_matrix(cls, mat, tol=1e-9):
        m = np.asarray(mat, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        scale = max(1.0, float(np.abs(m).max()))
        if float(np.abs(m + m.T).max()) > tol * scale:
            raise ValueError("matrix is not skew-symmetric")
        n = m.shape[0]
        comps = [(m[j, i] - m[i, j]) / 2.0 for i, j in wedge_pairs(n)]
        return cls(n, comps)

    @classmethod
    def from_vectors(cls, x, y):
        """The wedge x^y; its matrix sends z to g(x,z)y - g(y,z)x."""
        x = np.asarray(x, dtype=float).reshape(-1)
        y = np.asarray(y, dtype=float).reshape(-1)
        if x.size != y.size:
            raise ValueError("vectors must have equal length")
        n = x.size
        comps = [x[i] * y[j] - x[j] * y[i] for i, j in wedge_pairs(n)]
        return cls(n, comps)

    def matrix(self) -> np.ndarray:
        """Skew matrix acting on column vectors."""
        a = np.zeros((self.n, self.n))
        for c, (i, j) in zip(self.comps, wedge_pairs(self.n)):
            a[j, i] += c
            a[i, j] -= c
        return a

    def norm_sq(self) -> float:
        return float(self.comps @ self.comps)

    def __repr__(self):
        return f"SoElement(n={self.n})"


def wedge_element(n, i, j) -> SoElement:
    """Basis element e_i^e_j; order of i and j fixes the sign."""
    if i == j:
        raise ValueError("wedge of equal indices vanishes")
    comps = np.zeros(wedge_count(n))
    if i < j:
        comps[wedge_index(n, i, j)] = 1.0
    else:
        comps[wedge_index(n, j, i)] = -1.0
    return SoElement(n, comps)


def so_basis(n):
    """The lexicographic orthonormal wedge basis of so(n)."""
    return tuple(wedge_element(n, i, j) for i, j in wedge_pairs(n))


# -- raw array actions -------------------------------------------------------

def _act_array_wedge(arr, a, b):
    """Action of e_a^e_b (a < b) on a dense component array."""
    out = np.zeros_like(arr)
    for slot in range(arr.ndim):
        pre = (slice(None),) * slot
        out[pre + (a,)] -= arr[pre + (b,)]
        out[pre + (b,)] += arr[pre + (a,)]
    return out


def _act_array(arr, mat):
    """Action of a skew matrix on a dense component array.

    Matrices with a single wedge-pair support take the sliced path; the
    result is identical, it just skips the dense contraction.
    """
    rows, cols = np.nonzero(mat)
    if len(rows) == 0:
        return np.zeros_like(arr)
    if len(rows) == 2:
        a, b = sorted((int(rows[0]), int(cols[0])))
        return mat[b, a] * _act_array_wedge(arr, a, b)
    out = np.zeros_like(arr)
    last = arr.ndim - 1
    for slot in range(arr.ndim):
        moved = arr if slot == last else np.moveaxis(arr, slot, -1)
        prod = moved @ mat
        out -= prod if slot == last else np.moveaxis(prod, -1, slot)
    return out


@lru_cache(maxsize=None)
def _pair_index_arrays(n):
    pairs = wedge_pairs(n)
    ia = np.array([a for a, _ in pairs])
    ib = np.array([b for _, b in pairs])
    ia.setflags(write=False)
    ib.setflags(write=False)
    return ia, ib


@lru_cache(maxsize=None)
def _so_matrices(n) -> np.ndarray:
    """Skew matrices of the wedge basis elements, one per pair.

    The coordinate patterns are the transposes: e_i^e_j sends e_i to e_j, so
    its matrix holds +1 at row j, column i.
    """
    out = _wedge_patterns(n).transpose(0, 2, 1).copy()
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _pform_wedge_maps(n, p) -> np.ndarray:
    """Per wedge pair, the matrix of the action on compact p-form components.

    For L = e_a^e_b with a < b and an increasing index set I:
      one of a, b in I is required, otherwise the form is killed;
      swapping a -> b contributes +(-1)^c, swapping b -> a contributes
      -(-1)^c, where c counts members of I strictly between a and b.
    """
    tuples = increasing_tuples(n, p)
    index = _tuple_index_map(n, p)
    pairs = wedge_pairs(n)
    maps = np.zeros((len(pairs), len(tuples), len(tuples)))
    for which, (a, b) in enumerate(pairs):
        for col, idx in enumerate(tuples):
            members = set(idx)
            has_a = a in members
            has_b = b in members
            if has_a == has_b:
                continue
            between = sum(1 for x in idx if a < x < b)
            if has_a:
                target = tuple(sorted(members - {a} | {b}))
                maps[which, index[target], col] = (-1.0) ** between
            else:
                target = tuple(sorted(members - {b} | {a}))
                maps[which, index[target], col] = -((-1.0) ** between)
    maps.setflags(write=False)
    return maps


@lru_cache(maxsize=None)
def _ad_basis(n) -> np.ndarray:
    """Adjoint action of each basis wedge on wedge coordinates.

    Entry [alpha, :, :] is the matrix of ad(Xi_alpha); it agrees with the
    2-form action matrices because skew matrices act the same way on vectors
    and covectors.
    """
    return _pform_wedge_maps(n, 2).copy()


def ad_matrix(lam: SoElement) -> np.ndarray:
    """Matrix of the action of lam on wedge coordinates."""
    return np.tensordot(lam.comps, _ad_basis(lam.n), axes=1)


def act_on_operator(lam: SoElement, r: CurvatureOperator) -> CurvatureOperator:
    """Derivation action on a symmetric wedge-space operator.

    (L R)(A, B) = -R(L A, B) - R(A, L B), which is the commutator of the
    induced wedge-coordinate matrix with the operator matrix.  The action
    preserves the Bianchi subspace, so the certificate carries over.
    """
    if lam.n != r.n:
        raise ValueError(f"dimension mismatch: {lam.n} vs {r.n}")
    lhat = ad_matrix(lam)
    return CurvatureOperator(r.n, lhat @ r.mat - r.mat @ lhat, bianchi=r.bianchi_certified)


def so_act(lam: SoElement, t):
    """Derivation action of lam on a tensor, preserving its kind."""
    if isinstance(t, CurvatureOperator):
        return act_on_operator(lam, t)
    if lam.n != t.n:
        raise ValueError(f"dimension mismatch: {lam.n} vs {t.n}")
    if isinstance(t, Tensor0k):
        return Tensor0k(_act_array(t.array, lam.matrix()))
    if isinstance(t, Sym2):
        return Sym2(_act_array(t.mat, lam.matrix()))
    if isinstance(t, PForm):
        maps = _pform_wedge_maps(t.n, t.p)
        comps = lam.comps @ np.tensordot(maps, t.comps, axes=([2], [0]))
        return PForm(t.n, t.p, comps)
    if isinstance(t, CurvTensor):
        out = CurvTensor(_act_array(t.array, lam.matrix()))
        if t.bianchi and not out.bianchi:
            raise AssertionError("action failed to preserve the Bianchi identity")
        return out
    raise TypeError(f"unsupported kind {type(t).__name__}")


# -- hat tensors -------------------------------------------------------------

def _block_rows(t) -> np.ndarray:
    """Stack of flattened wedge-basis action blocks, one row per pair."""
    if isinstance(t, PForm):
        maps = _pform_wedge_maps(t.n, t.p)
        return np.tensordot(maps, t.comps, axes=([2], [0]))
    if isinstance(t, CurvatureOperator):
        ad = _ad_basis(t.n)
        blocks = np.einsum("aij,jk->aik", ad, t.mat) - np.einsum(
            "ij,ajk->aik", t.mat, ad
        )
        return blocks.reshape(blocks.shape[0], -1)
    if isinstance(t, Tensor0k):
        arr = t.array
    elif isinstance(t, Sym2):
        arr = t.mat
    elif isinstance(t, CurvTensor):
        arr = t.array
    else:
        raise TypeError(f"unsupported kind {type(t).__name__}")
    ia, ib = _pair_index_arrays(t.n)
    count = ia.size
    out = np.zeros((count,) + arr.shape)
    rng_idx = np.arange(count)
    for slot in range(arr.ndim):
        moved_out = np.moveaxis(out, slot + 1, 1)
        moved_in = np.moveaxis(arr, slot, 0)
        moved_out[rng_idx, ia] -= moved_in[ib]
        moved_out[rng_idx, ib] += moved_in[ia]
    return out.reshape(count, -1)


def _block_from_row(t, row):
    if isinstance(t, PForm):
        return PForm(t.n, t.p, row)
    if isinstance(t, CurvatureOperator):
        return CurvatureOperator(t.n, row.reshape(t.N, t.N), bianchi=t.bianchi_certified)
    if isinstance(t, Tensor0k):
        return Tensor0k(row.reshape(t.array.shape))
    if isinstance(t, Sym2):
        return Sym2(row.reshape(t.mat.shape))
    if isinstance(t, CurvTensor):
        return CurvTensor(row.reshape(t.array.shape))
    raise TypeError(f"unsupported kind {type(t).__name__}")


@dataclass(frozen=True)
class HatTensor:
    """Wedge-valued tensor collecting the action of every basis element.

    blocks[alpha] is Xi_alpha acting on the source; pairing the wedge leg
    with any L recovers the action of L by linearity.
    """

    n: int
    blocks: tuple

    def norm_sq(self) -> float:
        return float(sum(b.norm_sq() for b in self.blocks))

    def pair_with(self, lam: SoElement):
        """g(L, hat(T)( . )) as a tensor of the source kind."""
        if lam.n != self.n:
            raise ValueError(f"dimension mismatch: {lam.n} vs {self.n}")
        template = self.blocks[0]
        if isinstance(template, PForm):
            comps = sum(c * b.comps for c, b in zip(lam.comps, self.blocks))
            return PForm(template.n, template.p, comps)
        if isinstance(template, Sym2):
            return Sym2(sum(c * b.mat for c, b in zip(lam.comps, self.blocks)))
        if isinstance(template, CurvatureOperator):
            return CurvatureOperator(
                template.n, sum(c * b.mat for c, b in zip(lam.comps, self.blocks))
            )
        arr = sum(c * b.array for c, b in zip(lam.comps, self.blocks))
        return type(template)(arr)


def hat(t) -> HatTensor:
    """Materialize every wedge-basis action block of t."""
    rows = _block_rows(t)
    return HatTensor(n=t.n, blocks=tuple(_block_from_row(t, row) for row in rows))


def hat_norm_sq(t) -> float:
    """Sum of squared block norms, without materializing the blocks.

    Block norms follow the source's convention, so p-forms sum over
    increasing indices only.
    """
    rows = _block_rows(t)
    return float(np.sum(rows * rows))


def curvature_term(r: CurvatureOperator, s, t) -> float:
    """The bilinear curvature term <R(hat S), hat T>.

    Equals sum over pairs of R_{ab} <Xi_a S, Xi_b T> in any orthonormal
    wedge basis; S and T must be tensors of the same kind and dimension.
    """
    if type(s) is not type(t):
        raise TypeError(f"kind mismatch: {type(s).__name__} vs {type(t).__name__}")
    if r.n != s.n or s.n != t.n:
        raise ValueError("dimension mismatch")
    rows_s = _block_rows(s)
    rows_t = rows_s if s is t else _block_rows(t)
    gram = rows_s @ rows_t.T
    return float(np.sum(r.mat * gram))


# -- Ricci curvature of a tensor ---------------------------------------------

def _dense_array(t):
    if isinstance(t, Tensor0k):
        return t.array
    if isinstance(t, Sym2):
        return t.mat
    if isinstance(t, CurvTensor):
        return t.array
    if isinstance(t, PForm):
        return t.to_tensor().array
    raise TypeError(f"unsupported kind {type(t).__name__}")


def _rewrap_dense(t, arr):
    if isinstance(t, Tensor0k):
        return Tensor0k(arr)
    if isinstance(t, Sym2):
        return Sym2((arr + arr.T) / 2.0)
    if isinstance(t, CurvTensor):
        return CurvTensor(arr)
    if isinstance(t, PForm):
        from .tensors import _increasing_ravel

        return PForm(t.n, t.p, arr.reshape(-1)[_increasing_ravel(t.n, t.p)])
    raise TypeError(f"unsupported kind {type(t).__name__}")


def ric_of(r: CurvatureOperator, t):
    """Ricci curvature of a tensor under an operator.

    Definitional double sum: slot by slot, the operator image of each wedge
    of a slot vector with a basis vector acts on the tensor and the basis
    vector is substituted back into the slot.  Evaluated pair by pair with no
    algebraic shortcuts (only the pair loop is array-programmed); it is the
    oracle the rest of the machinery is tested against.
    """
    if r.n != t.n:
        raise ValueError(f"dimension mismatch: {r.n} vs {t.n}")
    arr = _dense_array(t)
    n, k = r.n, arr.ndim
    images = np.tensordot(r.mat.T, _so_matrices(n), axes=1)
    dense_needed = bool(np.any(np.count_nonzero(images.reshape(r.N, -1), axis=1) > 2))
    if dense_needed:
        # contiguous slot-last copies, shared by every pair
        moved_flat = [
            np.ascontiguousarray(np.moveaxis(arr, slot, -1)).reshape(-1, n)
            for slot in range(k)
        ]
        moved_shape = [np.moveaxis(arr, slot, -1).shape for slot in range(k)]
    out = np.zeros_like(arr)
    for column, (a, b) in enumerate(wedge_pairs(n)):
        image = images[column]
        if not dense_needed:
            acted = _act_array(arr, image)
        else:
            acted = np.zeros_like(arr)
            for slot in range(k):
                prod = (moved_flat[slot] @ image).reshape(moved_shape[slot])
                acted -= np.moveaxis(prod, -1, slot)
        for slot in range(k):
            pre = (slice(None),) * slot
            out[pre + (a,)] += acted[pre + (b,)]
            out[pre + (b,)] -= acted[pre + (a,)]
    return _rewrap_dense(t, out)


def ric_identity_closed_form(t: Tensor0k) -> Tensor0k:
    """Closed form of the identity-operator Ricci curvature.

    k(n-1) T plus the sum of all slot transpositions of T minus the metric
    times the corresponding contractions.  Agrees exactly with
    ric_of(identity_operator(n), T).
    """
    arr = t.array
    n, k = t.n, t.k
    out = k * (n - 1.0) * arr.copy()
    eye = np.eye(n)
    for i in range(k):
        for j in range(i + 1, k):
            axes = list(range(k))
            axes[i], axes[j] = axes[j], axes[i]
            out += 2.0 * np.transpose(arr, axes)
            traced = np.trace(arr, axis1=i, axis2=j)
            out -= 2.0 * np.moveaxis(np.multiply.outer(traced, eye), (-2, -1), (i, j))
    return Tensor0k(out)
