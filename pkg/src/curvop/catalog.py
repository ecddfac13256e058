"""Exact constructors for the catalog of operators, forms, and extremal pairs.

Every numeric that a constructor advertises (hat norms, curvature terms,
spectra) is re-derived through the action and operator modules by the test
suites; nothing is hard-coded as a return value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .action import SoElement, so_act, wedge_element
from .operators import CurvatureOperator, wedge_count
from .tensors import (
    PForm,
    Sym2,
    _tuple_index_map,
    check_dimension,
    increasing_tuples,
    wedge_index,
    wedge_pairs,
)


@dataclass(frozen=True)
class SingerThorpeBasis:
    """Orthonormal basis of wedge space over R^4 split into a self-dual and
    an anti-self-dual triple built from 1/sqrt(2) combinations."""

    elements: tuple

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


def singer_thorpe_basis() -> SingerThorpeBasis:
    n = 4
    s = 1.0 / np.sqrt(2.0)
    e12 = wedge_index(n, 0, 1)
    e13 = wedge_index(n, 0, 2)
    e14 = wedge_index(n, 0, 3)
    e23 = wedge_index(n, 1, 2)
    e24 = wedge_index(n, 1, 3)
    e34 = wedge_index(n, 2, 3)
    recipes = (
        ((e12, 1.0), (e34, 1.0)),
        ((e13, 1.0), (e24, -1.0)),
        ((e14, 1.0), (e23, 1.0)),
        ((e12, 1.0), (e34, -1.0)),
        ((e13, 1.0), (e24, 1.0)),
        ((e14, 1.0), (e23, -1.0)),
    )
    elements = []
    for recipe in recipes:
        comps = np.zeros(wedge_count(n))
        for idx, sign in recipe:
            comps[idx] = sign * s
        elements.append(SoElement(n, comps))
    return SingerThorpeBasis(elements=tuple(elements))


def singer_thorpe_op(lams):
    """Operator diagonal in the Singer-Thorpe basis with the given six
    eigenvalues (first three on the self-dual triple).

    Satisfies the first Bianchi identity exactly when the self-dual
    eigenvalues and the anti-self-dual eigenvalues have equal sums; the
    certificate is computed by alternation, not assumed.
    """
    lams = [float(x) for x in lams]
    if len(lams) != 6:
        raise ValueError(f"expected six eigenvalues, got {len(lams)}")
    basis = singer_thorpe_basis()
    mat = np.zeros((6, 6))
    for lam, xi in zip(lams, basis):
        mat += lam * np.outer(xi.comps, xi.comps)
    op = CurvatureOperator(4, mat)
    op.certify_bianchi()
    return op, basis


def cp2_op() -> CurvatureOperator:
    """Curvature operator of the complex projective plane (Fubini-Study
    normalization): Singer-Thorpe eigenvalues (0, 0, 6, 2, 2, 2)."""
    op, _ = singer_thorpe_op((0.0, 0.0, 6.0, 2.0, 2.0, 2.0))
    return op


def sphere_product_op(p, n) -> CurvatureOperator:
    """Curvature operator of the product of a unit p-sphere with flat space.

    Wedges inside the sphere block are fixed, everything else is killed.
    """
    n = check_dimension(n)
    p = int(p)
    if not 2 <= p <= n:
        raise ValueError(f"sphere dimension must be in 2..{n}, got {p}")
    diag = np.zeros(wedge_count(n))
    for which, (i, j) in enumerate(wedge_pairs(n)):
        if j < p:
            diag[which] = 1.0
    op = CurvatureOperator(n, np.diag(diag))
    op.certify_bianchi()
    return op


def product_of_spheres_op(k, n) -> CurvatureOperator:
    """Curvature operator of k unit 2-spheres times flat space.

    Eigenvectors e_{2i}^e_{2i+1} with eigenvalue one, kernel otherwise.
    """
    n = check_dimension(n)
    k = int(k)
    if k < 1 or 2 * k > n:
        raise ValueError(f"need 1 <= k and 2k <= n, got k={k}, n={n}")
    diag = np.zeros(wedge_count(n))
    for i in range(k):
        diag[wedge_index(n, 2 * i, 2 * i + 1)] = 1.0
    op = CurvatureOperator(n, np.diag(diag))
    op.certify_bianchi()
    return op


def negative_2form_term_op(n, lam):
    """An (n-1)-nonnegative operator paired with a 2-form on which its
    curvature term is negative.

    The Singer-Thorpe triple of the first four coordinates takes eigenvalues
    (-(n-3) lam, -(n-3) lam, 2n lam); every remaining direction takes 2 lam.
    The returned form is e^1^e^4 + e^2^e^3 and the term is -4 lam |w|^2.
    """
    n = check_dimension(n)
    lam = float(lam)
    if n < 4:
        raise ValueError(f"dimension must be at least 4, got {n}")
    if lam <= 0:
        raise ValueError(f"the scale must be positive, got {lam}")
    count = wedge_count(n)
    basis4 = singer_thorpe_basis()
    embedded = []
    for xi in basis4.elements[:3]:
        comps = np.zeros(count)
        for c, (i, j) in zip(xi.comps, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))):
            comps[wedge_index(n, i, j)] = c
        embedded.append(comps)
    mat = 2.0 * lam * np.eye(count)
    for weight, comps in zip((-(n - 3.0), -(n - 3.0), 2.0 * n), embedded):
        mat += (weight * lam - 2.0 * lam) * np.outer(comps, comps)
    op = CurvatureOperator(n, mat)
    op.certify_bianchi()
    form = PForm.zero(n, 2)
    comps = np.array(form.comps)
    comps[wedge_index(n, 0, 3)] = 1.0
    comps[wedge_index(n, 1, 2)] = 1.0
    return op, PForm(n, 2, comps)


def extremal_pform(p):
    """The sharp p-form pair on R^{2p} for the rotation sum L.

    Builds the first form by propagating the wedge-basis groups reached from
    e^1^e^3^...^e^{2p-1} under L, alternating group signs, then defines the
    partner so that so_act(L, w1) = -p w2 holds exactly (and then
    so_act(L, w2) = p w1 follows).  Returns (w1, w2, L).
    """
    p = int(p)
    if p < 1:
        raise ValueError(f"form degree must be at least 1, got {p}")
    n = check_dimension(2 * p)
    comps_l = np.zeros(wedge_count(n))
    for i in range(p):
        comps_l[wedge_index(n, 2 * i, 2 * i + 1)] = 1.0
    lam = SoElement(n, comps_l)

    start = tuple(range(0, n, 2))
    groups = [{start: 1.0}]
    seen = {start}
    index_map = _tuple_index_map(n, p)
    tuples = increasing_tuples(n, p)
    while True:
        comps = np.zeros(len(tuples))
        for idx, sign in groups[-1].items():
            comps[index_map[idx]] = sign
        image = so_act(lam, PForm(n, p, comps))
        fresh = {}
        for pos, value in enumerate(image.comps):
            if value == 0.0 or tuples[pos] in seen:
                continue
            fresh[tuples[pos]] = 1.0 if value > 0 else -1.0
        if not fresh:
            break
        seen.update(fresh)
        groups.append(fresh)

    w1 = np.zeros(len(tuples))
    for k in range(0, len(groups), 2):
        group_sign = (-1.0) ** (k // 2)
        for idx, sign in groups[k].items():
            w1[index_map[idx]] = group_sign * sign
    omega1 = PForm(n, p, w1)
    omega2 = PForm(n, p, -so_act(lam, omega1).comps / p)
    return omega1, omega2, lam


@dataclass(frozen=True)
class ExtremalPair:
    """A tensor and rotation achieving equality in its action estimate."""

    name: str
    tensor: object
    element: SoElement


def small_extremals():
    """The sharp symmetric-tensor and 2-form pairs on R^4."""
    n = 4
    h = np.zeros((n, n))
    h[0, 0] = 1.0
    h[1, 1] = -1.0
    sym_pair = ExtremalPair("sym2", Sym2(h), wedge_element(n, 0, 1))
    comps = np.zeros(wedge_count(n))
    comps[wedge_index(n, 0, 2)] = 1.0
    comps[wedge_index(n, 1, 3)] = -1.0
    form = PForm(n, 2, comps)
    l_comps = np.zeros(wedge_count(n))
    l_comps[wedge_index(n, 0, 1)] = 1.0
    l_comps[wedge_index(n, 2, 3)] = 1.0
    form_pair = ExtremalPair("two-form", form, SoElement(n, l_comps))
    return (sym_pair, form_pair)


def negative_sym2_term_op(n, K, K1n):
    """Operator diagonal in the decomposable wedge basis with one negative
    sectional curvature, paired with the symmetric tensor diag(-1, 0, .., 1).

    The planes through the first and last coordinates carry curvature K > 0
    except the (first, last) plane which carries K1n < 0; interior planes
    also carry K (their value never reaches the term).  Decomposable
    eigenbases satisfy the first Bianchi identity automatically.
    """
    n = check_dimension(n)
    K = float(K)
    K1n = float(K1n)
    if n < 3:
        raise ValueError(f"dimension must be at least 3, got {n}")
    if K <= 0:
        raise ValueError(f"K must be positive, got {K}")
    if K1n >= 0:
        raise ValueError(f"K1n must be negative, got {K1n}")
    diag = np.full(wedge_count(n), K)
    diag[wedge_index(n, 0, n - 1)] = K1n
    op = CurvatureOperator(n, np.diag(diag))
    op.certify_bianchi()
    h = np.zeros((n, n))
    h[0, 0] = -1.0
    h[n - 1, n - 1] = 1.0
    return op, Sym2(h)
