"""Quasi-relative entropies and the entropies derived from them.

The working formula is the double spectral sum

    S_f(A || B) = sum_{j,k} a_j f(b_k / a_j) |<v_k|u_j>|^2

over eigenpairs (a_j, u_j) of A and (b_k, v_k) of B. Zero eigenvalues are
resolved through the generator's closed-form tail limits; a zero
eigenvalue of B seen by a nonzero eigenvector of A can push the value to
+inf, which is returned as ``math.inf``.

``oracle_quasi_relative_entropy`` evaluates the same quantity through an
independent route, building the dim^2 x dim^2 matrix of the modular-type
superoperator X -> B X A^{-1} and applying f to its spectrum, and exists
so the two paths can be checked against each other.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, SingularState, UnsupportedLimit
from .generators import GeneratorFunction
from .states import EPS_ZERO, DensityMatrix, spectral_decompose

__all__ = [
    "GROUP_TOL",
    "quasi_relative_entropy",
    "oracle_quasi_relative_entropy",
    "f_weighted_sum",
    "f_entropy",
    "f_entropy_hat",
]

# Eigenvalues closer than this are merged into one spectral group so the
# result cannot depend on the eigensolver's basis choice inside a
# degenerate eigenspace.
GROUP_TOL = 1e-12


def _group_slices(vals_desc: np.ndarray) -> list[slice]:
    starts = [0]
    for i in range(1, vals_desc.size):
        if vals_desc[i - 1] - vals_desc[i] > GROUP_TOL:
            starts.append(i)
    starts.append(vals_desc.size)
    return [slice(starts[i], starts[i + 1]) for i in range(len(starts) - 1)]


def _need_weighted_tail(f: GeneratorFunction) -> float:
    w = f.weighted_inf_limit
    if w is None or math.isnan(w):
        raise UnsupportedLimit(f"generator {f.name} supplies no weighted tail limit")
    return w


def _need_zero_limit(f: GeneratorFunction) -> float:
    z = f.limit_at_zero
    if z is None or math.isnan(z):
        raise UnsupportedLimit(f"generator {f.name} supplies no limit at zero")
    return z


def quasi_relative_entropy(a: DensityMatrix, b: DensityMatrix, f: GeneratorFunction) -> float:
    """S_f(a || b) from the spectral data of both states.

    Returns ``math.inf`` when the support configuration forces it (for
    example the kernel of b overlapping the support of a when f diverges
    at zero).
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"states have dimensions {a.dim} and {b.dim}")
    sa = spectral_decompose(a)
    sb = spectral_decompose(b)
    # overlap[k, j] = |<v_k|u_j>|^2
    overlap = np.abs(sb.eigenvectors.conj().T @ sa.eigenvectors) ** 2

    groups_a = _group_slices(sa.eigenvalues)
    groups_b = _group_slices(sb.eigenvalues)
    lam = np.array([float(sa.eigenvalues[g].mean()) for g in groups_a])
    mu = np.array([float(sb.eigenvalues[g].mean()) for g in groups_b])
    # Block-summed overlap weight per (group of b, group of a).
    w = np.empty((len(groups_b), len(groups_a)))
    for kb, gb in enumerate(groups_b):
        for ja, ga in enumerate(groups_a):
            w[kb, ja] = float(overlap[gb, ga].sum())

    total = 0.0
    infinite = False
    for ja in range(lam.size):
        lam_j = lam[ja]
        for kb in range(mu.size):
            weight = w[kb, ja]
            if weight == 0.0:
                continue
            mu_k = mu[kb]
            if lam_j > EPS_ZERO and mu_k > EPS_ZERO:
                total += lam_j * float(f(mu_k / lam_j)) * weight
            elif lam_j <= EPS_ZERO and mu_k > EPS_ZERO:
                tail = _need_weighted_tail(f)
                if tail == 0.0:
                    continue
                if math.isinf(tail):
                    infinite = True
                else:
                    total += mu_k * tail * weight
            elif lam_j > EPS_ZERO and mu_k <= EPS_ZERO:
                zero = _need_zero_limit(f)
                if math.isinf(zero):
                    infinite = True
                else:
                    total += lam_j * zero * weight
            # Both groups in the kernel: no contribution.
    return math.inf if infinite else total


def oracle_quasi_relative_entropy(a: DensityMatrix, b: DensityMatrix, f: GeneratorFunction) -> float:
    """S_f(a || b) through the dim^2 superoperator route.

    Requires both states full rank. Builds the matrix of X -> b X a^{-1}
    in the column-stacked basis, applies f by eigendecomposition and
    takes the trace against a. Intended for small dimensions.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"states have dimensions {a.dim} and {b.dim}")
    d = a.dim
    for name, rho in (("first", a), ("second", b)):
        vals = np.linalg.eigvalsh(rho.matrix)
        if vals.min() <= EPS_ZERO:
            raise SingularState(f"{name} state has eigenvalue {vals.min():.3e}, full rank required")
    am = a.matrix
    a_inv = np.linalg.inv(am)
    # Column-stacked vec: X -> B X A^{-1} has matrix (A^{-1})^T kron B.
    sup = np.kron(a_inv.T, b.matrix)
    sup = (sup + sup.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(sup)
    fsup = (vecs * f(np.maximum(vals, 1e-300))) @ vecs.conj().T
    image = fsup @ am.flatten(order="F")
    # Trace of the un-stacked image: diagonal sits at stride d + 1.
    return float(np.real(image[:: d + 1].sum()))


def f_weighted_sum(values, numerator: float, f: GeneratorFunction) -> float:
    """sum_j v_j f(numerator / v_j) over a probability-like vector.

    Entries at or below EPS_ZERO contribute their limiting value, which
    is 0 exactly when the generator's weighted tail limit is 0; any other
    tail raises UnsupportedLimit since no finite convention applies.
    """
    v = np.asarray(values, dtype=float)
    pos = v > EPS_ZERO
    if not np.all(pos):
        tail = _need_weighted_tail(f)
        if tail != 0.0:
            raise UnsupportedLimit(
                f"generator {f.name} has nonzero weighted tail limit, "
                "cannot evaluate on a vector with zero entries"
            )
    vp = v[pos]
    if vp.size == 0:
        return 0.0
    return float(np.sum(vp * f(numerator / vp)))


def f_entropy(rho: DensityMatrix, f: GeneratorFunction) -> float:
    """Entropy f(1/d) - sum_j p_j f(1 / (d p_j)) over the spectrum of rho.

    Zero on pure states, maximal (= f(1/d)) on the maximally mixed state
    for operator monotone decreasing generators.
    """
    d = rho.dim
    vals = rho.eigenvalues()
    return float(f(1.0 / d)) - f_weighted_sum(vals, 1.0 / d, f)


def f_entropy_hat(rho: DensityMatrix, f: GeneratorFunction) -> float:
    """Entropy -sum_j p_j f(1 / p_j) over the spectrum of rho.

    Zero on pure states, maximal (= -f(d)) on the maximally mixed state
    for operator monotone decreasing generators.
    """
    vals = rho.eigenvalues()
    return -f_weighted_sum(vals, 1.0, f)
