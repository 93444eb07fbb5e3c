"""Fourier series, integral transforms and Hermite eigenfunctions.

Everything here is deterministic quadrature at desk scale (n = 2, 3).  The
two quadrature families are a tensor midpoint rule on the unit torus, which
is exact for trigonometric polynomials of per-axis degree below the
resolution, and a tensor Gauss-Legendre rule on a centered box for rapidly
decaying integrands.

Integrals over a fundamental domain of an A_n-symmetric integrand are taken
as the torus (or box) integral divided by |A_n|; the domain closure tiles
the space under the group action up to measure zero, so the substitution is
exact.

The integral transform pair is

    forward(f)(lam) = |A_n|^(-1) integral f(x) E_lam(x) dx
    inverse(g)(x)   = |A_n|^(-1) integral g(lam) conj(E_lam(x)) dlam

over the box.  Gaussian-weighted symmetrized Hermite products are its
eigenfunctions with eigenvalues in {1, i, -1, -i}, so applying it four
times is the identity.

One caution, verified numerically in the test suite: with the ``+`` kernel
above, the eigenvalue attached to total Hermite degree ``d`` is ``i**d``.
Residual helpers accept the eigenvalue as an argument; their default is the
conventional printed form ``i**(-d)``, which coincides with ``i**d`` only
for even ``d``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping, Sequence

import numpy as np

from .altgroup import (
    alternating_order,
    enumerate_alternating_group,
    is_canonical_semidominant,
    is_semidominant,
    semidominant_normalize,
    stabilizer_order,
)
from .expcore import alt_exp, alt_exp_batch

SCHEME_MIDPOINT = "midpoint-tensor"
SCHEME_GAUSS = "gauss-legendre-tensor"
DOMAIN_TORUS = "torus"
DOMAIN_FUNDAMENTAL = "fundamental-affine"
DOMAIN_BOX = "box"

MAX_HERMITE_ORDER = 60  # recurrence overflows double precision well past this

FOURIER_EIGENVALUE_CANDIDATES = (1 + 0j, 1j, -1 + 0j, -1j)


def unit_phase(k: int) -> complex:
    """i**k computed exactly (complex ** goes through exp/log and drifts)."""
    return FOURIER_EIGENVALUE_CANDIDATES[k % 4]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor quadrature: per-axis resolution, scheme and target domain."""

    resolution: int
    scheme: str = SCHEME_MIDPOINT
    domain: str = DOMAIN_TORUS
    box_half_width: float = 6.0

    def __post_init__(self) -> None:
        if self.resolution < 2:
            raise ValueError("quadrature resolution must be at least 2")
        if self.scheme not in (SCHEME_MIDPOINT, SCHEME_GAUSS):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.domain not in (DOMAIN_TORUS, DOMAIN_FUNDAMENTAL, DOMAIN_BOX):
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.domain == DOMAIN_BOX and self.box_half_width <= 0:
            raise ValueError("box half-width must be positive")

    def axis_rule(self) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights along one axis."""
        m = self.resolution
        if self.domain in (DOMAIN_TORUS, DOMAIN_FUNDAMENTAL):
            nodes = (np.arange(m) + 0.5) / m
            weights = np.full(m, 1.0 / m)
            return nodes, weights
        half = self.box_half_width
        if self.scheme == SCHEME_GAUSS:
            nodes, weights = np.polynomial.legendre.leggauss(m)
            return half * nodes, half * weights
        nodes = -half + (np.arange(m) + 0.5) * (2 * half / m)
        weights = np.full(m, 2 * half / m)
        return nodes, weights

    def tensor_rule(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Tensor nodes (resolution^n, n) and matching product weights."""
        nodes1, weights1 = self.axis_rule()
        grids = np.meshgrid(*([nodes1] * n), indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=-1)
        wts = np.ones(1)
        for _ in range(n):
            wts = np.outer(wts, weights1).ravel()
        return pts, wts


def torus_quadrature(resolution: int) -> QuadratureSpec:
    return QuadratureSpec(resolution=resolution, scheme=SCHEME_MIDPOINT, domain=DOMAIN_TORUS)


def box_quadrature(resolution: int, half_width: float = 6.0) -> QuadratureSpec:
    return QuadratureSpec(
        resolution=resolution,
        scheme=SCHEME_GAUSS,
        domain=DOMAIN_BOX,
        box_half_width=half_width,
    )


class SymmetricFunction:
    """A callable on R^n declared invariant under even coordinate permutations.

    The declaration is spot-checked at construction on a few random pairs
    (w, x) unless ``check=False``.  Set ``vectorized=True`` when the callable
    accepts an (k, n) array of points and returns k values; scalar callables
    are looped over transparently.
    """

    def __init__(
        self,
        fn: Callable,
        n: int,
        vectorized: bool = False,
        check: bool = True,
        check_tol: float = 1e-8,
        rng: np.random.Generator | None = None,
    ):
        self.fn = fn
        self.n = n
        self.vectorized = vectorized
        if check and n >= 3:  # A_1 and A_2 are trivial, nothing to spot-check
            rng = rng or np.random.default_rng(0)
            table = enumerate_alternating_group(n)
            for _ in range(8):
                x = rng.uniform(-1.5, 1.5, size=n)
                w = table.elements[rng.integers(len(table))]
                fx = self(x)
                fwx = self(np.asarray(w.apply(tuple(x))))
                if abs(fx - fwx) > check_tol * (1.0 + abs(fx)):
                    raise ValueError(
                        f"function is not alternating-symmetric: |f(x)-f(wx)| = {abs(fx - fwx):.3e}"
                    )

    def __call__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            if self.vectorized:
                return complex(np.asarray(self.fn(pts[None, :])).ravel()[0])
            return complex(self.fn(pts))
        if self.vectorized:
            return np.asarray(self.fn(pts), dtype=complex).reshape(pts.shape[0])
        return np.array([complex(self.fn(p)) for p in pts], dtype=complex)

    @classmethod
    def from_exp_series(cls, coeffs: Mapping[tuple, complex], n: int) -> "SymmetricFunction":
        """Band-limited symmetric function sum_m c_m E_m; exact by construction."""

        def fn(points):
            acc = np.zeros(points.shape[0], dtype=complex)
            for m, c in coeffs.items():
                acc += c * alt_exp_batch(m, points)
            return acc

        return cls(fn, n=n, vectorized=True, check=False)


def canonical_integer_weights(n: int, bound: int) -> list[tuple[int, ...]]:
    """Canonical semidominant integer tuples with entries in [-bound, bound]."""
    values = range(-bound, bound + 1)
    return sorted(
        m for m in product(values, repeat=n) if is_canonical_semidominant(m)
    )


def series_coefficient(
    f: SymmetricFunction, m: Sequence[int], quad: QuadratureSpec
) -> complex:
    """Expansion coefficient of f against E_m on the affine fundamental domain.

    Computed as |G_m|^(-1) |A_n|^(-1) times the torus integral of
    f * conj(E_m); the midpoint rule makes this exact once the resolution
    exceeds twice the largest frequency in play.
    """
    m = tuple(int(v) for v in m)
    if not is_semidominant(m):
        raise ValueError(f"series index {m} is not semidominant")
    pts, wts = quad.tensor_rule(f.n)
    kernel = np.conj(alt_exp_batch(m, pts))
    integral = np.sum(wts * f(pts) * kernel)
    return complex(integral / (stabilizer_order(m) * alternating_order(f.n)))


def series_coefficients(
    f: SymmetricFunction, indices: Sequence[Sequence[int]], quad: QuadratureSpec
) -> dict[tuple[int, ...], complex]:
    """Coefficients for a batch of indices, reusing one set of samples."""
    pts, wts = quad.tensor_rule(f.n)
    samples = f(pts)
    order = alternating_order(f.n)
    out: dict[tuple[int, ...], complex] = {}
    for m in indices:
        key = tuple(int(v) for v in m)
        if not is_semidominant(key):
            raise ValueError(f"series index {key} is not semidominant")
        kernel = np.conj(alt_exp_batch(key, pts))
        out[key] = complex(np.sum(wts * samples * kernel) / (stabilizer_order(key) * order))
    return out


def series_partial_sum(coeffs: Mapping[tuple, complex], x: Sequence[float]) -> complex:
    """Truncated expansion sum_m c_m E_m(x)."""
    return complex(sum(c * alt_exp(m, x) for m, c in coeffs.items()))


def plancherel_residual(
    f: SymmetricFunction, cutoff: int, quad: QuadratureSpec
) -> float:
    """|sum_m |G_m| |c_m|^2  -  |A_n|^(-1) * torus integral of |f|^2|.

    The stabilizer-weighted left side is the reading consistent with the
    torus orthogonality relation; exact for f band-limited under the cutoff.
    """
    indices = canonical_integer_weights(f.n, cutoff)
    coeffs = series_coefficients(f, indices, quad)
    weighted = sum(stabilizer_order(m) * abs(c) ** 2 for m, c in coeffs.items())
    pts, wts = quad.tensor_rule(f.n)
    norm = np.sum(wts * np.abs(f(pts)) ** 2) / alternating_order(f.n)
    return float(abs(weighted - norm))


def _require_semidominant(lam: Sequence[float]) -> tuple:
    values = tuple(float(v) for v in lam)
    if is_semidominant(values):
        return values
    warnings.warn(
        f"weight {values} is outside the semidominant cone; normalizing",
        stacklevel=3,
    )
    normalized, _ = semidominant_normalize(values)
    return normalized


def alt_fourier_forward(
    f: SymmetricFunction, lam: Sequence[float], quad: QuadratureSpec
) -> complex:
    """Integral transform |A_n|^(-1) * box integral of f(x) E_lam(x) dx."""
    values = _require_semidominant(lam)
    pts, wts = quad.tensor_rule(f.n)
    kernel = alt_exp_batch(values, pts)
    return complex(np.sum(wts * f(pts) * kernel) / alternating_order(f.n))


def alt_fourier_inverse(
    f_hat: SymmetricFunction, x: Sequence[float], quad: QuadratureSpec
) -> complex:
    """Inverse transform |A_n|^(-1) * box integral of g(lam) conj(E_lam(x)) dlam."""
    pts, wts = quad.tensor_rule(f_hat.n)
    kernel = np.conj(alt_exp_batch(tuple(float(v) for v in x), pts))
    return complex(np.sum(wts * f_hat(pts) * kernel) / alternating_order(f_hat.n))


# ---------------------------------------------------------------------------
# Hermite eigenfunctions
# ---------------------------------------------------------------------------


def hermite_polynomial(m: int, t):
    """Physicists' Hermite polynomial H_m by the three-term recurrence."""
    if not 0 <= m <= MAX_HERMITE_ORDER:
        raise ValueError(f"Hermite order must lie in 0..{MAX_HERMITE_ORDER}, got {m}")
    t = np.asarray(t, dtype=float)
    h_prev = np.ones_like(t)
    if m == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * t
    for k in range(1, m):
        h_prev, h = h, 2.0 * t * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def symmetrized_hermite(m: Sequence[int], lam: Sequence[float]) -> float:
    """sdet of the matrix H_{m_i}(lam_j); invariant under even permutations of lam."""
    m = tuple(int(v) for v in m)
    values = np.asarray(lam, dtype=float)
    if len(m) != values.shape[0]:
        raise ValueError("index and point must have matching dimension")
    table = enumerate_alternating_group(len(m))
    rows = np.array([hermite_polynomial(mi, values) for mi in m])
    total = 0.0
    cols = np.arange(len(m))
    for idx in table.image_array():
        total += float(np.prod(rows[cols, idx]))
    return total


def symmetrized_hermite_batch(m: Sequence[int], points) -> np.ndarray:
    """Symmetrized Hermite values over rows of ``points``."""
    m = tuple(int(v) for v in m)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n = len(m)
    table = enumerate_alternating_group(n)
    rows = np.stack([hermite_polynomial(mi, pts) for mi in m])  # (n, k, n)
    total = np.zeros(pts.shape[0])
    axis = np.arange(n)
    for idx in table.image_array():
        total += np.prod(rows[axis, :, idx], axis=0)
    return total


def hermite_gaussian(m: Sequence[int], points) -> np.ndarray:
    """Eigenfunction candidate exp(-pi |x|^2) * H_m(sqrt(2 pi) x), symmetrized."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    gauss = np.exp(-np.pi * np.sum(pts**2, axis=1))
    return gauss * symmetrized_hermite_batch(m, np.sqrt(2 * np.pi) * pts)


def hermite_gaussian_function(m: Sequence[int]) -> SymmetricFunction:
    n = len(tuple(m))
    return SymmetricFunction(
        lambda pts: hermite_gaussian(m, pts), n=n, vectorized=True, check=False
    )


def hermite_fourier_residual_1d(
    m: int,
    x: float,
    *,
    num_nodes: int = 200,
    half_width: float = 6.0,
    eigenvalue: complex | None = None,
) -> float:
    """Residual of the one-dimensional Gaussian-Hermite transform identity.

    Compares the quadrature value of
    integral exp(2*pi*i p x) exp(-pi p^2) H_m(sqrt(2 pi) p) dp
    against eigenvalue * exp(-pi x^2) H_m(sqrt(2 pi) x).  The default
    eigenvalue is the printed convention i**(-m); the value the + kernel
    actually produces is i**m (they differ for odd m).
    """
    nodes, weights = np.polynomial.legendre.leggauss(num_nodes)
    p = half_width * nodes
    w = half_width * weights
    lhs = np.sum(
        w
        * np.exp(2j * np.pi * p * x)
        * np.exp(-np.pi * p**2)
        * hermite_polynomial(m, np.sqrt(2 * np.pi) * p)
    )
    lam = unit_phase(-m) if eigenvalue is None else eigenvalue
    rhs = lam * np.exp(-np.pi * x**2) * hermite_polynomial(m, np.sqrt(2 * np.pi) * x)
    return float(abs(lhs - rhs))


def hermite_eigenfunction_residual(
    m: Sequence[int],
    lam: Sequence[float],
    quad: QuadratureSpec,
    *,
    eigenvalue: complex | None = None,
) -> float:
    """Residual of the transform eigen-relation at one weight.

    Compares forward(exp(-pi|x|^2) H_m(sqrt(2 pi) x)) at lam against
    eigenvalue * exp(-pi|lam|^2) H_m(sqrt(2 pi) lam).  Default eigenvalue is
    the printed i**(-|m|); the + kernel produces i**(+|m|).
    """
    m = tuple(int(v) for v in m)
    degree = sum(m)
    lhs = alt_fourier_forward(hermite_gaussian_function(m), lam, quad)
    lam_arr = np.asarray(lam, dtype=float)
    base = np.exp(-np.pi * np.sum(lam_arr**2)) * symmetrized_hermite(
        m, np.sqrt(2 * np.pi) * lam_arr
    )
    ev = 1j ** (-degree) if eigenvalue is None else eigenvalue
    return float(abs(lhs - ev * base))


FOURIER_EIGENVALUE_CANDIDATES = (1 + 0j, 1j, -1 + 0j, -1j)


def recovered_hermite_eigenvalue(
    m: Sequence[int], lam: Sequence[float], quad: QuadratureSpec
) -> complex:
    """The candidate from {1, i, -1, -i} minimizing the eigen-relation residual."""
    residuals = [
        hermite_eigenfunction_residual(m, lam, quad, eigenvalue=c)
        for c in FOURIER_EIGENVALUE_CANDIDATES
    ]
    return FOURIER_EIGENVALUE_CANDIDATES[int(np.argmin(residuals))]


def fourier_transform_on_grid(values: np.ndarray, quad: QuadratureSpec, n: int) -> np.ndarray:
    """Apply the integral transform to samples on the tensor quadrature grid.

    Input and output are (M, ..., M) tensors over the same per-axis nodes, so
    the transform can be iterated.  Each group element contributes a
    separable kernel, contracted axis by axis; supported for n <= 3.
    """
    nodes, weights = quad.axis_rule()
    m = nodes.shape[0]
    g = np.asarray(values, dtype=complex).reshape((m,) * n)
    kernel = np.exp(2j * np.pi * np.outer(nodes, nodes)) * weights  # K[a, b] w_b
    table = enumerate_alternating_group(n)
    acc = np.zeros_like(g)
    for w in table:
        perm_axes = [img - 1 for img in w.inverse().images]
        h = np.transpose(g, axes=perm_axes)
        if n == 1:
            acc += kernel @ h
        elif n == 2:
            acc += kernel @ h @ kernel.T
        elif n == 3:
            acc += np.einsum("ai,bj,ck,ijk->abc", kernel, kernel, kernel, h)
        else:
            raise ValueError("grid transform supported for n <= 3")
    return acc / alternating_order(n)
