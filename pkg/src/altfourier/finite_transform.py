"""Exact finite Fourier transforms on the alternating-symmetric grid.

The grid F_N = {1/N, 2/N, ..., 1} is tensored to F_N^n; its canonical
semidominant subset (one point per A_n-orbit, stored by integer numerator)
carries the transform.  The normalized basis functions

    e_m(s)   = N^(-1/2) exp(2*pi*i m s)
    Et_m(s)  = |A_n|^(-1/2) sdet(e_{m_i}(s_j)) = |A_n|^(-1/2) N^(-n/2) E_m(s)

are orthogonal under the stabilizer-weighted inner product
|A_n| * sum_s |G_s|^(-1) f(s) conj(g(s)), with squared norm |G_m|.  Forward
and inverse are exact mutual inverses because index set and grid subset are
in bijection (s = m/N).

Sample fields and coefficient maps serialize to JSON
({"n":..., "N":..., "entries":[{"key":[ints], "re":..., "im":...}]}) and to
CSV with columns key_1..key_n, re, im.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping, Sequence

import numpy as np

from .altgroup import (
    affine_reduce,
    alternating_order,
    enumerate_alternating_group,
    is_canonical_semidominant,
    stabilizer_order,
)

FULL_GRID_GUARD = 2_000_000  # N^n ceiling for materializing the whole grid


def canonical_index_tuples(n: int, N: int) -> tuple[tuple[int, ...], ...]:
    """Canonical semidominant integer tuples with entries in 1..N, sorted."""
    found = [
        m for m in product(range(1, N + 1), repeat=n) if is_canonical_semidominant(m)
    ]
    return tuple(sorted(found))


class GridSpec:
    """Discretization of the torus at density N in dimension n.

    Holds the canonical semidominant grid subset (as integer numerators over
    N), the stabilizer order of each point, and the matching integer index
    set for coefficients.
    """

    def __init__(self, n: int, N: int):
        if n < 1:
            raise ValueError("dimension must be at least 1")
        if N < 1:
            raise ValueError("grid density must be at least 1")
        if N**n > FULL_GRID_GUARD:
            raise ValueError(
                f"grid would hold N^n = {N**n} points, over the {FULL_GRID_GUARD} guard"
            )
        self.n = n
        self.N = N
        self.canonical = canonical_index_tuples(n, N)
        self.stabilizers = {m: stabilizer_order(m) for m in self.canonical}
        self._position = {m: i for i, m in enumerate(self.canonical)}
        self._basis: np.ndarray | None = None

    def __repr__(self) -> str:
        return f"GridSpec(n={self.n}, N={self.N}, points={len(self.canonical)})"

    @property
    def size(self) -> int:
        return len(self.canonical)

    def semidominant_points(self) -> np.ndarray:
        """Canonical grid points as fractions, shape (size, n)."""
        return np.asarray(self.canonical, dtype=float) / self.N

    def full_points(self) -> np.ndarray:
        """Every point of F_N^n, shape (N^n, n)."""
        grid = np.asarray(
            list(product(range(1, self.N + 1), repeat=self.n)), dtype=float
        )
        return grid / self.N

    def orbit_weights(self) -> np.ndarray:
        """|A_n| / |G_s| per canonical point; sums to N^n."""
        order = alternating_order(self.n)
        return np.array([order / self.stabilizers[m] for m in self.canonical])

    def position(self, key: tuple[int, ...]) -> int:
        return self._position[key]

    def basis_matrix(self) -> np.ndarray:
        """Matrix B with B[i, j] = Et_{m_i}(s_j) over the canonical sets."""
        if self._basis is None:
            m_arr = np.asarray(self.canonical, dtype=float)
            s_arr = self.semidominant_points()
            table = enumerate_alternating_group(self.n)
            acc = np.zeros((self.size, self.size), dtype=complex)
            for idx in table.image_array():
                acc += np.exp(2j * np.pi * (m_arr @ s_arr[:, idx].T))
            scale = alternating_order(self.n) ** -0.5 * self.N ** (-self.n / 2)
            self._basis = scale * acc
        return self._basis


@dataclass(frozen=True)
class SampleField:
    """Complex samples keyed by grid-point numerators (s = key / N)."""

    n: int
    N: int
    values: Mapping[tuple[int, ...], complex]

    @classmethod
    def from_callable(cls, grid: GridSpec, fn: Callable) -> "SampleField":
        values = {m: complex(fn(np.asarray(m, dtype=float) / grid.N)) for m in grid.canonical}
        return cls(n=grid.n, N=grid.N, values=values)

    @classmethod
    def from_vector(cls, grid: GridSpec, vec: Sequence[complex]) -> "SampleField":
        return cls(
            n=grid.n,
            N=grid.N,
            values={m: complex(v) for m, v in zip(grid.canonical, vec)},
        )

    def vector(self, grid: GridSpec) -> np.ndarray:
        _require_exact_keys(self.values, grid, "sample")
        return np.array([self.values[m] for m in grid.canonical])


@dataclass(frozen=True)
class CoefficientMap:
    """Complex coefficients keyed by canonical integer weight tuples."""

    n: int
    N: int
    values: Mapping[tuple[int, ...], complex]

    @classmethod
    def from_vector(cls, grid: GridSpec, vec: Sequence[complex]) -> "CoefficientMap":
        return cls(
            n=grid.n,
            N=grid.N,
            values={m: complex(v) for m, v in zip(grid.canonical, vec)},
        )

    def vector(self, grid: GridSpec) -> np.ndarray:
        _require_exact_keys(self.values, grid, "coefficient")
        return np.array([self.values[m] for m in grid.canonical])


def _require_exact_keys(values: Mapping, grid: GridSpec, kind: str) -> None:
    keys = set(values.keys())
    expected = set(grid.canonical)
    missing = sorted(expected - keys)
    extra = sorted(keys - expected)
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"missing keys: {missing[:8]}{'...' if len(missing) > 8 else ''}")
        if extra:
            parts.append(f"off-grid keys: {extra[:8]}{'...' if len(extra) > 8 else ''}")
        raise KeyError(f"{kind} map does not match the n={grid.n}, N={grid.N} grid; " + "; ".join(parts))


def discrete_exponential(m: int, s: float, N: int) -> complex:
    """One-dimensional kernel N^(-1/2) exp(2*pi*i m s) on the grid F_N."""
    if not 1 <= m <= N:
        raise ValueError(f"index m must lie in 1..{N}, got {m}")
    k = round(s * N)
    if not math.isclose(s, k / N, abs_tol=1e-12) or not 1 <= k <= N:
        raise ValueError(f"s={s!r} is not a point of F_{N} (within 1e-12)")
    return complex(N**-0.5 * np.exp(2j * np.pi * m * s))


def eval_discrete_E(m: Sequence[int], s: Sequence[float], grid: GridSpec) -> complex:
    """Normalized alternating basis function Et_m(s) on (or off) the grid."""
    m = tuple(int(v) for v in m)
    if len(m) != grid.n or len(s) != grid.n:
        raise ValueError(f"expected length-{grid.n} index and point")
    if any(not 1 <= v <= grid.N for v in m):
        raise ValueError(f"index {m} out of range 1..{grid.N}")
    pts = np.asarray(s, dtype=float)
    if np.any(pts < 0) or np.any(pts > 1 + 1e-12):
        raise ValueError(f"point {tuple(s)} lies outside the closed torus cell")
    table = enumerate_alternating_group(grid.n)
    m_arr = np.asarray(m, dtype=float)
    total = sum(np.exp(2j * np.pi * (m_arr @ pts[idx])) for idx in table.image_array())
    scale = alternating_order(grid.n) ** -0.5 * grid.N ** (-grid.n / 2)
    return complex(scale * total)


def weighted_inner_product(f: SampleField, g: SampleField, grid: GridSpec) -> complex:
    """|A_n| * sum over canonical s of |G_s|^(-1) f(s) conj(g(s))."""
    if (f.n, f.N) != (grid.n, grid.N) or (g.n, g.N) != (grid.n, grid.N):
        raise ValueError("sample fields and grid disagree on (n, N)")
    fv = f.vector(grid)
    gv = g.vector(grid)
    inv_stab = 1.0 / np.array([grid.stabilizers[m] for m in grid.canonical])
    return complex(alternating_order(grid.n) * np.sum(inv_stab * fv * np.conj(gv)))


def forward(f: SampleField, grid: GridSpec) -> CoefficientMap:
    """Coefficients a_m = |A_n| |G_m|^(-1) sum_s |G_s|^(-1) f(s) conj(Et_m(s))."""
    if (f.n, f.N) != (grid.n, grid.N):
        raise ValueError("sample field and grid disagree on (n, N)")
    vec = f.vector(grid)
    inv_stab = 1.0 / np.array([grid.stabilizers[m] for m in grid.canonical])
    basis = grid.basis_matrix()
    coeffs = alternating_order(grid.n) * inv_stab * (np.conj(basis) @ (inv_stab * vec))
    return CoefficientMap.from_vector(grid, coeffs)


def inverse(a: CoefficientMap, grid: GridSpec) -> SampleField:
    """Samples f(s) = sum_m a_m Et_m(s) at every canonical grid point."""
    if (a.n, a.N) != (grid.n, grid.N):
        raise ValueError("coefficient map and grid disagree on (n, N)")
    vec = a.vector(grid)
    samples = grid.basis_matrix().T @ vec
    return SampleField.from_vector(grid, samples)


def interpolate(a: CoefficientMap, x: Sequence[float]) -> complex:
    """Continuous extension sum_m a_m Et_m(x) of a coefficient expansion.

    Points outside the closed affine fundamental domain are reduced into it
    first; the basis is invariant under that reduction, so the value is the
    same as plugging x into the formula directly.
    """
    if len(x) != a.n:
        raise ValueError(f"expected a point of dimension {a.n}")
    x0, _, _ = affine_reduce(x)
    pts = np.asarray(x0, dtype=float)
    keys = sorted(a.values.keys())
    m_arr = np.asarray(keys, dtype=float)
    coeff = np.array([a.values[k] for k in keys])
    table = enumerate_alternating_group(a.n)
    acc = np.zeros(len(keys), dtype=complex)
    for idx in table.image_array():
        acc += np.exp(2j * np.pi * (m_arr @ pts[idx]))
    scale = alternating_order(a.n) ** -0.5 * a.N ** (-a.n / 2)
    return complex(scale * np.sum(coeff * acc))


# ---------------------------------------------------------------------------
# Serialization (shared by sample fields and coefficient maps)
# ---------------------------------------------------------------------------


def to_json_payload(obj: SampleField | CoefficientMap) -> dict:
    entries = [
        {"key": list(key), "re": float(val.real), "im": float(val.imag)}
        for key, val in sorted(obj.values.items())
    ]
    return {"n": obj.n, "N": obj.N, "entries": entries}


def write_json(obj: SampleField | CoefficientMap, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(to_json_payload(obj), handle, indent=1)
        handle.write("\n")


def parse_json_payload(payload: dict) -> tuple[int, int, dict]:
    try:
        n = int(payload["n"])
        N = int(payload["N"])
        raw = payload["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed payload: expected n, N and entries ({exc})") from exc
    values: dict[tuple[int, ...], complex] = {}
    for pos, entry in enumerate(raw):
        try:
            key = tuple(int(v) for v in entry["key"])
            values[key] = complex(float(entry["re"]), float(entry["im"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed entry #{pos}: {exc}") from exc
        if len(key) != n:
            raise ValueError(f"malformed entry #{pos}: key {key} is not length {n}")
    return n, N, values


def read_json(path) -> tuple[int, int, dict]:
    with open(path, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    return parse_json_payload(payload)


def write_csv(obj: SampleField | CoefficientMap, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([f"key_{i}" for i in range(1, obj.n + 1)] + ["re", "im"])
        for key, val in sorted(obj.values.items()):
            writer.writerow([*key, repr(float(val.real)), repr(float(val.imag))])


def read_csv(path) -> tuple[int, None, dict]:
    """CSV carries no N; callers supply it out of band."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError("line 1: empty CSV file") from None
        key_cols = [c for c in header if c.startswith("key_")]
        n = len(key_cols)
        if n == 0 or header[: n + 2] != [*key_cols, "re", "im"]:
            raise ValueError("line 1: expected header key_1..key_n, re, im")
        values: dict[tuple[int, ...], complex] = {}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != n + 2:
                raise ValueError(f"line {lineno}: expected {n + 2} columns, got {len(row)}")
            try:
                key = tuple(int(v) for v in row[:n])
                values[key] = complex(float(row[n]), float(row[n + 1]))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from exc
    return n, None, values
