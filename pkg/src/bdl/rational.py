"""Rational building blocks: the two-point function g, set products, the
ordered pair products Delta / Delta', and elementary symmetric polynomials.

All functions are pure and operate on plain complex scalars or sequences of
them; ``ParamSet`` is a thin immutable wrapper that adds the complement-subset
and distinctness queries used by the higher modules.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

import numpy as np

from .errors import PoleError

ComplexLike = Union[complex, float, int]


def _vals(values) -> np.ndarray:
    """Coerce a ParamSet or any sequence into a 1-d complex array."""
    if isinstance(values, ParamSet):
        return values.array
    return np.asarray(list(values), dtype=complex)


def separation_tol(u: ComplexLike, v: ComplexLike) -> float:
    """Distance below which u and v count as coincident (relative, floor 1)."""
    return 1e-9 * max(1.0, abs(u), abs(v))


def g(c: complex, u: ComplexLike, v: ComplexLike) -> complex:
    """g(u, v) = c / (u - v); raises PoleError near u = v."""
    if abs(u - v) < separation_tol(u, v):
        raise PoleError(f"g pole: |u - v| = {abs(u - v):.3e} below tolerance")
    return c / (u - v)


def g_prod(c: complex, u: ComplexLike, values) -> complex:
    """Product of g(u, v_i) over the set; the empty set gives 1."""
    out = 1.0 + 0.0j
    for v in _vals(values):
        out *= g(c, u, v)
    return out


def delta(c: complex, values) -> complex:
    """Product of g(v_j, v_k) over ordered pairs j > k; empty/singleton -> 1."""
    arr = _vals(values)
    out = 1.0 + 0.0j
    for j in range(len(arr)):
        for k in range(j):
            out *= g(c, arr[j], arr[k])
    return out


def delta_prime(c: complex, values) -> complex:
    """Product of g(v_j, v_k) over ordered pairs j < k; empty/singleton -> 1."""
    arr = _vals(values)
    out = 1.0 + 0.0j
    for j in range(len(arr)):
        for k in range(j + 1, len(arr)):
            out *= g(c, arr[j], arr[k])
    return out


def esp_all(values) -> np.ndarray:
    """All elementary symmetric polynomials sigma_0 .. sigma_n of the set.

    Built by incrementally multiplying out prod_i (t + v_i) and reading off
    coefficients, which reproduces the defining recurrence exactly and avoids
    any numerical differentiation.
    """
    arr = _vals(values)
    sig = np.zeros(len(arr) + 1, dtype=complex)
    sig[0] = 1.0
    for v in arr:
        sig[1:] = sig[1:] + v * sig[:-1]
    return sig


def esp(p: int, values) -> complex:
    """sigma_p of the set; 0 outside 0 <= p <= n, sigma_0 = 1."""
    arr = _vals(values)
    if p < 0 or p > len(arr):
        return 0.0 + 0.0j
    return complex(esp_all(arr)[p])


def esp_split(p: int, values, j: int) -> tuple[complex, complex]:
    """Split sigma_p off element j (0-based): returns (first, second) with

        sigma_p(set) = v_j * first + second,

    where first = sigma_{p-1}(set \\ v_j) is also the partial derivative of
    sigma_p with respect to v_j, and second = sigma_p(set \\ v_j).
    """
    arr = _vals(values)
    if not 0 <= j < len(arr):
        raise IndexError(f"element index {j} out of range for set of size {len(arr)}")
    rest = np.delete(arr, j)
    return esp(p - 1, rest), esp(p, rest)


@dataclass(frozen=True)
class ParamSet:
    """Ordered set of complex spectral parameters with complement access."""

    values: tuple[complex, ...]

    def __init__(self, values: Iterable[ComplexLike]):
        object.__setattr__(self, "values", tuple(complex(v) for v in values))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=complex)

    def without(self, i: int) -> "ParamSet":
        """Complement subset: element i removed, order of the rest preserved."""
        if not 0 <= i < len(self.values):
            raise IndexError(f"element index {i} out of range for set of size {len(self.values)}")
        return ParamSet(self.values[:i] + self.values[i + 1:])

    def pairwise_distinct(self, tol: float | None = None) -> bool:
        """True when every pair is separated by more than the tolerance."""
        for a in range(len(self.values)):
            for b in range(a):
                u, v = self.values[a], self.values[b]
                t = separation_tol(u, v) if tol is None else tol
                if abs(u - v) <= t:
                    return False
        return True

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[complex]:
        return iter(self.values)

    def __getitem__(self, i: int) -> complex:
        return self.values[i]


def require_distinct(values, what: str = "parameters", tol: float | None = None) -> None:
    """Raise PoleError unless all values are pairwise separated."""
    arr = _vals(values)
    for a in range(len(arr)):
        for b in range(a):
            t = separation_tol(arr[a], arr[b]) if tol is None else tol
            if abs(arr[a] - arr[b]) <= t:
                raise PoleError(f"coincident {what}: elements {b} and {a} separated by {abs(arr[a]-arr[b]):.3e}")
