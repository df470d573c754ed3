"""Multiplicative characters of F_q^* and their sums over subsets.

The character of index j sends g^t to e(2*pi*i * j * t / (q-1)) where g is
the field's generator.  Index 0 is the trivial character.  char_eval keeps
the textbook convention at zero (trivial character gives 1 there, every
other character gives 0); all summation routines in this module use the
stricter all-zero convention instead, where the zero element contributes
nothing to any character sum.  Counting code re-adds zero contributions
combinatorially, which is what makes its identities exact.

A full table over all q-1 characters is one discrete Fourier transform of
length M = q-1 of the summed weights laid out in dlog order.  The default
transform is the direct O(M^2) evaluation; set_transform_override installs
a drop-in replacement (fft_transform is a ready-made one) without any API
change for callers.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BadExponent, BadParam
from .field import FieldSpec, add_codes
from .repfn import FqSubset, RepFn, rep_product

_roots_cache: dict[int, np.ndarray] = {}

_transform_override: Callable[[np.ndarray], np.ndarray] | None = None


def _roots(m: int) -> np.ndarray:
    table = _roots_cache.get(m)
    if table is None:
        table = np.exp(2j * np.pi * np.arange(m) / m)
        table.flags.writeable = False
        _roots_cache[m] = table
    return table


def direct_transform(v: np.ndarray) -> np.ndarray:
    """out[j] = sum over t of v[t] * e(2*pi*i*j*t/M), direct O(M^2)."""
    m = len(v)
    roots = _roots(m)
    idx = np.arange(m, dtype=np.int64)
    out = np.empty(m, dtype=np.complex128)
    for j in range(m):
        out[j] = np.dot(v, roots[(j * idx) % m])
    return out


def fft_transform(v: np.ndarray) -> np.ndarray:
    """Fast drop-in for direct_transform (same sign convention)."""
    return np.fft.ifft(np.asarray(v, dtype=np.complex128)) * len(v)


def set_transform_override(fn: Callable[[np.ndarray], np.ndarray] | None) -> None:
    """Install fn as the transform used by every char-sum table, or reset."""
    global _transform_override
    _transform_override = fn


def _transform(v: np.ndarray) -> np.ndarray:
    if _transform_override is not None:
        return _transform_override(v)
    return direct_transform(v)


@dataclass(frozen=True, eq=False)
class CharSumTable:
    """values[j] = character sum for the character of index j, j in [0, q-1)."""

    values: np.ndarray


def char_eval(field: FieldSpec, j: int, x: int, zero_convention: str = "paper") -> complex:
    """Value of the index-j character at x.

    zero_convention picks what happens at x = 0: "paper" returns 1 for the
    trivial character and 0 otherwise; "all_zero" returns 0 for every j.
    """
    m = field.q - 1
    if not 0 <= j < m:
        raise BadExponent(f"character index {j} outside [0, {m})")
    if zero_convention not in ("paper", "all_zero"):
        raise BadParam(f"unknown zero_convention {zero_convention!r}")
    if x == 0:
        if j == 0 and zero_convention == "paper":
            return 1.0 + 0.0j
        return 0.0 + 0.0j
    t = int(field.dlog[x])
    return cmath.exp(2j * cmath.pi * ((j * t) % m) / m)


def _weights_in_dlog_order(field: FieldSpec, weights: np.ndarray) -> np.ndarray:
    """Drop the zero element and lay the rest out as w[t] = weights[g^t]."""
    return np.asarray(weights, dtype=np.float64)[field.exp]


def set_char_sums(field: FieldSpec, a: FqSubset) -> CharSumTable:
    """Table of sums of each character over A, zero excluded from the sum."""
    v = _weights_in_dlog_order(field, a.membership.astype(np.int64))
    return CharSumTable(values=_transform(v))


def repfn_char_sums(field: FieldSpec, r: RepFn, shift: int = 0) -> CharSumTable:
    """Table with entry j = sum over x of r[x] * chi_j(x - shift).

    Equals the transform of the shifted weights s[y] = r[y + shift] laid
    out in dlog order; y = 0 never contributes (all-zero convention).
    """
    if shift == 0:
        s = r.counts
    else:
        perm = add_codes(field, shift, np.arange(field.q, dtype=np.int64))
        s = r.counts[perm]
    return CharSumTable(values=_transform(_weights_in_dlog_order(field, s)))


def shifted_product_char_sums(field: FieldSpec, a: FqSubset, b: FqSubset, lam: int) -> CharSumTable:
    """Entry j = sum over (x,y) in A x B of chi_j(x*y - lam), all-zero at 0."""
    return repfn_char_sums(field, rep_product(field, a, b), shift=lam)
