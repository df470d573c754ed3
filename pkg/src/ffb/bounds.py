"""Extremal character sums and the inequalities they are known to satisfy.

W is the largest modulus over nontrivial characters of the double sum of
chi(a*b - lam) over A x B; V is the analogue with chi(a + b).  Both obey
the square-root bound sqrt(q * #A * #B) with constant 1, which this
module treats as a hard invariant: a failed check is a build-rejecting
event, not a report line.  The Cauchy error check bounds the character
route's residual term by W * sqrt(#C* * #D*) the same way.  The higher
moment bound and the solvability threshold are report-style: they carry
observed ratios and never reject on their own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .characters import repfn_char_sums, shifted_product_char_sums
from .counters import count_bilinear, count_bilinear_charform
from .errors import LambdaZero, NoNontrivialCharacter
from .field import FieldSpec
from .repfn import FqSubset, rep_sum

# Absolute slack for comparisons between float maxima.
SLACK = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """One measured quantity against one bound.

    w_or_v is the measured side, bound_value the bound side (None when the
    call only measures), ratio their quotient, holds the comparison
    outcome, strict whether it held strictly.  argmax_j names the extremal
    character where one was searched, r echoes the moment parameter, and
    empirical_delta is the observed main-to-error exponent gap.
    """

    w_or_v: float
    bound_value: float | None = None
    ratio: float | None = None
    holds: bool | None = None
    strict: bool | None = None
    argmax_j: int | None = None
    r: int | None = None
    empirical_delta: float | None = None


def _require_nontrivial(field: FieldSpec) -> None:
    if field.q < 3:
        raise NoNontrivialCharacter(f"q = {field.q} has only the trivial character")


def _max_nontrivial(values: np.ndarray) -> tuple[float, int]:
    mods = np.abs(values[1:])
    j = int(np.argmax(mods)) + 1
    return float(mods[j - 1]), j


def _ratio(measured: float, bound: float) -> float:
    if bound > 0.0:
        return measured / bound
    return 0.0 if measured == 0.0 else math.inf


def compute_W(field: FieldSpec, a: FqSubset, b: FqSubset, lam: int) -> BoundReport:
    """Max modulus over nontrivial characters of sum of chi(a*b - lam)."""
    _require_nontrivial(field)
    table = shifted_product_char_sums(field, a, b, lam)
    w, j = _max_nontrivial(table.values)
    return BoundReport(w_or_v=w, argmax_j=j)


def compute_V(field: FieldSpec, a: FqSubset, b: FqSubset) -> BoundReport:
    """Max modulus over nontrivial characters of sum of chi(a + b)."""
    _require_nontrivial(field)
    table = repfn_char_sums(field, rep_sum(field, a, b))
    v, j = _max_nontrivial(table.values)
    return BoundReport(w_or_v=v, argmax_j=j)


def vinogradov_check(field: FieldSpec, a: FqSubset, b: FqSubset,
                     lam: int | None = None) -> BoundReport:
    """Assertable square-root bound: measured max <= sqrt(q * #A * #B).

    With lam given the measured side is W at that lam, otherwise V.
    """
    measured = compute_W(field, a, b, lam) if lam is not None else compute_V(field, a, b)
    bound = math.sqrt(field.q * a.size * b.size)
    return BoundReport(
        w_or_v=measured.w_or_v,
        bound_value=bound,
        ratio=_ratio(measured.w_or_v, bound),
        holds=measured.w_or_v <= bound + SLACK,
        strict=measured.w_or_v < bound,
        argmax_j=measured.argmax_j,
    )


def karatsuba_report(field: FieldSpec, a: FqSubset, b: FqSubset, lam: int,
                     r: int = 1, use_p: bool = False) -> BoundReport:
    """Higher moment bound on W, report only.

    bound = (#A)^(1 - 1/(2r)) * #B * base^(1/(4r))
          + (#A)^(1 - 1/(2r)) * (#B)^(1/2) * base^(1/(2r))

    base is q by default; use_p substitutes the characteristic p, the
    variant meaningful for prime fields embedded in extensions.
    """
    if r < 1:
        raise ValueError(f"moment parameter r must be >= 1, got {r}")
    base = field.p if use_p else field.q
    measured = compute_W(field, a, b, lam)
    na, nb = a.size, b.size
    e = 1.0 - 1.0 / (2 * r)
    bound = (na ** e) * nb * base ** (1.0 / (4 * r)) \
        + (na ** e) * math.sqrt(nb) * base ** (1.0 / (2 * r))
    return BoundReport(
        w_or_v=measured.w_or_v,
        bound_value=bound,
        ratio=_ratio(measured.w_or_v, bound),
        argmax_j=measured.argmax_j,
        r=r,
    )


def cauchy_error_check(field: FieldSpec, a: FqSubset, b: FqSubset, c: FqSubset,
                       d: FqSubset, lam: int) -> BoundReport:
    """Assertable bound |err| <= W * sqrt(#C* * #D*) on the character route."""
    _, _, err = count_bilinear_charform(field, a, b, c, d, lam)
    w = compute_W(field, a, b, lam)
    c_star = c.size - bool(c.membership[0])
    d_star = d.size - bool(d.membership[0])
    bound = w.w_or_v * math.sqrt(c_star * d_star)
    measured = abs(err)
    return BoundReport(
        w_or_v=measured,
        bound_value=bound,
        ratio=_ratio(measured, bound),
        holds=measured <= bound + SLACK,
        strict=measured < bound,
        argmax_j=w.argmax_j,
    )


def solvability_threshold_check(field: FieldSpec, a: FqSubset, b: FqSubset,
                                c: FqSubset, d: FqSubset, lam: int) -> BoundReport:
    """Sufficient condition main > sqrt(q * #A * #B * #C* * #D*) for n > 0.

    When the condition fires the equation a*b + c*d = lam is guaranteed
    solvable, which the exact counter confirms.  empirical_delta records
    log base q of main/|err| as the observed exponent gap.
    """
    if lam == 0:
        raise LambdaZero("solvability threshold is stated for nonzero targets")
    _, main, err = count_bilinear_charform(field, a, b, c, d, lam)
    c_star = c.size - bool(c.membership[0])
    d_star = d.size - bool(d.membership[0])
    threshold = math.sqrt(field.q * a.size * b.size * c_star * d_star)
    fires = main > threshold
    if fires:
        # guaranteed by the square-root bound; a failure here is a bug
        assert count_bilinear(field, a, b, c, d, lam) > 0
    if main <= 0.0:
        delta = None
    elif err == 0.0:
        delta = math.inf
    else:
        delta = math.log(main / abs(err)) / math.log(field.q)
    return BoundReport(
        w_or_v=threshold,
        bound_value=main,
        ratio=_ratio(threshold, main),
        holds=fires,
        strict=fires,
        empirical_delta=delta,
    )
