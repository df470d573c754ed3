"""Solution counters for bilinear equations over F_q.

Each counter exists in two independent routes: an exact integer route
built on representation functions, and a character route that recovers
the same integer from a full character-sum table.  The two must agree
exactly; the character route additionally exposes its trivial-character
main term and the residual error term, which is what the bound checks
consume.

Character identities here use the all-zero convention (no character sees
the zero element), so tuples where a product vanishes are counted
separately by closed-form combinatorics and re-added at the end.
"""

from __future__ import annotations

import numpy as np

from .characters import repfn_char_sums, set_char_sums
from .errors import BadParam, RoundingDrift
from .field import FieldSpec, add_codes, sub_perm
from .repfn import (
    FqSubset,
    RepFn,
    additive_convolve,
    negate_subset,
    rep_product,
    rep_sum,
)

ROUND_TOL = 1e-6


def _zero_product_pairs(c: FqSubset, d: FqSubset) -> int:
    """#{(x, y) in C x D : x*y = 0} without building a representation fn."""
    zc, zd = bool(c.membership[0]), bool(d.membership[0])
    return zc * d.size + zd * c.size - (zc and zd)


def _star_size(s: FqSubset) -> int:
    """Cardinality of S with the zero element removed."""
    return s.size - bool(s.membership[0])


def count_bilinear(field: FieldSpec, a: FqSubset, b: FqSubset, c: FqSubset,
                   d: FqSubset, lam: int) -> int:
    """#{(a,b,c,d) in A x B x C x D : a*b + c*d = lam}, exact."""
    r1 = rep_product(field, a, b)
    r2 = rep_product(field, c, d)
    return int(np.dot(r1.counts, r2.counts[sub_perm(field, lam)]))


def count_bilinear_charform(field: FieldSpec, a: FqSubset, b: FqSubset,
                            c: FqSubset, d: FqSubset, lam: int) -> tuple[int, float, float]:
    """Character-route count of a*b + c*d = lam; returns (n, main, err).

    Tuples with c*d = 0 force a*b = lam and are counted exactly.  For the
    rest, a*b + c*d = lam is the same event as a*b - lam = (-c)*d with
    both sides nonzero, which character orthogonality detects:

        n_nonzero = (1/(q-1)) * sum_j T1(j) * conj(S_{-C}(j)) * conj(S_D(j))

    with T1 the table of sums of chi_j(a*b - lam).  main is the trivial
    character's share of n_nonzero and err = n_nonzero - main.  The pre-
    rounding residual must stay below 1e-6 or RoundingDrift is raised.
    """
    m = field.q - 1
    r_ab = rep_product(field, a, b)
    t1 = repfn_char_sums(field, r_ab, shift=lam)
    s_c = set_char_sums(field, negate_subset(field, c))
    s_d = set_char_sums(field, d)

    total = np.dot(t1.values, np.conj(s_c.values) * np.conj(s_d.values)) / m
    n_nonzero = float(total.real)

    residual = abs(n_nonzero - round(n_nonzero))
    if residual > ROUND_TOL:
        raise RoundingDrift(
            f"nonzero-branch count {n_nonzero!r} is {residual:.3e} from an integer"
        )

    n_zero = int(r_ab.counts[lam]) * _zero_product_pairs(c, d)
    n = int(round(n_nonzero)) + n_zero

    main = (a.size * b.size - int(r_ab.counts[lam])) * _star_size(c) * _star_size(d) / m
    err = n_nonzero - main
    return n, main, err


def count_additive(field: FieldSpec, a: FqSubset, b: FqSubset, c: FqSubset,
                   d: FqSubset) -> int:
    """#{(a,b,c,d) in A x B x C x D : a + b = c*d}, exact."""
    r_sum = rep_sum(field, a, b)
    r_prod = rep_product(field, c, d)
    return int(np.dot(r_sum.counts, r_prod.counts))


def count_additive_charform(field: FieldSpec, a: FqSubset, b: FqSubset,
                            c: FqSubset, d: FqSubset) -> tuple[int, float, float]:
    """Character-route count of a + b = c*d; returns (t, main, err).

    Same layout as count_bilinear_charform: tuples with c*d = 0 force
    a + b = 0 and are exact, the rest come from orthogonality applied to
    sums of chi_j(a + b) against conj(S_C) * conj(S_D).
    """
    m = field.q - 1
    r_sum = rep_sum(field, a, b)
    t2 = repfn_char_sums(field, r_sum)
    s_c = set_char_sums(field, c)
    s_d = set_char_sums(field, d)

    total = np.dot(t2.values, np.conj(s_c.values) * np.conj(s_d.values)) / m
    t_nonzero = float(total.real)

    residual = abs(t_nonzero - round(t_nonzero))
    if residual > ROUND_TOL:
        raise RoundingDrift(
            f"nonzero-branch count {t_nonzero!r} is {residual:.3e} from an integer"
        )

    t_zero = int(r_sum.counts[0]) * _zero_product_pairs(c, d)
    t = int(round(t_nonzero)) + t_zero

    main = (a.size * b.size - int(r_sum.counts[0])) * _star_size(c) * _star_size(d) / m
    err = t_nonzero - main
    return t, main, err


def count_general(field: FieldSpec, pairs: list[tuple[FqSubset, FqSubset]], lam: int) -> int:
    """#{((a_i, b_i)) : sum of a_i * b_i = lam} over pairs of factor sets.

    Folds the product representation functions together with additive
    convolution, so cost grows linearly in the number of pairs.
    """
    if not pairs:
        raise BadParam("at least one (A, B) pair is required")
    acc: RepFn = rep_product(field, pairs[0][0], pairs[0][1])
    for a_i, b_i in pairs[1:]:
        acc = additive_convolve(field, acc, rep_product(field, a_i, b_i))
    return int(acc.counts[lam])


def exceptional_set(field: FieldSpec, f: FqSubset, g: FqSubset, h: FqSubset) -> FqSubset:
    """All lam in F_q with no solution of f + g*h = lam, as a subset.

    Walks the support of the G*H representation function once per element
    of F, marking every attainable value; cost O(q * #F)."""
    supp = rep_product(field, g, h).support()
    attainable = np.zeros(field.q, dtype=bool)
    for x in f.codes():
        attainable[add_codes(field, int(x), supp)] = True
    mask = ~attainable
    mask.flags.writeable = False
    return FqSubset(membership=mask, size=int(mask.sum()))


def verify_sarkozy_identity(field: FieldSpec, f: FqSubset, g: FqSubset,
                            h: FqSubset) -> bool:
    """Check that the no-solution set is invisible to the additive counter.

    For e with f + g*h = e unsolvable, the equation (-e) + f = (-g)*h has
    no solutions either, since it rearranges to f + g*h = e.  Negating the
    first product-set argument alongside the exceptional set is what makes
    the rearrangement an identity; without it the count can be positive
    for asymmetric product sets.  Returns True when the count is zero.
    """
    e = exceptional_set(field, f, g, h)
    return count_additive(field, negate_subset(field, e), f,
                          negate_subset(field, g), h) == 0
