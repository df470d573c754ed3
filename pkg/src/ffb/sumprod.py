"""Sum-product style counters: sumsets, productsets, and two derived counts.

garaev_solution_count enumerates solutions of v * x1^(-1) + x2 = u with
x1 in X minus zero, x2 in X, u in the sumset X + Y, v in the productset
X * Y.  Every triple (x1, x2, y) yields the solution (x1, x2, x2 + y,
x1 * y) and distinct triples yield distinct solutions, so the count is
at least #(X minus 0) * #X * #Y; restricting x1 away from zero is what
keeps that lower bound exact in the presence of zero.
"""

from __future__ import annotations

import math

from .counters import count_bilinear
from .errors import NotPrimeField
from .field import FieldSpec, add_codes, field_inv, mul_codes
from .repfn import FqSubset, negate_subset, rep_product, rep_sum


def sumset(field: FieldSpec, x: FqSubset, y: FqSubset) -> FqSubset:
    """X + Y as a subset (support of the additive representation fn)."""
    mask = rep_sum(field, x, y).counts > 0
    mask.flags.writeable = False
    return FqSubset(membership=mask, size=int(mask.sum()))


def productset(field: FieldSpec, x: FqSubset, y: FqSubset) -> FqSubset:
    """X * Y as a subset (support of the product representation fn)."""
    mask = rep_product(field, x, y).counts > 0
    mask.flags.writeable = False
    return FqSubset(membership=mask, size=int(mask.sum()))


def garaev_solution_count(field: FieldSpec, x: FqSubset, y: FqSubset) -> tuple[int, int]:
    """(count, lower) for v * x1^(-1) + x2 = u over (X\\0) x X x (X+Y) x (X*Y)."""
    u_set = sumset(field, x, y)
    v_set = productset(field, x, y)
    xs = x.codes()
    vs = v_set.codes()
    count = 0
    for x1 in xs:
        if x1 == 0:
            continue
        inv = field_inv(field, int(x1))
        scaled = mul_codes(field, inv, vs)
        for x2 in xs:
            u = add_codes(field, int(x2), scaled)
            count += int(u_set.membership[u].sum())
    lower = (x.size - bool(x.membership[0])) * x.size * y.size
    assert count >= lower  # injective witness family, cannot fail
    return count, lower


def garaev_inequality_report(field: FieldSpec, x: FqSubset, y: FqSubset) -> float:
    """Observed constant (#U * #V) / min(p * max(#X, #Y), (#X * #Y)^2 / p).

    Stated for prime fields only; raises NotPrimeField for k > 1.
    """
    if field.k != 1:
        raise NotPrimeField("the sum-product inequality is stated for prime fields")
    p = field.p
    u_size = sumset(field, x, y).size
    v_size = productset(field, x, y).size
    denom = min(p * max(x.size, y.size), (x.size * y.size) ** 2 / p)
    num = u_size * v_size
    if denom == 0.0:
        return 0.0 if num == 0 else math.inf
    return num / denom


def count_determinant2(field: FieldSpec, a: FqSubset, b: FqSubset, c: FqSubset,
                       d: FqSubset, lam: int) -> int:
    """#{(a,b,c,d) in A x B x C x D : a*d - b*c = lam}.

    Same count as the bilinear form on (A, D, -B, C): the pair products
    a*d and (-b)*c add to the determinant.
    """
    return count_bilinear(field, a, d, negate_subset(field, b), c, lam)
