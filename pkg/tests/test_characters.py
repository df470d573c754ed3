"""Character evaluation, sum tables, and the transform hook."""

import cmath

import numpy as np
import pytest

from ffb.characters import (
    char_eval,
    direct_transform,
    fft_transform,
    repfn_char_sums,
    set_char_sums,
    set_transform_override,
    shifted_product_char_sums,
)
from ffb.errors import BadExponent, BadParam
from ffb.field import field_mul, field_sub
from ffb.repfn import RepFn, full_subset, rep_product, subset_from_codes
from ffb.setsgen import SetSpec, derive_seed, realize, stream_value

TOL = 1e-9


def table_tol(field):
    return TOL * (field.q - 1)


def test_char_eval_at_zero(f5):
    assert char_eval(f5, 0, 0) == 1
    assert char_eval(f5, 3, 0) == 0
    assert char_eval(f5, 0, 0, zero_convention="all_zero") == 0


def test_char_eval_known_value(f5):
    # dlog(4) = 2 with generator 2, so index 2 gives e(2*pi*i * 4/4) = 1
    assert char_eval(f5, 2, 4) == pytest.approx(1)
    assert char_eval(f5, 1, 2) == pytest.approx(cmath.exp(2j * cmath.pi / 4))


def test_char_eval_rejects_bad_arguments(f5):
    with pytest.raises(BadExponent):
        char_eval(f5, 4, 1)
    with pytest.raises(BadExponent):
        char_eval(f5, -1, 1)
    with pytest.raises(BadParam):
        char_eval(f5, 1, 1, zero_convention="sometimes")


def test_char_eval_is_multiplicative(f13, f16):
    # 1000 seeded (j, x, y) triples on a prime field and an extension
    for field in (f13, f16):
        m = field.q - 1
        for i in range(1000):
            j = stream_value(11, 3 * i) % m
            x = 1 + stream_value(11, 3 * i + 1) % m
            y = 1 + stream_value(11, 3 * i + 2) % m
            lhs = char_eval(field, j, field_mul(field, x, y))
            rhs = char_eval(field, j, x) * char_eval(field, j, y)
            assert abs(lhs - rhs) < TOL


def test_orthogonality_relations(f9):
    m = f9.q - 1
    for x in range(1, f9.q):
        col = sum(char_eval(f9, j, x) for j in range(m))
        assert abs(col - (m if x == 1 else 0)) < table_tol(f9)
    for j in range(m):
        row = sum(char_eval(f9, j, x) for x in range(1, f9.q))
        assert abs(row - (m if j == 0 else 0)) < table_tol(f9)


def test_set_char_sums_full_group(f7):
    table = set_char_sums(f7, full_subset(f7)).values
    assert table[0] == pytest.approx(6)
    assert np.abs(table[1:]).max() < table_tol(f7)


def test_set_char_sums_singleton_one(f7):
    table = set_char_sums(f7, subset_from_codes(f7, [1])).values
    assert np.allclose(table, 1.0, atol=TOL)


def test_set_char_sums_matches_char_eval_loop(f7):
    squares = subset_from_codes(f7, [1, 2, 4])
    table = set_char_sums(f7, squares).values
    for j in range(6):
        direct = sum(char_eval(f7, j, x) for x in (1, 2, 4))
        assert abs(table[j] - direct) < table_tol(f7)


def test_set_char_sums_modulus_bound_and_conjugacy(f11):
    m = f11.q - 1
    for idx in range(10):
        size = 1 + stream_value(13, idx) % f11.q
        a = realize(f11, SetSpec("random", (size,)), derive_seed(13, idx))
        table = set_char_sums(f11, a).values
        nonzero = a.size - (0 in a)
        assert (np.abs(table) <= nonzero + TOL).all()
        for j in range(1, m):
            # real weights force mirrored conjugate entries
            assert abs(table[m - j] - np.conj(table[j])) < TOL


def test_repfn_char_sums_matches_loop(f7):
    counts = np.array([stream_value(17, t) % 5 for t in range(7)], dtype=np.int64)
    r = RepFn(counts=counts)
    for shift in (0, 3):
        table = repfn_char_sums(f7, r, shift=shift).values
        for j in range(6):
            direct = sum(
                counts[x] * char_eval(f7, j, field_sub(f7, x, shift), "all_zero")
                for x in range(7)
            )
            assert abs(table[j] - direct) < table_tol(f7)


def test_shifted_product_full_group_vanishes(f7):
    full = full_subset(f7)
    table = shifted_product_char_sums(f7, full, full, 0).values
    assert np.abs(table[1:]).max() < table_tol(f7)


def test_shifted_product_singletons_unimodular(f7):
    a = subset_from_codes(f7, [2])
    b = subset_from_codes(f7, [3])
    table = shifted_product_char_sums(f7, a, b, 1).values  # 2*3 - 1 = 5 != 0
    assert np.allclose(np.abs(table), 1.0, atol=TOL)


def test_shifted_product_matches_double_loop(f7):
    a = subset_from_codes(f7, [1, 3])
    b = subset_from_codes(f7, [2, 5])
    lam = 1
    table = shifted_product_char_sums(f7, a, b, lam).values
    for j in range(6):
        direct = sum(
            char_eval(f7, j, field_sub(f7, field_mul(f7, x, y), lam), "all_zero")
            for x in (1, 3) for y in (2, 5)
        )
        assert abs(table[j] - direct) < table_tol(f7)


def test_transforms_agree_on_random_input():
    v = np.array([complex(stream_value(19, 2 * t) % 100,
                          stream_value(19, 2 * t + 1) % 100) for t in range(12)])
    assert np.allclose(direct_transform(v), fft_transform(v), atol=1e-8)


def test_transform_override_is_a_drop_in(f11):
    a = realize(f11, SetSpec("random", (6,)), 23)
    baseline = set_char_sums(f11, a).values
    set_transform_override(fft_transform)
    try:
        assert np.allclose(set_char_sums(f11, a).values, baseline, atol=TOL)
    finally:
        set_transform_override(None)
    assert np.array_equal(set_char_sums(f11, a).values, baseline)
