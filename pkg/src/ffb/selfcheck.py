"""Acceptance grid, brute-force oracles, and the named release criteria.

The oracles here count by enumerating tuples through plain operation
tables, never through representation functions or characters, so they are
independent of the paths they validate.  The criteria are shared between
the CLI selftest and the acceptance test module: each returns (ok,
detail) and asserts nothing itself.
"""

from __future__ import annotations

import numpy as np

from . import bounds, counters, setsgen, sumprod
from .characters import char_eval
from .field import FieldSpec, field_add, field_mul, field_neg, make_field
from .repfn import FqSubset, full_subset, subset_from_codes
from .setsgen import SetSpec, derive_seed, stream_value

# (p, k) per grid order q = 3, 5, 7, 9, 11, 13, 16
GRID_SHAPES = [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (2, 4)]
GRID_TUPLES = 50
ORTHO_TOL = 1e-9


def grid_fields(q_max: int | None = None) -> list[FieldSpec]:
    fields = [make_field(p, k) for p, k in GRID_SHAPES]
    if q_max is not None:
        fields = [f for f in fields if f.q <= q_max]
    return fields


def draw_subset(field: FieldSpec, slot_seed: int) -> FqSubset:
    """Random subset with size uniform in [1, q], from the slot's stream."""
    m = 1 + stream_value(slot_seed, 0) % field.q
    return setsgen.realize(field, SetSpec("random", (m,)), derive_seed(slot_seed, 1))


def grid_tuple(field: FieldSpec, index: int, n_sets: int = 4,
               base_seed: int = 0) -> list[FqSubset]:
    """The index-th seeded set tuple for this field, n_sets slots."""
    return [
        draw_subset(field, derive_seed(base_seed, field.q, index, slot))
        for slot in range(n_sets)
    ]


# ----------------------------------------------------------------------
# brute-force oracles on operation tables
# ----------------------------------------------------------------------

_tables_cache: dict[tuple, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def op_tables(field: FieldSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(mul, add, neg) tables over all codes, built by scalar arithmetic."""
    key = (field.p, field.k, field.modulus)
    cached = _tables_cache.get(key)
    if cached is not None:
        return cached
    q = field.q
    mul = np.empty((q, q), dtype=np.int64)
    add = np.empty((q, q), dtype=np.int64)
    neg = np.empty(q, dtype=np.int64)
    for x in range(q):
        neg[x] = field_neg(field, x)
        for y in range(q):
            mul[x, y] = field_mul(field, x, y)
            add[x, y] = field_add(field, x, y)
    _tables_cache[key] = (mul, add, neg)
    return mul, add, neg


def brute_bilinear_all(field: FieldSpec, a: FqSubset, b: FqSubset, c: FqSubset,
                       d: FqSubset) -> np.ndarray:
    """Histogram over lam of a*b + c*d by full tuple enumeration."""
    mul, add, _ = op_tables(field)
    p1 = mul[np.ix_(a.codes(), b.codes())].ravel()
    p2 = mul[np.ix_(c.codes(), d.codes())].ravel()
    if len(p1) == 0 or len(p2) == 0:
        return np.zeros(field.q, dtype=np.int64)
    vals = add[p1[:, None], p2[None, :]].ravel()
    return np.bincount(vals, minlength=field.q).astype(np.int64)


def brute_additive(field: FieldSpec, a: FqSubset, b: FqSubset, c: FqSubset,
                   d: FqSubset) -> int:
    """a + b = c*d by full tuple enumeration."""
    mul, add, _ = op_tables(field)
    sums = add[np.ix_(a.codes(), b.codes())].ravel()
    prods = mul[np.ix_(c.codes(), d.codes())].ravel()
    if len(sums) == 0 or len(prods) == 0:
        return 0
    return int((sums[:, None] == prods[None, :]).sum())


def brute_general_all(field: FieldSpec, pairs: list[tuple[FqSubset, FqSubset]]) -> np.ndarray:
    """Histogram over lam of sum of a_i*b_i, full enumeration, n <= 3."""
    mul, add, _ = op_tables(field)
    vals_per_pair = [mul[np.ix_(x.codes(), y.codes())].ravel() for x, y in pairs]
    if any(len(v) == 0 for v in vals_per_pair):
        return np.zeros(field.q, dtype=np.int64)
    acc = vals_per_pair[0]
    for v in vals_per_pair[1:]:
        acc = add[acc[:, None], v[None, :]].ravel()
    return np.bincount(acc, minlength=field.q).astype(np.int64)


def brute_exceptional_mask(field: FieldSpec, f: FqSubset, g: FqSubset,
                           h: FqSubset) -> np.ndarray:
    """Boolean mask of lam with no solution of f + g*h = lam, enumerated."""
    mul, add, _ = op_tables(field)
    attained = np.zeros(field.q, dtype=bool)
    prods = mul[np.ix_(g.codes(), h.codes())].ravel()
    if len(prods) and f.size:
        attained[add[np.ix_(f.codes(), prods)].ravel()] = True
    return ~attained


def brute_det2_all(field: FieldSpec, a: FqSubset, b: FqSubset, c: FqSubset,
                   d: FqSubset) -> np.ndarray:
    """Histogram over lam of a*d - b*c by full tuple enumeration."""
    mul, add, neg = op_tables(field)
    ad = mul[np.ix_(a.codes(), d.codes())].ravel()
    bc = mul[np.ix_(b.codes(), c.codes())].ravel()
    if len(ad) == 0 or len(bc) == 0:
        return np.zeros(field.q, dtype=np.int64)
    vals = add[ad[:, None], neg[bc][None, :]].ravel()
    return np.bincount(vals, minlength=field.q).astype(np.int64)


# ----------------------------------------------------------------------
# named criteria
# ----------------------------------------------------------------------

def criterion_oracle_equivalence(q_max: int = 13, tuples: int = GRID_TUPLES,
                                 base_seed: int = 0) -> tuple[bool, str]:
    """Counters equal brute enumeration: bilinear, additive, determinant and
    no-solution sets at q <= 11, the general n-term form at n <= 3, q <= 7."""
    checked = 0
    for field in grid_fields(min(q_max, 11)):
        for idx in range(tuples):
            a, b, c, d = grid_tuple(field, idx, 4, base_seed)
            brute = brute_bilinear_all(field, a, b, c, d)
            det_brute = brute_det2_all(field, a, b, c, d)
            for lam in range(field.q):
                if counters.count_bilinear(field, a, b, c, d, lam) != int(brute[lam]):
                    return False, f"count_bilinear mismatch q={field.q} tuple={idx} lam={lam}"
                if sumprod.count_determinant2(field, a, b, c, d, lam) != int(det_brute[lam]):
                    return False, f"count_determinant2 mismatch q={field.q} tuple={idx} lam={lam}"
                checked += 2
            if counters.count_additive(field, a, b, c, d) != brute_additive(field, a, b, c, d):
                return False, f"count_additive mismatch q={field.q} tuple={idx}"
            exc = counters.exceptional_set(field, a, b, c)
            if not np.array_equal(exc.membership, brute_exceptional_mask(field, a, b, c)):
                return False, f"exceptional_set mismatch q={field.q} tuple={idx}"
            checked += 2
            if field.q <= 7:
                pairs = [(a, b), (c, d), (a, c)]
                brute3 = brute_general_all(field, pairs)
                for lam in range(field.q):
                    if counters.count_general(field, pairs, lam) != int(brute3[lam]):
                        return False, f"count_general mismatch q={field.q} tuple={idx} lam={lam}"
                    checked += 1
    return True, f"{checked} exact comparisons against brute enumeration"


def criterion_charform_agreement(q_max: int = 16, tuples: int = GRID_TUPLES,
                                 base_seed: int = 0) -> tuple[bool, str]:
    """Character-route counters reproduce the exact integer counters."""
    checked = 0
    for field in grid_fields(q_max):
        for idx in range(tuples):
            a, b, c, d = grid_tuple(field, idx, 4, base_seed)
            t_exact = counters.count_additive(field, a, b, c, d)
            t_char, _, _ = counters.count_additive_charform(field, a, b, c, d)
            if t_char != t_exact:
                return False, f"additive charform mismatch q={field.q} tuple={idx}"
            checked += 1
            for lam in range(field.q):
                n_exact = counters.count_bilinear(field, a, b, c, d, lam)
                n_char, _, _ = counters.count_bilinear_charform(field, a, b, c, d, lam)
                if n_char != n_exact:
                    return False, f"bilinear charform mismatch q={field.q} tuple={idx} lam={lam}"
                checked += 1
    return True, f"{checked} instances, character route exact after rounding"


def criterion_closed_forms(q_max: int = 13, base_seed: int = 0) -> tuple[bool, str]:
    """Full-grid counts match their closed forms, brute-checked at q = 5."""
    checked = 0
    for field in grid_fields(q_max):
        if field.q < 5:
            continue
        full = full_subset(field)
        q = field.q
        expected_nonzero = q ** 3 - q
        expected_zero = (2 * q - 1) ** 2 + (q - 1) ** 3
        for lam in range(q):
            n = counters.count_bilinear(field, full, full, full, full, lam)
            want = expected_zero if lam == 0 else expected_nonzero
            if n != want:
                return False, f"bilinear closed form fails q={q} lam={lam}: {n} != {want}"
            checked += 1
        t = counters.count_additive(field, full, full, full, full)
        if t != q ** 3:
            return False, f"additive closed form fails q={q}: {t} != {q ** 3}"
        checked += 1
        if q == 5:
            brute = brute_bilinear_all(field, full, full, full, full)
            if int(brute[0]) != expected_zero or any(
                int(brute[lam]) != expected_nonzero for lam in range(1, q)
            ):
                return False, "brute cross-check of closed forms fails at q=5"
            checked += 1
    return True, f"{checked} closed-form values verified"


def criterion_proven_bounds(q_max: int = 13, tuples: int = GRID_TUPLES,
                            base_seed: int = 0) -> tuple[bool, str]:
    """Square-root bounds on W and V and the Cauchy error bound all hold."""
    checked = 0
    for field in grid_fields(q_max):
        if field.q < 3:
            continue
        for idx in range(tuples):
            a, b, c, d = grid_tuple(field, idx, 4, base_seed)
            rep = bounds.vinogradov_check(field, a, b)
            if not rep.holds:
                return False, f"V bound fails q={field.q} tuple={idx}: {rep}"
            checked += 1
            for lam in range(field.q):
                rep = bounds.vinogradov_check(field, a, b, lam)
                if not rep.holds:
                    return False, f"W bound fails q={field.q} tuple={idx} lam={lam}: {rep}"
                rep = bounds.cauchy_error_check(field, a, b, c, d, lam)
                if not rep.holds:
                    return False, f"Cauchy bound fails q={field.q} tuple={idx} lam={lam}: {rep}"
                checked += 2
    return True, f"{checked} bound instances, all hold"


def criterion_sarkozy_identity(q_max: int = 13, tuples: int = GRID_TUPLES,
                               base_seed: int = 0) -> tuple[bool, str]:
    """The no-solution set never meets the matching additive count."""
    checked = 0
    for field in grid_fields(q_max):
        for idx in range(tuples):
            f, g, h, _ = grid_tuple(field, idx, 4, base_seed)
            if not counters.verify_sarkozy_identity(field, f, g, h):
                return False, f"identity fails q={field.q} tuple={idx}"
            checked += 1
    return True, f"{checked} triples, identity holds on all"


def criterion_solvability(q_max: int = 13, tuples: int = GRID_TUPLES,
                          base_seed: int = 0) -> tuple[bool, str]:
    """Whenever the threshold condition fires, solutions exist."""
    fired = 0
    checked = 0
    for field in grid_fields(q_max):
        for idx in range(tuples):
            a, b, c, d = grid_tuple(field, idx, 4, base_seed)
            for lam in range(1, field.q):
                rep = bounds.solvability_threshold_check(field, a, b, c, d, lam)
                checked += 1
                if rep.holds:
                    fired += 1
                    if counters.count_bilinear(field, a, b, c, d, lam) <= 0:
                        return False, f"threshold violated q={field.q} tuple={idx} lam={lam}"
    return True, f"{checked} instances, condition fired {fired} times, zero violations"


def criterion_garaev_lower(q_max: int = 13, tuples: int = GRID_TUPLES,
                           base_seed: int = 0) -> tuple[bool, str]:
    """Solution count over sumset and productset meets its exact lower bound."""
    checked = 0
    for field in grid_fields(q_max):
        for idx in range(tuples):
            x, y, _, _ = grid_tuple(field, idx, 4, base_seed)
            count, lower = sumprod.garaev_solution_count(field, x, y)
            if count < lower:
                return False, f"lower bound fails q={field.q} tuple={idx}: {count} < {lower}"
            checked += 1
    return True, f"{checked} pairs, count >= lower on all"


def criterion_orthogonality(q_max: int = 16) -> tuple[bool, str]:
    """Both character orthogonality relations, within 1e-9 * (q - 1)."""
    worst = 0.0
    for field in grid_fields(q_max):
        m = field.q - 1
        tol = ORTHO_TOL * m
        for t in range(m):
            x = int(field.exp[t])
            col = sum(char_eval(field, j, x) for j in range(m))
            dev = abs(col - (m if x == 1 else 0))
            worst = max(worst, dev / m)
            if dev > tol:
                return False, f"column orthogonality fails q={field.q} x={x}: dev={dev:.3e}"
        for j in range(m):
            row = sum(char_eval(field, j, int(field.exp[t])) for t in range(m))
            dev = abs(row - (m if j == 0 else 0))
            worst = max(worst, dev / m)
            if dev > tol:
                return False, f"row orthogonality fails q={field.q} j={j}: dev={dev:.3e}"
    return True, f"worst relative deviation {worst:.3e} (tolerance {ORTHO_TOL:.0e})"


def exceptional_ratio_report(p: int = 101, triples: int = 20,
                             base_seed: int = 0) -> list[dict]:
    """Observed #E * #F * #G * #H / q^3 for seeded triples, report only.

    Set sizes are drawn in [1, 1 + floor(q^(1/3))]: much larger sets make
    the no-solution set empty and every ratio trivially zero.
    """
    field = make_field(p)
    cap = 1 + int(field.q ** (1 / 3))
    out = []
    for idx in range(triples):
        sets = []
        for slot in range(3):
            slot_seed = derive_seed(base_seed, field.q, idx, slot)
            m = 1 + stream_value(slot_seed, 0) % cap
            sets.append(setsgen.realize(field, SetSpec("random", (m,)),
                                        derive_seed(slot_seed, 1)))
        f, g, h = sets
        e = counters.exceptional_set(field, f, g, h)
        ratio = e.size * f.size * g.size * h.size / field.q ** 3
        out.append({
            "index": idx,
            "sizes": (f.size, g.size, h.size),
            "e_size": e.size,
            "ratio": ratio,
        })
    return out


SELFTEST_CRITERIA = [
    ("oracle-equivalence", criterion_oracle_equivalence),
    ("charform-agreement", criterion_charform_agreement),
    ("closed-forms", lambda q_max, tuples, base_seed: criterion_closed_forms(q_max, base_seed)),
    ("proven-bounds", criterion_proven_bounds),
    ("sarkozy-identity", criterion_sarkozy_identity),
    ("solvability-threshold", criterion_solvability),
    ("garaev-lower-bound", criterion_garaev_lower),
    ("orthogonality", lambda q_max, tuples, base_seed: criterion_orthogonality(q_max)),
]


def run_selftest(q_max: int = 13, tuples: int = GRID_TUPLES,
                 base_seed: int = 0) -> list[tuple[str, bool, str]]:
    """Run every criterion restricted to q <= q_max; no printing here."""
    results = []
    for name, fn in SELFTEST_CRITERIA:
        ok, detail = fn(q_max, tuples, base_seed)
        results.append((name, ok, detail))
    return results
