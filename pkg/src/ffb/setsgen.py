"""Deterministic construction of test subsets from compact descriptions.

Text syntax, one kind per spec plus stackable prefixes:

    explicit:1,2,3            listed element codes
    interval:1..4             integer interval (prime fields only)
    random:5                  5 distinct elements from the seeded stream
    subgroup:3                multiplicative subgroup of index 3
    progression:2,3,4         start 2, step 3, length 4
    -SPEC                     elementwise negation of SPEC
    ~SPEC                     complement of SPEC

Randomness is a counter-based splitmix64 stream: element i of a stream is
a pure function of (seed, i), so realisation is reproducible across
platforms and processes, and derive_seed splits independent substreams
for grid instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParam
from .field import FieldSpec, field_add
from .repfn import FqSubset, complement_subset, negate_subset, subset_from_codes

_MASK = (1 << 64) - 1
_PHI = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def stream_value(seed: int, counter: int) -> int:
    """64-bit output of the counter-based stream at position counter."""
    return _mix((seed + (counter + 1) * _PHI) & _MASK)


def derive_seed(seed: int, *path: int) -> int:
    """Split a child seed; distinct paths give independent streams."""
    s = seed & _MASK
    for part in path:
        s = _mix((s + (part + 1) * _PHI) & _MASK)
    return s


@dataclass(frozen=True)
class SetSpec:
    """Parsed set description: a kind, its parameters, optional wrapped spec."""

    kind: str
    params: tuple = ()
    inner: "SetSpec | None" = None

    def text(self) -> str:
        if self.kind == "negate":
            return "-" + self.inner.text()
        if self.kind == "complement":
            return "~" + self.inner.text()
        if self.kind == "interval":
            return f"interval:{self.params[0]}..{self.params[1]}"
        return f"{self.kind}:{','.join(str(x) for x in self.params)}"


def _ints(raw: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in raw.split(",") if tok != ""]
    except ValueError as exc:
        raise BadParam(f"{what}: expected comma-separated integers, got {raw!r}") from exc


def parse_setspec(text: str) -> SetSpec:
    """Parse the textual syntax above into a SetSpec tree."""
    text = text.strip()
    if text.startswith("-"):
        return SetSpec(kind="negate", inner=parse_setspec(text[1:]))
    if text.startswith("~"):
        return SetSpec(kind="complement", inner=parse_setspec(text[1:]))
    if ":" not in text:
        raise BadParam(f"set spec {text!r} has no kind: prefix")
    kind, _, raw = text.partition(":")
    if kind == "explicit":
        return SetSpec(kind="explicit", params=tuple(_ints(raw, "explicit")))
    if kind == "interval":
        lo, sep, hi = raw.partition("..")
        if not sep:
            raise BadParam(f"interval: expected lo..hi, got {raw!r}")
        try:
            return SetSpec(kind="interval", params=(int(lo), int(hi)))
        except ValueError as exc:
            raise BadParam(f"interval: bad endpoints {raw!r}") from exc
    if kind == "random":
        vals = _ints(raw, "random")
        if len(vals) != 1:
            raise BadParam(f"random: expected one size, got {raw!r}")
        return SetSpec(kind="random", params=(vals[0],))
    if kind == "subgroup":
        vals = _ints(raw, "subgroup")
        if len(vals) != 1:
            raise BadParam(f"subgroup: expected one index, got {raw!r}")
        return SetSpec(kind="subgroup", params=(vals[0],))
    if kind == "progression":
        vals = _ints(raw, "progression")
        if len(vals) != 3:
            raise BadParam(f"progression: expected start,step,len, got {raw!r}")
        return SetSpec(kind="progression", params=tuple(vals))
    raise BadParam(f"unknown set kind {kind!r}")


def _draw_distinct(field: FieldSpec, m: int, seed: int) -> list[int]:
    """m distinct codes by rejection from the unbiased counter stream."""
    limit = ((1 << 64) // field.q) * field.q
    seen: set[int] = set()
    out: list[int] = []
    counter = 0
    while len(out) < m:
        v = stream_value(seed, counter)
        counter += 1
        if v >= limit:
            continue
        code = v % field.q
        if code not in seen:
            seen.add(code)
            out.append(code)
    return out


def realize(field: FieldSpec, spec: SetSpec, seed: int = 0) -> FqSubset:
    """Materialise a SetSpec as a subset of the given field."""
    if spec.kind == "negate":
        return negate_subset(field, realize(field, spec.inner, seed))
    if spec.kind == "complement":
        return complement_subset(field, realize(field, spec.inner, seed))
    if spec.kind == "explicit":
        return subset_from_codes(field, spec.params)
    if spec.kind == "interval":
        lo, hi = spec.params
        if field.k != 1:
            raise BadParam("interval: defined for prime fields only")
        if not (0 <= lo <= hi < field.p):
            raise BadParam(f"interval: need 0 <= lo <= hi < p, got {lo}..{hi}")
        return subset_from_codes(field, range(lo, hi + 1))
    if spec.kind == "random":
        (m,) = spec.params
        if not (0 <= m <= field.q):
            raise BadParam(f"random: size {m} outside [0, {field.q}]")
        return subset_from_codes(field, _draw_distinct(field, m, seed))
    if spec.kind == "subgroup":
        (d,) = spec.params
        if d < 1 or (field.q - 1) % d != 0:
            raise BadParam(f"subgroup: index {d} does not divide {field.q - 1}")
        return subset_from_codes(field, (int(field.exp[t]) for t in range(0, field.q - 1, d)))
    if spec.kind == "progression":
        start, step, length = spec.params
        if length < 0:
            raise BadParam(f"progression: negative length {length}")
        if not (0 <= start < field.q) or not (0 <= step < field.q):
            raise BadParam("progression: start and step must be element codes")
        codes = []
        cur = start
        for _ in range(length):
            codes.append(cur)
            cur = field_add(field, cur, step)
        return subset_from_codes(field, codes)
    raise BadParam(f"unknown set kind {spec.kind!r}")
