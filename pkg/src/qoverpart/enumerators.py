"""Constraint-driven enumeration of partition and overpartition classes.

Classes are declarative: a PartitionClass restricts parts (parity, gaps,
residues, forced or forbidden members), an OverpartitionClass adds rules for
which magnitudes may carry an overline, with caps that may depend on the
number of non-overlined parts.  Counting always walks the same generator as
enumeration so the series engine stays the only independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from .partitions import Overpartition, Partition, partition_from_frobenius, FrobeniusSymbol


class Parity(Enum):
    ANY = "any"
    ALL_ODD = "all-odd"
    ALL_EVEN = "all-even"
    # smallest part odd, then parities alternate upward
    ALTERNATING_FROM_ODD_SMALLEST = "alternating-from-odd-smallest"
    # strict descent at odd positions, weak at even: l1 > l2 >= l3 > l4 >= ...
    SLATER121_PATTERN = "slater121-pattern"


@dataclass(frozen=True)
class PartitionClass:
    distinct: bool = False
    parity: Parity = Parity.ANY
    min_part: int = 1
    min_gap: int = 0
    forbid_consecutive_evens: bool = False
    forbid_consecutive_odds: bool = False
    smallest_part_in: frozenset[int] | None = None
    must_contain: frozenset[int] = frozenset()
    residue_filter: tuple[int, frozenset[int]] | None = None


@dataclass(frozen=True)
class OverlineRule:
    """One admissibility rule for overlined magnitudes.

    A rule applies to a magnitude v when low <= v <= high (high None means
    open-ended).  An overlined magnitude is admissible iff at least one rule
    applies to it and it satisfies the residue and cap constraints of every
    rule that applies.  ``cap`` is affine in the count r of non-overlined
    parts: v <= slope*r + intercept.
    """

    low: int = 1
    high: int | None = None
    residue: tuple[int, frozenset[int]] | None = None
    cap: tuple[int, int] | None = None


@dataclass(frozen=True)
class OverpartitionClass:
    base: PartitionClass
    rules: tuple[OverlineRule, ...]


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------


def matches_partition(cls: PartitionClass, parts: Partition) -> bool:
    """Re-check a canonical decreasing partition against the class, from scratch."""
    gap = max(cls.min_gap, 1 if cls.distinct else 0)
    for i, p in enumerate(parts):
        if p < cls.min_part:
            return False
        if i and parts[i - 1] - p < gap:
            return False
        if cls.parity is Parity.ALL_ODD and p % 2 == 0:
            return False
        if cls.parity is Parity.ALL_EVEN and p % 2 == 1:
            return False
        if cls.residue_filter is not None:
            modulus, allowed = cls.residue_filter
            if p % modulus not in allowed:
                return False
    if cls.parity is Parity.ALTERNATING_FROM_ODD_SMALLEST:
        increasing = parts[::-1]
        for j, p in enumerate(increasing):
            if (p - (j + 1)) % 2 != 0:
                return False
    if cls.parity is Parity.SLATER121_PATTERN:
        for j in range(len(parts) - 1):
            if j % 2 == 0 and parts[j] <= parts[j + 1]:
                return False
    part_set = set(parts)
    if cls.forbid_consecutive_evens:
        if any(p % 2 == 0 and p + 2 in part_set for p in part_set):
            return False
    if cls.forbid_consecutive_odds:
        if any(p % 2 == 1 and p + 2 in part_set for p in part_set):
            return False
    if not set(cls.must_contain) <= part_set:
        return False
    if cls.smallest_part_in is not None:
        if not parts or parts[-1] not in cls.smallest_part_in:
            return False
    return True


def _admissible(rules: tuple[OverlineRule, ...], v: int, r: int) -> bool:
    applies = False
    for rule in rules:
        if v < rule.low or (rule.high is not None and v > rule.high):
            continue
        applies = True
        if rule.residue is not None:
            modulus, allowed = rule.residue
            if v % modulus not in allowed:
                return False
        if rule.cap is not None:
            slope, intercept = rule.cap
            if v > slope * r + intercept:
                return False
    return applies


def matches_overpartition(cls: OverpartitionClass, op: Overpartition) -> bool:
    if not matches_partition(cls.base, op.parts):
        return False
    r = len(op.parts)
    for i, v in enumerate(op.overlined):
        if i and op.overlined[i - 1] <= v:
            return False
        if not _admissible(cls.rules, v, r):
            return False
    return True


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------


def _part_ok(cls: PartitionClass, p: int, chosen: list[int]) -> bool:
    if cls.parity is Parity.ALL_ODD and p % 2 == 0:
        return False
    if cls.parity is Parity.ALL_EVEN and p % 2 == 1:
        return False
    if cls.residue_filter is not None:
        modulus, allowed = cls.residue_filter
        if p % modulus not in allowed:
            return False
    if cls.forbid_consecutive_evens and p % 2 == 0 and p + 2 in chosen:
        return False
    if cls.forbid_consecutive_odds and p % 2 == 1 and p + 2 in chosen:
        return False
    return True


def _close_ok(cls: PartitionClass, chosen: list[int]) -> bool:
    if cls.must_contain and not set(cls.must_contain) <= set(chosen):
        return False
    if cls.smallest_part_in is not None:
        if not chosen or chosen[-1] not in cls.smallest_part_in:
            return False
    return True


def _next_bound(cls: PartitionClass, p: int, position: int) -> int:
    if cls.parity is Parity.SLATER121_PATTERN:
        # position is the 1-based index of p; descent is strict after odd
        # positions and weak after even ones
        return p - 1 if position % 2 == 1 else p
    return p - max(cls.min_gap, 1 if cls.distinct else 0)


def _descend(cls: PartitionClass, remaining: int, max_part: int, chosen: list[int]) -> Iterator[Partition]:
    if remaining == 0:
        if _close_ok(cls, chosen):
            yield tuple(chosen)
        return
    top = min(max_part, remaining)
    for p in range(top, cls.min_part - 1, -1):
        if not _part_ok(cls, p, chosen):
            continue
        chosen.append(p)
        yield from _descend(cls, remaining - p, _next_bound(cls, p, len(chosen)), chosen)
        chosen.pop()


def _ascend_alternating(cls: PartitionClass, n: int) -> Iterator[Partition]:
    # built smallest-first because the parity pattern is anchored at the
    # smallest part: the j-th part from below must be congruent to j mod 2
    def rec(remaining: int, min_next: int, j: int, chosen: list[int]) -> Iterator[Partition]:
        if remaining == 0:
            if _close_ok(cls, chosen[::-1]):
                yield tuple(reversed(chosen))
            return
        start = min_next if min_next % 2 == j % 2 else min_next + 1
        for p in range(start, remaining + 1, 2):
            chosen.append(p)
            yield from rec(remaining - p, p + 1, j + 1, chosen)
            chosen.pop()

    yield from rec(n, cls.min_part, 1, [])


def iter_partitions(n: int, cls: PartitionClass) -> Iterator[Partition]:
    if n < 0:
        raise ValueError("weight must be nonnegative")
    if cls.parity is Parity.ALTERNATING_FROM_ODD_SMALLEST:
        yield from _ascend_alternating(cls, n)
    else:
        yield from _descend(cls, n, n, [])


def _iter_overlines(rules: tuple[OverlineRule, ...], total: int, r: int) -> Iterator[tuple[int, ...]]:
    def rec(remaining: int, max_v: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield tuple(acc)
            return
        for v in range(min(remaining, max_v), 0, -1):
            if _admissible(rules, v, r):
                acc.append(v)
                yield from rec(remaining - v, v - 1, acc)
                acc.pop()

    yield from rec(total, total, [])


def iter_overpartitions(n: int, cls: OverpartitionClass) -> Iterator[Overpartition]:
    for m in range(n, -1, -1):
        for base in iter_partitions(m, cls.base):
            for ov in _iter_overlines(cls.rules, n - m, len(base)):
                yield Overpartition(base, ov)


# ---------------------------------------------------------------------------
# almost-self-conjugate partitions, enumerated through their Frobenius symbols
# ---------------------------------------------------------------------------


def iter_almost_self_conjugate(n: int) -> Iterator[Partition]:
    """Partitions whose Frobenius top row is the bottom row plus one.

    Walks symbols (b_i+1 ; b_i) directly: weight is 2d + 2*sum(b) over
    strictly decreasing b_1 > ... > b_d >= 0.  At n=0 the empty partition is
    yielded, which is the counting convention used by the identity harness;
    the standalone predicate still rejects the empty partition.
    """
    if n == 0:
        yield ()
        return
    if n % 2:
        return

    def rec(remaining_half: int, prev: int, acc: list[int]) -> Iterator[Partition]:
        # each new entry b adds (b + 1) to the half-weight
        if remaining_half == 0:
            bottom = tuple(acc)
            top = tuple(b + 1 for b in bottom)
            yield partition_from_frobenius(FrobeniusSymbol(top, bottom))
            return
        for b in range(min(prev - 1, remaining_half - 1), -1, -1):
            acc.append(b)
            yield from rec(remaining_half - b - 1, b, acc)
            acc.pop()

    yield from rec(n // 2, n // 2 + 1, [])


# ---------------------------------------------------------------------------
# Stembridge-style pair counts
# ---------------------------------------------------------------------------

STEMBRIDGE_VARIANTS = ("gg1", "gg2", "lg1", "lg2")


def _self_conjugate_stats(max_w: int, min_entry: int = 0) -> list[tuple[int, int, int]]:
    """(weight, largest part, diagonal) for self-conjugate partitions.

    Symbols are (a ; a); each entry a contributes 2a+1 to the weight and the
    first entry fixes the largest part a+1.  The empty partition is included.
    """
    rows = [(0, 0, 0)]

    def rec(w: int, prev: int, largest: int, d: int) -> None:
        for a in range(min(prev - 1, (max_w - w - 1) // 2), min_entry - 1, -1):
            nw = w + 2 * a + 1
            rows.append((nw, largest, d + 1))
            rec(nw, a, largest, d + 1)

    for a1 in range((max_w - 1) // 2, min_entry - 1, -1):
        w = 2 * a1 + 1
        rows.append((w, a1 + 1, 1))
        rec(w, a1, a1 + 1, 1)
    return rows


def _almost_self_conjugate_stats(max_w: int) -> list[tuple[int, int]]:
    """(weight, diagonal) for almost-self-conjugate partitions, empty included."""
    rows = [(0, 0)]

    def rec(w: int, prev: int, d: int) -> None:
        for b in range(min(prev - 1, (max_w - w - 2) // 2), -1, -1):
            nw = w + 2 * b + 2
            rows.append((nw, d + 1))
            rec(nw, b, d + 1)

    rec(0, max_w, 0)
    return rows


def count_stembridge_pairs(n: int, variant: str) -> int:
    """Pairs (sigma, tau) of total weight n.

    sigma is self-conjugate.  For gg1/gg2, tau is self-conjugate (gg2 further
    requires no zero entry in tau's Frobenius symbol); for lg1/lg2, tau is
    almost-self-conjugate, with the empty tau admitted vacuously.  The largest
    part of sigma is bounded by tau's diagonal, plus one for lg1.
    """
    if variant not in STEMBRIDGE_VARIANTS:
        raise ValueError(
            f"unknown variant {variant!r}; expected one of {', '.join(STEMBRIDGE_VARIANTS)}"
        )
    if n < 0:
        raise ValueError("weight must be nonnegative")
    sigma_by_weight: dict[int, dict[int, int]] = {}
    for w, largest, _ in _self_conjugate_stats(n):
        sigma_by_weight.setdefault(w, {}).setdefault(largest, 0)
        sigma_by_weight[w][largest] += 1
    if variant in ("gg1", "gg2"):
        tau_rows = [
            (w, d)
            for w, _, d in _self_conjugate_stats(n, min_entry=1 if variant == "gg2" else 0)
        ]
    else:
        tau_rows = _almost_self_conjugate_stats(n)
    tau_by_weight: dict[int, dict[int, int]] = {}
    for w, d in tau_rows:
        tau_by_weight.setdefault(w, {}).setdefault(d, 0)
        tau_by_weight[w][d] += 1
    bonus = 1 if variant == "lg1" else 0
    total = 0
    for w, by_largest in sigma_by_weight.items():
        tc = tau_by_weight.get(n - w)
        if not tc:
            continue
        for largest, count in by_largest.items():
            total += count * sum(c for d, c in tc.items() if largest <= d + bonus)
    return total


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def _lebesgue_class(alpha: int, beta: int) -> OverpartitionClass:
    k = 4 * alpha + beta
    return OverpartitionClass(
        base=PartitionClass(distinct=True, parity=Parity.ALL_EVEN),
        rules=(
            OverlineRule(low=max(k, 1), residue=(2, frozenset({k % 2})), cap=(2, k - 2)),
            OverlineRule(low=1, high=k - 1, residue=(4, frozenset({(beta + 2) % 4}))),
        ),
    )


_ODD = Parity.ALL_ODD
_EVEN = Parity.ALL_EVEN

PARTITION_CLASSES: dict[str, PartitionClass] = {
    "d": PartitionClass(distinct=True),
    "odd": PartitionClass(parity=_ODD),
    "rr1": PartitionClass(min_gap=2),
    "rr2": PartitionClass(min_gap=2, min_part=2),
    "gg1": PartitionClass(min_gap=2, forbid_consecutive_evens=True),
    "gg2": PartitionClass(min_gap=2, forbid_consecutive_evens=True, min_part=3),
    "dgg12": PartitionClass(
        min_gap=2, forbid_consecutive_evens=True, smallest_part_in=frozenset({1, 2})
    ),
    "lg1": PartitionClass(min_gap=2, forbid_consecutive_odds=True),
    "lg2": PartitionClass(min_gap=2, forbid_consecutive_odds=True, min_part=2),
    "mod5-14": PartitionClass(residue_filter=(5, frozenset({1, 4}))),
    "mod5-23": PartitionClass(residue_filter=(5, frozenset({2, 3}))),
    "mod8-147": PartitionClass(residue_filter=(8, frozenset({1, 4, 7}))),
    "mod8-345": PartitionClass(residue_filter=(8, frozenset({3, 4, 5}))),
    "mod8-156": PartitionClass(residue_filter=(8, frozenset({1, 5, 6}))),
    "mod8-237": PartitionClass(residue_filter=(8, frozenset({2, 3, 7}))),
    "distinct-mod4-012": PartitionClass(distinct=True, residue_filter=(4, frozenset({0, 1, 2}))),
    "distinct-mod4-023": PartitionClass(distinct=True, residue_filter=(4, frozenset({0, 2, 3}))),
    "distinct-even": PartitionClass(distinct=True, parity=_EVEN),
    "distinct-odd-least1": PartitionClass(distinct=True, parity=_ODD, must_contain=frozenset({1})),
}
for _k in range(1, 6):
    PARTITION_CLASSES[f"dk:k={_k}"] = PartitionClass(distinct=True, min_part=_k)

OVERPARTITION_CLASSES: dict[str, OverpartitionClass] = {
    "over": OverpartitionClass(PartitionClass(), (OverlineRule(),)),
    "e-over": OverpartitionClass(
        PartitionClass(distinct=True, parity=Parity.ALTERNATING_FROM_ODD_SMALLEST),
        (OverlineRule(cap=(1, 0)),),
    ),
    "rr1-over": OverpartitionClass(
        PartitionClass(distinct=True, parity=_ODD), (OverlineRule(cap=(1, 0)),)
    ),
    "rr1star-over": OverpartitionClass(
        PartitionClass(distinct=True, parity=_EVEN), (OverlineRule(cap=(1, 1)),)
    ),
    "rr2-over": OverpartitionClass(
        PartitionClass(distinct=True, parity=_EVEN), (OverlineRule(cap=(1, 0)),)
    ),
    "gg1-over": OverpartitionClass(
        PartitionClass(distinct=True, parity=_ODD),
        (OverlineRule(residue=(2, frozenset({1})), cap=(2, -1)),),
    ),
    "gg2-over": OverpartitionClass(
        PartitionClass(distinct=True, parity=_ODD, min_part=3),
        (OverlineRule(residue=(2, frozenset({1})), cap=(2, -1)),),
    ),
    "dgg12-over": OverpartitionClass(
        PartitionClass(distinct=True, parity=_ODD, must_contain=frozenset({1})),
        (OverlineRule(residue=(2, frozenset({1})), cap=(2, -1)),),
    ),
    "lg1-over": OverpartitionClass(
        PartitionClass(distinct=True, parity=_EVEN),
        (OverlineRule(residue=(2, frozenset({1})), cap=(2, 1)),),
    ),
    "lg2-over": OverpartitionClass(
        PartitionClass(distinct=True, parity=_EVEN),
        (OverlineRule(residue=(2, frozenset({1})), cap=(2, 0)),),
    ),
    "slater121-over": OverpartitionClass(
        PartitionClass(parity=Parity.SLATER121_PATTERN),
        (OverlineRule(residue=(2, frozenset({0})), cap=(2, -1)),),
    ),
}
for _k in range(1, 6):
    OVERPARTITION_CLASSES[f"dk-over:k={_k}"] = OverpartitionClass(
        PartitionClass(distinct=True, min_part=_k),
        (OverlineRule(high=_k - 1),),
    )

LEBESGUE_PAIRS: tuple[tuple[int, int], ...] = tuple(
    (a, b) for a in range(4) for b in (-1, 0, 1, 2) if 4 * a + b != 0
)
for _a, _b in LEBESGUE_PAIRS:
    OVERPARTITION_CLASSES[f"lebesgue:a={_a},b={_b}"] = _lebesgue_class(_a, _b)

_SPECIAL_CLASSES = ("almost-sc",)
_PAIR_CLASSES = tuple(f"stembridge:{v}" for v in STEMBRIDGE_VARIANTS)


def registered_class_ids() -> list[str]:
    return sorted(
        list(PARTITION_CLASSES)
        + list(OVERPARTITION_CLASSES)
        + list(_SPECIAL_CLASSES)
        + list(_PAIR_CLASSES)
    )


def _unknown(class_id: str) -> ValueError:
    return ValueError(
        f"unknown class {class_id!r}; registered: {', '.join(registered_class_ids())}"
    )


def class_kind(class_id: str) -> str:
    if class_id in PARTITION_CLASSES:
        return "partition"
    if class_id in OVERPARTITION_CLASSES:
        return "overpartition"
    if class_id in _SPECIAL_CLASSES:
        return "special"
    if class_id in _PAIR_CLASSES:
        return "pairs"
    raise _unknown(class_id)


def enumerate_class(class_id: str, n: int):
    """All members of the class at weight n.

    Order is decreasing lexicographic on the part sequence; overpartitions
    with equal parts are tie-broken by increasing overline tuple, so the
    plain partition precedes its overlined variants.
    """
    kind = class_kind(class_id)
    if kind == "partition":
        return sorted(iter_partitions(n, PARTITION_CLASSES[class_id]), reverse=True)
    if kind == "overpartition":
        out = sorted(iter_overpartitions(n, OVERPARTITION_CLASSES[class_id]),
                     key=lambda op: op.overlined)
        out.sort(key=lambda op: op.parts, reverse=True)
        return out
    if class_id == "almost-sc":
        return sorted(iter_almost_self_conjugate(n), reverse=True)
    raise ValueError(f"class {class_id!r} is count-only and cannot be enumerated")


def count_class(class_id: str, n: int) -> int:
    kind = class_kind(class_id)
    if kind == "partition":
        return sum(1 for _ in iter_partitions(n, PARTITION_CLASSES[class_id]))
    if kind == "overpartition":
        return sum(1 for _ in iter_overpartitions(n, OVERPARTITION_CLASSES[class_id]))
    if class_id == "almost-sc":
        return sum(1 for _ in iter_almost_self_conjugate(n))
    return count_stembridge_pairs(n, class_id.split(":", 1)[1])


def matches(class_id: str, obj) -> bool:
    """Independent membership re-check for enumerable classes."""
    kind = class_kind(class_id)
    if kind == "partition":
        return matches_partition(PARTITION_CLASSES[class_id], obj)
    if kind == "overpartition":
        return matches_overpartition(OVERPARTITION_CLASSES[class_id], obj)
    raise ValueError(f"class {class_id!r} has no membership predicate")
