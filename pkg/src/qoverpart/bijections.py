"""Weight-preserving bijections onto overpartition classes.

Three families, all sharing one shape: peel a structural statistic off each
part, record what was peeled as overlined magnitudes (via conjugation or
marked positions), and invert by adding the statistic back.  Inputs are
decreasing partitions; outputs are Overpartition values.  Every map validates
its input and its own output, so a partition outside the intended domain
fails loudly instead of producing garbage.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Callable

from .partitions import (
    Overpartition,
    Partition,
    conjugate,
    partition,
    pointwise_add,
    t_of_binary,
)


class HVariant(Enum):
    OE = "oe"
    EO = "eo"


class GVariant(Enum):
    GG = "gg"
    LG = "lg"


def _require_strict(seq, gap: int, what: str) -> None:
    for i, p in enumerate(seq):
        if p < 1:
            raise ValueError(f"{what}: entry {p} at position {i} is not positive")
        if i and seq[i - 1] - p < gap:
            raise ValueError(
                f"{what}: entries {seq[i - 1]}, {p} violate the minimum gap {gap}"
            )


def _require_parity(seq, parity: int, what: str) -> None:
    for p in seq:
        if p % 2 != parity:
            raise ValueError(f"{what}: entry {p} has the wrong parity")


# ---------------------------------------------------------------------------
# f: distinct parts -> alternating-parity parts with overlines bounded by length
# ---------------------------------------------------------------------------


def map_f(parts: Partition) -> Overpartition:
    """Subtract the change-count statistic of the parity deviation word.

    Read the parts in increasing order; position j should hold a part
    congruent to j mod 2.  The deviation word feeds t_of_binary, the
    statistic is subtracted pointwise, and its conjugate becomes the
    overlined magnitudes.
    """
    _require_strict(parts, 1, "map f input")
    inc = parts[::-1]
    if all((p - (j + 1)) % 2 == 0 for j, p in enumerate(inc)):
        # already the target shape; the general route gives an all-zero
        # statistic and agrees, but the fixed point is the map's definition
        return Overpartition(parts, ())
    bits = tuple((p - (j + 1)) % 2 for j, p in enumerate(inc))
    t = t_of_binary(bits)
    mu = tuple(p - t[j] for j, p in enumerate(inc))[::-1]
    _require_strict(mu, 1, "map f output")
    return Overpartition(mu, conjugate(partition(t)))


def inverse_f(op: Overpartition) -> Partition:
    mu, over = op
    _require_strict(mu, 1, "inverse f parts")
    for j, p in enumerate(mu[::-1]):
        if (p - (j + 1)) % 2:
            raise ValueError(
                f"inverse f parts: {p} at increasing position {j + 1} breaks the parity pattern"
            )
    lam = pointwise_add(mu, conjugate(over))
    _require_strict(lam, 1, "inverse f result")
    return lam


# ---------------------------------------------------------------------------
# h: gap-2 parts -> single-parity parts plus conjugated residue
# ---------------------------------------------------------------------------


def map_h(parts: Partition, variant: HVariant) -> Overpartition:
    """Flatten a gap-2 partition onto one parity.

    ell_j counts the adjacent (odd, even) pairs for OE, (even, odd) for EO,
    at positions j and later.  Each part sheds 2*ell_j, then one more if its
    parity is still wrong; the shed amounts form a weakly decreasing sequence
    whose conjugate is overlined.  Under EO the last entry can reach zero:
    the empty slot is dropped and its existence is signalled by the largest
    overline exceeding the remaining length by one.
    """
    _require_strict(parts, 2, "map h input")
    k = len(parts)
    lead = 1 if variant is HVariant.OE else 0
    target = lead
    marks = [
        1 if parts[i] % 2 == lead and parts[i + 1] % 2 != lead else 0
        for i in range(k - 1)
    ]
    ell = [0] * k
    for j in range(k - 2, -1, -1):
        ell[j] = ell[j + 1] + marks[j]
    pi = []
    for j, p in enumerate(parts):
        q = p - 2 * ell[j]
        q -= (q - target) % 2
        pi.append(q)
    vstar = [p - q for p, q in zip(parts, pi)]
    for i in range(1, len(vstar)):
        if vstar[i] > vstar[i - 1]:
            raise ValueError("map h shed amounts are not weakly decreasing")
    if pi and pi[-1] == 0:
        if variant is HVariant.OE:
            raise ValueError("map h produced an empty slot outside the EO variant")
        pi.pop()
    _require_strict(pi, 2, "map h output")
    _require_parity(pi, target, "map h output")
    return Overpartition(tuple(pi), conjugate(partition(vstar)))


def inverse_h(op: Overpartition, variant: HVariant) -> Partition:
    pi, over = op
    target = 1 if variant is HVariant.OE else 0
    _require_strict(pi, 2, "inverse h parts")
    _require_parity(pi, target, "inverse h parts")
    slots = list(pi)
    if variant is HVariant.EO and over and over[0] == len(pi) + 1:
        slots.append(0)
    lam = pointwise_add(slots, conjugate(over))
    _require_strict(lam, 2, "inverse h result")
    return lam


# ---------------------------------------------------------------------------
# g: gap-2 parts with a forbidden even (or odd) chain -> marked single parity
# ---------------------------------------------------------------------------


def map_g(parts: Partition, variant: GVariant) -> Overpartition:
    """Mark the parts of the minority parity and straighten the rest.

    T flags even parts for GG, odd parts for LG.  Part j loses its flag and
    twice the number of flagged parts below it; flagged positions are
    remembered as overlines 2j-1.  Under LG the bottom part can straighten
    to zero, in which case the slot is dropped and the largest overline
    equals twice the remaining length plus one.
    """
    _require_strict(parts, 2, "map g input")
    marked = 0 if variant is GVariant.GG else 1
    for i in range(len(parts) - 1):
        if parts[i] % 2 == marked and parts[i] - parts[i + 1] == 2:
            raise ValueError(
                f"map g input: parts {parts[i]}, {parts[i + 1]} form a forbidden chain"
            )
    k = len(parts)
    T = [1 if p % 2 == marked else 0 for p in parts]
    suffix = [0] * (k + 1)
    for j in range(k - 1, -1, -1):
        suffix[j] = suffix[j + 1] + T[j]
    tau = [parts[j] - T[j] - 2 * suffix[j + 1] for j in range(k)]
    over = tuple(2 * (j + 1) - 1 for j in range(k - 1, -1, -1) if T[j])
    if tau and tau[-1] == 0:
        if variant is GVariant.GG:
            raise ValueError("map g produced an empty slot outside the LG variant")
        tau.pop()
    _require_strict(tau, 2, "map g output")
    _require_parity(tau, 1 - marked, "map g output")
    return Overpartition(tuple(tau), over)


def inverse_g(op: Overpartition, variant: GVariant) -> Partition:
    tau, over = op
    marked = 0 if variant is GVariant.GG else 1
    _require_strict(tau, 2, "inverse g parts")
    _require_parity(tau, 1 - marked, "inverse g parts")
    slots = list(tau)
    if variant is GVariant.LG and over and over[0] == 2 * len(tau) + 1:
        slots.append(0)
    k = len(slots)
    flagged = set()
    for v in over:
        if v % 2 == 0:
            raise ValueError(f"inverse g overline {v} must be odd")
        j = (v + 1) // 2
        if j > k:
            raise ValueError(f"inverse g overline {v} points past position {k}")
        flagged.add(j - 1)
    T = [1 if j in flagged else 0 for j in range(k)]
    suffix = [0] * (k + 1)
    for j in range(k - 1, -1, -1):
        suffix[j] = suffix[j + 1] + T[j]
    lam = tuple(slots[j] + T[j] + 2 * suffix[j + 1] for j in range(k))
    _require_strict(lam, 2, "inverse g result")
    return lam


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BijectionSpec:
    forward: Callable[[Partition], Overpartition]
    inverse: Callable[[Overpartition], Partition]
    source: str
    target: str


MAPS: dict[str, BijectionSpec] = {
    "f": BijectionSpec(map_f, inverse_f, "d", "e-over"),
    "h-oe": BijectionSpec(
        partial(map_h, variant=HVariant.OE),
        partial(inverse_h, variant=HVariant.OE),
        "rr1",
        "rr1-over",
    ),
    "h-eo": BijectionSpec(
        partial(map_h, variant=HVariant.EO),
        partial(inverse_h, variant=HVariant.EO),
        "rr1",
        "rr1star-over",
    ),
    "g-gg": BijectionSpec(
        partial(map_g, variant=GVariant.GG),
        partial(inverse_g, variant=GVariant.GG),
        "gg1",
        "gg1-over",
    ),
    "g-lg": BijectionSpec(
        partial(map_g, variant=GVariant.LG),
        partial(inverse_g, variant=GVariant.LG),
        "lg1",
        "lg1-over",
    ),
}


def registered_map_ids() -> list[str]:
    return sorted(MAPS)


def get_map(map_id: str) -> BijectionSpec:
    try:
        return MAPS[map_id]
    except KeyError:
        raise ValueError(
            f"unknown map {map_id!r}; registered: {', '.join(registered_map_ids())}"
        ) from None
