"""Independent deciders for PARTITION and 3-PARTITION.

These never touch the game engine; they are the ground truth the reductions
are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


class InstanceError(ValueError):
    """Malformed problem instance."""


@dataclass(frozen=True)
class PartitionInstance:
    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise InstanceError("empty instance")
        if len(vals) < 2:
            raise InstanceError("PARTITION needs at least 2 values")
        if any(v <= 0 for v in vals):
            raise InstanceError("values must be positive")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def total(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class ThreePartitionInstance:
    values: tuple
    n: int

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if self.n < 1:
            raise InstanceError("n must be >= 1")
        if len(vals) != 3 * self.n:
            raise InstanceError(f"expected {3 * self.n} values, got {len(vals)}")
        if any(v <= 0 for v in vals):
            raise InstanceError("values must be positive")
        if sum(vals) % self.n:
            raise InstanceError(f"sum {sum(vals)} not divisible by n={self.n}")

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def target(self) -> int:
        return self.total // self.n


@dataclass(frozen=True)
class OracleResult:
    verdict: bool
    witness: Optional[tuple] = None  # groups of indices into the instance

    def group_sums(self, values: Sequence[int]) -> list:
        return [sum(values[i] for i in g) for g in self.witness or ()]


def oracle_partition(inst: PartitionInstance) -> OracleResult:
    """Subset-sum DP to S/2 with witness reconstruction."""
    values = inst.values
    total = sum(values)
    if total % 2:
        return OracleResult(False)
    half = total // 2
    # parent[s] = index of the item that first reached sum s
    parent = {0: None}
    for i, v in enumerate(values):
        for s in sorted(parent, reverse=True):
            t = s + v
            if t <= half and t not in parent:
                parent[t] = (i, s)
        if half in parent:
            break
    if half not in parent:
        return OracleResult(False)
    chosen = []
    s = half
    while parent[s] is not None:
        i, prev = parent[s]
        chosen.append(i)
        s = prev
    first = tuple(sorted(chosen))
    rest = tuple(i for i in range(len(values)) if i not in set(first))
    return OracleResult(True, (first, rest))


def oracle_3partition(inst: ThreePartitionInstance, *, strict_size3: bool = False) -> OracleResult:
    """Backtracking over element-to-group assignments.

    Groups are filled in canonical order (an element only opens the first
    empty group) and capped at S/n.  With ``strict_size3`` every group must
    hold exactly three elements, the textbook definition.
    """
    values = inst.values
    n, target = inst.n, inst.target
    order = sorted(range(len(values)), key=lambda i: -values[i])
    sums = [0] * n
    groups: list = [[] for _ in range(n)]

    def place(k: int) -> bool:
        if k == len(order):
            return all(s == target for s in sums) and (
                not strict_size3 or all(len(g) == 3 for g in groups)
            )
        i = order[k]
        v = values[i]
        tried = set()
        for g in range(n):
            if sums[g] + v > target or sums[g] in tried:
                continue
            if strict_size3 and len(groups[g]) == 3:
                continue
            tried.add(sums[g]) if not strict_size3 else tried.add((sums[g], len(groups[g])))
            sums[g] += v
            groups[g].append(i)
            if place(k + 1):
                return True
            sums[g] -= v
            groups[g].pop()
        return False

    if place(0):
        return OracleResult(True, tuple(tuple(sorted(g)) for g in groups))
    return OracleResult(False)
