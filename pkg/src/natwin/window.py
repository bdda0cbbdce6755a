"""
Finite windows [1, N] of subsets of the positive integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy.ndimage import find_objects, label

from src import config
from src.core.errors import HorizonError


@dataclass(frozen=True, eq=False)
class WindowSet:
    """bits[k] is True iff k+1 is a member; elements are 1-based."""
    horizon: int
    bits: np.ndarray

    def __post_init__(self):
        if not 1 <= self.horizon <= config.MAX_HORIZON:
            raise HorizonError(f"horizon {self.horizon} outside [1, {config.MAX_HORIZON}]")
        arr = np.asarray(self.bits, dtype=bool)
        if arr.shape != (self.horizon,):
            raise ValueError(f"bit vector has shape {arr.shape}, expected ({self.horizon},)")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "bits", arr)

    @classmethod
    def from_members(cls, horizon: int, members: Iterable[int]) -> "WindowSet":
        idx = np.fromiter((int(k) for k in members), dtype=np.int64)
        if idx.size and (idx.min() < 1 or idx.max() > horizon):
            raise HorizonError(f"members must lie in [1, {horizon}]")
        bits = np.zeros(horizon, dtype=bool)
        bits[idx - 1] = True
        return cls(horizon, bits)

    @classmethod
    def from_ranges(cls, horizon: int, ranges: Iterable[tuple[int, int]]) -> "WindowSet":
        bits = np.zeros(horizon, dtype=bool)
        for a, b in ranges:
            if not 1 <= a <= b <= horizon:
                raise HorizonError(f"range {a}-{b} outside [1, {horizon}]")
            bits[a - 1:b] = True
        return cls(horizon, bits)

    @classmethod
    def interval(cls, horizon: int, a: int, b: int) -> "WindowSet":
        return cls.from_ranges(horizon, [(a, b)])

    @classmethod
    def evens(cls, horizon: int) -> "WindowSet":
        return cls(horizon, np.arange(1, horizon + 1) % 2 == 0)

    @classmethod
    def odds(cls, horizon: int) -> "WindowSet":
        return cls(horizon, np.arange(1, horizon + 1) % 2 == 1)

    @classmethod
    def squares(cls, horizon: int) -> "WindowSet":
        roots = np.arange(1, int(np.sqrt(horizon)) + 2)
        return cls.from_members(horizon, roots[roots * roots <= horizon] ** 2)

    @classmethod
    def powers_of_two(cls, horizon: int) -> "WindowSet":
        return cls.from_members(horizon, [1 << e for e in range(horizon.bit_length()) if 1 << e <= horizon])

    @cached_property
    def members(self) -> np.ndarray:
        return np.flatnonzero(self.bits) + 1

    def runs(self) -> list[tuple[int, int]]:
        """Maximal blocks of consecutive members, as 1-based inclusive (start, end)."""
        labeled, _ = label(self.bits)
        return [(int(sl[0].start) + 1, int(sl[0].stop)) for sl in find_objects(labeled)]

    def __contains__(self, k: int) -> bool:
        return 1 <= k <= self.horizon and bool(self.bits[k - 1])

    def __len__(self) -> int:
        return int(self.bits.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WindowSet):
            return NotImplemented
        return self.horizon == other.horizon and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((self.horizon, np.packbits(self.bits).tobytes()))

    def __repr__(self) -> str:
        return f"WindowSet(N={self.horizon}, runs={len(self.runs())}, size={len(self)})"
