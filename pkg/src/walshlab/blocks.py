"""Block plans and the mixed orthonormal system built on them.

A growth schedule g assigns block k the size N_k = 2**g(k).  Block k
consists of one leftover Walsh function phi_k (the k-th index of
popcount != 1) followed by the Rademacher run r_(F_{k-1}+1) .. r_(F_k),
where F_0 = 0 and F_k - F_{k-1} = N_k - 1.  Applying the 2^g(k) x
2^g(k) Olevskii matrix to that block yields the elements

    psi_i^(k) = 2**(-g(k)/2) * phi_k
                + sum_j entry(g(k), i, j) * r_(F_{k-1}+j-1),  j = 2..N_k,

which stay orthonormal, are uniformly bounded by the matrix row sums,
and have at most g(k)+1 nonzero Walsh coefficients each.

Two presets are provided: "desk" (g = 2, 4, 8; every block
materializable) and "paper" (g = 10, 100; block 2 exists only as
indexing, its Rademacher frequencies being astronomically wide).
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import olevskii
from .errors import BudgetError, HorizonError, ScheduleError
from .spectra import WalshSpectrum, phi_index, rademacher_index

# Blocks larger than this are refused by any operation that needs an
# N_k-sized vector or block-wide frequencies.
MATERIALIZATION_CAP = 1 << 20

PRESETS: dict[str, tuple[int, ...]] = {
    "desk": (2, 4, 8),
    "paper": (10, 100),
}


@dataclass(frozen=True)
class GrowthSchedule:
    """Strictly increasing exponents g(1..K); block k has 2**g(k) elements."""

    g: tuple[int, ...]

    def __post_init__(self):
        if not self.g:
            raise ScheduleError("schedule is empty")
        if any(x < 1 for x in self.g):
            raise ScheduleError(f"exponents must be >= 1, got {self.g}")

    @classmethod
    def preset(cls, name: str) -> "GrowthSchedule":
        if name not in PRESETS:
            raise ScheduleError(f"unknown preset {name!r}; have {sorted(PRESETS)}")
        return cls(PRESETS[name])

    @property
    def horizon(self) -> int:
        return len(self.g)


@dataclass(frozen=True)
class BlockPlan:
    """A validated schedule with block sizes and Rademacher offsets.

    N[k-1] = 2**g(k); F[k-1] is the index of the last Rademacher used
    by block k, with F_0 = 0 implicit.  The two flags are diagnostics
    for the hypotheses behind the democracy and greedy-rearrangement
    arguments; a plan may be valid without satisfying either.
    """

    schedule: GrowthSchedule
    N: tuple[int, ...] = field(init=False)
    F: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        g = self.schedule.g
        n = tuple(1 << e for e in g)
        f: list[int] = []
        acc = 0
        for size in n:
            acc += size - 1
            f.append(acc)
        object.__setattr__(self, "N", n)
        object.__setattr__(self, "F", tuple(f))

    @property
    def g(self) -> tuple[int, ...]:
        return self.schedule.g

    @property
    def horizon_blocks(self) -> int:
        return len(self.g)

    @property
    def horizon_size(self) -> int:
        """Total number of basis elements across all blocks."""
        return sum(self.N)

    @property
    def democracy_condition(self) -> bool:
        """g(k+1) >= 2 g(k) for all k (recomputed, never cached)."""
        g = self.g
        return all(g[k + 1] >= 2 * g[k] for k in range(len(g) - 1))

    @property
    def lambda_separation(self) -> bool:
        """g(k+1) >= 10 g(k) for all k (recomputed, never cached)."""
        g = self.g
        return all(g[k + 1] >= 10 * g[k] for k in range(len(g) - 1))

    def label(self) -> str:
        return "g=" + ",".join(str(x) for x in self.g)

    # -- index maps ---------------------------------------------------------

    def to_global(self, k: int, i: int) -> int:
        """Global position of element i of block k (both 1-based)."""
        k, i = int(k), int(i)
        self._check_block(k)
        if not 1 <= i <= self.N[k - 1]:
            raise HorizonError(f"i={i} out of range for block {k}")
        return sum(self.N[: k - 1]) + i

    def to_block(self, m: int) -> tuple[int, int]:
        """Inverse of to_global."""
        m = int(m)
        if not 1 <= m <= self.horizon_size:
            raise HorizonError(
                f"m={m} outside horizon 1..{self.horizon_size}"
            )
        rest = m
        for k, size in enumerate(self.N, start=1):
            if rest <= size:
                return k, rest
            rest -= size
        raise AssertionError("unreachable")

    def _check_block(self, k: int) -> None:
        if not 1 <= k <= len(self.N):
            raise HorizonError(f"block {k} outside horizon K={len(self.N)}")

    def _check_cap(self, k: int) -> None:
        if self.N[k - 1] > MATERIALIZATION_CAP:
            raise BudgetError(
                f"block {k} has {self.N[k - 1]} elements, "
                f"cap is {MATERIALIZATION_CAP}"
            )

    # -- block structure ----------------------------------------------------

    def block_of_rademacher(self, j: int) -> int:
        """Block whose Rademacher run contains r_j."""
        if not 1 <= j <= self.F[-1]:
            raise HorizonError(f"r_{j} outside horizon (F_K={self.F[-1]})")
        return bisect_left(self.F, j) + 1

    def symbol_frequencies(self, k: int) -> list[int]:
        """Frequencies of block k's symbols: phi_k then its Rademachers."""
        self._check_block(k)
        self._check_cap(k)
        f_prev = self.F[k - 2] if k >= 2 else 0
        out = [phi_index(k)]
        out.extend(
            rademacher_index(f_prev + j - 1) for j in range(2, self.N[k - 1] + 1)
        )
        return out

    def psi_spectrum(self, k: int, i: int) -> WalshSpectrum:
        """Element i of block k as a sparse spectrum (g(k)+1 terms)."""
        k, i = int(k), int(i)
        self._check_block(k)
        self._check_cap(k)
        kk = self.g[k - 1]
        if not 1 <= i <= self.N[k - 1]:
            raise HorizonError(f"i={i} out of range for block {k}")
        f_prev = self.F[k - 2] if k >= 2 else 0
        terms = {phi_index(k): 2.0 ** (-kk / 2.0)}
        for j, e in olevskii.row_entries(kk, i)[1:]:
            terms[rademacher_index(f_prev + j - 1)] = e.value(kk)
        return WalshSpectrum(terms)

    def sum_spectrum(self, indices: Iterable) -> WalshSpectrum:
        """Spectrum of the plain sum of the selected elements.

        Accepts global positions or (k, i) pairs.  Goes block by block
        through weighted column sums, so the cost is bounded by the
        touched block sizes, not by the number of selected elements.
        """
        return self.weighted_spectrum((m, 1.0) for m in indices)

    def weighted_spectrum(
        self, entries: Iterable[tuple[object, float]]
    ) -> WalshSpectrum:
        """Spectrum of sum of w_m * psi_m over (index, weight) pairs."""
        per_block: dict[int, np.ndarray] = {}
        for m, w in entries:
            k, i = m if isinstance(m, tuple) else self.to_block(m)
            self._check_block(k)
            if not 1 <= i <= self.N[k - 1]:
                raise HorizonError(f"i={i} out of range for block {k}")
            self._check_cap(k)
            if k not in per_block:
                per_block[k] = np.zeros(self.N[k - 1])
            per_block[k][i - 1] += w
        terms: dict[int, float] = {}
        for k in sorted(per_block):
            coeffs = olevskii.rmatvec(self.g[k - 1], per_block[k])
            freqs = self.symbol_frequencies(k)
            for n, c in zip(freqs, coeffs):
                if c != 0.0:
                    terms[n] = terms.get(n, 0.0) + float(c)
        return WalshSpectrum(terms)


def validate_schedule(schedule: GrowthSchedule | Sequence[int]) -> BlockPlan:
    """Build a plan, rejecting non-increasing schedules.

    The democracy and separation flags are only diagnostics; a weak
    schedule still validates.
    """
    if not isinstance(schedule, GrowthSchedule):
        schedule = GrowthSchedule(tuple(int(x) for x in schedule))
    g = schedule.g
    for k in range(len(g) - 1):
        if g[k + 1] <= g[k]:
            raise ScheduleError(
                f"schedule must increase strictly: g({k + 2})={g[k + 1]} "
                f"<= g({k + 1})={g[k]}"
            )
    return BlockPlan(schedule)


def plan_from_json(doc: dict) -> BlockPlan:
    if "preset" in doc:
        return validate_schedule(GrowthSchedule.preset(doc["preset"]))
    if "g" in doc:
        return validate_schedule(doc["g"])
    raise ScheduleError("plan document needs a 'g' list or a 'preset' name")


def load_plan(source: str) -> BlockPlan:
    """Plan from a preset name or a JSON file path."""
    if source in PRESETS:
        return validate_schedule(GrowthSchedule.preset(source))
    with open(source) as fh:
        return plan_from_json(json.load(fh))
