"""Expansion coefficients, greedy orderings, approximants, partial sums.

The greedy ordering lists the nonzero coefficients by decreasing
magnitude, breaking ties by increasing basis index.  Coefficients of
magnitude below ``ZERO_TOL`` are treated as zero so that rounding noise
from analysis cannot leak into the ordering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import olevskii
from .blocks import BlockPlan
from .errors import HorizonError
from .norms import NormEstimate
from .spectra import WalshSpectrum, phi_index

ZERO_TOL = 1e-15


@dataclass(frozen=True)
class CoefficientList:
    """Expansion coefficients keyed by global basis position."""

    entries: tuple[tuple[int, float], ...]

    def __post_init__(self):
        seen = set()
        for m, _ in self.entries:
            if m in seen:
                raise ValueError(f"duplicate basis index {m}")
            seen.add(m)

    @classmethod
    def from_pairs(cls, pairs) -> "CoefficientList":
        return cls(tuple((int(m), float(c)) for m, c in pairs))

    def as_dict(self) -> dict[int, float]:
        return dict(self.entries)

    def support(self) -> list[int]:
        """Indices with coefficients above the zero threshold."""
        return [m for m, c in self.entries if abs(c) > ZERO_TOL]

    def l2(self) -> float:
        return float(np.sqrt(sum(c * c for _, c in self.entries)))

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class GreedyOrdering:
    """rho as the tuple of basis indices in greedy order."""

    rho: tuple[int, ...]


@dataclass
class TraceStep:
    m: int
    selected: int
    coefficient: float
    residual_l2: float
    norms: dict[float, NormEstimate] = field(default_factory=dict)


@dataclass
class ApproximantTrace:
    steps: list[TraceStep] = field(default_factory=list)


def analyze(f: WalshSpectrum, plan: BlockPlan) -> CoefficientList:
    """Coefficients <f, psi_m> for every element sharing a frequency with f.

    Every frequency of f must belong to the plan's horizon (one of the
    phi indices or a Rademacher below F_K); otherwise the expansion
    would extend past the materialized blocks.  Values with magnitude
    <= ZERO_TOL are dropped.
    """
    per_block: dict[int, np.ndarray] = {}
    phis = {phi_index(k): k for k in range(1, plan.horizon_blocks + 1)}
    for n, c in f.items():
        if n.bit_count() == 1:
            j = n.bit_length()
            k = plan.block_of_rademacher(j)
            f_prev = plan.F[k - 2] if k >= 2 else 0
            col = j - f_prev + 1
        else:
            k = phis.get(n)
            if k is None:
                raise HorizonError(
                    f"frequency {n:#x} is not spanned by the first "
                    f"{plan.horizon_blocks} blocks"
                )
            col = 1
        plan._check_cap(k)
        if k not in per_block:
            per_block[k] = np.zeros(plan.N[k - 1])
        per_block[k][col - 1] += c
    pairs: list[tuple[int, float]] = []
    for k in sorted(per_block):
        row_values = olevskii.matvec(plan.g[k - 1], per_block[k])
        base = plan.to_global(k, 1) - 1
        for i, c in enumerate(row_values, start=1):
            if abs(c) > ZERO_TOL:
                pairs.append((base + i, float(c)))
    return CoefficientList.from_pairs(pairs)


def synthesize_coefficients(
    coeffs: CoefficientList, plan: BlockPlan
) -> WalshSpectrum:
    """Spectrum of sum of c_m psi_m."""
    return plan.weighted_spectrum(coeffs.entries)


def greedy_order(coeffs: CoefficientList) -> GreedyOrdering:
    """Magnitude-decreasing order of the nonzero support, ties by index."""
    live = [(m, c) for m, c in coeffs.entries if abs(c) > ZERO_TOL]
    live.sort(key=lambda mc: (-abs(mc[1]), mc[0]))
    return GreedyOrdering(tuple(m for m, _ in live))


def greedy_approximant(
    f: WalshSpectrum,
    plan: BlockPlan,
    m: int,
    norm_ps: tuple[float, ...] = (),
    norm_fn=None,
) -> tuple[WalshSpectrum, ApproximantTrace]:
    """First m greedy terms of f's expansion, plus the selection trace.

    The trace carries the exact L2 residual at every step (a Parseval
    tail, no synthesis involved).  Extra residual norms are recorded
    for each p in ``norm_ps`` using ``norm_fn(spectrum, p)``.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    coeffs = analyze(f, plan)
    by_index = coeffs.as_dict()
    order = greedy_order(coeffs).rho
    chosen = order[: min(m, len(order))]
    # suffix sums give each Parseval tail directly, with no cancellation:
    # the residual at full support is an exact 0
    tail_sq = [0.0] * (len(order) + 1)
    for j in range(len(order) - 1, -1, -1):
        c = by_index[order[j]]
        tail_sq[j] = tail_sq[j + 1] + c * c
    trace = ApproximantTrace()
    running: list[tuple[int, float]] = []
    for step, sel in enumerate(chosen, start=1):
        c = by_index[sel]
        running.append((sel, c))
        entry = TraceStep(
            m=step,
            selected=sel,
            coefficient=c,
            residual_l2=float(np.sqrt(tail_sq[step])),
        )
        if norm_ps and norm_fn is not None:
            residual = f - plan.weighted_spectrum(running)
            for p in norm_ps:
                entry.norms[p] = norm_fn(residual, p)
        trace.steps.append(entry)
    approx = plan.weighted_spectrum(running)
    return approx, trace


def partial_sum(f: WalshSpectrum, plan: BlockPlan, n: int) -> WalshSpectrum:
    """Linear partial sum S_n f over the first n basis elements.

    Full blocks act as identity on their own frequencies, so only the
    one straddled block needs an analysis/synthesis round trip.
    """
    if n < 0:
        raise HorizonError(f"n must be >= 0, got {n}")
    if n > plan.horizon_size:
        raise HorizonError(f"n={n} beyond horizon {plan.horizon_size}")
    if n == 0:
        return WalshSpectrum()
    k_edge, i_edge = plan.to_block(n)
    full_cut = plan.F[k_edge - 2] if k_edge >= 2 else 0
    phi_blocks = {
        phi_index(k): k for k in range(1, plan.horizon_blocks + 1)
    }
    kept: dict[int, float] = {}
    edge_symbols = np.zeros(plan.N[k_edge - 1])
    for freq, c in f.items():
        if freq.bit_count() == 1:
            j = freq.bit_length()
            if j > plan.F[-1]:
                raise HorizonError(f"r_{j} outside horizon (F_K={plan.F[-1]})")
            if j <= full_cut:
                kept[freq] = c
            elif j <= plan.F[k_edge - 1]:
                edge_symbols[j - full_cut] += c
            # later blocks fall outside S_n entirely
        else:
            k = phi_blocks.get(freq)
            if k is None:
                raise HorizonError(
                    f"frequency {freq:#x} is not spanned by the plan"
                )
            if k < k_edge:
                kept[freq] = c
            elif k == k_edge:
                edge_symbols[0] += c
    if i_edge == plan.N[k_edge - 1]:
        projected = edge_symbols
    else:
        kk = plan.g[k_edge - 1]
        row_values = olevskii.matvec(kk, edge_symbols)
        row_values[i_edge:] = 0.0
        projected = olevskii.rmatvec(kk, row_values)
    freqs = plan.symbol_frequencies(k_edge)
    for freq, c in zip(freqs, projected):
        if c != 0.0:
            kept[freq] = kept.get(freq, 0.0) + float(c)
    return WalshSpectrum(kept)


@dataclass(frozen=True)
class LambdaPartition:
    """Per-block split of coefficients by magnitude thresholds.

    Block k with size N splits at 1/N and N**(-1/10): ``small`` takes
    |c| <= 1/N, ``large`` takes |c| >= N**(-1/10), ``middle`` is the
    open band between.  ``plan_separated`` says the plan guarantees
    1/N_k >= N_{k+1}**(-1/10) for all k (so middle bands cannot
    interleave across blocks); ``data_separated`` says the actual
    middle-band magnitudes decrease strictly from block to block.
    """

    middle: dict[int, tuple[int, ...]]
    small: dict[int, tuple[int, ...]]
    large: dict[int, tuple[int, ...]]
    plan_separated: bool
    data_separated: bool


def lambda_classify(coeffs: CoefficientList, plan: BlockPlan) -> LambdaPartition:
    """Classify each coefficient within its block's magnitude bands."""
    middle: dict[int, list[int]] = {}
    small: dict[int, list[int]] = {}
    large: dict[int, list[int]] = {}
    mid_bounds: dict[int, tuple[float, float]] = {}
    for m, c in coeffs.entries:
        k, _ = plan.to_block(m)
        n_k = plan.N[k - 1]
        lo, hi = 1.0 / n_k, float(n_k) ** -0.1
        mag = abs(c)
        if mag <= lo:
            small.setdefault(k, []).append(m)
        elif mag >= hi:
            large.setdefault(k, []).append(m)
        else:
            middle.setdefault(k, []).append(m)
            lo_seen, hi_seen = mid_bounds.get(k, (np.inf, 0.0))
            mid_bounds[k] = (min(lo_seen, mag), max(hi_seen, mag))
    plan_sep = all(
        1.0 / plan.N[k] >= float(plan.N[k + 1]) ** -0.1
        for k in range(plan.horizon_blocks - 1)
    )
    # consecutive occupied blocks ordered => all pairs ordered (transitive)
    data_sep = True
    ks = sorted(mid_bounds)
    for a, b in zip(ks, ks[1:]):
        if mid_bounds[a][0] <= mid_bounds[b][1]:
            data_sep = False
    return LambdaPartition(
        middle={k: tuple(v) for k, v in middle.items()},
        small={k: tuple(v) for k, v in small.items()},
        large={k: tuple(v) for k, v in large.items()},
        plan_separated=plan_sep,
        data_separated=data_sep,
    )


# -- JSON coefficient files ---------------------------------------------------

def coefficients_to_json(coeffs: CoefficientList) -> dict:
    return {"coeffs": [{"m": m, "c": c} for m, c in coeffs.entries]}


def coefficients_from_json(doc: dict) -> CoefficientList:
    return CoefficientList.from_pairs(
        (item["m"], item["c"]) for item in doc["coeffs"]
    )


def save_coefficients(coeffs: CoefficientList, path) -> None:
    with open(path, "w") as fh:
        json.dump(coefficients_to_json(coeffs), fh, indent=1)
        fh.write("\n")


def load_coefficients(path) -> CoefficientList:
    with open(path) as fh:
        return coefficients_from_json(json.load(fh))
