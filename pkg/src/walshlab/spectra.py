"""Walsh functions on [0,1) and exact algebra on sparse Walsh spectra.

Conventions used throughout the library:

* A frequency is a non-negative Python int read as a Paley index:
  bit j-1 of ``n`` is set iff the Rademacher function r_j is a factor of
  W_n.  Widths are unbounded, so indices such as 2**272 are ordinary
  values here.
* A dyadic point is the cell ``c`` at depth ``D``, standing for the
  interval [c*2**-D, (c+1)*2**-D).  The binary digits t_1..t_D of the
  point are the bits of ``c`` from most significant to least, and
  r_j(t) = (-1)**t_j.
* A spectrum maps frequencies to real coefficients; it represents the
  finite sum f(t) = sum_n c_n W_n(t).  W_a * W_b = W_(a XOR b), which is
  what makes pointwise products XOR convolutions.
* The dense transform pair is normalized so that analysis divides by
  2**D (coefficients are cell means against W_n) and synthesis is the
  plain signed sum, hence coefficients equal inner products <f, W_n>.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import BudgetError, DepthError

# Dense vectors above this depth are refused (2**30 cells).
MAX_SYNTH_DEPTH = 30

# Default cap on pair products formed by one XOR convolution.
PRODUCT_PAIR_BUDGET = 1 << 24

# Above this many pair products the dict convolution switches to the
# packed numpy path.
_DICT_PRODUCT_CUTOFF = 1 << 14

Frequency = int


@dataclass(frozen=True)
class DyadicPoint:
    """Dyadic cell ``cell`` at depth ``depth``; all Walsh functions of
    width <= depth are constant on it."""

    depth: int
    cell: int

    def __post_init__(self) -> None:
        # arbitrary-width arithmetic needs true Python ints; numpy
        # integers would overflow silently under wide shifts
        object.__setattr__(self, "depth", int(self.depth))
        object.__setattr__(self, "cell", int(self.cell))
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        if not 0 <= self.cell < (1 << self.depth):
            raise ValueError(
                f"cell {self.cell} out of range for depth {self.depth}"
            )

    def bits(self) -> int:
        """Bit mask with t_j at bit j-1 (digit order reversed from cell)."""
        c, out = self.cell, 0
        for _ in range(self.depth):
            out = (out << 1) | (c & 1)
            c >>= 1
        return out

    def as_float(self) -> float:
        """Left endpoint of the cell."""
        return self.cell / (1 << self.depth)


def rademacher_index(j: int) -> Frequency:
    """Paley index of the j-th Rademacher function, j >= 1."""
    j = int(j)
    if j < 1:
        raise ValueError(f"Rademacher index must be >= 1, got {j}")
    return 1 << (j - 1)


def phi_index(k: int) -> Frequency:
    """k-th non-negative integer whose popcount is not 1 (k >= 1).

    These are the Walsh indices left over once the Rademacher subsystem
    (popcount exactly 1) is removed; 0 is included, so the first few
    values are 0, 3, 5, 6, 7, 9, ...
    """
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    seen = 0
    n = 0
    while True:
        if n.bit_count() != 1:
            seen += 1
            if seen == k:
                return n
        n += 1


def walsh_eval(n: Frequency, t: DyadicPoint) -> int:
    """Value of W_n on the cell ``t``, always +1 or -1.

    The cell must be deep enough to determine the value, i.e.
    t.depth >= bit width of n.
    """
    n = int(n)
    if n < 0:
        raise ValueError(f"frequency must be >= 0, got {n}")
    if t.depth < n.bit_length():
        raise DepthError(
            f"depth {t.depth} does not determine W_n for n of width "
            f"{n.bit_length()}"
        )
    return -1 if (n & t.bits()).bit_count() & 1 else 1


class WalshSpectrum:
    """Immutable finite linear combination of Walsh functions.

    Stored as a frequency -> coefficient map with exact zeros pruned.
    Supports +, -, scalar *, and * between spectra (pointwise product
    of the represented functions, i.e. XOR convolution).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, float] | Iterable[tuple[int, float]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, float] = {}
        for n, c in items:
            n = int(n)  # numpy ints would overflow wide-shift arithmetic
            if n < 0:
                raise ValueError(f"frequency must be >= 0, got {n}")
            acc[n] = acc.get(n, 0.0) + float(c)
        self._terms = {n: c for n, c in acc.items() if c != 0.0}

    @classmethod
    def _from_clean_dict(cls, terms: dict[int, float]) -> "WalshSpectrum":
        # internal: terms already pruned and owned by the caller
        out = object.__new__(cls)
        out._terms = terms
        return out

    @classmethod
    def single(cls, n: Frequency, c: float = 1.0) -> "WalshSpectrum":
        return cls({n: c})

    def items(self):
        return self._terms.items()

    def __getitem__(self, n: Frequency) -> float:
        return self._terms.get(n, 0.0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Frequency]:
        return iter(self._terms)

    def __contains__(self, n: Frequency) -> bool:
        return n in self._terms

    def depth(self) -> int:
        """Max bit width over frequencies; 0 for the empty spectrum."""
        return max((n.bit_length() for n in self._terms), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self._terms == other._terms

    def allclose(self, other: "WalshSpectrum", tol: float = 1e-12) -> bool:
        keys = self._terms.keys() | other._terms.keys()
        return all(abs(self[n] - other[n]) <= tol for n in keys)

    def __add__(self, other: "WalshSpectrum") -> "WalshSpectrum":
        return spectrum_add(self, other)

    def __sub__(self, other: "WalshSpectrum") -> "WalshSpectrum":
        return spectrum_add(self, spectrum_scale(other, -1.0))

    def __neg__(self) -> "WalshSpectrum":
        return spectrum_scale(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, WalshSpectrum):
            return spectrum_product(self, other)
        return spectrum_scale(self, float(other))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        preview = ", ".join(
            f"W[{n:#x}]*{c:g}" for n, c in list(self._terms.items())[:4]
        )
        extra = "" if len(self._terms) <= 4 else f", ... ({len(self._terms)} terms)"
        return f"WalshSpectrum({preview}{extra})"

    def eval_at(self, t: DyadicPoint) -> float:
        """Exact value at a dyadic point (depth must cover the spectrum)."""
        return sum(c * walsh_eval(n, t) for n, c in self._terms.items())


def spectrum_add(f: WalshSpectrum, g: WalshSpectrum) -> WalshSpectrum:
    """Coefficient-wise sum with exact zeros pruned."""
    if len(f) < len(g):
        f, g = g, f
    out = dict(f.items())
    for n, c in g.items():
        v = out.get(n, 0.0) + c
        if v == 0.0:
            out.pop(n, None)
        else:
            out[n] = v
    return WalshSpectrum._from_clean_dict(out)


def spectrum_scale(f: WalshSpectrum, c: float) -> WalshSpectrum:
    """Scalar multiple; scaling by 0 gives the empty spectrum."""
    if c == 0.0:
        return WalshSpectrum()
    return WalshSpectrum._from_clean_dict({n: c * v for n, v in f.items()})


def inner_product(f: WalshSpectrum, g: WalshSpectrum) -> float:
    """<f, g> on [0,1); equals the coefficient dot product by orthonormality."""
    if len(f) > len(g):
        f, g = g, f
    return sum(c * g[n] for n, c in f.items())


def spectrum_product(
    f: WalshSpectrum,
    g: WalshSpectrum,
    max_pairs: int = PRODUCT_PAIR_BUDGET,
) -> WalshSpectrum:
    """Pointwise product of the represented functions (XOR convolution).

    result[n] = sum over a ^ b = n of f[a] * g[b].  The number of pair
    products is len(f)*len(g); above ``max_pairs`` the product is
    refused as intractable.
    """
    pairs = len(f) * len(g)
    if pairs > max_pairs:
        raise BudgetError(
            f"product needs {pairs} pair products, budget is {max_pairs}"
        )
    if pairs <= _DICT_PRODUCT_CUTOFF:
        out: dict[int, float] = {}
        for a, ca in f.items():
            for b, cb in g.items():
                n = a ^ b
                v = out.get(n, 0.0) + ca * cb
                if v == 0.0:
                    out.pop(n, None)
                else:
                    out[n] = v
        return WalshSpectrum._from_clean_dict(out)

    fa, ca = _freq_arrays(f)
    ga, cb = _freq_arrays(g)
    limbs = max(fa.shape[1], ga.shape[1])
    fa = _widen(fa, limbs)
    ga = _widen(ga, limbs)
    keys = (fa[:, None, :] ^ ga[None, :, :]).reshape(-1, limbs)
    weights = np.multiply.outer(ca, cb).ravel()
    ukeys, coeffs = _aggregate_rows(keys, weights)
    out = {}
    for row, c in zip(ukeys, coeffs):
        if c != 0.0:
            out[_unpack_row(row)] = float(c)
    return WalshSpectrum._from_clean_dict(out)


def synthesize(f: WalshSpectrum, depth: int) -> np.ndarray:
    """Exact values of f on all 2**depth dyadic cells, in cell order.

    Uses the fast Walsh-Hadamard butterfly plus one bit-reversal
    permutation (cell digits are MSB-first, Paley bits are LSB-first).
    """
    if depth > MAX_SYNTH_DEPTH:
        raise DepthError(f"depth {depth} exceeds cap {MAX_SYNTH_DEPTH}")
    if depth < f.depth():
        raise DepthError(
            f"depth {depth} below spectrum depth {f.depth()}"
        )
    size = 1 << depth
    coeffs = np.zeros(size)
    for n, c in f.items():
        coeffs[n] = c
    _fwht_inplace(coeffs)
    return coeffs[_bit_reverse_permutation(depth)]


def analyze_dense(values: np.ndarray) -> WalshSpectrum:
    """Exact Walsh coefficients of a dyadic step function.

    ``values`` must have length 2**D; analysis is the inverse of
    ``synthesize`` at the same depth.
    """
    values = np.asarray(values, dtype=float)
    size = len(values)
    if size == 0 or size & (size - 1):
        raise ValueError(f"length {size} is not a power of two")
    depth = size.bit_length() - 1
    if depth > MAX_SYNTH_DEPTH:
        raise DepthError(f"depth {depth} exceeds cap {MAX_SYNTH_DEPTH}")
    work = values[_bit_reverse_permutation(depth)]
    _fwht_inplace(work)
    work /= size
    return WalshSpectrum(
        {int(n): float(c) for n, c in enumerate(work) if c != 0.0}
    )


def _fwht_inplace(v: np.ndarray) -> None:
    # unnormalized butterfly; v length must be a power of two
    n = len(v)
    h = 1
    while h < n:
        v2 = v.reshape(-1, 2 * h)
        a = v2[:, :h].copy()
        b = v2[:, h:]
        v2[:, :h] = a + b
        v2[:, h:] = a - b
        h *= 2


def _bit_reverse_permutation(depth: int) -> np.ndarray:
    idx = np.arange(1 << depth, dtype=np.int64)
    out = np.zeros_like(idx)
    for _ in range(depth):
        out = (out << 1) | (idx & 1)
        idx >>= 1
    return out


# -- packed frequency helpers (shared with the norm engines) ----------------

def _freq_arrays(f: WalshSpectrum) -> tuple[np.ndarray, np.ndarray]:
    """Frequencies packed into little-endian uint64 limbs, plus coefficients."""
    limbs = max(1, (f.depth() + 63) // 64)
    packed = np.zeros((len(f), limbs), dtype=np.uint64)
    coeffs = np.empty(len(f))
    for row, (n, c) in enumerate(f.items()):
        packed[row] = np.frombuffer(n.to_bytes(limbs * 8, "little"), dtype=np.uint64)
        coeffs[row] = c
    return packed, coeffs


def _widen(packed: np.ndarray, limbs: int) -> np.ndarray:
    if packed.shape[1] == limbs:
        return packed
    out = np.zeros((packed.shape[0], limbs), dtype=np.uint64)
    out[:, : packed.shape[1]] = packed
    return out


def _aggregate_rows(keys: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sum weights over identical rows; rows returned in sorted order."""
    view = np.ascontiguousarray(keys).view(
        [("", np.uint64)] * keys.shape[1]
    ).ravel()
    uniq, inverse = np.unique(view, return_inverse=True)
    sums = np.bincount(inverse, weights=weights, minlength=len(uniq))
    return uniq.view(np.uint64).reshape(-1, keys.shape[1]), sums


def _unpack_row(row: np.ndarray) -> int:
    return int.from_bytes(row.tobytes(), "little")


# -- JSON spectrum files -----------------------------------------------------

def spectrum_to_json(f: WalshSpectrum) -> dict:
    """JSON form: terms listed by increasing frequency, hex encoded."""
    return {
        "terms": [
            {"n": format(n, "x"), "c": c} for n, c in sorted(f.items())
        ]
    }


def spectrum_from_json(doc: dict) -> WalshSpectrum:
    terms = {}
    for item in doc["terms"]:
        terms[int(item["n"], 16)] = float(item["c"])
    return WalshSpectrum(terms)


def save_spectrum(f: WalshSpectrum, path) -> None:
    with open(path, "w") as fh:
        json.dump(spectrum_to_json(f), fh, indent=1)
        fh.write("\n")


def load_spectrum(path) -> WalshSpectrum:
    with open(path) as fh:
        return spectrum_from_json(json.load(fh))
