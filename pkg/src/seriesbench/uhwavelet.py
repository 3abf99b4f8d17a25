"""Unbalanced-Haar wavelet bases and the discrete transform.

An unbalanced-Haar basis on {1..n} is a binary segmentation tree: each node
is a two-level step function with positive amplitude on [s, b] and negative
amplitude on [b+1, e], normalised to unit energy. Together with the constant
father function the n functions form an orthonormal basis for any n, dyadic
or not.

Breakpoint rule: a dyadic-length region splits at its midpoint (classical
Haar); a non-dyadic region puts the remainder ``length - 2^floor(log2 length)``
into the leading (positive) part so the trailing part has the largest
possible dyadic support. Indices are 1-based throughout; mother levels start
at 0 and the father is stored separately from the detail coefficients.

For benchmarking, :func:`build_paired_bases` builds a low-frequency basis on
m points and a high-frequency basis on n = k*m points whose top levels are
exact k-expansions of the low basis; deeper levels live inside single
length-k blocks, so their wavelets sum to zero within every block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError
from .series import TimeSeries


@dataclass(frozen=True)
class WaveletNode:
    """One mother wavelet: support [s, e], sign change after b (all 1-based).

    ``s <= b < e``; equality s == b admits two-point supports, which
    terminate the segmentation.
    """

    s: int
    b: int
    e: int
    level: int
    index: int

    def __post_init__(self) -> None:
        if not (self.s <= self.b < self.e):
            raise ValueError(f"invalid node support ({self.s}, {self.b}, {self.e})")
        if self.level < 0 or self.index < 1:
            raise ValueError("level must be >= 0 and index >= 1")

    @property
    def amplitudes(self) -> tuple[float, float]:
        """Positive and negative step heights of the unit-norm wavelet."""
        n_total = self.e - self.s + 1
        n_pos = self.b - self.s + 1
        n_neg = self.e - self.b
        a_pos = np.sqrt(1.0 / n_pos - 1.0 / n_total)
        a_neg = np.sqrt(1.0 / n_neg - 1.0 / n_total)
        return float(a_pos), float(a_neg)


@dataclass(frozen=True)
class UHBasis:
    """A complete unbalanced-Haar basis over {1..n}.

    ``nodes`` holds the n - 1 mother wavelets sorted by (level, index); the
    father function is implicit. ``max_level`` is -1 when n == 1 (father
    only).
    """

    n: int
    nodes: tuple[WaveletNode, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("basis length must be >= 1")
        if len(self.nodes) != self.n - 1:
            raise ValueError(
                f"basis over {self.n} points needs {self.n - 1} nodes, "
                f"got {len(self.nodes)}"
            )

    @property
    def max_level(self) -> int:
        return max((node.level for node in self.nodes), default=-1)

    def levels_present(self) -> list[int]:
        return sorted({node.level for node in self.nodes})


@dataclass(frozen=True)
class WaveletCoefficients:
    """Transform output: the father coefficient plus one detail per node.

    ``details`` maps (level, index) to the coefficient value. When produced
    for a paired benchmarking basis, ``split_level`` records the deepest
    level shared with the low-frequency basis; levels above it are
    within-block detail.
    """

    father: float
    details: dict[tuple[int, int], float]
    split_level: int | None = None

    def detail_array(self, keys: list[tuple[int, int]]) -> np.ndarray:
        return np.array([self.details[key] for key in keys])


def largest_dyadic_below(n: int) -> int:
    """Largest power of two <= n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 1 << (int(n).bit_length() - 1)


def _breakpoint(s: int, e: int) -> int:
    length = e - s + 1
    dyadic = largest_dyadic_below(length)
    if dyadic == length:
        return s + length // 2 - 1
    return s + (length - dyadic) - 1


def _segment(s: int, e: int, level: int, out: list[tuple[int, int, int, int]]) -> None:
    """Recursively split [s, e], appending (level, s, b, e) per node."""
    if e <= s:
        return
    b = _breakpoint(s, e)
    out.append((level, s, b, e))
    _segment(s, b, level + 1, out)
    _segment(b + 1, e, level + 1, out)


def _to_basis(n: int, raw: list[tuple[int, int, int, int]]) -> UHBasis:
    raw.sort()
    nodes = []
    current_level = None
    index = 0
    for level, s, b, e in raw:
        if level != current_level:
            current_level = level
            index = 0
        index += 1
        nodes.append(WaveletNode(s, b, e, level, index))
    return UHBasis(n, tuple(nodes))


def build_uh_basis(n: int) -> UHBasis:
    """Basis for a standalone series of length n (classical Haar if dyadic)."""
    raw: list[tuple[int, int, int, int]] = []
    _segment(1, n, 0, raw)
    return _to_basis(n, raw)


def build_paired_bases(m: int, k: int) -> tuple[UHBasis, UHBasis, int]:
    """Comparable bases for a low series (length m) and high series (k*m).

    Every low node (s, b, e) at level j maps to the high node
    ``(k(s-1)+1, kb, ke)`` at the same level, so shared coefficients line
    up one-for-one. Each length-k block is then segmented on its own,
    starting one level below the deepest shared level regardless of how
    shallow its branch of the low tree is; those within-block wavelets are
    the ones untouched by coefficient replacement.

    Returns (low basis, high basis, deepest shared level). The shared level
    is -1 when m == 1: only the father is shared.
    """
    if m < 1:
        raise DimensionError("m must be >= 1")
    if k < 2:
        raise ValueError("aggregation factor k must be >= 2 for paired bases")
    low = build_uh_basis(m)
    split_level = low.max_level
    raw = [
        (node.level, k * (node.s - 1) + 1, k * node.b, k * node.e)
        for node in low.nodes
    ]
    for block in range(m):
        _segment(k * block + 1, k * (block + 1), split_level + 1, raw)
    high = _to_basis(k * m, raw)
    return low, high, split_level


def duht(series: TimeSeries, basis: UHBasis) -> WaveletCoefficients:
    """Forward transform: inner products with every basis function."""
    y = series.values
    if y.size != basis.n:
        raise DimensionError(
            f"series length {y.size} does not match basis length {basis.n}"
        )
    prefix = np.concatenate([[0.0], np.cumsum(y)])
    father = prefix[-1] / np.sqrt(basis.n)
    details: dict[tuple[int, int], float] = {}
    for node in basis.nodes:
        a_pos, a_neg = node.amplitudes
        pos_sum = prefix[node.b] - prefix[node.s - 1]
        neg_sum = prefix[node.e] - prefix[node.b]
        details[(node.level, node.index)] = a_pos * pos_sum - a_neg * neg_sum
    return WaveletCoefficients(float(father), details)


def _check_keys(coeffs: WaveletCoefficients, basis: UHBasis) -> None:
    expected = {(node.level, node.index) for node in basis.nodes}
    got = set(coeffs.details)
    if got != expected:
        missing = expected - got
        extra = got - expected
        raise ValueError(
            f"coefficient keys do not match basis nodes "
            f"(missing {sorted(missing)[:3]}, extra {sorted(extra)[:3]})"
        )


def iduht(coeffs: WaveletCoefficients, basis: UHBasis) -> TimeSeries:
    """Inverse transform: weighted sum of basis functions."""
    _check_keys(coeffs, basis)
    y = np.full(basis.n, coeffs.father / np.sqrt(basis.n))
    for node in basis.nodes:
        w = coeffs.details[(node.level, node.index)]
        a_pos, a_neg = node.amplitudes
        y[node.s - 1 : node.b] += w * a_pos
        y[node.b : node.e] -= w * a_neg
    return TimeSeries(y)


def basis_matrix(basis: UHBasis) -> np.ndarray:
    """Orthogonal matrix W with one row per basis function.

    Row 0 is the father; rows 1.. are the mothers sorted by (level, index),
    so ``W @ y`` stacks the father coefficient on top of the detail
    coefficients in that order.
    """
    n = basis.n
    w = np.zeros((n, n))
    w[0, :] = 1.0 / np.sqrt(n)
    for row, node in enumerate(basis.nodes, start=1):
        a_pos, a_neg = node.amplitudes
        w[row, node.s - 1 : node.b] = a_pos
        w[row, node.b : node.e] = -a_neg
    return w
