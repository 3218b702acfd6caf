"""Sweep tables, fairness verification, and sampling-vs-closed-form checks.

The two sweep shapes mirror the game's two decision points: win odds per
tosser exponent before the gambler acts, and per gambler exponent once the
tosser's move is fixed.  ``verify_duality`` checks exhaustively that the
half-turn dual of the gambler's move swaps the two players' win
probabilities, and ``verify_max_probability`` the consequence that the
tosser's move only sets the shared ceiling, not who is favored.

Reports export as CSV or JSON with a stable column order and 12 significant
digits, so identical inputs always produce identical bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import engine
from .groups import UnsupportedOrderError
from .quantum import Prng, sample

DUALITY_ATOL = 1e-12
SIGMA_THRESHOLD = 4.0
DEFAULT_SHOTS = 100_000
DEFAULT_SEED = 42

__all__ = [
    "DEFAULT_SEED",
    "DEFAULT_SHOTS",
    "DUALITY_ATOL",
    "SIGMA_THRESHOLD",
    "DualityReport",
    "MaxProbabilityReport",
    "MonteCarloReport",
    "SweepReport",
    "SweepRow",
    "export",
    "monte_carlo_compare",
    "phase1_table",
    "phase2_table",
    "verify_duality",
    "verify_max_probability",
]


@dataclass(frozen=True)
class SweepRow:
    index: int
    p_tosser: float
    p_gambler: float
    p_draw: float


@dataclass(frozen=True)
class SweepReport:
    """Win/draw probabilities per exponent, one row per group element.

    ``fixed_k`` is None for the first-move sweep (rows indexed by the tosser
    exponent) and set for the second-move sweep (rows indexed by the gambler
    exponent, given the tosser played ``fixed_k``).
    """

    n: int
    fixed_k: int | None
    rows: tuple[SweepRow, ...]

    def to_payload(self) -> dict:
        return {
            "n": self.n,
            "fixed_k": self.fixed_k,
            "rows": [
                {
                    "index": row.index,
                    "p_tosser": _round12(row.p_tosser),
                    "p_gambler": _round12(row.p_gambler),
                    "p_draw": _round12(row.p_draw),
                }
                for row in self.rows
            ],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "SweepReport":
        return cls(
            n=payload["n"],
            fixed_k=payload["fixed_k"],
            rows=tuple(
                SweepRow(r["index"], r["p_tosser"], r["p_gambler"], r["p_draw"])
                for r in payload["rows"]
            ),
        )


@dataclass(frozen=True)
class DualityReport:
    """Exhaustive dual-basis check over all move pairs of one group order."""

    n: int
    max_abs_error: float
    checked_pairs: int
    passed: bool

    def to_payload(self) -> dict:
        return {
            "n": self.n,
            "max_abs_error": self.max_abs_error,
            "checked_pairs": self.checked_pairs,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class MaxProbabilityReport:
    """Both players' best achievable odds after a fixed tosser move."""

    n: int
    k: int
    tosser_max: float
    gambler_max: float
    equal: bool
    multiset_equal: bool

    def to_payload(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "tosser_max": _round12(self.tosser_max),
            "gambler_max": _round12(self.gambler_max),
            "equal": self.equal,
            "multiset_equal": self.multiset_equal,
        }


@dataclass(frozen=True)
class MonteCarloReport:
    """Seeded shot sampling against the closed-form odds of one move pair.

    ``max_sigma_distance`` is the worst |frequency - p| in binomial standard
    deviations across the three outcomes; certain outcomes (p exactly 0
    or 1) are excluded after asserting their counts are exact.
    """

    n: int
    k: int
    l: int
    shots: int
    seed: int
    counts: tuple[int, int, int]
    empirical: tuple[float, float, float]
    closed_form: engine.ProbabilityProfile
    max_sigma_distance: float

    @property
    def passed(self) -> bool:
        return self.max_sigma_distance < SIGMA_THRESHOLD

    def to_payload(self) -> dict:
        closed = self.closed_form
        return {
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "shots": self.shots,
            "seed": self.seed,
            "counts": {
                "tosser": self.counts[0],
                "gambler": self.counts[1],
                "draw": self.counts[2],
            },
            "empirical": {
                "tosser": self.empirical[0],
                "gambler": self.empirical[1],
                "draw": self.empirical[2],
            },
            "closed_form": {
                "tosser": _round12(closed.p_tosser),
                "gambler": _round12(closed.p_gambler),
                "draw": _round12(closed.p_draw),
            },
            "max_sigma_distance": self.max_sigma_distance,
            "passed": self.passed,
        }


def phase1_table(n: int) -> SweepReport:
    """Win odds per tosser exponent if the coins were measured right away."""
    engine._check_order(n)
    rows = []
    for k in range(n):
        half = math.pi * k / n
        rows.append(
            SweepRow(
                index=k,
                p_tosser=math.sin(half) ** 2,
                p_gambler=math.cos(half) ** 2,
                p_draw=0.0,
            )
        )
    return SweepReport(n=n, fixed_k=None, rows=tuple(rows))


def phase2_table(n: int, k: int) -> SweepReport:
    """Win/draw odds per gambler exponent, given the tosser played ``k``."""
    rows = []
    for l in range(n):
        profile = engine.probability_profile(n, k, l)
        rows.append(SweepRow(l, profile.p_tosser, profile.p_gambler, profile.p_draw))
    return SweepReport(n=n, fixed_k=k, rows=tuple(rows))


def _win_probability_matrices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """P_tosser and P_gambler over all (k, l) pairs, rows k, columns l."""
    half = np.pi * np.arange(n) / n
    ck, sk = np.cos(half)[:, None], np.sin(half)[:, None]
    cl2, sl2 = (np.cos(half) ** 2)[None, :], (np.sin(half) ** 2)[None, :]
    p_tosser = (ck * sl2 - sk * cl2) ** 2
    p_gambler = (ck * cl2 - sk * sl2) ** 2
    return p_tosser, p_gambler


def verify_duality(n: int) -> DualityReport:
    """Check, for every move pair, that the dual basis swaps the win odds.

    The dual of ``l`` is ``(l + n/2) mod n``, so this needs an even order.
    Both swap directions are checked for all n^2 pairs.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"group order must be a positive integer, got {n!r}")
    if n % 2:
        raise UnsupportedOrderError(
            f"the dual-basis property needs an even group order, got n={n}"
        )
    p_tosser, p_gambler = _win_probability_matrices(n)
    # Column l of the rolled matrix is column (l + n/2) mod n of the original.
    at_dual = lambda p: np.roll(p, -(n // 2), axis=1)  # noqa: E731
    max_abs_error = float(
        max(
            np.abs(at_dual(p_tosser) - p_gambler).max(),
            np.abs(at_dual(p_gambler) - p_tosser).max(),
        )
    )
    return DualityReport(
        n=n,
        max_abs_error=max_abs_error,
        checked_pairs=n * n,
        passed=max_abs_error < DUALITY_ATOL,
    )


def verify_max_probability(n: int, k: int) -> MaxProbabilityReport:
    """Check that a fixed tosser move caps both players at the same maximum.

    Sweeps the gambler exponent: the sorted tosser and gambler probability
    lists must coincide (the dual pairing permutes one into the other), so
    in particular the maxima are equal.
    """
    if n % 2:
        raise UnsupportedOrderError(
            f"the shared-maximum property needs an even group order, got n={n}"
        )
    report = phase2_table(n, k)
    tosser = np.array([row.p_tosser for row in report.rows])
    gambler = np.array([row.p_gambler for row in report.rows])
    tosser_max, gambler_max = float(tosser.max()), float(gambler.max())
    multiset_equal = bool(
        np.abs(np.sort(tosser) - np.sort(gambler)).max() < DUALITY_ATOL
    )
    return MaxProbabilityReport(
        n=n,
        k=k,
        tosser_max=tosser_max,
        gambler_max=gambler_max,
        equal=abs(tosser_max - gambler_max) < DUALITY_ATOL,
        multiset_equal=multiset_equal,
    )


def monte_carlo_compare(
    n: int,
    k: int,
    l: int,
    shots: int = DEFAULT_SHOTS,
    seed: int = DEFAULT_SEED,
) -> MonteCarloReport:
    """Sample the post-move state and compare frequencies to closed form."""
    closed = engine.probability_profile(n, k, l)
    counts4 = sample(engine.psi2(n, k, l), Prng(seed), shots)
    counts = (int(counts4[0]), int(counts4[3]), int(counts4[1] + counts4[2]))
    empirical = tuple(c / shots for c in counts)
    max_sigma = 0.0
    for count, freq, p in zip(counts, empirical, closed.as_tuple()):
        if p == 0.0 or p == 1.0:
            # Zero-variance outcome: sampling must reproduce it exactly.
            expected = shots if p == 1.0 else 0
            if count != expected:
                raise AssertionError(
                    f"degenerate outcome sampled inconsistently: "
                    f"count {count}, probability {p}"
                )
            continue
        sigma = abs(freq - p) / math.sqrt(p * (1.0 - p) / shots)
        max_sigma = max(max_sigma, sigma)
    return MonteCarloReport(
        n=n,
        k=k,
        l=l,
        shots=shots,
        seed=seed,
        counts=counts,
        empirical=empirical,
        closed_form=closed,
        max_sigma_distance=max_sigma,
    )


# --- export ------------------------------------------------------------------


def _round12(value: float) -> float:
    """Round to 12 significant digits, the wire precision for probabilities."""
    return float(f"{value:.12g}")


def _to_csv(report: SweepReport) -> bytes:
    lines = ["index,p_tosser,p_gambler,p_draw"]
    for row in report.rows:
        lines.append(
            f"{row.index},{row.p_tosser:.12g},{row.p_gambler:.12g},{row.p_draw:.12g}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def _to_json(report: SweepReport) -> bytes:
    return json.dumps(report.to_payload()).encode("utf-8")


def export(report: SweepReport, format: str) -> bytes:
    """Serialize a sweep report to ``csv`` or ``json`` bytes."""
    if format == "csv":
        return _to_csv(report)
    if format == "json":
        return _to_json(report)
    raise ValueError(f"unknown export format {format!r} (expected 'csv' or 'json')")
