"""Game protocol for the two-coin quantum gamble.

One round: the tosser entangles the coins with a rotation-then-CNOT circuit
(exponent ``k``), the gambler rotates the measurement basis (exponent ``l``),
the register is measured.  Both-heads pays the tosser, both-tails pays the
gambler twice the bet, a mixed result is a draw and the round repeats with
the bet re-confirmable.  The closed-form win odds live here next to the
circuit route so the two can be checked against each other.

Also included: the classical two-coin baseline game and the textbook
Hadamard-based entangled pairs the rotation circuits generalize.
"""

from __future__ import annotations

import math
import uuid
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .groups import MAX_ORDER
from .quantum import (
    Prng,
    apply,
    cnot,
    draw_basis_index,
    hadamard,
    identity,
    initial_state,
    pauli_x,
    ry,
    tensor,
)

__all__ = [
    "ClassicalGameResult",
    "GamePhase",
    "GameSession",
    "InsufficientFundsError",
    "MeasurementOutcome",
    "ProbabilityProfile",
    "ProtocolViolationError",
    "Round",
    "bell_phi_minus",
    "bell_psi_minus",
    "classical_probabilities",
    "classical_round",
    "gambler_action",
    "measure_round",
    "probability_profile",
    "psi1",
    "psi2",
    "tosser_action",
]


class ProtocolViolationError(RuntimeError):
    """An action was attempted outside its phase of the round."""


class InsufficientFundsError(RuntimeError):
    """A bet exceeds what the losing side could pay out."""


class MeasurementOutcome(str, Enum):
    """Where the two coins landed, keyed to the measured basis index."""

    TOSSER_WINS = "tosser_wins"    # |00> - both heads
    GAMBLER_WINS = "gambler_wins"  # |11> - both tails
    DRAW_01 = "draw_01"            # |01>
    DRAW_10 = "draw_10"            # |10>

    @classmethod
    def from_basis_index(cls, index: int) -> "MeasurementOutcome":
        return _OUTCOME_BY_INDEX[index]

    @property
    def basis_index(self) -> int:
        return _INDEX_BY_OUTCOME[self]

    @property
    def is_draw(self) -> bool:
        return self in (MeasurementOutcome.DRAW_01, MeasurementOutcome.DRAW_10)


_OUTCOME_BY_INDEX = {
    0: MeasurementOutcome.TOSSER_WINS,
    1: MeasurementOutcome.DRAW_01,
    2: MeasurementOutcome.DRAW_10,
    3: MeasurementOutcome.GAMBLER_WINS,
}
_INDEX_BY_OUTCOME = {v: k for k, v in _OUTCOME_BY_INDEX.items()}


@dataclass(frozen=True)
class ProbabilityProfile:
    """Win/draw probabilities of one configured round; sums to 1."""

    p_tosser: float
    p_gambler: float
    p_draw: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.p_tosser, self.p_gambler, self.p_draw)


def _check_order(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"group order must be an integer, got {n!r}")
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"group order must be in [1, {MAX_ORDER}], got {n}")


def _check_exponent(n: int, value: int, name: str) -> int:
    _check_order(n)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if not 0 <= value < n:
        raise ValueError(f"{name} must be in [0, {n - 1}], got {value}")
    return value


def tosser_action(n: int, k: int) -> np.ndarray:
    """The tosser's entangling circuit: rotate the low coin, then CNOT."""
    _check_exponent(n, k, "k")
    return cnot() @ tensor(identity(), ry(2.0 * math.pi * k / n))


def gambler_action(n: int, l: int) -> np.ndarray:
    """The gambler's basis change: the same rotation on both coins."""
    _check_exponent(n, l, "l")
    r = ry(2.0 * math.pi * l / n)
    return tensor(r, r)


def psi1(n: int, k: int) -> np.ndarray:
    """State after the tosser's move: ``[-sin(pi k/n), 0, 0, cos(pi k/n)]``.

    An entangled pair with generally unequal amplitudes; both coins are
    guaranteed to land the same way if measured now.
    """
    _check_exponent(n, k, "k")
    half = math.pi * k / n
    return np.array([-math.sin(half), 0.0, 0.0, math.cos(half)])


def psi2(n: int, k: int, l: int) -> np.ndarray:
    """State after both moves, computed by running the circuit."""
    return apply(gambler_action(n, l), psi1(n, k))


def probability_profile(n: int, k: int, l: int) -> ProbabilityProfile:
    """Closed-form win/draw probabilities for moves ``(k, l)``.

    Independent of :func:`psi2`: this evaluates the squared-amplitude
    expressions directly, so tests can cross-check it against the full
    circuit simulation.
    """
    _check_exponent(n, k, "k")
    _check_exponent(n, l, "l")
    ck, sk = math.cos(math.pi * k / n), math.sin(math.pi * k / n)
    cl, sl = math.cos(math.pi * l / n), math.sin(math.pi * l / n)
    return ProbabilityProfile(
        p_tosser=(ck * sl * sl - sk * cl * cl) ** 2,
        p_gambler=(ck * cl * cl - sk * sl * sl) ** 2,
        p_draw=2.0 * (ck + sk) ** 2 * (cl * sl) ** 2,
    )


def measure_round(n: int, k: int, l: int, rng: Prng) -> MeasurementOutcome:
    """Measure the post-move state once and map the index to an outcome."""
    return MeasurementOutcome.from_basis_index(draw_basis_index(psi2(n, k, l), rng))


def bell_phi_minus() -> np.ndarray:
    """``(|00> - |11>)/sqrt 2`` via Hadamard on the low coin, then CNOT."""
    state = apply(tensor(identity(), hadamard()), initial_state())
    return apply(cnot(), state)


def bell_psi_minus() -> np.ndarray:
    """``(|01> - |10>)/sqrt 2``: the nobody-ever-wins state.

    One circuit that produces it (up to global sign) from the fixed initial
    state: Hadamard on the low coin, CNOT, then a bit flip on the low coin.
    """
    return apply(tensor(identity(), pauli_x()), bell_phi_minus())


# --- classical baseline ----------------------------------------------------


@dataclass(frozen=True)
class ClassicalGameResult:
    """Exact win odds of the coin game generalized to ``coins`` coins."""

    coins: int
    p_player1: Fraction
    p_player2: Fraction
    p_neither: Fraction


def classical_probabilities(coins: int) -> ClassicalGameResult:
    """All-heads / all-tails / neither odds for a ``coins``-coin toss.

    Each player wins with probability ``1 / 2**coins``, which is why the
    traditional game stops at two coins: more coins mostly produce draws.
    """
    if not isinstance(coins, int) or isinstance(coins, bool):
        raise ValueError(f"coin count must be an integer, got {coins!r}")
    if not 2 <= coins <= 62:
        raise ValueError(f"coin count must be in [2, 62], got {coins}")
    p_win = Fraction(1, 2**coins)
    return ClassicalGameResult(
        coins=coins,
        p_player1=p_win,
        p_player2=p_win,
        p_neither=1 - 2 * p_win,
    )


def classical_round(rng: Prng) -> MeasurementOutcome:
    """Two fair coin flips: both heads pays the tosser, both tails the gambler."""
    high_tails = rng.uniform() < 0.5
    low_tails = rng.uniform() < 0.5
    return MeasurementOutcome.from_basis_index(2 * int(high_tails) + int(low_tails))


# --- session state machine -------------------------------------------------


class GamePhase(str, Enum):
    AWAITING_TOSSER = "awaiting_tosser"
    AWAITING_GAMBLER = "awaiting_gambler"
    READY_TO_MEASURE = "ready_to_measure"
    SETTLED = "settled"


@dataclass(frozen=True)
class Round:
    """One measured round: the moves, the odds they implied, the outcome."""

    k: int
    l: int
    outcome: MeasurementOutcome
    profile: ProbabilityProfile
    bet: int


def _check_money(value: int, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{name} must be an integer number of money units, got {value!r}")
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value}")
    return value


@dataclass
class GameSession:
    """A playable session: phase machine, bankrolls, and round history.

    Phases advance only as
    ``awaiting_tosser -> awaiting_gambler -> ready_to_measure`` and then
    either ``settled`` (someone won) or back to ``awaiting_tosser`` (draw).
    Payouts follow the traditional asymmetric rule: a tosser win collects
    the bet, a gambler win collects twice the bet.  Any bet must stay
    coverable by both sides, so bankrolls can never go negative.

    Mutations are not synchronized here; callers that share a session across
    threads must serialize access (the service does).
    """

    id: str
    n: int
    bet: int
    tosser_bankroll: int
    gambler_bankroll: int
    rng: Prng
    phase: GamePhase = GamePhase.AWAITING_TOSSER
    pending_k: int | None = None
    pending_l: int | None = None
    history: list[Round] = field(default_factory=list)

    @classmethod
    def new(
        cls,
        n: int,
        bet: int,
        tosser_bankroll: int,
        gambler_bankroll: int,
        seed: int | None = None,
        session_id: str | None = None,
    ) -> "GameSession":
        _check_order(n)
        _check_money(bet, "bet")
        _check_money(tosser_bankroll, "tosser_bankroll")
        _check_money(gambler_bankroll, "gambler_bankroll")
        _require_coverable(bet, tosser_bankroll, gambler_bankroll)
        rng = Prng.from_entropy() if seed is None else Prng(seed)
        return cls(
            id=session_id or uuid.uuid4().hex,
            n=n,
            bet=bet,
            tosser_bankroll=tosser_bankroll,
            gambler_bankroll=gambler_bankroll,
            rng=rng,
        )

    @property
    def total_money(self) -> int:
        return self.tosser_bankroll + self.gambler_bankroll

    def submit_tosser_move(self, k: int) -> None:
        if self.phase is not GamePhase.AWAITING_TOSSER:
            raise ProtocolViolationError(
                f"tosser move not allowed in phase {self.phase.value!r}"
            )
        self.pending_k = _check_exponent(self.n, k, "k")
        self.phase = GamePhase.AWAITING_GAMBLER

    def submit_gambler_move(self, l: int) -> None:
        if self.phase is not GamePhase.AWAITING_GAMBLER:
            raise ProtocolViolationError(
                f"gambler move not allowed in phase {self.phase.value!r}"
            )
        self.pending_l = _check_exponent(self.n, l, "l")
        self.phase = GamePhase.READY_TO_MEASURE

    def current_profile(self) -> ProbabilityProfile | None:
        """Pre-measurement odds once both moves are in, else None."""
        if self.pending_k is None or self.pending_l is None:
            return None
        return probability_profile(self.n, self.pending_k, self.pending_l)

    def raise_bet(self, amount: int) -> None:
        """Keep or raise the bet after a draw, before the next tosser move."""
        if self.phase is not GamePhase.AWAITING_TOSSER or not self.history:
            raise ProtocolViolationError("the bet can only change after a drawn round")
        _check_money(amount, "bet")
        if amount < self.bet:
            raise ValueError(
                f"bet can be kept or raised, not lowered ({amount} < {self.bet})"
            )
        _require_coverable(amount, self.tosser_bankroll, self.gambler_bankroll)
        self.bet = amount

    def resolve(self) -> Round:
        """Measure the coins, settle the bet, and advance the phase."""
        if self.phase is not GamePhase.READY_TO_MEASURE:
            raise ProtocolViolationError(
                f"cannot measure in phase {self.phase.value!r}"
            )
        assert self.pending_k is not None and self.pending_l is not None
        _require_coverable(self.bet, self.tosser_bankroll, self.gambler_bankroll)
        outcome = measure_round(self.n, self.pending_k, self.pending_l, self.rng)
        round_ = Round(
            k=self.pending_k,
            l=self.pending_l,
            outcome=outcome,
            profile=probability_profile(self.n, self.pending_k, self.pending_l),
            bet=self.bet,
        )
        self.history.append(round_)
        self.pending_k = None
        self.pending_l = None
        if outcome is MeasurementOutcome.TOSSER_WINS:
            self.tosser_bankroll += self.bet
            self.gambler_bankroll -= self.bet
            self.phase = GamePhase.SETTLED
        elif outcome is MeasurementOutcome.GAMBLER_WINS:
            self.tosser_bankroll -= 2 * self.bet
            self.gambler_bankroll += 2 * self.bet
            self.phase = GamePhase.SETTLED
        else:
            self.phase = GamePhase.AWAITING_TOSSER
        return round_

    # --- snapshot serialization ---

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "n": self.n,
            "bet": self.bet,
            "tosser_bankroll": self.tosser_bankroll,
            "gambler_bankroll": self.gambler_bankroll,
            "phase": self.phase.value,
            "pending_k": self.pending_k,
            "pending_l": self.pending_l,
            "rng": {"seed": self.rng.seed, "draws": self.rng.draws},
            "history": [
                {
                    "k": r.k,
                    "l": r.l,
                    "outcome": r.outcome.value,
                    "bet": r.bet,
                    "profile": {
                        "p_tosser": r.profile.p_tosser,
                        "p_gambler": r.profile.p_gambler,
                        "p_draw": r.profile.p_draw,
                    },
                }
                for r in self.history
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GameSession":
        session = cls(
            id=data["id"],
            n=data["n"],
            bet=data["bet"],
            tosser_bankroll=data["tosser_bankroll"],
            gambler_bankroll=data["gambler_bankroll"],
            rng=Prng.restore(data["rng"]["seed"], data["rng"]["draws"]),
            phase=GamePhase(data["phase"]),
            pending_k=data["pending_k"],
            pending_l=data["pending_l"],
            history=[
                Round(
                    k=r["k"],
                    l=r["l"],
                    outcome=MeasurementOutcome(r["outcome"]),
                    profile=ProbabilityProfile(
                        p_tosser=r["profile"]["p_tosser"],
                        p_gambler=r["profile"]["p_gambler"],
                        p_draw=r["profile"]["p_draw"],
                    ),
                    bet=r["bet"],
                )
                for r in data["history"]
            ],
        )
        return session


def _require_coverable(bet: int, tosser_bankroll: int, gambler_bankroll: int) -> None:
    # Losing costs the gambler the bet but the tosser twice the bet.
    if bet > gambler_bankroll:
        raise InsufficientFundsError(
            f"gambler cannot cover a bet of {bet} with bankroll {gambler_bankroll}"
        )
    if 2 * bet > tosser_bankroll:
        raise InsufficientFundsError(
            f"tosser cannot cover a payout of {2 * bet} with bankroll {tosser_bankroll}"
        )
