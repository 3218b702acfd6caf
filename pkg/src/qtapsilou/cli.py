"""Command-line front end.

Subcommands: ``analyze`` (probability sweeps as table/CSV/JSON plus optional
chart files), ``verify`` (dual-basis fairness checks), ``simulate``
(sampled shots vs closed form), ``play`` (hot-seat terminal game),
``classical`` (the coin baseline), and ``serve`` (REST service + web
client).  Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import os
from pathlib import Path

import click

from . import analysis, engine
from .service import SNAPSHOT_ENV, WEB_ROOT_ENV


@click.group()
def main():
    """Two-coin quantum gamble: tables, checks, simulation, play, service."""


def _sweep_table(report: analysis.SweepReport) -> str:
    lines = [f"{'index':>5}  {'p_tosser':>10}  {'p_gambler':>10}  {'p_draw':>10}"]
    for row in report.rows:
        lines.append(
            f"{row.index:>5}  {row.p_tosser:>10.6f}  {row.p_gambler:>10.6f}"
            f"  {row.p_draw:>10.6f}"
        )
    return "\n".join(lines)


@main.command()
@click.option("--phase", type=click.IntRange(1, 2), default=1, show_default=True,
              help="1: sweep the tosser exponent; 2: sweep the gambler exponent.")
@click.option("--n", "n", type=int, default=16, show_default=True,
              help="Group order.")
@click.option("--k", "k", type=int, default=None,
              help="Tosser exponent (required for --phase 2).")
@click.option("--format", "fmt", type=click.Choice(["table", "csv", "json"]),
              default="table", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True),
              default=None, help="Write csv/json to this file instead of stdout.")
@click.option("--figure", type=click.Path(dir_okay=False, writable=True),
              default=None, help="Also render the sweep chart to this image file.")
def analyze(phase, n, k, fmt, output, figure):
    """Print the win-probability sweep for one decision point."""
    if phase == 2 and k is None:
        raise click.UsageError("--k is required for --phase 2")
    if output and fmt == "table":
        raise click.UsageError("--output requires --format csv or json")
    try:
        report = analysis.phase1_table(n) if phase == 1 else analysis.phase2_table(n, k)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if output:
        Path(output).write_bytes(analysis.export(report, fmt))
        click.echo(f"wrote {output}", err=True)
    elif fmt == "table":
        click.echo(_sweep_table(report))
    else:
        click.echo(analysis.export(report, fmt).decode("utf-8"), nl=False)
    if figure:
        from . import figures  # lazy: pulls in matplotlib

        figures.render_sweep(report, figure)
        click.echo(f"wrote {figure}", err=True)


def _parse_orders(text: str) -> list[int]:
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if lo < 1 or hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        value = int(text)
        if value < 1:
            raise ValueError
        return [value]
    except ValueError:
        raise click.UsageError(
            f"--n expects a positive order or an inclusive range like 2..64, got {text!r}"
        ) from None


@main.command()
@click.option("--n", "orders", default="16", show_default=True,
              help="Group order, or an inclusive range like 2..64.")
def verify(orders):
    """Verify the dual-basis fairness property over one or more orders."""
    failed = 0
    for n in _parse_orders(orders):
        if n % 2:
            click.echo(f"n={n}: skipped (odd order has no dual basis)")
            continue
        duality = analysis.verify_duality(n)
        shared_max = all(
            (r := analysis.verify_max_probability(n, k)).equal and r.multiset_equal
            for k in range(n)
        )
        ok = duality.passed and shared_max
        failed += not ok
        click.echo(
            f"n={n}: duality {'OK' if duality.passed else 'FAILED'}, "
            f"max_abs_error {duality.max_abs_error:.3e} < 1e-12 over "
            f"{duality.checked_pairs} pairs; shared maximum for every k: "
            f"{'OK' if shared_max else 'FAILED'}"
        )
    if failed:
        raise SystemExit(1)


@main.command()
@click.option("--n", type=int, default=16, show_default=True)
@click.option("--k", type=int, default=6, show_default=True)
@click.option("--l", "l", type=int, default=0, show_default=True)
@click.option("--shots", type=int, default=analysis.DEFAULT_SHOTS, show_default=True)
@click.option("--seed", type=int, default=analysis.DEFAULT_SEED, show_default=True)
def simulate(n, k, l, shots, seed):
    """Sample measurements and compare frequencies with the closed form."""
    try:
        report = analysis.monte_carlo_compare(n, k, l, shots=shots, seed=seed)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    closed = report.closed_form.as_tuple()
    click.echo(f"n={n} k={k} l={l}  shots={shots}  seed={seed}")
    click.echo(f"{'outcome':<8}  {'closed':>14}  {'empirical':>10}  {'count':>8}")
    for name, p, freq, count in zip(
        ("tosser", "gambler", "draw"), closed, report.empirical, report.counts
    ):
        click.echo(f"{name:<8}  {p:>14.6f}  {freq:>10.6f}  {count:>8}")
    click.echo(f"max sigma distance: {report.max_sigma_distance:.3f} (threshold 4)")
    if not report.passed:
        click.echo("sampled frequencies drifted beyond 4 sigma", err=True)
        raise SystemExit(1)


@main.command()
@click.option("--coins", type=int, default=2, show_default=True)
def classical(coins):
    """Exact win odds of the coin-toss baseline for a given coin count."""
    try:
        result = engine.classical_probabilities(coins)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(f"coins: {result.coins}")
    click.echo(f"p(player 1 wins): {result.p_player1} = {float(result.p_player1):.6g}")
    click.echo(f"p(player 2 wins): {result.p_player2} = {float(result.p_player2):.6g}")
    click.echo(f"p(neither wins):  {result.p_neither} = {float(result.p_neither):.6g}")


@main.command()
@click.option("--n", type=int, default=16, show_default=True, help="Group order.")
@click.option("--bet", type=int, default=10, show_default=True)
@click.option("--tosser-bankroll", type=int, default=100, show_default=True)
@click.option("--gambler-bankroll", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=None,
              help="Seed for reproducible play (default: system entropy).")
def play(n, bet, tosser_bankroll, gambler_bankroll, seed):
    """Play the game hot-seat in the terminal."""
    try:
        _play_loop(n, bet, tosser_bankroll, gambler_bankroll, seed)
    except (EOFError, click.Abort):
        click.echo("\nleaving the table")


def _play_loop(n, bet, tosser_bankroll, gambler_bankroll, seed):
    game_index = 0
    while True:
        game_seed = None if seed is None else seed + game_index
        try:
            session = engine.GameSession.new(
                n=n,
                bet=bet,
                tosser_bankroll=tosser_bankroll,
                gambler_bankroll=gambler_bankroll,
                seed=game_seed,
            )
        except engine.InsufficientFundsError as exc:
            click.echo(f"bankroll exhausted: {exc}")
            return
        except ValueError as exc:
            raise click.UsageError(str(exc))
        click.echo(
            f"\nGame {game_index + 1}: group order {n}, bet {session.bet}, "
            f"bankrolls tosser {session.tosser_bankroll} / "
            f"gambler {session.gambler_bankroll}"
        )
        _play_session(session)
        tosser_bankroll = session.tosser_bankroll
        gambler_bankroll = session.gambler_bankroll
        click.echo(
            f"Bankrolls: tosser {tosser_bankroll} / gambler {gambler_bankroll}"
        )
        if not click.confirm("Play another game with these bankrolls?", default=False):
            return
        game_index += 1


def _play_session(session: engine.GameSession) -> None:
    top = session.n - 1
    while session.phase is not engine.GamePhase.SETTLED:
        k = click.prompt(f"Tosser, choose k (0..{top})",
                         type=click.IntRange(0, top))
        session.submit_tosser_move(k)
        l = click.prompt(f"Gambler, choose l (0..{top})",
                         type=click.IntRange(0, top))
        session.submit_gambler_move(l)
        profile = session.current_profile()
        click.echo(
            f"Odds before measuring: tosser {profile.p_tosser:.3f}  "
            f"gambler {profile.p_gambler:.3f}  draw {profile.p_draw:.3f}"
        )
        round_ = session.resolve()
        if round_.outcome is engine.MeasurementOutcome.TOSSER_WINS:
            click.echo(f"Both heads: tosser wins, collects {round_.bet}.")
        elif round_.outcome is engine.MeasurementOutcome.GAMBLER_WINS:
            click.echo(f"Both tails: gambler wins, collects {2 * round_.bet}.")
        else:
            click.echo("One of each: draw, toss again.")
            _reconfirm_bet(session)


def _reconfirm_bet(session: engine.GameSession) -> None:
    while True:
        amount = click.prompt(
            "Bet for the next round (keep or raise)",
            type=int,
            default=session.bet,
        )
        try:
            session.raise_bet(amount)
            return
        except (ValueError, engine.InsufficientFundsError) as exc:
            click.echo(f"cannot bet that: {exc}")


@main.command()
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--snapshot", type=click.Path(dir_okay=False), default=None,
              help=f"Session snapshot file (defaults to ${SNAPSHOT_ENV}).")
@click.option("--web-root", type=click.Path(file_okay=False), default=None,
              help=f"Built web client directory (defaults to ${WEB_ROOT_ENV} "
                   f"or ./frontend/dist).")
def serve(port, host, snapshot, web_root):
    """Run the REST service until interrupted."""
    import uvicorn

    from .service import SessionStore, create_app

    if snapshot is None:
        snapshot = os.environ.get(SNAPSHOT_ENV) or None
    if web_root is None:
        web_root = os.environ.get(WEB_ROOT_ENV) or None
    if web_root is None and Path("frontend/dist").is_dir():
        web_root = "frontend/dist"
    app = create_app(store=SessionStore(snapshot), web_root=web_root)
    try:
        uvicorn.run(app, host=host, port=port)
    except OSError as exc:
        raise click.ClickException(f"could not bind {host}:{port}: {exc}")
    except SystemExit as exc:
        # uvicorn signals startup failure (e.g. a busy port) with its own code
        if exc.code not in (0, None):
            raise click.ClickException(f"server failed to start on {host}:{port}")


if __name__ == "__main__":
    main()
