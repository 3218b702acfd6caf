"""Chart rendering for sweep reports.

Draws the two players' win probabilities (and the draw probability, when
there is one) against the move exponent, and writes the figure to a file
next to whatever delimited output the caller produced.  The format follows
the file extension; anything matplotlib's Agg backend can save works
(png, pdf, svg, ...).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .analysis import SweepReport  # noqa: E402

__all__ = ["render_sweep"]


def render_sweep(report: SweepReport, path: str | Path) -> Path:
    """Render a sweep report to an image file and return its path."""
    path = Path(path)
    xs = [row.index for row in report.rows]
    tosser = [row.p_tosser for row in report.rows]
    gambler = [row.p_gambler for row in report.rows]
    draw = [row.p_draw for row in report.rows]

    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    ax.plot(xs, tosser, marker="o", color="#b03060", label="tosser wins")
    ax.plot(xs, gambler, marker="s", color="#2e8b57", label="gambler wins")
    if report.fixed_k is not None:
        ax.plot(xs, draw, marker="^", color="#708090", linestyle="--", label="draw")
        ax.set_xlabel(f"gambler exponent l (tosser played k={report.fixed_k})")
        ax.set_title(f"Win odds after both moves, group order {report.n}")
    else:
        ax.set_xlabel("tosser exponent k")
        ax.set_title(f"Win odds after the first move, group order {report.n}")
    ax.set_ylabel("probability")
    ax.set_ylim(-0.05, 1.05)
    ax.set_xticks(xs if report.n <= 32 else xs[:: max(1, report.n // 16)])
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
