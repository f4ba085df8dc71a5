"""Figure rendering for the CLI report path.

Each CLI command can render its swept data to a matplotlib figure next to
the delimited output.  The figures are quick-look plots: contrast versus
detuning grouped by auxiliary detuning, SNR versus duration per strategy,
and the threshold/frequency-placement curves.
"""

from __future__ import annotations

__all__ = ["render"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _group(rows, key):
    order = []
    groups = {}
    for row in rows:
        val = row[key]
        if val not in groups:
            groups[val] = []
            order.append(val)
        groups[val].append(row)
    return [(val, groups[val]) for val in order]


def _render_scatter(plt, rows):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for db, group in _group(rows, "delta_b"):
        ax.plot(
            [r["delta_a"] for r in group],
            [r["abs_delta_s"] for r in group],
            label=f"delta_b = {db:g}",
        )
    eps = rows[0]["epsilon"] if rows else 0.0
    ax.set_xlabel("delta_a")
    ax.set_ylabel("|Delta S|")
    ax.set_title(f"contrast vs detuning, epsilon = {eps:g}")
    ax.legend(fontsize=8)
    return fig


def _render_thresholds(plt, rows):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for kind, group in _group(rows, "kind"):
        pts = [(r["epsilon"], r["delta_b_th"]) for r in group if r["delta_b_th"] != "undefined"]
        if pts:
            ax.plot([p[0] for p in pts], [p[1] for p in pts], label=kind)
    ax.set_xlabel("epsilon")
    ax.set_ylabel("delta_b threshold")
    ax.set_title("maximal-contrast boundary")
    ax.legend(fontsize=8)
    return fig


def _render_snr(plt, rows):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for strategy, group in _group(rows, "strategy"):
        ax.semilogx(
            [r["tau_kappa_a"] for r in group],
            [r["snr_normalized"] for r in group],
            marker=".",
            label=strategy,
        )
    ax.set_xlabel("tau * kappa_a")
    ax.set_ylabel("SNR / (|alpha_in| sqrt(2 tau))")
    ax.set_title("readout SNR vs measurement duration")
    ax.legend(fontsize=8)
    return fig


def _render_optimize(plt, rows):
    by_eps = _group(rows, "epsilon")
    ncols = len(by_eps)
    fig, axes = plt.subplots(1, ncols, figsize=(4.0 * ncols, 3.5), squeeze=False)
    for ax, (eps, group) in zip(axes[0], by_eps):
        for strategy, sub in _group(group, "strategy"):
            ax.semilogx(
                [r["tau_kappa_a"] for r in sub],
                [r["snr_normalized"] for r in sub],
                marker=".",
                label=strategy,
            )
        ax.set_xlabel("tau * kappa_a")
        ax.set_title(f"epsilon = {eps:g}")
    axes[0][0].set_ylabel("SNR / (|alpha_in| sqrt(2 tau))")
    axes[0][-1].legend(fontsize=7)
    return fig


def _render_frequencies(plt, rows):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    defined = [r for r in rows if r["mode_splitting"] != "undefined"]
    ax.plot([r["epsilon"] for r in defined], [r["mode_splitting"] for r in defined], label="omega_a - omega_b")
    ax.plot([r["epsilon"] for r in defined], [r["pump_offset"] for r in defined], label="omega_p - (omega_a + omega_b)/2")
    ax.set_xlabel("epsilon")
    ax.set_ylabel("frequency placement")
    ax.set_title("optimal mode splitting and pump offset")
    ax.legend(fontsize=8)
    return fig


_RENDERERS = {
    "scatter": _render_scatter,
    "thresholds": _render_thresholds,
    "snr": _render_snr,
    "optimize": _render_optimize,
    "frequencies": _render_frequencies,
}


def render(command: str, rows: list[dict], path: str) -> None:
    """Render the rows of one command to an image file."""
    plt = _pyplot()
    fig = _RENDERERS[command](plt, rows)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
