"""Figure rendering for report files; kept separate so matplotlib loads only
on the report path."""

from __future__ import annotations

from .experiments import ExperimentReport


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_sweep_figure(report: ExperimentReport, path: str) -> None:
    plt = _pyplot()
    keeps = [row["keep"] for row in report.rows]
    means = [row["mean_found_ratio"] for row in report.rows]
    stds = [row["std_found_ratio"] for row in report.rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.errorbar(keeps, means, yerr=stds, marker="o", capsize=3)
    ax.set_xlabel("keep fraction")
    ax.set_ylabel("mean fraction of lengths found")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(True, alpha=0.3)
    n = report.config.get("n")
    ax.set_title(f"cycle lengths found vs. kept edges (n={n})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_spectrum_figure(report: ExperimentReport, path: str) -> None:
    plt = _pyplot()
    trials = [t for t in report.trials if t.get("error") is None]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    xs = [t["trial"] for t in trials]
    ys = [t["found_ratio"] for t in trials]
    ax.bar(xs, ys, color="#4878a8")
    ax.set_xlabel("trial")
    ax.set_ylabel("fraction of lengths found")
    ax.set_ylim(0, 1.05)
    ax.grid(True, axis="y", alpha=0.3)
    n = report.config.get("n")
    ax.set_title(f"spectrum coverage per trial (n={n})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
