"""Figure rendering for spectral reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .spectral import SpectralReport

_ORIGIN_STYLE = {
    "inherited-generic": ("tab:blue", "o"),
    "inherited-plus-one": ("tab:green", "^"),
    "inherited-minus-one": ("tab:olive", "v"),
    "birth-plus-one": ("tab:red", "s"),
    "birth-minus-one": ("tab:purple", "D"),
}


def plot_spectrum(report: SpectralReport, path) -> None:
    """Render the classified walk spectrum to an image file.

    Left panel: eigenvalues on the unit circle, one marker per item,
    sized by multiplicity and colored by origin.  Right panel: the
    discriminant eigenvalues the inherited items came from.
    """
    fig, (ax_circle, ax_mu) = plt.subplots(
        1, 2, figsize=(9.0, 4.2), gridspec_kw={"width_ratios": [1.0, 1.0]}
    )

    theta = np.linspace(0.0, 2.0 * np.pi, 512)
    ax_circle.plot(np.cos(theta), np.sin(theta), color="0.8", lw=1.0, zorder=1)
    seen_origins = []
    for item in report.items:
        color, marker = _ORIGIN_STYLE.get(item.origin, ("0.3", "x"))
        label = item.origin if item.origin not in seen_origins else None
        if label:
            seen_origins.append(item.origin)
        ax_circle.scatter(
            [item.value.real],
            [item.value.imag],
            s=40 + 36 * item.multiplicity,
            color=color,
            marker=marker,
            label=label,
            zorder=3,
            alpha=0.85,
        )
        ax_circle.annotate(
            f"x{item.multiplicity}",
            (item.value.real, item.value.imag),
            textcoords="offset points",
            xytext=(6, 6),
            fontsize=8,
        )
    ax_circle.set_xlim(-1.35, 1.35)
    ax_circle.set_ylim(-1.35, 1.35)
    ax_circle.set_aspect("equal")
    ax_circle.set_xlabel("Re")
    ax_circle.set_ylabel("Im")
    ax_circle.set_title("walk spectrum")
    ax_circle.axhline(0.0, color="0.9", lw=0.8, zorder=0)
    ax_circle.axvline(0.0, color="0.9", lw=0.8, zorder=0)
    ax_circle.legend(fontsize=7, loc="upper left", framealpha=0.9)

    mus: dict[float, int] = {}
    for item in report.items:
        if item.source_mu is not None:
            mus.setdefault(float(item.source_mu), item.multiplicity)
    if mus:
        values = sorted(mus)
        counts = [mus[v] for v in values]
        markerline, stemlines, _ = ax_mu.stem(values, counts)
        plt.setp(markerline, color="tab:blue")
        plt.setp(stemlines, color="tab:blue", alpha=0.6)
    ax_mu.set_xlim(-1.1, 1.1)
    ax_mu.set_ylim(bottom=0)
    ax_mu.set_xlabel("discriminant eigenvalue")
    ax_mu.set_ylabel("multiplicity")
    ax_mu.set_title("discriminant spectrum")

    source = report.provenance.get("input", "")
    if source:
        fig.suptitle(str(source), fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
