"""Bundled plot specifications.

Each spec names its input CSV (as produced by the freqconv CLI presets), the
figure kind, axis labels in reference-frequency units, and the styling role
of every series.  The renderer is a strict CSV consumer; it never recomputes
physics.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SeriesStyle:
    column: str
    label: str
    color: str
    linestyle: str = "-"
    marker: str = ""
    scale: float = 1.0
    absolute: bool = False   # plot |value| (signed analytic couplings)


@dataclass(frozen=True)
class PlotSpec:
    figure: str
    kind: str                      # "levels" | "timeseries" | "coupling"
    inputs: tuple[str, ...]
    xlabel: str
    ylabel: str
    series: tuple[SeriesStyle, ...] = ()
    max_levels: int = 10           # lowest levels drawn in a levels panel
    inset: bool = False            # zoom onto the tracked anticrossing
    drive_column: str | None = None   # twin-axis qubit drive trace


def _timeseries(figure: str, csv_name: str,
                na_style: tuple[str, str], nb_style: tuple[str, str],
                nq_style: tuple[str, str]) -> PlotSpec:
    return PlotSpec(
        figure=figure, kind="timeseries", inputs=(csv_name,),
        xlabel="time (1/omega_q0)", ylabel="excitations",
        series=(
            SeriesStyle("n_a", "resonator a", na_style[0], na_style[1]),
            SeriesStyle("n_b", "resonator b", nb_style[0], nb_style[1]),
            SeriesStyle("n_q", "qubit", nq_style[0], nq_style[1]),
        ),
        drive_column="omega_q",
    )


SPECS: dict[str, PlotSpec] = {
    "fig2a": PlotSpec(
        figure="fig2a", kind="levels", inputs=("fig2_levels.csv",),
        xlabel="omega_q / omega_q0", ylabel="E / omega_q0", inset=True),
    "fig5a": PlotSpec(
        figure="fig5a", kind="levels", inputs=("fig5_levels.csv",),
        xlabel="omega_q / omega_q0", ylabel="E / omega_q0", inset=True),
    "fig7a": PlotSpec(
        figure="fig7a", kind="levels", inputs=("fig7_levels.csv",),
        xlabel="omega_q / omega_q0", ylabel="E / omega_q0", inset=True),
    # single-photon trace: a red dash-dotted, b black dashed, qubit blue solid
    "fig3b": _timeseries("fig3b", "fig3b_timeseries.csv",
                         ("tab:red", "-."), ("black", "--"), ("tab:blue", "-")),
    # two-photon traces: a red solid, b black dash-dotted, qubit blue dashed
    "fig5b": _timeseries("fig5b", "fig5b_timeseries.csv",
                         ("tab:red", "-"), ("black", "-."), ("tab:blue", "--")),
    "fig7b": _timeseries("fig7b", "fig7b_timeseries.csv",
                         ("tab:red", "-"), ("black", "-."), ("tab:blue", "--")),
    "fig4": PlotSpec(
        figure="fig4", kind="coupling", inputs=("fig4_geff.csv",),
        xlabel="g / omega_q0", ylabel="2 g_eff / omega_q0",
        series=(
            SeriesStyle("analytic", "analytic", "tab:red", "-",
                        scale=2.0, absolute=True),
            SeriesStyle("numeric", "numeric", "black", "", marker="o",
                        scale=2.0),
        )),
    "fig6": PlotSpec(
        figure="fig6", kind="coupling", inputs=("fig6_geff.csv",),
        xlabel="g / omega_q0", ylabel="2 g_eff / omega_q0",
        series=(
            SeriesStyle("analytic", "analytic", "tab:red", "-",
                        scale=2.0, absolute=True),
            SeriesStyle("numeric", "numeric", "black", "", marker="o",
                        scale=2.0),
        )),
    "fig8": PlotSpec(
        figure="fig8", kind="coupling", inputs=("fig8_geff.csv",),
        xlabel="g / omega_q0", ylabel="2 g_eff / omega_q0",
        series=(
            SeriesStyle("analytic_rabi", "full model", "tab:red", "-",
                        scale=2.0, absolute=True),
            SeriesStyle("analytic_jc", "RWA", "tab:blue", "--",
                        scale=2.0, absolute=True),
            SeriesStyle("numeric", "numeric", "black", "", marker="o",
                        scale=2.0),
        )),
}
