"""Figure rendering for freqconv CSV outputs."""

from .render import SchemaError, build_figure, render
from .specs import SPECS, PlotSpec, SeriesStyle

__all__ = ["SPECS", "PlotSpec", "SchemaError", "SeriesStyle", "build_figure",
           "render"]
