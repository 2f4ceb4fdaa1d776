"""Figure rendering for iqofdm simulation CSV output."""

from .render import PlotSpec, RenderResult, SchemaError, render

__version__ = "0.1.0"

__all__ = ["PlotSpec", "RenderResult", "SchemaError", "render"]
