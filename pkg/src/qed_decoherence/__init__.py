"""Exact decoherence dynamics of a free charged Gaussian wave packet coupled
to the electromagnetic field at temperature T, with every closed form
cross-checked against independent quadrature and transform oracles."""

from .decoherence import DecoherenceFactors
from .densmat import GaussianPacket
from .params import ModelParams, Timescales, validity_window

__all__ = [
    "DecoherenceFactors",
    "GaussianPacket",
    "ModelParams",
    "Timescales",
    "validity_window",
]

__version__ = "0.1.0"
