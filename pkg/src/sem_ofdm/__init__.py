"""Optical OFDM over AWGN with periodic side-effect modulation, and its mitigation."""

from .channel import ChannelConfig, noise_sigma, transmit
from .mitigation import (
    DegenerateFrequency,
    FrequencyAtEdge,
    MitigationConfig,
    Mode,
    SinusoidEstimate,
)
from .ofdm import OfdmConfig, Scheme
from .sem import SemConfig, SemGroundTruth, Waveform

__version__ = "0.1.0"
