"""Polar-code rate matching with a fixed information set.

Index algebra and the degradation/puncture-propagation calculus, bit-channel
reliability constructions, quasi-uniform and worst-quality puncture
patterns with diagnostics, an SC/SCL polar codec and a reproducible
Monte-Carlo FER/BER harness.
"""

from ._version import __version__
from .bitops import binary_expand, bit_reverse, bit_reverse_set, covers
from .channel import AWGN, BEC, ChannelConfig, depuncture_rx, puncture_tx, transmit
from .codec import (
    CRC8_0X9B,
    CRC16_0X8005,
    CrcPoly,
    crc_append,
    crc_check,
    crc_for_width,
    encode,
    extract_payload,
    place_payload,
    polar_transform,
    sc_decode,
    scl_decode,
)
from .construct import (
    DEFAULT_PW_BETA,
    PolarCodeSpec,
    ReliabilityProfile,
    bec_bhattacharyya,
    ga_reliability,
    pw_reliability,
    select_information_set,
)
from .degrade import (
    PropagationMap,
    basic_map,
    propagate,
    propagate_puncture,
    punctured_bit_channels,
)
from .puncture import (
    PatternComparison,
    PatternReport,
    PuncturePattern,
    UnsupportedConfiguration,
    analyze_pattern,
    compare_patterns,
    custom_pattern,
    qup_pattern,
    wqp_pattern,
)
from .sim import PointResult, SimConfig, SimResult, emit, load_result, run_point, run_sweep

__all__ = [
    "__version__",
    "binary_expand", "bit_reverse", "bit_reverse_set", "covers",
    "basic_map", "propagate", "propagate_puncture", "punctured_bit_channels",
    "PropagationMap",
    "ReliabilityProfile", "PolarCodeSpec", "DEFAULT_PW_BETA",
    "bec_bhattacharyya", "ga_reliability", "pw_reliability", "select_information_set",
    "PuncturePattern", "PatternReport", "PatternComparison", "UnsupportedConfiguration",
    "qup_pattern", "wqp_pattern", "custom_pattern", "analyze_pattern", "compare_patterns",
    "CrcPoly", "CRC8_0X9B", "CRC16_0X8005", "crc_append", "crc_check", "crc_for_width",
    "polar_transform", "encode", "place_payload", "extract_payload",
    "sc_decode", "scl_decode",
    "ChannelConfig", "AWGN", "BEC", "puncture_tx", "transmit", "depuncture_rx",
    "SimConfig", "SimResult", "PointResult", "run_point", "run_sweep", "emit", "load_result",
]
