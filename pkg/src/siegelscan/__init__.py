"""L(1, chi) for the quadratic character mod odd primes q, with Siegel-zero
bounds, Littlewood indices, Joshi flags and class numbers derived from it."""

__version__ = "0.1.0"

from .arith import PowerSequence, PrimeContext, build_power_sequence, find_primitive_root, primes_in_range
from .bounds import BoundsRecord, IndexRecord, index_record, siegel_bounds, s_of_q
from .lfun import LValue, Spectrum, extract_quadratic, l1, l1_alternating, l1_direct, l1_fft_spectrum
from .scan import ScanConfig, ScanRow, extrema, joshi_census, run_scan, scan_range

__all__ = [
    "BoundsRecord", "IndexRecord", "LValue", "PowerSequence", "PrimeContext", "ScanConfig",
    "ScanRow", "Spectrum", "build_power_sequence", "extract_quadratic", "extrema",
    "find_primitive_root", "index_record", "joshi_census", "l1", "l1_alternating",
    "l1_direct", "l1_fft_spectrum", "primes_in_range", "run_scan", "s_of_q", "scan_range",
    "siegel_bounds",
]
