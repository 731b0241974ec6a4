"""Python bindings for the tcprof influence-profiling library."""

import json as _json

from ._core import (
    ComputeError,
    IoError,
    Network,
    ParseError,
    TcprofError,
    ValidationError,
    __version__,
    build_subnetwork,
    esr,
    load_network,
    parse_network,
    pen,
    pen_distance,
    perturb,
    ppr,
    source_diffs,
)
from . import _core


def profile(network, genes, known, k=2, n_bucket=5, m_levels=(1, 10, 20, 50), measure="pen"):
    """Delta histogram as a dict; `known` is an iterable of symbol tuples."""
    text = _core.profile(network, list(genes), [list(c) for c in known], k, n_bucket, list(m_levels), measure)
    return _json.loads(text)


def run_pipeline(config, threads=1):
    """Runs the full pipeline from a config dict (same keys as the CLI's JSON config)."""
    return _core.run_pipeline(_json.dumps(config), threads)


__all__ = [
    "ComputeError",
    "IoError",
    "Network",
    "ParseError",
    "TcprofError",
    "ValidationError",
    "__version__",
    "build_subnetwork",
    "esr",
    "load_network",
    "parse_network",
    "pen",
    "pen_distance",
    "perturb",
    "ppr",
    "profile",
    "run_pipeline",
    "source_diffs",
]
