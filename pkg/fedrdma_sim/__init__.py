"""
fedrdma-sim Library

Chunked one-sided-write transfer protocols over a simulated WAN, with the
baselines and federated-learning workloads used to compare them.
"""

__version__ = "0.1.0"

from . import core
from . import callbacks
from . import network
from . import utils
