"""Near-bipartite partitions of plane graphs without 4-, 6- or 8-cycles.

Builds plane graphs from rotation systems, searches and verifies
IF-colorings (independent set + induced forest), performs the
reduction/lift recursion that constructs superextensions of precolored
short cycles, and audits the exact-thirds discharging bookkeeping.
"""

__version__ = "0.1.0"

from .plane_graph import PlaneGraph, build, from_text, to_text  # noqa: F401
from .coloring import IFColoring, I, F  # noqa: F401
