"""
wreath: Cayley automatic representations of wreath products.

Lamplighter-type groups G wr Z, Z2 wr F2 and Z2 wr Z^2, their normal forms,
the automata that recognize multiplication by generators, and the checks
that compare both against breadth-first search of the Cayley graph.
"""

from .constants import (
    BALL_CAP,
    DEFAULT_MAXLEN,
    DEFAULT_RADIUS,
    STATUS_CAPPED,
    STATUS_FAIL,
    STATUS_PASS,
)

__version__ = "0.1.0"
