""" pathorder (order preservation for path-distribution dependent SDEs)

    Simulates pairs of McKean-Vlasov equations with memory driven by a common Brownian motion using an interacting
    particle Euler-Maruyama scheme, checks the sufficient conditions under which the pair stays ordered, and probes the
    necessity of those conditions empirically.
"""

import logging

# noinspection PyUnresolvedReferences
from ._version import __version__, __version_info__

logging.getLogger('pathorder').addHandler(logging.NullHandler())
