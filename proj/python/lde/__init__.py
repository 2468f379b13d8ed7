"""Long-distance entanglement mediated by gapped spin chains.

Thin python layer over the C++ core: exact diagonalization of probe-chain
systems, zero-frequency response functions, second-order effective probe
Hamiltonians, the finite-chain conformal and AKLT single-mode closed forms,
and thermal entanglement thresholds.
"""

from lde._lde import *  # noqa: F401,F403
from lde._lde import __version__  # noqa: F401
