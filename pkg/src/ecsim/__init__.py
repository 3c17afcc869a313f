"""ecsim: exact simulation and verification of entangled coherent states.

Subpackages by concern:

* :mod:`ecsim.states` — exact coherent/Fock superposition algebra
* :mod:`ecsim.elements` — beam splitters, displacements, Kerr interactions
* :mod:`ecsim.measure` — displaced parity/threshold observables and collapse
* :mod:`ecsim.bell` — three-party Bell-Mermin functions
* :mod:`ecsim.optimize` — multi-start steepest-ascent settings search
* :mod:`ecsim.circuits` — GHZ chain and heralded W-type generation
* :mod:`ecsim.fockoracle` — independent truncated-Fock brute-force checks
* :mod:`ecsim.kernels` — compiled/pure hot-path backends
* :mod:`ecsim.cli` — command-line front end
"""

__version__ = "0.1.0"

from .measure import GhzSign
from .states import HybridState, KetFactor, ProductTerm

__all__ = ["GhzSign", "HybridState", "KetFactor", "ProductTerm", "__version__"]
