"""Numerical toolkit for spectral models of the Riemann zeta zeros.

Submodules: ``specfun`` (complex log-Gamma, Bessel K with complex order,
Kummer M), ``zeta`` (Euler-Maclaurin evaluator, Riemann-Siegel theta,
Hardy Z, zero records), ``counting`` (closed-form level counts, classical
orbit), ``dirac`` (spectral functions and their cosine-kernel twins),
``landau`` (lowest-Landau-level wavefunctions and box quantization),
``mirrors`` (transfer-matrix mirror arrays, phase tuning, normalizability
diagnostics), ``perron`` (Moebius/Mertens sums and residue expansions),
and the ``cli`` harness.
"""

from . import counting, dirac, landau, mirrors, perron, specfun, svg, zeta
from .errors import RZError

__all__ = ["counting", "dirac", "landau", "mirrors", "perron", "specfun",
           "svg", "zeta", "RZError"]

__version__ = "0.1.0"
