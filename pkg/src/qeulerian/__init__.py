"""Exact computations around the (maj, exc) q-Eulerian polynomials.

Submodules: ``exactalg`` (polynomials, z-series), ``qcalc`` (q-analogs),
``permstat`` (permutation statistics), ``genfun`` (generating functions),
``quasisym`` (quasisymmetric functions), ``wordcomb`` (necklaces, banners),
``posetlab`` (Rees products and homology) and ``cli``.
"""

from .exactalg import Poly, ZSeries
from .genfun import Report, aid_des_poly, fix_refined_poly, maj_exc_poly
from .permstat import Perm, compute_stats

__all__ = [
    "Poly",
    "ZSeries",
    "Perm",
    "Report",
    "compute_stats",
    "maj_exc_poly",
    "fix_refined_poly",
    "aid_des_poly",
]

__version__ = "0.1.0"
