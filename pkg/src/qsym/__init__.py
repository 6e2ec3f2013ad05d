"""qsym: exact verification of q-Bernoulli symmetry identities.

The package computes Carlitz q-Bernoulli numbers and polynomials in exact
rational arithmetic, verifies that two symmetric-sum expressions built from
them are invariant under every permutation of their weight tuple, and
cross-checks the underlying q-integral representation with a truncated
p-adic engine.  A FastAPI service exposes every computation; the ``qsym``
CLI is a thin client over the same endpoints.
"""

__version__ = "0.1.0"

from qsym.qbernoulli import beta_poly, beta_poly_at_power, carlitz_beta, classical_bernoulli
from qsym.qcalc import q_number
from qsym.rationals import format_rational, parse_rational

__all__ = [
    "__version__",
    "beta_poly",
    "beta_poly_at_power",
    "carlitz_beta",
    "classical_bernoulli",
    "format_rational",
    "parse_rational",
    "q_number",
]
