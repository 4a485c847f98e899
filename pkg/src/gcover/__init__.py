"""Parametric Groebner bases over Q.

For an ideal of Q[u1..um][x1..xn] and a term order, this package
computes luckiness data (leading-coefficient ideals, the singular
ideal, generic parametric subsets) and the canonical irreducible
Groebner cover of any locally closed subset of the parameter space,
with an independent verifier that recomputes fibre bases under
specialization. See the README for the CLI.
"""

from .constructible import ConstructibleSet, LocallyClosedPiece, largest_open_inside
from .cover import (
    GroebnerCover,
    MergedStratum,
    canonical_cover,
    certify_cover,
    comprehensive_gb,
    covers_equivalent,
    homogeneous_cover,
    is_homogeneous,
)
from .errors import (
    FactorLimitError,
    InternalConsistencyError,
    ParseError,
    RingMismatchError,
    ZeroPolynomialError,
)
from .factor import factor, is_irreducible, poly_gcd, squarefree_part
from .groebner import Ideal, buchberger, normal_form
from .minprimes import PrimeIdeal, minimal_primes
from .orders import GREVLEX, GRLEX, LEX, BlockOrder, by_name
from .parametric import (
    ParamRing,
    RingGB,
    Stratum,
    fibre_groebner,
    is_lucky,
    is_parametric,
    lc_ideal,
    pseudo_divide,
    ring_gb,
    singular_ideal,
    z_gen,
)
from .poly import Polynomial, PolyRing, QQ
from .residue import QuotientDomain, ResidueField
from .verify import SamplePlan, brute_force_lt_classes, check_cover, check_stratum, sample_points

__version__ = "0.1.0"

FIXTURES = ("EX1", "EX2", "EX3", "EX4", "EX5")


def fixture_path(name):
    """Filesystem path of a bundled problem file, e.g. fixture_path('EX1')."""
    from importlib.resources import files

    return str(files("gcover").joinpath("fixtures", f"{name}.gcp"))
