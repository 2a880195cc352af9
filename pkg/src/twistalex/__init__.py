"""Twisted Alexander polynomials of finitely presented groups, with
nonfibered-class certificates and ribbon concordance screens."""

from .laurent import LaurentPoly, canonicalize, divides, gcd_z, is_monic
from .polymatrix import PolyMatrix, det, kernel_basis_q, minors_gcd, snf_q
from .presentation import (
    BraidWord,
    FreeWord,
    GroupRingElement,
    Presentation,
    braid_to_presentation,
    connected_sum,
    fox_derivative,
)
from .finite_reps import (
    HomAssignment,
    Representation,
    dedupe,
    enumerate_homs,
    image_subgroup,
    regular_representation,
    trivial_representation,
)
from .twisted import TwistedComplex, TwistedPolyReport, assemble, delta0, delta1_q, delta1_z, twisted_report, wada
from .obstructions import FiberStatus, RibbonVerdict, fiber_check, genus_degree_report, ribbon_screen

__version__ = "0.1.0"
