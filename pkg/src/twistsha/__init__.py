"""2-descent, genus theory and Cassels pairings for twists of y^2 = x(x - a^2)(x + b^2)."""

from .cassels import classify, classify_route_A, classify_route_B
from .dist import density_report, density_scan
from .errors import (
    BadShape,
    BudgetExceeded,
    EquivalenceViolation,
    HypothesisViolation,
    Inconclusive,
    NotFound,
    NotSelmerMinimal,
    RankAnomaly,
    TorsionAnomaly,
    TwistError,
)
from .genus import genus_data, h4, h8_indicator
from .params import CurveParams, TwistN
from .selmer import SelmerTriple, check_curve, sel2_prime, torsion_check

__version__ = "0.1.0"

__all__ = [
    "BadShape",
    "BudgetExceeded",
    "CurveParams",
    "EquivalenceViolation",
    "HypothesisViolation",
    "Inconclusive",
    "NotFound",
    "NotSelmerMinimal",
    "RankAnomaly",
    "SelmerTriple",
    "TorsionAnomaly",
    "TwistError",
    "TwistN",
    "check_curve",
    "classify",
    "classify_route_A",
    "classify_route_B",
    "density_report",
    "density_scan",
    "genus_data",
    "h4",
    "h8_indicator",
    "sel2_prime",
    "torsion_check",
]
