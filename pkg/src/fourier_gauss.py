"""
Fourier-Gauss Transforms of the (p,q)-Exponentials
Numerical checks of the transform identities with coupling q = p exp(-2k^2):

    forward:  (1/sqrt(2 pi)) int e^(ixy - y^2/2) E^(zeta)(t e^(iky)) dy
              = E^(zeta+1/2)(t e^(-kx)) e^(-x^2/2)
    inverse:  (1/sqrt(2 pi)) int e^(ixy - y^2/2) E^(zeta)(t e^(ky)) dy
              = E^(zeta-1/2)(t e^(ikx)) e^(-x^2/2)
    unified:  e^(iky) -> e^(i rho k y) on the integral side and
              E^(zeta+rho^2/2)(t e^(-rho k x)) on the closed side

E^(zeta) is the (p,q)-exponential with mu = nu = zeta/2. rho = sqrt(2),
zeta = 0 is Ramanujan's integral.

The integral side uses Gauss-Hermite quadrature after y = sqrt(2) u. A
trapezoid rule on a truncated interval is evaluated alongside it, and the
two must agree.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, Tuple

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy.integrate import trapezoid

from .deformed_exp import ExpFamily
from .qcore import (TINY, DeformationParams, DomainError, QuadratureError, Scalar,
                    VerificationReport, format_real, serialize_scalar)

__all__ = [
    "FGDirection", "FGSpec", "FGReport", "fg_closed_side", "fg_quadrature_side", "fg_verify",
    "named_fg_specs", "DEFAULT_NODES", "STABILITY_NODES",
]

DEFAULT_NODES = 128  # Gauss-Hermite nodes
STABILITY_NODES = 256  # Node count of the stability re-run
TRAPEZOID_HALF_WIDTH = 12.0  # Cross-check integrates over [-12, 12]
TRAPEZOID_POINTS = 4097
DEFAULT_FG_TOL = 1e-7
CROSS_CHECK_FACTOR = 10  # Rules may disagree by this multiple of the tolerance
CROSS_CHECK_FLOOR = 1e-12

# Configure module logger
logger = logging.getLogger('qcalc.fourier_gauss')


class FGDirection(str, Enum):
    FORWARD = "forward"
    INVERSE = "inverse"
    UNIFIED = "unified"


@dataclass(frozen=True)
class FGSpec:
    """One instance of a transform identity.

    Attributes:
        p: first base; the second is q = p exp(-2k^2)
        k: Gaussian coupling
        zeta: label of the exponential under the integral
        rho: scale of the unified form (ignored by forward and inverse)
        t: argument scale
        x: transform variable
        nodes: Gauss-Hermite node count
    """

    p: float
    k: float
    zeta: float = 0.0
    rho: float = 1.0
    t: Scalar = 0.2
    x: float = 0.5
    nodes: int = DEFAULT_NODES

    def __post_init__(self):
        for name in ("p", "k", "zeta", "rho", "x"):
            value = getattr(self, name)
            if isinstance(value, complex) or not math.isfinite(value):
                raise DomainError(f"{name} must be a finite real number, got {value!r}")
        if self.nodes < 2:
            raise DomainError(f"nodes must be >= 2, got {self.nodes}")
        DeformationParams(q=self.q, p=self.p)

    @property
    def q(self) -> float:
        return float(self.p) * math.exp(-2 * float(self.k) ** 2)

    def family(self, zeta: float) -> ExpFamily:
        return ExpFamily.pq_zeta(float(self.p), self.q, zeta)

    def with_nodes(self, nodes: int) -> "FGSpec":
        return FGSpec(self.p, self.k, self.zeta, self.rho, self.t, self.x, nodes)

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "k": self.k, "zeta": self.zeta, "rho": self.rho,
                "t": self.t, "x": self.x, "nodes": self.nodes}


@dataclass
class FGReport:
    lhs: Scalar
    rhs: Scalar
    abs_err: float
    rel_err: float
    nodes_used: int
    direction: FGDirection
    node_delta: float
    tolerance: float
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lhs": serialize_scalar(self.lhs),
            "rhs": serialize_scalar(self.rhs),
            "abs_err": float(format_real(self.abs_err)),
            "rel_err": float(format_real(self.rel_err)),
            "nodes_used": self.nodes_used,
            "direction": self.direction.value,
            "node_delta": float(format_real(self.node_delta)),
            "tolerance": self.tolerance,
            "passed": self.passed,
        }

    def to_verification_report(self, name: str, spec: FGSpec) -> VerificationReport:
        """Fold into the common report, failing when the node re-run drifts."""
        parameters = dict(spec.to_dict(), direction=self.direction.value,
                          node_delta=float(format_real(self.node_delta)))
        return VerificationReport(identity_name=name, parameters=parameters, lhs=self.lhs,
                                  rhs=self.rhs, abs_err=self.abs_err,
                                  rel_err=max(self.rel_err, self.node_delta),
                                  tolerance=self.tolerance, passed=self.passed)


def _rho(spec: FGSpec, direction: FGDirection) -> float:
    return float(spec.rho) if direction is FGDirection.UNIFIED else 1.0


def _integrand_family(spec: FGSpec) -> ExpFamily:
    return spec.family(float(spec.zeta))


def _argument(spec: FGSpec, direction: FGDirection, y: np.ndarray) -> np.ndarray:
    """Argument of E^(zeta) at integration points y."""
    if direction is FGDirection.INVERSE:
        return spec.t * np.exp(float(spec.k) * y)
    return spec.t * np.exp(1j * _rho(spec, direction) * float(spec.k) * y)


@lru_cache(maxsize=8)
def _hermite_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    return hermgauss(nodes)


# ============================================================================
# THE TWO SIDES
# ============================================================================

def fg_closed_side(spec: FGSpec, direction: FGDirection) -> Scalar:
    """The non-integral side, an exponential with shifted label times e^(-x^2/2)."""
    direction = FGDirection(direction)
    x, k = float(spec.x), float(spec.k)
    if direction is FGDirection.INVERSE:
        zeta, argument = float(spec.zeta) - 0.5, spec.t * cmath.exp(1j * k * x)
    else:
        rho = _rho(spec, direction)
        zeta, argument = float(spec.zeta) + rho * rho / 2, spec.t * math.exp(-rho * k * x)
    value = spec.family(zeta).evaluate(argument).value
    return complex(value) * math.exp(-x * x / 2)


def _gauss_hermite(spec: FGSpec, direction: FGDirection, nodes: int) -> complex:
    u, w = _hermite_rule(nodes)
    y = math.sqrt(2) * u
    values = (w * np.exp(1j * float(spec.x) * y)
              * _integrand_family(spec).evaluate_array(_argument(spec, direction, y)))
    # fsum over fixed node order keeps the result run-to-run identical
    total = complex(math.fsum(values.real), math.fsum(values.imag))
    return total / math.sqrt(math.pi)


def _trapezoid(spec: FGSpec, direction: FGDirection) -> complex:
    y = np.linspace(-TRAPEZOID_HALF_WIDTH, TRAPEZOID_HALF_WIDTH, TRAPEZOID_POINTS)
    values = (np.exp(1j * float(spec.x) * y - y * y / 2)
              * _integrand_family(spec).evaluate_array(_argument(spec, direction, y)))
    return complex(trapezoid(values, y)) / math.sqrt(2 * math.pi)


def fg_quadrature_side(spec: FGSpec, direction: FGDirection, tol: float = DEFAULT_FG_TOL) -> Scalar:
    """The integral side by Gauss-Hermite quadrature with spec.nodes nodes.

    Raises QuadratureError if the trapezoid cross-check differs by more than
    CROSS_CHECK_FACTOR * tol (relative).
    """
    direction = FGDirection(direction)
    primary = _gauss_hermite(spec, direction, spec.nodes)
    check = _trapezoid(spec, direction)
    disagreement = abs(primary - check) / max(abs(primary), TINY)
    limit = CROSS_CHECK_FACTOR * max(tol, CROSS_CHECK_FLOOR)
    logger.debug("%s quadrature: gauss-hermite=%r trapezoid=%r (rel diff %.3e)",
                 direction.value, primary, check, disagreement)
    if disagreement > limit:
        logger.error("Quadrature rules disagree by %.3e (limit %.3e)", disagreement, limit)
        raise QuadratureError(f"Gauss-Hermite and trapezoid rules disagree by {disagreement:.3e} "
                              f"relative (limit {limit:.3e}) for {direction.value} at {spec.to_dict()}")
    return primary


def fg_verify(spec: FGSpec, direction: FGDirection, tol: float = DEFAULT_FG_TOL) -> FGReport:
    """Both sides plus a re-run at STABILITY_NODES (or twice spec.nodes if already there)."""
    direction = FGDirection(direction)
    lhs = fg_closed_side(spec, direction)
    rhs = fg_quadrature_side(spec, direction, tol)
    rerun_nodes = STABILITY_NODES if spec.nodes != STABILITY_NODES else 2 * STABILITY_NODES
    rerun = _gauss_hermite(spec, direction, rerun_nodes)
    abs_err = abs(lhs - rhs)
    scale = max(abs(lhs), TINY)
    rel_err = float(abs_err) / scale
    node_delta = abs(rerun - rhs) / scale
    passed = rel_err <= tol and node_delta <= tol
    if not passed:
        logger.info("%s transform failed: rel_err=%.3e node_delta=%.3e tol=%.1e",
                    direction.value, rel_err, node_delta, tol)
    return FGReport(lhs=lhs, rhs=rhs, abs_err=float(abs_err), rel_err=rel_err, nodes_used=spec.nodes,
                    direction=direction, node_delta=node_delta, tolerance=tol, passed=passed)


def named_fg_specs(p: float = 0.9, k: float = 0.3, t: Scalar = 0.2, x: float = 0.5
                   ) -> Dict[str, Tuple[FGSpec, FGDirection]]:
    """The standard instances of the transform identities.

    forward-zeta0 maps e_pq under the integral to eps_pq; forward-zeta-half
    has Vinet's E_pq((q/p)^(1/2) .) on the closed side; the two inverse
    instances invert them; ramanujan is the unified form at rho = sqrt(2).
    """
    return {
        "forward-zeta0": (FGSpec(p, k, zeta=0.0, t=t, x=x), FGDirection.FORWARD),
        "forward-zeta-half": (FGSpec(p, k, zeta=0.5, t=t, x=x), FGDirection.FORWARD),
        "inverse-zeta-half": (FGSpec(p, k, zeta=0.5, t=t, x=x), FGDirection.INVERSE),
        "inverse-zeta1": (FGSpec(p, k, zeta=1.0, t=t, x=x), FGDirection.INVERSE),
        "ramanujan": (FGSpec(p, k, zeta=0.0, rho=math.sqrt(2), t=t, x=x), FGDirection.UNIFIED),
    }
