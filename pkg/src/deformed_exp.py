"""
Deformed Exponential Functions
The (q, mu)-exponential E_q^(mu), the (p, q, mu, nu)-exponential
E_pq^(mu,nu), its zeta-labelled diagonal E_pq^(zeta) = E_pq^(zeta/2, zeta/2),
Vinet's E_pq and the named special cases, together with the classical-limit
diagnostics and the alpha-difference rule of e_q.

Every family is a power series sum_n c_n z^n whose coefficients are walked
by their ratio c_(n+1)/c_n, so the same family object serves scalar
evaluation and the vectorized evaluation used by quadrature.
"""

import cmath
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .qcore import (DEFAULT_POLICY, DeformationParams, DomainError, NonConvergence,
                    QPolynomial, Scalar, SeriesEval, SeriesPolicy, qnumber_m,
                    qpochhammer)
from .qseries import ratio_series

__all__ = [
    "ExpKind", "ExpFamily", "eq_mu", "epq_munu", "vinet_exp", "named_exp",
    "classical_limit_report", "eq_difference_residuals", "Q_LADDER", "PQ_LADDER",
]

# Ladders approaching the undeformed point, used by the classical-limit checks
Q_LADDER: Tuple[float, ...] = (0.9, 0.99, 0.999)
PQ_LADDER: Tuple[Tuple[float, float], ...] = ((0.95, 0.9), (0.995, 0.99), (0.9995, 0.999))

NAMED_EXPONENTIALS = ("e_q", "E_q_vinet", "e_pq", "E_pq", "eps_pq")

# Configure module logger
logger = logging.getLogger('qcalc.deformed_exp')


class ExpKind(str, Enum):
    Q_MU = "q_mu"
    PQ_MUNU = "pq_munu"
    PQ_ZETA = "pq_zeta"
    VINET = "vinet"


@dataclass(frozen=True)
class ExpFamily:
    """One deformed exponential family with validated parameters."""

    kind: ExpKind
    params: DeformationParams
    zeta: Optional[Scalar] = None

    @classmethod
    def q_mu(cls, q: Scalar, mu: Scalar) -> "ExpFamily":
        if mu < 0:
            logger.error("E_q^(mu) with mu=%r", mu)
            raise DomainError(f"mu out of domain: E_q^(mu) needs mu >= 0, got mu={mu}")
        return cls(ExpKind.Q_MU, DeformationParams(q=q, mu=mu))

    @classmethod
    def pq_munu(cls, p: Scalar, q: Scalar, mu: Scalar, nu: Scalar) -> "ExpFamily":
        return cls(ExpKind.PQ_MUNU, DeformationParams(q=q, p=p, mu=mu, nu=nu))

    @classmethod
    def pq_zeta(cls, p: Scalar, q: Scalar, zeta: Scalar) -> "ExpFamily":
        return cls(ExpKind.PQ_ZETA, DeformationParams(q=q, p=p, mu=zeta / 2, nu=zeta / 2), zeta=zeta)

    @classmethod
    def vinet(cls, p: Scalar, q: Scalar) -> "ExpFamily":
        params = DeformationParams(q=q, p=p)
        if not q < 1:
            raise DomainError(f"q out of domain: Vinet's E_pq needs q < 1, got q={q}")
        return cls(ExpKind.VINET, params)

    @property
    def mu(self) -> Scalar:
        return self.params.mu if self.params.mu is not None else 0

    @property
    def nu(self) -> Scalar:
        return self.params.nu if self.params.nu is not None else 0

    @property
    def needs_unit_disk(self) -> bool:
        """mu = 0 with p = 1 (or q-only) is the e_q series, convergent for |z| < 1."""
        if self.kind is ExpKind.Q_MU:
            return self.mu == 0
        return self.kind is not ExpKind.VINET and self.params.unit_disk_boundary

    def ratio(self, n: int) -> Scalar:
        """c_(n+1) / c_n."""
        q = self.params.q
        if self.kind is ExpKind.Q_MU:
            return q ** (self.mu * (2 * n + 1)) / (1 - q ** (n + 1))
        p = self.params.p
        denominator = p ** (-(n + 1)) - q ** (n + 1)
        if self.kind is ExpKind.VINET:
            return self.params.ratio ** n / denominator
        return self.params.weight ** (2 * n + 1) / denominator

    def _check_argument(self, radius: float) -> None:
        if self.needs_unit_disk and not radius < 1:
            logger.error("%s at mu=0 needs |z| < 1, got |z|=%r", self.kind.value, radius)
            raise DomainError(f"z out of domain: the mu=0 exponential needs |z| < 1, got |z|={radius}")

    def evaluate(self, z: Scalar, policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
        self._check_argument(abs(z))
        return ratio_series(1.0, lambda n: self.ratio(n) * z, policy, f"{self.kind.value} exponential")

    def evaluate_array(self, z: np.ndarray, policy: SeriesPolicy = DEFAULT_POLICY) -> np.ndarray:
        """Vectorized evaluation; stops once every entry meets the policy."""
        z = np.asarray(z, dtype=complex)
        self._check_argument(float(np.max(np.abs(z), initial=0.0)))
        term = np.ones_like(z)
        total = np.ones_like(z)
        small = 0
        for n in range(policy.max_terms - 1):
            term = term * z * self.ratio(n)
            total = total + term
            if not np.all(np.isfinite(total)):
                logger.error("%s overflowed at term %d", self.kind.value, n + 1)
                raise DomainError(f"{self.kind.value} exponential overflowed at max |z|={np.max(np.abs(z))}")
            if np.all(np.abs(term) <= policy.rel_tol * np.abs(total)):
                small += 1
                if small >= policy.consecutive_small:
                    logger.debug("%s array evaluation converged after %d terms", self.kind.value, n + 2)
                    return total
            else:
                small = 0
        logger.error("%s array evaluation did not converge", self.kind.value)
        raise NonConvergence(f"{self.kind.value} exponential did not converge within {policy.max_terms} terms")


# ============================================================================
# PUBLIC EVALUATORS
# ============================================================================

def eq_mu(z: Scalar, q: Scalar, mu: Scalar, policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
    """E_q^(mu)(z) = sum_n q^(mu n^2) z^n / (q; q)_n.

    mu = 0 gives e_q(z) = 1/(z; q)_inf and mu = 1/2 gives (-q^(1/2) z; q)_inf.
    """
    return ExpFamily.q_mu(q, mu).evaluate(z, policy)


def epq_munu(z: Scalar, p: Scalar, q: Scalar, mu: Scalar, nu: Scalar,
             policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
    """E_pq^(mu,nu)(z) = sum_n (q^mu / p^nu)^(n^2) z^n / [p, q; p, q]_n."""
    return ExpFamily.pq_munu(p, q, mu, nu).evaluate(z, policy)


def vinet_exp(z: Scalar, p: Scalar, q: Scalar, policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
    """Vinet's E_pq(z) = sum_n (q/p)^(n(n-1)/2) z^n / [p, q; p, q]_n."""
    return ExpFamily.vinet(p, q).evaluate(z, policy)


def named_exp(name: str, z: Scalar, params: DeformationParams,
              policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
    """Dispatch a named exponential.

    e_q = E_q^(0); E_q_vinet = sum q^(n(n-1)/2) z^n / (q;q)_n (Vinet's form at
    p = 1); e_pq = E_pq^(0,0); E_pq is Vinet's; eps_pq = E_pq^(1/2).
    """
    if name not in NAMED_EXPONENTIALS:
        raise DomainError(f"unknown exponential {name!r}; expected one of {', '.join(NAMED_EXPONENTIALS)}")
    if name == "e_q":
        return eq_mu(z, params.q, 0, policy)
    if name == "E_q_vinet":
        return vinet_exp(z, 1, params.q, policy)
    if params.p is None:
        raise DomainError(f"{name} needs the second base p")
    if name == "e_pq":
        return epq_munu(z, params.p, params.q, 0, 0, policy)
    if name == "E_pq":
        return vinet_exp(z, params.p, params.q, policy)
    return ExpFamily.pq_zeta(params.p, params.q, 0.5).evaluate(z, policy)


def classical_limit_report(z: Scalar, mu: Scalar, nu: Scalar,
                           qs: Sequence[Tuple[Optional[Scalar], Scalar]]) -> List[float]:
    """|E(s z) - exp(z)| along a ladder of bases.

    Pairs (None, q) evaluate E_q^(mu)((1-q) z); pairs (p, q) evaluate
    E_pq^(mu,nu)((1/p - q) z).
    """
    target = cmath.exp(z)
    deviations = []
    for p, q in qs:
        if p is None:
            value = eq_mu((1 - q) * z, q, mu).value
        else:
            value = epq_munu((1 / p - q) * z, p, q, mu, nu).value
        deviations.append(abs(value - target))
    logger.debug("Classical-limit deviations for z=%r: %s", z, deviations)
    return deviations


def eq_difference_residuals(order: int, q: Scalar) -> List[QPolynomial]:
    """Residuals of D_alpha e_q(alpha y) = y/(1-q) e_q(alpha y), per power of alpha."""
    coefficients = [QPolynomial.monomial(m, q ** 0 / qpochhammer(q, q, m)) for m in range(order + 1)]
    return [coefficients[m + 1] * qnumber_m(m + 1, q) - coefficients[m].shift() * (1 / (1 - q))
            for m in range(order)]
