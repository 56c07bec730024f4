"""
Matrix Elements of Products of Deformed Exponentials
Closed forms for U_(m,n), the coefficient of basis_m in
E(c+ A+) E(c- A-) basis_n, for the q-oscillator (kernel Q^(mu,nu)) and the
(p,q)-oscillator (kernel L^(gamma; mu,nu)), with the reductions of both
kernels to the standard basic and bibasic series.

Both closed forms come in two branches. The raising-dominant branch is used
for m > n, the lowering-dominant branch for m <= n.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from .qcore import (DeformationParams, DomainError, Scalar, pq_factorial, qbinomial,
                    qpochhammer, serialize_scalar)
from .qseries import PhiSpec, little_q_jacobi, phi_bibasic, phi_rs, q_laguerre

__all__ = [
    "Branch", "MatrixElementResult", "q_kernel_Q", "u_q", "pq_binomial", "pq_kernel_L", "u_pq",
    "q_kernel_Q_phi31", "q_kernel_Q_little_jacobi", "q_kernel_Q_laguerre", "pq_kernel_L_bibasic",
    "BIBASIC_CASES",
]

BIBASIC_CASES = ("0,0", "1/4,1/4")  # (mu, nu) labels with a bibasic Phi form

# Configure module logger
logger = logging.getLogger('qcalc.matrix_elements')


class Branch(str, Enum):
    RAISING_DOMINANT = "raising_dominant"
    LOWERING_DOMINANT = "lowering_dominant"


@dataclass(frozen=True)
class MatrixElementResult:
    """U_(m,n) with the branch that produced it.

    ``alternate_value`` is the other branch at m = n, filled only when the
    caller asks for both.
    """

    value: Scalar
    branch: Branch
    kernel_value: Scalar
    alternate_value: Optional[Scalar] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "value": serialize_scalar(self.value),
            "branch": self.branch.value,
            "kernel_value": serialize_scalar(self.kernel_value),
        }
        if self.alternate_value is not None:
            data["alternate_value"] = serialize_scalar(self.alternate_value)
        return data


def _check_indices(m: int, n: int) -> None:
    if m < 0 or n < 0:
        logger.error("Negative matrix index m=%r n=%r", m, n)
        raise DomainError(f"matrix indices must be nonnegative, got m={m}, n={n}")


def _check_degree(n: int, gamma: Scalar, integral_gamma: bool) -> None:
    if n < 0:
        raise DomainError(f"kernel degree must be >= 0, got {n}")
    if gamma < 0 or (integral_gamma and int(gamma) != gamma):
        logger.error("Kernel label gamma=%r rejected", gamma)
        raise DomainError(f"gamma must be a nonnegative {'integer' if integral_gamma else 'number'}, "
                          f"got {gamma}")


def _pole_free(value: Scalar, what: str) -> Scalar:
    if value == 0:
        logger.error("Pole in %s", what)
        raise DomainError(f"lower-parameter pole in {what}")
    return value


# ============================================================================
# q-OSCILLATOR
# ============================================================================

def q_kernel_Q(n: int, x: Scalar, gamma: Scalar, mu: Scalar, nu: Scalar, q: Scalar) -> Scalar:
    """Q^(mu,nu)_n(x; q^gamma | q).

    sum_k q^(k^2 (mu+nu) + (2 nu gamma + n) k - k(k-1)/2)
          (q^-n; q)_k / ((q; q)_k (q^(gamma+1); q)_k) x^k

    The sum stops at k = n, where (q^-n; q)_(n+1) vanishes.
    """
    _check_degree(n, gamma, integral_gamma=False)
    DeformationParams(q=q)
    lower = q ** (gamma + 1)
    term: Scalar = q ** 0
    total = term
    for k in range(n):
        exponent = (2 * k + 1) * (mu + nu) + 2 * nu * gamma + n - k
        denominator = _pole_free((1 - q ** (k + 1)) * (1 - lower * q ** k), "Q kernel")
        term = term * q ** exponent * (1 - q ** (k - n)) / denominator * x
        total = total + term
    return total


def u_q(m: int, n: int, alpha: Scalar, beta: Scalar, mu: Scalar, nu: Scalar, q: Scalar,
        verify_branches: bool = False) -> MatrixElementResult:
    """U_(m,n) for E_q^(mu)((1-q) alpha A+) E_q^(nu)((1-q) beta A-).

    n >= m: beta^(n-m) [n choose m]_q q^(nu (n-m)^2) Q^(mu,nu)_m(-alpha beta (1-q); q^(n-m) | q)
    m >= n: ((1-q) alpha)^(m-n) q^(mu (m-n)^2) / (q;q)_(m-n) Q^(nu,mu)_n(-alpha beta (1-q); q^(m-n) | q)

    The second branch carries mu and nu exchanged in the kernel.
    """
    _check_indices(m, n)
    DeformationParams(q=q)
    x = -alpha * beta * (1 - q)

    def lowering() -> MatrixElementResult:
        kernel = q_kernel_Q(m, x, n - m, mu, nu, q)
        prefactor = beta ** (n - m) * qbinomial(n, m, q) * q ** (nu * (n - m) ** 2)
        return MatrixElementResult(prefactor * kernel, Branch.LOWERING_DOMINANT, kernel)

    def raising() -> MatrixElementResult:
        kernel = q_kernel_Q(n, x, m - n, nu, mu, q)
        prefactor = ((1 - q) * alpha) ** (m - n) * q ** (mu * (m - n) ** 2) / qpochhammer(q, q, m - n)
        return MatrixElementResult(prefactor * kernel, Branch.RAISING_DOMINANT, kernel)

    if m > n:
        return raising()
    result = lowering()
    if m == n and verify_branches:
        alternate = raising().value
        logger.debug("u_q(%d,%d) branches: %r vs %r", m, n, result.value, alternate)
        return MatrixElementResult(result.value, result.branch, result.kernel_value, alternate)
    return result


# ============================================================================
# (p,q)-OSCILLATOR
# ============================================================================

def pq_binomial(n: int, m: int, p: Scalar, q: Scalar) -> Scalar:
    """[n m]_(p,q) = [p,q;p,q]_n / ([p,q;p,q]_m [p,q;p,q]_(n-m))."""
    if not 0 <= m <= n:
        raise DomainError(f"(p,q)-binomial needs 0 <= m <= n, got n={n}, m={m}")
    denominator = pq_factorial(1, 1, p, q, m) * pq_factorial(1, 1, p, q, n - m)
    return pq_factorial(1, 1, p, q, n) / _pole_free(denominator, "(p,q)-binomial")


def pq_kernel_L(n: int, x: Scalar, gamma: int, mu: Scalar, nu: Scalar, p: Scalar, q: Scalar) -> Scalar:
    """L^(gamma; mu,nu)_n(x; p, q).

    sum_k (q^mu/p^nu)^(2k(gamma+k)) ((pq)^-n; pq)_k / ((pq; pq)_k ((pq)^(gamma+1); pq)_k)
          p^(k(k+1)/2) [x (1 - pq) p^(gamma+n)]^k
    """
    _check_degree(n, gamma, integral_gamma=True)
    params = DeformationParams(q=q, p=p)
    base = params.pq
    weight = q ** mu / p ** nu
    lower = base ** (gamma + 1)
    argument = x * (1 - base) * p ** (gamma + n)
    term: Scalar = base ** 0
    total = term
    for k in range(n):
        denominator = _pole_free((1 - base ** (k + 1)) * (1 - lower * base ** k), "L kernel")
        term = (term * weight ** (2 * (gamma + 2 * k + 1)) * (1 - base ** (k - n)) / denominator
                * p ** (k + 1) * argument)
        total = total + term
    return total


def u_pq(m: int, n: int, alpha: Scalar, beta: Scalar, mu: Scalar, nu: Scalar, p: Scalar, q: Scalar,
         verify_branches: bool = False) -> MatrixElementResult:
    """U_(m,n) for the (p,q)-oscillator with the (mu, nu)-exponentials."""
    _check_indices(m, n)
    params = DeformationParams(q=q, p=p)
    ratio = params.ratio
    gauss = q ** (mu - 0.25) / p ** (nu - 0.25)
    x = -alpha * beta

    def lowering() -> MatrixElementResult:
        d = n - m
        kernel = pq_kernel_L(m, x, d, mu, nu, p, q)
        prefactor = ((-beta) ** d * pq_binomial(n, m, p, q) * gauss ** (d * d)
                     * ratio ** (-d * (1 + 2 * m) / 4))
        return MatrixElementResult(prefactor * kernel, Branch.LOWERING_DOMINANT, kernel)

    def raising() -> MatrixElementResult:
        d = m - n
        kernel = pq_kernel_L(n, x, d, mu, nu, p, q)
        prefactor = ((-alpha * (1 / p - q)) ** d / _pole_free(pq_factorial(1, 1, p, q, d), "[p,q;p,q]")
                     * gauss ** (d * d) * ratio ** (-d * (1 + 2 * n) / 4))
        return MatrixElementResult(prefactor * kernel, Branch.RAISING_DOMINANT, kernel)

    if m > n:
        return raising()
    result = lowering()
    if m == n and verify_branches:
        alternate = raising().value
        logger.debug("u_pq(%d,%d) branches: %r vs %r", m, n, result.value, alternate)
        return MatrixElementResult(result.value, result.branch, result.kernel_value, alternate)
    return result


# ============================================================================
# KERNEL REDUCTIONS
# ============================================================================

def q_kernel_Q_phi31(n: int, x: Scalar, gamma: Scalar, q: Scalar) -> Scalar:
    """Q^(0,0)_n = 3phi1(q^-n, 0, 0; q^(gamma+1); q, -x q^n)."""
    spec = PhiSpec(upper_q=(q ** (-n), 0, 0), lower_q=(q ** (gamma + 1),), base_q=q,
                   argument=-x * q ** n)
    return phi_rs(spec).value


def q_kernel_Q_little_jacobi(n: int, x: Scalar, gamma: Scalar, q: Scalar) -> Scalar:
    """Q^(0,1/2)_n = p_n(x q^(gamma+n-1/2); q^gamma, 0 | q)."""
    return little_q_jacobi(n, x * q ** (gamma + n - 0.5), q ** gamma, 0, q)


def q_kernel_Q_laguerre(n: int, x: Scalar, gamma: Scalar, q: Scalar) -> Scalar:
    """Q^(1/2,1/2)_n = ((q;q)_n / (q^(gamma+1);q)_n) L_n^(gamma)(x; q)."""
    return qpochhammer(q, q, n) / qpochhammer(q ** (gamma + 1), q, n) * q_laguerre(n, gamma, x, q)


def pq_kernel_L_bibasic(n: int, x: Scalar, gamma: int, p: Scalar, q: Scalar, case: str) -> Scalar:
    """L^(gamma; mu,nu)_n as a bibasic Phi in bases pq and p.

    case "0,0":     a = ((pq)^-n, 0), b = ((pq)^(gamma+1),), d = (0,),
                    z = -x (1-pq) p^(gamma+n+1)
    case "1/4,1/4": a = ((pq)^-n,), b = ((pq)^(gamma+1),), c = (0,),
                    z = x (1-pq) (q/p)^((gamma+1)/2) p^(gamma+n+1)
    """
    if case not in BIBASIC_CASES:
        raise DomainError(f"unknown kernel case {case!r}; expected one of {', '.join(BIBASIC_CASES)}")
    params = DeformationParams(q=q, p=p)
    base = params.pq
    scale = x * (1 - base) * p ** (gamma + n + 1)
    if case == "0,0":
        spec = PhiSpec(upper_q=(base ** (-n), 0), lower_q=(base ** (gamma + 1),), lower_p=(0,),
                       base_q=base, base_p=p, argument=-scale)
    else:
        spec = PhiSpec(upper_q=(base ** (-n),), lower_q=(base ** (gamma + 1),), upper_p=(0,),
                       base_q=base, base_p=p, argument=scale * params.ratio ** ((gamma + 1) / 2))
    return phi_bibasic(spec).value
