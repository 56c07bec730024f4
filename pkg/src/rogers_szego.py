"""
Rogers-Szego Polynomials
H_n(y|q) = sum_k [n choose k]_q y^k by two independent constructions, the
raising/lowering operator algebra S+, S-, N_q acting on them, the two
generating functions and the q-difference equation.

Operators act on QPolynomial coefficient vectors. The number operator q^N
is the one diagonal in the H-basis (q^N H_n = q^n H_n); general
polynomials are decomposed in that basis first, which is triangular because
every H_n is monic of degree n.
"""

import logging
from typing import Iterator, List, NamedTuple, Optional

from .qcore import (DEFAULT_POLICY, Direction, DomainError, QPolynomial, Scalar,
                    SeriesEval, SeriesPolicy, jackson_derivative, q_dilation,
                    qbinomial, qnumber_m, qpochhammer_inf)
from .qseries import PhiSpec, iterated_series, phi_rs

__all__ = [
    "QPolynomial", "rs_direct", "rs_recurrence", "rs_eval", "h_coefficients",
    "q_number_operator", "degree_operator", "rs_raise", "rs_lower", "rs_number",
    "rs_creation_residual", "rs_commutator_residuals", "rs_qdifference_residual",
    "rs_generating_closed", "rs_generating_series", "rs_generating2_closed",
    "rs_generating2_series", "rs_alpha_difference_residuals",
]

MAX_DEGREE_FLOATING = 30  # Default verified degree, floating backend
MAX_DEGREE_EXACT = 20  # Default verified degree, exact backend

ONE_PLUS_Y = QPolynomial((1, 1))

# Configure module logger
logger = logging.getLogger('qcalc.rogers_szego')


class CommutatorCheck(NamedTuple):
    """Both sides of one relation on H_n. ``scale`` is the size of the operator
    products whose difference forms ``lhs``."""

    name: str
    lhs: QPolynomial
    rhs: QPolynomial
    scale: float


# ============================================================================
# CONSTRUCTIONS
# ============================================================================

def rs_direct(n: int, q: Scalar) -> QPolynomial:
    """H_n from its q-binomial coefficients."""
    if n < 0:
        raise DomainError(f"Rogers-Szego degree must be >= 0, got {n}")
    return QPolynomial(tuple(qbinomial(n, k, q) for k in range(n + 1)))


def rs_recurrence(n: int, q: Scalar) -> QPolynomial:
    """H_n from H_(k+1) = (1 + y) H_k - y (1 - q^k) H_(k-1), H_0 = 1, H_1 = 1 + y."""
    if n < 0:
        raise DomainError(f"Rogers-Szego degree must be >= 0, got {n}")
    previous, current = QPolynomial.constant(1), ONE_PLUS_Y
    if n == 0:
        return previous
    for k in range(1, n):
        previous, current = current, current * ONE_PLUS_Y - previous.shift() * (1 - q ** k)
    return current


def rs_eval(n: int, y: Scalar, q: Scalar) -> Scalar:
    return rs_direct(n, q).evaluate(y)


def _h_basis(degree: int, q: Scalar) -> List[QPolynomial]:
    return [rs_direct(k, q) for k in range(degree + 1)]


def h_coefficients(f: QPolynomial, q: Scalar) -> List[Scalar]:
    """Coefficients a_n with f = sum_n a_n H_n (back-substitution)."""
    basis = _h_basis(f.degree, q)
    remainder = f
    coefficients: List[Scalar] = [0] * (f.degree + 1)
    for n in range(f.degree, -1, -1):
        a_n = remainder.coefficient(n)
        coefficients[n] = a_n
        if a_n != 0:
            remainder = remainder - basis[n] * a_n
    return coefficients


def q_number_operator(f: QPolynomial, q: Scalar) -> QPolynomial:
    """q^N, acting as q^n on H_n."""
    result = QPolynomial()
    for n, (a_n, h_n) in enumerate(zip(h_coefficients(f, q), _h_basis(f.degree, q))):
        if a_n != 0:
            result = result + h_n * (a_n * q ** n)
    return result


def degree_operator(f: QPolynomial) -> QPolynomial:
    """N y^k = k y^k."""
    return f.scale_degrees(lambda k: k)


# ============================================================================
# RAISING, LOWERING AND NUMBER OPERATORS
# ============================================================================

def rs_raise(f: QPolynomial, q: Scalar, n_hint: Optional[int] = None) -> QPolynomial:
    """S+ = I + y q^N T^-1, so that S+ H_n = H_(n+1).

    With ``n_hint`` the caller asserts f is a multiple of H_(n_hint) and q^N
    is applied as the scalar q^(n_hint).
    """
    weighted = f * q ** n_hint if n_hint is not None else q_number_operator(f, q)
    return f + q_dilation(weighted, q, Direction.INVERSE).shift()


def rs_lower(f: QPolynomial, q: Scalar) -> QPolynomial:
    """S- is the Jackson derivative; S- H_n = [n] H_(n-1)."""
    return jackson_derivative(f, q)


def rs_number(f: QPolynomial, q: Scalar) -> QPolynomial:
    """N_q = S+ S-; N_q H_n = [n] H_n."""
    return rs_raise(rs_lower(f, q), q)


def rs_creation_residual(n: int, q: Scalar) -> QPolynomial:
    """H_(n+1) - (H_n + y q^n T^-1 H_n)."""
    h_n = rs_direct(n, q)
    step = h_n + q_dilation(h_n, q, Direction.INVERSE).shift() * q ** n
    return rs_direct(n + 1, q) - step


def rs_commutator_residuals(n: int, q: Scalar) -> List[CommutatorCheck]:
    """Both sides of the four commutation relations applied to H_n."""
    h_n = rs_direct(n, q)
    raised = rs_raise(h_n, q)
    lowered = rs_lower(h_n, q)

    def number(f: QPolynomial) -> QPolynomial:
        return rs_number(f, q)

    def check(name: str, first: QPolynomial, second: QPolynomial, rhs: QPolynomial) -> CommutatorCheck:
        return CommutatorCheck(name, first - second, rhs, max(first.norm(), second.norm(), rhs.norm()))

    return [
        check("[S-,S+] = q^N", rs_lower(raised, q), rs_raise(lowered, q), h_n * q ** n),
        check("[N_q,S+] = S+ q^N", number(raised), rs_raise(number(h_n), q), raised * q ** n),
        check("[N,S-] = -S-", degree_operator(lowered), rs_lower(degree_operator(h_n), q), -lowered),
        check("[N_q,S-] = -q^N S-", number(lowered), rs_lower(number(h_n), q),
              -(lowered * q ** (n - 1))),
    ]


def rs_qdifference_residual(n: int, y: Scalar, q: Scalar) -> Scalar:
    """Left side of (D + y q^n D T^-1 - [n]) H_n = 0 evaluated at y."""
    h_n = rs_direct(n, q)
    shifted = jackson_derivative(q_dilation(h_n, q, Direction.INVERSE), q)
    operator = jackson_derivative(h_n, q) + shifted.shift() * q ** n - h_n * qnumber_m(n, q)
    return operator.evaluate(y)


# ============================================================================
# GENERATING FUNCTIONS
# ============================================================================

def _rs_values(y: Scalar, q: Scalar) -> Iterator[Scalar]:
    """H_0(y), H_1(y), ... by the scalar three-term recurrence."""
    previous, current = 1, 1 + y
    yield previous
    k = 1
    while True:
        yield current
        previous, current = current, (1 + y) * current - y * (1 - q ** k) * previous
        k += 1


def rs_generating_closed(alpha: Scalar, y: Scalar, q: Scalar,
                         policy: SeriesPolicy = DEFAULT_POLICY) -> Scalar:
    """S_q(alpha; y) = 1 / ((alpha; q)_inf (alpha y; q)_inf)."""
    if not (abs(alpha) < 1 and abs(alpha * y) < 1):
        logger.error("Generating function outside |alpha|<1, |alpha y|<1: alpha=%r y=%r", alpha, y)
        raise DomainError(f"generating function needs |alpha| < 1 and |alpha*y| < 1 "
                          f"(alpha={alpha}, y={y})")
    return 1 / (qpochhammer_inf(alpha, q, policy).value * qpochhammer_inf(alpha * y, q, policy).value)


def rs_generating_series(alpha: Scalar, y: Scalar, q: Scalar,
                         policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
    """sum_m alpha^m H_m(y) / (q; q)_m."""

    def terms() -> Iterator[Scalar]:
        weight = 1.0
        for m, h_m in enumerate(_rs_values(y, q)):
            if m > 0:
                weight = weight * alpha / (1 - q ** m)
            yield weight * h_m

    return iterated_series(terms(), policy, "Rogers-Szego generating series")


def rs_generating2_closed(t: Scalar, y: Scalar, q: Scalar,
                          policy: SeriesPolicy = DEFAULT_POLICY) -> Scalar:
    """(-t; q)_inf * 1phi1(0; -t; q, -t y).

    Closed form of sum_m t^m q^(m(m-1)/2) H_m(y) / (q; q)_m; at y = 0 it
    reduces to Euler's product (-t; q)_inf.
    """
    series = phi_rs(PhiSpec(upper_q=(0,), lower_q=(-t,), base_q=q, argument=-t * y), policy)
    return qpochhammer_inf(-t, q, policy).value * series.value


def rs_generating2_series(t: Scalar, y: Scalar, q: Scalar,
                          policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
    """sum_m t^m q^(m(m-1)/2) H_m(y) / (q; q)_m."""

    def terms() -> Iterator[Scalar]:
        weight = 1.0
        for m, h_m in enumerate(_rs_values(y, q)):
            if m > 0:
                weight = weight * t * q ** (m - 1) / (1 - q ** m)
            yield weight * h_m

    return iterated_series(terms(), policy, "Rogers-Szego second generating series")


def rs_alpha_difference_residuals(order: int, q: Scalar) -> List[QPolynomial]:
    """Residuals of D_alpha S = (1/(1-q)) (1 + y T_y^-1 T_alpha) S per power of alpha.

    S is truncated to alpha^order; entry m is the alpha^m coefficient of
    left minus right, a polynomial in y.
    """
    coefficients = []
    pochhammer: Scalar = q ** 0
    for m in range(order + 1):
        if m > 0:
            pochhammer = pochhammer * (1 - q ** m)
        coefficients.append(rs_direct(m, q) * (1 / pochhammer))
    residuals = []
    for m in range(order):
        lhs = coefficients[m + 1] * qnumber_m(m + 1, q)
        dilated = q_dilation(coefficients[m] * q ** m, q, Direction.INVERSE).shift()
        rhs = (coefficients[m] + dilated) * (1 / (1 - q))
        residuals.append(lhs - rhs)
    return residuals
