"""
Basic and Bibasic Hypergeometric Series
Evaluators for the r-phi-s series, the bibasic Phi series and the named
special functions expressed through them: little and big q-Jacobi
polynomials, the Hahn-Exton and second Jackson q-Bessel functions and the
q-Laguerre polynomials.

All evaluators walk the series by its term ratio. A terminating series (an
upper parameter equal to base^-N) is summed exactly to index N; anything
else runs under a SeriesPolicy.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence, Tuple

from .qcore import (DEFAULT_POLICY, DomainError, NonConvergence, Scalar,
                    SeriesEval, SeriesPolicy, ensure_finite, is_exact,
                    qpochhammer, qpochhammer_inf)

__all__ = [
    "PhiSpec", "SeriesPolicy", "SeriesEval", "ratio_series", "iterated_series", "termination_index",
    "phi_rs", "phi_bibasic", "little_q_jacobi", "big_q_jacobi", "hahn_exton_bessel",
    "q_bessel_2", "q_laguerre", "heine_product",
]

TERMINATION_TOL = 1e-12  # Relative fuzz accepted when matching a = base^-N
POLE_TOL = 1e-14  # |1 - b q^k| at or below this is a pole

# Configure module logger
logger = logging.getLogger('qcalc.qseries')


@dataclass(frozen=True)
class PhiSpec:
    """Parameter lists of a basic (r-phi-s) or bibasic (Phi) series.

    ``upper_q``/``lower_q`` are the a_i / b_j in base q; ``upper_p`` and
    ``lower_p`` are the c_i / d_j in base p and are used by the bibasic
    series only.
    """

    upper_q: Tuple[Scalar, ...] = ()
    lower_q: Tuple[Scalar, ...] = ()
    upper_p: Tuple[Scalar, ...] = ()
    lower_p: Tuple[Scalar, ...] = ()
    base_q: Scalar = 0.5
    base_p: Optional[Scalar] = None
    argument: Scalar = 0

    def __post_init__(self):
        for name in ("upper_q", "lower_q", "upper_p", "lower_p"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def is_bibasic(self) -> bool:
        return self.base_p is not None or bool(self.upper_p) or bool(self.lower_p)


# ============================================================================
# SUMMATION ENGINE
# ============================================================================

def ratio_series(first_term: Scalar, ratio: Callable[[int], Scalar], policy: SeriesPolicy,
                 label: str, termination: Optional[int] = None) -> SeriesEval:
    """Sum t_0 + t_1 + ... where t_(k+1) = t_k * ratio(k).

    With ``termination`` set, exactly the terms t_0..t_N are summed.
    Otherwise summation stops once ``consecutive_small`` successive terms are
    each at most ``rel_tol`` times the partial sum.
    """
    total = first_term
    term = first_term
    if termination is not None:
        for k in range(termination):
            term = term * ratio(k)
            total += term
        return SeriesEval.finite(ensure_finite(total, label), termination + 1)

    if first_term == 0:
        return SeriesEval.finite(total, 1)
    small = 0
    for k in range(policy.max_terms - 1):
        term = term * ratio(k)
        total += term
        if term == 0 or abs(term) <= policy.rel_tol * abs(total):
            small += 1
            if small >= policy.consecutive_small:
                logger.debug("%s converged after %d terms", label, k + 2)
                return SeriesEval(value=ensure_finite(total, label), terms_used=k + 2,
                                  converged=True, est_error=float(abs(term)))
        else:
            small = 0
    partial = SeriesEval(value=total, terms_used=policy.max_terms, converged=False,
                         est_error=float(abs(term)))
    logger.error("%s did not converge within %d terms", label, policy.max_terms)
    raise NonConvergence(f"{label} did not converge within {policy.max_terms} terms", partial)


def iterated_series(terms: Iterator[Scalar], policy: SeriesPolicy, label: str) -> SeriesEval:
    """Sum an iterator of terms under the same stopping rule as ratio_series."""
    total: Scalar = 0
    small = 0
    count = 0
    term: Scalar = 0
    for count, term in enumerate(terms, start=1):
        total += term
        if count > 1 and (term == 0 or abs(term) <= policy.rel_tol * abs(total)):
            small += 1
            if small >= policy.consecutive_small:
                logger.debug("%s converged after %d terms", label, count)
                return SeriesEval(value=ensure_finite(total, label), terms_used=count,
                                  converged=True, est_error=float(abs(term)))
        else:
            small = 0
        if count >= policy.max_terms:
            break
    else:
        return SeriesEval.finite(ensure_finite(total, label), count)
    partial = SeriesEval(value=total, terms_used=policy.max_terms, converged=False,
                         est_error=float(abs(term)))
    logger.error("%s did not converge within %d terms", label, policy.max_terms)
    raise NonConvergence(f"{label} did not converge within {policy.max_terms} terms", partial)


def _negative_power_index(a: Scalar, base: Scalar, limit: int) -> Optional[int]:
    """N >= 0 with a = base^-N, if there is one within ``limit``."""
    if a == 0 or base == 0 or abs(base) == 1:
        return None
    estimate = -math.log(abs(a)) / math.log(abs(base))
    n = round(estimate)
    if n < 0 or n > limit or abs(estimate - n) > 1e-6:
        return None
    product = a * base ** n
    if is_exact(product):
        return n if product == 1 else None
    return n if abs(product - 1) <= TERMINATION_TOL else None


def termination_index(upper: Sequence[Scalar], base: Scalar,
                      limit: int = DEFAULT_POLICY.max_terms) -> Optional[int]:
    """Smallest N such that some upper parameter equals base^-N."""
    indices = [n for n in (_negative_power_index(a, base, limit) for a in upper) if n is not None]
    return min(indices) if indices else None


def _factor(b: Scalar, power: Scalar, what: str) -> Scalar:
    value = 1 - b * power
    if value == 0 or (not is_exact(value) and abs(value) <= POLE_TOL):
        logger.error("Pole in %s: parameter %r meets base power %r", what, b, power)
        raise DomainError(f"lower-parameter pole in {what}: (1 - {b}*{power}) vanishes")
    return value


def _balance(base: Scalar, k: int, exponent: int) -> Scalar:
    """Ratio of [(-1)^k base^(k(k-1)/2)]^e between index k+1 and k."""
    if exponent == 0:
        return 1
    sign = -1 if exponent % 2 else 1
    return sign * base ** (k * exponent)


# ============================================================================
# GENERAL SERIES
# ============================================================================

def phi_rs(spec: PhiSpec, policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
    """Basic hypergeometric series r-phi-s.

    sum_k (a;q)_k / ((q;q)_k (b;q)_k) [(-1)^k q^(k(k-1)/2)]^(1+s-r) x^k
    """
    if spec.upper_p or spec.lower_p or spec.base_p is not None:
        raise DomainError("phi_rs takes q-lists only; use phi_bibasic for p-parameters")
    q, x = spec.base_q, spec.argument
    upper, lower = spec.upper_q, spec.lower_q
    exponent = 1 + len(lower) - len(upper)
    termination = termination_index(upper, q, policy.max_terms)
    if termination is None and not abs(q) < 1:
        logger.error("Non-terminating phi_rs with |q|=%r", abs(q))
        raise DomainError(f"non-terminating r-phi-s needs |q| < 1, got q={q}")

    def ratio(k: int) -> Scalar:
        qk = q ** k
        numerator = 1
        for a in upper:
            numerator *= 1 - a * qk
        denominator = _factor(q, qk, "(q;q)_k")
        for b in lower:
            denominator *= _factor(b, qk, "(b;q)_k")
        return numerator / denominator * _balance(q, k, exponent) * x

    label = f"{len(upper)}phi{len(lower)}"
    return ratio_series(1 if is_exact(x) and is_exact(q) else 1.0, ratio, policy, label, termination)


def phi_bibasic(spec: PhiSpec, policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
    """Bibasic series Phi with q-lists (a, b) and p-lists (c, d).

    sum_l (a;q)_l (c;p)_l / ((q;q)_l (b;q)_l (d;p)_l)
          [(-1)^l q^(l(l-1)/2)]^(1+m-n) [(-1)^l p^(l(l-1)/2)]^(s-r) z^l

    with n, m, r, s the lengths of a, b, c, d. The power of the argument is
    the summation index l.
    """
    if spec.base_p is None:
        raise DomainError("phi_bibasic needs base_p")
    q, p, z = spec.base_q, spec.base_p, spec.argument
    q_exponent = 1 + len(spec.lower_q) - len(spec.upper_q)
    p_exponent = len(spec.lower_p) - len(spec.upper_p)
    candidates = [n for n in (termination_index(spec.upper_q, q, policy.max_terms),
                              termination_index(spec.upper_p, p, policy.max_terms)) if n is not None]
    termination = min(candidates) if candidates else None
    if termination is None and not abs(q) < 1:
        raise DomainError(f"non-terminating bibasic series needs |q| < 1, got q={q}")

    def ratio(l: int) -> Scalar:
        ql, pl = q ** l, p ** l
        numerator = 1
        for a in spec.upper_q:
            numerator *= 1 - a * ql
        for c in spec.upper_p:
            numerator *= 1 - c * pl
        denominator = _factor(q, ql, "(q;q)_l")
        for b in spec.lower_q:
            denominator *= _factor(b, ql, "(b;q)_l")
        for d in spec.lower_p:
            denominator *= _factor(d, pl, "(d;p)_l")
        return (numerator / denominator * _balance(q, l, q_exponent)
                * _balance(p, l, p_exponent) * z)

    exact = all(is_exact(v) for v in (q, p, z))
    return ratio_series(1 if exact else 1.0, ratio, policy, "bibasic Phi", termination)


# ============================================================================
# NAMED SPECIAL FUNCTIONS
# ============================================================================

def little_q_jacobi(n: int, z: Scalar, alpha: Scalar, beta: Scalar, q: Scalar) -> Scalar:
    """p_n(z; alpha, beta | q) = 2phi1(q^-n, q^(n+1) alpha beta; alpha q; q, qz)."""
    if n < 0:
        raise DomainError(f"little q-Jacobi degree must be >= 0, got {n}")
    spec = PhiSpec(upper_q=(q ** (-n), q ** (n + 1) * alpha * beta), lower_q=(alpha * q,),
                   base_q=q, argument=q * z)
    return phi_rs(spec).value


def big_q_jacobi(n: int, z: Scalar, alpha: Scalar, beta: Scalar, q: Scalar) -> Scalar:
    """P_n(z; alpha, beta | q) = 3phi2(q^-n, q^(n+1) alpha beta, q alpha z; q alpha, 0; q, q)."""
    if n < 0:
        raise DomainError(f"big q-Jacobi degree must be >= 0, got {n}")
    spec = PhiSpec(upper_q=(q ** (-n), q ** (n + 1) * alpha * beta, q * alpha * z),
                   lower_q=(q * alpha, 0), base_q=q, argument=q)
    return phi_rs(spec).value


def _require_unit_base(q: Scalar, what: str) -> None:
    if isinstance(q, complex) or not 0 < q < 1:
        logger.error("%s needs 0 < q < 1, got %r", what, q)
        raise DomainError(f"q out of domain: {what} needs 0 < q < 1, got q={q}")


def hahn_exton_bessel(n: int, z: Scalar, q: Scalar, policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
    """Hahn-Exton q-Bessel function.

    J_n(z; q) = z^n (q^(n+1); q)_inf / (q; q)_inf * 1phi1(0; q^(n+1); q, q z^2)
    """
    _require_unit_base(q, "Hahn-Exton q-Bessel")
    if n < 0:
        raise DomainError(f"Hahn-Exton J_n is defined here for n >= 0, got n={n}")
    prefactor = z ** n * (qpochhammer_inf(q ** (n + 1), q, policy).value
                          / qpochhammer_inf(q, q, policy).value)
    series = phi_rs(PhiSpec(upper_q=(0,), lower_q=(q ** (n + 1),), base_q=q, argument=q * z * z), policy)
    return SeriesEval(value=ensure_finite(prefactor * series.value), terms_used=series.terms_used,
                      converged=series.converged, est_error=float(abs(prefactor)) * series.est_error)


def q_bessel_2(nu: int, x: Scalar, q: Scalar, policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
    """Second Jackson q-Bessel function.

    J_nu(x; q) = sum_n q^(n(n+nu)) (-1)^n / ((q;q)_n (q;q)_(n+nu)) (x/2)^(2n+nu)
    """
    _require_unit_base(q, "q-Bessel J^(2)")
    if nu < 0:
        raise DomainError(f"q-Bessel order must be >= 0, got {nu}")
    half = x / 2
    first = half ** nu / qpochhammer(q, q, nu)
    if nu > 0 and x == 0:
        return SeriesEval.finite(0.0, 1)

    def ratio(n: int) -> Scalar:
        return (-(q ** (2 * n + 1 + nu)) * half * half
                / ((1 - q ** (n + 1)) * (1 - q ** (n + nu + 1))))

    return ratio_series(first, ratio, policy, "q-Bessel J^(2)")


def q_laguerre(n: int, gamma: Scalar, x: Scalar, q: Scalar) -> Scalar:
    """q-Laguerre polynomial L_n^(gamma)(x; q).

    ((q^(gamma+1); q)_n / (q; q)_n) * 1phi1(q^-n; q^(gamma+1); q, -x q^(gamma+n+1))

    The argument carries -x, the convention under which
    Q^(1/2,1/2)_n(x; q^gamma | q) = ((q;q)_n / (q^(gamma+1);q)_n) L_n^(gamma)(x).
    """
    if n < 0:
        raise DomainError(f"q-Laguerre degree must be >= 0, got {n}")
    lower = q ** (gamma + 1)
    prefactor = qpochhammer(lower, q, n) / qpochhammer(q, q, n)
    spec = PhiSpec(upper_q=(q ** (-n),), lower_q=(lower,), base_q=q,
                   argument=-x * q ** (gamma + n + 1))
    return prefactor * phi_rs(spec).value


def heine_product(a: Scalar, z: Scalar, q: Scalar, policy: SeriesPolicy = DEFAULT_POLICY) -> Scalar:
    """Product side of the q-binomial theorem, (az; q)_inf / (z; q)_inf."""
    if not abs(z) < 1:
        raise DomainError(f"q-binomial theorem needs |z| < 1, got z={z}")
    return qpochhammer_inf(a * z, q, policy).value / qpochhammer_inf(z, q, policy).value
