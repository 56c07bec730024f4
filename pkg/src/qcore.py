"""
q-Calculus Core
Deformation-parameter validation, the shared value types and the elementary
q- and (p,q)-combinatorial quantities every other module consumes.

Two numeric backends are supported throughout:

* floating: ``float`` / ``complex`` scalars, the default for evaluation;
* exact: ``fractions.Fraction`` (and ``int``), used by identity checks where
  round-off must not mask a failing relation.

Every operation here is written against plain arithmetic so that the same
code runs on either backend. Real non-integer powers (``q ** 0.5``) leave
the exact backend, which is fine: exact checks only ever use integer powers.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from fractions import Fraction
from numbers import Number
from typing import Any, Callable, Dict, Iterable, Optional, Sequence, Tuple, Union

# Series policy defaults
DEFAULT_REL_TOL = 1e-14  # Relative size below which a term counts as small
DEFAULT_MAX_TERMS = 10000  # Hard budget for any infinite series or product
DEFAULT_CONSECUTIVE_SMALL = 3  # Small terms in a row needed to stop
TINY = 1e-300  # Floor for relative-error denominators
SIGNIFICANT_DIGITS = 17  # Digits used when scalars are serialized

# Configure module logger
logger = logging.getLogger('qcalc.qcore')

Scalar = Union[int, float, complex, Fraction]


# ============================================================================
# ERRORS AND EXIT CODES
# ============================================================================

class QCalcError(Exception):
    """Base class for every error raised by the library."""


class DomainError(QCalcError, ValueError):
    """A parameter or argument lies outside the function's domain."""


class NonConvergence(QCalcError, ArithmeticError):
    """A series exhausted its term budget before meeting the policy."""

    def __init__(self, message: str, partial: Optional["SeriesEval"] = None):
        super().__init__(message)
        self.partial = partial


class QuadratureError(QCalcError, ArithmeticError):
    """Two independent quadrature rules disagree."""


class ExitCode(IntEnum):
    SUCCESS = 0            # Every identity held
    IDENTITY_FAILED = 1    # At least one identity exceeded its tolerance
    USAGE = 2              # Parse error or domain violation
    NON_CONVERGENCE = 3    # A series ran out of terms


# ============================================================================
# SCALAR HELPERS
# ============================================================================

def is_exact(value: Any) -> bool:
    """True for values of the exact-rational backend."""
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def as_exact(value: Union[str, int, float, Fraction]) -> Fraction:
    """Convert ``"1/3"``, ints, Fractions or short decimals to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10 ** 12)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        logger.error("Cannot read %r as a rational number", value)
        raise DomainError(f"not a rational number: {value!r}") from exc


def is_real(value: Scalar) -> bool:
    return not isinstance(value, complex) or value.imag == 0


def real_part(value: Scalar) -> Scalar:
    """Drop an exactly-zero imaginary part; keep exact values exact."""
    if isinstance(value, complex):
        if value.imag != 0:
            raise DomainError(f"expected a real value, got {value!r}")
        return value.real
    return value


def ensure_finite(value: Scalar, what: str = "value") -> Scalar:
    """Raise instead of letting NaN or Inf escape an operation."""
    if is_exact(value):
        return value
    if not cmath.isfinite(complex(value)):
        logger.error("Non-finite %s encountered: %r", what, value)
        raise DomainError(f"non-finite {what}: {value!r}")
    return value


def _one_minus_power(q: Scalar, m: int) -> Scalar:
    """1 - q**m without cancellation for positive float q near 1."""
    if isinstance(q, float) and q > 0.0:
        return -math.expm1(m * math.log(q))
    return 1 - q ** m


def format_real(value: float) -> str:
    return format(float(value), f".{SIGNIFICANT_DIGITS}g")


def serialize_scalar(value: Scalar) -> Dict[str, str]:
    """Scalar as ``{"re": ..., "im": ...}`` decimal strings."""
    z = complex(value)
    return {"re": format_real(z.real), "im": format_real(z.imag)}


def serialize_param(value: Any) -> Any:
    """Parameter values for report maps: exact rationals become ``"p/q"``."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, int):
        return value
    if isinstance(value, complex):
        return serialize_scalar(value)
    if isinstance(value, float):
        return float(format_real(value))
    if isinstance(value, (list, tuple)):
        return [serialize_param(item) for item in value]
    return str(value)


# ============================================================================
# DEFORMATION PARAMETERS
# ============================================================================

@dataclass(frozen=True)
class DeformationParams:
    """Validated deformation parameters.

    q-only mode (``p is None``) requires 0 < q < 1 and takes no nu. (p,q) mode requires
    p > 0, q > 0 and 0 < pq < 1. When ``mu``/``nu`` are supplied in (p,q)
    mode the exponential side condition q^(2 mu) p^(1 - 2 nu) < 1 must hold,
    except at p = 1, mu = 0 where the family coincides with e_q and the
    argument is instead confined to the unit disk.
    """

    q: Scalar
    p: Optional[Scalar] = None
    mu: Optional[Scalar] = None
    nu: Optional[Scalar] = None

    def __post_init__(self):
        q = self._real("q", self.q)
        if self.p is None:
            if not 0 < q < 1:
                logger.error("q=%r outside (0, 1)", self.q)
                raise DomainError(f"q out of domain: q={self.q} must satisfy 0 < q < 1")
            if self.mu is not None and self.mu < 0:
                raise DomainError(f"mu out of domain: mu={self.mu} must be >= 0")
            if self.nu is not None:
                logger.error("nu=%r supplied without p", self.nu)
                raise DomainError(f"nu={self.nu} only applies in (p,q) mode; q-only parameters take mu alone")
            return

        p = self._real("p", self.p)
        if p <= 0 or q <= 0:
            logger.error("Non-positive base p=%r q=%r", self.p, self.q)
            raise DomainError(f"q out of domain: p={self.p}, q={self.q} must both be positive")
        if not p * q < 1:
            logger.error("pq=%r not below 1", p * q)
            raise DomainError(f"q out of domain: p*q={p * q} must satisfy 0 < pq < 1")
        if self.mu is not None or self.nu is not None:
            mu = self.mu if self.mu is not None else 0
            nu = self.nu if self.nu is not None else 0
            if self.unit_disk_boundary:
                return
            c = q ** (2 * mu) * p ** (1 - 2 * nu)
            if not c < 1:
                logger.error("Exponential side condition violated: c=%r", c)
                raise DomainError(
                    f"q out of domain: q^(2mu) p^(1-2nu) = {c} must be < 1 "
                    f"(p={self.p}, q={self.q}, mu={mu}, nu={nu})"
                )

    @staticmethod
    def _real(name: str, value: Scalar) -> Scalar:
        if isinstance(value, complex):
            raise DomainError(f"{name} must be real, got {value!r}")
        if isinstance(value, float) and not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")
        return value

    @property
    def is_pq(self) -> bool:
        return self.p is not None

    @property
    def pq(self) -> Scalar:
        return self.q if self.p is None else self.p * self.q

    @property
    def ratio(self) -> Scalar:
        """q/p, the quantity the (p,q) displays are written in."""
        return self.q if self.p is None else self.q / self.p

    @property
    def weight(self) -> Scalar:
        """q^mu / p^nu, the Gaussian-in-n weight base of the exponentials."""
        mu = self.mu if self.mu is not None else 0
        nu = self.nu if self.nu is not None else 0
        p = 1 if self.p is None else self.p
        return self.q ** mu / p ** nu

    @property
    def unit_disk_boundary(self) -> bool:
        return self.p == 1 and (self.mu is None or self.mu == 0)


# ============================================================================
# SERIES POLICY AND RESULT
# ============================================================================

@dataclass(frozen=True)
class SeriesPolicy:
    rel_tol: float = DEFAULT_REL_TOL
    max_terms: int = DEFAULT_MAX_TERMS
    consecutive_small: int = DEFAULT_CONSECUTIVE_SMALL

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")
        if self.consecutive_small < 1:
            raise DomainError(f"consecutive_small must be >= 1, got {self.consecutive_small}")


DEFAULT_POLICY = SeriesPolicy()


@dataclass(frozen=True)
class SeriesEval:
    """Result of an infinite-series (or product) evaluation."""

    value: Scalar
    terms_used: int
    converged: bool
    est_error: float

    @classmethod
    def finite(cls, value: Scalar, terms_used: int) -> "SeriesEval":
        """Wrap the value of a finite sum, which carries no truncation error."""
        return cls(value=value, terms_used=terms_used, converged=True, est_error=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": serialize_scalar(self.value),
            "terms_used": self.terms_used,
            "converged": self.converged,
            "est_error": format_real(self.est_error),
        }


# ============================================================================
# POCHHAMMER SYMBOLS, q-NUMBERS AND FACTORIALS
# ============================================================================

def qpochhammer(a: Scalar, q: Scalar, n: int) -> Scalar:
    """(a;q)_n = (1 - a)(1 - aq)...(1 - aq^(n-1)).

    Example:
        >>> qpochhammer(0.5, 0.5, 3)
        0.328125
    """
    if n < 0:
        raise DomainError(f"qpochhammer needs n >= 0, got {n}")
    result: Scalar = 1
    power: Scalar = 1
    for _ in range(n):
        result *= 1 - a * power
        power *= q
    return result


def qpochhammer_inf(a: Scalar, q: Scalar, policy: SeriesPolicy = DEFAULT_POLICY) -> SeriesEval:
    """(a;q)_inf, truncated once the remaining factors are within policy of 1.

    The tail bound |a q^i| / (1 - |q|) is used so the truncation error of the
    product is below ``rel_tol`` in relative terms. Exact inputs are
    evaluated in floating point.
    """
    if not abs(q) < 1:
        logger.error("qpochhammer_inf called with |q|=%r", abs(q))
        raise DomainError(f"(a;q)_inf needs |q| < 1, got q={q}")
    if is_exact(a):
        a = float(a)
    if is_exact(q):
        q = float(q)
    if a == 0:
        return SeriesEval(value=1.0, terms_used=0, converged=True, est_error=0.0)

    tail_factor = 1.0 / (1.0 - abs(q))
    result: Scalar = 1.0
    term = a
    for count in range(1, policy.max_terms + 1):
        result *= 1 - term
        if result == 0:
            return SeriesEval(value=0.0, terms_used=count, converged=True, est_error=0.0)
        term *= q
        if abs(term) * tail_factor <= policy.rel_tol:
            logger.debug("(a;q)_inf with a=%r q=%r used %d factors", a, q, count)
            return SeriesEval(value=ensure_finite(result), terms_used=count,
                              converged=True, est_error=abs(term) * tail_factor)
    partial = SeriesEval(value=result, terms_used=policy.max_terms, converged=False,
                         est_error=abs(term) * tail_factor)
    logger.error("(a;q)_inf did not settle within %d factors", policy.max_terms)
    raise NonConvergence(f"(a;q)_inf with a={a}, q={q} exceeded {policy.max_terms} factors", partial)


def qbinomial(n: int, k: int, q: Scalar) -> Scalar:
    """Gaussian binomial (q;q)_n / ((q;q)_k (q;q)_(n-k)).

    Evaluated as the telescoping product of ratios
    (1 - q^(n-k+i)) / (1 - q^i), never as a quotient of three Pochhammers.
    """
    if k < 0 or n < 0 or k > n:
        logger.error("qbinomial with n=%d k=%d", n, k)
        raise DomainError(f"qbinomial needs 0 <= k <= n, got n={n}, k={k}")
    if q == 1:
        raise DomainError("qbinomial at q=1; use the ordinary binomial coefficient")
    k = min(k, n - k)
    result: Scalar = 1
    for i in range(1, k + 1):
        result = result * _one_minus_power(q, n - k + i) / _one_minus_power(q, i)
    return result


def qnumber_m(n: int, q: Scalar) -> Scalar:
    """[n]_q = (1 - q^n) / (1 - q)."""
    if q == 1:
        logger.error("qnumber_m at q=1")
        raise DomainError("[n]_q at q=1 is the integer limit n; not taken silently")
    if n == 0:
        return 0 * q
    return _one_minus_power(q, n) / _one_minus_power(q, 1)


def qnumber_p(n: int, q: Scalar) -> Scalar:
    """Symmetric q-number (q^n - q^-n) / (q - q^-1)."""
    if q == 0 or q == 1 or q == -1:
        logger.error("qnumber_p at excluded q=%r", q)
        raise DomainError(f"symmetric q-number undefined at q={q}")
    return (q ** n - q ** (-n)) / (q - q ** (-1))


def qfactorial_p(n: int, q: Scalar) -> Scalar:
    """[n]^P! = [1]^P [2]^P ... [n]^P."""
    if n < 0:
        raise DomainError(f"symmetric q-factorial needs n >= 0, got {n}")
    result: Scalar = 1
    for i in range(1, n + 1):
        result *= qnumber_p(i, q)
    return result


def qbinomial_p(m: int, n: int, q: Scalar) -> Scalar:
    """Symmetric q-binomial [m]^P! / ([n]^P! [m-n]^P!)."""
    if n < 0 or m < 0 or n > m:
        raise DomainError(f"symmetric q-binomial needs 0 <= n <= m, got m={m}, n={n}")
    denominator = qfactorial_p(n, q) * qfactorial_p(m - n, q)
    if denominator == 0:
        raise DomainError(f"symmetric q-factorial vanishes at q={q}")
    return qfactorial_p(m, q) / denominator


def pq_factorial(rho: Scalar, delta: Scalar, p: Scalar, q: Scalar, n: int) -> Scalar:
    """[p^rho, q^delta; p, q]_n = prod_{i<n} (p^-(rho+i) - q^(delta+i)).

    Example:
        >>> pq_factorial(1, 1, 0.8, 0.5, 2)
        0.984375
    """
    if p == 0:
        logger.error("pq_factorial with p=0")
        raise DomainError("[p^rho, q^delta; p, q]_n needs p != 0")
    if n < 0:
        raise DomainError(f"pq_factorial needs n >= 0, got {n}")
    result: Scalar = 1
    for i in range(n):
        result *= p ** (-(rho + i)) - q ** (delta + i)
    return result


# ============================================================================
# POLYNOMIALS AND THE JACKSON CALCULUS
# ============================================================================

class Direction(str, Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


@dataclass(frozen=True)
class QPolynomial:
    """Polynomial in one formal variable y, coefficients indexed by degree.

    Trailing zero coefficients are trimmed on construction, so the zero
    polynomial has no coefficients and degree -1.
    """

    coefficients: Tuple[Scalar, ...] = field(default_factory=tuple)

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[Scalar]) -> "QPolynomial":
        return cls(tuple(coefficients))

    @classmethod
    def constant(cls, value: Scalar) -> "QPolynomial":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, value: Scalar = 1) -> "QPolynomial":
        return cls((0,) * degree + (value,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def backend(self) -> str:
        return "exact" if all(is_exact(c) for c in self.coefficients) else "floating"

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, k: int) -> Scalar:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            return NotImplemented
        size = max(len(self.coefficients), len(other.coefficients))
        return QPolynomial(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["QPolynomial", Scalar]) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            if self.is_zero() or other.is_zero():
                return QPolynomial()
            product = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
            for i, a in enumerate(self.coefficients):
                for j, b in enumerate(other.coefficients):
                    product[i + j] += a * b
            return QPolynomial(tuple(product))
        if isinstance(other, Number):
            return QPolynomial(tuple(c * other for c in self.coefficients))
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> "QPolynomial":
        """Multiply by y^k."""
        if self.is_zero():
            return self
        return QPolynomial((0,) * k + self.coefficients)

    def scale_degrees(self, factor: Callable[[int], Scalar]) -> "QPolynomial":
        """Map c_m y^m to factor(m) c_m y^m."""
        return QPolynomial(tuple(c * factor(m) for m, c in enumerate(self.coefficients)))

    def evaluate(self, y: Scalar) -> Scalar:
        """Horner evaluation."""
        result: Scalar = 0
        for c in reversed(self.coefficients):
            result = result * y + c
        return result

    def distance(self, other: "QPolynomial") -> float:
        """Largest coefficient-wise absolute difference."""
        diff = self - other
        return max((abs(c) for c in diff.coefficients), default=0)

    def norm(self) -> float:
        return max((abs(c) for c in self.coefficients), default=0)


def jackson_derivative(f: QPolynomial, q: Scalar) -> QPolynomial:
    """q-Jackson derivative (f(y) - f(qy)) / ((1 - q) y), coefficient-wise."""
    if q == 1:
        logger.error("Jackson derivative requested at q=1")
        raise DomainError("Jackson derivative at q=1 is the ordinary derivative; not taken silently")
    return QPolynomial(tuple(c * qnumber_m(n, q) for n, c in enumerate(f.coefficients) if n > 0))


def q_dilation(f: QPolynomial, q: Scalar, direction: Union[Direction, str] = Direction.FORWARD) -> QPolynomial:
    """f(y) -> f(qy) (forward) or f(y) -> f(y/q) (inverse)."""
    direction = Direction(direction)
    if direction is Direction.INVERSE:
        if q == 0:
            logger.error("Inverse dilation with q=0")
            raise DomainError("inverse q-dilation needs q != 0")
        return f.scale_degrees(lambda n: q ** (-n))
    return f.scale_degrees(lambda n: q ** n)


# ============================================================================
# VERIFICATION REPORTS
# ============================================================================

@dataclass
class VerificationReport:
    """Pass/fail record for one identity check. passed iff rel_err <= tolerance."""

    identity_name: str
    parameters: Dict[str, Any]
    lhs: Scalar
    rhs: Scalar
    abs_err: float
    rel_err: float
    tolerance: float
    passed: bool

    @classmethod
    def compare(cls, identity_name: str, parameters: Dict[str, Any], lhs: Scalar, rhs: Scalar,
                tolerance: float, scale: Optional[float] = None) -> "VerificationReport":
        """Build a report from both sides.

        ``scale`` is the magnitude the error is measured against; it defaults
        to max(|lhs|, |rhs|). Residual-type checks pass their own scale.
        """
        abs_err = abs(lhs - rhs)
        if scale is None:
            scale = max(abs(lhs), abs(rhs))
        rel_err = 0.0 if abs_err == 0 else float(abs_err) / max(float(scale), TINY)
        return cls(identity_name=identity_name, parameters=dict(parameters), lhs=lhs, rhs=rhs,
                   abs_err=float(abs_err), rel_err=rel_err, tolerance=float(tolerance),
                   passed=rel_err <= tolerance)

    @classmethod
    def worst(cls, identity_name: str, parameters: Dict[str, Any],
              pairs: Sequence[Tuple[Scalar, Scalar]], tolerance: float,
              scale: Optional[float] = None) -> "VerificationReport":
        """Report the worst of several (lhs, rhs) comparisons of one identity."""
        if not pairs:
            return cls.compare(identity_name, parameters, 0, 0, tolerance)
        reports = [cls.compare(identity_name, parameters, lhs, rhs, tolerance, scale)
                   for lhs, rhs in pairs]
        return max(reports, key=lambda report: report.rel_err)

    @classmethod
    def polynomials(cls, identity_name: str, parameters: Dict[str, Any], lhs: QPolynomial,
                    rhs: QPolynomial, tolerance: float, terms: float = 0) -> "VerificationReport":
        """Coefficient-wise comparison measured against the largest coefficient.

        ``terms`` is the size of the products a residual-type ``lhs`` was formed from.
        """
        size = max(len(lhs.coefficients), len(rhs.coefficients), 1)
        pairs = [(lhs.coefficient(k), rhs.coefficient(k)) for k in range(size)]
        return cls.worst(identity_name, parameters, pairs, tolerance,
                         scale=max(lhs.norm(), rhs.norm(), terms))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identity_name": self.identity_name,
            "parameters": {key: serialize_param(value) for key, value in self.parameters.items()},
            "lhs": serialize_scalar(self.lhs),
            "rhs": serialize_scalar(self.rhs),
            "abs_err": float(format_real(self.abs_err)),
            "rel_err": float(format_real(self.rel_err)),
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
