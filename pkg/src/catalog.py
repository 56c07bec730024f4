"""
Function catalog for ``qcalc eval`` and ``qcalc table``.

Maps each public function name to its parameters and an evaluator that
returns a SeriesEval (finite sums are wrapped with zero truncation error),
and parses the command-line scalar and grid syntaxes.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Tuple

import numpy as np

from .deformed_exp import NAMED_EXPONENTIALS, epq_munu, eq_mu, named_exp
from .matrix_elements import MatrixElementResult, pq_kernel_L, q_kernel_Q, u_pq, u_q
from .qcore import (DEFAULT_POLICY, DeformationParams, DomainError, Scalar, SeriesEval,
                    SeriesPolicy, format_real)
from .qseries import (PhiSpec, big_q_jacobi, hahn_exton_bessel, little_q_jacobi, phi_bibasic,
                      phi_rs, q_bessel_2, q_laguerre)
from .rogers_szego import rs_eval

__all__ = [
    "ParamKind", "FunctionEntry", "EvalResult", "CATALOG", "PARAMETER_KINDS", "parse_scalar",
    "parse_list", "parse_grid", "resolve", "evaluate", "format_cell",
]

MAX_GRID_POINTS = 100000

# Configure module logger
logger = logging.getLogger('qcalc.catalog')


class ParamKind(str, Enum):
    INTEGER = "integer"
    SCALAR = "scalar"
    LIST = "list"
    NAME = "name"


# Every option the evaluators understand, in command-line order
PARAMETER_KINDS: Dict[str, ParamKind] = {
    "n": ParamKind.INTEGER,
    "m": ParamKind.INTEGER,
    "z": ParamKind.SCALAR,
    "x": ParamKind.SCALAR,
    "y": ParamKind.SCALAR,
    "q": ParamKind.SCALAR,
    "p": ParamKind.SCALAR,
    "mu": ParamKind.SCALAR,
    "nu": ParamKind.SCALAR,
    "alpha": ParamKind.SCALAR,
    "beta": ParamKind.SCALAR,
    "gamma": ParamKind.SCALAR,
    "upper": ParamKind.LIST,
    "lower": ParamKind.LIST,
    "upper_p": ParamKind.LIST,
    "lower_p": ParamKind.LIST,
    "name": ParamKind.NAME,
}


@dataclass(frozen=True)
class EvalResult:
    series: SeriesEval
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def value(self) -> Scalar:
        return self.series.value

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.series.to_dict(), **self.extra)


@dataclass(frozen=True)
class FunctionEntry:
    """One evaluable function.

    ``required`` parameters must be supplied; ``optional`` ones fall back to
    their defaults. ``integers`` lists parameters that must be integral for
    this function even where the option is a scalar elsewhere.
    """

    name: str
    summary: str
    required: Tuple[str, ...]
    compute: Callable[..., EvalResult]
    optional: Mapping[str, Any] = field(default_factory=dict)
    integers: Tuple[str, ...] = ()

    @property
    def parameters(self) -> Tuple[str, ...]:
        return self.required + tuple(self.optional)


def _finite(value: Scalar, terms: int) -> EvalResult:
    return EvalResult(SeriesEval.finite(value, terms))


def _series(result: SeriesEval) -> EvalResult:
    return EvalResult(result)


def _matrix(result: MatrixElementResult, terms: int) -> EvalResult:
    extra = result.to_dict()
    del extra["value"]
    return EvalResult(SeriesEval.finite(result.value, terms), extra)


# ============================================================================
# REGISTRY
# ============================================================================

def _entries() -> Dict[str, FunctionEntry]:
    entries = [
        FunctionEntry("eq-mu", "E_q^(mu)(z)", ("z", "q", "mu"),
                      lambda a, pol: _series(eq_mu(a["z"], a["q"], a["mu"], pol))),
        FunctionEntry("epq-munu", "E_pq^(mu,nu)(z)", ("z", "p", "q", "mu", "nu"),
                      lambda a, pol: _series(epq_munu(a["z"], a["p"], a["q"], a["mu"], a["nu"], pol))),
        FunctionEntry("named-exp", f"named exponential ({', '.join(NAMED_EXPONENTIALS)})",
                      ("name", "z", "q"),
                      lambda a, pol: _series(named_exp(a["name"], a["z"],
                                                       DeformationParams(q=a["q"], p=a["p"]), pol)),
                      optional={"p": None}),
        FunctionEntry("rs", "Rogers-Szego H_n(y|q)", ("n", "y", "q"),
                      lambda a, pol: _finite(rs_eval(a["n"], a["y"], a["q"]), a["n"] + 1)),
        FunctionEntry("q-jacobi-little", "little q-Jacobi p_n(z; alpha, beta | q)",
                      ("n", "z", "alpha", "beta", "q"),
                      lambda a, pol: _finite(little_q_jacobi(a["n"], a["z"], a["alpha"], a["beta"], a["q"]),
                                             a["n"] + 1)),
        FunctionEntry("q-jacobi-big", "big q-Jacobi P_n(z; alpha, beta | q)",
                      ("n", "z", "alpha", "beta", "q"),
                      lambda a, pol: _finite(big_q_jacobi(a["n"], a["z"], a["alpha"], a["beta"], a["q"]),
                                             a["n"] + 1)),
        FunctionEntry("hahn-exton", "Hahn-Exton q-Bessel J_n(z; q)", ("n", "z", "q"),
                      lambda a, pol: _series(hahn_exton_bessel(a["n"], a["z"], a["q"], pol))),
        FunctionEntry("q-bessel2", "Jackson q-Bessel J^(2)_nu(x; q)", ("nu", "x", "q"),
                      lambda a, pol: _series(q_bessel_2(a["nu"], a["x"], a["q"], pol)), integers=("nu",)),
        FunctionEntry("q-laguerre", "q-Laguerre L_n^(gamma)(x; q)", ("n", "gamma", "x", "q"),
                      lambda a, pol: _finite(q_laguerre(a["n"], a["gamma"], a["x"], a["q"]), a["n"] + 1)),
        FunctionEntry("phi-rs", "r-phi-s(upper; lower; q, z)", ("q", "z"),
                      lambda a, pol: _series(phi_rs(PhiSpec(upper_q=a["upper"], lower_q=a["lower"],
                                                            base_q=a["q"], argument=a["z"]), pol)),
                      optional={"upper": (), "lower": ()}),
        FunctionEntry("phi-bibasic", "bibasic Phi(upper, upper_p; lower, lower_p; q, p, z)", ("q", "p", "z"),
                      lambda a, pol: _series(phi_bibasic(PhiSpec(
                          upper_q=a["upper"], lower_q=a["lower"], upper_p=a["upper_p"],
                          lower_p=a["lower_p"], base_q=a["q"], base_p=a["p"], argument=a["z"]), pol)),
                      optional={"upper": (), "lower": (), "upper_p": (), "lower_p": ()}),
        FunctionEntry("u-q", "q-oscillator matrix element U_(m,n)",
                      ("m", "n", "alpha", "beta", "mu", "nu", "q"),
                      lambda a, pol: _matrix(u_q(a["m"], a["n"], a["alpha"], a["beta"], a["mu"], a["nu"],
                                                 a["q"]), min(a["m"], a["n"]) + 1)),
        FunctionEntry("u-pq", "(p,q)-oscillator matrix element U_(m,n)",
                      ("m", "n", "alpha", "beta", "mu", "nu", "p", "q"),
                      lambda a, pol: _matrix(u_pq(a["m"], a["n"], a["alpha"], a["beta"], a["mu"], a["nu"],
                                                  a["p"], a["q"]), min(a["m"], a["n"]) + 1)),
        FunctionEntry("kernel-q", "kernel Q^(mu,nu)_n(x; q^gamma | q)", ("n", "x", "gamma", "mu", "nu", "q"),
                      lambda a, pol: _finite(q_kernel_Q(a["n"], a["x"], a["gamma"], a["mu"], a["nu"], a["q"]),
                                             a["n"] + 1)),
        FunctionEntry("kernel-l", "kernel L^(gamma;mu,nu)_n(x; p, q)",
                      ("n", "x", "gamma", "mu", "nu", "p", "q"),
                      lambda a, pol: _finite(pq_kernel_L(a["n"], a["x"], a["gamma"], a["mu"], a["nu"],
                                                         a["p"], a["q"]), a["n"] + 1),
                      integers=("gamma",)),
    ]
    return {entry.name: entry for entry in entries}


CATALOG: Dict[str, FunctionEntry] = _entries()


# ============================================================================
# PARSING
# ============================================================================

def parse_scalar(text: str) -> Scalar:
    """``2`` -> int, ``1/3`` -> Fraction, ``0.5`` -> float, ``0.2+0.1j`` -> complex."""
    cleaned = text.strip().replace(" ", "")
    try:
        if "j" in cleaned:
            return complex(cleaned)
        if "/" in cleaned:
            return Fraction(cleaned)
        try:
            return int(cleaned)
        except ValueError:
            return float(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a number: {text!r}") from exc


def parse_list(text: str) -> Tuple[Scalar, ...]:
    if not text.strip():
        return ()
    return tuple(parse_scalar(item) for item in text.split(","))


def parse_grid(text: str) -> List[Scalar]:
    """Expand one grid axis.

    ``a..b``              integers a, a+1, ..., b
    ``start:stop:count``  count evenly spaced floats, both ends included
    ``a,b,c``             the listed values
    anything else         a single value
    """
    cleaned = text.strip()
    if ".." in cleaned:
        start, _, stop = cleaned.partition("..")
        low, high = parse_scalar(start), parse_scalar(stop)
        if not (isinstance(low, int) and isinstance(high, int)):
            raise DomainError(f"integer range needs integer ends, got {text!r}")
        values: List[Scalar] = list(range(low, high + 1))
    elif cleaned.count(":") == 2:
        start, stop, count = cleaned.split(":")
        points = parse_scalar(count)
        if not isinstance(points, int) or points < 0:
            raise DomainError(f"grid count must be a nonnegative integer, got {count!r}")
        values = [float(v) for v in np.linspace(float(parse_scalar(start)), float(parse_scalar(stop)), points)]
    else:
        values = list(parse_list(cleaned))
    if not values:
        logger.error("Empty grid axis %r", text)
        raise DomainError(f"empty grid: {text!r}")
    if len(values) > MAX_GRID_POINTS:
        raise DomainError(f"grid axis {text!r} has {len(values)} points, limit is {MAX_GRID_POINTS}")
    return values


def _as_integer(name: str, value: Any) -> int:
    if isinstance(value, complex) or value != int(value):
        raise DomainError(f"--{name.replace('_', '-')} must be an integer, got {value}")
    return int(value)


# ============================================================================
# EVALUATION
# ============================================================================

def resolve(name: str, supplied: Mapping[str, Any]) -> Tuple[FunctionEntry, Dict[str, Any]]:
    """Check the supplied parameters against the entry and fill defaults."""
    if name not in CATALOG:
        raise DomainError(f"unknown function {name!r}; expected one of {', '.join(CATALOG)}")
    entry = CATALOG[name]
    unused = sorted(set(supplied) - set(entry.parameters))
    if unused:
        flags = ", ".join(f"--{key.replace('_', '-')}" for key in unused)
        raise DomainError(f"{name} does not take {flags}")
    missing = [key for key in entry.required if key not in supplied]
    if missing:
        flags = ", ".join(f"--{key.replace('_', '-')}" for key in missing)
        raise DomainError(f"{name} needs {flags}")
    arguments = dict(entry.optional)
    arguments.update(supplied)
    return entry, arguments


def evaluate(name: str, supplied: Mapping[str, Any], policy: SeriesPolicy = DEFAULT_POLICY) -> EvalResult:
    entry, arguments = resolve(name, supplied)
    for key, value in arguments.items():
        if PARAMETER_KINDS[key] is ParamKind.INTEGER or key in entry.integers:
            arguments[key] = _as_integer(key, value)
    logger.debug("Evaluating %s with %s", name, arguments)
    return entry.compute(arguments, policy)


def format_cell(value: Any) -> str:
    """CSV text for a parameter or result cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_real(value)
    if isinstance(value, complex):
        return f"{format_real(value.real)}{'+' if value.imag >= 0 else '-'}{format_real(abs(value.imag))}j"
    return str(value)
