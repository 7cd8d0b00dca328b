"""
TorsionLab - Truncated twisted Selberg and Ruelle Euler products

Terms are generated per class in (class, n, k) order and reduced with a single
numpy pairwise sum, so results are bit-stable. Every value carries a rigorous
bound for what the truncation discards among the supplied classes.
"""

from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from ..errors import ConvergenceError, InputError
from .lengths import LengthSpectrum, PrimitiveClass, Truncation
from .traces import complete_homogeneous, elementary_symmetric, rho_norm, rotation_eigenvalues


class SelbergMode(str, Enum):
    SYM = "sym"
    CLOSED = "closed"


class AbscissaBound(str, Enum):
    """Selberg region: "declared" sits 2|rho| right of the growth abscissa, "estimate" |rho| left of it"""

    DECLARED = "declared"
    ESTIMATE = "estimate"


@dataclass(frozen=True)
class ZetaValue:
    value: complex
    tail_bound: float
    abscissa: float
    terms: int

    @property
    def declared_abscissa(self) -> bool:
        """Convergence rests on the user-declared growth abscissa"""
        return True


@dataclass(frozen=True)
class FactorizationResidual:
    residual: float
    tail_bound: float

    def __float__(self) -> float:
        return self.residual


def convergence_abscissa(spec: LengthSpectrum, kind: str, margin: float = 0.0,
                         bound: AbscissaBound = AbscissaBound.DECLARED) -> float:
    """Abscissa right of which the truncated product may be evaluated

    Ruelle terms decay like e^{-s n l}, so the growth abscissa itself. Selberg
    products use growth + 2|rho| by default; the opt-in "estimate" bound is
    growth - |rho|, from the majorant e^{-(s + |rho|) n l} of the class terms
    with the symmetric-power sums bounded by (1 - e^{-l})^{-(d-1)}.
    """
    try:
        bound = AbscissaBound(bound)
    except ValueError:
        raise InputError(f"unknown abscissa bound {bound!r}")
    if kind == "ruelle":
        return spec.growth_abscissa + margin
    if kind == "selberg":
        rho = rho_norm(spec.d)
        shift = 2.0 * rho if bound is AbscissaBound.DECLARED else -rho
        return spec.growth_abscissa + shift + margin
    raise InputError(f"unknown zeta function {kind!r}")


def factorization_abscissa(spec: LengthSpectrum, margin: float = 0.0,
                           bound: AbscissaBound = AbscissaBound.DECLARED) -> float:
    """Smallest Re(s) keeping log R(s) and every log Z(s + |rho| - p) in their regions"""
    rho = rho_norm(spec.d)
    # the lowest Selberg argument is s + |rho| - (d - 1) = s - |rho|
    return max(convergence_abscissa(spec, "ruelle", margin),
               convergence_abscissa(spec, "selberg", margin, bound) + rho)


def _require_region(s: complex, abscissa: float, kind: str) -> None:
    if not s.real > abscissa:
        raise ConvergenceError(f"Re(s)={s.real} is not right of the declared {kind} abscissa {abscissa}")


def _split_classes(spec: LengthSpectrum, trunc: Truncation) -> Tuple[List[PrimitiveClass], List[PrimitiveClass]]:
    kept = [c for c in spec.classes if c.length <= trunc.l_max]
    dropped = [c for c in spec.classes if c.length > trunc.l_max]
    return kept, dropped


def _ratio(cls: PrimitiveClass, decay: float) -> float:
    """Majorant ratio q with |tr chi^n| e^{-decay n l} <= dim chi q^n"""
    q = cls.chi_norm * np.exp(-decay * cls.length)
    if q >= 1.0:
        raise ConvergenceError(f"class of length {cls.length} is not summable at this s (ratio {q:.3g})")
    return q


def _n_tail(weight: float, q: float, n_max: int) -> float:
    """weight * sum_{n > n_max} q^n / n"""
    return weight * q ** (n_max + 1) / ((n_max + 1) * (1.0 - q))


def _finish(terms: List[np.ndarray], tail: float, abscissa: float, trunc: Truncation, kind: str) -> ZetaValue:
    flat = np.concatenate(terms) if terms else np.zeros(0, dtype=complex)
    value = complex(np.sum(flat))
    logger.debug(f"log {kind}: {flat.size} terms, tail bound {tail:.3e}")
    if tail > trunc.tail_tol:
        raise ConvergenceError(f"{kind} tail bound {tail:.3e} exceeds tolerance {trunc.tail_tol:.1e}")
    return ZetaValue(value, float(tail), abscissa, int(flat.size))


def log_ruelle(s: complex, spec: LengthSpectrum, trunc: Truncation = Truncation(),
               margin: float = 0.0) -> ZetaValue:
    """-sum_classes sum_{n<=n_max} (1/n) tr chi^n tr sigma(m)^n e^{-s n l}"""
    s = complex(s)
    abscissa = convergence_abscissa(spec, "ruelle", margin)
    _require_region(s, abscissa, "Ruelle")
    kept, dropped = _split_classes(spec, trunc)
    n = np.arange(1, trunc.n_max + 1)

    terms = []
    tail = 0.0
    for cls in kept:
        weight = cls.rank * len(cls.sigma_m_eigs)
        coeff = cls.chi_power_traces(trunc.n_max) * cls.sigma_power_traces(trunc.n_max) / n
        terms.append(-coeff * np.exp(-s * n * cls.length))
        tail += _n_tail(weight, _ratio(cls, s.real), trunc.n_max)
    for cls in dropped:
        q = _ratio(cls, s.real)
        tail += cls.rank * len(cls.sigma_m_eigs) * q / (1.0 - q)
    return _finish(terms, tail, abscissa, trunc, "Ruelle")


def ruelle(s: complex, spec: LengthSpectrum, trunc: Truncation = Truncation(), margin: float = 0.0) -> complex:
    return complex(np.exp(log_ruelle(s, spec, trunc, margin).value))


def _k_tail(x: float, m: int, k_max: int) -> float:
    """sum_{k > k_max} C(k+m-1, m-1) x^k, bounded by a geometric majorant"""
    if m == 0:
        return 0.0
    first = comb(k_max + m, m - 1) * x ** (k_max + 1)
    ratio = x * (k_max + 1 + m) / (k_max + 2)
    if ratio < 1.0:
        return first / (1.0 - ratio)
    partial = sum(comb(k + m - 1, m - 1) * x ** k for k in range(k_max + 1))
    return max((1.0 - x) ** (-m) - partial, 0.0)


def log_selberg(s: complex, spec: LengthSpectrum, trunc: Truncation = Truncation(),
                mode: SelbergMode = SelbergMode.SYM, sigma_p: Optional[int] = None,
                margin: float = 0.0, bound: AbscissaBound = AbscissaBound.DECLARED) -> ZetaValue:
    """log Z(s; sigma_p (x) sigma, chi); sigma_p=None means the untwisted product"""
    s = complex(s)
    mode = SelbergMode(mode)
    m = spec.d - 1
    if sigma_p is not None and not 0 <= sigma_p <= m:
        raise InputError(f"sigma_p must lie in 0..{m}, got {sigma_p}")
    abscissa = convergence_abscissa(spec, "selberg", margin, bound)
    _require_region(s, abscissa, "Selberg")
    shift = s + rho_norm(spec.d)
    kept, dropped = _split_classes(spec, trunc)
    n_values = np.arange(1, trunc.n_max + 1)
    ext_weight = comb(m, sigma_p) if sigma_p is not None else 1

    terms = []
    tail = 0.0
    for cls in kept:
        weight = cls.rank * len(cls.sigma_m_eigs) * ext_weight
        q = _ratio(cls, shift.real)
        coeff = cls.chi_power_traces(trunc.n_max) * cls.sigma_power_traces(trunc.n_max) / n_values
        coeff = -coeff * np.exp(-shift * n_values * cls.length)
        for n, c in zip(n_values, coeff):
            rot = rotation_eigenvalues(cls.holonomy_angles, int(n))
            if sigma_p is not None:
                c = c * elementary_symmetric(rot, sigma_p)[sigma_p]
            x = np.exp(-n * cls.length)
            if mode is SelbergMode.CLOSED:
                terms.append(np.array([c / np.prod(1.0 - x * rot)]))
            else:
                h = complete_homogeneous(rot, trunc.k_max) * x ** np.arange(trunc.k_max + 1)
                terms.append(c * h)
                tail += weight * q ** n / n * _k_tail(x, m, trunc.k_max)
        x_next = np.exp(-(trunc.n_max + 1) * cls.length)
        tail += _n_tail(weight * (1.0 - x_next) ** (-m), q, trunc.n_max)
    for cls in dropped:
        q = _ratio(cls, shift.real)
        x = np.exp(-cls.length)
        tail += cls.rank * len(cls.sigma_m_eigs) * ext_weight * (1.0 - x) ** (-m) * q / (1.0 - q)
    return _finish(terms, tail, abscissa, trunc, "Selberg")


def factorization_residual(s: complex, spec: LengthSpectrum, trunc: Truncation = Truncation(),
                           margin: float = 0.0,
                           bound: AbscissaBound = AbscissaBound.DECLARED) -> FactorizationResidual:
    """|log R(s) - sum_p (-1)^p log Z(s + |rho| - p; sigma_p (x) sigma)|"""
    s = complex(s)
    rho = rho_norm(spec.d)
    ruelle_value = log_ruelle(s, spec, trunc, margin)
    total = ruelle_value.value
    tail = ruelle_value.tail_bound
    for p in range(spec.d):
        z = log_selberg(s + rho - p, spec, trunc, SelbergMode.CLOSED, sigma_p=p, margin=margin, bound=bound)
        total -= (-1) ** p * z.value
        tail += z.tail_bound
    return FactorizationResidual(float(abs(total)), float(tail))
