"""Physical parameters, family parameter sets and their validation.

Every family is described by a :class:`FamilySpec` holding its free
parameters. :func:`validate` checks the family's constraints and returns a
:class:`ValidatedSpec` carrying the derived constants ``K`` (auxiliary
vertical wavenumber), ``M`` (resonance constant) and ``kappa`` (horizontal
Helmholtz wavenumber of ``F``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .errors import BadParameter, ConstraintViolation, ResonantDepth

FAMILY_IDS = tuple(range(1, 10))

# |denominator of M| < RESONANCE_RTOL * (numerator scale + 1)  ->  ResonantDepth
RESONANCE_RTOL = 1e-9
# cosh/sinh of arguments beyond this turn the M formulas into 0*inf forms
MAX_HYPERBOLIC_ARG = 300.0

_TRIG_K = (2, 3)  # K^2 = k_z^2 + K_r^2
_MINUS_KZ = (4, 7)  # K^2 = K_r^2 - k_z^2, k_z < K_r
_MINUS_KR = (5, 8)  # K^2 = k_z^2 - K_r^2, k_z > K_r
_NO_K = (6, 9)
_HYPERBOLIC = (4, 5, 6, 7, 8, 9)


@dataclass(frozen=True)
class PhysicalParams:
    """Global nondimensional constants: Coriolis gradient, depth, drift speed."""

    beta: float = 1.0
    H: float = 1.0
    V: float = 0.0

    def __post_init__(self):
        for name in ("beta", "H", "V"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise BadParameter(f"{name} must be a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise BadParameter(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.H <= 0:
            raise BadParameter(f"ocean depth H must be positive, got {self.H}")


@dataclass(frozen=True)
class FamilySpec:
    """Free parameters of one solution family.

    ``n`` and ``P`` are used by family 1 only; ``k_z`` by families 2-9;
    ``K_r`` by families 2-5, 7 and 8.
    """

    family: int
    n: Optional[int] = None
    P: float = 0.0
    k_z: Optional[float] = None
    K_r: Optional[float] = None


@dataclass(frozen=True)
class ValidatedSpec:
    """A family spec whose constraints hold, with derived constants filled in.

    ``K`` and ``M`` are ``None`` where the family does not use them.
    """

    family: int
    n: Optional[int]
    P: float
    k_z: Optional[float]
    K_r: Optional[float]
    K: Optional[float]
    M: Optional[float]
    kappa: float

    def free_parameters(self) -> FamilySpec:
        return FamilySpec(self.family, n=self.n, P=self.P, k_z=self.k_z, K_r=self.K_r)

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "P": self.P,
            "k_z": self.k_z,
            "K_r": self.K_r,
            "K": self.K,
            "M": self.M,
            "kappa": self.kappa,
        }


class MFraction(NamedTuple):
    numerator: float
    denominator: float
    numerator_scale: float


SpecLike = Union[FamilySpec, ValidatedSpec]


def _real(name, value):
    if value is None:
        raise BadParameter(f"parameter {name} is required for this family")
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise BadParameter(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value):
        raise BadParameter(f"{name} must be finite, got {value!r}")
    return value


def auxiliary_wavenumber_squared(family: int, k_z: float, K_r: float) -> float:
    """K^2 for the families that carry an auxiliary wavenumber."""
    if family in _TRIG_K:
        return k_z * k_z + K_r * K_r
    if family in _MINUS_KZ:
        return K_r * K_r - k_z * k_z
    if family in _MINUS_KR:
        return k_z * k_z - K_r * K_r
    raise BadParameter(f"family {family} has no auxiliary wavenumber K")


def m_fraction(family: int, k_z: float, K: Optional[float], H: float) -> MFraction:
    """Numerator, denominator and numerator term scale of M.

    Differences ``cos(KH) - 1`` and ``cosh(KH) - 1`` are rewritten as
    ``-2 sin^2(KH/2)`` and ``2 sinh^2(KH/2)`` so small ``K`` loses no digits.
    """
    kzH = k_z * H
    if family == 6:
        sh, ch = math.sinh(kzH), math.cosh(kzH)
        return MFraction(2 * sh - ch * kzH, sh - ch * kzH, 2 * abs(sh) + abs(ch * kzH))
    if family == 9:
        sh, ch = math.sinh(kzH), math.cosh(kzH)
        return MFraction(sh * H * k_z - 2 * ch, sh * H * k_z, abs(sh * H * k_z) + 2 * ch)

    KH = K * H
    if family in (2, 3, 4, 7):
        sK, cK = math.sin(KH), math.cos(KH)
        one_minus_cK = 2 * math.sin(KH / 2) ** 2
    else:
        sK, cK = math.sinh(KH), math.cosh(KH)
        cK_minus_one = 2 * math.sinh(KH / 2) ** 2

    if family == 2:
        s, c = math.sin(kzH), math.cos(kzH)
        num = -k_z * c * one_minus_cK + K * s * sK
        den = K * s * cK - k_z * c * sK
        scale = abs(k_z * c * cK) + abs(k_z * c) + abs(K * s * sK)
    elif family == 3:
        s, c = math.sin(kzH), math.cos(kzH)
        num = k_z * s
        den = k_z * s * cK - K * c * sK
        scale = abs(num)
    elif family == 4:
        sh, ch = math.sinh(kzH), math.cosh(kzH)
        num = -ch * k_z * one_minus_cK + sh * K * sK
        den = -ch * k_z * sK + K * sh * cK
        scale = abs(ch * k_z * cK) + abs(ch * k_z) + abs(sh * K * sK)
    elif family == 5:
        sh, ch = math.sinh(kzH), math.cosh(kzH)
        num = -ch * k_z * cK_minus_one + sh * K * sK
        den = -ch * k_z * sK + K * sh * cK
        scale = abs(ch * k_z * cK) + abs(ch * k_z) + abs(sh * K * sK)
    elif family == 7:
        sh, ch = math.sinh(kzH), math.cosh(kzH)
        num = sh * k_z
        den = sh * k_z * cK + K * ch * sK
        scale = abs(num)
    elif family == 8:
        sh, ch = math.sinh(kzH), math.cosh(kzH)
        num = sh * k_z
        den = -sh * k_z * cK + K * ch * sK
        scale = abs(num)
    else:
        raise BadParameter(f"family {family} has no resonance constant M")
    return MFraction(num, den, scale)


def resonance_constant(family: int, k_z: float, K: Optional[float], H: float) -> float:
    num, den, scale = m_fraction(family, k_z, K, H)
    if not abs(den) >= RESONANCE_RTOL * (scale + 1.0):
        raise ResonantDepth(
            f"family {family}: M denominator {den:.3e} is below the resonance "
            f"tolerance (k_z={k_z}, K={K}, H={H})"
        )
    return num / den


def _family_id(family) -> int:
    if isinstance(family, bool) or not isinstance(family, int) or family not in FAMILY_IDS:
        raise BadParameter(f"family must be an integer in 1..9, got {family!r}")
    return family


def validate(spec: SpecLike, phys: PhysicalParams) -> ValidatedSpec:
    """Check a family's constraints and compute ``K``, ``M`` and ``kappa``.

    Raises
    ------
    BadParameter
        Missing or non-finite parameters, ``n < 1``, ``K_r == 0``, or a
        hyperbolic argument ``|k_z| H`` above 300.
    ConstraintViolation
        ``k_z < K_r`` (families 4, 7) or ``k_z > K_r`` (families 5, 8) fails,
        or the resulting ``K^2`` is not positive.
    ResonantDepth
        The denominator of ``M`` is numerically zero.
    """
    family = _family_id(spec.family)
    H = phys.H
    P = _real("P", spec.P)

    if family == 1:
        n = spec.n
        if isinstance(n, bool) or not isinstance(n, int):
            if isinstance(n, float) and n.is_integer():
                n = int(n)
            else:
                raise BadParameter(f"family 1 needs an integer n >= 1, got {n!r}")
        if n < 1:
            raise BadParameter(f"family 1 needs n >= 1, got {n}")
        return ValidatedSpec(1, n, P, None, None, None, None, math.pi * n / H)

    k_z = _real("k_z", spec.k_z)
    if family in _HYPERBOLIC and abs(k_z) * H > MAX_HYPERBOLIC_ARG:
        raise BadParameter(
            f"|k_z| H = {abs(k_z) * H:.1f} exceeds {MAX_HYPERBOLIC_ARG:g}; "
            "hyperbolic profiles overflow double precision"
        )

    if family in _NO_K:
        if k_z == 0:
            raise ResonantDepth(f"family {family} with k_z = 0 is resonant (M diverges)")
        M = resonance_constant(family, k_z, None, H)
        return ValidatedSpec(family, None, P, k_z, None, None, M, abs(k_z))

    K_r = _real("K_r", spec.K_r)
    if K_r == 0:
        raise BadParameter(f"family {family} needs K_r != 0")
    if family in _MINUS_KZ and not k_z < K_r:
        raise ConstraintViolation(f"family {family} requires k_z < K_r (got k_z={k_z}, K_r={K_r})")
    if family in _MINUS_KR and not k_z > K_r:
        raise ConstraintViolation(f"family {family} requires k_z > K_r (got k_z={k_z}, K_r={K_r})")
    K2 = auxiliary_wavenumber_squared(family, k_z, K_r)
    if not K2 > 0:
        raise ConstraintViolation(
            f"family {family} requires K^2 > 0 (got K^2={K2} for k_z={k_z}, K_r={K_r})"
        )
    K = math.sqrt(K2)
    M = resonance_constant(family, k_z, K, H)
    return ValidatedSpec(family, None, P, k_z, K_r, K, M, abs(K_r))


def horizontal_wavenumber(spec: SpecLike, phys: PhysicalParams) -> float:
    """Wavenumber of the Helmholtz equation obeyed by ``F``.

    ``pi n / H`` for family 1, ``|K_r|`` for families 2-5, 7, 8 and ``|k_z|``
    for families 6 and 9.
    """
    if isinstance(spec, ValidatedSpec):
        return spec.kappa
    family = _family_id(spec.family)
    if family == 1:
        return math.pi * spec.n / phys.H
    if family in _NO_K:
        return abs(_real("k_z", spec.k_z))
    return abs(_real("K_r", spec.K_r))


SWEEP_PARAMETERS = ("k_z", "K_r", "H")


class SweepRow(NamedTuple):
    value: float
    M: float
    denominator: float


class Resonance(NamedTuple):
    lo: float
    hi: float
    root: float


def _denominator(family, k_z, K_r, H):
    """Denominator of M, or NaN where the family's constraints fail."""
    if family in _NO_K:
        if family in _HYPERBOLIC and abs(k_z) * H > MAX_HYPERBOLIC_ARG:
            return math.nan, math.nan
        num, den, _ = m_fraction(family, k_z, None, H)
    else:
        if family in _MINUS_KZ and not k_z < K_r or family in _MINUS_KR and not k_z > K_r:
            return math.nan, math.nan
        K2 = auxiliary_wavenumber_squared(family, k_z, K_r)
        if not K2 > 0 or abs(k_z) * H > MAX_HYPERBOLIC_ARG:
            return math.nan, math.nan
        num, den, _ = m_fraction(family, k_z, math.sqrt(K2), H)
    return num, den


def _bisect(fn, lo, hi, f_lo, xtol):
    while hi - lo > xtol * (1.0 + abs(lo)):
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def resonance_sweep(spec: FamilySpec, phys: PhysicalParams, parameter: str, values, xtol: float = 1e-13):
    """Tabulate M and its denominator while one parameter varies.

    ``parameter`` is one of ``k_z``, ``K_r`` or ``H``; the other values come
    from ``spec`` and ``phys``. Where the family's constraints fail the row
    holds NaN. Each sign change of the denominator between neighbouring
    samples is refined by bisection and returned as a :class:`Resonance`.
    Zeros of even multiplicity, or pairs closer than the sampling, are not
    seen.
    """
    family = _family_id(spec.family)
    if family == 1:
        raise BadParameter("family 1 has no resonance constant M to sweep")
    if parameter not in SWEEP_PARAMETERS:
        raise BadParameter(f"sweep parameter must be one of {SWEEP_PARAMETERS}, got {parameter!r}")
    values = [float(v) for v in values]
    if not values:
        raise BadParameter("sweep range is empty")
    base = {"k_z": spec.k_z, "K_r": spec.K_r, "H": phys.H}
    needed = ("k_z", "H") if family in _NO_K else ("k_z", "K_r", "H")
    for name in needed:
        if name != parameter:
            base[name] = _real(name, base[name])
    if parameter == "H" and min(values) <= 0:
        raise BadParameter("sweep over H needs positive depths")

    def den_at(v):
        args = dict(base, **{parameter: v})
        return _denominator(family, args["k_z"], args["K_r"], args["H"])[1]

    rows = []
    for v in values:
        num, den = _denominator(family, **dict(base, **{parameter: v}))
        M = num / den if den != 0 and math.isfinite(den) else math.nan
        rows.append(SweepRow(v, M, den))

    found = []
    for a, b in zip(rows, rows[1:]):
        if not (math.isfinite(a.denominator) and math.isfinite(b.denominator)):
            continue
        if a.denominator == 0.0:
            found.append(Resonance(a.value, a.value, a.value))
        elif (a.denominator < 0) != (b.denominator < 0) and b.denominator != 0.0:
            lo, hi = sorted((a.value, b.value))
            f_lo = a.denominator if lo == a.value else b.denominator
            found.append(Resonance(lo, hi, _bisect(den_at, lo, hi, f_lo, xtol)))
    if rows and rows[-1].denominator == 0.0:
        found.append(Resonance(rows[-1].value, rows[-1].value, rows[-1].value))
    return rows, found
