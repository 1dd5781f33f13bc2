# src/multipliers/kislyakov.py

import math
from typing import Optional, Sequence, Tuple

import numpy as np

from src.multipliers.bracket import MultiplierSpec
from src.multipliers.diagonal import diagonal_norm
from src.multipliers.exponents import exponents, inv_r
from src.multipliers.verdicts import VerdictReport
from src.sequences.rearrangement import decreasing_rearrangement
from src.trig_poly.grid import NormBracket
from src.utils.errors import DomainError

TWO_SQRT2_E2 = 2 * math.sqrt(2) * math.e**2

# mode -> (space kind, envelope?, anchor)
MODES = {
    "torus": ("torus", False, "||xi||_r <= 2 sqrt2 e^2 sqrt(n log(1+20m)) ||M_xi||"),
    "torus_envelope": ("torus", True, "||xi||_r <= C sqrt(n log(1+m)) ||M_xi||"),
    "torus_support_envelope": ("torus", True, "||xi||_r <= C sqrt(n log(1+mn)) ||M_xi||"),
    "torus_interpolated": ("torus", False, "||xi||_r <= 2 sqrt2 e^2 sqrt(n) sqrt(log(1+20m))^beta_m ||M_xi||"),
    "cube": ("boolean", False, "||xi||_r <= 2 sqrt2 e^2 sqrt(1+N log 2) ||M_xi||"),
    "cube_degree": ("boolean", False, "||xi||_r <= 2 sqrt2 e^2 c_d sqrt(1+N log(1+20d)) ||M_xi||"),
    "rearrangement": ("torus", False, "(z*_k)^m k^(m/r-1/2) / (m!)^(1/r) <= 2 sqrt2 e^2 sqrt(log(1+20m)) ||M_z||"),
    "cube_rearrangement": ("boolean", False, "(x*_k)^m k^(m/r-1/2) / (m!)^(1/r) <= 4 sqrt2 e^2 2^(m-1) sqrt(log(1+20m)) ||M_x||"),
}


def mode_constant(mode: str, spec: MultiplierSpec, constant_C: float = 1.0) -> float:
    space = spec.space
    m, n, p = space.m, space.n, spec.target_p
    if mode == "torus":
        return TWO_SQRT2_E2 * math.sqrt(n * math.log(1 + 20 * m))
    if mode == "torus_envelope":
        return constant_C * math.sqrt(n * math.log(1 + m))
    if mode == "torus_support_envelope":
        return constant_C * math.sqrt(n * math.log(1 + m * n))
    if mode == "torus_interpolated":
        beta = float(exponents(p, max(m, 1)).beta_m)
        return TWO_SQRT2_E2 * math.sqrt(n) * math.sqrt(math.log(1 + 20 * m)) ** beta
    if mode == "cube":
        return TWO_SQRT2_E2 * math.sqrt(1 + n * math.log(2))
    if mode == "cube_degree":
        grow = 2 ** (m - 1) if space.homogeneous else (1 + math.sqrt(2)) ** m
        return TWO_SQRT2_E2 * grow * math.sqrt(1 + n * math.log(1 + 20 * m))
    if mode == "rearrangement":
        return TWO_SQRT2_E2 * math.sqrt(math.log(1 + 20 * m))
    if mode == "cube_rearrangement":
        return 2 * TWO_SQRT2_E2 * 2 ** (m - 1) * math.sqrt(math.log(1 + 20 * m))
    raise DomainError(f"unknown check mode '{mode}'")


def rearrangement_lhs(z: Sequence[float], m: int, p: float) -> Tuple[float, int]:
    """max_k (z*_k)^m k^{m/r - 1/2} / (m!)^{1/r} and the maximizing k."""
    zs = decreasing_rearrangement(z).values
    ir = float(inv_r(p))
    k = np.arange(1, zs.size + 1, dtype=float)
    values = zs**m * k ** (m * ir - 0.5) / math.factorial(m) ** ir
    best = int(np.argmax(values))
    return float(values[best]), best + 1


def monomial_weights(spec: MultiplierSpec, z: Sequence[float]) -> np.ndarray:
    """xi_alpha = z^alpha (torus) or xi_S = prod_{j in S} x_j (cube) over the family."""
    z = np.abs(np.asarray(z, dtype=float))
    if z.size != spec.space.n:
        raise DomainError(f"need {spec.space.n} sequence values, got {z.size}")
    powers = spec.family.as_array()
    return np.prod(z[None, :] ** powers, axis=1)


def kislyakov_check(
    spec: MultiplierSpec,
    mode: str,
    bracket: NormBracket,
    constant_C: float = 1.0,
    z: Optional[Sequence[float]] = None,
    tol_abs: float = 1e-12,
    tol_rel: float = 1e-9,
) -> VerdictReport:
    """
    Trichotomy verdict for lhs <= constant * ||M_xi||, given a bracket for
    ||M_xi||. Rearrangement modes read their lhs from z (spec.xi must be the
    monomial weights z^alpha).
    """
    if mode not in MODES:
        raise DomainError(f"unknown check mode '{mode}'")
    kind, envelope, anchor = MODES[mode]
    space = spec.space
    if space.kind != kind:
        raise DomainError(f"mode '{mode}' needs a {kind} space, got {space.label}")
    inputs = {"mode": mode}
    if mode in ("rearrangement", "cube_rearrangement"):
        if not space.homogeneous or z is None:
            raise DomainError("rearrangement modes need a homogeneous space and the sequence z")
        lhs, k = rearrangement_lhs(z, space.m, spec.target_p)
        inputs["k"] = k
    else:
        lhs = diagonal_norm(spec.xi, spec.target_p)
    constant = mode_constant(mode, spec, constant_C)
    return VerdictReport.build(
        lhs,
        constant,
        bracket.lower,
        bracket.upper,
        envelope=envelope,
        tol_abs=tol_abs,
        tol_rel=tol_rel,
        anchor=anchor,
        space=space.label,
        m=space.m,
        n=space.n,
        p=spec.target_p,
        inputs=inputs,
        provenance={"bracket": bracket.method, "constant": "envelope" if envelope else "certified"},
    )
