# src/multipliers/bracket.py

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import hadamard

from src.boolean_cube.exact_norms import EXACT_MAX_N, exact_multiplier_norm
from src.boolean_cube.majority import majority
from src.boolean_cube.walsh import MAX_N, degree_part, homogeneous_part, wht_inverse
from src.index_sets.multi_index import DEFAULT_ENUM_CAP, FamilyKind, IndexFamily, enumerate_family
from src.multipliers.diagonal import holder_attainer, lp_norm, two_summing_norm
from src.multipliers.exponents import inv_r, r_exponent
from src.trig_poly.ascent import phase_ascent
from src.trig_poly.grid import DEFAULT_GRID_CAP, NormBracket, curvature_factor, grid_batch_max
from src.trig_poly.polynomial import TrigPolynomial
from src.utils.errors import CertificateError, DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)

# candidates are only grid-evaluated when K^n stays below this
CANDIDATE_GRID_NODES = 2**20
# boolean candidates hold (chunk, 2^N) truth tables at once
BOOLEAN_BATCH_ENTRIES = 2**22


@dataclass(frozen=True)
class Space:
    """Polynomial space: torus(m, n) or boolean(N, d), full degree range or homogeneous."""

    kind: str
    m: int
    n: int
    homogeneous: bool = False
    analytic: bool = True

    @classmethod
    def torus(cls, m: int, n: int, homogeneous: bool = False, analytic: bool = True) -> "Space":
        if homogeneous and not analytic:
            raise DomainError("homogeneous torus spaces are analytic")
        return cls("torus", m, n, homogeneous, analytic)

    @classmethod
    def boolean(cls, N: int, d: Optional[int] = None, homogeneous: bool = False) -> "Space":
        if N > MAX_N:
            raise DomainError(f"N={N} exceeds the cube limit {MAX_N}")
        return cls("boolean", N if d is None else d, N, homogeneous, True)

    @property
    def family_kind(self) -> FamilyKind:
        if self.kind == "boolean":
            return FamilyKind.SUBSETS_EQ if self.homogeneous else FamilyKind.SUBSETS_LE
        if not self.analytic:
            return FamilyKind.T_SET
        return FamilyKind.LAMBDA_EQ if self.homogeneous else FamilyKind.LAMBDA_LE

    @property
    def is_full_cube(self) -> bool:
        return self.kind == "boolean" and not self.homogeneous and self.m >= self.n

    def family(self, cap: int = DEFAULT_ENUM_CAP) -> IndexFamily:
        return enumerate_family(self.family_kind, self.m, self.n, cap=cap)

    @property
    def label(self) -> str:
        if self.kind == "boolean":
            return f"boolean(N={self.n},d={self.m}{',=' if self.homogeneous else ''})"
        return f"torus(m={self.m},n={self.n}{',=' if self.homogeneous else ''}{'' if self.analytic else ',T'})"


@dataclass
class MultiplierSpec:
    space: Space
    family: IndexFamily
    xi: np.ndarray
    target_p: float

    def __post_init__(self):
        self.xi = np.asarray(self.xi, dtype=complex).reshape(-1)
        if self.xi.shape[0] != len(self.family):
            raise DomainError(f"{self.xi.shape[0]} weights for a family of {len(self.family)}")
        if self.target_p < 1:
            raise DomainError(f"target p must be >= 1, got {self.target_p}")

    @classmethod
    def build(
        cls,
        space: Space,
        xi: Union[Sequence[complex], Dict, float, None],
        p: float,
        cap: int = DEFAULT_ENUM_CAP,
    ) -> "MultiplierSpec":
        """xi as a dense vector over the family, a dict keyed by members, or a constant."""
        family = space.family(cap)
        if xi is None or np.isscalar(xi):
            weights = np.full(len(family), 1.0 if xi is None else xi, dtype=complex)
        elif isinstance(xi, dict):
            pos = family.position()
            weights = np.zeros(len(family), dtype=complex)
            for key, value in xi.items():
                key = key if space.kind == "boolean" else tuple(key)
                if key not in pos:
                    raise DomainError(f"weight key {key} is not in {space.label}")
                weights[pos[key]] = value
        else:
            weights = np.asarray(xi, dtype=complex)
        return cls(space, family, weights, float(p))


@dataclass
class CandidateResult:
    ratio: float
    source: str
    detail: Dict = field(default_factory=dict)


# -------------------------------------------------------------------------
# Sup upper bounds for candidate functions
# -------------------------------------------------------------------------
def _torus_sup_uppers(spec: MultiplierSpec, rows: np.ndarray, grid_cap: int) -> np.ndarray:
    """Certified upper bounds on sup|f| for each coefficient row."""
    uppers = np.abs(rows).sum(axis=1)
    space = spec.space
    K = 1 + 20 * space.m
    if K**space.n <= min(grid_cap, CANDIDATE_GRID_NODES):
        alphas = spec.family.as_array()
        maxima = grid_batch_max(alphas, rows, K, cap=grid_cap)
        uppers = np.minimum(uppers, 2 * maxima)
        factor = curvature_factor(space.m, space.n, K)
        if factor is not None:
            uppers = np.minimum(uppers, factor * maxima)
    return uppers


def _boolean_sups(spec: MultiplierSpec, rows: np.ndarray) -> np.ndarray:
    """Exact sup|f| on the cube via the inverse transform."""
    N = spec.space.n
    masks = np.asarray(spec.family.members, dtype=np.int64)
    chunk = max(1, BOOLEAN_BATCH_ENTRIES >> N)
    sups = np.empty(rows.shape[0])
    for start in range(0, rows.shape[0], chunk):
        block = rows[start : start + chunk].real
        walsh = np.zeros((block.shape[0], 1 << N))
        walsh[:, masks] = block
        sups[start : start + chunk] = np.abs(wht_inverse(walsh)).max(axis=1)
    return sups


def _ratios(spec: MultiplierSpec, rows: np.ndarray, sup_uppers: np.ndarray) -> np.ndarray:
    p = spec.target_p
    weighted = np.abs(rows * spec.xi[None, :])
    if math.isinf(p):
        numer = weighted.max(axis=1)
    else:
        numer = np.sum(weighted**p, axis=1) ** (1.0 / p)
    return np.divide(numer, sup_uppers, out=np.zeros_like(numer), where=sup_uppers > 0)


# -------------------------------------------------------------------------
# Candidate bank
# -------------------------------------------------------------------------
def _character_candidate(spec: MultiplierSpec) -> CandidateResult:
    k = int(np.argmax(np.abs(spec.xi)))
    return CandidateResult(float(np.abs(spec.xi[k])), "character", {"index": str(spec.family.members[k])})


def _aligned_candidates(spec: MultiplierSpec) -> List[CandidateResult]:
    """Nonnegative coefficients peak at z = 1 (x = 1), so sup|f| = sum c exactly."""
    out = []
    support = np.abs(spec.xi) > 0
    for name, c in (
        ("aligned-ones", support.astype(float)),
        ("aligned-attainer", holder_attainer(spec.xi, spec.target_p)),
    ):
        total = float(c.sum())
        if total > 0:
            out.append(CandidateResult(float(_ratios(spec, c[None, :], np.array([total]))[0]), name))
    return out


def _quadratic_form_rows(spec: MultiplierSpec, rng: np.random.Generator, forms: int) -> List[Tuple[str, np.ndarray, float]]:
    """
    z^T A z * z_1^(m-2) on the torus: coefficient A_jj on 2e_j, 2A_jk on
    e_j+e_k, and |f| <= n ||A||_2 on the torus.
    """
    space = spec.space
    if space.kind != "torus" or space.m < 2 or not space.analytic or space.n < 2:
        return []
    n = space.n
    pos = spec.family.position()
    base = np.zeros(n, dtype=np.int64)
    base[0] = space.m - 2
    size = 1 << (n - 1).bit_length()
    matrices = [("hadamard-form", hadamard(size)[:n, :n].astype(float))]
    for _ in range(forms):
        upper = np.triu(rng.choice(np.array([-1.0, 1.0]), size=(n, n)))
        matrices.append(("random-form", upper + np.triu(upper, 1).T))
    rows = []
    for name, A in matrices:
        c = np.zeros(len(spec.family), dtype=complex)
        for j in range(n):
            for k in range(j, n):
                alpha = base.copy()
                alpha[j] += 1
                alpha[k] += 1
                c[pos[tuple(int(a) for a in alpha)]] += A[j, k] if j == k else 2 * A[j, k]
        rows.append((name, c, n * float(np.linalg.norm(A, 2))))
    return rows


def _random_rows(spec: MultiplierSpec, unit: int, seed: int, per_unit: int) -> np.ndarray:
    weights = holder_attainer(spec.xi, spec.target_p)
    rows = np.empty((per_unit, len(spec.family)))
    for i in range(per_unit):
        rng = np.random.default_rng([seed, unit, i])
        signs = rng.choice(np.array([-1.0, 1.0]), size=len(spec.family))
        rows[i] = signs * (weights if i % 2 else rng.uniform(0.5, 1.0, size=len(spec.family)))
    return rows.astype(complex)


def _unit_best(spec: MultiplierSpec, unit: int, seed: int, per_unit: int, grid_cap: int) -> CandidateResult:
    rows = _random_rows(spec, unit, seed, per_unit)
    if spec.space.kind == "boolean":
        uppers = _boolean_sups(spec, rows)
    else:
        uppers = _torus_sup_uppers(spec, rows, grid_cap)
    ratios = _ratios(spec, rows, uppers)
    k = int(np.argmax(ratios))
    return CandidateResult(float(ratios[k]), "random-signs", {"unit": unit, "row": k, "coeffs": rows[k]})


def _boolean_structured(spec: MultiplierSpec) -> List[CandidateResult]:
    """Majority projected to the space (exact sup)."""
    space = spec.space
    if space.n % 2 == 0 or space.n > 16:
        return []
    maj = majority(space.n)
    f = homogeneous_part(maj, space.m) if space.homogeneous else degree_part(maj, space.m)
    masks = np.asarray(spec.family.members, dtype=np.int64)
    row = f.walsh[masks].astype(complex)[None, :]
    sup = np.array([float(np.max(np.abs(f.truth_table)))])
    return [CandidateResult(float(_ratios(spec, row, sup)[0]), "majority-projection")]


def multiplier_norm_bracket(
    spec: MultiplierSpec,
    budget: int = 1,
    seed: int = 0,
    per_unit: int = 64,
    grid_cap: int = DEFAULT_GRID_CAP,
    workers: int = 1,
) -> NormBracket:
    """
    Certified bracket for ||M_xi: space -> l_p||. The upper end is ||xi||_r
    (Holder then Parseval); the lower end is the best certified ratio
    ||(xi c)||_p / sup-upper(f) over the candidate bank.
    """
    if budget < 1:
        raise DomainError("budget must be >= 1")
    upper = two_summing_norm(spec.xi, spec.target_p)
    if upper == 0:
        return NormBracket(0.0, 0.0, "candidate-search")

    space = spec.space
    if space.is_full_cube and space.n <= EXACT_MAX_N:
        exact = exact_multiplier_norm(_dense_cube_weights(spec), spec.target_p, space.n, workers).value
        return NormBracket(exact, exact, "exact-vertex", notes=["all sign vectors enumerated"])

    results = [_character_candidate(spec)] + _aligned_candidates(spec)
    rng = np.random.default_rng([seed, 7])
    for name, row, sup_upper in _quadratic_form_rows(spec, rng, forms=budget):
        uppers = np.minimum(_torus_sup_uppers(spec, row[None, :], grid_cap), sup_upper)
        results.append(CandidateResult(float(_ratios(spec, row[None, :], uppers)[0]), name))
    if space.kind == "boolean":
        results.extend(_boolean_structured(spec))

    def run(unit):
        return _unit_best(spec, unit, seed, per_unit, grid_cap)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results.extend(pool.map(run, range(budget)))
    else:
        results.extend(run(u) for u in range(budget))

    # reduce by max in bank order
    best = results[0]
    for cand in results[1:]:
        if cand.ratio > best.ratio:
            best = cand
    if best.ratio > upper * (1 + 1e-9) + 1e-12:
        raise CertificateError("upper", f"candidate {best.source} ratio {best.ratio} exceeds ||xi||_r = {upper}")
    lower = min(best.ratio, upper)
    notes = [f"best candidate: {best.source}"]
    if space.kind == "torus" and best.source == "random-signs":
        P = TrigPolynomial.from_family(spec.family, best.detail["coeffs"])
        seen = phase_ascent(P, starts=2, iters=10, seed=seed).value
        if seen > 0:
            ratio_estimate = lp_norm(np.abs(best.detail["coeffs"] * spec.xi), spec.target_p) / seen
            notes.append(f"uncertified ratio at ascent sup: {ratio_estimate:.6g}")
    logger.debug(f"{space.label} p={spec.target_p}: bracket [{lower:.6g}, {upper:.6g}] via {best.source}")
    return NormBracket(lower, upper, "candidate-search", notes=notes)


def _dense_cube_weights(spec: MultiplierSpec) -> np.ndarray:
    dense = np.zeros(1 << spec.space.n)
    dense[np.asarray(spec.family.members, dtype=np.int64)] = np.abs(spec.xi)
    return dense


# -------------------------------------------------------------------------
# Sidon constants
# -------------------------------------------------------------------------
@dataclass
class SidonEstimate:
    space: Space
    p: float
    bracket: NormBracket
    envelope: float
    certified_lower: Optional[float]
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "space": self.space.label,
            "m": self.space.m,
            "n": self.space.n,
            "p": self.p,
            "bracket_lower": self.bracket.lower,
            "bracket_upper": self.bracket.upper,
            "method": self.bracket.method,
            "envelope": self.envelope,
            "certified_lower": self.certified_lower,
            "notes": self.notes,
        }


def sidon_envelope(m: int, n: int, p: float, gamma: float = math.e) -> float:
    """gamma^m (n/m)^{m/r - 1/2}."""
    growth = m * float(inv_r(p)) - 0.5
    return gamma**m * (n / m) ** growth


def rearrangement_lower_bound(space: Space, p: float) -> Optional[float]:
    """chi_p lower bound from the rearrangement inequality at z = 1 (homogeneous spaces)."""
    if not space.homogeneous or space.m < 1:
        return None
    m = space.m
    growth = m * float(inv_r(p)) - 0.5
    fact = math.factorial(m) ** float(inv_r(p))
    log_term = math.sqrt(math.log(1 + 20 * m))
    if space.kind == "boolean":
        constant = 4 * math.sqrt(2) * math.e**2 * 2 ** (m - 1)
    else:
        constant = 2 * math.sqrt(2) * math.e**2
    return space.n**growth / (constant * fact * log_term)


def sidon_estimate(
    space: Space,
    p: float,
    budget: int = 1,
    seed: int = 0,
    gamma: float = math.e,
    per_unit: int = 64,
    grid_cap: int = DEFAULT_GRID_CAP,
    enum_cap: int = DEFAULT_ENUM_CAP,
    workers: int = 1,
) -> SidonEstimate:
    """Bracket for chi_p(space): the multiplier bracket at xi = 1 plus closed-form collapses."""
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    envelope = sidon_envelope(max(space.m, 1), space.n, p, gamma)
    certified = rearrangement_lower_bound(space, p)
    notes = []
    if p >= 2:
        bracket = NormBracket(1.0, 1.0, "closed-form", notes=["Parseval with a single character"])
        notes.append("chi_p = 1 for p >= 2")
    elif space.m <= 1 and space.analytic:
        bracket = NormBracket(1.0, 1.0, "closed-form", notes=["phases align for degree-1 analytic functions"])
        notes.append("degree <= 1: sup equals the coefficient l1 norm")
    else:
        spec = MultiplierSpec.build(space, 1.0, p, cap=enum_cap)
        bracket = multiplier_norm_bracket(spec, budget, seed, per_unit, grid_cap, workers)
        if certified is not None and certified > bracket.lower:
            bracket = NormBracket(certified, bracket.upper, bracket.method, notes=bracket.notes + ["rearrangement bound"])
    return SidonEstimate(space, float(p), bracket, envelope, certified, notes)


def growth_slope(ns: Sequence[float], lowers: Sequence[float], m: int) -> float:
    """Least-squares slope of log(lower) against log(n/m)."""
    x = np.log(np.asarray(ns, dtype=float) / m)
    y = np.log(np.asarray(lowers, dtype=float))
    return float(np.polyfit(x, y, 1)[0])
