# src/trig_poly/polynomial.py

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.index_sets.multi_index import IndexFamily
from src.utils.errors import DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)

Alpha = Tuple[int, ...]


@dataclass
class TrigPolynomial:
    """
    P(z) = sum_alpha c_alpha z^alpha on the n-torus, stored sparsely.

    Every key satisfies sum |alpha_j| <= m. Coefficients are complex.
    """

    n: int
    m: int
    coeffs: Dict[Alpha, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"torus dimension must be >= 1, got {self.n}")
        if self.m < 0:
            raise DomainError(f"degree bound must be >= 0, got {self.m}")
        clean = {}
        for alpha, c in self.coeffs.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.n:
                raise DomainError(f"index {alpha} has length {len(alpha)}, expected {self.n}")
            if sum(abs(a) for a in alpha) > self.m:
                raise DomainError(f"index {alpha} has order above the degree bound {self.m}")
            clean[alpha] = clean.get(alpha, 0j) + complex(c)
        self.coeffs = clean

    # ---------------------------------------------------------------------
    # Constructors
    # ---------------------------------------------------------------------
    @classmethod
    def from_family(cls, family: IndexFamily, values: Sequence[complex]) -> "TrigPolynomial":
        if family.kind.is_subsets:
            raise DomainError("torus polynomials need a torus index family")
        if len(values) != len(family):
            raise DomainError(f"{len(values)} coefficients for a family of {len(family)}")
        return cls(family.n, family.m, {a: v for a, v in zip(family.members, values) if v != 0})

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff: complex = 1.0, m: Optional[int] = None) -> "TrigPolynomial":
        alpha = tuple(int(a) for a in alpha)
        order = sum(abs(a) for a in alpha)
        return cls(len(alpha), order if m is None else m, {alpha: coeff})

    # ---------------------------------------------------------------------
    # Views
    # ---------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.coeffs)

    def alphas(self) -> np.ndarray:
        return np.asarray(list(self.coeffs.keys()), dtype=np.int64).reshape(len(self.coeffs), self.n)

    def values(self) -> np.ndarray:
        return np.asarray(list(self.coeffs.values()), dtype=complex)

    def degree(self) -> int:
        return max((sum(abs(a) for a in alpha) for alpha, c in self.coeffs.items() if c != 0), default=0)

    def is_analytic(self) -> bool:
        return all(a >= 0 for alpha in self.coeffs for a in alpha)

    def l1_norm(self) -> float:
        return float(np.abs(self.values()).sum()) if self.coeffs else 0.0

    # ---------------------------------------------------------------------
    # File format: JSON lines, header {"n", "m"} then {"alpha", "re", "im"}
    # ---------------------------------------------------------------------
    def to_records(self) -> List[str]:
        lines = [json.dumps({"n": self.n, "m": self.m})]
        for alpha, c in self.coeffs.items():
            lines.append(json.dumps({"alpha": list(alpha), "re": c.real, "im": c.imag}))
        return lines

    def write(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.write_text("\n".join(self.to_records()) + "\n", encoding="utf-8")
        return path

    @classmethod
    def from_records(cls, lines: Iterable[str]) -> "TrigPolynomial":
        records = [json.loads(ln) for ln in lines if ln.strip()]
        if not records or "n" not in records[0]:
            raise DomainError("polynomial file must start with an n/m header")
        head = records[0]
        coeffs = {tuple(r["alpha"]): complex(r.get("re", 0.0), r.get("im", 0.0)) for r in records[1:]}
        return cls(int(head["n"]), int(head["m"]), coeffs)

    @classmethod
    def read(cls, path: Union[str, Path]) -> "TrigPolynomial":
        return cls.from_records(Path(path).read_text(encoding="utf-8").splitlines())


def eval_point(P: TrigPolynomial, phases: Sequence[float]) -> complex:
    """Direct summation of sum c_alpha e^{i alpha.theta}."""
    theta = np.asarray(phases, dtype=float).reshape(-1)
    if theta.size != P.n:
        raise DomainError(f"expected {P.n} phases, got {theta.size}")
    if not P.coeffs:
        return 0j
    return complex(np.sum(P.values() * np.exp(1j * (P.alphas() @ theta))))


def eval_points(P: TrigPolynomial, phases: np.ndarray) -> np.ndarray:
    """Direct summation at many points; phases has shape (k, n)."""
    theta = np.atleast_2d(np.asarray(phases, dtype=float))
    if not P.coeffs:
        return np.zeros(theta.shape[0], dtype=complex)
    return np.exp(1j * (theta @ P.alphas().T)) @ P.values()


def l2_norm(P: TrigPolynomial) -> float:
    return float(np.sqrt(np.sum(np.abs(P.values()) ** 2))) if P.coeffs else 0.0


def bh_functional(P: TrigPolynomial, m: int) -> float:
    """(sum |c_alpha|^{2m/(m+1)})^{(m+1)/(2m)} for analytic P of degree <= m."""
    if m < 1:
        raise DomainError("the BH functional needs m >= 1")
    if not P.is_analytic():
        raise DomainError("the BH functional is defined for analytic indices only")
    if P.degree() > m:
        raise DomainError(f"polynomial degree {P.degree()} exceeds m={m}")
    q = 2.0 * m / (m + 1)
    return float(np.sum(np.abs(P.values()) ** q) ** (1.0 / q)) if P.coeffs else 0.0
