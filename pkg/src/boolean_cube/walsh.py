# src/boolean_cube/walsh.py

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from src.boolean_cube.kernels import fwht_inplace, fwht_rows_inplace
from src.utils.errors import DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)

MAX_N = 24


def popcount_array(values) -> np.ndarray:
    v = np.array(values, dtype=np.int64)
    counts = np.zeros_like(v)
    while v.any():
        counts += v & 1
        v >>= 1
    return counts


def popcounts(N: int) -> np.ndarray:
    """|S| for every bitmask S in [0, 2^N)."""
    return popcount_array(np.arange(1 << N))


def cube_points(N: int) -> np.ndarray:
    """(2^N, N) array of +-1 points; bit j of the row index set means x_{j+1} = -1."""
    b = np.arange(1 << N)[:, None]
    return 1 - 2 * ((b >> np.arange(N)[None, :]) & 1)


def _dimension(length: int, max_n: int = MAX_N) -> int:
    if length < 1 or length & (length - 1):
        raise DomainError(f"table length {length} is not a power of two")
    N = length.bit_length() - 1
    if N > max_n:
        raise DomainError(f"N={N} exceeds the transform limit {max_n}")
    return N


def wht_forward(table: Sequence[float], max_n: int = MAX_N) -> np.ndarray:
    """Walsh coefficients f^(S) = E[f chi_S], indexed by bitmask."""
    a = np.array(table, dtype=np.float64)
    N = _dimension(a.shape[-1], max_n)
    if a.ndim == 2:
        fwht_rows_inplace(a)
    else:
        fwht_inplace(a)
    return a / float(1 << N)


def wht_inverse(walsh: Sequence[float], max_n: int = MAX_N) -> np.ndarray:
    """Truth table f(x) = sum_S f^(S) chi_S(x)."""
    a = np.array(walsh, dtype=np.float64)
    _dimension(a.shape[-1], max_n)
    if a.ndim == 2:
        fwht_rows_inplace(a)
    else:
        fwht_inplace(a)
    return a


def wht_forward_exact(table: Sequence[int], max_n: int = MAX_N) -> List[Fraction]:
    """Exact rational coefficients of an integer-valued table (denominators 2^N)."""
    a = np.array(table, dtype=np.int64)
    if not np.array_equal(a, np.asarray(table)):
        raise DomainError("exact mode needs an integer-valued truth table")
    N = _dimension(a.shape[0], max_n)
    fwht_inplace(a)
    return [Fraction(int(v), 1 << N) for v in a]


@dataclass
class BooleanFunction:
    """Real function on {-1,1}^N held as a truth table; Walsh coefficients on demand."""

    N: int
    truth_table: np.ndarray
    _walsh: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        self.truth_table = np.asarray(self.truth_table, dtype=np.float64)
        if _dimension(self.truth_table.shape[0]) != self.N:
            raise DomainError(f"truth table of length {self.truth_table.shape[0]} does not fit N={self.N}")

    @classmethod
    def from_truth_table(cls, table: Sequence[float]) -> "BooleanFunction":
        table = np.asarray(table, dtype=np.float64)
        return cls(_dimension(table.shape[0]), table)

    @classmethod
    def from_walsh(cls, walsh: Union[Sequence[float], Dict[int, float]], N: Optional[int] = None) -> "BooleanFunction":
        if isinstance(walsh, dict):
            if N is None:
                raise DomainError("N is required for a sparse Walsh table")
            dense = np.zeros(1 << N)
            for mask, value in walsh.items():
                dense[int(mask)] = value
            walsh = dense
        walsh = np.asarray(walsh, dtype=np.float64)
        fn = cls(_dimension(walsh.shape[0]), wht_inverse(walsh))
        fn._walsh = walsh.copy()
        return fn

    @classmethod
    def character(cls, N: int, mask: int) -> "BooleanFunction":
        parity = popcount_array(np.arange(1 << N) & int(mask)) & 1
        return cls(N, 1.0 - 2.0 * parity)

    @property
    def walsh(self) -> np.ndarray:
        if self._walsh is None:
            self._walsh = wht_forward(self.truth_table)
        return self._walsh

    def walsh_exact(self) -> List[Fraction]:
        return wht_forward_exact(np.rint(self.truth_table).astype(np.int64))

    def is_sign_valued(self) -> bool:
        return bool(np.all(np.abs(self.truth_table) == 1.0))

    def level_weights(self) -> np.ndarray:
        """sum_{|S|=k} f^(S)^2 for k = 0..N."""
        return np.bincount(popcounts(self.N), weights=self.walsh**2, minlength=self.N + 1)

    # ---------------------------------------------------------------------
    # File format: header `N mode`, then one value per line
    # ---------------------------------------------------------------------
    def to_lines(self, mode: str = "truth") -> List[str]:
        if mode not in ("truth", "walsh"):
            raise DomainError(f"unknown Boolean file mode '{mode}'")
        values = self.truth_table if mode == "truth" else self.walsh
        return [f"{self.N} {mode}"] + [repr(float(v)) for v in values]

    def write(self, path: Union[str, Path], mode: str = "truth") -> Path:
        path = Path(path)
        path.write_text("\n".join(self.to_lines(mode)) + "\n", encoding="utf-8")
        return path

    @classmethod
    def from_lines(cls, lines: Sequence[str]) -> "BooleanFunction":
        lines = [ln.strip() for ln in lines if ln.strip()]
        head = lines[0].split() if lines else []
        if len(head) != 2 or head[1] not in ("truth", "walsh"):
            raise DomainError("Boolean function file must start with `N truth|walsh`")
        N, mode = int(head[0]), head[1]
        values = np.array([float(v) for v in lines[1:]])
        if values.shape[0] != 1 << N:
            raise DomainError(f"expected {1 << N} values, found {values.shape[0]}")
        return cls(N, values) if mode == "truth" else cls.from_walsh(values)

    @classmethod
    def read(cls, path: Union[str, Path]) -> "BooleanFunction":
        return cls.from_lines(Path(path).read_text(encoding="utf-8").splitlines())


def homogeneous_part(f: BooleanFunction, m: int) -> BooleanFunction:
    walsh = np.where(popcounts(f.N) == m, f.walsh, 0.0)
    return BooleanFunction.from_walsh(walsh)


def degree_part(f: BooleanFunction, d: int) -> BooleanFunction:
    walsh = np.where(popcounts(f.N) <= d, f.walsh, 0.0)
    return BooleanFunction.from_walsh(walsh)


def degree(f: BooleanFunction, tol: float = 1e-12) -> int:
    """Largest |S| with a nonzero coefficient; the zero function has degree 0."""
    support = np.abs(f.walsh) > tol
    return int(popcounts(f.N)[support].max()) if support.any() else 0


def sup_norm_boolean(f: BooleanFunction) -> float:
    return float(np.max(np.abs(f.truth_table)))


def bh_functional_boolean(f: BooleanFunction, d: int) -> float:
    """(sum_{|S|<=d} |f^(S)|^{2d/(d+1)})^{(d+1)/(2d)}."""
    if d < 1:
        raise DomainError("the cube BH functional needs d >= 1")
    q = 2.0 * d / (d + 1)
    coeffs = np.abs(f.walsh[popcounts(f.N) <= d])
    return float(np.sum(coeffs**q) ** (1.0 / q))
