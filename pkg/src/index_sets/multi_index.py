# src/index_sets/multi_index.py

import itertools
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from pathlib import Path
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from src.utils.errors import CapExceededError, DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_ENUM_CAP = 10**7


class FamilyKind(str, Enum):
    LAMBDA_LE = "LambdaLE"
    LAMBDA_EQ = "LambdaEQ"
    T_SET = "TSet"
    SUBSETS_LE = "SubsetsLE"
    SUBSETS_EQ = "SubsetsEQ"

    @classmethod
    def parse(cls, value: Union[str, "FamilyKind"]) -> "FamilyKind":
        """Accept enum values and CLI spellings such as 'lambda-le' or 'tset'."""
        if isinstance(value, cls):
            return value
        key = str(value).replace("-", "").replace("_", "").lower()
        for kind in cls:
            if kind.value.lower() == key:
                return kind
        raise DomainError(f"unknown index family kind '{value}'")

    @property
    def is_subsets(self) -> bool:
        return self in (FamilyKind.SUBSETS_LE, FamilyKind.SUBSETS_EQ)

    @property
    def is_analytic(self) -> bool:
        return self in (FamilyKind.LAMBDA_LE, FamilyKind.LAMBDA_EQ)


@dataclass(frozen=True, order=True)
class MultiIndex:
    """Exponent vector alpha in Z^n; ordering is graded lexicographic."""

    sort_key: Tuple[int, Tuple[int, ...]] = field(init=False, repr=False)
    entries: Tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "sort_key", (sum(abs(e) for e in entries), entries))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def order(self) -> int:
        return self.sort_key[0]

    @property
    def is_analytic(self) -> bool:
        return all(e >= 0 for e in self.entries)

    def __str__(self) -> str:
        return " ".join(str(e) for e in self.entries)


def graded_lex_key(entries: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    entries = tuple(int(e) for e in entries)
    return (sum(abs(e) for e in entries), entries)


def subset_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    elements = tuple(j for j in range(mask.bit_length()) if mask >> j & 1)
    return (len(elements), elements)


def mask_from_elements(elements: Sequence[int]) -> int:
    mask = 0
    for j in elements:
        mask |= 1 << int(j)
    return mask


@dataclass
class IndexFamily:
    """
    Finite index family in canonical order.

    Torus kinds hold tuples of exponents; subset kinds hold bitmasks where bit j
    stands for coordinate j+1.
    """

    kind: FamilyKind
    m: int
    n: int
    members: List[Union[Tuple[int, ...], int]]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator:
        return iter(self.members)

    @property
    def count(self) -> int:
        return len(self.members)

    def as_array(self) -> np.ndarray:
        """(count, n) integer array; subsets become 0/1 indicator rows."""
        if self.kind.is_subsets:
            rows = [[(s >> j) & 1 for j in range(self.n)] for s in self.members]
        else:
            rows = [list(a) for a in self.members]
        return np.asarray(rows, dtype=np.int64).reshape(len(rows), self.n)

    def sort_keys(self) -> list:
        if self.kind.is_subsets:
            return [subset_key(s) for s in self.members]
        return [graded_lex_key(a) for a in self.members]

    def is_canonical(self) -> bool:
        keys = self.sort_keys()
        return all(a < b for a, b in zip(keys, keys[1:]))

    def position(self) -> dict:
        return {member: i for i, member in enumerate(self.members)}

    # ---------------------------------------------------------------------
    # File format: header `kind m n count`, then one index per line
    # ---------------------------------------------------------------------
    def to_lines(self) -> List[str]:
        lines = [f"{self.kind.value} {self.m} {self.n} {self.count}"]
        for row in self.as_array():
            lines.append(" ".join(str(int(v)) for v in row))
        return lines

    def write(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.write_text("\n".join(self.to_lines()) + "\n", encoding="utf-8")
        logger.info(f"✅ Wrote {self.count} indices of {self.kind.value} to {path}")
        return path

    @classmethod
    def from_lines(cls, lines: Sequence[str]) -> "IndexFamily":
        lines = [ln.strip() for ln in lines if ln.strip()]
        if not lines:
            raise DomainError("empty family file")
        head = lines[0].split()
        if len(head) != 4:
            raise DomainError(f"bad family header '{lines[0]}'")
        kind = FamilyKind.parse(head[0])
        m, n, count = int(head[1]), int(head[2]), int(head[3])
        rows = [tuple(int(v) for v in ln.split()) for ln in lines[1:]]
        if len(rows) != count or any(len(r) != n for r in rows):
            raise DomainError("family file body does not match its header")
        if kind.is_subsets:
            members = [mask_from_elements([j for j, bit in enumerate(r) if bit]) for r in rows]
        else:
            members = rows
        return cls(kind=kind, m=m, n=n, members=members)

    @classmethod
    def read(cls, path: Union[str, Path]) -> "IndexFamily":
        return cls.from_lines(Path(path).read_text(encoding="utf-8").splitlines())


# -------------------------------------------------------------------------
# Counting
# -------------------------------------------------------------------------
def _check_args(m: int, n: int) -> None:
    if int(m) < 0:
        raise DomainError(f"degree bound must be >= 0, got {m}")
    if int(n) < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")


def count_exact(kind: Union[str, FamilyKind], m: int, n: int) -> int:
    """Cardinality from closed binomial formulas, no enumeration."""
    kind = FamilyKind.parse(kind)
    _check_args(m, n)
    if kind is FamilyKind.LAMBDA_EQ:
        return comb(m + n - 1, m)
    if kind is FamilyKind.LAMBDA_LE:
        # sum_{k<=m} C(k+n-1, k) telescopes to C(m+n, m)
        return comb(m + n, m)
    if kind is FamilyKind.T_SET:
        # choose the k nonzero coordinates, their signs, and a composition of
        # at most m into k positive parts
        return sum(2**k * comb(n, k) * comb(m, k) for k in range(min(m, n) + 1))
    if kind is FamilyKind.SUBSETS_EQ:
        return comb(n, m)
    return sum(comb(n, k) for k in range(min(m, n) + 1))


# -------------------------------------------------------------------------
# Enumeration
# -------------------------------------------------------------------------
def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of `total` into `parts`, lexicographically ascending (stars and bars)."""
    if parts == 1:
        yield (total,)
        return
    width = total + parts - 1
    for bars in itertools.combinations(range(width), parts - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(width - prev - 1)
        yield tuple(comp)


def _signed_level(order: int, n: int) -> List[Tuple[int, ...]]:
    level = []
    for base in _compositions(order, n):
        support = [j for j, e in enumerate(base) if e]
        for signs in itertools.product((1, -1), repeat=len(support)):
            alpha = list(base)
            for j, s in zip(support, signs):
                alpha[j] *= s
            level.append(tuple(alpha))
    level.sort()
    return level


def enumerate_family(
    kind: Union[str, FamilyKind],
    m: int,
    n: int,
    cap: int = DEFAULT_ENUM_CAP,
) -> IndexFamily:
    """
    All members of the requested family in graded-lexicographic order.

    Raises CapExceededError carrying the exact would-be cardinality when the
    family is larger than `cap`.
    """
    kind = FamilyKind.parse(kind)
    _check_args(m, n)
    total = count_exact(kind, m, n)
    if total > cap:
        raise CapExceededError(f"{kind.value}({m},{n})", total, cap, "use count instead of enumerate")

    if kind is FamilyKind.LAMBDA_EQ:
        orders = [m]
    elif kind is FamilyKind.SUBSETS_EQ:
        orders = [m] if m <= n else []
    elif kind is FamilyKind.SUBSETS_LE:
        orders = range(min(m, n) + 1)
    else:
        orders = range(m + 1)

    members: list = []
    for k in orders:
        if kind.is_subsets:
            members.extend(mask_from_elements(c) for c in itertools.combinations(range(n), k))
        elif kind is FamilyKind.T_SET:
            members.extend(_signed_level(k, n))
        else:
            members.extend(_compositions(k, n))

    logger.debug(f"Enumerated {len(members)} members of {kind.value}({m},{n})")
    return IndexFamily(kind=kind, m=m, n=n, members=members)
