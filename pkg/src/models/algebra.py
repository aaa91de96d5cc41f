"""
Value types of the finite-field lower-bound certificate.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from sympy import isprime

from src.models.graph import Edge
from src.utils.exceptions import InvalidParameterError, WsatErrorCodes


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for an odd prime p"""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < 3 or not isprime(self.p):
            raise InvalidParameterError(f"modulus must be an odd prime, got {self.p}", WsatErrorCodes.INVALID_PRIME)

    def reduce(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        return pow(a % self.p, -1, self.p)

    def neg(self, a: int) -> int:
        return (-a) % self.p


@dataclass(frozen=True)
class GeneralPositionFamily:
    """Vectors u_v = (1, a_v, ..., a_v^{t-2}) over F_p with a_v = v + 1"""

    field: PrimeField
    n: int
    t: int
    vectors: Tuple[Tuple[int, ...], ...]
    check_mode: str = "exhaustive"
    subsets_checked: int = 0

    @property
    def dim(self) -> int:
        return self.t - 1

    def u(self, v: int) -> Tuple[int, ...]:
        return self.vectors[v]


@dataclass(frozen=True)
class EdgeVectorAssignment:
    """f_e in F_p^{n(t-1)}: block x holds u_y, block y holds u_x, other blocks zero"""

    family: GeneralPositionFamily
    n: int
    vectors: Dict[Edge, Tuple[int, ...]]

    @property
    def dim(self) -> int:
        return self.n * self.family.dim

    def projection(self, e: Edge, v: int) -> Tuple[int, ...]:
        d = self.family.dim
        return self.vectors[e][v * d : (v + 1) * d]


@dataclass(frozen=True)
class ValidationRecord:
    mode: str
    copies_checked: int
    copies_total: int
    seed: Optional[int] = None


@dataclass(frozen=True)
class LowerBoundCertificate:
    """Certificate for wsat(K_n, K_{t,t}) >= rank_full over F_p"""

    n: int
    t: int
    p: int
    rank_full: int
    rank_construction: int
    formula_value: int
    validation: ValidationRecord
    family_check: str = "exhaustive"
    notes: Tuple[str, ...] = field(default=())

    @property
    def verdict(self) -> int:
        return self.rank_full

    @property
    def dependence_checks(self) -> int:
        return self.validation.copies_checked

    @property
    def is_proof(self) -> bool:
        """Only exhaustive dependence validation turns the rank into a proven bound"""
        return self.validation.mode == "exhaustive"

    @property
    def matches_formula(self) -> bool:
        return self.rank_full == self.formula_value
