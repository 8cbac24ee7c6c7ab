"""
Ensemble descriptors.

Six Gaussian ensembles in the three Dyson symmetry classes, Hermitian (GXE)
and non-Hermitian Ginibre (GinXE), plus the two-ensemble mixture.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Union

from ..exceptions import ParameterError
from ..validation import (
    validate_even_dimension,
    validate_mixing_weights,
    validate_positive,
)


class Family(Enum):
    """Hermitian Gaussian ensembles or non-Hermitian Ginibre ensembles."""
    GXE = "gxe"
    GINXE = "ginxe"

    @classmethod
    def parse(cls, value: Union["Family", str]) -> "Family":
        if isinstance(value, Family):
            return value
        key = str(value).strip().lower()
        # The Ginibre closed forms are derived for GinUE and shared by the family
        if key == "ginue":
            return cls.GINXE
        try:
            return cls(key)
        except ValueError:
            raise ParameterError(
                "family", f"unknown family {value!r}; expected gxe or ginxe", value
            ) from None


class EnsembleKind(Enum):
    GOE = "goe"
    GUE = "gue"
    GSE = "gse"
    GINOE = "ginoe"
    GINUE = "ginue"
    GINSE = "ginse"

    @classmethod
    def parse(cls, value: Union["EnsembleKind", str]) -> "EnsembleKind":
        if isinstance(value, EnsembleKind):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ParameterError(
                "kind", f"unknown ensemble {value!r}; expected one of {names}", value
            ) from None

    @property
    def family(self) -> Family:
        return Family.GXE if self in _HERMITIAN else Family.GINXE

    @property
    def is_hermitian(self) -> bool:
        return self in _HERMITIAN

    @property
    def is_symplectic(self) -> bool:
        return self in (EnsembleKind.GSE, EnsembleKind.GINSE)

    @property
    def label(self) -> str:
        return _LABELS[self]


_HERMITIAN = frozenset((EnsembleKind.GOE, EnsembleKind.GUE, EnsembleKind.GSE))
_LABELS = {
    EnsembleKind.GOE: "GOE",
    EnsembleKind.GUE: "GUE",
    EnsembleKind.GSE: "GSE",
    EnsembleKind.GINOE: "GinOE",
    EnsembleKind.GINUE: "GinUE",
    EnsembleKind.GINSE: "GinSE",
}


@dataclass(frozen=True)
class EnsembleSpec:
    """Ensemble kind, Hilbert-space dimension N and scale σ."""
    kind: EnsembleKind
    dim: int
    sigma: float = 1.0

    def __post_init__(self) -> None:
        kind = EnsembleKind.parse(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "dim", validate_even_dimension(kind.value, self.dim))
        object.__setattr__(self, "sigma", validate_positive("sigma", self.sigma))

    @property
    def family(self) -> Family:
        return self.kind.family

    @property
    def label(self) -> str:
        return self.kind.label

    def with_dim(self, dim: int) -> "EnsembleSpec":
        return EnsembleSpec(self.kind, dim, self.sigma)


@dataclass(frozen=True)
class MixedEnsembleSpec:
    """L = a1·L¹ + a2·L² with independent draws from two ensembles."""
    first: EnsembleSpec
    second: EnsembleSpec
    a1: float
    a2: float

    def __post_init__(self) -> None:
        a1, a2 = validate_mixing_weights(self.a1, self.a2)
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)
        if self.first.dim != self.second.dim:
            raise ParameterError(
                "second.dim",
                f"mixed ensembles need equal dimensions, got {self.first.dim} and {self.second.dim}",
                self.second.dim,
            )
        if self.first.sigma != self.second.sigma:
            raise ParameterError(
                "second.sigma",
                f"mixed ensembles need equal sigma, got {self.first.sigma} and {self.second.sigma}",
                self.second.sigma,
            )

    @property
    def dim(self) -> int:
        return self.first.dim

    @property
    def sigma(self) -> float:
        return self.first.sigma

    @property
    def label(self) -> str:
        return f"{self.first.label}+{self.second.label}"

    def with_dim(self, dim: int) -> "MixedEnsembleSpec":
        return MixedEnsembleSpec(self.first.with_dim(dim), self.second.with_dim(dim), self.a1, self.a2)


AnyEnsembleSpec = Union[EnsembleSpec, MixedEnsembleSpec]
