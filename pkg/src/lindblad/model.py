"""
GKSL generator.

    L(ρ) = −i[H, ρ] + Σ_α γ_α (L_α ρ L_α† − ½{L_α†L_α, ρ})

The vectorized superoperator acts on column-stacked ρ (vec(AρB) = (Bᵀ ⊗ A)·vec ρ).
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np
import numpy.typing as npt

from ..ensembles import AnyEnsembleSpec, sample_batch
from ..exceptions import DimensionError, ParameterError, SymmetryError
from ..numerics import HERMITIAN_TOL, ComplexMatrix, as_matrix, hermitian_defect
from ..validation import validate_count, validate_positive


def vec(rho: npt.ArrayLike) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(rho, dtype=np.complex128).reshape(-1, order="F")


def unvec(v: npt.ArrayLike, n: int) -> ComplexMatrix:
    return np.asarray(v, dtype=np.complex128).reshape((n, n), order="F")


@dataclass(frozen=True, eq=False)
class LindbladModel:
    """Jump operators L_α with rates γ_α ≥ 0 and an optional Hamiltonian (ħ = 1)."""
    jump_operators: tuple[ComplexMatrix, ...] = field(repr=False)
    rates: tuple[float, ...]
    hamiltonian: Optional[ComplexMatrix] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if not self.jump_operators:
            raise ParameterError("jump_operators", "at least one jump operator is required")
        if len(self.jump_operators) != len(self.rates):
            raise ParameterError(
                "rates",
                f"got {len(self.rates)} rates for {len(self.jump_operators)} jump operators",
                len(self.rates),
            )
        ops = tuple(as_matrix(op, "jump operator") for op in self.jump_operators)
        n = ops[0].shape[0]
        for op in ops:
            if op.shape != (n, n):
                raise DimensionError.mismatch(ops[0].shape, op.shape)
        rates = tuple(float(g) for g in self.rates)
        if any(not np.isfinite(g) or g < 0.0 for g in rates):
            raise ParameterError("rates", f"damping rates must be finite and >= 0, got {rates}", rates)
        if sum(rates) <= 0.0:
            raise ParameterError.not_positive("gamma_total", sum(rates))
        object.__setattr__(self, "jump_operators", ops)
        object.__setattr__(self, "rates", rates)

        if self.hamiltonian is not None:
            h = as_matrix(self.hamiltonian, "hamiltonian")
            if h.shape != (n, n):
                raise DimensionError.mismatch((n, n), h.shape)
            defect = hermitian_defect(h)
            if defect > HERMITIAN_TOL:
                raise SymmetryError(defect, HERMITIAN_TOL)
            object.__setattr__(self, "hamiltonian", 0.5 * (h + h.conj().T))

    @property
    def dim(self) -> int:
        return self.jump_operators[0].shape[0]

    @property
    def gamma_total(self) -> float:
        """Γ = Σ γ_α."""
        return float(sum(self.rates))

    @property
    def n_jumps(self) -> int:
        return len(self.jump_operators)

    @classmethod
    def single(
        cls,
        jump_operator: npt.ArrayLike,
        gamma: float,
        hamiltonian: Optional[npt.ArrayLike] = None,
    ) -> "LindbladModel":
        """One jump operator with rate γ = Γ."""
        gamma = validate_positive("gamma", gamma)
        return cls((as_matrix(jump_operator, "jump operator"),), (gamma,), hamiltonian)

    @classmethod
    def from_ensemble(
        cls,
        spec: AnyEnsembleSpec,
        stream: np.random.Generator,
        gamma_total: float = 1.0,
        n_jumps: int = 1,
    ) -> "LindbladModel":
        """
        Draw n_jumps independent jump operators from an ensemble.

        The total rate is split evenly, γ_α = Γ/n_jumps, and H = 0.
        """
        gamma_total = validate_positive("gamma_total", gamma_total)
        n_jumps = validate_count("n_jumps", n_jumps)
        ops = sample_batch(spec, stream, n_jumps)
        return cls(tuple(ops), (gamma_total / n_jumps,) * n_jumps)

    @cached_property
    def superoperator(self) -> ComplexMatrix:
        """Dense N²×N² matrix of the generator on column-stacked ρ."""
        n = self.dim
        eye = np.eye(n, dtype=np.complex128)
        sup = np.zeros((n * n, n * n), dtype=np.complex128)
        if self.hamiltonian is not None:
            h = self.hamiltonian
            sup += -1j * (np.kron(eye, h) - np.kron(h.T, eye))
        for gamma, op in zip(self.rates, self.jump_operators):
            if gamma == 0.0:
                continue
            ldl = op.conj().T @ op
            sup += gamma * (
                np.kron(op.conj(), op)
                - 0.5 * np.kron(eye, ldl)
                - 0.5 * np.kron(ldl.T, eye)
            )
        sup.setflags(write=False)
        return sup


def apply_generator(model: LindbladModel, rho: npt.ArrayLike) -> ComplexMatrix:
    """
    Evaluate L(ρ) directly in matrix form.

    Raises:
        DimensionError: If rho is not N×N
    """
    m = as_matrix(rho, "rho")
    if m.shape != (model.dim, model.dim):
        raise DimensionError.mismatch((model.dim, model.dim), m.shape)
    out = np.zeros_like(m)
    if model.hamiltonian is not None:
        h = model.hamiltonian
        out += -1j * (h @ m - m @ h)
    for gamma, op in zip(model.rates, model.jump_operators):
        if gamma == 0.0:
            continue
        op_dag = op.conj().T
        ldl = op_dag @ op
        out += gamma * (op @ m @ op_dag - 0.5 * (ldl @ m + m @ ldl))
    return out

