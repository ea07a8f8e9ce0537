"""Dense statevector simulation over mixed-radix registers.

Wires may have different dimensions. Basis states are indexed big-endian:
the first wire is the most significant digit, so layout ``[3, 2]`` sends
digits ``(2, 1)`` to index ``2 * 2 + 1 = 5``.

All operations return new values; arrays held by :class:`StateVector` and
:class:`UnitaryOp` are marked read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DomainError

UNITARY_ATOL = 1e-10


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered wire dimensions of a register.

    Dimension-1 wires are allowed as trivial workspace placeholders.
    """

    wire_dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.wire_dims)
        if not dims:
            raise DomainError("a layout needs at least one wire")
        if any(d < 1 for d in dims):
            raise DomainError(f"wire dimensions must be positive, got {dims}")
        object.__setattr__(self, "wire_dims", dims)

    @property
    def num_wires(self) -> int:
        return len(self.wire_dims)

    @property
    def total_dim(self) -> int:
        return math.prod(self.wire_dims)

    def index(self, digits: Sequence[int]) -> int:
        """Mixed-radix index of a digit tuple."""
        if len(digits) != self.num_wires:
            raise DomainError(
                f"expected {self.num_wires} digits, got {len(digits)}"
            )
        idx = 0
        for d, dim in zip(digits, self.wire_dims):
            if not 0 <= d < dim:
                raise DomainError(f"digit {d} out of range for wire of dimension {dim}")
            idx = idx * dim + int(d)
        return idx

    def digits(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.total_dim:
            raise DomainError(f"index {index} out of range [0, {self.total_dim})")
        out = []
        for dim in reversed(self.wire_dims):
            index, r = divmod(index, dim)
            out.append(r)
        return tuple(reversed(out))

    @cached_property
    def digit_table(self) -> np.ndarray:
        """Array of shape ``(total_dim, num_wires)``; row ``i`` holds ``digits(i)``."""
        grids = np.indices(self.wire_dims).reshape(self.num_wires, -1).T
        return _frozen(np.ascontiguousarray(grids))

    def check_wires(self, wires: Sequence[int]) -> tuple[int, ...]:
        wires = tuple(int(w) for w in wires)
        if len(set(wires)) != len(wires):
            raise DomainError(f"repeated wire in {wires}")
        for w in wires:
            if not 0 <= w < self.num_wires:
                raise DomainError(f"wire {w} not in layout with {self.num_wires} wires")
        return wires

    def sub_dim(self, wires: Sequence[int]) -> int:
        return math.prod(self.wire_dims[w] for w in wires)


@dataclass(frozen=True, eq=False)
class StateVector:
    layout: RegisterLayout
    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != self.layout.total_dim:
            raise DomainError(
                f"amplitude vector has length {amps.shape[0]}, "
                f"layout needs {self.layout.total_dim}"
            )
        object.__setattr__(self, "amps", _frozen(amps))

    def norm(self) -> float:
        return math.sqrt(math.fsum(np.abs(self.amps) ** 2))

    def amplitude(self, digits: Sequence[int]) -> complex:
        return complex(self.amps[self.layout.index(digits)])

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


@dataclass(frozen=True, eq=False)
class UnitaryOp:
    """A dense unitary acting on ``target_wires`` (first target most significant)."""

    target_wires: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DomainError(f"unitary must be a square matrix, got shape {mat.shape}")
        dev = np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])))
        if dev > UNITARY_ATOL:
            raise DomainError(f"matrix is not unitary (max deviation {dev:.3e})")
        wires = tuple(int(w) for w in self.target_wires)
        if not wires or len(set(wires)) != len(wires):
            raise DomainError(f"invalid target wires {wires}")
        object.__setattr__(self, "target_wires", wires)
        object.__setattr__(self, "matrix", _frozen(mat))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def on(self, *wires: int) -> "UnitaryOp":
        """The same matrix retargeted onto other wires."""
        return UnitaryOp(tuple(wires), self.matrix)

    def dagger(self) -> "UnitaryOp":
        return UnitaryOp(self.target_wires, self.matrix.conj().T)


def apply_matrix(
    arr: np.ndarray,
    layout: RegisterLayout,
    targets: Sequence[int],
    matrix: np.ndarray,
) -> np.ndarray:
    """Apply ``matrix`` to ``targets`` of every column of ``arr``.

    ``arr`` has shape ``(total_dim, *batch)``; the batch axes are carried along,
    which lets one unitary act on many states (or polynomial coefficient
    columns) in one call.
    """
    targets = layout.check_wires(targets)
    dt = layout.sub_dim(targets)
    if matrix.shape != (dt, dt):
        raise DomainError(
            f"matrix of shape {matrix.shape} does not fit target wires {targets} "
            f"(dimension {dt})"
        )
    batch = arr.shape[1:]
    t = arr.reshape(layout.wire_dims + batch)
    t = np.moveaxis(t, targets, range(len(targets)))
    moved = t.shape
    t = (matrix @ t.reshape(dt, -1)).reshape(moved)
    t = np.moveaxis(t, range(len(targets)), targets)
    return t.reshape(arr.shape)


def basis_state(layout: RegisterLayout, digits: Sequence[int]) -> StateVector:
    amps = np.zeros(layout.total_dim, dtype=np.complex128)
    amps[layout.index(digits)] = 1.0
    return StateVector(layout, amps)


def zero_state(layout: RegisterLayout) -> StateVector:
    return basis_state(layout, (0,) * layout.num_wires)


def apply_unitary(state: StateVector, u: UnitaryOp) -> StateVector:
    out = apply_matrix(state.amps[:, None], state.layout, u.target_wires, u.matrix)
    return StateVector(state.layout, out[:, 0])


def probability_table(state: StateVector) -> list[tuple[tuple[int, ...], float]]:
    """Measurement probabilities in mixed-radix index order."""
    probs = state.probabilities()
    return [(state.layout.digits(i), float(p)) for i, p in enumerate(probs)]


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Product state; ``b``'s wires follow ``a``'s."""
    layout = RegisterLayout(a.layout.wire_dims + b.layout.wire_dims)
    return StateVector(layout, np.kron(a.amps, b.amps))


def inner(a: StateVector, b: StateVector) -> complex:
    if a.layout != b.layout:
        raise DomainError("inner product of states on different layouts")
    return complex(np.vdot(a.amps, b.amps))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR decomposition of a Ginibre matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return orthonormalize(z)


def orthonormalize(a: np.ndarray) -> np.ndarray:
    """Unitary factor of ``a`` with the phase convention that makes it unique.

    Columns are rescaled so the triangular factor has a positive diagonal;
    a unitary input (e.g. a permutation) is returned unchanged.
    """
    q, r = np.linalg.qr(a)
    d = np.diag(r)
    phases = np.ones_like(d)
    nz = np.abs(d) > 0
    phases[nz] = d[nz] / np.abs(d[nz])
    return q * phases


def random_state(layout: RegisterLayout, rng: np.random.Generator) -> StateVector:
    z = rng.standard_normal(layout.total_dim) + 1j * rng.standard_normal(layout.total_dim)
    return StateVector(layout, z / np.linalg.norm(z))


def shift_matrix(dim: int, amount: int) -> np.ndarray:
    """Cyclic shift ``|j> -> |j + amount mod dim>``."""
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(dim):
        mat[(j + amount) % dim, j] = 1.0
    return mat


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """Matrix sending basis index ``j`` to ``perm[j]``."""
    dim = len(perm)
    if sorted(perm) != list(range(dim)):
        raise DomainError("not a permutation")
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[list(perm), list(range(dim))] = 1.0
    return mat


X_GATE = shift_matrix(2, 1)
