"""Superposition oracles for functions ``f: [n] -> [m]``.

Two realizations of a query on a register ``|x, b, w>``:

* addition query ``|x, b, w> -> |x, b + f(x) mod m, w>``
* phase query ``|x, b, w> -> w_m^(b f(x)) |x, b, w>`` with ``w_m = exp(2 pi i / m)``

The conversion circuits ``phase_via_addition`` and ``addition_via_phase``
build one from the other by changing the basis of the answer wire with the
modulus-``m`` Fourier transform.

The ``*_array`` variants act on a batch: an array of shape ``(total_dim, F)``
whose column ``j`` is queried against row ``j`` of an ``(F, n)`` table array.
"""

from __future__ import annotations

import itertools
import math
import cmath
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError
from .qstate import RegisterLayout, StateVector, UnitaryOp, apply_unitary


@dataclass(frozen=True)
class OracleFunction:
    """Explicit table of ``f: [n] -> [m]``."""

    n: int
    m: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        table = tuple(int(v) for v in self.table)
        if self.n < 1:
            raise DomainError(f"domain size must be positive, got {self.n}")
        if self.m < 2:
            raise DomainError(f"codomain size must be at least 2, got {self.m}")
        if len(table) != self.n:
            raise DomainError(f"table has {len(table)} entries, expected {self.n}")
        if any(not 0 <= v < self.m for v in table):
            raise DomainError(f"table entries must lie in [0, {self.m}): {table}")
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __add__(self, other: "OracleFunction") -> "OracleFunction":
        """Pointwise sum modulo ``m``."""
        if (self.n, self.m) != (other.n, other.m):
            raise DomainError("cannot add oracles of different shapes")
        return OracleFunction(
            self.n, self.m, tuple((a + b) % self.m for a, b in zip(self.table, other.table))
        )

    @classmethod
    def constant(cls, n: int, m: int, value: int = 0) -> "OracleFunction":
        return cls(n, m, (value,) * n)

    @classmethod
    def random(cls, n: int, m: int, rng: np.random.Generator) -> "OracleFunction":
        return cls(n, m, tuple(int(v) for v in rng.integers(0, m, size=n)))

    def restrict(self, points: Sequence[int]) -> "OracleFunction":
        """The function ``i -> f(points[i])`` on ``len(points)`` points."""
        return OracleFunction(len(points), self.m, tuple(self.table[x] for x in points))


def all_functions(n: int, m: int) -> Iterator[OracleFunction]:
    """Every ``f: [n] -> [m]`` in lexicographic table order."""
    for table in itertools.product(range(m), repeat=n):
        yield OracleFunction(n, m, table)


def all_tables(n: int, m: int) -> np.ndarray:
    """All ``m**n`` function tables as an ``(m**n, n)`` integer array."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((m,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


@dataclass(frozen=True)
class RootOfUnity:
    """The power ``w_m^e``; the exponent is kept reduced modulo ``m``."""

    m: int
    e: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise DomainError(f"modulus must be positive, got {self.m}")
        object.__setattr__(self, "e", int(self.e) % self.m)

    @property
    def value(self) -> complex:
        return cmath.exp(2j * math.pi * self.e / self.m)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if self.m != other.m:
            raise DomainError("roots of different moduli")
        return RootOfUnity(self.m, self.e + other.e)


def omega_powers(m: int) -> np.ndarray:
    """``[w_m^0, ..., w_m^(m-1)]``; index by exponents reduced mod ``m``."""
    return np.exp(2j * np.pi * np.arange(m) / m)


def fourier_matrix(m: int) -> np.ndarray:
    if m < 2:
        raise DomainError(f"Fourier transform needs modulus >= 2, got {m}")
    j = np.arange(m)
    return omega_powers(m)[np.outer(j, j) % m] / math.sqrt(m)


def fourier(m: int, wire: int = 0) -> UnitaryOp:
    """Modulus-``m`` Fourier transform, entry ``(j, k) = w_m^(jk) / sqrt(m)``."""
    return UnitaryOp((wire,), fourier_matrix(m))


def inverse_fourier(m: int, wire: int = 0) -> UnitaryOp:
    return UnitaryOp((wire,), fourier_matrix(m).conj())


def _check_query_wires(layout: RegisterLayout, n: int, m: int, x_wire: int, b_wire: int) -> None:
    layout.check_wires((x_wire, b_wire))
    dx, db = layout.wire_dims[x_wire], layout.wire_dims[b_wire]
    if dx != n:
        raise DomainError(f"query wire has dimension {dx}, oracle domain size is {n}")
    if db != m:
        raise DomainError(f"answer wire has dimension {db}, oracle codomain size is {m}")


def _to_query_axes(arr: np.ndarray, layout: RegisterLayout, x_wire: int, b_wire: int):
    """Reshape ``(D, F)`` to ``(n, m, rest, F)`` with the query wires in front."""
    nf = arr.shape[1]
    t = arr.reshape(layout.wire_dims + (nf,))
    t = np.moveaxis(t, (x_wire, b_wire), (0, 1))
    moved = t.shape
    return t.reshape(moved[0], moved[1], -1, nf), moved


def _from_query_axes(t: np.ndarray, moved, layout: RegisterLayout, x_wire: int, b_wire: int):
    t = np.moveaxis(t.reshape(moved), (0, 1), (x_wire, b_wire))
    return t.reshape(layout.total_dim, -1)


def phase_query_array(
    arr: np.ndarray, layout: RegisterLayout, tables: np.ndarray, m: int, x_wire: int, b_wire: int
) -> np.ndarray:
    """Batched phase query; ``tables`` has shape ``(F, n)``."""
    n = tables.shape[1]
    _check_query_wires(layout, n, m, x_wire, b_wire)
    t, moved = _to_query_axes(arr, layout, x_wire, b_wire)
    b = np.arange(m)
    # exponent[x, b, F] = b * f_F(x) mod m
    expo = (b[None, :, None] * tables.T[:, None, :]) % m
    phase = omega_powers(m)[expo]
    t = t * phase[:, :, None, :]
    return _from_query_axes(t, moved, layout, x_wire, b_wire)


def addition_query_array(
    arr: np.ndarray, layout: RegisterLayout, tables: np.ndarray, m: int, x_wire: int, b_wire: int
) -> np.ndarray:
    """Batched addition query; ``tables`` has shape ``(F, n)``."""
    n = tables.shape[1]
    _check_query_wires(layout, n, m, x_wire, b_wire)
    t, moved = _to_query_axes(arr, layout, x_wire, b_wire)
    nf = t.shape[3]
    xs = np.arange(n)[:, None, None, None]
    # new[x, b] = old[x, b - f(x)]
    src_b = (np.arange(m)[None, :, None] - tables.T[:, None, :]) % m
    rest = np.arange(t.shape[2])[None, None, :, None]
    cols = np.arange(nf)[None, None, None, :]
    t = t[xs, src_b[:, :, None, :], rest, cols]
    return _from_query_axes(t, moved, layout, x_wire, b_wire)


def _single(fn, state: StateVector, f: OracleFunction, x_wire: int, b_wire: int) -> StateVector:
    tables = np.asarray(f.table, dtype=np.int64)[None, :]
    out = fn(state.amps[:, None], state.layout, tables, f.m, x_wire, b_wire)
    return StateVector(state.layout, out[:, 0])


def addition_query(state: StateVector, f: OracleFunction, x_wire: int, b_wire: int) -> StateVector:
    return _single(addition_query_array, state, f, x_wire, b_wire)


def phase_query(state: StateVector, f: OracleFunction, x_wire: int, b_wire: int) -> StateVector:
    return _single(phase_query_array, state, f, x_wire, b_wire)


def phase_via_addition(state: StateVector, f: OracleFunction, x_wire: int, b_wire: int) -> StateVector:
    """Phase query built as ``F_m . O_add . F_m^-1`` on the answer wire."""
    _check_query_wires(state.layout, f.n, f.m, x_wire, b_wire)
    state = apply_unitary(state, inverse_fourier(f.m, b_wire))
    state = addition_query(state, f, x_wire, b_wire)
    return apply_unitary(state, fourier(f.m, b_wire))


def addition_via_phase(state: StateVector, f: OracleFunction, x_wire: int, b_wire: int) -> StateVector:
    """Addition query built as ``F_m^-1 . O_phase . F_m`` on the answer wire."""
    _check_query_wires(state.layout, f.n, f.m, x_wire, b_wire)
    state = apply_unitary(state, fourier(f.m, b_wire))
    state = phase_query(state, f, x_wire, b_wire)
    return apply_unitary(state, inverse_fourier(f.m, b_wire))


def root_of_unity_sum(m: int, c: int) -> complex:
    """``sum_{j<m} w_m^(jc)`` by direct summation (no closed form)."""
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    terms = [cmath.exp(2j * math.pi * ((j * c) % m) / m) for j in range(m)]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
