"""Symbolic amplitude polynomials in the oracle values.

After ``q`` phase queries every amplitude is a function of ``f`` of the form

    alpha(f) = sum_{(S, b)} beta_{S,b} * prod_{x in S} w_m^(f(x) b(x))

with ``|S| <= q`` and ``b: S -> {1, ..., m-1}``. A :class:`TermKey` is the
tuple of ``(x, b(x))`` pairs sorted by ``x``; the empty tuple is the constant
term. :class:`SymbolicState` tracks one such polynomial per basis index, is
evolved by :func:`symbolic_query` and :func:`symbolic_unitary`, and is checked
against the numeric simulator through :func:`evaluate`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DegenerateInputError, DomainError, ResourceError
from .fourier_oracle import OracleFunction, all_tables, omega_powers
from .qstate import RegisterLayout, StateVector, UnitaryOp, apply_matrix

TermKey = tuple[tuple[int, int], ...]

PRUNE_ATOL = 1e-13
DEFAULT_ENUMERATION_CAP = 2**20


def term_support(key: TermKey) -> tuple[int, ...]:
    return tuple(x for x, _ in key)


def make_key(pairs: Mapping[int, int] | Iterable[tuple[int, int]]) -> TermKey:
    items = pairs.items() if isinstance(pairs, Mapping) else pairs
    return tuple(sorted((int(x), int(b)) for x, b in items))


def _fsum_complex(values: Iterable[complex]) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


@dataclass
class AmplitudePolynomial:
    m: int
    n: int
    terms: dict[TermKey, complex] = field(default_factory=dict)
    degree_budget: int = 0

    def __post_init__(self) -> None:
        for key in self.terms:
            xs = term_support(key)
            if len(set(xs)) != len(xs):
                raise DomainError(f"repeated domain point in term {key}")
            if any(not 0 <= x < self.n for x in xs):
                raise DomainError(f"term {key} leaves the domain [0, {self.n})")
            if any(not 1 <= b < self.m for _, b in key):
                raise DomainError(f"term {key} has a b value outside [1, {self.m})")
            if len(key) > self.degree_budget:
                raise DomainError(
                    f"term {key} has degree {len(key)} > budget {self.degree_budget}"
                )

    @property
    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=0)

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate(self, f: OracleFunction | Sequence[int]) -> complex:
        table = f.table if isinstance(f, OracleFunction) else tuple(f)
        if len(table) != self.n:
            raise DomainError(f"function on {len(table)} points, polynomial on {self.n}")
        w = omega_powers(self.m)
        vals = []
        for key, beta in self.terms.items():
            e = sum(table[x] * b for x, b in key) % self.m
            vals.append(beta * w[e])
        return _fsum_complex(vals)

    def evaluate_tables(self, tables: np.ndarray) -> np.ndarray:
        """Values at every row of an ``(F, n)`` table array."""
        out = np.zeros(tables.shape[0], dtype=np.complex128)
        w = omega_powers(self.m)
        for key, beta in self.terms.items():
            if key:
                xs = np.array([x for x, _ in key])
                bs = np.array([b for _, b in key])
                e = (tables[:, xs] @ bs) % self.m
                out += beta * w[e]
            else:
                out += beta
        return out

    def dump(self) -> str:
        """One line per term: ``S=<x,...>; b=<x:val,...>; re=<float>; im=<float>``."""
        lines = []
        for key in sorted(self.terms, key=lambda k: (len(k), k)):
            beta = self.terms[key]
            s = ",".join(str(x) for x, _ in key)
            b = ",".join(f"{x}:{v}" for x, v in key)
            lines.append(f"S={s}; b={b}; re={beta.real!r}; im={beta.imag!r}")
        return "\n".join(lines)

    @classmethod
    def parse_dump(cls, text: str, m: int, n: int, degree_budget: int | None = None) -> "AmplitudePolynomial":
        terms: dict[TermKey, complex] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            fields = dict(part.strip().split("=", 1) for part in line.split(";"))
            pairs = []
            if fields["b"]:
                for item in fields["b"].split(","):
                    x, v = item.split(":")
                    pairs.append((int(x), int(v)))
            key = make_key(pairs)
            support = tuple(int(x) for x in fields["S"].split(",")) if fields["S"] else ()
            if support != term_support(key):
                raise DomainError(f"S and b disagree in dump line {line!r}")
            terms[key] = complex(float(fields["re"]), float(fields["im"]))
        budget = max((len(k) for k in terms), default=0) if degree_budget is None else degree_budget
        return cls(m, n, terms, budget)


@dataclass
class SymbolicState:
    """One amplitude polynomial per basis index of ``layout``."""

    layout: RegisterLayout
    n: int
    m: int
    polys: list[AmplitudePolynomial]
    queries: int = 0

    @property
    def degree(self) -> int:
        return max((p.degree for p in self.polys), default=0)

    def term_count(self) -> int:
        return max((len(p) for p in self.polys), default=0)


def _prune(terms: dict[TermKey, complex]) -> dict[TermKey, complex]:
    return {k: v for k, v in terms.items() if abs(v) >= PRUNE_ATOL}


def symbolic_init(
    layout: RegisterLayout, start_digits: Sequence[int], n: int, m: int
) -> SymbolicState:
    """Zero-query state: the start index carries the constant 1."""
    start = layout.index(start_digits)
    polys = [AmplitudePolynomial(m, n) for _ in range(layout.total_dim)]
    polys[start].terms[()] = 1.0 + 0j
    return SymbolicState(layout, n, m, polys)


def _query_term(key: TermKey, x0: int, b0: int, m: int) -> TermKey:
    pairs = dict(key)
    if x0 not in pairs:
        pairs[x0] = b0
    else:
        nb = (pairs[x0] + b0) % m
        if nb:
            pairs[x0] = nb
        else:
            del pairs[x0]
    return make_key(pairs)


def symbolic_query(state: SymbolicState, x_wire: int, b_wire: int) -> SymbolicState:
    """Multiply the polynomial at ``|x0, b0, w>`` by ``w^(f(x0) b0)``."""
    layout = state.layout
    layout.check_wires((x_wire, b_wire))
    if layout.wire_dims[x_wire] != state.n or layout.wire_dims[b_wire] != state.m:
        raise DomainError(
            f"query wires have dimensions {layout.wire_dims[x_wire]}, "
            f"{layout.wire_dims[b_wire]}; expected {state.n}, {state.m}"
        )
    budget = state.queries + 1
    digits = layout.digit_table
    new_polys = []
    for idx, poly in enumerate(state.polys):
        x0, b0 = int(digits[idx, x_wire]), int(digits[idx, b_wire])
        if b0 == 0:
            terms = dict(poly.terms)
        else:
            terms: dict[TermKey, complex] = {}
            for key, beta in poly.terms.items():
                nk = _query_term(key, x0, b0, state.m)
                terms[nk] = terms.get(nk, 0j) + beta
            terms = _prune(terms)
        new_polys.append(AmplitudePolynomial(state.m, state.n, terms, budget))
    return SymbolicState(layout, state.n, state.m, new_polys, budget)


def symbolic_unitary(state: SymbolicState, u: UnitaryOp) -> SymbolicState:
    """Output polynomial ``i`` is ``sum_j u[i, j] * poly_j`` on the target wires."""
    keys = sorted({k for p in state.polys for k in p.terms}, key=lambda k: (len(k), k))
    col = {k: j for j, k in enumerate(keys)}
    coeffs = np.zeros((state.layout.total_dim, len(keys)), dtype=np.complex128)
    for i, p in enumerate(state.polys):
        for k, beta in p.terms.items():
            coeffs[i, col[k]] = beta
    if keys:
        coeffs = apply_matrix(coeffs, state.layout, u.target_wires, u.matrix)
    else:
        state.layout.check_wires(u.target_wires)
    new_polys = []
    for i in range(state.layout.total_dim):
        row = coeffs[i]
        nz = np.nonzero(np.abs(row) >= PRUNE_ATOL)[0]
        terms = {keys[j]: complex(row[j]) for j in nz}
        new_polys.append(AmplitudePolynomial(state.m, state.n, terms, state.queries))
    return SymbolicState(state.layout, state.n, state.m, new_polys, state.queries)


def evaluate(state: SymbolicState, f: OracleFunction) -> StateVector:
    if (f.n, f.m) != (state.n, state.m):
        raise DomainError(
            f"oracle has shape ({f.n}, {f.m}), symbolic state expects ({state.n}, {state.m})"
        )
    return StateVector(state.layout, [p.evaluate(f) for p in state.polys])


def evaluate_tables(state: SymbolicState, tables: np.ndarray) -> np.ndarray:
    """Amplitudes for every oracle row of ``tables``; shape ``(total_dim, F)``."""
    if tables.shape[1] != state.n:
        raise DomainError("table width does not match the domain size")
    return np.stack([p.evaluate_tables(tables) for p in state.polys])


def coefficient_mass(poly: AmplitudePolynomial) -> float:
    return math.fsum(abs(b) ** 2 for b in poly.terms.values())


def expectation_sq(poly: AmplitudePolynomial, cap: int = DEFAULT_ENUMERATION_CAP) -> float:
    """``E_g |alpha(g)|^2`` over all ``m**n`` functions, by enumeration."""
    count = poly.m**poly.n
    if count > cap:
        raise ResourceError(
            f"enumerating {count} functions exceeds the cap {cap}; use Monte-Carlo mode"
        )
    vals = np.abs(poly.evaluate_tables(all_tables(poly.n, poly.m))) ** 2
    return math.fsum(vals) / count


def term_space_size(q: int, n: int, m: int) -> int:
    """Number of pairs ``(S, b)`` with ``|S| <= q``: ``sum_i C(n, i) (m-1)^i``."""
    return sum(math.comb(n, i) * (m - 1) ** i for i in range(q + 1))


@dataclass(frozen=True)
class MassCheck:
    mass: float
    lower_bound: float
    holds: bool
    value_at_f: complex
    q: int
    n: int
    m: int


def cauchy_mass_check(
    poly: AmplitudePolynomial, f: OracleFunction, q: int | None = None
) -> tuple[bool, MassCheck]:
    """Check ``sum |beta|^2 >= 1 / term_space_size`` for a polynomial of modulus 1 at ``f``.

    ``q`` defaults to the polynomial's degree budget.
    """
    value = poly.evaluate(f)
    if abs(abs(value) - 1.0) > 1e-9:
        raise DomainError(f"|alpha(f)| = {abs(value):.12f}, the mass bound needs 1")
    q = poly.degree_budget if q is None else q
    mass = coefficient_mass(poly)
    bound = 1.0 / term_space_size(q, poly.n, poly.m)
    holds = mass >= bound - 1e-9
    return holds, MassCheck(mass, bound, holds, value, q, poly.n, poly.m)


def restricted_normalized_poly(
    state: SymbolicState,
    x_seq: Sequence[int],
    w: Sequence[int],
    f: OracleFunction,
    *,
    x_wires: Sequence[int],
    y_wires: Sequence[int],
) -> AmplitudePolynomial:
    """Amplitude of ``|x_seq, f(x_seq), w>`` as a polynomial in ``g0 = g|x_seq``.

    Values outside ``x_seq`` are frozen to ``f``; the result is divided by the
    amplitude at ``f`` so that it evaluates to 1 at ``f|x_seq``. Domain point
    ``x_seq[i]`` becomes variable ``i`` of the returned polynomial, so its
    domain size is ``len(x_seq)``. ``w`` lists the digits of the remaining
    (workspace) wires in layout order.
    """
    layout = state.layout
    x_wires = tuple(x_wires)
    y_wires = tuple(y_wires)
    x_seq = tuple(int(x) for x in x_seq)
    if len(x_seq) != len(x_wires) or len(y_wires) != len(x_wires):
        raise DomainError("x_seq, x_wires and y_wires must have equal length")
    if len(set(x_seq)) != len(x_seq):
        raise DomainError(f"x_seq must be distinct, got {x_seq}")
    if (f.n, f.m) != (state.n, state.m):
        raise DomainError("oracle shape does not match the symbolic state")
    out_wires = set(layout.check_wires(x_wires + y_wires))
    work_wires = [i for i in range(layout.num_wires) if i not in out_wires]
    if len(w) != len(work_wires):
        raise DomainError(f"expected {len(work_wires)} workspace digits, got {len(w)}")
    digits = [0] * layout.num_wires
    for wire, x in zip(x_wires, x_seq):
        digits[wire] = x
    for wire, x in zip(y_wires, x_seq):
        digits[wire] = f(x)
    for wire, v in zip(work_wires, w):
        digits[wire] = int(v)
    poly = state.polys[layout.index(digits)]

    denom = poly.evaluate(f)
    if abs(denom) <= 1e-12:
        raise DegenerateInputError(
            f"amplitude of {tuple(digits)} at f is {abs(denom):.3e}; cannot normalize"
        )
    pos = {x: i for i, x in enumerate(x_seq)}
    wpow = omega_powers(state.m)
    terms: dict[TermKey, list[complex]] = {}
    for key, beta in poly.terms.items():
        inside = []
        e_out = 0
        for x, b in key:
            if x in pos:
                inside.append((pos[x], b))
            else:
                e_out += f(x) * b
        nk = make_key(inside)
        terms.setdefault(nk, []).append(beta * wpow[e_out % state.m] / denom)
    merged = _prune({k: _fsum_complex(v) for k, v in terms.items()})
    return AmplitudePolynomial(state.m, len(x_seq), merged, state.queries)
