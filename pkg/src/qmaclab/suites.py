"""Exhaustive verification suites behind ``qmaclab verify``.

Each suite returns a :class:`SuiteResult` whose ``worst`` field is the
largest observed deviation (or the smallest slack for inequality suites).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import amppoly
from .adversaries import build_classical_adversary, build_random_adversary
from .errors import DegenerateInputError, DomainError
from .fourier_oracle import (
    OracleFunction,
    addition_query_array,
    all_tables,
    fourier_matrix,
    phase_query_array,
    root_of_unity_sum,
)
from .games import AdversaryCircuit, corollary_sweep, run_batch, symbolic_run
from .qstate import RegisterLayout, apply_matrix

EQUIV_ATOL = 1e-12
ZEROSUM_ATOL = 1e-10
POLY_ATOL = 1e-9


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    worst: float
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _equivalence_deviation(n: int, m: int, states: np.ndarray, f: np.ndarray) -> tuple[float, float]:
    """Max deviation of (phase via addition, addition via phase) against direct queries."""
    layout = RegisterLayout((n, m))
    tables = np.broadcast_to(f, (states.shape[1], n))
    fm = fourier_matrix(m)
    fi = fm.conj().T
    direct_phase = phase_query_array(states, layout, tables, m, 0, 1)
    direct_add = addition_query_array(states, layout, tables, m, 0, 1)
    conv = apply_matrix(states, layout, (1,), fi)
    conv = addition_query_array(conv, layout, tables, m, 0, 1)
    conv_phase = apply_matrix(conv, layout, (1,), fm)
    conv = apply_matrix(states, layout, (1,), fm)
    conv = phase_query_array(conv, layout, tables, m, 0, 1)
    conv_add = apply_matrix(conv, layout, (1,), fi)
    return (
        float(np.max(np.abs(conv_phase - direct_phase))),
        float(np.max(np.abs(conv_add - direct_add))),
    )


def oracle_equivalence_suite(
    max_n: int = 5, max_m: int = 5, seed: int = 0, random_states: int = 50, oracles: int = 20
) -> SuiteResult:
    """All basis states plus seeded random states, against seeded random oracles."""
    rng = np.random.default_rng(seed)
    worst = [0.0, 0.0]
    checks = 0
    for n in range(2, max_n + 1):
        for m in range(2, max_m + 1):
            d = n * m
            z = rng.standard_normal((d, random_states)) + 1j * rng.standard_normal((d, random_states))
            states = np.concatenate([np.eye(d, dtype=np.complex128), z / np.linalg.norm(z, axis=0)], axis=1)
            for _ in range(oracles):
                f = rng.integers(0, m, size=n)
                dp, da = _equivalence_deviation(n, m, states, f)
                worst = [max(worst[0], dp), max(worst[1], da)]
                checks += states.shape[1]
    top = max(worst)
    return SuiteResult(
        "oracle-equivalence", top <= EQUIV_ATOL, checks, top,
        {"phase_via_addition": worst[0], "addition_via_phase": worst[1]},
    )


def zerosum_suite(max_m: int = 64) -> SuiteResult:
    worst = 0.0
    checks = 0
    for m in range(1, max_m + 1):
        for c in range(1, 4 * m + 1):
            s = root_of_unity_sum(m, c)
            want = m if c % m == 0 else 0
            worst = max(worst, abs(s - want))
            checks += 1
    return SuiteResult("zerosum", worst <= ZEROSUM_ATOL, checks, worst)


def random_circuit(
    rng: np.random.Generator, n: int, m: int, q: int, k: int = 1, max_workspace: int = 2
) -> AdversaryCircuit:
    """Random query circuit with one optional workspace wire."""
    work = int(rng.integers(1, max_workspace + 1))
    workspace = (work,) if work > 1 else ()
    return build_random_adversary(n, m, q, k, rng, workspace=workspace)


def _draw(rng, fixed, lo, hi):
    return int(fixed) if fixed is not None else int(rng.integers(lo, hi + 1))


def suite_circuits(
    seed: int, count: int = 20, n=None, m=None, q=None, max_n: int = 3, max_m: int = 3, max_q: int = 3
) -> list[AdversaryCircuit]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        cn, cm = _draw(rng, n, 2, max_n), _draw(rng, m, 2, max_m)
        cq = _draw(rng, q, 0, max_q)
        out.append(random_circuit(rng, cn, cm, cq))
    return out


def poly_suite(seed: int = 0, count: int = 20, **grid) -> SuiteResult:
    """Symbolic evaluation against the simulator for every oracle, plus the degree bound."""
    worst = 0.0
    degree_ok = True
    checks = 0
    for adv in suite_circuits(seed, count, **grid):
        sym = symbolic_run(adv)
        tables = all_tables(adv.n, adv.m)
        dev = np.max(np.abs(amppoly.evaluate_tables(sym, tables) - run_batch(adv, tables)))
        worst = max(worst, float(dev))
        degree_ok &= sym.degree <= adv.query_count
        checks += len(tables)
    return SuiteResult("poly", worst <= POLY_ATOL and degree_ok, checks, worst, {"degree_ok": degree_ok})


def random_polynomial(rng: np.random.Generator, n: int, m: int, q: int, max_terms: int = 12) -> amppoly.AmplitudePolynomial:
    """Random complex coefficients on randomly chosen terms of degree at most ``q``."""
    keys = [
        amppoly.make_key(zip(s, b))
        for size in range(min(q, n) + 1)
        for s in itertools.combinations(range(n), size)
        for b in itertools.product(range(1, m), repeat=size)
    ]
    count = int(rng.integers(1, min(max_terms, len(keys)) + 1))
    chosen = rng.choice(len(keys), size=count, replace=False)
    coeffs = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    terms = {keys[i]: complex(c) for i, c in zip(chosen, coeffs)}
    return amppoly.AmplitudePolynomial(m, n, terms, q)


def expectation_suite(seed: int = 0, count: int = 20, random_polys: int = 100, **grid) -> SuiteResult:
    """``E_g |alpha(g)|^2`` against the coefficient mass."""
    worst = 0.0
    checks = 0
    for adv in suite_circuits(seed, count, **grid):
        for poly in symbolic_run(adv).polys:
            worst = max(worst, abs(amppoly.expectation_sq(poly) - amppoly.coefficient_mass(poly)))
            checks += 1
    rng = np.random.default_rng([seed, 1])
    for _ in range(random_polys):
        n, m, q = int(rng.integers(1, 4)), int(rng.integers(2, 4)), int(rng.integers(0, 4))
        poly = random_polynomial(rng, n, m, q)
        worst = max(worst, abs(amppoly.expectation_sq(poly) - amppoly.coefficient_mass(poly)))
        checks += 1
    return SuiteResult("expectation", worst <= POLY_ATOL, checks, worst)


def uniform_phase_polynomial(n: int, m: int, q: int, f: OracleFunction) -> amppoly.AmplitudePolynomial:
    """Every term of degree at most ``q`` with weight ``1/T``, phased to equal 1 at ``f``.

    Its coefficient mass is exactly ``1/T``, meeting the mass bound with equality.
    """
    w = np.exp(2j * np.pi / m)
    total = amppoly.term_space_size(q, n, m)
    terms = {}
    for size in range(min(q, n) + 1):
        for s in itertools.combinations(range(n), size):
            for b in itertools.product(range(1, m), repeat=size):
                e = sum(f(x) * v for x, v in zip(s, b)) % m
                terms[amppoly.make_key(zip(s, b))] = complex(w ** (-e)) / total
    return amppoly.AmplitudePolynomial(m, n, terms, q)


def corollary_suite(seed: int = 0, count: int = 12) -> SuiteResult:
    """Mass bound on normalized polynomials and the restricted expectation bound.

    Covers random circuits (every nondegenerate output/workspace/oracle triple),
    the classical adversary, and the uniform-phase tight instance.
    """
    rng = np.random.default_rng(seed)
    min_slack = math.inf
    checks = skipped = 0
    circuits = []
    for _ in range(count):
        n, m = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        q = int(rng.integers(0, 3))
        k = int(rng.integers(1, min(n, 2) + 1))
        work = () if rng.integers(2) else (2,)
        circuits.append(build_random_adversary(n, m, q, k, rng, workspace=work))
    circuits.append(build_classical_adversary(2, 2, 1, 2))
    circuits.append(build_classical_adversary(3, 2, 1, 2))
    for adv in circuits:
        rep = corollary_sweep(adv)
        checks += rep.checked
        skipped += rep.skipped
        if rep.checked:
            min_slack = min(min_slack, rep.min_slack)
        sym = symbolic_run(adv)
        q = adv.query_count
        for row in all_tables(adv.n, adv.m):
            f = OracleFunction(adv.n, adv.m, tuple(int(v) for v in row))
            for x_seq in itertools.permutations(range(adv.n), adv.k):
                try:
                    poly = amppoly.restricted_normalized_poly(
                        sym, x_seq, (0,) * len(adv.workspace_wires), f, x_wires=adv.x_out, y_wires=adv.y_out
                    )
                except DegenerateInputError:
                    continue
                _, mc = amppoly.cauchy_mass_check(poly, f.restrict(x_seq), q)
                min_slack = min(min_slack, mc.mass - mc.lower_bound)
                checks += 1
    tight_dev = 0.0
    for n, m, q in [(2, 2, 1), (3, 3, 2), (3, 2, 3)]:
        f = OracleFunction(n, m, tuple(int(v) for v in rng.integers(0, m, size=n)))
        poly = uniform_phase_polynomial(n, m, q, f)
        _, mc = amppoly.cauchy_mass_check(poly, f, q)
        tight_dev = max(tight_dev, abs(mc.mass - mc.lower_bound))
        checks += 1
    passed = min_slack >= -1e-9 and tight_dev <= 1e-9
    return SuiteResult(
        "corollary", passed, checks, min_slack, {"skipped": skipped, "tight_deviation": tight_dev}
    )


SUITES = {
    "oracle-equivalence": oracle_equivalence_suite,
    "zerosum": zerosum_suite,
    "poly": poly_suite,
    "expectation": expectation_suite,
    "corollary": corollary_suite,
}


def get_suite(name: str):
    try:
        return SUITES[name]
    except KeyError:
        raise DomainError(f"unknown verification target {name!r}; expected one of {sorted(SUITES)}") from None
