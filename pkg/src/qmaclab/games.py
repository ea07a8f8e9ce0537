"""Security games played by explicit query circuits.

The forgery game runs an :class:`AdversaryCircuit` against an oracle
``f: [n] -> [m]`` and reads the success probability off the final state: the
total squared amplitude of basis states whose ``k`` x-output wires hold
pairwise distinct values and whose y-output wires hold ``f`` of them. Nothing
is sampled at the measurement level; Monte-Carlo mode only samples oracles.

Oracle batches are simulated together: the state array has one column per
oracle table.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Literal, Protocol, Sequence, Union

import numpy as np

from . import amppoly
from .errors import DegenerateInputError, DomainError, ResourceError
from .fourier_oracle import (
    OracleFunction,
    addition_query_array,
    all_tables,
    fourier,
    inverse_fourier,
    phase_query_array,
)
from .qstate import RegisterLayout, StateVector, UnitaryOp, apply_matrix

QueryKind = Literal["phase", "addition"]
Mode = Literal["exact", "mc"]

DEFAULT_ENUMERATION_CAP = 2**20
# Upper bound on (total_dim x batch) entries simulated at once.
BATCH_ENTRIES = 2**22


@dataclass(frozen=True)
class Unitary:
    op: UnitaryOp


@dataclass(frozen=True)
class Query:
    kind: QueryKind
    x_wire: int
    b_wire: int


Step = Union[Unitary, Query]


@dataclass(frozen=True, eq=False)
class AdversaryCircuit:
    """Unitaries interleaved with oracle queries, started from ``|0...0>``.

    ``x_out[i]`` and ``y_out[i]`` hold the i-th output pair; every other wire
    is workspace.
    """

    layout: RegisterLayout
    n: int
    m: int
    steps: tuple[Step, ...]
    x_out: tuple[int, ...]
    y_out: tuple[int, ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "x_out", tuple(self.x_out))
        object.__setattr__(self, "y_out", tuple(self.y_out))
        dims = self.layout.wire_dims
        if len(self.x_out) != len(self.y_out):
            raise DomainError("x_out and y_out must have the same length")
        self.layout.check_wires(self.x_out + self.y_out)
        if any(dims[w] != self.n for w in self.x_out):
            raise DomainError(f"x-output wires must have dimension n={self.n}")
        if any(dims[w] != self.m for w in self.y_out):
            raise DomainError(f"y-output wires must have dimension m={self.m}")
        for step in self.steps:
            if isinstance(step, Query):
                if step.kind not in ("phase", "addition"):
                    raise DomainError(f"unknown query kind {step.kind!r}")
                self.layout.check_wires((step.x_wire, step.b_wire))
                if dims[step.x_wire] != self.n or dims[step.b_wire] != self.m:
                    raise DomainError("query wires must have dimensions (n, m)")
            elif isinstance(step, Unitary):
                wires = self.layout.check_wires(step.op.target_wires)
                if self.layout.sub_dim(wires) != step.op.dim:
                    raise DomainError("unitary dimension does not match its target wires")
            else:
                raise DomainError(f"unknown step {step!r}")

    @property
    def k(self) -> int:
        return len(self.x_out)

    @property
    def query_count(self) -> int:
        return sum(isinstance(s, Query) for s in self.steps)

    @property
    def workspace_wires(self) -> tuple[int, ...]:
        used = set(self.x_out) | set(self.y_out)
        return tuple(w for w in range(self.layout.num_wires) if w not in used)


def run_batch(adv: AdversaryCircuit, tables: np.ndarray) -> np.ndarray:
    """Final amplitudes for each oracle row of ``tables``; shape ``(total_dim, F)``."""
    tables = np.asarray(tables, dtype=np.int64)
    arr = np.zeros((adv.layout.total_dim, tables.shape[0]), dtype=np.complex128)
    arr[0, :] = 1.0
    for step in adv.steps:
        if isinstance(step, Unitary):
            arr = apply_matrix(arr, adv.layout, step.op.target_wires, step.op.matrix)
        elif step.kind == "phase":
            arr = phase_query_array(arr, adv.layout, tables, adv.m, step.x_wire, step.b_wire)
        else:
            arr = addition_query_array(arr, adv.layout, tables, adv.m, step.x_wire, step.b_wire)
    return arr


def run(adv: AdversaryCircuit, f: OracleFunction) -> StateVector:
    out = run_batch(adv, np.asarray(f.table)[None, :])
    return StateVector(adv.layout, out[:, 0])


def symbolic_run(adv: AdversaryCircuit) -> amppoly.SymbolicState:
    """Amplitude polynomials of the final state.

    Addition queries are rewritten as phase queries conjugated by the
    Fourier transform on the answer wire.
    """
    sym = amppoly.symbolic_init(adv.layout, (0,) * adv.layout.num_wires, adv.n, adv.m)
    for step in adv.steps:
        if isinstance(step, Unitary):
            sym = amppoly.symbolic_unitary(sym, step.op)
        elif step.kind == "phase":
            sym = amppoly.symbolic_query(sym, step.x_wire, step.b_wire)
        else:
            sym = amppoly.symbolic_unitary(sym, fourier(adv.m, step.b_wire))
            sym = amppoly.symbolic_query(sym, step.x_wire, step.b_wire)
            sym = amppoly.symbolic_unitary(sym, inverse_fourier(adv.m, step.b_wire))
    return sym


def _output_digits(adv: AdversaryCircuit) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    table = adv.layout.digit_table
    xs = table[:, list(adv.x_out)]
    ys = table[:, list(adv.y_out)]
    distinct = np.ones(len(table), dtype=bool)
    for i, j in itertools.combinations(range(adv.k), 2):
        distinct &= xs[:, i] != xs[:, j]
    return xs, ys, distinct


def success_masses(
    adv: AdversaryCircuit,
    final: np.ndarray,
    targets: np.ndarray,
    offsets: np.ndarray | None = None,
) -> np.ndarray:
    """Per-column success mass against ``targets`` (shape ``(F, n)``).

    With ``offsets`` the output pairs are first translated by subtracting
    ``offsets[x]`` from each ``y``.
    """
    xs, ys, distinct = _output_digits(adv)
    if adv.k == 0:
        return np.sum(np.abs(final) ** 2, axis=0)
    # (F, D, k) predicted y values
    want = np.take(targets, xs, axis=1)
    if offsets is not None:
        want = (want + np.take(offsets, xs, axis=1)) % adv.m
    match = np.all(want == ys[None, :, :], axis=2) & distinct[None, :]
    probs = np.abs(final) ** 2
    return np.einsum("df,fd->f", probs, match.astype(np.float64))


def _chunks(total: int, dim: int):
    step = max(1, BATCH_ENTRIES // max(dim, 1))
    for start in range(0, total, step):
        yield start, min(total, start + step)


def theorem_bound(q: int, k: int, m: int) -> float:
    """``m^-k * sum_{i<=q} C(k, i) (m-1)^i``, evaluated exactly then rounded."""
    if k < 1 or m < 2 or q < 0:
        raise DomainError(f"need k >= 1, m >= 2, q >= 0; got q={q}, k={k}, m={m}")
    total = sum(math.comb(k, i) * (m - 1) ** i for i in range(q + 1))
    return float(Fraction(total, m**k))


def simplified_bound(q: int, m: int) -> float:
    """Closed form ``1 - (1 - 1/m)^(q+1)`` of the bound at ``k = q + 1``.

    Evaluated exactly then rounded once; the naive float expression
    overshoots ``1/m`` by an ulp at ``q = 0`` for some ``m``.
    """
    if m < 2 or q < 0:
        raise DomainError(f"need m >= 2 and q >= 0, got q={q}, m={m}")
    return float(1 - Fraction(m - 1, m) ** (q + 1))


@dataclass(frozen=True)
class GameConfig:
    n: int = 2
    m: int = 2
    q: int = 0
    k: int = 1
    mode: Mode = "exact"
    trials: int = 0
    seed: int = 0
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "mc"):
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.mode == "mc" and self.trials < 1:
            raise DomainError("Monte-Carlo mode needs trials >= 1")
        if min(self.n, self.m, self.k) < 1 or self.q < 0:
            raise DomainError("n, m, k must be positive and q non-negative")

    @property
    def bound_applies(self) -> bool:
        return self.k > self.q

    @classmethod
    def for_adversary(cls, adv: AdversaryCircuit, **kw) -> "GameConfig":
        return cls(n=adv.n, m=adv.m, q=adv.query_count, k=adv.k, **kw)


@dataclass(frozen=True)
class GameReport:
    p: float
    bound: float
    ratio: float
    q: int
    k: int
    n: int
    m: int
    mode: str
    trials: int
    seed: int
    skipped: int = 0
    stderr: float | None = None

    @property
    def conforms(self) -> bool:
        """False only if a ``k > q`` game beats the forgery bound."""
        return self.k <= self.q or self.p <= self.bound + 1e-9

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _report(p: float, cfg: GameConfig, bound: float, trials: int, skipped=0, stderr=None) -> GameReport:
    ratio = p / bound if bound > 0 else math.inf
    return GameReport(
        p=p, bound=bound, ratio=ratio, q=cfg.q, k=cfg.k, n=cfg.n, m=cfg.m,
        mode=cfg.mode, trials=trials, seed=cfg.seed, skipped=skipped, stderr=stderr,
    )


def _check_cfg(adv: AdversaryCircuit, cfg: GameConfig) -> None:
    got = (adv.n, adv.m, adv.query_count, adv.k)
    want = (cfg.n, cfg.m, cfg.q, cfg.k)
    if got != want:
        raise DomainError(f"adversary has (n, m, q, k) = {got}, config says {want}")


def _mean_and_stderr(values: np.ndarray) -> tuple[float, float]:
    t = len(values)
    mean = math.fsum(values) / t
    if t < 2:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (t - 1)
    return mean, math.sqrt(var / t)


def forgery_success_exact(adv: AdversaryCircuit, cfg: GameConfig) -> GameReport:
    """Average success mass over all ``m**n`` oracles."""
    _check_cfg(adv, cfg)
    count = adv.m**adv.n
    if count > cfg.enumeration_cap:
        raise ResourceError(
            f"{count} oracles exceed the enumeration cap {cfg.enumeration_cap}; use mc mode"
        )
    tables = all_tables(adv.n, adv.m)
    masses = []
    for lo, hi in _chunks(count, adv.layout.total_dim):
        block = tables[lo:hi]
        masses.append(success_masses(adv, run_batch(adv, block), block))
    p = math.fsum(np.concatenate(masses)) / count
    return _report(p, cfg, theorem_bound(cfg.q, cfg.k, cfg.m), trials=0)


def forgery_success_montecarlo(adv: AdversaryCircuit, cfg: GameConfig) -> GameReport:
    """Sample oracles uniformly; each sample contributes its exact success mass."""
    _check_cfg(adv, cfg)
    if cfg.mode != "mc":
        raise DomainError("Monte-Carlo estimator needs mode='mc'")
    rng = np.random.default_rng(cfg.seed)
    tables = rng.integers(0, adv.m, size=(cfg.trials, adv.n))
    masses = []
    for lo, hi in _chunks(cfg.trials, adv.layout.total_dim):
        block = tables[lo:hi]
        masses.append(success_masses(adv, run_batch(adv, block), block))
    p, se = _mean_and_stderr(np.concatenate(masses))
    return _report(p, cfg, theorem_bound(cfg.q, cfg.k, cfg.m), cfg.trials, stderr=se)


def forgery_success(adv: AdversaryCircuit, cfg: GameConfig) -> GameReport:
    if cfg.mode == "exact":
        return forgery_success_exact(adv, cfg)
    return forgery_success_montecarlo(adv, cfg)


def forgery_success_keyed(adv: AdversaryCircuit, tables: np.ndarray, cfg: GameConfig) -> GameReport:
    """Forgery game against a keyed tag function, uniform over the given key tables.

    Row ``j`` of ``tables`` is the tag function under key ``j``.
    """
    _check_cfg(adv, cfg)
    tables = np.asarray(tables, dtype=np.int64)
    if tables.shape[1] != adv.n or tables.min() < 0 or tables.max() >= adv.m:
        raise DomainError("key tables do not describe functions [n] -> [m]")
    if len(tables) > cfg.enumeration_cap:
        raise ResourceError(f"{len(tables)} keys exceed the enumeration cap")
    masses = []
    for lo, hi in _chunks(len(tables), adv.layout.total_dim):
        block = tables[lo:hi]
        masses.append(success_masses(adv, run_batch(adv, block), block))
    p = math.fsum(np.concatenate(masses)) / len(tables)
    return _report(p, cfg, theorem_bound(cfg.q, cfg.k, cfg.m), trials=0)


@dataclass(frozen=True)
class RandomizedOracleGame:
    """The adversary runs against ``f + O``; its pairs are shifted back by ``-O(x)``.

    ``offset`` pins ``O`` (mainly for the ``O = 0`` sanity case); otherwise a
    fresh uniform ``O`` is drawn per game instance.
    """

    adversary: AdversaryCircuit
    seed: int = 0
    offset: tuple[int, ...] | None = None

    def masses(self, targets: np.ndarray, offsets: np.ndarray) -> np.ndarray:
        adv = self.adversary
        shifted = (targets + offsets) % adv.m
        return success_masses(adv, run_batch(adv, shifted), targets, offsets)

    def success_exact(self, cfg: GameConfig) -> GameReport:
        adv = self.adversary
        _check_cfg(adv, cfg)
        f_tables = all_tables(adv.n, adv.m)
        if self.offset is not None:
            o_tables = np.asarray(self.offset, dtype=np.int64)[None, :]
        else:
            o_tables = f_tables
        total = len(f_tables) * len(o_tables)
        if total > cfg.enumeration_cap:
            raise ResourceError(f"{total} (f, O) pairs exceed the enumeration cap")
        masses = []
        for o in o_tables:
            offsets = np.broadcast_to(o, f_tables.shape)
            masses.append(self.masses(f_tables, offsets))
        p = math.fsum(np.concatenate(masses)) / total
        return _report(p, cfg, theorem_bound(cfg.q, cfg.k, cfg.m), trials=0)

    def success_montecarlo(self, cfg: GameConfig) -> GameReport:
        adv = self.adversary
        _check_cfg(adv, cfg)
        rng = np.random.default_rng([cfg.seed, self.seed])
        targets = rng.integers(0, adv.m, size=(cfg.trials, adv.n))
        if self.offset is not None:
            offsets = np.broadcast_to(np.asarray(self.offset), targets.shape)
        else:
            offsets = rng.integers(0, adv.m, size=(cfg.trials, adv.n))
        masses = self.masses(targets, offsets)
        p, se = _mean_and_stderr(masses)
        return _report(p, cfg, theorem_bound(cfg.q, cfg.k, cfg.m), cfg.trials, stderr=se)


def randomized_oracle_wrapper(
    adv: AdversaryCircuit, seed: int = 0, offset: Sequence[int] | None = None
) -> RandomizedOracleGame:
    if offset is not None:
        offset = tuple(int(v) % adv.m for v in offset)
        if len(offset) != adv.n:
            raise DomainError(f"offset must have {adv.n} entries")
    return RandomizedOracleGame(adv, seed, offset)


def euf_qcma_verdict(report: GameReport, threshold: float | None = None) -> bool:
    """Pass iff the ``q + 1``-pair forgery probability stays within ``threshold``."""
    if report.k != report.q + 1:
        raise DomainError(f"EUF-qCMA needs k = q + 1, got q={report.q}, k={report.k}")
    if threshold is None:
        threshold = simplified_bound(report.q, report.m)
    return report.p <= threshold + 1e-12


@dataclass(frozen=True)
class CorollaryReport:
    checked: int
    skipped: int
    min_slack: float
    bound: float
    holds: bool


def corollary_sweep(
    adv: AdversaryCircuit,
    cap: int = DEFAULT_ENUMERATION_CAP,
    max_cases: int | None = None,
) -> CorollaryReport:
    """Check ``E_g0 |alpha'(g0)|^2 >= 1 / sum_{i<=q} C(k,i)(m-1)^i`` over every
    ordered distinct ``x``, workspace value ``w`` and oracle ``f``.

    Triples whose normalizing amplitude vanishes are skipped and counted.
    """
    if adv.m**adv.n > cap:
        raise ResourceError("oracle enumeration exceeds the cap")
    sym = symbolic_run(adv)
    q, k, m = adv.query_count, adv.k, adv.m
    bound = 1.0 / amppoly.term_space_size(q, k, m)
    work_dims = [adv.layout.wire_dims[w] for w in adv.workspace_wires]
    checked = skipped = 0
    min_slack = math.inf
    cases = itertools.product(
        _functions(adv.n, m),
        itertools.permutations(range(adv.n), k),
        itertools.product(*(range(d) for d in work_dims)),
    )
    for f, x_seq, w in itertools.islice(cases, max_cases):
        try:
            poly = amppoly.restricted_normalized_poly(
                sym, x_seq, w, f, x_wires=adv.x_out, y_wires=adv.y_out
            )
        except DegenerateInputError:
            skipped += 1
            continue
        e = amppoly.expectation_sq(poly, cap)
        min_slack = min(min_slack, e - bound)
        checked += 1
    holds = checked == 0 or min_slack >= -1e-9
    return CorollaryReport(checked, skipped, min_slack, bound, holds)


def _functions(n: int, m: int):
    for row in all_tables(n, m):
        yield OracleFunction(n, m, tuple(int(v) for v in row))


# --- indistinguishability games -------------------------------------------


class EncryptionScheme(Protocol):
    key_space_size: int
    message_space: int
    randomness_space: int
    ciphertext_dims: tuple[int, ...]

    def enc(self, key: int, message: int, r: int) -> tuple[int, ...]: ...


class IndAdversary(Protocol):
    oracle_calls: int

    def play(self, oracle: "CpaOracle") -> tuple[StateVector, int]: ...


class CpaOracle:
    """Challenger side of one IND game instance with fixed key, bit and randomness tape.

    Each oracle call consumes the next randomness value from the tape, so the
    whole superposition inside one encryption query is encrypted under the
    same ``r``.
    """

    def __init__(self, scheme: EncryptionScheme, key: int, b: int, tape: Sequence[int]):
        self.scheme = scheme
        self.key = key
        self.b = b
        self._tape = tuple(tape)
        self._pos = 0
        self._challenged = False

    def _next_r(self) -> int:
        if self._pos >= len(self._tape):
            raise DomainError(
                f"adversary made more than the declared {len(self._tape)} oracle calls"
            )
        r = self._tape[self._pos]
        self._pos += 1
        return r

    def challenge(self, m0: int, m1: int) -> tuple[int, ...]:
        """Classical challenge: encryption of ``m_b`` under fresh randomness."""
        for msg in (m0, m1):
            if not 0 <= msg < self.scheme.message_space:
                raise DomainError(f"message {msg} outside the message space")
        return tuple(self.scheme.enc(self.key, (m0, m1)[self.b], self._next_r()))

    def encrypt(self, state: StateVector, msg_wire: int, c_wires: Sequence[int]) -> StateVector:
        """``|m, c> -> |m, c + Enc_k(m; r)>`` with componentwise modular addition."""
        layout = state.layout
        c_wires = tuple(c_wires)
        layout.check_wires((msg_wire,) + c_wires)
        cdims = tuple(layout.wire_dims[w] for w in c_wires)
        if layout.wire_dims[msg_wire] != self.scheme.message_space:
            raise DomainError("message wire does not match the scheme's message space")
        if cdims != tuple(self.scheme.ciphertext_dims):
            raise DomainError(
                f"ciphertext wires have dimensions {cdims}, "
                f"scheme needs {tuple(self.scheme.ciphertext_dims)}"
            )
        r = self._next_r()
        enc = np.array(
            [self.scheme.enc(self.key, msg, r) for msg in range(self.scheme.message_space)],
            dtype=np.int64,
        )
        digits = np.array(layout.digit_table)
        shift = enc[digits[:, msg_wire]]
        for j, w in enumerate(c_wires):
            digits[:, w] = (digits[:, w] + shift[:, j]) % cdims[j]
        weights = np.array(
            [math.prod(layout.wire_dims[i + 1:]) for i in range(layout.num_wires)], dtype=np.int64
        )
        dest = digits @ weights
        out = np.zeros_like(state.amps)
        out[dest] = state.amps
        return StateVector(layout, out)


class ScpaOracle(CpaOracle):
    """IND-sCPA challenger: the challenge is a superposition of messages."""

    def challenge(self, m0: int, m1: int) -> tuple[int, ...]:
        raise DomainError("the IND-sCPA game has no classical challenge queries")

    def challenge_superposition(self, psi0: StateVector, psi1: StateVector) -> StateVector:
        """Relabel ``|m_b>`` basis-wise into ``sum_m psi_m |Enc_k(m; r*)>``.

        The pair arrives as two separate single-register states, so there is
        no register they could share entanglement through.
        """
        if self._challenged:
            raise DomainError("only one challenge per game")
        if psi0 is psi1:
            psi1 = StateVector(psi1.layout, psi1.amps.copy())
        M = self.scheme.message_space
        for psi in (psi0, psi1):
            if psi.layout.wire_dims != (M,):
                raise DomainError(f"challenge states must live on one wire of dimension {M}")
            if abs(psi.norm() - 1.0) > 1e-10:
                raise DomainError("challenge states must be normalized")
        self._challenged = True
        r = self._next_r()
        ct_layout = RegisterLayout(tuple(self.scheme.ciphertext_dims))
        images = [ct_layout.index(self.scheme.enc(self.key, msg, r)) for msg in range(M)]
        if len(set(images)) != M:
            raise DomainError(f"Enc(k={self.key}, .; r={r}) is not injective")
        out = np.zeros(ct_layout.total_dim, dtype=np.complex128)
        out[images] = (psi0, psi1)[self.b].amps
        return StateVector(ct_layout, out)


def _bit_one_probability(state: StateVector, wire: int) -> float:
    digits = state.layout.digit_table[:, wire]
    return math.fsum(state.probabilities()[digits == 1])


def _ind_game(oracle_cls, scheme, adv: IndAdversary, cfg: GameConfig) -> GameReport:
    calls = int(adv.oracle_calls)
    K, R = scheme.key_space_size, scheme.randomness_space
    if cfg.mode == "exact":
        total = K * R**calls
        if total > cfg.enumeration_cap:
            raise ResourceError(f"{total} (key, randomness) instances exceed the cap; use mc mode")
        instances = (
            (key, tape)
            for key in range(K)
            for tape in itertools.product(range(R), repeat=calls)
        )
        trials = 0
    else:
        rng = np.random.default_rng(cfg.seed)
        keys = rng.integers(0, K, size=cfg.trials)
        tapes = rng.integers(0, R, size=(cfg.trials, calls))
        instances = zip((int(k) for k in keys), (tuple(int(v) for v in t) for t in tapes))
        trials = cfg.trials
    values = []
    for key, tape in instances:
        wins = []
        for b in (0, 1):
            final, wire = adv.play(oracle_cls(scheme, key, b, tape))
            p1 = _bit_one_probability(final, wire)
            wins.append(p1 if b else 1.0 - p1)
        values.append(0.5 * (wins[0] + wins[1]))
    values = np.asarray(values)
    if cfg.mode == "exact":
        p, se = math.fsum(values) / len(values), None
    else:
        p, se = _mean_and_stderr(values)
    return GameReport(
        p=p, bound=0.5, ratio=p / 0.5, q=calls, k=0, n=scheme.message_space,
        m=int(math.prod(scheme.ciphertext_dims)), mode=cfg.mode, trials=trials,
        seed=cfg.seed, skipped=0, stderr=se,
    )


def ind_qcpa_game(scheme: EncryptionScheme, adv: IndAdversary, cfg: GameConfig) -> GameReport:
    """``Pr[output bit = b]`` with classical challenges and superposition encryption queries.

    The bit ``b`` is averaged exactly; keys and randomness are enumerated
    (``exact``) or sampled (``mc``). ``bound`` holds the ideal value 1/2.
    """
    return _ind_game(CpaOracle, scheme, adv, cfg)


def ind_scpa_game(scheme: EncryptionScheme, adv: IndAdversary, cfg: GameConfig) -> GameReport:
    """As :func:`ind_qcpa_game`, with one superposition challenge instead."""
    return _ind_game(ScpaOracle, scheme, adv, cfg)
