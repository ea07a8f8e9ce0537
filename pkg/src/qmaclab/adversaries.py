"""Bundled adversaries and a derivative-free search over query circuits.

Forgery adversaries use the wire order ``x_out[0..k), y_out[0..k)`` with any
query or workspace wires placed before them. They start from ``|0...0>``.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DomainError, ResourceError
from .fourier_oracle import fourier_matrix
from .games import (
    AdversaryCircuit,
    GameConfig,
    Query,
    Unitary,
    forgery_success_exact,
    theorem_bound,
)
from .qstate import (
    RegisterLayout,
    StateVector,
    UnitaryOp,
    apply_unitary,
    basis_state,
    orthonormalize,
    permutation_matrix,
    random_unitary,
    shift_matrix,
    tensor,
)

STRATEGIES = ("guess", "classical", "fourier", "search")


def _output_layout(n: int, m: int, k: int, lead: Sequence[int] = ()) -> tuple[RegisterLayout, tuple[int, ...], tuple[int, ...]]:
    off = len(lead)
    layout = RegisterLayout(tuple(lead) + (n,) * k + (m,) * k)
    x_out = tuple(range(off, off + k))
    y_out = tuple(range(off + k, off + 2 * k))
    return layout, x_out, y_out


def _set_x_outputs(n: int, x_out: Sequence[int]) -> list[Unitary]:
    """Shift ``x_out[j]`` from 0 to ``j``."""
    return [Unitary(UnitaryOp((w,), shift_matrix(n, j))) for j, w in enumerate(x_out) if j]


def _controlled_add(src_dim: int, dst_dim: int, fn=lambda v: v) -> np.ndarray:
    """``|s, d> -> |s, d + fn(s) mod dst_dim>``."""
    perm = [s * dst_dim + (d + fn(s)) % dst_dim for s in range(src_dim) for d in range(dst_dim)]
    return permutation_matrix(perm)


def _swap(dim: int) -> np.ndarray:
    return permutation_matrix([b * dim + a for a in range(dim) for b in range(dim)])


def build_guessing_adversary(n: int, m: int, k: int) -> AdversaryCircuit:
    """No queries; outputs ``(0, 0), (1, 0), ..., (k-1, 0)``."""
    if not 1 <= k <= n:
        raise DomainError(f"cannot output {k} distinct points from a domain of size {n}")
    layout, x_out, y_out = _output_layout(n, m, k)
    return AdversaryCircuit(layout, n, m, _set_x_outputs(n, x_out), x_out, y_out, name="guess")


def build_classical_adversary(n: int, m: int, q: int, k: int) -> AdversaryCircuit:
    """Queries ``x = 0..q-1`` on basis states, copies each answer out, guesses the rest.

    Each answer is swapped into its y-output wire, which returns the answer
    wire to 0 before the next query.
    """
    if not (0 <= q < k <= n):
        raise DomainError(f"need 0 <= q < k <= n, got q={q}, k={k}, n={n}")
    layout, x_out, y_out = _output_layout(n, m, k, lead=(n, m))
    xq, bq = 0, 1
    steps: list = []
    for i in range(q):
        if i:
            steps.append(Unitary(UnitaryOp((xq,), shift_matrix(n, 1))))
        steps.append(Query("addition", xq, bq))
        steps.append(Unitary(UnitaryOp((bq, y_out[i]), _swap(m))))
    steps.extend(_set_x_outputs(n, x_out))
    return AdversaryCircuit(layout, n, m, steps, x_out, y_out, name="classical")


def build_fourier_adversary(n: int, q: int, k: int, m: int = 2) -> AdversaryCircuit:
    """Boolean Fourier-sampling probe.

    Each round prepares ``F_n`` on the query wire with the answer wire at 1,
    makes a phase query and undoes ``F_n``; the parity of the query register
    is then added into the next y-output. For ``n = 2`` one round leaves
    ``f(0) + f(1)`` in the query register, so ``y_1`` gets that parity while
    ``y_0`` stays a guess.
    """
    if m != 2:
        raise DomainError(f"the Fourier adversary is defined for m = 2 only, got m={m}")
    if not (0 <= q < k <= n):
        raise DomainError(f"need 0 <= q < k <= n, got q={q}, k={k}, n={n}")
    layout, x_out, y_out = _output_layout(n, 2, k, lead=(n, 2))
    xq, bq = 0, 1
    fn = UnitaryOp((xq,), fourier_matrix(n))
    steps: list = [Unitary(UnitaryOp((bq,), shift_matrix(2, 1)))] if q else []
    for i in range(q):
        steps += [Unitary(fn), Query("phase", xq, bq), Unitary(fn.dagger())]
        steps.append(Unitary(UnitaryOp((xq, y_out[i + 1]), _controlled_add(n, 2, lambda v: v % 2))))
    steps.extend(_set_x_outputs(n, x_out))
    return AdversaryCircuit(layout, n, 2, steps, x_out, y_out, name="fourier")


def build_random_adversary(
    n: int,
    m: int,
    q: int,
    k: int,
    rng: np.random.Generator,
    workspace: Sequence[int] = (),
    kinds: str = "mixed",
) -> AdversaryCircuit:
    """Haar-random full-register unitaries around ``q`` queries.

    Query ``j`` acts on output pair ``j mod k``. ``kinds`` is ``"phase"``,
    ``"addition"`` or ``"mixed"`` (each query kind drawn at random).
    """
    if k < 1:
        raise DomainError("need k >= 1")
    layout, x_out, y_out = _output_layout(n, m, k, lead=tuple(workspace))
    wires = tuple(range(layout.num_wires))
    dim = layout.total_dim
    steps: list = [Unitary(UnitaryOp(wires, random_unitary(dim, rng)))]
    for j in range(q):
        kind = kinds if kinds != "mixed" else ("phase", "addition")[int(rng.integers(2))]
        steps.append(Query(kind, x_out[j % k], y_out[j % k]))
        steps.append(Unitary(UnitaryOp(wires, random_unitary(dim, rng))))
    return AdversaryCircuit(layout, n, m, steps, x_out, y_out, name="random")


def build_adversary(name: str, n: int, m: int, q: int, k: int) -> AdversaryCircuit:
    """Builder lookup for the strategy names the CLI accepts (except ``search``)."""
    if name == "guess":
        if q:
            raise DomainError("the guessing adversary makes no queries; use q = 0")
        return build_guessing_adversary(n, m, k)
    if name == "classical":
        return build_classical_adversary(n, m, q, k)
    if name == "fourier":
        return build_fourier_adversary(n, q, k, m)
    raise DomainError(f"unknown strategy {name!r}; expected one of {STRATEGIES}")


# --- parameterized search -------------------------------------------------


@dataclass(frozen=True)
class ParameterizedStrategy:
    """``q + 1`` dense full-register unitaries around addition queries.

    Wires are ``x_out[0..k), y_out[0..k)``; query ``j`` uses pair ``j mod k``.
    Parameters are raw complex matrices, turned into unitaries by
    :func:`~qmaclab.qstate.orthonormalize`.
    """

    n: int
    m: int
    q: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 1 or self.q < 0:
            raise DomainError("need k >= 1 and q >= 0")

    @property
    def dim(self) -> int:
        return (self.n * self.m) ** self.k

    def layout(self) -> tuple[RegisterLayout, tuple[int, ...], tuple[int, ...]]:
        return _output_layout(self.n, self.m, self.k)

    def build(self, params: Sequence[np.ndarray]) -> AdversaryCircuit:
        return self.build_from_ops(self.unitaries(params))

    def unitaries(self, params: Sequence[np.ndarray]) -> list[UnitaryOp]:
        wires = tuple(range(self.layout()[0].num_wires))
        return [UnitaryOp(wires, orthonormalize(a)) for a in params]

    def build_from_ops(self, ops: Sequence[UnitaryOp]) -> AdversaryCircuit:
        layout, x_out, y_out = self.layout()
        steps: list = [Unitary(ops[0])]
        for j in range(self.q):
            steps.append(Query("addition", x_out[j % self.k], y_out[j % self.k]))
            steps.append(Unitary(ops[j + 1]))
        return AdversaryCircuit(layout, self.n, self.m, steps, x_out, y_out, name="search")

    def classical_start(self) -> list[np.ndarray]:
        """Parameters reproducing the classical adversary when ``q < k <= n``.

        The first unitary writes ``j`` into ``x_out[j]``, so query ``j`` reads
        ``f(j)`` into ``y_out[j]``; the later unitaries are the identity.
        """
        layout, x_out, _ = self.layout()
        factors = [shift_matrix(d, 0) for d in layout.wire_dims]
        for j, w in enumerate(x_out):
            factors[w] = shift_matrix(self.n, j)
        first = reduce(np.kron, factors)
        return [first] + [np.eye(self.dim, dtype=np.complex128) for _ in range(self.q)]

    def random_start(self, rng: np.random.Generator) -> list[np.ndarray]:
        return [random_unitary(self.dim, rng) for _ in range(self.q + 1)]


@dataclass
class SearchState:
    params: list[np.ndarray]
    score: float
    iterations: int
    seed: int
    restart: int = 0
    sigma: float = 0.0
    history: list[float] = field(default_factory=list)

    def digest(self) -> str:
        h = hashlib.sha256()
        for a in self.params:
            h.update(np.ascontiguousarray(a, dtype=np.complex128).tobytes())
        return h.hexdigest()


SIGMA_START = 0.1
SIGMA_DECAY = 0.95
SIGMA_FLOOR = 1e-3
STALE_WINDOW = 50


def _score(strategy: ParameterizedStrategy, ops: Sequence[UnitaryOp], cfg: GameConfig) -> float:
    adv = strategy.build_from_ops(ops)
    return forgery_success_exact(adv, GameConfig.for_adversary(adv, enumeration_cap=cfg.enumeration_cap)).p


def hill_climb(
    strategy: ParameterizedStrategy,
    cfg: GameConfig,
    iters: int,
    restarts: int = 1,
) -> SearchState:
    """Seeded local search maximizing the exact forgery probability.

    Restart 0 starts from the classical adversary when it exists; further
    restarts start from Haar-random unitaries. Each step adds complex
    Gaussian noise to one matrix and is kept only if the score strictly
    increases. The noise scale shrinks by 0.95 after every 50 consecutive
    rejections, down to 1e-3. The best restart wins; ties go to the lower
    restart index.
    """
    if strategy.m**strategy.n > cfg.enumeration_cap:
        raise ResourceError("hill climbing needs exact scores; oracle enumeration exceeds the cap")
    if iters < 0 or restarts < 1:
        raise DomainError("need iters >= 0 and restarts >= 1")
    best: SearchState | None = None
    for r in range(restarts):
        rng = np.random.default_rng([cfg.seed, r])
        if r == 0 and strategy.q < strategy.k <= strategy.n:
            params = strategy.classical_start()
        else:
            params = strategy.random_start(rng)
        ops = strategy.unitaries(params)
        score = _score(strategy, ops, cfg)
        sigma, stale = SIGMA_START, 0
        history = [score]
        for _ in range(iters):
            t = int(rng.integers(len(params)))
            d = strategy.dim
            noise = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            cand = list(params)
            cand[t] = params[t] + sigma * noise
            cand_ops = list(ops)
            cand_ops[t] = strategy.unitaries([cand[t]])[0]
            s = _score(strategy, cand_ops, cfg)
            if s > score:
                params, ops, score, stale = cand, cand_ops, s, 0
            else:
                stale += 1
                if stale % STALE_WINDOW == 0:
                    sigma = max(SIGMA_FLOOR, sigma * SIGMA_DECAY)
            history.append(score)
        state = SearchState(params, score, iters, cfg.seed, r, sigma, history)
        if best is None or state.score > best.score:
            best = state
    return best


def search_bound_ratio(state: SearchState, strategy: ParameterizedStrategy) -> float:
    return state.score / theorem_bound(strategy.q, strategy.k, strategy.m)


# --- indistinguishability adversaries -------------------------------------


def _bit_state(bit: int) -> StateVector:
    return basis_state(RegisterLayout((2,)), (int(bit),))


@dataclass(frozen=True)
class ConstantAdversary:
    """Ignores everything and outputs a fixed bit."""

    bit: int = 0
    oracle_calls: int = 0

    def play(self, oracle):
        return _bit_state(self.bit), 0


@dataclass(frozen=True)
class ChallengeDistinguisher:
    """Classical challenge ``(m0, m1)``; says 1 iff the last ciphertext component is ``m1``.

    Wins outright against the identity scheme.
    """

    m0: int = 0
    m1: int = 1
    oracle_calls: int = 1

    def play(self, oracle):
        c = oracle.challenge(self.m0, self.m1)
        return _bit_state(c[-1] == self.m1), 0


@dataclass(frozen=True)
class RandomnessReuseAdversary:
    """Against the pad scheme: learns one pad by an encryption query, then challenges.

    When the challenge reuses that randomness value the pad is known and
    ``b`` is recovered; otherwise it falls back to :class:`ChallengeDistinguisher`.
    Ciphertexts must have the form ``(r, m + pad)``.
    """

    m0: int = 0
    m1: int = 1
    oracle_calls: int = 2

    def play(self, oracle):
        scheme = oracle.scheme
        cdims = tuple(scheme.ciphertext_dims)
        layout = RegisterLayout((scheme.message_space,) + cdims)
        state = basis_state(layout, (self.m0,) + (0,) * len(cdims))
        state = oracle.encrypt(state, 0, tuple(range(1, 1 + len(cdims))))
        _, r_seen, c_seen = layout.digits(int(np.argmax(state.probabilities())))
        pad = (c_seen - self.m0) % scheme.message_space
        r_star, c_star = oracle.challenge(self.m0, self.m1)
        if r_star == r_seen:
            bit = (c_star - pad) % scheme.message_space == self.m1
        else:
            bit = c_star == self.m1
        return _bit_state(bit), 0


def _message_component_wire(scheme) -> int:
    return len(tuple(scheme.ciphertext_dims)) - 1


@dataclass(frozen=True)
class BasisPairDistinguisher:
    """IND-sCPA adversary sending the classical pair ``|m0>, |m1>``.

    Decides exactly like :class:`ChallengeDistinguisher`.
    """

    m0: int = 0
    m1: int = 1
    oracle_calls: int = 1

    def play(self, oracle):
        M = oracle.scheme.message_space
        lay = RegisterLayout((M,))
        ct = oracle.challenge_superposition(basis_state(lay, (self.m0,)), basis_state(lay, (self.m1,)))
        return _flag_equal(ct, _message_component_wire(oracle.scheme), self.m1)


def _flag_equal(ct: StateVector, wire: int, value: int) -> tuple[StateVector, int]:
    """Append a qubit set to 1 iff ``wire`` holds ``value``."""
    dim = ct.layout.wire_dims[wire]
    full = tensor(ct, _bit_state(0))
    out = full.layout.num_wires - 1
    mat = _controlled_add(dim, 2, lambda v: int(v == value))
    return apply_unitary(full, UnitaryOp((wire, out), mat)), out


@dataclass(frozen=True)
class HalfSplitDistinguisher:
    """IND-sCPA adversary with orthogonal superpositions over the two halves
    of the message space; measures which half the message component lies in.

    Against the identity scheme the halves are perfectly distinguishable.
    """

    oracle_calls: int = 1

    def play(self, oracle):
        M = oracle.scheme.message_space
        if M < 2:
            raise DomainError("need at least two messages")
        h = M // 2
        lay = RegisterLayout((M,))
        a0 = np.zeros(M, dtype=np.complex128)
        a1 = np.zeros(M, dtype=np.complex128)
        a0[:h] = 1 / math.sqrt(h)
        a1[h:] = 1 / math.sqrt(M - h)
        ct = oracle.challenge_superposition(StateVector(lay, a0), StateVector(lay, a1))
        wire = _message_component_wire(oracle.scheme)
        full = tensor(ct, _bit_state(0))
        out = full.layout.num_wires - 1
        mat = _controlled_add(M, 2, lambda v: int(v >= h))
        return apply_unitary(full, UnitaryOp((wire, out), mat)), out


@dataclass(frozen=True)
class FourierPairDistinguisher:
    """IND-sCPA adversary sending ``F|0>`` and ``F|1>``, then undoing ``F``.

    Fourier basis states only pick up a phase under a cyclic shift of the
    message, so an additive pad does not hide which one was encrypted.
    """

    oracle_calls: int = 1

    def play(self, oracle):
        M = oracle.scheme.message_space
        lay = RegisterLayout((M,))
        fm = fourier_matrix(M)
        ct = oracle.challenge_superposition(StateVector(lay, fm[:, 0]), StateVector(lay, fm[:, 1]))
        wire = _message_component_wire(oracle.scheme)
        ct = apply_unitary(ct, UnitaryOp((wire,), fm.conj().T))
        return ct, wire
