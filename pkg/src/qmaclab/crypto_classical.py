"""Classical toy primitives: keyed function families, the PRF-based MAC,
an additive pad encryption scheme and classical game harnesses.

Keyed families are explicit ``(keys, domain)`` tables, so every game here
can be evaluated exactly by enumerating keys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Protocol

import numpy as np

from .errors import DomainError, ResourceError
from .fourier_oracle import all_tables

MAX_TABLE_ENTRIES = 2**24
EXACT_KEY_CAP = 2**16


@dataclass(frozen=True, eq=False)
class KeyedFunction:
    """``F(key, x)`` stored as a ``(key_space_size, domain_size)`` table."""

    key_space_size: int
    domain_size: int
    codomain_size: int
    table: np.ndarray

    def __post_init__(self) -> None:
        t = np.array(self.table, dtype=np.int64)
        if t.shape != (self.key_space_size, self.domain_size):
            raise DomainError(
                f"table shape {t.shape} does not match "
                f"({self.key_space_size}, {self.domain_size})"
            )
        if self.codomain_size < 1 or t.min(initial=0) < 0 or t.max(initial=0) >= self.codomain_size:
            raise DomainError("table values must lie in the codomain")
        t.flags.writeable = False
        object.__setattr__(self, "table", t)

    def eval(self, key: int, x: int) -> int:
        if not 0 <= key < self.key_space_size:
            raise DomainError(f"key {key} outside [0, {self.key_space_size})")
        if not 0 <= x < self.domain_size:
            raise DomainError(f"input {x} outside [0, {self.domain_size})")
        return int(self.table[key, x])


def table_prf(seed: int, key_space: int, domain: int, codomain: int) -> KeyedFunction:
    """Seeded pseudorandom tables; key ``k`` uses the generator seeded by ``(seed, k)``."""
    if key_space * domain > MAX_TABLE_ENTRIES:
        raise ResourceError(f"{key_space * domain} table entries exceed {MAX_TABLE_ENTRIES}")
    if min(key_space, domain, codomain) < 1:
        raise DomainError("spaces must be non-empty")
    rows = [np.random.default_rng([seed, k]).integers(0, codomain, size=domain) for k in range(key_space)]
    return KeyedFunction(key_space, domain, codomain, np.stack(rows))


def full_table_family(domain: int, codomain: int) -> KeyedFunction:
    """Key ``k`` is the ``k``-th function ``[domain] -> [codomain]`` in lexicographic order."""
    keys = codomain**domain
    if keys * domain > MAX_TABLE_ENTRIES:
        raise ResourceError(f"{keys} functions are too many to materialize")
    return KeyedFunction(keys, domain, codomain, all_tables(domain, codomain))


# --- MAC ------------------------------------------------------------------


@dataclass(frozen=True)
class MacScheme:
    prf: KeyedFunction

    @property
    def key_space_size(self) -> int:
        return self.prf.key_space_size

    @property
    def message_space(self) -> int:
        return self.prf.domain_size

    @property
    def tag_space(self) -> int:
        return self.prf.codomain_size

    def gen(self, rng: np.random.Generator) -> int:
        return int(rng.integers(self.key_space_size))

    def mac(self, key: int, message: int) -> int:
        return self.prf.eval(key, message)

    def vrfy(self, key: int, message: int, tag: int) -> int:
        return int(self.mac(key, message) == tag)

    def tag_tables(self) -> np.ndarray:
        """Row ``k`` is the tag function under key ``k``."""
        return self.prf.table


def mac_from_prf(prf: KeyedFunction) -> MacScheme:
    return MacScheme(prf)


class MacForger(Protocol):
    def __call__(self, mac_oracle: Callable[[int], int]) -> tuple[int, int]: ...


def _key_values(key_space: int, trials: int | None, seed: int):
    if trials is None:
        if key_space > EXACT_KEY_CAP:
            raise ResourceError(f"{key_space} keys exceed the exact cap {EXACT_KEY_CAP}; pass trials")
        return range(key_space), key_space
    rng = np.random.default_rng(seed)
    return (int(k) for k in rng.integers(0, key_space, size=trials)), trials


def classical_mac_forge_game(
    scheme: MacScheme, adversary: MacForger, trials: int | None = None, seed: int = 0
) -> Fraction:
    """Probability that the forger outputs a valid tag on a message it never queried.

    ``trials=None`` enumerates every key; otherwise keys are sampled.
    """
    keys, total = _key_values(scheme.key_space_size, trials, seed)
    wins = 0
    for key in keys:
        queried: set[int] = set()

        def oracle(msg: int, _key=key) -> int:
            queried.add(msg)
            return scheme.mac(_key, msg)

        msg, tag = adversary(oracle)
        wins += msg not in queried and scheme.vrfy(key, msg, tag) == 1
    return Fraction(wins, total)


def guessing_forger(message: int = 0, tag: int = 0) -> MacForger:
    return lambda oracle: (message, tag)


def replay_forger(message: int = 0) -> MacForger:
    return lambda oracle: (message, oracle(message))


def all_but_one_forger(message_space: int, target: int = 0, tag: int = 0) -> MacForger:
    """Queries every message except ``target``, then guesses its tag."""

    def forger(oracle):
        for msg in range(message_space):
            if msg != target:
                oracle(msg)
        return target, tag

    return forger


# --- PRF distinguishing -----------------------------------------------------


class Distinguisher(Protocol):
    def __call__(self, oracle: Callable[[int], int]) -> int: ...


def prf_distinguish_game(
    prf: KeyedFunction, distinguisher: Distinguisher, trials: int | None = None, seed: int = 0
) -> Fraction | float:
    """``|Pr[D^{F_k} = 1] - Pr[D^g = 1]|`` with ``g`` uniform over all functions.

    Exact (a :class:`~fractions.Fraction`) by enumerating keys and functions
    when ``trials`` is None; otherwise both sides are sampled and a float is
    returned.
    """
    d, c = prf.domain_size, prf.codomain_size
    if trials is None:
        if prf.key_space_size > EXACT_KEY_CAP or c**d > EXACT_KEY_CAP:
            raise ResourceError("spaces exceed the exact cap; pass trials")
        real = sum(int(distinguisher(lambda x, r=row: int(r[x]))) for row in prf.table)
        ideal = sum(
            int(distinguisher(lambda x, r=row: int(r[x]))) for row in itertools.product(range(c), repeat=d)
        )
        return abs(Fraction(real, prf.key_space_size) - Fraction(ideal, c**d))
    rng = np.random.default_rng(seed)
    keys = rng.integers(0, prf.key_space_size, size=trials)
    real = sum(int(distinguisher(lambda x, r=prf.table[k]: int(r[x]))) for k in keys)
    funcs = rng.integers(0, c, size=(trials, d))
    ideal = sum(int(distinguisher(lambda x, r=row: int(r[x]))) for row in funcs)
    return abs(real - ideal) / trials


def constant_family(domain: int, codomain: int, value: int = 0) -> KeyedFunction:
    """A one-key family that is obviously not pseudorandom."""
    return KeyedFunction(1, domain, codomain, np.full((1, domain), value))


# --- encryption -------------------------------------------------------------


@dataclass(frozen=True)
class PadScheme:
    """``Enc_k(msg; r) = (r, msg + F(k, r) mod M)``."""

    prf: KeyedFunction

    @property
    def key_space_size(self) -> int:
        return self.prf.key_space_size

    @property
    def message_space(self) -> int:
        return self.prf.codomain_size

    @property
    def randomness_space(self) -> int:
        return self.prf.domain_size

    @property
    def ciphertext_dims(self) -> tuple[int, ...]:
        return (self.randomness_space, self.message_space)

    def gen(self, rng: np.random.Generator) -> int:
        return int(rng.integers(self.key_space_size))

    def enc(self, key: int, message: int, r: int) -> tuple[int, int]:
        if not 0 <= message < self.message_space:
            raise DomainError(f"message {message} outside the message space")
        return (r, (message + self.prf.eval(key, r)) % self.message_space)

    def dec(self, key: int, ciphertext: tuple[int, ...]) -> int:
        r, c = ciphertext
        return (c - self.prf.eval(key, r)) % self.message_space


def pad_scheme(prf: KeyedFunction) -> PadScheme:
    return PadScheme(prf)


@dataclass(frozen=True)
class IdentityScheme:
    """``Enc_k(msg; r) = msg``; the insecure baseline."""

    message_space: int
    key_space_size: int = 1
    randomness_space: int = 1

    @property
    def ciphertext_dims(self) -> tuple[int, ...]:
        return (self.message_space,)

    def gen(self, rng: np.random.Generator) -> int:
        return 0

    def enc(self, key: int, message: int, r: int) -> tuple[int]:
        if not 0 <= message < self.message_space:
            raise DomainError(f"message {message} outside the message space")
        return (message,)

    def dec(self, key: int, ciphertext: tuple[int, ...]) -> int:
        return ciphertext[0]


def identity_scheme(message_space: int) -> IdentityScheme:
    return IdentityScheme(message_space)


class Eavesdropper(Protocol):
    def __call__(self, ciphertext: tuple[int, ...]) -> int: ...


def eavesdrop_advantage(scheme, adversary: Eavesdropper, m0: int, m1: int) -> Fraction:
    """``|2 Pr[guess = b] - 1|`` for one ciphertext of ``m_b``, exact over keys, ``b`` and ``r``."""
    K, R = scheme.key_space_size, scheme.randomness_space
    if K * R > EXACT_KEY_CAP:
        raise ResourceError("key and randomness spaces exceed the exact cap")
    wins = 0
    for key, r, b in itertools.product(range(K), range(R), (0, 1)):
        wins += int(adversary(scheme.enc(key, (m0, m1)[b], r))) == b
    return abs(2 * Fraction(wins, 2 * K * R) - 1)


def check_mac_correctness(scheme: MacScheme) -> bool:
    return all(
        scheme.vrfy(k, msg, scheme.mac(k, msg)) == 1
        for k in range(scheme.key_space_size)
        for msg in range(scheme.message_space)
    )


def check_encryption_correctness(scheme) -> bool:
    return all(
        scheme.dec(k, scheme.enc(k, msg, r)) == msg
        for k in range(scheme.key_space_size)
        for msg in range(scheme.message_space)
        for r in range(scheme.randomness_space)
    )

