from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from qmaclab.adversaries import build_classical_adversary
from qmaclab.crypto_classical import (
    KeyedFunction,
    all_but_one_forger,
    check_encryption_correctness,
    check_mac_correctness,
    classical_mac_forge_game,
    constant_family,
    eavesdrop_advantage,
    full_table_family,
    guessing_forger,
    identity_scheme,
    mac_from_prf,
    pad_scheme,
    prf_distinguish_game,
    replay_forger,
    table_prf,
)
from qmaclab.errors import DomainError, ResourceError
from qmaclab.games import GameConfig, forgery_success_exact, forgery_success_keyed


class TestKeyedFunction:
    def test_table_prf_deterministic(self):
        a, b = table_prf(3, 2, 4, 4), table_prf(3, 2, 4, 4)
        assert_array_equal(a.table, b.table)
        assert a.eval(1, 2) == b.eval(1, 2)

    def test_table_prf_frozen_values(self):
        t = table_prf(0, 2, 4, 4).table
        want = np.stack([np.random.default_rng([0, k]).integers(0, 4, size=4) for k in range(2)])
        assert_array_equal(t, want)

    def test_table_prf_key_independent_of_family_size(self):
        assert_array_equal(table_prf(5, 3, 4, 4).table[1], table_prf(5, 8, 4, 4).table[1])

    def test_size_cap(self):
        with pytest.raises(ResourceError):
            table_prf(0, 2**13, 2**12, 2)

    def test_eval_bounds(self):
        f = full_table_family(2, 2)
        with pytest.raises(DomainError):
            f.eval(4, 0)
        with pytest.raises(DomainError):
            f.eval(0, 2)

    def test_bad_table(self):
        with pytest.raises(DomainError):
            KeyedFunction(1, 2, 2, np.array([[0, 2]]))

    def test_full_family_enumerates_functions(self):
        f = full_table_family(2, 3)
        assert f.key_space_size == 9
        assert len({tuple(r) for r in f.table}) == 9


class TestMac:
    scheme = mac_from_prf(full_table_family(3, 4))

    def test_correctness(self):
        assert check_mac_correctness(self.scheme)
        assert check_mac_correctness(mac_from_prf(table_prf(1, 5, 4, 3)))

    def test_wrong_tags_rejected(self):
        for k in range(self.scheme.key_space_size):
            for msg in range(3):
                good = self.scheme.mac(k, msg)
                assert all(self.scheme.vrfy(k, msg, t) == 0 for t in range(4) if t != good)

    def test_guessing_forger(self):
        assert classical_mac_forge_game(self.scheme, guessing_forger(1, 3)) == Fraction(1, 4)

    def test_replay_is_not_a_win(self):
        assert classical_mac_forge_game(self.scheme, replay_forger(2)) == 0

    def test_all_but_one(self):
        assert classical_mac_forge_game(self.scheme, all_but_one_forger(3, target=1)) == Fraction(1, 4)

    def test_sampled_keys(self):
        p = classical_mac_forge_game(self.scheme, guessing_forger(), trials=2000, seed=4)
        assert abs(float(p) - 0.25) < 0.05

    def test_quantum_game_matches_uniform(self):
        adv = build_classical_adversary(3, 4, 1, 2)
        cfg = GameConfig.for_adversary(adv)
        keyed = forgery_success_keyed(adv, self.scheme.tag_tables(), cfg).p
        assert keyed == pytest.approx(forgery_success_exact(adv, cfg).p, abs=1e-12)


class TestPrfGame:
    def test_full_family_zero(self):
        assert prf_distinguish_game(full_table_family(2, 3), lambda o: o(0) == 0) == 0

    def test_constant_family(self):
        adv = prf_distinguish_game(constant_family(2, 3), lambda o: o(0) == 0)
        assert adv == Fraction(2, 3)

    def test_oblivious(self):
        assert prf_distinguish_game(table_prf(0, 3, 2, 3), lambda o: 1) == 0

    def test_small_seeded_family_has_advantage(self):
        prf = table_prf(1, 2, 3, 3)
        first = int(prf.table[0, 0])
        assert prf_distinguish_game(prf, lambda o: o(0) == first) > 0

    def test_sampled(self):
        adv = prf_distinguish_game(constant_family(2, 3), lambda o: o(0) == 0, trials=3000, seed=1)
        assert abs(adv - 2 / 3) < 0.05


class TestEncryption:
    def test_correctness(self):
        assert check_encryption_correctness(pad_scheme(full_table_family(3, 3)))
        assert check_encryption_correctness(identity_scheme(4))

    def test_distinct_randomness_first_component(self):
        s = pad_scheme(full_table_family(3, 2))
        assert s.enc(5, 1, 0)[0] != s.enc(5, 1, 2)[0]

    def test_dims(self):
        s = pad_scheme(full_table_family(4, 3))
        assert s.ciphertext_dims == (4, 3)
        assert s.message_space == 3 and s.randomness_space == 4

    def test_eavesdropper(self):
        assert eavesdrop_advantage(pad_scheme(full_table_family(3, 2)), lambda c: c[1], 0, 1) == 0
        assert eavesdrop_advantage(identity_scheme(2), lambda c: c[0], 0, 1) == 1

    def test_message_range(self):
        with pytest.raises(DomainError):
            identity_scheme(2).enc(0, 2, 0)
