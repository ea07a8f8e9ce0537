import json

import numpy as np
import pytest

from qmaclab.adversaries import (
    build_classical_adversary,
    build_guessing_adversary,
    build_random_adversary,
    ChallengeDistinguisher,
    ConstantAdversary,
)
from qmaclab.crypto_classical import full_table_family, identity_scheme, pad_scheme
from qmaclab.errors import DomainError, ResourceError
from qmaclab.fourier_oracle import OracleFunction
from qmaclab.games import (
    AdversaryCircuit,
    CpaOracle,
    GameConfig,
    GameReport,
    Query,
    ScpaOracle,
    corollary_sweep,
    euf_qcma_verdict,
    forgery_success,
    forgery_success_exact,
    forgery_success_montecarlo,
    ind_qcpa_game,
    ind_scpa_game,
    randomized_oracle_wrapper,
    run,
    simplified_bound,
    theorem_bound,
)
from qmaclab.qstate import RegisterLayout, StateVector, basis_state


def cfg_for(adv, **kw):
    return GameConfig.for_adversary(adv, **kw)


class TestBounds:
    @pytest.mark.parametrize("q,k,m,want", [
        (0, 1, 2, 0.5), (0, 1, 7, 1 / 7), (1, 2, 2, 0.75), (2, 3, 2, 0.875), (1, 3, 3, 7 / 27),
    ])
    def test_theorem_bound(self, q, k, m, want):
        assert theorem_bound(q, k, m) == pytest.approx(want, abs=1e-15)

    def test_k_at_most_q_is_one(self):
        assert theorem_bound(3, 2, 5) == 1.0

    @pytest.mark.parametrize("q,m,want", [(0, 2, 0.5), (1, 2, 0.75), (3, 4, 0.68359375)])
    def test_simplified(self, q, m, want):
        assert simplified_bound(q, m) == pytest.approx(want, abs=1e-15)
        assert simplified_bound(q, m) == pytest.approx(theorem_bound(q, q + 1, m), abs=1e-12)
        assert simplified_bound(q, m) <= (q + 1) / m

    def test_preconditions(self):
        with pytest.raises(DomainError):
            theorem_bound(0, 0, 2)
        with pytest.raises(DomainError):
            simplified_bound(0, 1)


class TestCircuit:
    def test_rejects_overlapping_outputs(self):
        with pytest.raises(DomainError):
            AdversaryCircuit(RegisterLayout((2, 2)), 2, 2, (), (0,), (0,))

    def test_rejects_wrong_dims(self):
        with pytest.raises(DomainError):
            AdversaryCircuit(RegisterLayout((3, 2)), 2, 2, (), (0,), (1,))

    def test_rejects_bad_query(self):
        with pytest.raises(DomainError):
            AdversaryCircuit(RegisterLayout((2, 2)), 2, 2, (Query("xor", 0, 1),), (0,), (1,))

    def test_query_count(self):
        adv = build_classical_adversary(3, 2, 2, 3)
        assert adv.query_count == 2
        assert adv.k == 3
        assert adv.workspace_wires == (0, 1)


class TestForgery:
    def test_guess_k1(self):
        for m in (2, 3, 5):
            adv = build_guessing_adversary(2, m, 1)
            assert forgery_success_exact(adv, cfg_for(adv)).p == pytest.approx(1 / m, abs=1e-12)

    def test_classical_example(self):
        adv = build_classical_adversary(2, 2, 1, 2)
        rep = forgery_success_exact(adv, cfg_for(adv))
        assert rep.p == pytest.approx(0.5, abs=1e-12)
        assert rep.bound == 0.75
        assert rep.ratio == pytest.approx(2 / 3)
        assert rep.conforms

    def test_repeated_x_scores_zero(self):
        # two x-outputs left at 0: never distinct
        lay = RegisterLayout((2, 2, 2, 2))
        adv = AdversaryCircuit(lay, 2, 2, (), (0, 1), (2, 3))
        assert forgery_success_exact(adv, cfg_for(adv)).p == 0.0

    def test_k_le_q_can_reach_one(self):
        adv = build_classical_adversary(2, 2, 1, 2)
        # output only the queried pair
        lay = adv.layout
        one = AdversaryCircuit(lay, 2, 2, adv.steps, (adv.x_out[0],), (adv.y_out[0],))
        rep = forgery_success_exact(one, cfg_for(one))
        assert rep.p == pytest.approx(1.0)
        assert rep.conforms

    def test_config_mismatch(self):
        adv = build_guessing_adversary(2, 2, 1)
        with pytest.raises(DomainError):
            forgery_success_exact(adv, GameConfig(n=2, m=2, q=1, k=1))

    def test_cap(self):
        adv = build_guessing_adversary(4, 8, 1)
        with pytest.raises(ResourceError):
            forgery_success_exact(adv, cfg_for(adv, enumeration_cap=100))

    def test_montecarlo_consistency(self, rng):
        adv = build_random_adversary(3, 2, 1, 2, rng)
        exact = forgery_success_exact(adv, cfg_for(adv)).p
        mc = forgery_success_montecarlo(adv, cfg_for(adv, mode="mc", trials=4096, seed=5))
        assert abs(mc.p - exact) <= 4 * mc.stderr

    def test_montecarlo_single_trial(self, rng):
        adv = build_random_adversary(2, 3, 1, 1, rng)
        rep = forgery_success(adv, cfg_for(adv, mode="mc", trials=1, seed=9))
        f = tuple(int(v) for v in np.random.default_rng(9).integers(0, 3, size=(1, 2))[0])
        state = run(adv, OracleFunction(2, 3, f))
        d = adv.layout.digit_table
        mass = sum(abs(state.amps[i]) ** 2 for i in range(len(d)) if d[i, adv.y_out[0]] == f[d[i, adv.x_out[0]]])
        assert rep.p == pytest.approx(mass, abs=1e-12)

    def test_montecarlo_deterministic(self, rng):
        adv = build_random_adversary(2, 2, 1, 1, rng)
        a = forgery_success(adv, cfg_for(adv, mode="mc", trials=500, seed=42))
        b = forgery_success(adv, cfg_for(adv, mode="mc", trials=500, seed=42))
        assert a.to_json() == b.to_json()

    def test_mc_needs_trials(self):
        with pytest.raises(DomainError):
            GameConfig(mode="mc", trials=0)

    def test_report_json_fields(self):
        adv = build_guessing_adversary(2, 2, 1)
        d = json.loads(forgery_success_exact(adv, cfg_for(adv)).to_json())
        assert {"p", "bound", "ratio", "q", "k", "n", "m", "mode", "trials", "seed", "skipped"} <= d.keys()


class TestReduction:
    def test_zero_offset_identical(self, rng):
        adv = build_random_adversary(2, 2, 1, 2, rng)
        direct = forgery_success_exact(adv, cfg_for(adv)).p
        g = randomized_oracle_wrapper(adv, offset=(0, 0))
        assert g.success_exact(cfg_for(adv)).p == pytest.approx(direct, abs=1e-12)

    def test_classical_full_enumeration(self):
        adv = build_classical_adversary(2, 2, 1, 2)
        p = randomized_oracle_wrapper(adv).success_exact(cfg_for(adv)).p
        assert p == pytest.approx(0.5, abs=1e-12)

    def test_guess_unchanged(self):
        adv = build_guessing_adversary(3, 3, 1)
        assert randomized_oracle_wrapper(adv).success_exact(cfg_for(adv)).p == pytest.approx(1 / 3)

    def test_offset_length(self):
        with pytest.raises(DomainError):
            randomized_oracle_wrapper(build_guessing_adversary(2, 2, 1), offset=(0,))


class TestVerdict:
    def test_guess_tight(self):
        adv = build_guessing_adversary(2, 16, 1)
        assert euf_qcma_verdict(forgery_success_exact(adv, cfg_for(adv)))

    def test_classical_passes(self):
        adv = build_classical_adversary(2, 2, 1, 2)
        assert euf_qcma_verdict(forgery_success_exact(adv, cfg_for(adv)))

    def test_wrong_k(self):
        rep = GameReport(1.0, 1.0, 1.0, q=1, k=1, n=2, m=2, mode="exact", trials=0, seed=0)
        with pytest.raises(DomainError):
            euf_qcma_verdict(rep)


class TestCorollarySweep:
    def test_holds_with_skips(self, rng):
        adv = build_random_adversary(2, 2, 1, 1, rng, workspace=(2,))
        rep = corollary_sweep(adv)
        assert rep.holds
        assert rep.checked + rep.skipped == 4 * 2 * 2

    def test_case_limit(self):
        rep = corollary_sweep(build_guessing_adversary(2, 2, 1), max_cases=3)
        assert rep.checked + rep.skipped == 3

    def test_guessing_counts_degenerate(self):
        rep = corollary_sweep(build_guessing_adversary(2, 2, 1))
        # only f(x) = 0 outputs carry amplitude
        assert rep.checked == 2 and rep.skipped == 6
        assert rep.min_slack == pytest.approx(0.0, abs=1e-12)


class TestIndGames:
    def test_constant_is_half(self):
        for game in (ind_qcpa_game,):
            rep = game(pad_scheme(full_table_family(2, 2)), ConstantAdversary(1), GameConfig())
            assert rep.p == 0.5

    def test_identity_loses(self):
        rep = ind_qcpa_game(identity_scheme(3), ChallengeDistinguisher(0, 2), GameConfig())
        assert rep.p == 1.0

    def test_pad_exact_half(self):
        rep = ind_qcpa_game(pad_scheme(full_table_family(3, 3)), ChallengeDistinguisher(), GameConfig())
        assert rep.p == pytest.approx(0.5, abs=1e-12)

    def test_encrypt_query_adds_ciphertext(self):
        scheme = pad_scheme(full_table_family(2, 3))
        oracle = CpaOracle(scheme, key=5, b=0, tape=(1,))
        lay = RegisterLayout((3, 2, 3))
        out = oracle.encrypt(basis_state(lay, (2, 0, 1)), 0, (1, 2))
        # key 5 is table (1, 2); r = 1 gives pad 2
        assert out.amplitude((2, 1, (1 + 2 + 2) % 3)) == 1.0

    def test_too_many_calls(self):
        oracle = CpaOracle(identity_scheme(2), 0, 0, ())
        with pytest.raises(DomainError):
            oracle.challenge(0, 1)

    def test_scpa_identical_states_half(self):
        class Same:
            oracle_calls = 1

            def play(self, oracle):
                psi = StateVector(RegisterLayout((2,)), np.array([0.6, 0.8]))
                return oracle.challenge_superposition(psi, psi), 0

        rep = ind_scpa_game(identity_scheme(2), Same(), GameConfig())
        assert rep.p == pytest.approx(0.5, abs=1e-12)

    def test_scpa_rejects_classical_challenge(self):
        with pytest.raises(DomainError):
            ScpaOracle(identity_scheme(2), 0, 0, (0,)).challenge(0, 1)

    def test_scpa_non_injective(self):
        class Collapsing:
            key_space_size, message_space, randomness_space, ciphertext_dims = 1, 2, 1, (2,)

            def enc(self, key, message, r):
                return (0,)

        oracle = ScpaOracle(Collapsing(), 0, 0, (0,))
        psi = basis_state(RegisterLayout((2,)), (0,))
        with pytest.raises(DomainError, match="injective"):
            oracle.challenge_superposition(psi, psi)

    def test_ind_cap(self):
        with pytest.raises(ResourceError):
            ind_qcpa_game(pad_scheme(full_table_family(4, 4)), ChallengeDistinguisher(),
                          GameConfig(enumeration_cap=10))
