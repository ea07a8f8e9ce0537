import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from qmaclab.errors import DomainError
from qmaclab.fourier_oracle import (
    OracleFunction,
    RootOfUnity,
    addition_query,
    addition_via_phase,
    all_functions,
    all_tables,
    fourier,
    fourier_matrix,
    inverse_fourier,
    phase_query,
    phase_via_addition,
    root_of_unity_sum,
)
from qmaclab.qstate import RegisterLayout, basis_state, random_state


class TestOracleFunction:
    def test_call_and_add(self):
        f = OracleFunction(3, 4, (1, 2, 3))
        g = OracleFunction(3, 4, (3, 3, 3))
        assert f(2) == 3
        assert (f + g).table == (0, 1, 2)

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            OracleFunction(2, 2, (0, 2))
        with pytest.raises(DomainError):
            OracleFunction(2, 2, (0,))

    def test_restrict(self):
        f = OracleFunction(3, 3, (2, 0, 1))
        assert f.restrict((2, 0)).table == (1, 2)

    def test_enumeration_order(self):
        assert [f.table for f in all_functions(2, 2)] == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert all_tables(3, 2).shape == (8, 3)

    def test_root_of_unity(self):
        w = RootOfUnity(4, 5)
        assert w.e == 1
        assert w.value == pytest.approx(1j)
        assert (w * RootOfUnity(4, 3)).e == 0


class TestFourier:
    def test_unitary_and_inverse(self):
        for m in (2, 3, 5, 8):
            fm = fourier_matrix(m)
            assert_allclose(fm.conj().T @ fm, np.eye(m), atol=1e-12)
            assert_allclose(inverse_fourier(m).matrix @ fourier(m).matrix, np.eye(m), atol=1e-12)

    def test_m2_is_hadamard(self):
        assert_allclose(fourier_matrix(2), np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-15)

    def test_uniform_column(self):
        assert_allclose(fourier_matrix(3)[:, 0], np.full(3, 1 / math.sqrt(3)))

    def test_rejects_trivial_modulus(self):
        with pytest.raises(DomainError):
            fourier_matrix(1)


class TestQueries:
    def test_addition_basis_state(self):
        # |x=1, b=1> with f(1)=2, m=3 -> |1, 0>, index 3
        lay = RegisterLayout((2, 3))
        out = addition_query(basis_state(lay, (1, 1)), OracleFunction(2, 3, (0, 2)), 0, 1)
        assert out.amplitude((1, 0)) == 1.0
        assert lay.index((1, 0)) == 3

    def test_phase_basis_state(self):
        lay = RegisterLayout((2, 4))
        out = phase_query(basis_state(lay, (1, 3)), OracleFunction(2, 4, (0, 1)), 0, 1)
        assert out.amplitude((1, 3)) == pytest.approx(-1j)

    def test_phase_b_zero_is_identity(self):
        lay = RegisterLayout((3, 3))
        s = basis_state(lay, (2, 0))
        assert_allclose(phase_query(s, OracleFunction(3, 3, (1, 2, 1)), 0, 1).amps, s.amps)

    def test_workspace_untouched(self):
        lay = RegisterLayout((2, 3, 2))
        out = addition_query(basis_state(lay, (0, 1, 1)), OracleFunction(3, 2, (0, 1, 0)), 1, 2)
        assert out.amplitude((0, 1, 0)) == 1.0

    def test_dimension_mismatch(self):
        s = basis_state(RegisterLayout((2, 2)), (0, 0))
        with pytest.raises(DomainError):
            addition_query(s, OracleFunction(3, 2, (0, 0, 0)), 0, 1)

    def test_equivalence_on_basis_and_random(self, rng):
        for n, m in [(2, 2), (3, 4), (5, 3)]:
            lay = RegisterLayout((n, m))
            f = OracleFunction.random(n, m, rng)
            states = [basis_state(lay, lay.digits(i)) for i in range(lay.total_dim)]
            states += [random_state(lay, rng) for _ in range(5)]
            for s in states:
                assert_allclose(phase_via_addition(s, f, 0, 1).amps, phase_query(s, f, 0, 1).amps, atol=1e-12)
                assert_allclose(addition_via_phase(s, f, 0, 1).amps, addition_query(s, f, 0, 1).amps, atol=1e-12)

    def test_equivalence_with_reversed_wires(self, rng):
        lay = RegisterLayout((3, 2, 4))
        f = OracleFunction(4, 3, (2, 0, 1, 1))
        s = random_state(lay, rng)
        assert_allclose(phase_via_addition(s, f, 2, 0).amps, phase_query(s, f, 2, 0).amps, atol=1e-12)


class TestRootOfUnitySum:
    @pytest.mark.parametrize("m,c,want", [(2, 1, 0), (3, 3, 3), (4, 2, 0), (6, 12, 6), (1, 5, 1)])
    def test_values(self, m, c, want):
        assert abs(root_of_unity_sum(m, c) - want) <= 1e-12

    def test_rejects_modulus(self):
        with pytest.raises(DomainError):
            root_of_unity_sum(0, 1)


@settings(max_examples=80, deadline=None)
@given(n=st.integers(1, 4), m=st.integers(2, 5), seed=st.integers(0, 2**32 - 1))
def test_addition_is_a_permutation(n, m, seed):
    rng = np.random.default_rng(seed)
    lay = RegisterLayout((n, m))
    f = OracleFunction.random(n, m, rng)
    s = random_state(lay, rng)
    out = addition_query(s, f, 0, 1)
    assert_allclose(np.sort(np.abs(out.amps)), np.sort(np.abs(s.amps)))
    # m additions of f return to the start
    for _ in range(m - 1):
        out = addition_query(out, f, 0, 1)
    assert_allclose(out.amps, s.amps, atol=1e-12)


@settings(max_examples=80, deadline=None)
@given(m=st.integers(1, 40), c=st.integers(-200, 200))
def test_zero_sum_property(m, c):
    s = root_of_unity_sum(m, c)
    assert abs(s - (m if c % m == 0 else 0)) <= 1e-10
