import mpmath as mp
from mpmath import mpc, mpf

import pytest

from fig8jones.colored_jones import (
    alexander,
    habiro_bits,
    jones_habiro,
    small_xi_limit_check,
)
from fig8jones.errors import DomainError
from fig8jones.precision import PrecisionContext
from fig8jones.special_functions import S_value

from conftest import at, dist


def brute_force_sum(N, xi, bits=300):
    # independent oracle: evaluate the cyclotomic sum term by term with
    # fresh integer powers, no incremental product reuse
    with at(bits):
        x = mpf(xi)
        q = mp.exp(x / N)
        total = mpf(0)
        for k in range(N):
            p = mpf(1)
            for l in range(1, k + 1):
                p *= (1 - q ** (N - l)) * (1 - q ** (N + l))
            total += q ** (-k * N) * p
        return total


class TestJonesHabiro:
    @pytest.mark.parametrize("N", [2, 5, 17])
    def test_trivial_at_xi_zero(self, ctx128, N):
        assert jones_habiro(N, 0, ctx128).value == 1

    @pytest.mark.parametrize("N", [2, 3, 7, 12])
    @pytest.mark.parametrize("xi", ["0.5", "1.5", "-1.2"])
    def test_against_brute_force(self, ctx128, N, xi):
        with at(320):
            x = mpf(xi)
        got = jones_habiro(N, x, ctx128).value
        want = brute_force_sum(N, x)
        assert dist(got, want) < mpf("1e-33") * abs(want)

    def test_two_colors_is_jones_polynomial(self, ctx128):
        # 1 + q^{-2}(1-q)(1-q^3) = q^{-2} - q^{-1} + 1 - q + q^2
        with at(300):
            for xi in (mpf("0.3"), mpf("1.7"), mpf("-2.4")):
                q = mp.exp(xi / 2)
                want = q**-2 - 1 / q + 1 - q + q**2
                got = jones_habiro(2, xi, ctx128).value
                assert dist(got, want) < mpf("1e-33") * want

    @pytest.mark.parametrize("N", [3, 20, 101])
    @pytest.mark.parametrize("xi", ["0.4", "1.3", "2.5"])
    def test_amphicheiral_symmetry(self, ctx128, N, xi):
        a = jones_habiro(N, mpf(xi), ctx128).value
        b = jones_habiro(N, -mpf(xi), ctx128).value
        assert dist(a, b) <= ctx128.tolerance() * abs(a)

    @pytest.mark.parametrize("N", [2, 25, 200])
    @pytest.mark.parametrize("xi", ["0.5", "-0.8", "1.5", "3.0"])
    def test_positivity_of_partial_sums(self, N, xi):
        # every partial sum of the defining series is positive at real q
        with at(320):
            x = mpf(xi)
            q = mp.exp(x / N)
            qinv = 1 / q
            u = v = q**N
            term = mpf(1)
            partial = mpf(1)
            for _ in range(1, N):
                u *= qinv
                v *= q
                term *= q ** (-N) * (1 - u) * (1 - v)
                partial += term
                assert term > 0
                assert partial > 0

    def test_growth_approaches_rate(self, ctx128):
        # |log(J_N)/N - S/xi| shrinks monotonically over doubling N
        xi = mpf("1.5")
        with at(300):
            rate = S_value(xi, ctx128).real / xi
            gaps = []
            for N in (50, 100, 200, 400):
                je = jones_habiro(N, xi, ctx128)
                gaps.append(abs(mp.log(je.value) / N - rate))
        assert all(a > b for a, b in zip(gaps, gaps[1:]))

    def test_policy_scales_with_N(self, ctx128):
        small = habiro_bits(10, "1.5", ctx128)
        large = habiro_bits(400, "1.5", ctx128)
        assert large > small >= 128
        # magnitude at N=400, xi=1.5 is ~ e^242, so the policy must cover it
        assert large > 242 / 0.694

    def test_N_floor(self, ctx128):
        with pytest.raises(DomainError):
            jones_habiro(1, "1.0", ctx128)

    def test_bits_used_recorded(self, ctx128):
        je = jones_habiro(50, "2.0", ctx128)
        assert je.bits_used == habiro_bits(50, "2.0", ctx128)
        assert je.value > 0


class TestAlexander:
    def test_at_one(self, ctx128):
        assert alexander(1, ctx128) == 1

    def test_at_exp_half(self, ctx128):
        with at(300):
            want = 3 - 2 * mp.cosh(mpf("0.5"))
            got = alexander(mp.exp(mpf("0.5")), ctx128)
        assert dist(got, want) < mpf("1e-35")

    @pytest.mark.parametrize("xi", ["0.5", "2.2", "-0.9"])
    def test_symmetry(self, ctx128, xi):
        with at(300):
            a = alexander(mp.exp(mpf(xi)), ctx128)
            b = alexander(mp.exp(-mpf(xi)), ctx128)
        assert dist(a, b) < mpf("1e-36")

    def test_zero_rejected(self, ctx128):
        with pytest.raises(DomainError):
            alexander(0, ctx128)


class TestSmallXiLimit:
    def test_distance_shrinks(self, ctx128):
        rep = small_xi_limit_check(mpf("0.5"), [50, 200, 800], ctx128)
        assert rep.converging
        ds = [r.distance for r in rep.records]
        assert ds[0] > ds[1] > ds[2]
        # limit is 1/(3 - 2cosh(1/2)) = 1.3427...
        assert abs(rep.limit - mpf("1.3427")) < mpf("1e-4")

    def test_trivial_at_zero(self, ctx128):
        rep = small_xi_limit_check(0, [2, 5], ctx128)
        assert all(r.distance == 0 for r in rep.records)

    def test_window_enforced(self, ctx128):
        # 2cosh(1.2) - 2 = 1.624... > 1
        with pytest.raises(DomainError):
            small_xi_limit_check(mpf("1.2"), [10, 20], ctx128)
