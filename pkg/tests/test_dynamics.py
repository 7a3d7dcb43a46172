
import numpy as np
import pytest

from fracbous.dynamics import (
    PhysParams,
    State,
    advect,
    biot_savart,
    integrate,
    random_state,
    step,
    tendency,
    zero_forcing,
)
from fracbous.errors import BlowUpError, ConfigurationError, DomainError, StabilityError
from fracbous.spectral import (
    SpectralField,
    apply_lambda_power,
    inner,
    make_grid,
    random_field,
    sample,
    single_mode,
    sobolev_norm,
    to_physical,
    to_spectral,
)

TWO_PI = 2 * np.pi


def field(g, func):
    return to_spectral(sample(g, func))


def assert_field_close(a, b, atol=1e-13):
    np.testing.assert_allclose(a.coeffs, b.coeffs, atol=atol)


@pytest.fixture
def g32():
    return make_grid(32, TWO_PI)


@pytest.fixture
def g64():
    return make_grid(64, TWO_PI)


def params(g, coupling=True, forcing=None, nu=0.05, kappa=0.05, alpha=0.75, beta=0.75):
    f = zero_forcing(g) if forcing is None else forcing
    return PhysParams(nu, kappa, alpha, beta, f, coupling_on=coupling)


class TestParams:
    def test_strict_range(self, g32):
        with pytest.raises(ConfigurationError):
            params(g32, alpha=0.4)
        with pytest.raises(ConfigurationError):
            params(g32, beta=1.0)

    def test_relaxed_range_warns(self, g32):
        with pytest.warns(UserWarning):
            PhysParams(0.1, 0.1, 1.0, 1.0, zero_forcing(g32), strict_subcritical=False)
        with pytest.raises(ConfigurationError):
            PhysParams(0.1, 0.1, 1.2, 1.0, zero_forcing(g32), strict_subcritical=False)

    def test_positive_coefficients(self, g32):
        with pytest.raises(ConfigurationError):
            params(g32, nu=0.0)

    def test_forcing_mean_projected(self, g32):
        f = single_mode(g32, (0, 0), 2.0) + single_mode(g32, (1, 1))
        with pytest.warns(UserWarning, match="mean"):
            p = params(g32, forcing=f)
        assert p.forcing.coeffs[0, 0] == 0

    def test_forcing_above_cutoff(self, g32):
        c = np.zeros((32, 32), complex)
        c[12, 0] = c[-12, 0] = 0.5
        with pytest.raises(ConfigurationError):
            params(g32, forcing=SpectralField(g32, c))

    def test_initial_data_above_cutoff(self, g32):
        c = np.zeros((32, 32), complex)
        c[12, 0] = c[-12, 0] = 0.5
        with pytest.raises(ConfigurationError):
            State.from_fields(SpectralField(g32, c), SpectralField.zeros(g32))


class TestBiotSavart:
    def test_zero(self, g32):
        u1, u2 = biot_savart(SpectralField.zeros(g32))
        assert not np.any(u1.coeffs) and not np.any(u2.coeffs)

    def test_cos_x(self, g32):
        u1, u2 = biot_savart(field(g32, lambda x, y: np.cos(x)))
        assert_field_close(u1, SpectralField.zeros(g32))
        assert_field_close(u2, field(g32, lambda x, y: np.sin(x)))

    def test_cos_y(self, g32):
        u1, u2 = biot_savart(field(g32, lambda x, y: np.cos(y)))
        assert_field_close(u1, field(g32, lambda x, y: -np.sin(y)))
        assert_field_close(u2, SpectralField.zeros(g32))

    def test_nonzero_mean(self, g32):
        with pytest.raises(DomainError):
            biot_savart(single_mode(g32, (0, 0), 1.0))

    def test_divergence_free_and_curl(self):
        g = make_grid(32, 3.3)
        om = random_field(g, 11, kmax=10)
        u1, u2 = biot_savart(om)
        m1, m2 = g.wavevector
        div = 1j * m1 * u1.coeffs + 1j * m2 * u2.coeffs
        assert np.max(np.abs(div)) < 1e-12 * np.max(np.abs(om.coeffs))
        curl = 1j * m1 * u2.coeffs - 1j * m2 * u1.coeffs
        np.testing.assert_allclose(curl, om.coeffs, atol=1e-14)
        assert u1.coeffs[0, 0] == 0 and u2.coeffs[0, 0] == 0


class TestAdvect:
    def test_zero_velocity(self, g32):
        z = SpectralField.zeros(g32)
        out = advect(z, z, random_field(g32, 1, 5))
        assert not np.any(out.coeffs)

    def test_constant_scalar(self, g32):
        u1, u2 = biot_savart(random_field(g32, 2, 5))
        out = advect(u1, u2, single_mode(g32, (0, 0), 4.0))
        assert not np.any(out.coeffs)

    def test_symbolic_product(self, g32):
        u1 = SpectralField.zeros(g32)
        u2 = field(g32, lambda x, y: np.sin(x))
        out = advect(u1, u2, field(g32, lambda x, y: np.sin(y)))
        assert_field_close(out, field(g32, lambda x, y: np.sin(x) * np.cos(y)))

    def test_matches_direct_product_when_resolved(self):
        # product of degree-4 fields is exact on a 32 grid (cutoff 10)
        g = make_grid(32, 1.7)
        om, th = random_field(g, 3, 4), random_field(g, 4, 4)
        u1, u2 = biot_savart(om)
        m1, m2 = g.wavevector
        p = lambda c: to_physical(SpectralField(g, c)).values
        direct = p(u1.coeffs) * p(1j * m1 * th.coeffs) + p(u2.coeffs) * p(1j * m2 * th.coeffs)
        got = to_physical(advect(u1, u2, th)).values
        np.testing.assert_allclose(got, direct, atol=1e-12)

    def test_energy_neutral(self):
        g = make_grid(32, TWO_PI)
        om, th = random_field(g, 5, 10), random_field(g, 6, 10)
        u1, u2 = biot_savart(om)
        scale = sobolev_norm(th, 0) * sobolev_norm(th, 1) * sobolev_norm(om, -1)
        assert abs(inner(advect(u1, u2, th), th)) < 1e-13 * scale


class TestTendency:
    def test_zero_state(self, g32):
        dth, dom = tendency(State.zeros(g32), params(g32))
        assert not np.any(dth.coeffs) and not np.any(dom.coeffs)

    def test_linear_decay_rate(self, g32):
        beta, kappa = 0.75, 0.05
        th = field(g32, lambda x, y: np.sin(x + y))
        s = State.from_fields(th, SpectralField.zeros(g32))
        dth, dom = tendency(s, params(g32, coupling=False))
        assert_field_close(dth, s.theta_hat * (-kappa * 2 ** beta))
        assert not np.any(dom.coeffs)

    def test_buoyancy_source(self, g32):
        s = State.from_fields(field(g32, lambda x, y: np.sin(x)), SpectralField.zeros(g32))
        _, dom = tendency(s, params(g32))
        assert_field_close(dom, field(g32, lambda x, y: np.cos(x)))

    def test_vorticity_source_consistency(self, g32):
        # a single vorticity mode has u . grad omega = 0
        th = random_field(g32, 9, 6)
        om = single_mode(g32, (2, 1), 0.3)
        p = params(g32)
        _, dom = tendency(State(th, om), p)
        m1, _ = g32.wavevector
        residual = dom.coeffs - 1j * m1 * th.coeffs + p.nu * apply_lambda_power(om, 2 * p.alpha).coeffs
        assert np.max(np.abs(residual)) < 1e-14

    def test_mean_zero_and_dealiased(self, g32):
        f = random_field(g32, 1, 4, norm=0.3)
        s = random_state(g32, 2, 3.0, 2.0, kmax=8)
        for out in tendency(s, params(g32, forcing=f)):
            assert out.coeffs[0, 0] == 0
            assert out.is_dealiased()
            assert out.hermitian_defect() < 1e-14


class TestStep:
    def test_zero_state(self, g32):
        s = step(State.zeros(g32), params(g32), 1e-2)
        assert s.t == pytest.approx(1e-2)
        assert not np.any(s.theta_hat.coeffs) and not np.any(s.omega_hat.coeffs)

    @pytest.mark.parametrize("dt", [1e-3, 0.1, 3.0])
    def test_linear_exact(self, g32, dt):
        kappa, beta = 0.05, 0.75
        th0 = field(g32, lambda x, y: np.sin(x + y))
        s = State.from_fields(th0, SpectralField.zeros(g32))
        out = step(s, params(g32, coupling=False), dt, cfl=None)
        expected = s.theta_hat * np.exp(-kappa * 2 ** beta * dt)
        assert_field_close(out.theta_hat, expected, atol=1e-16)
        assert not np.any(out.omega_hat.coeffs)

    def test_self_convergence(self, g32):
        f = random_field(g32, 21, 3, norm=0.5)
        p = params(g32, forcing=f)
        s0 = random_state(g32, 22, 2.0, 2.0, kmax=4)
        T, dt = 0.2, 0.02

        def run(h):
            s = integrate(s0, p, T, h)
            return np.concatenate([s.theta_hat.coeffs.ravel(), s.omega_hat.coeffs.ravel()])

        ref = run(dt / 8)
        e1 = np.linalg.norm(run(dt) - ref)
        e2 = np.linalg.norm(run(dt / 2) - ref)
        assert 3.5 <= e1 / e2 <= 4.5

    def test_blow_up(self, g32):
        th = random_field(g32, 1, 3)
        th.coeffs[1, 0] = np.nan
        s = State(th, SpectralField.zeros(g32), 0.7)
        with pytest.raises(BlowUpError) as info:
            step(s, params(g32), 1e-3, cfl=None)
        assert info.value.t == 0.7

    def test_cfl_violation(self, g32):
        s = random_state(g32, 1, 1.0, 200.0)
        with pytest.raises(StabilityError) as info:
            step(s, params(g32), 0.05)
        assert info.value.state is s


class TestIntegrate:
    def test_zero_span(self, g32):
        rows = []
        s0 = random_state(g32, 1, 1.0, 1.0)
        out = integrate(s0, params(g32), 0.0, 1e-2, 1, rows.append)
        assert out is s0 and len(rows) == 1

    def test_linear_decay(self, g64):
        kappa, beta = 0.05, 0.75
        s0 = State.from_fields(field(g64, lambda x, y: np.sin(x + y)), SpectralField.zeros(g64))
        rows = []
        out = integrate(s0, params(g64, coupling=False), 1.0, 1e-3, 100, rows.append)
        expected = np.exp(-kappa * 2 ** beta) * sobolev_norm(s0.theta_hat, 0)
        assert abs(sobolev_norm(out.theta_hat, 0) - expected) < 1e-10 * expected
        assert out.t == 1.0
        assert [r.t for r in rows][:3] == pytest.approx([0.0, 0.1, 0.2])
        assert rows[-1].t == 1.0 and len(rows) == 11

    def test_partial_final_step(self, g32):
        rows = []
        out = integrate(State.zeros(g32), params(g32), 0.105, 0.01, 5, rows.append)
        assert out.t == 0.105
        assert [r.t for r in rows] == pytest.approx([0.0, 0.05, 0.1, 0.105])

    def test_blow_up_keeps_last_good_state(self, g32):
        s0 = random_state(g32, 1, 1.0, 1.0)
        with pytest.raises(StabilityError) as info:
            integrate(s0, params(g32), 1.0, 0.5)
        assert info.value.state.t == 0.0

    def test_mean_zero_and_monotone_without_forcing(self, g64):
        s0 = random_state(g64, 5, 5.0, 5.0, kmax=6)
        rows = []
        out = integrate(s0, params(g64), 1.0, 1e-3, 1, rows.append)
        assert out.theta_hat.coeffs[0, 0] == 0 and out.omega_hat.coeffs[0, 0] == 0
        out.check_invariants()
        th = np.array([r.l2_theta for r in rows])
        assert np.all(np.diff(th) <= 1e-10 * th[:-1])

    def test_enstrophy_monotone_uncoupled(self, g64):
        s0 = random_state(g64, 6, 5.0, 5.0, kmax=6)
        rows = []
        integrate(s0, params(g64, coupling=False), 1.0, 1e-3, 1, rows.append)
        om = np.array([r.l2_omega for r in rows])
        assert np.all(np.diff(om) <= 1e-10 * om[:-1])

    def test_energy_balance(self, g64):
        kappa = 0.05
        f = random_field(g64, 8, 4, norm=0.5)
        s0 = random_state(g64, 9, 3.0, 3.0, kmax=4)
        rows = []
        integrate(s0, params(g64, forcing=f), 0.5, 1e-3, 1, rows.append)
        for a, b in zip(rows[:-1], rows[1:]):
            h = b.t - a.t
            d = b.l2_theta ** 2 - a.l2_theta ** 2
            diss = kappa * h * (a.diss_beta + b.diss_beta)
            src = h * (a.f_inner_theta + b.f_inner_theta)
            assert abs(d + diss - src) <= 1e-6 * (abs(d) + diss + abs(src))

    def test_deterministic(self, g32):
        f = random_field(g32, 1, 3, norm=0.2)
        s0 = random_state(g32, 2, 2.0, 2.0)
        a = integrate(s0, params(g32, forcing=f), 0.5, 1e-2)
        b = integrate(s0, params(g32, forcing=f), 0.5, 1e-2)
        assert np.array_equal(a.theta_hat.coeffs, b.theta_hat.coeffs)
        assert np.array_equal(a.omega_hat.coeffs, b.omega_hat.coeffs)
