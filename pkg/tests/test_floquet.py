import cmath
import math

import numpy as np
import pytest

from floquet_ep.floquet import (
    FloquetParams,
    PhaseKind,
    classify_phase,
    discriminant,
    dp_proximity,
    eigenvector_overlap,
    ep_contour_gamma,
    ep_gamma_high_frequency,
    ep_node_asymptote,
    ep_slope_approx,
    floquet_eigenvalues,
    floquet_hamiltonian,
    floquet_hamiltonian_on_contour,
    floquet_operator,
    propagator_thermal,
    propagator_thermal_profile,
    propagator_unitary,
    propagator_unitary_profile,
)
from floquet_ep.linalg import (
    IDENTITY_2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    NearDefectiveError,
    eig,
    expm,
    is_unitary,
)

SYMMETRIC = FloquetParams.from_dimensionless(1.0, 2.5 * math.pi)
BROKEN = FloquetParams.from_dimensionless(1.25, 2.5 * math.pi)


def contour_params(p=0.5, T=1.0, j_av=1.7330, branch=1) -> FloquetParams:
    base = FloquetParams(p=p, T=T, j_av=j_av, gamma_av=0.0)
    gamma = ep_contour_gamma(base, branch=branch)
    assert gamma is not None
    return base.with_gamma(gamma)


class TestParams:
    def test_segment_durations_sum_to_period(self):
        params = FloquetParams(p=0.3, T=2.5, j_av=1.0, gamma_av=0.2)
        assert params.tau + params.beta == pytest.approx(2.5, abs=1e-15)

    def test_dimensionless_roundtrip(self):
        params = FloquetParams.from_dimensionless(1.25, 2.5 * math.pi, p=0.4, j_av=1.3)
        assert params.gamma_ratio == pytest.approx(1.25, rel=1e-12)
        assert params.omega_ratio == pytest.approx(2.5 * math.pi, rel=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            FloquetParams(p=1.5, T=1.0, j_av=1.0, gamma_av=0.0)
        with pytest.raises(ValueError):
            FloquetParams(p=0.5, T=0.0, j_av=1.0, gamma_av=0.0)
        with pytest.raises(ValueError):
            FloquetParams(p=0.5, T=1.0, j_av=-1.0, gamma_av=0.0)

    def test_degenerate_fractions_admitted(self):
        FloquetParams(p=0.0, T=1.0, j_av=1.0, gamma_av=0.5)
        FloquetParams(p=1.0, T=1.0, j_av=1.0, gamma_av=0.5)


class TestSegmentPropagators:
    def test_unitary_trivial_area(self):
        params = FloquetParams(p=0.5, T=1.0, j_av=0.0, gamma_av=0.3)
        assert np.abs(propagator_unitary(params) - IDENTITY_2).max() < 1e-15

    def test_unitary_full_resonance_is_minus_identity(self):
        # drive area pi: the unitary segment reduces to a sign
        params = FloquetParams(p=0.5, T=2.0, j_av=math.pi, gamma_av=0.0)
        assert np.abs(propagator_unitary(params) + IDENTITY_2).max() < 1e-12

    def test_unitary_quarter_rotation(self):
        params = FloquetParams(p=0.5, T=1.0, j_av=math.pi, gamma_av=0.0)
        assert np.abs(propagator_unitary(params) - (-1j * PAULI_X)).max() < 1e-12

    def test_unitary_is_unitary(self):
        params = FloquetParams(p=0.37, T=1.7, j_av=1.9, gamma_av=0.0)
        assert is_unitary(propagator_unitary(params), tol=1e-12)

    def test_thermal_trivial(self):
        params = FloquetParams(p=0.5, T=1.0, j_av=1.0, gamma_av=0.0)
        assert np.abs(propagator_thermal(params) - IDENTITY_2).max() < 1e-15

    def test_thermal_diagonal_exponential(self):
        params = FloquetParams(p=0.5, T=1.0, j_av=1.0, gamma_av=1.0)  # gain area 0.5
        expected = np.diag([math.exp(0.5), math.exp(-0.5)])
        assert np.abs(propagator_thermal(params) - expected).max() < 1e-15

    def test_thermal_unit_determinant(self):
        params = FloquetParams(p=0.2, T=3.0, j_av=0.7, gamma_av=0.9)
        assert abs(np.linalg.det(propagator_thermal(params)) - 1) < 1e-12


class TestFloquetOperator:
    def test_unitary_limit_eigenvalues(self):
        params = FloquetParams(p=0.5, T=1.3, j_av=0.9, gamma_av=0.0)
        lam_p, lam_m = floquet_eigenvalues(params)
        a = params.drive_area
        got = sorted((lam_p, lam_m), key=lambda z: z.imag)
        expected = sorted((cmath.exp(-1j * a), cmath.exp(1j * a)), key=lambda z: z.imag)
        assert abs(got[0] - expected[0]) < 1e-12 and abs(got[1] - expected[1]) < 1e-12

    def test_pure_unitary_fraction(self):
        params = FloquetParams(p=1.0, T=1.3, j_av=0.9, gamma_av=2.0)
        gf, _ = floquet_operator(params)
        assert np.abs(gf - propagator_unitary(params)).max() < 1e-15

    def test_vector_norm_closed_form(self):
        params = FloquetParams(p=0.5, T=1.0, j_av=math.pi / 2, gamma_av=0.6)
        _, dec = floquet_operator(params)
        expected = 1j * cmath.sqrt(
            1 - math.cosh(params.gain_area) ** 2 * math.cos(params.drive_area) ** 2
        )
        assert abs(dec.vector_norm - expected) < 1e-12

    def test_eigenvalues_match_dense_eig(self):
        rng = np.random.default_rng(10)
        for _ in range(300):
            params = FloquetParams(
                p=rng.uniform(0.05, 0.95),
                T=rng.uniform(0.1, 4.0),
                j_av=rng.uniform(0.05, 2.0),
                gamma_av=rng.uniform(0.0, 1.5),
            )
            gf, _ = floquet_operator(params)
            lam = floquet_eigenvalues(params)
            mu = [pair[0] for pair in eig(gf)]
            err = min(
                max(abs(lam[0] - mu[0]), abs(lam[1] - mu[1])),
                max(abs(lam[0] - mu[1]), abs(lam[1] - mu[0])),
            )
            assert err < 1e-10

    def test_eigenvalue_product_is_unit_determinant(self):
        lam_p, lam_m = floquet_eigenvalues(BROKEN)
        assert abs(lam_p * lam_m - 1) < 1e-12

    def test_coalescence_on_contour(self):
        params = contour_params()
        lam_p, lam_m = floquet_eigenvalues(params)
        assert abs(lam_p - lam_m) < 1e-8
        assert abs(abs(lam_p) - 1) < 1e-8

    def test_deep_broken_ratio_grows_like_squared_thermal_weight(self):
        # |lam_+/lam_-| approaches exp(2 * gain area) up to an O(1) drive factor
        params = FloquetParams(p=0.3, T=2.0, j_av=0.8, gamma_av=6.0 / ((1 - 0.3) * 2.0))
        lam_p, lam_m = floquet_eigenvalues(params)
        log_ratio = math.log(abs(lam_p / lam_m))
        assert log_ratio == pytest.approx(2 * params.gain_area, rel=0.05)


class TestPhase:
    def test_unitary_point_is_symmetric(self):
        params = FloquetParams(p=0.5, T=1.1, j_av=0.83, gamma_av=0.0)
        assert classify_phase(params).kind is PhaseKind.PT_SYMMETRIC

    def test_reference_points(self):
        assert classify_phase(SYMMETRIC).kind is PhaseKind.PT_SYMMETRIC
        assert classify_phase(BROKEN).kind is PhaseKind.PT_BROKEN

    def test_contour_point_is_exceptional(self):
        label = classify_phase(contour_params())
        assert label.kind is PhaseKind.EXCEPTIONAL_POINT
        assert abs(label.discriminant) < 1e-10

    def test_symmetric_phase_has_equal_magnitudes(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            params = FloquetParams(
                p=rng.uniform(0.1, 0.9),
                T=rng.uniform(0.2, 3.0),
                j_av=rng.uniform(0.1, 2.0),
                gamma_av=rng.uniform(0.0, 1.0),
            )
            lam_p, lam_m = floquet_eigenvalues(params)
            kind = classify_phase(params, tol=1e-9).kind
            if kind is PhaseKind.PT_SYMMETRIC:
                assert abs(abs(lam_p) - abs(lam_m)) < 1e-9
            elif kind is PhaseKind.PT_BROKEN:
                assert abs(abs(lam_p) - abs(lam_m)) > 1e-9


class TestEigenvectorOverlap:
    def test_unitary_limit_orthogonal(self):
        params = FloquetParams(p=0.5, T=1.1, j_av=0.83, gamma_av=0.0)
        assert eigenvector_overlap(params) == 0.0

    def test_resonance_orthogonal_despite_gain(self):
        params = FloquetParams(p=0.5, T=2.0, j_av=math.pi, gamma_av=0.7)
        assert eigenvector_overlap(params) == 0.0

    def test_contour_coalescence(self):
        assert eigenvector_overlap(contour_params()) == pytest.approx(1.0, abs=1e-8)

    def test_strictly_below_one_off_contour(self):
        rng = np.random.default_rng(19)
        for _ in range(300):
            params = FloquetParams(
                p=rng.uniform(0.1, 0.9),
                T=rng.uniform(0.2, 3.0),
                j_av=rng.uniform(0.1, 2.0),
                gamma_av=rng.uniform(0.0, 1.5),
            )
            if abs(discriminant(params)) > 1e-6:
                assert eigenvector_overlap(params) < 1.0

    def test_matches_direct_eigenvector_inner_product(self):
        rng = np.random.default_rng(12)
        for _ in range(300):
            params = FloquetParams(
                p=rng.uniform(0.1, 0.9),
                T=rng.uniform(0.2, 3.0),
                j_av=rng.uniform(0.1, 2.0),
                gamma_av=rng.uniform(0.01, 1.5),
            )
            formula = eigenvector_overlap(params)
            if formula > 1 - 1e-4:
                continue  # eigensolver conditioning degrades right at coalescence
            gf, _ = floquet_operator(params)
            (l1, v1), (l2, v2) = eig(gf)
            assert formula == pytest.approx(abs(np.vdot(v1, v2)), abs=1e-8)

    def test_spec_point_against_direct_product(self):
        params = FloquetParams(p=0.5, T=1.0, j_av=math.pi / 2, gamma_av=0.6)
        gf, _ = floquet_operator(params)
        (l1, v1), (l2, v2) = eig(gf)
        assert eigenvector_overlap(params) == pytest.approx(abs(np.vdot(v1, v2)), abs=1e-8)


class TestContourInversion:
    def test_even_resonance_terminates_at_zero_gain(self):
        # drive area exactly 2*pi: cosine is 1 and the contour touches gamma = 0
        params = FloquetParams(p=0.5, T=1.0, j_av=4 * math.pi, gamma_av=0.0)
        gamma = ep_contour_gamma(params, branch=1)
        assert gamma == pytest.approx(0.0, abs=1e-7)

    def test_no_solution_returns_none(self):
        params = FloquetParams(p=0.5, T=1.0, j_av=4.0, gamma_av=0.0)  # cos(2) < 0
        assert ep_contour_gamma(params, branch=1) is None
        assert ep_contour_gamma(params, branch=-1) is not None

    def test_returned_point_sits_on_contour(self):
        rng = np.random.default_rng(13)
        found = 0
        while found < 100:
            params = FloquetParams(
                p=rng.uniform(0.2, 0.8),
                T=rng.uniform(0.3, 3.0),
                j_av=rng.uniform(0.2, 2.0),
                gamma_av=0.0,
            )
            for branch in (1, -1):
                gamma = ep_contour_gamma(params, branch)
                if gamma is None:
                    continue
                assert abs(discriminant(params.with_gamma(gamma))) < 1e-10
                found += 1

    def test_high_frequency_limit(self):
        p, j_av = 0.5, 1.0
        params = FloquetParams.from_omega(p, 1e3 * p * j_av, j_av, 0.0)
        gamma = ep_contour_gamma(params, branch=1)
        assert gamma == pytest.approx(ep_gamma_high_frequency(p, j_av), rel=1e-3)

    def test_invalid_branch(self):
        with pytest.raises(ValueError):
            ep_contour_gamma(SYMMETRIC, branch=2)


class TestSlopeApprox:
    def test_zero_detuning(self):
        assert ep_slope_approx(1, 0.5, 0.0) == 0.0

    def test_direct_formula(self):
        assert ep_slope_approx(1, 0.5, 0.01) == pytest.approx(0.01, rel=1e-14)

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_matches_finite_difference_of_exact_contour(self, k):
        p, j_av = 0.5, 1.0
        omega_k = 2 * p * j_av / k
        dw = 1e-4 * p * j_av
        params = FloquetParams.from_omega(p, omega_k + dw, j_av, 0.0)
        gamma = ep_contour_gamma(params, branch=(-1) ** k)
        fd_slope = gamma / dw
        assert fd_slope == pytest.approx(k / (2 * (1 - p)), rel=0.01)


class TestNodeAsymptote:
    def test_zero_at_unit_log_argument(self):
        p, j_av = 0.5, 1.0
        assert ep_node_asymptote(0, p, j_av, p * j_av / math.pi) == pytest.approx(0.0, abs=1e-15)

    def test_monotone_divergence(self):
        vals = [ep_node_asymptote(0, 0.5, 1.0, dw) for dw in (1e-2, 1e-4, 1e-8)]
        assert vals[0] < vals[1] < vals[2]

    def test_rejects_nonpositive_detuning(self):
        with pytest.raises(ValueError):
            ep_node_asymptote(0, 0.5, 1.0, 0.0)

    def test_tracks_exact_contour_at_large_gain_k1(self):
        # the log-divergence rate matches; agreement tightens only
        # logarithmically, so probe the second node deep in the divergence
        p, j_av = 0.5, 1.0
        k = 1
        node = 2 * p * j_av / (k + 0.5)
        for dw in (1e-8, 1e-10):
            params = FloquetParams.from_omega(p, node - dw, j_av, 0.0)
            exact = ep_contour_gamma(params, branch=1) or ep_contour_gamma(params, branch=-1)
            assert (1 - p) * exact / (p * j_av) > 3
            assert ep_node_asymptote(k, p, j_av, dw) == pytest.approx(exact, rel=0.05)


class TestEffectiveGenerator:
    def test_unitary_limit_is_drive_along_x(self):
        params = FloquetParams(p=0.5, T=1.0, j_av=0.9, gamma_av=0.0)
        ham = floquet_hamiltonian(params)
        assert abs(ham.hx - params.p * params.j_av) < 1e-12
        assert abs(ham.hy) < 1e-12 and abs(ham.hz) < 1e-12

    def test_pure_unitary_fraction_edge(self):
        params = FloquetParams(p=1.0, T=1.0, j_av=0.9, gamma_av=1.3)
        ham = floquet_hamiltonian(params)
        assert abs(ham.hx - params.j_av) < 1e-12
        assert abs(ham.hy) < 1e-12 and abs(ham.hz) < 1e-12

    def test_reconstruction(self):
        ham = floquet_hamiltonian(SYMMETRIC)
        gf, _ = floquet_operator(SYMMETRIC)
        assert np.abs(expm(-1j * SYMMETRIC.T * ham.decomposition.reconstruct()) - gf).max() < 1e-10

    def test_scalar_part_is_half_integer_phase(self):
        rng = np.random.default_rng(14)
        done = 0
        while done < 100:
            params = FloquetParams(
                p=rng.uniform(0.1, 0.9),
                T=rng.uniform(0.2, 3.0),
                j_av=rng.uniform(0.1, 2.0),
                gamma_av=rng.uniform(0.0, 1.2),
            )
            try:
                ham = floquet_hamiltonian(params)
            except NearDefectiveError:
                continue
            phase = cmath.exp(-1j * ham.h0 * params.T)
            assert min(abs(phase - 1), abs(phase + 1)) < 1e-9
            done += 1

    def test_implicit_component_relations(self):
        # the components obey tan/tanh ratio constraints tied to the segment areas
        rng = np.random.default_rng(15)
        done = 0
        while done < 100:
            params = FloquetParams(
                p=rng.uniform(0.1, 0.9),
                T=rng.uniform(0.2, 2.5),
                j_av=rng.uniform(0.1, 1.8),
                gamma_av=rng.uniform(0.05, 1.2),
            )
            if abs(math.sin(params.drive_area)) < 1e-3:
                continue
            try:
                ham = floquet_hamiltonian(params)
            except NearDefectiveError:
                continue
            norm = ham.decomposition.vector_norm
            if abs(norm) < 1e-3:
                continue
            tan_norm = cmath.tan(norm * params.T)
            if abs(tan_norm) < 1e-6:
                continue
            a = params.drive_area
            g = params.gain_area
            assert ham.hx / norm == pytest.approx(math.tan(a) / tan_norm, abs=1e-8)
            assert ham.hz / norm == pytest.approx(1j * math.tanh(g) / tan_norm, abs=1e-8)
            assert ham.hy / norm == pytest.approx(1j * math.tan(a) * math.tanh(g) / tan_norm, abs=1e-8)
            done += 1

    def test_asymmetric_to_gainloss_ratio(self):
        # |hy/hz| = |tan(drive area)|: asymmetric-tunneling term dominates at the nodes
        params = FloquetParams.from_dimensionless(0.8, 2 / 0.45)  # drive area 0.45*pi
        ham = floquet_hamiltonian(params)
        assert abs(ham.hy / ham.hz) == pytest.approx(abs(math.tan(params.drive_area)), rel=1e-9)

    def test_antilinear_component_structure(self):
        rng = np.random.default_rng(16)
        done = 0
        while done < 1000:
            params = FloquetParams(
                p=rng.uniform(0.05, 0.95),
                T=rng.uniform(0.2, 3.0),
                j_av=rng.uniform(0.05, 2.0),
                gamma_av=rng.uniform(0.0, 1.5),
            )
            try:
                ham = floquet_hamiltonian(params)
            except NearDefectiveError:
                continue
            for comp in (ham.hx, ham.hy, ham.hz):
                mag = abs(comp)
                if mag > 1e-12:
                    assert min(abs(comp.real), abs(comp.imag)) < 1e-9 * mag
            assert abs(ham.decomposition.norm_sq.imag) < 1e-9 * max(1.0, abs(ham.decomposition.norm_sq))
            done += 1

    def test_near_contour_raises_near_defective(self):
        params = contour_params()
        with pytest.raises(NearDefectiveError):
            floquet_hamiltonian(params)


class TestOnContourGenerator:
    def test_trivial_at_gainless_endpoint(self):
        # at an exact resonance with zero gain the map is +-identity
        params = FloquetParams(p=0.5, T=1.0, j_av=2 * math.pi, gamma_av=0.0)
        ham = floquet_hamiltonian_on_contour(params)
        assert abs(ham.hx) < 1e-12 and abs(ham.hy) < 1e-12 and abs(ham.hz) < 1e-12

    def test_reconstruction_first_order(self):
        for branch, j_av in ((1, 1.7330), (-1, 4.0)):
            params = contour_params(j_av=j_av, branch=branch)
            ham = floquet_hamiltonian_on_contour(params)
            assert ham.on_contour
            gf, dec = floquet_operator(params)
            sign = 1.0 if dec.scalar.real > 0 else -1.0
            hvec = ham.hx * PAULI_X + ham.hy * PAULI_Y + ham.hz * PAULI_Z
            rec = sign * (np.array(IDENTITY_2) - 1j * params.T * hvec)
            assert np.abs(rec - gf).max() < 1e-8

    def test_component_parity_in_gain(self):
        params = contour_params()
        flipped = params.with_gamma(-params.gamma_av)
        ham = floquet_hamiltonian_on_contour(params)
        ham_f = floquet_hamiltonian_on_contour(flipped)
        assert ham_f.hx == ham.hx          # even: set by the drive alone
        assert ham_f.hy == -ham.hy         # odd
        assert ham_f.hz == -ham.hz         # odd

    def test_off_contour_call_rejected(self):
        with pytest.raises(ValueError):
            floquet_hamiltonian_on_contour(SYMMETRIC)

    def test_norm_growth_quadratic_on_contour(self):
        params = contour_params(T=2 * math.pi / 1.9, j_av=1.0, branch=-1)
        gf, _ = floquet_operator(params)
        rng = np.random.default_rng(17)
        psi = rng.normal(size=2) + 1j * rng.normal(size=2)
        psi /= np.linalg.norm(psi)
        ns, norms = [], []
        cur = psi
        for n in range(1, 101):
            cur = gf @ cur
            if n >= 10:
                ns.append(n)
                norms.append(np.linalg.norm(cur) ** 2)
        slope = np.polyfit(np.log(ns), np.log(norms), 1)[0]
        assert slope == pytest.approx(2.0, abs=0.05)


class TestDpProximity:
    def test_unitary_limit(self):
        params = FloquetParams(p=0.5, T=1.0, j_av=1.1, gamma_av=0.0)
        lp, lm = dp_proximity(params)
        assert lp == pytest.approx(1.0, abs=1e-12)
        assert lm == pytest.approx(1.0, abs=1e-12)

    def test_direct_formula(self):
        params = FloquetParams(p=0.5, T=1.0, j_av=1.1, gamma_av=1.0)  # gain area 0.5
        lp, lm = dp_proximity(params)
        assert lp == pytest.approx(math.e, rel=1e-12)
        assert lm == pytest.approx(1 / math.e, rel=1e-12)

    def test_product_is_one(self):
        rng = np.random.default_rng(18)
        for _ in range(200):
            params = FloquetParams(
                p=rng.uniform(0.05, 0.95),
                T=rng.uniform(0.1, 4.0),
                j_av=rng.uniform(0.05, 2.0),
                gamma_av=rng.uniform(0.0, 1.5),
            )
            lp, lm = dp_proximity(params)
            assert lp * lm == pytest.approx(1.0, abs=1e-12)


class TestAverageOnlyDependence:
    def test_two_level_drive_profile(self):
        params = FloquetParams(p=0.5, T=1.6, j_av=1.0, gamma_av=0.8)
        tau = params.tau

        def j_profile(t):
            return 1.5 * params.j_av if t < tau / 2 else 0.5 * params.j_av

        got = propagator_unitary_profile(j_profile, tau, n_steps=1024)
        assert np.abs(got - propagator_unitary(params)).max() < 1e-9

    def test_two_level_gain_profile(self):
        params = FloquetParams(p=0.5, T=1.6, j_av=1.0, gamma_av=0.8)
        beta = params.beta

        def g_profile(t):
            return 0.2 * params.gamma_av if t < beta / 2 else 1.8 * params.gamma_av

        got = propagator_thermal_profile(g_profile, beta, n_steps=1024)
        assert np.abs(got - propagator_thermal(params)).max() < 1e-9
