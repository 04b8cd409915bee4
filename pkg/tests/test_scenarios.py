import math

import numpy as np
import pytest

from twistatom.cmstate import KinematicConfig, solve_resonance
from twistatom.errors import DomainError, SelectionError
from twistatom.hydrogenic import BoundOrbital, orbital_energy
from twistatom.matrixel import TransitionChannel
from twistatom.photon import ALPHA, PlaneWavePhoton, TwistedPhoton
from twistatom.scenarios import (ZeemanSetting, baseline_plane_wave,
                                 figure2_run, zeeman_select)

M_HYDROGEN = 1836.15267343


def tuned_config(m_b_target, B, g=1.0, m_gamma=4, theta_k=0.2):
    """Kinematic config whose photon energy sits on the shifted m_b resonance."""
    a = BoundOrbital(1, 1, 0, 0)
    b = BoundOrbital(1, 2, 1, m_b_target)
    omega0 = orbital_energy(b) - orbital_energy(a)
    channel = TransitionChannel(a, b, 1, omega0)

    def build(omega):
        k = omega * ALPHA
        photon = TwistedPhoton(k_z=k * math.cos(theta_k),
                               kappa=k * math.sin(theta_k),
                               m_gamma=m_gamma, helicity=1)
        return KinematicConfig(M_total=M_HYDROGEN, P_a=np.zeros(3),
                               photon=photon, channel=channel)

    cfg = build(omega0)
    shift = g * B * (m_b_target - a.m)
    omega = solve_resonance(cfg, energy_shift=shift)
    return build(omega)


class TestZeeman:
    def test_selects_tuned_sublevel_and_cm_tam(self):
        setting = ZeemanSetting(field_strength=1e-5)
        report = zeeman_select(setting, tuned_config(1, 1e-5), m_gamma=4)
        assert report.selected_m_b == 1
        # CM TAM = m_gamma + m_a - m_b
        assert report.cm_tam == 4 + 0 - 1
        assert set(report.detunings) == {-1, 0}
        for d in report.detunings.values():
            assert abs(d) > setting.linewidth

    def test_each_sublevel_reachable(self):
        for m_b in (-1, 0, 1):
            setting = ZeemanSetting(field_strength=1e-5)
            report = zeeman_select(setting, tuned_config(m_b, 1e-5), m_gamma=2)
            assert report.selected_m_b == m_b
            assert report.cm_tam == 2 - m_b

    def test_zero_field_rejected(self):
        setting = ZeemanSetting(field_strength=0.0)
        with pytest.raises(SelectionError):
            zeeman_select(setting, tuned_config(1, 1e-5), m_gamma=4)

    def test_unresolved_linewidth_rejected(self):
        # splitting smaller than the linewidth: sublevels overlap
        setting = ZeemanSetting(field_strength=1e-12, linewidth=1e-9)
        with pytest.raises(SelectionError):
            zeeman_select(setting, tuned_config(1, 1e-12), m_gamma=4)

    def test_detuned_photon_rejected(self):
        # tune to m_b=1 but shift the field so nothing matches
        cfg = tuned_config(1, 1e-5)
        setting = ZeemanSetting(field_strength=3e-5)
        with pytest.raises(SelectionError):
            zeeman_select(setting, cfg, m_gamma=4)

    def test_setting_validation(self):
        with pytest.raises(DomainError):
            ZeemanSetting(field_strength=-1.0)
        with pytest.raises(DomainError):
            ZeemanSetting(field_strength=1.0, linewidth=0.0)


class TestFigure2Run:
    def test_endpoint_normalization(self):
        out = figure2_run(theta_points=2, theta_max=0.1)
        assert out["m_b"] == [1, 0, -1]
        row0 = out["table"][0]
        assert row0[0] == pytest.approx(1.0, abs=1e-10)
        assert row0[1] < 1e-10 and row0[2] < 1e-10

    def test_dominance_in_small_angle_range(self):
        out = figure2_run(theta_points=30, theta_max=math.pi / 10)
        assert out["dominance_boundary"] is None

    def test_shape_monotonicity(self):
        out = figure2_run(theta_points=25, theta_max=0.3)
        t = out["table"]
        assert np.all(np.diff(t[:, 0]) < 0)     # m_b = +1 falls
        assert np.all(np.diff(t[:, 1]) > 0)     # m_b = 0 grows from 0
        assert np.all(np.diff(t[:, 2]) > 0)     # m_b = -1 grows from 0

    def test_domain(self):
        with pytest.raises(DomainError):
            figure2_run(theta_points=0)
        with pytest.raises(DomainError):
            figure2_run(theta_points=5, theta_max=2.0)


class TestBaseline:
    def test_plane_wave_summary(self):
        a = BoundOrbital(1, 1, 0, 0)
        b = BoundOrbital(1, 2, 1, 1)
        omega0 = 0.375
        photon = PlaneWavePhoton(np.array([0.0, 0.0, omega0 * ALPHA]), 1, omega0)
        cfg = KinematicConfig(M_total=M_HYDROGEN, P_a=np.zeros(3),
                              photon=photon,
                              channel=TransitionChannel(a, b, 1, omega0))
        out = baseline_plane_wave(cfg)
        omega = solve_resonance(cfg)
        assert np.allclose(out["P_b"], [0.0, 0.0, omega * ALPHA], atol=1e-15)
        assert out["amplitude_abs"] > 0.0

    def test_rejects_twisted_photon(self):
        cfg = tuned_config(1, 1e-5)
        with pytest.raises(DomainError):
            baseline_plane_wave(cfg)
