"""Experiment-level compositions: Zeeman channel selection, the opening-angle
amplitude sweep, and the plane-wave baseline."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, SelectionError
from .hydrogenic import BoundOrbital, orbital_energy
from .matrixel import (TransitionChannel, normalized_amplitude_sweep,
                       plane_wave_matrix_element, rotated_amplitude)
from .photon import PlaneWavePhoton
from .cmstate import KinematicConfig, solve_resonance, synthesize_cm_state


@dataclass(frozen=True)
class ZeemanSetting:
    """Linear Zeeman model: sublevel m shifts by g_factor * B * m."""
    field_strength: float
    g_factor: float = 1.0
    linewidth: float = 1e-9

    def __post_init__(self):
        if self.field_strength < 0:
            raise DomainError("field strength must be >= 0")
        if self.linewidth <= 0:
            raise DomainError("linewidth must be positive")


@dataclass(frozen=True)
class ZeemanReport:
    selected_m_b: int
    cm_tam: int
    photon_omega: float
    detunings: dict  # suppressed m_b -> detuning in Hartree


def zeeman_select(setting: ZeemanSetting, config: KinematicConfig,
                  m_gamma: int) -> ZeemanReport:
    """Pick the unique Zeeman sublevel resonant with the photon energy.

    The photon energy comes from config.photon; each m_b sublevel is shifted
    linearly and its recoil-corrected resonance compared against it.
    """
    ch = config.channel
    split = setting.g_factor * setting.field_strength
    if split <= setting.linewidth:
        raise SelectionError(
            "Zeeman splitting does not resolve the sublevels "
            f"(g*B = {split:g} <= linewidth = {setting.linewidth:g})")
    omega_photon = config.photon.omega
    m_a = ch.orbital_a.m
    resonances = {}
    for m_b in range(-ch.orbital_b.l, ch.orbital_b.l + 1):
        shift = split * (m_b - m_a)
        resonances[m_b] = solve_resonance(config, energy_shift=shift)
    hits = [m_b for m_b, w in resonances.items()
            if abs(w - omega_photon) < setting.linewidth]
    if len(hits) == 0:
        raise SelectionError("no sublevel lies within the linewidth of the photon")
    if len(hits) > 1:
        raise SelectionError(f"multiple sublevels within the linewidth: {hits}")
    m_b = hits[0]
    detunings = {mb: w - omega_photon for mb, w in resonances.items() if mb != m_b}
    return ZeemanReport(selected_m_b=m_b, cm_tam=m_gamma + m_a - m_b,
                        photon_omega=omega_photon, detunings=detunings)


def figure2_run(theta_points: int, theta_max: float = 1.4, Z: int = 1,
                helicity: int = 1, omega: float | None = None) -> dict:
    """Normalized 1s -> 2p amplitudes versus opening angle.

    Returns the theta grid, the (n, 3) magnitude table for m_b = (1, 0, -1),
    and the first grid angle at which the m_b = 1 channel stops being
    strictly dominant (None if it dominates everywhere).
    """
    if not 0.0 <= theta_max < math.pi / 2:
        raise DomainError("theta_max must lie in [0, pi/2)")
    if theta_points < 1:
        raise DomainError("need at least one theta point")
    orb_a = BoundOrbital(Z, 1, 0, 0)
    orb_b = BoundOrbital(Z, 2, 1, 1)
    if omega is None:
        omega = orbital_energy(orb_b) - orbital_energy(orb_a)
    channel = TransitionChannel(orb_a, orb_b, helicity, omega)
    theta = np.linspace(0.0, theta_max, theta_points)
    table = normalized_amplitude_sweep(channel, 0, [1, 0, -1], theta)
    boundary = None
    for th, row in zip(theta[1:], table[1:]):
        if not (row[0] > row[1] and row[0] > row[2]):
            boundary = float(th)
            break
    return {"theta": theta, "table": table, "m_b": [1, 0, -1],
            "dominance_boundary": boundary}


def baseline_plane_wave(config: KinematicConfig) -> dict:
    """Null-twist control: final momentum, energy and amplitude for a
    plane-wave photon."""
    if not isinstance(config.photon, PlaneWavePhoton):
        raise DomainError("baseline requires a plane-wave photon config")
    state = synthesize_cm_state(config)
    return {
        "P_b": state.momentum,
        "E_b": state.E_b,
        "amplitude": state.amplitude_scale,
        "amplitude_abs": abs(state.amplitude_scale),
    }
