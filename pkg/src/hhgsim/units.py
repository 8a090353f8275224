"""Unit conversions between atomic units and the SI/lab units used at module
boundaries.

Internal convention: the single-atom response works in Hartree atomic units
(hbar = m_e = e = 1).  Lab-facing quantities are wavelengths in nm, times in
fs, intensities in W/cm^2, lengths in mm/um, pressures in Torr.  Every
conversion constant used anywhere in the package is defined here.
"""

import math

from scipy import constants as _c

# Fundamental constants (SI)
E_CHARGE = _c.e
M_ELECTRON = _c.m_e
C_LIGHT = _c.c
EPS0 = _c.epsilon_0
HBAR = _c.hbar
K_BOLTZMANN = _c.k

# Atomic units
HARTREE_EV = _c.value("Hartree energy in eV")            # 27.211386...
BOHR_M = _c.value("Bohr radius")                          # 5.29177e-11 m
AU_TIME_S = _c.value("atomic unit of time")               # 2.41888e-17 s
AU_FIELD_VM = _c.value("atomic unit of electric field")   # 5.14221e11 V/m

# Intensity of a linearly polarized wave with peak field of 1 a.u.,
# I = eps0*c*E^2/2, expressed in W/cm^2.
AU_INTENSITY_WCM2 = 0.5 * EPS0 * C_LIGHT * AU_FIELD_VM**2 * 1e-4

EV_NM = 1e9 * _c.h * _c.c / _c.e          # photon energy [eV] * wavelength [nm]
FS_PER_AU = AU_TIME_S * 1e15
TORR_PA = _c.torr


def field_au_from_intensity(intensity_wcm2):
    """Peak electric field in a.u. for a given intensity in W/cm^2."""
    return math.sqrt(max(intensity_wcm2, 0.0) / AU_INTENSITY_WCM2)


def intensity_from_field_au(field_au):
    """Inverse of :func:`field_au_from_intensity`."""
    return field_au**2 * AU_INTENSITY_WCM2


def omega_au(wavelength_nm):
    """Laser angular frequency in a.u. from the wavelength in nm."""
    return (EV_NM / wavelength_nm) / HARTREE_EV


def photon_energy_ev(wavelength_nm):
    """Photon energy in eV."""
    return EV_NM / wavelength_nm


def fs_to_au(t_fs):
    return t_fs / FS_PER_AU


def au_to_fs(t_au):
    return t_au * FS_PER_AU


def ev_to_au(e_ev):
    return e_ev / HARTREE_EV


def au_to_ev(e_au):
    return e_au * HARTREE_EV


def ponderomotive_ev(intensity_wcm2, wavelength_nm):
    """Cycle-averaged quiver energy U_p = e^2 E^2 / (4 m w^2), in eV.

    The field amplitude follows from I = eps0*c*E^2/2 (intensity in W/cm^2
    converted to W/m^2 internally).
    """
    e_field = math.sqrt(2.0 * intensity_wcm2 * 1e4 / (EPS0 * C_LIGHT))
    omega = 2.0 * math.pi * C_LIGHT / (wavelength_nm * 1e-9)
    up_joule = (E_CHARGE * e_field) ** 2 / (4.0 * M_ELECTRON * omega**2)
    return up_joule / E_CHARGE


def number_density_cm3(pressure_torr, temperature_k):
    """Ideal-gas number density in cm^-3."""
    return pressure_torr * TORR_PA / (K_BOLTZMANN * temperature_k) * 1e-6
