"""Paraxial slowly-varying-envelope propagation of the fundamental and
harmonic fields through a cylindrically symmetric gas jet.

The fundamental envelope carries sqrt(W/cm^2) units so its squared modulus is
directly the local intensity; the harmonic field is in V/m, driven by the
nonlinear polarization assembled from the tabulated single-atom response.
Free-electron dispersion enters both marches through the ionization-driven
index correction; the gas profile is a truncated Lorentzian.  Each time slice
of the pulse envelope is a static solve at the instantaneous envelope
intensity; with ionization enabled, slices run in increasing time order and
accumulate electron density.
"""

import math
import struct
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import solve_banded

from . import units
from .errors import FieldBlowUpError, GridError
from .tables import query

__all__ = [
    "FocusGeometry",
    "JetProfile",
    "RadialField",
    "MediumState",
    "PropagationFlags",
    "SliceSpec",
    "jet_density",
    "gaussian_reference",
    "plasma_dephasing",
    "phase_mismatch",
    "polarization_source",
    "propagate_fundamental",
    "propagate_harmonic",
    "run_pulse",
    "conversion_scan",
    "modified_cutoff_check",
    "write_field",
    "read_field",
]

_FIELD_MAGIC = b"HHGFLD01"
_FIELD_VERSION = 1


@dataclass(frozen=True)
class FocusGeometry:
    """Gaussian focus of the fundamental: confocal parameter b (mm), focus at
    z = 0, waist derived from w0 = sqrt(b lambda / 2 pi)."""

    confocal_mm: float
    wavelength_nm: float

    def __post_init__(self):
        if self.confocal_mm <= 0:
            raise ValueError("confocal parameter must be positive")

    @property
    def waist_um(self):
        b_m = self.confocal_mm * 1e-3
        lam_m = self.wavelength_nm * 1e-9
        return math.sqrt(b_m * lam_m / (2.0 * math.pi)) * 1e6

    def beam_radius_um(self, z_mm):
        zr = 2.0 * np.asarray(z_mm, dtype=float) / self.confocal_mm
        return self.waist_um * np.sqrt(1.0 + zr**2)

    def gouy_phase(self, z_mm):
        return -np.arctan(2.0 * np.asarray(z_mm, dtype=float) / self.confocal_mm)


@dataclass(frozen=True)
class JetProfile:
    """Truncated Lorentzian gas density profile along z."""

    center_mm: float
    fwhm_mm: float = 0.8
    truncation_mm: float = 0.8
    peak_torr: float = 15.0
    temperature_k: float = 293.0

    def __post_init__(self):
        if self.fwhm_mm <= 0 or self.truncation_mm <= 0:
            raise ValueError("jet widths must be positive")
        if self.peak_torr < 0:
            raise ValueError("pressure must be nonnegative")

    @property
    def entrance_mm(self):
        return self.center_mm - self.truncation_mm

    @property
    def exit_mm(self):
        return self.center_mm + self.truncation_mm

    @property
    def peak_density_cm3(self):
        return units.number_density_cm3(self.peak_torr, self.temperature_k)

    def at(self, center_mm):
        return replace(self, center_mm=center_mm)


def jet_density(jet, z_mm):
    """Atom number density (cm^-3) at plane z."""
    z = np.asarray(z_mm, dtype=float)
    half = jet.fwhm_mm / 2.0
    lor = jet.peak_density_cm3 / (1.0 + ((z - jet.center_mm) / half) ** 2)
    out = np.where(np.abs(z - jet.center_mm) <= jet.truncation_mm, lor, 0.0)
    return out if out.ndim else float(out)


@dataclass
class RadialField:
    """Complex field envelope on a radial grid at one plane and time slice."""

    r_um: np.ndarray
    values: np.ndarray
    z_mm: float
    wavelength_nm: float
    slice_time_fs: float = 0.0

    def __post_init__(self):
        if self.r_um[0] != 0.0:
            raise GridError("radial grid must start on the axis (r = 0)")
        if self.r_um.shape != self.values.shape:
            raise GridError("r grid and values must have matching shapes")

    @property
    def dr_um(self):
        return float(self.r_um[1] - self.r_um[0])

    def power(self):
        """Radially integrated |E|^2 (arbitrary units * um^2)."""
        return float(
            2.0 * math.pi * np.trapezoid(np.abs(self.values) ** 2 * self.r_um, self.r_um)
        )


def gaussian_reference(geometry, peak_intensity, z_mm, r_um):
    """Analytic lowest-order Gaussian envelope with |E|^2 in W/cm^2.

    Phase convention: -arctan(2z/b) + (2z/b)(r/w)^2, the envelope phase of a
    beam with carrier exp(+ikz).
    """
    r = np.asarray(r_um, dtype=float)
    w = geometry.beam_radius_um(z_mm)
    zr = 2.0 * z_mm / geometry.confocal_mm
    amp = math.sqrt(peak_intensity) * (geometry.waist_um / w) * np.exp(-(r / w) ** 2)
    phase = -math.atan(zr) + zr * (r / w) ** 2
    return amp * np.exp(1j * phase)


def plasma_dephasing(n_e_cm3, q, wavelength_nm):
    """Index correction of order q from free electrons, delta-k in 1/mm:
    -e^2 N_e / (2 eps0 m q c omega)."""
    omega = 2.0 * math.pi * units.C_LIGHT / (wavelength_nm * 1e-9)
    n_e = np.asarray(n_e_cm3, dtype=float) * 1e6
    dk = -(units.E_CHARGE**2) * n_e / (
        2.0 * units.EPS0 * units.M_ELECTRON * q * units.C_LIGHT * omega
    )
    out = dk * 1e-3  # 1/m -> 1/mm
    return out if out.ndim else float(out)


def phase_mismatch(n_e_cm3, q, wavelength_nm):
    """|q delta-k_1 - delta-k_q| in 1/mm."""
    dk1 = plasma_dephasing(n_e_cm3, 1, wavelength_nm)
    dkq = plasma_dephasing(n_e_cm3, q, wavelength_nm)
    return np.abs(q * dk1 - dkq)


# ---------------------------------------------------------------------------
# grids

@dataclass(frozen=True)
class RadialGrid:
    n_r: int = 512
    r_max_um: float = 180.0

    def __post_init__(self):
        if self.n_r < 16:
            raise GridError("need at least 16 radial points")

    @property
    def r_um(self):
        return np.linspace(0.0, self.r_max_um, self.n_r)

    @property
    def dr_um(self):
        return self.r_max_um / (self.n_r - 1)


def default_radial_grid(geometry, z_extent_mm, n_r=512, margin=2.5):
    """Grid wide enough for the fundamental over the whole march."""
    w_max = max(geometry.beam_radius_um(z) for z in z_extent_mm)
    r_max = max(margin * w_max, 4.0 * geometry.waist_um)
    return RadialGrid(n_r=n_r, r_max_um=float(r_max))


def march_planes(jet, dz_jet_um=10.0, dz_outside_um=50.0, entrance_margin_mm=5.0):
    """z planes for the fundamental march: coarse from the entrance plane
    (upstream of both focus and jet, where the density vanishes and the
    analytic Gaussian boundary condition is exact) and fine through the jet.
    """
    z_in, z_out = jet.entrance_mm, jet.exit_mm
    z_start = min(0.0, z_in) - entrance_margin_mm
    n_coarse = max(2, int(math.ceil((z_in - z_start) / (dz_outside_um * 1e-3))) + 1)
    coarse = np.linspace(z_start, z_in, n_coarse)
    n_fine = max(2, int(math.ceil((z_out - z_in) / (dz_jet_um * 1e-3))) + 1)
    fine = np.linspace(z_in, z_out, n_fine)
    return np.concatenate([coarse[:-1], fine]), coarse.size - 1


# ---------------------------------------------------------------------------
# Crank-Nicolson march

def _laplacian_bands(r_m):
    """Tridiagonal cylindrical transverse Laplacian with a Neumann axis
    stencil at r = 0 and Dirichlet at the outer edge."""
    n = r_m.size
    dr = r_m[1] - r_m[0]
    lower = np.zeros(n)
    diag = np.zeros(n)
    upper = np.zeros(n)
    diag[0] = -4.0 / dr**2
    upper[0] = 4.0 / dr**2
    j = np.arange(1, n - 1)
    lower[j] = 1.0 / dr**2 - 1.0 / (2.0 * r_m[j] * dr)
    diag[j] = -2.0 / dr**2
    upper[j] = 1.0 / dr**2 + 1.0 / (2.0 * r_m[j] * dr)
    lower[n - 1] = 1.0 / dr**2 - 1.0 / (2.0 * r_m[n - 1] * dr)
    diag[n - 1] = -2.0 / dr**2
    return lower, diag, upper


def _absorber_mask(r_um, r_max_um, strength_per_mm=30.0, start_frac=0.9):
    ramp = np.clip((r_um / r_max_um - start_frac) / (1.0 - start_frac), 0.0, None)
    return strength_per_mm * ramp**2  # absorption rate in 1/mm


def cn_march(u0, r_um, z_mm, k_per_m, dk_planes=None, source_planes=None,
             absorber=True, collect=True):
    """Crank-Nicolson march of du/dz = (i/2k) Lap_t u + i dk u + i S.

    ``z_mm`` are the plane positions; ``dk_planes`` (1/m) and
    ``source_planes`` (field per meter) are per-plane arrays or None.
    Returns the field at all planes (collect) or just the last plane.
    """
    r_m = r_um * 1e-6
    n = r_m.size
    lower, diag, upper = _laplacian_bands(r_m)
    mask_rate = _absorber_mask(r_um, r_um[-1]) if absorber else None

    u = u0.astype(complex)
    if collect:
        out = np.empty((len(z_mm), n), dtype=complex)
        out[0] = u
    ab = np.zeros((3, n), dtype=complex)
    rhs = np.empty(n, dtype=complex)
    inv2k = 1.0 / (2.0 * k_per_m)

    for p in range(len(z_mm) - 1):
        dz = (z_mm[p + 1] - z_mm[p]) * 1e-3
        a = 0.5j * dz
        dk_n = dk_planes[p] if dk_planes is not None else 0.0
        dk_n1 = dk_planes[p + 1] if dk_planes is not None else 0.0
        # rhs = (I + a L_n) u + i dz S_{n+1/2}
        lap = np.empty(n, dtype=complex)
        lap[0] = diag[0] * u[0] + upper[0] * u[1]
        lap[1:-1] = lower[1:-1] * u[:-2] + diag[1:-1] * u[1:-1] + upper[1:-1] * u[2:]
        lap[-1] = lower[-1] * u[-2] + diag[-1] * u[-1]
        rhs[:] = u + a * (inv2k * lap + dk_n * u)
        if source_planes is not None:
            rhs += 1j * dz * 0.5 * (source_planes[p] + source_planes[p + 1])
        # lhs bands for (I - a L_{n+1})
        ab[0, 1:] = -a * inv2k * upper[:-1]
        ab[1, :] = 1.0 - a * (inv2k * diag + dk_n1)
        ab[2, :-1] = -a * inv2k * lower[1:]
        u = solve_banded((1, 1), ab, rhs)
        if mask_rate is not None:
            u *= np.exp(-mask_rate * (dz * 1e3))
        if not np.all(np.isfinite(u)):
            raise FieldBlowUpError(p + 1, z_mm[p + 1])
        if collect:
            out[p + 1] = u
    return out if collect else u


# ---------------------------------------------------------------------------
# medium state

@dataclass
class MediumState:
    """Accumulated ionization over the medium's fine z-planes.

    ``gamma_integral`` is the running time integral of the ionization rate at
    each (z, r) point; electron density follows the saturation law
    N_e = N_a (1 - exp(-integral)).
    """

    z_mm: np.ndarray
    r_um: np.ndarray
    n_a_cm3: np.ndarray                  # (n_z,)
    gamma_integral: np.ndarray           # (n_z, n_r)
    _last_rate: np.ndarray = None        # (n_z, n_r), 1/s

    @classmethod
    def fresh(cls, jet, z_mm, r_um):
        n_a = jet_density(jet, z_mm)
        shape = (z_mm.size, r_um.size)
        return cls(z_mm, r_um, n_a, np.zeros(shape), np.zeros(shape))

    def advance(self, rate_per_s, dt_fs):
        """Trapezoid accumulation of the rate integral over one slice step."""
        if dt_fs > 0:
            self.gamma_integral += 0.5 * (self._last_rate + rate_per_s) * (dt_fs * 1e-15)
        self._last_rate = rate_per_s

    def electron_density(self):
        """N_e (cm^-3) on the medium grid."""
        return self.n_a_cm3[:, None] * (1.0 - np.exp(-self.gamma_integral))

    def ionized_fraction(self):
        return 1.0 - np.exp(-self.gamma_integral)


def polarization_source(table, e1_values, n_a_cm3, depletion_integral, q,
                        extra_phase=0.0):
    """Nonlinear polarization P_q (C/m^2) on one plane.

    P_q = 2 N_a x_q(|E1|^2) exp(i q arg E1) exp(-int Gamma); the factor 2
    converts between the dipole-component and polarization conventions.
    ``extra_phase`` adds q times the drive envelope phase (chirp).
    """
    intensity = np.abs(e1_values) ** 2
    xq, _ = query(table, intensity)
    mag = np.abs(e1_values)
    unit = np.where(mag > 0, e1_values / np.where(mag > 0, mag, 1.0), 0.0)
    phase_q = unit**q * np.exp(1j * q * extra_phase)
    dip_si = xq * (units.E_CHARGE * units.BOHR_M)
    dep = np.exp(-depletion_integral) if depletion_integral is not None else 1.0
    return 2.0 * (n_a_cm3 * 1e6) * dip_si * phase_q * dep


@dataclass(frozen=True)
class PropagationFlags:
    """Which ionization effects act on the propagation.

    depletion: ground-state population factor exp(-int Gamma) in the source.
    dephasing: free-electron index correction (fundamental phase and
        harmonic delta-k).
    defocusing: full fundamental march in the ionized medium (amplitude and
        phase); without it the fundamental keeps its Gaussian amplitude and
        only accumulates the plasma phase when dephasing is on.
    """

    depletion: bool = False
    dephasing: bool = False
    defocusing: bool = False

    @property
    def any_ionization(self):
        return self.depletion or self.dephasing or self.defocusing


@dataclass(frozen=True)
class SliceSpec:
    """Time slicing of the pulse envelope."""

    n_slices: int = 64
    span_fwhm: float = 1.5

    def times_fs(self, waveform):
        if waveform.envelope_kind == "square":
            half = waveform.fwhm_fs / 2.0
            if math.isinf(half):
                return np.array([0.0])
        else:
            half = self.span_fwhm * waveform.fwhm_fs
        if self.n_slices == 1:
            return np.array([0.0])
        return np.linspace(-half, half, self.n_slices)


# ---------------------------------------------------------------------------
# single-slice solves

def propagate_fundamental(geometry, jet, grid, z_planes, peak_intensity,
                          medium=None, flags=PropagationFlags()):
    """Fundamental envelope (sqrt(W/cm^2) units) at every march plane.

    With defocusing enabled the envelope is marched through the electron
    density; otherwise the analytic Gaussian is evaluated, with the
    accumulated plasma phase added when dephasing is on.  The boundary
    condition is the analytic Gaussian at the entrance plane.
    """
    r = grid.r_um
    n_e = medium.electron_density() if medium is not None else None
    lam = geometry.wavelength_nm

    if flags.defocusing and n_e is not None:
        k1 = 2.0 * math.pi / (lam * 1e-9)
        dk = np.zeros((len(z_planes), r.size))
        jet_mask = (z_planes >= jet.entrance_mm) & (z_planes <= jet.exit_mm)
        dk[jet_mask] = _interp_planes(n_e, medium.z_mm, z_planes[jet_mask])
        dk = plasma_dephasing(dk, 1, lam) * 1e3  # N_e -> delta k, 1/mm -> 1/m
        u0 = gaussian_reference(geometry, peak_intensity, z_planes[0], r)
        return cn_march(u0, r, z_planes, k1, dk_planes=dk)

    field = np.empty((len(z_planes), r.size), dtype=complex)
    for p, z in enumerate(z_planes):
        field[p] = gaussian_reference(geometry, peak_intensity, z, r)
    if flags.dephasing and n_e is not None:
        phase = _cumulative_plasma_phase(n_e, medium.z_mm, 1, lam)
        jet_sel = (z_planes >= jet.entrance_mm) & (z_planes <= jet.exit_mm)
        field[jet_sel] = field[jet_sel] * np.exp(
            1j * _interp_planes(phase, medium.z_mm, z_planes[jet_sel])
        )
        after = z_planes > jet.exit_mm
        if np.any(after):
            field[after] = field[after] * np.exp(1j * phase[-1])
    return field


def _interp_planes(values_zr, z_src, z_dst):
    """Linear interpolation of a (n_z, n_r) plane stack onto new z planes."""
    out = np.empty((len(z_dst), values_zr.shape[1]), dtype=values_zr.dtype)
    for jcol in range(values_zr.shape[1]):
        out[:, jcol] = np.interp(z_dst, z_src, values_zr[:, jcol])
    return out


def _cumulative_plasma_phase(n_e, z_mm, q, wavelength_nm):
    """Phase accumulated by order q from the entrance: int delta-k_q dz."""
    dk = plasma_dephasing(n_e, q, wavelength_nm)  # (n_z, n_r), 1/mm
    dz = np.diff(z_mm)
    phase = np.zeros_like(dk)
    phase[1:] = np.cumsum(0.5 * (dk[1:] + dk[:-1]) * dz[:, None], axis=0)
    return phase


def propagate_harmonic(source_planes, grid, z_planes, q, wavelength_nm,
                       dk_planes=None):
    """March the harmonic envelope over the medium planes with the
    polarization source; returns the exit-plane values (V/m)."""
    kq = 2.0 * math.pi * q / (wavelength_nm * 1e-9)
    omega = 2.0 * math.pi * units.C_LIGHT / (wavelength_nm * 1e-9)
    coupling = q * omega / (2.0 * units.EPS0 * units.C_LIGHT)
    src = source_planes * coupling
    u0 = np.zeros(grid.r_um.size, dtype=complex)
    return cn_march(
        u0, grid.r_um, z_planes, kq, dk_planes=dk_planes,
        source_planes=src, collect=False,
    )


# ---------------------------------------------------------------------------
# pulse pipeline

@dataclass
class PulseResult:
    """Exit-plane harmonic slices plus medium diagnostics."""

    times_fs: np.ndarray
    fields: list                    # RadialField per slice, at the medium exit
    medium: MediumState
    fundamental_peak_exit: np.ndarray   # |E1(r)| at medium exit, peak slice
    fundamental_free_exit: np.ndarray   # same without any ionization
    center_fraction_history: np.ndarray  # on-axis ionized fraction at jet center
    peak_slice_ne_center: float          # N_e (cm^-3), jet center, peak slice

    @property
    def r_um(self):
        return self.fields[0].r_um

    def exit_matrix(self):
        return np.array([f.values for f in self.fields])


def run_pulse(geometry, waveform, jet, table, q, grid=None,
              flags=PropagationFlags(), slices=SliceSpec(),
              dz_jet_um=10.0, dz_outside_um=50.0):
    """Full time-sliced solve: fundamental, ionization, harmonic per slice.

    The harmonic order's source phase is q times the fundamental envelope
    phase plus q times the drive chirp phase of the slice.
    """
    z_all, jet_start = march_planes(jet, dz_jet_um, dz_outside_um)
    if grid is None:
        grid = default_radial_grid(geometry, (z_all[0], z_all[-1]))
    z_med = z_all[jet_start:]
    r = grid.r_um
    n_a = jet_density(jet, z_med)
    medium = MediumState.fresh(jet, z_med, r)
    lam = geometry.wavelength_nm

    times = slices.times_fs(waveform)
    dt_fs = times[1] - times[0] if times.size > 1 else waveform.fwhm_fs
    center_idx = int(np.argmin(np.abs(z_med - jet.center_mm)))
    peak_idx = int(np.argmin(np.abs(times)))

    fields = []
    frac_history = np.zeros(times.size)
    fund_peak_exit = None
    ne_center_peak = 0.0

    free_flags = PropagationFlags()
    e1_free = propagate_fundamental(
        geometry, jet, grid, z_all, waveform.peak_intensity, None, free_flags
    )
    fund_free_exit = np.abs(e1_free[-1])

    for s_idx, t_fs in enumerate(times):
        scale = float(waveform.envelope_intensity(t_fs)) / waveform.peak_intensity \
            if waveform.peak_intensity > 0 else 0.0
        i_slice = waveform.peak_intensity * scale
        e1 = propagate_fundamental(
            geometry, jet, grid, z_all, i_slice,
            medium if flags.any_ionization else None, flags,
        )
        e1_med = e1[jet_start:]
        intensity_med = np.abs(e1_med) ** 2

        if flags.any_ionization:
            _, gam = query(table, intensity_med)
            medium.advance(gam, dt_fs if s_idx > 0 else 0.0)
        frac_history[s_idx] = medium.ionized_fraction()[center_idx, 0]

        dep = medium.gamma_integral if flags.depletion else None
        phi_dr = float(waveform.envelope_phase(t_fs))
        src = np.zeros_like(e1_med)
        for p in range(z_med.size):
            src[p] = polarization_source(
                table, e1_med[p], n_a[p], dep[p] if dep is not None else None,
                q, extra_phase=phi_dr,
            )
        dkq = None
        if flags.dephasing:
            dkq = plasma_dephasing(medium.electron_density(), q, lam) * 1e3
        eq_exit = propagate_harmonic(src, grid, z_med, q, lam, dk_planes=dkq)
        fields.append(RadialField(r, eq_exit, float(z_med[-1]), lam / q, float(t_fs)))

        if s_idx == peak_idx:
            fund_peak_exit = np.abs(e1_med[-1])
            ne_center_peak = float(medium.electron_density()[center_idx, 0])

    return PulseResult(
        times, fields, medium, fund_peak_exit, fund_free_exit,
        frac_history, ne_center_peak,
    )


def conversion_scan(geometry, waveform, jet, table, q, positions_mm,
                    intensities, mode="static", flags=PropagationFlags(),
                    slices=SliceSpec(), grid=None, dz_jet_um=10.0):
    """Harmonic yield vs jet position for a set of peak intensities.

    Static mode solves the single peak slice of a square envelope and
    reports the radially integrated exit power (W); dynamic mode runs the
    slice pipeline on the Gaussian envelope and reports emitted photons.
    """
    curves = {}
    for i0 in intensities:
        wave = replace(waveform, peak_intensity=float(i0))
        if mode == "static":
            wave = replace(wave, envelope_kind="square", fwhm_fs=wave.fwhm_fs)
        ys = []
        for z0 in positions_mm:
            jz = jet.at(float(z0))
            if mode == "static":
                res = run_pulse(geometry, wave, jz, table, q, grid=grid,
                                flags=PropagationFlags(),
                                slices=SliceSpec(n_slices=1),
                                dz_jet_um=dz_jet_um)
                ys.append(exit_power_w(res.fields[0]))
            else:
                res = run_pulse(geometry, wave, jz, table, q, grid=grid,
                                flags=flags, slices=slices, dz_jet_um=dz_jet_um)
                ys.append(photon_number(res, q, geometry.wavelength_nm))
        curves[float(i0)] = np.array(ys)
    return curves


def exit_power_w(field):
    """Radially integrated power of a V/m harmonic field (W)."""
    r_m = field.r_um * 1e-6
    flux = 0.5 * units.EPS0 * units.C_LIGHT * np.abs(field.values) ** 2
    return float(2.0 * math.pi * np.trapezoid(flux * r_m, r_m))


def photon_number(result, q, wavelength_nm):
    """Time-integrated photon count of the exit pulse."""
    dt = (result.times_fs[1] - result.times_fs[0]) * 1e-15 \
        if result.times_fs.size > 1 else 1e-13
    energy = sum(exit_power_w(f) for f in result.fields) * dt
    photon_j = q * units.photon_energy_ev(wavelength_nm) * units.E_CHARGE
    return energy / photon_j


def modified_cutoff_check(geometry, waveform, jet, table, q, intensities,
                          flags=PropagationFlags(), slices=SliceSpec(n_slices=32),
                          grid=None):
    """Effective cutoff coefficient from the change of slope of yield vs peak
    intensity: solving q hbar w = I_p + c U_p(I*) at the detected knee."""
    ys = []
    for i0 in intensities:
        wave = replace(waveform, peak_intensity=float(i0))
        res = run_pulse(geometry, wave, jet, table, q, grid=grid, flags=flags,
                        slices=slices)
        ys.append(photon_number(res, q, geometry.wavelength_nm))
    i_star = _change_of_slope(np.asarray(intensities, float), np.sqrt(ys))
    return implied_cutoff_coefficient(table.atom, q, geometry.wavelength_nm, i_star), \
        i_star, np.array(ys)


def implied_cutoff_coefficient(atom, q, wavelength_nm, intensity):
    photon = q * units.photon_energy_ev(wavelength_nm)
    up = units.ponderomotive_ev(intensity, wavelength_nm)
    return (photon - atom.ip_ev) / up


def _change_of_slope(intensities, amplitudes):
    """Shared detector: intensity where the windowed log-amplitude slope
    first halves relative to the steep-rise reference."""
    from .tables import _windowed_log_slopes
    from .errors import TransitionNotFoundError

    width = max(3, int(round(intensities.size * 0.2)))
    slopes = _windowed_log_slopes(intensities, amplitudes, width)
    plateau_level = np.median(amplitudes[intensities > 0.6 * intensities[-1]])
    ref_mask = (
        (amplitudes > 1e-3 * plateau_level)
        & (amplitudes < 0.3 * plateau_level)
        & (intensities < 0.8 * intensities[-1])
    )
    if not np.any(ref_mask):
        raise TransitionNotFoundError("no steep-rise region in intensity scan")
    ref = float(np.mean(slopes[ref_mask]))
    if ref <= 0:
        raise TransitionNotFoundError("no rising slope in intensity scan")
    for k in range(int(np.argmax(ref_mask)), intensities.size):
        if slopes[k] < 0.5 * ref:
            return float(intensities[k])
    raise TransitionNotFoundError("transition not bracketed by the scan")


# ---------------------------------------------------------------------------
# field-plane dumps

def write_field(path, fields_matrix, wavelength_nm, slice_time_fs):
    """Binary dump: magic, version, r-count, z-count (u64 LE), wavelength,
    slice time (f8 LE), then row-major complex pairs (f8 LE)."""
    arr = np.atleast_2d(np.asarray(fields_matrix, dtype=complex))
    n_z, n_r = arr.shape
    header = _FIELD_MAGIC + struct.pack(
        "<QQQdd", _FIELD_VERSION, n_r, n_z, wavelength_nm, slice_time_fs
    )
    pairs = np.empty((n_z, n_r, 2), dtype="<f8")
    pairs[..., 0] = arr.real
    pairs[..., 1] = arr.imag
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(pairs.tobytes())


def read_field(path):
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _FIELD_MAGIC:
            raise ValueError(f"not a field dump: magic {magic!r}")
        version, n_r, n_z, wavelength, t_fs = struct.unpack("<QQQdd", fh.read(40))
        if version != _FIELD_VERSION:
            raise ValueError(f"unsupported field dump version {version}")
        raw = np.frombuffer(fh.read(n_z * n_r * 16), dtype="<f8").reshape(n_z, n_r, 2)
    return raw[..., 0] + 1j * raw[..., 1], float(wavelength), float(t_fs)
