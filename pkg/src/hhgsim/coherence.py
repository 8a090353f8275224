"""Observables of the emitted harmonic beam: free-space transport to the far
field or back to the virtual focus, temporal and spectral profiles of the
slice-assembled pulse, degree of spatial coherence, quadratic-phase
compression, the analytic phase-modulation model, and the carrier-resolved
short-pulse (nonadiabatic) single-atom study.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import j0

from . import sfa, units
from .errors import FitError, GridError, HhgError, WindowingError
from .propagation import RadialField
from .tables import query

__all__ = [
    "PulseAssembly",
    "SpectralProfile",
    "CoherenceCurve",
    "PhaseModulationModel",
    "fwhm",
    "fresnel_propagate",
    "far_field",
    "virtual_focus",
    "temporal_profile",
    "spectral_profile",
    "coherence_degree",
    "compress_pulse",
    "analytic_phase_model",
    "polarization_phase_map",
    "chirp_for_bandwidth",
    "chirped_drive_scenario",
    "nonadiabatic_pulse",
]


def fwhm(x, y):
    """Full width at half maximum of the contiguous region around the global
    maximum, with linear interpolation between samples."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    m = int(np.argmax(y))
    half = y[m] / 2.0
    if y[m] <= 0:
        raise ValueError("profile has no positive maximum")

    def cross(idx_from, step):
        i = idx_from
        while 0 <= i + step < y.size and y[i + step] > half:
            i += step
        j = i + step
        if j < 0 or j >= y.size:
            return x[i]  # clipped at the edge
        frac = (y[i] - half) / (y[i] - y[j])
        return x[i] + frac * (x[j] - x[i])

    return abs(cross(m, +1) - cross(m, -1))


# ---------------------------------------------------------------------------
# free-space transport

@dataclass(frozen=True)
class PulseAssembly:
    """Harmonic field slices at a fixed plane, indexed by envelope time."""

    times_fs: np.ndarray
    r_um: np.ndarray
    values: np.ndarray            # (n_t, n_r) complex
    z_mm: float
    order: int
    wavelength_q_nm: float

    def __post_init__(self):
        if np.any(np.diff(self.times_fs) <= 0):
            raise GridError("slice times must be strictly increasing")
        if self.values.shape != (self.times_fs.size, self.r_um.size):
            raise GridError("slice matrix shape mismatch")

    @classmethod
    def from_result(cls, result, order, wavelength_nm):
        return cls(
            result.times_fs,
            result.r_um,
            result.exit_matrix(),
            result.fields[0].z_mm,
            order,
            wavelength_nm / order,
        )

    @property
    def dt_fs(self):
        return float(self.times_fs[1] - self.times_fs[0])

    def uniform_times(self):
        dt = np.diff(self.times_fs)
        return np.allclose(dt, dt[0], rtol=1e-9, atol=1e-12)

    def time_integrated_profile(self):
        return np.mean(np.abs(self.values) ** 2, axis=0)


def _resample_complex(r_um, values, n_fine):
    if n_fine <= r_um.size:
        return r_um, values
    r_f = np.linspace(r_um[0], r_um[-1], n_fine)
    re = CubicSpline(r_um, values.real)(r_f)
    im = CubicSpline(r_um, values.imag)(r_f)
    return r_f, re + 1j * im


def _simpson_w(n, h):
    if n % 2 == 0:
        raise ValueError("Simpson needs an odd sample count")
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def fresnel_propagate(field, dz_mm, r_out_um=None):
    """Paraxial free-space propagation over dz via the cylindrical
    diffraction integral

        u(r', z+L) = (k/iL) exp(ik r'^2/2L) int u(r) exp(ik r^2/2L)
                     J0(k r r'/L) r dr.

    Negative dz runs as conjugate-propagate-conjugate (time reversal).
    Warns when significant energy sits within 5% of the outer boundary
    (aliasing risk).
    """
    if dz_mm == 0.0:
        vals = field.values if r_out_um is None else np.interp(
            r_out_um, field.r_um, field.values
        )
        r_o = field.r_um if r_out_um is None else np.asarray(r_out_um, float)
        return RadialField(r_o, np.array(vals, complex), field.z_mm,
                           field.wavelength_nm, field.slice_time_fs)
    if dz_mm < 0:
        flipped = RadialField(field.r_um, np.conj(field.values), field.z_mm,
                              field.wavelength_nm, field.slice_time_fs)
        out = fresnel_propagate(flipped, -dz_mm, r_out_um)
        return RadialField(out.r_um, np.conj(out.values), field.z_mm + dz_mm,
                           field.wavelength_nm, field.slice_time_fs)

    r = field.r_um
    intens = np.abs(field.values) ** 2 * r
    total = np.trapezoid(intens, r)
    if total > 0:
        edge = r >= 0.95 * r[-1]
        if np.trapezoid(intens[edge], r[edge]) > 0.05 * total:
            warnings.warn("field energy near the radial boundary; "
                          "diffraction result may alias", stacklevel=2)

    r_o = field.r_um if r_out_um is None else np.asarray(r_out_um, dtype=float)
    k = 2.0 * math.pi / (field.wavelength_nm * 1e-9)
    length = dz_mm * 1e-3
    r_m = r * 1e-6
    ro_m = r_o * 1e-6
    # resample so the kernel oscillation stays resolved: phase step per
    # sample of k r dr / L (quadratic) + k r'max dr / L (Bessel)
    dphi = k * (r_m[-1] + np.max(ro_m)) * (r_m[1] - r_m[0]) / length
    n_fine = r.size
    if dphi > 0.5:
        n_fine = int(min(16384, r.size * math.ceil(dphi / 0.5)))
    r_f, u_f = _resample_complex(r_m, field.values, n_fine)
    if r_f.size % 2 == 0:
        r_f = r_f[:-1]
        u_f = u_f[:-1]
    w = _simpson_w(r_f.size, r_f[1] - r_f[0])
    core = u_f * np.exp(0.5j * k * r_f**2 / length) * r_f * w
    bessel = j0(np.outer(ro_m, r_f) * (k / length))
    out = (k / (1j * length)) * np.exp(0.5j * k * ro_m**2 / length) * (bessel @ core)
    return RadialField(r_o, out, field.z_mm + dz_mm, field.wavelength_nm,
                       field.slice_time_fs)


def far_field(field, distance_mm=1000.0, theta_max_mrad=25.0, n_theta=600):
    """Intensity vs half-angle in the far zone (theta = r/distance)."""
    if distance_mm < 20.0 * field.wavelength_nm * 1e-6:
        raise ValueError("far-field distance must be in the far zone")
    r_out = np.linspace(0.0, theta_max_mrad * 1e-3 * distance_mm * 1e3, n_theta)
    ff = fresnel_propagate(field, distance_mm, r_out_um=r_out)
    theta_mrad = r_out / (distance_mm * 1e3) * 1e3
    return theta_mrad, np.abs(ff.values) ** 2


def radius_at_inv_e2(x, y):
    """Outermost radius where the profile still exceeds max/e^2."""
    thr = np.max(y) / math.e**2
    above = np.nonzero(y >= thr)[0]
    i = above[-1]
    if i + 1 >= y.size:
        return float(x[i])
    frac = (y[i] - thr) / (y[i] - y[i + 1])
    return float(x[i] + frac * (x[i + 1] - x[i]))


def virtual_focus(field, scan_back_mm=6.0, n_planes=121, r_probe_um=12.0):
    """Scan backward planes for the on-axis intensity maximum and return
    (z*, focus profile, 1/e^2 waist, RMS phase over the central lobe)."""
    dzs = np.linspace(0.0, -scan_back_mm, n_planes)
    on_axis = np.empty(n_planes)
    for i, dz in enumerate(dzs):
        probe = fresnel_propagate(field, dz, r_out_um=np.array([0.0]))
        on_axis[i] = abs(probe.values[0]) ** 2
    best = int(np.argmax(on_axis))
    if best in (0, n_planes - 1):
        warnings.warn("virtual focus at the edge of the scan range",
                      stacklevel=2)
    r_fine = np.linspace(0.0, r_probe_um, 401)
    prof = fresnel_propagate(field, float(dzs[best]), r_out_um=r_fine)
    intens = np.abs(prof.values) ** 2
    waist = radius_at_inv_e2(r_fine, intens)
    lobe = r_fine <= waist
    ph = np.angle(prof.values[lobe])
    wgt = intens[lobe] * r_fine[lobe]
    ph_mean = np.average(ph, weights=np.maximum(wgt, 1e-300))
    rms = math.sqrt(np.average((ph - ph_mean) ** 2,
                               weights=np.maximum(wgt, 1e-300)))
    return float(field.z_mm + dzs[best]), prof, waist, rms


# ---------------------------------------------------------------------------
# temporal / spectral

def temporal_profile(assembly, min_slices=16):
    """Radially integrated power per slice and its FWHM."""
    if assembly.times_fs.size < min_slices:
        raise GridError(f"need at least {min_slices} slices for a profile")
    p = 2.0 * math.pi * np.trapezoid(
        np.abs(assembly.values) ** 2 * assembly.r_um, assembly.r_um, axis=1
    )
    return assembly.times_fs, p, fwhm(assembly.times_fs, p)


@dataclass(frozen=True)
class SpectralProfile:
    """Radially integrated spectral intensity vs offset from q w0."""

    omega_offsets: np.ndarray       # rad/s, ascending
    delta_lambda_angstrom: np.ndarray
    delta_energy_ev: np.ndarray
    intensity: np.ndarray
    phase_rad: np.ndarray           # unwrapped at the dominant radius
    phase_mask: np.ndarray          # bins where the phase is meaningful
    fwhm_angstrom: float
    fwhm_ev: float
    dominant_radius_um: float


def _slice_spectra(assembly, pad=4):
    """Per-radius spectra F(Omega, r) with the convention
    s(t) = int F(Omega) exp(-i Omega t) dOmega/2pi, so positive Omega is the
    blue side of the harmonic."""
    if not assembly.uniform_times():
        raise GridError("spectral transforms need a uniform slice-time grid")
    n_t = assembly.times_fs.size
    n_pad = pad * n_t
    dt_s = assembly.dt_fs * 1e-15
    spec = np.fft.ifft(assembly.values, n=n_pad, axis=0) * (n_pad * dt_s)
    omega = 2.0 * math.pi * np.fft.fftfreq(n_pad, dt_s)
    t0 = assembly.times_fs[0] * 1e-15
    spec *= np.exp(1j * omega * t0)[:, None]
    order = np.argsort(omega)
    return omega[order], spec[order]


def spectral_profile(assembly, pad=4):
    """FFT over slice time per radius, incoherent radial integration of the
    spectral intensity; the spectral phase is reported at the radius that
    dominates the radial integral."""
    omega, spec = _slice_spectra(assembly, pad)
    weight_r = assembly.r_um
    intensity = 2.0 * math.pi * np.trapezoid(
        np.abs(spec) ** 2 * weight_r, assembly.r_um, axis=1
    )
    lam_m = assembly.wavelength_q_nm * 1e-9
    dlam = -(lam_m**2) * omega / (2.0 * math.pi * units.C_LIGHT) * 1e10
    de_ev = units.HBAR * omega / units.E_CHARGE

    mean_i = np.mean(np.abs(assembly.values) ** 2, axis=0) * assembly.r_um
    jdom = int(np.argmax(mean_i))
    f_dom = spec[:, jdom]
    mask = np.abs(f_dom) ** 2 > 0.05 * np.max(np.abs(f_dom) ** 2)
    phase = np.full(omega.size, np.nan)
    phase[mask] = np.unwrap(np.angle(f_dom[mask]))

    srt = np.argsort(dlam)
    width_a = fwhm(dlam[srt], intensity[srt])
    width_ev = fwhm(de_ev, intensity)
    return SpectralProfile(
        omega, dlam, de_ev, intensity, phase, mask, width_a, width_ev,
        float(assembly.r_um[jdom]),
    )


@dataclass(frozen=True)
class CoherenceCurve:
    r_ref_um: float
    r_um: np.ndarray
    degree: np.ndarray
    profile: np.ndarray      # time-integrated intensity, for plotting


def coherence_degree(assembly, r_ref_um=0.0):
    """|gamma_12(0)| between the reference radius and every radius: the
    equal-time field correlation averaged uniformly over slices, normalized
    by the rms intensities."""
    j_ref = int(np.argmin(np.abs(assembly.r_um - r_ref_um)))
    m = assembly.values
    ref = m[:, j_ref]
    denom_ref = np.mean(np.abs(ref) ** 2)
    if denom_ref == 0:
        raise HhgError("zero-energy reference point for coherence degree")
    num = np.abs(np.mean(m * np.conj(ref)[:, None], axis=0))
    den = np.sqrt(np.mean(np.abs(m) ** 2, axis=0) * denom_ref)
    with np.errstate(invalid="ignore", divide="ignore"):
        deg = np.where(den > 0, num / den, 0.0)
    deg[j_ref] = 1.0
    return CoherenceCurve(
        float(assembly.r_um[j_ref]), assembly.r_um, deg,
        assembly.time_integrated_profile(),
    )


# ---------------------------------------------------------------------------
# compression

@dataclass(frozen=True)
class CompressionResult:
    times_fs: np.ndarray
    power: np.ndarray
    fwhm_fs: float
    uncompressed_fwhm_fs: float
    transform_limit_fwhm_fs: float
    quadratic_coeff: float      # rad s^2, the subtracted spectral curvature


def _weighted_quadratic_coeff(omega, spec, r_um, rel_floor=0.05, min_bins=3):
    """Mean quadratic spectral-phase coefficient, intensity weighted over
    radii; each radius contributes its own quadratic fit."""
    coeffs, weights = [], []
    power_r = np.sum(np.abs(spec) ** 2, axis=0) * r_um
    if np.max(power_r) <= 0:
        raise FitError("no spectral energy to fit")
    for jcol in np.nonzero(power_r > 1e-4 * np.max(power_r))[0]:
        f = spec[:, jcol]
        w = np.abs(f) ** 2
        mask = w > rel_floor * np.max(w)
        if np.count_nonzero(mask) < min_bins:
            continue
        ph = np.unwrap(np.angle(f[mask]))
        c = np.polynomial.polynomial.polyfit(
            omega[mask], ph, 2, w=np.sqrt(w[mask])
        )
        coeffs.append(c[2])
        weights.append(np.sum(w) * r_um[jcol])
    if not coeffs:
        raise FitError("spectrum narrower than the minimum fit width")
    return float(np.average(coeffs, weights=weights))


def compress_pulse(assembly, pad=4):
    """Subtract one mean quadratic spectral phase from every radius, invert
    the transform, and radially integrate the compressed power."""
    omega, spec = _slice_spectra(assembly, pad)
    c2 = _weighted_quadratic_coeff(omega, spec, assembly.r_um)
    spec_c = spec * np.exp(-1j * c2 * omega**2)[:, None]
    spec_tl = np.abs(spec)

    n_pad = omega.size
    dt_s = assembly.dt_fs * 1e-15
    t_pad = assembly.times_fs[0] + np.arange(n_pad) * assembly.dt_fs

    def back(sp):
        # invert the _slice_spectra convention on the padded time grid
        unsorted = np.empty_like(sp)
        omega_native = 2.0 * math.pi * np.fft.fftfreq(n_pad, dt_s)
        order = np.argsort(omega_native)
        unsorted[order] = sp
        unsorted = unsorted * np.exp(-1j * omega_native * assembly.times_fs[0] * 1e-15)[:, None]
        return np.fft.fft(unsorted, axis=0) / (n_pad * dt_s)

    m_c = back(spec_c)
    m_tl = back(spec_tl.astype(complex))
    p_c = 2.0 * math.pi * np.trapezoid(
        np.abs(m_c) ** 2 * assembly.r_um, assembly.r_um, axis=1
    )
    p_tl = 2.0 * math.pi * np.trapezoid(
        np.abs(m_tl) ** 2 * assembly.r_um, assembly.r_um, axis=1
    )
    _, p0, w0 = temporal_profile(assembly)
    # transform-limited profile is centered wherever the linear phase puts
    # it; only widths are meaningful
    return CompressionResult(
        t_pad, p_c, fwhm(t_pad, p_c), w0, fwhm(t_pad, p_tl), c2
    )


# ---------------------------------------------------------------------------
# analytic phase-modulation model

@dataclass(frozen=True)
class PhaseModulationModel:
    """Linearized dipole-phase modulation of a Gaussian pulse."""

    eta: float                  # rad per (W/cm^2)
    i0: float                   # W/cm^2
    tau_fwhm_fs: float
    wavelength_q_nm: float

    @property
    def inflection_fs(self):
        return self.tau_fwhm_fs / math.sqrt(8.0 * math.log(2.0))

    def intensity(self, t_fs):
        t = np.asarray(t_fs, dtype=float)
        return self.i0 * np.exp(-4.0 * math.log(2.0) * (t / self.tau_fwhm_fs) ** 2)

    def delta_phi(self, t_fs):
        """Slow phase -eta I(t) in rad."""
        return -self.eta * self.intensity(t_fs)

    def delta_omega(self, t_fs):
        """Instantaneous frequency shift eta dI/dt in rad/s."""
        t = np.asarray(t_fs, dtype=float)
        didt = self.intensity(t) * (
            -8.0 * math.log(2.0) * t / self.tau_fwhm_fs**2
        ) / 1e-15
        return self.eta * didt

    def delta_lambda_ext_angstrom(self):
        """Wavelength excursion at the envelope inflection points."""
        lam = self.wavelength_q_nm * 1e-9
        coeff = (
            lam**2 / (2.0 * math.pi * units.C_LIGHT)
            * math.sqrt(8.0 * math.log(2.0)) / (self.tau_fwhm_fs * 1e-15)
            * math.exp(-0.5)
        )
        return coeff * self.eta * self.i0 * 1e10


def analytic_phase_model(model, t_fs=None):
    """(t, delta-phi(t), delta-omega(t), delta-lambda_ext) for the model."""
    if t_fs is None:
        t_fs = np.linspace(-1.5 * model.tau_fwhm_fs, 1.5 * model.tau_fwhm_fs, 301)
    return t_fs, model.delta_phi(t_fs), model.delta_omega(t_fs), \
        model.delta_lambda_ext_angstrom()


# ---------------------------------------------------------------------------
# polarization phase map

@dataclass(frozen=True)
class PhaseMap:
    z_mm: np.ndarray
    gouy_term: np.ndarray          # q * fundamental envelope phase, on axis
    dipole_term: np.ndarray        # tabulated dipole phase at I(0, z)
    total_on_axis: np.ndarray
    radial_families: dict          # r_um -> total phase along z
    compensation_mm: tuple         # z>0 interval of slow total-phase variation
    radial_gouy_coeff: float       # rad/um^2 at the reference plane
    spherical_coeff: float         # rad/um^2 of a spherical wave there
    reference_z_mm: float


def polarization_phase_map(geometry, table, i0, q, z_mm=None, radii_um=(0.0, 5.0, 10.0, 15.0),
                           reference_z_mm=3.8, slope_tol_rad_mm=5.0):
    """On-axis and off-axis phase of the driving polarization, split into the
    focusing (Gouy + radial curvature) term and the tabulated dipole term."""
    if z_mm is None:
        z_mm = np.linspace(-5.0, 5.0, 401)
    b = geometry.confocal_mm
    gouy = q * geometry.gouy_phase(z_mm)
    i_axis = i0 / (1.0 + (2.0 * z_mm / b) ** 2)
    xq, _ = query(table, i_axis)
    # continuous unwrapped dipole phase along z
    dip = np.interp(i_axis, table.intensities, table.phase)
    total = gouy + dip

    families = {}
    for r in radii_um:
        w = geometry.beam_radius_um(z_mm)
        zr = 2.0 * z_mm / b
        geom_phase = q * (geometry.gouy_phase(z_mm) + zr * (r / w) ** 2)
        i_rz = i_axis * np.exp(-2.0 * (r / w) ** 2)
        dip_r = np.interp(i_rz, table.intensities, table.phase)
        families[float(r)] = geom_phase + dip_r

    dz = z_mm[1] - z_mm[0]
    slope = np.gradient(total, dz)
    pos = z_mm > 0
    slow = pos & (np.abs(slope) < slope_tol_rad_mm)
    if np.any(slow):
        zs = z_mm[slow]
        comp = (float(zs[0]), float(zs[-1]))
    else:
        comp = (math.nan, math.nan)

    w_ref = geometry.beam_radius_um(reference_z_mm)
    radial_gouy = q * (2.0 * reference_z_mm / b) / w_ref**2
    k_q = 2.0 * math.pi * q / (geometry.wavelength_nm * 1e-9)
    spherical = k_q / (2.0 * reference_z_mm * 1e-3) * 1e-12  # rad/um^2
    return PhaseMap(z_mm, gouy, dip, total, families, comp,
                    radial_gouy, spherical, reference_z_mm)


# ---------------------------------------------------------------------------
# chirped-drive scenario

def chirp_for_bandwidth(fwhm_fs, target_delta_lambda_nm, wavelength_nm):
    """Quadratic temporal-phase coefficient (rad/fs^2) that broadens a
    Gaussian pulse of the given duration to the target spectral width."""
    tau = fwhm_fs * 1e-15
    d_omega = 2.0 * math.pi * units.C_LIGHT * (target_delta_lambda_nm * 1e-9) \
        / (wavelength_nm * 1e-9) ** 2
    tl = 4.0 * math.log(2.0) / tau
    ratio = d_omega / tl
    if ratio <= 1.0:
        return 0.0
    b = (2.0 * math.log(2.0) / tau**2) * math.sqrt(ratio**2 - 1.0)
    return b * 1e-30  # rad/s^2 -> rad/fs^2


def chirped_drive_scenario(geometry, waveform, jet, table, q, flags=None,
                           slices=None, grid=None):
    """Full pipeline with a chirped fundamental; q times the drive's
    quadratic temporal phase rides on the polarization."""
    from . import propagation as prop

    flags = flags or prop.PropagationFlags()
    slices = slices or prop.SliceSpec(n_slices=512)
    result = prop.run_pulse(geometry, waveform, jet, table, q, grid=grid,
                            flags=flags, slices=slices)
    assembly = PulseAssembly.from_result(result, q, geometry.wavelength_nm)
    return spectral_profile(assembly), assembly, result


# ---------------------------------------------------------------------------
# nonadiabatic short-pulse response

@dataclass(frozen=True)
class NonadiabaticResult:
    times_fs: np.ndarray
    envelope_nonadiabatic: np.ndarray      # |x_q(t)|, carrier removed
    phase_nonadiabatic: np.ndarray
    envelope_adiabatic: np.ndarray
    phase_adiabatic: np.ndarray
    delay_fs: float                        # nonadiabatic peak minus adiabatic
    energy_ev: np.ndarray                  # spectral axis (offsets from q w0)
    spectrum_nonadiabatic: np.ndarray
    spectrum_adiabatic: np.ndarray
    spectral_fwhm_nonadiabatic_ev: float
    spectral_fwhm_adiabatic_ev: float
    redshift_ev: float                     # centroid shift, nonadiabatic - adiabatic
    compressed_times_fs: np.ndarray
    compressed_nonadiabatic: np.ndarray
    compressed_adiabatic: np.ndarray
    compressed_fwhm_nonadiabatic_fs: float
    compressed_fwhm_adiabatic_fs: float


def _peak_time(t, y):
    """Sub-sample peak location by a parabola through the maximum."""
    i = int(np.argmax(y))
    if i in (0, y.size - 1):
        return float(t[i])
    denom = y[i - 1] - 2.0 * y[i] + y[i + 1]
    if denom == 0:
        return float(t[i])
    shift = 0.5 * (y[i - 1] - y[i + 1]) / denom
    return float(t[i] + shift * (t[1] - t[0]))


def _quad_compress(t_fs, signal):
    """Quadratic-spectral-phase compression of one complex envelope."""
    n = signal.size
    dt_s = (t_fs[1] - t_fs[0]) * 1e-15
    spec = np.fft.ifft(signal) * (n * dt_s)
    omega = 2.0 * math.pi * np.fft.fftfreq(n, dt_s)
    w = np.abs(spec) ** 2
    mask = w > 0.05 * np.max(w)
    if np.count_nonzero(mask) < 3:
        raise FitError("spectrum too narrow for quadratic-phase fit")
    order = np.argsort(omega[mask])
    ph = np.unwrap(np.angle(spec[mask][order]))
    c = np.polynomial.polynomial.polyfit(omega[mask][order], ph, 2,
                                         w=np.sqrt(w[mask][order]))
    comp = np.fft.fft(spec * np.exp(-1j * c[2] * omega**2)) / (n * dt_s)
    return np.abs(comp) ** 2


def nonadiabatic_pulse(atom, waveform, q, table, numerics=None,
                       window_width_omega=2.0, span_fwhm=2.5):
    """Carrier-resolved single-atom response of a short pulse vs the
    adiabatic (frozen-envelope) construction from the intensity table.

    The full time-dependent dipole is evaluated without envelope freezing;
    a super-Gaussian window of the given full width (units of the laser
    frequency) centered at q w0 isolates the harmonic, whose inverse
    transform gives the time envelope and phase.  The adiabatic counterpart
    takes x_q at the instantaneous envelope intensity.  Both are compressed
    by quadratic spectral-phase subtraction.
    """
    if window_width_omega >= 4.0:
        raise WindowingError("window reaches the adjacent odd harmonics")
    numerics = numerics or sfa.SfaNumerics(t_samples=256)
    period = waveform.period_au
    h = period / numerics.t_samples
    half_au = units.fs_to_au(span_fwhm * waveform.fwhm_fs)
    n_t = int(2 * math.floor(half_au / h) + 1)
    t_grid = -half_au + h * np.arange(n_t)
    x_t, _, _ = sfa.dipole_time_series(waveform, atom, numerics, t_grid)

    dt_s = h * units.AU_TIME_S
    omega0 = waveform.omega_au / units.AU_TIME_S   # rad/s
    spec = np.fft.ifft(x_t) * (n_t * dt_s)
    omega = 2.0 * math.pi * np.fft.fftfreq(n_t, dt_s)
    spec *= np.exp(1j * omega * (t_grid[0] * units.AU_TIME_S))
    window = np.exp(
        -math.log(2.0)
        * ((omega - q * omega0) / (0.5 * window_width_omega * omega0)) ** 8
    )
    band = spec * window

    # demodulate at q w0 for the slow envelope and phase
    sig = np.fft.fft(band * np.exp(-1j * omega * (t_grid[0] * units.AU_TIME_S))) \
        / (n_t * dt_s)
    t_fs = t_grid * units.FS_PER_AU
    carrier = np.exp(1j * q * omega0 * (t_fs * 1e-15))
    s_non = sig * carrier
    env_non = np.abs(s_non)
    strong = env_non > 0.02 * env_non.max()
    ph_non = np.full(n_t, np.nan)
    ph_non[strong] = np.unwrap(np.angle(s_non[strong]))

    # adiabatic counterpart from the table
    i_t = waveform.envelope_intensity(t_fs)
    i_t = np.minimum(i_t, table.i_max)
    xq, _ = query(table, i_t)
    s_ad = np.asarray(xq)
    env_ad = np.abs(s_ad)
    ph_ad = np.full(n_t, np.nan)
    strong_ad = env_ad > 0.02 * env_ad.max()
    ph_ad[strong_ad] = np.unwrap(np.angle(s_ad[strong_ad]))

    delay = _peak_time(t_fs, env_non**2) - _peak_time(t_fs, env_ad**2)

    # spectra vs photon-energy offset
    ev = units.HBAR * (omega - q * omega0) / units.E_CHARGE
    order = np.argsort(ev)
    spe_non = np.abs(band) ** 2
    spec_ad = np.fft.ifft(s_ad * np.conj(carrier)) * (n_t * dt_s)
    spec_ad *= np.exp(1j * omega * (t_grid[0] * units.AU_TIME_S))
    # adiabatic signal is already a slow envelope around q w0
    ev_ad = units.HBAR * omega / units.E_CHARGE
    spe_ad = np.abs(spec_ad) ** 2
    order_ad = np.argsort(ev_ad)

    w_non = fwhm(ev[order], spe_non[order])
    w_ad = fwhm(ev_ad[order_ad], spe_ad[order_ad])
    cen_non = float(np.sum(ev * spe_non) / np.sum(spe_non))
    cen_ad = float(np.sum(ev_ad * spe_ad) / np.sum(spe_ad))

    comp_non = _quad_compress(t_fs, s_non)
    comp_ad = _quad_compress(t_fs, s_ad)

    return NonadiabaticResult(
        t_fs, env_non, ph_non, env_ad, ph_ad, float(delay),
        ev[order], spe_non[order],
        np.interp(ev[order], ev_ad[order_ad], spe_ad[order_ad]),
        float(w_non), float(w_ad), cen_non - cen_ad,
        t_fs, comp_non, comp_ad,
        fwhm(t_fs, comp_non), fwhm(t_fs, comp_ad),
    )
