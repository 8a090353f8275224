"""Single-atom strong-field response of a noble-gas atom in an intense
low-frequency laser field.

Everything in this module works in Hartree atomic units.  The time-dependent
dipole is the return-time integral over quasi-classical electron excursions:
ionization at ``t - tau``, free oscillation in the field with the stationary
canonical momentum, recombination at ``t``.  A quantum-diffusion prefactor
``(nu + i tau/2)^(-3/2)`` damps long excursions.  Fourier components of the
dipole over one optical period give the complex harmonic amplitudes; the same
integral with the recombination element replaced by the field projection gives
the complex decay rate of the ground state, whose time-averaged real part is
the ionization rate.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import cumulative_simpson

from . import units
from .errors import TailConvergenceError

__all__ = [
    "AtomModel",
    "DriveWaveform",
    "SfaNumerics",
    "HarmonicComponents",
    "ATOMS",
    "atom_by_name",
    "field_and_potential",
    "stationary_momentum",
    "quasiclassical_action",
    "bound_free_dipole",
    "diffusion_prefactor",
    "tau_integrand",
    "dipole_moment",
    "dipole_time_series",
    "ionization_rate",
    "harmonic_components",
    "cutoff_energy",
    "intensity_for_cutoff",
]


@dataclass(frozen=True)
class AtomModel:
    """Species parameters for the single-active-electron response.

    ``ip`` is the ionization potential in a.u.; ``n_el`` the effective number
    of active electrons multiplying dipole and rate; ``alpha`` the width
    constant of the bound-free dipole element, fixed at ``2*ip``.

    ``rate_scale`` calibrates the total ionization rate to the ADK level:
    the hydrogenic s-state dipole element underestimates the p-shell
    ionization strength, and the ground-state details enter only as an
    overall prefactor, so the rate normalization is pinned to the standard
    tunneling rates (helium, an s state, needs none).  It scales the decay
    rate only, never the harmonic components.
    """

    name: str
    ip: float
    n_el: float
    rate_scale: float = 1.0

    def __post_init__(self):
        if self.ip <= 0:
            raise ValueError("ionization potential must be positive")
        if self.n_el < 1:
            raise ValueError("effective electron count must be >= 1")
        if self.rate_scale <= 0:
            raise ValueError("rate calibration must be positive")

    @property
    def alpha(self):
        return 2.0 * self.ip

    @property
    def ip_ev(self):
        return units.au_to_ev(self.ip)


ATOMS = {
    "helium": AtomModel("helium", units.ev_to_au(24.5874), 2.0, 1.0),
    "neon": AtomModel("neon", units.ev_to_au(21.5645), 4.0, 2.0),
    "argon": AtomModel("argon", units.ev_to_au(15.7596), 4.0, 3.0),
}


def atom_by_name(name):
    try:
        return ATOMS[name.lower()]
    except KeyError:
        raise KeyError(f"unknown atom '{name}'; known: {sorted(ATOMS)}") from None


@dataclass(frozen=True)
class DriveWaveform:
    """Fundamental field description.

    The vector potential is the primary quantity,

        A(t) = -(E0/w) f(t) sin(w t + phi0 + b t^2),

    with ``f`` the amplitude envelope, and the electric field is its exact
    analytic derivative E = -dA/dt, so the two never drift apart numerically.
    ``chirp_coeff`` is the quadratic temporal-phase coefficient in rad/fs^2,
    ``carrier_phase`` 0 for a cosine carrier, -pi/2 for sine.  With
    ``adiabatic`` set the envelope is frozen at its peak for single-atom
    evaluations and only enters the macroscopic time slicing.
    """

    wavelength_nm: float
    peak_intensity: float
    envelope_kind: str = "gaussian"
    fwhm_fs: float = 150.0
    chirp_coeff: float = 0.0
    carrier_phase: float = 0.0
    adiabatic: bool = True

    def __post_init__(self):
        if self.wavelength_nm <= 0:
            raise ValueError("wavelength must be positive")
        if self.peak_intensity < 0:
            raise ValueError("peak intensity must be nonnegative")
        if self.envelope_kind not in ("square", "gaussian"):
            raise ValueError(f"unknown envelope '{self.envelope_kind}'")
        if self.envelope_kind == "gaussian" and not self.fwhm_fs > 0:
            raise ValueError("gaussian envelope needs fwhm_fs > 0")

    @classmethod
    def monochromatic(cls, wavelength_nm, intensity, carrier_phase=0.0):
        """Constant-envelope wave, the building block of adiabatic tables."""
        return cls(
            wavelength_nm=wavelength_nm,
            peak_intensity=intensity,
            envelope_kind="square",
            fwhm_fs=math.inf,
            carrier_phase=carrier_phase,
        )

    @property
    def omega_au(self):
        return units.omega_au(self.wavelength_nm)

    @property
    def period_au(self):
        return 2.0 * math.pi / self.omega_au

    @property
    def e0_au(self):
        return units.field_au_from_intensity(self.peak_intensity)

    @property
    def chirp_au(self):
        return self.chirp_coeff * units.FS_PER_AU**2

    @property
    def is_monochromatic(self):
        """True when closed-form integrals of A and A^2 are valid."""
        return (
            self.envelope_kind == "square"
            and math.isinf(self.fwhm_fs)
            and self.chirp_coeff == 0.0
        )

    def at_intensity(self, intensity):
        return replace(self, peak_intensity=intensity)

    def envelope_amplitude(self, t_au):
        """Field-amplitude envelope f(t), 1 at the pulse peak."""
        t_au = np.asarray(t_au, dtype=float)
        if self.envelope_kind == "square":
            if math.isinf(self.fwhm_fs):
                return np.ones_like(t_au)
            half = units.fs_to_au(self.fwhm_fs) / 2.0
            return np.where(np.abs(t_au) <= half, 1.0, 0.0)
        tau = units.fs_to_au(self.fwhm_fs)
        return np.exp(-2.0 * math.log(2.0) * (t_au / tau) ** 2)

    def _envelope_derivative(self, t_au):
        t_au = np.asarray(t_au, dtype=float)
        if self.envelope_kind == "square":
            return np.zeros_like(t_au)
        tau = units.fs_to_au(self.fwhm_fs)
        return -4.0 * math.log(2.0) * t_au / tau**2 * self.envelope_amplitude(t_au)

    def envelope_intensity(self, t_fs):
        """Intensity envelope in W/cm^2 at envelope time t (fs)."""
        f = self.envelope_amplitude(units.fs_to_au(np.asarray(t_fs, dtype=float)))
        return self.peak_intensity * f**2

    def envelope_phase(self, t_fs):
        """Slow temporal phase of the drive envelope (rad): chirp term only."""
        t_fs = np.asarray(t_fs, dtype=float)
        return self.chirp_coeff * t_fs**2

    def carrier_angle(self, t_au):
        t_au = np.asarray(t_au, dtype=float)
        return self.omega_au * t_au + self.carrier_phase + self.chirp_au * t_au**2

    def vector_potential(self, t_au):
        """A(t) in a.u. (polarization component)."""
        theta = self.carrier_angle(t_au)
        return -(self.e0_au / self.omega_au) * self.envelope_amplitude(t_au) * np.sin(theta)

    def field(self, t_au):
        """E(t) = -dA/dt, exact analytic derivative."""
        theta = self.carrier_angle(t_au)
        f = self.envelope_amplitude(t_au)
        dfdt = self._envelope_derivative(t_au)
        dtheta = self.omega_au + 2.0 * self.chirp_au * np.asarray(t_au, dtype=float)
        return (self.e0_au / self.omega_au) * (
            f * dtheta * np.cos(theta) + dfdt * np.sin(theta)
        )


@dataclass(frozen=True)
class SfaNumerics:
    """Discretization of the return-time integral and the time-series FFT.

    ``nu`` regularizes the tau -> 0 end of the diffusion prefactor; the tau
    integral runs to ``tau_max_periods`` optical periods on a uniform grid of
    ``tau_samples`` points per period, and the dipole time series is sampled
    ``t_samples`` times per period.  The remainder beyond tau_max is estimated
    from the last computed period; ``tail_tol`` is the accepted relative size.
    """

    nu: float = 1e-3
    tau_max_periods: int = 4
    tau_samples: int = 512
    t_samples: int = 512
    tail_tol: float = 0.1

    def __post_init__(self):
        if self.nu <= 0:
            raise ValueError("nu must be positive")
        if self.tau_max_periods < 2:
            raise ValueError("tau_max_periods must be >= 2")
        for name in ("tau_samples", "t_samples"):
            n = getattr(self, name)
            if n < 128 or (n & (n - 1)) != 0:
                raise ValueError(f"{name} must be a power of two >= 128")


@dataclass(frozen=True)
class HarmonicComponents:
    """Complex Fourier components x_q of the one-period dipole.

    ``orders`` holds the odd orders up to q_max, ``values`` the matching
    complex amplitudes; ``even_leakage`` is the largest even-order magnitude
    relative to the largest odd one (inversion-symmetry check).
    """

    orders: np.ndarray
    values: np.ndarray
    intensity: float
    wavelength_nm: float
    atom: AtomModel
    even_leakage: float

    def component(self, q):
        idx = np.nonzero(self.orders == q)[0]
        if idx.size == 0:
            raise KeyError(f"order {q} not in components")
        return self.values[idx[0]]


# ---------------------------------------------------------------------------
# elementary pieces

def field_and_potential(waveform, t_au):
    """(E, A) at time t in a.u."""
    return waveform.field(t_au), waveform.vector_potential(t_au)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)


def _integrate_panels(func, a, b, panels):
    """Composite 32-node Gauss-Legendre quadrature of a smooth function."""
    edges = np.linspace(a, b, panels + 1)
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    pts = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = func(pts.ravel()).reshape(pts.shape)
    return float(np.sum(vals @ _GL_WEIGHTS * half))


def stationary_momentum(waveform, t_au, tau_au):
    """Canonical momentum that makes the quasi-classical action stationary:
    the mean of A over the excursion, (1/tau) * int_{t-tau}^{t} A."""
    if tau_au <= 0:
        raise ValueError("return time tau must be positive")
    panels = max(4, int(math.ceil(tau_au / waveform.period_au * 8)))
    integral = _integrate_panels(waveform.vector_potential, t_au - tau_au, t_au, panels)
    return integral / tau_au


def quasiclassical_action(waveform, atom, p, t_au, tau_au):
    """S(p, t, tau) = int_{t-tau}^{t} [ (p - A)^2/2 + I_p ] dt''."""
    if tau_au <= 0:
        raise ValueError("return time tau must be positive")

    def integrand(tt):
        a = waveform.vector_potential(tt)
        return 0.5 * (p - a) ** 2 + atom.ip

    panels = max(4, int(math.ceil(tau_au / waveform.period_au * 16)))
    return _integrate_panels(integrand, t_au - tau_au, t_au, panels)


def bound_free_dipole(p, alpha):
    """Bound-free dipole element d(p) = i 2^{7/2} alpha^{5/4} / pi * p/(p^2+alpha)^3."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    p = np.asarray(p, dtype=float)
    out = 1j * _dipole_scalar(p, alpha)
    return out if out.ndim else complex(out)


def _dipole_scalar(p, alpha):
    """Real radial part of d(p); the full element is i times this."""
    c = 2.0**3.5 * alpha**1.25 / math.pi
    return c * p / (p * p + alpha) ** 3


def diffusion_prefactor(tau_au, nu):
    """Quantum-diffusion damping (pi/(nu + i tau/2))^{3/2}."""
    return (math.pi / (nu + 0.5j * np.asarray(tau_au, dtype=float))) ** 1.5


# ---------------------------------------------------------------------------
# return-time integral on a uniform master grid

def _master_arrays(waveform, t_start, n_points, h):
    """A, E and running integrals of A and A^2 on the uniform master grid."""
    tm = t_start + h * np.arange(n_points)
    a = waveform.vector_potential(tm)
    e = waveform.field(tm)
    if waveform.is_monochromatic:
        e0, w = waveform.e0_au, waveform.omega_au
        theta = waveform.carrier_angle(tm)
        up = e0**2 / (4.0 * w**2)
        ia = (e0 / w**2) * np.cos(theta)
        ia2 = 2.0 * up * tm - (up / w) * np.sin(2.0 * theta)
    else:
        ia = cumulative_simpson(a, dx=h, initial=0.0)
        ia2 = cumulative_simpson(a * a, dx=h, initial=0.0)
    return a, e, ia, ia2


def _simpson_weights(n_intervals, h):
    """Weights over samples 0..n for composite Simpson (n even)."""
    w = np.ones(n_intervals + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


_GL24_NODES, _GL24_WEIGHTS = np.polynomial.legendre.leggauss(24)
_GL4_NODES, _GL4_WEIGHTS = np.polynomial.legendre.leggauss(4)


def _boundary_layer(waveform, atom, nu, t, tau_cut):
    """Return-time integral over the boundary layer tau in (0, tau_cut].

    The diffusion prefactor turns the integrand into ~ sqrt(tau) near zero,
    which uniform-grid rules resolve poorly; integrating in u = sqrt(tau)
    restores smoothness.  Uses exact field evaluations, so it is valid for
    any envelope.  ``t`` is the (n_t,) array of recombination times.
    """
    u_max = math.sqrt(tau_cut)
    u = 0.5 * u_max * (_GL24_NODES + 1.0)
    w_u = 0.5 * u_max * _GL24_WEIGHTS * 2.0 * u      # dtau = 2 u du
    tau = u * u                                      # (n_u,)
    # inner integrals of A and A^2 over [t - tau, t] by 4-point GL (exact for
    # the short smooth stretch)
    tg = t[:, None, None] - 0.5 * tau[None, :, None] * (1.0 - _GL4_NODES[None, None, :])
    a_in = waveform.vector_potential(tg)
    ia = 0.5 * tau[None, :] * np.einsum("ijk,k->ij", a_in, _GL4_WEIGHTS)
    ia2 = 0.5 * tau[None, :] * np.einsum("ijk,k->ij", a_in * a_in, _GL4_WEIGHTS)
    ps = ia / tau[None, :]
    s = atom.ip * tau[None, :] - 0.5 * ia * ps + 0.5 * ia2
    a_t = waveform.vector_potential(t)[:, None]
    a_ret = waveform.vector_potential(t[:, None] - tau[None, :])
    e_ret = waveform.field(t[:, None] - tau[None, :])
    kern = (
        diffusion_prefactor(tau, nu)[None, :]
        * _dipole_scalar(ps - a_t, atom.alpha)
        * e_ret
        * _dipole_scalar(ps - a_ret, atom.alpha)
        * np.exp(-1j * s)
    )
    return kern @ w_u


def _response_core(waveform, atom, numerics, t_start, n_t, h, chunk_rows=1024):
    """Z(t) on the uniform t-grid plus the per-period tail diagnostics.

    Z(t) = int_0^{tau_max} dtau pref(tau) D(ps - A(t)) E(t-tau)
           D(ps - A(t-tau)) exp(-i S);  x(t) = -2 n_el Im Z, gamma = n_el E Z.
    """
    period = waveform.period_au
    # master spacing: refine the t spacing until tau sampling is at least
    # tau_samples per period, so every retarded time lands on a master node
    m = max(1, int(math.ceil(numerics.tau_samples * h / period)))
    h_m = h / m
    n_tau = int(round(numerics.tau_max_periods * period / h_m))
    n_tau += 1 - (n_tau % 2)  # odd node count -> even interval count past tau = h
    n_master = n_tau + (n_t - 1) * m + 1
    a_m, e_m, ia_m, ia2_m = _master_arrays(waveform, t_start - n_tau * h_m, n_master, h_m)

    j = np.arange(1, n_tau + 1)
    tau = j * h_m
    pref = diffusion_prefactor(tau, numerics.nu)
    # composite Simpson over [h, tau_max]; the (0, h] boundary layer where the
    # prefactor gives the integrand a sqrt(tau) character is handled separately
    w = (_simpson_weights(n_tau - 1, h_m) * pref).astype(complex)

    per_tau_period = int(round(period / h_m))
    n_periods = numerics.tau_max_periods
    per_period_idx = np.minimum((j - 1) // per_tau_period, n_periods - 1)

    z = np.empty(n_t, dtype=complex)
    z_periods = np.zeros((n_periods, n_t), dtype=complex)
    alpha = atom.alpha
    ip = atom.ip

    for lo in range(0, n_t, chunk_rows):
        hi = min(lo + chunk_rows, n_t)
        it = n_tau + (lo + np.arange(hi - lo)) * m
        idx_ret = it[:, None] - j[None, :]
        d_ia = ia_m[it][:, None] - ia_m[idx_ret]
        d_ia2 = ia2_m[it][:, None] - ia2_m[idx_ret]
        ps = d_ia / tau[None, :]
        s = ip * tau[None, :] - 0.5 * d_ia * ps + 0.5 * d_ia2
        kern = (
            _dipole_scalar(ps - a_m[it][:, None], alpha)
            * e_m[idx_ret]
            * _dipole_scalar(ps - a_m[idx_ret], alpha)
            * np.exp(-1j * s)
        )
        t_chunk = t_start + (lo + np.arange(hi - lo)) * h
        zb = _boundary_layer(waveform, atom, numerics.nu, t_chunk, h_m)
        z[lo:hi] = kern @ w + zb
        z_periods[0, lo:hi] += zb
        for k in range(n_periods):
            sel = per_period_idx == k
            z_periods[k, lo:hi] += kern[:, sel] @ w[sel]

    it_all = n_tau + np.arange(n_t) * m
    return z, z_periods, e_m[it_all], h


def _tail_estimate(z, z_periods):
    """Relative size of the last computed tau-period's contribution."""
    scale = float(np.sqrt(np.mean(np.abs(z) ** 2)))
    if scale == 0.0:
        return 0.0
    last = float(np.sqrt(np.mean(np.abs(z_periods[-1]) ** 2)))
    return last / scale


def _check_tail(z, z_periods, numerics):
    tail = _tail_estimate(z, z_periods)
    if tail > numerics.tail_tol:
        raise TailConvergenceError(tail, numerics.tail_tol)
    return tail


def tau_integrand(waveform, atom, numerics, t_au, tau_au):
    """|tau|-resolved integrand of the dipole integral (diagnostic)."""
    tau_au = np.atleast_1d(np.asarray(tau_au, dtype=float))
    pref = diffusion_prefactor(tau_au, numerics.nu)
    out = np.empty(tau_au.shape, dtype=complex)
    for i, tau in enumerate(tau_au):
        ps = stationary_momentum(waveform, t_au, tau)
        s = quasiclassical_action(waveform, atom, ps, t_au, tau)
        out[i] = (
            pref[i]
            * _dipole_scalar(ps - waveform.vector_potential(t_au), atom.alpha)
            * waveform.field(t_au - tau)
            * _dipole_scalar(ps - waveform.vector_potential(t_au - tau), atom.alpha)
            * np.exp(-1j * s)
        )
    return out


def dipole_time_series(waveform, atom, numerics, t_grid_au, depletion=False):
    """Real dipole x(t) on a uniform grid; returns (x, Z, tail_estimate)."""
    t_grid_au = np.asarray(t_grid_au, dtype=float)
    h = float(t_grid_au[1] - t_grid_au[0])
    z, z_periods, _, _ = _response_core(
        waveform, atom, numerics, float(t_grid_au[0]), t_grid_au.size, h
    )
    tail = _check_tail(z, z_periods, numerics)
    x = -2.0 * atom.n_el * z.imag
    if depletion:
        gamma = ionization_rate(waveform, atom, numerics)
        x = x * np.exp(-gamma * (t_grid_au - t_grid_au[0]))
    return x, atom.n_el * z, tail


def dipole_moment(waveform, atom, numerics, t_au, depletion=False):
    """Time-dependent dipole at a single time (a.u.).

    Convenience wrapper around the series evaluation; the ``depletion`` flag
    multiplies by exp(-Gamma t) with t measured from the pulse reference zero.
    """
    if waveform.peak_intensity == 0.0:
        return 0.0
    h = waveform.period_au / numerics.t_samples
    grid = t_au + h * np.arange(2)  # minimal uniform grid anchored at t
    x, _, _ = dipole_time_series(waveform, atom, numerics, grid)
    value = float(x[0])
    if depletion:
        gamma = ionization_rate(waveform, atom, numerics)
        value *= math.exp(-gamma * t_au)
    return value


def _one_period_response(waveform, atom, numerics):
    """Z(t) over one optical period of the monochromatized waveform."""
    mono = DriveWaveform.monochromatic(
        waveform.wavelength_nm, waveform.peak_intensity, waveform.carrier_phase
    )
    h = mono.period_au / numerics.t_samples
    z, z_periods, e_t, _ = _response_core(mono, atom, numerics, 0.0, numerics.t_samples, h)
    tail = _check_tail(z, z_periods, numerics)
    return z, e_t, tail


def ionization_rate(waveform, atom, numerics):
    """Cycle-averaged ionization rate (1/a.u. time) at the waveform's
    instantaneous envelope amplitude: twice the real part of the mean complex
    decay rate, scaled by the active-electron count."""
    if waveform.peak_intensity == 0.0:
        return 0.0
    z, e_t, _ = _one_period_response(waveform, atom, numerics)
    gamma_t = atom.n_el * e_t * z
    rate = 2.0 * float(np.mean(gamma_t).real)
    return max(rate, 0.0)


def adiabatic_response(waveform, atom, numerics, q_max):
    """Harmonic components and ionization rate from one shared one-period
    evaluation (the table-build hot path)."""
    if waveform.peak_intensity == 0.0:
        orders = np.arange(1, q_max + 1, 2)
        comps = HarmonicComponents(
            orders, np.zeros(orders.size, complex), 0.0,
            waveform.wavelength_nm, atom, 0.0,
        )
        return comps, 0.0
    z, e_t, _ = _one_period_response(waveform, atom, numerics)
    comps = _components_from_series(
        -2.0 * atom.n_el * z.imag, waveform, atom, q_max
    )
    rate = max(2.0 * float(np.mean(atom.n_el * e_t * z).real), 0.0)
    return comps, rate


def harmonic_components(waveform, atom, numerics, q_max):
    """Fourier components x_q (complex, a.u.) of the one-period dipole for
    odd orders 1..q_max, from the FFT of the time series."""
    if q_max % 2 == 0:
        raise ValueError("q_max must be odd")
    if q_max >= numerics.t_samples // 2:
        raise ValueError("q_max beyond the Nyquist order of t_samples")
    if waveform.peak_intensity == 0.0:
        orders = np.arange(1, q_max + 1, 2)
        return HarmonicComponents(
            orders, np.zeros(orders.size, complex), 0.0, waveform.wavelength_nm, atom, 0.0
        )
    z, _, _ = _one_period_response(waveform, atom, numerics)
    return _components_from_series(-2.0 * atom.n_el * z.imag, waveform, atom, q_max)


def _components_from_series(x_t, waveform, atom, q_max):
    # x(t) = sum_q x_q exp(-i q w t) + c.c.  ->  x_q = (1/T) int x exp(+i q w t)
    spec = np.fft.ifft(x_t)
    orders = np.arange(1, q_max + 1, 2)
    values = spec[orders].copy()
    evens = np.arange(2, q_max + 1, 2)
    odd_max = float(np.max(np.abs(values))) if values.size else 0.0
    even_max = float(np.max(np.abs(spec[evens]))) if evens.size else 0.0
    leakage = even_max / odd_max if odd_max > 0 else 0.0
    return HarmonicComponents(
        orders, values, waveform.peak_intensity, waveform.wavelength_nm, atom, leakage
    )


def cutoff_energy(atom, intensity_wcm2, wavelength_nm, coefficient=3.2):
    """Highest emitted photon energy I_p + coefficient * U_p, in eV."""
    if not 2.0 <= coefficient <= 3.5:
        raise ValueError("cutoff coefficient outside [2, 3.5]")
    return atom.ip_ev + coefficient * units.ponderomotive_ev(intensity_wcm2, wavelength_nm)


def intensity_for_cutoff(atom, order, wavelength_nm, coefficient=3.2):
    """Intensity at which harmonic `order` sits at the cutoff energy."""
    if not 2.0 <= coefficient <= 3.5:
        raise ValueError("cutoff coefficient outside [2, 3.5]")
    photon = order * units.photon_energy_ev(wavelength_nm)
    up_needed = (photon - atom.ip_ev) / coefficient
    if up_needed <= 0:
        raise ValueError("harmonic below the ionization potential")
    up_per_intensity = units.ponderomotive_ev(1.0, wavelength_nm)
    return up_needed / up_per_intensity
