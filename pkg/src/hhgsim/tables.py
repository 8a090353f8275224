"""Adiabatic single-atom response tabulated over intensity for one harmonic
order: complex amplitude, unwrapped phase and ionization rate per node, with
linear interpolation for the propagator and phase-slope extraction.
"""

import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import sfa, units
from .errors import TableRangeError, TailConvergenceError, TransitionNotFoundError

__all__ = [
    "GridSpec",
    "DipoleTable",
    "PhaseSlope",
    "build_table",
    "query",
    "phase_slope",
    "transition_intensity",
    "save_table",
    "load_table",
    "export_csv",
]

_MAGIC = b"HHGDIPT1"
_VERSION = 1


@dataclass(frozen=True)
class GridSpec:
    """Intensity grid for a table build.

    Uniform (or logarithmic) nodes on [lo, hi] W/cm^2 plus, when ``anchor``
    is set, an exact zero-intensity node that pins the low end of the
    interpolation range (zero amplitude, zero rate).
    """

    lo: float
    hi: float
    n_nodes: int = 250
    spacing: str = "linear"
    anchor: bool = True

    def __post_init__(self):
        if not 0 < self.lo < self.hi:
            raise ValueError("need 0 < lo < hi")
        if self.n_nodes < 2:
            raise ValueError("need at least two nodes")
        if self.spacing not in ("linear", "log"):
            raise ValueError("spacing must be 'linear' or 'log'")

    def nodes(self):
        if self.spacing == "linear":
            return np.linspace(self.lo, self.hi, self.n_nodes)
        return np.geomspace(self.lo, self.hi, self.n_nodes)


@dataclass(frozen=True)
class PhaseSlope:
    """Magnitude of the linear phase-vs-intensity slope over a window."""

    eta: float              # rad per (W/cm^2), reported positive
    window: tuple           # (lo, hi) W/cm^2
    region: str             # 'cutoff' | 'plateau' | 'mixed'
    fit_residual: float     # rad RMS about the fit

    @property
    def eta_per_1e14(self):
        return self.eta * 1e14


@dataclass(frozen=True)
class DipoleTable:
    """Single-order adiabatic response vs intensity.

    ``phase`` is unwrapped by continuation from the lowest computed node;
    ``gamma`` is the total ionization rate in 1/s.
    """

    order: int
    intensities: np.ndarray
    amplitude: np.ndarray
    phase: np.ndarray
    gamma: np.ndarray
    atom: sfa.AtomModel
    wavelength_nm: float

    def __post_init__(self):
        i = self.intensities
        if np.any(np.diff(i) <= 0):
            raise ValueError("intensities must be strictly ascending")
        if np.any(self.amplitude < 0):
            raise ValueError("amplitude must be nonnegative")
        if np.any(self.gamma < 0):
            raise ValueError("gamma must be nonnegative")
        if np.any(np.abs(np.diff(self.phase)) > np.pi):
            raise ValueError("phase jump above pi after unwrapping")

    @property
    def i_min(self):
        return float(self.intensities[0])

    @property
    def i_max(self):
        return float(self.intensities[-1])


def _node_values(args):
    atom, wavelength_nm, order, intensity, numerics = args
    wave = sfa.DriveWaveform.monochromatic(wavelength_nm, intensity)
    try:
        comps, gamma_au = sfa.adiabatic_response(wave, atom, numerics, order)
    except TailConvergenceError as err:
        raise TailConvergenceError(
            err.tail_estimate, err.tolerance,
            context=f"table node at {intensity:.4e} W/cm^2",
        ) from None
    xq = comps.component(order)
    return abs(xq), float(np.angle(xq)), gamma_au / units.AU_TIME_S


def build_table(atom, wavelength_nm, order, grid, numerics=None, threads=1):
    """Tabulate x_q and the ionization rate on the grid's intensity nodes.

    Per-node work is pure, so node evaluations may run in a process pool;
    the assembled table is identical either way.
    """
    if order % 2 == 0:
        raise ValueError("harmonic order must be odd")
    numerics = numerics or sfa.SfaNumerics()
    nodes = grid.nodes()
    jobs = [(atom, wavelength_nm, order, float(i), numerics) for i in nodes]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_node_values, jobs, chunksize=4))
    else:
        results = [_node_values(j) for j in jobs]
    amp = np.array([r[0] for r in results])
    phase = np.unwrap(np.array([r[1] for r in results]))
    gamma = np.array([r[2] for r in results])
    # tiny negative-rate oscillations of the low-intensity response clamp to 0
    gamma = np.maximum(gamma, 0.0)
    intensities = nodes
    if grid.anchor:
        intensities = np.concatenate(([0.0], nodes))
        amp = np.concatenate(([0.0], amp))
        phase = np.concatenate(([phase[0]], phase))
        gamma = np.concatenate(([0.0], gamma))
    return DipoleTable(order, intensities, amp, phase, gamma, atom, wavelength_nm)


def query(table, intensity):
    """Interpolated (complex x_q, gamma [1/s]) at one or many intensities.

    Amplitude and unwrapped phase interpolate separately (complex linear
    interpolation would destroy the magnitude between nodes when the phase
    moves by radians).  No extrapolation: out-of-range intensities raise.
    """
    i = np.asarray(intensity, dtype=float)
    if np.any(i < table.i_min) or np.any(i > table.i_max):
        bad = i[(i < table.i_min) | (i > table.i_max)]
        raise TableRangeError(
            f"intensity {np.atleast_1d(bad)[0]:.4e} outside table range "
            f"[{table.i_min:.4e}, {table.i_max:.4e}] W/cm^2"
        )
    amp = np.interp(i, table.intensities, table.amplitude)
    ph = np.interp(i, table.intensities, table.phase)
    gam = np.interp(i, table.intensities, table.gamma)
    xq = amp * np.exp(1j * ph)
    if np.ndim(intensity) == 0:
        return complex(xq), float(gam)
    return xq, gam


def phase_slope(table, window, region=None):
    """Least-squares linear fit of unwrapped phase vs intensity in a window.

    Returns the slope magnitude (the phase decreases with intensity) and the
    RMS residual.  ``region`` may be given explicitly; otherwise it is
    labelled by comparing the window with the detected transition intensity.
    """
    lo, hi = window
    if lo < table.i_min or hi > table.i_max:
        raise TableRangeError(f"window {window} outside table range")
    mask = (table.intensities >= lo) & (table.intensities <= hi)
    if np.count_nonzero(mask) < 10:
        raise ValueError("phase-slope window must contain at least 10 nodes")
    x = table.intensities[mask]
    y = table.phase[mask]
    coef = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((np.polyval(coef, x) - y) ** 2)))
    if region is None:
        try:
            i_tr = transition_intensity(table)
            if hi <= i_tr:
                region = "cutoff"
            elif lo >= i_tr:
                region = "plateau"
            else:
                region = "mixed"
        except TransitionNotFoundError:
            region = "mixed"
    return PhaseSlope(abs(float(coef[0])), (lo, hi), region, resid)


def _windowed_log_slopes(intensities, amplitude, width):
    n = intensities.size
    ln_a = np.log(np.maximum(amplitude, np.max(amplitude) * 1e-300))
    slopes = np.empty(n)
    for k in range(n):
        lo = max(0, k - width // 2)
        hi = min(n, lo + width)
        lo = max(0, hi - width)
        slopes[k] = np.polyfit(intensities[lo:hi], ln_a[lo:hi], 1)[0]
    return slopes


def transition_intensity(table):
    """Plateau-cutoff transition: first intensity where the windowed
    log-amplitude slope drops below half its steep-rise reference value.

    The reference slope is averaged where the amplitude sits between 1e-3
    and 0.3 of the plateau level (the steep approach); ties break to the
    lower intensity by taking the first crossing.
    """
    mask = table.intensities > 0
    i = table.intensities[mask]
    a = table.amplitude[mask]
    if i.size < 20:
        raise TransitionNotFoundError("too few nodes for slope detection")
    width = max(5, int(round(i.size * 0.06)))
    slopes = _windowed_log_slopes(i, a, width)
    plateau_level = np.median(a[i > 0.6 * i[-1]])
    ref_mask = (a > 1e-3 * plateau_level) & (a < 0.3 * plateau_level) & (i < 0.8 * i[-1])
    if not np.any(ref_mask):
        raise TransitionNotFoundError("no steep-rise region in table range")
    ref = float(np.mean(slopes[ref_mask]))
    if ref <= 0:
        raise TransitionNotFoundError("no rising log-amplitude slope")
    start = int(np.argmax(ref_mask))
    for k in range(start, i.size):
        if slopes[k] < 0.5 * ref:
            return float(i[k])
    raise TransitionNotFoundError("slope never drops below half its reference")


# ---------------------------------------------------------------------------
# persistence

def save_table(table, path):
    """Flat binary layout: magic, version, order, atom id, wavelength and
    node count as 64-bit little-endian header fields, then per-node records
    (intensity, amplitude, phase, gamma) as little-endian doubles."""
    atom_id = table.atom.name.encode("ascii")[:8].ljust(8, b"\0")
    header = _MAGIC + struct.pack(
        "<QQ8sdQ", _VERSION, table.order, atom_id, table.wavelength_nm,
        table.intensities.size,
    )
    records = np.column_stack(
        [table.intensities, table.amplitude, table.phase, table.gamma]
    ).astype("<f8")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(records.tobytes())


def load_table(path):
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _MAGIC:
            raise ValueError(f"not a dipole table file: magic {magic!r}")
        version, order, atom_id, wavelength, n = struct.unpack(
            "<QQ8sdQ", fh.read(40)
        )
        if version != _VERSION:
            raise ValueError(f"unsupported table version {version}")
        data = np.frombuffer(fh.read(n * 4 * 8), dtype="<f8").reshape(n, 4)
    atom = sfa.atom_by_name(atom_id.rstrip(b"\0").decode("ascii"))
    return DipoleTable(
        int(order), data[:, 0].copy(), data[:, 1].copy(), data[:, 2].copy(),
        data[:, 3].copy(), atom, float(wavelength),
    )


def export_csv(table, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write("intensity_wcm2,amplitude_au,phase_rad,gamma_per_s\n")
        for i, a, p, g in zip(
            table.intensities, table.amplitude, table.phase, table.gamma
        ):
            fh.write(f"{i:.17g},{a:.17g},{p:.17g},{g:.17g}\n")
