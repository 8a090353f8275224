"""High-order harmonic generation in gas jets: single-atom response,
paraxial propagation through an ionizing medium, and spatial/temporal
coherence of the emitted harmonic beam."""

__version__ = "0.1.0"
