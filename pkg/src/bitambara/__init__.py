"""Prime spectra of bi-incomplete Tambara functors over finite cyclic groups."""

__version__ = "0.1.0"
