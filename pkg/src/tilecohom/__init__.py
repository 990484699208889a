"""tilecohom: exact cohomology computations for planar substitution tiling spaces."""

__version__ = "0.1.0"
