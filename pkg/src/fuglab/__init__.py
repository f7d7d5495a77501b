"""Executable checks around Fuglede's conjecture: tilings and spectra in finite
abelian groups, and numerical Fourier analysis of the triangle and the disk."""

__version__ = "0.1.0"

from .groups import (  # noqa: E402
    DftTable,
    FiniteAbelianGroup,
    GroupSubset,
    abelian_groups,
    canonical_form,
    dft,
    subset_stream,
)
from .spectra import (  # noqa: E402
    find_spectra,
    fuglede_scan,
    orthogonality_graph,
    verify_spectrum,
)
from .tiling import find_tiling_complements, is_tile, verify_tiling  # noqa: E402

__all__ = [
    "DftTable",
    "FiniteAbelianGroup",
    "GroupSubset",
    "abelian_groups",
    "canonical_form",
    "dft",
    "subset_stream",
    "find_spectra",
    "fuglede_scan",
    "orthogonality_graph",
    "verify_spectrum",
    "find_tiling_complements",
    "is_tile",
    "verify_tiling",
]
