"""Numerical study of the zeros of derivatives of unitary polynomials."""

from .errors import UniderivError
from .linalg import (
    SeedStream,
    UnitaryMatrix,
    eigenvalues_unitary,
    haar_unitary,
    qr_haar_fix,
    sample_ginibre,
)
from .polyroot import (
    Polynomial,
    RootSet,
    critical_points,
    differentiate,
    evaluate,
    find_roots_aberth,
    polish_logderiv,
    poly_from_roots,
    solve_real_root_bracketed,
)
from .spectrum import (
    EigenAngleSpectrum,
    TargetDisc,
    TripleConfiguration,
    estimate_gap_pdf,
    find_wide_triples,
    k_gaps,
    normalized_gaps,
    rotate_to_reference,
    target_disc,
)
from .experiments import (
    ExperimentConfig,
    PerturbationReport,
    RadialSampleSet,
    SpecialZeroReport,
    bimodality_check,
    classify_regions,
    run_perturbation,
    run_radial,
    run_special,
)
from .toymodel import (
    ModifiedToyResult,
    ToyResult,
    build_fn,
    eval_Fn,
    eval_expansion,
    run_modified_toy,
    solve_b0,
    verify_proposition,
)
from .stats_io import Histogram, ReportFile, histogram_pdf, octiles, read_report, write_report

__version__ = "0.1.0"
