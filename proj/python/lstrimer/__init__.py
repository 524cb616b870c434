"""Python bindings for the lstrimer C++ library."""

from ._lstrimer import (  # noqa: F401
    ConfigError,
    InputError,
    NumericError,
    Regime,
    TrimerParams,
    apply_reality_conditions,
    build_trimer,
    char_poly,
    classify_phase,
    closed_form_bright,
    closed_form_dark,
    closed_form_ep,
    decompose,
    eigen,
    expm,
    gamma_sweep,
    gauge_transform,
    is_cospectral,
    locate_ep,
    poly_roots,
    propagate,
    run_command,
    singlet_sites,
    trajectory,
)

__version__ = "0.1.0"
