"""Two-group discriminant analysis for bank distress."""

import json

from ._core import (
    DistressError,
    Model,
    box_m_test,
    chi_square_sf,
    f_sf,
    fit_csv,
    ln_gamma,
    load_model,
    reg_inc_beta,
    reg_inc_gamma_p,
    run_cli,
    score_eigenvalue,
    wilks_test,
)
from . import _core


def diagnose(model, alpha=0.05, collinearity_threshold=0.8):
    return json.loads(_core.diagnose(model, alpha, collinearity_threshold))


def evaluate(model, panels, zones="derived", mode="raw"):
    """Per-year evaluation of one or more panel CSV texts, as a dict."""
    if isinstance(panels, str):
        panels = [panels]
    return json.loads(_core.evaluate(model, list(panels), zones, mode))


__all__ = [
    "DistressError",
    "Model",
    "box_m_test",
    "chi_square_sf",
    "diagnose",
    "evaluate",
    "f_sf",
    "fit_csv",
    "ln_gamma",
    "load_model",
    "reg_inc_beta",
    "reg_inc_gamma_p",
    "run_cli",
    "score_eigenvalue",
    "wilks_test",
]
