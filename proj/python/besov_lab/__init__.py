"""Python access to the besov-lab core.

Entries are named by their built-in corpus id or given as a JSON spec
string. Curves and reports come back as plain dicts.
"""

import json

from . import _core
from ._core import (
    BesovError,
    UsageError,
    c_t,
    embedding_constant,
    gauss_constant,
    nu_n,
    sigma_upper_constant,
)

__all__ = [
    "BesovError",
    "UsageError",
    "a_gamma",
    "c_t",
    "chaos_best_approx",
    "default_corpus",
    "embedding_constant",
    "gauss_constant",
    "nu_n",
    "omega_curve",
    "run_suite",
    "sigma_curve",
    "sigma_upper_constant",
]


def _entry(entry):
    return entry if isinstance(entry, str) else json.dumps(entry)


def default_corpus():
    return json.loads(_core.default_corpus_json())


def omega_curve(entry, p, eps, spacing):
    return json.loads(_core.omega_curve_json(_entry(entry), p, list(eps), spacing))


def sigma_curve(entry, p, eps, spacing, budget=60):
    return json.loads(_core.sigma_curve_json(_entry(entry), p, list(eps), spacing, budget))


def a_gamma(entry, p, t):
    return _core.a_gamma(_entry(entry), p, t)


def chaos_best_approx(entry, K):
    """E_N(f) for N = 0..K+1."""
    return _core.chaos_energies(_entry(entry), K)


def run_suite(suite, config=None, out_dir=None):
    """Runs a suite in-process and returns the report as a dict."""
    return json.loads(_core.run_suite_json(suite, json.dumps(config or {}), None if out_dir is None else str(out_dir)))
