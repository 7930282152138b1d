"""Geometrically local quantum kernels: shadows, kernels, learning and planning.

Polynomials and configs are plain dicts/lists here; they travel to the C++
core as JSON text.
"""

import json as _json

from . import _core
from ._core import (
    ClassicalShadow,
    InvalidArgument,
    NumericFailure,
    ResourceLimit,
    StateVector,
    derive_seed,
    disturb_inversion_symmetric,
    evolve_random,
    kernel_pca,
    krr_fit,
    order_parameter_z,
    qubit_overlap,
    random_product_state,
    read_pool,
    sample_shadow,
    shadow_kernel,
    svm_fit,
    translation_symmetry_defect,
    truncated_shadow_kernel,
    version,
    xxz_ground_state,
)

__all__ = [
    "ClassicalShadow", "InvalidArgument", "NumericFailure", "ResourceLimit", "StateVector",
    "analyze", "analyze_report", "config_hash", "derive_seed", "disturb_inversion_symmetric",
    "estimate_polynomial", "evaluate_exact", "evolve_random", "expectation", "gram", "kernel_pca",
    "kernel_value", "krr_fit", "order_parameter_z", "plan_report", "plan_resources", "qubit_overlap",
    "random_product_state", "read_pool", "run_experiment", "sample_shadow", "shadow_kernel", "svm_fit",
    "target_polynomial", "translation_symmetry_defect", "truncated_shadow_kernel", "version",
    "xxz_ground_state",
]


def _dump(x):
    return x if isinstance(x, str) else _json.dumps(x)


def target_polynomial(name, n):
    return _json.loads(_core.target_polynomial(name, n))


def expectation(state, pauli):
    """<P> for P given as [[site, letter], ...]."""
    return state.expectation(_dump(pauli))


def evaluate_exact(poly, state):
    return _core.evaluate_exact(_dump(poly), state)


def estimate_polynomial(shadow, poly):
    return _core.estimate_polynomial(shadow, _dump(poly))


def kernel_value(a, b, dims, config):
    return _core.kernel_value(a, b, list(dims), _dump(config))


def gram(shadows, dims, config, standardized=True):
    return _core.gram(list(shadows), list(dims), _dump(config), standardized)


def analyze(poly, dims, delta, zeta):
    return _json.loads(_core.analyze(_dump(poly), list(dims), delta, zeta))


def plan_resources(poly, dims, xi, epsilon, symmetric, kernel="glqk"):
    return _json.loads(_core.plan_resources(_dump(poly), list(dims), xi, epsilon, symmetric, kernel))


def config_hash(config):
    return _core.config_hash(_dump(config))


def plan_report(config):
    return _json.loads(_core.plan_report(_dump(config)))


def analyze_report(config):
    return _json.loads(_core.analyze_report(_dump(config)))


def run_experiment(config):
    """Generate the pool in memory and run every (kernel, N_train, repeat)."""
    return _json.loads(_core.run_experiment(_dump(config)))
