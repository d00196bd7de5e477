"""Exact experiments with ergodic averages on coset spaces.

Thin python surface over the C++ core: element arithmetic, coset keys,
Folner defects, averaged norms, contraction certificates and the experiment
runner.
"""

try:
    from . import _cosetlab as _core
except ImportError:  # in-tree builds expose the extension directly
    import _cosetlab as _core

__all__ = [
    "BudgetError",
    "ConfigError",
    "FiniteSet",
    "FolnerGen",
    "GroupElement",
    "InvariantFailure",
    "PreconditionError",
    "Subgroup",
    "UsageError",
    "__version__",
    "adversarial_translate",
    "avg_norm_sq_delta",
    "conjugate",
    "contract_hnn",
    "contract_sym",
    "coset_key",
    "element",
    "encode",
    "folner",
    "generate",
    "identity_of",
    "index_growth",
    "inverse",
    "left_defect",
    "member",
    "multiply",
    "right_defect",
    "run_experiment",
    "subgroup",
    "translated_right",
]

for _name in __all__:
    globals()[_name] = getattr(_core, _name)
del _name, _core
