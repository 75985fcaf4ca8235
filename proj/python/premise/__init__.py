"""Label-descriptive pattern mining over binary transaction data.

The heavy lifting lives in the compiled extension; this package re-exports
the operations most workflows need: building or loading a database, mining
a pattern set, generating synthetic benchmarks, and scoring against ground
truth.
"""

from premise._core import (
    Database,
    Embeddings,
    MineResult,
    Pattern,
    SearchConfig,
    __version__,
    exact_f1,
    generate_base,
    load_embeddings,
    mine,
    soft_f1,
)

__all__ = [
    "Database",
    "Embeddings",
    "MineResult",
    "Pattern",
    "SearchConfig",
    "__version__",
    "exact_f1",
    "generate_base",
    "load_embeddings",
    "mine",
    "soft_f1",
]
