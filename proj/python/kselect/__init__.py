"""k-means SSE profiles and k-selection criteria.

Thin Python surface over the native core: generate benchmark datasets, build
best-of-restarts SSE profiles, evaluate the full catalog of k-selection
criteria and render the criterion-comparison table.
"""

from ._kselect import (
    Dataset,
    Profile,
    __version__,
    build_profile,
    comparison_table,
    criteria,
    evaluate,
    generate,
    make_report,
    profile_from_sse,
)

__all__ = [
    "Dataset",
    "Profile",
    "__version__",
    "build_profile",
    "comparison_table",
    "criteria",
    "evaluate",
    "generate",
    "make_report",
    "profile_from_sse",
]
