"""Frequency-weighted tag co-occurrence graph with LLM-free recall."""

try:
    # installed layout: the extension sits inside the package
    from ._bambookg import BambooError, NoKnownTagsError, Store
except ImportError:
    # in-tree layout: the extension is on PYTHONPATH next to the build dir
    from _bambookg import BambooError, NoKnownTagsError, Store

__all__ = ["Store", "BambooError", "NoKnownTagsError"]
