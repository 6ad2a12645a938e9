"""Utility modules for srglab."""

from srglab.utils.cache import GraphCache, RunManifest

__all__ = ["GraphCache", "RunManifest"]
