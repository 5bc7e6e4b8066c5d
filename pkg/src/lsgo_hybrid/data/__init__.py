"""Bundled data files: published results table and tuned parameters."""
