"""srglab test suite."""
