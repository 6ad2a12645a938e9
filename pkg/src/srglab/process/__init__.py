"""Command runners and the acceptance pipeline."""

from srglab.process.commands import CommandResult, RunConfig, run_command
from srglab.process.pipeline import TablesPipeline, default_grid

__all__ = ["CommandResult", "RunConfig", "TablesPipeline", "default_grid", "run_command"]
