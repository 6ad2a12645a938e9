"""Centralized configuration for srglab."""

import os
from dataclasses import dataclass, field
from pathlib import Path


def _env_flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


@dataclass
class Config:
    """srglab configuration."""

    # Output directories
    output_dir: Path = field(default_factory=lambda: Path(os.getenv("SRGLAB_OUTPUT_DIR", "output")))

    # Parameter caps: largest r per q for the orthogonal families
    max_r: dict[int, int] = field(default_factory=lambda: {2: 4, 3: 4, 5: 3, 7: 3})
    # (q, r) tuples allowed for the hermitian family
    nu_params: set[tuple[int, int]] = field(default_factory=lambda: {(2, 3)})
    ignore_caps: bool = field(default_factory=lambda: _env_flag("SRGLAB_IGNORE_CAPS", False))
    max_vertices: int = field(
        default_factory=lambda: int(os.getenv("SRGLAB_MAX_VERTICES", "10000"))
    )

    # Orbit-union scan
    max_scan_orbits: int = 24

    # Adjacency fill block size (rows per block)
    row_block: int = 256

    # Seed for sampled property checks
    seed: int = 20240521

    use_cache: bool = field(default_factory=lambda: _env_flag("SRGLAB_USE_CACHE", True))
    show_progress: bool = True

    @property
    def cache_dir(self) -> Path:
        """Built-graph cache directory."""
        return self.output_dir / "cache"

    @property
    def reports_dir(self) -> Path:
        """Reports and set files directory."""
        return self.output_dir / "reports"

    @property
    def manifest_path(self) -> Path:
        """Run manifest file path."""
        return self.output_dir / "run_manifest.yml"

    def ensure_dirs(self) -> None:
        """Create output directories if they don't exist."""
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.reports_dir.mkdir(parents=True, exist_ok=True)


# Global default config
DEFAULT_CONFIG = Config()
