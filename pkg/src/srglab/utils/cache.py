"""Run manifest and built-graph cache."""

import hashlib
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from srglab.geometry import canonical_form
from srglab.srg import Graph, GraphSpec

UTC = timezone.utc  # datetime.UTC alias (3.11+)

logger = logging.getLogger(__name__)


class RunManifest:
    """Provenance of every file a run writes (run_manifest.yml).

    Tracks:
    - Producing command and its parameters
    - Seed
    - File hashes
    - Timestamps and notes
    """

    def __init__(self, manifest_path: Path):
        """Initialize manifest manager.

        Args:
            manifest_path: Path to run_manifest.yml
        """
        self.manifest_path = manifest_path
        self._data: dict[str, Any] = self._load()

    def _load(self) -> dict[str, Any]:
        if self.manifest_path.exists():
            with open(self.manifest_path) as f:
                return yaml.safe_load(f) or {"files": {}}
        return {"files": {}}

    def _save(self) -> None:
        self.manifest_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.manifest_path, "w") as f:
            yaml.dump(self._data, f, default_flow_style=False, sort_keys=False)

    def record(
        self,
        file_key: str,
        command: str,
        file_path: Path,
        params: dict[str, Any] | None = None,
        seed: int | None = None,
        notes: str = "",
    ) -> None:
        """Record a written file.

        Args:
            file_key: Unique identifier for this entry
            command: CLI subcommand that produced the file
            file_path: Path of the written file
            params: Parameters of the run (JSON-compatible)
            seed: Seed used for sampled checks, if any
            notes: Optional notes
        """
        file_hash = self._compute_hash(file_path) if file_path.exists() else "N/A"
        self._data["files"][file_key] = {
            "command": command,
            "params": json.loads(json.dumps(params or {}, default=str)),
            "seed": seed,
            "timestamp": datetime.now(UTC).isoformat(),
            "file_hash": file_hash,
            "local_path": str(file_path),
            "notes": notes,
        }
        self._save()
        logger.info(f"Manifest: recorded {file_key}")

    def get_entry(self, file_key: str) -> dict[str, Any] | None:
        return self._data.get("files", {}).get(file_key)

    def has_entry(self, file_key: str) -> bool:
        return file_key in self._data.get("files", {})

    @staticmethod
    def _compute_hash(file_path: Path, algorithm: str = "sha256") -> str:
        hasher = hashlib.new(algorithm)
        with open(file_path, "rb") as f:
            for chunk in iter(lambda: f.read(8192), b""):
                hasher.update(chunk)
        return hasher.hexdigest()


class GraphCache:
    """Built graphs stored as compressed .npz files keyed by GraphSpec.key.

    Each store is recorded in the manifest, so a cached adjacency can be traced
    back to the run that built it.
    """

    def __init__(self, cache_dir: Path, manifest: RunManifest | None = None):
        self.cache_dir = cache_dir
        self.manifest = manifest
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def get_cache_path(self, spec: GraphSpec) -> Path:
        return self.cache_dir / f"{spec.key}.npz"

    def has_cached(self, spec: GraphSpec) -> bool:
        return self.get_cache_path(spec).exists()

    def store(self, graph: Graph) -> Path:
        path = self.get_cache_path(graph.spec)
        np.savez_compressed(
            path,
            vertices=graph.vertices,
            packed=graph.packed,
            spec=np.array(json.dumps(graph.spec.to_dict())),
            build_seconds=np.array(graph.build_seconds),
        )
        if self.manifest is not None:
            self.manifest.record(
                f"cache/{graph.spec.key}", "build", path, graph.spec.to_dict(), notes="graph cache"
            )
        logger.info(f"Cached: {graph.spec.label} -> {path}")
        return path

    def load(self, spec: GraphSpec) -> Graph | None:
        """The cached graph for spec, or None when absent or stored for another spec."""
        path = self.get_cache_path(spec)
        if not path.exists():
            return None
        with np.load(path) as data:
            stored = json.loads(str(data["spec"]))
            if stored != spec.to_dict():
                logger.warning(f"Cache entry {path} belongs to {stored}, ignoring")
                return None
            vertices = data["vertices"]
            packed = data["packed"]
            seconds = float(data["build_seconds"])
        form = canonical_form(spec.family, spec.q, spec.r, spec.eps, spec.model, spec.modulus)
        return Graph(spec, vertices, packed, form, seconds)
