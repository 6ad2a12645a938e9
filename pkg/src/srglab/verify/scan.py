"""Bounded search over unions of orbits.

Unions of orbit subsets are enumerated in mask order (bit j selects orbit j)
and every intriguing union is reported. Counts are taken from a per-orbit
count matrix, so each mask costs one integer matrix product.
"""

import logging

import numpy as np
from tqdm import tqdm

from srglab.config import DEFAULT_CONFIG, Config
from srglab.construct.vertex_set import Provenance, SetType, VertexSet
from srglab.exceptions import TooManyOrbits, UnsupportedParameters
from srglab.srg import Graph, SrgParams, expected_params
from srglab.verify.intriguing import IntriguingReport, classify

logger = logging.getLogger(__name__)

CHUNK = 512


def mask_members(mask: int, n: int) -> list[int]:
    return [j for j in range(n) if mask >> j & 1]


def _count_matrix(g: Graph, orbits: list[VertexSet]) -> np.ndarray:
    """C[P, j] = |N(P) & O_j|."""
    return np.stack([g.count_into(o.indices) for o in orbits], axis=1)


def orbit_union_scan(
    g: Graph,
    orbits: list[VertexSet],
    max_subsets: int | None = None,
    config: Config | None = None,
    params: SrgParams | None = None,
) -> list[tuple[int, IntriguingReport]]:
    """Intriguing unions of orbit subsets, by increasing mask.

    The empty mask is skipped. Without max_subsets every mask is scanned,
    which needs len(orbits) <= Config.max_scan_orbits.

    Raises:
        TooManyOrbits: too many orbits for a full scan and no max_subsets given
        UnsupportedParameters: the orbits do not partition X
    """
    config = config or DEFAULT_CONFIG
    params = params or expected_params(g.spec)
    n = len(orbits)
    if max_subsets is None and n > config.max_scan_orbits:
        raise TooManyOrbits(
            f"{n} orbits exceed the full-scan limit {config.max_scan_orbits}; pass max_subsets"
        )
    owner = np.full(g.v, -1, dtype=np.int64)
    for j, orbit in enumerate(orbits):
        if np.any(owner[orbit.indices] >= 0):
            raise UnsupportedParameters(f"Orbit {j} overlaps an earlier orbit")
        owner[orbit.indices] = j
    if np.any(owner < 0):
        raise UnsupportedParameters("Orbits do not cover the vertex set")

    total = (1 << n) - 1
    limit = total if max_subsets is None else min(total, max_subsets)
    logger.info(f"Scanning {limit} of {total} orbit unions of {g.spec.label} ({n} orbits)")

    shape_notes = list(dict.fromkeys(note for o in orbits for note in o.notes))
    C = _count_matrix(g, orbits)
    sizes = np.array([o.size for o in orbits], dtype=np.int64)
    bit = np.arange(n, dtype=np.int64)
    found: list[tuple[int, IntriguingReport]] = []
    chunks = range(1, limit + 1, CHUNK)
    for start in tqdm(chunks, desc="masks", disable=not config.show_progress, leave=False):
        masks = np.arange(start, min(start + CHUNK, limit + 1), dtype=np.int64)
        bits = (masks[:, None] >> bit[None, :]) & 1  # (m, n)
        counts = C @ bits.T  # (v, m)
        inside = bits[:, owner].T.astype(bool)  # (v, m)
        for col, mask in enumerate(masks.tolist()):
            report = _mask_report(
                g, counts[:, col], inside[:, col], mask, n, sizes, bits[col], params
            )
            if report is not None:
                if shape_notes:
                    report.notes[:0] = shape_notes
                    report.construction_ok = False
                found.append((mask, report))
    logger.info(f"{len(found)} intriguing unions found")
    return found


def _mask_report(
    g: Graph,
    counts: np.ndarray,
    inside: np.ndarray,
    mask: int,
    n: int,
    sizes: np.ndarray,
    bits: np.ndarray,
    params: SrgParams,
) -> IntriguingReport | None:
    in_counts = counts[inside]
    out_counts = counts[~inside]
    if in_counts.size and np.any(in_counts != in_counts[0]):
        return None
    if out_counts.size and np.any(out_counts != out_counts[0]):
        return None
    h1 = int(in_counts[0])
    h2 = int(out_counts[0]) if out_counts.size else h1
    size = int(sizes @ bits)
    provenance = Provenance("orbit_union", {"mask": mask, "orbits": mask_members(mask, n)})
    set_type = classify(h1, h2, params)
    report = IntriguingReport(
        graph=g.spec.to_dict(),
        set_size=size,
        provenance=str(provenance),
        h1_measured=h1,
        h2_measured=h2,
        set_type=set_type,
        counting_identity_ok=size * (params.k - h1) == (g.v - size) * h2,
    )
    if set_type is SetType.DEGENERATE:
        report.notes.append("trivial union" if size == g.v else "degenerate type")
    return report


def union_of(g: Graph, orbits: list[VertexSet], mask: int) -> VertexSet:
    """The vertex set selected by mask."""
    members = mask_members(mask, len(orbits))
    if not members:
        raise UnsupportedParameters("Empty mask selects no vertices")
    indices = np.sort(np.concatenate([orbits[j].indices for j in members]))
    return VertexSet(
        g.spec,
        g.v,
        indices,
        Provenance("orbit_union", {"mask": mask, "orbits": members}),
        trivial=indices.size == g.v,
        notes=list(dict.fromkeys(note for j in members for note in orbits[j].notes)),
    )
