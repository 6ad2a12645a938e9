"""Per-subcommand runners behind the CLI.

Each runner takes a validated RunConfig and returns a CommandResult: an exit
status (0 when every check passes, 1 on a mismatch) and a JSON-compatible
payload. Errors from the library propagate as SrgLabError.
"""

import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from srglab.config import DEFAULT_CONFIG, Config
from srglab.construct import (
    LEMMAS,
    GroupKind,
    VertexSet,
    construction_I,
    construction_I_complement,
    construction_I_difference,
    construction_III,
    group_orbits,
    lemma_checks,
    orbit_union_sets,
    read_set_file,
    sample_y,
    write_set_file,
)
from srglab.construct.vertex_set import read_set_header
from srglab.exceptions import UnsupportedParameters
from srglab.geometry import Family, FormModel, parse_coords
from srglab.gf import DEFAULT_MODULI, field_create, format_modulus
from srglab.srg import (
    Graph,
    GraphSpec,
    build_graph,
    expected_params,
    graph_summary,
    measure_params,
)
from srglab.utils import GraphCache, RunManifest
from srglab.verify import check_intriguing, orbit_union_scan

logger = logging.getLogger(__name__)

COMMANDS = ("build", "construct", "verify", "tables", "lemmas", "scan", "fields")
METHODS = ("I", "I-complement", "I-difference", "II", "III")
FORMATS = ("json", "text", "dot")


@dataclass
class RunConfig:
    """One CLI invocation."""

    command: str
    family: str | None = None
    q: int | None = None
    r: int | None = None
    eps: int | None = None
    model: str | None = None
    part: int = 1
    modulus: str | None = None
    method: str | None = None
    t: int | None = None
    group: str | None = None
    y: str | None = None
    k_index: int = 0
    lemma: str | None = None
    set_file: Path | None = None
    output_format: str = "json"
    output: Path | None = None
    max_subsets: int | None = None
    max_vertices: int | None = None
    max_scan_orbits: int | None = None
    seed: int | None = None

    def validate(self) -> None:
        """Reject flag combinations before any computation.

        Raises:
            UnsupportedParameters: a required flag is missing or flags conflict
        """
        if self.command not in COMMANDS:
            raise UnsupportedParameters(f"Unknown command {self.command!r}")
        if self.output_format not in FORMATS:
            raise UnsupportedParameters(f"Unknown format {self.output_format!r}")
        if self.output_format == "dot" and self.command != "build":
            raise UnsupportedParameters("DOT output is only available for build")
        if self.command in ("build", "construct", "scan"):
            missing = [name for name in ("family", "q", "r") if getattr(self, name) is None]
            if missing:
                raise UnsupportedParameters(f"{self.command} needs --{', --'.join(missing)}")
        if self.command == "construct":
            if self.method not in METHODS:
                raise UnsupportedParameters(f"construct needs --method in {', '.join(METHODS)}")
            if self.method in ("I", "I-complement", "I-difference") and self.t is None:
                raise UnsupportedParameters(f"--method {self.method} needs --t")
            if self.y is not None and self.method != "III":
                raise UnsupportedParameters("--y only applies to --method III")
        if self.command == "verify" and self.set_file is None:
            raise UnsupportedParameters("verify needs a set file")
        if self.lemma is not None and self.lemma not in LEMMAS:
            raise UnsupportedParameters(f"Unknown lemma {self.lemma!r}")
        if self.group is not None and self.group not in [k.value for k in GroupKind]:
            raise UnsupportedParameters(f"Unknown group {self.group!r}")

    def apply_caps(self, config: Config) -> Config:
        """config with the caps given on the command line."""
        caps = {
            name: getattr(self, name)
            for name in ("max_vertices", "max_scan_orbits")
            if getattr(self, name) is not None
        }
        return replace(config, **caps) if caps else config

    def graph_spec(self) -> GraphSpec:
        """The graph to build; group constructions default to the split model."""
        model = self.model
        if model is None:
            grouped = self.command == "scan" or self.method == "II"
            model = FormModel.SPLIT if grouped and self.family != Family.NU.value else FormModel.STANDARD
        return GraphSpec(
            self.family, self.q, self.r, self.eps, model, self.part, self.modulus_coeffs()
        )

    def modulus_coeffs(self) -> tuple[int, ...] | None:
        if self.modulus is None:
            return None
        try:
            return tuple(int(c) for c in self.modulus.split(","))
        except ValueError as e:
            raise UnsupportedParameters(
                f"--modulus must be comma-separated integers, got {self.modulus!r}"
            ) from e

    def to_dict(self) -> dict[str, Any]:
        return {k: str(v) if isinstance(v, Path) else v for k, v in self.__dict__.items()}


@dataclass
class CommandResult:
    status: int
    payload: Any
    text: str | None = None
    written: list[Path] = field(default_factory=list)

    def render(self, output_format: str = "json") -> str:
        if self.text is not None and output_format != "json":
            return self.text
        return json.dumps(self.payload, indent=2, sort_keys=True, default=str) + "\n"


def _text_lines(payload: dict[str, Any], prefix: str = "") -> list[str]:
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.extend(_text_lines(value, f"{prefix}{key}."))
        else:
            lines.append(f"{prefix}{key}: {value}")
    return lines


def _graph(rc: RunConfig, config: Config, spec: GraphSpec | None = None) -> Graph:
    cache = GraphCache(config.cache_dir) if config.use_cache else None
    return build_graph(spec or rc.graph_spec(), config, cache)


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------


def run_build(rc: RunConfig, config: Config) -> CommandResult:
    g = _graph(rc, config)
    measured = measure_params(g)
    summary = graph_summary(g, measured, expected_params(g.spec))
    status = 0 if summary["matches_expected"] else 1
    if rc.output_format == "dot":
        return CommandResult(status, summary, text=g.to_dot())
    return CommandResult(status, summary, text="\n".join(_text_lines(summary)) + "\n")


def designated_sets(g: Graph, group: str | None = None) -> list[VertexSet]:
    """Construction II sets of g: orbit unions, or the L-orbits of no-even3 / no-even2."""
    if group == GroupKind.L.value or g.spec.family in (Family.NO_EVEN3, Family.NO_EVEN2):
        return group_orbits(GroupKind.L, g)
    return orbit_union_sets(g)


def construct_set(rc: RunConfig, g: Graph, config: Config) -> VertexSet:
    if rc.method == "I":
        return construction_I(g, rc.t)
    if rc.method == "I-complement":
        return construction_I_complement(g, rc.t)
    if rc.method == "I-difference":
        return construction_I_difference(g, rc.t)
    if rc.method == "II":
        sets = designated_sets(g, rc.group)
        if not 0 <= rc.k_index < len(sets):
            raise UnsupportedParameters(f"--k-index must lie in [0, {len(sets)})")
        return sets[rc.k_index]
    if rc.y is not None:
        y = parse_coords(rc.y, g.field)
    else:
        seed = rc.seed if rc.seed is not None else config.seed
        (y,) = sample_y(g, 1, seed)
    return construction_III(g, y)


def run_construct(rc: RunConfig, config: Config) -> CommandResult:
    g = _graph(rc, config)
    vset = construct_set(rc, g, config)
    suffix = f"_t{rc.t}" if rc.t is not None else (f"_k{rc.k_index}" if rc.method == "II" else "")
    path = rc.output or config.reports_dir / f"{g.spec.key}_{rc.method}{suffix}.set"
    write_set_file(path, vset, g)
    report = check_intriguing(g, vset)
    payload = report.to_dict()
    payload["set_file"] = str(path)
    payload["seed"] = rc.seed if rc.seed is not None else config.seed
    status = 0 if report.passed else 1
    return CommandResult(status, payload, text="\n".join(_text_lines(payload)) + "\n", written=[path])


def run_verify(rc: RunConfig, config: Config) -> CommandResult:
    spec, _ = read_set_header(rc.set_file)
    g = _graph(rc, config, spec)
    vset = read_set_file(rc.set_file, g)
    report = check_intriguing(g, vset)
    payload = report.to_dict()
    status = 0 if report.passed else 1
    return CommandResult(status, payload, text="\n".join(_text_lines(payload)) + "\n")


def run_lemmas(rc: RunConfig, config: Config) -> CommandResult:
    names = [rc.lemma] if rc.lemma else list(LEMMAS)
    params = {"q": rc.q, "r": rc.r} if rc.lemma else {}
    reports = [lemma_checks(name, config, **params) for name in names]
    payload = {"lemmas": [r.to_dict() for r in reports]}
    status = 0 if all(r.passed for r in reports) else 1
    lines = []
    for r in reports:
        lines.append(f"{r.lemma}: {'pass' if r.passed else 'FAIL'} ({r.cases} cases)\n")
        if not r.passed:
            lines.append(r.to_dataframe().head(20).to_string(index=False) + "\n")
    return CommandResult(status, payload, text="".join(lines))


def scan_orbits(g: Graph, group: str | None = None) -> list[VertexSet]:
    if group is not None:
        return group_orbits(group, g)
    if g.spec.family in (Family.NO_PERP, Family.NO_ODD):
        return group_orbits(GroupKind.K, g)
    if g.spec.family is Family.NU:
        return group_orbits(GroupKind.G, g)
    return group_orbits(GroupKind.L, g)


def run_scan(rc: RunConfig, config: Config) -> CommandResult:
    g = _graph(rc, config)
    orbits = scan_orbits(g, rc.group)
    found = orbit_union_scan(g, orbits, rc.max_subsets, config)
    payload = {
        "graph": g.spec.to_dict(),
        "orbits": len(orbits),
        "unions": [{"mask": mask, **report.to_dict()} for mask, report in found],
    }
    text = "".join(
        f"mask={mask} size={r.set_size} h1={r.h1_measured} h2={r.h2_measured} {r.set_type.value}\n"
        for mask, r in found
    )
    return CommandResult(0, payload, text=text)


def run_fields(rc: RunConfig, config: Config) -> CommandResult:
    rows = []
    for (p, n), modulus in sorted(DEFAULT_MODULI.items(), key=lambda item: item[0][0] ** item[0][1]):
        f = field_create(p, n)
        rows.append(
            {
                "field": f"GF({p ** n})",
                "p": p,
                "n": n,
                "modulus": format_modulus(modulus),
                "primitive": list(f.coeffs(f.primitive)),
            }
        )
    text = "".join(f"{r['field']:<8} {r['modulus']:<22} primitive {r['primitive']}\n" for r in rows)
    return CommandResult(0, {"fields": rows}, text=text)


def run_tables(rc: RunConfig, config: Config) -> CommandResult:
    from srglab.process.pipeline import TablesPipeline

    pipeline = TablesPipeline(config)
    df = pipeline.run()
    paths = pipeline.save(df)
    failed = df[~df["passed"]]
    payload = {
        "rows": len(df),
        "failed": len(failed),
        "failures": failed.to_dict(orient="records"),
        "outputs": [str(p) for p in paths],
    }
    status = 0 if failed.empty else 1
    return CommandResult(status, payload, text=df.to_string(index=False) + "\n", written=paths)


RUNNERS = {
    "build": run_build,
    "construct": run_construct,
    "verify": run_verify,
    "tables": run_tables,
    "lemmas": run_lemmas,
    "scan": run_scan,
    "fields": run_fields,
}


def run_command(rc: RunConfig, config: Config | None = None) -> CommandResult:
    """Validate rc, run its subcommand and record written files in the run manifest."""
    config = config or DEFAULT_CONFIG
    rc.validate()
    config = rc.apply_caps(config)
    config.ensure_dirs()
    result = RUNNERS[rc.command](rc, config)
    if rc.output is not None and rc.command != "construct":
        rc.output.parent.mkdir(parents=True, exist_ok=True)
        rc.output.write_text(result.render(rc.output_format))
        result.written.append(rc.output)
    if result.written:
        manifest = RunManifest(config.manifest_path)
        seed = rc.seed if rc.seed is not None else config.seed
        for path in result.written:
            manifest.record(path.name, rc.command, path, rc.to_dict(), seed=seed)
    return result
