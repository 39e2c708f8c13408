"""
Analysis Service Layer

Every command of the analyzer lives here once and is shared by the CLI
(scripts/tam_cli.py) and the API routers. Inputs are parsed descriptions,
outputs are JSON-ready documents.
"""

import json
import logging
from typing import Any, Dict, List, Optional, Sequence, Union

from app.config import settings
from app.core.arcs import dominant_arc_decomposition, verify_shield
from app.core.assembly import (
    Assembly, CapExceeded, Finite, Infinite, Saturated, TileSystem, cached_classification,
    classification_cap, rounds, saturate, terminal_assembly, validate_system,
)
from app.core.cuts import all_cuts, analyze_cut
from app.core.exceptions import NoExtremalPath, UsageError
from app.core.fixtures import fixture_instances, load_description
from app.core.harness import (
    GeneratorConfig, Instance, check, enumerate_producible_paths, generate_systems, instances_for, registered, replay,
)
from app.core.models import OutputFormat, SystemDescription, VerticalSide
from app.core.paths import Path, path_from_json
from app.core.rendering import glue_table, render, verdict_table
from app.core.search import budget_of
from app.core.spans import canonical_path, span_decomposition
from app.core.utils import ProcessLogger, save_verification_summary

logger = logging.getLogger(__name__)

SystemSource = Union[str, Dict[str, Any], SystemDescription, TileSystem]
PathSource = Union[Path, Sequence[Dict[str, Any]], Dict[str, Any]]


class AnalysisService:
    """Commands of the analyzer over tile systems and their paths"""

    def load_system(self, source: SystemSource) -> TileSystem:
        """A system from a fixture name, a file path, a parsed description or a system"""
        if isinstance(source, TileSystem):
            return source
        if isinstance(source, str):
            source = load_description(source)
        return validate_system(source)

    def load_path(self, system: TileSystem, source: Optional[PathSource]) -> Optional[Path]:
        """A path from its JSON steps, or from any emitted document carrying a ``path`` key"""
        if source is None or isinstance(source, Path):
            return source
        if isinstance(source, dict):
            if "path" not in source:
                raise UsageError("document has no 'path' entry")
            source = source["path"]
        if not isinstance(source, list):
            raise UsageError("a path is a JSON array of {x, y, tile} steps")
        return path_from_json(system, source)

    # classify / run
    def classify(self, source: SystemSource) -> Dict[str, Any]:
        system = self.load_system(source)
        result = cached_classification(system)
        if isinstance(result, Finite):
            return {"result": "finite", "extents": result.extents.to_dict(), "tiles": len(result.terminal),
                    "cap": classification_cap(system)}
        if isinstance(result, Infinite):
            return {"result": "infinite"}
        return {"result": "non-directed", "position": list(result.position), "types": [result.type_a, result.type_b]}

    def run(self, source: SystemSource, budget: Optional[int] = None) -> Dict[str, Any]:
        """Saturate with a caller-chosen cap instead of the classification bound"""
        system = self.load_system(source)
        cap = budget if budget is not None else classification_cap(system)
        outcome = saturate(system, cap)
        if isinstance(outcome, Saturated):
            doc = render(system, outcome.assembly)
            doc.update({"result": "saturated", "rounds": outcome.rounds, "cap": cap})
            return doc
        if isinstance(outcome, CapExceeded):
            return {"result": "cap-exceeded", "axis": outcome.axis, "position": list(outcome.position), "cap": cap}
        return {"result": "conflict", "position": list(outcome.position), "types": [outcome.type_a, outcome.type_b],
                "cap": cap}

    # paths
    def paths(self, source: SystemSource, max_len: int, budget: Optional[int] = None) -> Dict[str, Any]:
        system = self.load_system(source)
        found = [p.to_json() for p in enumerate_producible_paths(system, max_len, budget)]
        return {"max_len": max_len, "count": len(found), "paths": found}

    def cuts(self, source: SystemSource, path: PathSource, budget: Optional[int] = None) -> Dict[str, Any]:
        system = self.load_system(source)
        p = self.load_path(system, path)
        shared = budget_of(budget, "cuts")
        cuts = [analyze_cut(system, p, cut, shared).to_dict() for cut in all_cuts(system, p)]
        logger.info(f"Path of {len(p)} tiles has {len(cuts)} cuts")
        return {"path": p.to_json(), "cuts": cuts}

    # decompositions
    def decompose(self, source: SystemSource, column: int, path: Optional[PathSource] = None,
                  side: VerticalSide = VerticalSide.SOUTH, arcs: bool = False,
                  budget: Optional[int] = None) -> Dict[str, Any]:
        system = self.load_system(source)
        p = self.load_path(system, path)
        if p is None:
            p = canonical_path(system, column, False, budget)
            if p is None:
                raise NoExtremalPath(f"no canonical path on column {column}", column=column)
        doc: Dict[str, Any] = {"path": p.to_json(), "column": column}
        if arcs:
            doc["arcs"] = dominant_arc_decomposition(system, p, column, side).to_dict()
        else:
            dec = span_decomposition(system, p, column)
            doc["spans"] = dec.to_dict() if dec is not None else None
        doc["glues"] = glue_table(system, p).to_dict(orient="records")
        return doc

    def decompose_table(self, source: SystemSource, doc: Dict[str, Any]) -> str:
        """ASCII form of a decompose document: the glue table plus the decomposition"""
        system = self.load_system(source)
        p = self.load_path(system, doc)
        head = json.dumps({k: v for k, v in doc.items() if k in ("spans", "arcs")}, sort_keys=True)
        return glue_table(system, p).to_string(index=False) + "\n" + head + "\n"

    def canonical(self, source: SystemSource, column: int, strict: bool = False,
                  budget: Optional[int] = None) -> Dict[str, Any]:
        system = self.load_system(source)
        p = canonical_path(system, column, strict, budget)
        if p is None:
            raise NoExtremalPath(f"the canonical construction on column {column} did not settle", column=column)
        dec = span_decomposition(system, p, column)
        return {"column": column, "path": p.to_json(), "spans": dec.to_dict() if dec is not None else None}

    def shield(self, source: SystemSource, path: PathSource, column: int, s_index: int, candidate: PathSource,
               shield_column: Optional[int] = None, budget: Optional[int] = None) -> Dict[str, Any]:
        system = self.load_system(source)
        p = self.load_path(system, path)
        s = self.load_path(system, candidate)
        report = verify_shield(system, p, column, s_index, s, shield_col=shield_column, budget=budget)
        return report.to_dict()

    # rendering
    def render(self, source: SystemSource, path: Optional[PathSource] = None,
               fmt: OutputFormat = OutputFormat.ASCII, budget: Optional[int] = None) -> Any:
        """Draw the terminal assembly, or the last saturation round when growth stops early"""
        system = self.load_system(source)
        p = self.load_path(system, path)
        if isinstance(cached_classification(system), Finite):
            assembly = terminal_assembly(system)
        else:
            assembly = self._last_round(system, budget if budget is not None else classification_cap(system))
        return render(system, assembly, p, fmt)

    def _last_round(self, system: TileSystem, cap: int) -> Assembly:
        last = system.seed
        for state in rounds(system, cap):
            if isinstance(state, Assembly):
                last = state
        return last

    # verification
    def corpus(self, samples: Optional[int] = None, rng_seed: Optional[int] = None, exhaustive: bool = False,
               max_tiles: Optional[int] = None, alphabet_size: Optional[int] = None) -> GeneratorConfig:
        """Generator settings for a run; unset limits keep the GeneratorConfig defaults."""
        limits = {k: v for k, v in (("max_tiles", max_tiles), ("alphabet_size", alphabet_size)) if v is not None}
        return GeneratorConfig(
            samples=samples if samples is not None else settings.VERIFY_SAMPLES,
            rng_seed=rng_seed if rng_seed is not None else settings.RNG_SEED,
            exhaustive=exhaustive,
            **limits,
        )

    def verify_scope(self, samples: Optional[int] = None, rng_seed: Optional[int] = None,
                     budget: Optional[int] = None, cfg: Optional[GeneratorConfig] = None,
                     with_paths: bool = True) -> List[Instance]:
        cfg = cfg if cfg is not None else self.corpus(samples, rng_seed)
        kind = "exhaustive" if cfg.exhaustive else "sample"
        generated = [(f"{kind}-{k}", system) for k, system in enumerate(generate_systems(cfg))]
        max_len = None if with_paths else 0
        scope = list(fixture_instances(max_len))
        scope += list(instances_for(generated, max_len, budget=budget))
        logger.info(f"Verification scope: {len(scope)} instances from {len(generated)} {kind} systems")
        return scope

    def verify(self, suite: str = "all", samples: Optional[int] = None, rng_seed: Optional[int] = None,
               budget: Optional[int] = None, report: Optional[str] = None,
               witness: Optional[Dict[str, Any]] = None, exhaustive: bool = False,
               max_tiles: Optional[int] = None, alphabet_size: Optional[int] = None) -> Dict[str, Any]:
        """Run registered checks; with ``witness``, replay one serialized violation instead"""
        with ProcessLogger("verify_process.log") as plog:
            plog.section(f"VERIFY {suite}")
            cfg = self.corpus(samples, rng_seed, exhaustive, max_tiles, alphabet_size)
            plog.info("Run configuration", context={"budget": budget, **cfg.model_dump()})

            if witness is not None:
                verdicts = [replay(witness, suite, budget).to_dict()]
            else:
                checks = self._select(suite)
                scope = self.verify_scope(budget=budget, cfg=cfg, with_paths=any(c.needs_path for c in checks))
                verdicts = []
                for entry in checks:
                    plog.section(entry.lemma_id)
                    verdict = check(entry.lemma_id, scope, budget).to_dict()
                    context = {"instances": verdict["instances"], "met": verdict["preconditions_met"]}
                    if not verdict["passed"]:
                        plog.failure(f"{len(verdict['violations'])} violations", context=context)
                    elif verdict["note"]:
                        plog.warning(verdict["note"], context=context)
                    else:
                        plog.success("no violations", context=context)
                    verdicts.append(verdict)

            doc = {"suite": suite, "passed": all(v["passed"] for v in verdicts), "verdicts": verdicts}
            if report is not None:
                with open(report, "w", encoding="utf-8") as f:
                    json.dump(doc, f, indent=2, sort_keys=True)
            else:
                save_verification_summary(verdicts, suite)
            plog.info("Verdicts\n" + verdict_table(verdicts).to_string(index=False))
            plog.info("Run finished", context={"passed": doc["passed"], "log": plog.get_log_path()})
        return doc

    def _select(self, suite: str):
        checks = registered(suite)
        if not checks:
            checks = [c for c in registered() if c.lemma_id == suite]
        if not checks:
            raise UsageError(f"no suite or check named {suite!r}", suite=suite)
        return checks


def exit_code_for(command: str, doc: Any) -> int:
    """Exit code of a successful command: classify and verify report failures in their output"""
    if command == "classify" and isinstance(doc, dict) and doc.get("result") == "non-directed":
        return 1
    if command == "verify" and isinstance(doc, dict) and not doc.get("passed", True):
        return 1
    return 0


analysis_service = AnalysisService()
