"""Pipeline orchestration and the serializable analysis bundle.

``analyze`` runs the stages in order (basic cycles, boroughs, outback,
per-scope 2-club enumeration, reconciliation) and keeps the in-memory
objects; ``PipelineResult.to_bundle`` turns them into label-based records
and computes the whole-graph summary only then.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, model_validator

from closecomm.analysis.factory import enumerate_two_clubs
from closecomm.analysis.interfaces import GLOBAL_SCOPE, Scope, TwoClub
from closecomm.analysis.reconcile import ReconciliationReport, reconcile_with_graph
from closecomm.analysis.reports import type_distribution
from closecomm.config import AnalysisSettings, settings as default_settings
from closecomm.error_handling import ValidationError
from closecomm.graph.boroughs import (
    Borough,
    OutbackReport,
    detect_boroughs,
    locate_bicomponent,
    outback,
    outback_touch_points,
    touch_points,
)
from closecomm.graph.core import Graph, GraphSummary, bicomponents, graph_summary
from closecomm.graph.cycles import Cycle, enumerate_basic_cycles
from closecomm.logging import get_logger, set_run_id
from closecomm.metrics import track_stage

logger = get_logger(__name__)

BUNDLE_VERSION = 1

LabelEdge = Tuple[str, str]


# ============================================================================
# Bundle records
# ============================================================================

class GraphRecord(BaseModel):
    """Whole-graph summary."""
    n: int = Field(description="Node count")
    m: int = Field(description="Edge count")
    density: float
    average_degree: float
    min_degree: int
    max_degree: int
    min_two_degree: int
    max_two_degree: int
    component_count: int
    component_diameters: List[int] = Field(description="Diameter per connected component")
    cutpoints: List[str]
    isolated_nodes: List[str] = Field(default_factory=list)


class BoroughRecord(BaseModel):
    """One borough, by labels."""
    id: int
    nodes: List[str]
    edges: List[LabelEdge]
    diameter: int
    cycle_counts: Dict[str, int] = Field(description="Member basic cycles per length")
    touch_points: List[str] = Field(description="Nodes shared with another borough or the outback")
    bicomponent: int = Field(description="Index of the hosting bicomponent")


class OutbackRecord(BaseModel):
    """Non-basic edges."""
    edges: List[LabelEdge] = Field(default_factory=list)
    bridges: List[LabelEdge] = Field(default_factory=list)
    long_cycle_edges: List[LabelEdge] = Field(default_factory=list)
    touch_points: Dict[str, List[int]] = Field(
        default_factory=dict,
        description="Node shared with the outback -> borough ids",
    )


class ClubRecord(BaseModel):
    """One maximal 2-club."""
    scope: Union[int, Literal["global"]]
    type: Literal["coterie", "social_circle", "hamlet"]
    size: int
    edge_count: int
    separable: bool
    nodes: List[str]
    centers: List[str] = Field(default_factory=list)
    central_pairs: List[LabelEdge] = Field(default_factory=list)


class DistributionRowRecord(BaseModel):
    label: str
    count: int
    percent: float
    size_min: int
    size_max: int
    size_median: int
    coverage: float


class DistributionRecord(BaseModel):
    """Type distribution of one scope; coverage is over scope_node_count."""
    scope_node_count: int
    rows: List[DistributionRowRecord]


class ReconciliationRecord(BaseModel):
    consistent: bool
    missing_in_boroughs: List[List[str]] = Field(default_factory=list)
    missing_in_global: List[List[str]] = Field(default_factory=list)
    type_mismatches: List[List[str]] = Field(default_factory=list)
    uncovered_coteries: List[List[str]] = Field(default_factory=list)


class AnalysisBundle(BaseModel):
    """Everything one pipeline run produced, keyed by node labels."""
    version: int = BUNDLE_VERSION
    settings: Dict[str, Any] = Field(default_factory=dict)
    graph: GraphRecord
    boroughs: List[BoroughRecord] = Field(default_factory=list)
    outback: OutbackRecord = Field(default_factory=OutbackRecord)
    clubs: List[ClubRecord] = Field(default_factory=list)
    reports: Dict[str, DistributionRecord] = Field(default_factory=dict)
    reconciliation: Optional[ReconciliationRecord] = None

    @model_validator(mode="after")
    def check_scope_references(self) -> "AnalysisBundle":
        ids = {b.id for b in self.boroughs}
        for club in self.clubs:
            if club.scope != GLOBAL_SCOPE and club.scope not in ids:
                raise ValueError(f"club references unknown borough {club.scope}")
        for key in self.reports:
            if key != GLOBAL_SCOPE and int(key) not in ids:
                raise ValueError(f"report references unknown borough {key}")
        return self

    def clubs_in(self, scope: Scope) -> List[ClubRecord]:
        return [club for club in self.clubs if club.scope == scope]


# ============================================================================
# Pipeline
# ============================================================================

@dataclass
class PipelineResult:
    """In-memory output of ``analyze``."""
    graph: Graph
    settings: AnalysisSettings
    cycles: List[Cycle]
    boroughs: List[Borough]
    borough_blocks: Dict[int, int]
    outback: OutbackReport
    touch: Dict[int, List[int]]
    outback_touch: Dict[int, List[int]]
    clubs: Dict[Scope, List[TwoClub]] = field(default_factory=dict)
    reconciliation: Optional[ReconciliationReport] = None

    @cached_property
    def summary(self) -> GraphSummary:
        """Whole-graph statistics, computed on first use."""
        with logger.stage("summary"):
            return graph_summary(self.graph)

    def scope_node_count(self, scope: Scope) -> int:
        if scope == GLOBAL_SCOPE:
            return self.graph.n
        return self.boroughs[scope].size

    def scopes(self) -> List[Scope]:
        """Enumerated scopes: boroughs by id, then the whole graph."""
        ordered: List[Scope] = sorted(s for s in self.clubs if s != GLOBAL_SCOPE)
        if GLOBAL_SCOPE in self.clubs:
            ordered.append(GLOBAL_SCOPE)
        return ordered

    def all_clubs(self) -> List[TwoClub]:
        return [club for scope in self.scopes() for club in self.clubs[scope]]

    def borough_clubs(self) -> List[TwoClub]:
        return [club for scope in self.scopes() if scope != GLOBAL_SCOPE for club in self.clubs[scope]]

    def to_bundle(self) -> AnalysisBundle:
        g = self.graph

        def pairs(edges) -> List[LabelEdge]:
            return [(g.node_labels[u], g.node_labels[v]) for u, v in sorted(edges)]

        touched = set(self.touch) | set(self.outback_touch)
        summary = self.summary.to_dict(g)
        summary["isolated_nodes"] = [g.node_labels[u] for u in range(g.n) if not g.adjacency[u]]

        reports = {}
        for scope in self.scopes():
            dist = type_distribution(self.clubs[scope], self.scope_node_count(scope))
            reports[str(scope)] = DistributionRecord(**dist.to_dict())

        reconciliation = None
        if self.reconciliation is not None:
            r = self.reconciliation
            reconciliation = ReconciliationRecord(
                consistent=r.consistent,
                missing_in_boroughs=[g.labels(c) for c in r.missing_in_boroughs],
                missing_in_global=[g.labels(c) for c in r.missing_in_global],
                type_mismatches=[g.labels(c) for c in r.type_mismatches],
                uncovered_coteries=[g.labels(c) for c in r.uncovered_coteries],
            )

        return AnalysisBundle(
            settings=self.settings.model_dump(
                include={
                    "min_club_nodes", "min_club_edges", "cycle_cap",
                    "branch_budget", "scope", "seed_order", "reconcile",
                }
            ),
            graph=GraphRecord(**summary),
            boroughs=[
                BoroughRecord(
                    id=b.id,
                    nodes=g.labels(b.nodes),
                    edges=pairs(b.edge_set),
                    diameter=b.diameter,
                    cycle_counts={str(k): v for k, v in b.cycle_counts.items()},
                    touch_points=g.labels(u for u in b.nodes if u in touched),
                    bicomponent=self.borough_blocks[b.id],
                )
                for b in self.boroughs
            ],
            outback=OutbackRecord(
                edges=pairs(self.outback.non_basic_edges),
                bridges=pairs(self.outback.bridges),
                long_cycle_edges=pairs(self.outback.long_cycle_edges),
                touch_points={g.node_labels[u]: ids for u, ids in self.outback_touch.items()},
            ),
            clubs=[ClubRecord(**club.to_dict(g)) for club in self.all_clubs()],
            reports=reports,
            reconciliation=reconciliation,
        )


def _enumerate_borough(job: Tuple[Graph, Borough, AnalysisSettings]) -> List[TwoClub]:
    g, borough, settings = job
    return enumerate_two_clubs(g, borough, settings)


def _selected_boroughs(boroughs: List[Borough], settings: AnalysisSettings) -> List[Borough]:
    ids = settings.scope_borough_ids
    if ids is None:
        return list(boroughs)
    unknown = [i for i in ids if i >= len(boroughs)]
    if unknown:
        raise ValidationError(
            f"unknown borough id(s) {unknown}; the graph has {len(boroughs)} boroughs",
            field="scope",
        )
    return [boroughs[i] for i in ids]


@track_stage("pipeline")
def analyze(
    g: Graph,
    settings: Optional[AnalysisSettings] = None,
    enumerate_clubs: bool = True,
) -> PipelineResult:
    """Run the full pipeline over ``g``.

    With ``enumerate_clubs=False`` the run stops after the outback stage.

    Raises:
        CycleCapExceededError: too many basic cycles
        EnumerationIncompleteError: branch budget exhausted in a named scope
        ValidationError: unknown borough ids in the scope selection
    """
    settings = settings or default_settings
    if settings.reconcile and settings.scope != "all":
        raise ValidationError("reconciliation needs scope 'all'", field="reconcile")
    run_id = set_run_id()
    logger.info(
        "pipeline started",
        run_id=run_id,
        app=settings.app_name,
        version=settings.app_version,
        n=g.n,
        m=g.m,
        scope=settings.scope,
    )

    cycles = enumerate_basic_cycles(g, settings)
    boroughs = detect_boroughs(g, cycles, settings)
    blocks, _ = bicomponents(g)
    borough_blocks = {b.id: locate_bicomponent(b, blocks) for b in boroughs}
    report = outback(g, boroughs)

    result = PipelineResult(
        graph=g,
        settings=settings,
        cycles=cycles,
        boroughs=boroughs,
        borough_blocks=borough_blocks,
        outback=report,
        touch=touch_points(boroughs),
        outback_touch=outback_touch_points(boroughs, report),
    )

    if enumerate_clubs and settings.enumerates_boroughs:
        selected = _selected_boroughs(boroughs, settings)
        jobs = [(g, b, settings) for b in selected]
        if settings.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=settings.workers) as pool:
                per_borough = list(pool.map(_enumerate_borough, jobs))
        else:
            per_borough = [_enumerate_borough(job) for job in jobs]
        for borough, clubs in zip(selected, per_borough):
            result.clubs[borough.id] = clubs

    if enumerate_clubs and settings.enumerates_global:
        result.clubs[GLOBAL_SCOPE] = enumerate_two_clubs(g, GLOBAL_SCOPE, settings) if g.n >= 3 else []

    if enumerate_clubs and settings.reconcile:
        result.reconciliation = reconcile_with_graph(
            result.clubs[GLOBAL_SCOPE], result.borough_clubs()
        )

    logger.info(
        "pipeline finished",
        boroughs=len(boroughs),
        clubs=sum(len(c) for c in result.clubs.values()),
    )
    return result


def run_pipeline(g: Graph, settings: Optional[AnalysisSettings] = None) -> AnalysisBundle:
    """``analyze`` followed by ``to_bundle``."""
    return analyze(g, settings).to_bundle()
