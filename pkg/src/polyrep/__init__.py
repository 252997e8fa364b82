"""polyrep: belief fusion over polyrepresented information needs.

The package models each representation of an information need as an
independent observer whose text induces a subjective opinion, and provides
the consensus and recommendation operators to fuse those opinions, a small
plan language for describing fusion scenarios, and statistical oracles
that validate the calculus against its evidence semantics.
"""

from __future__ import annotations

from .errors import (
    BothDogmatic,
    ConstraintViolation,
    DegenerateDistribution,
    DogmaticOpinion,
    FusionError,
    InvalidFrame,
    LexiconUnavailable,
    MalformedTopic,
    ParseError,
    PolyrepError,
    PropositionMismatch,
    RecommenderMismatch,
    UnknownState,
)
from .opinions import (
    EvidenceCount,
    Opinion,
    expectation,
    from_evidence,
    make_opinion,
    to_evidence,
)
from .fusion import consensus, recommend
from .frames import (
    Frame,
    MassAssignment,
    assign_mass,
    binary_frame,
    focus_opinion,
    make_frame,
)
from .topics import Observer, Topic, parse_topic, parse_topics, serialize_topic
from .evidence import (
    ExtractorConfig,
    bundled_lexicon_path,
    bundled_stopwords_path,
    extract_evidence,
    representation_opinion,
    tokenize,
)
from .plans import (
    Consensus,
    Literal,
    PlanExpr,
    Recommend,
    RepRef,
    TraceEntry,
    evaluate_plan,
    evaluate_plan_traced,
    parse_plan,
    parse_scenarios,
    pretty_print,
)
from .oracle import (
    OracleReport,
    beta_mean_check,
    consensus_evidence_check,
    render_reports,
    run_suite,
)
from .runs import (
    RunError,
    RunOutput,
    machine_line,
    parse_machine_line,
    render_table,
    run_topic,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "PolyrepError",
    "ConstraintViolation",
    "DogmaticOpinion",
    "FusionError",
    "BothDogmatic",
    "PropositionMismatch",
    "RecommenderMismatch",
    "InvalidFrame",
    "UnknownState",
    "MalformedTopic",
    "LexiconUnavailable",
    "ParseError",
    "DegenerateDistribution",
    # opinions
    "Opinion",
    "EvidenceCount",
    "make_opinion",
    "from_evidence",
    "to_evidence",
    "expectation",
    # fusion
    "consensus",
    "recommend",
    # frames
    "Frame",
    "MassAssignment",
    "make_frame",
    "binary_frame",
    "assign_mass",
    "focus_opinion",
    # topics
    "Topic",
    "Observer",
    "parse_topic",
    "parse_topics",
    "serialize_topic",
    # evidence
    "ExtractorConfig",
    "tokenize",
    "extract_evidence",
    "representation_opinion",
    "bundled_lexicon_path",
    "bundled_stopwords_path",
    # plans
    "PlanExpr",
    "RepRef",
    "Literal",
    "Consensus",
    "Recommend",
    "TraceEntry",
    "parse_plan",
    "pretty_print",
    "evaluate_plan",
    "evaluate_plan_traced",
    "parse_scenarios",
    # oracle
    "OracleReport",
    "beta_mean_check",
    "consensus_evidence_check",
    "run_suite",
    "render_reports",
    # runs
    "RunOutput",
    "RunError",
    "run_topic",
    "machine_line",
    "parse_machine_line",
    "render_table",
]
