"""Context-free semantic annotation of normalized tokens by ontology lookup.

Every token independently receives the union of concept labels its surface
instantiates in the consulted ontologies, plus the ids of any semantic
relations it triggers. No relationship between tokens is considered here;
disambiguation of multi-label tokens is the interpreter's job.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .normalize import NormalizedUtterance
from .ontology import Ontology

logger = logging.getLogger(__name__)

# label under which relation-marker tokens are reported and scored
SEMANTIC_RELATION_LABEL = "Semantic_Relation"


class Status(str, Enum):
    LABELED = "labeled"
    AMBIGUOUS = "ambiguous"
    RELATION_MARKER = "relation_marker"
    NOT_RECOGNIZED = "not_recognized"


@dataclass(frozen=True)
class TokenAnnotation:
    surface: str
    labels: frozenset[str]
    relation_ids: frozenset[str]
    status: Status

    def __post_init__(self):
        object.__setattr__(self, "labels", frozenset(self.labels))
        object.__setattr__(self, "relation_ids", frozenset(self.relation_ids))


@dataclass(frozen=True)
class AnnotatedUtterance:
    id: str
    tokens: tuple[TokenAnnotation, ...]


def annotate_token(surface: str, *ontologies: Ontology) -> TokenAnnotation:
    labels: frozenset[str] = frozenset()
    relation_ids: frozenset[str] = frozenset()
    for ontology in ontologies:
        labels |= ontology.lookup_concepts(surface)
        relation_ids |= ontology.lookup_relations(surface)

    if relation_ids:
        if labels:
            # impossible on validated ontologies; relation wins so that
            # interpretation can still find its markers
            logger.warning(
                "surface %r is both instance and relation trigger; treating as marker", surface
            )
        return TokenAnnotation(surface, frozenset(), relation_ids, Status.RELATION_MARKER)
    if len(labels) >= 2:
        return TokenAnnotation(surface, labels, frozenset(), Status.AMBIGUOUS)
    if labels:
        return TokenAnnotation(surface, labels, frozenset(), Status.LABELED)
    return TokenAnnotation(surface, frozenset(), frozenset(), Status.NOT_RECOGNIZED)


def annotate(normalized: NormalizedUtterance, *ontologies: Ontology) -> AnnotatedUtterance:
    """Label every token of a normalized utterance; no token is dropped."""
    return AnnotatedUtterance(
        id=normalized.id,
        tokens=tuple(annotate_token(token.surface, *ontologies) for token in normalized.tokens),
    )


def annotate_all(
    utterances: Iterable[NormalizedUtterance], *ontologies: Ontology
) -> list[AnnotatedUtterance]:
    return [annotate(u, *ontologies) for u in utterances]
