"""Within-utterance disambiguation of multi-label tokens via semantic relations.

A token carrying two or more candidate labels is resolved by scanning the
relation-marker tokens of the same utterance in order of increasing distance.
The first marker triggering a relation whose target concept is among the
token's candidates decides the label, and that marker occurrence is consumed:
it cannot resolve a later token. Ambiguous tokens are processed left to
right. When left and right markers are equidistant the preceding one is
preferred by default (`tie_break="left"`); markers triggering several
relations try them in sorted id order.

Interpretation is strictly local to one utterance; no dialogue context is
consulted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import AbstractSet, Iterable

from .annotate import AnnotatedUtterance, Status, TokenAnnotation
from .ontology import Ontology, merge

RESOLVED = "resolved"
UNRESOLVED = "unresolved"
UNCHANGED = "unchanged"

TIE_BREAKS = ("left", "right")


@dataclass(frozen=True)
class Resolution:
    """Outcome of interpreting one token position."""

    token_index: int
    outcome: str  # RESOLVED, UNRESOLVED or UNCHANGED
    candidates: frozenset[str] = frozenset()
    label: str | None = None
    via_relation: str | None = None
    relation_token_index: int | None = None


@dataclass(frozen=True)
class InterpretedUtterance:
    id: str
    tokens: tuple[TokenAnnotation, ...]
    resolutions: tuple[Resolution, ...]
    consumed_relations: frozenset[tuple[str, int]] = field(default_factory=frozenset)


def resolve_token(
    index: int,
    annotated: AnnotatedUtterance,
    ontology: Ontology,
    consumed: AbstractSet[int],
    tie_break: str = "left",
) -> Resolution:
    """Resolve one ambiguous token against the nearest qualifying marker.

    `consumed` holds the token indexes of markers already used. Returns a
    RESOLVED resolution naming the winning relation and its marker position,
    or UNRESOLVED with the surviving candidate set.
    """
    if tie_break not in TIE_BREAKS:
        raise ValueError(f"tie_break must be one of {TIE_BREAKS}, got {tie_break!r}")
    candidates = annotated.tokens[index].labels
    preferred_left = tie_break == "left"

    markers = [
        j
        for j, token in enumerate(annotated.tokens)
        if token.relation_ids and j not in consumed
    ]
    markers.sort(key=lambda j: (abs(j - index), (j < index) != preferred_left))

    for j in markers:
        for relation_id in sorted(annotated.tokens[j].relation_ids):
            target = ontology.relation_target(relation_id)
            if target in candidates:
                return Resolution(
                    token_index=index,
                    outcome=RESOLVED,
                    candidates=candidates,
                    label=target,
                    via_relation=relation_id,
                    relation_token_index=j,
                )
    return Resolution(token_index=index, outcome=UNRESOLVED, candidates=candidates)


def interpret(
    annotated: AnnotatedUtterance, *ontologies: Ontology, tie_break: str = "left"
) -> InterpretedUtterance:
    """Disambiguate every multi-label token of one annotated utterance.

    Unambiguous tokens pass through unchanged. The result records one
    Resolution per token position and the set of consumed marker occurrences.
    """
    ontology = ontologies[0] if len(ontologies) == 1 else merge(*ontologies)
    consumed: set[int] = set()
    tokens: list[TokenAnnotation] = []
    resolutions: list[Resolution] = []

    for index, token in enumerate(annotated.tokens):
        if token.status is not Status.AMBIGUOUS:
            tokens.append(token)
            resolutions.append(
                Resolution(token_index=index, outcome=UNCHANGED, candidates=token.labels)
            )
            continue
        resolution = resolve_token(index, annotated, ontology, consumed, tie_break=tie_break)
        resolutions.append(resolution)
        if resolution.outcome == RESOLVED:
            assert resolution.relation_token_index is not None
            consumed.add(resolution.relation_token_index)
            tokens.append(
                TokenAnnotation(
                    surface=token.surface,
                    labels=frozenset({resolution.label}),
                    relation_ids=frozenset(),
                    status=Status.LABELED,
                )
            )
        else:
            tokens.append(token)

    consumed_pairs = frozenset(
        (r.via_relation, r.relation_token_index)
        for r in resolutions
        if r.outcome == RESOLVED and r.via_relation is not None
    )
    return InterpretedUtterance(
        id=annotated.id,
        tokens=tuple(tokens),
        resolutions=tuple(resolutions),
        consumed_relations=consumed_pairs,
    )


def interpret_all(
    utterances: Iterable[AnnotatedUtterance], *ontologies: Ontology, tie_break: str = "left"
) -> list[InterpretedUtterance]:
    ontology = ontologies[0] if len(ontologies) == 1 else merge(*ontologies)
    return [interpret(u, ontology, tie_break=tie_break) for u in utterances]
