"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import itertools

from ontosem.annotate import AnnotatedUtterance, Status, annotate
from ontosem.normalize import NormalizedUtterance, Token
from ontosem.ontology import Concept, Instance, Ontology, Relation

# Tiny synthetic ontology for interpreter enumeration tests: one ambiguous
# surface, markers whose relation targets do / do not qualify, one plain
# surface, plus a marker triggering two relations.
SYNTH = Ontology(
    concepts=(Concept("C1", "domain"), Concept("C2", "domain"), Concept("C3", "domain")),
    instances=(
        Instance("amb", frozenset({"C1", "C2"})),
        Instance("pln", frozenset({"C3"})),
    ),
    relations=(
        Relation("rel_a", frozenset({"m1"}), "C3", "C1"),
        Relation("rel_b", frozenset({"m2"}), "C3", "C2"),
        Relation("rel_cc", frozenset({"m12"}), "C3", "C2"),
        Relation("rel_dd", frozenset({"m12"}), "C3", "C1"),
        Relation("rel_x", frozenset({"mx"}), "C3", "C3"),
    ),
)


def make_normalized(surfaces, uid="u"):
    tokens = tuple(Token(s, (i * 10, i * 10 + len(s))) for i, s in enumerate(surfaces))
    return NormalizedUtterance(id=uid, tokens=tokens)


def annotate_surfaces(surfaces, *ontologies, uid="u"):
    return annotate(make_normalized(surfaces, uid=uid), *ontologies)


def enumerate_surface_tuples(alphabet, max_length):
    for length in range(1, max_length + 1):
        yield from itertools.product(alphabet, repeat=length)


def oracle_resolve(
    annotated: AnnotatedUtterance, index, ontology, consumed, tie_break="left"
):
    """Exhaustive search over (marker, relation) pairs for the minimal key.

    Key = (distance to the ambiguous token, tie-break side, relation id).
    Returns (outcome, label, relation_id, marker_index).
    """
    candidates = annotated.tokens[index].labels
    best = None
    for j, token in enumerate(annotated.tokens):
        if j in consumed or not token.relation_ids:
            continue
        for relation_id in token.relation_ids:
            target = ontology.relation_target(relation_id)
            if target not in candidates:
                continue
            on_preferred_side = (j < index) == (tie_break == "left")
            key = (abs(j - index), 0 if on_preferred_side else 1, relation_id)
            if best is None or key < best[0]:
                best = (key, target, relation_id, j)
    if best is None:
        return ("unresolved", None, None, None)
    return ("resolved", best[1], best[2], best[3])


def oracle_interpret(annotated: AnnotatedUtterance, ontology, tie_break="left"):
    """Left-to-right pass over ambiguous tokens using only oracle_resolve."""
    consumed: set[int] = set()
    outcomes = []
    for index, token in enumerate(annotated.tokens):
        if token.status is not Status.AMBIGUOUS:
            outcomes.append(("unchanged", None, None, None))
            continue
        outcome, label, relation_id, marker = oracle_resolve(
            annotated, index, ontology, consumed, tie_break
        )
        if outcome == "resolved":
            consumed.add(marker)
        outcomes.append((outcome, label, relation_id, marker))
    return outcomes
