"""Render annotated and interpreted utterances as XML or TSV.

The XML form is a token listing:

    <utterances>
      <utterance id="a01">
        <token value="wqtA$">
          <annotation>Arrival_Time_Request</annotation>
          <annotation>Departure_Time_Request</annotation>
        </token>
        <token value="yxrj">
          <annotation>Semantic_Relation</annotation>
        </token>
        ...
      </utterance>
    </utterances>

Relation markers carry the single annotation `Semantic_Relation`; tokens the
ontology does not know carry none. After interpretation a resolved token
carries exactly one annotation, while an unresolved one keeps its candidate
list.

The TSV forms are line-oriented with one token per line and `-` for absent
fields; the interpreted variant appends resolution provenance columns
(outcome, the resolving relation id and the marker's token index).
"""

from __future__ import annotations

from typing import Iterable
from xml.sax.saxutils import escape, quoteattr

from .annotate import AnnotatedUtterance, SEMANTIC_RELATION_LABEL, Status, TokenAnnotation
from .interpret import InterpretedUtterance, Resolution

ANNOTATED_TSV_HEADER = "# ontosem annotations v1: utterance_id\ttoken_index\tsurface\tstatus\tlabels\trelation_ids"
INTERPRETED_TSV_HEADER = (
    "# ontosem interpretations v1: utterance_id\ttoken_index\tsurface\tstatus\tlabel"
    "\tcandidates\toutcome\tvia_relation\trelation_token_index"
)

_ABSENT = "-"


def _token_labels(token: TokenAnnotation) -> list[str]:
    if token.status is Status.RELATION_MARKER:
        return [SEMANTIC_RELATION_LABEL]
    return sorted(token.labels)


def _token_xml(token: TokenAnnotation, indent: str = "    ") -> list[str]:
    labels = _token_labels(token)
    opening = f"{indent}<token value={quoteattr(token.surface)}"
    if not labels:
        return [opening + "/>"]
    lines = [opening + ">"]
    lines.extend(f"{indent}  <annotation>{escape(label)}</annotation>" for label in labels)
    lines.append(f"{indent}</token>")
    return lines


def _utterances_xml(utterances: Iterable) -> str:
    lines = ['<?xml version="1.0" encoding="UTF-8"?>', "<utterances>"]
    for utterance in utterances:
        lines.append(f"  <utterance id={quoteattr(utterance.id)}>")
        for token in utterance.tokens:
            lines.extend(_token_xml(token))
        lines.append("  </utterance>")
    lines.append("</utterances>")
    return "\n".join(lines) + "\n"


def annotated_to_xml(utterances: Iterable[AnnotatedUtterance]) -> str:
    return _utterances_xml(utterances)


def interpreted_to_xml(utterances: Iterable[InterpretedUtterance]) -> str:
    return _utterances_xml(utterances)


def annotated_to_tsv(utterances: Iterable[AnnotatedUtterance]) -> str:
    lines = [ANNOTATED_TSV_HEADER]
    for utterance in utterances:
        for index, token in enumerate(utterance.tokens):
            lines.append(
                "\t".join(
                    (
                        utterance.id,
                        str(index),
                        token.surface,
                        token.status.value,
                        "|".join(sorted(token.labels)) or _ABSENT,
                        "|".join(sorted(token.relation_ids)) or _ABSENT,
                    )
                )
            )
    return "\n".join(lines) + "\n"


def interpreted_to_tsv(utterances: Iterable[InterpretedUtterance]) -> str:
    lines = [INTERPRETED_TSV_HEADER]
    for utterance in utterances:
        resolutions: dict[int, Resolution] = {
            r.token_index: r for r in utterance.resolutions
        }
        for index, token in enumerate(utterance.tokens):
            resolution = resolutions[index]
            if token.status is Status.RELATION_MARKER:
                label = SEMANTIC_RELATION_LABEL
            elif token.status is Status.LABELED:
                (label,) = token.labels
            else:
                label = _ABSENT
            lines.append(
                "\t".join(
                    (
                        utterance.id,
                        str(index),
                        token.surface,
                        token.status.value,
                        label,
                        "|".join(sorted(resolution.candidates)) or _ABSENT,
                        resolution.outcome,
                        resolution.via_relation or _ABSENT,
                        _ABSENT
                        if resolution.relation_token_index is None
                        else str(resolution.relation_token_index),
                    )
                )
            )
    return "\n".join(lines) + "\n"
