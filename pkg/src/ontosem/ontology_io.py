"""Load and save the native ontology file format; export an OWL subset.

The working format is a JSON document (grammar documented in the README):

    {
      "format_version": 1,
      "kind": "domain",
      "concepts":  [{"name": ..., "kind": ..., "gloss": ...}, ...],
      "taxonomy":  [{"child": ..., "parent": ...}, ...],
      "instances": [{"surface": ..., "concepts": [...]}, ...],
      "relations": [{"id": ..., "triggers": [...], "source": ..., "target": ...}, ...]
    }

A concept record may omit "kind", inheriting the document kind; this is how a
file declares a concept shared with its companion ontology. Loading always
validates and refuses malformed ontologies. Saving is deterministic:
collections are sorted by identifier, so equal ontologies serialize to
identical bytes.

OWL export is one-way. It emits one owl:Class per concept, one
rdfs:subClassOf per taxonomy edge, one owl:ObjectProperty per relation with
its rdfs:domain and rdfs:range, and instances as owl:NamedIndividual elements
typed by their concepts.
"""

from __future__ import annotations

import json
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .ontology import (
    Concept,
    Finding,
    Instance,
    KINDS,
    Ontology,
    Relation,
    TaxonomyEdge,
    validate,
)

FORMAT_VERSION = 1

_RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
_RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
_OWL_NS = "http://www.w3.org/2002/07/owl#"


class OntologyFormatError(ValueError):
    """Malformed ontology document (bad JSON, schema violation, bad version)."""


class OntologyValidationError(ValueError):
    """Structurally parseable ontology that violates model invariants."""

    def __init__(self, findings: list[Finding]):
        self.findings = findings
        lines = "; ".join(str(f) for f in findings)
        super().__init__(f"ontology failed validation: {lines}")


def parse_ontology_file(path: str | Path) -> Ontology:
    """Parse a native ontology file without validating model invariants.

    Raises OntologyFormatError for unparseable or schema-violating documents;
    the message carries the line/column for JSON syntax errors.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise OntologyFormatError(f"{path}:{err.lineno}:{err.colno}: {err.msg}") from None
    return ontology_from_document(doc, source=str(path))


def load_ontology(path: str | Path) -> Ontology:
    """Parse, build and validate an ontology file.

    Raises OntologyFormatError for unparseable documents and
    OntologyValidationError when the parsed ontology has a non-empty
    validation report.
    """
    ontology = parse_ontology_file(path)
    findings = validate(ontology)
    if findings:
        raise OntologyValidationError(findings)
    return ontology


def ontology_from_document(doc: object, source: str = "<document>") -> Ontology:
    """Build an (unvalidated) Ontology from a parsed native document."""
    if not isinstance(doc, dict):
        raise OntologyFormatError(f"{source}: top level must be an object")
    version = doc.get("format_version")
    if version is None:
        raise OntologyFormatError(f"{source}: missing required field 'format_version'")
    if version != FORMAT_VERSION:
        raise OntologyFormatError(
            f"{source}: unsupported format_version {version!r} (expected {FORMAT_VERSION})"
        )
    default_kind = doc.get("kind")
    if default_kind not in KINDS:
        raise OntologyFormatError(
            f"{source}: 'kind' must be one of {list(KINDS)}, got {default_kind!r}"
        )

    def records(key: str) -> list[dict]:
        value = doc.get(key, [])
        if not isinstance(value, list) or any(not isinstance(r, dict) for r in value):
            raise OntologyFormatError(f"{source}: {key!r} must be an array of objects")
        return value

    def require(record: dict, key: str, where: str) -> object:
        if key not in record:
            raise OntologyFormatError(f"{source}: {where} record missing {key!r}")
        return record[key]

    concepts = tuple(
        Concept(
            name=str(require(r, "name", "concept")),
            kind=str(r.get("kind", default_kind)),
            gloss=r.get("gloss"),
        )
        for r in records("concepts")
    )
    taxonomy = tuple(
        TaxonomyEdge(
            child=str(require(r, "child", "taxonomy")),
            parent=str(require(r, "parent", "taxonomy")),
        )
        for r in records("taxonomy")
    )
    instances = tuple(
        Instance(
            surface=str(require(r, "surface", "instance")),
            concepts=frozenset(str(c) for c in require(r, "concepts", "instance")),
        )
        for r in records("instances")
    )
    relations = tuple(
        Relation(
            id=str(require(r, "id", "relation")),
            triggers=frozenset(str(t) for t in require(r, "triggers", "relation")),
            source=str(require(r, "source", "relation")),
            target=str(require(r, "target", "relation")),
        )
        for r in records("relations")
    )
    return Ontology(concepts=concepts, taxonomy=taxonomy, instances=instances, relations=relations)


def ontology_to_document(ontology: Ontology, kind: str | None = None) -> dict:
    """Serializable record mirror of an ontology.

    `kind` sets the document kind; by default the majority kind among the
    declared concepts is used (ties and empty ontologies fall back to
    "domain"). Every concept record carries its kind explicitly, so the
    document kind is informational on save.
    """
    if kind is None:
        tally = {k: 0 for k in KINDS}
        for concept in ontology.concepts:
            if concept.kind in tally:
                tally[concept.kind] += 1
        kind = max(KINDS, key=lambda k: tally[k])  # first KINDS entry wins ties

    def concept_record(c: Concept) -> dict:
        record: dict = {"name": c.name, "kind": c.kind}
        if c.gloss is not None:
            record["gloss"] = c.gloss
        return record

    return {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "concepts": [concept_record(c) for c in ontology.concepts],
        "taxonomy": [{"child": e.child, "parent": e.parent} for e in ontology.taxonomy],
        "instances": [
            {"surface": i.surface, "concepts": sorted(i.concepts)} for i in ontology.instances
        ],
        "relations": [
            {"id": r.id, "triggers": sorted(r.triggers), "source": r.source, "target": r.target}
            for r in ontology.relations
        ],
    }


def save_ontology(ontology: Ontology, path: str | Path, kind: str | None = None) -> None:
    """Write the native document for a validated ontology (deterministic bytes)."""
    doc = ontology_to_document(ontology, kind=kind)
    text = json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def export_owl(ontology: Ontology) -> str:
    """Render a validated ontology as an OWL (RDF/XML subset) document.

    Output is deterministic: elements are sorted by identifier. Only the
    constructs the model uses are emitted; the document is well-formed XML
    with the rdf/rdfs/owl namespaces declared on the single rdf:RDF root.
    """
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        "<rdf:RDF",
        f'    xmlns:rdf={quoteattr(_RDF_NS)}',
        f'    xmlns:rdfs={quoteattr(_RDFS_NS)}',
        f'    xmlns:owl={quoteattr(_OWL_NS)}>',
    ]
    parents: dict[str, list[str]] = {}
    for edge in ontology.taxonomy:
        parents.setdefault(edge.child, []).append(edge.parent)

    for concept in ontology.concepts:
        children: list[str] = []
        for parent in sorted(parents.get(concept.name, [])):
            children.append(f"    <rdfs:subClassOf rdf:resource={quoteattr(parent)}/>")
        if concept.gloss is not None:
            children.append(f"    <rdfs:label>{escape(concept.gloss)}</rdfs:label>")
        lines.extend(_element("owl:Class", concept.name, children))

    for relation in ontology.relations:
        children = [
            f"    <rdfs:domain rdf:resource={quoteattr(relation.source)}/>",
            f"    <rdfs:range rdf:resource={quoteattr(relation.target)}/>",
        ]
        lines.extend(_element("owl:ObjectProperty", relation.id, children))

    for instance in ontology.instances:
        children = [
            f"    <rdf:type rdf:resource={quoteattr(name)}/>" for name in sorted(instance.concepts)
        ]
        lines.extend(_element("owl:NamedIndividual", instance.surface, children))

    lines.append("</rdf:RDF>")
    return "\n".join(lines) + "\n"


def _element(tag: str, about: str, children: list[str]) -> list[str]:
    opening = f"  <{tag} rdf:about={quoteattr(about)}"
    if not children:
        return [opening + "/>"]
    return [opening + ">", *children, f"  </{tag}>"]
