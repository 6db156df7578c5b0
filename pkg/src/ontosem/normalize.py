"""Utterance standardization: tokenize, expand clitics, merge compounds, radicalize.

Raw transcribed utterances are turned into the token sequence the ontology
lexicon was standardized against. The pipeline is:

    transliterate -> tokenize -> expand_clitics -> merge_compounds -> radicalize

All knowledge lives in a NormalizationTables file (JSON, three sections):

    {
      "format_version": 1,
      "compounds": [{"parts": ["IlmADy", "sAEh"], "replacement": "IlmADy_sAEh"}, ...],
      "clitics":   [{"prefix": "l", "expansion": ["Ily"]}, ...],
      "variants":  {"AltrAn": "OtrAn", ...}
    }

Compound replacement defaults to the underscore-joined parts. A clitic rule
rewrites a token `<prefix><rest>` into its expansion tokens followed by
`<rest>`, but only when `<rest>` is a surface form known to the ontology or
the variant table; unknown remainders leave the token untouched. The variant
table maps orthographic and morphological variants (plurals, alternative
spellings) to the base form used by the ontology and must be idempotent.

Normalization is a pure function and a fixed point: running it over its own
output changes nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Collection, Iterable, Sequence

from .buckwalter import transliterate
from .ontology import Ontology

# characters discarded during tokenization (never become tokens)
PUNCTUATION = frozenset("؟?!.,")


class TablesError(ValueError):
    """Malformed or invariant-violating normalization tables file."""

    def __init__(self, message: str, findings: list[str] | None = None):
        self.findings = findings or []
        if self.findings:
            message = message + ": " + "; ".join(self.findings)
        super().__init__(message)


@dataclass(frozen=True)
class RawUtterance:
    id: str
    text: str


@dataclass(frozen=True)
class Token:
    """A normalized token with its character range in the raw text.

    `trace` records the rewrite steps that produced the surface, e.g.
    ("clitic:l",) or ("compound", "variant:AltrAn"). Untouched tokens have an
    empty trace.
    """

    surface: str
    span: tuple[int, int]
    trace: tuple[str, ...] = ()


@dataclass(frozen=True)
class NormalizedUtterance:
    id: str
    tokens: tuple[Token, ...]

    def surfaces(self) -> list[str]:
        return [token.surface for token in self.tokens]


@dataclass(frozen=True)
class CompoundRule:
    parts: tuple[str, ...]
    replacement: str


@dataclass(frozen=True)
class CliticRule:
    prefix: str
    expansion: tuple[str, ...]


@dataclass(frozen=True)
class NormalizationTables:
    compounds: tuple[CompoundRule, ...] = ()
    clitics: tuple[CliticRule, ...] = ()
    variants: dict[str, str] | None = None

    def __post_init__(self):
        object.__setattr__(self, "variants", dict(self.variants or {}))


def load_tables(path: str | Path) -> NormalizationTables:
    """Parse and check a normalization tables file.

    Raises TablesError for bad JSON or schema (message carries line/column)
    and for invariant violations: compound entries with fewer than two parts,
    duplicate compound part sequences, empty clitic rules, or a variant table
    that is not idempotent (chained entries a->b->c).
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise TablesError(f"{path}:{err.lineno}:{err.colno}: {err.msg}") from None
    if not isinstance(doc, dict):
        raise TablesError(f"{path}: top level must be an object")
    if doc.get("format_version") != 1:
        raise TablesError(f"{path}: unsupported format_version {doc.get('format_version')!r}")

    findings: list[str] = []
    compounds: list[CompoundRule] = []
    seen_parts: set[tuple[str, ...]] = set()
    for record in doc.get("compounds", []):
        parts = tuple(str(p) for p in record.get("parts", []))
        replacement = str(record.get("replacement", "_".join(parts)))
        if len(parts) < 2:
            findings.append(f"compound {parts!r} needs at least two parts")
        if parts in seen_parts:
            findings.append(f"compound {parts!r} declared more than once")
        seen_parts.add(parts)
        compounds.append(CompoundRule(parts, replacement))

    clitics: list[CliticRule] = []
    for record in doc.get("clitics", []):
        prefix = str(record.get("prefix", ""))
        expansion = tuple(str(t) for t in record.get("expansion", []))
        if not prefix:
            findings.append("clitic rule with empty prefix")
        if not expansion:
            findings.append(f"clitic rule {prefix!r} with empty expansion")
        clitics.append(CliticRule(prefix, expansion))

    variants = {str(k): str(v) for k, v in doc.get("variants", {}).items()}
    for original, base in sorted(variants.items()):
        if variants.get(base, base) != base:
            findings.append(f"variant chain {original!r} -> {base!r} -> {variants[base]!r}")

    if findings:
        raise TablesError(f"{path}: invalid tables", findings)
    return NormalizationTables(tuple(compounds), tuple(clitics), variants)


def tokenize(raw: RawUtterance) -> list[Token]:
    """Split on whitespace, discarding punctuation; spans index the raw text.

    Arabic script is transliterated first; the mapping is one-to-one so spans
    are valid for the original text as well.
    """
    text = transliterate(raw.text)
    tokens: list[Token] = []
    start = None
    for pos, char in enumerate(text):
        if char.isspace() or char in PUNCTUATION:
            if start is not None:
                tokens.append(Token(text[start:pos], (start, pos)))
                start = None
        elif start is None:
            start = pos
    if start is not None:
        tokens.append(Token(text[start:], (start, len(text))))
    return tokens


def expand_clitics(
    tokens: Sequence[Token], tables: NormalizationTables, vocabulary: Collection[str]
) -> list[Token]:
    """Rewrite clitic-prefixed tokens into marker tokens plus their host.

    Longest prefix wins. Expansion only fires when the remainder after
    stripping the prefix is a known surface form (ontology vocabulary or
    variant table); everything else passes through unchanged, so unknown
    words that merely start with a clitic letter are left intact.
    """
    rules = sorted(tables.clitics, key=lambda r: (-len(r.prefix), r.prefix))
    out: list[Token] = []
    for token in tokens:
        rewritten = None
        for rule in rules:
            rest = token.surface[len(rule.prefix):]
            if token.surface.startswith(rule.prefix) and rest and rest in vocabulary:
                rewritten = (rule, rest)
                break
        if rewritten is None:
            out.append(token)
            continue
        rule, rest = rewritten
        step = f"clitic:{rule.prefix}"
        cut = token.span[0] + len(rule.prefix)
        cut = min(cut, token.span[1])
        for offset, surface in enumerate(rule.expansion):
            # first expansion token covers the prefix; any further ones are zero-width
            span = (token.span[0], cut) if offset == 0 else (cut, cut)
            out.append(Token(surface, span, token.trace + (step,)))
        out.append(Token(rest, (cut, token.span[1]), token.trace + (step,)))
    return out


def merge_compounds(tokens: Sequence[Token], tables: NormalizationTables) -> list[Token]:
    """Replace contiguous runs found in the compound dictionary, longest match
    first, scanning left to right."""
    rules = sorted(tables.compounds, key=lambda r: -len(r.parts))
    out: list[Token] = []
    i = 0
    while i < len(tokens):
        matched = None
        for rule in rules:
            n = len(rule.parts)
            if tuple(t.surface for t in tokens[i:i + n]) == rule.parts:
                matched = rule
                break
        if matched is None:
            out.append(tokens[i])
            i += 1
            continue
        n = len(matched.parts)
        trace = tuple(dict.fromkeys(s for t in tokens[i:i + n] for s in t.trace))
        out.append(
            Token(
                matched.replacement,
                (tokens[i].span[0], tokens[i + n - 1].span[1]),
                trace + ("compound",),
            )
        )
        i += n
    return out


def radicalize(surface: str, tables: NormalizationTables) -> str:
    """Reduce a lexical variant to its base form; unknown tokens are unchanged.

    The variant table is idempotent (enforced at load), so the result is a
    fixed point.
    """
    return tables.variants.get(surface, surface)


def normalize(
    raw: RawUtterance, tables: NormalizationTables, *ontologies: Ontology
) -> NormalizedUtterance:
    """Full standardization pipeline for one utterance.

    The ontologies supply the surface vocabulary that gates clitic expansion;
    pass every ontology the annotator will consult (normally the domain/task
    pair).
    """
    vocabulary = set(tables.variants)
    for ontology in ontologies:
        vocabulary.update(ontology.surface_vocabulary())

    tokens = tokenize(raw)
    tokens = expand_clitics(tokens, tables, vocabulary)
    tokens = merge_compounds(tokens, tables)

    final: list[Token] = []
    for token in tokens:
        base = radicalize(token.surface, tables)
        if base != token.surface:
            token = Token(base, token.span, token.trace + (f"variant:{token.surface}",))
        final.append(token)
    return NormalizedUtterance(id=raw.id, tokens=tuple(final))


def normalize_all(
    utterances: Iterable[RawUtterance], tables: NormalizationTables, *ontologies: Ontology
) -> list[NormalizedUtterance]:
    return [normalize(raw, tables, *ontologies) for raw in utterances]
