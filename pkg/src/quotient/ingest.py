"""OpenAPI 3 corpus loading and semantic signal extraction.

Every (path, HTTP-method) operation of a corpus becomes one
:class:`Endpoint` whose ``signal`` is the lowercased concatenation of the
operation's textual payload: path, operationId/summary/description, tags,
parameter names/descriptions plus their schema harvests, request-body
schema harvests, and response-body schema harvests, in that order.

Schema traversal descends into ``properties``, ``items``, ``allOf``,
``anyOf`` and ``oneOf`` to a maximum depth of 4 and never expands a
``$ref``: only the reference's target name is harvested, which makes
circular references harmless.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import DuplicateEndpointError, IngestError

logger = logging.getLogger(__name__)

MAX_SCHEMA_DEPTH = 4

# enumeration order of methods within a path item
METHOD_ORDER = ("get", "put", "post", "delete", "patch", "head", "options", "trace")

_HARVEST_FIELDS = ("title", "description", "name", "summary")
_COMBINATORS = ("allOf", "anyOf", "oneOf")

_CAMEL_BOUNDARY = re.compile(r"([a-z0-9])([A-Z])")
_WHITESPACE_RUN = re.compile(r"\s+")


@dataclass(frozen=True)
class ExtractionConfig:
    """Switches for the normalisation choices the extraction rules leave open.

    The defaults are what the rest of the artifact (including the default
    pattern vocabulary) assumes; each switch exists so both readings can be
    tested.
    """

    camel_split: bool = True          # exchangeRate -> exchange_rate
    joiner: str = " "                 # between signal segments
    combinators_consume_depth: bool = False  # allOf/anyOf/oneOf descent counts toward the depth ceiling


DEFAULT_CONFIG = ExtractionConfig()


@dataclass(frozen=True)
class CorpusManifest:
    corpus_label: str
    source_paths: tuple[str, ...]
    format_hint: str | None = None  # "yaml" | "json" | None for auto


@dataclass(frozen=True)
class Endpoint:
    corpus_label: str
    endpoint_id: str   # "<METHOD> <path>"
    path: str
    method: str
    signal: str
    source: str = ""   # document the operation came from

    @property
    def key(self) -> tuple[str, str]:
        return (self.corpus_label, self.endpoint_id)


@dataclass
class SchemaHarvest:
    strings: list[str] = field(default_factory=list)
    depth_budget: int = MAX_SCHEMA_DEPTH


def normalize(text: str, config: ExtractionConfig = DEFAULT_CONFIG) -> str:
    """Lowercase ``text``, splitting camelCase boundaries first.

    Underscores are inserted at every lower-to-upper boundary of the
    original text so that camelCased field names line up with the
    snake-styled pattern vocabulary. Whitespace runs collapse to one space.
    """
    if config.camel_split:
        text = _CAMEL_BOUNDARY.sub(r"\1_\2", text)
    return _WHITESPACE_RUN.sub(" ", text.lower()).strip()


def _ref_name(ref: str) -> str:
    """The immediate target name of a reference string."""
    name = ref.rstrip("/").split("/")[-1]
    return name.lstrip("#") or ref


def traverse_schema(schema_node, depth: int, document_context,
                    config: ExtractionConfig = DEFAULT_CONFIG) -> SchemaHarvest:
    """Harvest strings from a schema subtree in pre-order, declaration order.

    ``document_context`` is accepted for interface completeness but never
    consulted: references are not expanded, so no lookup is required.
    """
    harvest = SchemaHarvest()
    _walk_schema(schema_node, depth, config, harvest.strings)
    return harvest


def _walk_schema(node, depth: int, config: ExtractionConfig, out: list[str]) -> None:
    if not isinstance(node, dict):
        return
    for key, value in node.items():
        if key == "$ref" and isinstance(value, str):
            out.append(normalize(_ref_name(value), config))
        elif key in _HARVEST_FIELDS and isinstance(value, str):
            out.append(normalize(value, config))
        elif key == "enum" and isinstance(value, list):
            for item in value:
                if isinstance(item, (str, int, float, bool)):
                    out.append(normalize(str(item), config))
        elif key == "properties" and isinstance(value, dict):
            if depth < MAX_SCHEMA_DEPTH:
                for prop_name, prop_schema in value.items():
                    out.append(normalize(str(prop_name), config))
                    _walk_schema(prop_schema, depth + 1, config, out)
        elif key == "items":
            if depth < MAX_SCHEMA_DEPTH:
                subitems = value if isinstance(value, list) else [value]
                for sub in subitems:
                    _walk_schema(sub, depth + 1, config, out)
        elif key in _COMBINATORS and isinstance(value, list):
            step = 1 if config.combinators_consume_depth else 0
            if depth + step <= MAX_SCHEMA_DEPTH:
                for branch in value:
                    _walk_schema(branch, depth + step, config, out)


def _harvest_media_schemas(container, context: str, document, config: ExtractionConfig,
                           out: list[str]) -> None:
    """Collect schema harvests from a requestBody/response ``content`` map."""
    if not isinstance(container, dict):
        if container is not None:
            logger.warning("malformed %s ignored (expected mapping)", context)
        return
    if "$ref" in container and "content" not in container:
        out.append(normalize(_ref_name(str(container["$ref"])), config))
        return
    content = container.get("content")
    if content is None:
        return
    if not isinstance(content, dict):
        logger.warning("malformed content map in %s ignored", context)
        return
    for media_object in content.values():
        if not isinstance(media_object, dict):
            continue
        schema = media_object.get("schema")
        if schema is not None:
            out.extend(traverse_schema(schema, 0, document, config).strings)


def extract_signal(operation_node, document_context, *, path: str = "",
                   path_item=None, config: ExtractionConfig = DEFAULT_CONFIG) -> str:
    """Build the semantic signal string of one operation.

    Segment order: (1) URL path; (2) operationId, summary, description;
    (3) tags; (4) per parameter its name, description and schema harvest;
    (5) request-body schema harvest; (6) all response-body schema harvests.
    Absent fields contribute nothing; malformed subtrees are skipped with a
    warning.
    """
    segments: list[str] = []
    if path:
        segments.append(normalize(path, config))

    for field_name in ("operationId", "summary", "description"):
        value = operation_node.get(field_name)
        if isinstance(value, str):
            segments.append(normalize(value, config))
        elif value is not None:
            logger.warning("malformed %s ignored in %s", field_name, path)

    tags = operation_node.get("tags")
    if isinstance(tags, list):
        for tag in tags:
            if isinstance(tag, str):
                segments.append(normalize(tag, config))
    elif tags is not None:
        logger.warning("malformed tags ignored in %s", path)

    parameters: list = []
    if isinstance(path_item, dict) and isinstance(path_item.get("parameters"), list):
        parameters.extend(path_item["parameters"])
    op_params = operation_node.get("parameters")
    if isinstance(op_params, list):
        parameters.extend(op_params)
    elif op_params is not None:
        logger.warning("malformed parameters ignored in %s", path)
    for param in parameters:
        if not isinstance(param, dict):
            logger.warning("malformed parameter ignored in %s", path)
            continue
        if "$ref" in param:
            segments.append(normalize(_ref_name(str(param["$ref"])), config))
            continue
        if isinstance(param.get("name"), str):
            segments.append(normalize(param["name"], config))
        if isinstance(param.get("description"), str):
            segments.append(normalize(param["description"], config))
        if param.get("schema") is not None:
            segments.extend(
                traverse_schema(param["schema"], 0, document_context, config).strings)

    _harvest_media_schemas(operation_node.get("requestBody"), f"requestBody of {path}",
                           document_context, config, segments)

    responses = operation_node.get("responses")
    if isinstance(responses, dict):
        for response in responses.values():
            _harvest_media_schemas(response, f"response of {path}",
                                   document_context, config, segments)
    elif responses is not None:
        logger.warning("malformed responses ignored in %s", path)

    return config.joiner.join(seg for seg in segments if seg)


def _collect_source_files(source_paths, base: Path | None = None) -> list[Path]:
    files: list[Path] = []
    for raw in source_paths:
        path = Path(raw)
        if base is not None and not path.is_absolute():
            path = base / path
        if path.is_dir():
            found = sorted(p for p in path.rglob("*")
                           if p.suffix.lower() in (".yaml", ".yml", ".json") and p.is_file())
            if not found:
                raise IngestError(f"no OpenAPI documents found under directory {path}")
            files.extend(found)
        elif path.is_file():
            files.append(path)
        else:
            raise IngestError(f"source path does not exist or is unreadable: {path}")
    return files


def _load_document(path: Path, format_hint: str | None):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    fmt = format_hint
    if fmt in (None, "auto"):
        fmt = "json" if path.suffix.lower() == ".json" else "yaml"
    try:
        doc = json.loads(text) if fmt == "json" else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise IngestError(f"cannot parse {path}: {exc}") from exc
    return doc


def _check_openapi3(doc, path: Path) -> dict:
    if not isinstance(doc, dict):
        raise IngestError(f"{path}: document is not a mapping")
    if "swagger" in doc:
        raise IngestError(
            f"{path}: Swagger 2.x documents are not supported, supply OpenAPI 3")
    version = doc.get("openapi")
    if version is not None and not str(version).startswith("3"):
        raise IngestError(f"{path}: unsupported OpenAPI version {version!r}")
    paths = doc.get("paths")
    if not isinstance(paths, dict):
        raise IngestError(f"{path}: malformed spec, no paths map")
    return paths


def load_corpus(manifest: CorpusManifest,
                config: ExtractionConfig = DEFAULT_CONFIG) -> list[Endpoint]:
    """Enumerate every (path, method) operation of a corpus, in deterministic order.

    Order: manifest source order, then document order of paths, then the
    fixed method order of :data:`METHOD_ORDER`. Raises
    :class:`DuplicateEndpointError` if two documents of the corpus declare
    the same (path, method) pair.
    """
    if not manifest.corpus_label:
        raise IngestError("corpus label must be non-empty")
    files = _collect_source_files(manifest.source_paths)
    if not files:
        raise IngestError(f"corpus {manifest.corpus_label}: no source documents")

    endpoints: list[Endpoint] = []
    seen: dict[tuple[str, str], str] = {}
    for file_path in files:
        doc = _load_document(file_path, manifest.format_hint)
        paths = _check_openapi3(doc, file_path)
        for path_str, path_item in paths.items():
            if not isinstance(path_item, dict):
                logger.warning("malformed path item %s in %s ignored", path_str, file_path)
                continue
            for method in METHOD_ORDER:
                operation = path_item.get(method)
                if operation is None:
                    continue
                if not isinstance(operation, dict):
                    logger.warning("malformed operation %s %s in %s ignored",
                                   method, path_str, file_path)
                    continue
                pair = (str(path_str), method)
                if pair in seen:
                    raise DuplicateEndpointError(
                        f"corpus {manifest.corpus_label}: duplicate operation "
                        f"{method.upper()} {path_str} in {file_path} "
                        f"(first seen in {seen[pair]})")
                seen[pair] = str(file_path)
                signal = extract_signal(operation, doc, path=str(path_str),
                                        path_item=path_item, config=config)
                endpoints.append(Endpoint(
                    corpus_label=manifest.corpus_label,
                    endpoint_id=f"{method.upper()} {path_str}",
                    path=str(path_str),
                    method=method,
                    signal=signal,
                    source=str(file_path),
                ))
    return endpoints


def load_run(manifests, config: ExtractionConfig = DEFAULT_CONFIG) -> list[Endpoint]:
    """Load several corpora into one flat endpoint list, manifest order first."""
    labels = [m.corpus_label for m in manifests]
    for label in labels:
        if labels.count(label) > 1:
            raise IngestError(f"corpus label {label!r} is declared more than once")
    endpoints: list[Endpoint] = []
    for manifest in manifests:
        endpoints.extend(load_corpus(manifest, config))
    return endpoints


def parse_manifest_file(path) -> list[CorpusManifest]:
    """Parse a ``label = path`` manifest file into one manifest per label.

    Lines are ``label = path`` assignments; a label may repeat to add more
    paths. ``#`` starts a comment. Relative paths resolve against the
    manifest file's directory.
    """
    manifest_path = Path(path)
    try:
        lines = manifest_path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IngestError(f"cannot read manifest {manifest_path}: {exc}") from exc

    base = manifest_path.resolve().parent
    ordered: dict[str, list[str]] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise IngestError(
                f"{manifest_path}:{lineno}: expected 'label = path', got {raw!r}")
        label, _, value = line.partition("=")
        label, value = label.strip(), value.strip()
        if not label or not value:
            raise IngestError(
                f"{manifest_path}:{lineno}: expected 'label = path', got {raw!r}")
        source = value if Path(value).is_absolute() else str(base / value)
        ordered.setdefault(label, []).append(source)
    if not ordered:
        raise IngestError(f"manifest {manifest_path} declares no corpora")
    return [CorpusManifest(label, tuple(paths)) for label, paths in ordered.items()]
