# Copyright 2022 Ben Kehoe
#
# Licensed under the Apache License, Version 2.0 (the "License"). You
# may not use this file except in compliance with the License. A copy of
# the License is located at
#
# https://www.apache.org/licenses/LICENSE-2.0
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
# ANY KIND, either express or implied. See the License for the specific
# language governing permissions and limitations under the License.

__all__ = (
    "JSONSerializationConfig",
    "set_default_json_serialization_config",
    "get_default_json_serialization_config",
    "json_dump",
    "RESULT_SCHEMA",
    "RESULT_SCHEMA_VERSION",
    "CompiledFastJSONSchema",
    "validate_result_document",
    "result_document",
    "terms_from_document",
    "ResultCache",
)

import json
import logging
import sys
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .coeffs import CoeffFraction
from .errors import CacheSchemaViolation

LOGGER = logging.getLogger(__name__)

RESULT_SCHEMA_VERSION = "v1"


@dataclass(frozen=True)
class JSONSerializationConfig:
    """Options for writing JSON.

    indent is passed through to json.dumps; None gives the compact single-line
    form. sort_keys orders object keys, which keeps cache files stable.
    """

    indent: Optional[int] = None
    sort_keys: bool = True

    def __post_init__(self):
        if self.indent is not None and self.indent < 0:
            object.__setattr__(self, "indent", None)


_DEFAULT_JSON_SERIALIZATION_CONFIG: JSONSerializationConfig = JSONSerializationConfig()


def set_default_json_serialization_config(
    config: Optional[JSONSerializationConfig],
) -> None:
    """Set the default JSON serialization config. None restores the initial default."""
    global _DEFAULT_JSON_SERIALIZATION_CONFIG
    if config is None:
        config = JSONSerializationConfig()
    _DEFAULT_JSON_SERIALIZATION_CONFIG = config


def get_default_json_serialization_config() -> JSONSerializationConfig:
    """Get the default JSON serialization config.

    Initializes to compact output with sorted keys.
    """
    global _DEFAULT_JSON_SERIALIZATION_CONFIG
    return _DEFAULT_JSON_SERIALIZATION_CONFIG


def _json_dump_default(obj: Any) -> Any:
    if isinstance(obj, CoeffFraction):
        return obj.to_json()
    if isinstance(obj, tuple):
        return list(obj)
    to_json = getattr(obj, "to_json", None)
    if callable(to_json):
        return to_json()
    raise TypeError(f"Object of type {obj.__class__.__name__} is not JSON serializable")


def json_dump(data: Any, config: Optional[JSONSerializationConfig] = None) -> str:
    if config is None:
        config = get_default_json_serialization_config()
    return json.dumps(
        data,
        indent=config.indent,
        sort_keys=config.sort_keys,
        default=_json_dump_default,
    )


_EXPONENTS = {
    "q": {"type": "integer"},
    "ts": {"type": "integer"},
    "tl": {"type": "integer"},
}

_COEFF_SCHEMA = {
    "type": "object",
    "required": ["num", "den"],
    "properties": {
        "num": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["q", "ts", "tl", "c"],
                "properties": dict(_EXPONENTS, c={"type": "integer"}),
                "additionalProperties": False,
            },
        },
        "den": {
            "type": "object",
            "required": ["scalar", "factors"],
            "properties": {
                "scalar": {"type": "integer", "minimum": 1},
                "factors": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["q", "ts", "tl", "mult"],
                        "properties": dict(
                            _EXPONENTS, mult={"type": "integer", "minimum": 1}
                        ),
                        "additionalProperties": False,
                    },
                },
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

RESULT_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["schema", "system", "weight", "spec", "m_star", "t_scale", "terms"],
    "properties": {
        "schema": {"const": RESULT_SCHEMA_VERSION},
        "system": {"type": "string", "pattern": "^[A-G][1-8]$"},
        "weight": {"type": "array", "items": {"type": "integer"}},
        "spec": {"type": "string"},
        "m_star": {"type": "integer", "minimum": 1},
        "t_scale": {"const": 2},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["weight", "coeff"],
                "properties": {
                    "weight": {"type": "array", "items": {"type": "integer"}},
                    "coeff": _COEFF_SCHEMA,
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


@dataclass(frozen=True)
class CompiledFastJSONSchema:
    """Compiled schema validation for fastjsonschema."""

    schema: Dict
    compiled_validator: Callable = dataclass_field(init=False)

    def __post_init__(self):
        try:
            import fastjsonschema
        except ModuleNotFoundError:
            sys.modules["fastjsonschema"] = None  # type: ignore
            msg = (
                "Compiled schema validation requires the fastjsonschema package. "
                + "Install it separately or install the extra as "
                + "macdonald-kl[fastjsonschema]."
            )
            raise ModuleNotFoundError(msg, name="fastjsonschema")

        compiled_validator = fastjsonschema.compile(self.schema)
        object.__setattr__(self, "compiled_validator", compiled_validator)

    def validate(self, payload: Any) -> None:
        import fastjsonschema

        try:
            self.compiled_validator(payload)
        except fastjsonschema.JsonSchemaException as e:
            raise CacheSchemaViolation(
                validation_error_message=e.message, validation_error=e
            )


def _validate_fastjsonschema(*, payload: Any, schema: Dict) -> None:
    import fastjsonschema

    try:
        fastjsonschema.validate(schema, payload)
    except fastjsonschema.JsonSchemaException as e:
        raise CacheSchemaViolation(validation_error_message=e.message, validation_error=e)


def _validate_jsonschema(*, payload: Any, schema: Dict) -> None:
    import jsonschema

    try:
        jsonschema.validate(payload, schema)
    except jsonschema.ValidationError as e:
        raise CacheSchemaViolation(validation_error_message=e.message, validation_error=e)


def _get_schema_validator() -> Callable:
    try:
        import fastjsonschema

        return _validate_fastjsonschema
    except ModuleNotFoundError:
        sys.modules["fastjsonschema"] = None  # type: ignore
    try:
        import jsonschema

        return _validate_jsonschema
    except ModuleNotFoundError:
        sys.modules["jsonschema"] = None  # type: ignore
        msg = (
            "Cache validation requires either the fastjsonschema or jsonschema packages. "
            + "Install one separately or install the extra as "
            + "macdonald-kl[fastjsonschema] or macdonald-kl[jsonschema]."
        )
        raise ModuleNotFoundError(msg, name="fastjsonschema")


def validate_result_document(
    payload: Any, schema: Union[None, Dict, CompiledFastJSONSchema] = None
) -> None:
    """Raise CacheSchemaViolation unless payload is a v1 result document."""
    if isinstance(schema, CompiledFastJSONSchema):
        schema.validate(payload)
        return
    validator = _get_schema_validator()
    validator(payload=payload, schema=schema or RESULT_SCHEMA)


def result_document(
    *,
    system: str,
    weight: Sequence[int],
    spec: str,
    m_star: int,
    terms: Iterable[Tuple[Sequence[int], CoeffFraction]],
) -> Dict[str, Any]:
    """Build a v1 result document. Terms are sorted by weight."""
    return {
        "schema": RESULT_SCHEMA_VERSION,
        "system": system,
        "weight": list(weight),
        "spec": spec,
        "m_star": m_star,
        "t_scale": 2,
        "terms": [
            {"weight": list(w), "coeff": c.to_json()}
            for w, c in sorted(terms, key=lambda item: tuple(item[0]))
        ],
    }


def terms_from_document(document: Dict[str, Any]) -> List[Tuple[Tuple[int, ...], CoeffFraction]]:
    return [
        (tuple(term["weight"]), CoeffFraction.from_json(term["coeff"]))
        for term in document["terms"]
    ]


class ResultCache:
    """Write-once store of result documents under a directory.

    A result for system A2, weight (1, -2) and spec exact lives at
    <cache_dir>/A2/1,-2/exact.json.
    """

    def __init__(
        self,
        cache_dir: Union[str, Path],
        *,
        json_serialization_config: Optional[JSONSerializationConfig] = None,
    ) -> None:
        self.cache_dir = Path(cache_dir)
        self.json_serialization_config = json_serialization_config

    @staticmethod
    def key(system: str, weight: Sequence[int], spec: str) -> str:
        return f"{system}/{','.join(str(c) for c in weight)}/{spec}"

    def path(self, system: str, weight: Sequence[int], spec: str) -> Path:
        return self.cache_dir / (self.key(system, weight, spec) + ".json")

    def load(self, system: str, weight: Sequence[int], spec: str) -> Optional[Dict[str, Any]]:
        path = self.path(system, weight, spec)
        if not path.exists():
            LOGGER.debug("Cache miss for %s", self.key(system, weight, spec))
            return None
        try:
            payload = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise CacheSchemaViolation(
                validation_error_message=f"{path} is not valid JSON: {e}",
                validation_error=e,
            )
        validate_result_document(payload)
        LOGGER.debug("Cache hit for %s", self.key(system, weight, spec))
        return payload

    def store(self, document: Dict[str, Any]) -> Path:
        """Write document unless a file for its key already exists."""
        validate_result_document(document)
        path = self.path(document["system"], document["weight"], document["spec"])
        if path.exists():
            LOGGER.debug("Not overwriting %s", path)
            return path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json_dump(document, self.json_serialization_config) + "\n")
        return path
