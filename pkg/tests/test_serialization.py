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

import pytest

import json
from dataclasses import FrozenInstanceError

from macdonald_kl import *
from macdonald_kl.serialization import RESULT_SCHEMA, terms_from_document

T_INV = ParamMonomial(0, -2, 0)


def document(**kwargs):
    args = dict(
        system="A1",
        weight=(-1,),
        spec="qinf",
        m_star=2,
        terms=[
            ((1,), CoeffFraction(ParamPoly.binomial(T_INV))),
            ((-1,), CoeffFraction.one()),
        ],
    )
    args.update(kwargs)
    return result_document(**args)


def test_json_serialization_config():
    config = JSONSerializationConfig()
    assert config.indent is None
    assert config.sort_keys is True

    assert JSONSerializationConfig(indent=-1).indent is None

    with pytest.raises(FrozenInstanceError):
        config.indent = 2


def test_default_json_serialization_config():
    assert get_default_json_serialization_config() == JSONSerializationConfig()
    try:
        set_default_json_serialization_config(JSONSerializationConfig(indent=2))
        assert "\n" in json_dump({"a": 1, "b": 2})
    finally:
        set_default_json_serialization_config(None)
    assert json_dump({"b": 1, "a": 2}) == '{"a": 2, "b": 1}'


def test_json_dump_objects():
    data = {"coeff": CoeffFraction(1, 2), "weight": Weight((1, -2)), "pair": (1, 2)}
    roundtrip = json.loads(json_dump(data))
    assert roundtrip["coeff"] == {"num": [{"q": 0, "ts": 0, "tl": 0, "c": 1}], "den": {"scalar": 2, "factors": []}}
    assert roundtrip["weight"] == [1, -2]
    assert roundtrip["pair"] == [1, 2]

    with pytest.raises(TypeError, match="is not JSON serializable"):
        json_dump({"obj": object()})


def test_result_document():
    doc = document()
    assert doc["schema"] == "v1"
    assert doc["t_scale"] == 2
    assert [term["weight"] for term in doc["terms"]] == [[-1], [1]]
    validate_result_document(doc)

    terms = terms_from_document(doc)
    assert terms[0] == ((-1,), CoeffFraction.one())
    assert terms[1][1] == CoeffFraction(ParamPoly.binomial(T_INV))


def test_validate_result_document():
    doc = document()
    del doc["terms"]
    with pytest.raises(CacheSchemaViolation):
        validate_result_document(doc)

    doc = document(system="BC2")
    with pytest.raises(CacheSchemaViolation):
        validate_result_document(doc)

    doc = document()
    doc["terms"][0]["coeff"]["den"]["scalar"] = 0
    with pytest.raises(CacheSchemaViolation):
        validate_result_document(doc)


def test_compiled_schema():
    compiled = CompiledFastJSONSchema(RESULT_SCHEMA)
    validate_result_document(document(), compiled)

    doc = document()
    doc["extra"] = True
    with pytest.raises(CacheSchemaViolation):
        validate_result_document(doc, compiled)


def test_result_cache(tmp_path):
    cache = ResultCache(tmp_path)
    assert cache.load("A1", (-1,), "qinf") is None

    doc = document()
    path = cache.store(doc)
    assert path == tmp_path / "A1" / "-1" / "qinf.json"
    assert cache.load("A1", [-1], "qinf") == doc

    # write-once: a second store keeps the first document
    other = document(terms=[((-1,), CoeffFraction.one())])
    cache.store(other)
    assert cache.load("A1", (-1,), "qinf") == doc


def test_result_cache_corrupt(tmp_path):
    cache = ResultCache(tmp_path)
    path = cache.path("A2", (1, -2), "exact")
    assert path == tmp_path / "A2" / "1,-2" / "exact.json"
    path.parent.mkdir(parents=True)

    path.write_text("{not json")
    with pytest.raises(CacheSchemaViolation) as exc_info:
        cache.load("A2", (1, -2), "exact")
    assert "not valid JSON" in exc_info.value.get_error_message()

    path.write_text(json.dumps({"schema": "v0"}))
    with pytest.raises(CacheSchemaViolation):
        cache.load("A2", (1, -2), "exact")
