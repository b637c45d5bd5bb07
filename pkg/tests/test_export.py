"""Tests for export.py -- payload encoding, schema validation and envelope files."""

import json
from dataclasses import replace

import pytest

import export as export_mod
from bar_tor import TorHopf, tor_bialgebra
from comodules import regular_comodule
from corings import Bialgebra, check_coring, exterior_bialgebra, galois_coring, galois_extension, same_structure
from errors import SchemaError
from export import (
    deserialize,
    kind_of,
    load_envelope,
    load_payload,
    make_envelope,
    output_path,
    serialize,
    write_envelope,
)
from fields import parse_field
from models import Report
from presentations import parse_presentation, realize
from settings import Settings
from stable_rep import jordan_decompose, jordan_module, shifted_subgroup_coring


def tor(text, n):
    return tor_bialgebra(realize(parse_presentation(text), n), n, n)


def envelope_for(obj, command="test"):
    report = Report(subject=command)
    report.add("built")
    return make_envelope(command, {}, kind_of(obj), serialize(obj), report)


class TestRoundTrip:
    def test_tor(self):
        t = tor("Q[x,y]", 3)
        back = deserialize(serialize(t), "tor")
        assert isinstance(back, TorHopf)
        assert same_structure(back, t)
        assert back.labels == t.labels
        assert back.parities == t.parities
        assert back.hdegs == t.hdegs
        assert back.ring == "Q[x,y]"
        assert back.convention == t.convention
        assert back.truncation == (3, 3)

    def test_tor_payload_carries_the_table(self):
        data = serialize(tor("Q[x]", 2))
        assert data["table"]["dims"] == [1, 1, 0]
        assert data["hopf"]["convention"] == "homological"
        assert data["hopf"]["kind"] == "tor"

    def test_stable_bialgebra(self):
        b = shifted_subgroup_coring(2, 2, (1, 1))
        data = serialize(b)
        assert data["stable"] is True
        assert data["origin"] == {"p": 2, "r": 2, "point": [1, 1], "unlifted": []}
        back = deserialize(data, "coring")
        assert isinstance(back, Bialgebra)
        assert same_structure(back, b)
        assert back.origin.point == (1, 1)

    def test_tor_keeps_uncomputed_degrees(self):
        t = tor_bialgebra(realize(parse_presentation("GF(3)[x]/(x^3)"), 3), 3, 3)
        data = serialize(t)
        assert data["table"]["dims"] == [1, 1, 1, None]
        back = deserialize(data, "tor")
        assert back.dims() == [1, 1, 1, None]

    def test_exterior_tor_keeps_homological_degrees(self):
        t = tor("Q<x,y>", 2)
        back = deserialize(serialize(t), "tor")
        assert back.hdegs == t.hdegs
        assert back.parities == t.parities != t.hdegs

    def test_unlifted_elements_survive(self):
        b = shifted_subgroup_coring(2, 2, (1, 1))
        b.origin = replace(b.origin, unlifted=(0,))
        back = deserialize(serialize(b), "coring")
        assert back.origin.unlifted == (0,)

    def test_galois_coring_over_its_base(self):
        c = galois_coring(galois_extension(parse_field("Q(i^2+1)")))
        data = serialize(c)
        assert data["base"]["field"] == "Q"
        back = deserialize(data, "coring")
        assert not back.over_field
        assert back.comult == {i: v for i, v in c.comult.items() if v}
        assert back.base.dim == c.base.dim
        assert check_coring(back).passed

    def test_comodule(self):
        m = regular_comodule(exterior_bialgebra(2))
        back = deserialize(serialize(m), "comodule")
        assert back.dim == m.dim
        assert back.coaction == {i: v for i, v in m.coaction.items() if v}

    def test_stable_module(self):
        m = jordan_module(3, [2, 1])
        data = serialize(m)
        assert data == {"p": 3, "dim": 3, "t_matrix": [[0, 0, 0], [1, 0, 0], [0, 0, 0]]}
        assert jordan_decompose(deserialize(data, "stable_module")) == [2, 1]

    def test_algebra(self):
        a = realize(parse_presentation("GF(2)[x,y]/(x^2,y^2)"), 2)
        back = deserialize(serialize(a), "algebra")
        assert back.labels == a.labels
        assert back.mult == {k: v for k, v in a.mult.items() if v}
        assert back.check().passed

    def test_unknown_object(self):
        with pytest.raises(TypeError):
            serialize(object())


class TestValidation:
    def test_unknown_kind(self):
        with pytest.raises(SchemaError) as exc:
            deserialize({}, "spaceship")
        assert exc.value.pointer == "/payload_kind"

    def test_missing_field(self):
        data = serialize(jordan_module(2, [1]))
        del data["t_matrix"]
        with pytest.raises(SchemaError) as exc:
            deserialize(data, "stable_module")
        assert exc.value.pointer == "/t_matrix"

    def test_extra_field_is_rejected(self):
        data = dict(serialize(jordan_module(2, [1])), colour="red")
        with pytest.raises(SchemaError) as exc:
            deserialize(data, "stable_module")
        assert exc.value.pointer == "/colour"

    def test_ragged_matrix(self):
        with pytest.raises(SchemaError):
            deserialize({"p": 2, "dim": 2, "t_matrix": [[0, 0], [1]]}, "stable_module")

    def test_bialgebra_needs_a_product(self):
        data = serialize(exterior_bialgebra(1))
        data["mult"] = None
        with pytest.raises(SchemaError) as exc:
            deserialize(data, "coring")
        assert exc.value.pointer == "/mult"


class TestEnvelopes:
    def test_relative_names_use_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setattr(export_mod, "OUTPUT_DIR", tmp_path / "data")
        assert output_path("tor.json") == tmp_path / "data" / "tor.json"
        assert output_path(str(tmp_path / "x.json")) == tmp_path / "x.json"
        assert output_path("tor.json", Settings(output_dir=str(tmp_path / "s"))) == tmp_path / "s" / "tor.json"

    def test_write_and_reload(self, tmp_path, monkeypatch):
        monkeypatch.setattr(export_mod, "OUTPUT_DIR", tmp_path / "data")
        t = tor("Q[x]", 3)
        path = write_envelope(envelope_for(t, "tor"), "tor.json")
        assert path == str(tmp_path / "data" / "tor.json")
        # no temporary files left behind
        assert [p.name for p in (tmp_path / "data").iterdir()] == ["tor.json"]
        envelope = load_envelope(path)
        assert envelope.convention == "homological"
        assert envelope.report.passed
        assert same_structure(load_payload(envelope), t)

    def test_missing_convention(self, tmp_path):
        path = tmp_path / "bad.json"
        data = envelope_for(jordan_module(2, [1])).model_dump(by_alias=True)
        del data["convention"]
        path.write_text(json.dumps(data))
        with pytest.raises(SchemaError) as exc:
            load_envelope(path)
        assert exc.value.pointer == "/convention"

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(SchemaError):
            load_envelope(path)

    def test_payload_pointer_is_relative_to_envelope(self, tmp_path):
        path = tmp_path / "bad.json"
        data = envelope_for(jordan_module(2, [1])).model_dump(by_alias=True)
        del data["payload"]["dim"]
        path.write_text(json.dumps(data))
        with pytest.raises(SchemaError) as exc:
            load_payload(load_envelope(path))
        assert exc.value.pointer == "/payload/dim"
