"""Tests for models.py -- reports and the strict document models."""

import pytest
from pydantic import ValidationError

from models import (
    AlgebraMapModel,
    ComonadSpecModel,
    CoringModel,
    EnvelopeModel,
    QuiverArrowModel,
    QuiverPresentationModel,
    Report,
)


class TestReport:
    def test_empty_report_passes(self):
        assert Report().passed

    def test_add(self):
        report = Report(subject="C")
        report.add("counit_left")
        report.add("coassociativity", "e1")
        assert not report.passed
        assert report.status("counit_left") == "pass"
        assert report.status("coassociativity") == "fail"
        assert report.status("antipode") is None
        assert [e.witness for e in report.failed()] == ["e1"]

    def test_extend_with_prefix(self):
        inner = Report(notes={"primitives": 2})
        inner.add("dimension")
        outer = Report().extend(inner, prefix="exterior_")
        assert outer.status("exterior_dimension") == "pass"
        assert outer.notes == {"exterior_primitives": 2}
        assert inner.entries[0].axiom == "dimension"

    def test_serialization_roundtrip(self):
        report = Report(subject="x")
        report.add("module", "(x, y)")
        again = Report.model_validate(report.model_dump())
        assert again == report


class TestStrictModels:
    def test_unknown_field(self):
        with pytest.raises(ValidationError):
            Report(subject="x", colour="red")

    def test_arrow_aliases(self):
        arrow = QuiverArrowModel.model_validate({"name": "a1", "from": 1, "to": 2})
        assert (arrow.source, arrow.target) == (1, 2)
        assert arrow.model_dump(by_alias=True) == {"name": "a1", "from": 1, "to": 2}

    def test_quiver_defaults(self):
        q = QuiverPresentationModel(vertices=2)
        assert q.field == "Q"
        assert q.arrows == []

    def test_negative_vertex_count(self):
        with pytest.raises(ValidationError):
            QuiverPresentationModel(vertices=-1)

    def test_comonad_spec_defaults(self):
        spec = ComonadSpecModel(rings=["Q"], maps=[AlgebraMapModel.model_validate({"from": 0, "to": 0, "images": []})], pattern="FU")
        assert spec.degree_bound == 4

    def test_coring_kind(self):
        with pytest.raises(ValidationError):
            CoringModel(field="Q", basis=[], comult=[], counit=[], kind="monad")

    def test_envelope_requires_convention(self):
        with pytest.raises(ValidationError):
            EnvelopeModel(command="tor", inputs={}, payload_kind="tor", payload={}, report=Report())
