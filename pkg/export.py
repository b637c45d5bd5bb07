"""
JSON persistence for coringlab objects.

Domain objects are turned into the pydantic payload models of ``models.py``
and back; every file the CLI writes is an ``EnvelopeModel`` written
atomically into the output directory.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError
from rich.console import Console

from bar_tor import CONVENTION, TorHopf, TorTable
from comodules import Comodule, DualModule
from corings import Bialgebra, Coring, HopfAlgebra, StableOrigin
from errors import SchemaError
from fields import FieldSpec, parse_field
from linalg import GradedVectorSpace, SparseMatrix, Vector
from models import (
    AlgebraModel,
    BasisElementModel,
    ComoduleModel,
    DescentModel,
    CoringModel,
    DimensionTableModel,
    DualModuleModel,
    EnvelopeModel,
    GradedSpaceModel,
    Report,
    StableModuleModel,
    StableOriginModel,
    TorModel,
    TruncationModel,
)
from presentations import GradedAlgebra
from settings import Settings
from stable_rep import StableModule

console = Console()

OUTPUT_DIR = Path("output")


# ---- validation ----


def _pointer(loc: tuple) -> str:
    return "/" + "/".join(str(part) for part in loc)


def validate(model: type[BaseModel], data: Any, prefix: str = "") -> Any:
    """``model.model_validate`` with failures as SchemaError at a JSON pointer."""
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise SchemaError(first["msg"], prefix + _pointer(first["loc"])) from exc


# ---- sparse rows ----


def _vector_rows(f: FieldSpec, v: Vector) -> list[list]:
    return [[k, f.encode(c)] for k, c in sorted(v.items())]


def _rows_vector(f: FieldSpec, rows: list[list]) -> Vector:
    return {int(k): f.decode(c) for k, c in rows}


def _table_rows(f: FieldSpec, table: dict) -> list[list]:
    """{outer: {key: c}} as [outer, *key, c] rows."""
    rows = []
    for outer in sorted(table):
        for key, c in sorted(table[outer].items()):
            inner = list(key) if isinstance(key, tuple) else [key]
            head = list(outer) if isinstance(outer, tuple) else [outer]
            rows.append(head + inner + [f.encode(c)])
    return rows


def _rows_table(f: FieldSpec, rows: list[list], outer: int) -> dict:
    """Inverse of ``_table_rows`` with ``outer`` leading indices."""
    table: dict = {}
    for row in rows:
        head, inner, c = row[:outer], row[outer:-1], row[-1]
        o = tuple(head) if outer > 1 else head[0]
        key = tuple(inner) if len(inner) > 1 else inner[0]
        table.setdefault(o, {})[key] = f.decode(c)
    return table


def _matrix_rows(f: FieldSpec, mats: dict[int, SparseMatrix]) -> list[list]:
    return [[b, i, j, f.encode(x)] for b in sorted(mats) for i, j, x in sorted(mats[b].entries())]


def _rows_matrices(f: FieldSpec, rows: list[list], keys, dim: int) -> dict[int, SparseMatrix]:
    entries: dict[int, list] = {b: [] for b in keys}
    for b, i, j, x in rows:
        entries[b].append((i, j, f.decode(x)))
    return {b: SparseMatrix.from_entries(f, dim, dim, e) for b, e in entries.items()}


def _space_model(space: GradedVectorSpace) -> GradedSpaceModel:
    return GradedSpaceModel(degrees=list(space.degrees), labels=list(space.labels))


def _space(model: GradedSpaceModel) -> GradedVectorSpace:
    return GradedVectorSpace(tuple(model.degrees), tuple(model.labels))


# ---- algebras ----


def encode_algebra(a: GradedAlgebra) -> AlgebraModel:
    f = a.field
    return AlgebraModel(
        field=f.name,
        name=a.name,
        basis=[BasisElementModel(label=l, degree=d) for l, d in zip(a.labels, a.degrees)],
        mult=_table_rows(f, a.mult),
        unit=_vector_rows(f, a.unit),
        augmentation=None if a.augmentation is None else _vector_rows(f, a.augmentation),
        generators=[_vector_rows(f, g) for g in a.generators],
        generator_names=list(a.generator_names),
        degree_bound=a.degree_bound,
        complete=a.complete,
        graded_commutative=a.graded_commutative,
    )


def decode_algebra(m: AlgebraModel) -> GradedAlgebra:
    f = parse_field(m.field)
    return GradedAlgebra(
        field=f,
        space=GradedVectorSpace(tuple(b.degree for b in m.basis), tuple(b.label for b in m.basis)),
        mult=_rows_table(f, m.mult, 2),
        unit=_rows_vector(f, m.unit),
        augmentation=None if m.augmentation is None else _rows_vector(f, m.augmentation),
        generators=[_rows_vector(f, g) for g in m.generators],
        generator_names=tuple(m.generator_names),
        degree_bound=m.degree_bound,
        complete=m.complete,
        name=m.name,
        graded_commutative=m.graded_commutative,
    )


# ---- corings ----


def _kind(c: Coring) -> str:
    if isinstance(c, TorHopf):
        return "tor"
    if isinstance(c, HopfAlgebra):
        return "hopf"
    if isinstance(c, Bialgebra):
        return "bialgebra"
    return "coring"


def encode_coring(c: Coring) -> CoringModel:
    f = c.field
    kind = _kind(c)
    basis = []
    for i, (label, degree, parity) in enumerate(zip(c.labels, c.degrees, c.parities)):
        element = BasisElementModel(label=label, degree=degree, parity=parity)
        if kind == "tor":
            element.hdeg, element.ideg = c.hdegs[i], degree
        elif c.hdegs[i] != parity:
            element.hdeg = c.hdegs[i]
        basis.append(element)
    if c.over_field:
        counit = [[i, f.encode(v.get(0, f.zero))] for i, v in sorted(c.counit.items()) if v]
    else:
        counit = _table_rows(f, c.counit)
    model = CoringModel(
        field=f.name,
        name=c.name,
        basis=basis,
        base=None if c.over_field else encode_algebra(c.base),
        left_action=[] if c.over_field else _matrix_rows(f, c.left_action),
        right_action=[] if c.over_field else _matrix_rows(f, c.right_action),
        comult=_table_rows(f, c.comult),
        counit=counit,
        kind=kind,
        graded=c.graded,
        truncation=None if c.truncation is None else TruncationModel(s_max=c.truncation[0], d_max=c.truncation[1]),
    )
    if isinstance(c, Bialgebra):
        model.mult = _table_rows(f, c.mult)
        unit = sorted(c.unit.items())
        model.unit = unit[0][0] if len(unit) == 1 and unit[0][1] == f.one else _vector_rows(f, c.unit)
    if isinstance(c, HopfAlgebra):
        model.antipode = _table_rows(f, c.antipode)
    if isinstance(c, TorHopf):
        model.ring = c.ring
        model.convention = c.convention
    if c.origin is not None:
        o = c.origin
        model.stable = True
        model.projective_dims = dict(o.projective_dims)
        model.origin = StableOriginModel(p=o.p, r=o.r, point=list(o.point), unlifted=list(o.unlifted))
    return model


def decode_coring(m: CoringModel) -> Coring:
    f = parse_field(m.field)
    space = GradedVectorSpace(tuple(b.degree for b in m.basis), tuple(b.label for b in m.basis))
    kwargs: dict[str, Any] = dict(
        field=f,
        space=space,
        parities=tuple(b.parity for b in m.basis),
        comult=_rows_table(f, m.comult, 1),
        name=m.name,
        graded=m.graded,
        truncation=None if m.truncation is None else (m.truncation.s_max, m.truncation.d_max),
        hdegs=tuple(b.parity if b.hdeg is None else b.hdeg for b in m.basis),
    )
    if m.base is None:
        kwargs["counit"] = {int(i): {0: f.decode(c)} for i, c in m.counit}
    else:
        base = decode_algebra(m.base)
        kwargs["base"] = base
        kwargs["counit"] = _rows_table(f, m.counit, 1)
        kwargs["left_action"] = _rows_matrices(f, m.left_action, range(base.dim), len(m.basis))
        kwargs["right_action"] = _rows_matrices(f, m.right_action, range(base.dim), len(m.basis))
    if m.origin is not None:
        kwargs["origin"] = StableOrigin(
            p=m.origin.p,
            r=m.origin.r,
            point=tuple(m.origin.point),
            projective_dims=dict(m.projective_dims or {}),
            unlifted=tuple(m.origin.unlifted),
        )
    if m.kind == "coring":
        return Coring(**kwargs)
    if m.mult is None or m.unit is None:
        raise SchemaError(f"a {m.kind} needs mult and unit", "/mult")
    kwargs["mult"] = _rows_table(f, m.mult, 2)
    kwargs["unit"] = {m.unit: f.one} if isinstance(m.unit, int) else _rows_vector(f, m.unit)
    if m.kind == "bialgebra":
        return Bialgebra(**kwargs)
    kwargs["antipode"] = _rows_table(f, m.antipode or [], 1)
    if m.kind == "hopf":
        return HopfAlgebra(**kwargs)
    return TorHopf(**kwargs, ring=m.ring or "", convention=m.convention or CONVENTION)


# ---- modules ----


def encode_comodule(m: Comodule) -> ComoduleModel:
    f = m.field
    return ComoduleModel(
        coring_ref=m.coring.name,
        coring=encode_coring(m.coring),
        space=_space_model(m.space),
        coaction=_table_rows(f, m.coaction),
        parities=list(m.parities),
        action=[] if m.coring.over_field else _matrix_rows(f, m.action),
    )


def decode_comodule(m: ComoduleModel) -> Comodule:
    c = decode_coring(m.coring)
    f = c.field
    space = _space(m.space)
    action = _rows_matrices(f, m.action, range(c.base.dim), space.dim) if m.action else {}
    return Comodule(
        coring=c,
        space=space,
        coaction=_rows_table(f, m.coaction, 1),
        parities=tuple(m.parities or ()),
        action=action,
        name=m.coring_ref,
    )


def encode_descent(induced: Comodule, descended: Comodule) -> DescentModel:
    return DescentModel(induced=encode_comodule(induced), descended=encode_comodule(descended))


def decode_descent(m: DescentModel) -> tuple[Comodule, Comodule]:
    return decode_comodule(m.induced), decode_comodule(m.descended)


def encode_dual_module(d: DualModule) -> DualModuleModel:
    f = d.field
    return DualModuleModel(algebra=encode_algebra(d.algebra), space=_space_model(d.space), action=_table_rows(f, d.action))


def decode_dual_module(m: DualModuleModel) -> DualModule:
    algebra = decode_algebra(m.algebra)
    return DualModule(algebra, _space(m.space), _rows_table(algebra.field, m.action, 2))


def encode_stable_module(m: StableModule) -> StableModuleModel:
    return StableModuleModel(p=m.p, dim=m.dim, t_matrix=[[int(x) for x in row] for row in m.t.to_dense()])


def decode_stable_module(m: StableModuleModel) -> StableModule:
    f = FieldSpec(m.p)
    if len(m.t_matrix) != m.dim or any(len(row) != m.dim for row in m.t_matrix):
        raise SchemaError(f"t_matrix must be {m.dim}x{m.dim}", "/t_matrix")
    t = SparseMatrix.from_dense(f, [[f.coerce(x) for x in row] for row in m.t_matrix]) if m.dim else SparseMatrix.zero(f, 0, 0)
    return StableModule(m.p, t)


def encode_tor(t: TorHopf, oracle: TorTable | None = None) -> TorModel:
    s_max, d_max = t.truncation
    grid = [[0] * (d_max + 1) for _ in range(s_max + 1)]
    for (s, d), n in t.table().items():
        grid[s][d] = n
    table = DimensionTableModel(
        field=t.field.name, ring=t.ring, dims=t.dims(), table=grid, truncation=TruncationModel(s_max=s_max, d_max=d_max)
    )
    return TorModel(hopf=encode_coring(t), table=table, oracle=None if oracle is None else oracle.dims())


def decode_tor(m: TorModel) -> TorHopf:
    t = decode_coring(m.hopf)
    if not isinstance(t, TorHopf):
        raise SchemaError(f"a tor payload needs a hopf of kind tor, not {m.hopf.kind}", "/hopf/kind")
    t.computed = tuple(n is not None for n in m.table.dims)
    return t


# ---- dispatch ----


_ENCODERS = [
    (TorHopf, "tor", encode_tor),
    (Coring, "coring", encode_coring),
    (Comodule, "comodule", encode_comodule),
    (DualModule, "dual_module", encode_dual_module),
    (StableModule, "stable_module", encode_stable_module),
    (GradedAlgebra, "algebra", encode_algebra),
    (Report, "report", lambda r: r),
]

_DECODERS = {
    "tor": (TorModel, decode_tor),
    "coring": (CoringModel, decode_coring),
    "comodule": (ComoduleModel, decode_comodule),
    "descent": (DescentModel, decode_descent),
    "dual_module": (DualModuleModel, decode_dual_module),
    "stable_module": (StableModuleModel, decode_stable_module),
    "algebra": (AlgebraModel, decode_algebra),
    "report": (Report, lambda r: r),
}


def kind_of(obj: Any) -> str:
    for cls, kind, _ in _ENCODERS:
        if isinstance(obj, cls):
            return kind
    raise TypeError(f"no JSON schema for {type(obj).__name__}")


def serialize(obj: Any) -> dict:
    """The payload document of ``obj``."""
    for cls, _, encode in _ENCODERS:
        if isinstance(obj, cls):
            return encode(obj).model_dump(by_alias=True)
    raise TypeError(f"no JSON schema for {type(obj).__name__}")


def deserialize(data: Any, kind: str) -> Any:
    """Validate ``data`` as a payload of ``kind`` and rebuild the object."""
    if kind not in _DECODERS:
        raise SchemaError(f"unknown payload kind {kind!r}", "/payload_kind")
    model, decode = _DECODERS[kind]
    return decode(validate(model, data))


# ---- envelopes ----


def make_envelope(
    command: str,
    inputs: dict,
    payload_kind: str,
    payload: dict,
    report: Report,
    timing: dict[str, float] | None = None,
) -> EnvelopeModel:
    return EnvelopeModel(
        command=command,
        inputs=inputs,
        convention=CONVENTION,
        payload_kind=payload_kind,
        payload=payload,
        report=report,
        timing=timing or {},
    )


def _write_json(path: Path, data: dict) -> str:
    """Write through a temporary file in the same directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(data, indent=2, ensure_ascii=False)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    console.print(f"Exported [dim]{path}[/dim]")
    return str(path)


def output_path(name: str, settings: Settings | None = None) -> Path:
    """Relative names land in the configured output directory."""
    path = Path(name)
    if path.is_absolute() or path.parent != Path("."):
        return path
    base = Path(settings.output_dir) if settings is not None else OUTPUT_DIR
    return base / path


def write_envelope(envelope: EnvelopeModel, name: str, settings: Settings | None = None) -> str:
    return _write_json(output_path(name, settings), envelope.model_dump(by_alias=True))


def load_envelope(path: str | Path) -> EnvelopeModel:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON ({exc.msg})", "/") from exc
    return validate(EnvelopeModel, data)


def load_payload(envelope: EnvelopeModel) -> Any:
    """Rebuild the envelope's object; pointers are relative to the envelope."""
    try:
        return deserialize(envelope.payload, envelope.payload_kind)
    except SchemaError as exc:
        if exc.pointer.startswith("/payload_kind"):
            raise
        raise SchemaError(str(exc).rsplit(" at ", 1)[0], "/payload" + exc.pointer.rstrip("/")) from exc
