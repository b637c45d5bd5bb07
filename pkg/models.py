"""Pydantic models for axiom reports, input documents and JSON payloads."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

Scalar = int | str | list


class Strict(BaseModel):
    """Base for every persisted document: unknown fields are rejected."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)


# ---- Reports ----


class AxiomResult(Strict):
    """Outcome of one axiom check, with a witness basis element on failure."""

    axiom: str
    status: Literal["pass", "fail"]
    witness: str | None = None


class Report(Strict):
    """Axiom report for one object."""

    subject: str = ""
    entries: list[AxiomResult] = Field(default_factory=list)
    notes: dict[str, str | int | bool] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def add(self, axiom: str, witness: str | None = None) -> None:
        """Record ``axiom`` as passing, or failing at ``witness``."""
        status = "pass" if witness is None else "fail"
        self.entries.append(AxiomResult(axiom=axiom, status=status, witness=witness))

    def failed(self) -> list[AxiomResult]:
        return [e for e in self.entries if e.status == "fail"]

    def status(self, axiom: str) -> str | None:
        for e in self.entries:
            if e.axiom == axiom:
                return e.status
        return None

    def extend(self, other: Report, prefix: str = "") -> Report:
        for e in other.entries:
            self.entries.append(e.model_copy(update={"axiom": prefix + e.axiom}))
        for k, v in other.notes.items():
            self.notes[prefix + k] = v
        return self


# ---- Quiver and comonad inputs ----


class QuiverArrowModel(Strict):
    """One arrow of a quiver."""

    name: str
    source: int = Field(alias="from")
    target: int = Field(alias="to")


class QuiverTermModel(Strict):
    """coeff * path; an empty path names the idempotent at ``vertex``."""

    coeff: int | str = 1
    path: list[str]
    vertex: int | None = None


class QuiverPresentationModel(Strict):
    """Quiver with relations, vertices numbered 1..n."""

    vertices: int = Field(ge=0)
    arrows: list[QuiverArrowModel] = Field(default_factory=list)
    relations: list[list[QuiverTermModel]] = Field(default_factory=list)
    field: str = "Q"


class AlgebraMapModel(Strict):
    """Images of the source ring's generators, as element strings."""

    source: int = Field(alias="from")
    target: int = Field(alias="to")
    images: list[str]


class ComonadSpecModel(Strict):
    """Rings, the maps between them and the adjunction word."""

    rings: list[str]
    maps: list[AlgebraMapModel]
    pattern: str
    degree_bound: int = 4


# ---- Payloads ----


class BasisElementModel(Strict):
    """A basis vector: label, grading degree and Koszul parity.

    ``hdeg`` is the homological degree when it is not the parity.
    """

    label: str
    degree: int = 0
    parity: int = 0
    hdeg: int | None = None
    ideg: int | None = None


class GradedSpaceModel(Strict):
    degrees: list[int]
    labels: list[str]


class AlgebraModel(Strict):
    """A realized algebra by structure constants."""

    field: str
    name: str = ""
    basis: list[BasisElementModel]
    mult: list[list[Any]]
    unit: list[list[Any]]
    augmentation: list[list[Any]] | None = None
    generators: list[list[list[Any]]] = Field(default_factory=list)
    generator_names: list[str] = Field(default_factory=list)
    degree_bound: int | None = None
    complete: bool = True
    graded_commutative: bool = False


class TruncationModel(Strict):
    s_max: int
    d_max: int


class StableOriginModel(Strict):
    """The shifted point a stable coring was extracted at.

    ``unlifted`` lists basis indices whose Delta did not lift.
    """

    p: int
    r: int
    point: list[int]
    unlifted: list[int] = Field(default_factory=list)


class CoringModel(Strict):
    """Coring, bialgebra or Hopf algebra; ``base`` is None over the ground field.

    ``comult`` rows ``[i, j, k, c]`` mean Delta(e_i) contains c * e_j (x) e_k;
    over a non-field base they give a ground-field lift.
    """

    field: str
    name: str = ""
    basis: list[BasisElementModel]
    base: AlgebraModel | None = None
    left_action: list[list[Any]] = Field(default_factory=list)
    right_action: list[list[Any]] = Field(default_factory=list)
    comult: list[list[Any]]
    counit: list[list[Any]]
    mult: list[list[Any]] | None = None
    unit: int | list[list[Any]] | None = None
    antipode: list[list[Any]] | None = None
    truncation: TruncationModel | None = None
    kind: Literal["coring", "bialgebra", "hopf", "tor"] = "coring"
    graded: bool = True
    stable: bool = False
    projective_dims: dict[str, int] | None = None
    origin: StableOriginModel | None = None
    ring: str | None = None
    convention: str | None = None


class ComoduleModel(Strict):
    """Comodule: ``coaction`` rows ``[i, j, k, c]`` mean rho(e_i) contains c * e_j (x) c_k."""

    coring_ref: str
    coring: CoringModel
    space: GradedSpaceModel
    coaction: list[list[Any]]
    parities: list[int] | None = None
    action: list[list[Any]] = Field(default_factory=list)


class DualModuleModel(Strict):
    """Right module over a dual algebra: rows ``[i, a, j, c]`` mean e_i . a contains c * e_j."""

    algebra: AlgebraModel
    space: GradedSpaceModel
    action: list[list[Any]]


class StableModuleModel(Strict):
    p: int
    dim: int
    t_matrix: list[list[int]]


class DimensionTableModel(Strict):
    """Tor dimensions: ``table[s][d]`` for homological degree s, internal degree d.

    ``dims[s]`` is null when Tor_s may have classes above the internal-degree
    truncation.
    """

    field: str
    ring: str
    dims: list[int | None]
    table: list[list[int]]
    truncation: TruncationModel


class TorModel(Strict):
    """Tor as a Hopf algebra together with its dimension table."""

    hopf: CoringModel
    table: DimensionTableModel
    oracle: list[int | None] | None = None


class DescentModel(Strict):
    """A comodule over a Galois tensor coring and its descended form."""

    induced: ComoduleModel
    descended: ComoduleModel


# ---- Envelope ----


class EnvelopeModel(Strict):
    """Every file written by the CLI."""

    command: str
    inputs: dict[str, Any]
    convention: str
    payload_kind: str
    payload: dict[str, Any]
    report: Report
    timing: dict[str, float] = Field(default_factory=dict)
