"""Exception hierarchy for coringlab.

Axiom failures are never raised; they are entries of a ``Report``.  The
classes below cover malformed input and requests that cannot be computed.
"""

from __future__ import annotations


class CoringlabError(Exception):
    """Base class for every error raised by coringlab."""


# ---- exact-linalg ----


class MixedField(CoringlabError):
    """Scalars or matrices from different fields were combined."""


class NotAComplex(CoringlabError):
    """Two composable maps whose composite is nonzero."""


# ---- presentations ----


class PresentationSyntaxError(CoringlabError):
    """A presentation string that does not match the grammar."""

    def __init__(self, message: str, position: int, expected: list[str] | None = None):
        self.position = position
        self.expected = expected or []
        detail = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")


class NonPrimeCharacteristic(CoringlabError):
    """GF(n) with n not prime."""


class NonMonomialRelation(CoringlabError):
    """A relation that is neither a monomial nor a quiver relation."""


class RelationInconsistency(CoringlabError):
    """Quiver relations that kill an idempotent."""


class InvalidField(CoringlabError):
    """A minimal polynomial that is not monic of degree >= 2 and irreducible."""


class NotAMorphism(CoringlabError):
    """A proposed algebra or module map that fails compatibility."""


# ---- bar-tor / coring-core ----


class NotConnected(CoringlabError):
    """The degree-zero part is not spanned by the unit."""


class NotAugmented(CoringlabError):
    """The algebra has no augmentation."""


class NotCommutative(CoringlabError):
    """The shuffle product is not a chain map: the algebra is neither commutative nor graded-commutative."""


class InfiniteDimensional(CoringlabError):
    """Uncomputed degrees would contribute to the requested object."""


class NotGalois(CoringlabError):
    """Fewer automorphisms than the extension degree were found."""


# ---- comodule ----


class BaseMismatch(CoringlabError):
    """Objects defined over different corings or base rings."""


class NotDescendable(CoringlabError):
    """The coinvariants have the wrong dimension for a descent datum."""


# ---- stable-rep ----


class NotNilpotent(CoringlabError):
    """An operator with t^p != 0."""


class ZeroPoint(CoringlabError):
    """A shifted subgroup requested at the zero point."""


# ---- watts ----


class NotAComonad(CoringlabError):
    """An adjunction word without the F...F U...U shape."""


# ---- cli ----


class SchemaError(CoringlabError):
    """A JSON document that does not validate against its schema."""

    def __init__(self, message: str, pointer: str = ""):
        self.pointer = pointer or "/"
        super().__init__(f"{message} at {self.pointer}")
