"""Exact computations for solvable and nilpotent matroids: incidence
invariants, chain classifications, randomized exact realizations,
liftability matrices and bracket-polynomial certificates."""

from .errors import (DomainError, GenericityFailure, InputError, MatrovarError,
                     PreconditionError)
from .matroid import (Matroid, Realization, from_circuits, matroid_of_vectors,
                      paving_from_hyperplanes, uniform)
from .fixtures import fixture, fixture_names

__all__ = [
    "DomainError", "GenericityFailure", "InputError", "MatrovarError", "PreconditionError",
    "Matroid", "Realization", "from_circuits", "matroid_of_vectors", "paving_from_hyperplanes",
    "uniform", "fixture", "fixture_names",
]
