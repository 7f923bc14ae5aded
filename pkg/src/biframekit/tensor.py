"""Tensor (Kronecker) products of biframe systems.

The tensor space of two coordinate spaces is realized concretely as the
Kronecker coordinate space of dimension ``d1*d2``, with the left factor
major: the pair ``(a, b)`` lands at flat index ``a*d2 + b``.  The node set
of a combined system uses the same convention through
:func:`~biframekit.measure.product_measure`, so every structural law
(``S_combined = S1 (x) S2``, norm multiplicativity, bound products) is a
plain matrix identity in these coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .biframe import BiframeSystem, optimal_bounds
from .errors import FieldMismatchError, NotABiframeError
from .linalg import DEFAULT_TOL
from .measure import product_measure


def kron(a, b) -> np.ndarray:
    """Kronecker product with the left factor major.

    ``kron(a, b)[i*rows(b) + j, k*cols(b) + l] = a[i, k] * b[j, l]``.  The
    product is norm-multiplicative, respects composition factorwise
    (``(A (x) B)(C (x) D) = AC (x) BD``), commutes with adjoints, and is
    invertible exactly when both factors are.
    """
    return np.kron(np.asarray(a), np.asarray(b))


@dataclass(frozen=True, eq=False)
class TensorSystem:
    """A combined biframe system remembering its two factors."""

    left: BiframeSystem
    right: BiframeSystem
    combined: BiframeSystem


def tensor_system(s1: BiframeSystem, s2: BiframeSystem) -> TensorSystem:
    """Combine two systems on the Kronecker coordinate space.

    Sample families, weights and targets all combine by Kronecker product;
    in particular the combined frame operator is ``S1 (x) S2`` and a valid
    bound pair for each factor multiplies into a valid pair for the result.
    """
    if s1.field_name != s2.field_name:
        raise FieldMismatchError(
            f"cannot combine a {s1.field_name} system with a {s2.field_name} one"
        )
    return TensorSystem(
        left=s1,
        right=s2,
        combined=BiframeSystem.from_samples(
            product_measure(s1.measure, s2.measure),
            kron(s1.analysis.samples, s2.analysis.samples),
            kron(s1.synthesis.samples, s2.synthesis.samples),
            kron(s1.target, s2.target),
        ),
    )


def factor_bounds_check(ts: TensorSystem, *, tol: float = DEFAULT_TOL) -> bool:
    """Check that optimal bounds of a combined system multiply from its factors.

    All three systems must be valid (otherwise :class:`NotABiframeError`);
    returns whether ``lower_opt(combined) >= lower_opt(left)*lower_opt(right) - tol``
    and ``upper_opt(combined) <= upper_opt(left)*upper_opt(right) + tol``.
    """
    combined = optimal_bounds(ts.combined, tol=tol)
    if not combined.valid:
        raise NotABiframeError("combined system is not valid against its target")
    left = optimal_bounds(ts.left, tol=tol)
    right = optimal_bounds(ts.right, tol=tol)
    if not left.valid:
        raise NotABiframeError("left factor is not valid against its target")
    if not right.valid:
        raise NotABiframeError("right factor is not valid against its target")

    lower_ok = combined.lower_opt >= left.lower_opt * right.lower_opt - tol
    upper_ok = combined.upper_opt <= left.upper_opt * right.upper_opt + tol
    return bool(lower_ok and upper_ok)
