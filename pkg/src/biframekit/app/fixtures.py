"""Bundled reference systems.

Six small systems with documented claimed bounds, used throughout the tests
and by the ``demo`` CLI command.  Five of them carry claims that verify; one
(``example-3-4``) carries a claimed bound pair that the toolkit refutes with
an explicit witness, which makes it the canonical regression case for the
negative path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..biframe import BiframeSystem
from ..errors import UnknownFixtureError
from ..measure import from_partition, gauss_legendre


@dataclass(frozen=True)
class Fixture:
    """A reference system plus the bound pair it historically claims."""

    name: str
    system: BiframeSystem
    claimed_bounds: tuple[float, float]
    description: str
    expect_valid: bool = True


def _partition_swap() -> Fixture:
    """Three-cell partition system whose target swaps two coordinates."""
    masses = np.array([3.0, 2.0, 1.5])
    scale = 1.0 / np.sqrt(masses)
    f_rows = np.diag([2.0, 3.0, -2.0]) * scale[:, None]
    g_rows = np.diag([2.0, 1.0, -1.0]) * scale[:, None]
    target = np.array([[1.0, 0.0, 0.0],
                       [0.0, 0.0, 1.0],
                       [0.0, 1.0, 0.0]])
    system = BiframeSystem.from_samples(from_partition(masses), f_rows, g_rows, target)
    return Fixture(
        name="example-3-3",
        system=system,
        claimed_bounds=(2.0, 5.0),
        description="cell-normalized partition system, coordinate-swap target "
                    "(claim valid; upper constant not optimal)",
    )


def _quadrature_circulant(nodes: int = 8) -> Fixture:
    """Polynomial families on [0, 1] against a circulant target.

    The claimed pair (3/4, 4) rests on the inequality
    ``form(f) >= 3 ||f||^2``, which is false: the form's matrix has a
    negative eigenvalue in the direction (1, -1, 0).
    """
    rule = gauss_legendre(0.0, 1.0, nodes)
    w = rule.points
    ones = np.ones_like(w)
    f_rows = np.stack([2.0 * w, ones, ones], axis=1)
    g_rows = np.stack([ones, 2.0 * w, ones], axis=1)
    target = np.array([[1.0, 1.0, 0.0],
                       [0.0, 1.0, 1.0],
                       [1.0, 0.0, 1.0]])
    system = BiframeSystem.from_samples(rule.measure, f_rows, g_rows, target)
    return Fixture(
        name="example-3-4",
        system=system,
        claimed_bounds=(0.75, 4.0),
        description="Gauss-Legendre discretization of polynomial families on "
                    "[0, 1]; the claimed lower bound is refuted",
        expect_valid=False,
    )


def _truncation(dim: int = 8, rank: int = 3) -> Fixture:
    """Doubled first basis direction against a rank-``rank`` truncation target."""
    rows = np.zeros((dim + 1, dim))
    rows[0, 0] = 1.0
    for i in range(dim):
        rows[i + 1, i] = 1.0
    target = np.zeros((dim, dim))
    for i in range(rank):
        target[i, i] = 1.0
    system = BiframeSystem.from_samples(
        from_partition(np.ones(dim + 1)), rows, rows, target
    )
    return Fixture(
        name="example-3-5",
        system=system,
        claimed_bounds=(1.0, 2.0),
        description="orthonormal family with the first direction doubled, "
                    "rank-3 truncation target (dim 8)",
    )


def _promoted_diagonal() -> Fixture:
    """Partition system with Hermitian part diag(5, 7, 11), target 2*diag(1,-1,-1)."""
    masses = np.array([3.0, 2.0, 1.5])
    scale = 1.0 / np.sqrt(masses)
    f_rows = np.array([[5.0, 1.0, 1.0],
                       [-1.0, 7.0, -1.0],
                       [-1.0, 1.0, 11.0]]) * scale[:, None]
    g_rows = np.eye(3) * scale[:, None]
    target = np.diag([2.0, -2.0, -2.0])
    system = BiframeSystem.from_samples(from_partition(masses), f_rows, g_rows, target)
    return Fixture(
        name="example-3-11",
        system=system,
        claimed_bounds=(1.25, 11.0),
        description="plain system with bounds (5, 11) promoted to a scaled "
                    "sign-flip target of norm 2",
    )


def _even_projection(dim: int = 8) -> Fixture:
    """First direction tripled, everything else doubled; even-index projection target."""
    f_rows = np.zeros((dim + 1, dim))
    g_rows = np.zeros((dim + 1, dim))
    f_rows[0, 0] = 1.0
    g_rows[0, 0] = 1.0
    for i in range(dim):
        f_rows[i + 1, i] = 2.0
        g_rows[i + 1, i] = 1.0
    target = np.zeros((dim, dim))
    for i in range(1, dim, 2):
        target[i, i] = 1.0
    system = BiframeSystem.from_samples(
        from_partition(np.ones(dim + 1)), f_rows, g_rows, target
    )
    return Fixture(
        name="example-5-3-right",
        system=system,
        claimed_bounds=(1.0, 3.0),
        description="asymmetric families with Hermitian part diag(3, 2, ..., 2), "
                    "projection onto even-indexed directions (dim 8)",
    )


def _builders():
    return {
        "example-3-3": _partition_swap,
        "example-3-4": _quadrature_circulant,
        "example-3-5": _truncation,
        "example-3-11": _promoted_diagonal,
        "example-5-3-left": lambda: Fixture(
            name="example-5-3-left",
            system=_truncation().system,
            claimed_bounds=(1.0, 2.0),
            description="left tensor factor; identical to example-3-5",
        ),
        "example-5-3-right": _even_projection,
    }


def fixture_names() -> tuple[str, ...]:
    """Names accepted by :func:`fixture`, in catalog order."""
    return tuple(_builders())


def fixture_record(name: str, *, quad_nodes: int | None = None) -> Fixture:
    """Full fixture record (system, claimed bounds, expectations).

    ``quad_nodes`` overrides the quadrature resolution of the one fixture
    built on a quadrature rule; other fixtures ignore it.
    """
    builders = _builders()
    if name not in builders:
        known = ", ".join(builders)
        raise UnknownFixtureError(f"unknown fixture {name!r} (known: {known})")
    if name == "example-3-4" and quad_nodes is not None:
        return _quadrature_circulant(quad_nodes)
    return builders[name]()


def fixture(name: str, *, quad_nodes: int | None = None) -> BiframeSystem:
    """The reference system registered under ``name``."""
    return fixture_record(name, quad_nodes=quad_nodes).system
