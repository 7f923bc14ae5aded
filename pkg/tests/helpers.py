"""Shared random generators for the test suite.

Everything takes an explicit ``numpy.random.Generator`` so tests stay
reproducible; seeds are fixed in the tests themselves.
"""

from __future__ import annotations

import numpy as np

from biframekit import BiframeSystem, DiscreteMeasure


def random_measure(rng: np.random.Generator, nodes: int) -> DiscreteMeasure:
    weights = rng.uniform(0.2, 3.0, size=nodes)
    return DiscreteMeasure(tuple(f"n{i}" for i in range(nodes)), weights)


def random_matrix(rng: np.random.Generator, rows: int, cols: int,
                  complex_: bool = False) -> np.ndarray:
    m = rng.normal(size=(rows, cols))
    if complex_:
        m = m + 1j * rng.normal(size=(rows, cols))
    return m


def random_target(rng: np.random.Generator, dim: int, complex_: bool = False,
                  rank: int | None = None) -> np.ndarray:
    """Random target operator, optionally of prescribed rank."""
    k = random_matrix(rng, dim, dim, complex_)
    if rank is not None and rank < dim:
        if rank == 0:
            return np.zeros_like(k)
        a = random_matrix(rng, dim, rank, complex_)
        b = random_matrix(rng, rank, dim, complex_)
        k = a @ b
    return k


def random_psd(rng: np.random.Generator, dim: int, complex_: bool = False,
               rank: int | None = None) -> np.ndarray:
    cols = dim if rank is None else max(rank, 0)
    if cols == 0:
        dtype = np.complex128 if complex_ else np.float64
        return np.zeros((dim, dim), dtype=dtype)
    a = random_matrix(rng, dim, cols, complex_)
    return a @ a.conj().T


def random_system(rng: np.random.Generator, dim: int, *, complex_: bool = False,
                  nodes: int | None = None, target: np.ndarray | None = None) -> BiframeSystem:
    """Generic system; the two families are independent, so the frame operator
    is typically non-Hermitian and nothing guarantees validity."""
    if nodes is None:
        nodes = int(rng.integers(dim, 2 * dim + 3))
    measure = random_measure(rng, nodes)
    f = random_matrix(rng, nodes, dim, complex_)
    g = random_matrix(rng, nodes, dim, complex_)
    if target is None:
        target = random_target(rng, dim, complex_)
    elif complex_ and not np.iscomplexobj(target):
        target = np.asarray(target).astype(np.complex128)
    return BiframeSystem.from_samples(measure, f, g, target)


def random_valid_system(rng: np.random.Generator, dim: int, *, complex_: bool = False,
                        nodes: int | None = None, target: np.ndarray | None = None,
                        asym: float = 0.0) -> BiframeSystem:
    """System whose Hermitian part is safely positive definite.

    With ``asym = 0`` the families coincide (so ``S = F* W F`` is PSD and,
    with ``nodes >= dim`` rows in general position, positive definite).  A
    positive ``asym`` shears the synthesis family; the shear is rescaled
    until the Hermitian part keeps a healthy bottom eigenvalue, so validity
    survives for every target.
    """
    if nodes is None:
        nodes = int(rng.integers(dim + 1, 2 * dim + 4))
    measure = random_measure(rng, nodes)
    f = random_matrix(rng, nodes, dim, complex_)
    # Guard against accidentally ill-conditioned draws.
    f += 0.3 * np.eye(nodes, dim, dtype=f.dtype)
    g = f
    if asym > 0.0:
        shear = asym * random_matrix(rng, nodes, dim, complex_)
        for _ in range(8):
            s = (f + shear).T @ (measure.weights[:, None] * np.conj(f))
            herm = (s + s.conj().T) / 2.0
            if np.linalg.eigvalsh(herm).min() > 1e-3:
                break
            shear *= 0.5
        g = f + shear
    if target is None:
        target = random_target(rng, dim, complex_)
    elif complex_ and not np.iscomplexobj(target):
        target = np.asarray(target).astype(np.complex128)
    return BiframeSystem.from_samples(measure, f, g, target)
