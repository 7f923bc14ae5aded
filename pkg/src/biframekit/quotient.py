"""Quotients of one operator by another, and the validity checks they enable.

For operators ``U`` and ``V`` on the same space, the *quotient* ``[U/V]`` is
the map ``V f -> U f`` on ``range(V)``.  It is well defined exactly when
``null(V) <= null(U)``; its norm is the best constant ``c`` in
``||U f|| <= c ||V f||``.  That constant is what connects quotients to bound
analysis: a system is valid against a target ``K`` precisely when
``[K* / H^{1/2}]`` is well defined (``H`` the Hermitian part of the frame
operator), and then the optimal lower bound is ``1 / norm^2``.

Both sides of that equivalence are rank decisions, so they can split under
rounding when a system sits numerically on the boundary.  The cross-check
below therefore never asserts agreement; it reports a shared verdict when
the two predicates agree and ``None`` (indeterminate at tolerance) when they
do not.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .biframe import BiframeSystem, frame_operator, gram_target, optimal_bounds
from .errors import DimensionMismatchError, NotPSDError
from .linalg import DEFAULT_TOL, RANK_TOL
from .opcalc import apply_operator


@dataclass(frozen=True, eq=False)
class QuotientResult:
    """Existence, norm and witnesses for a quotient ``[U/V]``.

    ``violation_witness`` is a unit vector in ``null(V)`` outside ``null(U)``
    when the quotient does not exist.  ``achiever`` is a unit vector where
    the ratio ``||U f|| / ||V f||`` attains the norm (``None`` for the
    degenerate ``V = 0`` case, which leaves nothing to achieve).
    """

    exists: bool
    norm: float | None
    violation_witness: np.ndarray | None
    achiever: np.ndarray | None


def quotient_norm(u, v, *, rank_tol: float = RANK_TOL) -> QuotientResult:
    """Decide whether ``[U/V]`` exists and compute its norm if so.

    Null-space containment is tested through an orthonormal null basis of
    ``V``: the quotient exists iff ``U`` annihilates that basis to within
    ``rank_tol`` (relative to ``||U||``).  The norm is the spectral norm of
    ``U V^+``, whose kernel already contains ``range(V)``-orthogonal
    directions, so no explicit restriction is needed.
    """
    u_mat = linalg.as_matrix(u)
    v_mat = linalg.as_matrix(v)
    if u_mat.shape != v_mat.shape:
        raise DimensionMismatchError(
            f"quotient needs operators of equal shape, got {u_mat.shape} and {v_mat.shape}"
        )

    null_basis = linalg.orthonormal_nullspace(v_mat, rank_tol=rank_tol)
    u_scale = max(1.0, linalg.spectral_norm(u_mat))
    if null_basis.shape[1]:
        restricted = u_mat @ null_basis
        top = np.linalg.svd(restricted, compute_uv=False)
        if top.size and top[0] > rank_tol * u_scale:
            _, _, vh = np.linalg.svd(restricted)
            witness = linalg.canonical_sign(null_basis @ np.conj(vh[0]))
            return QuotientResult(False, None, witness, None)

    if linalg.operator_rank(v_mat, rank_tol=rank_tol) == 0:
        # V = 0 forces U = 0 (containment already checked); the quotient is
        # the zero map on a trivial range.
        return QuotientResult(True, 0.0, None, None)

    ratio = u_mat @ linalg.pseudo_inverse(v_mat, rank_tol=rank_tol)
    sigma, achieved = _top_singular(ratio)
    if sigma <= rank_tol * u_scale:
        # U vanishes on range(V*): the ratio is 0 along any non-null input.
        _, direction = _top_singular(v_mat)
        return QuotientResult(True, 0.0, None, direction)
    achiever = linalg.pseudo_inverse(v_mat, rank_tol=rank_tol) @ achieved
    return QuotientResult(True, float(sigma), None,
                          linalg.canonical_sign(linalg.unit_vector(achiever)))


def _top_singular(a: np.ndarray) -> tuple[float, np.ndarray]:
    """Largest singular value and the corresponding right-singular vector."""
    _, sigma, vh = np.linalg.svd(a)
    return float(sigma[0]), linalg.canonical_sign(np.conj(vh[0]))


@dataclass(frozen=True, eq=False)
class ValidityCrossCheck:
    """Two independent answers to "is this system valid against its target?".

    ``pencil_valid`` comes from the eigenvalue pencil
    (:func:`~biframekit.biframe.optimal_bounds`); ``quotient_bounded`` from
    existence of ``[K*/H^{1/2}]``.  ``verdict`` is their shared value, or
    ``None`` when they disagree (indeterminate at tolerance).  When valid,
    ``lower_opt`` and ``quotient_norm`` should satisfy
    ``lower_opt * norm^2 = 1``.
    """

    pencil_valid: bool
    quotient_bounded: bool
    quotient_norm: float | None
    lower_opt: float | None
    verdict: bool | None

    @property
    def indeterminate(self) -> bool:
        return self.verdict is None


def validity_cross_check(system: BiframeSystem, *, tol: float = DEFAULT_TOL,
                         rank_tol: float = RANK_TOL) -> ValidityCrossCheck:
    """Cross-check pencil validity against quotient existence.

    Requires the Hermitian part of the frame operator to be PSD (the upper
    estimate alone); its PSD square root is the quotient's denominator.
    """
    herm = linalg.hermitian_part(frame_operator(system))
    if not linalg.is_psd(herm, tol=tol):
        raise NotPSDError("frame operator's Hermitian part has a negative eigenvalue")

    report = optimal_bounds(system, tol=tol)
    quot = quotient_norm(linalg.adjoint(system.target), linalg.sqrt_psd(herm, tol=tol),
                         rank_tol=rank_tol)
    agree = bool(report.valid) == bool(quot.exists)
    return ValidityCrossCheck(
        pencil_valid=bool(report.valid),
        quotient_bounded=bool(quot.exists),
        quotient_norm=quot.norm,
        lower_opt=report.lower_opt,
        verdict=bool(report.valid) if agree else None,
    )


@dataclass(frozen=True, eq=False)
class TransformEquivalences:
    """Three equivalent validity tests for a system pushed through ``T``.

    * ``pushed_valid`` -- the pushed system is valid against the pushed
      target ``T K`` (eigenvalue pencil);
    * ``quotient_plain`` -- ``[(T K)* / H^{1/2} T*]`` exists;
    * ``quotient_pushed`` -- ``[(T K)* / (T H T*)^{1/2}]`` exists.

    ``degenerate`` flags ``T K = 0``, where all three hold vacuously.
    """

    pushed_valid: bool
    quotient_plain: bool
    quotient_pushed: bool
    degenerate: bool

    @property
    def all_agree(self) -> bool:
        return self.pushed_valid == self.quotient_plain == self.quotient_pushed


def transform_equivalences(system: BiframeSystem, t, *, tol: float = DEFAULT_TOL,
                           rank_tol: float = RANK_TOL) -> TransformEquivalences:
    """Evaluate the three equivalent validity predicates for a push by ``T``."""
    t_mat = linalg.as_matrix(t, square=True)
    if t_mat.shape[0] != system.dim:
        raise DimensionMismatchError(
            f"transform is {t_mat.shape[0]}x{t_mat.shape[1]}, system dimension is {system.dim}"
        )
    herm = linalg.hermitian_part(frame_operator(system))
    if not linalg.is_psd(herm, tol=tol):
        raise NotPSDError("frame operator's Hermitian part has a negative eigenvalue")

    pushed = apply_operator(system, t_mat, tol=tol)
    pushed_report = optimal_bounds(pushed.system, tol=tol)

    root = linalg.sqrt_psd(herm, tol=tol)
    numerator = linalg.adjoint(pushed.system.target)
    plain = quotient_norm(numerator, root @ linalg.adjoint(t_mat), rank_tol=rank_tol)
    pushed_root = linalg.sqrt_psd(t_mat @ herm @ linalg.adjoint(t_mat), tol=tol)
    through = quotient_norm(numerator, pushed_root, rank_tol=rank_tol)

    target_scale = linalg.spectral_norm(system.target) * linalg.spectral_norm(t_mat)
    degenerate = linalg.spectral_norm(pushed.system.target) <= rank_tol * max(1.0, target_scale)
    return TransformEquivalences(
        pushed_valid=bool(pushed_report.valid),
        quotient_plain=bool(plain.exists),
        quotient_pushed=bool(through.exists),
        degenerate=bool(degenerate),
    )
