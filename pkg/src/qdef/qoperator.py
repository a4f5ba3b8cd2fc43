"""Dense quaternionic matrices acting as right-linear operators on H^n.

The matrix entry A[n, m] multiplies the m-th coordinate from the left, so
application commutes with right scalars: A(phi * q) = (A phi) * q.  The
adjoint is the conjugate transpose of the entries and satisfies
<psi | A phi> = <adjoint(A) psi | phi>.

Subtracting a non-real scalar from an operator is basis-dependent: (A - q)phi
here always means apply(A, phi) - left_scale(L, q, phi) for an explicit left
multiplication L.  With the canonical basis the left scalar operator is just
diag(q), but a rotated basis gives a genuinely different matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import embed
from .errors import DimensionMismatch, InternalInconsistency, PreconditionFailed
from .quat import (Quaternion, format_quaternion, parse_quaternion, qconj,
                   qmatmul, qmul, qnormsq)
from .rmodule import LeftMul, QVector, random_qvector

SYM_ATOL = 1e-10  # entrywise tolerance for symmetry predicates


class QOperator:
    """n x n quaternionic matrix with entries stored as an (n, n, 4) array."""

    __slots__ = ("entries",)

    def __init__(self, rows):
        if isinstance(rows, np.ndarray) and rows.ndim == 3:
            arr = np.asarray(rows, dtype=float).copy()
        else:
            arr = np.array(
                [[_as_components(x) for x in row] for row in rows], dtype=float)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 4:
            raise ValueError("expected square quaternionic matrix entries")
        self.entries = arr

    @classmethod
    def from_entries(cls, arr):
        op = cls.__new__(cls)
        op.entries = np.asarray(arr, dtype=float)
        return op

    @classmethod
    def identity(cls, dim):
        arr = np.zeros((dim, dim, 4))
        arr[np.arange(dim), np.arange(dim), 0] = 1.0
        return cls.from_entries(arr)

    @classmethod
    def zero(cls, dim):
        return cls.from_entries(np.zeros((dim, dim, 4)))

    @classmethod
    def from_real(cls, mat):
        mat = np.asarray(mat, dtype=float)
        arr = np.zeros(mat.shape + (4,))
        arr[..., 0] = mat
        return cls.from_entries(arr)

    @property
    def dim(self):
        return self.entries.shape[0]

    def entry(self, i, j) -> Quaternion:
        return Quaternion.from_array(self.entries[i, j])

    def apply(self, phi: QVector) -> QVector:
        if phi.dim != self.dim:
            raise DimensionMismatch("operator and vector dimensions differ")
        return QVector.from_components(qmatmul(self.entries, phi.components))

    __call__ = apply

    def apply_block(self, block):
        """Apply to a block of vectors stored as an (n, s, 4) array."""
        return qmatmul(self.entries, block)

    def adjoint(self) -> QOperator:
        return QOperator.from_entries(qconj(self.entries.transpose(1, 0, 2)))

    def __add__(self, other):
        self._check(other)
        return QOperator.from_entries(self.entries + other.entries)

    def __sub__(self, other):
        self._check(other)
        return QOperator.from_entries(self.entries - other.entries)

    def __neg__(self):
        return QOperator.from_entries(-self.entries)

    def __mul__(self, r):
        if isinstance(r, (int, float)):
            return QOperator.from_entries(self.entries * float(r))
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check(other)
        return QOperator.from_entries(qmatmul(self.entries, other.entries))

    def isclose(self, other, atol=SYM_ATOL):
        return self.dim == other.dim and float(
            np.max(np.abs(self.entries - other.entries))) <= atol

    def max_entry_diff(self, other) -> float:
        self._check(other)
        return float(np.max(np.abs(self.entries - other.entries)))

    def is_real(self, atol=SYM_ATOL) -> bool:
        return float(np.max(np.abs(self.entries[..., 1:]))) <= atol

    def _check(self, other):
        if not isinstance(other, QOperator) or other.dim != self.dim:
            raise DimensionMismatch("operator dimensions differ")

    def __repr__(self):
        return f"QOperator(dim={self.dim})"

    # -- JSON literal format -------------------------------------------------

    def to_json(self) -> str:
        lits = [format_quaternion(self.entry(i, j))
                for i in range(self.dim) for j in range(self.dim)]
        return json.dumps({"dim": self.dim, "entries": lits})

    @classmethod
    def from_json(cls, text: str) -> QOperator:
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_dict(cls, obj) -> QOperator:
        dim = int(obj["dim"])
        lits = obj["entries"]
        if len(lits) != dim * dim:
            raise ValueError("entry count does not match dim*dim")
        arr = np.zeros((dim, dim, 4))
        for idx, lit in enumerate(lits):
            q = parse_quaternion(lit) if isinstance(lit, str) else Quaternion(float(lit))
            arr[idx // dim, idx % dim] = q.to_array()
        return cls.from_entries(arr)


def _as_components(x):
    if isinstance(x, Quaternion):
        return x.to_array()
    if isinstance(x, (int, float)):
        return np.array([float(x), 0.0, 0.0, 0.0])
    return np.asarray(x, dtype=float)


def apply(A: QOperator, phi: QVector) -> QVector:
    return A.apply(phi)


def adjoint(A: QOperator) -> QOperator:
    return A.adjoint()


# ---------------------------------------------------------------------------
# scalar-multiplied operators
# ---------------------------------------------------------------------------

def left_scalar(q: Quaternion, dim=None, L: LeftMul | None = None) -> QOperator:
    """Matrix of the left scalar operator phi -> q . phi.

    With the canonical basis this is diag(q); for a general basis {e_k} the
    matrix is sum_k e_k q <e_k|.>, assembled from outer products.
    """
    if L is None:
        if dim is None:
            raise ValueError("need a dimension or a LeftMul")
        arr = np.zeros((dim, dim, 4))
        arr[np.arange(dim), np.arange(dim)] = q.to_array()
        return QOperator.from_entries(arr)
    B = L.basis.matrix                                    # (k, n, 4)
    bq = qmul(B, q.to_array()[None, None, :])             # e_k q
    outer = qmul(bq[:, :, None, :], qconj(B)[:, None, :, :])
    return QOperator.from_entries(outer.sum(axis=0))


def shift_left_scalar(A: QOperator, q: Quaternion, L: LeftMul | None = None) -> QOperator:
    """The operator (A - q), with q acting through the left multiplication L."""
    return A - left_scalar(q, A.dim, L)


def scalar_op(q: Quaternion, A: QOperator, L: LeftMul | None = None,
              side: str = "left") -> QOperator:
    """(qA)phi = q.(A phi) for side="left"; (Aq)phi = A(q.phi) for side="right"."""
    Lq = left_scalar(q, A.dim, L)
    if side == "left":
        return Lq @ A
    if side == "right":
        return A @ Lq
    raise ValueError("side must be 'left' or 'right'")


@dataclass
class SymmetryReport:
    is_symmetric: bool
    is_anti_symmetric: bool
    anti: dict = field(default_factory=dict)   # unit name -> bool for eA
    max_defect: float = 0.0

    def all_units_anti(self) -> bool:
        return all(self.anti.values())


def symmetry_predicates(A: QOperator, L: LeftMul | None = None,
                        atol=SYM_ATOL) -> SymmetryReport:
    """Symmetry of A and anti-symmetry of the unit-scaled operators eA.

    ``anti[e]`` records whether (eA) equals -(eA)^adjoint entrywise, where
    (eA)phi = e.(A phi) through the left multiplication ``L``.
    """
    from .quat import UNITS
    adj = A.adjoint()
    defect = A.max_entry_diff(adj)
    report = SymmetryReport(
        is_symmetric=defect <= atol,
        is_anti_symmetric=float(np.max(np.abs(A.entries + adj.entries))) <= atol,
        max_defect=defect,
    )
    for name, unit in UNITS.items():
        eA = scalar_op(unit, A, L, side="left")
        report.anti[name] = float(
            np.max(np.abs(eA.entries + eA.adjoint().entries))) <= atol
    return report


def resolvent_poly(A: QOperator, q: Quaternion) -> QOperator:
    """A^2 - 2 Re(q) A + |q|^2 I; the coefficients are real, so no basis enters.

    For symmetric A whose unit-scaled versions are anti-symmetric this equals
    (A - q)(A - conj(q)) in either factor order.
    """
    return (A @ A) - (2.0 * q.real) * A + q.norm_sq() * QOperator.identity(A.dim)


# ---------------------------------------------------------------------------
# norm identities
# ---------------------------------------------------------------------------

def _required_units(q: Quaternion):
    names = []
    for name, comp in (("i", q.q1), ("j", q.q2), ("k", q.q3)):
        if comp != 0.0:
            names.append(name)
    return names


def norm_identity_check(A: QOperator, L: LeftMul | None, q: Quaternion,
                        samples: int = 100, seed: int = 0) -> float:
    """Max residual of ||(A-q)phi||^2 = ||(A-q0)phi||^2 + (q1^2+q2^2+q3^2)||phi||^2.

    Requires anti-symmetry of eA for every unit e appearing in q; raises
    PreconditionFailed otherwise.  Sampled on ``samples`` unit vectors.
    """
    preds = symmetry_predicates(A, L)
    for name in _required_units(q):
        if not preds.anti[name]:
            raise PreconditionFailed(f"{name}A is not anti-symmetric")
    M = shift_left_scalar(A, q, L)
    M0 = shift_left_scalar(A, Quaternion(q.real), L)
    im2 = q.im_norm() ** 2
    rng = np.random.default_rng(seed)
    block = rng.standard_normal((A.dim, samples, 4))
    block /= np.sqrt(qnormsq(block).sum(axis=0))[None, :, None]
    lhs = qnormsq(M.apply_block(block)).sum(axis=0)
    rhs = qnormsq(M0.apply_block(block)).sum(axis=0) + im2 * qnormsq(block).sum(axis=0)
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------------------
# self-adjointness criteria
# ---------------------------------------------------------------------------

@dataclass
class CriteriaReport:
    self_adjoint: bool
    kernels_trivial: bool
    ranges_full: bool
    max_defect: float
    agree: bool
    hypotheses_met: bool                 # iA, jA, kA all anti-symmetric
    general_q: str = ""
    general_kernels_trivial: bool | None = None
    general_ranges_full: bool | None = None

    def to_dict(self):
        return {
            "self_adjoint": self.self_adjoint,
            "kernels_trivial": self.kernels_trivial,
            "ranges_full": self.ranges_full,
            "max_defect": self.max_defect,
            "agree": self.agree,
            "hypotheses_met": self.hypotheses_met,
            "general_q": self.general_q,
            "general_kernels_trivial": self.general_kernels_trivial,
            "general_ranges_full": self.general_ranges_full,
        }


def criteria_report(A: QOperator, L: LeftMul | None = None,
                    q: Quaternion | None = None,
                    rank_tol=embed.RANK_TOL) -> CriteriaReport:
    """Evaluate the three equivalent self-adjointness criteria.

    (a) A equals its adjoint entrywise; (b) the kernels of (adjoint(A) -+ i)
    are trivial; (c) the ranges of (A -+ i) are full.  Kernels and ranks come
    from the complex embedding.  The same is evaluated at a general non-real
    shift q (default 1+i+j+k) against its conjugate pair.

    A must be symmetric (PreconditionFailed otherwise).  The equivalence of
    (a)-(c) is guaranteed when iA is anti-symmetric; a disagreement under that
    hypothesis raises InternalInconsistency since it can only be a bug.
    """
    from .quat import I
    if q is None:
        q = Quaternion(1.0, 1.0, 1.0, 1.0)
    preds = symmetry_predicates(A, L)
    if not preds.is_symmetric:
        raise PreconditionFailed("operator is not symmetric")
    adj = A.adjoint()
    n = A.dim
    kernels_trivial = (
        embed.kernel_q(shift_left_scalar(adj, I, L), rank_tol).qdim == 0
        and embed.kernel_q(shift_left_scalar(adj, -I, L), rank_tol).qdim == 0)
    ranges_full = (
        embed.rank_q(shift_left_scalar(A, I, L), rank_tol) == n
        and embed.rank_q(shift_left_scalar(A, -I, L), rank_tol) == n)
    self_adjoint = preds.is_symmetric
    agree = self_adjoint == kernels_trivial == ranges_full
    if preds.anti.get("i", False) and not agree:
        raise InternalInconsistency(
            "self-adjointness criteria disagree under valid hypotheses")
    gk = gr = None
    if q.im_norm() > 0:
        gk = (embed.kernel_q(shift_left_scalar(adj, q, L), rank_tol).qdim == 0
              and embed.kernel_q(shift_left_scalar(adj, q.conjugate(), L), rank_tol).qdim == 0)
        gr = (embed.rank_q(shift_left_scalar(A, q, L), rank_tol) == n
              and embed.rank_q(shift_left_scalar(A, q.conjugate(), L), rank_tol) == n)
        if preds.all_units_anti() and not (self_adjoint == gk == gr):
            raise InternalInconsistency(
                "general-shift criteria disagree under valid hypotheses")
    return CriteriaReport(
        self_adjoint=self_adjoint,
        kernels_trivial=kernels_trivial,
        ranges_full=ranges_full,
        max_defect=preds.max_defect,
        agree=agree,
        hypotheses_met=preds.all_units_anti(),
        general_q=format_quaternion(q),
        general_kernels_trivial=gk,
        general_ranges_full=gr,
    )


# ---------------------------------------------------------------------------
# preset constructors
# ---------------------------------------------------------------------------

def real_symmetric(dim: int, seed: int = 0) -> QOperator:
    """Random real transpose-symmetric matrix.

    With the canonical basis, left scalars commute past real entries, so these
    operators are symmetric with iA, jA, kA all anti-symmetric -- the family
    on which every norm identity and decomposition hypothesis holds exactly.
    """
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((dim, dim))
    return QOperator.from_real((M + M.T) / 2.0)


def hermitian_random(dim: int, seed: int = 0) -> QOperator:
    """Random quaternionic matrix equal to its adjoint (real diagonal)."""
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((dim, dim, 4))
    H = (G + qconj(G.transpose(1, 0, 2))) / 2.0
    return QOperator.from_entries(H)


def random_operator(dim: int, seed: int = 0) -> QOperator:
    rng = np.random.default_rng(seed)
    return QOperator.from_entries(rng.standard_normal((dim, dim, 4)))


def random_vector(dim: int, seed: int = 0) -> QVector:
    return random_qvector(np.random.default_rng(seed), dim)
