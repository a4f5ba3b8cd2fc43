"""Spherical spectrum of finite quaternionic matrices.

The second-order polynomial R_q(A) = A^2 - 2 Re(q) A + |q|^2 I depends on q
only through (Re q, |Im q|), so its kernel is constant on the similarity
sphere [q] = {q0 + u |Im q| : u a unit imaginary}.  The point spectrum is the
set of spheres where that kernel is nontrivial; in finite dimension it is the
whole spherical spectrum (a rank argument empties the residual and continuous
parts).

Spheres are extracted from the eigenvalues of the complex embedding, which
come in conjugate pairs: each pair (lambda, conj(lambda)) folds onto the
sphere (Re lambda, |Im lambda|).  The extraction is verified, not assumed:
every sphere representative is checked to produce a nontrivial R_q kernel.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

import numpy as np

from . import embed
from .errors import InternalInconsistency, PreconditionFailed, SingularSystem
from .qoperator import QOperator, resolvent_poly, symmetry_predicates
from .quat import Quaternion, qnormsq
from .rmodule import LeftMul

REAL_TOL = 1e-9    # |Im lambda| below this is treated as a real point
FOLD_TOL = 1e-8    # conjugate pairing / sphere clustering tolerance
REAL_SPECTRUM_TOL = 1e-8   # "all spheres real" verdict tolerance


@dataclass
class EigenSphere:
    """One eigensphere re + u*im_mag (u unit imaginary); im_mag = 0 is a point."""
    re: float
    im_mag: float
    multiplicity: int

    def representative(self) -> Quaternion:
        return Quaternion(self.re, self.im_mag, 0.0, 0.0)

    def to_dict(self):
        return {"re": self.re, "im_mag": self.im_mag, "mult": self.multiplicity}


@dataclass
class SpectrumReport:
    spheres: list
    all_real: bool
    note: str = ""

    def max_im_mag(self) -> float:
        return max((s.im_mag for s in self.spheres), default=0.0)

    def to_dict(self):
        return {
            "spheres": [s.to_dict() for s in self.spheres],
            "all_real": self.all_real,
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("re,im_mag,multiplicity\n")
        for s in self.spheres:
            buf.write(f"{s.re!r},{s.im_mag!r},{s.multiplicity}\n")
        return buf.getvalue()


def _fold_conjugate_pairs(lam, real_tol, fold_tol):
    """Fold a conjugation-closed eigenvalue multiset onto (re, im_mag) points."""
    reals = sorted(l.real for l in lam if abs(l.imag) <= real_tol)
    pos = sorted((l for l in lam if l.imag > real_tol), key=lambda z: (z.real, z.imag))
    neg = sorted((l for l in lam if l.imag < -real_tol), key=lambda z: (z.real, z.imag))
    if len(pos) != len(neg) or len(reals) % 2 != 0:
        raise InternalInconsistency("eigenvalues are not closed under conjugation")
    points = []
    remaining = [np.conj(z) for z in neg]
    for z in pos:
        dists = [abs(z - w) for w in remaining]
        jmin = int(np.argmin(dists))
        if dists[jmin] > fold_tol:
            raise InternalInconsistency(
                f"no conjugate partner within {fold_tol:g} for eigenvalue {z}")
        remaining.pop(jmin)
        points.append((float(z.real), float(abs(z.imag))))
    for a, b in zip(reals[0::2], reals[1::2]):
        if abs(a - b) > fold_tol:
            raise InternalInconsistency("real eigenvalues do not pair up")
        points.append((float((a + b) / 2.0), 0.0))
    return sorted(points)


def point_sspectrum(A: QOperator, verify_kernels: bool = True,
                    real_tol=REAL_TOL, fold_tol=FOLD_TOL) -> SpectrumReport:
    """Eigensphere list of ``A`` with kernel verification.

    Folds the embedding eigenvalues into spheres and, for each sphere
    representative q = re + i*im_mag, confirms that R_q(A) has a nontrivial
    kernel.  In finite dimension the report also states that the residual and
    continuous parts are empty.
    """
    lam = embed.eigenvalues_c(A)
    points = _fold_conjugate_pairs(lam, real_tol, fold_tol)
    spheres = []
    for re, im in points:
        if spheres and abs(spheres[-1].re - re) <= fold_tol \
                and abs(spheres[-1].im_mag - im) <= fold_tol:
            spheres[-1].multiplicity += 1
        else:
            spheres.append(EigenSphere(re, im, 1))
    if verify_kernels:
        # R_q can be near zero while A is O(1); floor the rank threshold by
        # the natural scale of the polynomial's assembly.
        norm_a = embed.operator_norm(A)
        for s in spheres:
            q = s.representative()
            scale = max((norm_a + abs(q.norm())) ** 2, 1.0)
            kb = embed.kernel_q(resolvent_poly(A, q), scale=scale)
            if kb.qdim < 1:
                raise InternalInconsistency(
                    f"folded sphere ({s.re}, {s.im_mag}) has trivial R_q kernel")
    all_real = max((s.im_mag for s in spheres), default=0.0) <= REAL_SPECTRUM_TOL
    note = ("finite dimension: point spectrum equals the whole spherical "
            "spectrum; residual and continuous parts are empty")
    return SpectrumReport(spheres=spheres, all_real=all_real, note=note)


@dataclass
class RealityVerdict:
    self_adjoint: bool
    all_real: bool
    hypotheses_met: bool
    equivalent: bool
    max_im_mag: float

    def to_dict(self):
        return {
            "self_adjoint": self.self_adjoint,
            "all_real": self.all_real,
            "hypotheses_met": self.hypotheses_met,
            "equivalent": self.equivalent,
            "max_im_mag": self.max_im_mag,
        }


def selfadjoint_iff_real(A: QOperator, L: LeftMul | None = None,
                         strict: bool = False) -> RealityVerdict:
    """Report (self_adjoint, all_real) and assert their equivalence when valid.

    The forward direction (self-adjoint implies a real spherical spectrum)
    needs nothing extra and is always asserted.  The converse holds for
    symmetric operators with iA, jA, kA anti-symmetric; with ``strict`` a
    violated hypothesis raises PreconditionFailed instead of being reported.
    """
    preds = symmetry_predicates(A, L)
    hypotheses = preds.is_symmetric and preds.all_units_anti()
    if strict and not hypotheses:
        raise PreconditionFailed(
            "converse direction needs a symmetric operator with iA, jA, kA "
            "anti-symmetric")
    report = point_sspectrum(A)
    self_adjoint = preds.is_symmetric
    all_real = report.all_real
    if self_adjoint and not all_real:
        raise InternalInconsistency("self-adjoint operator with non-real spectrum")
    if hypotheses and (self_adjoint != all_real):
        raise InternalInconsistency(
            "reality of the spectrum disagrees with self-adjointness under "
            "valid hypotheses")
    return RealityVerdict(
        self_adjoint=self_adjoint,
        all_real=all_real,
        hypotheses_met=hypotheses,
        equivalent=self_adjoint == all_real,
        max_im_mag=report.max_im_mag(),
    )


def resolvent_inverse_norm(A: QOperator, q: Quaternion) -> float:
    """Operator norm of R_q(A)^{-1} (reciprocal smallest singular value)."""
    R = resolvent_poly(A, q)
    smin = embed.min_singular_value(R)
    if smin <= 0.0:
        raise SingularSystem("R_q(A) is singular; q lies in the spectrum")
    return 1.0 / smin


def resolvent_bound_check(A: QOperator, q: Quaternion, samples: int = 50,
                          seed: int = 0) -> float:
    """Max violation of ||R_q(A)^{-1}|| <= (q1^2+q2^2+q3^2)^{-1}, clipped at 0.

    Solves R_q(A) x = psi through the embedding for random unit psi and also
    checks the stronger per-vector inequality
    ||R_q(A) phi|| >= (q1^2+q2^2+q3^2) ||phi||.  Requires A self-adjoint and
    q non-real.
    """
    if q.im_norm() == 0.0:
        raise PreconditionFailed("resolvent bound needs a non-real shift")
    if not symmetry_predicates(A).is_symmetric:
        raise PreconditionFailed("resolvent bound needs a self-adjoint operator")
    im2 = q.im_norm() ** 2
    R = resolvent_poly(A, q)
    M = embed.chi(R).matrix
    s = np.linalg.svd(M, compute_uv=False)
    if s[-1] <= 1e-14 * s[0]:
        raise SingularSystem("R_q(A) is numerically singular")
    rng = np.random.default_rng(seed)
    block = rng.standard_normal((A.dim, samples, 4))
    block /= np.sqrt(qnormsq(block).sum(axis=0))[None, :, None]
    worst = 0.0
    for idx in range(samples):
        psi_c = block[:, idx, :]
        b = np.empty(2 * A.dim, dtype=complex)
        b[0::2] = psi_c[:, 0] + 1j * psi_c[:, 3]
        b[1::2] = psi_c[:, 2] + 1j * psi_c[:, 1]
        x = np.linalg.solve(M, b)
        worst = max(worst, float(np.linalg.norm(x)) * im2 / float(np.linalg.norm(b)) - 1.0)
    applied = R.apply_block(block)
    lower = np.sqrt(qnormsq(applied).sum(axis=0)) / im2   # ||R phi|| / (im2 * ||phi||)
    worst = max(worst, float(np.max(1.0 - lower)))
    return max(0.0, worst)
