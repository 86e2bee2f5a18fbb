"""Symmetric bilinear forms on Lie algebras.

Signature and Witt machinery is exact over Q. Orthogonal bases keep
their rational diagonal entries; only the signs are normalized (square
roots would leave the rationals).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .core import (
    LieAlgebra,
    SubspaceBasis,
    ad,
    bracket_spans,
    center,
    jordan_chevalley,
    nilradical,
    series,
    subalgebra_on,
    subspace_from_spanning,
)
from .errors import CertificateError, PreconditionError
from .linalg import Mat, Vec


@dataclass(frozen=True)
class SymBilinearForm:
    matrix: Mat

    def __post_init__(self):
        m = la.mat(self.matrix)
        object.__setattr__(self, "matrix", m)
        if m != la.transpose(m):
            raise ValueError("form matrix is not symmetric")

    @property
    def dim(self) -> int:
        return la.nrows(self.matrix)

    def apply(self, u: Vec, v: Vec) -> Fraction:
        return la.bilinear(self.matrix, la.vec(u), la.vec(v))

    def restrict(self, vectors: tuple[Vec, ...]) -> "SymBilinearForm":
        gram = tuple(
            tuple(self.apply(u, v) for v in vectors) for u in vectors
        )
        return SymBilinearForm(gram)

    def is_zero(self) -> bool:
        return la.is_zero_mat(self.matrix)


@dataclass(frozen=True)
class Signature:
    p: int
    q: int
    r: int

    @property
    def n(self) -> int:
        return self.p + self.q + self.r

    @property
    def is_nondegenerate(self) -> bool:
        return self.r == 0

    @property
    def is_definite(self) -> bool:
        return self.r == 0 and (self.p == 0 or self.q == 0)

    @property
    def witt_index(self) -> int:
        return min(self.p, self.q)


@dataclass(frozen=True)
class MetricLieAlgebra:
    algebra: LieAlgebra
    form: SymBilinearForm

    def __post_init__(self):
        if self.form.dim != self.algebra.dim:
            raise ValueError("form dimension does not match the algebra")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def is_invariant(self) -> bool:
        return is_invariant(self).passed

    def is_nondegenerate(self) -> bool:
        return signature(self.form).is_nondegenerate


@dataclass(frozen=True)
class WittBasis:
    """Basis v_1..v_k, w_1..w_{n-2k}, v*_1..v*_k with <v_i, v*_j> = d_ij,
    v and v* totally isotropic, w orthogonal to both, and the w part
    orthogonal with recorded diagonal values (signs only, not unit)."""

    v: tuple[Vec, ...]
    w: tuple[Vec, ...]
    v_star: tuple[Vec, ...]
    w_diagonal: tuple[Fraction, ...]


@dataclass(frozen=True)
class InvarianceReport:
    passed: bool
    witness: tuple[int, int, int] | None

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class ProbeReport:
    passed: bool
    witness: tuple[Vec, Vec, Vec] | None
    samples_checked: int

    def __bool__(self) -> bool:
        return self.passed


def diagonalize_symmetric(b: SymBilinearForm) -> tuple[tuple[Vec, ...], tuple[Fraction, ...]]:
    """Vectors t_1..t_n with B(t_i, t_j) = d_i delta_ij; exact congruence
    diagonalization with hyperbolic-pair handling for zero diagonals."""
    n = b.dim
    vecs = [la.unit_vec(n, i) for i in range(n)]
    out_vecs: list[Vec] = []
    out_diag: list[Fraction] = []
    while vecs:
        pivot = next((i for i, v in enumerate(vecs) if b.apply(v, v) != 0), None)
        if pivot is None:
            pair = next(
                (
                    (i, j)
                    for i in range(len(vecs))
                    for j in range(i + 1, len(vecs))
                    if b.apply(vecs[i], vecs[j]) != 0
                ),
                None,
            )
            if pair is None:
                # remaining vectors span the radical
                out_vecs.extend(vecs)
                out_diag.extend([Fraction(0)] * len(vecs))
                break
            i, j = pair
            vecs[i] = la.vec_add(vecs[i], vecs[j])
            pivot = i
        v = vecs.pop(pivot)
        d = b.apply(v, v)
        vecs = [
            la.vec_sub(u, la.vec_scale(b.apply(u, v) / d, v)) for u in vecs
        ]
        out_vecs.append(v)
        out_diag.append(d)
    return tuple(out_vecs), tuple(out_diag)


def signature(b: SymBilinearForm) -> Signature:
    _, diag = diagonalize_symmetric(b)
    p = sum(1 for d in diag if d > 0)
    q = sum(1 for d in diag if d < 0)
    r = sum(1 for d in diag if d == 0)
    return Signature(p, q, r)


def metric_radical(m: MetricLieAlgebra | SymBilinearForm) -> SubspaceBasis:
    form = m.form if isinstance(m, MetricLieAlgebra) else m
    return SubspaceBasis(form.dim, la.kernel(form.matrix))


def is_invariant(m: MetricLieAlgebra) -> InvarianceReport:
    """Check <[x,y1],y2> = -<y1,[x,y2]> on all basis triples."""
    alg, form = m.algebra, m.form
    n = alg.dim
    ads = [ad(alg, la.unit_vec(n, i)).matrix for i in range(n)]
    for x in range(n):
        # invariance of the form under ad(b_x): ad^T B + B ad = 0
        lhs = la.mat_add(
            la.mat_mul(la.transpose(ads[x]), form.matrix),
            la.mat_mul(form.matrix, ads[x]),
        )
        for y1 in range(n):
            for y2 in range(n):
                if lhs[y1][y2] != 0:
                    return InvarianceReport(False, (x, y1, y2))
    return InvarianceReport(True, None)


def _random_rational_vec(rng: random.Random, n: int) -> Vec:
    return tuple(
        Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)
    )


def nilinvariance_probe(m: MetricLieAlgebra, samples: int = 25, seed: int = 0) -> ProbeReport:
    """Semi-decision for nil-invariance: checks the skewness identity for
    the nilpotent Jordan parts of ad(y), for every basis y and for
    ``samples`` random rational y. A failure is conclusive; a pass is
    evidence only (the full condition quantifies over a Zariski closure
    that is not finitely checkable from structure constants).
    """
    alg, form = m.algebra, m.form
    n = alg.dim
    rng = random.Random(seed)
    candidates = [la.unit_vec(n, i) for i in range(n)]
    candidates += [_random_rational_vec(rng, n) for _ in range(samples)]
    checked = 0
    for y in candidates:
        phi_n = jordan_chevalley(ad(alg, y)).nilpotent.matrix
        residual = la.mat_add(
            la.mat_mul(la.transpose(phi_n), form.matrix),
            la.mat_mul(form.matrix, phi_n),
        )
        checked += 1
        if not la.is_zero_mat(residual):
            i, j = next(
                (i, j)
                for i in range(n)
                for j in range(n)
                if residual[i][j] != 0
            )
            return ProbeReport(False, (y, la.unit_vec(n, i), la.unit_vec(n, j)), checked)
    return ProbeReport(True, None, checked)


def is_totally_isotropic(form: SymBilinearForm, sub: SubspaceBasis) -> tuple[bool, tuple[Vec, Vec] | None]:
    for u in sub.vectors:
        for v in sub.vectors:
            if form.apply(u, v) != 0:
                return False, (u, v)
    return True, None


def orthogonal_complement(form: SymBilinearForm, sub: SubspaceBasis) -> SubspaceBasis:
    """{x : <x, u> = 0 for all u in sub}; needs no non-degeneracy."""
    if sub.dim == 0:
        return SubspaceBasis(form.dim, la.identity(form.dim))
    rows = tuple(la.mat_vec(form.matrix, u) for u in sub.vectors)
    return SubspaceBasis(form.dim, la.kernel(rows))


def witt_basis(m: MetricLieAlgebra | SymBilinearForm, isotropic: SubspaceBasis) -> WittBasis:
    """Witt decomposition relative to a totally isotropic subspace.

    Dual vectors are the lexicographically-smallest pivot solutions of
    the pairing system, then corrected to be isotropic and mutually
    orthogonal. The complement w is orthogonalized exactly.
    """
    form = m.form if isinstance(m, MetricLieAlgebra) else m
    n = form.dim
    if not signature(form).is_nondegenerate:
        raise PreconditionError("Witt decomposition requires a non-degenerate form")
    ok, witness = is_totally_isotropic(form, isotropic)
    if not ok:
        raise PreconditionError(
            f"subspace is not totally isotropic; witness pair {witness}"
        )
    u = isotropic.vectors
    k = len(u)
    duals: list[Vec] = []
    for i in range(k):
        rows = [la.mat_vec(form.matrix, uj) for uj in u]
        rows += [la.mat_vec(form.matrix, d) for d in duals]
        rhs = la.vec([1 if j == i else 0 for j in range(k)] + [0] * len(duals))
        y = la.solve_lex(tuple(rows), rhs)
        if y is None:
            raise CertificateError("pairing system unsolvable for a non-degenerate form")
        # make the dual isotropic without disturbing the pairings
        y = la.vec_sub(y, la.vec_scale(form.apply(y, y) / 2, u[i]))
        duals.append(y)
    span = subspace_from_spanning(n, u + tuple(duals))
    w_space = orthogonal_complement(form, span)
    w_form = form.restrict(w_space.vectors)
    w_coord_vecs, w_diag = diagonalize_symmetric(w_form)
    if any(d == 0 for d in w_diag):
        raise CertificateError("degenerate complement in Witt decomposition")
    w_vectors = []
    for cv in w_coord_vecs:
        vect = la.zeros_vec(n)
        for c, basis_vec in zip(cv, w_space.vectors):
            vect = la.vec_add(vect, la.vec_scale(c, basis_vec))
        w_vectors.append(vect)
    return WittBasis(u, tuple(w_vectors), tuple(duals), w_diag)


def j0_ideal(m: MetricLieAlgebra) -> SubspaceBasis:
    """The characteristic ideal z(n) ∩ [g, n] for the nilradical n.

    Totally isotropic whenever the form is invariant (asserted)."""
    rep = series(m.algebra)
    if not rep.is_solvable:
        raise PreconditionError("j0 is defined here for solvable algebras only")
    inv = is_invariant(m)
    if not inv.passed:
        raise PreconditionError(f"form is not invariant; witness triple {inv.witness}")
    alg = m.algebra
    nil = nilradical(alg)
    nil_alg = subalgebra_on(alg, nil)
    zn_coords = center(nil_alg)
    zn = subspace_from_spanning(
        alg.dim,
        [
            _lift(coords, nil.vectors, alg.dim)
            for coords in zn_coords.vectors
        ],
    )
    gn = bracket_spans(alg, alg.full_space(), nil)
    j0 = zn.intersect(gn)
    ok, witness = is_totally_isotropic(m.form, j0)
    if not ok:
        raise CertificateError(
            f"j0 not totally isotropic under an invariant form; witness {witness}"
        )
    return j0


def _lift(coords: Vec, basis: tuple[Vec, ...], n: int) -> Vec:
    out = la.zeros_vec(n)
    for c, b in zip(coords, basis):
        out = la.vec_add(out, la.vec_scale(c, b))
    return out


def central_isotropic_ideal(m: MetricLieAlgebra) -> SubspaceBasis | None:
    """A non-zero totally isotropic central ideal inside j0, or None for
    an abelian algebra.

    Non-degeneracy of the form is not required: the computation only
    uses invariance, and degenerate invariant forms are accepted (some
    small nilpotent algebras admit no invariant scalar product at all).
    """
    rep = series(m.algebra)
    if not rep.is_solvable:
        raise PreconditionError("central isotropic ideal requires a solvable algebra")
    if rep.is_abelian:
        return None
    j0 = j0_ideal(m)
    cand = j0.intersect(center(m.algebra))
    if cand.dim == 0:
        raise CertificateError(
            "no central isotropic ideal found inside j0 for a non-abelian solvable algebra"
        )
    return cand


def isotropic_vector(form: SymBilinearForm) -> Vec | None:
    """A non-zero rational isotropic vector of an indefinite form, if one
    can be found.

    Strategy: isotropic basis vectors, hyperbolic pairs, sign-matched
    diagonal pairs (-d_i/d_j a rational square), then a bounded search
    over small-coefficient combinations of the diagonalizing basis.
    Rational quadratic forms can be indefinite yet anisotropic, so None
    is a legitimate answer.
    """
    n = form.dim
    for i in range(n):
        e = la.unit_vec(n, i)
        if form.apply(e, e) == 0 and not la.is_zero_vec(la.mat_vec(form.matrix, e)):
            return e
    basis, diag = diagonalize_symmetric(form)
    for i in range(n):
        if diag[i] == 0:
            continue
        for j in range(i + 1, n):
            if diag[j] == 0 or (diag[i] > 0) == (diag[j] > 0):
                continue
            ratio = -diag[i] / diag[j]
            num, den = ratio.numerator, ratio.denominator
            rn, rd = _isqrt_exact(num), _isqrt_exact(den)
            if rn is not None and rd is not None:
                # d_i + ratio d_j = 0 with ratio = (rn/rd)^2
                return la.vec_add(
                    la.vec_scale(rd, basis[i]), la.vec_scale(rn, basis[j])
                )
    nonzero = [(basis[i], diag[i]) for i in range(n) if diag[i] != 0]
    for size in (3, 4):
        if len(nonzero) < size:
            break
        for combo in itertools.combinations(range(len(nonzero)), size):
            for coeffs in itertools.product(range(0, 4), repeat=size):
                if all(c == 0 for c in coeffs):
                    continue
                val = sum(
                    Fraction(c * c) * nonzero[idx][1]
                    for c, idx in zip(coeffs, combo)
                )
                if val == 0:
                    out = la.zeros_vec(n)
                    for c, idx in zip(coeffs, combo):
                        out = la.vec_add(out, la.vec_scale(c, nonzero[idx][0]))
                    return out
    return None


def _isqrt_exact(x: int) -> int | None:
    if x < 0:
        return None
    r = int(x**0.5)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand * cand == x:
            return cand
    return None
