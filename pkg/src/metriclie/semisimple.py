"""Simple-ideal decomposition of semisimple Lie algebras and the
compact/noncompact split, with form-compatibility reporting.

The decomposition works through the centroid (the commutant of the
adjoint representation): for a semisimple algebra it is a product of
fields, and the primitive idempotents of a generating element cut out
the minimal ideals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from . import linalg as la
from .core import (
    LieAlgebra,
    SubspaceBasis,
    ad,
    killing_matrix,
    subspace_from_spanning,
)
from .errors import CertificateError, PreconditionError
from .forms import MetricLieAlgebra, SymBilinearForm, metric_radical, signature
from .linalg import Mat, Vec

_X = sp.Symbol("x")


@dataclass(frozen=True)
class SplitResult:
    simple_ideals: tuple[SubspaceBasis, ...]
    compact_part: SubspaceBasis
    noncompact_part: SubspaceBasis


@dataclass(frozen=True)
class SplitFormReport:
    s_invariant: bool
    k_perp_s: bool
    s_cap_radical_zero: bool
    ideal_constants: tuple[Fraction | None, ...]  # one per noncompact ideal
    uniform_constant: Fraction | None  # set when all ideal constants agree


def _commutant_of_adjoint(alg: LieAlgebra) -> tuple[Mat, ...]:
    """Basis of {M : M ad(x) = ad(x) M for all x}."""
    n = alg.dim
    ads = [ad(alg, la.unit_vec(n, i)).matrix for i in range(n)]
    rows: list[Vec] = []
    for a in ads:
        # (M a - a M)_{kl} = sum_p M_{kp} a_{pl} - a_{kp} M_{pl}
        for k in range(n):
            for l in range(n):
                row = [la.ZERO] * (n * n)
                for p in range(n):
                    row[k * n + p] += a[p][l]
                    row[p * n + l] -= a[k][p]
                rows.append(tuple(row))
    sols = la.kernel(tuple(rows))
    return tuple(
        tuple(tuple(s[i * n + j] for j in range(n)) for i in range(n)) for s in sols
    )


def _poly_from_fractions(p: la.Poly) -> sp.Poly:
    return sp.Poly([sp.Rational(c.numerator, c.denominator) for c in p], _X, domain="QQ")


def simple_decomposition(alg: LieAlgebra) -> tuple[SubspaceBasis, ...]:
    """Minimal ideals of a semisimple Lie algebra, pairwise orthogonal
    for the Killing form and summing to the whole algebra.
    """
    n = alg.dim
    kappa = killing_matrix(alg)
    if not signature(SymBilinearForm(kappa)).is_nondegenerate:
        raise PreconditionError("Killing form degenerate - not semisimple")
    commutant = _commutant_of_adjoint(alg)
    d = len(commutant)
    generic = None
    for attempt in range(1, 8):
        cand = la.zeros(n, n)
        for i, c in enumerate(commutant):
            cand = la.mat_add(cand, la.mat_scale(Fraction((attempt * (i + 1)) % 11 + i), c))
        if la.poly_deg(la.minimal_polynomial(cand)) == d:
            generic = cand
            break
    if generic is None:
        raise CertificateError("could not find a generating element of the centroid")
    minpoly = _poly_from_fractions(la.minimal_polynomial(generic))
    _, factors = minpoly.factor_list()
    ideals: list[SubspaceBasis] = []
    for fac, mult in factors:
        if mult != 1:
            raise CertificateError("centroid minimal polynomial is not squarefree")
        cofactor = minpoly.quo(fac)
        u, _, gcd = sp.gcdex(cofactor.as_expr(), fac.as_expr(), _X)
        if sp.simplify(gcd - 1) != 0:
            raise CertificateError("centroid factors are not coprime")
        idem_poly = sp.Poly(sp.expand(u * cofactor.as_expr()), _X, domain="QQ")
        coeffs = tuple(
            Fraction(int(c.p), int(c.q)) for c in idem_poly.all_coeffs()
        )
        e = la.poly_eval_mat(coeffs, generic)
        if la.mat_mul(e, e) != e:
            raise CertificateError("constructed centroid element is not idempotent")
        image = la.column_space_basis(e)
        ideals.append(subspace_from_spanning(n, image))

    total = subspace_from_spanning(n, sum((i.vectors for i in ideals), ()))
    if total.dim != n:
        raise CertificateError("minimal ideals do not sum to the whole algebra")
    for i in range(len(ideals)):
        for j in range(i + 1, len(ideals)):
            for u in ideals[i].vectors:
                for v in ideals[j].vectors:
                    if not la.is_zero_vec(alg.bracket(u, v)):
                        raise CertificateError("distinct minimal ideals do not commute")
                    if la.bilinear(kappa, u, v) != 0:
                        raise CertificateError("minimal ideals are not Killing-orthogonal")
    return tuple(ideals)


def _killing_restricted(alg: LieAlgebra, ideal: SubspaceBasis) -> SymBilinearForm:
    kappa = killing_matrix(alg)
    gram = tuple(
        tuple(la.bilinear(kappa, u, v) for v in ideal.vectors) for u in ideal.vectors
    )
    return SymBilinearForm(gram)


def compact_split(alg: LieAlgebra) -> SplitResult:
    """Partition the minimal ideals by Killing-form definiteness: the
    compact part collects the ideals with negative definite restriction."""
    ideals = simple_decomposition(alg)
    compact: list[Vec] = []
    noncompact: list[Vec] = []
    for ideal in ideals:
        sig = signature(_killing_restricted(alg, ideal))
        if sig.p == 0 and sig.r == 0:
            compact.extend(ideal.vectors)
        else:
            noncompact.extend(ideal.vectors)
    return SplitResult(
        ideals,
        subspace_from_spanning(alg.dim, compact),
        subspace_from_spanning(alg.dim, noncompact),
    )


def split_form_report(m: MetricLieAlgebra) -> SplitFormReport:
    """Compatibility of an s-invariant form with the compact/noncompact
    split: orthogonality of the parts, triviality of the noncompact
    intersection with the form's radical, and exact proportionality of
    the form to the Killing form on each noncompact ideal.
    """
    alg, form = m.algebra, m.form
    split = compact_split(alg)
    s = split.noncompact_part
    k = split.compact_part
    n = alg.dim

    # s-invariance: <[x,y], z> + <y, [x,z]> = 0 for x in s
    for x in s.vectors:
        phi = ad(alg, x).matrix
        resid = la.mat_add(
            la.mat_mul(la.transpose(phi), form.matrix), la.mat_mul(form.matrix, phi)
        )
        if not la.is_zero_mat(resid):
            i, j = next(
                (i, j) for i in range(n) for j in range(n) if resid[i][j] != 0
            )
            raise PreconditionError(
                f"form not s-invariant; witness (x, e{i}, e{j}) with x = {x}"
            )

    k_perp_s = all(
        form.apply(u, v) == 0 for u in k.vectors for v in s.vectors
    )
    radical = metric_radical(form)
    s_cap_radical_zero = s.intersect(radical).dim == 0

    noncompact_ideals = [
        ideal
        for ideal in split.simple_ideals
        if s.contains_subspace(ideal)
    ]
    constants: list[Fraction | None] = []
    for ideal in noncompact_ideals:
        kappa_i = _killing_restricted(alg, ideal).matrix
        form_i = form.restrict(ideal.vectors).matrix
        c: Fraction | None = None
        for i in range(len(kappa_i)):
            for j in range(len(kappa_i)):
                if kappa_i[i][j] != 0:
                    c = form_i[i][j] / kappa_i[i][j]
                    break
            if c is not None:
                break
        if c is None or form_i != la.mat_scale(c, kappa_i):
            constants.append(None)
        else:
            constants.append(c)
    uniform = None
    if constants and all(c is not None for c in constants) and len(set(constants)) == 1:
        uniform = constants[0]
    return SplitFormReport(
        s_invariant=True,
        k_perp_s=k_perp_s,
        s_cap_radical_zero=s_cap_radical_zero,
        ideal_constants=tuple(constants),
        uniform_constant=uniform,
    )
