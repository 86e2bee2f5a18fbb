"""Reduction by central isotropic ideals and its inverse, the double
extension construction.

Every reduction step certifies itself by rebuilding the input from the
extracted data and comparing structure constants exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg as la
from .core import (
    LieAlgebra,
    SubspaceBasis,
    center,
    is_ideal,
    series,
    subspace_from_spanning,
    validate_structure,
)
from .errors import CertificateError, PreconditionError
from .forms import (
    MetricLieAlgebra,
    SymBilinearForm,
    central_isotropic_ideal,
    is_invariant,
    is_totally_isotropic,
    isotropic_vector,
    orthogonal_complement,
    signature,
    witt_basis,
)
from .linalg import Mat, Vec


@dataclass(frozen=True)
class DoubleExtensionSpec:
    """Data (base, a, delta, xi) describing a double extension.

    ``deltas[i]`` is the action of the i-th extending vector a_i on the
    base, skew with respect to the base form. ``a_brackets`` holds the
    structure constants of the extending algebra a (empty = abelian),
    ``xi`` an optional central term [a_i, a_j] -> dual part.
    """

    base: MetricLieAlgebra
    deltas: tuple[Mat, ...]
    a_brackets: Mapping[tuple[int, int], Vec] = field(default_factory=dict)
    xi: Mapping[tuple[int, int], Vec] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(la.mat(d) for d in self.deltas))
        object.__setattr__(
            self, "a_brackets", {k: la.vec(v) for k, v in dict(self.a_brackets).items()}
        )
        object.__setattr__(
            self, "xi", {k: la.vec(v) for k, v in dict(self.xi).items()}
        )

    @property
    def a_dim(self) -> int:
        return len(self.deltas)

    def a_bracket(self, i: int, j: int) -> Vec:
        s = self.a_dim
        if i == j:
            return la.zeros_vec(s)
        if i < j:
            return self.a_brackets.get((i, j), la.zeros_vec(s))
        return la.vec_scale(-1, self.a_brackets.get((j, i), la.zeros_vec(s)))


@dataclass(frozen=True)
class ReductionStep:
    original: MetricLieAlgebra
    ideal: SubspaceBasis
    duals: tuple[Vec, ...]
    complement: tuple[Vec, ...]
    base: MetricLieAlgebra
    spec: DoubleExtensionSpec
    witt: object  # WittBasis of the original form relative to the ideal


@dataclass(frozen=True)
class ReductionChain:
    steps: tuple[ReductionStep, ...]
    final: MetricLieAlgebra

    @property
    def isotropic_rank(self) -> int:
        return sum(step.ideal.dim for step in self.steps)


def change_basis(m: MetricLieAlgebra, columns: Sequence[Vec], names: Sequence[str]) -> MetricLieAlgebra:
    """Rewrite a metric Lie algebra on a new basis given by coordinate
    vectors in the old one."""
    cols = tuple(la.vec(c) for c in columns)
    n = m.dim
    if len(cols) != n:
        raise PreconditionError("change of basis needs exactly dim vectors")
    t = la.transpose(cols)
    t_inv = la.inverse(t)
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = m.algebra.bracket(cols[i], cols[j])
            brackets[(i, j)] = la.mat_vec(t_inv, w)
    gram = tuple(tuple(m.form.apply(cols[i], cols[j]) for j in range(n)) for i in range(n))
    return MetricLieAlgebra(
        LieAlgebra(n, tuple(names), brackets), SymBilinearForm(gram)
    )


def double_extend(spec: DoubleExtensionSpec) -> MetricLieAlgebra:
    """Build g = a + base + a* with the invariant extended scalar product.

    Brackets: [a_i, a_j] = [a_i, a_j]_a + xi(a_i, a_j), [a_i, x] =
    delta_i x, [x, y] = [x, y]_base + omega(x, y) with omega(x, y)(a_i)
    = <delta_i x, y>, and [a_i, alpha] = -alpha o ad(a_i) on the dual
    part (the coadjoint term; it vanishes for abelian a). The output is
    validated for the Jacobi identity and invariance.
    """
    base = spec.base
    s = spec.a_dim
    m = base.dim
    b = base.form.matrix
    if s == 0:
        raise PreconditionError("double extension needs at least one extending vector")
    for d in spec.deltas:
        if la.nrows(d) != m or la.ncols(d) != m:
            raise PreconditionError("delta matrix size does not match the base")
        resid = la.mat_add(la.mat_mul(la.transpose(d), b), la.mat_mul(b, d))
        if not la.is_zero_mat(resid):
            raise PreconditionError("delta is not skew with respect to the base form")

    n = 2 * s + m
    a_idx = lambda i: i
    x_idx = lambda k: s + k
    z_idx = lambda j: s + m + j

    def embed(a_part: Vec | None, x_part: Vec | None, z_part: Vec | None) -> Vec:
        out = [la.ZERO] * n
        if a_part is not None:
            for i, c in enumerate(a_part):
                out[a_idx(i)] = c
        if x_part is not None:
            for k, c in enumerate(x_part):
                out[x_idx(k)] = c
        if z_part is not None:
            for j, c in enumerate(z_part):
                out[z_idx(j)] = c
        return tuple(out)

    omegas = [la.mat_mul(la.transpose(d), b) for d in spec.deltas]
    brackets: dict[tuple[int, int], Vec] = {}
    for i in range(s):
        for j in range(i + 1, s):
            brackets[(a_idx(i), a_idx(j))] = embed(
                spec.a_bracket(i, j), None, spec.xi.get((i, j))
            )
    for i in range(s):
        for k in range(m):
            col = tuple(spec.deltas[i][l][k] for l in range(m))
            brackets[(a_idx(i), x_idx(k))] = embed(None, col, None)
        for j in range(s):
            coad = tuple(-spec.a_bracket(i, k)[j] for k in range(s))
            if not la.is_zero_vec(coad):
                lo, hi = sorted((a_idx(i), z_idx(j)))
                sign = 1 if lo == a_idx(i) else -1
                brackets[(lo, hi)] = embed(None, None, la.vec_scale(sign, coad))
    for k in range(m):
        for l in range(k + 1, m):
            xy = base.algebra.basis_bracket(k, l)
            z_part = tuple(om[k][l] for om in omegas)
            brackets[(x_idx(k), x_idx(l))] = embed(None, xy, z_part)

    a_names = tuple(f"a{i}" for i in range(s))
    z_names = tuple(f"z{j}" for j in range(s))
    mid = base.algebra.basis_names
    if set(mid) & (set(a_names) | set(z_names)):
        mid = tuple(f"x{k}" for k in range(m))
    alg = LieAlgebra(n, a_names + mid + z_names, brackets)

    gram = [[la.ZERO] * n for _ in range(n)]
    for i in range(s):
        gram[a_idx(i)][z_idx(i)] = la.ONE
        gram[z_idx(i)][a_idx(i)] = la.ONE
    for k in range(m):
        for l in range(m):
            gram[x_idx(k)][x_idx(l)] = b[k][l]
    form = SymBilinearForm(tuple(tuple(r) for r in gram))

    rep = validate_structure(alg)
    if not rep.passed:
        i, j, k, _ = rep.violations[0]
        raise CertificateError(
            f"double extension violates the Jacobi identity on triple ({i},{j},{k}); "
            "check that the deltas commute compatibly with the extending algebra"
        )
    out = MetricLieAlgebra(alg, form)
    inv = is_invariant(out)
    if not inv.passed:
        raise CertificateError(
            f"double extension form is not invariant; witness triple {inv.witness}"
        )
    return out


def reduce_by_ideal(m: MetricLieAlgebra, ideal: SubspaceBasis) -> ReductionStep:
    """Split g along a central totally isotropic ideal j and recover the
    double-extension data (base, delta, omega, xi) exactly.

    The complement carrying the base algebra is the deterministic
    kernel-basis orthogonal complement of j + j*, so reducing a freshly
    built double extension returns the base with identical structure
    constants. The step is certified by rebuilding the input.
    """
    alg, form = m.algebra, m.form
    n = alg.dim
    if not signature(form).is_nondegenerate:
        raise PreconditionError("reduction requires a non-degenerate form")
    inv = is_invariant(m)
    if not inv.passed:
        raise PreconditionError(f"form is not invariant; witness triple {inv.witness}")
    ok, wit = is_totally_isotropic(form, ideal)
    if not ok:
        raise PreconditionError(f"ideal is not totally isotropic; witness pair {wit}")
    if not center(alg).contains_subspace(ideal):
        raise PreconditionError("ideal is not central")
    ok, wit = is_ideal(alg, ideal)
    if not ok:
        raise PreconditionError(f"subspace is not an ideal; witness {wit}")
    s = ideal.dim
    if s == 0:
        raise PreconditionError("reduction by the zero ideal is trivial")

    wb = witt_basis(form, ideal)
    duals = wb.v_star
    span_aj = subspace_from_spanning(n, ideal.vectors + duals)
    w_space = orthogonal_complement(form, span_aj)
    w = w_space.vectors
    mdim = n - 2 * s

    cols = duals + w + ideal.vectors
    t_inv = la.inverse(la.transpose(cols))

    def split(v: Vec) -> tuple[Vec, Vec, Vec]:
        c = la.mat_vec(t_inv, v)
        return c[:s], c[s : s + mdim], c[s + mdim :]

    base_brackets: dict[tuple[int, int], Vec] = {}
    omega: dict[tuple[int, int], Vec] = {}
    for k in range(mdim):
        for l in range(k + 1, mdim):
            a_part, x_part, z_part = split(alg.bracket(w[k], w[l]))
            if not la.is_zero_vec(a_part):
                raise CertificateError(
                    "bracket of complement vectors leaves the coisotropic subspace"
                )
            base_brackets[(k, l)] = x_part
            omega[(k, l)] = z_part
    base_gram = tuple(
        tuple(form.apply(w[k], w[l]) for l in range(mdim)) for k in range(mdim)
    )
    base_names = tuple(f"x{k}" for k in range(mdim))
    base = MetricLieAlgebra(
        LieAlgebra(mdim, base_names, base_brackets), SymBilinearForm(base_gram)
    )

    deltas = []
    for i in range(s):
        cols_i = []
        for k in range(mdim):
            a_part, x_part, z_part = split(alg.bracket(duals[i], w[k]))
            if not la.is_zero_vec(a_part) or not la.is_zero_vec(z_part):
                raise CertificateError(
                    "dual action does not preserve the complement; reduce by a "
                    "one-dimensional central ideal instead"
                )
            cols_i.append(x_part)
        deltas.append(la.transpose(tuple(cols_i)))

    xi: dict[tuple[int, int], Vec] = {}
    for i in range(s):
        for j in range(i + 1, s):
            a_part, x_part, z_part = split(alg.bracket(duals[i], duals[j]))
            if not la.is_zero_vec(a_part) or not la.is_zero_vec(x_part):
                raise CertificateError(
                    "dual vectors do not close up to the ideal; reduce by a "
                    "one-dimensional central ideal instead"
                )
            if not la.is_zero_vec(z_part):
                xi[(i, j)] = z_part

    # pairing certificate: omega(x, y)(a_i) = <delta_i x, y> on the base
    bbar = base.form.matrix
    for i, d in enumerate(deltas):
        om = la.mat_mul(la.transpose(d), bbar)
        for k in range(mdim):
            for l in range(k + 1, mdim):
                if omega.get((k, l), la.zeros_vec(s))[i] != om[k][l]:
                    raise CertificateError(
                        "cocycle does not match the pairing of delta with the base form"
                    )

    spec = DoubleExtensionSpec(base=base, deltas=tuple(deltas), xi=xi)
    rebuilt = double_extend(spec)
    original_in_split_basis = change_basis(
        m, cols, rebuilt.algebra.basis_names
    )
    if (
        rebuilt.algebra.brackets != original_in_split_basis.algebra.brackets
        or rebuilt.form.matrix != original_in_split_basis.form.matrix
    ):
        raise CertificateError("reduction round-trip failed to rebuild the input")

    return ReductionStep(
        original=m,
        ideal=ideal,
        duals=duals,
        complement=w,
        base=base,
        spec=spec,
        witt=wb,
    )


def complete_reduction(m: MetricLieAlgebra, max_steps: int | None = None) -> ReductionChain:
    """Reduce by one-dimensional central isotropic ideals until the base
    is abelian with a definite form.

    Solvable algebras with invariant non-degenerate forms always admit a
    step while non-abelian; abelian indefinite bases are reduced along a
    rational isotropic vector when one can be found.
    """
    rep = series(m.algebra)
    if not rep.is_solvable:
        raise PreconditionError("complete reduction is defined for solvable algebras")
    if max_steps is None:
        max_steps = m.dim // 2 + 1
    steps: list[ReductionStep] = []
    current = m
    for _ in range(max_steps):
        cur_rep = series(current.algebra)
        sig = signature(current.form)
        if cur_rep.is_abelian and sig.is_definite:
            break
        if cur_rep.is_abelian:
            v = isotropic_vector(current.form)
            if v is None:
                raise PreconditionError(
                    "the abelian base is indefinite but no rational isotropic "
                    "vector was found; the form may be anisotropic over Q"
                )
            line = subspace_from_spanning(current.dim, (v,))
        else:
            j = central_isotropic_ideal(current)
            assert j is not None and j.dim > 0
            line = SubspaceBasis(current.dim, (j.vectors[0],))
        step = reduce_by_ideal(current, line)
        steps.append(step)
        current = step.base
    else:
        raise CertificateError("reduction did not terminate within the step budget")
    return ReductionChain(tuple(steps), current)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def build_ab(n: int, s: int) -> MetricLieAlgebra:
    """Abelian algebra of dimension n with diagonal form of index s."""
    if not (0 <= s <= n):
        raise PreconditionError("index must satisfy 0 <= s <= n")
    diag = [la.ONE] * (n - s) + [-la.ONE] * s
    gram = tuple(
        tuple(diag[i] if i == j else la.ZERO for j in range(n)) for i in range(n)
    )
    names = tuple(f"e{i}" for i in range(n))
    return MetricLieAlgebra(LieAlgebra(n, names, {}), SymBilinearForm(gram))


def build_ko1(n: int, s: int, delta: Mat) -> MetricLieAlgebra:
    """Solvable double extension of the abelian algebra of dimension n-2
    and index s-1 by a single vector acting through ``delta``.

    The result has dimension n, index s, brackets [a, x] = delta(x) and
    [x, y] = <delta x, y> z, with <a, z> = 1.
    """
    if n < 2 or s < 1 or s > n - 1:
        raise PreconditionError("need n >= 2 and 1 <= s <= n-1")
    base = build_ab(n - 2, s - 1)
    return double_extend(DoubleExtensionSpec(base=base, deltas=(la.mat(delta),)))


def build_example42() -> MetricLieAlgebra:
    """A 6-dimensional solvable metric Lie algebra of signature (4, 2)
    whose Killing form vanishes identically. Basis (a, b, x1, x2, y, z)
    with [a,b]=b, [a,x1]=x2, [a,x2]=-x1, [a,y]=-y, [b,y]=z, [x1,x2]=z
    and pairings <a,z> = <b,y> = <x1,x1> = <x2,x2> = 1.
    """
    names = ("a", "b", "x1", "x2", "y", "z")
    idx = {nm: i for i, nm in enumerate(names)}

    def unit(nm: str, c=1) -> Vec:
        return la.vec_scale(c, la.unit_vec(6, idx[nm]))

    brackets = {
        (idx["a"], idx["b"]): unit("b"),
        (idx["a"], idx["x1"]): unit("x2"),
        (idx["a"], idx["x2"]): unit("x1", -1),
        (idx["a"], idx["y"]): unit("y", -1),
        (idx["b"], idx["y"]): unit("z"),
        (idx["x1"], idx["x2"]): unit("z"),
    }
    gram = [[la.ZERO] * 6 for _ in range(6)]
    for u, v in (("a", "z"), ("b", "y")):
        gram[idx[u]][idx[v]] = la.ONE
        gram[idx[v]][idx[u]] = la.ONE
    for u in ("x1", "x2"):
        gram[idx[u]][idx[u]] = la.ONE
    return MetricLieAlgebra(
        LieAlgebra(6, names, brackets), SymBilinearForm(tuple(tuple(r) for r in gram))
    )


# ---------------------------------------------------------------------------
# randomized generators (seeded, for searches and property tests)
# ---------------------------------------------------------------------------


def random_skew_map(
    rng: random.Random,
    form: SymBilinearForm,
    bound: int = 2,
    max_denominator: int = 4,
) -> Mat:
    """A random map skew with respect to the given non-degenerate form,
    built as B^{-1} K with K skew-symmetric and entries in [-bound,
    bound] with bounded denominator."""
    n = form.dim
    k = [[la.ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            den = rng.randint(1, max_denominator)
            c = Fraction(rng.randint(-bound * den, bound * den), den)
            k[i][j] = c
            k[j][i] = -c
    return la.mat_mul(la.inverse(form.matrix), tuple(tuple(r) for r in k))


def skew_derivation_space(base: MetricLieAlgebra) -> tuple[Mat, ...]:
    """Basis of the derivations of the base algebra that are skew with
    respect to the base form (the valid one-dimensional extension data)."""
    n = base.dim
    b = base.form.matrix
    alg = base.algebra
    rows: list[Vec] = []

    def entry(p: int, q: int) -> int:
        return p * n + q

    # skewness: sum_p d_{pk} B_{pl} + B_{kp} d_{pl} = 0
    for k in range(n):
        for l in range(n):
            row = [la.ZERO] * (n * n)
            for p in range(n):
                row[entry(p, k)] += b[p][l]
                row[entry(p, l)] += b[k][p]
            rows.append(tuple(row))
    # derivation: d([e_i,e_j]) = [d e_i, e_j] + [e_i, d e_j]
    for i in range(n):
        for j in range(i + 1, n):
            cij = alg.basis_bracket(i, j)
            for k in range(n):
                row = [la.ZERO] * (n * n)
                for mth in range(n):
                    row[entry(k, mth)] += cij[mth]
                for p in range(n):
                    row[entry(p, i)] -= alg.basis_bracket(p, j)[k]
                    row[entry(p, j)] -= alg.basis_bracket(i, p)[k]
                rows.append(tuple(row))
    sols = la.kernel(tuple(rows))
    return tuple(
        tuple(tuple(sol[entry(p, q)] for q in range(n)) for p in range(n))
        for sol in sols
    )


def random_double_extension(rng: random.Random, base: MetricLieAlgebra) -> MetricLieAlgebra:
    """One-dimensional double extension of the base by a random skew
    derivation (the zero map if the base admits no other)."""
    space = skew_derivation_space(base)
    delta = la.zeros(base.dim, base.dim)
    for d in space:
        c = Fraction(rng.randint(-2, 2))
        if c:
            delta = la.mat_add(delta, la.mat_scale(c, d))
    return double_extend(DoubleExtensionSpec(base=base, deltas=(delta,)))


def iterated_double_extension(
    rng: random.Random, base: MetricLieAlgebra, steps: int
) -> MetricLieAlgebra:
    current = base
    for _ in range(steps):
        current = random_double_extension(rng, current)
    return current
