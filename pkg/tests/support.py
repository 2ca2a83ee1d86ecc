"""Shared fixtures and randomized generators for the test suite.

Random compatible pairs are built from seeds that are compatible by
construction (dimension-2 brackets, catalog algebras, pencils, pairs
(pi, [pi,N]_NR) for a Nijenhuis N) and then conjugated by random invertible
rational matrices, which preserves every axiom while scrambling the
structure constants.  Everything is driven by an explicit random.Random so
failures reproduce.
"""

from fractions import Fraction
from random import Random

from compatlie.core import (
    CompatiblePair,
    LieBracket,
    RepPair,
    adjoint_rep,
    validate_pair,
    validate_rep,
)
from compatlie.linalg import Matrix, kernel_basis
from compatlie.multilinear import Cochain

# -- catalog fixtures ------------------------------------------------------


def sl2() -> LieBracket:
    """[e1,e2] = 2 e2, [e1,e3] = -2 e3, [e2,e3] = e1."""
    return LieBracket(3, {(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1})


def n2() -> LieBracket:
    """The nonabelian 2-dimensional algebra: [e1,e2] = e2."""
    return LieBracket(2, {(0, 1, 1): 1})


def heisenberg3() -> LieBracket:
    """[e1,e2] = e3."""
    return LieBracket(3, {(0, 1, 2): 1})


def r3_solvable() -> LieBracket:
    """[e1,e2] = e2, [e1,e3] = e2 + e3."""
    return LieBracket(3, {(0, 1, 1): 1, (0, 2, 1): 1, (0, 2, 2): 1})


def catalog(dim: int) -> list[LieBracket]:
    if dim == 2:
        return [n2(), LieBracket.zero(2)]
    if dim == 3:
        return [sl2(), heisenberg3(), r3_solvable(), LieBracket.zero(3)]
    if dim == 4:
        base = [heisenberg3(), n2(), sl2()]
        out = [LieBracket.zero(4)]
        for b in base:
            if b.dim == 3:
                out.append(_pad(b, 4))
        out.append(_direct_sum(n2(), LieBracket.zero(2)))
        out.append(_direct_sum(n2(), n2()))
        return out
    raise ValueError(dim)


def _pad(b: LieBracket, dim: int) -> LieBracket:
    entries = {key: c for key, c in b.entries()}
    return LieBracket(dim, {(i, j, k): c for (i, j, k), c in entries.items()})


def _direct_sum(a: LieBracket, b: LieBracket) -> LieBracket:
    n = a.dim
    entries = {key: c for key, c in a.entries()}
    for (i, j, k), c in b.entries():
        entries[(i + n, j + n, k + n)] = c
    return LieBracket(a.dim + b.dim, entries)


# -- randomized raw material -----------------------------------------------


def rand_fraction(rng: Random, lo=-3, hi=3, dens=(1, 1, 1, 2)) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def rand_matrix(rng: Random, rows: int, cols: int, lo=-3, hi=3) -> Matrix:
    return Matrix(
        [[rand_fraction(rng, lo, hi) for _ in range(cols)] for _ in range(rows)]
    )


def rand_invertible(rng: Random, n: int) -> Matrix:
    while True:
        m = rand_matrix(rng, n, n, -2, 2)
        if m.rank() == n:
            return m


def rand_cochain(rng: Random, arity: int, dim: int, target_dim=None) -> Cochain:
    from itertools import combinations

    td = dim if target_dim is None else target_dim
    coeffs = {}
    for subset in combinations(range(dim), arity):
        for k in range(td):
            if rng.random() < 0.6:
                coeffs[(subset, k)] = rand_fraction(rng, -2, 2)
    return Cochain(arity, dim, td, coeffs)


def rand_bracket(rng: Random, dim: int) -> LieBracket:
    """A random antisymmetric bracket; only Lie for dim <= 2."""
    entries = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(dim):
                if rng.random() < 0.6:
                    entries[(i, j, k)] = rand_fraction(rng, -2, 2)
    return LieBracket(dim, entries)


# -- random validated compatible pairs ---------------------------------------


def rand_compatible_pair(rng: Random, dim: int) -> CompatiblePair:
    if dim == 1:
        return CompatiblePair(LieBracket.zero(1), LieBracket.zero(1))
    while True:
        if dim == 2:
            b1, b2 = rand_bracket(rng, 2), rand_bracket(rng, 2)
        else:
            b1 = rng.choice(catalog(dim))
            mode = rng.randrange(4)
            if mode == 0:
                b2 = LieBracket.zero(dim)
            elif mode == 1:
                b2 = LieBracket.from_cochain(
                    b1.to_cochain().scale(rand_fraction(rng, -2, 2))
                )
            elif mode == 2:
                b2 = rng.choice(catalog(dim))
                if not validate_pair(b1, b2):
                    continue
            else:
                n = nijenhuis_for(rng, b1)
                from compatlie.multilinear import nr_bracket

                b2 = LieBracket.from_cochain(
                    nr_bracket(b1.to_cochain(), Cochain.from_matrix(n))
                )
                if not validate_pair(b1, b2):
                    continue
        g = rand_invertible(rng, dim)
        pair = CompatiblePair.unchecked(b1, b2).conjugate(g)
        if validate_pair(pair.bracket1, pair.bracket2):
            return CompatiblePair(pair.bracket1, pair.bracket2)


def nijenhuis_for(rng: Random, b: LieBracket) -> Matrix:
    """A cheap Nijenhuis operator for a catalog bracket: scalars always
    work; diagonal operators work for the triangular catalog members."""
    from compatlie.deformation import nijenhuis_torsion

    n = b.dim
    for _ in range(40):
        diag = [rand_fraction(rng, -2, 2) for _ in range(n)]
        m = Matrix([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
        if nijenhuis_torsion(b, m).is_zero():
            return m
    return Matrix.identity(n).scale(rand_fraction(rng, -2, 2))


def character_reps(pair: CompatiblePair, module_dim: int) -> list[RepPair]:
    """Diagonal representations built from joint characters: chi1 kills
    [g,g]_1, chi2 kills {g,g}_2 and chi1 o pi2 + chi2 o pi1 = 0."""
    n = pair.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            w1 = pair.bracket1.bracket_basis(i, j)
            w2 = pair.bracket2.bracket_basis(i, j)
            rows.append(list(w1) + [Fraction(0)] * n)
            rows.append([Fraction(0)] * n + list(w2))
            rows.append(list(w2) + list(w1))
    if not rows:
        rows = [[Fraction(0)] * (2 * n)]
    sol = kernel_basis(Matrix(rows))
    reps = []
    for v in sol.vectors:
        chi1, chi2 = v[:n], v[n:]
        rho = tuple(Matrix.identity(module_dim).scale(chi1[i]) for i in range(n))
        mu = tuple(Matrix.identity(module_dim).scale(chi2[i]) for i in range(n))
        reps.append(RepPair(module_dim, rho, mu))
    return reps


def rand_rep(rng: Random, pair: CompatiblePair, max_module_dim=3) -> RepPair:
    """A random validated representation with module dimension <= 3."""
    from compatlie.poisson import degree_block, lie_poisson_rep

    options: list[RepPair] = [RepPair.zero(pair.dim, rng.randint(1, max_module_dim))]
    if pair.dim <= max_module_dim:
        options.append(adjoint_rep(pair))
    options.extend(character_reps(pair, rng.randint(1, max_module_dim)))
    if pair.dim <= max_module_dim:
        options.append(degree_block(lie_poisson_rep(pair, 1), 1))
    rep = rng.choice(options)
    assert validate_rep(pair, rep), "generator produced an invalid representation"
    return rep
