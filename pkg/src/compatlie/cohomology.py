"""The two-bracket cochain complex of a compatible pair and its cohomology.

Degree n >= 1 of the complex is the direct sum of n copies of the arity-n
cochain space; degree 0 is the subspace of module elements on which the two
actions agree.  The coboundary is the staircase

    D(w_1..w_n) = (d1 w_1, .., d2 w_{i-1} + d1 w_i, .., d2 w_n)

where d1, d2 are the coboundary operators of the two brackets (with their
coefficient actions).  For adjoint coefficients the operator is written with
plain bracket arms [pi_i, -]_NR and a global sign (-1)^(n-1); since
d^n_pi = (-1)^(n-1)[pi, -]_NR the two flavours agree entry by entry, and a
test pins that.  The sign never changes kernels, images or dimensions.

Flattening order, fixed for reproducible matrices: component index is the
outer (slowest) index, then the lexicographic subset, then the target index.

The reduced complex is the kernel of the first-bracket coboundary inside the
single-copy cochain space, carrying the second-bracket coboundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .core import CompatiblePair, RepPair, adjoint_rep
from .linalg import Matrix, SubspaceBasis, Vec, extend_basis, in_span, vadd, vscale, vzero
from .multilinear import Cochain, ce_adjoint, ce_coboundary


class CochainTuple:
    """Degree-n element of the complex: n cochains of arity n (degree 0:
    one arity-0 cochain, i.e. a module element)."""

    __slots__ = ("degree", "components")

    def __init__(self, degree: int, components):
        components = tuple(components)
        expected = max(degree, 1)
        if len(components) != expected:
            raise ValueError(f"degree {degree} needs {expected} components")
        arity = degree if degree >= 1 else 0
        for c in components:
            if c.arity != arity:
                raise ValueError("component arity does not match the degree")
            if (c.source_dim, c.target_dim) != (
                components[0].source_dim,
                components[0].target_dim,
            ):
                raise ValueError("components live on different spaces")
        self.degree = degree
        self.components = components

    @property
    def source_dim(self):
        return self.components[0].source_dim

    @property
    def target_dim(self):
        return self.components[0].target_dim

    @classmethod
    def zero(cls, degree: int, source_dim: int, target_dim: int) -> "CochainTuple":
        arity = degree if degree >= 1 else 0
        return cls(
            degree,
            [
                Cochain.zero(arity, source_dim, target_dim)
                for _ in range(max(degree, 1))
            ],
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CochainTuple)
            and self.degree == other.degree
            and self.components == other.components
        )

    def __add__(self, other: "CochainTuple") -> "CochainTuple":
        return CochainTuple(
            self.degree,
            [a + b for a, b in zip(self.components, other.components, strict=True)],
        )

    def __sub__(self, other: "CochainTuple") -> "CochainTuple":
        return CochainTuple(
            self.degree,
            [a - b for a, b in zip(self.components, other.components, strict=True)],
        )

    def scale(self, c) -> "CochainTuple":
        return CochainTuple(self.degree, [x.scale(c) for x in self.components])

    def flatten(self) -> Vec:
        out = []
        for c in self.components:
            out.extend(c.flatten())
        return tuple(out)

    @classmethod
    def from_flat(cls, degree, source_dim, target_dim, flat) -> "CochainTuple":
        arity = degree if degree >= 1 else 0
        block = Cochain.flat_dim(arity, source_dim, target_dim)
        comps = []
        for c in range(max(degree, 1)):
            comps.append(
                Cochain.from_flat(
                    arity, source_dim, target_dim, flat[c * block : (c + 1) * block]
                )
            )
        return cls(degree, comps)


def tuple_space_dim(degree: int, dim: int, module_dim: int) -> int:
    """dim of degree-n space for n >= 1: n * C(dim, n) * module_dim."""
    if degree < 1:
        raise ValueError("use c0_basis for degree 0")
    return degree * comb(dim, degree) * module_dim


def c0_basis(pair: CompatiblePair, rep: RepPair | None = None) -> SubspaceBasis:
    """Basis of the degree-0 space: module vectors with equal actions,
    computed as the kernel of the stacked matrices rho(e_i) - mu(e_i).
    With no rep the adjoint pair is used, giving {x : [x,y] = {x,y} for
    all y}."""
    r = adjoint_rep(pair) if rep is None else rep
    rows = []
    for i in range(pair.dim):
        d = r.rho[i] - r.mu[i]
        rows.extend(d.row(k) for k in range(d.rows))
    if not rows:
        return SubspaceBasis(r.module_dim, ())
    return Matrix(rows).kernel_basis()


def staircase_coboundary(
    pair: CompatiblePair, t: CochainTuple, rep: RepPair | None = None
) -> CochainTuple:
    """The degree-(n+1) image of a degree-n tuple.

    With a coefficient representation the arms are the two coefficient
    coboundaries and no global sign appears; with adjoint coefficients
    (rep=None) the arms are the plain brackets [pi_i, -]_NR and the whole
    tuple is scaled by (-1)^(n-1), exactly as the adjoint complex is
    written.  A degree-0 input must lie in the degree-0 subspace.
    """
    n = t.degree
    pi1 = pair.bracket1.to_cochain()
    pi2 = pair.bracket2.to_cochain()
    if rep is None:
        arm1 = lambda w: ce_adjoint(pi1, w)  # noqa: E731
        arm2 = lambda w: ce_adjoint(pi2, w)  # noqa: E731
        if n == 0:
            # written as -[pi_i, x]_NR; ce_adjoint already carries (-1)^(0-1)
            x = t.components[0]
            ok, _ = in_span(c0_basis(pair), x.value(()))
            if not ok:
                raise ValueError("degree-0 element is outside the degree-0 space")
            return CochainTuple(1, [arm1(x)])
    else:
        arm1 = lambda w: ce_coboundary(pi1, rep.rho, w)  # noqa: E731
        arm2 = lambda w: ce_coboundary(pi2, rep.mu, w)  # noqa: E731
        if n == 0:
            x = t.components[0]
            ok, _ = in_span(c0_basis(pair, rep), x.value(()))
            if not ok:
                raise ValueError("degree-0 element is outside the degree-0 space")
            return CochainTuple(1, [arm1(x)])
    comps = [arm1(t.components[0])]
    for i in range(1, n):
        comps.append(arm2(t.components[i - 1]) + arm1(t.components[i]))
    comps.append(arm2(t.components[n - 1]))
    return CochainTuple(n + 1, comps)


@dataclass(frozen=True)
class ComplexSlice:
    """One degree of a complex: a basis of the degree-n space (in flat
    coordinates) and the matrix of the coboundary out of it, with columns
    indexed by that basis."""

    degree: int
    basis: SubspaceBasis
    matrix: Matrix


def coboundary_matrix(
    pair: CompatiblePair, rep: RepPair | None, degree: int
) -> ComplexSlice:
    """Matrix of the staircase coboundary at the given degree with respect
    to the fixed flattening; consecutive matrices compose to zero."""
    dim = pair.dim
    m = pair.dim if rep is None else rep.module_dim
    rows = tuple_space_dim(degree + 1, dim, m) if degree + 1 <= dim else 0
    if degree == 0:
        basis = c0_basis(pair, rep)
        cols = []
        for v in basis.vectors:
            t = CochainTuple(0, [Cochain.from_element(v, dim)])
            cols.append(staircase_coboundary(pair, t, rep).flatten())
        return ComplexSlice(0, basis, Matrix.from_columns(cols, rows=rows))
    flat_dim = tuple_space_dim(degree, dim, m)
    basis_vectors = []
    cols = []
    for idx in range(flat_dim):
        flat = [0] * flat_dim
        flat[idx] = 1
        t = CochainTuple.from_flat(degree, dim, m, tuple(flat))
        basis_vectors.append(t.flatten())
        cols.append(staircase_coboundary(pair, t, rep).flatten())
    basis = SubspaceBasis(flat_dim, tuple(basis_vectors))
    return ComplexSlice(degree, basis, Matrix.from_columns(cols, rows=rows))


def cohomology_dim(
    pair: CompatiblePair, rep: RepPair | None, degree: int
) -> tuple[int, SubspaceBasis]:
    """dim ker(D_n) - dim im(D_{n-1}) plus representatives completing a
    basis of the image to a basis of the kernel."""
    sl = coboundary_matrix(pair, rep, degree)
    kernel = sl.matrix.kernel_basis()
    if degree == 0:
        # kernel coordinates are w.r.t. the degree-0 basis; map them out
        amb = sl.basis.ambient_dim
        reps = []
        for coeffs in kernel.vectors:
            v = vzero(amb)
            for c, b in zip(coeffs, sl.basis.vectors):
                v = vadd(v, vscale(c, b))
            reps.append(v)
        return len(reps), SubspaceBasis(amb, tuple(reps))
    prev = coboundary_matrix(pair, rep, degree - 1)
    image = prev.matrix.column_space_basis()
    h_dim = len(kernel) - len(image)
    reps = extend_basis(
        list(image.vectors), list(kernel.vectors), kernel.ambient_dim
    )
    assert len(reps) == h_dim, "image is not contained in the kernel"
    return h_dim, SubspaceBasis(kernel.ambient_dim, tuple(reps))


def derivation_spaces(pair: CompatiblePair) -> tuple[SubspaceBasis, SubspaceBasis]:
    """(Der, IDer): joint derivations of both brackets = ker of the degree-1
    coboundary, and the image of the degree-0 one.  Vectors are flattened
    linear maps ((j), k) -> coefficient of e_k in f(e_j)."""
    der = coboundary_matrix(pair, None, 1).matrix.kernel_basis()
    ider = coboundary_matrix(pair, None, 0).matrix.column_space_basis()
    return der, ider


# -- single-copy coefficient complex and the reduced complex --------------------


def ce_matrix(pair: CompatiblePair, rep: RepPair, degree: int, which: int) -> Matrix:
    """Matrix of the coefficient coboundary of bracket `which` (1 or 2) on
    the single-copy space of arity-`degree` cochains."""
    dim, m = pair.dim, rep.module_dim
    pi = (pair.bracket1 if which == 1 else pair.bracket2).to_cochain()
    action = rep.rho if which == 1 else rep.mu
    flat_dim = Cochain.flat_dim(degree, dim, m)
    rows = Cochain.flat_dim(degree + 1, dim, m)
    cols = []
    for idx in range(flat_dim):
        flat = [0] * flat_dim
        flat[idx] = 1
        f = Cochain.from_flat(degree, dim, m, tuple(flat))
        cols.append(ce_coboundary(pi, action, f).flatten())
    return Matrix.from_columns(cols, rows=rows)


def reduced_slice(pair: CompatiblePair, rep: RepPair, degree: int) -> ComplexSlice:
    """Basis of the reduced degree-n space (kernel of the first-bracket
    coboundary inside the single-copy cochain space) and the matrix of the
    second-bracket coboundary restricted to it.

    The restriction is well defined because the two coboundaries
    anticommute; that identity is asserted on the full space while the
    slice is built.
    """
    d1 = ce_matrix(pair, rep, degree, 1)
    d2 = ce_matrix(pair, rep, degree, 2)
    d1_next = ce_matrix(pair, rep, degree + 1, 1)
    d2_next = ce_matrix(pair, rep, degree + 1, 2)
    anti = d1_next * d2 + d2_next * d1
    assert anti.is_zero(), "coefficient coboundaries do not anticommute"
    basis = d1.kernel_basis()
    target_basis = d1_next.kernel_basis()
    target_matrix = target_basis.as_column_matrix()
    cols = []
    for v in basis.vectors:
        w = d2.matvec(v)
        coeffs = target_matrix.solve(w)
        assert coeffs is not None, "restricted map left the reduced subspace"
        cols.append(coeffs)
    return ComplexSlice(
        degree, basis, Matrix.from_columns(cols, rows=len(target_basis))
    )


def reduced_cohomology_dim(pair: CompatiblePair, rep: RepPair, degree: int) -> int:
    """dim ker - dim im of consecutive reduced slices."""
    sl = reduced_slice(pair, rep, degree)
    k = len(sl.matrix.kernel_basis())
    if degree == 0:
        return k
    prev = reduced_slice(pair, rep, degree - 1)
    return k - prev.matrix.rank()
