from math import comb
from random import Random

import pytest

from compatlie.cohomology import (
    CochainTuple,
    c0_basis,
    ce_matrix,
    coboundary_matrix,
    cohomology_dim,
    derivation_spaces,
    reduced_cohomology_dim,
    reduced_slice,
    staircase_coboundary,
    tuple_space_dim,
)
from compatlie.core import CompatiblePair, LieBracket, RepPair, adjoint_rep
from compatlie.linalg import Matrix, rank_bareiss, vec
from compatlie.multilinear import Cochain
from support import n2, rand_compatible_pair, rand_rep, sl2


def abelian_pair(dim):
    return CompatiblePair(LieBracket.zero(dim), LieBracket.zero(dim))


def n2_zero_pair():
    return CompatiblePair(n2(), LieBracket.zero(2))


def sl2_pair():
    return CompatiblePair(sl2(), sl2())


def test_c0_abelian_is_everything():
    assert len(c0_basis(abelian_pair(2))) == 2


def test_c0_equal_brackets_is_everything():
    pair = sl2_pair()
    assert len(c0_basis(pair)) == 3


def test_c0_n2_zero_is_center():
    # {x : [x,y] = 0 for all y} = center of N2 = 0
    assert len(c0_basis(n2_zero_pair())) == 0


def test_staircase_zero_rep_vanishes():
    pair = abelian_pair(2)
    rep = RepPair.zero(2, 2)
    rng = Random(1)
    for n in (1, 2):
        flat_dim = tuple_space_dim(n, 2, 2)
        flat = tuple(rng.randint(-3, 3) for _ in range(flat_dim))
        t = CochainTuple.from_flat(n, 2, 2, flat)
        assert staircase_coboundary(pair, t, rep).is_zero()


def test_staircase_identity_gives_both_brackets():
    # degree 1, adjoint: D(Id) = ([pi1, Id], [pi2, Id]) = (pi1, pi2)
    pair = n2_zero_pair()
    t = CochainTuple(1, [Cochain.from_matrix(Matrix.identity(2))])
    out = staircase_coboundary(pair, t)
    assert out.components[0] == pair.bracket1.to_cochain()
    assert out.components[1] == pair.bracket2.to_cochain()


def test_staircase_diag_example():
    # f = diag(1,0) on (N2, 0): D(f) = (w, 0) with w(e1,e2) = e2
    pair = n2_zero_pair()
    t = CochainTuple(1, [Cochain.from_matrix(Matrix([[1, 0], [0, 0]]))])
    out = staircase_coboundary(pair, t)
    assert out.components[0].value((0, 1)) == vec([0, 1])
    assert out.components[1].is_zero()


def test_staircase_degree0_membership_enforced():
    pair = n2_zero_pair()  # degree-0 space is trivial
    t = CochainTuple(0, [Cochain.from_element(vec([1, 0]), 2)])
    with pytest.raises(ValueError):
        staircase_coboundary(pair, t)


def test_adjoint_equals_coefficient_flavor_with_adjoint_rep():
    rng = Random(5)
    for _ in range(10):
        pair = rand_compatible_pair(rng, rng.randint(2, 3))
        rep = adjoint_rep(pair)
        n = rng.randint(1, pair.dim)
        flat_dim = tuple_space_dim(n, pair.dim, pair.dim)
        flat = tuple(rng.randint(-2, 2) for _ in range(flat_dim))
        t = CochainTuple.from_flat(n, pair.dim, pair.dim, flat)
        assert staircase_coboundary(pair, t) == staircase_coboundary(pair, t, rep)


def test_coboundary_matrix_shapes():
    pair = abelian_pair(2)
    rep = RepPair.zero(2, 2)
    sl = coboundary_matrix(pair, rep, 1)
    assert sl.matrix.is_zero()
    assert sl.matrix.shape() == (tuple_space_dim(2, 2, 2), tuple_space_dim(1, 2, 2))
    # dim counting example: g of dim 3, adjoint, n = 2 -> 2 * C(3,2) * 3 = 18
    assert tuple_space_dim(2, 3, 3) == 18


def test_sl2_degree1_matrix_and_kernel():
    sl = coboundary_matrix(sl2_pair(), None, 1)
    assert sl.matrix.shape() == (18, 9)
    assert len(sl.matrix.kernel_basis()) == 3
    assert sl.matrix.rank() == rank_bareiss(sl.matrix)


def test_consecutive_matrices_compose_to_zero():
    rng = Random(9)
    for _ in range(6):
        pair = rand_compatible_pair(rng, rng.randint(2, 3))
        use_rep = rng.random() < 0.5
        rep = rand_rep(rng, pair) if use_rep else None
        for n in range(0, pair.dim):
            a = coboundary_matrix(pair, rep, n)
            b = coboundary_matrix(pair, rep, n + 1)
            prod = b.matrix * a.matrix
            assert prod.is_zero()


def test_staircase_arm_structure():
    # first output component uses only bracket 1 and component 1; the last
    # uses only bracket 2 and component n
    pair = n2_zero_pair()
    rng = Random(13)
    n = 2
    flat_dim = Cochain.flat_dim(n, 2, 2)
    w = Cochain.from_flat(n, 2, 2, tuple(rng.randint(-2, 2) for _ in range(flat_dim)))
    zero = Cochain.zero(n, 2, 2)
    out_first = staircase_coboundary(pair, CochainTuple(n, [w, zero]))
    out_last = staircase_coboundary(pair, CochainTuple(n, [zero, w]))
    from compatlie.multilinear import ce_adjoint

    assert out_first.components[0] == ce_adjoint(pair.bracket1.to_cochain(), w)
    assert out_last.components[0].is_zero()
    assert out_last.components[n] == ce_adjoint(pair.bracket2.to_cochain(), w)
    assert out_first.components[n].is_zero()


def test_cohomology_dims_abelian():
    # all coboundaries vanish: H^0 = 2, H^1 = dim C^1 = 4, H^2 = 2*C(2,2)*2 = 4
    pair = abelian_pair(2)
    assert cohomology_dim(pair, None, 0)[0] == 2
    assert cohomology_dim(pair, None, 1)[0] == 4
    assert cohomology_dim(pair, None, 2)[0] == 4


def test_cohomology_dims_sl2():
    pair = sl2_pair()
    assert cohomology_dim(pair, None, 0)[0] == 0
    assert cohomology_dim(pair, None, 1)[0] == 0


def test_cohomology_dims_n2_zero():
    pair = n2_zero_pair()
    assert cohomology_dim(pair, None, 0)[0] == 0
    # Der(N2) joint with the zero bracket has dim 2; IDer = 0
    assert cohomology_dim(pair, None, 1)[0] == 2


def test_representatives_are_cocycles_completing_image():
    rng = Random(17)
    pair = rand_compatible_pair(rng, 3)
    dim_h, reps = cohomology_dim(pair, None, 1)
    sl = coboundary_matrix(pair, None, 1)
    for v in reps.vectors:
        assert all(x == 0 for x in sl.matrix.matvec(v))
    assert len(reps) == dim_h


def test_derivation_spaces():
    der, ider = derivation_spaces(abelian_pair(2))
    assert len(der) == 4 and len(ider) == 0
    der, ider = derivation_spaces(sl2_pair())
    assert len(der) == 3 and len(ider) == 3
    der, ider = derivation_spaces(n2_zero_pair())
    assert len(der) == 2 and len(ider) == 0


def test_derivations_match_classical_for_equal_pairs():
    # for (pi, pi) with adjoint coefficients the kernel at degree 1 is the
    # classical derivation algebra and the image the inner one
    pair = sl2_pair()
    der, ider = derivation_spaces(pair)
    assert len(der) - len(ider) == cohomology_dim(pair, None, 1)[0]


def test_reduced_full_when_everything_abelian():
    pair = abelian_pair(2)
    rep = RepPair.zero(2, 1)
    for n in (0, 1, 2):
        sl = reduced_slice(pair, rep, n)
        assert len(sl.basis) == Cochain.flat_dim(n, 2, 1)
        assert sl.matrix.is_zero()
        assert reduced_cohomology_dim(pair, rep, n) == comb(2, n)


def test_reduced_n2_trivial_module():
    # C~^1 = {f : f([x,y]) = 0} = maps killing e2: dim 1
    pair = n2_zero_pair()
    rep = RepPair.zero(2, 1)
    sl = reduced_slice(pair, rep, 1)
    assert len(sl.basis) == 1
    (v,) = sl.basis.vectors
    # flat coordinates of C^1(g, V): ((0,),0) then ((1,),0); killing e2
    assert v[1] == 0 and v[0] != 0
    # trivial action: the reduced differential vanishes, so dims are the
    # reduced space dims: C~^0 = V (dim 1), C~^1 as above (dim 1)
    assert reduced_cohomology_dim(pair, rep, 0) == 1
    assert reduced_cohomology_dim(pair, rep, 1) == 1


def test_reduced_adjoint_n2_degree0():
    # invariants of the adjoint action of N2: zero
    pair = n2_zero_pair()
    rep = adjoint_rep(pair)
    sl = reduced_slice(pair, rep, 0)
    assert len(sl.basis) == 0
    assert reduced_cohomology_dim(pair, rep, 0) == 0


def test_reduced_sl2_adjoint_degree1_two_routes():
    # regression fixture: value recorded from the rational Gauss-Jordan and
    # the Bareiss routes agreeing on every rank involved
    pair = sl2_pair()
    rep = adjoint_rep(pair)
    d1 = ce_matrix(pair, rep, 1, 1)
    assert d1.rank() == rank_bareiss(d1)
    dim1 = reduced_cohomology_dim(pair, rep, 1)
    # with both brackets equal, d1 = d2 so the reduced complex at degree 1
    # has C~^1 = ker d^1 (dim 3 + 6 = ...) computed: frozen value below
    assert dim1 == FROZEN_REDUCED_SL2_D1


# frozen by running both elimination routes; see test above
FROZEN_REDUCED_SL2_D1 = 3


def test_reduced_consecutive_slices_compose_to_zero():
    rng = Random(19)
    for _ in range(5):
        pair = rand_compatible_pair(rng, rng.randint(2, 3))
        rep = rand_rep(rng, pair)
        for n in (0, 1):
            a = reduced_slice(pair, rep, n)
            b = reduced_slice(pair, rep, n + 1)
            assert (b.matrix * a.matrix).is_zero()


def test_degree_cap_spaces_vanish():
    pair = n2_zero_pair()
    sl = coboundary_matrix(pair, None, 2)
    assert sl.matrix.shape()[0] == 0
    assert cohomology_dim(pair, None, 2)[0] == len(sl.matrix.kernel_basis()) - (
        coboundary_matrix(pair, None, 1).matrix.rank()
    )
