import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from gen import perv_data, rand_mat, rand_perv
from paraperv.disk import PervData, skyscraper
from paraperv.duplicial import (
    Ducomplex,
    DuplicialVec,
    check_duplicial_relations,
    criterion_operator,
    duplicial_t,
    from_ducomplex_2term,
    is_paracyclic,
    pair_ducomplex,
    paracyclicity_criterion,
    restrict_to_duplicial,
    to_ducomplex,
)
from paraperv.linalg import RatMat, inverse, is_invertible
from paraperv.nerve import NerveError, paracyclic_nerve

N = 4


def M(*rows):
    return RatMat([list(r) for r in rows])


def criterion_holds(B):
    return all(ok for _, ok in paracyclicity_criterion(B))


def rand_ducomplex(rng, max_dim=3):
    phi, psi = rng.randint(0, max_dim), rng.randint(1, max_dim)
    bias = rng.choice((0.0, 0.5))
    return Ducomplex((phi, psi), {1: rand_mat(rng, phi, psi, zero_bias=bias)},
                     {1: rand_mat(rng, psi, phi, zero_bias=bias)})


def rand_singular_ducomplex(rng, max_dim=3):
    """``d delta`` fixes ``v = d y`` when ``delta = y z^T`` with ``z^T v = 1``."""
    while True:
        B = rand_ducomplex(rng, max_dim)
        d = B.d[1]
        y = rand_mat(rng, d.cols, 1, (-1, 1, 2))
        v = d @ y
        nz = [i for i in range(v.rows) if v[i, 0]]
        if nz:
            z = RatMat([[1 / Fraction(v[nz[0], 0]) if i == nz[0] else 0
                         for i in range(v.rows)]])
            return Ducomplex(B.dims, B.d, {1: y @ z})


def constant_object(dim, n_max):
    I = RatMat.identity(dim)
    return DuplicialVec(n_max, (dim,) * (n_max + 1),
                        {(n, i): I for n in range(1, n_max + 1) for i in range(n + 1)},
                        {(n, j): I for n in range(n_max) for j in range(n + 1)},
                        {n: I for n in range(n_max)})


class TestRestriction:
    @settings(max_examples=15, deadline=None)
    @given(perv_data(2))
    def test_relations_hold(self, F):
        Y = restrict_to_duplicial(paracyclic_nerve(F, N))
        rep = check_duplicial_relations(Y)
        assert rep.ok and rep.checked > 50

    @settings(max_examples=20, deadline=None)
    @given(perv_data())
    def test_shift_inverts_stored_t(self, F):
        X = paracyclic_nerve(F, N)
        Y = restrict_to_duplicial(X)
        for n in range(N):
            assert duplicial_t(Y, n) == inverse(X.t[n])
        assert is_paracyclic(Y)

    def test_shift_needs_next_level(self):
        Y = restrict_to_duplicial(paracyclic_nerve(skyscraper(1), 2))
        with pytest.raises(NerveError):
            duplicial_t(Y, 2)

    def test_json_roundtrip(self):
        Y = restrict_to_duplicial(paracyclic_nerve(PervData(1, 1, M([1]), M([2])), 3))
        assert DuplicialVec.from_json(Y.to_json()) == Y


class TestToDucomplex:
    def test_scalar_example(self):
        Y = restrict_to_duplicial(paracyclic_nerve(PervData(1, 1, M([1]), M([2])), N))
        B = to_ducomplex(Y)
        assert B.dims == (1, 1) and B.d[1] == M([2])
        assert criterion_holds(B)

    @settings(max_examples=20, deadline=None)
    @given(perv_data())
    def test_nerve_ducomplex_formula(self, F):
        B = to_ducomplex(restrict_to_duplicial(paracyclic_nerve(F, N)))
        if F.psi:
            assert B.d[1] == F.b
            assert B.delta[1] == -(F.a @ inverse(F.t_phi))

    def test_constant_object(self):
        Y = constant_object(2, 3)
        assert check_duplicial_relations(Y).ok
        B = to_ducomplex(Y)
        assert B.dims == (2,) and criterion_holds(B)
        assert all(duplicial_t(Y, n) == RatMat.identity(2) for n in range(3))

    def test_squares_vanish(self):
        rng = random.Random(21)
        for _ in range(20):
            B = to_ducomplex(from_ducomplex_2term(rand_ducomplex(rng), N))
            for n in range(2, B.amplitude + 1):
                assert (B.d[n - 1] @ B.d[n]).is_zero()
                assert (B.delta[n] @ B.delta[n - 1]).is_zero()


class TestCriterion:
    def test_zero_ducomplex(self):
        B = Ducomplex((2, 1), {1: RatMat.zeros(2, 1)}, {1: RatMat.zeros(1, 2)})
        assert criterion_operator(B, 0) == RatMat.identity(2)
        assert criterion_holds(B)

    def test_formal_pair(self):
        assert not criterion_holds(pair_ducomplex(M([1]), M([1])))
        assert criterion_holds(pair_ducomplex(M([1]), M([2])))

    def test_formal_pair_operators_are_monodromies(self):
        rng = random.Random(22)
        for _ in range(30):
            F = rand_perv(rng, 3, min_dim=1)
            B = pair_ducomplex(F.a, F.b)
            assert criterion_operator(B, 0) == F.t_phi
            assert criterion_operator(B, 1) == F.t_psi

    def test_level_zero_operator_is_shift(self):
        B = Ducomplex((1, 1), {1: M([1])}, {1: M([1])})
        Y = from_ducomplex_2term(B, 3)
        assert duplicial_t(Y, 0) == criterion_operator(B, 0) == M([0])
        assert not is_paracyclic(Y) and not criterion_holds(B)

    def test_nerve_levels_cross_checked_with_t(self):
        X = paracyclic_nerve(PervData(1, 1, M([1]), M([2])), N)
        assert all(is_invertible(X.t[n]) for n in range(N + 1))
        assert criterion_holds(to_ducomplex(restrict_to_duplicial(X)))


class TestFromDucomplex:
    def test_phi_only(self):
        B = Ducomplex((2,), {}, {})
        Y = from_ducomplex_2term(B, 3)
        assert Y.dims == (2,) * 4 and to_ducomplex(Y) == B and is_paracyclic(Y)

    def test_scalar_roundtrip(self):
        B = Ducomplex((1, 1), {1: M([2])}, {1: M([1])})
        assert to_ducomplex(from_ducomplex_2term(B, N)) == B

    def test_random_roundtrip_and_relations(self):
        rng = random.Random(23)
        for _ in range(30):
            B = rand_ducomplex(rng)
            Y = from_ducomplex_2term(B, N)
            assert check_duplicial_relations(Y).ok
            assert to_ducomplex(Y) == B

    def test_reproduces_nerve_restriction(self):
        rng = random.Random(24)
        for _ in range(10):
            F = rand_perv(rng, 3)
            Y = restrict_to_duplicial(paracyclic_nerve(F, N))
            assert from_ducomplex_2term(to_ducomplex(Y), N) == Y

    def test_amplitude_guard(self):
        B = Ducomplex((1, 1, 1), {1: M([0]), 2: M([0])}, {1: M([0]), 2: M([0])})
        with pytest.raises(ValueError):
            from_ducomplex_2term(B)


def test_biconditional_on_mixed_population():
    rng = random.Random(25)
    seen = {True: 0, False: 0}
    for k in range(120):
        if k % 4 == 3:
            Y = from_ducomplex_2term(rand_singular_ducomplex(rng), N)
        elif k % 4 == 0:
            Y = restrict_to_duplicial(paracyclic_nerve(rand_perv(rng, 3), N))
        elif k % 4 == 1:
            # perturbed nerve: shift delta away from -a T_Phi^{-1}
            F = rand_perv(rng, 3, min_dim=1)
            B = to_ducomplex(restrict_to_duplicial(paracyclic_nerve(F, N)))
            noise = rand_mat(rng, F.psi, F.phi, (0, 0, 1, -1, Fraction(1, 2)))
            Y = from_ducomplex_2term(Ducomplex(B.dims, B.d, {1: B.delta[1] + noise}), N)
        else:
            Y = from_ducomplex_2term(rand_ducomplex(rng), N)
        verdict = is_paracyclic(Y)
        assert verdict == criterion_holds(to_ducomplex(Y))
        seen[verdict] += 1
    assert seen[True] > 20 and seen[False] > 10
