import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import paramaps, rand_paramap, rand_paramap_between
from paraperv.combinatorics import (
    Flavor,
    Letter,
    ParaMap,
    compose,
    delta,
    dual,
    duplex_relations,
    extra_codegeneracy,
    factorize,
    generator,
    identity,
    membership,
    paracyclic_relations,
    project_to_lambda,
    shift,
    sigma,
    tau,
    tau_inv,
    xi_fraction,
)


def brute_compose(g: ParaMap, f: ParaMap) -> tuple:
    # evaluate the periodic extensions directly, without the normal-form shortcut
    def ext(h, i):
        q, r = divmod(i, h.src + 1)
        return h.values[r] + q * (h.dst + 1)
    return tuple(ext(g, ext(f, i)) for i in range(f.src + 1))


def brute_min_dual(f: ParaMap, j: int) -> int:
    i = -10 * (f.src + 1) * (abs(j) + abs(f.values[0]) + 2)
    while f(i) < j:
        i += 1
    return i


class TestNormalForm:
    def test_rejects_non_monotone(self):
        with pytest.raises(ValueError):
            ParaMap(1, 1, (1, 0))

    def test_rejects_period_violation(self):
        with pytest.raises(ValueError):
            ParaMap(1, 1, (0, 3))

    def test_json_roundtrip(self):
        f = ParaMap(2, 1, (-1, 0, 1))
        assert ParaMap.from_json(f.to_json()) == f

    def test_periodic_extension(self):
        f = ParaMap(1, 2, (0, 2))
        assert [f(i) for i in range(-2, 4)] == [-3, -1, 0, 2, 3, 5]


class TestGenerators:
    def test_forward_shift_values(self):
        assert shift(2, 1).values == (1, 2, 3)
        assert tau_inv(2) == shift(2, 1)
        assert tau(2) == shift(2, -1)

    def test_shift_twice(self):
        assert compose(shift(1, 1), shift(1, 1)).values == (2, 3)

    def test_coface_values(self):
        assert delta(1, 0).values == (1,)
        assert delta(2, 1).values == (0, 2)

    def test_codegeneracy_values(self):
        assert sigma(1, 0).values == (0, 0, 1)
        assert extra_codegeneracy(1).values == (0, 1, 2)

    def test_index_ranges(self):
        with pytest.raises(ValueError):
            delta(2, 3)
        with pytest.raises(ValueError):
            sigma(1, 2)
        with pytest.raises(ValueError):
            generator("omega", 1)

    def test_sigma_delta_identity(self):
        assert compose(sigma(0, 0), delta(1, 0)) == identity(0)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_cyclic_face_relation(self, n):
        for i in range(1, n + 1):
            assert compose(tau(n), delta(n, i)) == compose(delta(n, i - 1), tau(n - 1))
        assert compose(tau(n), delta(n, 0)) == delta(n, n)

    def test_all_generator_relations_hold(self):
        rels = list(paracyclic_relations(6))
        assert len(rels) > 200
        for r in rels:
            assert r.lhs.evaluate() == r.rhs.evaluate(), r.name

    def test_duplex_relations_hold(self):
        for r in duplex_relations(4):
            assert r.lhs.evaluate() == r.rhs.evaluate()
            for w in (r.lhs, r.rhs):
                assert all(membership(l.map(), Flavor.XI) for l in w.letters)


class TestMembership:
    def test_shifts(self):
        assert membership(shift(1, 1), Flavor.XI)
        assert not membership(shift(1, 1), Flavor.DELTA)
        assert not membership(shift(2, -1), Flavor.XI)

    def test_coface(self):
        assert membership(delta(2, 1), Flavor.DELTA)
        assert not membership(delta(2, 1), Flavor.LAMBDA_INFINITY_SURJ)

    def test_surjections(self):
        assert membership(sigma(1, 0), Flavor.DELTA_SURJ)
        assert membership(tau(3), Flavor.LAMBDA_INFINITY_SURJ)
        assert not membership(tau(3), Flavor.DELTA_SURJ)

    def test_flavor_accepts_strings(self):
        assert membership(identity(2), "Delta")


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_compose_matches_brute_force(data):
    f = data.draw(paramaps())
    g = data.draw(paramaps(src=f.dst))
    assert compose(g, f).values == brute_compose(g, f)


@settings(max_examples=100, deadline=None)
@given(paramaps())
def test_identity_is_neutral(f):
    assert compose(identity(f.dst), f) == f == compose(f, identity(f.src))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_associativity(data):
    f = data.draw(paramaps())
    g = data.draw(paramaps(src=f.dst))
    h = data.draw(paramaps(src=g.dst))
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@settings(max_examples=150, deadline=None)
@given(paramaps())
def test_full_turn_is_central(f):
    m, n = f.src, f.dst
    assert compose(f, shift(m, m + 1)) == compose(shift(n, n + 1), f)


@settings(max_examples=200, deadline=None)
@given(paramaps(max_obj=6))
def test_factorize_evaluates_back(f):
    w = factorize(f)
    assert w.evaluate() == f
    assert (w.src, w.dst) == (f.src, f.dst)


def test_factorize_identity_is_empty():
    assert factorize(identity(3)).letters == ()


def test_factorize_shift_then_coface():
    f = compose(shift(2, 1), delta(2, 1))
    assert factorize(f).evaluate() == f


class TestProjection:
    def test_full_turn(self):
        # the winding counts full turns of tau, which shifts by -1
        assert project_to_lambda(shift(2, 3)) == (identity(2), -1)
        assert project_to_lambda(shift(2, -3)) == (identity(2), 1)

    def test_turn_after_coface(self):
        assert project_to_lambda(compose(shift(2, 3), delta(2, 1))) == (delta(2, 1), -1)

    def test_identity(self):
        assert project_to_lambda(identity(2)) == (identity(2), 0)

    @settings(max_examples=100, deadline=None)
    @given(paramaps())
    def test_retraction(self, f):
        n = f.dst
        f0, w = project_to_lambda(f)
        assert 0 <= f0.values[0] <= n
        assert compose(shift(n, -w * (n + 1)), f0) == f
        g0, w2 = project_to_lambda(compose(shift(n, n + 1), f))
        assert g0 == f0 and w2 == w - 1


class TestDuality:
    def test_shift_duals(self):
        for n in range(5):
            assert dual(tau(n)) == tau_inv(n)
            assert dual(tau_inv(n)) == tau(n)

    def test_identity(self):
        assert dual(identity(3)) == identity(3)

    @settings(max_examples=100, deadline=None)
    @given(paramaps())
    def test_matches_brute_minimum(self, f):
        assert dual(f).values == tuple(brute_min_dual(f, j) for j in range(f.dst + 1))

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_contravariance(self, data):
        f = data.draw(paramaps())
        g = data.draw(paramaps(src=f.dst))
        assert dual(compose(g, f)) == compose(dual(f), dual(g))

    @settings(max_examples=200, deadline=None)
    @given(paramaps())
    def test_double_dual_shift_law(self, f):
        dd = dual(dual(f))
        assert all(dd(i) == f(i - 1) + 1 for i in range(-3, f.src + 4))


@settings(max_examples=100, deadline=None)
@given(paramaps())
def test_xi_fraction(f):
    g, k = xi_fraction(f)
    assert membership(g, Flavor.XI) and k >= 0
    assert compose(shift(f.dst, -k), g) == f


def test_letters_lie_in_lambda_infinity():
    rng = random.Random(5)
    for _ in range(100):
        f = rand_paramap(rng)
        for letter in factorize(f).letters:
            assert isinstance(letter, Letter)
            assert membership(letter.map(), Flavor.LAMBDA_INFINITY)


def test_random_generator_between_fixed_objects():
    rng = random.Random(0)
    f = rand_paramap_between(rng, 3, 2)
    assert (f.src, f.dst) == (3, 2)
