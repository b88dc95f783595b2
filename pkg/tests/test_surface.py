import random
from fractions import Fraction

import pytest

from gen import rand_surface
from paraperv import disk
from paraperv.disk import skyscraper
from paraperv.linalg import DimensionError, RatMat, inverse, solve
from paraperv.surface import (
    LocalDatum,
    StratSurface,
    SurfaceError,
    SurfacePervData,
    add_dummy_point,
    direct_sum,
    dualize,
    euler_characteristic,
    hom_space,
    remove_dummy_point,
    restrict_to_disk,
    surface_relation,
    validate,
)


def M(*rows):
    return RatMat([list(r) for r in rows])


def euler_oracle(s: SurfacePervData) -> int:
    n = s.surface.n
    return -s.r * (2 - 2 * s.genus - n) + sum(l.phi - s.r for l in s.locals)


def scalar_local(T):
    # extension by zero of a 1x1 monodromy
    return LocalDatum(1, M([1]), M([1 - T]))


def dummy(r):
    return LocalDatum(0, RatMat.zeros(r, 0), RatMat.zeros(0, r))


def skyscraper_sphere():
    return SurfacePervData(StratSurface.standard(0, 1), 0, (),
                           (LocalDatum(1, RatMat.zeros(0, 1), RatMat.zeros(1, 0)),))


def two_point_sphere():
    return SurfacePervData(StratSurface.standard(0, 2), 1, (),
                           (scalar_local(2), scalar_local(Fraction(1, 2))))


def bad_torus():
    return SurfacePervData(StratSurface.standard(1, 1), 1, ((M([1]), M([1])),),
                           (scalar_local(3),))


def random_surfaces(seed, count, r_max=2):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(rand_surface(rng, rng.randint(0, 2), rng.randint(1, 3), rng.randint(0, r_max)))
    return out


class TestControls:
    def test_skyscraper_sphere_valid(self):
        assert validate(skyscraper_sphere()).ok

    def test_two_point_sphere_valid(self):
        s = two_point_sphere()
        assert surface_relation(s) == M([1]) and validate(s).ok

    def test_torus_with_wrong_point_invalid(self):
        rep = validate(bad_torus())
        assert not rep.ok and "surface relation" in rep.problems[0]

    def test_singular_handle_and_local_itemized(self):
        s = SurfacePervData(StratSurface.standard(1, 1), 1, ((M([0]), M([1])),),
                            (LocalDatum(1, M([1]), M([1])),))
        rep = validate(s)
        assert len(rep.problems) == 3

    def test_shapes_checked(self):
        with pytest.raises(DimensionError):
            SurfacePervData(StratSurface.standard(0, 1), 2, (), (LocalDatum(1, M([1]), M([1])),))
        with pytest.raises(SurfaceError):
            StratSurface(0, ())
        with pytest.raises(SurfaceError):
            StratSurface(0, ("p", "p"))

    def test_random_surfaces_valid(self):
        assert all(validate(s).ok for s in random_surfaces(30, 20))


class TestEuler:
    def test_examples(self):
        assert euler_characteristic(skyscraper_sphere()) == 1
        torus = SurfacePervData(StratSurface.standard(1, 1), 1, ((M([1]), M([1])),), (dummy(1),))
        assert euler_characteristic(torus) == 0
        sphere = SurfacePervData(StratSurface.standard(0, 1), 1, (), (dummy(1),))
        assert euler_characteristic(sphere) == -2

    def test_oracle_and_invariance(self):
        for s in random_surfaces(31, 50):
            e = euler_characteristic(s)
            assert e == euler_oracle(s)
            s2 = add_dummy_point(s)
            assert euler_characteristic(s2) == e == euler_oracle(s2)
            assert remove_dummy_point(s2, s2.surface.n - 1) == s
            assert euler_characteristic(dualize(s)) == e

    def test_additive(self):
        a = random_surfaces(32, 1)[0]
        rng = random.Random(33)
        b = rand_surface(rng, a.genus, a.surface.n, 1)
        assert euler_characteristic(direct_sum(a, b)) == \
            euler_characteristic(a) + euler_characteristic(b)


class TestDuality:
    def test_involution_and_relation(self):
        for s in random_surfaces(34, 30):
            d = dualize(s)
            assert validate(d).ok and dualize(d) == s
            for j in range(s.surface.n):
                assert d.local_monodromy(s.surface.n - 1 - j) == s.local_monodromy(j).T

    def test_restriction_commutes(self):
        for s in random_surfaces(35, 10):
            d = dualize(s)
            n = s.surface.n
            for j in range(n):
                assert restrict_to_disk(d, n - 1 - j) == disk.dualize(restrict_to_disk(s, j))

    def test_commutator_handles(self):
        rng = random.Random(36)
        s = rand_surface(rng, 2, 1, 2)
        d = dualize(s)
        (A1, B1), (A2, B2) = s.handles
        assert d.handles[0] == (inverse(B2).T, inverse(A2).T)

    def test_invalid_input_rejected(self):
        with pytest.raises(SurfaceError):
            dualize(bad_torus())


class TestHom:
    def test_identity_present(self):
        for s in random_surfaces(37, 10):
            if s.r + sum(l.phi for l in s.locals) == 0:
                continue
            basis = hom_space(s, s)
            assert basis
            n = len(basis)
            vecs = [[x for r in m.f_psi.to_lists() for x in r] +
                    [x for f in m.f_phi for r in f.to_lists() for x in r] for m in basis]
            ident = [x for r in RatMat.identity(s.r).to_lists() for x in r] + \
                    [x for l in s.locals for r in RatMat.identity(l.phi).to_lists() for x in r]
            A = RatMat([[v[k] for v in vecs] for k in range(len(ident))], len(ident), n)
            assert solve(A, ident) is not None

    def test_dimension_duality(self):
        rng = random.Random(38)
        for _ in range(50):
            g, n = rng.randint(0, 1), rng.randint(1, 2)
            s = rand_surface(rng, g, n, rng.randint(0, 2))
            t = rand_surface(rng, g, n, rng.randint(0, 2))
            assert len(hom_space(s, t)) == len(hom_space(dualize(t), dualize(s)))

    def test_morphisms_commute(self):
        rng = random.Random(39)
        s, t = rand_surface(rng, 1, 2, 1), rand_surface(rng, 1, 2, 1)
        for m in hom_space(s, t):
            for (A, B), (A2, B2) in zip(s.handles, t.handles):
                assert m.f_psi @ A == A2 @ m.f_psi and m.f_psi @ B == B2 @ m.f_psi
            for f, l, l2 in zip(m.f_phi, s.locals, t.locals):
                assert m.f_psi @ l.a == l2.a @ f and f @ l.b == l2.b @ m.f_psi

    def test_different_surfaces_rejected(self):
        with pytest.raises(SurfaceError):
            hom_space(skyscraper_sphere(), two_point_sphere())


class TestDummyPoints:
    def test_add_remove_roundtrip(self):
        s = two_point_sphere()
        s2 = add_dummy_point(s)
        assert s2.surface.labels == ("p1", "p2", "p3") and validate(s2).ok
        assert remove_dummy_point(s2, 2) == s

    def test_remove_non_dummy_rejected(self):
        with pytest.raises(SurfaceError):
            remove_dummy_point(two_point_sphere(), 0)

    def test_cannot_remove_last_point(self):
        s = SurfacePervData(StratSurface.standard(0, 1), 1, (), (dummy(1),))
        with pytest.raises(SurfaceError):
            remove_dummy_point(s, 0)


class TestRestriction:
    def test_skyscraper(self):
        assert restrict_to_disk(skyscraper_sphere(), 0) == skyscraper(1)

    def test_bad_index(self):
        with pytest.raises(IndexError):
            restrict_to_disk(skyscraper_sphere(), 1)

    def test_random(self):
        for s in random_surfaces(40, 10):
            for j in range(s.surface.n):
                d = restrict_to_disk(s, j)
                assert d.t_psi == s.local_monodromy(j)


def test_json_roundtrip():
    for s in random_surfaces(41, 5):
        assert SurfacePervData.from_json(s.to_json()) == s
