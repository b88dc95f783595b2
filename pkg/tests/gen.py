"""Random generators and hypothesis strategies shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from paraperv.combinatorics import ParaMap
from paraperv.disk import PervData, validate
from paraperv.linalg import RatMat, inverse, is_invertible, kernel
from paraperv.nerve import Complex
from paraperv.surface import LocalDatum, StratSurface, SurfacePervData

RATS = tuple(range(-3, 4)) + (Fraction(1, 2), Fraction(-1, 2))


def rand_mat(rng: random.Random, rows: int, cols: int, vals=RATS, zero_bias: float = 0.0) -> RatMat:
    def entry():
        return 0 if rng.random() < zero_bias else rng.choice(vals)
    return RatMat([[entry() for _ in range(cols)] for _ in range(rows)], rows, cols)


def rand_pair(rng: random.Random, max_dim: int = 6, min_dim: int = 0):
    phi, psi = rng.randint(min_dim, max_dim), rng.randint(min_dim, max_dim)
    bias = rng.choice((0.0, 0.3, 0.6))
    return phi, psi, rand_mat(rng, psi, phi, zero_bias=bias), rand_mat(rng, phi, psi, zero_bias=bias)


def rand_perv(rng: random.Random, max_dim: int = 3, min_dim: int = 0) -> PervData:
    while True:
        phi, psi, a, b = rand_pair(rng, max_dim, min_dim)
        if validate(phi, psi, a, b).ok:
            return PervData(phi, psi, a, b)


def rand_invertible(rng: random.Random, n: int, vals=(-1, 0, 1, 2)) -> RatMat:
    while True:
        m = rand_mat(rng, n, n, vals)
        if is_invertible(m):
            return m


def rand_complex(rng: random.Random, terms: int, max_dim: int = 4) -> Complex:
    """A random bounded complex with ``terms`` nonzero-ish degrees."""
    dims = [rng.randint(1, max_dim) for _ in range(terms)]
    d = {}
    for n in range(1, terms):
        # choose d_n with image inside ker d_{n-1}
        target = kernel(d[n - 1]) if n > 1 else RatMat.identity(dims[0])
        d[n] = target @ rand_mat(rng, target.cols, dims[n], (-1, 0, 1, 2))
    return Complex(tuple(dims), d)


def rand_surface(rng: random.Random, genus: int, n: int, r: int,
                 max_phi: int = 2) -> SurfacePervData:
    """A valid surface datum: the last point absorbs the surface relation."""
    handles = tuple((rand_invertible(rng, r), rand_invertible(rng, r)) for _ in range(genus))
    locals_ = []
    prod = RatMat.identity(r)
    for A, B in handles:
        prod = prod @ A @ B @ inverse(A) @ inverse(B)
    for _ in range(n - 1):
        while True:
            phi = rng.randint(0, max_phi)
            a, b = rand_mat(rng, r, phi, (-1, 0, 1, Fraction(1, 2))), \
                rand_mat(rng, phi, r, (-1, 0, 1, Fraction(1, 2)))
            if validate(phi, r, a, b).ok:
                break
        locals_.append(LocalDatum(phi, a, b))
        prod = prod @ (RatMat.identity(r) - a @ b)
    last = inverse(prod)  # T_n
    # extension by zero of T_n: a = I, b = I - T_n
    locals_.append(LocalDatum(r, RatMat.identity(r), RatMat.identity(r) - last))
    return SurfacePervData(StratSurface.standard(genus, n), r, handles, tuple(locals_))


def rand_paramap(rng: random.Random, max_obj: int = 4, spread: int = 8) -> ParaMap:
    m, n = rng.randint(0, max_obj), rng.randint(0, max_obj)
    return rand_paramap_between(rng, m, n, spread)


def rand_paramap_between(rng: random.Random, m: int, n: int, spread: int = 8) -> ParaMap:
    v0 = rng.randint(-spread, spread)
    offsets = sorted(rng.randint(0, n + 1) for _ in range(m))
    return ParaMap(m, n, (v0,) + tuple(v0 + o for o in offsets))


# ------------------------------------------------------------- strategies

rationals = st.sampled_from(RATS)


@st.composite
def matrices(draw, rows: int, cols: int, elements=rationals):
    return RatMat([[draw(elements) for _ in range(cols)] for _ in range(rows)], rows, cols)


@st.composite
def square_matrices(draw, max_n: int = 4):
    n = draw(st.integers(0, max_n))
    return draw(matrices(n, n))


@st.composite
def pairs(draw, max_dim: int = 4):
    phi, psi = draw(st.integers(0, max_dim)), draw(st.integers(0, max_dim))
    return phi, psi, draw(matrices(psi, phi)), draw(matrices(phi, psi))


@st.composite
def perv_data(draw, max_dim: int = 3):
    phi, psi, a, b = draw(pairs(max_dim))
    if not validate(phi, psi, a, b).ok:
        # scale b down until I - ab becomes invertible; 0 always works
        for c in (Fraction(1, 7), Fraction(1, 13), 0):
            if validate(phi, psi, a, b * c).ok:
                b = b * c
                break
    return PervData(phi, psi, a, b)


@st.composite
def paramaps(draw, max_obj: int = 4, spread: int = 8, src=None, dst=None):
    m = draw(st.integers(0, max_obj)) if src is None else src
    n = draw(st.integers(0, max_obj)) if dst is None else dst
    v0 = draw(st.integers(-spread, spread))
    offsets = sorted(draw(st.lists(st.integers(0, n + 1), min_size=m, max_size=m)))
    return ParaMap(m, n, (v0,) + tuple(v0 + o for o in offsets))
