"""Duplicial vector spaces, ducomplexes and the Dwyer-Kan translation.

A duplicial object carries, besides the simplicial operators, one extra
degeneracy per level: ``extra[n]: X_n -> X_{n+1}``, the value on the duplex
codegeneracy ``<n+1> -> <n>`` that wraps the last vertex onto the next copy
of vertex ``0``.  Its cyclic operator is the value on the shift
``i -> i + 1``, which is the duplex composite ``sigma_extra . delta_0``.
On the restriction of a paracyclic object this is the inverse of the stored
``t_n`` (which is the value on ``i -> i - 1``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .combinatorics import Letter, duplex_relations, extra_codegeneracy
from .linalg import DimensionError, RatMat, is_invertible
from .nerve import (
    DEFAULT_N_MAX,
    NerveError,
    ParacyclicVec,
    RelationReport,
    SimplicialVec,
    _blocks,
    _mats_to_json,
    evaluate,
    normalized_basis,
    read_in_basis,
)

__all__ = [
    "DuplicialVec",
    "Ducomplex",
    "restrict_to_duplicial",
    "check_duplicial_relations",
    "to_ducomplex",
    "paracyclicity_criterion",
    "criterion_operator",
    "duplicial_t",
    "is_paracyclic",
    "from_ducomplex_2term",
    "pair_ducomplex",
]


@dataclass(frozen=True, eq=False)
class DuplicialVec(SimplicialVec):
    extra: Mapping[int, RatMat] = field(default_factory=dict)

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "extra", dict(self.extra))
        self._check_family(self.extra, range(self.n_max), lambda n: (n + 1, n), "extra degeneracy")

    def operator(self, letter: Letter) -> RatMat:
        if letter.kind == "sigma_extra":
            try:
                return self.extra[letter.n]
            except KeyError:
                raise NerveError(f"{letter} is outside the truncation") from None
        return super().operator(letter)

    def degeneracy_into(self, n: int, i: int) -> RatMat:
        """``s_i: X_{n-1} -> X_n`` for ``0 <= i <= n``; ``i = n`` is the extra one."""
        return self.extra[n - 1] if i == n else self.degeneracies[(n - 1, i)]

    def __eq__(self, other):
        return super().__eq__(other) and self.extra == other.extra

    def to_json(self) -> dict:
        out = super().to_json()
        out["extra_degeneracies"] = _mats_to_json(self.extra)
        return out

    @classmethod
    def from_json(cls, obj) -> "DuplicialVec":
        s = SimplicialVec.from_json(obj)
        extra = cls._read_mats(obj, "extra_degeneracies", lambda n: (n + 1, n), s.dims,
                               multi=False)
        return DuplicialVec(s.n_max, s.dims, s.faces, s.degeneracies, extra)


@lru_cache(maxsize=None)
def _relations(n_max: int) -> tuple:
    return tuple(duplex_relations(n_max))


def check_duplicial_relations(Y: DuplicialVec) -> RelationReport:
    bad = [r.name for r in _relations(Y.n_max) if Y.realize(r.lhs) != Y.realize(r.rhs)]
    return RelationReport(len(_relations(Y.n_max)), tuple(bad))


def restrict_to_duplicial(X: ParacyclicVec) -> DuplicialVec:
    extra = {n: evaluate(X, extra_codegeneracy(n)) for n in range(X.n_max)}
    return DuplicialVec(X.n_max, X.dims, X.faces, X.degeneracies, extra)


def duplicial_t(Y: DuplicialVec, n: int) -> RatMat:
    """Value on the shift ``i -> i + 1`` of ``<n>``: ``d_0 s_{n+1}`` (extra degeneracy first).

    The shift is the composite of ``delta_0: <n> -> <n+1>`` with the extra
    codegeneracy ``<n+1> -> <n>``, so it needs level ``n + 1``.
    """
    if not 0 <= n < Y.n_max:
        raise NerveError(f"the shift on level {n} needs level {n + 1} <= n_max={Y.n_max}")
    return Y.face(n + 1, 0) @ Y.extra[n]


def is_paracyclic(Y: DuplicialVec) -> bool:
    """Whether every shift below the truncation level is invertible."""
    return all(is_invertible(duplicial_t(Y, n)) for n in range(Y.n_max))


@dataclass(frozen=True, eq=False)
class Ducomplex:
    """``B^0, B^-1, ...`` with ``d[n]: B^{-n} -> B^{-n+1}`` and ``delta[n]: B^{-n+1} -> B^{-n}``."""

    dims: tuple[int, ...]
    d: Mapping[int, RatMat]
    delta: Mapping[int, RatMat]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "d", dict(self.d))
        object.__setattr__(self, "delta", dict(self.delta))
        k = len(self.dims) - 1
        if k < 0:
            raise DimensionError("a ducomplex needs at least degree 0")
        for name, ms, shape in (("d", self.d, lambda n: (self.dims[n - 1], self.dims[n])),
                                ("delta", self.delta, lambda n: (self.dims[n], self.dims[n - 1]))):
            if set(ms) != set(range(1, k + 1)):
                raise DimensionError(f"{name} must be keyed 1..{k}")
            for n, m in ms.items():
                if m.shape != shape(n):
                    raise DimensionError(f"{name}{n} must be {shape(n)[0]}x{shape(n)[1]}")
        for n in range(2, k + 1):
            if not (self.d[n - 1] @ self.d[n]).is_zero():
                raise ValueError(f"d{n - 1} d{n} != 0")
            if not (self.delta[n] @ self.delta[n - 1]).is_zero():
                raise ValueError(f"delta{n} delta{n - 1} != 0")

    @property
    def amplitude(self) -> int:
        return len(self.dims) - 1

    def __eq__(self, other):
        return (isinstance(other, Ducomplex) and self.dims == other.dims
                and self.d == other.d and self.delta == other.delta)

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "d": _mats_to_json(self.d),
                "delta": _mats_to_json(self.delta)}

    @classmethod
    def from_json(cls, obj) -> "Ducomplex":
        dims = [int(x) for x in obj["dims"]]
        d, delta = {}, {}
        for name, out, shape in (("d", d, lambda n: (dims[n - 1], dims[n])),
                                 ("delta", delta, lambda n: (dims[n], dims[n - 1]))):
            for k, v in (obj.get(name) or {}).items():
                n = int(k)
                if not 1 <= n < len(dims):
                    raise DimensionError(f"{name} key {k!r} out of range")
                out[n] = RatMat.from_json(v, *shape(n))
        return cls(dims, d, delta)


def to_ducomplex(Y: DuplicialVec) -> Ducomplex:
    """Normalized chains with ``d = d_0`` and ``delta = sum (-1)^i s_i`` (extra one last).

    Vanishing top degrees are dropped.
    """
    bases = [normalized_basis(Y, n) for n in range(Y.n_max + 1)]
    top = Y.n_max
    while top > 0 and bases[top].cols == 0:
        top -= 1
    d, delta = {}, {}
    for n in range(1, top + 1):
        d[n] = read_in_basis(bases[n - 1], Y.face(n, 0) @ bases[n])
        alt = RatMat.zeros(Y.dims[n], Y.dims[n - 1])
        for i in range(n + 1):
            s = Y.degeneracy_into(n, i)
            alt = alt + s if i % 2 == 0 else alt - s
        try:
            delta[n] = read_in_basis(bases[n], alt @ bases[n - 1])
        except NerveError:
            raise NerveError(f"delta does not preserve normalized chains at level {n}") from None
    return Ducomplex(tuple(b.cols for b in bases[:top + 1]), d, delta)


def criterion_operator(B: Ducomplex, n: int) -> RatMat:
    """``I - (-1)^n (d delta - delta d)`` on ``B^{-n}``.

    At level 0 this is the duplicial shift itself (``d delta = I - t_0``).
    """
    k = B.amplitude
    dim = B.dims[n] if n <= k else 0
    comm = RatMat.zeros(dim, dim)
    if n + 1 <= k:
        comm = comm + B.d[n + 1] @ B.delta[n + 1]
    if 1 <= n <= k:
        comm = comm - B.delta[n] @ B.d[n]
    return RatMat.identity(dim) - comm if n % 2 == 0 else RatMat.identity(dim) + comm


def paracyclicity_criterion(B: Ducomplex) -> tuple[tuple[int, bool], ...]:
    """Per level ``n <= amplitude``: is :func:`criterion_operator` invertible."""
    return tuple((n, is_invertible(criterion_operator(B, n))) for n in range(B.amplitude + 1))


def from_ducomplex_2term(B: Ducomplex, n_max: int = DEFAULT_N_MAX) -> DuplicialVec:
    """The duplicial object of a ducomplex ``B^-1 <=> B^0``.

    Level ``n`` is ``(B^-1)^n + B^0`` with the nerve's simplicial operators for
    ``b = d``.  With ``u = -delta`` the extra degeneracy is
    ``(x_1..x_n; p) -> (x_1..x_n, l; p + b l)`` where
    ``l = u p - (I + u b)(x_1 + ... + x_n)``.
    """
    if B.amplitude > 1:
        raise ValueError("only ducomplexes concentrated in degrees 0 and -1 are supported")
    phi = B.dims[0]
    psi = B.dims[1] if B.amplitude == 1 else 0
    b = B.d[1] if B.amplitude == 1 else RatMat.zeros(phi, 0)
    u = -B.delta[1] if B.amplitude == 1 else RatMat.zeros(0, phi)
    from .nerve import nerve_of_pair

    # faces and degeneracies of the nerve only involve b
    X = nerve_of_pair(phi, psi, RatMat.zeros(psi, phi), b, n_max)
    I_psi, I_phi = RatMat.identity(psi), RatMat.identity(phi)
    w = I_psi + u @ b
    extra = {}
    for n in range(n_max):
        sizes_in = [psi] * n + [phi]
        sizes_out = [psi] * (n + 1) + [phi]
        e = {(k, k): I_psi for k in range(n)}
        for k in range(n):
            e[(n, k)] = -w
            e[(n + 1, k)] = -(b @ w)
        e[(n, n)] = u
        e[(n + 1, n)] = I_phi + b @ u
        extra[n] = _blocks(sizes_out, sizes_in, e)
    return DuplicialVec(n_max, X.dims, X.faces, X.degeneracies, extra)


def pair_ducomplex(a: RatMat, b: RatMat) -> Ducomplex:
    """The formal ducomplex ``d = b``, ``delta = a`` of any pair.

    Its criterion operators are ``I - b a`` and ``I - a b``, so it passes the
    criterion exactly when the pair is perverse.  For a perverse pair it is
    a different object from the ducomplex of its nerve, whose ``delta`` is
    ``-a (I - b a)^{-1}``.
    """
    if a.shape != (b.cols, b.rows):
        raise DimensionError("a and b must be mutually transposed shapes")
    return Ducomplex((b.rows, b.cols), {1: b}, {1: a})
