"""Simplicial and paracyclic vector spaces, the paracyclic nerve of perverse
data, Segal conditions and the Dold-Kan correspondence.

Objects are truncated: levels ``0..n_max``.  A morphism ``f: <m> -> <n>``
acts contravariantly, ``X(f): X_n -> X_m``, so a composite ``g . f`` acts as
``X(f) @ X(g)``.

Storage conventions:

* ``faces[(n, i)]``: ``X_n -> X_{n-1}`` for ``1 <= n <= n_max``, ``0 <= i <= n``;
* ``degeneracies[(n, j)]``: ``X_n -> X_{n+1}`` for ``0 <= n < n_max``,
  ``0 <= j <= n``;
* ``t[n]``: ``X_n -> X_n``, the value on the cyclic shift ``i -> i - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Mapping

from .combinatorics import (
    Letter,
    ParaMap,
    Relation,
    Word,
    delta,
    factorize,
    paracyclic_relations,
    sigma,
)
from .disk import PervData
from .linalg import (
    DimensionError,
    RatMat,
    cokernel_map,
    fiber_product,
    inverse,
    is_invertible,
    kernel,
    solve_matrix,
)

__all__ = [
    "SimplicialVec",
    "ParacyclicVec",
    "Complex",
    "RelationReport",
    "SegalReport",
    "NerveError",
    "DEFAULT_N_MAX",
    "paracyclic_nerve",
    "nerve_of_pair",
    "check_relations",
    "check_segal",
    "segal_report",
    "check_segal_squares",
    "reconstruct_from_truncation",
    "evaluate",
    "extract_perv",
    "dold_kan_chains",
    "dold_kan_nerve",
    "dold_kan_comparison",
    "normalized_basis",
    "kernel_late_pivots",
    "read_in_basis",
]

DEFAULT_N_MAX = 5


class NerveError(ValueError):
    """An object fails a structural check required by an operation."""


def _key(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(","))


def _mats_to_json(ms: Mapping) -> dict:
    out = {}
    for k in sorted(ms):
        name = ",".join(map(str, k)) if isinstance(k, tuple) else str(k)
        out[name] = ms[k].to_json()
    return out


@dataclass(frozen=True, eq=False)
class SimplicialVec:
    """A simplicial vector space truncated at level ``n_max``.

    Construction checks that every operator is present with the right shape;
    the simplicial identities are checked by :func:`check_relations`, so that
    deliberately broken objects can still be represented and diagnosed.
    """

    n_max: int
    dims: tuple[int, ...]
    faces: Mapping[tuple[int, int], RatMat]
    degeneracies: Mapping[tuple[int, int], RatMat]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "faces", dict(self.faces))
        object.__setattr__(self, "degeneracies", dict(self.degeneracies))
        if self.n_max < 0 or len(self.dims) != self.n_max + 1:
            raise DimensionError("dims must list levels 0..n_max")
        self._check_family(self.faces, ((n, i) for n in range(1, self.n_max + 1)
                                        for i in range(n + 1)), lambda n: (n - 1, n), "face")
        self._check_family(self.degeneracies, ((n, j) for n in range(self.n_max)
                                               for j in range(n + 1)),
                           lambda n: (n + 1, n), "degeneracy")

    def _check_family(self, ms, keys, levels, what):
        keys = list(keys)
        if set(ms) != set(keys):
            raise DimensionError(f"{what} operators must be keyed exactly by {keys}")
        for k in keys:
            dst, src = levels(k[0] if isinstance(k, tuple) else k)
            if ms[k].shape != (self.dims[dst], self.dims[src]):
                raise DimensionError(f"{what} {k} must be {self.dims[dst]}x{self.dims[src]}, "
                                     f"got {ms[k].rows}x{ms[k].cols}")

    def face(self, n: int, i: int) -> RatMat:
        return self.faces[(n, i)]

    def degeneracy(self, n: int, j: int) -> RatMat:
        return self.degeneracies[(n, j)]

    def operator(self, letter: Letter) -> RatMat:
        """The matrix of one generator, ``X(letter)``."""
        kind, n, i = letter
        try:
            if kind == "delta":
                return self.faces[(n, i)]
            if kind == "sigma":
                return self.degeneracies[(n, i)]
        except KeyError:
            raise NerveError(f"{letter} is outside the truncation n_max={self.n_max}") from None
        raise NerveError(f"{type(self).__name__} has no operator for {kind}")

    def realize(self, word: Word) -> RatMat:
        """``X(word)``: letters are applied right to left, matrices left to right."""
        for lvl in (word.src, word.dst):
            if lvl > self.n_max:
                raise NerveError(f"level {lvl} exceeds n_max={self.n_max}")
        out = RatMat.identity(self.dims[word.dst])
        for letter in word.letters:
            out = self.operator(letter) @ out
        return out

    def truncate(self, k: int):
        if k > self.n_max:
            raise NerveError("cannot truncate above n_max")
        return SimplicialVec(k, self.dims[:k + 1],
                             {key: m for key, m in self.faces.items() if key[0] <= k},
                             {key: m for key, m in self.degeneracies.items() if key[0] < k})

    def __eq__(self, other):
        return (type(self) is type(other) and self.n_max == other.n_max
                and self.dims == other.dims and self.faces == other.faces
                and self.degeneracies == other.degeneracies)

    def to_json(self) -> dict:
        return {"n_max": self.n_max, "dims": list(self.dims),
                "faces": _mats_to_json(self.faces),
                "degeneracies": _mats_to_json(self.degeneracies)}

    @staticmethod
    def _read_mats(obj, name, levels, dims, multi=True) -> dict:
        out = {}
        for k, v in (obj.get(name) or {}).items():
            key = _key(k) if multi else int(k)
            dst, src = levels(key[0] if multi else key)
            if not (0 <= dst < len(dims) and 0 <= src < len(dims)):
                raise DimensionError(f"{name} key {k!r} is outside the levels")
            out[key] = RatMat.from_json(v, dims[dst], dims[src])
        return out

    @classmethod
    def from_json(cls, obj) -> "SimplicialVec":
        n_max, dims = int(obj["n_max"]), [int(d) for d in obj["dims"]]
        if len(dims) != n_max + 1:
            raise DimensionError("dims must list levels 0..n_max")
        faces = cls._read_mats(obj, "faces", lambda n: (n - 1, n), dims)
        degs = cls._read_mats(obj, "degeneracies", lambda n: (n + 1, n), dims)
        return SimplicialVec(n_max, dims, faces, degs)


@dataclass(frozen=True, eq=False)
class ParacyclicVec(SimplicialVec):
    """A simplicial vector space with cyclic operators ``t[n]: X_n -> X_n``."""

    t: Mapping[int, RatMat] = field(default_factory=dict)

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "t", dict(self.t))
        self._check_family(self.t, range(self.n_max + 1), lambda n: (n, n), "cyclic")

    def operator(self, letter: Letter) -> RatMat:
        kind, n, _ = letter
        if kind in ("tau", "tau_inv") and n > self.n_max:
            raise NerveError(f"{letter} is outside the truncation n_max={self.n_max}")
        if kind == "tau":
            return self.t[n]
        if kind == "tau_inv":
            inv = self._cache.get(("t_inv", n))
            if inv is None:
                inv = self._cache[("t_inv", n)] = inverse(self.t[n])
            return inv
        return super().operator(letter)

    def simplicial_part(self) -> SimplicialVec:
        return SimplicialVec(self.n_max, self.dims, self.faces, self.degeneracies)

    def truncate(self, k: int) -> "ParacyclicVec":
        s = super().truncate(k)
        return ParacyclicVec(k, s.dims, s.faces, s.degeneracies,
                             {n: m for n, m in self.t.items() if n <= k})

    def __eq__(self, other):
        return super().__eq__(other) and self.t == other.t

    def to_json(self) -> dict:
        out = super().to_json()
        out["t"] = _mats_to_json(self.t)
        return out

    @classmethod
    def from_json(cls, obj) -> "ParacyclicVec":
        s = SimplicialVec.from_json(obj)
        t = cls._read_mats(obj, "t", lambda n: (n, n), s.dims, multi=False)
        return ParacyclicVec(s.n_max, s.dims, s.faces, s.degeneracies, t)


def evaluate(X: SimplicialVec, f: ParaMap) -> RatMat:
    """``X(f): X_n -> X_m`` for ``f: <m> -> <n>``, via a factorization of ``f``."""
    if max(f.src, f.dst) > X.n_max:
        raise NerveError(f"map {f.src}->{f.dst} exceeds n_max={X.n_max}")
    return X.realize(factorize(f))


# ---------------------------------------------------------------- relations

@dataclass(frozen=True)
class RelationReport:
    checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _uses_inverse(rel: Relation) -> bool:
    return any(l.kind == "tau_inv" for w in (rel.lhs, rel.rhs) for l in w.letters)


def _uses_tau(rel: Relation) -> bool:
    return any(l.kind in ("tau", "tau_inv") for w in (rel.lhs, rel.rhs) for l in w.letters)


def check_relations(X: SimplicialVec) -> RelationReport:
    """Check every generator relation as an exact matrix identity.

    For a :class:`ParacyclicVec` the cyclic relations are included and each
    ``t_n`` must be invertible (the relation with ``tau_inv`` is then a
    tautology and is replaced by that check).
    """
    cyclic = isinstance(X, ParacyclicVec)
    checked, bad = 0, []
    for rel in paracyclic_relations(X.n_max):
        if _uses_inverse(rel) or (not cyclic and _uses_tau(rel)):
            continue
        checked += 1
        if X.realize(rel.lhs) != X.realize(rel.rhs):
            bad.append(rel.name)
    if cyclic:
        for n in range(X.n_max + 1):
            checked += 1
            if not is_invertible(X.t[n]):
                bad.append(f"t{n} invertible")
    return RelationReport(checked, tuple(bad))


# -------------------------------------------------------------------- nerve

def _blocks(row_sizes, col_sizes, entries: Mapping[tuple[int, int], RatMat]) -> RatMat:
    grid = []
    for r, rs in enumerate(row_sizes):
        grid.append([entries.get((r, c), RatMat.zeros(rs, cs))
                     for c, cs in enumerate(col_sizes)])
    return RatMat.block(grid) if grid else RatMat.zeros(0, sum(col_sizes))


def nerve_of_pair(phi: int, psi: int, a: RatMat, b: RatMat,
                  n_max: int = DEFAULT_N_MAX) -> ParacyclicVec:
    """The nerve formulas applied to any pair, perverse or not.

    ``X_n = Psi^n + Phi`` (coordinates ``psi_1..psi_n, phi``).  When the pair
    is not perverse some ``t_n`` is singular and :func:`check_relations`
    reports it.
    """
    I_psi, I_phi = RatMat.identity(psi), RatMat.identity(phi)
    dims = tuple(n * psi + phi for n in range(n_max + 1))

    def sizes(n):
        return [psi] * n + [phi]

    faces, degs, t = {}, {}, {}
    for n in range(1, n_max + 1):
        for i in range(n + 1):
            e = {(n - 1, n): I_phi}
            for k in range(n - 1):
                src = k + 1 if k >= i else k  # face i merges/drops psi_{i+1}
                e[(k, src)] = I_psi
                if 0 < i < n and k == i - 1:
                    e[(k, k + 1)] = I_psi
            if i == n:
                e[(n - 1, n - 1)] = -b
            faces[(n, i)] = _blocks(sizes(n - 1), sizes(n), e)
    for n in range(n_max):
        for j in range(n + 1):
            e = {(n + 1, n): I_phi}
            for k in range(n):
                e[(k if k < j else k + 1, k)] = I_psi
            degs[(n, j)] = _blocks(sizes(n + 1), sizes(n), e)
    t[0] = I_phi - b @ a
    for n in range(1, n_max + 1):
        e = {(0, k): -I_psi for k in range(n)}
        e[(0, n)] = a
        for k in range(1, n):
            e[(k, k - 1)] = I_psi
        e[(n, n)] = I_phi
        e[(n, n - 1)] = -b
        t[n] = _blocks(sizes(n), sizes(n), e)
    return ParacyclicVec(n_max, dims, faces, degs, t)


def paracyclic_nerve(F: PervData, n_max: int = DEFAULT_N_MAX) -> ParacyclicVec:
    return nerve_of_pair(F.phi, F.psi, F.a, F.b, n_max)


# -------------------------------------------------------------------- Segal

def _edge(n: int, i: int) -> ParaMap:
    return ParaMap(1, n, (i, i + 1))


def _vertex(n: int, i: int) -> ParaMap:
    return ParaMap(0, n, (i,))


def _chain_spaces(d0: RatMat, d1: RatMat, n_max: int) -> list[RatMat]:
    """Bases of composable chains in ``X_1^n`` for ``n = 1..n_max`` (index ``n``).

    ``x_1, ..., x_n`` is composable when the target vertex of ``x_k``
    (``d0 x_k``) equals the source vertex of ``x_{k+1}`` (``d1 x_{k+1}``).
    """
    e = d0.cols
    spaces = [None, RatMat.identity(e)]
    last = d0
    for n in range(2, n_max + 1):
        basis, p_prev, p_new = fiber_product(last, d1)
        spaces.append(RatMat.vstack(spaces[-1] @ p_prev, p_new, cols=basis.cols))
        last = d0 @ p_new
    return spaces


@dataclass(frozen=True)
class SegalReport:
    levels: tuple[tuple[int, int, int, bool], ...]  # (n, dim X_n, dim chains, iso)

    @property
    def ok(self) -> bool:
        return all(lv[3] for lv in self.levels)


def _is_iso_onto(target: RatMat, m: RatMat) -> bool:
    """Whether ``m`` maps isomorphically onto the span of ``target``'s columns."""
    coords = solve_matrix(target, m)
    return coords is not None and coords.is_square and is_invertible(coords)


def segal_report(X: SimplicialVec) -> SegalReport:
    levels = []
    if X.n_max >= 1:
        chains = _chain_spaces(X.face(1, 0), X.face(1, 1), X.n_max)
        for n in range(2, X.n_max + 1):
            edges = RatMat.vstack(*(evaluate(X, _edge(n, i)) for i in range(n)),
                                  cols=X.dims[n])
            levels.append((n, X.dims[n], chains[n].cols, _is_iso_onto(chains[n], edges)))
    return SegalReport(tuple(levels))


def check_segal(X: SimplicialVec) -> bool:
    """Limit-form Segal condition ``X_n = X_1 x_{X_0} ... x_{X_0} X_1``."""
    return segal_report(X).ok


def check_segal_squares(X: SimplicialVec) -> bool:
    """Pullback form: ``X_n = X_m x_{X_0} X_{n-m}`` for all ``0 < m < n``."""
    for n in range(2, X.n_max + 1):
        for m in range(1, n):
            front = evaluate(X, ParaMap(m, n, tuple(range(m + 1))))
            back = evaluate(X, ParaMap(n - m, n, tuple(range(m, n + 1))))
            basis, _, _ = fiber_product(evaluate(X, _vertex(m, m)),
                                        evaluate(X, _vertex(n - m, 0)))
            if not _is_iso_onto(basis, RatMat.vstack(front, back)):
                return False
    return True


def reconstruct_from_truncation(X0: int, X1: int, d0: RatMat, d1: RatMat, s0: RatMat,
                                n_max: int = DEFAULT_N_MAX) -> SimplicialVec:
    """The Segal object determined by levels 0 and 1.

    Level ``n`` is the space of composable chains of ``n`` edges; composition
    of two edges sharing a vertex ``v`` is forced by linearity to be
    ``x + y - s0(v)``.  Operators are computed on the ambient ``X_1^n`` and
    then read in the chain bases.
    """
    if d0.shape != (X0, X1) or d1.shape != (X0, X1) or s0.shape != (X1, X0):
        raise DimensionError("truncation operators have the wrong shapes")
    I0 = RatMat.identity(X0)
    if d0 @ s0 != I0 or d1 @ s0 != I0:
        raise NerveError("level-1 simplicial identities fail")
    if n_max < 1:
        return SimplicialVec(0, (X0,), {}, {})
    chains = _chain_spaces(d0, d1, n_max)
    I1 = RatMat.identity(X1)
    sizes = lambda n: [X1] * n

    def ambient_face(n, i):
        if n == 1:
            return d0 if i == 0 else d1
        e = {}
        for k in range(n - 1):
            src = k + 1 if k >= i else k
            e[(k, src)] = I1
        if 0 < i < n:
            e[(i - 1, i - 1)] = I1 - s0 @ d0
            e[(i - 1, i)] = I1
        return _blocks(sizes(n - 1), sizes(n), e)

    def ambient_degeneracy(n, j):
        if n == 0:
            return s0
        e = {}
        for k in range(n):
            e[(k if k < j else k + 1, k)] = I1
        # identity edge at vertex j: the source of x_1, else the target of x_j
        if j == 0:
            e[(0, 0)] = s0 @ d1
        else:
            e[(j, j - 1)] = s0 @ d0
        return _blocks(sizes(n + 1), sizes(n), e)

    def basis(n):
        return I0 if n == 0 else chains[n]

    faces, degs = {}, {}
    for n in range(1, n_max + 1):
        for i in range(n + 1):
            faces[(n, i)] = read_in_basis(basis(n - 1), ambient_face(n, i) @ basis(n))
    for n in range(n_max):
        for j in range(n + 1):
            degs[(n, j)] = read_in_basis(basis(n + 1), ambient_degeneracy(n, j) @ basis(n))
    dims = tuple(basis(n).cols for n in range(n_max + 1))
    return SimplicialVec(n_max, dims, faces, degs)


def read_in_basis(basis: RatMat, m: RatMat) -> RatMat:
    """Coordinates of the columns of ``m`` in ``basis``; raises if outside its span."""
    x = solve_matrix(basis, m)
    if x is None:
        raise NerveError("operator leaves the subspace")
    return x


# --------------------------------------------------------------- extraction

def extract_perv(X: ParacyclicVec) -> PervData:
    """Recover ``(Phi, Psi, a, b)`` from a paracyclic Segal object.

    ``Phi = X_0`` and ``Psi = ker(d1: X_1 -> X_0)``.  The kernel is
    parametrized through the quotient ``X_1 / s0(X_0)``: a class ``c`` lifts
    to ``(I - s0 d1) r c`` for any section ``r`` of the quotient map.  With
    this choice the nerve of a datum returns the datum in its own bases.
    """
    if X.n_max < 2:
        raise NerveError("extraction needs n_max >= 2")
    report = check_relations(X)
    if not report.ok:
        raise NerveError("relations fail: " + ", ".join(report.violations))
    if not check_segal(X):
        raise NerveError("Segal condition fails")
    s0, d0, d1 = X.degeneracy(0, 0), X.face(1, 0), X.face(1, 1)
    q = cokernel_map(s0)
    r = solve_matrix(q, RatMat.identity(q.rows))
    K = (RatMat.identity(X.dims[1]) - s0 @ d1) @ r
    b = d0 @ K
    a = q @ X.t[1] @ s0
    return PervData(X.dims[0], q.rows, a, b)


# ---------------------------------------------------------------- Dold-Kan

@dataclass(frozen=True, eq=False)
class Complex:
    """A cochain complex ``E^0 <- E^-1 <- ... <- E^-k``.

    ``dims[n] = dim E^{-n}`` and ``d[n]: E^{-n} -> E^{-n+1}`` for ``n >= 1``.
    ``inclusions`` optionally records how each ``E^{-n}`` sits inside a larger
    space (used for normalized chains).
    """

    dims: tuple[int, ...]
    d: Mapping[int, RatMat]
    inclusions: Mapping[int, RatMat] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "d", dict(self.d))
        if not self.dims:
            raise DimensionError("a complex needs at least degree 0")
        if set(self.d) != set(range(1, len(self.dims))):
            raise DimensionError("differentials must be keyed 1..len(dims)-1")
        for n, m in self.d.items():
            if m.shape != (self.dims[n - 1], self.dims[n]):
                raise DimensionError(f"d{n} must be {self.dims[n - 1]}x{self.dims[n]}")
        for n in range(2, len(self.dims)):
            if not (self.d[n - 1] @ self.d[n]).is_zero():
                raise ValueError(f"d{n - 1} d{n} != 0")

    @property
    def amplitude(self) -> int:
        return len(self.dims) - 1

    def __eq__(self, other):
        return isinstance(other, Complex) and self.dims == other.dims and self.d == other.d

    def trimmed(self) -> "Complex":
        """Drop vanishing top degrees."""
        top = len(self.dims) - 1
        while top > 0 and self.dims[top] == 0:
            top -= 1
        return Complex(self.dims[:top + 1], {n: self.d[n] for n in range(1, top + 1)})

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "d": _mats_to_json(self.d)}

    @classmethod
    def from_json(cls, obj) -> "Complex":
        dims = [int(x) for x in obj["dims"]]
        d = {}
        for k, v in (obj.get("d") or {}).items():
            n = int(k)
            if not 1 <= n < len(dims):
                raise DimensionError(f"differential key {k!r} out of range")
            d[n] = RatMat.from_json(v, dims[n - 1], dims[n])
        return cls(dims, d)


def kernel_late_pivots(m: RatMat) -> RatMat:
    """Kernel basis whose free coordinates are taken as early as possible.

    On the nerve this parametrizes normalized chains by their ``psi``
    coordinates, so that e.g. the first differential is exactly ``b``.
    """
    k = kernel(m.submatrix(range(m.rows), range(m.cols - 1, -1, -1)))
    return k.submatrix(range(k.rows - 1, -1, -1), range(k.cols - 1, -1, -1))


def normalized_basis(X: SimplicialVec, n: int) -> RatMat:
    """Basis of the intersection of ``ker d_i`` for ``1 <= i <= n`` inside ``X_n``."""
    if n == 0:
        return RatMat.identity(X.dims[0])
    stacked = RatMat.vstack(*(X.face(n, i) for i in range(1, n + 1)), cols=X.dims[n])
    return kernel_late_pivots(stacked)


def dold_kan_chains(X: SimplicialVec) -> Complex:
    """Normalized chains: ``C^{-n} = ker d_1 & ... & ker d_n``, differential ``d_0``."""
    bases = {n: normalized_basis(X, n) for n in range(X.n_max + 1)}
    top = X.n_max
    while top > 0 and bases[top].cols == 0:
        top -= 1
    d = {n: read_in_basis(bases[n - 1], X.face(n, 0) @ bases[n]) for n in range(1, top + 1)}
    return Complex(tuple(bases[n].cols for n in range(top + 1)), d,
                   {n: bases[n] for n in range(top + 1)})


def _simplices(n: int, k: int) -> list[tuple[int, ...]]:
    """Nondegenerate simplices of the standard n-simplex of dimension ``<= k``."""
    return [s for m in range(min(k, n) + 1) for s in combinations(range(n + 1), m + 1)]


def _cochain_layout(E: Complex, n: int) -> tuple[dict, int]:
    offsets, pos = {}, 0
    for s in _simplices(n, E.amplitude):
        offsets[s] = pos
        pos += E.dims[len(s) - 1]
    return offsets, pos


def _cocycles(E: Complex, n: int) -> tuple[RatMat, dict]:
    """Normalized degree-0 cocycles on the n-simplex with values in ``E``.

    A cochain assigns ``gamma_s in E^{-dim s}`` to each simplex, zero on
    degenerate ones.  The cocycle condition on a simplex ``s`` of dimension
    ``m`` is ``d gamma_s = sum_i (-1)^i gamma_{d_i s}``; it is imposed for
    every simplex up to dimension ``amplitude + 1``, degenerate ones
    included (they contribute identically vanishing rows).
    """
    offsets, total = _cochain_layout(E, n)
    k = E.amplitude
    rows = []
    for m in range(1, k + 2):
        width = E.dims[m - 1]
        for s in combinations_with_replacement(range(n + 1), m + 1):
            block = [[0] * total for _ in range(width)]
            nondeg = len(set(s)) == len(s)
            if nondeg and m <= k:
                o = offsets[s]
                dm = E.d[m]
                for r in range(width):
                    for c in range(E.dims[m]):
                        block[r][o + c] += dm[r, c]
            for i in range(m + 1):
                face = s[:i] + s[i + 1:]
                if len(set(face)) != len(face):
                    continue
                o, sign = offsets[face], (-1) ** i
                for r in range(width):
                    block[r][o + r] -= sign
            rows.extend(block)
    system = RatMat(rows, len(rows), total)
    return kernel(system), offsets


def _pullback(E: Complex, theta: ParaMap, src_layout: dict, src_total: int,
              dst_layout: dict, dst_total: int) -> RatMat:
    """Cochains on Delta^n -> cochains on Delta^m along ``theta: [m] -> [n]``."""
    rows = [[0] * dst_total for _ in range(src_total)]
    for s, o in src_layout.items():
        image = tuple(theta.values[v] for v in s)
        if len(set(image)) != len(image):
            continue
        o2 = dst_layout[image]
        for r in range(E.dims[len(s) - 1]):
            rows[o + r][o2 + r] = 1
    return RatMat(rows, src_total, dst_total)


def dold_kan_nerve(E: Complex, n_max: int = DEFAULT_N_MAX) -> SimplicialVec:
    """Level ``n`` is the space of normalized cocycles on the n-simplex."""
    levels = [_cocycles(E, n) for n in range(n_max + 1)]
    layouts = [_cochain_layout(E, n) for n in range(n_max + 1)]

    def induced(theta: ParaMap) -> RatMat:
        m, n = theta.src, theta.dst
        (lm, tm), (ln, tn) = layouts[m], layouts[n]
        pb = _pullback(E, theta, lm, tm, ln, tn)
        return read_in_basis(levels[m][0], pb @ levels[n][0])

    faces = {(n, i): induced(delta(n, i)) for n in range(1, n_max + 1) for i in range(n + 1)}
    degs = {(n, j): induced(sigma(n, j)) for n in range(n_max) for j in range(n + 1)}
    return SimplicialVec(n_max, tuple(z.cols for z, _ in levels), faces, degs)


def dold_kan_comparison(E: Complex, n_max: int = DEFAULT_N_MAX) -> dict[int, RatMat]:
    """Maps ``C^{-n}(N(E)) -> E^{-n}``: evaluate a cocycle on the top simplex.

    Returns the matrices for ``n <= min(n_max, amplitude)`` in the bases
    produced by :func:`dold_kan_chains` applied to :func:`dold_kan_nerve`.
    """
    X = dold_kan_nerve(E, n_max)
    C = dold_kan_chains(X)
    out = {}
    for n in range(len(C.dims)):
        Z, offsets = _cocycles(E, n)
        width = E.dims[n] if n <= E.amplitude else 0
        o = offsets.get(tuple(range(n + 1)), 0)
        sel = RatMat([[1 if c == o + r else 0 for c in range(Z.rows)] for r in range(width)],
                     width, Z.rows)
        out[n] = sel @ Z @ C.inclusions[n]
    return out
