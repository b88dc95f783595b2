"""Perverse data on a closed oriented surface of genus ``g`` with ``n`` special points.

The generic stalk is one space ``Q^r`` (all local nearby-cycle spaces are
identified with it along fixed paths from a base point).  The data are the
handle monodromies ``(A_i, B_i)`` and one local quadruple ``(phi_j, a_j, b_j)``
per special point, subject to

    [A_1, B_1] ... [A_g, B_g] T_1 ... T_n = I,   T_j = I - a_j b_j,

with ``[A, B] = A B A^-1 B^-1``: handles first, then points in label order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import disk
from .disk import PervData
from .linalg import DimensionError, RatMat, inverse, is_invertible, kernel, kron

__all__ = [
    "StratSurface",
    "LocalDatum",
    "SurfacePervData",
    "SurfaceMorphism",
    "SurfaceReport",
    "SurfaceError",
    "validate",
    "surface_relation",
    "euler_characteristic",
    "dualize",
    "direct_sum",
    "hom_space",
    "add_dummy_point",
    "remove_dummy_point",
    "restrict_to_disk",
]


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class StratSurface:
    genus: int
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if self.genus < 0:
            raise SurfaceError("genus must be non-negative")
        if not self.labels:
            raise SurfaceError("at least one special point is needed (a dummy point will do)")
        if len(set(self.labels)) != len(self.labels):
            raise SurfaceError("special point labels must be distinct")

    @classmethod
    def standard(cls, genus: int, n: int) -> "StratSurface":
        return cls(genus, tuple(f"p{j}" for j in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class LocalDatum:
    phi: int
    a: RatMat  # r x phi
    b: RatMat  # phi x r


def _fresh_label(labels) -> str:
    k = len(labels) + 1
    while f"p{k}" in labels:
        k += 1
    return f"p{k}"


@dataclass(frozen=True)
class SurfacePervData:
    """Shapes are checked on construction; invertibility and the surface
    relation are reported by :func:`validate`."""

    surface: StratSurface
    r: int
    handles: tuple[tuple[RatMat, RatMat], ...]
    locals: tuple[LocalDatum, ...]

    def __post_init__(self):
        object.__setattr__(self, "handles", tuple(tuple(h) for h in self.handles))
        object.__setattr__(self, "locals", tuple(self.locals))
        if self.r < 0:
            raise DimensionError("r must be non-negative")
        if len(self.handles) != self.surface.genus:
            raise DimensionError(f"expected {self.surface.genus} handle pairs, "
                                 f"got {len(self.handles)}")
        if len(self.locals) != self.surface.n:
            raise DimensionError(f"expected {self.surface.n} local data, got {len(self.locals)}")
        for i, (A, B) in enumerate(self.handles):
            if A.shape != (self.r, self.r) or B.shape != (self.r, self.r):
                raise DimensionError(f"handle {i + 1} matrices must be {self.r}x{self.r}")
        for j, loc in enumerate(self.locals):
            if loc.phi < 0 or loc.a.shape != (self.r, loc.phi) or loc.b.shape != (loc.phi, self.r):
                raise DimensionError(f"local datum {j + 1}: a must be {self.r}x{loc.phi} "
                                     f"and b {loc.phi}x{self.r}")

    @property
    def genus(self) -> int:
        return self.surface.genus

    def local_monodromy(self, j: int) -> RatMat:
        loc = self.locals[j]
        return RatMat.identity(self.r) - loc.a @ loc.b

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "r": self.r,
            "labels": list(self.surface.labels),
            "handles": [[A.to_json(), B.to_json()] for A, B in self.handles],
            "locals": [{"phi": l.phi, "a": l.a.to_json(), "b": l.b.to_json()}
                       for l in self.locals],
        }

    @classmethod
    def from_json(cls, obj) -> "SurfacePervData":
        g, r = int(obj["genus"]), int(obj["r"])
        locs = obj["locals"]
        labels = obj.get("labels") or [f"p{j}" for j in range(1, len(locs) + 1)]
        handles = []
        for pair in obj.get("handles") or []:
            if len(pair) != 2:
                raise DimensionError("each handle is a pair [A, B]")
            handles.append(tuple(RatMat.from_json(m, r, r) for m in pair))
        locals_ = []
        for loc in locs:
            phi = int(loc["phi"])
            locals_.append(LocalDatum(phi, RatMat.from_json(loc["a"], r, phi),
                                      RatMat.from_json(loc["b"], phi, r)))
        return cls(StratSurface(g, labels), r, tuple(handles), tuple(locals_))


@dataclass(frozen=True)
class SurfaceReport:
    problems: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.problems


def _commutator(A: RatMat, B: RatMat) -> RatMat:
    return A @ B @ inverse(A) @ inverse(B)


def surface_relation(s: SurfacePervData) -> RatMat:
    """The product ``prod [A_i, B_i] prod T_j`` (requires invertible handles)."""
    out = RatMat.identity(s.r)
    for A, B in s.handles:
        out = out @ _commutator(A, B)
    for j in range(s.surface.n):
        out = out @ s.local_monodromy(j)
    return out


def validate(s: SurfacePervData) -> SurfaceReport:
    problems = []
    for i, (A, B) in enumerate(s.handles, 1):
        for name, M in (("A", A), ("B", B)):
            if not is_invertible(M):
                problems.append(f"handle {i}: {name} is singular")
    for j, loc in enumerate(s.locals):
        v = disk.validate(loc.phi, s.r, loc.a, loc.b)
        for msg in v.messages():
            problems.append(f"point {s.surface.labels[j]}: {msg}")
    if not problems and surface_relation(s) != RatMat.identity(s.r):
        problems.append("surface relation fails: product of commutators and local "
                        "monodromies is not the identity")
    return SurfaceReport(tuple(problems))


def _require_valid(s: SurfacePervData) -> None:
    rep = validate(s)
    if not rep.ok:
        raise SurfaceError("; ".join(rep.problems))


def euler_characteristic(s: SurfacePervData) -> int:
    return (2 * s.genus - 2) * s.r + sum(l.phi for l in s.locals)


def dualize(s: SurfacePervData) -> SurfacePervData:
    """Transposed dual.

    Transposing the relation reverses all products and turns ``[A, B]`` into
    ``[B^-T, A^-T]``; so handles are reversed with ``(A, B) -> (B^-T, A^-T)``
    and points are reversed with the local transposed swap.  This is an
    involution on the nose and the local monodromies become ``T_j^T``.
    """
    _require_valid(s)
    handles = tuple((inverse(B).T, inverse(A).T) for A, B in reversed(s.handles))
    locals_ = tuple(LocalDatum(l.phi, l.b.T, l.a.T) for l in reversed(s.locals))
    out = SurfacePervData(StratSurface(s.genus, tuple(reversed(s.surface.labels))),
                          s.r, handles, locals_)
    _require_valid(out)
    return out


def direct_sum(s: SurfacePervData, t: SurfacePervData) -> SurfacePervData:
    if (s.genus, s.surface.n) != (t.genus, t.surface.n):
        raise SurfaceError("direct sum needs the same surface")
    handles = tuple((RatMat.block_diag(A, A2), RatMat.block_diag(B, B2))
                    for (A, B), (A2, B2) in zip(s.handles, t.handles))
    locals_ = tuple(LocalDatum(l.phi + m.phi, RatMat.block_diag(l.a, m.a),
                               RatMat.block_diag(l.b, m.b))
                    for l, m in zip(s.locals, t.locals))
    return SurfacePervData(s.surface, s.r + t.r, handles, locals_)


@dataclass(frozen=True)
class SurfaceMorphism:
    f_psi: RatMat
    f_phi: tuple[RatMat, ...]


def hom_space(s: SurfacePervData, t: SurfacePervData) -> list[SurfaceMorphism]:
    """Basis of morphisms: ``F: Q^r -> Q^r'`` intertwining all handles and,
    per point, ``f_j`` making both local squares commute."""
    if (s.genus, s.surface.n) != (t.genus, t.surface.n):
        raise SurfaceError("hom_space needs the same surface")
    r, r2 = s.r, t.r
    sizes = [r2 * r] + [m.phi * l.phi for l, m in zip(s.locals, t.locals)]
    offsets = [sum(sizes[:k]) for k in range(len(sizes))]
    total = sum(sizes)
    eqs = []

    def place(blocks: dict) -> RatMat:
        rows = next(iter(blocks.values())).rows
        parts = [blocks.get(k, RatMat.zeros(rows, sizes[k])) for k in range(len(sizes))]
        return RatMat.hstack(*parts, rows=rows)

    I_r, I_r2 = RatMat.identity(r), RatMat.identity(r2)
    for (A, B), (A2, B2) in zip(s.handles, t.handles):
        for M, M2 in ((A, A2), (B, B2)):
            eqs.append(place({0: kron(M2, I_r) - kron(I_r2, M.T)}))
    for k, (l, m) in enumerate(zip(s.locals, t.locals), 1):
        # F a = a' f  and  f b = b' F
        eqs.append(place({0: kron(I_r2, l.a.T), k: -kron(m.a, RatMat.identity(l.phi))}))
        eqs.append(place({k: kron(RatMat.identity(m.phi), l.b.T),
                          0: -kron(m.b, I_r)}))
    system = RatMat.vstack(*eqs, cols=total)
    out = []
    for v in kernel(system).columns():
        def unvec(k, rows, cols):
            o = offsets[k]
            return RatMat([v[o + i * cols:o + (i + 1) * cols] for i in range(rows)], rows, cols)
        out.append(SurfaceMorphism(unvec(0, r2, r),
                                   tuple(unvec(k, m.phi, l.phi) for k, (l, m)
                                         in enumerate(zip(s.locals, t.locals), 1))))
    return out


def add_dummy_point(s: SurfacePervData, label: str | None = None) -> SurfacePervData:
    """Append a point with ``phi = 0`` (trivial local monodromy)."""
    labels = s.surface.labels
    label = _fresh_label(labels) if label is None else label
    return SurfacePervData(StratSurface(s.genus, labels + (label,)), s.r, s.handles,
                           s.locals + (LocalDatum(0, RatMat.zeros(s.r, 0),
                                                  RatMat.zeros(0, s.r)),))


def remove_dummy_point(s: SurfacePervData, j: int) -> SurfacePervData:
    if not 0 <= j < s.surface.n:
        raise IndexError(f"no special point with index {j}")
    if s.locals[j].phi != 0:
        raise SurfaceError(f"point {s.surface.labels[j]} has phi = {s.locals[j].phi}; "
                           "only dummy points (phi = 0) can be removed")
    if s.surface.n == 1:
        raise SurfaceError("cannot remove the last special point")
    labels = s.surface.labels[:j] + s.surface.labels[j + 1:]
    return SurfacePervData(StratSurface(s.genus, labels), s.r, s.handles,
                           s.locals[:j] + s.locals[j + 1:])


def restrict_to_disk(s: SurfacePervData, j: int) -> PervData:
    if not 0 <= j < s.surface.n:
        raise IndexError(f"no special point with index {j}")
    loc = s.locals[j]
    return PervData(loc.phi, s.r, loc.a, loc.b)
