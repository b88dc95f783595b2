"""Perverse sheaves on a disk with one special point, as quadruples.

A datum is ``(phi, psi, a, b)`` with ``a: Phi -> Psi`` (a ``psi x phi``
matrix, the variation) and ``b: Psi -> Phi`` (``phi x psi``, the canonical
map).  It is perverse exactly when ``T_Psi = I - a b`` is invertible, which
happens exactly when ``T_Phi = I - b a`` is.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    DimensionError,
    RatMat,
    cokernel_map,
    is_invertible,
    kernel,
    kron,
    image,
    solve_matrix,
)

__all__ = [
    "PerverseDataError",
    "PervData",
    "PervMorphism",
    "Validation",
    "validate",
    "monodromies",
    "half_monodromy",
    "hom_space",
    "kernel_of",
    "cokernel_of",
    "direct_sum",
    "dualize",
    "dualize_morphism",
    "skyscraper",
    "extension_by_zero",
    "direct_image",
    "intermediate_extension",
    "identity_morphism",
    "zero_morphism",
]


class PerverseDataError(ValueError):
    """A quadruple whose monodromies are not invertible."""

    def __init__(self, message: str, validation: "Validation | None" = None):
        super().__init__(message)
        self.validation = validation


def _check_shapes(phi: int, psi: int, a: RatMat, b: RatMat) -> None:
    if phi < 0 or psi < 0:
        raise DimensionError("dimensions must be non-negative")
    if a.shape != (psi, phi):
        raise DimensionError(f"a must be {psi}x{phi} (Phi -> Psi), got {a.rows}x{a.cols}")
    if b.shape != (phi, psi):
        raise DimensionError(f"b must be {phi}x{psi} (Psi -> Phi), got {b.rows}x{b.cols}")


@dataclass(frozen=True)
class Validation:
    t_phi: RatMat
    t_psi: RatMat
    t_phi_invertible: bool
    t_psi_invertible: bool

    @property
    def ok(self) -> bool:
        return self.t_phi_invertible and self.t_psi_invertible

    @property
    def consistent(self) -> bool:
        return self.t_phi_invertible == self.t_psi_invertible

    def messages(self) -> list[str]:
        out = []
        if not self.t_phi_invertible:
            out.append("T_Phi = I - b a is singular")
        if not self.t_psi_invertible:
            out.append("T_Psi = I - a b is singular")
        if not self.consistent:
            out.append("internal error: T_Phi and T_Psi verdicts disagree")
        return out


def validate(phi: int, psi: int, a: RatMat, b: RatMat) -> Validation:
    """Check both monodromies.  Shape errors raise :class:`DimensionError`."""
    _check_shapes(phi, psi, a, b)
    t_phi = RatMat.identity(phi) - b @ a
    t_psi = RatMat.identity(psi) - a @ b
    v = Validation(t_phi, t_psi, is_invertible(t_phi), is_invertible(t_psi))
    if not v.consistent:
        raise AssertionError("invertibility of I - ba and I - ab disagree")
    return v


@dataclass(frozen=True)
class PervData:
    phi: int
    psi: int
    a: RatMat
    b: RatMat

    def __post_init__(self):
        v = validate(self.phi, self.psi, self.a, self.b)
        if not v.ok:
            raise PerverseDataError("; ".join(v.messages()), v)

    @property
    def t_phi(self) -> RatMat:
        return RatMat.identity(self.phi) - self.b @ self.a

    @property
    def t_psi(self) -> RatMat:
        return RatMat.identity(self.psi) - self.a @ self.b

    def to_json(self) -> dict:
        return {"phi": self.phi, "psi": self.psi, "a": self.a.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, obj) -> "PervData":
        phi, psi = int(obj["phi"]), int(obj["psi"])
        return cls(phi, psi, RatMat.from_json(obj["a"], psi, phi),
                   RatMat.from_json(obj["b"], phi, psi))


@dataclass(frozen=True)
class PervMorphism:
    source: PervData
    target: PervData
    f_phi: RatMat
    f_psi: RatMat

    def __post_init__(self):
        s, t = self.source, self.target
        if self.f_phi.shape != (t.phi, s.phi) or self.f_psi.shape != (t.psi, s.psi):
            raise DimensionError("morphism components have the wrong shape")
        if self.f_psi @ s.a != t.a @ self.f_phi:
            raise ValueError("f_psi a != a' f_phi")
        if self.f_phi @ s.b != t.b @ self.f_psi:
            raise ValueError("f_phi b != b' f_psi")

    def __matmul__(self, other: "PervMorphism") -> "PervMorphism":
        if other.target != self.source:
            raise ValueError("morphisms are not composable")
        return PervMorphism(other.source, self.target, self.f_phi @ other.f_phi,
                            self.f_psi @ other.f_psi)

    def is_zero(self) -> bool:
        return self.f_phi.is_zero() and self.f_psi.is_zero()


def monodromies(d: PervData) -> tuple[RatMat, RatMat]:
    return d.t_phi, d.t_psi


def half_monodromy(d: PervData) -> RatMat:
    """``P = [[-I, b], [-a, I]]`` on ``Phi + Psi``; its square is ``diag(T_Phi, T_Psi)``."""
    return RatMat.block([[-RatMat.identity(d.phi), d.b],
                         [-d.a, RatMat.identity(d.psi)]])


def identity_morphism(d: PervData) -> PervMorphism:
    return PervMorphism(d, d, RatMat.identity(d.phi), RatMat.identity(d.psi))


def zero_morphism(s: PervData, t: PervData) -> PervMorphism:
    return PervMorphism(s, t, RatMat.zeros(t.phi, s.phi), RatMat.zeros(t.psi, s.psi))


def _unvec(v: tuple, rows: int, cols: int) -> RatMat:
    return RatMat([v[i * cols:(i + 1) * cols] for i in range(rows)], rows, cols)


def hom_space(F: PervData, G: PervData) -> list[PervMorphism]:
    """A basis of Hom(F, G).

    Unknowns are ``vec(f_phi)`` then ``vec(f_psi)`` (row-major); the commuting
    squares are linear in them via ``vec(A X B) = (A kron B^T) vec(X)``.
    """
    n_phi, n_psi = G.phi * F.phi, G.psi * F.psi
    eq_a = RatMat.hstack(-kron(G.a, RatMat.identity(F.phi)),
                         kron(RatMat.identity(G.psi), F.a.T))
    eq_b = RatMat.hstack(kron(RatMat.identity(G.phi), F.b.T),
                         -kron(G.b, RatMat.identity(F.psi)))
    system = RatMat.vstack(eq_a, eq_b, cols=n_phi + n_psi)
    basis = kernel(system)
    out = []
    for v in basis.columns():
        out.append(PervMorphism(F, G, _unvec(v[:n_phi], G.phi, F.phi),
                                _unvec(v[n_phi:], G.psi, F.psi)))
    return out


def _restrict(f: RatMat, src_basis: RatMat, dst_basis: RatMat) -> RatMat:
    x = solve_matrix(dst_basis, f @ src_basis)
    if x is None:
        raise ValueError("map does not preserve the subspace")
    return x


def kernel_of(m: PervMorphism) -> tuple[PervData, PervMorphism]:
    """Kernel object and its inclusion."""
    s = m.source
    k_phi, k_psi = kernel(m.f_phi), kernel(m.f_psi)
    a = _restrict(s.a, k_phi, k_psi)
    b = _restrict(s.b, k_psi, k_phi)
    K = PervData(k_phi.cols, k_psi.cols, a, b)
    return K, PervMorphism(K, s, k_phi, k_psi)


def cokernel_of(m: PervMorphism) -> tuple[PervData, PervMorphism]:
    """Cokernel object and the projection onto it."""
    t = m.target
    q_phi, q_psi = cokernel_map(m.f_phi), cokernel_map(m.f_psi)
    # sections of the quotient maps; any choice gives the same induced map
    r_phi = solve_matrix(q_phi, RatMat.identity(q_phi.rows))
    r_psi = solve_matrix(q_psi, RatMat.identity(q_psi.rows))
    a = q_psi @ t.a @ r_phi
    b = q_phi @ t.b @ r_psi
    C = PervData(q_phi.rows, q_psi.rows, a, b)
    return C, PervMorphism(t, C, q_phi, q_psi)


def direct_sum(F: PervData, G: PervData) -> PervData:
    return PervData(F.phi + G.phi, F.psi + G.psi, RatMat.block_diag(F.a, G.a),
                    RatMat.block_diag(F.b, G.b))


def dualize(F: PervData) -> PervData:
    """Transposed swap ``(phi, psi, b^T, a^T)``: monodromies become ``T^T``."""
    return PervData(F.phi, F.psi, F.b.T, F.a.T)


def dualize_morphism(m: PervMorphism) -> PervMorphism:
    return PervMorphism(dualize(m.target), dualize(m.source), m.f_phi.T, m.f_psi.T)


def skyscraper(d: int) -> PervData:
    return PervData(d, 0, RatMat.zeros(0, d), RatMat.zeros(d, 0))


def _require_invertible(T: RatMat) -> int:
    if not is_invertible(T):
        raise PerverseDataError("monodromy must be invertible")
    return T.rows


def extension_by_zero(T: RatMat) -> PervData:
    r = _require_invertible(T)
    I = RatMat.identity(r)
    return PervData(r, r, I, I - T)


def direct_image(T: RatMat) -> PervData:
    r = _require_invertible(T)
    I = RatMat.identity(r)
    return PervData(r, r, I - T, I)


def intermediate_extension(T: RatMat) -> PervData:
    """``Phi = im(I - T)``.

    ``a: Phi -> Psi`` is the inclusion of the image and ``b: Psi -> Phi`` is
    ``I - T`` corestricted to it, so ``a b = I - T``.
    """
    r = _require_invertible(T)
    N = RatMat.identity(r) - T
    incl = image(N)
    cores = solve_matrix(incl, N)
    return PervData(incl.cols, r, incl, cores)
