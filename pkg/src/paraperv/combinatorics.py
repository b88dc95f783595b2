"""Periodic-map models of the simplex, paracyclic and duplex categories.

A morphism ``<m> -> <n>`` is stored as the values ``(f(0), ..., f(m))`` of a
weakly monotone map ``f: Z -> Z`` with ``f(i + m + 1) = f(i) + n + 1``.  The
values on one period determine ``f``; they are the normal form, so equality
and hashing are plain tuple comparisons.

Generator conventions (all verified against the relations in
:func:`paracyclic_relations`):

* ``delta(n, i)``: ``<n-1> -> <n>``, the monotone injection skipping ``i``;
* ``sigma(n, j)``: ``<n+1> -> <n>``, the surjection repeating ``j``;
* ``tau(n)``: the automorphism of ``<n>`` given by ``i -> i - 1``.

With these choices the cyclic-operator relations hold in the classical form
``tau_n delta_i = delta_{i-1} tau_{n-1}``, ``tau_n delta_0 = delta_n``,
``tau_n sigma_i = sigma_{i-1} tau_{n+1}`` and ``tau_n sigma_0 =
sigma_n tau_{n+1}^2``.  The inverse shift ``i -> i + 1`` is ``tau_inv(n)``; it
lies in the duplex category, ``tau(n)`` does not.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, NamedTuple

__all__ = [
    "ParaMap",
    "Flavor",
    "Letter",
    "Word",
    "Relation",
    "identity",
    "generator",
    "delta",
    "sigma",
    "tau",
    "tau_inv",
    "shift",
    "extra_codegeneracy",
    "compose",
    "membership",
    "factorize",
    "project_to_lambda",
    "dual",
    "xi_fraction",
    "paracyclic_relations",
    "duplex_letters",
    "duplex_relations",
]


@dataclass(frozen=True)
class ParaMap:
    src: int
    dst: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.src < 0 or self.dst < 0:
            raise ValueError("objects are <n> with n >= 0")
        if len(self.values) != self.src + 1:
            raise ValueError(f"a map out of <{self.src}> needs {self.src + 1} values")
        v = self.values
        if any(v[i] > v[i + 1] for i in range(self.src)):
            raise ValueError(f"values {v} are not weakly monotone")
        if v[-1] > v[0] + self.dst + 1:
            raise ValueError(f"values {v} violate the period bound for target <{self.dst}>")

    def __call__(self, i: int) -> int:
        """The periodic extension evaluated at any integer."""
        q, r = divmod(i, self.src + 1)
        return self.values[r] + q * (self.dst + 1)

    def __matmul__(self, other: "ParaMap") -> "ParaMap":
        return compose(self, other)

    def to_json(self) -> dict:
        return {"src": self.src, "dst": self.dst, "values": list(self.values)}

    @classmethod
    def from_json(cls, obj) -> "ParaMap":
        return cls(int(obj["src"]), int(obj["dst"]), tuple(obj["values"]))


class Flavor(enum.Enum):
    DELTA = "Delta"
    DELTA_SURJ = "DeltaSurj"
    LAMBDA_INFINITY = "LambdaInfinity"
    LAMBDA_INFINITY_SURJ = "LambdaInfinitySurj"
    XI = "Xi"
    LAMBDA = "Lambda"


def identity(n: int) -> ParaMap:
    return ParaMap(n, n, tuple(range(n + 1)))


def compose(g: ParaMap, f: ParaMap) -> ParaMap:
    """``g . f``: apply ``f`` first."""
    if f.dst != g.src:
        raise ValueError(f"cannot compose <{g.src}> -> <{g.dst}> after <{f.src}> -> <{f.dst}>")
    return ParaMap(f.src, g.dst, tuple(g(v) for v in f.values))


def shift(n: int, k: int) -> ParaMap:
    """``i -> i + k`` on ``<n>``."""
    return ParaMap(n, n, tuple(i + k for i in range(n + 1)))


def delta(n: int, i: int) -> ParaMap:
    if n < 1 or not 0 <= i <= n:
        raise ValueError(f"delta_{i} into <{n}> is out of range")
    return ParaMap(n - 1, n, tuple(k if k < i else k + 1 for k in range(n)))


def sigma(n: int, j: int) -> ParaMap:
    if n < 0 or not 0 <= j <= n:
        raise ValueError(f"sigma_{j} onto <{n}> is out of range")
    return ParaMap(n + 1, n, tuple(k if k <= j else k - 1 for k in range(n + 2)))


def tau(n: int) -> ParaMap:
    return shift(n, -1)


def tau_inv(n: int) -> ParaMap:
    return shift(n, 1)


def extra_codegeneracy(n: int) -> ParaMap:
    """The duplex codegeneracy ``<n+1> -> <n>`` merging ``n+1`` with the next ``0``."""
    return ParaMap(n + 1, n, tuple(range(n + 2)))


_GENERATORS = {"delta": delta, "sigma": sigma}


def generator(kind: str, n: int, i: int = 0) -> ParaMap:
    """One generator.  ``kind`` is ``delta``, ``sigma``, ``tau`` or ``tau_inv``."""
    if kind in _GENERATORS:
        return _GENERATORS[kind](n, i)
    if kind == "tau":
        return tau(n)
    if kind == "tau_inv":
        return tau_inv(n)
    if kind == "sigma_extra":
        return extra_codegeneracy(n)
    raise ValueError(f"unknown generator kind {kind!r}")


def _gaps(f: ParaMap) -> list[int]:
    v = f.values
    return [v[i + 1] - v[i] for i in range(f.src)] + [v[0] + f.dst + 1 - v[-1]]


def membership(f: ParaMap, flavor: Flavor | str) -> bool:
    flavor = Flavor(flavor)
    v = f.values
    if flavor in (Flavor.LAMBDA_INFINITY, Flavor.LAMBDA):
        return True
    if flavor is Flavor.XI:
        return v[0] >= 0
    if flavor is Flavor.DELTA:
        return v[0] >= 0 and v[-1] <= f.dst
    surjective = all(g <= 1 for g in _gaps(f))
    if flavor is Flavor.LAMBDA_INFINITY_SURJ:
        return surjective
    # DeltaSurj: values cover [0, n] exactly
    return v[0] == 0 and v[-1] == f.dst and all(g <= 1 for g in _gaps(f)[:-1])


class Letter(NamedTuple):
    """A generator symbol: ``kind`` in delta/sigma/tau/tau_inv/sigma_extra.

    ``n`` follows :func:`generator`: the target for ``delta`` and ``sigma``
    (and ``sigma_extra``), the object for ``tau``/``tau_inv``.
    """

    kind: str
    n: int
    i: int = 0

    def map(self) -> ParaMap:
        return generator(self.kind, self.n, self.i)

    def __str__(self):
        if self.kind in ("tau", "tau_inv"):
            return f"{self.kind}{self.n}"
        return f"{self.kind}{self.n},{self.i}"


@dataclass(frozen=True)
class Word:
    """A composite ``letters[0] . letters[1] . ... . letters[-1]``."""

    src: int
    dst: int
    letters: tuple[Letter, ...] = ()

    def evaluate(self) -> ParaMap:
        out = identity(self.src)
        for letter in reversed(self.letters):
            out = compose(letter.map(), out)
        if out.dst != self.dst:
            raise ValueError("word does not end at its declared target")
        return out

    def __str__(self):
        return " . ".join(map(str, self.letters)) or f"id{self.src}"


def _delta_word(g: ParaMap) -> tuple[list[Letter], list[Letter]]:
    """Epi-mono factorization of a map in Delta: (injection letters, surjection letters)."""
    v = g.values
    image = set(v)
    injection = []
    level = g.dst
    for k in sorted(set(range(g.dst + 1)) - image, reverse=True):
        injection.append(Letter("delta", level, k))
        level -= 1
    # sigma_{j1} . ... . sigma_{jr} with j1 < ... < jr; the k-th letter has target p + k
    p = len(image) - 1
    repeats = [j for j in range(g.src) if v[j] == v[j + 1]]
    surjection = [Letter("sigma", p + k, j) for k, j in enumerate(repeats)]
    return injection, surjection


def factorize(f: ParaMap) -> Word:
    """A word in the generators that evaluates to ``f``.

    Shape: ``tau^a . (deltas) . (sigmas) . tau^b``.  The power ``a`` is a
    multiple of ``n + 1`` (a central full turn); ``tau^b`` rotates the source
    so that the remaining map lies in Delta.
    """
    m, n = f.src, f.dst
    turns = f.values[0] // (n + 1)
    g = compose(shift(n, -turns * (n + 1)), f)  # now 0 <= g(0) <= n
    j = next((k for k in range(m + 1) if g.values[k] > n), None)
    pre = 0
    if j is not None:
        pre = m + 1 - j  # g = h . shift(m, pre) with h in Delta
        g = compose(g, shift(m, -pre))
    injection, surjection = _delta_word(g)
    letters: list[Letter] = []
    letters += [Letter("tau_inv", n)] * (turns * (n + 1)) if turns > 0 else []
    letters += [Letter("tau", n)] * (-turns * (n + 1)) if turns < 0 else []
    letters += injection
    letters += surjection
    letters += [Letter("tau_inv", m)] * pre
    return Word(m, n, tuple(letters))


def project_to_lambda(f: ParaMap) -> tuple[ParaMap, int]:
    """Split ``f = tau_n^{(n+1) w} . f0`` with ``0 <= f0(0) <= n``; returns ``(f0, w)``."""
    n = f.dst
    w = -(f.values[0] // (n + 1))
    f0 = compose(shift(n, w * (n + 1)), f)
    return f0, w


def dual(f: ParaMap) -> ParaMap:
    """``j -> min{ i : f(i) >= j }``, a map ``<n> -> <m>``.

    Contravariant, and ``dual(dual(f))(i) == f(i - 1) + 1``.
    """
    m, n = f.src, f.dst
    out = []
    for j in range(n + 1):
        # f(i) >= j; search from a lower bound where f is certainly below j
        q = (j - f.values[-1]) // (n + 1)
        i = q * (m + 1) + m
        while f(i) >= j:
            i -= m + 1
        while f(i) < j:
            i += 1
        out.append(i)
    return ParaMap(n, m, tuple(out))


def xi_fraction(f: ParaMap) -> tuple[ParaMap, int]:
    """Write ``f = tau_n^k . g`` with ``g`` in the duplex category and ``k >= 0`` minimal.

    Every morphism of the paracyclic category is a duplex morphism followed by
    an inverse of a power of the duplex shift ``tau_inv``.
    """
    k = max(0, -f.values[0])
    return compose(shift(f.dst, k), f), k


class Relation(NamedTuple):
    name: str
    lhs: Word
    rhs: Word


def _w(src: int, dst: int, *letters: Letter) -> Word:
    return Word(src, dst, tuple(letters))


def paracyclic_relations(n_max: int) -> Iterator[Relation]:
    """Defining relations among generators whose objects are all ``<= n_max``."""
    L = Letter
    for n in range(2, n_max + 1):
        for j in range(n + 1):
            for i in range(j):
                yield Relation(f"delta{j}delta{i}@{n}",
                               _w(n - 2, n, L("delta", n, j), L("delta", n - 1, i)),
                               _w(n - 2, n, L("delta", n, i), L("delta", n - 1, j - 1)))
    for n in range(0, n_max - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                yield Relation(f"sigma{j}sigma{i}@{n}",
                               _w(n + 2, n, L("sigma", n, j), L("sigma", n + 1, i)),
                               _w(n + 2, n, L("sigma", n, i), L("sigma", n + 1, j + 1)))
    for n in range(0, n_max):
        # sigma_j: <n+1> -> <n>, delta_i: <n> -> <n+1>
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = _w(n, n, L("sigma", n, j), L("delta", n + 1, i))
                if i < j:
                    rhs = _w(n, n, L("delta", n, i), L("sigma", n - 1, j - 1))
                elif i in (j, j + 1):
                    rhs = _w(n, n)
                else:
                    rhs = _w(n, n, L("delta", n, i - 1), L("sigma", n - 1, j))
                yield Relation(f"sigma{j}delta{i}@{n}", lhs, rhs)
    for n in range(1, n_max + 1):
        for i in range(1, n + 1):
            yield Relation(f"tau.delta{i}@{n}",
                           _w(n - 1, n, L("tau", n), L("delta", n, i)),
                           _w(n - 1, n, L("delta", n, i - 1), L("tau", n - 1)))
        yield Relation(f"tau.delta0@{n}",
                       _w(n - 1, n, L("tau", n), L("delta", n, 0)),
                       _w(n - 1, n, L("delta", n, n)))
    for n in range(0, n_max):
        for i in range(1, n + 1):
            yield Relation(f"tau.sigma{i}@{n}",
                           _w(n + 1, n, L("tau", n), L("sigma", n, i)),
                           _w(n + 1, n, L("sigma", n, i - 1), L("tau", n + 1)))
        yield Relation(f"tau.sigma0@{n}",
                       _w(n + 1, n, L("tau", n), L("sigma", n, 0)),
                       _w(n + 1, n, L("sigma", n, n), L("tau", n + 1), L("tau", n + 1)))
    for n in range(0, n_max + 1):
        yield Relation(f"tau.tau_inv@{n}", _w(n, n, L("tau", n), L("tau_inv", n)), _w(n, n))


def duplex_letters(n_max: int) -> list[Letter]:
    """Generators of the duplex category between objects ``<= n_max``."""
    out = []
    for n in range(1, n_max + 1):
        out += [Letter("delta", n, i) for i in range(n + 1)]
    for n in range(0, n_max):
        out += [Letter("sigma", n, j) for j in range(n + 1)]
        out.append(Letter("sigma_extra", n))
    return out


def duplex_relations(n_max: int) -> list[Relation]:
    """All coincidences among duplex words of length <= 2 (objects ``<= n_max``).

    Words of length two that evaluate to the same map, together with those
    that collapse to an identity, generate all relations of the duplex
    category; this list is produced by evaluation rather than typed in.
    """
    letters = duplex_letters(n_max)
    maps = {l: l.map() for l in letters}
    groups: dict[ParaMap, list[Word]] = {}
    for n in range(n_max + 1):
        groups.setdefault(identity(n), []).append(Word(n, n))
    for first in letters:
        f = maps[first]
        for second in letters:
            g = maps[second]
            if g.src != f.dst:
                continue
            h = compose(g, f)
            groups.setdefault(h, []).append(Word(f.src, g.dst, (second, first)))
    out = []
    for h, words in groups.items():
        if len(words) < 2:
            continue
        base = words[0]
        for other in words[1:]:
            out.append(Relation(f"{base}={other}", base, other))
    return out
