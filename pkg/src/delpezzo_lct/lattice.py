"""Exact Picard-lattice arithmetic for del Pezzo surfaces.

A surface is presented by an integer basis of its divisor class lattice:
either the blow-up basis (H, E_1, ..., E_r) of a plane model, with
intersection form diag(1, -1, ..., -1) and canonical class
K = -3H + E_1 + ... + E_r, or the two-ruling basis (f_1, f_2) of a smooth
quadric with form [[0, 1], [1, 0]] and K = (-2, -2).

Everything is exact: classes are integer vectors, pairings are integers,
genera are `fractions.Fraction` values.  All values are immutable and every
operation is a pure function, so the module is safe for concurrent use.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import isqrt
from typing import Sequence

BLOWUP = "blowup"
QUADRIC = "quadric"


class LatticeError(ValueError):
    """Invalid surface parameters or mismatched lattice operands."""


@dataclass(frozen=True)
class SurfaceModel:
    """A rational surface presented by a basis of its divisor lattice.

    ``degree`` is the self-intersection of the canonical class.  Del Pezzo
    surfaces have degree 1..9; degree 0 is additionally admitted so that a
    degree-1 surface can still be blown up (``blow_up``), which the
    resolution engine needs.  Use :func:`make_surface` for user input.
    """

    degree: int
    basis_kind: str = BLOWUP

    def __post_init__(self) -> None:
        if self.basis_kind == QUADRIC:
            if self.degree != 8:
                raise LatticeError("quadric basis requires degree 8")
        elif self.basis_kind == BLOWUP:
            if not 0 <= self.degree <= 9:
                raise LatticeError(f"degree must be in 0..9, got {self.degree}")
        else:
            raise LatticeError(f"unknown basis kind {self.basis_kind!r}")

    @cached_property
    def rank(self) -> int:
        return 2 if self.basis_kind == QUADRIC else 10 - self.degree

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        if self.basis_kind == QUADRIC:
            return ((0, 1), (1, 0))
        n = self.rank
        return tuple(
            tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n))
            for i in range(n)
        )

    @cached_property
    def canonical(self) -> "DivisorClass":
        if self.basis_kind == QUADRIC:
            return DivisorClass(self, (-2, -2))
        return DivisorClass(self, (-3,) + (1,) * (self.rank - 1))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def basis_class(self, index: int) -> "DivisorClass":
        coeffs = [0] * self.rank
        coeffs[index] = 1
        return DivisorClass(self, tuple(coeffs))

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        if self.basis_kind == QUADRIC:
            return a[0] * b[1] + a[1] * b[0]
        return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))

    def blow_up(self) -> "SurfaceModel":
        """The lattice of the blow-up at one point: one more E column."""
        if self.basis_kind != BLOWUP:
            raise LatticeError("only blow-up basis surfaces can be blown up")
        if self.degree == 0:
            raise LatticeError("refusing to blow up below degree 0")
        return SurfaceModel(self.degree - 1, BLOWUP)


@dataclass(frozen=True)
class DivisorClass:
    """An integer divisor class in the basis carried by ``surface``."""

    surface: SurfaceModel
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.surface.rank:
            raise LatticeError(
                f"expected {self.surface.rank} coefficients, got {len(coeffs)}"
            )

    def _require_same_surface(self, other: "DivisorClass") -> None:
        if self.surface != other.surface:
            raise LatticeError("classes live on different surface models")

    def dot(self, other: "DivisorClass") -> int:
        self._require_same_surface(other)
        return self.surface.pairing(self.coeffs, other.coeffs)

    @property
    def self_intersection(self) -> int:
        return self.dot(self)

    @property
    def degree(self) -> int:
        """Anticanonical degree -K.C."""
        return -self.surface.canonical.dot(self)

    @property
    def genus(self) -> Fraction:
        """Arithmetic genus 1 + (C.C + K.C)/2; rational for odd parities."""
        k_dot = self.surface.canonical.dot(self)
        return 1 + Fraction(self.self_intersection + k_dot, 2)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._require_same_surface(other)
        return DivisorClass(
            self.surface, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._require_same_surface(other)
        return DivisorClass(
            self.surface, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.surface, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar: int) -> "DivisorClass":
        if not isinstance(scalar, int):
            return NotImplemented
        return DivisorClass(self.surface, tuple(scalar * a for a in self.coeffs))

    def __repr__(self) -> str:
        return f"DivisorClass{self.coeffs}"


def make_surface(degree: int, basis_kind: str = BLOWUP) -> SurfaceModel:
    """Construct a del Pezzo surface model; degree 1..9, quadric only at 8."""
    if not isinstance(degree, int) or not 1 <= degree <= 9:
        raise LatticeError(f"degree must be an integer in 1..9, got {degree!r}")
    return SurfaceModel(degree, basis_kind)


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    return a.dot(b)


def degree_of(c: DivisorClass) -> int:
    return c.degree


def arithmetic_genus(c: DivisorClass) -> Fraction:
    return c.genus


def _floor_div(a: int, b: int) -> int:
    return a // b


def _vectors_with_sum_and_square(r: int, total: int, square: int) -> list[tuple[int, ...]]:
    """All integer vectors of length r with given sum and sum of squares.

    Depth-first search; a partial assignment is pruned when the remaining
    coordinates cannot satisfy Cauchy-Schwarz, (sum left)^2 <= (#left)*(square left).
    """
    if square < 0:
        return []
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def rec(idx: int, s: int, q: int) -> None:
        left = r - idx
        if left == 0:
            if s == 0 and q == 0:
                out.append(tuple(prefix))
            return
        if s * s > left * q:
            return
        bound = isqrt(q)
        for c in range(-bound, bound + 1):
            q2 = q - c * c
            if q2 < 0:
                continue
            prefix.append(c)
            rec(idx + 1, s - c, q2)
            prefix.pop()

    rec(0, total, square)
    return out


def _blowup_classes(surface: SurfaceModel, deg: int, self_int: int) -> list[DivisorClass]:
    r = surface.rank - 1
    d = surface.degree  # = 9 - r
    if r == 0:
        # P^2: the single coordinate a must satisfy 3a = deg and a^2 = self_int.
        if deg % 3 == 0 and (deg // 3) ** 2 == self_int:
            return [DivisorClass(surface, (deg // 3,))]
        return []
    # Finiteness bound.  Writing c = (a, c_1, ..., c_r), the constraints read
    #   3a + sum(c_i) = deg   and   a^2 - sum(c_i^2) = self_int.
    # Cauchy-Schwarz gives (sum c_i)^2 <= r * sum(c_i^2), i.e.
    #   (deg - 3a)^2 <= r * (a^2 - self_int),
    # a quadratic inequality in `a` with positive leading coefficient
    # 9 - r = K^2 > 0, so `a` ranges over a finite interval and each c_i over
    # |c_i| <= sqrt(a^2 - self_int).
    disc = 36 * deg * deg - 4 * d * (deg * deg + r * self_int)
    if disc < 0:
        return []
    sq = isqrt(disc)
    lo = _floor_div(6 * deg - sq, 2 * d) - 1
    hi = _floor_div(6 * deg + sq, 2 * d) + 2
    found = []
    for a in range(lo, hi + 1):
        if d * a * a - 6 * deg * a + (deg * deg + r * self_int) > 0:
            continue
        square = a * a - self_int
        if square < 0:
            continue
        for tail in _vectors_with_sum_and_square(r, deg - 3 * a, square):
            found.append(DivisorClass(surface, (a,) + tail))
    return found


def _quadric_classes(surface: SurfaceModel, deg: int, self_int: int) -> list[DivisorClass]:
    # deg = 2(c_1 + c_2) and self = 2 c_1 c_2: solve the symmetric system.
    if deg % 2 or self_int % 2:
        return []
    s, p = deg // 2, self_int // 2
    disc = s * s - 4 * p
    if disc < 0:
        return []
    t = isqrt(disc)
    if t * t != disc or (s + t) % 2:
        return []
    c1 = (s + t) // 2
    sols = {(c1, s - c1), (s - c1, c1)}
    return [DivisorClass(surface, pair) for pair in sols]


def enumerate_classes(surface: SurfaceModel, deg: int, self_int: int) -> list[DivisorClass]:
    """All classes with -K.c = deg, c.c = self_int and arithmetic genus 0.

    The genus condition is determined by (deg, self_int); incompatible pairs
    yield an empty list.  Output is duplicate-free and sorted
    lexicographically on coefficient vectors (the canonical order).
    """
    if deg < 1:
        raise LatticeError(f"anticanonical degree must be >= 1, got {deg}")
    if 2 + self_int - deg != 0:  # p_a = 1 + (self_int - deg)/2
        return []
    if surface.basis_kind == QUADRIC:
        found = _quadric_classes(surface, deg, self_int)
    else:
        found = _blowup_classes(surface, deg, self_int)
    return sorted(set(found), key=lambda c: c.coeffs)


def line_intersection_matrix(surface: SurfaceModel) -> tuple[tuple[int, ...], ...]:
    """Pairwise intersection numbers of the (-1)-classes, canonical order."""
    if surface.basis_kind != BLOWUP or surface.degree > 7:
        raise LatticeError("line intersection matrix requires blow-up basis of degree <= 7")
    lines = enumerate_classes(surface, 1, -1)
    return tuple(tuple(a.dot(b) for b in lines) for a in lines)


def _matmul(a: tuple[tuple[int, ...], ...], b: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _matvec(m: tuple[tuple[int, ...], ...], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


@dataclass(frozen=True)
class LatticeIsometry:
    """An integer lattice map preserving the form and fixing K.

    The matrix acts on coefficient column vectors.  Construction verifies
    M^T G M = G and M.K = K exactly.
    """

    surface: SurfaceModel
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = self.surface.rank
        if len(m) != n or any(len(row) != n for row in m):
            raise LatticeError("isometry matrix size does not match lattice rank")
        gram = self.surface.gram
        mt = tuple(zip(*m))
        if _matmul(_matmul(mt, gram), m) != gram:
            raise LatticeError("matrix does not preserve the intersection form")
        k = self.surface.canonical.coeffs
        if _matvec(m, k) != k:
            raise LatticeError("matrix does not fix the canonical class")

    def apply(self, c: DivisorClass) -> DivisorClass:
        if c.surface != self.surface:
            raise LatticeError("class does not live on the isometry's surface")
        return DivisorClass(self.surface, _matvec(self.matrix, c.coeffs))

    def compose(self, other: "LatticeIsometry") -> "LatticeIsometry":
        """self after other (matrix product self.matrix @ other.matrix)."""
        if other.surface != self.surface:
            raise LatticeError("isometries live on different surfaces")
        return LatticeIsometry(self.surface, _matmul(self.matrix, other.matrix))

    @classmethod
    def identity(cls, surface: SurfaceModel) -> "LatticeIsometry":
        n = surface.rank
        return cls(surface, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def permutation(cls, surface: SurfaceModel, mapping: dict[int, int]) -> "LatticeIsometry":
        """Permutation of the exceptional basis vectors E_i (1-based indices)."""
        if surface.basis_kind != BLOWUP:
            raise LatticeError("permutations act on blow-up bases only")
        n = surface.rank
        perm = list(range(n))
        for src, dst in mapping.items():
            perm[src] = dst
        cols = []
        for j in range(n):
            col = [0] * n
            col[perm[j]] = 1
            cols.append(col)
        return cls(surface, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))

    @classmethod
    def cremona(cls, surface: SurfaceModel, i: int, j: int, k: int) -> "LatticeIsometry":
        """Reflection in v = H - E_i - E_j - E_k (a (-2)-vector): c -> c + (c.v) v."""
        if surface.basis_kind != BLOWUP:
            raise LatticeError("Cremona reflections act on blow-up bases only")
        n = surface.rank
        if len({i, j, k}) != 3 or not all(1 <= t <= n - 1 for t in (i, j, k)):
            raise LatticeError("Cremona indices must be three distinct E-indices")
        v = [0] * n
        v[0] = 1
        v[i] = v[j] = v[k] = -1
        cols = []
        for b in range(n):
            e = [0] * n
            e[b] = 1
            pairing = surface.pairing(e, v)
            cols.append([e[t] + pairing * v[t] for t in range(n)])
        return cls(surface, tuple(tuple(cols[j2][i2] for j2 in range(n)) for i2 in range(n)))


@lru_cache(maxsize=None)
def _isometry_generators(surface: SurfaceModel) -> tuple[LatticeIsometry, ...]:
    """Transpositions of E-indices plus all Cremona reflections.

    These generate every form-preserving, K-fixing isometry of the blow-up
    lattice (the Weyl group of the orthogonal complement of K).
    """
    r = surface.rank - 1
    gens = []
    for a, b in itertools.combinations(range(1, r + 1), 2):
        gens.append(LatticeIsometry.permutation(surface, {a: b, b: a}))
    for a, b, c in itertools.combinations(range(1, r + 1), 3):
        gens.append(LatticeIsometry.cremona(surface, a, b, c))
    return tuple(gens)


def find_model_isometry(
    surface: SurfaceModel,
    targets: Sequence[tuple[DivisorClass, DivisorClass]],
    max_states: int = 500_000,
) -> LatticeIsometry:
    """A K-fixing lattice isometry sending each source class to its target.

    Searches the orbit of the source tuple under the generator set
    breadth-first, so the returned word is shortest.  Raises LatticeError
    when the pairing invariants already rule an isometry out or when the
    (finite) orbit is exhausted without a hit.
    """
    if surface.basis_kind != BLOWUP:
        raise LatticeError("model isometries are only defined for blow-up bases")
    sources = tuple(src for src, _ in targets)
    goals = tuple(dst for _, dst in targets)
    for c in itertools.chain(sources, goals):
        if c.surface != surface:
            raise LatticeError("target classes live on a different surface")
    for (s1, g1), (s2, g2) in itertools.product(targets, repeat=2):
        if s1.dot(s2) != g1.dot(g2):
            raise LatticeError(
                "no isometry exists: intersection numbers are invariants "
                f"({s1.coeffs}.{s2.coeffs} = {s1.dot(s2)} but "
                f"{g1.coeffs}.{g2.coeffs} = {g1.dot(g2)})"
            )
    for s, g in targets:
        if s.degree != g.degree:
            raise LatticeError("no isometry exists: anticanonical degree is an invariant")

    identity = LatticeIsometry.identity(surface)
    start = tuple(c.coeffs for c in sources)
    goal = tuple(c.coeffs for c in goals)
    if start == goal:
        return identity
    gens = _isometry_generators(surface)
    seen = {start}
    queue = deque([(start, identity)])
    while queue:
        state, iso = queue.popleft()
        for g in gens:
            new_state = tuple(_matvec(g.matrix, vec) for vec in state)
            if new_state in seen:
                continue
            new_iso = g.compose(iso)
            if new_state == goal:
                return new_iso
            seen.add(new_state)
            queue.append((new_state, new_iso))
            if len(seen) > max_states:
                raise LatticeError("isometry search exceeded the state budget")
    raise LatticeError("no isometry maps the given sources to the given targets")


def apply_isometry(m: LatticeIsometry, c: DivisorClass) -> DivisorClass:
    return m.apply(c)
