"""Classical character oracles: root multiplicities, Freudenthal, Weyl dimension.

Everything here works with integers and Fractions only, so agreement with
the module construction (which runs on rational functions) is a genuine
cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .cartan import CartanData, Weight, is_dominant


class DepthExceeded(ValueError):
    pass


class NotFiniteType(ValueError):
    pass


class NotDominant(ValueError):
    pass


def _vectors_of_height(rank: int, h: int):
    """All nonnegative integer vectors of the given rank summing to h."""
    if rank == 1:
        yield (h,)
        return
    for first in range(h, -1, -1):
        for rest in _vectors_of_height(rank - 1, h - first):
            yield (first,) + rest


def real_positive_roots(cd: CartanData, max_height: Optional[int] = None) -> set[tuple[int, ...]]:
    """Positive real roots by closure of the simple roots under simple reflections."""
    n = cd.rank
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                p = sum(cd.C[i][j] * beta[j] for j in range(n))
                gamma = tuple(b - (p if k == i else 0) for k, b in enumerate(beta))
                if all(x >= 0 for x in gamma) and any(gamma) and gamma not in roots:
                    if max_height is not None and sum(gamma) > max_height:
                        continue
                    roots.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
        if max_height is None and len(roots) > 10000:
            raise NotFiniteType("reflection closure does not terminate")
    return roots


class RootMultiplicities:
    """Positive-root multiplicities up to a height window (Peterson recursion)."""

    def __init__(self, cd: CartanData, max_height: int):
        self.cd = cd
        self.max_height = max_height
        n = cd.rank
        self._c: dict[tuple[int, ...], Fraction] = {}
        self.mult: dict[tuple[int, ...], int] = {}
        for h in range(1, max_height + 1):
            for beta in _vectors_of_height(n, h):
                self._compute(beta)

    def _form(self, a, b) -> int:
        return self.cd.root_form(a, b)

    def _compute(self, beta):
        cd = self.cd
        n = cd.rank
        h = sum(beta)
        if h == 1:
            self._c[beta] = Fraction(1)
            self.mult[beta] = 1
            return
        lhs = self._form(beta, beta) - 2 * sum(beta[i] * cd.s[i] for i in range(n))
        rhs = Fraction(0)
        for b1 in product(*(range(x + 1) for x in beta)):
            s1 = sum(b1)
            if s1 == 0 or s1 == h:
                continue
            b2 = tuple(x - y for x, y in zip(beta, b1))
            c1, c2 = self._c.get(b1, 0), self._c.get(b2, 0)
            if c1 and c2:
                rhs += self._form(b1, b2) * c1 * c2
        if lhs == 0:
            if rhs != 0:
                raise ArithmeticError(f"Peterson recursion degenerate at {beta}")
            c = Fraction(0)
        else:
            c = rhs / lhs
        self._c[beta] = c
        # c_beta = sum_{n >= 1} mult(beta/n)/n
        m = c
        for k in range(2, h + 1):
            if all(x % k == 0 for x in beta):
                m -= Fraction(self.mult.get(tuple(x // k for x in beta), 0), k)
        if m.denominator != 1 or m < 0:
            raise ArithmeticError(f"non-integral root multiplicity {m} at {beta}")
        self.mult[beta] = int(m)

    def positive_roots(self) -> dict[tuple[int, ...], int]:
        return {b: m for b, m in self.mult.items() if m}


@dataclass
class CharacterTable:
    """Weight multiplicities; complete for weights whose depth height is at most ``window``."""

    table: dict[Weight, int] = field(default_factory=dict)
    window: Optional[int] = None

    def total(self) -> int:
        return sum(self.table.values())

    def by_depth(self) -> dict[tuple[int, ...], int]:
        return {w.depth: m for w, m in self.table.items()}


def _height(nu) -> int:
    return sum(nu)


class Freudenthal:
    """Memoized Freudenthal recursion for L(lam), indexed by depth nu (weight lam - nu)."""

    def __init__(self, cd: CartanData, lam: Weight, depth: int):
        if not is_dominant(lam):
            raise NotDominant(f"{lam} is not dominant")
        self.cd = cd
        self.lam = lam
        self.depth = depth
        if cd.is_finite_type():
            self.roots = {a: 1 for a in real_positive_roots(cd) if sum(a) <= max(depth, 1)}
        else:
            self.roots = RootMultiplicities(cd, max(depth, 1)).positive_roots()
        self._memo: dict[tuple[int, ...], int] = {}

    def mult(self, nu: tuple[int, ...]) -> int:
        if any(x < 0 for x in nu):
            return 0
        if _height(nu) > self.depth:
            raise DepthExceeded(f"height {_height(nu)} beyond window {self.depth}")
        if nu in self._memo:
            return self._memo[nu]
        cd = self.cd
        if not any(nu):
            self._memo[nu] = 1
            return 1
        lam_rho = Weight(tuple(x + 1 for x in self.lam.coords))
        lhs = 2 * cd.root_pairing(nu, lam_rho) - cd.root_form(nu, nu)
        rhs = 0
        for alpha, m_alpha in self.roots.items():
            if any(a > b for a, b in zip(alpha, nu)):
                continue
            lam_alpha = cd.root_pairing(alpha, self.lam)
            k = 1
            while True:
                rest = tuple(b - k * a for a, b in zip(alpha, nu))
                if any(x < 0 for x in rest):
                    break
                m = self.mult(rest)
                if m:
                    # (mu + k alpha | alpha) with mu + k alpha = lam - rest
                    rhs += m_alpha * m * (lam_alpha - cd.root_form(rest, alpha))
                k += 1
        rhs *= 2
        if lhs == 0:
            val = 0
        else:
            q = Fraction(rhs, lhs)
            if q.denominator != 1 or q < 0:
                raise ArithmeticError(f"Freudenthal produced {q} at depth {nu}")
            val = int(q)
        self._memo[nu] = val
        return val

    def character(self) -> CharacterTable:
        n = self.cd.rank
        table = {}
        for h in range(self.depth + 1):
            for nu in _vectors_of_height(n, h):
                m = self.mult(nu)
                if m:
                    table[self.cd.lower(self.lam, nu)] = m
        return CharacterTable(table, self.depth)


def freudenthal_multiplicity(cd: CartanData, lam: Weight, mu: Weight | tuple, depth: int) -> int:
    """Multiplicity of mu in L(lam); mu is a Weight carrying its depth, or the depth tuple itself."""
    nu = mu.depth if isinstance(mu, Weight) else tuple(mu)
    if nu is None:
        raise ValueError("weight must carry its depth below lam")
    return Freudenthal(cd, lam, depth).mult(tuple(nu))


def full_character(cd: CartanData, lam: Weight, depth: Optional[int] = None) -> CharacterTable:
    """Character within a depth window; for finite type with ``depth=None``, the whole character."""
    if depth is not None:
        return Freudenthal(cd, lam, depth).character()
    if not cd.is_finite_type():
        raise NotFiniteType("an explicit depth is required outside finite type")
    # the lowest weight w0(lam) has depth at most the height bound below
    bound = _height_bound(cd, lam)
    table = Freudenthal(cd, lam, bound).character().table
    return CharacterTable(table, None)  # complete, so no truncation window


def _height_bound(cd: CartanData, lam: Weight) -> int:
    """Height of lam - w0 lam for finite type."""
    # ht(lam - w0 lam) = <lam, 2 rho^vee> = sum over positive roots of <lam, alpha^vee>
    total = Fraction(0)
    for alpha in real_positive_roots(cd):
        total += Fraction(2 * cd.root_pairing(alpha, lam), cd.root_form(alpha, alpha))
    return int(total)


def weyl_dim(cd: CartanData, lam: Weight) -> int:
    if not cd.is_finite_type():
        raise NotFiniteType("Weyl dimension formula needs a finite-type datum")
    if not is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    lam_rho = Weight(tuple(x + 1 for x in lam.coords))
    rho = Weight((1,) * cd.rank)
    out = Fraction(1)
    for alpha in real_positive_roots(cd):
        out *= Fraction(cd.root_pairing(alpha, lam_rho), cd.root_pairing(alpha, rho))
    assert out.denominator == 1
    return int(out)


def char_convolve(c1: CharacterTable, c2: CharacterTable) -> CharacterTable:
    out: dict[Weight, int] = {}
    for w1, m1 in c1.table.items():
        for w2, m2 in c2.table.items():
            w = w1 + w2
            out[w] = out.get(w, 0) + m1 * m2
    windows = [w for w in (c1.window, c2.window) if w is not None]
    window = min(windows) if windows else None
    if window is not None:
        out = {w: m for w, m in out.items() if w.depth is None or sum(w.depth) <= window}
    return CharacterTable(out, window)
