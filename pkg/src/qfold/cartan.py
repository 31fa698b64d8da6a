"""Symmetrizable generalized Cartan matrices, weights and pairings."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Optional, Sequence


class NotGCM(ValueError):
    pass


class NotSymmetrizable(ValueError):
    pass


class SingularForm(ValueError):
    """The symmetric form on weights needs an invertible Cartan matrix."""


def _frac_inverse(m: list[list[int]]) -> Optional[list[list[Fraction]]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(r == c)) for c in range(n)] for r, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _leading_minors_positive(m: list[list[int]]) -> bool:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    # Gaussian elimination without pivoting: all pivots positive iff positive definite
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for r in range(k + 1, n):
            f = a[r][k] / a[k][k]
            for c in range(k, n):
                a[r][c] -= f * a[k][c]
    return True


@dataclass(frozen=True)
class CartanData:
    C: tuple[tuple[int, ...], ...]
    s: tuple[int, ...]
    labels: tuple[str, ...] = ()

    B: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    d: int = field(init=False)
    fund_form: Optional[tuple[tuple[Fraction, ...], ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.C)
        B = tuple(tuple(self.s[i] * self.C[i][j] for j in range(n)) for i in range(n))
        object.__setattr__(self, "B", B)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(n)))
        inv = _frac_inverse([list(r) for r in self.C])
        if inv is None:
            object.__setattr__(self, "fund_form", None)
            object.__setattr__(self, "d", 1)
        else:
            ff = tuple(tuple(self.s[i] * inv[i][j] for j in range(n)) for i in range(n))
            object.__setattr__(self, "fund_form", ff)
            den = reduce(lcm, (x.denominator for row in ff for x in row), 1)
            object.__setattr__(self, "d", den)

    @property
    def rank(self) -> int:
        return len(self.C)

    @property
    def indices(self) -> range:
        return range(len(self.C))

    def is_finite_type(self) -> bool:
        return _leading_minors_positive([list(r) for r in self.B])

    # weights ---------------------------------------------------------------
    def weight(self, coords: Sequence[int]) -> "Weight":
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return Weight(tuple(int(x) for x in coords))

    def fundamental(self, i: int) -> "Weight":
        return Weight(tuple(int(k == i) for k in self.indices))

    def simple_root(self, i: int) -> "Weight":
        return Weight(tuple(self.C[k][i] for k in self.indices), tuple(-int(k == i) for k in self.indices))

    def root_coords(self, nu: Sequence[int]) -> tuple[int, ...]:
        """Pairing coordinates of sum nu_j alpha_j."""
        return tuple(sum(self.C[i][j] * nu[j] for j in self.indices) for i in self.indices)

    def lower(self, lam: "Weight", nu: Sequence[int]) -> "Weight":
        """The weight lam - sum nu_j alpha_j, remembering nu."""
        rc = self.root_coords(nu)
        base = lam.depth or (0,) * self.rank
        return Weight(
            tuple(a - b for a, b in zip(lam.coords, rc)),
            tuple(a + b for a, b in zip(base, nu)),
        )

    def root_form(self, nu: Sequence[int], mu: Sequence[int]) -> int:
        """(sum nu_i alpha_i, sum mu_j alpha_j) = nu^T B mu."""
        return sum(nu[i] * self.B[i][j] * mu[j] for i in self.indices for j in self.indices if nu[i] and mu[j])

    def root_pairing(self, nu: Sequence[int], lam: "Weight") -> int:
        """(sum nu_i alpha_i, lam) = sum nu_i s_i <i, lam>."""
        return sum(nu[i] * self.s[i] * lam.coords[i] for i in self.indices)


@dataclass(frozen=True, order=True)
class Weight:
    """A weight in pairing coordinates ``coords[i] = <i, weight>``.

    ``depth`` optionally records nu when the weight was produced as
    lam - sum nu_i alpha_i; it keeps weights apart in non-finite type,
    where pairings alone do not determine the weight.
    """

    coords: tuple[int, ...]
    depth: Optional[tuple[int, ...]] = None

    def __add__(self, other: "Weight") -> "Weight":
        dep = None
        if self.depth is not None or other.depth is not None:
            a = self.depth or (0,) * len(self.coords)
            b = other.depth or (0,) * len(self.coords)
            dep = tuple(x + y for x, y in zip(a, b))
        return Weight(tuple(x + y for x, y in zip(self.coords, other.coords)), dep)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-x for x in self.coords), None if self.depth is None else tuple(-x for x in self.depth))

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * x for x in self.coords), None if self.depth is None else tuple(k * x for x in self.depth))

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.coords) + ")"


def pairing(i: int, mu: Weight) -> int:
    return mu.coords[i]


def sym_form(cd: CartanData, lam: Weight, mu: Weight) -> Fraction:
    if len(lam.coords) != cd.rank or len(mu.coords) != cd.rank:
        raise ValueError("weight dimension does not match the Cartan datum")
    if cd.fund_form is None:
        raise SingularForm("Cartan matrix is singular; only root-lattice pairings are defined")
    ff = cd.fund_form
    return sum(
        (lam.coords[i] * mu.coords[j] * ff[i][j] for i in cd.indices for j in cd.indices),
        Fraction(0),
    )


def is_dominant(lam: Weight) -> bool:
    return all(x >= 0 for x in lam.coords)


def _components(C) -> list[list[int]]:
    n = len(C)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        comp, stack = [], [start]
        seen[start] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and C[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def minimal_symmetrizer(C) -> tuple[int, ...]:
    n = len(C)
    s: list[Optional[Fraction]] = [None] * n
    for comp in _components(C):
        root = comp[0]
        s[root] = Fraction(1)
        stack = [root]
        while stack:
            i = stack.pop()
            for j in comp:
                if j != i and C[i][j] != 0 and s[j] is None:
                    # s_i c_ij = s_j c_ji
                    s[j] = s[i] * C[i][j] / C[j][i]
                    stack.append(j)
        den = reduce(lcm, (s[i].denominator for i in comp), 1)
        ints = [int(s[i] * den) for i in comp]
        g = reduce(gcd, ints)
        for i, x in zip(comp, ints):
            s[i] = Fraction(x // g)
    out = tuple(int(x) for x in s)
    for i in range(n):
        for j in range(n):
            if out[i] * C[i][j] != out[j] * C[j][i]:
                raise NotSymmetrizable(f"s_i c_ij = s_j c_ji fails at ({i},{j})")
    return out


def validate_cartan(C: Sequence[Sequence[int]], s: Optional[Sequence[int]] = None, labels=()) -> CartanData:
    n = len(C)
    if n == 0 or any(len(r) != n for r in C):
        raise NotGCM("Cartan matrix must be square and nonempty")
    M = tuple(tuple(int(x) for x in r) for r in C)
    for i in range(n):
        if M[i][i] != 2:
            raise NotGCM(f"diagonal entry c_{i}{i} = {M[i][i]} is not 2")
        for j in range(n):
            if i != j:
                if M[i][j] > 0:
                    raise NotGCM(f"off-diagonal entry c_{i}{j} = {M[i][j]} is positive")
                if (M[i][j] == 0) != (M[j][i] == 0):
                    raise NotGCM(f"c_{i}{j} and c_{j}{i} must vanish together")
    if s is None:
        sym = minimal_symmetrizer(M)
    else:
        sym = tuple(int(x) for x in s)
        if len(sym) != n or any(x <= 0 for x in sym):
            raise NotSymmetrizable("symmetrizers must be positive, one per index")
        for i in range(n):
            for j in range(n):
                if sym[i] * M[i][j] != sym[j] * M[j][i]:
                    raise NotSymmetrizable(f"given s does not symmetrize at ({i},{j})")
    return CartanData(M, sym, tuple(labels))


# named data used across tests, scripts and configs
NAMED = {
    "A1": ([[2]], None),
    "A2": ([[2, -1], [-1, 2]], None),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], None),
    "B3": ([[2, -1, 0], [-1, 2, -1], [0, -2, 2]], None),
    "C2": ([[2, -1], [-2, 2]], None),
    "G2": ([[2, -1], [-3, 2]], None),
    "D4": ([[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]], None),
    "A1~": ([[2, -2], [-2, 2]], None),
}


def named(name: str) -> CartanData:
    C, s = NAMED[name]
    return validate_cartan(C, s)
