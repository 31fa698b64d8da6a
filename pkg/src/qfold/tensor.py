"""Tensor products through the coproduct, the quasi-R-matrix, Psi, braidings and Yang-Baxter.

Coproduct (tag ``COPRODUCT``)::

    Delta(E_i) = E_i (x) 1 + K~_i (x) E_i
    Delta(F_i) = F_i (x) K~_-i + 1 (x) F_i
    Delta(K)   = K (x) K

Operators on an N-fold product are stored blockwise.  A *component* is a
tuple of factor depths ``(nu_1, ..., nu_N)``; the basis of a component is
the Kronecker product of the factor bases, first factor most significant.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Optional, Sequence

from .arith import RatFunc
from .cartan import CartanData, Weight, sym_form
from .linalg import Mat, kron, one, rank, zero
from .module import Depth, HWModule

COPRODUCT = "E(x)1+K(x)E / F(x)K^-1+1(x)F"
BRAIDING = "Theta_21 . Pi . swap"

Comp = tuple[Depth, ...]


class CartanMismatch(ValueError):
    pass


class Underdetermined(ArithmeticError):
    pass


class Inconsistent(ArithmeticError):
    pass


def _add(nu: Depth, i: int, k: int = 1) -> Depth:
    return tuple(x + k if j == i else x for j, x in enumerate(nu))


def _vsum(vs: Sequence[Depth]) -> Depth:
    return tuple(sum(x) for x in zip(*vs))


class TensorSpace:
    """Weight-graded product basis of M_1 (x) ... (x) M_N."""

    def __init__(self, factors: Sequence[HWModule]):
        if not factors:
            raise ValueError("need at least one factor")
        cd = factors[0].cd
        for M in factors:
            if M.cd != cd:
                raise CartanMismatch("factors are built over different Cartan data")
            if not M.complete:
                raise ValueError("tensor products need complete (finite) factor modules")
        self.factors = list(factors)
        self.cd = cd
        self.d = cd.d
        comps: dict[Depth, list[Comp]] = {}
        for comp in product(*(sorted(M.spaces) for M in factors)):
            comps.setdefault(_vsum(comp), []).append(tuple(comp))
        self.comps = {nu: sorted(cs) for nu, cs in sorted(comps.items(), key=lambda kv: (sum(kv[0]), kv[0]))}
        self.offsets: dict[Depth, dict[Comp, int]] = {}
        for nu, cs in self.comps.items():
            off, table = 0, {}
            for c in cs:
                table[c] = off
                off += self.comp_dim(c)
            self.offsets[nu] = table

    @property
    def lam(self) -> Weight:
        out = self.factors[0].lam
        for M in self.factors[1:]:
            out = out + M.lam
        return out

    def comp_dim(self, comp: Comp) -> int:
        n = 1
        for M, c in zip(self.factors, comp):
            n *= M.spaces[c].dim
        return n

    def weights(self) -> list[Depth]:
        return list(self.comps)

    def dim(self, nu: Depth) -> int:
        return sum(self.comp_dim(c) for c in self.comps.get(nu, ()))

    def total_dim(self) -> int:
        return sum(self.dim(nu) for nu in self.comps)

    def all_comps(self):
        for cs in self.comps.values():
            yield from cs

    def has(self, comp: Comp) -> bool:
        return all(c in M.spaces for M, c in zip(self.factors, comp))

    def pair(self, i: int, nu: Depth) -> int:
        """<i, weight> for the total depth nu."""
        lam = self.lam
        return lam.coords[i] - sum(self.cd.C[i][j] * nu[j] for j in self.cd.indices)

    def weight_of(self, nu: Depth) -> Weight:
        return self.cd.lower(self.lam, nu)

    def character(self) -> dict[Weight, int]:
        return {self.weight_of(nu): self.dim(nu) for nu in self.comps}


@dataclass
class GradedOperator:
    """Blockwise operator ``src -> tgt``; ``blocks[(tgt_comp, src_comp)]`` is a Mat, absent blocks are zero."""

    src: TensorSpace
    tgt: TensorSpace
    blocks: dict = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.src.d

    @classmethod
    def identity(cls, space: TensorSpace) -> "GradedOperator":
        return cls(space, space, {(c, c): Mat.identity(space.comp_dim(c), space.d) for c in space.all_comps()})

    def _acc(self, key, m: Mat):
        if key in self.blocks:
            self.blocks[key] = self.blocks[key] + m
        else:
            self.blocks[key] = m

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        if other.tgt is not self.src:
            raise ValueError("composition across different spaces")
        by_src: dict = {}
        for (t, s), m in self.blocks.items():
            by_src.setdefault(s, []).append((t, m))
        out = GradedOperator(other.src, self.tgt)
        for (mid, s), m2 in other.blocks.items():
            for t, m1 in by_src.get(mid, ()):
                out._acc((t, s), m1 @ m2)
        return out

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        out = GradedOperator(self.src, self.tgt, dict(self.blocks))
        for k, m in other.blocks.items():
            out._acc(k, m)
        return out

    def __neg__(self) -> "GradedOperator":
        return GradedOperator(self.src, self.tgt, {k: -m for k, m in self.blocks.items()})

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return self + (-other)

    def scale(self, c: RatFunc) -> "GradedOperator":
        return GradedOperator(self.src, self.tgt, {k: m.scale(c) for k, m in self.blocks.items()})

    def bar(self) -> "GradedOperator":
        return GradedOperator(self.src, self.tgt, {k: m.bar() for k, m in self.blocks.items()})

    def first_difference(self, other: "GradedOperator") -> Optional[dict]:
        """None when equal, else the first differing block and entry."""
        keys = sorted(set(self.blocks) | set(other.blocks))
        for k in keys:
            a = self.blocks.get(k)
            b = other.blocks.get(k)
            if a is None and b is None:
                continue
            if a is None:
                a = Mat.zeros(b.rows, b.cols, b.d)
            if b is None:
                b = Mat.zeros(a.rows, a.cols, a.d)
            diff = a.first_difference(b)
            if diff is not None:
                return {"target": [list(x) for x in k[0]], "source": [list(x) for x in k[1]], "entry": list(diff)}
        return None

    def __eq__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return self.first_difference(other) is None

    def weight_block(self, tnu: Depth, snu: Depth) -> Mat:
        """Assemble the full matrix between total weight spaces."""
        rows, cols = self.tgt.dim(tnu), self.src.dim(snu)
        out = Mat.zeros(rows, cols, self.d)
        toff = self.tgt.offsets.get(tnu, {})
        soff = self.src.offsets.get(snu, {})
        for (t, s), m in self.blocks.items():
            if t in toff and s in soff:
                r0, c0 = toff[t], soff[s]
                for r in range(m.rows):
                    row = out.data[r0 + r]
                    for c in range(m.cols):
                        if m.data[r][c]:
                            row[c0 + c] = row[c0 + c] + m.data[r][c]
        return out

    def nnz_blocks(self) -> int:
        return sum(1 for m in self.blocks.values() if not m.is_zero())


# ---------------------------------------------------------------- coproduct


def _factor_op(M: HWModule, tag: str, i: int, c: Depth) -> tuple[Optional[Depth], Optional[Mat]]:
    if tag == "E":
        t = _add(c, i, -1)
        if t not in M.spaces:
            return None, None
        return t, M.e_mat(i, c)
    if tag == "F":
        t = _add(c, i, 1)
        if t not in M.spaces:
            return None, None
        return t, M.f_mat(i, c)
    raise ValueError(tag)


def _kron_list(mats: Sequence[Mat]) -> Mat:
    out = mats[0]
    for m in mats[1:]:
        out = kron(out, m)
    return out


def coproduct(space: TensorSpace, tag: str, i: int) -> GradedOperator:
    """Iterated coproduct of E_i, F_i, or K~_i (tag ``K``) / K~_-i (tag ``K-``)."""
    d = space.d
    out = GradedOperator(space, space)
    N = len(space.factors)
    for comp in space.all_comps():
        if tag in ("K", "K-"):
            sign = 1 if tag == "K" else -1
            e = sum(M.kexp(i, c) for M, c in zip(space.factors, comp))
            out.blocks[(comp, comp)] = Mat.identity(space.comp_dim(comp), d).scale(RatFunc.monomial(sign * e * d, d))
            continue
        for k in range(N):
            M = space.factors[k]
            t, m = _factor_op(M, tag, i, comp[k])
            if m is None:
                continue
            tcomp = comp[:k] + (t,) + comp[k + 1:]
            # scalar from the K~ factors
            if tag == "E":
                e = sum(space.factors[j].kexp(i, comp[j]) for j in range(k))
            else:
                e = -sum(space.factors[j].kexp(i, comp[j]) for j in range(k + 1, N))
            mats = []
            for j in range(N):
                if j == k:
                    mats.append(m)
                else:
                    mats.append(Mat.identity(space.factors[j].spaces[comp[j]].dim, d))
            block = _kron_list(mats)
            if e:
                block = block.scale(RatFunc.monomial(e * d, d))
            out._acc((tcomp, comp), block)
    return out


class TensorModule:
    def __init__(self, factors: Sequence[HWModule]):
        self.space = TensorSpace(factors)
        self._ops: dict = {}

    @property
    def factors(self):
        return self.space.factors

    def op(self, tag: str, i: int) -> GradedOperator:
        key = (tag, i)
        if key not in self._ops:
            self._ops[key] = coproduct(self.space, tag, i)
        return self._ops[key]


def tensor_module(Ms: Sequence[HWModule]) -> TensorModule:
    return TensorModule(Ms)


# ------------------------------------------------------------ verification


def _vec_report(name, checks, failures, extra=None):
    rep = {"relation": name, "checks": checks, "ok": not failures, "failures": failures[:10]}
    if extra:
        rep.update(extra)
    return rep


def verify_tensor_relations(T: TensorModule) -> list[dict]:
    """Relation (d) and both Serre relations for the coproduct action."""
    sp = T.space
    cd = sp.cd
    n = cd.rank
    reports = []
    fails, checks = [], 0
    for i in range(n):
        for j in range(n):
            lhs = T.op("E", i) @ T.op("F", j) - T.op("F", j) @ T.op("E", i)
            if i == j:
                rhs = GradedOperator(sp, sp)
                for comp in sp.all_comps():
                    p = sp.pair(i, _vsum(comp))
                    rhs.blocks[(comp, comp)] = Mat.identity(sp.comp_dim(comp), sp.d).scale(T.factors[0].qint(p, i))
            else:
                rhs = GradedOperator(sp, sp)
            checks += 1
            diff = lhs.first_difference(rhs)
            if diff:
                fails.append({"i": i, "j": j, **diff})
    reports.append(_vec_report("EF commutator (d)", checks, fails))
    for tag in ("E", "F"):
        fails, checks = [], 0
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                top = 1 - cd.C[i][j]
                X = T.op(tag, i)
                Y = T.op(tag, j)
                total = GradedOperator(sp, sp)
                M0 = T.factors[0]
                for p in range(top + 1):
                    q = top - p
                    term = _power(X, p, sp).scale(M0.qfact(p, i).inverse())
                    term = term @ Y @ _power(X, q, sp).scale(M0.qfact(q, i).inverse())
                    total = total + (term if p % 2 == 0 else -term)
                checks += 1
                diff = total.first_difference(GradedOperator(sp, sp))
                if diff:
                    fails.append({"i": i, "j": j, **diff})
        reports.append(_vec_report(f"Serre ({'e' if tag == 'E' else 'f'})", checks, fails))
    return reports


def _power(X: GradedOperator, n: int, sp: TensorSpace) -> GradedOperator:
    out = GradedOperator.identity(sp)
    for _ in range(n):
        out = X @ out
    return out


# ------------------------------------------------------------- decomposition


def decompose_tensor_module(T: TensorModule) -> Counter:
    """Highest weights (with multiplicity): dim of the joint kernel of all Delta(E_i) per weight."""
    sp = T.space
    n = sp.cd.rank
    out = Counter()
    Es = [T.op("E", i) for i in range(n)]
    for nu in sp.weights():
        dim = sp.dim(nu)
        rows = []
        for i in range(n):
            t = _add(nu, i, -1)
            if t in sp.comps:
                rows.extend(Es[i].weight_block(t, nu).data)
        r = rank(Mat(rows, dim, sp.d)) if rows else 0
        k = dim - r
        if k:
            out[sp.weight_of(nu)] += k
    return out


# --------------------------------------------------------------- quasi-R-matrix


def compute_theta(T: TensorModule, depth: Optional[int] = None) -> GradedOperator:
    """Theta on a two-factor product, degree by degree from the E (x) 1 intertwining equations.

    Theta_kappa moves the first factor kappa deeper (an F-part) and the
    second factor kappa higher (an E-part).  For each pair of second-factor basis vectors the unknown is an
    operator X on the first factor, solved together with all others of the
    same degree (they share the coefficient matrix).
    """
    sp = T.space
    if len(sp.factors) != 2:
        raise ValueError("Theta is defined on two-factor products")
    M, N = sp.factors
    cd = sp.cd
    n = cd.rank
    d = sp.d
    Z = zero(d)
    zero_k = (0,) * n
    theta_ops: dict[Depth, GradedOperator] = {zero_k: GradedOperator.identity(sp)}

    # possible kappa: first-factor depth differences and second-factor differences
    m_depths = sorted(M.spaces)
    n_depths = sorted(N.spaces)
    max_h = max(sum(x) for x in m_depths)
    max_h = min(max_h, max(sum(x) for x in n_depths))
    if depth is not None:
        max_h = min(max_h, depth)
    kappas = []
    for h in range(1, max_h + 1):
        for kap in _vectors(n, h):
            if any(_vsub_ok(a, kap, M) for a in m_depths) and any(_vsub_ok2(b, kap, N) for b in n_depths):
                kappas.append(kap)

    KE = [_k_times_e(sp, i, 1) for i in range(n)]  # K~_i (x) E_i
    KmE = [_k_times_e(sp, i, -1) for i in range(n)]  # K~_-i (x) E_i

    for kap in kappas:
        # right-hand sides R_i = (K~_i (x) E_i) Theta_{kap-i} - Theta_{kap-i} (K~_-i (x) E_i)
        rhs = []
        for i in range(n):
            prev = _sub_k(kap, i)
            if prev is None or prev not in theta_ops:
                rhs.append(None)
                continue
            P = theta_ops[prev]
            rhs.append(KE[i] @ P - P @ KmE[i])
        # unknown layout: X_a : M_a -> M_{a+kap} for each first-factor depth a
        ublocks = []
        uoff = {}
        total = 0
        for a in m_depths:
            t = tuple(x + y for x, y in zip(a, kap))
            if t in M.spaces:
                uoff[a] = total
                total += M.spaces[t].dim * M.spaces[a].dim
                ublocks.append(a)
        if total == 0:
            continue
        # second-factor pairs (b at nb, b' at nb - kap)
        pairs = []
        for nb in n_depths:
            nt = tuple(x - y for x, y in zip(nb, kap))
            if nt in N.spaces:
                for b in range(N.spaces[nb].dim):
                    for bp in range(N.spaces[nt].dim):
                        pairs.append((nb, b, nt, bp))
        if not pairs:
            continue
        # equations: for each i and first-factor source a with E_i: M_a -> M_{a-e_i}:
        #   X_{a-e_i} E_i|_a - E_i|_{a+kap} X_a = R_i restricted
        eq_rows = []
        eq_rhs = []  # one list per equation: values for each pair
        for i in range(n):
            for a in m_depths:
                a_lo = _add(a, i, -1)
                t_hi = tuple(x + y for x, y in zip(a, kap))
                t_lo = _add(t_hi, i, -1)
                if t_lo not in M.spaces:
                    continue
                da = M.spaces[a].dim
                dtl = M.spaces[t_lo].dim
                Ea = M.e_mat(i, a) if a_lo in M.spaces else None
                Et = M.e_mat(i, t_hi) if t_hi in M.spaces else None
                for r in range(dtl):
                    for c in range(da):
                        row = [Z] * total
                        nz = False
                        if Ea is not None and a_lo in uoff:
                            # X_{a_lo} : M_{a_lo} -> M_{t_lo}, entry (r, k) times Ea[k, c]
                            base = uoff[a_lo]
                            w = M.spaces[a_lo].dim
                            for k in range(w):
                                e = Ea.data[k][c]
                                if e:
                                    row[base + r * w + k] = row[base + r * w + k] + e
                                    nz = True
                        if Et is not None and a in uoff:
                            base = uoff[a]
                            for k in range(Et.cols):
                                e = Et.data[r][k]
                                if e:
                                    row[base + k * da + c] = row[base + k * da + c] - e
                                    nz = True
                        vals = []
                        R = rhs[i]
                        for nb, b, nt, bp in pairs:
                            if R is None:
                                vals.append(Z)
                                continue
                            blk = R.blocks.get(((t_lo, nt), (a, nb)))
                            if blk is None:
                                vals.append(Z)
                                continue
                            dnt = N.spaces[nt].dim
                            dnb = N.spaces[nb].dim
                            vals.append(blk.data[r * dnt + bp][c * dnb + b])
                        if nz or any(vals):
                            eq_rows.append(row)
                            eq_rhs.append(vals)
        sol = _solve_multi(eq_rows, eq_rhs, total, len(pairs), d)
        if sol is None:
            raise Inconsistent(f"no Theta in degree {kap}")
        X, kernel = sol
        if kernel:
            raise Underdetermined(f"Theta in degree {kap} has a {kernel}-dimensional ambiguity")
        op = GradedOperator(sp, sp)
        for p_idx, (nb, b, nt, bp) in enumerate(pairs):
            dnt = N.spaces[nt].dim
            dnb = N.spaces[nb].dim
            for a in ublocks:
                t = tuple(x + y for x, y in zip(a, kap))
                da = M.spaces[a].dim
                dt = M.spaces[t].dim
                key = ((t, nt), (a, nb))
                blk = op.blocks.get(key)
                if blk is None:
                    blk = Mat.zeros(dt * dnt, da * dnb, d)
                    op.blocks[key] = blk
                base = uoff[a]
                for r in range(dt):
                    for c in range(da):
                        val = X[base + r * da + c][p_idx]
                        if val:
                            blk.data[r * dnt + bp][c * dnb + b] = val
        op.blocks = {k: m for k, m in op.blocks.items() if not m.is_zero()}
        theta_ops[kap] = op
    total_op = GradedOperator(sp, sp)
    for op in theta_ops.values():
        total_op = total_op + op
    total_op.degrees = theta_ops  # type: ignore[attr-defined]
    return total_op


def _vectors(rank: int, h: int):
    if rank == 1:
        yield (h,)
        return
    for first in range(h, -1, -1):
        for rest in _vectors(rank - 1, h - first):
            yield (first,) + rest


def _vsub_ok(a, kap, M):
    return tuple(x + y for x, y in zip(a, kap)) in M.spaces


def _vsub_ok2(b, kap, N):
    return tuple(x - y for x, y in zip(b, kap)) in N.spaces


def _sub_k(kap, i):
    if kap[i] == 0:
        return None
    return _add(kap, i, -1)


def _k_times_e(sp: TensorSpace, i: int, sign: int) -> GradedOperator:
    """K~_{sign i} (x) E_i on a two-factor space."""
    M, N = sp.factors
    d = sp.d
    out = GradedOperator(sp, sp)
    for comp in sp.all_comps():
        a, b = comp
        t, m = _factor_op(N, "E", i, b)
        if m is None:
            continue
        blk = kron(Mat.identity(M.spaces[a].dim, d), m).scale(RatFunc.monomial(sign * M.kexp(i, a) * d, d))
        out.blocks[((a, t), comp)] = blk
    return out


def _solve_multi(rows, rhs, nvars, nrhs, d):
    """Gauss-Jordan on [A | B]; returns (X as nvars x nrhs rows, kernel dim) or None."""
    Z = zero(d)
    aug = [list(r) + list(b) for r, b in zip(rows, rhs)]
    width = nvars + nrhs
    pivcols = []
    r = 0
    m = len(aug)
    for col in range(nvars):
        piv = next((k for k in range(r, m) if aug[k][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][col].inverse()
        prow = [x * inv if x else x for x in aug[r]]
        aug[r] = prow
        nzc = [c for c in range(col, width) if prow[c]]
        for k in range(m):
            if k != r:
                f = aug[k][col]
                if f:
                    row = aug[k]
                    for c in nzc:
                        row[c] = row[c] - f * prow[c]
        pivcols.append(col)
        r += 1
        if r == m:
            break
    for k in range(r, m):
        if any(aug[k][nvars:]):
            return None
    X = [[Z] * nrhs for _ in range(nvars)]
    for k, col in enumerate(pivcols):
        X[col] = aug[k][nvars:]
    return X, nvars - len(pivcols)


# ---------------------------------------------------------------- Psi, bar


def psi_squared(theta: GradedOperator) -> GradedOperator:
    """Psi = Theta . bar (bar is entrywise conjugation in the monomial basis); Psi^2 = Theta . bar(Theta)."""
    return theta @ theta.bar()


def verify_psi(T: TensorModule, theta: GradedOperator) -> dict:
    sp = T.space
    fails, checks = [], 0
    checks += 1
    diff = psi_squared(theta).first_difference(GradedOperator.identity(sp))
    if diff:
        fails.append({"identity": "Psi^2 = id", **diff})
    n = sp.cd.rank
    for i in range(n):
        for tag, bar_tag in (("E", "E"), ("F", "F"), ("K", "K-")):
            U = T.op(tag, i)
            # Psi(U x) = Theta bar(U) bar(x);  U-bar(Psi x) = op(bar u) Theta bar(x)
            lhs = theta @ U.bar()
            rhs = T.op(bar_tag, i) @ theta
            checks += 1
            diff = lhs.first_difference(rhs)
            if diff:
                fails.append({"identity": f"Psi Delta({tag}_{i}) = Delta(bar {tag}_{i}) Psi", **diff})
    return _vec_report("Psi involution", checks, fails, {"dim": sp.total_dim()})


def bar_on_module(M: HWModule) -> Callable:
    """Module bar in coordinates: the monomial basis is bar-fixed, so bar conjugates coordinates."""

    def apply(vec: dict) -> dict:
        return {nu: [x.bar() for x in xs] for nu, xs in vec.items()}

    return apply


# ---------------------------------------------------------------- braiding


def swap_operator(src: TensorSpace, tgt: TensorSpace) -> GradedOperator:
    """P: M (x) N -> N (x) M, x (x) y -> y (x) x."""
    M, N = src.factors
    d = src.d
    O = one(d)
    out = GradedOperator(src, tgt)
    for a, b in src.all_comps():
        dm, dn = M.spaces[a].dim, N.spaces[b].dim
        blk = Mat.zeros(dn * dm, dm * dn, d)
        for x in range(dm):
            for y in range(dn):
                blk.data[y * dm + x][x * dn + y] = O
        out.blocks[((b, a), (a, b))] = blk
    return out


def weight_scaling(space: TensorSpace, sign: int) -> GradedOperator:
    """Pi: scale the component (mu_1, mu_2) by v^(sign * (mu_1, mu_2))."""
    M, N = space.factors
    cd = space.cd
    d = space.d
    out = GradedOperator(space, space)
    for a, b in space.all_comps():
        e = sign * sym_form(cd, M.weight_of(a), N.weight_of(b))
        units = e * d
        assert units.denominator == 1
        out.blocks[((a, b), (a, b))] = Mat.identity(space.comp_dim((a, b)), d).scale(
            RatFunc.monomial(int(units), d)
        )
    return out


@dataclass
class Braiding:
    src: TensorSpace  # M (x) N
    tgt: TensorSpace  # N (x) M
    R: GradedOperator
    R_inv: GradedOperator
    theta_swapped: GradedOperator

    def top_scalar(self) -> Fraction:
        M, N = self.src.factors
        return -sym_form(self.src.cd, M.lam, N.lam)


def braiding(T: TensorModule, T_swapped: Optional[TensorModule] = None, depth: Optional[int] = None) -> Braiding:
    """R: M (x) N -> N (x) M as Theta_{NM} . Pi^- . P, with inverse P . Pi^+ . bar(Theta_{NM})."""
    M, N = T.factors
    if T_swapped is None:
        T_swapped = TensorModule([N, M])
    theta = compute_theta(T_swapped, depth)
    P = swap_operator(T.space, T_swapped.space)
    Pback = swap_operator(T_swapped.space, T.space)
    R = theta @ weight_scaling(T_swapped.space, -1) @ P
    R_inv = Pback @ weight_scaling(T_swapped.space, 1) @ theta.bar()
    return Braiding(T.space, T_swapped.space, R, R_inv, theta)


def verify_braiding(T: TensorModule, T_swapped: TensorModule, br: Braiding) -> dict:
    fails, checks = [], 0
    n = T.space.cd.rank
    for i in range(n):
        for tag in ("E", "F", "K"):
            lhs = br.R @ T.op(tag, i)
            rhs = T_swapped.op(tag, i) @ br.R
            checks += 1
            diff = lhs.first_difference(rhs)
            if diff:
                fails.append({"identity": f"R Delta({tag}_{i}) = Delta({tag}_{i}) R", **diff})
    checks += 2
    diff = (br.R_inv @ br.R).first_difference(GradedOperator.identity(T.space))
    if diff:
        fails.append({"identity": "R^-1 R = id", **diff})
    diff = (br.R @ br.R_inv).first_difference(GradedOperator.identity(T_swapped.space))
    if diff:
        fails.append({"identity": "R R^-1 = id", **diff})
    # top vector: R(v (x) v') = v^(-(lam, lam')) v' (x) v
    n0 = (0,) * n
    top = br.R.blocks.get(((n0, n0), (n0, n0)))
    want = RatFunc.monomial(int(br.top_scalar() * T.space.d), T.space.d)
    checks += 1
    if top is None or top[0, 0] != want:
        fails.append({"identity": "top-vector scalar"})
    return _vec_report("braiding", checks, fails, {"top_exponent": str(br.top_scalar())})


def lift(op2: GradedOperator, src3: TensorSpace, tgt3: TensorSpace, pos: int) -> GradedOperator:
    """Place a two-factor operator on positions (pos, pos+1) of a three-factor product."""
    d = src3.d
    by_src: dict = {}
    for (t, s), m in op2.blocks.items():
        by_src.setdefault(s, []).append((t, m))
    out = GradedOperator(src3, tgt3)
    for comp in src3.all_comps():
        s2 = comp[pos:pos + 2]
        for t2, m in by_src.get(s2, ()):
            tcomp = comp[:pos] + t2 + comp[pos + 2:]
            if pos == 0:
                other = Mat.identity(src3.factors[2].spaces[comp[2]].dim, d)
                blk = kron(m, other)
            else:
                other = Mat.identity(src3.factors[0].spaces[comp[0]].dim, d)
                blk = kron(other, m)
            out._acc((tcomp, comp), blk)
    return out


def verify_yang_baxter(cd: CartanData, mods: Sequence[HWModule], depth: Optional[int] = None) -> dict:
    """R23 R13 R12 = R12 R13 R23 as maps L1 (x) L2 (x) L3 -> L3 (x) L2 (x) L1.

    Labels follow the factors: the left side runs 123 -> 213 -> 231 -> 321,
    the right side 123 -> 132 -> 312 -> 321.
    """
    L = {k + 1: M for k, M in enumerate(mods)}
    spaces: dict[tuple[int, ...], TensorSpace] = {}

    def space(order):
        if order not in spaces:
            spaces[order] = TensorSpace([L[k] for k in order])
        return spaces[order]

    pair_cache: dict[tuple[int, int], Braiding] = {}

    def R(a, b) -> Braiding:
        if (a, b) not in pair_cache:
            pair_cache[(a, b)] = braiding(TensorModule([L[a], L[b]]))
        return pair_cache[(a, b)]

    def step(order, a, b):
        pos = order.index(a)
        if order[pos + 1] != b:
            raise AssertionError("factors must be adjacent")
        new = order[:pos] + (b, a) + order[pos + 2:]
        return new, lift(R(a, b).R, space(order), space(new), pos)

    o = (1, 2, 3)
    o1, A1 = step(o, 1, 2)
    o2, A2 = step(o1, 1, 3)
    o3, A3 = step(o2, 2, 3)
    lhs = A3 @ A2 @ A1
    p1, B1 = step(o, 2, 3)
    p2, B2 = step(p1, 1, 3)
    p3, B3 = step(p2, 1, 2)
    rhs = B3 @ B2 @ B1
    assert o3 == p3 == (3, 2, 1)
    diff = lhs.first_difference(rhs)
    return {
        "relation": "Yang-Baxter",
        "ok": diff is None,
        "dim": space(o).total_dim(),
        "paths": ["123>213>231>321", "123>132>312>321"],
        "first_failure": diff,
        "nonzero_blocks": lhs.nnz_blocks(),
    }


def verify_product_form(T: TensorModule) -> dict:
    """(Delta(F_i) x, y) = (x, v^(-s_i(<i, wt y>+1)) Delta(E_i) y) for the product form."""
    from .forms import tensor_form

    sp = T.space
    G = tensor_form(T).blocks
    fails, checks = [], 0
    cd = sp.cd
    for nu in sp.weights():
        for i in cd.indices:
            up = _add(nu, i, 1)
            if up not in sp.comps:
                continue
            Fm = T.op("F", i).weight_block(up, nu)
            Em = T.op("E", i).weight_block(nu, up)
            lhs = Fm.transpose() @ G[up]
            rhs = (G[nu] @ Em).scale(RatFunc.monomial(-cd.s[i] * (sp.pair(i, up) + 1) * sp.d, sp.d))
            checks += 1
            if lhs != rhs:
                fails.append({"weight": list(nu), "i": i, "entry": lhs.first_difference(rhs)})
    return _vec_report("product-form contravariance", checks, fails)
