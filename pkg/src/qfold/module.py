"""Integrable highest-weight modules L(lam) with exact generator matrices.

Construction: weight spaces are spanned by divided-power monomials
``F_{j1}^{(a1)} F_{j2}^{(a2)} ... v_lam`` and cut down to the quotient by
the radical of the contravariant form.  Weight spaces are keyed by their
depth ``nu`` (the weight is ``lam - sum nu_j alpha_j``) and built in order
of height.

Conventions:

* ``F[(i, nu)]`` maps ``V_nu -> V_{nu + e_i}``, ``E[(i, nu)]`` maps
  ``V_nu -> V_{nu - e_i}``; matrices act on column coordinate vectors.
* ``K~_i`` acts on ``V_nu`` by ``v^(s_i <i, lam - nu>)``.
* the form satisfies ``(F_i x, y) = (x, v^(-s_i(<i, wt y> + 1)) E_i y)``,
  the adjoint written out on a weight vector ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .arith import RatFunc, rqfact, rqint
from .cartan import CartanData, Weight, is_dominant
from .linalg import Mat, independent_rows, inverse, one, zero
from .oracle import CharacterTable, NotDominant

Word = tuple[tuple[int, int], ...]
Depth = tuple[int, ...]


class WeightOutOfRange(ValueError):
    pass


@dataclass
class WeightSpace:
    nu: Depth
    basis: list[Word]
    gram: Mat
    # coordinates (in ``basis``) of every spanning monomial generated at this weight
    words: dict[Word, list[RatFunc]] = field(repr=False, default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)


def _add(nu: Depth, i: int, k: int = 1) -> Depth:
    return tuple(x + k if j == i else x for j, x in enumerate(nu))


class HWModule:
    """L(lam) truncated to depth heights ``<= depth`` (``depth=None``: build until exhausted)."""

    def __init__(self, cd: CartanData, lam: Weight, depth: Optional[int] = None):
        if not is_dominant(lam):
            raise NotDominant(f"{lam} is not dominant")
        if depth is None and not cd.is_finite_type():
            raise ValueError("non-finite type needs an explicit depth window")
        self.cd = cd
        self.lam = lam
        self.depth = depth
        self.d = cd.d
        self.spaces: dict[Depth, WeightSpace] = {}
        self.E: dict[tuple[int, Depth], Mat] = {}
        self.F: dict[tuple[int, Depth], Mat] = {}
        self.complete = False
        self._zero = zero(self.d)
        self._one = one(self.d)

    # ------------------------------------------------------------------ basics
    @property
    def rank(self) -> int:
        return self.cd.rank

    def pair(self, i: int, nu: Depth) -> int:
        """<i, lam - nu>."""
        return self.lam.coords[i] - sum(self.cd.C[i][j] * nu[j] for j in self.cd.indices)

    def kexp(self, i: int, nu: Depth) -> int:
        """Exponent of v in the K~_i eigenvalue on V_nu."""
        return self.cd.s[i] * self.pair(i, nu)

    def vpow(self, e: int) -> RatFunc:
        return RatFunc.monomial(e * self.d, self.d)

    def qint(self, n: int, i: int) -> RatFunc:
        return rqint(n, self.cd.s[i], self.d)

    def qfact(self, n: int, i: int) -> RatFunc:
        return rqfact(n, self.cd.s[i], self.d)

    def in_window(self, nu: Depth) -> bool:
        return all(x >= 0 for x in nu) and (self.depth is None or sum(nu) <= self.depth)

    def dim(self, nu: Depth) -> int:
        if any(x < 0 for x in nu):
            return 0
        if not self.in_window(nu):
            raise WeightOutOfRange(f"depth {nu} outside the window {self.depth}")
        sp = self.spaces.get(nu)
        return sp.dim if sp else 0

    def weights(self) -> list[Depth]:
        return list(self.spaces)

    def weight_of(self, nu: Depth) -> Weight:
        return self.cd.lower(self.lam, nu)

    def total_dim(self) -> int:
        return sum(sp.dim for sp in self.spaces.values())

    def character(self) -> CharacterTable:
        return CharacterTable({self.weight_of(nu): sp.dim for nu, sp in self.spaces.items()}, self.depth)

    def gram(self, nu: Depth) -> Mat:
        return self.spaces[nu].gram

    # ------------------------------------------------------------ operators
    def _zero_map(self, rows: int, cols: int) -> Mat:
        return Mat.zeros(rows, cols, self.d)

    def e_mat(self, i: int, nu: Depth) -> Mat:
        tgt = _add(nu, i, -1)
        src_dim = self.dim(nu)
        tgt_dim = self.dim(tgt)
        m = self.E.get((i, nu))
        return m if m is not None else self._zero_map(tgt_dim, src_dim)

    def f_mat(self, i: int, nu: Depth) -> Mat:
        tgt = _add(nu, i, 1)
        src_dim = self.dim(nu)
        tgt_dim = self.dim(tgt)
        m = self.F.get((i, nu))
        return m if m is not None else self._zero_map(tgt_dim, src_dim)

    def e_pow(self, i: int, n: int, nu: Depth, divided: bool = True) -> Mat:
        """E_i^(n) (or E_i^n) from V_nu, computed as a matrix power divided by [n]!."""
        out = Mat.identity(self.dim(nu), self.d)
        cur = nu
        for _ in range(n):
            out = self.e_mat(i, cur) @ out
            cur = _add(cur, i, -1)
        if divided and n > 1:
            out = out.scale(self.qfact(n, i).inverse())
        return out

    def f_pow_plain(self, i: int, n: int, nu: Depth) -> Mat:
        out = Mat.identity(self.dim(nu), self.d)
        cur = nu
        for _ in range(n):
            out = self.f_mat(i, cur) @ out
            cur = _add(cur, i, 1)
        return out

    def f_div(self, i: int, n: int, nu: Depth) -> Mat:
        """Stored divided power F_i^(n): V_nu -> V_{nu + n e_i}, read off the monomial table."""
        tgt = _add(nu, i, n)
        tdim = self.dim(tgt)
        sdim = self.dim(nu)
        if n == 0:
            return Mat.identity(sdim, self.d)
        if tdim == 0 or sdim == 0:
            return self._zero_map(tdim, sdim)
        words = self.spaces[tgt].words
        cols = []
        for q in self.spaces[nu].basis:
            if q and q[0][0] == i:
                b = q[0][1]
                w = ((i, n + b),) + q[1:]
                c = self._qbinom(n + b, n, i)
            else:
                w = ((i, n),) + q
                c = self._one
            vec = words[w]
            cols.append([x * c for x in vec] if c != 1 else list(vec))
        return Mat.from_columns(cols, tdim, self.d)

    def _qbinom(self, m: int, n: int, i: int) -> RatFunc:
        out = self._one
        for k in range(n):
            out = out * self.qint(m - k, i)
        return out / self.qfact(n, i)

    def k_scalar(self, i: int, nu: Depth, sign: int = 1) -> RatFunc:
        return self.vpow(sign * self.kexp(i, nu))

    # ---------------------------------------------------------------- build
    def build(self) -> "HWModule":
        n = self.rank
        top: Depth = (0,) * n
        self.spaces[top] = WeightSpace(top, [()], Mat([[self._one]], 1, self.d), {(): [self._one]})
        frontier = [top]
        h = 0
        while frontier:
            h += 1
            if self.depth is not None and h > self.depth:
                break
            cand_nus = sorted({_add(nu, j) for nu in frontier for j in range(n)}, reverse=True)
            frontier = []
            for nu in cand_nus:
                if self._build_space(nu):
                    frontier.append(nu)
        else:
            self.complete = True
        return self

    def _build_space(self, nu: Depth) -> bool:
        cd = self.cd
        n = self.rank
        cands: list[tuple[Word, int, int, Depth, int]] = []
        for j in range(n):
            for a in range(1, nu[j] + 1):
                src = _add(nu, j, -a)
                sp = self.spaces.get(src)
                if sp is None:
                    continue
                for qi, q in enumerate(sp.basis):
                    if q and q[0][0] == j:
                        continue
                    cands.append((((j, a),) + q, j, a, src, qi))
        if not cands:
            return False
        cands.sort(key=lambda c: (len(c[0]), c[0]))

        # E_k applied to each candidate, as vectors in V_{nu - e_k}
        e_images: list[dict[int, list[RatFunc]]] = []
        for word, j, a, src, qi in cands:
            imgs = {}
            for k in range(n):
                tgt = _add(nu, k, -1)
                if tgt not in self.spaces:
                    continue
                vec = [self._zero] * self.spaces[tgt].dim
                lower = _add(src, k, -1)
                if lower in self.spaces:
                    eq = self.E[(k, src)].column(qi)
                    vec = self.f_div(j, a, lower).apply(eq)
                if k == j:
                    c = self.qint(self.pair(j, src) - a + 1, j)
                    if c:
                        if a == 1:
                            vec[qi] = vec[qi] + c
                        else:
                            unit = [self._zero] * self.spaces[src].dim
                            unit[qi] = self._one
                            extra = self.f_div(j, a - 1, src).apply(unit)
                            vec = [x + c * y for x, y in zip(vec, extra)]
                imgs[k] = vec
            e_images.append(imgs)

        # adjoint chains: (F_j^(a) q, x) = (q, adj^a x) / [a]_j!
        def chain(x_idx: int, j: int, a: int) -> Optional[list[RatFunc]]:
            key = (x_idx, j, a)
            if key in memo:
                return memo[key]
            if a == 1:
                vec = e_images[x_idx].get(j)
                if vec is None:
                    memo[key] = None
                    return None
                res = [x * self.vpow(-cd.s[j] * (self.pair(j, nu) + 1)) for x in vec]
            else:
                prev = chain(x_idx, j, a - 1)
                at = _add(nu, j, -(a - 1))
                if prev is None or _add(at, j, -1) not in self.spaces:
                    memo[key] = None
                    return None
                res = self.E[(j, at)].apply(prev)
                sc = self.vpow(-cd.s[j] * (self.pair(j, at) + 1))
                res = [x * sc for x in res]
            memo[key] = res
            return res

        memo: dict = {}
        N = len(cands)
        G = [[self._zero] * N for _ in range(N)]
        for ci, (word, j, a, src, qi) in enumerate(cands):
            grow = self.spaces[src].gram.data[qi]
            inv_fact = self.qfact(a, j).inverse()
            for xi in range(N):
                z = chain(xi, j, a)
                if z is None:
                    continue
                acc = self._zero
                for g, y in zip(grow, z):
                    if g and y:
                        acc = acc + g * y
                G[ci][xi] = acc * inv_fact if a > 1 else acc
        piv = independent_rows(G, N, self.d)
        if not piv:
            return False
        gpp = Mat([[G[r][c] for c in piv] for r in piv], len(piv), self.d)
        ginv = inverse(gpp)
        gp_all = Mat([G[r] for r in piv], N, self.d)
        coords = ginv @ gp_all  # column c = coordinates of candidate c
        basis = [cands[r][0] for r in piv]
        words = {cands[c][0]: coords.column(c) for c in range(N)}
        sp = WeightSpace(nu, basis, gpp, words)
        self.spaces[nu] = sp
        self._gram_full = G  # kept for inspection of the last built space

        # E out of nu, from the candidate images of the pivots
        for k in range(n):
            tgt = _add(nu, k, -1)
            if tgt in self.spaces:
                self.E[(k, nu)] = Mat.from_columns([e_images[r][k] for r in piv], self.spaces[tgt].dim, self.d)
        # F into nu
        for j in range(n):
            src = _add(nu, j, -1)
            if src in self.spaces:
                cols = []
                for q in self.spaces[src].basis:
                    if q and q[0][0] == j:
                        b = q[0][1]
                        w = ((j, b + 1),) + q[1:]
                        c = self.qint(b + 1, j)
                        cols.append([x * c for x in words[w]])
                    else:
                        cols.append(list(words[((j, 1),) + q]))
                self.F[(j, src)] = Mat.from_columns(cols, sp.dim, self.d)
        return True

    # ------------------------------------------------------------------ act
    def op(self, word: Sequence[tuple[str, int, int]], nu: Depth) -> tuple[Mat, Depth]:
        """Matrix of a word of generators (rightmost acts first) starting at V_nu."""
        out = Mat.identity(self.dim(nu), self.d)
        cur = nu
        for tag, i, k in reversed(list(word)):
            if tag == "E":
                m = self.e_pow(i, k, cur)
                cur = _add(cur, i, -k)
            elif tag == "F":
                nxt = _add(cur, i, k)
                if not self.in_window(nxt) and all(x >= 0 for x in nxt):
                    raise WeightOutOfRange(f"F_{i}^({k}) leaves the window at {nxt}")
                m = self.f_div(i, k, cur)
                cur = nxt
            elif tag in ("K", "K-"):
                sign = 1 if tag == "K" else -1
                m = Mat.identity(self.dim(cur), self.d).scale(self.vpow(sign * k * self.kexp(i, cur)))
            else:
                raise ValueError(f"unknown generator tag {tag!r}")
            if any(x < 0 for x in cur):
                return Mat.zeros(0, self.dim(nu), self.d), cur
            out = m @ out
        return out, cur


def build_module(cd: CartanData, lam: Weight, depth: Optional[int] = None) -> HWModule:
    return HWModule(cd, lam, depth).build()


GradedVector = dict[Depth, list[RatFunc]]


def highest_vector(M: HWModule) -> GradedVector:
    return {(0,) * M.rank: [one(M.d)]}


def act(M: HWModule, word: Sequence[tuple[str, int, int]], x: GradedVector) -> GradedVector:
    """Apply a word of ``(tag, i, n)`` generators, tags ``E``, ``F``, ``K`` (K~_i^n), ``K-`` (K~_-i^n)."""
    out: GradedVector = {}
    for nu, vec in x.items():
        m, tgt = M.op(word, nu)
        if m.rows == 0:
            continue
        img = m.apply(vec)
        if tgt in out:
            out[tgt] = [a + b for a, b in zip(out[tgt], img)]
        else:
            out[tgt] = img
    return {nu: v for nu, v in out.items() if any(v)}


# ---------------------------------------------------------------- verification


def _report(name: str, M: HWModule, checks: int, failures: list) -> dict:
    return {
        "relation": name,
        "checks": checks,
        "ok": not failures,
        "failures": failures[:10],
        "window": M.depth,
    }


def _fits(M: HWModule, nu: Depth, *shifts: Depth) -> bool:
    return all(M.in_window(s) or any(x < 0 for x in s) for s in shifts)


def verify_defining_relations(M: HWModule) -> list[dict]:
    cd = M.cd
    n = M.rank
    reports = []
    # (a)-(c): eigenvalue additivity and the K-shift under E/F
    fails, checks = [], 0
    for nu in M.weights():
        for i in range(n):
            for j in range(n):
                checks += 1
                up = _add(nu, j, -1)
                down = _add(nu, j, 1)
                if M.pair(i, up) - M.pair(i, nu) != cd.C[i][j] or M.pair(i, nu) - M.pair(i, down) != cd.C[i][j]:
                    fails.append({"weight": list(nu), "i": i, "j": j})
    reports.append(_report("K-eigenvalues (a)-(c)", M, checks, fails))

    # (d): E_i F_j - F_j E_i = delta_ij [<i, mu>]_i
    fails, checks = [], 0
    for nu in M.weights():
        for i in range(n):
            for j in range(n):
                mid1 = _add(nu, j, 1)
                if not M.in_window(mid1):
                    continue
                lhs = M.e_mat(i, mid1) @ M.f_mat(j, nu) - M.f_mat(j, _add(nu, i, -1)) @ M.e_mat(i, nu)
                if i == j:
                    rhs = Mat.identity(M.dim(nu), M.d).scale(M.qint(M.pair(i, nu), i))
                else:
                    rhs = Mat.zeros(lhs.rows, lhs.cols, M.d)
                checks += 1
                if lhs != rhs:
                    fails.append({"weight": list(nu), "i": i, "j": j, "entry": lhs.first_difference(rhs)})
    reports.append(_report("EF commutator (d)", M, checks, fails))

    # (e), (f): quantum Serre relations
    for tag in ("E", "F"):
        fails, checks = [], 0
        for nu in M.weights():
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    top = 1 - cd.C[i][j]
                    shift = [0] * n
                    sgn = -1 if tag == "E" else 1
                    shift[i] += sgn * top
                    shift[j] += sgn
                    tgt = tuple(a + b for a, b in zip(nu, shift))
                    if tag == "F" and not M.in_window(tgt):
                        continue
                    total = None
                    for p in range(top + 1):
                        q = top - p
                        m, _ = M.op([(tag, i, p), (tag, j, 1), (tag, i, q)], nu)
                        if m.rows == 0:
                            continue
                        term = m if p % 2 == 0 else -m
                        total = term if total is None else total + term
                    checks += 1
                    if total is not None and not total.is_zero():
                        fails.append({"weight": list(nu), "i": i, "j": j})
        reports.append(_report(f"Serre ({'e' if tag == 'E' else 'f'})", M, checks, fails))
    return reports


def verify_divided_power_relation(M: HWModule, i: int, n: int) -> dict:
    fails, checks = [], 0
    # scalar identity: sum_r v^(s(n-1-2r)) = [n]_s
    s = M.cd.s[i]
    acc = zero(M.d)
    for r in range(n):
        acc = acc + M.vpow(s * (n - 1 - 2 * r))
    checks += 1
    if acc != M.qint(n, i):
        fails.append({"scalar": n})
    qn = M.qint(n, i)
    for nu in M.weights():
        # E^(n-1) E = E E^(n-1) = [n] E^(n)
        lhs1 = M.e_pow(i, n - 1, _add(nu, i, -1)) @ M.e_mat(i, nu)
        lhs2 = M.e_mat(i, _add(nu, i, -(n - 1))) @ M.e_pow(i, n - 1, nu)
        rhs = M.e_pow(i, n, nu).scale(qn)
        checks += 2
        if lhs1 != rhs or lhs2 != rhs:
            fails.append({"weight": list(nu), "side": "E"})
        if M.in_window(_add(nu, i, n)):
            lhs = M.f_div(i, n - 1, _add(nu, i, 1)) @ M.f_mat(i, nu)
            lhs2 = M.f_mat(i, _add(nu, i, n - 1)) @ M.f_div(i, n - 1, nu)
            rhs = M.f_div(i, n, nu).scale(qn)
            checks += 2
            if lhs != rhs or lhs2 != rhs:
                fails.append({"weight": list(nu), "side": "F"})
    rep = _report(f"divided powers i={i} n={n}", M, checks, fails)
    return rep


def verify_EF_commutation(M: HWModule, i: int, n: int) -> dict:
    fails, checks = [], 0
    for nu in M.weights():
        up = _add(nu, i, 1)
        if not M.in_window(up):
            continue
        # E^(n) F - F E^(n) = [n + <i, mu> - 1] E^(n-1)
        lhs = M.e_pow(i, n, up) @ M.f_mat(i, nu) - M.f_mat(i, _add(nu, i, -n)) @ M.e_pow(i, n, nu)
        m = n + M.pair(i, nu) - 1
        rhs = M.e_pow(i, n - 1, nu).scale(M.qint(m, i))
        checks += 1
        if lhs != rhs:
            fails.append({"weight": list(nu), "m": m})
        for j in range(M.rank):
            if j == i:
                continue
            upj = _add(nu, j, 1)
            if not M.in_window(upj):
                continue
            lhs = M.e_pow(i, n, upj) @ M.f_mat(j, nu)
            rhs = M.f_mat(j, _add(nu, i, -n)) @ M.e_pow(i, n, nu)
            checks += 1
            if lhs != rhs:
                fails.append({"weight": list(nu), "j": j})
    return _report(f"E^(n)F commutation i={i} n={n}", M, checks, fails)


def verify_integrability(M: HWModule) -> dict:
    """F_i^(<i,lam>+1) kills v_lam, and on a complete module every i-string is finite."""
    fails, checks = [], 0
    top = (0,) * M.rank
    for i in range(M.rank):
        n = M.lam.coords[i] + 1
        if M.in_window(_add(top, i, n)):
            checks += 1
            if not M.f_div(i, n, top).is_zero():
                fails.append({"weight": list(top), "i": i})
    if M.complete:
        for nu in M.weights():
            for i in range(M.rank):
                n = 1
                while M.dim(_add(nu, i, n)):
                    n += 1
                checks += 1
                if not M.f_div(i, n, nu).is_zero() or not M.e_pow(i, nu[i] + 1, nu).is_zero():
                    fails.append({"weight": list(nu), "i": i})
    return _report("integrability", M, checks, fails)


def verify_contravariance(M: HWModule) -> dict:
    """Gram identity (F_i x, y) = (x, v^(-s_i(<i, wt y>+1)) E_i y) on every weight pair."""
    fails, checks = [], 0
    for nu in M.weights():
        for i in range(M.rank):
            up = _add(nu, i, 1)
            if up not in M.spaces:
                continue
            Fm = M.f_mat(i, nu)  # V_nu -> V_up
            Em = M.e_mat(i, up)  # V_up -> V_nu
            lhs = Fm.transpose() @ M.gram(up)
            rhs = (M.gram(nu) @ Em).scale(M.vpow(-M.cd.s[i] * (M.pair(i, up) + 1)))
            checks += 1
            if lhs != rhs:
                fails.append({"weight": list(nu), "i": i, "entry": lhs.first_difference(rhs)})
    for nu in M.weights():
        g = M.gram(nu)
        checks += 1
        if g != g.transpose():
            fails.append({"weight": list(nu), "symmetric": False})
    return _report("contravariance", M, checks, fails)


def verify_gram_nonsingular(M: HWModule) -> dict:
    from .linalg import rank

    fails = [list(nu) for nu, sp in M.spaces.items() if rank(sp.gram) != sp.dim]
    return _report("gram nonsingular", M, len(M.spaces), fails)


def verify_bar_fixes_monomials(M: HWModule) -> dict:
    """Every stored divided-power monomial has bar-invariant coordinates in the pivot basis."""
    fails, checks = [], 0
    for nu, sp in M.spaces.items():
        for word, coords in sp.words.items():
            checks += 1
            if any(c.bar() != c for c in coords):
                fails.append({"weight": list(nu), "word": [list(x) for x in word]})
    return _report("bar fixes monomials", M, checks, fails)
