"""Crystals: monomial realization of B(lam), tensor products, orbit folding, isomorphism.

Realization (tag ``MONOMIAL``): vertices are Laurent monomials in variables
``Y_i(n)``, generated from ``prod_i Y_i(0)^<i, lam>`` by the operators below.
With partial sums ``S(n) = sum_{k <= n} y_i(k)``:

* ``phi_i = max_n S(n)``, ``eps_i = phi_i - <i, wt>``;
* ``f_i`` multiplies by ``A_i(n_f)^-1`` where ``n_f`` is the first maximizer;
* ``e_i`` multiplies by ``A_i(n_e)`` where ``n_e`` is the last maximizer;
* ``A_i(n) = Y_i(n) Y_i(n+1) prod_{j != i} Y_j(n + c_ji)^{a_ji}``, where an
  arrow ``i -> j`` of the orientation gives ``c_ij = 0, c_ji = 1``.

Tensor rule (tag ``TENSOR_RULE``): ``f(b1 (x) b2) = f b1 (x) b2`` when
``phi(b1) > eps(b2)``, otherwise ``b1 (x) f b2``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional, Sequence

from .cartan import CartanData, Weight, is_dominant, validate_cartan
from .oracle import NotDominant

MONOMIAL = "monomial-Y/orientation-c"
TENSOR_RULE = "f-left-iff-phi1>eps2"

Monomial = tuple[tuple[tuple[int, int], int], ...]  # sorted ((i, n), exponent), exponents nonzero


class CartanMismatch(ValueError):
    pass


class NonInvariantHighestWeight(ValueError):
    pass


class OrbitOperatorMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CrystalVertex:
    id: int
    wt: Weight
    eps: tuple[int, ...]
    phi: tuple[int, ...]
    payload: Hashable = None


@dataclass
class CrystalGraph:
    """Vertices plus f-edges; ``f[(v, i)] = w`` means f_i(v) = w."""

    cd: CartanData
    vertices: list[CrystalVertex]
    f: dict[tuple[int, int], int]
    highest: list[int]
    complete: bool = True
    window: Optional[int] = None
    e: dict[tuple[int, int], int] = field(init=False, repr=False)

    def __post_init__(self):
        self.e = {(w, i): v for (v, i), w in self.f.items()}

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int, int]]:
        return sorted((v, i, w) for (v, i), w in self.f.items())

    def f_op(self, v: int, i: int) -> Optional[int]:
        return self.f.get((v, i))

    def e_op(self, v: int, i: int) -> Optional[int]:
        return self.e.get((v, i))

    def counts_by_depth(self) -> Counter:
        return Counter(v.wt.depth for v in self.vertices)

    def counts_by_weight(self) -> Counter:
        return Counter(v.wt for v in self.vertices)


# ---------------------------------------------------------------- monomials


def _mono_get(m: dict, i: int, n: int) -> int:
    return m.get((i, n), 0)


def _orientation_c(cd: CartanData, orientation: Optional[Iterable[tuple[int, int]]]) -> dict[tuple[int, int], int]:
    n = cd.rank
    c = {}
    if orientation is None:
        orientation = [(i, j) for i in range(n) for j in range(i + 1, n) if cd.C[i][j]]
    for i, j in orientation:
        c[(i, j)] = 0
        c[(j, i)] = 1
    for i in range(n):
        for j in range(n):
            if i != j and cd.C[i][j] and (i, j) not in c:
                raise ValueError(f"orientation does not cover the edge {i}-{j}")
    return c


class MonomialModel:
    def __init__(self, cd: CartanData, orientation=None):
        self.cd = cd
        self.c = _orientation_c(cd, orientation)

    def A(self, i: int, n: int) -> dict:
        out = {(i, n): 1, (i, n + 1): 1}
        for j in self.cd.indices:
            if j != i and self.cd.C[j][i]:
                key = (j, n + self.c[(j, i)])
                out[key] = out.get(key, 0) + self.cd.C[j][i]
        return out

    @staticmethod
    def _mul(m: dict, a: dict, sign: int) -> dict:
        out = dict(m)
        for k, x in a.items():
            y = out.get(k, 0) + sign * x
            if y:
                out[k] = y
            else:
                out.pop(k, None)
        return out

    @staticmethod
    def _sums(m: dict, i: int) -> list[tuple[int, int]]:
        ns = sorted(n for (j, n) in m if j == i)
        out, s = [], 0
        for n in ns:
            s += m[(i, n)]
            out.append((n, s))
        return out

    def phi(self, m: dict, i: int) -> int:
        return max([0] + [s for _, s in self._sums(m, i)])

    def wt_coord(self, m: dict, i: int) -> int:
        return sum(x for (j, _), x in m.items() if j == i)

    def eps(self, m: dict, i: int) -> int:
        return self.phi(m, i) - self.wt_coord(m, i)

    def f(self, m: dict, i: int) -> Optional[dict]:
        sums = self._sums(m, i)
        p = max([0] + [s for _, s in sums])
        if p <= 0:
            return None
        nf = min(n for n, s in sums if s == p)
        return self._mul(m, self.A(i, nf), -1)

    def e(self, m: dict, i: int) -> Optional[dict]:
        sums = self._sums(m, i)
        p = max([0] + [s for _, s in sums])
        if p - self.wt_coord(m, i) <= 0:
            return None
        # S is constant between variables, so the last maximizing integer sits
        # just before the variable following the last maximizing one
        k = max((k for k, (_, s) in enumerate(sums) if s == p), default=-1)
        ne = sums[k + 1][0] - 1
        return self._mul(m, self.A(i, ne), 1)


def _freeze(m: dict) -> Monomial:
    return tuple(sorted(m.items()))


def build_crystal(
    cd: CartanData,
    lam: Weight,
    depth: Optional[int] = None,
    orientation: Optional[Iterable[tuple[int, int]]] = None,
) -> CrystalGraph:
    """B(lam) by breadth-first search with the f operators, truncated to depth height ``<= depth``."""
    if not is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    if depth is None and not cd.is_finite_type():
        raise ValueError("non-finite type needs an explicit depth window")
    model = MonomialModel(cd, orientation)
    n = cd.rank
    top = {(i, 0): lam.coords[i] for i in cd.indices if lam.coords[i]}
    ids: dict[Monomial, int] = {}
    data: list[tuple[dict, tuple[int, ...]]] = []
    f: dict[tuple[int, int], int] = {}
    key = _freeze(top)
    ids[key] = 0
    data.append((top, (0,) * n))
    queue = deque([0])
    complete = True
    while queue:
        v = queue.popleft()
        m, nu = data[v]
        for i in cd.indices:
            t = model.f(m, i)
            if t is None:
                continue
            tnu = tuple(x + (k == i) for k, x in enumerate(nu))
            if depth is not None and sum(tnu) > depth:
                complete = False
                continue
            tk = _freeze(t)
            if tk not in ids:
                ids[tk] = len(data)
                data.append((t, tnu))
                queue.append(ids[tk])
            f[(v, i)] = ids[tk]
    verts = []
    for vid, (m, nu) in enumerate(data):
        verts.append(
            CrystalVertex(
                vid,
                cd.lower(lam, nu),
                tuple(model.eps(m, i) for i in cd.indices),
                tuple(model.phi(m, i) for i in cd.indices),
                _freeze(m),
            )
        )
    B = CrystalGraph(cd, verts, f, [0], complete, depth)
    B.model = model  # type: ignore[attr-defined]
    return B


# ------------------------------------------------------------------ tensor


def _same_cd(a: CartanData, b: CartanData) -> bool:
    return a.C == b.C and a.s == b.s


def tensor_crystal(B1: CrystalGraph, B2: CrystalGraph) -> CrystalGraph:
    if not _same_cd(B1.cd, B2.cd):
        raise CartanMismatch("crystals over different Cartan data")
    if not (B1.complete and B2.complete):
        raise ValueError("tensor products need complete crystals")
    cd = B1.cd
    n2 = len(B2.vertices)

    def pid(a: int, b: int) -> int:
        return a * n2 + b

    verts = []
    for v1 in B1.vertices:
        for v2 in B2.vertices:
            eps = tuple(max(v1.eps[i], v2.eps[i] - v1.wt.coords[i]) for i in cd.indices)
            phi = tuple(max(v2.phi[i], v1.phi[i] + v2.wt.coords[i]) for i in cd.indices)
            verts.append(CrystalVertex(pid(v1.id, v2.id), v1.wt + v2.wt, eps, phi, ("tensor", v1.id, v2.id)))
    f = {}
    for v1 in B1.vertices:
        for v2 in B2.vertices:
            for i in cd.indices:
                if v1.phi[i] > v2.eps[i]:
                    t = B1.f_op(v1.id, i)
                    if t is not None:
                        f[(pid(v1.id, v2.id), i)] = pid(t, v2.id)
                else:
                    t = B2.f_op(v2.id, i)
                    if t is not None:
                        f[(pid(v1.id, v2.id), i)] = pid(v1.id, t)
    highest = [v.id for v in verts if not any(v.eps)]
    return CrystalGraph(cd, verts, f, highest, True, None)


def tensor_e(B1: CrystalGraph, B2: CrystalGraph, a: int, b: int, i: int) -> Optional[tuple[int, int]]:
    """e_i on b1 (x) b2 by the rule paired with :func:`tensor_crystal`."""
    v1, v2 = B1.vertices[a], B2.vertices[b]
    if v1.phi[i] >= v2.eps[i]:
        t = B1.e_op(a, i)
        return None if t is None else (t, b)
    t = B2.e_op(b, i)
    return None if t is None else (a, t)


def decompose_by_highest_weight(B: CrystalGraph) -> Counter:
    return Counter(v.wt for v in B.vertices if not any(v.eps))


def string_data(B: CrystalGraph, v: int, i: int) -> tuple[int, int, int]:
    """(eps, phi, top of the i-string through v)."""
    vert = B.vertices[v]
    top = v
    while True:
        t = B.e_op(top, i)
        if t is None:
            break
        top = t
    return vert.eps[i], vert.phi[i], top


# ---------------------------------------------------------------- folding


def folded_cartan(cd: CartanData, perm: Sequence[int]) -> tuple[CartanData, list[tuple[int, ...]]]:
    """Folded GCM: c'_IJ = sum_{j in J} c_ij for any i in I; orbits in order of first member."""
    orbits = _orbits(perm)
    sizes = [len(o) for o in orbits]
    m = len(orbits)
    C = [[sum(cd.C[orbits[I][0]][j] for j in orbits[J]) for J in range(m)] for I in range(m)]
    return validate_cartan(C, sizes), orbits


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        orb, j = [], i
        while j not in seen:
            seen.add(j)
            orb.append(j)
            j = perm[j]
        out.append(tuple(orb))
    return out


def _act(perm: Sequence[int], mono: Monomial) -> Monomial:
    return tuple(sorted(((perm[i], n), x) for (i, n), x in mono))


def fold_crystal(Bhat: CrystalGraph, perm: Sequence[int], folded_cd: Optional[CartanData] = None) -> CrystalGraph:
    """Fixed points of the induced action, with orbit-product operators.

    Folded weights and depths take the value of any orbit member (they agree
    on fixed vertices).
    """
    cd = Bhat.cd
    if sorted(perm) != list(cd.indices):
        raise ValueError("perm must be a permutation of the index set")
    fcd, orbits = folded_cartan(cd, perm)
    if folded_cd is not None:
        if not _same_cd(fcd, folded_cd):
            raise CartanMismatch("the supplied folded datum differs from the computed one")
        fcd = folded_cd
    for (i, j) in [(i, j) for i in cd.indices for j in cd.indices if cd.C[i][j] != cd.C[perm[i]][perm[j]]]:
        raise ValueError(f"perm is not a diagram automorphism at ({i},{j})")
    identity = all(perm[i] == i for i in cd.indices)

    def fixed(v: CrystalVertex) -> bool:
        if identity:
            return True
        if not (isinstance(v.payload, tuple) and all(isinstance(t, tuple) and len(t) == 2 for t in v.payload)):
            raise TypeError("folding needs monomial payloads")
        return _act(perm, v.payload) == v.payload

    top = Bhat.vertices[Bhat.highest[0]]
    if not fixed(top):
        raise NonInvariantHighestWeight("the highest-weight vertex is not fixed by the automorphism")
    keep = [v for v in Bhat.vertices if fixed(v)]
    new_id = {v.id: k for k, v in enumerate(keep)}
    verts, f = [], {}
    for v in keep:
        eps, phi, coords, dep = [], [], [], []
        for I, orb in enumerate(orbits):
            es = {v.eps[k] for k in orb}
            ps = {v.phi[k] for k in orb}
            if len(es) != 1 or len(ps) != 1:
                raise OrbitOperatorMismatch(f"string data differ along orbit {orb} at vertex {v.id}")
            eps.append(es.pop())
            phi.append(ps.pop())
            coords.append(v.wt.coords[orb[0]])
            if v.wt.depth is not None:
                dep.append(v.wt.depth[orb[0]])
        wt = Weight(tuple(coords), tuple(dep) if v.wt.depth is not None else None)
        verts.append(CrystalVertex(new_id[v.id], wt, tuple(eps), tuple(phi), ("folded", v.id)))
        for I, orb in enumerate(orbits):
            cur: Optional[int] = v.id
            for k in orb:
                cur = Bhat.f_op(cur, k)
                if cur is None:
                    break
            if cur is not None:
                if cur not in new_id:
                    raise OrbitOperatorMismatch(f"orbit operator leaves the fixed locus at vertex {v.id}")
                f[(new_id[v.id], I)] = new_id[cur]
    highest = [new_id[top.id]]
    return CrystalGraph(fcd, verts, f, highest, Bhat.complete, Bhat.window)


# ------------------------------------------------------------ isomorphism


def _components(B: CrystalGraph) -> list[list[int]]:
    """Connected components, each listed from its first highest vertex (or least id)."""
    seen: set[int] = set()
    out = []
    hw = sorted(v.id for v in B.vertices if not any(v.eps))
    order = hw + [v.id for v in B.vertices]
    for start in order:
        if start in seen:
            continue
        comp, queue = [], deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for i in B.cd.indices:
                for t in (B.f_op(v, i), B.e_op(v, i)):
                    if t is not None and t not in seen:
                        seen.add(t)
                        queue.append(t)
        out.append(comp)
    return out


def _key(v: CrystalVertex, by: str):
    if by == "coords":
        return v.wt.coords
    if by == "depth":
        return v.wt.depth
    raise ValueError(by)


def _try_map(B1, B2, r1: int, r2: int, by: str, check_phi: bool) -> Optional[dict[int, int]]:
    idx = B1.cd.indices
    m = {r1: r2}
    used = {r2}
    queue = deque([r1])
    while queue:
        a = queue.popleft()
        b = m[a]
        va, vb = B1.vertices[a], B2.vertices[b]
        if _key(va, by) != _key(vb, by) or va.eps != vb.eps or (check_phi and va.phi != vb.phi):
            return None
        for i in idx:
            for op1, op2 in ((B1.f_op, B2.f_op), (B1.e_op, B2.e_op)):
                ta, tb = op1(a, i), op2(b, i)
                if (ta is None) != (tb is None):
                    return None
                if ta is None:
                    continue
                if ta in m:
                    if m[ta] != tb:
                        return None
                else:
                    if tb in used:
                        return None
                    m[ta] = tb
                    used.add(tb)
                    queue.append(ta)
    return m


def crystal_isomorphic(B1: CrystalGraph, B2: CrystalGraph, by: str = "coords") -> Optional[dict[int, int]]:
    """Edge-, weight- and string-preserving bijection, or None.

    ``by="depth"`` compares vertices by their depth below the highest weight
    instead of the weight itself (and ignores phi), which is what comparing
    windows of B(lam) for different lam needs.
    """
    if B1.cd.C != B2.cd.C or len(B1) != len(B2):
        return None
    check_phi = by == "coords"
    comps1, comps2 = _components(B1), _components(B2)
    if sorted(map(len, comps1)) != sorted(map(len, comps2)):
        return None
    free = list(range(len(comps2)))
    out: dict[int, int] = {}
    for c1 in comps1:
        hit = None
        for k in free:
            c2 = comps2[k]
            if len(c2) != len(c1):
                continue
            m = _try_map(B1, B2, c1[0], c2[0], by, check_phi)
            if m is not None and len(m) == len(c1):
                hit = (k, m)
                break
        if hit is None:
            return None
        free.remove(hit[0])
        out.update(hit[1])
    return out


# ------------------------------------------------------------ verification


def verify_crystal_axioms(B: CrystalGraph) -> dict:
    cd = B.cd
    fails = []
    checks = 0
    for v in B.vertices:
        for i in cd.indices:
            checks += 1
            if v.phi[i] - v.eps[i] != v.wt.coords[i]:
                fails.append({"vertex": v.id, "i": i, "axiom": "phi - eps = <i, wt>"})
            if v.eps[i] < 0:
                fails.append({"vertex": v.id, "i": i, "axiom": "eps >= 0"})
            t = B.f_op(v.id, i)
            if t is not None:
                w = B.vertices[t]
                want = v.wt - cd.simple_root(i)
                if w.wt.coords != want.coords:
                    fails.append({"vertex": v.id, "i": i, "axiom": "f lowers wt by alpha_i"})
                if w.eps[i] != v.eps[i] + 1 or w.phi[i] != v.phi[i] - 1:
                    fails.append({"vertex": v.id, "i": i, "axiom": "string positions"})
                if B.e_op(t, i) != v.id:
                    fails.append({"vertex": v.id, "i": i, "axiom": "e inverts f"})
            elif B.complete and v.phi[i] != 0:
                fails.append({"vertex": v.id, "i": i, "axiom": "f undefined iff phi = 0"})
            if B.e_op(v.id, i) is None and v.eps[i] != 0:
                if B.complete or v.wt.depth is None or sum(v.wt.depth) == 0:
                    fails.append({"vertex": v.id, "i": i, "axiom": "e undefined iff eps = 0"})
    return {"relation": "crystal axioms", "checks": checks, "ok": not fails, "failures": fails[:10]}


def crystal_to_dot(B: CrystalGraph, name: str = "crystal") -> str:
    lines = [f"digraph {name} {{", f'  label="{MONOMIAL}";']
    for v in B.vertices:
        lines.append(f'  v{v.id} [label="{v.wt}"];')
    for a, i, b in B.edges():
        lines.append(f'  v{a} -> v{b} [label="{B.cd.labels[i]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
