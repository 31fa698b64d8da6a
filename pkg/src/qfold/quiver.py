"""Quivers with admissible automorphisms, framings, and the round trip to Cartan data.

Layout produced by :func:`fold_from_cartan` (tag ``LAYOUT``):

* the orbit of index ``i`` is ``{(i, r) : 0 <= r < s_i}`` and ``a`` sends
  ``(i, r)`` to ``(i, r + 1 mod s_i)``;
* for ``i < j`` with ``c_ij != 0`` there are ``N = -c_ij * s_i`` arrows,
  split into ``N / lcm(s_i, s_j)`` blocks; block ``t`` holds the arrows
  ``(i, r mod s_i) -> (j, (r + t) mod s_j)`` for ``0 <= r < lcm``;
* arrows point from the lower-indexed orbit to the higher one, and ``a``
  shifts ``r`` by one inside each block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Hashable, Mapping, Optional, Sequence

from .cartan import CartanData, Weight, validate_cartan

LAYOUT = "orbit-cyclic-blocks/v1"


class NonIntegerEntry(ValueError):
    pass


class NonInvariantFraming(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


@dataclass(frozen=True)
class QuiverWithAut:
    """Quiver with orientation and an automorphism.

    ``arrows`` lists the oriented arrows (the orientation); the full arrow
    set doubles it, with arrow ``2k`` the k-th oriented arrow and ``2k+1``
    its reverse, so the bar involution is ``h ^ 1``.
    """

    vertices: tuple[Hashable, ...]
    arrows: tuple[tuple[Hashable, Hashable], ...]
    vertex_aut: Mapping[Hashable, Hashable]
    arrow_aut: tuple[int, ...]  # permutation of the doubled arrow indices
    layout: str = "custom"

    def all_arrows(self) -> list[tuple[Hashable, Hashable]]:
        out = []
        for src, tgt in self.arrows:
            out.append((src, tgt))
            out.append((tgt, src))
        return out

    def orbits(self) -> list[tuple[Hashable, ...]]:
        """Vertex orbits ordered by their first vertex in ``vertices``."""
        seen = set()
        out = []
        for v in self.vertices:
            if v in seen:
                continue
            orb = [v]
            seen.add(v)
            w = self.vertex_aut[v]
            while w != v and w not in seen:
                orb.append(w)
                seen.add(w)
                w = self.vertex_aut[w]
            out.append(tuple(orb))
        return out

    def orbit_index(self) -> dict[Hashable, int]:
        return {v: k for k, orb in enumerate(self.orbits()) for v in orb}

    def order(self) -> int:
        o = 1
        for orb in self.orbits():
            o = lcm(o, len(orb))
        # arrow cycles may in principle be longer than vertex cycles
        seen = set()
        for h in range(len(self.arrow_aut)):
            if h in seen:
                continue
            n, g = 0, h
            while True:
                seen.add(g)
                g = self.arrow_aut[g]
                n += 1
                if g == h or n > len(self.arrow_aut):
                    break
            o = lcm(o, n)
        return o

    def unfolded_cartan(self) -> CartanData:
        """Symmetric GCM of the underlying graph: -(number of arrows) off the diagonal."""
        idx = {v: k for k, v in enumerate(self.vertices)}
        n = len(self.vertices)
        C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for src, tgt in self.arrows:
            i, j = idx[src], idx[tgt]
            if i == j:
                raise NotAdmissible("quiver has a loop")
            C[i][j] -= 1
            C[j][i] -= 1
        return validate_cartan(C, [1] * n, labels=[str(v) for v in self.vertices])

    def vertex_permutation(self) -> tuple[int, ...]:
        idx = {v: k for k, v in enumerate(self.vertices)}
        return tuple(idx[self.vertex_aut[v]] for v in self.vertices)


@dataclass(frozen=True)
class FramedQuiver:
    base: QuiverWithAut
    N: int
    framing: tuple[tuple[int, ...], ...]  # framing[k][orbit] = omega^k on that orbit
    vertices: tuple[Hashable, ...] = field(default=())
    arrows: tuple[tuple[Hashable, Hashable], ...] = field(default=())

    def weights(self) -> list[Weight]:
        """Dominant weights lambda^k = sum_orbit omega^k_orbit * beta_orbit."""
        return [Weight(tuple(w)) for w in self.framing]


def _vertex_name(v: Hashable) -> str:
    if isinstance(v, tuple):
        return "_".join(str(x) for x in v)
    return str(v)


def fold_from_cartan(cd: CartanData) -> QuiverWithAut:
    vertices = [(i, r) for i in cd.indices for r in range(cd.s[i])]
    vaut = {(i, r): (i, (r + 1) % cd.s[i]) for (i, r) in vertices}
    arrows: list[tuple] = []
    arrow_aut: list[int] = []
    for i in cd.indices:
        for j in cd.indices:
            if j <= i or cd.C[i][j] == 0:
                continue
            si, sj = cd.s[i], cd.s[j]
            N = -cd.C[i][j] * si
            L = lcm(si, sj)
            for t in range(N // L):
                base = len(arrows)
                for r in range(L):
                    arrows.append(((i, r % si), (j, (r + t) % sj)))
                for r in range(L):
                    nxt = base + (r + 1) % L
                    arrow_aut.append(2 * nxt)
                    arrow_aut.append(2 * nxt + 1)
    return QuiverWithAut(tuple(vertices), tuple(arrows), vaut, tuple(arrow_aut), LAYOUT)


def validate_admissible(q: QuiverWithAut) -> dict:
    """Check every structural clause; returns ``{"ok": bool, "violations": {clause: [...]}}``."""
    H = q.all_arrows()
    a = q.vertex_aut
    ah = q.arrow_aut
    viol: dict[str, list] = {
        "vertex_aut_bijective": [],
        "arrow_aut_bijective": [],
        "compatible_with_source_target": [],
        "ends_in_distinct_orbits": [],
        "preserves_orientation": [],
        "commutes_with_bar": [],
        "finite_order": [],
    }
    verts = set(q.vertices)
    if set(a) != verts or set(a.values()) != verts:
        viol["vertex_aut_bijective"].append("automorphism is not a permutation of the vertices")
    if sorted(ah) != list(range(len(H))):
        viol["arrow_aut_bijective"].append("automorphism is not a permutation of the arrows")
        return {"ok": False, "violations": {k: v for k, v in viol.items() if v}}
    for h, (src, tgt) in enumerate(H):
        g = ah[h]
        if H[g][0] != a.get(src) or H[g][1] != a.get(tgt):
            viol["compatible_with_source_target"].append(h)
        if (h % 2 == 0) != (g % 2 == 0):
            viol["preserves_orientation"].append(h)
        if ah[h ^ 1] != g ^ 1:
            viol["commutes_with_bar"].append(h)
    if not viol["vertex_aut_bijective"]:
        orb = q.orbit_index()
        for h, (src, tgt) in enumerate(H):
            if h % 2 == 0 and orb[src] == orb[tgt]:
                viol["ends_in_distinct_orbits"].append(h)
        o = q.order()
        for v in q.vertices:
            w = v
            for _ in range(o):
                w = a[w]
            if w != v:
                viol["finite_order"].append(v)
    bad = {k: v for k, v in viol.items() if v}
    return {"ok": not bad, "violations": bad}


def cartan_from_quiver(q: QuiverWithAut) -> CartanData:
    rep = validate_admissible(q)
    if not rep["ok"]:
        raise NotAdmissible(f"quiver fails admissibility: {sorted(rep['violations'])}")
    orbits = q.orbits()
    orb = q.orbit_index()
    m = len(orbits)
    counts = [[0] * m for _ in range(m)]
    for src, tgt in q.arrows:
        i, j = orb[src], orb[tgt]
        counts[i][j] += 1
        counts[j][i] += 1
    sizes = [len(o) for o in orbits]
    C = [[2] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j:
                if counts[i][j] % sizes[i]:
                    raise NonIntegerEntry(
                        f"{counts[i][j]} arrows between orbits {i},{j} not divisible by orbit size {sizes[i]}"
                    )
                C[i][j] = -counts[i][j] // sizes[i]
    return validate_cartan(C, sizes)


def frame(q: QuiverWithAut, N: int, omega: Sequence[Mapping[Hashable, int] | Sequence[int]]) -> FramedQuiver:
    if N < 1 or len(omega) != N:
        raise ValueError("need one dimension vector per framing copy")
    orbits = q.orbits()
    framing = []
    for k, w in enumerate(omega):
        if isinstance(w, Mapping):
            vals = {v: int(w.get(v, 0)) for v in q.vertices}
        else:
            if len(w) != len(q.vertices):
                raise ValueError("dimension vector length does not match the vertex count")
            vals = {v: int(x) for v, x in zip(q.vertices, w)}
        if any(x < 0 for x in vals.values()):
            raise ValueError("dimension vectors are nonnegative")
        per_orbit = []
        for orb in orbits:
            got = {vals[v] for v in orb}
            if len(got) != 1:
                raise NonInvariantFraming(f"framing {k + 1} varies along orbit {orb}")
            per_orbit.append(got.pop())
        framing.append(tuple(per_orbit))
    verts = tuple(q.vertices) + tuple((v, "frame", k + 1) for k in range(N) for v in q.vertices)
    arrows = tuple(q.arrows) + tuple((v, (v, "frame", k + 1)) for k in range(N) for v in q.vertices)
    return FramedQuiver(q, N, tuple(framing), verts, arrows)


def framing_vector(q: QuiverWithAut, orbit_values: Sequence[int]) -> tuple[int, ...]:
    """Expand per-orbit values to an a-invariant vertex vector."""
    orb = q.orbit_index()
    return tuple(orbit_values[orb[v]] for v in q.vertices)


def to_dot(q: QuiverWithAut, name: str = "quiver", framed: Optional[FramedQuiver] = None) -> str:
    orb = q.orbit_index()
    lines = [f"digraph {name} {{", f'  label="{q.layout}";']
    verts = framed.vertices if framed else q.vertices
    arrows = framed.arrows if framed else q.arrows
    for v in verts:
        if v in orb:
            lines.append(f'  "{_vertex_name(v)}" [label="{_vertex_name(v)}", orbit={orb[v]}];')
        else:
            lines.append(f'  "{_vertex_name(v)}" [shape=box];')
    for src, tgt in arrows:
        lines.append(f'  "{_vertex_name(src)}" -> "{_vertex_name(tgt)}";')
    seen = set()
    for v in q.vertices:
        w = q.vertex_aut[v]
        if v != w and (v, w) not in seen:
            seen.add((v, w))
            lines.append(f'  "{_vertex_name(v)}" -> "{_vertex_name(w)}" [style=dashed, color=gray, constraint=false];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def a2_swap() -> QuiverWithAut:
    """Two vertices, one arrow, automorphism swapping the ends (not admissible)."""
    return QuiverWithAut(("x", "y"), (("x", "y"),), {"x": "y", "y": "x"}, (1, 0))
