"""Contravariant forms on modules and tensor products, and almost-orthogonality."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .arith import NotExpandable, RatFunc, expand_vinv
from .linalg import Mat, kron
from .module import HWModule


@dataclass
class GramTable:
    """Per-weight Gram matrices in a fixed basis; distinct weights are orthogonal."""

    blocks: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)  # weight key -> basis labels

    def entry(self, key, r: int, c: int) -> RatFunc:
        return self.blocks[key][r, c]


def contravariant_form(M: HWModule) -> GramTable:
    return GramTable(
        {nu: sp.gram for nu, sp in M.spaces.items()},
        {nu: list(sp.basis) for nu, sp in M.spaces.items()},
    )


def tensor_form(T) -> GramTable:
    """Product form on the product basis of a tensor module, one block per total weight."""
    blocks, labels = {}, {}
    for nu in T.space.weights():
        mats = []
        for comp in T.space.comps[nu]:
            g = None
            for M, c in zip(T.space.factors, comp):
                gm = M.gram(c)
                g = gm if g is None else kron(g, gm)
            mats.append(g)
        blocks[nu] = _block_diag(mats, T.space.d)
        labels[nu] = [c for c in T.space.comps[nu] for _ in range(T.space.comp_dim(c))]
    return GramTable(blocks, labels)


def _block_diag(mats: list[Mat], d: int) -> Mat:
    n = sum(m.rows for m in mats)
    out = Mat.zeros(n, n, d)
    off = 0
    for m in mats:
        for r in range(m.rows):
            for c in range(m.cols):
                out.data[off + r][off + c] = m[r, c]
        off += m.rows
    return out


def classify_entry(x: RatFunc, order: int) -> str:
    return expand_vinv(x, order).classify()


def almost_orthogonality(G: GramTable, pairs: Optional[Iterable] = None, order: Optional[int] = None) -> dict:
    """Classify pairings as unit / small / other via their v^-1 expansions.

    ``pairs`` is an iterable of ``(key, r, c)``; by default every entry of
    every block.  Off-diagonal entries must be small and diagonal entries
    units for the verdict.
    """
    if pairs is None:
        pairs = [(k, r, c) for k, m in G.blocks.items() for r in range(m.rows) for c in range(m.cols)]
    if order is None:
        h = max((sum(k) if isinstance(k, tuple) else 0 for k in G.blocks), default=0)
        order = 2 * h + 4
    classes = []
    ok = True
    for key, r, c in pairs:
        try:
            cls = classify_entry(G.entry(key, r, c), order)
        except NotExpandable:
            cls = "not expandable"
        want = "unit" if r == c else "small"
        if cls != want:
            ok = False
        classes.append({"weight": list(key) if isinstance(key, tuple) else key, "row": r, "col": c, "class": cls})
    return {"almost_orthogonal": ok, "order": order, "entries": classes}
