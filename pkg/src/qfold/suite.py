"""The acceptance suite: twelve checks, each returning a JSON-ready report.

Every ``criterion_k`` returns ``{"id", "title", "ok", "details"}`` plus an
``elapsed`` entry in seconds that callers may drop for byte-stable output.
"""

from __future__ import annotations

import time
from collections import Counter
from functools import lru_cache
from itertools import product
from typing import Callable, Optional

from .arith import RatFunc, qint
from .cartan import CartanData, named, validate_cartan
from .crystal import (
    build_crystal,
    crystal_isomorphic,
    decompose_by_highest_weight,
    fold_crystal,
    tensor_crystal,
    verify_crystal_axioms,
)
from .forms import almost_orthogonality, contravariant_form
from .module import (
    HWModule,
    build_module,
    verify_contravariance,
    verify_defining_relations,
    verify_divided_power_relation,
    verify_EF_commutation,
)
from .oracle import full_character, real_positive_roots, weyl_dim
from .quiver import a2_swap, cartan_from_quiver, fold_from_cartan, framing_vector, validate_admissible
from .tensor import (
    TensorModule,
    braiding,
    compute_theta,
    decompose_tensor_module,
    verify_braiding,
    verify_product_form,
    verify_psi,
    verify_yang_baxter,
)

# (datum, fundamental-weight coordinates, depth window or None)
SUITE_MODULES: list[tuple[str, tuple[int, ...], Optional[int]]] = [
    ("A1", (1,), None),
    ("A1", (2,), None),
    ("A1", (3,), None),
    ("A2", (1, 0), None),
    ("A2", (1, 1), None),
    ("C2", (1, 0), None),
    ("C2", (0, 1), None),
    ("C2", (1, 1), None),
    ("G2", (0, 1), None),
    ("G2", (1, 0), None),
    ("B3", (1, 0, 0), None),
    ("B3", (0, 0, 1), None),
    ("A1~", (1, 0), 4),
    ("A1~", (1, 1), 4),
]

# criterion 4/5 instances; both C2 fundamentals plus their sum
CHARACTER_INSTANCES = [
    ("C2", (1, 0), None),
    ("C2", (0, 1), None),
    ("C2", (1, 1), None),
    ("G2", (0, 1), None),
    ("A1~", (1, 0), 4),
]

TENSOR_PAIRS = [
    ("A1", (1,), (1,)),
    ("A1", (2,), (1,)),
    ("C2", (1, 0), (1, 0)),
    ("C2", (1, 0), (0, 1)),
    ("C2", (0, 1), (0, 1)),
]


def _label(name, lam, depth=None) -> str:
    s = f"{name} {list(lam)}"
    return s if depth is None else s + f" depth {depth}"


@lru_cache(maxsize=None)
def suite_module(name: str, lam: tuple[int, ...], depth: Optional[int]) -> HWModule:
    cd = named(name)
    return build_module(cd, cd.weight(lam), depth)


def _timed(fn: Callable[[], dict]) -> dict:
    t = time.perf_counter()
    out = fn()
    out["elapsed"] = round(time.perf_counter() - t, 3)
    return out


def _failing(reports: list[dict]) -> list[dict]:
    return [{"relation": r["relation"], "failures": r["failures"][:3]} for r in reports if not r["ok"]]


# --------------------------------------------------------------------- 1


def criterion_1(budget: float = 60.0) -> dict:
    def run():
        t0 = time.perf_counter()
        per = {}
        bad = {}
        for name, lam, depth in SUITE_MODULES:
            cd = named(name)
            M = build_module(cd, cd.weight(lam), depth)  # fresh build so the budget covers construction
            reps = verify_defining_relations(M)
            per[_label(name, lam, depth)] = {r["relation"]: r["checks"] for r in reps}
            if _failing(reps):
                bad[_label(name, lam, depth)] = _failing(reps)
        took = time.perf_counter() - t0
        return {
            "id": 1,
            "title": "defining relations",
            "ok": not bad and took < budget,
            "details": {"checks": per, "failures": bad, "within_budget": took < budget, "budget_s": budget},
        }

    return _timed(run)


# --------------------------------------------------------------------- 2


def quantum_integer_quotient(n: int, s: int) -> RatFunc:
    """(v^(sn) - v^(-sn)) / (v^s - v^(-s)) computed as a field quotient."""
    num = RatFunc.vpow(s * n, 1) - RatFunc.vpow(-s * n, 1)
    den = RatFunc.vpow(s, 1) - RatFunc.vpow(-s, 1)
    return num / den


def criterion_2() -> dict:
    def run():
        bad = {}
        checks = 0
        for name, lam, depth in SUITE_MODULES:
            M = suite_module(name, lam, depth)
            for i in M.cd.indices:
                for n in (1, 2, 3):
                    r = verify_divided_power_relation(M, i, n)
                    checks += r["checks"]
                    if not r["ok"]:
                        bad.setdefault(_label(name, lam, depth), []).append(r["relation"])
        scalar_bad = []
        for n in range(1, 7):
            for s in (1, 2, 3):
                total = RatFunc(0)
                for r in range(n):
                    total = total + RatFunc.vpow(s * (n - 1 - 2 * r), 1)
                want = quantum_integer_quotient(n, s)
                if total != want or RatFunc(qint(n, s)) != want:
                    scalar_bad.append([n, s])
        return {
            "id": 2,
            "title": "divided powers",
            "ok": not bad and not scalar_bad,
            "details": {"module_checks": checks, "failures": bad, "scalar_failures": scalar_bad, "scalar_cases": 18},
        }

    return _timed(run)


# --------------------------------------------------------------------- 3


def criterion_3() -> dict:
    def run():
        bad = {}
        checks = 0
        for name, lam, depth in SUITE_MODULES:
            M = suite_module(name, lam, depth)
            for i in M.cd.indices:
                for n in (1, 2, 3):
                    r = verify_EF_commutation(M, i, n)
                    checks += r["checks"]
                    if not r["ok"]:
                        bad.setdefault(_label(name, lam, depth), []).append(
                            {"relation": r["relation"], "failures": r["failures"][:3]}
                        )
        return {"id": 3, "title": "E^(n)F commutation", "ok": not bad, "details": {"checks": checks, "failures": bad}}

    return _timed(run)


# --------------------------------------------------------------------- 4


def criterion_4() -> dict:
    def run():
        rows = {}
        ok = True
        for name, lam, depth in CHARACTER_INSTANCES:
            cd = named(name)
            M = suite_module(name, lam, depth)
            got = M.character().by_depth()
            ref = full_character(cd, cd.weight(lam), depth).by_depth()
            row = {"dim": M.total_dim(), "matches_freudenthal": got == ref}
            ok &= got == ref
            if depth is None:
                w = weyl_dim(cd, cd.weight(lam))
                row["weyl_dim"] = w
                ok &= w == M.total_dim()
            rows[_label(name, lam, depth)] = row
        return {"id": 4, "title": "characters", "ok": ok, "details": rows}

    return _timed(run)


# --------------------------------------------------------------------- 5


def criterion_5() -> dict:
    def run():
        rows = {}
        ok = True
        for name, lam, depth in CHARACTER_INSTANCES:
            cd = named(name)
            B = build_crystal(cd, cd.weight(lam), depth)
            M = suite_module(name, lam, depth)
            same = Counter(B.counts_by_depth()) == Counter(M.character().by_depth())
            axioms = verify_crystal_axioms(B)["ok"]
            rows[_label(name, lam, depth)] = {"crystal": len(B), "module": M.total_dim(), "same_counts": same, "axioms": axioms}
            ok &= same and axioms
        return {"id": 5, "title": "crystal vs module", "ok": ok, "details": rows}

    return _timed(run)


# --------------------------------------------------------------------- 6


def dominant_weights_up_to(cd: CartanData, bound: int) -> list[tuple[int, ...]]:
    """All dominant lam with dim L(lam) <= bound (dimension grows in every coordinate)."""
    out = []
    frontier = [(0,) * cd.rank]
    seen = set(frontier)
    while frontier:
        nxt = []
        for lam in frontier:
            if weyl_dim(cd, cd.weight(lam)) > bound:
                continue
            out.append(lam)
            for i in cd.indices:
                mu = tuple(x + (k == i) for k, x in enumerate(lam))
                if mu not in seen:
                    seen.add(mu)
                    nxt.append(mu)
        frontier = nxt
    return sorted(out)


def fold_check(cd: CartanData, lam: tuple[int, ...]) -> dict:
    q = fold_from_cartan(cd)
    ucd = q.unfolded_cartan()
    idx = {v: k for k, v in enumerate(q.vertices)}
    orientation = [(idx[a], idx[b]) for a, b in q.arrows]
    Bh = build_crystal(ucd, ucd.weight(framing_vector(q, lam)), orientation=orientation)
    Bf = fold_crystal(Bh, q.vertex_permutation(), cd)
    Bd = build_crystal(cd, cd.weight(lam))
    iso = crystal_isomorphic(Bf, Bd)
    return {"unfolded": len(Bh), "folded": len(Bf), "direct": len(Bd), "isomorphic": iso is not None}


def criterion_6(bound: int = 500) -> dict:
    def run():
        c2 = named("C2")
        lams = dominant_weights_up_to(c2, bound)
        rows = {str(list(lam)): fold_check(c2, lam) for lam in lams}
        g2 = fold_check(named("G2"), (0, 1))
        ok = all(r["isomorphic"] for r in rows.values()) and g2["isomorphic"] and g2["folded"] == 7
        failed = [k for k, r in rows.items() if not r["isomorphic"]]
        return {
            "id": 6,
            "title": "crystal folding",
            "ok": ok,
            "details": {"C2_weights": len(lams), "C2_failures": failed, "G2_short_via_D4": g2, "C2": rows},
        }

    return _timed(run)


# --------------------------------------------------------------------- 7


def _wkey(c: Counter) -> list:
    return sorted([list(w.coords), list(w.depth), m] for w, m in c.items())


def criterion_7() -> dict:
    def run():
        rows = {}
        ok = True
        for name, l1, l2 in TENSOR_PAIRS:
            cd = named(name)
            Bc = tensor_crystal(build_crystal(cd, cd.weight(l1)), build_crystal(cd, cd.weight(l2)))
            T = TensorModule([suite_module(name, l1, None), suite_module(name, l2, None)])
            crys = decompose_by_highest_weight(Bc)
            mod = decompose_tensor_module(T)
            rows[f"{name} {list(l1)} x {list(l2)}"] = {"crystal": _wkey(crys), "module": _wkey(mod), "equal": crys == mod}
            ok &= crys == mod
        return {"id": 7, "title": "tensor decomposition", "ok": ok, "details": rows}

    return _timed(run)


# --------------------------------------------------------------------- 8


def criterion_8() -> dict:
    def run():
        contra = {}
        for name, lam, depth in SUITE_MODULES:
            r = verify_contravariance(suite_module(name, lam, depth))
            contra[_label(name, lam, depth)] = r["ok"]
        prod = {}
        for name, l1, l2 in TENSOR_PAIRS:
            T = TensorModule([suite_module(name, l1, None), suite_module(name, l2, None)])
            prod[f"{name} {list(l1)} x {list(l2)}"] = verify_product_form(T)["ok"]
        sl2 = {}
        for n in range(7):
            rep = almost_orthogonality(contravariant_form(suite_module("A1", (n,), None)))
            sl2[str(n)] = rep["almost_orthogonal"]
        ok = all(contra.values()) and all(prod.values()) and all(sl2.values())
        return {
            "id": 8,
            "title": "contravariant forms",
            "ok": ok,
            "details": {"contravariance": contra, "product_form": prod, "sl2_almost_orthogonal": sl2},
        }

    return _timed(run)


# --------------------------------------------------------------------- 9

PSI_PAIRS = [("A1", (1,), (1,)), ("C2", (0, 1), (0, 1)), ("C2", (1, 0), (1, 0))]


def criterion_9() -> dict:
    def run():
        rows = {}
        for name, l1, l2 in PSI_PAIRS:
            T = TensorModule([suite_module(name, l1, None), suite_module(name, l2, None)])
            theta = compute_theta(T)
            rep = verify_psi(T, theta)
            rows[f"{name} {list(l1)} x {list(l2)}"] = {"dim": rep["dim"], "ok": rep["ok"], "failures": rep["failures"][:3]}
        return {"id": 9, "title": "Psi involution", "ok": all(r["ok"] for r in rows.values()), "details": rows}

    return _timed(run)


# --------------------------------------------------------------------- 10

YBE_TRIPLES = [("A1", (1,)), ("C2", (0, 1)), ("C2", (1, 0))]


def criterion_10(budget: float = 300.0) -> dict:
    def run():
        t0 = time.perf_counter()
        rows = {}
        for name, lam in YBE_TRIPLES:
            cd = named(name)
            M = suite_module(name, lam, None)
            rep = verify_yang_baxter(cd, [M, M, M])
            rows[f"{name} {list(lam)}^3"] = {"dim": rep["dim"], "ok": rep["ok"], "first_failure": rep["first_failure"]}
            # the braiding used inside must itself be an intertwiner
            T = TensorModule([M, M])
            br = braiding(T, T)
            rows[f"{name} {list(lam)}^3"]["braiding_ok"] = verify_braiding(T, T, br)["ok"]
        took = time.perf_counter() - t0
        ok = all(r["ok"] and r["braiding_ok"] for r in rows.values()) and took < budget
        return {"id": 10, "title": "Yang-Baxter", "ok": ok, "details": {"triples": rows, "within_budget": took < budget}}

    return _timed(run)


# --------------------------------------------------------------------- 11


def rank2_gcms(max_product: int = 4) -> list[CartanData]:
    out = []
    for a in range(1, max_product + 1):
        for b in range(1, max_product + 1):
            if a * b <= max_product:
                out.append(validate_cartan([[2, -a], [-b, 2]]))
    return out


def criterion_11() -> dict:
    def run():
        rows = {}
        ok = True
        cds = rank2_gcms() + [named("A1~")]
        for cd in cds:
            q = fold_from_cartan(cd)
            adm = validate_admissible(q)["ok"]
            back = cartan_from_quiver(q)
            same = back.C == cd.C and back.s == cd.s
            rows[str([list(r) for r in cd.C])] = {"admissible": adm, "round_trip": same, "vertices": len(q.vertices)}
            ok &= adm and same
        rej = validate_admissible(a2_swap())
        ok &= not rej["ok"]
        return {
            "id": 11,
            "title": "quiver round trip",
            "ok": ok,
            "details": {"gcms": rows, "a2_swap_rejected": not rej["ok"], "a2_swap_violations": sorted(rej["violations"])},
        }

    return _timed(run)


# --------------------------------------------------------------------- 12


def kostant_partition(cd: CartanData, nu: tuple[int, ...]) -> int:
    """Number of ways to write nu as a sum of positive roots (finite type)."""
    roots = sorted(real_positive_roots(cd))
    ways = {(0,) * cd.rank: 1}
    for r in roots:
        new = dict(ways)
        for v in sorted(product(*(range(x + 1) for x in nu)), key=sum):
            prev = tuple(a - b for a, b in zip(v, r))
            if all(x >= 0 for x in prev) and prev in new:
                new[v] = new.get(v, 0) + new[prev]
        ways = new
    return ways.get(tuple(nu), 0)


def criterion_12(height: int = 3) -> dict:
    def run():
        cd = named("C2")
        B3 = build_crystal(cd, cd.weight((3, 3)), height)
        B4 = build_crystal(cd, cd.weight((4, 4)), height)
        c3, c4 = B3.counts_by_depth(), B4.counts_by_depth()
        window = [nu for h in range(height + 1) for nu in product(range(h + 1), repeat=2) if sum(nu) == h]
        rows = {}
        ok = True
        for nu in window:
            k = kostant_partition(cd, nu)
            rows[str(list(nu))] = [c3.get(nu, 0), c4.get(nu, 0), k]
            ok &= c3.get(nu, 0) == c4.get(nu, 0)
        iso = crystal_isomorphic(B3, B4, by="depth") is not None
        kostant = all(a == k for a, _, k in rows.values())
        return {
            "id": 12,
            "title": "B(infinity) stabilization",
            "ok": ok and iso and kostant,
            "details": {"counts_3rho_4rho_kostant": rows, "window_isomorphic": iso, "matches_kostant": kostant},
        }

    return _timed(run)


CRITERIA: dict[int, Callable[[], dict]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
    12: criterion_12,
}


def run_criterion(k: int) -> dict:
    return CRITERIA[k]()


def run_all(jobs: int = 1) -> list[dict]:
    ids = sorted(CRITERIA)
    if jobs <= 1:
        return [run_criterion(k) for k in ids]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_criterion, ids))


def summary_line(rep: dict) -> str:
    return f"criterion {rep['id']:2d} {rep['title']}: {'PASS' if rep['ok'] else 'FAIL'}"
