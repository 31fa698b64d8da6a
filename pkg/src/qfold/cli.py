"""Batch driver.

    python3 -m qfold --config job.cfg [--command NAME] [--depth N] [--out DIR] [--jobs N]

Prints a JSON report (sorted keys) and writes ``report.json`` plus any DOT
graphs into ``--out``.  Exit status: 0 when every check passes, 1 when a
verification fails, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path
from typing import Optional

from .cartan import CartanData, SingularForm, Weight
from .config import COMMANDS, ConfigError, JobConfig, load_config
from .crystal import (
    MONOMIAL,
    TENSOR_RULE,
    build_crystal,
    crystal_isomorphic,
    crystal_to_dot,
    decompose_by_highest_weight,
    fold_crystal,
    tensor_crystal,
)
from .forms import almost_orthogonality, contravariant_form
from .module import (
    build_module,
    verify_contravariance,
    verify_defining_relations,
    verify_divided_power_relation,
    verify_EF_commutation,
)
from .oracle import NotDominant, char_convolve, full_character
from .quiver import LAYOUT, cartan_from_quiver, fold_from_cartan, framing_vector, to_dot, validate_admissible
from .suite import run_all
from .tensor import (
    BRAIDING,
    COPRODUCT,
    TensorModule,
    braiding,
    compute_theta,
    decompose_tensor_module,
    verify_braiding,
    verify_product_form,
    verify_psi,
    verify_tensor_relations,
    verify_yang_baxter,
)

DESIGN = {"coproduct": COPRODUCT, "braiding": BRAIDING, "crystal": MONOMIAL, "tensor_rule": TENSOR_RULE, "layout": LAYOUT}


class Outcome:
    """Accumulates report sections, the verdict and the first failing identity."""

    def __init__(self, command: str):
        self.report: dict = {"command": command, "design": DESIGN, "sections": {}}
        self.ok = True
        self.first_failure: Optional[dict] = None
        self.graphs: dict[str, str] = {}

    def add(self, name: str, section: dict, ok: bool, failure: Optional[dict] = None):
        self.report["sections"][name] = section
        if not ok:
            self.ok = False
            if self.first_failure is None:
                self.first_failure = {"section": name, **(failure or {})}

    def add_reports(self, name: str, reports: list[dict]):
        bad = next((r for r in reports if not r["ok"]), None)
        failure = None
        if bad is not None:
            failure = {"identity": bad["relation"], "block": bad["failures"][0] if bad["failures"] else None}
        self.add(name, {r["relation"]: {"ok": r["ok"], "checks": r.get("checks")} for r in reports}, bad is None, failure)

    def finish(self) -> dict:
        self.report["verdict"] = "pass" if self.ok else "fail"
        self.report["first_failure"] = self.first_failure
        return self.report


def _wt(w: Weight) -> dict:
    return {"weight": list(w.coords), "depth": list(w.depth) if w.depth is not None else None}


def _multiset(c: Counter) -> list:
    return [{**_wt(w), "mult": m} for w, m in sorted(c.items())]


def _char_rows(table: dict) -> list:
    return [{**_wt(w), "mult": m} for w, m in sorted(table.items())]


def _need(weights: list, k: int, command: str) -> list:
    if len(weights) < k:
        raise ConfigError(f"command {command!r} needs {k} weight(s), got {len(weights)}")
    return weights


# ---------------------------------------------------------------- commands


def cmd_fold(cd: CartanData, cfg: JobConfig, out: Outcome):
    q = fold_from_cartan(cd)
    adm = validate_admissible(q)
    back = cartan_from_quiver(q)
    same = back.C == cd.C and back.s == cd.s
    out.add(
        "fold",
        {
            "vertices": len(q.vertices),
            "arrows": len(q.arrows),
            "orbits": [[list(v) for v in o] for o in q.orbits()],
            "admissible": adm["ok"],
            "round_trip": "pass" if same else "fail",
        },
        adm["ok"] and same,
        {"identity": "cartan_from_quiver(fold_from_cartan(C)) = C"},
    )
    out.graphs["quiver.dot"] = to_dot(q)


def cmd_module(cd: CartanData, cfg: JobConfig, out: Outcome):
    for lam in _need(cfg.weight_list(cd), 1, "module"):
        M = build_module(cd, lam, cfg.depth)
        key = f"L{list(lam.coords)}"
        reps = verify_defining_relations(M)
        reps += [verify_divided_power_relation(M, i, n) for i in cd.indices for n in (1, 2, 3)]
        reps += [verify_EF_commutation(M, i, n) for i in cd.indices for n in (1, 2, 3)]
        out.add_reports(key + " relations", reps)
        ch = M.character()
        ref = full_character(cd, lam, cfg.depth)
        same = ch.by_depth() == ref.by_depth()
        out.add(
            key + " character",
            {"dim": M.total_dim(), "table": _char_rows(ch.table), "matches_freudenthal": same, "window": cfg.depth},
            same,
            {"identity": "character = Freudenthal"},
        )


def cmd_crystal(cd: CartanData, cfg: JobConfig, out: Outcome):
    lams = _need(cfg.weight_list(cd), 1, "crystal")
    crystals = []
    for k, lam in enumerate(lams):
        B = build_crystal(cd, lam, cfg.depth)
        crystals.append(B)
        out.graphs[f"crystal_{k + 1}.dot"] = crystal_to_dot(B)
        out.add(f"B{list(lam.coords)}", {"size": len(B), "decomposition": _multiset(decompose_by_highest_weight(B))}, True)
    if len(crystals) >= 2:
        T = crystals[0]
        for B in crystals[1:]:
            T = tensor_crystal(T, B)
        out.graphs["tensor.dot"] = crystal_to_dot(T)
        out.add("tensor", {"size": len(T), "decomposition": _multiset(decompose_by_highest_weight(T))}, True)


def cmd_fold_crystal(cd: CartanData, cfg: JobConfig, out: Outcome):
    q = fold_from_cartan(cd)
    ucd = q.unfolded_cartan()
    idx = {v: k for k, v in enumerate(q.vertices)}
    orientation = [(idx[a], idx[b]) for a, b in q.arrows]
    for lam in _need(cfg.weight_list(cd), 1, "fold-crystal"):
        Bh = build_crystal(ucd, ucd.weight(framing_vector(q, lam.coords)), cfg.depth, orientation)
        Bf = fold_crystal(Bh, q.vertex_permutation(), cd)
        Bd = build_crystal(cd, lam, cfg.depth)
        iso = crystal_isomorphic(Bf, Bd) is not None
        out.add(
            f"fold B{list(lam.coords)}",
            {"unfolded": len(Bh), "folded": len(Bf), "direct": len(Bd), "isomorphic": iso},
            iso,
            {"identity": "fold_crystal(B(lam^)) ~ B(lam)"},
        )


def _pair(cd, cfg, command):
    l1, l2 = _need(cfg.weight_list(cd), 2, command)[:2]
    M1, M2 = build_module(cd, l1), build_module(cd, l2)
    return l1, l2, TensorModule([M1, M2])


def cmd_tensor(cd: CartanData, cfg: JobConfig, out: Outcome):
    l1, l2, T = _pair(cd, cfg, "tensor")
    out.add_reports("tensor relations", verify_tensor_relations(T) + [verify_product_form(T)])
    mod = decompose_tensor_module(T)
    crys = decompose_by_highest_weight(tensor_crystal(build_crystal(cd, l1), build_crystal(cd, l2)))
    out.add(
        "decomposition",
        {"module": _multiset(mod), "crystal": _multiset(crys), "equal": mod == crys},
        mod == crys,
        {"identity": "module decomposition = crystal decomposition"},
    )
    conv = char_convolve(full_character(cd, l1), full_character(cd, l2)).table
    got = T.space.character()
    out.add("character", {"multiplicative": conv == got}, conv == got, {"identity": "character(T) = char * char"})


def _stringify_blocks(op) -> list:
    rows = []
    for (t, s), m in sorted(op.blocks.items()):
        if m.is_zero():
            continue
        rows.append(
            {
                "target": [list(x) for x in t],
                "source": [list(x) for x in s],
                "matrix": [[str(x) for x in r] for r in m.data],
            }
        )
    return rows


def cmd_theta(cd: CartanData, cfg: JobConfig, out: Outcome):
    _, _, T = _pair(cd, cfg, "theta")
    theta = compute_theta(T, cfg.depth)
    rep = verify_psi(T, theta)
    failure = None
    if not rep["ok"]:
        failure = {"identity": rep["failures"][0].get("identity"), "block": rep["failures"][0]}
    out.add(
        "theta",
        {
            "degrees": {str(list(k)): _stringify_blocks(v) for k, v in sorted(theta.degrees.items())},
            "psi_squared": "pass" if rep["ok"] else "fail",
        },
        rep["ok"],
        failure,
    )
    Ts = TensorModule(list(reversed(T.factors)))
    br = braiding(T, Ts)
    vb = verify_braiding(T, Ts, br)
    out.add(
        "braiding",
        {"ok": vb["ok"], "top_exponent": vb["top_exponent"]},
        vb["ok"],
        {"identity": vb["failures"][0]["identity"]} if vb["failures"] else None,
    )


def cmd_ybe(cd: CartanData, cfg: JobConfig, out: Outcome):
    lams = _need(cfg.weight_list(cd), 1, "ybe")
    if len(lams) == 1:
        lams = lams * 3
    if len(lams) != 3:
        raise ConfigError("command 'ybe' needs one or three weights")
    mods = [build_module(cd, lam) for lam in lams]
    rep = verify_yang_baxter(cd, mods)
    out.add(
        "ybe",
        {"dim": rep["dim"], "verdict": "pass" if rep["ok"] else "fail", "paths": rep["paths"]},
        rep["ok"],
        {"identity": "R23 R13 R12 = R12 R13 R23", "block": rep["first_failure"]},
    )


def cmd_forms(cd: CartanData, cfg: JobConfig, out: Outcome):
    for lam in _need(cfg.weight_list(cd), 1, "forms"):
        M = build_module(cd, lam, cfg.depth)
        G = contravariant_form(M)
        ao = almost_orthogonality(G)
        contra = verify_contravariance(M)
        key = f"L{list(lam.coords)}"
        out.add_reports(key + " contravariance", [contra])
        out.add(
            key + " gram",
            {
                "blocks": {str(list(k)): [[str(x) for x in r] for r in m.data] for k, m in sorted(G.blocks.items())},
                "almost_orthogonal": ao["almost_orthogonal"],
                "order": ao["order"],
            },
            True,
        )


def cmd_all(cfg: Optional[JobConfig], out: Outcome, jobs: int):
    for rep in run_all(jobs):
        rep = dict(rep)
        rep.pop("elapsed", None)
        out.add(f"criterion {rep['id']:02d}", rep, rep["ok"], {"identity": rep["title"]})


HANDLERS = {
    "fold": cmd_fold,
    "module": cmd_module,
    "crystal": cmd_crystal,
    "fold-crystal": cmd_fold_crystal,
    "tensor": cmd_tensor,
    "theta": cmd_theta,
    "ybe": cmd_ybe,
    "forms": cmd_forms,
}


def run(command: str, cfg: Optional[JobConfig], jobs: int = 1) -> tuple[int, dict, dict[str, str]]:
    """Execute one command; returns (exit code, report, DOT graphs)."""
    out = Outcome(command)
    if command == "all":
        cmd_all(cfg, out, jobs)
    else:
        if cfg is None:
            raise ConfigError(f"command {command!r} needs --config")
        cd = cfg.cartan_data()
        out.report["cartan"] = [list(r) for r in cd.C]
        out.report["symmetrizers"] = list(cd.s)
        try:
            HANDLERS[command](cd, cfg, out)
        except (NotDominant, SingularForm) as exc:
            raise ConfigError(str(exc)) from exc
    report = out.finish()
    return (0 if out.ok else 1), report, out.graphs


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    p = argparse.ArgumentParser(prog="qfold", description=__doc__.split("\n\n")[0])
    p.add_argument("--config", help="job config file")
    p.add_argument("--command", choices=COMMANDS, help="overrides the config's command")
    p.add_argument("--depth", type=int, help="depth window (overrides the config)")
    p.add_argument("--out", help="directory for report.json and DOT files")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the acceptance suite")
    args = p.parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else None
        command = args.command or (cfg.command if cfg else None)
        if command is None:
            raise ConfigError("no command given (use --command or 'command =' in the config)")
        if cfg is not None and args.depth is not None:
            if args.depth < 0:
                raise ConfigError("depth must be nonnegative")
            cfg.depth = args.depth
        code, report, graphs = run(command, cfg, args.jobs)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    text = dumps(report)
    sys.stdout.write(text)
    out_dir = args.out or (cfg.out if cfg else None)
    if out_dir:
        d = Path(out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "report.json").write_text(text, encoding="utf-8")
        for name, dot in sorted(graphs.items()):
            (d / name).write_text(dot, encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
