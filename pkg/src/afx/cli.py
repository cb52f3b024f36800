"""``afx`` command-line interface.

Exit codes: 0 success, 2 malformed input, 3 refused precondition
(non-supercritical, non-Delzant, non-summand, degenerate), 4 internal
consistency failure (engine disagreement or a theorem assertion).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .criticality import extreme_facet_normals, supercritical
from .errors import AfxError, EngineDisagreement, MalformedInput
from .extremals import af_equality_certificate, kt_equality, kt_sequence
from .polytope import VPolytope
from .selftest import run_selftest
from .toric import annihilated_vs_extreme, delzant_check, kernel_vs_eff
from .volume import mixed_volume, mixed_volume_polarization, mixed_volume_recursive, volume

COMMANDS = ("volume", "mixedvol", "supercritical", "extreme-dirs", "af-check", "kt-check", "toric-kernel", "selftest")


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    engine: str = "both"
    format: str = "json"
    output: Optional[str] = None
    k: Optional[int] = None


def _read(path: str, warnings: list):
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise MalformedInput(f"{path}: {e.strerror}") from e
    return io.load_json(data, path)


def _need(cfg: RunConfig, count: int, what: str):
    if len(cfg.inputs) != count:
        raise MalformedInput(f"{cfg.command} expects {what}")


def minimize_reproducer(bodies: Sequence[VPolytope]) -> list[VPolytope]:
    """Greedily drop points while the two engines still disagree."""

    def disagree(bs):
        try:
            return mixed_volume_polarization(bs) != mixed_volume_recursive(bs)
        except Exception:  # noqa: BLE001 -- any crash also reproduces a problem
            return True

    bodies = list(bodies)
    changed = True
    while changed:
        changed = False
        for i, K in enumerate(bodies):
            for p in K.points:
                if len(K.points) == 1:
                    break
                trial = VPolytope([q for q in K.points if q != p], K.ambient_dim)
                cand = bodies[:i] + [trial] + bodies[i + 1:]
                if disagree(cand):
                    bodies, K, changed = cand, trial, True
    return bodies


def _mixedvol(cfg, warnings):
    if not cfg.inputs:
        raise MalformedInput("mixedvol expects one or more body files")
    bodies = []
    for path in cfg.inputs:
        bodies.extend(io.bodies_from_obj(_read(path, warnings), warnings))
    try:
        value = mixed_volume(bodies, cfg.engine)
    except EngineDisagreement as e:
        e.details["reproducer"] = [io.polytope_to_obj(K) for K in minimize_reproducer(bodies)]
        raise
    except ValueError as e:
        raise MalformedInput(str(e)) from e
    out = {"mixed_volume": value, "engine": cfg.engine}
    if cfg.engine == "both":
        out["engines_agree"] = True
    return out


def _volume(cfg, warnings):
    _need(cfg, 1, "one polytope file")
    P = io.polytope_from_obj(_read(cfg.inputs[0], warnings), "polytope", warnings)
    return {"volume": volume(P), "dim": P.dim}


def _supercritical(cfg, warnings):
    _need(cfg, 1, "one collection file")
    C = io.collection_from_obj(_read(cfg.inputs[0], warnings), warnings)
    rep = supercritical(C)
    return {
        "ok": rep.ok,
        "table": [{"I": list(I), "dim": d, "required": len(I) + 2} for I, d in rep.table],
    }


def _extreme_dirs(cfg, warnings):
    _need(cfg, 2, "a polytope file Q and a collection file")
    Q = io.polytope_from_obj(_read(cfg.inputs[0], warnings), "Q", warnings)
    C = io.collection_from_obj(_read(cfg.inputs[1], warnings), warnings)
    return {"reports": [r.to_json() for r in extreme_facet_normals(Q, C)]}


def _af_check(cfg, warnings):
    _need(cfg, 3, "files M, N and a collection")
    M = io.polytope_from_obj(_read(cfg.inputs[0], warnings), "M", warnings)
    N = io.polytope_from_obj(_read(cfg.inputs[1], warnings), "N", warnings)
    C = io.collection_from_obj(_read(cfg.inputs[2], warnings), warnings)
    return af_equality_certificate(M, N, C, cfg.engine).to_json()


def _kt_check(cfg, warnings):
    _need(cfg, 2, "files A and B")
    A = io.polytope_from_obj(_read(cfg.inputs[0], warnings), "A", warnings)
    B = io.polytope_from_obj(_read(cfg.inputs[1], warnings), "B", warnings)
    if cfg.k is None:
        return kt_sequence(A, B, cfg.engine).to_json()
    try:
        return kt_equality(A, B, cfg.k, cfg.engine).to_json()
    except ValueError as e:
        if isinstance(e, AfxError):
            raise
        raise MalformedInput(str(e)) from e


def _toric_kernel(cfg, warnings):
    _need(cfg, 1, "one toric instance file")
    Q, C = io.toric_instance_from_obj(_read(cfg.inputs[0], warnings), warnings)
    T = delzant_check(Q)
    engine = "recursion" if cfg.engine == "both" else cfg.engine
    rep = kernel_vs_eff(T, C, engine)
    check = annihilated_vs_extreme(T, C, rep)
    out = rep.to_json()
    out["normals"] = [list(u) for u in T.normals]
    out["non_extreme_indices"] = list(check.non_extreme_indices)
    out["picard_rank"] = T.picard_rank
    return out


def _selftest(cfg, warnings):
    results = run_selftest()
    return {
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        "passed": all(r.passed for r in results),
    }


HANDLERS = {
    "volume": _volume,
    "mixedvol": _mixedvol,
    "supercritical": _supercritical,
    "extreme-dirs": _extreme_dirs,
    "af-check": _af_check,
    "kt-check": _kt_check,
    "toric-kernel": _toric_kernel,
    "selftest": _selftest,
}


def _as_text(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k in sorted(value):
            v = value[k]
            nested = isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)
            if nested or (isinstance(v, dict) and v):
                lines.append(f"{pad}{k}:")
                lines.append(_as_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
        return "\n".join(lines)
    if isinstance(value, list):
        return "\n".join(f"{pad}- {_inline(v)}" for v in value)
    return f"{pad}{_inline(value)}"


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(v[k])}" for k in sorted(v)) + "}"
    if v is None:
        return "-"
    return str(v)


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns the exit code and the report object."""
    warnings: list = []
    try:
        report = HANDLERS[cfg.command](cfg, warnings)
        code = 0
        if cfg.command == "selftest" and not report["passed"]:
            code = 4
    except AfxError as e:
        report = {"error_kind": e.error_kind, "message": str(e)}
        report.update(e.details)
        code = e.exit_code
    except (ValueError, TypeError) as e:
        report = {"error_kind": MalformedInput.error_kind, "message": str(e)}
        code = MalformedInput.exit_code
    if warnings:
        report["warnings"] = warnings
    return code, io._jsonable(report)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="afx", description="Exact mixed volumes and Alexandrov-Fenchel extremals.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", help="input JSON files")
    p.add_argument("--engine", choices=("polarization", "recursion", "both"), default="both")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    p.add_argument("-k", "--k", type=int, help="index k for kt-check")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command, args.inputs, args.engine, args.format, args.output, args.k)
    code, report = run(cfg)
    if cfg.format == "json":
        data = io.emit_report(report)
    else:
        data = (_as_text(report) + "\n").encode("utf-8")
    if cfg.output:
        Path(cfg.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
