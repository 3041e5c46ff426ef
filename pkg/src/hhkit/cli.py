"""Command-line front end: certification, bounds, guaranteed integration, means,
and the full corpus verification suite, reported as json, csv, or text.

Every subcommand emits a stream of ReportRecord rows with the same numeric
content across formats.  Exit codes: 0 when every check passes, 1 when at
least one inequality is falsified, 2 on usage or input errors.  Verdicts in
the "finding" family (suspected-typo propositions, falsified sampling
hypotheses) do not fail the run; only "violated", "falsified", and
"exceeds_tol" do.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import convexity, corpus, hhbounds, kernels, means, quadrature
from .convexity import ConvexityParams
from .expr import DomainError, FunctionSpec, Interval, ParseError, parse_function
from .hhbounds import THEOREM_IDS
from .kernels import HolderExponents
from .quadrature import NonConvergenceError, Partition

SUBCOMMANDS = ("certify", "bound", "verify", "integrate", "means", "suite")
FORMATS = ("json", "csv", "text")
DEFAULT_TOL = 1e-6
DEFAULT_GRID = 50

ENV_TOL = "HHKIT_TOL"

# verdicts that flip the exit code to 1
_FAIL_VERDICTS = frozenset({"violated", "falsified", "exceeds_tol"})

# per-check tolerances used by the suite, independent of --tol
_SUITE_KERNEL_TOL = {1: 1e-8, 2: 1e-6}
_SUITE_MARGIN_TOL = 1e-9
_SUITE_LEMMA_TOL = {"single": 1e-8, "double": 1e-6}
_SUITE_MEAN_TOL = 1e-12
_SUITE_GUARANTEE_TOLS = (1e-2, 1e-4)
_SUITE_PARTITION_NS = (1, 2, 4, 8, 16, 64)
_SUITE_MEAN_PAIRS = 200
_SUITE_PROP_PAIRS = ((1.0, math.e), (2.0, 8.0), (0.5, 1.5))
_SUITE_P3_NS = (2, 3)


@dataclass(frozen=True)
class Command:
    subcommand: str
    function_text: Optional[str] = None
    interval: Optional[Interval] = None
    params: ConvexityParams = ConvexityParams(1.0, 1.0, 1.0, "first")
    p: Optional[float] = None
    theorem: Optional[str] = None
    tol: float = DEFAULT_TOL
    grid: int = DEFAULT_GRID
    format: str = "text"
    seed: int = 0
    n: int = 2  # power-mean order used by the P3 check


@dataclass(frozen=True)
class ReportRecord:
    kind: str
    inputs: dict
    lhs: float
    rhs: float
    margin: float
    verdict: str
    elapsed_ms: float


def _finish(kind, inputs, lhs, rhs, margin, verdict, started) -> ReportRecord:
    return ReportRecord(
        kind=kind,
        inputs=inputs,
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        verdict=verdict,
        elapsed_ms=(time.perf_counter() - started) * 1e3,
    )


# ---------------------------------------------------------------------------
# serialization


def _fmt_float(v: float) -> str:
    return f"{v:.17g}"


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt_float(float(v))
    return json.dumps(str(v))


def _to_json(records: list[ReportRecord]) -> str:
    rows = []
    for r in records:
        inputs = ", ".join(f"{json.dumps(k)}: {_scalar(v)}" for k, v in r.inputs.items())
        rows.append(
            "  {"
            + f'"kind": {json.dumps(r.kind)}, '
            + "\"inputs\": {" + inputs + "}, "
            + f'"lhs": {_fmt_float(r.lhs)}, '
            + f'"rhs": {_fmt_float(r.rhs)}, '
            + f'"margin": {_fmt_float(r.margin)}, '
            + f'"verdict": {json.dumps(r.verdict)}, '
            + f'"elapsed_ms": {_fmt_float(r.elapsed_ms)}'
            + "}"
        )
    return "[\n" + ",\n".join(rows) + "\n]"


def _csv_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt_float(float(v))
    return str(v)


def _to_csv(records: list[ReportRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "lhs", "rhs", "margin", "verdict", "inputs", "elapsed_ms"])
    for r in records:
        inputs = ";".join(f"{k}={_csv_scalar(v)}" for k, v in r.inputs.items())
        writer.writerow(
            [
                r.kind,
                _fmt_float(r.lhs),
                _fmt_float(r.rhs),
                _fmt_float(r.margin),
                r.verdict,
                inputs,
                _fmt_float(r.elapsed_ms),
            ]
        )
    return buf.getvalue().rstrip("\n")


def _text_line(r: ReportRecord) -> str:
    ins = r.inputs
    if r.kind == "certify":
        line = (
            f"certify {r.verdict}, worst_margin={r.margin:.6g} "
            f"samples={ins.get('samples', '?')}"
        )
        if "x" in ins:
            line += (
                f" counterexample x={ins['x']:.6g} y={ins['y']:.6g}"
                f" mu={ins['mu']:.6g} lhs={r.lhs:.6g} rhs={r.rhs:.6g}"
            )
        return line
    if r.kind == "bound":
        return f"{ins.get('theorem', '?')} bound, rhs={r.rhs:.6f}"
    if r.kind == "integrate":
        return (
            f"integrate {r.verdict}, value={r.lhs:.12g} n={ins.get('n', '?')}"
            f" bound={r.rhs:.6g} tol={ins.get('tol', 0.0):g}"
        )
    if r.kind == "mean":
        return f"{ins['kind']}({ins['a']:g}, {ins['b']:g}) = {r.lhs:.12g}"
    label = ins.get("theorem") or ins.get("proposition") or ins.get("identity") or r.kind
    return f"{label} {r.verdict}, lhs={r.lhs:.6f} rhs={r.rhs:.6f} margin={r.margin:.6f}"


def format_records(records: list[ReportRecord], fmt: str) -> str:
    if fmt == "json":
        return _to_json(records)
    if fmt == "csv":
        return _to_csv(records)
    return "\n".join(_text_line(r) for r in records)


# ---------------------------------------------------------------------------
# subcommand implementations


def _function_for(cmd: Command) -> FunctionSpec:
    if cmd.function_text is None:
        raise ValueError(f"{cmd.subcommand} requires --function")
    if cmd.interval is None:
        raise ValueError(f"{cmd.subcommand} requires --interval")
    a, b = cmd.interval.a, cmd.interval.b
    m = cmd.params.m
    # m < 1 evaluates f (or f') at y/m beyond the interval; widen the domain
    if m > 0.0:
        lo, hi = min(a, a / m), max(b, b / m)
    else:
        lo, hi = a, b
    return parse_function(cmd.function_text, Interval(lo, hi))


def _hp_for(theorem_id: str, p: Optional[float]) -> Optional[HolderExponents]:
    if theorem_id in ("T1", "T4"):
        return None
    return HolderExponents(p if p is not None else 2.0)


def _theorem_list(cmd: Command) -> tuple[str, ...]:
    return (cmd.theorem,) if cmd.theorem else THEOREM_IDS


def _cmd_certify(cmd: Command) -> list[ReportRecord]:
    f = _function_for(cmd)
    started = time.perf_counter()
    rep = convexity.certify(f, cmd.interval, cmd.params, cmd.grid, cmd.tol)
    inputs = {
        "function": f.text,
        "a": cmd.interval.a,
        "b": cmd.interval.b,
        "s": cmd.params.s,
        "alpha": cmd.params.alpha,
        "m": cmd.params.m,
        "sense": cmd.params.sense,
        "grid": cmd.grid,
        "samples": rep.samples_checked,
    }
    lhs = rhs = 0.0
    if rep.counterexample is not None:
        cex = rep.counterexample
        inputs.update({"x": cex.x, "y": cex.y, "mu": cex.mu})
        lhs, rhs = cex.lhs, cex.rhs
    return [
        _finish("certify", inputs, lhs, rhs, rep.worst_margin, rep.verdict, started)
    ]


def _cmd_bound(cmd: Command) -> list[ReportRecord]:
    f = _function_for(cmd)
    records = []
    for tid in _theorem_list(cmd):
        started = time.perf_counter()
        hp = _hp_for(tid, cmd.p)
        value = hhbounds.theorem_bound(tid, f, cmd.interval, cmd.params, hp)
        inputs = {
            "theorem": tid,
            "function": f.text,
            "a": cmd.interval.a,
            "b": cmd.interval.b,
            "s": cmd.params.s,
            "alpha": cmd.params.alpha,
            "m": cmd.params.m,
        }
        if hp is not None:
            inputs["p"] = hp.p
        records.append(_finish("bound", inputs, 0.0, value, value, "value", started))
    return records


def _verify_verdict(rep: hhbounds.BoundReport) -> str:
    if not rep.hypothesis_certified:
        return "hypothesis_falsified"
    return "holds" if rep.holds else "violated"


def _cmd_verify(cmd: Command) -> list[ReportRecord]:
    f = _function_for(cmd)
    records = []
    for tid in _theorem_list(cmd):
        started = time.perf_counter()
        rep = hhbounds.verify_theorem(
            tid, f, cmd.interval, cmd.params, _hp_for(tid, cmd.p), cmd.tol, cmd.grid
        )
        inputs = dict(rep.inputs)
        inputs["hypothesis_certified"] = rep.hypothesis_certified
        records.append(
            _finish(
                "verify",
                inputs,
                rep.lhs_gap,
                rep.rhs_bound,
                rep.margin,
                _verify_verdict(rep),
                started,
            )
        )
    return records


def _cmd_integrate(cmd: Command) -> list[ReportRecord]:
    f = _function_for(cmd)
    started = time.perf_counter()
    p = cmd.p if cmd.p is not None else 2.0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = quadrature.integrate_with_guarantee(
            f, cmd.interval, cmd.tol, cmd.params.s, p, allow_uncertified=True
        )
    uncertified = any(issubclass(w.category, UserWarning) for w in caught)
    bound = min(res.bound_p4, res.bound_p5)
    inputs = {
        "function": f.text,
        "a": cmd.interval.a,
        "b": cmd.interval.b,
        "tol": cmd.tol,
        "s": cmd.params.s,
        "p": p,
        "n": res.n,
        "bound_p4": res.bound_p4,
        "bound_p5": res.bound_p5,
    }
    verdict = "hypothesis_falsified" if uncertified else "within_tol"
    return [
        _finish("integrate", inputs, res.value, bound, cmd.tol - bound, verdict, started)
    ]


def _cmd_means(cmd: Command) -> list[ReportRecord]:
    if cmd.interval is None:
        raise ValueError("means requires --interval a:b with 0 < a < b")
    a, b = cmd.interval.a, cmd.interval.b
    if not a > 0.0:
        raise ValueError(f"means requires positive endpoints, got a={a}")
    p = cmd.p if cmd.p is not None else 2.0
    hp = HolderExponents(p)
    records = []

    for kind in means.MEAN_KINDS:
        started = time.perf_counter()
        req = means.MeanRequest(kind, a, b, p if kind == "p_logarithmic" else None)
        value = means.mean(req)
        inputs = {"kind": kind, "a": a, "b": b}
        if kind == "p_logarithmic":
            inputs["p"] = p
        records.append(_finish("mean", inputs, value, value, 0.0, "value", started))

    started = time.perf_counter()
    chain = [
        means.mean(means.MeanRequest(k, a, b))
        for k in ("harmonic", "geometric", "logarithmic", "identric", "arithmetic")
    ]
    chain_margin = min(hi - lo for lo, hi in zip(chain, chain[1:]))
    records.append(
        _finish(
            "mean_chain",
            {"a": a, "b": b},
            chain[0],
            chain[-1],
            chain_margin,
            "holds" if chain_margin >= -_SUITE_MEAN_TOL else "violated",
            started,
        )
    )

    for pid in means.PROPOSITION_IDS:
        started = time.perf_counter()
        rep = means.proposition_check(pid, a, b, hp, n=cmd.n if pid == "P3" else None)
        verdict = _proposition_verdict(pid, rep)
        records.append(
            _finish(
                "proposition",
                dict(rep.inputs),
                rep.lhs_gap,
                rep.rhs_bound,
                rep.margin,
                verdict,
                started,
            )
        )
    return records


def _proposition_verdict(pid: str, rep: hhbounds.BoundReport) -> str:
    if rep.holds:
        return "holds"
    # P2/P3 are checked exactly as printed and are suspected misprints;
    # a failed check there is reported without failing the run
    return "violated" if pid == "P1" else "finding"


# ---------------------------------------------------------------------------
# the corpus suite


def run_suite(grid_n: int = DEFAULT_GRID, seed: int = 0) -> list[ReportRecord]:
    """One ReportRecord per corpus check, in a fixed canonical order."""
    records = []
    records.extend(_suite_kernel_identities())
    records.extend(_suite_convexity_and_classical(grid_n))
    records.extend(_suite_theorems(grid_n))
    records.extend(_suite_lemma_identities())
    records.extend(_suite_means(seed))
    records.extend(_suite_propositions())
    records.extend(_suite_quadrature())
    return records


def _suite_kernel_identities() -> list[ReportRecord]:
    records = []
    for c in corpus.ALPHA_S_GRID:
        for p in corpus.HOLDER_PS:
            started = time.perf_counter()
            rep = kernels.verify_kernel_identities(c, p, max(_SUITE_KERNEL_TOL.values()))
            for ch in rep.checks:
                allowed = _SUITE_KERNEL_TOL[ch.dimension]
                records.append(
                    _finish(
                        "kernel_identity",
                        {
                            "identity": ch.name,
                            "alpha_s": c,
                            "p": p,
                            "dimension": ch.dimension,
                            "tol": allowed,
                        },
                        ch.numeric,
                        ch.closed_form,
                        allowed - ch.residual,
                        "holds" if ch.residual <= allowed else "violated",
                        started,
                    )
                )
                started = time.perf_counter()
    return records


def _suite_convexity_and_classical(grid_n: int) -> list[ReportRecord]:
    records = []
    classical = ConvexityParams(1.0, 1.0, 1.0, "first")
    for f in corpus.corpus_functions():
        for iv in corpus.INTERVALS:
            started = time.perf_counter()
            rep = convexity.certify(f, iv, classical, grid_n)
            records.append(
                _finish(
                    "certify",
                    {
                        "function": f.text,
                        "a": iv.a,
                        "b": iv.b,
                        "s": 1.0,
                        "alpha": 1.0,
                        "m": 1.0,
                        "sense": "first",
                        "grid": grid_n,
                        "samples": rep.samples_checked,
                    },
                    0.0,
                    0.0,
                    rep.worst_margin,
                    rep.verdict,
                    started,
                )
            )

            started = time.perf_counter()
            integral_avg = (
                quadrature.reference_integrate(f, iv, tol=1e-12) / iv.width
            )
            midpoint = f((iv.a + iv.b) / 2.0)
            endpoint_avg = (f(iv.a) + f(iv.b)) / 2.0
            margin = min(integral_avg - midpoint, endpoint_avg - integral_avg)
            records.append(
                _finish(
                    "classical",
                    {"function": f.text, "a": iv.a, "b": iv.b},
                    midpoint,
                    endpoint_avg,
                    margin,
                    "holds" if margin >= -1e-9 else "violated",
                    started,
                )
            )
    return records


def _suite_theorems(grid_n: int) -> list[ReportRecord]:
    records = []
    for f in corpus.corpus_functions():
        for iv in corpus.INTERVALS:
            gap = hhbounds.hh_gap(f, iv)
            for prm in corpus.PARAM_TRIPLES:
                # one certification sweep per distinct hypothesis, shared
                # across the theorems that assume it
                plain = convexity.certify(
                    hhbounds.hypothesis_function("T1", f), iv, prm, grid_n
                )
                by_q = {}
                for p in corpus.HOLDER_PS:
                    hp = HolderExponents(p)
                    by_q[hp.q] = convexity.certify(
                        hhbounds.hypothesis_function("T2", f, hp), iv, prm, grid_n
                    )
                for tid in THEOREM_IDS:
                    if tid in ("T1", "T4"):
                        combos = [(None, plain)]
                    else:
                        combos = [
                            (HolderExponents(p), by_q[HolderExponents(p).q])
                            for p in corpus.HOLDER_PS
                        ]
                    for hp, cert in combos:
                        started = time.perf_counter()
                        bound = hhbounds.theorem_bound(tid, f, iv, prm, hp)
                        margin = bound - gap
                        if cert.falsified:
                            verdict = "hypothesis_falsified"
                        elif margin >= -_SUITE_MARGIN_TOL:
                            verdict = "holds"
                        else:
                            verdict = "violated"
                        inputs = {
                            "theorem": tid,
                            "function": f.text,
                            "a": iv.a,
                            "b": iv.b,
                            "s": prm.s,
                            "alpha": prm.alpha,
                            "m": prm.m,
                            "sense": "first",
                            "hypothesis_certified": not cert.falsified,
                        }
                        if hp is not None:
                            inputs["p"] = hp.p
                        records.append(
                            _finish("verify", inputs, gap, bound, margin, verdict, started)
                        )
    return records


def _suite_lemma_identities() -> list[ReportRecord]:
    records = []
    for f in corpus.corpus_functions():
        for iv in corpus.INTERVALS:
            started = time.perf_counter()
            res = hhbounds.lemma_identity_residuals(f, iv)
            for form, value, residual in (
                ("single", res.single_integral, res.single_residual),
                ("double", res.double_integral, res.double_residual),
            ):
                allowed = _SUITE_LEMMA_TOL[form]
                records.append(
                    _finish(
                        "lemma_identity",
                        {
                            "function": f.text,
                            "a": iv.a,
                            "b": iv.b,
                            "form": form,
                            "tol": allowed,
                        },
                        value,
                        res.signed_gap,
                        allowed - residual,
                        "holds" if residual <= allowed else "violated",
                        started,
                    )
                )
                started = time.perf_counter()
    return records


def _random_pairs(rng: np.random.Generator, count: int) -> list[tuple[float, float]]:
    pairs = []
    while len(pairs) < count:
        a, b = rng.uniform(1e-6, 100.0, size=2)
        if a == b:
            continue
        pairs.append((min(a, b), max(a, b)))
    return pairs


def _suite_means(seed: int) -> list[ReportRecord]:
    records = []
    rng = np.random.default_rng(seed)
    pairs = _random_pairs(rng, _SUITE_MEAN_PAIRS)

    started = time.perf_counter()
    worst = math.inf
    for a, b in pairs:
        chain = [
            means.mean(means.MeanRequest(k, a, b))
            for k in ("harmonic", "geometric", "logarithmic", "identric", "arithmetic")
        ]
        worst = min(worst, min(hi - lo for lo, hi in zip(chain, chain[1:])))
    records.append(
        _finish(
            "mean_chain",
            {"pairs": _SUITE_MEAN_PAIRS, "seed": seed},
            0.0,
            0.0,
            worst,
            "holds" if worst >= -_SUITE_MEAN_TOL else "violated",
            started,
        )
    )

    started = time.perf_counter()
    p_grid = (-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0)
    worst = math.inf
    for a, b in pairs[:25]:
        vals = [means.extended_p_logarithmic(a, b, p) for p in p_grid]
        worst = min(worst, min(hi - lo for lo, hi in zip(vals, vals[1:])))
    records.append(
        _finish(
            "mean_monotone",
            {"pairs": 25, "seed": seed},
            0.0,
            0.0,
            worst,
            "holds" if worst >= -_SUITE_MEAN_TOL else "violated",
            started,
        )
    )

    started = time.perf_counter()
    worst_dev = 0.0
    for a, b in pairs[:25]:
        worst_dev = max(
            worst_dev,
            abs(means.extended_p_logarithmic(a, b, 1.0) - (a + b) / 2.0),
            abs(means.extended_p_logarithmic(a, b, 0.0) - means.mean(means.MeanRequest("identric", a, b))),
            abs(means.extended_p_logarithmic(a, b, -1.0) - means.mean(means.MeanRequest("logarithmic", a, b))),
        )
    records.append(
        _finish(
            "mean_branch",
            {"pairs": 25, "seed": seed},
            0.0,
            0.0,
            _SUITE_MEAN_TOL - worst_dev,
            "holds" if worst_dev <= _SUITE_MEAN_TOL else "violated",
            started,
        )
    )
    return records


def _suite_propositions() -> list[ReportRecord]:
    records = []
    for pid in means.PROPOSITION_IDS:
        for a, b in _SUITE_PROP_PAIRS:
            for p in corpus.HOLDER_PS:
                ns = _SUITE_P3_NS if pid == "P3" else (None,)
                for n in ns:
                    started = time.perf_counter()
                    rep = means.proposition_check(pid, a, b, HolderExponents(p), n=n)
                    records.append(
                        _finish(
                            "proposition",
                            dict(rep.inputs),
                            rep.lhs_gap,
                            rep.rhs_bound,
                            rep.margin,
                            _proposition_verdict(pid, rep),
                            started,
                        )
                    )
    return records


def _suite_quadrature() -> list[ReportRecord]:
    records = []
    for f in corpus.corpus_functions():
        for iv in corpus.INTERVALS:
            ref = quadrature.reference_integrate(f, iv, tol=1e-12)
            for n in _SUITE_PARTITION_NS:
                part = Partition.uniform(iv, n)
                actual = abs(ref - quadrature.trapezoid_sum(f, part))
                for variant in quadrature.BOUND_VARIANTS:
                    started = time.perf_counter()
                    bound = quadrature.trapezoid_error_bound(variant, f, part, 1.0, 2.0)
                    margin = bound - actual
                    records.append(
                        _finish(
                            "quadrature_bound",
                            {
                                "function": f.text,
                                "a": iv.a,
                                "b": iv.b,
                                "n": n,
                                "variant": variant,
                            },
                            actual,
                            bound,
                            margin,
                            "holds" if margin >= -_SUITE_MARGIN_TOL else "violated",
                            started,
                        )
                    )

            for tol in _SUITE_GUARANTEE_TOLS:
                started = time.perf_counter()
                res = quadrature.integrate_with_guarantee(f, iv, tol)
                err = abs(res.value - quadrature.reference_integrate(f, iv, tol / 100.0))
                records.append(
                    _finish(
                        "quadrature_guarantee",
                        {
                            "function": f.text,
                            "a": iv.a,
                            "b": iv.b,
                            "tol": tol,
                            "n": res.n,
                            "value": res.value,
                        },
                        err,
                        tol,
                        tol - err,
                        "within_tol" if err <= tol else "exceeds_tol",
                        started,
                    )
                )
    return records


def _cmd_suite(cmd: Command) -> list[ReportRecord]:
    return run_suite(cmd.grid, cmd.seed)


_DISPATCH = {
    "certify": _cmd_certify,
    "bound": _cmd_bound,
    "verify": _cmd_verify,
    "integrate": _cmd_integrate,
    "means": _cmd_means,
    "suite": _cmd_suite,
}


def dispatch(cmd: Command) -> tuple[int, list[ReportRecord]]:
    records = _DISPATCH[cmd.subcommand](cmd)
    code = 1 if any(r.verdict in _FAIL_VERDICTS for r in records) else 0
    return code, records


# ---------------------------------------------------------------------------
# argument handling

_VALUE_FLAGS = frozenset(
    {
        "--function",
        "--interval",
        "--s",
        "--alpha",
        "--m",
        "--sense",
        "--p",
        "--theorem",
        "--tol",
        "--grid",
        "--format",
        "--seed",
        "--config",
        "--n",
    }
)

_CONFIG_KEYS = frozenset(
    {
        "function",
        "interval",
        "s",
        "alpha",
        "m",
        "sense",
        "p",
        "theorem",
        "tol",
        "grid",
        "format",
        "seed",
        "n",
    }
)


def _normalize_argv(argv: list[str]) -> list[str]:
    """Join value flags with their argument so values like "-(x^2)" or "-1:1"
    are not mistaken for option strings by argparse."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--function", dest="function_text", help="expression in x")
    common.add_argument("--interval", help="endpoints as a:b")
    common.add_argument("--s", type=float, help="convexity exponent s in (0,1]")
    common.add_argument("--alpha", type=float, help="convexity exponent alpha in [0,1]")
    common.add_argument("--m", type=float, help="convexity scale m in [0,1]")
    common.add_argument("--sense", choices=convexity.SENSES)
    common.add_argument("--p", type=float, help="Holder exponent p > 1")
    common.add_argument("--theorem", choices=list(THEOREM_IDS))
    common.add_argument("--tol", type=float, help=f"tolerance (default {DEFAULT_TOL:g})")
    common.add_argument("--grid", type=int, help=f"lattice size (default {DEFAULT_GRID})")
    common.add_argument("--format", choices=list(FORMATS))
    common.add_argument("--seed", type=int, help="rng seed for sampled checks")
    common.add_argument("--n", type=int, help="power-mean order for the P3 check")
    common.add_argument("--config", help="JSON file with the same keys as the flags")

    parser = argparse.ArgumentParser(
        prog="hhkit",
        description="Certify convexity classes and verify trapezoid-gap bounds.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must contain a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return data


def _parse_interval(text: str) -> Interval:
    parts = str(text).split(":")
    if len(parts) != 2:
        raise ValueError(f"interval must be a:b, got {text!r}")
    try:
        a, b = float(parts[0]), float(parts[1])
    except ValueError:
        raise ValueError(f"interval must be a:b with numeric endpoints, got {text!r}")
    return Interval(a, b)


def _resolve(args: argparse.Namespace) -> Command:
    config = _load_config(args.config)

    def pick(name, attr=None, default=None):
        v = getattr(args, attr or name)
        if v is None:
            v = config.get(name)
        return default if v is None else v

    tol = getattr(args, "tol")
    if tol is None:
        tol = config.get("tol")
    if tol is None and os.environ.get(ENV_TOL):
        tol = float(os.environ[ENV_TOL])
    if tol is None:
        tol = DEFAULT_TOL

    interval_text = pick("interval")
    interval = _parse_interval(interval_text) if interval_text is not None else None

    params = ConvexityParams(
        float(pick("s", default=1.0)),
        float(pick("alpha", default=1.0)),
        float(pick("m", default=1.0)),
        str(pick("sense", default="first")),
    )

    fmt = str(pick("format", default="text"))
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")

    theorem = pick("theorem")
    if theorem is not None and theorem not in THEOREM_IDS:
        raise ValueError(f"theorem must be one of {THEOREM_IDS}, got {theorem!r}")

    p = pick("p")
    return Command(
        subcommand=args.subcommand,
        function_text=pick("function", attr="function_text"),
        interval=interval,
        params=params,
        p=float(p) if p is not None else None,
        theorem=theorem,
        tol=float(tol),
        grid=int(pick("grid", default=DEFAULT_GRID)),
        format=fmt,
        seed=int(pick("seed", default=0)),
        n=int(pick("n", default=2)),
    )


def main(argv: Optional[list[str]] = None) -> int:
    raw = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(_normalize_argv(raw))
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        cmd = _resolve(args)
        code, records = dispatch(cmd)
    except (ParseError, DomainError, NonConvergenceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    print(format_records(records, cmd.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
