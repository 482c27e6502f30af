"""Command-line interface.

Subcommands: ``check``, ``decompose``, ``eig``, ``plane``,
``paper-examples``.  Specs are accepted inline (``--spec '<json>'``) or by
file path (``--file``).  Machine-readable reports go to stdout as JSON,
a short human summary to stderr.  Exit codes: 0 = property holds /
success, 1 = property fails (witness embedded) or solver failure,
2 = input error.  All randomized commands take an explicit ``--seed``
(default 0), so identical input + flags + seed give identical verdicts.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import cauchy, cauchy_hankel, hankel, jsonio, spectra, symtensor
from .errors import (
    ConvergenceError,
    InputError,
    NoRealMinimalDecomposition,
    UnsupportedQueryError,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


@dataclass
class Report:
    command: str
    input_digest: str
    verdicts: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)
    timings_ms: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "verdicts": self.verdicts,
            "artifacts": self.artifacts,
            "timings_ms": self.timings_ms,
        }


def _emit(report: Report, summary: str, out=None, err=None) -> None:
    out = out or sys.stdout
    err = err or sys.stderr
    print(json.dumps(report.to_json(), sort_keys=True), file=out)
    print(summary, file=err)


def _load_input(args) -> tuple[object, dict, str]:
    if getattr(args, "spec", None) and getattr(args, "file", None):
        raise InputError("pass either --spec or --file, not both")
    if getattr(args, "spec", None):
        raw = args.spec
    elif getattr(args, "file", None):
        try:
            with open(args.file) as fh:
                raw = fh.read()
        except OSError as e:
            raise InputError(f"cannot read spec file: {e}") from e
    else:
        raise InputError("a spec is required: pass --spec '<json>' or --file PATH")
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as e:
        raise InputError(f"spec is not valid JSON: {e}") from e
    return jsonio.load_spec(obj), obj, jsonio.canonical_digest(obj)


def _dense_of(spec):
    if isinstance(spec, symtensor.DenseSymmetricTensor):
        return spec
    if isinstance(spec, cauchy.GeneralizedCauchySpec):
        return cauchy.dense(spec)
    if isinstance(spec, hankel.HankelSpec):
        return hankel.dense(spec)
    if isinstance(spec, cauchy_hankel.CauchyHankelSpec):
        return cauchy_hankel.dense(spec)
    raise InputError(f"object of kind {type(spec).__name__} has no dense expansion")


# -- check --------------------------------------------------------------------


def _check_psd(spec, args, report):
    if isinstance(spec, cauchy.GeneralizedCauchySpec):
        holds = cauchy.is_psd(spec)
        report.verdicts.update(method="generator-sign-criterion", holds=holds)
        if not holds:
            witness = cauchy.psd_violation_witness(spec)
            if witness is not None:
                i, value = witness
                x = [0.0] * spec.dim
                x[i - 1] = 1.0
                report.verdicts.update(witness=x, value=value)
        return holds
    if isinstance(spec, cauchy_hankel.CauchyHankelSpec):
        # for these generators the PSD and PD criteria coincide: the
        # equivalent Cauchy generating vector has pairwise distinct entries
        holds = cauchy_hankel.is_pd(spec)
        report.verdicts.update(method="generator-sign-criterion", holds=holds)
        if not holds:
            _endpoint_witness(spec, report)
        return holds
    t = _dense_of(spec)
    verdict = spectra.psd_probe(t, trials=args.trials, seed=args.seed)
    report.verdicts.update(
        method="sampling-probe", holds=not verdict.violated, trials=args.trials
    )
    if verdict.violated:
        report.verdicts.update(
            witness=list(verdict.witness), value=verdict.value, stage=verdict.stage
        )
    return not verdict.violated


def _endpoint_witness(spec: cauchy_hankel.CauchyHankelSpec, report: Report) -> None:
    m, n = spec.order, spec.dim
    i = 1 if spec.g + m * spec.h < 0.0 else n
    x = [0.0] * n
    x[i - 1] = 1.0
    s = m * i
    report.verdicts.update(witness=x, value=1.0 / (spec.g + spec.h * s))


def _check_pd(spec, args, report):
    if isinstance(spec, cauchy.GeneralizedCauchySpec):
        holds = cauchy.is_pd(spec)
        report.verdicts.update(method="generator-sign-criterion", holds=holds)
        if not holds:
            witness = cauchy.psd_violation_witness(spec)
            if witness is not None:
                i, value = witness
                x = [0.0] * spec.dim
                x[i - 1] = 1.0
                report.verdicts.update(witness=x, value=value)
        return holds
    if isinstance(spec, cauchy_hankel.CauchyHankelSpec):
        holds = cauchy_hankel.is_pd(spec)
        report.verdicts.update(method="generator-sign-criterion", holds=holds)
        if not holds:
            _endpoint_witness(spec, report)
        return holds
    raise UnsupportedQueryError(
        "positive definiteness has a closed-form test only for cauchy and "
        "cauchy_hankel specs"
    )


def _check_cp(spec, args, report):
    if isinstance(spec, cauchy_hankel.CauchyHankelSpec):
        spec = cauchy_hankel.as_cauchy(spec)
    if not isinstance(spec, cauchy.GeneralizedCauchySpec):
        raise UnsupportedQueryError(
            "complete positivity has a closed-form test only for cauchy and "
            "cauchy_hankel specs"
        )
    holds = cauchy.is_completely_positive(spec)
    report.verdicts.update(method="generator-sign-criterion", holds=holds)
    if not holds:
        neg = symtensor.most_negative_entry(cauchy.dense(spec))
        if neg is not None:
            idx, value = neg
            report.verdicts.update(negative_entry_idx=list(idx), value=value)
    return holds


def _check_vpsd(spec, args, report):
    if isinstance(spec, cauchy_hankel.CauchyHankelSpec):
        spec = cauchy_hankel.as_hankel(spec)
    if not isinstance(spec, hankel.HankelSpec):
        raise UnsupportedQueryError(
            "the moment-vector PSD test applies to hankel and cauchy_hankel specs"
        )
    verdict = hankel.is_vandermonde_psd(spec)
    pf = hankel.plane_form(spec)
    report.verdicts.update(holds=verdict.vpsd, method="plane-form-nonnegativity")
    report.artifacts["plane_coeffs"] = list(pf.coeffs)
    if verdict.vpsd:
        report.verdicts.update(minimum=verdict.value, minimizer_mu=verdict.mu)
    else:
        report.verdicts.update(witness_mu=verdict.mu, value=verdict.value)
    return verdict.vpsd


def _check_copositive(spec, args, report):
    t = _dense_of(spec)
    verdict = symtensor.copositive_probe(t, trials=args.trials, seed=args.seed)
    report.verdicts.update(
        method="orthant-sampling-probe",
        holds=not verdict.violated,
        probes_used=verdict.probes_used,
    )
    if verdict.violated:
        report.verdicts.update(witness=list(verdict.witness), value=verdict.value)
    return not verdict.violated


def _check_monotone(spec, args, report):
    if not isinstance(spec, cauchy_hankel.CauchyHankelSpec):
        raise UnsupportedQueryError(
            "the orthant monotonicity check applies to cauchy_hankel specs"
        )
    verdict = cauchy_hankel.check_strict_monotone_on_orthant(
        spec, pairs=args.trials, seed=args.seed
    )
    report.verdicts.update(method="orthant-pair-sampling", holds=not verdict.violated)
    if verdict.violated:
        report.verdicts.update(
            x=list(verdict.x), y=list(verdict.y), fx=verdict.fx, fy=verdict.fy
        )
    return not verdict.violated


_CHECKS = {
    "psd": _check_psd,
    "pd": _check_pd,
    "cp": _check_cp,
    "vpsd": _check_vpsd,
    "copositive-probe": _check_copositive,
    "monotone": _check_monotone,
}


def cmd_check(args, out=None, err=None) -> int:
    spec, obj, digest = _load_input(args)
    report = Report("check", digest)
    report.verdicts["property"] = args.property
    t0 = time.perf_counter()
    holds = _CHECKS[args.property](spec, args, report)
    report.timings_ms["compute"] = (time.perf_counter() - t0) * 1e3
    _emit(report, f"check {args.property}: {'holds' if holds else 'FAILS'}", out, err)
    return EXIT_OK if holds else EXIT_FAIL


# -- decompose ------------------------------------------------------------------


def cmd_decompose(args, out=None, err=None) -> int:
    spec, obj, digest = _load_input(args)
    report = Report("decompose", digest)
    t0 = time.perf_counter()
    if args.kind == "vandermonde":
        if isinstance(spec, cauchy_hankel.CauchyHankelSpec):
            spec = cauchy_hankel.as_hankel(spec)
        if not isinstance(spec, hankel.HankelSpec):
            raise InputError("vandermonde decomposition needs a hankel or cauchy_hankel spec")
        mode = args.mode or "minimal"
        nodes = None
        if args.nodes:
            nodes = [float(x) for x in args.nodes.split(",")]
        try:
            dec = hankel.vandermonde_decompose(spec, mode, nodes=nodes)
        except NoRealMinimalDecomposition as e:
            report.verdicts.update(error="no-real-minimal-decomposition", detail=str(e))
            report.verdicts["hint"] = "retry with --mode fixed"
            report.timings_ms["compute"] = (time.perf_counter() - t0) * 1e3
            _emit(report, f"decompose vandermonde: FAILED ({e})", out, err)
            return EXIT_FAIL
        recomposed = hankel.vandermonde_compose(dec, spec.order) if dec.terms else None
        residual = (
            float(np.max(np.abs(recomposed.v_array() - spec.v_array())))
            if recomposed is not None
            else float(np.max(np.abs(spec.v_array())))
        )
        report.artifacts["decomposition"] = jsonio.decomposition_to_json(dec)
        report.verdicts.update(rank=dec.rank, residual=residual, mode=mode)
        summary = f"decompose vandermonde: rank {dec.rank}, residual {residual:.3g}"
    elif args.kind == "riemann":
        if isinstance(spec, cauchy_hankel.CauchyHankelSpec):
            spec = cauchy_hankel.as_cauchy(spec)
        if not isinstance(spec, cauchy.GeneralizedCauchySpec):
            raise InputError("riemann decomposition needs a cauchy or cauchy_hankel spec")
        approx = cauchy.riemann_rank_one_approx(spec, args.k)
        residual = approx.expand(spec.dim).max_abs_diff(cauchy.dense(spec))
        report.artifacts["rank_one_terms"] = [
            {"weight": w, "vector": [float(c) for c in v]} for w, v in approx.terms
        ]
        report.verdicts.update(k=args.k, residual=residual)
        summary = f"decompose riemann: k={args.k}, residual {residual:.3g}"
    else:
        raise InputError(f"unknown decomposition kind {args.kind!r}")
    report.timings_ms["compute"] = (time.perf_counter() - t0) * 1e3
    _emit(report, summary, out, err)
    return EXIT_OK


# -- eig ------------------------------------------------------------------------


def cmd_eig(args, out=None, err=None) -> int:
    spec, obj, digest = _load_input(args)
    report = Report("eig", digest)
    t = _dense_of(spec)
    t0 = time.perf_counter()
    tol = args.tol if args.tol is not None else (1e-10 if args.kind == "h" else 1e-8)
    try:
        if args.kind == "h":
            if t.dim == 2:
                pairs = spectra.h_eigen_all_dim2(t)
                report.verdicts["method"] = "dim2-exhaustive"
            elif np.all(t.values >= 0.0):
                pairs = [spectra.h_eigen_nqz(t, tol=tol)]
                report.verdicts["method"] = "nonnegative-power-iteration"
            else:
                raise UnsupportedQueryError(
                    "H-eigen solving needs a nonnegative expansion or dimension 2"
                )
        else:
            pairs = spectra.z_eigen_sshopm(t, tol=tol, seed=args.seed)
            report.verdicts["method"] = "shifted-power-iteration"
    except ConvergenceError as e:
        report.verdicts.update(error="convergence-failure", detail=str(e))
        if e.bracket is not None:
            report.verdicts["bracket"] = list(e.bracket)
        report.timings_ms["compute"] = (time.perf_counter() - t0) * 1e3
        _emit(report, f"eig {args.kind}: FAILED ({e})", out, err)
        return EXIT_FAIL
    pairs = sorted(pairs, key=lambda p: (-p.value, p.x))
    report.artifacts["eigenpairs"] = [jsonio.eigenpair_to_json(p) for p in pairs]
    report.verdicts["count"] = len(pairs)
    report.timings_ms["compute"] = (time.perf_counter() - t0) * 1e3
    lam = ", ".join(f"{p.value:.6g}" for p in pairs[:4])
    _emit(report, f"eig {args.kind}: {len(pairs)} pair(s), lambda = {lam}", out, err)
    return EXIT_OK


# -- plane -----------------------------------------------------------------------


def cmd_plane(args, out=None, err=None) -> int:
    spec, obj, digest = _load_input(args)
    if isinstance(spec, cauchy_hankel.CauchyHankelSpec):
        spec = cauchy_hankel.as_hankel(spec)
    if not isinstance(spec, hankel.HankelSpec):
        raise InputError("plane form is defined for hankel and cauchy_hankel specs")
    report = Report("plane", digest)
    pf = hankel.plane_form(spec)
    report.artifacts.update(
        degree=pf.degree,
        coeffs=list(pf.coeffs),
        entries=list(pf.entries),
    )
    if pf.entries_exact is not None:
        report.artifacts["entries_exact"] = [str(x) for x in pf.entries_exact]
    _emit(report, f"plane form: degree {pf.degree}", out, err)
    return EXIT_OK


# -- bundled worked examples -------------------------------------------------------


def reference_examples() -> list[dict]:
    """The two bundled counterexamples: order-4 dimension-3 Hankel tensors
    that are nonnegative on every moment vector yet fail positive
    semi-definiteness / copositivity at an explicit witness."""
    return [
        {
            "name": "moment-psd-but-not-psd",
            "spec": {"kind": "hankel", "m": 4, "n": 3, "v": [1, -1, 1, 0, 0, 0, 0, 0, 0]},
            "plane_coeffs": [1.0, -4.0, 10.0],
            "q_minimum": 0.6,
            "q_minimizer": 0.2,
            "witness": [1.0, 1.0, -1.0],
            "witness_value": -1.0,
            "witness_check": "psd",
        },
        {
            "name": "moment-psd-but-not-copositive",
            "spec": {"kind": "hankel", "m": 4, "n": 3, "v": [1, -1, 0.5, 0, 0, 0, 0, 0, 0]},
            "plane_coeffs": [1.0, -4.0, 5.0],
            "q_minimum": 0.2,
            "q_minimizer": 0.4,
            "witness": [1.0, 0.5, 0.0],
            "witness_value": -0.25,
            "witness_check": "copositive",
        },
    ]


def cmd_paper_examples(args, out=None, err=None) -> int:
    report = Report("paper-examples", jsonio.canonical_digest("builtin"))
    failures = []
    t0 = time.perf_counter()
    for case in reference_examples():
        entry: dict = {"name": case["name"]}
        spec = jsonio.load_spec(case["spec"])
        t = hankel.dense(spec)
        pf = hankel.plane_form(spec)
        got_coeffs = [c for c in pf.coeffs if c != 0.0]
        entry["plane_coeffs"] = got_coeffs
        if got_coeffs != case["plane_coeffs"]:
            failures.append(f"{case['name']}: plane coefficients {got_coeffs}")
        verdict = hankel.is_vandermonde_psd(spec)
        entry["vpsd"] = verdict.vpsd
        entry["q_minimum"] = verdict.value
        entry["q_minimizer"] = verdict.mu
        if not verdict.vpsd:
            failures.append(f"{case['name']}: expected vpsd verdict")
        if abs(verdict.value - case["q_minimum"]) > 1e-10:
            failures.append(f"{case['name']}: q minimum {verdict.value}")
        if abs(verdict.mu - case["q_minimizer"]) > 1e-8:
            failures.append(f"{case['name']}: q minimizer {verdict.mu}")
        value = t.apply(case["witness"])
        entry["witness"] = case["witness"]
        entry["witness_value"] = value
        if value != case["witness_value"]:
            failures.append(f"{case['name']}: witness value {value}")
        if case["witness_check"] == "psd":
            probe = spectra.psd_probe(t, trials=1000, seed=args.seed)
            entry["probe_witness"] = list(probe.witness) if probe.witness else None
            if not probe.violated or list(probe.witness) != case["witness"]:
                failures.append(f"{case['name']}: probe witness {probe.witness}")
        else:
            probe = symtensor.copositive_probe(t, trials=1000, seed=args.seed)
            entry["probe_witness"] = list(probe.witness) if probe.witness else None
            if not probe.violated or list(probe.witness) != case["witness"]:
                failures.append(f"{case['name']}: probe witness {probe.witness}")
        report.artifacts.setdefault("examples", []).append(entry)
    report.timings_ms["compute"] = (time.perf_counter() - t0) * 1e3
    report.verdicts["all_match"] = not failures
    if failures:
        report.verdicts["mismatches"] = failures
    _emit(
        report,
        "paper-examples: " + ("all match" if not failures else f"{len(failures)} mismatch(es)"),
        out,
        err,
    )
    return EXIT_OK if not failures else EXIT_FAIL


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tenstruct",
        description="structured symmetric tensors: checks, decompositions, eigenpairs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec_flags(p):
        p.add_argument("--spec", help="inline spec JSON")
        p.add_argument("--file", help="path to a spec JSON file")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized stages")
        p.add_argument("--trials", type=int, default=10000, help="sampling budget")
        p.add_argument("--tol", type=float, default=None, help="solver tolerance")

    p_check = sub.add_parser("check", help="decide a property, exit 0/1/2")
    p_check.add_argument("property", choices=sorted(_CHECKS))
    add_spec_flags(p_check)
    p_check.set_defaults(func=cmd_check)

    p_dec = sub.add_parser("decompose", help="vandermonde or rank-one decomposition")
    p_dec.add_argument("kind", choices=["vandermonde", "riemann"])
    add_spec_flags(p_dec)
    p_dec.add_argument("--mode", choices=["minimal", "fixed"], default=None)
    p_dec.add_argument("--nodes", help="comma-separated node list for fixed mode")
    p_dec.add_argument("--k", type=int, default=1000, help="rank-one approximation level")
    p_dec.set_defaults(func=cmd_decompose)

    p_eig = sub.add_parser("eig", help="eigenpair computation")
    p_eig.add_argument("kind", choices=["h", "z"])
    add_spec_flags(p_eig)
    p_eig.set_defaults(func=cmd_eig)

    p_plane = sub.add_parser("plane", help="emit the plane-form coefficients")
    add_spec_flags(p_plane)
    p_plane.set_defaults(func=cmd_plane)

    p_pe = sub.add_parser(
        "paper-examples", help="re-run the two bundled counterexamples"
    )
    p_pe.add_argument("--seed", type=int, default=0)
    p_pe.set_defaults(func=cmd_paper_examples)

    return parser


def main(argv=None, out=None, err=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args, out=out, err=err)
    except (InputError, UnsupportedQueryError) as e:
        print(f"error: {e}", file=err or sys.stderr)
        return EXIT_INPUT


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
