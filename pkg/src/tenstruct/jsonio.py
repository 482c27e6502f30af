"""JSON forms for specs, tensors, decompositions and eigenpairs.

Spec objects carry a ``kind`` discriminator:

* ``{"kind": "cauchy", "m": 4, "c": [...], "d": [...]}`` (``d`` optional,
  defaults to all ones)
* ``{"kind": "hankel", "m": 4, "n": 3, "v": [...]}``
* ``{"kind": "cauchy_hankel", "g": 1.0, "h": 1.0, "m": 4, "n": 3}``
* ``{"kind": "dense", "m": 4, "n": 3, "entries": [{"idx": [1,1,1,2],
  "val": -1.0}, ...]}`` with canonical (sorted, 1-based) indices; unlisted
  canonical indices are zero
* ``{"kind": "vdec", "n": 3, "terms": [{"alpha": 1.0, "mu": 0.0}, ...]}``
"""

from __future__ import annotations

import hashlib
import json

from . import cauchy, cauchy_hankel, hankel
from .errors import InputError
from .spectra import EigenPair
from .symtensor import DenseSymmetricTensor


def canonical_digest(obj) -> str:
    """Stable hash of the canonicalized JSON form of ``obj``."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(blob.encode()).hexdigest()


def _require(obj: dict, key: str):
    if key not in obj:
        raise InputError(f"spec JSON is missing required key {key!r}")
    return obj[key]


def load_spec(obj):
    """Parse a spec dict (or JSON string) into its typed spec object."""
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as e:
            raise InputError(f"spec is not valid JSON: {e}") from e
    if not isinstance(obj, dict):
        raise InputError("spec JSON must be an object")
    kind = _require(obj, "kind")
    try:
        if kind == "cauchy":
            return cauchy.build(_require(obj, "c"), obj.get("d"), int(_require(obj, "m")))
        if kind == "hankel":
            return hankel.build(
                _require(obj, "v"), int(_require(obj, "m")), int(_require(obj, "n"))
            )
        if kind == "cauchy_hankel":
            return cauchy_hankel.build(
                float(_require(obj, "g")),
                float(_require(obj, "h")),
                int(_require(obj, "m")),
                int(_require(obj, "n")),
            )
        if kind == "dense":
            m, n = int(_require(obj, "m")), int(_require(obj, "n"))
            pairs = [
                (entry["idx"], entry["val"]) for entry in _require(obj, "entries")
            ]
            return DenseSymmetricTensor.from_entries(m, n, pairs)
        if kind == "vdec":
            terms = tuple(
                (float(term["alpha"]), float(term["mu"]))
                for term in _require(obj, "terms")
            )
            return hankel.VandermondeDecomposition(terms, int(_require(obj, "n")))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"malformed {kind!r} spec: {e}") from e
    raise InputError(f"unknown spec kind {kind!r}")


def spec_to_json(spec) -> dict:
    if isinstance(spec, cauchy.GeneralizedCauchySpec):
        return {
            "kind": "cauchy",
            "m": spec.order,
            "c": list(spec.c),
            "d": list(spec.d),
        }
    if isinstance(spec, hankel.HankelSpec):
        return {
            "kind": "hankel",
            "m": spec.order,
            "n": spec.dim,
            "v": [float(x) for x in spec.v],
        }
    if isinstance(spec, cauchy_hankel.CauchyHankelSpec):
        return {
            "kind": "cauchy_hankel",
            "g": spec.g,
            "h": spec.h,
            "m": spec.order,
            "n": spec.dim,
        }
    if isinstance(spec, DenseSymmetricTensor):
        return dense_to_json(spec)
    if isinstance(spec, hankel.VandermondeDecomposition):
        return decomposition_to_json(spec)
    raise InputError(f"cannot serialize object of type {type(spec).__name__}")


def dense_to_json(t: DenseSymmetricTensor) -> dict:
    return {
        "kind": "dense",
        "m": t.order,
        "n": t.dim,
        "entries": [
            {"idx": list(idx), "val": val} for idx, val in t.nonzero_entries()
        ],
    }


def decomposition_to_json(dec: hankel.VandermondeDecomposition) -> dict:
    return {
        "kind": "vdec",
        "n": dec.dim,
        "terms": [{"alpha": a, "mu": mu} for a, mu in dec.terms],
    }


def eigenpair_to_json(pair: EigenPair) -> dict:
    return {
        "lambda": pair.value,
        "x": list(pair.x),
        "kind": pair.kind,
        "residual": pair.residual,
    }
