# SPDX-License-Identifier: Apache-2.0
"""Python bindings for the metriq quantitative-equational toolkit.

Thin wrappers over the compiled `_metriq` module. Theories are passed as
builtin names or DSL source text, metric spaces and proofs as JSON strings.
"""

import json as _json

import _metriq

__all__ = [
    "builtin_names",
    "print_theory",
    "check_wellformed",
    "prove",
    "check_proof",
    "distance",
    "free_model",
    "countermodel",
]


def builtin_names():
    """Names of the built-in theories."""
    return list(_metriq.builtin_names())


def print_theory(name):
    """Render a builtin theory back to DSL source."""
    return _metriq.print_theory(name)


def check_wellformed(theory, depth=3):
    """Check every axiom of a theory. Returns [(axiom, ok, detail)]."""
    return _metriq.check_wellformed(theory, depth)


def prove(theory, goal, ctx="", depth=3):
    """Try to derive `ctx |- goal`. Returns a dict with `derivable`,
    `truncated`, optionally `bound` and a kernel-checked `proof`."""
    out = dict(_metriq.prove(theory, goal, ctx, depth))
    if out.get("proof") is not None:
        out["proof"] = _json.loads(out["proof"])
    return out


def check_proof(theory, proof, gens=""):
    """Validate a serialized proof against a theory. Returns (ok, reason)."""
    if not isinstance(proof, str):
        proof = _json.dumps(proof)
    return _metriq.check_proof(theory, proof, gens)


def distance(theory, t1, t2, gens="", depth=3, certify=True):
    """Least derivable bound between two terms, with optional exactness
    certification. Distances are strings like "1/2" or "inf"."""
    out = dict(_metriq.distance(theory, t1, t2, gens, depth, certify))
    if out.get("proof") is not None:
        out["proof"] = _json.loads(out["proof"])
    return out


def free_model(theory, gens="", depth=3, certify=False):
    """Depth-bounded free model over a generator space (or the initial
    model when `gens` is empty), as a dict."""
    return _json.loads(_metriq.free_model(theory, gens, depth, certify))


def countermodel(theory, goal, ctx="", gens="", depth=3, size=4):
    """Search small models for one refuting `ctx |- goal`. Returns the
    model as a dict (with the refuting assignment) or None."""
    out = _metriq.countermodel(theory, goal, ctx, gens, depth, size)
    return None if out is None else _json.loads(out)
