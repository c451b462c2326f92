"""Dense operator bundle for the coined walk attached to a weighted digraph.

The arc space carries four operators: the arc-reversal shift, the
reflection coin built from the weighted arc-to-vertex co-isometry, their
product (the walk unitary), and the lifting map from two copies of the
vertex space.  The vertex space carries the discriminant and its block
companion matrix.  Everything is materialized once at build time as a
dense complex matrix and frozen; the defining identities are checked
against ``tol_op`` and a violation aborts the build.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from .errors import (
    AssumptionViolated,
    DimensionMismatch,
    ModelInvariantViolation,
    ParseError,
    RegimeWarning,
)
from .graphs import Digraph, WeightFunction

MODEL_FORMAT = "qwspec-model"
MATRIX_FIELDS = (
    "d_a",
    "d_b",
    "shift",
    "coin",
    "walk",
    "discriminant",
    "companion",
    "lifting",
)


def default_tol_op(n_arcs: int) -> float:
    """Build tolerance: rounding in triple products grows with dimension."""
    return 100.0 * np.finfo(float).eps * max(n_arcs, 1)


@dataclass(frozen=True)
class WalkModel:
    """Immutable bundle of the walk operators.

    d_a           (n, m)   weighted arc-to-vertex co-isometry
    d_b           (n, m)   d_a composed with the shift
    shift         (m, m)   arc-reversal involution
    coin          (m, m)   reflection 2 d_a* d_a - I
    walk          (m, m)   unitary shift @ coin
    discriminant  (n, n)   d_a @ d_b*, self-adjoint contraction
    companion     (2n, 2n) block matrix [[0, -I], [I, 2 discriminant]]
    lifting       (m, 2n)  [d_a* | d_b*]
    """

    d_a: np.ndarray
    d_b: np.ndarray
    shift: np.ndarray
    coin: np.ndarray
    walk: np.ndarray
    discriminant: np.ndarray
    companion: np.ndarray
    lifting: np.ndarray
    tol_op: float
    provenance: Mapping[str, object]

    def __post_init__(self):
        for name in MATRIX_FIELDS:
            mat = np.array(getattr(self, name), dtype=complex)
            mat.setflags(write=False)
            object.__setattr__(self, name, mat)
        n, m = self.d_a.shape
        expect = {
            "d_b": (n, m),
            "shift": (m, m),
            "coin": (m, m),
            "walk": (m, m),
            "discriminant": (n, n),
            "companion": (2 * n, 2 * n),
            "lifting": (m, 2 * n),
        }
        for name, shape in expect.items():
            if getattr(self, name).shape != shape:
                raise DimensionMismatch(
                    f"{name} has shape {getattr(self, name).shape}, expected {shape}"
                )

    @property
    def n_vertices(self) -> int:
        return int(self.d_a.shape[0])

    @property
    def n_arcs(self) -> int:
        return int(self.d_a.shape[1])

    def with_corruption(self, **overrides: np.ndarray) -> "WalkModel":
        """Replace stored matrices without re-derivation (test harness hook)."""
        return replace(self, **overrides)


def _assemble(
    d_a: np.ndarray,
    shift: np.ndarray,
    tol_op: float,
    provenance: Mapping[str, object],
) -> WalkModel:
    n, m = d_a.shape
    d_a_h = d_a.conj().T
    d_b = d_a @ shift
    coin = 2.0 * (d_a_h @ d_a) - np.eye(m)
    walk = shift @ coin
    discriminant = d_a @ d_b.conj().T
    eye_n = np.eye(n)
    zero_n = np.zeros((n, n))
    companion = np.block([[zero_n, -eye_n], [eye_n, 2.0 * discriminant]])
    lifting = np.hstack([d_a_h, d_b.conj().T])
    return WalkModel(
        d_a=d_a,
        d_b=d_b,
        shift=shift,
        coin=coin,
        walk=walk,
        discriminant=discriminant,
        companion=companion,
        lifting=lifting,
        tol_op=float(tol_op),
        provenance=dict(provenance),
    )


def model_residuals(model: WalkModel) -> dict[str, float]:
    """Frobenius residual of every defining identity, keyed by check name."""
    n, m = model.n_vertices, model.n_arcs
    eye_n, eye_m = np.eye(n), np.eye(m)
    d_a, d_b, s = model.d_a, model.d_b, model.shift
    c, u, t = model.coin, model.walk, model.discriminant
    zero_n = np.zeros((n, n))
    companion_expected = np.block([[zero_n, -eye_n], [eye_n, 2.0 * t]])
    lifting_expected = np.hstack([d_a.conj().T, d_b.conj().T])

    def fro(x) -> float:
        return float(np.linalg.norm(x))

    return {
        "frame_identity": fro(d_a @ d_a.conj().T - eye_n),
        "shift_selfadjoint": fro(s - s.conj().T),
        "shift_involution": fro(s @ s - eye_m),
        "shift_consistency": fro(d_b - d_a @ s),
        "coin_consistency": fro(c - (2.0 * (d_a.conj().T @ d_a) - eye_m)),
        "coin_selfadjoint": fro(c - c.conj().T),
        "coin_involution": fro(c @ c - eye_m),
        "walk_consistency": fro(u - s @ c),
        "walk_unitary": fro(u.conj().T @ u - eye_m),
        "discriminant_consistency": fro(t - d_a @ d_b.conj().T),
        "discriminant_selfadjoint": fro(t - t.conj().T),
        "companion_structure": fro(model.companion - companion_expected),
        "lifting_structure": fro(model.lifting - lifting_expected),
    }


def _check_invariants(model: WalkModel) -> None:
    # regime flag first: it is a warning, not an error, and should be seen
    # even when an identity residual aborts the build right after
    herm = 0.5 * (model.discriminant + model.discriminant.conj().T)
    radius = float(np.abs(np.linalg.eigvalsh(herm)).max(initial=0.0))
    if radius > 1.0 + model.tol_op:
        warnings.warn(
            f"discriminant spectral radius {radius:.6f} exceeds 1: "
            "model outside the self-adjoint-contraction regime",
            RegimeWarning,
            stacklevel=3,
        )
    # residuals are ordered root-cause first, so the first failure is named
    residuals = model_residuals(model)
    for name, residual in residuals.items():
        if residual > model.tol_op:
            raise ModelInvariantViolation(name, residual)


def build_model(
    g: Digraph,
    w: WeightFunction,
    tol_op: float | None = None,
    provenance: Mapping[str, object] | None = None,
) -> WalkModel:
    """Materialize the walk operators of a weighted digraph.

    Assumes the weights validate (see :func:`qwspec.graphs.validate_weights`);
    invalid weights surface as a ``ModelInvariantViolation`` on the frame
    identity.
    """
    if len(w) != g.arc_count:
        raise DimensionMismatch(
            f"weight vector has {len(w)} entries for {g.arc_count} arcs"
        )
    n, m = g.vertex_count, g.arc_count
    d_a = np.zeros((n, m), dtype=complex)
    for e in range(m):
        d_a[g.origins[e], e] = np.conj(w.weights[e])
    shift = np.zeros((m, m), dtype=complex)
    for e in range(m):
        shift[e, g.involution[e]] = 1.0
    tol = default_tol_op(m) if tol_op is None else float(tol_op)
    prov = {
        "kind": "graph",
        "graph_hash": g.content_hash(),
        "weight_hash": w.content_hash(),
        "vertex_count": g.vertex_count,
        "edge_count": g.edge_count,
        "vertex_labels": list(g.vertex_labels),
        "bipartite": g.is_bipartite(),
        "connected": g.is_connected(),
    }
    prov.update(provenance or {})
    model = _assemble(d_a, shift, tol, prov)
    _check_invariants(model)
    return model


def build_abstract_model(
    d_a: np.ndarray,
    shift: np.ndarray,
    tol_op: float | None = None,
    provenance: Mapping[str, object] | None = None,
) -> WalkModel:
    """Materialize a walk model from a bare co-isometry and shift.

    Unlike the graph route, the shift may have fixed points; it only has
    to be a self-adjoint unitary, and ``d_a`` must satisfy the frame
    identity ``d_a d_a* = I``.
    """
    d_a = np.asarray(d_a, dtype=complex)
    shift = np.asarray(shift, dtype=complex)
    if d_a.ndim != 2 or shift.ndim != 2:
        raise DimensionMismatch("expected 2-d arrays")
    n, m = d_a.shape
    if shift.shape != (m, m):
        raise DimensionMismatch(
            f"shift has shape {shift.shape}, expected ({m}, {m})"
        )
    tol = default_tol_op(m) if tol_op is None else float(tol_op)
    res_sa = float(np.linalg.norm(shift - shift.conj().T))
    res_inv = float(np.linalg.norm(shift @ shift - np.eye(m)))
    if max(res_sa, res_inv) > tol:
        raise AssumptionViolated("shift is not a self-adjoint unitary", max(res_sa, res_inv))
    res_frame = float(np.linalg.norm(d_a @ d_a.conj().T - np.eye(n)))
    if res_frame > tol:
        raise AssumptionViolated("frame identity d_a d_a* = I fails", res_frame)
    prov = {"kind": "abstract"}
    prov.update(provenance or {})
    model = _assemble(d_a, shift, tol, prov)
    _check_invariants(model)
    return model


def discriminant_transition_check(model: WalkModel, g: Digraph) -> float:
    """Residual against the degree-normalized adjacency matrix.

    For degree-uniform weights the discriminant must coincide with
    ``D^(-1/2) A D^(-1/2)``; returns the Frobenius norm of the difference.
    """
    if g.vertex_count != model.n_vertices:
        raise DimensionMismatch("graph and model vertex counts differ")
    inv_sqrt_deg = 1.0 / np.sqrt(g.degrees.astype(float))
    normalized = inv_sqrt_deg[:, None] * g.adjacency_matrix() * inv_sqrt_deg[None, :]
    return float(np.linalg.norm(model.discriminant - normalized))


# -- serialization -----------------------------------------------------------


def _encode_matrix(mat: np.ndarray) -> dict:
    return {
        "shape": [int(mat.shape[0]), int(mat.shape[1])],
        "data": [[float(z.real), float(z.imag)] for z in mat.flatten(order="C")],
    }


def _decode_matrix(obj: dict) -> np.ndarray:
    try:
        rows, cols = (int(x) for x in obj["shape"])
        flat = np.array([complex(re, im) for re, im in obj["data"]], dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix encoding: {exc}") from None
    if flat.size != rows * cols:
        raise ParseError("matrix data does not match its declared shape")
    return flat.reshape(rows, cols)


def model_to_json_dict(model: WalkModel) -> dict:
    return {
        "format": MODEL_FORMAT,
        "version": 1,
        "n_vertices": model.n_vertices,
        "n_arcs": model.n_arcs,
        "tol_op": float(model.tol_op),
        "matrices": {name: _encode_matrix(getattr(model, name)) for name in MATRIX_FIELDS},
        "provenance": dict(model.provenance),
    }


def model_from_json_dict(data: dict, validate: bool = False) -> WalkModel:
    """Rebuild a model from its JSON form.

    Matrices are taken verbatim; by default no identity is re-checked so
    that a corrupted file can still be loaded and then failed loudly by
    the verification pass.
    """
    if not isinstance(data, dict) or data.get("format") != MODEL_FORMAT:
        raise ParseError("not a walk-model JSON document")
    matrices = data.get("matrices")
    if not isinstance(matrices, dict):
        raise ParseError("model JSON lacks its matrices table")
    decoded = {}
    for name in MATRIX_FIELDS:
        if name not in matrices:
            raise ParseError(f"model JSON is missing matrix {name!r}")
        decoded[name] = _decode_matrix(matrices[name])
    model = WalkModel(
        tol_op=float(data.get("tol_op", default_tol_op(decoded["walk"].shape[0]))),
        provenance=dict(data.get("provenance", {})),
        **decoded,
    )
    if validate:
        _check_invariants(model)
    return model
