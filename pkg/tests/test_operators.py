import json

import numpy as np
import pytest

from qwspec.errors import (
    AssumptionViolated,
    DimensionMismatch,
    ModelInvariantViolation,
    ParseError,
    RegimeWarning,
)
from qwspec.graphs import WeightFunction, grover_weights, random_connected_graph, random_weights
from qwspec.operators import (
    build_abstract_model,
    build_model,
    default_tol_op,
    discriminant_transition_check,
    model_from_json_dict,
    model_residuals,
    model_to_json_dict,
)

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def test_p2_model_is_the_swap(p2_model):
    # single edge: the co-isometry is the identity, the coin degenerates to
    # the identity, and the walk is the bare arc swap
    assert np.allclose(p2_model.d_a, np.eye(2))
    assert np.allclose(p2_model.coin, np.eye(2))
    assert np.allclose(p2_model.walk, SWAP)
    assert np.allclose(p2_model.shift, SWAP)
    assert np.allclose(p2_model.discriminant, SWAP)


def test_c3_discriminant(c3_model):
    expected = (np.ones((3, 3)) - np.eye(3)) / 2.0
    assert np.allclose(c3_model.discriminant, expected, atol=1e-14)


def test_companion_and_lifting_blocks(c3_model):
    n = 3
    top = np.hstack([np.zeros((n, n)), -np.eye(n)])
    bottom = np.hstack([np.eye(n), 2.0 * c3_model.discriminant])
    assert np.allclose(c3_model.companion, np.vstack([top, bottom]))
    assert np.allclose(
        c3_model.lifting, np.hstack([c3_model.d_a.conj().T, c3_model.d_b.conj().T])
    )


def test_walk_unitary_on_random_models(rng):
    for _ in range(8):
        g = random_connected_graph(int(rng.integers(2, 15)), rng)
        model = build_model(g, random_weights(g, rng))
        m = model.n_arcs
        assert np.linalg.norm(model.walk.conj().T @ model.walk - np.eye(m)) <= 1e-12


def test_discriminant_transition_check(p2, c3, k4, p2_model, c3_model, k4_model):
    for g, model in ((p2, p2_model), (c3, c3_model), (k4, k4_model)):
        assert discriminant_transition_check(model, g) <= model.tol_op


def test_abstract_model_matches_graph_route(p2_model):
    model = build_abstract_model(np.eye(2, dtype=complex), SWAP)
    for name in ("d_a", "d_b", "shift", "coin", "walk", "discriminant"):
        assert np.allclose(getattr(model, name), getattr(p2_model, name))


def test_abstract_model_frame_violation():
    d_a = np.diag([1.0, np.sqrt(0.5)]).astype(complex)
    with pytest.raises(AssumptionViolated) as err:
        build_abstract_model(d_a, SWAP)
    assert err.value.residual == pytest.approx(0.5)


def test_abstract_model_bad_shift():
    not_unitary = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
    with pytest.raises(AssumptionViolated):
        build_abstract_model(np.eye(2, dtype=complex), not_unitary)
    with pytest.raises(DimensionMismatch):
        build_abstract_model(np.eye(2, dtype=complex), np.eye(3, dtype=complex))


def test_abstract_model_identity_shift():
    # fixed points are fine abstractly; the discriminant collapses to I
    model = build_abstract_model(np.eye(2, dtype=complex), np.eye(2, dtype=complex))
    assert np.allclose(model.discriminant, np.eye(2))
    assert np.allclose(model.walk, model.coin)


def test_build_model_invariant_violation(p2):
    # weights that fail normalization break the frame identity at build time
    with pytest.raises(ModelInvariantViolation) as err:
        build_model(p2, WeightFunction(np.array([0.6, 1.0])))
    assert err.value.identity == "frame_identity"
    assert err.value.residual == pytest.approx(0.64)


def test_default_tol_op_scales_with_arcs():
    assert default_tol_op(200) == pytest.approx(100 * np.finfo(float).eps * 200)


def test_model_residuals_all_tiny(c3_model):
    residuals = model_residuals(c3_model)
    assert {"frame_identity", "walk_unitary", "shift_consistency"} <= set(residuals)
    assert max(residuals.values()) <= c3_model.tol_op


def test_serialization_roundtrip(c4_model):
    doc = model_to_json_dict(c4_model)
    text = json.dumps(doc)
    back = model_from_json_dict(json.loads(text), validate=True)
    for name in ("d_a", "d_b", "shift", "coin", "walk", "discriminant", "companion", "lifting"):
        assert np.array_equal(getattr(back, name), getattr(c4_model, name))
    assert back.tol_op == c4_model.tol_op
    assert back.provenance["graph_hash"] == c4_model.provenance["graph_hash"]


def test_deserialization_keeps_corruption(c4_model):
    doc = model_to_json_dict(c4_model)
    doc["matrices"]["d_b"]["data"][0][0] += 0.25
    loaded = model_from_json_dict(doc)  # loads fine without validation
    assert model_residuals(loaded)["shift_consistency"] > 0.2
    with pytest.raises(ModelInvariantViolation):
        model_from_json_dict(doc, validate=True)


def test_deserialization_rejects_garbage():
    with pytest.raises(ParseError):
        model_from_json_dict({"format": "something-else"})
    with pytest.raises(ParseError):
        model_from_json_dict({"format": "qwspec-model", "matrices": {}})


def test_regime_warning_on_expanding_discriminant(c3_model):
    # the frame identity forces a contraction, so the regime flag can only
    # fire for a tampered model; validation still rejects it afterwards
    doc = model_to_json_dict(c3_model)
    doc["matrices"]["discriminant"]["data"] = [
        [3.0 * re, 3.0 * im] for re, im in doc["matrices"]["discriminant"]["data"]
    ]
    with pytest.warns(RegimeWarning):
        with pytest.raises(ModelInvariantViolation):
            model_from_json_dict(doc, validate=True)
