import numpy as np
import pytest

from lsgo_hybrid.benchmarks import (
    Block,
    TransformPipeline,
    apply_pipeline,
    conditioning_weights,
    oscillate,
    random_orthogonal,
    skew,
)


def test_oscillate_fixed_points():
    z = np.array([0.0, 1.0, -1.0])
    assert np.allclose(oscillate(z), z, atol=1e-12)


def test_oscillate_preserves_sign_and_monotone_on_positives():
    rng = np.random.default_rng(2)
    z = rng.uniform(-10, 10, size=200)
    out = oscillate(z)
    assert np.all(np.sign(out) == np.sign(z))
    pos = np.sort(np.abs(z[z != 0]))
    assert np.all(np.diff(oscillate(pos)) > 0)


def test_skew_fixed_points_and_negative_passthrough():
    z = np.array([0.0, 1.0, -3.7, -0.2])
    out = skew(z, 0.2)
    assert np.allclose(out[:2], [0.0, 1.0], atol=1e-12)
    # negative coordinates are untouched
    assert np.array_equal(out[2:], z[2:])


def test_skew_amplifies_large_positive_coordinates():
    z = np.array([4.0])
    # exponent grows with the coordinate index fraction; single coord -> 1+0
    assert skew(z, 0.2)[0] == pytest.approx(4.0)
    z = np.array([4.0, 4.0])
    out = skew(z, 0.2)
    assert out[0] == pytest.approx(4.0)
    assert out[1] == pytest.approx(4.0 ** (1.0 + 0.2 * np.sqrt(4.0)))


def test_conditioning_weights_endpoints():
    w = conditioning_weights(5, 10.0)
    assert w[0] == 1.0
    assert w[-1] == pytest.approx(np.sqrt(10.0))
    assert np.all(np.diff(w) > 0)
    assert np.array_equal(conditioning_weights(1, 10.0), np.ones(1))


def test_random_orthogonal_properties():
    rng = np.random.default_rng(3)
    for n in (2, 5, 17):
        q = random_orthogonal(n, rng)
        assert np.allclose(q @ q.T, np.eye(n), atol=1e-10)
        assert np.linalg.det(q) == pytest.approx(abs(np.linalg.det(q)), abs=2.0)
        v = rng.normal(size=n)
        assert np.linalg.norm(q @ v) == pytest.approx(np.linalg.norm(v))


def test_random_orthogonal_varies_with_stream():
    a = random_orthogonal(4, np.random.default_rng(1))
    b = random_orthogonal(4, np.random.default_rng(2))
    assert not np.allclose(a, b)


def _pipeline(d=6, rotate=True, rng=None):
    rng = rng or np.random.default_rng(5)
    rot = random_orthogonal(d, rng) if rotate else None
    return TransformPipeline(
        shift=rng.uniform(-1, 1, size=d),
        permutation=rng.permutation(d),
        blocks=[Block(0, d, rot)],
        irregularity=True,
        asymmetry_beta=0.2,
        conditioning_alpha=10.0,
    )


def test_pipeline_maps_shift_to_zero():
    p = _pipeline()
    z = apply_pipeline(p, p.shift.copy())
    assert np.allclose(z, 0.0, atol=1e-12)


def test_pipeline_rejects_bad_permutation():
    d = 6
    rng = np.random.default_rng(7)
    with pytest.raises(ValueError, match="permutation"):
        TransformPipeline(
            shift=np.zeros(d),
            permutation=np.zeros(d, dtype=int),
            blocks=[Block(0, d, None)],
            irregularity=False,
            asymmetry_beta=0.0,
            conditioning_alpha=1.0,
        )


def test_pipeline_rejects_gap_in_blocks():
    d = 6
    with pytest.raises(ValueError, match="cover"):
        TransformPipeline(
            shift=np.zeros(d),
            permutation=np.arange(d),
            blocks=[Block(0, 3, None)],
            irregularity=False,
            asymmetry_beta=0.0,
            conditioning_alpha=1.0,
        )


def test_pipeline_rejects_wrong_rotation_shape():
    d = 4
    with pytest.raises(ValueError, match="rotation"):
        TransformPipeline(
            shift=np.zeros(d),
            permutation=np.arange(d),
            blocks=[Block(0, d, np.eye(3))],
            irregularity=False,
            asymmetry_beta=0.0,
            conditioning_alpha=1.0,
        )
