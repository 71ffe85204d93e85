import numpy as np
import pytest

from hetroute.common.exceptions.shape_mismatch_error import ShapeMismatchError
from hetroute.nn.q_network import QNetwork

SMALL = dict(trunk_widths=(8, 8), stream_widths=(6,))


def small_net(seed: int = 0, num_neighbors: int = 3) -> QNetwork:
    return QNetwork.initialize(num_neighbors, np.random.default_rng(seed), **SMALL)


def zero_heads(net: QNetwork) -> QNetwork:
    for name in ("value.1.weight", "value.1.bias", "advantage.1.weight", "advantage.1.bias"):
        net.params[name][...] = 0.0
    return net


def test_default_architecture_shapes():
    net = QNetwork.initialize(5, np.random.default_rng(0))
    assert net.input_width == 20
    assert net.params["trunk.0.weight"].shape == (20, 300)
    assert net.params["trunk.2.weight"].shape == (300, 300)
    assert net.params["value.0.weight"].shape == (300, 300)
    assert net.params["value.1.weight"].shape == (300, 150)
    assert net.params["value.2.weight"].shape == (150, 1)
    assert net.params["advantage.2.weight"].shape == (150, 5)


def test_mean_subtraction():
    net = zero_heads(small_net())
    net.params["advantage.1.bias"][...] = [1.0, 2.0, 3.0]
    q = net.forward(np.random.default_rng(1).uniform(size=12))
    assert q == pytest.approx([-1.0, 0.0, 1.0])


def test_zero_final_layers_give_zero_q():
    net = zero_heads(small_net())
    assert np.array_equal(net.forward(np.zeros(12)), np.zeros(3))


def test_value_shift_moves_every_q_equally():
    net = small_net(2)
    state = np.random.default_rng(3).uniform(size=12)
    before = net.forward(state)
    net.params["value.1.bias"] += 2.5
    after = net.forward(state)
    assert after - before == pytest.approx(np.full(3, 2.5))
    assert np.argmax(after) == np.argmax(before)


def test_q_minus_value_has_zero_mean():
    net = small_net(4)
    states = np.random.default_rng(5).uniform(size=(7, 12))
    value, advantage = net.value_and_advantage(states)
    q = net.forward(states)
    assert np.allclose((q - value[:, None]).mean(axis=1), 0.0, atol=1e-12)
    assert advantage.shape == (7, 3)


def test_batch_and_single_forward_agree():
    net = small_net(6)
    states = np.random.default_rng(7).uniform(size=(4, 12))
    batch = net.forward(states)
    assert batch.shape == (4, 3)
    assert np.allclose(batch[2], net.forward(states[2]))


def test_wrong_input_width_raises():
    with pytest.raises(ShapeMismatchError):
        small_net().forward(np.zeros(11))


def test_non_finite_input_raises():
    with pytest.raises(ValueError, match="non-finite"):
        small_net().forward(np.full(12, np.nan))


def test_exact_targets_give_zero_loss_and_gradients():
    net = small_net(8)
    states = np.random.default_rng(9).uniform(size=(3, 12))
    actions = np.array([0, 2, 1])
    targets = net.forward(states)[np.arange(3), actions]
    loss, grads = net.loss_and_gradients(states, actions, targets)
    assert loss == 0.0
    assert all(not np.any(g) for g in grads.values())


def test_duplicated_sample_keeps_mean_loss():
    net = small_net(10)
    states = np.random.default_rng(11).uniform(size=(1, 12))
    single, _ = net.loss_and_gradients(states, [1], [0.7])
    double, _ = net.loss_and_gradients(np.vstack([states, states]), [1, 1], [0.7, 0.7])
    assert double == pytest.approx(single)


def test_masked_action_raises():
    net = small_net()
    states = np.zeros((2, 12))
    masks = np.array([[True, True, False], [True, True, True]])
    with pytest.raises(ValueError, match="masked slot"):
        net.loss_and_gradients(states, [2, 0], [1.0, 1.0], masks)


def _min_abs_pre_activation(net, states):
    caches = net._forward_with_cache(np.atleast_2d(states))[3]
    return min(float(np.min(np.abs(z))) for cache in caches for _, z in cache)


def _relative_error(analytic, numeric):
    scale = np.linalg.norm(analytic) + np.linalg.norm(numeric)
    if scale < 1e-10:
        return 0.0
    return float(np.linalg.norm(analytic - numeric) / scale)


def test_gradients_match_central_differences():
    rng = np.random.default_rng(2024)
    h = 1e-5
    checked = 0
    while checked < 50:
        net = QNetwork.initialize(3, rng, **SMALL)
        for name in net.params:
            if name.endswith(".bias"):
                net.params[name][...] = rng.uniform(-0.3, 0.3, size=net.params[name].shape)
        states = rng.uniform(0.0, 1.0, size=(1, 12))
        # keep every ReLU away from its kink so the differences see one slope
        if _min_abs_pre_activation(net, states) < 1e-3:
            continue
        actions = rng.integers(0, 3, size=1)
        targets = rng.normal(size=1)
        _, analytic = net.loss_and_gradients(states, actions, targets)
        for name, param in net.params.items():
            numeric = np.zeros_like(param)
            flat = param.reshape(-1)
            for i in range(flat.size):
                saved = flat[i]
                flat[i] = saved + h
                up, _ = net.loss_and_gradients(states, actions, targets)
                flat[i] = saved - h
                down, _ = net.loss_and_gradients(states, actions, targets)
                flat[i] = saved
                numeric.reshape(-1)[i] = (up - down) / (2 * h)
            assert _relative_error(analytic[name], numeric) < 1e-4, name
        checked += 1
