"""Full state-vector engine: operators, accounting, and fixtures."""
import math

import numpy as np
import pytest

from johnson_walk import (
    MarkedSet, MemoryCapError, WalkContext, apply_coin1, apply_coin2,
    apply_phase_flip, apply_shift, apply_walk_step, binomial,
    choose_parameters, find_marked, get_context, make_family, norm_constants,
    prepare_s, run_algorithm,
)
from johnson_walk.full_sim import measure_sample, zero_state


def random_state(ctx, rng):
    state = zero_state(ctx)
    state.amps_a = rng.normal(size=state.amps_a.shape) \
        + 1j * rng.normal(size=state.amps_a.shape)
    state.amps_b = rng.normal(size=state.amps_b.shape) \
        + 1j * rng.normal(size=state.amps_b.shape)
    nrm = state.norm()
    state.amps_a /= nrm
    state.amps_b /= nrm
    return state


def test_context_shapes():
    ctx = WalkContext(9, 4)
    assert ctx.num_a == binomial(9, 4)
    assert ctx.num_b == binomial(9, 5)
    assert ctx.dim_a == ctx.dim_b == 630
    # shift is a bijection between the sides
    assert sorted(ctx.shift_map) == list(range(ctx.dim_b))


def test_memory_cap_enforced():
    with pytest.raises(MemoryCapError):
        WalkContext(40, 20)
    with pytest.raises(MemoryCapError):
        WalkContext(9, 4, memcap=100)
    WalkContext(9, 4, memcap=2000)


def test_memcap_env_override(monkeypatch):
    monkeypatch.setenv("JOHNSON_WALK_MEMCAP", "100")
    with pytest.raises(MemoryCapError):
        WalkContext(9, 4)


def test_prepare_s_uniform():
    inst = make_family("element-distinctness", n=4, seed=0)
    state = prepare_s(inst, 2)
    assert state.amps_a.size == 12
    assert np.allclose(state.amps_a, 1.0 / math.sqrt(12.0))
    assert abs(state.norm() - 1.0) < 1e-12


def test_prepare_query_cost():
    item = make_family("element-distinctness", n=9, seed=1)
    assert prepare_s(item, 4).query_count == 4
    pairwise = make_family("l-clique", n=9, l=3, seed=1)
    assert prepare_s(pairwise, 4).query_count == 6  # C(4, 2)


def test_walk_step_query_cost():
    item = make_family("element-distinctness", n=9, seed=1)
    state = prepare_s(item, 4)
    apply_walk_step(state, item)
    assert state.query_count == 4 + 2
    pairwise = make_family("l-clique", n=9, l=3, seed=1)
    state = prepare_s(pairwise, 4)
    apply_walk_step(state, pairwise)
    assert state.query_count == 6 + 2 * 4


def test_walk_fixes_start_state():
    inst = make_family("element-distinctness", n=9, seed=1)
    state = prepare_s(inst, 4)
    ref = state.copy()
    for _ in range(3):
        apply_walk_step(state, inst)
    assert np.max(np.abs(state.amps_a - ref.amps_a)) < 1e-12
    assert np.max(np.abs(state.amps_b - ref.amps_b)) < 1e-12


def test_reflection_suite():
    """S^2 = C1^2 = C2^2 = P^2 = 1, norms preserved, 50 states each."""
    rng = np.random.default_rng(0)
    ctx = get_context(7, 3)
    marked = MarkedSet((0, 5))
    ops = [apply_coin1, apply_coin2, apply_shift,
           lambda s: apply_phase_flip(s, marked)]
    for op in ops:
        for _ in range(50):
            ref = random_state(ctx, rng)
            once = op(ref.copy())
            assert abs(once.norm() - 1.0) <= 1e-10
            twice = op(once)
            assert np.max(np.abs(twice.amps_a - ref.amps_a)) <= 1e-10
            assert np.max(np.abs(twice.amps_b - ref.amps_b)) <= 1e-10


def test_phase_flip_expectation():
    """<s|P|s> = 1 - 2 c_{l,0}/c."""
    inst = make_family("element-distinctness", n=9, seed=1)
    marked = find_marked(inst).marked
    state = prepare_s(inst, 4)
    ref = state.copy()
    apply_phase_flip(state, marked)
    inner = np.vdot(ref.amps_a, state.amps_a)
    nc = norm_constants(9, 4, 2)
    assert abs(inner - (1.0 - 2.0 * nc.c_jp[(2, 0)] / nc.c_total)) < 1e-12


def test_phase_flip_no_amplitude_unchanged():
    ctx = get_context(6, 2)
    marked = MarkedSet((4, 5))
    state = zero_state(ctx)
    # amplitude only on subsets not containing {4, 5}
    mask = ctx.marked_row_mask([marked])
    state.amps_a[~mask, :] = 1.0
    before = state.amps_a.copy()
    apply_phase_flip(state, marked)
    assert np.array_equal(before, state.amps_a)


def test_run_t2_zero_baseline():
    inst = make_family("element-distinctness", n=9, seed=1)
    rep = run_algorithm(inst, 4, 3, 0)
    nc = norm_constants(9, 4, 2)
    assert abs(rep.success_probability - nc.c_jp[(2, 0)] / nc.c_total) < 1e-12
    assert rep.query_count == 4


def test_run_no_marked_stays_at_s():
    inst = make_family("element-distinctness", n=8, seed=2, planted=False)
    rep = run_algorithm(inst, 3, 2, 2)
    assert "no_marked" in rep.flags
    assert rep.success_probability == 0.0
    uniform = 1.0 / math.sqrt(rep.final_state.ctx.dim_a)
    assert np.max(np.abs(rep.final_state.amps_a - uniform)) < 1e-10


def test_run_fixture_942():
    """Frozen success probability of the n=9 element-distinctness run."""
    inst = make_family("element-distinctness", n=9, seed=1)
    rep = run_algorithm(inst, 4, 2, 2)
    assert rep.query_count == 4 + 2 * 2 * 2
    assert abs(rep.success_probability - 0.7953860624657066) < 1e-12
    assert rep.flags == ()


def test_query_accounting_matches_formula():
    for n, l, seed in [(9, 2, 1), (10, 2, 4), (8, 3, 6)]:
        p = choose_parameters(n, l)
        inst = make_family("l-distinctness", n=n, l=l, seed=seed)
        rep = run_algorithm(inst, p.m, p.t1, p.t2)
        assert rep.query_count == p.m + 2 * p.t1 * p.t2


def test_permutation_covariance():
    """Relabeling elements while fixing the marked set leaves success alone."""
    inst = make_family("element-distinctness", n=8, seed=3)
    marked = find_marked(inst).marked.indices
    rng = np.random.default_rng(5)
    others = [i for i in range(8) if i not in marked]
    base = run_algorithm(inst, 3, 2, 2).success_probability
    for _ in range(3):
        perm = list(range(8))
        shuffled = list(others)
        rng.shuffle(shuffled)
        for src, dst in zip(others, shuffled):
            perm[src] = dst
        new_vals = [0] * 8
        for i, v in enumerate(inst.values):
            new_vals[perm[i]] = v
        relabeled = make_family("custom", n=8, l=2, values=new_vals,
                                predicate=inst.predicate)
        assert find_marked(relabeled).marked.indices == marked
        got = run_algorithm(relabeled, 3, 2, 2).success_probability
        assert abs(got - base) < 1e-12


def test_report_serialization():
    inst = make_family("element-distinctness", n=9, seed=1)
    d = run_algorithm(inst, 4, 1, 1).to_dict()
    assert set(d) == {"n", "m", "l", "t1", "t2", "mode", "engine",
                      "success_probability", "overlap_w", "query_count",
                      "flags"}
    assert d["engine"] == "full"


def test_measure_point_mass():
    ctx = get_context(6, 2)
    state = zero_state(ctx)
    state.amps_a[3, 1] = 1.0
    subset, coin = measure_sample(state, seed=0)
    assert subset == ctx.subsets_a[3]
    coins = [k for k in range(6) if k not in ctx.subsets_a[3]]
    assert coin == coins[1]


def test_measure_uniform_frequencies():
    inst = make_family("element-distinctness", n=4, seed=0)
    state = prepare_s(inst, 2)
    draws = measure_sample(state, seed=1, draws=12000)
    counts = {}
    for pair in draws:
        counts[pair] = counts.get(pair, 0) + 1
    p = 1.0 / 12.0
    sigma = math.sqrt(12000 * p * (1 - p))
    for count in counts.values():
        assert abs(count - 12000 * p) <= 5 * sigma


def test_measure_matches_success_probability():
    inst = make_family("element-distinctness", n=9, seed=1)
    rep = run_algorithm(inst, 4, 2, 2)
    marked = set(find_marked(inst).marked.indices)
    draws = measure_sample(rep.final_state, seed=2, draws=10 ** 4)
    hits = sum(1 for subset, _ in draws
               if len(subset) == 4 and marked <= set(subset))
    p = rep.success_probability
    sigma = math.sqrt(10 ** 4 * p * (1 - p))
    assert abs(hits - 10 ** 4 * p) <= 3 * sigma
