"""Exact state-vector engine for the subset walk.

The state lives on (subset, coin) pairs on both sides of the bipartite
subset graph: size-m subsets with coins outside, and size-(m+1)
subsets with coins inside.  Function values are a fixed classical
table, so they are never materialized in the state; oracle queries are
counted where the algorithm would make them.

Amplitudes are dense complex arrays of shape (num_subsets, num_coins);
subsets are indexed by colex rank.  Coin diffusion is blockwise mean
inversion per subset row, the shift is a precomputed permutation.
"""
from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .combinat import binomial, rank_subset
from .instances import ITEM, PAIRWISE, MarkedSet, ProblemInstance, find_marked

DEFAULT_MEMCAP = 2 ** 27
A_SIDE = "a"
B_SIDE = "b"
MIXED = "mixed"

_context_cache: dict = {}


def memory_cap() -> int:
    env = os.environ.get("JOHNSON_WALK_MEMCAP")
    return int(env) if env else DEFAULT_MEMCAP


class MemoryCapError(RuntimeError):
    pass


class WalkContext:
    """Precomputed index structure for the (n, m) bipartite walk space."""

    def __init__(self, n: int, m: int, memcap: int | None = None):
        if not 1 <= m < n:
            raise ValueError(f"need 1 <= m < n, got n={n}, m={m}")
        cap = memcap if memcap is not None else memory_cap()
        self.n, self.m = n, m
        self.num_a = binomial(n, m)
        self.num_b = binomial(n, m + 1)
        self.dim_a = self.num_a * (n - m)
        self.dim_b = self.num_b * (m + 1)
        if self.dim_a + self.dim_b > cap:
            raise MemoryCapError(
                f"state space needs {self.dim_a + self.dim_b} amplitudes, "
                f"cap is {cap} (set JOHNSON_WALK_MEMCAP to override)")

        self.subsets_a = [None] * self.num_a
        for comb in itertools.combinations(range(n), m):
            self.subsets_a[rank_subset(comb, n)] = comb
        self.subsets_b = [None] * self.num_b
        for comb in itertools.combinations(range(n), m + 1):
            self.subsets_b[rank_subset(comb, n)] = comb

        # Flat pair index (subset_rank * num_coins + slot) on each side;
        # shift maps the a-pair (A, k) to the b-pair (A ∪ {k}, k).
        shift = np.empty(self.dim_a, dtype=np.int64)
        for ra, a in enumerate(self.subsets_a):
            a_set = set(a)
            coins = [k for k in range(n) if k not in a_set]
            for slot, k in enumerate(coins):
                b = tuple(sorted(a + (k,)))
                rb = rank_subset(b, n)
                shift[ra * (n - m) + slot] = rb * (m + 1) + b.index(k)
        self.shift_map = shift

    def marked_row_mask(self, marked_sets) -> np.ndarray:
        """Boolean mask over a-side subset ranks: contains a marked subset."""
        mask = np.zeros(self.num_a, dtype=bool)
        targets = [set(ms.indices) for ms in marked_sets]
        for ra, a in enumerate(self.subsets_a):
            a_set = set(a)
            mask[ra] = any(t <= a_set for t in targets)
        return mask


def get_context(n: int, m: int, memcap: int | None = None) -> WalkContext:
    key = (n, m)
    if key not in _context_cache or memcap is not None:
        ctx = WalkContext(n, m, memcap)
        if memcap is None:
            _context_cache[key] = ctx
        return ctx
    return _context_cache[key]


@dataclass
class FullState:
    """Amplitudes over the bipartite pair space plus the oracle-query counter."""
    ctx: WalkContext
    amps_a: np.ndarray
    amps_b: np.ndarray
    side: str
    query_count: int = 0

    def copy(self) -> "FullState":
        return FullState(self.ctx, self.amps_a.copy(), self.amps_b.copy(),
                         self.side, self.query_count)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps_a) ** 2)
                             + np.sum(np.abs(self.amps_b) ** 2)))


def zero_state(ctx: WalkContext) -> FullState:
    a = np.zeros((ctx.num_a, ctx.n - ctx.m), dtype=complex)
    b = np.zeros((ctx.num_b, ctx.m + 1), dtype=complex)
    return FullState(ctx, a, b, A_SIDE)


def prepare_s(instance: ProblemInstance, m: int,
              memcap: int | None = None) -> FullState:
    """Uniform superposition over all legal (A, k) pairs on the m-side.

    Costs m oracle queries in item mode, C(m, 2) in pairwise mode.
    """
    if not instance.l <= m < instance.n:
        raise ValueError(f"need l <= m < n, got l={instance.l}, m={m}, n={instance.n}")
    ctx = get_context(instance.n, m, memcap)
    state = zero_state(ctx)
    state.amps_a[:] = 1.0 / np.sqrt(ctx.dim_a)
    state.query_count = m if instance.mode == ITEM else binomial(m, 2)
    return state


def apply_coin1(state: FullState) -> FullState:
    """Grover diffusion over coins k outside each m-subset (b-side untouched)."""
    mean = state.amps_a.mean(axis=1, keepdims=True)
    state.amps_a -= 2.0 * mean
    return state


def apply_coin2(state: FullState) -> FullState:
    """Grover diffusion over coins k inside each (m+1)-subset (a-side untouched)."""
    mean = state.amps_b.mean(axis=1, keepdims=True)
    state.amps_b -= 2.0 * mean
    return state


def apply_shift(state: FullState) -> FullState:
    """Swap each pair (A, k) with (A ∪ {k}, k); one oracle query per step."""
    ctx = state.ctx
    new_a = state.amps_b.reshape(-1)[ctx.shift_map].reshape(state.amps_a.shape)
    new_b = np.zeros_like(state.amps_b).reshape(-1)
    new_b[ctx.shift_map] = state.amps_a.reshape(-1)
    state.amps_a = new_a
    state.amps_b = new_b.reshape(state.amps_b.shape)
    if state.side in (A_SIDE, B_SIDE):
        state.side = B_SIDE if state.side == A_SIDE else A_SIDE
    return state


def apply_walk_step(state: FullState, instance: ProblemInstance) -> FullState:
    """One walk step S C2 S C1; +2 queries (item) or +2m (pairwise)."""
    apply_coin1(state)
    apply_shift(state)
    apply_coin2(state)
    apply_shift(state)
    state.query_count += 2 if instance.mode == ITEM else 2 * state.ctx.m
    return state


def apply_phase_flip(state: FullState, marked) -> FullState:
    """Negate amplitudes on m-subsets containing a marked set; zero queries."""
    if isinstance(marked, MarkedSet):
        marked = [marked]
    mask = state.ctx.marked_row_mask(marked)
    state.amps_a[mask, :] *= -1.0
    return state


@dataclass
class RunReport:
    n: int
    m: int
    l: int
    t1: int
    t2: int
    mode: str
    engine: str
    success_probability: float
    overlap_w: float
    query_count: int
    flags: tuple = ()
    final_state: object = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m, "l": self.l,
            "t1": self.t1, "t2": self.t2, "mode": self.mode,
            "engine": self.engine,
            "success_probability": self.success_probability,
            "overlap_w": self.overlap_w,
            "query_count": self.query_count,
            "flags": list(self.flags),
        }


def run_algorithm(instance: ProblemInstance, m: int, t1: int, t2: int,
                  memcap: int | None = None) -> RunReport:
    """Run (W^t1 P)^t2 on the uniform start state, exactly.

    success_probability sums |amp|^2 over m-subsets containing a marked
    set; overlap_w is the squared overlap with the uniform marked-block
    state.  Runs are flagged "unguaranteed" unless the scan finds
    exactly one marked subset.
    """
    found = find_marked(instance)
    flags = []
    if found.kind != "unique":
        flags.append("unguaranteed")
    if found.kind == "none":
        flags.append("no_marked")

    state = prepare_s(instance, m, memcap)
    for _ in range(t2):
        # rightmost factor of W^t1 P acts first: flip, then walk
        if found.count:
            apply_phase_flip(state, list(found.all_marked))
        for _ in range(t1):
            apply_walk_step(state, instance)

    if found.count:
        mask = state.ctx.marked_row_mask(list(found.all_marked))
        block = state.amps_a[mask, :]
        success = float(np.sum(np.abs(block) ** 2))
        overlap_w = float(np.abs(block.sum()) ** 2 / block.size) if block.size else 0.0
    else:
        success, overlap_w = 0.0, 0.0

    return RunReport(n=instance.n, m=m, l=instance.l, t1=t1, t2=t2,
                     mode=instance.mode, engine="full",
                     success_probability=success, overlap_w=overlap_w,
                     query_count=state.query_count, flags=tuple(flags),
                     final_state=state)


def measure_sample(state: FullState, seed: int, draws: int | None = None):
    """Sample (subset, coin) pairs from the |amp|^2 distribution.

    Returns a single (subset, coin) for draws=None, else a list.
    """
    ctx = state.ctx
    flat = np.concatenate([np.abs(state.amps_a.reshape(-1)) ** 2,
                           np.abs(state.amps_b.reshape(-1)) ** 2])
    flat /= flat.sum()
    rng = np.random.default_rng(seed)
    picks = rng.choice(flat.size, size=draws if draws else 1, p=flat)

    out = []
    for idx in picks:
        if idx < ctx.dim_a:
            ra, slot = divmod(int(idx), ctx.n - ctx.m)
            a = ctx.subsets_a[ra]
            coins = [k for k in range(ctx.n) if k not in a]
            out.append((a, coins[slot]))
        else:
            rb, slot = divmod(int(idx) - ctx.dim_a, ctx.m + 1)
            b = ctx.subsets_b[rb]
            out.append((b, b[slot]))
    return out if draws else out[0]


# overlap_w above is |<A_{l,0}|psi>|^2: the marked block of |s> is uniform,
# so the inner product is the block sum over sqrt(block size).
