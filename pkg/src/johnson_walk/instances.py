"""Problem instances, property families, and the brute-force marked-set scan.

An instance is a black-box value table (per element, or per element
pair for subgraph problems) together with a permutation-invariant
property over l-tuples.  The classical scan over all C(n, l) subsets
is the ground truth every quantum engine is checked against.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field

from .combinat import binomial

ITEM = "item"
PAIRWISE = "pairwise"

_MAX_PLANT_RETRIES = 200


def pair_index(i: int, j: int) -> int:
    """Colex index of the unordered pair {i, j} (i != j)."""
    if i == j:
        raise ValueError("pair requires distinct indices")
    lo, hi = (i, j) if i < j else (j, i)
    return hi * (hi - 1) // 2 + lo


@dataclass(frozen=True)
class MarkedSet:
    indices: tuple

    def __post_init__(self):
        idx = tuple(self.indices)
        if list(idx) != sorted(set(idx)):
            raise ValueError(f"marked indices must be sorted and distinct: {idx}")
        object.__setattr__(self, "indices", idx)

    def __contains__(self, x):
        return x in self.indices


@dataclass(frozen=True)
class ProblemInstance:
    """Immutable l-subset finding instance.

    values is a tuple of n range values (item mode) or C(n, 2) edge
    labels indexed by pair_index (pairwise mode).  predicate is the
    property test; its calling convention depends on the mode:

      item:     predicate(((i1, v1), ..., (il, vl))) -> bool
      pairwise: predicate((i1, ..., il), (((a, b), vab), ...)) -> bool

    and it must be invariant under permutations of the tuple.
    """
    n: int
    l: int
    mode: str
    values: tuple
    family_tag: str
    property_params: dict = field(compare=False)
    predicate: object = field(compare=False, repr=False)
    seed: object = None

    def __post_init__(self):
        if not 1 <= self.l < self.n:
            raise ValueError(f"need 1 <= l < n, got l={self.l}, n={self.n}")
        expected = self.n if self.mode == ITEM else binomial(self.n, 2)
        if len(self.values) != expected:
            raise ValueError(
                f"value table has {len(self.values)} entries, expected {expected}")
        object.__setattr__(self, "values", tuple(self.values))

    def value(self, i: int):
        return self.values[i]

    def edge(self, i: int, j: int):
        if self.mode != PAIRWISE:
            raise ValueError("edge lookup requires pairwise mode")
        return self.values[pair_index(i, j)]

    def subset_satisfies(self, indices) -> bool:
        """Evaluate the property on a sorted l-subset of indices."""
        idx = tuple(sorted(indices))
        if self.mode == ITEM:
            return bool(self.predicate(tuple((i, self.values[i]) for i in idx)))
        edges = tuple(((a, b), self.values[pair_index(a, b)])
                      for a, b in itertools.combinations(idx, 2))
        return bool(self.predicate(idx, edges))


@dataclass(frozen=True)
class FindResult:
    kind: str              # "unique" | "none" | "multiple"
    marked: object         # MarkedSet or None
    count: int
    all_marked: tuple = ()


def find_marked(instance: ProblemInstance) -> FindResult:
    """Exhaustive scan of all C(n, l) subsets against the property."""
    hits = [s for s in itertools.combinations(range(instance.n), instance.l)
            if instance.subset_satisfies(s)]
    if not hits:
        return FindResult("none", None, 0)
    marked = MarkedSet(hits[0])
    kind = "unique" if len(hits) == 1 else "multiple"
    return FindResult(kind, marked, len(hits),
                      tuple(MarkedSet(h) for h in hits))


# --- property families -------------------------------------------------

def _pred_all_equal(items):
    vals = [v for _, v in items]
    return all(v == vals[0] for v in vals)


def _pred_zero_sum_xor(items):
    acc = 0
    for _, v in items:
        acc ^= v
    return acc == 0


def _make_pred_sum_mod_q(q):
    def pred(items):
        return sum(v for _, v in items) % q == 0
    return pred


def _pred_consecutive(items):
    vals = sorted(v for _, v in items)
    return all(b == a + 1 for a, b in zip(vals, vals[1:]))


def _pred_clique(indices, edges):
    return all(v == 1 for _, v in edges)


def _make_pred_explicit(satisfying):
    """Membership in an explicit list of l-sets of (index, value) tuples."""
    canon = {tuple(sorted(tuple(pair) for pair in subset)) for subset in satisfying}

    def pred(items):
        return tuple(sorted(tuple(p) for p in items)) in canon
    return pred


def _draw_distinct(rng, n, lo, hi):
    return rng.sample(range(lo, hi), n)


def _build(n, l, mode, values, family, params, predicate, seed):
    return ProblemInstance(n=n, l=l, mode=mode, values=tuple(values),
                           family_tag=family, property_params=dict(params),
                           predicate=predicate, seed=seed)


def _plant_loop(make_candidate, want_unique):
    """Redraw until the scan classification matches the plant flag."""
    last = None
    for _ in range(_MAX_PLANT_RETRIES):
        inst = make_candidate()
        res = find_marked(inst)
        if want_unique and res.kind == "unique":
            return inst
        if not want_unique and res.kind == "none":
            return inst
        last = res.kind
    raise RuntimeError(
        f"could not realize plant={want_unique} in {_MAX_PLANT_RETRIES} draws "
        f"(last classification: {last})")


def make_family(family: str, **params) -> ProblemInstance:
    """Build a ProblemInstance from one of the named generators.

    Families: element-distinctness, l-distinctness, zero-sum-xor,
    sum-mod-q, consecutive, l-clique, custom.  All generators take an
    explicit seed and a planted flag; planted instances are guaranteed
    (by scan) to have exactly one marked subset, unplanted ones none.
    """
    builders = {
        "element-distinctness": _gen_element_distinctness,
        "l-distinctness": _gen_l_distinctness,
        "zero-sum-xor": _gen_zero_sum_xor,
        "sum-mod-q": _gen_sum_mod_q,
        "consecutive": _gen_consecutive,
        "l-clique": _gen_clique,
        "custom": _gen_custom,
    }
    if family not in builders:
        raise ValueError(f"unknown family {family!r}; known: {sorted(builders)}")
    return builders[family](**params)


def _gen_element_distinctness(n, seed=0, planted=True):
    return _gen_l_distinctness(n, l=2, seed=seed, planted=planted,
                               family="element-distinctness")


def _gen_l_distinctness(n, l=2, seed=0, planted=True, family="l-distinctness"):
    if not 1 <= l < n:
        raise ValueError(f"need 1 <= l < n, got l={l}, n={n}")
    rng = random.Random(seed)
    hi = 4 * n  # room to stay injective off the plant

    def candidate():
        vals = _draw_distinct(rng, n, 0, hi)
        if planted:
            where = rng.sample(range(n), l)
            for i in where[1:]:
                vals[i] = vals[where[0]]
        pred = _pred_all_equal
        return _build(n, l, ITEM, vals, family,
                      {"planted": planted}, pred, seed)
    return _plant_loop(candidate, planted)


def _gen_zero_sum_xor(n, l=3, m_bits=None, seed=0, planted=True):
    if m_bits is None:
        m_bits = math.ceil(math.log2(n)) + 2
    if m_bits < 1:
        raise ValueError("m_bits must be positive")
    rng = random.Random(seed)

    def candidate():
        vals = [rng.getrandbits(m_bits) for _ in range(n)]
        keep = ()
        if planted:
            keep = rng.sample(range(n), l)
            acc = 0
            for i in keep[:-1]:
                acc ^= vals[i]
            vals[keep[-1]] = acc
        _scrub_accidental(vals, l, lambda sub: _xor_all(vals, sub) == 0,
                          lambda: rng.getrandbits(m_bits), keep)
        return _build(n, l, ITEM, vals, "zero-sum-xor",
                      {"m_bits": m_bits, "planted": planted},
                      _pred_zero_sum_xor, seed)
    return _plant_loop(candidate, planted)


def _xor_all(vals, subset):
    acc = 0
    for i in subset:
        acc ^= vals[i]
    return acc


def _scrub_accidental(vals, l, is_hit, redraw, keep=()):
    """Redraw one value of each accidental solution until none remain.

    Wide value ranges make accidental solutions rare but, beyond a few
    dozen elements, near-certain to occur somewhere; whole-table
    rejection would then practically never terminate.  Point repairs
    converge because each redraw breaks one solution and creates new
    ones only with the background density.  A planted solution is
    passed in `keep`: it is never counted as accidental and its values
    are never touched.
    """
    n = len(vals)
    keep = frozenset(keep)
    for _ in range(_MAX_PLANT_RETRIES):
        hits = [s for s in itertools.combinations(range(n), l)
                if frozenset(s) != keep and is_hit(s)]
        if not hits:
            return
        for sub in hits:
            free = [i for i in sub if i not in keep]
            if free:
                vals[free[-1]] = redraw()
    raise RuntimeError(
        f"could not scrub accidental solutions in {_MAX_PLANT_RETRIES} passes")


def _gen_sum_mod_q(n, l=3, q=None, seed=0, planted=True):
    if q is None:
        q = 4 * n
    if q < 2:
        raise ValueError("q must be at least 2")
    rng = random.Random(seed)

    def candidate():
        vals = [rng.randrange(q) for _ in range(n)]
        keep = ()
        if planted:
            keep = rng.sample(range(n), l)
            vals[keep[-1]] = (-sum(vals[i] for i in keep[:-1])) % q
        _scrub_accidental(vals, l,
                          lambda sub: sum(vals[i] for i in sub) % q == 0,
                          lambda: rng.randrange(q), keep)
        return _build(n, l, ITEM, vals, "sum-mod-q",
                      {"q": q, "planted": planted},
                      _make_pred_sum_mod_q(q), seed)
    return _plant_loop(candidate, planted)


def _gen_consecutive(n, l=3, seed=0, planted=True):
    rng = random.Random(seed)
    hi = 8 * n  # sparse values keep accidental runs rare

    def candidate():
        vals = _draw_distinct(rng, n, 0, hi)
        if planted:
            where = rng.sample(range(n), l)
            start = rng.randrange(hi - l)
            for off, i in enumerate(where):
                vals[i] = start + off
        return _build(n, l, ITEM, vals, "consecutive",
                      {"planted": planted}, _pred_consecutive, seed)
    return _plant_loop(candidate, planted)


def _gen_clique(n, l=3, seed=0, planted=True, clique=None, edge_prob=0.25):
    rng = random.Random(seed)
    if clique is not None:
        clique = tuple(sorted(clique))
        if len(clique) != l:
            raise ValueError(f"planted clique must have {l} vertices")

    def candidate():
        vals = [1 if rng.random() < edge_prob else 0
                for _ in range(binomial(n, 2))]
        if planted:
            where = clique if clique is not None else tuple(sorted(rng.sample(range(n), l)))
            for a, b in itertools.combinations(where, 2):
                vals[pair_index(a, b)] = 1
        return _build(n, l, PAIRWISE, vals, "l-clique",
                      {"edge_prob": edge_prob, "planted": planted,
                       "clique": list(clique) if clique else None},
                      _pred_clique, seed)
    return _plant_loop(candidate, planted)


def _gen_custom(n, l, values, mode=ITEM, satisfying=None, predicate=None, seed=None):
    """Explicit property: either a list of satisfying l-subsets of
    (index, value) tuples, or a raw callable (not serializable)."""
    if (satisfying is None) == (predicate is None):
        raise ValueError("custom family needs exactly one of satisfying/predicate")
    params = {}
    if satisfying is not None:
        if mode != ITEM:
            raise ValueError("list-form custom properties are item-mode only")
        predicate = _make_pred_explicit(satisfying)
        params["satisfying"] = [sorted([list(p) for p in s]) for s in satisfying]
    return _build(n, l, mode, values, "custom", params, predicate, seed)


# --- JSON round trip ---------------------------------------------------

def instance_to_json(instance: ProblemInstance) -> dict:
    """Serializable form: {n, l, mode, values|pairs, property, seed}."""
    if instance.family_tag == "custom" and "satisfying" not in instance.property_params:
        raise ValueError("callable custom properties cannot be serialized")
    d = {
        "n": instance.n,
        "l": instance.l,
        "mode": instance.mode,
        "property": {"family": instance.family_tag,
                     "params": dict(instance.property_params)},
        "seed": instance.seed,
    }
    key = "values" if instance.mode == ITEM else "pairs"
    d[key] = list(instance.values)
    return d


def instance_from_json(d: dict) -> ProblemInstance:
    """Rebuild an instance from its JSON form (values taken verbatim)."""
    family = d["property"]["family"]
    params = dict(d["property"]["params"])
    n, l, mode = d["n"], d["l"], d["mode"]
    values = d["values" if mode == ITEM else "pairs"]
    preds = {
        "element-distinctness": _pred_all_equal,
        "l-distinctness": _pred_all_equal,
        "zero-sum-xor": _pred_zero_sum_xor,
        "sum-mod-q": None,
        "consecutive": _pred_consecutive,
        "l-clique": _pred_clique,
        "custom": None,
    }
    if family not in preds:
        raise ValueError(f"unknown family {family!r} in instance file")
    if family == "sum-mod-q":
        pred = _make_pred_sum_mod_q(params["q"])
    elif family == "custom":
        pred = _make_pred_explicit([[tuple(p) for p in s]
                                    for s in params["satisfying"]])
    else:
        pred = preds[family]
    return _build(n, l, mode, values, family, params, pred, d.get("seed"))


def load_instance(path) -> ProblemInstance:
    with open(path) as fh:
        return instance_from_json(json.load(fh))
