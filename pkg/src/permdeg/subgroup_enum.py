"""Conjugacy classes of subgroups.

Primary strategy: element-extension BFS over class representatives.  Each
representative H is extended by one representative per normalizer-orbit of
prime-power-order elements outside H; results are deduplicated against a
registry containing every subgroup of every discovered class (built by
expanding each class under conjugation), so conjugacy tests are O(1) digest
lookups.

Two backends share that strategy: a dense one (multiplication table, ambient
order <= ~5000) and a sparse one (stabilizer chains + element digests) for
Sym(8) and Sym(9).

An independent second strategy -- cyclic extension by prime steps, seeded
with the perfect subgroups -- is provided for cross-validation.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .perm import (
    Perm,
    PermGroup,
    compose,
    inverse,
    is_identity,
    make_named,
    shift_group,
)
from .stabchain import StabChain, build_chain
from .group_ops import Fingerprint, fingerprint, rows_view, element_orders_array
from .dense import (
    BudgetExceeded,
    DENSE_ORDER_CAP,
    DenseClass,
    dense_context,
    dense_subgroup_classes,
    _is_prime_power,
)

SPARSE_ORDER_CAP = 400_000


class EnumError(ValueError):
    pass


class SubgroupClass:
    """One conjugacy class of subgroups of an ambient group."""

    def __init__(self, class_id: int, representative: PermGroup, order: int, class_size: int):
        self.class_id = class_id
        self.representative = representative
        self.order = order
        self.class_size = class_size
        self._fingerprint: Fingerprint | None = None

    @property
    def fingerprint(self) -> Fingerprint:
        if self._fingerprint is None:
            self._fingerprint = fingerprint(self.representative)
        return self._fingerprint

    def __repr__(self):
        return (
            f"SubgroupClass(id={self.class_id}, order={self.order}, "
            f"class_size={self.class_size})"
        )


def reduce_generators(degree: int, gens) -> list[Perm]:
    """Drop generators that do not grow the generated group."""
    kept: list[Perm] = []
    chain = build_chain(PermGroup(degree, ()))
    for g in gens:
        g = tuple(g)
        if not is_identity(g) and not chain.contains(g):
            kept.append(g)
            chain = build_chain(PermGroup.from_gens(degree, kept))
    return kept


def subgroup_classes(
    ambient: PermGroup, node_budget: int = 500_000_000, strategy: str = "element"
) -> list[SubgroupClass]:
    """Every subgroup of ambient is conjugate to exactly one representative."""
    if strategy == "cyclic":
        return _cyclic_extension_classes(ambient, node_budget)
    if strategy != "element":
        raise EnumError(f"unknown strategy {strategy!r}")
    order = build_chain(ambient).order
    if order <= DENSE_ORDER_CAP:
        ctx = dense_context(ambient)
        dense = dense_subgroup_classes(ctx, node_budget=node_budget)
        out = []
        for c in dense:
            gens = reduce_generators(ambient.degree, (ctx.perm(i) for i in c.gens))
            out.append(
                SubgroupClass(c.class_id, PermGroup.from_gens(ambient.degree, gens),
                              c.order, c.class_size)
            )
        return out
    if order > SPARSE_ORDER_CAP:
        raise EnumError(f"ambient order {order} beyond supported range")
    return _sparse_subgroup_classes(ambient, node_budget)


# ---------------------------------------------------------------------------
# sparse backend


class _SparseAmbient:
    def __init__(self, ambient: PermGroup):
        self.group = ambient
        self.chain = build_chain(ambient)
        self.order = self.chain.order
        self.degree = ambient.degree
        self.elements = self.chain.element_array()        # lex-sorted
        self.view = rows_view(self.elements)
        self.orders = element_orders_array(self.elements)
        self.gens = reduce_generators(ambient.degree, ambient.generators)
        m = self.degree
        self.is_full_sym = self.order == math.factorial(m) and m >= 5
        pp = np.array([_is_prime_power(int(o)) for o in self.orders])
        self.cand = np.nonzero(pp)[0].astype(np.int64)    # candidate element ranks
        self.cand_pos = np.full(self.order, -1, dtype=np.int64)
        self.cand_pos[self.cand] = np.arange(len(self.cand))
        self.cand_rows = self.elements[self.cand]

    def rank_rows(self, rows: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.view, rows_view(rows))

    def conj_rows(self, rows: np.ndarray, g: Perm) -> np.ndarray:
        gi = np.array(inverse(g))
        ga = np.array(g, dtype=rows.dtype)
        return ga[rows[:, gi]]

    def cand_conj_map(self, g: Perm) -> np.ndarray:
        out = self.conj_rows(self.cand_rows, g)
        return self.cand_pos[self.rank_rows(out)]


def _digest(arr: np.ndarray) -> bytes:
    return hashlib.blake2b(np.ascontiguousarray(arr).tobytes(), digest_size=16).digest()


@dataclass
class _SparseClass:
    class_id: int
    gens: list[Perm]
    chain: StabChain
    order: int
    class_size: int
    norm_gens: list[Perm]
    is_giant: bool = False      # Alt(m) or Sym(m) inside Sym(m)


def _sorted_elements(chain: StabChain) -> np.ndarray:
    return chain.element_array()


def _sparse_subgroup_classes(ambient: PermGroup, node_budget: int) -> list[SubgroupClass]:
    amb = _SparseAmbient(ambient)
    m = amb.degree
    giant_bound = math.factorial(m - 1) if amb.is_full_sym else amb.order + 1
    registry: dict[bytes, int] = {}
    giant_registry: dict[int, int] = {}
    classes: list[_SparseClass] = []
    budget = node_budget

    def register(gens: list[Perm], chain: StabChain) -> int:
        nonlocal budget
        cid = len(classes)
        order = chain.order
        gens = reduce_generators(m, gens)
        if amb.is_full_sym and order > giant_bound:
            # index < m in Sym(m), m >= 5: the subgroup is Alt(m) or Sym(m)
            giant_registry[order] = cid
            classes.append(
                _SparseClass(cid, gens, chain, order, 1, list(amb.gens), is_giant=True)
            )
            return cid
        elems = _sorted_elements(chain)
        key0 = _digest(elems)
        seen: dict[bytes, Perm] = {key0: tuple(range(m))}
        orbit: list[tuple[bytes, np.ndarray]] = [(key0, elems)]
        norm_gens = list(gens)
        nchain = build_chain(PermGroup.from_gens(m, norm_gens))
        qi = 0
        while qi < len(orbit):
            key, rows = orbit[qi]
            r = seen[key]
            qi += 1
            budget -= len(amb.gens) * max(1, rows.shape[0] // 8)
            if budget < 0:
                raise BudgetExceeded("subgroup enumeration budget exceeded")
            for s in amb.gens:
                rows2 = amb.conj_rows(rows, s)
                rows2 = rows2[np.lexsort(rows2.T[::-1])]
                key2 = _digest(rows2)
                rs = compose(r, s)
                known = seen.get(key2)
                if known is None:
                    seen[key2] = rs
                    orbit.append((key2, rows2))
                else:
                    z = compose(rs, inverse(known))
                    if not nchain.contains(z):
                        norm_gens.append(z)
                        nchain = build_chain(PermGroup.from_gens(m, norm_gens))
        class_size = len(orbit)
        if nchain.order != amb.order // class_size:
            raise EnumError("normalizer Schreier generators incomplete")
        for key, _ in orbit:
            registry[key] = cid
        classes.append(
            _SparseClass(cid, gens, chain, order, class_size,
                         reduce_generators(m, norm_gens))
        )
        return cid

    register([], build_chain(PermGroup(m, ())))
    qi = 0
    while qi < len(classes):
        cls = classes[qi]
        qi += 1
        if cls.order == amb.order:
            continue
        if cls.is_giant:
            # only possible extension of Alt(m) inside Sym(m) is Sym(m)
            if amb.order not in giant_registry:
                register(list(amb.gens), amb.chain)
            continue
        elems = _sorted_elements(cls.chain)
        ranks = amb.rank_rows(elems)
        cand_mask = np.ones(len(amb.cand), dtype=bool)
        inside = amb.cand_pos[ranks]
        cand_mask[inside[inside >= 0]] = False
        conj_maps = [amb.cand_conj_map(g) for g in cls.norm_gens]
        order_positions = np.nonzero(cand_mask)[0]
        for start in order_positions:
            if not cand_mask[start]:
                continue
            orb = [int(start)]
            cand_mask[start] = False
            oi = 0
            while oi < len(orb):
                y = orb[oi]
                oi += 1
                for cm in conj_maps:
                    z = int(cm[y])
                    if z >= 0 and cand_mask[z]:
                        cand_mask[z] = False
                        orb.append(z)
            budget -= len(orb)
            if budget < 0:
                raise BudgetExceeded("subgroup enumeration budget exceeded")
            g = tuple(int(v) for v in amb.cand_rows[int(start)])
            join_gens = cls.gens + [g]
            jchain = build_chain(PermGroup.from_gens(m, join_gens))
            if amb.is_full_sym and jchain.order > giant_bound:
                if jchain.order not in giant_registry:
                    register(join_gens, jchain)
                continue
            jelems = _sorted_elements(jchain)
            if _digest(jelems) not in registry:
                register(join_gens, jchain)

    return [
        SubgroupClass(c.class_id, PermGroup.from_gens(m, c.gens), c.order, c.class_size)
        for c in classes
    ]


# ---------------------------------------------------------------------------
# brute-force oracle (all subgroups, not just classes)

_BRUTE_CAP = 5040


def brute_force_subgroups(ambient: PermGroup) -> list[PermGroup]:
    """Exhaustive closure BFS over all subgroups.  Complete by construction;
    intended as an oracle for orders up to |Sym(7)|."""
    ctx = dense_context(ambient, cap=_BRUTE_CAP)
    N = ctx.order
    seen: dict[bytes, tuple[np.ndarray, list[int]]] = {}
    queue: list[bytes] = []

    def add(elems: np.ndarray, gens: list[int]) -> None:
        key = ctx.subgroup_key(elems)
        if key not in seen:
            seen[key] = (elems, gens)
            queue.append(key)

    add(ctx.closure([]), [])
    for x in range(N):
        if x != ctx.identity_idx:
            add(ctx.closure([x]), [x])
    qi = 0
    while qi < len(queue):
        elems, gens = seen[queue[qi]]
        qi += 1
        if len(elems) == N:
            continue
        mask = np.zeros(N, dtype=bool)
        mask[elems] = True
        for g in range(N):
            if not mask[g]:
                add(ctx.closure(gens + [g]), gens + [g])
    out = []
    for key in queue:
        elems, _ = seen[key]
        gens_idx: list[int] = []
        have = ctx.closure([])
        have_mask = np.zeros(N, dtype=bool)
        have_mask[have] = True
        for e in elems:
            if not have_mask[e]:
                gens_idx.append(int(e))
                cl = ctx.closure(gens_idx)
                have_mask[:] = False
                have_mask[cl] = True
        out.append(
            PermGroup.from_gens(ambient.degree, (ctx.perm(i) for i in gens_idx))
        )
    return out


def subgroup_element_key(G: PermGroup) -> bytes:
    """Canonical digest of a subgroup's element set (degree-tagged)."""
    arr = build_chain(G).element_array()
    return _digest(arr)


def expand_class(ambient: PermGroup, rep: PermGroup) -> set[bytes]:
    """Element-set keys of every conjugate of rep under ambient."""
    amb_gens = list(ambient.generators)
    arr = build_chain(rep).element_array()
    start = _digest(arr)
    seen = {start}
    queue = [arr]
    gi_list = [(np.array(inverse(g)), np.array(g, dtype=arr.dtype)) for g in amb_gens]
    while queue:
        rows = queue.pop(0)
        for gi, ga in gi_list:
            rows2 = ga[rows[:, gi]]
            rows2 = rows2[np.lexsort(rows2.T[::-1])]
            key = _digest(rows2)
            if key not in seen:
                seen.add(key)
                queue.append(rows2)
    return seen


# ---------------------------------------------------------------------------
# second strategy: cyclic extension with perfect seeding


def _perm_from_map(points: list, mapping) -> Perm:
    idx = {p: i for i, p in enumerate(points)}
    return tuple(idx[mapping(p)] for p in points)


def psl2_prime(p: int) -> PermGroup:
    """PSL(2,p) acting on the projective line over F_p (p+1 points)."""
    points = list(range(p)) + ["inf"]

    def t(x):  # x -> x + 1
        return "inf" if x == "inf" else (x + 1) % p

    def s(x):  # x -> -1/x
        if x == "inf":
            return 0
        if x == 0:
            return "inf"
        return (-pow(x, p - 2, p)) % p

    return PermGroup.from_gens(p + 1, [_perm_from_map(points, t), _perm_from_map(points, s)])


def psl2_8() -> PermGroup:
    """PSL(2,8) on the 9 points of the projective line over GF(8)."""
    # GF(8) = F2[x]/(x^3 + x + 1), elements as bit masks 0..7
    def gmul(a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & 8:
                a ^= 0b1011
        return r

    ginv = {a: next(b for b in range(1, 8) if gmul(a, b) == 1) for a in range(1, 8)}
    points = list(range(8)) + ["inf"]

    def t(x):
        return "inf" if x == "inf" else x ^ 1

    def mul_gen(x):  # x -> c*x with c = 0b010 a generator of GF(8)*
        return "inf" if x == "inf" else gmul(2, x)

    def s(x):  # x -> 1/x
        if x == "inf":
            return 0
        if x == 0:
            return "inf"
        return ginv[x]

    return PermGroup.from_gens(
        9, [_perm_from_map(points, t), _perm_from_map(points, mul_gen), _perm_from_map(points, s)]
    )


def psl3_2() -> PermGroup:
    """PSL(3,2) acting on the 7 nonzero vectors of F_2^3."""
    points = list(range(1, 8))

    def apply_mat(M, v):
        out = 0
        for i in range(3):
            bit = 0
            for j in range(3):
                bit ^= M[i][j] & (v >> j)
            out |= (bit & 1) << i
        return out

    A = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    B = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    return PermGroup.from_gens(
        7,
        [_perm_from_map(points, lambda v: apply_mat(A, v)),
         _perm_from_map(points, lambda v: apply_mat(B, v))],
    )


def agl3_2() -> PermGroup:
    """AGL(3,2) = 2^3 : PSL(3,2) on the 8 vectors of F_2^3 (perfect)."""
    lin = psl3_2()
    points = list(range(8))
    gens = [tuple([0] + [g[v - 1] + 1 for v in range(1, 8)]) for g in lin.generators]
    gens.append(_perm_from_map(points, lambda v: v ^ 1))
    return PermGroup.from_gens(8, gens)


def perfect_seed_groups(m: int) -> list[PermGroup]:
    """The nontrivial perfect subgroups of Sym(m), m <= 9, up to conjugacy.

    A nontrivial orbit of a perfect group has size >= 5 (its image on a
    smaller orbit would be a perfect subgroup of Sym(4), hence trivial), so
    at degree <= 9 there is a single nontrivial orbit and the group is a
    transitive perfect group of degree 5..9: an alternating group, one of
    the projective groups PSL(2,5), PSL(3,2), PSL(2,7), PSL(2,8) in its
    natural action, or the affine group AGL(3,2) on 8 points.
    """
    if m > 9:
        raise EnumError("perfect seeds are only classified up to degree 9")
    seeds = []
    for k in range(5, m + 1):
        seeds.append(shift_group(make_named("alternating", k), m))
    if m >= 6:
        seeds.append(shift_group(psl2_prime(5), m))       # A5 transitive on 6
    if m >= 7:
        seeds.append(shift_group(psl3_2(), m))            # PSL(3,2) on 7
    if m >= 8:
        seeds.append(shift_group(psl2_prime(7), m))       # PSL(2,7) on 8
        seeds.append(shift_group(agl3_2(), m))            # 2^3:PSL(3,2) on 8
    if m >= 9:
        seeds.append(shift_group(psl2_8(), m))            # PSL(2,8) on 9
    return seeds


def _primes_dividing(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _cyclic_extension_classes(ambient: PermGroup, node_budget: int) -> list[SubgroupClass]:
    """Independent enumeration: prime-index cyclic extensions upward from the
    perfect subgroup classes (every non-perfect group has a normal subgroup
    of prime index, so descending such steps ends at a perfect subgroup)."""
    amb = _SparseAmbient(ambient)
    m = amb.degree
    if not amb.is_full_sym and amb.order > 24:
        raise EnumError("cyclic strategy is implemented for Sym(m) ambients")
    registry: dict[bytes, int] = {}
    classes: list[tuple[int, list[Perm], int, int]] = []  # id, gens, order, class_size
    work: list[tuple[list[Perm], StabChain, np.ndarray]] = []
    budget = node_budget

    def register(gens: list[Perm], chain: StabChain) -> None:
        nonlocal budget
        cid = len(classes)
        gens = reduce_generators(m, gens)
        elems = chain.element_array()
        key0 = _digest(elems)
        if key0 in registry:
            return
        seen = {key0}
        orbit = [elems]
        qi = 0
        while qi < len(orbit):
            rows = orbit[qi]
            qi += 1
            budget -= len(amb.gens) * max(1, rows.shape[0] // 8)
            if budget < 0:
                raise BudgetExceeded("cyclic enumeration budget exceeded")
            for s in amb.gens:
                rows2 = amb.conj_rows(rows, s)
                rows2 = rows2[np.lexsort(rows2.T[::-1])]
                key2 = _digest(rows2)
                if key2 not in seen:
                    seen.add(key2)
                    orbit.append(rows2)
        for key in seen:
            registry[key] = cid
        classes.append((cid, gens, chain.order, len(orbit)))
        work.append((gens, chain, elems))

    # seeds: trivial group plus the perfect subgroups (a group of order
    # <= 24 has none, the smallest perfect group having order 60)
    register([], build_chain(PermGroup(m, ())))
    if amb.is_full_sym:
        for seed in perfect_seed_groups(m):
            register(list(seed.generators), build_chain(seed))

    qi = 0
    while qi < len(work):
        gens, chain, elems = work[qi]
        qi += 1
        order = chain.order
        if order == amb.order:
            continue
        # normalizer of H in the ambient group
        if order == 1:
            # extensions of the trivial group: one cyclic group per
            # conjugacy class (cycle type) of prime-order elements
            seen_types = set()
            for rank in amb.cand:
                o = int(amb.orders[rank])
                if o in (2, 3, 5, 7) or (o > 7 and _is_prime(o)):
                    row = tuple(int(v) for v in amb.elements[rank])
                    ct = _cycle_type_of(row)
                    if ct not in seen_types:
                        seen_types.add(ct)
                        register([row], build_chain(PermGroup.from_gens(m, [row])))
            continue
        Ngrp = _normalizer_sparse(amb, gens, chain, elems)
        nchain = build_chain(Ngrp)
        quot = nchain.order // order
        if quot == 1:
            continue
        # coset representatives of H in N(H)
        reps = _coset_reps(Ngrp, chain, elems, m)
        primes = _primes_dividing(quot)
        for r in reps:
            if is_identity(r):
                continue
            for p in primes:
                rp = r
                for _ in range(p - 1):
                    rp = compose(rp, r)
                if not chain.contains(rp):
                    continue
                # J = H u Hr u ... u Hr^(p-1); row block k is h * r^k
                blocks = [elems]
                rk = r
                for _ in range(p - 1):
                    rk_arr = np.array(rk, dtype=elems.dtype)
                    blocks.append(rk_arr[elems])
                    rk = compose(rk, r)
                rows = np.vstack(blocks)
                rows = rows[np.lexsort(rows.T[::-1])]
                key = _digest(rows)
                if key not in registry:
                    jchain = build_chain(PermGroup.from_gens(m, gens + [r]))
                    if jchain.order != order * p:
                        raise EnumError("cyclic extension produced wrong order")
                    register(gens + [r], jchain)
                break
    out = [
        SubgroupClass(cid, PermGroup.from_gens(m, gens), order, csize)
        for cid, gens, order, csize in classes
    ]
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _cycle_type_of(p: Perm) -> tuple[int, ...]:
    from .perm import cycle_type
    return cycle_type(p)


def _normalizer_sparse(amb: _SparseAmbient, gens: list[Perm], chain: StabChain,
                       elems: np.ndarray) -> PermGroup:
    """Normalizer in the ambient via the conjugation-orbit Schreier method."""
    m = amb.degree
    key0 = _digest(elems)
    seen: dict[bytes, Perm] = {key0: tuple(range(m))}
    orbit = [(key0, elems)]
    norm_gens = list(gens)
    nchain = build_chain(PermGroup.from_gens(m, norm_gens))
    qi = 0
    while qi < len(orbit):
        key, rows = orbit[qi]
        r = seen[key]
        qi += 1
        for s in amb.gens:
            rows2 = amb.conj_rows(rows, s)
            rows2 = rows2[np.lexsort(rows2.T[::-1])]
            key2 = _digest(rows2)
            rs = compose(r, s)
            known = seen.get(key2)
            if known is None:
                seen[key2] = rs
                orbit.append((key2, rows2))
            else:
                z = compose(rs, inverse(known))
                if not nchain.contains(z):
                    norm_gens.append(z)
                    nchain = build_chain(PermGroup.from_gens(m, norm_gens))
    if nchain.order != amb.order // len(orbit):
        raise EnumError("normalizer Schreier generators incomplete")
    return PermGroup.from_gens(m, reduce_generators(m, norm_gens))


def _coset_reps(N: PermGroup, hchain: StabChain, helems: np.ndarray, m: int) -> list[Perm]:
    """Representatives of the right cosets of H inside N."""
    hview = rows_view(helems)

    def coset_key(g: Perm) -> bytes:
        rows = np.array(g, dtype=helems.dtype)[helems]
        rows = rows[np.lexsort(rows.T[::-1])]
        return _digest(rows)

    reps = [tuple(range(m))]
    seen = {coset_key(reps[0])}
    qi = 0
    while qi < len(reps):
        r = reps[qi]
        qi += 1
        for s in N.generators:
            t = compose(r, s)
            k = coset_key(t)
            if k not in seen:
                seen.add(k)
                reps.append(t)
    return reps
