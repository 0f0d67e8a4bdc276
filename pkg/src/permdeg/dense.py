"""Dense (multiplication-table) view of a small group.

For ambient groups of order up to a few thousand we index every element and
precompute the full multiplication table; subgroups become sorted index
arrays, closures become table walks, and conjugation becomes an index map.
This backs subgroup enumeration for Sym(m), m <= 7, and for the groups whose
minimal degree we compute directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .perm import Perm, PermGroup
from .stabchain import build_chain
from .group_ops import element_orders_array, rows_view


DENSE_ORDER_CAP = 5100


class DenseError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Enumeration exceeded its node budget; rerun with a larger one."""


@dataclass
class DenseGroup:
    """Element-indexed group: elements, multiplication table, orders."""

    group: PermGroup
    elements: np.ndarray            # (N, degree) uint8, lex-sorted rows
    table: np.ndarray               # (N, N) element index of e_i * e_j
    inv: np.ndarray                 # (N,)
    orders: np.ndarray              # (N,)
    identity_idx: int
    gen_idx: list[int]              # indices of the group's generators
    _conj_cache: dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.elements.shape[0]

    @property
    def degree(self) -> int:
        return self.elements.shape[1]

    def rank_rows(self, rows: np.ndarray) -> np.ndarray:
        view = rows_view(rows)
        pos = np.searchsorted(self._sorted_view, view)
        return pos.astype(np.int32)

    def perm(self, idx: int) -> Perm:
        return tuple(int(v) for v in self.elements[idx])

    def conj_map(self, g: int) -> np.ndarray:
        """Index map x -> g^-1 * x * g."""
        cached = self._conj_cache.get(g)
        if cached is None:
            row = self.table[self.inv[g], :]
            cached = self.table[row, g]
            if len(self._conj_cache) < 512:
                self._conj_cache[g] = cached
        return cached

    def closure(self, gens: list[int]) -> np.ndarray:
        """Sorted element indices of the subgroup generated by gens."""
        mask = np.zeros(self.order, dtype=bool)
        mask[self.identity_idx] = True
        frontier = np.array([self.identity_idx], dtype=np.int64)
        while frontier.size:
            fresh_parts = []
            for g in gens:
                new = self.table[frontier, g]
                new = np.unique(new[~mask[new]])
                if new.size:
                    mask[new] = True
                    fresh_parts.append(new)
            frontier = (
                np.unique(np.concatenate(fresh_parts))
                if fresh_parts
                else np.empty(0, dtype=np.int64)
            )
        return np.nonzero(mask)[0].astype(np.int32)

    def subgroup_key(self, elems: np.ndarray) -> bytes:
        return np.ascontiguousarray(elems, dtype=np.int32).tobytes()

    def conjugate_subgroup(self, elems: np.ndarray, g: int) -> np.ndarray:
        out = self.conj_map(g)[elems]
        out.sort()
        return out

    def core_mask(self, sub_mask: np.ndarray) -> np.ndarray:
        """Largest normal subgroup of the ambient group inside the mask,
        i.e. the intersection of all conjugates (kernel of the coset action)."""
        m = sub_mask.copy()
        maps = [self.conj_map(g) for g in self.gen_idx]
        while True:
            before = int(m.sum())
            for cm in maps:
                m &= m[cm]
            if int(m.sum()) == before:
                return m

    def minimal_normal_subgroups(self) -> list[np.ndarray]:
        """Minimal nontrivial normal subgroups, as element masks.

        Every minimal normal subgroup is the normal closure of any of its
        prime-order elements, so one representative per conjugacy class of
        prime-order elements suffices.
        """
        maps = [self.conj_map(g) for g in self.gen_idx]
        visited = np.zeros(self.order, dtype=bool)
        visited[self.identity_idx] = True
        closures: dict[bytes, np.ndarray] = {}
        for x in range(self.order):
            if visited[x]:
                continue
            stack = [x]
            visited[x] = True
            while stack:
                y = stack.pop()
                for cm in maps:
                    z = int(cm[y])
                    if not visited[z]:
                        visited[z] = True
                        stack.append(z)
            if _is_prime(int(self.orders[x])):
                elems = self.normal_closure([x])
                closures.setdefault(self.subgroup_key(elems), elems)
        out: list[np.ndarray] = []
        for elems in sorted(closures.values(), key=len):
            mask = np.zeros(self.order, dtype=bool)
            mask[elems] = True
            if not any(mask[e].all() for e in out):
                out.append(elems)
        return out

    def normal_closure(self, gens: list[int]) -> np.ndarray:
        maps = [self.conj_map(g) for g in self.gen_idx]
        work = list(gens)
        seen = set(work)
        i = 0
        while i < len(work):
            x = work[i]
            i += 1
            for cm in maps:
                y = int(cm[x])
                if y not in seen:
                    seen.add(y)
                    work.append(y)
        return self.closure(work)


def dense_context(G: PermGroup, cap: int = DENSE_ORDER_CAP) -> DenseGroup:
    chain = build_chain(G)
    n = chain.order
    if n > cap:
        raise DenseError(f"group order {n} exceeds dense cap {cap}")
    E = chain.element_array()
    sorted_view = rows_view(E)
    dtype = np.int16 if n < 2**15 else np.int32
    T = np.empty((n, n), dtype=dtype)
    for i in range(n):
        rows = E[:, E[i]]  # row j = e_i * e_j (apply e_i first)
        pos = np.searchsorted(sorted_view, rows_view(rows))
        T[i, :] = pos
    inv_rows = np.argsort(E, axis=1).astype(E.dtype)
    inv = np.searchsorted(sorted_view, rows_view(inv_rows)).astype(np.int32)
    orders = element_orders_array(E)
    ident = int(np.searchsorted(sorted_view, rows_view(
        np.arange(E.shape[1], dtype=E.dtype)[None, :]))[0])
    gen_rows = np.array([g for g in G.generators], dtype=E.dtype).reshape(
        len(G.generators), E.shape[1]
    )
    gidx = (
        [int(v) for v in np.searchsorted(sorted_view, rows_view(gen_rows))]
        if len(G.generators)
        else []
    )
    ctx = DenseGroup(
        group=G,
        elements=E,
        table=T,
        inv=inv,
        orders=orders,
        identity_idx=ident,
        gen_idx=gidx,
    )
    ctx._sorted_view = sorted_view
    return ctx


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
    # orders beyond 13 that are prime powers at our degrees are primes
    return True


@dataclass
class DenseClass:
    class_id: int
    gens: list[int]
    elems: np.ndarray        # sorted element indices of the representative
    order: int
    class_size: int
    norm_gens: list[int]     # generators of the ambient normalizer


def dense_subgroup_classes(
    ctx: DenseGroup, node_budget: int = 20_000_000
) -> list[DenseClass]:
    """All conjugacy classes of subgroups of the ambient dense group.

    Layered extension BFS: each class representative H is extended by one
    representative per normalizer-orbit of prime-power-order elements
    outside H; joins are deduplicated against a registry holding every
    subgroup of every discovered class.
    """
    N = ctx.order
    pp_mask = np.array([_is_prime_power(int(o)) for o in ctx.orders])
    registry: dict[bytes, int] = {}
    classes: list[DenseClass] = []
    queue: list[int] = []
    budget = node_budget

    def register(gens: list[int], elems: np.ndarray) -> int:
        nonlocal budget
        cid = len(classes)
        # conjugation orbit of the subgroup; Schreier generators give the
        # normalizer, class size comes from orbit-stabilizer
        key0 = ctx.subgroup_key(elems)
        seen: dict[bytes, int] = {key0: ctx.identity_idx}
        orbit = [(key0, elems)]
        norm_order_goal: int | None = None
        norm_gens = list(gens)
        norm_mask = np.zeros(N, dtype=bool)
        norm_mask[ctx.closure(norm_gens)] = True
        qi = 0
        while qi < len(orbit):
            key, sub = orbit[qi]
            r = seen[key]
            qi += 1
            budget -= len(ctx.gen_idx)
            if budget < 0:
                raise BudgetExceeded("subgroup enumeration budget exceeded")
            for s in ctx.gen_idx:
                sub2 = ctx.conjugate_subgroup(sub, s)
                key2 = ctx.subgroup_key(sub2)
                rs = int(ctx.table[r, s])
                known = seen.get(key2)
                if known is None:
                    seen[key2] = rs
                    orbit.append((key2, sub2))
                else:
                    if norm_order_goal is not None and int(norm_mask.sum()) >= norm_order_goal:
                        continue
                    z = int(ctx.table[rs, ctx.inv[known]])
                    if not norm_mask[z]:
                        norm_gens.append(z)
                        norm_mask[:] = False
                        norm_mask[ctx.closure(norm_gens)] = True
        class_size = len(orbit)
        norm_order_goal = N // class_size
        # a second sweep is unnecessary: Schreier generators over the full
        # orbit generate the stabilizer; check the order now
        if int(norm_mask.sum()) != norm_order_goal:
            raise DenseError("normalizer Schreier generators incomplete")
        for key, _ in orbit:
            registry[key] = cid
        classes.append(
            DenseClass(
                class_id=cid,
                gens=list(gens),
                elems=elems,
                order=len(elems),
                class_size=class_size,
                norm_gens=norm_gens,
            )
        )
        queue.append(cid)
        return cid

    register([], ctx.closure([]))
    qi = 0
    while qi < len(queue):
        cls = classes[queue[qi]]
        qi += 1
        if cls.order == N:
            continue
        sub_mask = np.zeros(N, dtype=bool)
        sub_mask[cls.elems] = True
        cand = pp_mask & ~sub_mask
        conj_maps = [ctx.conj_map(g) for g in cls.norm_gens]
        while cand.any():
            x = int(np.argmax(cand))
            # clear the whole normalizer-orbit of x from the candidate pool
            orb = [x]
            cand[x] = False
            oi = 0
            while oi < len(orb):
                y = orb[oi]
                oi += 1
                for cm in conj_maps:
                    z = int(cm[y])
                    if cand[z]:
                        cand[z] = False
                        orb.append(z)
            budget -= len(orb)
            if budget < 0:
                raise BudgetExceeded("subgroup enumeration budget exceeded")
            join_gens = cls.gens + [x]
            elems = ctx.closure(join_gens)
            key = ctx.subgroup_key(elems)
            if key not in registry:
                register(join_gens, elems)
    return classes


def total_subgroup_count(classes: list[DenseClass]) -> int:
    return sum(c.class_size for c in classes)
