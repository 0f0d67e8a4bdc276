"""Algebraic primitives on permutation groups inside Sym(n).

Centralizers are built structurally from the orbit decomposition (with the
product-formula order check), normalizers and transporters via the
conjugation action on subgroup element-sets, cores via the coset action.
All functions are pure.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .perm import (
    Perm,
    PermGroup,
    all_perms,
    compose,
    conjugate,
    identity,
    inverse,
    is_identity,
    make_named,
)
from .stabchain import StabChain, build_chain, point_stabilizer


class GroupOpsError(ValueError):
    pass


# ---------------------------------------------------------------------------
# orbits


@dataclass(frozen=True)
class Orbit:
    points: tuple[int, ...]          # sorted
    representative: int              # smallest point
    stabilizer: PermGroup            # stabilizer of the representative
    type_key: int                    # orbits with equivalent actions share a key


@dataclass(frozen=True)
class OrbitDecomposition:
    degree: int
    orbits: tuple[Orbit, ...]        # listed by smallest element


def _raw_orbits(G: PermGroup) -> list[list[int]]:
    seen = [False] * G.degree
    out = []
    for a in range(G.degree):
        if seen[a]:
            continue
        orb = [a]
        seen[a] = True
        queue = [a]
        while queue:
            x = queue.pop(0)
            for g in G.generators:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
                    queue.append(y)
        out.append(sorted(orb))
    return out


def _orbit_transversal(G: PermGroup, a: int) -> dict[int, Perm]:
    """BFS transversal: u_x maps a to x."""
    trans = {a: identity(G.degree)}
    queue = [a]
    while queue:
        x = queue.pop(0)
        u = trans[x]
        for g in G.generators:
            y = g[x]
            if y not in trans:
                trans[y] = compose(u, g)
                queue.append(y)
    return trans


def orbits(G: PermGroup) -> OrbitDecomposition:
    """G-orbits with representative stabilizers and equivalence type keys.

    Two orbits get the same key iff the actions on them are equivalent,
    decided by looking for a point of the second orbit fixed by the whole
    stabilizer of the first orbit's representative (which also yields the
    explicit intertwiner used by the centralizer).
    """
    chain = build_chain(G)
    raw = _raw_orbits(G)
    reps = [orb[0] for orb in raw]
    stabs = [point_stabilizer(chain, r) for r in reps]
    type_keys = [-1] * len(raw)
    next_key = 0
    for i in range(len(raw)):
        if type_keys[i] >= 0:
            continue
        type_keys[i] = next_key
        for j in range(i + 1, len(raw)):
            if type_keys[j] >= 0 or len(raw[j]) != len(raw[i]):
                continue
            if _equivalent_orbit_point(stabs[i], raw[j]) is not None:
                type_keys[j] = next_key
        next_key += 1
    orbs = tuple(
        Orbit(tuple(raw[i]), reps[i], stabs[i], type_keys[i]) for i in range(len(raw))
    )
    return OrbitDecomposition(G.degree, orbs)


def _equivalent_orbit_point(stab: PermGroup, other_orbit: list[int]) -> int | None:
    """Smallest point of other_orbit fixed by every generator of stab."""
    for b in other_orbit:
        if all(g[b] == b for g in stab.generators):
            return b
    return None


# ---------------------------------------------------------------------------
# centralizer in Sym(n)


def centralizer_in_sym(G: PermGroup) -> PermGroup:
    """C_Sym(n)(G), built orbit by orbit.

    Per orbit the equivariant self-maps come from stabilizer-fixed points;
    equivalent orbits contribute intertwiner transpositions.  The order is
    asserted against the product formula, and every generator is asserted
    to commute with every generator of G.
    """
    n = G.degree
    if G.is_trivial():
        return make_named("symmetric", n) if n >= 2 else PermGroup(n, ())
    dec = orbits(G)
    gens: list[Perm] = []
    expected = 1
    by_type: dict[int, list[Orbit]] = {}
    for orb in dec.orbits:
        by_type.setdefault(orb.type_key, []).append(orb)
    for group_orbs in by_type.values():
        k = len(group_orbs)
        first = group_orbs[0]
        a = first.representative
        trans = _orbit_transversal(G, a)
        fixed = [
            b for b in first.points if all(g[b] == b for g in first.stabilizer.generators)
        ]
        expected *= len(fixed) ** k * math.factorial(k)
        for b in fixed:
            if b == a:
                continue
            z = list(range(n))
            for x, u in trans.items():
                z[x] = u[b]
            gens.append(tuple(z))
        # adjacent intertwiner swaps between equivalent orbits
        for i in range(k - 1):
            oa = group_orbs[i]
            ob = group_orbs[i + 1]
            ta = _orbit_transversal(G, oa.representative)
            bpt = _equivalent_orbit_point(oa.stabilizer, list(ob.points))
            assert bpt is not None
            tau = list(range(n))
            for x, u in ta.items():
                y = u[bpt]
                tau[x] = y
                tau[y] = x
            gens.append(tuple(tau))
    C = PermGroup.from_gens(n, gens)
    for z in C.generators:
        for g in G.generators:
            if compose(z, g) != compose(g, z):
                raise GroupOpsError("centralizer generator fails to commute")
    if build_chain(C).order != expected:
        raise GroupOpsError("centralizer order does not match the orbit formula")
    return C


# ---------------------------------------------------------------------------
# element arrays, keys, and the conjugation action on subgroups


def element_array(G: PermGroup | StabChain) -> np.ndarray:
    chain = G if isinstance(G, StabChain) else build_chain(G)
    return chain.element_array()


def _lexsort_rows(arr: np.ndarray) -> np.ndarray:
    return arr[np.lexsort(arr.T[::-1])]


def rows_view(arr: np.ndarray) -> np.ndarray:
    """View uint8 rows as fixed-width bytes for sorting/searchsorted."""
    a = np.ascontiguousarray(arr)
    return a.view(f"S{a.shape[1]}").ravel()


def subgroup_key(arr: np.ndarray) -> bytes:
    """Canonical digest of a subgroup's (lex-sorted) element array."""
    return hashlib.blake2b(np.ascontiguousarray(arr).tobytes(), digest_size=16).digest()


def conjugate_rows(arr: np.ndarray, g: Perm) -> np.ndarray:
    """Conjugate every permutation row by g; rows come back lex-sorted."""
    gi = np.array(inverse(g))
    ga = np.array(g, dtype=arr.dtype)
    out = ga[arr[:, gi]]
    return _lexsort_rows(out)


def _sym_gens(n: int) -> list[Perm]:
    return list(make_named("symmetric", n).generators)


def _conjugation_orbit(
    H_arr: np.ndarray,
    degree: int,
    target_key: bytes | None = None,
    want_schreier: bool = False,
    order_goal: int | None = None,
    start_gens: list[Perm] | None = None,
):
    """BFS of {H^g : g in Sym(n)} on element-set keys.

    Returns (orbit_size, found_conjugator, schreier_gens).  If target_key is
    given, stops as soon as it appears and returns the conjugating element.
    If want_schreier, collects stabilizer (normalizer) generators, stopping
    early once a chain over start_gens+schreier reaches order_goal.
    """
    gens = _sym_gens(degree)
    start_key = subgroup_key(H_arr)
    if target_key == start_key:
        return 1, identity(degree), []
    seen: dict[bytes, Perm] = {start_key: identity(degree)}
    queue: list[tuple[bytes, np.ndarray]] = [(start_key, H_arr)]
    schreier: list[Perm] = []
    chain = None
    if want_schreier:
        chain = build_chain(PermGroup.from_gens(degree, start_gens or []))
    while queue:
        key, arr = queue.pop(0)
        r = seen[key]
        for s in gens:
            arr2 = conjugate_rows(arr, s)
            key2 = subgroup_key(arr2)
            rs = compose(r, s)
            if key2 not in seen:
                seen[key2] = rs
                if target_key is not None and key2 == target_key:
                    return len(seen), rs, schreier
                queue.append((key2, arr2))
            elif want_schreier:
                if order_goal is not None and chain.order >= order_goal:
                    continue
                z = compose(rs, inverse(seen[key2]))
                if not chain.contains(z):
                    schreier.append(z)
                    chain = build_chain(
                        PermGroup.from_gens(degree, list(chain.generators) + [z])
                    )
    return len(seen), None, schreier


def normalizer_in_sym(H: PermGroup) -> PermGroup:
    """N_Sym(n)(H): full scan for n <= 7, conjugation-orbit Schreier method above."""
    n = H.degree
    if H.is_trivial():
        return make_named("symmetric", n) if n >= 2 else PermGroup(n, ())
    chain = build_chain(H)
    if n <= 7:
        found: list[Perm] = []
        nchain = build_chain(H)
        for g in all_perms(n):
            if all(chain.contains(conjugate(h, g)) for h in H.generators):
                if not nchain.contains(g):
                    found.append(g)
                    nchain = build_chain(
                        PermGroup.from_gens(n, list(H.generators) + found)
                    )
        return PermGroup.from_gens(n, list(H.generators) + found)
    H_arr = element_array(chain)
    orbit_size, _, schreier = _conjugation_orbit(
        H_arr, n, want_schreier=True, start_gens=list(H.generators),
    )
    # orbit-stabilizer: |N| = n! / class size
    goal = math.factorial(n) // orbit_size
    gens = list(H.generators) + schreier
    N = PermGroup.from_gens(n, gens)
    if build_chain(N).order != goal:
        raise GroupOpsError("normalizer Schreier generators incomplete")
    return N


def transporter_in_sym(H1: PermGroup, H2: PermGroup) -> Perm | None:
    """Some g with H1^g = H2, or None.  Fast-fails on fingerprint mismatch."""
    if H1.degree != H2.degree:
        raise GroupOpsError("degree mismatch")
    n = H1.degree
    f1, f2 = fingerprint(H1), fingerprint(H2)
    if f1 != f2:
        return None
    a1 = element_array(H1)
    a2 = element_array(H2)
    if a1.shape != a2.shape:
        return None
    target = subgroup_key(a2)
    if subgroup_key(a1) == target:
        return identity(n)
    _, g, _ = _conjugation_orbit(a1, n, target_key=target)
    if g is None:
        return None
    chain2 = build_chain(H2)
    for h in H1.generators:
        if not chain2.contains(conjugate(h, g)):
            raise GroupOpsError("transporter verification failed")
    return g


# ---------------------------------------------------------------------------
# join / index / core


def join(G: PermGroup, H: PermGroup) -> PermGroup:
    if G.degree != H.degree:
        raise GroupOpsError("degree mismatch")
    return PermGroup.from_gens(G.degree, list(G.generators) + list(H.generators))


def index(big: PermGroup, small: PermGroup) -> int:
    if big.degree != small.degree:
        raise GroupOpsError("degree mismatch")
    big_chain = build_chain(big)
    for g in small.generators:
        if not big_chain.contains(g):
            raise GroupOpsError("index: containment violated")
    return big_chain.order // build_chain(small).order


_CORE_WORK_LIMIT = 50_000_000


def core(G: PermGroup, H: PermGroup) -> PermGroup:
    """Largest normal subgroup of G inside H: the kernel of the action of G
    on the cosets of H."""
    chainG = build_chain(G)
    chainH = build_chain(H)
    for h in H.generators:
        if not chainG.contains(h):
            raise GroupOpsError("core: H not contained in G")
    idx = chainG.order // chainH.order
    if idx == 1:
        return H
    if idx * chainH.order > _CORE_WORK_LIMIT:
        raise GroupOpsError("core: coset enumeration too large")
    n = G.degree
    H_arr = element_array(chainH)
    # enumerate coset reps of H in G (right cosets H*g)
    def coset_key(g: Perm) -> bytes:
        rows = np.array(g, dtype=H_arr.dtype)[H_arr]   # rows h then g
        return subgroup_key(_lexsort_rows(rows))

    reps: list[Perm] = [identity(n)]
    seen = {coset_key(reps[0])}
    qi = 0
    while qi < len(reps):
        r = reps[qi]
        qi += 1
        for s in G.generators:
            t = compose(r, s)
            k = coset_key(t)
            if k not in seen:
                seen.add(k)
                reps.append(t)
    assert len(reps) == idx
    # kernel of the coset action: h with H*r*h = H*r for every rep r,
    # i.e. r h r^-1 in H for all reps
    mask = np.ones(H_arr.shape[0], dtype=bool)
    sorted_view = rows_view(H_arr)
    for r in reps[1:]:
        ra = np.array(r, dtype=H_arr.dtype)
        ri = np.array(inverse(r), dtype=H_arr.dtype)
        conj = ri[H_arr[mask][:, ra]]  # rows r.h.r^-1
        view = rows_view(conj)
        pos = np.searchsorted(sorted_view, view)
        pos = np.clip(pos, 0, len(sorted_view) - 1)
        ok = sorted_view[pos] == view
        idxs = np.nonzero(mask)[0]
        mask[idxs[~ok]] = False
        if not mask.any():
            break
    kernel_rows = H_arr[mask]
    gens: list[Perm] = []
    kchain = build_chain(PermGroup(n, ()))
    for row in kernel_rows:
        p = tuple(int(v) for v in row)
        if not is_identity(p) and not kchain.contains(p):
            gens.append(p)
            kchain = build_chain(PermGroup.from_gens(n, gens))
    return PermGroup.from_gens(n, gens)


# ---------------------------------------------------------------------------
# fingerprint


@dataclass(frozen=True)
class Fingerprint:
    order: int
    degree: int
    orbit_sizes: tuple[int, ...]                     # sorted multiset
    element_order_histogram: tuple[tuple[int, int], ...]  # (order, count), sorted
    cycle_type_histogram: tuple[tuple[tuple[int, ...], int], ...]
    abelian: bool
    center_order: int
    derived_order: int

    def canonical(self) -> str:
        hist = ",".join(f"{o}:{c}" for o, c in self.element_order_histogram)
        cyc = ";".join(
            "-".join(map(str, t)) + f":{c}" for t, c in self.cycle_type_histogram
        )
        return (
            f"o={self.order}|d={self.degree}|orb={','.join(map(str, self.orbit_sizes))}"
            f"|eo={hist}|ct={cyc}|ab={int(self.abelian)}"
            f"|z={self.center_order}|der={self.derived_order}"
        )

    def abstract_fields(self):
        """Degree-independent fields (isomorphism invariants)."""
        return (
            self.order,
            self.element_order_histogram,
            self.abelian,
            self.center_order,
            self.derived_order,
        )


def element_orders_array(arr: np.ndarray) -> np.ndarray:
    """Orders of each permutation row, vectorized by repeated composition."""
    k, n = arr.shape
    ident = np.arange(n, dtype=arr.dtype)
    orders = np.zeros(k, dtype=np.int64)
    cur = arr.copy()
    step = 1
    # max element order of Sym(n) is Landau's g(n); loop is tiny for n <= 16
    while (orders == 0).any():
        done = (cur == ident).all(axis=1) & (orders == 0)
        orders[done] = step
        if (orders != 0).all():
            break
        cur = np.take_along_axis(arr, cur, axis=1)
        step += 1
        if step > 10_000:
            raise GroupOpsError("element order loop ran away")
    return orders


def _cycle_type_row(row) -> tuple[int, ...]:
    n = len(row)
    seen = [False] * n
    lens = []
    for a in range(n):
        if seen[a]:
            continue
        l, x = 0, a
        while not seen[x]:
            seen[x] = True
            x = row[x]
            l += 1
        lens.append(l)
    return tuple(sorted(lens))


_FP_ELEMENT_CAP = 500_000


@lru_cache(maxsize=2048)
def fingerprint(G: PermGroup) -> Fingerprint:
    chain = build_chain(G)
    order = chain.order
    if order > _FP_ELEMENT_CAP:
        raise GroupOpsError(f"fingerprint: order {order} above cap")
    n = G.degree
    orb_sizes = tuple(sorted(len(o) for o in _raw_orbits(G)))
    arr = chain.element_array()
    orders = element_orders_array(arr)
    hist: dict[int, int] = {}
    for o in orders:
        hist[int(o)] = hist.get(int(o), 0) + 1
    cyc: dict[tuple[int, ...], int] = {}
    for row in arr:
        t = _cycle_type_row(row)
        cyc[t] = cyc.get(t, 0) + 1
    abelian = all(
        compose(a, b) == compose(b, a)
        for i, a in enumerate(G.generators)
        for b in G.generators[i + 1:]
    )
    # center: rows commuting with every generator
    zmask = np.ones(arr.shape[0], dtype=bool)
    for g in G.generators:
        ga = np.array(g, dtype=arr.dtype)
        zmask &= (ga[arr] == arr[:, ga]).all(axis=1)
    center_order = int(zmask.sum())
    derived_order = _derived_subgroup_order(G, chain)
    return Fingerprint(
        order=order,
        degree=n,
        orbit_sizes=orb_sizes,
        element_order_histogram=tuple(sorted(hist.items())),
        cycle_type_histogram=tuple(sorted(cyc.items())),
        abelian=abelian,
        center_order=center_order,
        derived_order=derived_order,
    )


def _derived_subgroup_order(G: PermGroup, chain: StabChain) -> int:
    n = G.degree
    comm: list[Perm] = []
    dchain = build_chain(PermGroup(n, ()))
    for a in G.generators:
        for b in G.generators:
            c = compose(compose(inverse(a), inverse(b)), compose(a, b))
            if not is_identity(c) and not dchain.contains(c):
                comm.append(c)
                dchain = build_chain(PermGroup.from_gens(n, comm))
    # normal closure under G
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            for k in list(comm):
                c = conjugate(k, g)
                if not dchain.contains(c):
                    comm.append(c)
                    dchain = build_chain(PermGroup.from_gens(n, comm))
                    changed = True
    return dchain.order


def derived_subgroup(G: PermGroup) -> PermGroup:
    n = G.degree
    comm: list[Perm] = []
    dchain = build_chain(PermGroup(n, ()))
    for a in G.generators:
        for b in G.generators:
            c = compose(compose(inverse(a), inverse(b)), compose(a, b))
            if not is_identity(c) and not dchain.contains(c):
                comm.append(c)
                dchain = build_chain(PermGroup.from_gens(n, comm))
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            for k in list(comm):
                c = conjugate(k, g)
                if not dchain.contains(c):
                    comm.append(c)
                    dchain = build_chain(PermGroup.from_gens(n, comm))
                    changed = True
    return PermGroup.from_gens(n, comm)
