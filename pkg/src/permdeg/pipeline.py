"""End-to-end survey: per-degree class enumeration, minimal-embedding
filter, centralizer index (Ind), complement search (Comp), and the
degree-10 witness certificate.

For each minimally embedded class G of Sym(m) the survey computes
C = C_Sym(m)(G), ind = [<G,C> : G], and scans, for every prime p dividing
ind, the order-p elements of C for one lying outside G.  Such an element
generates a nontrivial D <= C with D meet G = 1 and would certify
mu(G x D) < mu(G) + mu(D) at degree m; the survey's verdict is that no
such element exists through degree 9, making 10 the least degree where
the strict inequality occurs (witnessed by G(2,2,5)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .perm import Perm, PermGroup, format_perm, make_gppq, make_named, parse_perm
from .stabchain import StabChain, build_chain
from .group_ops import centralizer_in_sym, fingerprint, index, join
from .mindeg import is_minimally_embedded, mu
from .subgroup_enum import SubgroupClass, subgroup_classes
from .cache import SCHEMA_VERSION, CacheRecord, load_cache, save_cache


class PipelineError(RuntimeError):
    pass


@dataclass
class ClassEntry:
    cls: SubgroupClass
    ind: int
    comp_witness: Perm | None


@dataclass
class DegreeReport:
    degree: int
    total_classes: int
    entries: list[ClassEntry]               # minimally embedded, class_id order
    ind_multiset: dict[int, int]
    comp_nonempty: bool
    contradictions: list[str] = field(default_factory=list)

    @property
    def minemb_count(self) -> int:
        return len(self.entries)


@dataclass
class Verdict:
    reports: list[DegreeReport]
    no_complement: bool


@dataclass
class WitnessReport:
    group: PermGroup
    mu_value: int
    centralizer: PermGroup
    witness_element: Perm
    product_mu: int
    contradictions: list[str] = field(default_factory=list)


def _primes_of(n: int) -> list[int]:
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


def _comp_search(G: PermGroup, Gchain: StabChain, C: PermGroup, ind: int) -> Perm | None:
    """First prime-order element of C outside G, primes dividing ind only.

    Any nontrivial D <= C with D meet G = 1 embeds into the quotient of
    order ind (Lagrange), so its prime divisors divide ind; conversely one
    such element already generates a valid D.
    """
    if ind == 1:
        return None
    Cchain = build_chain(C)
    for p in _primes_of(ind):
        for z in Cchain.elements_of_order(p):
            if not Gchain.contains(z):
                return z
    return None


def _classes_for_degree(m: int, cache_dir: str | None) -> tuple[list[SubgroupClass], list[CacheRecord] | None]:
    """Subgroup classes of Sym(m), from cache when possible."""
    records = load_cache(cache_dir, m) if cache_dir else None
    if records is not None:
        classes = [
            SubgroupClass(r.class_id, r.group(), r.order, r.class_size)
            for r in records
        ]
        return classes, records
    classes = subgroup_classes(make_named("symmetric", m))
    return classes, None


def _base_record(m: int, c: SubgroupClass) -> CacheRecord:
    return CacheRecord(
        schema_version=SCHEMA_VERSION,
        degree=m,
        class_id=c.class_id,
        generators=c.representative.gen_strings(),
        order=c.order,
        class_size=c.class_size,
        fingerprint=fingerprint(c.representative).canonical(),
    )


def enumerate_degree(m: int, cache_dir: str | None = None) -> list[SubgroupClass]:
    """Subgroup classes of Sym(m); writes the cache when a directory is given."""
    if not 1 <= m <= 9:
        raise PipelineError(f"degree {m} out of supported range 1..9")
    classes, records = _classes_for_degree(m, cache_dir)
    if cache_dir and records is None:
        save_cache([_base_record(m, c) for c in classes], cache_dir)
    return classes


def survey_degree(m: int, cache_dir: str | None = None) -> DegreeReport:
    """Per-degree survey: minemb filter, Ind values, Comp scan."""
    if not 2 <= m <= 9:
        raise PipelineError(f"survey degree must be in 2..9, got {m}")
    classes, records = _classes_for_degree(m, cache_dir)
    have_results = records is not None and all(r.minemb is not None for r in records)

    if not have_results:
        smaller = [c.representative for c in enumerate_degree(m - 1, cache_dir)]
        records = []
        for c in classes:
            rec = _base_record(m, c)
            G = c.representative
            rec.minemb = not G.is_trivial() and is_minimally_embedded(
                G, method="iso_filter", smaller_classes=smaller
            )
            if rec.minemb:
                Gchain = build_chain(G)
                C = centralizer_in_sym(G)
                J = join(G, C)
                rec.ind = index(J, G)
                z = _comp_search(G, Gchain, C, rec.ind)
                rec.comp_witness = format_perm(z) if z is not None else None
            records.append(rec)
        if cache_dir:
            save_cache(records, cache_dir)

    entries = []
    ind_multiset: dict[int, int] = {}
    contradictions = []
    for r in records:
        if not r.minemb:
            continue
        cls = SubgroupClass(r.class_id, r.group(), r.order, r.class_size)
        z = parse_perm(r.comp_witness, m) if r.comp_witness else None
        entries.append(ClassEntry(cls, r.ind, z))
        ind_multiset[r.ind] = ind_multiset.get(r.ind, 0) + 1
        if r.ind != 1 and r.ind % 2 != 0:
            contradictions.append(
                f"degree {m} class {r.class_id}: ind={r.ind} is neither 1 nor even"
            )
        if z is not None:
            contradictions.append(
                f"degree {m} class {r.class_id}: complement element {r.comp_witness}"
            )
    return DegreeReport(
        degree=m,
        total_classes=len(records),
        entries=entries,
        ind_multiset=dict(sorted(ind_multiset.items())),
        comp_nonempty=any(e.comp_witness is not None for e in entries),
        contradictions=contradictions,
    )


def verify_up_to(M: int, cache_dir: str | None = None) -> Verdict:
    """Surveys for degrees 2..M; verdict true iff every Comp scan is empty."""
    if not 2 <= M <= 9:
        raise PipelineError(f"max degree must be in 2..9, got {M}")
    reports = [survey_degree(m, cache_dir) for m in range(2, M + 1)]
    return Verdict(reports, not any(r.comp_nonempty for r in reports))


def witness_degree_10() -> WitnessReport:
    """The degree-10 certificate: G = G(2,2,5) with mu(G) = 10, an order-2
    centralizing element z outside G, and mu(G x <z>) = 10 < 12."""
    G = make_gppq(2, 5)
    problems = []
    Gchain = build_chain(G)
    if Gchain.order != 1920:
        problems.append(f"|G(2,2,5)| = {Gchain.order}, expected 1920")
    mu_g = mu(G).value
    if mu_g != 10:
        problems.append(f"mu(G(2,2,5)) = {mu_g}, expected 10")
    C = centralizer_in_sym(G)
    z = next(
        (p for p in build_chain(C).elements_of_order(2) if not Gchain.contains(p)),
        None,
    )
    if z is None:
        raise PipelineError("no order-2 centralizing element outside G(2,2,5)")
    # <G, z> realizes G x C2 on the same 10 points: z centralizes G and
    # <z> meets G trivially (z has order 2 and z is outside G)
    P = PermGroup.from_gens(10, list(G.generators) + [z])
    if build_chain(P).order != 2 * Gchain.order:
        problems.append("join with the witness element is not twice |G|")
    mu_p = mu(P).value
    if mu_p != 10:
        problems.append(f"mu(G x C2) = {mu_p}, expected 10")
    if not mu_p < mu_g + 2:
        problems.append("strict inequality mu(GxC2) < mu(G) + mu(C2) failed")
    return WitnessReport(
        group=G,
        mu_value=mu_g,
        centralizer=C,
        witness_element=z,
        product_mu=mu_p,
        contradictions=problems,
    )
