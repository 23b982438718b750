"""Brute-force ground truth for the classification pipelines.

Two independent enumerations of extensions N -> G -> H:

* ``schreier_normal_form`` fills multiplication tables on the set H x N
  directly, assuming only that (n, 1)(1, h) = (n, h);
* ``scan_all_monoids`` walks every monoid G of the relevant orders and every
  homomorphism e: G -> H whose kernel is isomorphic to N.

Flags are computed from the definitions, without any (phi, chi) machinery.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .correspondence import find_slice_isomorphism
from .errors import BoundExceeded, MonoidMismatch
from .monoid import (
    MAX_ENUMERATION_ORDER,
    ExactSequence,
    FiniteMonoid,
    MonoidHom,
    all_homs,
    associative_completions,
    canonical_table,
    enumerate_monoids,
    parallel_map,
)

SCHREIER_NORMAL_FORM = "schreier_normal_form"
SCAN_ALL_MONOIDS = "scan_all_monoids"
MODES = (SCHREIER_NORMAL_FORM, SCAN_ALL_MONOIDS)

NORMAL_FORM_BOUND = 9
# the scan reaches order 5 through enumerate_monoids; the top layer
# |G| = |N||H| is filled by a fibre-constrained table search up to this size
SCAN_PRODUCT_BOUND = 6


@dataclass(frozen=True)
class Flags:
    schreier: bool
    special: bool
    weakly_schreier: bool


@dataclass(frozen=True)
class CensusEntry:
    canonical_G: tuple[tuple[int, ...], ...]
    flags: Flags
    count: int
    representative: ExactSequence = field(compare=False, repr=False)

    def sort_key(self):
        f = self.flags
        return (self.canonical_G, not f.weakly_schreier, not f.schreier, not f.special)


@dataclass(frozen=True)
class ExtensionCensus:
    N: FiniteMonoid
    H: FiniteMonoid
    mode: str
    entries: tuple[CensusEntry, ...]

    def classes(self, flag: str) -> list[CensusEntry]:
        return [e for e in self.entries if getattr(e.flags, flag)]

    @property
    def counts(self) -> dict[str, int]:
        return {f: len(self.classes(f)) for f in ("schreier", "special", "weakly_schreier")}

    def multiset(self, flag: str) -> Counter:
        return Counter(e.canonical_G for e in self.classes(flag))


def _fiber(e: MonoidHom, h: int) -> list[int]:
    return [g for g in e.dom.elements if e.map[g] == h]


def flags_of(k: MonoidHom, e: MonoidHom) -> Flags:
    """Schreier, special and weakly Schreier straight from the definitions."""
    G, N, H = e.dom, k.dom, e.cod
    gt = G.table
    if not e.is_surjective():
        return Flags(False, False, False)
    fibers = [_fiber(e, h) for h in H.elements]

    def reach(u):
        return [gt[k.map[n]][u] for n in N.elements]

    ws = all(any(set(reach(u)) == set(f) for u in f) for f in fibers)
    sch = all(any(sorted(reach(u)) == f for u in f) for f in fibers)
    special = sch and all(sorted(reach(u)) == f for f in fibers for u in f)
    return Flags(sch, special, ws)


def _slice_classes(seqs: list[ExactSequence]) -> list[tuple[ExactSequence, int]]:
    """Partition sequences into classes of isomorphism over H fixing N."""
    reps: list[list] = []
    for s in seqs:
        for r in reps:
            if find_slice_isomorphism(r[0], s) is not None:
                r[1] += 1
                break
        else:
            reps.append([s, 1])
    return [(r, c) for r, c in reps]


def _entries(seqs: list[ExactSequence], jobs: int) -> list[CensusEntry]:
    canon = parallel_map(canonical_table, [s.G for s in seqs], jobs)
    groups: dict = {}
    for s, cg in zip(seqs, canon):
        groups.setdefault(cg, []).append(s)
    out = []
    for cg in sorted(groups):
        for rep, count in _slice_classes(groups[cg]):
            out.append(CensusEntry(cg, flags_of(rep.k, rep.e), count, rep))
    out.sort(key=CensusEntry.sort_key)
    return out


# ---------------------------------------------------------------------------
# normal-form mode

def _normal_form_tables(N: FiniteMonoid, H: FiniteMonoid):
    """Tables on H x N, element (n, h) at h*|N| + n."""
    nn, size = N.size, N.size * H.size
    one, n1 = H.identity, N.identity

    def idx(n, h):
        return h * nn + n

    t = [[-1] * size for _ in range(size)]
    ident = idx(n1, one)
    for x in range(size):
        t[ident][x] = x
        t[x][ident] = x
    for a in N.elements:
        for b in N.elements:
            t[idx(a, one)][idx(b, one)] = idx(N.table[a][b], one)
        for h in H.elements:
            t[idx(a, one)][idx(n1, h)] = idx(a, h)
    cells, domains = [], {}
    for x in range(size):
        hx = x // nn
        for y in range(size):
            if t[x][y] >= 0:
                continue
            hh = H.table[hx][y // nn]
            cells.append((x, y))
            domains[(x, y)] = [idx(m, hh) for m in N.elements]
    return size, ident, t, cells, domains


def _normal_form_sequences(N: FiniteMonoid, H: FiniteMonoid) -> list[ExactSequence]:
    size, ident, t, cells, domains = _normal_form_tables(N, H)
    nn = N.size
    out = []
    for tab in associative_completions(size, t, cells, domains):
        G = FiniteMonoid(size, ident, tab)
        k = MonoidHom(N, G, tuple(H.identity * nn + n for n in N.elements))
        e = MonoidHom(G, H, tuple(g // nn for g in range(size)))
        out.append(ExactSequence(k, e))
    return out


# ---------------------------------------------------------------------------
# scan mode

def _kernel_embeddings(N: FiniteMonoid, e: MonoidHom) -> list[MonoidHom]:
    ker = _fiber(e, e.cod.identity)
    if len(ker) != N.size:
        return []
    return [k for k in all_homs(N, e.dom) if sorted(k.map) == ker]


def _scan_order(args):
    N, H, n = args
    out = []
    for G in enumerate_monoids(n):
        for e in all_homs(G, H):
            if not e.is_surjective():
                continue
            for k in _kernel_embeddings(N, e):
                out.append(ExactSequence(k, e))
    return out


def _fiber_constrained_sequences(N: FiniteMonoid, H: FiniteMonoid) -> list[ExactSequence]:
    """Every monoid table on |N||H| points with e a hom onto H, all fibres of size |N|.

    The kernel fibre carries N's own table; nothing else is assumed.
    """
    nn, size = N.size, N.size * H.size
    one = H.identity
    # kernel fibre first so that k is the obvious embedding
    order = [one] + [h for h in H.elements if h != one]
    owner = [order[g // nn] for g in range(size)]
    ident = N.identity
    t = [[-1] * size for _ in range(size)]
    for x in range(size):
        t[ident][x] = x
        t[x][ident] = x
    for a in N.elements:
        for b in N.elements:
            t[a][b] = N.table[a][b]
    fib = {h: [g for g in range(size) if owner[g] == h] for h in H.elements}
    cells, domains = [], {}
    for x in range(size):
        for y in range(size):
            if t[x][y] < 0:
                cells.append((x, y))
                domains[(x, y)] = fib[H.table[owner[x]][owner[y]]]
    out = []
    for tab in associative_completions(size, t, cells, domains):
        G = FiniteMonoid(size, ident, tab)
        out.append(ExactSequence(MonoidHom(N, G, tuple(N.elements)),
                                 MonoidHom(G, H, tuple(owner))))
    return out


def _scan_sequences(N, H, jobs):
    top = N.size * H.size
    # a cokernel is onto, so |G| >= |H|
    orders = list(range(max(N.size, H.size), min(top, MAX_ENUMERATION_ORDER) + 1))
    seqs = [s for part in parallel_map(_scan_order, [(N, H, n) for n in orders], jobs)
            for s in part]
    if top > MAX_ENUMERATION_ORDER:
        seqs += _fiber_constrained_sequences(N, H)
    return seqs


def enumerate_extensions_bruteforce(N: FiniteMonoid, H: FiniteMonoid, mode: str,
                                    jobs: int = 1) -> ExtensionCensus:
    top = N.size * H.size
    if mode == SCHREIER_NORMAL_FORM:
        if top > NORMAL_FORM_BOUND:
            raise BoundExceeded(top, NORMAL_FORM_BOUND)
        seqs = _normal_form_sequences(N, H)
    elif mode == SCAN_ALL_MONOIDS:
        if top > SCAN_PRODUCT_BOUND:
            raise BoundExceeded(top, SCAN_PRODUCT_BOUND)
        seqs = _scan_sequences(N, H, jobs)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return ExtensionCensus(N, H, mode, tuple(_entries(seqs, jobs)))


# ---------------------------------------------------------------------------
# cross-checking

@dataclass
class CheckSection:
    name: str
    classified: int
    census: int
    matched: bool
    discrepancies: list = field(default_factory=list)


@dataclass
class CrossCheckReport:
    N: FiniteMonoid
    H: FiniteMonoid
    sections: list[CheckSection]

    @property
    def ok(self) -> bool:
        return all(s.matched for s in self.sections)

    def to_dict(self) -> dict:
        return {
            "N": self.N.name or self.N.size,
            "H": self.H.name or self.H.size,
            "ok": self.ok,
            "sections": [
                {"name": s.name, "classified": s.classified, "census": s.census,
                 "matched": s.matched, "discrepancies": s.discrepancies}
                for s in self.sections
            ],
        }


def _compare(name, classes, build, census_entries) -> CheckSection:
    """Match each classified datum to exactly one census class by slice isomorphism."""
    disc = []
    mult_a = Counter(c.canonical_G for c in classes)
    mult_b = Counter(e.canonical_G for e in census_entries)
    if mult_a != mult_b:
        disc.append({"kind": "canonical_G multiset",
                     "classified_only": sorted(map(list, (mult_a - mult_b).elements())),
                     "census_only": sorted(map(list, (mult_b - mult_a).elements()))})
    hit = Counter()
    for c in classes:
        seq = build(c.representative)
        found = [i for i, e in enumerate(census_entries)
                 if e.canonical_G == c.canonical_G
                 and find_slice_isomorphism(seq, e.representative) is not None]
        if len(found) != 1:
            disc.append({"kind": "unmatched class", "G": [list(r) for r in c.canonical_G],
                         "census_matches": found})
        for i in found:
            hit[i] += 1
    for i, e in enumerate(census_entries):
        if hit[i] != 1:
            disc.append({"kind": "census class hit", "index": i, "hits": hit[i],
                         "G": [list(r) for r in e.canonical_G]})
    return CheckSection(name, len(classes), len(census_entries), not disc, disc)


def cross_check_classification(N: FiniteMonoid, H: FiniteMonoid, jobs: int = 1,
                               include_ws: bool | None = None) -> CrossCheckReport:
    from .schreier import build_schreier_extension, classify_schreier
    from .weakly_schreier import build_ws_extension, classify_ws

    if N.size * H.size > NORMAL_FORM_BOUND:
        raise BoundExceeded(N.size * H.size, NORMAL_FORM_BOUND)
    if include_ws is None:
        include_ws = N.size * H.size <= SCAN_PRODUCT_BOUND
    sections = []
    nf = enumerate_extensions_bruteforce(N, H, SCHREIER_NORMAL_FORM, jobs)
    sch = classify_schreier(N, H, bound=NORMAL_FORM_BOUND, jobs=jobs)
    sections.append(_compare("schreier", sch, build_schreier_extension, nf.classes("schreier")))
    if include_ws:
        scan = enumerate_extensions_bruteforce(N, H, SCAN_ALL_MONOIDS, jobs)
        ws = classify_ws(N, H, bound=SCAN_PRODUCT_BOUND, jobs=jobs)
        sections.append(_compare("weakly_schreier", ws, build_ws_extension,
                                 scan.classes("weakly_schreier")))
    return CrossCheckReport(N, H, sections)


def modes_agree(N: FiniteMonoid, H: FiniteMonoid, jobs: int = 1) -> bool:
    """Schreier-flag class multisets of the two modes coincide."""
    if N.size * H.size > SCAN_PRODUCT_BOUND:
        raise BoundExceeded(N.size * H.size, SCAN_PRODUCT_BOUND)
    a = enumerate_extensions_bruteforce(N, H, SCHREIER_NORMAL_FORM, jobs)
    b = enumerate_extensions_bruteforce(N, H, SCAN_ALL_MONOIDS, jobs)
    if a.N != b.N or a.H != b.H:
        raise MonoidMismatch("censuses over different monoids")
    return a.multiset("schreier") == b.multiset("schreier")
