"""Weakly Schreier extensions and their classifying triples (~, phi, chi).

Every fibre e^-1(h) is reached as k(N) u_h, but not necessarily uniquely;
~h records which n give the same element.  The middle monoid is the
disjoint union of the quotients N/~h with
(h, [n]) (h', [n']) = (hh', [n phi(h, n') chi(h, h')]).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .biset import LQArrow, lq_to_biset
from .correspondence import LaxMonoidalData
from .errors import AxiomFail, BadWitness, BoundExceeded, MonoidMismatch, ShapeError
from .monoid import (
    LEFT,
    Congruence,
    Extension,
    FiniteMonoid,
    MonoidHom,
    canonical_table,
    check_congruence,
    discrete_congruence,
    extension,
    left_congruences,
    parallel_map,
    validate_monoid,
)
from .schreier import SchreierData

WS_UNIT = "ws_unit"
WS_PHI_HOM = "ws_phi_hom"
WS_PHI_CHI_COMPAT = "ws_phi_chi_compat"
WS_WELL_DEFINED = "ws_well_defined"
WS_CHI_NORMAL = "ws_chi_normal"
WS_CHI_COCYCLE = "ws_chi_cocycle"
WS_AXIOMS = (WS_UNIT, WS_PHI_HOM, WS_PHI_CHI_COMPAT, WS_WELL_DEFINED, WS_CHI_NORMAL,
             WS_CHI_COCYCLE)

DEFAULT_BOUND = 9


def _table(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in r) for r in rows)


@dataclass(frozen=True)
class WSData:
    N: FiniteMonoid
    H: FiniteMonoid
    cong: tuple[Congruence, ...]
    phi: tuple[tuple[int, ...], ...]
    chi: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cong = tuple(c if isinstance(c, Congruence) else Congruence(self.N, c, LEFT)
                     for c in self.cong)
        object.__setattr__(self, "cong", cong)
        object.__setattr__(self, "phi", _table(self.phi))
        object.__setattr__(self, "chi", _table(self.chi))
        n, h = self.N.size, self.H.size
        if len(cong) != h:
            raise ShapeError("need one congruence per element of H")
        if any(c.carrier != self.N for c in cong):
            raise MonoidMismatch("congruences must live on N")
        if len(self.phi) != h or any(len(r) != n for r in self.phi):
            raise ShapeError("phi must be an |H| x |N| table")
        if len(self.chi) != h or any(len(r) != h for r in self.chi):
            raise ShapeError("chi must be an |H| x |H| table")
        for rows in (self.phi, self.chi):
            if any(not 0 <= v < n for r in rows for v in r):
                raise ShapeError("phi and chi take values in N")

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.classes for c in self.cong)

    def lq_arrow(self, h: int) -> LQArrow:
        """N^h as a relaxed monoid homomorphism (~h, phi(h, -))."""
        return LQArrow(self.N, self.N, self.cong[h], self.phi[h])


def ws_from_schreier(d: SchreierData) -> WSData:
    disc = discrete_congruence(d.N)
    return WSData(d.N, d.H, [disc] * d.H.size, d.phi, d.chi)


# ---------------------------------------------------------------------------
# axioms

def eq_one(N, cls, phi, h) -> bool:
    """n1 ~h n2 implies n1 phi(h, n') ~h n2 phi(h, n')."""
    nt, c = N.table, cls[h]
    for n1, n2 in product(N.elements, repeat=2):
        if c[n1] != c[n2]:
            continue
        for n in N.elements:
            if c[nt[n1][phi[h][n]]] != c[nt[n2][phi[h][n]]]:
                return False
    return True


def eq_two(N, H, cls, phi, chi, h, h2) -> bool:
    """n1' ~h' n2' implies phi(h, n1') chi ~hh' phi(h, n2') chi."""
    nt = N.table
    c2, cc = cls[h2], cls[H.table[h][h2]]
    x = chi[h][h2]
    for a, b in product(N.elements, repeat=2):
        if c2[a] == c2[b] and cc[nt[phi[h][a]][x]] != cc[nt[phi[h][b]][x]]:
            return False
    return True


def eq_our(N, H, cls, phi, chi, h, h2) -> bool:
    """The combined well-definedness of the product on classes."""
    nt = N.table
    c1, c2, cc = cls[h], cls[h2], cls[H.table[h][h2]]
    x = chi[h][h2]
    for n1, n2 in product(N.elements, repeat=2):
        if c1[n1] != c1[n2]:
            continue
        for a, b in product(N.elements, repeat=2):
            if c2[a] != c2[b]:
                continue
            if cc[nt[nt[n1][phi[h][a]]][x]] != cc[nt[nt[n2][phi[h][b]]][x]]:
                return False
    return True


def chi_right_compat(N, H, cls, chi, h, h2) -> bool:
    """n1 ~h n2 implies n1 chi(h, h') ~hh' n2 chi(h, h')."""
    nt = N.table
    c1, cc = cls[h], cls[H.table[h][h2]]
    x = chi[h][h2]
    return all(cc[nt[a][x]] == cc[nt[b][x]]
               for a, b in product(N.elements, repeat=2) if c1[a] == c1[b])


def _family_checks(N, H, cls, phi, chi):
    """(axiom, instances) where each instance is (ok, hs, ns); lazily evaluated."""
    nt, ht = N.table, H.table
    one, n1 = H.identity, N.identity
    hs = H.elements

    def unit():
        if any(cls[one][a] != a for a in N.elements) or len(set(cls[one])) != N.size:
            yield False, (one,), ()
        for n in N.elements:
            yield phi[one][n] == n, (one,), (n,)

    def phi_hom():
        for h in hs:
            c = cls[h]
            yield c[phi[h][n1]] == c[n1], (h,), (n1,)
            for a, b in product(N.elements, repeat=2):
                yield c[phi[h][nt[a][b]]] == c[nt[phi[h][a]][phi[h][b]]], (h,), (a, b)

    def compat():
        for h, h2 in product(hs, repeat=2):
            x, hh = chi[h][h2], ht[h][h2]
            c = cls[hh]
            for n in N.elements:
                yield c[nt[phi[h][phi[h2][n]]][x]] == c[nt[x][phi[hh][n]]], (h, h2), (n,)

    def well_defined():
        for h, h2 in product(hs, repeat=2):
            yield eq_our(N, H, cls, phi, chi, h, h2), (h, h2), ()
            yield chi_right_compat(N, H, cls, chi, h, h2), (h, h2), ()

    def normal():
        for h in hs:
            c = cls[h]
            yield c[chi[one][h]] == c[n1] and c[chi[h][one]] == c[n1], (h,), ()

    def cocycle():
        for x, y, z in product(hs, repeat=3):
            c = cls[ht[ht[x][y]][z]]
            lhs = nt[chi[x][y]][chi[ht[x][y]][z]]
            rhs = nt[phi[x][chi[y][z]]][chi[x][ht[y][z]]]
            yield c[lhs] == c[rhs], (x, y, z), ()

    return ((WS_UNIT, unit), (WS_PHI_HOM, phi_hom), (WS_PHI_CHI_COMPAT, compat),
            (WS_WELL_DEFINED, well_defined), (WS_CHI_NORMAL, normal),
            (WS_CHI_COCYCLE, cocycle))


def _first_failure(d: WSData, skip=()):
    cls = d.classes
    for name, fam in _family_checks(d.N, d.H, cls, d.phi, d.chi):
        if name in skip:
            continue
        for ok, hs, ns in fam():
            if not ok:
                return name, hs, ns
    return None


def failing_ws_axioms(d: WSData) -> set[str]:
    out = set()
    for name, fam in _family_checks(d.N, d.H, d.classes, d.phi, d.chi):
        if any(not ok for ok, _, _ in fam()):
            out.add(name)
    return out


def ws_axioms_hold(d: WSData, skip=()) -> bool:
    return _first_failure(d, skip) is None


def validate_ws_data(N: FiniteMonoid, H: FiniteMonoid, cong, phi, chi) -> WSData:
    d = WSData(N, H, cong, phi, chi)
    for c in d.cong:
        check_congruence(c)
    fail = _first_failure(d)
    if fail is not None:
        raise AxiomFail(*fail)
    return d


# ---------------------------------------------------------------------------
# construction and recognition

def _offsets(d: WSData) -> list[int]:
    off, acc = [], 0
    for c in d.cong:
        off.append(acc)
        acc += c.num_classes
    return off


def build_ws_extension(d: WSData) -> Extension:
    """G = disjoint union of N/~h, ordered by h then class id."""
    N, H = d.N, d.H
    nt, ht = N.table, H.table
    off = _offsets(d)
    size = off[-1] + d.cong[-1].num_classes
    elems = [(h, d.cong[h].reps[c]) for h in H.elements for c in range(d.cong[h].num_classes)]
    cls = d.classes
    table = []
    for h, n in elems:
        row = []
        for h2, n2 in elems:
            hh = ht[h][h2]
            m = nt[nt[n][d.phi[h][n2]]][d.chi[h][h2]]
            row.append(off[hh] + cls[hh][m])
        table.append(row)
    one = H.identity
    G = validate_monoid(size, off[one] + cls[one][N.identity], table)
    k = MonoidHom(N, G, tuple(off[one] + cls[one][n] for n in N.elements))
    e = MonoidHom(G, H, tuple(h for h, _ in elems))
    return extension(k, e)


def canonical_ws_witnesses(d: WSData) -> tuple[int, ...]:
    """u_h = (h, [1]) in the layout of build_ws_extension."""
    off = _offsets(d)
    return tuple(off[h] + d.cong[h].classes[d.N.identity] for h in d.H.elements)


@dataclass(frozen=True)
class WSEpiReport:
    ws: bool
    witnesses: tuple


def is_weakly_schreier_epi(seq) -> WSEpiReport:
    G, H = seq.G, seq.H
    gt = G.table
    ok = seq.e.is_surjective()
    wit = []
    for h in H.elements:
        fib = seq.fiber(h)
        cands = [G.identity] if h == H.identity else fib
        found = None
        for u in cands:
            if sorted({gt[seq.k(n)][u] for n in seq.N.elements}) == fib:
                found = u
                break
        wit.append(found)
        ok = ok and found is not None
    return WSEpiReport(ok, tuple(wit))


def _least_n(seq, target, u, what):
    gt = seq.G.table
    for n in seq.N.elements:
        if gt[seq.k(n)][u] == target:
            return n
    raise BadWitness(f"{what}: no n reaches the target")


def extract_ws_data(seq, witnesses) -> WSData:
    N, H, G = seq.N, seq.H, seq.G
    u = tuple(witnesses)
    if len(u) != H.size:
        raise BadWitness("need one witness per element of H")
    if u[H.identity] != G.identity:
        raise BadWitness("the witness over 1 must be the identity")
    gt = G.table
    congs = []
    for h in H.elements:
        if seq.e(u[h]) != h:
            raise BadWitness(f"u_{h} is not in the fibre over {h}")
        reached = [gt[seq.k(n)][u[h]] for n in N.elements]
        if sorted(set(reached)) != seq.fiber(h):
            raise BadWitness(f"u_{h} does not generate its fibre")
        congs.append(Congruence(N, reached, LEFT))
    phi = [[_least_n(seq, gt[u[h]][seq.k(n)], u[h], f"phi({h},{n})") for n in N.elements]
           for h in H.elements]
    chi = [[_least_n(seq, gt[u[h]][u[h2]], u[H.table[h][h2]], f"chi({h},{h2})")
            for h2 in H.elements] for h in H.elements]
    return validate_ws_data(N, H, congs, phi, chi)


def lax_data(d: WSData) -> LaxMonoidalData:
    """Fibres N^h = N/~h with right action [m].n = [m phi(h, n)]."""
    N, H = d.N, d.H
    nt, ht = N.table, H.table
    cls = d.classes
    fibers = [lq_to_biset(d.lq_arrow(h)) for h in H.elements]
    gamma = []
    for h in H.elements:
        row = []
        for h2 in H.elements:
            hh = ht[h][h2]
            row.append([[cls[hh][nt[nt[d.cong[h].reps[a]][d.phi[h][d.cong[h2].reps[b]]]][d.chi[h][h2]]]
                         for b in range(d.cong[h2].num_classes)]
                        for a in range(d.cong[h].num_classes)])
        gamma.append(row)
    return LaxMonoidalData(N, H, fibers, tuple(N.elements), gamma)


# ---------------------------------------------------------------------------
# morphisms and the equivalence of data

@dataclass(frozen=True)
class WSMorphism:
    dom: WSData
    cod: WSData
    psi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "psi", tuple(int(v) for v in self.psi))


def _same_base(d1, d2):
    if d1.N != d2.N or d1.H != d2.H:
        raise MonoidMismatch("data over different (N, H)")


def _psi_pointwise(d1: WSData, d2: WSData, h: int, p: int) -> bool:
    """The conditions on psi(h) that do not involve other values of psi."""
    nt = d1.N.table
    c1, c2 = d1.cong[h].classes, d2.cong[h].classes
    for n in d1.N.elements:
        if c2[nt[d1.phi[h][n]][p]] != c2[nt[p][d2.phi[h][n]]]:
            return False
    for a, b in product(d1.N.elements, repeat=2):
        if c1[a] == c1[b] and c2[nt[a][p]] != c2[nt[b][p]]:
            return False
    return True


def _psi_tensor(d1: WSData, d2: WSData, psi) -> bool:
    nt, ht = d1.N.table, d1.H.table
    for h, h2 in product(d1.H.elements, repeat=2):
        hh = ht[h][h2]
        c = d2.cong[hh].classes
        lhs = nt[d1.chi[h][h2]][psi[hh]]
        rhs = nt[nt[psi[h]][d2.phi[h][psi[h2]]]][d2.chi[h][h2]]
        if c[lhs] != c[rhs]:
            return False
    return True


def ws_morphism_holds(d1: WSData, d2: WSData, psi) -> bool:
    H = d1.H
    if len(psi) != H.size or any(not 0 <= v < d1.N.size for v in psi):
        return False
    if psi[H.identity] != d1.N.identity:
        return False
    if not all(_psi_pointwise(d1, d2, h, psi[h]) for h in H.elements):
        return False
    return _psi_tensor(d1, d2, psi)


def validate_ws_morphism(d1: WSData, d2: WSData, psi) -> bool:
    _same_base(d1, d2)
    return ws_morphism_holds(d1, d2, tuple(psi))


def ws_morphisms_equal(m1: WSMorphism, m2: WSMorphism) -> bool:
    """Pointwise equality of psi modulo the codomain congruences."""
    if m1.dom != m2.dom or m1.cod != m2.cod:
        raise MonoidMismatch("morphisms have different endpoints")
    return all(c.same(a, b) for c, a, b in zip(m1.cod.cong, m1.psi, m2.psi))


def is_ws_iso_pair(m: WSMorphism, mstar: WSMorphism) -> bool:
    """psi psi* ~1 1 and psi* psi ~2 1 at every h."""
    if m.dom != mstar.cod or m.cod != mstar.dom:
        raise MonoidMismatch("morphisms are not opposite")
    d1, d2 = m.dom, m.cod
    if not (ws_morphism_holds(d1, d2, m.psi) and ws_morphism_holds(d2, d1, mstar.psi)):
        return False
    nt, one = d1.N.table, d1.N.identity
    return all(
        d1.cong[h].same(nt[m.psi[h]][mstar.psi[h]], one)
        and d2.cong[h].same(nt[mstar.psi[h]][m.psi[h]], one)
        for h in d1.H.elements
    )


def ws_morphism_extension_map(m: WSMorphism) -> MonoidHom:
    """(h, [n]) -> (h, [n psi(h)]) between the built extensions."""
    d1, d2 = m.dom, m.cod
    g1, g2 = build_ws_extension(d1).G, build_ws_extension(d2).G
    o2 = _offsets(d2)
    nt = d1.N.table
    img = []
    for h in d1.H.elements:
        for r in d1.cong[h].reps:
            img.append(o2[h] + d2.cong[h].classes[nt[r][m.psi[h]]])
    return MonoidHom(g1, g2, tuple(img))


def all_ws_morphisms(d1: WSData, d2: WSData) -> list[tuple[int, ...]]:
    """Every valid psi, exhaustively."""
    _same_base(d1, d2)
    H, N = d1.H, d1.N
    choices = [[N.identity] if h == H.identity
               else [p for p in N.elements if _psi_pointwise(d1, d2, h, p)]
               for h in H.elements]
    return [psi for psi in product(*choices) if _psi_tensor(d1, d2, psi)]


def ws_morphism_classes(d1: WSData, d2: WSData) -> list[tuple[int, ...]]:
    """Valid psi up to the codomain congruences; one least psi per class."""
    seen, out = set(), []
    for psi in all_ws_morphisms(d1, d2):
        key = tuple(d2.cong[h].classes[p] for h, p in enumerate(psi))
        if key not in seen:
            seen.add(key)
            out.append(psi)
    return out


def find_ws_iso_pair(d1: WSData, d2: WSData):
    """Search an inverse pair (psi, psi*); None when the data are not equivalent."""
    _same_base(d1, d2)
    N, H = d1.N, d1.H
    if any(a.num_classes != b.num_classes for a, b in zip(d1.cong, d2.cong)):
        return None
    nt, one = N.table, N.identity
    pairs = []
    for h in H.elements:
        if h == H.identity:
            pairs.append([(one, one)])
            continue
        p_ok = [p for p in N.elements if _psi_pointwise(d1, d2, h, p)]
        q_ok = [q for q in N.elements if _psi_pointwise(d2, d1, h, q)]
        c1, c2 = d1.cong[h], d2.cong[h]
        cand = [(p, q) for p in p_ok for q in q_ok
                if c1.same(nt[p][q], one) and c2.same(nt[q][p], one)]
        if not cand:
            return None
        pairs.append(cand)
    for choice in product(*pairs):
        psi = tuple(p for p, _ in choice)
        psis = tuple(q for _, q in choice)
        if _psi_tensor(d1, d2, psi) and _psi_tensor(d2, d1, psis):
            return WSMorphism(d1, d2, psi), WSMorphism(d2, d1, psis)
    return None


def ws_equivalent(d1: WSData, d2: WSData) -> bool:
    return find_ws_iso_pair(d1, d2) is not None


# ---------------------------------------------------------------------------
# enumeration and classification

def _ws_data_for_family(args):
    """Valid (phi, chi) for a fixed congruence family, values at least class members."""
    N, H, classes = args
    nt, ht = N.table, H.table
    one, n1 = H.identity, N.identity
    hs = H.elements
    congs = [Congruence(N, c, LEFT) for c in classes]
    reps = [c.reps for c in congs]
    cls = [c.classes for c in congs]
    ident = tuple(N.elements)

    # phi(h, -) is chosen row by row; each row is checked for the hom axiom
    # up to ~h and for right compatibility with ~h
    def phi_rows(h):
        if h == one:
            return [ident]
        out = []
        c = cls[h]
        for row in product(reps[h], repeat=N.size):
            if c[row[n1]] != c[n1]:
                continue
            if any(c[row[nt[a][b]]] != c[nt[row[a]][row[b]]]
                   for a, b in product(N.elements, repeat=2)):
                continue
            out.append(row)
        return out

    results = []
    chi_cells = [(a, b) for a in hs for b in hs]
    for phi in product(*(phi_rows(h) for h in hs)):
        domains = []
        for a, b in chi_cells:
            hh = ht[a][b]
            if a == one and b == one:
                domains.append([n1])
            elif a == one or b == one:
                domains.append([reps[hh][cls[hh][n1]]])
            else:
                domains.append(reps[hh])
        for vals in product(*domains):
            chi = [list(vals[i * H.size:(i + 1) * H.size]) for i in range(H.size)]
            d = WSData(N, H, congs, phi, chi)
            if _first_failure(d) is None:
                results.append((classes, _table(phi), _table(chi)))
    return results


def congruence_families(N: FiniteMonoid, H: FiniteMonoid) -> list[tuple[tuple[int, ...], ...]]:
    """Products of left congruences per h, with ~1 discrete."""
    lattice = [c.classes for c in left_congruences(N)]
    disc = discrete_congruence(N).classes
    return [tuple(f) for f in product(*([disc] if h == H.identity else lattice
                                        for h in H.elements))]


def all_ws_data(N: FiniteMonoid, H: FiniteMonoid, jobs: int = 1) -> list[WSData]:
    """Valid triples with phi, chi valued in least class members, sorted."""
    fams = congruence_families(N, H)
    parts = parallel_map(_ws_data_for_family, [(N, H, f) for f in fams], jobs)
    found = sorted(t for part in parts for t in part)
    return [WSData(N, H, c, p, x) for c, p, x in found]


@dataclass(frozen=True)
class WSClass:
    representative: WSData
    size: int
    canonical_G: tuple[tuple[int, ...], ...]


def _canonical_G(d: WSData):
    return canonical_table(build_ws_extension(d).G)


def classify_ws(N: FiniteMonoid, H: FiniteMonoid, bound: int = DEFAULT_BOUND,
                jobs: int = 1) -> list[WSClass]:
    v = N.size * H.size
    if v > bound:
        raise BoundExceeded(v, bound)
    data = all_ws_data(N, H, jobs)
    canon = parallel_map(_canonical_G, data, jobs)
    reps: list[list] = []
    for d, cg in zip(data, canon):
        sizes = tuple(c.num_classes for c in d.cong)
        for entry in reps:
            if entry[2] == cg and entry[3] == sizes and ws_equivalent(entry[0], d):
                entry[1] += 1
                break
        else:
            reps.append([d, 1, cg, sizes])
    out = [WSClass(r, s, cg) for r, s, cg, _ in reps]
    out.sort(key=lambda c: (c.canonical_G, c.representative.classes,
                            c.representative.phi, c.representative.chi))
    return out
