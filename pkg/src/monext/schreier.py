"""Schreier extensions and their classifying pairs (phi, chi).

An epi e: G -> H with kernel k is Schreier when every fibre has an element
u_h such that n -> k(n) u_h is a bijection N -> e^-1(h).  Writing
u_h k(n) = k(phi(h, n)) u_h and u_h u_h' = k(chi(h, h')) u_hh' turns G into
H x N with (h, n)(h', n') = (hh', n phi(h, n') chi(h, h')).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .biset import hom_biset
from .correspondence import LaxMonoidalData
from .errors import AxiomFail, BadWitness, BoundExceeded, MonoidMismatch, ShapeError
from .monoid import (
    Extension,
    FiniteMonoid,
    MonoidHom,
    all_homs,
    canonical_table,
    extension,
    parallel_map,
    validate_monoid,
)

PHI_HOM = "phi_hom"
PHI_IDENTITY = "phi_identity"
PHI_CHI_COMPAT = "phi_chi_compat"
CHI_NORMAL = "chi_normal"
CHI_COCYCLE = "chi_cocycle"
AXIOMS = (PHI_HOM, PHI_IDENTITY, PHI_CHI_COMPAT, CHI_NORMAL, CHI_COCYCLE)

DEFAULT_BOUND = 12


def _table(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in r) for r in rows)


@dataclass(frozen=True)
class SchreierData:
    N: FiniteMonoid
    H: FiniteMonoid
    phi: tuple[tuple[int, ...], ...]
    chi: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "phi", _table(self.phi))
        object.__setattr__(self, "chi", _table(self.chi))
        n, h = self.N.size, self.H.size
        if len(self.phi) != h or any(len(r) != n for r in self.phi):
            raise ShapeError("phi must be an |H| x |N| table")
        if len(self.chi) != h or any(len(r) != h for r in self.chi):
            raise ShapeError("chi must be an |H| x |H| table")
        for rows in (self.phi, self.chi):
            if any(not 0 <= v < n for r in rows for v in r):
                raise ShapeError("phi and chi take values in N")


def trivial_schreier_data(N: FiniteMonoid, H: FiniteMonoid) -> SchreierData:
    return SchreierData(N, H, [list(N.elements)] * H.size,
                        [[N.identity] * H.size] * H.size)


def _axiom_failures(d: SchreierData, first_only: bool):
    """Yield (axiom, hs, ns) for every failing instance, grouped by family."""
    N, H, phi, chi = d.N, d.H, d.phi, d.chi
    nt, ht = N.table, H.table
    one, n1 = H.identity, N.identity
    for h in H.elements:
        if phi[h][n1] != n1:
            yield PHI_HOM, (h,), (n1,)
            if first_only:
                return
        for a, b in product(N.elements, repeat=2):
            if phi[h][nt[a][b]] != nt[phi[h][a]][phi[h][b]]:
                yield PHI_HOM, (h,), (a, b)
                if first_only:
                    return
    for n in N.elements:
        if phi[one][n] != n:
            yield PHI_IDENTITY, (one,), (n,)
            if first_only:
                return
    for h, h2 in product(H.elements, repeat=2):
        c, hh = chi[h][h2], ht[h][h2]
        for n in N.elements:
            if nt[phi[h][phi[h2][n]]][c] != nt[c][phi[hh][n]]:
                yield PHI_CHI_COMPAT, (h, h2), (n,)
                if first_only:
                    return
    for h in H.elements:
        if chi[one][h] != n1 or chi[h][one] != n1:
            yield CHI_NORMAL, (h,), ()
            if first_only:
                return
    for x, y, z in product(H.elements, repeat=3):
        lhs = nt[chi[x][y]][chi[ht[x][y]][z]]
        rhs = nt[phi[x][chi[y][z]]][chi[x][ht[y][z]]]
        if lhs != rhs:
            yield CHI_COCYCLE, (x, y, z), ()
            if first_only:
                return


def failing_axioms(d: SchreierData) -> set[str]:
    """The set of axiom families with at least one failing instance."""
    return {f[0] for f in _axiom_failures(d, first_only=False)}


def schreier_axioms_hold(d: SchreierData) -> bool:
    return next(_axiom_failures(d, first_only=True), None) is None


def validate_schreier_data(N: FiniteMonoid, H: FiniteMonoid, phi, chi) -> SchreierData:
    """Check every axiom; raise AxiomFail naming the first failure."""
    d = SchreierData(N, H, phi, chi)
    fail = next(_axiom_failures(d, first_only=True), None)
    if fail is not None:
        raise AxiomFail(*fail)
    return d


def build_schreier_extension(d: SchreierData) -> Extension:
    """G on H x N, element (h, n) at index h*|N| + n."""
    N, H = d.N, d.H
    nn = N.size
    nt, ht = N.table, H.table
    size = H.size * nn
    table = []
    for a in range(size):
        h, n = divmod(a, nn)
        row = []
        for b in range(size):
            h2, n2 = divmod(b, nn)
            m = nt[nt[n][d.phi[h][n2]]][d.chi[h][h2]]
            row.append(ht[h][h2] * nn + m)
        table.append(row)
    G = validate_monoid(size, H.identity * nn + N.identity, table)
    k = MonoidHom(N, G, tuple(H.identity * nn + n for n in N.elements))
    e = MonoidHom(G, H, tuple(a // nn for a in range(size)))
    return extension(k, e)


def canonical_witnesses(d: SchreierData) -> tuple[int, ...]:
    """u_h = (h, 1) in the layout of build_schreier_extension."""
    return tuple(h * d.N.size + d.N.identity for h in d.H.elements)


@dataclass(frozen=True)
class EpiReport:
    schreier: bool
    special: bool
    witnesses: tuple  # per h: chosen u_h, or None when the fibre has none


def _factors(seq, u):
    """n -> k(n) u as a list indexed by n."""
    gt = seq.G.table
    return [gt[seq.k(n)][u] for n in seq.N.elements]


def is_schreier_epi(seq) -> EpiReport:
    G, H = seq.G, seq.H
    wit = []
    ok = seq.e.is_surjective()
    for h in H.elements:
        fib = seq.fiber(h)
        if h == H.identity:
            cands = [G.identity]
        else:
            cands = fib
        found = None
        for u in cands:
            if sorted(_factors(seq, u)) == fib:
                found = u
                break
        wit.append(found)
        ok = ok and found is not None
    special = ok
    if ok:
        for h in H.elements:
            fib = seq.fiber(h)
            for g2 in fib:
                imgs = _factors(seq, g2)
                if sorted(imgs) != fib:
                    special = False
                    break
            if not special:
                break
    return EpiReport(ok, special, tuple(wit))


def _unique_n(seq, target, u, what):
    gt = seq.G.table
    hits = [n for n in seq.N.elements if gt[seq.k(n)][u] == target]
    if len(hits) != 1:
        raise BadWitness(f"{what}: {len(hits)} solutions instead of one")
    return hits[0]


def extract_schreier_data(seq, witnesses) -> SchreierData:
    N, H, G = seq.N, seq.H, seq.G
    u = tuple(witnesses)
    if len(u) != H.size:
        raise BadWitness("need one witness per element of H")
    if u[H.identity] != G.identity:
        raise BadWitness("the witness over 1 must be the identity")
    for h in H.elements:
        if seq.e(u[h]) != h:
            raise BadWitness(f"u_{h} is not in the fibre over {h}")
        if sorted(_factors(seq, u[h])) != seq.fiber(h):
            raise BadWitness(f"n -> k(n) u_{h} is not a bijection onto the fibre")
    gt = G.table
    phi = [[_unique_n(seq, gt[u[h]][seq.k(n)], u[h], f"phi({h},{n})") for n in N.elements]
           for h in H.elements]
    chi = [[_unique_n(seq, gt[u[h]][u[h2]], u[H.table[h][h2]], f"chi({h},{h2})")
            for h2 in H.elements] for h in H.elements]
    return validate_schreier_data(N, H, phi, chi)


# ---------------------------------------------------------------------------
# morphisms

@dataclass(frozen=True)
class SchreierMorphism:
    dom: SchreierData
    cod: SchreierData
    psi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "psi", tuple(int(v) for v in self.psi))


@dataclass(frozen=True)
class MorphismReport:
    valid: bool
    iso: bool


def _same_base(d1, d2):
    if d1.N != d2.N or d1.H != d2.H:
        raise MonoidMismatch("data over different (N, H)")


def schreier_morphism_holds(d1: SchreierData, d2: SchreierData, psi) -> bool:
    N, H = d1.N, d1.H
    nt, ht = N.table, H.table
    if len(psi) != H.size or any(not 0 <= v < N.size for v in psi):
        return False
    if psi[H.identity] != N.identity:
        return False
    for h in H.elements:
        p = psi[h]
        for n in N.elements:
            if nt[d1.phi[h][n]][p] != nt[p][d2.phi[h][n]]:
                return False
    for h, h2 in product(H.elements, repeat=2):
        lhs = nt[d1.chi[h][h2]][psi[ht[h][h2]]]
        rhs = nt[nt[d1.phi[h][psi[h2]]][psi[h]]][d2.chi[h][h2]]
        if lhs != rhs:
            return False
    return True


def validate_schreier_morphism(d1: SchreierData, d2: SchreierData, psi) -> MorphismReport:
    _same_base(d1, d2)
    valid = schreier_morphism_holds(d1, d2, tuple(psi))
    units = set(d1.N.units())
    return MorphismReport(valid, valid and all(p in units for p in psi))


def morphism_extension_map(d1: SchreierData, d2: SchreierData, psi) -> MonoidHom:
    """The induced map of built extensions, (h, n) -> (h, n psi(h))."""
    _same_base(d1, d2)
    g1 = build_schreier_extension(d1).G
    g2 = build_schreier_extension(d2).G
    nn, nt = d1.N.size, d1.N.table
    img = [h * nn + nt[n][psi[h]] for h in d1.H.elements for n in d1.N.elements]
    return MonoidHom(g1, g2, tuple(img))


def all_schreier_morphisms(d1: SchreierData, d2: SchreierData) -> list[tuple[int, ...]]:
    _same_base(d1, d2)
    N, H = d1.N, d1.H
    out = []
    for psi in product(N.elements, repeat=H.size):
        if schreier_morphism_holds(d1, d2, psi):
            out.append(psi)
    return out


def find_schreier_iso(d1: SchreierData, d2: SchreierData) -> tuple[int, ...] | None:
    """First unit-valued psi in lexicographic order, or None."""
    _same_base(d1, d2)
    N, H = d1.N, d1.H
    units = N.units()
    nt = N.table
    choices = []
    for h in H.elements:
        if h == H.identity:
            choices.append([N.identity])
            continue
        # pointwise condition on phi prunes each psi(h) independently
        choices.append([p for p in units
                        if all(nt[d1.phi[h][n]][p] == nt[p][d2.phi[h][n]] for n in N.elements)])
    for psi in product(*choices):
        if schreier_morphism_holds(d1, d2, psi):
            return psi
    return None


# ---------------------------------------------------------------------------
# lax monoidal data

def lax_data(d: SchreierData) -> LaxMonoidalData:
    """Fibres are N with right action twisted by phi(h, -); gamma(n, n') = n phi(h, n') chi(h, h')."""
    N, H = d.N, d.H
    nt = N.table
    fibers = []
    for h in H.elements:
        f = MonoidHom(N, N, d.phi[h])
        fibers.append(hom_biset(f))
    gamma = [
        [[[nt[nt[n][d.phi[h][n2]]][d.chi[h][h2]] for n2 in N.elements] for n in N.elements]
         for h2 in H.elements]
        for h in H.elements
    ]
    return LaxMonoidalData(N, H, fibers, tuple(N.elements), gamma)


# ---------------------------------------------------------------------------
# enumeration and classification

def _phi_choices(N: FiniteMonoid, H: FiniteMonoid):
    ends = [h.map for h in all_homs(N, N)]
    ident = tuple(N.elements)
    return [[ident] if h == H.identity else ends for h in H.elements]


def _chi_completions(N, H, phi):
    """All chi tables making (phi, chi) valid, by backtracking over cells."""
    nt, ht = N.table, H.table
    one, n1 = H.identity, N.identity
    hs = H.elements
    chi = [[-1] * H.size for _ in hs]
    for h in hs:
        chi[one][h] = n1
        chi[h][one] = n1
    cells = [(a, b) for a in hs for b in hs if a != one and b != one]

    def compat_ok(a, b):
        c, ab = chi[a][b], ht[a][b]
        return all(nt[phi[a][phi[b][n]]][c] == nt[c][phi[ab][n]] for n in N.elements)

    def cocycle_ok():
        for x, y, z in product(hs, repeat=3):
            c1, c2 = chi[x][y], chi[ht[x][y]][z]
            c3, c4 = chi[y][z], chi[x][ht[y][z]]
            if min(c1, c2, c3, c4) < 0:
                continue
            if nt[c1][c2] != nt[phi[x][c3]][c4]:
                return False
        return True

    for a in hs:
        if not compat_ok(one, a) or not compat_ok(a, one):
            return
    if not cocycle_ok():
        return

    def rec(i):
        if i == len(cells):
            yield _table(chi)
            return
        a, b = cells[i]
        for v in N.elements:
            chi[a][b] = v
            if compat_ok(a, b) and cocycle_ok():
                yield from rec(i + 1)
        chi[a][b] = -1

    yield from rec(0)


def _data_for_phi(args):
    N, H, phi = args
    ident = tuple(N.elements)
    if any(phi[h][N.identity] != N.identity for h in H.elements):
        return []
    if phi[H.identity] != ident:
        return []
    return [(phi, chi) for chi in _chi_completions(N, H, phi)]


def all_schreier_data(N: FiniteMonoid, H: FiniteMonoid, jobs: int = 1) -> list[SchreierData]:
    """Every valid (phi, chi), sorted by (phi, chi)."""
    phis = [tuple(p) for p in product(*_phi_choices(N, H))]
    parts = parallel_map(_data_for_phi, [(N, H, p) for p in phis], jobs)
    found = sorted(pc for part in parts for pc in part)
    return [SchreierData(N, H, p, c) for p, c in found]


@dataclass(frozen=True)
class SchreierClass:
    representative: SchreierData
    size: int
    canonical_G: tuple[tuple[int, ...], ...]


def _check_bound(N, H, bound):
    v = N.size * H.size
    if v > bound:
        raise BoundExceeded(v, bound)


def classify_schreier(N: FiniteMonoid, H: FiniteMonoid, bound: int = DEFAULT_BOUND,
                      jobs: int = 1) -> list[SchreierClass]:
    """Valid data up to invertible psi, sorted by canonical G then representative."""
    _check_bound(N, H, bound)
    data = all_schreier_data(N, H, jobs)
    canon = parallel_map(_canonical_G, data, jobs)
    reps: list[list] = []  # [rep, size, canonical G]
    for d, cg in zip(data, canon):
        for entry in reps:
            if entry[2] == cg and find_schreier_iso(entry[0], d) is not None:
                entry[1] += 1
                break
        else:
            reps.append([d, 1, cg])
    out = [SchreierClass(r, s, cg) for r, s, cg in reps]
    out.sort(key=lambda c: (c.canonical_G, c.representative.phi, c.representative.chi))
    return out


def _canonical_G(d: SchreierData):
    return canonical_table(build_schreier_extension(d).G)
