"""Fibres of a monoid homomorphism and the Grothendieck construction.

``fiber_data`` turns an exact sequence N -> G -> H into a normal lax
monoidal family of (N, N)-bisets indexed by H; ``grothendieck`` glues such
a family back into a monoid over H.  ``psi_from_hom`` and ``hom_from_psi``
transport morphisms in both directions.

Compositors are stored as balanced maps: ``gamma[h][h2][x][y]`` is the
image of the class [(x, y)] of D_h (x) D_h2 in D_{h h2}.  Balancedness is
exactly the condition for such a table to factor through the tensor.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .biset import Biset, BisetHom, identity_biset, tensor, validate_biset, validate_biset_hom
from .errors import (
    AssocCoherenceFail,
    IncoherentData,
    MonoidMismatch,
    NotExact,
    ShapeError,
    TrianglesFail,
    UnitCoherenceFail,
    ValidationError,
)
from .monoid import (
    ExactSequence,
    FiniteMonoid,
    MonoidHom,
    exact_sequence,
    is_hom,
    validate_monoid,
)


@dataclass(frozen=True)
class LaxMonoidalData:
    N: FiniteMonoid
    H: FiniteMonoid
    fibers: tuple[Biset, ...]
    unit_iso: tuple[int, ...]
    gamma: tuple

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(self.fibers))
        object.__setattr__(self, "unit_iso", tuple(int(v) for v in self.unit_iso))
        object.__setattr__(
            self, "gamma",
            tuple(tuple(tuple(tuple(int(v) for v in row) for row in g) for g in gh)
                  for gh in self.gamma),
        )

    def compositor(self, h: int, h2: int) -> BisetHom:
        """gamma_{h,h2} as a biset hom out of D_h (x) D_h2."""
        tp = tensor(self.fibers[h], self.fibers[h2])
        hh = self.H.table[h][h2]
        out = [-1] * tp.biset.carrier
        g = self.gamma[h][h2]
        for x in self.fibers[h].elements:
            for y in self.fibers[h2].elements:
                out[tp.cls(x, y)] = g[x][y]
        return validate_biset_hom(tp.biset, self.fibers[hh], out)


def _check_shapes(L: LaxMonoidalData) -> None:
    N, H = L.N, L.H
    if len(L.fibers) != H.size:
        raise ShapeError("need one fibre per element of H")
    for d in L.fibers:
        if d.left != N or d.right != N:
            raise MonoidMismatch("fibres must be (N, N)-bisets")
    if len(L.gamma) != H.size or any(len(r) != H.size for r in L.gamma):
        raise ShapeError("gamma must be indexed by H x H")
    for h in H.elements:
        for h2 in H.elements:
            g = L.gamma[h][h2]
            dh, dh2, dhh = L.fibers[h], L.fibers[h2], L.fibers[H.table[h][h2]]
            if len(g) != dh.carrier or any(len(r) != dh2.carrier for r in g):
                raise ShapeError(f"gamma[{h}][{h2}] has the wrong shape")
            if any(not 0 <= v < dhh.carrier for r in g for v in r):
                raise ShapeError(f"gamma[{h}][{h2}] value out of range")
    if len(L.unit_iso) != L.fibers[H.identity].carrier:
        raise ShapeError("unit_iso must be defined on D_1")


def validate_lax_data(L: LaxMonoidalData) -> LaxMonoidalData:
    """Check normality and associativity coherence exhaustively."""
    _check_shapes(L)
    N, H = L.N, L.H
    for d in L.fibers:
        validate_biset(d)
    one = H.identity
    d1, u = L.fibers[one], L.unit_iso
    if sorted(u) != list(N.elements):
        raise UnitCoherenceFail(one, "unit_iso is not a bijection onto N")
    try:
        validate_biset_hom(d1, identity_biset(N), u)
    except ValidationError as exc:
        raise UnitCoherenceFail(one, "unit_iso is not a biset isomorphism") from exc
    for h in H.elements:
        for h2 in H.elements:
            g = L.gamma[h][h2]
            dh, dh2, dhh = L.fibers[h], L.fibers[h2], L.fibers[H.table[h][h2]]
            for x in dh.elements:
                for y in dh2.elements:
                    v = g[x][y]
                    for n in N.elements:
                        if g[dh.ract[x][n]][y] != g[x][dh2.lact[n][y]]:
                            raise IncoherentData(f"gamma[{h}][{h2}] is not balanced")
                        if g[dh.lact[n][x]][y] != dhh.lact[n][v]:
                            raise IncoherentData(f"gamma[{h}][{h2}] is not left equivariant")
                        if g[x][dh2.ract[y][n]] != dhh.ract[v][n]:
                            raise IncoherentData(f"gamma[{h}][{h2}] is not right equivariant")
    # normality: gamma_{1,h} and gamma_{h,1} are the unitors under unit_iso
    for h in H.elements:
        dh = L.fibers[h]
        for x in d1.elements:
            for y in dh.elements:
                if L.gamma[one][h][x][y] != dh.lact[u[x]][y]:
                    raise UnitCoherenceFail(h, "left unitor")
                if L.gamma[h][one][y][x] != dh.ract[y][u[x]]:
                    raise UnitCoherenceFail(h, "right unitor")
    ht = H.table
    for h1, h2, h3 in product(H.elements, repeat=3):
        g12, g12_3 = L.gamma[h1][h2], L.gamma[ht[h1][h2]][h3]
        g23, g1_23 = L.gamma[h2][h3], L.gamma[h1][ht[h2][h3]]
        for x in L.fibers[h1].elements:
            for y in L.fibers[h2].elements:
                xy = g12[x][y]
                for z in L.fibers[h3].elements:
                    if g12_3[xy][z] != g1_23[x][g23[y][z]]:
                        raise AssocCoherenceFail(h1, h2, h3)
    return L


def _fiber_positions(seq: ExactSequence):
    fibers = [seq.fiber(h) for h in seq.H.elements]
    pos = {}
    for h, fib in enumerate(fibers):
        for i, g in enumerate(fib):
            pos[g] = i
    return fibers, pos


def _check_sequence(seq: ExactSequence) -> None:
    try:
        exact_sequence(seq.k, seq.e)
    except ValidationError as exc:
        raise NotExact(str(exc)) from exc


def fiber_data(seq: ExactSequence, check: bool = True) -> LaxMonoidalData:
    """D_h = e^-1(h) with n.g = k(n) g and g.n = g k(n); gamma multiplies in G."""
    if check:
        _check_sequence(seq)
    N, G, H, k = seq.N, seq.G, seq.H, seq.k
    gt = G.table
    fibers, pos = _fiber_positions(seq)
    bisets = []
    for fib in fibers:
        lact = [[pos[gt[k(n)][g]] for g in fib] for n in N.elements]
        ract = [[pos[gt[g][k(n)]] for n in N.elements] for g in fib]
        bisets.append(Biset(N, N, len(fib), lact, ract))
    kinv = {k(n): n for n in N.elements}
    unit_iso = [kinv[g] for g in fibers[H.identity]]
    gamma = [
        [[[pos[gt[x][y]] for y in fibers[h2]] for x in fibers[h]] for h2 in H.elements]
        for h in H.elements
    ]
    L = LaxMonoidalData(N, H, bisets, unit_iso, gamma)
    if check:
        validate_lax_data(L)
    return L


def _offsets(L: LaxMonoidalData) -> list[int]:
    off, acc = [], 0
    for d in L.fibers:
        off.append(acc)
        acc += d.carrier
    return off


def grothendieck(L: LaxMonoidalData, check: bool = True) -> ExactSequence:
    """Glue the fibres: (h, x)(h2, y) = (h h2, gamma_{h,h2}(x, y)).

    Elements are ordered by h, then by position inside D_h.
    """
    if check:
        validate_lax_data(L)
    N, H = L.N, L.H
    off = _offsets(L)
    size = off[-1] + L.fibers[-1].carrier
    owner = [h for h in H.elements for _ in L.fibers[h].elements]
    local = [x for h in H.elements for x in L.fibers[h].elements]
    table = []
    for a in range(size):
        h, x = owner[a], local[a]
        row = []
        for b in range(size):
            h2, y = owner[b], local[b]
            row.append(off[H.table[h][h2]] + L.gamma[h][h2][x][y])
        table.append(row)
    one = H.identity
    uinv = {n: x for x, n in enumerate(L.unit_iso)}
    ident = off[one] + uinv[N.identity]
    G = validate_monoid(size, ident, table) if check else FiniteMonoid(size, ident, table)
    k = MonoidHom(N, G, tuple(off[one] + uinv[n] for n in N.elements))
    e = MonoidHom(G, H, tuple(owner))
    if check:
        return exact_sequence(k, e)
    return ExactSequence(k, e)


def fiber_relabeling(seq: ExactSequence) -> MonoidHom:
    """The isomorphism G -> grothendieck(fiber_data(seq)).G, g -> (e(g), position)."""
    L = fiber_data(seq, check=False)
    target = grothendieck(L, check=False)
    off = _offsets(L)
    _, pos = _fiber_positions(seq)
    return MonoidHom(seq.G, target.G, tuple(off[seq.e(g)] + pos[g] for g in seq.G.elements))


def is_slice_morphism(t: MonoidHom, s1: ExactSequence, s2: ExactSequence) -> bool:
    """t: G1 -> G2 is a monoid hom with e2 t = e1 and t k1 = k2."""
    if t.dom != s1.G or t.cod != s2.G or s1.N != s2.N or s1.H != s2.H:
        return False
    try:
        is_hom(t.dom, t.cod, t.map)
    except ValidationError:
        return False
    if any(s2.e(t(g)) != s1.e(g) for g in s1.G.elements):
        return False
    return all(t(s1.k(n)) == s2.k(n) for n in s1.N.elements)


def slice_homs(s1: ExactSequence, s2: ExactSequence, isos_only: bool = False) -> list[MonoidHom]:
    """All monoid homs G1 -> G2 commuting with both e's and both k's."""
    if s1.N != s2.N or s1.H != s2.H:
        raise MonoidMismatch("sequences have different kernels or bases")
    G1, G2 = s1.G, s2.G
    if isos_only and G1.size != G2.size:
        return []
    n = G1.size
    img = [-1] * n
    for x in s1.N.elements:
        img[s1.k(x)] = s2.k(x)
    free = [g for g in G1.elements if img[g] < 0]
    cands = {g: s2.fiber(s1.e(g)) for g in free}
    t1, t2 = G1.table, G2.table
    # every constraint t(xy) = t(x)t(y) is attached to x, y and xy
    touching = [[] for _ in G1.elements]
    for x in G1.elements:
        for y in G1.elements:
            for g in {x, y, t1[x][y]}:
                touching[g].append((x, y))
    out = []

    def ok(g):
        for x, y in touching[g]:
            ix, iy, ixy = img[x], img[y], img[t1[x][y]]
            if ix >= 0 and iy >= 0 and ixy >= 0 and ixy != t2[ix][iy]:
                return False
        return True

    def rec(i):
        if i == len(free):
            if isos_only and len(set(img)) != n:
                return
            out.append(MonoidHom(G1, G2, tuple(img)))
            return
        g = free[i]
        for v in cands[g]:
            if isos_only and v in img:
                continue
            img[g] = v
            if ok(g):
                rec(i + 1)
        img[g] = -1

    if all(ok(g) for g in G1.elements if img[g] >= 0):
        rec(0)
    return out


def find_slice_isomorphism(s1: ExactSequence, s2: ExactSequence) -> MonoidHom | None:
    if s1.G.size != s2.G.size:
        return None
    found = slice_homs(s1, s2, isos_only=True)
    return found[0] if found else None


# ---------------------------------------------------------------------------
# morphisms

@dataclass(frozen=True)
class MonoidalNatTrans:
    dom: LaxMonoidalData
    cod: LaxMonoidalData
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "components",
                           tuple(tuple(int(v) for v in c) for c in self.components))


def validate_nat_trans(tau: MonoidalNatTrans) -> MonoidalNatTrans:
    L1, L2 = tau.dom, tau.cod
    if L1.N != L2.N or L1.H != L2.H:
        raise MonoidMismatch("lax data over different (N, H)")
    H = L1.H
    if len(tau.components) != H.size:
        raise ShapeError("need one component per element of H")
    for h in H.elements:
        validate_biset_hom(L1.fibers[h], L2.fibers[h], tau.components[h])
    one = H.identity
    t1 = tau.components[one]
    for x in L1.fibers[one].elements:
        if L2.unit_iso[t1[x]] != L1.unit_iso[x]:
            raise ValidationError("tau_1 is not the identity under the unit isomorphisms")
    for h in H.elements:
        th = tau.components[h]
        for h2 in H.elements:
            th2 = tau.components[h2]
            thh = tau.components[H.table[h][h2]]
            g1, g2 = L1.gamma[h][h2], L2.gamma[h][h2]
            for x in L1.fibers[h].elements:
                for y in L1.fibers[h2].elements:
                    if thh[g1[x][y]] != g2[th[x]][th2[y]]:
                        raise ValidationError(f"tensor square fails at ({h},{h2})")
    return tau


def psi_from_hom(s1: ExactSequence, s2: ExactSequence, t: MonoidHom) -> MonoidalNatTrans:
    """Restrict t to fibres: tau_h(x) = t(x)."""
    if not is_slice_morphism(t, s1, s2):
        raise TrianglesFail("t is not a monoid hom commuting with k and e")
    L1, L2 = fiber_data(s1), fiber_data(s2)
    _, pos2 = _fiber_positions(s2)
    comps = [tuple(pos2[t(g)] for g in s1.fiber(h)) for h in s1.H.elements]
    return validate_nat_trans(MonoidalNatTrans(L1, L2, comps))


def hom_from_psi(tau: MonoidalNatTrans) -> MonoidHom:
    """The map (h, x) -> (h, tau_h(x)) between the glued monoids."""
    s1, s2 = grothendieck(tau.dom), grothendieck(tau.cod)
    o1, o2 = _offsets(tau.dom), _offsets(tau.cod)
    img = [0] * s1.G.size
    for h in s1.H.elements:
        for x, v in enumerate(tau.components[h]):
            img[o1[h] + x] = o2[h] + v
    t = MonoidHom(s1.G, s2.G, tuple(img))
    assert is_slice_morphism(t, s1, s2)
    return t


def all_nat_trans(L1: LaxMonoidalData, L2: LaxMonoidalData) -> list[MonoidalNatTrans]:
    """Exhaustive search over families of fibrewise maps."""
    H = L1.H
    per_fiber = [
        [m for m in product(range(L2.fibers[h].carrier), repeat=L1.fibers[h].carrier)]
        for h in H.elements
    ]
    out = []
    for comps in product(*per_fiber):
        try:
            out.append(validate_nat_trans(MonoidalNatTrans(L1, L2, comps)))
        except ValidationError:
            continue
    return out


def lax_data_isomorphic(L1: LaxMonoidalData, L2: LaxMonoidalData) -> bool:
    """Componentwise bijections D_h -> D'_h forming a monoidal natural transformation."""
    if L1.N != L2.N or L1.H != L2.H:
        return False
    if any(a.carrier != b.carrier for a, b in zip(L1.fibers, L2.fibers)):
        return False
    s1, s2 = grothendieck(L1), grothendieck(L2)
    iso = find_slice_isomorphism(s1, s2)
    if iso is None:
        return False
    o1, o2 = _offsets(L1), _offsets(L2)
    comps = [
        tuple(iso(o1[h] + x) - o2[h] for x in L1.fibers[h].elements) for h in L1.H.elements
    ]
    validate_nat_trans(MonoidalNatTrans(L1, L2, comps))
    return True
