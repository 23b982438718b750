"""Finite monoids as multiplication tables.

Elements are the dense indices ``0..size-1``.  Everything here is a pure
function over immutable values; the only mutable objects (union-find,
partial tables) live inside single calls.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    InvalidCongruence,
    MonoidMismatch,
    MultNotPreserved,
    NotAssociative,
    NotExact,
    NotIdentity,
    ShapeError,
    SizeTooLarge,
    UnitNotPreserved,
)

MAX_ENUMERATION_ORDER = 5

LEFT = "left"
TWO_SIDED = "two_sided"


def _freeze_table(table) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in table)


@dataclass(frozen=True)
class FiniteMonoid:
    size: int
    identity: int
    table: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "table", _freeze_table(self.table))
        if self.size < 1:
            raise ShapeError("a monoid has at least one element")
        if len(self.table) != self.size or any(len(r) != self.size for r in self.table):
            raise ShapeError(f"table must be {self.size}x{self.size}")
        if not 0 <= self.identity < self.size:
            raise ShapeError(f"identity {self.identity} out of range")
        for row in self.table:
            for v in row:
                if not 0 <= v < self.size:
                    raise ShapeError(f"table entry {v} out of range")

    def __repr__(self):
        label = self.name or "FiniteMonoid"
        return f"<{label} order={self.size} identity={self.identity}>"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = self.table[acc][x]
        return acc

    @property
    def elements(self) -> range:
        return range(self.size)

    def units(self) -> list[int]:
        e = self.identity
        return [
            a for a in self.elements
            if any(self.table[a][b] == e and self.table[b][a] == e for b in self.elements)
        ]

    def inverse(self, a: int) -> int:
        for b in self.elements:
            if self.table[a][b] == self.identity and self.table[b][a] == self.identity:
                return b
        raise ValueError(f"{a} is not a unit")

    def is_group(self) -> bool:
        return len(self.units()) == self.size

    def is_commutative(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in self.elements)

    def element_order(self, a: int) -> int | None:
        """Order of ``a`` in the group of units, ``None`` if ``a`` is no unit."""
        x, k = a, 1
        while x != self.identity:
            x = self.table[x][a]
            k += 1
            if k > self.size:
                return None
        return k


def validate_monoid(size: int, identity: int, table, name: str | None = None) -> FiniteMonoid:
    """Build a FiniteMonoid, checking the identity and associativity laws.

    Raises NotIdentity or NotAssociative, the latter for the first failing
    triple in lexicographic order.
    """
    m = FiniteMonoid(size, identity, table, name=name)
    t = m.table
    for j in range(size):
        if t[identity][j] != j or t[j][identity] != j:
            raise NotIdentity(identity)
    for i in range(size):
        ti = t[i]
        for j in range(size):
            tij = t[ti[j]]
            tj = t[j]
            for k in range(size):
                if tij[k] != ti[tj[k]]:
                    raise NotAssociative(i, j, k)
    return m


def is_monoid_table(identity: int, table) -> bool:
    try:
        validate_monoid(len(table), identity, table)
    except (NotIdentity, NotAssociative, ShapeError):
        return False
    return True


# ---------------------------------------------------------------------------
# standard monoids

def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(1, 0, [[0]], name="T1")


def cyclic_group(n: int) -> FiniteMonoid:
    return FiniteMonoid(n, 0, [[(i + j) % n for j in range(n)] for i in range(n)], name=f"C{n}")


def saturating_addition(k: int) -> FiniteMonoid:
    """The monoid {0..k} under addition truncated at k."""
    return FiniteMonoid(
        k + 1, 0, [[min(k, i + j) for j in range(k + 1)] for i in range(k + 1)], name=f"N{k}"
    )


def idempotent_pair() -> FiniteMonoid:
    """{1, e} with e*e = e; element 0 is the identity."""
    return FiniteMonoid(2, 0, [[0, 1], [1, 1]], name="I2")


def direct_product(a: FiniteMonoid, b: FiniteMonoid) -> FiniteMonoid:
    """A x B with the pair (x, y) stored at index x*|B| + y."""
    nb = b.size
    table = [
        [a.table[x1][x2] * nb + b.table[y1][y2] for x2 in a.elements for y2 in b.elements]
        for x1 in a.elements for y1 in b.elements
    ]
    name = f"{a.name}x{b.name}" if a.name and b.name else None
    return FiniteMonoid(a.size * nb, a.identity * nb + b.identity, table, name=name)


def relabel(m: FiniteMonoid, perm: Sequence[int]) -> FiniteMonoid:
    """Transport ``m`` along the bijection ``old -> perm[old]``."""
    n = m.size
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    table = [[perm[m.table[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
    return FiniteMonoid(n, perm[m.identity], table, name=m.name)


def submonoid(m: FiniteMonoid, elements: Sequence[int]) -> tuple[FiniteMonoid, "MonoidHom"]:
    """Restrict ``m`` to a multiplicatively closed subset containing the identity."""
    elements = sorted(elements)
    pos = {g: i for i, g in enumerate(elements)}
    if m.identity not in pos:
        raise ValueError("subset does not contain the identity")
    table = []
    for a in elements:
        row = []
        for b in elements:
            ab = m.table[a][b]
            if ab not in pos:
                raise ValueError("subset is not closed under multiplication")
            row.append(pos[ab])
        table.append(row)
    sub = FiniteMonoid(len(elements), pos[m.identity], table)
    return sub, MonoidHom(sub, m, tuple(elements))


# ---------------------------------------------------------------------------
# homomorphisms

@dataclass(frozen=True)
class MonoidHom:
    dom: FiniteMonoid
    cod: FiniteMonoid
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.dom.size:
            raise ShapeError("hom map length must equal domain size")
        if any(not 0 <= v < self.cod.size for v in self.map):
            raise ShapeError("hom map entry out of range")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.cod.size

    def image(self) -> list[int]:
        return sorted(set(self.map))

    def preimage(self, y: int) -> list[int]:
        return [x for x, v in enumerate(self.map) if v == y]


def is_hom(dom: FiniteMonoid, cod: FiniteMonoid, map: Sequence[int]) -> MonoidHom:
    f = MonoidHom(dom, cod, tuple(map))
    if f.map[dom.identity] != cod.identity:
        raise UnitNotPreserved()
    fm, dt, ct = f.map, dom.table, cod.table
    for i in dom.elements:
        for j in dom.elements:
            if fm[dt[i][j]] != ct[fm[i]][fm[j]]:
                raise MultNotPreserved(i, j)
    return f


def identity_hom(m: FiniteMonoid) -> MonoidHom:
    return MonoidHom(m, m, tuple(m.elements))


def compose(g: MonoidHom, f: MonoidHom) -> MonoidHom:
    """g after f."""
    if f.cod != g.dom:
        raise MonoidMismatch("codomain of f differs from domain of g")
    return MonoidHom(f.dom, g.cod, tuple(g.map[x] for x in f.map))


def all_homs(dom: FiniteMonoid, cod: FiniteMonoid) -> list[MonoidHom]:
    """Every monoid homomorphism dom -> cod, in lexicographic order of maps."""
    n = dom.size
    order = [dom.identity] + [x for x in dom.elements if x != dom.identity]
    pos = {x: i for i, x in enumerate(order)}
    img = [-1] * n
    img[dom.identity] = cod.identity
    dt, ct = dom.table, cod.table
    out = []

    def ok(x):
        for y in order[: pos[x] + 1]:
            for a, b in ((x, y), (y, x)):
                ab = dt[a][b]
                if img[ab] >= 0 and img[ab] != ct[img[a]][img[b]]:
                    return False
        # products that land on x from already assigned pairs
        for a in order[: pos[x] + 1]:
            for b in order[: pos[x] + 1]:
                if dt[a][b] == x and img[x] != ct[img[a]][img[b]]:
                    return False
        return True

    def rec(i):
        if i == n:
            out.append(MonoidHom(dom, cod, tuple(img)))
            return
        x = order[i]
        for v in cod.elements:
            img[x] = v
            if ok(x):
                rec(i + 1)
        img[x] = -1

    if ok(dom.identity):
        rec(1)
    out.sort(key=lambda h: h.map)
    return out


# ---------------------------------------------------------------------------
# union-find and congruences

class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the smaller index as root
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def labels(self) -> tuple[int, ...]:
        """Dense class ids, numbered in order of each class's least member."""
        ids: dict[int, int] = {}
        out = []
        for x in range(len(self.parent)):
            r = self.find(x)
            if r not in ids:
                ids[r] = len(ids)
            out.append(ids[r])
        return tuple(out)


def normalize_labels(labels: Sequence) -> tuple[int, ...]:
    ids: dict = {}
    return tuple(ids.setdefault(v, len(ids)) for v in labels)


def generated_equivalence(size: int, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    uf = UnionFind(size)
    for a, b in pairs:
        uf.union(a, b)
    return uf.labels()


@dataclass(frozen=True)
class Congruence:
    """A partition of a monoid's elements stable under translations.

    ``classes[x]`` is a dense class id; ids are numbered in increasing
    order of each class's least member, and ``reps[c]`` is that member.
    """

    carrier: FiniteMonoid
    classes: tuple[int, ...]
    mode: str = LEFT

    def __post_init__(self):
        object.__setattr__(self, "classes", normalize_labels(self.classes))
        if len(self.classes) != self.carrier.size:
            raise ShapeError("congruence class array has wrong length")
        if self.mode not in (LEFT, TWO_SIDED):
            raise ShapeError(f"unknown congruence mode {self.mode!r}")

    @property
    def num_classes(self) -> int:
        return max(self.classes) + 1

    @property
    def reps(self) -> tuple[int, ...]:
        seen: dict[int, int] = {}
        for x, c in enumerate(self.classes):
            seen.setdefault(c, x)
        return tuple(seen[c] for c in range(self.num_classes))

    def rep(self, x: int) -> int:
        return self.reps[self.classes[x]]

    def same(self, a: int, b: int) -> bool:
        return self.classes[a] == self.classes[b]

    def members(self, c: int) -> list[int]:
        return [x for x, k in enumerate(self.classes) if k == c]

    def is_discrete(self) -> bool:
        return self.num_classes == self.carrier.size

    def is_total(self) -> bool:
        return self.num_classes == 1

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in self.carrier.elements for b in self.carrier.elements
                if a < b and self.classes[a] == self.classes[b]]


def discrete_congruence(m: FiniteMonoid, mode: str = LEFT) -> Congruence:
    return Congruence(m, tuple(m.elements), mode)


def total_congruence(m: FiniteMonoid, mode: str = LEFT) -> Congruence:
    return Congruence(m, (0,) * m.size, mode)


def is_stable(carrier: FiniteMonoid, classes: Sequence[int], mode: str) -> bool:
    t = carrier.table
    for a in carrier.elements:
        for b in carrier.elements:
            if classes[a] != classes[b]:
                continue
            for m in carrier.elements:
                if classes[t[m][a]] != classes[t[m][b]]:
                    return False
                if mode == TWO_SIDED and classes[t[a][m]] != classes[t[b][m]]:
                    return False
    return True


def check_congruence(cong: Congruence) -> Congruence:
    if not is_stable(cong.carrier, cong.classes, cong.mode):
        raise InvalidCongruence(f"partition {cong.classes} is not a {cong.mode} congruence")
    return cong


def congruence_closure(carrier: FiniteMonoid, pairs: Iterable[tuple[int, int]],
                       mode: str = LEFT) -> Congruence:
    """Smallest left (or two-sided) congruence containing ``pairs``.

    Union-find with a worklist: every successful union pushes all of its
    translates, which is enough because any relation derived later is a
    chain of unions whose translates are already queued.
    """
    if mode not in (LEFT, TWO_SIDED):
        raise ShapeError(f"unknown congruence mode {mode!r}")
    t = carrier.table
    uf = UnionFind(carrier.size)
    work = list(pairs)
    while work:
        a, b = work.pop()
        if not uf.union(a, b):
            continue
        for m in carrier.elements:
            work.append((t[m][a], t[m][b]))
            if mode == TWO_SIDED:
                work.append((t[a][m], t[b][m]))
    return Congruence(carrier, uf.labels(), mode)


def left_congruences(m: FiniteMonoid) -> list[Congruence]:
    """All left congruences on ``m``, finest first then by class array."""
    out = []
    for labels in _set_partitions(m.size):
        if is_stable(m, labels, LEFT):
            out.append(Congruence(m, labels, LEFT))
    out.sort(key=lambda c: (-c.num_classes, c.classes))
    return out


def _set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    # restricted growth strings
    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            yield from rec(prefix + [v], max(top, v))

    if n == 0:
        yield ()
    else:
        yield from rec([0], 0)


def quotient_by_congruence(carrier: FiniteMonoid, cong: Congruence) -> tuple[FiniteMonoid, MonoidHom]:
    if cong.mode != TWO_SIDED:
        raise InvalidCongruence("quotient needs a two-sided congruence")
    if cong.carrier != carrier:
        raise MonoidMismatch("congruence lives on a different monoid")
    reps, cls, t = cong.reps, cong.classes, carrier.table
    k = cong.num_classes
    table = [[cls[t[reps[a]][reps[b]]] for b in range(k)] for a in range(k)]
    q = FiniteMonoid(k, cls[carrier.identity], table)
    return q, MonoidHom(carrier, q, cls)


# ---------------------------------------------------------------------------
# kernels, cokernels, exact sequences

def kernel(e: MonoidHom) -> tuple[FiniteMonoid, MonoidHom]:
    """The submonoid e^-1(1) with its inclusion, in ambient index order."""
    return submonoid(e.dom, e.preimage(e.cod.identity))


def cokernel(k: MonoidHom) -> tuple[FiniteMonoid, MonoidHom]:
    g = k.cod
    cong = congruence_closure(g, [(k(n), g.identity) for n in k.dom.elements], TWO_SIDED)
    return quotient_by_congruence(g, cong)


@dataclass(frozen=True)
class ExactSequence:
    """N --k--> G --e--> H with k the kernel of e."""

    k: MonoidHom
    e: MonoidHom

    @property
    def N(self) -> FiniteMonoid:
        return self.k.dom

    @property
    def G(self) -> FiniteMonoid:
        return self.k.cod

    @property
    def H(self) -> FiniteMonoid:
        return self.e.cod

    def fiber(self, h: int) -> list[int]:
        return self.e.preimage(h)


@dataclass(frozen=True)
class Extension(ExactSequence):
    """An exact sequence whose e is also the cokernel of k."""


def _check_exact(k: MonoidHom, e: MonoidHom) -> None:
    if k.cod != e.dom:
        raise NotExact("k and e are not composable")
    is_hom(k.dom, k.cod, k.map)
    is_hom(e.dom, e.cod, e.map)
    if not k.is_injective():
        raise NotExact("k is not injective")
    if sorted(k.map) != e.preimage(e.cod.identity):
        raise NotExact("image of k differs from e^-1(1)")


def exact_sequence(k: MonoidHom, e: MonoidHom) -> ExactSequence:
    _check_exact(k, e)
    return ExactSequence(k, e)


def is_cokernel_of(e: MonoidHom, k: MonoidHom) -> bool:
    if not e.is_surjective():
        return False
    q, proj = cokernel(k)
    if q.size != e.cod.size:
        return False
    # e is constant on cokernel classes, so it factors through proj; with
    # equal sizes and e surjective the factorisation is a bijection
    induced = {}
    for g in e.dom.elements:
        c = proj(g)
        if induced.setdefault(c, e(g)) != e(g):
            return False
    return True


def extension(k: MonoidHom, e: MonoidHom) -> Extension:
    _check_exact(k, e)
    if not is_cokernel_of(e, k):
        raise NotExact("e is not the cokernel of k")
    return Extension(k, e)


def as_extension(seq: ExactSequence) -> Extension:
    return extension(seq.k, seq.e)


# ---------------------------------------------------------------------------
# canonical forms

def canonical_form(m: FiniteMonoid) -> tuple[FiniteMonoid, tuple[int, ...]]:
    """Lexicographically least relabelled table with the identity at 0.

    Returns the canonical monoid and the permutation ``old -> new``.  The
    search fixes labels along row 1 of the relabelled table: label 1 is
    branched over, every further cell either reads an existing label or
    forces the smallest free label, and only the minimising branches
    survive.  Automorphisms found at tied leaves prune symmetric branches.
    """
    n, t, e = m.size, m.table, m.identity
    if n == 1:
        return FiniteMonoid(1, 0, [[0]], name=m.name), (0,)

    lab = [-1] * n
    inv = [-1] * n
    lab[e], inv[0] = 0, e
    best: list = [None, None]  # canonical table (tuple of rows), inv
    autos: list[tuple[int, ...]] = []

    def assign(x, label, undo):
        lab[x] = label
        inv[label] = x
        undo.append(x)

    def free_label():
        for L in range(n):
            if inv[L] < 0:
                return L
        return -1

    def rollback(undo):
        for x in undo:
            inv[lab[x]] = -1
            lab[x] = -1

    def leaf():
        table = tuple(tuple(lab[t[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
        if best[0] is None or table < best[0]:
            best[0], best[1] = table, list(inv)
        elif table == best[0]:
            autos.append(tuple(best[1][lab[a]] for a in range(n)))

    def orbit_partition(fixed):
        gens = [g for g in autos if all(g[a] == a for a in fixed)]
        if not gens:
            return None
        uf = UnionFind(n)
        for g in gens:
            for a in range(n):
                uf.union(a, g[a])
        return uf

    def cell_value(x, y, undo):
        z = t[x][y]
        if lab[z] < 0:
            assign(z, free_label(), undo)
        return lab[z]

    def row1(c, x, cmp):
        # cmp: 0 while the prefix equals best's row 1, -1 once strictly smaller
        if c == n:
            leaf()
            return
        if inv[c] >= 0:
            undo: list[int] = []
            v = cell_value(x, inv[c], undo)
            ncmp = _cmp_step(cmp, v, best[0], c)
            if ncmp is not None:
                row1(c + 1, x, ncmp)
            rollback(undo)
            return
        cands = []
        for y in range(n):
            if lab[y] >= 0:
                continue
            undo = []
            assign(y, c, undo)
            v = cell_value(x, y, undo)
            rollback(undo)
            cands.append((v, y))
        vmin = min(v for v, _ in cands)
        explored: list[int] = []
        fixed = [a for a in range(n) if lab[a] >= 0]
        for v, y in cands:
            if v != vmin:
                continue
            uf = orbit_partition(fixed)
            if uf is not None and any(uf.find(y) == uf.find(y2) for y2 in explored):
                continue
            ncmp = _cmp_step(cmp, v, best[0], c)
            if ncmp is None:
                continue
            undo = []
            assign(y, c, undo)
            cell_value(x, y, undo)
            row1(c + 1, x, ncmp)
            rollback(undo)
            explored.append(y)

    # choose the element labelled 1, minimising cell (1, 1)
    cands = []
    for x in range(n):
        if x == e:
            continue
        undo: list[int] = []
        assign(x, 1, undo)
        v = cell_value(x, x, undo)
        rollback(undo)
        cands.append((v, x))
    vmin = min(v for v, _ in cands)
    explored: list[int] = []
    for v, x in cands:
        if v != vmin:
            continue
        uf = orbit_partition([e])
        if uf is not None and any(uf.find(x) == uf.find(x2) for x2 in explored):
            continue
        ncmp = _cmp_step(0, v, best[0], 1)
        if ncmp is None:
            continue
        undo = []
        assign(x, 1, undo)
        cell_value(x, x, undo)
        row1(2, x, ncmp)
        rollback(undo)
        explored.append(x)

    table, binv = best
    perm = [0] * n
    for label, old in enumerate(binv):
        perm[old] = label
    return FiniteMonoid(n, 0, table, name=m.name), tuple(perm)


def _cmp_step(cmp, v, best_table, c):
    if cmp < 0 or best_table is None:
        return -1
    b = best_table[1][c]
    if v < b:
        return -1
    if v > b:
        return None
    return 0


def canonical_table(m: FiniteMonoid) -> tuple[tuple[int, ...], ...]:
    return canonical_form(m)[0].table


def find_isomorphism(a: FiniteMonoid, b: FiniteMonoid) -> MonoidHom | None:
    if a.size != b.size:
        return None
    ca, pa = canonical_form(a)
    cb, pb = canonical_form(b)
    if ca.table != cb.table:
        return None
    inv_b = [0] * b.size
    for old, new in enumerate(pb):
        inv_b[new] = old
    return MonoidHom(a, b, tuple(inv_b[pa[x]] for x in a.elements))


def are_isomorphic(a: FiniteMonoid, b: FiniteMonoid) -> bool:
    return a.size == b.size and canonical_table(a) == canonical_table(b)


# ---------------------------------------------------------------------------
# enumeration

def _consistent(t, n, i, j) -> bool:
    """Check every associativity triple made fully determined by cell (i, j)."""
    v = t[i][j]
    ti = t[i]
    # (i j) c = i (j c)
    tv, tj = t[v], t[j]
    for c in range(n):
        jc = tj[c]
        if jc < 0:
            continue
        lhs, rhs = tv[c], ti[jc]
        if lhs >= 0 and rhs >= 0 and lhs != rhs:
            return False
    # (a i) j = a (i j)
    for a in range(n):
        ai = t[a][i]
        if ai < 0:
            continue
        lhs, rhs = t[ai][j], t[a][v]
        if lhs >= 0 and rhs >= 0 and lhs != rhs:
            return False
    # (a b) j = a (b j) where a b = i
    for a in range(n):
        ta = t[a]
        for b in range(n):
            if ta[b] != i:
                continue
            bj = t[b][j]
            if bj >= 0:
                r = ta[bj]
                if r >= 0 and r != v:
                    return False
    # i (b c) = (i b) c where b c = j
    for b in range(n):
        tb = t[b]
        ib = ti[b]
        if ib < 0:
            continue
        tib = t[ib]
        for c in range(n):
            if tb[c] != j:
                continue
            r = tib[c]
            if r >= 0 and r != v:
                return False
    return True


def associative_completions(n: int, table, cells: Sequence[tuple[int, int]],
                            domains: dict | None = None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield every associative completion of a partial table.

    ``table`` holds -1 for open cells; ``cells`` lists the open cells in the
    order they are filled; ``domains`` optionally restricts a cell's values.
    Triples are checked as soon as their last cell is assigned.
    """
    t = [list(r) for r in table]
    domains = domains or {}
    ncell = len(cells)

    def rec(idx):
        if idx == ncell:
            yield tuple(tuple(r) for r in t)
            return
        i, j = cells[idx]
        for v in domains.get((i, j), range(n)):
            t[i][j] = v
            if _consistent(t, n, i, j):
                yield from rec(idx + 1)
        t[i][j] = -1

    # fixed cells must already be consistent among themselves
    for i in range(n):
        for j in range(n):
            if t[i][j] >= 0 and not _consistent(t, n, i, j):
                return
    yield from rec(0)


def _identity_frame(n: int):
    t = [[-1] * n for _ in range(n)]
    for x in range(n):
        t[0][x] = x
        t[x][0] = x
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    return t, cells


def _canonical_tables_for_prefix(args) -> set:
    n, first = args
    t, cells = _identity_frame(n)
    out = set()
    doms = {cells[0]: [first]} if cells else {}
    for tab in associative_completions(n, t, cells, doms):
        out.add(canonical_form(FiniteMonoid(n, 0, tab))[0].table)
    return out


def raw_canonical_tables(n: int, jobs: int = 1) -> list[tuple[tuple[int, ...], ...]]:
    """Canonical tables of all monoids of order n, without the size guard."""
    # the result does not depend on jobs, so one cache entry per order
    if n not in _TABLE_CACHE:
        if n == 1:
            _TABLE_CACHE[n] = (((0,),),)
        else:
            work = [(n, v) for v in range(n)]
            found: set = set()
            for part in parallel_map(_canonical_tables_for_prefix, work, jobs):
                found |= part
            _TABLE_CACHE[n] = tuple(sorted(found))
    return list(_TABLE_CACHE[n])


_TABLE_CACHE: dict[int, tuple] = {}


def enumerate_monoids(n: int, jobs: int = 1) -> list[FiniteMonoid]:
    """All monoids of order n up to isomorphism, sorted by canonical table."""
    if n < 1:
        raise ValueError("order must be positive")
    if n > MAX_ENUMERATION_ORDER:
        raise SizeTooLarge(n, MAX_ENUMERATION_ORDER)
    return [FiniteMonoid(n, 0, tab) for tab in raw_canonical_tables(n, jobs)]


def parallel_map(fn, items: list, jobs: int = 1) -> list:
    """Order-preserving map, optionally over a process pool."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
