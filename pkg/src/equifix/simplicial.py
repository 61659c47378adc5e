"""Finite simplicial complexes with group actions, all homology exact.

Complexes are face-closed sets of sorted vertex tuples.  Actions assign a
vertex permutation to every group generator; the full element-to-permutation
map is built by consistent closure, so ill-defined assignments fail loudly.
Homology is computed over Q (fraction-free) or F_p (mod-p elimination); the
induced maps on integral homology mod torsion come from Smith normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import exact
from .bounds import chain_bound
from .errors import (ActionNotGood, EulerZero, NotAChain, NotAnAction,
                     PreconditionViolated)
from .groupcore import (AbelianGroup, PermGroup, Permutation, SubgroupHandle,
                        prime_factors)


class Complex:
    """Finite abstract simplicial complex on vertices 0..n-1."""

    def __init__(self, n_vertices: int, simplices, labels=None, validate: bool = True):
        self.n_vertices = n_vertices
        self.simplices = frozenset(tuple(sorted(s)) for s in simplices)
        self.labels = tuple(labels) if labels is not None else None
        self._by_dim: list[list[tuple[int, ...]]] | None = None
        self._homology = None
        if validate:
            self._validate()

    def _validate(self):
        used = set()
        for s in self.simplices:
            if not s:
                raise ValueError("empty simplex not allowed")
            if len(set(s)) != len(s):
                raise ValueError(f"repeated vertex in simplex {s}")
            if s[0] < 0 or s[-1] >= self.n_vertices:
                raise ValueError(f"vertex out of range in {s}")
            used.update(s)
            if len(s) > 1:
                for face in combinations(s, len(s) - 1):
                    if face not in self.simplices:
                        raise ValueError(f"missing face {face} of {s}")
        if used != set(range(self.n_vertices)):
            raise ValueError("every vertex must appear in some simplex")

    @classmethod
    def from_facets(cls, facets, n_vertices: int | None = None) -> "Complex":
        simplices = set()
        for f in facets:
            f = tuple(sorted(f))
            for k in range(1, len(f) + 1):
                simplices.update(combinations(f, k))
        if n_vertices is None:
            n_vertices = max((s[-1] for s in simplices), default=-1) + 1
        return cls(n_vertices, simplices)

    def by_dim(self) -> list[list[tuple[int, ...]]]:
        if self._by_dim is None:
            top = max((len(s) for s in self.simplices), default=0)
            buckets: list[list[tuple[int, ...]]] = [[] for _ in range(top)]
            for s in self.simplices:
                buckets[len(s) - 1].append(s)
            for b in buckets:
                b.sort()
            self._by_dim = buckets
        return self._by_dim

    @property
    def dim(self) -> int:
        return len(self.by_dim()) - 1

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.by_dim())

    def euler_characteristic(self) -> int:
        return sum((-1) ** j * n for j, n in enumerate(self.f_vector()))

    def components(self) -> list[frozenset[int]]:
        """Connected components as vertex sets (via the 1-skeleton)."""
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.simplices:
            if len(s) >= 2:
                a = find(s[0])
                for v in s[1:]:
                    b = find(v)
                    parent[b] = a
        groups: dict[int, set[int]] = {}
        for v in range(self.n_vertices):
            groups.setdefault(find(v), set()).add(v)
        return sorted((frozenset(g) for g in groups.values()), key=sorted)

    def component_dims(self) -> list[int]:
        comps = self.components()
        dims = [0] * len(comps)
        where = {}
        for i, comp in enumerate(comps):
            for v in comp:
                where[v] = i
        for s in self.simplices:
            i = where[s[0]]
            dims[i] = max(dims[i], len(s) - 1)
        return dims

    def census(self, m: int) -> tuple[int, ...]:
        """Component count per dimension, ordered (d_m, ..., d_0)."""
        if self.simplices and self.dim > m:
            raise PreconditionViolated(f"complex dimension {self.dim} exceeds {m}")
        counts = [0] * (m + 1)
        for d in self.component_dims():
            counts[d] += 1
        return tuple(reversed(counts))

    def subcomplex_on(self, vertices) -> "Complex":
        """Full subcomplex on a vertex subset, compactly relabeled.

        The original vertex ids are kept in `labels`.
        """
        vset = set(vertices)
        keep = [s for s in self.simplices if all(v in vset for v in s)]
        used = sorted({v for s in keep for v in s})
        relabel = {v: i for i, v in enumerate(used)}
        return Complex(len(used), [tuple(relabel[v] for v in s) for s in keep],
                       labels=used, validate=False)

    def is_subcomplex_of(self, other: "Complex") -> bool:
        return self.simplices <= other.simplices

    def to_json(self) -> dict:
        facets = sorted(s for s in self.simplices
                        if not any(set(s) < set(t) for t in self.simplices))
        return {"vertices": self.n_vertices, "facets": [list(s) for s in facets]}

    @classmethod
    def from_json(cls, data: dict) -> "Complex":
        return cls.from_facets(data["facets"], data["vertices"])

    def __repr__(self):
        return f"Complex(n={self.n_vertices}, f={self.f_vector()})"


@dataclass
class BettiTable:
    """Betti numbers over one coefficient field."""
    field: str            # "Q" or "Fp"
    p: int | None
    values: tuple[int, ...]

    def total(self) -> int:
        return sum(self.values)

    def euler(self) -> int:
        return sum((-1) ** j * b for j, b in enumerate(self.values))

    def to_json(self) -> dict:
        return {"field": self.field, "p": self.p, "values": list(self.values)}


def _boundary_matrix(complex_: Complex, j: int) -> list[list[int]]:
    """Matrix of the boundary map C_j -> C_(j-1); rows index (j-1)-simplices."""
    by = complex_.by_dim()
    rows = by[j - 1]
    cols = by[j]
    rindex = {s: i for i, s in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for c, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            mat[rindex[face]][c] += (-1) ** i
    return mat


def betti(complex_: Complex, coeff="Q") -> BettiTable:
    """Betti numbers over Q (coeff="Q") or F_p (coeff=p, a prime)."""
    by = complex_.by_dim()
    if not by:
        return BettiTable("Q" if coeff == "Q" else "Fp",
                          None if coeff == "Q" else int(coeff), ())
    dims = [len(b) for b in by]
    if coeff == "Q":
        rank = exact.rank_rational
        fld, p = "Q", None
    else:
        p = int(coeff)
        rank = lambda mat: exact.rank_mod_p(mat, p)
        fld = "Fp"
    ranks = [0] * (len(by) + 1)
    for j in range(1, len(by)):
        ranks[j] = rank(_boundary_matrix(complex_, j))
    values = tuple(dims[j] - ranks[j] - ranks[j + 1] for j in range(len(by)))
    return BettiTable(fld, p, values)


class SimplicialAction:
    """A finite group acting simplicially: one vertex permutation per generator."""

    def __init__(self, complex_: Complex, group, gen_images, validate: bool = True):
        self.complex = complex_
        self.group = group
        imgs = []
        for m in gen_images:
            imgs.append(m if isinstance(m, Permutation) else Permutation(m))
        self.gen_images = imgs
        self._element_maps: dict | None = None
        if validate:
            self._validate()

    def _generators(self):
        if isinstance(self.group, AbelianGroup):
            return self.group.canonical_generators()
        return self.group.generators

    def _validate(self):
        n = self.complex.n_vertices
        gens = self._generators()
        if len(self.gen_images) != len(gens):
            raise NotAnAction("one vertex map per generator required")
        for m in self.gen_images:
            if m.degree != n:
                raise NotAnAction("vertex map degree mismatch")
            for s in self.complex.simplices:
                img = tuple(sorted(m(v) for v in s))
                if img not in self.complex.simplices:
                    raise NotAnAction(f"simplex {s} maps outside the complex")
        self.element_maps()  # forces the consistency closure

    def element_maps(self) -> dict:
        """Map each group element to its vertex permutation (cached).

        Built by closing the generator assignment; any relation violated by
        the vertex maps surfaces as an inconsistent pair.
        """
        if self._element_maps is not None:
            return self._element_maps
        group = self.group
        gens = self._generators()
        n = self.complex.n_vertices
        if isinstance(group, AbelianGroup):
            out = {}
            for m, q in zip(self.gen_images, group.factors):
                power = m
                for _ in range(q - 1):
                    power = m * power
                if not power.is_identity():
                    raise NotAnAction("vertex map order does not divide factor order")
            for i, a in enumerate(self.gen_images):
                for b in self.gen_images[i + 1:]:
                    if a * b != b * a:
                        raise NotAnAction("vertex maps must commute")
            for el in group.elements():
                m = Permutation.identity(n)
                for exp, g in zip(el, self.gen_images):
                    for _ in range(exp):
                        m = g * m
                out[el] = m
            self._element_maps = out
            return out
        ident = group.identity
        out = {ident: Permutation.identity(n)}
        frontier = [ident]
        pairs = list(zip(group.generators, self.gen_images))
        while frontier:
            new = []
            for a in frontier:
                ma = out[a]
                for g, mg in pairs:
                    x = group.op(a, g)
                    mx = ma * mg
                    if x in out:
                        if out[x] != mx:
                            raise NotAnAction("vertex maps violate a group relation")
                    else:
                        out[x] = mx
                        new.append(x)
            frontier = new
        self._element_maps = out
        return out

    def vertex_map(self, element) -> Permutation:
        return self.element_maps()[element]

    def to_json(self) -> dict:
        return {"kind": "complex-action",
                "complex": self.complex.to_json(),
                "group": self.group.to_json(),
                "maps": {f"g{i}": list(m.images)
                         for i, m in enumerate(self.gen_images)}}

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialAction":
        from .groupcore import group_from_json
        comp = Complex.from_json(data["complex"])
        group = group_from_json(data["group"])
        maps = data["maps"]
        imgs = [maps[f"g{i}"] for i in range(len(maps))]
        return cls(comp, group, imgs)


def is_good(action: SimplicialAction) -> bool:
    """Whether every setwise-stabilized simplex is fixed pointwise."""
    for m in action.element_maps().values():
        if m.is_identity():
            continue
        for s in action.complex.simplices:
            img = tuple(sorted(m(v) for v in s))
            if img == s and any(m(v) != v for v in s):
                return False
    return True


def barycentric_subdivision(complex_: Complex) -> Complex:
    """First barycentric subdivision; sd-vertex i is original simplex i
    (canonical order), recorded in `parent_simplices`."""
    order = sorted(complex_.simplices, key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(order)}
    chains: set[tuple[int, ...]] = set()

    def extend(chain_tail: tuple[int, ...], top: tuple[int, ...]):
        chains.add(chain_tail)
        for k in range(1, len(top)):
            for face in combinations(top, k):
                if index[face] < chain_tail[0]:
                    extend((index[face],) + chain_tail, face)

    for s in order:
        extend((index[s],), s)
    sd = Complex(len(order), chains, validate=False)
    sd.parent_simplices = tuple(order)
    return sd


def subdivided_action(action: SimplicialAction) -> SimplicialAction:
    """The induced action on the barycentric subdivision (always good)."""
    sd = barycentric_subdivision(action.complex)
    order = sd.parent_simplices
    index = {s: i for i, s in enumerate(order)}
    imgs = []
    for m in action.gen_images:
        images = [index[tuple(sorted(m(v) for v in s))] for s in order]
        imgs.append(Permutation(images))
    return SimplicialAction(sd, action.group, imgs, validate=False)


def ensure_good(action: SimplicialAction) -> tuple[SimplicialAction, bool]:
    """Return a good version of the action, subdividing once if needed."""
    if is_good(action):
        return action, False
    sub = subdivided_action(action)
    if not is_good(sub):
        raise ActionNotGood("subdivided action still not good (unreachable)")
    return sub, True


def fixed_subcomplex(action: SimplicialAction, members=None) -> Complex:
    """Subcomplex of simplices pointwise fixed by every listed element.

    `members` defaults to the whole group; it may be a SubgroupHandle or any
    iterable of group elements.
    """
    maps = action.element_maps()
    if members is None:
        use = list(maps.values())
    elif isinstance(members, SubgroupHandle):
        use = [maps[x] for x in members]
    else:
        use = [maps[x] for x in members]
    n = action.complex.n_vertices
    fixed = [v for v in range(n) if all(m(v) == v for m in use)]
    return action.complex.subcomplex_on(fixed)


# ---------------------------------------------------------------------------
# integral homology (free part) and induced maps
# ---------------------------------------------------------------------------

class _HomologyData:
    """Per-degree free homology basis of a complex, built once via SNF."""

    def __init__(self, complex_: Complex):
        self.complex = complex_
        by = complex_.by_dim()
        self.degrees = len(by)
        self.kernel: list[list[list[int]]] = []   # per degree: basis vectors
        self.uinv_cols: list[list[list[int]]] = []  # basis reps in kernel coords
        self.u: list[list[list[int]]] = []
        self.rank_w: list[int] = []
        self.betti: list[int] = []
        for j in range(self.degrees):
            nj = len(by[j])
            if j == 0:
                kb = [[1 if i == t else 0 for i in range(nj)] for t in range(nj)]
            else:
                kb = exact.kernel_basis(_boundary_matrix(complex_, j), nj)
            z = len(kb)
            kmat = [[kb[t][i] for t in range(z)] for i in range(nj)]
            if j + 1 < self.degrees and z > 0:
                bnd = _boundary_matrix(complex_, j + 1)
                w = exact.solve_many_integer(kmat, bnd)
                diag, u, _v = exact.smith_normal_form(w)
                r = sum(1 for x in diag if x)
                uinv = exact.invert_unimodular(u)
            else:
                r = 0
                u = exact.identity_matrix(z)
                uinv = exact.identity_matrix(z)
            self.kernel.append(kb)
            self.u.append(u)
            self.rank_w.append(r)
            self.uinv_cols.append([[uinv[i][c] for i in range(z)]
                                   for c in range(r, z)])
            self.betti.append(z - r)
        self._kmat = [
            [[self.kernel[j][t][i] for t in range(len(self.kernel[j]))]
             for i in range(len(by[j]))]
            for j in range(self.degrees)
        ]
        self._basis_cache: dict[int, list[list[int]]] = {}

    def basis_chains(self, j: int) -> list[list[int]]:
        """Chain vectors representing the free homology basis in degree j."""
        if j in self._basis_cache:
            return self._basis_cache[j]
        nj = len(self.complex.by_dim()[j])
        out = []
        for coords in self.uinv_cols[j]:
            vec = [0] * nj
            for t, c in enumerate(coords):
                if c:
                    kb = self.kernel[j][t]
                    for i in range(nj):
                        vec[i] += c * kb[i]
            out.append(vec)
        self._basis_cache[j] = out
        return out

    def project(self, j: int, chains: list[list[int]]) -> list[list[int]]:
        """Free-homology coordinates of cycle chain vectors (columns in/out)."""
        z = len(self.kernel[j])
        if not chains:
            return []
        rhs = [[chains[c][i] for c in range(len(chains))]
               for i in range(len(chains[0]))]
        x = exact.solve_many_integer(self._kmat[j], rhs) if z else []
        # y = U x, keep rows beyond rank_w
        cols = len(chains)
        u = self.u[j]
        out = []
        for c in range(cols):
            xc = [x[t][c] for t in range(z)]
            yc = [sum(u[i][t] * xc[t] for t in range(z)) for i in range(z)]
            out.append(yc[self.rank_w[j]:])
        return out


def _homology_data(complex_: Complex) -> _HomologyData:
    if complex_._homology is None:
        complex_._homology = _HomologyData(complex_)
    return complex_._homology


def _chain_image(complex_: Complex, vmap: Permutation, j: int,
                 vec: list[int]) -> list[int]:
    """Push a degree-j chain vector through a simplicial automorphism."""
    by = complex_.by_dim()
    index = {s: i for i, s in enumerate(by[j])}
    out = [0] * len(by[j])
    for i, s in enumerate(by[j]):
        c = vec[i]
        if not c:
            continue
        imgs = [vmap(v) for v in s]
        order = sorted(range(len(imgs)), key=lambda t: imgs[t])
        sign = _perm_sign(order)
        out[index[tuple(sorted(imgs))]] += sign * c
    return out


def _perm_sign(order: list[int]) -> int:
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def homology_matrices(action: SimplicialAction, element) -> list[list[list[int]]]:
    """Integer matrices of the element's action on free H_j, one per degree."""
    data = _homology_data(action.complex)
    vmap = action.vertex_map(element)
    out = []
    for j in range(data.degrees):
        basis = data.basis_chains(j)
        images = [_chain_image(action.complex, vmap, j, b) for b in basis]
        coords = data.project(j, images)
        # columns are images of basis vectors
        bj = data.betti[j]
        mat = [[coords[c][r] for c in range(bj)] for r in range(bj)]
        out.append(mat)
    return out


@dataclass
class HomologyActionReport:
    generator_matrices: list[list[list[list[int]]]]
    kernel: SubgroupHandle
    betti_q: tuple[int, ...]
    b_squared: int
    index: int
    bound: int
    passed: bool

    def to_json(self) -> dict:
        return {"betti_q": list(self.betti_q), "b_squared": self.b_squared,
                "kernel_order": self.kernel.order, "index": self.index,
                "bound": self.bound, "passed": self.passed}


def homology_action(action: SimplicialAction) -> HomologyActionReport:
    """Action on free integral homology, and the mod-3 congruence kernel.

    The kernel collects elements whose matrices are identity mod 3 in every
    degree; its index is checked against 3^(sum of squared Betti numbers).
    """
    data = _homology_data(action.complex)
    gen_mats = [homology_matrices(action, g)
                for g in (action.group.canonical_generators()
                          if isinstance(action.group, AbelianGroup)
                          else action.group.generators)]
    members = set()
    idents = [exact.identity_matrix(b) for b in data.betti]
    for el in action.element_maps():
        mats = homology_matrices(action, el)
        if all(exact.mat_mod(m, 3) == exact.mat_mod(i, 3)
               for m, i in zip(mats, idents)):
            members.add(el)
    kernel = SubgroupHandle(action.group, members)
    total = len(action.element_maps())
    index = total // kernel.order
    b2 = sum(b * b for b in data.betti)
    bound = 3 ** b2
    return HomologyActionReport(gen_mats, kernel, tuple(data.betti), b2,
                                index, bound, index <= bound)


@dataclass
class LefschetzReport:
    value: int
    chain_trace: int
    homology_trace: int
    chi_fixed: int
    subdivided: bool


def lefschetz_number(action: SimplicialAction, element) -> LefschetzReport:
    """Lefschetz number three ways, equality asserted.

    Alternating fixed-simplex count (chain trace), alternating trace on
    rational homology, and the Euler characteristic of the fixed subcomplex;
    the action is subdivided once if it is not good.
    """
    good, subdivided = ensure_good(action)
    vmap = good.vertex_map(element)
    chain_trace = 0
    for s in good.complex.simplices:
        if all(vmap(v) == v for v in s):
            chain_trace += (-1) ** (len(s) - 1)
    mats = homology_matrices(good, element)
    homology_trace = sum((-1) ** j * sum(m[i][i] for i in range(len(m)))
                         for j, m in enumerate(mats))
    fixed = fixed_subcomplex(good, [element])
    chi_fixed = fixed.euler_characteristic()
    if not (chain_trace == homology_trace == chi_fixed):
        raise AssertionError(
            f"Lefschetz mismatch: chain {chain_trace}, homology "
            f"{homology_trace}, fixed chi {chi_fixed}")
    return LefschetzReport(chain_trace, chain_trace, homology_trace,
                           chi_fixed, subdivided)


@dataclass
class SmallOrbitReport:
    simplex: tuple[int, ...]
    orbit_size: int
    subdivided: bool
    complex: Complex


def small_orbit_simplex(action: SimplicialAction, p: int) -> SmallOrbitReport:
    """First simplex (canonical order) whose orbit size is at most p^r, where
    p^r is the exact p-power in the Euler characteristic.

    Requires a p-group action and nonzero Euler characteristic; the stabilizer
    of the returned simplex fixes it pointwise (the action is made good
    first).
    """
    total = len(action.element_maps())
    tt = total
    while tt % p == 0:
        tt //= p
    if tt != 1:
        raise PreconditionViolated(f"group order {total} is not a power of {p}")
    chi = action.complex.euler_characteristic()
    if chi == 0:
        raise EulerZero("Euler characteristic vanishes")
    r = 0
    c = abs(chi)
    while c % p == 0:
        c //= p
        r += 1
    good, subdivided = ensure_good(action)
    maps = list(good.element_maps().values())
    for s in sorted(good.complex.simplices, key=lambda s: (len(s), s)):
        orbit = {tuple(sorted(m(v) for v in s)) for m in maps}
        if len(orbit) <= p ** r:
            for m in maps:
                if tuple(sorted(m(v) for v in s)) == s:
                    assert all(m(v) == v for v in s)
            return SmallOrbitReport(s, len(orbit), subdivided, good.complex)
    raise AssertionError("orbit counting argument failed (unreachable)")


def census_chain_check(chain: list[Complex], m: int, k: int) -> bool:
    """Validate a strictly increasing chain of subcomplexes by census.

    Checks: nesting (exception if violated), every member has at most k
    components and dimension at most m, censuses strictly increase
    lexicographically, and the chain is no longer than C(m+k+1, m+1).
    """
    for a, b in zip(chain, chain[1:]):
        if not a.is_subcomplex_of(b):
            raise NotAChain("entries must be nested subcomplexes")
    censuses = []
    for c in chain:
        if c.simplices and c.dim > m:
            return False
        if len(c.components()) > k:
            return False
        censuses.append(c.census(m))
    for a, b in zip(censuses, censuses[1:]):
        if not a < b:
            return False
    return len(chain) <= chain_bound(m, k)
