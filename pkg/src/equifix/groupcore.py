"""Finite group arithmetic.

Two concrete carriers: permutation groups on {0..n-1} given by generators, and
abelian groups in primary decomposition (a list of prime-power cyclic orders,
elements are exponent tuples).  On top of those: deterministic element
enumeration with explicit caps, exhaustive subgroup enumeration, Sylow
subgroups, solvability-class classification with witnesses, minimal abelian
subgroup index, characteristic cores, power cores, and the commuting-core
construction for coprime automorphism actions.

Conventions: permutation composition (a * b) applies b first; elements sort by
their tuple form, which fixes every "first found" rule in this module.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product as iproduct

from .errors import CapExceeded, InvalidHomomorphism

DEFAULT_ELEMENT_CAP = 10_000
DEFAULT_CANDIDATE_CAP = 1_000_000


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> dict[int, int]:
    """Prime factorization as {prime: multiplicity}."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _prime_power_base(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise ValueError."""
    fac = prime_factors(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, e), = fac.items()
    return p, e


class Permutation:
    """Permutation of {0..n-1}, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images)-1}: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        images = list(range(n))
        for cyc in cycles:
            for i, v in enumerate(cyc):
                images[v] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (a * b)(i) = a(b(i)): apply b first
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def order(self) -> int:
        n = 1
        seen = [False] * len(self.images)
        for i in range(len(self.images)):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            n = n * length // math.gcd(n, length)
        return n

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def _element_power(group, x, k: int):
    """x composed with itself k times in the carrier group."""
    if isinstance(group, AbelianGroup):
        return group.scale(k, x)
    out = group.identity
    base = x
    while k:
        if k & 1:
            out = group.op(out, base)
        base = group.op(base, base)
        k >>= 1
    return out


def _mulclose(gens, op, identity, cap):
    """Breadth-first closure of a generating set; raises CapExceeded."""
    els = {identity}
    frontier = [identity]
    gens = list(gens)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                x = op(a, g)
                if x not in els:
                    els.add(x)
                    if len(els) > cap:
                        raise CapExceeded(f"element closure exceeded cap {cap}")
                    new.append(x)
        frontier = new
    return els


class PermGroup:
    """Permutation group given by generators on {0..degree-1}."""

    def __init__(self, degree: int, generators):
        self.degree = degree
        self.generators = [g if isinstance(g, Permutation) else Permutation(g)
                           for g in generators]
        for g in self.generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        self._elements: tuple[Permutation, ...] | None = None

    # -- uniform group carrier interface -------------------------------
    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def op(self, a: Permutation, b: Permutation) -> Permutation:
        return a * b

    def inv(self, a: Permutation) -> Permutation:
        return a.inverse()

    def element_order(self, a: Permutation) -> int:
        return a.order()

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> tuple[Permutation, ...]:
        if self._elements is None:
            els = _mulclose(self.generators, self.op, self.identity, cap)
            self._elements = tuple(sorted(els))
        return self._elements

    def order(self, cap: int = DEFAULT_ELEMENT_CAP) -> int:
        return len(self.elements(cap))

    def key(self):
        return ("perm", self.degree, tuple(sorted(g.images for g in self.generators)))

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {"type": "perm", "degree": self.degree,
                "generators": [list(g.images) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "PermGroup":
        return cls(data["degree"], data["generators"])

    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        if n <= 1:
            return cls(max(n, 1), [])
        gens = [Permutation.from_cycles(n, [tuple(range(n))]),
                Permutation.from_cycles(n, [(0, 1)])]
        return cls(n, gens)

    @classmethod
    def cyclic(cls, n: int) -> "PermGroup":
        return cls(n, [Permutation.from_cycles(n, [tuple(range(n))])])

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, gens={len(self.generators)})"


class AbelianGroup:
    """Finite abelian group as a product of prime-power cyclic factors.

    Elements are exponent tuples; the i-th entry lives mod factors[i].  The
    canonical element order is lexicographic on exponent tuples.
    """

    def __init__(self, factors):
        factors = tuple(int(q) for q in factors)
        decomposed = []
        for q in factors:
            if q < 2:
                raise ValueError("factors must be >= 2")
            decomposed.append(_prime_power_base(q))
        order = sorted(range(len(factors)), key=lambda i: (decomposed[i][0], decomposed[i][1]))
        self.factors = tuple(factors[i] for i in order)
        self._pe = tuple(decomposed[i] for i in order)
        self._elements: tuple[tuple[int, ...], ...] | None = None

    # -- uniform group carrier interface -------------------------------
    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)

    def op(self, a, b):
        return tuple((x + y) % q for x, y, q in zip(a, b, self.factors))

    def inv(self, a):
        return tuple((-x) % q for x, q in zip(a, self.factors))

    def scale(self, k: int, a):
        return tuple((k * x) % q for x, q in zip(a, self.factors))

    def element_order(self, a) -> int:
        n = 1
        for x, q in zip(a, self.factors):
            o = q // math.gcd(x, q)
            n = n * o // math.gcd(n, o)
        return n

    def order(self, cap: int | None = None) -> int:
        return math.prod(self.factors) if self.factors else 1

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> tuple[tuple[int, ...], ...]:
        if self._elements is None:
            if self.order() > cap:
                raise CapExceeded(f"group order {self.order()} exceeds cap {cap}")
            self._elements = tuple(iproduct(*[range(q) for q in self.factors]))
        return self._elements

    @property
    def generators(self):
        return self.canonical_generators()

    def canonical_generators(self) -> list[tuple[int, ...]]:
        gens = []
        for i in range(len(self.factors)):
            e = [0] * len(self.factors)
            e[i] = 1
            gens.append(tuple(e))
        return gens

    def key(self):
        return ("abelian", self.factors)

    # -- primary decomposition ------------------------------------------
    def primes(self) -> list[int]:
        return sorted({p for p, _ in self._pe})

    def factor_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self._pe)

    def p_part_indices(self, p: int) -> list[int]:
        return [i for i, (q, _) in enumerate(self._pe) if q == p]

    def p_part_group(self, p: int) -> "AbelianGroup":
        """The p-primary factor as a standalone group (may be trivial)."""
        return AbelianGroup([self.factors[i] for i in self.p_part_indices(p)])

    def embed_p_part(self, p: int, x) -> tuple[int, ...]:
        idx = self.p_part_indices(p)
        out = [0] * len(self.factors)
        for i, v in zip(idx, x):
            out[i] = v
        return tuple(out)

    def project_p_part(self, p: int, a) -> tuple[int, ...]:
        return tuple(a[i] for i in self.p_part_indices(p))

    def p_part_subgroup(self, p: int) -> "SubgroupHandle":
        part = self.p_part_group(p)
        members = frozenset(self.embed_p_part(p, x) for x in part.elements())
        return SubgroupHandle(self, members)

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {"type": "abelian", "factors": list(self.factors)}

    @classmethod
    def from_json(cls, data: dict) -> "AbelianGroup":
        return cls(data["factors"])

    def __repr__(self):
        return f"AbelianGroup({list(self.factors)})"


def group_from_json(data: dict):
    kind = data.get("type")
    if kind == "perm":
        return PermGroup.from_json(data)
    if kind == "abelian":
        return AbelianGroup.from_json(data)
    raise ValueError(f"unknown group type {kind!r}")


class SubgroupHandle:
    """A subgroup of a carrier group, held as an explicit member set."""

    def __init__(self, parent, members):
        self.parent = parent
        self.members = frozenset(members)
        self._sorted: tuple | None = None

    @classmethod
    def from_generators(cls, parent, gens, cap: int = DEFAULT_ELEMENT_CAP) -> "SubgroupHandle":
        els = _mulclose(list(gens), parent.op, parent.identity, cap)
        return cls(parent, els)

    @classmethod
    def trivial(cls, parent) -> "SubgroupHandle":
        return cls(parent, [parent.identity])

    @classmethod
    def whole(cls, parent, cap: int = DEFAULT_ELEMENT_CAP) -> "SubgroupHandle":
        return cls(parent, parent.elements(cap))

    @property
    def order(self) -> int:
        return len(self.members)

    def index(self, cap: int = DEFAULT_ELEMENT_CAP) -> int:
        total = self.parent.order(cap) if isinstance(self.parent, PermGroup) else self.parent.order()
        assert total % self.order == 0
        return total // self.order

    def contains(self, x) -> bool:
        return x in self.members

    def sorted_members(self) -> tuple:
        if self._sorted is None:
            self._sorted = tuple(sorted(self.members))
        return self._sorted

    def __iter__(self):
        return iter(self.sorted_members())

    def is_abelian(self) -> bool:
        ms = self.sorted_members()
        op = self.parent.op
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                if op(a, b) != op(b, a):
                    return False
        return True

    def is_subset_of(self, other: "SubgroupHandle") -> bool:
        return self.members <= other.members

    def intersect(self, other: "SubgroupHandle") -> "SubgroupHandle":
        return SubgroupHandle(self.parent, self.members & other.members)

    def is_normal(self, ambient_generators=None) -> bool:
        """Normality in the parent (conjugation by parent generators)."""
        gens = ambient_generators
        if gens is None:
            gens = self.parent.generators
        op, inv = self.parent.op, self.parent.inv
        for g in gens:
            gi = inv(g)
            for h in self.members:
                if op(op(g, h), gi) not in self.members:
                    return False
        return True

    def min_generator_count(self, limit: int = 5) -> int:
        """Least k with a k-element generating set.

        Abelian subgroups use the exact rank formula (max over primes of the
        p-torsion rank); otherwise brute force over member combinations.
        """
        if self.order == 1:
            return 0
        if self.is_abelian():
            best = 1
            for p in prime_factors(self.order):
                tors = sum(1 for x in self.members
                           if _element_power(self.parent, x, p) == self.parent.identity)
                r = 0
                while p ** (r + 1) <= tors:
                    r += 1
                best = max(best, r)
            return best
        ms = [x for x in self.sorted_members() if x != self.parent.identity]
        for k in range(1, limit + 1):
            for combo in combinations(ms, k):
                closed = _mulclose(combo, self.parent.op, self.parent.identity,
                                   self.order)
                if len(closed) == self.order:
                    return k
        raise CapExceeded(f"no generating set of size <= {limit} found")

    def __eq__(self, other):
        return (isinstance(other, SubgroupHandle)
                and self.parent.key() == other.parent.key()
                and self.members == other.members)

    def __hash__(self):
        return hash((self.parent.key(), self.members))

    def __repr__(self):
        return f"SubgroupHandle(order={self.order})"


def enumerate_elements(group, cap: int = DEFAULT_ELEMENT_CAP):
    """Deterministically ordered element tuple of the carrier group."""
    return tuple(sorted(group.elements(cap)))


def subgroups(group, cap: int = DEFAULT_CANDIDATE_CAP,
              element_cap: int = DEFAULT_ELEMENT_CAP,
              within: "SubgroupHandle | None" = None) -> list[SubgroupHandle]:
    """All subgroups, by iterated one-element extensions of known subgroups.

    Every subgroup <g1..gk> arises by extending <g1..g(k-1)>, so the walk is
    exhaustive.  Output is sorted by (order, member list); `cap` bounds the
    number of closure candidates examined.  With `within`, only subgroups of
    that handle are produced.
    """
    if within is not None:
        els = within.sorted_members()
    else:
        els = enumerate_elements(group, element_cap)
    op, ident = group.op, group.identity
    triv = frozenset({ident})
    seen = {triv}
    frontier = [triv]
    examined = 0
    while frontier:
        new = []
        for members in frontier:
            for x in els:
                if x in members:
                    continue
                examined += 1
                if examined > cap:
                    raise CapExceeded(f"subgroup candidate cap {cap} exceeded")
                closed = frozenset(_mulclose(list(members) + [x], op, ident,
                                             len(els)))
                if closed not in seen:
                    seen.add(closed)
                    new.append(closed)
        frontier = new
    handles = [SubgroupHandle(group, m) for m in seen]
    handles.sort(key=lambda h: (h.order, h.sorted_members()))
    return handles


def sylow(group, p: int, element_cap: int = DEFAULT_ELEMENT_CAP) -> SubgroupHandle:
    """A Sylow p-subgroup, grown greedily (deterministic first-found).

    A p-subgroup that is not Sylow extends inside its normalizer, so greedy
    extension by p-power-order elements always reaches full Sylow order.
    """
    els = enumerate_elements(group, element_cap)
    total = len(els)
    target = 1
    while total % (target * p) == 0:
        target *= p
    current = frozenset({group.identity})
    size = 1
    while size < target:
        for x in els:
            if x in current:
                continue
            # x must itself have p-power order
            oo = group.element_order(x)
            while oo % p == 0:
                oo //= p
            if oo != 1:
                continue
            closed = _mulclose(list(current) + [x], group.op, group.identity, total)
            n = len(closed)
            np_ = n
            while np_ % p == 0:
                np_ //= p
            if np_ == 1 and n > size:
                current = frozenset(closed)
                size = n
                break
        else:
            raise AssertionError("Sylow growth stalled (unreachable)")
    return SubgroupHandle(group, current)


@dataclass
class Classification:
    """Membership of a group in the nested classes with witnesses.

    is_p: prime-power order.  is_t: order p^a q^b with a normal Sylow subgroup
    Q and complement Sylow P (trivial complement allowed).  is_a: additionally
    both witnesses abelian.
    """
    is_p: bool
    is_t: bool
    is_a: bool
    p: int | None = None
    q: int | None = None
    sylow_complement: SubgroupHandle | None = None
    normal_sylow: SubgroupHandle | None = None


def classify(group, element_cap: int = DEFAULT_ELEMENT_CAP) -> Classification:
    els = enumerate_elements(group, element_cap)
    n = len(els)
    fac = prime_factors(n)
    primes = sorted(fac)
    if n == 1:
        triv = SubgroupHandle(group, els)
        return Classification(True, True, True, None, None, triv, triv)
    if len(primes) == 1:
        p = primes[0]
        whole = SubgroupHandle(group, els)
        triv = SubgroupHandle.trivial(group)
        return Classification(True, True, True, None, p, triv, whole)
    if len(primes) > 2:
        return Classification(False, False, False)
    gens = getattr(group, "generators", None) or list(els)
    for q in primes:
        p = next(r for r in primes if r != q)
        syl_q = sylow(group, q, element_cap)
        if syl_q.is_normal(gens):
            syl_p = sylow(group, p, element_cap)
            is_a = syl_p.is_abelian() and syl_q.is_abelian()
            return Classification(False, True, is_a, p, q, syl_p, syl_q)
    return Classification(False, False, False)


@dataclass
class AbelianIndexReport:
    index: int
    witness: SubgroupHandle
    generator_count: int


def minimal_abelian_index(group, cap: int = DEFAULT_CANDIDATE_CAP,
                          element_cap: int = DEFAULT_ELEMENT_CAP) -> AbelianIndexReport:
    """Least index of an abelian subgroup, with a witness.

    Witness is the first subgroup (in canonical order) attaining the minimum;
    generator_count is its least generating-set size.
    """
    best = None
    for h in subgroups(group, cap, element_cap):
        if h.is_abelian() and (best is None or h.order > best.order):
            best = h
    assert best is not None  # the trivial subgroup is abelian
    total = len(enumerate_elements(group, element_cap))
    return AbelianIndexReport(total // best.order, best,
                              best.min_generator_count())


@dataclass
class JordanReport:
    constant: int
    generator_bound: int
    entries: list[dict]
    passed: bool


def jordan_verify(family, constant: int, generator_bound: int,
                  cap: int = DEFAULT_CANDIDATE_CAP,
                  element_cap: int = DEFAULT_ELEMENT_CAP) -> JordanReport:
    """Check every family member has an abelian subgroup of index <= constant
    generated by <= generator_bound elements.  Cap failures are recorded per
    member, not raised."""
    entries = []
    ok = True
    for g in family:
        name = repr(g)
        try:
            rep = minimal_abelian_index(g, cap, element_cap)
        except CapExceeded as exc:
            entries.append({"group": name, "error": str(exc), "ok": False})
            ok = False
            continue
        good = rep.index <= constant and rep.generator_count <= generator_bound
        entries.append({"group": name, "index": rep.index,
                        "generators": rep.generator_count, "ok": good})
        ok = ok and good
    return JordanReport(constant, generator_bound, entries, ok)


# ---------------------------------------------------------------------------
# abelian-only constructions
# ---------------------------------------------------------------------------

class AutomorphismMap:
    """Automorphism of an AbelianGroup given by canonical-generator images."""

    def __init__(self, group: AbelianGroup, images, check: bool = True):
        self.group = group
        self.images = tuple(tuple(x) for x in images)
        if check:
            self._validate()

    def _validate(self):
        g = self.group
        if len(self.images) != len(g.factors):
            raise InvalidHomomorphism("one image per canonical generator required")
        for q, img in zip(g.factors, self.images):
            if g.scale(q, img) != g.identity:
                raise InvalidHomomorphism(f"image {img} not annihilated by {q}")
        closed = _mulclose(self.images, g.op, g.identity, g.order())
        if len(closed) != g.order():
            raise InvalidHomomorphism("images do not generate; not bijective")

    @classmethod
    def identity_map(cls, group: AbelianGroup) -> "AutomorphismMap":
        return cls(group, group.canonical_generators(), check=False)

    def apply(self, a) -> tuple[int, ...]:
        g = self.group
        out = g.identity
        for exp, img in zip(a, self.images):
            if exp:
                out = g.op(out, g.scale(exp, img))
        return out

    def compose(self, other: "AutomorphismMap") -> "AutomorphismMap":
        # (self . other): apply other first
        return AutomorphismMap(self.group,
                               [self.apply(img) for img in other.images],
                               check=False)

    def power(self, k: int) -> "AutomorphismMap":
        out = AutomorphismMap.identity_map(self.group)
        base = self
        while k:
            if k & 1:
                out = out.compose(base)
            base = base.compose(base)
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return self.images == tuple(self.group.canonical_generators())

    def order(self) -> int:
        n = 1
        cur = self
        while not cur.is_identity():
            cur = cur.compose(self)
            n += 1
            if n > self.group.order() ** len(self.group.factors):
                raise AssertionError("automorphism order runaway")
        return n

    def __eq__(self, other):
        return (isinstance(other, AutomorphismMap)
                and self.group.key() == other.group.key()
                and self.images == other.images)

    def __hash__(self):
        return hash((self.group.key(), self.images))

    def __repr__(self):
        return f"AutomorphismMap({self.images})"


def automorphisms(group: AbelianGroup, cap: int = DEFAULT_CANDIDATE_CAP) -> list[AutomorphismMap]:
    """Brute-force Aut enumeration over generator-image tuples (capped)."""
    els = group.elements()
    candidates = []
    for q in group.factors:
        cands = [x for x in els if group.element_order(x) == q]
        candidates.append(cands)
    count = math.prod(len(c) for c in candidates) if candidates else 1
    if count > cap:
        raise CapExceeded(f"{count} candidate tuples exceed cap {cap}")
    out = []
    order = group.order()
    for images in iproduct(*candidates):
        closed = _mulclose(images, group.op, group.identity, order)
        if len(closed) == order:
            out.append(AutomorphismMap(group, images, check=False))
    return out


def _p_height(group: AbelianGroup, p: int, a) -> int:
    """Largest k with a in p^k * G (capped at the p-exponent of G)."""
    emax = 0
    for q, (pp, e) in zip(group.factors, group._pe):
        if pp == p:
            emax = max(emax, e)
    h = 0
    while h < emax:
        divisible = True
        for x, q in zip(a, group.factors):
            if x % math.gcd(p ** (h + 1), q):
                divisible = False
                break
        if not divisible:
            break
        h += 1
    return h


def _orbit_key(group: AbelianGroup, a):
    """Aut-orbit invariant of an element.

    Within each primary part, the orbit of an element under the full
    automorphism group is determined by the sequence of heights of its
    p-power multiples; across primes, orbits are products.
    """
    key = []
    for p in group.primes():
        comp = group.embed_p_part(p, group.project_p_part(p, a))
        heights = []
        cur = comp
        while cur != group.identity:
            heights.append(_p_height(group, p, cur))
            cur = group.scale(p, cur)
        key.append((p, tuple(heights)))
    return tuple(key)


def characteristic_core(group: AbelianGroup, q0: SubgroupHandle) -> SubgroupHandle:
    """Largest automorphism-invariant subgroup inside q0.

    Equals the intersection of phi(q0) over all automorphisms phi: an element
    survives exactly when its whole Aut-orbit lies in q0, and orbits are cut
    out by the height-sequence invariant, so no Aut enumeration is needed.
    """
    classes: dict[tuple, list] = {}
    for a in group.elements():
        classes.setdefault(_orbit_key(group, a), []).append(a)
    members = set()
    for orbit in classes.values():
        if all(x in q0.members for x in orbit):
            members.update(orbit)
    core = SubgroupHandle(group, members)
    # the intersection of subgroups is a subgroup; fail loudly if the orbit
    # classification were ever violated
    closed = _mulclose(core.sorted_members(), group.op, group.identity,
                       group.order())
    assert frozenset(closed) == core.members
    return core


def power_core(group_or_handle, n: int, p: int | None = None) -> SubgroupHandle:
    """Subgroup of p^n-th powers; lands inside every subgroup of index <= p^n.

    Accepts an AbelianGroup whose order is a prime power (p inferred), or a
    SubgroupHandle onto an abelian carrier with explicit p.
    """
    if isinstance(group_or_handle, AbelianGroup):
        group = group_or_handle
        handle = SubgroupHandle.whole(group)
    else:
        handle = group_or_handle
        group = handle.parent
    if p is None:
        primes = {pp for x in handle.members for pp in prime_factors(group.element_order(x))}
        if len(primes) > 1:
            raise ValueError("ambiguous prime; pass p explicitly")
        p = primes.pop() if primes else 2
    k = p ** n
    members = {group.scale(k, x) for x in handle.members}
    return SubgroupHandle(group, members)


def torsion_subgroup(group: AbelianGroup, k: int) -> SubgroupHandle:
    """Elements annihilated by k."""
    members = {x for x in group.elements() if group.scale(k, x) == group.identity}
    return SubgroupHandle(group, members)


@dataclass
class CommutingCoreReport:
    kernel: SubgroupHandle
    b_order: int
    b_maps: list = field(repr=False, default_factory=list)


def commuting_core(p_group: AbelianGroup, q_group: AbelianGroup,
                   phi: list[AutomorphismMap]) -> CommutingCoreReport:
    """Kernel of the induced action on q-torsion, plus the q-automorphism count.

    `phi` assigns an automorphism of q_group to each canonical generator of
    p_group; the assignment must define a homomorphism (orders respected,
    images commuting).  Returns the subgroup of p_group acting trivially on
    the q-torsion of q_group and the order of

        B = {alpha in Aut(Q) : alpha fixes the q-torsion pointwise and
             alpha(x) - x lies in the q-torsion for every x},

    enumerated directly as {x -> x + f(x) : f in Hom(Q, torsion), f = 0 on
    torsion}; B is always a q-group.
    """
    p_primes = {pr for q in p_group.factors for pr in prime_factors(q)}
    q_primes = {pr for q in q_group.factors for pr in prime_factors(q)}
    if len(p_primes) > 1 or len(q_primes) != 1:
        raise InvalidHomomorphism("expected a p-group acting on a q-group")
    q = q_primes.pop()
    if p_primes and p_primes == {q}:
        raise InvalidHomomorphism("action primes must be coprime")

    gens = p_group.canonical_generators()
    if len(phi) != len(gens):
        raise InvalidHomomorphism("one automorphism per canonical generator")
    for a, (orderq, psi) in enumerate(zip(p_group.factors, phi)):
        if not psi.power(orderq).is_identity():
            raise InvalidHomomorphism(
                f"generator {a} image has order not dividing {orderq}")
    for i in range(len(phi)):
        for j in range(i + 1, len(phi)):
            if phi[i].compose(phi[j]) != phi[j].compose(phi[i]):
                raise InvalidHomomorphism("images must commute (domain abelian)")

    torsion = torsion_subgroup(q_group, q)

    def act(a) -> AutomorphismMap:
        out = AutomorphismMap.identity_map(q_group)
        for exp, psi in zip(a, phi):
            if exp:
                out = out.compose(psi.power(exp))
        return out

    kernel_members = set()
    for a in p_group.elements():
        alpha = act(a)
        if all(alpha.apply(t) == t for t in torsion.members):
            kernel_members.add(a)
    kernel = SubgroupHandle(p_group, kernel_members)

    # enumerate B via generator images in the torsion subgroup
    tors_sorted = sorted(torsion.members)
    choice_sets = []
    for qi in q_group.factors:
        cof = qi // q
        choice_sets.append([t for t in tors_sorted
                            if q_group.scale(cof, t) == q_group.identity])
    b_maps = []
    for imgs in iproduct(*choice_sets):
        images = [q_group.op(g, t) for g, t in
                  zip(q_group.canonical_generators(), imgs)]
        alpha = AutomorphismMap(q_group, images)  # validates bijectivity
        assert all(alpha.apply(t) == t for t in torsion.members)
        b_maps.append(alpha)
    b_order = len(b_maps)
    bb = b_order
    while bb % q == 0:
        bb //= q
    assert bb == 1, "B must be a q-group"
    return CommutingCoreReport(kernel, b_order, b_maps)


# ---------------------------------------------------------------------------
# exhaustive small-index subgroup enumeration (abelian)
# ---------------------------------------------------------------------------

def _abelian_p_group_shapes(p: int, max_exponent: int) -> list[tuple[int, ...]]:
    """Factor lists of all abelian p-groups of order <= p^max_exponent."""
    shapes = [()]
    def partitions(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in partitions(n - first, first):
                yield (first,) + rest
    for total in range(1, max_exponent + 1):
        for part in partitions(total, total):
            shapes.append(tuple(p ** e for e in part))
    return shapes


def index_bounded_subgroups(group: AbelianGroup, p: int, n: int,
                            materialize: bool = True):
    """All subgroups of index <= p^n, as kernels of maps onto small p-groups.

    Every such subgroup is the kernel of the quotient map onto a group of
    order <= p^n, so ranging over homomorphisms into every abelian p-group of
    that size is exhaustive.  With materialize=True returns deduplicated
    SubgroupHandles; otherwise yields (target_factors, images) descriptors so
    callers can test containment by evaluation without building member sets.
    """
    shapes = _abelian_p_group_shapes(p, n)
    gens = group.canonical_generators()

    def descriptors():
        for shape in shapes:
            target = AbelianGroup(shape) if shape else None
            if target is None:
                yield ((), [()] * len(gens))
                continue
            tels = target.elements()
            cands = []
            for qi in group.factors:
                cands.append([t for t in tels
                              if target.scale(qi, t) == target.identity])
            for images in iproduct(*cands):
                yield (shape, list(images))

    if not materialize:
        return descriptors()

    seen: set[frozenset] = set()
    out = []
    for shape, images in descriptors():
        if not shape:
            members = frozenset(group.elements())
        else:
            target = AbelianGroup(shape)
            members = set()
            for a in group.elements():
                v = target.identity
                for exp, img in zip(a, images):
                    if exp:
                        v = target.op(v, target.scale(exp, img))
                if v == target.identity:
                    members.add(a)
            members = frozenset(members)
        if members not in seen:
            seen.add(members)
            out.append(SubgroupHandle(group, members))
    out.sort(key=lambda h: (-h.order, h.sorted_members()))
    return [h for h in out if group.order() <= h.order * p ** n]
