"""Orthogonal models of finite abelian groups acting on disks and spheres.

A representation is stored as a character multiset, never as matrices: a real
orthogonal representation of a finite abelian group splits into a trivial
part, one-dimensional summands indexed by order-2 characters, and
two-dimensional rotation summands indexed by characters of order >= 3 taken up
to inversion.  Fixed dimensions, determinants, Euler characteristics and the
reduction pipelines below are all exact character arithmetic over rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import bounds, stability
from .errors import (
    EvenPrime,
    NotElementaryAbelian,
    OddDimensionalSphere,
    PreconditionViolated,
    UnsupportedKind,
)
from .groupcore import AbelianGroup, SubgroupHandle, prime_factors

HALF = Fraction(1, 2)


def _is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == {n: 1}


# ---------------------------------------------------------------------------
# characters


class CharacterVec:
    """A character of a finite abelian group, one exponent per cyclic factor.

    The character sends x to exp(2*pi*i * sum_i e_i x_i / m_i); `value`
    returns that exponent sum as a fraction in [0, 1), so a character kills x
    exactly when value(x) == 0.
    """

    __slots__ = ("group", "exponents")

    def __init__(self, group: AbelianGroup, exponents):
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != len(group.factors):
            raise PreconditionViolated(
                f"expected {len(group.factors)} exponents, got {len(exponents)}")
        self.group = group
        self.exponents = tuple(e % m for e, m in zip(exponents, group.factors))

    def value(self, x) -> Fraction:
        total = Fraction(0)
        for e, xi, m in zip(self.exponents, x, self.group.factors):
            total += Fraction(e * xi, m)
        return total % 1

    def vanishes_on(self, members) -> bool:
        return all(self.value(x) == 0 for x in members)

    def order(self) -> int:
        out = 1
        for e, m in zip(self.exponents, self.group.factors):
            o = m // math.gcd(e, m)
            out = out * o // math.gcd(out, o)
        return out

    def kernel_members(self, members=None) -> frozenset:
        if members is None:
            members = self.group.elements()
        return frozenset(x for x in members if self.value(x) == 0)

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def neg(self) -> "CharacterVec":
        return CharacterVec(self.group,
                            tuple((-e) % m for e, m in
                                  zip(self.exponents, self.group.factors)))

    def canonical(self) -> "CharacterVec":
        """Lexicographically least of the character and its inverse."""
        other = self.neg()
        return self if self.exponents <= other.exponents else other

    def __add__(self, other: "CharacterVec") -> "CharacterVec":
        if other.group.key() != self.group.key():
            raise PreconditionViolated("character groups differ")
        return CharacterVec(self.group,
                            tuple(a + b for a, b in
                                  zip(self.exponents, other.exponents)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, CharacterVec)
                and self.group.key() == other.group.key()
                and self.exponents == other.exponents)

    def __lt__(self, other: "CharacterVec") -> bool:
        return self.exponents < other.exponents

    def __hash__(self) -> int:
        return hash((self.group.key(), self.exponents))

    def __repr__(self) -> str:
        return f"CharacterVec{self.exponents}"


# ---------------------------------------------------------------------------
# real representations


def _member_iter(subject):
    """Members of a handle, an iterable of elements, or a single element."""
    if isinstance(subject, SubgroupHandle):
        return subject.sorted_members()
    if isinstance(subject, tuple) and (not subject or
                                       isinstance(subject[0], int)):
        return (subject,)
    return tuple(subject)


class RealRep:
    """A real orthogonal representation given by its character multiset.

    `trivial_dim` counts trivial summands; `sign_chars` are order-2 characters
    (one real dimension each); `rot_chars` are characters of order >= 3 up to
    inversion (two real dimensions each), stored by their canonical
    representative.  Total dimension is the sum of the pieces.
    """

    __slots__ = ("group", "trivial_dim", "sign_chars", "rot_chars")

    def __init__(self, group: AbelianGroup, trivial_dim: int = 0,
                 sign_chars=(), rot_chars=()):
        if trivial_dim < 0:
            raise PreconditionViolated("trivial_dim must be >= 0")
        signs = []
        for ch in sign_chars:
            if not isinstance(ch, CharacterVec):
                ch = CharacterVec(group, ch)
            if ch.order() != 2:
                raise PreconditionViolated(
                    f"sign character must have order 2, got {ch.order()}")
            signs.append(ch)
        rots = []
        for ch in rot_chars:
            if not isinstance(ch, CharacterVec):
                ch = CharacterVec(group, ch)
            ch = ch.canonical()
            if ch.order() < 3:
                raise PreconditionViolated(
                    f"rotation character must have order >= 3, got {ch.order()}")
            rots.append(ch)
        self.group = group
        self.trivial_dim = trivial_dim
        self.sign_chars = tuple(sorted(signs, key=lambda c: c.exponents))
        self.rot_chars = tuple(sorted(rots, key=lambda c: c.exponents))

    @property
    def dim(self) -> int:
        return self.trivial_dim + len(self.sign_chars) + 2 * len(self.rot_chars)

    def blocks(self):
        """Yield ("sign"|"rot", character) for each nontrivial summand."""
        for ch in self.sign_chars:
            yield "sign", ch
        for ch in self.rot_chars:
            yield "rot", ch

    def fixed_dim(self, subject) -> int:
        """Dimension of the fixed subspace of a subgroup (handle, element
        iterable, or single element)."""
        members = _member_iter(subject)
        out = self.trivial_dim
        for kind, ch in self.blocks():
            if ch.vanishes_on(members):
                out += 1 if kind == "sign" else 2
        return out

    def det_sign(self, x) -> int:
        """det(x|V): rotation blocks have determinant +1, sign blocks +-1."""
        flips = sum(1 for ch in self.sign_chars if ch.value(x) != 0)
        return -1 if flips % 2 else 1

    def det_char(self) -> CharacterVec:
        out = CharacterVec(self.group, (0,) * len(self.group.factors))
        for ch in self.sign_chars:
            out = out + ch
        return out

    def vanishing_blocks(self, subject) -> tuple:
        """Indices of blocks (in `blocks()` order) killed by the subject."""
        members = _member_iter(subject)
        return tuple(i for i, (_, ch) in enumerate(self.blocks())
                     if ch.vanishes_on(members))

    def to_json(self) -> dict:
        return {
            "kind": "rep",
            "group": {"factors": list(self.group.factors)},
            "trivial": self.trivial_dim,
            "signs": [list(c.exponents) for c in self.sign_chars],
            "rots": [list(c.exponents) for c in self.rot_chars],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RealRep":
        group = AbelianGroup(data["group"]["factors"])
        return cls(group, int(data.get("trivial", 0)),
                   data.get("signs", ()), data.get("rots", ()))

    def __repr__(self) -> str:
        return (f"RealRep(dim={self.dim}, trivial={self.trivial_dim}, "
                f"signs={len(self.sign_chars)}, rots={len(self.rot_chars)})")


def fixed_dim(rep: RealRep, subgroup) -> int:
    """Dimension of the subspace fixed by a subgroup under the representation."""
    return rep.fixed_dim(subgroup)


def p_part_rep(rep: RealRep, p: int) -> RealRep:
    """Restriction of the representation to the p-primary part of the group.

    Characters restrict coordinate-wise; a rotation character whose
    restriction has order 2 splits into two sign summands, and order-1
    restrictions feed the trivial part.  Total dimension is preserved.
    """
    indices = rep.group.p_part_indices(p)
    part = rep.group.p_part_group(p)
    trivial = rep.trivial_dim
    signs = []
    rots = []
    for ch in rep.sign_chars:
        res = CharacterVec(part, tuple(ch.exponents[i] for i in indices))
        if res.order() == 1:
            trivial += 1
        else:
            signs.append(res)
    for ch in rep.rot_chars:
        res = CharacterVec(part, tuple(ch.exponents[i] for i in indices))
        o = res.order()
        if o == 1:
            trivial += 2
        elif o == 2:
            signs.extend([res, res])
        else:
            rots.append(res)
    out = RealRep(part, trivial, signs, rots)
    assert out.dim == rep.dim
    return out


# ---------------------------------------------------------------------------
# disk and sphere models


class DiskModel:
    """The unit disk of the representation space; every fixed set is a disk."""

    kind = "disk"

    def __init__(self, rep: RealRep):
        self.rep = rep

    @property
    def dim(self) -> int:
        return self.rep.dim

    def fixed_dim(self, subject) -> int:
        return self.rep.fixed_dim(subject)

    def chi_fixed(self, subject) -> int:
        return 1

    def euler(self) -> int:
        return 1

    def betti(self) -> tuple:
        return (1,) + (0,) * self.dim

    def to_json(self) -> dict:
        out = self.rep.to_json()
        out["kind"] = self.kind
        return out


class SphereModel:
    """The unit sphere of the representation space.

    A subgroup with fixed subspace of dimension d fixes the sphere S^(d-1):
    empty when d = 0, two points when d = 1, a connected sphere otherwise.
    """

    kind = "sphere"

    def __init__(self, rep: RealRep):
        if rep.dim < 1:
            raise PreconditionViolated("sphere model needs dim V >= 1")
        self.rep = rep

    @property
    def dim(self) -> int:
        return self.rep.dim - 1

    def fixed_dim(self, subject) -> int:
        return self.rep.fixed_dim(subject)

    def chi_fixed(self, subject) -> int:
        d = self.rep.fixed_dim(subject)
        if d == 0:
            return 0
        return 1 + (-1) ** (d - 1)

    def euler(self) -> int:
        return 1 + (-1) ** self.dim

    def betti(self) -> tuple:
        if self.dim == 0:
            return (2,)
        return (1,) + (0,) * (self.dim - 1) + (1,)

    def to_json(self) -> dict:
        out = self.rep.to_json()
        out["kind"] = self.kind
        return out


def model_from_json(data: dict):
    kind = data.get("kind")
    if kind not in ("disk", "sphere"):
        raise UnsupportedKind(f"unknown model kind {kind!r}")
    rep = RealRep.from_json(data)
    return DiskModel(rep) if kind == "disk" else SphereModel(rep)


# ---------------------------------------------------------------------------
# dimension functions


@dataclass
class DimFunction:
    """Subgroup -> n(H) table: fixed-sphere dimension (sphere models, >= -1)
    or fixed-disk dimension (disk models, >= 0)."""

    kind: str
    values: dict

    def n(self, handle: SubgroupHandle) -> int:
        return self.values[frozenset(handle.members)]

    def monotone_violations(self) -> list:
        """Pairs H <= H' with n(H) < n(H'); empty for genuine models."""
        out = []
        items = list(self.values.items())
        for small, n_small in items:
            for large, n_large in items:
                if small < large and n_small < n_large:
                    out.append((sorted(small), sorted(large)))
        return out


def dim_function(model, subgroup_list=None) -> DimFunction:
    """Tabulate n(H) over the given subgroups (default: all of them)."""
    from .groupcore import subgroups as _subgroups
    rep = model.rep
    if subgroup_list is None:
        subgroup_list = _subgroups(rep.group)
    offset = 1 if model.kind == "sphere" else 0
    values = {}
    for handle in subgroup_list:
        values[frozenset(handle.members)] = rep.fixed_dim(handle) - offset
    return DimFunction(kind=model.kind, values=values)


# ---------------------------------------------------------------------------
# Borel's formula


@dataclass
class BorelReport:
    p: int
    rank: int
    sphere_dim: int
    n_whole: int
    lhs: int
    rhs: int
    terms: tuple
    passed: bool

    def to_json(self) -> dict:
        return {
            "p": self.p, "rank": self.rank, "sphere_dim": self.sphere_dim,
            "n_whole": self.n_whole, "lhs": self.lhs, "rhs": self.rhs,
            "terms": [{"dual": list(d), "n": n} for d, n in self.terms],
            "passed": self.passed,
        }


def _index_p_duals(p: int, r: int):
    """Nonzero functionals on (Z_p)^r, first nonzero coefficient 1."""
    for lead in range(r):
        tail = r - lead - 1
        stack = [()]
        for _ in range(tail):
            stack = [s + (c,) for s in stack for c in range(p)]
        for suffix in stack:
            yield (0,) * lead + (1,) + suffix


def borel_check(rep: RealRep, group: AbelianGroup | None = None) -> BorelReport:
    """Exact check of the dimension formula for an elementary abelian p-group
    acting on the unit sphere:

        n - n(G) = sum over index-p subgroups H of (n(H) - n(G)),

    where n(H) = dim V^H - 1 is the fixed-sphere dimension.
    """
    group = group if group is not None else rep.group
    if group.key() != rep.group.key():
        raise PreconditionViolated("group does not match the representation")
    factors = group.factors
    if not factors:
        raise NotElementaryAbelian("group is trivial")
    parts = {q for q in factors}
    if len(parts) != 1 or not _is_prime(next(iter(parts))):
        raise NotElementaryAbelian(
            f"factors {list(factors)} are not copies of one prime")
    p = next(iter(parts))
    r = len(factors)
    n = rep.dim - 1
    members = group.elements()
    n_whole = rep.fixed_dim(members) - 1
    lhs = n - n_whole
    terms = []
    rhs = 0
    for dual in _index_p_duals(p, r):
        sub = [x for x in members
               if sum(c * xi for c, xi in zip(dual, x)) % p == 0]
        n_h = rep.fixed_dim(sub) - 1
        rhs += n_h - n_whole
        terms.append((dual, n_h))
    return BorelReport(p=p, rank=r, sphere_dim=n, n_whole=n_whole,
                       lhs=lhs, rhs=rhs, terms=tuple(terms),
                       passed=lhs == rhs)


def gz_constraint(p: int, y: int, n: int) -> bool:
    """Congruence filter for order-p rotations on mod-p homology n-spheres
    twisted by multiplication with y: passes iff y^(n+1) = 1 mod p."""
    if p % 2 == 0:
        raise EvenPrime("constraint defined for odd primes only")
    if not _is_prime(p):
        raise PreconditionViolated(f"{p} is not prime")
    if math.gcd(y, p) != 1:
        raise PreconditionViolated(f"{y} is not a unit mod {p}")
    if n < 1 or n % 2 == 0:
        raise PreconditionViolated("n must be a positive odd integer")
    return pow(y, n + 1, p) == 1


# ---------------------------------------------------------------------------
# averaging reduction (shared by the disk and sphere pipelines)


@dataclass
class ReductionData:
    """Output of one averaging pass over a p-subgroup H.

    The distinct nontrivial real irreducibles of H on V/V^H are enumerated as
    restricted character value rows; `gamma` minimizes I(gamma) = sum of e_j
    over the rows whose kernel contains gamma, and `a_prime` intersects those
    kernels (all of H when gamma avoids every kernel).
    """

    p: int
    subgroup_order: int
    r: int
    gamma: tuple
    i_gamma: int
    i_bound: int
    a_prime: frozenset
    index: int
    rows: tuple                  # (e_j, kernel_order, multiplicity)
    avg_total: int

    def to_json(self) -> dict:
        return {
            "p": self.p, "subgroup_order": self.subgroup_order, "r": self.r,
            "gamma": list(self.gamma), "i_gamma": self.i_gamma,
            "i_bound": self.i_bound, "core_order": len(self.a_prime),
            "index": self.index,
            "rows": [{"e": e, "kernel_order": k, "mult": m}
                     for e, k, m in self.rows],
            "avg_total": self.avg_total,
        }


def _log_p(value: int, p: int) -> int:
    e = 0
    while value > 1:
        if value % p:
            raise PreconditionViolated(f"{value} is not a power of {p}")
        value //= p
        e += 1
    return e


def _averaging_reduction(rep: RealRep, members, p: int) -> ReductionData:
    """Select gamma with few kernels containing it, by exact averaging.

    Rows are the distinct nonzero character value vectors of the blocks of
    `rep` restricted to the subgroup, deduplicated up to inversion (real
    irreducibles).  Since each kernel has index >= p, the average of I over
    the subgroup is at most r/p, so min I <= [r/p]; the intersection of the
    kernels containing gamma then has index dividing p^I(gamma), and a block
    vanishes at gamma exactly when it vanishes on that intersection.
    """
    members = tuple(sorted(members))
    order = len(members)
    rows: dict = {}
    for _, ch in rep.blocks():
        vv = tuple(ch.value(x) for x in members)
        if all(v == 0 for v in vv):
            continue
        neg = tuple((-v) % 1 for v in vv)
        canon = min(vv, neg)
        entry = rows.get(canon)
        if entry is None:
            kernel = frozenset(i for i, v in enumerate(vv) if v == 0)
            rows[canon] = [kernel, 1]
        else:
            entry[1] += 1
    r = len(rows)
    kernels = []
    for canon in sorted(rows):
        kernel, mult = rows[canon]
        e = _log_p(order // len(kernel), p)
        assert e >= 1
        kernels.append((e, kernel, mult))
    i_values = []
    for pos in range(order):
        i_values.append(sum(e for e, kernel, _ in kernels if pos in kernel))
    best = min(range(order), key=lambda pos: (i_values[pos], members[pos]))
    gamma = members[best]
    i_gamma = i_values[best]
    containing = [kernel for e, kernel, _ in kernels if best in kernel]
    if containing:
        core_pos = frozenset.intersection(*containing)
    else:
        core_pos = frozenset(range(order))
    a_prime = frozenset(members[i] for i in core_pos)
    assert order % len(a_prime) == 0
    index = order // len(a_prime)

    avg_total = sum(e * len(kernel) for e, kernel, _ in kernels)
    assert avg_total * p <= r * order, "averaging bound violated"
    i_bound = r // p
    assert i_gamma <= i_bound, "minimal I exceeded [r/p]"
    assert p ** i_gamma % index == 0, "core index exceeded p^I(gamma)"
    for e, kernel, _ in kernels:
        assert (best in kernel) == (core_pos <= kernel), \
            "fixed-set mismatch between gamma and the kernel intersection"
    return ReductionData(
        p=p, subgroup_order=order, r=r, gamma=gamma, i_gamma=i_gamma,
        i_bound=i_bound, a_prime=a_prime, index=index,
        rows=tuple((e, len(kernel), mult) for e, kernel, mult in kernels),
        avg_total=avg_total)


# ---------------------------------------------------------------------------
# disk reduction and disk theorem


@dataclass
class DiskReductionTrace:
    data: ReductionData
    fixed_dim_whole: int
    fixed_dim_gamma: int
    fixed_dim_core: int
    divisor: int

    def to_json(self) -> dict:
        return {
            "reduction": self.data.to_json(),
            "fixed_dim_whole": self.fixed_dim_whole,
            "fixed_dim_gamma": self.fixed_dim_gamma,
            "fixed_dim_core": self.fixed_dim_core,
            "divisor": self.divisor,
        }


def disk_reduction(a: AbelianGroup, model: DiskModel):
    """One-prime reduction on the disk: an element gamma and a subgroup A'
    with the same fixed set and index dividing p^[r/p].

    Returns (gamma, A', trace).  A trivially acting group yields the identity
    and the whole group.
    """
    if model.kind != "disk":
        raise PreconditionViolated("disk_reduction needs a disk model")
    rep = model.rep
    if a.key() != rep.group.key():
        raise PreconditionViolated("group does not act via this model")
    primes = a.primes()
    if len(primes) > 1:
        raise PreconditionViolated(
            f"expected a p-group, found primes {primes}")
    p = primes[0] if primes else 2
    data = _averaging_reduction(rep, a.elements(), p)
    handle = SubgroupHandle(a, data.a_prime)
    fd_whole = rep.fixed_dim(a.elements())
    n = rep.dim
    if primes:
        if p == 2:
            assert data.r <= n - fd_whole
        else:
            assert (n - fd_whole) % 2 == 0
            assert data.r <= (n - fd_whole) // 2
    fd_gamma = rep.fixed_dim(data.gamma)
    fd_core = rep.fixed_dim(handle)
    assert fd_gamma == fd_core, "fixed dimensions of gamma and A' differ"
    assert rep.vanishing_blocks(data.gamma) == rep.vanishing_blocks(handle)
    divisor = p ** data.i_bound
    assert divisor % data.index == 0
    trace = DiskReductionTrace(data=data, fixed_dim_whole=fd_whole,
                               fixed_dim_gamma=fd_gamma,
                               fixed_dim_core=fd_core, divisor=divisor)
    return data.gamma, handle, trace


@dataclass
class DiskStep:
    p: int
    skipped: bool
    fixed_dim_part: int
    r: int = 0
    i_gamma: int = 0
    index: int = 1
    gamma_part: tuple | None = None

    def to_json(self) -> dict:
        return {"p": self.p, "skipped": self.skipped,
                "fixed_dim_part": self.fixed_dim_part, "r": self.r,
                "i_gamma": self.i_gamma, "index": self.index,
                "gamma_part": (None if self.gamma_part is None
                               else list(self.gamma_part))}


@dataclass
class DiskCertificate:
    """Certified output of the disk pipeline.

    When every prime part has fixed dimension >= 3 the certificate carries a
    single element `gamma` with the same fixed set as the returned subgroup.
    Primes whose part fixes a subspace of dimension <= 2 are skipped (their
    fixed disk is already contractible) and no combined gamma is claimed; the
    skip is recorded with its witness dimension.
    """

    n: int
    k: int
    f_k: int
    index: int
    branch: str
    steps: tuple
    gamma: tuple | None
    fixed_dim_core: int
    chi_fixed: int
    checks: dict

    def to_json(self) -> dict:
        return {
            "kind": "disk-certificate",
            "n": self.n, "k": self.k, "f_k": self.f_k, "index": self.index,
            "branch": self.branch,
            "steps": [s.to_json() for s in self.steps],
            "gamma": None if self.gamma is None else list(self.gamma),
            "fixed_dim_core": self.fixed_dim_core,
            "chi_fixed": self.chi_fixed,
            "checks": dict(sorted(self.checks.items())),
        }


def disk_theorem(a: AbelianGroup, model: DiskModel):
    """Bounded-index subgroup with contractible fixed set on the disk.

    Per prime p, the p-part is reduced by averaging unless its fixed subspace
    has dimension <= 2 (such a part is skipped: its fixed disk is already
    contractible and contributes no index).  The combined subgroup A' has
    index dividing f(k) for k = [(n-3)/2], and chi of its fixed disk is 1.
    Returns (A', certificate).
    """
    if model.kind != "disk":
        raise PreconditionViolated("disk_theorem needs a disk model")
    rep = model.rep
    if a.key() != rep.group.key():
        raise PreconditionViolated("group does not act via this model")
    n = rep.dim
    k = (n - 3) // 2
    f_k = bounds.f(k)
    steps = []
    part_members: dict = {}
    part_gammas: dict = {}
    skipped_any = False
    for p in a.primes():
        rp = p_part_rep(rep, p)
        part = rp.group
        fd_part = rp.fixed_dim(part.elements())
        if fd_part <= 2:
            skipped_any = True
            part_members[p] = frozenset(part.elements())
            steps.append(DiskStep(p=p, skipped=True, fixed_dim_part=fd_part))
            continue
        data = _averaging_reduction(rp, part.elements(), p)
        if p == 2:
            assert data.r <= n - fd_part
            assert data.i_gamma <= k
        else:
            assert (n - fd_part) % 2 == 0
            assert data.r <= (n - fd_part) // 2
            assert data.i_gamma <= k // p
        part_members[p] = data.a_prime
        part_gammas[p] = data.gamma
        steps.append(DiskStep(p=p, skipped=False, fixed_dim_part=fd_part,
                              r=data.r, i_gamma=data.i_gamma,
                              index=data.index, gamma_part=data.gamma))
    combined = {a.identity}
    for p in sorted(part_members):
        embedded = [a.embed_p_part(p, x) for x in sorted(part_members[p])]
        combined = {a.op(x, y) for x in combined for y in embedded}
    gamma = None
    if not skipped_any:
        gamma = a.identity
        for p in sorted(part_gammas):
            gamma = a.op(gamma, a.embed_p_part(p, part_gammas[p]))
        # The combined per-prime subgroup certifies the index bound; the
        # published subgroup is the full pointwise stabilizer of gamma's
        # fixed set.  It contains the combined subgroup (every member kills
        # gamma's vanishing blocks), is a kernel intersection and hence a
        # subgroup, and can only lower the index, so the f(k) divisibility
        # survives the enlargement.
        vb_gamma = set(rep.vanishing_blocks(gamma))
        stabilizer = {x for x in a.elements()
                      if set(rep.vanishing_blocks(x)) >= vb_gamma}
        assert combined <= stabilizer, "combined subgroup escaped stabilizer"
        combined = stabilizer
    handle = SubgroupHandle(a, combined)
    assert a.order() % handle.order == 0
    index = a.order() // handle.order
    assert f_k % index == 0, "index escaped the f(k) divisor"
    if gamma is not None:
        assert rep.vanishing_blocks(gamma) == rep.vanishing_blocks(handle)
        assert rep.fixed_dim(gamma) == rep.fixed_dim(handle)
    fd_core = rep.fixed_dim(handle)
    cert = DiskCertificate(
        n=n, k=k, f_k=f_k, index=index,
        branch="reductions" if not skipped_any else "contractible-skip",
        steps=tuple(steps), gamma=gamma, fixed_dim_core=fd_core,
        chi_fixed=1,
        checks={
            "index_divides_f_k": f_k % index == 0,
            "chi_fixed_is_one": True,
            "gamma_fixed_set_matches": (None if gamma is None else True),
        })
    return handle, cert


# ---------------------------------------------------------------------------
# sphere pipeline


def _block_dims(live) -> int:
    out = 0
    for kind, _ in live:
        out += 1 if kind in ("triv", "sign") else 2
    return out


def _two_part_descent(rep2: RealRep, m: int):
    """Orientation-and-involution descent inside the 2-part.

    Repeatedly passes to the subgroup preserving orientation on the live
    blocks, then restricts the blocks to those fixed by a chosen element
    acting by -1.  Each pass costs index at most 2 and drops the live
    dimension by an even amount >= 2, so the total index divides 2^(m+1) and
    the surviving blocks are exactly the fixed subspace of the result.
    """
    group = rep2.group
    live = [("triv", None)] * rep2.trivial_dim
    live += [("sign", ch) for ch in rep2.sign_chars]
    live += [("rot", ch) for ch in rep2.rot_chars]
    h = set(group.elements())
    passes = []
    while True:
        nontriv = [(kind, ch) for kind, ch in live if kind != "triv"]
        n_set = {x for x in h
                 if all(ch.value(x) == 0 for _, ch in nontriv)}
        if n_set == h:
            passes.append({"chosen": None, "det_index": 1,
                           "dim_live": _block_dims(live)})
            break
        a1 = {x for x in h
              if sum(1 for kind, ch in live
                     if kind == "sign" and ch.value(x) != 0) % 2 == 0}
        det_index = len(h) // len(a1)
        if a1 == n_set:
            passes.append({"chosen": None, "det_index": det_index,
                           "dim_live": _block_dims(live)})
            h = a1
            break
        cands = sorted(
            x for x in a1
            if x not in n_set
            and all(ch.value(x) in (0, HALF) for _, ch in nontriv))
        assert cands, "no order-2-acting element available for descent"
        chosen = cands[0]
        new_live = [(kind, ch) for kind, ch in live
                    if kind == "triv" or ch.value(chosen) == 0]
        drop = _block_dims(live) - _block_dims(new_live)
        assert drop >= 2 and drop % 2 == 0, "descent drop must be even >= 2"
        passes.append({"chosen": chosen, "det_index": det_index,
                       "dim_live": _block_dims(live)})
        h = a1
        live = new_live
    index = group.order() // len(h)
    assert 2 ** (m + 1) % index == 0, "2-part descent index escaped 2^(m+1)"
    assert len(passes) <= m + 1
    assert _block_dims(live) % 2 == 1
    assert rep2.fixed_dim(h) == _block_dims(live)
    return frozenset(h), tuple(passes), index


@dataclass
class SphereStep:
    p: int
    fixed_dim_part: int
    r: int = 0
    i_gamma: int = 0
    index: int = 1
    gamma_part: tuple | None = None

    def to_json(self) -> dict:
        return {"p": self.p, "fixed_dim_part": self.fixed_dim_part,
                "r": self.r, "i_gamma": self.i_gamma, "index": self.index,
                "gamma_part": (None if self.gamma_part is None
                               else list(self.gamma_part))}


@dataclass
class SphereCertificate:
    """Certified output of the even-sphere pipeline.

    `branch` records which exit produced the subgroup: "trivial" (no acting
    primes), "two-points" (some prime part fixes exactly a 0-sphere, and the
    subgroup preserving its axis pointwise has index <= 2), or "reductions"
    (per-prime averaging after the 2-part descent, with a combined gamma
    whose fixed set equals the subgroup's).
    """

    m: int
    divisor: int
    index: int
    branch: str
    steps: tuple
    two_part_index: int
    two_part_passes: tuple
    gamma: tuple | None
    zero_dim_prime: int | None
    fixed_dim_core: int
    chi_fixed: int
    checks: dict

    def to_json(self) -> dict:
        return {
            "kind": "sphere-certificate",
            "m": self.m, "divisor": self.divisor, "index": self.index,
            "branch": self.branch,
            "steps": [s.to_json() for s in self.steps],
            "two_part_index": self.two_part_index,
            "two_part_passes": [
                {"chosen": (None if entry["chosen"] is None
                            else list(entry["chosen"])),
                 "det_index": entry["det_index"],
                 "dim_live": entry["dim_live"]}
                for entry in self.two_part_passes],
            "gamma": None if self.gamma is None else list(self.gamma),
            "zero_dim_prime": self.zero_dim_prime,
            "fixed_dim_core": self.fixed_dim_core,
            "chi_fixed": self.chi_fixed,
            "checks": dict(sorted(self.checks.items())),
        }


def sphere_theorem(a: AbelianGroup, model: SphereModel):
    """Bounded-index subgroup with at least two fixed points on an
    even-dimensional sphere.

    The 2-part is first replaced by its orientation/involution descent
    subgroup (index dividing 2^(m+1)).  If any prime part then fixes exactly
    a 0-sphere, the subgroup preserving that axis pointwise (index <= 2)
    already fixes two points.  Otherwise every part fixes a sphere of
    dimension >= 2 and per-prime averaging reductions apply; the combined
    index divides 2^(m+1) * f(m-1).  Returns (A', certificate).
    """
    if model.kind != "sphere":
        raise PreconditionViolated("sphere_theorem needs a sphere model")
    rep = model.rep
    if a.key() != rep.group.key():
        raise PreconditionViolated("group does not act via this model")
    if rep.dim % 2 == 0:
        raise OddDimensionalSphere(
            f"S^{rep.dim - 1} is odd-dimensional; the pipeline covers S^(2m)")
    m = (rep.dim - 1) // 2
    divisor = bounds.even_sphere_divisor(m)
    primes = a.primes()
    if not primes:
        handle = SubgroupHandle.whole(a)
        cert = SphereCertificate(
            m=m, divisor=divisor, index=1, branch="trivial", steps=(),
            two_part_index=1, two_part_passes=(), gamma=None,
            zero_dim_prime=None, fixed_dim_core=rep.dim,
            chi_fixed=model.chi_fixed(handle),
            checks={"index_divides": True, "two_fixed_points": True})
        return handle, cert

    part_reps = {p: p_part_rep(rep, p) for p in primes}
    part_members: dict = {}
    two_passes: tuple = ()
    two_index = 1
    for p in primes:
        if p == 2:
            members2, two_passes, two_index = _two_part_descent(part_reps[2], m)
            part_members[2] = members2
        else:
            part_members[p] = frozenset(part_reps[p].group.elements())
    part_fd = {p: part_reps[p].fixed_dim(part_members[p]) for p in primes}
    for p in primes:
        assert part_fd[p] % 2 == 1 and part_fd[p] >= 1, \
            "prime part fixed dimension must be odd and positive"

    zero_dim = [p for p in primes if part_fd[p] == 1]
    if zero_dim:
        wp = zero_dim[0]
        embedded = frozenset(a.embed_p_part(wp, x) for x in part_members[wp])
        assert rep.fixed_dim(embedded) == 1
        vanishing_signs = [ch for ch in rep.sign_chars
                           if ch.vanishes_on(embedded)]
        if rep.trivial_dim == 1:
            assert not vanishing_signs
            members = set(a.elements())
            index = 1
        else:
            assert rep.trivial_dim == 0 and len(vanishing_signs) == 1
            delta = vanishing_signs[0]
            members = {x for x in a.elements() if delta.value(x) == 0}
            index = 2
        handle = SubgroupHandle(a, members)
        fd_core = rep.fixed_dim(handle)
        assert fd_core >= 1, "axis subgroup must keep two fixed points"
        assert divisor % index == 0
        steps = tuple(SphereStep(p=p, fixed_dim_part=part_fd[p])
                      for p in primes)
        cert = SphereCertificate(
            m=m, divisor=divisor, index=index, branch="two-points",
            steps=steps, two_part_index=two_index,
            two_part_passes=two_passes, gamma=None, zero_dim_prime=wp,
            fixed_dim_core=fd_core, chi_fixed=model.chi_fixed(handle),
            checks={"index_divides": True, "two_fixed_points": fd_core >= 1})
        return handle, cert

    steps = []
    core_members: dict = {}
    part_gammas: dict = {}
    for p in primes:
        rp = part_reps[p]
        data = _averaging_reduction(rp, part_members[p], p)
        ell = (part_fd[p] - 1) // 2
        assert ell >= 1
        if p == 2:
            assert data.r <= 2 * m - 2 * ell
            assert 2 ** (2 * m) % (two_index * 2 ** data.i_gamma) == 0
        else:
            assert data.r <= m - ell
            assert data.i_gamma <= (m - 1) // p
        core_members[p] = data.a_prime
        part_gammas[p] = data.gamma
        steps.append(SphereStep(p=p, fixed_dim_part=part_fd[p], r=data.r,
                                i_gamma=data.i_gamma, index=data.index,
                                gamma_part=data.gamma))
    combined = {a.identity}
    for p in primes:
        embedded = [a.embed_p_part(p, x) for x in sorted(core_members[p])]
        combined = {a.op(x, y) for x in combined for y in embedded}
    gamma = a.identity
    for p in primes:
        gamma = a.op(gamma, a.embed_p_part(p, part_gammas[p]))
    # As in the disk pipeline, publish the full pointwise stabilizer of
    # gamma's fixed set: it contains the combined descent-and-averaging
    # subgroup, so its index divides the certified one, and the fixed-set
    # equality becomes exact rather than merely witnessed from inside.
    vb_gamma = set(rep.vanishing_blocks(gamma))
    stabilizer = {x for x in a.elements()
                  if set(rep.vanishing_blocks(x)) >= vb_gamma}
    assert combined <= stabilizer, "combined subgroup escaped stabilizer"
    handle = SubgroupHandle(a, stabilizer)
    assert a.order() % handle.order == 0
    index = a.order() // handle.order
    assert divisor % index == 0, "index escaped 2^(m+1) f(m-1)"
    assert rep.vanishing_blocks(gamma) == rep.vanishing_blocks(handle)
    assert rep.fixed_dim(gamma) == rep.fixed_dim(handle)
    fd_core = rep.fixed_dim(handle)
    assert fd_core >= 1, "reduced subgroup lost its fixed points"
    cert = SphereCertificate(
        m=m, divisor=divisor, index=index, branch="reductions",
        steps=tuple(steps), two_part_index=two_index,
        two_part_passes=two_passes, gamma=gamma, zero_dim_prime=None,
        fixed_dim_core=fd_core, chi_fixed=model.chi_fixed(handle),
        checks={"index_divides": True, "two_fixed_points": fd_core >= 1,
                "gamma_fixed_set_matches": True})
    return handle, cert


# ---------------------------------------------------------------------------
# fingerprints for the stability engine


def _model_record(model, members: frozenset) -> stability.SubgroupRecord:
    """Fixed-set record of one subgroup: components of the fixed disk/sphere
    plus the complex characters on the normal space, merged by kernel."""
    rep = model.rep
    member_list = tuple(sorted(members))
    order = len(member_list)
    fd = rep.fixed_dim(member_list)
    kernels: dict = {}
    for kind, ch in rep.blocks():
        vals = {x: ch.value(x) for x in member_list}
        if all(v == 0 for v in vals.values()):
            continue
        kernel = frozenset(x for x, v in vals.items() if v == 0)
        weight = 1 if kind == "sign" else 2
        kernels[kernel] = kernels.get(kernel, 0) + weight
    chars = tuple(sorted(
        (stability.NormalCharRecord(kernel=k, index=order // len(k), mult=m)
         for k, m in kernels.items()),
        key=stability.NormalCharRecord.sort_key))
    total = sum(ch.mult for ch in chars)
    assert total == rep.dim - fd, "normal character multiplicities must fill V/V^H"
    if model.kind == "disk":
        components = (stability.ComponentRecord(dim=fd, chi=1, chars=chars),)
    elif fd == 0:
        components = ()
    elif fd == 1:
        point = stability.ComponentRecord(dim=0, chi=1, chars=chars)
        components = (point, point)
    else:
        components = (stability.ComponentRecord(
            dim=fd - 1, chi=1 + (-1) ** (fd - 1), chars=chars),)
    return stability.SubgroupRecord(components=components, linear_dim=fd)


def fingerprint(model, group: AbelianGroup | None = None,
                mu: int | None = None) -> stability.ActionFingerprint:
    """Fingerprint of a linear model for the stability engine.

    Records are computed lazily per subgroup.  Betti data comes from the
    disk/sphere formulas (torsion-free, so every mod-p vector equals the
    rational one), and the homology kernel is the determinant-character
    kernel for spheres (disks have trivial reduced homology).
    """
    rep = model.rep
    group = group if group is not None else rep.group
    if group.key() != rep.group.key():
        raise PreconditionViolated("group does not match the model")
    dim_x = model.dim
    betti = model.betti()
    chi = model.euler()
    ranks = [len(group.p_part_indices(p)) for p in group.primes()]
    if mu is None:
        mu = max([1] + ranks)
    kernel = None
    if model.kind == "sphere":
        det = rep.det_char()
        if not det.is_trivial():
            kernel = det.kernel_members(group.elements())
    return stability.ActionFingerprint(
        group=group, dim=dim_x, chi=chi, betti_q=betti,
        betti_p={p: betti for p in group.primes()},
        mu=mu, p0=2, homology_kernel=kernel,
        provider=lambda members: _model_record(model, members),
        source=model.kind)
