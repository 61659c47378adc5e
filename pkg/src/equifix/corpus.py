"""Seeded deterministic corpora for the verification suites.

Everything here is reproducible from an integer seed via a fixed SplitMix64
generator, so corpora are portable across platforms and the suite reports
they feed are byte-identical between runs.
"""
from __future__ import annotations

import math

from . import linmodel, stability
from .errors import PreconditionViolated, UnsupportedKind
from .groupcore import (
    AbelianGroup,
    AutomorphismMap,
    Permutation,
    SubgroupHandle,
    _prime_power_base,
    prime_factors,
)
from .linmodel import CharacterVec, DiskModel, RealRep, SphereModel
from .simplicial import Complex, SimplicialAction, ensure_good
from .stability import ActionFingerprint, ComponentRecord, NormalCharRecord, SubgroupRecord

MASK64 = (1 << 64) - 1


class Rng:
    """SplitMix64 stream: fixed constants, no platform-dependent behavior."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("empty range")
        return self.next_u64() % n

    def randint(self, a: int, b: int) -> int:
        return a + self.randrange(b - a + 1)

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def sample(self, seq, k: int) -> list:
        pool = list(seq)
        out = []
        for _ in range(min(k, len(pool))):
            out.append(pool.pop(self.randrange(len(pool))))
        return out

    def subset(self, seq) -> list:
        return [x for x in seq if self.next_u64() & 1]


# ---------------------------------------------------------------------------
# abelian isomorphism types


def _partitions(n: int):
    """Partitions of n as weakly decreasing tuples."""
    if n == 0:
        yield ()
        return
    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest
    yield from rec(n, n)


def _factor_lists(n: int):
    """Cyclic prime-power factor lists of every abelian group of order n."""
    fac = prime_factors(n)
    primes = sorted(fac)
    choices = []
    for p in primes:
        opts = []
        for part in _partitions(fac[p]):
            opts.append([p ** e for e in part])
        choices.append(opts)
    def rec(i):
        if i == len(choices):
            yield []
            return
        for opt in choices[i]:
            for rest in rec(i + 1):
                yield opt + rest
    yield from rec(0)


def abelian_family(max_order: int, min_order: int = 1) -> list[AbelianGroup]:
    """Every abelian group of order in [min_order, max_order], one per
    isomorphism class, ordered by (order, factors)."""
    out = []
    for n in range(max(1, min_order), max_order + 1):
        for factors in sorted(_factor_lists(n)):
            out.append(AbelianGroup(factors))
    return out


def abelian_family_count(max_order: int) -> int:
    """Independent count of isomorphism classes via partition numbers."""
    table = [1] + [0] * 64
    for part_size in range(1, 65):
        for total in range(part_size, 65):
            table[total] += table[total - part_size]
    count = 0
    for n in range(1, max_order + 1):
        count += math.prod(table[e] for e in prime_factors(n).values())
    return count


def p_group_family(max_order: int) -> list[AbelianGroup]:
    return [g for g in abelian_family(max_order)
            if len(g.primes()) == 1]


# ---------------------------------------------------------------------------
# random characters and representations


def _random_sign_char(rng: Rng, group: AbelianGroup) -> CharacterVec | None:
    even = [i for i, q in enumerate(group.factors) if q % 2 == 0]
    if not even:
        return None
    chosen = rng.subset(even)
    if not chosen:
        chosen = [rng.choice(even)]
    exps = [0] * len(group.factors)
    for i in chosen:
        exps[i] = group.factors[i] // 2
    return CharacterVec(group, exps)


def _random_rot_char(rng: Rng, group: AbelianGroup) -> CharacterVec | None:
    if not any(q >= 3 for q in group.factors):
        return None
    for _ in range(40):
        exps = [rng.randrange(q) for q in group.factors]
        ch = CharacterVec(group, exps)
        if ch.order() >= 3:
            return ch
    i = next(i for i, q in enumerate(group.factors) if q >= 3)
    exps = [0] * len(group.factors)
    exps[i] = 1
    return CharacterVec(group, exps)


def random_rep(rng: Rng, group: AbelianGroup, dim: int,
               min_trivial: int = 0) -> RealRep:
    """A representation of exactly the requested dimension, with at least
    `min_trivial` trivial summands; block kinds chosen at random among those
    the group supports."""
    if dim < min_trivial:
        raise PreconditionViolated("dimension below the trivial floor")
    trivial = min_trivial
    signs: list[CharacterVec] = []
    rots: list[CharacterVec] = []
    remaining = dim - min_trivial
    has_sign = any(q % 2 == 0 for q in group.factors)
    has_rot = any(q >= 3 for q in group.factors)
    while remaining > 0:
        kinds = ["triv"]
        if has_sign:
            kinds.append("sign")
        if has_rot and remaining >= 2:
            kinds.append("rot")
        kind = rng.choice(kinds)
        if kind == "triv":
            trivial += 1
            remaining -= 1
        elif kind == "sign":
            ch = _random_sign_char(rng, group)
            signs.append(ch)
            remaining -= 1
        else:
            ch = _random_rot_char(rng, group)
            rots.append(ch)
            remaining -= 2
    return RealRep(group, trivial, signs, rots)


def elementary_sphere_family(seed: int, minimum: int = 200,
                             primes=(2, 3, 5), max_rank: int = 3,
                             max_dim: int = 9) -> list[RealRep]:
    """Representations of elementary abelian groups for the dimension-formula
    corpus: (Z_p)^r for p in `primes`, r <= max_rank, ambient dim <= max_dim."""
    rng = Rng(seed)
    combos = [(p, r) for p in primes for r in range(1, max_rank + 1)]
    per = -(-minimum // len(combos))
    out = []
    for p, r in combos:
        group = AbelianGroup([p] * r)
        for _ in range(per):
            out.append(random_rep(rng, group, rng.randint(1, max_dim)))
    return out


def disk_corpus(seed: int, max_order: int = 200, max_dim: int = 7) -> list:
    """(group, DiskModel) pairs covering every abelian group of order up to
    max_order: one representation keeping >= 3 trivial dimensions (every
    prime part then fixes a disk of dimension >= 3, so the reduction pipeline
    never skips) and one unconstrained."""
    rng = Rng(seed)
    out = []
    for group in abelian_family(max_order):
        rich = random_rep(rng, group, max_dim, min_trivial=3)
        out.append((group, DiskModel(rich)))
        free = random_rep(rng, group, rng.randint(1, max_dim))
        out.append((group, DiskModel(free)))
    return out


def sphere_corpus(seed: int, max_order: int = 200, max_m: int = 3) -> list:
    """(group, SphereModel) pairs on even spheres S^(2m), m <= max_m, for
    every abelian group of order up to max_order."""
    rng = Rng(seed)
    out = []
    for group in abelian_family(max_order):
        m = rng.randint(1, max_m)
        rich = random_rep(rng, group, 2 * m + 1, min_trivial=3)
        out.append((group, SphereModel(rich)))
        m2 = rng.randint(1, max_m)
        free = random_rep(rng, group, 2 * m2 + 1)
        out.append((group, SphereModel(free)))
    return out


# ---------------------------------------------------------------------------
# simplicial action corpora


def _orbit_close(simplices: set, perms: list) -> set:
    queue = list(simplices)
    out = set(simplices)
    while queue:
        s = queue.pop()
        for m in perms:
            img = tuple(sorted(m(v) for v in s))
            if img not in out:
                out.add(img)
                queue.append(img)
    return out


def _downward_close(simplices: set) -> set:
    out = set()
    queue = list(simplices)
    while queue:
        s = queue.pop()
        if s in out or not s:
            continue
        out.add(s)
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            if face and face not in out:
                queue.append(face)
    return out


def random_group_action(rng: Rng, group: AbelianGroup, free_blocks: int,
                        fixed_verts: int, n_seeds: int,
                        max_card: int = 3) -> SimplicialAction:
    """A simplicial action on a random complex: the group permutes
    `free_blocks` regular blocks of vertices and fixes `fixed_verts` others;
    simplices are the orbit-and-face closure of random seed simplices."""
    els = sorted(group.elements())
    order = len(els)
    pos = {x: i for i, x in enumerate(els)}
    nv = free_blocks * order + fixed_verts
    perms = []
    for g in group.canonical_generators():
        images = list(range(nv))
        for b in range(free_blocks):
            for x in els:
                images[b * order + pos[x]] = b * order + pos[group.op(g, x)]
        perms.append(Permutation(images))
    seeds = {(v,) for v in range(nv)}
    for _ in range(n_seeds):
        card = rng.randint(2, max_card)
        seeds.add(tuple(sorted(rng.sample(range(nv), card))))
    simplices = _orbit_close(_downward_close(seeds), perms)
    cplx = Complex(nv, simplices)
    return SimplicialAction(cplx, group, perms)


def cone_action(action: SimplicialAction) -> SimplicialAction:
    """Cone with a fresh fixed apex: contractible, and good when the base is."""
    base = action.complex
    apex = base.n_vertices
    simplices = set(base.simplices) | {(apex,)}
    simplices.update(tuple(sorted(s + (apex,))) for s in base.simplices)
    cplx = Complex(apex + 1, simplices)
    perms = [Permutation(list(m.images) + [apex]) for m in action.gen_images]
    return SimplicialAction(cplx, action.group, perms)


def _good_action(rng: Rng, group: AbelianGroup, max_simplices: int,
                 cone: bool = False) -> SimplicialAction | None:
    for free_blocks in (2, 1):
        for n_seeds in (3, 2, 1):
            action = random_group_action(
                rng, group, free_blocks=free_blocks,
                fixed_verts=rng.randint(1, 3), n_seeds=n_seeds)
            if cone:
                action = cone_action(action)
            good, _ = ensure_good(action)
            if len(good.complex.simplices) <= max_simplices:
                return good
    return None


def lefschetz_corpus(seed: int, minimum: int = 50,
                     max_simplices: int = 200) -> list[SimplicialAction]:
    """Good actions of small abelian groups on complexes of bounded size."""
    rng = Rng(seed)
    group_types = [[2], [3], [4], [2, 2], [5], [2, 3], [2, 4], [3, 3]]
    out = []
    while len(out) < minimum:
        group = AbelianGroup(rng.choice(group_types))
        action = _good_action(rng, group, max_simplices)
        if action is not None:
            out.append(action)
    return out


def smith_corpus(seed: int, minimum: int = 50,
                 max_simplices: int = 200) -> list[SimplicialAction]:
    """Good p-group actions; the first half are cones (hence mod-p acyclic)."""
    rng = Rng(seed)
    group_types = [[2], [3], [4], [2, 2], [3, 3], [2, 2, 2], [5], [9]]
    out = []
    want_cones = minimum // 2 + 1
    while len(out) < minimum:
        group = AbelianGroup(rng.choice(group_types))
        action = _good_action(rng, group, max_simplices,
                              cone=len(out) < want_cones)
        if action is not None:
            out.append(action)
    return out


# ---------------------------------------------------------------------------
# product fingerprints


def _convolve(a, b) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _product_group(g1: AbelianGroup, g2: AbelianGroup):
    """Direct product plus coordinate positions of each factor group.

    AbelianGroup sorts its factors stably by (prime, exponent); replaying the
    same stable sort here recovers which coordinate came from which side.
    """
    combined = list(g1.factors) + list(g2.factors)
    decomposed = [_prime_power_base(q) for q in combined]
    order = sorted(range(len(combined)), key=lambda i: decomposed[i])
    where = {orig: i for i, orig in enumerate(order)}
    pos1 = [where[i] for i in range(len(g1.factors))]
    pos2 = [where[len(g1.factors) + j] for j in range(len(g2.factors))]
    return AbelianGroup(combined), pos1, pos2


def _project(members, pos) -> frozenset:
    return frozenset(tuple(x[i] for i in pos) for x in members)


def _pull_chars(chars, members, pos, order: int) -> dict:
    pulled: dict = {}
    for rec in chars:
        kernel = frozenset(x for x in members
                           if tuple(x[i] for i in pos) in rec.kernel)
        pulled[kernel] = pulled.get(kernel, 0) + rec.mult
    return pulled


def product_fingerprint(model1, model2, mu: int | None = None) -> ActionFingerprint:
    """Fingerprint of the product action of G1 x G2 on X1 x X2.

    A subgroup (not necessarily a product) fixes exactly the product of the
    fixed sets of its two projections, so components, Euler characteristics,
    normal characters, and Betti data all assemble from the factor models.
    """
    fp1 = linmodel.fingerprint(model1)
    fp2 = linmodel.fingerprint(model2)
    group, pos1, pos2 = _product_group(fp1.group, fp2.group)
    dim = fp1.dim + fp2.dim
    betti = _convolve(fp1.betti_q, fp2.betti_q)
    chi = fp1.chi * fp2.chi

    def provider(members: frozenset) -> SubgroupRecord:
        rec1 = fp1.record(_project(members, pos1))
        rec2 = fp2.record(_project(members, pos2))
        order = len(members)
        comps = []
        for c1 in rec1.components:
            for c2 in rec2.components:
                merged = _pull_chars(c1.chars, members, pos1, order)
                for kernel, mult in _pull_chars(c2.chars, members, pos2,
                                                order).items():
                    merged[kernel] = merged.get(kernel, 0) + mult
                chars = tuple(sorted(
                    (NormalCharRecord(kernel=k, index=order // len(k), mult=m)
                     for k, m in merged.items()),
                    key=NormalCharRecord.sort_key))
                comps.append(ComponentRecord(dim=c1.dim + c2.dim,
                                             chi=c1.chi * c2.chi,
                                             chars=chars))
        linear = None
        if rec1.linear_dim is not None and rec2.linear_dim is not None:
            linear = rec1.linear_dim + rec2.linear_dim
        return SubgroupRecord(components=tuple(comps), linear_dim=linear)

    kernel = None
    if fp1.homology_kernel is not None or fp2.homology_kernel is not None:
        k1 = fp1.homology_kernel
        k2 = fp2.homology_kernel
        members = frozenset(
            x for x in group.elements()
            if (k1 is None or tuple(x[i] for i in pos1) in k1)
            and (k2 is None or tuple(x[i] for i in pos2) in k2))
        if len(members) < group.order():
            kernel = members

    return ActionFingerprint(
        group=group, dim=dim, chi=chi, betti_q=betti,
        betti_p={p: betti for p in group.primes()},
        mu=mu, p0=max(fp1.p0, fp2.p0), homology_kernel=kernel,
        provider=provider, source="product")


# ---------------------------------------------------------------------------
# stability corpora


def descent_corpus(seed: int, minimum: int = 500) -> list[dict]:
    """Fingerprint cases for the chi-core/descent engine: model fingerprints
    of p-group disk and sphere actions, products, and mixed-prime products,
    each tagged with the prime to descend at and a lambda to descend to."""
    rng = Rng(seed)
    cases = []
    small = [g for g in p_group_family(64) if g.order() <= 64]
    models = []
    for group in small:
        dim = rng.randint(1, 6)
        models.append(DiskModel(random_rep(rng, group, dim)))
        m = rng.randint(1, 2)
        models.append(SphereModel(random_rep(rng, group, 2 * m + 1)))
    for model in models:
        fp = linmodel.fingerprint(model)
        for lam in (1, 2, max(1, fp.chi * fp.dim)):
            for p in fp.group.primes():
                cases.append({"fp": fp, "p": p, "lam": lam})
    pool = [m for m in models if m.rep.group.order() <= 16]
    while len(cases) < minimum:
        m1 = rng.choice(pool)
        m2 = rng.choice(pool)
        fp = product_fingerprint(m1, m2)
        if fp.group.order() > 256:
            continue
        for p in fp.group.primes():
            cases.append({"fp": fp, "p": p,
                          "lam": rng.choice([1, 2, max(1, fp.chi * fp.dim)])})
    return cases


def pipeline_corpus(seed: int, minimum: int = 100) -> list[ActionFingerprint]:
    """No-odd-cohomology fingerprints for the end-to-end certificate pipeline:
    disks, even spheres, and products, over mixed-prime abelian groups."""
    rng = Rng(seed)
    out = []
    groups = [g for g in abelian_family(60) if g.order() >= 2]
    for group in groups:
        if len(out) >= minimum * 2:
            break
        dim = rng.randint(1, 6)
        out.append(linmodel.fingerprint(DiskModel(random_rep(rng, group, dim))))
        m = rng.randint(1, 2)
        out.append(linmodel.fingerprint(
            SphereModel(random_rep(rng, group, 2 * m + 1))))
    pool = [g for g in abelian_family(12) if 2 <= g.order() <= 12]
    while len(out) < minimum:
        g1, g2 = rng.choice(pool), rng.choice(pool)
        m1 = DiskModel(random_rep(rng, g1, rng.randint(1, 3)))
        m2 = SphereModel(random_rep(rng, g2, 2 * rng.randint(1, 2) + 1))
        out.append(product_fingerprint(m1, m2))
    return out


def corrupted_fingerprint(seed: int = 0):
    """A materialized model fingerprint with one subgroup's Euler
    characteristic deliberately bumped; returns (fingerprint, victim handle).
    The stability check must fail and name the victim."""
    rng = Rng(seed)
    group = AbelianGroup([2, 2])
    model = DiskModel(random_rep(rng, group, 4, min_trivial=1))
    fp = linmodel.fingerprint(model)
    from .groupcore import subgroups
    records = {}
    victim = None
    for handle in subgroups(group):
        rec = fp.record(handle)
        if victim is None and 1 < handle.order < group.order():
            comp = rec.components[0]
            bumped = ComponentRecord(dim=comp.dim, chi=comp.chi + 2,
                                     chars=comp.chars)
            rec = SubgroupRecord(components=(bumped,) + rec.components[1:],
                                 linear_dim=rec.linear_dim)
            victim = handle
        records[handle.members] = rec
    return ActionFingerprint(
        group=group, dim=fp.dim, chi=fp.chi, betti_q=fp.betti_q,
        betti_p=fp.betti_p, mu=fp.mu, p0=fp.p0,
        homology_kernel=fp.homology_kernel, records=records,
        source="corrupted"), victim


# ---------------------------------------------------------------------------
# automorphism generators (for characteristic-core verification)


def _primitive_root(pe: int, p: int) -> int:
    phi = pe - pe // p
    for g in range(2, pe):
        if math.gcd(g, pe) != 1:
            continue
        k, acc = 0, 1
        while True:
            acc = acc * g % pe
            k += 1
            if acc == 1:
                break
        if k == phi:
            return g
    raise AssertionError(f"no primitive root mod {pe}")


def aut_generators(group: AbelianGroup) -> list[AutomorphismMap]:
    """Standard generating set of Aut for an abelian p-group (or a product of
    primary parts): unit scalings of each cyclic factor plus same-prime
    transvections gen_j -> gen_j + c*gen_i with c the least power of p making
    the image order legal."""
    base = group.canonical_generators()
    n = len(group.factors)
    out = []
    for i in range(n):
        q = group.factors[i]
        p, e = _prime_power_base(q)
        units: list[int] = []
        if p == 2:
            if e == 2:
                units = [3]
            elif e >= 3:
                units = [q - 1, 5]
        else:
            units = [_primitive_root(q, p)]
        for u in units:
            images = list(base)
            images[i] = group.scale(u, base[i])
            out.append(AutomorphismMap(group, images))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            pi, ei = _prime_power_base(group.factors[i])
            pj, ej = _prime_power_base(group.factors[j])
            if pi != pj:
                continue
            c = pi ** max(0, ei - ej)
            images = list(base)
            images[j] = group.op(base[j], group.scale(c, base[i]))
            out.append(AutomorphismMap(group, images))
    return out


# ---------------------------------------------------------------------------
# integer matrix groups


def _perm_matrix(images) -> list[list[int]]:
    n = len(images)
    return [[1 if images[c] == r else 0 for c in range(n)] for r in range(n)]


def _companion(coeffs: list[int]) -> list[list[int]]:
    """Companion matrix of x^n + c_{n-1} x^{n-1} + ... + c_0."""
    n = len(coeffs)
    mat = [[0] * n for _ in range(n)]
    for r in range(1, n):
        mat[r][r - 1] = 1
    for r in range(n):
        mat[r][n - 1] = -coeffs[r]
    return mat


def _block_diag(a, b) -> list[list[int]]:
    na, nb = len(a), len(b)
    out = [[0] * (na + nb) for _ in range(na + nb)]
    for r in range(na):
        out[r][:na] = list(a[r])
    for r in range(nb):
        out[na + r][na:] = list(b[r])
    return out


def _neg(a) -> list[list[int]]:
    return [[-x for x in row] for row in a]


def close_matrix_group(gens: list, cap: int = 4000) -> list:
    """Closure of integer matrix generators under multiplication."""
    from .exact import mat_mul
    n = len(gens[0])
    ident = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    seen = {tuple(map(tuple, ident))}
    queue = [ident]
    while queue:
        a = queue.pop()
        for g in gens:
            prod = mat_mul(a, g)
            key = tuple(map(tuple, prod))
            if key not in seen:
                if len(seen) >= cap:
                    raise PreconditionViolated("matrix group closure overflow")
                seen.add(key)
                queue.append(prod)
    return sorted([[list(r) for r in m] for m in seen])


def matrix_group_corpus() -> list[tuple[str, list]]:
    """Named finite integer matrix groups of orders 2 through 12."""
    c3 = _companion([1, 1])            # x^2 + x + 1
    c4 = _companion([1, 0])            # x^2 + 1
    c5 = _companion([1, 1, 1, 1])      # x^4 + x^3 + x^2 + x + 1
    c6 = _companion([1, -1])           # x^2 - x + 1
    c7 = _companion([1] * 6)           # Phi_7
    c8 = _companion([1, 0, 0, 0])      # x^4 + 1
    c9 = _companion([1, 0, 0, 1, 0, 0])  # x^6 + x^3 + 1
    c11 = _companion([1] * 10)         # Phi_11
    c12 = _companion([1, 0, -1, 0])    # x^4 - x^2 + 1
    flip2 = [[1, 0], [0, -1]]
    quat_i = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    quat_j = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]
    rev5 = _perm_matrix([0, 4, 3, 2, 1])
    entries = [
        ("Z2-neg", [[[-1]]]),
        ("Z2-swap", [_perm_matrix([1, 0])]),
        ("Z3", [c3]),
        ("Z4", [c4]),
        ("Z5", [c5]),
        ("Z6", [c6]),
        ("Z7", [c7]),
        ("Z8", [c8]),
        ("Z9", [c9]),
        ("Z10", [_neg(c5)]),
        ("Z11", [c11]),
        ("Z12", [c12]),
        ("Z2xZ2", [[[-1, 0], [0, 1]], [[1, 0], [0, -1]]]),
        ("Z2xZ4", [_block_diag([[-1]], c4)]),
        ("Z2xZ6", [_block_diag([[-1]], c6)]),
        ("Z3xZ3", [_block_diag(c3, [[1, 0], [0, 1]]),
                   _block_diag([[1, 0], [0, 1]], c3)]),
        ("Z2xZ2xZ2", [[[-1, 0, 0], [0, 1, 0], [0, 0, 1]],
                      [[1, 0, 0], [0, -1, 0], [0, 0, 1]],
                      [[1, 0, 0], [0, 1, 0], [0, 0, -1]]]),
        ("S3", [_perm_matrix([1, 0, 2]), _perm_matrix([1, 2, 0])]),
        ("D4", [c4, flip2]),
        ("D6", [c6, [[0, 1], [1, 0]]]),
        ("Q8", [quat_i, quat_j]),
        ("A4", [_perm_matrix([1, 0, 3, 2]), _perm_matrix([1, 2, 0, 3])]),
        ("D5", [_perm_matrix([1, 2, 3, 4, 0]), rev5]),
        ("S3xZ2", [_perm_matrix([1, 0, 2]), _perm_matrix([1, 2, 0]),
                   _neg([[1, 0, 0], [0, 1, 0], [0, 0, 1]])]),
    ]
    out = []
    for name, gens in entries:
        elements = close_matrix_group(gens)
        if not 2 <= len(elements) <= 12:
            raise AssertionError(f"{name} closed to order {len(elements)}")
        out.append((name, elements))
    return out


def plus_minus_identity(n: int = 2) -> list:
    """The group {I, -I}: the negative control for mod-2 reduction."""
    ident = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    return [ident, _neg(ident)]


# ---------------------------------------------------------------------------
# generator entry point used by the CLI


def generate(kind: str, seed: int, size: int | None = None) -> dict:
    """Deterministic corpus objects for the scenario runner."""
    if kind == "random-rep":
        count = 20 if size is None else size
        rng = Rng(seed)
        types = [[2], [3], [4], [2, 2], [2, 4], [3, 3], [8], [2, 2, 2], [5]]
        objects = []
        for _ in range(count):
            group = AbelianGroup(rng.choice(types))
            rep = random_rep(rng, group, rng.randint(4, 7), min_trivial=1)
            data = rep.to_json()
            data["kind"] = "disk"
            objects.append(data)
        return {"kind": kind, "seed": seed, "objects": objects}
    if kind == "random-complex-action":
        count = 5 if size is None else size
        rng = Rng(seed)
        objects = []
        while len(objects) < count:
            group = AbelianGroup([rng.choice([2, 3, 4])])
            action = _good_action(rng, group, 200)
            if action is not None:
                objects.append(action.to_json())
        return {"kind": kind, "seed": seed, "objects": objects}
    if kind == "abelian-family":
        max_order = 64 if size is None else size
        objects = [g.to_json() for g in abelian_family(max_order)]
        return {"kind": kind, "seed": seed, "objects": objects}
    raise UnsupportedKind(f"unknown generator kind {kind!r}")
