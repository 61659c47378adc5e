"""Lambda-stability bookkeeping for finite abelian group actions.

Everything here runs on *fingerprints*: per-subgroup summaries of a fixed-point
set (component dimensions, Euler characteristics, and the characters of the
subgroup on the normal space to each fixed component).  Geometry never enters.
Linear models produce fingerprints exactly, simplicial actions combinatorially,
and synthetic corpora load them from JSON; every operation below is exact
integer bookkeeping over that data.

The central notion: a subgroup G of the acting group is *lambda-stable* when

  (1) every subgroup of G fixes a set with the same Euler characteristic as
      the whole space, and
  (2) every character appearing on the normal space to the G-fixed set has
      kernel of index greater than lambda.

Stable subgroups admit *generic elements* whose fixed set equals that of the
whole subgroup, which is what the end-to-end pipeline certifies.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import bounds
from .errors import (
    DescentOverrun,
    ExhaustedSearch,
    IncompleteFingerprint,
    LedgerFailure,
    OddCohomology,
    PreconditionViolated,
)
from .groupcore import (
    AbelianGroup,
    SubgroupHandle,
    power_core,
    prime_factors,
    subgroups,
)

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class NormalCharRecord:
    """One character of a subgroup on the normal space to a fixed component.

    `kernel` holds the members of the subgroup that the character kills,
    `index` the index of that kernel in the subgroup, and `mult` the number
    of times the character occurs in the normal space.
    """

    kernel: frozenset
    index: int
    mult: int = 1

    def sort_key(self):
        return (self.index, tuple(sorted(self.kernel)), self.mult)


@dataclass(frozen=True)
class ComponentRecord:
    """One connected component of a fixed-point set."""

    dim: int
    chi: int
    chars: tuple = ()


@dataclass(frozen=True)
class SubgroupRecord:
    """Fixed-set summary for one subgroup.

    `linear_dim`, when present, is the dimension of the fixed *subspace* of a
    linear model (the ambient sphere or disk cuts it down to the actual fixed
    set); it gives an exact equality test between nested fixed sets.
    """

    components: tuple = ()
    linear_dim: int | None = None

    def chi(self) -> int:
        return sum(c.chi for c in self.components)

    def all_chars(self) -> tuple:
        out = [ch for comp in self.components for ch in comp.chars]
        out.sort(key=NormalCharRecord.sort_key)
        return tuple(out)

    def char_count(self) -> int:
        return sum(ch.mult for comp in self.components for ch in comp.chars)

    def census(self, m: int) -> tuple:
        """Component count per dimension, top dimension first."""
        counts = [0] * (m + 1)
        for comp in self.components:
            if not 0 <= comp.dim <= m:
                raise PreconditionViolated(
                    f"component dimension {comp.dim} outside [0, {m}]")
            counts[comp.dim] += 1
        return tuple(reversed(counts))

    def shape(self) -> tuple:
        return tuple(sorted((c.dim, c.chi) for c in self.components))

    def same_fixed_set(self, other: "SubgroupRecord") -> bool:
        """Equality proxy for nested fixed sets.

        Linear records compare fixed-subspace dimensions (exact for nested
        subspaces); otherwise the component (dim, chi) multisets must agree.
        """
        if self.linear_dim is not None and other.linear_dim is not None:
            return self.linear_dim == other.linear_dim
        return self.shape() == other.shape()


def precedes(rec_a: SubgroupRecord, rec_b: SubgroupRecord) -> bool:
    """Every component of `rec_a` is a whole component of `rec_b`.

    Checked on (dim, chi) multisets: the left multiset must embed in the
    right one.  Empty left fixed set precedes everything.
    """
    left = Counter((c.dim, c.chi) for c in rec_a.components)
    right = Counter((c.dim, c.chi) for c in rec_b.components)
    return not left - right


def member_key(members) -> str:
    """Canonical string key for a subgroup member set."""
    return ";".join(",".join(str(c) for c in x) for x in sorted(members))


def _parse_member(text: str) -> tuple:
    return tuple(int(c) for c in text.split(",") if c != "")


def parse_member_key(key: str) -> frozenset:
    if key == "":
        return frozenset({()})
    return frozenset(_parse_member(part) for part in key.split(";"))


# ---------------------------------------------------------------------------
# fingerprints


class ActionFingerprint:
    """Per-subgroup fixed-set data for a finite abelian group action.

    A fingerprint either stores every record up front (synthetic corpora,
    serialized files) or carries a `provider` callback that computes the
    record of a member set on demand (linear models).  Betti data is kept as
    full vectors so the no-odd-cohomology precondition of the end-to-end
    pipeline can be checked, not assumed.
    """

    def __init__(self, group: AbelianGroup, dim: int, chi: int, betti_q,
                 betti_p=None, mu: int | None = None, p0: int = 2,
                 homology_kernel=None, records=None, provider=None,
                 source: str = "synthetic"):
        if dim < 0:
            raise PreconditionViolated("space dimension must be >= 0")
        betti_q = tuple(int(b) for b in betti_q)
        if len(betti_q) != dim + 1 or any(b < 0 for b in betti_q):
            raise PreconditionViolated(
                "betti_q must list one value per degree 0..dim, all >= 0")
        alt = sum((-1) ** j * b for j, b in enumerate(betti_q))
        if chi != alt:
            raise PreconditionViolated(
                f"chi={chi} disagrees with the alternating Betti sum {alt}")
        betti_p = {int(p): tuple(int(b) for b in v)
                   for p, v in (betti_p or {}).items()}
        for p, vec in betti_p.items():
            if len(vec) != dim + 1 or any(b < 0 for b in vec):
                raise PreconditionViolated(
                    f"betti_p[{p}] must list one value per degree 0..dim")
        for p in group.primes():
            if p not in betti_p:
                raise PreconditionViolated(
                    f"betti_p lacks data for prime {p} dividing the group order")
        ranks = [len(group.p_part_indices(p)) for p in group.primes()]
        min_mu = max(ranks, default=0)
        if mu is None:
            mu = max(1, min_mu)
        if mu < min_mu:
            raise PreconditionViolated(
                f"mu={mu} is below the maximal p-torsion rank {min_mu}")
        self.group = group
        self.dim = dim
        self.chi = chi
        self.betti_q = betti_q
        self.betti_p = betti_p
        self.mu = mu
        self.p0 = p0
        self.homology_kernel = (None if homology_kernel is None
                                else frozenset(homology_kernel))
        self.source = source
        self.provider = provider
        self._records: dict = {}
        for key, rec in (records or {}).items():
            self._records[frozenset(key)] = rec

    # -- betti helpers ------------------------------------------------------

    def betti_q_sum(self) -> int:
        return sum(self.betti_q)

    def betti_p_sum(self, p: int) -> int:
        if p not in self.betti_p:
            raise IncompleteFingerprint(f"no mod-{p} Betti data on record")
        return sum(self.betti_p[p])

    def b_sq(self) -> int:
        return sum(b * b for b in self.betti_q)

    # -- records ------------------------------------------------------------

    def record(self, members) -> SubgroupRecord:
        if isinstance(members, SubgroupHandle):
            members = members.members
        ms = frozenset(members)
        if self.group.identity not in ms:
            raise PreconditionViolated("subgroup member set lacks the identity")
        rec = self._records.get(ms)
        if rec is not None:
            return rec
        if self.provider is None:
            raise IncompleteFingerprint(
                f"no record for subgroup of order {len(ms)} and no provider")
        rec = self.provider(ms)
        for comp in rec.components:
            if not 0 <= comp.dim <= self.dim:
                raise PreconditionViolated(
                    f"provider produced component dimension {comp.dim}")
        self._records[ms] = rec
        return rec

    def trivial_record(self) -> SubgroupRecord:
        return self.record(frozenset({self.group.identity}))

    def acts_trivially(self, x) -> bool:
        """Whether the cyclic subgroup of x fixes as much as the identity does."""
        cyc = SubgroupHandle.from_generators(self.group, [x])
        return self.record(cyc.members).same_fixed_set(self.trivial_record())

    def homology_kernel_handle(self) -> SubgroupHandle:
        if self.homology_kernel is None:
            return SubgroupHandle.whole(self.group)
        return SubgroupHandle(self.group, self.homology_kernel)

    def materialize(self) -> "ActionFingerprint":
        """Force-compute records for every subgroup (pre-serialization)."""
        for sub in subgroups(self.group):
            self.record(sub.members)
        return self

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        recs = {}
        for ms, rec in self._records.items():
            recs[member_key(ms)] = {
                "linear_dim": rec.linear_dim,
                "components": [
                    {"dim": c.dim, "chi": c.chi,
                     "chars": [{"kernel": sorted(list(k) for k in ch.kernel),
                                "mult": ch.mult}
                               for ch in c.chars]}
                    for c in rec.components
                ],
            }
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "fingerprint",
            "group": self.group.to_json(),
            "dim": self.dim,
            "chi": self.chi,
            "betti_q": list(self.betti_q),
            "betti_p": {str(p): list(v) for p, v in sorted(self.betti_p.items())},
            "mu": self.mu,
            "p0": self.p0,
            "homology_kernel": (None if self.homology_kernel is None
                                else sorted(list(x) for x in self.homology_kernel)),
            "source": self.source,
            "records": {k: recs[k] for k in sorted(recs)},
        }

    @classmethod
    def from_json(cls, data: dict) -> "ActionFingerprint":
        if data.get("kind") != "fingerprint":
            raise PreconditionViolated("not a fingerprint object")
        group = AbelianGroup.from_json(data["group"])
        records = {}
        for key, rd in data.get("records", {}).items():
            members = parse_member_key(key)
            order = len(members)
            comps = []
            for cd in rd["components"]:
                chars = []
                for chd in cd.get("chars", []):
                    kernel = frozenset(tuple(x) for x in chd["kernel"])
                    if order % len(kernel) != 0:
                        raise PreconditionViolated(
                            "character kernel size does not divide subgroup order")
                    chars.append(NormalCharRecord(
                        kernel=kernel, index=order // len(kernel),
                        mult=int(chd.get("mult", 1))))
                comps.append(ComponentRecord(dim=int(cd["dim"]),
                                             chi=int(cd["chi"]),
                                             chars=tuple(chars)))
            records[members] = SubgroupRecord(
                components=tuple(comps),
                linear_dim=rd.get("linear_dim"))
        kernel = data.get("homology_kernel")
        return cls(
            group=group,
            dim=int(data["dim"]),
            chi=int(data["chi"]),
            betti_q=data["betti_q"],
            betti_p={int(p): v for p, v in data.get("betti_p", {}).items()},
            mu=data.get("mu"),
            p0=int(data.get("p0", 2)),
            homology_kernel=(None if kernel is None
                             else frozenset(tuple(x) for x in kernel)),
            records=records,
            source=data.get("source", "synthetic"),
        )


# ---------------------------------------------------------------------------
# stability predicate


@dataclass(frozen=True)
class StabilityWitness:
    """What broke: a chi drift on a subgroup or a small character kernel."""

    kind: str          # "chi" | "char"
    members: tuple     # offending subgroup / character kernel, sorted
    found: int         # chi found / kernel index found
    expected: int      # chi expected / least admissible index


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    lam: int
    witness: StabilityWitness | None
    subgroups_checked: int

    def __bool__(self) -> bool:
        return self.stable


def _as_handle(group, subgroup) -> SubgroupHandle:
    if isinstance(subgroup, SubgroupHandle):
        return subgroup
    return SubgroupHandle(group, subgroup)


def _subgroup_prime(group: AbelianGroup, handle: SubgroupHandle) -> int | None:
    """The unique prime of a p-subgroup; None for the trivial subgroup."""
    seen = set()
    for x in handle.members:
        seen.update(prime_factors(group.element_order(x)))
    if not seen:
        return None
    if len(seen) > 1:
        raise PreconditionViolated(
            f"subgroup has elements of mixed prime orders {sorted(seen)}")
    return seen.pop()


def is_lambda_stable(fp: ActionFingerprint, gamma_p, lam: int) -> StabilityVerdict:
    """Check lambda-stability of a subgroup against the fingerprint.

    Condition (1): each subgroup's fixed set has the same Euler characteristic
    as the whole space.  Condition (2): each character on the normal space of
    the top fixed set has kernel of index > lambda.
    """
    if lam < 1:
        raise PreconditionViolated("lambda must be a positive integer")
    handle = _as_handle(fp.group, gamma_p)
    checked = 0
    for sub in subgroups(fp.group, within=handle):
        rec = fp.record(sub.members)
        checked += 1
        if rec.chi() != fp.chi:
            witness = StabilityWitness("chi", sub.sorted_members(),
                                       rec.chi(), fp.chi)
            return StabilityVerdict(False, lam, witness, checked)
    top = fp.record(handle.members)
    for ch in top.all_chars():
        if ch.index <= lam:
            witness = StabilityWitness("char", tuple(sorted(ch.kernel)),
                                       ch.index, lam + 1)
            return StabilityVerdict(False, lam, witness, checked)
    return StabilityVerdict(True, lam, None, checked)


# ---------------------------------------------------------------------------
# chi-core


class ChiCoreResult(SubgroupHandle):
    """Subgroup handle produced by `chi_core`, annotated with the arithmetic."""

    def __init__(self, parent, members, p: int | None, exponent: int,
                 index: int, bound: int):
        super().__init__(parent, members)
        self.p = p
        self.exponent = exponent
        self.index = index
        self.bound = bound


def chi_core(gamma_p, fp: ActionFingerprint) -> ChiCoreResult:
    """The chi-core of a p-subgroup: p^n-th powers plus trivially-acting
    elements, for the least n with p^(n+1) > 2 * sum of mod-p Betti numbers.

    For p beyond the torsion threshold the exponent is 0 and the core is the
    whole subgroup.  The index always obeys [G : core] <= p^(n * mu).
    """
    handle = _as_handle(fp.group, gamma_p)
    p = _subgroup_prime(fp.group, handle)
    if p is None:
        return ChiCoreResult(handle.parent, handle.members, None, 0, 1, 1)
    n = bounds.chi_core_exponent(p, fp.betti_p_sum(p))
    core = power_core(handle, n, p)
    trivial = [x for x in handle.sorted_members() if fp.acts_trivially(x)]
    out = SubgroupHandle.from_generators(
        fp.group, list(core.sorted_members()) + trivial)
    if not out.is_subset_of(handle):
        raise PreconditionViolated("chi-core escaped the input subgroup")
    index = handle.order // out.order
    bound = bounds.chi_core_index_bound(p, fp.betti_p_sum(p), fp.mu)
    assert index <= bound, "chi-core index exceeded p^(n*mu)"
    return ChiCoreResult(handle.parent, out.members, p, n, index, bound)


# ---------------------------------------------------------------------------
# descent


@dataclass(frozen=True)
class DescentStep:
    kernel: tuple
    index: int
    census_from: tuple
    census_to: tuple


@dataclass
class DescentTrace:
    p: int | None
    lam: int
    e_bound: int
    start: tuple
    final: tuple
    steps: tuple = ()
    warnings: tuple = ()
    verdict: StabilityVerdict | None = None

    @property
    def index(self) -> int:
        out = 1
        for step in self.steps:
            out *= step.index
        return out

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "lambda": self.lam,
            "e_bound": self.e_bound,
            "start_order": len(self.start),
            "final_order": len(self.final),
            "index": self.index,
            "steps": [{"index": s.index,
                       "kernel_order": len(s.kernel),
                       "census_from": list(s.census_from),
                       "census_to": list(s.census_to)} for s in self.steps],
            "warnings": list(self.warnings),
        }


def stable_descent(gamma_p, fp: ActionFingerprint, lam: int):
    """Descend through character kernels until the subgroup is lambda-stable.

    Each step replaces the subgroup by the largest kernel of index <= lambda
    on its normal space (ties broken by least member tuple).  The fixed-set
    census must strictly increase per step, so fewer than
    C(dim + k + 1, dim + 1) steps can occur; exceeding that raises
    DescentOverrun.  A chi violation cannot be repaired by descent and raises
    PreconditionViolated naming the subgroup.
    """
    if lam < 1:
        raise PreconditionViolated("lambda must be a positive integer")
    handle = _as_handle(fp.group, gamma_p)
    p = _subgroup_prime(fp.group, handle)
    k = fp.betti_p_sum(p) if p is not None else fp.betti_q_sum()
    e = bounds.chain_bound(fp.dim, k)
    steps: list[DescentStep] = []
    warnings: list[str] = []
    current = handle
    while True:
        verdict = is_lambda_stable(fp, current, lam)
        if verdict.stable:
            break
        w = verdict.witness
        if w.kind == "chi":
            raise PreconditionViolated(
                "Euler characteristic drifts on subgroup "
                f"{[list(x) for x in w.members]}: found {w.found}, expected "
                f"{w.expected}; descent only repairs character violations")
        rec = fp.record(current.members)
        violators = [ch for ch in rec.all_chars() if ch.index <= lam]
        choice = min(violators,
                     key=lambda ch: (-len(ch.kernel), tuple(sorted(ch.kernel))))
        if len(steps) + 1 >= e:
            raise DescentOverrun(
                f"descent would need {len(steps) + 1} steps; the census chain "
                f"bound allows fewer than {e}")
        nxt = SubgroupHandle(fp.group, choice.kernel)
        census_from = rec.census(fp.dim)
        census_to = fp.record(nxt.members).census(fp.dim)
        if not census_to > census_from:
            warnings.append(
                f"census did not increase at step {len(steps) + 1}: "
                f"{census_from} -> {census_to}")
        steps.append(DescentStep(tuple(sorted(choice.kernel)), choice.index,
                                 census_from, census_to))
        current = nxt
    trace = DescentTrace(p=p, lam=lam, e_bound=e,
                         start=handle.sorted_members(),
                         final=current.sorted_members(),
                         steps=tuple(steps), warnings=tuple(warnings),
                         verdict=verdict)
    assert handle.order % current.order == 0
    assert trace.index == handle.order // current.order
    return current, trace


# ---------------------------------------------------------------------------
# generic elements


@dataclass(frozen=True)
class GenericElementCertificate:
    element: tuple
    char_count: int
    char_bound: int
    union_size: int
    subgroup_order: int
    kernels_avoided: int

    def to_json(self) -> dict:
        return {
            "element": list(self.element),
            "char_count": self.char_count,
            "char_bound": self.char_bound,
            "union_size": self.union_size,
            "subgroup_order": self.subgroup_order,
            "kernels_avoided": self.kernels_avoided,
        }


def generic_element(gamma_p, fp: ActionFingerprint, lam: int):
    """An element of a lambda-stable p-subgroup outside every normal-space
    character kernel, so its fixed set equals the whole subgroup's.

    Requires lambda >= dim * (sum of mod-p Betti numbers): the kernels then
    have index >= lambda + 1 > the character count, so a counting argument
    guarantees their union is proper.  Returns (element, certificate).
    """
    handle = _as_handle(fp.group, gamma_p)
    p = _subgroup_prime(fp.group, handle)
    if p is None:
        cert = GenericElementCertificate(fp.group.identity, 0, 0, 1, 1, 0)
        return fp.group.identity, cert
    char_bound = fp.dim * fp.betti_p_sum(p)
    if lam < char_bound:
        raise PreconditionViolated(
            f"lambda={lam} below the character-count bound "
            f"dim * betti = {char_bound}")
    verdict = is_lambda_stable(fp, handle, lam)
    if not verdict.stable:
        w = verdict.witness
        raise PreconditionViolated(
            f"subgroup is not lambda-stable (witness kind={w.kind}, "
            f"found={w.found}, expected>={w.expected})")
    rec = fp.record(handle.members)
    kernels = [set(ch.kernel) for ch in rec.all_chars()]
    union: set = set()
    for ker in kernels:
        union |= ker
    count = rec.char_count()
    if count > char_bound:
        raise PreconditionViolated(
            f"fingerprint lists {count} normal characters, above the "
            f"admissible bound {char_bound}")
    if len(union) >= handle.order and kernels:
        raise ExhaustedSearch(
            "character kernels cover the whole subgroup; no generic element")
    for x in handle.sorted_members():
        if x not in union:
            cert = GenericElementCertificate(
                element=x, char_count=count, char_bound=char_bound,
                union_size=len(union), subgroup_order=handle.order,
                kernels_avoided=len(kernels))
            return x, cert
    raise ExhaustedSearch("no element outside the kernel union")


# ---------------------------------------------------------------------------
# stable subgroup of an abelian group


@dataclass
class StableSubgroupResult:
    """Result of the per-prime core-and-descent reduction.

    Iterable as (handle, index, bound) to match the operation's contract;
    the per-prime cores and descent traces remain available as fields.
    """

    handle: SubgroupHandle
    index: int
    bound: int
    cores: dict = field(default_factory=dict)
    traces: dict = field(default_factory=dict)
    parts: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.handle, self.index, self.bound))


def stable_subgroup(gamma, fp: ActionFingerprint, lam: int) -> StableSubgroupResult:
    """Find a lambda-stable subgroup of bounded index: per prime, take the
    chi-core of the p-part and descend it to stability, then recombine.

    The index is bounded by C_lambda (product of chi-core bounds over primes
    below the torsion threshold times lambda^e per prime <= lambda).
    """
    if lam < 1:
        raise PreconditionViolated("lambda must be a positive integer")
    handle = _as_handle(fp.group, gamma)
    primes = sorted({p for x in handle.members
                     for p in prime_factors(fp.group.element_order(x))})
    cores: dict = {}
    traces: dict = {}
    parts: dict = {}
    member_lists = []
    for p in primes:
        part = SubgroupHandle(fp.group, [
            x for x in handle.members
            if set(prime_factors(fp.group.element_order(x))) <= {p}])
        core = chi_core(part, fp)
        stable_p, trace = stable_descent(core, fp, lam)
        cores[p] = core
        traces[p] = trace
        parts[p] = stable_p
        member_lists.append(stable_p.sorted_members())
    combined = {fp.group.identity}
    for members in member_lists:
        combined = {fp.group.op(a, b) for a in combined for b in members}
    out = SubgroupHandle(fp.group, combined)
    assert handle.order % out.order == 0
    index = handle.order // out.order
    k_max = max((fp.betti_p_sum(p) for p in primes if p <= lam), default=0)
    betti_sums = {p: fp.betti_p_sum(p) for p in fp.betti_p}
    bound = bounds.c_lambda(lam, fp.dim, k_max, fp.mu,
                            fp.betti_q_sum(), betti_sums, fp.p0)
    assert index <= bound, "stable subgroup index exceeded C_lambda"
    return StableSubgroupResult(handle=out, index=index, bound=bound,
                                cores=cores, traces=traces, parts=parts)


# ---------------------------------------------------------------------------
# end-to-end pipeline


@dataclass(frozen=True)
class LedgerLine:
    name: str
    passed: bool
    detail: dict

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "detail": self.detail}


@dataclass
class Certificate13:
    """Self-contained certificate for the abelian fixed-point pipeline.

    Every ledger line is re-checkable from the fingerprint alone via
    `verify_certificate`; the pipeline itself builds the lines that way.
    """

    group_json: dict
    a_members: tuple
    g_members: tuple
    stable_members: tuple
    gamma: tuple
    per_prime: tuple           # dicts: p, gamma_p, e_p, part member tuples
    lam_chi: int
    b_sq: int
    kernel_bound: int
    c_lambda: int
    index_kernel: int
    index_stable: int
    index_total: int
    bound_total: int
    lines: tuple = ()

    def passed(self) -> bool:
        return bool(self.lines) and all(line.passed for line in self.lines)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "certificate",
            "group": self.group_json,
            "a_order": len(self.a_members),
            "g_members": sorted(list(x) for x in self.g_members),
            "stable_members": sorted(list(x) for x in self.stable_members),
            "gamma": list(self.gamma),
            "per_prime": [
                {"p": e["p"], "gamma_p": list(e["gamma_p"]), "e_p": e["e_p"],
                 "part": sorted(list(x) for x in e["part"])}
                for e in self.per_prime
            ],
            "lambda_chi": self.lam_chi,
            "b_sq": self.b_sq,
            "kernel_bound": self.kernel_bound,
            "c_lambda": self.c_lambda,
            "index_kernel": self.index_kernel,
            "index_stable": self.index_stable,
            "index_total": self.index_total,
            "bound_total": self.bound_total,
            "ledger": [line.to_json() for line in self.lines],
            "passed": self.passed(),
        }


def _check_no_odd_cohomology(fp: ActionFingerprint):
    """Raise OddCohomology unless odd Betti numbers vanish, mod-p equals
    rational Betti data for every relevant prime, and chi is positive."""
    for j in range(1, fp.dim + 1, 2):
        if fp.betti_q[j] != 0:
            raise OddCohomology(f"rational Betti number b_{j} = {fp.betti_q[j]} != 0")
    for p in fp.group.primes():
        if fp.betti_p[p] != fp.betti_q:
            raise OddCohomology(
                f"mod-{p} Betti numbers differ from rational ones "
                f"(torsion in homology)")
    if fp.chi <= 0:
        raise OddCohomology(
            f"Euler characteristic {fp.chi} is not positive, so the "
            f"stability threshold chi * dim degenerates")


def theorem13_pipeline(a: AbelianGroup, fp: ActionFingerprint) -> Certificate13:
    """End-to-end certified reduction for a finite abelian group acting on a
    space without odd cohomology.

    Steps: take the mod-3 homology kernel G; find its lambda-stable subgroup
    for lambda = chi * dim; pick per-prime generic elements; combine them into
    one element gamma whose fixed set equals the stable subgroup's.  Every
    claim lands in a ledger that `verify_certificate` re-checks from the
    fingerprint alone; any failing line raises LedgerFailure.
    """
    if a.key() != fp.group.key():
        raise PreconditionViolated("group does not match the fingerprint's")
    _check_no_odd_cohomology(fp)
    lam = fp.chi * fp.dim
    if lam < 1:
        raise OddCohomology("chi * dim < 1; nothing to stabilize")
    g_handle = fp.homology_kernel_handle()
    result = stable_subgroup(g_handle, fp, lam)
    stable = result.handle
    per_prime = []
    gamma = fp.group.identity
    orders = {}
    for p, part in sorted(result.parts.items()):
        gamma_p, cert = generic_element(part, fp, lam)
        orders[p] = fp.group.element_order(gamma_p)
        per_prime.append({"p": p, "gamma_p": gamma_p, "e_p": 0,
                          "part": part.sorted_members(),
                          "generic": cert})
        gamma = fp.group.op(gamma, gamma_p)
    total = 1
    for n in orders.values():
        total *= n
    for entry in per_prime:
        n_p = orders[entry["p"]]
        rest = total // n_p
        entry["e_p"] = rest * pow(rest, -1, n_p) if n_p > 1 else 0
    a_members = tuple(sorted(a.elements()))
    index_kernel = len(a_members) // g_handle.order
    index_total = len(a_members) // stable.order
    b_sq = fp.b_sq()
    kernel_bound = bounds.three_power(b_sq)
    cert = Certificate13(
        group_json=a.to_json(),
        a_members=a_members,
        g_members=g_handle.sorted_members(),
        stable_members=stable.sorted_members(),
        gamma=gamma,
        per_prime=tuple(per_prime),
        lam_chi=lam,
        b_sq=b_sq,
        kernel_bound=kernel_bound,
        c_lambda=result.bound,
        index_kernel=index_kernel,
        index_stable=result.index,
        index_total=index_total,
        bound_total=kernel_bound * result.bound,
    )
    ok, lines = verify_certificate(fp, cert)
    cert.lines = lines
    if not ok:
        failed = [line.to_json() for line in lines if not line.passed]
        raise LedgerFailure(f"certificate ledger failed: {failed}")
    return cert


def verify_certificate(fp: ActionFingerprint, cert: Certificate13):
    """Re-check every ledger line of a certificate from the fingerprint alone.

    Returns (all_passed, lines).  Never raises on a failing line; the caller
    decides whether failure is fatal.
    """
    lines: list[LedgerLine] = []
    group = fp.group

    odd = [fp.betti_q[j] for j in range(1, fp.dim + 1, 2)]
    no_odd = (all(b == 0 for b in odd)
              and all(fp.betti_p[p] == fp.betti_q for p in group.primes())
              and fp.chi >= 1)
    lines.append(LedgerLine("no-odd-cohomology", no_odd, {
        "odd_betti": odd, "chi": fp.chi}))

    kernel = fp.homology_kernel_handle()
    g_ok = (frozenset(cert.g_members) == kernel.members
            and cert.index_kernel * kernel.order == len(cert.a_members)
            and cert.index_kernel <= cert.kernel_bound
            and cert.kernel_bound == bounds.three_power(fp.b_sq()))
    lines.append(LedgerLine("homology-kernel", g_ok, {
        "index": cert.index_kernel, "bound": cert.kernel_bound}))

    stable = SubgroupHandle(group, cert.stable_members)
    lam = cert.lam_chi
    lam_ok = lam == fp.chi * fp.dim and lam >= 1
    stable_ok = lam_ok and stable.is_subset_of(kernel)
    part_orders = 1
    for entry in cert.per_prime:
        part = SubgroupHandle(group, entry["part"])
        part_orders *= part.order
        if not part.is_subset_of(stable):
            stable_ok = False
            continue
        verdict = is_lambda_stable(fp, part, lam) if lam >= 1 else None
        if verdict is None or not verdict.stable:
            stable_ok = False
    if part_orders != stable.order:
        stable_ok = False
    if cert.index_stable * stable.order != len(cert.g_members):
        stable_ok = False
    if cert.index_stable > cert.c_lambda:
        stable_ok = False
    lines.append(LedgerLine("stable-subgroup", stable_ok, {
        "lambda": lam, "index": cert.index_stable, "bound": cert.c_lambda}))

    generic_ok = True
    for entry in cert.per_prime:
        part = SubgroupHandle(group, entry["part"])
        gp = entry["gamma_p"]
        if gp not in part.members:
            generic_ok = False
            continue
        rec = fp.record(part.members)
        for ch in rec.all_chars():
            if gp in ch.kernel:
                generic_ok = False
        cyc = SubgroupHandle.from_generators(group, [gp])
        if not fp.record(cyc.members).same_fixed_set(rec):
            generic_ok = False
    lines.append(LedgerLine("generic-elements", generic_ok, {
        "primes": [entry["p"] for entry in cert.per_prime]}))

    crt_ok = gamma_in = cert.gamma in stable.members
    for entry in cert.per_prime:
        if group.scale(entry["e_p"], cert.gamma) != entry["gamma_p"]:
            crt_ok = False
    lines.append(LedgerLine("power-recovery", crt_ok, {
        "gamma": list(cert.gamma), "in_stable_subgroup": gamma_in}))

    cyc = SubgroupHandle.from_generators(group, [cert.gamma])
    rec_gamma = fp.record(cyc.members)
    rec_stable = fp.record(stable.members)
    fixed_ok = rec_gamma.same_fixed_set(rec_stable)
    lines.append(LedgerLine("fixed-set-equality", fixed_ok, {
        "gamma_shape": [list(s) for s in rec_gamma.shape()],
        "stable_shape": [list(s) for s in rec_stable.shape()]}))

    chi_ok = rec_stable.chi() == fp.chi
    lines.append(LedgerLine("euler-characteristic", chi_ok, {
        "found": rec_stable.chi(), "expected": fp.chi}))

    index_ok = (cert.index_total == cert.index_kernel * cert.index_stable
                and cert.bound_total == cert.kernel_bound * cert.c_lambda
                and cert.index_total <= cert.bound_total)
    lines.append(LedgerLine("final-index", index_ok, {
        "index": cert.index_total, "bound": cert.bound_total}))

    out = tuple(lines)
    return all(line.passed for line in out), out
