"""Named verification suites.

Each suite checks one family of exact claims over a deterministic corpus (or
over objects supplied by a scenario) and returns a SuiteResult whose counts
and failures are reproducible byte-for-byte from the parameters.  Failures
always carry a reproducer scenario no larger than the original input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import bounds, corpus, linmodel, simplicial, stability
from .errors import CapExceeded, EquifixError
from .groupcore import (
    AbelianGroup,
    SubgroupHandle,
    automorphisms,
    commuting_core,
    characteristic_core,
    power_core,
    subgroups,
)

SCHEMA_VERSION = 1


@dataclass
class SuiteResult:
    name: str
    passed: bool
    counts: dict
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "counts": dict(sorted(self.counts.items())),
            "failures": self.failures,
            "details": dict(sorted(self.details.items())),
        }


def _reproducer(suite: str, params: dict, objects: dict | None = None) -> dict:
    """Scenario that re-runs ``suite`` with the caller's own parameters.

    Every field is no larger than in the triggering scenario: the id is a
    single character, the suite list has exactly one entry, and the params
    are the caller's params verbatim.  For object-backed runs the
    command-line layer narrows the attached objects to the failing item
    (failure records carry its index); corpus-backed reproducers regenerate
    the corpus from the seed, and the recorded index can be pasted in as a
    ``*_index`` param to pin the re-run to the one failing case.
    """
    return {
        "schema_version": SCHEMA_VERSION,
        "id": "r",
        "objects": objects or {},
        "suites": [{"name": suite, "params": params}],
    }


def _slice_one(items, params: dict, key: str):
    """Honor an index pin: restrict a corpus to the single named item.

    Returns the (possibly sliced) items plus the enumeration offset, so
    failure records keep their original corpus indices.
    """
    pin = params.get(key)
    if pin is None:
        return items, 0
    if not isinstance(pin, int) or not 0 <= pin < len(items):
        raise EquifixError(f"{key} {pin!r} out of range for {len(items)} items")
    return items[pin:pin + 1], pin


SUITES: dict = {}


def suite(name: str):
    def register(fn):
        SUITES[name] = fn
        fn.suite_name = name
        return fn
    return register


def run_suite(name: str, params: dict | None = None,
              objects: dict | None = None) -> SuiteResult:
    if name not in SUITES:
        raise EquifixError(f"unknown suite {name!r}")
    return SUITES[name](params or {}, objects or {})


def _resolve_models(params: dict, objects: dict, key: str = "objects"):
    name = params.get(key)
    if name is None:
        return None
    if name not in objects:
        raise EquifixError(f"unresolved object reference {name!r}")
    return objects[name]


# ---------------------------------------------------------------------------
# 1. dimension formula on elementary abelian sphere models


@suite("borel")
def borel_suite(params: dict, objects: dict) -> SuiteResult:
    reps = _resolve_models(params, objects)
    if reps is None:
        reps = corpus.elementary_sphere_family(
            params.get("seed", 0), params.get("count", 200),
            tuple(params.get("primes", (2, 3, 5))),
            params.get("max_rank", 3), params.get("max_dim", 9))
    reps, offset = _slice_one(reps, params, "model_index")
    repro = _reproducer("borel", dict(params))
    failures = []
    for idx, rep in enumerate(reps, start=offset):
        report = linmodel.borel_check(rep)
        if not report.passed:
            failures.append({
                "model_index": idx, "group": list(rep.group.factors),
                "lhs": report.lhs, "rhs": report.rhs,
                "reproducer": repro,
            })
    return SuiteResult("borel", not failures, {"models": len(reps)}, failures)


# ---------------------------------------------------------------------------
# 2. fixed-point trace equalities


@suite("lefschetz")
def lefschetz_suite(params: dict, objects: dict) -> SuiteResult:
    actions = _resolve_models(params, objects)
    if actions is None:
        actions = corpus.lefschetz_corpus(
            params.get("seed", 1), params.get("count", 50),
            params.get("max_simplices", 200))
    actions, offset = _slice_one(actions, params, "action_index")
    repro = _reproducer("lefschetz", dict(params))
    failures = []
    elements = 0
    for idx, action in enumerate(actions, start=offset):
        for x in sorted(action.group.elements()):
            elements += 1
            try:
                simplicial.lefschetz_number(action, x)
            except AssertionError as exc:
                failures.append({
                    "action_index": idx, "element": list(x),
                    "error": str(exc), "reproducer": repro,
                })
    return SuiteResult("lefschetz", not failures,
                       {"actions": len(actions), "elements": elements},
                       failures)


# ---------------------------------------------------------------------------
# 3. mod-p fixed-set inequalities


@suite("smith")
def smith_suite(params: dict, objects: dict) -> SuiteResult:
    actions = _resolve_models(params, objects)
    if actions is None:
        actions = corpus.smith_corpus(
            params.get("seed", 2), params.get("count", 50),
            params.get("max_simplices", 200))
    actions, offset = _slice_one(actions, params, "action_index")
    repro = _reproducer("smith", dict(params))
    failures = []
    acyclic = 0
    for idx, action in enumerate(actions, start=offset):
        p = action.group.primes()[0] if action.group.primes() else 2
        total = simplicial.betti(action.complex, p)
        fixed = simplicial.fixed_subcomplex(action)
        fixed_betti = simplicial.betti(fixed, p) if fixed.simplices else None
        fixed_sum = sum(fixed_betti.values) if fixed_betti else 0
        if fixed_sum > sum(total.values):
            failures.append({"action_index": idx, "kind": "betti-sum",
                             "fixed": fixed_sum, "total": sum(total.values),
                             "reproducer": repro})
        is_acyclic = (total.values[0] == 1
                      and all(b == 0 for b in total.values[1:]))
        if is_acyclic:
            acyclic += 1
            if not fixed.simplices:
                failures.append({"action_index": idx, "kind": "empty-fixed",
                                 "reproducer": repro})
            elif (fixed_betti.values[0] != 1
                  or any(b != 0 for b in fixed_betti.values[1:])):
                failures.append({"action_index": idx, "kind": "fixed-not-acyclic",
                                 "betti": list(fixed_betti.values),
                                 "reproducer": repro})
    return SuiteResult("smith", not failures,
                       {"actions": len(actions), "acyclic": acyclic}, failures)


# ---------------------------------------------------------------------------
# 4. power-core containment oracle


def _bounded_index_subgroups(group: AbelianGroup, max_index: int):
    """All subgroups of index <= max_index, as (index, member frozenset)
    pairs, via annihilators of bounded subgroups of the character group
    (same factor type).

    The pairing of a character (exponent tuple e) with an element x is the
    integer sum(e_i * x_i * E/m_i) mod E, where E is the group exponent; the
    annihilator of a character subgroup S is a subgroup of index |S|, and
    every index-bounded subgroup arises this way exactly once.  Annihilators
    are carried incrementally: adjoining a generator x to S intersects the
    annihilator with x's pairing kernel.  Extension candidates are restricted
    to characters of order <= max_index, which every bounded character
    subgroup consists of.
    """
    els = group.elements()
    exponent = math.lcm(*group.factors) if group.factors else 1
    weights = [exponent // m for m in group.factors]

    def char_order(ch):
        out = 1
        for e, mfac in zip(ch, group.factors):
            out = math.lcm(out, mfac // math.gcd(e, mfac))
        return out

    universe = [ch for ch in els if char_order(ch) <= max_index]
    cycles = {}
    for x in universe:
        cyc = [x]
        while cyc[-1] != group.identity:
            cyc.append(group.op(cyc[-1], x))
        cycles[x] = cyc
    trivial = frozenset({group.identity})
    seen = {trivial: frozenset(els)}
    frontier = [trivial]
    while frontier:
        new = []
        for members in frontier:
            if len(members) == max_index:
                continue
            ann = seen[members]
            for x in universe:
                if x in members:
                    continue
                # in an abelian group the closure of S and x is the coset
                # union S + <x>
                grown = {group.op(s, q) for s in members for q in cycles[x]}
                if len(grown) <= max_index:
                    fz = frozenset(grown)
                    if fz not in seen:
                        seen[fz] = frozenset(
                            v for v in ann
                            if sum(e * vi * w for e, vi, w
                                   in zip(x, v, weights)) % exponent == 0)
                        new.append(fz)
        frontier = new
    return sorted(((len(dual), ann) for dual, ann in seen.items()),
                  key=lambda pair: (pair[0], sorted(pair[1])))


@suite("power-core")
def power_core_suite(params: dict, objects: dict) -> SuiteResult:
    max_order = params.get("max_order", 512)
    max_n = params.get("max_n", 3)
    failures = []
    if params.get("group") is not None:
        groups = [AbelianGroup(list(params["group"]))]
    else:
        groups = corpus.p_group_family(max_order)
    repro = _reproducer("power-core", dict(params))
    checked = 0
    cross_checked = 0
    for group in groups:
        p = group.primes()[0]
        r = group.rank
        cores = {}
        for n in range(0, max_n + 1):
            core = power_core(group, n)
            checked += 1
            if group.order() % core.order or \
                    group.order() // core.order > p ** (n * r):
                failures.append({
                    "group": list(group.factors), "n": n,
                    "kind": "index-bound",
                    "index": group.order() // core.order,
                    "reproducer": repro})
                continue
            if core.order == 1 or n == 0:
                # trivial core lies in everything; index <= p^0 means the
                # whole group, which certainly contains the core
                continue
            cores[n] = core
        # enumerate once, at the largest exponent with a nontrivial core,
        # and slice by index for the smaller ones
        bounded = (_bounded_index_subgroups(group, p ** max(cores))
                   if cores else [])
        for n, core in cores.items():
            for index, members in bounded:
                if index > p ** n:
                    continue
                if not core.members <= members:
                    failures.append({
                        "group": list(group.factors), "n": n,
                        "kind": "containment",
                        "subgroup": [list(x) for x in sorted(members)],
                        "reproducer": repro})
        if group.order() <= 32:
            # validate the bounded enumeration against the full lattice
            # (skipped when the lattice walk itself exceeds its budget)
            try:
                full_handles = subgroups(group, cap=20_000)
            except CapExceeded:
                full_handles = None
            if full_handles is not None:
                cross_checked += 1
                full = {h.members for h in full_handles
                        if group.order() // h.order <= p ** max_n}
                dualed = {members for _, members
                          in _bounded_index_subgroups(group, p ** max_n)}
                if full != dualed:
                    failures.append({
                        "group": list(group.factors),
                        "kind": "dual-enumeration",
                        "reproducer": repro})
    return SuiteResult("power-core", not failures,
                       {"groups": len(groups), "cores": checked,
                        "lattice_cross_checks": cross_checked}, failures)


# ---------------------------------------------------------------------------
# 5. chi-core + descent engine


@suite("descent")
def descent_suite(params: dict, objects: dict) -> SuiteResult:
    cases = _resolve_models(params, objects)
    if cases is None:
        cases = corpus.descent_corpus(params.get("seed", 3),
                                      params.get("count", 500))
    cases, offset = _slice_one(cases, params, "case_index")
    repro = _reproducer("descent", dict(params))
    failures = []
    exhaustive = 0
    for idx, case in enumerate(cases, start=offset):
        fp, p, lam = case["fp"], case["p"], case["lam"]
        where = {"case_index": idx, "group": list(fp.group.factors),
                 "p": p, "lam": lam, "source": fp.source}
        gamma_p = fp.group.p_part_subgroup(p)
        try:
            core = stability.chi_core(gamma_p, fp)
            final, trace = stability.stable_descent(core.members, fp, lam)
        except EquifixError as exc:
            failures.append({**where, "kind": type(exc).__name__,
                             "error": str(exc), "reproducer": repro})
            continue
        if len(trace.steps) >= trace.e_bound:
            failures.append({**where, "kind": "step-bound",
                             "steps": len(trace.steps),
                             "bound": trace.e_bound, "reproducer": repro})
        if trace.index > lam ** trace.e_bound:
            failures.append({**where, "kind": "index-bound",
                             "index": trace.index, "reproducer": repro})
        verdict = stability.is_lambda_stable(fp, final, lam)
        if not verdict.stable:
            failures.append({
                **where, "kind": "not-stable",
                "witness_kind": verdict.witness.kind,
                "witness_subgroup": [list(x)
                                     for x in sorted(verdict.witness.members)],
                "reproducer": repro})
            continue
        if fp.group.order() <= 256:
            exhaustive += 1
            rec_final = fp.record(final)
            for sub in subgroups(fp.group, within=final):
                if final.order // sub.order > lam:
                    continue
                if not stability.precedes(rec_final, fp.record(sub)):
                    failures.append({
                        **where, "kind": "precedes",
                        "subgroup": [list(x) for x in sub.sorted_members()],
                        "reproducer": repro})
    return SuiteResult("descent", not failures,
                       {"cases": len(cases), "exhaustive": exhaustive},
                       failures)


# ---------------------------------------------------------------------------
# 6–7. disk and sphere pipelines with brute-force oracles


def _gamma_oracle(rep, group, handle, gamma, sweep_order: int):
    """Confirm the fixed set of `gamma` equals that of `handle`.

    The element-wise check is complete: any subgroup whose fixed set equals
    X^gamma consists of elements each fixing X^gamma, so it lies in the
    maximal such subgroup, which is computed here directly.  For groups of
    order up to `sweep_order` the literal subgroup sweep runs as well.
    """
    vb_gamma = rep.vanishing_blocks(gamma)
    vb_handle = rep.vanishing_blocks(handle)
    if vb_gamma != vb_handle:
        return "fixed-set-mismatch"
    maximal = frozenset(
        x for x in group.elements()
        if set(rep.vanishing_blocks(x)) >= set(vb_gamma))
    if handle.members != maximal:
        return "not-maximal"
    if group.order() <= sweep_order:
        for sub in subgroups(group):
            vb = rep.vanishing_blocks(sub)
            if vb == vb_gamma and not sub.members <= handle.members:
                return "subgroup-escape"
    return None


@suite("disk")
def disk_suite(params: dict, objects: dict) -> SuiteResult:
    pairs = _resolve_models(params, objects)
    if pairs is None:
        pairs = corpus.disk_corpus(params.get("seed", 4),
                                   params.get("max_order", 200),
                                   params.get("max_dim", 7))
    pairs = [item if isinstance(item, tuple) else (item.rep.group, item)
             for item in pairs]
    pairs, offset = _slice_one(pairs, params, "pair_index")
    repro = _reproducer("disk", dict(params))
    sweep_order = params.get("sweep_order", 32)
    failures = []
    carrying = 0
    skipped = 0
    for idx, (group, model) in enumerate(pairs, start=offset):
        where = {"pair_index": idx, "group": list(group.factors)}
        try:
            handle, cert = linmodel.disk_theorem(group, model)
        except (EquifixError, AssertionError) as exc:
            failures.append({**where, "kind": type(exc).__name__,
                             "error": str(exc), "reproducer": repro})
            continue
        if cert.f_k % cert.index:
            failures.append({**where, "kind": "divisibility",
                             "index": cert.index, "f_k": cert.f_k,
                             "reproducer": repro})
        if model.chi_fixed(handle) != 1:
            failures.append({**where, "kind": "euler",
                             "reproducer": repro})
        if cert.gamma is not None:
            carrying += 1
            verdict = _gamma_oracle(model.rep, group, handle, cert.gamma,
                                    sweep_order)
            if verdict is not None:
                failures.append({**where, "kind": verdict,
                                 "gamma": list(cert.gamma),
                                 "reproducer": repro})
        else:
            skipped += 1
            bad = [s for s in cert.steps if s.skipped and s.fixed_dim_part > 2]
            if bad or not any(s.skipped for s in cert.steps):
                failures.append({**where, "kind": "skip-witness",
                                 "reproducer": repro})
    return SuiteResult("disk", not failures,
                       {"pairs": len(pairs), "gamma_carrying": carrying,
                        "skip_branch": skipped}, failures)


@suite("sphere")
def sphere_suite(params: dict, objects: dict) -> SuiteResult:
    pairs = _resolve_models(params, objects)
    if pairs is None:
        pairs = corpus.sphere_corpus(params.get("seed", 5),
                                     params.get("max_order", 200),
                                     params.get("max_m", 3))
    pairs = [item if isinstance(item, tuple) else (item.rep.group, item)
             for item in pairs]
    pairs, offset = _slice_one(pairs, params, "pair_index")
    repro = _reproducer("sphere", dict(params))
    sweep_order = params.get("sweep_order", 32)
    failures = []
    branches: dict = {}
    for idx, (group, model) in enumerate(pairs, start=offset):
        where = {"pair_index": idx, "group": list(group.factors)}
        try:
            handle, cert = linmodel.sphere_theorem(group, model)
        except (EquifixError, AssertionError) as exc:
            failures.append({**where, "kind": type(exc).__name__,
                             "error": str(exc), "reproducer": repro})
            continue
        branches[cert.branch] = branches.get(cert.branch, 0) + 1
        if cert.divisor % cert.index:
            failures.append({**where, "kind": "divisibility",
                             "index": cert.index, "divisor": cert.divisor,
                             "reproducer": repro})
        if cert.fixed_dim_core < 1:
            failures.append({**where, "kind": "two-points",
                             "reproducer": repro})
        if cert.gamma is not None:
            verdict = _gamma_oracle(model.rep, group, handle, cert.gamma,
                                    sweep_order)
            if verdict is not None:
                failures.append({**where, "kind": verdict,
                                 "gamma": list(cert.gamma),
                                 "reproducer": repro})
    return SuiteResult("sphere", not failures,
                       {"pairs": len(pairs), **branches}, failures)


# ---------------------------------------------------------------------------
# 8. characteristic cores and torsion-fixing automorphisms


def _automorphism_battery(group: AbelianGroup, rng: corpus.Rng):
    try:
        return automorphisms(group, cap=20_000), True
    except CapExceeded:
        gens = corpus.aut_generators(group)
        battery = list(gens)
        for _ in range(25):
            word = corpus.Rng(rng.next_u64())
            alpha = gens[word.randrange(len(gens))]
            for _ in range(word.randint(1, 4)):
                alpha = alpha.compose(gens[word.randrange(len(gens))])
            battery.append(alpha)
        return battery, False


@suite("characteristic")
def characteristic_suite(params: dict, objects: dict) -> SuiteResult:
    max_order = params.get("max_order", 81)
    max_index = params.get("max_index", 4)
    rng = corpus.Rng(params.get("seed", 6))
    failures = []
    pairs = 0
    full_aut = 0
    b_orders = 0
    if params.get("group") is not None:
        family = [AbelianGroup(list(params["group"]))]
    else:
        family = corpus.p_group_family(max_order)
    repro = _reproducer("characteristic", dict(params))
    for group in family:
        battery, complete = _automorphism_battery(group, rng)
        full_aut += int(complete)
        d = group.rank
        for m, members in _bounded_index_subgroups(group, max_index):
            q0 = SubgroupHandle(group, members)
            pairs += 1
            core = characteristic_core(group, q0)
            if not core.members <= q0.members:
                failures.append({"group": list(group.factors),
                                 "kind": "not-inside",
                                 "reproducer": repro})
                continue
            if q0.order // core.order > math.factorial(m) ** d:
                failures.append({"group": list(group.factors),
                                 "kind": "index-bound", "m": m,
                                 "index": q0.order // core.order,
                                 "reproducer": repro})
            for alpha in battery:
                if {alpha.apply(x) for x in core.members} != set(core.members):
                    failures.append({"group": list(group.factors),
                                     "kind": "not-characteristic",
                                     "reproducer": repro})
                    break
        report = commuting_core(AbelianGroup([]), group, [])
        b_orders += 1
        q = group.primes()[0]
        bb = report.b_order
        while bb % q == 0:
            bb //= q
        if bb != 1:
            failures.append({"group": list(group.factors),
                             "kind": "torsion-aut-order",
                             "b_order": report.b_order,
                             "reproducer": repro})
    return SuiteResult("characteristic", not failures,
                       {"pairs": pairs, "groups_full_aut": full_aut,
                        "torsion_aut_checks": b_orders}, failures)


# ---------------------------------------------------------------------------
# 9. mod-3 injectivity on integer matrix groups


@suite("minkowski")
def minkowski_suite(params: dict, objects: dict) -> SuiteResult:
    from .exact import mod_reduction_injective
    groups = _resolve_models(params, objects)
    if groups is None:
        groups = corpus.matrix_group_corpus()
    failures = []
    for name, elements in groups:
        injective, witness = mod_reduction_injective(elements, 3)
        if not injective:
            failures.append({"group": name, "kind": "mod3-collision",
                             "witness": witness,
                             "reproducer": _reproducer("minkowski", {})})
    control_inj, _ = mod_reduction_injective(corpus.plus_minus_identity(), 2)
    if control_inj:
        failures.append({"group": "plus-minus-identity",
                         "kind": "mod2-control-passed",
                         "reproducer": _reproducer("minkowski", {})})
    return SuiteResult("minkowski", not failures,
                       {"groups": len(groups), "orders_min":
                        min(len(e) for _, e in groups),
                        "orders_max": max(len(e) for _, e in groups)},
                       failures)


# ---------------------------------------------------------------------------
# 10. bound formulas, dual evaluation


def _f_alt(k: int) -> int:
    if k < 0:
        return 1
    value = 1 << k
    p = 3
    while p <= k:
        if all(p % d for d in range(2, p)):
            value *= p ** (k // p)
        p += 2
    return value


def _chain_bound_alt(m: int, k: int) -> int:
    """Count (d_0..d_m) >= 0 with sum <= k by explicit prefix recursion."""
    def count(slots: int, budget: int) -> int:
        if slots == 0:
            return 1
        return sum(count(slots - 1, budget - first)
                   for first in range(budget + 1))
    return count(m + 1, k)


def _c_lambda_alt(lam, m, k_max, mu, betti_sum_q, betti_sums, p0) -> int:
    limit = max(p0, 2 * betti_sum_q + 1)
    total = 1
    for p in range(2, limit + 1):
        if any(p % d == 0 for d in range(2, p)):
            continue
        sum_p = betti_sums.get(p, betti_sum_q)
        n = 0
        while p ** (n + 1) <= 2 * sum_p:
            n += 1
        total *= p ** (n * mu)
        if p <= lam:
            total *= lam ** _chain_bound_alt(m, k_max)
    return total


@suite("bounds")
def bounds_suite(params: dict, objects: dict) -> SuiteResult:
    failures = []
    for k in range(0, 31):
        if not bounds.divisor_check(k):
            failures.append({"kind": "f-divisor", "k": k,
                             "reproducer": _reproducer("bounds", {})})
        if bounds.f(k) != _f_alt(k):
            failures.append({"kind": "f-dual", "k": k,
                             "reproducer": _reproducer("bounds", {})})
    for k in range(-10, 31):
        if bounds.f(k) > bounds.f(k + 1):
            failures.append({"kind": "f-monotone", "k": k,
                             "reproducer": _reproducer("bounds", {})})
    enumerated = 0
    for m in range(0, 9):
        for k in range(0, 9):
            enumerated += 1
            if bounds.chain_bound(m, k) != _chain_bound_alt(m, k):
                failures.append({"kind": "chain-bound", "m": m, "k": k,
                                 "reproducer": _reproducer("bounds", {})})
    for m in range(0, 5):
        for r in range(1, 5):
            if bounds.k_sphere_bound(m, r) > bounds.k_sphere_bound(m + 1, r) \
                    or bounds.k_sphere_bound(m, r) > bounds.k_sphere_bound(m, r + 1):
                failures.append({"kind": "k-sphere-monotone", "m": m, "r": r,
                                 "reproducer": _reproducer("bounds", {})})
    ledger_cases = [
        (1, 2, 1, 1, 1, {2: 1}, 2),
        (2, 2, 2, 2, 2, {2: 2, 3: 2}, 2),
        (3, 4, 2, 2, 2, {2: 2}, 2),
        (6, 3, 4, 3, 4, {2: 4, 3: 2, 5: 1}, 2),
    ]
    dual_evaluations = 0
    for lam, m, k_max, mu, bq, per_p, p0 in ledger_cases:
        dual_evaluations += 1
        ours = bounds.c_lambda(lam, m, k_max, mu, bq, per_p, p0)
        alt = _c_lambda_alt(lam, m, k_max, mu, bq, per_p, p0)
        if ours != alt:
            failures.append({"kind": "c-lambda-dual", "lam": lam,
                             "ours": ours, "alt": alt,
                             "reproducer": _reproducer("bounds", {})})
    for m in range(0, 5):
        if bounds.even_sphere_divisor(m) != 2 ** (m + 1) * _f_alt(m - 1):
            failures.append({"kind": "even-sphere-divisor", "m": m,
                             "reproducer": _reproducer("bounds", {})})
    ledger = bounds.misc_bounds(s=2, k=2, n=1, b=1, m=2, r=2, d=2,
                                core_index=3, fk=5)
    replay = bounds.misc_bounds(s=2, k=2, n=1, b=1, m=2, r=2, d=2,
                                core_index=3, fk=5)
    if ledger.to_json() != replay.to_json():
        failures.append({"kind": "ledger-replay",
                         "reproducer": _reproducer("bounds", {})})
    return SuiteResult("bounds", not failures,
                       {"chain_bound_grid": enumerated,
                        "c_lambda_dual": dual_evaluations}, failures)


# ---------------------------------------------------------------------------
# 11. end-to-end certificate pipeline


@suite("pipeline")
def pipeline_suite(params: dict, objects: dict) -> SuiteResult:
    fps = _resolve_models(params, objects)
    if fps is None:
        fps = corpus.pipeline_corpus(params.get("seed", 7),
                                     params.get("count", 100))
    failures = []
    for idx, fp in enumerate(fps):
        repro = _reproducer("pipeline", {
            "seed": params.get("seed", 7), "case_index": idx,
            "group": list(fp.group.factors), "source": fp.source})
        try:
            cert = stability.theorem13_pipeline(fp.group, fp)
        except EquifixError as exc:
            failures.append({"case_index": idx, "kind": type(exc).__name__,
                             "error": str(exc), "reproducer": repro})
            continue
        ok, lines = stability.verify_certificate(fp, cert)
        if not ok:
            failures.append({
                "case_index": idx, "kind": "ledger",
                "lines": [line.to_json() for line in lines if not line.passed],
                "reproducer": repro})
        if cert.index_total > cert.bound_total:
            failures.append({"case_index": idx, "kind": "final-bound",
                             "index": cert.index_total,
                             "bound": cert.bound_total, "reproducer": repro})
    return SuiteResult("pipeline", not failures, {"fingerprints": len(fps)},
                       failures)


# ---------------------------------------------------------------------------
# human-readable statements for the explain subcommand


EXPLANATIONS: dict = {
    "borel": "For an elementary abelian p-group on the sphere of a real "
             "representation, n - n(G) equals the sum of n(H) - n(G) over "
             "the index-p subgroups H, where n(H) is the fixed-sphere "
             "dimension (exact integer identity).",
    "lefschetz": "For a good simplicial action, the signed count of fixed "
                 "simplices, the alternating trace on rational homology, and "
                 "the Euler characteristic of the fixed subcomplex agree for "
                 "every group element.",
    "smith": "For a p-group action, the total mod-p Betti number of the "
             "fixed subcomplex is at most that of the complex; on a mod-p "
             "acyclic complex the fixed subcomplex is nonempty and mod-p "
             "acyclic.",
    "power-core": "The subgroup of p^n-th powers of an abelian p-group lies "
                  "inside every subgroup of index at most p^n, and its own "
                  "index is at most p^(n*rank).",
    "descent": "Starting from the chi-core, repeatedly replacing the "
               "subgroup by the kernel of a small-index normal character "
               "terminates within the census chain bound and lands on a "
               "lambda-stable subgroup whose fixed-set components extend to "
               "components of every bounded-index subgroup's fixed set.",
    "disk": "A finite abelian group acting linearly on a disk of dimension n "
            "has a subgroup of index dividing f([(n-3)/2]) whose fixed disk "
            "is the fixed set of a single element (contractible low-"
            "dimensional prime parts are skipped with a recorded witness).",
    "sphere": "A finite abelian group acting linearly on an even sphere "
              "S^(2m) has a subgroup of index dividing 2^(m+1)*f(m-1) fixing "
              "at least two points.",
    "characteristic": "The orbit-invariant core of a bounded-index subgroup "
                      "of an abelian q-group is characteristic with index at "
                      "most (M!)^d below it, and the automorphisms fixing "
                      "the q-torsion pointwise form a q-group.",
    "minkowski": "Reduction of integer matrices mod 3 is injective on every "
                 "finite matrix group; mod 2 it fails already on {I, -I}.",
    "bounds": "The closed-form constants (f, chain bound, per-prime "
              "stability products, sphere divisors) are exact big integers; "
              "each is recomputed along an independent second path.",
    "pipeline": "For an action with no odd cohomology, passing to the mod-3 "
                "homology kernel, then the lambda-stable subgroup, then a "
                "combined generic element yields a certified subgroup of "
                "index at most 3^b * C_lambda whose fixed set is that of "
                "one element; every certificate line re-verifies from the "
                "fingerprint alone.",
}
