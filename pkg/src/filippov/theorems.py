"""Machine checks of the structural theorems on a concrete algebra.

Every check reports ``pass``, ``fail``, ``vacuous`` (hypothesis never met) or
``skipped`` (needs a lattice scan the field or budget does not allow).  A
failure carries counterexample bundles: the algebra plus the witnesses.  A
failure means a bug here, not new mathematics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    NLieAlgebra,
    center,
    derived_product,
    dot,
    image_in_quotient,
    is_abelian_embedded,
    is_ideal,
    quotient,
    restrict,
    validate_jacobi,
)
from .errors import UnsupportedError
from .fileio import subspace_json, to_dict, vector_json
from .lattice import (
    DEFAULT_BUDGET,
    LatticeBudget,
    check_budget,
    enumerate_subalgebras,
    frattini,
    maximal_subalgebras,
    minimal_elements,
    subspaces_within,
)
from .linalg import Subspace
from .repmod import is_ideal_in, verify_subnormal_chain
from .series import (
    all_string_derivations_nilpotent,
    is_k_nilpotently_embedded,
    is_k_solubly_embedded,
    is_nilpotent,
    is_soluble,
    k_radical,
)

ITEMS = ("jacobi", "engel", "maximal_ideals", "frattini", "bai", "subnormal_frattini",
         "frattini_embedding", "complements", "trivial", "radical")
LATTICE_ITEMS = frozenset(ITEMS) - {"jacobi", "engel"}


@dataclass
class CheckResult:
    name: str
    status: str
    instances: int = 0
    detail: str = ""
    counterexamples: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "instances": self.instances,
                "detail": self.detail, "counterexamples": self.counterexamples}


@dataclass
class SuiteReport:
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def by_name(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def _bundle(alg: NLieAlgebra, **witnesses) -> dict:
    w = {}
    for k, v in witnesses.items():
        if isinstance(v, Subspace):
            w[k] = subspace_json(v)
        elif isinstance(v, tuple) and v and not isinstance(v[0], (tuple, list)):
            w[k] = vector_json(v)
        else:
            w[k] = v
    return {"algebra": to_dict(alg), "witnesses": w}


def _verdict(name: str, instances: int, bad: list, detail: str = "") -> CheckResult:
    if bad:
        return CheckResult(name, "fail", instances, detail, bad)
    return CheckResult(name, "pass" if instances else "vacuous", instances, detail)


def _local_quotient(alg: NLieAlgebra, U: Subspace, K: Subspace) -> NLieAlgebra:
    """``U/K`` as a standalone algebra (``K`` an ideal of ``U``)."""
    sub = restrict(alg, U)
    Kl = Subspace.span(alg.field, U.dim, [U.coordinates(v) for v in K.basis])
    return quotient(sub, Kl)[0]


class _Lattice:
    """Scans shared by the enumeration-dependent checks, computed on demand."""

    def __init__(self, alg: NLieAlgebra, budget: LatticeBudget):
        self.alg = alg
        self.budget = budget
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def subalgebras(self):
        return self._get("sub", lambda: enumerate_subalgebras(self.alg, self.budget))

    @property
    def ideals(self):
        return self._get("id", lambda: [s for s in self.subalgebras if is_ideal(self.alg, s)])

    @property
    def maximals(self):
        return self._get("max", lambda: maximal_subalgebras(self.alg, self.budget, self.subalgebras))

    @property
    def phi(self):
        return self._get("phi", lambda: frattini(self.alg, self.budget, self.maximals))

    def subnormal(self, depth: int = 3):
        """Subalgebras joined to ``L`` by an ideal chain with at most ``depth`` steps."""
        def scan():
            levels = [[self.alg.full]]
            found = {self.alg.full: (self.alg.full,)}
            for _ in range(depth):
                nxt = []
                for U in self.subalgebras:
                    if U in found:
                        continue
                    for W in levels[-1]:
                        if U < W and is_ideal_in(self.alg, U, W):
                            found[U] = (U,) + found[W]
                            nxt.append(U)
                            break
                levels.append(nxt)
            return found
        return self._get(("subn", depth), scan)


def check_jacobi(alg: NLieAlgebra) -> CheckResult:
    rep = validate_jacobi(alg, fail_fast=True)
    if rep.ok:
        return CheckResult("jacobi", "pass", rep.checked)
    v = rep.violations[0]
    bundle = _bundle(alg, x=[k + 1 for k in v.x], y=[k + 1 for k in v.y], defect=vector_json(v.defect))
    return CheckResult("jacobi", "fail", rep.checked, f"defect at x={[k + 1 for k in v.x]} "
                       f"y={[k + 1 for k in v.y]}: {vector_json(v.defect)}", [bundle])


def check_engel(alg: NLieAlgebra, seed: int) -> CheckResult:
    """Nilpotent iff every ``D(x)`` is nilpotent (both verdicts)."""
    nil = is_nilpotent(alg)
    verdict = all_string_derivations_nilpotent(alg, seed=seed)
    bad = []
    if nil != bool(verdict):
        bundle = _bundle(alg, nilpotent=nil, generator=verdict.generator, sampled=verdict.sampled)
        if verdict.witness is not None:
            bundle["witnesses"]["string"] = [vector_json(v) for v in verdict.witness]
        bad.append(bundle)
    return _verdict("engel", 1, bad, f"nilpotent={nil} generator={verdict.generator} "
                    f"sampled={verdict.sampled}")


def check_maximal_ideals(alg: NLieAlgebra, lat: _Lattice) -> CheckResult:
    """All maximal subalgebras ideals => nilpotent, and conversely."""
    all_ideals = all(is_ideal(alg, M) for M in lat.maximals)
    nil = is_nilpotent(alg)
    bad = []
    if all_ideals and not nil:
        bad.append(_bundle(alg, maximals=[subspace_json(M) for M in lat.maximals]))
    if nil and not all_ideals:
        M = next(M for M in lat.maximals if not is_ideal(alg, M))
        bad.append(_bundle(alg, non_ideal_maximal=M))
    detail = f"{len(lat.maximals)} maximal subalgebras, all ideals: {all_ideals}"
    if not all_ideals and not nil:
        return CheckResult("maximal_ideals", "vacuous", 0, detail)
    return _verdict("maximal_ideals", 1, bad, detail)


def check_frattini(alg: NLieAlgebra, lat: _Lattice) -> CheckResult:
    """``Phi(L) >= L.L`` iff nilpotent; equality for nilpotent ``L``."""
    phi = lat.phi
    LL = dot(alg, alg.full, alg.full)
    nil = is_nilpotent(alg)
    bad = []
    if (LL <= phi) != nil:
        bad.append(_bundle(alg, phi=phi, LL=LL, nilpotent=nil))
    elif nil and phi != LL:
        bad.append(_bundle(alg, phi=phi, LL=LL))
    if any(not phi <= M for M in lat.maximals):
        bad.append(_bundle(alg, phi=phi, note="not inside every maximal subalgebra"))
    return _verdict("frattini", 1, bad, f"dim Phi = {phi.dim}, dim L.L = {LL.dim}")


def check_bai(alg: NLieAlgebra, lat: _Lattice) -> CheckResult:
    """Every ideal inside ``Phi(L)`` is nilpotent."""
    inside = [I for I in lat.ideals if I <= lat.phi]
    bad = [_bundle(alg, ideal=I, phi=lat.phi) for I in inside if not is_nilpotent(restrict(alg, I))]
    return _verdict("bai", len(inside), bad)


def check_subnormal_frattini(alg: NLieAlgebra, lat: _Lattice, chains=()) -> CheckResult:
    """``U`` subnormal, ``K`` ideal of ``U`` inside ``Phi``, ``U/K`` nilpotent => ``U`` nilpotent."""
    subnormal = dict(lat.subnormal())
    for chain in chains:
        chain = tuple(chain)
        if not verify_subnormal_chain(alg, chain):
            return CheckResult("subnormal_frattini", "fail", 0, "supplied chain is not subnormal",
                               [_bundle(alg, chain=[subspace_json(c) for c in chain])])
        subnormal.setdefault(chain[0], chain)
    phi = lat.phi
    instances, bad = 0, []
    for U, chain in sorted(subnormal.items(), key=lambda kv: (kv[0].dim, kv[0].basis)):
        u_nil = None
        for K in subspaces_within(U & phi, lat.budget):
            if not is_ideal_in(alg, K, U):
                continue
            if not is_nilpotent(_local_quotient(alg, U, K)):
                continue
            instances += 1
            if u_nil is None:
                u_nil = is_nilpotent(restrict(alg, U))
            if not u_nil:
                bad.append(_bundle(alg, U=U, K=K, chain=[subspace_json(c) for c in chain]))
    return _verdict("subnormal_frattini", instances, bad, f"{len(subnormal)} subnormal subalgebras")


def check_frattini_embedding(alg: NLieAlgebra, lat: _Lattice) -> CheckResult:
    """Ideals ``A <= B``, ``A <= Phi``: ``B/A`` 2-nilpotently embedded => ``B`` too."""
    if alg.n < 2:
        return CheckResult("frattini_embedding", "vacuous")
    phi = lat.phi
    instances, bad = 0, []
    for A in lat.ideals:
        if not A <= phi:
            continue
        Q = quotient(alg, A)[0]
        for B in lat.ideals:
            if not A <= B:
                continue
            if not is_k_nilpotently_embedded(Q, image_in_quotient(alg, A, B), 2):
                continue
            instances += 1
            if not is_k_nilpotently_embedded(alg, B, 2):
                bad.append(_bundle(alg, A=A, B=B, phi=phi))
    return _verdict("frattini_embedding", instances, bad)


def check_complements(alg: NLieAlgebra, lat: _Lattice) -> CheckResult:
    """``A`` minimal abelian embedded ideal, ``U < L``, ``U + A = L`` => ``U & A = 0``, ``U`` maximal."""
    mins = [A for A in minimal_elements(lat.ideals) if is_abelian_embedded(alg, A)]
    maximal = set(lat.maximals)
    instances, bad = 0, []
    for A in mins:
        for U in lat.subalgebras:
            if U.is_full() or not (U + A).is_full():
                continue
            instances += 1
            if not (U & A).is_zero() or U not in maximal:
                bad.append(_bundle(alg, A=A, U=U))
    return _verdict("complements", instances, bad, f"{len(mins)} minimal abelian embedded ideals")


def check_trivial(alg: NLieAlgebra, lat: _Lattice) -> CheckResult:
    """Small facts: abelian ideals in soluble algebras, centres of nilpotent ones, and so on."""
    instances, bad = 0, []
    nonzero = [I for I in lat.ideals if not I.is_zero()]
    if alg.dim:
        if is_soluble(alg):
            instances += 1
            if not any(derived_product(alg, I).is_zero() for I in nonzero):
                bad.append(_bundle(alg, claim="soluble algebra without a nonzero abelian ideal"))
        if is_k_solubly_embedded(alg, alg.full, 2):
            instances += 1
            if not any(is_abelian_embedded(alg, I) for I in nonzero):
                bad.append(_bundle(alg, claim="2-soluble algebra without a nonzero abelian embedded ideal"))
        if is_nilpotent(alg):
            instances += 1
            if center(alg).is_zero():
                bad.append(_bundle(alg, claim="nilpotent algebra with zero centre"))
    embedded = [A for A in lat.ideals if is_abelian_embedded(alg, A)]
    for A, B in itertools.product(embedded, lat.ideals):
        if B <= A:
            instances += 1
            if not is_abelian_embedded(alg, B):
                bad.append(_bundle(alg, A=A, B=B))
    return _verdict("trivial", instances, bad)


def check_radical(alg: NLieAlgebra, lat: _Lattice) -> CheckResult:
    """The ``k``-radical is ``k``-solubly embedded and ``k``-solubility is extension closed."""
    instances, bad = 0, []
    for k in range(2, alg.n + 1):
        rad = k_radical(alg, k, lat.budget, lat.ideals)
        instances += 1
        if not is_k_solubly_embedded(alg, rad, k):
            bad.append(_bundle(alg, k=k, radical=rad))
        for B in lat.ideals:
            if not is_k_solubly_embedded(alg, B, k):
                continue
            Q = quotient(alg, B)[0]
            for A in lat.ideals:
                if B <= A and is_k_solubly_embedded(Q, image_in_quotient(alg, B, A), k):
                    instances += 1
                    if not is_k_solubly_embedded(alg, A, k):
                        bad.append(_bundle(alg, k=k, A=A, B=B))
    return _verdict("radical", instances, bad)


def parse_items(spec: str | None) -> tuple[str, ...]:
    if not spec or spec == "all":
        return ITEMS
    names = tuple(s.strip() for s in spec.split(",") if s.strip())
    unknown = [s for s in names if s not in ITEMS]
    if unknown:
        raise ValueError(f"unknown suite items {unknown}; choose from {list(ITEMS)}")
    return names


def theorem_suite(alg: NLieAlgebra, budget: LatticeBudget = DEFAULT_BUDGET, seed: int = 0,
                  chains=(), items=None) -> SuiteReport:
    """Run the selected checks (all by default).

    If the Jacobi identity fails, everything else is skipped.  Checks that
    need a lattice scan are skipped over Q or past the budget.
    """
    items = ITEMS if items is None else tuple(items)
    checks = []
    jac = check_jacobi(alg)
    if "jacobi" in items or jac.status == "fail":
        checks.append(jac)
    if jac.status == "fail":
        checks.extend(CheckResult(name, "skipped", detail="Jacobi identity fails")
                      for name in items if name != "jacobi")
        return SuiteReport(checks)
    scan_reason = None
    try:
        check_budget(alg.field, alg.dim, budget)
    except UnsupportedError as exc:
        scan_reason = str(exc)
    lat = _Lattice(alg, budget)
    for name in items:
        if name == "jacobi":
            continue
        if name in LATTICE_ITEMS and scan_reason is not None:
            checks.append(CheckResult(name, "skipped", detail=scan_reason))
            continue
        if name == "engel":
            checks.append(check_engel(alg, seed))
        elif name == "maximal_ideals":
            checks.append(check_maximal_ideals(alg, lat))
        elif name == "frattini":
            checks.append(check_frattini(alg, lat))
        elif name == "bai":
            checks.append(check_bai(alg, lat))
        elif name == "subnormal_frattini":
            checks.append(check_subnormal_frattini(alg, lat, chains))
        elif name == "frattini_embedding":
            checks.append(check_frattini_embedding(alg, lat))
        elif name == "complements":
            checks.append(check_complements(alg, lat))
        elif name == "trivial":
            checks.append(check_trivial(alg, lat))
        elif name == "radical":
            checks.append(check_radical(alg, lat))
    return SuiteReport(checks)
