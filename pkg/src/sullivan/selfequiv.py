"""Self-homotopy equivalences of a Sullivan algebra, computed stage by stage.

Every generator v gets an invertible scalar parameter ``p`` (the stage
automorphism of a one-dimensional V^|v|).  Closed generators in the initial
run also carry ``q`` parameters for the decomposable part of their image.  At
each later stage the obstruction condition

    α(∂v) - p_v ∂v  ∈  Im ∂  inside ΛV^{<|v|}

is reduced to polynomial residuals in the parameters, which are normalized
into monomial equations over the nonzero rationals.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .cohomology import coboundaries, to_element, to_vector
from .differential import SullivanAlgebra, extend_derivation
from .graded import Element
from .linalg import RationalMatrix, gf2_solve, integer_kernel
from .morphism import CochainMorphism, MorphismError, diagonal, restrict, validate_morphism
from .params import ParamPoly, format_param_monomial


class SolverError(ValueError):
    pass


class UnsupportedEquationForm(SolverError):
    def __init__(self, stage: str, residuals):
        self.stage = stage
        self.residuals = residuals
        body = "; ".join(str(r) for r in residuals[:5])
        super().__init__(f"unsupported equation form at stage {stage}: {body}")


class UniquenessFailure(SolverError):
    """Homotopy classes are not determined by the linear part at some stage."""

    def __init__(self, stage: str, report=None):
        self.stage = stage
        self.report = report
        super().__init__(f"homotopy classes not determined by linear part (stage {stage})")


class LatticeNotTrivial(SolverError):
    pass


def param_name(gen: str) -> str:
    if gen.startswith("x") and gen[1:].isdigit():
        return "p" + gen[1:]
    return "p_" + gen


# -- C-pairs and lifts --------------------------------------------------------


def _xi_images(A: SullivanAlgebra, stage: int, xi) -> dict:
    gens = A.generators_in_degree(stage)
    if isinstance(xi, Mapping):
        out = {}
        for g in gens:
            v = xi.get(g, 0)
            out[g] = v if isinstance(v, Element) else A.free.gen(g, v) if v else A.free.zero()
        return out
    M = xi if isinstance(xi, RationalMatrix) else RationalMatrix.from_dense(xi)
    if M.shape != (len(gens), len(gens)):
        raise ValueError(f"xi must be {len(gens)}x{len(gens)}")
    out = {}
    for j, g in enumerate(gens):
        e = A.free.zero()
        for i, t in enumerate(gens):
            if M[(i, j)]:
                e = e + A.free.gen(t, M[(i, j)])
        out[g] = e
    return out


def _obstruction_residual(A: SullivanAlgebra, v: str, image: Element, alpha: CochainMorphism) -> Element:
    return alpha.apply(A.diff[v]) - extend_derivation(A, image)


@dataclass
class CPair:
    stage: int
    xi: dict
    alpha: CochainMorphism


def check_cpair(A: SullivanAlgebra, stage: int, xi, alpha: CochainMorphism) -> bool:
    """Whether α_(stage-1)(∂v) - ∂ξ(v) is a coboundary of ΛV^{≤stage-1} for every v of degree stage."""
    low = restrict(alpha, stage - 1) if alpha.cap is None or alpha.cap >= stage - 1 else alpha
    B = coboundaries(A, stage + 1, stage - 1)
    for v, img in _xi_images(A, stage, xi).items():
        r = _obstruction_residual(A, v, img, low)
        if B.preimage(to_vector(B.basis, r)) is None:
            return False
    return True


def lift_pair(A: SullivanAlgebra, stage: int, xi, alpha: CochainMorphism, *,
              validate: bool = True) -> CochainMorphism:
    """Extend α from ΛV^{≤stage-1} to ΛV^{≤stage} by α(v) = ξ(v) + u_v, ∂u_v = α(∂v) - ∂ξ(v)."""
    low = restrict(alpha, stage - 1)
    B = coboundaries(A, stage + 1, stage - 1)
    images = dict(low.images)
    for v, img in _xi_images(A, stage, xi).items():
        r = _obstruction_residual(A, v, img, low)
        rem, pre = B.reduce(to_vector(B.basis, r))
        if rem:
            raise SolverError(f"({stage}, ξ, α) is not a C-pair: obstruction of {v} is not a coboundary")
        images[v] = img + to_element(A, B.source_basis, pre)
    if validate:
        return validate_morphism(A, A, images, stage)
    return CochainMorphism(A, A, images, stage)


@dataclass
class UniquenessResult:
    holds: bool
    mode: str  # "zero-cocycles" | "cocycles-are-coboundaries" | "fails"
    cocycle_dim: int
    h_dim: int

    def __bool__(self):
        return self.holds


def uniqueness_condition(A: SullivanAlgebra, stage: int) -> UniquenessResult:
    """Cocycles of (ΛV^{≤stage-1})^stage are zero, or all bound."""
    from .cohomology import cohomology

    H = cohomology(A, stage, stage - 1)
    if H.cocycle_dim == 0:
        return UniquenessResult(True, "zero-cocycles", 0, 0)
    if H.dim == 0:
        return UniquenessResult(True, "cocycles-are-coboundaries", H.cocycle_dim, 0)
    return UniquenessResult(False, "fails", H.cocycle_dim, H.dim)


# -- monomial equations over Q* ------------------------------------------------


@dataclass(frozen=True)
class UnitEquation:
    """prod u_i^{exponents[i]} = sign."""

    exponents: tuple
    sign: int = 1

    def holds(self, values: Sequence) -> bool:
        v = Fraction(1)
        for x, e in zip(values, self.exponents):
            v *= Fraction(x) ** e
        return v == self.sign


@dataclass
class UnitMonomialSystem:
    unknowns: list
    equations: list = field(default_factory=list)

    def add(self, lhs: Mapping[str, int], rhs: Mapping[str, int] | None = None, sign: int = 1):
        """Record lhs-monomial = sign * rhs-monomial."""
        idx = {u: i for i, u in enumerate(self.unknowns)}
        exps = [0] * len(self.unknowns)
        for u, e in lhs.items():
            exps[idx[u]] += e
        for u, e in (rhs or {}).items():
            exps[idx[u]] -= e
        self.equations.append(UnitEquation(tuple(exps), sign))


@dataclass
class UnitSolution:
    unknowns: list
    free_rank: int  # rank of the lattice of absolute values (0: all |u| = 1)
    lattice: list
    signs: list | None  # sign solutions as tuples of ±1; None if inconsistent

    @property
    def consistent(self) -> bool:
        return self.signs is not None

    @property
    def torsion_order(self) -> int:
        return len(self.signs) if self.signs is not None else 0

    @property
    def order(self):
        """Group order, or None when infinite."""
        if not self.consistent:
            return 0
        return self.torsion_order if self.free_rank == 0 else None

    def assignments(self) -> list[dict]:
        return [dict(zip(self.unknowns, s)) for s in self.signs or []]


def solve_unit_system(S: UnitMonomialSystem) -> UnitSolution:
    k = len(S.unknowns)
    rows = [list(eq.exponents) for eq in S.equations]
    lattice = integer_kernel(rows, k)
    parity = [([e % 2 for e in eq.exponents], 1 if eq.sign < 0 else 0) for eq in S.equations]
    sol = gf2_solve(parity, k)
    signs = None
    if sol is not None:
        signs = sorted(tuple(-1 if b else 1 for b in s) for s in sol.solutions())
        signs.sort(key=lambda t: tuple(0 if x == 1 else 1 for x in t))
    return UnitSolution(list(S.unknowns), lattice.rank, lattice.basis, signs)


# -- the staged computation ----------------------------------------------------


@dataclass
class StageLog:
    generator: str
    degree: int
    kind: str  # "base" | "stage"
    equations: list = field(default_factory=list)  # normalized strings
    killed: list = field(default_factory=list)
    solved: dict = field(default_factory=dict)  # parameter -> expression string
    uniqueness: UniquenessResult | None = None
    lift: str = ""
    coboundary_terms: int = 0  # residual monomials absorbed by coboundaries


@dataclass
class SelfEquivGroupReport:
    algebra: str
    parameters: list
    stages: list
    system: UnitMonomialSystem
    solution: UnitSolution
    morphism: dict  # generator -> symbolic image (Element over ParamPoly)
    classes_determined: bool
    discrepancies: list = field(default_factory=list)
    comparison: dict = field(default_factory=dict)

    @property
    def order(self):
        return self.solution.order

    @property
    def sign_solutions(self) -> list[dict]:
        """Solutions keyed by generator name."""
        names = self.parameters
        return [dict(zip(names, s)) for s in self.solution.signs or []]

    def is_group(self) -> bool:
        sols = {tuple(s) for s in self.solution.signs or []}
        if not sols:
            return False
        ident = tuple([1] * len(self.parameters))
        if ident not in sols:
            return False
        return all(tuple(a * b for a, b in zip(s, t)) in sols for s in sols for t in sols)

    def exponent(self):
        if self.solution.free_rank:
            return None
        sols = self.solution.signs or []
        return 1 if len(sols) <= 1 else 2

    def elementary_abelian_rank(self):
        if self.solution.free_rank or not self.is_group():
            return None
        return len(self.solution.signs).bit_length() - 1

    def stage(self, generator: str) -> StageLog:
        for s in self.stages:
            if s.generator == generator:
                return s
        raise KeyError(generator)

    def specialize(self, signs: Mapping[str, int]) -> dict:
        """Images of the final morphism at a sign assignment (keys: generators)."""
        vals = {param_name(g): v for g, v in signs.items()}
        return {g: e.map_coefficients(lambda c: c.evaluate(vals) if isinstance(c, ParamPoly) else c)
                for g, e in self.morphism.items()}


def _is_q(name: str) -> bool:
    return name.startswith("q_")


def _poly_subs_element(e: Element, subs: Mapping[str, object]) -> Element:
    if not subs:
        return e

    def f(c):
        return c.subs(subs) if isinstance(c, ParamPoly) else c

    return e.map_coefficients(f)


def _mono_dict(m) -> dict:
    return dict(m)


class _StageState:
    def __init__(self, A: SullivanAlgebra, order: list):
        self.A = A
        self.order = order  # parameter display order
        self.images: dict = {}
        self.subs: dict = {}
        self.killed: list = []
        self.system = UnitMonomialSystem(list(order))

    def fmt(self, exps: Mapping[str, int]) -> str:
        return format_param_monomial(sorted(exps.items()), self.order)

    def apply_subs(self, new: Mapping[str, object]):
        self.subs = {k: (v.subs(new) if isinstance(v, ParamPoly) else v) for k, v in self.subs.items()}
        self.subs.update(new)
        self.images = {g: _poly_subs_element(e, new) for g, e in self.images.items()}


def _normalize(state: _StageState, log: StageLog, stage_param: str, residuals: list) -> None:
    """Rules R1 (kill a lone q), R2 (two-term unit equation), R3 (substitute) to a fixpoint."""
    pending = [r for r in residuals if r]
    changed = True
    while pending and changed:
        changed = False
        nxt = []
        for r in pending:
            # the stage parameter stays symbolic so every equation is logged in terms of it
            r = r.subs({k: v for k, v in state.subs.items() if k != stage_param})
            if not r:
                changed = True
                continue
            qs = {v for v in r.variables() if _is_q(v)}
            if len(r.terms) == 1 and len(qs) == 1:
                q = qs.pop()
                state.apply_subs({q: 0})
                state.killed.append(q)
                log.killed.append(q)
                changed = True
                continue
            if len(r.terms) == 1 and not qs:
                raise SolverError(f"stage {log.generator}: residual {r} cannot vanish for invertible parameters")
            if len(r.terms) == 2 and not qs:
                (m1, c1), (m2, c2) = sorted(r.terms.items())
                ratio = -c2 / c1  # m1 = ratio * m2
                if abs(ratio) != 1:
                    nxt.append(r)
                    continue
                sign = 1 if ratio > 0 else -1
                exps = _mono_dict(m1)
                for n, e in m2:
                    exps[n] = exps.get(n, 0) - e
                exps = {n: e for n, e in exps.items() if e}
                _record_equation(state, log, stage_param, exps, sign)
                changed = True
                continue
            nxt.append(r)
        pending = nxt
    if pending:
        raise UnsupportedEquationForm(log.generator, pending)


def _record_equation(state: _StageState, log: StageLog, stage_param: str, exps: dict, sign: int) -> None:
    """exps-monomial = sign.  Solve for the stage parameter when it occurs to the power ±1."""
    e = exps.get(stage_param, 0)
    if e in (1, -1):
        rest = {n: -x * e for n, x in exps.items() if n != stage_param}
        text = f"{stage_param} = {'-' if sign < 0 else ''}{state.fmt(rest)}"
        state.system.add({stage_param: 1}, rest, sign)
        if text not in log.equations:
            log.equations.append(text)
        value = ParamPoly.monomial(rest, sign)
        if stage_param not in state.subs:
            log.solved[stage_param] = str(value)
            state.apply_subs({stage_param: value})
        return
    lhs = {n: x for n, x in exps.items() if x > 0}
    rhs = {n: -x for n, x in exps.items() if x < 0}
    if not rhs and stage_param in lhs:
        lhs, rhs = rhs, lhs
    text = f"{state.fmt(lhs)} = {'-' if sign < 0 else ''}{state.fmt(rhs)}"
    state.system.add(lhs, rhs, sign)
    if text not in log.equations:
        log.equations.append(text)


def _base_run(A: SullivanAlgebra) -> list[str]:
    gens = sorted(A.generators, key=lambda g: (g.degree, g.index))
    out = []
    for g in gens:
        if A.diff[g.name]:
            break
        out.append(g.name)
    return out


def _stage_degrees_ok(A: SullivanAlgebra) -> None:
    seen: dict = {}
    for g in A.generators:
        seen.setdefault(g.degree, []).append(g.name)
    bad = {d: gs for d, gs in seen.items() if len(gs) > 1}
    if bad:
        d, gs = min(bad.items())
        raise SolverError(f"V^{d} has dimension {len(gs)} ({', '.join(gs)}); only one-dimensional stages are supported")


def compute_selfequiv_group(A, *, strict: bool = True) -> SelfEquivGroupReport:
    """Run the staged computation.

    With ``strict`` a stage where the uniqueness condition fails raises
    :class:`UniquenessFailure`; otherwise the computation continues and the
    report describes the group of realizable linear parts, flagged with
    ``classes_determined = False``.
    """
    if not isinstance(A, SullivanAlgebra):
        A = A.algebra
    _stage_degrees_ok(A)
    gens = sorted(A.generators, key=lambda g: (g.degree, g.index))
    params = [param_name(g.name) for g in gens]
    state = _StageState(A, params)
    stages = []
    base = _base_run(A)
    if not base:
        raise SolverError("the algebra has no closed generator of lowest degree")
    free = A.free
    for name in base:
        deg = A.degree(name)
        p = param_name(name)
        img = free.gen(name, ParamPoly.var(p))
        lower = [g.name for g in gens if g.degree < deg]
        log = StageLog(name, deg, "base")
        if lower:
            B = _lower_basis(A, deg)
            for mono in B:
                label = ",".join(str(mono[free.index(g)]) for g in lower)
                q = f"q_{name}[{label}]"
                img = img + free.monomial(mono, ParamPoly.var(q))
        state.images[name] = img
        log.lift = str(img)
        stages.append(log)
    determined = True
    for g in gens:
        if g.name in base:
            continue
        v, deg = g.name, g.degree
        p = param_name(v)
        log = StageLog(v, deg, "stage")
        uq = uniqueness_condition(A, deg)
        log.uniqueness = uq
        alpha = CochainMorphism(A, A, state.images, deg - 1)
        residual = alpha.apply(A.diff[v]) - A.diff[v].scale(ParamPoly.var(p))
        B = coboundaries(A, deg + 1, deg - 1)
        vec = to_vector(B.basis, residual)
        rem, pre = B.reduce(vec)
        log.coboundary_terms = len(set(vec) - set(rem))
        _normalize(state, log, p, list(rem.values()))
        u = to_element(A, B.source_basis, pre)
        img = free.gen(v, ParamPoly.var(p)) + u
        state.images[v] = _poly_subs_element(img, state.subs)
        log.lift = str(state.images[v])
        stages.append(log)
        if not uq.holds:
            determined = False
            if strict:
                raise UniquenessFailure(v)
    leftover = sorted({n for e in state.images.values() for c in e.terms.values()
                       if isinstance(c, ParamPoly) for n in c.variables() if _is_q(n)})
    if leftover:
        raise UnsupportedEquationForm("final", [f"parameter {q} is never determined" for q in leftover])
    solution = solve_unit_system(state.system)
    return SelfEquivGroupReport(A.name, [g.name for g in gens], stages, state.system, solution,
                                dict(state.images), determined)


def _lower_basis(A: SullivanAlgebra, deg: int):
    from .bases import enumerate_basis

    return enumerate_basis(A, deg, deg - 1).monomials


def realize(report: SelfEquivGroupReport, A: SullivanAlgebra, signs: Mapping[str, int]) -> CochainMorphism:
    """The validated morphism of the final symbolic state at a sign assignment."""
    return validate_morphism(A, A, report.specialize(signs))


# -- brute-force oracle ---------------------------------------------------------


def diagonal_system(A: SullivanAlgebra) -> UnitMonomialSystem:
    """For α(v) = p_v v: every monomial of ∂v must scale like v."""
    names = [g.name for g in A.generators]
    S = UnitMonomialSystem(names)
    for v in names:
        for m in A.diff[v].terms:
            exps = {names[i]: e for i, e in enumerate(m) if e}
            S.add(exps, {v: 1})
    return S


def _check_chunk(args):
    A, names, masks = args
    out = []
    for mask in masks:
        scal = {n: (-1 if mask >> i & 1 else 1) for i, n in enumerate(names)}
        try:
            diagonal(A, scal)
        except MorphismError:
            continue
        out.append(mask)
    return out


def brute_force_diagonal_oracle(A, jobs: int = 1) -> list[dict]:
    """All ±1 diagonal scalings that commute with ∂, found by direct validation."""
    if not isinstance(A, SullivanAlgebra):
        A = A.algebra
    S = diagonal_system(A)
    lat = integer_kernel([list(e.exponents) for e in S.equations], len(S.unknowns))
    if not lat.is_trivial():
        raise LatticeNotTrivial(
            f"absolute values are not forced to 1 (lattice rank {lat.rank}); the ±1 enumeration is not exhaustive")
    names = list(S.unknowns)
    total = 2 ** len(names)
    if jobs <= 1:
        good = _check_chunk((A, names, range(total)))
    else:
        chunks = [range(i, total, jobs) for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            good = [m for part in ex.map(_check_chunk, [(A, names, c) for c in chunks]) for m in part]
    good.sort(key=lambda m: (bin(m).count("1"), m))
    return [{n: (-1 if m >> i & 1 else 1) for i, n in enumerate(names)} for m in good]


def is_elementary_abelian(solutions: list[dict]) -> bool:
    """Closed under componentwise product, contains the identity, every element self-inverse."""
    if not solutions:
        return False
    keys = list(solutions[0])
    sols = {tuple(s[k] for k in keys) for s in solutions}
    if tuple([1] * len(keys)) not in sols:
        return False
    for s, t in itertools.product(sols, repeat=2):
        if tuple(a * b for a, b in zip(s, t)) not in sols:
            return False
    return all(all(x * x == 1 for x in s) for s in sols)
