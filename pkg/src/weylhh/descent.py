"""Cocycles from the injective form-resolution: generators and descent.

A Gaussian generator is a closed top-degree-on-its-sector form

    prefactor . exp(Q)

with Q a quadratic exponent coupling z to y (and to z in twisted sectors).
The untwisted generator has Q = 2i w(z, y) and the full dz-volume prefactor;
a twisted one has Q = i w(z, y + (z-y)^g) and a 2k-form prefactor supported
on the sector where g moves points, k = rank(1-g)/2.

The prefactor is normalized as the k-th wedge power, divided by k!, of the
two-form sum_{i<j} w_ij u^i u^j in u = (dz - dz^g)/2.  With this scale the
pairing of the resulting cocycle against its dual cycle comes out exactly
1/(2k)!; the wedge-power normalization is the one choice with that property
(any other rescales the cocycle by a harmless but noisy constant).

The cocycle itself is the alternation

    value(a_1 .. a_p) = a_1 * s( a_2 * s( ... a_p * s(generator) )) | z=0

computed on a finite expansion of exp(Q).  A degree-D expansion certifies
the result up to total degree D - (total argument degree); every public
entry point recomputes at D+2 and insists the certified parts agree before
reporting a value.

The audited descent trace solves, with the plain (undressed) exterior
differential on cochains,

    d xi_top = generator,   d xi_k = -dH xi_{k+1},   dH xi_0 = -value,

via xi_k = -s(dH xi_{k+1}); verify_descent replays those identities on
sampled arguments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetError
from .forms import FormElement, ext_d, form_star, homotopy_s, wedge_merge
from .hochschild import (Cochain, DUAL, FORM, INVOLUTION_TWIST, Report, Twist,
                         constant_cochain, group_twist, hochschild_d)
from .poly import Poly, Y, Z
from .scalars import ONE, Scalar
from .weyl import SymplecticData, WeylElement, _star_kernel

DEFAULT_BUDGET_MARGIN = 4


def _omega_bilinear(sym: SymplecticData, left: List[Poly], right: List[Poly]) -> Poly:
    out = Poly.zero()
    size = 2 * sym.n
    for j in range(size):
        if left[j].is_zero():
            continue
        for k in range(size):
            c = sym.omega[j][k]
            if not c.is_zero() and not right[k].is_zero():
                out = out + (left[j] * right[k]).scale(c)
    return out


def _vector(bank: str, sym: SymplecticData) -> List[Poly]:
    return [Poly.variable(bank, j + 1) for j in range(2 * sym.n)]


def _matrix_apply(matrix, vec: List[Poly]) -> List[Poly]:
    out = []
    for row in matrix:
        acc = Poly.zero()
        for c, p in zip(row, vec):
            if not c.is_zero():
                acc = acc + p.scale(c)
        out.append(acc)
    return out


class GaussianGenerator:
    """prefactor . exp(quad), expandable to any finite degree."""

    def __init__(self, ambient: SymplecticData, quad: Poly,
                 prefactor: FormElement, twist: Twist, label: str = ""):
        self.ambient = ambient
        self.quad = quad
        self.prefactor = prefactor
        self.twist = twist
        self.label = label
        self._expansions: Dict[int, FormElement] = {}

    @property
    def form_degree(self) -> int:
        degs = self.prefactor.degrees()
        if len(degs) != 1:
            raise ValueError("prefactor must be homogeneous in form degree")
        return degs.pop()

    def expand(self, degree: int) -> FormElement:
        """All terms of (y,z)-degree <= degree, marked with that truncation."""
        cached = self._expansions.get(degree)
        if cached is not None:
            return cached
        acc = Poly.zero()
        term = Poly.one()
        k = 0
        while 2 * k <= degree:
            acc = acc + term.scale(Scalar(Fraction(1, factorial(k))))
            term = term * self.quad
            k += 1
        acc = acc.truncate(degree)
        comps = {idx: acc * p for idx, p in self.prefactor.components.items()}
        out = FormElement(comps, self.ambient, truncation=degree)
        self._expansions[degree] = out
        return out

    def invariance_defect(self, j: int, degree: int) -> FormElement:
        """b * gen - gen * twist(b) for the j-th generator, to truncation."""
        b = WeylElement.generator(j, self.ambient)
        expanded = self.expand(degree)
        return form_star(b, expanded) - form_star(expanded, self.twist.right(b))


def make_zeta(ambient: SymplecticData) -> GaussianGenerator:
    """The untwisted generator: exp(2i w(z,y)) vol_dz, involution-twisted dual."""
    quad = _omega_bilinear(ambient, _vector(Z, ambient), _vector(Y, ambient))
    quad = quad.scale(Scalar.of(0, 2))
    return GaussianGenerator(ambient, quad, FormElement.top_dz(ambient),
                             INVOLUTION_TWIST, label="zeta")


def make_zeta_g(ambient: SymplecticData, g) -> GaussianGenerator:
    """The g-twisted generator; g is a GroupElement or symplectic matrix."""
    matrix = getattr(g, "matrix", g)
    size = 2 * ambient.n
    from .linalg import identity, mat_rank, mat_sub
    rank = mat_rank(mat_sub(identity(size, ONE, Scalar.of(0)), matrix))
    if rank % 2:
        raise ValueError("rank(1 - g) must be even for a symplectic g")
    k = rank // 2

    y = _vector(Y, ambient)
    z = _vector(Z, ambient)
    z_minus_y = [zz - yy for zz, yy in zip(z, y)]
    moved = _matrix_apply(matrix, z_minus_y)
    quad = _omega_bilinear(ambient, z, [yy + mm for yy, mm in zip(y, moved)])
    quad = quad.scale(Scalar.of(0, 1))

    # Prefactor: wedge power k, over k!, of sum_{i<j} w_ij u^i u^j with
    # u = (dz - dz^g)/2 expressed through dz.
    half = Scalar(Fraction(1, 2))
    u_rows = []
    for i in range(size):
        row = []
        for l0 in range(size):
            c = -matrix[i][l0] * half
            if i == l0:
                c = c + half
            row.append(c)
        u_rows.append(row)
    two_form: Dict[Tuple[int, ...], Scalar] = {}
    for i in range(size):
        for j in range(i + 1, size):
            w = ambient.omega[i][j]
            if w.is_zero():
                continue
            for a in range(size):
                ca = u_rows[i][a]
                if ca.is_zero():
                    continue
                for b in range(size):
                    cb = u_rows[j][b]
                    if cb.is_zero() or a == b:
                        continue
                    coeff = w * ca * cb
                    idx = (a + 1, b + 1)
                    if idx[0] > idx[1]:
                        idx = (idx[1], idx[0])
                        coeff = -coeff
                    prev = two_form.get(idx)
                    coeff = coeff if prev is None else prev + coeff
                    if coeff.is_zero():
                        two_form.pop(idx, None)
                    else:
                        two_form[idx] = coeff
    pieces: Dict[Tuple[int, ...], Scalar] = {(): ONE}
    for _ in range(k):
        nxt: Dict[Tuple[int, ...], Scalar] = {}
        for part, coeff in pieces.items():
            for pair, c in two_form.items():
                merged = wedge_merge(part, pair)
                if merged is None:
                    continue
                sign, idx = merged
                add = coeff * c
                if sign < 0:
                    add = -add
                prev = nxt.get(idx)
                add = add if prev is None else prev + add
                if add.is_zero():
                    nxt.pop(idx, None)
                else:
                    nxt[idx] = add
        pieces = nxt
    scale = Scalar(Fraction(1, factorial(k)))
    prefactor = FormElement(
        {idx: Poly.const(c * scale) for idx, c in pieces.items()},
        ambient)
    if k > 0 and prefactor.is_zero():
        raise ValueError("degenerate twisted prefactor; g is not usable here")
    label = getattr(g, "label", "") or "g"
    return GaussianGenerator(ambient, quad, prefactor, group_twist(matrix),
                             label=f"zeta_{label}")


# -- the descent value --------------------------------------------------------


def auto_budget(args: Sequence[WeylElement], n: int) -> int:
    return sum(a.degree() for a in args) + 2 * n + DEFAULT_BUDGET_MARGIN


def _prune_for_final(form: FormElement, remaining_degrees: Sequence[int],
                     target: int) -> FormElement:
    """Drop terms that cannot reach the z = 0 projection within the target.

    Every z present (plus one more per remaining homotopy) must be consumed
    by the remaining arguments' derivative orders, which also bounds how far
    the y-degree can come down; see SuffixCache._prune for the counting.
    """
    r = len(remaining_degrees)
    z_cap = sum(remaining_degrees) - r
    total_cap = target + z_cap
    if z_cap < 0:
        return FormElement({}, form.ambient, form.truncation)
    comps = {}
    for idx, poly in form.components.items():
        kept = {}
        for mono, c in poly.terms.items():
            z_deg = sum(e for b, _, e in mono if b == Z)
            if z_deg > z_cap:
                continue
            if z_deg + sum(e for b, _, e in mono if b == Y) > total_cap:
                continue
            kept[mono] = c
        if kept:
            comps[idx] = Poly(kept)
    return FormElement(comps, form.ambient, form.truncation)


def _chain_value(gen: GaussianGenerator, args: Sequence[WeylElement],
                 degree: int) -> WeylElement:
    degrees = [a.degree() for a in args]
    target = degree + len(args) - sum(degrees)
    value = _prune_for_final(gen.expand(degree), degrees, target)
    for k in range(len(args) - 1, -1, -1):
        value = form_star(args[k], homotopy_s(value))
        value = _prune_for_final(value, degrees[:k], target)
    if not value.is_homogeneous(0) and not value.is_zero():
        raise AssertionError("descent value failed to land in form degree 0")
    poly = value.component(()).set_bank_zero(Z)
    return WeylElement(poly, gen.ambient, value.truncation)


@dataclass
class DescentTrace:
    """The audited ladder: cochains xi_top .. xi_0 plus the resulting cocycle."""

    generator: GaussianGenerator
    budget: int
    xis: List[Cochain]
    cocycle: Cochain
    pairing: Optional[Scalar] = None


def descend(gen: GaussianGenerator, args: Sequence[WeylElement],
            budget: Optional[int] = None, check_stability: bool = True,
            return_trace: bool = False, full_differential: bool = False):
    """Evaluate the descent cocycle on concrete arguments.

    Recomputes at budget+2 and requires the certified parts to agree; a
    mismatch means the budget heuristic was too small for these arguments
    and surfaces as a BudgetError.

    full_differential routes the last step through the complete Hochschild
    differential of the ladder bottom instead of its first term alone; the
    two agree after the z = 0 projection (the extra terms have no z-constant
    part) and the flag exists as an independent cross-check of that fact.
    """
    p = gen.form_degree
    if len(args) != p:
        raise ValueError(f"generator of form degree {p} takes {p} arguments")
    d = auto_budget(args, gen.ambient.n) if budget is None else budget

    def value_at(degree: int) -> WeylElement:
        if not full_differential:
            return _chain_value(gen, args, degree)
        trace = build_trace(gen, degree)
        form = hochschild_d(trace.xis[-1])(*args).scale(Scalar.of(-1))
        poly = form.component(()).set_bank_zero(Z)
        return WeylElement(poly, gen.ambient, form.truncation)

    value = value_at(d)
    if check_stability:
        recomputed = value_at(d + 2)
        if recomputed.restrict(value.truncation) != value:
            raise BudgetError(
                f"descent value unstable at budget {d}; rerun with a larger one")
    if return_trace:
        return value, build_trace(gen, d)
    return value


def descent_cocycle(gen: GaussianGenerator, budget: Optional[int] = None,
                    check_stability: bool = True) -> Cochain:
    """The descent value as a dual-valued normalized cochain."""
    def ev(*args):
        return descend(gen, args, budget=budget, check_stability=check_stability)

    return Cochain(gen.form_degree, gen.ambient, DUAL, gen.twist, ev,
                   normalized=True, label=f"tau[{gen.label}]")


class SuffixCache:
    """Shared partial chains for bulk evaluation over many argument tuples.

    The inner alternation s(a_k * s(...)) depends only on the argument tail,
    so tuples sharing a tail share the work.  A single cache is valid for one
    (generator, budget, per-slot degree bound) triple: the degree bound lets
    each level drop terms too high to reach the certified part of the final
    value through the remaining argument derivatives.
    """

    def __init__(self, gen: GaussianGenerator, budget: int, slot_degree: int):
        self.gen = gen
        self.budget = budget
        self.slot_degree = slot_degree
        self.arity = gen.form_degree
        self.target = budget - slot_degree * self.arity
        if self.target < 0:
            raise BudgetError("budget below the worst-case argument degree")
        self._cache: Dict[tuple, FormElement] = {}
        self._final: Dict[tuple, Poly] = {}

    def _prune(self, form: FormElement, consumed: int) -> FormElement:
        """Drop terms that cannot reach the certified final value.

        With r argument slots still to come, each contraction homotopy adds a
        z that the remaining star derivatives (at most slot_degree per slot)
        must consume before the closing z = 0 projection, so surviving terms
        obey z <= (slot-1) r and y + z <= target + (slot-1) r.
        """
        r = self.arity - consumed
        z_cap = (self.slot_degree - 1) * r
        total_cap = self.target + z_cap
        comps = {}
        for idx, poly in form.components.items():
            kept = {}
            for mono, c in poly.terms.items():
                z_deg = sum(e for b, _, e in mono if b == Z)
                if z_deg > z_cap:
                    continue
                if z_deg + sum(e for b, _, e in mono if b == Y) > total_cap:
                    continue
                kept[mono] = c
            if kept:
                comps[idx] = Poly(kept)
        return FormElement(comps, form.ambient, form.truncation)

    def tail(self, args: Sequence[WeylElement]) -> FormElement:
        if not args:
            return self._prune(self.gen.expand(self.budget), 0)
        key = tuple(a.key() for a in args)
        got = self._cache.get(key)
        if got is None:
            if args[0].degree() > self.slot_degree:
                raise BudgetError("argument degree exceeds the cache's slot bound")
            got = form_star(args[0], homotopy_s(self.tail(args[1:])))
            got = self._prune(got, len(args))
            self._cache[key] = got
        return got

    def value(self, args: Sequence[WeylElement]) -> WeylElement:
        head, rest = args[0], args[1:]
        if head.degree() > self.slot_degree:
            raise BudgetError("argument degree exceeds the cache's slot bound")
        key = tuple(a.key() for a in rest)
        contracted = self._final.get(key)
        if contracted is None:
            # Only the 0-form part of s(tail) can reach the final projection,
            # and only its terms of z-degree at most the head's derivative
            # order (bounded by the slot degree) survive setting z to zero.
            zero_part = homotopy_s(self.tail(rest)).component(())
            contracted = Poly({
                mono: c for mono, c in zero_part.terms.items()
                if sum(e for b, _, e in mono if b == Z) <= self.slot_degree
            })
            self._final[key] = contracted
        prod = _star_kernel(head.poly, contracted, self.gen.ambient, right_z=True)
        poly = prod.set_bank_zero(Z).truncate(self.target)
        return WeylElement(poly, self.gen.ambient, self.target)


# -- the audited trace --------------------------------------------------------


def build_trace(gen: GaussianGenerator, budget: int) -> DescentTrace:
    """xi_top = s(gen), xi_k = -s(dH xi_{k+1}); plus the resulting cocycle."""
    p = gen.form_degree
    ambient = gen.ambient
    expanded = gen.expand(budget)
    xi = constant_cochain(homotopy_s(expanded), ambient, FORM, gen.twist,
                          label="xi_top")
    xis = [xi]
    for step in range(1, p):
        nxt = hochschild_d(xi).map_values(
            lambda v: -homotopy_s(v), label=f"xi_{p - 1 - step}")
        xis.append(nxt)
        xi = nxt
    cocycle = descent_cocycle(gen, budget=budget, check_stability=False)
    return DescentTrace(gen, budget, xis, cocycle)


def verify_descent(trace: DescentTrace, seed: int = 0, count: int = 3,
                   max_degree: int = 1) -> Report:
    """Replay the descent identities on sampled arguments, exactly to budget."""
    from .sampling import weyl_tuples

    gen = trace.generator
    ambient = gen.ambient
    rng = random.Random(seed)
    checked = passed = 0
    first_failure = None
    lines = []

    def record(name: str, ok: bool, context: str = "") -> None:
        nonlocal checked, passed, first_failure
        checked += 1
        if ok:
            passed += 1
        else:
            lines.append(f"FAIL {name} {context}")
            if first_failure is None:
                first_failure = f"{name} {context}".strip()

    # d xi_top = generator (a 0-cochain identity).
    expanded = gen.expand(trace.budget)
    lhs = ext_d(trace.xis[0]())
    record("d-top", lhs == expanded.restrict(lhs.truncation))

    # d xi_k = -dH xi_{k+1} on sampled tuples.
    for level in range(1, len(trace.xis)):
        upper = trace.xis[level - 1]
        lower = trace.xis[level]
        for args in weyl_tuples(rng, ambient, lower.arity, count, max_degree):
            lhs = ext_d(lower(*args))
            rhs = hochschild_d(upper)(*args).scale(Scalar.of(-1))
            t = _common_trunc(lhs, rhs)
            record(f"d-level-{level}", lhs.restrict(t) == rhs.restrict(t),
                   str(args))

    # dH xi_0 = -value, including vanishing of all z-dependence.
    bottom = trace.xis[-1]
    for args in weyl_tuples(rng, ambient, bottom.arity + 1, count, max_degree):
        lhs = hochschild_d(bottom)(*args)
        value = trace.cocycle(*args)
        rhs = FormElement.from_poly(-value.poly, ambient, value.truncation)
        t = _common_trunc(lhs, rhs)
        record("dH-bottom", lhs.restrict(t) == rhs.restrict(t), str(args))

    report = Report(checked, passed, first_failure, seed, max_degree,
                    detail={"budget": trace.budget, "lines": lines})
    if trace.pairing is not None:
        report.detail["pairing"] = str(trace.pairing)
    return report


def _common_trunc(a, b) -> Optional[int]:
    if a.truncation is None:
        return b.truncation
    if b.truncation is None:
        return a.truncation
    return min(a.truncation, b.truncation)
