"""Direct construction of the degree-2n dual cocycle from its integral symbol.

The symbol is a polynomial in pairing symbols W_{ij} = omega(p_i, p_j),
0 <= i < j <= 2n, where p_0 multiplies by i*y and p_mu (mu >= 1) applies
pi-twisted derivatives to the mu-th argument on its own variable copy.  The
exponential is expanded to a finite order with each u-monomial integrated
exactly over the ordered simplex 0 <= u_1 <= ... <= u_{2n} <= 1, and the
whole thing is multiplied by det(p_1, ..., p_{2n}).

Each W_{0j} consumes one derivative on argument j; each W_{ij} with i >= 1
consumes one on each of i and j; the determinant consumes one per argument.
The expansion order needed for a tuple of arguments is therefore bounded by
their total degree, and the symbol refuses (loudly) to be applied beyond the
budget it was built for.

Applying the symbol happens on disjoint variable copies: argument mu lives
on Y-bank indices mu*2n + 1 .. mu*2n + 2n, the output on indices 1..2n, and
a product of derivative symbols evaluated at y_mu = 0 turns into exponent
bookkeeping against the argument coefficients.

A second, independent route for n = 1 integrates over the unit square after
the substitution u_1 = t_0 t_1, u_2 = t_0 (Jacobian t_0); the two must agree
exactly.  The square-route prefactor is written det(p_1, p_2), which is the
same bilinear prefactor expressed in the sign convention fixed by
omega . pi = id.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InsufficientExpansionError
from .linalg import mat_mul, mat_transpose
from .poly import Poly, T, Y
from .scalars import I, ONE, Scalar
from .weyl import SymplecticData, WeylElement

Pair = Tuple[int, int]
WMono = Tuple[Tuple[Pair, int], ...]


def simplex_moment(exponents: Sequence[int]) -> Scalar:
    """Exact integral of u_1^a1 ... u_m^am over 0 <= u_1 <= ... <= u_m <= 1."""
    value = Fraction(1)
    prefix = 0
    for k, a in enumerate(exponents, start=1):
        prefix += a
        value /= prefix + k
    return Scalar(value)


def _u_poly_pow(base: Dict[Tuple[int, ...], Fraction], power: int,
                nvars: int) -> Dict[Tuple[int, ...], Fraction]:
    out = {(0,) * nvars: Fraction(1)}
    for _ in range(power):
        nxt: Dict[Tuple[int, ...], Fraction] = {}
        for m1, c1 in out.items():
            for m2, c2 in base.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                nxt[m] = nxt.get(m, Fraction(0)) + c1 * c2
        out = {m: c for m, c in nxt.items() if c}
    return out


def _linear_factor(i: int, j: int, nvars: int) -> Dict[Tuple[int, ...], Fraction]:
    """1 + 2 u_i - 2 u_j as a u-polynomial (u_0 = 0 is absent)."""
    zero = (0,) * nvars
    out = {zero: Fraction(1)}
    if i >= 1:
        m = tuple(1 if k == i - 1 else 0 for k in range(nvars))
        out[m] = out.get(m, Fraction(0)) + 2
    m = tuple(1 if k == j - 1 else 0 for k in range(nvars))
    out[m] = out.get(m, Fraction(0)) - 2
    return {m: c for m, c in out.items() if c}


def _integrate_u_poly(poly: Dict[Tuple[int, ...], Fraction]) -> Scalar:
    total = Scalar.of(0)
    for m, c in poly.items():
        total = total + simplex_moment(m).scale_fraction(c)
    return total


@dataclass(frozen=True)
class FFSSymbol:
    """Expanded symbol: W-monomial -> exact coefficient (moments included)."""

    n: int
    budget: int
    coeffs: Tuple[Tuple[WMono, Scalar], ...]

    def coeff_map(self) -> Dict[WMono, Scalar]:
        return dict(self.coeffs)


def _w_monomials(pairs: List[Pair], weights: Dict[Pair, int], max_weight: int):
    """All multisets of pairs with total weighted derivative cost <= max_weight."""
    def rec(idx: int, remaining: int, current: List[Tuple[Pair, int]]):
        if idx == len(pairs):
            yield tuple(current)
            return
        pair = pairs[idx]
        w = weights[pair]
        count = 0
        while count * w <= remaining:
            nxt = current + ([(pair, count)] if count else [])
            yield from rec(idx + 1, remaining - count * w, nxt)
            count += 1
    yield from rec(0, max_weight, [])


def ffs_build(n: int, degree_budget: int) -> FFSSymbol:
    """Expand the symbol far enough for argument tuples of the given total degree."""
    m = 2 * n
    pairs = [(i, j) for i in range(0, m + 1) for j in range(i + 1, m + 1)]
    weights = {p: (1 if p[0] == 0 else 2) for p in pairs}
    max_order = max(0, degree_budget - m)
    coeffs = []
    for mono in _w_monomials(pairs, weights, max_order):
        total_order = sum(c for _, c in mono)
        upoly: Dict[Tuple[int, ...], Fraction] = {(0,) * m: Fraction(1)}
        denom = 1
        for (i, j), count in mono:
            upoly_factor = _u_poly_pow(_linear_factor(i, j, m), count, m)
            nxt: Dict[Tuple[int, ...], Fraction] = {}
            for m1, c1 in upoly.items():
                for m2, c2 in upoly_factor.items():
                    key = tuple(a + b for a, b in zip(m1, m2))
                    nxt[key] = nxt.get(key, Fraction(0)) + c1 * c2
            upoly = {k: c for k, c in nxt.items() if c}
            denom *= factorial(count)
        coeff = _integrate_u_poly(upoly)
        coeff = coeff * (I ** total_order)
        coeff = coeff.scale_fraction(Fraction(1, denom))
        if not coeff.is_zero():
            coeffs.append((mono, coeff))
    return FFSSymbol(n, degree_budget, tuple(coeffs))


_symbol_cache: Dict[int, FFSSymbol] = {}


def cached_symbol(n: int, degree_budget: int) -> FFSSymbol:
    sym = _symbol_cache.get(n)
    if sym is None or sym.budget < degree_budget:
        sym = ffs_build(n, degree_budget)
        _symbol_cache[n] = sym
    return sym


# -- applying the symbol ------------------------------------------------------


def _copy_var(mu: int, j: int, n: int) -> Tuple[str, int, int]:
    """Derivative symbol d/dy_mu^j encoded as a Y variable on copy mu."""
    return (Y, mu * 2 * n + j, 1)


def _det_operator(sym: SymplecticData) -> Poly:
    """det(p_1 .. p_{2n}) as a polynomial in the derivative symbols."""
    m = 2 * sym.n
    out = Poly.zero()
    for perm in itertools.permutations(range(1, m + 1)):
        sign = _perm_sign_tuple(perm)
        term = Poly.one()
        for mu, row in enumerate(perm, start=1):
            filt = Poly.zero()
            for k in range(m):
                c = sym.pi[row - 1][k]
                if not c.is_zero():
                    filt = filt + Poly.monomial([_copy_var(mu, k + 1, sym.n)], c)
            term = term * filt
            if term.is_zero():
                break
        if sign < 0:
            term = -term
        out = out + term
    return out


def _perm_sign_tuple(perm: Sequence[int]) -> int:
    swaps = 0
    items = list(perm)
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if items[a] > items[b]:
                swaps += 1
    return -1 if swaps % 2 else 1


def _pair_operator(sym: SymplecticData, i: int, j: int) -> Poly:
    """The operator polynomial for one W_{ij} factor.

    The pairing form inside the symbol is the opposite-sign dual of pi
    (w . pi = -id): with that reading the cocycle identity holds exactly and
    the unit-square formula's w(p_1, p_2) prefactor coincides with
    det(p_1, p_2).  The stored ambient omega satisfies omega . pi = +id, so
    the realization negates it here.
    """
    m = 2 * sym.n
    w = tuple(tuple(-c for c in row) for row in sym.omega)
    out = Poly.zero()
    if i == 0:
        # i * y^k (w pi)_k^l d/dy_j^l
        op = mat_mul(w, sym.pi)
        for k in range(m):
            for l0 in range(m):
                c = op[k][l0]
                if not c.is_zero():
                    out = out + Poly.monomial(
                        [(Y, k + 1, 1), _copy_var(j, l0 + 1, sym.n)], c * I)
        return out
    # (pi^T w pi)^{ab} d/dy_i^a d/dy_j^b
    op = mat_mul(mat_transpose(sym.pi), mat_mul(w, sym.pi))
    for a in range(m):
        for b in range(m):
            c = op[a][b]
            if not c.is_zero():
                out = out + Poly.monomial(
                    [_copy_var(i, a + 1, sym.n), _copy_var(j, b + 1, sym.n)], c)
    return out


def _apply_operator(op_poly: Poly, args: Sequence[WeylElement],
                    sym: SymplecticData) -> Poly:
    """Contract an operator polynomial against the argument coefficients.

    A monomial of op_poly splits into the output-y part (indices <= 2n) and,
    per argument copy mu, a derivative multi-index alpha_mu; it contributes
    prod_mu alpha_mu! * coeff_{alpha_mu}(a_mu) times the output monomial.
    """
    m = 2 * sym.n
    out = Poly.zero()
    for mono, coeff in op_poly.terms.items():
        output = []
        alphas: Dict[int, Dict[int, int]] = {}
        for bank, idx, exp in mono:
            if idx <= m:
                output.append((bank, idx, exp))
            else:
                mu, j = divmod(idx - 1, m)
                alphas.setdefault(mu, {})[j + 1] = exp
        value = coeff
        dead = False
        for mu, arg in enumerate(args, start=1):
            alpha = alphas.get(mu, {})
            target = tuple(sorted(
                ((Y, j, e) for j, e in alpha.items()),
                key=lambda t: t[1]))
            c = arg.poly.terms.get(target)
            if c is None:
                dead = True
                break
            for e in alpha.values():
                c = c.scale_fraction(Fraction(factorial(e)))
            value = value * c
        if not dead:
            out = out + Poly.monomial(output, value)
    return out


_op_cache: Dict[tuple, Poly] = {}


def _operator_for(ambient: SymplecticData, mono: WMono) -> Poly:
    """det(p_1..p_2n) times the W factors of a symbol monomial, cached."""
    key = (ambient, mono)
    op = _op_cache.get(key)
    if op is None:
        if mono:
            head = mono[:-1]
            pair, count = mono[-1]
            reduced = head + ((pair, count - 1),) if count > 1 else head
            op = _operator_for(ambient, reduced) * _pair_operator(ambient, *pair)
        else:
            op = _det_operator(ambient)
        _op_cache[key] = op
    return op


def ffs_apply(symbol: FFSSymbol, args: Sequence[WeylElement],
              d_out: Optional[int] = None) -> WeylElement:
    """Evaluate the cocycle on 2n arguments; exact polynomial output."""
    ambient = args[0].ambient
    m = 2 * symbol.n
    if len(args) != m:
        raise ValueError(f"expected {m} arguments, got {len(args)}")
    if any(a.truncation is not None for a in args):
        raise InsufficientExpansionError("arguments must be exact polynomials")
    degrees = [a.degree() for a in args]
    if sum(degrees) > symbol.budget:
        raise InsufficientExpansionError(
            f"symbol built for total degree {symbol.budget}, "
            f"arguments have total degree {sum(degrees)}")
    result = Poly.zero()
    for mono, coeff in symbol.coeffs:
        consumption = [0] * (m + 1)
        for (i, j), count in mono:
            if i >= 1:
                consumption[i] += count
            consumption[j] += count
        if any(consumption[mu] + 1 > degrees[mu - 1] for mu in range(1, m + 1)):
            continue
        op = _operator_for(ambient, mono)
        result = result + _apply_operator(op, args, ambient).scale(coeff)
    if d_out is not None and result.degree() > d_out:
        raise InsufficientExpansionError(
            f"result degree {result.degree()} exceeds requested bound {d_out}")
    return WeylElement(result, ambient)


def monomial_table(symbol: FFSSymbol, ambient: SymplecticData,
                   slot_degree: int) -> Dict[tuple, Poly]:
    """Values on every tuple of basis monomials with per-slot degree bound.

    One pass over the operator terms fills the whole table: an operator term
    pairs nonzero only with the argument tuple whose slots are exactly its
    per-copy derivative monomials, contributing the term's coefficient times
    the factorials of the exponents.  Absent keys mean the value is zero;
    ffs_apply on the same tuple agrees entry by entry.
    """
    m = 2 * symbol.n
    table: Dict[tuple, Poly] = {}
    for mono, coeff in symbol.coeffs:
        consumption = [0] * (m + 1)
        for (i, j), count in mono:
            if i >= 1:
                consumption[i] += count
            consumption[j] += count
        if any(consumption[mu] + 1 > slot_degree for mu in range(1, m + 1)):
            continue
        op = _operator_for(ambient, mono)
        for op_mono, op_coeff in op.terms.items():
            output = []
            alphas: Dict[int, list] = {mu: [] for mu in range(1, m + 1)}
            weight = ONE
            ok = True
            for bank, idx, exp in op_mono:
                if idx <= m:
                    output.append((bank, idx, exp))
                else:
                    mu, j = divmod(idx - 1, m)
                    alphas[mu].append((Y, j + 1, exp))
                    weight = weight.scale_fraction(Fraction(factorial(exp)))
            key_parts = []
            for mu in range(1, m + 1):
                part = tuple(sorted(alphas[mu], key=lambda t: t[1]))
                if sum(e for _, _, e in part) > slot_degree:
                    ok = False
                    break
                key_parts.append(part)
            if not ok:
                continue
            key = tuple(key_parts)
            add = Poly.monomial(output, coeff * op_coeff * weight)
            prev = table.get(key)
            table[key] = add if prev is None else prev + add
    return {k: p for k, p in table.items() if not p.is_zero()}


def ffs_cocycle(sym: SymplecticData, budget_hint: int = 0):
    """The 2n-cocycle as a normalized dual-valued evaluator."""
    from .hochschild import Cochain, DUAL, INVOLUTION_TWIST

    def ev(*args):
        total = sum(a.degree() for a in args)
        symbol = cached_symbol(sym.n, max(total, budget_hint))
        return ffs_apply(symbol, args)

    return Cochain(2 * sym.n, sym, DUAL, INVOLUTION_TWIST, ev,
                   normalized=True, label=f"tau_{2 * sym.n}")


# -- independent unit-square route for n = 1 ---------------------------------


def ffs_hypercube_n1(args: Sequence[WeylElement],
                     d_out: Optional[int] = None) -> WeylElement:
    """Same two-argument cocycle via iterated integrals over the unit square.

    Expands exp(i [ W01 (1 - 2 t0 t1) + W02 (1 - 2 t0) + W12 (1 - 2 t0 + 2 t0 t1) ])
    against the Jacobian factor t0, integrating each t-monomial exactly.
    """
    ambient = args[0].ambient
    if ambient.n != 1:
        raise ValueError("the unit-square route is specific to n = 1")
    if len(args) != 2:
        raise ValueError("expected 2 arguments")
    degrees = [a.degree() for a in args]
    total = sum(degrees)

    t0 = Poly.variable(T, 1)
    t1 = Poly.variable(T, 2)
    lin = {
        (0, 1): Poly.one() - (t0 * t1).scale(Scalar.of(2)),
        (0, 2): Poly.one() - t0.scale(Scalar.of(2)),
        (1, 2): Poly.one() - t0.scale(Scalar.of(2)) + (t0 * t1).scale(Scalar.of(2)),
    }
    result = Poly.zero()
    max_order = max(0, total - 2)
    for m01 in range(max_order + 1):
        for m02 in range(max_order + 1 - m01):
            for m12 in range(0, (max_order - m01 - m02) // 2 + 1):
                counts = {(0, 1): m01, (0, 2): m02, (1, 2): m12}
                consumption = [0, m01 + m12, m02 + m12]
                if any(consumption[mu] + 1 > degrees[mu - 1] for mu in (1, 2)):
                    continue
                tpoly = t0
                denom = 1
                for pair, c in counts.items():
                    tpoly = tpoly * (lin[pair] ** c)
                    denom *= factorial(c)
                coeff = tpoly.integrate_unit(1).integrate_unit(2).constant_term()
                order = m01 + m02 + m12
                coeff = coeff * (I ** order)
                coeff = coeff.scale_fraction(Fraction(1, denom))
                if coeff.is_zero():
                    continue
                mono = tuple((pair, c) for pair, c in sorted(counts.items()) if c)
                op = _operator_for(ambient, mono)
                result = result + _apply_operator(op, args, ambient).scale(coeff)
    if d_out is not None and result.degree() > d_out:
        raise InsufficientExpansionError(
            f"result degree {result.degree()} exceeds requested bound {d_out}")
    return WeylElement(result, ambient)
