import random
from fractions import Fraction

import pytest

from weylhh.errors import InsufficientExpansionError
from weylhh.ffs import (cached_symbol, ffs_apply, ffs_build, ffs_cocycle,
                        ffs_hypercube_n1, simplex_moment)
from weylhh.hochschild import Chain, SampleSpec, pair_chain, verify_cocycle
from weylhh.poly import Poly, Y
from weylhh.sampling import random_weyl
from weylhh.scalars import I, Scalar
from weylhh.weyl import SymplecticData, WeylElement, star


def halves(x, den):
    return Scalar.of(Fraction(x, den))


def test_simplex_moments():
    assert simplex_moment((0, 0)) == halves(1, 2)
    assert simplex_moment((0, 0, 0, 0)) == halves(1, 24)
    assert simplex_moment((1, 0)) == halves(1, 6)
    # iterated power-rule oracle for a couple of cases
    # int_0^1 du2 int_0^{u2} u1^2 u2 du1 = int u2^4/3 = 1/15
    assert simplex_moment((2, 1)) == halves(1, 15)


def test_moment_matches_brute_force_iterated_integration():
    # independent oracle: expand via the T bank and integrate iteratively
    from weylhh.poly import T

    def brute(exps):
        m = len(exps)
        poly = Poly.monomial([(T, k + 1, e) for k, e in enumerate(exps) if e])
        # integrate u_1 from 0 to u_2, ..., u_m from 0 to 1
        for k in range(1, m):
            # int_0^{u_{k+1}} u_k^e du_k: raise exponent, then substitute
            lifted = Poly.zero()
            for mono, c in poly.terms.items():
                e = 0
                rest = []
                for b, i, ex in mono:
                    if b == T and i == k:
                        e = ex
                    else:
                        rest.append((b, i, ex))
                lifted = lifted + Poly.monomial(
                    rest + [(T, k + 1, e + 1)], c * halves(1, e + 1))
            poly = lifted
        return poly.integrate_unit(len(exps)).constant_term()

    rng = random.Random(3)
    for _ in range(20):
        exps = tuple(rng.randint(0, 3) for _ in range(rng.choice((2, 4))))
        assert simplex_moment(exps) == brute(exps)


def test_symbol_order_one_coefficient():
    symbol = ffs_build(1, 8)
    coeffs = symbol.coeff_map()
    # the pairing of the two argument slots carries int(1 + 2u1 - 2u2) = 1/6
    assert coeffs[(((1, 2), 1),)] == I * halves(1, 6)
    # order zero: the simplex volume
    assert coeffs[()] == halves(1, 2)


def test_symbol_reversal_symmetry():
    # moments are invariant under u_k -> 1 - u_{2n+1-k} up to the sign of the
    # zero-sector order; checked on the stored coefficients directly.
    for n, budget in ((1, 6), (2, 6)):
        symbol = ffs_build(n, budget)
        coeffs = symbol.coeff_map()
        m = 2 * n
        for mono, value in coeffs.items():
            flipped = []
            zero_order = 0
            for (i, j), count in mono:
                if i == 0:
                    zero_order += count
                    flipped.append(((0, m + 1 - j), count))
                else:
                    flipped.append(((m + 1 - j, m + 1 - i), count))
            key = tuple(sorted(flipped))
            partner = coeffs.get(key, Scalar.of(0))
            expect = -value if zero_order % 2 else value
            assert partner == expect, (mono, key)


def test_generator_values(sym1):
    y1 = WeylElement.generator(1, sym1)
    y2 = WeylElement.generator(2, sym1)
    symbol = cached_symbol(1, 4)
    assert ffs_apply(symbol, [y1, y2]).poly == Poly.const(halves(1, 2))
    assert ffs_apply(symbol, [WeylElement.one(sym1), y2]).is_zero()
    assert ffs_apply(symbol, [y1, y1]).is_zero()


def test_normalized_on_unit(sym1, rng):
    symbol = cached_symbol(1, 8)
    one = WeylElement.one(sym1)
    for _ in range(10):
        a = random_weyl(rng, sym1, 4)
        assert ffs_apply(symbol, [one, a]).is_zero()
        assert ffs_apply(symbol, [a, one]).is_zero()


def test_budget_errors(sym1):
    small = ffs_build(1, 2)
    big = WeylElement(Poly.monomial([(Y, 1, 3)]), sym1)
    y2 = WeylElement.generator(2, sym1)
    with pytest.raises(InsufficientExpansionError):
        ffs_apply(small, [big, y2])
    with pytest.raises(InsufficientExpansionError):
        ffs_apply(cached_symbol(1, 6), [big, y2], d_out=0)


def test_multilinearity(sym1, rng):
    symbol = cached_symbol(1, 8)
    for _ in range(10):
        a1 = random_weyl(rng, sym1, 3)
        a2 = random_weyl(rng, sym1, 3)
        b = random_weyl(rng, sym1, 3)
        c = Scalar.of(rng.randint(-4, 4), rng.randint(-4, 4))
        left = ffs_apply(symbol, [a1 + a2.scale(c), b])
        right = ffs_apply(symbol, [a1, b]) + ffs_apply(symbol, [a2, b]).scale(c)
        assert left == right


def test_hypercube_equals_simplex_route(sym1, rng):
    y1 = WeylElement.generator(1, sym1)
    y2 = WeylElement.generator(2, sym1)
    assert ffs_hypercube_n1([y1, y2]).poly == Poly.const(halves(1, 2))
    assert ffs_hypercube_n1([WeylElement.one(sym1), y2]).is_zero()
    symbol = cached_symbol(1, 8)
    for _ in range(25):
        a = random_weyl(rng, sym1, 4)
        b = random_weyl(rng, sym1, 4)
        assert ffs_hypercube_n1([a, b]) == ffs_apply(symbol, [a, b])


def test_cocycle_n1(sym1):
    tau = ffs_cocycle(sym1)
    report = verify_cocycle(tau, SampleSpec(seed=17, count=25, max_degree=3))
    assert report.ok


def test_pairings(sym1, sym2):
    tau2 = ffs_cocycle(sym1)
    y = [WeylElement.generator(j, sym1) for j in (1, 2)]
    c2 = Chain([(WeylElement.one(sym1), tuple(y))])
    assert pair_chain(tau2, c2) == halves(1, 2)

    tau4 = ffs_cocycle(sym2)
    gens = [WeylElement.generator(j, sym2) for j in (1, 2, 3, 4)]
    c4 = Chain([(WeylElement.one(sym2), tuple(gens))])
    assert pair_chain(tau4, c4) == halves(1, 24)


def test_flipped_convention_is_detected(sym1):
    # negative control: consistently flipping the bivector sign flips the
    # commutation relations, so the pinned pairing values must change.
    flipped = SymplecticData(
        1,
        tuple(tuple(-c for c in row) for row in sym1.pi),
        tuple(tuple(-c for c in row) for row in sym1.omega),
    )
    flipped.validate()
    y1 = WeylElement.generator(1, flipped)
    y2 = WeylElement.generator(2, flipped)
    comm = star(y1, y2) - star(y2, y1)
    assert comm.poly == Poly.const(Scalar.of(0, -2))
