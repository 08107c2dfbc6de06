import pytest

from weylhh.errors import AmbientMismatchError, BudgetError
from weylhh.poly import Poly, Y
from weylhh.sampling import random_weyl
from weylhh.scalars import I, ONE, Scalar
from weylhh.weyl import (SymplecticData, WeylElement, bform, gram_rank_upto,
                         involution, star, supertrace)


def gens(sym):
    return [WeylElement.generator(j, sym) for j in range(1, 2 * sym.n + 1)]


def test_canonical_data_valid(sym1, sym2):
    sym1.validate()
    sym2.validate()


def test_defining_relations(sym1, sym2):
    for sym in (sym1, sym2):
        gs = gens(sym)
        for j, a in enumerate(gs):
            for k, b in enumerate(gs):
                comm = star(a, b) - star(b, a)
                want = Poly.const(Scalar.of(0, 2) * sym.pi[j][k])
                assert comm.poly == want


def test_unit_is_neutral(sym1, rng):
    one = WeylElement.one(sym1)
    for _ in range(10):
        a = random_weyl(rng, sym1, 4)
        assert star(one, a) == a
        assert star(a, one) == a


def test_square_star_square():
    sym = SymplecticData.canonical(1)
    a = WeylElement(Poly.monomial([(Y, 1, 2)]), sym)
    b = WeylElement(Poly.monomial([(Y, 2, 2)]), sym)
    # order-by-order expansion of the bidifferential exponential: three
    # surviving orders, computed by hand.
    expect = (Poly.monomial([(Y, 1, 2), (Y, 2, 2)])
              + Poly.monomial([(Y, 1, 1), (Y, 2, 1)], Scalar.of(0, 4))
              + Poly.const(Scalar.of(-2)))
    assert star(a, b).poly == expect


def test_star_associativity_sampled(rng):
    for n in (1, 2):
        sym = SymplecticData.canonical(n)
        for _ in range(50):
            a = random_weyl(rng, sym, 4)
            b = random_weyl(rng, sym, 4)
            c = random_weyl(rng, sym, 4)
            assert star(star(a, b), c) == star(a, star(b, c))


def test_ambient_mismatch(sym1, sym2):
    with pytest.raises(AmbientMismatchError):
        star(WeylElement.one(sym1), WeylElement.one(sym2))


def test_involution(sym1, rng):
    a = WeylElement(Poly.variable(Y, 1) + Poly.monomial([(Y, 1, 2)]), sym1)
    assert involution(a).poly == -Poly.variable(Y, 1) + Poly.monomial([(Y, 1, 2)])
    for _ in range(20):
        b = random_weyl(rng, sym1, 4)
        assert involution(involution(b)) == b
    y1, y2 = gens(sym1)
    assert involution(star(y1, y2)) == star(involution(y1), involution(y2))


def test_involution_automorphism_sampled(rng):
    sym = SymplecticData.canonical(2)
    for _ in range(20):
        a = random_weyl(rng, sym, 3)
        b = random_weyl(rng, sym, 3)
        assert involution(star(a, b)) == star(involution(a), involution(b))


def test_supertrace(sym1):
    y1, y2 = gens(sym1)
    assert supertrace(WeylElement.one(sym1)) == ONE
    assert supertrace(y1) == Scalar.of(0)
    assert supertrace(star(y1, y2)) == I


def test_bform_values(sym1):
    y1, y2 = gens(sym1)
    one = WeylElement.one(sym1)
    assert bform(one, one) == ONE
    assert bform(y1, y2) == I
    assert bform(y2, y1) == -I


def test_bform_involution_adjoint_sampled(rng):
    sym = SymplecticData.canonical(1)
    for _ in range(50):
        a = random_weyl(rng, sym, 4)
        b = random_weyl(rng, sym, 4)
        assert bform(a, b) == bform(involution(b), a)


def test_graded_symmetry_and_orthogonality(rng):
    sym = SymplecticData.canonical(1)
    for _ in range(60):
        a = random_weyl(rng, sym, 4)
        b = random_weyl(rng, sym, 4)
        pa = a.poly
        even_a = WeylElement(
            sum((pa.homogeneous_part(d) for d in range(0, 5, 2)), Poly.zero()), sym)
        odd_a = WeylElement(
            sum((pa.homogeneous_part(d) for d in range(1, 5, 2)), Poly.zero()), sym)
        pb = b.poly
        even_b = WeylElement(
            sum((pb.homogeneous_part(d) for d in range(0, 5, 2)), Poly.zero()), sym)
        odd_b = WeylElement(
            sum((pb.homogeneous_part(d) for d in range(1, 5, 2)), Poly.zero()), sym)
        # parity-homogeneous graded symmetry
        assert bform(even_a, even_b) == bform(even_b, even_a)
        assert bform(odd_a, odd_b) == -bform(odd_b, odd_a)
        # even/odd orthogonality
        assert bform(even_a, odd_b) == Scalar.of(0)
        # graded trace property
        assert supertrace(star(odd_a, odd_b)) == -supertrace(star(odd_b, odd_a))
        assert supertrace(star(even_a, b)) == supertrace(star(b, even_a))


def test_parity():
    sym = SymplecticData.canonical(1)
    assert WeylElement(Poly.variable(Y, 1), sym).parity() == 1
    assert WeylElement(Poly.monomial([(Y, 1, 2)]), sym).parity() == 0
    mixed = WeylElement(Poly.variable(Y, 1) + Poly.one(), sym)
    assert mixed.parity() is None


def test_gram_rank_full():
    # degree <= 3 keeps this test fast; the acceptance suite runs degree 6.
    rank, size = gram_rank_upto(SymplecticData.canonical(1), 3)
    assert rank == size == 10


def test_truncated_star_rules(sym1):
    series = WeylElement(Poly.one() + Poly.monomial([(Y, 1, 2)]), sym1, truncation=2)
    poly = WeylElement(Poly.variable(Y, 1), sym1)
    out = star(poly, series)
    assert out.truncation == 1
    with pytest.raises(BudgetError):
        star(series, series)
    tiny = WeylElement(Poly.one(), sym1, truncation=0)
    big = WeylElement(Poly.monomial([(Y, 1, 3)]), sym1)
    with pytest.raises(BudgetError):
        star(big, tiny)


def test_from_pi_fixes_omega():
    sym = SymplecticData.canonical(2)
    rebuilt = SymplecticData.from_pi(2, sym.pi)
    assert rebuilt.omega == sym.omega


def test_weyl_json_roundtrip(rng):
    sym = SymplecticData.canonical(1)
    a = random_weyl(rng, sym, 3)
    assert WeylElement.from_json(a.to_json()) == a
    assert a.to_json()["n"] == 1
