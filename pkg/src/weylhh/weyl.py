"""The Weyl algebra: symplectic data, the star product, involution, supertrace
and the bilinear form built from it.

Elements are polynomials in the Y bank under the exponential-bidifferential
star product

    a * b = a exp( i <-d_j  pi^{jk} ->d_k ) b ,

which terminates because a is polynomial.  The generators then satisfy
y^j y^k - y^k y^j = 2 i pi^{jk}.

A dual-space element (a formal power series paired against polynomials) is a
WeylElement carrying a truncation marker: every stored term of total degree
<= truncation is exact, everything above is unknown and never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import linalg
from .errors import AmbientMismatchError, BudgetError
from .poly import Poly, Y, Z
from .scalars import I, ONE, ZERO, Scalar

Matrix = Tuple[Tuple[Scalar, ...], ...]


@dataclass(frozen=True)
class SymplecticData:
    """Dimension parameter n, the bivector pi and its two-form dual omega.

    The sign convention is fixed by omega . pi = identity.  Direct dataclass
    construction is unvalidated (tests exploit this for negative controls);
    use the factories for checked data.
    """

    n: int
    pi: Matrix
    omega: Matrix

    @staticmethod
    def canonical(n: int) -> "SymplecticData":
        """Block form pi^{2k-1,2k} = 1 = -pi^{2k,2k-1}."""
        size = 2 * n
        pi = [[ZERO] * size for _ in range(size)]
        om = [[ZERO] * size for _ in range(size)]
        for k in range(n):
            a, b = 2 * k, 2 * k + 1
            pi[a][b] = ONE
            pi[b][a] = -ONE
            om[a][b] = -ONE
            om[b][a] = ONE
        return SymplecticData(n, linalg.mat_from_rows(pi), linalg.mat_from_rows(om))

    @staticmethod
    def from_pi(n: int, pi: Sequence[Sequence[Scalar]]) -> "SymplecticData":
        pi = linalg.mat_from_rows(pi)
        size = 2 * n
        if len(pi) != size or any(len(r) != size for r in pi):
            raise ValueError("pi must be 2n x 2n")
        for i in range(size):
            for j in range(size):
                if pi[i][j] != -pi[j][i]:
                    raise ValueError("pi must be antisymmetric")
        omega = linalg.mat_inverse(pi, ONE, ZERO)
        return SymplecticData(n, pi, omega)

    def validate(self) -> None:
        size = 2 * self.n
        prod = linalg.mat_mul(self.omega, self.pi)
        if prod != linalg.identity(size, ONE, ZERO):
            raise ValueError("omega . pi must be the identity")
        if linalg.mat_det(self.pi).is_zero():
            raise ValueError("pi must be nondegenerate")


def omega_pairing(sym: SymplecticData, u: Sequence[Poly], v: Sequence[Poly]) -> Poly:
    """omega_{jk} u^j v^k for component vectors of polynomials (1-based lists)."""
    out = Poly.zero()
    size = 2 * sym.n
    for j in range(size):
        for k in range(size):
            c = sym.omega[j][k]
            if not c.is_zero():
                out = out + (u[j] * v[k]).scale(c)
    return out


class WeylElement:
    """A polynomial (or truncated series) in the Y bank over a fixed ambient."""

    __slots__ = ("poly", "ambient", "truncation")

    def __init__(self, poly: Poly, ambient: SymplecticData,
                 truncation: Optional[int] = None):
        if poly.has_bank(Z) or poly.has_bank("T"):
            raise ValueError("WeylElement must involve only Y-bank variables")
        if poly.max_index(Y) > 2 * ambient.n:
            raise ValueError("variable index exceeds 2n")
        if truncation is not None:
            poly = poly.truncate(truncation)
        self.poly = poly
        self.ambient = ambient
        self.truncation = truncation

    # -- constructors --------------------------------------------------

    @staticmethod
    def const(c: Scalar, ambient: SymplecticData) -> "WeylElement":
        return WeylElement(Poly.const(c), ambient)

    @staticmethod
    def one(ambient: SymplecticData) -> "WeylElement":
        return WeylElement(Poly.one(), ambient)

    @staticmethod
    def zero(ambient: SymplecticData) -> "WeylElement":
        return WeylElement(Poly.zero(), ambient)

    @staticmethod
    def generator(j: int, ambient: SymplecticData) -> "WeylElement":
        return WeylElement(Poly.variable(Y, j), ambient)

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def degree(self) -> int:
        return self.poly.degree()

    def parity(self) -> Optional[int]:
        """0 or 1 for homogeneous parity under y -> -y, else None."""
        if self.poly.is_zero():
            return 0
        seen = {sum(e for _, _, e in m) % 2 for m in self.poly.terms}
        if len(seen) == 1:
            return seen.pop()
        return None

    def restrict(self, truncation: Optional[int]) -> "WeylElement":
        if truncation is None:
            return self
        t = truncation if self.truncation is None else min(self.truncation, truncation)
        return WeylElement(self.poly.truncate(t), self.ambient, t)

    def apply_matrix(self, matrix) -> "WeylElement":
        """Linear substitution y_j -> sum_k matrix[j][k] y_k."""
        return WeylElement(self.poly.linear_subst(Y, matrix), self.ambient,
                           self.truncation)

    def __add__(self, other: "WeylElement") -> "WeylElement":
        _check_ambient(self, other)
        t = _min_trunc(self.truncation, other.truncation)
        return WeylElement(self.poly + other.poly, self.ambient, t)

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def __neg__(self) -> "WeylElement":
        return WeylElement(-self.poly, self.ambient, self.truncation)

    def scale(self, c: Scalar) -> "WeylElement":
        return WeylElement(self.poly.scale(c), self.ambient, self.truncation)

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeylElement)
                and self.ambient == other.ambient
                and self.truncation == other.truncation
                and self.poly == other.poly)

    def key(self) -> tuple:
        return (self.ambient.n, self.truncation, self.poly.key())

    def __str__(self) -> str:
        tail = f" (trunc<={self.truncation})" if self.truncation is not None else ""
        return f"{self.poly}{tail}"

    __repr__ = __str__

    def to_json(self) -> dict:
        obj = {"n": self.ambient.n}
        obj.update(self.poly.to_json())
        if self.truncation is not None:
            obj["truncation"] = self.truncation
        return obj

    @staticmethod
    def from_json(obj: dict, ambient: Optional[SymplecticData] = None) -> "WeylElement":
        amb = ambient or SymplecticData.canonical(int(obj["n"]))
        return WeylElement(Poly.from_json(obj), amb, obj.get("truncation"))


def _check_ambient(a, b) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatchError("elements live over different symplectic data")


def _min_trunc(t1: Optional[int], t2: Optional[int]) -> Optional[int]:
    if t1 is None:
        return t2
    if t2 is None:
        return t1
    return min(t1, t2)


def star(a: WeylElement, b: WeylElement) -> WeylElement:
    """Exact star product; at most one factor may carry a truncation."""
    _check_ambient(a, b)
    if a.truncation is not None and b.truncation is not None:
        raise BudgetError("star of two truncated series is not exact")
    out_trunc = None
    if a.truncation is not None:
        out_trunc = a.truncation - b.degree()
    elif b.truncation is not None:
        out_trunc = b.truncation - a.degree()
    if out_trunc is not None and out_trunc < 0:
        raise BudgetError("truncation too small for this star product")
    prod = _star_kernel(a.poly, b.poly, a.ambient, right_z=False)
    return WeylElement(prod.truncate(out_trunc), a.ambient, out_trunc)


def _star_kernel(p: Poly, q: Poly, sym: SymplecticData, right_z: bool) -> Poly:
    """Shared expansion for the Weyl and form star products.

    Left derivatives act in Y; right derivatives act in Y (and Z when
    right_z).  Enumerates derivative multi-indices as a tree, one node per
    multi-index, pruning branches as soon as either side dies.
    """
    size = 2 * sym.n

    def right_d(poly: Poly, j: int) -> Poly:
        out = Poly.zero()
        for k in range(size):
            c = sym.pi[j - 1][k]
            if not c.is_zero():
                d = poly.diff(Y, k + 1)
                if right_z:
                    d = d + poly.diff(Z, k + 1)
                out = out + d.scale(c)
        return out

    acc: dict = {}

    def accumulate(dp: Poly, dq: Poly, coeff: Scalar) -> None:
        for m, c in (dp * dq).terms.items():
            add = c * coeff
            prev = acc.get(m)
            add = add if prev is None else prev + add
            if add.is_zero():
                acc.pop(m, None)
            else:
                acc[m] = add

    stack = [(1, p, q, ONE)]
    while stack:
        j0, dp, dq, coeff = stack.pop()
        accumulate(dp, dq, coeff)
        for j in range(j0, size + 1):
            cp, cq, cc = dp, dq, coeff
            order = 0
            while True:
                cp = cp.diff(Y, j)
                if cp.is_zero():
                    break
                cq = right_d(cq, j)
                if cq.is_zero():
                    break
                order += 1
                cc = cc * I / Scalar.rational(order)
                stack.append((j + 1, cp, cq, cc))
    return Poly(acc)


def involution(a: WeylElement) -> WeylElement:
    """The automorphism a(y) -> a(-y)."""
    return WeylElement(a.poly.flip_signs([Y]), a.ambient, a.truncation)


def supertrace(a: WeylElement) -> Scalar:
    """Evaluation at y = 0."""
    return a.poly.constant_term()


def bform(a: WeylElement, b: WeylElement) -> Scalar:
    """B(a, b) = str(a * b); exact when the truncations cover the degrees."""
    _check_ambient(a, b)
    return supertrace(star(a, b))


def gram_rank_upto(sym: SymplecticData, max_degree: int) -> Tuple[int, int]:
    """Exact rank of the B-Gram matrix on monomials of total degree <= bound."""
    size = 2 * sym.n
    monos = []
    for total in range(max_degree + 1):
        for exps in _exponents(size, total):
            monos.append(WeylElement(
                Poly.monomial([(Y, i + 1, e) for i, e in enumerate(exps) if e]),
                sym))
    gram = tuple(
        tuple(bform(m1, m2) for m2 in monos)
        for m1 in monos
    )
    return linalg.mat_rank(gram), len(monos)


def _exponents(nvars: int, total: int):
    if nvars == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _exponents(nvars - 1, total - head):
            yield (head,) + rest
