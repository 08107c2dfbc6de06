"""Exterior forms in the Z bank with the shifted star product.

A form is a map from strictly increasing dz-index tuples to polynomial
coefficients in Y and Z.  The product combines the wedge of dz factors with
a one-sided star: left derivatives act on y only, right derivatives on both
y and z, so a polynomial left factor always terminates the expansion.

The contraction homotopy s is the radial one: strip a dz index, substitute
z -> t z, weigh by t^(q-1) and integrate t over [0, 1].  Together with the
exterior differential d it satisfies s d + d s = id - p, where p projects a
form onto the z-constant part of its 0-form component.  s also squares to
zero.  The Hochschild-degree sign of the cochain-level differential lives in
the hochschild module; everything here is degree-agnostic.

Truncation bookkeeping: a form with truncation D stores exactly the terms of
total (y,z)-degree <= D and certifies them; operations propagate the bound
(star with a degree-d polynomial costs d, the differential costs 1, s gains
1) and eagerly drop anything above it.
"""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Tuple

from .errors import AmbientMismatchError, BudgetError, TContaminationError
from .poly import Poly, T, Y, Z, fresh_t_index
from .scalars import ONE, Scalar
from .weyl import SymplecticData, WeylElement, _min_trunc, _star_kernel

DzIndex = Tuple[int, ...]


def wedge_merge(i1: DzIndex, i2: DzIndex) -> Optional[Tuple[int, DzIndex]]:
    """Merge two increasing index tuples; None when they share an index.

    Returns (sign, merged) with the sign of the permutation sorting the
    concatenation.
    """
    if set(i1) & set(i2):
        return None
    merged = i1 + i2
    swaps = 0
    items = list(merged)
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if items[a] > items[b]:
                swaps += 1
    return (-1) ** swaps, tuple(sorted(items))


class FormElement:
    __slots__ = ("components", "ambient", "truncation")

    def __init__(self, components: Dict[DzIndex, Poly], ambient: SymplecticData,
                 truncation: Optional[int] = None):
        clean: Dict[DzIndex, Poly] = {}
        for idx, poly in components.items():
            if list(idx) != sorted(set(idx)):
                raise ValueError("dz indices must be strictly increasing")
            if idx and max(idx) > 2 * ambient.n:
                raise ValueError("dz index exceeds 2n")
            if poly.has_bank(T):
                raise TContaminationError("form coefficient still carries a T variable")
            if truncation is not None:
                poly = poly.truncate(truncation)
            if not poly.is_zero():
                clean[idx] = poly
        self.components = clean
        self.ambient = ambient
        self.truncation = truncation

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ambient: SymplecticData, truncation: Optional[int] = None) -> "FormElement":
        return FormElement({}, ambient, truncation)

    @staticmethod
    def from_poly(poly: Poly, ambient: SymplecticData,
                  truncation: Optional[int] = None) -> "FormElement":
        return FormElement({(): poly}, ambient, truncation)

    @staticmethod
    def from_weyl(a: WeylElement) -> "FormElement":
        return FormElement({(): a.poly}, a.ambient, a.truncation)

    @staticmethod
    def dz(indices: Iterable[int], ambient: SymplecticData,
           coeff: Optional[Poly] = None) -> "FormElement":
        poly = coeff if coeff is not None else Poly.one()
        return FormElement({tuple(indices): poly}, ambient)

    @staticmethod
    def top_dz(ambient: SymplecticData) -> "FormElement":
        return FormElement.dz(range(1, 2 * ambient.n + 1), ambient)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.components

    def degrees(self) -> set:
        return {len(idx) for idx in self.components}

    def is_homogeneous(self, q: int) -> bool:
        return all(len(idx) == q for idx in self.components)

    def component(self, idx: DzIndex) -> Poly:
        return self.components.get(tuple(idx), Poly.zero())

    def poly_degree(self) -> int:
        if not self.components:
            return 0
        return max(p.degree() for p in self.components.values())

    def __add__(self, other: "FormElement") -> "FormElement":
        _same_ambient(self, other)
        t = _min_trunc(self.truncation, other.truncation)
        out = dict(self.components)
        for idx, poly in other.components.items():
            out[idx] = out.get(idx, Poly.zero()) + poly
        return FormElement(out, self.ambient, t)

    def __sub__(self, other: "FormElement") -> "FormElement":
        return self + (-other)

    def __neg__(self) -> "FormElement":
        return FormElement({i: -p for i, p in self.components.items()},
                           self.ambient, self.truncation)

    def scale(self, c: Scalar) -> "FormElement":
        return FormElement({i: p.scale(c) for i, p in self.components.items()},
                           self.ambient, self.truncation)

    def restrict(self, truncation: Optional[int]) -> "FormElement":
        t = _min_trunc(self.truncation, truncation)
        return FormElement(self.components, self.ambient, t)

    def apply_matrix(self, matrix) -> "FormElement":
        """Linear substitution on y, z and dz by the same matrix."""
        out: Dict[DzIndex, Poly] = {}
        for idx, poly in self.components.items():
            p = poly.linear_subst(Y, matrix).linear_subst(Z, matrix)
            # dz_i -> sum_l matrix[i][l] dz_l, expanded as a wedge of 1-forms.
            pieces: Dict[DzIndex, Scalar] = {(): ONE}
            for i in idx:
                nxt: Dict[DzIndex, Scalar] = {}
                for part, coeff in pieces.items():
                    for l0, c in enumerate(matrix[i - 1]):
                        if c.is_zero():
                            continue
                        merged = wedge_merge(part, (l0 + 1,))
                        if merged is None:
                            continue
                        sign, nidx = merged
                        add = coeff * c
                        if sign < 0:
                            add = -add
                        prev = nxt.get(nidx)
                        add = add if prev is None else prev + add
                        if add.is_zero():
                            nxt.pop(nidx, None)
                        else:
                            nxt[nidx] = add
                pieces = nxt
            for nidx, coeff in pieces.items():
                out[nidx] = out.get(nidx, Poly.zero()) + p.scale(coeff)
        return FormElement(out, self.ambient, self.truncation)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FormElement)
                and self.ambient == other.ambient
                and self.truncation == other.truncation
                and self.components == other.components)

    def key(self) -> tuple:
        return (self.ambient.n, self.truncation,
                tuple(sorted((i, p.key()) for i, p in self.components.items())))

    def __str__(self) -> str:
        if not self.components:
            return "0"
        parts = []
        for idx in sorted(self.components):
            dz = "^".join(f"dz{i}" for i in idx) or "1"
            parts.append(f"[{self.components[idx]}] {dz}")
        tail = f" (trunc<={self.truncation})" if self.truncation is not None else ""
        return " + ".join(parts) + tail

    __repr__ = __str__

    def to_json(self) -> dict:
        comps = [
            {"dz": list(idx), "poly": poly.to_json()}
            for idx, poly in sorted(self.components.items())
        ]
        return {"n": self.ambient.n, "components": comps,
                "truncation": self.truncation}

    @staticmethod
    def from_json(obj: dict, ambient: Optional[SymplecticData] = None) -> "FormElement":
        amb = ambient or SymplecticData.canonical(int(obj["n"]))
        comps = {
            tuple(int(i) for i in c["dz"]): Poly.from_json(c["poly"])
            for c in obj["components"]
        }
        return FormElement(comps, amb, obj.get("truncation"))


def _same_ambient(a, b) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatchError("forms live over different symplectic data")


def _as_form(x) -> FormElement:
    return x if isinstance(x, FormElement) else FormElement.from_weyl(x)


def form_star(a, b) -> FormElement:
    """Star-exterior product; at most one factor may carry a truncation."""
    a = _as_form(a)
    b = _as_form(b)
    _same_ambient(a, b)
    if a.truncation is not None and b.truncation is not None:
        raise BudgetError("star of two truncated forms is not exact")
    if a.truncation is not None:
        out_trunc = a.truncation - b.poly_degree()
    elif b.truncation is not None:
        out_trunc = b.truncation - a.poly_degree()
    else:
        out_trunc = None
    if out_trunc is not None and out_trunc < 0:
        raise BudgetError("truncation too small for this star product")
    out: Dict[DzIndex, Poly] = {}
    for i1, p1 in a.components.items():
        for i2, p2 in b.components.items():
            merged = wedge_merge(i1, i2)
            if merged is None:
                continue
            sign, idx = merged
            prod = _star_kernel(p1, p2, a.ambient, right_z=True)
            prod = prod.truncate(out_trunc)
            if sign < 0:
                prod = -prod
            out[idx] = out.get(idx, Poly.zero()) + prod
    return FormElement(out, a.ambient, out_trunc)


def form_involution(a: FormElement) -> FormElement:
    """a(y, z; dz) -> a(-y, -z; -dz)."""
    out = {}
    for idx, poly in a.components.items():
        p = poly.flip_signs([Y, Z])
        if len(idx) % 2:
            p = -p
        out[idx] = p
    return FormElement(out, a.ambient, a.truncation)


def ext_d(a: FormElement) -> FormElement:
    """Exterior differential dz^i ^ d/dz^i (no Hochschild-degree sign here)."""
    out: Dict[DzIndex, Poly] = {}
    size = 2 * a.ambient.n
    for idx, poly in a.components.items():
        for i in range(1, size + 1):
            if i in idx:
                continue
            dp = poly.diff(Z, i)
            if dp.is_zero():
                continue
            merged = wedge_merge((i,), idx)
            assert merged is not None
            sign, nidx = merged
            if sign < 0:
                dp = -dp
            out[nidx] = out.get(nidx, Poly.zero()) + dp
    t = None if a.truncation is None else a.truncation - 1
    return FormElement(out, a.ambient, t)


def homotopy_s(a: FormElement) -> FormElement:
    """Radial contraction homotopy; zero on 0-forms.

    Implemented through the T bank exactly as the z-scaling integral: the
    coefficient of a q-form is taken at z -> t z, weighted by t^(q-1) and
    integrated over the unit interval, while one dz index is stripped and
    re-enters as a z factor with the alternating sign.
    """
    out: Dict[DzIndex, Poly] = {}
    for idx, poly in a.components.items():
        q = len(idx)
        if q == 0:
            continue
        tvar = fresh_t_index()
        tpoly = Poly.variable(T, tvar)
        scaled = poly.subst_scale(Z, tpoly)
        scaled = scaled * Poly.monomial([(T, tvar, q - 1)])
        integrated = scaled.integrate_unit(tvar)
        if integrated.has_bank(T):
            raise TContaminationError("integration parameter survived homotopy")
        for r, stripped in enumerate(idx):
            rest = idx[:r] + idx[r + 1:]
            term = integrated * Poly.variable(Z, stripped)
            if r % 2:
                term = -term
            out[rest] = out.get(rest, Poly.zero()) + term
    t = None if a.truncation is None else a.truncation + 1
    return FormElement(out, a.ambient, t)


def proj_p(a: FormElement) -> FormElement:
    """The z-constant part of the 0-form component (complement of sd + ds)."""
    zero_part = a.components.get((), Poly.zero()).set_bank_zero(Z)
    return FormElement({(): zero_part}, a.ambient, a.truncation)
