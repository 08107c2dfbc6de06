"""Hochschild cochains with twisted bimodule coefficients.

A cochain is a finitely described multilinear evaluator together with the
metadata needed to differentiate it: its arity, the kind of module its
values live in (dual series, z-forms, or smash-product values) and the right
twist.  The differential follows the usual formula

    (d f)(a_1..a_{p+1}) = a_1 * f(a_2..)
                          + sum_k (-1)^k f(.., a_k * a_{k+1}, ..)
                          + (-1)^{p+1} f(a_1..a_p) * rho(a_{p+1})

with rho the right twist (involution for the dual module, the group action
for twisted modules, identity on the smash product).  The split d = d1 + d2
keeps the first term in d1 and the rest in d2.

Cochain-level exterior operators carry the Koszul sign (-1)^arity: this is
what makes d anticommute with the Hochschild differential and the homotopy
anticommute with d2.  Value-level operators (used by the descent
construction) are the undressed ones from the forms module.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import AmbientMismatchError
from .forms import ext_d, form_involution, form_star, homotopy_s
from .scalars import ONE, Scalar
from .weyl import SymplecticData, WeylElement, bform, involution, star

DUAL = "dual"
FORM = "form"
SMASH = "smash"


@dataclass(frozen=True)
class Twist:
    """Right (and optionally left) group-like action on the coefficients.

    kind is one of "identity", "involution", "group", "group_involution";
    matrix is the symplectic matrix for the group kinds.
    """

    kind: str = "involution"
    matrix: Optional[tuple] = None

    def right(self, a):
        """Apply the twist to an algebra element before right multiplication."""
        if self.kind == "identity":
            return a
        if self.kind == "involution":
            return involution(a) if isinstance(a, WeylElement) else form_involution(a)
        if self.kind == "group":
            return a.apply_matrix(self.matrix)
        if self.kind == "group_involution":
            twisted = a.apply_matrix(self.matrix)
            return (involution(twisted) if isinstance(twisted, WeylElement)
                    else form_involution(twisted))
        raise ValueError(f"unknown twist kind {self.kind}")


IDENTITY_TWIST = Twist("identity")
INVOLUTION_TWIST = Twist("involution")


def group_twist(matrix) -> Twist:
    return Twist("group", tuple(tuple(row) for row in matrix))


class Cochain:
    """A p-cochain as an evaluator plus module metadata."""

    def __init__(self, arity: int, ambient: SymplecticData, kind: str,
                 twist: Twist, fn: Callable, normalized: bool = False,
                 label: str = ""):
        self.arity = arity
        self.ambient = ambient
        self.kind = kind
        self.twist = twist
        self.fn = fn
        self.normalized = normalized
        self.label = label

    def __call__(self, *args):
        if len(args) != self.arity:
            raise ValueError(f"cochain of arity {self.arity} got {len(args)} arguments")
        return self.fn(*args)

    def map_values(self, op: Callable, label: str = "") -> "Cochain":
        return Cochain(self.arity, self.ambient, self.kind, self.twist,
                       lambda *args: op(self.fn(*args)),
                       normalized=self.normalized, label=label or self.label)


def constant_cochain(value, ambient: SymplecticData, kind: str,
                     twist: Twist, label: str = "") -> Cochain:
    return Cochain(0, ambient, kind, twist, lambda: value, label=label)


def _left_mul(kind: str, a, value):
    if kind == DUAL:
        return star(a, value)
    if kind == FORM:
        return form_star(a, value)
    return a * value


def _right_mul(kind: str, value, a):
    if kind == DUAL:
        return star(value, a)
    if kind == FORM:
        return form_star(value, a)
    return value * a


def _arg_mul(a, b):
    if isinstance(a, WeylElement):
        return star(a, b)
    return a * b


def _scale_value(value, c: Scalar):
    return value.scale(c)


def hochschild_d(f: Cochain) -> Cochain:
    """Full differential; arity goes up by one."""
    p = f.arity

    def ev(*args):
        total = _left_mul(f.kind, args[0], f(*args[1:]))
        for k in range(1, p + 1):
            merged = args[:k - 1] + (_arg_mul(args[k - 1], args[k]),) + args[k + 1:]
            term = f(*merged)
            if k % 2:
                total = total - term
            else:
                total = total + term
        last = _right_mul(f.kind, f(*args[:-1]), f.twist.right(args[-1]))
        if p % 2:
            total = total + last
        else:
            total = total - last
        return total

    return Cochain(p + 1, f.ambient, f.kind, f.twist, ev,
                   normalized=f.normalized, label=f"d({f.label})")


def hochschild_d1(f: Cochain) -> Cochain:
    """First piece only: a_1 * f(a_2, ..., a_{p+1})."""
    def ev(*args):
        return _left_mul(f.kind, args[0], f(*args[1:]))

    return Cochain(f.arity + 1, f.ambient, f.kind, f.twist, ev,
                   normalized=f.normalized, label=f"d1({f.label})")


def hochschild_d2(f: Cochain) -> Cochain:
    """The remainder d - d1 (merges plus the twisted right action)."""
    p = f.arity

    def ev(*args):
        total = None
        for k in range(1, p + 1):
            merged = args[:k - 1] + (_arg_mul(args[k - 1], args[k]),) + args[k + 1:]
            term = f(*merged)
            term = _scale_value(term, Scalar.of(-1) if k % 2 else ONE)
            total = term if total is None else total + term
        last = _right_mul(f.kind, f(*args[:-1]), f.twist.right(args[-1]))
        last = _scale_value(last, ONE if p % 2 else Scalar.of(-1))
        return last if total is None else total + last

    return Cochain(p + 1, f.ambient, f.kind, f.twist, ev,
                   normalized=f.normalized, label=f"d2({f.label})")


def cochain_ext_d(f: Cochain, dressed: bool = True) -> Cochain:
    """Exterior differential on form-valued cochains, (-1)^arity dressed."""
    sign = -1 if (dressed and f.arity % 2) else 1

    def op(v):
        dv = ext_d(v)
        return -dv if sign < 0 else dv

    return f.map_values(op, label=f"extd({f.label})")


def cochain_s(f: Cochain, dressed: bool = True) -> Cochain:
    """Contraction homotopy on form-valued cochains, (-1)^arity dressed."""
    sign = -1 if (dressed and f.arity % 2) else 1

    def op(v):
        sv = homotopy_s(v)
        return -sv if sign < 0 else sv

    return f.map_values(op, label=f"s({f.label})")


# -- verification -----------------------------------------------------------


@dataclass
class SampleSpec:
    seed: int
    count: int
    max_degree: int
    group: object = None
    stratified: bool = True


@dataclass
class Report:
    checked: int
    passed: int
    first_failure: Optional[str]
    seed: int
    degree_bound: int
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.checked == self.passed

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "seed": self.seed,
            "degree_bound": self.degree_bound,
            **({"detail": self.detail} if self.detail else {}),
        }

    def __str__(self) -> str:
        return json.dumps(self.to_json())


def verify_cocycle(f: Cochain, samples: SampleSpec) -> Report:
    """Evaluate the full differential of f on sampled tuples; exact zero test."""
    from . import sampling

    tuples = sampling.cocycle_tuples(f, samples)
    df = hochschild_d(f)
    checked = passed = 0
    first_failure = None
    for args in tuples:
        checked += 1
        value = df(*args)
        if value.is_zero():
            passed += 1
        elif first_failure is None:
            first_failure = "(" + ", ".join(str(a) for a in args) + ")"
    return Report(checked, passed, first_failure, samples.seed, samples.max_degree)


# -- chains and the pairing ---------------------------------------------------


@dataclass
class Chain:
    """A formal sum of (coefficient element) x (wedge of algebra elements)."""

    terms: List[Tuple[WeylElement, Tuple[WeylElement, ...]]]
    twist: Twist = IDENTITY_TWIST

    @property
    def arity(self) -> int:
        return len(self.terms[0][1]) if self.terms else 0


def wedge_eval(f: Cochain, args: Sequence[WeylElement]):
    """Antisymmetrized evaluation with the 1/p! convention."""
    p = len(args)
    if p != f.arity:
        raise AmbientMismatchError("chain arity does not match cochain arity")
    total = None
    for perm in itertools.permutations(range(p)):
        sign = _perm_sign(perm)
        term = f(*[args[i] for i in perm])
        if sign < 0:
            term = _scale_value(term, Scalar.of(-1))
        total = term if total is None else total + term
    return _scale_value(total, Scalar.of(Fraction(1, factorial(p))))


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def pair_chain(f: Cochain, chain: Chain) -> Scalar:
    """Pair a dual-valued cochain with a chain through the bilinear form."""
    total = Scalar.of(0)
    for m, args in chain.terms:
        value = wedge_eval(f, args)
        total = total + bform(m, value)
    return total
