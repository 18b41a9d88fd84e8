"""Exterior forms with polynomial coefficients on affine coordinate space.

A k-form is a mapping from strictly increasing k-tuples of internal variable
indices (the basis forms dX_{i1} ^ ... ^ dX_{ik}) to polynomial coefficients.
Wedge product, exterior derivative, interior product against a polynomial
vector field, and alternating evaluation are all exact.

Degrees outside 0..n are represented by the zero form rather than an error,
so iterated contractions can be chained without case splits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .poly import Polynomial, Scalar, format_poly, grlex_key

IndexTuple = tuple[int, ...]


@dataclass(frozen=True)
class Shuffle:
    """A (p,q)-shuffle: a permutation increasing on its first p and last q slots."""

    perm: IndexTuple  # permutation of 0..p+q-1, as images in order
    sign: int


def _perm_sign(perm: Sequence[int]) -> int:
    inversions = sum(
        1
        for a in range(len(perm))
        for b in range(a + 1, len(perm))
        if perm[a] > perm[b]
    )
    return -1 if inversions % 2 else 1


def shuffles(p: int, q: int) -> list[Shuffle]:
    """All C(p+q, p) shuffles of {0..p+q-1}, ordered by their first run."""
    if p < 0 or q < 0:
        raise ValueError("shuffle parts must be non-negative")
    everything = range(p + q)
    out = []
    for first in itertools.combinations(everything, p):
        second = tuple(i for i in everything if i not in first)
        perm = first + second
        out.append(Shuffle(perm, _perm_sign(perm)))
    return out


def _merge_sign(a: IndexTuple, b: IndexTuple) -> tuple[int, Optional[IndexTuple]]:
    """Sign to sort the concatenation of two increasing tuples; None if they collide."""
    sign = 1
    merged = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0, None
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining entries of a
            if (len(a) - i) % 2:
                sign = -sign
            merged.append(b[j])
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return sign, tuple(merged)


class ExteriorForm:
    """Immutable exterior k-form with Polynomial coefficients."""

    __slots__ = ("n", "k", "terms")

    def __init__(
        self,
        n: int,
        k: int,
        terms: Optional[Mapping[IndexTuple, Polynomial]] = None,
    ) -> None:
        self.n = n
        self.k = k
        clean: dict[IndexTuple, Polynomial] = {}
        if terms and 0 <= k <= n:
            for idx, coeff in terms.items():
                idx = tuple(idx)
                if len(idx) != k:
                    raise ValueError(f"index tuple {idx} has length != {k}")
                if any(not 0 <= i < n for i in idx):
                    raise ValueError(f"index out of range in {idx}")
                if any(idx[a] >= idx[a + 1] for a in range(len(idx) - 1)):
                    raise ValueError(f"index tuple {idx} is not strictly increasing")
                if coeff.n != n:
                    raise ValueError("coefficient variable count mismatch")
                if not coeff.is_zero:
                    clean[idx] = clean[idx] + coeff if idx in clean else coeff
                    if clean[idx].is_zero:
                        del clean[idx]
        self.terms = clean

    @classmethod
    def zero(cls, n: int, k: int) -> "ExteriorForm":
        return cls(n, k)

    @classmethod
    def basis(cls, n: int, idx: Sequence[int], coeff: Union[Polynomial, Scalar] = 1) -> "ExteriorForm":
        if not isinstance(coeff, Polynomial):
            coeff = Polynomial.constant(n, coeff)
        return cls(n, len(idx), {tuple(idx): coeff})

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "ExteriorForm":
        """A 0-form."""
        return cls(p.n, 0, {(): p})

    # -- structure -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ExteriorForm)
            and self.n == other.n
            and self.k == other.k
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"ExteriorForm({self.n}, {self.k}, {self!s})"

    def __str__(self) -> str:
        return format_form(self)

    def _check(self, other: "ExteriorForm") -> None:
        if self.n != other.n:
            raise ValueError(f"mismatched variable count: {self.n} vs {other.n}")

    def __add__(self, other: "ExteriorForm") -> "ExteriorForm":
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.k != other.k:
            raise ValueError(f"cannot add forms of degree {self.k} and {other.k}")
        merged = dict(self.terms)
        for idx, c in other.terms.items():
            s = merged.get(idx)
            s = c if s is None else s + c
            if s.is_zero:
                merged.pop(idx, None)
            else:
                merged[idx] = s
        out = ExteriorForm.__new__(ExteriorForm)
        out.n, out.k, out.terms = self.n, self.k, merged
        return out

    def __sub__(self, other: "ExteriorForm") -> "ExteriorForm":
        return self + (-other)

    def __neg__(self) -> "ExteriorForm":
        out = ExteriorForm.__new__(ExteriorForm)
        out.n, out.k = self.n, self.k
        out.terms = {i: -c for i, c in self.terms.items()}
        return out

    def __mul__(self, scalar: Union[Polynomial, Scalar]) -> "ExteriorForm":
        if isinstance(scalar, Polynomial):
            return ExteriorForm(
                self.n, self.k, {i: c * scalar for i, c in self.terms.items()}
            )
        s = Fraction(scalar)
        if not s:
            return ExteriorForm.zero(self.n, self.k)
        out = ExteriorForm.__new__(ExteriorForm)
        out.n, out.k = self.n, self.k
        out.terms = {i: c * s for i, c in self.terms.items()}
        return out

    __rmul__ = __mul__

    # -- exterior calculus ----------------------------------------------

    def wedge(self, other: "ExteriorForm") -> "ExteriorForm":
        self._check(other)
        k = self.k + other.k
        if k > self.n:
            return ExteriorForm.zero(self.n, k)
        out: dict[IndexTuple, Polynomial] = {}
        for ia, ca in self.terms.items():
            for ib, cb in other.terms.items():
                sign, merged = _merge_sign(ia, ib)
                if merged is None:
                    continue
                c = ca * cb
                if sign < 0:
                    c = -c
                s = out.get(merged)
                s = c if s is None else s + c
                if s.is_zero:
                    out.pop(merged, None)
                else:
                    out[merged] = s
        result = ExteriorForm.__new__(ExteriorForm)
        result.n, result.k, result.terms = self.n, k, out
        return result

    def d(self) -> "ExteriorForm":
        """Exterior derivative; satisfies d(d(a)) = 0."""
        out: dict[IndexTuple, Polynomial] = {}
        for idx, coeff in self.terms.items():
            for i in range(self.n):
                dc = coeff.partial(i)
                if dc.is_zero:
                    continue
                sign, merged = _merge_sign((i,), idx)
                if merged is None:
                    continue
                c = dc if sign > 0 else -dc
                s = out.get(merged)
                s = c if s is None else s + c
                if s.is_zero:
                    out.pop(merged, None)
                else:
                    out[merged] = s
        result = ExteriorForm.__new__(ExteriorForm)
        result.n, result.k, result.terms = self.n, self.k + 1, out
        return result

    def interior(self, components: Sequence[Polynomial]) -> "ExteriorForm":
        """Interior product i(Y) for Y = sum components[i] * d/dX_i.

        i(Y)theta(Z_1,...,Z_{k-1}) = theta(Y, Z_1,...,Z_{k-1}).
        """
        if self.k == 0:
            raise ValueError("interior product of a degree-0 form")
        if len(components) != self.n:
            raise ValueError("vector field must have one component per variable")
        out: dict[IndexTuple, Polynomial] = {}
        for idx, coeff in self.terms.items():
            for pos, i in enumerate(idx):
                comp = components[i]
                if comp.is_zero:
                    continue
                c = coeff * comp
                if pos % 2:
                    c = -c
                rest = idx[:pos] + idx[pos + 1 :]
                s = out.get(rest)
                s = c if s is None else s + c
                if s.is_zero:
                    out.pop(rest, None)
                else:
                    out[rest] = s
        result = ExteriorForm.__new__(ExteriorForm)
        result.n, result.k, result.terms = self.n, self.k - 1, out
        return result

    def interior_coordinate(self, i: int) -> "ExteriorForm":
        """Fast path: interior product against the coordinate field d/dX_i."""
        if self.k == 0:
            return ExteriorForm.zero(self.n, 0)
        out: dict[IndexTuple, Polynomial] = {}
        for idx, coeff in self.terms.items():
            try:
                pos = idx.index(i)
            except ValueError:
                continue
            rest = idx[:pos] + idx[pos + 1 :]
            out[rest] = coeff if pos % 2 == 0 else -coeff
        result = ExteriorForm.__new__(ExteriorForm)
        result.n, result.k, result.terms = self.n, self.k - 1, out
        return result

    def evaluate(self, fields: Sequence[Sequence[Polynomial]]) -> Polynomial:
        """Alternating evaluation on k polynomial vector fields."""
        if len(fields) != self.k:
            raise ValueError(f"expected {self.k} vector fields, got {len(fields)}")
        total = Polynomial.zero(self.n)
        for idx, coeff in self.terms.items():
            # det of the k x k matrix fields[b][idx[a]]
            det = Polynomial.zero(self.n)
            for perm in itertools.permutations(range(self.k)):
                prod = Polynomial.constant(self.n, _perm_sign(perm))
                for a, b in enumerate(perm):
                    prod = prod * fields[b][idx[a]]
                    if prod.is_zero:
                        break
                det = det + prod
            total = total + coeff * det
        return total


def coordinate_field(n: int, i: int) -> list[Polynomial]:
    comps = [Polynomial.zero(n) for _ in range(n)]
    comps[i] = Polynomial.constant(n, 1)
    return comps


def wedge(a: ExteriorForm, b: ExteriorForm) -> ExteriorForm:
    return a.wedge(b)


def exterior_d(a: ExteriorForm) -> ExteriorForm:
    return a.d()


def format_form(form: ExteriorForm, first_index: int = 1) -> str:
    """Text form like ``X2*dX3 - 2*X3*dX2``; tuples listed descending."""
    if form.is_zero:
        return "0"
    if form.k == 0:
        return format_poly(form.terms[()], first_index)
    pieces = []
    for idx in sorted(form.terms, reverse=True):
        coeff = form.terms[idx]
        basis = "^".join(f"dX{i + first_index}" for i in idx)
        text = format_poly(coeff, first_index)
        if text == "1":
            body, sign = basis, "+"
        elif text == "-1":
            body, sign = basis, "-"
        elif len(coeff.terms) == 1:
            sign = "-" if text.startswith("-") else "+"
            body = f"{text.lstrip('-')}*{basis}"
        else:
            sign, body = "+", f"({text})*{basis}"
        if not pieces:
            pieces.append(body if sign == "+" else "-" + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)
