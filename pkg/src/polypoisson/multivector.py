"""Skew multiderivations of the polynomial ring and their exterior-form mirror.

A k-derivation is a skew k-linear map on polynomials obeying the Leibniz
rule in every slot; it is determined by its values on strictly increasing
k-tuples of coordinates, which is exactly what we store.  k = 2 gives
bivectors, the raw material of Poisson structures.

The correspondence ``phi_map`` sends a k-derivation to an (n-k)-form by
summing over (k, n-k)-shuffles with their signs; ``phi_inverse`` undoes it.
Integrability of a bivector can be tested two independent ways:

* ``jacobi_trisum`` -- the cyclic sum of P_{ri} dP_{jk}/dX_r over all index
  triples, which must vanish identically;
* ``integrability_via_forms`` -- the exterior-calculus criterion: for three
  variables, Omega ^ d(Omega) = 0; for more, d(alpha) ^ Omega = 0 for every
  contraction alpha of Omega by n-3 coordinate fields.

The two must always agree; the verification layer aborts if they do not.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .exterior import ExteriorForm, IndexTuple, _perm_sign, shuffles
from .poly import Polynomial, Scalar


class MultiDerivation:
    """A skew k-derivation stored by its values on coordinate k-tuples.

    ``values`` maps strictly increasing tuples of internal variable indices
    to polynomials; a 0-derivation is a single polynomial stored under ().
    Anything with k > n is the zero object.
    """

    __slots__ = ("n", "k", "values")

    def __init__(
        self,
        n: int,
        k: int,
        values: Optional[Mapping[IndexTuple, Polynomial]] = None,
    ) -> None:
        if k < 0:
            raise ValueError("arity must be non-negative")
        self.n = n
        self.k = k
        clean: dict[IndexTuple, Polynomial] = {}
        if values and k <= n:
            for idx, poly in values.items():
                idx = tuple(idx)
                if len(idx) != k:
                    raise ValueError(f"tuple {idx} has length != {k}")
                if any(not 0 <= i < n for i in idx):
                    raise ValueError(f"index out of range in {idx}")
                if any(idx[a] >= idx[a + 1] for a in range(k - 1)):
                    raise ValueError(f"tuple {idx} is not strictly increasing")
                if poly.n != n:
                    raise ValueError("value variable count mismatch")
                if not poly.is_zero:
                    clean[idx] = clean[idx] + poly if idx in clean else poly
                    if clean[idx].is_zero:
                        del clean[idx]
        self.values = clean

    @classmethod
    def zero(cls, n: int, k: int) -> "MultiDerivation":
        return cls(n, k)

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "MultiDerivation":
        return cls(p.n, 0, {(): p})

    @classmethod
    def elementary(cls, n: int, idx: Sequence[int], poly: Polynomial) -> "MultiDerivation":
        return cls(n, len(idx), {tuple(idx): poly})

    # -- basics ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultiDerivation)
            and self.n == other.n
            and self.k == other.k
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, frozenset(self.values.items())))

    def __repr__(self) -> str:
        vals = {idx: str(p) for idx, p in sorted(self.values.items())}
        return f"MultiDerivation(n={self.n}, k={self.k}, {vals})"

    def __add__(self, other: "MultiDerivation") -> "MultiDerivation":
        if self.n != other.n or self.k != other.k:
            raise ValueError("mismatched multiderivations")
        merged = dict(self.values)
        for idx, p in other.values.items():
            s = merged.get(idx)
            s = p if s is None else s + p
            if s.is_zero:
                merged.pop(idx, None)
            else:
                merged[idx] = s
        out = MultiDerivation.__new__(MultiDerivation)
        out.n, out.k, out.values = self.n, self.k, merged
        return out

    def __sub__(self, other: "MultiDerivation") -> "MultiDerivation":
        return self + (-other)

    def __neg__(self) -> "MultiDerivation":
        out = MultiDerivation.__new__(MultiDerivation)
        out.n, out.k = self.n, self.k
        out.values = {i: -p for i, p in self.values.items()}
        return out

    def __mul__(self, scalar: Scalar) -> "MultiDerivation":
        s = Fraction(scalar)
        if not s:
            return MultiDerivation.zero(self.n, self.k)
        out = MultiDerivation.__new__(MultiDerivation)
        out.n, out.k = self.n, self.k
        out.values = {i: p * s for i, p in self.values.items()}
        return out

    __rmul__ = __mul__

    def value(self, idx: Sequence[int]) -> Polynomial:
        """Value on a coordinate tuple in any order, with skew sign; 0 on repeats."""
        idx = tuple(idx)
        if len(set(idx)) != len(idx):
            return Polynomial.zero(self.n)
        order = tuple(sorted(range(len(idx)), key=lambda a: idx[a]))
        sign = _perm_sign(order)
        stored = self.values.get(tuple(sorted(idx)))
        if stored is None:
            return Polynomial.zero(self.n)
        return stored if sign > 0 else -stored

    def as_polynomial(self) -> Polynomial:
        if self.k != 0:
            raise ValueError("not a 0-derivation")
        return self.values.get((), Polynomial.zero(self.n))

    # -- evaluation --------------------------------------------------------

    def evaluate(self, args: Sequence[Polynomial]) -> Polynomial:
        """Leibniz extension: the unique skew k-derivation through the values.

        Equals sum over increasing tuples S of value(S) * det(d args_b / dX_{s_a}).
        """
        if len(args) != self.k:
            raise ValueError(f"expected {self.k} arguments, got {len(args)}")
        for a in args:
            if a.n != self.n:
                raise ValueError("argument variable count mismatch")
        if self.k == 0:
            return self.as_polynomial()
        total = Polynomial.zero(self.n)
        jac: dict[tuple[int, int], Polynomial] = {}

        def partial(i: int, b: int) -> Polynomial:
            key = (i, b)
            if key not in jac:
                jac[key] = args[b].partial(i)
            return jac[key]

        for idx, val in self.values.items():
            det = Polynomial.zero(self.n)
            for perm in itertools.permutations(range(self.k)):
                prod = Polynomial.constant(self.n, _perm_sign(perm))
                for a, b in enumerate(perm):
                    prod = prod * partial(idx[a], b)
                    if prod.is_zero:
                        break
                det = det + prod
            total = total + val * det
        return total

    def evaluate_first(self, first: Polynomial, coords: Sequence[int]) -> Polynomial:
        """Evaluate on (first, X_{c1}, ..., X_{c_{k-1}}) with coordinate tails.

        Fast path used by the coboundary: only stored tuples containing all of
        ``coords`` plus one extra slot contribute, via a single partial of
        ``first``.
        """
        coords = tuple(coords)
        if len(coords) != self.k - 1:
            raise ValueError("wrong number of coordinate arguments")
        if len(set(coords)) != len(coords):
            return Polynomial.zero(self.n)
        cset = set(coords)
        total = Polynomial.zero(self.n)
        tail_sign = _perm_sign(tuple(sorted(range(len(coords)), key=lambda a: coords[a])))
        for idx, val in self.values.items():
            extra = [i for i in idx if i not in cset]
            if len(extra) != 1 or not cset.issubset(idx):
                continue
            t = extra[0]
            dfirst = first.partial(t)
            if dfirst.is_zero:
                continue
            pos = idx.index(t)
            contrib = val * dfirst
            if pos % 2:
                contrib = -contrib
            if tail_sign < 0:
                contrib = -contrib
            total = total + contrib
        return total


Bivector = MultiDerivation


def bivector_from_entries(
    n: int, entries: Mapping[tuple[int, int], Polynomial]
) -> MultiDerivation:
    """Build a bivector from entries P_{ij} on pairs i < j of internal indices."""
    values: dict[IndexTuple, Polynomial] = {}
    for (i, j), poly in entries.items():
        if i >= j:
            raise ValueError(f"entry ({i},{j}) must have i < j")
        key = (i, j)
        values[key] = values[key] + poly if key in values else poly
    return MultiDerivation(n, 2, values)


def bivector_entry(biv: MultiDerivation, i: int, j: int) -> Polynomial:
    """Signed entry P_{ij} with P_{ji} = -P_{ij} and P_{ii} = 0."""
    if biv.k != 2:
        raise ValueError("not a bivector")
    if i == j:
        return Polynomial.zero(biv.n)
    if i < j:
        return biv.values.get((i, j), Polynomial.zero(biv.n))
    p = biv.values.get((j, i))
    return Polynomial.zero(biv.n) if p is None else -p


# -- the form correspondence ------------------------------------------------


def phi_map(md: MultiDerivation) -> ExteriorForm:
    """The (n-k)-form of a k-derivation via the signed shuffle sum."""
    n, k = md.n, md.k
    if k > n:
        return ExteriorForm.zero(n, 0)
    terms: dict[IndexTuple, Polynomial] = {}
    for idx, val in md.values.items():
        complement = tuple(i for i in range(n) if i not in idx)
        sign = _perm_sign(idx + complement)
        terms[complement] = val if sign > 0 else -val
    return ExteriorForm(n, n - k, terms)


def phi_inverse(form: ExteriorForm) -> MultiDerivation:
    """Inverse of phi_map: read an (n-k)-form back as a k-derivation."""
    n = form.n
    k = n - form.k
    values: dict[IndexTuple, Polynomial] = {}
    for idx, coeff in form.terms.items():
        complement = tuple(i for i in range(n) if i not in idx)
        sign = _perm_sign(complement + idx)
        values[complement] = coeff if sign > 0 else -coeff
    return MultiDerivation(n, k, values)


# -- integrability -----------------------------------------------------------


def bracket_with_coordinate(biv: MultiDerivation, i: int, p: Polynomial) -> Polynomial:
    """{X_i, p} for the bracket of a bivector: sum_j P_{ij} dp/dX_j."""
    total = Polynomial.zero(biv.n)
    for (a, b), val in biv.values.items():
        if a == i:
            dp = p.partial(b)
            if not dp.is_zero:
                total = total + val * dp
        elif b == i:
            dp = p.partial(a)
            if not dp.is_zero:
                total = total - val * dp
    return total


def jacobi_trisum(
    biv: MultiDerivation,
) -> list[tuple[int, int, int, Polynomial]]:
    """The Jacobi obstruction polynomials, one per index triple i < j < k.

    Each is sum_r P_{ri} dP_{jk}/dX_r + P_{rj} dP_{ki}/dX_r + P_{rk} dP_{ij}/dX_r;
    the bivector is integrable iff all of them vanish.  Empty for n < 3.
    """
    if biv.k != 2:
        raise ValueError("not a bivector")
    n = biv.n
    out = []
    for i, j, k in itertools.combinations(range(n), 3):
        total = Polynomial.zero(n)
        for first, pair in ((i, (j, k)), (j, (k, i)), (k, (i, j))):
            target = bivector_entry(biv, *pair)
            if target.is_zero:
                continue
            for r in range(n):
                p_rf = bivector_entry(biv, r, first)
                if p_rf.is_zero:
                    continue
                dt = target.partial(r)
                if not dt.is_zero:
                    total = total + p_rf * dt
        if not total.is_zero:
            out.append((i, j, k, total))
    return out


def integrability_via_forms(biv: MultiDerivation) -> bool:
    """Exterior-calculus integrability test; must match the trisum verdict."""
    if biv.k != 2:
        raise ValueError("not a bivector")
    n = biv.n
    if n < 3:
        raise ValueError("form criterion needs at least three variables")
    omega = phi_map(biv)
    if n == 3:
        # for a 1-form and its differential the two orders agree; check both
        a = omega.wedge(omega.d())
        b = omega.d().wedge(omega)
        if a.is_zero != b.is_zero:
            raise AssertionError("wedge-order variants disagree")
        return a.is_zero
    for idxs in itertools.combinations(range(n), n - 3):
        alpha = omega
        for i in idxs:
            alpha = alpha.interior_coordinate(i)
        if alpha.is_zero:
            continue
        if not alpha.d().wedge(omega).is_zero:
            return False
    return True
