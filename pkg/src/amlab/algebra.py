"""Finite-dimensional weighted-l1 algebras presented by structure constants.

A presentation fixes a finite basis b_0..b_{d-1}, positive weights w_i, and
sparse structure constants c_{ijk} with b_i b_j = sum_k c_{ijk} b_k.  The
norm of sum a_i b_i is sum |a_i| w_i.  On construction we validate
associativity on basis triples and certify submultiplicativity
(sum_k |c_{ijk}| w_k <= w_i w_j for every pair); a presentation failing the
certificate is accepted with a warning flag and norm inequalities are then
not guaranteed.
"""

from fractions import Fraction

from . import scalars
from . import linalg
from .scalars import RATIONAL, DEFAULT_FLOAT_TOL, SchemaError


class AlgebraError(ValueError):
    """Misuse of the API: mixed presentations, elements over the wrong space."""


class PresentationError(AlgebraError):
    """A presentation (or map/module built on one) failed invariant validation."""


class BasisSpace:
    """A labeled, weighted basis with a scalar mode; base for algebras and bimodules."""

    def __init__(self, labels, weights=None, mode=RATIONAL, tol=DEFAULT_FLOAT_TOL, name=None):
        scalars.check_mode(mode)
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise PresentationError("basis labels must be distinct")
        self.labels = labels
        self.mode = mode
        self.tol = float(tol)
        self.name = name
        if weights is None:
            weights = [1] * len(labels)
        if len(weights) != len(labels):
            raise PresentationError("weights and basis labels differ in length")
        self.weights = tuple(scalars.coerce(w, mode) for w in weights)
        for w in self.weights:
            if not w > 0:
                raise PresentationError(f"weights must be positive, got {w}")
        self._index = {lab: i for i, lab in enumerate(labels)}

    @property
    def dim(self):
        return len(self.labels)

    def label_index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise SchemaError(f"unknown basis label {label!r}") from None

    def scalar(self, value):
        return scalars.coerce(value, self.mode)

    def check_index(self, i):
        if not isinstance(i, int) or not 0 <= i < self.dim:
            raise SchemaError(f"basis index {i!r} out of range for dimension {self.dim}")
        return i

    def element(self, coeffs):
        """Element from a dict {index or label: scalar} or a dense list."""
        data = {}
        if isinstance(coeffs, dict):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        for key, value in items:
            i = self.label_index(key) if isinstance(key, str) else self.check_index(key)
            c = self.scalar(value)
            if c != 0:
                data[i] = data.get(i, 0) + c
        return Element(self, {i: c for i, c in data.items() if c != 0})

    def basis_element(self, i):
        return Element(self, {self.check_index(i): self.scalar(1)})

    def basis_elements(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def zero(self):
        return Element(self, {})

    def is_zero_scalar(self, x):
        if self.mode == RATIONAL:
            return x == 0
        return abs(x) <= self.tol


class AlgebraPresentation(BasisSpace):
    """Structure-constant presentation of a weighted-l1 algebra.

    mul maps (i, j) to {k: c_{ijk}}; absent pairs multiply to zero.
    meta is free-form provenance (block offsets, group tables, unitization
    parent) used by constructors that need to relate presentations.
    """

    def __init__(self, labels, mul, weights=None, unit=None, mode=RATIONAL,
                 tol=DEFAULT_FLOAT_TOL, name=None, meta=None, validate=True):
        super().__init__(labels, weights, mode, tol, name)
        self.mul = self._clean_table(mul)
        self.unit = None
        if unit is not None:
            u = self.element(unit)
            self.unit = dict(u.coeffs)
        self.meta = dict(meta or {})
        self.warnings = []
        self.submultiplicative = True
        if validate:
            self._validate()

    def _clean_table(self, mul):
        table = {}
        for key, entry in mul.items():
            i, j = key
            self.check_index(i)
            self.check_index(j)
            row = {}
            for k, c in entry.items():
                self.check_index(k)
                c = self.scalar(c)
                if c != 0:
                    row[k] = c
            if row:
                table[(i, j)] = row
        return table

    def product_indices(self, i, j):
        """Structure-constant row for b_i b_j (empty dict when the product is zero)."""
        return self.mul.get((i, j), _EMPTY)

    def _validate(self):
        self._check_associativity()
        self._check_submultiplicativity()
        if self.unit is not None:
            self._check_unit()

    def _check_associativity(self):
        mul = self.mul
        dim = self.dim
        seen = set()
        for (i, j) in mul:
            for k in range(dim):
                seen.add((i, j, k))
                self._check_triple(i, j, k)
        for (j, k) in mul:
            for i in range(dim):
                if (i, j, k) not in seen:
                    self._check_triple(i, j, k)

    def _check_triple(self, i, j, k):
        lhs = {}
        for m, c in self.product_indices(i, j).items():
            linalg.vec_add_scaled(lhs, self.product_indices(m, k), c)
        rhs = {}
        for m, c in self.product_indices(j, k).items():
            linalg.vec_add_scaled(rhs, self.product_indices(i, m), c)
        diff = linalg.vec_sub(lhs, rhs)
        if not self._vec_small(diff):
            raise PresentationError(
                f"associativity fails on basis triple "
                f"({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")

    def _vec_small(self, diff):
        if self.mode == RATIONAL:
            return not diff
        return sum(abs(x) * self.weights[i] for i, x in diff.items()) <= self.tol

    def _check_submultiplicativity(self):
        slack = 0 if self.mode == RATIONAL else self.tol
        for (i, j), row in self.mul.items():
            bound = self.weights[i] * self.weights[j]
            total = sum(abs(c) * self.weights[k] for k, c in row.items())
            if total > bound + slack:
                self.submultiplicative = False
                self.warnings.append(
                    f"submultiplicativity certificate fails at "
                    f"({self.labels[i]}, {self.labels[j]}): {total} > {bound}")
        # warn once; norm inequalities are skipped downstream when not certified

    def _check_unit(self):
        u = Element(self, self.unit)
        for i in range(self.dim):
            b = self.basis_element(i)
            if not (u * b - b).is_zero() or not (b * u - b).is_zero():
                raise PresentationError(f"claimed unit does not fix basis element {self.labels[i]}")

    def unit_element(self):
        if self.unit is None:
            return None
        return Element(self, dict(self.unit))

    def is_commutative(self):
        for (i, j), row in self.mul.items():
            diff = linalg.vec_sub(row, self.product_indices(j, i))
            if diff and not self._vec_small(diff):
                return False
        return True

    def structurally_equal(self, other):
        """Same labels, weights, table and unit (element mixing still requires identity)."""
        if self is other:
            return True
        return (isinstance(other, AlgebraPresentation)
                and self.labels == other.labels
                and self.weights == other.weights
                and self.mode == other.mode
                and self.mul == other.mul
                and self.unit == other.unit)

    def __repr__(self):
        tag = self.name or f"{self.dim}-dim algebra"
        return f"<AlgebraPresentation {tag}>"


_EMPTY = {}


def _is_scalar(x):
    return isinstance(x, (int, float, Fraction, str)) and not isinstance(x, bool)


def same_space(x, y, what="operands"):
    if x.space is not y.space:
        raise AlgebraError(f"{what} live over different presentations")


class Element:
    """Sparse coefficient vector over a presentation's basis.

    Zero coefficients are never stored.  Values are immutable by
    convention: every operation returns a fresh Element.
    """

    __slots__ = ("space", "coeffs")

    def __init__(self, space, coeffs):
        self.space = space
        self.coeffs = coeffs

    def norm(self):
        w = self.space.weights
        return sum(abs(c) * w[i] for i, c in self.coeffs.items())

    def is_zero(self):
        if self.space.mode == RATIONAL:
            return not self.coeffs
        return self.norm() <= self.space.tol

    def __add__(self, other):
        same_space(self, other)
        out = dict(self.coeffs)
        linalg.vec_add_scaled(out, other.coeffs, 1)
        return Element(self.space, out)

    def __sub__(self, other):
        same_space(self, other)
        out = dict(self.coeffs)
        linalg.vec_add_scaled(out, other.coeffs, -1)
        return Element(self.space, out)

    def __neg__(self):
        return Element(self.space, {i: -c for i, c in self.coeffs.items()})

    def scaled(self, c):
        c = self.space.scalar(c)
        if c == 0:
            return Element(self.space, {})
        return Element(self.space, {i: c * x for i, x in self.coeffs.items()})

    def __rmul__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return self.scaled(other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if not _is_scalar(other):
            return NotImplemented
        return self.scaled(other)

    def __eq__(self, other):
        return (isinstance(other, Element) and self.space is other.space
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.space), tuple(sorted(self.coeffs.items()))))

    def get(self, i):
        return self.coeffs.get(i, 0)

    def support(self):
        return sorted(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{c}*{self.space.labels[i]}" for i, c in sorted(self.coeffs.items())]
        return " + ".join(parts)


def multiply(a, b):
    """Product through the structure constants; both factors over one algebra."""
    same_space(a, b, "factors")
    space = a.space
    if not isinstance(space, AlgebraPresentation):
        raise AlgebraError("product requires an algebra presentation, not a bare module")
    out = {}
    for i, ci in a.coeffs.items():
        for j, cj in b.coeffs.items():
            row = space.product_indices(i, j)
            if row:
                linalg.vec_add_scaled(out, row, ci * cj)
    return Element(space, out)


def norm(a):
    return a.norm()


def commutator(a, b):
    return multiply(a, b) - multiply(b, a)


def unitize(algebra):
    """Adjoin a unit e of weight 1; the norm becomes ||a|| + |lambda| on a + lambda e.

    Applied unconditionally, whether or not the algebra already has a unit.
    The result records its parent so module actions can treat e as the
    identity.
    """
    d = algebra.dim
    label = "e"
    while label in algebra.labels:
        label += "'"
    labels = algebra.labels + (label,)
    weights = list(algebra.weights) + [1]
    mul = {key: dict(row) for key, row in algebra.mul.items()}
    one = algebra.scalar(1)
    for i in range(d):
        mul[(d, i)] = {i: one}
        mul[(i, d)] = {i: one}
    mul[(d, d)] = {d: one}
    unit = {d: one}
    name = f"{algebra.name}#" if algebra.name else None
    meta = {"unitized_from": algebra, "adjoined_index": d}
    return AlgebraPresentation(labels, mul, weights, unit, algebra.mode,
                               algebra.tol, name, meta)


def opposite(algebra):
    """Same space, product reversed: a o b = ba."""
    mul = {(j, i): dict(row) for (i, j), row in algebra.mul.items()}
    name = f"{algebra.name}^op" if algebra.name else None
    return AlgebraPresentation(algebra.labels, mul, algebra.weights,
                               dict(algebra.unit) if algebra.unit else None,
                               algebra.mode, algebra.tol, name,
                               {"opposite_of": algebra})


def center(algebra):
    """Basis of {x : x b_i == b_i x for every basis element}, by exact elimination."""
    d = algebra.dim
    eps = 0 if algebra.mode == RATIONAL else algebra.tol
    rows = []
    for i in range(d):
        per_coord = {}
        for k in range(d):
            for m, c in algebra.product_indices(k, i).items():
                row = per_coord.setdefault(m, {})
                row[k] = row.get(k, 0) + c
            for m, c in algebra.product_indices(i, k).items():
                row = per_coord.setdefault(m, {})
                v = row.get(k, 0) - c
                if v == 0:
                    row.pop(k, None)
                else:
                    row[k] = v
        rows.extend(r for r in per_coord.values() if r)
    basis = linalg.nullspace(rows, d, eps)
    return [Element(algebra, {i: algebra.scalar(c) for i, c in v.items()}) for v in basis]


def commutator_subspace(algebra):
    """Basis of span{b_p b_q - b_q b_p}, by exact elimination."""
    eps = 0 if algebra.mode == RATIONAL else algebra.tol
    sp = linalg.Span(eps)
    for p in range(algebra.dim):
        for q in range(p + 1, algebra.dim):
            v = dict(algebra.product_indices(p, q))
            linalg.vec_add_scaled(v, algebra.product_indices(q, p), -1)
            sp.add(v)
    return [Element(algebra, {i: algebra.scalar(c) for i, c in sorted(v.items())})
            for v in sp.rows]
