"""Sparse two-leg tensors over an algebra presentation.

A Tensor2 models an element of the projective tensor square of a
weighted-l1 algebra: a sparse table {(i, j): c} standing for
sum c * b_i (x) b_j.  For weighted-l1 carriers the projective norm is
exactly sum |c| w_i w_j, so no norm estimation is needed.

Leg conventions (a an algebra element, t a tensor):

    left_action(a, t):            a (b (x) c) = ab (x) c
    right_action(t, a):           (b (x) c) a = b (x) ca
    opposite_left_action(a, t):   a o (b (x) c) = b (x) ac
    opposite_right_action(t, a):  (b (x) c) o a = ba (x) c
    contract(t):                  b (x) c -> bc
    contract_swapped(t):          b (x) c -> cb
    flip(t):                      b (x) c -> c (x) b
"""

from . import linalg
from .algebra import AlgebraError, AlgebraPresentation, Element, same_space
from .scalars import RATIONAL


class Tensor2:
    """Sparse coefficient table over basis pairs; immutable by convention.

    Contractions and the flip are cached on the instance since report
    generation evaluates them repeatedly against many test elements.
    """

    __slots__ = ("space", "coeffs", "_cache")

    def __init__(self, space, coeffs):
        if not isinstance(space, AlgebraPresentation):
            raise AlgebraError("tensors require an algebra presentation")
        self.space = space
        self.coeffs = {key: c for key, c in coeffs.items() if c != 0}
        self._cache = {}

    @classmethod
    def from_terms(cls, space, terms):
        """Build from [(i, j, coeff), ...] with repeated pairs accumulated."""
        out = {}
        for i, j, c in terms:
            space.check_index(i)
            space.check_index(j)
            c = space.scalar(c)
            if c != 0:
                key = (i, j)
                v = out.get(key, 0) + c
                if v == 0:
                    out.pop(key, None)
                else:
                    out[key] = v
        return cls(space, out)

    def terms(self):
        return [(i, j, c) for (i, j), c in sorted(self.coeffs.items())]

    def proj_norm(self):
        if "proj_norm" not in self._cache:
            w = self.space.weights
            self._cache["proj_norm"] = sum(
                abs(c) * w[i] * w[j] for (i, j), c in self.coeffs.items())
        return self._cache["proj_norm"]

    def is_zero(self):
        if self.space.mode == RATIONAL:
            return not self.coeffs
        return self.proj_norm() <= self.space.tol

    def symmetry_defect(self):
        """Projective norm of t - flip(t); zero exactly when t is symmetric."""
        return (self - flip(self)).proj_norm()

    def is_symmetric(self):
        if self.space.mode == RATIONAL:
            return all(self.coeffs.get((j, i)) == c for (i, j), c in self.coeffs.items())
        return self.symmetry_defect() <= self.space.tol

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        linalg.vec_add_scaled(out, other.coeffs, 1)
        return Tensor2(self.space, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        linalg.vec_add_scaled(out, other.coeffs, -1)
        return Tensor2(self.space, out)

    def __neg__(self):
        return Tensor2(self.space, {k: -c for k, c in self.coeffs.items()})

    def scaled(self, c):
        c = self.space.scalar(c)
        if c == 0:
            return Tensor2(self.space, {})
        return Tensor2(self.space, {k: c * x for k, x in self.coeffs.items()})

    def __rmul__(self, other):
        if isinstance(other, Element):
            return left_action(other, self)
        return self.scaled(other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return right_action(self, other)
        return self.scaled(other)

    def _check(self, other):
        if not isinstance(other, Tensor2) or other.space is not self.space:
            raise AlgebraError("tensors live over different presentations")

    def __eq__(self, other):
        return (isinstance(other, Tensor2) and self.space is other.space
                and self.coeffs == other.coeffs)

    def __repr__(self):
        n = len(self.coeffs)
        return f"<Tensor2 {n} term{'s' if n != 1 else ''} over {self.space!r}>"


def elementary(a, b):
    """The elementary tensor a (x) b."""
    same_space(a, b, "tensor factors")
    out = {}
    for i, ci in a.coeffs.items():
        for j, cj in b.coeffs.items():
            c = ci * cj
            if c != 0:
                out[(i, j)] = c
    return Tensor2(a.space, out)


def zero_tensor(space):
    return Tensor2(space, {})


def _act(a, t, leg, side):
    """Multiply one leg of every term by a: leg 0/1, side 'l' puts a on the left."""
    if a.space is not t.space:
        raise AlgebraError("element and tensor live over different presentations")
    space = t.space
    out = {}
    for (l, r), ct in t.coeffs.items():
        target = l if leg == 0 else r
        for i, ca in a.coeffs.items():
            row = space.product_indices(i, target) if side == "l" else \
                space.product_indices(target, i)
            if not row:
                continue
            c = ca * ct
            for k, ck in row.items():
                key = (k, r) if leg == 0 else (l, k)
                v = out.get(key, 0) + c * ck
                if v == 0:
                    out.pop(key, None)
                else:
                    out[key] = v
    return Tensor2(space, out)


def left_action(a, t):
    """a (b (x) c) = ab (x) c."""
    return _act(a, t, 0, "l")


def right_action(t, a):
    """(b (x) c) a = b (x) ca."""
    return _act(a, t, 1, "r")


def opposite_left_action(a, t):
    """a o (b (x) c) = b (x) ac."""
    return _act(a, t, 1, "l")


def opposite_right_action(t, a):
    """(b (x) c) o a = ba (x) c."""
    return _act(a, t, 0, "r")


def flip(t):
    """Transpose the legs: b (x) c -> c (x) b."""
    if "flip" not in t._cache:
        t._cache["flip"] = Tensor2(t.space, {(j, i): c for (i, j), c in t.coeffs.items()})
    return t._cache["flip"]


def contract(t):
    """Multiply the legs together: b (x) c -> bc."""
    if "contract" not in t._cache:
        out = {}
        for (i, j), c in t.coeffs.items():
            row = t.space.product_indices(i, j)
            if row:
                linalg.vec_add_scaled(out, row, c)
        t._cache["contract"] = Element(t.space, out)
    return t._cache["contract"]


def contract_swapped(t):
    """Multiply the legs in reverse order: b (x) c -> cb."""
    if "contract_swapped" not in t._cache:
        out = {}
        for (i, j), c in t.coeffs.items():
            row = t.space.product_indices(j, i)
            if row:
                linalg.vec_add_scaled(out, row, c)
        t._cache["contract_swapped"] = Element(t.space, out)
    return t._cache["contract_swapped"]


def proj_norm(t):
    return t.proj_norm()
