"""Finite Banach bimodules and derivation-type maps.

A bimodule presentation fixes module basis vectors x_0..x_{m-1}, weights,
and sparse action tables for b_i x_j and x_j b_i; the module laws
(ab)x = a(bx), x(ab) = (xa)b and (ax)b = a(xb) are validated on basis
triples.  A map D into the module is a derivation / Jordan derivation /
Lie derivation when the corresponding product rule holds; classify_maps
solves those identities exactly by elimination, which serves as the
brute-force oracle for all decomposition procedures.

The decomposition procedures run against an exact symmetric diagonal over
the unitization of the algebra (an exact diagonal of a unital algebra is
lifted automatically).  Writing x for the diagonal evaluated through the
map (image_action) and using the sandwich evaluation of module elements,
a Jordan derivation satisfies D(a) = (a x - x a) - sandwich(D(a), t) and
a Lie derivation satisfies D(a) = (a x - x a) + sandwich(D(a), t); note
the opposite signs.  The Jordan route repeats the construction once on the
central remainder and halves it; the Lie route returns the inner part and
the central-trace remainder as two maps.
"""

from dataclasses import dataclass

from . import linalg
from .algebra import (AlgebraError, AlgebraPresentation, BasisSpace, Element,
                      PresentationError, multiply)
from .diagonals import defects
from .maps import LinearMap, map_from_flat
from .scalars import RATIONAL
from .tensor import contract

MAP_KINDS = ("derivation", "jordan", "lie", "central_trace")


class BimodulePresentation(BasisSpace):
    """Banach bimodule over a presented algebra, given by action tables.

    left maps (algebra index, module index) to sparse module vectors for
    b_i x_j; right maps (module index, algebra index) for x_j b_i.  The
    action bound reported is max ||b_i x_j|| / (w_i v_j) over both tables,
    the weighted-l1 operator bound of the bilinear action.
    """

    def __init__(self, algebra, labels, left, right, weights=None, name=None,
                 validate=True):
        if not isinstance(algebra, AlgebraPresentation):
            raise AlgebraError("a bimodule needs an algebra presentation")
        super().__init__(labels, weights, algebra.mode, algebra.tol, name)
        self.algebra = algebra
        self.left = self._clean_action(left, algebra.dim, self.dim)
        self.right = self._clean_action(right, self.dim, algebra.dim)
        self.action_bound = self._action_bound()
        if validate:
            self._check_module_laws()

    @classmethod
    def regular(cls, algebra, name=None):
        """The algebra as a bimodule over itself."""
        left = {key: dict(row) for key, row in algebra.mul.items()}
        right = {key: dict(row) for key, row in algebra.mul.items()}
        return cls(algebra, algebra.labels, left, right, algebra.weights,
                   name or (f"{algebra.name} (regular)" if algebra.name else None),
                   validate=False)

    def _clean_action(self, table, first, second):
        out = {}
        for (i, j), entry in table.items():
            if not (0 <= i < first and 0 <= j < second):
                raise PresentationError(f"action index ({i},{j}) out of range")
            row = {}
            for k, c in entry.items():
                self.check_index(k)
                c = self.scalar(c)
                if c != 0:
                    row[k] = c
            if row:
                out[(i, j)] = row
        return out

    def _action_bound(self):
        w = self.algebra.weights
        v = self.weights
        best = self.scalar(0)
        for (i, j), row in self.left.items():
            n = sum(abs(c) * v[k] for k, c in row.items()) / (w[i] * v[j])
            if n > best:
                best = n
        for (j, i), row in self.right.items():
            n = sum(abs(c) * v[k] for k, c in row.items()) / (w[i] * v[j])
            if n > best:
                best = n
        return best

    def left_index(self, i, vec):
        """b_i acting on a sparse module vector."""
        out = {}
        for j, c in vec.items():
            row = self.left.get((i, j))
            if row:
                linalg.vec_add_scaled(out, row, c)
        return out

    def right_index(self, vec, i):
        out = {}
        for j, c in vec.items():
            row = self.right.get((j, i))
            if row:
                linalg.vec_add_scaled(out, row, c)
        return out

    def _vec_small(self, vec):
        if self.mode == RATIONAL:
            return not vec
        return sum(abs(c) * self.weights[k] for k, c in vec.items()) <= self.tol

    def _check_module_laws(self):
        alg = self.algebra
        for i in range(alg.dim):
            for j in range(alg.dim):
                prod = alg.product_indices(i, j)
                for k in range(self.dim):
                    ek = {k: self.scalar(1)}
                    lhs = {}
                    for m, c in prod.items():
                        linalg.vec_add_scaled(lhs, self.left.get((m, k), {}), c)
                    rhs = self.left_index(i, self.left_index(j, ek))
                    if not self._vec_small(linalg.vec_sub(lhs, rhs)):
                        raise PresentationError(
                            f"left module law fails at ({alg.labels[i]}, "
                            f"{alg.labels[j]}, {self.labels[k]})")
                    lhs = {}
                    for m, c in prod.items():
                        linalg.vec_add_scaled(lhs, self.right.get((k, m), {}), c)
                    rhs = self.right_index(self.right_index(ek, i), j)
                    if not self._vec_small(linalg.vec_sub(lhs, rhs)):
                        raise PresentationError(
                            f"right module law fails at ({self.labels[k]}, "
                            f"{alg.labels[i]}, {alg.labels[j]})")
                    lhs = self.right_index(self.left_index(i, ek), j)
                    rhs = self.left_index(i, self.right_index(ek, j))
                    if not self._vec_small(linalg.vec_sub(lhs, rhs)):
                        raise PresentationError(
                            f"mixed module law fails at ({alg.labels[i]}, "
                            f"{self.labels[k]}, {alg.labels[j]})")

    def adjoined_identity_index(self, carrier):
        """None when carrier is this module's algebra; the unit index when it
        is that algebra's unitization (where the adjoined unit acts as the
        identity on the module)."""
        if carrier is self.algebra:
            return None
        if carrier.meta.get("unitized_from") is self.algebra:
            return carrier.meta["adjoined_index"]
        raise AlgebraError(
            "carrier is neither the module's algebra nor its unitization")

    def act_left(self, a, x):
        """a x for a over the algebra or its unitization."""
        if x.space is not self:
            raise AlgebraError("module element is over a different bimodule")
        e_idx = self.adjoined_identity_index(a.space)
        out = {}
        for i, c in a.coeffs.items():
            if i == e_idx:
                linalg.vec_add_scaled(out, x.coeffs, c)
            else:
                linalg.vec_add_scaled(out, self.left_index(i, x.coeffs), c)
        return Element(self, out)

    def act_right(self, x, a):
        if x.space is not self:
            raise AlgebraError("module element is over a different bimodule")
        e_idx = self.adjoined_identity_index(a.space)
        out = {}
        for i, c in a.coeffs.items():
            if i == e_idx:
                linalg.vec_add_scaled(out, x.coeffs, c)
            else:
                linalg.vec_add_scaled(out, self.right_index(x.coeffs, i), c)
        return Element(self, out)

    def center(self):
        """Basis of {x : b_i x == x b_i for every algebra basis element}."""
        eps = 0 if self.mode == RATIONAL else self.tol
        rows = []
        for i in range(self.algebra.dim):
            per_coord = {}
            for j in range(self.dim):
                diff = dict(self.left.get((i, j), {}))
                linalg.vec_add_scaled(diff, self.right.get((j, i), {}), -1)
                for k, c in diff.items():
                    per_coord.setdefault(k, {})[j] = c
            rows.extend(per_coord.values())
        return [Element(self, {k: self.scalar(c) for k, c in v.items()})
                for v in linalg.nullspace(rows, self.dim, eps)]

    def is_symmetric_bimodule(self):
        """True when every action commutes: b_i x_j == x_j b_i on basis pairs."""
        for i in range(self.algebra.dim):
            for j in range(self.dim):
                diff = linalg.vec_sub(self.left.get((i, j), {}),
                                      self.right.get((j, i), {}))
                if not self._vec_small(diff):
                    return False
        return True

    def __repr__(self):
        tag = self.name or f"{self.dim}-dim bimodule"
        return f"<BimodulePresentation {tag}>"


def regular_bimodule(algebra, name=None):
    return BimodulePresentation.regular(algebra, name)


def direct_sum_bimodule(modules, name=None):
    """l1 direct sum of bimodules over one common algebra."""
    if not modules:
        raise AlgebraError("direct sum needs at least one module")
    algebra = modules[0].algebra
    for m in modules:
        if m.algebra is not algebra:
            raise AlgebraError("summands are modules over different algebras")
    labels = []
    weights = []
    offsets = []
    off = 0
    for bi, m in enumerate(modules):
        offsets.append(off)
        labels.extend(f"{bi}:{lab}" for lab in m.labels)
        weights.extend(m.weights)
        off += m.dim
    left = {}
    right = {}
    for bi, m in enumerate(modules):
        o = offsets[bi]
        for (i, j), row in m.left.items():
            left[(i, o + j)] = {o + k: c for k, c in row.items()}
        for (j, i), row in m.right.items():
            right[(o + j, i)] = {o + k: c for k, c in row.items()}
    out = BimodulePresentation(algebra, labels, left, right, weights,
                               name or "module sum", validate=False)
    out.block_offsets = offsets
    return out


# ---------------------------------------------------------------------------
# evaluations against a tensor
# ---------------------------------------------------------------------------

def sandwich_action(x, t):
    """sum c_ij b_i x b_j over the terms of t; x a module element.

    t may live over the module's algebra or over its unitization, whose
    adjoined unit acts as the identity.
    """
    X = x.space
    if not isinstance(X, BimodulePresentation):
        raise AlgebraError("sandwich evaluation needs a bimodule element")
    e_idx = X.adjoined_identity_index(t.space)
    out = {}
    for (i, j), c in t.coeffs.items():
        vec = x.coeffs if i == e_idx else X.left_index(i, x.coeffs)
        if j != e_idx:
            vec = X.right_index(vec, j)
        linalg.vec_add_scaled(out, vec, c)
    return Element(X, out)


def image_action(T, t):
    """sum c_ij b_i T(b_j) over the terms of t, with T(e) = 0 on the adjoined unit.

    T maps the algebra into a bimodule over it; t may live over the algebra
    or its unitization.
    """
    X = T.codomain
    if not isinstance(X, BimodulePresentation):
        raise AlgebraError("image evaluation needs a map into a bimodule")
    if T.domain is not X.algebra:
        raise AlgebraError("map must be defined on the module's algebra")
    e_idx = X.adjoined_identity_index(t.space)
    out = {}
    for (i, j), c in t.coeffs.items():
        if j == e_idx:
            continue
        img = T.images[j]
        if not img:
            continue
        vec = img if i == e_idx else X.left_index(i, img)
        linalg.vec_add_scaled(out, vec, c)
    return Element(X, out)


# ---------------------------------------------------------------------------
# identity defects and classification
# ---------------------------------------------------------------------------

def _pair_defect(D, X, combine):
    alg = D.domain
    worst = X.scalar(0)
    for i in range(alg.dim):
        bi = alg.basis_element(i)
        Di = D.image_of_basis(i)
        for j in range(alg.dim):
            bj = alg.basis_element(j)
            Dj = D.image_of_basis(j)
            r = combine(bi, bj, Di, Dj)
            n = r.norm()
            if n > worst:
                worst = n
    return worst


def derivation_defect(D):
    """max || D(b_i b_j) - D(b_i) b_j - b_i D(b_j) || over basis pairs."""
    X = D.codomain

    def combine(bi, bj, Di, Dj):
        return D(multiply(bi, bj)) - X.act_right(Di, bj) - X.act_left(bi, Dj)

    return _pair_defect(D, X, combine)


def jordan_defect(D):
    X = D.codomain

    def combine(bi, bj, Di, Dj):
        lhs = D(multiply(bi, bj) + multiply(bj, bi))
        rhs = (X.act_right(Di, bj) + X.act_left(bi, Dj)
               + X.act_right(Dj, bi) + X.act_left(bj, Di))
        return lhs - rhs

    return _pair_defect(D, X, combine)


def lie_defect(D):
    X = D.codomain

    def combine(bi, bj, Di, Dj):
        lhs = D(multiply(bi, bj) - multiply(bj, bi))
        rhs = (X.act_right(Di, bj) + X.act_left(bi, Dj)
               - X.act_right(Dj, bi) - X.act_left(bj, Di))
        return lhs - rhs

    return _pair_defect(D, X, combine)


def centrality_defect(D):
    """max || b_i D(b_j) - D(b_j) b_i ||; zero when D is central-valued."""
    X = D.codomain

    def combine(bi, bj, Di, Dj):
        return X.act_left(bi, Dj) - X.act_right(Dj, bi)

    return _pair_defect(D, X, combine)


def trace_defect(D):
    """max || D(b_i b_j - b_j b_i) ||; zero when D kills commutators."""
    alg = D.domain
    worst = D.codomain.scalar(0)
    for i in range(alg.dim):
        bi = alg.basis_element(i)
        for j in range(i + 1, alg.dim):
            n = D(multiply(bi, alg.basis_element(j))
                  - multiply(alg.basis_element(j), bi)).norm()
            if n > worst:
                worst = n
    return worst


def inner_derivation(X, x):
    """The inner derivation a -> a x - x a for a module element x."""
    if x.space is not X:
        raise AlgebraError("element is over a different bimodule")
    alg = X.algebra
    images = []
    for q in range(alg.dim):
        b = alg.basis_element(q)
        images.append(dict((X.act_left(b, x) - X.act_right(x, b)).coeffs))
    return LinearMap(alg, X, images)


def _identity_rows(algebra, X, kind):
    """Linear equations on the flattened map matrix imposed by the identity."""
    d = algebra.dim
    m = X.dim
    rows = []

    def emit(terms):
        # terms: (coefficient, source basis index q, op) with op None (identity),
        # ("L", i) left action by b_i, or ("R", j) right action by b_j
        per_coord = {}
        for alpha, q, op in terms:
            for k in range(m):
                if op is None:
                    vec = {k: algebra.scalar(1)}
                elif op[0] == "L":
                    vec = X.left.get((op[1], k), {})
                else:
                    vec = X.right.get((k, op[1]), {})
                if not vec:
                    continue
                col = q * m + k
                for l, c in vec.items():
                    row = per_coord.setdefault(l, {})
                    v = row.get(col, 0) + alpha * c
                    if v == 0:
                        row.pop(col, None)
                    else:
                        row[col] = v
        rows.extend(r for r in per_coord.values() if r)

    one = algebra.scalar(1)
    if kind == "derivation":
        for i in range(d):
            for j in range(d):
                terms = [(c, q, None) for q, c in algebra.product_indices(i, j).items()]
                terms += [(-one, i, ("R", j)), (-one, j, ("L", i))]
                emit(terms)
    elif kind == "jordan":
        for i in range(d):
            for j in range(i, d):
                acc = dict(algebra.product_indices(i, j))
                linalg.vec_add_scaled(acc, algebra.product_indices(j, i), 1)
                terms = [(c, q, None) for q, c in acc.items()]
                terms += [(-one, i, ("R", j)), (-one, j, ("L", i)),
                          (-one, j, ("R", i)), (-one, i, ("L", j))]
                emit(terms)
    elif kind == "lie":
        for i in range(d):
            for j in range(i + 1, d):
                acc = dict(algebra.product_indices(i, j))
                linalg.vec_add_scaled(acc, algebra.product_indices(j, i), -1)
                terms = [(c, q, None) for q, c in acc.items()]
                terms += [(-one, i, ("R", j)), (-one, j, ("L", i)),
                          (one, j, ("R", i)), (one, i, ("L", j))]
                emit(terms)
    elif kind == "central":
        for i in range(d):
            for j in range(d):
                emit([(one, j, ("L", i)), (-one, j, ("R", i))])
    elif kind == "trace":
        for i in range(d):
            for j in range(i + 1, d):
                acc = dict(algebra.product_indices(i, j))
                linalg.vec_add_scaled(acc, algebra.product_indices(j, i), -1)
                emit([(c, q, None) for q, c in acc.items()])
    else:
        raise ValueError(f"unknown identity kind {kind!r}")
    return rows


def classify_maps(algebra, X, kind):
    """Exact basis of the space of maps satisfying the requested identity.

    kind is one of "derivation", "jordan", "lie" or "central_trace"
    (central-valued maps killing commutators).
    """
    if X.algebra is not algebra:
        raise AlgebraError("module is not over the given algebra")
    eps = 0 if algebra.mode == RATIONAL else algebra.tol
    if kind == "central_trace":
        rows = _identity_rows(algebra, X, "central") + _identity_rows(algebra, X, "trace")
    elif kind in ("derivation", "jordan", "lie"):
        rows = _identity_rows(algebra, X, kind)
    else:
        raise ValueError(f"unknown map kind {kind!r}; expected one of {MAP_KINDS}")
    basis = linalg.nullspace(rows, algebra.dim * X.dim, eps)
    return [map_from_flat(algebra, X, v) for v in basis]


def central_derivation_space(algebra, X, diagonal=None):
    """Basis of central-valued derivations; empty when an exact symmetric
    diagonal is supplied (any nonzero solution would falsify the library)."""
    if X.algebra is not algebra:
        raise AlgebraError("module is not over the given algebra")
    eps = 0 if algebra.mode == RATIONAL else algebra.tol
    rows = _identity_rows(algebra, X, "derivation") + _identity_rows(algebra, X, "central")
    basis = [map_from_flat(algebra, X, v)
             for v in linalg.nullspace(rows, algebra.dim * X.dim, eps)]
    checked = False
    if diagonal is not None:
        ts, quality = _prepare_diagonal(X, diagonal)
        if quality.max_defect <= quality.tolerance and quality.symmetric:
            checked = True
            if basis:
                raise AssertionError(
                    "nonzero central derivation coexists with an exact symmetric "
                    "diagonal; the implementation is inconsistent")
    return CentralDerivationReport(basis=basis, vanishing_checked=checked)


@dataclass
class CentralDerivationReport:
    basis: list
    vanishing_checked: bool

    @property
    def dim(self):
        return len(self.basis)


# ---------------------------------------------------------------------------
# decompositions
# ---------------------------------------------------------------------------

@dataclass
class DiagonalQuality:
    max_defect: object
    symmetry_defect: object
    tolerance: object

    @property
    def symmetric(self):
        return self.symmetry_defect <= self.tolerance

    @property
    def exact(self):
        return self.max_defect == 0 and self.symmetry_defect == 0


def _prepare_diagonal(X, t, tolerance=None):
    """Lift t to the unitization if needed and measure its defects there.

    The measured defects are cached on the tensor: decomposition loops
    re-verify the same diagonal many times.
    """
    from .diagonals import unitized_diagonal
    algebra = X.algebra
    if t.space is algebra:
        if "unitized" not in t._cache:
            t._cache["unitized"] = unitized_diagonal(t)
        ts = t._cache["unitized"]
    else:
        X.adjoined_identity_index(t.space)  # raises when unrelated
        ts = t
    tol = tolerance
    if tol is None:
        tol = algebra.scalar(0) if algebra.mode == RATIONAL else algebra.tol
    if "diag_worst" not in ts._cache:
        worst = algebra.scalar(0)
        for a in ts.space.basis_elements():
            w = max(defects(ts, a))
            if w > worst:
                worst = w
        ts._cache["diag_worst"] = worst
    quality = DiagonalQuality(max_defect=ts._cache["diag_worst"],
                              symmetry_defect=ts.symmetry_defect(),
                              tolerance=tol)
    return ts, quality


def _require_diagonal(X, t, tolerance):
    ts, quality = _prepare_diagonal(X, t, tolerance)
    if quality.max_defect > quality.tolerance:
        raise AlgebraError(
            f"diagonal defects ({quality.max_defect}) exceed tolerance "
            f"({quality.tolerance})")
    if quality.symmetry_defect > quality.tolerance:
        raise AlgebraError("tensor is not symmetric within tolerance")
    return ts, quality


def _map_tolerance(X, tolerance):
    if tolerance is not None:
        return tolerance
    return X.scalar(0) if X.mode == RATIONAL else X.tol


def _sandwich_map(D, ts):
    """a -> sandwich(D(a), ts) as a map on D's domain."""
    X = D.codomain
    images = [dict(sandwich_action(D.image_of_basis(q), ts).coeffs)
              for q in range(D.domain.dim)]
    return LinearMap(D.domain, X, images)


def _residual_bound(D, ts, b, quality):
    """Defect-driven bound on the stage-one residual at algebra basis element b.

    || D(a) - contract(t) D(a) || <= M_X * d2(e) * ||D(a)||, plus the two
    action defects pushed through D's operator norm; this is the estimate
    that replaces exact equality for a nonzero-defect diagonal.
    """
    X = D.codomain
    a = _lift(b, ts.space)
    d1, _, d3, _ = defects(ts, a)
    e = ts.space.unit_element()
    d2_at_e = (multiply(contract(ts), e) - e).norm()
    # the adjoined unit acts with constant 1, so the action factor for
    # elements of the unitization is max(M_X, 1)
    action = max(X.action_bound, X.scalar(1))
    return (action * d2_at_e * D(b).norm()
            + D.op_norm() * (d1 + d3))


@dataclass
class JordanDecomposition:
    omega: Element                 # D(a) == a omega - omega a on the basis
    x: Element                     # first-stage image of the diagonal through D
    central_stage: LinearMap       # the sandwich remainder, verified central
    x1: Element                    # image of the diagonal through the remainder
    residuals: dict                # label -> || D(b) - (b omega - omega b) ||
    stage_one_residuals: dict      # label -> residual of the signed identity
    stage_one_bounds: dict         # label -> defect-driven bound (approximate case)
    central_defect: object
    quality: DiagonalQuality
    exact: bool
    ok: bool


def jordan_decompose(D, t, tolerance=None):
    """Split a Jordan derivation into an inner derivation via the diagonal.

    Computes x as the diagonal pushed through D, the central remainder as
    the sandwich of D through the diagonal, repeats once, and returns
    omega = x - x1/2 with D(a) = a omega - omega a verified on the basis.
    """
    X = D.codomain
    if not isinstance(X, BimodulePresentation):
        raise AlgebraError("decomposition needs a map into a bimodule")
    map_tol = _map_tolerance(X, tolerance)
    jd = jordan_defect(D)
    if jd > map_tol:
        raise AlgebraError(f"map is not a Jordan derivation (defect {jd})")
    ts, quality = _require_diagonal(X, t, tolerance)
    x = image_action(D, ts)
    delta = _sandwich_map(D, ts)
    cdef = centrality_defect(delta)
    if cdef > quality.tolerance:
        raise AlgebraError(
            f"central stage fails centrality (defect {cdef}); "
            "the supplied tensor is not a symmetric diagonal")
    x1 = image_action(delta, ts)
    half = X.scalar(1) / X.scalar(2)
    omega = x - x1.scaled(half)
    alg = D.domain
    residuals = {}
    stage1 = {}
    bounds = {}
    for q in range(alg.dim):
        b = alg.basis_element(q)
        Db = D.image_of_basis(q)
        inner = X.act_left(b, omega) - X.act_right(omega, b)
        residuals[alg.labels[q]] = (Db - inner).norm()
        lhs = X.act_left(b, x) - X.act_right(x, b)
        stage1[alg.labels[q]] = (Db - (lhs - delta.image_of_basis(q))).norm()
        if not quality.exact:
            bounds[alg.labels[q]] = _residual_bound(D, ts, b, quality)
    exact = quality.exact
    if exact:
        ok = all(X.is_zero_scalar(r) for r in residuals.values())
    else:
        ok = all(stage1[lab] <= bounds[lab] or stage1[lab] <= quality.tolerance
                 for lab in stage1)
    return JordanDecomposition(omega=omega, x=x, central_stage=delta, x1=x1,
                               residuals=residuals, stage_one_residuals=stage1,
                               stage_one_bounds=bounds, central_defect=cdef,
                               quality=quality, exact=exact, ok=ok)


def _lift(a, sharp):
    """View an algebra element inside the unitization (same leading indices)."""
    if a.space is sharp:
        return a
    return sharp.element(dict(a.coeffs))


@dataclass
class CentralJordanReport:
    x: Element
    residuals: dict                # label -> || D(b) - (b x - x b)/2 ||
    derivation_defect: object      # of D itself, which the halving certifies
    symmetric_bimodule: bool
    quality: DiagonalQuality
    ok: bool


def central_jordan_decompose(D, t, tolerance=None):
    """Verify a central Jordan derivation is half an inner commutator.

    For central D the sandwich remainder collapses onto D itself, so
    D(a) = (a x - x a) / 2 with x the diagonal through D; this form makes D
    a derivation outright, and on a symmetric bimodule it forces D = 0.
    """
    X = D.codomain
    map_tol = _map_tolerance(X, tolerance)
    jd = jordan_defect(D)
    if jd > map_tol:
        raise AlgebraError(f"map is not a Jordan derivation (defect {jd})")
    cd = centrality_defect(D)
    if cd > map_tol:
        raise AlgebraError(f"map is not central-valued (defect {cd})")
    ts, quality = _require_diagonal(X, t, tolerance)
    x = image_action(D, ts)
    half = X.scalar(1) / X.scalar(2)
    alg = D.domain
    residuals = {}
    for q in range(alg.dim):
        b = alg.basis_element(q)
        half_inner = (X.act_left(b, x) - X.act_right(x, b)).scaled(half)
        residuals[alg.labels[q]] = (D.image_of_basis(q) - half_inner).norm()
    dd = derivation_defect(D)
    ok = all(r <= quality.tolerance for r in residuals.values()) and dd <= map_tol
    return CentralJordanReport(x=x, residuals=residuals, derivation_defect=dd,
                               symmetric_bimodule=X.is_symmetric_bimodule(),
                               quality=quality, ok=ok)


@dataclass
class SubmoduleReport:
    sum_in_submodule: bool         # (d + tau)(A) lands in the designated span
    inner_in_submodule: bool       # d(A) lands in the span
    trace_in_submodule_center: bool


@dataclass
class LieDecomposition:
    inner: LinearMap               # a -> a x - x a
    central_trace: LinearMap       # the sandwich remainder
    x: Element
    residuals: dict                # label -> || D(b) - inner(b) - trace(b) ||
    residual_bounds: dict          # defect-driven bounds (approximate case)
    inner_derivation_defect: object
    trace_centrality_defect: object
    trace_commutator_defect: object
    quality: DiagonalQuality
    submodule: SubmoduleReport = None
    exact: bool = False
    ok: bool = False


def lie_decompose(D, t, tolerance=None, submodule=None):
    """Split a Lie derivation as inner derivation plus central trace.

    With x the diagonal through D, the inner part is a -> a x - x a and the
    remainder is the sandwich of D through the diagonal; the remainder is
    central-valued and kills commutators.  When submodule spanning vectors
    are supplied, membership of each part in the designated subbimodule is
    checked as well.

    Against a nonzero-defect diagonal (explicit tolerance required) the
    residuals are compared to their defect-driven bounds rather than to
    zero, and the centrality/trace defects of the remainder are reported
    without being gated.
    """
    X = D.codomain
    if not isinstance(X, BimodulePresentation):
        raise AlgebraError("decomposition needs a map into a bimodule")
    map_tol = _map_tolerance(X, tolerance)
    ld = lie_defect(D)
    if ld > map_tol:
        raise AlgebraError(f"map is not a Lie derivation (defect {ld})")
    ts, quality = _require_diagonal(X, t, tolerance)
    x = image_action(D, ts)
    d_map = inner_derivation(X, x)
    tau = _sandwich_map(D, ts)
    alg = D.domain
    residuals = {}
    bounds = {}
    for q in range(alg.dim):
        r = (D.image_of_basis(q) - d_map.image_of_basis(q)
             - tau.image_of_basis(q))
        residuals[alg.labels[q]] = r.norm()
        if not quality.exact:
            bounds[alg.labels[q]] = _residual_bound(D, ts, alg.basis_element(q),
                                                    quality)
    dd = derivation_defect(d_map)
    tc = centrality_defect(tau)
    tt = trace_defect(tau)
    sub_report = None
    if submodule is not None:
        sub_report = _submodule_report(X, d_map, tau, submodule)
    exact = quality.exact
    if exact:
        checks = [dd, tc, tt] + list(residuals.values())
        ok = all(v <= quality.tolerance for v in checks)
    else:
        ok = all(residuals[lab] <= bounds[lab] or residuals[lab] <= quality.tolerance
                 for lab in residuals)
    if sub_report is not None:
        ok = ok and sub_report.inner_in_submodule and sub_report.trace_in_submodule_center
    return LieDecomposition(inner=d_map, central_trace=tau, x=x,
                            residuals=residuals, residual_bounds=bounds,
                            inner_derivation_defect=dd,
                            trace_centrality_defect=tc, trace_commutator_defect=tt,
                            quality=quality, submodule=sub_report,
                            exact=exact, ok=ok)


def _submodule_report(X, d_map, tau, span_vectors):
    eps = 0 if X.mode == RATIONAL else X.tol
    sp = linalg.span_basis([dict(v.coeffs) for v in span_vectors], eps)
    center_span = linalg.span_basis([dict(v.coeffs) for v in X.center()], eps)

    def inside(m, span):
        return all(span.contains(img) for img in m.images)

    both = d_map + tau
    return SubmoduleReport(
        sum_in_submodule=inside(both, sp),
        inner_in_submodule=inside(d_map, sp),
        trace_in_submodule_center=inside(tau, sp)
        and all(center_span.contains(img) for img in tau.images))


# ---------------------------------------------------------------------------
# quotients and net reports
# ---------------------------------------------------------------------------

def quotient_bimodule(X, span_vectors):
    """Quotient of a bimodule by an action-invariant subspace.

    Returns the quotient presentation (coset basis indexed by the module
    coordinates outside the subspace's pivot set, with representative
    weights) together with the quotient map, a module morphism.
    """
    eps = 0 if X.mode == RATIONAL else X.tol
    sp = linalg.span_basis([dict(v.coeffs) for v in span_vectors], eps)
    for v in span_vectors:
        if v.space is not X:
            raise AlgebraError("spanning vector is over a different bimodule")
    for i in range(X.algebra.dim):
        for row in list(sp.rows):
            if not sp.contains(X.left_index(i, row)) or \
                    not sp.contains(X.right_index(row, i)):
                raise PresentationError(
                    "designated subspace is not invariant under the actions")
    pivots = set(sp.pivots)
    coset = [k for k in range(X.dim) if k not in pivots]
    pos = {k: idx for idx, k in enumerate(coset)}

    def project(vec):
        res = sp.reduce(vec)
        return {pos[k]: c for k, c in res.items()}

    left = {}
    right = {}
    for i in range(X.algebra.dim):
        for k in coset:
            row = project(X.left_index(i, {k: X.scalar(1)}))
            if row:
                left[(i, pos[k])] = row
            row = project(X.right_index({k: X.scalar(1)}, i))
            if row:
                right[(pos[k], i)] = row
    labels = [f"[{X.labels[k]}]" for k in coset]
    weights = [X.weights[k] for k in coset]
    W = BimodulePresentation(X.algebra, labels, left, right, weights,
                             name=(f"{X.name}/sub" if X.name else "quotient"))
    qmap = LinearMap(X, W, [project({k: X.scalar(1)}) for k in range(X.dim)])
    return W, qmap


def net_boundedness(net, X, maps=()):
    """Per-entry maxima of the sandwich and image evaluations over a net.

    Reports max ||sandwich(x_j, t)|| over the module basis and, per supplied
    map, ||image_action(D, t)||, so the boundedness hypotheses behind the
    decompositions can be inspected on concrete nets.
    """
    sandwich_max = []
    image_norms = [[] for _ in maps]
    for t in net.entries:
        worst = X.scalar(0)
        for j in range(X.dim):
            n = sandwich_action(X.basis_element(j), t).norm()
            if n > worst:
                worst = n
        sandwich_max.append(worst)
        for slot, D in enumerate(maps):
            image_norms[slot].append(image_action(D, t).norm())
    return {"sandwich_max": sandwich_max,
            "image_norms": image_norms}
