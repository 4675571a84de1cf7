"""Signed seminorms on the dual of K^(n+1): diagonal seminorms, binary
compositions, diagonalization over trivially valued coefficients, flags,
projections to real tropicalized linear spaces, and reconstruction of a
seminorm from a compatible family of projections.

A diagonal seminorm is an ordered invertible basis together with
nondecreasing weight valuations, one per basis vector; evaluating at f
solves f in the basis by Cramer's rule, keeps only signs and valuations
of the coordinates, and picks the first coordinate of least level
(coordinate valuation plus weight).  The composition of two seminorms
evaluates both branches and keeps the one of larger magnitude, the left
branch on ties.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from . import linalg
from .hyperfields import INF, RT, RT_ZERO, TV, Val, as_val, hyper_div, hyper_mul
from .puiseux import PuiseuxSeries, as_series, det, signed_value
from .tropical import LinearEmbedding, ProjPoint


class SingularBasisError(ValueError):
    pass


class DiagonalizationError(RuntimeError):
    pass


class FamilyError(ValueError):
    pass


class InconsistentFamilyError(FamilyError):
    pass


class NoApplicableEmbeddingError(FamilyError):
    pass


# ---------------------------------------------------------------------------
# Seminorm expressions


@dataclass(frozen=True)
class DiagonalSeminorm:
    """Ordered basis (columns) with nondecreasing weight valuations.

    The all-infinite weight vector is allowed here so that the zero
    seminorm can appear as a building block of compositions; operations
    that need a nontrivial normalized representative say so.
    """

    basis: tuple[tuple[PuiseuxSeries, ...], ...]
    weights: tuple[Val, ...]

    def __post_init__(self):
        cols = tuple(tuple(as_series(x) for x in c) for c in self.basis)
        object.__setattr__(self, "basis", cols)
        n = len(cols)
        if n == 0 or any(len(c) != n for c in cols):
            raise ValueError("basis must be square and nonempty")
        weights = tuple(as_val(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) != n:
            raise ValueError("one weight per basis vector required")
        for a, b in zip(weights, weights[1:]):
            if b < a:
                raise ValueError("weights must be nondecreasing valuations")
        d = det([[cols[j][i] for j in range(n)] for i in range(n)])
        if d.is_zero:
            raise SingularBasisError("basis vectors are dependent")
        object.__setattr__(self, "_det", d)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero_seminorm(self) -> bool:
        return all(w == INF for w in self.weights)

    @property
    def has_constant_basis(self) -> bool:
        return all(x.is_constant for c in self.basis for x in c)

    @cached_property
    def _const_inverse(self):
        if not self.has_constant_basis:
            return None
        rows = tuple(
            tuple(self.basis[j][i].constant_value() for j in range(self.dim))
            for i in range(self.dim)
        )
        return linalg.inverse(rows)

    def coordinates(self, f) -> tuple[RT, ...]:
        """Signed values of the basis coordinates of f, via Cramer."""
        f = tuple(as_series(x) for x in f)
        if len(f) != self.dim:
            raise ValueError("vector has the wrong dimension")
        inv = self._const_inverse
        if inv is not None and all(x.is_constant for x in f):
            vals = tuple(x.constant_value() for x in f)
            out = []
            for row in inv:
                lam = sum((a * b for a, b in zip(row, vals)), Fraction(0))
                out.append(RT_ZERO if lam == 0 else RT(1 if lam > 0 else -1, 0))
            return tuple(out)
        den = signed_value(self._det)
        n = self.dim
        out = []
        for j in range(n):
            rows = [
                [f[i] if k == j else self.basis[k][i] for k in range(n)]
                for i in range(n)
            ]
            num = signed_value(det(rows))
            out.append(RT_ZERO if num.sign == 0 else hyper_div(num, den))
        return tuple(out)

    def value(self, f) -> RT:
        best_sign = 0
        best_level: Val = INF
        for lam, c in zip(self.coordinates(f), self.weights):
            if lam.sign == 0 or c == INF:
                continue
            level = lam.val + c
            if level < best_level:
                best_level, best_sign = level, lam.sign
        return RT(best_sign, best_level) if best_sign else RT_ZERO

    def normalized(self) -> "DiagonalSeminorm":
        """Homothety representative with first finite weight zero."""
        shift = next((w for w in self.weights if w != INF), None)
        if shift is None:
            raise ValueError("the zero seminorm has no normalized representative")
        if shift == 0:
            return self
        return DiagonalSeminorm(
            self.basis, tuple(w - shift if w != INF else INF for w in self.weights)
        )

    @property
    def is_normalized(self) -> bool:
        return any(w == 0 for w in self.weights) and all(
            w == INF or w >= 0 for w in self.weights
        )

    def __repr__(self):
        from .hyperfields import format_val

        ws = ", ".join(format_val(w) for w in self.weights)
        return f"DiagonalSeminorm(dim={self.dim}, weights=[{ws}])"


@dataclass(frozen=True)
class Composition:
    """Binary composition; the branch of larger magnitude wins, left on ties."""

    left: "SeminormExpr"
    right: "SeminormExpr"

    def __post_init__(self):
        if self.left.dim != self.right.dim:
            raise ValueError("composed seminorms must share a dimension")

    @property
    def dim(self) -> int:
        return self.left.dim

    @property
    def has_constant_basis(self) -> bool:
        return self.left.has_constant_basis and self.right.has_constant_basis

    def value(self, f) -> RT:
        a = self.left.value(f)
        b = self.right.value(f)
        return a if a.val <= b.val else b


SeminormExpr = Union[DiagonalSeminorm, Composition]


def compose(a: SeminormExpr, b: SeminormExpr) -> Composition:
    return Composition(a, b)


def leaves(expr: SeminormExpr):
    if isinstance(expr, DiagonalSeminorm):
        yield expr
    else:
        yield from leaves(expr.left)
        yield from leaves(expr.right)


def standard_leaf(dim: int, weights=None) -> DiagonalSeminorm:
    basis = tuple(
        tuple(PuiseuxSeries.constant(1 if i == j else 0) for i in range(dim))
        for j in range(dim)
    )
    if weights is None:
        weights = (Fraction(0),) * dim
    return DiagonalSeminorm(basis, tuple(weights))


# ---------------------------------------------------------------------------
# Diagonalization over trivially valued coefficients
#
# Over constant coefficients a diagonal leaf is exactly the rule "first
# nonzero basis coordinate in weight order decides"; a composition
# merges the two ordered functional lists by weight with the left branch
# first on ties.  Diagonalizing is therefore a stable merge of the leaf
# functional lists followed by dropping functionals dependent on earlier
# ones and dualizing back to a basis.


def _leaf_functionals(leaf: DiagonalSeminorm) -> list[tuple[linalg.Vec, Val]]:
    rows = tuple(
        tuple(leaf.basis[j][i].constant_value() for j in range(leaf.dim))
        for i in range(leaf.dim)
    )
    inv = linalg.inverse(rows)
    return [(inv[j], w) for j, w in enumerate(leaf.weights) if w != INF]


def _flatten(expr: SeminormExpr) -> list[tuple[linalg.Vec, Val]]:
    if isinstance(expr, DiagonalSeminorm):
        return _leaf_functionals(expr)
    left = _flatten(expr.left)
    right = _flatten(expr.right)
    out = []
    i = j = 0
    while i < len(left) and j < len(right):
        if right[j][1] < left[i][1]:
            out.append(right[j])
            j += 1
        else:
            out.append(left[i])
            i += 1
    out.extend(left[i:])
    out.extend(right[j:])
    return out


def diagonalize(expr: SeminormExpr, dim_bound: int = 16) -> DiagonalSeminorm:
    """Exact diagonal form of a composition over constant coefficients.

    The result evaluates identically to the expression on every vector.
    """
    if expr.dim > dim_bound:
        raise DiagonalizationError(f"dimension {expr.dim} exceeds bound {dim_bound}")
    if not expr.has_constant_basis:
        raise DiagonalizationError("diagonalization needs constant basis entries")
    d = expr.dim
    kept: list[tuple[linalg.Vec, Val]] = []
    kept_rows: list[linalg.Vec] = []
    for phi, w in _flatten(expr):
        if not linalg.in_span(linalg.span_basis(kept_rows), phi):
            kept.append((phi, w))
            kept_rows.append(phi)
    rows = linalg.complete_basis(kept_rows, d) if kept_rows else linalg.mat(
        [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    )
    dual = linalg.inverse(rows)
    cols = tuple(
        tuple(PuiseuxSeries.constant(dual[i][j]) for i in range(d)) for j in range(d)
    )
    weights = tuple(w for _, w in kept) + (INF,) * (d - len(kept))
    return DiagonalSeminorm(cols, weights)


# ---------------------------------------------------------------------------
# Signed flags


@dataclass(frozen=True)
class FlagStep:
    vector: linalg.Vec
    weight: Val
    region: int  # +1 or -1: which side of the previous subspace is chosen

    def __post_init__(self):
        object.__setattr__(self, "vector", linalg.vec(self.vector))
        object.__setattr__(self, "weight", as_val(self.weight))
        if self.region not in (1, -1):
            raise ValueError("region choice must be +1 or -1")
        if self.weight == INF:
            raise ValueError("flag step weights are finite")


@dataclass(frozen=True)
class SignedFlag:
    """Kernel, then one new direction per step with a side and a weight.

    Steps run bottom-up: weights are nonincreasing and the top step has
    weight zero for normalized flags.  Negating every region gives the
    same flag class.
    """

    kernel: tuple[linalg.Vec, ...]
    steps: tuple[FlagStep, ...]

    def __post_init__(self):
        object.__setattr__(self, "kernel", tuple(linalg.vec(v) for v in self.kernel))
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise ValueError("a flag needs at least one step")
        for a, b in zip(self.steps, self.steps[1:]):
            if b.weight > a.weight:
                raise ValueError("step weights must not increase bottom-up")
        dim = len(self.steps[0].vector)
        vectors = list(self.kernel) + [s.vector for s in self.steps]
        if linalg.rank(vectors) != len(vectors) or len(vectors) != dim:
            raise ValueError("kernel plus step vectors must form a basis")

    @property
    def dim(self) -> int:
        return len(self.steps[0].vector)

    def subspace_at(self, level: int) -> linalg.Mat:
        """Canonical basis of the subspace after the first `level` steps."""
        vecs = list(self.kernel) + [s.vector for s in self.steps[:level]]
        return linalg.span_basis(vecs)


def flag_of(s: DiagonalSeminorm) -> SignedFlag:
    """Flag of a diagonal seminorm: kernel from infinite weights, then
    basis vectors in decreasing weight order, each choosing its own side."""
    if not s.has_constant_basis:
        raise ValueError("flags require constant basis entries")
    s = s.normalized()
    cols = [
        tuple(x.constant_value() for x in c) for c in s.basis
    ]
    kernel = tuple(cols[j] for j, w in enumerate(s.weights) if w == INF)
    steps = tuple(
        FlagStep(cols[j], s.weights[j], 1)
        for j in range(s.dim - 1, -1, -1)
        if s.weights[j] != INF
    )
    return SignedFlag(kernel, steps)


def seminorm_from_flag(flag: SignedFlag) -> DiagonalSeminorm:
    cols = []
    weights: list[Val] = []
    for step in reversed(flag.steps):
        cols.append(linalg.vec_scale(step.region, step.vector))
        weights.append(step.weight)
    for v in flag.kernel:
        cols.append(v)
        weights.append(INF)
    basis = tuple(
        tuple(PuiseuxSeries.constant(x) for x in c) for c in cols
    )
    return DiagonalSeminorm(basis, tuple(weights))


def flags_equivalent(F: SignedFlag, G: SignedFlag) -> bool:
    """Same subspace chain and weights, regions equal up to a global flip."""
    if F.dim != G.dim or len(F.steps) != len(G.steps):
        return False
    if not linalg.span_eq(F.kernel, G.kernel):
        return False
    for i in range(1, len(F.steps) + 1):
        if F.subspace_at(i) != G.subspace_at(i):
            return False
    if any(a.weight != b.weight for a, b in zip(F.steps, G.steps)):
        return False
    flips = set()
    for i, (fs, gs) in enumerate(zip(F.steps, G.steps)):
        below = list(F.kernel) + [s.vector for s in F.steps[:i]]
        cols = [linalg.vec_scale(fs.region, fs.vector)] + below
        rows = tuple(
            tuple(col[r] for col in cols) for r in range(F.dim)
        )
        sol = linalg.solve(rows, linalg.vec_scale(gs.region, gs.vector))
        if sol is None or sol[0] == 0:
            return False
        flips.add(1 if sol[0] > 0 else -1)
    return len(flips) == 1


# ---------------------------------------------------------------------------
# Forgetting signs


@dataclass(frozen=True)
class UnsignedFlag:
    """Subspace chain with strictly decreasing weights bottom-up; steps
    may add several directions at once."""

    kernel: tuple[linalg.Vec, ...]
    steps: tuple[tuple[tuple[linalg.Vec, ...], Val], ...]

    def __post_init__(self):
        object.__setattr__(self, "kernel", tuple(linalg.vec(v) for v in self.kernel))
        steps = tuple(
            (tuple(linalg.vec(v) for v in vs), as_val(w)) for vs, w in self.steps
        )
        object.__setattr__(self, "steps", steps)
        if not steps:
            raise ValueError("a flag needs at least one step")
        for (_, a), (_, b) in zip(steps, steps[1:]):
            if b >= a:
                raise ValueError("unsigned flag weights strictly decrease bottom-up")


@dataclass(frozen=True)
class PhiImage:
    """Magnitude part of a seminorm: valuation-only evaluation, plus the
    weighted subspace flag when the coefficients are constant."""

    expr: SeminormExpr
    flag: UnsignedFlag | None

    def value(self, f) -> TV:
        return TV(self.expr.value(f).val)


def phi_abs(expr: SeminormExpr) -> PhiImage:
    flag = None
    if expr.has_constant_basis and not (
        isinstance(expr, DiagonalSeminorm) and expr.is_zero_seminorm
    ):
        diag = diagonalize(expr).normalized()
        cols = [tuple(x.constant_value() for x in c) for c in diag.basis]
        kernel = tuple(cols[j] for j, w in enumerate(diag.weights) if w == INF)
        groups: dict[Val, list[linalg.Vec]] = {}
        for j, w in enumerate(diag.weights):
            if w != INF:
                groups.setdefault(w, []).append(cols[j])
        steps = tuple(
            (tuple(groups[w]), w) for w in sorted(groups, reverse=True)
        )
        flag = UnsignedFlag(kernel, steps)
    return PhiImage(expr, flag)


def phi_fiber(flag: UnsignedFlag) -> tuple[SignedFlag, ...]:
    """All sign choices over a complete strict-weight flag, one
    representative per global-flip class (top step fixed positive)."""
    if any(len(vs) != 1 for vs, _ in flag.steps):
        raise ValueError("fiber is infinite: some step adds more than one direction")
    l = len(flag.steps)
    out = []
    for bits in itertools.product((1, -1), repeat=l - 1):
        regions = tuple(bits) + (1,)
        steps = tuple(
            FlagStep(vs[0], w, r)
            for (vs, w), r in zip(flag.steps, regions)
        )
        out.append(SignedFlag(flag.kernel, steps))
    return tuple(out)


# ---------------------------------------------------------------------------
# Projection to real tropicalized linear spaces


def project_point(s: SeminormExpr, emb: LinearEmbedding) -> ProjPoint:
    """Evaluate the seminorm on every functional of the embedding."""
    values = tuple(s.value(col) for col in emb.columns)
    if all(v.sign == 0 for v in values):
        raise ValueError("seminorm vanishes on every functional of the embedding")
    return ProjPoint(values)


def check_diagram_commutes(
    s: SeminormExpr,
    emb: LinearEmbedding,
    index_map: Sequence[int],
    target: LinearEmbedding | None = None,
) -> bool:
    """Project, then apply the coordinate map; compare with projecting to
    the mapped embedding directly."""
    try:
        cols = tuple(emb.columns[i] for i in index_map)
    except IndexError as exc:
        raise ValueError("index map does not fit the embedding") from exc
    if target is not None:
        if tuple(target.columns) != cols:
            raise ValueError("target embedding does not match the mapped columns")
        emb2 = target
    else:
        emb2 = LinearEmbedding(cols)
    y = project_point(s, emb)
    mapped = tuple(y.coords[i] for i in index_map)
    return ProjPoint(mapped) == project_point(s, emb2)


# ---------------------------------------------------------------------------
# Compatible families and reconstruction


@dataclass(frozen=True)
class Morphism:
    src: int
    dst: int
    index_map: tuple[int, ...]


@dataclass(frozen=True)
class CompatibleFamily:
    """Embedding/point pairs such that every recorded coordinate map sends
    the source point to the target point."""

    members: tuple[tuple[LinearEmbedding, ProjPoint], ...]
    morphisms: tuple[Morphism, ...] = ()

    def __post_init__(self):
        for mor in self.morphisms:
            if not (0 <= mor.src < len(self.members)) or not (
                0 <= mor.dst < len(self.members)
            ):
                raise FamilyError("morphism endpoints out of range")
            src_emb, src_pt = self.members[mor.src]
            dst_emb, dst_pt = self.members[mor.dst]
            if len(mor.index_map) != len(dst_emb):
                raise FamilyError("morphism map length does not match target")
            for k, i in enumerate(mor.index_map):
                if not (0 <= i < len(src_emb)):
                    raise FamilyError("morphism map index out of range")
                if dst_emb.columns[k] != src_emb.columns[i]:
                    raise FamilyError("morphism map does not match the columns")
            mapped = tuple(src_pt.coords[i] for i in mor.index_map)
            if all(x.sign == 0 for x in mapped):
                raise FamilyError("morphism maps the source point to zero")
            if ProjPoint(mapped) != dst_pt:
                raise FamilyError("recorded morphism does not send point to point")


def family_from_seminorm(
    s: SeminormExpr, embeddings: Sequence[LinearEmbedding], morphisms=()
) -> CompatibleFamily:
    members = tuple((emb, project_point(s, emb)) for emb in embeddings)
    return CompatibleFamily(members, tuple(morphisms))


def _first_dual(dim: int) -> tuple[PuiseuxSeries, ...]:
    return tuple(PuiseuxSeries.constant(1 if i == 0 else 0) for i in range(dim))


def reconstruct_from_family(fam: CompatibleFamily, probes) -> tuple[RT, ...]:
    """Recover seminorm values at the probes from projected points.

    For a probe f, any member whose columns contain both the first dual
    vector and f determines the value as the coordinate quotient; all
    applicable members must agree, and the first dual vector is pinned
    to value one, fixing the homothety.
    """
    if not fam.members:
        raise FamilyError("empty family")
    dim = fam.members[0][0].height
    e0 = _first_dual(dim)
    probes = [tuple(as_series(x) for x in p) for p in probes]
    out: list[RT] = []
    for pi, f in enumerate(probes):
        found: list[RT] = []
        for emb, pt in fam.members:
            try:
                a = emb.columns.index(e0)
            except ValueError:
                continue
            if pt.coords[a].sign == 0:
                continue
            try:
                b = emb.columns.index(f)
            except ValueError:
                continue
            found.append(hyper_div(pt.coords[b], pt.coords[a]))
        if not found:
            raise NoApplicableEmbeddingError(
                f"no member contains both the first dual vector and probe {pi}"
            )
        if any(v != found[0] for v in found[1:]):
            raise InconsistentFamilyError(
                f"members disagree on probe {pi}: family is not compatible"
            )
        out.append(found[0])
    return tuple(out)


# ---------------------------------------------------------------------------
# Fixture: a signed seminorm with no diagonal form
#
# Coefficients carry the trivial absolute value while the branch choice
# compares the nonarchimedean magnitudes, so the two coordinate
# directions cannot be separated by any weighted basis.


def nondiag_fixture(x, y) -> int:
    """Sign of the coordinate of larger nonarchimedean magnitude, first
    coordinate on ties."""
    x, y = as_series(x), as_series(y)
    if x.is_zero and y.is_zero:
        raise ValueError("fixture is undefined at the origin")
    return x.sign if x.valuation <= y.valuation else y.sign


# ---------------------------------------------------------------------------
# Decomposition into scaled minor seminorms


def cocircuit_value(mu_columns, f) -> RT:
    """Signed value of the maximal minor with f in front of the mu columns."""
    mu = [tuple(as_series(x) for x in c) for c in mu_columns]
    f = tuple(as_series(x) for x in f)
    n = len(f)
    if len(mu) != n - 1:
        raise ValueError("need dimension minus one columns")
    rows = [
        [f[i]] + [c[i] for c in mu] for i in range(n)
    ]
    return signed_value(det(rows))


def scaled_cocircuit_decomposition(
    s: DiagonalSeminorm,
) -> tuple[tuple[tuple, RT], ...]:
    """Pieces (mu_i, scale_i), one per finite-weight basis vector, whose
    weight-ordered composition reproduces the seminorm: mu_i drops the
    i-th basis vector and the scale matches levels and signs."""
    pieces = []
    for i, w in enumerate(s.weights):
        if w == INF:
            continue
        mu = tuple(s.basis[:i] + s.basis[i + 1 :])
        lead = cocircuit_value(mu, s.basis[i])
        if lead.sign == 0:
            raise SingularBasisError("degenerate minor in decomposition")
        scale = hyper_div(RT(1, w), lead)
        pieces.append((mu, scale))
    return tuple(pieces)


def decomposition_value(pieces, f) -> RT:
    """Evaluate a weight-ordered list of scaled minor seminorms at f."""
    best = RT_ZERO
    for mu, scale in pieces:
        v = hyper_mul(scale, cocircuit_value(mu, f))
        if v.val < best.val:
            best = v
    return best
