"""Real tropicalization of points and linear embeddings, membership tests
for real tropical hyperplanes and linear spaces, and real Bergman fans.

Projective points carry one sign-and-valuation coordinate per ground
element, normalized so the smallest-index nonzero coordinate is (+, 0).
A point lies on the hyperplane of a circuit when the coordinatewise
products admit zero, i.e. the least product valuation is reached with
both signs (or everything vanishes); a linear space is the intersection
over all circuits of the embedding's matroid.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .hyperfields import INF, RT, TV, contains_zero, hyper_mul, hyper_sum
from .matroids import (
    CovectorPoset,
    GroundSet,
    SignedCircuit,
    SignVector,
    ground_from_matrix,
    leq_sv,
    normalize_rt_vector,
)
from .puiseux import PuiseuxSeries, as_series, column_rank, dot, signed_value


@dataclass(frozen=True)
class ProjPoint:
    """Projective point with RT coordinates, canonically normalized."""

    coords: tuple[RT, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if all(x.sign == 0 for x in coords):
            raise ValueError("projective point cannot be all zero")
        object.__setattr__(self, "coords", normalize_rt_vector(coords))

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def sign_vector(self) -> SignVector:
        return tuple(x.sign for x in self.coords)

    def __repr__(self):
        return f"ProjPoint({list(self.coords)!r})"


def trop_r_point(coords) -> ProjPoint:
    """Componentwise signed value of a vector of ring elements."""
    series = [as_series(x) for x in coords]
    if all(s.is_zero for s in series):
        raise ValueError("cannot tropicalize the zero vector")
    return ProjPoint(tuple(signed_value(s) for s in series))


@dataclass(frozen=True)
class LinearEmbedding:
    """Columns are the functionals of a linear embedding; they must span."""

    columns: tuple[tuple[PuiseuxSeries, ...], ...]

    def __post_init__(self):
        cols = tuple(tuple(as_series(x) for x in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if not cols:
            raise ValueError("embedding needs at least one column")
        heights = {len(c) for c in cols}
        if len(heights) != 1:
            raise ValueError("columns of unequal height")
        if column_rank(cols) != len(cols[0]):
            raise ValueError("columns do not span the dual space")

    @staticmethod
    def from_matrix(rows) -> "LinearEmbedding":
        g = ground_from_matrix(rows)
        return LinearEmbedding(g.columns)

    @property
    def height(self) -> int:
        return len(self.columns[0])

    def __len__(self):
        return len(self.columns)

    @cached_property
    def circuits(self) -> tuple[SignedCircuit, ...]:
        from .matroids import circuits_from_matrix

        return circuits_from_matrix(GroundSet(tuple(range(len(self.columns))), self.columns))

    def ground(self) -> GroundSet:
        return GroundSet(tuple(range(len(self.columns))), self.columns)

    def apply(self, x) -> tuple[PuiseuxSeries, ...]:
        """Evaluate every functional at the coordinate vector x."""
        x = tuple(as_series(v) for v in x)
        if len(x) != self.height:
            raise ValueError("point has the wrong dimension")
        return tuple(dot(c, x) for c in self.columns)


def hyperplane_member(y: ProjPoint, circuit) -> bool:
    """Zero is admitted by the products y_e * C_e over the support."""
    entries = circuit.entries if isinstance(circuit, SignedCircuit) else tuple(circuit)
    if len(entries) != len(y):
        raise ValueError("point and circuit have different lengths")
    vstar = INF
    signs_at_min = 0  # bitmask: 1 for plus, 2 for minus
    for ye, ce in zip(y.coords, entries):
        s = ye.sign * ce.sign
        if s == 0:
            continue
        v = ye.val + ce.val
        if v < vstar:
            vstar = v
            signs_at_min = 1 if s > 0 else 2
        elif v == vstar:
            signs_at_min |= 1 if s > 0 else 2
    return signs_at_min in (0, 3)


def unsigned_hyperplane_member(y: ProjPoint, circuit) -> bool:
    """Valuation-only membership: the least product valuation repeats."""
    entries = circuit.entries if isinstance(circuit, SignedCircuit) else tuple(circuit)
    prods = [
        hyper_mul(TV(ye.val), TV(ce.val)) for ye, ce in zip(y.coords, entries)
    ]
    return contains_zero(hyper_sum(prods)) if prods else True


def linear_space_member(y: ProjPoint, embedding: LinearEmbedding) -> bool:
    """Intersection of the hyperplane conditions over all circuits."""
    if len(y) != len(embedding):
        raise ValueError("point and embedding have different lengths")
    return all(hyperplane_member(y, c) for c in embedding.circuits)


# ---------------------------------------------------------------------------
# Real Bergman fans


@dataclass(frozen=True)
class BergmanFan:
    """Cones indexed by chains of nonzero covectors of a covector poset."""

    poset: CovectorPoset
    cones: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return max((len(c) for c in self.cones), default=0)

    def maximal_cones(self) -> tuple[tuple[int, ...], ...]:
        chain_set = set(self.cones)

        def extendable(chain):
            lower = self.poset.vectors[chain[0]]
            upper = self.poset.vectors[chain[-1]]
            for i, v in enumerate(self.poset.vectors):
                if not any(v) or i in chain:
                    continue
                if leq_sv(v, lower) or leq_sv(upper, v):
                    return True
                for a, b in zip(chain, chain[1:]):
                    if leq_sv(self.poset.vectors[a], v) and leq_sv(v, self.poset.vectors[b]):
                        return True
            return False

        return tuple(c for c in self.cones if not extendable(c))


def bergman_fan(poset: CovectorPoset) -> BergmanFan:
    return BergmanFan(poset, poset.chains())


def bergman_member(y: ProjPoint, fan: BergmanFan) -> bool:
    """Greedy level-set decomposition of a point against the fan.

    Reveal the coordinates in increasing valuation order; at each level
    the signs revealed so far must form a covector.  The revealed
    vectors are nested, so they automatically make a chain and the point
    lies in the cone that chain spans.
    """
    covs = set(fan.poset.vectors)
    levels = sorted({x.val for x in y.coords if x.val != INF})
    for v in levels:
        revealed = tuple(
            x.sign if x.val <= v else 0 for x in y.coords
        )
        if revealed not in covs:
            return False
    return True
