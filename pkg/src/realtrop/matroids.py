"""Grassmann-Plucker functions over hyperfields, their axiom checkers,
circuits of realizable matroids, cocircuits, and covector posets.

Ground sets are finite and indexed 0..m-1, optionally with labels and
with realizing column vectors.  Underlying-matroid notions (rank,
closure, minimal dependent sets) are computed by exhaustive subset
search, which at desk scale doubles as the independent oracle for
everything built on top.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .hyperfields import (
    RT,
    RT_ZERO,
    Elem,
    contains_zero,
    field_of,
    hyper_add,
    hyper_div,
    hyper_mul,
    hyper_neg,
    hyper_sum,
    hyperset_contains,
    is_zero,
    pushmap,
    pushmap_target,
    zero_of,
)
from .puiseux import PuiseuxSeries, as_series, columns_independent, det, signed_value

SignVector = tuple[int, ...]

DEFAULT_PAIR_CAP = 200_000
DEFAULT_CLOSURE_CAP = 20_000


class EnumerationCapError(RuntimeError):
    def __init__(self, required: int, cap: int, what: str):
        super().__init__(f"{what} needs {required} steps, cap is {cap}")
        self.required = required
        self.cap = cap


class RankDeficientError(ValueError):
    pass


@dataclass(frozen=True)
class Report:
    """Outcome of an axiom check; violations are JSON-friendly dicts."""

    ok: bool
    violations: tuple[dict, ...] = ()
    info: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Ground sets


@dataclass(frozen=True)
class GroundSet:
    labels: tuple
    columns: tuple[tuple[PuiseuxSeries, ...], ...] | None = None

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("ground set labels must be distinct")
        if self.columns is not None:
            cols = tuple(tuple(as_series(x) for x in c) for c in self.columns)
            object.__setattr__(self, "columns", cols)
            if len(cols) != len(self.labels):
                raise ValueError("one column per label required")
            heights = {len(c) for c in cols}
            if len(heights) > 1:
                raise ValueError("columns of unequal height")

    def __len__(self):
        return len(self.labels)

    @property
    def height(self) -> int:
        if self.columns is None or not self.columns:
            raise ValueError("ground set has no column vectors")
        return len(self.columns[0])


def ground_from_matrix(rows, labels=None) -> GroundSet:
    """Interpret a row-major matrix as a ground set of column vectors."""
    rows = [tuple(as_series(x) for x in row) for row in rows]
    if not rows or not rows[0]:
        raise ValueError("empty matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    cols = tuple(tuple(rows[i][j] for i in range(len(rows))) for j in range(width))
    if labels is None:
        labels = tuple(range(width))
    return GroundSet(tuple(labels), cols)


# ---------------------------------------------------------------------------
# Grassmann-Plucker functions


def _perm_sign_and_sorted(tup: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    if len(set(tup)) != len(tup):
        return 0, tup
    inversions = sum(
        1
        for i in range(len(tup))
        for j in range(i + 1, len(tup))
        if tup[i] > tup[j]
    )
    return (-1) ** inversions, tuple(sorted(tup))


@dataclass(frozen=True)
class GrassmannPlucker:
    """Alternating rank-tuple function with values in one hyperfield.

    ``values`` maps strictly increasing index tuples to elements; values
    on arbitrary tuples follow from the alternating rule.
    """

    rank: int
    labels: tuple
    hyperfield: str
    values: dict

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        zero = zero_of(self.hyperfield)
        vals = {}
        nonzero = False
        for tup, v in self.values.items():
            tup = tuple(tup)
            if tuple(sorted(tup)) != tup or len(set(tup)) != len(tup):
                raise ValueError(f"value keys must be strictly increasing, got {tup}")
            if len(tup) != self.rank:
                raise ValueError("tuple length must equal rank")
            if field_of(v) != self.hyperfield:
                raise ValueError("value from the wrong hyperfield")
            vals[tup] = v
            nonzero = nonzero or not is_zero(v)
        for tup in itertools.combinations(range(len(self.labels)), self.rank):
            vals.setdefault(tup, zero)
        if not nonzero:
            raise ValueError("Grassmann-Plucker function must not be identically zero")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.labels)

    def value_on(self, tup) -> Elem:
        """Value on an arbitrary tuple via the alternating rule."""
        sgn, key = _perm_sign_and_sorted(tuple(tup))
        if sgn == 0:
            return zero_of(self.hyperfield)
        v = self.values[key]
        return v if sgn > 0 else hyper_neg(v)

    def bases(self) -> tuple[tuple[int, ...], ...]:
        return tuple(t for t, v in sorted(self.values.items()) if not is_zero(v))


def gp_from_matrix(
    ground: GroundSet, target: str = "RT", tuple_cap: int = DEFAULT_PAIR_CAP
) -> GrassmannPlucker:
    """Signed valuations of maximal minors, pushed into the target hyperfield."""
    if isinstance(ground, (list, tuple)) and ground and not isinstance(ground, GroundSet):
        ground = ground_from_matrix(ground)
    cols = ground.columns
    if cols is None:
        raise ValueError("ground set carries no column vectors")
    r = ground.height
    m = len(cols)
    if r > m:
        raise RankDeficientError("fewer columns than rows, matroid cannot have full rank")
    count = _ncr(m, r)
    if count > tuple_cap:
        raise EnumerationCapError(count, tuple_cap, "minor enumeration")
    values = {}
    nonzero = False
    for tup in itertools.combinations(range(m), r):
        sub = [[cols[j][i] for j in tup] for i in range(r)]
        sv = signed_value(det(sub))
        if target != "RT":
            v = pushmap({"T": "abs", "S": "sgn", "K": "to-krasner"}[target], sv)
        else:
            v = sv
        values[tup] = v
        nonzero = nonzero or not is_zero(v)
    if not nonzero:
        raise RankDeficientError("columns do not span, matroid is rank deficient")
    return GrassmannPlucker(r, ground.labels, target, values)


def _ncr(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def check_gp_relations(
    gp: GrassmannPlucker, pair_cap: int = DEFAULT_PAIR_CAP
) -> Report:
    """Exhaustively verify the three-term exchange relations.

    For every (rank+1)-subset x and (rank-1)-subset y the alternating sum
    of products phi(x minus x_k) * phi(x_k, y) must admit zero, i.e. the
    terms are all zero or the least valuation is reached with both signs.
    """
    m, r = len(gp), gp.rank
    npairs = _ncr(m, r + 1) * _ncr(m, r - 1)
    if npairs > pair_cap:
        raise EnumerationCapError(npairs, pair_cap, "relation enumeration")
    for x in itertools.combinations(range(m), r + 1):
        for y in itertools.combinations(range(m), r - 1):
            terms = []
            for k, xk in enumerate(x):
                left = gp.value_on(x[:k] + x[k + 1 :])
                right = gp.value_on((xk,) + y)
                t = hyper_mul(left, right)
                terms.append(hyper_neg(t) if k % 2 else t)
            if not contains_zero(hyper_sum(terms)):
                return Report(
                    ok=False,
                    violations=({"relation": {"x": list(x), "y": list(y)}},),
                )
    return Report(ok=True, info={"pairs_checked": npairs})


def pushforward_gp(
    gp: GrassmannPlucker, hom: str, check: bool = True, pair_cap: int = DEFAULT_PAIR_CAP
) -> GrassmannPlucker:
    """Apply a hyperfield homomorphism pointwise to the value table."""
    target = pushmap_target(hom)
    values = {t: pushmap(hom, v) for t, v in gp.values.items()}
    out = GrassmannPlucker(gp.rank, gp.labels, target, values)
    if check:
        rep = check_gp_relations(out, pair_cap=pair_cap)
        if not rep.ok:
            raise ValueError(f"pushforward is not a Grassmann-Plucker function: {rep.violations}")
    return out


# ---------------------------------------------------------------------------
# Underlying matroid, by exhaustive search


class UnderlyingMatroid:
    """Rank/closure oracle from either column vectors or a basis list."""

    def __init__(self, size: int, bases: tuple[tuple[int, ...], ...]):
        if not bases:
            raise ValueError("a matroid needs at least one basis")
        self.size = size
        self.bases = bases
        self.rank_value = len(bases[0])

    @staticmethod
    def from_gp(gp: GrassmannPlucker) -> "UnderlyingMatroid":
        return UnderlyingMatroid(len(gp), gp.bases())

    @staticmethod
    def from_columns(cols) -> "UnderlyingMatroid":
        cols = [tuple(as_series(x) for x in c) for c in cols]
        r = 0
        bases = []
        for tup in itertools.combinations(range(len(cols)), len(cols[0])):
            if columns_independent([cols[j] for j in tup]):
                bases.append(tup)
        if bases:
            return UnderlyingMatroid(len(cols), tuple(bases))
        raise RankDeficientError("columns do not span")

    def rank_of(self, subset) -> int:
        s = set(subset)
        return max(len(s & set(b)) for b in self.bases)

    def is_independent(self, subset) -> bool:
        return self.rank_of(subset) == len(set(subset))

    def closure(self, subset) -> tuple[int, ...]:
        s = set(subset)
        r = self.rank_of(s)
        return tuple(
            e for e in range(self.size) if e in s or self.rank_of(s | {e}) == r
        )

    def is_flat(self, subset) -> bool:
        return tuple(sorted(set(subset))) == self.closure(subset)

    def circuit_supports(self) -> tuple[tuple[int, ...], ...]:
        """Minimal dependent subsets, ascending by size then lexicographically."""
        found: list[tuple[int, ...]] = []
        for size in range(1, self.rank_value + 2):
            for tup in itertools.combinations(range(self.size), size):
                st = set(tup)
                if any(set(c) <= st for c in found):
                    continue
                if not self.is_independent(tup):
                    found.append(tup)
        return tuple(sorted(found, key=lambda t: (len(t), t)))


# ---------------------------------------------------------------------------
# Signed valuated circuits


def normalize_rt_vector(entries) -> tuple[RT, ...]:
    """Scale so the smallest-index nonzero entry becomes (+, 0)."""
    entries = tuple(entries)
    lead = next((x for x in entries if x.sign != 0), None)
    if lead is None:
        raise ValueError("cannot normalize the zero vector")
    return tuple(
        RT_ZERO if x.sign == 0 else RT(x.sign * lead.sign, x.val - lead.val)
        for x in entries
    )


@dataclass(frozen=True)
class SignedCircuit:
    """Normalized representative of a scaling class of RT vectors."""

    entries: tuple[RT, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", normalize_rt_vector(self.entries))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.entries) if x.sign != 0)

    def scaled(self, alpha: RT) -> tuple[RT, ...]:
        return tuple(hyper_mul(alpha, x) for x in self.entries)

    def sign_vector(self) -> SignVector:
        return tuple(x.sign for x in self.entries)

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f"SignedCircuit({list(self.entries)!r})"


def circuits_from_matrix(ground: GroundSet) -> tuple[SignedCircuit, ...]:
    """One normalized circuit per minimal dependent set of columns.

    On a minimal dependent support the coefficients come from Cramer's
    rule: pick rows making the support-minus-one-column square blocks
    testable, take alternating-sign minors, and keep only signs and
    valuations.
    """
    if isinstance(ground, (list, tuple)) and ground and not isinstance(ground, GroundSet):
        ground = ground_from_matrix(ground)
    cols = ground.columns
    if cols is None:
        raise ValueError("ground set carries no column vectors")
    matroid = UnderlyingMatroid.from_columns(cols)
    if matroid.rank_value != ground.height:
        raise RankDeficientError("columns do not span")
    height = ground.height
    out = []
    for support in matroid.circuit_supports():
        k = len(support) - 1
        lam = _cramer_dependence([cols[j] for j in support], height, k)
        entries = [RT_ZERO] * len(cols)
        for pos, e in enumerate(support):
            entries[e] = lam[pos]
        out.append(SignedCircuit(tuple(entries)))
    return tuple(out)


def _cramer_dependence(sup_cols, height: int, k: int) -> list[RT]:
    if k == 0:
        return [RT(1, 0)]
    for rowsel in itertools.combinations(range(height), k):
        minors = []
        any_nonzero = False
        for drop in range(k + 1):
            sub = [
                [sup_cols[j][i] for j in range(k + 1) if j != drop] for i in rowsel
            ]
            d = det(sub)
            minors.append(d)
            any_nonzero = any_nonzero or not d.is_zero
        if any_nonzero:
            lam = []
            for j, d in enumerate(minors):
                sv = signed_value(d)
                lam.append(hyper_neg(sv) if j % 2 else sv)
            if all(x.sign != 0 for x in lam):
                return lam
    raise ValueError("support is not a minimal dependence")


def check_circuit_axioms(circuits) -> Report:
    """Verify the circuit description of an RT-matroid on a finite set.

    Checks: no zero vector; normalization of every representative (the
    scaling axiom is then structural); incomparable supports between
    distinct classes; valuated elimination between every matched
    rescaling pair; and reports the largest subset containing no circuit
    support, which is the rank witness for the finite-rank axiom.
    """
    circuits = tuple(circuits)
    violations: list[dict] = []
    if not circuits:
        return Report(ok=True, info={"max_independent": None})
    m = len(circuits[0])

    for i, c in enumerate(circuits):
        if not c.support:
            violations.append({"axiom": "C0", "circuit": i})
        lead = c.entries[c.support[0]] if c.support else None
        if lead is not None and lead != RT(1, 0):
            violations.append({"axiom": "C1", "circuit": i})

    for i, j in itertools.combinations(range(len(circuits)), 2):
        si, sj = set(circuits[i].support), set(circuits[j].support)
        if si <= sj or sj <= si:
            if circuits[i].entries != circuits[j].entries:
                violations.append({"axiom": "C2", "pair": [i, j]})

    for i, j in itertools.permutations(range(len(circuits)), 2):
        a, b = circuits[i], circuits[j]
        for e in sorted(set(a.support) & set(b.support)):
            beta = hyper_div(hyper_neg(a.entries[e]), b.entries[e])
            cprime = b.scaled(beta)
            for f in range(m):
                if a.entries[f].val < cprime[f].val:
                    if not _eliminate(circuits, a.entries, cprime, e, f):
                        violations.append(
                            {"axiom": "C3", "pair": [i, j], "e": e, "f": f}
                        )

    max_ind = _max_independent(m, [c.support for c in circuits])
    return Report(
        ok=not violations,
        violations=tuple(violations),
        info={"max_independent": max_ind},
    )


def _eliminate(circuits, A, Cp, e: int, f: int) -> bool:
    for d in circuits:
        if d.entries[e].sign != 0 or d.entries[f].sign == 0:
            continue
        gamma = hyper_div(A[f], d.entries[f])
        cand = d.scaled(gamma)
        if all(_elim_entry_ok(cand[g], A[g], Cp[g]) for g in range(len(A))):
            return True
    return False


def _elim_entry_ok(cg: RT, ag: RT, bg: RT) -> bool:
    comp = ag if ag.val <= bg.val else bg
    if cg.val > comp.val:
        return True
    return hyperset_contains(hyper_add(ag, bg), cg)


def _max_independent(m: int, supports) -> int:
    masks = [sum(1 << e for e in s) for s in supports]
    best = 0
    for subset in range(1 << m):
        size = subset.bit_count()
        if size <= best:
            continue
        if all(mask & subset != mask for mask in masks):
            best = size
    return best


# ---------------------------------------------------------------------------
# Cocircuits


def cocircuits_from_gp(
    gp: GrassmannPlucker, cap: int = DEFAULT_PAIR_CAP
) -> tuple[SignVector, ...]:
    """Sign vectors e -> sgn phi(mu, e) over all (rank-1)-subsets mu,
    closed under negation, with zero vectors removed."""
    if gp.hyperfield not in ("S", "RT"):
        raise ValueError("cocircuits need a sign or real tropical chirotope")
    m, r = len(gp), gp.rank
    count = _ncr(m, r - 1)
    if count > cap:
        raise EnumerationCapError(count, cap, "cocircuit enumeration")
    seen: set[SignVector] = set()
    for mu in itertools.combinations(range(m), r - 1):
        entries = []
        for e in range(m):
            v = gp.value_on(mu + (e,))
            entries.append(v if isinstance(v, int) else v.sign)
        X = tuple(entries)
        if any(X):
            seen.add(X)
            seen.add(tuple(-x for x in X))
    return tuple(sorted(seen))


def rt_cocircuits_from_gp(
    gp: GrassmannPlucker, cap: int = DEFAULT_PAIR_CAP
) -> tuple[SignedCircuit, ...]:
    """Normalized RT cocircuit vectors of a real tropical chirotope."""
    if gp.hyperfield != "RT":
        raise ValueError("expected a real tropical chirotope")
    m, r = len(gp), gp.rank
    count = _ncr(m, r - 1)
    if count > cap:
        raise EnumerationCapError(count, cap, "cocircuit enumeration")
    seen = {}
    for mu in itertools.combinations(range(m), r - 1):
        entries = tuple(gp.value_on(mu + (e,)) for e in range(m))
        if any(x.sign != 0 for x in entries):
            c = SignedCircuit(entries)
            seen[c.entries] = c
    return tuple(seen[k] for k in sorted(seen, key=_rt_vec_key))


def _rt_vec_key(entries):
    return tuple((x.sign, x.val) for x in entries)


# ---------------------------------------------------------------------------
# Covectors


def compose_sv(X: SignVector, Y: SignVector) -> SignVector:
    return tuple(x if x != 0 else y for x, y in zip(X, Y))


def leq_sv(X: SignVector, Y: SignVector) -> bool:
    """X below Y: Y keeps every sign of X and may fill in zeros."""
    return all(x == 0 or x == y for x, y in zip(X, Y))


def separation_set(X: SignVector, Y: SignVector) -> tuple[int, ...]:
    return tuple(e for e, (x, y) in enumerate(zip(X, Y)) if x != 0 and x == -y)


@dataclass(frozen=True)
class CovectorPoset:
    """Composition-closed set of sign vectors with covering relations."""

    vectors: tuple[SignVector, ...]
    covers: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, X: SignVector) -> bool:
        return X in self._index

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_index_cache")
        if idx is None:
            idx = {v: i for i, v in enumerate(self.vectors)}
            self.__dict__["_index_cache"] = idx
        return idx

    @property
    def width(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0

    def nonzero(self) -> tuple[SignVector, ...]:
        return tuple(v for v in self.vectors if any(v))

    def chains(self) -> tuple[tuple[int, ...], ...]:
        """Every nonempty chain of nonzero covectors, as index tuples."""
        nz = [i for i, v in enumerate(self.vectors) if any(v)]
        above = {
            i: [j for j in nz if j != i and leq_sv(self.vectors[i], self.vectors[j])]
            for i in nz
        }
        out: list[tuple[int, ...]] = []

        def grow(chain: list[int]):
            out.append(tuple(chain))
            for j in above[chain[-1]]:
                chain.append(j)
                grow(chain)
                chain.pop()

        for i in nz:
            grow([i])
        return tuple(sorted(out, key=lambda c: (len(c), c)))

    def max_chain_length(self) -> int:
        return max((len(c) for c in self.chains()), default=0)


def covector_closure(
    cocircuits, cap: int = DEFAULT_CLOSURE_CAP
) -> CovectorPoset:
    """Smallest composition-closed set containing zero and the cocircuits."""
    cocircuits = [tuple(c) for c in cocircuits]
    if cocircuits:
        width = len(cocircuits[0])
        zero = (0,) * width
    else:
        zero = ()
    current: set[SignVector] = {zero} | set(cocircuits)
    frontier = list(current)
    while frontier:
        fresh = []
        for X in frontier:
            for Y in list(current):
                for Z in (compose_sv(X, Y), compose_sv(Y, X)):
                    if Z not in current:
                        current.add(Z)
                        fresh.append(Z)
                        if len(current) > cap:
                            raise EnumerationCapError(len(current), cap, "covector closure")
        frontier = fresh
    vectors = tuple(sorted(current))
    covers = _covering_relations(vectors)
    return CovectorPoset(vectors, covers)


def _covering_relations(vectors) -> tuple[tuple[int, int], ...]:
    n = len(vectors)
    less = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and leq_sv(vectors[i], vectors[j]) and vectors[i] != vectors[j]:
                less[i][j] = True
    covers = []
    for i in range(n):
        for j in range(n):
            if less[i][j] and not any(less[i][k] and less[k][j] for k in range(n)):
                covers.append((i, j))
    return tuple(covers)


def check_covector_axioms(poset) -> Report:
    """Symmetry, composition closure, and elimination for a covector set."""
    vectors = poset.vectors if isinstance(poset, CovectorPoset) else tuple(poset)
    vecset = set(vectors)
    violations: list[dict] = []
    if not vectors:
        return Report(ok=False, violations=({"axiom": "Cov1"},))
    width = len(vectors[0])
    zero = (0,) * width
    if zero not in vecset:
        violations.append({"axiom": "Cov1"})
    for X in vectors:
        if tuple(-x for x in X) not in vecset:
            violations.append({"axiom": "Cov2", "vector": _sv_str(X)})
    for X in vectors:
        for Y in vectors:
            if compose_sv(X, Y) not in vecset:
                violations.append(
                    {"axiom": "Cov3", "pair": [_sv_str(X), _sv_str(Y)]}
                )
    # The elimination witness is pinned down coordinatewise, so index the
    # vectors by (coordinate, value) and intersect; T = X o Y agrees with
    # Y o X away from the separation set, so unordered pairs suffice.
    by_val: dict[tuple[int, int], set[int]] = {}
    for i, v in enumerate(vectors):
        for g, x in enumerate(v):
            by_val.setdefault((g, x), set()).add(i)
    empty: set[int] = set()
    n = len(vectors)
    for xi in range(n):
        X = vectors[xi]
        for yi in range(xi + 1, n):
            Y = vectors[yi]
            sep = separation_set(X, Y)
            if not sep:
                continue
            T = compose_sv(X, Y)
            sepset = set(sep)
            needed = sorted(
                (by_val.get((g, T[g]), empty) for g in range(width) if g not in sepset),
                key=len,
            )
            for e in sep:
                cands = by_val.get((e, 0), empty)
                for req in needed:
                    cands = cands & req
                    if not cands:
                        break
                if not cands:
                    violations.append(
                        {"axiom": "Cov4", "pair": [_sv_str(X), _sv_str(Y)], "e": e}
                    )
    return Report(ok=not violations, violations=tuple(violations))


def covector_zero_flat(X: SignVector, underlying) -> tuple[int, ...]:
    """Zero set of a covector, certified to be a flat of the underlying matroid."""
    if isinstance(underlying, GrassmannPlucker):
        underlying = UnderlyingMatroid.from_gp(underlying)
    zset = tuple(e for e, x in enumerate(X) if x == 0)
    if not underlying.is_flat(zset):
        raise ValueError(f"zero set {zset} is not a flat; not a covector")
    return zset


_SV_CHARS = {1: "+", 0: "0", -1: "-"}
_SV_VALUES = {"+": 1, "0": 0, "-": -1}


def _sv_str(X: SignVector) -> str:
    return "".join(_SV_CHARS[x] for x in X)


def sign_vector_str(X: SignVector) -> str:
    return _sv_str(X)


def parse_sign_vector(s: str) -> SignVector:
    try:
        return tuple(_SV_VALUES[ch] for ch in s.strip())
    except KeyError as exc:
        raise ValueError(f"bad sign vector {s!r}") from exc
