"""Exact Gromov-Hausdorff distance between finite metric spaces.

Distances are half the minimal distortion over correspondences.  Three
independent routes compute that minimum:

* ``"bnb"``: branch and bound over relations built from one partner per
  point of the larger space plus one partner per still-uncovered point of the
  smaller one.  Every correspondence contains such a relation and distortion
  only grows with inclusion, so the minimum is unchanged.
* ``"blocks"``: exhaustive enumeration of matched partition pairs in which
  every matched pair of blocks has a singleton side (the shape of every
  irreducible correspondence).
* ``"full"``: every subset of X x Y that projects onto both factors.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    BadBlockCount,
    CardinalityMismatch,
    EmptyRelation,
    NotACorrespondence,
    TooLarge,
    TooFewPoints,
)
from .metric import FiniteMetricSpace, diameter, random_space

log = logging.getLogger(__name__)

GAP_THRESHOLD = 1e-6
FULL_ENUM_MAX_PAIRS = 20


@dataclass(frozen=True)
class Correspondence:
    """A relation between X and Y given as (x, y) index pairs.

    With ``kind="correspondence"`` both projections must be onto; with
    ``kind="relation"`` any nonempty pair set is accepted.
    """

    X: FiniteMetricSpace
    Y: FiniteMetricSpace
    pairs: frozenset
    kind: str = "correspondence"

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((int(x), int(y)) for x, y in self.pairs))
        if not self.pairs:
            raise EmptyRelation("relation has no pairs")
        for x, y in self.pairs:
            if not (0 <= x < self.X.n and 0 <= y < self.Y.n):
                raise IndexError(f"pair {(x, y)} out of range")
        if self.kind == "correspondence" and not _covers(self.pairs, self.X.n, self.Y.n):
            raise NotACorrespondence("relation does not project onto both spaces")

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)


def _covers(pairs, nx: int, ny: int) -> bool:
    return len({x for x, _ in pairs}) == nx and len({y for _, y in pairs}) == ny


@dataclass(frozen=True)
class Partition:
    """Blocks of point indices, stored in canonical order (by least element)."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if any(not b for b in blocks):
            raise ValueError("partition blocks must be nonempty")
        seen = [i for b in blocks for i in b]
        if len(seen) != len(set(seen)):
            raise ValueError("partition blocks overlap")
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def check_covers(self, n: int) -> None:
        if sorted(i for b in self.blocks for i in b) != list(range(n)):
            raise ValueError(f"partition does not cover 0..{n - 1}")

    def canonical(self) -> "Partition":
        return Partition(tuple(sorted(self.blocks)))

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True)
class BlockCorrespondence:
    """Block i of ``left`` is matched with block i of ``right``."""

    left: Partition
    right: Partition

    def __post_init__(self):
        if self.left.k != self.right.k:
            raise ValueError("matched partitions need equal block counts")

    def pairs(self) -> list[tuple[int, int]]:
        return sorted((x, y) for bx, by in zip(self.left.blocks, self.right.blocks)
                      for x in bx for y in by)

    def expansion(self, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Correspondence:
        self.left.check_covers(X.n)
        self.right.check_covers(Y.n)
        return Correspondence(X, Y, frozenset(self.pairs()))

    def singleton_sided(self) -> bool:
        return all(len(a) == 1 or len(b) == 1 for a, b in zip(self.left.blocks, self.right.blocks))


# ---------------------------------------------------------------------------
# distortion and relation predicates


def _pair_distortion(dx: np.ndarray, dy: np.ndarray, pairs) -> float:
    xs = np.array([p[0] for p in pairs])
    ys = np.array([p[1] for p in pairs])
    return float(np.abs(dx[np.ix_(xs, xs)] - dy[np.ix_(ys, ys)]).max())


def distortion(R: Correspondence) -> float:
    if not R.pairs:
        raise EmptyRelation("distortion of an empty relation")
    return _pair_distortion(R.X.matrix, R.Y.matrix, R.sorted_pairs())


def is_correspondence(R: Correspondence) -> bool:
    return bool(R.pairs) and _covers(R.pairs, R.X.n, R.Y.n)


def is_irreducible(R: Correspondence) -> bool:
    """True iff no single pair can be dropped while keeping a correspondence."""
    if not is_correspondence(R):
        return False
    deg_x: dict[int, int] = {}
    deg_y: dict[int, int] = {}
    for x, y in R.pairs:
        deg_x[x] = deg_x.get(x, 0) + 1
        deg_y[y] = deg_y.get(y, 0) + 1
    # (x, y) is removable iff both endpoints keep another partner
    return all(deg_x[x] == 1 or deg_y[y] == 1 for x, y in R.pairs)


def reduce_to_irreducible(pairs, nx: int, ny: int) -> list[tuple[int, int]]:
    """Drop pairs greedily (in sorted order) until the correspondence is irreducible."""
    kept = sorted(set(pairs))
    deg_x = [0] * nx
    deg_y = [0] * ny
    for x, y in kept:
        deg_x[x] += 1
        deg_y[y] += 1
    out = []
    for x, y in kept:
        if deg_x[x] > 1 and deg_y[y] > 1:
            deg_x[x] -= 1
            deg_y[y] -= 1
        else:
            out.append((x, y))
    return out


def blocks_from_pairs(pairs, nx: int, ny: int) -> BlockCorrespondence:
    """Group an irreducible correspondence into matched blocks (connected components)."""
    pairs = sorted(set(pairs))
    parent = list(range(nx + ny))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, y in pairs:
        ra, rb = find(x), find(nx + y)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    comps: dict[int, tuple[list, list]] = {}
    for x in range(nx):
        comps.setdefault(find(x), ([], []))[0].append(x)
    for y in range(ny):
        comps.setdefault(find(nx + y), ([], []))[1].append(y)
    groups = sorted(comps.values(), key=lambda g: (g[0][0] if g[0] else nx, g[1][0] if g[1] else ny))
    left = Partition(tuple(tuple(g[0]) for g in groups))
    right = Partition(tuple(tuple(g[1]) for g in groups))
    return BlockCorrespondence(left, right)


# ---------------------------------------------------------------------------
# partitions


def enumerate_partitions(n: int, k: int) -> Iterator[Partition]:
    """All partitions of {0..n-1} into k nonempty blocks, in restricted-growth order."""
    if not 1 <= k <= n:
        raise BadBlockCount(f"need 1 <= k <= n, got k={k}, n={n}")
    rgs = [0] * n

    def rec(i, used):
        if i == n:
            if used == k:
                blocks = [[] for _ in range(k)]
                for point, b in enumerate(rgs):
                    blocks[b].append(point)
                yield Partition(tuple(tuple(b) for b in blocks))
            return
        # not enough points left to open the missing blocks
        if n - i < k - used:
            return
        for b in range(min(used + 1, k)):
            rgs[i] = b
            yield from rec(i + 1, max(used, b + 1))

    rgs[0] = 0
    yield from rec(1, 1)


def stirling2(n: int, k: int) -> int:
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1)) // math.factorial(k)


def partition_diameter(X: FiniteMetricSpace, D: Partition) -> float:
    m = X.matrix
    return max((float(m[np.ix_(b, b)].max()) for b in D.blocks), default=0.0)


def partition_alpha(X: FiniteMetricSpace, D: Partition) -> float:
    """Least distance between points of different blocks; +inf for one block."""
    m = X.matrix
    vals = [m[np.ix_(a, b)].min() for a, b in itertools.combinations(D.blocks, 2)]
    return float(min(vals)) if vals else math.inf


def partition_beta(X: FiniteMetricSpace, D: Partition) -> float:
    """Largest distance between points of different blocks; 0 for one block."""
    m = X.matrix
    vals = [m[np.ix_(a, b)].max() for a, b in itertools.combinations(D.blocks, 2)]
    return float(max(vals)) if vals else 0.0


def _block_tables(m: np.ndarray, blocks) -> tuple[np.ndarray, np.ndarray, float]:
    k = len(blocks)
    sup = np.full((k, k), -np.inf)
    inf = np.full((k, k), np.inf)
    for i in range(k):
        for j in range(i + 1, k):
            sub = m[np.ix_(blocks[i], blocks[j])]
            sup[i, j] = sup[j, i] = sub.max()
            inf[i, j] = inf[j, i] = sub.min()
    diam = max(float(m[np.ix_(b, b)].max()) for b in blocks)
    return sup, inf, diam


def block_distortion(X: FiniteMetricSpace, Y: FiniteMetricSpace, B: BlockCorrespondence) -> float:
    """Distortion of the expansion of B from block diameters and block-pair extremes."""
    sx, ix, dx = _block_tables(X.matrix, B.left.blocks)
    sy, iy, dy = _block_tables(Y.matrix, B.right.blocks)
    value = max(dx, dy)
    if B.left.k > 1:
        off = ~np.eye(B.left.k, dtype=bool)
        value = max(value, float((sx - iy)[off].max()), float((sy - ix)[off].max()))
    return value


def min_diameter_partition(X: FiniteMetricSpace, k: int) -> tuple[float, Partition | None]:
    """d_k(X): least possible largest block diameter over k-block partitions.

    Returns (inf, None) when k exceeds the number of points.
    """
    if k < 1:
        raise BadBlockCount(f"need k >= 1, got {k}")
    n = X.n
    if k > n:
        return math.inf, None
    m = X.matrix.tolist()
    best = [math.inf, None]
    blocks: list[list[int]] = []
    diams: list[float] = []

    def rec(i, cur):
        if cur >= best[0]:
            return
        if i == n:
            if len(blocks) == k:
                best[0] = cur
                best[1] = [list(b) for b in blocks]
            return
        if n - i < k - len(blocks):
            return
        # joining an existing block, cheapest first
        options = []
        for b, members in enumerate(blocks):
            grow = max(m[i][j] for j in members)
            options.append((max(diams[b], grow), b))
        options.sort()
        must_open = n - i == k - len(blocks)
        if not must_open:
            for nd, b in options:
                if max(cur, nd) >= best[0]:
                    break
                old = diams[b]
                blocks[b].append(i)
                diams[b] = nd
                rec(i + 1, max(cur, nd))
                blocks[b].pop()
                diams[b] = old
        if len(blocks) < k:
            blocks.append([i])
            diams.append(0.0)
            rec(i + 1, cur)
            blocks.pop()
            diams.pop()

    rec(0, 0.0)
    return best[0], Partition(tuple(tuple(b) for b in best[1])).canonical()


# ---------------------------------------------------------------------------
# exact solvers


def _twin_classes(d: np.ndarray) -> list[int]:
    """Class id per point; twins have identical distances to every other point."""
    n = d.shape[0]
    cls = list(range(n))
    for i in range(n):
        if cls[i] != i:
            continue
        for j in range(i + 1, n):
            if cls[j] != j:
                continue
            mask = np.ones(n, dtype=bool)
            mask[[i, j]] = False
            if np.array_equal(d[i, mask], d[j, mask]):
                cls[j] = i
    return cls


class _Stop(Exception):
    pass


def _bnb(dA: np.ndarray, dB: np.ndarray, ub: float, lb: float = 0.0, stats: dict | None = None):
    """Least distortion below ``ub`` of a relation covering both spaces.

    Points of A get one partner each (phase 1), then every point of B left
    uncovered gets one partner in A (phase 2).  Returns (value, pairs) with
    pairs oriented (a, b), or (ub, None) when nothing strictly below ub exists.
    """
    p, q = dA.shape[0], dB.shape[0]
    C = np.abs(dA[:, None, :, None] - dB[None, :, None, :])
    best = [ub, None]
    nodes = [0]

    b_cls = _twin_classes(dB)
    value_sym = any(c != i for i, c in enumerate(b_cls))
    a_cls = _twin_classes(dA) if not value_sym else list(range(p))
    a_twins = [[j for j in range(p) if j != i and a_cls[j] == a_cls[i]] for i in range(p)]
    b_earlier = [[j for j in range(i) if b_cls[j] == b_cls[i]] for i in range(q)]

    f = [-1] * p
    used = [0] * q

    def phase2(M, cur, uncovered, chosen):
        nodes[0] += 1
        if not uncovered:
            best[0] = cur
            best[1] = list(chosen)
            if cur <= lb:
                raise _Stop
            return
        bound = best[0]
        cols = M[:, uncovered] < bound
        counts = cols.sum(axis=0)
        if counts.min() == 0:
            return
        u = uncovered[int(np.argmin(counts))]
        rest = [v for v in uncovered if v != u]
        col = M[:, u]
        for a in sorted(np.nonzero(col < bound)[0].tolist(), key=lambda a: (col[a], a)):
            if col[a] >= best[0]:
                break
            chosen.append((a, u))
            phase2(np.maximum(M, C[a, u]), max(cur, col[a]), rest, chosen)
            chosen.pop()

    def phase1(M, cur, remaining):
        nodes[0] += 1
        bound = best[0]
        if not remaining:
            uncovered = [b for b in range(q) if not used[b]]
            phase2(M, cur, uncovered, [(a, f[a]) for a in range(p)])
            return
        allowed = M[remaining] < bound
        counts = allowed.sum(axis=1)
        if counts.min() == 0:
            return
        x = remaining[int(np.argmin(counts))]
        rest = [r for r in remaining if r != x]
        row = M[x]
        lo, hi = 0, q - 1
        for t in a_twins[x]:
            if f[t] >= 0:
                if t < x:
                    lo = max(lo, f[t])
                else:
                    hi = min(hi, f[t])
        cands = [y for y in np.nonzero(row < bound)[0].tolist() if lo <= y <= hi]
        if value_sym:
            cands = [y for y in cands if used[y] or not any(not used[j] for j in b_earlier[y])]
        cands.sort(key=lambda y: (row[y], y))
        for y in cands:
            if row[y] >= best[0]:
                break
            f[x] = y
            used[y] += 1
            phase1(np.maximum(M, C[x, y]), max(cur, row[y]), rest)
            used[y] -= 1
            f[x] = -1

    if ub > lb:
        try:
            phase1(np.zeros((p, q)), 0.0, list(range(p)))
        except _Stop:
            pass
    if stats is not None:
        stats["nodes"] = nodes[0]
    return best[0], best[1]


def _lower_bound(dX: np.ndarray, dY: np.ndarray) -> float:
    nx, ny = dX.shape[0], dY.shape[0]
    diam_x = float(dX.max()) if nx > 1 else 0.0
    diam_y = float(dY.max()) if ny > 1 else 0.0
    lb = abs(diam_x - diam_y)
    # two points of the larger space must share a partner
    if nx > ny:
        lb = max(lb, float(dX[np.triu_indices(nx, 1)].min()))
    elif ny > nx:
        lb = max(lb, float(dY[np.triu_indices(ny, 1)].min()))
    return lb


def _solve_bnb(X: FiniteMetricSpace, Y: FiniteMetricSpace, ub: float | None = None):
    dX, dY = X.matrix, Y.matrix
    swap = Y.n > X.n
    dA, dB = (dY, dX) if swap else (dX, dY)
    product = max(diameter(X), diameter(Y))
    start = product if ub is None else min(ub, product)
    value, pairs = _bnb(dA, dB, start, _lower_bound(dX, dY))
    if pairs is None:
        if ub is not None and ub <= product:
            return value, None
        pairs = [(a, b) for a in range(dA.shape[0]) for b in range(dB.shape[0])]
        value = product
    if swap:
        pairs = [(b, a) for a, b in pairs]
    return value, pairs


def _solve_blocks(X: FiniteMetricSpace, Y: FiniteMetricSpace):
    dX, dY = X.matrix, Y.matrix
    best, best_bc = math.inf, None
    for k in range(1, min(X.n, Y.n) + 1):
        perms = np.array(list(itertools.permutations(range(k))), dtype=int)
        off = ~np.eye(k, dtype=bool)
        lefts = [(P, _block_tables(dX, P.blocks)) for P in enumerate_partitions(X.n, k)]
        rights = [(Q, _block_tables(dY, Q.blocks)) for Q in enumerate_partitions(Y.n, k)]
        for P, (sx, ix, dmx) in lefts:
            single_x = np.array([len(b) == 1 for b in P.blocks])
            for Q, (sy, iy, dmy) in rights:
                single_y = np.array([len(b) == 1 for b in Q.blocks])
                ok = (single_x[None, :] | single_y[perms]).all(axis=1)
                if not ok.any():
                    continue
                ps = perms[ok]
                vals = np.full(len(ps), max(dmx, dmy))
                if k > 1:
                    sy_p = sy[ps[:, :, None], ps[:, None, :]]
                    iy_p = iy[ps[:, :, None], ps[:, None, :]]
                    t1 = np.where(off, sx[None] - iy_p, -np.inf).max(axis=(1, 2))
                    t2 = np.where(off, sy_p - ix[None], -np.inf).max(axis=(1, 2))
                    vals = np.maximum(vals, np.maximum(t1, t2))
                i = int(np.argmin(vals))
                if vals[i] < best:
                    best = float(vals[i])
                    right = Partition(tuple(Q.blocks[j] for j in ps[i]))
                    best_bc = BlockCorrespondence(P, right)
    return best, best_bc.pairs()


def _doubling_max(costs: np.ndarray) -> np.ndarray:
    """Array over bitmasks of len(costs) bits: max of costs over the set bits (0 when empty)."""
    out = np.zeros(1)
    for c in costs:
        out = np.concatenate([out, np.maximum(out, c)])
    return out


def _solve_full(X: FiniteMetricSpace, Y: FiniteMetricSpace):
    """Minimum over every correspondence, by enumerating subsets of X x Y.

    The rows of the larger space but one are tabulated as bitmasks; the
    subsets of the last row are then looped over and combined with the table.
    """
    swap = X.n < Y.n
    R, C = (Y, X) if swap else (X, Y)
    r, c = R.n, C.n
    table_pairs = [(x, y) for x in range(r - 1) for y in range(c)]
    m = len(table_pairs)
    if m > FULL_ENUM_MAX_PAIRS or c > 6:
        raise TooLarge(f"full enumeration needs 2^{m + c} subsets; "
                       f"limit is a 2^{FULL_ENUM_MAX_PAIRS} table times 2^6")
    dR, dC = R.matrix, C.matrix
    last = [(r - 1, y) for y in range(c)]
    every = table_pairs + last
    xs = np.array([p[0] for p in every])
    ys = np.array([p[1] for p in every])
    P = np.abs(dR[np.ix_(xs, xs)] - dC[np.ix_(ys, ys)])
    dis = np.zeros(1)
    lcov = np.zeros(1, dtype=np.int64)
    rcov = np.zeros(1, dtype=np.int64)
    for j, (x, y) in enumerate(table_pairs):
        row = _doubling_max(P[j, :j])
        dis = np.concatenate([dis, np.maximum(dis, row)])
        lcov = np.concatenate([lcov, lcov | (1 << x)])
        rcov = np.concatenate([rcov, rcov | (1 << y)])
    rows_ok = lcov == (1 << (r - 1)) - 1
    cross = [_doubling_max(P[m + k, :m]) for k in range(c)]
    best, best_mask, best_S = math.inf, -1, -1
    for S in range(1, 1 << c):
        bits = [k for k in range(c) if S >> k & 1]
        inner = max((P[m + a, m + b] for a in bits for b in bits), default=0.0)
        vals = np.maximum(dis, inner)
        for k in bits:
            vals = np.maximum(vals, cross[k])
        ok = rows_ok & ((rcov | S) == (1 << c) - 1)
        if not ok.any():
            continue
        masks = np.nonzero(ok)[0]
        i = int(masks[np.argmin(vals[masks])])
        if vals[i] < best:
            best, best_mask, best_S = float(vals[i]), i, S
    chosen = [table_pairs[b] for b in range(m) if best_mask >> b & 1]
    chosen += [last[k] for k in range(c) if best_S >> k & 1]
    if swap:
        chosen = [(y, x) for x, y in chosen]
    return best, chosen


_SOLVERS = {"bnb": _solve_bnb, "blocks": _solve_blocks, "full": _solve_full}


def gh_exact(X: FiniteMetricSpace, Y: FiniteMetricSpace, method: str = "bnb",
             return_witness: bool = False):
    """Gromov-Hausdorff distance, half the least distortion of a correspondence.

    With ``return_witness`` a (distance, BlockCorrespondence) pair is returned;
    the witness is irreducible and attains the distance.
    """
    try:
        solve = _SOLVERS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(_SOLVERS)}") from None
    value, pairs = solve(X, Y)
    value = float(value)
    if not return_witness:
        return value / 2
    bc = blocks_from_pairs(reduce_to_irreducible(pairs, X.n, Y.n), X.n, Y.n)
    return value / 2, bc


def gh_lower_bound(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    return _lower_bound(X.matrix, Y.matrix) / 2


def _bijection_table(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def gh_bijective(X: FiniteMetricSpace, Y: FiniteMetricSpace, return_perm: bool = False):
    """Half the least distortion over bijections X -> Y."""
    if X.n != Y.n:
        raise CardinalityMismatch(f"bijections need equal sizes, got {X.n} and {Y.n}")
    n = X.n
    if n > 10:
        raise TooLarge(f"{n}! bijections is too many")
    dX, dY = X.matrix, Y.matrix
    perms = _bijection_table(n)
    best, best_perm = math.inf, None
    for start in range(0, len(perms), 5040):
        chunk = perms[start:start + 5040]
        vals = np.abs(dX[None] - dY[chunk[:, :, None], chunk[:, None, :]]).max(axis=(1, 2)) \
            if n > 1 else np.zeros(len(chunk))
        i = int(np.argmin(vals))
        if vals[i] < best:
            best, best_perm = float(vals[i]), tuple(int(v) for v in chunk[i])
    if return_perm:
        return best / 2, best_perm
    return best / 2


def has_better_than(X: FiniteMetricSpace, Y: FiniteMetricSpace, dis_bound: float) -> bool:
    """Whether some correspondence has distortion strictly below ``dis_bound``."""
    _, pairs = _solve_bnb(X, Y, ub=dis_bound)
    return pairs is not None


# ---------------------------------------------------------------------------
# bijection-gap search


@dataclass(frozen=True)
class GapWitness:
    X: FiniteMetricSpace
    Y: FiniteMetricSpace
    exact: float
    bijective: float
    pairs: tuple[tuple[int, int], ...]
    trial: int = field(default=-1, compare=False)

    @property
    def gap(self) -> float:
        return self.bijective - self.exact

    def to_json(self) -> dict:
        return {
            "X": {"n": self.X.n, "rho": list(self.X.rho)},
            "Y": {"n": self.Y.n, "rho": list(self.Y.rho)},
            "exact": self.exact,
            "bijective": self.bijective,
            "gap": self.gap,
            "correspondence": [list(p) for p in self.pairs],
            "trial": self.trial,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GapWitness":
        return cls(
            FiniteMetricSpace(obj["X"]["n"], tuple(obj["X"]["rho"])),
            FiniteMetricSpace(obj["Y"]["n"], tuple(obj["Y"]["rho"])),
            float(obj["exact"]),
            float(obj["bijective"]),
            tuple(tuple(p) for p in obj["correspondence"]),
            int(obj.get("trial", -1)),
        )


def _check_gap(args) -> GapWitness | None:
    trial, X, Y, threshold = args
    bij = gh_bijective(X, Y)
    if not has_better_than(X, Y, 2 * (bij - threshold)):
        return None
    exact, bc = gh_exact(X, Y, return_witness=True)
    if bij - exact <= threshold:
        return None
    return GapWitness(X, Y, exact, bij, tuple(bc.pairs()), trial)


def bijection_gap_search(points: int, trials: int, seed: int,
                         dist_range: tuple[float, float] = (0.0, 1.0),
                         workers: int = 1, threshold: float = GAP_THRESHOLD) -> GapWitness | None:
    """Look for equal-size spaces whose distance is not attained by any bijection.

    Each trial draws X then Y from ``numpy.random.default_rng(seed)`` (PCG64).
    The first trial whose bijective distance exceeds the exact one by more than
    ``threshold`` is returned; the answer does not depend on ``workers``.
    """
    if points < 3:
        raise TooFewPoints("spaces with fewer than 3 points admit no bijection gap")
    rng = np.random.default_rng(seed)
    lo, hi = dist_range
    chunk = 64 if workers > 1 else 1
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        trial = 0
        while trial < trials:
            batch = []
            for _ in range(min(chunk, trials - trial)):
                X = random_space(points, rng, lo, hi)
                Y = random_space(points, rng, lo, hi)
                batch.append((trial, X, Y, threshold))
                trial += 1
            results = pool.map(_check_gap, batch) if pool else map(_check_gap, batch)
            for w in results:
                if w is not None:
                    log.info("gap witness at trial %d: gap %.3g", w.trial, w.gap)
                    return w
        return None
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)
