"""Solvable extensions of graph algebras, parametrized by subspaces of R^p.

A vector v in R^p determines the diagonal derivation
``diag(v_1..v_p, v_i + v_j per edge)`` of the graph algebra.  A subspace S of
dimension r extends the nilsoliton metric algebra by r commuting generators
acting by those derivations; the result is a solvsoliton, Einstein exactly
when S is spanned by the Einstein direction.

Subspaces are stored in reduced row echelon form, which makes equality
structural; two subspaces give isometric extensions iff a graph automorphism
carries one onto the other (pushforward action ``(sigma . v)_{sigma(i)} =
v_i``), so classification is a finite orbit problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import MetricLieAlgebra, graph_algebra, graph_ricci_diagonal
from .errors import (
    DimensionMismatch,
    MalformedLine,
    NotPositiveGraph,
    RankDeficientBasis,
    WeightingMismatch,
)
from .graphs import Graph, Permutation, automorphisms
from .positivity import Weighting
from .rational import ONE, ZERO, frac, parse_fraction, rref


@dataclass(frozen=True)
class SubspaceParam:
    """A subspace of R^p as its unique RREF basis (full row rank).

    Use :meth:`from_vectors` to build one from arbitrary spanning vectors;
    the direct constructor insists the rows already are a reduced echelon
    basis.
    """

    p: int
    basis: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.p < 1:
            raise DimensionMismatch("ambient dimension must be >= 1")
        if any(len(row) != self.p for row in self.basis):
            raise DimensionMismatch("basis vector length differs from p")
        if not self.basis:
            return
        reduced, pivots = rref([list(row) for row in self.basis])
        if len(pivots) < len(self.basis):
            raise RankDeficientBasis("basis rows are linearly dependent")
        if tuple(tuple(row) for row in reduced) != self.basis:
            raise ValueError("basis is not in reduced row echelon form; use from_vectors")

    @property
    def r(self) -> int:
        return len(self.basis)

    @classmethod
    def from_vectors(cls, p: int, vectors) -> "SubspaceParam":
        """Span of arbitrary vectors: reduces to RREF, dropping dependent rows."""
        vecs = [[frac(x) for x in v] for v in vectors]
        if any(len(v) != p for v in vecs):
            raise DimensionMismatch("vector length differs from p")
        if not vecs:
            return cls(p=p, basis=())
        reduced, pivots = rref(vecs)
        basis = tuple(tuple(row) for row in reduced[: len(pivots)])
        return cls(p=p, basis=basis)


def parse_subspace(text: str, p: int) -> list[list[Fraction]]:
    """Parse a subspace file: one vector per line, entries as integers or
    fractions separated by spaces; ``#`` comments and blank lines ignored.
    Returns the raw vectors (callers decide how strictly to reduce)."""
    vectors = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        entries = []
        for tok in line.split():
            try:
                entries.append(parse_fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise MalformedLine(f"line {lineno}: bad entry {tok!r}") from None
        if len(entries) != p:
            raise MalformedLine(f"line {lineno}: expected {p} entries, got {len(entries)}")
        vectors.append(entries)
    return vectors


def diagonal_derivation(g: Graph, v) -> list[list[Fraction]]:
    """The derivation ``diag(v_1..v_p, v_i + v_j per edge (i,j))`` of the
    graph algebra, as a dense (p+q) x (p+q) matrix."""
    vec = [frac(x) for x in v]
    if len(vec) != g.p:
        raise DimensionMismatch(f"vector has {len(vec)} entries for p = {g.p}")
    n = g.p + g.q
    m = [[ZERO] * n for _ in range(n)]
    for i in range(g.p):
        m[i][i] = vec[i]
    for k, (i, j) in enumerate(g.edges):
        m[g.p + k][g.p + k] = vec[i - 1] + vec[j - 1]
    return m


def _derivation_diag(g: Graph, v) -> list[Fraction]:
    vec = [frac(x) for x in v]
    return vec + [vec[i - 1] + vec[j - 1] for i, j in g.edges]


def einstein_direction(g: Graph, w: Weighting) -> tuple[Fraction, ...]:
    """The vertex vector v with diagonal derivation Ric - cI (c = -nu/2); its
    span is the unique line whose extension is Einstein."""
    if len(w.c) != g.q:
        raise WeightingMismatch(f"{len(w.c)} weights for {g.q} edges")
    ric = graph_ricci_diagonal(g, w)
    c = -w.nu / 2
    return tuple(ric[i] - c for i in range(g.p))


def build_solsoliton(g: Graph, w: Weighting, s: SubspaceParam) -> MetricLieAlgebra:
    """The rank-r solvable extension of the nilsoliton metric algebra.

    Basis: a_1..a_r (one per subspace basis vector), then the graph algebra
    basis.  Brackets: [a_i, x] = A_i x with A_i the diagonal derivation of
    row i; the a_i commute.  Inner product: the nilsoliton metric on the
    graph part, ``<a_i, a_j> = -(1/c) tr(A_i A_j)`` with c = -nu/2, and
    ``<a_i, graph part> = 0``.
    """
    if w is None:
        raise NotPositiveGraph("a positive weighting is required")
    if len(w.c) != g.q:
        raise WeightingMismatch(f"{len(w.c)} weights for {g.q} edges")
    if s.p != g.p:
        raise DimensionMismatch(f"subspace lives in R^{s.p}, graph has p = {g.p}")
    if s.r == 0:
        return graph_algebra(g, w)
    nil = g.p + g.q
    r = s.r
    n = r + nil
    diags = [_derivation_diag(g, row) for row in s.basis]
    labels = tuple(
        [f"a{i}" for i in range(1, r + 1)]
        + [f"v{i}" for i in range(1, g.p + 1)]
        + [f"e{k}" for k in range(1, g.q + 1)]
    )
    brackets = []
    for i in range(r):
        for u in range(nil):
            if diags[i][u] != 0:
                brackets.append((i, r + u, ((r + u, diags[i][u]),)))
    for k, (a, b) in enumerate(g.edges):
        brackets.append((r + a - 1, r + b - 1, ((r + g.p + k, ONE),)))
    c = -w.nu / 2
    gram = [[ZERO] * n for _ in range(n)]
    for i in range(r):
        for j in range(r):
            tr = sum((x * y for x, y in zip(diags[i], diags[j])), ZERO)
            gram[i][j] = -tr / c
    for u in range(g.p):
        gram[r + u][r + u] = ONE
    for k in range(g.q):
        gram[r + g.p + k][r + g.p + k] = w.c[k]
    return MetricLieAlgebra(
        n=n,
        labels=labels,
        brackets=tuple(brackets),
        gram=tuple(tuple(row) for row in gram),
    )


def apply_vertex_permutation(s: SubspaceParam, sigma: Permutation) -> SubspaceParam:
    """Pushforward of the subspace: ``(sigma . v)_{sigma(i)} = v_i``."""
    if sigma.n != s.p:
        raise DimensionMismatch("permutation size differs from ambient dimension")
    moved = []
    for row in s.basis:
        w = [ZERO] * s.p
        for i, val in enumerate(row, start=1):
            w[sigma(i) - 1] = val
        moved.append(w)
    return SubspaceParam.from_vectors(s.p, moved)


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    witness: Permutation | None = None


def subspace_equivalent(g: Graph, s1: SubspaceParam, s2: SubspaceParam) -> EquivalenceResult:
    """Do the two subspaces give isometric extensions?  True iff some graph
    automorphism pushes one onto the other.  Different dimensions simply give
    an inequivalent verdict.  The witness is the first automorphism in image
    order that works."""
    if s1.p != g.p or s2.p != g.p:
        raise DimensionMismatch("subspace ambient dimension differs from the graph")
    if s1.r != s2.r:
        return EquivalenceResult(equivalent=False)
    for sigma in automorphisms(g):
        if apply_vertex_permutation(s1, sigma).basis == s2.basis:
            return EquivalenceResult(equivalent=True, witness=sigma)
    return EquivalenceResult(equivalent=False)


def canonical_subspace(g: Graph, s: SubspaceParam) -> SubspaceParam:
    """Orbit representative: the lexicographically smallest (row-major) RREF
    basis over the automorphism orbit.  Constant on orbits, so two subspaces
    are equivalent iff their canonical forms are equal."""
    if s.p != g.p:
        raise DimensionMismatch("subspace ambient dimension differs from the graph")
    best = None
    for sigma in automorphisms(g):
        cand = apply_vertex_permutation(s, sigma).basis
        if best is None or cand < best:
            best = cand
    return SubspaceParam(p=s.p, basis=best)
