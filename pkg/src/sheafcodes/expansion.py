"""Spectral expansion of weighted graphs, skeleton expansion of related
weighted hypergraphs, no-intersection graphs/hypergraphs of posets, and
intersection profiles.

The eigensolver is the only non-exact computation in the package: it runs on
the symmetrized adjacency operator in floating point with a 1e-9 residual
check.  Everything else is exact rational arithmetic.
"""

import random
from fractions import Fraction
from itertools import combinations

import numpy as np

BETA_GRID = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1),
             Fraction(2), Fraction(4))

EIG_TOL = 1e-9


class WeightedGraph:
    """Multigraph with positive rational vertex weights and weighted edges.
    Edges are (u, v, weight, tag) with u != v; tags keep multi-edges distinct."""

    def __init__(self, vertex_weights, edges):
        self.vw = dict(vertex_weights)
        self.edges = []
        for idx, e in enumerate(edges):
            if len(e) == 4:
                u, v, w, tag = e
            else:
                u, v, w = e
                tag = idx
            if u == v:
                raise ValueError("loops are not allowed")
            if u not in self.vw or v not in self.vw:
                raise ValueError("edge endpoint is not a vertex")
            self.edges.append((u, v, w, tag))
        self.vertices = sorted(self.vw, key=repr)

    def vertex_weight_total(self):
        return sum(self.vw.values())

    def edge_weight_total(self):
        return sum(w for _, _, w, _ in self.edges)

    def edge_mass_within(self, A):
        "w(E(A)): total weight of edges with both endpoints in A."
        A = set(A)
        return sum((w for u, v, w, _ in self.edges if u in A and v in A),
                   Fraction(0))

    def as_related_hypergraph(self):
        "View as a related hypergraph with the standard relation."
        hyper = [(tag, (u, v), w) for u, v, w, tag in self.edges]
        rel = {frozenset((u, v)) for u, v, _, _ in self.edges}
        return RelatedHypergraph(self.vw, hyper, rel)


class RelatedHypergraph:
    """Weighted hypergraph plus a symmetric relation on its vertices;
    related vertices must share a hyperedge."""

    def __init__(self, vertex_weights, hyperedges, related):
        self.vw = dict(vertex_weights)
        self.hyperedges = []
        for tag, verts, w in hyperedges:
            verts = tuple(sorted(set(verts), key=repr))
            for v in verts:
                if v not in self.vw:
                    raise ValueError("hyperedge vertex is not a vertex")
            self.hyperedges.append((tag, verts, w))
        self.related = {frozenset(p) for p in related}
        for p in self.related:
            if len(p) != 2:
                raise ValueError("relation must pair distinct vertices")
            u, v = tuple(p)
            if not any(u in verts and v in verts for _, verts, _ in self.hyperedges):
                raise ValueError(f"related pair {p} shares no hyperedge")
        self.vertices = sorted(self.vw, key=repr)

    def e2_mass(self, A):
        "w(E_2(A)): weight of hyperedges holding a related pair inside A."
        A = set(A)
        total = Fraction(0)
        for _, verts, w in self.hyperedges:
            inside = [v for v in verts if v in A]
            if len(inside) >= 2 and any(
                    frozenset((u, v)) in self.related
                    for u, v in combinations(inside, 2)):
                total += w
        return total


def underlying_graph(X, w):
    "ugr(X, w): vertices X(0), edges X(1); requires every 1-face to have 2 vertices."
    vw = {v: w[v] for v in X.faces(0)}
    edges = []
    for e in X.faces(1):
        vs = X.below(e, 0)
        if len(vs) != 2:
            raise ValueError(f"1-face {e!r} does not have exactly two vertices")
        edges.append((vs[0], vs[1], w[e], e))
    return WeightedGraph(vw, edges)


def underlying_hypergraph(X, w):
    "X(0) and X(1) as a related hypergraph with the standard relation."
    vw = {v: w[v] for v in X.faces(0)}
    hyper = [(e, tuple(X.below(e, 0)), w[e]) for e in X.faces(1)]
    rel = set()
    for e, verts, _ in hyper:
        for u, v in combinations(verts, 2):
            rel.add(frozenset((u, v)))
    return RelatedHypergraph(vw, hyper, rel)


def adjacency_operator(G):
    "The weighted adjacency matrix of A f(v) = sum_e w(e)/(2 w(v)) f(e - v)."
    n = len(G.vertices)
    idx = {v: i for i, v in enumerate(G.vertices)}
    A = np.zeros((n, n))
    for u, v, w, _ in G.edges:
        A[idx[u], idx[v]] += float(w) / (2 * float(G.vw[u]))
        A[idx[v], idx[u]] += float(w) / (2 * float(G.vw[v]))
    return A


def second_eigenvalue(G):
    """Largest eigenvalue of the adjacency operator on the complement of the
    constants (the second-largest overall for proper weights)."""
    n = len(G.vertices)
    if n < 2:
        raise ValueError("need at least two vertices")
    wv = np.array([float(G.vw[v]) for v in G.vertices])
    if np.any(wv <= 0):
        raise ValueError("vertex weights must be positive")
    A = adjacency_operator(G)
    # symmetrize: D^(1/2) A D^(-1/2) is symmetric when w is proper
    s = np.sqrt(wv)
    B = (A * s[:, None]) / s[None, :]
    B = (B + B.T) / 2
    evals, evecs = np.linalg.eigh(B)
    lam = float(evals[-2])
    resid = np.linalg.norm(B @ evecs[:, -2] - lam * evecs[:, -2])
    if resid > EIG_TOL:
        raise ArithmeticError(f"eigensolver residual {resid} exceeds tolerance")
    return lam


def is_lambda_expander(G, lam, slack=EIG_TOL):
    "All eigenvalues on the complement of the constants lie in [-1, lam]."
    return second_eigenvalue(G) <= lam + slack


def skeleton_check(H, alpha, beta, max_exhaustive=24, samples=4096, seed=0):
    """Whether w(E_2(A)) <= alpha*w(A) + beta*w(A)^2 for all A.

    Exhaustive when the vertex count is at most max_exhaustive (hard cap 24);
    otherwise checks `samples` random subsets and reports sampled=True.
    Returns (passed, witness_A_or_None, sampled)."""
    if isinstance(H, WeightedGraph):
        H = H.as_related_hypergraph()
    verts = H.vertices
    n = len(verts)
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if n <= min(max_exhaustive, 24):
        for mask in range(1, 1 << n):
            A = [verts[i] for i in range(n) if mask >> i & 1]
            wA = sum((H.vw[v] for v in A), Fraction(0))
            if H.e2_mass(A) > alpha * wA + beta * wA * wA:
                return False, A, False
        return True, None, False
    rng = random.Random(seed)
    for _ in range(samples):
        A = [v for v in verts if rng.random() < 0.5]
        if not A:
            continue
        wA = sum((H.vw[v] for v in A), Fraction(0))
        if H.e2_mass(A) > alpha * wA + beta * wA * wA:
            return False, A, True
    return True, None, True


def skeleton_frontier(H, beta_grid=BETA_GRID, max_exhaustive=24):
    """For each beta on the grid, the least alpha making H an
    (alpha, beta)-skeleton expander, by exhaustive subset enumeration.
    Returns a list of (beta, alpha) pairs."""
    if isinstance(H, WeightedGraph):
        H = H.as_related_hypergraph()
    verts = H.vertices
    n = len(verts)
    if n > min(max_exhaustive, 24):
        raise ValueError("frontier requires exhaustive mode")
    needs = []  # (wA, e2) per nonempty subset
    for mask in range(1, 1 << n):
        A = [verts[i] for i in range(n) if mask >> i & 1]
        wA = sum((H.vw[v] for v in A), Fraction(0))
        needs.append((wA, H.e2_mass(A)))
    out = []
    for beta in beta_grid:
        beta = Fraction(beta)
        alpha = max((e2 - beta * wA * wA) / wA for wA, e2 in needs)
        out.append((beta, max(alpha, Fraction(0))))
    return out


def _inf_is_empty_face(X, x, y):
    return X.inf_set(x, y) == [X.empty]


def build_nni(X, w, i, j, k):
    """NNI^{i,j,k}(X, w): the no-intersection multigraph.  Edges are
    (z, {x, y}) with x an i-face, y a j-face, both below the k-face z,
    distinct, and with infimum exactly the empty face."""
    if not (0 <= i < k and 0 <= j < k and k <= X.d):
        raise ValueError("need 0 <= i,j < k <= d")
    verts = set(X.faces(i)) | set(X.faces(j))
    half = i != j
    vw = {x: (w[x] / 2 if half else w[x]) for x in verts}
    edges = []
    for z in X.faces(k):
        xs = X.below(z, i)
        ys = X.below(z, j)
        seen = set()
        for x in xs:
            for y in ys:
                if x == y:
                    continue
                key = frozenset((x, y))
                if i == j and key in seen:
                    continue
                seen.add(key)
                if _inf_is_empty_face(X, x, y):
                    edges.append((x, y, w[z], (z, key)))
    return WeightedGraph(vw, edges)


def build_ni(X, w, i, j, k):
    "NI^{i,j,k}(X, w): the no-intersection related hypergraph."
    if not (0 <= i < k and 0 <= j < k and k <= X.d):
        raise ValueError("need 0 <= i,j < k <= d")
    verts = set(X.faces(i)) | set(X.faces(j))
    half = i != j
    vw = {x: (w[x] / 2 if half else w[x]) for x in verts}
    hyper = []
    rel = set()
    for z in X.faces(k):
        members = sorted(set(X.below(z, i)) | set(X.below(z, j)), key=repr)
        hyper.append((z, tuple(members), w[z]))
        for x in X.below(z, i):
            for y in X.below(z, j):
                if x != y and _inf_is_empty_face(X, x, y):
                    rel.add(frozenset((x, y)))
    return RelatedHypergraph(vw, hyper, rel)


def build_nni_link(X, w, z, i, j, k):
    "NNI^{i,j,k}_z(X, w) = NNI^{i-b-1,j-b-1,k-b-1}(X_z, w_z), b = dim z."
    from .poset import link_weight
    b = X.dim(z)
    if not (b < i and b < j):
        raise ValueError("link dimensions out of range")
    L = X.link(z)
    wz = link_weight(X, w, z)
    return build_nni(L, wz, i - b - 1, j - b - 1, k - b - 1)


def build_ni_link(X, w, z, i, j, k):
    from .poset import link_weight
    b = X.dim(z)
    if not (b < i and b < j):
        raise ValueError("link dimensions out of range")
    L = X.link(z)
    wz = link_weight(X, w, z)
    return build_ni(L, wz, i - b - 1, j - b - 1, k - b - 1)


def nni_to_ni_map(G):
    "The covering map: identity on vertices, edge (z, {x,y}) -> hyperedge z."
    return {tag: tag[0] for _, _, _, tag in G.edges}


# --- intersection profiles ---

class Profile:
    """An abstract k-intersection profile: quadruples (t, l, r, b) with
    k+1 >= t > l >= r > b >= -1, plus the derived admissible pair set."""

    def __init__(self, k, quads, strict=True):
        self.k = k
        self.quads = frozenset(tuple(q) for q in quads)
        for t, l, r, b in self.quads:
            if not (k + 1 >= t > l >= r > b >= -1):
                raise ValueError(f"illegal quadruple {(t, l, r, b)}")
        ad = {(k + 1, k)} | {(i, -1) for i in range(0, k + 2)}
        for t, l, r, b in self.quads:
            ad |= {(t, l), (t, r), (l, b), (r, b)}
        self.ad = frozenset(ad)
        if strict:
            self._check_axioms()

    def _check_axioms(self):
        for (t, l) in self.ad:
            for (t2, r) in self.ad:
                if t2 != t:
                    continue
                if t > l >= r > -1:
                    if not any(q[0] == t and q[1] == l and q[2] == r
                               for q in self.quads):
                        raise ValueError(
                            f"missing quadruple (t,l,r,*) for t={t}, l={l}, r={r}")
                if t > l > r >= -1 and (l, r) not in self.ad:
                    raise ValueError(f"admissible closure fails: ({l},{r})")

    def admissible_pairs(self):
        return self.ad

    def __eq__(self, other):
        return isinstance(other, Profile) and (self.k, self.quads) == \
            (other.k, other.quads)

    def __hash__(self):
        return hash((self.k, self.quads))

    def __repr__(self):
        return f"Profile(k={self.k}, {sorted(self.quads)})"


def validate_profile(P, X):
    """Whether the abstract profile P is an intersection profile for X.
    Returns (True, None) or (False, witness) with witness = (x, y, z, u)."""
    ad = P.admissible_pairs()
    dim_pairs = {}
    for x in X.all_faces():
        dx = X.dim(x)
        for y in X.below(x):
            if (dx, X.dim(y)) in ad:
                dim_pairs.setdefault(x, []).append(y)
    for x, ys in dim_pairs.items():
        dx = X.dim(x)
        for y in ys:
            for z in ys:
                if X.dim(y) < X.dim(z) or (y == z):
                    continue
                if X.leq(z, y):
                    continue
                for u in X.inf_set(y, z):
                    if (dx, X.dim(y), X.dim(z), X.dim(u)) not in P.quads:
                        return False, (x, y, z, u)
    return True, None


def triangle_profile(k):
    "P^(k)_triangle = {(i+1, i, i, i-1): 0 <= i <= k}."
    return Profile(k, [(i + 1, i, i, i - 1) for i in range(k + 1)])


def cube_profile(k):
    "P^(k)_square = P^(k)_triangle + {(i+1, i, i, -1): 1 <= i <= k}."
    quads = [(i + 1, i, i, i - 1) for i in range(k + 1)]
    quads += [(i + 1, i, i, -1) for i in range(1, k + 1)]
    return Profile(k, quads)


def max_profile(k):
    "All legal quadruples."
    quads = [(t, l, r, b)
             for t in range(0, k + 2)
             for l in range(-1, t)
             for r in range(-1, l + 1)
             for b in range(-1, r)]
    return Profile(k, quads)


def universal_profile(k):
    "P^(k-1)_max plus {(k+1, k, k, i): -1 <= i <= k-1}; profile for every poset."
    quads = set()
    if k >= 1:
        quads |= max_profile(k - 1).quads
    quads |= {(k + 1, k, k, i) for i in range(-1, k)}
    return Profile(k, quads)


def zero_profile():
    "The unique abstract 0-intersection profile {(1,0,0,-1)}."
    return Profile(0, [(1, 0, 0, -1)])


def one_profile():
    return Profile(1, [(2, 1, 1, 0), (2, 1, 1, -1), (1, 0, 0, -1)])


def minimal_profile(X, k):
    """The minimal k-intersection profile for X, built by the iterative
    infimum-closure construction."""
    quads = set()
    ad = {(k + 1, k)} | {(i, -1) for i in range(0, k + 2)}
    for i in range(k + 1, -1, -1):
        for x in X.faces(i):
            dx = i
            candidates = [y for y in X.below(x) if (dx, X.dim(y)) in ad]
            for y in candidates:
                for z in candidates:
                    if y == z or X.dim(y) < X.dim(z):
                        continue
                    if X.leq(z, y):
                        ad.add((X.dim(y), X.dim(z)))
                        continue
                    for u in X.inf_set(y, z):
                        ad.add((X.dim(y), X.dim(u)))
                        ad.add((X.dim(z), X.dim(u)))
                        quads.add((dx, X.dim(y), X.dim(z), X.dim(u)))
    return Profile(k, quads, strict=False)


def builtin_profiles(k):
    "Named profiles available to the CLI and tests."
    out = {
        "triangle": triangle_profile(k),
        "cube": cube_profile(k),
        "max": max_profile(k),
        "universal": universal_profile(k),
    }
    if k == 0:
        out["zero"] = zero_profile()
    if k == 1:
        out["one"] = one_profile()
    return out
