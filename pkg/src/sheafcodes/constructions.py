"""Explicit code constructions: double Cayley square complexes carrying the
tensor-code sheaf, sheafy expander codes on regular graphs, and 2-layer
lifted codes with their sheaf on the subset-labelled extension poset.

Conventions shared by all builders:
- groups are given by explicit multiplication tables (cyclic or small
  permutation groups), so all group-theoretic conditions are checked by full
  enumeration;
- sheaf spaces are stored in message coordinates: a face whose space is a
  code C gets dimension dim C, and restriction matrices convert between
  message coordinates through the fixed generator bases;
- face ids are canonical sorted tuples, so all orders are deterministic.
"""

from fractions import Fraction

from .algebra import Matrix, kernel_image, solve
from .codes import BlockCode, SetSystem, lifted_build
from .poset import DPoset, natural_weight, orient_cell_complex
from .sheaf import Sheaf


# --- groups with explicit multiplication tables ---

class Group:
    """A finite group given by an element list and a multiplication rule.
    Elements must be hashable and repr-sortable."""

    def __init__(self, elements, mul, describe=None):
        self.elements = tuple(sorted(set(elements), key=repr))
        self._mul = {(a, b): mul(a, b)
                     for a in self.elements for b in self.elements}
        ident = [e for e in self.elements
                 if all(self._mul[e, x] == x == self._mul[x, e]
                        for x in self.elements)]
        if len(ident) != 1:
            raise ValueError("not a group: identity missing or not unique")
        self.identity = ident[0]
        self.inv = {}
        for a in self.elements:
            bs = [b for b in self.elements if self._mul[a, b] == self.identity]
            if len(bs) != 1:
                raise ValueError(f"not a group: {a!r} has no unique inverse")
            self.inv[a] = bs[0]
        self._describe = describe or {"type": "table"}

    def mul(self, a, b):
        return self._mul[a, b]

    def __len__(self):
        return len(self.elements)

    def generates(self, subset):
        "Whether the subset generates the whole group (BFS closure)."
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(subset)
        while frontier:
            g = frontier.pop()
            for s in gens:
                h = self.mul(s, g)
                if h not in seen:
                    seen.add(h)
                    frontier.append(h)
        return len(seen) == len(self.elements)

    def describe(self):
        return dict(self._describe)


def cyclic_group(n):
    return Group(range(n), lambda a, b: (a + b) % n,
                 {"type": "cyclic", "n": n})


def permutation_group(n, generators):
    """Closure of the given permutations of range(n), each a length-n tuple
    of images."""
    gens = [tuple(g) for g in generators]
    ident = tuple(range(n))
    comp = lambda p, q: tuple(p[q[i]] for i in range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        p = frontier.pop()
        for g in gens:
            h = comp(g, p)
            if h not in seen:
                seen.add(h)
                frontier.append(h)
    return Group(seen, comp,
                 {"type": "permutation", "n": n,
                  "generators": [list(g) for g in gens]})


# --- double Cayley square complexes ---

class CayleyComplexSpec:
    """A group with two symmetric generating sets A (acting on the left)
    and B (acting on the right), plus codes C_A in F^A and C_B in F^B.
    Code coordinates follow the sorted order of A resp. B."""

    def __init__(self, group, gens_a, gens_b, code_a, code_b):
        self.group = group
        self.A = tuple(sorted(set(gens_a), key=repr))
        self.B = tuple(sorted(set(gens_b), key=repr))
        self.code_a = code_a
        self.code_b = code_b
        if code_a.n != len(self.A) or code_b.n != len(self.B):
            raise ValueError("code length must match the generating set size")
        if code_a.field != code_b.field:
            raise ValueError("the two codes must share a field")
        self.field = code_a.field
        self.validate()

    def validate(self):
        G = self.group
        for name, S in (("A", self.A), ("B", self.B)):
            if G.identity in S:
                raise ValueError(f"identity element in {name}")
            for s in S:
                if G.inv[s] not in S:
                    raise ValueError(f"{name} is not symmetric: "
                                     f"misses the inverse of {s!r}")
            if not G.generates(S):
                raise ValueError(f"{name} does not generate the group")
        for g in G.elements:
            for a in self.A:
                conj = G.mul(G.mul(g, a), G.inv[g])
                if conj in self.B:
                    raise ValueError(
                        "conjugacy condition fails: g a g^-1 = b for "
                        f"(g, a, b) = ({g!r}, {a!r}, {conj!r})")


def _cayley_data(spec):
    "Faces, per-endpoint generators and per-cover projection coordinates."
    G = spec.group
    verts = [(g,) for g in G.elements]
    edges = {}  # id -> ("A"|"B", {vertex: generator})
    for g in G.elements:
        for a in spec.A:
            other = G.mul(a, g)
            e = tuple(sorted((g, other), key=repr))
            edges.setdefault(e, ("A", {}))[1].update(
                {(g,): a, (other,): G.inv[a]})
    for g in G.elements:
        for b in spec.B:
            other = G.mul(g, b)
            e = tuple(sorted((g, other), key=repr))
            if e in edges and edges[e][0] == "A":
                raise ValueError(f"edge {e!r} is both an A-edge and a B-edge")
            edges.setdefault(e, ("B", {}))[1].update(
                {(g,): b, (other,): G.inv[b]})
    squares = {}  # id -> {"sides": set, "proj": {edge: coordinate}}
    for g in G.elements:
        for a in spec.A:
            for b in spec.B:
                ag, gb = G.mul(a, g), G.mul(g, b)
                agb = G.mul(ag, b)
                s = tuple(sorted({g, ag, gb, agb}, key=repr))
                if len(s) != 4:
                    raise ValueError(f"degenerate square from ({g!r},{a!r},{b!r})")
                mk = lambda u, v: tuple(sorted((u, v), key=repr))
                proj = {mk(g, ag): b, mk(gb, agb): G.inv[b],
                        mk(g, gb): a, mk(ag, agb): G.inv[a]}
                rec = squares.setdefault(s, {"proj": proj})
                if rec["proj"] != proj:
                    raise ValueError(f"square {s!r} arises with inconsistent "
                                     "side structure")
    dims = {(): -1}
    covers = [((), v) for v in verts]
    for v in verts:
        dims[v] = 0
    for e in edges:
        dims[e] = 1
        for g in e:
            covers.append(((g,), e))
    for s, rec in squares.items():
        dims[s] = 2
        for e in rec["proj"]:
            covers.append((e, s))
    X = DPoset(dims, covers)
    return X, edges, squares


def cayley_complex(spec):
    "The double Cayley square complex with natural weights and orientation."
    X, _, _ = _cayley_data(spec)
    return X, natural_weight(X), orient_cell_complex(X)


def cayley_sheaf(spec):
    """The tensor-code sheaf on the double Cayley complex, in message
    coordinates: vertices carry C_A (x) C_B, A-edges carry C_B, B-edges
    carry C_A, squares carry the base field."""
    X, edges, squares = _cayley_data(spec)
    F = spec.field
    GA, GB = spec.code_a.basis, spec.code_b.basis
    kA, kB = len(GA), len(GB)
    a_col = {a: i for i, a in enumerate(spec.A)}
    b_col = {b: i for i, b in enumerate(spec.B)}
    dims = {X.empty: 0}
    for v in X.faces(0):
        dims[v] = kA * kB
    for e in X.faces(1):
        dims[e] = kB if edges[e][0] == "A" else kA
    for s in X.faces(2):
        dims[s] = 1
    res = {}
    for e, (etype, gen_at) in edges.items():
        for v in X.covers_down(e):
            x = gen_at[v]
            if etype == "A":
                # row a of the message matrix m: (sum_i GA[i][a] m_{i,j})_j
                col = a_col[x]
                rows = [[GA[i][col] if jp == j else 0
                         for i in range(kA) for jp in range(kB)]
                        for j in range(kB)]
            else:
                col = b_col[x]
                rows = [[GB[j][col] if ip == i else 0
                         for ip in range(kA) for j in range(kB)]
                        for i in range(kA)]
            res[v, e] = Matrix.from_rows(F, rows)
    for s, rec in squares.items():
        for e, x in rec["proj"].items():
            if edges[e][0] == "A":
                row = [GB[j][b_col[x]] for j in range(kB)]
            else:
                row = [GA[i][a_col[x]] for i in range(kA)]
            res[e, s] = Matrix.from_rows(F, [row])
    return Sheaf(X, F, dims, res)


def cayley_lifted_system(spec):
    """The lifted code over the squares: one subset X(2)_v per vertex,
    carrying a copy of C_A (x) C_B reindexed by the (a, b) -> square
    bijection at that vertex.  Coordinates are square indices in sorted
    order."""
    X, edges, squares = _cayley_data(spec)
    F = spec.field
    sq_list = X.faces(2)
    sq_index = {s: i for i, s in enumerate(sq_list)}
    GA, GB = spec.code_a.basis, spec.code_b.basis
    kA, kB = len(GA), len(GB)
    G = spec.group
    subsets, small = [], []
    for v in X.faces(0):
        g = v[0]
        # phi_g(a, b) = {g, ag, gb, agb}
        phi = {}
        for ia, a in enumerate(spec.A):
            for jb, b in enumerate(spec.B):
                ag, gb = G.mul(a, g), G.mul(g, b)
                s = tuple(sorted({g, ag, gb, G.mul(ag, b)}, key=repr))
                phi[ia, jb] = sq_index[s]
        local = sorted({si for si in phi.values()})
        pos = {si: t for t, si in enumerate(local)}
        if len(phi) != len(local):
            raise ValueError(f"vertex {v!r}: square map is not injective")
        basis = []
        for i in range(kA):
            for j in range(kB):
                word = [0] * len(local)
                for ia in range(len(spec.A)):
                    for jb in range(len(spec.B)):
                        word[pos[phi[ia, jb]]] = F.mul(GA[i][ia], GB[j][jb])
                basis.append(tuple(word))
        subsets.append(tuple(local))
        small.append(BlockCode(F, len(local), basis))
    return SetSystem(F, len(sq_list), subsets, small)


# --- sheafy expander codes ---

def vandermonde_map(field, k, m):
    "The k x m matrix with rows (1, t, t^2, ..., t^{m-1}) over distinct t."
    if field.q < k:
        raise ValueError(f"field too small: need {k} distinct points")
    rows = []
    for t in range(k):
        row, cur = [], field.one
        for _ in range(m):
            row.append(cur)
            cur = field.mul(cur, t)
        rows.append(row)
    return Matrix.from_rows(field, rows)


def expander_code_sheaf(X, field, m, maps=None):
    """The sheaf on a k-regular graph whose 0-cocycle code is the line code
    of the expander code: F^m at vertices, F at edges, and the e-component
    of an injective map T_v as the restriction.  maps: {vertex: k x m
    Matrix} keyed by the sorted incident-edge order; defaults to a shared
    Vandermonde map."""
    if X.d != 1:
        raise ValueError("expected a graph (1-poset)")
    degs = {v: len(X.covers_up(v)) for v in X.faces(0)}
    k = max(degs.values())
    if min(degs.values()) != k:
        raise ValueError("graph is not regular")
    if not k / 2 < m <= k:
        raise ValueError(f"need k/2 < m <= k, got m={m}, k={k}")
    if maps is None:
        shared = vandermonde_map(field, k, m)
        maps = {v: shared for v in X.faces(0)}
    dims = {X.empty: 0}
    res = {}
    for v in X.faces(0):
        T = maps[v]
        if (T.nrows, T.ncols) != (k, m):
            raise ValueError(f"map at {v!r} has the wrong shape")
        _, _, rank = kernel_image(T)
        if rank != m:
            raise ValueError(f"map at {v!r} is not injective")
        dims[v] = m
        for idx, e in enumerate(sorted(X.covers_up(v), key=repr)):
            res[v, e] = Matrix.from_rows(field, [T.rows[idx]])
    for e in X.faces(1):
        dims[e] = 1
    return Sheaf(X, field, dims, res)


# --- 2-layer lifted codes ---

class TwoLayerSpec:
    """A graph X whose edges are labelled by subsets of range(n) and carry
    codes on those subsets.  Vertex labels are the unions of the incident
    edge labels; the empty face is labelled by all of range(n)."""

    def __init__(self, field, n, X, edge_labels, edge_codes):
        if X.d != 1:
            raise ValueError("expected a graph (1-poset)")
        self.field = field
        self.n = n
        self.X = X
        self.ell = {}
        for e in X.faces(1):
            lab = tuple(sorted(edge_labels[e]))
            if not lab:
                raise ValueError(f"empty label on edge {e!r}")
            if lab[0] < 0 or lab[-1] >= n:
                raise ValueError(f"label of {e!r} escapes range({n})")
            self.ell[e] = lab
        for v in X.faces(0):
            lab = sorted(set().union(*(self.ell[e] for e in X.covers_up(v))))
            self.ell[v] = tuple(lab)
        covered = set().union(*(self.ell[e] for e in X.faces(1)))
        if covered != set(range(n)):
            missing = sorted(set(range(n)) - covered)
            raise ValueError(f"labels do not cover range({n}): missing {missing}")
        self.ell[X.empty] = tuple(range(n))
        self.codes = {}
        for e in X.faces(1):
            c = edge_codes[e]
            if c.n != len(self.ell[e]):
                raise ValueError(f"code length mismatch on edge {e!r}")
            self.codes[e] = c
        self._check_connectivity()

    def _check_connectivity(self):
        "Every label class must induce a connected edge set."
        X = self.X
        for j in range(self.n):
            verts = [v for v in X.faces(0) if j in self.ell[v]]
            if not verts:
                continue
            adj = {v: [] for v in verts}
            for e in X.faces(1):
                if j in self.ell[e]:
                    u, v = X.covers_down(e)
                    adj[u].append(v)
                    adj[v].append(u)
            seen = {verts[0]}
            frontier = [verts[0]]
            while frontier:
                u = frontier.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        frontier.append(w)
            for v in verts:
                if v not in seen:
                    raise ValueError(
                        "label-connectivity fails: no path of edges labelled "
                        f"with {j} joins {verts[0]!r} and {v!r}")


class TwoLayerBuild:
    "Bundle returned by two_layer_build; see that function."

    def __init__(self, **kw):
        self.__dict__.update(kw)


def _message_restriction(field, big_basis, big_coords, small_code, small_coords):
    "Matrix taking message coords of the big code to those of the small one."
    pos = {c: i for i, c in enumerate(big_coords)}
    Me = Matrix.from_rows(field, [list(b) for b in small_code.basis]) \
        if small_code.basis else Matrix(field, 0, small_code.n, [])
    cols = []
    for b in big_basis:
        restricted = tuple(b[pos[c]] for c in small_coords)
        msg = solve(Me.transpose(), restricted)
        if msg is None:
            raise ValueError("restricted word leaves the small code")
        cols.append(msg)
    rows = [[cols[c][r] for c in range(len(cols))]
            for r in range(small_code.dim)]
    return Matrix.from_rows(field, rows) if rows else \
        Matrix(field, 0, len(cols), [])


def two_layer_build(spec):
    """Build the 2-layer lifted code and its sheaf model.  Returns a bundle
    with: local_codes (lifted code at each vertex), system (the vertex-level
    set system), code (the global lifted code), Y (the labelled extension
    poset with one top face per coordinate), w_ell (the induced weights,
    equal to the natural weight of Y on X), sheaf and signs on Y.

    Signs on covers inside X form an orientation of X; covers into the top
    faces get +1, which suffices for all level <= 0 analyses (the extension
    poset need not be orientable)."""
    X, F, n = spec.X, spec.field, spec.n
    # local lifted codes at vertices
    local_codes = {}
    for v in X.faces(0):
        coords = spec.ell[v]
        pos = {c: i for i, c in enumerate(coords)}
        subs = [tuple(pos[c] for c in spec.ell[e]) for e in X.covers_up(v)]
        codes = [spec.codes[e] for e in X.covers_up(v)]
        sys_v = SetSystem(F, len(coords), subs, codes)
        local_codes[v] = lifted_build(sys_v)
    system = SetSystem(F, n, [spec.ell[v] for v in X.faces(0)],
                       [local_codes[v] for v in X.faces(0)])
    code = lifted_build(system)
    # extension poset Y = X + one top face per coordinate
    top = {j: ("s", j) for j in range(n)}
    dims = {x: X.dim(x) for x in X.all_faces()}
    covers = [(x, y) for x in X.all_faces() for y in X.covers_up(x)]
    for j in range(n):
        dims[top[j]] = 2
        for e in X.faces(1):
            if j in spec.ell[e]:
                covers.append((e, top[j]))
    Y = DPoset(dims, covers)
    w = natural_weight(Y)
    w_ell = {}
    for x in X.all_faces():
        if x == X.empty:
            continue
        i = X.dim(x)
        acc = Fraction(0)
        for j in spec.ell[x]:
            cnt = sum(1 for y in X.faces(i) if j in spec.ell[y])
            acc += Fraction(1, cnt)
        w_ell[x] = acc / n
        assert w_ell[x] == w[x], "weight identity fails"
    # sheaf on Y in message coordinates
    sdims = {Y.empty: 0}
    res = {}
    for v in X.faces(0):
        sdims[v] = local_codes[v].dim
    for e in X.faces(1):
        sdims[e] = spec.codes[e].dim
        for v in Y.covers_down(e):
            res[v, e] = _message_restriction(
                F, local_codes[v].basis, spec.ell[v],
                spec.codes[e], spec.ell[e])
    for j in range(n):
        sdims[top[j]] = 1
        for e in Y.covers_down(top[j]):
            col = spec.ell[e].index(j)
            row = [b[col] for b in spec.codes[e].basis]
            res[e, top[j]] = Matrix.from_rows(F, [row]) if row else \
                Matrix(F, 1, 0, [])
    sheaf = Sheaf(Y, F, sdims, res)
    signs = orient_cell_complex(X)
    for j in range(n):
        for e in Y.covers_down(top[j]):
            signs[e, top[j]] = 1
    return TwoLayerBuild(spec=spec, X=X, Y=Y, n=n, ell=dict(spec.ell),
                         w=w, w_ell=w_ell, local_codes=local_codes,
                         system=system, code=code, sheaf=sheaf, signs=signs)


def cayley_two_layer(spec):
    """The double Cayley construction recast as a 2-layer lifted code: the
    coordinates are the squares, each edge carries C_B or C_A reindexed by
    its square fan."""
    X, edges, squares = _cayley_data(spec)
    sq_list = X.faces(2)
    sq_index = {s: i for i, s in enumerate(sq_list)}
    F = spec.field
    b_col = {b: i for i, b in enumerate(spec.B)}
    a_col = {a: i for i, a in enumerate(spec.A)}
    X1 = DPoset({x: X.dim(x) for x in X.all_faces() if X.dim(x) <= 1},
                [(x, y) for x in X.all_faces() if X.dim(x) < 1
                 for y in X.covers_up(x)])
    labels, codes = {}, {}
    for e in X.faces(1):
        fan = sorted(X.covers_up(e), key=lambda s: sq_index[s])
        labels[e] = tuple(sq_index[s] for s in fan)
        etype = edges[e][0]
        base = spec.code_b if etype == "A" else spec.code_a
        col_of = b_col if etype == "A" else a_col
        cols = [col_of[squares[s]["proj"][e]] for s in fan]
        basis = [tuple(b[c] for c in cols) for b in base.basis]
        codes[e] = BlockCode(F, len(fan), basis)
    return TwoLayerSpec(F, len(sq_list), X1, labels, codes)


# --- JSON interfaces ---

def group_from_json(doc):
    if doc["type"] == "cyclic":
        return cyclic_group(doc["n"])
    if doc["type"] == "permutation":
        return permutation_group(doc["n"], [tuple(g) for g in doc["generators"]])
    raise ValueError(f"unknown group type {doc['type']!r}")


def cayley_spec_to_json(spec):
    return {"group": spec.group.describe(),
            "A": list(spec.A), "B": list(spec.B),
            "code_A": [list(b) for b in spec.code_a.basis],
            "code_B": [list(b) for b in spec.code_b.basis]}


def cayley_spec_from_json(field, doc):
    G = group_from_json(doc["group"])
    key = lambda rows: [tuple(r) for r in rows]
    A, B = doc["A"], doc["B"]
    if doc["group"]["type"] == "permutation":
        A, B = [tuple(a) for a in A], [tuple(b) for b in B]
    return CayleyComplexSpec(
        G, A, B,
        BlockCode(field, len(A), key(doc["code_A"])),
        BlockCode(field, len(B), key(doc["code_B"])))


def two_layer_to_json(spec):
    """Serialize a 2-layer system whose graph came from graph_poset (vertex
    faces are 1-tuples of JSON-compatible labels)."""
    for v in spec.X.faces(0):
        if not (isinstance(v, tuple) and len(v) == 1):
            raise ValueError("only graph_poset-style vertex faces serialize")
    return {"n": spec.n,
            "vertices": [v[0] for v in spec.X.faces(0)],
            "edges": [{"ends": [x[0] for x in spec.X.covers_down(e)],
                       "label": list(spec.ell[e]),
                       "basis": [list(b) for b in spec.codes[e].basis]}
                      for e in spec.X.faces(1)]}


def two_layer_from_json(field, doc):
    from .shapes import graph_poset
    X = graph_poset(doc["vertices"], [tuple(e["ends"]) for e in doc["edges"]])
    labels, codes = {}, {}
    for e in doc["edges"]:
        eid = tuple(sorted(e["ends"]))
        labels[eid] = tuple(e["label"])
        codes[eid] = BlockCode(field, len(e["label"]),
                               [tuple(b) for b in e["basis"]])
    return TwoLayerSpec(field, doc["n"], X, labels, codes)
