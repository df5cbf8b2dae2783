"""Finite graded posets with links, weights, counting constants and
orientations.

A d-poset is a graded poset that is pure of dimension d and has a unique
minimal face of dimension -1 below every face.  Face ids are arbitrary
hashable values (use strings, ints, or tuples for deterministic ordering);
all iteration orders are fixed by the key (dimension, repr(id)).

Weights are exact fractions.Fraction values throughout.
"""

import json
from fractions import Fraction


class PosetError(ValueError):
    "Raised on invalid poset input; .violations lists the broken axioms."

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def face_key(poset, x):
    return (poset.dim(x), repr(x))


class DPoset:
    """Pure graded poset of dimension d with a unique (-1)-face."""

    def __init__(self, dims, covers):
        # dims: {face: dim}; covers: iterable of (x, y) with x covered by y
        self._dims = dict(dims)
        violations = []
        up = {x: [] for x in self._dims}
        down = {x: [] for x in self._dims}
        seen = set()
        for x, y in covers:
            if x not in self._dims or y not in self._dims:
                violations.append(f"cover ({x!r},{y!r}) references unknown face")
                continue
            if (x, y) in seen:
                continue
            seen.add((x, y))
            if self._dims[y] != self._dims[x] + 1:
                violations.append(
                    f"non-graded cover: dim {x!r}={self._dims[x]}, dim {y!r}={self._dims[y]}")
                continue
            up[x].append(y)
            down[y].append(x)
        empties = [x for x, d in self._dims.items() if d == -1]
        if len(empties) != 1:
            violations.append(f"expected exactly one (-1)-face, found {len(empties)}")
        if violations:
            raise PosetError(violations)
        self.empty = empties[0]
        self.d = max(self._dims.values())
        key = lambda x: (self._dims[x], repr(x))
        self._faces_by_dim = {}
        for x in sorted(self._dims, key=key):
            self._faces_by_dim.setdefault(self._dims[x], []).append(x)
        self._up = {x: tuple(sorted(ys, key=key)) for x, ys in up.items()}
        self._down = {x: tuple(sorted(ys, key=key)) for x, ys in down.items()}
        # strict up-sets by descending dimension
        self._above = {}
        for i in range(self.d, -2, -1):
            for x in self._faces_by_dim.get(i, []):
                s = set()
                for y in self._up[x]:
                    s.add(y)
                    s |= self._above[y]
                self._above[x] = frozenset(s)
        self._below = {x: set() for x in self._dims}
        for x, ys in self._above.items():
            for y in ys:
                self._below[y].add(x)
        self._below = {x: frozenset(s) for x, s in self._below.items()}
        # validate d-poset axioms
        violations = []
        for x in self._dims:
            if x != self.empty and self.empty not in self._below[x]:
                violations.append(f"face {x!r} does not lie above the (-1)-face")
        top = set(self._faces_by_dim.get(self.d, []))
        for x in self._dims:
            if self._dims[x] < self.d and not (self._above[x] & top):
                violations.append(f"impurity: face {x!r} lies below no {self.d}-face")
        for i in range(-1, self.d + 1):
            if not self._faces_by_dim.get(i):
                violations.append(f"no faces of dimension {i}")
        if violations:
            raise PosetError(violations)

    # --- basic queries ---

    def dim(self, x):
        return self._dims[x]

    def dims(self):
        return dict(self._dims)

    def all_faces(self):
        for i in range(-1, self.d + 1):
            yield from self._faces_by_dim[i]

    def faces(self, i):
        "Sorted list of i-faces (empty list if out of range)."
        return list(self._faces_by_dim.get(i, []))

    def n_faces(self, i):
        return len(self._faces_by_dim.get(i, []))

    def covers_up(self, x):
        return self._up[x]

    def covers_down(self, x):
        return self._down[x]

    def leq(self, x, y):
        return x == y or x in self._below[y]

    def lt(self, x, y):
        return x in self._below[y]

    def above(self, z, j=None):
        "Faces strictly above z, or the j-faces >= z (X(j)_z, includes z if dim z = j)."
        if j is None:
            return self._above[z]
        if j == self._dims[z]:
            return [z]
        key = lambda x: (self._dims[x], repr(x))
        return sorted((y for y in self._above[z] if self._dims[y] == j), key=key)

    def below(self, y, i=None):
        "Faces strictly below y, or the i-faces <= y (y(i), includes y if dim y = i)."
        if i is None:
            return self._below[y]
        if i == self._dims[y]:
            return [y]
        key = lambda x: (self._dims[x], repr(x))
        return sorted((x for x in self._below[y] if self._dims[x] == i), key=key)

    def interval(self, u, z, j):
        "j-faces x with u <= x <= z."
        if not self.leq(u, z):
            return []
        return [x for x in self.above(u, j) if self.leq(x, z)]

    def inf_set(self, x, y):
        "Maximal common lower bounds of x and y (may be several)."
        common = (self._below[x] | {x}) & (self._below[y] | {y})
        out = [z for z in common if not any(w in common for w in self._above[z])]
        key = lambda f: (self._dims[f], repr(f))
        return sorted(out, key=key)

    def link(self, z):
        "The link X_z as a DPoset (faces keep their ids; dims shift by dim z + 1)."
        if z not in self._dims:
            raise KeyError(f"{z!r} is not a face")
        shift = self._dims[z] + 1
        members = {z} | set(self._above[z])
        dims = {x: self._dims[x] - shift for x in members}
        covers = [(x, y) for x in members for y in self._up[x] if y in members]
        return DPoset(dims, covers)

    def __repr__(self):
        counts = ",".join(str(self.n_faces(i)) for i in range(-1, self.d + 1))
        return f"DPoset(d={self.d}, faces=[{counts}])"


def build_poset(dims, covers):
    "Validated DPoset from a dimension map and cover list; raises PosetError."
    return DPoset(dims, covers)


# --- weight functions ---

def natural_weight(X):
    "The proper weight function that is uniform on top faces."
    w = {}
    ntop = X.n_faces(X.d)
    for y in X.faces(X.d):
        w[y] = Fraction(1, ntop)
    for i in range(X.d - 1, -2, -1):
        for x in X.faces(i):
            w[x] = sum((w[y] / len(X.below(y, i)) for y in X.above(x, X.d)),
                       Fraction(0))
    return w


def uniform_weight(X):
    "Level-normalized uniform weights (not proper in general)."
    w = {}
    for i in range(-1, X.d + 1):
        faces = X.faces(i)
        for x in faces:
            w[x] = Fraction(1, len(faces))
    return w


def is_normalized(X, w):
    return all(sum((w[x] for x in X.faces(i)), Fraction(0)) == 1
               for i in range(-1, X.d + 1))


def is_proper(X, w):
    "Whether w(x) = sum over top faces y >= x of w(y)/|y(dim x)| for all x."
    for i in range(-1, X.d):
        for x in X.faces(i):
            target = sum((w[y] / len(X.below(y, i)) for y in X.above(x, X.d)),
                         Fraction(0))
            if w[x] != target:
                return False
    return True


def link_weight(X, w, z):
    """The induced weight w_z on the link X_z:
    w_z(x) = (1/w(X(d)_z)) * sum over top y >= x of w(y)/|y(j)_z| where
    j = dim x and |y(j)_z| counts j-faces between z and y."""
    total = sum((w[y] for y in X.above(z, X.d)), Fraction(0))
    wz = {}
    link_members = [z] + [x for x in X.above(z)]
    for x in link_members:
        j = X.dim(x)
        acc = Fraction(0)
        for y in X.above(x, X.d):
            acc += w[y] / len(X.interval(z, y, j))
        wz[x] = acc / total
    return wz


# --- counting constants ---

class CountingConstants:
    """F/D/L/U constants of a d-poset, computed exactly by enumeration."""

    def __init__(self, X):
        self.X = X
        d = X.d
        self._F = {}
        for i in range(-1, d + 1):
            for k in range(i, d + 1):
                pairs = [(u, z) for u in X.faces(i) for z in X.above(u, k)]
                for j in range(i, k + 1):
                    if not pairs:
                        self._F[i, j, k] = (0, 0)
                        continue
                    counts = [len(X.interval(u, z, j)) for u, z in pairs]
                    self._F[i, j, k] = (min(counts), max(counts))
        self._D = {}
        for i in range(-1, d + 1):
            for j in range(i, d + 1):
                counts = [len(X.above(u, j)) for u in X.faces(i)]
                counts = [c for c in counts if c > 0]
                self._D[i, j] = (min(counts), max(counts)) if counts else (0, 0)

    def F_min(self, i, j, k=None):
        if k is None:
            i, j, k = -1, i, j
        return self._F.get((i, j, k), (0, 0))[0]

    def F_max(self, i, j, k=None):
        if k is None:
            i, j, k = -1, i, j
        return self._F.get((i, j, k), (0, 0))[1]

    def D_min(self, i, j):
        return self._D.get((i, j), (0, 0))[0]

    def D_max(self, i, j):
        return self._D.get((i, j), (0, 0))[1]

    def L(self, i, j, k=None):
        if k is None:
            i, j, k = -1, i, j
        mn, mx = self._F.get((i, j, k), (0, 0))
        return Fraction(mx, mn) if mn else Fraction(0)

    def L_total(self):
        d = self.X.d
        return max(self.L(i, j, k)
                   for i in range(-1, d + 1)
                   for j in range(i, d + 1)
                   for k in range(j, d + 1))

    def U(self, i, j):
        mn, mx = self._D.get((i, j), (0, 0))
        return Fraction(mx, mn) if mn else Fraction(0)

    def U_total(self):
        d = self.X.d
        return max(self.U(i, j) for i in range(-1, d + 1) for j in range(i, d + 1))

    def D_total(self):
        return max(len(self.X.above(v)) + 1 for v in self.X.faces(0))

    def is_lower_regular(self):
        return self.L_total() == 1

    def is_upper_regular(self):
        return self.U_total() == 1

    def lemma_products_hold(self):
        "The four-index product inequalities between F^min and F^max."
        d = self.X.d
        for i in range(-1, d + 1):
            for j in range(i, d + 1):
                for k in range(j, d + 1):
                    for l in range(k, d + 1):
                        if (self.F_min(i, j, l) * self.F_min(j, k, l)
                                > self.F_max(i, k, l) * self.F_max(i, j, k)):
                            return False
                        if (self.F_max(i, j, l) * self.F_max(j, k, l)
                                < self.F_min(i, k, l) * self.F_min(i, j, k)):
                            return False
        return True


def counting_constants(X):
    return CountingConstants(X)


# --- orientation ---

def validate_orientation(X, signs, field=None):
    """Check the codim-2 sign condition.  signs: {(x, y): unit} on covers.
    With field=None, signs are nonzero ints summed over Z; otherwise they are
    field elements and the sum is taken in the field."""
    for x, y in ((x, y) for x in X.all_faces() for y in X.covers_up(x)):
        if (x, y) not in signs:
            return False, f"missing sign for cover ({x!r},{y!r})"
        s = signs[x, y]
        if field is None:
            if s == 0:
                return False, f"zero sign on cover ({x!r},{y!r})"
        else:
            if s == 0:
                return False, f"non-unit sign on cover ({x!r},{y!r})"
    for x in X.all_faces():
        for z in X.all_faces():
            if X.dim(z) == X.dim(x) + 2 and X.lt(x, z):
                mids = X.interval(x, z, X.dim(x) + 1)
                if field is None:
                    total = sum(signs[y, z] * signs[x, y] for y in mids)
                    ok = total == 0
                else:
                    total = 0
                    for y in mids:
                        total = field.add(total, field.mul(signs[y, z], signs[x, y]))
                    ok = total == 0
                if not ok:
                    return False, f"codim-2 sum nonzero between {x!r} and {z!r}"
    return True, None


def _cell_complex_shape_check(X):
    "Regular cell complex of dim <= 2: edges have 2 vertices, 2-cells are polygons."
    if X.d > 2:
        return f"dimension {X.d} > 2"
    for e in X.faces(1):
        if len(X.covers_down(e)) != 2:
            return f"edge {e!r} does not have exactly 2 vertices"
    if X.d == 2:
        for c in X.faces(2):
            edges = X.covers_down(c)
            verts = X.below(c, 0)
            if len(edges) != len(verts) or len(edges) < 3:
                return f"2-cell {c!r} is not a polygon"
            for v in verts:
                inc = [e for e in edges if X.lt(v, e)]
                if len(inc) != 2:
                    return f"2-cell {c!r}: vertex {v!r} lies in {len(inc)} boundary edges"
    return None


def orient_cell_complex(X):
    """A Z-orientation (signs in {+1,-1}) of a regular cell complex of
    dimension <= 2, with [v:empty] = 1 for every vertex."""
    problem = _cell_complex_shape_check(X)
    if problem is not None:
        raise ValueError(f"unsupported cell structure: {problem}")
    signs = {}
    for v in X.faces(0):
        signs[X.empty, v] = 1
    for e in X.faces(1):
        u, v = X.covers_down(e)  # sorted; u gets +1
        signs[u, e] = 1
        signs[v, e] = -1
    for c in X.faces(2):
        edges = list(X.covers_down(c))
        verts = set(X.below(c, 0))
        # walk the boundary cycle, fixing [c:e] so each vertex constraint
        # [c:e1][e1:v] + [c:e2][e2:v] = 0 holds
        e0 = edges[0]
        assigned = {e0: 1}
        frontier = [e0]
        while frontier:
            e = frontier.pop()
            for v in X.covers_down(e):
                if v not in verts:
                    continue
                others = [f for f in edges if f != e and X.lt(v, f)]
                for f in others:
                    need = -assigned[e] * signs[v, e] * signs[v, f]
                    # need satisfies assigned[e]*signs[v,e] + need*signs[v,f] = 0
                    if f in assigned:
                        if assigned[f] != need:
                            raise ValueError(
                                "unsupported cell structure: boundary cycle of "
                                f"{c!r} admits no consistent orientation")
                    else:
                        assigned[f] = need
                        frontier.append(f)
        if len(assigned) != len(edges):
            raise ValueError(
                f"unsupported cell structure: boundary of {c!r} is not connected")
        for e, s in assigned.items():
            signs[e, c] = s
    ok, msg = validate_orientation(X, signs)
    if not ok:  # pragma: no cover - construction guarantees validity
        raise AssertionError(msg)
    return signs


def signs_in_field(signs, field):
    "Map integer +-1 signs into a field."
    return {k: field.from_int(s) for k, s in signs.items()}


# --- JSON serialization ---

def face_name(x):
    "Deterministic string name for a face id."
    if isinstance(x, str):
        return x
    return repr(x)


def poset_to_json(X, weights=None, signs=None):
    name = {x: face_name(x) for x in X.all_faces()}
    if len(set(name.values())) != len(name):
        raise ValueError("face names collide under string conversion")
    doc = {
        "dims": {name[x]: X.dim(x) for x in X.all_faces()},
        "covers": sorted(
            ([name[x], name[y]] for x in X.all_faces() for y in X.covers_up(x)),
            key=lambda p: (p[0], p[1])),
    }
    if weights is not None:
        doc["weights"] = {name[x]: f"{weights[x].numerator}/{weights[x].denominator}"
                          for x in X.all_faces()}
    if signs is not None:
        doc["signs"] = {f"{name[x]}<{name[y]}": s for (x, y), s in sorted(
            signs.items(), key=lambda kv: (face_name(kv[0][0]), face_name(kv[0][1])))}
    return doc


def poset_from_json(doc):
    dims = dict(doc["dims"])
    covers = [tuple(c) for c in doc["covers"]]
    X = build_poset(dims, covers)
    weights = None
    if "weights" in doc:
        weights = {}
        for k, v in doc["weights"].items():
            num, den = v.split("/")
            weights[k] = Fraction(int(num), int(den))
    signs = None
    if "signs" in doc:
        signs = {}
        for k, v in doc["signs"].items():
            x, y = k.split("<")
            signs[x, y] = v
    return X, weights, signs


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=1)
