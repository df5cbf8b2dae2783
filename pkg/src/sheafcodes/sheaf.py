"""Sheaves of finite-dimensional vector spaces on oriented graded posets:
cochains, coboundary maps, link restriction/extension, and the reorientation
isomorphism.

A sheaf assigns to every face x a space F^{dim(x)} and to every cover x < y a
restriction matrix res[y<-x]; composites along any cover path must agree
(functoriality), which is verified exhaustively at build time.
"""

from fractions import Fraction

from .algebra import Matrix, vec_add


class SheafError(ValueError):
    pass


class Sheaf:
    """Per-face dimensions plus restriction matrices on covers, over a Field."""

    def __init__(self, X, field, dims, res, check=True):
        self.X = X
        self.field = field
        self.dims = dict(dims)
        for x in X.all_faces():
            self.dims.setdefault(x, 0)
        self.res = dict(res)
        for x in X.all_faces():
            for y in X.covers_up(x):
                M = self.res.get((x, y))
                if M is None:
                    if self.dims[x] == 0 or self.dims[y] == 0:
                        self.res[x, y] = Matrix(field, self.dims[y], self.dims[x], [])
                    else:
                        raise SheafError(f"missing restriction for cover ({x!r},{y!r})")
                elif (M.nrows, M.ncols) != (self.dims[y], self.dims[x]):
                    raise SheafError(f"restriction shape mismatch on ({x!r},{y!r})")
        self._composite = {}
        if check:
            self.verify_functoriality()

    def space_dim(self, x):
        return self.dims[x]

    def restriction(self, x, y):
        "Composite restriction matrix for x <= y (any cover path; all agree)."
        if x == y:
            return Matrix.identity(self.field, self.dims[x])
        key = (x, y)
        if key in self._composite:
            return self._composite[key]
        if not self.X.lt(x, y):
            raise SheafError(f"{x!r} is not below {y!r}")
        mid = self.X.covers_up(x)
        for m in mid:
            if self.X.leq(m, y):
                M = self.restriction(m, y) * self.res[x, m]
                self._composite[key] = M
                return M
        raise SheafError(f"no cover path from {x!r} to {y!r}")  # pragma: no cover

    def verify_functoriality(self):
        "All cover-path composites between any x < y agree."
        X = self.X
        for x in X.all_faces():
            for y in X.above(x):
                paths = []
                for m in X.covers_up(x):
                    if X.leq(m, y):
                        paths.append(self.restriction(m, y) * self.res[x, m])
                first = paths[0] if paths else None
                for P in paths[1:]:
                    if P != first:
                        raise SheafError(
                            f"functoriality fails between {x!r} and {y!r}")
        return True

    def link(self, z):
        "The sheaf F_z on the link X_z (same spaces and restrictions)."
        L = self.X.link(z)
        dims = {x: self.dims[x] for x in L.all_faces()}
        res = {(x, y): self.res[x, y]
               for x in L.all_faces() for y in L.covers_up(x)}
        return Sheaf(L, self.field, dims, res, check=False)

    def cochain_dim(self, i):
        return sum(self.dims[x] for x in self.X.faces(i))


class Cochain:
    """An i-cochain: one vector per i-face.  Stored sparse (zero blocks
    omitted); immutable by convention."""

    __slots__ = ("sheaf", "level", "data")

    def __init__(self, sheaf, level, data=None):
        self.sheaf = sheaf
        self.level = level
        clean = {}
        for x, v in (data or {}).items():
            v = tuple(v)
            if len(v) != sheaf.dims[x]:
                raise SheafError(f"vector length mismatch at {x!r}")
            if any(v):
                clean[x] = v
        self.data = clean

    def value(self, x):
        return self.data.get(x, (0,) * self.sheaf.dims[x])

    def support(self):
        return set(self.data)

    def norm(self, w):
        "Weight of the support under the weight function w."
        return sum((w[x] for x in self.data), Fraction(0))

    def norm_uniform(self):
        n = self.sheaf.X.n_faces(self.level)
        return Fraction(len(self.data), n)

    def __add__(self, other):
        if other.level != self.level:
            raise SheafError("level mismatch")
        F = self.sheaf.field
        data = dict(self.data)
        for x, v in other.data.items():
            s = vec_add(F, data.get(x, (0,) * len(v)), v)
            if any(s):
                data[x] = s
            else:
                data.pop(x, None)
        return Cochain(self.sheaf, self.level, data)

    def __neg__(self):
        F = self.sheaf.field
        return Cochain(self.sheaf, self.level,
                       {x: tuple(F.neg(e) for e in v) for x, v in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.level == other.level
                and self.data == other.data)

    def __hash__(self):
        return hash((self.level, tuple(sorted(self.data.items(),
                                              key=lambda kv: repr(kv[0])))))

    def is_zero(self):
        return not self.data

    def to_flat(self):
        "Dense coordinate vector in the deterministic face order."
        out = []
        for x in self.sheaf.X.faces(self.level):
            out.extend(self.value(x))
        return tuple(out)

    @classmethod
    def from_flat(cls, sheaf, level, vec):
        data = {}
        pos = 0
        for x in sheaf.X.faces(level):
            n = sheaf.dims[x]
            data[x] = tuple(vec[pos:pos + n])
            pos += n
        if pos != len(vec):
            raise SheafError("flat vector length mismatch")
        return cls(sheaf, level, data)


def _sign_to_field(field, s):
    if s == 1:
        return field.one
    if s == -1:
        return field.neg(field.one)
    return field.from_int(s)


def apply_d(sheaf, signs, f):
    "(d_i f)(y) = sum over x in y(i) of [y:x] res[y<-x] f(x)."
    X = sheaf.X
    F = sheaf.field
    i = f.level
    out = {}
    for x, v in f.data.items():
        for y in X.covers_up(x):
            s = _sign_to_field(F, signs[x, y])
            term = sheaf.res[x, y].apply(v)
            if s != 1:
                term = tuple(F.mul(s, e) for e in term)
            cur = out.get(y)
            out[y] = term if cur is None else vec_add(F, cur, term)
    return Cochain(sheaf, i + 1, out)


def d_matrix(sheaf, signs, i):
    "Matrix of d_i: C^i -> C^{i+1} in the deterministic face-block order."
    X = sheaf.X
    F = sheaf.field
    src = X.faces(i)
    dst = X.faces(i + 1)
    col_off = {}
    pos = 0
    for x in src:
        col_off[x] = pos
        pos += sheaf.dims[x]
    ncols = pos
    row_off = {}
    pos = 0
    for y in dst:
        row_off[y] = pos
        pos += sheaf.dims[y]
    nrows = pos
    rows = [[0] * ncols for _ in range(nrows)]
    for y in dst:
        for x in X.covers_down(y):
            s = _sign_to_field(F, signs[x, y])
            M = sheaf.res[x, y]
            for r in range(M.nrows):
                for c in range(M.ncols):
                    e = F.mul(s, M.rows[r][c])
                    rows[row_off[y] + r][col_off[x] + c] = e
    return Matrix.from_rows(F, rows) if nrows else Matrix(F, 0, ncols, [])


def restrict_cochain(f, z, link_sheaf=None):
    "f_z on the link X_z: (f_z)(x) = f(x) for the faces of X_z at the shifted level."
    S = f.sheaf
    X = S.X
    Lsheaf = link_sheaf if link_sheaf is not None else S.link(z)
    lvl = f.level - X.dim(z) - 1
    data = {x: f.data[x] for x in Lsheaf.X.faces(lvl) if x in f.data}
    return Cochain(Lsheaf, lvl, data)


def extend_cochain(g, ambient_sheaf, z):
    "g^z on X: equals g on faces above z at the right level, zero elsewhere."
    X = ambient_sheaf.X
    lvl = g.level + X.dim(z) + 1
    return Cochain(ambient_sheaf, lvl, dict(g.data))


def link_signs(signs, link_poset):
    "Restrict an orientation to the cover pairs of a link."
    out = {}
    for x in link_poset.all_faces():
        for y in link_poset.covers_up(x):
            out[x, y] = signs[x, y]
    return out


def reorient_isomorphism(sheaf, signs1, signs2):
    """Diagonal units c_x with c_y [y:x]_1 = [y:x]_2 c_x on every cover,
    giving level-wise diagonal isomorphisms T_i f(x) = c_x f(x) that
    intertwine the two coboundaries.  Verifies flag independence."""
    X = sheaf.X
    F = sheaf.field
    c = {X.empty: F.one}
    for i in range(0, X.d + 1):
        for x in X.faces(i):
            vals = set()
            for p in X.covers_down(x):
                if p not in c:
                    continue
                s1 = _sign_to_field(F, signs1[p, x])
                s2 = _sign_to_field(F, signs2[p, x])
                vals.add(F.mul(c[p], F.mul(s2, F.inv(s1))))
            if len(vals) != 1:
                raise SheafError(
                    f"reorientation unit at {x!r} is flag-dependent "
                    "(input is not a regular cell complex)")
            c[x] = vals.pop()
    return c


def apply_reorient(cochain, units):
    F = cochain.sheaf.field
    return Cochain(cochain.sheaf, cochain.level,
                   {x: tuple(F.mul(units[x], e) for e in v)
                    for x, v in cochain.data.items()})


def constant_sheaf(X, field, n=1, augmented=False):
    """The constant sheaf with F(x) = field^n on every face.  The (-1)-face
    carries 0 by default, or field^n with identity restrictions when
    augmented."""
    dims = {x: n for x in X.all_faces()}
    if not augmented:
        dims[X.empty] = 0
    res = {}
    I = Matrix.identity(field, n)
    for x in X.all_faces():
        for y in X.covers_up(x):
            if x == X.empty and not augmented:
                res[x, y] = Matrix(field, n, 0, [])
            else:
                res[x, y] = I
    return Sheaf(X, field, dims, res, check=False)


def sheaf_to_json(sheaf):
    from .poset import face_name
    doc = {"dims": {face_name(x): sheaf.dims[x] for x in sheaf.X.all_faces()},
           "res": {}}
    for (x, y), M in sorted(sheaf.res.items(),
                            key=lambda kv: (face_name(kv[0][1]), face_name(kv[0][0]))):
        doc["res"][f"{face_name(y)}<-{face_name(x)}"] = list(M.entries())
    return doc


def sheaf_from_json(X, field, doc):
    dims = dict(doc["dims"])
    res = {}
    for key, flat in doc["res"].items():
        yname, xname = key.split("<-")
        res[xname, yname] = Matrix(field, dims[yname], dims[xname], flat)
    return Sheaf(X, field, dims, res)
