"""Finite fields GF(p^m) and exact dense linear algebra over them.

Elements of GF(p^m) are integers in range(p**m) whose base-p digits are the
coefficients of the representing polynomial (digit i = coefficient of t^i).
For m > 1 multiplication goes through discrete log tables, built once per
field from a brute-forced generator.  Field orders are capped at 2^16.
"""

from functools import lru_cache, reduce


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_mulmod(a, b, modulus, p, m):
    "Multiply base-p packed polynomials a, b modulo the packed monic modulus."
    # unpack
    da = []
    x = a
    while x:
        da.append(x % p)
        x //= p
    db = []
    x = b
    while x:
        db.append(x % p)
        x //= p
    prod = [0] * (len(da) + len(db) - 1 if da and db else 1)
    for i, ca in enumerate(da):
        if ca:
            for j, cb in enumerate(db):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    dm = []
    x = modulus
    while x:
        dm.append(x % p)
        x //= p
    # reduce: modulus is monic of degree m
    for deg in range(len(prod) - 1, m - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for j in range(m):
                prod[deg - m + j] = (prod[deg - m + j] - c * dm[j]) % p
    out = 0
    for c in reversed(prod[:m] if len(prod) >= m else prod):
        out = out * p + c
    return out


def _find_irreducible(p, m):
    "First monic irreducible polynomial of degree m over GF(p), packed base p."
    # candidates: x^m + (lower part), lower part enumerated in increasing packed order
    top = p ** m
    for low in range(top):
        cand = top + low
        if _poly_is_irreducible(cand, p, m):
            return cand
    raise ArithmeticError("no irreducible polynomial found")  # pragma: no cover


def _poly_is_irreducible(f, p, m):
    "Test irreducibility of the packed monic degree-m polynomial f over GF(p)."
    if m == 1:
        return True
    # f is irreducible iff x^(p^m) == x mod f and gcd(x^(p^(m/q)) - x, f) = 1
    # for every prime divisor q of m.  At these sizes, trial division by all
    # monic polynomials of degree <= m//2 is simpler and fast enough.
    for deg in range(1, m // 2 + 1):
        base = p ** deg
        for low in range(base):
            g = base + low  # monic of degree deg
            if _poly_divides(g, f, p):
                return False
    return True


def _poly_divides(g, f, p):
    "Whether packed polynomial g divides f over GF(p) (g monic)."
    df = []
    x = f
    while x:
        df.append(x % p)
        x //= p
    dg = []
    x = g
    while x:
        dg.append(x % p)
        x //= p
    rem = df[:]
    dgd = len(dg) - 1
    for deg in range(len(rem) - 1, dgd - 1, -1):
        c = rem[deg]
        if c:
            for j in range(len(dg)):
                rem[deg - dgd + j] = (rem[deg - dgd + j] - c * dg[j]) % p
    return not any(rem)


class Field:
    """GF(p^m) with elements encoded as ints in range(p**m)."""

    def __init__(self, p, m=1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        q = p ** m
        if q > 2 ** 16:
            raise ValueError(f"field order {q} exceeds 2^16")
        self.p = p
        self.m = m
        self.q = q
        if m == 1:
            self.modulus = None
            self._exp = self._log = None
            self._inv_table = [0] * p
            for a in range(1, p):
                self._inv_table[a] = pow(a, p - 2, p)
        else:
            if modulus is None:
                modulus = _find_irreducible(p, m)
            else:
                if modulus < q or modulus >= p * q or not _poly_is_irreducible(modulus, p, m):
                    raise ValueError("modulus must be monic irreducible of the right degree")
            self.modulus = modulus
            self._build_tables()

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        for g in range(2, q):
            exp = [0] * (q - 1)
            seen = 1
            x = 1
            ok = True
            for i in range(q - 1):
                exp[i] = x
                x = _poly_mulmod(x, g, self.modulus, p, m)
                if x == 1 and i != q - 2:
                    ok = False
                    break
            if ok and x == 1:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                self._exp = exp
                self._log = log
                return
        raise ArithmeticError("no multiplicative generator found")  # pragma: no cover

    # --- element arithmetic ---

    def add(self, a, b):
        p = self.p
        if self.m == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out = 0
        mult = 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a):
        p = self.p
        if self.m == 1:
            return (-a) % p
        if p == 2:
            return a
        out = 0
        mult = 1
        while a:
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self.m == 1:
            return self._inv_table[a]
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    @property
    def one(self):
        return 1

    @property
    def zero(self):
        return 0

    def minus_one(self):
        return self.neg(1)

    def from_int(self, s):
        "Embed a sign/integer s (e.g. an orientation value +-1) into the field."
        out = 0
        one = 1
        if s >= 0:
            for _ in range(s % self.char_order()):
                out = self.add(out, one)
        else:
            for _ in range((-s) % self.char_order()):
                out = self.sub(out, one)
        return out

    def char_order(self):
        return self.p

    def elements(self):
        return range(self.q)

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p and self.m == other.m
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


@lru_cache(maxsize=None)
def GF(p, m=1, modulus=None):
    return Field(p, m, modulus)


def ff_arith(field, a, b, op):
    "Scalar field arithmetic dispatch: op in {'add','mul','inv'} (inv ignores a)."
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "inv":
        return field.inv(b)
    raise ValueError(f"unknown op {op!r}")


class Matrix:
    """Immutable dense matrix over a Field, row-major entries."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, nrows, ncols, entries):
        entries = list(entries)
        if len(entries) != nrows * ncols:
            raise ValueError("entry count does not match shape")
        for e in entries:
            if not (0 <= e < field.q):
                raise ValueError("entry out of field range")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(tuple(entries[r * ncols:(r + 1) * ncols]) for r in range(nrows))

    @classmethod
    def from_rows(cls, field, rows):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        flat = [e for r in rows for e in r]
        return cls(field, nrows, ncols, flat)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, field, nrows, ncols):
        return cls(field, nrows, ncols, [0] * (nrows * ncols))

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows
                and self.nrows == other.nrows and self.ncols == other.ncols)

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols})"

    def entries(self):
        return [e for r in self.rows for e in r]

    def transpose(self):
        return Matrix.from_rows(self.field, list(zip(*self.rows))) if self.nrows else \
            Matrix(self.field, self.ncols, 0, [])

    def __add__(self, other):
        F = self.field
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Matrix(F, self.nrows, self.ncols,
                      [F.add(a, b) for ra, rb in zip(self.rows, other.rows)
                       for a, b in zip(ra, rb)])

    def __neg__(self):
        F = self.field
        return Matrix(F, self.nrows, self.ncols, [F.neg(e) for r in self.rows for e in r])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            ot = list(zip(*other.rows)) if other.nrows else [[]] * other.ncols
            out = []
            for row in self.rows:
                for col in ot:
                    acc = 0
                    for a, b in zip(row, col):
                        if a and b:
                            acc = F.add(acc, F.mul(a, b))
                    out.append(acc)
            return Matrix(F, self.nrows, other.ncols, out)
        raise TypeError("can only multiply by Matrix")

    def scale(self, c):
        F = self.field
        return Matrix(F, self.nrows, self.ncols, [F.mul(c, e) for r in self.rows for e in r])

    def apply(self, vec):
        "Matrix-vector product; vec is a sequence of field ints of length ncols."
        F = self.field
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.rows:
            acc = 0
            for a, b in zip(row, vec):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    def is_zero(self):
        return all(e == 0 for r in self.rows for e in r)


def rref(M):
    """Reduced row echelon form of M.

    Returns (R, pivots) with R a Matrix and pivots the tuple of pivot column
    indices.  Deterministic: scans columns left to right, first nonzero row.
    """
    F = M.field
    rows = [list(r) for r in M.rows]
    nrows, ncols = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        sel = None
        for i in range(r, nrows):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][c])
        if inv != 1:
            rows[r] = [F.mul(inv, e) for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Matrix.from_rows(F, rows) if nrows else M, tuple(pivots)


def row_space_basis(M):
    "Canonical (RREF, zero rows dropped) basis of the row space, as row tuples."
    R, pivots = rref(M)
    return [R.rows[i] for i in range(len(pivots))]


def kernel_image(M):
    """Kernel basis, image (column-space) basis, and rank of M.

    Both bases are canonical: rows of a reduced echelon form.  Kernel vectors
    k satisfy M.apply(k) == 0; image vectors have length M.nrows.
    """
    F = M.field
    R, pivots = rref(M)
    rank = len(pivots)
    ncols = M.ncols
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    kernel = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.rows[i][fc])
        kernel.append(tuple(v))
    if kernel:
        kernel = [tuple(r) for r in
                  row_space_basis(Matrix.from_rows(F, kernel))]
    image = [tuple(r) for r in row_space_basis(M.transpose())]
    return kernel, image, rank


def solve(M, target):
    "One solution x of M x = target, or None.  Deterministic (free vars = 0)."
    F = M.field
    aug = Matrix.from_rows(F, [list(r) + [t] for r, t in zip(M.rows, target)]) \
        if M.nrows else Matrix(F, 0, M.ncols + 1, [])
    R, pivots = rref(aug)
    if M.ncols in pivots:
        return None
    x = [0] * M.ncols
    for i, pc in enumerate(pivots):
        x[pc] = R.rows[i][M.ncols]
    return tuple(x)


def in_span(basis_rows, vec, field):
    "Whether vec lies in the span of basis_rows (each a tuple of field ints)."
    if not basis_rows:
        return all(e == 0 for e in vec)
    M = Matrix.from_rows(field, [list(r) for r in basis_rows])
    return solve(M.transpose(), vec) is not None


def vec_add(field, u, v):
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_sub(field, u, v):
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vec_scale(field, c, u):
    return tuple(field.mul(c, a) for a in u)


def span_iter(field, basis_rows):
    """Iterate over all vectors in the span of basis_rows, Gray-order over the
    message space: consecutive outputs differ by +- one basis vector.  Starts
    at the zero vector.  Yields (message_index, vector)."""
    if not basis_rows:
        yield 0, ()
        return
    n = len(basis_rows[0])
    k = len(basis_rows)
    q = field.q
    cur = tuple([0] * n)
    digits = [0] * k
    yield 0, cur
    total = q ** k
    for step in range(1, total):
        # mixed-radix Gray: find lowest digit to bump
        i = 0
        x = step
        while x % q == 0:
            x //= q
            i += 1
        digits[i] = (digits[i] + 1) % q
        if digits[i] == 0:
            # wrapped: subtract (q-1) copies == add one copy q-1 times undone;
            # adding one more copy wraps the contribution back to 0
            cur = vec_add(field, cur, basis_rows[i])
        else:
            cur = vec_add(field, cur, basis_rows[i])
        yield step, cur


def tensor_matrix(A, B):
    "Kronecker product of two matrices over the same field."
    F = A.field
    out = []
    for ra in A.rows:
        for rb in B.rows:
            row = []
            for a in ra:
                row.extend(F.mul(a, b) for b in rb)
            out.append(row)
    return Matrix.from_rows(F, out) if out else Matrix(F, 0, A.ncols * B.ncols, [])


def block_diag(field, blocks):
    "Block-diagonal matrix from a list of Matrices over field."
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    rows = [[0] * nc for _ in range(nr)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                rows[r0 + i][c0 + j] = b.rows[i][j]
        r0 += b.nrows
        c0 += b.ncols
    return Matrix.from_rows(field, rows) if nr else Matrix(field, 0, nc, [])
