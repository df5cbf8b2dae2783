"""Ground-truth brute force on tiny instances: cocycle codes, exact minimum
distance, and the exact expansion constants (cosystolic expansion, cocycle
distance, coboundary expansion) by full enumeration of cochain spaces.

Every value is an exact rational; empty infima are reported as the
distinguished INF object, never a numeric sentinel.
"""

from fractions import Fraction

from .algebra import Matrix, in_span, kernel_image, rref, span_iter, vec_add
from .sheaf import Cochain, d_matrix

ENUM_BUDGET = 2 ** 24


class BudgetError(RuntimeError):
    pass


class _Infinity:
    "Distinguished infinite value for empty infima; larger than any rational."

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("_Infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __ge__(self, other):
        return True


INF = _Infinity()


def is_infinite(x):
    return isinstance(x, _Infinity)


class CocycleCode:
    """The space Z^i = ker(d_i) viewed as a code in C^i, with B^i = im(d_{i-1}).
    Basis vectors are flat coordinate tuples in the deterministic face order."""

    def __init__(self, sheaf, signs, level):
        self.sheaf = sheaf
        self.signs = signs
        self.level = level
        X = sheaf.X
        D = d_matrix(sheaf, signs, level)
        self.d_mat = D
        Z, _, _ = kernel_image(D)
        self.Z_basis = Z
        if level - 1 >= -1:
            Dprev = d_matrix(sheaf, signs, level - 1)
            _, B, _ = kernel_image(Dprev)
        else:
            B = []
        self.B_basis = B
        self.faces = X.faces(level)
        self.block_dims = [sheaf.dims[x] for x in self.faces]
        self.n = len(self.faces)
        dims = {sheaf.dims[x] for x in self.faces}
        self.sigma_dim = dims.pop() if len(dims) == 1 else None
        self.constant_alphabet = self.sigma_dim is not None

    @property
    def ambient_dim(self):
        return sum(self.block_dims)

    @property
    def dim_Z(self):
        return len(self.Z_basis)

    @property
    def dim_B(self):
        return len(self.B_basis)

    def rate(self):
        "log_{|Sigma^n|} |Z| for the code view (needs a constant alphabet)."
        if not self.constant_alphabet:
            raise ValueError("rate needs a constant alphabet on this level")
        if self.sigma_dim == 0 or self.n == 0:
            return Fraction(0)
        return Fraction(self.dim_Z, self.n * self.sigma_dim)

    def block_weight(self, vec, w):
        "w(supp f) for a flat vector, blocks indexed by faces."
        total = Fraction(0)
        pos = 0
        for x, m in zip(self.faces, self.block_dims):
            if any(vec[pos:pos + m]):
                total += w[x]
            pos += m
        return total

    def uniform_w(self):
        return {x: Fraction(1, self.n) for x in self.faces}

    def contains(self, vec):
        return in_span(self.Z_basis, vec, self.sheaf.field)


def cocycle_code(sheaf, signs, level):
    return CocycleCode(sheaf, signs, level)


def _check_budget(q, dim, budget):
    if dim > 0 and q ** dim > budget:
        raise BudgetError(f"enumeration of size {q}^{dim} exceeds the budget")


def min_distance(code, w=None, budget=ENUM_BUDGET):
    """Exact minimum normalized weight over nonzero codewords of Z^i,
    (INF, None) for the zero code.  Weights default to uniform on the faces."""
    F = code.sheaf.field
    _check_budget(F.q, code.dim_Z, budget)
    if w is None:
        w = code.uniform_w()
    best = INF
    witness = None
    for _, vec in span_iter(F, code.Z_basis):
        if not any(vec):
            continue
        wt = code.block_weight(vec, w)
        if wt < best:
            best, witness = wt, vec
    if witness is not None:
        witness = Cochain.from_flat(code.sheaf, code.level, witness)
    return best, witness


def _complement_basis(field, basis, dim):
    "Standard basis vectors at the non-pivot coordinates of span(basis)."
    if not basis:
        pivots = []
    else:
        M = Matrix.from_rows(field, [list(b) for b in basis])
        _, pivots = rref(M)
    out = []
    for c in range(dim):
        if c not in pivots:
            v = [0] * dim
            v[c] = 1
            out.append(tuple(v))
    return out


class ExpansionReport:
    def __init__(self, level, cse, ccd, cbe, witnesses, budget_mode="exact"):
        self.level = level
        self.cse = cse
        self.ccd = ccd
        self.cbe = cbe
        self.witnesses = witnesses
        self.budget_mode = budget_mode

    def as_dict(self):
        def val(x):
            return "inf" if is_infinite(x) else str(x)

        def wit(c):
            if c is None:
                return None
            from .poset import face_name
            return {face_name(x): list(v) for x, v in sorted(
                c.data.items(), key=lambda kv: repr(kv[0]))}

        return {"level": self.level,
                "cse": val(self.cse), "ccd": val(self.ccd),
                "cbe": val(self.cbe),
                "witnesses": {k: wit(v) for k, v in self.witnesses.items()},
                "budget_mode": self.budget_mode}


def _coset_expansion(code, w, w_up, subspace, budget):
    """min over nonzero cosets f + span(subspace) of
    ||df|| / (min weight in coset); (INF, None) when there are no cosets."""
    F = code.sheaf.field
    S = code.sheaf
    dim = code.ambient_dim
    comp = _complement_basis(F, subspace, dim)
    _check_budget(F.q, len(comp) + len(subspace), budget)
    D = code.d_mat
    up_faces = S.X.faces(code.level + 1)
    up_dims = [S.dims[y] for y in up_faces]

    def up_weight(vec):
        total = Fraction(0)
        pos = 0
        for y, m in zip(up_faces, up_dims):
            if any(vec[pos:pos + m]):
                total += w_up[y]
            pos += m
        return total

    best = INF
    witness = None
    for _, rep in span_iter(F, comp):
        if not any(rep):
            continue
        dfw = up_weight(D.apply(rep))
        if not subspace:
            dist, argmin = code.block_weight(rep, w), rep
        else:
            dist = None
            argmin = None
            for _, s in span_iter(F, subspace):
                v = vec_add(F, rep, s)
                wt = code.block_weight(v, w)
                if dist is None or wt < dist:
                    dist, argmin = wt, v
        ratio = Fraction(dfw, 1) / dist  # dist > 0 off the subspace
        if ratio < best:
            best = ratio
            witness = argmin
    if witness is not None:
        witness = Cochain.from_flat(code.sheaf, code.level, witness)
    return best, witness


def _cocycle_distance(code, w, budget):
    "min weight over Z^i - B^i; INF when Z^i = B^i."
    F = code.sheaf.field
    _check_budget(F.q, code.dim_Z, budget)
    best = INF
    witness = None
    for _, vec in span_iter(F, code.Z_basis):
        if not any(vec):
            continue
        if in_span(code.B_basis, vec, F):
            continue
        wt = code.block_weight(vec, w)
        if wt < best:
            best, witness = wt, vec
    if witness is not None:
        witness = Cochain.from_flat(code.sheaf, code.level, witness)
    return best, witness


def expansion_exact(sheaf, signs, w, level, budget=ENUM_BUDGET):
    """Exact cosystolic expansion, cocycle distance and coboundary expansion
    at the given level, with argmin witnesses.  Conventions: an empty
    infimum/supremum domain yields INF (for cse/cbe this means every cochain
    already lies in Z^i resp. B^i)."""
    code = CocycleCode(sheaf, signs, level)
    w_up = w
    cse, cse_wit = _coset_expansion(code, w, w_up, code.Z_basis, budget)
    cbe, cbe_wit = _coset_expansion(code, w, w_up, code.B_basis, budget)
    ccd, ccd_wit = _cocycle_distance(code, w, budget)
    return ExpansionReport(level, cse, ccd, cbe,
                           {"cse": cse_wit, "ccd": ccd_wit, "cbe": cbe_wit})


def tester_soundness_exact(sheaf, signs, level, w=None, budget=ENUM_BUDGET):
    """Exact soundness of the natural tester of Z^level under uniform weights,
    plus the transfer lower bound cse/(M M') computed from the given proper
    weight function (natural weights when w is None).  Returns a dict with
    keys soundness, vacuous, bound, cse_w, M, Mp."""
    from .poset import counting_constants, natural_weight
    X = sheaf.X
    code = CocycleCode(sheaf, signs, level)
    w_uni = {x: Fraction(1, max(X.n_faces(level), 1)) for x in X.faces(level)}
    n_up = X.n_faces(level + 1)
    w_uni_up = {y: Fraction(1, n_up) for y in X.faces(level + 1)} if n_up else {}
    mu, mu_wit = _coset_expansion(code, w_uni, w_uni_up, code.Z_basis, budget)
    vacuous = is_infinite(mu)
    if w is None:
        w = natural_weight(X)
    cse_w, _ = _coset_expansion(code, w, w, code.Z_basis, budget)
    cc = counting_constants(X)
    d = X.d
    M = cc.L(level, d) * cc.U(level, d)
    Mp = cc.L(level + 1, d) * cc.U(level + 1, d) if level + 1 <= d else None
    if vacuous or is_infinite(cse_w) or Mp is None:
        bound = None
    else:
        bound = cse_w / (M * Mp)
    return {"soundness": mu, "vacuous": vacuous, "witness": mu_wit,
            "bound": bound, "cse_w": cse_w, "M": M, "Mp": Mp}
