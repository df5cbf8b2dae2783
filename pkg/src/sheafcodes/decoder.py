"""Mock local minimality, the iterative correction algorithm, its queue-based
variant, and cocycle-code decoding built on them.

Determinism contract: faces are scanned by (dimension asc, id asc); local
coboundary candidates are enumerated in Gray order over the echelon image
basis; the first candidate violating the minimality certificate is accepted.
The queue variant pops the (dim, id)-least dirty face, which provably chooses
the same faces as the full scan and therefore returns the same output.
"""

import csv
import io
from fractions import Fraction

from .algebra import kernel_image, solve, span_iter
from .oracle import BudgetError, ENUM_BUDGET
from .poset import counting_constants, face_name
from .sheaf import Cochain, apply_d, d_matrix, extend_cochain, link_signs


def mock_coefficient(cc, i, level, d):
    "The weight-comparison factor multiplying q*w(u) in the certificate."
    return Fraction(cc.F_min(i, level, d) * cc.F_min(i, d), cc.F_max(level, d))


def correction_norm_constant(X, k):
    "Upper-bound constant: ||g|| <= C q^{-1} ||h|| for the correction output."
    cc = counting_constants(X)
    d = X.d
    return max(Fraction(cc.F_max(i, k, d) * cc.F_max(i, d), cc.F_min(k, d))
               for i in range(0, k + 1))


class _LocalData:
    "Per-face link sheaf, orientation and local coboundary basis (cached)."

    def __init__(self, sheaf, signs, level):
        self.sheaf = sheaf
        self.signs = signs
        self.level = level  # the cochain level whose minimality is certified
        self.cache = {}

    def at(self, u):
        if u in self.cache:
            return self.cache[u]
        S = self.sheaf
        X = S.X
        i = X.dim(u)
        Su = S.link(u)
        lsigns = link_signs(self.signs, Su.X)
        lvl = self.level - i - 2  # g' lives here; d g' in B^{level-i-1}(X_u)
        if lvl < -1:
            entry = (Su, lsigns, None, [], None)
        else:
            D = d_matrix(Su, lsigns, lvl)
            _, img, _ = kernel_image(D)
            entry = (Su, lsigns, D, img, lvl)
        self.cache[u] = entry
        return entry


def candidate_faces(X, level):
    "Faces u with 0 <= dim u <= level - 1 in the deterministic order."
    out = []
    for j in range(0, level):
        out.extend(X.faces(j))
    return out


def is_mock_minimal(sheaf, signs, f, q, w, faces=None, local=None,
                    budget=ENUM_BUDGET):
    """Whether the cochain f is mock q-locally minimal, with the first
    violating (u, b-extension) as witness.  Checks all u with
    0 <= dim u <= level (top-level faces are trivially minimal)."""
    X = sheaf.X
    level = f.level
    cc = counting_constants(X)
    if local is None:
        local = _LocalData(sheaf, signs, level)
    if faces is None:
        faces = candidate_faces(X, level) + X.faces(level)
    base = f.norm(w)
    for u in faces:
        i = X.dim(u)
        _, _, _, img, _ = local.at(u)
        if not img:
            continue
        if sheaf.field.q ** len(img) > budget:
            raise BudgetError(f"local coboundary space at {u!r} too large")
        Su = local.at(u)[0]
        slack = mock_coefficient(cc, i, level, X.d) * q * w[u]
        for _, bvec in span_iter(sheaf.field, img):
            if not any(bvec):
                continue
            b = Cochain(Su, level - i - 1, _unflatten(Su, level - i - 1, bvec))
            cand = f + extend_cochain(b, sheaf, u)
            if base > cand.norm(w) + slack:
                return False, (u, bvec)
    return True, None


def _unflatten(link_sheaf, lvl, vec):
    data = {}
    pos = 0
    for x in link_sheaf.X.faces(lvl):
        n = link_sheaf.dims[x]
        data[x] = tuple(vec[pos:pos + n])
        pos += n
    return data


def _violation_at(sheaf, signs, h, q, w, u, cc, local, budget):
    "First certificate-violating local coboundary at u, or None."
    X = sheaf.X
    i = X.dim(u)
    Su, lsigns, D, img, lvl = local.at(u)
    if not img:
        return None
    if sheaf.field.q ** len(img) > budget:
        raise BudgetError(f"local coboundary space at {u!r} too large")
    base = h.norm(w)
    slack = mock_coefficient(cc, i, h.level, X.d) * q * w[u]
    for _, bvec in span_iter(sheaf.field, img):
        if not any(bvec):
            continue
        b = Cochain(Su, h.level - i - 1, _unflatten(Su, h.level - i - 1, bvec))
        cand = h + extend_cochain(b, sheaf, u)
        if base > cand.norm(w) + slack:
            gvec = solve(D, bvec)
            gprime = Cochain(Su, lvl, _unflatten(Su, lvl, gvec))
            return b, gprime, cand.norm(w)
    return None


class CorrectionTrace:
    "Step log: (step, face, dim, norm-before, norm-after)."

    def __init__(self):
        self.steps = []

    def add(self, u, dim, before, after):
        self.steps.append((len(self.steps), u, dim, before, after))

    def __len__(self):
        return len(self.steps)

    def to_csv(self):
        buf = io.StringIO()
        wr = csv.writer(buf)
        wr.writerow(["step", "face", "dim", "norm-before", "norm-after"])
        for step, u, dim, before, after in self.steps:
            wr.writerow([step, face_name(u), dim, str(before), str(after)])
        return buf.getvalue()


def correct_simple(sheaf, signs, h, q, w, budget=ENUM_BUDGET):
    """Repeatedly cancel certificate-violating local coboundaries from h by
    full rescans, returning (g, trace) with h + dg mock q-locally minimal."""
    X = sheaf.X
    level = h.level
    k = level - 1
    cc = counting_constants(X)
    local = _LocalData(sheaf, signs, level)
    faces = candidate_faces(X, level)
    g = Cochain(sheaf, k, {})
    trace = CorrectionTrace()
    cur = h
    while True:
        hit = None
        for u in faces:
            v = _violation_at(sheaf, signs, cur, q, w, u, cc, local, budget)
            if v is not None:
                hit = (u, v)
                break
        if hit is None:
            return g, trace
        u, (b, gprime, after) = hit
        trace.add(u, X.dim(u), cur.norm(w), after)
        cur = cur + extend_cochain(b, sheaf, u)
        if gprime is not None:
            g = g + extend_cochain(gprime, sheaf, u)


def correct_efficient(sheaf, signs, h, q, w, budget=ENUM_BUDGET):
    """Queue-based variant: only faces whose neighbourhood changed are
    re-examined; the (dim, id)-least dirty face is processed first, so the
    output coincides with correct_simple."""
    X = sheaf.X
    level = h.level
    k = level - 1
    cc = counting_constants(X)
    local = _LocalData(sheaf, signs, level)
    key = lambda u: (X.dim(u), repr(u))
    dirty = set(candidate_faces(X, level))
    g = Cochain(sheaf, k, {})
    trace = CorrectionTrace()
    cur = h
    pops = 0
    while dirty:
        u = min(dirty, key=key)
        dirty.discard(u)
        pops += 1
        v = _violation_at(sheaf, signs, cur, q, w, u, cc, local, budget)
        if v is None:
            continue
        b, gprime, after = v
        trace.add(u, X.dim(u), cur.norm(w), after)
        cur = cur + extend_cochain(b, sheaf, u)
        if gprime is not None:
            g = g + extend_cochain(gprime, sheaf, u)
        for y in X.above(u, level):
            for j in range(0, level):
                dirty.update(X.below(y, j))
    trace.pops = pops
    return g, trace


def decode_cocycle(sheaf, signs, f, q, w, efficient=False, budget=ENUM_BUDGET):
    """Correct f toward the cocycle space: returns (f', in_Z, trace) where
    f' = f + g with g the correction of df.  in_Z reports whether d f' = 0;
    a False value signals that the input was out of decoding range.  (Inputs
    beyond the radius may also land on a different cocycle; within the radius
    the unique closest one is returned.)"""
    h = apply_d(sheaf, signs, f)
    run = correct_efficient if efficient else correct_simple
    g, trace = run(sheaf, signs, h, q, w, budget)
    f_prime = f + g
    in_Z = apply_d(sheaf, signs, f_prime).is_zero()
    return f_prime, in_Z, trace


def decoding_radius(M, ccd, A, B):
    "Decoding radius (1/M) min{ccd/(B+1), A} of the correction decoder."
    return Fraction(1, M) * min(ccd / (B + 1), A)
