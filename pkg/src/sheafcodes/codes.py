"""Block codes, lifted codes and their line codes, agreement testers, and
transfer of distance/testability/decodability between a lifted code and its
line code.  Includes a small code zoo (repetition, Reed-Solomon, tensor,
random linear).

Alphabet convention: symbols of a linear code are elements of the base field;
symbols of a line code are the restricted small-codewords themselves, which
realizes the bijection C_s <-> Sigma' without an arbitrary relabelling.
"""

import csv
import io
import random
from fractions import Fraction
from itertools import product

from .algebra import GF, Matrix, in_span, kernel_image, span_iter, tensor_matrix
from .expansion import WeightedGraph
from .oracle import INF, BudgetError, is_infinite

ENUM_BUDGET = 2 ** 24


class BlockCode:
    """A linear code of block length n over a field, given by a generator
    basis (list of length-n tuples).  Coordinates may carry labels."""

    def __init__(self, field, n, basis, coords=None):
        self.field = field
        self.n = n
        self.basis = [tuple(b) for b in basis]
        for b in self.basis:
            if len(b) != n:
                raise ValueError("generator length mismatch")
        self.coords = list(coords) if coords is not None else list(range(n))
        if len(self.coords) != n:
            raise ValueError("coordinate label count mismatch")
        self._words = None

    @property
    def dim(self):
        return len(self.basis)

    def size(self):
        return self.field.q ** self.dim

    def words(self, budget=ENUM_BUDGET):
        if self._words is None:
            if self.size() > budget:
                raise BudgetError("code too large to enumerate")
            self._words = [vec for _, vec in span_iter(self.field, self.basis)]
        return self._words

    def contains(self, word):
        return in_span(self.basis, tuple(word), self.field)

    def restrict(self, word, positions):
        return tuple(word[i] for i in positions)


class CodeMetrics:
    def __init__(self, delta, rate, degenerate=False):
        self.delta = delta
        self.rate = rate
        self.degenerate = degenerate

    def __iter__(self):
        return iter((self.delta, self.rate))


def code_metrics(code, budget=ENUM_BUDGET):
    """Exact relative distance (min over distinct pairs = min nonzero weight
    for linear codes) and rate dim/n.  One-word codes get delta = 1 with the
    degenerate flag set."""
    if code.n == 0:
        raise ValueError("empty block")
    if code.dim == 0:
        return CodeMetrics(Fraction(1), Fraction(0), degenerate=True)
    best = None
    for w in code.words(budget):
        if not any(w):
            continue
        wt = sum(1 for e in w if e)
        if best is None or wt < best:
            best = wt
    return CodeMetrics(Fraction(best, code.n), Fraction(code.dim, code.n))


def hamming_dist(u, v):
    return Fraction(sum(1 for a, b in zip(u, v) if a != b), len(u))


# --- code zoo ---

def repetition_code(field, n):
    return BlockCode(field, n, [(1,) * n])


def reed_solomon(field, m, k, points=None):
    "Evaluations of polynomials of degree < m at k distinct field points."
    if points is None:
        points = field.elements()[:k]
    if len(set(points)) != k or k > field.q:
        raise ValueError("need k distinct evaluation points")
    basis = []
    for j in range(m):
        basis.append(tuple(field.pow(x, j) for x in points))
    return BlockCode(field, k, basis)


def tensor_code(C1, C2):
    "C1 (x) C2: matrices with columns in C1 and rows in C2, row-major coords."
    F = C1.field
    if C2.field is not F:
        raise ValueError("field mismatch")
    G1 = Matrix.from_rows(F, [list(b) for b in C1.basis]) if C1.basis else \
        Matrix(F, 0, C1.n, [])
    G2 = Matrix.from_rows(F, [list(b) for b in C2.basis]) if C2.basis else \
        Matrix(F, 0, C2.n, [])
    G = tensor_matrix(G1, G2)
    basis = [tuple(G.rows[r]) for r in range(G.nrows)]
    coords = [(i, j) for i in range(C1.n) for j in range(C2.n)]
    return BlockCode(F, C1.n * C2.n, basis, coords)


def random_linear_code(field, n, k, seed=0, min_delta=None, tries=200):
    "Seeded random generator matrix, rejection-sampled to reach min_delta."
    rng = random.Random(seed)
    for _ in range(tries):
        basis = [tuple(rng.randrange(field.q) for _ in range(n))
                 for _ in range(k)]
        M = Matrix.from_rows(field, [list(b) for b in basis])
        _, img, rank = kernel_image(M.transpose())
        if rank != k:
            continue
        code = BlockCode(field, n, basis)
        if min_delta is None or code_metrics(code).delta >= min_delta:
            return code
    raise RuntimeError("no code with the requested distance found")


# --- set systems and lifted codes ---

class SetSystem:
    """Subsets of [n] with a small code on each; the lifted code is
    C = {g : g|_s in C_s for all s}."""

    def __init__(self, field, n, subsets, small_codes):
        self.field = field
        self.n = n
        self.subsets = [tuple(s) for s in subsets]
        self.small_codes = list(small_codes)
        if len(self.subsets) != len(self.small_codes):
            raise ValueError("one code per subset required")
        covered = set()
        for s, c in zip(self.subsets, self.small_codes):
            if len(set(s)) != len(s) or not all(0 <= i < n for i in s):
                raise ValueError(f"bad subset {s}")
            if c.n != len(s):
                raise ValueError(f"code length != |s| for {s}")
            covered.update(s)
        if covered != set(range(n)):
            raise ValueError("subsets do not cover the ground set")

    @property
    def S(self):
        return len(self.subsets)

    def k_min(self):
        return min(len(s) for s in self.subsets)

    def k_max(self):
        return max(len(s) for s in self.subsets)

    def degree(self, i):
        return sum(1 for s in self.subsets if i in s)

    def D_min(self):
        return min(self.degree(i) for i in range(self.n))

    def D_max(self):
        return max(self.degree(i) for i in range(self.n))

    def k_tilde(self):
        "min over s of delta(C_s)|s|; an integer in {1, ..., k_max}."
        vals = [code_metrics(c).delta * len(s)
                for s, c in zip(self.subsets, self.small_codes)]
        return min(vals)

    def gamma(self):
        return Fraction(self.S, self.n)

    def local_word(self, g, idx):
        return tuple(g[i] for i in self.subsets[idx])

    def local_ok(self, g, idx):
        return self.small_codes[idx].contains(self.local_word(g, idx))

    def rejection_fraction(self, g):
        "Fraction of subsets whose small-code constraint g violates."
        bad = sum(1 for idx in range(self.S) if not self.local_ok(g, idx))
        return Fraction(bad, self.S)


def lifted_build(sys):
    "The lifted code C as a BlockCode (kernel of the stacked local checks)."
    F = sys.field
    rows = []
    for s, c in zip(sys.subsets, sys.small_codes):
        if c.basis:
            G = Matrix.from_rows(F, [list(b) for b in c.basis])
            duals, _, _ = kernel_image(G)
        else:
            duals = [tuple(int(j == t) for j in range(len(s)))
                     for t in range(len(s))]
        for h in duals:
            row = [0] * sys.n
            for pos, i in enumerate(s):
                row[i] = F.add(row[i], h[pos])
            rows.append(row)
    if rows:
        H = Matrix.from_rows(F, rows)
        Z, _, _ = kernel_image(H)
    else:
        Z = [tuple(int(j == t) for j in range(sys.n)) for t in range(sys.n)]
    return BlockCode(F, sys.n, Z)


class LineCodeView:
    """The line code L of a lifted code: words are ensembles (g|_s)_{s in S};
    the symbol at coordinate s is the restricted tuple itself."""

    def __init__(self, sys, budget=ENUM_BUDGET):
        self.sys = sys
        self.lifted = lifted_build(sys)
        self.words = []
        seen = set()
        for g in self.lifted.words(budget):
            ens = tuple(sys.local_word(g, idx) for idx in range(sys.S))
            if ens not in seen:
                seen.add(ens)
                self.words.append(ens)
        self.to_lifted = {ens: g for ens, g in
                          zip((tuple(sys.local_word(g, i) for i in range(sys.S))
                               for g in self.lifted.words(budget)),
                              self.lifted.words(budget))}

    def sigma_dims(self):
        return [c.dim for c in self.sys.small_codes]

    def rate(self):
        "log_{|Sigma'^S|}|L| with Sigma' the common small-code alphabet."
        dims = set(self.sigma_dims())
        if len(dims) != 1:
            raise ValueError("rate needs small codes of equal size")
        ks = dims.pop()
        if ks == 0:
            return Fraction(0)
        return Fraction(self.lifted.dim, self.sys.S * ks)

    def delta(self):
        if len(self.words) <= 1:
            return Fraction(1)
        best = None
        for a in range(len(self.words)):
            for b in range(a + 1, len(self.words)):
                d = hamming_dist(self.words[a], self.words[b])
                if best is None or d < best:
                    best = d
        return best

    def dist_to(self, ensemble):
        return min(hamming_dist(ensemble, wd) for wd in self.words)


def line_lifted_relations(sys, budget=ENUM_BUDGET):
    """The exact rate identity and the two-sided distance comparison between
    a lifted code and its line code.  Returns a dict of the quantities and
    pass flags."""
    C = lifted_build(sys)
    L = LineCodeView(sys, budget)
    mC = code_metrics(C, budget)
    rL = L.rate()
    dL = L.delta()
    kmin, kmax = sys.k_min(), sys.k_max()
    Dmin, Dmax = sys.D_min(), sys.D_max()
    kt = sys.k_tilde()
    gamma_factor = sys.gamma() * set(L.sigma_dims()).pop()
    lo = Fraction(Dmin, Dmax) * Fraction(kt, kmax) * dL
    hi = Fraction(Dmax * kmax, Dmin * kmin) * dL
    size_lo = Fraction(Dmin, kmax) * sys.n
    size_hi = Fraction(Dmax, kmin) * sys.n
    return {
        "r_C": mC.rate, "r_L": rL, "rate_identity": mC.rate == gamma_factor * rL,
        "delta_C": mC.delta, "delta_L": dL,
        "delta_lower": lo, "delta_upper": hi,
        "delta_bounds_hold": lo <= mC.delta <= hi,
        "size_bounds_hold": size_lo <= sys.S <= size_hi,
    }


# --- agreement testers ---

class AgreementTester:
    """A normalized weighted graph whose vertices are the subsets of a set
    system, with edges labelled by common sub-subsets."""

    def __init__(self, sys, graph, edge_labels):
        self.sys = sys
        self.graph = graph  # vertices are subset indices
        self.edge_labels = dict(edge_labels)  # edge tag -> tuple of coords
        for u, v, _, tag in graph.edges:
            lab = set(self.edge_labels[tag])
            if not (lab <= set(sys.subsets[u]) and lab <= set(sys.subsets[v])):
                raise ValueError(f"edge label not contained in its endpoints: {tag}")

    def ensemble_space_size(self):
        total = 1
        for c in self.sys.small_codes:
            total *= c.size()
        return total


def intersection_tester(sys):
    "Uniformly weighted intersection graph of S with labels s cap s'."
    idxs = range(sys.S)
    edges = []
    labels = {}
    for a in idxs:
        for b in idxs:
            if a >= b:
                continue
            common = tuple(sorted(set(sys.subsets[a]) & set(sys.subsets[b])))
            if common:
                tag = (a, b)
                edges.append((a, b, None, tag))
                labels[tag] = common
    if not edges:
        raise ValueError("intersection graph has no edges")
    m = len(edges)
    edges = [(a, b, Fraction(1, m), tag) for a, b, _, tag in edges]
    vw = {i: Fraction(1, sys.S) for i in idxs}
    return AgreementTester(sys, WeightedGraph(vw, edges), labels)


def _edge_disagreement(tester, ensemble):
    sys = tester.sys
    pos = [{i: p for p, i in enumerate(s)} for s in sys.subsets]
    total = Fraction(0)
    for u, v, we, tag in tester.graph.edges:
        lab = tester.edge_labels[tag]
        fu, fv = ensemble[u], ensemble[v]
        if any(fu[pos[u][i]] != fv[pos[v][i]] for i in lab):
            total += we
    return total


def agreement_soundness_exact(tester, budget=ENUM_BUDGET):
    """Exact soundness per the defining inequality: min over ensembles of
    (disagreeing-edge weight) / (min over g in C of the weight of vertices
    where g disagrees), skipping ensembles realized by some g in C."""
    sys = tester.sys
    if tester.ensemble_space_size() > budget:
        raise BudgetError("ensemble space exceeds the budget")
    C = lifted_build(sys)
    cwords = C.words(budget)
    c_ensembles = [tuple(sys.local_word(g, i) for i in range(sys.S))
                   for g in cwords]
    vw = tester.graph.vw
    best = INF
    witness = None
    for ensemble in product(*[c.words(budget) for c in sys.small_codes]):
        denom = None
        for ce in c_ensembles:
            wt = sum((vw[i] for i in range(sys.S) if ensemble[i] != ce[i]),
                     Fraction(0))
            if denom is None or wt < denom:
                denom = wt
            if denom == 0:
                break
        if denom == 0:
            continue
        ratio = _edge_disagreement(tester, ensemble) / denom
        if ratio < best:
            best, witness = ratio, ensemble
    return best, witness


def tensor_agreement(C1, C2, budget=ENUM_BUDGET):
    """Agreement testability of C1 (x) C2 via its row/column set system on
    the naturally weighted complete bipartite graph."""
    F = C1.field
    n1, n2 = C1.n, C2.n
    coords = {(i, j): i * n2 + j for i in range(n1) for j in range(n2)}
    subsets = [tuple(coords[i, j] for j in range(n2)) for i in range(n1)]
    subsets += [tuple(coords[i, j] for i in range(n1)) for j in range(n2)]
    small = [BlockCode(F, n2, C2.basis) for _ in range(n1)]
    small += [BlockCode(F, n1, C1.basis) for _ in range(n2)]
    sys = SetSystem(F, n1 * n2, subsets, small)
    vw = {i: Fraction(1, 2 * n1) for i in range(n1)}
    vw.update({n1 + j: Fraction(1, 2 * n2) for j in range(n2)})
    edges = []
    labels = {}
    for i in range(n1):
        for j in range(n2):
            tag = (i, n1 + j)
            edges.append((i, n1 + j, Fraction(1, n1 * n2), tag))
            labels[tag] = (coords[i, j],)
    tester = AgreementTester(sys, WeightedGraph(vw, edges), labels)
    return agreement_soundness_exact(tester, budget)


# --- testers for the lifted code and the line code ---

def natural_tester_soundness(sys, budget=ENUM_BUDGET):
    """Exact soundness of the natural tester: min over g outside C of
    (rejection probability) / dist(g, C).  INF when C is the whole space."""
    F = sys.field
    if F.q ** sys.n > budget:
        raise BudgetError("word space exceeds the budget")
    C = lifted_build(sys)
    cwords = C.words(budget)
    cset = set(cwords)
    best = INF
    for g in product(range(F.q), repeat=sys.n):
        if g in cset:
            continue
        dist = min(hamming_dist(g, c) for c in cwords)
        ratio = sys.rejection_fraction(g) / dist
        if ratio < best:
            best = ratio
    return best


def line_tester_soundness(tester, budget=ENUM_BUDGET):
    """Exact soundness of the 2-query edge tester of the line code: min over
    ensembles outside L of (disagreeing-edge weight) / dist(f, L) with the
    uniform metric on S."""
    sys = tester.sys
    if tester.ensemble_space_size() > budget:
        raise BudgetError("ensemble space exceeds the budget")
    L = LineCodeView(sys, budget)
    lwords = set(L.words)
    best = INF
    for ensemble in product(*[c.words(budget) for c in sys.small_codes]):
        if ensemble in lwords:
            continue
        ratio = _edge_disagreement(tester, ensemble) / L.dist_to(ensemble)
        if ratio < best:
            best = ratio
    return best


def natural_from_line_bound(sys, mu_line, d_min, d_max):
    "Soundness guaranteed for the natural tester given line-tester soundness."
    if mu_line == 0:
        return Fraction(0)
    return Fraction(sys.k_min() * sys.D_min(), sys.k_max() * sys.D_max()) * \
        mu_line / (mu_line + Fraction(2 * d_max, d_min))


def line_from_natural_bound(sys, mu_nat, d_max):
    "Soundness guaranteed for the intersection-graph line tester."
    if mu_nat == 0:
        return Fraction(0)
    Dmin, Dmax = sys.D_min(), sys.D_max()
    kmin, kmax = sys.k_min(), sys.k_max()
    return Fraction(Dmin * kmin, 1) * mu_nat / (
        d_max * Dmax ** 2 * kmax ** 2 * (mu_nat + Fraction(Dmax * kmax, Dmin)))


def agreement_testability_bounds(sys, mu, D, k):
    "The two-way agreement/local testability constants for D_max<=D, k_max<=k."
    return {"natural_from_agreement": mu / (k * D * (1 + 2 * k * D)),
            "agreement_from_natural": mu / (k ** 3 * D ** 3 * (1 + k * D))}


# --- decoder transfer ---

def brute_decoder(words, metric=hamming_dist):
    "Nearest-codeword decoder by enumeration; ties resolved by first found."
    words = list(words)

    def decode(word):
        return min(words, key=lambda c: (metric(word, c), words.index(c)))
    return decode


def line_decode(sys, line_decoder, budget=ENUM_BUDGET):
    """Lift a line-code decoder to the lifted code: project locally, decode
    the ensemble, read off the global word.  Correct within radius
    (D_min / (D_max k_max)) eta when the line decoder handles radius eta."""
    def decode(g):
        f = []
        for idx, (s, c) in enumerate(zip(sys.subsets, sys.small_codes)):
            w = sys.local_word(g, idx)
            f.append(w if c.contains(w) else c.words(budget)[0])
        f0 = line_decoder(tuple(f))
        out = [None] * sys.n
        for idx, s in enumerate(sys.subsets):
            for pos, i in enumerate(s):
                out[i] = f0[idx][pos]
        return tuple(out)
    return decode


def line_decode_radius(sys, eta):
    return Fraction(sys.D_min(), sys.D_max() * sys.k_max()) * eta


def lifted_decode(sys, lifted_decoder, tester=None, budget=ENUM_BUDGET):
    """Transfer a lifted-code decoder to the line code via the intersection
    graph: erase coordinates touched by disagreeing edges, decode the global
    word, restrict back."""
    if tester is None:
        tester = intersection_tester(sys)
    pos = [{i: p for p, i in enumerate(s)} for s in sys.subsets]

    def decode(f):
        bad_vertices = set()
        for u, v, _, tag in tester.graph.edges:
            lab = tester.edge_labels[tag]
            if any(f[u][pos[u][i]] != f[v][pos[v][i]] for i in lab):
                bad_vertices.update((u, v))
        M = set()
        for u in bad_vertices:
            M.update(sys.subsets[u])
        g = [None] * sys.n
        for i in range(sys.n):
            if i in M:
                g[i] = 0
            else:
                for idx, s in enumerate(sys.subsets):
                    if i in s:
                        g[i] = f[idx][pos[idx][i]]
                        break
        g0 = lifted_decoder(tuple(g))
        return tuple(sys.local_word(g0, idx) for idx in range(sys.S))
    return decode


def lifted_decode_radius(sys, mu_nat, eta, delta_L, d_min, d_max):
    "The transferred line-decoder radius eta' for the intersection graph."
    Dmin, Dmax = sys.D_min(), sys.D_max()
    kmin, kmax = sys.k_min(), sys.k_max()
    if mu_nat == 0:
        return Fraction(0)
    a = Fraction(d_min * Dmin * kmin, 2 * d_max ** 2 * Dmax ** 2 * kmax ** 2) \
        * mu_nat * eta
    big = Fraction(2 * d_max ** 2 * Dmax ** 2 * kmax ** 2, 1) * \
        (mu_nat + Fraction(Dmax * kmax, Dmin)) / \
        (Fraction(d_min * Dmin * kmin, 1) * mu_nat)
    b = delta_L / (big + 1)
    return min(a, b)


# --- serialization ---

def set_system_to_json(sys):
    return {"n": sys.n,
            "subsets": [list(s) for s in sys.subsets],
            "codes": [[list(b) for b in c.basis] for c in sys.small_codes]}


def set_system_from_json(field, doc):
    subsets = [tuple(s) for s in doc["subsets"]]
    codes = [BlockCode(field, len(s), [tuple(b) for b in bas])
             for s, bas in zip(subsets, doc["codes"])]
    return SetSystem(field, doc["n"], subsets, codes)


def code_table_csv(named_codes):
    "CSV rows (name, n, k, delta, r) for a list of (name, BlockCode) pairs."
    buf = io.StringIO()
    wr = csv.writer(buf)
    wr.writerow(["name", "n", "k", "delta", "r"])
    for name, code in named_codes:
        m = code_metrics(code)
        wr.writerow([name, code.n, code.dim, str(m.delta), str(m.rate)])
    return buf.getvalue()
