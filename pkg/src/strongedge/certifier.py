"""Conflict polynomials of ``C_n^+`` configurations and Nullstellensatz certificates.

Variable numbering follows the edge ids of :func:`strongedge.graph.gen_cnplus`:
``x_i`` (cycle edge ``e_i``) is variable ``i mod n`` and ``y_i`` (pendant
``f_i``) is variable ``n + (i mod n)``, so ``x_n`` and ``x_0`` coincide.

Certificate semantics: if ``deg J`` equals the number of factors, the
coefficient of ``J`` is non-zero and every edge ``e`` has a list of at least
``i_e + 1`` usable colors, the edges can be colored so that every factor pair
receives distinct colors.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InputError
from .polynomial import (
    ONE,
    CapVector,
    FactorProduct,
    Monomial,
    Polynomial,
    eliminate_variable,
    eta_of_product,
    eta_partial,
    expand_capped,
)

CLAIM1_ETA = -5


def _xv(n, i):
    return i % n


def _yv(n, i):
    return n + i % n


def cn_names(n):
    """Display names ``x_i`` / ``y_i`` (1-based, as on the cycle) for the ``C_n^+`` variables."""
    def name(v):
        if v < n:
            return f"x{v or n}"
        return f"y{(v - n) or n}"
    return name


# -- Claim 1: C_6 -------------------------------------------------------------------

def build_p1():
    """The 45-factor polynomial of the 6-cycle configuration, its monomial ``J`` and list-size bounds.

    Factors: the 42 conflicts of ``C_6^+`` plus the three antipodal pendant
    pairs ``(y_i, y_{i+3})``, each written ``(lower - higher)`` in the order
    ``x_1..x_6, y_1..y_6``.
    """
    n = 6
    X = lambda i: _xv(n, i)
    Y = lambda i: _yv(n, i)
    f = []
    for i in range(1, 7):
        for j in range(i + 1, 7):
            if j != i + 3:
                f.append((X(i), X(j)))
    for i in range(1, 7):
        for j in range(1, 7):
            if (j - i) % 6 not in (3, 4):
                f.append((X(i), Y(j)))
    for i in range(1, 6):
        f.append((Y(i), Y(i + 1)))
    f.append((Y(1), Y(6)))
    for i in range(1, 4):
        f.append((Y(i), Y(i + 3)))
    p = FactorProduct(2 * n, tuple(f))
    xs = {1: 4, 2: 5, 3: 5, 4: 5, 5: 5, 6: 5}
    ys = {1: 3, 2: 2, 3: 2, 4: 3, 5: 3, 6: 3}
    j = Monomial([(X(i), e) for i, e in xs.items()] + [(Y(i), e) for i, e in ys.items()])
    s_bounds = tuple([6] * n + [5] * n)
    return p, j, s_bounds


def p1_antipodal_indices(p=None):
    """Positions of the three ``(y_i - y_{i+3})`` factors in :func:`build_p1`."""
    p = p or build_p1()[0]
    anti = {frozenset((_yv(6, i), _yv(6, i + 3))) for i in range(1, 4)}
    return [k for k, f in enumerate(p.factors) if frozenset(f) in anti]


# -- Claim 2: C_n, n >= 7 -------------------------------------------------------------

def claim2_pieces(n, orientation="cyclic"):
    """The blocks ``P(0), ..., P(n)`` as factor products.

    ``orientation="printed"`` writes the last factor of ``P(n)`` as
    ``(y_1 - y_n)``; the default ``"cyclic"`` writes ``(y_n - y_1)``, continuing
    the ``(y_{i+1} - y_{i+2})`` pattern of the earlier blocks. Only the sign
    of coefficients differs between the two.
    """
    if n < 7:
        raise InputError(f"Claim 2 configurations need n >= 7, got {n}")
    if orientation not in ("cyclic", "printed"):
        raise InputError(f"unknown orientation {orientation!r}")
    X = lambda i: _xv(n, i)
    Y = lambda i: _yv(n, i)
    nv = 2 * n
    pieces = []
    for i in range(n - 1):
        f = []
        for l in (i + 1, i + 2):
            f += [(X(i), X(l)), (X(i), Y(l)), (Y(i + 1), X(l))]
        f.append((Y(i + 1), Y(i + 2)))
        pieces.append(FactorProduct(nv, tuple(f)))
    pieces.append(FactorProduct(nv, ((X(n - 1), X(n)), (X(n - 1), Y(n)), (Y(n), X(n)))))
    last = (Y(n), Y(1)) if orientation == "cyclic" else (Y(1), Y(n))
    pieces.append(FactorProduct(nv, ((X(1), X(n - 1)), (X(1), Y(n)), (Y(1), X(n - 1)), last)))
    return pieces


def claim2_j_parts(n):
    """``{0: J(0), 5: J(5), ..., n-1: J(n-1)}``."""
    X = lambda i: _xv(n, i)
    Y = lambda i: _yv(n, i)
    parts = {0: Monomial([(X(1), 5), (X(2), 5), (X(3), 4), (X(4), 5)] + [(Y(i), 3) for i in range(1, 6)])}
    for i in range(5, n - 1):
        parts[i] = Monomial([(X(i), 4), (Y(i + 1), 3)])
    parts[n - 1] = Monomial([(X(n - 1), 4), (Y(n), 2), (X(n), 2)])
    return parts


def build_claim2(n, orientation="cyclic"):
    pieces = claim2_pieces(n, orientation)
    p = FactorProduct(2 * n, tuple(f for piece in pieces for f in piece.factors))
    j = ONE
    for part in claim2_j_parts(n).values():
        j = j * part
    s_bounds = tuple([6] * n + [4] * n)
    return p, j, s_bounds


# -- reports --------------------------------------------------------------------------

@dataclass
class ClaimReport:
    claim: str
    n: int | None
    method: str
    value: int | None = None
    expected: int | None = None
    elapsed: float = 0.0
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def check(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))
        return ok

    @property
    def passed(self):
        return self.value is not None and self.value == self.expected and all(ok for _, ok, _ in self.checks)

    def render(self):
        lines = [f"claim {self.claim}" + (f" n={self.n}" if self.n is not None else "") + f" method={self.method}"]
        for name, ok, detail in self.checks:
            lines.append(f"CHECK {name} {'ok' if ok else 'FAIL'}" + (f" {detail}" if detail else ""))
        lines.append(f"RESULT eta {self.value}")
        lines.append(f"RESULT expected {self.expected}")
        lines.append(f"RESULT elapsed {self.elapsed:.3f}")
        lines.append(f"RESULT verdict {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def verify_claim1(p=None, j=None, order=None):
    t0 = time.perf_counter()
    if p is None or j is None:
        p0, j0, _ = build_p1()
        p = p if p is not None else p0
        j = j if j is not None else j0
    rep = ClaimReport("1", 6, "direct", expected=CLAIM1_ETA)
    rep.check("factor-count", p.degree == 45, f"deg(P1)={p.degree}")
    rep.check("deg-J", j.degree == p.degree, f"deg(J)={j.degree}")
    if rep.checks[0][1]:
        rep.value = eta_of_product(p, j, order=order).constant_term()
    rep.elapsed = time.perf_counter() - t0
    return rep


def check_subproduct(parent, child):
    """True iff every factor of ``child`` occurs in ``parent`` (as unordered pairs, with multiplicity)."""
    return not (child.pair_multiset() - parent.pair_multiset())


def _expected_claim2(n):
    return 1 if n == 7 else (-1) ** (n - 1)


def verify_claim2_direct(n, orientation="cyclic"):
    if not 7 <= n <= 9:
        raise InputError(f"direct Claim 2 computation supports 7 <= n <= 9, got {n}")
    t0 = time.perf_counter()
    p, j, _ = build_claim2(n, orientation)
    rep = ClaimReport("2", n, "direct", expected=_expected_claim2(n))
    rep.check("factor-count", p.degree == 7 * n, f"deg(P)={p.degree}")
    rep.check("deg-J", j.degree == p.degree, f"deg(J)={j.degree}")
    rep.value = eta_of_product(p, j).constant_term()
    rep.elapsed = time.perf_counter() - t0
    return rep


def stage0_expected(n):
    """``x_{n-1}^2 (x_6 + y_6) y_n^2``."""
    X = lambda i: _xv(n, i)
    Y = lambda i: _yv(n, i)
    base = Polynomial({Monomial({X(n - 1): 2, Y(n): 2}): 1})
    return base * (Polynomial.var(X(6)) + Polynomial.var(Y(6)))


def verify_claim2_staged(n, orientation="cyclic"):
    """Reproduce the staged extraction ``J(0)``, then ``J(5), ..., J(n-2)``, then ``J(n-1)``.

    Every intermediate polynomial is compared exactly with its closed form.
    """
    if n < 8:
        raise InputError(f"staged Claim 2 computation needs n >= 8, got {n}")
    t0 = time.perf_counter()
    X = lambda i: _xv(n, i)
    Y = lambda i: _yv(n, i)
    names = cn_names(n)
    pieces = claim2_pieces(n, orientation)
    jparts = claim2_j_parts(n)
    rep = ClaimReport("2", n, "staged", expected=_expected_claim2(n))

    block = pieces[n]
    for i in range(5):
        block = block + pieces[i]
    cur = eta_of_product(block, jparts[0])
    want = stage0_expected(n)
    if not rep.check("eta_J(0)", cur == want, cur.to_str(names)):
        rep.elapsed = time.perf_counter() - t0
        return rep

    carried = Polynomial({Monomial({X(n - 1): 2, Y(n): 2}): 1})
    for k in range(5, n - 1):
        remaining = FactorProduct(2 * n, tuple(f for piece in pieces[k + 1:n] for f in piece.factors))
        partial = expand_capped(pieces[k], start=cur)
        for v, e in jparts[k].items():
            partial = eliminate_variable(remaining, partial, v, e)
        cur = partial
        want = carried * ((-1) ** k) * (Polynomial.var(X(k + 2)) + Polynomial.var(Y(k + 2)))
        if not rep.check(f"eta_J({k})", cur == want, cur.to_str(names)):
            rep.elapsed = time.perf_counter() - t0
            return rep

    partial = expand_capped(pieces[n - 1], start=cur)
    empty = FactorProduct(2 * n, ())
    for v, e in jparts[n - 1].items():
        partial = eliminate_variable(empty, partial, v, e)
    rep.check("constant", set(partial.terms) <= {ONE}, partial.to_str(names))
    rep.value = partial.constant_term()
    rep.elapsed = time.perf_counter() - t0
    return rep


def telescope_rhs(k):
    """``(-1)^k (x_{k+2} + y_{k+2})`` in the local variables of :func:`telescope_lhs`."""
    return ((-1) ** k) * (Polynomial.var(2) + Polynomial.var(4))


def telescope_lhs(k):
    """``eta_{x_k^4 y_{k+1}^3}[P(k) (-1)^{k-1} (x_{k+1} + y_{k+1})]`` for a generic middle block.

    Local variables: ``x_k, x_{k+1}, x_{k+2}, y_{k+1}, y_{k+2}`` are 0..4.
    Uses plain expansion, independent of the pruning engine.
    """
    xk, x1, x2, y1, y2 = range(5)
    factors = []
    for xl, yl in ((x1, y1), (x2, y2)):
        factors += [(xk, xl), (xk, yl), (y1, xl)]
    factors.append((y1, y2))
    poly = FactorProduct(5, tuple(factors)).expand_naive()
    poly = poly * (((-1) ** (k - 1)) * (Polynomial.var(x1) + Polynomial.var(y1)))
    return eta_partial(poly, Monomial({xk: 4, y1: 3}))


def verify_telescope_step(k, expected=None):
    if k < 5:
        raise InputError(f"telescoping steps start at k = 5, got {k}")
    rhs = telescope_rhs(k) if expected is None else expected
    return telescope_lhs(k) == rhs


# -- certificates --------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    edge_labels: tuple[str, ...]
    factors: tuple[tuple[int, int], ...]
    j: Monomial
    eta_value: int
    s_bounds: tuple[int, ...]
    k: int

    @property
    def t(self):
        return len(self.edge_labels)

    def product(self):
        return FactorProduct(self.t, self.factors)

    def exponents(self):
        return self.j.dense(self.t)


def make_certificate(p, j, s_bounds, k, labels=None):
    labels = tuple(labels) if labels is not None else tuple(f"e{v}" for v in range(p.num_vars))
    eta = eta_of_product(p, j).constant_term()
    return Certificate(labels, p.factors, j, eta, tuple(s_bounds), k)


def claim1_certificate():
    p, j, s = build_p1()
    return make_certificate(p, j, s, 10, _edge_labels(6))


def claim2_certificate(n, orientation="cyclic"):
    p, j, s = build_claim2(n, orientation)
    return make_certificate(p, j, s, 10, _edge_labels(n))


def _edge_labels(n):
    name = cn_names(n)
    return [name(v).replace("x", "e").replace("y", "f") for v in range(2 * n)]


def _validate(c):
    t = c.t
    if t == 0:
        raise InputError("certificate has no edges")
    if len(c.s_bounds) != t:
        raise InputError(f"{len(c.s_bounds)} list bounds for {t} edges")
    for a, b in c.factors:
        if a == b or not (0 <= a < t and 0 <= b < t):
            raise InputError(f"bad factor ({a}, {b})")
    if any(v >= t for v in c.j.variables()):
        raise InputError("monomial uses a variable outside the edge set")
    if c.k < 0 or any(s < 0 for s in c.s_bounds):
        raise InputError("negative list bound or palette size")


def inspect_certificate(c):
    """Individual verdicts behind :func:`check_certificate`, plus the max-form flag.

    ``max_form`` reports whether ``1 + max_e i_e <= s(e)`` holds for every edge,
    which is stronger than the per-edge condition that is actually enforced.
    """
    _validate(c)
    exps = c.exponents()
    eta = eta_of_product(c.product(), c.j).constant_term()
    top = max(exps)
    return {
        "degree": c.j.degree == len(c.factors),
        "eta_matches": eta == c.eta_value,
        "eta_nonzero": eta != 0,
        "per_edge": all(i + 1 <= s for i, s in zip(exps, c.s_bounds)),
        "bounds_within_k": all(s <= c.k for s in c.s_bounds),
        "max_form": all(top + 1 <= s for s in c.s_bounds),
        "eta": eta,
    }


def check_certificate(c):
    r = inspect_certificate(c)
    return all(r[key] for key in ("degree", "eta_matches", "eta_nonzero", "per_edge", "bounds_within_k"))


def format_certificate(c):
    lines = ["certificate", f"vars {c.t}"]
    for idx, (label, s) in enumerate(zip(c.edge_labels, c.s_bounds)):
        lines.append(f"edge {idx} {label} {s}")
    lines.extend(f"factor {a} {b}" for a, b in c.factors)
    lines.append("J " + " ".join(map(str, c.exponents())))
    lines.append(f"eta {c.eta_value}")
    lines.append(f"k {c.k}")
    return "\n".join(lines) + "\n"


def parse_certificate(text):
    rows = [(n, raw.split()) for n, raw in enumerate(text.splitlines(), 1)
            if raw.strip() and not raw.lstrip().startswith("#")]
    if not rows or rows[0][1] != ["certificate"]:
        raise InputError("first record must be 'certificate'", rows[0][0] if rows else None)
    t = None
    edges = {}
    factors = []
    jexp = eta = k = None

    def ints(tok, lineno):
        try:
            return [int(x) for x in tok]
        except ValueError:
            raise InputError("expected integers", lineno) from None

    for lineno, tok in rows[1:]:
        kind = tok[0]
        if kind == "vars" and len(tok) == 2:
            if t is not None:
                raise InputError("duplicate 'vars'", lineno)
            t = ints(tok[1:], lineno)[0]
            if t <= 0:
                raise InputError("vars must be positive", lineno)
        elif kind == "edge" and len(tok) == 4:
            idx, s = ints([tok[1], tok[3]], lineno)
            if t is None or not 0 <= idx < t:
                raise InputError(f"edge index {idx} outside the declared variables", lineno)
            if idx in edges:
                raise InputError(f"edge {idx} declared twice", lineno)
            edges[idx] = (tok[2], s)
        elif kind == "factor" and len(tok) == 3:
            a, b = ints(tok[1:], lineno)
            if t is None or a == b or not (0 <= a < t and 0 <= b < t):
                raise InputError(f"bad factor ({a}, {b})", lineno)
            factors.append((a, b))
        elif kind == "J":
            jexp = ints(tok[1:], lineno)
            if t is None or len(jexp) != t:
                raise InputError("J needs one exponent per variable", lineno)
            if any(e < 0 for e in jexp):
                raise InputError("negative exponent", lineno)
        elif kind == "eta" and len(tok) == 2:
            eta = ints(tok[1:], lineno)[0]
        elif kind == "k" and len(tok) == 2:
            k = ints(tok[1:], lineno)[0]
        else:
            raise InputError(f"unrecognised record {' '.join(tok)!r}", lineno)
    missing = [name for name, val in (("vars", t), ("J", jexp), ("eta", eta), ("k", k)) if val is None]
    if missing:
        raise InputError(f"certificate is missing: {', '.join(missing)}")
    if sorted(edges) != list(range(t)):
        raise InputError(f"expected edge records 0..{t - 1}")
    return Certificate(
        tuple(edges[i][0] for i in range(t)),
        tuple(factors),
        Monomial.from_dense(jexp),
        eta,
        tuple(edges[i][1] for i in range(t)),
        k,
    )


def read_certificate(path):
    return parse_certificate(Path(path).read_text())


def write_certificate(c, path):
    Path(path).write_text(format_certificate(c))


# -- soundness trials ----------------------------------------------------------------------

MAX_TRIAL_VARS = 14


def distinct_choice(t, factors, lists):
    """Exhaustive DFS for values ``s_v`` in ``lists[v]`` with ``s_a != s_b`` for every factor."""
    nbrs = [set() for _ in range(t)]
    for a, b in factors:
        nbrs[a].add(b)
        nbrs[b].add(a)
    order = sorted(range(t), key=lambda v: (len(lists[v]), -len(nbrs[v]), v))
    value = [None] * t

    def rec(i):
        if i == t:
            return True
        v = order[i]
        taken = {value[u] for u in nbrs[v] if value[u] is not None}
        for s in sorted(lists[v]):
            if s not in taken:
                value[v] = s
                if rec(i + 1):
                    return True
        value[v] = None
        return False

    return list(value) if rec(0) else None


@dataclass
class SoundnessReport:
    trials: int
    successes: int
    failures: list[list[frozenset[int]]]

    @property
    def passed(self):
        return self.successes == self.trials


def soundness_trial(c, seed, trials, palette):
    """Draw lists of size ``i_e + 1`` and check each admits a conflict-free choice."""
    if not check_certificate(c):
        raise InputError("certificate does not pass check_certificate")
    if c.t > MAX_TRIAL_VARS:
        raise InputError(f"{c.t} variables exceeds the brute-force limit of {MAX_TRIAL_VARS}")
    sizes = [i + 1 for i in c.exponents()]
    if max(sizes) > palette:
        raise InputError(f"palette {palette} smaller than the largest list size {max(sizes)}")
    rng = random.Random(seed)
    ok = 0
    failures = []
    for _ in range(trials):
        lists = [frozenset(rng.sample(range(1, palette + 1), s)) for s in sizes]
        if distinct_choice(c.t, c.factors, lists) is not None:
            ok += 1
        else:
            failures.append(lists)
    return SoundnessReport(trials, ok, failures)


# -- monomial search -------------------------------------------------------------------------

def count_candidates(caps, total):
    """Number of exponent vectors within ``caps`` summing to ``total``."""
    ways = [1] + [0] * total
    for cap in caps:
        nxt = [0] * (total + 1)
        for s, w in enumerate(ways):
            if w:
                for e in range(min(cap, total - s) + 1):
                    nxt[s + e] += w
        ways = nxt
    return ways[total]


def _random_vector(rng, caps, total):
    """Uniform random exponent vector within caps with the given sum (via suffix counts)."""
    nv = len(caps)
    suffix = [[0] * (total + 1) for _ in range(nv + 1)]
    suffix[nv][0] = 1
    for v in range(nv - 1, -1, -1):
        for s in range(total + 1):
            suffix[v][s] = sum(suffix[v + 1][s - e] for e in range(min(caps[v], s) + 1))
    if suffix[0][total] == 0:
        return None
    out = []
    left = total
    for v in range(nv):
        weights = [suffix[v + 1][left - e] for e in range(min(caps[v], left) + 1)]
        e = rng.choices(range(len(weights)), weights)[0]
        out.append(e)
        left -= e
    return out


def search_monomial(p, caps=None, budget=10_000, seed=0):
    """A monomial within ``caps`` of degree ``deg p`` with non-zero coefficient, or ``None``.

    Exhaustive (via the capped expansion) when at most ``budget`` candidate
    monomials exist; otherwise up to ``budget`` random candidates are tested.
    """
    nv = p.num_vars
    d = p.degree
    occ = p.occurrences()
    if caps is None:
        caps = CapVector.unbounded(nv)
    elif not isinstance(caps, CapVector):
        caps = CapVector(tuple(caps))
    bounds = [min(occ[v], caps[v]) if caps[v] is not None else occ[v] for v in range(nv)]
    if count_candidates(bounds, d) <= budget:
        poly = expand_capped(p, CapVector(tuple(bounds)))
        for m, coeff in poly.sorted_terms():
            if m.degree == d and coeff:
                return m
        return None
    rng = random.Random(seed)
    tried = set()
    for _ in range(budget):
        vec = _random_vector(rng, bounds, d)
        if vec is None:
            return None
        key = tuple(vec)
        if key in tried:
            continue
        tried.add(key)
        m = Monomial.from_dense(vec)
        if eta_of_product(p, m).constant_term():
            return m
    return None


def certificate_for_conflicts(cg, caps=None, budget=10_000, seed=0, k=None):
    """Certificate for a conflict graph with factors in canonical orientation, or ``None``."""
    t = len(cg)
    p = FactorProduct(t, tuple(sorted(cg.conflicts)))
    j = search_monomial(p, caps, budget, seed)
    if j is None:
        return None
    exps = j.dense(t)
    s_bounds = [e + 1 for e in exps]
    return make_certificate(p, j, s_bounds, k if k is not None else max(s_bounds),
                            [f"e{e}" for e in cg.edge_ids])

