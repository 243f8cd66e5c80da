"""Exact sparse multivariate integer polynomials and products of linear differences.

Variables are non-negative integers. A ``Monomial`` is a sparse exponent map,
a ``Polynomial`` maps monomials to non-zero Python ints (arbitrary precision),
and a ``FactorProduct`` is the unexpanded product of factors ``(x_a - x_b)``.

The expansion engine multiplies one linear factor at a time into a sparse
term table and discards terms that can no longer contribute to the
coefficients being asked for. Two pruning rules are applied:

* caps: exponents only grow as factors are absorbed, so a term whose exponent
  on ``x_v`` already exceeds the cap of ``x_v`` can never come back under it;
* targets: when the exact exponent ``J_v`` of a variable is required, a term
  is also dropped once ``J_v`` exceeds its current exponent plus the number of
  not-yet-absorbed factors mentioning ``x_v``.

Neither rule changes any surviving coefficient, which is what makes the
coefficient extraction for 45-70 factor products cheap.
"""

from __future__ import annotations

import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import InputError, SequencingError


class Monomial:
    """Immutable sparse monomial ``prod x_v^{e_v}`` with all stored ``e_v > 0``."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(exponents, Mapping):
            exponents = exponents.items()
        acc = defaultdict(int)
        for v, e in exponents:
            if v < 0 or e < 0:
                raise InputError(f"bad monomial entry x{v}^{e}")
            acc[int(v)] += int(e)
        self._items = tuple(sorted((v, e) for v, e in acc.items() if e))
        self._hash = hash(self._items)

    @classmethod
    def from_dense(cls, exps):
        return cls((v, e) for v, e in enumerate(exps) if e)

    def dense(self, nvars):
        out = [0] * nvars
        for v, e in self._items:
            if v >= nvars:
                raise InputError(f"variable x{v} outside 0..{nvars - 1}")
            out[v] = e
        return out

    def items(self):
        return self._items

    def as_dict(self):
        return dict(self._items)

    def variables(self):
        return tuple(v for v, _ in self._items)

    def exponent(self, v):
        for w, e in self._items:
            if w == v:
                return e
        return 0

    @property
    def degree(self):
        return sum(e for _, e in self._items)

    def __mul__(self, other):
        return Monomial(list(self._items) + list(other._items))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self._items:
            return "Monomial(1)"
        return "Monomial(" + "*".join(f"x{v}^{e}" for v, e in self._items) + ")"


ONE = Monomial()


class Polynomial:
    """Sparse polynomial with integer coefficients; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(m, Monomial):
                    m = Monomial(m)
                c = int(c)
                if c:
                    self.terms[m] = self.terms.get(m, 0) + c
            self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def constant(cls, c):
        return cls({ONE: c})

    @classmethod
    def var(cls, v, exp=1):
        return cls({Monomial({v: exp}): 1})

    @classmethod
    def linear(cls, a, b):
        """The factor ``x_a - x_b``."""
        return cls({Monomial({a: 1}): 1, Monomial({b: 1}): -1})

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[m1 * m2] += c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Polynomial({self.to_str()})"

    # queries

    def variables(self):
        return sorted({v for m in self.terms for v in m.variables()})

    def num_vars(self):
        vs = self.variables()
        return vs[-1] + 1 if vs else 0

    def coefficient(self, j):
        return self.terms.get(j, 0)

    def constant_term(self):
        return self.terms.get(ONE, 0)

    def degree(self):
        return degree(self)

    def is_homogeneous(self):
        return is_homogeneous(self)

    def derivative(self, v):
        out = {}
        for m, c in self.terms.items():
            e = m.exponent(v)
            if e:
                d = m.as_dict()
                d[v] = e - 1
                out[Monomial(d)] = c * e
        return Polynomial(out)

    def set_zero(self, variables):
        """Substitute 0 for every variable in ``variables``."""
        vs = set(variables)
        return Polynomial({m: c for m, c in self.terms.items() if not vs.intersection(m.variables())})

    def sorted_terms(self):
        """Terms in graded-lexicographic order, largest first."""
        nv = self.num_vars()
        return sorted(self.terms.items(), key=lambda t: (t[0].degree, t[0].dense(nv)), reverse=True)

    def to_str(self, names=None):
        if not self.terms:
            return "0"
        name = names or (lambda v: f"x{v}")
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(name(v) if e == 1 else f"{name(v)}^{e}" for v, e in m.items())
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def degree(p):
    """Maximum total degree, ``None`` for the zero polynomial."""
    if not p.terms:
        return None
    return max(m.degree for m in p.terms)


def is_homogeneous(p):
    return len({m.degree for m in p.terms}) <= 1


def coefficient(p, j):
    return p.coefficient(j)


def format_debug(p):
    """One term per line, ``<coeff> : v<i>^<e> ...``, graded-lex order."""
    lines = []
    for m, c in p.sorted_terms():
        mono = " ".join(f"v{v}^{e}" for v, e in m.items())
        lines.append(f"{c} : {mono}".rstrip())
    return "\n".join(lines)


_TERM = re.compile(r"^\s*(-?\d+)\s*:(.*)$")
_POW = re.compile(r"^v(\d+)\^(\d+)$")


def parse_debug(text):
    terms = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        match = _TERM.match(raw)
        if not match:
            raise InputError("expected '<coeff> : v<i>^<e> ...'", lineno)
        exps = []
        for tok in match.group(2).split():
            pm = _POW.match(tok)
            if not pm:
                raise InputError(f"bad power {tok!r}", lineno)
            exps.append((int(pm.group(1)), int(pm.group(2))))
        m = Monomial(exps)
        if m in terms:
            raise InputError("repeated monomial", lineno)
        terms[m] = int(match.group(1))
    return Polynomial(terms)


# -- factored products ------------------------------------------------------------

@dataclass(frozen=True)
class FactorProduct:
    """``prod (x_a - x_b)`` over ``factors``; order and orientation are kept as given."""

    num_vars: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((int(a), int(b)) for a, b in self.factors))
        for a, b in self.factors:
            if a == b:
                raise InputError(f"factor (x{a} - x{b}) is identically zero")
            if not (0 <= a < self.num_vars and 0 <= b < self.num_vars):
                raise InputError(f"factor ({a}, {b}) outside 0..{self.num_vars - 1}")

    def __len__(self):
        return len(self.factors)

    @property
    def degree(self):
        return len(self.factors)

    def occurrences(self):
        """Number of factors mentioning each variable."""
        cnt = [0] * self.num_vars
        for a, b in self.factors:
            cnt[a] += 1
            cnt[b] += 1
        return cnt

    def pair_multiset(self):
        """Factors as unordered pairs, with multiplicity."""
        return Counter(frozenset(f) for f in self.factors)

    def canonical(self):
        return FactorProduct(self.num_vars, tuple((min(a, b), max(a, b)) for a, b in self.factors))

    def flipped(self, index):
        fs = list(self.factors)
        a, b = fs[index]
        fs[index] = (b, a)
        return FactorProduct(self.num_vars, tuple(fs))

    def without(self, indices):
        drop = set(indices)
        return FactorProduct(self.num_vars, tuple(f for i, f in enumerate(self.factors) if i not in drop))

    def __add__(self, other):
        return FactorProduct(max(self.num_vars, other.num_vars), self.factors + other.factors)

    def expand_naive(self):
        """Plain left-to-right expansion, no pruning (small products only)."""
        out = Polynomial.constant(1)
        for a, b in self.factors:
            out = out * Polynomial.linear(a, b)
        return out


@dataclass(frozen=True)
class CapVector:
    """Per-variable maximum exponent; ``None`` means unbounded."""

    caps: tuple[int | None, ...]

    def __post_init__(self):
        object.__setattr__(self, "caps", tuple(None if c is None else int(c) for c in self.caps))
        if any(c is not None and c < 0 for c in self.caps):
            raise InputError("caps must be non-negative")

    @classmethod
    def uniform(cls, nvars, cap):
        return cls((cap,) * nvars)

    @classmethod
    def unbounded(cls, nvars):
        return cls((None,) * nvars)

    def __getitem__(self, v):
        return self.caps[v] if v < len(self.caps) else None

    def admits(self, m):
        return all(self[v] is None or e <= self[v] for v, e in m.items())


# -- expansion engine -----------------------------------------------------------

_INT64_SAFE = 1 << 61
# packed keys must fit a signed 64-bit integer
_NUMPY_MAX_BITS = 62


def greedy_order(factors, nvars, support=()):
    """Order factors so variables close early.

    Repeatedly take the factor with the most variables already in the current
    support, breaking ties by how many variables it closes, then by position.
    """
    remaining = list(range(len(factors)))
    left = [0] * nvars
    for a, b in factors:
        left[a] += 1
        left[b] += 1
    supp = set(support)
    order = []
    while remaining:
        def score(i):
            a, b = factors[i]
            shared = (a in supp) + (b in supp)
            closes = (left[a] == 1) + (left[b] == 1)
            return (-shared, -closes, i)

        best = min(remaining, key=score)
        remaining.remove(best)
        a, b = factors[best]
        left[a] -= 1
        left[b] -= 1
        supp.update((a, b))
        order.append(best)
    return order


def _expand(nvars, factors, start=None, caps=None, targets=None, order=None):
    """Core engine: returns ``{dense exponent tuple: coeff}``.

    ``start``  -- initial ``{dense tuple: coeff}`` (default: the constant 1);
    ``caps``   -- CapVector, terms exceeding it are dropped;
    ``targets``-- ``{var: exact exponent}``; only terms reaching exactly these
                  exponents survive, with the lower-bound pruning described
                  in the module docstring.
    """
    targets = dict(targets or {})
    if start is None:
        start = {(0,) * nvars: 1}
    factors = list(factors)
    if order == "given":
        factors_seq = factors
    else:
        if order is None:
            support = {v for m in start for v, e in enumerate(m) if e}
            order = greedy_order(factors, nvars, support)
        factors_seq = [factors[i] for i in order]

    count = [0] * nvars
    for a, b in factors_seq:
        count[a] += 1
        count[b] += 1
    start_max = [max((m[v] for m in start), default=0) for v in range(nvars)]
    maxexp = []
    for v in range(nvars):
        top = start_max[v] + count[v]
        if v in targets:
            top = min(top, targets[v])
        if caps is not None and caps[v] is not None:
            top = min(top, caps[v])
        maxexp.append(top)
    width = [(x + 1).bit_length() for x in maxexp]
    shift = [0] * nvars
    for v in range(1, nvars):
        shift[v] = shift[v - 1] + width[v - 1]
    total_bits = sum(width)
    mask = [(1 << w) - 1 for w in width]
    unit = [1 << s for s in shift]
    rem = list(count)

    def pack(m):
        return sum(e << shift[v] for v, e in enumerate(m))

    def admissible(v, e):
        if e > maxexp[v]:
            return False
        t = targets.get(v)
        return t is None or e + rem[v] >= t

    start_terms = {}
    for m, c in start.items():
        if c and all(admissible(v, e) for v, e in enumerate(m)):
            start_terms[pack(m)] = start_terms.get(pack(m), 0) + c

    if total_bits <= _NUMPY_MAX_BITS:
        packed = _expand_numpy(start_terms, factors_seq, rem, shift, mask, unit, maxexp, targets)
    else:
        packed = _expand_dict(start_terms, factors_seq, rem, admissible, shift, mask, unit)

    out = {}
    for k, c in packed.items():
        m = tuple((k >> shift[v]) & mask[v] for v in range(nvars))
        if all(m[v] == t for v, t in targets.items()):
            out[m] = c
    return out


def _expand_dict(terms, factors, rem, admissible, shift, mask, unit):
    for a, b in factors:
        rem[a] -= 1
        rem[b] -= 1
        new = defaultdict(int)
        ua, ub = unit[a], unit[b]
        for k, c in terms.items():
            ea = (k >> shift[a]) & mask[a]
            eb = (k >> shift[b]) & mask[b]
            if admissible(a, ea + 1) and admissible(b, eb):
                new[k + ua] += c
            if admissible(b, eb + 1) and admissible(a, ea):
                new[k + ub] -= c
        terms = {k: c for k, c in new.items() if c}
        if not terms:
            break
    return terms


def _expand_numpy(terms, factors, rem, shift, mask, unit, maxexp, targets):
    if not terms:
        return {}
    keys = np.fromiter(terms.keys(), dtype=np.int64, count=len(terms))
    coeffs = list(terms.values())
    if max(abs(c) for c in coeffs) < _INT64_SAFE:
        co = np.array(coeffs, dtype=np.int64)
    else:
        co = np.array(coeffs, dtype=object)
    for a, b in factors:
        rem[a] -= 1
        rem[b] -= 1
        if co.dtype != object and len(co) and int(np.abs(co).max()) >= _INT64_SAFE:
            co = co.astype(object)
        k = np.concatenate([keys + unit[a], keys + unit[b]])
        c = np.concatenate([co, -co])
        ok = np.ones(len(k), dtype=bool)
        for v in (a, b):
            e = (k >> shift[v]) & mask[v]
            ok &= e <= maxexp[v]
            if v in targets:
                ok &= e + rem[v] >= targets[v]
        k = k[ok]
        c = c[ok]
        if len(k) == 0:
            return {}
        idx = np.argsort(k, kind="stable")
        k = k[idx]
        c = c[idx]
        starts = np.flatnonzero(np.concatenate(([True], k[1:] != k[:-1])))
        k = k[starts]
        c = np.add.reduceat(c, starts)
        nz = c != 0
        keys = k[nz]
        co = c[nz]
        if len(keys) == 0:
            return {}
    return {int(k): int(c) for k, c in zip(keys.tolist(), co.tolist())}


def _to_dense_terms(p, nvars):
    return {tuple(m.dense(nvars)): c for m, c in p.terms.items()}


def _from_dense_terms(terms, drop=()):
    drop = set(drop)
    out = {}
    for m, c in terms.items():
        mono = Monomial((v, e) for v, e in enumerate(m) if v not in drop)
        out[mono] = out.get(mono, 0) + c
    return Polynomial(out)


def _as_caps(caps, nvars):
    if caps is None:
        return None
    if not isinstance(caps, CapVector):
        caps = CapVector(tuple(caps))
    return caps


def expand_capped(p, caps=None, start=None, order=None):
    """Expand ``p`` (optionally times ``start``), keeping every monomial within ``caps`` exact.

    Monomials exceeding the caps may be missing from the result.
    """
    nvars = max(p.num_vars, start.num_vars() if start is not None else 0)
    init = _to_dense_terms(start, nvars) if start is not None else None
    terms = _expand(nvars, p.factors, init, _as_caps(caps, nvars), None, order)
    return _from_dense_terms(terms)


def eta_of_product(p, j, start=None, caps=None, order=None):
    """``eta_J[start * p]``: the coefficient of ``J`` as a polynomial in the other variables.

    Computed with target pruning, so it never materialises the full expansion.
    ``caps`` may additionally bound the non-``J`` variables (the result is then
    exact only on monomials within those caps).
    """
    nvars = max(p.num_vars, start.num_vars() if start is not None else 0,
                max(j.variables(), default=-1) + 1)
    init = _to_dense_terms(start, nvars) if start is not None else None
    targets = j.as_dict()
    terms = _expand(nvars, p.factors, init, _as_caps(caps, nvars), targets, order)
    return _from_dense_terms(terms, drop=targets)


def product_coefficient(p, j, order=None):
    """Integer coefficient of ``J`` in the expansion of ``p``."""
    return eta_of_product(p, j, order=order).constant_term()


def eta_partial(p, j):
    """Keep the terms whose exponents on ``J``'s variables equal ``J`` and drop those variables."""
    jd = j.as_dict()
    out = {}
    for m, c in p.terms.items():
        d = m.as_dict()
        if all(d.get(v, 0) == e for v, e in jd.items()):
            rest = Monomial((v, e) for v, e in d.items() if v not in jd)
            out[rest] = out.get(rest, 0) + c
    return Polynomial(out)


def eta_derivative_oracle(p, j):
    """``eta_J`` via formal differentiation, division by the factorials and evaluation at zero."""
    q = p
    denom = 1
    for v, e in j.items():
        for _ in range(e):
            q = q.derivative(v)
        denom *= math.factorial(e)
    q = q.set_zero(j.variables())
    out = {}
    for m, c in q.terms.items():
        if c % denom:
            raise ArithmeticError(f"coefficient {c} not divisible by {denom}")
        out[m] = c // denom
    return Polynomial(out)


def eliminate_variable(remaining, partial, var, exp):
    """One staged-extraction step: ``eta_{x_var^exp}[partial]``.

    ``remaining`` holds the factors not yet multiplied into ``partial``; none
    of them may mention ``var``.
    """
    for a, b in remaining.factors:
        if var in (a, b):
            raise SequencingError(f"factor (x{a} - x{b}) mentioning x{var} is not absorbed yet")
    if exp == 0:
        return partial.set_zero([var])
    return eta_partial(partial, Monomial({var: exp}))


def random_polynomial(rng, nvars, nterms, max_exp, coeff_range=5):
    """Small random polynomial for property tests."""
    terms = {}
    for _ in range(nterms):
        m = Monomial((v, rng.randint(0, max_exp)) for v in range(nvars))
        terms[m] = terms.get(m, 0) + rng.randint(-coeff_range, coeff_range)
    return Polynomial(terms)
