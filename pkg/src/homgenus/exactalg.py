"""Exact multivariate polynomial / truncated power series arithmetic.

All coefficients are ``fractions.Fraction``.  Variables are named by a short
prefix plus an index and carry an intrinsic grading weight:

    x1, x2, ...   weight 1   (ambient torus coordinates)
    u, u1, u2...  weight 1   (first Chern / orientation classes)
    t             weight 1   (expansion bookkeeping variable)
    a1, a2, ...   weight i   (coefficients of the universal series f)
    b1, b2, ...   weight n   (coefficients of the universal logarithm)
    y             weight 0   (Hirzebruch genus parameter)

The canonical variable order is x-block, u-block, a-block, b-block, t, y,
each block sorted by index.  Serialization is graded-lex over that order, so
text output is deterministic and round-trips exactly.
"""

import ast
import re
from fractions import Fraction

_VAR_RE = re.compile(r"^([a-z]+?)(\d*)$")

# category rank within the canonical ordering, by prefix
_CAT = {"x": 0, "u": 1, "v": 2, "a": 3, "b": 4, "t": 5, "y": 6, "z": 7}


def var_weight(name):
    """Grading weight of a variable, from its name."""
    m = _VAR_RE.match(name)
    if not m or m.group(1) not in _CAT:
        raise ValueError("unknown variable %r" % (name,))
    prefix, idx = m.group(1), m.group(2)
    if prefix in ("a", "b"):
        if not idx:
            raise ValueError("variable %r needs an index" % (name,))
        return int(idx)
    if prefix in ("v", "z"):
        return 2
    if prefix == "y":
        return 0
    return 1  # x, u, t


def var_key(name):
    """Canonical sort key for a variable name."""
    m = _VAR_RE.match(name)
    if not m or m.group(1) not in _CAT:
        raise ValueError("unknown variable %r" % (name,))
    prefix, idx = m.group(1), m.group(2)
    return (_CAT[prefix], int(idx) if idx else 0)


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError("coefficient must be rational, got %r" % (c,))


class PoleCancellationError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class MultiPoly:
    """Sparse multivariate polynomial over Fraction.

    Immutable by convention: all operations return new instances.  ``vars``
    is the tuple of variable names this polynomial mentions (kept in
    canonical order), ``terms`` maps exponent tuples to nonzero Fractions.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars=(), terms=None):
        vars = tuple(vars)
        vs = tuple(sorted(set(vars), key=var_key))
        if len(set(vars)) != len(vars):
            raise ValueError("duplicate variable in %r" % (vars,))
        self.vars = vs
        if terms is None:
            terms = {}
        clean = {}
        if vs == vars:
            for e, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[tuple(e)] = c
        else:
            # caller handed us vars out of canonical order; remap exponents
            pos = {v: i for i, v in enumerate(vars)}
            for e, c in terms.items():
                c = _as_fraction(c)
                if not c:
                    continue
                ne = tuple(e[pos[v]] for v in vs)
                clean[ne] = clean.get(ne, Fraction(0)) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls((), {})

    @classmethod
    def const(cls, c):
        c = _as_fraction(c)
        return cls((), {(): c} if c else {})

    @classmethod
    def variable(cls, name, c=1):
        return cls((name,), {(1,): _as_fraction(c)})

    @classmethod
    def linear_form(cls, names, coeffs):
        """sum of c_i * name_i for parallel sequences names, coeffs."""
        p = cls.zero()
        for n, c in zip(names, coeffs):
            c = _as_fraction(c)
            if c:
                p = p + cls.variable(n, c)
        return p

    # -- bookkeeping -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant: %s" % self.to_text())
        return self.terms.get((0,) * len(self.vars), Fraction(0)) if self.vars else self.terms.get((), Fraction(0))

    def _weights(self):
        return tuple(var_weight(v) for v in self.vars)

    def term_weight(self, exps):
        w = self._weights()
        return sum(e * wi for e, wi in zip(exps, w))

    def weighted_degree(self):
        if not self.terms:
            return -1
        return max(self.term_weight(e) for e in self.terms)

    def degree_in(self, name):
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def _aligned(self, other):
        """Return (terms_a, terms_b, vars) over the union variable set."""
        if self.vars == other.vars:
            return self.terms, other.terms, self.vars
        vs = tuple(sorted(set(self.vars) | set(other.vars), key=var_key))

        def remap(poly):
            idx = [poly.vars.index(v) if v in poly.vars else None for v in vs]
            out = {}
            for e, c in poly.terms.items():
                out[tuple(e[i] if i is not None else 0 for i in idx)] = c
            return out

        return remap(self), remap(other), vs

    def restrict_vars(self):
        """Drop variables that no term actually uses."""
        if not self.vars:
            return self
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, ei in enumerate(e):
                if ei:
                    used[i] = True
        if all(used):
            return self
        vs = tuple(v for v, u in zip(self.vars, used) if u)
        keep = [i for i, u in enumerate(used) if u]
        return MultiPoly(vs, {tuple(e[i] for i in keep): c for e, c in self.terms.items()})

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        ta, tb, vs = self._aligned(other)
        out = dict(ta)
        for e, c in tb.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return MultiPoly(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.const(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return MultiPoly.zero()
            return MultiPoly(self.vars, {e: k * c for e, k in self.terms.items()})
        ta, tb, vs = self._aligned(other)
        out = {}
        if len(ta) > len(tb):
            ta, tb = tb, ta
        for e1, c1 in ta.items():
            for e2, c2 in tb.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return MultiPoly(vs, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        r = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base if n > 1 else base
            n >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a = self.restrict_vars()
        b = other.restrict_vars()
        return a.vars == b.vars and a.terms == b.terms

    def __hash__(self):
        a = self.restrict_vars()
        return hash((a.vars, frozenset(a.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return "MultiPoly(%s)" % self.to_text()

    # -- truncation --------------------------------------------------------

    def truncate_weight(self, cutoff):
        """Drop terms of weighted degree > cutoff."""
        return MultiPoly(self.vars, {e: c for e, c in self.terms.items() if self.term_weight(e) <= cutoff})

    def truncate_var(self, name, cutoff):
        """Drop terms whose exponent of `name` exceeds cutoff."""
        if name not in self.vars:
            return self
        i = self.vars.index(name)
        return MultiPoly(self.vars, {e: c for e, c in self.terms.items() if e[i] <= cutoff})

    def coefficient_of(self, name, k):
        """Coefficient of name**k, as a polynomial in the other variables."""
        if name not in self.vars:
            return self if k == 0 else MultiPoly.zero()
        i = self.vars.index(name)
        vs = self.vars[:i] + self.vars[i + 1:]
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + e[i + 1:]] = c
        return MultiPoly(vs, out).restrict_vars()

    # -- substitution / evaluation -----------------------------------------

    def subs(self, mapping):
        """Substitute variables by polynomials (or rationals).  Exact."""
        images = {}
        for v, img in mapping.items():
            if isinstance(img, (int, Fraction, str)):
                img = MultiPoly.const(_as_fraction(img))
            images[v] = img
        result = MultiPoly.zero()
        pow_cache = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(c)
            for v, ei in zip(self.vars, e):
                if not ei:
                    continue
                if v in images:
                    key = (v, ei)
                    if key not in pow_cache:
                        pow_cache[key] = images[v] ** ei
                    term = term * pow_cache[key]
                else:
                    term = term * MultiPoly((v,), {(ei,): 1})
            result = result + term
        return result

    def evaluate(self, point):
        """Evaluate at a dict name -> Fraction.  Every variable must be set."""
        total = Fraction(0)
        vals = {v: _as_fraction(point[v]) for v in self.vars}
        for e, c in self.terms.items():
            prod = c
            for v, ei in zip(self.vars, e):
                if ei:
                    prod *= vals[v] ** ei
            total += prod
        return total

    # -- serialization -----------------------------------------------------

    def _sorted_terms(self):
        # graded-lex, highest first: (weight, exponent tuple) descending
        p = self.restrict_vars()
        return p.vars, sorted(p.terms.items(), key=lambda ec: (p.term_weight(ec[0]), ec[0]), reverse=True)

    def to_text(self):
        vs, items = self._sorted_terms()
        if not items:
            return "0"
        parts = []
        for e, c in items:
            factors = []
            for v, ei in zip(vs, e):
                if ei == 1:
                    factors.append(v)
                elif ei > 1:
                    factors.append("%s^%d" % (v, ei))
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += " %s %s" % (sign, body)
        return text

    def to_json(self):
        vs, items = self._sorted_terms()
        return {
            "vars": list(vs),
            "terms": [{"exps": list(e), "coeff": str(c)} for e, c in items],
        }

    @classmethod
    def from_json(cls, doc):
        vs = tuple(doc["vars"])
        return cls(vs, {tuple(t["exps"]): Fraction(t["coeff"]) for t in doc["terms"]})


# ---------------------------------------------------------------------------
# exact division


def _lead(poly):
    """Leading (exps, coeff) under graded-lex; poly must be nonzero."""
    best = None
    for e in poly.terms:
        k = (poly.term_weight(e), e)
        if best is None or k > best[0]:
            best = (k, e)
    e = best[1]
    return e, poly.terms[e]


def _synthetic_divide(num_terms, den_terms, vs, message):
    """Fast exact division when the divisor is c*x_i^e - d with d free of x_i.

    Handles every divisor we actually produce (linear isotropy-weight forms,
    differences of squares); returns None when the shape doesn't fit so the
    caller can fall back to the generic reduction.
    """
    weights = tuple(var_weight(v) for v in vs)
    de, dc = None, None
    for e, c in den_terms.items():
        k = (sum(ei * w for ei, w in zip(e, weights)), e)
        if de is None or k > (sum(ei * w for ei, w in zip(de, weights)), de):
            de, dc = e, c
    pivots = [i for i, ei in enumerate(de) if ei]
    if len(pivots) != 1:
        return None
    i = pivots[0]
    e0 = de[i]
    # d = (leading monomial) - den, i.e. den = dc*x_i^e0 - d; d must avoid x_i
    d = {}
    for e, c in den_terms.items():
        if e == de:
            continue
        if e[i]:
            return None
        d[e[:i] + (0,) + e[i + 1:]] = -c
    # bucket the numerator by x_i exponent
    buckets = {}
    m = 0
    for e, c in num_terms.items():
        k = e[i]
        m = max(m, k)
        buckets.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
    q = {}  # x_i exponent -> dict of remaining exponents
    for k in range(m, -1, -1):
        cur = dict(buckets.get(k, ()))
        if d and k in q:
            for e1, c1 in q[k].items():
                for e2, c2 in d.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    s = cur.get(e, Fraction(0)) + c1 * c2
                    if s:
                        cur[e] = s
                    elif e in cur:
                        del cur[e]
        if k >= e0:
            if cur:
                q[k - e0] = {e: c / dc for e, c in cur.items()}
        elif cur:
            raise PoleCancellationError(message)
    out = {}
    for k, terms in q.items():
        for e, c in terms.items():
            out[e[:i] + (k,) + e[i + 1:]] = c
    return MultiPoly(vs, out).restrict_vars()


def exact_divide(numerator, denominator, message="pole not cancelled"):
    """Divide exactly, raising PoleCancellationError on any remainder.

    Since we only ever divide by actual factors (products of linear forms
    coming from isotropy weights), a nonzero remainder means a localization
    pole failed to cancel — hence the default error text.  Divisors of the
    shape c*x_i^e - (terms without x_i) take a linear-time synthetic route;
    anything else falls back to leading-term reduction in graded-lex order.
    """
    if denominator.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if numerator.is_zero():
        return MultiPoly.zero()
    ta, tb, vs = numerator._aligned(denominator)
    fast = _synthetic_divide(ta, tb, vs, message)
    if fast is not None:
        return fast
    num = MultiPoly(vs, ta)
    den = MultiPoly(vs, tb)
    de, dc = _lead(den)
    qterms = {}
    while not num.is_zero():
        ne, nc = _lead(num)
        qe = tuple(a - b for a, b in zip(ne, de))
        if any(qk < 0 for qk in qe):
            raise PoleCancellationError(message)
        qc = nc / dc
        qterms[qe] = qterms.get(qe, Fraction(0)) + qc
        num = num - MultiPoly(vs, {qe: qc}) * den
    return MultiPoly(vs, qterms).restrict_vars()


# ---------------------------------------------------------------------------
# alternation / divided differences


def vandermonde(names):
    """prod_{i<j} (x_i - x_j) over the given variable names."""
    p = MultiPoly.const(1)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            p = p * (MultiPoly.variable(names[i]) - MultiPoly.variable(names[j]))
    return p


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def _sort_sign(exps):
    """(sorted descending, sign of sorting permutation) or (None, 0) on ties."""
    if len(set(exps)) != len(exps):
        return None, 0
    order = sorted(range(len(exps)), key=lambda i: -exps[i])
    perm = [0] * len(exps)
    for newpos, old in enumerate(order):
        perm[old] = newpos
    return tuple(exps[i] for i in order), _perm_sign(perm)


def _antisym_monomial(names, exps):
    """sum over permutations sigma of sign(sigma) * x^{sigma(exps)}."""
    from itertools import permutations

    n = len(names)
    out = {}
    for perm in permutations(range(n)):
        e = tuple(exps[perm[i]] for i in range(n))
        s = _perm_sign(perm)
        out[e] = out.get(e, Fraction(0)) + s
    return MultiPoly(tuple(names), out)


def divided_difference(poly, names):
    """Full symmetrizing divided-difference operator.

    Sends x^xi to the Schur-type quotient (sum_sigma sign(sigma) x^{sigma xi})
    / prod_{i<j}(x_i - x_j).  Kills any monomial with a repeated exponent;
    monomials with all-distinct exponents sorted to the staircase
    (n-1, ..., 1, 0) contribute their sign.  The generic case goes through an
    actual exact division by the Vandermonde factor by factor, so the answer
    is always a genuine polynomial (symmetric in the x's).
    """
    names = tuple(names)
    n = len(names)
    delta = tuple(range(n - 1, -1, -1))
    pos = {v: i for i, v in enumerate(poly.vars)}
    for v in names:
        if v not in pos:
            poly = poly * MultiPoly((v,), {(0,): 1})  # force var presence
            pos = {u: i for i, u in enumerate(poly.vars)}
    idx = [pos[v] for v in names]
    other_idx = [i for i in range(len(poly.vars)) if i not in idx]
    other_vars = tuple(poly.vars[i] for i in other_idx)

    # bucket terms: key = (sorted x-exponents desc, other-exponents), value coeff
    buckets = {}
    for e, c in poly.terms.items():
        xe = tuple(e[i] for i in idx)
        srt, sgn = _sort_sign(xe)
        if sgn == 0:
            continue
        rest = tuple(e[i] for i in other_idx)
        key = (srt, rest)
        buckets[key] = buckets.get(key, Fraction(0)) + sgn * c
    result = MultiPoly.zero()
    schur_cache = {}
    for (srt, rest), c in buckets.items():
        if not c:
            continue
        if srt == delta:
            sym = MultiPoly.const(1)
        else:
            if srt not in schur_cache:
                num = _antisym_monomial(names, srt)
                q = num
                for i in range(n):
                    for j in range(i + 1, n):
                        q = exact_divide(
                            q,
                            MultiPoly.variable(names[i]) - MultiPoly.variable(names[j]),
                            message="alternating quotient left a remainder",
                        )
                schur_cache[srt] = q
            sym = schur_cache[srt]
        tail = MultiPoly(other_vars, {rest: c}) if other_vars else MultiPoly.const(c)
        result = result + sym * tail
    return result


# ---------------------------------------------------------------------------
# truncated power series


class TruncatedSeries:
    """A MultiPoly together with a weighted-degree cutoff.

    Terms beyond the cutoff are meaningless and eagerly dropped.  Binary
    operations take the min of the two cutoffs.
    """

    __slots__ = ("body", "cutoff")

    def __init__(self, body, cutoff):
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        self.body = body.truncate_weight(cutoff)
        self.cutoff = cutoff

    @classmethod
    def from_const(cls, c, cutoff):
        return cls(MultiPoly.const(c), cutoff)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.body + other, self.cutoff)
        return TruncatedSeries(self.body + other.body, min(self.cutoff, other.cutoff))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.body, self.cutoff)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.body - other, self.cutoff)
        return TruncatedSeries(self.body - other.body, min(self.cutoff, other.cutoff))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.body * other, self.cutoff)
        c = min(self.cutoff, other.cutoff)
        return TruncatedSeries((self.body * other.body).truncate_weight(c), c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.cutoff == other.cutoff and self.body == other.body

    def __repr__(self):
        return "TruncatedSeries(%s; cutoff %d)" % (self.body.to_text(), self.cutoff)

    def truncate(self, cutoff):
        return TruncatedSeries(self.body, min(self.cutoff, cutoff))

    def constant_term(self):
        p = self.body
        return p.terms.get((0,) * len(p.vars), Fraction(0))

    def invert(self):
        """Multiplicative inverse; constant term must be nonzero."""
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("series has zero constant term")
        r = TruncatedSeries(MultiPoly.const(1 / c0), self.cutoff)
        # Newton iteration r <- r(2 - s r); error valuation doubles each pass
        k = 1
        while k <= self.cutoff:
            r = r * (TruncatedSeries.from_const(2, self.cutoff) - self * r)
            k *= 2
        return r

    def compose(self, name, inner):
        """Substitute variable `name` by the series `inner` (valuation >= 1)."""
        if isinstance(inner, MultiPoly):
            inner = TruncatedSeries(inner, self.cutoff)
        cutoff = min(self.cutoff, inner.cutoff)
        if inner.constant_term():
            raise ValueError("composition needs a series with zero constant term")
        body = self.body
        if name not in body.vars:
            return TruncatedSeries(body, cutoff)
        deg = body.degree_in(name)
        # Horner in `name`, highest power first
        out = TruncatedSeries(body.coefficient_of(name, deg), cutoff)
        for k in range(deg - 1, -1, -1):
            out = out * inner + TruncatedSeries(body.coefficient_of(name, k), cutoff)
        return out


def series_reversion(series, in_var, out_var):
    """Compositional inverse of s = in_var + O(in_var^2).

    Returns r, a TruncatedSeries in out_var (same cutoff), with
    s(r(out_var)) == out_var up to the cutoff.  Coefficients may live in any
    other variables present (they just ride along).
    """
    cutoff = series.cutoff
    x = TruncatedSeries(MultiPoly.variable(out_var), cutoff)
    body = series.body
    if body.coefficient_of(in_var, 0):
        raise ValueError("series to revert must have zero constant term")
    if body.coefficient_of(in_var, 1) != MultiPoly.const(1):
        raise ValueError("series to revert must start with the variable itself")
    # phi = s - id;  fixed point iteration r <- x - phi(r) gains one degree per pass
    phi = TruncatedSeries(body - MultiPoly.variable(in_var), cutoff)
    r = x
    for _ in range(cutoff):
        r = x - phi.compose(in_var, r)
    return r


# ---------------------------------------------------------------------------
# parsing (polynomials and rational functions in our variable alphabet)


class RationalFn:
    """Quotient num/den of two MultiPoly, kept unreduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p):
        return cls(p, MultiPoly.const(1))

    def __add__(self, other):
        other = _as_ratfn(other)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_ratfn(other))

    def __rsub__(self, other):
        return _as_ratfn(other) + (-self)

    def __mul__(self, other):
        other = _as_ratfn(other)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfn(other)
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_ratfn(other) / self

    def __pow__(self, n):
        if n < 0:
            return RationalFn(self.den ** (-n), self.num ** (-n))
        return RationalFn(self.num ** n, self.den ** n)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at %r" % (point,))
        return self.num.evaluate(point) / d

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        c = self.den.constant_value()
        return self.num * (1 / c)

    def is_odd(self, name="u"):
        """True iff f(-u) == -f(u) as a rational function (cross-multiplied)."""
        flip = {name: MultiPoly.variable(name) * Fraction(-1)}
        pn = self.num.subs(flip)
        pd = self.den.subs(flip)
        return pn * self.den == -(self.num * pd)

    def to_text(self):
        return "(%s)/(%s)" % (self.num.to_text(), self.den.to_text())


def _as_ratfn(v):
    if isinstance(v, RationalFn):
        return v
    if isinstance(v, MultiPoly):
        return RationalFn.from_poly(v)
    return RationalFn.from_poly(MultiPoly.const(_as_fraction(v)))


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return _as_ratfn(node.value)
        raise ValueError("only integer literals allowed, got %r" % (node.value,))
    if isinstance(node, ast.Name):
        var_weight(node.id)  # validates the name
        return _as_ratfn(MultiPoly.variable(node.id))
    if isinstance(node, ast.UnaryOp):
        v = _eval_node(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise ValueError("unsupported unary operator")
    if isinstance(node, ast.BinOp):
        op = node.op
        if isinstance(op, ast.Pow):
            base = _eval_node(node.left)
            if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                raise ValueError("exponent must be an integer literal")
            return base ** node.right.value
        left = _eval_node(node.left)
        right = _eval_node(node.right)
        if isinstance(op, ast.Add):
            return left + right
        if isinstance(op, ast.Sub):
            return left - right
        if isinstance(op, ast.Mult):
            return left * right
        if isinstance(op, ast.Div):
            return left / right
        raise ValueError("unsupported operator %r" % (op,))
    raise ValueError("unsupported syntax: %s" % ast.dump(node))


def parse_rational(text):
    """Parse e.g. "u/(1+u^2)" into a RationalFn.  `^` means power."""
    cooked = text.replace("^", "**")
    try:
        tree = ast.parse(cooked, mode="eval")
    except SyntaxError as exc:
        raise ValueError("cannot parse %r: %s" % (text, exc)) from None
    return _eval_node(tree)


def parse_poly(text):
    """Parse a polynomial; rejects genuine quotients."""
    r = parse_rational(text)
    if not r.is_polynomial():
        raise ValueError("expected a polynomial, got a quotient: %r" % (text,))
    return r.as_poly()
