"""The universal formal group law and its series dictionary.

The logarithm is g(u) = u + sum_n b_n u^{n+1} with free coefficients b_n;
its compositional inverse ("exponential") rewrites everything in the dual
alphabet a_i via x/exp(x) = 1 + a_1 x + a_2 x^2 + ...  The group law is
F(u, v) = exp(g(u) + g(v)).  All series are truncated at the weighted degree
matching a fixed u-degree cutoff D: a term u^i v^j b_omega is homogeneous of
weight 2(i+j) - 1, so weighted cutoff 2D - 1 keeps exactly the u-degrees
through D.
"""

from fractions import Fraction

from .exactalg import (
    MultiPoly,
    RationalFn,
    TruncatedSeries,
    exact_divide,
    series_reversion,
)


def _weighted_cutoff(degree):
    return 2 * degree - 1


class FormalGroupLaw:
    """Universal formal group law truncated at u-degree D."""

    def __init__(self, degree):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.degree = degree
        cutoff = _weighted_cutoff(degree)
        self.cutoff = cutoff
        log_terms = {}
        nvars = ["u1"] + ["b%d" % k for k in range(1, degree)]
        e0 = [0] * len(nvars)
        e0[0] = 1
        log_terms[tuple(e0)] = Fraction(1)
        for k in range(1, degree):
            e = [0] * len(nvars)
            e[0] = k + 1
            e[nvars.index("b%d" % k)] = 1
            log_terms[tuple(e)] = Fraction(1)
        self.log = TruncatedSeries(MultiPoly(nvars, log_terms), cutoff)
        self.exp = series_reversion(self.log, "u1", "x1")
        log_u2 = TruncatedSeries(self.log.body.subs({"u1": MultiPoly.variable("u2")}), cutoff)
        self.law = self.exp.compose("x1", self.log + log_u2)
        self._inverse = None

    def __repr__(self):
        return "FormalGroupLaw(degree=%d)" % self.degree

    def log_of(self, series):
        """g(series) for a series with zero constant term."""
        return self.log.compose("u1", series)

    def add(self, s, t):
        """F(s, t) by simultaneous substitution (capture-free)."""
        if isinstance(s, MultiPoly):
            s = TruncatedSeries(s, self.cutoff)
        if isinstance(t, MultiPoly):
            t = TruncatedSeries(t, self.cutoff)
        c = min(self.cutoff, s.cutoff, t.cutoff)
        body = self.law.body.subs({"u1": s.body, "u2": t.body})
        return TruncatedSeries(body, c)

    @property
    def inverse(self):
        """iota(u) with F(u, iota(u)) = 0."""
        if self._inverse is None:
            u = TruncatedSeries(MultiPoly.variable("u1"), self.cutoff)
            iota = -u
            for _ in range(self.degree):
                iota = iota - self.add(u, iota)
            self._inverse = iota
        return self._inverse

    def power_system(self, n, var="u1"):
        """The n-th power series [n](u); n may be negative."""
        u = TruncatedSeries(MultiPoly.variable("u1"), self.cutoff)
        if n == 0:
            cur = TruncatedSeries(MultiPoly.zero(), self.cutoff)
        else:
            k = abs(n)
            cur = u
            for _ in range(k - 1):
                cur = self.add(cur, u)
            if n < 0:
                cur = self.inverse.compose("u1", cur)
        if var != "u1":
            cur = TruncatedSeries(cur.body.subs({"u1": MultiPoly.variable(var)}), cur.cutoff)
        return cur

    def multi_bracket(self, nvec):
        """[n1, ..., nk](u1, ..., uk): iterated formal sum of powers."""
        if not nvec:
            raise ValueError("need at least one exponent")
        cur = self.power_system(nvec[0], "u1")
        for j, n in enumerate(nvec[1:], start=2):
            cur = self.add(cur, self.power_system(n, "u%d" % j))
        return cur


_FGL_CACHE = {}


def formal_group_law(degree):
    if degree not in _FGL_CACHE:
        _FGL_CACHE[degree] = FormalGroupLaw(degree)
    return _FGL_CACHE[degree]


# ---------------------------------------------------------------------------
# the a <-> b dictionary


def a_in_terms_of_b(degree):
    """{i: polynomial in b} from x/exp(x) = 1 + a_1 x + ..."""
    # one degree deeper than asked: the x^i coefficient carries b-weight i,
    # so its weighted degree 2i only fits under the next cutoff up
    fgl = formal_group_law(degree + 1)
    exp_over_x = TruncatedSeries(
        exact_divide(fgl.exp.body, MultiPoly.variable("x1"), "exponential series lost its leading term"),
        2 * degree,
    )
    quot = exp_over_x.invert()
    return {i: quot.body.coefficient_of("x1", i) for i in range(1, degree + 1)}


def b_in_terms_of_a(degree):
    """{n: polynomial in a} by reverting x/f(x) back to the logarithm."""
    cutoff = 2 * degree + 2
    f_vars = ["x1"] + ["a%d" % i for i in range(1, degree + 1)]
    terms = {tuple([0] * len(f_vars)): Fraction(1)}
    for i in range(1, degree + 1):
        e = [0] * len(f_vars)
        e[0] = i
        e[f_vars.index("a%d" % i)] = 1
        terms[tuple(e)] = Fraction(1)
    f = TruncatedSeries(MultiPoly(f_vars, terms), cutoff)
    ginv = TruncatedSeries(MultiPoly.variable("x1"), cutoff) * f.invert()
    g = series_reversion(ginv, "x1", "u1")
    return {n: g.body.coefficient_of("u1", n + 1) for n in range(1, degree + 1)}


def _alphabet_degree(poly, prefix):
    deg = 0
    for v in poly.vars:
        if v.startswith(prefix) and v[len(prefix):].isdigit():
            deg = max(deg, int(v[len(prefix):]))
    return deg


def basis_convert(poly, direction):
    """Rewrite a polynomial between the a- and b-alphabets.

    direction is "a->b" or "b->a"; the needed dictionary depth is read off
    the polynomial itself.
    """
    if direction == "a->b":
        depth = _alphabet_degree(poly, "a")
        table = a_in_terms_of_b(depth) if depth else {}
        mapping = {"a%d" % i: table[i] for i in table}
    elif direction == "b->a":
        depth = _alphabet_degree(poly, "b")
        table = b_in_terms_of_a(depth) if depth else {}
        mapping = {"b%d" % n: table[n] for n in table}
    else:
        raise ValueError("direction must be 'a->b' or 'b->a'")
    if not mapping:
        return poly
    return poly.subs(mapping)


# ---------------------------------------------------------------------------
# genus specializations


def _single_series_var(vars_):
    cands = [v for v in vars_ if v[0] in ("u", "x")]
    if len(set(cands)) != 1:
        raise ValueError("expected a one-variable series, got variables %r" % (vars_,))
    return cands[0]


def specialize_genus(f, degree):
    """Coefficient assignment {a_i: q_i} of the genus with f-series f.

    q_i is the x^i coefficient of x/f(x).  `f` may be a RationalFn or a
    TruncatedSeries in one variable; it must start u + O(u^2).
    """
    x = MultiPoly.variable("x1")
    if isinstance(f, RationalFn):
        var = _single_series_var(set(f.num.vars) | set(f.den.vars))
        num = f.num.subs({var: x})
        den = f.den.subs({var: x})
        num_over_x = exact_divide(num, x, "genus series must vanish at the origin")
        series = TruncatedSeries(den, degree) * TruncatedSeries(num_over_x, degree).invert()
    elif isinstance(f, TruncatedSeries):
        var = _single_series_var(f.body.vars)
        body = f.body.subs({var: x})
        num_over_x = exact_divide(body, x, "genus series must vanish at the origin")
        series = TruncatedSeries(num_over_x, degree).invert()
    else:
        raise TypeError("f must be a RationalFn or TruncatedSeries")
    if series.constant_term() != 1:
        raise ValueError("genus series must start with the variable itself (f'(0) = 1)")
    out = {}
    for i in range(1, degree + 1):
        c = series.body.coefficient_of("x1", i)
        if not c.is_constant():
            raise ValueError("genus coefficients must be numbers, got %s" % c.to_text())
        out[i] = c.constant_value()
    return out


def evaluate_class(class_poly, assignment):
    """Evaluate a cobordism class (polynomial in a_i) at numeric a-values.

    Unassigned a_i beyond the table default to 0.
    """
    point = {}
    for v in class_poly.vars:
        if v.startswith("a") and v[1:].isdigit():
            point[v] = assignment.get(int(v[1:]), Fraction(0))
        elif v.startswith("b"):
            raise ValueError("class is written in the b-alphabet; convert with basis_convert first")
        else:
            raise ValueError("class has a non-coefficient variable %r" % (v,))
    return class_poly.evaluate(point)


def todd_series(cutoff):
    """f(u) = 1 - e^{-u}, the Todd genus."""
    fact = Fraction(1)
    terms = {}
    for k in range(1, cutoff + 1):
        fact *= k
        terms[(k,)] = Fraction((-1) ** (k + 1), 1) / fact
    return TruncatedSeries(MultiPoly(("u1",), terms), cutoff)


def tanh_series(cutoff):
    """f(u) = tanh(u), the signature."""
    fact = [Fraction(1)]
    for k in range(1, cutoff + 2):
        fact.append(fact[-1] * k)
    sinh = MultiPoly(("u1",), {(k,): 1 / fact[k] for k in range(1, cutoff + 1, 2)})
    cosh = MultiPoly(("u1",), {(k,): 1 / fact[k] for k in range(0, cutoff + 1, 2)})
    return TruncatedSeries(sinh, cutoff) * TruncatedSeries(cosh, cutoff).invert()
