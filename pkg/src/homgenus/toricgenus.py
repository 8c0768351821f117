"""Universal toric genus via torus fixed-point localization.

The expansion of the genus of G/H lives in Q[x_1..x_d][a_1, a_2, ...][t]:
summing over the fixed points (Weyl cosets), each point contributes

    sign(p) * prod_j f(t * <Lambda_j(p), x>) / <Lambda_j(p), x>,

with f(z) = 1 + a_1 z + a_2 z^2 + ...  We clear to the common denominator
D = product of the distinct weight lines, do the division exactly, and read
off t-coefficients: everything below t^n vanishes for a genuine structure
and the t^n coefficient, which is free of the x's, is the bordism class.
Characteristic numbers s_omega replace the full product of f-factors by the
single a^omega coefficient, which keeps the arithmetic small even on large
flag manifolds.
"""

import itertools
import math
from fractions import Fraction

from .exactalg import MultiPoly, PoleCancellationError, divided_difference, exact_divide, var_key
from .rootdata import canonical_positive, mat_mul, vec_neg
from .structures import (
    HomogeneousSpace,
    InvariantStructure,
    StableStructure,
    SubgroupData,
    fixed_points,
    make_space,
)


def _form_of(vector):
    """The linear polynomial <vector, x> in variables x1..xd."""
    names = ["x%d" % (i + 1) for i in range(len(vector))]
    return MultiPoly.linear_form(names, vector)


def apply_weyl(poly, matrix):
    """Transport a polynomial in the x's by a Weyl matrix.

    A form <r, x> goes to <M r, x>, i.e. the variable x_j is substituted by
    the form whose coefficients are the j-th column of M.  Signed
    permutation matrices take an exponent-shuffling fast path.
    """
    dim = len(matrix)
    perm = {}
    is_signed_perm = True
    for j in range(dim):
        nz = [(i, matrix[i][j]) for i in range(dim) if matrix[i][j]]
        if len(nz) == 1 and nz[0][1] in (1, -1):
            perm[j] = nz[0]
        else:
            is_signed_perm = False
            break
    xnames = [v for v in poly.vars if v[0] == "x" and v[1:].isdigit()]
    if not xnames:
        return poly
    if is_signed_perm:
        out = {}
        vs = poly.vars
        slots = {v: k for k, v in enumerate(vs)}
        image_names = {"x%d" % (perm[int(v[1:]) - 1][0] + 1) for v in xnames}
        new_vs = tuple(sorted(set(vs) - set(xnames) | image_names, key=var_key))
        pos_new = {v: k for k, v in enumerate(new_vs)}
        for e, c in poly.terms.items():
            ne = [0] * len(new_vs)
            coeff = c
            for v, k in slots.items():
                ei = e[k]
                if not ei:
                    continue
                if v in xnames:
                    i, s = perm[int(v[1:]) - 1]
                    ne[pos_new["x%d" % (i + 1)]] += ei
                    if s < 0 and ei % 2:
                        coeff = -coeff
                else:
                    ne[pos_new[v]] += ei
            key = tuple(ne)
            acc = out.get(key, Fraction(0)) + coeff
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        return MultiPoly(new_vs, out)
    mapping = {}
    for v in xnames:
        j = int(v[1:]) - 1
        mapping[v] = MultiPoly.linear_form(
            ["x%d" % (i + 1) for i in range(dim)], [matrix[i][j] for i in range(dim)]
        )
    return poly.subs(mapping)


def _canonical_weights(weights, ordering):
    """[(line, scale)] for each weight vector."""
    return [canonical_positive(w, ordering) for w in weights]


def _f_factor(line_poly, scale, cutoff, powers_cache):
    """f(t * scale * line) truncated at t^cutoff, with f = 1 + sum a_i z^i."""
    key = id(line_poly)
    powers = powers_cache.setdefault(key, {0: MultiPoly.const(1)})
    factor = MultiPoly.const(1)
    for i in range(1, cutoff + 1):
        if i not in powers:
            powers[i] = powers[i - 1] * line_poly
        coeff = Fraction(scale) ** i
        factor = factor + MultiPoly(("a%d" % i, "t"), {(1, i): coeff}) * powers[i]
    return factor


def localized_numerator(points, ordering, cutoff, fiber_forms=None):
    """Common-denominator numerator of the localization sum.

    `points` is a list of (sign, weights); returns (N, lines) where the sum
    of sign/prod(weights)-type terms equals N / prod(lines) with the f-factor
    expansion carried to t^cutoff.  `fiber_forms`, when given, multiplies the
    point's term by an extra polynomial (used by twisted products).
    """
    canon = [_canonical_weights(ws, ordering) for _, ws in points]
    lines = []
    seen = set()
    for cw in canon:
        for line, _ in cw:
            if line not in seen:
                seen.add(line)
                lines.append(line)
    line_polys = {line: _form_of(line) for line in lines}
    total = MultiPoly.zero()
    powers_cache = {}
    for k, (sign, _) in enumerate(points):
        cw = canon[k]
        own = {line for line, _ in cw}
        if len(own) != len(cw):
            raise ValueError("two isotropy weights at one fixed point share a line")
        coeff = Fraction(sign)
        for _, scale in cw:
            coeff /= scale
        term = MultiPoly.const(coeff)
        for line in lines:
            if line not in own:
                term = term * line_polys[line]
        for line, scale in cw:
            term = (term * _f_factor(line_polys[line], scale, cutoff, powers_cache)).truncate_var(
                "t", cutoff
            )
        if fiber_forms is not None:
            term = (term * fiber_forms[k]).truncate_var("t", cutoff)
        total = total + term
    return total, lines


class GenusExpansion:
    """The localized genus, cleared of denominators and divided out exactly."""

    def __init__(self, structure, cutoff, form, label=None):
        self.structure = structure
        self.cutoff = cutoff
        self.form = form
        self.label = label

    def __repr__(self):
        return "GenusExpansion(%s, cutoff=%d)" % (self.label or "?", self.cutoff)

    def coefficient(self, l):
        """Coefficient of t^l, a polynomial in the x's and a's."""
        return self.form.coefficient_of("t", l)

    def lower_terms_vanish(self):
        n = self.structure.space.n if self.structure is not None else self.cutoff
        return all(self.coefficient(l).is_zero() for l in range(min(n, self.cutoff + 1)))

    def bordism_class(self):
        """The t^n coefficient; must be free of the x's."""
        n = self.structure.space.n
        if self.cutoff < n:
            raise ValueError("expansion cutoff %d is below the dimension %d" % (self.cutoff, n))
        cls = self.coefficient(n).restrict_vars()
        if any(v[0] == "x" for v in cls.vars):
            raise ArithmeticError(
                "top t-coefficient still involves the torus variables; not a bordism class"
            )
        return cls

    def __eq__(self, other):
        if not isinstance(other, GenusExpansion):
            return NotImplemented
        return self.cutoff == other.cutoff and self.form == other.form


def chern_dold_genus(structure, cutoff=None):
    """Localized genus expansion of an invariant or stable structure."""
    space = structure.space
    if cutoff is None:
        cutoff = space.n
    # fixed_points hands back signs relative to the reference structure; the
    # expansion is an invariant of the oriented manifold, so the orientation
    # sign comes back in here.
    orientation = getattr(structure, "global_sign", 1)
    fps = fixed_points(structure)
    points = [(orientation * fp.sign, fp.weights) for fp in fps]
    total, lines = localized_numerator(points, space.ordering, cutoff)
    form = total
    for line in lines:
        form = exact_divide(form, _form_of(line), "localization sum has uncancelled pole")
    return GenusExpansion(structure, cutoff, form, label=space.label)


# ---------------------------------------------------------------------------
# characteristic numbers s_omega


def _normalize_omega(omega, n):
    omega = tuple(int(k) for k in omega)
    if any(k < 0 for k in omega):
        raise ValueError("omega entries must be nonnegative")
    if len(omega) < n:
        omega = omega + (0,) * (n - len(omega))
    if len(omega) > n and any(omega[n:]):
        raise ValueError("omega has entries beyond the dimension")
    omega = omega[:n]
    weight = sum((i + 1) * k for i, k in enumerate(omega))
    if weight != n:
        raise ValueError("omega must have total weight %d, got %d" % (n, weight))
    return omega


def _f_omega(forms, omega):
    """Coefficient of a^omega in prod_j f(<form_j, x>), as a polynomial in x.

    Incremental over the forms, pruned to sub-multi-indices of omega.
    """
    support = [i + 1 for i, k in enumerate(omega) if k]
    zero = tuple(0 for _ in omega)
    state = {zero: MultiPoly.const(1)}
    for form in forms:
        powers = {}
        new = dict(state)
        for key, poly in state.items():
            for i in support:
                if key[i - 1] >= omega[i - 1]:
                    continue
                if i not in powers:
                    powers[i] = form ** i
                k2 = list(key)
                k2[i - 1] += 1
                k2 = tuple(k2)
                add = poly * powers[i]
                cur = new.get(k2)
                new[k2] = add if cur is None else cur + add
        state = new
    return state.get(tuple(omega), MultiPoly.zero())


_LINE_POWER_CACHE = {}


def _line_power(line, m):
    p = _LINE_POWER_CACHE.get((line, m))
    if p is None:
        p = _form_of(line) ** m
        _LINE_POWER_CACHE[(line, m)] = p
    return p


def s_number(structure, omega):
    """The characteristic number s_omega, an exact integer.

    Computed from the fixed-point sum: the a^omega coefficient of each local
    contribution is f_omega(transported weights) over the product of the
    weights; cleared to the common line denominator and divided exactly, the
    sum collapses to a constant.
    """
    space = structure.space
    omega = _normalize_omega(omega, space.n)
    parts = [(i + 1, k) for i, k in enumerate(omega) if k]
    single_power = parts[0][0] if len(parts) == 1 and parts[0][1] == 1 else None
    orientation = getattr(structure, "global_sign", 1)
    fps = fixed_points(structure)
    canon = [_canonical_weights(fp.weights, space.ordering) for fp in fps]
    lines = []
    seen = set()
    for cw in canon:
        for line, _ in cw:
            if line not in seen:
                seen.add(line)
                lines.append(line)
    line_polys = {line: _form_of(line) for line in lines}
    total = MultiPoly.zero()
    for fp, cw in zip(fps, canon):
        coeff = Fraction(fp.sign)
        for _, scale in cw:
            coeff /= scale
        if single_power is not None:
            # f_omega for a one-part omega is just a power sum of the weights
            m = single_power
            term = MultiPoly.zero()
            for line, scale in cw:
                term = term + _line_power(line, m) * (Fraction(scale) ** m)
            term = term * coeff
        else:
            weight_forms = [_form_of(w) for w in fp.weights]
            term = _f_omega(weight_forms, omega) * coeff
        own = {line for line, _ in cw}
        for line in lines:
            if line not in own:
                term = term * line_polys[line]
        total = total + term
    for line in lines:
        total = exact_divide(total, line_polys[line], "localization sum has uncancelled pole")
    if not total.is_constant():
        raise ArithmeticError("s_omega did not collapse to a constant: %s" % total.to_text())
    value = total.constant_value() * orientation
    if value.denominator != 1:
        raise ArithmeticError("s_omega value is not an integer: %s" % value)
    return int(value)


def top_s(structure):
    """s_n, the top power-sum characteristic number (obstruction to nothing:
    it simply vanishes in many flag cases)."""
    n = structure.space.n
    return s_number(structure, (0,) * (n - 1) + (1,))


def _block_partition(space):
    """For U(n)-type spaces with block-diagonal isotropy: list of blocks
    (sorted tuples of coordinate indices), or None when not of that shape."""
    g = space.group
    if not (g.label.startswith("U(") or g.label.startswith("SU(")):
        return None
    n = g.dim
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    sub_roots = set(space.subgroup.root_set)
    for r in space.subgroup.root_set:
        nz = [i for i, c in enumerate(r) if c]
        if len(nz) != 2:
            return None
        i, j = nz
        parent[find(i)] = find(j)
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    block_list = sorted((tuple(sorted(b)) for b in blocks.values()), key=lambda b: b[0])
    # the subgroup roots must fill each block completely
    expect = set()
    for b in block_list:
        for i in b:
            for j in b:
                if i != j:
                    r = [0] * n
                    r[i], r[j] = 1, -1
                    expect.add(tuple(Fraction(c) for c in r))
    if expect != set(sub_roots):
        return None
    return block_list


def s_number_schur_route(structure, omega):
    """Type-A cross-check: s_omega via the divided-difference operator.

    Valid for U(n)/(product of unitary blocks).  The answer is
    (lambda / prod q_l!) . L( prod_blocks Vandermonde_block * f_omega ),
    with lambda the product of the structure's signs.
    """
    space = structure.space
    blocks = _block_partition(space)
    if blocks is None:
        raise ValueError("the divided-difference route needs a U(n)/(block product) space")
    omega = _normalize_omega(omega, space.n)
    names = ["x%d" % (i + 1) for i in range(space.group.dim)]
    lam = Fraction(1)
    for e in structure.eps:
        lam *= e
    forms = [_form_of(r) for r in structure.roots]
    arg = _f_omega(forms, omega)
    for b in blocks:
        for ii in range(len(b)):
            for jj in range(ii + 1, len(b)):
                arg = arg * (MultiPoly.variable(names[b[ii]]) - MultiPoly.variable(names[b[jj]]))
        lam /= math.factorial(len(b))
    res = divided_difference(arg, names)
    if not res.is_constant():
        raise ArithmeticError("divided difference did not produce a constant")
    value = res.constant_value() * lam
    if value.denominator != 1:
        raise ArithmeticError("s_omega value is not an integer: %s" % value)
    return int(value)


# ---------------------------------------------------------------------------
# twisted products of fibrations


def _signed_root_set(structure):
    return set(structure.roots)


def combine_structures(base_structure, fiber_structure, total_space=None):
    """The invariant structure on G/K induced by base (G/H) and fiber (H/K)."""
    base_space = base_structure.space
    fiber_space = fiber_structure.space
    if fiber_space.group.root_set != base_space.subgroup.root_set:
        raise ValueError("fiber ambient group must be the base isotropy group")
    if total_space is None:
        total_space = HomogeneousSpace(
            base_space.group,
            SubgroupData(base_space.group, fiber_space.subgroup.roots, label=fiber_space.subgroup.label),
            label="%s/%s" % (base_space.group.label, fiber_space.subgroup.label),
        )
    union = {}
    for r in base_structure.roots + fiber_structure.roots:
        line, scale = canonical_positive(r, total_space.ordering)
        union[line] = 1 if scale > 0 else -1
    signs = []
    for sm in total_space.summands:
        sm_signs = set()
        for li, ori in zip(sm.line_indices, sm.orientation):
            line = total_space.comp_roots[li]
            if line not in union:
                raise ValueError("line %s of the total space is covered by neither base nor fiber" % (line,))
            sm_signs.add(union[line] * ori)
        if len(sm_signs) != 1:
            raise ValueError("combined signs are not constant on an isotropy summand")
        signs.append(sm_signs.pop())
    return InvariantStructure(total_space, tuple(signs))


def twisted_product(base_structure, fiber_structure, cutoff=None):
    """Genus of the total space of H/K -> G/K -> G/H from base and fiber data.

    Requires the base structure's signed root set to be invariant under the
    isotropy Weyl group W_H; each base coset then transports the fiber's
    expansion, and the base poles clear exactly as in the plain genus.
    """
    base_space = base_structure.space
    fiber_space = fiber_structure.space
    if fiber_space.group.root_set != base_space.subgroup.root_set:
        raise ValueError("fiber ambient group must be the base isotropy group")
    base_roots = _signed_root_set(base_structure)
    for el in base_space.subgroup_weyl.elements:
        if {tuple(el.apply(r)) for r in base_roots} != base_roots:
            raise ValueError(
                "base structure is not invariant under the isotropy Weyl group; "
                "the fibration does not transport it"
            )
    combined = combine_structures(base_structure, fiber_structure)
    total_space = combined.space
    if cutoff is None:
        cutoff = total_space.n
    fiber_form = chern_dold_genus(fiber_structure, cutoff).form
    fps = fixed_points(base_structure)
    points = [(fp.sign, fp.weights) for fp in fps]
    fiber_forms = [apply_weyl(fiber_form, fp.rep.matrix) for fp in fps]
    total, lines = localized_numerator(points, base_space.ordering, cutoff, fiber_forms=fiber_forms)
    form = total
    for line in lines:
        form = exact_divide(form, _form_of(line), "localization sum has uncancelled pole")
    return GenusExpansion(combined, cutoff, form, label=total_space.label + " (twisted)")


# ---------------------------------------------------------------------------
# quaternionic projective spaces: restricted expansions and the obstruction


def _odd_component(var, max_index):
    """[f(2v) - f(-2v)] / (2v) = sum_l a_{2l+1} 2^{2l+1} v^{2l}, computed by
    genuine series division (not transcribed)."""
    cutoff = 2 * max_index + 1
    v = MultiPoly.variable(var)
    f_plus = MultiPoly.const(1)
    f_minus = MultiPoly.const(1)
    for i in range(1, cutoff + 1):
        ai = MultiPoly.variable("a%d" % i)
        f_plus = f_plus + ai * (2 * v) ** i
        f_minus = f_minus + ai * (-2 * v) ** i
    return exact_divide(f_plus - f_minus, 2 * v, "odd part lost its leading factor")


def restricted_genus_hp(n=2, which="sp-flag", max_index=3):
    """Expansion of the genus restricted over the quaternionic base (n = 2).

    which = "sp-flag": the full flag Sp(2)/T^2 fibered over the quaternionic
    line; the component at one base point is the product of two odd f-kernels
    and its coefficient table g0 is returned.  which = "cp-odd": the odd
    projective space fibered by spheres; the two-point expansion in the
    fiber variable is returned together with a note that the closed-form
    coefficient table sometimes quoted for it differs by a factor of 4 —
    the computed expansion is authoritative.
    """
    if n != 2:
        raise ValueError("only n = 2 is implemented; general n is out of scope")
    if which == "sp-flag":
        s1 = _odd_component("x1", max_index)
        s2 = _odd_component("x2", max_index)
        component = s1 * s2
        table = {}
        for i1 in range(max_index + 1):
            for i2 in range(max_index + 1):
                c = component.coefficient_of("x1", 2 * i1).coefficient_of("x2", 2 * i2)
                table[(i1, i2)] = c
        return {
            "which": which,
            "fixed_point_brackets": {
                "prefactor": 2,
                "factors": [[(2, 0), (-2, 0)], [(0, 2), (0, -2)]],
            },
            "component": component,
            "restriction": component * 2,
            "g0_table": table,
        }
    if which == "cp-odd":
        s2 = _odd_component("x2", max_index)
        expansion = s2 * 2
        coeffs = {k: expansion.coefficient_of("x2", 2 * k) for k in range(max_index + 1)}
        return {
            "which": which,
            "fixed_point_brackets": {
                "prefactor": 2,
                "factors": [[(0, 2), (0, -2)]],
            },
            "component": s2,
            "expansion": expansion,
            "coefficients": coeffs,
            "note": (
                "coefficient of x2^(2k) computed as 2^(2k+2) * a_(2k+1); a closed-form "
                "table sometimes quoted for this case differs by a factor of 4, and the "
                "computed expansion here is authoritative"
            ),
        }
    raise ValueError("which must be 'sp-flag' or 'cp-odd'")


def hp_obstruction_search(n=2):
    """Exhaustive sign search for a torus-invariant structure on the
    quaternionic plane Sp(3)/(Sp(1) x Sp(2)).

    Hypothetical structure roots are eps_j (x1 + xj) and delta_j (x1 - xj)
    for j = 2, 3 with free signs.  For each of the 16 assignments we form the
    localization numerator over the three fixed points and test the t^l
    coefficients for l < 4 (all of which vanish on a genuine structure).
    Every assignment fails; the report records, per assignment, the first
    nonvanishing order and a rational witness value, plus the sign relations
    that characterize surviving the t^1 test.
    """
    if n != 2:
        raise ValueError("only n = 2 is implemented; general n is out of scope")
    group_label = "Sp(3)"
    space = make_space(
        group_label,
        [(2, 0, 0)]
        + [(0, 2, 0), (0, 0, 2), (0, 1, 1), (0, 1, -1)],
        label="HP2",
        subgroup_label="Sp(1)xSp(2)",
    )
    # complementary lines in canonical order: x1-x2, x1-x3, x1+x3, x1+x2
    lines = space.comp_roots
    by_vec = {line: i for i, line in enumerate(lines)}
    plus = {2: by_vec[(1, 1, 0)], 3: by_vec[(1, 0, 1)]}
    minus = {2: by_vec[(1, -1, 0)], 3: by_vec[(1, 0, -1)]}
    images = space.coset_root_images
    reps = space.cosets.representatives
    names = ("eps2", "eps3", "delta2", "delta3")
    rows = []
    t1_survivors = []
    for assignment in itertools.product((1, -1), repeat=4):
        eps = {2: assignment[0], 3: assignment[1]}
        delta = {2: assignment[2], 3: assignment[3]}
        signs_by_line = [0] * len(lines)
        for j in (2, 3):
            signs_by_line[plus[j]] = eps[j]
            signs_by_line[minus[j]] = delta[j]
        points = []
        for i in range(len(reps)):
            weights = [tuple(s * c for c in img) for s, img in zip(signs_by_line, images[i])]
            points.append((1, weights))
        numerator, _ = localized_numerator(points, space.ordering, 3)
        first_bad = None
        witness = None
        for l in range(4):
            coeff = numerator.coefficient_of("t", l)
            if not coeff.is_zero():
                first_bad = l
                # a readable rational witness: strip the a-variable, plug small x's
                stripped = coeff
                for v in list(coeff.vars):
                    if v[0] == "a":
                        stripped = stripped.coefficient_of(v, stripped.degree_in(v))
                point = {v: Fraction(k) for k, v in enumerate(sorted(stripped.vars))}
                witness = stripped.evaluate(point) if stripped.vars else stripped.constant_value()
                break
        if first_bad is None or first_bad > 1:
            t1_survivors.append(assignment)
        rows.append(
            {
                "assignment": dict(zip(names, assignment)),
                "first_nonvanishing_order": first_bad,
                "witness": witness,
            }
        )
    relations = _characterize_survivors(t1_survivors, names)
    admissible = [r for r in rows if r["first_nonvanishing_order"] is None]
    return {
        "space": "Sp(3)/(Sp(1)xSp(2))",
        "verdict": "no valid assignment" if not admissible else "admissible assignment found",
        "exhaustive": len(rows) == 16,
        "admissible": admissible,
        "rows": rows,
        "t1_relations": relations,
        "t1_survivors": [dict(zip(names, a)) for a in t1_survivors],
    }


def _characterize_survivors(survivors, names):
    """Linear sign relations (si = sj or si = -sj) holding on all survivors."""
    if not survivors:
        return ["t^1 already excludes every assignment"]
    rels = []
    k = len(names)
    for i in range(k):
        for j in range(i + 1, k):
            if all(a[i] == a[j] for a in survivors):
                rels.append("%s = %s" % (names[i], names[j]))
            elif all(a[i] == -a[j] for a in survivors):
                rels.append("%s = -%s" % (names[i], names[j]))
    return rels
