"""Homogeneous spaces G/H and their invariant / stable tangential structures.

A space is a pair (group, maximal-rank subgroup).  The complementary roots
split into orbits of the subgroup's Weyl group acting on signed roots; an
invariant almost complex structure is a choice of sign on each orbit, and a
stable tangential structure is a per-fixed-point sign table refining that.
"""

import itertools
from fractions import Fraction

from .rootdata import (
    CosetSpace,
    GroupData,
    Ordering,
    SubgroupData,
    WeylGroup,
    build_group,
    canonical_positive,
    coset_space,
    default_ordering,
    identity_matrix,
    mat_mul,
    reflection_matrix,
    space_from_doc,
    vec,
    vec_add,
    vec_neg,
    weyl_group,
)

STRUCTURE_CAP = 20


def _comp_sort_key(root):
    lead = next(i for i, c in enumerate(root) if c)
    return (lead, root)


class Summand:
    """One irreducible isotropy summand: an orbit of signed complementary
    roots under the subgroup Weyl group, up to total sign."""

    __slots__ = ("line_indices", "orientation", "self_conjugate")

    def __init__(self, line_indices, orientation, self_conjugate):
        self.line_indices = tuple(line_indices)
        self.orientation = tuple(orientation)
        self.self_conjugate = self_conjugate

    def __repr__(self):
        return "Summand(lines=%s%s)" % (
            self.line_indices,
            ", self-conjugate" if self.self_conjugate else "",
        )

    def __len__(self):
        return len(self.line_indices)


class HomogeneousSpace:
    """G/H with positive Euler characteristic, plus cached Weyl data."""

    def __init__(self, group, subgroup, label=None, ordering=None):
        self.group = group
        self.subgroup = subgroup
        self.label = label or "%s/%s" % (group.label, subgroup.label)
        self.ordering = ordering or default_ordering(group.dim)
        comp = []
        seen_lines = set()
        for r in group.roots:
            if r in subgroup.root_set:
                continue
            line, _ = canonical_positive(r, self.ordering)
            if line not in seen_lines:
                seen_lines.add(line)
                comp.append(line)
        comp.sort(key=_comp_sort_key)
        self.comp_roots = tuple(comp)
        self.n = len(comp)  # complex dimension of G/H
        self._weyl = None
        self._wh = None
        self._cosets = None
        self._summands = None
        self._root_images = None

    def __repr__(self):
        return "HomogeneousSpace(%s)" % self.label

    @property
    def weyl(self):
        if self._weyl is None:
            self._weyl = weyl_group(self.group, self.ordering)
        return self._weyl

    @property
    def subgroup_weyl(self):
        if self._wh is None:
            simple = self.subgroup.simple_roots(self.ordering)
            if simple:
                gens = [reflection_matrix(a, self.group.dim, self.group.gram) for a in simple]
                self._wh = WeylGroup(self.group.dim, gens, label=self.subgroup.label)
            else:
                self._wh = WeylGroup(self.group.dim, [], label=self.subgroup.label)
        return self._wh

    @property
    def cosets(self):
        if self._cosets is None:
            self._cosets = CosetSpace(self.weyl, [e.matrix for e in self.subgroup_weyl.elements])
        return self._cosets

    @property
    def euler_characteristic(self):
        return len(self.cosets)

    @property
    def coset_root_images(self):
        """coset_root_images[w][l] = (coset rep w) applied to comp_roots[l]."""
        if self._root_images is None:
            self._root_images = tuple(
                tuple(rep.apply(r) for r in self.comp_roots) for rep in self.cosets.representatives
            )
        return self._root_images

    @property
    def summands(self):
        if self._summands is None:
            self._summands = self._compute_summands()
        return self._summands

    def _compute_summands(self):
        line_index = {r: i for i, r in enumerate(self.comp_roots)}
        wh_mats = [e.matrix for e in self.subgroup_weyl.elements]
        assigned = {}
        summands = []
        for i, rho in enumerate(self.comp_roots):
            if i in assigned:
                continue
            # orbit of the signed root +rho under W_H
            orbit = set()
            frontier = [rho]
            while frontier:
                v = frontier.pop()
                if v in orbit:
                    continue
                orbit.add(v)
                for m in wh_mats:
                    w = tuple(sum(m[a][b] * v[b] for b in range(len(v))) for a in range(len(v)))
                    if w not in orbit:
                        frontier.append(w)
            self_conj = any(vec_neg(v) in orbit for v in orbit)
            lines = []
            orient = {}
            for v in orbit:
                line, scale = canonical_positive(v, self.ordering)
                li = line_index[line]
                lines.append(li)
                orient[li] = 1 if scale > 0 else -1
            lines = sorted(set(lines))
            for li in lines:
                assigned[li] = len(summands)
            if self_conj:
                summands.append(Summand(lines, (0,) * len(lines), True))
            else:
                summands.append(Summand(lines, tuple(orient[li] for li in lines), False))
        summands.sort(key=lambda s: s.line_indices[0])
        return tuple(summands)


def make_space(group, subgroup_roots=None, label=None, subgroup_label="H"):
    """Build a HomogeneousSpace from a group spec and subgroup root list.

    `group` may be a GroupData or a name like "Sp(3)"; `subgroup_roots` a
    list of vectors (negation closure is completed automatically).
    """
    if isinstance(group, str):
        group = build_group(group)
    roots = []
    seen = set()
    for r in subgroup_roots or ():
        r = vec(r)
        for s in (r, vec_neg(r)):
            if s not in seen:
                seen.add(s)
                roots.append(s)
    sub = SubgroupData(group, roots, label=subgroup_label)
    return HomogeneousSpace(group, sub, label=label)


def space_from_json(doc, label=None):
    group, sub = space_from_doc(doc)
    return HomogeneousSpace(group, sub, label=label or doc.get("label"))


class InvariantStructure:
    """An invariant almost complex structure: a sign per isotropy summand."""

    __slots__ = ("space", "summand_signs", "_eps")

    def __init__(self, space, summand_signs):
        if len(summand_signs) != len(space.summands):
            raise ValueError(
                "expected %d summand signs, got %d" % (len(space.summands), len(summand_signs))
            )
        for s, sm in zip(summand_signs, space.summands):
            if s not in (1, -1):
                raise ValueError("signs must be +1 or -1")
            if sm.self_conjugate:
                raise ValueError("summand %s is self-conjugate; no invariant structure exists" % (sm,))
        self.space = space
        self.summand_signs = tuple(summand_signs)
        eps = [0] * space.n
        for sign, sm in zip(self.summand_signs, space.summands):
            for li, ori in zip(sm.line_indices, sm.orientation):
                eps[li] = sign * ori
        self._eps = tuple(eps)

    @property
    def eps(self):
        """Sign on each complementary root line, in comp_roots order."""
        return self._eps

    @property
    def roots(self):
        """The structure's weight roots eps_l * rho_l, in comp_roots order."""
        sp = self.space
        return tuple(tuple(e * c for c in r) for e, r in zip(self._eps, sp.comp_roots))

    def to_signs(self):
        return "".join("+" if s > 0 else "-" for s in self.summand_signs)

    def conjugate(self):
        return InvariantStructure(self.space, tuple(-s for s in self.summand_signs))

    def __eq__(self, other):
        return (
            isinstance(other, InvariantStructure)
            and self.space is other.space
            and self.summand_signs == other.summand_signs
        )

    def __hash__(self):
        return hash((id(self.space), self.summand_signs))

    def __repr__(self):
        return "InvariantStructure(%s, %s)" % (self.space.label, self.to_signs())


def parse_signs(space, text):
    text = text.strip()
    if set(text) - set("+-"):
        raise ValueError("sign string may only contain '+' and '-': %r" % (text,))
    return InvariantStructure(space, tuple(1 if c == "+" else -1 for c in text))


def enumerate_structures(space, cap=STRUCTURE_CAP):
    """All invariant almost complex structures (2^s sign choices).

    Returns [] when some summand is conjugation-invariant, in which case no
    invariant structure exists at all.
    """
    if any(sm.self_conjugate for sm in space.summands):
        return []
    s = len(space.summands)
    if s > cap:
        raise ValueError("too many summands (%d) for exhaustive enumeration; cap is %d" % (s, cap))
    return [InvariantStructure(space, signs) for signs in itertools.product((1, -1), repeat=s)]


def first_chern(structure):
    """First Chern class as a weight vector: sum of the structure roots."""
    total = (Fraction(0),) * structure.space.group.dim
    for r in structure.roots:
        total = vec_add(total, r)
    return total


def find_su_structures(space, cap=STRUCTURE_CAP):
    """Invariant structures with vanishing first Chern class."""
    return [j for j in enumerate_structures(space, cap) if not any(first_chern(j))]


def c1_divisibility(structure, n):
    """Is every coordinate of c_1 divisible by n (in the weight lattice)?"""
    if n <= 0:
        raise ValueError("divisor must be positive")
    return all((c / n).denominator == 1 for c in first_chern(structure))


def is_integrable(structure):
    """Does some Weyl element move the structure roots into a positive system?

    Exhaustive over the ambient Weyl group; exact.  The subgroup's positive
    system can always be chosen compatibly afterwards, so this single check
    settles integrability of the invariant structure.
    """
    space = structure.space
    ordering = space.ordering
    roots = structure.roots
    for el in space.weyl.elements:
        try:
            if all(ordering.sign(el.apply(r)) > 0 for r in roots):
                return True
        except ValueError:
            # ordering vanished on an image; that element gives no verdict
            continue
    return False


class StableStructure:
    """A stable tangential structure: per-fixed-point signs over a reference
    invariant structure, plus a global orientation sign."""

    __slots__ = ("space", "base", "table", "global_sign", "name")

    def __init__(self, space, base, table, global_sign=1, name=None):
        self.space = space
        self.base = base
        self.table = tuple(tuple(row) for row in table)
        if len(self.table) != space.euler_characteristic:
            raise ValueError(
                "sign table needs one row per fixed point (%d), got %d"
                % (space.euler_characteristic, len(self.table))
            )
        for row in self.table:
            if len(row) != space.n:
                raise ValueError("each sign-table row needs %d entries" % space.n)
            if any(s not in (1, -1) for s in row):
                raise ValueError("table entries must be +1 or -1")
        if global_sign not in (1, -1):
            raise ValueError("global sign must be +1 or -1")
        self.global_sign = global_sign
        self.name = name

    def __repr__(self):
        return "StableStructure(%s%s)" % (self.space.label, ", " + self.name if self.name else "")


class FixedPoint:
    """Localization data at one coset: signed weights and an overall sign."""

    __slots__ = ("index", "rep", "weights", "sign")

    def __init__(self, index, rep, weights, sign):
        self.index = index
        self.rep = rep
        self.weights = tuple(weights)
        self.sign = sign

    def __repr__(self):
        return "FixedPoint(%d, sign=%+d, weights=%s)" % (self.index, self.sign, list(self.weights))


def fixed_points(structure):
    """Fixed-point localization data for an invariant or stable structure.

    For a stable structure the per-point sign is the product of that point's
    table entries -- the sign RELATIVE to the reference invariant structure.
    The global orientation sign is deliberately not folded in here: genera of
    the oriented manifold (chi_y, the genus expansion, s_omega) multiply it
    back themselves, while the rigidity functionals work with the relative
    data, which is what makes them structure-independent for odd kernels.
    """
    if isinstance(structure, InvariantStructure):
        space = structure.space
        eps = structure.eps
        images = space.coset_root_images
        return [
            FixedPoint(i, rep, [tuple(e * c for c in img) for e, img in zip(eps, images[i])], 1)
            for i, rep in enumerate(space.cosets.representatives)
        ]
    if isinstance(structure, StableStructure):
        space = structure.space
        base_eps = structure.base.eps
        images = space.coset_root_images
        out = []
        for i, rep in enumerate(space.cosets.representatives):
            row = structure.table[i]
            weights = [
                tuple(s * e * c for c in img) for s, e, img in zip(row, base_eps, images[i])
            ]
            sign = 1
            for s in row:
                sign *= s
            out.append(FixedPoint(i, rep, weights, sign))
        return out
    raise TypeError("expected an InvariantStructure or StableStructure")


# ---------------------------------------------------------------------------
# pairing of fixed points under a complementary reflection


class PairingEntry:
    __slots__ = (
        "coset",
        "partner",
        "weight_at_coset",
        "negated_weight_present",
        "flip_count",
        "groups",
        "third_group_multiples",
        "fourth_group",
        "involutive",
    )

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}


def verify_pairing(structure, alpha):
    """Pair each fixed point with its image under the reflection in alpha.

    alpha must span a complementary root line.  For each coset w with
    partner wtilde (the coset of w followed by the reflection), the weights
    at the two points are compared through the ambient reflection r in the
    transported root w(alpha): weights fall into fixed ones (I), swapped
    pairs (II), negated-swapped pairs (III, whose sums are multiples of
    w(alpha)), or shifted ones (IV).  Reports, per coset: whether the
    negated transported weight occurs at the partner, the sign-flip parity
    (always odd when group IV is empty), and the group-III multiples.
    """
    space = structure.space
    alpha = vec(alpha)
    line, _ = canonical_positive(alpha, space.ordering)
    if line not in space.comp_roots:
        raise ValueError(
            "reflection not in the coset quotient: %s does not span a complementary root line" % (alpha,)
        )
    li = space.comp_roots.index(line)
    if isinstance(structure, InvariantStructure):
        struct_roots = structure.roots
    else:
        struct_roots = structure.base.roots
    a_weight = struct_roots[li]
    t_matrix = reflection_matrix(line, space.group.dim, space.group.gram)
    fps = fixed_points(structure)
    weights_by_coset = [fp.weights for fp in fps]
    entries = []
    all_hold = True
    for i, rep in enumerate(space.cosets.representatives):
        partner_idx = space.cosets.index_of_matrix(mat_mul(rep.matrix, t_matrix))
        wa = rep.apply(a_weight)
        refl = reflection_matrix(wa, space.group.dim, space.group.gram)
        ys = weights_by_coset[i]
        imgs = [tuple(sum(refl[r][c] * y[c] for c in range(len(y))) for r in range(len(y))) for y in ys]
        neg_ys = [vec_neg(y) for y in ys]
        groups = {}
        flips = 0
        thirds = []
        fourths = []
        used = set()
        for l, img in enumerate(imgs):
            if l in used:
                continue
            if img == ys[l]:
                groups[l] = "I"
            elif img == neg_ys[l]:
                groups[l] = "flip"
                flips += 1
            else:
                s = next((k for k, y in enumerate(ys) if k != l and y == img), None)
                if s is not None and imgs[s] == ys[l]:
                    groups[l] = groups[s] = "II"
                    used.add(s)
                else:
                    s = next((k for k, y in enumerate(neg_ys) if k != l and y == img), None)
                    if s is not None and imgs[s] == neg_ys[l]:
                        groups[l] = groups[s] = "III"
                        used.add(s)
                        flips += 2
                        total = vec_add(ys[l], ys[s])
                        ratio = _parallel_ratio(total, wa)
                        thirds.append(((l, s), ratio))
                        if ratio is None:
                            all_hold = False
                    else:
                        # reflection shifts the weight along w(alpha)
                        diff = vec_add(img, vec_neg(ys[l]))
                        groups[l] = "IV"
                        fourths.append((l, _parallel_ratio(diff, wa)))
        neg_wa = vec_neg(wa)
        present = neg_wa in weights_by_coset[partner_idx]
        if not present or flips % 2 == 0:
            all_hold = False
        back = space.cosets.index_of_matrix(
            mat_mul(space.cosets.representatives[partner_idx].matrix, t_matrix)
        )
        entries.append(
            PairingEntry(
                coset=i,
                partner=partner_idx,
                weight_at_coset=wa,
                negated_weight_present=present,
                flip_count=flips,
                groups=groups,
                third_group_multiples=thirds,
                fourth_group=fourths,
                involutive=(back == i),
            )
        )
    return {"entries": entries, "all_claims_hold": all_hold}


def _parallel_ratio(v, w):
    """v == ratio * w, or None when not parallel."""
    ratio = None
    for a, b in zip(v, w):
        if b == 0:
            if a != 0:
                return None
            continue
        r = Fraction(a) / Fraction(b)
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None
    if ratio is None:
        ratio = Fraction(0)
    return ratio
