"""Root systems, Weyl groups, and coset enumeration in exact arithmetic.

Groups are presented concretely: a coordinate dimension d, a finite list of
roots (integer/rational vectors of length d), and optionally a Gram matrix
when the natural coordinates are not orthonormal (G2).  Weyl elements are
stored as exact d x d matrices acting on column vectors, together with a
word in the simple reflections; breadth-first closure guarantees the word is
one of minimal length and lexicographically least among those.

Supported named groups: U(n), SU(n), Sp(n), SO(n), G2, and tori (U(1), Tn)
which contribute no roots.
"""

import re
from collections import deque
from fractions import Fraction

WEYL_CAP = 100000


def _frac(x):
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def vec(values):
    return tuple(_frac(v) for v in values)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u):
    return tuple(-a for a in u)


def vec_scale(u, c):
    return tuple(a * c for a in u)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def mat_vec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_mul(a, b):
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(a[i][k] * bt[j][k] for k in range(n)) for j in range(n)) for i in range(n))


def identity_matrix(n):
    return tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def gram_pairing(u, v, gram=None):
    """Invariant inner product B(u, v); plain dot when gram is None."""
    if gram is None:
        return dot(u, v)
    return sum(u[i] * gram[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def reflection_matrix(alpha, dim, gram=None):
    """Matrix of the reflection s_alpha(v) = v - 2 B(v,alpha)/B(alpha,alpha) alpha."""
    denom = gram_pairing(alpha, alpha, gram)
    if not denom:
        raise ValueError("cannot reflect in an isotropic vector %r" % (alpha,))
    if gram is None:
        galpha = alpha
    else:
        galpha = tuple(sum(gram[j][k] * alpha[k] for k in range(dim)) for j in range(dim))
    return tuple(
        tuple((Fraction(1) if i == j else Fraction(0)) - 2 * galpha[j] * alpha[i] / denom for j in range(dim))
        for i in range(dim)
    )


class Ordering:
    """A linear functional v picking the positive half of each root line.

    ``sign(root) = sgn <root, v>``; the ordering must be generic, i.e. never
    vanish on a root we ask about.
    """

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = vec(v)

    def __repr__(self):
        return "Ordering(%s)" % (self.v,)

    def sign(self, root):
        s = dot(root, self.v)
        if s > 0:
            return 1
        if s < 0:
            return -1
        raise ValueError("ordering is not generic: functional vanishes on root %s" % (root,))


def default_ordering(dim):
    """The standard generic functional (d, d-1, ..., 1)."""
    return Ordering(tuple(range(dim, 0, -1)))


def root_sign(root, ordering):
    return ordering.sign(root)


def canonical_positive(vector, ordering=None):
    """Primitive integer representative of the line through `vector`,
    oriented positively (default ordering when possible, else first nonzero
    coordinate positive).  Returns (line, scale) with vector == scale * line.
    """
    from math import gcd, lcm

    if all(not c for c in vector):
        raise ValueError("zero vector has no direction")
    denoms = lcm(*[_frac(c).denominator for c in vector])
    ints = [int(_frac(c) * denoms) for c in vector]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    ints = [c // g for c in ints]
    sign = 0
    if ordering is not None:
        s = dot(ints, ordering.v)
        sign = 1 if s > 0 else (-1 if s < 0 else 0)
    if sign == 0:
        for c in ints:
            if c:
                sign = 1 if c > 0 else -1
                break
    line = tuple(Fraction(c * sign) for c in ints)
    scale = Fraction(g * sign, denoms)
    return line, scale


class GroupData:
    """A compact connected Lie group presented by its root system."""

    def __init__(self, label, dim, roots, gram=None, rank=None):
        self.label = label
        self.dim = dim
        self.roots = tuple(vec(r) for r in roots)
        self.root_set = frozenset(self.roots)
        self.gram = tuple(tuple(_frac(c) for c in row) for row in gram) if gram is not None else None
        self.rank = rank if rank is not None else dim
        for r in self.roots:
            if len(r) != dim:
                raise ValueError("root %r has wrong length for dim %d" % (r, dim))
            if vec_neg(r) not in self.root_set:
                raise ValueError("root set not closed under negation at %r" % (r,))

    def __repr__(self):
        return "GroupData(%s)" % self.label

    def pairing(self, u, v):
        return gram_pairing(u, v, self.gram)

    def positive_roots(self, ordering=None):
        ordering = ordering or default_ordering(self.dim)
        return tuple(r for r in self.roots if ordering.sign(r) > 0)

    def simple_roots(self, ordering=None):
        """Indecomposable positive roots (a simple system)."""
        pos = self.positive_roots(ordering)
        pos_set = set(pos)
        simple = []
        for a in pos:
            if any(vec_sub(a, b) in pos_set for b in pos if b != a):
                continue
            simple.append(a)
        return tuple(sorted(simple))


_GROUP_RE = re.compile(r"^(U|SU|Sp|SO)\((\d+)\)$|^G2$|^T(\d+)$")


def build_group(spec):
    """Construct a named group from a string like "U(3)", "Sp(2)", "G2"."""
    spec = spec.strip()
    m = _GROUP_RE.match(spec)
    if not m:
        raise ValueError("unrecognized group %r (expected U(n), SU(n), Sp(n), SO(n), G2, or Tk)" % (spec,))
    if spec == "G2":
        gram = ((2, -1), (-1, 2))
        short = [(1, 0), (0, 1), (1, 1)]
        long = [(1, -1), (2, 1), (1, 2)]
        roots = []
        for r in short + long:
            roots.append(r)
            roots.append(tuple(-c for c in r))
        return GroupData("G2", 2, roots, gram=gram, rank=2)
    if m.group(3) is not None:  # torus Tk
        k = int(m.group(3))
        return GroupData(spec, k, [], rank=k)
    fam, n = m.group(1), int(m.group(2))
    if fam in ("U", "SU"):
        if n < 1:
            raise ValueError("need n >= 1 in %r" % (spec,))
        roots = []
        for i in range(n):
            for j in range(n):
                if i != j:
                    r = [0] * n
                    r[i], r[j] = 1, -1
                    roots.append(tuple(r))
        return GroupData(spec, n, roots, rank=n - 1 if fam == "SU" else n)
    if fam == "Sp":
        roots = []
        for i in range(n):
            r = [0] * n
            r[i] = 2
            roots.append(tuple(r))
            roots.append(tuple(-c for c in r))
            for j in range(i + 1, n):
                for si in (1, -1):
                    for sj in (1, -1):
                        r = [0] * n
                        r[i], r[j] = si, sj
                        roots.append(tuple(r))
        return GroupData(spec, n, roots, rank=n)
    if fam == "SO":
        l = n // 2
        roots = []
        for i in range(l):
            if n % 2 == 1:
                r = [0] * l
                r[i] = 1
                roots.append(tuple(r))
                roots.append(tuple(-c for c in r))
            for j in range(i + 1, l):
                for si in (1, -1):
                    for sj in (1, -1):
                        r = [0] * l
                        r[i], r[j] = si, sj
                        roots.append(tuple(r))
        return GroupData(spec, l, roots, rank=l)
    raise ValueError("unrecognized group %r" % (spec,))


class WeylElement:
    __slots__ = ("matrix", "word")

    def __init__(self, matrix, word):
        self.matrix = matrix
        self.word = word

    def __repr__(self):
        return "WeylElement(word=%s)" % (self.word,)

    def apply(self, v):
        return mat_vec(self.matrix, v)


class WeylGroup:
    """Closure of a set of reflections, with BFS-minimal words."""

    def __init__(self, dim, generators, cap=WEYL_CAP, label=""):
        self.dim = dim
        self.generators = tuple(generators)
        self.label = label
        ident = identity_matrix(dim)
        seen = {ident: WeylElement(ident, ())}
        queue = deque([seen[ident]])
        while queue:
            cur = queue.popleft()
            for gi, gen in enumerate(self.generators):
                m = mat_mul(cur.matrix, gen)
                if m not in seen:
                    el = WeylElement(m, cur.word + (gi,))
                    seen[m] = el
                    queue.append(el)
                    if len(seen) > cap:
                        raise ValueError("Weyl group exceeds the cap of %d elements" % cap)
        # BFS with ascending generator index enumerates words in (length, lex) order
        self.elements = sorted(seen.values(), key=lambda e: (len(e.word), e.word))
        self.by_matrix = {e.matrix: e for e in self.elements}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def contains_matrix(self, m):
        return m in self.by_matrix


def weyl_group(group, ordering=None, cap=WEYL_CAP):
    gens = [reflection_matrix(a, group.dim, group.gram) for a in group.simple_roots(ordering)]
    return WeylGroup(group.dim, gens, cap=cap, label=group.label)


class SubgroupData:
    """A closed subgroup of maximal rank, presented by its root subset."""

    def __init__(self, group, roots, label=""):
        self.group = group
        self.label = label or "H"
        self.roots = tuple(vec(r) for r in roots)
        self.root_set = frozenset(self.roots)
        for r in self.roots:
            if r not in group.root_set:
                raise ValueError("subgroup root %r is not a root of %s" % (r, group.label))
            if vec_neg(r) not in self.root_set:
                raise ValueError("subgroup roots not closed under negation at %r" % (r,))
        for a in self.roots:
            for b in self.roots:
                s = vec_add(a, b)
                if s in group.root_set and s not in self.root_set:
                    raise ValueError(
                        "subgroup roots not closed under addition: %r + %r is a root of %s but missing"
                        % (a, b, group.label)
                    )

    def __repr__(self):
        return "SubgroupData(%s < %s)" % (self.label, self.group.label)

    def as_group(self):
        """The subgroup viewed as a group in the ambient coordinates."""
        return GroupData(self.label, self.group.dim, self.roots, gram=self.group.gram)

    def simple_roots(self, ordering=None):
        return self.as_group().simple_roots(ordering)


def is_closed_system(roots, ambient):
    """Is `roots` a negation- and addition-closed subsystem of `ambient`?"""
    rs = set(vec(r) for r in roots)
    amb = set(vec(r) for r in ambient)
    if not rs <= amb:
        return False
    for r in rs:
        if vec_neg(r) not in rs:
            return False
    for a in rs:
        for b in rs:
            s = vec_add(a, b)
            if s in amb and s not in rs:
                return False
    return True


class CosetSpace:
    """Left cosets w W_H in W_G, one representative each.

    The representative is the element with the shortest word (ties broken
    lexicographically), i.e. the first member of the coset in BFS order.
    The number of cosets is the Euler characteristic of G/H.
    """

    def __init__(self, wg, wh_matrices):
        self.wg = wg
        self.wh_matrices = tuple(sorted(wh_matrices))
        reps = []
        key_to_index = {}
        for el in wg.elements:
            k = self.coset_key(el.matrix)
            if k not in key_to_index:
                key_to_index[k] = len(reps)
                reps.append(el)
        self.representatives = tuple(reps)
        self._key_to_index = key_to_index

    def coset_key(self, matrix):
        return min(mat_mul(matrix, v) for v in self.wh_matrices)

    def index_of_matrix(self, matrix):
        k = self.coset_key(matrix)
        try:
            return self._key_to_index[k]
        except KeyError:
            raise ValueError("matrix does not lie in the enumerated Weyl group") from None

    def __len__(self):
        return len(self.representatives)


def coset_space(group, subgroup, ordering=None, cap=WEYL_CAP):
    """Enumerate W_G / W_H for a subgroup of maximal rank."""
    wg = weyl_group(group, ordering, cap=cap)
    sub = subgroup.as_group()
    sub_simple = sub.simple_roots(ordering)
    if sub_simple:
        wh = WeylGroup(group.dim, [reflection_matrix(a, group.dim, group.gram) for a in sub_simple], cap=cap)
        wh_matrices = [e.matrix for e in wh.elements]
    else:
        wh_matrices = [identity_matrix(group.dim)]
    return CosetSpace(wg, wh_matrices)


# ---------------------------------------------------------------------------
# JSON space descriptions


def group_from_doc(doc):
    if isinstance(doc, str):
        return build_group(doc)
    if isinstance(doc, dict):
        dim = doc["dim"]
        gram = doc.get("gram")
        return GroupData(doc.get("label", "custom"), dim, [vec(r) for r in doc["roots"]], gram=gram)
    raise ValueError("group description must be a name or a {roots, dim} object")


def space_from_doc(doc):
    """Parse {"group": ..., "subgroup_roots": [[...]]} into (group, subgroup).

    Vector entries may be integers or exact rationals written as "p/q".
    """
    group = group_from_doc(doc["group"])
    sub = SubgroupData(group, [vec(r) for r in doc.get("subgroup_roots", [])], label=doc.get("subgroup_label", "H"))
    return group, sub
