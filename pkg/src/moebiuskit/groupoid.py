"""Finite 1-groupoids, functors between them, and homotopy pullbacks.

Everything downstream (simplicial levels, axiom checks, weighted counts)
reduces to a handful of operations implemented here:

* `cardinality` -- the automorphism-weighted count sum(1/|Aut|) over
  isomorphism classes,
* `fiber` / `homotopy_pullback` -- iso-comma constructions,
* `is_pullback_square`, `is_equivalence`, `is_monomorphism` -- exhaustive
  structural checks with explicit witnesses on failure.

Morphisms are identified by the triple (source, target, label); labels are
opaque and compared by equality.  Composition is written `compose(g, f)`
for "g after f".  All values are immutable after construction and every
operation is a pure function, so independent checks may run in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping, Optional


class StructureError(Exception):
    """A groupoid, functor or square violates its structural invariants."""


class DomainError(Exception):
    """An argument lies outside the domain of the requested operation."""


@dataclass(frozen=True)
class Mor:
    """A morphism, identified by (src, tgt, label)."""

    src: Any
    tgt: Any
    label: Any

    def __repr__(self):
        return f"Mor({self.src!r} -> {self.tgt!r}: {self.label!r})"


class FiniteGroupoid:
    """A finite groupoid given by objects plus hom/compose/identity rules.

    `hom`, `compose` and `identity` may be arbitrary callables; use
    `FiniteGroupoid.from_tables` for fully explicit table-backed data (the
    form accepted from instance files), and `validate` to scan the tables
    for associativity, units, inverses and hom-set disjointness.

    `skeletal=True` asserts that distinct objects are never isomorphic,
    which lets iso-class computations skip the hom scan.  `component_key`
    is an optional isomorphism invariant on objects: objects with distinct
    keys are guaranteed non-isomorphic (used to bucket union-find scans).
    `iso_key` is an exact invariant: objects are isomorphic if and only if
    their keys agree, which makes the iso-class table a single grouping
    pass (the generated layered levels use their canonical forms here).
    """

    def __init__(
        self,
        objects: Iterable[Any],
        hom: Callable[[Any, Any], tuple],
        compose: Callable[[Mor, Mor], Mor],
        identity: Callable[[Any], Mor],
        skeletal: bool = False,
        grade: Optional[Callable[[Any], int]] = None,
        component_key: Optional[Callable[[Any], Any]] = None,
        iso_key: Optional[Callable[[Any], Any]] = None,
        name: str = "",
    ):
        self.objects = tuple(objects)
        self._object_set = frozenset(self.objects)
        if len(self._object_set) != len(self.objects):
            raise StructureError("duplicate object ids")
        self._hom = hom
        self._compose = compose
        self._identity = identity
        self.skeletal = skeletal
        self._grade = grade
        self._component_key = component_key
        self._iso_key = iso_key
        self.name = name
        self._iso_table: Optional[IsoClassTable] = None

    # -- basic structure ------------------------------------------------

    def has_object(self, a) -> bool:
        return a in self._object_set

    def hom(self, a, b) -> tuple:
        if not (self.has_object(a) and self.has_object(b)):
            raise DomainError(f"{a!r} or {b!r} not an object of {self.name or 'groupoid'}")
        return tuple(self._hom(a, b))

    def identity(self, a) -> Mor:
        if not self.has_object(a):
            raise DomainError(f"{a!r} not an object")
        return self._identity(a)

    def compose(self, g: Mor, f: Mor) -> Mor:
        """g after f; requires f.tgt == g.src."""
        if f.tgt != g.src:
            raise DomainError(f"not composable: {f!r} then {g!r}")
        return self._compose(g, f)

    def inverse(self, f: Mor) -> Mor:
        ida = self.identity(f.src)
        for g in self.hom(f.tgt, f.src):
            if self.compose(g, f) == ida:
                return g
        raise StructureError(f"no inverse found for {f!r}")

    def morphisms(self) -> Iterator[Mor]:
        if self.skeletal:
            for a in self.objects:
                yield from self.hom(a, a)
            return
        if self._iso_key is not None:
            table = self.iso_classes()
            for rep in table.reps:
                for a in table.members[rep]:
                    for b in table.members[rep]:
                        yield from self.hom(a, b)
            return
        for a in self.objects:
            for b in self.objects:
                yield from self.hom(a, b)

    def is_graded(self) -> bool:
        return self._grade is not None

    def grade(self, a) -> int:
        if self._grade is None:
            raise DomainError("groupoid carries no grade")
        return self._grade(a)

    def component_key(self, a):
        return None if self._component_key is None else self._component_key(a)

    # -- iso classes -----------------------------------------------------

    def iso_classes(self) -> "IsoClassTable":
        if self._iso_table is None:
            self._iso_table = IsoClassTable._build(self)
        return self._iso_table

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_tables(
        cls,
        objects: Iterable[Any],
        homs: Mapping,
        compose: Mapping,
        identities: Mapping,
        grade: Optional[Callable[[Any], int]] = None,
        name: str = "",
    ) -> "FiniteGroupoid":
        """Build from explicit tables.

        `homs` maps (a, b) to an iterable of labels, `compose` maps
        (f_key, g_key) to the label of g after f where f_key is the triple
        (src, tgt, label), and `identities` maps each object to its
        identity label.
        """
        objects = tuple(objects)
        hom_table = {}
        for (a, b), labels in homs.items():
            hom_table[(a, b)] = tuple(Mor(a, b, l) for l in labels)
        compose_table = dict(compose)
        ident_table = dict(identities)

        def hom(a, b):
            return hom_table.get((a, b), ())

        def comp(g, f):
            key = ((f.src, f.tgt, f.label), (g.src, g.tgt, g.label))
            if key not in compose_table:
                raise StructureError(f"composition table has no entry for {key}")
            return Mor(f.src, g.tgt, compose_table[key])

        def ident(a):
            return Mor(a, a, ident_table[a])

        return cls(objects, hom, comp, ident, grade=grade, name=name)

    def validate(self) -> None:
        """Exhaustively check the groupoid axioms; raise StructureError."""
        seen = {}
        for m in self.morphisms():
            if m.label in seen and seen[m.label] != (m.src, m.tgt):
                raise StructureError(f"label {m.label!r} reused across hom-sets")
            seen.setdefault(m.label, (m.src, m.tgt))
        for a in self.objects:
            ida = self.identity(a)
            if (ida.src, ida.tgt) != (a, a):
                raise StructureError(f"identity of {a!r} is not an endomorphism")
            if ida not in self.hom(a, a):
                raise StructureError(f"identity of {a!r} missing from hom({a!r},{a!r})")
        mors = list(self.morphisms())
        for f in mors:
            if self.compose(f, self.identity(f.src)) != f:
                raise StructureError(f"right unit law fails at {f!r}")
            if self.compose(self.identity(f.tgt), f) != f:
                raise StructureError(f"left unit law fails at {f!r}")
            gf = self.compose(self.inverse(f), f)  # raises if no inverse
            if gf != self.identity(f.src):
                raise StructureError(f"inverse law fails at {f!r}")
        for f in mors:
            for g in self.hom(f.tgt, f.tgt) if self.skeletal else mors:
                if g.src != f.tgt:
                    continue
                gf = self.compose(g, f)
                if gf not in self.hom(f.src, g.tgt):
                    raise StructureError(f"composite {gf!r} escapes its hom-set")
                for h in mors:
                    if h.src != g.tgt:
                        continue
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                        raise StructureError(
                            f"associativity fails at {f!r}, {g!r}, {h!r}")


def discrete_groupoid(objects, grade=None, name="") -> FiniteGroupoid:
    """The groupoid with the given objects and only identity morphisms."""

    def hom(a, b):
        return (Mor(a, a, "id"),) if a == b else ()

    def compose(g, f):
        return Mor(f.src, g.tgt, "id")

    def identity(a):
        return Mor(a, a, "id")

    return FiniteGroupoid(objects, hom, compose, identity, skeletal=True,
                          grade=grade, name=name)


class IsoClassTable:
    """Partition of a groupoid's objects into isomorphism classes.

    Each class carries a deterministic representative (first member in
    object order) and the order of its automorphism group.
    """

    def __init__(self, groupoid, reps, members, class_of, aut_orders):
        self.groupoid = groupoid
        self.reps = tuple(reps)
        self.members = members
        self._class_of = class_of
        self.aut_orders = aut_orders

    @staticmethod
    def _build(G: FiniteGroupoid) -> "IsoClassTable":
        objs = G.objects
        if G._iso_key is not None:
            by_key: dict = {}
            for a in objs:
                by_key.setdefault(G._iso_key(a), []).append(a)
            reps, members, class_of = [], {}, {}
            for group in by_key.values():
                rep = group[0]
                reps.append(rep)
                members[rep] = tuple(group)
                for b in group:
                    class_of[b] = rep
        elif G.skeletal:
            class_of = {a: a for a in objs}
            members = {a: (a,) for a in objs}
            reps = list(objs)
        else:
            parent = {a: a for a in objs}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            buckets = {}
            for a in objs:
                buckets.setdefault(G.component_key(a), []).append(a)
            for bucket in buckets.values():
                for i, a in enumerate(bucket):
                    for b in bucket[i + 1:]:
                        if find(a) != find(b) and G.hom(a, b):
                            parent[find(a)] = find(b)
            groups = {}
            for a in objs:
                groups.setdefault(find(a), []).append(a)
            reps, members, class_of = [], {}, {}
            for a in objs:
                root = find(a)
                if groups[root][0] == a:
                    reps.append(a)
                    members[a] = tuple(groups[root])
            for rep in reps:
                for b in members[rep]:
                    class_of[b] = rep
        aut_orders = {rep: len(G.hom(rep, rep)) for rep in reps}
        for rep, n in aut_orders.items():
            if n < 1:
                raise StructureError(f"object {rep!r} has no automorphisms at all")
        return IsoClassTable(G, reps, members, class_of, aut_orders)

    def class_of(self, a):
        if a not in self._class_of:
            raise DomainError(f"{a!r} not an object of the carrier")
        return self._class_of[a]

    def aut_order(self, a) -> int:
        return self.aut_orders[self.class_of(a)]

    def cardinality(self) -> Fraction:
        return sum((Fraction(1, n) for n in self.aut_orders.values()), Fraction(0))


def cardinality(G: FiniteGroupoid) -> Fraction:
    """Homotopy cardinality sum over iso classes of 1/|Aut|."""
    return G.iso_classes().cardinality()


class GroupoidFunctor:
    """A functor between finite groupoids: an object map plus morphism map."""

    def __init__(self, source, target, ob, mor, name=""):
        self.source = source
        self.target = target
        self._ob = ob if callable(ob) else ob.__getitem__
        self._mor = mor
        self.name = name

    def ob(self, a):
        return self._ob(a)

    def __call__(self, m: Mor) -> Mor:
        return self._mor(m)

    @classmethod
    def identity(cls, G, name="id") -> "GroupoidFunctor":
        return cls(G, G, lambda a: a, lambda m: m, name=name)

    @classmethod
    def compose(cls, G: "GroupoidFunctor", F: "GroupoidFunctor") -> "GroupoidFunctor":
        """G after F."""
        if F.target is not G.source and F.target.objects != G.source.objects:
            raise DomainError("functors not composable")
        return cls(F.source, G.target, lambda a: G.ob(F.ob(a)),
                   lambda m: G(F(m)), name=f"{G.name}*{F.name}")

    def validate(self) -> None:
        S, T = self.source, self.target
        for a in S.objects:
            if not T.has_object(self.ob(a)):
                raise StructureError(f"object image {self.ob(a)!r} not in target")
            if self(S.identity(a)) != T.identity(self.ob(a)):
                raise StructureError(f"identity not preserved at {a!r}")
        for m in S.morphisms():
            fm = self(m)
            if (fm.src, fm.tgt) != (self.ob(m.src), self.ob(m.tgt)):
                raise StructureError(f"source/target not preserved at {m!r}")
            if fm not in T.hom(fm.src, fm.tgt):
                raise StructureError(f"image {fm!r} not a target morphism")
        for f in S.morphisms():
            for g in S.hom(f.tgt, f.tgt) if S.skeletal else S.morphisms():
                if g.src != f.tgt:
                    continue
                if self(S.compose(g, f)) != T.compose(self(g), self(f)):
                    raise StructureError(f"composition not preserved at {f!r}, {g!r}")


def functors_equal(F: GroupoidFunctor, G: GroupoidFunctor) -> bool:
    """Strict equality: same object and morphism maps, checked exhaustively."""
    S = F.source
    for a in S.objects:
        if F.ob(a) != G.ob(a):
            return False
    for m in S.morphisms():
        if F(m) != G(m):
            return False
    return True


def full_subgroupoid(G: FiniteGroupoid, objects, name="") -> FiniteGroupoid:
    objects = tuple(objects)
    for a in objects:
        if not G.has_object(a):
            raise DomainError(f"{a!r} not an object of the ambient groupoid")
    return FiniteGroupoid(objects, G._hom, G._compose, G._identity,
                          skeletal=G.skeletal, grade=G._grade,
                          component_key=G._component_key, iso_key=G._iso_key,
                          name=name or f"{G.name}|sub")


# -- fibers and pullbacks ---------------------------------------------------


def _connector(G: FiniteGroupoid, a, rep) -> Mor:
    if a == rep:
        return G.identity(a)
    return G.hom(a, rep)[0]


def fiber(F: GroupoidFunctor, c) -> FiniteGroupoid:
    """The homotopy fiber of F over the object c of its target.

    Objects are pairs (a, phi) with phi: F(a) -> c; a morphism
    (a, phi) -> (a', phi') is alpha: a -> a' with phi' . F(alpha) = phi.
    """
    S, T = F.source, F.target
    if not T.has_object(c):
        raise DomainError(f"{c!r} is not an object of the target")
    objs = []
    for a in S.objects:
        for phi in T.hom(F.ob(a), c):
            objs.append((a, phi))

    def hom(x, y):
        (a, phi), (a2, phi2) = x, y
        out = []
        for alpha in S.hom(a, a2):
            if T.compose(phi2, F(alpha)) == phi:
                out.append(Mor(x, y, alpha.label))
        return tuple(out)

    def compose(g, f):
        a_mid = f.tgt[0]
        alpha = S.compose(Mor(g.src[0], g.tgt[0], g.label),
                          Mor(f.src[0], a_mid, f.label))
        return Mor(f.src, g.tgt, alpha.label)

    def identity(x):
        return Mor(x, x, S.identity(x[0]).label)

    # exact iso invariant: the source class together with the orbit of the
    # transported comparison iso under the image of Aut(rep)
    table = S.iso_classes()
    aut_images: dict = {}
    key_memo: dict = {}

    def iso_key(x):
        if x in key_memo:
            return key_memo[x]
        a, phi = x
        rep = table.class_of(a)
        if rep not in aut_images:
            aut_images[rep] = [F(alpha) for alpha in S.hom(rep, rep)]
        ca = _connector(S, a, rep)
        tilde = T.compose(phi, T.inverse(F(ca)))
        orbit_min = min((repr(T.compose(tilde, u).label) for u in aut_images[rep]))
        key_memo[x] = (rep, orbit_min)
        return key_memo[x]

    return FiniteGroupoid(
        objs, hom, compose, identity, iso_key=iso_key,
        name=f"fib({F.name},{c!r})",
    )


def fiber_cardinality(F: GroupoidFunctor, c) -> Fraction:
    """|fiber(F, c)| computed class-wise: sum of |Aut c| / |Aut a| over the
    source classes whose image is isomorphic to c.

    This is the fast path; it agrees with cardinality(fiber(F, c)) and the
    two are cross-checked in the test suite.
    """
    S, T = F.source, F.target
    ttab = T.iso_classes()
    cls_c = ttab.class_of(c)
    aut_c = ttab.aut_orders[cls_c]
    stab = S.iso_classes()
    total = Fraction(0)
    for rep in stab.reps:
        if ttab.class_of(F.ob(rep)) == cls_c:
            total += Fraction(aut_c, stab.aut_orders[rep])
    return total


def weighted_fiber(F: GroupoidFunctor, c, label_fn) -> dict:
    """Decompose |fiber(F, c)| as a sum of weights, grouped by an
    iso-invariant label of the source class.

    Returns {label: weight} with weight = sum of |Aut c| / |Aut a| over the
    contributing classes.  `label_fn` is applied to class representatives
    and must be constant on iso classes.
    """
    S, T = F.source, F.target
    ttab = T.iso_classes()
    cls_c = ttab.class_of(c)
    aut_c = ttab.aut_orders[cls_c]
    stab = S.iso_classes()
    out: dict = {}
    for rep in stab.reps:
        if ttab.class_of(F.ob(rep)) == cls_c:
            w = Fraction(aut_c, stab.aut_orders[rep])
            key = label_fn(rep)
            out[key] = out.get(key, Fraction(0)) + w
    return out


def homotopy_pullback(f: GroupoidFunctor, g: GroupoidFunctor,
                      grade_bound: Optional[int] = None):
    """The iso-comma groupoid of a cospan f: A -> C <- B :g.

    Objects are triples (a, b, phi: f(a) -> g(b)); a morphism
    (alpha, beta) requires g(beta) . phi = phi' . f(alpha).  Returns
    (P, proj_a, proj_b).

    When all three groupoids are graded and `grade_bound` is given, the
    object set is restricted to glued grade
    grade(a) + grade(b) - grade(f(a)) <= grade_bound, which is the grade
    of the would-be gluing; this keeps pullback checks sound on levels
    that were generated under the same grade bound.
    """
    A, B, C = f.source, g.source, f.target
    if g.target is not C and g.target.objects != C.objects:
        raise DomainError("cospan legs do not share a codomain")
    graded = A.is_graded() and B.is_graded() and C.is_graded()
    ctab = C.iso_classes()
    by_class: dict = {}
    for b in B.objects:
        by_class.setdefault(ctab.class_of(g.ob(b)), []).append(b)
    objs = []
    for a in A.objects:
        fa = f.ob(a)
        for b in by_class.get(ctab.class_of(fa), ()):
            if graded and grade_bound is not None:
                glued = A.grade(a) + B.grade(b) - C.grade(fa)
                if glued > grade_bound:
                    continue
            for phi in C.hom(fa, g.ob(b)):
                objs.append((a, b, phi))

    def hom(x, y):
        (a, b, phi), (a2, b2, phi2) = x, y
        out = []
        for alpha in A.hom(a, a2):
            lhs = C.compose(phi2, f(alpha))
            for beta in B.hom(b, b2):
                if C.compose(g(beta), phi) == lhs:
                    out.append(Mor(x, y, (alpha.label, beta.label)))
        return tuple(out)

    def compose(q, p):
        al = A.compose(Mor(q.src[0], q.tgt[0], q.label[0]),
                       Mor(p.src[0], p.tgt[0], p.label[0]))
        be = B.compose(Mor(q.src[1], q.tgt[1], q.label[1]),
                       Mor(p.src[1], p.tgt[1], p.label[1]))
        return Mor(p.src, q.tgt, (al.label, be.label))

    def identity(x):
        return Mor(x, x, (A.identity(x[0]).label, B.identity(x[1]).label))

    atab, btab = A.iso_classes(), B.iso_classes()
    grade_fn = None
    if graded:
        grade_fn = lambda x: A.grade(x[0]) + B.grade(x[1]) - C.grade(f.ob(x[0]))

    # exact iso invariant via the double-coset orbit of the transported
    # comparison iso under the images of Aut(rep_a) x Aut(rep_b)
    f_auts: dict = {}
    g_auts: dict = {}
    key_memo: dict = {}

    def iso_key(x):
        if x in key_memo:
            return key_memo[x]
        a, b, phi = x
        ra, rb = atab.class_of(a), btab.class_of(b)
        if ra not in f_auts:
            f_auts[ra] = [f(alpha) for alpha in A.hom(ra, ra)]
        if rb not in g_auts:
            g_auts[rb] = [g(beta) for beta in B.hom(rb, rb)]
        ca, cb = _connector(A, a, ra), _connector(B, b, rb)
        tilde = C.compose(g(cb), C.compose(phi, C.inverse(f(ca))))
        orbit_min = min(repr(C.compose(v, C.compose(tilde, u)).label)
                        for u in f_auts[ra] for v in g_auts[rb])
        key_memo[x] = (ra, rb, orbit_min)
        return key_memo[x]

    P = FiniteGroupoid(
        objs, hom, compose, identity, grade=grade_fn, iso_key=iso_key,
        name=f"pb({f.name},{g.name})",
    )
    pa = GroupoidFunctor(P, A, lambda x: x[0],
                         lambda m: Mor(m.src[0], m.tgt[0], m.label[0]), name="pr1")
    pb = GroupoidFunctor(P, B, lambda x: x[1],
                         lambda m: Mor(m.src[1], m.tgt[1], m.label[1]), name="pr2")
    return P, pa, pb


# -- structural checks -------------------------------------------------------


def is_equivalence(F: GroupoidFunctor, want_witness: bool = False):
    """Fully faithful + essentially surjective, checked on iso classes.

    With `want_witness=True` returns (ok, witness) where the witness names
    the missed target class, the pair of source classes that collide, or
    the class whose automorphism map is not bijective.
    """
    stab = F.source.iso_classes()
    ttab = F.target.iso_classes()
    image: dict = {}
    for rep in stab.reps:
        tcls = ttab.class_of(F.ob(rep))
        if tcls in image:
            w = ("not fully faithful: source classes "
                 f"{image[tcls]!r} and {rep!r} share target class {tcls!r}")
            return (False, w) if want_witness else False
        image[tcls] = rep
    for tcls in ttab.reps:
        if tcls not in image:
            w = f"not essentially surjective: target class {tcls!r} missed"
            return (False, w) if want_witness else False
    for rep in stab.reps:
        auts = F.source.hom(rep, rep)
        images = {F(alpha) for alpha in auts}
        frep = F.ob(rep)
        if len(images) != len(auts) or len(auts) != len(F.target.hom(frep, frep)):
            w = (f"automorphism map not bijective at class {rep!r}: "
                 f"|Aut|={len(auts)} vs |Aut image|={len(F.target.hom(frep, frep))}")
            return (False, w) if want_witness else False
    return (True, None) if want_witness else True


def is_monomorphism(F: GroupoidFunctor) -> bool:
    """True iff every homotopy fiber of F is empty or contractible."""
    ttab = F.target.iso_classes()
    stab = F.source.iso_classes()
    hit: dict = {}
    for rep in stab.reps:
        tcls = ttab.class_of(F.ob(rep))
        if tcls in hit:
            return False  # two source classes over one target class
        hit[tcls] = rep
    for tcls, rep in hit.items():
        fib = fiber(F, tcls)
        tab = fib.iso_classes()
        if len(tab.reps) != 1 or tab.aut_orders[tab.reps[0]] != 1:
            return False
    return True


@dataclass
class SquareResult:
    """Outcome of a pullback-square check."""

    passed: bool
    witness: Optional[str] = None
    name: str = ""

    def __bool__(self):
        return self.passed


def is_pullback_square(
    p: GroupoidFunctor,
    q: GroupoidFunctor,
    f: GroupoidFunctor,
    g: GroupoidFunctor,
    grade_bound: Optional[int] = None,
    name: str = "",
) -> SquareResult:
    """Check that the strictly commuting square

        W --q--> B
        |        |
        p        g
        v        v
        A --f--> C

    is a homotopy pullback: the comparison functor from W into the
    iso-comma groupoid of (f, g) must be an equivalence.  Non-commuting
    squares are a domain error, distinct from a failed pullback check.
    """
    W = p.source
    if q.source is not W:
        raise DomainError("square corner mismatch")
    fp = GroupoidFunctor.compose(f, p)
    gq = GroupoidFunctor.compose(g, q)
    if not functors_equal(fp, gq):
        raise DomainError(f"square {name or ''} does not commute strictly")
    P, _, _ = homotopy_pullback(f, g, grade_bound=grade_bound)
    C = f.target

    comparison = GroupoidFunctor(
        W, P,
        lambda w: (p.ob(w), q.ob(w), C.identity(f.ob(p.ob(w)))),
        lambda m: Mor((p.ob(m.src), q.ob(m.src), C.identity(f.ob(p.ob(m.src)))),
                      (p.ob(m.tgt), q.ob(m.tgt), C.identity(f.ob(p.ob(m.tgt)))),
                      (p(m).label, q(m).label)),
        name="cmp",
    )
    ok, witness = is_equivalence(comparison, want_witness=True)
    return SquareResult(ok, witness, name=name)


def skeletalize(G: FiniteGroupoid):
    """Return (skeleton, functor G -> skeleton).

    The skeleton is the full subgroupoid on one representative per iso
    class; the functor sends each object along a chosen connecting iso.
    """
    table = G.iso_classes()
    S = full_subgroupoid(G, table.reps, name=f"sk({G.name})")
    S.skeletal = True
    connect = {}
    for rep in table.reps:
        for x in table.members[rep]:
            connect[x] = G.hom(x, rep)[0] if x != rep else G.identity(x)

    def mor(m):
        # transport along the chosen isos: c_tgt . m . c_src^{-1}
        res = G.compose(connect[m.tgt], G.compose(m, G.inverse(connect[m.src])))
        return res

    return S, GroupoidFunctor(G, S, lambda a: table.class_of(a), mor, name="sk")
