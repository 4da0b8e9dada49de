"""Augmented bisimplicial groupoids and bicomodule configurations.

The grid B_{i,j} (i, j >= -1, not both -1) carries horizontal faces d_k
and degeneracies s_k, vertical faces e_l and degeneracies t_l, and
augmentations u : B_{i,0} -> B_{i,-1} and v : B_{0,j} -> B_{-1,j}.  A
bicomodule configuration is such a grid that is Segal in both directions,
stable, with culf augmentations and decomposition-space borders
X = B_{.,-1} and Y = B_{-1,.}; it induces a left coaction through the
span B_{0,0} <- B_{1,0} -> X_1 x B_{0,0} and a right coaction through
B_{0,0} <- B_{0,1} -> B_{0,0} x Y_1.

Optional pointings s_{-1} (right) and t_{top+1} (left) are extra sections
of the outer operators; they give the counit-style functionals delta^R,
delta^L, the comodule Phi functors, a Mobius inversion principle per side,
and the generalized Rota formula

    |mu^X| *_l |delta^R|  =  |delta^L| *_r |mu^Y|.

Stability is checked through the two-square reduction valid for double
Segal spaces; the full square family is available behind a flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .groupoid import (
    DomainError,
    FiniteGroupoid,
    GroupoidFunctor,
    SquareResult,
    fiber_cardinality,
    full_subgroupoid,
    functors_equal,
    is_monomorphism,
    is_pullback_square,
    weighted_fiber,
)
from .incidence import (
    Functional,
    MobiusCertificateError,
    WeightedTensorList,
    mobius_functional,
    phi_n,
)
from .simplicial import (
    AxiomReport,
    DecalageResult,
    InsufficientLevelsError,
    SimplicialMap,
    TruncatedSimplicialGroupoid,
    check_axioms,
    is_culf,
    principal_edges,
)


class AugmentedBisimplicialGroupoid:
    """Generator-backed grid of finite groupoids with augmentations.

    Callback signatures (all produce memoized functors between memoized
    cells; `self` is passed so callbacks can look levels up):

        cell_fn(B, i, j)                     i, j >= -1, not both -1
        hface_fn(B, i, j, k)                 (i,j) -> (i,j-1), j >= 1, 0 <= k <= j
        vface_fn(B, i, j, l)                 (i,j) -> (i-1,j), i >= 1, 0 <= l <= i
        hdegen_fn(B, i, j, k)                (i,j) -> (i,j+1), 0 <= k <= j
        vdegen_fn(B, i, j, l)                (i,j) -> (i+1,j), 0 <= l <= i
        u_fn(B, i)                           (i,0) -> (i,-1)
        v_fn(B, j)                           (0,j) -> (-1,j)
        right_section_fn(B, i, j) or None    (i,j-1) -> (i,j), j >= 0
        left_section_fn(B, i, j) or None     (i-1,j) -> (i,j), i >= 0

    Section callbacks may return None for levels where no pointing data
    exists (the layered sets/posets bicomodule only points the bottom of
    its left side).
    """

    def __init__(self, max_i, max_j, cell_fn, hface_fn, vface_fn, hdegen_fn,
                 vdegen_fn, u_fn, v_fn, right_section_fn=None,
                 left_section_fn=None, grade_bound=None, name=""):
        self.max_i = max_i
        self.max_j = max_j
        self._cell_fn = cell_fn
        self._hface_fn = hface_fn
        self._vface_fn = vface_fn
        self._hdegen_fn = hdegen_fn
        self._vdegen_fn = vdegen_fn
        self._u_fn = u_fn
        self._v_fn = v_fn
        self._right_section_fn = right_section_fn
        self._left_section_fn = left_section_fn
        self.grade_bound = grade_bound
        self.name = name
        self._memo: dict = {}

    def _get(self, kind, key, maker):
        full = (kind,) + key
        if full not in self._memo:
            self._memo[full] = maker()
        return self._memo[full]

    def cell(self, i: int, j: int) -> FiniteGroupoid:
        if i == -1 and j == -1:
            raise DomainError("the (-1,-1) cell does not exist")
        if not (-1 <= i <= self.max_i and -1 <= j <= self.max_j):
            raise InsufficientLevelsError(max(i, j), max(self.max_i, self.max_j),
                                          f"cell ({i},{j})")
        return self._get("cell", (i, j), lambda: self._cell_fn(self, i, j))

    def hface(self, i, j, k) -> GroupoidFunctor:
        if j < 1 or not 0 <= k <= j:
            raise DomainError(f"no horizontal face d_{k} at ({i},{j})")
        return self._get("hface", (i, j, k), lambda: self._hface_fn(self, i, j, k))

    def vface(self, i, j, l) -> GroupoidFunctor:
        if i < 1 or not 0 <= l <= i:
            raise DomainError(f"no vertical face e_{l} at ({i},{j})")
        return self._get("vface", (i, j, l), lambda: self._vface_fn(self, i, j, l))

    def hdegen(self, i, j, k) -> GroupoidFunctor:
        if not 0 <= k <= j:
            raise DomainError(f"no horizontal degeneracy s_{k} at ({i},{j})")
        self.cell(i, j + 1)
        return self._get("hdegen", (i, j, k), lambda: self._hdegen_fn(self, i, j, k))

    def vdegen(self, i, j, l) -> GroupoidFunctor:
        if not 0 <= l <= i:
            raise DomainError(f"no vertical degeneracy t_{l} at ({i},{j})")
        self.cell(i + 1, j)
        return self._get("vdegen", (i, j, l), lambda: self._vdegen_fn(self, i, j, l))

    def aug_u(self, i) -> GroupoidFunctor:
        return self._get("u", (i,), lambda: self._u_fn(self, i))

    def aug_v(self, j) -> GroupoidFunctor:
        return self._get("v", (j,), lambda: self._v_fn(self, j))

    def has_right_section(self, i, j) -> bool:
        if self._right_section_fn is None or j < 0:
            return False
        return self.right_section(i, j, _probe=True) is not None

    def has_left_section(self, i, j) -> bool:
        if self._left_section_fn is None or i < 0:
            return False
        return self.left_section(i, j, _probe=True) is not None

    def right_section(self, i, j, _probe=False):
        """s_{-1} : B_{i,j-1} -> B_{i,j}, a section of d_0 (of u at j = 0)."""
        if self._right_section_fn is None:
            if _probe:
                return None
            raise DomainError("no right pointing attached")
        F = self._get("rsec", (i, j), lambda: self._right_section_fn(self, i, j))
        if F is None and not _probe:
            raise DomainError(f"right pointing unavailable at ({i},{j})")
        return F

    def left_section(self, i, j, _probe=False):
        """t_{top+1} : B_{i-1,j} -> B_{i,j}, a section of e_top (of v at i = 0)."""
        if self._left_section_fn is None:
            if _probe:
                return None
            raise DomainError("no left pointing attached")
        F = self._get("lsec", (i, j), lambda: self._left_section_fn(self, i, j))
        if F is None and not _probe:
            raise DomainError(f"left pointing unavailable at ({i},{j})")
        return F

    # -- simplicial views -------------------------------------------------

    def row(self, i) -> TruncatedSimplicialGroupoid:
        """The row B_{i,.} with horizontal operators (row(-1) is Y)."""
        def make():
            return TruncatedSimplicialGroupoid(
                self.max_j,
                lambda s, n: self.cell(i, n),
                lambda s, n, k: self.hface(i, n, k),
                lambda s, n, k: self.hdegen(i, n, k),
                grade_bound=self.grade_bound,
                name=f"{self.name}.row({i})")
        return self._get("row", (i,), make)

    def column(self, j) -> TruncatedSimplicialGroupoid:
        """The column B_{.,j} with vertical operators (column(-1) is X)."""
        def make():
            return TruncatedSimplicialGroupoid(
                self.max_i,
                lambda s, n: self.cell(n, j),
                lambda s, n, l: self.vface(n, j, l),
                lambda s, n, l: self.vdegen(n, j, l),
                grade_bound=self.grade_bound,
                name=f"{self.name}.col({j})")
        return self._get("col", (j,), make)

    def x_space(self) -> TruncatedSimplicialGroupoid:
        return self.column(-1)

    def y_space(self) -> TruncatedSimplicialGroupoid:
        return self.row(-1)

    def u_map(self) -> SimplicialMap:
        def make():
            return SimplicialMap(self.column(0), self.column(-1),
                                 lambda m, n: self.aug_u(n), name="u")
        return self._get("umap", (), make)

    def v_map(self) -> SimplicialMap:
        def make():
            return SimplicialMap(self.row(0), self.row(-1),
                                 lambda m, n: self.aug_v(n), name="v")
        return self._get("vmap", (), make)


# -- comodule configurations ---------------------------------------------------


@dataclass
class ComoduleConfiguration:
    """A pointed comodule configuration, right (bottom pointing) or left.

    `space` is the Segal side C (a row/column view or a decalage), `base`
    the decomposition space acting on it, `base_map` the culf map.  The
    augmentation C_0 -> C_{-1} and the sections C_{n-1} -> C_n realize the
    pointing; `section(0)` maps out of the augmentation target and its
    essential image defines the complement C_b used by the Phi functors.
    """

    side: str
    space: TruncatedSimplicialGroupoid
    base: TruncatedSimplicialGroupoid
    base_map: SimplicialMap
    aug_target: FiniteGroupoid
    augmentation: GroupoidFunctor
    section: Callable[[int], Optional[GroupoidFunctor]]
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise DomainError("side must be 'right' or 'left'")

    def bottom_section(self) -> GroupoidFunctor:
        s = self.section(0)
        if s is None:
            raise DomainError("pointing has no bottom section")
        return s

    def pointing_complete(self) -> bool:
        if "complete" not in self._cache:
            self._cache["complete"] = is_monomorphism(self.bottom_section())
        return self._cache["complete"]

    def pointing_image_classes(self) -> frozenset:
        if "image" not in self._cache:
            tab = self.space.level(0).iso_classes()
            s = self.bottom_section()
            self._cache["image"] = frozenset(
                tab.class_of(s.ob(x)) for x in self.aug_target.objects)
        return self._cache["image"]

    def vertex_functor(self, n: int) -> GroupoidFunctor:
        """C_n -> C_0 picking out the distinguished vertex."""
        if self.side == "right":
            return self.space.top_face_power(n, n)
        return self.space.bottom_face_power(n, n)

    def leg_functor(self, n: int) -> GroupoidFunctor:
        """C_n -> C_0, the span leg of the Phi functors and coactions."""
        if self.side == "right":
            return self.space.bottom_face_power(n, n)
        return self.space.top_face_power(n, n)


def right_comodule(B: AugmentedBisimplicialGroupoid) -> ComoduleConfiguration:
    return ComoduleConfiguration(
        side="right", space=B.row(0), base=B.y_space(), base_map=B.v_map(),
        aug_target=B.cell(0, -1), augmentation=B.aug_u(0),
        section=lambda n: B.right_section(0, n, _probe=True),
        name=f"{B.name}.right")


def left_comodule(B: AugmentedBisimplicialGroupoid) -> ComoduleConfiguration:
    return ComoduleConfiguration(
        side="left", space=B.column(0), base=B.x_space(), base_map=B.u_map(),
        aug_target=B.cell(-1, 0), augmentation=B.aug_v(0),
        section=lambda n: B.left_section(n, 0, _probe=True),
        name=f"{B.name}.left")


def comodule_from_decalage(dec: DecalageResult) -> ComoduleConfiguration:
    """Package a decalage as a pointed comodule configuration over its base."""
    side = "right" if dec.side == "bottom" else "left"
    return ComoduleConfiguration(
        side=side, space=dec.space, base=dec.to_base.target,
        base_map=dec.to_base, aug_target=dec.aug_target,
        augmentation=dec.augmentation, section=dec.section,
        name=f"dec-{dec.side}")


# -- configuration validation ---------------------------------------------------


@dataclass
class ConfigReport:
    sections: dict

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.sections.values())

    def __bool__(self):
        return self.passed

    def lines(self):
        out = [f"bicomodule configuration: {'PASS' if self.passed else 'FAIL'}"]
        for key, rep in self.sections.items():
            out.append(f"-- {key}")
            out.extend("  " + line for line in rep.lines())
        return out


def _section_identity_report(B: AugmentedBisimplicialGroupoid) -> AxiomReport:
    rep = AxiomReport(profile="pointings")

    def record(ok, name, witness=None):
        rep.checks.append(SquareResult(ok, witness if not ok else None, name))

    if B.has_right_section(0, 0):
        s = B.right_section(0, 0)
        retract = B.aug_u(0)
        ok = functors_equal(GroupoidFunctor.compose(retract, s),
                            GroupoidFunctor.identity(B.cell(0, -1)))
        record(ok, "u . s_{-1} = id at (0,0)")
        record(is_monomorphism(s), "right pointing complete (s_{-1} mono)")
        if B.has_right_section(0, 1):
            s1 = B.right_section(0, 1)
            ok = functors_equal(GroupoidFunctor.compose(B.hface(0, 1, 0), s1),
                                GroupoidFunctor.identity(B.cell(0, 0)))
            record(ok, "d_0 . s_{-1} = id at (0,1)")
    if B.has_left_section(0, 0):
        t = B.left_section(0, 0)
        ok = functors_equal(GroupoidFunctor.compose(B.aug_v(0), t),
                            GroupoidFunctor.identity(B.cell(-1, 0)))
        record(ok, "v . t_{top+1} = id at (0,0)")
        record(is_monomorphism(t), "left pointing complete (t_{top+1} mono)")
        if B.has_left_section(1, 0):
            t1 = B.left_section(1, 0)
            ok = functors_equal(GroupoidFunctor.compose(B.vface(1, 0, 1), t1),
                                GroupoidFunctor.identity(B.cell(0, 0)))
            record(ok, "e_top . t_{top+1} = id at (1,0)")
    return rep


def _stability_squares(B, full: bool, n_max: int):
    gb = B.grade_bound
    jobs = [
        lambda: is_pullback_square(
            p=B.hface(1, 1, 0), q=B.vface(1, 1, 0),
            f=B.vface(1, 0, 0), g=B.hface(0, 1, 0),
            grade_bound=gb, name="stability d_0/e_0 at (1,1)"),
        lambda: is_pullback_square(
            p=B.hface(1, 1, 1), q=B.vface(1, 1, 1),
            f=B.vface(1, 0, 1), g=B.hface(0, 1, 1),
            grade_bound=gb, name="stability d_1/e_1 at (1,1)"),
    ]
    if full:
        top_i = min(B.max_i, n_max + 1)
        top_j = min(B.max_j, n_max + 1)
        for i in range(1, top_i + 1):
            for j in range(1, top_j + 1):
                for k in range(j + 1):
                    for l in range(i + 1):
                        if (k == 0 and l == i) or (k == j and l == 0):
                            continue  # d_bot along e_top / d_top along e_bot
                        jobs.append(lambda i=i, j=j, k=k, l=l: is_pullback_square(
                            p=B.hface(i, j, k), q=B.vface(i, j, l),
                            f=B.vface(i, j - 1, l), g=B.hface(i - 1, j, k),
                            grade_bound=gb,
                            name=f"stability d_{k}/e_{l} at ({i},{j})"))
        for i in range(1, top_i + 1):
            for j in range(0, top_j):
                for k in range(j + 1):
                    for l in range(i + 1):
                        jobs.append(lambda i=i, j=j, k=k, l=l: is_pullback_square(
                            p=B.vface(i, j, l), q=B.hdegen(i, j, k),
                            f=B.hdegen(i - 1, j, k), g=B.vface(i, j + 1, l),
                            grade_bound=gb,
                            name=f"stability s_{k}/e_{l} at ({i},{j})"))
        for i in range(0, top_i):
            for j in range(1, top_j + 1):
                for k in range(j + 1):
                    for l in range(i + 1):
                        jobs.append(lambda i=i, j=j, k=k, l=l: is_pullback_square(
                            p=B.hface(i, j, k), q=B.vdegen(i, j, l),
                            f=B.vdegen(i, j - 1, l), g=B.hface(i + 1, j, k),
                            grade_bound=gb,
                            name=f"stability d_{k}/t_{l} at ({i},{j})"))
        for i in range(0, top_i):
            for j in range(0, top_j):
                for k in range(j + 1):
                    for l in range(i + 1):
                        jobs.append(lambda i=i, j=j, k=k, l=l: is_pullback_square(
                            p=B.vdegen(i, j, l), q=B.hdegen(i, j, k),
                            f=B.hdegen(i + 1, j, k), g=B.vdegen(i, j + 1, l),
                            grade_bound=gb,
                            name=f"stability s_{k}/t_{l} at ({i},{j})"))
    return [job() for job in jobs]


def validate_configuration(B: AugmentedBisimplicialGroupoid, n_max: int,
                           full_stability: bool = False,
                           workers: Optional[int] = None) -> ConfigReport:
    """Run the bicomodule-configuration checks at truncation n_max.

    The report covers: Segal in both directions, the two-square stability
    reduction (full family behind `full_stability`), culf augmentations,
    decomposition axioms on both borders, and the pointing identities and
    completeness where pointings are attached.
    """
    if B.max_i < 2 or B.max_j < 2:
        raise InsufficientLevelsError(2, min(B.max_i, B.max_j),
                                      "bicomodule validation")
    sections: dict = {}
    seg_rows = AxiomReport(profile="rows segal")
    for i in range(0, min(B.max_i, n_max) + 1):
        r = check_axioms(B.row(i), "segal", min(n_max, B.max_j - 1), workers=workers)
        for c in r.checks:
            seg_rows.checks.append(SquareResult(c.passed, c.witness,
                                                f"row {i}: {c.name}"))
    sections["rows segal"] = seg_rows
    seg_cols = AxiomReport(profile="columns segal")
    for j in range(0, min(B.max_j, n_max) + 1):
        r = check_axioms(B.column(j), "segal", min(n_max, B.max_i - 1), workers=workers)
        for c in r.checks:
            seg_cols.checks.append(SquareResult(c.passed, c.witness,
                                                f"column {j}: {c.name}"))
    sections["columns segal"] = seg_cols

    stab = AxiomReport(profile="stability",
                       note="two-square reduction" if not full_stability
                       else "full family at truncation")
    stab.checks = _stability_squares(B, full_stability, n_max)
    sections["stability"] = stab

    sections["culf u"] = is_culf(B.u_map(), min(n_max, B.u_map().max_level - 1),
                                 workers=workers)
    sections["culf v"] = is_culf(B.v_map(), min(n_max, B.v_map().max_level - 1),
                                 workers=workers)

    x_n = max(0, min(n_max, B.max_i - 2))
    y_n = max(0, min(n_max, B.max_j - 2))
    sections["border X decomposition"] = check_axioms(B.x_space(), "decomposition",
                                                      x_n, workers=workers)
    sections["border Y decomposition"] = check_axioms(B.y_space(), "decomposition",
                                                      y_n, workers=workers)
    sections["pointings"] = _section_identity_report(B)
    return ConfigReport(sections)


# -- coactions and convolution actions ------------------------------------------


def coact(B: AugmentedBisimplicialGroupoid, side: str, m) -> WeightedTensorList:
    """Weighted coaction decomposition of a class m of B_{0,0}.

    Right side: terms (w, class in B_{0,0}, class in Y_1) from the fiber
    of d_0 : B_{0,1} -> B_{0,0}.  Left side: terms (w, class in X_1,
    class in B_{0,0}) from the fiber of e_1 : B_{1,0} -> B_{0,0}.
    """
    b00 = B.cell(0, 0)
    if not b00.has_object(m):
        raise DomainError(f"{m!r} is not an object of B_{{0,0}}")
    tab0 = b00.iso_classes()
    memo_key = ("coact", side, tab0.class_of(m))
    if memo_key in B._memo:
        return B._memo[memo_key]
    if side == "right":
        leg = B.hface(0, 1, 0)
        dtop = B.hface(0, 1, 1)
        v1 = B.aug_v(1)
        ytab = B.cell(-1, 1).iso_classes()
        label = lambda rep: (tab0.class_of(dtop.ob(rep)), ytab.class_of(v1.ob(rep)))
    elif side == "left":
        leg = B.vface(1, 0, 1)
        ebot = B.vface(1, 0, 0)
        u1 = B.aug_u(1)
        xtab = B.cell(1, -1).iso_classes()
        label = lambda rep: (xtab.class_of(u1.ob(rep)), tab0.class_of(ebot.ob(rep)))
    else:
        raise DomainError("side must be 'right' or 'left'")
    parts = weighted_fiber(leg, m, label)
    terms = tuple(sorted(((w, l, r) for (l, r), w in parts.items()),
                         key=lambda t: (repr(t[1]), repr(t[2]))))
    B._memo[memo_key] = WeightedTensorList(terms)
    return B._memo[memo_key]


def convolve_action(B: AugmentedBisimplicialGroupoid, side: str,
                    outer: Functional, inner: Functional, m) -> Fraction:
    """theta *_r beta (side 'right') or alpha *_l theta (side 'left') at m.

    `inner` lives on B_{0,0}; `outer` lives on X_1 (left) or Y_1 (right).
    """
    b00 = B.cell(0, 0)
    if inner.carrier is not b00:
        raise DomainError("inner functional does not live on B_{0,0}")
    if side == "right":
        if outer.carrier is not B.cell(-1, 1):
            raise DomainError("outer functional does not live on Y_1")
        return sum((w * inner(c) * outer(y) for w, c, y in coact(B, side, m)),
                   Fraction(0))
    if outer.carrier is not B.cell(1, -1):
        raise DomainError("outer functional does not live on X_1")
    return sum((w * outer(x) * inner(c) for w, x, c in coact(B, side, m)),
               Fraction(0))


@dataclass
class AssociativityReport:
    trials: int
    failures: list

    @property
    def passed(self):
        return not self.failures

    def __bool__(self):
        return self.passed


def _random_functional(carrier, rng, name):
    reps = carrier.iso_classes().reps
    table = {rep: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for rep in reps}
    return Functional.from_table(carrier, table, name=name)


def check_associativity(B: AugmentedBisimplicialGroupoid, trials: int,
                        rng=None, classes=None) -> AssociativityReport:
    """alpha *_l (theta *_r beta) = (alpha *_l theta) *_r beta, exactly,
    for random rational functionals, evaluated at every given class of
    B_{0,0} (default: all of them)."""
    import random
    rng = rng or random.Random(0)
    b00 = B.cell(0, 0)
    if classes is None:
        classes = b00.iso_classes().reps
    failures = []
    for t in range(trials):
        alpha = _random_functional(B.cell(1, -1), rng, f"alpha{t}")
        theta = _random_functional(b00, rng, f"theta{t}")
        beta = _random_functional(B.cell(-1, 1), rng, f"beta{t}")
        theta_r_beta = Functional(
            b00, lambda rep, th=theta, be=beta: convolve_action(B, "right", be, th, rep))
        alpha_l_theta = Functional(
            b00, lambda rep, al=alpha, th=theta: convolve_action(B, "left", al, th, rep))
        for m in classes:
            lhs = convolve_action(B, "left", alpha, theta_r_beta, m)
            rhs = convolve_action(B, "right", beta, alpha_l_theta, m)
            if lhs != rhs:
                failures.append((t, m, lhs, rhs))
    return AssociativityReport(trials, failures)


# -- pointings, comodule Phi functors, Mobius inversion --------------------------


def pointing_delta(config: ComoduleConfiguration, m) -> Fraction:
    """delta^R (or delta^L): the fiber cardinality of the pointing section
    over m; requires the section to exist and be a monomorphism."""
    if not config.pointing_complete():
        raise DomainError(f"pointing of {config.name} is not complete")
    return fiber_cardinality(config.bottom_section(), m)


def delta_functional(config: ComoduleConfiguration) -> Functional:
    name = "delta^R" if config.side == "right" else "delta^L"
    return Functional(config.space.level(0),
                      lambda rep: pointing_delta(config, rep), name=name)


def phi_comodule(config: ComoduleConfiguration, m, n: int) -> Fraction:
    """|Phi^side_n|(m): the fiber over m of the leg from the subgroupoid of
    n-simplices whose distinguished vertex lies outside the pointing image
    and whose n principal base edges are all nondegenerate.

    n = -1 returns the pointing delta (the convention Phi_{-1} = delta)."""
    if n == -1:
        return pointing_delta(config, m)
    if n < -1:
        raise DomainError("phi_comodule needs n >= -1")
    if not config.pointing_complete():
        raise DomainError(f"pointing of {config.name} is not complete")
    C0 = config.space.level(0)
    if not C0.has_object(m):
        raise DomainError(f"{m!r} is not an object of C_0")
    image = config.pointing_image_classes()
    tab0 = C0.iso_classes()
    if n == 0:
        return Fraction(1) if tab0.class_of(m) not in image else Fraction(0)
    if not config.base.is_complete():
        raise DomainError("base space is not complete")
    level = config.space.level(n)
    vertex = config.vertex_functor(n)
    fmap = config.base_map.level_map(n)
    degen = config.base.degenerate_edge_classes()
    btab = config.base.level(1).iso_classes()
    keep = []
    for sigma in level.objects:
        if tab0.class_of(vertex.ob(sigma)) in image:
            continue
        edges = principal_edges(config.base, n, fmap.ob(sigma))
        if all(btab.class_of(e) not in degen for e in edges):
            keep.append(sigma)
    W = full_subgroupoid(level, keep, name=f"C_b{'a' * n}")
    leg = config.leg_functor(n)
    restricted = GroupoidFunctor(W, C0, leg.ob, leg.__call__)
    return fiber_cardinality(restricted, m)


def config_coact(config: ComoduleConfiguration, m) -> WeightedTensorList:
    """The coaction of a configuration: fiber of the level-1 leg over m,
    labelled by (C_0 class, base edge class) -- base label first on the
    left side, mirroring `coact`."""
    C0 = config.space.level(0)
    tab0 = C0.iso_classes()
    btab = config.base.level(1).iso_classes()
    leg = config.leg_functor(1)
    vertex = config.vertex_functor(1)
    f1 = config.base_map.level_map(1)
    if config.side == "right":
        label = lambda rep: (tab0.class_of(vertex.ob(rep)), btab.class_of(f1.ob(rep)))
    else:
        label = lambda rep: (btab.class_of(f1.ob(rep)), tab0.class_of(vertex.ob(rep)))
    parts = weighted_fiber(leg, m, label)
    terms = tuple(sorted(((w, l, r) for (l, r), w in parts.items()),
                         key=lambda t: (repr(t[1]), repr(t[2]))))
    return WeightedTensorList(terms)


@dataclass
class ComoduleInversionRow:
    cls: object
    phi_identities: list          # (n, lhs, rhs) with lhs = zeta * Phi_n^base
    summed_lhs: Fraction          # |zeta^C| * |mu^base|
    summed_rhs: Fraction          # |delta^side|

    @property
    def passed(self):
        return (self.summed_lhs == self.summed_rhs
                and all(l == r for _, l, r in self.phi_identities))


@dataclass
class ComoduleInversionReport:
    side: str
    rows: list

    @property
    def passed(self):
        return all(r.passed for r in self.rows)

    def failures(self):
        return [r for r in self.rows if not r.passed]

    def __bool__(self):
        return self.passed


def comodule_mobius_check(config: ComoduleConfiguration, sample=None,
                          length_bound: Optional[int] = None,
                          mu_base: Optional[Functional] = None) -> ComoduleInversionReport:
    """Verify the comodule Mobius inversion on sampled classes of C_0.

    For each m this checks (a) the per-degree identity
    zeta^C * Phi_n^base = Phi^side_{n-1} + Phi^side_n for 0 <= n <= bound,
    computing the two sides by independent routes, and (b) the summed
    inversion |zeta^C| * |mu^base| = |delta^side|.  The bound comes from
    the grade of m unless supplied; ungraded spaces must pass one.
    """
    C0 = config.space.level(0)
    if sample is None:
        sample = C0.iso_classes().reps
    if mu_base is None:
        mu_base = mobius_functional(config.base, length_bound)
    rows = []
    for m in sample:
        if length_bound is None:
            if not C0.is_graded():
                raise MobiusCertificateError(
                    "cannot certify locally finite length for the comodule: "
                    "ungraded C_0 and no bound supplied")
            bound = C0.grade(C0.iso_classes().class_of(m))
        else:
            bound = length_bound
        action = config_coact(config, m)
        per_n = []
        summed = Fraction(0)
        for n in range(0, bound + 1):
            if config.side == "right":
                lhs = sum((w * phi_n(config.base, y, n) for w, _c, y in action),
                          Fraction(0))
            else:
                lhs = sum((w * phi_n(config.base, x, n) for w, x, _c in action),
                          Fraction(0))
            rhs = phi_comodule(config, m, n - 1) + phi_comodule(config, m, n)
            per_n.append((n, lhs, rhs))
        if config.side == "right":
            summed = sum((w * mu_base(y) for w, _c, y in action), Fraction(0))
        else:
            summed = sum((w * mu_base(x) for w, x, _c in action), Fraction(0))
        rows.append(ComoduleInversionRow(m, per_n, summed, pointing_delta(config, m)))
    return ComoduleInversionReport(config.side, rows)


# -- the generalized Rota formula -------------------------------------------------


def rota_evaluate(B: AugmentedBisimplicialGroupoid, m,
                  length_bound: Optional[int] = None):
    """Evaluate both sides of |mu^X| *_l |delta^R| = |delta^L| *_r |mu^Y| at m.

    Returns the pair (lhs, rhs); the caller asserts equality.  Both
    pointings must be complete, and the Mobius functionals of the borders
    need a grade or an explicit length bound."""
    rc = right_comodule(B)
    lc = left_comodule(B)
    mu_x = mobius_functional(B.x_space(), length_bound)
    mu_y = mobius_functional(B.y_space(), length_bound)
    lhs = convolve_action(B, "left", mu_x, delta_functional(rc), m)
    rhs = convolve_action(B, "right", mu_y, delta_functional(lc), m)
    return lhs, rhs


# -- total decalage ---------------------------------------------------------------


def total_decalage(X: TruncatedSimplicialGroupoid, max_i: int, max_j: int,
                   name: str = "") -> AugmentedBisimplicialGroupoid:
    """The total decalage of X: cell (i,j) = X_{i+1+j}, zeroth row Dec_bot,
    zeroth column Dec_top, with both pointings; realizes the coalgebra of X
    as a bicomodule over itself."""
    if max_i + 1 + max_j > X.max_level:
        raise InsufficientLevelsError(max_i + 1 + max_j, X.max_level,
                                      "total decalage")

    def lvl(i, j):
        return i + 1 + j if (i >= 0 and j >= 0) else (i if j == -1 else j)

    return AugmentedBisimplicialGroupoid(
        max_i, max_j,
        cell_fn=lambda B, i, j: X.level(lvl(i, j)),
        hface_fn=lambda B, i, j, k: X.face(lvl(i, j), k if i == -1 else i + 1 + k),
        vface_fn=lambda B, i, j, l: X.face(lvl(i, j), l),
        hdegen_fn=lambda B, i, j, k: X.degeneracy(lvl(i, j), k if i == -1 else i + 1 + k),
        vdegen_fn=lambda B, i, j, l: X.degeneracy(lvl(i, j), l),
        u_fn=lambda B, i: X.face(i + 1, i + 1),
        v_fn=lambda B, j: X.face(j + 1, 0),
        right_section_fn=lambda B, i, j: X.degeneracy(lvl(i, j - 1), i),
        left_section_fn=lambda B, i, j: X.degeneracy(lvl(i - 1, j), i),
        grade_bound=X.grade_bound,
        name=name or f"TotalDec({X.name})")
