"""Truncated simplicial finite groupoids and their axiom checkers.

A `TruncatedSimplicialGroupoid` stores levels 0..max_level of finite
groupoids together with face and degeneracy functors, produced lazily by
generator callbacks and memoized.  On graded spaces every level object
carries a grade (for the layered instances: the number of elements) and
levels are generated under a common grade bound; pullback checks restrict
the iso-comma side to the same bound, so reports speak of axioms verified
at the stated truncation, never globally.

Checks provided: strict simplicial identities, the Segal squares, the four
square families of the decomposition-space condition, completeness
(the bottom degeneracy is a monomorphism), and culf-ness of simplicial
maps (cartesian naturality squares on codegeneracies and inner cofaces).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .groupoid import (
    DomainError,
    FiniteGroupoid,
    GroupoidFunctor,
    SquareResult,
    full_subgroupoid,
    functors_equal,
    is_monomorphism,
    is_pullback_square,
)


class InsufficientLevelsError(DomainError):
    """The requested check needs levels beyond the stored truncation."""

    def __init__(self, needed: int, available: int, what: str = ""):
        self.needed = needed
        self.available = available
        msg = f"insufficient levels: need level {needed}, truncated at {available}"
        if what:
            msg += f" (for {what})"
        super().__init__(msg)


class TruncatedSimplicialGroupoid:
    """Levels X_0..X_N of finite groupoids with faces d_i and degeneracies s_i.

    The generator callbacks receive the space itself, so a face functor can
    look up its (memoized) source and target levels:

        level_fn(space, n)      -> FiniteGroupoid
        face_fn(space, n, i)    -> GroupoidFunctor level n -> n-1,  0 <= i <= n
        degen_fn(space, n, i)   -> GroupoidFunctor level n -> n+1,  0 <= i <= n

    Memoization uses plain dict insertion, which is atomic under the GIL;
    checks themselves are pure and may run in parallel per square.
    """

    def __init__(self, max_level: int, level_fn, face_fn, degen_fn,
                 grade_bound: Optional[int] = None,
                 principal_edge_fn=None, name: str = ""):
        if max_level < 1:
            raise DomainError("a truncated simplicial groupoid needs max_level >= 1")
        self.max_level = max_level
        self._level_fn = level_fn
        self._face_fn = face_fn
        self._degen_fn = degen_fn
        self._principal_edge_fn = principal_edge_fn
        self.grade_bound = grade_bound
        self.name = name
        self._levels: dict = {}
        self._faces: dict = {}
        self._degens: dict = {}
        self._complete: Optional[bool] = None
        self._cache: dict = {}

    @classmethod
    def from_levels(cls, levels, faces, degens, grade_bound=None, name=""):
        """Eager construction from dicts {n: groupoid}, {(n,i): functor}."""
        space = cls(max(levels), lambda s, n: levels[n],
                    lambda s, n, i: faces[(n, i)],
                    lambda s, n, i: degens[(n, i)],
                    grade_bound=grade_bound, name=name)
        return space

    def level(self, n: int) -> FiniteGroupoid:
        if not 0 <= n <= self.max_level:
            raise InsufficientLevelsError(n, self.max_level, self.name)
        if n not in self._levels:
            self._levels[n] = self._level_fn(self, n)
        return self._levels[n]

    def face(self, n: int, i: int) -> GroupoidFunctor:
        if not (1 <= n <= self.max_level and 0 <= i <= n):
            raise DomainError(f"no face d_{i} at level {n}")
        if (n, i) not in self._faces:
            self._faces[(n, i)] = self._face_fn(self, n, i)
        return self._faces[(n, i)]

    def degeneracy(self, n: int, i: int) -> GroupoidFunctor:
        if n + 1 > self.max_level:
            raise InsufficientLevelsError(n + 1, self.max_level, self.name)
        if not (0 <= i <= n):
            raise DomainError(f"no degeneracy s_{i} at level {n}")
        if (n, i) not in self._degens:
            self._degens[(n, i)] = self._degen_fn(self, n, i)
        return self._degens[(n, i)]

    # -- derived accessors -------------------------------------------------

    def bottom_face_power(self, n: int, k: int) -> GroupoidFunctor:
        """(d_0)^k : level n -> level n-k."""
        F = GroupoidFunctor.identity(self.level(n))
        for m in range(n, n - k, -1):
            F = GroupoidFunctor.compose(self.face(m, 0), F)
        return F

    def top_face_power(self, n: int, k: int) -> GroupoidFunctor:
        """d_top^k : level n -> level n-k, deleting from the top."""
        F = GroupoidFunctor.identity(self.level(n))
        for m in range(n, n - k, -1):
            F = GroupoidFunctor.compose(self.face(m, m), F)
        return F

    def principal_edge(self, n: int, sigma, i: int):
        """The i-th principal edge (1-based) of an n-simplex, in level 1.

        Generated spaces may install a `principal_edge_fn` fast path
        (direct layer extraction); it must agree with the composite of
        outer faces computed here, and the test suite compares the two.
        """
        if not 1 <= i <= n:
            raise DomainError(f"principal edge index {i} out of range 1..{n}")
        if self._principal_edge_fn is not None:
            return self._principal_edge_fn(self, n, sigma, i)
        return self.principal_edge_by_faces(n, sigma, i)

    def principal_edge_by_faces(self, n: int, sigma, i: int):
        """Principal edge through the composite of outer face maps."""
        obj = sigma
        for m in range(n, i, -1):      # delete top vertices down to level i
            obj = self.face(m, m).ob(obj)
        for m in range(i, 1, -1):      # delete bottom vertices down to level 1
            obj = self.face(m, 0).ob(obj)
        return obj

    def degenerate_edge_classes(self) -> frozenset:
        """Iso classes of level-1 objects in the essential image of s_0."""
        if "degen_edges" not in self._cache:
            tab = self.level(1).iso_classes()
            s0 = self.degeneracy(0, 0)
            self._cache["degen_edges"] = frozenset(
                tab.class_of(s0.ob(x)) for x in self.level(0).objects)
        return self._cache["degen_edges"]

    def is_complete(self) -> bool:
        if self._complete is None:
            self._complete = is_monomorphism(self.degeneracy(0, 0))
        return self._complete


def principal_edges(X: TruncatedSimplicialGroupoid, n: int, sigma) -> list:
    """All n principal edges of an n-simplex, as objects of level 1."""
    if not X.level(n).has_object(sigma):
        raise DomainError(f"{sigma!r} is not an object of level {n}")
    return [X.principal_edge(n, sigma, i) for i in range(1, n + 1)]


@dataclass
class WordGroupoid:
    """The full subgroupoid X_w of level len(w) selected by a word.

    Letters constrain the principal edges: '0' forces the edge into the
    essential image of s_0, 'a' forces it out, '1' leaves it free.
    """

    base: TruncatedSimplicialGroupoid
    word: str
    groupoid: FiniteGroupoid


def word_groupoid(X: TruncatedSimplicialGroupoid, word: str) -> WordGroupoid:
    n = len(word)
    if any(c not in "01a" for c in word):
        raise DomainError(f"word {word!r} not over alphabet 0/1/a")
    cached = X._cache.get(("word", word))
    if cached is not None:
        return cached
    level = X.level(n)
    if n == 0:
        result = WordGroupoid(X, word, level)
        X._cache[("word", word)] = result
        return result
    degen = X.degenerate_edge_classes()
    tab = X.level(1).iso_classes()
    keep = []
    for sigma in level.objects:
        ok = True
        for i, letter in enumerate(word, start=1):
            if letter == "1":
                continue
            cls = tab.class_of(X.principal_edge(n, sigma, i))
            if (letter == "0") != (cls in degen):
                ok = False
                break
        if ok:
            keep.append(sigma)
    result = WordGroupoid(X, word, full_subgroupoid(level, keep, name=f"X_{word}"))
    X._cache[("word", word)] = result
    return result


def nondegenerate_simplices(X: TruncatedSimplicialGroupoid, n: int) -> WordGroupoid:
    """X_{a...a}: simplices with every principal edge nondegenerate.

    Requires a complete space so that "nondegenerate" is a well-defined
    complement; for n = 0 this is X_0 itself.
    """
    if n > 0 and not X.is_complete():
        raise DomainError("space is not complete: s_0 is not a monomorphism")
    return word_groupoid(X, "a" * n)


# -- simplicial maps ---------------------------------------------------------


class SimplicialMap:
    """A strictly simplicial map between truncated simplicial groupoids."""

    def __init__(self, source, target, level_fn, name: str = ""):
        self.source = source
        self.target = target
        self._level_fn = level_fn    # (map, n) -> GroupoidFunctor
        self.name = name
        self._levels: dict = {}

    @property
    def max_level(self) -> int:
        return min(self.source.max_level, self.target.max_level)

    def level_map(self, n: int) -> GroupoidFunctor:
        if n > self.max_level:
            raise InsufficientLevelsError(n, self.max_level, self.name)
        if n not in self._levels:
            self._levels[n] = self._level_fn(self, n)
        return self._levels[n]

    @classmethod
    def identity(cls, X, name="id") -> "SimplicialMap":
        return cls(X, X, lambda m, n: GroupoidFunctor.identity(X.level(n)), name=name)

    def validate(self, n_max: Optional[int] = None) -> None:
        """Check strict commutation with all faces and degeneracies."""
        top = self.max_level if n_max is None else min(n_max, self.max_level)
        for n in range(1, top + 1):
            for i in range(n + 1):
                lhs = GroupoidFunctor.compose(self.target.face(n, i), self.level_map(n))
                rhs = GroupoidFunctor.compose(self.level_map(n - 1), self.source.face(n, i))
                if not functors_equal(lhs, rhs):
                    raise DomainError(f"map does not commute with d_{i} at level {n}")
        for n in range(0, top):
            for i in range(n + 1):
                lhs = GroupoidFunctor.compose(self.target.degeneracy(n, i), self.level_map(n))
                rhs = GroupoidFunctor.compose(self.level_map(n + 1), self.source.degeneracy(n, i))
                if not functors_equal(lhs, rhs):
                    raise DomainError(f"map does not commute with s_{i} at level {n}")


# -- axiom reports ------------------------------------------------------------


@dataclass
class AxiomReport:
    """Outcome of check_axioms / is_culf: one entry per square instance."""

    profile: str
    checks: list = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __bool__(self):
        return self.passed

    def lines(self):
        out = [f"profile {self.profile}: {'PASS' if self.passed else 'FAIL'}"]
        if self.note:
            out.append(f"  verified range: {self.note}")
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            out.append(f"  [{mark}] {c.name}")
            if not c.passed and c.witness:
                out.append(f"         witness: {c.witness}")
        return out


def _run_checks(jobs, workers: Optional[int]):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda job: job(), jobs))
    return [job() for job in jobs]


def check_axioms(X: TruncatedSimplicialGroupoid, profile: str, n_max: int,
                 workers: Optional[int] = None) -> AxiomReport:
    """Verify an axiom profile at the stated truncation.

    Profiles:
      identities    -- strict simplicial identities (and grade additivity
                       when the space is graded),
      segal         -- Segal squares for 1 <= n <= n_max,
      decomposition -- the four active/inert square families for
                       0 <= n <= n_max, 0 <= k <= n; the coface families
                       reach level n+3 and are checked for as many n as the
                       truncation allows, with the verified range recorded,
      complete      -- s_0 : X_0 -> X_1 is a monomorphism.
    """
    gb = X.grade_bound
    if profile == "identities":
        return _check_identities(X, n_max)

    if profile == "complete":
        report = AxiomReport(profile="complete")
        ok = X.is_complete()
        report.checks.append(SquareResult(ok, None if ok else
                                          "s_0 has a non-contractible nonempty fiber",
                                          name="s_0 monomorphism"))
        return report

    if profile == "segal":
        if n_max + 1 > X.max_level:
            raise InsufficientLevelsError(n_max + 1, X.max_level, "segal profile")
        report = AxiomReport(profile="segal", note=f"n = 1..{n_max}")
        jobs = []
        for n in range(1, n_max + 1):
            jobs.append(lambda n=n: is_pullback_square(
                p=X.face(n + 1, n + 1), q=X.face(n + 1, 0),
                f=X.face(n, 0), g=X.face(n, n),
                grade_bound=gb, name=f"segal square n={n}"))
        report.checks = _run_checks(jobs, workers)
        return report

    if profile == "decomposition":
        if n_max + 2 > X.max_level:
            raise InsufficientLevelsError(n_max + 2, X.max_level,
                                          "decomposition profile")
        d_n_max = min(n_max, X.max_level - 3)
        report = AxiomReport(
            profile="decomposition",
            note=(f"degeneracy families n = 0..{n_max}; "
                  f"coface families n = 0..{d_n_max}"))
        jobs = []
        for n in range(0, n_max + 1):
            for k in range(0, n + 1):
                jobs.append(lambda n=n, k=k: is_pullback_square(
                    p=X.face(n + 1, 0), q=X.degeneracy(n + 1, k + 1),
                    f=X.degeneracy(n, k), g=X.face(n + 2, 0),
                    grade_bound=gb, name=f"s_{k + 1}/d_bot square n={n}"))
                jobs.append(lambda n=n, k=k: is_pullback_square(
                    p=X.face(n + 1, n + 1), q=X.degeneracy(n + 1, k),
                    f=X.degeneracy(n, k), g=X.face(n + 2, n + 2),
                    grade_bound=gb, name=f"s_{k}/d_top square n={n}"))
        for n in range(0, d_n_max + 1):
            for k in range(0, n + 1):
                jobs.append(lambda n=n, k=k: is_pullback_square(
                    p=X.face(n + 3, 0), q=X.face(n + 3, k + 2),
                    f=X.face(n + 2, k + 1), g=X.face(n + 2, 0),
                    grade_bound=gb, name=f"d_{k + 2}/d_bot square n={n}"))
                jobs.append(lambda n=n, k=k: is_pullback_square(
                    p=X.face(n + 3, n + 3), q=X.face(n + 3, k + 1),
                    f=X.face(n + 2, k + 1), g=X.face(n + 2, n + 2),
                    grade_bound=gb, name=f"d_{k + 1}/d_top square n={n}"))
        report.checks = _run_checks(jobs, workers)
        return report

    raise DomainError(f"unknown profile {profile!r}")


def _check_identities(X: TruncatedSimplicialGroupoid, n_max: int) -> AxiomReport:
    report = AxiomReport(profile="identities", note=f"levels 0..{min(n_max, X.max_level)}")
    top = min(n_max, X.max_level)

    def record(ok, name):
        report.checks.append(SquareResult(ok, None if ok else "functors differ", name))

    for n in range(2, top + 1):
        for j in range(n + 1):
            for i in range(j):
                lhs = GroupoidFunctor.compose(X.face(n - 1, i), X.face(n, j))
                rhs = GroupoidFunctor.compose(X.face(n - 1, j - 1), X.face(n, i))
                record(functors_equal(lhs, rhs), f"d_{i} d_{j} level {n}")
    for n in range(0, top - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                lhs = GroupoidFunctor.compose(X.degeneracy(n + 1, j + 1), X.degeneracy(n, i))
                rhs = GroupoidFunctor.compose(X.degeneracy(n + 1, i), X.degeneracy(n, j))
                record(functors_equal(lhs, rhs), f"s_i s_j ({i},{j}) level {n}")
    for n in range(0, top):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = GroupoidFunctor.compose(X.face(n + 1, i), X.degeneracy(n, j))
                if i == j or i == j + 1:
                    rhs = GroupoidFunctor.identity(X.level(n))
                elif i < j:
                    rhs = GroupoidFunctor.compose(X.degeneracy(n - 1, j - 1), X.face(n, i))
                else:
                    rhs = GroupoidFunctor.compose(X.degeneracy(n - 1, j), X.face(n, i - 1))
                record(functors_equal(lhs, rhs), f"d_{i} s_{j} level {n}")
    if X.level(1).is_graded() and X.max_level >= 2:
        lvl2, lvl1 = X.level(2), X.level(1)
        d0, d1, d2 = X.face(2, 0), X.face(2, 1), X.face(2, 2)
        ok = all(lvl1.grade(d1.ob(s)) == lvl1.grade(d2.ob(s)) + lvl1.grade(d0.ob(s))
                 for s in lvl2.objects)
        record(ok, "additive grading at level 2")
        for n in range(0, min(top, X.max_level - 1) + 1):
            lvl, nxt = X.level(n), X.level(n + 1)
            if not (lvl.is_graded() and nxt.is_graded()):
                continue
            ok = all(nxt.grade(X.degeneracy(n, i).ob(s)) == lvl.grade(s)
                     for i in range(n + 1) for s in lvl.objects)
            record(ok, f"degeneracies preserve grade at level {n}")
    return report


def is_culf(f: SimplicialMap, n_max: int, workers: Optional[int] = None) -> AxiomReport:
    """Cartesian on every codegeneracy and inner coface square up to n_max.

    Codegeneracy squares are checked for 0 <= i <= n <= n_max (they reach
    level n+1); inner coface squares for as many n as the truncation
    allows (they reach level n+2), with the verified range recorded.
    """
    if n_max + 1 > f.max_level:
        raise InsufficientLevelsError(n_max + 1, f.max_level, "culf check")
    d_n_max = min(n_max, f.max_level - 2)
    gb = f.source.grade_bound
    if gb is None:
        gb = f.target.grade_bound
    report = AxiomReport(
        profile="culf",
        note=f"codegeneracies n = 0..{n_max}; inner cofaces n = 0..{d_n_max}")
    C, Y = f.source, f.target
    jobs = []
    for n in range(0, n_max + 1):
        for i in range(n + 1):
            jobs.append(lambda n=n, i=i: is_pullback_square(
                p=f.level_map(n), q=C.degeneracy(n, i),
                f=Y.degeneracy(n, i), g=f.level_map(n + 1),
                grade_bound=gb, name=f"codegeneracy square s_{i} n={n}"))
    for n in range(0, d_n_max + 1):
        for i in range(n + 1):
            jobs.append(lambda n=n, i=i: is_pullback_square(
                p=f.level_map(n + 2), q=C.face(n + 2, i + 1),
                f=Y.face(n + 2, i + 1), g=f.level_map(n + 1),
                grade_bound=gb, name=f"inner coface square d_{i + 1} n={n}"))
    report.checks = _run_checks(jobs, workers)
    return report


# -- decalage -----------------------------------------------------------------


@dataclass
class DecalageResult:
    """A decalage with its comparison map, augmentation and extra section.

    This is exactly the data of a pointed comodule configuration: the
    decalage is Segal whenever the base is a decomposition space, the
    comparison map is culf, and `section(n)` gives the extra degeneracy
    level n-1 -> n (with `section(0)` landing from the augmentation target).
    """

    space: TruncatedSimplicialGroupoid
    side: str
    to_base: SimplicialMap
    aug_target: FiniteGroupoid
    augmentation: GroupoidFunctor
    section: Callable[[int], GroupoidFunctor]


def decalage(X: TruncatedSimplicialGroupoid, side: str = "bottom") -> DecalageResult:
    """Dec_bot(X) (delete X_0, all d_0 and s_0) or Dec_top (delete d_top, s_top).

    The comparison map to X is the deleted face; the augmentation and the
    extra section are the remaining bottom (resp. top) operators.
    """
    if X.max_level < 2:
        raise InsufficientLevelsError(2, X.max_level, "decalage")
    if side == "bottom":
        shift_face = lambda s, n, i: X.face(n + 1, i + 1)
        shift_degen = lambda s, n, i: X.degeneracy(n + 1, i + 1)
        cmp_face = lambda m, n: X.face(n + 1, 0)
        aug = X.face(1, 1)
        section = lambda n: X.degeneracy(n, 0)
    elif side == "top":
        shift_face = lambda s, n, i: X.face(n + 1, i)
        shift_degen = lambda s, n, i: X.degeneracy(n + 1, i)
        cmp_face = lambda m, n: X.face(n + 1, n + 1)
        aug = X.face(1, 0)
        section = lambda n: X.degeneracy(n, n)
    else:
        raise DomainError(f"side must be 'bottom' or 'top', got {side!r}")
    dec = TruncatedSimplicialGroupoid(
        X.max_level - 1,
        lambda s, n: X.level(n + 1),
        shift_face, shift_degen,
        grade_bound=X.grade_bound,
        name=f"Dec_{side}({X.name})")
    to_base = SimplicialMap(dec, X, cmp_face, name=f"dec_{side}")
    return DecalageResult(dec, side, to_base, X.level(0), aug, section)
