"""Order descriptions over the rational integers and their local generating counts.

An OrderSpec lists simple factors (center minimal polynomial, division-algebra
degree, declared local indices, copies).  For each rational prime the splitting
of every center is read off the minimal polynomial modulo p, certified by the
maximality criterion of the polynomial order; classified local data then feeds
exact per-prime generating-tuple counts and minimal-k thresholds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import polys
from .counting import min_k_for_copies, min_k_for_copies_bound, gen_count_power
from .errors import (
    EmptySpec,
    ExceptionalPrimeNeedsOverride,
    IndexNotDividingDegree,
    NotMonic,
    SpecError,
)
from .finalg import FiniteAlgebra, matrix_over, product_algebra, truncated_local_algebra
from .finfield import is_prime


# -- splitting patterns ------------------------------------------------------


@dataclass(frozen=True)
class DegreePattern:
    """Multiset of (residue degree, multiplicity) for the primes above p, plus
    whether the polynomial order is certified maximal at p."""

    pairs: tuple[tuple[int, int], ...]
    certified: bool


def _int_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def degree_pattern(minpoly, p: int) -> DegreePattern:
    """Factor shape of a monic integer polynomial mod p with a maximality certificate.

    The pattern lists one (degree, multiplicity) pair per irreducible factor of
    the reduction mod p.  Certification runs the lifted-radical test: with
    fbar = g*h for g the radical and h the cofactor, the order Z[x]/(f) is
    maximal at p iff gcd((g*h - f)/p mod p, gcd(g, h)) = 1; squarefree
    reductions certify trivially.
    """
    coeffs = tuple(int(c) for c in minpoly)
    if not coeffs or coeffs[-1] != 1 or len(coeffs) < 2:
        raise NotMonic(f"center polynomial must be monic of positive degree, got {list(minpoly)}")
    assert is_prime(p)
    fbar = polys.reduce_mod(coeffs, p)
    assert polys.degree(fbar) == len(coeffs) - 1
    parts = polys.squarefree_decomposition(fbar, p)
    pattern = []
    radical: polys.Poly = (1,)
    for part, mult in parts:
        radical = polys.mul(radical, part, p)
        for deg, cnt in sorted(polys.distinct_degree_counts(part, p).items()):
            pattern.extend([(deg, mult)] * cnt)
    pattern.sort()
    assert sum(deg * mult for deg, mult in pattern) == len(coeffs) - 1
    cofactor, rem = polys.divmod_poly(fbar, radical, p)
    assert not rem
    common = polys.gcd(radical, cofactor, p)
    if polys.degree(common) <= 0:
        certified = True
    else:
        lifted = _int_mul(list(radical), list(cofactor))
        lifted += [0] * (len(coeffs) - len(lifted))
        diff = [x - y for x, y in zip(lifted, coeffs)]
        assert all(c % p == 0 for c in diff)
        tbar = polys.reduce_mod(tuple(c // p for c in diff), p)
        certified = polys.degree(polys.gcd(tbar, common, p)) <= 0
    return DegreePattern(tuple(pattern), certified)


# -- spec model ---------------------------------------------------------------

_FACTOR_KEYS = {"name", "center_minpoly", "degree", "local_indices", "copies"}
_SPEC_KEYS = {"factors", "free_over_base", "overrides"}


@dataclass(frozen=True)
class SimpleFactorSpec:
    """One simple factor: center K = Q[x]/(center_minpoly), division degree
    delta (dimension delta^2 over K), declared local indices, and copies."""

    name: str
    center_minpoly: tuple[int, ...]
    degree: int
    local_indices: dict = field(default_factory=dict)
    copies: int = 1

    def __post_init__(self):
        if not self.name:
            raise SpecError("factor name must be nonempty")
        if self.degree < 1:
            raise SpecError(f"factor {self.name}: degree must be >= 1")
        if self.copies < 1:
            raise SpecError(f"factor {self.name}: copies must be >= 1")
        coeffs = self.center_minpoly
        if not coeffs or coeffs[-1] != 1 or len(coeffs) < 2:
            raise NotMonic(f"factor {self.name}: center polynomial must be monic of positive degree")
        for p, ms in self.local_indices.items():
            if not is_prime(p):
                raise SpecError(f"factor {self.name}: local index key {p} is not prime")
            if not ms:
                raise SpecError(f"factor {self.name}: empty local index list at p={p}")
            for m in ms:
                if m < 1 or self.degree % m != 0:
                    raise IndexNotDividingDegree(f"factor {self.name}: index {m} does not divide degree {self.degree}")

    @property
    def center_degree(self) -> int:
        return len(self.center_minpoly) - 1

    @property
    def dimension(self) -> int:
        """Dimension over the rationals of this factor including copies."""
        return self.center_degree * self.degree**2 * self.copies


@dataclass(frozen=True)
class OrderSpec:
    """A maximal order in a product of simple algebras over the rationals."""

    factors: tuple[SimpleFactorSpec, ...]
    free_over_base: bool = False
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.factors:
            raise EmptySpec("spec has no factors")
        names = [f.name for f in self.factors]
        if len(set(names)) != len(names):
            raise SpecError("factor names must be unique")
        for fac in self.factors:
            if fac.center_degree > 1 and fac.local_indices:
                missing = [p for p in fac.local_indices if p not in self.overrides]
                if missing:
                    raise SpecError(
                        f"factor {fac.name}: local indices over a center of degree > 1 "
                        f"need explicit override rows for p in {sorted(missing)}"
                    )
        d = self.dimension
        for p, rows in self.overrides.items():
            if not is_prime(p):
                raise SpecError(f"override key {p} is not prime")
            if not rows:
                raise SpecError(f"override for p={p} is empty")
            total = 0
            for row in rows:
                if len(row) != 4 or any(x < 1 for x in row):
                    raise SpecError(f"override row {row} at p={p} must be four positive integers (n, m, e, f)")
                n, m, e, f = row
                total += e * f * m * m * n * n
            if total != d:
                raise SpecError(f"override rows at p={p} have total dimension {total}, expected {d}")

    @property
    def dimension(self) -> int:
        return sum(f.dimension for f in self.factors)

    @property
    def max_degree(self) -> int:
        return max(f.degree for f in self.factors)

    @property
    def listed_primes(self) -> list[int]:
        """Primes carrying declared indices or override rows, sorted."""
        out = set(self.overrides)
        for f in self.factors:
            out.update(f.local_indices)
        return sorted(out)


def spec_from_dict(data: dict) -> OrderSpec:
    """Build and validate an OrderSpec from parsed JSON; unknown keys are rejected."""
    if not isinstance(data, dict):
        raise SpecError("spec document must be a JSON object")
    unknown = set(data) - _SPEC_KEYS
    if unknown:
        raise SpecError(f"unknown spec keys: {sorted(unknown)}")
    raw_factors = data.get("factors")
    if raw_factors is None:
        raise EmptySpec("spec has no factors")
    factors = []
    for raw in raw_factors:
        if not isinstance(raw, dict):
            raise SpecError("each factor must be a JSON object")
        bad = set(raw) - _FACTOR_KEYS
        if bad:
            raise SpecError(f"unknown factor keys: {sorted(bad)}")
        if "name" not in raw or "center_minpoly" not in raw or "degree" not in raw:
            raise SpecError("factor needs name, center_minpoly, and degree")
        indices = {}
        for key, ms in (raw.get("local_indices") or {}).items():
            try:
                p = int(key)
            except ValueError:
                raise SpecError(f"local index key {key!r} is not an integer") from None
            indices[p] = tuple(int(m) for m in ms)
        factors.append(
            SimpleFactorSpec(
                name=str(raw["name"]),
                center_minpoly=tuple(int(c) for c in raw["center_minpoly"]),
                degree=int(raw["degree"]),
                local_indices=indices,
                copies=int(raw.get("copies", 1)),
            )
        )
    overrides = {}
    for key, rows in (data.get("overrides") or {}).items():
        try:
            p = int(key)
        except ValueError:
            raise SpecError(f"override key {key!r} is not an integer") from None
        overrides[p] = tuple(tuple(int(x) for x in row) for row in rows)
    return OrderSpec(
        factors=tuple(factors),
        free_over_base=bool(data.get("free_over_base", False)),
        overrides=overrides,
    )


def load_spec(path: str) -> OrderSpec:
    """Load an OrderSpec from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        return spec_from_dict(json.load(fh))


def spec_to_dict(spec: OrderSpec) -> dict:
    """Canonical JSON-ready form of a spec (round-trips through spec_from_dict)."""
    return {
        "factors": [
            {
                "name": f.name,
                "center_minpoly": list(f.center_minpoly),
                "degree": f.degree,
                "local_indices": {str(p): list(ms) for p, ms in sorted(f.local_indices.items())},
                "copies": f.copies,
            }
            for f in spec.factors
        ],
        "free_over_base": spec.free_over_base,
        "overrides": {str(p): [list(row) for row in rows] for p, rows in sorted(spec.overrides.items())},
    }


# -- local data ----------------------------------------------------------------


@dataclass(frozen=True)
class LocalPrimeData:
    """Per-prime local structure: entries (n, m, e, f), copies already expanded."""

    p: int
    entries: tuple[tuple[int, int, int, int], ...]
    exceptional: bool


def local_data(spec: OrderSpec, p: int) -> LocalPrimeData:
    """Assemble the local entries of the spec at a rational prime.

    Override rows win outright; otherwise each factor contributes one entry per
    prime of its center above p, with the declared index (default 1) and the
    residue data from degree_pattern.  An uncertifiable pattern marks the prime
    exceptional.
    """
    assert is_prime(p)
    if p in spec.overrides:
        return LocalPrimeData(p, spec.overrides[p], False)
    entries = []
    for fac in spec.factors:
        pattern = degree_pattern(fac.center_minpoly, p)
        if not pattern.certified:
            return LocalPrimeData(p, (), True)
        listed = fac.local_indices.get(p)
        if listed is not None and len(listed) != len(pattern.pairs):
            raise SpecError(
                f"factor {fac.name}: {len(listed)} local indices at p={p}, "
                f"but {len(pattern.pairs)} primes lie above it"
            )
        for j, (fdeg, e) in enumerate(pattern.pairs):
            m = listed[j] if listed is not None else 1
            if fac.degree % m != 0:
                raise IndexNotDividingDegree(f"index {m} does not divide degree {fac.degree}")
            n = fac.degree // m
            entries.extend([(n, m, e, fdeg)] * fac.copies)
    data = LocalPrimeData(p, tuple(entries), False)
    assert sum(e * f * m * m * n * n for n, m, e, f in data.entries) == spec.dimension
    return data


def c_factor(m: int, e: int, f: int, q: int) -> Fraction:
    """Radical correction constant: 1 when m > 1, q^-f when m = 1 < e, else 0."""
    assert m >= 1 and e >= 1 and f >= 1 and q >= 2
    if m > 1:
        return Fraction(1)
    if e > 1:
        return Fraction(1, q**f)
    return Fraction(0)


@dataclass(frozen=True)
class ClassifiedLocal:
    """Entries grouped by (capacity n, twist degree r = f*m); members carry (e*m, c)."""

    p: int
    q: int
    groups: tuple[tuple[tuple[int, int], tuple[tuple[int, Fraction], ...]], ...]

    def group_map(self) -> dict:
        return {key: members for key, members in self.groups}


def classify(data: LocalPrimeData) -> ClassifiedLocal:
    """Group local entries by (n, r); raises for exceptional primes."""
    if data.exceptional:
        raise ExceptionalPrimeNeedsOverride(data.p, "splitting not certifiable; supply override rows")
    buckets: dict = {}
    for n, m, e, f in data.entries:
        buckets.setdefault((n, f * m), []).append((e * m, c_factor(m, e, f, data.p)))
    groups = tuple((key, tuple(sorted(members))) for key, members in sorted(buckets.items()))
    return ClassifiedLocal(data.p, data.p, groups)


def gen_count_local(k: int, cls: ClassifiedLocal) -> int:
    """Exact number of k-tuples generating the full local quotient algebra at p.

    Product over groups of the semisimple head count times one radical factor
    q^(k n^2 r (em-2)) * (q^(k n^2 r) - c q^(n^2 r)) per member.
    """
    assert k >= 1
    q = cls.q
    total = Fraction(1)
    for (n, r), members in cls.groups:
        head = gen_count_power(k, n, q, r, len(members))
        if head == 0:
            return 0
        total *= head
        base = Fraction(q)
        for em, c in members:
            piece = base ** (k * n * n * r * (em - 2)) * (base ** (k * n * n * r) - c * base ** (n * n * r))
            if piece == 0:
                return 0
            total *= piece
    assert total.denominator == 1 and total > 0
    return int(total)


def min_k_local(cls: ClassifiedLocal) -> int:
    """Smallest k with a positive local generating count at this prime.

    The capacity search settles every k >= 2; the only extra constraint is
    that a ramified division part (index m > 1, radical factor coefficient
    c = 1) kills all single generators, since the generated subalgebra of one
    element is commutative.  Exact for capacities n <= 3; for n >= 4 the
    certified lower bound is used, which can only overestimate.
    """
    best = 1
    for (n, r), members in cls.groups:
        m_count = len(members)
        if n <= 3:
            k = min_k_for_copies(n, cls.q, r, m_count)
        else:
            k = min_k_for_copies_bound(n, cls.q, r, m_count)
        best = max(best, k)
        if any(c == 1 for _, c in members):
            best = max(best, 2)
    return best


def local_quotient_algebra(data: LocalPrimeData) -> FiniteAlgebra:
    """The finite quotient algebra at p as an explicit structure-constant product.

    Each entry (n, m, e, f) contributes the n x n matrix algebra over the
    twisted truncated local algebra with residue data (f, m, e); twist s = 1
    (generating counts do not depend on the twist).
    """
    if data.exceptional:
        raise ExceptionalPrimeNeedsOverride(data.p, "splitting not certifiable; supply override rows")
    assert data.entries
    algs = [matrix_over(truncated_local_algebra(data.p, f, m, 1, e), n) for n, m, e, f in data.entries]
    out = algs[0]
    for nxt in algs[1:]:
        out = product_algebra(out, nxt)
    return out
