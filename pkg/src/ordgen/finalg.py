"""Finite-dimensional associative unital algebras over F_q via structure constants.

Elements are coordinate tuples over the base field (each coordinate a field
encoding).  The element with coordinates (c_0, ..., c_{dim-1}) has index
sum c_i * q^i, so enumeration order is the row-major order of the base field's
element order.  Internally all linear algebra runs over the prime field F_p on
flattened coordinate vectors: bit-packed integers when p = 2, tuples otherwise.

The enumeration oracle counts generating k-tuples by exhaustive search with
memoization on the closed subalgebra reached by each tuple prefix; the Monte
Carlo oracle draws index tuples from a counter-based splitmix64 stream so the
estimate depends only on (seed, sample index), never on worker count.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent import futures
from dataclasses import dataclass, field

from .errors import BaseMismatch, BudgetExceeded, InvalidTwist, NotGenerating
from .finfield import FiniteField, PrimePower, build_field, field_of

DEFAULT_BUDGET = 1 << 26
_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def resolve_budget(budget: int | None = None) -> int:
    """The work budget: explicit argument, else ORDGEN_BUDGET, else 2^26."""
    if budget is not None:
        return budget
    return int(os.environ.get("ORDGEN_BUDGET", DEFAULT_BUDGET))


# -- prime-field linear algebra engines -----------------------------------


def _inv_matrix_mod_p(cols: list[list[int]], p: int) -> list[list[int]]:
    """Inverse of the matrix whose columns are given, as a list of rows, mod p."""
    n = len(cols)
    aug = [[cols[j][i] % p for j in range(n)] + [1 if t == i else 0 for t in range(n)] for i in range(n)]
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if aug[r][col] % p), None)
        if piv is None:
            raise AssertionError("singular matrix")
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = pow(aug[row][col], p - 2, p)
        aug[row] = [x * inv % p for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col]:
                c = aug[r][col]
                aug[r] = [(x - c * y) % p for x, y in zip(aug[r], aug[row])]
        row += 1
    return [r[n:] for r in aug]


class _Gf2Engine:
    """Flattened F_2 engine: vectors are bit-packed ints, one bit per F_p coordinate."""

    def __init__(self, alg: FiniteAlgebra):
        F = alg.base
        e = F.e
        dim = alg.dim
        self.D = dim * e
        self.e = e
        self.p = 2
        xpow = [F.pow(F.p, s) for s in range(2 * e - 1)] if e > 1 else [1]
        def flat(coords):
            acc = 0
            for i, c in enumerate(coords):
                acc |= c << (i * e)
            return acc
        self.flatten = flat
        self.tbl = []
        for i in range(dim):
            for t in range(e):
                row = []
                for j in range(dim):
                    for u in range(e):
                        s = xpow[t + u]
                        row.append(flat(tuple(F.mul(c, s) for c in alg.table[i][j])))
                self.tbl.append(row)
        if e > 1:
            self.omega_rows = []
            for i in range(dim):
                for t in range(e):
                    coords = [0] * dim
                    coords[i] = xpow[t + 1]
                    self.omega_rows.append(flat(coords))
        self.flat_unit = flat(alg.unit)
        self.size = alg.size

    def unflatten(self, flat: int) -> tuple[int, ...]:
        e, mask = self.e, (1 << self.e) - 1
        return tuple((flat >> (i * e)) & mask for i in range(self.D // e))

    def flat_of_index(self, idx: int) -> int:
        return idx

    def mul(self, u: int, v: int):
        acc = 0
        tbl = self.tbl
        while u:
            low = u & -u
            row = tbl[low.bit_length() - 1]
            u ^= low
            w = v
            while w:
                lw = w & -w
                acc ^= row[lw.bit_length() - 1]
                w ^= lw
        return acc

    def omega(self, v: int) -> int:
        acc = 0
        rows = self.omega_rows
        while v:
            low = v & -v
            acc ^= rows[low.bit_length() - 1]
            v ^= low
        return acc

    def add(self, u: int, v: int) -> int:
        return u ^ v

    @staticmethod
    def insert(rows: list[int], v: int):
        """Insert into a fully reduced echelon basis; returns the reduced vector or None."""
        for r in rows:
            if v & (1 << (r.bit_length() - 1)):
                v ^= r
        if v == 0:
            return None
        pb = 1 << (v.bit_length() - 1)
        for i, r in enumerate(rows):
            if r & pb:
                rows[i] = r ^ v
        pos = 0
        while pos < len(rows) and rows[pos] > v:
            pos += 1
        rows.insert(pos, v)
        return v

    def span_elements(self, rows: list[int]) -> list[int]:
        out = [0]
        for r in rows:
            out += [x ^ r for x in out]
        return out


class _GfpEngine:
    """Flattened F_p engine for odd p: vectors are coordinate tuples mod p."""

    def __init__(self, alg: FiniteAlgebra):
        F = alg.base
        e = F.e
        p = F.p
        dim = alg.dim
        self.D = dim * e
        self.e = e
        self.p = p
        xpow = [F.pow(F.p, s) for s in range(2 * e - 1)] if e > 1 else [1]
        def flat(coords):
            out = []
            for c in coords:
                for _ in range(e):
                    out.append(c % p)
                    c //= p
            return tuple(out)
        self.flatten = flat
        self.tbl = []
        for i in range(dim):
            for t in range(e):
                row = []
                for j in range(dim):
                    for u in range(e):
                        s = xpow[t + u]
                        vec = flat(tuple(F.mul(c, s) for c in alg.table[i][j]))
                        row.append(tuple((idx, c) for idx, c in enumerate(vec) if c))
                self.tbl.append(row)
        if e > 1:
            self.omega_rows = []
            for i in range(dim):
                for t in range(e):
                    coords = [0] * dim
                    coords[i] = xpow[t + 1]
                    self.omega_rows.append(flat(coords))
        self.flat_unit = flat(alg.unit)
        self.size = alg.size

    def unflatten(self, flat) -> tuple[int, ...]:
        e, p = self.e, self.p
        out = []
        for i in range(0, self.D, e):
            acc = 0
            for t in reversed(range(e)):
                acc = acc * p + flat[i + t]
            out.append(acc)
        return tuple(out)

    def flat_of_index(self, idx: int):
        p = self.p
        out = []
        for _ in range(self.D):
            out.append(idx % p)
            idx //= p
        return tuple(out)

    def mul(self, u, v):
        p = self.p
        acc = [0] * self.D
        tbl = self.tbl
        for i, ui in enumerate(u):
            if ui:
                row = tbl[i]
                for j, vj in enumerate(v):
                    if vj:
                        c = ui * vj % p
                        for idx, wc in row[j]:
                            acc[idx] = (acc[idx] + c * wc) % p
        return tuple(acc)

    def omega(self, v):
        p = self.p
        acc = [0] * self.D
        for a, c in enumerate(v):
            if c:
                for idx, wc in enumerate(self.omega_rows[a]):
                    if wc:
                        acc[idx] = (acc[idx] + c * wc) % p
        return tuple(acc)

    def add(self, u, v):
        p = self.p
        return tuple((x + y) % p for x, y in zip(u, v))

    def insert(self, rows: list, v):
        p = self.p
        v = list(v)
        for r in rows:
            piv = next(i for i, x in enumerate(r) if x)
            c = v[piv]
            if c:
                v = [(x - c * y) % p for x, y in zip(v, r)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return None
        inv = pow(v[piv], p - 2, p)
        v = tuple(x * inv % p for x in v)
        for i, r in enumerate(rows):
            c = r[piv]
            if c:
                rows[i] = tuple((x - c * y) % p for x, y in zip(r, v))
        pos = 0
        while pos < len(rows) and next(i for i, x in enumerate(rows[pos]) if x) < piv:
            pos += 1
        rows.insert(pos, v)
        return v

    def span_elements(self, rows: list) -> list:
        out = [tuple([0] * self.D)]
        for r in rows:
            out = [tuple((x + c * y) % self.p for x, y in zip(v, r)) for v in out for c in range(self.p)]
        return out


def _close(eng, base_rows: list, new_flats) -> list:
    """Echelon basis of the subalgebra generated by a closed base span plus new elements."""
    rows = list(base_rows)
    reps = list(base_rows)
    work = []
    D = eng.D
    orbit = eng.e if eng.e > 1 else 1

    def add(vec):
        for _ in range(orbit):
            red = eng.insert(rows, vec)
            if red is not None:
                reps.append(red)
                work.append(red)
            if orbit == 1 or len(rows) == D:
                return
            vec = eng.omega(vec)

    for v in new_flats:
        if len(rows) == D:
            break
        add(v)
    while work and len(rows) < D:
        x = work.pop()
        for y in list(reps):
            add(eng.mul(x, y))
            if len(rows) == D:
                return rows
            add(eng.mul(y, x))
            if len(rows) == D:
                return rows
    return rows


# -- the algebra type ------------------------------------------------------


class FiniteAlgebra:
    """A finite-dimensional unital associative F_q-algebra given by structure constants.

    ``table[i][j]`` holds the coordinates of the product of the i-th and j-th
    basis vectors; ``radical_basis`` spans the Jacobson radical.  Associativity,
    the unit law, and nilpotency of the radical span are verified at
    construction.
    """

    def __init__(self, base: FiniteField, table, unit, radical_basis=(), label: str = "", meta: dict | None = None):
        self.base = base
        self.table = tuple(tuple(tuple(v) for v in row) for row in table)
        self.dim = len(self.table)
        self.unit = tuple(unit)
        self.radical_basis = tuple(tuple(v) for v in radical_basis)
        self.label = label or f"algebra(dim={self.dim}, q={base.q})"
        self.meta = meta or {}
        self.size = base.q**self.dim
        self._engine = None
        assert all(len(row) == self.dim for row in self.table)
        assert all(len(v) == self.dim for row in self.table for v in row)
        assert len(self.unit) == self.dim
        self._verify()

    def _eng(self):
        if self._engine is None:
            self._engine = _Gf2Engine(self) if self.base.p == 2 else _GfpEngine(self)
        return self._engine

    def _verify(self):
        eng = self._eng()
        D = eng.D
        unit_flats = [self._basis_flat(a) for a in range(D)]
        u = eng.flat_unit
        for a, ba in enumerate(unit_flats):
            if eng.mul(u, ba) != ba or eng.mul(ba, u) != ba:
                raise AssertionError(f"unit law fails on basis vector {a} of {self.label}")
        for a, ba in enumerate(unit_flats):
            for b, bb in enumerate(unit_flats):
                ab = eng.mul(ba, bb)
                for c, bc in enumerate(unit_flats):
                    if eng.mul(ab, bc) != eng.mul(ba, eng.mul(bb, bc)):
                        raise AssertionError(f"associativity fails on basis triple ({a},{b},{c}) of {self.label}")
        if self.radical_basis:
            self._verify_radical(unit_flats)

    def _basis_flat(self, a: int):
        eng = self._eng()
        if self.base.p == 2:
            return 1 << a
        vec = [0] * eng.D
        vec[a] = 1
        return tuple(vec)

    def _verify_radical(self, unit_flats):
        eng = self._eng()
        rows: list = []
        for v in self.radical_basis:
            f = eng.flatten(v)
            for _ in range(eng.e if eng.e > 1 else 1):
                eng.insert(rows, f)
                if eng.e == 1:
                    break
                f = eng.omega(f)
        for ba in unit_flats:
            for r in rows:
                for prod in (eng.mul(ba, r), eng.mul(r, ba)):
                    probe = list(rows)
                    if eng.insert(probe, prod) is not None:
                        raise AssertionError(f"radical span of {self.label} is not an ideal")
        current = rows
        for _ in range(eng.D + 1):
            if not current:
                return
            nxt: list = []
            for x in current:
                for y in current:
                    f = eng.mul(x, y)
                    for _ in range(eng.e if eng.e > 1 else 1):
                        eng.insert(nxt, f)
                        if eng.e == 1:
                            break
                        f = eng.omega(f)
            if len(nxt) >= len(current):
                raise AssertionError(f"radical span of {self.label} is not nilpotent")
            current = nxt
        raise AssertionError(f"radical span of {self.label} is not nilpotent")

    def validate(self):
        """Re-run the construction-time checks."""
        self._verify()

    # -- element helpers --

    def element_from_index(self, idx: int) -> tuple[int, ...]:
        q = self.base.q
        out = []
        for _ in range(self.dim):
            out.append(idx % q)
            idx //= q
        return tuple(out)

    def index_of_element(self, coords) -> int:
        q = self.base.q
        acc = 0
        for c in reversed(tuple(coords)):
            acc = acc * q + c
        return acc

    def multiply(self, x, y) -> tuple[int, ...]:
        eng = self._eng()
        return eng.unflatten(eng.mul(eng.flatten(x), eng.flatten(y)))

    def add_elements(self, x, y) -> tuple[int, ...]:
        F = self.base
        return tuple(F.add(a, b) for a, b in zip(x, y))

    def scale_element(self, s: int, x) -> tuple[int, ...]:
        F = self.base
        return tuple(F.mul(s, a) for a in x)

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_engine"] = None
        return state

    def __repr__(self):
        return f"FiniteAlgebra({self.label})"


@dataclass(frozen=True)
class SubalgebraBasis:
    """Canonical echelon basis (over F_p, orbit-closed over F_q) of a subalgebra."""

    algebra: FiniteAlgebra = field(compare=False)
    basis: tuple[tuple[int, ...], ...] = ()
    rank: int = 0  # dimension over the base field

    @property
    def is_full(self) -> bool:
        return self.rank == self.algebra.dim


def closure(alg: FiniteAlgebra, elements) -> SubalgebraBasis:
    """The unital subalgebra generated by the given elements."""
    eng = alg._eng()
    flats = [eng.flatten(tuple(v)) for v in elements]
    rows = _close(eng, [], [eng.flat_unit] + flats)
    assert len(rows) % eng.e == 0
    return SubalgebraBasis(alg, tuple(eng.unflatten(r) for r in rows), len(rows) // eng.e)


def is_generating(alg: FiniteAlgebra, elements) -> bool:
    return closure(alg, elements).is_full


# -- exhaustive oracle -----------------------------------------------------


def _count_range(alg: FiniteAlgebra, k: int, start: int, stop: int) -> int:
    eng = alg._eng()
    D = eng.D
    size = alg.size
    s0 = tuple(_close(eng, [], [eng.flat_unit]))
    memo: dict = {}

    def extend(state, flat):
        return tuple(_close(eng, list(state), [flat]))

    def rec(state, depth):
        if len(state) == D:
            return size ** (k - depth)
        if depth == k:
            return 0
        key = (state, depth)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = 0
        for idx in range(size):
            total += rec(extend(state, eng.flat_of_index(idx)), depth + 1)
        memo[key] = total
        return total

    total = 0
    for idx in range(start, stop):
        total += rec(extend(s0, eng.flat_of_index(idx)), 1)
    return total


def _count_chunk(args) -> int:
    alg, k, start, stop = args
    return _count_range(alg, k, start, stop)


def _run_parts(fn, parts, workers: int) -> list:
    if workers <= 1 or len(parts) <= 1:
        return [fn(a) for a in parts]
    try:
        with futures.ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, parts))
    except Exception:
        return [fn(a) for a in parts]


def brute_gen_count(alg: FiniteAlgebra, k: int, *, budget: int | None = None, workers: int = 1) -> int:
    """Exact number of k-tuples generating the algebra, by exhaustive enumeration.

    The tuple space is partitioned on the first coordinate, so partial counts
    recombine deterministically for any worker count.
    """
    assert k >= 1
    limit = resolve_budget(budget)
    need = alg.size**k
    if need > limit:
        raise BudgetExceeded(need, limit)
    size = alg.size
    if workers <= 1:
        return _count_range(alg, k, 0, size)
    bounds = [size * i // workers for i in range(workers + 1)]
    parts = [(alg, k, bounds[i], bounds[i + 1]) for i in range(workers) if bounds[i] < bounds[i + 1]]
    return sum(_run_parts(_count_chunk, parts, workers))


# -- Monte Carlo oracle ----------------------------------------------------


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def splitmix64_stream(seed: int, i: int) -> int:
    """The i-th raw output (i >= 1) of the splitmix64 counter stream from seed."""
    return _mix64((seed + i * _GOLDEN) & _MASK64)


@dataclass(frozen=True)
class SampleEstimate:
    """A Monte Carlo estimate of the generating fraction with a 95% Wilson interval."""

    k: int
    samples: int
    hits: int
    fraction: float
    ci_low: float
    ci_high: float
    seed: int


def _sample_range(alg: FiniteAlgebra, k: int, start: int, stop: int, seed: int) -> int:
    eng = alg._eng()
    D = eng.D
    size = alg.size
    base = list(_close(eng, [], [eng.flat_unit]))
    hits = 0
    for t in range(start, stop):
        flats = [eng.flat_of_index(splitmix64_stream(seed, t * k + j + 1) % size) for j in range(k)]
        if len(_close(eng, list(base), flats)) == D:
            hits += 1
    return hits


def _sample_chunk(args) -> int:
    alg, k, start, stop, seed = args
    return _sample_range(alg, k, start, stop, seed)


def sample_gen_fraction(
    alg: FiniteAlgebra, k: int, samples: int, *, seed: int = 0, budget: int | None = None, workers: int = 1
) -> SampleEstimate:
    """Estimate the fraction of generating k-tuples from uniform index samples.

    Sample t (0-based) uses raw stream outputs t*k+1 .. t*k+k reduced modulo
    the algebra's size, so results are identical for any worker partition.
    """
    assert k >= 1 and samples >= 1
    limit = resolve_budget(budget)
    if samples > limit:
        raise BudgetExceeded(samples, limit)
    if workers <= 1:
        hits = _sample_range(alg, k, 0, samples, seed)
    else:
        bounds = [samples * i // workers for i in range(workers + 1)]
        parts = [(alg, k, bounds[i], bounds[i + 1], seed) for i in range(workers) if bounds[i] < bounds[i + 1]]
        hits = sum(_run_parts(_sample_chunk, parts, workers))
    z = 1.96
    n = samples
    ph = hits / n
    den = 1 + z * z / n
    center = (ph + z * z / (2 * n)) / den
    half = z * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / den
    return SampleEstimate(k, samples, hits, ph, max(0.0, center - half), min(1.0, center + half), seed)


# -- radical lifting oracle -------------------------------------------------


def _ideal_rows(alg: FiniteAlgebra, ideal_basis) -> list:
    eng = alg._eng()
    rows: list = []
    orbit = eng.e if eng.e > 1 else 1
    for v in ideal_basis:
        f = eng.flatten(tuple(v))
        for _ in range(orbit):
            eng.insert(rows, f)
            if orbit == 1:
                break
            f = eng.omega(f)
    for a in range(eng.D):
        ba = alg._basis_flat(a)
        for r in rows:
            for prod in (eng.mul(ba, r), eng.mul(r, ba)):
                probe = list(rows)
                if eng.insert(probe, prod) is not None:
                    raise ValueError("the given span is not a two-sided ideal")
    current = rows
    for _ in range(eng.D + 1):
        if not current:
            return rows
        nxt: list = []
        for x in current:
            for y in current:
                f = eng.mul(x, y)
                for _ in range(orbit):
                    eng.insert(nxt, f)
                    if orbit == 1:
                        break
                    f = eng.omega(f)
        if not nxt:
            return rows
        if len(nxt) >= len(current):
            break
        current = nxt
    raise ValueError("the given ideal is not nilpotent")


def lift_count(alg: FiniteAlgebra, ideal_basis, b_tuple, *, budget: int | None = None) -> int:
    """Number of lifts of a generating tuple of A/I that generate A.

    ``ideal_basis`` spans a nilpotent two-sided ideal I and ``b_tuple`` is a
    tuple of coset representatives whose images generate A/I; the count runs
    over all |I|^k translation tuples.
    """
    eng = alg._eng()
    D = eng.D
    rows = _ideal_rows(alg, ideal_basis)
    b_flats = [eng.flatten(tuple(v)) for v in b_tuple]
    k = len(b_flats)
    assert k >= 1
    if len(_close(eng, [], [eng.flat_unit] + b_flats + list(rows))) != D:
        raise NotGenerating("the given tuple does not generate the quotient algebra")
    ideal_elements = eng.span_elements(rows)
    limit = resolve_budget(budget)
    need = len(ideal_elements) ** k
    if need > limit:
        raise BudgetExceeded(need, limit)
    count = 0
    for xs in itertools.product(ideal_elements, repeat=k):
        lifted = [eng.add(b, x) for b, x in zip(b_flats, xs)]
        if len(_close(eng, [], [eng.flat_unit] + lifted)) == D:
            count += 1
    return count


def coset_representatives(alg: FiniteAlgebra, ideal_basis) -> list[tuple[int, ...]]:
    """Canonical representatives of A modulo the span of an ideal basis."""
    eng = alg._eng()
    rows = _ideal_rows(alg, ideal_basis)
    pivots = set()
    for r in rows:
        if alg.base.p == 2:
            pivots.add(r.bit_length() - 1)
        else:
            pivots.add(next(i for i, x in enumerate(r) if x))
    free = [i for i in range(eng.D) if i not in pivots]
    reps = []
    for combo in itertools.product(range(alg.base.p), repeat=len(free)):
        if alg.base.p == 2:
            flat = 0
            for pos, c in zip(free, combo):
                flat |= c << pos
        else:
            vec = [0] * eng.D
            for pos, c in zip(free, combo):
                vec[pos] = c
            flat = tuple(vec)
        reps.append(eng.unflatten(flat))
    return reps


# -- constructors -----------------------------------------------------------


def _subfield_embedding(F: FiniteField, E: FiniteField) -> list[int]:
    """Encoding table of the field embedding F -> E sending the modulus root of F
    to its least root in E."""
    if F.e == 1:
        table = list(range(F.q))
    else:
        roots = []
        for a in range(E.q):
            acc = 0
            for c in reversed(F.modulus):
                acc = E.add(E.mul(acc, a), c)
            if acc == 0:
                roots.append(a)
        assert roots, "modulus has no root in the extension"
        rho = min(roots)
        table = []
        for a in range(F.q):
            acc = 0
            for c in reversed(F.coords(a)):
                acc = E.add(E.mul(acc, rho), c)
            table.append(acc)
    if F.q <= 64:
        for a in range(F.q):
            for b in range(F.q):
                assert table[F.mul(a, b)] == E.mul(table[a], table[b])
                assert table[F.add(a, b)] == E.add(table[a], table[b])
    return table


def _power_basis_coords(F: FiniteField, E: FiniteField, emb: list[int], width: int):
    """Coordinate function for E over F in the basis 1, w, ..., w^(width-1),
    where w is the multiplicative generator of E."""
    p = F.p
    w = E.generator
    cols = []
    for t in range(width):
        wt = E.pow(w, t)
        for u in range(F.e):
            cols.append(list(E.coords(E.mul(emb[p**u], wt))))
    inv_rows = _inv_matrix_mod_p(cols, p)
    cache: dict[int, tuple[int, ...]] = {}

    def coords_of(x: int) -> tuple[int, ...]:
        got = cache.get(x)
        if got is not None:
            return got
        flat = E.coords(x)
        digits = [sum(row[i] * flat[i] for i in range(len(flat))) % p for row in inv_rows]
        out = tuple(F.from_coords(digits[t * F.e : (t + 1) * F.e]) for t in range(width))
        cache[x] = out
        return out

    return coords_of


def matrix_algebra(n: int, base_q: int | PrimePower, r: int = 1) -> FiniteAlgebra:
    """M_n(F_{q^r}) viewed as an algebra over F_q, of dimension n^2 r.

    Basis: matrix units tensored with the power basis 1, w, ..., w^(r-1) of
    the coefficient field over F_q, w its multiplicative generator; index
    (u, v, t) -> (u*n + v)*r + t.
    """
    assert n >= 1 and r >= 1
    F = field_of(base_q)
    dim = n * n * r
    zero = tuple([0] * dim)
    if r == 1:
        def idx(u, v, t=0):
            return u * n + v
        co_mul = None
    else:
        E = build_field(F.p, F.e * r)
        emb = _subfield_embedding(F, E)
        beta = _power_basis_coords(F, E, emb, r)
        w = E.generator
        wpows = [E.pow(w, t) for t in range(2 * r - 1)]

        def idx(u, v, t=0):
            return (u * n + v) * r + t

        def co_mul(s, t):
            return beta(wpows[s + t])

    table = []
    for a in range(dim):
        if r == 1:
            u, v, s = a // n, a % n, 0
        else:
            u, v, s = a // (n * r), (a // r) % n, a % r
        row = []
        for b in range(dim):
            if r == 1:
                u2, v2, t = b // n, b % n, 0
            else:
                u2, v2, t = b // (n * r), (b // r) % n, b % r
            if v != u2:
                row.append(zero)
            else:
                vec = [0] * dim
                if r == 1:
                    vec[idx(u, v2)] = 1
                else:
                    for wi, c in enumerate(co_mul(s, t)):
                        vec[idx(u, v2, wi)] = c
                row.append(tuple(vec))
        table.append(row)
    unit = [0] * dim
    for u in range(n):
        unit[idx(u, u, 0)] = 1
    meta = {"kind": "matrix", "n": n, "r": r}
    if r > 1:
        meta["coeff_field"] = E
        meta["coeff_coords"] = tuple(beta(x) for x in range(E.q)) if E.q <= 4096 else None
    label = f"M_{n}(F_{F.q**r}) over F_{F.q}"
    return FiniteAlgebra(F, table, unit, (), label, meta)


def product_algebra(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """Direct product with componentwise operations."""
    if a.base != b.base:
        raise BaseMismatch(f"base fields differ: {a.base} vs {b.base}")
    da, db = a.dim, b.dim
    dim = da + db
    zero = tuple([0] * dim)
    table = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if i < da and j < da:
                row.append(tuple(a.table[i][j]) + (0,) * db)
            elif i >= da and j >= da:
                row.append((0,) * da + tuple(b.table[i - da][j - da]))
            else:
                row.append(zero)
        table.append(row)
    unit = tuple(a.unit) + tuple(b.unit)
    radical = [tuple(v) + (0,) * db for v in a.radical_basis] + [(0,) * da + tuple(v) for v in b.radical_basis]
    label = f"({a.label}) x ({b.label})"
    return FiniteAlgebra(a.base, table, unit, radical, label, {"kind": "product"})


def truncated_local_algebra(q: int | PrimePower, f: int, m: int, s: int, e: int) -> FiniteAlgebra:
    """The twisted truncated algebra with residue data (f, m, s, e) over F_q.

    Basis w^i pi^j with 0 <= i < f*m, 0 <= j < e*m, where w generates the
    coefficient field F_{q^(f*m)} and pi * a = a^((q^f)^s) * pi; pi^(e*m) = 0.
    The radical is spanned by the basis vectors with j >= 1.  Dimension over
    F_q is f * m^2 * e.  For m = 1 this degenerates to F_{q^f}[u]/(u^e).
    """
    assert f >= 1 and m >= 1 and e >= 1
    if not (1 <= s <= m) or math.gcd(s, m) != 1:
        raise InvalidTwist(f"twist s={s} must satisfy 1 <= s <= m and gcd(s, m) = 1")
    F = field_of(q)
    fm = f * m
    em = e * m
    dim = fm * em
    E = build_field(F.p, F.e * fm)
    emb = _subfield_embedding(F, E)
    beta = _power_basis_coords(F, E, emb, fm)
    w = E.generator
    frob_steps = F.e * f * s  # pi a pi^{-1} = a^(p^(e0*f*s))

    def idx(i, j):
        return j * fm + i

    zero = tuple([0] * dim)
    table = []
    for a in range(dim):
        i1, j1 = a % fm, a // fm
        row = []
        for b in range(dim):
            i2, j2 = b % fm, b // fm
            if j1 + j2 >= em:
                row.append(zero)
                continue
            coeff = E.mul(E.pow(w, i1), E.frobenius(E.pow(w, i2), frob_steps * j1))
            vec = [0] * dim
            for wi, c in enumerate(beta(coeff)):
                vec[idx(wi, j1 + j2)] = c
            row.append(tuple(vec))
        table.append(row)
    unit = [0] * dim
    unit[0] = 1
    radical = []
    for j in range(1, em):
        for i in range(fm):
            vec = [0] * dim
            vec[idx(i, j)] = 1
            radical.append(tuple(vec))
    label = f"TW(q={F.q},f={f},m={m},s={s},e={e})"
    meta = {
        "kind": "twisted",
        "f": f,
        "m": m,
        "s": s,
        "e": e,
        "coeff_field": E,
        "coeff_coords": tuple(beta(x) for x in range(E.q)) if E.q <= 4096 else None,
    }
    return FiniteAlgebra(F, table, unit, radical, label, meta)


def matrix_over(alg: FiniteAlgebra, n: int) -> FiniteAlgebra:
    """M_n(A) for a structure-constant algebra A; radical is M_n(J(A))."""
    assert n >= 1
    if n == 1:
        return alg
    da = alg.dim
    dim = n * n * da
    zero = tuple([0] * dim)

    def idx(u, v, w):
        return (u * n + v) * da + w

    table = []
    for a in range(dim):
        u, v, w = a // (n * da), (a // da) % n, a % da
        row = []
        for b in range(dim):
            u2, v2, w2 = b // (n * da), (b // da) % n, b % da
            if v != u2:
                row.append(zero)
                continue
            vec = [0] * dim
            for x, c in enumerate(alg.table[w][w2]):
                vec[idx(u, v2, x)] = c
            row.append(tuple(vec))
        table.append(row)
    unit = [0] * dim
    for u in range(n):
        for w, c in enumerate(alg.unit):
            unit[idx(u, u, w)] = c
    radical = []
    for u in range(n):
        for v in range(n):
            for rv in alg.radical_basis:
                vec = [0] * dim
                for w, c in enumerate(rv):
                    vec[idx(u, v, w)] = c
                radical.append(tuple(vec))
    label = f"M_{n}({alg.label})"
    return FiniteAlgebra(alg.base, table, unit, radical, label, {"kind": "matrix_over", "n": n})


def twisted_element(alg: FiniteAlgebra, coeffs) -> tuple[int, ...]:
    """Element of a truncated local algebra from coefficient-field encodings per pi-power."""
    assert alg.meta.get("kind") == "twisted"
    E: FiniteField = alg.meta["coeff_field"]
    fm = alg.meta["f"] * alg.meta["m"]
    em = alg.meta["e"] * alg.meta["m"]
    coeffs = list(coeffs)
    assert len(coeffs) <= em
    coords = [0] * alg.dim
    table = alg.meta["coeff_coords"]
    for j, x in enumerate(coeffs):
        assert 0 <= x < E.q
        for i, c in enumerate(table[x]):
            coords[j * fm + i] = c
    return tuple(coords)


def matrix_element(alg: FiniteAlgebra, entries) -> tuple[int, ...]:
    """Element of matrix_algebra(n, q, r) from an n x n array of coefficient-field encodings."""
    assert alg.meta.get("kind") == "matrix"
    n, r = alg.meta["n"], alg.meta["r"]
    coords = [0] * alg.dim
    for u in range(n):
        for v in range(n):
            x = entries[u][v]
            if r == 1:
                coords[u * n + v] = x
            else:
                for t, c in enumerate(alg.meta["coeff_coords"][x]):
                    coords[(u * n + v) * r + t] = c
    return tuple(coords)
