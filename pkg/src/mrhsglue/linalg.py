"""Dense linear algebra over GF(q).

Rows over GF(2) are packed into Python ints (bit ``j`` holds column ``j``);
rows over other prime fields are tuples of ints.  All elimination uses the
same pivot rule: the pivot of a row is its first nonzero column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, Inconsistent, RankDeficient
from .gf import FieldSpec

Vector = tuple  # tuple[int, ...]


def pack(vec: Sequence[int]) -> int:
    """Pack a 0/1 sequence into an int, entry ``j`` -> bit ``j``."""
    out = 0
    for j, x in enumerate(vec):
        if x & 1:
            out |= 1 << j
    return out


def unpack(bits: int, n: int) -> Vector:
    return tuple((bits >> j) & 1 for j in range(n))


class Mat:
    """Immutable dense matrix over a prime field.

    Over GF(2) the rows are held bit-packed; :attr:`rows` unpacks on demand.
    """

    __slots__ = ("field", "ncols", "_packed", "_rows")

    def __init__(self, rows: Iterable[Sequence[int]], field: FieldSpec, ncols: int | None = None):
        rows = [tuple(int(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise DimensionMismatch("ncols is required for an empty matrix")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch(f"row of length {len(r)} in a matrix with {ncols} columns")
        self.field = field
        self.ncols = ncols
        if field.binary:
            self._packed = tuple(pack(r) for r in rows)
            self._rows = None
        else:
            q = field.q
            self._packed = None
            self._rows = tuple(tuple(x % q for x in r) for r in rows)

    @classmethod
    def from_packed(cls, packed: Iterable[int], ncols: int) -> "Mat":
        from .gf import GF2

        m = cls.__new__(cls)
        m.field = GF2
        m.ncols = ncols
        mask = (1 << ncols) - 1
        m._packed = tuple(int(p) & mask for p in packed)
        m._rows = None
        return m

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "Mat":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], field, n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: FieldSpec) -> "Mat":
        return cls([[0] * ncols for _ in range(nrows)], field, ncols)

    @property
    def nrows(self) -> int:
        return len(self._packed) if self._packed is not None else len(self._rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[Vector, ...]:
        if self._rows is None:
            self._rows = tuple(unpack(p, self.ncols) for p in self._packed)
        return self._rows

    @property
    def packed(self) -> tuple[int, ...]:
        if self._packed is None:
            raise TypeError("bit-packed rows exist only over GF(2)")
        return self._packed

    def internal_rows(self) -> list:
        """Rows in elimination form: ints over GF(2), lists otherwise."""
        if self._packed is not None:
            return list(self._packed)
        return [list(r) for r in self._rows]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.nrows, self.ncols)

    def apply(self, x: Sequence[int]) -> Vector:
        """Matrix-vector product ``self @ x``."""
        if len(x) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(x)} for {self.ncols} columns")
        if self._packed is not None:
            xb = pack(x)
            return tuple((p & xb).bit_count() & 1 for p in self._packed)
        q = self.field.q
        return tuple(sum(a * b for a, b in zip(r, x)) % q for r in self._rows)

    def vstack(self, other: "Mat") -> "Mat":
        _check_compatible(self, other)
        if self._packed is not None:
            return Mat.from_packed(self._packed + other._packed, self.ncols)
        return Mat(self._rows + other._rows, self.field, self.ncols)

    def take_rows(self, idx: Iterable[int]) -> "Mat":
        if self._packed is not None:
            return Mat.from_packed([self._packed[i] for i in idx], self.ncols)
        return Mat([self._rows[i] for i in idx], self.field, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self):
        return f"Mat({[list(r) for r in self.rows]}, {self.field}, ncols={self.ncols})"


def _check_compatible(a: Mat, b: Mat):
    if a.field != b.field:
        raise DimensionMismatch(f"field mismatch: {a.field} vs {b.field}")
    if a.ncols != b.ncols:
        raise DimensionMismatch(f"column mismatch: {a.ncols} vs {b.ncols}")


# ---------------------------------------------------------------------------
# incremental bases


class BinaryBasis:
    """Echelon basis of packed GF(2) rows, keyed by pivot column.

    With ``track=True`` every stored row carries a bitmask recording which
    inserted rows it is the sum of.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.piv: dict[int, int] = {}
        self.combo: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.piv)

    def copy(self) -> "BinaryBasis":
        b = BinaryBasis(self.track)
        b.piv = dict(self.piv)
        b.combo = dict(self.combo)
        return b

    def reduce(self, v: int) -> tuple[int, int]:
        """Return ``(residual, combo)`` with ``v = residual + sum(combo rows)``."""
        piv = self.piv
        c = 0
        res = 0
        r = v
        while r:
            low = r & -r
            col = low.bit_length() - 1
            p = piv.get(col)
            if p is None:
                res |= low
                r ^= low
            else:
                r ^= p
                if self.track:
                    c ^= self.combo[col]
        return res, c

    def contains(self, v: int) -> bool:
        piv = self.piv
        while v:
            p = piv.get((v & -v).bit_length() - 1)
            if p is None:
                return False
            v ^= p
        return True

    def insert(self, v: int, combo: int = 0) -> bool:
        piv = self.piv
        track = self.track
        while v:
            col = (v & -v).bit_length() - 1
            p = piv.get(col)
            if p is None:
                piv[col] = v
                if track:
                    self.combo[col] = combo
                return True
            v ^= p
            if track:
                combo ^= self.combo[col]
        return False


class PrimeBasis:
    """Echelon basis over GF(p), rows stored as lists normalised to pivot 1.

    Combos (when tracked) are dicts ``{inserted_index: coefficient}``.
    """

    def __init__(self, field: FieldSpec, track: bool = False):
        self.q = field.q
        self.track = track
        self.piv: dict[int, list] = {}
        self.combo: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.piv)

    def copy(self) -> "PrimeBasis":
        b = PrimeBasis.__new__(PrimeBasis)
        b.q = self.q
        b.track = self.track
        b.piv = dict(self.piv)
        b.combo = dict(self.combo)
        return b

    def _eliminate(self, r: list, c: dict | None, full: bool) -> int | None:
        """Reduce ``r`` in place; return first free nonzero column or None."""
        q = self.q
        piv = self.piv
        first_free = None
        n = len(r)
        col = 0
        while col < n:
            x = r[col]
            if x:
                p = piv.get(col)
                if p is not None:
                    for j in range(col, n):
                        if p[j]:
                            r[j] = (r[j] - x * p[j]) % q
                    if c is not None:
                        for i, y in self.combo[col].items():
                            c[i] = (c.get(i, 0) + x * y) % q
                elif first_free is None:
                    first_free = col
                    if not full:
                        return first_free
            col += 1
        return first_free

    def reduce(self, v: Sequence[int]) -> tuple[list, dict]:
        r = list(v)
        c: dict = {}
        self._eliminate(r, c if self.track else None, full=True)
        return r, {i: y for i, y in c.items() if y}

    def contains(self, v: Sequence[int]) -> bool:
        r = list(v)
        return self._eliminate(r, None, full=False) is None

    def insert(self, v: Sequence[int], combo: dict | None = None) -> bool:
        q = self.q
        r = list(v)
        if self.track:
            # r = v - sum(x * stored); combo of r = combo(v) - sum(x * combo(stored))
            red: dict = {}
            col = self._eliminate(r, red, full=True)
            c = dict(combo or {})
            for i, y in red.items():
                c[i] = (c.get(i, 0) - y) % q
        else:
            col = self._eliminate(r, None, full=True)
            c = None
        if col is None:
            return False
        s = pow(r[col], -1, q)
        self.piv[col] = [x * s % q for x in r]
        if self.track:
            self.combo[col] = {i: y * s % q for i, y in c.items() if y * s % q}
        return True


def new_basis(field: FieldSpec, track: bool = False):
    if field.binary:
        return BinaryBasis(track)
    return PrimeBasis(field, track)


def to_internal(vec: Sequence[int], field: FieldSpec):
    if field.binary:
        return pack(vec)
    q = field.q
    return [int(x) % q for x in vec]


# ---------------------------------------------------------------------------
# rank / echelon


def _check_lengths(vectors: Sequence[Sequence[int]]) -> int | None:
    n = None
    for v in vectors:
        if n is None:
            n = len(v)
        elif len(v) != n:
            raise DimensionMismatch(f"vectors of lengths {n} and {len(v)}")
    return n


def rank(vectors: Sequence[Sequence[int]], f: FieldSpec) -> int:
    """Dimension of the span of ``vectors`` over ``f``."""
    if isinstance(vectors, Mat):
        vectors = vectors.rows
    _check_lengths(vectors)
    b = new_basis(f)
    for v in vectors:
        b.insert(to_internal(v, f))
    return b.rank


def mat_rank(m: Mat) -> int:
    b = new_basis(m.field)
    for v in m.internal_rows():
        b.insert(v)
    return b.rank


@dataclass(frozen=True)
class Echelon:
    """Reduced row-echelon form of a matrix.

    ``transform[i]`` holds the coefficients expressing input row ``i`` over
    the rows of ``basis``.
    """

    basis: Mat
    pivots: tuple[int, ...]
    transform: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reconstruct(self) -> Mat:
        q = self.basis.field.q
        brows = self.basis.rows
        n = self.basis.ncols
        out = []
        for coeffs in self.transform:
            row = [0] * n
            for c, b in zip(coeffs, brows):
                if c:
                    for j in range(n):
                        row[j] = (row[j] + c * b[j]) % q
            out.append(row)
        return Mat(out, self.basis.field, n)


def _rref_rows(basis, field: FieldSpec) -> tuple[list[int], list]:
    """Back-substitute an echelon basis into reduced form, sorted by pivot."""
    pivots = sorted(basis.piv)
    rows = {c: basis.piv[c] for c in pivots}
    if field.binary:
        for c in reversed(pivots):
            bit = 1 << c
            for c2 in pivots:
                if c2 != c and rows[c2] & bit:
                    rows[c2] ^= rows[c]
    else:
        q = field.q
        for c in reversed(pivots):
            pr = rows[c]
            for c2 in pivots:
                if c2 == c:
                    continue
                r = rows[c2]
                x = r[c]
                if x:
                    rows[c2] = [(a - x * b) % q for a, b in zip(r, pr)]
    return pivots, [rows[c] for c in pivots]


def echelonize(m: Mat) -> Echelon:
    """Reduced row-echelon form of ``m`` plus the row-reconstruction record."""
    f = m.field
    b = new_basis(f)
    for v in m.internal_rows():
        b.insert(v)
    pivots, rrows = _rref_rows(b, f)
    if f.binary:
        basis = Mat.from_packed(rrows, m.ncols)
    else:
        basis = Mat(rrows, f, m.ncols)
    # in RREF, a row of the row space equals sum(row[p_j] * basis_j)
    transform = tuple(tuple(r[p] for p in pivots) for r in m.rows)
    return Echelon(basis, tuple(pivots), transform)


# ---------------------------------------------------------------------------
# stacking


@dataclass(frozen=True)
class StackResult:
    """Outcome of writing ``a2`` under ``a1`` and dropping dependent rows.

    ``a`` keeps the rows of ``a1`` first, then the independent rows of
    ``a2`` in their original order.  ``dependency[j]`` is ``None`` when row
    ``j`` of ``a2`` was kept, otherwise its coefficients over the rows of
    ``a``.
    """

    a: Mat
    n_left: int
    kept: tuple[int, ...]
    dependency: tuple[tuple[int, ...] | None, ...]

    @property
    def rank(self) -> int:
        return self.a.nrows


def stack_reduce(a1: Mat, a2: Mat) -> StackResult:
    _check_compatible(a1, a2)
    f = a1.field
    b = new_basis(f, track=True)
    binary = f.binary
    retained = []
    for i, v in enumerate(a1.internal_rows()):
        if not b.insert(v, (1 << i) if binary else {i: 1}):
            raise RankDeficient("left matrix does not have full row rank")
        retained.append(v)
    n_left = len(retained)
    kept = []
    raw_deps: list = []
    for j, v in enumerate(a2.internal_rows()):
        residual, combo = b.reduce(v)
        if (residual == 0) if binary else not any(residual):
            raw_deps.append(combo)
            continue
        idx = len(retained)
        if binary:
            b.insert(v, 1 << idx)
        else:
            b.insert(v, {idx: 1})
        retained.append(v)
        kept.append(j)
        raw_deps.append(None)
    total = len(retained)
    deps = []
    for c in raw_deps:
        if c is None:
            deps.append(None)
        elif binary:
            deps.append(tuple((c >> i) & 1 for i in range(total)))
        else:
            deps.append(tuple(c.get(i, 0) for i in range(total)))
    if binary:
        a = Mat.from_packed(retained, a1.ncols)
    else:
        a = Mat(retained, f, a1.ncols)
    return StackResult(a, n_left, tuple(kept), tuple(deps))


# ---------------------------------------------------------------------------
# point solving


def solve_point(a: Mat, b: Sequence[int]) -> tuple[Vector, tuple[Vector, ...]]:
    """One solution of ``a x = b`` and a basis of the kernel of ``a``.

    Free variables are set to zero in the particular solution.  Raises
    :class:`Inconsistent` if no solution exists (impossible when ``a`` has
    full row rank).
    """
    if len(b) != a.nrows:
        raise DimensionMismatch(f"rhs of length {len(b)} for {a.nrows} rows")
    f = a.field
    n = a.ncols
    q = f.q
    basis = new_basis(f)
    for row, y in zip(a.rows, b):
        aug = list(row) + [y % q]
        v = to_internal(aug, f)
        if not basis.insert(v):
            continue
    if n in basis.piv:
        raise Inconsistent("system has no solution")
    pivots, rrows = _rref_rows(basis, f)
    if f.binary:
        rrows = [unpack(r, n + 1) for r in rrows]
    x0 = [0] * n
    for p, r in zip(pivots, rrows):
        x0[p] = r[n]
    free = [j for j in range(n) if j not in basis.piv]
    kernel = []
    for fc in free:
        k = [0] * n
        k[fc] = 1
        for p, r in zip(pivots, rrows):
            k[p] = -r[fc] % q
        kernel.append(tuple(k))
    return tuple(x0), tuple(kernel)


# ---------------------------------------------------------------------------
# batched subset ranks


def _pack_words(vectors: Sequence[Sequence[int]], n: int) -> np.ndarray:
    words = max(1, (n + 63) // 64)
    out = np.zeros((len(vectors), words), dtype=np.uint64)
    for r, v in enumerate(vectors):
        bits = pack(v)
        for w in range(words):
            out[r, w] = (bits >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def subset_ranks(sets: Sequence[Sequence[Sequence[int]]], field: FieldSpec, n: int,
                 chunk: int = 1 << 14) -> np.ndarray:
    """Rank of the union of every subfamily, indexed by subset bitmask.

    Each subset is eliminated from scratch, vectorised over a chunk of
    subsets at a time; nothing is cached between subsets.
    """
    m = len(sets)
    owner = np.array([i for i, s in enumerate(sets) for _ in s], dtype=np.int64)
    flat = [v for s in sets for v in s]
    total = 1 << m
    out = np.zeros(total, dtype=np.int16)
    if not flat or n == 0:
        return out
    if field.binary:
        vecs = _pack_words(flat, n)
    else:
        vecs = np.array(flat, dtype=np.int64) % field.q
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        include = ((masks[:, None] >> owner[None, :]) & 1).astype(bool)
        if field.binary:
            out[start:start + len(masks)] = _batch_rank_gf2(vecs, include, n)
        else:
            out[start:start + len(masks)] = _batch_rank_gfp(vecs, include, n, field.q)
    return out


def _batch_rank_gf2(vecs: np.ndarray, include: np.ndarray, n: int) -> np.ndarray:
    nb, nr = include.shape
    a = np.where(include[:, :, None], vecs[None, :, :], np.uint64(0))
    used = np.zeros((nb, nr), dtype=bool)
    rk = np.zeros(nb, dtype=np.int16)
    ar = np.arange(nb)
    for col in range(n):
        w, bit = divmod(col, 64)
        bitv = np.uint64(1 << bit)
        hit = (a[:, :, w] & bitv) != 0
        cand = hit & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        prow = a[ar, piv]  # (nb, words)
        elim = hit & has[:, None]
        elim[ar, piv] = False
        a ^= np.where(elim[:, :, None], prow[:, None, :], np.uint64(0))
        used[ar, piv] |= has
        rk += has
    return rk


def _batch_rank_gfp(vecs: np.ndarray, include: np.ndarray, n: int, q: int) -> np.ndarray:
    nb, nr = include.shape
    a = np.where(include[:, :, None], vecs[None, :, :], 0)
    used = np.zeros((nb, nr), dtype=bool)
    rk = np.zeros(nb, dtype=np.int16)
    ar = np.arange(nb)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = [pow(x, -1, q) for x in range(1, q)]
    for col in range(n):
        colv = a[:, :, col]
        cand = (colv != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        prow = a[ar, piv] * inv[colv[ar, piv]][:, None] % q  # normalised pivot rows
        factor = np.where(has[:, None], colv, 0)
        factor[ar, piv] = 0
        a = (a - factor[:, :, None] * prow[:, None, :]) % q
        used[ar, piv] |= has
        rk += has
    return rk
