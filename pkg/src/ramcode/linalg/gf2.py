"""
Linear algebra over GF(2).

Matrices keep two lossless views: a canonical scipy CSR matrix (the sparse
triplet view used for products, slicing and I/O) and, on demand, rows packed
into little-endian ``uint64`` words for Gaussian elimination. Bit ``j`` of a
packed row lives in word ``j // 64`` at position ``j % 64``.

Elimination pivots on the leftmost nonzero column and the first available
row, so echelon forms and kernel bases are reproducible run to run.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sparse

from ..core.config import settings
from ..core.exceptions import BudgetExceededError, FileFormatError, ShapeMismatchError
from ..core.logging import get_module_logger

logger = get_module_logger("linalg.gf2")

WORD = 64
_ONE = np.uint64(1)


# ---------------------------------------------------------------------------
# Packing helpers
# ---------------------------------------------------------------------------


def n_words(n_cols: int) -> int:
    """Number of 64-bit words needed for ``n_cols`` bits (at least one)."""
    return max(1, -(-n_cols // WORD))


def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into rows of little-endian uint64 words."""
    dense = np.asarray(dense, dtype=np.uint8)
    if dense.ndim != 2:
        raise ShapeMismatchError(f"expected a 2-D array, got shape {dense.shape}")
    n_rows, n_cols = dense.shape
    padded = np.zeros((n_rows, n_words(n_cols) * WORD), dtype=np.uint8)
    padded[:, :n_cols] = dense & 1
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False)


def unpack_rows(packed: np.ndarray, n_cols: int) -> np.ndarray:
    """Inverse of :func:`pack_rows`."""
    packed = np.ascontiguousarray(np.atleast_2d(packed), dtype="<u8")
    as_bytes = packed.view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, count=n_cols, bitorder="little")


def _column_bits(packed: np.ndarray, col: int) -> np.ndarray:
    word, bit = divmod(col, WORD)
    return (packed[:, word] >> np.uint64(bit)) & _ONE


def _popcount(packed: np.ndarray) -> np.ndarray:
    return np.bitwise_count(packed).sum(axis=-1, dtype=np.int64)


def _rref(packed: np.ndarray, pivot_limit: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form of packed rows.

    Pivots are searched only among columns ``< pivot_limit``; words past
    that limit (augmented columns) are carried along.

    Returns:
        (nonzero reduced rows, pivot columns)
    """
    work = np.array(packed, dtype=np.uint64, copy=True)
    n_rows = work.shape[0]
    pivots: List[int] = []
    r = 0
    for col in range(pivot_limit):
        if r == n_rows:
            break
        bits = _column_bits(work[r:], col)
        hits = np.flatnonzero(bits)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        mask = _column_bits(work, col).astype(bool)
        mask[r] = False
        if mask.any():
            work[mask] ^= work[r]
        pivots.append(col)
        r += 1
    return work[:r], pivots


# ---------------------------------------------------------------------------
# Vectors and matrices
# ---------------------------------------------------------------------------


class BitVector:
    """Immutable vector over GF(2)."""

    __slots__ = ("_bits",)

    def __init__(self, bits: Union[Sequence[int], np.ndarray]):
        arr = np.array(bits, dtype=np.uint8, copy=True).reshape(-1) & 1
        arr.setflags(write=False)
        self._bits = arr

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(np.zeros(length, dtype=np.uint8))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        bits = np.zeros(length, dtype=np.uint8)
        for i in support:
            if not 0 <= i < length:
                raise ShapeMismatchError(f"index {i} outside [0, {length})")
            bits[i] ^= 1
        return cls(bits)

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        """Parse a bit string such as ``"10100"``."""
        return cls([int(ch) for ch in text.strip()])

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def length(self) -> int:
        return int(self._bits.size)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self._bits))

    @property
    def weight(self) -> int:
        return int(self._bits.sum(dtype=np.int64))

    def is_zero(self) -> bool:
        return not self._bits.any()

    def restrict(self, indices: Sequence[int]) -> "BitVector":
        return BitVector(self._bits[np.asarray(indices, dtype=np.int64)])

    def packed(self) -> np.ndarray:
        return pack_rows(self._bits[None, :])[0]

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        return int(self._bits[i])

    def __add__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ShapeMismatchError(f"lengths differ: {self.length} vs {other.length}")
        return BitVector(self._bits ^ other._bits)

    __xor__ = __add__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash((self.length, self._bits.tobytes()))

    def __repr__(self) -> str:
        if self.length <= 64:
            return f"BitVector('{''.join(str(int(b)) for b in self._bits)}')"
        return f"BitVector(length={self.length}, weight={self.weight})"


def _canonical(matrix) -> sparse.csr_matrix:
    m = sparse.csr_matrix(matrix, dtype=np.int64, copy=True)
    m.sum_duplicates()
    m.data %= 2
    m.eliminate_zeros()
    m = m.astype(np.uint8)
    m.sort_indices()
    return m


class BinaryMatrix:
    """Immutable sparse matrix over GF(2)."""

    __slots__ = ("_csr", "_packed")

    def __init__(self, matrix):
        self._csr = _canonical(matrix)
        self._packed: Optional[np.ndarray] = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_entries(
        cls, n_rows: int, n_cols: int, entries: Iterable[Tuple[int, int]]
    ) -> "BinaryMatrix":
        """Build from (row, col) pairs; repeated pairs cancel."""
        pairs = np.array(list(entries), dtype=np.int64).reshape(-1, 2)
        if pairs.size and (
            pairs[:, 0].min() < 0
            or pairs[:, 1].min() < 0
            or pairs[:, 0].max() >= n_rows
            or pairs[:, 1].max() >= n_cols
        ):
            raise ShapeMismatchError(f"entry outside a {n_rows}x{n_cols} matrix")
        data = np.ones(len(pairs), dtype=np.int64)
        coo = sparse.coo_matrix((data, (pairs[:, 0], pairs[:, 1])), shape=(n_rows, n_cols))
        return cls(coo)

    @classmethod
    def from_dense(cls, dense) -> "BinaryMatrix":
        arr = np.asarray(dense, dtype=np.int64)
        if arr.ndim != 2:
            raise ShapeMismatchError(f"expected a 2-D array, got shape {arr.shape}")
        return cls(sparse.csr_matrix(arr % 2))

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], n_cols: Optional[int] = None) -> "BinaryMatrix":
        if not rows:
            return cls.zeros(0, n_cols or 0)
        return cls.from_dense(np.stack([r.bits for r in rows]))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BinaryMatrix":
        return cls(sparse.csr_matrix((n_rows, n_cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(sparse.identity(n, dtype=np.uint8, format="csr"))

    @classmethod
    def hstack(cls, blocks: Sequence["BinaryMatrix"]) -> "BinaryMatrix":
        return cls(sparse.hstack([b._csr for b in blocks], format="csr"))

    @classmethod
    def vstack(cls, blocks: Sequence["BinaryMatrix"]) -> "BinaryMatrix":
        return cls(sparse.vstack([b._csr for b in blocks], format="csr"))

    @classmethod
    def block(cls, grid: Sequence[Sequence["BinaryMatrix"]]) -> "BinaryMatrix":
        return cls(sparse.bmat([[b._csr for b in row] for row in grid], format="csr"))

    @classmethod
    def kron(cls, a: "BinaryMatrix", b: "BinaryMatrix") -> "BinaryMatrix":
        return cls(sparse.kron(a._csr, b._csr, format="csr"))

    # -- views ------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (int(self._csr.shape[0]), int(self._csr.shape[1]))

    @property
    def n_rows(self) -> int:
        return self.shape[0]

    @property
    def n_cols(self) -> int:
        return self.shape[1]

    @property
    def nnz(self) -> int:
        return int(self._csr.nnz)

    @property
    def csr(self) -> sparse.csr_matrix:
        return self._csr

    @property
    def entries(self) -> List[Tuple[int, int]]:
        coo = self._csr.tocoo()
        return sorted(zip(coo.row.tolist(), coo.col.tolist()))

    def to_dense(self) -> np.ndarray:
        return self._csr.toarray().astype(np.uint8)

    def packed(self) -> np.ndarray:
        if self._packed is None:
            self._packed = pack_rows(self.to_dense())
        return self._packed

    @property
    def T(self) -> "BinaryMatrix":
        return BinaryMatrix(self._csr.T)

    def transpose(self) -> "BinaryMatrix":
        return self.T

    def row(self, i: int) -> BitVector:
        return BitVector(self._csr[i].toarray()[0])

    def row_support(self, i: int) -> Tuple[int, ...]:
        start, stop = self._csr.indptr[i], self._csr.indptr[i + 1]
        return tuple(int(c) for c in self._csr.indices[start:stop])

    def rows(self) -> List[BitVector]:
        dense = self.to_dense()
        return [BitVector(r) for r in dense]

    def row_weights(self) -> np.ndarray:
        return np.diff(self._csr.indptr).astype(np.int64)

    def col_weights(self) -> np.ndarray:
        return np.bincount(self._csr.indices, minlength=self.n_cols).astype(np.int64)

    def select_rows(self, idx: Sequence[int]) -> "BinaryMatrix":
        return BinaryMatrix(self._csr[np.asarray(idx, dtype=np.int64), :])

    def select_cols(self, idx: Sequence[int]) -> "BinaryMatrix":
        return BinaryMatrix(self._csr[:, np.asarray(idx, dtype=np.int64)])

    def is_zero(self) -> bool:
        return self._csr.nnz == 0

    # -- arithmetic -------------------------------------------------------

    def dot(self, v: BitVector) -> BitVector:
        if v.length != self.n_cols:
            raise ShapeMismatchError(f"vector length {v.length} != {self.n_cols} columns")
        return BitVector((self._csr @ v.bits.astype(np.int64)) % 2)

    def matmul(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.n_cols != other.n_rows:
            raise ShapeMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        return BinaryMatrix(self._csr.astype(np.int64) @ other._csr.astype(np.int64))

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return self.dot(other)
        return self.matmul(other)

    def __add__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.shape != other.shape:
            raise ShapeMismatchError(f"shapes differ: {self.shape} vs {other.shape}")
        return BinaryMatrix(self._csr.astype(np.int64) + other._csr.astype(np.int64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and (self._csr != other._csr).nnz == 0

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self.entries)))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz})"

    # -- text format ------------------------------------------------------

    def to_text(self) -> str:
        """Header ``rows cols`` followed by sorted ``r c`` lines."""
        lines = [f"{self.n_rows} {self.n_cols}"]
        lines.extend(f"{r} {c}" for r, c in self.entries)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BinaryMatrix":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise FileFormatError("empty matrix file")
        try:
            n_rows, n_cols = (int(tok) for tok in lines[0].split())
            entries = [tuple(int(tok) for tok in ln.split()) for ln in lines[1:]]
        except ValueError as exc:
            raise FileFormatError(f"malformed matrix file: {exc}") from exc
        if any(len(e) != 2 for e in entries):
            raise FileFormatError("every entry line must hold exactly two integers")
        try:
            return cls.from_entries(n_rows, n_cols, entries)  # type: ignore[arg-type]
        except ShapeMismatchError as exc:
            raise FileFormatError(str(exc)) from exc


def vector_to_text(v: BitVector) -> str:
    """Header ``length`` then one support index per line."""
    return "\n".join([str(v.length), *(str(i) for i in v.support)]) + "\n"


def vector_from_text(text: str) -> BitVector:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise FileFormatError("empty vector file")
    try:
        length = int(lines[0])
        support = [int(ln) for ln in lines[1:]]
    except ValueError as exc:
        raise FileFormatError(f"malformed vector file: {exc}") from exc
    try:
        return BitVector.from_support(length, support)
    except ShapeMismatchError as exc:
        raise FileFormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Echelon bases
# ---------------------------------------------------------------------------


class EchelonBasis:
    """Reduced row echelon form of a row set, with optional back-tracking.

    With ``track=True`` each reduced row remembers which original rows it
    combines, so :meth:`express` can write a vector in the original rows.
    """

    def __init__(self, rows: BinaryMatrix, track: bool = False):
        self.n_cols = rows.n_cols
        self.n_source = rows.n_rows
        self.track = track
        if track:
            augmented = np.hstack(
                [rows.to_dense(), np.eye(rows.n_rows, dtype=np.uint8)]
            )
            reduced, pivots = _rref(pack_rows(augmented), rows.n_cols)
            dense = unpack_rows(reduced, rows.n_cols + rows.n_rows) if len(pivots) else np.zeros(
                (0, rows.n_cols + rows.n_rows), dtype=np.uint8
            )
            self._rows = pack_rows(dense[:, : rows.n_cols])
            self._transform = pack_rows(dense[:, rows.n_cols :])
        else:
            reduced, pivots = _rref(rows.packed(), rows.n_cols)
            self._rows = reduced
            self._transform = None
        self.pivots: List[int] = pivots

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def basis(self) -> BinaryMatrix:
        """The nonzero reduced rows."""
        if not self.rank:
            return BinaryMatrix.zeros(0, self.n_cols)
        return BinaryMatrix.from_dense(unpack_rows(self._rows, self.n_cols))

    def packed_basis(self) -> np.ndarray:
        return self._rows

    def _coefficients(self, packed_v: np.ndarray) -> np.ndarray:
        if not self.rank:
            return np.zeros(0, dtype=bool)
        pivots = np.asarray(self.pivots, dtype=np.int64)
        words, bits = np.divmod(pivots, WORD)
        return ((packed_v[words] >> bits.astype(np.uint64)) & _ONE).astype(bool)

    def reduce_packed(self, packed_v: np.ndarray) -> np.ndarray:
        coeff = self._coefficients(packed_v)
        if not coeff.any():
            return packed_v.copy()
        return packed_v ^ np.bitwise_xor.reduce(self._rows[coeff], axis=0)

    def reduce(self, v: BitVector) -> BitVector:
        """Residual of ``v`` after eliminating the pivot columns."""
        self._check(v)
        return BitVector(unpack_rows(self.reduce_packed(v.packed()), self.n_cols)[0])

    def reduce_many(self, dense: np.ndarray) -> np.ndarray:
        """Residuals of the rows of a dense 0/1 array."""
        dense = np.asarray(dense, dtype=np.uint8)
        if not self.rank or dense.shape[0] == 0:
            return dense.copy()
        coeff = dense[:, self.pivots].astype(np.int32)
        rows = unpack_rows(self._rows, self.n_cols).astype(np.int32)
        return ((dense.astype(np.int32) + coeff @ rows) % 2).astype(np.uint8)

    def contains(self, v: BitVector) -> bool:
        self._check(v)
        return not self.reduce_packed(v.packed()).any()

    def express(self, v: BitVector) -> Optional[BitVector]:
        """Coefficients over the source rows, or None when ``v`` is outside the span."""
        if not self.track:
            raise ValueError("express() needs an EchelonBasis built with track=True")
        self._check(v)
        packed_v = v.packed()
        coeff = self._coefficients(packed_v)
        residual = packed_v ^ (
            np.bitwise_xor.reduce(self._rows[coeff], axis=0) if coeff.any() else 0
        )
        if np.any(residual):
            return None
        if not coeff.any():
            return BitVector.zeros(self.n_source)
        combo = np.bitwise_xor.reduce(self._transform[coeff], axis=0)
        return BitVector(unpack_rows(combo, self.n_source)[0])

    def unit_residuals(self) -> np.ndarray:
        """Packed residual of every standard unit vector, one row per column."""
        eye = pack_rows(np.eye(self.n_cols, dtype=np.uint8))
        if not self.rank:
            return eye
        out = eye.copy()
        for i, col in enumerate(self.pivots):
            out[col] ^= self._rows[i]
        return out

    def _absorb(self, v: BitVector) -> bool:
        """Add ``v`` to the span in place. Returns False if it was already there."""
        residual = self.reduce_packed(v.packed())
        if not residual.any():
            return False
        dense = unpack_rows(residual, self.n_cols)[0]
        col = int(np.flatnonzero(dense)[0])
        if self.rank:
            mask = _column_bits(self._rows, col).astype(bool)
            self._rows[mask] ^= residual
        position = int(np.searchsorted(self.pivots, col))
        self._rows = np.insert(self._rows, position, residual, axis=0)
        self.pivots.insert(position, col)
        return True

    def _check(self, v: BitVector) -> None:
        if v.length != self.n_cols:
            raise ShapeMismatchError(f"vector length {v.length} != {self.n_cols} columns")


# ---------------------------------------------------------------------------
# Core operations
# ---------------------------------------------------------------------------


def dense_fits(n_rows: int, n_cols: int) -> bool:
    """Whether an n_rows x n_cols packed matrix stays under ``dense_limit_mb``."""
    return n_rows * n_words(n_cols) * 8 <= settings.linalg.dense_limit_mb * 2**20


def rank(m: BinaryMatrix) -> int:
    """GF(2) rank. Eliminates along the shorter side."""
    if m.n_rows == 0 or m.n_cols == 0 or m.is_zero():
        return 0
    target = m if m.n_cols <= m.n_rows else m.T
    if not dense_fits(target.n_rows, target.n_cols):
        logger.info(f"rank of {m.shape} matrix: packed form above {settings.linalg.dense_limit_mb} MB, using sparse elimination")
        return sparse_rank(m)
    _, pivots = _rref(target.packed(), target.n_cols)
    return len(pivots)


def kernel_matrix(m: BinaryMatrix) -> BinaryMatrix:
    """Kernel basis as the rows of a matrix (one free column per row)."""
    n = m.n_cols
    if m.n_rows == 0 or m.is_zero():
        return BinaryMatrix.identity(n)
    reduced, pivots = _rref(m.packed(), n)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    if not free:
        return BinaryMatrix.zeros(0, n)
    dense = unpack_rows(reduced, n)
    basis = np.zeros((len(free), n), dtype=np.uint8)
    basis[np.arange(len(free)), free] = 1
    basis[:, pivots] = dense[:, free].T
    return BinaryMatrix.from_dense(basis)


def kernel_basis(m: BinaryMatrix) -> List[BitVector]:
    """Independent vectors spanning ker(m)."""
    return kernel_matrix(m).rows()


def solve(m: BinaryMatrix, b: BitVector) -> Optional[BitVector]:
    """Some x with m @ x = b, or None for an inconsistent system."""
    if b.length != m.n_rows:
        raise ShapeMismatchError(f"right-hand side length {b.length} != {m.n_rows} rows")
    if b.is_zero():
        return BitVector.zeros(m.n_cols)
    augmented = np.hstack([m.to_dense(), b.bits[:, None]])
    reduced, pivots = _rref(pack_rows(augmented), m.n_cols + 1)
    if pivots and pivots[-1] == m.n_cols:
        return None
    dense = unpack_rows(reduced, m.n_cols + 1)
    x = np.zeros(m.n_cols, dtype=np.uint8)
    x[pivots] = dense[:, m.n_cols]
    return BitVector(x)


def in_span(rows: BinaryMatrix, v: BitVector) -> bool:
    """True iff ``v`` is a GF(2) combination of the rows."""
    if v.length != rows.n_cols:
        raise ShapeMismatchError(f"vector length {v.length} != {rows.n_cols} columns")
    if v.is_zero():
        return True
    if not dense_fits(rows.n_rows, rows.n_cols):
        extended = BinaryMatrix.vstack([rows, BinaryMatrix.from_rows([v], rows.n_cols)])
        return sparse_rank(extended) == sparse_rank(rows)
    return EchelonBasis(rows).contains(v)


def inverse(m: BinaryMatrix) -> Optional[BinaryMatrix]:
    """Inverse of a square matrix, or None when singular."""
    n = m.n_rows
    if m.n_cols != n:
        raise ShapeMismatchError(f"inverse needs a square matrix, got {m.shape}")
    augmented = np.hstack([m.to_dense(), np.eye(n, dtype=np.uint8)])
    reduced, pivots = _rref(pack_rows(augmented), n)
    if len(pivots) < n:
        return None
    dense = unpack_rows(reduced, 2 * n)
    return BinaryMatrix.from_dense(dense[:, n:])


def complement_basis(sub_rows: BinaryMatrix, full_rows: BinaryMatrix) -> BinaryMatrix:
    """Rows of ``full_rows`` extending a basis of span(sub_rows) to span(full_rows).

    Rows are taken greedily in order, so the result is deterministic.
    """
    basis = EchelonBasis(sub_rows)
    chosen: List[BitVector] = []
    for v in full_rows.rows():
        if basis._absorb(v):
            chosen.append(v)
    return BinaryMatrix.from_rows(chosen, full_rows.n_cols)


def sparse_rank(m: BinaryMatrix) -> int:
    """Rank by sparse elimination on row supports.

    Used where dense packing would not fit in memory; fill-in is not bounded.
    """
    pivots: dict = {}
    target = m if m.n_cols <= m.n_rows else m.T
    for i in range(target.n_rows):
        row = set(target.row_support(i))
        while row:
            lead = min(row)
            pivot_row = pivots.get(lead)
            if pivot_row is None:
                pivots[lead] = row
                break
            row ^= pivot_row
        if i and i % 50_000 == 0:
            logger.debug(f"sparse elimination: {i}/{target.n_rows} rows, rank {len(pivots)}")
    return len(pivots)


# ---------------------------------------------------------------------------
# Bounded-weight coset search
# ---------------------------------------------------------------------------


class SearchMode(str, Enum):
    """How a minimum weight was obtained."""

    FULL = "full"
    CAPPED = "capped"
    INFORMATION_SET = "information_set"


@dataclass(frozen=True)
class CosetSearchResult:
    """Outcome of a minimum-weight coset search.

    ``weight`` is None when the search ran out of room: in capped mode
    nothing of weight <= cap exists (``exceeds_cap``); in information-set
    mode the budget ran out first. ``lower_bound`` then bounds the true
    minimum from below.
    """

    weight: Optional[int]
    witness: Optional[BitVector]
    mode: SearchMode
    candidates: int
    exceeds_cap: bool = False
    lower_bound: Optional[int] = None


def capped_candidates(n: int, cap: int) -> int:
    """Number of vectors of length n with weight <= cap."""
    return sum(math.comb(n, w) for w in range(min(cap, n) + 1))


def iter_low_weight(n: int, max_weight: int, min_weight: int = 0) -> Iterator[Tuple[int, ...]]:
    """Supports of all length-n vectors by increasing weight, then lexicographically."""
    for w in range(min_weight, min(max_weight, n) + 1):
        yield from itertools.combinations(range(n), w)


class CosetSearcher:
    """Minimum Hamming weight over cosets ``shift + span(rows)``.

    Full mode enumerates the span with a vectorized table over the first
    ``table_bits`` basis vectors and a Gray-code walk over the rest. Capped
    mode walks low-weight words and tests coset membership through unit
    residuals.
    """

    def __init__(self, span_rows: BinaryMatrix, budget: Optional[int] = None, table_bits: Optional[int] = None):
        self.n = span_rows.n_cols
        self.budget = budget if budget is not None else settings.linalg.enumeration_budget
        self.table_bits = table_bits if table_bits is not None else settings.linalg.table_bits
        self.echelon = EchelonBasis(span_rows)
        self.dim = self.echelon.rank
        self._table: Optional[np.ndarray] = None
        self._outer: Optional[np.ndarray] = None
        self._units: Optional[np.ndarray] = None

    @property
    def full_cost(self) -> int:
        return 1 << self.dim

    def capped_cost(self, cap: int) -> int:
        return capped_candidates(self.n, cap)

    def choose_mode(self, cap: Optional[int], mode: Optional[SearchMode], multiplicity: int = 1) -> SearchMode:
        """Pick a mode within budget, or refuse with the required size."""
        full = self.full_cost * multiplicity
        if mode in (None, SearchMode.FULL) and full <= self.budget:
            return SearchMode.FULL
        if mode in (None, SearchMode.CAPPED) and cap is not None:
            capped = self.capped_cost(cap)
            if capped <= self.budget:
                return SearchMode.CAPPED
            raise BudgetExceededError(min(full, capped), self.budget, "coset enumeration")
        raise BudgetExceededError(full, self.budget, "coset enumeration")

    def _build_table(self) -> None:
        if self._table is not None:
            return
        basis = self.echelon.packed_basis()
        words = n_words(self.n)
        inner = min(self.dim, self.table_bits)
        table = np.zeros((1, words), dtype=np.uint64)
        for i in range(inner):
            table = np.concatenate([table, table ^ basis[i]], axis=0)
        self._table = table
        self._outer = basis[inner:]
        logger.debug(f"coset table: {table.shape[0]} rows, {self._outer.shape[0]} outer generators")

    def search_full(self, shift: BitVector, exclude_zero: bool = False) -> CosetSearchResult:
        """Exact minimum over the whole coset.

        With ``exclude_zero`` the span element 0 is skipped (minimum over
        nonzero codewords when ``shift`` is 0).
        """
        self._build_table()
        table, outer = self._table, self._outer
        offset = shift.packed().copy()
        best_weight: Optional[int] = None
        best_word: Optional[np.ndarray] = None
        n_outer = outer.shape[0]
        for g in range(1 << n_outer):
            if g:
                offset ^= outer[(g & -g).bit_length() - 1]
            weights = _popcount(table ^ offset)
            if exclude_zero and g == 0:
                weights = weights.copy()
                weights[0] = np.iinfo(np.int64).max
            idx = int(np.argmin(weights))
            w = int(weights[idx])
            if best_weight is None or w < best_weight:
                best_weight = w
                best_word = table[idx] ^ offset
        witness = BitVector(unpack_rows(best_word, self.n)[0]) if best_word is not None else None
        if exclude_zero and self.dim == 0:
            return CosetSearchResult(None, None, SearchMode.FULL, 1)
        return CosetSearchResult(best_weight, witness, SearchMode.FULL, self.full_cost)

    def search_capped(self, shift: BitVector, cap: int) -> CosetSearchResult:
        """Smallest weight <= cap in the coset, by enumerating low-weight words."""
        if self._units is None:
            self._units = self.echelon.unit_residuals()
        target = self.echelon.reduce_packed(shift.packed())
        words = n_words(self.n)
        zero = np.zeros(words, dtype=np.uint64)
        count = 0
        for support in iter_low_weight(self.n, cap):
            count += 1
            acc = np.bitwise_xor.reduce(self._units[list(support)], axis=0) if support else zero
            if np.array_equal(acc, target):
                return CosetSearchResult(
                    len(support), BitVector.from_support(self.n, support), SearchMode.CAPPED, count
                )
        return CosetSearchResult(None, None, SearchMode.CAPPED, count, exceeds_cap=True)

    def search(self, shift: BitVector, cap: Optional[int] = None, mode: Optional[SearchMode] = None) -> CosetSearchResult:
        if shift.length != self.n:
            raise ShapeMismatchError(f"shift length {shift.length} != {self.n}")
        chosen = self.choose_mode(cap, mode)
        if chosen is SearchMode.FULL:
            return self.search_full(shift)
        return self.search_capped(shift, cap)  # type: ignore[arg-type]


def min_weight_coset(
    span_rows: BinaryMatrix,
    shift: BitVector,
    cap: Optional[int] = None,
    budget: Optional[int] = None,
    mode: Optional[SearchMode] = None,
) -> CosetSearchResult:
    """Minimum Hamming weight over ``{shift + w : w in span(span_rows)}``.

    Full enumeration when 2^dim fits the budget; otherwise, when ``cap`` is
    given, the weight-bounded search. Raises BudgetExceededError naming the
    required enumeration size when neither fits.
    """
    return CosetSearcher(span_rows, budget=budget).search(shift, cap=cap, mode=mode)


def _systematic_forms(generators: np.ndarray) -> List[Tuple[np.ndarray, int]]:
    """Generator matrices systematic on disjoint information sets.

    ``generators`` is a full-rank dense k x n array. Columns are consumed
    left to right; each pass row-reduces with the unused columns first and
    records (packed generator, rank on those columns). Rows that could not
    pivot among the unused columns vanish there.
    """
    k, n = generators.shape
    remaining = list(range(n))
    forms: List[Tuple[np.ndarray, int]] = []
    while remaining:
        used = set(remaining)
        order = remaining + [c for c in range(n) if c not in used]
        reduced, pivots = _rref(pack_rows(generators[:, order]), n)
        r = sum(1 for p in pivots if p < len(remaining))
        if r == 0:
            break
        dense = np.empty((k, n), dtype=np.uint8)
        dense[:, order] = unpack_rows(reduced, n)
        forms.append((pack_rows(dense), r))
        info = {order[p] for p in pivots[:r]}
        remaining = [c for c in remaining if c not in info]
    return forms


class InformationSetSearcher:
    """Exact minimum weight of span(generators) outside span(excluded).

    Enumerates messages of growing weight t on generator matrices that are
    systematic on disjoint information sets. A word missed after round t
    has weight at least sum_j max(0, t + 1 - (k - r_j)), so the search stops
    once the best admissible word found reaches that bound.
    """

    chunk = 1 << 15

    def __init__(self, generators: BinaryMatrix, excluded: Optional[BinaryMatrix] = None, budget: Optional[int] = None):
        self.n = generators.n_cols
        self.budget = budget if budget is not None else settings.linalg.enumeration_budget
        basis = EchelonBasis(generators)
        self.k = basis.rank
        self.excluded = EchelonBasis(excluded) if excluded is not None and excluded.n_rows else None
        dense = unpack_rows(basis.packed_basis(), self.n) if self.k else np.zeros((0, self.n), dtype=np.uint8)
        self.forms = _systematic_forms(dense) if self.k else []

    def lower_bound(self, t: int) -> int:
        return sum(max(0, t + 1 - (self.k - r)) for _, r in self.forms)

    def _admissible(self, words: np.ndarray) -> np.ndarray:
        if self.excluded is None:
            return np.ones(words.shape[0], dtype=bool)
        dense = unpack_rows(words, self.n)
        return self.excluded.reduce_many(dense).any(axis=1)

    def search(self) -> CosetSearchResult:
        if self.k == 0:
            return CosetSearchResult(None, None, SearchMode.INFORMATION_SET, 0)
        best_weight: Optional[int] = None
        best_word: Optional[np.ndarray] = None
        candidates = 0
        bound = 0
        for t in range(1, self.k + 1):
            round_cost = math.comb(self.k, t) * len(self.forms)
            if candidates + round_cost > self.budget:
                logger.warning(
                    f"information-set search stopped at message weight {t}: "
                    f"{candidates + round_cost} candidates exceed budget {self.budget}"
                )
                if best_weight is not None and best_weight <= bound:
                    break
                return CosetSearchResult(
                    None,
                    None,
                    SearchMode.INFORMATION_SET,
                    candidates,
                    lower_bound=min(bound, best_weight) if best_weight is not None else bound,
                )
            candidates += round_cost
            for packed, _ in self.forms:
                combos = itertools.combinations(range(self.k), t)
                while True:
                    block = np.array(list(itertools.islice(combos, self.chunk)), dtype=np.int64)
                    if block.size == 0:
                        break
                    words = np.bitwise_xor.reduce(packed[block], axis=1)
                    weights = _popcount(words)
                    limit = best_weight if best_weight is not None else self.n + 1
                    keep = np.flatnonzero(weights < limit)
                    if keep.size == 0:
                        continue
                    keep = keep[np.argsort(weights[keep], kind="stable")]
                    ok = self._admissible(words[keep])
                    if ok.any():
                        first = keep[int(np.argmax(ok))]
                        best_weight = int(weights[first])
                        best_word = words[first]
            bound = self.lower_bound(t)
            logger.debug(f"information-set round t={t}: best {best_weight}, lower bound {bound}")
            if best_weight is not None and best_weight <= bound:
                break
        witness = BitVector(unpack_rows(best_word, self.n)[0]) if best_word is not None else None
        return CosetSearchResult(best_weight, witness, SearchMode.INFORMATION_SET, candidates)


def min_weight_outside(
    generators: BinaryMatrix, excluded: Optional[BinaryMatrix] = None, budget: Optional[int] = None
) -> CosetSearchResult:
    """Minimum weight of a word in span(generators) that is not in span(excluded).

    Without ``excluded`` this is the minimum distance of the code spanned by
    ``generators``.
    """
    return InformationSetSearcher(generators, excluded, budget).search()


# ---------------------------------------------------------------------------
# Local span certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpanCertificate:
    """Result of :func:`span_certificate`.

    ``coefficients`` (over the matrix rows) is set when membership was
    proved. ``exact`` is True when the searched region closed up, in which
    case a missing certificate proves non-membership.
    """

    coefficients: Optional[BitVector]
    exact: bool
    rounds: int

    @property
    def certified(self) -> bool:
        return self.coefficients is not None


def span_certificate(m: BinaryMatrix, v: BitVector, radius: Optional[int] = None) -> SpanCertificate:
    """Decide ``v in rowspace(m)`` on a growing neighbourhood of supp(v).

    Each round takes every row meeting the current columns, widens the
    columns to those rows' supports and solves the restricted system.
    """
    if v.length != m.n_cols:
        raise ShapeMismatchError(f"vector length {v.length} != {m.n_cols} columns")
    radius = radius if radius is not None else settings.linalg.certificate_radius
    if v.is_zero():
        return SpanCertificate(BitVector.zeros(m.n_rows), True, 0)
    csc = m.csr.tocsc()
    csr = m.csr
    cols = np.asarray(v.support, dtype=np.int64)
    rows = np.zeros(0, dtype=np.int64)
    for rnd in range(1, radius + 1):
        touched = np.unique(csc[:, cols].indices) if cols.size else np.zeros(0, dtype=np.int64)
        rows = touched.astype(np.int64)
        if rows.size == 0:
            return SpanCertificate(None, True, rnd)
        widened = np.union1d(cols, np.unique(csr[rows, :].indices)).astype(np.int64)
        local = BinaryMatrix(csr[rows, :][:, widened])
        u = solve(local.T, v.restrict(widened))
        if u is not None:
            coefficients = np.zeros(m.n_rows, dtype=np.uint8)
            coefficients[rows] = u.bits
            return SpanCertificate(BitVector(coefficients), True, rnd)
        if widened.size == cols.size:
            return SpanCertificate(None, True, rnd)
        cols = widened
    return SpanCertificate(None, False, radius)
