"""
Classical component codes Y = (A, B) with full-row-rank check matrices.

H is |B| x |A|: rows are checks, columns are bits. Path codes are the
repetition codes of the path graph and decode by exact majority; every
other code decodes by greedy bit-flip.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from ..core.config import settings
from ..core.exceptions import (
    DecoderRadiusError,
    InfeasibleDegreesError,
    RankDeficiencyError,
    ShapeMismatchError,
)
from ..core.logging import get_module_logger
from ..linalg.gf2 import (
    BinaryMatrix,
    BitVector,
    CosetSearcher,
    EchelonBasis,
    SearchMode,
    complement_basis,
    kernel_matrix,
    min_weight_outside,
    rank,
)
from ..models.files import CodeFile
from ..models.reports import DistanceReport, Provenance

logger = get_module_logger("codes.classical")


class CodeKind(str, Enum):
    """Family a classical code was built from."""

    PATH = "path"
    LDPC = "ldpc"
    CUSTOM = "custom"


@dataclass(frozen=True)
class BipartiteCode:
    """Check matrix H (|B| x |A|) plus the claimed decoder radius."""

    h: BinaryMatrix
    decoder_radius: int = 0
    kind: CodeKind = CodeKind.CUSTOM

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", CodeKind(self.kind))
        if self.decoder_radius < 0:
            raise DecoderRadiusError(f"decoder radius must be non-negative, got {self.decoder_radius}")
        r = rank(self.h)
        if r != self.h.n_rows:
            raise RankDeficiencyError(
                f"check matrix has rank {r} but {self.h.n_rows} rows", rank=r, rows=self.h.n_rows
            )

    @property
    def n_bits(self) -> int:
        return self.h.n_cols

    @property
    def n_checks(self) -> int:
        return self.h.n_rows

    @property
    def k(self) -> int:
        return self.n_bits - self.n_checks

    def syndrome(self, error: BitVector) -> BitVector:
        return self.h @ error

    def decode(self, syndrome: BitVector, max_rounds: Optional[int] = None) -> Optional[BitVector]:
        """Error with the given syndrome, or None when the decoder stalls."""
        if self.kind == CodeKind.PATH:
            return majority_decode(self, syndrome)
        return bitflip_decode(self, syndrome, max_rounds)

    def decode_word(self, word: BitVector) -> Optional[BitVector]:
        """Sparse e with word + e a codeword, or None on a stall."""
        return decode_word(self, word)

    def with_radius(self, radius: int, distance: Optional[DistanceReport] = None) -> "BipartiteCode":
        """Copy with a new claimed radius, checked against the distance.

        ``distance`` is measured here when not given.
        """
        code = replace(self, decoder_radius=radius)
        if radius:
            check_radius(code, distance if distance is not None else code_distance(code))
        return code

    def to_file_model(self) -> CodeFile:
        return CodeFile(
            n_checks=self.n_checks,
            n_bits=self.n_bits,
            entries=[[r, c] for r, c in self.h.entries],
            kind=self.kind.value,
            decoder_radius=self.decoder_radius,
        )

    @classmethod
    def from_file_model(cls, model: CodeFile) -> "BipartiteCode":
        h = BinaryMatrix.from_entries(model.n_checks, model.n_bits, [(e[0], e[1]) for e in model.entries])
        code = cls(h, kind=CodeKind(model.kind))
        if model.decoder_radius == code.decoder_radius:
            return code
        return code.with_radius(model.decoder_radius)


def path_code(m: int) -> BipartiteCode:
    """Repetition code on the path a_0 - a_1 - ... - a_{m-1}; check i joins a_i and a_{i+1}."""
    if m < 2:
        raise ShapeMismatchError(f"path code needs m >= 2, got {m}")
    entries = [(i, i) for i in range(m - 1)] + [(i, i + 1) for i in range(m - 1)]
    h = BinaryMatrix.from_entries(m - 1, m, entries)
    return BipartiteCode(h, decoder_radius=(m - 1) // 2, kind=CodeKind.PATH)


def random_regular_ldpc(n: int, dv: int, dc: int, seed: int) -> BipartiteCode:
    """Random (dv, dc)-biregular factor graph by socket permutation.

    Parallel edges cancel mod 2 and dependent checks are dropped, keeping
    the earliest independent rows.
    """
    if n < 1 or dv < 1 or dc < 1:
        raise InfeasibleDegreesError(f"need positive n, dv, dc, got ({n}, {dv}, {dc})")
    if (n * dv) % dc:
        raise InfeasibleDegreesError(f"n*dv = {n * dv} is not divisible by dc = {dc}", n=n, dv=dv, dc=dc)
    if dc > n:
        raise InfeasibleDegreesError(f"check degree {dc} exceeds the {n} bits")
    n_checks = n * dv // dc
    rng = np.random.default_rng(seed)
    bit_sockets = np.repeat(np.arange(n), dv)
    order = rng.permutation(bit_sockets.size)
    check_of = np.arange(bit_sockets.size) // dc
    raw = BinaryMatrix.from_entries(n_checks, n, zip(check_of.tolist(), bit_sockets[order].tolist()))
    h = complement_basis(BinaryMatrix.zeros(0, n), raw)
    dropped = n_checks - h.n_rows
    if dropped:
        logger.info(f"dropped {dropped} dependent checks from the ({dv},{dc}) graph")
    return BipartiteCode(h, kind=CodeKind.LDPC)


def bitflip_decode(code: BipartiteCode, syndrome: BitVector, max_rounds: Optional[int] = None) -> Optional[BitVector]:
    """Greedy bit-flip: flip the bit with the largest drop in unsatisfied checks.

    Ties go to the lowest bit index. Returns None when no flip strictly
    lowers the count before the syndrome is cleared.
    """
    if syndrome.length != code.n_checks:
        raise ShapeMismatchError(f"syndrome length {syndrome.length} != {code.n_checks} checks")
    rounds = max_rounds or settings.decoder.bitflip_rounds or code.n_bits
    h_csc = code.h.csr.tocsc()
    h_t = code.h.csr.T.tocsr().astype(np.int64)
    degree = code.h.col_weights()
    unsat = syndrome.bits.astype(np.int64)
    error = np.zeros(code.n_bits, dtype=np.uint8)
    for _ in range(rounds):
        if not unsat.any():
            return BitVector(error)
        gain = 2 * (h_t @ unsat) - degree
        j = int(np.argmax(gain))
        if gain[j] <= 0:
            logger.debug(f"bit-flip stalled with {int(unsat.sum())} unsatisfied checks")
            return None
        error[j] ^= 1
        touched = h_csc.indices[h_csc.indptr[j] : h_csc.indptr[j + 1]]
        unsat[touched] ^= 1
    return BitVector(error) if not unsat.any() else None


def majority_decode(code: BipartiteCode, syndrome: BitVector) -> BitVector:
    """Exact minimum-weight decoding of a path code.

    The two preimages of the syndrome are complements; the lighter one wins
    and ties go to the one with a_0 = 0.
    """
    if code.h.shape != (code.n_bits - 1, code.n_bits):
        raise ShapeMismatchError(f"majority decoding needs a path check matrix, got {code.h.shape}")
    if syndrome.length != code.n_checks:
        raise ShapeMismatchError(f"syndrome length {syndrome.length} != {code.n_checks} checks")
    candidate = np.concatenate([[0], np.bitwise_xor.accumulate(syndrome.bits)]).astype(np.uint8)
    if 2 * int(candidate.sum()) > code.n_bits:
        candidate ^= 1
    return BitVector(candidate)


def decode_word(code: BipartiteCode, word: BitVector) -> Optional[BitVector]:
    """Syndrome-less decoding of a noisy codeword: the error part, or None."""
    if word.length != code.n_bits:
        raise ShapeMismatchError(f"word length {word.length} != {code.n_bits} bits")
    return code.decode(code.syndrome(word))


def select_a_prime(code: BipartiteCode) -> Tuple[List[int], List[int]]:
    """Pivot columns A′ (H restricted to A′ is invertible) and the rest A″."""
    basis = EchelonBasis(code.h)
    if basis.rank != code.n_checks:
        raise RankDeficiencyError(f"check matrix has rank {basis.rank}, expected {code.n_checks}")
    a_prime = list(basis.pivots)
    chosen = set(a_prime)
    a_second = [a for a in range(code.n_bits) if a not in chosen]
    return a_prime, a_second


def code_distance(code: BipartiteCode, budget: Optional[int] = None) -> DistanceReport:
    """Minimum distance: exhaustive over the 2^k codewords when that fits the budget."""
    budget = budget if budget is not None else settings.linalg.enumeration_budget
    codewords = kernel_matrix(code.h)
    if codewords.n_rows == 0:
        return DistanceReport.undefined("code has no nonzero codewords")
    if (1 << codewords.n_rows) <= budget:
        result = CosetSearcher(codewords, budget=budget).search_full(
            BitVector.zeros(code.n_bits), exclude_zero=True
        )
        mode = SearchMode.FULL
    else:
        result = min_weight_outside(codewords, None, budget)
        mode = SearchMode.INFORMATION_SET
    if result.weight is None:
        return DistanceReport(
            value=result.lower_bound, provenance=Provenance.LOWER_BOUNDED, mode=mode, candidates=result.candidates
        )
    return DistanceReport(
        value=result.weight,
        provenance=Provenance.MEASURED,
        mode=mode,
        witness=list(result.witness.support),
        candidates=result.candidates,
    )


def check_radius(code: BipartiteCode, distance: DistanceReport) -> None:
    """Reject a claimed radius above (d - 1) // 2 when d is measured."""
    if distance.provenance != Provenance.MEASURED or distance.value is None:
        return
    limit = (distance.value - 1) // 2
    if code.decoder_radius > limit:
        raise DecoderRadiusError(
            f"decoder radius {code.decoder_radius} exceeds (d - 1) // 2 = {limit} for d = {distance.value}",
            radius=code.decoder_radius,
            distance=distance.value,
        )


def minimum_weight_codeword(code: BipartiteCode, budget: Optional[int] = None) -> Optional[BitVector]:
    report = code_distance(code, budget)
    if report.witness is None:
        return None
    return BitVector.from_support(code.n_bits, report.witness)


def estimate_decoder_radius(
    code: BipartiteCode,
    trials: Optional[int] = None,
    seed: int = 0,
    distance: Optional[int] = None,
) -> int:
    """Largest w such that every one of ``trials`` seeded weight-w errors decodes exactly.

    Capped at (d - 1) // 2 when the distance is known.
    """
    trials = trials or settings.decoder.radius_trials
    ceiling = code.n_bits if distance is None else (distance - 1) // 2
    radius = 0
    for w in range(1, ceiling + 1):
        for t in range(trials):
            rng = np.random.default_rng([seed, w, t])
            error = BitVector.from_support(code.n_bits, rng.choice(code.n_bits, size=w, replace=False).tolist())
            if code.decode(code.syndrome(error)) != error:
                logger.debug(f"radius estimate: weight {w} failed at trial {t}")
                return radius
        radius = w
    return radius
