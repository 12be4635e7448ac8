"""
Finite quotients of the Cartwright–Steger group and their clique complexes.

The cyclic algebra A(S) = ⊕ S ξ_i z^j (i, j < d) over S = F_q[y]/(p_y) has
relations z ξ_i = φ(ξ_i) z and z^d = 1 + y, where ξ_i = φ^i(ξ_0) is a normal
basis of F_{q^d} over F_q and φ is the Frobenius u -> u^q. Elements are
stored as flat S-arrays of length d², entry i*d + j holding the coefficient
of ξ_i z^j. Group elements are compared modulo the centre S^* through a
canonical representative whose first nonzero coefficient is 1.

q may be any prime power. F_{q^d} is kept as residues of F_q[x] modulo an
irreducible polynomial so that coordinates are taken over F_q itself, and
S is realised as galois.GF(q^e) with F_q embedded through a root of the
defining polynomial of galois.GF(q).
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import galois
import networkx as nx
import numpy as np

from ..core.config import settings
from ..core.exceptions import FieldConstructionError, GroupSizeExceededError, ShapeMismatchError
from ..core.logging import get_module_logger
from ..models.reports import LinkSummary
from .simplicial import SimplicialComplex, clique_complex, link

logger = get_module_logger("complexes.lsv")


@dataclass(frozen=True)
class ExtensionField:
    """F_{q^d} as F_q[x]/(modulus).

    Elements are integers in [0, q^d) in galois' integer representation of
    polynomials over F_q (base-q digits, leading coefficient first).
    """

    base: type
    modulus: galois.Poly

    @classmethod
    def build(cls, base: type, degree: int) -> "ExtensionField":
        return cls(base=base, modulus=galois.irreducible_poly(base.order, degree, method="min"))

    @property
    def q(self) -> int:
        return self.base.order

    @property
    def degree(self) -> int:
        return self.modulus.degree

    @property
    def order(self) -> int:
        return self.q**self.degree

    def poly(self, u: int) -> galois.Poly:
        if not 0 <= int(u) < self.order:
            raise ShapeMismatchError(f"{u} is not an element of F_{self.q}^{self.degree}")
        return galois.Poly.Int(int(u), field=self.base)

    def mul(self, a: int, b: int) -> int:
        return int((self.poly(a) * self.poly(b)) % self.modulus)

    def power(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        return int(pow(self.poly(a), n, self.modulus))

    def inverse(self, a: int) -> int:
        if int(a) == 0:
            raise ShapeMismatchError("0 has no inverse")
        return self.power(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inverse(b))

    def frobenius(self, a: int) -> int:
        return self.power(a, self.q)

    def vector(self, u: int):
        """Coordinates over F_q in the basis 1, x, ..., x^{d-1}."""
        coeffs = self.poly(u).coeffs[::-1]
        out = self.base.Zeros(self.degree)
        out[: coeffs.size] = coeffs
        return out


def _embedding(base: type, S: type):
    """Images in S of the elements 0..q-1 of base."""
    if S is base:
        return S.Range(0, base.order)
    if galois.is_prime(base.order):
        return S(np.arange(base.order))
    defining = base.irreducible_poly
    candidates = S.elements
    alpha = candidates[defining(candidates, field=S) == 0][0]
    images = S.Zeros(base.order)
    for c in range(base.order):
        value = S(0)
        for digit in base(c).vector():
            value = value * alpha + S(int(digit))
        images[c] = value
    return images


def _check_poly(q: int, e: int, coefficients: Sequence[int]) -> galois.Poly:
    """Validate p_y (constant term first) and return it as a monic polynomial over F_q."""
    base = galois.GF(q)
    if any(not 0 <= c < q for c in coefficients):
        raise FieldConstructionError(f"coefficients of p_y must lie in [0, {q})")
    poly = galois.Poly(list(coefficients), field=base, order="asc")
    if poly.degree != e:
        raise FieldConstructionError(f"p_y has degree {poly.degree}, expected e = {e}")
    poly = poly // galois.Poly([poly.coeffs[0]], field=base)
    if not poly.is_irreducible():
        raise FieldConstructionError(f"p_y = {poly} is reducible over F_{q}")
    if poly(base(0)) == 0:
        raise FieldConstructionError("p_y(0) = 0, so y is not a unit modulo p_y")
    if poly(-base(1)) == 0:
        raise FieldConstructionError("p_y(-1) = 0, so 1 + y is not a unit modulo p_y")
    return poly


def _normal_element(extension: ExtensionField) -> Tuple[int, np.ndarray]:
    """Smallest u whose conjugates u, u^q, ..., u^{q^{d-1}} are F_q-independent.

    Returns u and the d x d matrix of conjugate coordinates (rows ξ_i).
    """
    d = extension.degree
    for u in range(1, extension.order):
        conjugates = [u]
        for _ in range(d - 1):
            conjugates.append(extension.frobenius(conjugates[-1]))
        rows = extension.base(np.stack([np.asarray(extension.vector(c)) for c in conjugates]))
        if np.linalg.matrix_rank(rows) == d:
            return u, rows
    raise FieldConstructionError(f"no normal element found for F_{extension.q}^{d}")


@dataclass
class CyclicAlgebra:
    """Multiplication context for A(S).

    Built by :func:`build_structure`; immutable once built.
    """

    q: int
    d: int
    e: int
    p_y: Tuple[int, ...]
    S: type = field(repr=False)
    extension: ExtensionField = field(repr=False)
    xi0: int
    structure: np.ndarray = field(repr=False)  # ξ_a ξ_b = Σ_k structure[a, b, k] ξ_k, over F_q
    xi_matrix: np.ndarray = field(repr=False)
    embed: np.ndarray = field(default=None, repr=False)  # F_q -> S, indexed by integer
    y: object = None
    one_plus_y_inv: object = field(default=None, repr=False)
    tensor: np.ndarray = field(default=None, repr=False)  # (d², d², d²) over S

    @property
    def size(self) -> int:
        return self.d * self.d

    # -- coordinates --------------------------------------------------------

    def xi_coordinates(self, u: int) -> np.ndarray:
        """Coordinates of u ∈ F_{q^d} in the normal basis, as integers in [0, q)."""
        coords = self.extension.vector(int(u)) @ np.linalg.inv(self.xi_matrix)
        return np.asarray(coords, dtype=np.int64)

    def lift(self, coords) -> np.ndarray:
        """F_q integers -> S."""
        return self.embed[np.asarray(coords, dtype=np.int64)]

    def zero(self):
        return self.S.Zeros(self.size)

    def scalar_z(self, u: int, power: int, scale=None):
        """The element scale · u · z^power for u ∈ F_{q^d}."""
        out = self.zero()
        coords = self.lift(self.xi_coordinates(u))
        scale = self.S(1) if scale is None else scale
        for k in range(self.d):
            out[k * self.d + power] = coords[k] * scale
        return out
    def one(self):
        return self.scalar_z(1, 0)

    def z(self):
        return self.scalar_z(1, 1)

    def z_inverse(self):
        return self.scalar_z(1, self.d - 1, self.one_plus_y_inv)

    def check(self, a) -> None:
        if not isinstance(a, self.S) or a.shape != (self.size,):
            raise ShapeMismatchError(
                f"expected a length-{self.size} array over GF({self.S.order}), got {type(a).__name__} {getattr(a, 'shape', None)}"
            )

    # -- arithmetic ---------------------------------------------------------

    def right_matrix(self, b):
        """R_b with x·b = x @ R_b."""
        self.check(b)
        D = self.size
        mixed = self.tensor.transpose(1, 0, 2).reshape(D, D * D)
        return (b @ mixed).reshape(D, D)

    def left_matrix(self, a):
        """L_a with a·x = x @ L_a."""
        self.check(a)
        D = self.size
        return (a @ self.tensor.reshape(D, D * D)).reshape(D, D)

    def mul(self, a, b):
        return a @ self.right_matrix(b)

    def inverse(self, a):
        """Two-sided inverse, or None when a is a zero divisor."""
        left = self.left_matrix(a)
        if np.linalg.matrix_rank(left) < self.size:
            return None
        return np.linalg.solve(left.T, self.one())

    def canonical(self, rows):
        """Scale each row so its first nonzero entry is 1. Rows must be nonzero."""
        rows = rows.reshape(-1, self.size)
        nonzero = np.asarray(rows) != 0
        if not nonzero.any(axis=1).all():
            raise ShapeMismatchError("zero element has no projective class")
        first = np.argmax(nonzero, axis=1)
        lead = rows[np.arange(rows.shape[0]), first]
        return rows / lead[:, None]

    def key(self, canonical_row) -> bytes:
        return np.asarray(canonical_row, dtype=np.int64).tobytes()


def build_structure(q: int, d: int, e: int, p_y: Sequence[int]) -> CyclicAlgebra:
    """Multiplication context for A(F_q[y]/(p_y)).

    ``q`` is a prime power and ``p_y`` lists coefficients over F_q (in
    galois' integer representation) constant term first.
    """
    if not galois.is_prime_power(q):
        raise FieldConstructionError(f"q = {q} is not a prime power")
    if d < 2 or e < 1:
        raise FieldConstructionError(f"need d >= 2 and e >= 1, got d={d}, e={e}")
    poly = _check_poly(q, e, p_y)

    base = galois.GF(q)
    extension = ExtensionField.build(base, d)
    S = base if e == 1 else galois.GF(q**e)
    embed = _embedding(base, S)
    lifted = galois.Poly(embed[np.asarray(poly.coeffs, dtype=np.int64)], field=S)
    roots = lifted.roots()
    if roots.size == 0:
        raise FieldConstructionError(f"p_y = {poly} has no root in GF({q}^{e})")
    y = roots[np.argmin(np.asarray(roots, dtype=np.int64))]
    one_plus_y = S(1) + y
    logger.debug(f"S = GF({q}^{e}) with y = {y}; F_{q}^{d} modulo {extension.modulus}")

    xi0, xi_matrix = _normal_element(extension)
    inverse_xi = np.linalg.inv(xi_matrix)
    xis = [xi0]
    for _ in range(d - 1):
        xis.append(extension.frobenius(xis[-1]))
    structure = np.zeros((d, d, d), dtype=np.int64)
    for a in range(d):
        for b in range(d):
            product = extension.vector(extension.mul(xis[a], xis[b]))
            structure[a, b] = np.asarray(product @ inverse_xi, dtype=np.int64)

    D = d * d
    tensor = S.Zeros((D, D, D))
    for a in range(d):
        for i in range(d):
            for b in range(d):
                for j in range(d):
                    carry = (i + j) // d
                    factor = one_plus_y**carry
                    l = (i + j) % d
                    shifted = (b + i) % d
                    for k in range(d):
                        c = structure[a, shifted, k]
                        if c:
                            tensor[a * d + i, b * d + j, k * d + l] += embed[c] * factor

    algebra = CyclicAlgebra(
        q=q,
        d=d,
        e=e,
        p_y=tuple(int(c) for c in p_y),
        S=S,
        extension=extension,
        xi0=xi0,
        structure=structure,
        xi_matrix=xi_matrix,
        embed=embed,
        y=y,
        one_plus_y_inv=one_plus_y**-1,
        tensor=tensor,
    )
    logger.info(f"cyclic algebra ready: q={q}, d={d}, e={e}, normal element {xi0}")
    return algebra


def algebra_mul(algebra: CyclicAlgebra, a, b):
    algebra.check(a)
    return algebra.mul(a, b)


def algebra_inverse(algebra: CyclicAlgebra, a):
    return algebra.inverse(a)


def sigma1(algebra: CyclicAlgebra) -> List:
    """b_u = 1 − (u/φ(u))·z^{-1}, one per class u ∈ F_{q^d}^*/F_q^*."""
    K = algebra.extension
    ratios: List[int] = []
    seen = set()
    for u in range(1, K.order):
        ratio = K.div(u, K.frobenius(u))
        if ratio not in seen:
            seen.add(ratio)
            ratios.append(ratio)
    one = algebra.one()
    generators = [one - algebra.scalar_z(c, algebra.d - 1, algebra.one_plus_y_inv) for c in ratios]
    logger.debug(f"Σ₁ has {len(generators)} elements")
    return generators


@dataclass
class QuotientBuild:
    """A built quotient complex and its group data."""

    complex: SimplicialComplex
    algebra: CyclicAlgebra
    elements: np.ndarray = field(repr=False)  # canonical representatives in vertex order
    generators: int = 0


def build_quotient(algebra: CyclicAlgebra, max_group_size: Optional[int] = None) -> QuotientBuild:
    """Breadth-first enumeration of the image group with Σ = Σ₁ ∪ Σ₁⁻¹.

    Vertices are numbered in discovery order; edges are {g, g·s}.
    """
    max_group_size = max_group_size or settings.lsv.max_group_size
    forward = sigma1(algebra)
    backward = []
    for b in forward:
        inv = algebra.inverse(b)
        if inv is None:
            raise FieldConstructionError("a Σ₁ element is not invertible modulo p_y")
        backward.append(inv)

    generators = []
    gen_keys = set()
    for g in algebra.canonical(algebra.S(np.stack(forward + backward))):
        k = algebra.key(g)
        if k not in gen_keys:
            gen_keys.add(k)
            generators.append(g)
    n_gen = len(generators)
    D = algebra.size
    combined = np.concatenate([algebra.right_matrix(g) for g in generators], axis=1)

    identity = algebra.canonical(algebra.one())
    index: Dict[bytes, int] = {algebra.key(identity[0]): 0}
    elements = [np.asarray(identity[0], dtype=np.int64)]
    edges = set()
    frontier = identity
    frontier_ids = [0]
    layer = 0
    while len(frontier_ids):
        images = algebra.canonical((frontier @ combined).reshape(-1, D))
        raw = np.asarray(images, dtype=np.int64)
        next_ids: List[int] = []
        next_rows: List[int] = []
        for pos in range(raw.shape[0]):
            source = frontier_ids[pos // n_gen]
            k = raw[pos].tobytes()
            target = index.get(k)
            if target is None:
                target = len(elements)
                index[k] = target
                elements.append(raw[pos])
                next_ids.append(target)
                next_rows.append(pos)
                if len(elements) > max_group_size:
                    raise GroupSizeExceededError(
                        f"group exceeds max_group_size={max_group_size}",
                        max_group_size=max_group_size,
                    )
            if source != target:
                edges.add((source, target) if source < target else (target, source))
        layer += 1
        logger.debug(f"BFS layer {layer}: {len(next_ids)} new elements, {len(elements)} total")
        frontier = images[next_rows] if next_rows else images[:0]
        frontier_ids = next_ids

    logger.info(f"quotient group has {len(elements)} elements, {len(edges)} Cayley edges")
    X = clique_complex(sorted(edges), max_dim=algebra.d - 1, n_vertices=len(elements))
    return QuotientBuild(complex=X, algebra=algebra, elements=np.stack(elements), generators=n_gen)


def build_quotient_complex(algebra: CyclicAlgebra, max_group_size: Optional[int] = None) -> SimplicialComplex:
    """Clique complex (dimension d − 1) of the Cayley graph of the image group."""
    return build_quotient(algebra, max_group_size).complex


def summarize_links(X: SimplicialComplex, vertices: Optional[Sequence[int]] = None) -> LinkSummary:
    """Shared structure of vertex links: size, regularity, bipartiteness, girth."""
    vertices = list(X.vertices) if vertices is None else list(vertices)
    reference: Optional[Tuple[int, Optional[int], bool, Optional[int]]] = None
    uniform = True
    for v in vertices:
        g = link(X, v)
        degrees = {deg for _, deg in g.degree()}
        regular = degrees.pop() if len(degrees) == 1 else None
        girth = nx.girth(g)
        signature = (
            g.number_of_nodes(),
            regular,
            nx.is_bipartite(g),
            None if girth == float("inf") else int(girth),
        )
        if reference is None:
            reference = signature
        elif signature != reference:
            uniform = False
            logger.warning(f"link of vertex {v} differs: {signature} vs {reference}")
            break
    if reference is None:
        return LinkSummary(vertices=0, regular_degree=None, bipartite=True, girth=None, uniform=True)
    n, regular, bipartite, girth = reference
    return LinkSummary(vertices=n, regular_degree=regular, bipartite=bipartite, girth=girth, uniform=uniform)
