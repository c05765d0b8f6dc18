"""Graded degree-0 endomorphism rings of the module L^3.

An endomorphism preserving homogeneous components is parameterized by its
matrix on the bottom component V_{k0}: because each V_{i+1} is spanned by
[V_i, X] and [V_i, Y], the rule f([v, g]) = [f(v), g] forces the values on
every higher degree.  The solver carries that forced propagation
symbolically (entries are homogeneous linear forms in the bottom-matrix
unknowns) and collects the well-definedness constraints into one linear
system over GF(p); its kernel is the endomorphism space.

Parameterizing from the bottom eliminates spurious solutions supported
near the truncation top, which would otherwise satisfy every visible
constraint vacuously.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    CoveringFails,
    DegenerateGenerators,
    DimensionAnomaly,
    NotAField,
    NotCommutative,
    OutOfWindow,
)
from .gf import BaseField, EElem, Matrix, RowSpace, rref
from .subfield import SubalgebraAnalysis, ad_gen

Coords = Tuple[int, ...]
SCHUR_EXHAUSTIVE_LIMIT = 4096

# -- linear forms over GF(p) --------------------------------------------------


def _lf_zero(n: int) -> Coords:
    return (0,) * n


def _lf_unit(n: int, k: int) -> Coords:
    return tuple(1 if i == k else 0 for i in range(n))


def _lf_add(p: int, a: Coords, b: Coords) -> Coords:
    return tuple((x + y) % p for x, y in zip(a, b))


def _lf_scale(p: int, c: int, a: Coords) -> Coords:
    return tuple(c * x % p for x in a)


# -- the propagation solver ---------------------------------------------------


def _gen_images(analysis: SubalgebraAnalysis, degree: int) -> List[Tuple[int, int, Coords]]:
    """[(row_index, gen_index, coords of [row, gen] in the L_{degree+1} basis)]."""
    out = []
    for r_idx, row in enumerate(analysis.basis(degree)):
        for g_idx, gen in enumerate((analysis.pair.X, analysis.pair.Y)):
            img = ad_gen(analysis.pres, degree, row, gen)
            out.append((r_idx, g_idx, analysis.express(degree + 1, img)))
    return out


def _invert_small(p: int, rows: Sequence[Coords]) -> List[Coords]:
    """Inverse of a small invertible matrix over GF(p), as rows."""
    n = len(rows)
    aug = Matrix(
        BaseField(p),
        [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)],
    )
    res = rref(aug)
    if res.rank != n or res.pivots != tuple(range(n)):
        raise ValueError("matrix not invertible")
    return [tuple(r[n:]) for r in res.reduced.rows]


def _solve_graded_maps(
    analysis: SubalgebraAnalysis, shift: int, k0: int, window: int
):
    """Solution space of graded degree-`shift` L-endomorphisms of the module.

    Returns (kernel_rows, symbolic) where each kernel row is a flattened
    bottom matrix V_{k0} -> V_{k0+shift} and symbolic[i] is the propagated
    matrix at source degree i with linear-form entries.
    """
    Fb = analysis.field.base
    p = Fb.p
    dim_src = analysis.dim(k0)
    dim_tgt = analysis.dim(k0 + shift)
    n_unk = dim_src * dim_tgt
    symbolic: Dict[int, List[List[Coords]]] = {
        k0: [
            [_lf_unit(n_unk, r * dim_tgt + c) for c in range(dim_tgt)]
            for r in range(dim_src)
        ]
    }
    constraints: List[Coords] = []
    i = k0
    while i + 1 + shift <= window:
        src_imgs = _gen_images(analysis, i)  # spans V_{i+1}
        tgt_imgs = _gen_images(analysis, i + shift)
        tgt_lookup = {(r, g): v for r, g, v in tgt_imgs}
        f_i = symbolic[i]
        d_next = analysis.dim(i + 1)
        d_next_tgt = analysis.dim(i + 1 + shift)
        pairs = []
        for r_idx, g_idx, in_vec in src_imgs:
            out_vec = [_lf_zero(n_unk)] * d_next_tgt
            for s in range(analysis.dim(i + shift)):
                coeff_forms = f_i[r_idx][s]
                tgt_vec = tgt_lookup[(s, g_idx)]
                for j, c in enumerate(tgt_vec):
                    if c:
                        out_vec[j] = _lf_add(p, out_vec[j], _lf_scale(p, c, coeff_forms))
            pairs.append((tuple(in_vec), out_vec))
        # choose a spanning subset of the concrete input vectors
        chooser = RowSpace(Fb, d_next)
        selected: List[int] = []
        for idx, (in_vec, _) in enumerate(pairs):
            if chooser.insert(in_vec):
                selected.append(idx)
        if len(selected) != d_next:
            raise CoveringFails(
                f"[L_{i}, L_1] does not span L_{i + 1}; propagation is not forced"
            )
        sel_rows = [pairs[idx][0] for idx in selected]
        inv = _invert_small(p, sel_rows)
        f_next: List[List[Coords]] = []
        for j in range(d_next):
            acc = [_lf_zero(n_unk)] * d_next_tgt
            for k, idx in enumerate(selected):
                c = inv[j][k]
                if c:
                    for col in range(d_next_tgt):
                        acc[col] = _lf_add(
                            p, acc[col], _lf_scale(p, c, pairs[idx][1][col])
                        )
            f_next.append(acc)
        symbolic[i + 1] = f_next
        # consistency: every (input, output) pair must match the propagated map
        for in_vec, out_vec in pairs:
            for col in range(d_next_tgt):
                acc = _lf_zero(n_unk)
                for j, c in enumerate(in_vec):
                    if c:
                        acc = _lf_add(p, acc, _lf_scale(p, c, f_next[j][col]))
                diff = tuple((a - b) % p for a, b in zip(acc, out_vec[col]))
                if any(diff):
                    constraints.append(diff)
        i += 1
    if constraints:
        res = rref(Matrix(Fb, constraints))
        kernel_rows = [tuple(r) for r in res.kernel.rows]
    else:
        kernel_rows = [_lf_unit(n_unk, k) for k in range(n_unk)]
    return kernel_rows, symbolic


# -- the degree-0 ring --------------------------------------------------------


@dataclass
class EndoRing:
    analysis: SubalgebraAnalysis
    k0: int
    window: int
    dim: int
    basis: Tuple[Coords, ...]  # flattened bottom matrices
    identity: Coords  # coordinates of id in the basis
    mult_table: Tuple[Tuple[Coords, ...], ...]  # coords of basis[i] o basis[j]
    _symbolic: Dict[int, List[List[Coords]]]

    @property
    def field(self):
        return self.analysis.field

    def element_flat(self, coords: Coords) -> Coords:
        p = self.field.p
        n = len(self.basis[0])
        acc = [0] * n
        for c, vec in zip(coords, self.basis):
            if c:
                for j, x in enumerate(vec):
                    acc[j] = (acc[j] + c * x) % p
        return tuple(acc)

    def coords_of_flat(self, flat: Sequence[int]) -> Coords:
        """Coordinates of a flattened bottom matrix in the ring basis."""
        return _express_in_rows(self.field.p, self.basis, flat)

    def matrix_at(self, coords: Coords, degree: int) -> List[List[int]]:
        """The element's concrete matrix on V_degree."""
        if not self.k0 <= degree <= self.window:
            raise OutOfWindow(f"degree {degree} outside [{self.k0}, {self.window}]")
        p = self.field.p
        u = self.element_flat(coords)
        sym = self._symbolic[degree]
        return [
            [sum(a * b for a, b in zip(form, u)) % p for form in row]
            for row in sym
        ]

    def compose(self, e1: Coords, e2: Coords) -> Coords:
        """Coordinates of e1 o e2 (apply e2 first)."""
        p = self.field.p
        d = self.analysis.dim(self.k0)
        m1 = _unflatten(self.element_flat(e1), d)
        m2 = _unflatten(self.element_flat(e2), d)
        prod = _matmul_modp(p, m2, m1)  # row-vector convention: v . M2 . M1
        return _express_in_rows(p, self.basis, _flatten(prod))


def _flatten(m: Sequence[Sequence[int]]) -> Coords:
    return tuple(x for row in m for x in row)


def _unflatten(flat: Sequence[int], d: int) -> List[List[int]]:
    return [list(flat[r * d : (r + 1) * d]) for r in range(len(flat) // d)]


def _matmul_modp(p: int, a, b) -> List[List[int]]:
    n, m, k = len(a), len(b[0]), len(b)
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(m)]
        for i in range(n)
    ]


def _express_in_rows(p: int, basis: Sequence[Coords], vec: Sequence[int]) -> Coords:
    """Solve sum c_k basis[k] = vec over GF(p); raises if unsolvable."""
    from .gf import BaseField

    Fb = BaseField(p)
    n = len(vec)
    cols = len(basis)
    aug = Matrix(Fb, [[basis[k][j] for k in range(cols)] + [vec[j] % p] for j in range(n)])
    res = rref(aug)
    coords = [0] * cols
    for r_idx, pc in enumerate(res.pivots):
        if pc == cols:
            raise DimensionAnomaly("vector not in the span of the ring basis")
        coords[pc] = res.reduced.rows[r_idx][cols]
    # verify
    acc = [0] * n
    for c, b in zip(coords, basis):
        for j, x in enumerate(b):
            acc[j] = (acc[j] + c * x) % p
    if acc != [v % p for v in vec]:
        raise DimensionAnomaly("vector not in the span of the ring basis")
    return tuple(coords)


def compute_grend0(
    analysis: SubalgebraAnalysis, k0: int = 3, window: Optional[int] = None
) -> EndoRing:
    """The ring of graded degree-0 L-endomorphisms of L^{k0}, solved exactly."""
    if analysis.d is None:
        raise DegenerateGenerators("endomorphism ring needs independent generators")
    window = analysis.window if window is None else window
    if not k0 < window <= analysis.window:
        raise OutOfWindow(f"module window [{k0}, {window}] is not usable")
    if any(analysis.dim(i) == 0 for i in range(k0, window + 1)):
        raise CoveringFails("module has a zero component inside the window")
    kernel_rows, symbolic = _solve_graded_maps(analysis, 0, k0, window)
    dim = len(kernel_rows)
    d = analysis.dim(k0)
    p = analysis.field.p
    identity_flat = _flatten([[1 if i == j else 0 for j in range(d)] for i in range(d)])
    identity = _express_in_rows(p, kernel_rows, identity_flat)
    table = []
    for i in range(dim):
        row = []
        for j in range(dim):
            mi = _unflatten(kernel_rows[i], d)
            mj = _unflatten(kernel_rows[j], d)
            prod = _matmul_modp(p, mj, mi)
            row.append(_express_in_rows(p, kernel_rows, _flatten(prod)))
        table.append(tuple(row))
    ring = EndoRing(
        analysis=analysis,
        k0=k0,
        window=window,
        dim=dim,
        basis=tuple(kernel_rows),
        identity=identity,
        mult_table=tuple(table),
        _symbolic=symbolic,
    )
    _crosscheck_composition(ring)
    return ring


def _crosscheck_composition(ring: EndoRing) -> None:
    """Recompute the table one degree up; guards against propagation bugs."""
    if ring.k0 + 1 > ring.window:
        return
    p = ring.field.p
    deg = ring.k0 + 1
    for i in range(ring.dim):
        for j in range(ring.dim):
            mi = ring.matrix_at(_unit(ring.dim, i), deg)
            mj = ring.matrix_at(_unit(ring.dim, j), deg)
            direct = _matmul_modp(p, mj, mi)
            via_table = ring.matrix_at(ring.mult_table[i][j], deg)
            if direct != via_table:
                raise DimensionAnomaly(
                    f"composition at degree {deg} disagrees with the bottom table"
                )


def _unit(n: int, k: int) -> Coords:
    return tuple(1 if i == k else 0 for i in range(n))


# -- field identification ------------------------------------------------------


@dataclass
class FieldId:
    dim: int
    min_poly: Optional[Tuple[int, int, int]]  # (c0, c1, 1) for t^2 + c1 t + c0
    is_field: bool
    embedding: str  # "mu" | "mu_conj" | "n/a"
    generator: Optional[Coords]
    mu_hat: Optional[Coords]  # ring element acting as multiplication by mu
    sigma: Optional[EElem]  # scalar by which the generator acts on V_{k0}

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "min_poly": list(self.min_poly) if self.min_poly else None,
            "is_field": self.is_field,
            "embedding": self.embedding,
        }


def _ring_elements(ring: EndoRing):
    p = ring.field.p
    for coords in itertools.product(range(p), repeat=ring.dim):
        if any(coords):
            yield coords


def _scalar_of_action(ring: EndoRing, coords: Coords) -> EElem:
    """The extension scalar by which an element acts on V_{k0}.

    Well-defined whenever the element acts as an E-scalar there; verified
    against every basis row.
    """
    F = ring.field
    an = ring.analysis
    mat = ring.matrix_at(coords, ring.k0)
    rows = an.basis(ring.k0)
    p = F.p
    sigma = None
    for idx, w in enumerate(rows):
        img = [0, 0]
        for s, c in enumerate(mat[idx]):
            img[0] = (img[0] + c * rows[s][0]) % p
            img[1] = (img[1] + c * rows[s][1]) % p
        w_e: EElem = (w[0], w[1])
        img_e: EElem = (img[0], img[1])
        cand = F.div(img_e, w_e)
        if sigma is None:
            sigma = cand
        elif sigma != cand:
            raise DimensionAnomaly("element does not act as an extension scalar")
    return sigma


def identify_field(ring: EndoRing) -> FieldId:
    """Verify the ring is a (commutative) field and name its isomorphism type.

    Commutativity comes from the multiplication table; invertibility is
    Schur's lemma made testable: every nonzero element must act with
    nonzero determinant on every component in the window.  A ring of
    dimension 2 with an irreducible quadratic minimal polynomial is the
    field GF(p^2); the Galois-conjugate ambiguity of its identification
    with the ambient extension is resolved by reading off the scalar by
    which a distinguished root of the ambient quadratic acts.
    """
    F = ring.field
    p = F.p
    for i in range(ring.dim):
        for j in range(i + 1, ring.dim):
            if ring.mult_table[i][j] != ring.mult_table[j][i]:
                raise NotCommutative(
                    f"basis elements {i} and {j} do not commute"
                )
    # Schur invertibility on every degree
    exhaustive = p**ring.dim <= SCHUR_EXHAUSTIVE_LIMIT
    elements = list(_ring_elements(ring)) if exhaustive else [
        _unit(ring.dim, k) for k in range(ring.dim)
    ]
    for coords in elements:
        for degree in range(ring.k0, ring.window + 1):
            if _det_modp(p, ring.matrix_at(coords, degree)) == 0:
                raise NotAField(
                    f"nonzero element {coords} is singular on degree {degree}"
                )
    if ring.dim == 1:
        return FieldId(
            dim=1,
            min_poly=None,
            is_field=True,
            embedding="n/a",
            generator=None,
            mu_hat=None,
            sigma=None,
        )
    if ring.dim != 2:
        raise NotAField(f"unexpected ring dimension {ring.dim}")
    # canonical generator: first basis element outside F*identity
    gen = None
    for k in range(ring.dim):
        cand = _unit(ring.dim, k)
        if not _proportional(p, cand, ring.identity):
            gen = cand
            break
    if gen is None:
        raise NotAField("ring has no element outside F*identity")
    # minimal polynomial of the generator: g^2 = m1*1 + m2*g
    g2 = ring.compose(gen, gen)
    m1, m2 = _solve_2x2(p, ring.identity, gen, g2)
    c1 = (-m2) % p
    c0 = (-m1) % p
    for t in range(p):
        if (t * t + c1 * t + c0) % p == 0:
            raise NotAField(f"minimal polynomial t^2 + {c1}t + {c0} is reducible")
    # locate a root of the ambient quadratic t^2 - u t - v inside the ring
    mu_abs = None
    for coords in _ring_elements(ring):
        if _proportional(p, coords, ring.identity):
            continue
        sq = ring.compose(coords, coords)
        want = tuple(
            (F.u * a + F.v * b) % p for a, b in zip(coords, ring.identity)
        )
        if sq == want:
            mu_abs = coords
            break
    if mu_abs is None:
        raise NotAField("no root of the ambient quadratic inside the ring")
    sigma = _scalar_of_action(ring, mu_abs)
    if sigma == F.mu:
        embedding = "mu"
        mu_hat = mu_abs
    elif sigma == F.conj(F.mu):
        embedding = "mu_conj"
        mu_hat = tuple(
            (F.u * i - a) % p for a, i in zip(mu_abs, ring.identity)
        )
    else:
        raise DimensionAnomaly(f"root acts by {sigma}, not a conjugate of mu")
    gen_sigma = _scalar_of_action(ring, gen)
    return FieldId(
        dim=2,
        min_poly=(c0, c1, 1),
        is_field=True,
        embedding=embedding,
        generator=gen,
        mu_hat=mu_hat,
        sigma=gen_sigma,
    )


def _det_modp(p: int, m: Sequence[Sequence[int]]) -> int:
    if len(m) == 1:
        return m[0][0] % p
    if len(m) == 2:
        return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % p
    raise ValueError("components have dimension at most 2")


def _proportional(p: int, a: Coords, b: Coords) -> bool:
    n = len(a)
    return all(
        (a[i] * b[j] - a[j] * b[i]) % p == 0 for i in range(n) for j in range(i + 1, n)
    )


def _solve_2x2(p: int, b1: Coords, b2: Coords, target: Coords) -> Tuple[int, int]:
    """Solve c1*b1 + c2*b2 = target for 2-dimensional coordinate vectors."""
    det = (b1[0] * b2[1] - b1[1] * b2[0]) % p
    if det == 0:
        raise ValueError("basis vectors are dependent")
    dinv = pow(det, p - 2, p)
    c1 = ((target[0] * b2[1] - target[1] * b2[0]) * dinv) % p
    c2 = ((b1[0] * target[1] - b1[1] * target[0]) * dinv) % p
    return c1, c2


# -- actions and shifted dimensions --------------------------------------------


def scalar_action(
    ring: EndoRing, e: Coords, degree: int, vec: Sequence[int]
) -> Coords:
    """Apply a ring element to a module vector given in the L-basis coords."""
    p = ring.field.p
    mat = ring.matrix_at(e, degree)
    out = [0] * len(mat[0])
    for c, row in zip(vec, mat):
        if c:
            for j, x in enumerate(row):
                out[j] = (out[j] + c * x) % p
    return tuple(out)


@dataclass
class GrendDim:
    shift: int
    dim: int
    bound: int

    @property
    def bound_ok(self) -> bool:
        return self.dim <= self.bound


def grend_d_dimension(
    analysis: SubalgebraAnalysis, shift: int, k0: int = 3, window: Optional[int] = None
) -> GrendDim:
    """Dimension of the degree-`shift` graded endomorphism space.

    Also reports the a-priori bound min(dim V_m) over target degrees in
    the window; the computed dimension must not exceed it.
    """
    if analysis.d is None:
        raise DegenerateGenerators("endomorphism solve needs independent generators")
    window = analysis.window if window is None else window
    if shift < 0 or k0 + shift > window:
        raise OutOfWindow(f"shift {shift} pushes the bottom past the window")
    kernel_rows, _ = _solve_graded_maps(analysis, shift, k0, window)
    bound = min(analysis.dim(m) for m in range(k0 + shift, window + 1))
    return GrendDim(shift=shift, dim=len(kernel_rows), bound=bound)
