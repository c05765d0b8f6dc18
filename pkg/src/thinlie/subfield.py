"""Restriction of scalars: GF(p)-subalgebras of a maximal-class algebra.

The ambient components are coordinatized over GF(p) once and for all:
M_1 = F^4 via the basis (x, mu*x, y, mu*y) and M_i = F^2 via (v_i, mu*v_i)
for i >= 2.  An extension scalar (c0, c1) therefore *is* the coordinate
vector of (c0 + c1*mu)*v_i, which keeps all conversions trivial.

Given two generators X, Y in M_1, the subalgebra L they generate is
computed degreewise as L_{i+1} = span([L_i, X] + [L_i, Y]); this is the
whole of [L_i, L_1] because L is generated in degree 1.  The classifying
invariant is d_i = dim_F(C_i \\cap L_1), the intersection of the span of
the generators with the two-step centralizer line.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    BadBound,
    DegenerateGenerators,
    DimensionAnomaly,
    NotStandardForm,
    WindowTooLargeForBruteForce,
)
from .gf import EElem, ExtField, Matrix, RowSpace
from .maxclass import (
    CentralizerSequence,
    MaxClassPresentation,
    apply_degree1_change,
    ey_point,
    is_standard,
    tables,
    two_step_centralizers,
)

EPair = Tuple[EElem, EElem]  # coordinates (A, B) of A*x + B*y

BRUTE_FORCE_LIMIT = 200_000


@dataclass(frozen=True)
class GeneratorPair:
    """Two degree-1 elements X = alpha*x + beta*y and Y = gamma*x + delta*y."""

    X: EPair
    Y: EPair

    def det(self, field: ExtField) -> EElem:
        (al, be), (ga, de) = self.X, self.Y
        return field.sub(field.mul(al, de), field.mul(be, ga))

    def is_degenerate(self, field: ExtField) -> bool:
        return field.is_zero(self.det(field))


def pair_from_ints(field: ExtField, xs: Sequence[int], ys: Sequence[int]) -> GeneratorPair:
    """Build a pair from flat coordinates (a0, a1, b0, b1) per generator."""
    cx = (field.coerce((xs[0], xs[1])), field.coerce((xs[2], xs[3])))
    cy = (field.coerce((ys[0], ys[1])), field.coerce((ys[2], ys[3])))
    return GeneratorPair(cx, cy)


# -- coordinate plumbing -----------------------------------------------------


def deg1_to_f4(g: EPair) -> Tuple[int, int, int, int]:
    (a0, a1), (b0, b1) = g
    return (a0, a1, b0, b1)


def f4_to_deg1(vec: Sequence[int]) -> EPair:
    return ((vec[0], vec[1]), (vec[2], vec[3]))


def mu_mult(field: ExtField, e: EElem) -> EElem:
    return field.mul(field.mu, e)


def point_rows_f4(field: ExtField, point: EPair) -> List[Tuple[int, ...]]:
    """The F-plane of the E-line through alpha*x + beta*y, as two F^4 rows."""
    al, be = point
    return [
        deg1_to_f4((al, be)),
        deg1_to_f4((mu_mult(field, al), mu_mult(field, be))),
    ]


def ad_gen(
    pres: MaxClassPresentation, degree: int, vec: Sequence[int], gen: EPair
) -> Tuple[int, ...]:
    """[vec, gen] for an F-coordinate vector of degree `degree`.

    Returns F^2 coordinates in degree + 1 (the zero vector past the bound).
    """
    F = pres.field
    st = tables(pres)
    al, be = gen
    if degree + 1 > pres.class_n:
        return (0, 0)
    if degree == 1:
        A, B = f4_to_deg1(vec)
        c = F.sub(F.mul(B, al), F.mul(A, be))  # [Ax+By, alpha x + beta y]
        return c
    c = (vec[0], vec[1])
    coeff = F.add(F.mul(al, st.coeff_a(degree)), F.mul(be, st.coeff_b(degree)))
    return F.mul(c, coeff)


def bracket_vec(
    pres: MaxClassPresentation,
    deg_u: int,
    u: Sequence[int],
    deg_w: int,
    w: Sequence[int],
) -> Tuple[int, ...]:
    """[u, w] for F-coordinate vectors of arbitrary degrees.

    Degree-1 vectors live in F^4, all others in F^2; the result is in
    F^2 coordinates of degree deg_u + deg_w (zero past the class bound).
    """
    F = pres.field
    st = tables(pres)
    if deg_u + deg_w > pres.class_n:
        return (0, 0)
    if deg_w == 1:
        return ad_gen(pres, deg_u, u, f4_to_deg1(w))
    if deg_u == 1:
        img = ad_gen(pres, deg_w, w, f4_to_deg1(u))
        return F.neg(img)
    cu = (u[0], u[1])
    cw = (w[0], w[1])
    return F.mul(F.mul(cu, cw), st.get_vv(deg_u, deg_w))


# -- analysis ----------------------------------------------------------------


@dataclass
class Verdict:
    kind: str  # "thin" | "maximal" | "rconstrained" | "degenerate"
    r_observed: Optional[int] = None
    t1: Optional[int] = None
    r_bound_ok: Optional[bool] = None

    def __str__(self):
        if self.kind == "rconstrained":
            return f"rconstrained(r>={self.r_observed}, t1={self.t1})"
        return self.kind


@dataclass
class SubalgebraAnalysis:
    pres: MaxClassPresentation
    pair: GeneratorPair
    window: int
    bases: Tuple[Tuple[Tuple[int, ...], ...], ...]  # index degree-1, rref rows
    dims: Tuple[int, ...]  # dim_F L_i for i = 1..window
    d: Optional[Tuple[int, ...]]  # d_i for i = 2..window-1; None if degenerate
    D0: Optional[Tuple[int, ...]]
    verdict: Verdict
    centralizers: CentralizerSequence

    @property
    def field(self) -> ExtField:
        return self.pres.field

    def basis(self, degree: int) -> Tuple[Tuple[int, ...], ...]:
        return self.bases[degree - 1]

    def dim(self, degree: int) -> int:
        return self.dims[degree - 1]

    def d_at(self, degree: int) -> int:
        return self.d[degree - 2]

    def space(self, degree: int) -> RowSpace:
        ncols = 4 if degree == 1 else 2
        sp = RowSpace(self.field.base, ncols)
        for r in self.basis(degree):
            sp.insert(r)
        return sp

    def express(self, degree: int, vec: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates of an ambient vector in the canonical L_degree basis."""
        B = self.basis(degree)
        Fb = self.field.base
        # rref rows: the pivot coordinates determine the combination
        pivots = [next(j for j, x in enumerate(r) if x != 0) for r in B]
        coords = tuple(vec[p] % Fb.p for p in pivots)
        recon = [0] * len(vec)
        for c, r in zip(coords, B):
            for j, x in enumerate(r):
                recon[j] = (recon[j] + c * x) % Fb.p
        if list(recon) != [v % Fb.p for v in vec]:
            raise ValueError(f"vector {vec} not in L_{degree}")
        return coords


def _nonzero_coeff_vectors(p: int, dim: int) -> Iterable[Tuple[int, ...]]:
    for coeffs in itertools.product(range(p), repeat=dim):
        if any(coeffs):
            yield coeffs


def _combine(Fb, coeffs, rows, ncols) -> Tuple[int, ...]:
    out = [0] * ncols
    for c, r in zip(coeffs, rows):
        if c:
            for j, x in enumerate(r):
                out[j] = (out[j] + c * x) % Fb.p
    return tuple(out)


def d_sequence(
    pres: MaxClassPresentation, g: GeneratorPair, window: Optional[int] = None
) -> Tuple[int, ...]:
    """d_i = dim_F(C_i \\cap span_F{X, Y}) for i = 2 .. window - 1."""
    F = pres.field
    if g.is_degenerate(F):
        raise DegenerateGenerators("X and Y are E-linearly dependent")
    window = pres.class_n if window is None else window
    seq = two_step_centralizers(pres)
    l1 = RowSpace(F.base, 4)
    l1.insert(deg1_to_f4(g.X))
    l1.insert(deg1_to_f4(g.Y))
    out = []
    for i in range(2, window):
        sp = RowSpace(F.base, 4)
        for r in l1.basis():
            sp.insert(r)
        for r in point_rows_f4(F, seq.point(i)):
            sp.insert(r)
        out.append(4 - sp.dim)
    return tuple(out)


def _classify(d: Sequence[int], dims: Sequence[int], window: int) -> Verdict:
    if all(x == 0 for x in d):
        if dims[1] != 1 or any(dims[i - 1] != 2 for i in range(3, window + 1)):
            raise DimensionAnomaly(f"thin d-sequence with dims {dims}")
        return Verdict(kind="thin")
    if all(x == 1 for x in d):
        if any(dims[i - 1] != 1 for i in range(2, window + 1)):
            raise DimensionAnomaly(f"constant-1 d-sequence with dims {dims}")
        return Verdict(kind="maximal")
    zeros = [i for i, x in zip(range(2, window), d) if x == 0]
    t1 = zeros[0]
    gaps = [b - a for a, b in zip(zeros, zeros[1:])]
    r_observed = max(gaps) if gaps else None
    for i in range(2, window + 1):
        want = 1 if i <= t1 else 2
        if dims[i - 1] != want:
            raise DimensionAnomaly(
                f"non-constant d-sequence, dim L_{i} = {dims[i-1]} != {want}"
            )
    r_bound_ok = (2 <= r_observed <= t1) if r_observed is not None else None
    return Verdict(kind="rconstrained", r_observed=r_observed, t1=t1, r_bound_ok=r_bound_ok)


def classify(analysis: SubalgebraAnalysis) -> Verdict:
    """Recompute the verdict from the stored d-sequence and dimensions."""
    if analysis.d is None:
        raise DegenerateGenerators("analysis of E-dependent generators")
    return _classify(analysis.d, analysis.dims, analysis.window)


def generate_subalgebra(
    pres: MaxClassPresentation, g: GeneratorPair, window: Optional[int] = None
) -> SubalgebraAnalysis:
    """Generate L = <X, Y> degree by degree and classify it within the window."""
    F = pres.field
    Fb = F.base
    window = pres.class_n if window is None else window
    if not 4 <= window <= pres.class_n:
        raise BadBound(f"window {window} not in [4, {pres.class_n}]")
    tables(pres)
    seq = two_step_centralizers(pres)

    l1 = RowSpace(Fb, 4)
    l1.insert(deg1_to_f4(g.X))
    l1.insert(deg1_to_f4(g.Y))
    if g.is_degenerate(F):
        bases = [tuple(l1.basis())] + [tuple()] * (window - 1)
        dims = tuple([l1.dim] + [0] * (window - 1))
        return SubalgebraAnalysis(
            pres=pres,
            pair=g,
            window=window,
            bases=tuple(bases),
            dims=dims,
            d=None,
            D0=None,
            verdict=Verdict(kind="degenerate"),
            centralizers=seq,
        )

    bases: List[Tuple[Tuple[int, ...], ...]] = [tuple(l1.basis())]
    prev = l1
    for i in range(1, window):
        nxt = RowSpace(Fb, 2)
        for r in prev.basis():
            for gen in (g.X, g.Y):
                nxt.insert(ad_gen(pres, i, r, gen))
        bases.append(tuple(nxt.basis()))
        prev = nxt
    dims = tuple(len(b) for b in bases)
    d = d_sequence(pres, g, window)
    D0 = tuple(i for i, x in zip(range(2, window), d) if x == 0)
    verdict = _classify(d, dims, window)
    return SubalgebraAnalysis(
        pres=pres,
        pair=g,
        window=window,
        bases=tuple(bases),
        dims=dims,
        d=d,
        D0=D0,
        verdict=verdict,
        centralizers=seq,
    )


# -- brute-force verifiers ---------------------------------------------------


@dataclass
class CoveringReport:
    ok: bool
    first_failure: Optional[Tuple[int, Tuple[int, ...]]]  # (degree, coefficients)


def _brute_force_guard(p: int, window: int) -> None:
    if (p**2) * window > BRUTE_FORCE_LIMIT:
        raise WindowTooLargeForBruteForce(
            f"~{p**2 * window} element checks exceed limit {BRUTE_FORCE_LIMIT}"
        )


def verify_covering(
    pres: MaxClassPresentation, analysis: SubalgebraAnalysis
) -> CoveringReport:
    """Exhaustively check [u, L_1] = L_{i+1} for every nonzero homogeneous u."""
    if analysis.d is None:
        raise DegenerateGenerators("covering check needs independent generators")
    F = pres.field
    Fb = F.base
    g = analysis.pair
    _brute_force_guard(Fb.p, analysis.window)
    for i in range(1, analysis.window):
        rows = analysis.basis(i)
        ncols = 4 if i == 1 else 2
        target = analysis.space(i + 1)
        for coeffs in _nonzero_coeff_vectors(Fb.p, len(rows)):
            u = _combine(Fb, coeffs, rows, ncols)
            img = RowSpace(Fb, 2)
            img.insert(ad_gen(pres, i, u, g.X))
            img.insert(ad_gen(pres, i, u, g.Y))
            if not (img.dim == target.dim and target.contains_space(img)):
                return CoveringReport(ok=False, first_failure=(i, coeffs))
    return CoveringReport(ok=True, first_failure=None)


@dataclass
class SandwichReport:
    ok: bool
    r: int
    witness: Optional[Tuple[int, Tuple[int, ...], int]]  # (degree, coeffs, missing degree)


def ideal_closure(
    pres: MaxClassPresentation,
    analysis: SubalgebraAnalysis,
    degree: int,
    vec: Sequence[int],
) -> Dict[int, RowSpace]:
    """Span of the ideal of L generated by a homogeneous element.

    Closure under ad X, ad Y and F-spans suffices because L is generated
    in degree 1; stability under bracketing with all of L is a tested
    property, not an assumption.
    """
    Fb = pres.field.base
    g = analysis.pair
    spans: Dict[int, RowSpace] = {}
    for h in range(degree, analysis.window + 1):
        spans[h] = RowSpace(Fb, 4 if h == 1 else 2)
    spans[degree].insert(vec)
    work = [(degree, tuple(vec))]
    while work:
        h, u = work.pop()
        if h + 1 > analysis.window:
            continue
        for gen in (g.X, g.Y):
            w = ad_gen(pres, h, u, gen)
            if spans[h + 1].insert(w):
                work.append((h + 1, w))
    return spans


def verify_ideal_sandwich(
    pres: MaxClassPresentation, analysis: SubalgebraAnalysis, r: int
) -> SandwichReport:
    """Check that every homogeneous ideal generator reaches r degrees down.

    For each degree i <= window - r and each nonzero l in L_i, the ideal
    generated by l must contain every L_h with i + r <= h <= window.
    """
    if analysis.d is None:
        raise DegenerateGenerators("sandwich check needs independent generators")
    if r < 1:
        raise BadBound("r must be >= 1")
    Fb = pres.field.base
    _brute_force_guard(Fb.p, analysis.window)
    for i in range(1, analysis.window - r + 1):
        rows = analysis.basis(i)
        ncols = 4 if i == 1 else 2
        for coeffs in _nonzero_coeff_vectors(Fb.p, len(rows)):
            l = _combine(Fb, coeffs, rows, ncols)
            spans = ideal_closure(pres, analysis, i, l)
            for h in range(i + r, analysis.window + 1):
                target = analysis.basis(h)
                if not all(spans[h].contains(row) for row in target):
                    return SandwichReport(ok=False, r=r, witness=(i, coeffs, h))
    return SandwichReport(ok=True, r=r, witness=None)


# -- normal form -------------------------------------------------------------


@dataclass
class NormalizationResult:
    pair: GeneratorPair
    presentation: MaxClassPresentation
    transform: Matrix  # degree-1 base change applied to the presentation
    complete: bool
    note: str


def normalize_generators(
    pres: MaxClassPresentation, g: GeneratorPair
) -> NormalizationResult:
    """Move an E-independent pair into the form X = x + y, Y = mu*x + delta*y.

    Uses the graded automorphism scaling degree i by alpha^{-i} (which
    fixes the presentation), an F-shear and F-scaling of Y, and finally a
    rescaling of the ambient y (which changes the presentation by a
    recorded degree-1 base change).  When a step's precondition fails the
    partial form reached so far is returned with ``complete=False``.
    """
    F = pres.field
    if g.is_degenerate(F):
        raise DegenerateGenerators("cannot normalize an E-dependent pair")
    if not is_standard(pres):
        raise NotStandardForm("normalization expects a standard-form presentation")
    ident = Matrix(F, [[F.one, F.zero], [F.zero, F.one]])
    al, be = g.X
    ga, de = g.Y
    if F.is_zero(al):
        return NormalizationResult(g, pres, ident, False, "alpha = 0: X lies in Ey")
    inv_al = F.inv(al)
    be = F.mul(inv_al, be)
    ga = F.mul(inv_al, ga)
    de = F.mul(inv_al, de)
    # X is now x + beta*y; make gamma equal mu via an F-shear and F-scaling.
    if F.in_base(ga):
        return NormalizationResult(
            GeneratorPair((F.one, be), (ga, de)),
            pres,
            ident,
            False,
            "gamma in F after scaling: L_1 meets Ey",
        )
    g0, g1 = ga
    f = F.base.inv(g1)
    ga = F.scale(f, F.sub(ga, F.embed(g0)))  # = mu
    de = F.scale(f, F.sub(de, F.mul(F.embed(g0), be)))
    if F.is_zero(be):
        return NormalizationResult(
            GeneratorPair((F.one, be), (ga, de)),
            pres,
            ident,
            False,
            "beta = 0: X = x, no y-rescale possible",
        )
    # Rescale the ambient y by beta; in the new basis X = x' + y'.
    pres2 = apply_degree1_change(pres, (F.one, F.zero), (F.zero, be))
    transform = Matrix(F, [[F.one, F.zero], [F.zero, be]])
    de2 = F.div(de, be)
    pair2 = GeneratorPair((F.one, F.one), (F.mu, de2))
    complete = not F.in_base(de2)
    note = "" if complete else "delta in F: pair cannot be thin"
    return NormalizationResult(pair2, pres2, transform, complete, note)


# -- the line criterion and the scan ------------------------------------------


@dataclass
class LineCriterionResult:
    script_l: Tuple[EElem, ...]  # lambdas of centralizers E(x + lambda*y) in window
    ey_occurs: bool
    affine_line: Optional[Tuple[EElem, ...]]  # {t*b + (1-t)*d : t in F}
    visible: Tuple[EElem, ...]  # lambdas of E-lines actually meeting span_F{X, Y}
    ey_condition: bool
    avoided: bool


def _f_independent(field: ExtField, u: EElem, w: EElem) -> bool:
    return (u[0] * w[1] - u[1] * w[0]) % field.p != 0


def visible_lambdas(field: ExtField, g: GeneratorPair) -> Tuple[Tuple[EElem, ...], bool]:
    """All lambda with span_F{X, Y} meeting E(x + lambda*y), plus an Ey flag.

    span_F{X, Y} meets the line of x + lambda*y iff lambda is the ratio
    (s*beta + t*delta)/(s*alpha + t*gamma) for some (s : t) in P^1(F); it
    meets Ey iff some denominator vanishes, i.e. alpha, gamma are
    F-dependent.  The lambda set is the image of P^1(F) under an injective
    Moebius map, so it has exactly |F| + 1 elements when Ey is avoided.
    """
    F = field
    (al, be), (ga, de) = g.X, g.Y
    meets_ey = not _f_independent(F, al, ga)
    lams = set()
    for s, t in [(1, t) for t in range(F.p)] + [(0, 1)]:
        den = F.add(F.scale(s, al), F.scale(t, ga))
        if F.is_zero(den):
            continue
        num = F.add(F.scale(s, be), F.scale(t, de))
        lams.add(F.div(num, den))
    return tuple(sorted(lams, key=F.key)), meets_ey


def thin_line_criterion(
    pres: MaxClassPresentation, g: GeneratorPair, window: Optional[int] = None
) -> LineCriterionResult:
    """Decide thinness from centralizer data alone.

    The span of X and Y avoids every two-step centralizer inside the
    window iff (a) alpha, gamma are F-independent (the Ey condition) and
    (b) no lambda of an occurring centralizer is visible from the pair.
    The affine F-line through alpha^{-1}beta and gamma^{-1}delta is also
    reported; it shares only those two points with the visible lambda set,
    so it is a diagnostic, not the criterion itself.
    """
    F = pres.field
    if g.is_degenerate(F):
        raise DegenerateGenerators("criterion needs E-independent generators")
    if not is_standard(pres):
        raise NotStandardForm("criterion expects a standard-form presentation")
    window = pres.class_n if window is None else window
    seq = two_step_centralizers(pres)
    ey = ey_point(F)
    script_l = []
    ey_occurs = False
    seen = set()
    for i in range(2, window):
        pt = seq.point(i)
        if pt == ey:
            ey_occurs = True
        elif pt not in seen:
            seen.add(pt)
            script_l.append(pt[1])  # normalized (1 : lambda)
    script_l.sort(key=F.key)
    (al, be), (ga, de) = g.X, g.Y
    visible, meets_ey = visible_lambdas(F, g)
    affine = None
    if not F.is_zero(al) and not F.is_zero(ga):
        b = F.div(be, al)
        dl = F.div(de, ga)
        line = set()
        for t in range(F.p):
            line.add(F.add(F.scale(t, b), F.scale((1 - t) % F.p, dl)))
        affine = tuple(sorted(line, key=F.key))
    ey_condition = not meets_ey
    avoided = ey_condition and not (set(visible) & set(script_l))
    return LineCriterionResult(
        script_l=tuple(script_l),
        ey_occurs=ey_occurs,
        affine_line=affine,
        visible=visible,
        ey_condition=ey_condition,
        avoided=avoided,
    )


def normalized_pairs(field: ExtField) -> List[GeneratorPair]:
    """Canonical representatives X = x + beta*y, Y = mu*x + delta*y."""
    out = []
    for be in field.elements():
        for de in field.elements():
            out.append(GeneratorPair((field.one, be), (field.mu, de)))
    return out


def raw_pairs(field: ExtField) -> Iterable[GeneratorPair]:
    elems = list(field.elements())
    for al in elems:
        for be in elems:
            for ga in elems:
                for de in elems:
                    if al == ga == (0, 0) and be == de == (0, 0):
                        continue
                    yield GeneratorPair((al, be), (ga, de))


@dataclass
class ScanTable:
    window: int
    mode: str  # "normalized" | "raw"
    total: int
    counts: Dict[str, int]
    rconstrained_gaps: Dict[str, int]
    thin_direct: int
    thin_by_lines: Optional[int]  # only computed in normalized mode
    agree: Optional[bool]


def count_thin_by_line_avoidance(
    pres: MaxClassPresentation, window: Optional[int] = None
) -> int:
    """Count thin normalized pairs combinatorially, without generating L.

    A normalized pair (beta, delta) is thin iff it is E-independent
    (delta != mu*beta) and, for every lambda with E(x + lambda*y) an
    occurring centralizer, the extension elements beta - lambda and
    delta - lambda*mu are F-independent.  The Ey condition holds for every
    normalized pair since (1, mu) is an F-independent pair.
    """
    F = pres.field
    window = pres.class_n if window is None else window
    seq = two_step_centralizers(pres)
    lams = []
    seen = set()
    for i in range(2, window):
        pt = seq.point(i)
        if pt != ey_point(F) and pt not in seen:
            seen.add(pt)
            lams.append(pt[1])
    count = 0
    for be in F.elements():
        for de in F.elements():
            if de == F.mul(F.mu, be):
                continue
            if all(
                _f_independent(F, F.sub(be, lam), F.sub(de, F.mul(lam, F.mu)))
                for lam in lams
            ):
                count += 1
    return count


def scan(
    pres: MaxClassPresentation,
    window: Optional[int] = None,
    raw: bool = False,
    max_workers: Optional[int] = None,
) -> ScanTable:
    """Classify every canonical generator pair and tabulate the verdicts.

    In normalized mode the direct thin count is cross-checked against the
    independent line-avoidance count; the two totals must agree exactly.
    """
    F = pres.field
    if not is_standard(pres):
        raise NotStandardForm("scan expects a standard-form presentation")
    window = pres.class_n if window is None else window
    pairs = list(raw_pairs(F)) if raw else normalized_pairs(F)

    def verdict_of(g: GeneratorPair) -> Verdict:
        if g.is_degenerate(F):
            return Verdict(kind="degenerate")
        return generate_subalgebra(pres, g, window).verdict

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as ex:
            verdicts = list(ex.map(verdict_of, pairs))
    else:
        verdicts = [verdict_of(g) for g in pairs]

    counts = {"thin": 0, "maximal": 0, "rconstrained": 0, "degenerate": 0}
    gaps: Dict[str, int] = {}
    for v in verdicts:
        counts[v.kind] += 1
        if v.kind == "rconstrained":
            key = str(v.r_observed) if v.r_observed is not None else "unobserved"
            gaps[key] = gaps.get(key, 0) + 1
    thin_by_lines = None
    agree = None
    if not raw:
        thin_by_lines = count_thin_by_line_avoidance(pres, window)
        agree = thin_by_lines == counts["thin"]
    return ScanTable(
        window=window,
        mode="raw" if raw else "normalized",
        total=len(pairs),
        counts=counts,
        rconstrained_gaps=dict(sorted(gaps.items())),
        thin_direct=counts["thin"],
        thin_by_lines=thin_by_lines,
        agree=agree,
    )
