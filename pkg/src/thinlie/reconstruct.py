"""Rebuilding a maximal-class algebra over GF(p^2) from a thin GF(p)-subalgebra.

Starting from a thin subalgebra T whose degree-0 endomorphism ring of T^3
is a quadratic extension, the adjoint action of T on a distinguished
graded ideal is written out as matrices over the extension and the span
N = E * rho(T) is assembled.  Within a usable window (the truncation eats
the top few degrees), N has the maximal-class dimension pattern over E
and an adjoint presentation can be extracted and compared against the
ambient algebra.

The representation objects here are "shift maps": a homogeneous element
of degree d acts on slots indexed by degree, sending the slot of degree s
to the slot of degree s + d with a single extension coefficient.  That is
the whole content of the block matrices, because every slot is a
one-dimensional extension line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DimensionAnomaly,
    NotEStable,
    NotFaithful,
    NotMetabelian,
    PreconditionFailed,
    WindowTooLargeForBruteForce,
    WindowTooSmall,
)
from .gf import EElem, ExtField, Matrix, RowSpace
from .maxclass import (
    MaxClassPresentation,
    quotient,
    standard_generators,
    tables,
    two_step_centralizers,
    validate,
)
from .subfield import (
    GeneratorPair,
    SubalgebraAnalysis,
    bracket_vec,
    deg1_to_f4,
    f4_to_deg1,
    generate_subalgebra,
)
from .endo import EndoRing, FieldId, compute_grend0, identify_field

ShiftMap = Dict[int, EElem]  # source degree -> coefficient; target = source + d

ISO_SEARCH_FIELD_LIMIT = 9
ISO_SEARCH_WINDOW_LIMIT = 20


# ---------------------------------------------------------------------------
# Structure detection
# ---------------------------------------------------------------------------


@dataclass
class StructureFlags:
    metabelian: bool
    k: int  # T^k is the ideal the representation acts on
    z_degree: int  # = k - 1
    detection: str  # "metabelian" | "abelian-window" | "insoluble-or-undetected"


def detect_structure(
    analysis: SubalgebraAnalysis, window: Optional[int] = None
) -> StructureFlags:
    """Decide the representation branch from bracket vanishing in the window.

    `metabelian` is an exhaustive [T_i, T_j] = 0 check for i, j >= 2.  For
    the non-metabelian case, k is the least bound whose tail T^k brackets
    all vanish with at least one nontrivial pair visible (2k + 1 <= window);
    without such a k, a witnessed nonzero bracket in T^3 selects the
    insoluble surrogate k = 3, and with no witness either way the window
    is declared too small.
    """
    if analysis.verdict.kind != "thin":
        raise PreconditionFailed("structure detection expects a thin subalgebra")
    window = analysis.window if window is None else window
    F = analysis.field
    st = tables(analysis.pres)

    def tail_abelian(k: int) -> bool:
        for i in range(k, window):
            for j in range(i + 1, window - i + 1):
                if not F.is_zero(st.get_vv(i, j)):
                    return False
        return True

    if tail_abelian(2):
        return StructureFlags(metabelian=True, k=2, z_degree=1, detection="metabelian")
    for k in range(3, (window - 1) // 2 + 1):
        if tail_abelian(k):
            return StructureFlags(
                metabelian=False, k=k, z_degree=k - 1, detection="abelian-window"
            )
    witnessed = any(
        not F.is_zero(st.get_vv(i, j))
        for i in range(3, window)
        for j in range(i + 1, window - i + 1)
    )
    if witnessed:
        return StructureFlags(
            metabelian=False, k=3, z_degree=2, detection="insoluble-or-undetected"
        )
    raise WindowTooSmall(
        "no abelian tail confirmed and no nonzero bracket witnessed in T^3"
    )


# ---------------------------------------------------------------------------
# Shift-map helpers
# ---------------------------------------------------------------------------


def _map_scale(field: ExtField, e: EElem, m: ShiftMap) -> ShiftMap:
    return {s: field.mul(e, c) for s, c in m.items()}

def _map_add(field: ExtField, m1: ShiftMap, m2: ShiftMap) -> ShiftMap:
    out = dict(m1)
    for s, c in m2.items():
        out[s] = field.add(out.get(s, field.zero), c)
    return out


def _map_is_zero(field: ExtField, m: ShiftMap) -> bool:
    return all(field.is_zero(c) for c in m.values())


def _commutator(
    field: ExtField,
    slots_min: int,
    window: int,
    m1: ShiftMap,
    d1: int,
    m2: ShiftMap,
    d2: int,
) -> ShiftMap:
    """The matrix commutator [m1, m2] of two shift maps.

    Shift maps record the right adjoint action w -> [w, t], which is a
    Lie homomorphism in the row-vector convention: the product m1*m2
    applies m1 first.  Entry at slot s is therefore
    m1[s]*m2[s+d1] - m2[s]*m1[s+d2].
    """
    out: ShiftMap = {}
    for s in range(slots_min, window - d1 - d2 + 1):
        first = field.zero
        c1 = m1.get(s)
        if c1 is not None:
            c2 = m2.get(s + d1)
            if c2 is not None:
                first = field.mul(c1, c2)
        second = field.zero
        c2 = m2.get(s)
        if c2 is not None:
            c1b = m1.get(s + d2)
            if c1b is not None:
                second = field.mul(c2, c1b)
        out[s] = field.sub(first, second)
    return out


def _proportionality(
    field: ExtField, m1: ShiftMap, m2: ShiftMap
) -> Optional[EElem]:
    """e with m2 = e*m1 on the common domain, or None if m1 is zero."""
    ref = None
    for s in sorted(m1):
        if not field.is_zero(m1[s]):
            ref = s
            break
    if ref is None:
        return None
    e = field.div(m2.get(ref, field.zero), m1[ref])
    for s in sorted(set(m1) | set(m2)):
        lhs = m2.get(s, field.zero)
        rhs = field.mul(e, m1.get(s, field.zero))
        if lhs != rhs:
            raise DimensionAnomaly("maps are not proportional over the extension")
    return e


# ---------------------------------------------------------------------------
# The representations
# ---------------------------------------------------------------------------


@dataclass
class RhoRep:
    branch: str  # "rho" | "rho_prime"
    k: int
    window: int
    slots_min: int  # slots are the contiguous degrees [slots_min, window]
    analysis: SubalgebraAnalysis
    images: Dict[Tuple[int, int], ShiftMap]  # (degree, basis row index) -> map
    max_degree: int  # largest t-degree with stored images

    def image(self, degree: int, row: int) -> ShiftMap:
        return self.images[(degree, row)]


def _e_of(analysis: SubalgebraAnalysis, degree: int, vec: Sequence[int]) -> EElem:
    """Extension coefficient of an ambient vector against the chosen w-basis.

    Components of degree >= 3 of a thin subalgebra fill the whole ambient
    line, which is one-dimensional over the extension, so any vector is an
    extension multiple of the first basis row.
    """
    F = analysis.field
    w = analysis.basis(degree)[0]
    return F.div((vec[0], vec[1]), (w[0], w[1]))


def _check_e_structure(analysis: SubalgebraAnalysis, lo: int, window: int) -> None:
    F = analysis.field
    for m in range(lo, window + 1):
        if analysis.dim(m) != 2:
            raise NotEStable(f"component of degree {m} is not an extension line")
        sp = analysis.space(m)
        for row in analysis.basis(m):
            scaled = F.mul(F.mu, (row[0], row[1]))
            if not sp.contains(list(scaled)):
                raise NotEStable(f"degree {m} is not stable under the scalar action")


def _check_rep(rep: RhoRep) -> None:
    """Homomorphism property on basis pairs, and per-degree faithfulness.

    Both checks stop at window - k: beyond that the maps act through so
    few visible slots that truncation alone can fake a kernel.
    """
    an = rep.analysis
    F = an.field
    pres = an.pres
    cap = rep.window - rep.k
    # faithfulness: the flattened maps of each degree must be independent
    for d in range(1, cap + 1):
        rows = []
        for r in range(an.dim(d)):
            m = rep.image(d, r)
            flat: List[int] = []
            for s in range(rep.slots_min, rep.window + 1):
                c = m.get(s, F.zero)
                flat.extend(c)
            rows.append(flat)
        sp = RowSpace(F.base, len(rows[0]))
        for row in rows:
            sp.insert(row)
        if sp.dim != an.dim(d):
            raise NotFaithful(f"representation has a kernel in degree {d}")
    # homomorphism: rho([t, t']) equals the commutator of the images
    for d1 in range(1, cap + 1):
        for d2 in range(d1, cap + 1):
            if d1 + d2 > cap:
                continue
            for r1 in range(an.dim(d1)):
                for r2 in range(an.dim(d2)):
                    if d1 == d2 and r2 <= r1:
                        continue
                    u = an.basis(d1)[r1]
                    w = an.basis(d2)[r2]
                    lie = bracket_vec(pres, d1, u, d2, w)
                    coords = an.express(d1 + d2, lie)
                    want: ShiftMap = {}
                    for c, idx in zip(coords, range(an.dim(d1 + d2))):
                        if c:
                            want = _map_add(
                                F,
                                want,
                                _map_scale(
                                    F, F.embed(c), rep.image(d1 + d2, idx)
                                ),
                            )
                    got = _commutator(
                        F,
                        rep.slots_min,
                        rep.window,
                        rep.image(d1, r1),
                        d1,
                        rep.image(d2, r2),
                        d2,
                    )
                    lo = rep.slots_min
                    hi = rep.window - d1 - d2
                    for s in range(lo, hi + 1):
                        if want.get(s, F.zero) != got.get(s, F.zero):
                            raise DimensionAnomaly(
                                f"rho([t,t']) != [rho(t), rho(t')] at degrees "
                                f"({d1},{d2}), slot {s}"
                            )


def build_rho(
    analysis: SubalgebraAnalysis,
    ring: EndoRing,
    field_id: FieldId,
    flags: StructureFlags,
) -> RhoRep:
    """Adjoint representation on the extension span of z plus the ideal T^k."""
    if flags.metabelian:
        raise PreconditionFailed("metabelian input belongs to the modified branch")
    if field_id.dim != 2:
        raise PreconditionFailed("construction needs a quadratic endomorphism field")
    an = analysis
    F = an.field
    window = an.window
    k = flags.k
    _check_e_structure(an, k, window)
    z = an.basis(k - 1)[0]
    slots_min = k - 1
    max_degree = window - slots_min
    images: Dict[Tuple[int, int], ShiftMap] = {}
    for d in range(1, max_degree + 1):
        for r, t in enumerate(an.basis(d)):
            m: ShiftMap = {}
            if (k - 1) + d <= window:
                img = bracket_vec(an.pres, k - 1, z, d, t)
                m[k - 1] = _e_of(an, k - 1 + d, img)
            for s in range(k, window - d + 1):
                img = bracket_vec(an.pres, s, an.basis(s)[0], d, t)
                m[s] = _e_of(an, s + d, img)
            images[(d, r)] = m
    rep = RhoRep(
        branch="rho",
        k=k,
        window=window,
        slots_min=slots_min,
        analysis=an,
        images=images,
        max_degree=max_degree,
    )
    _check_rep(rep)
    return rep


def build_rho_prime(analysis: SubalgebraAnalysis, ring: EndoRing, field_id: FieldId) -> RhoRep:
    """The modified representation for metabelian T, on E + E + T^3.

    The two extension slots stand for the lines of Y and of [Y, X]; a
    degree-1 element alpha*X + beta*Y sends the Y-slot to alpha times the
    [Y,X]-slot, and everything else is the adjoint action.
    """
    an = analysis
    F = an.field
    pres = an.pres
    window = an.window
    st = tables(pres)
    non_ab = any(
        not F.is_zero(st.get_vv(i, j))
        for i in range(2, window)
        for j in range(i + 1, window - i + 1)
    )
    if non_ab:
        raise NotMetabelian("T has a nonzero bracket in T^2 within the window")
    if field_id.dim != 2:
        raise PreconditionFailed("construction needs a quadratic endomorphism field")
    _check_e_structure(an, 3, window)
    X4 = deg1_to_f4(an.pair.X)
    Y4 = deg1_to_f4(an.pair.Y)
    gen_space = RowSpace(F.base, 4)
    gen_space.insert(X4)
    gen_space.insert(Y4)
    yx = bracket_vec(pres, 1, Y4, 1, X4)  # spans T_2
    slots_min = 1
    max_degree = window - 1
    images: Dict[Tuple[int, int], ShiftMap] = {}
    for d in range(1, max_degree + 1):
        for r, t in enumerate(an.basis(d)):
            m: ShiftMap = {}
            if d == 1:
                alpha, _ = _coords_in_pair(F.base, X4, Y4, t)
                m[1] = F.embed(alpha)
            else:
                if 1 + d <= window:
                    img = bracket_vec(pres, 1, Y4, d, t)
                    m[1] = _e_of(an, 1 + d, img)
            if 2 + d <= window:
                img = bracket_vec(pres, 2, yx, d, t)
                m[2] = _e_of(an, 2 + d, img)
            for s in range(3, window - d + 1):
                img = bracket_vec(pres, s, an.basis(s)[0], d, t)
                m[s] = _e_of(an, s + d, img)
            images[(d, r)] = m
    rep = RhoRep(
        branch="rho_prime",
        k=2,
        window=window,
        slots_min=slots_min,
        analysis=an,
        images=images,
        max_degree=max_degree,
    )
    _check_rep(rep)
    return rep


def _coords_in_pair(Fb, X4, Y4, vec) -> Tuple[int, int]:
    """Solve vec = a*X + b*Y over GF(p) in the degree-1 coordinates."""
    p = Fb.p
    for a in range(p):
        for b in range(p):
            if all((a * x + b * y - v) % p == 0 for x, y, v in zip(X4, Y4, vec)):
                return a, b
    raise DimensionAnomaly("degree-1 vector outside the span of the generators")


# ---------------------------------------------------------------------------
# Assembly and the round trip
# ---------------------------------------------------------------------------


@dataclass
class ReconstructedAlgebra:
    rep: RhoRep
    usable_window: int
    dims: Dict[int, int]  # dim_E N_d within the usable window
    presentation: MaxClassPresentation  # extracted, class = usable_window
    x_map: ShiftMap
    y_map: ShiftMap


def _flatten_map(field: ExtField, rep: RhoRep, m: ShiftMap) -> List[EElem]:
    return [m.get(s, field.zero) for s in range(rep.slots_min, rep.window + 1)]


def assemble_N(rep: RhoRep) -> ReconstructedAlgebra:
    """Assemble N = E*rho(T), check its dimension pattern, extract a presentation.

    Truncation eats the top degrees, so every assertion is restricted to
    the usable window (class bound minus k + 1 degrees).
    """
    an = rep.analysis
    F = an.field
    usable = rep.window - rep.k - 1
    if usable < 4:
        raise WindowTooSmall(f"usable window {usable} is below the minimum class 4")
    dims: Dict[int, int] = {}
    for d in range(1, usable + 1):
        sp = RowSpace(F, rep.window - rep.slots_min + 1)
        for r in range(an.dim(d)):
            sp.insert(_flatten_map(F, rep, rep.image(d, r)))
        dims[d] = sp.dim
        want = 2 if d == 1 else 1
        if sp.dim != want:
            raise DimensionAnomaly(
                f"dim_E N_{d} = {sp.dim}, expected {want} inside the usable window"
            )
    # [N_d, N_1] = N_{d+1} within the usable window
    x_map = rep.image(1, 0)
    y_map = rep.image(1, 1)
    for d in range(1, usable):
        target = RowSpace(F, rep.window - rep.slots_min + 1)
        for r in range(an.dim(d + 1)):
            target.insert(_flatten_map(F, rep, rep.image(d + 1, r)))
        got = RowSpace(F, rep.window - rep.slots_min + 1)
        for r in range(an.dim(d)):
            for gen_map in (x_map, y_map):
                comm = _commutator(
                    F, rep.slots_min, rep.window, rep.image(d, r), d, gen_map, 1
                )
                got.insert(_flatten_map(F, rep, comm))
        if not (got.dim == target.dim and target.contains_space(got)):
            raise DimensionAnomaly(f"[N_{d}, N_1] != N_{d + 1}")
    # extract an adjoint presentation from the matrix algebra
    xN, yN = x_map, y_map
    v = _commutator(F, rep.slots_min, rep.window, yN, 1, xN, 1)  # v_2 = [y, x]
    pairs = []
    deg = 2
    while deg <= usable - 1:
        bx = _commutator(F, rep.slots_min, rep.window, v, deg, xN, 1)
        by = _commutator(F, rep.slots_min, rep.window, v, deg, yN, 1)
        if not _map_is_zero(F, bx):
            b_coeff = _proportionality(F, bx, by)
            pairs.append((F.one, b_coeff if b_coeff is not None else F.zero))
            v = bx
        else:
            pairs.append((F.zero, F.one))
            v = by
        deg += 1
    extracted = MaxClassPresentation(F, usable, tuple(pairs))
    report = validate(extracted)
    if not report.ok:
        raise DimensionAnomaly(
            f"extracted presentation fails Jacobi at {report.first_failure}"
        )
    return ReconstructedAlgebra(
        rep=rep,
        usable_window=usable,
        dims=dims,
        presentation=extracted,
        x_map=x_map,
        y_map=y_map,
    )


@dataclass
class RoundtripReport:
    branch: str
    k: int
    usable_window: int
    iso: bool
    first_failure: Optional[str]
    centralizers_match: bool

    def to_json(self) -> dict:
        return {
            "branch": self.branch,
            "k": self.k,
            "usable_window": self.usable_window,
            "iso": self.iso,
            "first_failure": self.first_failure,
        }


def verify_roundtrip(
    pres: MaxClassPresentation, g: GeneratorPair, window: Optional[int] = None
) -> RoundtripReport:
    """Full pipeline: thin subalgebra, endomorphism field, rho, N, and phi.

    phi extends rho linearly over the extension on per-degree bases of the
    ambient algebra and is checked to be a per-degree bijective graded
    homomorphism onto N within the usable window.
    """
    window = pres.class_n if window is None else window
    analysis = generate_subalgebra(pres, g, window)
    if analysis.verdict.kind != "thin":
        raise PreconditionFailed(
            f"round trip needs a thin pair, got {analysis.verdict.kind}"
        )
    ring = compute_grend0(analysis, 3, window)
    field_id = identify_field(ring)
    if field_id.dim != 2:
        raise PreconditionFailed("endomorphism field has degree 1, cannot rebuild")
    flags = detect_structure(analysis, window)
    if flags.metabelian:
        rep = build_rho_prime(analysis, ring, field_id)
    else:
        rep = build_rho(analysis, ring, field_id, flags)
    recon = assemble_N(rep)
    F = pres.field
    usable = recon.usable_window

    # phi on degree 1: solve x and y as extension combinations of the rows
    r1, r2 = analysis.basis(1)
    (a1, b1), (a2, b2) = f4_to_deg1(r1), f4_to_deg1(r2)
    det = F.sub(F.mul(a1, b2), F.mul(b1, a2))
    det_inv = F.inv(det)
    rho1 = rep.image(1, 0)
    rho2 = rep.image(1, 1)

    def comb(e1: EElem, e2: EElem) -> ShiftMap:
        return _map_add(F, _map_scale(F, e1, rho1), _map_scale(F, e2, rho2))

    phi: Dict[int, ShiftMap] = {}
    phi_x = comb(F.mul(b2, det_inv), F.neg(F.mul(b1, det_inv)))
    phi_y = comb(F.neg(F.mul(a2, det_inv)), F.mul(a1, det_inv))
    for i in range(2, usable + 1):
        l_i = analysis.basis(i)[0]
        eps = (l_i[0], l_i[1])
        phi[i] = _map_scale(F, F.inv(eps), rep.image(i, 0))
        if _map_is_zero(F, phi[i]):
            return RoundtripReport(
                branch=rep.branch,
                k=rep.k,
                usable_window=usable,
                iso=False,
                first_failure=f"phi(v{i}) = 0",
                centralizers_match=False,
            )

    st = tables(pres)

    def phi_of(idx: int) -> Tuple[ShiftMap, int]:
        if idx == 0:
            return phi_x, 1
        if idx == 1:
            return phi_y, 1
        return phi[idx], idx

    first_failure = None
    basis_ids = [0, 1] + list(range(2, usable + 1))
    for n1, s in enumerate(basis_ids):
        for t in basis_ids[n1 + 1 :]:
            ms, ds = phi_of(s)
            mt, dt = phi_of(t)
            if ds + dt > usable:
                continue
            res = st.bk(s, t)
            want: ShiftMap = {}
            if res is not None and not F.is_zero(res[0]):
                coeff, tgt = res
                want = _map_scale(F, coeff, phi[tgt])
            got = _commutator(F, rep.slots_min, rep.window, ms, ds, mt, dt)
            lo, hi = rep.slots_min, rep.window - ds - dt
            for sl in range(lo, hi + 1):
                if want.get(sl, F.zero) != got.get(sl, F.zero):
                    first_failure = (
                        f"phi([{_label(s)},{_label(t)}]) mismatch at slot {sl}"
                    )
                    break
            if first_failure:
                break
        if first_failure:
            break

    seq_n = two_step_centralizers(
        standard_generators(recon.presentation).presentation
    )
    seq_m = two_step_centralizers(
        standard_generators(quotient(pres, usable)).presentation
    )
    centralizers_match = seq_n.points == seq_m.points
    return RoundtripReport(
        branch=rep.branch,
        k=rep.k,
        usable_window=usable,
        iso=first_failure is None,
        first_failure=first_failure,
        centralizers_match=centralizers_match,
    )


def _label(idx: int) -> str:
    return "x" if idx == 0 else "y" if idx == 1 else f"v{idx}"


# ---------------------------------------------------------------------------
# Brute-force graded isomorphism search
# ---------------------------------------------------------------------------


@dataclass
class IsoResult:
    found: bool
    transform: Optional[Matrix]  # degree-1 base change, rows over the extension


def iso_search(
    pres_a: MaxClassPresentation,
    pres_b: MaxClassPresentation,
    window: Optional[int] = None,
) -> IsoResult:
    """Brute-force search for a graded isomorphism between two presentations.

    Degree-1 base changes are enumerated projectively (the first nonzero
    coordinate normalized to 1); each candidate is extended degree by
    degree through the canonical chains and certified on all basis pairs.
    """
    if pres_a.field != pres_b.field:
        raise PreconditionFailed("presentations live over different fields")
    F = pres_a.field
    window = min(pres_a.class_n, pres_b.class_n) if window is None else window
    if F.order > ISO_SEARCH_FIELD_LIMIT and window > ISO_SEARCH_WINDOW_LIMIT:
        raise WindowTooLargeForBruteForce(
            f"|E| = {F.order} with window {window} exceeds the search budget"
        )
    A = quotient(pres_a, window) if pres_a.class_n != window else pres_a
    B = quotient(pres_b, window) if pres_b.class_n != window else pres_b
    sta, stb = tables(A), tables(B)
    elems = list(F.elements())

    def is_canonical(quad) -> bool:
        for c in quad:
            if not F.is_zero(c):
                return c == F.one
        return False

    for a1 in elems:
        for b1 in elems:
            for a2 in elems:
                for b2 in elems:
                    quad = (a1, b1, a2, b2)
                    if not is_canonical(quad):
                        continue
                    det = F.sub(F.mul(a1, b2), F.mul(b1, a2))
                    if F.is_zero(det):
                        continue
                    if _extends(F, sta, stb, window, a1, b1, a2, b2):
                        return IsoResult(
                            found=True,
                            transform=Matrix(F, [[a1, b1], [a2, b2]]),
                        )
    return IsoResult(found=False, transform=None)


def _extends(F, sta, stb, window, a1, b1, a2, b2) -> bool:
    """Try to extend x -> a1 x + b1 y, y -> a2 x + b2 y to a graded iso."""
    # phi(v_i) = s_i * v_i in B-coordinates; s_2 from [phi(y), phi(x)]
    s2 = F.sub(F.mul(b2, a1), F.mul(a2, b1))
    scales = {2: s2}
    for i in range(2, window):
        ai, bi = sta.coeff_a(i), sta.coeff_b(i)
        # images of [phi(v_i), phi(x)] and [phi(v_i), phi(y)] in B
        px = F.mul(scales[i], F.add(F.mul(a1, stb.coeff_a(i)), F.mul(b1, stb.coeff_b(i))))
        py = F.mul(scales[i], F.add(F.mul(a2, stb.coeff_a(i)), F.mul(b2, stb.coeff_b(i))))
        if not F.is_zero(ai):
            if F.is_zero(px):
                return False
            scales[i + 1] = F.div(px, ai)
        else:
            if F.is_zero(py):
                return False
            scales[i + 1] = F.div(py, bi)
        # both generator relations must transport
        if px != F.mul(ai, scales[i + 1]) or py != F.mul(bi, scales[i + 1]):
            return False
    # certify on all v-v pairs
    for i in range(2, window):
        for j in range(i + 1, window - i + 1):
            lhs = F.mul(sta.get_vv(i, j), scales.get(i + j, F.zero))
            rhs = F.mul(F.mul(scales[i], scales[j]), stb.get_vv(i, j))
            if lhs != rhs:
                return False
    return True
