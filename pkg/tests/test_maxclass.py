"""Presentations, the Jacobi validator, centralizers, and the search oracle."""

import random

import pytest

from thinlie import maxclass as mc
from thinlie.errors import (
    BadBound,
    InvalidPresentation,
    NotStandardForm,
    SchemaError,
    WindowTooLarge,
    ZeroPair,
)
from thinlie.gf import Matrix, make_ext_field, rref
from thinlie.maxclass import HomElem


def _mutated(f9):
    """(a_2,b_2) = (1,0), (a_3,b_3) = (0,1), rest (1,0), class 6."""
    pairs = [((1, 0), (0, 0)), ((0, 0), (1, 0)), ((1, 0), (0, 0)), ((1, 0), (0, 0))]
    return mc.MaxClassPresentation(f9, 6, tuple(pairs))


class TestMetabelian:
    def test_pairs_and_centralizers(self, f9):
        m = mc.make_metabelian(f9, 10)
        assert all(pair == (f9.one, f9.zero) for pair in m.adjoint)
        seq = mc.two_step_centralizers(m)
        assert all(pt == mc.ey_point(f9) for pt in seq.points)

    def test_f4(self, f4):
        m = mc.make_metabelian(f4, 6)
        assert all(pair == (f4.one, f4.zero) for pair in m.adjoint)

    def test_v2_y_bracket_zero(self, f9):
        m = mc.make_metabelian(f9, 10)
        v2 = HomElem(2, (f9.one,))
        y = HomElem(1, (f9.zero, f9.one))
        assert mc.bracket(m, v2, y).is_zero(f9)


class TestValidate:
    @pytest.mark.parametrize("p,u,v", [(2, 1, 1), (3, 0, 2), (5, 0, 2)])
    def test_metabelian_passes(self, p, u, v):
        f = make_ext_field(p, u, v)
        assert mc.validate(mc.make_metabelian(f, 20)).ok

    def test_mutated_fails_at_triple(self, f9):
        report = mc.validate(_mutated(f9))
        assert not report.ok
        assert report.first_failure == ("v2", "x", "y")

    def test_zero_pair(self, f9):
        pairs = [((1, 0), (0, 0))] * 2 + [((0, 0), (0, 0))] + [((1, 0), (0, 0))]
        pres = mc.MaxClassPresentation(f9, 6, tuple(pairs))
        with pytest.raises(ZeroPair):
            mc.validate(pres)

    def test_search_outputs_pass(self, search9_12):
        for pres in search9_12:
            fresh = mc.MaxClassPresentation(pres.field, pres.class_n, pres.adjoint)
            assert mc.validate(fresh).ok

    def test_invalid_gates_tables(self, f9):
        with pytest.raises(InvalidPresentation):
            mc.tables(_mutated(f9))


class TestBracket:
    def test_defining_relation(self, f9):
        m = mc.make_metabelian(f9, 10)
        y = HomElem(1, (f9.zero, f9.one))
        x = HomElem(1, (f9.one, f9.zero))
        assert mc.bracket(m, y, x) == HomElem(2, (f9.one,))

    def test_bilinearity_mu(self, f9):
        m = mc.make_metabelian(f9, 10)
        v3 = HomElem(3, (f9.one,))
        mu_x = HomElem(1, (f9.mu, f9.zero))
        assert mc.bracket(m, v3, mu_x) == HomElem(4, (f9.mu,))

    def test_derived_subalgebra_abelian(self, f9):
        m = mc.make_metabelian(f9, 10)
        v3 = HomElem(3, (f9.one,))
        v4 = HomElem(4, (f9.one,))
        assert mc.bracket(m, v3, v4).is_zero(f9)

    def test_antisymmetry_exhaustive(self, f9, dev9_12):
        f = f9
        basis = [HomElem(1, (f.one, f.zero)), HomElem(1, (f.zero, f.one))] + [
            HomElem(d, (f.one,)) for d in range(2, 13)
        ]
        for u in basis:
            for w in basis:
                uw = mc.bracket(dev9_12, u, w)
                wu = mc.bracket(dev9_12, w, u)
                neg = HomElem(wu.degree, tuple(f.neg(c) for c in wu.coords))
                assert uw == neg

    def test_truncation(self, f9):
        m = mc.make_metabelian(f9, 10)
        v6 = HomElem(6, (f9.one,))
        v5 = HomElem(5, (f9.mu,))
        assert mc.bracket(m, v6, v5).is_zero(f9)


class TestCentralizers:
    def test_normalization_shapes(self, search9_14):
        for pres in search9_14[:50]:
            seq = mc.two_step_centralizers(pres)
            f = pres.field
            for d in seq.degrees():
                al, be = seq.point(d)
                a, b = pres.pair(d)
                # the point annihilates the adjoint pair
                assert f.is_zero(f.add(f.mul(al, a), f.mul(be, b)))
                assert (al == f.one) or (al == f.zero and be == f.one)

    def test_pair_01_gives_ex(self, dev9_14):
        f = dev9_14.field
        seq = mc.two_step_centralizers(dev9_14)
        assert dev9_14.pair(6) == (f.zero, f.one)
        assert seq.point(6) == mc.ex_point(f)

    def test_dimension_one(self, dev9_14):
        f = dev9_14.field
        for d in range(2, dev9_14.class_n):
            a, b = dev9_14.pair(d)
            res = rref(Matrix(f, [[a, b]]))
            assert res.rank == 1 and res.kernel.nrows == 1

    def test_adjoint_bijectivity_off_centralizer(self, f9, dev9_12):
        # for l outside C_i the adjoint map is a bijection onto the next degree
        rng = random.Random(42)
        f = f9
        elems = list(f.elements())
        seq = mc.two_step_centralizers(dev9_12)
        for _ in range(200):
            d = rng.randrange(2, dev9_12.class_n - 1)
            al, be = rng.choice(elems), rng.choice(elems)
            if f.is_zero(al) and f.is_zero(be):
                continue
            a, b = dev9_12.pair(d)
            coeff = f.add(f.mul(al, a), f.mul(be, b))
            in_centralizer = (al, be) == seq.point(d) or (
                not f.is_zero(al)
                and seq.point(d)[0] == f.one
                and f.div(be, al) == seq.point(d)[1]
            ) or (f.is_zero(al) and seq.point(d) == mc.ey_point(f))
            assert f.is_zero(coeff) == in_centralizer


class TestStandardGenerators:
    def test_metabelian_identity(self, f9):
        m = mc.make_metabelian(f9, 10)
        res = mc.standard_generators(m)
        assert not res.changed
        assert res.presentation == m
        assert res.transform.rows == [[f9.one, f9.zero], [f9.zero, f9.one]]

    def test_swapped_labeling(self, f9):
        pairs = tuple(((0, 0), (1, 0)) for _ in range(8))
        swapped = mc.MaxClassPresentation(f9, 10, pairs)
        assert mc.validate(swapped).ok
        res = mc.standard_generators(swapped)
        assert res.transform.rows == [[f9.zero, f9.one], [f9.one, f9.zero]]
        assert res.presentation == mc.make_metabelian(f9, 10)

    def test_moves_first_deviation_to_ex(self, f9, search9_14):
        moved = 0
        for pres in search9_14:
            seq = mc.two_step_centralizers(pres)
            devs = seq.deviations()
            if not devs or mc.is_standard(pres):
                continue
            res = mc.standard_generators(pres)
            out = res.presentation
            assert mc.is_standard(out)
            seq2 = mc.two_step_centralizers(out)
            assert seq2.deviations() == devs  # deviation degrees are invariant
            moved += 1
            if moved >= 25:
                break
        assert moved > 0

    def test_idempotent_and_valid(self, search9_12):
        for pres in search9_12[:30]:
            once = mc.standard_generators(pres).presentation
            assert mc.validate(once).ok
            twice = mc.standard_generators(once).presentation
            assert twice == once


class TestStats:
    def test_metabelian(self, f9):
        report = mc.centralizer_stats(mc.make_metabelian(f9, 12))
        assert len(report.entries) == 1
        e = report.entries[0]
        assert e.point == mc.ey_point(f9)
        assert e.first_occurrence == 2
        assert e.first_is_two_p_power  # 2 = 2 * 3^0

    def test_deviating(self, dev9_14):
        report = mc.centralizer_stats(dev9_14)
        ex = [e for e in report.entries if e.point == mc.ex_point(dev9_14.field)]
        assert len(ex) == 1
        assert ex[0].first_occurrence == 6  # 2p for p = 3
        assert ex[0].first_is_two_p_power
        assert ex[0].occurrences == (6, 9, 12)
        assert ex[0].max_gap == 3 and ex[0].gap_within_first

    def test_gated_on_standard_form(self, f9):
        pairs = tuple(((0, 0), (1, 0)) for _ in range(8))
        with pytest.raises(NotStandardForm):
            mc.centralizer_stats(mc.MaxClassPresentation(f9, 10, pairs))

    def test_gated_on_validity(self, f9):
        with pytest.raises(InvalidPresentation):
            mc.centralizer_stats(_mutated(f9))


class TestSearch:
    def test_contains_metabelian_first(self, f9):
        found = mc.search_sequences(f9, 8, 10)
        assert found[0] == mc.make_metabelian(f9, 8)

    def test_deviation_at_six_exists(self, f9, search9_12):
        ey = mc.ey_point(f9)
        hits = [
            p
            for p in search9_12
            if mc.two_step_centralizers(p).points[0] == ey
            and 6 in mc.two_step_centralizers(p).deviations()
        ]
        assert hits

    def test_no_deviation_at_three(self, search9_12):
        for p in search9_12:
            seq = mc.two_step_centralizers(p)
            assert seq.point(3) == seq.point(2)

    def test_limit_respected(self, f9):
        assert len(mc.search_sequences(f9, 12, 7)) == 7

    def test_window_cap(self, f9):
        with pytest.raises(WindowTooLarge):
            mc.search_sequences(f9, 30, 1)


class TestQuotient:
    def test_metabelian(self, f9):
        assert mc.quotient(mc.make_metabelian(f9, 10), 6) == mc.make_metabelian(f9, 6)

    def test_identity(self, dev9_14):
        assert mc.quotient(dev9_14, 14) == dev9_14

    def test_composition(self, dev9_14):
        a = mc.quotient(mc.quotient(dev9_14, 12), 8)
        assert a == mc.quotient(dev9_14, 8)

    def test_valid(self, dev9_14):
        assert mc.validate(mc.quotient(dev9_14, 9)).ok

    def test_bad_bound(self, f9):
        with pytest.raises(BadBound):
            mc.quotient(mc.make_metabelian(f9, 10), 3)
        with pytest.raises(BadBound):
            mc.quotient(mc.make_metabelian(f9, 10), 11)


class TestSerialization:
    def test_roundtrip(self, dev9_14):
        obj = mc.to_json(dev9_14)
        back = mc.from_json(obj)
        assert back == dev9_14
        assert mc.to_json(back) == obj

    def test_schema_rejects_bad_length(self, f9):
        obj = mc.to_json(mc.make_metabelian(f9, 6))
        obj["adjoint"] = obj["adjoint"][:-1]
        with pytest.raises(SchemaError):
            mc.from_json(obj)

    def test_schema_rejects_missing_key(self):
        with pytest.raises(SchemaError):
            mc.from_json({"p": 3, "class": 6, "adjoint": []})

    def test_loader_validates(self, f9):
        obj = mc.to_json(_mutated(f9))
        with pytest.raises(InvalidPresentation):
            mc.from_json(obj)
        assert mc.from_json(obj, check=False).class_n == 6
