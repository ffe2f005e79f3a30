import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobool.algebra import (
    BooleanOperation,
    OperationTable,
    build_h_matrix,
    closed_under,
    commutes,
    compute_core,
    extend_operation,
    matrix_from_rows,
    preserves_graphs,
    tuple_leq,
)
from cobool.errors import ContractError
from cobool.model import Template

from bruteforce import closure_witness, endomorphisms, rows_of
from conftest import FIX, FIXTURE_FILES

MAJOR, MINOR, MEET, JOIN = (BooleanOperation.MAJOR, BooleanOperation.MINOR,
                            BooleanOperation.MEET, BooleanOperation.JOIN)

# frozen from tests/bruteforce.closure_witness on each fixture's matrix
EXPECTED_CLOSURE = {
    "NOT": {MAJOR: None, MINOR: None, MEET: None, JOIN: None},
    "1IN3": {MAJOR: (0, 1, 2), MINOR: (0, 1, 2), MEET: (0, 1), JOIN: (0, 1)},
    "AFFINE": {MAJOR: (0, 1, 2), MINOR: None, MEET: (0, 1), JOIN: (0, 1)},
    "HORN": {MAJOR: (3, 4, 6), MINOR: (0, 1, 4), MEET: None, JOIN: (3, 4)},
    "NONORD": {MAJOR: (3, 4, 6), MINOR: (0, 1, 4), MEET: None, JOIN: (3, 4)},
    "COLLAPSE": {MAJOR: (1, 2, 3), MINOR: (0, 1, 2), MEET: None, JOIN: (2, 3)},
}


class TestHMatrix:
    def test_not(self):
        m = build_h_matrix(FIX["NOT"])
        assert m.columns == ("neg", "bot", "top")
        assert m.rows == ((1, 0, 1), (0, 0, 1))

    def test_1in3(self):
        m = build_h_matrix(FIX["1IN3"])
        assert m.rows == ((1, 0, 0, 0, 1), (0, 1, 0, 0, 1), (0, 0, 1, 0, 1))

    def test_row_index_first_occurrence(self):
        m = build_h_matrix(Template.from_tables(3, {"f": (0, 1, 1)}))
        assert m.row_index((1, 0, 1)) == 1

    def test_invariants(self, fixture_name):
        tmpl = FIX[fixture_name]
        m = build_h_matrix(tmpl)
        for d, row in enumerate(m.rows):
            assert row[:-2] == tuple(f.table[d] for f in tmpl.functions)
            assert row[-2:] == (0, 1)
            assert m.row_index(row) <= d

    def test_render(self):
        text = build_h_matrix(FIX["NOT"]).render()
        assert text.splitlines() == ["  | neg bot top", "0 |   1   0   1", "1 |   0   0   1"]


class TestClosure:
    @pytest.mark.parametrize("name", sorted(FIXTURE_FILES))
    @pytest.mark.parametrize("op", list(BooleanOperation))
    def test_fixture_verdicts(self, name, op):
        m = build_h_matrix(FIX[name])
        assert closed_under(m, op).witness == EXPECTED_CLOSURE[name][op]
        assert closure_witness(list(m.rows), op.value) == EXPECTED_CLOSURE[name][op]

    def test_1in3_major_witness_image(self):
        m = build_h_matrix(FIX["1IN3"])
        rep = closed_under(m, MAJOR)
        assert MAJOR.on_rows(*(m.rows[i] for i in rep.witness)) == (0, 0, 0, 0, 1)

    @pytest.mark.parametrize("op", list(BooleanOperation))
    def test_constant_columns_do_not_matter(self, fixture_name, op):
        tmpl = FIX[fixture_name]
        with_consts = build_h_matrix(tmpl)
        bare = matrix_from_rows(rows_of([f.table for f in tmpl.functions], tmpl.size, constants=False))
        assert closed_under(with_consts, op).closed == closed_under(bare, op).closed

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_two_row_matrices_major_minor_closed(self, data):
        width = data.draw(st.integers(1, 6))
        rows = data.draw(st.lists(st.tuples(*[st.integers(0, 1)] * width), min_size=1, max_size=2))
        m = matrix_from_rows(rows)
        assert closed_under(m, MAJOR).closed
        assert closed_under(m, MINOR).closed

    def test_random_matrices_meet_and_join_imply_major(self):
        rng = random.Random(20240611)
        for _ in range(1000):
            nrows, ncols = rng.randint(1, 6), rng.randint(1, 6)
            rows = [tuple(rng.randint(0, 1) for _ in range(ncols)) for _ in range(nrows)]
            m = matrix_from_rows(rows)
            if closed_under(m, MEET).closed and closed_under(m, JOIN).closed:
                assert closed_under(m, MAJOR).closed
                assert closure_witness(rows, "Major") is None


class TestTupleLeq:
    def test_examples(self):
        assert tuple_leq((0, 0, 0, 1), (1, 1, 0, 1))
        assert tuple_leq((1, 0, 1), (1, 0, 1))

    def test_nonord_rows(self):
        m = build_h_matrix(FIX["NONORD"])
        assert m.rows[0] == (0, 1, 1, 0, 1) and m.rows[1] == (0, 0, 1, 0, 1)
        assert not tuple_leq(m.rows[0], m.rows[1])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            tuple_leq((0, 1), (0, 1, 1))


class TestCore:
    def test_1in3_is_core(self):
        core, r = compute_core(FIX["1IN3"])
        assert core == FIX["1IN3"]
        assert r.is_identity
        assert endomorphisms([f.table for f in FIX["1IN3"].functions], 3) == [(0, 1, 2)]

    def test_collapse(self):
        core, r = compute_core(FIX["COLLAPSE"])
        assert core.size == 1
        assert all(f.table == (0,) for f in core.functions)
        assert r.degenerate
        # 0 and 1 are both common fixed points; lex-least constant map wins
        assert r.map == (0, 0, 0, 0)
        ends = endomorphisms([f.table for f in FIX["COLLAPSE"].functions], 4)
        assert (0, 0, 0, 0) in ends and (1, 1, 1, 1) in ends

    def test_not(self):
        core, r = compute_core(FIX["NOT"])
        assert core == FIX["NOT"] and r.is_identity
        assert sorted(endomorphisms([(1, 0)], 2)) == [(0, 1), (1, 0)]

    def test_renaming_keeps_order_of_remaining_elements(self):
        # element 2 duplicates element 3's row; 2 -> 3 retracts
        t = Template.from_tables(5, {"f": (0, 1, 1, 1, 0), "g": (1, 0, 0, 0, 1)})
        core, r = compute_core(t)
        assert commutes(r.map, t)
        assert r.map[0] == 0 and r.map[1] == 1
        assert core.size == len(r.image)
        assert sorted(r.rename.values()) == list(range(core.size))

    def test_idempotent_and_commuting(self, fixture_name):
        tmpl = FIX[fixture_name]
        core, r = compute_core(tmpl)
        assert commutes(r.map, tmpl)
        assert tuple(r.map[x] for x in r.map) == r.map
        core2, r2 = compute_core(core)
        assert core2 == core and r2.is_identity

    def test_min_range_matches_enumeration(self, fixture_name):
        tmpl = FIX[fixture_name]
        tables = [f.table for f in tmpl.functions]
        ends = endomorphisms(tables, tmpl.size)
        core, r = compute_core(tmpl)
        assert len(r.image) == min(len(set(p)) for p in ends)
        smallest = min((len(set(p)), p) for p in ends)[1]
        assert len(set(smallest)) == len(r.image)

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_random_templates_against_enumeration(self, data):
        n = data.draw(st.integers(2, 5))
        k = data.draw(st.integers(0, 3))
        tables = {f"f{i}": data.draw(st.tuples(*[st.integers(0, 1)] * n)) for i in range(k)}
        tmpl = Template.from_tables(n, tables)
        core, r = compute_core(tmpl)
        ends = endomorphisms(list(tables.values()), n)
        assert r.map in ends
        assert len(r.image) == min(len(set(p)) for p in ends)
        assert tuple(r.map[x] for x in r.map) == r.map
        # the core is really a core: no commuting self-map with smaller range
        core_ends = endomorphisms([f.table for f in core.functions], core.size)
        assert min(len(set(p)) for p in core_ends) == core.size
        for f in core.functions:
            assert set(f.table) <= {0, 1}


class TestExtendOperation:
    def test_affine_minor(self):
        q = extend_operation(build_h_matrix(FIX["AFFINE"]), MINOR)
        # 011 xor 110 xor 000 = 101 -> label 3 ; 011 xor 110 xor 101 = 000 -> label 2
        assert q(0, 1, 2) == 3
        assert q(0, 1, 3) == 2

    def test_major_repeated_argument(self):
        q = extend_operation(build_h_matrix(FIX["NOT"]), MAJOR)
        assert q(1, 1, 0) == 1 and q(1, 0, 1) == 1 and q(0, 1, 1) == 1

    def test_horn_meet(self):
        q = extend_operation(build_h_matrix(FIX["HORN"]), MEET)
        assert q(4, 3) == 2

    def test_not_closed(self):
        with pytest.raises(ContractError):
            extend_operation(build_h_matrix(FIX["1IN3"]), MAJOR)

    TERNARY_CLOSED = [("NOT", MAJOR), ("NOT", MINOR), ("AFFINE", MINOR)]

    def test_ternary_closed_cases(self):
        found = [(name, op) for name in FIX for op in (MAJOR, MINOR)
                 if closed_under(build_h_matrix(FIX[name]), op).closed]
        assert sorted(found, key=str) == sorted(self.TERNARY_CLOSED, key=str)

    @pytest.mark.parametrize("name, op", TERNARY_CLOSED)
    def test_identities_and_preservation(self, name, op):
        tmpl = FIX[name]
        q = extend_operation(build_h_matrix(tmpl), op)
        for a, b in itertools.product(tmpl.domain, repeat=2):
            want = a if op is MAJOR else b
            assert q(a, a, b) == q(a, b, a) == q(b, a, a) == want
        assert q.is_idempotent()
        assert preserves_graphs(q, tmpl).preserved

    def test_meet_split(self):
        horn = build_h_matrix(FIX["HORN"])
        nonord = build_h_matrix(FIX["NONORD"])
        assert tuple_leq(horn.rows[0], horn.rows[1])
        assert preserves_graphs(extend_operation(horn, MEET), FIX["HORN"]).preserved
        q = extend_operation(nonord, MEET)
        assert q(0, 1) == 1
        rep = preserves_graphs(q, FIX["NONORD"])
        assert rep.witness == ("f1", (0, 4))

    @pytest.mark.parametrize("name", ["HORN", "NONORD", "NOT", "COLLAPSE"])
    def test_semilattice_laws(self, name):
        m = build_h_matrix(FIX[name])
        for op in (MEET, JOIN):
            if not closed_under(m, op).closed:
                continue
            q = extend_operation(m, op)
            D = m.labels
            assert q.is_idempotent()
            for a, b in itertools.product(D, repeat=2):
                assert q(a, b) == q(b, a)
            for a, b, c in itertools.product(D, repeat=3):
                assert q(q(a, b), c) == q(a, q(b, c))

    def test_join_needs_same_order_condition(self):
        # every triple except 001 (coordinate-wise complement of the Horn set) is join-closed
        rows = [(0, 1, 0), (1, 1, 0), (0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1), (1, 1, 1)]
        tables = {f"g{j}": tuple(r[j] for r in rows) for j in range(3)}
        tmpl = Template.from_tables(7, tables)
        m = build_h_matrix(tmpl)
        assert closed_under(m, JOIN).closed
        assert tuple_leq(m.rows[0], m.rows[1])
        assert preserves_graphs(extend_operation(m, JOIN), tmpl).preserved
        # swapping labels 0 and 1 breaks the order and preservation
        rows[0], rows[1] = rows[1], rows[0]
        tables = {f"g{j}": tuple(r[j] for r in rows) for j in range(3)}
        tmpl = Template.from_tables(7, tables)
        m = build_h_matrix(tmpl)
        assert not tuple_leq(m.rows[0], m.rows[1])
        assert not preserves_graphs(extend_operation(m, JOIN), tmpl).preserved

    def test_projection_preserves_everything(self, fixture_name):
        tmpl = FIX[fixture_name]
        proj = OperationTable(2, {(a, b): a for a in tmpl.domain for b in tmpl.domain})
        assert preserves_graphs(proj, tmpl).preserved
