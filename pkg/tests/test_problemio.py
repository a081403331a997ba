import json
from fractions import Fraction

import pytest

from arith_lg.cyclotomic import CycloNum, CycloPoly
from arith_lg.errors import InputError, ParseError
from arith_lg.ffield import make_field
from arith_lg.mpoly import MPoly, RatFunc
from arith_lg.problemio import (ProblemFile, jsonable, load_json_file,
                                parse_connection, parse_element_arg,
                                parse_field, parse_fts_tuple,
                                parse_nilpotent_matrix, parse_point_arg,
                                parse_problem)

KLOOSTERMAN = {
    "field": {"p": "5"},
    "n": 1,
    "f": [{"c": "1", "w": [1]}, {"c": "1", "w": [-1]}],
    "deformations": [[{"c": "1", "w": [0]}]],
}


def path_of(excinfo) -> str:
    return excinfo.value.path


class TestParseField:
    def test_canonical(self):
        F = parse_field({"p": "5", "m": 2})
        assert F.p == 5 and F.m == 2

    def test_prime_default(self):
        assert parse_field({"p": "7"}).m == 1

    def test_explicit_modulus(self):
        F = parse_field({"p": "5", "m": 2, "modulus": ["2", "0", "1"]})
        assert F.modulus == (2, 0, 1)

    def test_modulus_length_mismatch(self):
        with pytest.raises(ParseError) as e:
            parse_field({"p": "5", "m": 2, "modulus": ["2", "1"]})
        assert "modulus" in path_of(e)

    def test_p_must_be_string(self):
        with pytest.raises(ParseError) as e:
            parse_field({"p": 5})
        assert path_of(e) == "field.p"

    def test_unknown_key(self):
        with pytest.raises(ParseError) as e:
            parse_field({"p": "5", "degree": 2})
        assert path_of(e) == "field.degree"

    def test_bool_is_not_a_size(self):
        with pytest.raises(ParseError):
            parse_field({"p": "5", "m": True})

    def test_composite_characteristic(self):
        with pytest.raises(ParseError):
            parse_field({"p": "6"})


class TestParseProblem:
    def test_kloosterman(self):
        pf = parse_problem(KLOOSTERMAN)
        assert isinstance(pf, ProblemFile)
        assert pf.field.q == 5 and pf.n == 1 and pf.m == 1
        assert pf.deformation.kind == "subdiagram"
        assert set(pf.table.points) == {(1,), (-1,), (0,)}
        assert pf.budget is None and pf.tolerance is None

    def test_no_deformations(self):
        obj = {"field": {"p": "3"}, "n": 1, "f": KLOOSTERMAN["f"]}
        pf = parse_problem(obj)
        assert pf.m == 0

    def test_extension_coefficients(self):
        obj = {"field": {"p": "5", "m": 2}, "n": 1,
               "f": [{"c": ["1", "2"], "w": [1]}, {"c": "1", "w": [-1]}]}
        pf = parse_problem(obj)
        w = pf.deformation.base.coefficient((1,))
        assert w.coords == (1, 2)

    def test_explicit_table(self):
        obj = dict(KLOOSTERMAN, table=[[1], [-1], [0]])
        pf = parse_problem(obj)
        assert pf.table.points == ((1,), (-1,), (0,))

    def test_duplicate_table_point(self):
        obj = dict(KLOOSTERMAN, table=[[1], [1]])
        with pytest.raises(ParseError) as e:
            parse_problem(obj)
        assert "table" in path_of(e)

    def test_direction_outside_polytope(self):
        obj = dict(KLOOSTERMAN, deformations=[[{"c": "1", "w": [2]}]])
        with pytest.raises(ParseError):
            parse_problem(obj)

    def test_bad_kind(self):
        obj = dict(KLOOSTERMAN, kind="linear")
        with pytest.raises(ParseError) as e:
            parse_problem(obj)
        assert path_of(e) == "$.kind"

    def test_budget(self):
        obj = dict(KLOOSTERMAN, budget="1000")
        assert parse_problem(obj).budget == 1000

    def test_budget_positive(self):
        with pytest.raises(ParseError):
            parse_problem(dict(KLOOSTERMAN, budget="0"))

    def test_tolerance(self):
        obj = dict(KLOOSTERMAN, tolerance="1e-9")
        assert parse_problem(obj).tolerance == 1e-9

    def test_tolerance_must_be_string(self):
        with pytest.raises(ParseError):
            parse_problem(dict(KLOOSTERMAN, tolerance=1e-9))

    def test_unknown_key(self):
        with pytest.raises(ParseError) as e:
            parse_problem(dict(KLOOSTERMAN, extra=1))
        assert path_of(e) == "$.extra"

    def test_term_paths(self):
        obj = {"field": {"p": "5"}, "n": 1, "f": [{"c": "1", "w": [1, 2]}]}
        with pytest.raises(ParseError) as e:
            parse_problem(obj)
        assert path_of(e) == "$.f[0].w"

    def test_n_is_structural(self):
        obj = dict(KLOOSTERMAN, n="1")
        with pytest.raises(ParseError) as e:
            parse_problem(obj)
        assert path_of(e) == "$.n"


CONN = {
    "m": 1, "size": 1,
    "dt": [[{"num": [{"c": "1", "deg": {"x1": 1}}],
             "den": [{"c": "1", "deg": {"t": 2}}]}]],
    "dx": [[[{"num": [{"c": "-1"}], "den": [{"c": "1", "deg": {"t": 1}}]}]]],
}


class TestParsePolynomials:
    def test_connection(self):
        A = parse_connection(CONN)
        assert A.size == 1 and A.nvars == 2 and A.degree == 1
        t = MPoly.variable(2, 0)
        x = MPoly.variable(2, 1)
        assert A.component((0,))[0][0] == RatFunc(x, t * t)
        assert A.component((1,))[0][0] == RatFunc(MPoly.const(2, -1), t)

    def test_fraction_coefficient(self):
        obj = {"m": 1, "size": 1, "dx": [[[[{"c": "3/2", "deg": {"x1": 2}}]]]]}
        A = parse_connection(obj)
        x = MPoly.variable(2, 1)
        assert A.component((1,))[0][0] == RatFunc(x * x * Fraction(3, 2))

    def test_unknown_variable(self):
        obj = {"m": 1, "size": 1, "dx": [[[[{"c": "1", "deg": {"x0": 1}}]]]]}
        with pytest.raises(ParseError) as e:
            parse_connection(obj)
        assert "deg.x0" in path_of(e)

    def test_variable_out_of_range(self):
        obj = {"m": 1, "size": 1, "dx": [[[[{"c": "1", "deg": {"x2": 1}}]]]]}
        with pytest.raises(ParseError) as e:
            parse_connection(obj)
        assert "x2" in path_of(e)

    def test_negative_degree(self):
        obj = {"m": 1, "size": 1, "dx": [[[[{"c": "1", "deg": {"t": -1}}]]]]}
        with pytest.raises(ParseError):
            parse_connection(obj)

    def test_zero_denominator(self):
        obj = {"m": 1, "size": 1, "dx": [[[{"num": [{"c": "1"}], "den": []}]]]}
        with pytest.raises(ParseError) as e:
            parse_connection(obj)
        assert path_of(e).endswith("den")

    def test_wrong_matrix_count(self):
        obj = {"m": 2, "size": 1, "dx": [[[[{"c": "1"}]]]]}
        with pytest.raises(ParseError) as e:
            parse_connection(obj)
        assert path_of(e) == "$.dx"

    def test_ragged_row(self):
        obj = {"m": 1, "size": 2, "dt": [[[{"c": "1"}]], [[{"c": "1"}]]]}
        with pytest.raises(ParseError):
            parse_connection(obj)


ZERO1 = [[{"c": "0"}]]
TUPLE = {
    "size": 1, "m": 1,
    "A": [[ZERO1]],
    "phi": [[[[{"c": "1"}]]]],
    "r0": [[[{"c": "-1", "deg": {"x1": 1}}]]],
    "rinf": [[[{"c": "3"}]]],
}


class TestParseFtsTuple:
    def test_happy(self):
        T = parse_fts_tuple(TUPLE)
        assert T.size == 1 and T.m == 1 and T.g is None

    def test_metric(self):
        T = parse_fts_tuple(dict(TUPLE, g=[[[{"c": "1"}]]]))
        assert T.g is not None

    def test_t_dependence_rejected(self):
        bad = dict(TUPLE, r0=[[[{"c": "1", "deg": {"t": 1}}]]])
        with pytest.raises(ParseError):
            parse_fts_tuple(bad)

    def test_wrong_component_count(self):
        bad = dict(TUPLE, A=[[ZERO1], [ZERO1]])
        with pytest.raises(ParseError) as e:
            parse_fts_tuple(bad)
        assert path_of(e) == "$.A"

    def test_missing_key(self):
        bad = {k: v for k, v in TUPLE.items() if k != "rinf"}
        with pytest.raises(ParseError) as e:
            parse_fts_tuple(bad)
        assert "rinf" in str(e.value)


class TestParseNilpotentMatrix:
    def test_happy(self):
        N = parse_nilpotent_matrix({"matrix": [["0", "1/2"], ["0", "0"]]})
        assert N == ((Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(0)))

    def test_ragged(self):
        with pytest.raises(ParseError) as e:
            parse_nilpotent_matrix({"matrix": [["0", "1"], ["0"]]})
        assert "matrix[1]" in path_of(e)

    def test_not_a_number(self):
        with pytest.raises(ParseError) as e:
            parse_nilpotent_matrix({"matrix": [["0", "a"], ["0", "0"]]})
        assert "[0][1]" in path_of(e)


class TestElementArgs:
    def test_plain_integer(self):
        F5 = make_field(5, 1)
        assert parse_element_arg("3", F5) == F5.from_int(3)
        assert parse_element_arg("-1", F5) == F5.from_int(4)

    def test_extension_coordinates(self):
        F25 = make_field(5, 2)
        assert parse_element_arg("1:2", F25) == F25.element([1, 2])

    def test_wrong_coordinate_count(self):
        with pytest.raises(ParseError):
            parse_element_arg("1:2", make_field(5, 1))

    def test_not_an_integer(self):
        with pytest.raises(ParseError):
            parse_element_arg("x", make_field(5, 1))

    def test_point(self):
        F5 = make_field(5, 1)
        assert parse_point_arg("0,2", F5, 2) == (F5.from_int(0), F5.from_int(2))
        assert parse_point_arg("", F5, 0) == ()

    def test_point_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_point_arg("0,2", make_field(5, 1), 1)


class TestLoadJsonFile:
    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError) as e:
            load_json_file(str(tmp_path / "absent.json"))
        assert "absent.json" in path_of(e)

    def test_malformed_carries_position(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"field": {"p": "5"\n')
        with pytest.raises(ParseError) as e:
            load_json_file(str(bad))
        assert path_of(e).endswith(":2:1")

    def test_round_trip(self, tmp_path):
        f = tmp_path / "ok.json"
        f.write_text(json.dumps(KLOOSTERMAN))
        assert parse_problem(load_json_file(str(f))).n == 1


class TestJsonable:
    def test_exact_scalars_become_strings(self):
        assert jsonable(5) == "5"
        assert jsonable(Fraction(3, 2)) == "3/2"
        assert jsonable(-7) == "-7"

    def test_inexact_scalars_stay_numbers(self):
        assert jsonable(1.5) == 1.5
        assert jsonable(True) is True
        assert jsonable(None) is None

    def test_complex(self):
        assert jsonable(1 + 2j) == {"re": 1.0, "im": 2.0}

    def test_field_elements(self):
        F5 = make_field(5, 1)
        F25 = make_field(5, 2)
        assert jsonable(F5.from_int(3)) == "3"
        assert jsonable(F25.element([1, 2])) == ["1", "2"]

    def test_cyclotomic(self):
        z = CycloNum.zeta(5, 2)
        assert jsonable(z) == {"p": "5", "coords": ["0", "0", "1", "0"]}
        P = CycloPoly(5, [CycloNum.from_rational(5, 5), z])
        assert jsonable(P)["coeffs"][0]["coords"][0] == "5"

    def test_polynomials(self):
        t = MPoly.variable(2, 0)
        x = MPoly.variable(2, 1)
        assert jsonable(t * x * 2) == [{"c": "2", "deg": {"t": 1, "x1": 1}}]
        assert jsonable(MPoly.const(2, 1)) == [{"c": "1"}]
        r = RatFunc(MPoly.const(2, 1), t)
        assert jsonable(r) == {"num": [{"c": "1"}],
                               "den": [{"c": "1", "deg": {"t": 1}}]}
        assert jsonable(RatFunc(x)) == [{"c": "1", "deg": {"x1": 1}}]

    def test_containers(self):
        assert jsonable({"a": (1, 2)}) == {"a": ["1", "2"]}

    def test_unknown_type(self):
        with pytest.raises(InputError):
            jsonable(object())
