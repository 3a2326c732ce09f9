from fractions import Fraction

import pytest

from relext import Field, ModP
from relext.linalg import LeftSolver, Matrix, SparseEchelon, reduce_by_rref, rref_rows

Q = Field.rationals()
F5 = Field.prime(5)


def mat(rows, field=Q):
    return Matrix.from_rows(field, rows)


class TestField:
    def test_parse(self):
        assert Field.parse("Q") == Q
        assert Field.parse("F 5") == F5
        assert Field.parse("f5") == F5
        assert Field.parse("F_7").characteristic == 7

    @pytest.mark.parametrize("text", ["R", "F 6", "F1", "", "F x"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            Field.parse(text)

    def test_rational_conversion(self):
        assert Q("-2/3") == Fraction(-2, 3)
        assert Q(4) == 4

    def test_prime_conversion(self):
        assert F5(7) == 2
        assert F5(Fraction(1, 2)) == 3          # 2 * 3 = 6 = 1
        with pytest.raises(ZeroDivisionError):
            F5(Fraction(1, 5))

    def test_modp_arithmetic(self):
        a, b = ModP(3, 7), ModP(5, 7)
        assert a + b == 1
        assert a - b == 5
        assert a * b == 1
        assert a / b == a * ModP(3, 7)
        assert -a == 4
        assert 1 - a == 5
        assert 2 / a == 3
        assert not ModP(14, 7)
        with pytest.raises(ZeroDivisionError):
            a / ModP(0, 7)
        with pytest.raises(ValueError):
            a + ModP(1, 5)

    def test_inverse_law(self):
        for p in (2, 3, 5, 101):
            f = Field.prime(p)
            for x in range(1, min(p, 30)):
                assert f(x) * (f.one / f(x)) == 1
                assert f(x) + (-f(x)) == 0


class TestMatrix:
    def test_rref_rational(self):
        rows, piv = rref_rows([[Q(2), Q(4), Q(1)], [Q(1), Q(2), Q(0)]], 3, Q)
        assert piv == [0, 2]
        assert rows == [[1, 2, 0], [0, 0, 1]]

    def test_rref_clears_fractions(self):
        m = mat([["1/2", "1/3"], ["1/4", "1/6"]])
        r, piv = m.rref()
        assert piv == [0]
        assert r.rows == [[1, Fraction(2, 3)]]

    def test_rank_mod_p_differs_from_q(self):
        rows = [[1, 2], [3, 1]]
        assert mat(rows).rank() == 2
        assert mat(rows, F5).rank() == 1       # det = -5

    def test_products(self):
        a = mat([[1, 2], [0, 1]])
        b = mat([[1, -2], [0, 1]])
        assert a @ b == Matrix.identity(Q, 2)
        assert a.inverse() == b
        assert a.vecmul([1, 1]) == [1, 3]
        assert (a + b).rows == [[2, 0], [0, 2]]
        assert (a - a).is_zero()
        assert a.T.rows == [[1, 0], [2, 1]]

    def test_left_kernel_and_solve(self):
        a = mat([[1, 0, 1], [0, 1, 1], [1, 1, 2]])
        k = a.left_kernel()
        assert k.nrows == 1
        assert k.vecmul([1, 0, 0]) == [1, 1, -1]
        assert a.solve_left([1, 1, 2]) is not None
        assert a.solve_left([0, 0, 1]) is None
        v = a.solve_left([2, 3, 5])
        assert a.vecmul(v) == [2, 3, 5]

    def test_left_solver_kernel_matches(self):
        a = mat([[1, 2, 3], [2, 4, 6], [0, 1, 1], [1, 3, 4]])
        s = LeftSolver(a)
        assert s.kernel == a.left_kernel()
        v = s.solve([1, 3, 4])
        assert a.vecmul(v) == [1, 3, 4]

    def test_empty_shapes(self):
        a = Matrix.zeros(Q, 0, 3)
        assert a.rank() == 0
        assert a.left_kernel().nrows == 0
        assert a.solve_left([0, 0, 0]) == []
        assert a.solve_left([0, 1, 0]) is None

    def test_shape_errors(self):
        with pytest.raises(ValueError):
            Matrix(Q, 2, 2, [[1, 2]])
        with pytest.raises(ValueError):
            mat([[1, 2]]) @ mat([[1, 2]])

    def test_singular_inverse(self):
        with pytest.raises(ZeroDivisionError):
            mat([[1, 1], [1, 1]]).inverse()

    def test_reduce_by_rref(self):
        r, piv = mat([[1, 0, 1], [0, 1, 1]]).rref()
        assert reduce_by_rref([2, 3, 0], r, piv) == [0, 0, -5]


class TestSparseEchelon:
    def test_insert_and_contains(self):
        e = SparseEchelon(Q)
        assert e.insert({0: Q(1), 3: Q(2)}) == {0: Fraction(1, 2), 3: 1}
        assert e.insert({3: Q(4), 0: Q(2)}) is None
        assert e.insert({1: Q(1), 3: Q(1)}) == {1: 1, 0: Fraction(-1, 2)}
        assert e.contains({1: Q(1), 0: Q("-1/2")})
        assert not e.contains({2: Q(1)})

    def test_normal_forms_keep_small_indices(self):
        e = SparseEchelon(F5)
        e.insert({2: F5(1), 5: F5(1)})
        assert e.reduce({5: F5(3)}) == {2: -3}
