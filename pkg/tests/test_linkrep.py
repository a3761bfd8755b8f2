import pytest

from eptl.linkrep import (
    RingMatrix,
    gram_matrix,
    gram_pair,
    loop_variables_to_uv,
    omega_matrix,
)
from eptl.ring import ZERO, LaurentPoly, alpha_poly, beta_poly
from eptl.states import LinkState, enumerate_states

B = beta_poly()


def mono(eu, ev):
    return LaurentPoly.monomial(eu, ev)


def sector_pairs(n_max):
    return [(n, d) for n in range(2, n_max + 1) for d in range(n % 2, n + 1, 2)]


class TestOmega:
    @pytest.mark.parametrize("n,d", sector_pairs(5))
    def test_identity(self, n, d):
        m = omega_matrix(["id"], n, d)
        assert m == RingMatrix.identity(m.rows)

    @pytest.mark.parametrize("n,d", sector_pairs(5) + [(7, 1), (7, 5), (8, 0), (8, 4)])
    def test_e_squared(self, n, d):
        for i in range(1, n + 1):
            m = omega_matrix([("e", i)], n, d)
            assert m @ m == m.scale(B)

    @pytest.mark.parametrize("n", [4, 6])
    def test_even_product_sandwich(self, n):
        evens = [("e", i) for i in range(2, n + 1, 2)]
        e_mat = omega_matrix(evens, n, 0)
        sandwich = omega_matrix(evens + [("omega", 1)] + evens, n, 0)
        assert sandwich == e_mat.scale(alpha_poly(n))

    def test_translation_power_is_scalar(self):
        n, d = 5, 3
        m = omega_matrix([("omega", 1)] * n, n, d)
        assert m == RingMatrix.identity(m.rows).scale(LaurentPoly.v_pow(n * d))


class TestGramPairExamples:
    # ten-site pairings read off the worked closures
    def setup_method(self):
        self.w1 = LinkState(10, [(2, 9), (3, 6), (4, 5), (7, 8)], [1, 10])

    def test_single_loop_with_displacement(self):
        w2 = LinkState(10, [(3, 4), (5, 8), (6, 7), (9, 10)], [1, 2])
        assert gram_pair(self.w1, w2) == B * mono(0, 8)

    def test_same_state_defects_tied_gives_zero(self):
        w2 = LinkState(10, [(1, 6), (2, 5), (3, 4), (9, 10)], [7, 8])
        assert gram_pair(self.w1, w2).is_zero()

    def test_zero_defect_wrapping(self):
        w1 = LinkState(10, [(2, 3), (5, 6), (8, 9), (4, 7), (10, 11)], [])
        w2 = LinkState(10, [(2, 3), (8, 9), (10, 11), (6, 15), (7, 14)], [])
        a = alpha_poly(10)
        assert gram_pair(w1, w2) == a * a * B * B * B

    def test_defect_count_mismatch(self):
        w2 = LinkState(10, [(1, 2), (3, 4), (5, 6), (7, 8), (9, 10)], [])
        assert gram_pair(self.w1, w2).is_zero()


# the displayed 6x6 matrices use this fixed ordering of the 4-site bases
REF_LINK_ORDER_4_0 = [
    LinkState(4, [(1, 2), (3, 4)], []),
    LinkState(4, [(1, 4), (2, 3)], []),
    LinkState(4, [(2, 5), (3, 4)], []),
    LinkState(4, [(2, 3), (4, 5)], []),
    LinkState(4, [(1, 2), (4, 7)], []),
    LinkState(4, [(3, 6), (4, 5)], []),
]


def ref_permutation_4_0():
    basis = list(enumerate_states(4, 0))
    return [basis.index(w) for w in REF_LINK_ORDER_4_0]


class TestGramMatrix:
    def test_four_zero_reference_matrix(self):
        g = gram_matrix(4, 0)
        perm = ref_permutation_4_0()
        g = g.permuted(perm, perm)
        a = alpha_poly(4)
        expect = [
            [B * B, B, a * B, a, a * B, B],
            [B, B * B, a, a * B, a, a * a],
            [a * B, a, B * B, B, a * a, a],
            [a, a * B, B, B * B, B, a * B],
            [a * B, a, a * a, B, B * B, a],
            [B, a * a, a, a * B, a, B * B],
        ]
        for i in range(6):
            for j in range(6):
                assert g[i, j] == expect[i][j], (i, j)

    def test_full_defect_sector_is_trivial(self):
        g = gram_matrix(6, 6)
        assert g.rows == 1 and g[0, 0] == LaurentPoly.one()

    def test_five_one_twisted_open_matrix(self):
        v1 = LaurentPoly.v_pow(1)
        g = gram_matrix(5, 1, mode="open", twists=[v1], row_first=True)
        # displayed ordering: defect-first states, then bubble-first states
        order = [
            LinkState(5, [(2, 3), (4, 5)], [1]),
            LinkState(5, [(2, 5), (3, 4)], [1]),
            LinkState(5, [(1, 2), (4, 5)], [3]),
            LinkState(5, [(1, 2), (3, 4)], [5]),
            LinkState(5, [(1, 4), (2, 3)], [5]),
        ]
        basis = list(g.col_labels)
        perm = [basis.index(w) for w in order]
        g = g.permuted(perm, perm)
        one = LaurentPoly.one()
        expect = [
            [B * B, B, B * mono(0, -2), mono(0, -4), B * mono(0, -4)],
            [B, B * B, mono(0, -2), B * mono(0, -4), mono(0, -4)],
            [B * mono(0, 2), mono(0, 2), B * B, B * mono(0, -2), mono(0, -2)],
            [mono(0, 4), B * mono(0, 4), B * mono(0, 2), B * B, B],
            [B * mono(0, 4), mono(0, 4), mono(0, 2), B, B * B],
        ]
        del one
        for i in range(5):
            for j in range(5):
                assert g[i, j] == expect[i][j], (i, j)


class TestGramInvariants:
    @pytest.mark.parametrize("n,d", sector_pairs(8))
    def test_transpose_symmetry(self, n, d):
        g = gram_matrix(n, d)
        assert g.map(LaurentPoly.flip_v) == g.transpose()

    @pytest.mark.parametrize("n,d", sector_pairs(6))
    def test_generator_adjoint(self, n, d):
        # pairing(w1, e_i w2) = pairing(e_i w1, w2) when the generator acts
        # with twist v on the first slot and twist 1/v on the second
        from eptl.diagrams import act_on_link, generator_diagram
        from eptl.linkrep import act_weight

        basis = enumerate_states(n, d)
        for i in range(1, n + 1):
            diag = generator_diagram("e", n, i)
            for w1 in basis:
                r1 = act_on_link(diag, w1)
                for w2 in basis:
                    r2 = act_on_link(diag, w2)
                    lhs = (
                        ZERO
                        if r2 is None
                        else act_weight(r2, n).flip_v() * gram_pair(w1, r2.state)
                    )
                    rhs = (
                        ZERO
                        if r1 is None
                        else act_weight(r1, n) * gram_pair(r1.state, w2)
                    )
                    assert lhs == rhs

    @pytest.mark.parametrize("n,d", sector_pairs(5))
    def test_loop_variable_encoding_matches(self, n, d):
        direct = gram_matrix(n, d)
        packed = gram_matrix(n, d, loop_variables=True)
        unpacked = packed.map(lambda p: loop_variables_to_uv(p, n, d))
        assert unpacked == direct

    @pytest.mark.parametrize("n,d", [(n, d) for n in (4, 5, 6) for d in range(n % 2, n + 1, 2)])
    def test_open_det_twist_vector_independence(self, n, d):
        from eptl.intertwiner import det_exact

        vectors = [
            [LaurentPoly.one()] * d,
            [LaurentPoly.v_pow(1)] * d,
            [LaurentPoly.monomial(k % 2, (k % 3) - 1) for k in range(d)],
        ]
        dets = [
            det_exact(gram_matrix(n, d, mode="open", twists=tw)) for tw in vectors
        ]
        assert dets[1] == dets[0] and dets[2] == dets[0]
