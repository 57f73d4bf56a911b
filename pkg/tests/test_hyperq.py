import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.abc import T as sT, X as sX

from oracles import RQE_P_INT, rqe_H_expr, sympy_divides, sympy_primes_1_mod_3, v_seq_mod

from hypercf.contfrac import CFError, expand_series
from hypercf.ffield import GF, from_rational_literal, is_prime
from hypercf.hyperq import (
    A_sequence,
    HyperError,
    HyperParams,
    K_continuant,
    build_E_equation,
    certify_pattern,
    condition_star,
    frobenius_relation_residual,
    growth_peaks,
    i_of_n,
    is_hyperquadratic_witness,
    mills_robbins_check,
    padic_valuation,
    perfect_growth_check,
    rqe_divides,
    rqe_epsilons,
    rqe_expansion,
    rqe_H,
    rqe_hypothesis_observation,
    rqe_P,
    rqe_params,
    rqe_primes,
    rqe_root,
    scan_primes,
    theorem1_solve,
    v_sequence,
)
from hypercf.laurent import newton_root
from hypercf.parse import parse_xpoly
from hypercf.polyring import RationalFunc, TPoly, xpoly_divmod

PRIMES = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def _to_sympy(H, p):
    expr = 0
    for i, c in enumerate(H.coeffs):
        assert c.is_poly()
        expr += sum(int(a) * sT**k for k, a in enumerate(c.num.coeffs)) * sX**i
    return sympy.expand(expr)


# -- v-sequence, K, A, valuations --------------------------------------------

def test_v_sequence_exhaustive_nonzero():
    for p in PRIMES:
        for k in range(1, (p + 1) // 2):
            v = v_sequence(p, k)
            assert len(v) == 2 * k and all(v)
            assert int(v[0]) == (2 * k - 1) % p
            assert [int(x) for x in v] == v_seq_mod(p, k)


def test_v_sequence_bad_input():
    with pytest.raises(HyperError):
        v_sequence(7, 4)
    with pytest.raises(HyperError):
        v_sequence(9, 1)


@given(st.sampled_from(PRIMES[:8]), st.data())
def test_K_degree_law(p, data):
    k = data.draw(st.integers(1, (p - 1) // 2))
    m = data.draw(st.integers(1, 2 * k))
    n = data.draw(st.integers(m, 2 * k))
    K = K_continuant(p, k, m, n)
    assert K.degree == n - m + 1
    # lead is the product of the v's
    lead = GF(p).one
    for x in v_sequence(p, k)[m - 1: n]:
        lead = lead * x
    assert K.lead == lead


def test_K_empty():
    assert K_continuant(13, 4, 1, 0).is_one()
    with pytest.raises(HyperError):
        K_continuant(13, 4, 3, 9)


def test_A_sequence():
    p, k = 13, 4
    A = A_sequence(p, k, 3)
    assert str(A[0]) == "T"
    degs = [a.degree for a in A]
    assert degs == [1, 5, 57, 733]
    assert all(d == (p**i + 2) // 3 for i, d in enumerate(degs))


def test_padic_valuation():
    assert padic_valuation(9, 243) == 2
    assert padic_valuation(5, 7) == 0
    assert [i_of_n(1, n) for n in range(1, 9)] == [0, 0, 0, 1, 0, 0, 0, 0]
    assert i_of_n(1, 19) == 2  # 75 = 3 * 5^2
    with pytest.raises(ValueError):
        padic_valuation(1, 5)


# -- the quartic and its companion ----------------------------------------------

def test_p7_constants():
    data_v = v_sequence(7, 2)
    assert [int(x) for x in data_v] == [3, 5, 1, 1]
    eps, eps_p = rqe_epsilons(7)
    assert (int(eps), int(eps_p)) == (6, 3)
    assert str(rqe_H(7)) == "(T^2+1)*X^8+(5*T^3+6*T)*X^7+2*T*X+4"
    assert str(rqe_P(7)) == "4*X^4+6*T*X^3+X^2+1"
    params = rqe_params(7)
    assert [int(x) for x in params.lambdas] == [2, 6, 6]
    assert (int(params.u2), int(params.u1)) == (4, 3)
    assert condition_star(params)


@pytest.mark.parametrize("p", [7, 13, 19, 31])
def test_H_matches_independent_construction(p):
    H_expr, *_ = rqe_H_expr(p)
    ours = _to_sympy(rqe_H(p), p)
    assert sympy.Poly(ours - H_expr, sX, sT, modulus=p).is_zero


@pytest.mark.parametrize("p", [7, 13, 19])
def test_divisibility_matches_sympy(p):
    r = rqe_divides(p)
    assert r.divides and r.remultiplied
    assert sympy_divides(rqe_H_expr(p)[0], RQE_P_INT, p)


def test_divisibility_failure_detected():
    # the companion of p = 7 is not a multiple of the quartic over F_13
    F = GF(13)
    H7 = parse_xpoly("(T^2+1)*X^8+(5*T^3+6*T)*X^7+2*T*X+4", F)
    _, r = xpoly_divmod(H7, rqe_P(13))
    assert not r.is_zero()


def test_prime_list():
    assert rqe_primes(199) == sympy_primes_1_mod_3(7, 199)
    assert len(rqe_primes(199)) == 21


def test_scan_small_and_parallel_is_deterministic():
    a = scan_primes(43)
    b = scan_primes(43, workers=3)
    assert a.to_json() == b.to_json()
    assert a.primes == [7, 13, 19, 31, 37, 43] and a.all_divide


def test_rqe_prime_validation():
    with pytest.raises(HyperError):
        rqe_H(11)
    with pytest.raises(HyperError):
        rqe_P(3)


@pytest.mark.parametrize("p", [7, 13, 19, 31, 37])
def test_E_equation_is_multiple_of_quartic(p):
    params = rqe_params(p)
    E = build_E_equation(params)
    assert E.support() == [0, 1, p, p + 1]
    _, r = xpoly_divmod(E, rqe_P(p))
    assert r.is_zero()
    assert condition_star(params)
    assert params.lambdas[0] == from_rational_literal(32, 9, GF(p))


def test_frobenius_relation_on_root():
    alpha = rqe_root(13, 400)
    assert frobenius_relation_residual(rqe_params(13), alpha).is_zero()
    wrong = HyperParams(13, 4, 6, rqe_params(13).lambdas, GF(13)(1), GF(13)(1))
    assert not frobenius_relation_residual(wrong, alpha).is_zero()


def test_condition_star_zero_denominator():
    F = GF(7)
    # v = (1, 6), so the adjusted last entry is lambda_2 - 12 = lambda_2 - 5
    params = HyperParams(7, 1, 2, (F(1), F(5)), F(1), F(1))
    with pytest.raises(CFError):
        condition_star(params)


def test_hypothesis_observation():
    # 12 * 9/32 + 1 = 35/8 vanishes only in characteristic 5 and 7
    holds = [p for p in PRIMES if rqe_hypothesis_observation(p)["holds"]]
    assert holds == [5, 7]


# -- pattern and growth --------------------------------------------------------

@pytest.mark.parametrize("p,n", [(7, 100), (13, 200), (19, 60)])
def test_pattern_certified(p, n):
    e, alpha = rqe_expansion(p, n)
    assert e.certified >= n
    rep = certify_pattern(p, e, alpha)
    assert rep.ok, rep.failures[:3]
    assert rep.frobenius_relation and rep.condition_star


def test_pattern_degrees_p13():
    e, _ = rqe_expansion(13, 200)
    degs = e.degrees[:200]
    assert set(degs) == {1, 5, 57}
    assert [n + 1 for n, d in enumerate(degs) if d == 57] == [n for n in range(1, 201) if (4 * n - 1) % 81 == 0] == [61, 142]


def test_pattern_rejects_tampered_expansion():
    e, _ = rqe_expansion(7, 40)
    e.quotients[3] = e.quotients[3] + 1
    rep = certify_pattern(7, e)
    assert not rep.ok and not rep.shape_ok


def test_growth_peaks_approach_two_thirds():
    e, _ = rqe_expansion(13, 200)
    peaks = growth_peaks(e)
    assert [v for _, v in peaks] == [Fraction(1), Fraction(5, 6), Fraction(19, 28)]
    g = perfect_growth_check(13, 4, 6, e)
    assert g.expected == Fraction(2, 3)
    assert g.attained_at == []


@given(st.integers(1, 40))
def test_growth_target_is_two_thirds_for_every_j(j):
    p = 6 * j + 1
    assert Fraction(p - 2 * (2 * j) - 1, 3 * j) == Fraction(2, 3)


# -- hyperquadratic witnesses ----------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5])
def test_witness_frobenius_family(p):
    F = GF(p)
    alpha = newton_root(parse_xpoly(f"X^{p + 1}-T*X^{p}-1", F), TPoly.T(F), 200)
    T, one, zero = TPoly.T(F), TPoly.one(F), TPoly.zero(F)
    assert is_hyperquadratic_witness(alpha, p, T, one, one, zero)
    assert not is_hyperquadratic_witness(alpha, p, T, one * 2 if p > 2 else T, one, zero)


def test_witness_all_zero_rejected():
    F = GF(3)
    z = TPoly.zero(F)
    alpha = newton_root(parse_xpoly("X^2-T*X-1", F), TPoly.T(F), 10)
    with pytest.raises(HyperError):
        is_hyperquadratic_witness(alpha, 3, z, z, z, z)


# -- existence theorem solver -------------------------------------------------

def _random_instance(rng, p):
    F = GF(p)
    while True:
        C = RationalFunc.from_poly(TPoly(F, [rng.randrange(p) for _ in range(rng.randint(1, 3))] + [rng.randrange(1, p)]))
        B = RationalFunc.from_poly(TPoly(F, [rng.randrange(p) for _ in range(rng.randint(1, 3))] + [rng.randrange(1, p)]))
        A = C * C * from_rational_literal(-1, 12, F)
        try:
            return F, A, B, C, theorem1_solve(A, B, C, F)
        except HyperError:
            continue  # P not squarefree


@settings(max_examples=12)
@given(st.sampled_from([5, 7, 11, 13]), st.randoms(use_true_random=False))
def test_solver_finds_multiple(p, rng):
    F, A, B, C, res = _random_instance(rng, p)
    assert res.r == (p if p % 3 == 1 else p * p)
    assert res.verified
    assert res.H.support() == [0, 1, res.r, res.r + 1]


def test_solver_hypothesis_enforced():
    F = GF(7)
    one = RationalFunc.one(F)
    with pytest.raises(HyperError):
        theorem1_solve(one, one, one, F)
    with pytest.raises(HyperError):
        theorem1_solve(one, one, one, GF(3))


# -- the p = 13 transformation --------------------------------------------------

def test_mills_robbins_sign_corrected_variant():
    rep = mills_robbins_check(200, v_squared=-5)
    assert rep.ok
    assert str(rep.beta).startswith("1*T^-1 + 1*T^-3 + 3*T^-5")


def test_mills_robbins_precision_floor():
    with pytest.raises(HyperError):
        mills_robbins_check(49)
