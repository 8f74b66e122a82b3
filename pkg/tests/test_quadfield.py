import math
import random
from fractions import Fraction as F

from hypothesis import given, strategies as st
import pytest

from sturmdual.errors import DeterminantMinusOneError, SturmdualError
from sturmdual.quadfield import (
    CF,
    Quad,
    cf_dual_transform,
    cf_expand,
    cf_value,
    dual_frequency,
    dual_frequency_value,
    format_cf,
    format_quad,
    is_selfdual_frequency,
    is_sturm_number,
    normalize_cf,
    parse_cf,
    parse_quad,
    spectral,
    sqrt_int,
    squarefree_decompose,
)
from sturmdual.subst import Mat2

TAU = Quad(F(1, 2), F(1, 2), 5)
ALPHA_RHO = Quad(F(3, 2), F(-1, 2), 5)  # frequency of a->aba, b->ab

quads = st.builds(
    Quad,
    st.fractions(min_value=-8, max_value=8, max_denominator=6),
    st.fractions(min_value=-8, max_value=8, max_denominator=6),
    st.sampled_from([2, 3, 5, 7]),
)


def test_squarefree_decompose():
    assert squarefree_decompose(0) == (1, 0)
    assert squarefree_decompose(12) == (2, 3)
    assert squarefree_decompose(49) == (7, 1)
    assert squarefree_decompose(5) == (1, 5)


def test_star_examples():
    assert TAU.star() == Quad(F(1, 2), F(-1, 2), 5)
    assert TAU * TAU.star() == Quad(-1)
    assert sqrt_int(12) == Quad(0, 2, 3)


def test_floor_examples():
    # 2.618..., bracketed by the interval oracle floor(x) <= x < floor(x)+1
    x = Quad(F(3, 2), F(1, 2), 5)
    n = x.floor()
    assert n == 2
    assert Quad(n) <= x < Quad(n + 1)
    assert Quad(F(-3, 2), F(-1, 2), 5).floor() == -3
    assert Quad(F(7, 3)).floor() == 2


@given(quads)
def test_floor_bracket_property(x):
    n = x.floor()
    assert Quad(n) <= x < Quad(n + 1)


@given(quads, quads)
def test_star_is_field_automorphism(x, y):
    if x.d and y.d and x.d != y.d:
        x = Quad(x.p, x.q, y.d) if x.q else x
    try:
        prod = x * y
    except SturmdualError:
        return
    assert (x.star() * y.star()) == prod.star()
    assert (x.star() + y.star()) == (x + y).star()
    assert x.star().star() == x


@given(quads)
def test_float_agrees_with_exact_sign(x):
    approx = float(x)
    if abs(approx) > 1e-9:
        assert (approx > 0) == (x.sign() > 0)


def test_division_and_errors():
    assert (TAU / TAU) == Quad(1)
    assert Quad(1) / TAU == TAU - 1
    with pytest.raises(ZeroDivisionError):
        TAU / Quad(0)
    with pytest.raises(SturmdualError):
        Quad(0, 1, 2) + Quad(0, 1, 3)


def test_spectral_fibonacci_square():
    s = spectral(Mat2(2, 1, 1, 1))
    assert s.lam == TAU * TAU
    assert s.alpha == ALPHA_RHO
    assert s.ell == TAU - 1  # (sqrt(5)-1)/2
    assert s.lam_conj == s.lam.star()
    # right eigenvector (1-alpha, alpha), left eigenvector (1, ell), exactly
    m = Mat2(2, 1, 1, 1)
    va, vb = Quad(1) - s.alpha, s.alpha
    assert m.m11 * va + m.m12 * vb == s.lam * va
    assert m.m21 * va + m.m22 * vb == s.lam * vb
    assert Quad(m.m11) + s.ell * m.m21 == s.lam
    assert Quad(m.m12) + s.ell * m.m22 == s.lam * s.ell


def test_spectral_fibonacci():
    s = spectral(Mat2(1, 1, 1, 0))
    assert s.lam == TAU


def test_spectral_guards():
    with pytest.raises(SturmdualError):
        spectral(Mat2(1, 6, 1, 8))  # determinant 2
    with pytest.raises(SturmdualError):
        spectral(Mat2(1, 7, 1, 7))  # determinant 0
    with pytest.raises(SturmdualError):
        spectral(Mat2(1, 1, 0, 1))  # unimodular but not primitive


def float_cf_quotients(x: float, count: int) -> list[int]:
    """Floating continued-fraction oracle (reliable for small depth)."""
    out = []
    for _ in range(count):
        a = math.floor(x)
        out.append(a)
        frac = x - a
        if frac < 1e-12:
            break
        x = 1.0 / frac
    return out


def test_cf_expand_examples():
    c = cf_expand(ALPHA_RHO)
    assert c == CF((0, 2), (1,))
    assert float_cf_quotients(float(ALPHA_RHO), 12) == c.quotients(12)

    r2 = Quad(-1, 1, 2)
    c2 = cf_expand(r2)
    assert c2 == CF((0,), (2,))
    assert cf_value(c2) == r2

    assert cf_expand(Quad(F(7, 3))) == CF((2, 3), ())


def test_cf_value_examples():
    golden = Quad(F(-1, 2), F(1, 2), 5)  # x = 1/(1+x)
    assert cf_value(CF((0,), (1,))) == golden
    assert cf_value(CF((0, 2), (1,))) == ALPHA_RHO
    assert cf_value(CF((2, 3), ())) == Quad(F(7, 3))


def test_cf_roundtrip_random_surds():
    rng = random.Random(20260808)
    for _ in range(100):
        x = Quad(
            F(rng.randint(-9, 9), rng.randint(1, 7)),
            F(rng.randint(1, 9), rng.randint(1, 7)),
            rng.choice([2, 3, 5, 6, 7, 10]),
        )
        assert cf_value(cf_expand(x)) == x


def test_cf_canonical_form():
    # periodic part reduced to its primitive root, preperiod pulled back
    assert normalize_cf((0, 2), (1, 1)) == CF((0, 2), (1,))
    assert normalize_cf((0, 1, 2), (1, 2)) == CF((0,), (1, 2))
    assert parse_cf("[0; 2, (1)]") == CF((0, 2), (1,))
    assert format_cf(CF((0, 2), (1,))) == "[0; 2, (1)]"
    assert format_cf(CF((2, 3), ())) == "[2; 3]"


def test_dual_frequency_examples():
    s = spectral(Mat2(2, 1, 1, 1))
    assert dual_frequency(s) == ALPHA_RHO  # selfdual frequency
    with pytest.raises(DeterminantMinusOneError):
        dual_frequency(spectral(Mat2(1, 1, 1, 0)))


def test_dual_frequency_is_transposed_frequency():
    rng = random.Random(7)
    found = 0
    while found < 50:
        m = Mat2(rng.randint(1, 12), rng.randint(1, 12), rng.randint(1, 12), 0)
        # adjust the last entry for determinant one
        if m.m12 * m.m21 % 1 == 0:
            det_target = 1 + m.m12 * m.m21
            if det_target % m.m11 != 0:
                continue
            m = Mat2(m.m11, m.m12, m.m21, det_target // m.m11)
        if m.det() != 1 or not m.is_primitive():
            continue
        s = spectral(m)
        assert dual_frequency(s) == spectral(m.transpose()).alpha
        found += 1


def test_is_sturm_number():
    assert is_sturm_number(ALPHA_RHO)
    assert is_sturm_number(Quad(-1, 1, 2))
    assert not is_sturm_number(Quad(F(1, 3)))
    assert not is_sturm_number(Quad(F(1, 2), F(1, 10), 5))  # conjugate inside (0,1)


def test_cf_dual_transform_examples():
    fixed = cf_dual_transform(CF((0, 2), (1,)))
    assert fixed == CF((0, 2), (1,))

    r2 = Quad(-1, 1, 2)
    out = cf_dual_transform(cf_expand(r2))
    assert cf_value(out) == dual_frequency_value(r2)
    assert out == CF((0, 1, 1), (2,))

    with pytest.raises(SturmdualError):
        cf_dual_transform(CF((0, 3), ()))  # rational


def test_cf_dual_transform_against_oracle_on_sturm_numbers():
    rng = random.Random(99)
    tested = 0
    while tested < 30:
        x = Quad(
            F(rng.randint(-6, 6), rng.randint(1, 5)),
            F(rng.randint(1, 6), rng.randint(1, 5)),
            rng.choice([2, 3, 5, 6, 7]),
        )
        x = x - x.floor()
        if not is_sturm_number(x):
            continue
        out = cf_dual_transform(cf_expand(x))
        assert cf_value(out) == dual_frequency_value(x)
        tested += 1


def test_is_selfdual_frequency_examples():
    assert is_selfdual_frequency(parse_cf("[0; 2, (1)]"))
    assert not is_selfdual_frequency(parse_cf("[0; 1, (2, 1)]"))
    assert is_selfdual_frequency(parse_cf("[0; 1, (3, 3)]"))
    # purely periodic golden expansion is selfdual
    assert is_selfdual_frequency(CF((0,), (1,)))


def test_is_selfdual_frequency_matches_exact_duality():
    # brute comparison against alpha == alpha* through cf_value
    for text in ["[0; 2, (1)]", "[0; 1, (2, 1)]", "[0; 1, (3, 3)]", "[0; 2, (2)]"]:
        c = parse_cf(text)
        alpha = cf_value(c)
        assert is_selfdual_frequency(c) == (alpha == dual_frequency_value(alpha))


def test_quad_text_roundtrip():
    for x in [TAU, Quad(F(-3, 7)), Quad(0), Quad(0, 1, 2), Quad(2, -3, 7)]:
        assert parse_quad(format_quad(x)) == x
