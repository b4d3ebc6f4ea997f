import math
import random
from fractions import Fraction

import pytest

from landau_wigner.exactnum import ExactComplex
from landau_wigner.staralg import (
    EigenResult,
    LadderElement,
    Word,
    diagonal_wigner_element,
    eigen_check,
    normalize,
    number_a,
    number_b,
    product_of_shifted_numbers,
    star_product,
    verify_ladder,
    wigner_element,
)

A = LadderElement.generator("a")
ABAR = LadderElement.generator("abar")
B = LadderElement.generator("b")
BBAR = LadderElement.generator("bbar")
PROJ = LadderElement.generator("proj")


def test_generator_names():
    with pytest.raises(ValueError):
        LadderElement.generator("c")


def test_basic_rewriting():
    assert normalize(["a", "abar"]) == LadderElement(
        {Word(0, 0, False, 0, 0): 1, Word(1, 0, False, 1, 0): 1}
    )
    assert normalize(["b", "bbar"]) == LadderElement(
        {Word(0, 0, False, 0, 0): 1, Word(0, 1, False, 0, 1): 1}
    )
    # annihilator meets the projector
    assert star_product(A, PROJ).is_zero
    assert star_product(PROJ, ABAR).is_zero
    assert star_product(PROJ, PROJ) == PROJ


def test_number_expansion():
    for n in range(1, 6):
        lhs = normalize(["a"] * n + ["abar"] * n)
        assert lhs == product_of_shifted_numbers(1, n)


def test_projector_sandwich():
    # P a^n abar^n' b^l bbar^l' P = n! l! [n == n'][l == l'] P
    for n, np_ in ((2, 2), (2, 1), (0, 0), (3, 3)):
        for l, lp in ((1, 1), (0, 2), (2, 2)):
            seq = ["proj"] + ["a"] * n + ["abar"] * np_ + ["b"] * l + ["bbar"] * lp + ["proj"]
            result = normalize(seq)
            if n == np_ and l == lp:
                assert result == PROJ.scale(math.factorial(n) * math.factorial(l))
            else:
                assert result.is_zero


def test_wigner_element_forms():
    assert wigner_element(0, 0, 0, 0) == PROJ
    assert diagonal_wigner_element(1, 0) == LadderElement({Word(1, 0, True, 1, 0): 1})
    w21 = wigner_element(2, 1, 0, 0)
    expected = LadderElement(
        {Word(2, 0, True, 1, 0): ExactComplex(Fraction(1, 2), 0, 2)}  # 1/sqrt(2)
    )
    assert w21 == expected
    with pytest.raises(ValueError):
        wigner_element(-1, 0, 0, 0)


def test_projection_identity():
    indices = [(n, l) for n in range(5) for l in range(5)]
    for n, l in indices:
        w1 = diagonal_wigner_element(n, l)
        for n2, l2 in indices:
            w2 = diagonal_wigner_element(n2, l2)
            expected = w1 if (n, l) == (n2, l2) else LadderElement.zero()
            assert star_product(w1, w2) == expected


def test_projector_word_concatenation():
    # (abar P) * (P a) = abar P a
    lhs = star_product(
        LadderElement({Word(1, 0, True, 0, 0): 1}), LadderElement({Word(0, 0, True, 1, 0): 1})
    )
    assert lhs == LadderElement({Word(1, 0, True, 1, 0): 1})


def test_ladder_structure():
    assert star_product(A, diagonal_wigner_element(0, 0)).is_zero
    assert star_product(diagonal_wigner_element(0, 0), ABAR).is_zero
    assert star_product(ABAR, diagonal_wigner_element(0, 0)) == star_product(
        diagonal_wigner_element(1, 0), ABAR
    )
    assert all(verify_ladder(n, l) for n in range(4) for l in range(4))


def test_number_eigen_relations():
    for n in range(4):
        for l in range(4):
            w = diagonal_wigner_element(n, l)
            assert star_product(number_a(), w) == w.scale(n)
            assert star_product(w, number_a()) == w.scale(n)
            assert star_product(number_b(), w) == w.scale(l)


def test_eigen_check_values():
    assert eigen_check(0, 0) == EigenResult(Fraction(1, 2), Fraction(0))
    assert eigen_check(2, 5) == EigenResult(Fraction(5, 2), Fraction(3))
    assert eigen_check(3, 3) == EigenResult(Fraction(7, 2), Fraction(0))
    with pytest.raises(ValueError):
        eigen_check(-1, 0)
    # energy never depends on l
    for n in range(7):
        assert len({eigen_check(n, l).energy for l in range(7)}) == 1


def rand_elem(rng):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        w = Word(
            rng.randint(0, 2), rng.randint(0, 2), rng.random() < 0.5, rng.randint(0, 2), rng.randint(0, 2)
        )
        terms[w] = ExactComplex(
            Fraction(rng.randint(-3, 3), rng.randint(1, 2)),
            Fraction(rng.randint(-2, 2), rng.randint(1, 3)),
        )
    return LadderElement(terms)


def test_associativity_random():
    rng = random.Random(31)
    for _ in range(25):
        e1, e2, e3 = rand_elem(rng), rand_elem(rng), rand_elem(rng)
        assert star_product(star_product(e1, e2), e3) == star_product(e1, star_product(e2, e3))


def test_conjugation_antiautomorphism():
    rng = random.Random(37)
    for _ in range(25):
        e1, e2 = rand_elem(rng), rand_elem(rng)
        assert star_product(e1, e2).conjugate() == star_product(
            e2.conjugate(), e1.conjugate()
        )
    assert PROJ.conjugate() == PROJ
    assert A.conjugate() == ABAR


def test_confluence_fold_order():
    rng = random.Random(41)
    names = ["a", "abar", "b", "bbar", "proj"]
    for _ in range(40):
        seq = [rng.choice(names) for _ in range(rng.randint(1, 10))]
        left = normalize(seq)
        right = LadderElement.scalar(1)
        for name in reversed(seq):
            right = star_product(LadderElement.generator(name), right)
        assert left == right


def test_exponents_stay_nonnegative():
    rng = random.Random(43)
    for _ in range(30):
        e = star_product(rand_elem(rng), rand_elem(rng))
        for w in e.terms:
            assert min(w.ca, w.cb, w.aa, w.ab) >= 0


def test_normalize_passthrough():
    e = rand_elem(random.Random(1))
    assert normalize(e) == e
