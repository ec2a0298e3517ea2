import random

import pytest

from coxlab import (
    InvalidInputError,
    act,
    evaluate_word,
    simple_reflection,
    validate_system,
)
from coxlab.analysis import elements_up_to_length
from coxlab.coxeter import form_value, identity_element, system_from_json
from coxlab.roots import Root


def test_b3_matrix_accepted(b3):
    assert b3.matrix == ((1, 4, 2), (4, 1, 3), (2, 3, 1))
    assert b3.generator_names == ("s", "t", "u")


def test_atilde2_accepted(atilde2):
    assert atilde2.matrix[0][1] == atilde2.matrix[1][2] == atilde2.matrix[0][2] == 3


def test_off_diagonal_one_rejected():
    with pytest.raises(InvalidInputError, match=r"\(s,t\)"):
        validate_system(("s", "t"), ((1, 1), (1, 1)))


def test_asymmetric_rejected():
    with pytest.raises(InvalidInputError, match="symmetric"):
        validate_system(("s", "t", "u"), ((1, 3, 2), (4, 1, 3), (2, 3, 1)))


def test_bad_diagonal_rejected():
    with pytest.raises(InvalidInputError, match="diagonal"):
        validate_system(("s", "t"), ((2, 3), (3, 1)))


def test_negative_entry_rejected():
    with pytest.raises(InvalidInputError):
        validate_system(("s", "t"), ((1, -3), (-3, 1)))


def test_system_json_roundtrip(b3):
    assert system_from_json(b3.to_json()).matrix == b3.matrix


def test_simple_reflection_is_involution(b3):
    for s in range(3):
        refl = simple_reflection(b3, s)
        twice = evaluate_word(b3, (s, s))
        assert twice == identity_element(b3)
        assert refl.right_multiply(s) == identity_element(b3)


def test_b2_reflection_formula(b2):
    # s(alpha_t) = alpha_t + sqrt2 alpha_s
    s = simple_reflection(b2, 0)
    image = s.column(1)
    sqrt2 = -(b2.b(0, 1) + b2.b(0, 1))
    assert image[0] == sqrt2
    assert image[1] == b2.ring.one()


def test_reflection_negates_own_root(a3):
    for s in range(3):
        refl = simple_reflection(a3, s)
        assert refl.column(s)[s] == a3.ring.from_rational(-1)


def test_empty_word_is_identity(a3):
    assert evaluate_word(a3, ()) == identity_element(a3)


def test_b2_braid_words_agree(b2):
    assert evaluate_word(b2, (0, 1, 0, 1)) == evaluate_word(b2, (1, 0, 1, 0))


def test_defining_relations_hold(a3, b3, h3):
    for system in (a3, b3, h3):
        n = system.rank
        for i in range(n):
            for j in range(i + 1, n):
                m = system.matrix[i][j]
                word = tuple((i, j)[k % 2] for k in range(2 * m))
                assert evaluate_word(system, word) == identity_element(system)


def test_identity_acts_trivially(a3):
    v = tuple(a3.ring.from_rational(k + 1) for k in range(3))
    assert act(identity_element(a3), v) == v


def test_action_preserves_form(b3):
    # exact B-isometry: B(w e_i, w e_j) = B(e_i, e_j) for all basis pairs
    rng = random.Random(7)
    for _ in range(100):
        word = tuple(rng.randrange(3) for _ in range(rng.randint(0, 12)))
        w = evaluate_word(b3, word)
        columns = [w.column(j) for j in range(3)]
        for i in range(3):
            for j in range(3):
                assert form_value(b3, columns[i], columns[j]) == b3.b(i, j)


def test_a3_word_sends_alpha_u_negative(a3):
    w = evaluate_word(a3, a3.parse_word("t s t u"))
    image = Root(w.column(2))
    assert image.is_negative()


def test_faithfulness_at_desk_scale(a3):
    elements = list(elements_up_to_length(a3, 6))
    assert len(elements) == 24  # the full group, each matrix distinct
    matrices = {element for element, _ in elements}
    assert len(matrices) == 24
    hashes = {hash(element) for element, _ in elements}
    assert len(hashes) == 24  # no false merges under hashing


def test_act_dimension_mismatch(a3):
    with pytest.raises(InvalidInputError):
        act(identity_element(a3), (a3.ring.one(),))


def test_parse_word_json_and_text(b3):
    assert b3.parse_word("u s t") == (2, 0, 1)
    assert b3.parse_word('["u", "s", "t"]') == (2, 0, 1)
    with pytest.raises(InvalidInputError):
        b3.parse_word("u s x")
