import pytest

from coxlab import (
    BudgetExceededError,
    InvalidInputError,
    NotReducedError,
    build_structure,
    classify,
    commutation_classes,
    commutation_order,
    contracted_reduced_expression,
    contractible_long_sets,
    deletion_length,
    enumerate_reduced,
    evaluate_word,
    find_braid_moves,
    inversion_set,
    is_freely_braided,
    is_fully_covering,
    is_short_braid_avoiding,
)
from coxlab.analysis import (
    Budget,
    ReducedWordOracle,
    deletion_length_oracle,
    elements_up_to_length,
    reduced_words_bfs,
)
from coxlab.dihedral import line_through
from coxlab.roots import RootCache, root_sequence

from conftest import b3_chart, rational_root


def test_braid_moves_b3_example(b3):
    word = b3.parse_word("u s t s t u")
    moves = find_braid_moves(b3, word)
    long_moves = [m for m in moves if m.m == 4]
    assert len(long_moves) == 1
    assert (long_moves[0].start, long_moves[0].end) == (2, 5)
    applied = long_moves[0].apply(word)
    assert applied == b3.parse_word("u t s t s u")


def test_braid_moves_commuting_pair(a3):
    moves = find_braid_moves(a3, a3.parse_word("s u"))
    assert len(moves) == 1
    assert moves[0].m == 2
    assert moves[0].apply(a3.parse_word("s u")) == a3.parse_word("u s")


def test_braid_moves_single_generator(a3):
    assert find_braid_moves(a3, (0, 0, 0)) == ()


def test_enumerate_reduced_b3_exact(b3):
    words = enumerate_reduced(b3, b3.parse_word("u s t s t u"))
    expected = {
        b3.parse_word("u s t s t u"),
        b3.parse_word("s u t s t u"),
        b3.parse_word("u t s t s u"),
        b3.parse_word("u t s t u s"),
    }
    assert words == frozenset(expected)


def test_enumerate_reduced_a3_longest(a3):
    for _element, word in elements_up_to_length(a3, 6):
        if len(word) == 6:
            assert len(enumerate_reduced(a3, word)) == 16
            return
    raise AssertionError("longest element not found")


def test_enumerate_reduced_single_generator(a3):
    assert enumerate_reduced(a3, (1,)) == frozenset({(1,)})


def test_enumerate_reduced_rejects_non_reduced(a3):
    with pytest.raises(NotReducedError):
        enumerate_reduced(a3, (0, 0))


def test_budget_exceeded(b3):
    with pytest.raises(BudgetExceededError):
        enumerate_reduced(b3, b3.parse_word("u s t s t u"), Budget(max_words=2))
    with pytest.raises(BudgetExceededError):
        enumerate_reduced(b3, b3.parse_word("u s"), Budget(max_word_length=1))


def test_engines_agree_everywhere(b3, atilde2):
    for system, bound in ((b3, 7), (atilde2, 7)):
        cache = RootCache(system)
        oracle = ReducedWordOracle(system, cache)
        for element, word in elements_up_to_length(system, bound, cache):
            assert reduced_words_bfs(system, word) == oracle.words(element)


def test_commutation_classes_b3_example(b3):
    words = enumerate_reduced(b3, b3.parse_word("u s t s t u"))
    classes = commutation_classes(b3, words)
    as_sets = {frozenset(cls) for cls in classes}
    assert as_sets == {
        frozenset({b3.parse_word("u s t s t u"), b3.parse_word("s u t s t u")}),
        frozenset({b3.parse_word("u t s t s u"), b3.parse_word("u t s t u s")}),
    }


def test_fully_commutative_has_one_class(atilde2):
    word = atilde2.parse_word("t u s t u")
    words = enumerate_reduced(atilde2, word)
    assert len(commutation_classes(atilde2, words)) == 1


def test_identity_has_one_class(a3):
    assert commutation_classes(a3, [()]) == (((),),)


def test_commutation_order_b3(b3):
    w1 = b3.parse_word("u s t s t u")
    w2 = b3.parse_word("s u t s t u")
    w3 = b3.parse_word("u t s t s u")
    w4 = b3.parse_word("u t s t u s")
    assert commutation_order(b3, w1) == commutation_order(b3, w2)
    assert commutation_order(b3, w3) == commutation_order(b3, w4)
    assert commutation_order(b3, w1) != commutation_order(b3, w3)


def test_commutation_order_singleton(a3):
    assert commutation_order(a3, (0,)) == frozenset()


def test_commutation_order_antichain(a3):
    # orthogonal inversion set: s and u commute
    assert commutation_order(a3, a3.parse_word("s u")) == frozenset()


def test_heap_law_exhaustive(a3):
    cache = RootCache(a3)
    for _element, word in elements_up_to_length(a3, 6, cache):
        words = sorted(reduced_words_bfs(a3, word))
        classes = commutation_classes(a3, words)
        class_of = {}
        for idx, cls in enumerate(classes):
            for w in cls:
                class_of[w] = idx
        orders = {w: commutation_order(a3, w, cache) for w in words}
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                same_class = class_of[words[i]] == class_of[words[j]]
                same_order = orders[words[i]] == orders[words[j]]
                assert same_class == same_order


def test_contractible_b3_example(b3):
    chart = b3_chart(b3)
    contractible, n_w = contractible_long_sets(b3, b3.parse_word("u s t s t u"))
    assert n_w == 1
    assert contractible[0].member_set == frozenset(chart[n] for n in "BCDE")


def test_contractible_identity(a3):
    assert contractible_long_sets(a3, ()) == ((), 0)


def test_contractible_a3_inversion_triple(a3):
    # the (s,t,s) factor of (u,s,t,s,u) contracts this triple
    word = a3.parse_word("u s t s u")
    contractible, n_w = contractible_long_sets(a3, word)
    expected = frozenset(
        {
            rational_root(a3, (0, 1, 1)),
            rational_root(a3, (1, 1, 1)),
            rational_root(a3, (1, 0, 0)),
        }
    )
    assert expected in {line.member_set for line in contractible}
    assert n_w == len(contractible)


def test_deletion_length_b3_examples(b3):
    word = b3.parse_word("u s t s t u")
    assert deletion_length(b3, word, 3) == 3  # root C
    assert deletion_length(b3, word, 4) == 1  # root D
    for j in (1, 2, 5, 6):
        assert deletion_length(b3, word, j) == 5


def test_deletion_length_matches_oracle_small(b3):
    cache = RootCache(b3)
    word = b3.parse_word("u s t s t u")
    for w in sorted(reduced_words_bfs(b3, word)):
        for j in range(1, 7):
            assert deletion_length(b3, w, j, cache) == deletion_length_oracle(
                b3, w, j, cache
            )


def test_fully_covering_examples(a3, atilde2):
    covering, covered = is_fully_covering(a3, a3.parse_word("t s u t"))
    assert covering
    assert covered == 4
    not_covering, _ = is_fully_covering(atilde2, atilde2.parse_word("t u s t u"))
    assert not not_covering
    simple, covered = is_fully_covering(a3, (0,))
    assert simple and covered == 1


def test_freely_braided_examples(b3, a3):
    free, image = is_freely_braided(b3, b3.parse_word("u s t s t u"))
    assert free
    assert image == 2
    free, image = is_freely_braided(a3, ())
    assert free and image == 1


def test_freely_braided_witness_exists(a3):
    # some element with intersecting contractible long sets is not freely
    # braided and has fewer than 2^N commutation classes
    found = False
    cache = RootCache(a3)
    for _element, word in elements_up_to_length(a3, 6, cache):
        words = reduced_words_bfs(a3, word)
        structure = build_structure(inversion_set(a3, word, cache), cache)
        contractible, n_w = contractible_long_sets(
            a3, word, cache=cache, words=words, structure=structure
        )
        sets = [line.member_set for line in contractible]
        intersecting = any(
            sets[i] & sets[j]
            for i in range(len(sets))
            for j in range(i + 1, len(sets))
        )
        if intersecting:
            free, _ = is_freely_braided(a3, word, cache=cache, words=words,
                                        structure=structure)
            assert not free
            classes = commutation_classes(a3, words)
            assert len(classes) < 2 ** n_w
            found = True
    assert found


def test_short_braid_avoiding(a3, atilde2):
    assert is_short_braid_avoiding(atilde2, atilde2.parse_word("t u s t u"))
    assert not is_short_braid_avoiding(a3, a3.parse_word("s t s"))
    assert is_short_braid_avoiding(a3, ())


def test_contracted_reduced_expression_b3(b3):
    chart = b3_chart(b3)
    cache = RootCache(b3)
    start = b3.parse_word("u t s t u s")
    result = contracted_reduced_expression(b3, start, cache=cache)
    seq = root_sequence(b3, result, cache)
    member_set = frozenset(chart[n] for n in "BCDE")
    positions = [k for k, theta in enumerate(seq) if theta in member_set]
    assert positions[-1] - positions[0] == 3
    # same element, same commutation class
    assert evaluate_word(b3, result) == evaluate_word(b3, start)
    classes = commutation_classes(b3, enumerate_reduced(b3, start))
    cls_of = {w: i for i, cls in enumerate(classes) for w in cls}
    assert cls_of[result] == cls_of[start]


def test_contracted_reduced_expression_stays_put(b3):
    already = b3.parse_word("u s t s t u")
    result = contracted_reduced_expression(b3, already)
    classes = commutation_classes(b3, enumerate_reduced(b3, already))
    cls_of = {w: i for i, cls in enumerate(classes) for w in cls}
    assert cls_of[result] == cls_of[already]


def test_contracted_reduced_expression_identity(a3):
    assert contracted_reduced_expression(a3, ()) == ()


def test_contracted_reduced_expression_sweep(b3):
    # every freely braided element, starting from every reduced word
    cache = RootCache(b3)
    for _element, word in elements_up_to_length(b3, 7, cache):
        words = reduced_words_bfs(b3, word)
        free, _ = is_freely_braided(b3, word, cache=cache, words=words)
        if not free:
            continue
        contractible, _ = contractible_long_sets(b3, word, cache=cache, words=words)
        classes = commutation_classes(b3, words)
        cls_of = {w: i for i, cls in enumerate(classes) for w in cls}
        for start in sorted(words):
            result = contracted_reduced_expression(b3, start, cache=cache)
            assert cls_of[result] == cls_of[start]
            seq = root_sequence(b3, result, cache)
            for line in contractible:
                positions = [k for k, theta in enumerate(seq)
                             if theta in line.member_set]
                assert positions[-1] - positions[0] == len(line.members) - 1


def test_contracted_requires_freely_braided(a3):
    # find a non-freely-braided element and expect a user error
    for _element, word in elements_up_to_length(a3, 6):
        free, _ = is_freely_braided(a3, word)
        if not free:
            with pytest.raises(InvalidInputError, match="freely braided"):
                contracted_reduced_expression(a3, word)
            return
    raise AssertionError("expected a non-freely-braided element")


def test_braid_move_reverses_exactly_the_block(b3):
    cache = RootCache(b3)
    for _element, word in elements_up_to_length(b3, 7, cache):
        for w in sorted(reduced_words_bfs(b3, word)):
            seq = root_sequence(b3, w, cache)
            for move in find_braid_moves(b3, w):
                other_seq = root_sequence(b3, move.apply(w), cache)
                lo, hi = move.start - 1, move.end
                assert other_seq[lo:hi] == tuple(reversed(seq[lo:hi]))
                assert other_seq[:lo] == seq[:lo]
                assert other_seq[hi:] == seq[hi:]


def test_move_blocks_are_inversion_sets(b3):
    cache = RootCache(b3)
    for _element, word in elements_up_to_length(b3, 6, cache):
        if len(word) < 2:
            continue
        inv = inversion_set(b3, word, cache)
        for w in sorted(reduced_words_bfs(b3, word)):
            seq = root_sequence(b3, w, cache)
            for move in find_braid_moves(b3, w):
                block = seq[move.start - 1: move.end]
                line = line_through(inv, block[0], block[-1], cache)
                assert line.member_set == frozenset(block)
                assert line.kind == "full"
                assert len(line.members) == move.m
            # adjacent orthogonal entries form inversion 2-sets
            for i in range(len(seq) - 1):
                if cache.orthogonal(seq[i], seq[i + 1]):
                    line = line_through(inv, seq[i], seq[i + 1], cache)
                    assert len(line.members) == 2


def test_classification_report_b3(b3):
    report = classify(b3, b3.parse_word("u s t s t u"))
    data = report.to_json()
    assert data["length"] == 6
    assert data["reduced_count"] == 4
    assert data["commutation_class_count"] == 2
    assert data["N"] == 1
    assert data["freely_braided"] is True
    assert data["fully_covering"] is False
    assert data["short_braid_avoiding"] is False
    assert data["covered_count"] == 4
    assert len(data["contractible_long_sets"]) == 1
