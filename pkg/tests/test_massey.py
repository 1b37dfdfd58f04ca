import random
from collections import Counter
from itertools import product

import pytest

from deltaraag.massey import (
    MasseyError,
    classify_vanishing_pair,
    cup,
    get_target,
    is_valid_sequence,
    ku_witness_c4,
    ku_witness_sap,
    magnus_degree,
    magnus_expand,
    project_c4,
    random_valid_sequence,
    reduce_G0,
    strong_massey_solve,
    vanishing_pairs,
)
from deltaraag.unipotent import delta, evaluate
from deltaraag.words import commutator, parse_word

C4D = get_target("c4-delta")
C4R = get_target("c4-raag")
SAP = get_target("sap", 3)

psi = {i: tuple(1 if j == i else 0 for j in range(5)) for i in range(5)}


def add(*chars):
    return tuple(sum(c[j] for c in chars) % 2 for j in range(5))


class TestCup:
    def test_bilinear_and_graded_commutative(self):
        rng = random.Random(0)
        chars = list(product((0, 1), repeat=5))
        for _ in range(200):
            a, b, c = (rng.choice(chars) for _ in range(3))
            assert cup(C4D, add(a, b), c) == cup(C4D, a, c) ^ cup(C4D, b, c)
            assert cup(C4D, a, b) == cup(C4D, b, a)

    def test_known_values(self):
        assert cup(C4D, psi[1], psi[3]) == 0
        assert cup(C4D, psi[1], psi[2]) != 0
        # chi0 psi_i = psi_i^2
        assert cup(C4D, psi[0], psi[1]) == cup(C4D, psi[1], psi[1])

    def test_sap_squares(self):
        y1, y2 = (1, 0, 0), (0, 1, 0)
        # y_i y_j = 0 for i != j while y_i^2 survives
        assert cup(SAP, y1, y1) != 0
        assert cup(SAP, y1, y2) == 0


class TestTrichotomy:
    def test_c4_delta_counts(self):
        c = Counter(classify_vanishing_pair(C4D, a, b) for a, b in vanishing_pairs(C4D))
        assert c == {"G13": 12, "G24": 12, "shift": 18}

    def test_c4_raag_counts(self):
        c = Counter(classify_vanishing_pair(C4R, a, b) for a, b in vanishing_pairs(C4R))
        assert c == {"F13": 9, "F24": 9, "equal": 9}

    def test_shift_example(self):
        a = add(psi[1], psi[2])
        assert classify_vanishing_pair(C4D, a, add(a, psi[0])) == "shift"

    def test_rejections(self):
        with pytest.raises(MasseyError, match="does not vanish"):
            classify_vanishing_pair(C4D, psi[1], psi[2])
        with pytest.raises(MasseyError, match="nonzero"):
            classify_vanishing_pair(C4D, psi[1], (0,) * 5)


class TestStrongMassey:
    @pytest.mark.parametrize(
        "seq, case",
        [
            ([psi[1], add(psi[1], psi[0]), psi[1]], "a"),
            ([psi[2], psi[4], psi[2], psi[4]], "b"),
            ([add(psi[1], psi[2]), add(psi[1], psi[2], psi[0]), add(psi[1], psi[2])], "c"),
            ([add(psi[1], psi[2], psi[0]), add(psi[1], psi[2])], "c"),
            ([add(psi[1], psi[2]), add(psi[1], psi[2], psi[0]), add(psi[1], psi[2]), add(psi[1], psi[2], psi[0])], "c"),
        ],
    )
    def test_cases(self, seq, case):
        res = strong_massey_solve(C4D, seq)
        assert res.verification["ok"]
        assert [b["case"] for b in res.blocks] == [case]

    def test_zero_character_splits_blocks(self):
        seq = [psi[1], (0,) * 5, psi[2], psi[4]]
        res = strong_massey_solve(C4D, seq)
        assert res.verification["ok"]
        assert res.blocks == [
            {"start": 1, "end": 1, "case": "character"},
            {"start": 3, "end": 4, "case": "b"},
        ]

    def test_nonvanishing_cup_rejected(self):
        with pytest.raises(MasseyError, match="does not vanish"):
            strong_massey_solve(C4D, [psi[1], psi[2]])

    @pytest.mark.parametrize("target", [C4D, C4R, SAP], ids=["c4-delta", "c4-raag", "sap"])
    def test_exhaustive_length_three(self, target):
        chars = list(product((0, 1), repeat=len(target.generators)))
        n = 0
        for L in (1, 2, 3):
            for seq in product(chars, repeat=L):
                if is_valid_sequence(target, seq):
                    assert strong_massey_solve(target, seq).verification["ok"]
                    n += 1
        assert n > 0

    def test_random_sequences_are_valid(self):
        rng = random.Random(9)
        for _ in range(50):
            seq = random_valid_sequence(C4D, rng.randint(1, 8), rng)
            assert is_valid_sequence(C4D, seq)

    def test_json(self):
        out = strong_massey_solve(C4D, [psi[1], psi[3]]).to_json(C4D)
        assert out["images"]["x1"][0][1] == "1"
        assert out["images"]["x3"][1][2] == "1"
        assert set(out["images"]) == {"x0", "x1", "x2", "x3", "x4"}


class TestMagnus:
    def test_reduce_G0(self):
        assert reduce_G0(parse_word("y1*y2*y2*y1", "y")) == ()
        assert reduce_G0(parse_word("y1^-1*y2", "y")) == ((1, 1), (2, 1))

    def test_commutator_expansion(self):
        c = commutator(((1, 1),), ((2, 1),))
        assert magnus_degree(3, c, 6) == 2
        assert min(x for x in magnus_expand(3, c, 2) if len(x) == 2) == (1, 2)

    def test_magnus_is_a_homomorphism_invariant(self):
        # equal elements of G0 have equal expansions
        rng = random.Random(4)
        for _ in range(100):
            w = tuple((rng.randint(1, 3), 1) for _ in range(rng.randint(0, 8)))
            assert magnus_expand(3, w, 6) == magnus_expand(3, reduce_G0(w), 6)


class TestKU:
    def test_worked_example(self):
        g = commutator(((1, 1),), ((2, 1),))
        w = ku_witness_sap(3, g, 6)
        assert w.n == 3
        assert w.value == delta(3, (1, 3))
        assert w.certificate["relators"]["ok"]

    def test_trivial_rejected(self):
        with pytest.raises(MasseyError, match="trivial"):
            ku_witness_sap(3, parse_word("y1*y1", "y"), 6)
        with pytest.raises(MasseyError, match="trivial"):
            ku_witness_c4(commutator(((1, 1),), ((2, 1),)), 6)

    def test_degree_cap(self):
        g = parse_word("y1*y2*y1*y2*y1*y2*y1*y2", "y")
        with pytest.raises(MasseyError, match="exceeds"):
            ku_witness_sap(2, g, 2)

    def test_c4_routes(self):
        for text, route in (("x1*x3", "G13"), ("x2*x4^-1", "G24"), ("x0", "G13")):
            w = ku_witness_c4(parse_word(text), 6)
            assert w.route == route
            assert w.certificate["relators"]["ok"]
            assert not w.value.is_identity()
            assert evaluate(parse_word(text), w.images) == w.value

    def test_projection(self):
        assert project_c4(parse_word("x1^-1"), "G13") == ((2, 1), (1, 1))
        assert project_c4(parse_word("x2"), "G13") == ()
