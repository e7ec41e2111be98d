from __future__ import annotations

import pytest

from hslethal.cards import SYMBOLS
from hslethal.engine import check_invariants
from hslethal.oracle import InstanceError, PartitionInstance, ThreePartitionInstance
from hslethal.reductions import (
    DECK,
    HAND,
    STRICT_PAPER,
    CertificateError,
    EncodingOp,
    ReductionError,
    adapt_goal,
    deck_sequence,
    encoding_sequence,
    evaluate,
    extract_certificate,
    hand_layout,
    integer_card_sequence,
    reduce,
    reduce_board_3partition,
    reduce_deck_partition,
    reduce_hand_partition,
)
from hslethal.solver import Solved, solve
from hslethal.state import Goal, ScalingMode

S, I = EncodingOp.SHIFT, EncodingOp.INC
SV, BoK, BC, PF, ACH, BW = (SYMBOLS[k] for k in ("SV", "BoK", "BC", "PF", "ACH", "BW"))


def test_board_reduction_layout():
    p = reduce_board_3partition(ThreePartitionInstance((1,) * 6, 2))
    assert p.mode is ScalingMode.BOARD_SCALED and p.goal is Goal.LETHAL
    me, them = p.state.players
    assert me.hero.hero_id == "anduin" and me.hero.health == 1
    assert (me.hero.weapon.attack, me.hero.weapon.durability) == (1, 4)
    assert [(m.attack, m.health) for m in me.board] == [(4, 3)] * 6
    assert not me.hand and not me.deck
    assert them.hero.hero_id == "valeera" and them.hero.health == 1
    assert [(m.attack, m.health, m.taunt) for m in them.board] == [(5, 12, True)] * 2
    assert check_invariants(p.state) == []


def test_board_reduction_rejects_bad_sum():
    with pytest.raises(InstanceError):
        reduce("board3p", (1, 1, 1, 1, 1, 2), 2)


def test_hand_layout_example():
    lay = hand_layout(PartitionInstance((1, 2, 3)))
    assert lay.b == (2, 6, 10)
    assert (lay.taunt_attack, lay.taunt_health_each) == (6, 12)
    assert (lay.innervate_count, lay.charge_count) == (18, 3)
    assert hand_layout(PartitionInstance((1, 2, 3)), STRICT_PAPER).taunt_attack == 7


def test_hand_reduction_state():
    p = reduce_hand_partition(PartitionInstance((1, 2, 3)))
    me, them = p.state.players
    assert p.mode is ScalingMode.HAND_SCALED
    assert me.hero.hero_id == "jaina" and me.hero.health == 1
    bolvars = [h for h in me.hand if h.card_id == "bolvar_fordragon"]
    assert sorted(1 + h.bolvar_bonus for h in bolvars) == [2, 6, 10]
    assert sum(h.card_id == "innervate" for h in me.hand) == 18
    assert sum(h.card_id == "charge" for h in me.hand) == 3
    assert them.hero.hero_id == "uther" and them.hero.health == 2
    assert [(m.attack, m.health) for m in them.board] == [(6, 12)] * 2
    assert p.state.rules.board_cap is None
    strict = reduce_hand_partition(PartitionInstance((1, 2, 3)), STRICT_PAPER)
    assert strict.state.rules.board_cap == 7
    assert [m.attack for m in strict.state.opponent.board] == [7, 7]


def test_hand_reduction_small():
    p = reduce(HAND, (1, 1))
    assert [m.health for m in p.state.opponent.board] == [4, 4]
    assert isinstance(solve(p), Solved)


@pytest.mark.parametrize(
    "v,ops",
    [(932, [S, I, S, I, S, S, I, S, S, S, I]), (4, []), (12, [S, I]), (8, [S])],
)
def test_encoding_sequence(v, ops):
    assert encoding_sequence(v) == ops
    assert evaluate(ops) == v


@pytest.mark.parametrize("v", [0, 3, 6, -4])
def test_encoding_rejects(v):
    with pytest.raises(ReductionError):
        encoding_sequence(v)


def test_integer_card_sequence():
    assert integer_card_sequence(4) == [SV, ACH, SV, BC]
    assert integer_card_sequence(8) == [SV, ACH, SV, BC, SV, BC]
    assert integer_card_sequence(932) == [
        SV, ACH, SV, BC, SV, BC, SV, BoK, SV, BC, SV, BoK, SV, BC,
        SV, BC, SV, BoK, SV, BC, SV, BC, SV, BC, SV, BoK,
    ]


def test_deck_reduction_layout():
    p = reduce_deck_partition(PartitionInstance((1, 1)))
    me, them = p.state.players
    assert me.deck == [SV, PF, SV, PF, SV, ACH, SV, BC, SV, ACH, SV, BC, ACH]
    assert [h.card_id for h in me.hand] == [PF] * 8 + [SV]
    assert me.hero.hero_id == "uther" and me.hero.health == 30
    assert [m.frozen for m in me.board] == [True] * 4
    assert [m.card_id for m in me.board] == ["cult_master"] + ["bloodfen_raptor"] * 3
    assert [(m.card_id, m.attack, m.health) for m in them.board] == [
        ("target_dummy", 9, 4), ("target_dummy", 9, 4), ("millhouse_manastorm", 4, 4),
    ]
    assert them.deck == [BW] and them.hero.health == 1
    assert p.state.enemy_spells_cost_zero and p.state.murloc_graveyard == [BW]


def test_deck_length_is_polynomial():
    values = (233, 233)
    p = reduce(DECK, values)
    expected = 4 + sum(4 + 2 * len(encoding_sequence(4 * a)) for a in values) + 1
    assert len(p.state.active.deck) == expected == len(deck_sequence(values))
    assert [m.health for m in p.state.opponent.board[:2]] == [932, 932]


def test_adapters_on_board():
    base = reduce("board3p", (1,) * 6, 2)
    sv = adapt_goal(base, "survival")
    hero = sv.state.active.hero
    assert (hero.health, hero.max_health) == (28, 30)
    assert sv.state.opponent.board[-1].card_id == "mistress_of_mixtures"
    assert sv.state.opponent.board[-1].health == 1
    assert sv.state.active.hero.hero_power_used  # lesser heal is switched off
    bc = adapt_goal(base, Goal.BOARD_CLEAR)
    assert bc.goal is Goal.BOARD_CLEAR and not bc.experimental
    assert len(bc.state.opponent.board) == len(base.state.opponent.board)
    with pytest.raises(ReductionError):
        adapt_goal(bc, Goal.MIRROR)


def test_adapters_elsewhere_are_experimental():
    base = reduce(HAND, (1, 1))
    m = adapt_goal(base, Goal.MIRROR)
    assert m.experimental
    assert m.state.opponent.board[-1].card_id == "explosive_sheep"
    assert m.state.active.hero.health == 2
    assert not adapt_goal(base, Goal.SURVIVAL).experimental


def test_board_certificate():
    values = (1, 1, 1, 1, 1, 1)
    p = reduce("board3p", values, 2)
    res = solve(p)
    cert = extract_certificate(p, res.line)
    assert cert.sums == [3, 3] and cert.target == 3
    assert sorted(i for g in cert.groups for i in g) == list(range(6))


def test_hand_certificate():
    p = reduce(HAND, (1, 2, 3))
    res = solve(p)
    cert = extract_certificate(p, res.line)
    assert sorted(sorted(g) for g in cert.values((1, 2, 3))) == [[1, 2], [3]]
    assert cert.sums == [3, 3]


def test_certificate_needs_a_winning_line():
    p = reduce("board3p", (1,) * 6, 2)
    with pytest.raises(CertificateError):
        extract_certificate(p, [])
