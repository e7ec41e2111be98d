from __future__ import annotations

import pytest

from hslethal.cards import (
    CARDS,
    CardKind,
    EffectKind,
    TargetRule,
    Tribe,
    UnknownCardError,
    UnknownTokenError,
    card_def,
    token_def,
)

APPENDIX_STATS = {
    # card_id: (cost, attack, health)
    "bluegill_warrior": (2, 2, 1),
    "target_dummy": (0, 0, 2),
    "pit_fighter": (5, 5, 6),
    "evil_heckler": (4, 5, 4),
    "duskboar": (2, 4, 1),
    "bolvar_fordragon": (5, 1, 7),
    "bloodfen_raptor": (2, 3, 2),
    "cult_master": (4, 4, 2),
    "millhouse_manastorm": (2, 4, 4),
    "mistress_of_mixtures": (1, 2, 2),
    "explosive_sheep": (2, 1, 1),
    "brann_bronzebeard": (3, 2, 4),
    "spellslinger": (3, 3, 4),
    "void_terror": (3, 3, 3),
    "crazed_alchemist": (2, 2, 2),
    "stonetusk_boar": (1, 1, 1),
    "boulderfist_ogre": (6, 6, 7),
}

NAMED_IN_CONSTRUCTIONS = [
    "anyfin_can_happen", "assassinate", "bestial_wrath", "blessing_of_kings",
    "blessed_champion", "bloodfen_raptor", "bluegill_warrior", "bolvar_fordragon",
    "brann_bronzebeard", "cabalists_tome", "charge", "crazed_alchemist", "cult_master",
    "duskboar", "evil_heckler", "explosive_sheep", "innervate", "lights_justice",
    "millhouse_manastorm", "mistress_of_mixtures", "pit_fighter", "spellslinger",
    "stonetusk_boar", "target_dummy", "unstable_portal", "solemn_vigil", "void_terror",
]


@pytest.mark.parametrize("card_id,stats", sorted(APPENDIX_STATS.items()))
def test_minion_stats_match_card_boxes(card_id, stats):
    c = card_def(card_id)
    assert c.kind is CardKind.MINION
    assert (c.base_cost, c.base_attack, c.base_health) == stats


def test_every_construction_card_is_registered():
    for card_id in NAMED_IN_CONSTRUCTIONS:
        assert card_def(card_id).card_id == card_id


def test_blessing_of_kings():
    c = card_def("blessing_of_kings")
    assert c.kind is CardKind.SPELL and c.base_cost == 4
    eff = c.effect.spell_effect
    assert (eff.kind, eff.attack, eff.health) == (EffectKind.BUFF, 4, 4)
    assert c.effect.target_rule is TargetRule.ANY_MINION


def test_target_dummy_has_taunt():
    c = card_def("target_dummy")
    assert c.keywords == frozenset({"taunt"})
    assert c.base_cost == 0


def test_keywords_and_tribes():
    bw = card_def("bluegill_warrior")
    assert bw.charge and bw.tribe is Tribe.MURLOC
    assert card_def("duskboar").tribe is Tribe.BEAST
    assert card_def("evil_heckler").taunt


def test_lights_justice_is_a_weapon():
    c = card_def("lights_justice")
    assert c.kind is CardKind.WEAPON
    assert (c.base_attack, c.durability) == (1, 4)


def test_charge_adds_two_attack():
    eff = card_def("charge").effect.spell_effect
    assert eff.kind is EffectKind.GRANT_CHARGE_NO_FACE and eff.attack == 2


def test_innervate_gives_one_crystal():
    eff = card_def("innervate").effect.spell_effect
    assert eff.kind is EffectKind.GAIN_TEMP_MANA and eff.count == 1


def test_out_of_scope_cards_are_unknown():
    for card_id in ("yogg_saron", "blingtron_3000"):
        with pytest.raises(UnknownCardError):
            card_def(card_id)


def test_tokens():
    recruit = token_def("silver_hand_recruit")
    assert (recruit.base_cost, recruit.base_attack, recruit.base_health) == (1, 1, 1)
    assert not recruit.keywords
    assert token_def("bluegill_warrior") == card_def("bluegill_warrior")
    with pytest.raises(UnknownTokenError):
        token_def("explosive_sheep")


def test_registry_is_immutable_and_deterministic():
    assert card_def("pit_fighter") is card_def("pit_fighter")
    with pytest.raises(TypeError):
        CARDS["new"] = CARDS["pit_fighter"]  # type: ignore[index]
    assert len({c.card_id for c in CARDS.values()}) == len(CARDS)
