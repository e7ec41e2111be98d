"""Static card registry.

Every card used by the reductions, the goal adapters and the scripted combo
is registered here with a machine-readable effect script.  Effects are drawn
from the closed :class:`EffectKind` enumeration; there is no free-form code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Mapping, Optional


class UnknownCardError(KeyError):
    """Raised for a card id that is not registered."""


class UnknownTokenError(KeyError):
    """Raised for a token id that is not registered."""


class CardKind(str, Enum):
    MINION = "minion"
    SPELL = "spell"
    WEAPON = "weapon"


class Tribe(str, Enum):
    NONE = "none"
    MURLOC = "murloc"
    BEAST = "beast"


class TargetRule(str, Enum):
    NONE = "none"
    ANY_MINION = "any_minion"
    FRIENDLY_MINION = "friendly_minion"
    ENEMY_MINION = "enemy_minion"
    ANY_BEAST = "any_beast"
    FRIENDLY_BEAST = "friendly_beast"
    ANY_CHARACTER = "any_character"


class EffectKind(str, Enum):
    BUFF = "buff"
    DOUBLE_ATTACK = "double_attack"
    GRANT_CHARGE_NO_FACE = "grant_charge_no_face"
    GAIN_TEMP_MANA = "gain_temp_mana"
    DRAW = "draw"
    DESTROY_ADJACENT_GAIN_STATS = "destroy_adjacent_gain_stats"
    SWAP_ATTACK_HEALTH = "swap_attack_health"
    SUMMON_DEAD_MURLOCS = "summon_dead_murlocs"
    DESTROY_ENEMY_MINION = "destroy_enemy_minion"
    AOE_DAMAGE_ALL_MINIONS = "aoe_damage_all_minions"
    RESTORE_EACH_HERO = "restore_each_hero"
    ADD_RANDOM_CARDS = "add_random_cards"
    IMMUNE_BUFF = "immune_buff"
    # Millhouse: only affects the opponent's *next* turn, so it is inert
    # inside a single simulated turn.
    ENEMY_SPELLS_COST_ZERO = "enemy_spells_cost_zero"
    # passive hooks
    BATTLECRIES_TWICE = "battlecries_twice"
    GAIN_ATTACK_ON_FRIENDLY_DEATH = "gain_attack_on_friendly_death"
    DRAW_ON_OTHER_FRIENDLY_DEATH = "draw_on_other_friendly_death"
    COST_LESS_PER_DEATH = "cost_less_per_death"


# Effects that create cards from a random pool.  They are only legal while
# replaying a scripted scenario.
RANDOM_EFFECTS = frozenset({EffectKind.ADD_RANDOM_CARDS})


@dataclass(frozen=True)
class Effect:
    kind: EffectKind
    attack: int = 0
    health: int = 0
    count: int = 0
    # ADD_RANDOM_CARDS: which card kind the pool yields, and who receives it
    pool: str = ""
    recipients: str = "self"
    discount: int = 0


@dataclass(frozen=True)
class EffectScript:
    battlecry: Optional[Effect] = None
    deathrattle: Optional[Effect] = None
    aura: Optional[Effect] = None
    hand_trigger: Optional[Effect] = None
    board_trigger: Optional[Effect] = None
    spell_effect: Optional[Effect] = None
    cost_modifier: Optional[Effect] = None
    target_rule: TargetRule = TargetRule.NONE

    def effects(self) -> tuple[Effect, ...]:
        slots = (
            self.battlecry,
            self.deathrattle,
            self.aura,
            self.hand_trigger,
            self.board_trigger,
            self.spell_effect,
            self.cost_modifier,
        )
        return tuple(e for e in slots if e is not None)


@dataclass(frozen=True)
class CardDef:
    card_id: str
    name: str
    kind: CardKind
    base_cost: int
    base_attack: int = 0
    base_health: int = 0
    durability: int = 0
    tribe: Tribe = Tribe.NONE
    keywords: frozenset = field(default_factory=frozenset)
    effect: EffectScript = field(default_factory=EffectScript)

    @property
    def is_minion(self) -> bool:
        return self.kind is CardKind.MINION

    @property
    def is_spell(self) -> bool:
        return self.kind is CardKind.SPELL

    @property
    def taunt(self) -> bool:
        return "taunt" in self.keywords

    @property
    def charge(self) -> bool:
        return "charge" in self.keywords


def _minion(card_id, name, cost, attack, health, *, tribe=Tribe.NONE, keywords=(), **effect):
    return CardDef(
        card_id=card_id,
        name=name,
        kind=CardKind.MINION,
        base_cost=cost,
        base_attack=attack,
        base_health=health,
        tribe=tribe,
        keywords=frozenset(keywords),
        effect=EffectScript(**effect),
    )


def _spell(card_id, name, cost, **effect):
    return CardDef(
        card_id=card_id,
        name=name,
        kind=CardKind.SPELL,
        base_cost=cost,
        effect=EffectScript(**effect),
    )


def _build_cards(bestial_wrath_rule: TargetRule = TargetRule.ANY_BEAST) -> dict[str, CardDef]:
    E, K = Effect, EffectKind
    cards = [
        _spell(
            "anyfin_can_happen", "Anyfin Can Happen", 10,
            spell_effect=E(K.SUMMON_DEAD_MURLOCS, count=7),
        ),
        _spell(
            "assassinate", "Assassinate", 5,
            spell_effect=E(K.DESTROY_ENEMY_MINION),
            target_rule=TargetRule.ENEMY_MINION,
        ),
        # cast on an opponent's beast in the hand construction, hence any_beast
        _spell(
            "bestial_wrath", "Bestial Wrath", 1,
            spell_effect=E(K.IMMUNE_BUFF, attack=2),
            target_rule=bestial_wrath_rule,
        ),
        _spell(
            "blessing_of_kings", "Blessing of Kings", 4,
            spell_effect=E(K.BUFF, attack=4, health=4),
            target_rule=TargetRule.ANY_MINION,
        ),
        _spell(
            "blessed_champion", "Blessed Champion", 5,
            spell_effect=E(K.DOUBLE_ATTACK),
            target_rule=TargetRule.ANY_MINION,
        ),
        _minion("bloodfen_raptor", "Bloodfen Raptor", 2, 3, 2, tribe=Tribe.BEAST),
        _minion(
            "bluegill_warrior", "Bluegill Warrior", 2, 2, 1,
            tribe=Tribe.MURLOC, keywords=("charge",),
        ),
        _minion(
            "bolvar_fordragon", "Bolvar Fordragon", 5, 1, 7,
            hand_trigger=E(K.GAIN_ATTACK_ON_FRIENDLY_DEATH, attack=1),
        ),
        _minion("boulderfist_ogre", "Boulderfist Ogre", 6, 6, 7),
        _minion(
            "brann_bronzebeard", "Brann Bronzebeard", 3, 2, 4,
            aura=E(K.BATTLECRIES_TWICE),
        ),
        _spell(
            "cabalists_tome", "Cabalist's Tome", 5,
            spell_effect=E(K.ADD_RANDOM_CARDS, count=3, pool="spell"),
        ),
        # +2 Attack: the older card text, required by the hand construction
        _spell(
            "charge", "Charge", 1,
            spell_effect=E(K.GRANT_CHARGE_NO_FACE, attack=2),
            target_rule=TargetRule.FRIENDLY_MINION,
        ),
        _minion(
            "crazed_alchemist", "Crazed Alchemist", 2, 2, 2,
            battlecry=E(K.SWAP_ATTACK_HEALTH),
            target_rule=TargetRule.ANY_MINION,
        ),
        _minion(
            "cult_master", "Cult Master", 4, 4, 2,
            board_trigger=E(K.DRAW_ON_OTHER_FRIENDLY_DEATH, count=1),
        ),
        _minion("duskboar", "Duskboar", 2, 4, 1, tribe=Tribe.BEAST),
        _minion("evil_heckler", "Evil Heckler", 4, 5, 4, keywords=("taunt",)),
        _minion(
            "explosive_sheep", "Explosive Sheep", 2, 1, 1,
            deathrattle=E(K.AOE_DAMAGE_ALL_MINIONS, count=2),
        ),
        _spell(
            "innervate", "Innervate", 0,
            spell_effect=E(K.GAIN_TEMP_MANA, count=1),
        ),
        CardDef(
            card_id="lights_justice",
            name="Light's Justice",
            kind=CardKind.WEAPON,
            base_cost=1,
            base_attack=1,
            durability=4,
        ),
        _minion(
            "millhouse_manastorm", "Millhouse Manastorm", 2, 4, 4,
            battlecry=E(K.ENEMY_SPELLS_COST_ZERO),
        ),
        _minion(
            "mistress_of_mixtures", "Mistress of Mixtures", 1, 2, 2,
            deathrattle=E(K.RESTORE_EACH_HERO, count=4),
        ),
        _minion("pit_fighter", "Pit Fighter", 5, 5, 6),
        _minion(
            "spellslinger", "Spellslinger", 3, 3, 4,
            battlecry=E(K.ADD_RANDOM_CARDS, count=1, pool="spell", recipients="each"),
        ),
        _minion(
            "stonetusk_boar", "Stonetusk Boar", 1, 1, 1,
            tribe=Tribe.BEAST, keywords=("charge",),
        ),
        _minion("target_dummy", "Target Dummy", 0, 0, 2, keywords=("taunt",)),
        _spell(
            "unstable_portal", "Unstable Portal", 2,
            spell_effect=E(K.ADD_RANDOM_CARDS, count=1, pool="minion", discount=3),
        ),
        _spell(
            "solemn_vigil", "Solemn Vigil", 5,
            spell_effect=E(K.DRAW, count=2),
            cost_modifier=E(K.COST_LESS_PER_DEATH, count=1),
        ),
        _minion(
            "void_terror", "Void Terror", 3, 3, 3,
            battlecry=E(K.DESTROY_ADJACENT_GAIN_STATS),
        ),
    ]
    return {c.card_id: c for c in cards}


CARDS: Mapping[str, CardDef] = MappingProxyType(_build_cards())

TOKENS: Mapping[str, CardDef] = MappingProxyType(
    {
        "silver_hand_recruit": _minion("silver_hand_recruit", "Silver Hand Recruit", 1, 1, 1),
        # Anyfin summons fresh copies of the dead murloc
        "bluegill_warrior": CARDS["bluegill_warrior"],
    }
)

# Short symbols used by the deck construction and its file format.
SYMBOLS: Mapping[str, str] = MappingProxyType(
    {
        "SV": "solemn_vigil",
        "BoK": "blessing_of_kings",
        "BC": "blessed_champion",
        "PF": "pit_fighter",
        "ACH": "anyfin_can_happen",
        "BW": "bluegill_warrior",
    }
)


def card_def(card_id: str) -> CardDef:
    try:
        return CARDS[card_id]
    except KeyError:
        raise UnknownCardError(f"unknown card: {card_id!r}") from None


def token_def(token_id: str) -> CardDef:
    try:
        return TOKENS[token_id]
    except KeyError:
        raise UnknownTokenError(f"unknown token: {token_id!r}") from None


def lookup(card_id: str) -> CardDef:
    """Resolve a card or token id; used wherever state references a card."""
    if card_id in CARDS:
        return CARDS[card_id]
    if card_id in TOKENS:
        return TOKENS[card_id]
    raise UnknownCardError(f"unknown card: {card_id!r}")

