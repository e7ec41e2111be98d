"""Value types for a single-turn game snapshot.

States are mutable only while the engine builds a successor; every public
engine operation clones first, so callers can treat a :class:`GameState` as
a value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .cards import CardDef, TargetRule, lookup

ACTIVE = 0
OPPONENT = 1
SIDE_NAMES = ("active", "opponent")


class ScalingMode(str, Enum):
    BOARD_SCALED = "board_scaled"
    HAND_SCALED = "hand_scaled"
    DECK_SCALED = "deck_scaled"

    @property
    def board_cap(self) -> Optional[int]:
        return 7 if self is ScalingMode.DECK_SCALED else None

    @property
    def hand_cap(self) -> Optional[int]:
        return None if self is ScalingMode.HAND_SCALED else 10

    @property
    def deck_cap(self) -> Optional[int]:
        return None

    @property
    def temp_mana_uncapped(self) -> bool:
        return self is ScalingMode.HAND_SCALED


class Goal(str, Enum):
    LETHAL = "lethal"
    SURVIVAL = "survival"
    BOARD_CLEAR = "board_clear"
    MIRROR = "mirror"


class GameResult(str, Enum):
    ONGOING = "ongoing"
    ACTIVE_WON = "active_won"
    ACTIVE_LOST = "active_lost"


HERO_IDS = ("anduin", "jaina", "uther", "valeera")
MANA_CAP = 10


@dataclass(frozen=True)
class Rules:
    """Per-puzzle rule overrides layered on top of the scaling mode."""

    board_cap: Optional[int] = None  # None: use the mode's cap
    bestial_wrath_rule: TargetRule = TargetRule.ANY_BEAST


class Minion:
    __slots__ = (
        "card_id",
        "attack",
        "health",
        "max_health",
        "frozen",
        "has_charge",
        "no_face",
        "attacks_used",
        "summoned_this_turn",
        "immune",
        "destroyed",
        "tag",
    )

    def __init__(
        self,
        card_id: str,
        attack: int,
        health: int,
        max_health: Optional[int] = None,
        *,
        frozen: bool = False,
        has_charge: Optional[bool] = None,
        no_face: bool = False,
        attacks_used: int = 0,
        summoned_this_turn: bool = False,
        immune: bool = False,
    ):
        self.card_id = card_id
        self.attack = attack
        self.health = health
        self.max_health = health if max_health is None else max_health
        self.frozen = frozen
        if has_charge is None:
            has_charge = lookup(card_id).charge
        self.has_charge = has_charge
        self.no_face = no_face
        self.attacks_used = attacks_used
        self.summoned_this_turn = summoned_this_turn
        self.immune = immune
        # set by "destroy" effects; such minions leave at the next death pass
        self.destroyed = False
        # bookkeeping label carried through copies; never part of the key
        self.tag = None

    @classmethod
    def fresh(cls, card: CardDef) -> "Minion":
        return cls(card.card_id, card.base_attack, card.base_health, summoned_this_turn=True)

    @property
    def card(self) -> CardDef:
        return lookup(self.card_id)

    @property
    def taunt(self) -> bool:
        return lookup(self.card_id).taunt

    @property
    def dead(self) -> bool:
        return self.health <= 0 or self.destroyed

    def copy(self) -> "Minion":
        m = Minion.__new__(Minion)
        m.card_id = self.card_id
        m.attack = self.attack
        m.health = self.health
        m.max_health = self.max_health
        m.frozen = self.frozen
        m.has_charge = self.has_charge
        m.no_face = self.no_face
        m.attacks_used = self.attacks_used
        m.summoned_this_turn = self.summoned_this_turn
        m.immune = self.immune
        m.destroyed = self.destroyed
        m.tag = self.tag
        return m

    def key(self) -> tuple:
        return (
            self.card_id,
            self.attack,
            self.health,
            self.max_health,
            self.frozen,
            self.has_charge,
            self.no_face,
            self.attacks_used,
            self.summoned_this_turn,
            self.immune,
        )

    def mirror_key(self) -> tuple:
        return (self.card_id, self.attack, self.health, self.max_health, self.frozen)

    def __eq__(self, other):
        return isinstance(other, Minion) and self.key() == other.key() and self.destroyed == other.destroyed

    def __repr__(self):
        return f"Minion({self.card_id} {self.attack}/{self.health})"


@dataclass
class Weapon:
    attack: int
    durability: int
    card_id: str = "lights_justice"


@dataclass
class Hero:
    hero_id: str
    health: int
    max_health: int = 30
    weapon: Optional[Weapon] = None
    hero_power_used: bool = False
    attacks_used: int = 0
    # latched the moment health reaches 0, so later healing cannot revive
    dead: bool = False

    def copy(self) -> "Hero":
        w = self.weapon
        return Hero(
            self.hero_id,
            self.health,
            self.max_health,
            None if w is None else Weapon(w.attack, w.durability, w.card_id),
            self.hero_power_used,
            self.attacks_used,
            self.dead,
        )

    @property
    def attack(self) -> int:
        return self.weapon.attack if self.weapon else 0

    def key(self) -> tuple:
        w = self.weapon
        wk = None if w is None else (w.card_id, w.attack, w.durability)
        return (self.hero_id, self.health, self.max_health, wk, self.hero_power_used, self.attacks_used, self.dead)


@dataclass(frozen=True)
class HandCard:
    card_id: str
    bolvar_bonus: int = 0
    discount: int = 0

    def key(self) -> tuple:
        return (self.card_id, self.bolvar_bonus, self.discount)


@dataclass
class PlayerState:
    hero: Hero
    mana: int = 10
    mana_crystals: int = 10
    hand: list = field(default_factory=list)  # list[HandCard]
    deck: list = field(default_factory=list)  # list[str], index 0 draws next
    board: list = field(default_factory=list)  # list[Minion]
    fatigue: int = 0

    def copy(self) -> "PlayerState":
        return PlayerState(
            self.hero.copy(),
            self.mana,
            self.mana_crystals,
            list(self.hand),
            list(self.deck),
            [m.copy() for m in self.board],
            self.fatigue,
        )


@dataclass
class GameState:
    mode: ScalingMode
    players: list  # [active, opponent]
    deaths_active: int = 0
    deaths_total: int = 0
    enemy_spells_cost_zero: bool = False
    murloc_graveyard: list = field(default_factory=list)
    spells_cast: int = 0
    result: GameResult = GameResult.ONGOING
    turn_ended: bool = False
    rules: Rules = field(default_factory=Rules)

    @property
    def active(self) -> PlayerState:
        return self.players[ACTIVE]

    @property
    def opponent(self) -> PlayerState:
        return self.players[OPPONENT]

    @property
    def board_cap(self) -> Optional[int]:
        if self.rules.board_cap is not None:
            return self.rules.board_cap
        return self.mode.board_cap

    @property
    def hand_cap(self) -> Optional[int]:
        return self.mode.hand_cap

    @property
    def ongoing(self) -> bool:
        return self.result is GameResult.ONGOING and not self.turn_ended

    def clone(self) -> "GameState":
        return GameState(
            self.mode,
            [p.copy() for p in self.players],
            self.deaths_active,
            self.deaths_total,
            self.enemy_spells_cost_zero,
            list(self.murloc_graveyard),
            self.spells_cast,
            self.result,
            self.turn_ended,
            self.rules,
        )


@dataclass(frozen=True)
class Ref:
    """Reference to a character: ``kind`` is "hero" or "minion"."""

    kind: str
    side: int
    index: int = 0

    @staticmethod
    def hero(side: int) -> "Ref":
        return Ref("hero", side)

    @staticmethod
    def minion(side: int, index: int) -> "Ref":
        return Ref("minion", side, index)


@dataclass(frozen=True)
class PlayCard:
    hand_index: int
    position: Optional[int] = None
    target: Optional[Ref] = None
    scripted_outcomes: Optional[tuple] = None


@dataclass(frozen=True)
class Attack:
    attacker: Ref
    defender: Ref


@dataclass(frozen=True)
class HeroPower:
    target: Optional[Ref] = None


@dataclass(frozen=True)
class EndTurn:
    pass


Action = PlayCard | Attack | HeroPower | EndTurn  # type: ignore[operator]
