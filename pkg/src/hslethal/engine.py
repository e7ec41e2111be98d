"""Deterministic single-turn rules engine.

Public operations are pure: they clone the incoming state and return the
successor.  The underscore helpers mutate the clone in place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .cards import CardKind, EffectKind, TargetRule, Tribe, lookup
from .state import (
    ACTIVE,
    MANA_CAP,
    OPPONENT,
    Attack,
    EndTurn,
    GameResult,
    GameState,
    Goal,
    HandCard,
    HeroPower,
    Minion,
    PlayCard,
    Ref,
    Weapon,
)

HERO_POWER_COST = 2


class EngineError(Exception):
    pass


class IllegalActionError(EngineError):
    pass


class PolicyError(EngineError):
    """A random-generation effect could not be resolved under the policy."""


class Forbidden:
    """Random-generation effects are errors (the solver runs under this)."""

    def take(self, pool: str) -> str:
        raise PolicyError("random-generation effect under Forbidden policy")

    def __repr__(self):
        return "FORBIDDEN"


FORBIDDEN = Forbidden()


@dataclass
class Scripted:
    """Random outcomes supplied up front and consumed in order."""

    outcomes: list
    consumed: int = 0

    def take(self, pool: str) -> str:
        if self.consumed >= len(self.outcomes):
            raise PolicyError("scripted outcomes exhausted")
        card_id = self.outcomes[self.consumed]
        self.consumed += 1
        try:
            card = lookup(card_id)
        except KeyError:
            raise PolicyError(f"scripted outcome {card_id!r} is not a registered card") from None
        if card.kind.value != pool:
            raise PolicyError(f"scripted outcome {card_id!r} is a {card.kind.value}, expected {pool}")
        return card_id

    @property
    def remaining(self) -> int:
        return len(self.outcomes) - self.consumed


Policy = Union[Forbidden, Scripted]

HERO_POWERS = {
    "jaina": ("fireblast", TargetRule.ANY_CHARACTER),
    "anduin": ("lesser_heal", TargetRule.ANY_CHARACTER),
    "uther": ("reinforce", TargetRule.NONE),
}


# ---------------------------------------------------------------------------
# costs and targets


def dynamic_cost(state: GameState, hand_index: int) -> int:
    hc = state.active.hand[hand_index]
    card = lookup(hc.card_id)
    if card.is_spell and state.enemy_spells_cost_zero:
        return 0
    cost = card.base_cost - hc.discount
    mod = card.effect.cost_modifier
    if mod is not None and mod.kind is EffectKind.COST_LESS_PER_DEATH:
        cost -= mod.count * state.deaths_total
    return max(cost, 0)


def _target_rule(state: GameState, card_id: str) -> TargetRule:
    if card_id == "bestial_wrath":
        return state.rules.bestial_wrath_rule
    return lookup(card_id).effect.target_rule


def _targets(state: GameState, rule: TargetRule) -> list:
    out = []
    if rule is TargetRule.NONE:
        return out
    if rule is TargetRule.ANY_CHARACTER:
        out.append(Ref.hero(ACTIVE))
        out.append(Ref.hero(OPPONENT))
    for side in (ACTIVE, OPPONENT):
        if side == ACTIVE and rule is TargetRule.ENEMY_MINION:
            continue
        if side == OPPONENT and rule in (TargetRule.FRIENDLY_MINION, TargetRule.FRIENDLY_BEAST):
            continue
        beasts_only = rule in (TargetRule.ANY_BEAST, TargetRule.FRIENDLY_BEAST)
        for i, m in enumerate(state.players[side].board):
            if beasts_only and lookup(m.card_id).tribe is not Tribe.BEAST:
                continue
            out.append(Ref.minion(side, i))
    return out


def _has_space(state: GameState, side: int) -> bool:
    cap = state.board_cap
    return cap is None or len(state.players[side].board) < cap


# ---------------------------------------------------------------------------
# legal actions


def _can_attack_minion(m: Minion) -> bool:
    return (
        m.attack >= 1
        and m.attacks_used < 1
        and not m.frozen
        and (m.has_charge or not m.summoned_this_turn)
    )


def _defenders(state: GameState, no_face: bool) -> list:
    board = state.opponent.board
    taunts = [i for i, m in enumerate(board) if m.taunt]
    if taunts:
        return [Ref.minion(OPPONENT, i) for i in taunts]
    out = [Ref.minion(OPPONENT, i) for i in range(len(board))]
    if not no_face:
        out.append(Ref.hero(OPPONENT))
    return out


def legal_actions(state: GameState) -> list:
    """Every action whose application succeeds (random effects aside)."""
    if not state.ongoing:
        return []
    actions: list = []
    me = state.active

    for i, hc in enumerate(me.hand):
        if dynamic_cost(state, i) > me.mana:
            continue
        card = lookup(hc.card_id)
        rule = _target_rule(state, hc.card_id)
        if card.kind is CardKind.MINION:
            if not _has_space(state, ACTIVE):
                continue
            targets = _targets(state, rule)
            for pos in range(len(me.board) + 1):
                if targets:
                    actions.extend(PlayCard(i, pos, t) for t in targets)
                else:
                    actions.append(PlayCard(i, pos))
        elif card.kind is CardKind.SPELL:
            if rule is TargetRule.NONE:
                actions.append(PlayCard(i))
            else:
                actions.extend(PlayCard(i, None, t) for t in _targets(state, rule))
        else:
            actions.append(PlayCard(i))

    for i, m in enumerate(me.board):
        if _can_attack_minion(m):
            for d in _defenders(state, m.no_face):
                actions.append(Attack(Ref.minion(ACTIVE, i), d))
    hero = me.hero
    if hero.attack >= 1 and hero.attacks_used < 1:
        for d in _defenders(state, False):
            actions.append(Attack(Ref.hero(ACTIVE), d))

    power = HERO_POWERS.get(hero.hero_id)
    if power and not hero.hero_power_used and me.mana >= HERO_POWER_COST:
        name, rule = power
        if name == "reinforce":
            if _has_space(state, ACTIVE):
                actions.append(HeroPower())
        else:
            actions.extend(HeroPower(t) for t in _targets(state, rule))

    actions.append(EndTurn())
    return actions


# ---------------------------------------------------------------------------
# primitive in-place effects


def _character(state: GameState, ref: Ref):
    p = state.players[ref.side]
    if ref.kind == "hero":
        return p.hero
    return p.board[ref.index]


def _damage(state: GameState, ref: Ref, amount: int) -> None:
    if amount <= 0:
        return
    if ref.kind == "hero":
        _damage_hero(state, ref.side, amount)
    else:
        m = state.players[ref.side].board[ref.index]
        if not m.immune:
            m.health -= amount


def _damage_hero(state: GameState, side: int, amount: int) -> None:
    hero = state.players[side].hero
    hero.health -= amount
    if hero.health <= 0:
        hero.dead = True


def _heal(state: GameState, ref: Ref, amount: int) -> None:
    c = _character(state, ref)
    if ref.kind == "hero" and c.dead:
        return
    c.health = min(c.max_health, c.health + amount)


def _draw(state: GameState, side: int, count: int) -> None:
    p = state.players[side]
    cap = state.hand_cap
    for _ in range(count):
        if p.deck:
            card_id = p.deck.pop(0)
            if cap is None or len(p.hand) < cap:
                p.hand.append(HandCard(card_id))
            # otherwise the card is burnt
        else:
            p.fatigue += 1
            _damage_hero(state, side, p.fatigue)


def _add_to_hand(state: GameState, side: int, hc: HandCard) -> None:
    p = state.players[side]
    cap = state.hand_cap
    if cap is None or len(p.hand) < cap:
        p.hand.append(hc)


def _summon(state: GameState, side: int, position: int, card_id: str) -> Optional[int]:
    if not _has_space(state, side):
        return None
    board = state.players[side].board
    position = max(0, min(position, len(board)))
    board.insert(position, Minion.fresh(lookup(card_id)))
    return position


def _resolve_deaths(state: GameState) -> None:
    while True:
        dying = []
        for side in (ACTIVE, OPPONENT):
            board = state.players[side].board
            if any(m.dead for m in board):
                dying.extend((side, m) for m in board if m.dead)
                state.players[side].board = [m for m in board if not m.dead]
        if not dying:
            return
        for side, m in dying:
            _on_death(state, side, m)


def _on_death(state: GameState, side: int, m: Minion) -> None:
    card = lookup(m.card_id)
    state.deaths_total += 1
    if side == ACTIVE:
        state.deaths_active += 1
    if card.tribe is Tribe.MURLOC:
        state.murloc_graveyard.append(m.card_id)

    dr = card.effect.deathrattle
    if dr is not None:
        if dr.kind is EffectKind.AOE_DAMAGE_ALL_MINIONS:
            for s in (ACTIVE, OPPONENT):
                for i, other in enumerate(state.players[s].board):
                    _damage(state, Ref.minion(s, i), dr.count)
        elif dr.kind is EffectKind.RESTORE_EACH_HERO:
            for s in (ACTIVE, OPPONENT):
                _heal(state, Ref.hero(s), dr.count)

    owner = state.players[side]
    draws = 0
    for other in owner.board:
        trig = lookup(other.card_id).effect.board_trigger
        if trig is not None and trig.kind is EffectKind.DRAW_ON_OTHER_FRIENDLY_DEATH and not other.dead:
            draws += trig.count
    if draws:
        _draw(state, side, draws)

    for i, hc in enumerate(owner.hand):
        trig = lookup(hc.card_id).effect.hand_trigger
        if trig is not None and trig.kind is EffectKind.GAIN_ATTACK_ON_FRIENDLY_DEATH:
            owner.hand[i] = HandCard(hc.card_id, hc.bolvar_bonus + trig.attack, hc.discount)


def _update_result(state: GameState) -> None:
    if state.result is not GameResult.ONGOING:
        return
    if state.active.hero.dead:
        state.result = GameResult.ACTIVE_LOST
    elif state.opponent.hero.dead:
        state.result = GameResult.ACTIVE_WON


def _gain_random(state: GameState, effect, source, side: int) -> None:
    recipients = (side, 1 - side) if effect.recipients == "each" else (side,)
    for _ in range(effect.count):
        for who in recipients:
            card_id = source.take(effect.pool)
            _add_to_hand(state, who, HandCard(card_id, 0, effect.discount))


# ---------------------------------------------------------------------------
# action application


def normalize(state: GameState, action):
    """Fill in the default board position for a minion play."""
    if isinstance(action, PlayCard) and action.position is None:
        hand = state.active.hand
        if 0 <= action.hand_index < len(hand) and lookup(hand[action.hand_index].card_id).is_minion:
            return PlayCard(action.hand_index, len(state.active.board), action.target, action.scripted_outcomes)
    return action


def _check_legal(state: GameState, action) -> None:
    if not state.ongoing:
        raise IllegalActionError("game is over")
    if isinstance(action, EndTurn):
        return
    if isinstance(action, PlayCard) and action.scripted_outcomes is not None:
        action = PlayCard(action.hand_index, action.position, action.target)
    if action not in legal_actions(state):
        raise IllegalActionError(f"illegal action {action!r}")


def apply_action(state: GameState, action, policy: Policy = FORBIDDEN) -> GameState:
    action = normalize(state, action)
    _check_legal(state, action)
    return apply_unchecked(state, action, policy)


def apply_unchecked(state: GameState, action, policy: Policy = FORBIDDEN) -> GameState:
    """apply_action without the legality check; for actions from legal_actions."""
    s = state.clone()
    if isinstance(action, EndTurn):
        s.turn_ended = True
        return s
    if isinstance(action, PlayCard):
        source = policy
        if action.scripted_outcomes is not None and isinstance(policy, Scripted):
            source = Scripted(list(action.scripted_outcomes))
        _play_card(s, action, source)
    elif isinstance(action, Attack):
        _attack(s, action)
    elif isinstance(action, HeroPower):
        _hero_power(s, action)
    else:
        raise IllegalActionError(f"unknown action {action!r}")
    _resolve_deaths(s)
    _update_result(s)
    return s


def _play_card(s: GameState, action: PlayCard, source) -> None:
    me = s.active
    cost = dynamic_cost(s, action.hand_index)
    hc = me.hand.pop(action.hand_index)
    me.mana -= cost
    card = lookup(hc.card_id)

    if card.kind is CardKind.WEAPON:
        me.hero.weapon = Weapon(card.base_attack, card.durability, card.card_id)
        return

    if card.kind is CardKind.SPELL:
        s.spells_cast += 1
        _spell_effect(s, card.effect.spell_effect, action.target, source)
        return

    position = len(me.board) if action.position is None else action.position
    target = action.target
    # refs were taken before the minion entered play
    if target is not None and target.kind == "minion" and target.side == ACTIVE and target.index >= position:
        target = Ref.minion(ACTIVE, target.index + 1)
    minion = Minion.fresh(card)
    if hc.card_id == "bolvar_fordragon":
        minion.attack += hc.bolvar_bonus
    me.board.insert(position, minion)

    bc = card.effect.battlecry
    if bc is None:
        return
    brann = any(
        lookup(m.card_id).effect.aura is not None and m is not minion and not m.dead
        for m in me.board
    )
    for _ in range(2 if brann else 1):
        _battlecry(s, bc, minion, target, source)


def _battlecry(s: GameState, bc, minion: Minion, target: Optional[Ref], source) -> None:
    board = s.active.board
    if bc.kind is EffectKind.DESTROY_ADJACENT_GAIN_STATS:
        # destroyed neighbours stay in place until the death pass, so a
        # doubled battlecry sees (and absorbs) the same two minions again
        pos = board.index(minion)
        for j in (pos - 1, pos + 1):
            if 0 <= j < len(board):
                other = board[j]
                minion.attack += other.attack
                minion.health += other.health
                minion.max_health += other.health
                other.destroyed = True
    elif bc.kind is EffectKind.SWAP_ATTACK_HEALTH:
        if target is not None:
            m = _character(s, target)
            m.attack, m.health = m.health, m.attack
            m.max_health = m.health
    elif bc.kind is EffectKind.ADD_RANDOM_CARDS:
        _gain_random(s, bc, source, ACTIVE)
    elif bc.kind is EffectKind.ENEMY_SPELLS_COST_ZERO:
        pass
    else:
        raise EngineError(f"unsupported battlecry {bc.kind}")


def _spell_effect(s: GameState, eff, target: Optional[Ref], source) -> None:
    k = eff.kind
    if k is EffectKind.GAIN_TEMP_MANA:
        me = s.active
        me.mana += eff.count
        if not s.mode.temp_mana_uncapped:
            me.mana = min(me.mana, MANA_CAP)
    elif k is EffectKind.DRAW:
        _draw(s, ACTIVE, eff.count)
    elif k is EffectKind.SUMMON_DEAD_MURLOCS:
        for card_id in list(s.murloc_graveyard[: eff.count]):
            if _summon(s, ACTIVE, len(s.active.board), card_id) is None:
                break
    elif k is EffectKind.ADD_RANDOM_CARDS:
        _gain_random(s, eff, source, ACTIVE)
    else:
        m = _character(s, target)
        if k is EffectKind.BUFF:
            m.attack += eff.attack
            m.health += eff.health
            m.max_health += eff.health
        elif k is EffectKind.DOUBLE_ATTACK:
            m.attack *= 2
        elif k is EffectKind.GRANT_CHARGE_NO_FACE:
            m.attack += eff.attack
            m.has_charge = True
            m.no_face = True
        elif k is EffectKind.IMMUNE_BUFF:
            m.attack += eff.attack
            m.immune = True
        elif k is EffectKind.DESTROY_ENEMY_MINION:
            m.destroyed = True
        else:
            raise EngineError(f"unsupported spell effect {k}")


def _attack(s: GameState, action: Attack) -> None:
    att_ref, def_ref = action.attacker, action.defender
    attacker = _character(s, att_ref)
    defender = _character(s, def_ref)
    dealt = attacker.attack
    taken = defender.attack if def_ref.kind == "minion" else 0
    _damage(s, def_ref, dealt)
    _damage(s, att_ref, taken)
    attacker.attacks_used += 1
    if att_ref.kind == "hero":
        w = attacker.weapon
        w.durability -= 1
        if w.durability <= 0:
            attacker.weapon = None


def _hero_power(s: GameState, action: HeroPower) -> None:
    me = s.active
    name, _ = HERO_POWERS[me.hero.hero_id]
    me.mana -= HERO_POWER_COST
    me.hero.hero_power_used = True
    if name == "fireblast":
        _damage(s, action.target, 1)
    elif name == "lesser_heal":
        _heal(s, action.target, 2)
    elif name == "reinforce":
        _summon(s, ACTIVE, len(me.board), "silver_hand_recruit")


# ---------------------------------------------------------------------------
# pure wrappers around the primitives


def draw(state: GameState, count: int, side: int = ACTIVE) -> GameState:
    if count < 1:
        raise ValueError("count must be >= 1")
    s = state.clone()
    _draw(s, side, count)
    _update_result(s)
    return s


def summon(state: GameState, side: int, position: int, card_id: str) -> GameState:
    if position > len(state.players[side].board):
        raise ValueError("position beyond board end")
    s = state.clone()
    _summon(s, side, position, card_id)
    return s


def process_deaths(state: GameState) -> GameState:
    s = state.clone()
    _resolve_deaths(s)
    _update_result(s)
    return s


# ---------------------------------------------------------------------------
# goals and hashing


def goal_satisfied(state: GameState, goal: Goal) -> bool:
    if goal is Goal.LETHAL:
        return state.result is GameResult.ACTIVE_WON
    if state.result is GameResult.ACTIVE_LOST:
        return False
    if goal is Goal.SURVIVAL:
        hero = state.active.hero
        return hero.health == hero.max_health
    mine, theirs = state.active.board, state.opponent.board
    if goal is Goal.BOARD_CLEAR:
        return not mine and not theirs
    if goal is Goal.MIRROR:
        return len(mine) == len(theirs) and all(
            a.mirror_key() == b.mirror_key() for a, b in zip(mine, theirs)
        )
    raise ValueError(goal)


def _player_key(p, board_key) -> tuple:
    return (
        p.hero.key(),
        p.mana,
        p.mana_crystals,
        tuple(sorted(hc.key() for hc in p.hand)),
        tuple(p.deck),
        board_key,
        p.fatigue,
    )


def canonical_key(state: GameState) -> tuple:
    """Hashable key; the hand is a multiset, everything else is verbatim."""
    return (
        state.mode.value,
        tuple(_player_key(p, tuple(m.key() for m in p.board)) for p in state.players),
        state.deaths_active,
        state.deaths_total,
        state.enemy_spells_cost_zero,
        tuple(state.murloc_graveyard),
        state.spells_cast,
        state.result.value,
        state.turn_ended,
        state.rules,
    )


def check_invariants(state: GameState) -> list:
    """Return a list of violated type invariants (empty when consistent)."""
    problems = []
    for side, p in enumerate(state.players):
        if state.hand_cap is not None and len(p.hand) > state.hand_cap:
            problems.append(f"side {side}: hand over cap")
        if state.board_cap is not None and len(p.board) > state.board_cap:
            problems.append(f"side {side}: board over cap")
        if p.mana < 0:
            problems.append(f"side {side}: negative mana")
        h = p.hero
        if h.health > h.max_health:
            problems.append(f"side {side}: hero over max health")
        if h.weapon is not None and h.weapon.durability < 1:
            problems.append(f"side {side}: broken weapon equipped")
        for m in p.board:
            if m.health < 1 or m.destroyed:
                problems.append(f"side {side}: dead minion {m!r} on board")
            if m.health > m.max_health:
                problems.append(f"side {side}: {m!r} over max health")
            if m.attack < 0:
                problems.append(f"side {side}: {m!r} negative attack")
            if m.attacks_used < 0:
                problems.append(f"side {side}: {m!r} negative attack count")
        for hc in p.hand:
            if hc.card_id != "bolvar_fordragon" and hc.bolvar_bonus:
                problems.append(f"side {side}: bolvar bonus on {hc.card_id}")
    if state.result is not GameResult.ONGOING and legal_actions(state):
        problems.append("actions legal after game end")
    return problems


def iter_characters(state: GameState) -> Iterable[Ref]:
    for side in (ACTIVE, OPPONENT):
        yield Ref.hero(side)
        for i in range(len(state.players[side].board)):
            yield Ref.minion(side, i)
