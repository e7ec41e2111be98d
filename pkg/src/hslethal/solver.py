"""Exhaustive single-turn search.

Depth-first over legal actions with a visited set.  With pruning enabled the
visited set is keyed on an abstraction of the state that is only as coarse
as the reachable card pool allows (see :func:`analyze`), and actions that
lead to identical abstract successors are generated once.
"""

from __future__ import annotations

import os
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .cards import EffectKind, Tribe, lookup
from .engine import (
    HERO_POWERS,
    IllegalActionError,
    apply_action,
    apply_unchecked,
    canonical_key,
    dynamic_cost,
    goal_satisfied,
    legal_actions,
)
from .state import ACTIVE, OPPONENT, Attack, EndTurn, Goal, HeroPower, PlayCard, Ref

LIMITS_ENV = "HSLETHAL_LIMITS"


class SolverError(Exception):
    pass


@dataclass(frozen=True)
class SolveLimits:
    max_states: int = 2_000_000
    max_depth: int = 100_000
    time_limit: Optional[float] = None  # seconds

    def __post_init__(self):
        if self.max_states < 1 or self.max_depth < 1:
            raise ValueError("limits must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("limits must be positive")

    @classmethod
    def from_env(cls, env=None) -> "SolveLimits":
        """Parse ``max_states=...,max_depth=...,time_limit=...`` from the environment."""
        raw = (os.environ if env is None else env).get(LIMITS_ENV, "").strip()
        if not raw:
            return cls()
        kwargs = {}
        for part in raw.split(","):
            name, _, value = part.partition("=")
            name = name.strip()
            if name == "time_limit":
                kwargs[name] = float(value)
            elif name in ("max_states", "max_depth"):
                kwargs[name] = int(value)
            else:
                raise ValueError(f"unknown limit {name!r} in {LIMITS_ENV}")
        return cls(**kwargs)


@dataclass
class Solved:
    line: list
    states_explored: int

    verdict = "solved"


@dataclass
class Unsolvable:
    states_explored: int

    verdict = "unsolvable"


@dataclass
class ResourceLimit:
    limit: str
    states_explored: int

    verdict = "resource_limit"


SolveResult = Union[Solved, Unsolvable, ResourceLimit]


# ---------------------------------------------------------------------------
# static analysis of what can happen this turn


@dataclass(frozen=True)
class Analysis:
    # board order can never influence the outcome
    position_free: bool
    # friendly minions that can never attack may be keyed by card id alone
    inert_ok: bool
    charge_reachable: bool
    # enemy attack above this kills any friendly attacker just the same
    enemy_attack_cap: Optional[int]
    # free temp mana with no hand cap: play it at once
    eager_innervate: bool
    deaths_matter: bool


def _reachable_cards(state) -> set:
    me = state.active
    ids = {hc.card_id for hc in me.hand} | set(me.deck)
    for p in state.players:
        ids |= {m.card_id for m in p.board}
    ids |= set(state.murloc_graveyard)
    power = HERO_POWERS.get(me.hero.hero_id)
    if power and power[0] == "reinforce":
        ids.add("silver_hand_recruit")
    return ids


def analyze(state, goal: Goal) -> Analysis:
    ids = _reachable_cards(state)
    kinds = set()
    for cid in ids:
        kinds |= {e.kind for e in lookup(cid).effect.effects()}
    murlocs = {cid for cid in ids if lookup(cid).tribe is Tribe.MURLOC}
    position_free = (
        goal is not Goal.MIRROR
        and EffectKind.DESTROY_ADJACENT_GAIN_STATS not in kinds
        and len(murlocs) <= 1
    )
    power = HERO_POWERS.get(state.active.hero.hero_id)
    inert_ok = (
        position_free
        and EffectKind.SWAP_ATTACK_HEALTH not in kinds
        and EffectKind.AOE_DAMAGE_ALL_MINIONS not in kinds
        and not (power and power[0] == "fireblast")
    )
    charge_reachable = EffectKind.GRANT_CHARGE_NO_FACE in kinds

    cap = None
    if inert_ok:
        me = state.active
        healths = [m.max_health for m in me.board]
        for cid in ids:
            card = lookup(cid)
            if card.is_minion:
                healths.append(card.base_health)
        buff = 0
        pool = [hc.card_id for hc in me.hand] + list(me.deck)
        for cid in pool:
            eff = lookup(cid).effect.spell_effect
            if eff is not None and eff.kind is EffectKind.BUFF:
                buff += eff.health
        cap = max(healths, default=0) + buff
        hero_attacks = me.hero.weapon is not None or any(lookup(c).kind.value == "weapon" for c in pool)
        if hero_attacks:
            cap = max(cap, me.hero.max_health)
        cap = max(cap, 1)

    eager = state.mode.temp_mana_uncapped and state.hand_cap is None
    deaths_matter = not state.enemy_spells_cost_zero and EffectKind.COST_LESS_PER_DEATH in kinds
    return Analysis(position_free, inert_ok, charge_reachable, cap, eager, deaths_matter)


def _inert(m, an: Analysis) -> bool:
    return (
        m.frozen
        or m.attacks_used >= 1
        or (m.summoned_this_turn and not m.has_charge and not an.charge_reachable)
    )


def _friendly_key(m, an: Analysis) -> tuple:
    if an.inert_ok and _inert(m, an):
        return (m.card_id, -1)
    return m.key()


def _enemy_key(m, an: Analysis) -> tuple:
    k = m.key()
    if an.enemy_attack_cap is not None and m.attack > an.enemy_attack_cap:
        k = (k[0], an.enemy_attack_cap) + k[2:]
    return k


def abstract_key(state, an: Analysis) -> tuple:
    boards = (
        [_friendly_key(m, an) for m in state.active.board],
        [_enemy_key(m, an) for m in state.opponent.board],
    )
    players = []
    for p, bk in zip(state.players, boards):
        if an.position_free:
            bk.sort()
        players.append(
            (
                p.hero.key(),
                p.mana,
                p.mana_crystals,
                tuple(sorted(hc.key() for hc in p.hand)),
                len(p.deck),  # decks only shrink from the front
                tuple(bk),
                p.fatigue,
            )
        )
    return (
        tuple(players),
        state.deaths_total if an.deaths_matter else 0,
        tuple(state.murloc_graveyard),
        state.result.value,
        state.turn_ended,
    )


# ---------------------------------------------------------------------------
# action generation


def _ref_desc(state, ref: Optional[Ref], an: Analysis):
    if ref is None:
        return None
    if ref.kind == "hero":
        return ("hero", ref.side)
    if not an.position_free:
        return ("minion", ref.side, ref.index)
    m = state.players[ref.side].board[ref.index]
    k = _friendly_key(m, an) if ref.side == ACTIVE else _enemy_key(m, an)
    return ("minion", ref.side, k)


def _descriptor(state, action, an: Analysis):
    if isinstance(action, PlayCard):
        hc = state.active.hand[action.hand_index]
        return ("play", hc.key(), action.position, _ref_desc(state, action.target, an))
    if isinstance(action, Attack):
        return ("attack", _ref_desc(state, action.attacker, an), _ref_desc(state, action.defender, an))
    if isinstance(action, HeroPower):
        return ("power", _ref_desc(state, action.target, an))
    return ("end",)


def _score(state, action, attacks_first: bool = False) -> tuple:
    if isinstance(action, Attack):
        d = action.defender
        if d.kind == "hero":
            return (0,)
        attacker = state.players[ACTIVE].board[action.attacker.index] if action.attacker.kind == "minion" else state.active.hero
        defender = state.opponent.board[d.index]
        if defender.taunt and attacker.attack == defender.health:
            return (1, 0)
        if attacks_first:
            return (1, 1, defender.health)
        return (3, defender.health)
    if isinstance(action, PlayCard):
        t = action.target
        if t is None:
            eff = lookup(state.active.hand[action.hand_index].card_id).effect.spell_effect
            if eff is not None and eff.kind is EffectKind.DRAW:
                cap = state.hand_cap
                # drawing into a full hand burns cards
                fits = cap is None or len(state.active.hand) - 1 + eff.count <= cap
                return (2, 1) if fits else (2, 3)
            return (2, 2)
        if t.kind == "minion" and t.side == ACTIVE:
            m = state.active.board[t.index]
            if not m.frozen and m.attacks_used < 1 and (m.has_charge or not m.summoned_this_turn):
                return (2, 0)
        return (2, 4)
    if isinstance(action, HeroPower):
        return (4,)
    return (5,)


def ordered_actions(state, an: Optional[Analysis], attacks_first: bool = False) -> list:
    acts = legal_actions(state)
    if an is not None:
        if an.eager_innervate:
            for i, hc in enumerate(state.active.hand):
                eff = lookup(hc.card_id).effect.spell_effect
                if eff is not None and eff.kind is EffectKind.GAIN_TEMP_MANA and dynamic_cost(state, i) == 0:
                    return [PlayCard(i)]
        seen = set()
        kept = []
        end = len(state.active.board)
        for a in acts:
            if an.position_free and isinstance(a, PlayCard) and a.position is not None and a.position != end:
                continue
            d = _descriptor(state, a, an)
            if d in seen:
                continue
            seen.add(d)
            kept.append(a)
        acts = kept
    acts.sort(key=lambda a: _score(state, a, attacks_first))
    return acts


# ---------------------------------------------------------------------------
# search


def solve(
    puzzle,
    limits: Optional[SolveLimits] = None,
    *,
    prune: bool = True,
    attacks_first: bool = False,
) -> SolveResult:
    limits = limits or SolveLimits()
    root = puzzle.state
    goal = puzzle.goal
    if not root.ongoing:
        raise SolverError("puzzle state is already terminal")
    if goal_satisfied(root, goal):
        return Solved([], 1)

    an = analyze(root, goal) if prune else None
    key = (lambda s: abstract_key(s, an)) if prune else canonical_key
    deadline = None if limits.time_limit is None else time.monotonic() + limits.time_limit

    visited = {key(root)}
    explored = 1
    depth_hit = False
    path: list = []
    stack = [iter(ordered_actions(root, an, attacks_first))]
    states = [root]
    while stack:
        action = next(stack[-1], None)
        if action is None:
            stack.pop()
            states.pop()
            if path:
                path.pop()
            continue
        child = apply_unchecked(states[-1], action)
        if goal_satisfied(child, goal):
            return Solved(path + [action], explored)
        if not child.ongoing:
            continue
        k = key(child)
        if k in visited:
            continue
        if len(path) + 1 >= limits.max_depth:
            depth_hit = True
            continue
        visited.add(k)
        explored += 1
        if explored > limits.max_states:
            return ResourceLimit("max_states", explored)
        if deadline is not None and explored % 512 == 0 and time.monotonic() > deadline:
            return ResourceLimit("time_limit", explored)
        path.append(action)
        states.append(child)
        stack.append(iter(ordered_actions(child, an, attacks_first)))
    if depth_hit:
        return ResourceLimit("max_depth", explored)
    return Unsolvable(explored)


class EnumerationLimit(Exception):
    pass


def naive_solvable(puzzle, max_nodes: int = 10**6) -> bool:
    """Breadth-first over the full game tree: no memo, no pruning, no ordering.

    Reference oracle for tests; raises EnumerationLimit past ``max_nodes``.
    """
    goal = puzzle.goal
    if goal_satisfied(puzzle.state, goal):
        return True
    queue = deque([puzzle.state])
    nodes = 1
    while queue:
        s = queue.popleft()
        for a in legal_actions(s):
            child = apply_unchecked(s, a)
            nodes += 1
            if nodes > max_nodes:
                raise EnumerationLimit(f"more than {max_nodes} nodes")
            if goal_satisfied(child, goal):
                return True
            if child.ongoing:
                queue.append(child)
    return False


# ---------------------------------------------------------------------------
# replay


@dataclass
class VerifyReport:
    legal: bool
    goal_reached: bool
    # number of actions after which the goal first held (0: already at start)
    goal_at: Optional[int] = None
    illegal_at: Optional[int] = None
    error: Optional[str] = None
    final_state: object = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.legal and self.goal_reached

    def as_dict(self) -> dict:
        return {
            "legal": self.legal,
            "goal_reached": self.goal_reached,
            "goal_at": self.goal_at,
            "illegal_at": self.illegal_at,
            "error": self.error,
        }


def verify_line(puzzle, line: Sequence) -> VerifyReport:
    state = puzzle.state
    goal_at = 0 if goal_satisfied(state, puzzle.goal) else None
    for i, action in enumerate(line):
        try:
            state = apply_action(state, action)
        except IllegalActionError as exc:
            return VerifyReport(False, goal_at is not None, goal_at, i, str(exc), state)
        if goal_at is None and goal_satisfied(state, puzzle.goal):
            goal_at = i + 1
    return VerifyReport(True, goal_at is not None, goal_at, None, None, state)
