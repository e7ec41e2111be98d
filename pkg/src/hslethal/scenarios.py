"""Scripted replays with fixed random outcomes.

The builtin ``combo-cycle`` scenario is the infinite-value loop under
Brann Bronzebeard: Cabalist's Tome yields three Unstable Portals, the Portals
yield a free Spellslinger, a free Void Terror and one arbitrary minion, the
doubled Spellslinger battlecry returns a Cabalist's Tome, and the doubled
Void Terror battlecry eats the Spellslinger and the spare minion so the
board ends the size it started.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import EngineError, Scripted, apply_action
from .formats import Scenario
from .state import ACTIVE, GameState, HandCard, Hero, Minion, PlayCard, PlayerState, ScalingMode


def combo_cycle() -> Scenario:
    me = PlayerState(
        Hero("jaina", 30),
        hand=[HandCard("cabalists_tome")],
        board=[Minion("brann_bronzebeard", 2, 4), Minion("bloodfen_raptor", 3, 2)],
    )
    them = PlayerState(Hero("anduin", 30))
    state = GameState(ScalingMode.BOARD_SCALED, [me, them], enemy_spells_cost_zero=True)
    actions = [
        PlayCard(0),  # Cabalist's Tome -> three Unstable Portals
        PlayCard(0),  # Portal -> Spellslinger
        PlayCard(0),  # Portal -> Void Terror
        PlayCard(0),  # Portal -> the arbitrary minion of this iteration
        PlayCard(0, position=2),  # Spellslinger to the right of the Raptor
        PlayCard(0, position=2),  # Void Terror between Raptor and Spellslinger
    ]
    outcomes = [
        "unstable_portal", "unstable_portal", "unstable_portal",
        "spellslinger",
        "void_terror",
        "boulderfist_ogre",
        # two battlecries, each adding one spell to us then one to the opponent
        "cabalists_tome", "innervate",
        "blessing_of_kings", "innervate",
    ]
    expect = {
        "mana_spent": 0,
        "board_size_unchanged": True,
        "hand_contains": ["cabalists_tome", "blessing_of_kings", "boulderfist_ogre"],
    }
    return Scenario("combo-cycle", state, actions, outcomes, expect)


BUILTIN = {"combo-cycle": combo_cycle}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


def replay(sc: Scenario) -> tuple:
    """Run the scenario; returns (final state, list of Check)."""
    policy = Scripted(list(sc.outcomes))
    state = sc.state
    checks = []
    try:
        for action in sc.actions:
            state = apply_action(state, action, policy)
    except EngineError as exc:
        checks.append(Check("replay", False, str(exc)))
        return state, checks
    checks.append(Check("replay", True, f"{len(sc.actions)} actions applied"))
    checks.append(
        Check(
            "outcomes_consumed",
            policy.remaining == 0,
            f"{policy.consumed} of {len(sc.outcomes)} scripted outcomes used",
        )
    )
    start, end = sc.state.players[ACTIVE], state.players[ACTIVE]
    for name, want in sorted(sc.expect.items()):
        if name == "mana_spent":
            got = start.mana - end.mana
            checks.append(Check(name, got == want, f"mana spent = {got}"))
        elif name == "board_size_unchanged":
            same = len(start.board) == len(end.board)
            checks.append(Check(name, same == want, f"board size {len(start.board)} -> {len(end.board)}"))
        elif name == "hand_contains":
            hand = [hc.card_id for hc in end.hand]
            missing = [c for c in want if c not in hand]
            checks.append(Check(name, not missing, f"hand = {hand}"))
        else:
            checks.append(Check(name, False, "unknown expectation"))
    return state, checks
