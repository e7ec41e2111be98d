from __future__ import annotations

import pytest

from hslethal.state import GameState, HandCard, Hero, Minion, PlayerState, ScalingMode


def make_state(
    mode=ScalingMode.BOARD_SCALED,
    *,
    hero="anduin",
    health=30,
    hand=(),
    deck=(),
    board=(),
    enemy_hero="valeera",
    enemy_health=30,
    enemy_board=(),
    mana=10,
    **flags,
) -> GameState:
    """Small state builder; hand entries may be card ids or HandCards."""
    hand = [h if isinstance(h, HandCard) else HandCard(h) for h in hand]
    me = PlayerState(Hero(hero, health), mana=mana, hand=hand, deck=list(deck), board=list(board))
    them = PlayerState(Hero(enemy_hero, enemy_health), board=list(enemy_board))
    return GameState(mode, [me, them], **flags)


@pytest.fixture
def state_factory():
    return make_state


def vanilla(attack, health, card_id="bloodfen_raptor", **kw) -> Minion:
    return Minion(card_id, attack, health, **kw)


# acceptance criteria report one line each at the end of the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
