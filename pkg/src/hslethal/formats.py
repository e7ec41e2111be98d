"""JSON documents for instances, puzzles, solutions and scenario scripts.

Every document carries ``format_version`` and ``kind``.  Output is
canonical: sorted keys, two-space indent, trailing newline, integers only,
so reading and re-writing a file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .cards import TargetRule, UnknownCardError, lookup
from .reductions import Provenance, Puzzle
from .state import (
    Attack,
    EndTurn,
    GameResult,
    GameState,
    Goal,
    HandCard,
    Hero,
    HeroPower,
    Minion,
    PlayCard,
    PlayerState,
    Ref,
    Rules,
    ScalingMode,
    Weapon,
)

FORMAT_VERSION = 1


class FormatError(ValueError):
    """Malformed or unsupported document."""


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version!r}")
    return doc


def _expect_kind(doc: dict, kind: str) -> None:
    if doc.get("kind") != kind:
        raise FormatError(f"expected a {kind} document, got {doc.get('kind')!r}")


def _int(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"{what} must be an integer")
    return v


def _bool(v, what: str) -> bool:
    if not isinstance(v, bool):
        raise FormatError(f"{what} must be a boolean")
    return v


def _card(v, what: str) -> str:
    if not isinstance(v, str):
        raise FormatError(f"{what} must be a card id")
    try:
        lookup(v)
    except UnknownCardError as exc:
        raise FormatError(str(exc)) from None
    return v


def _get(d: dict, key: str):
    if not isinstance(d, dict):
        raise FormatError(f"expected an object holding {key!r}")
    try:
        return d[key]
    except KeyError:
        raise FormatError(f"missing field {key!r}") from None


# ---------------------------------------------------------------------------
# instances


@dataclass
class InstanceDoc:
    values: list
    n: Optional[int] = None


def instance_to_doc(values, n: Optional[int] = None) -> dict:
    doc: dict = {"format_version": FORMAT_VERSION, "kind": "instance", "values": [int(v) for v in values]}
    if n is not None:
        doc["n"] = int(n)
    return doc


def instance_from_doc(doc: dict) -> InstanceDoc:
    _expect_kind(doc, "instance")
    values = _get(doc, "values")
    if not isinstance(values, list):
        raise FormatError("values must be a list")
    n = doc.get("n")
    return InstanceDoc([_int(v, "value") for v in values], None if n is None else _int(n, "n"))


# ---------------------------------------------------------------------------
# game state


def _minion_doc(m: Minion) -> dict:
    return {
        "card": m.card_id,
        "attack": m.attack,
        "health": m.health,
        "max_health": m.max_health,
        "frozen": m.frozen,
        "has_charge": m.has_charge,
        "no_face": m.no_face,
        "attacks_used": m.attacks_used,
        "summoned_this_turn": m.summoned_this_turn,
        "immune": m.immune,
    }


def _minion_from(d: dict) -> Minion:
    return Minion(
        _card(_get(d, "card"), "minion card"),
        _int(_get(d, "attack"), "attack"),
        _int(_get(d, "health"), "health"),
        _int(_get(d, "max_health"), "max_health"),
        frozen=_bool(_get(d, "frozen"), "frozen"),
        has_charge=_bool(_get(d, "has_charge"), "has_charge"),
        no_face=_bool(_get(d, "no_face"), "no_face"),
        attacks_used=_int(_get(d, "attacks_used"), "attacks_used"),
        summoned_this_turn=_bool(_get(d, "summoned_this_turn"), "summoned_this_turn"),
        immune=_bool(_get(d, "immune"), "immune"),
    )


def _hero_doc(h: Hero) -> dict:
    w = h.weapon
    return {
        "hero": h.hero_id,
        "health": h.health,
        "max_health": h.max_health,
        "weapon": None if w is None else {"card": w.card_id, "attack": w.attack, "durability": w.durability},
        "hero_power_used": h.hero_power_used,
        "attacks_used": h.attacks_used,
        "dead": h.dead,
    }


def _hero_from(d: dict) -> Hero:
    w = _get(d, "weapon")
    weapon = None
    if w is not None:
        weapon = Weapon(_int(_get(w, "attack"), "weapon attack"), _int(_get(w, "durability"), "durability"),
                        _card(_get(w, "card"), "weapon card"))
    hero_id = _get(d, "hero")
    if not isinstance(hero_id, str):
        raise FormatError("hero must be a string")
    return Hero(
        hero_id,
        _int(_get(d, "health"), "hero health"),
        _int(_get(d, "max_health"), "hero max_health"),
        weapon,
        _bool(_get(d, "hero_power_used"), "hero_power_used"),
        _int(_get(d, "attacks_used"), "hero attacks_used"),
        _bool(_get(d, "dead"), "hero dead"),
    )


def _player_doc(p: PlayerState) -> dict:
    return {
        "hero": _hero_doc(p.hero),
        "mana": p.mana,
        "mana_crystals": p.mana_crystals,
        "hand": [{"card": hc.card_id, "bolvar_bonus": hc.bolvar_bonus, "discount": hc.discount} for hc in p.hand],
        "deck": list(p.deck),
        "board": [_minion_doc(m) for m in p.board],
        "fatigue": p.fatigue,
    }


def _player_from(d: dict) -> PlayerState:
    hand = [
        HandCard(_card(_get(h, "card"), "hand card"), _int(_get(h, "bolvar_bonus"), "bolvar_bonus"),
                 _int(_get(h, "discount"), "discount"))
        for h in _list(_get(d, "hand"), "hand")
    ]
    return PlayerState(
        _hero_from(_get(d, "hero")),
        _int(_get(d, "mana"), "mana"),
        _int(_get(d, "mana_crystals"), "mana_crystals"),
        hand,
        [_card(c, "deck card") for c in _list(_get(d, "deck"), "deck")],
        [_minion_from(m) for m in _list(_get(d, "board"), "board")],
        _int(_get(d, "fatigue"), "fatigue"),
    )


def _list(v, what: str) -> list:
    if not isinstance(v, list):
        raise FormatError(f"{what} must be a list")
    return v


def state_to_doc(s: GameState) -> dict:
    return {
        "mode": s.mode.value,
        "players": [_player_doc(p) for p in s.players],
        "flags": {
            "enemy_spells_cost_zero": s.enemy_spells_cost_zero,
            "turn_ended": s.turn_ended,
            "result": s.result.value,
            "board_cap": s.rules.board_cap,
            "bestial_wrath_rule": s.rules.bestial_wrath_rule.value,
        },
        "counters": {
            "deaths_active": s.deaths_active,
            "deaths_total": s.deaths_total,
            "spells_cast": s.spells_cast,
            "murloc_graveyard": list(s.murloc_graveyard),
        },
    }


def state_from_doc(d: dict) -> GameState:
    try:
        mode = ScalingMode(_get(d, "mode"))
        flags = _get(d, "flags")
        counters = _get(d, "counters")
        result = GameResult(_get(flags, "result"))
        bw_rule = TargetRule(_get(flags, "bestial_wrath_rule"))
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from None
    players = _list(_get(d, "players"), "players")
    if len(players) != 2:
        raise FormatError("a state has exactly two players")
    cap = _get(flags, "board_cap")
    return GameState(
        mode,
        [_player_from(p) for p in players],
        _int(_get(counters, "deaths_active"), "deaths_active"),
        _int(_get(counters, "deaths_total"), "deaths_total"),
        _bool(_get(flags, "enemy_spells_cost_zero"), "enemy_spells_cost_zero"),
        [_card(c, "graveyard card") for c in _list(_get(counters, "murloc_graveyard"), "murloc_graveyard")],
        _int(_get(counters, "spells_cast"), "spells_cast"),
        result,
        _bool(_get(flags, "turn_ended"), "turn_ended"),
        Rules(None if cap is None else _int(cap, "board_cap"), bw_rule),
    )


# ---------------------------------------------------------------------------
# puzzles


def puzzle_to_doc(p: Puzzle) -> dict:
    prov = p.provenance
    return {
        "format_version": FORMAT_VERSION,
        "kind": "puzzle",
        "mode": p.mode.value,
        "goal": p.goal.value,
        "variant": prov.variant if prov else None,
        "experimental": p.experimental,
        "provenance": None
        if prov is None
        else {"reduction": prov.reduction, "values": list(prov.values), "n": prov.n},
        "state": state_to_doc(p.state),
    }


def puzzle_from_doc(doc: dict) -> Puzzle:
    _expect_kind(doc, "puzzle")
    state = state_from_doc(_get(doc, "state"))
    if _get(doc, "mode") != state.mode.value:
        raise FormatError("puzzle mode disagrees with its state")
    try:
        goal = Goal(_get(doc, "goal"))
    except ValueError:
        raise FormatError(f"unknown goal {doc.get('goal')!r}") from None
    prov = None
    pd = _get(doc, "provenance")
    if pd is not None:
        n = _get(pd, "n")
        prov = Provenance(
            str(_get(pd, "reduction")),
            tuple(_int(v, "value") for v in _list(_get(pd, "values"), "values")),
            None if n is None else _int(n, "n"),
            str(_get(doc, "variant")),
        )
    return Puzzle(state, goal, prov, _bool(_get(doc, "experimental"), "experimental"))


# ---------------------------------------------------------------------------
# actions and solutions


def _ref_doc(r: Optional[Ref]):
    if r is None:
        return None
    return {"kind": r.kind, "side": r.side, "index": r.index}


def _ref_from(d) -> Optional[Ref]:
    if d is None:
        return None
    kind = _get(d, "kind")
    if kind not in ("hero", "minion"):
        raise FormatError(f"bad ref kind {kind!r}")
    side = _int(_get(d, "side"), "side")
    if side not in (0, 1):
        raise FormatError("side must be 0 or 1")
    return Ref(kind, side, _int(_get(d, "index"), "index"))


def action_to_doc(a) -> dict:
    if isinstance(a, PlayCard):
        d: dict = {
            "type": "play",
            "hand_index": a.hand_index,
            "position": a.position,
            "target": _ref_doc(a.target),
        }
        if a.scripted_outcomes is not None:
            d["outcomes"] = list(a.scripted_outcomes)
        return d
    if isinstance(a, Attack):
        return {"type": "attack", "attacker": _ref_doc(a.attacker), "defender": _ref_doc(a.defender)}
    if isinstance(a, HeroPower):
        return {"type": "hero_power", "target": _ref_doc(a.target)}
    if isinstance(a, EndTurn):
        return {"type": "end_turn"}
    raise TypeError(a)


def action_from_doc(d: dict):
    t = _get(d, "type")
    if t == "play":
        pos = d.get("position")
        outcomes = d.get("outcomes")
        return PlayCard(
            _int(_get(d, "hand_index"), "hand_index"),
            None if pos is None else _int(pos, "position"),
            _ref_from(d.get("target")),
            None if outcomes is None else tuple(_card(c, "outcome") for c in _list(outcomes, "outcomes")),
        )
    if t == "attack":
        return Attack(_ref_from(_get(d, "attacker")), _ref_from(_get(d, "defender")))
    if t == "hero_power":
        return HeroPower(_ref_from(d.get("target")))
    if t == "end_turn":
        return EndTurn()
    raise FormatError(f"unknown action type {t!r}")


def solution_to_doc(line) -> dict:
    return {"format_version": FORMAT_VERSION, "kind": "solution", "actions": [action_to_doc(a) for a in line]}


def solution_from_doc(doc: dict) -> list:
    _expect_kind(doc, "solution")
    return [action_from_doc(a) for a in _list(_get(doc, "actions"), "actions")]


# ---------------------------------------------------------------------------
# scenario scripts


@dataclass
class Scenario:
    name: str
    state: GameState
    actions: list
    outcomes: list  # card ids handed out by random-generation effects, in order
    expect: dict = field(default_factory=dict)


def scenario_to_doc(sc: Scenario) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "scenario",
        "name": sc.name,
        "state": state_to_doc(sc.state),
        "actions": [action_to_doc(a) for a in sc.actions],
        "outcomes": list(sc.outcomes),
        "expect": dict(sc.expect),
    }


def scenario_from_doc(doc: dict) -> Scenario:
    _expect_kind(doc, "scenario")
    expect = _get(doc, "expect")
    if not isinstance(expect, dict):
        raise FormatError("expect must be an object")
    return Scenario(
        str(_get(doc, "name")),
        state_from_doc(_get(doc, "state")),
        [action_from_doc(a) for a in _list(_get(doc, "actions"), "actions")],
        [_card(c, "outcome") for c in _list(_get(doc, "outcomes"), "outcomes")],
        expect,
    )


def read(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None


def write(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))



