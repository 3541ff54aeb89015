"""
TreasureKeeper: Sokoban-style boxes, roaming monsters, a periodic survival reward
"""

from .engine import DIRECTIONS, Action, Game, GameState, Position, Status, offset


class TreasureKeeper(Game):
    game_id = "treasurekeeper"

    def _monster_can_enter(self, state: GameState, pos: Position) -> bool:
        # box cells stay selectable: picking one is the losing contact
        return self.passable(state, pos)

    def _empty_floor(self, state: GameState, pos: Position) -> bool:
        return self.passable(state, pos) and not state.at(pos)

    def _tick(self, state: GameState, action: Action) -> int:
        params = state.params
        reward = 0
        avatar = state.avatar

        if action in DIRECTIONS:
            avatar.facing = action
            target = offset(avatar.pos, action)
            boxes = state.at(target, "box")
            if boxes:
                beyond = offset(target, action)
                if self._empty_floor(state, beyond):
                    boxes[0].pos = beyond
                    avatar.pos = target
            elif self.passable(state, target):
                avatar.pos = target

        if self._avatar_hit(state):
            state.status = Status.PLAYER_LOSES
        else:
            for monster, target in zip(state.of_kind("monster"), self.monster_policy(state)):
                if state.at(target, "box"):
                    state.status = Status.PLAYER_LOSES
                else:
                    monster.pos = target
            if self._avatar_hit(state):
                state.status = Status.PLAYER_LOSES

        if state.running and (state.tick + 1) % params["period"] == 0:
            reward += params["period_score"]
        self._finish_tick(state)
        return reward
