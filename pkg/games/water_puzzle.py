"""
WaterPuzzle: fetch the key, then open the door; 1500 ticks or the level is lost
"""

from .engine import DIRECTIONS, Action, Game, GameState, Status, offset


class WaterPuzzle(Game):
    game_id = "waterpuzzle"

    def _tick(self, state: GameState, action: Action) -> int:
        params = state.params
        reward = 0
        avatar = state.avatar

        if action in DIRECTIONS:
            avatar.facing = action
            target = offset(avatar.pos, action)
            if self.passable(state, target):
                keys = state.at(target, "key")
                doors = state.at(target, "door")
                if keys:
                    state.sprites.remove(keys[0])
                    avatar.has_key = True
                    avatar.pos = target
                    reward += params["key_score"]
                elif doors:
                    if avatar.has_key:
                        avatar.pos = target
                        reward += params["door_score"]
                        state.status = Status.PLAYER_WINS
                else:
                    avatar.pos = target

        self._finish_tick(state)
        return reward
