"""
GoldDigger: collect every jewel, dodge (or club) the monsters, 2000 ticks
"""

from .engine import DIRECTIONS, Action, Game, GameState, Status, offset


class GoldDigger(Game):
    game_id = "golddigger"

    def _tick(self, state: GameState, action: Action) -> int:
        params = state.params
        reward = 0
        avatar = state.avatar

        if action in DIRECTIONS:
            avatar.facing = action
            target = offset(avatar.pos, action)
            if self.passable(state, target):
                avatar.pos = target
                jewels = state.at(target, "jewel")
                if jewels:
                    state.sprites.remove(jewels[0])
                    state.collected += 1
                    reward += params["jewel_score"]
        elif action is Action.USE:
            victims = state.at(offset(avatar.pos, avatar.facing), "monster")
            if victims:
                state.sprites.remove(victims[0])
                state.kills += 1
                reward += params["kill_score"]

        if self._avatar_hit(state):
            state.status = Status.PLAYER_LOSES
        elif not state.of_kind("jewel"):
            state.status = Status.PLAYER_WINS
        else:
            for monster, target in zip(state.of_kind("monster"), self.monster_policy(state)):
                monster.pos = target
            if self._avatar_hit(state):
                state.status = Status.PLAYER_LOSES

        if state.status is Status.PLAYER_LOSES:
            reward += params["loss_penalty"]
        self._finish_tick(state)
        return reward
