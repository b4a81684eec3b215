//! A small two-team skirmish on a 5x5 map.
//!
//! Each team has 10 agents with 3 health, starting on the two rows nearest
//! its own edge, front row first in turn order. Teams alternate turns and a
//! team's living agents act in index order. The acting agent either hits an
//! enemy within Chebyshev distance 1 for one point of damage or steps to an
//! orthogonally adjacent empty cell; with neither available it passes. A team
//! with no agents left loses; after 400 plies the game is a draw.

use mcps_core::zobrist::ZobristTable;
use mcps_core::{CodeId, CodeMode, Game, PlayerId, RewardVector};

use crate::grid::Grid;

pub const SIZE: usize = 5;
pub const AGENTS: usize = 10;
pub const HEALTH: u8 = 3;
pub const PLY_CAP: u32 = 400;

const CELLS: usize = SIZE * SIZE;
const TOTAL: usize = 2 * AGENTS;
const GRID: Grid = Grid::new(SIZE, SIZE);
const EMPTY: u8 = u8::MAX;
/// Up, down, left, right.
const DIRS: [(isize, isize); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    /// Hit the agent with this global index.
    Attack(u8),
    /// Move one cell in direction `DIRS[d]`.
    Step(u8),
    Pass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VideoGameState {
    /// Cell of each agent; meaningless once its health is 0.
    pos: [u8; TOTAL],
    health: [u8; TOTAL],
    /// Agent on each cell, or `EMPTY`.
    board: [u8; CELLS],
    cursor: [u8; 2],
    to_move: PlayerId,
    ply: u32,
}

impl VideoGameState {
    pub fn position(&self, agent: usize) -> Option<usize> {
        (self.health[agent] > 0).then_some(self.pos[agent] as usize)
    }

    pub fn health(&self) -> &[u8] {
        &self.health
    }

    pub fn occupant(&self, cell: usize) -> Option<usize> {
        (self.board[cell] != EMPTY).then_some(self.board[cell] as usize)
    }
}

#[derive(Debug, Clone)]
pub struct VideoGame {
    zobrist: ZobristTable,
}

impl Default for VideoGame {
    fn default() -> Self {
        Self::new()
    }
}

impl VideoGame {
    pub fn new() -> Self {
        // Agent features hold cell * (HEALTH + 1) + health; two more hold the
        // cursors and one the ply.
        VideoGame {
            zobrist: ZobristTable::new(TOTAL + 3, PLY_CAP as usize + 1, 2, 0x7669_6467),
        }
    }

    fn team(agent: usize) -> usize {
        agent / AGENTS
    }

    fn alive(s: &VideoGameState, team: usize) -> bool {
        s.health[team * AGENTS..(team + 1) * AGENTS]
            .iter()
            .any(|&h| h > 0)
    }

    /// Global index of the agent about to act.
    pub fn actor(&self, s: &VideoGameState) -> Option<usize> {
        let t = s.to_move.index();
        (0..AGENTS)
            .map(|i| t * AGENTS + (s.cursor[t] as usize + i) % AGENTS)
            .find(|&a| s.health[a] > 0)
    }

    fn in_range(a: usize, b: usize) -> bool {
        GRID.row(a).abs_diff(GRID.row(b)) <= 1 && GRID.col(a).abs_diff(GRID.col(b)) <= 1
    }

    /// Cell the actor occupies after the action.
    fn arrival(s: &VideoGameState, actor: usize, action: Action) -> usize {
        let from = s.pos[actor] as usize;
        match action {
            Action::Step(d) => {
                let (dr, dc) = DIRS[d as usize];
                GRID.offset(from, dr, dc).expect("step stays on the map")
            }
            _ => from,
        }
    }

    /// Builds a position from explicit agent cells and health, for tests.
    pub fn state_from(&self, agents: &[(usize, usize, u8)], to_move: PlayerId) -> VideoGameState {
        let mut s = VideoGameState {
            pos: [0; TOTAL],
            health: [0; TOTAL],
            board: [EMPTY; CELLS],
            cursor: [0; 2],
            to_move,
            ply: 0,
        };
        for &(agent, cell, health) in agents {
            s.pos[agent] = cell as u8;
            s.health[agent] = health;
            if health > 0 {
                s.board[cell] = agent as u8;
            }
        }
        s
    }
}

impl Game for VideoGame {
    type State = VideoGameState;
    type Move = Action;

    fn name(&self) -> &str {
        "videogame"
    }

    fn num_players(&self) -> usize {
        2
    }

    fn initial_state(&self) -> VideoGameState {
        let agents: Vec<(usize, usize, u8)> = (0..TOTAL)
            .map(|a| {
                let (team, i) = (a / AGENTS, a % AGENTS);
                let front = i < SIZE;
                let row = match (team, front) {
                    (0, true) => 1,
                    (0, false) => 0,
                    (_, true) => SIZE - 2,
                    (_, false) => SIZE - 1,
                };
                (a, GRID.cell(row, i % SIZE), HEALTH)
            })
            .collect();
        self.state_from(&agents, PlayerId(0))
    }

    fn to_move(&self, s: &VideoGameState) -> PlayerId {
        s.to_move
    }

    fn ply(&self, s: &VideoGameState) -> u32 {
        s.ply
    }

    fn generate_moves(&self, s: &VideoGameState, out: &mut Vec<Action>) {
        if self.is_terminal(s) {
            return;
        }
        let actor = self.actor(s).expect("team to move has a living agent");
        let from = s.pos[actor] as usize;
        let start = out.len();
        let enemy = 1 - Self::team(actor);
        for target in enemy * AGENTS..(enemy + 1) * AGENTS {
            if s.health[target] > 0 && Self::in_range(from, s.pos[target] as usize) {
                out.push(Action::Attack(target as u8));
            }
        }
        for (d, &(dr, dc)) in DIRS.iter().enumerate() {
            if let Some(to) = GRID.offset(from, dr, dc) {
                if s.board[to] == EMPTY {
                    out.push(Action::Step(d as u8));
                }
            }
        }
        if out.len() == start {
            out.push(Action::Pass);
        }
    }

    fn is_terminal(&self, s: &VideoGameState) -> bool {
        s.ply >= PLY_CAP || !Self::alive(s, 0) || !Self::alive(s, 1)
    }

    fn play(&self, s: &mut VideoGameState, mv: Action) {
        let t = s.to_move.index();
        let actor = self.actor(s).expect("team to move has a living agent");
        match mv {
            Action::Attack(target) => {
                let target = target as usize;
                s.health[target] -= 1;
                if s.health[target] == 0 {
                    s.board[s.pos[target] as usize] = EMPTY;
                }
            }
            Action::Step(_) => {
                let to = Self::arrival(s, actor, mv);
                s.board[s.pos[actor] as usize] = EMPTY;
                s.board[to] = actor as u8;
                s.pos[actor] = to as u8;
            }
            Action::Pass => {}
        }
        s.cursor[t] = ((actor - t * AGENTS + 1) % AGENTS) as u8;
        s.to_move = PlayerId(1 - t as u8);
        s.ply += 1;
    }

    fn terminal_rewards(&self, s: &VideoGameState) -> RewardVector {
        match (Self::alive(s, 0), Self::alive(s, 1)) {
            (true, false) => RewardVector::win(PlayerId(0), 2),
            (false, true) => RewardVector::win(PlayerId(1), 2),
            _ => RewardVector::draw(2),
        }
    }

    fn code(&self, s: &VideoGameState, mv: Action, mode: CodeMode) -> CodeId {
        let actor = self.actor(s).expect("team to move has a living agent");
        let (target_health, kind) = match mv {
            Action::Attack(t) => (s.health[t as usize] as usize, 0),
            Action::Step(_) => (0, 1),
            Action::Pass => (0, 2),
        };
        let abstract_code = match mv {
            Action::Attack(t) => actor * TOTAL + t as usize,
            Action::Step(d) => TOTAL * TOTAL + actor * DIRS.len() + d as usize,
            Action::Pass => TOTAL * TOTAL + TOTAL * DIRS.len() + actor,
        };
        let h = HEALTH as usize + 1;
        let code = match mode {
            CodeMode::Abstract => abstract_code,
            CodeMode::Specific => {
                let cell = Self::arrival(s, actor, mv);
                ((Self::team(actor) * CELLS + cell) * 3 + kind) * h + target_health
            }
            CodeMode::Exact => (abstract_code * CELLS + s.pos[actor] as usize) * h + target_health,
        };
        CodeId(code as u32)
    }

    fn code_universe(&self, mode: CodeMode) -> usize {
        let abstract_universe = TOTAL * TOTAL + TOTAL * DIRS.len() + TOTAL;
        let h = HEALTH as usize + 1;
        match mode {
            CodeMode::Abstract => abstract_universe,
            CodeMode::Specific => 2 * CELLS * 3 * h,
            CodeMode::Exact => abstract_universe * CELLS * h,
        }
    }

    fn supports_mode(&self, _mode: CodeMode) -> bool {
        true
    }

    fn state_key(&self, s: &VideoGameState) -> u64 {
        let h = HEALTH as usize + 1;
        let mut key = self.zobrist.side(s.to_move.index())
            ^ self.zobrist.key(TOTAL, s.cursor[0] as usize)
            ^ self.zobrist.key(TOTAL + 1, s.cursor[1] as usize)
            ^ self.zobrist.key(TOTAL + 2, s.ply.min(PLY_CAP) as usize);
        for a in 0..TOTAL {
            if s.health[a] > 0 {
                key ^= self
                    .zobrist
                    .key(a, s.pos[a] as usize * h + s.health[a] as usize);
            }
        }
        key
    }

    fn max_plies(&self) -> u32 {
        PLY_CAP
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn opening_actor_can_only_advance() {
        let g = VideoGame::new();
        let s = g.initial_state();
        assert_eq!(g.actor(&s), Some(0));
        assert_eq!(g.legal_moves(&s).unwrap(), vec![Action::Step(1)]);
    }

    #[test]
    fn boxed_in_agent_passes() {
        let g = VideoGame::new();
        // Agent 0 in the corner, allies on both neighbours, enemy far away.
        let s = g.state_from(&[(0, 0, 3), (1, 1, 3), (2, 5, 3), (10, 24, 3)], PlayerId(0));
        assert_eq!(g.legal_moves(&s).unwrap(), vec![Action::Pass]);
    }

    #[test]
    fn killing_frees_the_cell() {
        let g = VideoGame::new();
        let s = g.state_from(&[(0, 12, 3), (10, 13, 1), (11, 24, 3)], PlayerId(0));
        let moves = g.legal_moves(&s).unwrap();
        assert_eq!(moves[0], Action::Attack(10));
        let s = g.apply(&s, Action::Attack(10)).unwrap();
        assert_eq!(s.health[10], 0);
        assert_eq!(s.occupant(13), None);
        assert_eq!(s.occupant(12), Some(0));
    }

    #[test]
    fn abstract_attack_ignores_position() {
        let g = VideoGame::new();
        let a = g.state_from(&[(0, 12, 3), (10, 13, 3), (11, 24, 3)], PlayerId(0));
        let b = g.state_from(&[(0, 8, 3), (10, 13, 3), (11, 24, 3)], PlayerId(0));
        let hit = Action::Attack(10);
        assert_eq!(
            g.code(&a, hit, CodeMode::Abstract),
            g.code(&b, hit, CodeMode::Abstract)
        );
        assert_ne!(
            g.code(&a, hit, CodeMode::Exact),
            g.code(&b, hit, CodeMode::Exact)
        );
        assert_ne!(
            g.code(&a, hit, CodeMode::Specific),
            g.code(&b, hit, CodeMode::Specific)
        );
    }

    #[test]
    fn one_agent_per_cell_and_capped_length() {
        let g = VideoGame::new();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let mut s = g.initial_state();
            let mut buf = Vec::new();
            while let Some(mv) = g.random_move(&s, &mut rng, &mut buf) {
                g.play(&mut s, mv);
                let mut seen = [false; CELLS];
                for a in 0..TOTAL {
                    if let Some(c) = s.position(a) {
                        assert!(!seen[c]);
                        seen[c] = true;
                        assert_eq!(s.occupant(c), Some(a));
                    }
                }
            }
            assert!(s.ply <= PLY_CAP);
            let r = g.rewards(&s).unwrap();
            assert!((r.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}
