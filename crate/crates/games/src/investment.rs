//! The Investment Pair Game, for two or three teams.
//!
//! Member `k` of every team forms sub-game `k`. Teams alternate turns and each
//! team's members take turns in index order. On its turn a member produces one
//! unit of wealth and gives it to a teammate (possibly itself) whose sub-game
//! is still open. The first member of a sub-game to reach wealth 3 wins it;
//! the other members of that sub-game can no longer play and must pass. The
//! team that wins the most sub-games wins; tied leaders share the reward.

use mcps_core::zobrist::ZobristTable;
use mcps_core::{CodeId, CodeMode, Game, PlayerId, RewardVector, MAX_PLAYERS};

pub const TARGET_WEALTH: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gift {
    /// Give to the teammate with this member index.
    To(u8),
    Pass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvestmentState {
    /// Indexed by `team * members + member`.
    wealth: Vec<u8>,
    /// Winning team of each sub-game, once decided.
    decided: Vec<Option<u8>>,
    ply: u32,
    hash: u64,
}

impl InvestmentState {
    pub fn wealth(&self) -> &[u8] {
        &self.wealth
    }

    pub fn decided(&self) -> &[Option<u8>] {
        &self.decided
    }
}

#[derive(Debug, Clone)]
pub struct Investment {
    name: String,
    teams: usize,
    members: usize,
    zobrist: ZobristTable,
}

impl Investment {
    pub fn new(teams: usize, members: usize) -> Self {
        assert!((2..=MAX_PLAYERS).contains(&teams) && members > 0 && members < 256);
        let name = if teams == 2 {
            format!("investment-{members}")
        } else {
            format!("investment-{teams}p")
        };
        // One feature per member for wealth, one for the turn position.
        let values = (TARGET_WEALTH as usize + 1).max(teams * members);
        Investment {
            name,
            teams,
            members,
            zobrist: ZobristTable::new(teams * members + 1, values, teams, 0x696e_7673),
        }
    }

    pub fn members(&self) -> usize {
        self.members
    }

    /// `(team, member)` whose turn it is at `ply`.
    pub fn mover(&self, ply: u32) -> (usize, usize) {
        let p = ply as usize;
        (p % self.teams, (p / self.teams) % self.members)
    }

    fn turn_slot(&self, ply: u32) -> usize {
        ply as usize % (self.teams * self.members)
    }

    /// A member that lost its sub-game.
    pub fn passed(&self, s: &InvestmentState, team: usize, member: usize) -> bool {
        matches!(s.decided[member], Some(w) if w as usize != team)
    }

    fn open(&self, s: &InvestmentState) -> bool {
        s.decided.iter().any(Option::is_none)
    }

    fn pass_code_base(&self, mode: CodeMode) -> usize {
        let gifts = self.teams * self.members * self.members;
        match mode {
            CodeMode::Abstract => gifts,
            _ => gifts * TARGET_WEALTH as usize,
        }
    }
}

impl Game for Investment {
    type State = InvestmentState;
    type Move = Gift;

    fn name(&self) -> &str {
        &self.name
    }

    fn num_players(&self) -> usize {
        self.teams
    }

    fn initial_state(&self) -> InvestmentState {
        let n = self.teams * self.members;
        InvestmentState {
            wealth: vec![0; n],
            decided: vec![None; self.members],
            ply: 0,
            hash: self.zobrist.hash_all(std::iter::repeat_n(0, n + 1), 0),
        }
    }

    fn to_move(&self, s: &InvestmentState) -> PlayerId {
        PlayerId(self.mover(s.ply).0 as u8)
    }

    fn ply(&self, s: &InvestmentState) -> u32 {
        s.ply
    }

    fn generate_moves(&self, s: &InvestmentState, out: &mut Vec<Gift>) {
        if !self.open(s) {
            return;
        }
        let (team, member) = self.mover(s.ply);
        if self.passed(s, team, member) {
            out.push(Gift::Pass);
            return;
        }
        for (k, d) in s.decided.iter().enumerate() {
            if d.is_none() {
                out.push(Gift::To(k as u8));
            }
        }
    }

    fn is_terminal(&self, s: &InvestmentState) -> bool {
        !self.open(s)
    }

    fn play(&self, s: &mut InvestmentState, mv: Gift) {
        let (team, _) = self.mover(s.ply);
        if let Gift::To(k) = mv {
            let k = k as usize;
            let i = team * self.members + k;
            let w = s.wealth[i] as usize;
            s.wealth[i] += 1;
            s.hash ^= self.zobrist.key(i, w) ^ self.zobrist.key(i, w + 1);
            if s.wealth[i] == TARGET_WEALTH {
                s.decided[k] = Some(team as u8);
            }
        }
        let feature = self.teams * self.members;
        let (from, to) = (self.turn_slot(s.ply), self.turn_slot(s.ply + 1));
        s.hash ^= self.zobrist.key(feature, from) ^ self.zobrist.key(feature, to);
        let next_team = (team + 1) % self.teams;
        s.hash ^= self.zobrist.side(team) ^ self.zobrist.side(next_team);
        s.ply += 1;
    }

    fn terminal_rewards(&self, s: &InvestmentState) -> RewardVector {
        let mut wins = [0usize; MAX_PLAYERS];
        for w in s.decided.iter().flatten() {
            wins[*w as usize] += 1;
        }
        let best = wins[..self.teams].iter().copied().max().unwrap_or(0);
        let leaders: Vec<PlayerId> = (0..self.teams)
            .filter(|&t| wins[t] == best)
            .map(|t| PlayerId(t as u8))
            .collect();
        RewardVector::shared(&leaders, self.teams)
    }

    fn code(&self, s: &InvestmentState, mv: Gift, mode: CodeMode) -> CodeId {
        let (team, member) = self.mover(s.ply);
        let mover = team * self.members + member;
        let code = match mv {
            Gift::Pass => self.pass_code_base(mode) + mover,
            Gift::To(k) => {
                let pair = mover * self.members + k as usize;
                match mode {
                    CodeMode::Abstract => pair,
                    _ => {
                        let w = s.wealth[team * self.members + k as usize] as usize;
                        pair * TARGET_WEALTH as usize + w
                    }
                }
            }
        };
        CodeId(code as u32)
    }

    fn code_universe(&self, mode: CodeMode) -> usize {
        self.pass_code_base(mode) + self.teams * self.members
    }

    fn state_key(&self, s: &InvestmentState) -> u64 {
        s.hash
    }

    fn max_plies(&self) -> u32 {
        // Every full round of turns contains at least one gift.
        let gifts = self.members * (TARGET_WEALTH as usize + (self.teams - 1) * 2);
        (gifts * self.teams * self.members) as u32
    }
}
