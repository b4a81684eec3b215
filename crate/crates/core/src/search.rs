//! GRAVE and MCPS tree search over a transposition table.
//!
//! Each tree walk descends from the root by argmax of the blended value,
//! adds the first state not yet in the table as a new leaf, finishes the
//! game with uniformly random moves, and updates move and AMAF statistics
//! along the path. MCPS additionally intersects playout-membership bitsets
//! along the path and appends every finished playout to the archive.
//!
//! A search holds no state between moves of a game: [`Search::run`] starts
//! from an empty table and an empty archive.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::archive::{DescentMask, PermCache, PlayoutArchive};
use crate::error::{GameError, SearchError};
use crate::game::{
    random_playout, random_playout_with, CodeId, CodeMode, Game, PlayerId, RewardVector,
};
use crate::stats::{CodeTable, Tally};
use crate::weights::{grave_value, mcps_value};

/// Random stream used by a search: ChaCha with 8 rounds.
pub type SearchRng = ChaCha8Rng;

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Grave,
    Mcps,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Grave => "grave",
            Algorithm::Mcps => "mcps",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub algorithm: Algorithm,
    /// Tree walks per search (`N`); also the archive capacity.
    pub playouts: u32,
    /// A node with more than this many visits becomes the AMAF reference.
    pub ref_threshold: u32,
    /// GRAVE only.
    pub bias: f64,
    pub code_mode: CodeMode,
    pub rng_seed: u64,
    /// MCPS only. When false `n̂` is always 0 and no archive is kept.
    pub permutation_stats: bool,
}

impl SearchConfig {
    pub const DEFAULT_REF: u32 = 50;
    pub const DEFAULT_BIAS: f64 = 1e-5;

    pub fn grave(playouts: u32) -> Self {
        SearchConfig {
            algorithm: Algorithm::Grave,
            playouts,
            ref_threshold: Self::DEFAULT_REF,
            bias: Self::DEFAULT_BIAS,
            code_mode: CodeMode::Exact,
            rng_seed: 0,
            permutation_stats: false,
        }
    }

    pub fn mcps(playouts: u32) -> Self {
        SearchConfig {
            algorithm: Algorithm::Mcps,
            permutation_stats: true,
            ..Self::grave(playouts)
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn with_ref(mut self, ref_threshold: u32) -> Self {
        self.ref_threshold = ref_threshold;
        self
    }

    pub fn with_bias(mut self, bias: f64) -> Self {
        self.bias = bias;
        self
    }

    pub fn with_code_mode(mut self, mode: CodeMode) -> Self {
        self.code_mode = mode;
        self
    }

    fn uses_archive(&self) -> bool {
        self.algorithm == Algorithm::Mcps && self.permutation_stats
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.playouts == 0 {
            return Err(SearchError::InvalidConfig(
                "playout budget must be positive",
            ));
        }
        if !(self.bias.is_finite() && self.bias >= 0.0) {
            return Err(SearchError::InvalidConfig(
                "bias must be finite and non-negative",
            ));
        }
        Ok(())
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self::mcps(1000)
    }
}

/// A state in the search tree with its move, AMAF and permutation tables.
#[derive(Debug, Clone)]
pub struct Node<M> {
    key: u64,
    to_move: PlayerId,
    visits: u32,
    moves: Vec<M>,
    codes: Vec<CodeId>,
    move_stats: Vec<Tally>,
    amaf: CodeTable,
    perm: Option<PermCache>,
}

impl<M: Copy> Node<M> {
    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn to_move(&self) -> PlayerId {
        self.to_move
    }

    /// Walks that passed through this node, including the one that created it.
    pub fn visits(&self) -> u32 {
        self.visits
    }

    pub fn is_terminal(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn moves(&self) -> &[M] {
        &self.moves
    }

    pub fn codes(&self) -> &[CodeId] {
        &self.codes
    }

    /// Move statistics by legal-move index.
    pub fn move_stats(&self) -> &[Tally] {
        &self.move_stats
    }

    pub fn amaf(&self, code: CodeId) -> Tally {
        self.amaf.get(code)
    }

    pub fn amaf_codes(&self) -> Vec<CodeId> {
        self.amaf.codes()
    }

    pub fn perm_cache(&self) -> Option<&PermCache> {
        self.perm.as_ref()
    }
}

/// One selection step of a walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub node: NodeId,
    pub choice: usize,
    pub code: CodeId,
}

/// Everything a single tree walk did, for inspection in tests and tools.
#[derive(Debug, Clone)]
pub struct WalkTrace {
    pub path: Vec<Step>,
    pub leaf: NodeId,
    pub expanded: bool,
    pub codes: Vec<CodeId>,
    pub rewards: RewardVector,
}

pub struct Search<'g, G: Game> {
    game: &'g G,
    config: SearchConfig,
    universe: usize,
    nodes: Vec<Node<G::Move>>,
    table: FxHashMap<u64, NodeId>,
    archive: PlayoutArchive,
    rng: SearchRng,
    // per-walk scratch
    path: Vec<Step>,
    codes: Vec<CodeId>,
    mask: Option<DescentMask>,
    ties: Vec<usize>,
    move_buf: Vec<G::Move>,
    seen: Vec<u32>,
    stamp: u32,
    distinct: Vec<CodeId>,
    last_leaf: NodeId,
    last_expanded: bool,
    last_rewards: Option<RewardVector>,
}

impl<'g, G: Game> Search<'g, G> {
    pub fn new(game: &'g G, config: SearchConfig) -> Result<Self, SearchError> {
        config.validate()?;
        if !game.supports_mode(config.code_mode) {
            return Err(GameError::UnsupportedMode(
                config.code_mode.to_string(),
                game.name().to_string(),
            )
            .into());
        }
        let universe = game.code_universe(config.code_mode);
        let capacity = if config.uses_archive() {
            config.playouts as usize
        } else {
            0
        };
        Ok(Search {
            game,
            config,
            universe,
            nodes: Vec::new(),
            table: FxHashMap::default(),
            archive: PlayoutArchive::new(capacity),
            rng: SearchRng::seed_from_u64(config.rng_seed),
            path: Vec::new(),
            codes: Vec::new(),
            mask: None,
            ties: Vec::new(),
            move_buf: Vec::new(),
            seen: vec![0; universe],
            stamp: 0,
            distinct: Vec::new(),
            last_leaf: 0,
            last_expanded: false,
            last_rewards: None,
        })
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn archive(&self) -> &PlayoutArchive {
        &self.archive
    }

    pub fn node(&self, id: NodeId) -> &Node<G::Move> {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn lookup(&self, key: u64) -> Option<NodeId> {
        self.table.get(&key).copied()
    }

    pub fn root(&self) -> Option<NodeId> {
        if self.nodes.is_empty() {
            None
        } else {
            Some(0)
        }
    }

    /// Drops the tree and the archive.
    pub fn reset(&mut self) {
        self.nodes.clear();
        self.table.clear();
        self.archive.clear();
    }

    /// Runs the full budget of tree walks from `root` on a fresh tree and
    /// returns the most visited root move.
    pub fn run(&mut self, root: &G::State) -> Result<G::Move, SearchError> {
        if self.game.is_terminal(root) {
            return Err(GameError::Terminal { op: "run_search" }.into());
        }
        self.reset();
        for _ in 0..self.config.playouts {
            self.walk_inner(root)?;
        }
        self.choose_root_move()
    }

    /// Performs one tree walk from `root` and reports what it did.
    pub fn walk(&mut self, root: &G::State) -> Result<WalkTrace, SearchError> {
        self.walk_inner(root)?;
        Ok(WalkTrace {
            path: self.path.clone(),
            leaf: self.last_leaf,
            expanded: self.last_expanded,
            codes: self.codes.clone(),
            rewards: self.last_rewards.expect("walk stores rewards"),
        })
    }

    fn add_node(&mut self, state: &G::State, key: u64) -> NodeId {
        let mut moves = Vec::new();
        self.game.generate_moves(state, &mut moves);
        let codes = moves
            .iter()
            .map(|&m| self.game.code(state, m, self.config.code_mode))
            .collect();
        let id = self.nodes.len();
        self.nodes.push(Node {
            key,
            to_move: self.game.to_move(state),
            visits: 0,
            move_stats: vec![Tally::default(); moves.len()],
            moves,
            codes,
            amaf: CodeTable::for_universe(self.universe),
            perm: self
                .config
                .uses_archive()
                .then(|| PermCache::new(self.universe)),
        });
        self.table.insert(key, id);
        id
    }

    fn walk_inner(&mut self, root: &G::State) -> Result<(), SearchError> {
        let game = self.game;
        let uses_archive = self.config.uses_archive();
        if uses_archive && self.archive.count() >= self.archive.capacity() {
            return Err(SearchError::ArchiveFull {
                capacity: self.archive.capacity(),
            });
        }
        let root_key = game.state_key(root);
        let root_id = match self.table.get(&root_key) {
            Some(&id) => id,
            None => self.add_node(root, root_key),
        };

        self.path.clear();
        self.codes.clear();
        if uses_archive {
            self.mask = Some(self.archive.full_mask());
        }

        let mut state = root.clone();
        let mut node = root_id;
        let mut s_ref = root_id;
        let mut expanded = false;
        loop {
            if self.nodes[node].is_terminal() {
                break;
            }
            if self.nodes[node].visits > self.config.ref_threshold {
                s_ref = node;
            }
            if let Some(mask) = &self.mask {
                if let Some(cache) = self.nodes[node].perm.as_mut() {
                    cache.update(&self.archive, mask);
                }
            }
            let choice = self.select(node, s_ref);
            let mv = self.nodes[node].moves[choice];
            let code = self.nodes[node].codes[choice];
            self.path.push(Step { node, choice, code });
            self.codes.push(code);
            game.play(&mut state, mv);
            if let Some(mask) = self.mask.as_mut() {
                mask.refine_in_place(&self.archive, code);
            }
            let key = game.state_key(&state);
            match self.table.get(&key) {
                Some(&id) => node = id,
                None => {
                    node = self.add_node(&state, key);
                    expanded = true;
                    break;
                }
            }
        }

        let rewards = random_playout_with(
            game,
            &mut state,
            &mut self.rng,
            self.config.code_mode,
            &mut self.codes,
            &mut self.move_buf,
        );
        self.backpropagate(node, &rewards);
        if uses_archive {
            // after backpropagation `distinct` holds every code of the walk
            let mut codes = self.distinct.clone();
            codes.sort_unstable();
            self.archive.insert_distinct(codes, rewards);
        }
        self.last_leaf = node;
        self.last_expanded = expanded;
        self.last_rewards = Some(rewards);
        Ok(())
    }

    /// Argmax of the blended value over the legal moves of `node`; exact ties
    /// are broken uniformly at random.
    fn select(&mut self, node: NodeId, s_ref: NodeId) -> usize {
        let n = &self.nodes[node];
        let reference = &self.nodes[s_ref];
        let player = n.to_move;
        let mut best = f64::NEG_INFINITY;
        self.ties.clear();
        for (i, (&code, stats)) in n.codes.iter().zip(&n.move_stats).enumerate() {
            let value = blend(
                &self.config,
                stats,
                &reference.amaf.get(code),
                n,
                code,
                player,
            );
            if value > best {
                best = value;
                self.ties.clear();
                self.ties.push(i);
            } else if value == best {
                self.ties.push(i);
            }
        }
        match self.ties.len() {
            1 => self.ties[0],
            k => self.ties[self.rng.random_range(0..k)],
        }
    }

    /// `Q*(s, a)` of legal move `choice` at `node`, with AMAF read at `s_ref`.
    pub fn blended_value(&self, node: NodeId, s_ref: NodeId, choice: usize) -> f64 {
        let n = &self.nodes[node];
        let code = n.codes[choice];
        blend(
            &self.config,
            &n.move_stats[choice],
            &self.nodes[s_ref].amaf.get(code),
            n,
            code,
            n.to_move,
        )
    }

    /// Updates every node on the last walk's path and the leaf.
    ///
    /// The node at depth `d` receives AMAF updates for each distinct code at
    /// positions `>= d` of the walk's code sequence, once per playout.
    fn backpropagate(&mut self, leaf: NodeId, rewards: &RewardVector) {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.fill(0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        self.distinct.clear();
        let depth = self.path.len();
        for &c in &self.codes[depth..] {
            if self.seen[c.index()] != stamp {
                self.seen[c.index()] = stamp;
                self.distinct.push(c);
            }
        }
        let leaf_node = &mut self.nodes[leaf];
        leaf_node.visits += 1;
        for &c in &self.distinct {
            leaf_node.amaf.add(c, rewards);
        }
        for d in (0..depth).rev() {
            let step = self.path[d];
            if self.seen[step.code.index()] != stamp {
                self.seen[step.code.index()] = stamp;
                self.distinct.push(step.code);
            }
            let n = &mut self.nodes[step.node];
            n.visits += 1;
            n.move_stats[step.choice].add(rewards);
            for &c in &self.distinct {
                n.amaf.add(c, rewards);
            }
        }
    }

    /// Most visited root move; ties go to the higher mean for the player to
    /// move, then to the lower code.
    pub fn choose_root_move(&self) -> Result<G::Move, SearchError> {
        let root = self.nodes.first().ok_or(SearchError::NoVisitedMoves)?;
        choose_most_visited(root).ok_or(SearchError::NoVisitedMoves)
    }
}

fn blend<M>(
    config: &SearchConfig,
    stats: &Tally,
    amaf_ref: &Tally,
    node: &Node<M>,
    code: CodeId,
    player: PlayerId,
) -> f64 {
    match config.algorithm {
        Algorithm::Grave => grave_value(stats, amaf_ref, player, config.bias),
        Algorithm::Mcps => {
            let perm = node.perm.as_ref().map(|p| p.get(code)).unwrap_or_default();
            mcps_value(stats, amaf_ref, &perm, player)
        }
    }
}

fn choose_most_visited<M: Copy>(node: &Node<M>) -> Option<M> {
    let player = node.to_move;
    let mut best: Option<usize> = None;
    for (i, t) in node.move_stats.iter().enumerate() {
        if t.count == 0 {
            continue;
        }
        best = match best {
            None => Some(i),
            Some(b) => {
                let bt = &node.move_stats[b];
                let better = (t.count, t.mean(player)) > (bt.count, bt.mean(player))
                    || (t.count == bt.count
                        && t.mean(player) == bt.mean(player)
                        && node.codes[i] < node.codes[b]);
                Some(if better { i } else { b })
            }
        };
    }
    best.map(|i| node.moves[i])
}

/// One search with `config` from `root`, returning the chosen move.
pub fn run_search<G: Game>(
    game: &G,
    root: &G::State,
    config: SearchConfig,
) -> Result<G::Move, SearchError> {
    Search::new(game, config)?.run(root)
}

/// Uniform random playout from `state`; returns the codes played and the
/// terminal rewards.
pub fn simulate_playout<G: Game, R: Rng + ?Sized>(
    game: &G,
    state: &G::State,
    rng: &mut R,
    mode: CodeMode,
) -> (Vec<CodeId>, RewardVector) {
    let mut s = state.clone();
    let mut codes = Vec::new();
    let rewards = random_playout(game, &mut s, rng, mode, &mut codes);
    (codes, rewards)
}
