//! Board and scenario games for the search engine, plus a name registry.

pub mod atarigo;
pub mod go;
pub mod gomoku;
pub mod grid;
pub mod hex;
pub mod investment;
pub mod nogo;
pub mod nogo3;
pub mod race;
pub mod videogame;
pub mod wargame;

use mcps_core::{Game, GameError};

pub use atarigo::Atarigo;
pub use gomoku::Gomoku;
pub use grid::Cell;
pub use hex::Hex;
pub use investment::{Gift, Investment};
pub use nogo::Nogo;
pub use nogo3::Nogo3;
pub use race::{Race, Step};
pub use videogame::{Action, VideoGame};
pub use wargame::{Attack, Wargame};

/// Every registered game name.
pub const GAME_NAMES: &[&str] = &[
    "atarigo6",
    "breakthrough8",
    "gomoku9",
    "hex7",
    "knightthrough8",
    "nogo5",
    "nogo5-3p",
    "wargame-10",
    "wargame-20",
    "wargame-3p",
    "investment-11",
    "investment-21",
    "investment-3p",
    "videogame",
];

/// The six two-player board games.
pub const BOARD_GAMES: &[&str] = &[
    "atarigo6",
    "breakthrough8",
    "gomoku9",
    "hex7",
    "knightthrough8",
    "nogo5",
];

/// Code that runs against a concrete game type chosen at run time.
pub trait GameVisitor {
    type Output;
    fn visit<G: Game + 'static>(self, game: G) -> Self::Output;
}

/// Builds the game called `name` and hands it to `visitor`.
pub fn with_game<V: GameVisitor>(name: &str, visitor: V) -> Result<V::Output, GameError> {
    Ok(match name {
        "atarigo6" => visitor.visit(Atarigo::new(6)),
        "breakthrough8" => visitor.visit(Race::breakthrough(8)),
        "gomoku9" => visitor.visit(Gomoku::new(9)),
        "hex7" => visitor.visit(Hex::standard()),
        "knightthrough8" => visitor.visit(Race::knightthrough(8)),
        "nogo5" => visitor.visit(Nogo::new(5)),
        "nogo5-3p" => visitor.visit(Nogo3::new(5)),
        "wargame-10" => visitor.visit(Wargame::new(2, 10)),
        "wargame-20" => visitor.visit(Wargame::new(2, 20)),
        "wargame-3p" => visitor.visit(Wargame::new(3, 10)),
        "investment-11" => visitor.visit(Investment::new(2, 11)),
        "investment-21" => visitor.visit(Investment::new(2, 21)),
        "investment-3p" => visitor.visit(Investment::new(3, 10)),
        "videogame" => visitor.visit(VideoGame::new()),
        other => return Err(GameError::UnknownGame(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Name;
    impl GameVisitor for Name {
        type Output = String;
        fn visit<G: Game + 'static>(self, game: G) -> String {
            game.name().to_string()
        }
    }

    #[test]
    fn registry_names_round_trip() {
        for &name in GAME_NAMES {
            assert_eq!(with_game(name, Name).unwrap(), name);
        }
        assert!(matches!(
            with_game("chess", Name),
            Err(GameError::UnknownGame(_))
        ));
    }
}
