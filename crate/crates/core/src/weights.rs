//! Weighting of the move, AMAF and permutation statistics.
//!
//! MCPS blends three means with weights proportional to `c1 * n`, `ñ` and
//! `n̂`, where `c1 = (ñ + n̂) / ñ`. Substituting `c1` gives the reduced forms
//! used below, which avoid the intermediate division and keep `α` exactly
//! equal to `n / (n + ñ)`:
//!
//! ```text
//! α = n / (n + ñ)
//! β = ñ² / ((ñ + n̂)(n + ñ))
//! γ = ñ·n̂ / ((ñ + n̂)(n + ñ))
//! ```
//!
//! Counts stay far below 2^26 in any search, so every product above is an
//! exactly representable integer and each weight is a single correctly
//! rounded division.

use crate::game::PlayerId;
use crate::stats::Tally;

/// Value given to a move with no statistics from any source.
pub const FIRST_PLAY_URGENCY: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weights {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Weights {
    pub fn sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }
}

/// GRAVE's AMAF weight `ñ_ref / (ñ_ref + n + bias·ñ_ref·n)`.
///
/// Returns 0 when both counts are zero; callers treat that case as first
/// play urgency before reaching here.
pub fn grave_beta(amaf_ref: u32, count: u32, bias: f64) -> f64 {
    let a = amaf_ref as f64;
    let n = count as f64;
    let den = a + n + bias * a * n;
    if den == 0.0 {
        0.0
    } else {
        a / den
    }
}

/// MCPS weights for move count `n`, reference AMAF count `ñ` and permutation
/// count `n̂`. `None` when all three are zero.
///
/// With `ñ = 0` the `c1` factor diverges: a move with its own playouts keeps
/// only its own mean, and a move seen solely in permutation statistics uses
/// only those.
pub fn mcps_weights(count: u32, amaf: u32, perm: u32) -> Option<Weights> {
    match (count, amaf, perm) {
        (0, 0, 0) => None,
        (1.., 0, _) => Some(Weights {
            alpha: 1.0,
            beta: 0.0,
            gamma: 0.0,
        }),
        (0, 0, _) => Some(Weights {
            alpha: 0.0,
            beta: 0.0,
            gamma: 1.0,
        }),
        _ => {
            let n = count as f64;
            let a = amaf as f64;
            let h = perm as f64;
            let den = (a + h) * (n + a);
            Some(Weights {
                alpha: n / (n + a),
                beta: (a * a) / den,
                gamma: (a * h) / den,
            })
        }
    }
}

/// GRAVE value `(1 − β)·Q + β·Q̃(s_ref)` read for `player`.
///
/// `1 − β` is evaluated as `(n + bias·ñ·n) / den` rather than by subtraction
/// so that with `bias = 0` it is bit-identical to MCPS's `α` when `n̂ = 0`.
pub fn grave_value(mv: &Tally, amaf_ref: &Tally, player: PlayerId, bias: f64) -> f64 {
    if mv.count == 0 && amaf_ref.count == 0 {
        return FIRST_PLAY_URGENCY;
    }
    let a = amaf_ref.count as f64;
    let n = mv.count as f64;
    let den = a + n + bias * a * n;
    let beta = a / den;
    let keep = (n + bias * a * n) / den;
    keep * mv.mean(player) + beta * amaf_ref.mean(player)
}

/// MCPS value `α·Q + β·Q̃(s_ref) + γ·Q̂` read for `player`.
pub fn mcps_value(mv: &Tally, amaf_ref: &Tally, perm: &Tally, player: PlayerId) -> f64 {
    match mcps_weights(mv.count, amaf_ref.count, perm.count) {
        None => FIRST_PLAY_URGENCY,
        Some(w) => {
            w.alpha * mv.mean(player) + w.beta * amaf_ref.mean(player) + w.gamma * perm.mean(player)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::MAX_PLAYERS;
    use proptest::prelude::*;

    fn tally(count: u32, mean: f64) -> Tally {
        let mut sums = [0.0; MAX_PLAYERS];
        sums[0] = mean * count as f64;
        Tally { count, sums }
    }

    #[test]
    fn grave_beta_examples() {
        assert_eq!(grave_beta(0, 5, 1e-5), 0.0);
        assert_eq!(grave_beta(5, 0, 1e-5), 1.0);
        let b = grave_beta(10, 10, 1e-5);
        assert!((b - 10.0 / (20.0 + 1e-3)).abs() < 1e-15);
        assert!((b - 0.49997).abs() < 1e-5);
    }

    #[test]
    fn mcps_weight_examples() {
        let w = mcps_weights(10, 20, 40).unwrap();
        assert!((w.alpha - 1.0 / 3.0).abs() < 1e-15);
        assert!((w.beta - 20.0 / 90.0).abs() < 1e-15);
        assert!((w.gamma - 40.0 / 90.0).abs() < 1e-15);

        let w = mcps_weights(10, 20, 0).unwrap();
        assert!((w.alpha - 10.0 / 30.0).abs() < 1e-15);
        assert!((w.beta - 20.0 / 30.0).abs() < 1e-15);
        assert_eq!(w.gamma, 0.0);

        assert_eq!(
            mcps_weights(0, 0, 7),
            Some(Weights {
                alpha: 0.0,
                beta: 0.0,
                gamma: 1.0
            })
        );
        assert_eq!(
            mcps_weights(5, 0, 9),
            Some(Weights {
                alpha: 1.0,
                beta: 0.0,
                gamma: 0.0
            })
        );
        assert_eq!(mcps_weights(0, 0, 0), None);
    }

    #[test]
    fn degenerate_cases_are_limits_of_the_closed_form() {
        // n = 0, ñ → 0: the closed form gives (0, ñ/(ñ+n̂), n̂/(ñ+n̂)) → (0, 0, 1).
        let w = mcps_weights(0, 1, 1_000_000).unwrap();
        assert!(w.gamma > 0.999_99 && w.alpha == 0.0);
        // n > 0, ñ → 0: α = n/(n+ñ) → 1.
        let w = mcps_weights(1_000_000, 1, 5).unwrap();
        assert!(w.alpha > 0.999_99);
    }

    #[test]
    fn blend_examples() {
        let v = mcps_value(
            &tally(10, 0.5),
            &tally(20, 0.6),
            &tally(40, 0.9),
            PlayerId(0),
        );
        assert!((v - 0.7).abs() < 1e-12);
        let v = grave_value(&tally(4, 0.75), &tally(0, 0.0), PlayerId(0), 1e-5);
        assert_eq!(v, 0.75);
        assert_eq!(
            mcps_value(&tally(0, 0.0), &tally(0, 0.0), &tally(0, 0.0), PlayerId(0)),
            1.0
        );
        assert_eq!(
            grave_value(&tally(0, 0.0), &tally(0, 0.0), PlayerId(0), 1e-5),
            1.0
        );
    }

    proptest! {
        #[test]
        fn weights_are_a_partition(n in 0u32..1_000_000, a in 0u32..1_000_000, h in 0u32..1_000_000) {
            if let Some(w) = mcps_weights(n, a, h) {
                prop_assert!((w.sum() - 1.0).abs() <= 1e-12);
                prop_assert!(w.alpha >= 0.0 && w.beta >= 0.0 && w.gamma >= 0.0);
                if a > 0 && h > 0 {
                    let ratio = w.beta / w.gamma;
                    prop_assert!((ratio - a as f64 / h as f64).abs() <= 1e-9 * ratio.max(1.0));
                }
            }
        }

        #[test]
        fn grave_beta_in_unit_interval(a in 0u32..100_000, n in 0u32..100_000, bias in 0.0f64..1.0) {
            let b = grave_beta(a, n, bias);
            prop_assert!((0.0..=1.0).contains(&b));
        }

        #[test]
        fn mcps_without_permutations_is_unbiased_grave(
            n in 0u32..5000, a in 0u32..5000, wn in 0u32..5000, wa in 0u32..5000,
        ) {
            // reward sums must not exceed counts
            let mv = Tally { count: n, sums: [(wn.min(n)) as f64 * 0.5, 0.0, 0.0] };
            let amaf = Tally { count: a, sums: [(wa.min(a)) as f64 * 0.5, 0.0, 0.0] };
            let g = grave_value(&mv, &amaf, PlayerId(0), 0.0);
            let m = mcps_value(&mv, &amaf, &Tally::default(), PlayerId(0));
            prop_assert_eq!(g.to_bits(), m.to_bits());
        }
    }
}
