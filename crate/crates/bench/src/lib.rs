//! Fixed inputs shared by the criterion benchmarks.

use latzeta::Character;

/// The characters exercised by the lattice-sum benchmarks.
pub fn characters(nu: usize) -> Vec<(&'static str, Character)> {
    vec![
        ("trivial", Character::trivial(nu)),
        ("third", Character::uniform(nu, 1, 3)),
        ("half", Character::uniform(nu, 1, 2)),
    ]
}
