//! The built-in spaces: the cubical torocosm, the two-story torocosm
//! `TwoTall = R³/(Z×Z×2Z)`, and its two 4-fold quotients Tetra and Didi.

use std::fmt;
use std::str::FromStr;

use super::{GroupError, Isometry, Lattice, PlatycosmPresentation};
use crate::exact::{mat_from_ints, q, qi};

/// Quarter-turn screw `(x,y,z) ↦ (-y, x, z+1/2)`.
pub fn tau() -> Isometry {
    Isometry::new(
        mat_from_ints([[0, -1, 0], [1, 0, 0], [0, 0, 1]]),
        [qi(0), qi(0), q(1, 2)],
    )
    .expect("orthogonal")
}

/// Half-turn screw `(x,y,z) ↦ (x+1/2, -y, -z)`.
pub fn rho_x() -> Isometry {
    Isometry::new(
        mat_from_ints([[1, 0, 0], [0, -1, 0], [0, 0, -1]]),
        [q(1, 2), qi(0), qi(0)],
    )
    .expect("orthogonal")
}

/// Half-turn screw `(x,y,z) ↦ (-x, y+1/2, 1-z)`.
pub fn rho_y() -> Isometry {
    Isometry::new(
        mat_from_ints([[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
        [qi(0), q(1, 2), qi(1)],
    )
    .expect("orthogonal")
}

/// Half-turn screw `(x,y,z) ↦ (1/2-x, 1/2-y, z+1)`.
pub fn rho_z() -> Isometry {
    Isometry::new(
        mat_from_ints([[-1, 0, 0], [0, -1, 0], [0, 0, 1]]),
        [q(1, 2), q(1, 2), qi(1)],
    )
    .expect("orthogonal")
}

pub fn two_tall_lattice() -> Lattice {
    Lattice::rectangular(qi(1), qi(1), qi(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    CubicalTorocosm,
    TwoTall,
    Tetra,
    Didi,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::CubicalTorocosm,
        Preset::TwoTall,
        Preset::Tetra,
        Preset::Didi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::CubicalTorocosm => "cubical_torocosm",
            Preset::TwoTall => "two_tall",
            Preset::Tetra => "tetra",
            Preset::Didi => "didi",
        }
    }

    pub fn presentation(self) -> PlatycosmPresentation {
        let (lattice, reps) = match self {
            Preset::CubicalTorocosm => (Lattice::cubic(), vec![Isometry::identity()]),
            Preset::TwoTall => (two_tall_lattice(), vec![Isometry::identity()]),
            Preset::Tetra => {
                let t = tau();
                (
                    two_tall_lattice(),
                    vec![Isometry::identity(), t, t.pow(2), t.pow(3)],
                )
            }
            Preset::Didi => (
                two_tall_lattice(),
                vec![Isometry::identity(), rho_x(), rho_y(), rho_z()],
            ),
        };
        PlatycosmPresentation::new(self.name(), lattice, reps).expect("presets are valid")
    }
}

impl FromStr for Preset {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| GroupError::UnknownPreset(s.to_string()))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
