use std::fmt;

use num_traits::{One, Signed, Zero};

use super::GroupError;
use crate::exact::{self, Mat3, Vec3, Q};

/// Affine isometry `x ↦ rot·x + trans` with exact rational entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Isometry {
    rot: Mat3,
    trans: Vec3,
}

impl Isometry {
    /// Fails unless `rot` is exactly orthogonal.
    pub fn new(rot: Mat3, trans: Vec3) -> Result<Self, GroupError> {
        if exact::mat_mul(&exact::transpose(&rot), &rot) != exact::identity() {
            return Err(GroupError::NotOrthogonal);
        }
        Ok(Isometry { rot, trans })
    }

    pub(crate) fn new_unchecked(rot: Mat3, trans: Vec3) -> Self {
        Isometry { rot, trans }
    }

    pub fn identity() -> Self {
        Isometry {
            rot: exact::identity(),
            trans: exact::zero_vec(),
        }
    }

    pub fn translation(v: Vec3) -> Self {
        Isometry {
            rot: exact::identity(),
            trans: v,
        }
    }

    pub fn rot(&self) -> &Mat3 {
        &self.rot
    }

    pub fn trans(&self) -> &Vec3 {
        &self.trans
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            rot: exact::mat_mul(&self.rot, &other.rot),
            trans: exact::add(&exact::mat_vec(&self.rot, &other.trans), &self.trans),
        }
    }

    pub fn inverse(&self) -> Isometry {
        let rt = exact::transpose(&self.rot);
        Isometry {
            trans: exact::neg(&exact::mat_vec(&rt, &self.trans)),
            rot: rt,
        }
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, n: i64) -> Isometry {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut out = Isometry::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Isometry) -> Isometry {
        self.compose(other).compose(&self.inverse())
    }

    pub fn apply(&self, x: &Vec3) -> Vec3 {
        exact::add(&exact::mat_vec(&self.rot, x), &self.trans)
    }

    pub fn is_identity(&self) -> bool {
        self.is_translation() && self.trans.iter().all(Zero::is_zero)
    }

    pub fn is_translation(&self) -> bool {
        self.rot == exact::identity()
    }

    pub fn det(&self) -> Q {
        exact::det(&self.rot)
    }

    /// Smallest `n ≥ 1` with `rot^n = I` (at most 12 for anything that
    /// preserves a lattice).
    pub fn rotation_order(&self) -> Option<u32> {
        let mut m = self.rot;
        for n in 1..=12 {
            if m == exact::identity() {
                return Some(n);
            }
            m = exact::mat_mul(&m, &self.rot);
        }
        None
    }

    pub fn is_signed_permutation(&self) -> bool {
        self.rot.iter().all(|row| {
            row.iter()
                .all(|x| x.is_zero() || x.abs() == Q::one())
        })
    }
}

impl fmt::Display for Isometry {
    /// Renders the map coordinatewise, e.g. `(x,y,z) ↦ (-y, x, z+1/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["x", "y", "z"];
        let mut parts = Vec::with_capacity(3);
        for i in 0..3 {
            let mut s = String::new();
            for (j, name) in NAMES.iter().enumerate() {
                let c = self.rot[i][j];
                if c.is_zero() {
                    continue;
                }
                let sign = if c.is_negative() {
                    "-"
                } else if s.is_empty() {
                    ""
                } else {
                    "+"
                };
                let mag = c.abs();
                if mag == Q::one() {
                    s.push_str(&format!("{sign}{name}"));
                } else {
                    s.push_str(&format!("{sign}{}{name}", exact::Rat(&mag)));
                }
            }
            let t = self.trans[i];
            if !t.is_zero() {
                if s.is_empty() {
                    s = exact::Rat(&t).to_string();
                } else if t.is_negative() {
                    s.push_str(&format!("-{}", exact::Rat(&t.abs())));
                } else {
                    s.push_str(&format!("+{}", exact::Rat(&t)));
                }
            } else if s.is_empty() {
                s.push('0');
            }
            parts.push(s);
        }
        write!(f, "(x,y,z) ↦ ({})", parts.join(", "))
    }
}
