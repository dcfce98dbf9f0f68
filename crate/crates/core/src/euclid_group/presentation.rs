use std::collections::HashSet;

use super::{GroupError, Isometry, Lattice};
use crate::exact::{self, Mat3, Q};

/// `Γ` given as a lattice `Λ` of translations together with coset
/// representatives of `Γ/Λ`.
///
/// Representative translations are stored reduced into the fundamental cell
/// of `Λ`, so two elements lie in the same coset iff their reductions agree.
#[derive(Debug, Clone)]
pub struct PlatycosmPresentation {
    name: String,
    lattice: Lattice,
    reps: Vec<Isometry>,
}

impl PlatycosmPresentation {
    /// Validates group closure, lattice invariance and the Bieberbach
    /// fixed-point-free condition.
    pub fn new(
        name: impl Into<String>,
        lattice: Lattice,
        reps: Vec<Isometry>,
    ) -> Result<Self, GroupError> {
        if reps.is_empty() {
            return Err(GroupError::EmptyPresentation);
        }
        let reps: Vec<Isometry> = reps
            .into_iter()
            .map(|g| Isometry::new_unchecked(*g.rot(), lattice.reduce(g.trans())))
            .collect();
        if !reps[0].is_identity() {
            return Err(GroupError::FirstRepNotIdentity);
        }
        for (i, g) in reps.iter().enumerate() {
            if !lattice.is_preserved_by(g.rot()) {
                return Err(GroupError::LatticeNotInvariant { rep: i });
            }
            if let Some(j) = reps[..i].iter().position(|h| h == g) {
                return Err(GroupError::DuplicateCoset { first: j, second: i });
            }
        }
        let pres = PlatycosmPresentation {
            name: name.into(),
            lattice,
            reps,
        };
        for i in 0..pres.reps.len() {
            for j in 0..pres.reps.len() {
                if pres.coset_of(&pres.reps[i].compose(&pres.reps[j])).is_none() {
                    return Err(GroupError::NotClosed { left: i, right: j });
                }
            }
        }
        let rots = pres.holonomy();
        let rot_set: HashSet<Mat3> = rots.iter().copied().collect();
        if rots
            .iter()
            .any(|a| rots.iter().any(|b| !rot_set.contains(&exact::mat_mul(a, b))))
        {
            return Err(GroupError::HolonomyNotGroup);
        }
        for (i, g) in pres.reps.iter().enumerate().skip(1) {
            if pres.has_fixed_point(g) {
                return Err(GroupError::FixedPoint { rep: i });
            }
        }
        Ok(pres)
    }

    pub fn preset(name: &str) -> Result<Self, GroupError> {
        Ok(name.parse::<super::Preset>()?.presentation())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn reps(&self) -> &[Isometry] {
        &self.reps
    }

    /// Distinct rotational parts, in order of first appearance.
    pub fn holonomy(&self) -> Vec<Mat3> {
        let mut out: Vec<Mat3> = Vec::new();
        for g in &self.reps {
            if !out.contains(g.rot()) {
                out.push(*g.rot());
            }
        }
        out
    }

    pub fn holonomy_order(&self) -> usize {
        self.holonomy().len()
    }

    /// `g` with its translation reduced modulo the lattice.
    pub fn reduce(&self, g: &Isometry) -> Isometry {
        Isometry::new_unchecked(*g.rot(), self.lattice.reduce(g.trans()))
    }

    /// Index of the representative whose coset contains `g`.
    pub fn coset_of(&self, g: &Isometry) -> Option<usize> {
        let r = self.reduce(g);
        self.reps.iter().position(|h| *h == r)
    }

    pub fn contains(&self, g: &Isometry) -> bool {
        self.coset_of(g).is_some()
    }

    /// Does `(B, b + λ)` fix a point for some `λ ∈ Λ`? That happens iff the
    /// component of `b + λ` in the fixed space of `B` can vanish, which is a
    /// linear system over the integers.
    fn has_fixed_point(&self, g: &Isometry) -> bool {
        let fixed = exact::nullspace(&exact::mat_sub(&exact::identity(), g.rot()));
        if fixed.is_empty() {
            return true;
        }
        let gens: Vec<Vec<Q>> = self
            .lattice
            .basis()
            .iter()
            .map(|e| fixed.iter().map(|u| exact::dot(e, u)).collect())
            .collect();
        let target: Vec<Q> = fixed.iter().map(|u| -exact::dot(g.trans(), u)).collect();
        exact::in_integer_span(&gens, &target)
    }

    /// The full group of pure translations in `Γ`. Every element is
    /// `rep·λ`, so products of at most two representatives with trivial
    /// rotational part, together with `Λ`, generate it.
    pub fn translation_lattice(&self) -> Lattice {
        let mut gens: Vec<exact::Vec3> = self.lattice.basis().to_vec();
        for a in &self.reps {
            if a.is_translation() {
                gens.push(*a.trans());
            }
            for b in &self.reps {
                let ab = a.compose(b);
                if ab.is_translation() {
                    gens.push(*ab.trans());
                }
            }
        }
        let full = Lattice::from_generators(&gens).expect("contains a full-rank lattice");
        assert!(
            self.holonomy().iter().all(|m| full.is_preserved_by(m)),
            "translation lattice not closed under holonomy"
        );
        full
    }

    /// `covol(translation lattice) / |holonomy|`.
    pub fn volume(&self) -> Q {
        self.translation_lattice().covolume() / exact::qi(self.holonomy_order() as i64)
    }

    /// Dimension of the subspace fixed by every holonomy element.
    pub fn betti_one(&self) -> usize {
        let rows: Vec<exact::Vec3> = self
            .holonomy()
            .iter()
            .flat_map(|m| exact::mat_sub(m, &exact::identity()))
            .collect();
        3 - exact::rank(&rows)
    }

    /// Whether this presentation has no twisted elements at all.
    pub fn is_torus(&self) -> bool {
        self.reps.iter().all(|g| g.is_translation())
    }
}
