use num_traits::{Signed, Zero};

use super::GroupError;
use crate::exact::{self, IntLattice, Mat3, Vec3, Q};

/// Full-rank lattice in 3-space. `basis` rows are the generators, so a
/// lattice vector is `Σ nᵢ·basis[i]` for integers `nᵢ`.
#[derive(Debug, Clone)]
pub struct Lattice {
    basis: Mat3,
    // inverse of the transposed basis: coordinates = coord_map · v
    coord_map: Mat3,
}

impl Lattice {
    pub fn new(basis: [Vec3; 3]) -> Result<Self, GroupError> {
        let coord_map =
            exact::inverse(&exact::transpose(&basis)).ok_or(GroupError::DegenerateLattice)?;
        Ok(Lattice { basis, coord_map })
    }

    /// `diag(a, b, c)`, e.g. `Z × Z × 2Z`.
    pub fn rectangular(a: Q, b: Q, c: Q) -> Self {
        let z = Q::zero();
        Lattice::new([[a, z, z], [z, b, z], [z, z, c]]).expect("nonzero diagonal")
    }

    pub fn cubic() -> Self {
        Self::rectangular(exact::qi(1), exact::qi(1), exact::qi(1))
    }

    /// Lattice spanned by arbitrary generators; errors unless they span 3-space.
    pub fn from_generators(gens: &[Vec3]) -> Result<Self, GroupError> {
        let den = exact::common_denominator(gens.iter().flatten());
        let lat = IntLattice::generated_by(
            3,
            gens.iter().map(|g| {
                g.iter()
                    .map(|x| (x * exact::qi(den)).to_integer() as i128)
                    .collect()
            }),
        );
        if lat.rank() != 3 {
            return Err(GroupError::DegenerateLattice);
        }
        let rows: Vec<Vec3> = lat
            .rows()
            .iter()
            .map(|r| [0, 1, 2].map(|i| Q::new(r[i] as i64, den)))
            .collect();
        Lattice::new([rows[0], rows[1], rows[2]])
    }

    pub fn basis(&self) -> &Mat3 {
        &self.basis
    }

    /// Coordinates of `v` in the basis (integral iff `v` is a lattice vector).
    pub fn coords(&self, v: &Vec3) -> Vec3 {
        exact::mat_vec(&self.coord_map, v)
    }

    pub fn from_coords(&self, n: &Vec3) -> Vec3 {
        exact::mat_vec(&exact::transpose(&self.basis), n)
    }

    pub fn contains(&self, v: &Vec3) -> bool {
        exact::is_integral(&self.coords(v))
    }

    /// Representative of `v + Λ` with basis coordinates in `[0, 1)`.
    pub fn reduce(&self, v: &Vec3) -> Vec3 {
        let c = self.coords(v);
        let frac = c.map(|x| x - x.floor());
        self.from_coords(&frac)
    }

    pub fn covolume(&self) -> Q {
        exact::det(&self.basis).abs()
    }

    /// `{w : w·v ∈ Z for all v ∈ Λ}`.
    pub fn dual(&self) -> Lattice {
        let rows = self.coord_map;
        Lattice::new([rows[0], rows[1], rows[2]]).expect("dual of a nondegenerate lattice")
    }

    /// True when both lattices contain exactly the same vectors.
    pub fn same_as(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b)) && other.basis.iter().all(|b| self.contains(b))
    }

    /// Does `m` map the lattice into itself?
    pub fn is_preserved_by(&self, m: &Mat3) -> bool {
        self.basis
            .iter()
            .all(|b| self.contains(&exact::mat_vec(m, b)))
    }

    /// Matrix of `m` acting on basis coordinates: `coords(m·v) = A·coords(v)`.
    pub fn coordinate_action(&self, m: &Mat3) -> Mat3 {
        exact::mat_mul(
            &self.coord_map,
            &exact::mat_mul(m, &exact::transpose(&self.basis)),
        )
    }

    /// Factors `c_i` with `|n_i| ≤ c_i·|v|` for the coordinates `n` of any `v`.
    fn coordinate_bounds(&self) -> [f64; 3] {
        [0, 1, 2].map(|i| {
            self.coord_map[i]
                .iter()
                .map(|x| exact::to_f64(x).powi(2))
                .sum::<f64>()
                .sqrt()
        })
    }

    /// All lattice vectors with `|v|² ≤ radius_sq`, in coordinate order.
    pub fn points_within(&self, radius_sq: Q) -> Vec<Vec3> {
        let r = exact::to_f64(&radius_sq).max(0.0).sqrt();
        let bounds = self.coordinate_bounds().map(|b| (r * b + 1e-9).floor() as i64 + 1);
        let bt = exact::transpose(&self.basis);
        let mut out = Vec::new();
        for n0 in -bounds[0]..=bounds[0] {
            for n1 in -bounds[1]..=bounds[1] {
                for n2 in -bounds[2]..=bounds[2] {
                    let v = exact::mat_vec(&bt, &[n0, n1, n2].map(exact::qi));
                    if exact::norm_sq(&v) <= radius_sq {
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// Length of a shortest nonzero vector.
    pub fn minimum(&self) -> f64 {
        let shortest_basis = self
            .basis
            .iter()
            .map(exact::norm_sq)
            .min()
            .expect("three basis vectors");
        self.points_within(shortest_basis)
            .iter()
            .map(exact::norm_sq)
            .filter(|n| !n.is_zero())
            .min()
            .map(|n| exact::to_f64(&n).sqrt())
            .expect("basis vectors are within their own norm")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn dual_of_two_tall() {
        let lat = Lattice::rectangular(qi(1), qi(1), qi(2));
        let expected = Lattice::rectangular(qi(1), qi(1), q(1, 2));
        assert!(lat.dual().same_as(&expected));
        assert!(Lattice::cubic().dual().same_as(&Lattice::cubic()));
    }

    #[test]
    fn membership_and_reduction() {
        let lat = Lattice::rectangular(qi(1), qi(1), qi(2));
        assert!(lat.contains(&[qi(3), qi(-1), qi(4)]));
        assert!(!lat.contains(&[qi(0), qi(0), qi(1)]));
        assert_eq!(lat.reduce(&[q(3, 2), qi(-1), qi(5)]), [q(1, 2), qi(0), qi(1)]);
        assert_eq!(lat.covolume(), qi(2));
    }

    #[test]
    fn generators_collapse_to_basis() {
        let lat = Lattice::from_generators(&[
            [qi(1), qi(0), qi(0)],
            [qi(0), qi(1), qi(0)],
            [qi(0), qi(0), qi(2)],
            [qi(1), qi(1), qi(2)],
        ])
        .unwrap();
        assert!(lat.same_as(&Lattice::rectangular(qi(1), qi(1), qi(2))));
        assert!(Lattice::from_generators(&[[qi(1), qi(0), qi(0)], [qi(2), qi(0), qi(0)]]).is_err());
    }

    #[test]
    fn counting_and_minimum() {
        let lat = Lattice::rectangular(qi(1), qi(1), qi(2));
        assert_eq!(lat.points_within(qi(0)).len(), 1);
        assert_eq!(lat.points_within(qi(1)).len(), 5);
        assert_eq!(Lattice::cubic().points_within(qi(1)).len(), 7);
        assert_eq!(lat.minimum(), 1.0);
    }

    #[test]
    fn degenerate_rejected() {
        let z = qi(0);
        assert!(Lattice::new([[qi(1), z, z], [qi(2), z, z], [z, z, qi(1)]]).is_err());
    }
}
