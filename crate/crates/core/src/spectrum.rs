//! Exact Laplace spectra of platycosms.
//!
//! Functions on `M = R³/Γ` are the `Γ`-invariant functions on the torus
//! `R³/Λ`. The torus has the Fourier basis `φ_v(x) = exp(2πi v·x)` for `v` in
//! the dual lattice, with eigenvalue `4π²|v|²`. A coset representative
//! `(B, b)` acts by `φ_v ∘ (B, b) = e^{2πi v·b} φ_{Bᵀv}`, so the dimension of
//! the invariant part of an eigenspace is the trace of the averaging
//! projector:
//!
//! ```text
//! mult(μ) = (1/m) Σ_j Σ_{4|v|² = μ, Bⱼᵀv = v} e^{2πi v·bⱼ}
//! ```
//!
//! Dual vectors are stored by their doubled coordinates, so the norm key
//! `4|v|²` is an integer and the eigenvalue is exactly `π²·key`. Phases are
//! fourth roots of unity for every supported space and are summed in the
//! Gaussian integers, never in floating point.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::euclid_group::{Lattice, PlatycosmPresentation};
use crate::exact::{self, Vec3, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("dual lattice is not contained in (1/2)Z³; only such lattices are supported")]
    UnsupportedLattice,
    #[error("phase at dual vector {twice:?}/2 is not a fourth root of unity")]
    UnsupportedPhase { twice: [i64; 3] },
    #[error("character sum {re}+{im}i over key {key} is not a nonnegative multiple of {order}")]
    NonIntegralCharacter { key: u64, re: i64, im: i64, order: usize },
    #[error("circle of circumference {0} has non-integral eigenvalue keys")]
    UnsupportedCircumference(String),
}

/// A dual-lattice vector `v`, stored as the integer vector `2v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualVector {
    twice: [i64; 3],
}

impl DualVector {
    pub fn from_twice(twice: [i64; 3]) -> Self {
        DualVector { twice }
    }

    /// `None` unless every coordinate is a half-integer.
    pub fn new(v: &Vec3) -> Option<Self> {
        let t = exact::scale(exact::qi(2), v);
        exact::is_integral(&t).then(|| DualVector {
            twice: t.map(|x| x.to_integer()),
        })
    }

    pub fn twice(&self) -> [i64; 3] {
        self.twice
    }

    pub fn coords(&self) -> Vec3 {
        self.twice.map(|x| Q::new(x, 2))
    }

    pub fn key(&self) -> NormKey {
        NormKey(self.twice.iter().map(|x| (x * x) as u64).sum())
    }
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords();
        write!(f, "({}, {}, {})", exact::Rat(&c[0]), exact::Rat(&c[1]), exact::Rat(&c[2]))
    }
}

/// `4|v|²`; the eigenvalue is `π²·key`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NormKey(pub u64);

impl NormKey {
    pub fn eigenvalue(self) -> f64 {
        PI * PI * self.0 as f64
    }
}

/// Span `V_{a,b,c}` of `φ_{±a,±b,±c}` and `φ_{±b,±a,±c}`, in canonical form
/// `a ≥ b ≥ 0`, `c ≥ 0` (doubled coordinates).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitSpec {
    twice: [i64; 3],
}

impl OrbitSpec {
    pub fn from_twice(twice: [i64; 3]) -> Self {
        let (a, b) = (twice[0].abs(), twice[1].abs());
        OrbitSpec {
            twice: [a.max(b), a.min(b), twice[2].abs()],
        }
    }

    /// From `(a, b, c)` in any sign/order; coordinates must be half-integers.
    pub fn new(a: Q, b: Q, c: Q) -> Option<Self> {
        DualVector::new(&[a, b, c]).map(|v| Self::from_twice(v.twice))
    }

    pub fn twice(&self) -> [i64; 3] {
        self.twice
    }

    pub fn key(&self) -> NormKey {
        DualVector::from_twice(self.twice).key()
    }

    /// The distinct Fourier indices spanning the orbit.
    pub fn members(&self) -> Vec<DualVector> {
        let [a, b, c] = self.twice;
        let mut out = Vec::with_capacity(16);
        for (x, y) in [(a, b), (b, a)] {
            for sx in [1, -1] {
                for sy in [1, -1] {
                    for sz in [1, -1] {
                        out.push(DualVector::from_twice([sx * x, sy * y, sz * c]));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Sparse table of multiplicities for keys `0..=max_key`; absent keys have
/// multiplicity zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    max_key: u64,
    entries: BTreeMap<u64, u64>,
}

impl SpectrumTable {
    pub fn new(max_key: u64) -> Self {
        SpectrumTable {
            max_key,
            entries: BTreeMap::new(),
        }
    }

    pub fn max_key(&self) -> u64 {
        self.max_key
    }

    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, key: u64) -> u64 {
        self.entries.get(&key).copied().unwrap_or(0)
    }

    pub fn insert(&mut self, key: u64, mult: u64) {
        assert!(key <= self.max_key, "key {key} beyond table bound {}", self.max_key);
        if mult > 0 {
            self.entries.insert(key, mult);
        } else {
            self.entries.remove(&key);
        }
    }

    /// Number of eigenvalues counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc {
            max_key: u64,
            entries: Vec<[u64; 2]>,
        }
        serde_json::to_string(&Doc {
            max_key: self.max_key,
            entries: self.entries.iter().map(|(k, m)| [*k, *m]).collect(),
        })
        .expect("integers serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,eigenvalue_over_pi2,multiplicity\n");
        for (k, m) in &self.entries {
            out.push_str(&format!("{k},{k},{m}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsospectralVerdict {
    Equal,
    Differs { key: u64, left: u64, right: u64 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct GaussianInt {
    re: i64,
    im: i64,
}

impl GaussianInt {
    fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussianInt { re: 1, im: 0 },
            1 => GaussianInt { re: 0, im: 1 },
            2 => GaussianInt { re: -1, im: 0 },
            _ => GaussianInt { re: 0, im: -1 },
        }
    }

    fn add(self, o: Self) -> Self {
        GaussianInt {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

fn int_dot(a: &[i64; 3], b: &[i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Tests `t/2 ∈ Λ*` using integers only: `t·(D·e) ≡ 0 (mod 2D)` for each
/// basis vector `e` of `Λ`.
#[derive(Debug, Clone)]
struct DualMembership {
    scaled_basis: [[i64; 3]; 3],
    modulus: i64,
}

impl DualMembership {
    fn new(lattice: &Lattice) -> Result<Self, SpectrumError> {
        let dual = lattice.dual();
        if !dual.basis().iter().all(|e| exact::is_integral(&exact::scale(exact::qi(2), e))) {
            return Err(SpectrumError::UnsupportedLattice);
        }
        let den = exact::common_denominator(lattice.basis().iter().flatten());
        let scaled_basis = lattice
            .basis()
            .map(|e| e.map(|x| (x * exact::qi(den)).to_integer()));
        Ok(DualMembership {
            scaled_basis,
            modulus: 2 * den,
        })
    }

    fn contains(&self, t: &[i64; 3]) -> bool {
        self.scaled_basis
            .iter()
            .all(|e| int_dot(t, e).rem_euclid(self.modulus) == 0)
    }
}

/// One coset representative's contribution to the character.
#[derive(Debug, Clone)]
struct RepCharacter {
    // rows of D·(Bᵀ - I); `t` is fixed iff all dot products vanish
    fix_rows: [[i64; 3]; 3],
    // 4 v·b = (t · phase_num) / phase_den
    phase_num: [i64; 3],
    phase_den: i64,
}

impl RepCharacter {
    fn new(rot: &exact::Mat3, trans: &Vec3) -> Self {
        let m = exact::mat_sub(&exact::transpose(rot), &exact::identity());
        let den = exact::common_denominator(m.iter().flatten());
        let fix_rows = m.map(|r| r.map(|x| (x * exact::qi(den)).to_integer()));
        let two_b = exact::scale(exact::qi(2), trans);
        let pden = exact::common_denominator(two_b.iter());
        RepCharacter {
            fix_rows,
            phase_num: two_b.map(|x| (x * exact::qi(pden)).to_integer()),
            phase_den: pden,
        }
    }

    fn term(&self, t: &[i64; 3]) -> Result<Option<GaussianInt>, SpectrumError> {
        if self.fix_rows.iter().any(|r| int_dot(r, t) != 0) {
            return Ok(None);
        }
        let n = int_dot(t, &self.phase_num);
        if n % self.phase_den != 0 {
            return Err(SpectrumError::UnsupportedPhase { twice: *t });
        }
        Ok(Some(GaussianInt::i_pow(n / self.phase_den)))
    }
}

/// Everything needed to evaluate characters of a presentation on dual vectors.
#[derive(Debug, Clone)]
struct Symmetrizer {
    dual: DualMembership,
    reps: Vec<RepCharacter>,
}

impl Symmetrizer {
    fn new(p: &PlatycosmPresentation) -> Result<Self, SpectrumError> {
        Ok(Symmetrizer {
            dual: DualMembership::new(p.lattice())?,
            reps: p
                .reps()
                .iter()
                .map(|g| RepCharacter::new(g.rot(), g.trans()))
                .collect(),
        })
    }

    fn order(&self) -> usize {
        self.reps.len()
    }

    fn character(&self, t: &[i64; 3]) -> Result<GaussianInt, SpectrumError> {
        let mut acc = GaussianInt::default();
        for r in &self.reps {
            if let Some(z) = r.term(t)? {
                acc = acc.add(z);
            }
        }
        Ok(acc)
    }

    /// `(1/m)·Σ character`, which must be a nonnegative integer.
    fn dimension(&self, key: u64, sum: GaussianInt) -> Result<u64, SpectrumError> {
        let m = self.order() as i64;
        if sum.im != 0 || sum.re < 0 || sum.re % m != 0 {
            return Err(SpectrumError::NonIntegralCharacter {
                key,
                re: sum.re,
                im: sum.im,
                order: self.order(),
            });
        }
        Ok((sum.re / m) as u64)
    }
}

fn isqrt(n: u64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while (r + 1) * (r + 1) <= n as i64 {
        r += 1;
    }
    while r * r > n as i64 {
        r -= 1;
    }
    r
}

pub fn dual_lattice(lattice: &Lattice) -> Lattice {
    lattice.dual()
}

/// All vectors of `lstar` with `4|v|² = key`, sorted by doubled coordinates.
/// `lstar` must lie inside `(1/2)Z³`.
pub fn shell(lstar: &Lattice, key: NormKey) -> Result<Vec<DualVector>, SpectrumError> {
    if !lstar
        .basis()
        .iter()
        .all(|e| exact::is_integral(&exact::scale(exact::qi(2), e)))
    {
        return Err(SpectrumError::UnsupportedLattice);
    }
    let r = isqrt(key.0);
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            let rest = key.0 as i64 - x * x - y * y;
            if rest < 0 {
                continue;
            }
            let z = isqrt(rest as u64);
            if z * z != rest {
                continue;
            }
            for zz in if z == 0 { vec![0] } else { vec![-z, z] } {
                let v = DualVector::from_twice([x, y, zz]);
                if lstar.contains(&v.coords()) {
                    out.push(v);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Exact multiplicity of the eigenvalue `π²·key` on `p`.
pub fn multiplicity(p: &PlatycosmPresentation, key: NormKey) -> Result<u64, SpectrumError> {
    let sym = Symmetrizer::new(p)?;
    let mut sum = GaussianInt::default();
    for v in shell(&p.lattice().dual(), key)? {
        sum = sum.add(sym.character(&v.twice)?);
    }
    sym.dimension(key.0, sum)
}

/// Dimension of the symmetrized image of `V_{a,b,c}`.
pub fn orbit_dims(p: &PlatycosmPresentation, orbit: OrbitSpec) -> Result<u64, SpectrumError> {
    let sym = Symmetrizer::new(p)?;
    let mut sum = GaussianInt::default();
    for v in orbit.members() {
        if sym.dual.contains(&v.twice) {
            sum = sum.add(sym.character(&v.twice)?);
        }
    }
    sym.dimension(orbit.key().0, sum)
}

/// Canonical orbits partitioning a shell.
pub fn orbits_in_shell(shell: &[DualVector]) -> Vec<OrbitSpec> {
    let mut out: Vec<OrbitSpec> = shell.iter().map(|v| OrbitSpec::from_twice(v.twice)).collect();
    out.sort();
    out.dedup();
    out
}

/// Multiplicities of every eigenvalue `π²·key` with `key ≤ max_key`.
pub fn spectrum_table(p: &PlatycosmPresentation, max_key: u64) -> Result<SpectrumTable, SpectrumError> {
    let sym = Symmetrizer::new(p)?;
    let r = isqrt(max_key);
    let sums = (-r..=r)
        .into_par_iter()
        .map(|x| {
            let mut part: BTreeMap<u64, GaussianInt> = BTreeMap::new();
            for y in -r..=r {
                let xy = (x * x + y * y) as u64;
                if xy > max_key {
                    continue;
                }
                let zr = isqrt(max_key - xy);
                for z in -zr..=zr {
                    let t = [x, y, z];
                    if !sym.dual.contains(&t) {
                        continue;
                    }
                    let key = xy + (z * z) as u64;
                    let ch = sym.character(&t)?;
                    let slot = part.entry(key).or_default();
                    *slot = slot.add(ch);
                }
            }
            Ok(part)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                let slot = a.entry(k).or_default();
                *slot = slot.add(v);
            }
            Ok(a)
        })?;
    let mut table = SpectrumTable::new(max_key);
    for (key, sum) in sums {
        table.insert(key, sym.dimension(key, sum)?);
    }
    Ok(table)
}

/// Compares spectra key by key up to `max_key`.
pub fn is_isospectral(
    left: &PlatycosmPresentation,
    right: &PlatycosmPresentation,
    max_key: u64,
) -> Result<IsospectralVerdict, SpectrumError> {
    let a = spectrum_table(left, max_key)?;
    let b = spectrum_table(right, max_key)?;
    Ok(compare_tables(&a, &b))
}

pub fn compare_tables(a: &SpectrumTable, b: &SpectrumTable) -> IsospectralVerdict {
    let max_key = a.max_key().min(b.max_key());
    let keys: std::collections::BTreeSet<u64> = a
        .entries()
        .keys()
        .chain(b.entries().keys())
        .copied()
        .filter(|k| *k <= max_key)
        .collect();
    for key in keys {
        let (l, r) = (a.multiplicity(key), b.multiplicity(key));
        if l != r {
            return IsospectralVerdict::Differs { key, left: l, right: r };
        }
    }
    IsospectralVerdict::Equal
}

/// Spectrum of the circle `R/cZ`: eigenvalues `(2πn/c)² = π²·(4n²/c²)`.
/// Only circumferences making `4/c²` an integer are representable.
pub fn circle_spectrum(circumference: Q, max_key: u64) -> Result<SpectrumTable, SpectrumError> {
    let unsupported = || SpectrumError::UnsupportedCircumference(exact::Rat(&circumference).to_string());
    if circumference <= Q::zero() {
        return Err(unsupported());
    }
    let step = exact::qi(4) / (circumference * circumference);
    if !step.is_integer() {
        return Err(unsupported());
    }
    let step = step.to_integer() as u64;
    let mut table = SpectrumTable::new(max_key);
    table.insert(0, 1);
    let mut n = 1u64;
    while step * n * n <= max_key {
        table.insert(step * n * n, 2);
        n += 1;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid_group::Preset;
    use crate::exact::{q, qi};

    fn pres(p: Preset) -> PlatycosmPresentation {
        p.presentation()
    }

    #[test]
    fn small_shells() {
        let lstar = Lattice::rectangular(qi(1), qi(1), q(1, 2));
        assert_eq!(shell(&lstar, NormKey(0)).unwrap(), vec![DualVector::from_twice([0, 0, 0])]);
        let s1: Vec<[i64; 3]> = shell(&lstar, NormKey(1)).unwrap().iter().map(|v| v.twice()).collect();
        assert_eq!(s1, vec![[0, 0, -1], [0, 0, 1]]);
        let s4: Vec<[i64; 3]> = shell(&lstar, NormKey(4)).unwrap().iter().map(|v| v.twice()).collect();
        assert_eq!(
            s4,
            vec![[-2, 0, 0], [0, -2, 0], [0, 0, -2], [0, 0, 2], [0, 2, 0], [2, 0, 0]]
        );
        let z3 = Lattice::rectangular(q(1, 3), qi(1), qi(1));
        assert_eq!(shell(&z3, NormKey(1)), Err(SpectrumError::UnsupportedLattice));
    }

    #[test]
    fn listed_multiplicities() {
        for p in [Preset::Tetra, Preset::Didi] {
            let pr = pres(p);
            assert_eq!(multiplicity(&pr, NormKey(0)).unwrap(), 1);
            assert_eq!(multiplicity(&pr, NormKey(1)).unwrap(), 0);
            assert_eq!(multiplicity(&pr, NormKey(4)).unwrap(), 1);
            assert_eq!(multiplicity(&pr, NormKey(5)).unwrap(), 2);
        }
    }

    #[test]
    fn exceptional_orbits() {
        let (tetra, didi) = (pres(Preset::Tetra), pres(Preset::Didi));
        for n in 1..=6i64 {
            let x = OrbitSpec::from_twice([2 * n, 0, 0]);
            let z = OrbitSpec::from_twice([0, 0, 2 * n]);
            if n % 2 == 1 {
                assert_eq!(orbit_dims(&tetra, x).unwrap(), 1);
                assert_eq!(orbit_dims(&tetra, z).unwrap(), 0);
                assert_eq!(orbit_dims(&didi, x).unwrap(), 0);
                assert_eq!(orbit_dims(&didi, z).unwrap(), 1);
            } else {
                assert_eq!(orbit_dims(&tetra, x).unwrap(), 1);
                assert_eq!(orbit_dims(&tetra, z).unwrap(), 2);
                assert_eq!(orbit_dims(&didi, x).unwrap(), 2);
                assert_eq!(orbit_dims(&didi, z).unwrap(), 1);
            }
        }
        // half-integer c on the axis dies in both
        let half = OrbitSpec::from_twice([0, 0, 3]);
        assert_eq!(orbit_dims(&tetra, half).unwrap(), 0);
        assert_eq!(orbit_dims(&didi, half).unwrap(), 0);
        // generic orbit
        let generic = OrbitSpec::new(qi(2), qi(1), q(1, 2)).unwrap();
        assert_eq!(generic.members().len(), 16);
        assert_eq!(orbit_dims(&tetra, generic).unwrap(), 4);
        assert_eq!(orbit_dims(&didi, generic).unwrap(), 4);
    }

    #[test]
    fn orbit_canonical_form() {
        assert_eq!(OrbitSpec::from_twice([-2, 6, -3]).twice(), [6, 2, 3]);
        assert_eq!(OrbitSpec::new(qi(1), q(1, 3), qi(0)), None);
    }

    #[test]
    fn tables() {
        let t = spectrum_table(&pres(Preset::Tetra), 5).unwrap();
        assert_eq!(t.entries().iter().map(|(k, v)| (*k, *v)).collect::<Vec<_>>(), vec![(0, 1), (4, 1), (5, 2)]);
        let two = spectrum_table(&pres(Preset::TwoTall), 1).unwrap();
        assert_eq!(two.entries().iter().map(|(k, v)| (*k, *v)).collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        for p in Preset::ALL {
            let t0 = spectrum_table(&pres(p), 0).unwrap();
            assert_eq!(t0.entries().len(), 1);
            assert_eq!(t0.multiplicity(0), 1);
        }
    }

    #[test]
    fn verdicts() {
        let (tetra, two) = (pres(Preset::Tetra), pres(Preset::TwoTall));
        assert_eq!(
            is_isospectral(&tetra, &two, 4).unwrap(),
            IsospectralVerdict::Differs { key: 1, left: 0, right: 2 }
        );
        for p in Preset::ALL {
            assert_eq!(is_isospectral(&pres(p), &pres(p), 50).unwrap(), IsospectralVerdict::Equal);
        }
    }

    #[test]
    fn circles() {
        let half = circle_spectrum(q(1, 2), 16).unwrap();
        assert_eq!(half.entries().iter().map(|(k, v)| (*k, *v)).collect::<Vec<_>>(), vec![(0, 1), (16, 2)]);
        let two = circle_spectrum(qi(2), 4).unwrap();
        assert_eq!(two.entries().iter().map(|(k, v)| (*k, *v)).collect::<Vec<_>>(), vec![(0, 1), (1, 2), (4, 2)]);
        assert_eq!(circle_spectrum(qi(2), 0).unwrap().entries().len(), 1);
        assert!(matches!(circle_spectrum(qi(3), 10), Err(SpectrumError::UnsupportedCircumference(_))));
        assert!(circle_spectrum(qi(-2), 10).is_err());
    }

    #[test]
    fn serialization() {
        let t = spectrum_table(&pres(Preset::Tetra), 5).unwrap();
        assert_eq!(t.to_json(), r#"{"max_key":5,"entries":[[0,1],[4,1],[5,2]]}"#);
        assert_eq!(t.to_csv(), "key,eigenvalue_over_pi2,multiplicity\n0,0,1\n4,4,1\n5,5,2\n");
    }
}
