//! Twisted closed geodesics as conjugacy classes of screw motions.
//!
//! Every element of `Γ` with rotational part `B` is `(B, b_B + m)` for a
//! fixed base translation `b_B` and `m` in the full translation lattice
//! `T`. Conjugating by a translation `m` moves the translation part by
//! `(I − B)m`, so translation-conjugacy classes with rotation `B` are
//! residues of `T / (I − B)T`. In basis coordinates that quotient is read
//! off from a Hermite normal form: pivot coordinates range over
//! `[0, pivot)` and the one free coordinate moves the element along the
//! screw axis. The remaining conjugation by coset representatives is a
//! finite union-find.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::euclid_group::{Isometry, Lattice, PlatycosmPresentation};
use crate::exact::{self, IntLattice, Mat3, Rat, Vec3, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeodesicError {
    #[error("holonomy element {rot} is not a proper rotation; only orientable spaces are supported")]
    UnsupportedHolonomy { rot: String },
    #[error("screw axis {axis} has irrational length, so geodesic lengths are not rational")]
    IrrationalAxis { axis: String },
    #[error("no exact weight factor for twist {0}·π")]
    UnsupportedTwist(String),
    #[error("length bound must be positive, got {0}")]
    NonPositiveBound(String),
    #[error("{0} is not a twisted element of the group")]
    NotTwisted(String),
}

/// Rotation angle of a screw motion as a fraction of `π`, folded into
/// `(0, 1]` so a twist and its reverse coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Twist(Q);

impl Twist {
    /// Angle of a proper rotation other than the identity. Rotations that
    /// preserve a lattice have integral trace, hence one of four angles.
    pub fn of_rotation(rot: &Mat3) -> Option<Twist> {
        if exact::det(rot) != Q::one() || *rot == exact::identity() {
            return None;
        }
        let over_pi = match exact::trace(rot).to_integer() {
            -1 => exact::qi(1),
            0 => exact::q(2, 3),
            1 => exact::q(1, 2),
            2 => exact::q(1, 3),
            _ => return None,
        };
        Some(Twist(over_pi))
    }

    pub fn from_over_pi(x: Q) -> Option<Twist> {
        (x > Q::zero() && x <= Q::one()).then_some(Twist(x))
    }

    pub fn over_pi(&self) -> Q {
        self.0
    }

    /// Fraction of a full turn.
    pub fn turns(&self) -> Q {
        self.0 / exact::qi(2)
    }

    pub fn radians(&self) -> f64 {
        exact::to_f64(&self.0) * std::f64::consts::PI
    }

    /// `1 / sin²(θ/2)`, exact for the crystallographic angles.
    pub fn weight_factor(&self) -> Result<Q, GeodesicError> {
        let f = if self.0 == Q::one() {
            exact::qi(1)
        } else if self.0 == exact::q(1, 2) {
            exact::qi(2)
        } else if self.0 == exact::q(2, 3) {
            exact::q(4, 3)
        } else if self.0 == exact::q(1, 3) {
            exact::qi(4)
        } else {
            return Err(GeodesicError::UnsupportedTwist(exact::format_pq(&self.0)));
        };
        Ok(f)
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self.0.numer() {
            1 => write!(f, "π")?,
            n => write!(f, "{n}π")?,
        }
        match *self.0.denom() {
            1 => Ok(()),
            d => write!(f, "/{d}"),
        }
    }
}

/// All unoriented twisted geodesics sharing one signature.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicClass {
    pub length: Q,
    pub twist: Twist,
    pub imprimitivity: u32,
    pub count: u32,
    pub witness: Isometry,
}

impl GeodesicClass {
    pub fn weight(&self) -> Result<Q, GeodesicError> {
        weight(self)
    }

    pub fn is_primitive(&self) -> bool {
        self.imprimitivity == 1
    }
}

/// `count · (1/sin²(θ/2)) / k`.
pub fn weight(class: &GeodesicClass) -> Result<Q, GeodesicError> {
    Ok(exact::qi(class.count as i64) * class.twist.weight_factor()?
        / exact::qi(class.imprimitivity as i64))
}

/// Primitive integer vector spanning the fixed line of `rot`, with its
/// first nonzero coordinate positive.
fn canonical_axis(rot: &Mat3) -> Option<Vec3> {
    let fixed = exact::nullspace(&exact::mat_sub(rot, &exact::identity()));
    if fixed.len() != 1 {
        return None;
    }
    let u = fixed[0];
    let lead = u.iter().find(|x| !x.is_zero())?;
    Some(if lead.is_negative() { exact::neg(&u) } else { u })
}

fn axial_parts(g: &Isometry) -> Result<(Q, Vec3, Q), GeodesicError> {
    let u = canonical_axis(g.rot())
        .filter(|_| Twist::of_rotation(g.rot()).is_some())
        .ok_or_else(|| GeodesicError::NotTwisted(g.to_string()))?;
    let len = exact::exact_sqrt(exact::norm_sq(&u)).ok_or_else(|| GeodesicError::IrrationalAxis {
        axis: format!("({}, {}, {})", Rat(&u[0]), Rat(&u[1]), Rat(&u[2])),
    })?;
    Ok((exact::dot(g.trans(), &u), u, len))
}

/// Translation length along the screw axis.
pub fn axial_length(g: &Isometry) -> Result<Q, GeodesicError> {
    let (a, _, len) = axial_parts(g)?;
    Ok(a.abs() / len)
}

/// All elements with one rotational part, up to conjugation by translations.
struct ScrewFamily {
    rot: Mat3,
    twist: Twist,
    base: Vec3,
    axis: Vec3,
    axis_len: Q,
    /// `(I − A)Z³` in coordinates of the translation lattice.
    image: IntLattice,
    /// `e_i · axis` for each basis vector of the translation lattice.
    alpha: [Q; 3],
    free: usize,
}

struct Census {
    translations: Lattice,
    families: Vec<ScrewFamily>,
}

impl Census {
    fn new(p: &PlatycosmPresentation) -> Result<Census, GeodesicError> {
        let translations = p.translation_lattice();
        let mut families = Vec::new();
        for rot in p.holonomy() {
            if rot == exact::identity() {
                continue;
            }
            let unsupported = || GeodesicError::UnsupportedHolonomy {
                rot: Isometry::new(rot, exact::zero_vec())
                    .map(|g| g.to_string())
                    .unwrap_or_default(),
            };
            let twist = Twist::of_rotation(&rot).ok_or_else(unsupported)?;
            let axis = canonical_axis(&rot).ok_or_else(unsupported)?;
            let axis_len = exact::exact_sqrt(exact::norm_sq(&axis)).ok_or_else(|| {
                GeodesicError::IrrationalAxis {
                    axis: format!("({}, {}, {})", Rat(&axis[0]), Rat(&axis[1]), Rat(&axis[2])),
                }
            })?;
            let base = p
                .reps()
                .iter()
                .find(|g| *g.rot() == rot)
                .map(|g| translations.reduce(g.trans()))
                .expect("holonomy comes from the representatives");
            let a = translations.coordinate_action(&rot);
            let ia = exact::mat_sub(&exact::identity(), &a);
            let image = IntLattice::generated_by(
                3,
                (0..3).map(|j| {
                    exact::column(&ia, j)
                        .iter()
                        .map(|x| x.to_integer() as i128)
                        .collect()
                }),
            );
            let alpha = [0, 1, 2].map(|i| exact::dot(&translations.basis()[i], &axis));
            let free = (0..3)
                .find(|c| !image.pivots().contains(c))
                .expect("a rotation fixes exactly a line");
            families.push(ScrewFamily {
                rot,
                twist,
                base,
                axis,
                axis_len,
                image,
                alpha,
                free,
            });
        }
        Ok(Census {
            translations,
            families,
        })
    }

    fn family_of(&self, rot: &Mat3) -> usize {
        self.families
            .iter()
            .position(|f| f.rot == *rot)
            .expect("rotation belongs to the holonomy")
    }

    /// Canonical key of the translation-conjugacy class of `g`.
    fn key(&self, g: &Isometry) -> (usize, Vec<i128>) {
        let fi = self.family_of(g.rot());
        let fam = &self.families[fi];
        let n = self
            .translations
            .coords(&exact::sub(g.trans(), &fam.base))
            .map(|x| {
                debug_assert!(x.is_integer());
                x.to_integer() as i128
            });
        (fi, fam.image.reduce(&n))
    }

    /// The element or its inverse, whichever moves forward along its
    /// canonical axis.
    fn forward(&self, g: &Isometry) -> Isometry {
        let fam = &self.families[self.family_of(g.rot())];
        if exact::dot(g.trans(), &fam.axis).is_negative() {
            g.inverse()
        } else {
            *g
        }
    }

    /// One element per translation-conjugacy class with forward axial
    /// length in `(0, lmax]`.
    fn candidates(&self, lmax: Q) -> Vec<Isometry> {
        let mut out = Vec::new();
        for fam in &self.families {
            let pivots = fam.image.pivots();
            let ranges: Vec<i128> = pivots.iter().zip(fam.image.rows()).map(|(&p, r)| r[p]).collect();
            let step = fam.alpha[fam.free];
            let top = lmax * fam.axis_len;
            for i in 0..ranges[0] {
                for j in 0..ranges[1] {
                    let mut n = [0i128; 3];
                    n[pivots[0]] = i;
                    n[pivots[1]] = j;
                    let offset = exact::dot(&fam.base, &fam.axis)
                        + fam.alpha[pivots[0]] * exact::qi(i as i64)
                        + fam.alpha[pivots[1]] * exact::qi(j as i64);
                    // offset + step·x ∈ (0, top]
                    let (lo, hi) = if step.is_positive() {
                        ((-offset) / step, (top - offset) / step)
                    } else {
                        ((top - offset) / step, (-offset) / step)
                    };
                    let mut x = lo.floor().to_integer();
                    while exact::qi(x) <= hi {
                        let axial = offset + step * exact::qi(x);
                        if axial.is_positive() && axial <= top {
                            n[fam.free] = x as i128;
                            let m = self.translations.from_coords(&n.map(|v| exact::qi(v as i64)));
                            out.push(Isometry::new_unchecked(fam.rot, exact::add(&fam.base, &m)));
                        }
                        x += 1;
                    }
                }
            }
        }
        out
    }

    /// Upper bound on the number of forward classes of length at most `r`.
    fn count_bound(&self, r: f64) -> f64 {
        self.families
            .iter()
            .map(|fam| {
                let index: i128 = fam
                    .image
                    .pivots()
                    .iter()
                    .zip(fam.image.rows())
                    .map(|(&p, row)| row[p])
                    .product();
                let step = exact::to_f64(&(fam.alpha[fam.free].abs() / fam.axis_len));
                index as f64 * (r / step + 1.0)
            })
            .sum()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Largest `k` with `g = δᵏ` for some `δ ∈ Γ`.
pub fn imprimitivity(g: &Isometry, p: &PlatycosmPresentation) -> Result<u32, GeodesicError> {
    let census = Census::new(p)?;
    imprimitivity_in(&census, g)
}

fn imprimitivity_in(census: &Census, g: &Isometry) -> Result<u32, GeodesicError> {
    let (a, u, _) = axial_parts(g)?;
    let a = a.abs();
    // smallest forward axial step of any twisted element sharing the axis
    let mut shortest: Option<Q> = None;
    for fam in &census.families {
        if exact::rank(&[fam.axis, u]) != 1 {
            continue;
        }
        let g_step = exact::rational_gcd(&fam.alpha);
        let off = exact::dot(&fam.base, &fam.axis);
        let r = off - g_step * (off / g_step).floor();
        let m = r.min(g_step - r);
        shortest = Some(shortest.map_or(m, |s: Q| s.min(m)));
    }
    let Some(shortest) = shortest.filter(|s| s.is_positive()) else {
        return Err(GeodesicError::NotTwisted(g.to_string()));
    };
    let kmax = (a / shortest).floor().to_integer().max(1);
    for k in (2..=kmax).rev() {
        for fam in &census.families {
            let c = Isometry::new_unchecked(fam.rot, exact::zero_vec());
            if *c.pow(k).rot() != *g.rot() {
                continue;
            }
            // (C, x)ᵏ = (Cᵏ, S x) with S = Σ_{r<k} Cʳ, invertible when Cᵏ ≠ I
            let mut s = exact::identity();
            let mut power = exact::identity();
            for _ in 1..k {
                power = exact::mat_mul(&power, &fam.rot);
                s = exact::mat_add(&s, &power);
            }
            let Some(s_inv) = exact::inverse(&s) else { continue };
            let x = exact::mat_vec(&s_inv, g.trans());
            if census.translations.contains(&exact::sub(&x, &fam.base)) {
                return Ok(k as u32);
            }
        }
    }
    Ok(1)
}

/// Twisted geodesics of length at most `lmax`, one entry per signature
/// `(length, twist, imprimitivity)`, in that order.
pub fn twisted_classes(
    p: &PlatycosmPresentation,
    lmax: Q,
) -> Result<Vec<GeodesicClass>, GeodesicError> {
    if !lmax.is_positive() {
        return Err(GeodesicError::NonPositiveBound(exact::format_pq(&lmax)));
    }
    let census = Census::new(p)?;
    let cands = census.candidates(lmax);
    let index: HashMap<(usize, Vec<i128>), usize> = cands
        .iter()
        .enumerate()
        .map(|(i, g)| (census.key(g), i))
        .collect();
    let edges: Vec<(usize, usize)> = cands
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            let census = &census;
            let index = &index;
            p.reps().iter().map(move |h| {
                let image = census.forward(&h.conjugate(g));
                let j = *index
                    .get(&census.key(&image))
                    .expect("conjugation preserves length");
                (i, j)
            })
        })
        .collect();
    let mut uf = UnionFind((0..cands.len()).collect());
    for (a, b) in edges {
        uf.union(a, b);
    }
    let roots: Vec<usize> = (0..cands.len()).filter(|&i| uf.find(i) == i).collect();
    let signed: Vec<((Q, Twist, u32), Isometry)> = roots
        .par_iter()
        .map(|&i| {
            let g = cands[i];
            let fam = &census.families[census.family_of(g.rot())];
            let length = exact::dot(g.trans(), &fam.axis) / fam.axis_len;
            let k = imprimitivity_in(&census, &g)?;
            Ok(((length, fam.twist, k), g))
        })
        .collect::<Result<_, GeodesicError>>()?;
    let mut grouped: BTreeMap<(Q, Twist, u32), (u32, Isometry)> = BTreeMap::new();
    for (sig, g) in signed {
        grouped.entry(sig).or_insert((0, g)).0 += 1;
    }
    Ok(grouped
        .into_iter()
        .map(|((length, twist, imprimitivity), (count, witness))| GeodesicClass {
            length,
            twist,
            imprimitivity,
            count,
            witness,
        })
        .collect())
}

/// Do two twisted elements of `Γ` determine the same unoriented geodesic,
/// that is, is `b` conjugate to `a` or to `a⁻¹`?
pub fn same_geodesic(p: &PlatycosmPresentation, a: &Isometry, b: &Isometry) -> Result<bool, GeodesicError> {
    for g in [a, b] {
        if Twist::of_rotation(g.rot()).is_none() || !p.contains(g) {
            return Err(GeodesicError::NotTwisted(g.to_string()));
        }
    }
    let census = Census::new(p)?;
    let target = census.key(&census.forward(a));
    Ok(p
        .reps()
        .iter()
        .any(|h| census.key(&census.forward(&h.conjugate(b))) == target))
}

/// Bound on the number of unoriented twisted geodesics of length `≤ r`.
pub(crate) fn class_count_bound(p: &PlatycosmPresentation, r: f64) -> Result<f64, GeodesicError> {
    Ok(Census::new(p)?.count_bound(r))
}

pub fn classes_to_csv(classes: &[GeodesicClass]) -> Result<String, GeodesicError> {
    let mut out = String::from("length,twist_over_pi,imprimitivity,count,weight\n");
    for c in classes {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            Rat(&c.length),
            Rat(&c.twist.over_pi()),
            c.imprimitivity,
            c.count,
            Rat(&c.weight()?)
        ));
    }
    Ok(out)
}

fn isometry_json(g: &Isometry) -> Value {
    json!({
        "rot": g.rot().map(|r| r.map(|x| exact::format_pq(&x))),
        "trans": g.trans().map(|x| exact::format_pq(&x)),
    })
}

pub fn classes_to_json(classes: &[GeodesicClass]) -> Result<Value, GeodesicError> {
    classes
        .iter()
        .map(|c| {
            Ok(json!({
                "length": Rat(&c.length).to_string(),
                "twist_over_pi": Rat(&c.twist.over_pi()).to_string(),
                "imprimitivity": c.imprimitivity,
                "count": c.count,
                "weight": Rat(&c.weight()?).to_string(),
                "witness": isometry_json(&c.witness),
            }))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Value::Array)
}

/// One space's contribution at one length: `count` geodesics twisting by
/// `turns` of a full turn, each wrapping `k` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceEntry {
    pub count: u32,
    pub turns: Q,
    pub imprimitivity: u32,
    pub weight: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceRow {
    pub length: Q,
    pub entries: Vec<BalanceEntry>,
    pub total: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancePair {
    pub length: Q,
    pub left: BalanceRow,
    pub right: BalanceRow,
}

impl BalancePair {
    pub fn balanced(&self) -> bool {
        self.left.total == self.right.total
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceTable {
    pub left_name: String,
    pub right_name: String,
    pub max_length: Q,
    pub rows: Vec<BalancePair>,
}

fn row_at(classes: &[GeodesicClass], length: Q) -> Result<BalanceRow, GeodesicError> {
    let mut entries = classes
        .iter()
        .filter(|c| c.length == length)
        .map(|c| {
            Ok(BalanceEntry {
                count: c.count,
                turns: c.twist.turns(),
                imprimitivity: c.imprimitivity,
                weight: c.weight()?,
            })
        })
        .collect::<Result<Vec<_>, GeodesicError>>()?;
    entries.sort_by_key(|e| (e.turns, e.imprimitivity));
    let total = entries.iter().map(|e| e.weight).sum();
    Ok(BalanceRow {
        length,
        entries,
        total,
    })
}

/// Side-by-side weights of two spaces at every half-integer length up to
/// `lmax`, plus any other length where either space has a twisted geodesic.
pub fn balance_table(
    left: &PlatycosmPresentation,
    right: &PlatycosmPresentation,
    lmax: Q,
) -> Result<BalanceTable, GeodesicError> {
    let (lc, rc) = rayon::join(|| twisted_classes(left, lmax), || twisted_classes(right, lmax));
    let (lc, rc) = (lc?, rc?);
    let mut lengths: Vec<Q> = (1..)
        .map(|i| exact::q(i, 2))
        .take_while(|l| *l <= lmax)
        .chain(lc.iter().chain(&rc).map(|c| c.length))
        .collect();
    lengths.sort();
    lengths.dedup();
    let rows = lengths
        .into_iter()
        .map(|l| {
            Ok(BalancePair {
                length: l,
                left: row_at(&lc, l)?,
                right: row_at(&rc, l)?,
            })
        })
        .collect::<Result<_, GeodesicError>>()?;
    Ok(BalanceTable {
        left_name: left.name().to_string(),
        right_name: right.name().to_string(),
        max_length: lmax,
        rows,
    })
}

impl BalanceTable {
    pub fn is_balanced(&self) -> bool {
        self.rows.iter().all(BalancePair::balanced)
    }

    pub fn first_imbalance(&self) -> Option<&BalancePair> {
        self.rows.iter().find(|r| !r.balanced())
    }

    /// One line per entry slot; a length with no twisted geodesics still
    /// gets a line with empty breakdown cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "l,w_l_left,w_l_right,left_n,left_t,left_k,left_w,right_n,right_t,right_k,right_w,balanced\n",
        );
        let cells = |e: Option<&BalanceEntry>| match e {
            Some(e) => format!("{},{},{},{}", e.count, Rat(&e.turns), e.imprimitivity, Rat(&e.weight)),
            None => ",,,".to_string(),
        };
        for row in &self.rows {
            let lines = row.left.entries.len().max(row.right.entries.len()).max(1);
            for i in 0..lines {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    Rat(&row.length),
                    Rat(&row.left.total),
                    Rat(&row.right.total),
                    cells(row.left.entries.get(i)),
                    cells(row.right.entries.get(i)),
                    row.balanced()
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let side = |r: &BalanceRow| {
            json!({
                "w_l": Rat(&r.total).to_string(),
                "entries": r.entries.iter().map(|e| json!({
                    "n": e.count,
                    "t": Rat(&e.turns).to_string(),
                    "k": e.imprimitivity,
                    "w": Rat(&e.weight).to_string(),
                })).collect::<Vec<_>>(),
            })
        };
        json!({
            "left": self.left_name,
            "right": self.right_name,
            "max_length": Rat(&self.max_length).to_string(),
            "balanced": self.is_balanced(),
            "rows": self.rows.iter().map(|r| json!({
                "l": Rat(&r.length).to_string(),
                "balanced": r.balanced(),
                "left": side(&r.left),
                "right": side(&r.right),
            })).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid_group::presets::{rho_x, rho_y, rho_z, tau};
    use crate::euclid_group::Preset;
    use crate::exact::{q, qi};

    fn sig(c: &GeodesicClass) -> (Q, Q, u32, u32) {
        (c.length, c.twist.over_pi(), c.imprimitivity, c.count)
    }

    #[test]
    fn shortest_geodesics() {
        let tetra = twisted_classes(&Preset::Tetra.presentation(), q(1, 2)).unwrap();
        assert_eq!(tetra.iter().map(sig).collect::<Vec<_>>(), vec![(q(1, 2), q(1, 2), 1, 2)]);
        let didi = twisted_classes(&Preset::Didi.presentation(), q(1, 2)).unwrap();
        assert_eq!(didi.iter().map(sig).collect::<Vec<_>>(), vec![(q(1, 2), qi(1), 1, 4)]);
    }

    #[test]
    fn length_one() {
        let tetra = twisted_classes(&Preset::Tetra.presentation(), qi(1)).unwrap();
        let at_one: Vec<_> = tetra.iter().filter(|c| c.length == qi(1)).map(sig).collect();
        assert_eq!(at_one, vec![(qi(1), qi(1), 1, 1), (qi(1), qi(1), 2, 2)]);
        let didi = twisted_classes(&Preset::Didi.presentation(), qi(1)).unwrap();
        let at_one: Vec<_> = didi.iter().filter(|c| c.length == qi(1)).map(sig).collect();
        assert_eq!(at_one, vec![(qi(1), qi(1), 1, 2)]);
    }

    #[test]
    fn tori_have_none() {
        for p in [Preset::CubicalTorocosm, Preset::TwoTall] {
            assert!(twisted_classes(&p.presentation(), qi(5)).unwrap().is_empty());
        }
    }

    #[test]
    fn powers_of_tau() {
        let tetra = Preset::Tetra.presentation();
        assert_eq!(imprimitivity(&tau(), &tetra).unwrap(), 1);
        assert_eq!(imprimitivity(&tau().pow(2), &tetra).unwrap(), 2);
        assert_eq!(imprimitivity(&tau().pow(6), &tetra).unwrap(), 6);
        assert_eq!(imprimitivity(&tau().pow(-3), &tetra).unwrap(), 3);
        assert!(matches!(
            imprimitivity(&tau().pow(4), &tetra),
            Err(GeodesicError::NotTwisted(_))
        ));
        let didi = Preset::Didi.presentation();
        for g in [rho_x(), rho_y(), rho_z()] {
            assert_eq!(imprimitivity(&g, &didi).unwrap(), 1);
            assert_eq!(imprimitivity(&g.pow(3), &didi).unwrap(), 3);
        }
    }

    #[test]
    fn lengths_and_twists() {
        assert_eq!(axial_length(&tau()).unwrap(), q(1, 2));
        assert_eq!(axial_length(&rho_z()).unwrap(), qi(1));
        assert_eq!(Twist::of_rotation(tau().rot()).unwrap().over_pi(), q(1, 2));
        assert_eq!(Twist::of_rotation(rho_x().rot()).unwrap().over_pi(), qi(1));
        assert_eq!(Twist::of_rotation(&exact::identity()), None);
        let shown: Vec<String> = [q(1, 3), q(1, 2), q(2, 3), qi(1)]
            .map(|x| Twist::from_over_pi(x).unwrap().to_string())
            .to_vec();
        assert_eq!(shown, ["π/3", "π/2", "2π/3", "π"]);
    }

    #[test]
    fn weights() {
        let mk = |count, twist: Q, k| GeodesicClass {
            length: qi(1),
            twist: Twist::from_over_pi(twist).unwrap(),
            imprimitivity: k,
            count,
            witness: Isometry::identity(),
        };
        assert_eq!(weight(&mk(1, qi(1), 1)).unwrap(), qi(1));
        assert_eq!(weight(&mk(1, q(1, 2), 1)).unwrap(), qi(2));
        assert_eq!(weight(&mk(2, q(1, 2), 3)).unwrap(), q(4, 3));
        assert_eq!(weight(&mk(1, q(1, 3), 1)).unwrap(), qi(4));
        assert!(matches!(weight(&mk(1, q(1, 4), 1)), Err(GeodesicError::UnsupportedTwist(_))));
    }

    #[test]
    fn table_totals() {
        let table = balance_table(&Preset::Tetra.presentation(), &Preset::Didi.presentation(), q(9, 2)).unwrap();
        let totals: Vec<Q> = table.rows.iter().map(|r| r.left.total).collect();
        let expected = [
            qi(4),
            qi(2),
            q(4, 3),
            qi(0),
            q(4, 5),
            q(2, 3),
            q(4, 7),
            qi(0),
            q(4, 9),
        ];
        assert_eq!(totals, expected);
        assert!(table.is_balanced());
        assert!(table.to_csv().starts_with("l,w_l_left"));
    }

    #[test]
    fn bad_bound() {
        assert!(matches!(
            twisted_classes(&Preset::Tetra.presentation(), qi(0)),
            Err(GeodesicError::NonPositiveBound(_))
        ));
    }
}
