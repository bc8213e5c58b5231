//! Hilbert schemes of points in the plane.
//!
//! Torus fixpoints of `Hilb^r(P^2)` are monomial ideals of colength `r`, one
//! partition per coordinate point, i.e. tripartitions of `r`. Bundles of
//! sections `E_n` and the line bundle `L` of subschemes meeting a line are
//! read off the diagram of a tripartition; the tangent space comes from a
//! functorial resolution of the ideal twisted by an auxiliary degree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::localize::{check_weight_length, integrate_par, tangent_weights, FixpointContribution, LocalizationResult};
use crate::poly::{BivariatePolynomial, Polynomial};
use crate::repring::{segre_coefficients, twist, Character, VirtualRep, WeightMultiset, WeightVector};

const VARS: usize = 3;

/// A partition, parts weakly decreasing and positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Cells `(row, col)` with `col < parts[row]`.
    pub fn diagram(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(row, &len)| (0..len).map(move |col| (row as u32, col)))
    }

    /// All partitions of `k`, largest first part first.
    pub fn all(k: u32) -> Vec<Partition> {
        fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(k, k, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One partition per coordinate point of the plane.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tripartition(pub [Partition; 3]);

impl Tripartition {
    pub fn new(b0: Partition, b1: Partition, b2: Partition) -> Self {
        Tripartition([b0, b1, b2])
    }

    pub fn from_parts(b0: &[u32], b1: &[u32], b2: &[u32]) -> Self {
        Self::new(Partition::new(b0.to_vec()), Partition::new(b1.to_vec()), Partition::new(b2.to_vec()))
    }

    pub fn size(&self) -> u32 {
        self.0.iter().map(Partition::size).sum()
    }
}

impl fmt::Display for Tripartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{};{}]", self.0[0], self.0[1], self.0[2])
    }
}

/// All tripartitions of `r`, ordered by the sizes `(|b0|, |b1|, |b2|)`
/// lexicographically and then by the partitions themselves.
pub fn enumerate_tripartitions(r: u32) -> Vec<Tripartition> {
    let parts: Vec<Vec<Partition>> = (0..=r).map(Partition::all).collect();
    let mut out = Vec::new();
    for k0 in 0..=r {
        for k1 in 0..=r - k0 {
            let k2 = r - k0 - k1;
            for b0 in &parts[k0 as usize] {
                for b1 in &parts[k1 as usize] {
                    for b2 in &parts[k2 as usize] {
                        out.push(Tripartition::new(b0.clone(), b1.clone(), b2.clone()));
                    }
                }
            }
        }
    }
    out
}

/// Multiset of lattice points `(n0, n1, n2)` with `n0 + n1 + n2 = n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagram(BTreeMap<[i64; 3], u32>);

impl Diagram {
    pub fn multiplicity(&self, p: [i64; 3]) -> u32 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    /// Size counted with multiplicity.
    pub fn len(&self) -> usize {
        self.0.values().map(|&m| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ([i64; 3], u32)> + '_ {
        self.0.iter().map(|(&p, &m)| (p, m))
    }
}

/// The `n`-th diagram: from corner `i` a slanted copy of the diagram of
/// `b^(i)`, placed at `(n_{i+1}, n_{i+2})`. Overlaps (for `n < r`) add up.
pub fn diagram(b: &Tripartition, n: i64) -> Diagram {
    let mut d = BTreeMap::new();
    for (i, part) in b.0.iter().enumerate() {
        for (row, col) in part.diagram() {
            let mut p = [0i64; 3];
            p[(i + 1) % 3] = row as i64;
            p[(i + 2) % 3] = col as i64;
            p[i] = n - row as i64 - col as i64;
            *d.entry(p).or_insert(0) += 1;
        }
    }
    Diagram(d)
}

fn character(p: [i64; 3]) -> Character {
    Character::new(&[p[0] as i32, p[1] as i32, p[2] as i32])
}

/// `E_n` at the fixpoint: sections of `O_Z(n)`.
pub fn rep_e(b: &Tripartition, n: i64) -> VirtualRep {
    let mut rep = VirtualRep::zero();
    for (p, m) in diagram(b, n).iter() {
        rep.add_term(character(p), m as i64);
    }
    rep
}

/// `L` at the fixpoint.
pub fn rep_l(b: &Tripartition) -> Character {
    let e: Vec<i32> = b.0.iter().map(|p| p.size() as i32).collect();
    Character::new(&e)
}

/// Degree-`k` forms in three variables.
fn symmetric_power(k: i64) -> VirtualRep {
    let mut rep = VirtualRep::zero();
    for a in 0..=k {
        for c in 0..=k - a {
            rep.add_term(character([a, c, k - a - c]), 1);
        }
    }
    rep
}

/// `H^0(I_Z(k)) = S_k V − E_k`, valid for `k >= r`.
fn ideal_sections(b: &Tripartition, k: i64) -> VirtualRep {
    symmetric_power(k).sub(&rep_e(b, k))
}

fn v_dual() -> VirtualRep {
    VirtualRep::from_characters((0..VARS).map(|i| Character::var(VARS, i).dual()))
}

fn v2_dual() -> VirtualRep {
    VirtualRep::from_characters([
        character([-1, -1, 0]),
        character([0, -1, -1]),
        character([-1, 0, -1]),
    ])
}

fn check_tangent(b: &Tripartition, t: VirtualRep) -> Result<VirtualRep> {
    let r = b.size() as i64;
    let label = b.to_string();
    if let Some((c, m)) = t.iter().find(|(_, m)| *m < 0) {
        return Err(Error::NegativeMultiplicity {
            character: c.to_string(),
            multiplicity: m,
        });
    }
    if t.has_trivial_character() {
        return Err(Error::TrivialCharacterPresent { label });
    }
    if t.dimension() != 2 * r {
        return Err(Error::TangentDimensionMismatch {
            label,
            expected: 2 * r as usize,
            found: t.dimension(),
        });
    }
    Ok(t)
}

fn check_auxiliary_degree(b: &Tripartition, k: i64) -> Result<()> {
    let r = b.size() as i64;
    if k < r + 2 {
        return Err(Error::InvalidQuery(format!("auxiliary degree {k} < r + 2 = {}", r + 2)));
    }
    Ok(())
}

/// Tangent representation using the resolution in auxiliary degree `k >= r + 2`:
///
/// `T = 1 − Σ_j End(I_j) + V^∨ (Hom(I_{k-1}, I_k) + Hom(I_{k-2}, I_{k-1})) − Λ²V^∨ Hom(I_{k-2}, I_k)`
///
/// with `I_j = S_j V − E_j`, expanded term by term.
pub fn tangent_rep_points_with_degree(b: &Tripartition, k: i64) -> Result<VirtualRep> {
    check_auxiliary_degree(b, k)?;
    let i0 = ideal_sections(b, k);
    let i1 = ideal_sections(b, k - 1);
    let i2 = ideal_sections(b, k - 2);

    let mut t = VirtualRep::one(VARS);
    for i in [&i0, &i1, &i2] {
        t.add_product(&i.dual(), i, -1);
    }
    let mut adjacent = VirtualRep::zero();
    adjacent.add_product(&i1.dual(), &i0, 1);
    adjacent.add_product(&i2.dual(), &i1, 1);
    t.add_product(&v_dual(), &adjacent, 1);
    t.add_product(&v2_dual(), &i2.dual().mul(&i0), -1);
    check_tangent(b, t)
}

/// Same formula with the part that does not involve `E` removed: that part is
/// the formula for the empty subscheme and vanishes identically. Writing
/// `Hom(I_a, I_b) = S_a^∨ S_b + h(a, b)` leaves only the `h` terms, which is
/// far cheaper for large `r`.
pub fn tangent_rep_points_reduced(b: &Tripartition, k: i64) -> Result<VirtualRep> {
    check_auxiliary_degree(b, k)?;
    let s: Vec<VirtualRep> = (0..3).map(|j| symmetric_power(k - j)).collect();
    let e: Vec<VirtualRep> = (0..3).map(|j| rep_e(b, k - j)).collect();
    let s_dual: Vec<VirtualRep> = s.iter().map(VirtualRep::dual).collect();
    let e_dual: Vec<VirtualRep> = e.iter().map(VirtualRep::dual).collect();
    // h(a, b) = −S_a^∨ E_b − E_a^∨ S_b + E_a^∨ E_b, indices counted down from k
    let h = |a: usize, b: usize, coeff: i64, into: &mut VirtualRep| {
        into.add_product(&s_dual[a], &e[b], -coeff);
        into.add_product(&e_dual[a], &s[b], -coeff);
        into.add_product(&e_dual[a], &e[b], coeff);
    };

    let mut t = VirtualRep::zero();
    for j in 0..3 {
        h(j, j, -1, &mut t);
    }
    let mut adjacent = VirtualRep::zero();
    h(1, 0, 1, &mut adjacent);
    h(2, 1, 1, &mut adjacent);
    t.add_product(&v_dual(), &adjacent, 1);
    let mut outer = VirtualRep::zero();
    h(2, 0, 1, &mut outer);
    t.add_product(&v2_dual(), &outer, -1);
    check_tangent(b, t)
}

/// Tangent representation at auxiliary degree `r + 2`.
pub fn tangent_rep_points(b: &Tripartition) -> Result<VirtualRep> {
    tangent_rep_points_reduced(b, b.size() as i64 + 2)
}

/// `∫_{Hilb^r} s_{2r}(E_n ⊗ L^m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegreQuery {
    pub r: u32,
    pub n: i64,
    pub m: i64,
}

/// Fixpoints of `Hilb^r(P^2)` with validated tangent weights.
#[derive(Debug, Clone)]
pub struct PreparedPoints {
    r: u32,
    weights: WeightVector,
    points: Vec<(Tripartition, WeightMultiset)>,
}

impl PreparedPoints {
    pub fn new(r: u32, w: &WeightVector) -> Result<Self> {
        Self::with_progress(r, w, &|_| {})
    }

    pub fn with_progress(r: u32, w: &WeightVector, progress: &(dyn Fn(usize) + Sync)) -> Result<Self> {
        check_weight_length(w, VARS)?;
        let points = enumerate_tripartitions(r)
            .into_par_iter()
            .enumerate()
            .map(|(i, b)| {
                let t = tangent_rep_points(&b)?;
                let ws = tangent_weights(&b.to_string(), &t, w)?;
                progress(i);
                Ok((b, ws))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PreparedPoints {
            r,
            weights: w.clone(),
            points,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn fixpoints(&self) -> impl Iterator<Item = &Tripartition> {
        self.points.iter().map(|(b, _)| b)
    }

    pub fn integrate_with<F>(&self, numerator: F) -> Result<LocalizationResult>
    where
        F: Fn(&Tripartition, &WeightMultiset) -> Result<BigRational> + Sync,
    {
        integrate_par(self.points.par_iter().map(|(b, ws)| {
            Ok(FixpointContribution::new(b.to_string(), numerator(b, ws)?, ws.clone()))
        }))
    }

    /// Weights of `E_n ⊗ L^m` at a fixpoint.
    pub fn twisted_weights(&self, b: &Tripartition, n: i64, m: i64) -> WeightMultiset {
        let w = self.weights.as_slice();
        let mut e: Vec<i64> = Vec::with_capacity(self.r as usize);
        for (p, mult) in diagram(b, n).iter() {
            let wt: i64 = (0..VARS).map(|i| p[i] * w[i]).sum();
            e.extend(std::iter::repeat_n(wt, mult as usize));
        }
        twist(&WeightMultiset::new(e), m * rep_l(b).weight(&self.weights))
    }

    pub fn segre_integral(&self, n: i64, m: i64) -> Result<LocalizationResult> {
        let top = 2 * self.r as usize;
        self.integrate_with(|b, _| {
            let s = segre_coefficients(&self.twisted_weights(b, n, m), top);
            Ok(BigRational::from_integer(s[top].clone()))
        })
    }

    pub fn euler_characteristic(&self) -> Result<LocalizationResult> {
        self.integrate_with(|_, ws| Ok(BigRational::from_integer(ws.product())))
    }
}

pub fn segre_integral(q: SegreQuery, w: &WeightVector) -> Result<BigInt> {
    PreparedPoints::new(q.r, w)?.segre_integral(q.n, q.m)?.into_integer()
}

pub fn check_powersum_r(r: u32) -> Result<()> {
    if !(2..=8).contains(&r) {
        return Err(Error::InvalidQuery(format!("power sums need 2 <= r <= 8, got r = {r}")));
    }
    Ok(())
}

/// Validity range of the power-sum formula: `2 <= r <= 8` and, unless
/// `force` is set, `n >= r - 1`.
pub fn check_powersum_range(r: u32, n: i64, force: bool) -> Result<()> {
    check_powersum_r(r)?;
    if n < r as i64 - 1 && !force {
        return Err(Error::OutOfValidityRange { r, n });
    }
    Ok(())
}

/// `p(r,n) · deg PS(r,n) = ∫ s_{2r}(E_n)`. Refuses `n < r − 1` unless `force`.
pub fn powersum_degree(r: u32, n: i64, force: bool, w: &WeightVector) -> Result<BigInt> {
    check_powersum_range(r, n, force)?;
    segre_integral(SegreQuery { r, n, m: 0 }, w)
}

/// `p(n) · deg D(n) = ∫_{Hilb^{n+1}} s_{2n+2}(E_{-1} ⊗ L)`.
pub fn darboux_degree(n: u32, w: &WeightVector) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::InvalidQuery("Darboux curves need n >= 1".into()));
    }
    darboux_degree_on(&PreparedPoints::new(n + 1, w)?)
}

/// Darboux degree for `n = r − 1` on an already prepared `Hilb^r`.
pub fn darboux_degree_on(prepared: &PreparedPoints) -> Result<BigInt> {
    if prepared.r() < 2 {
        return Err(Error::InvalidQuery("Darboux curves need n >= 1".into()));
    }
    prepared.segre_integral(-1, 1)?.into_integer()
}

/// Sample points `n = r, …, 3r` used for interpolation.
pub fn powersum_sample_points(r: u32) -> Vec<i64> {
    (r as i64..=3 * r as i64).collect()
}

/// `∫ s_{2r}(E_n)` as a polynomial in `n`, recovered by exact interpolation.
pub fn powersum_polynomial_on(prepared: &PreparedPoints) -> Result<Polynomial> {
    let pts = powersum_sample_points(prepared.r())
        .into_iter()
        .map(|n| {
            let v = prepared.segre_integral(n, 0)?.into_integer()?;
            Ok((BigRational::from_integer(n.into()), BigRational::from_integer(v)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::interpolate(&pts))
}

pub fn powersum_polynomial(r: u32, w: &WeightVector) -> Result<Polynomial> {
    check_powersum_r(r)?;
    powersum_polynomial_on(&PreparedPoints::new(r, w)?)
}

/// `∫ s_{2r}(E_n ⊗ L^m)` as a polynomial in `n` and `m`, from a
/// `(2r+1) × (2r+1)` grid with `n >= r`.
pub fn segre_bivariate_polynomial_on(prepared: &PreparedPoints) -> Result<BivariatePolynomial> {
    let r = prepared.r() as i64;
    let ns: Vec<i64> = (r..=3 * r).collect();
    let ms: Vec<i64> = (0..=2 * r).collect();
    let values = ns
        .iter()
        .map(|&n| {
            ms.iter()
                .map(|&m| Ok(BigRational::from_integer(prepared.segre_integral(n, m)?.into_integer()?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BivariatePolynomial::interpolate_grid(&ns, &ms, &values))
}

pub fn segre_bivariate_polynomial(r: u32, w: &WeightVector) -> Result<BivariatePolynomial> {
    segre_bivariate_polynomial_on(&PreparedPoints::new(r, w)?)
}
