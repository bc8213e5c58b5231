//! Twisted cubics in `P^n`.
//!
//! The parameter space `H_n` (dimension `4n`) fibres over the Grassmannian of
//! 3-spaces with fibre `H_3`. Torus fixpoints are curves cut out by monomial
//! ideals inside a coordinate 3-space; up to relabelling of the four span
//! variables there are eight of them. This module enumerates every fixpoint,
//! builds its tangent and section representations and evaluates
//! Gromov-Witten numbers by residue summation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::localize::{check_weight_length, integrate_par, tangent_weights, FixpointContribution, LocalizationResult};
use crate::repring::{elementary_symmetric_all, specialize, Character, VirtualRep, WeightMultiset, WeightVector};

type Monomial = [u8; 4];

/// The eight fixpoint types in `H_3`. The first four are Cohen-Macaulay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CubicType {
    /// Chain of three coordinate lines: `(x0x1, x1x2, x2x3)`.
    Chain = 1,
    /// Three concurrent lines: `(x0x1, x1x2, x0x2)`.
    Concurrent = 2,
    /// Planar double line plus a line: `(x0x1, x2^2, x0x2)`.
    DoubleLinePlusLine = 3,
    /// First-order neighbourhood of a line: `(x0^2, x0x1, x1^2)`.
    LineNeighbourhood = 4,
    /// Plane triangle with embedded point: cubic `x1x2x3`.
    Triangle = 5,
    /// Double line plus line through the embedded point: cubic `x1x2^2`.
    DoubleLineThroughPoint = 6,
    /// Double line plus line missing the embedded point: cubic `x2^2x3`.
    DoubleLineOffPoint = 7,
    /// Planar triple line: cubic `x2^3`.
    TripleLine = 8,
}

impl CubicType {
    pub const ALL: [CubicType; 8] = [
        CubicType::Chain,
        CubicType::Concurrent,
        CubicType::DoubleLinePlusLine,
        CubicType::LineNeighbourhood,
        CubicType::Triangle,
        CubicType::DoubleLineThroughPoint,
        CubicType::DoubleLineOffPoint,
        CubicType::TripleLine,
    ];

    /// Type number 1..=8.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_cohen_macaulay(self) -> bool {
        self.index() <= 4
    }

    /// Monomial generators in standard coordinates `x0..x3`.
    pub fn standard_generators(self) -> Vec<Monomial> {
        const NET: [Monomial; 3] = [[2, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0]];
        let with_cubic = |q: Monomial| {
            let mut g = NET.to_vec();
            g.push(q);
            g
        };
        match self {
            CubicType::Chain => vec![[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]],
            CubicType::Concurrent => vec![[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]],
            CubicType::DoubleLinePlusLine => vec![[1, 1, 0, 0], [0, 0, 2, 0], [1, 0, 1, 0]],
            CubicType::LineNeighbourhood => vec![[2, 0, 0, 0], [1, 1, 0, 0], [0, 2, 0, 0]],
            CubicType::Triangle => with_cubic([0, 1, 1, 1]),
            CubicType::DoubleLineThroughPoint => with_cubic([0, 1, 2, 0]),
            CubicType::DoubleLineOffPoint => with_cubic([0, 0, 2, 1]),
            CubicType::TripleLine => with_cubic([0, 0, 3, 0]),
        }
    }

    /// Tangent representation of `H_3` at the standard fixpoint of this type,
    /// over the four span characters.
    pub fn standard_tangent(self) -> VirtualRep {
        let m = |e: [i32; 4]| Character::new(&e);
        let span = VirtualRep::from_characters((0..4).map(|i| Character::var(4, i)));
        if self.is_cohen_macaulay() {
            let (e, f) = match self {
                CubicType::Chain => (
                    vec![m([1, 1, 0, 0]), m([0, 1, 1, 0]), m([0, 0, 1, 1])],
                    vec![m([1, 1, 1, 0]), m([0, 1, 1, 1])],
                ),
                CubicType::Concurrent => (
                    vec![m([1, 1, 0, 0]), m([0, 1, 1, 0]), m([1, 0, 1, 0])],
                    vec![m([1, 1, 1, 0]), m([1, 1, 1, 0])],
                ),
                CubicType::DoubleLinePlusLine => (
                    vec![m([1, 1, 0, 0]), m([0, 0, 2, 0]), m([1, 0, 1, 0])],
                    vec![m([1, 1, 1, 0]), m([1, 0, 2, 0])],
                ),
                _ => (
                    vec![m([2, 0, 0, 0]), m([1, 1, 0, 0]), m([0, 2, 0, 0])],
                    vec![m([1, 2, 0, 0]), m([2, 1, 0, 0])],
                ),
            };
            let e = VirtualRep::from_characters(e);
            let f = VirtualRep::from_characters(f);
            // Hom(F,E)⊗V − End(E) − End(F) + 1
            let mut t = f.hom(&e).mul(&span);
            t = t.sub(&e.hom(&e)).sub(&f.hom(&f));
            t.add(&VirtualRep::one(4))
        } else {
            let mu = match self {
                CubicType::Triangle => m([0, 1, 1, 1]),
                CubicType::DoubleLineThroughPoint => m([0, 1, 2, 0]),
                CubicType::DoubleLineOffPoint => m([0, 0, 2, 1]),
                _ => m([0, 0, 3, 0]),
            };
            // tangent space of the point-plane incidence variety
            let a = VirtualRep::from_characters([
                m([-1, 1, 0, 0]),
                m([-1, 0, 1, 0]),
                m([-1, 0, 0, 1]),
                m([0, -1, 0, 1]),
                m([0, 0, -1, 1]),
            ]);
            // cubic forms in (x1,x2)^2·C[x1,x2,x3]
            let b = VirtualRep::from_characters([
                m([0, 3, 0, 0]),
                m([0, 2, 1, 0]),
                m([0, 2, 0, 1]),
                m([0, 1, 2, 0]),
                m([0, 1, 1, 1]),
                m([0, 0, 3, 0]),
                m([0, 0, 2, 1]),
            ]);
            let mu_rep = VirtualRep::from_character(mu.clone());
            let fibre = VirtualRep::from_character(mu.dual()).mul(&b.sub(&mu_rep));
            let normal = VirtualRep::from_character(m([-1, -1, -1, 0]).mul(&mu));
            a.add(&fibre).add(&normal)
        }
    }
}

impl fmt::Display for CubicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A torus-fixed point of `H_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicFixpoint {
    /// Ambient indices of the invariant 3-space, increasing.
    pub span: [usize; 4],
    pub kind: CubicType,
    /// `assignment[j]` is the ambient index that standard variable `x_j` is sent to.
    pub assignment: [usize; 4],
    /// Sorted monomial generators, exponents indexed by position in `span`.
    pub generators: Vec<Monomial>,
}

impl fmt::Display for CubicFixpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.assignment;
        write!(f, "type{}[x{},x{},x{},x{}]", self.kind, a[0], a[1], a[2], a[3])
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&i| !std::mem::replace(&mut seen[i], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Distinct fixpoints of one type inside the standard `P^3`, as
/// `(permutation, sorted generators)` with the lexicographically least
/// permutation kept for each ideal.
fn orbit(kind: CubicType) -> Vec<([usize; 4], Vec<Monomial>)> {
    let std_gens = kind.standard_generators();
    let mut out: Vec<([usize; 4], Vec<Monomial>)> = Vec::new();
    for perm in permutations4() {
        let mut gens: Vec<Monomial> = std_gens
            .iter()
            .map(|g| {
                let mut h = [0u8; 4];
                for j in 0..4 {
                    h[perm[j]] = g[j];
                }
                h
            })
            .collect();
        gens.sort_unstable();
        if !out.iter().any(|(_, g)| *g == gens) {
            out.push((perm, gens));
        }
    }
    out
}

/// All torus fixpoints of `H_n`, in a deterministic order: by span, then
/// type, then representative permutation.
pub fn enumerate_fixpoints(n: usize) -> Vec<CubicFixpoint> {
    assert!(n >= 3, "twisted cubics need n >= 3");
    let orbits: Vec<_> = CubicType::ALL.iter().map(|&k| (k, orbit(k))).collect();
    let mut out = Vec::new();
    for span in combinations(n + 1, 4) {
        let span = [span[0], span[1], span[2], span[3]];
        for (kind, orbit) in &orbits {
            for (perm, gens) in orbit {
                out.push(CubicFixpoint {
                    span,
                    kind: *kind,
                    assignment: [span[perm[0]], span[perm[1]], span[perm[2]], span[perm[3]]],
                    generators: gens.clone(),
                });
            }
        }
    }
    out
}

/// Number of fixpoints, `130·C(n+1, 4)`.
pub fn fixpoint_count(n: usize) -> usize {
    let m = n + 1;
    130 * m * (m - 1) * (m - 2) * (m - 3) / 24
}

fn divides(g: &Monomial, m: &Monomial) -> bool {
    g.iter().zip(m.iter()).all(|(a, b)| a <= b)
}

fn monomials_of_degree(d: u32) -> Vec<Monomial> {
    let d = d as u8;
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push([a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

impl CubicFixpoint {
    fn route(&self, c: &Character, var_count: usize) -> Character {
        let mut e = vec![0i32; var_count];
        for (j, &p) in c.exponents().iter().enumerate() {
            e[self.assignment[j]] += p;
        }
        Character::new(&e)
    }

    /// Degree-`d` sections on the curve, i.e. standard monomials of degree `d`.
    pub fn sections_rep(&self, d: u32, n: usize) -> Result<VirtualRep> {
        let mut rep = VirtualRep::zero();
        let mut count = 0;
        for m in monomials_of_degree(d) {
            if self.generators.iter().any(|g| divides(g, &m)) {
                continue;
            }
            count += 1;
            let mut e = vec![0i32; n + 1];
            for (pos, &p) in m.iter().enumerate() {
                e[self.span[pos]] += p as i32;
            }
            rep.add_term(Character::new(&e), 1);
        }
        let expected = 3 * d as usize + 1;
        if count != expected {
            return Err(Error::RankMismatch {
                label: self.to_string(),
                degree: d,
                expected,
                found: count,
            });
        }
        Ok(rep)
    }

    /// Tangent representation of `H_n` at this fixpoint.
    pub fn tangent_rep(&self, n: usize) -> Result<VirtualRep> {
        let var_count = n + 1;
        let mut t = self.kind.standard_tangent().map_characters(|c| self.route(c, var_count));
        for &j in &self.span {
            for i in (0..var_count).filter(|i| !self.span.contains(i)) {
                let mut e = vec![0i32; var_count];
                e[j] += 1;
                e[i] -= 1;
                t.add_term(Character::new(&e), 1);
            }
        }
        if let Some((c, m)) = t.iter().find(|(_, m)| *m < 0) {
            return Err(Error::NegativeMultiplicity {
                character: c.to_string(),
                multiplicity: m,
            });
        }
        if t.has_trivial_character() {
            return Err(Error::TrivialCharacterPresent { label: self.to_string() });
        }
        if t.dimension() != 4 * n as i64 {
            return Err(Error::TangentDimensionMismatch {
                label: self.to_string(),
                expected: 4 * n,
                found: t.dimension(),
            });
        }
        Ok(t)
    }
}

/// Chern data `c_i(E_1), …, c_i(E_4)` at a fixpoint, as localized values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaInputs {
    /// `chern[k][i]` is `σ_i(E_{k+1})`.
    pub chern: [Vec<BigInt>; 4],
}

impl GammaInputs {
    pub fn at(x: &CubicFixpoint, n: usize, w: &WeightVector) -> Result<Self> {
        let sigma = |d: u32| -> Result<Vec<BigInt>> {
            Ok(elementary_symmetric_all(&specialize(&x.sections_rep(d, n)?, w)?))
        };
        Ok(GammaInputs {
            chern: [sigma(1)?, sigma(2)?, sigma(3)?, sigma(4)?],
        })
    }

    fn get(&self, bundle: usize, degree: usize) -> BigInt {
        self.chern[bundle].get(degree).cloned().unwrap_or_default()
    }
}

/// A polynomial in the Chern classes `a_i, b_i, c_i, d_i` of `E_1..E_4`.
struct ChernPolynomial {
    /// (coefficient, factors as (bundle 0..4, degree))
    terms: Vec<(i64, Vec<(usize, usize)>)>,
}

impl ChernPolynomial {
    /// Parses e.g. `"3a1^2-9a1b1+a2"`.
    fn parse(src: &str) -> Self {
        let mut terms = Vec::new();
        let bytes: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if i > start {
                bytes[start..i].iter().collect::<String>().parse().unwrap()
            } else {
                1
            };
            let mut factors = Vec::new();
            while i < bytes.len() && bytes[i].is_ascii_lowercase() {
                let bundle = (bytes[i] as u8 - b'a') as usize;
                let degree = bytes[i + 1].to_digit(10).unwrap() as usize;
                i += 2;
                let mut power = 1;
                if i < bytes.len() && bytes[i] == '^' {
                    power = bytes[i + 1].to_digit(10).unwrap() as usize;
                    i += 2;
                }
                for _ in 0..power {
                    factors.push((bundle, degree));
                }
            }
            terms.push((sign * coeff, factors));
        }
        ChernPolynomial { terms }
    }

    fn eval(&self, inputs: &GammaInputs) -> BigInt {
        let mut total = BigInt::zero();
        for (coeff, factors) in &self.terms {
            let mut t = BigInt::from(*coeff);
            for &(b, d) in factors {
                t *= inputs.get(b, d);
            }
            total += t;
        }
        total
    }
}

const GAMMA_1: &str = "5a1-14b1+13c1-4d1";
const GAMMA_2: &str = "3a1^2-9a1b1+9a1c1-3a1d1-3b1^2+9b1c1-3b1d1-6c1^2+3c1d1+a2-3b2+3c2-d2";
const GAMMA_3: &str = "3a1^3-9a1^2b1+9a1^2c1-3a1^2d1-3a1b1^2+9a1b1c1-3a1b1d1-6a1c1^2+3a1c1d1\
    -4a1a2-3a1b2+3a1c2-a1d2+14a2b1-13a2c1+4a2d1+3a3";
const GAMMA_4: &str = "3a1^4-9a1^3b1+9a1^3c1-3a1^3d1-3a1^2b1^2+9a1^2b1c1-3a1^2b1d1-6a1^2c1^2\
    +3a1^2c1d1-7a1^2a2-3a1^2b2+3a1^2c2-a1^2d2+23a1a2b1-22a1a2c1+7a1a2d1+3a2b1^2-9a2b1c1\
    +3a2b1d1+6a2c1^2-3a2c1d1+8a1a3-a2^2+3a2b2-3a2c2+a2d2-14a3b1+13a3c1-4a3d1-3a4";

/// The incidence class `γ_c` evaluated on localized Chern data.
pub fn gamma_from_inputs(c: u32, inputs: &GammaInputs) -> Result<BigInt> {
    let src = match c {
        0 => return Ok(BigInt::from(3)),
        1 => GAMMA_1,
        2 => GAMMA_2,
        3 => GAMMA_3,
        4 => GAMMA_4,
        _ => return Err(Error::UnsupportedGammaDegree(c)),
    };
    Ok(ChernPolynomial::parse(src).eval(inputs))
}

pub fn gamma_value(x: &CubicFixpoint, c: u32, n: usize, w: &WeightVector) -> Result<BigRational> {
    if c > 4 {
        return Err(Error::UnsupportedGammaDegree(c));
    }
    let inputs = GammaInputs::at(x, n, w)?;
    Ok(BigRational::from_integer(gamma_from_inputs(c, &inputs)?))
}

/// Twisted cubics on a complete intersection of the given degrees in `P^n`
/// meeting general linear spaces of codimensions `λ_j + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWQuery {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub partition: Vec<u32>,
}

impl GWQuery {
    pub fn new(n: usize, degrees: Vec<u32>, mut partition: Vec<u32>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidQuery(format!("n = {n}, need n >= 3")));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidQuery("hypersurface degrees must be >= 1".into()));
        }
        if partition.contains(&0) {
            return Err(Error::InvalidQuery("partition parts must be positive".into()));
        }
        if let Some(&p) = partition.iter().find(|&&p| p > 4) {
            return Err(Error::UnsupportedGammaDegree(p));
        }
        partition.sort_unstable_by(|a, b| b.cmp(a));
        let bundle_rank: u64 = degrees.iter().map(|&d| 3 * d as u64 + 1).sum();
        let weight: u64 = partition.iter().map(|&p| p as u64).sum();
        let dim = 4 * n as u64;
        if bundle_rank + weight != dim {
            return Err(Error::InvalidQuery(format!(
                "degree sum mismatch: dim H_n = 4n = {dim}, but sum(3d_i+1) + |lambda| = {bundle_rank} + {weight} = {}",
                bundle_rank + weight
            )));
        }
        Ok(GWQuery { n, degrees, partition })
    }

    /// Hypersurface of degree `n+1` in `P^n` with the given partition of `n-4`.
    pub fn calabi_yau_hypersurface(n: usize, partition: Vec<u32>) -> Result<Self> {
        Self::new(n, vec![n as u32 + 1], partition)
    }
}

/// Fixpoints of `H_n` with validated tangent weights for one weight vector.
#[derive(Debug, Clone)]
pub struct PreparedCubics {
    n: usize,
    weights: WeightVector,
    points: Vec<(CubicFixpoint, WeightMultiset)>,
}

impl PreparedCubics {
    pub fn new(n: usize, w: &WeightVector) -> Result<Self> {
        Self::with_progress(n, w, &|_| {})
    }

    /// As [`PreparedCubics::new`], reporting each processed fixpoint.
    pub fn with_progress(n: usize, w: &WeightVector, progress: &(dyn Fn(usize) + Sync)) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidQuery(format!("n = {n}, need n >= 3")));
        }
        check_weight_length(w, n + 1)?;
        let points = enumerate_fixpoints(n)
            .into_par_iter()
            .enumerate()
            .map(|(i, x)| {
                let t = x.tangent_rep(n)?;
                let ws = tangent_weights(&x.to_string(), &t, w)?;
                progress(i);
                Ok((x, ws))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PreparedCubics {
            n,
            weights: w.clone(),
            points,
        })
    }

    pub fn n(&self) -> usize {
        self.n
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

    pub fn fixpoints(&self) -> impl Iterator<Item = &CubicFixpoint> {
        self.points.iter().map(|(x, _)| x)
    }

    /// Residue sum of an arbitrary numerator function.
    pub fn integrate_with<F>(&self, numerator: F) -> Result<LocalizationResult>
    where
        F: Fn(&CubicFixpoint, &WeightMultiset) -> Result<BigRational> + Sync,
    {
        integrate_par(self.points.par_iter().map(|(x, ws)| {
            Ok(FixpointContribution::new(x.to_string(), numerator(x, ws)?, ws.clone()))
        }))
    }

    /// Value of `c_top(⊕ E_{d_i}) · Π γ_{λ_j}` at one fixpoint.
    pub fn gw_numerator(&self, x: &CubicFixpoint, q: &GWQuery) -> Result<BigInt> {
        let mut value = BigInt::one();
        for &d in &q.degrees {
            let ws = specialize(&x.sections_rep(d, self.n)?, &self.weights)?;
            value *= ws.product();
        }
        if !q.partition.is_empty() {
            let inputs = GammaInputs::at(x, self.n, &self.weights)?;
            for &c in &q.partition {
                value *= gamma_from_inputs(c, &inputs)?;
            }
        }
        Ok(value)
    }

    pub fn gw_integral(&self, q: &GWQuery) -> Result<LocalizationResult> {
        if q.n != self.n {
            return Err(Error::InvalidQuery(format!("query is for n = {}, space has n = {}", q.n, self.n)));
        }
        self.integrate_with(|x, _| Ok(BigRational::from_integer(self.gw_numerator(x, q)?)))
    }

    pub fn gw_number(&self, q: &GWQuery) -> Result<BigInt> {
        self.gw_integral(q)?.into_integer()
    }

    /// Residue sum of `σ_top(T)`, i.e. the topological Euler characteristic.
    pub fn euler_characteristic(&self) -> Result<LocalizationResult> {
        self.integrate_with(|_, ws| Ok(BigRational::from_integer(ws.product())))
    }
}

pub fn gw_number(q: &GWQuery, w: &WeightVector) -> Result<BigInt> {
    PreparedCubics::new(q.n, w)?.gw_number(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localize::default_weight_vector;

    fn w4() -> WeightVector {
        default_weight_vector(4, 0)
    }

    #[test]
    fn per_type_counts_in_p3() {
        let fps = enumerate_fixpoints(3);
        assert_eq!(fps.len(), 130);
        let counts: Vec<usize> = CubicType::ALL
            .iter()
            .map(|k| fps.iter().filter(|x| x.kind == *k).count())
            .collect();
        assert_eq!(counts, vec![12, 4, 24, 6, 12, 24, 24, 24]);
    }

    #[test]
    fn counts_in_higher_space() {
        assert_eq!(enumerate_fixpoints(4).len(), 650);
        assert_eq!(fixpoint_count(4), 650);
        assert_eq!(fixpoint_count(8), 16380);
    }

    #[test]
    fn generator_shapes() {
        for k in CubicType::ALL {
            let g = k.standard_generators();
            let quadrics = g.iter().filter(|m| m.iter().sum::<u8>() == 2).count();
            let cubics = g.iter().filter(|m| m.iter().sum::<u8>() == 3).count();
            assert_eq!(quadrics, 3);
            assert_eq!(cubics, if k.is_cohen_macaulay() { 0 } else { 1 });
        }
    }

    #[test]
    fn sections_of_chain() {
        let x = enumerate_fixpoints(3)
            .into_iter()
            .find(|x| x.kind == CubicType::Chain && x.assignment == [0, 1, 2, 3])
            .unwrap();
        let s1 = x.sections_rep(1, 3).unwrap();
        let span = VirtualRep::from_characters((0..4).map(|i| Character::var(4, i)));
        assert_eq!(s1, span);
        let s2 = x.sections_rep(2, 3).unwrap();
        assert_eq!(s2.dimension(), 7);
        assert_eq!(s2.multiplicity(&Character::new(&[1, 1, 0, 0])), 0);
        assert_eq!(s2.multiplicity(&Character::new(&[1, 0, 0, 1])), 1);
    }

    #[test]
    fn section_ranks() {
        for x in enumerate_fixpoints(3) {
            for d in 1..=9 {
                assert_eq!(x.sections_rep(d, 3).unwrap().dimension(), 3 * d as i64 + 1);
            }
        }
    }

    #[test]
    fn standard_tangents_are_honest() {
        for k in CubicType::ALL {
            let t = k.standard_tangent();
            assert_eq!(t.dimension(), 12, "type {k}");
            assert!(t.is_honest(), "type {k}: {t}");
            assert!(!t.has_trivial_character(), "type {k}");
        }
    }

    #[test]
    fn concurrent_hom_has_doubled_terms() {
        let e = VirtualRep::from_characters([
            Character::new(&[1, 1, 0, 0]),
            Character::new(&[0, 1, 1, 0]),
            Character::new(&[1, 0, 1, 0]),
        ]);
        let f = VirtualRep::from_character(Character::new(&[1, 1, 1, 0])).scale(2);
        let span = VirtualRep::from_characters((0..4).map(|i| Character::var(4, i)));
        let h = f.hom(&e).mul(&span);
        assert!(h.iter().all(|(_, m)| m >= 2));
    }

    #[test]
    fn tangent_reps_in_p4() {
        for x in enumerate_fixpoints(4) {
            let t = x.tangent_rep(4).unwrap();
            assert_eq!(t.dimension(), 16);
        }
    }

    #[test]
    fn stabilizer_consistency() {
        // every permutation yielding the same ideal yields the same tangent rep
        for kind in CubicType::ALL {
            let std_gens = kind.standard_generators();
            let mut by_ideal: Vec<(Vec<Monomial>, VirtualRep)> = Vec::new();
            for perm in permutations4() {
                let mut gens: Vec<Monomial> = std_gens
                    .iter()
                    .map(|g| {
                        let mut h = [0u8; 4];
                        for j in 0..4 {
                            h[perm[j]] = g[j];
                        }
                        h
                    })
                    .collect();
                gens.sort_unstable();
                let x = CubicFixpoint {
                    span: [0, 1, 2, 3],
                    kind,
                    assignment: perm,
                    generators: gens.clone(),
                };
                let t = x.tangent_rep(3).unwrap();
                match by_ideal.iter().find(|(g, _)| *g == gens) {
                    Some((_, t0)) => assert_eq!(*t0, t, "type {kind} perm {perm:?}"),
                    None => by_ideal.push((gens, t)),
                }
            }
        }
    }

    #[test]
    fn gamma_zero_is_three() {
        let x = &enumerate_fixpoints(3)[0];
        let w = w4();
        assert_eq!(gamma_value(x, 0, 3, &w).unwrap(), BigRational::from_integer(BigInt::from(3)));
        assert!(matches!(gamma_value(x, 5, 3, &w), Err(Error::UnsupportedGammaDegree(5))));
    }

    #[test]
    fn gamma_one_at_a_fixpoint() {
        let w = w4();
        for x in enumerate_fixpoints(3).iter().step_by(17) {
            let s1 = |d| -> BigInt {
                specialize(&x.sections_rep(d, 3).unwrap(), &w)
                    .unwrap()
                    .as_slice()
                    .iter()
                    .sum::<i64>()
                    .into()
            };
            let expected = 5 * s1(1) - 14 * s1(2) + 13 * s1(3) - 4 * s1(4);
            assert_eq!(gamma_value(x, 1, 3, &w).unwrap().to_integer(), expected);
        }
    }

    /// `γ_c` pushed forward from the class of the universal curve inside the
    /// projectivized span bundle, using complete symmetric functions of `E_1`.
    fn gamma_via_universal_curve(c: usize, inp: &GammaInputs) -> BigInt {
        let g = |b: usize, d: usize| inp.get(b, d);
        let (a1, a2) = (g(0, 1), g(0, 2));
        let (b1, b2) = (g(1, 1), g(1, 2));
        let (c1, c2) = (g(2, 1), g(2, 2));
        let (d1, d2) = (g(3, 1), g(3, 2));
        let lin = -4 * &d1 + 2 * &a1 - 14 * &b1 + 13 * &c1;
        let quad = 3 * &c1 * &d1 + 4 * &a2 - 3 * &b2 + 3 * &c2 - &d2 - 2 * &a1 * &a1 + 5 * &a1 * &b1
            - 4 * &a1 * &c1
            + &a1 * &d1
            - 3 * &b1 * &b1
            + 9 * &b1 * &c1
            - 3 * &b1 * &d1
            - 6 * &c1 * &c1;
        // h_k from Σ h_k z^k · (1 − a1 z + a2 z² − a3 z³ + a4 z⁴) = 1
        let mut h = vec![BigInt::one()];
        for k in 1..=c {
            let mut v = BigInt::zero();
            for i in 1..=k.min(4) {
                let term = g(0, i) * &h[k - i];
                if i % 2 == 1 {
                    v += term;
                } else {
                    v -= term;
                }
            }
            h.push(v);
        }
        let hk = |k: isize| if k < 0 { BigInt::zero() } else { h[k as usize].clone() };
        let c = c as isize;
        3 * hk(c) + lin * hk(c - 1) + quad * hk(c - 2)
    }

    #[test]
    fn gamma_polynomials_match_universal_curve_pushforward() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut chern: [Vec<BigInt>; 4] = Default::default();
            for (k, v) in chern.iter_mut().enumerate() {
                let rank = 3 * (k + 1) + 1;
                *v = (0..=rank)
                    .map(|i| if i == 0 { BigInt::one() } else { BigInt::from(rng.gen_range(-40i64..40)) })
                    .collect();
            }
            let inp = GammaInputs { chern };
            for c in 0..=4u32 {
                assert_eq!(gamma_from_inputs(c, &inp).unwrap(), gamma_via_universal_curve(c as usize, &inp), "c = {c}");
            }
        }
    }

    #[test]
    fn query_validation() {
        assert!(GWQuery::new(4, vec![5], vec![]).is_ok());
        assert!(matches!(GWQuery::new(4, vec![4], vec![]), Err(Error::InvalidQuery(_))));
        assert!(matches!(GWQuery::new(5, vec![5], vec![5]), Err(Error::UnsupportedGammaDegree(5))));
        let q = GWQuery::new(6, vec![7], vec![1, 1]).unwrap();
        assert_eq!(q.partition, vec![1, 1]);
        let q = GWQuery::new(8, vec![9], vec![1, 3]).unwrap();
        assert_eq!(q.partition, vec![3, 1]);
    }

    #[test]
    fn euler_characteristic_of_h3() {
        let p = PreparedCubics::new(3, &w4()).unwrap();
        let e = p.euler_characteristic().unwrap();
        assert_eq!(e.value, BigRational::from_integer(BigInt::from(130)));
    }

    #[test]
    fn quintic_threefold() {
        let q = GWQuery::new(4, vec![5], vec![]).unwrap();
        assert_eq!(gw_number(&q, &default_weight_vector(5, 0)).unwrap(), BigInt::from(317206375u64));
    }
}
