//! Exact residue summation over isolated torus fixpoints.
//!
//! Given, at every fixpoint `x`, a numerator `f(x)` representing a
//! top-degree class and the tangent weights at `x`, the degree of the class is
//! `Σ_x f(x) / σ_top(T, x)`. Everything here is exact; the sum is reduced in
//! parallel and the result does not depend on summation order.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::repring::{specialize, VirtualRep, WeightMultiset, WeightVector};

/// Weights used for twisted cubics in `P^n`, `n <= 8`.
pub const CUBIC_WEIGHTS: [i64; 9] = [4, 11, 17, 32, 55, 95, 160, 267, 441];

/// Weights used for points in the plane.
pub const PLANE_WEIGHTS: [i64; 3] = [0, 1, 19];

pub const DEFAULT_SEED: u64 = 0x5eed_b077;

pub const DEFAULT_RETRY_BUDGET: u32 = 16;

/// Contribution of one fixpoint to a residue sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointContribution {
    pub label: String,
    pub numerator: BigRational,
    pub tangent_weights: WeightMultiset,
}

impl FixpointContribution {
    pub fn new(label: impl Into<String>, numerator: BigRational, tangent_weights: WeightMultiset) -> Self {
        FixpointContribution {
            label: label.into(),
            numerator,
            tangent_weights,
        }
    }

    pub fn from_integer(label: impl Into<String>, numerator: BigInt, tangent_weights: WeightMultiset) -> Self {
        Self::new(label, BigRational::from_integer(numerator), tangent_weights)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationResult {
    pub value: BigRational,
    pub fixpoint_count: usize,
}

impl LocalizationResult {
    pub fn is_integral(&self) -> bool {
        self.value.is_integer()
    }

    /// The value as an integer, or [`Error::NonIntegralResult`].
    pub fn into_integer(self) -> Result<BigInt> {
        if self.value.is_integer() {
            Ok(self.value.to_integer())
        } else {
            Err(Error::NonIntegralResult {
                value: self.value.to_string(),
            })
        }
    }
}

impl fmt::Display for LocalizationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} fixpoints)", self.value, self.fixpoint_count)
    }
}

/// Specializes a tangent representation, rejecting zero weights.
pub fn tangent_weights(label: &str, tangent: &VirtualRep, w: &WeightVector) -> Result<WeightMultiset> {
    let ws = specialize(tangent, w)?;
    if ws.contains_zero() {
        return Err(Error::ZeroTangentWeight {
            label: label.to_string(),
        });
    }
    Ok(ws)
}

/// Checks that no tangent weight specializes to zero. On failure returns the
/// labels of every offending fixpoint.
pub fn validate_weights<I>(fixpoints: I, w: &WeightVector) -> std::result::Result<(), Vec<String>>
where
    I: IntoIterator<Item = (String, VirtualRep)>,
{
    let offending: Vec<String> = fixpoints
        .into_iter()
        .filter(|(label, rep)| tangent_weights(label, rep, w).is_err())
        .map(|(label, _)| label)
        .collect();
    if offending.is_empty() {
        Ok(())
    } else {
        Err(offending)
    }
}

#[derive(Debug, Clone)]
struct PartialSum {
    sum: BigRational,
    count: usize,
    dimension: Option<(usize, String)>,
}

impl PartialSum {
    fn empty() -> Self {
        PartialSum {
            sum: BigRational::zero(),
            count: 0,
            dimension: None,
        }
    }

    fn push(mut self, c: FixpointContribution) -> Result<Self> {
        let dim = c.tangent_weights.len();
        match &self.dimension {
            None => self.dimension = Some((dim, c.label.clone())),
            Some((expected, _)) if *expected != dim => {
                return Err(Error::TangentDimensionMismatch {
                    label: c.label,
                    expected: *expected,
                    found: dim as i64,
                })
            }
            Some(_) => {}
        }
        if c.tangent_weights.contains_zero() {
            return Err(Error::ZeroTangentWeight { label: c.label });
        }
        self.count += 1;
        if !c.numerator.is_zero() {
            self.sum += c.numerator / BigRational::from_integer(c.tangent_weights.product());
        }
        Ok(self)
    }

    fn merge(mut self, other: PartialSum) -> Result<Self> {
        match (&self.dimension, other.dimension) {
            (Some((a, _)), Some((b, label))) if *a != b => {
                return Err(Error::TangentDimensionMismatch {
                    label,
                    expected: *a,
                    found: b as i64,
                })
            }
            (None, d) => self.dimension = d,
            _ => {}
        }
        self.sum += other.sum;
        self.count += other.count;
        Ok(self)
    }

    fn finish(self) -> LocalizationResult {
        LocalizationResult {
            value: self.sum,
            fixpoint_count: self.count,
        }
    }
}

/// `Σ numerator(x) / Π tangent_weights(x)` over a stream of contributions.
pub fn integrate<I>(contribs: I) -> Result<LocalizationResult>
where
    I: IntoIterator<Item = FixpointContribution>,
{
    contribs
        .into_iter()
        .try_fold(PartialSum::empty(), PartialSum::push)
        .map(PartialSum::finish)
}

/// Parallel version of [`integrate`]: per-worker partial sums followed by an
/// exact merge. Errors from producing a contribution are propagated.
pub fn integrate_par<I>(contribs: I) -> Result<LocalizationResult>
where
    I: ParallelIterator<Item = Result<FixpointContribution>>,
{
    contribs
        .try_fold(PartialSum::empty, |acc, c| acc.push(c?))
        .try_reduce(PartialSum::empty, PartialSum::merge)
        .map(PartialSum::finish)
}

/// Weight vector for `var_count` torus variables.
///
/// Attempt 0 gives the standard choices (`0,1,19` for the plane, otherwise a
/// prefix of [`CUBIC_WEIGHTS`]); later attempts are pseudorandom vectors with
/// distinct entries drawn from a fixed seed.
pub fn default_weight_vector(var_count: usize, attempt: u32) -> WeightVector {
    weight_vector_with_seed(var_count, attempt, DEFAULT_SEED)
}

pub fn weight_vector_with_seed(var_count: usize, attempt: u32, seed: u64) -> WeightVector {
    assert!(var_count >= 1, "at least one torus variable");
    if attempt == 0 {
        if var_count == PLANE_WEIGHTS.len() {
            return WeightVector::new(PLANE_WEIGHTS.to_vec());
        }
        if var_count <= CUBIC_WEIGHTS.len() {
            return WeightVector::new(CUBIC_WEIGHTS[..var_count].to_vec());
        }
        let mut w = CUBIC_WEIGHTS.to_vec();
        let tail = random_distinct(var_count, seed, 0);
        for x in tail {
            if w.len() == var_count {
                break;
            }
            if !w.contains(&x) {
                w.push(x);
            }
        }
        return WeightVector::new(w);
    }
    WeightVector::new(random_distinct(var_count, seed, attempt))
}

fn random_distinct(count: usize, seed: u64, attempt: u32) -> Vec<i64> {
    const SPAN: usize = 20_000;
    let mixed = seed ^ (attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let mut rng = ChaCha8Rng::seed_from_u64(mixed);
    sample(&mut rng, SPAN, count.min(SPAN))
        .into_iter()
        .map(|i| i as i64 - (SPAN as i64 / 2))
        .collect()
}

/// Runs `f` with successive weight vectors until it stops reporting a zero
/// tangent weight, up to `budget` attempts. Returns the result and the vector
/// that produced it.
pub fn with_weight_retry<T, F>(var_count: usize, seed: u64, budget: u32, mut f: F) -> Result<(T, WeightVector)>
where
    F: FnMut(&WeightVector) -> Result<T>,
{
    for attempt in 0..budget {
        let w = weight_vector_with_seed(var_count, attempt, seed);
        match f(&w) {
            Ok(v) => return Ok((v, w)),
            Err(Error::ZeroTangentWeight { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryBudgetExhausted { attempts: budget })
}

pub fn check_weight_length(w: &WeightVector, var_count: usize) -> Result<()> {
    if w.len() != var_count {
        return Err(Error::WeightLength {
            expected: var_count,
            found: w.len(),
        });
    }
    Ok(())
}



#[cfg(test)]
mod tests {
    use super::*;
    use crate::repring::Character;
    use num_traits::One;
    use proptest::prelude::*;

    /// Tangent representation of `P^2` at coordinate point `i`: `Σ_{j≠i} λ_j/λ_i`.
    fn p2_tangent(i: usize) -> VirtualRep {
        let mut r = VirtualRep::zero();
        for j in 0..3 {
            if j != i {
                let mut e = [0i32; 3];
                e[j] += 1;
                e[i] -= 1;
                r.add_term(Character::new(&e), 1);
            }
        }
        r
    }

    fn p2_fixpoints() -> Vec<(String, VirtualRep)> {
        (0..3).map(|i| (format!("p{i}"), p2_tangent(i))).collect()
    }

    #[test]
    fn plane_weights_are_valid() {
        assert!(validate_weights(p2_fixpoints(), &WeightVector::new(vec![0, 1, 19])).is_ok());
    }

    #[test]
    fn repeated_weight_is_rejected() {
        let bad = validate_weights(p2_fixpoints(), &WeightVector::new(vec![0, 0, 1])).unwrap_err();
        assert_eq!(bad, vec!["p0".to_string(), "p1".to_string()]);
    }

    #[test]
    fn hyperplane_squared_on_plane() {
        let w = WeightVector::new(vec![0, 1, 3]);
        let contribs = (0..3).map(|i| {
            let wi = w.as_slice()[i];
            FixpointContribution::from_integer(
                format!("p{i}"),
                BigInt::from(wi * wi),
                tangent_weights("p", &p2_tangent(i), &w).unwrap(),
            )
        });
        let res = integrate(contribs).unwrap();
        assert_eq!(res.value, BigRational::one());
        assert_eq!(res.fixpoint_count, 3);
        assert!(res.is_integral());
    }

    #[test]
    fn degree_deficient_numerator_vanishes() {
        // σ_1 of O(1) is a degree-1 class on a surface
        let w = WeightVector::new(vec![2, 7, 13]);
        let contribs: Vec<_> = (0..3)
            .map(|i| {
                FixpointContribution::from_integer(
                    format!("p{i}"),
                    BigInt::from(w.as_slice()[i]),
                    tangent_weights("p", &p2_tangent(i), &w).unwrap(),
                )
            })
            .collect();
        assert!(integrate(contribs).unwrap().value.is_zero());
    }

    #[test]
    fn zero_weight_in_contribution_is_an_error() {
        let c = FixpointContribution::from_integer("x", BigInt::one(), WeightMultiset::new(vec![0, 3]));
        assert!(matches!(integrate([c]), Err(Error::ZeroTangentWeight { .. })));
    }

    #[test]
    fn mixed_dimensions_are_an_error() {
        let a = FixpointContribution::from_integer("a", BigInt::one(), WeightMultiset::new(vec![1, 3]));
        let b = FixpointContribution::from_integer("b", BigInt::one(), WeightMultiset::new(vec![2]));
        assert!(matches!(integrate([a, b]), Err(Error::TangentDimensionMismatch { .. })));
    }

    #[test]
    fn default_vectors() {
        assert_eq!(default_weight_vector(9, 0).as_slice(), &CUBIC_WEIGHTS);
        assert_eq!(default_weight_vector(3, 0).as_slice(), &[0, 1, 19]);
        assert_eq!(default_weight_vector(5, 0).as_slice(), &[4, 11, 17, 32, 55]);
        let w = default_weight_vector(3, 1);
        let mut v = w.as_slice().to_vec();
        v.dedup();
        assert_eq!(v.len(), 3);
        assert_eq!(default_weight_vector(3, 1), default_weight_vector(3, 1));
        assert_ne!(weight_vector_with_seed(4, 1, 1), weight_vector_with_seed(4, 1, 2));
    }

    #[test]
    fn extended_default_vector_is_distinct() {
        let w = default_weight_vector(14, 0);
        assert_eq!(&w.as_slice()[..9], &CUBIC_WEIGHTS);
        let mut v = w.as_slice().to_vec();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 14);
    }

    #[test]
    fn retry_moves_past_bad_vectors() {
        let mut seen = 0;
        let (v, w) = with_weight_retry(3, DEFAULT_SEED, 4, |w| {
            seen += 1;
            if seen < 3 {
                Err(Error::ZeroTangentWeight { label: "x".into() })
            } else {
                Ok(w.len())
            }
        })
        .unwrap();
        assert_eq!(v, 3);
        assert_eq!(w, default_weight_vector(3, 2));
        let err = with_weight_retry(3, DEFAULT_SEED, 2, |_| -> Result<()> {
            Err(Error::ZeroTangentWeight { label: "x".into() })
        });
        assert_eq!(err, Err(Error::RetryBudgetExhausted { attempts: 2 }));
    }

    fn arb_contribs() -> impl Strategy<Value = Vec<FixpointContribution>> {
        prop::collection::vec(
            (-50i64..50, prop::collection::vec(prop_oneof![-9i64..-1, 1i64..9], 3)),
            1..20,
        )
        .prop_map(|v| {
            v.into_iter()
                .enumerate()
                .map(|(i, (n, w))| FixpointContribution::from_integer(format!("x{i}"), BigInt::from(n), WeightMultiset::new(w)))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn order_independent(contribs in arb_contribs(), seed in any::<u64>()) {
            let a = integrate(contribs.clone()).unwrap();
            let mut shuffled = contribs.clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rand::seq::SliceRandom::shuffle(shuffled.as_mut_slice(), &mut rng);
            let b = integrate(shuffled).unwrap();
            let c = integrate_par(contribs.into_par_iter().map(Ok)).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a, &c);
        }
    }
}
