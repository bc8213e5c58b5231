//! Exact polynomial interpolation over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial, coefficients from the constant term upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(x.into()))
    }

    pub fn scale(&self, k: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Unique polynomial of degree `< points.len()` through the given points,
    /// built from Newton divided differences.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Polynomial {
        let xs: Vec<&BigRational> = points.iter().map(|(x, _)| x).collect();
        let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        let count = points.len();
        for level in 1..count {
            for i in (level..count).rev() {
                table[i] = (&table[i] - &table[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        // expand Σ table[i] Π_{j<i} (x − x_j) by Horner from the top
        let mut acc = vec![BigRational::zero(); count.max(1)];
        let mut deg = 0usize;
        for i in (0..count).rev() {
            // acc ← acc·(x − x_i) + table[i]
            if i + 1 < count {
                let mut next = vec![BigRational::zero(); deg + 2];
                for (k, a) in acc.iter().take(deg + 1).enumerate() {
                    next[k + 1] += a;
                    next[k] -= a * xs[i];
                }
                deg += 1;
                acc = next;
            }
            acc[0] += &table[i];
        }
        Polynomial::new(acc)
    }

    /// Smallest positive integer `d` with `d·p` integral.
    pub fn common_denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().rev().map(|(k, c)| (c, monomial("n", k))))
    }
}

fn monomial(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a BigRational, String)>,
{
    let mut first = true;
    for (c, m) in terms {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        let a = c.abs();
        match (a.is_one(), m.is_empty()) {
            (true, true) => write!(f, "1")?,
            (true, false) => write!(f, "{m}")?,
            (false, true) => write!(f, "{a}")?,
            (false, false) => write!(f, "{a}*{m}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Polynomial in two variables `n`, `m`, keyed by exponent pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(usize, usize), BigRational>,
}

impl BivariatePolynomial {
    /// Coefficient of `n^i m^j`.
    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &BigRational)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn eval(&self, n: &BigRational, m: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * pow(n, i) * pow(m, j);
        }
        acc
    }

    /// Interpolates on the grid `ns × ms`; `values[a][b]` is the value at
    /// `(ns[a], ms[b])`. The result has degree `< ns.len()` in `n` and
    /// `< ms.len()` in `m`.
    pub fn interpolate_grid(ns: &[i64], ms: &[i64], values: &[Vec<BigRational>]) -> Self {
        let q = |v: i64| BigRational::from_integer(v.into());
        // first along n for each fixed m, then along m for each n-power
        let along_n: Vec<Polynomial> = (0..ms.len())
            .map(|b| {
                let pts: Vec<_> = ns.iter().enumerate().map(|(a, &n)| (q(n), values[a][b].clone())).collect();
                Polynomial::interpolate(&pts)
            })
            .collect();
        let mut terms = BTreeMap::new();
        for i in 0..ns.len() {
            let pts: Vec<_> = ms.iter().enumerate().map(|(b, &m)| (q(m), along_n[b].coeff(i))).collect();
            let p = Polynomial::interpolate(&pts);
            for (j, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((i, j), c.clone());
                }
            }
        }
        BivariatePolynomial { terms }
    }
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|((a, b), _), ((c, d), _)| (c + d, c).cmp(&(a + b, a)));
        write_terms(
            f,
            keys.into_iter().map(|(&(i, j), c)| {
                let mut m = monomial("n", i);
                let mm = monomial("m", j);
                if !m.is_empty() && !mm.is_empty() {
                    m.push('*');
                }
                m.push_str(&mm);
                (c, m)
            }),
        )
    }
}
