//! Built-in sanity suites run by `bott check`.

use bott_core::cubics::{fixpoint_count, CubicFixpoint, GWQuery, PreparedCubics};
use bott_core::localize::{weight_vector_with_seed, DEFAULT_RETRY_BUDGET};
use bott_core::planepoints::{tangent_rep_points, PreparedPoints, Tripartition};
use bott_core::repring::{elementary_symmetric, specialize};
use bott_core::{BigInt, BigRational, Error, LocalizationResult, VirtualRep, WeightVector};
use num_traits::{One, Zero};
use serde_json::Value;

use crate::{prepare_cubics, prepare_points, CliError, CommonArgs, Progress, RunReport, Space, Suite};

pub(crate) fn run_suite(common: &CommonArgs, suite: Suite, space: Space) -> Result<RunReport, CliError> {
    let mut checks = Vec::new();
    let (fixpoints, weights) = match space {
        Space::Cubics(n) => {
            let prepared = prepare_cubics(common, n)?;
            let want = |s| suite == s || suite == Suite::All;
            if want(Suite::Euler) {
                checks.push(euler_cubics(&prepared)?);
            }
            if want(Suite::Weights) {
                checks.extend(weights_cubics(common, &prepared)?);
            }
            if want(Suite::DegreeVanishing) {
                checks.extend(vanishing_cubics(&prepared)?);
            }
            if want(Suite::Tangent) {
                checks.push(tangent_cubics(n, prepared.fixpoints()));
            }
            (prepared.len(), prepared.weights().clone())
        }
        Space::Points(r) => {
            let prepared = prepare_points(common, r)?;
            let want = |s| suite == s || suite == Suite::All;
            if want(Suite::Euler) {
                checks.push(euler_points(&prepared)?);
            }
            if want(Suite::Weights) {
                checks.extend(weights_points(common, &prepared)?);
            }
            if want(Suite::DegreeVanishing) {
                checks.extend(vanishing_points(&prepared)?);
            }
            if want(Suite::Tangent) {
                checks.push(tangent_points(r, prepared.fixpoints()));
            }
            (prepared.len(), prepared.weights().clone())
        }
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(RunReport {
        command: format!("check --suite {} --space {space}", suite_name(suite)),
        result: Value::String(if passed { "pass" } else { "fail" }.into()),
        fixpoints,
        weights: weights.as_slice().to_vec(),
        elapsed_ms: 0,
        checks,
    })
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Euler => "euler",
        Suite::Weights => "weights",
        Suite::DegreeVanishing => "degree-vanishing",
        Suite::Tangent => "tangent",
        Suite::All => "all",
    }
}

fn equality(name: impl Into<String>, got: &BigRational, expected: &BigRational) -> crate::Check {
    let passed = got == expected;
    let rel = if passed { "=" } else { "!=" };
    crate::Check::new(name, passed, format!("{got} {rel} {expected}"))
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Number of tripartitions of `r`, read off `Π (1 − t^k)^{−3}` by power
/// series multiplication. Independent of the enumeration code.
pub fn tripartition_count(r: u32) -> BigInt {
    let len = r as usize + 1;
    let mut series = vec![BigInt::zero(); len];
    series[0] = BigInt::one();
    for k in 1..len {
        // multiplying by 1/(1 − t^k) three times
        for _ in 0..3 {
            for i in k..len {
                let prev = series[i - k].clone();
                series[i] += prev;
            }
        }
    }
    series.swap_remove(r as usize)
}

/// `130 · C(n+1, 4)` computed from the binomial directly.
pub fn cubic_euler_expected(n: usize) -> BigInt {
    let m = BigInt::from(n as u64 + 1);
    let mut c = BigInt::one();
    for i in 0..4u32 {
        c *= &m - i;
    }
    c / 24 * 130
}

fn euler_cubics(prepared: &PreparedCubics) -> Result<crate::Check, CliError> {
    let got = prepared.euler_characteristic()?.value;
    let expected = int(cubic_euler_expected(prepared.n()));
    let mut c = equality(format!("euler(H_{})", prepared.n()), &got, &expected);
    if fixpoint_count(prepared.n()) != prepared.len() {
        c.passed = false;
        c.detail += &format!("; enumerated {} fixpoints", prepared.len());
    }
    Ok(c)
}

fn euler_points(prepared: &PreparedPoints) -> Result<crate::Check, CliError> {
    let got = prepared.euler_characteristic()?.value;
    let expected = int(tripartition_count(prepared.r()));
    Ok(equality(format!("euler(Hilb^{})", prepared.r()), &got, &expected))
}

/// First valid weight vector after the one already in use.
fn second_weights<T>(
    common: &CommonArgs,
    var_count: usize,
    used: &WeightVector,
    mut f: impl FnMut(&WeightVector) -> bott_core::Result<T>,
) -> Result<(T, WeightVector), CliError> {
    for attempt in 1..=DEFAULT_RETRY_BUDGET {
        let w = weight_vector_with_seed(var_count, attempt, common.seed);
        if &w == used {
            continue;
        }
        match f(&w) {
            Ok(v) => return Ok((v, w)),
            Err(Error::ZeroTangentWeight { .. }) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(Error::RetryBudgetExhausted {
        attempts: DEFAULT_RETRY_BUDGET,
    }
    .into())
}

/// `∫ c_1(T)^dim`, the anticanonical degree, is a convenient weight-independent
/// number on any of the spaces.
fn anticanonical_degree(ws: &bott_core::WeightMultiset, dim: usize) -> BigRational {
    let c1 = elementary_symmetric(ws, 1);
    int(num_traits::pow(c1, dim))
}

fn weights_cubics(common: &CommonArgs, prepared: &PreparedCubics) -> Result<Vec<crate::Check>, CliError> {
    let n = prepared.n();
    let dim = 4 * n;
    let progress = Progress::new(common.progress);
    let (other, w2) = second_weights(common, n + 1, prepared.weights(), |w| {
        PreparedCubics::with_progress(n, w, &|i| progress.tick(i))
    })?;
    type Integral = Box<dyn Fn(&PreparedCubics) -> bott_core::Result<LocalizationResult>>;
    let mut integrals: Vec<(String, Integral)> = vec![
        ("euler".into(), Box::new(|p: &PreparedCubics| p.euler_characteristic())),
        (
            format!("c1(T)^{dim}"),
            Box::new(move |p: &PreparedCubics| p.integrate_with(|_, ws| Ok(anticanonical_degree(ws, dim)))),
        ),
    ];
    if n >= 4 {
        // a hypersurface of degree n+1 with the remaining dimension cut by points
        let extra = (n - 4) as u32;
        let q = GWQuery::new(n, vec![n as u32 + 1], vec![1; extra as usize])?;
        integrals.push((
            format!("gw(degrees {}, partition 1^{extra})", n + 1),
            Box::new(move |p: &PreparedCubics| p.gw_integral(&q)),
        ));
    }
    let mut out = Vec::new();
    for (name, f) in integrals {
        let a = f(prepared)?.value;
        let b = f(&other)?.value;
        let passed = a == b;
        out.push(crate::Check::new(
            format!("weight-independence {name}"),
            passed,
            format!("{a} with ({}), {b} with ({w2})", prepared.weights()),
        ));
    }
    Ok(out)
}

fn weights_points(common: &CommonArgs, prepared: &PreparedPoints) -> Result<Vec<crate::Check>, CliError> {
    let r = prepared.r();
    let dim = 2 * r as usize;
    let progress = Progress::new(common.progress);
    let (other, w2) = second_weights(common, 3, prepared.weights(), |w| {
        PreparedPoints::with_progress(r, w, &|i| progress.tick(i))
    })?;
    type Integral = Box<dyn Fn(&PreparedPoints) -> bott_core::Result<LocalizationResult>>;
    let integrals: Vec<(String, Integral)> = vec![
        ("euler".into(), Box::new(|p: &PreparedPoints| p.euler_characteristic())),
        (
            format!("c1(T)^{dim}"),
            Box::new(move |p: &PreparedPoints| p.integrate_with(|_, ws| Ok(anticanonical_degree(ws, dim)))),
        ),
        (
            format!("s_{dim}(E_{r})"),
            Box::new(move |p: &PreparedPoints| p.segre_integral(r as i64, 0)),
        ),
        (
            "darboux s(E_-1 (x) L)".into(),
            Box::new(|p: &PreparedPoints| p.segre_integral(-1, 1)),
        ),
    ];
    let mut out = Vec::new();
    for (name, f) in integrals {
        let a = f(prepared)?.value;
        let b = f(&other)?.value;
        out.push(crate::Check::new(
            format!("weight-independence {name}"),
            a == b,
            format!("{a} with ({}), {b} with ({w2})", prepared.weights()),
        ));
    }
    Ok(out)
}

fn vanishing_check(name: String, result: LocalizationResult) -> crate::Check {
    let passed = result.value.is_zero();
    crate::Check::new(name, passed, format!("integral = {}", result.value))
}

/// `∫ σ_1(E_1)^k = 0` for every `k < 4n`.
fn vanishing_cubics(prepared: &PreparedCubics) -> Result<Vec<crate::Check>, CliError> {
    let n = prepared.n();
    let w = prepared.weights();
    let mut out = Vec::new();
    for k in 0..4 * n {
        let result = prepared.integrate_with(|x, _| {
            let e1 = specialize(&x.sections_rep(1, n)?, w)?;
            Ok(int(num_traits::pow(elementary_symmetric(&e1, 1), k)))
        })?;
        out.push(vanishing_check(format!("c1(E_1)^{k} on H_{n}"), result));
    }
    Ok(out)
}

/// `∫ σ_1(E_r)^k = 0` for every `k < 2r`.
fn vanishing_points(prepared: &PreparedPoints) -> Result<Vec<crate::Check>, CliError> {
    let r = prepared.r();
    let mut out = Vec::new();
    for k in 0..2 * r as usize {
        let result = prepared.integrate_with(|b, _| {
            let e = prepared.twisted_weights(b, r as i64, 0);
            Ok(int(num_traits::pow(elementary_symmetric(&e, 1), k)))
        })?;
        out.push(vanishing_check(format!("c1(E_{r})^{k} on Hilb^{r}"), result));
    }
    Ok(out)
}

/// Problems with a tangent representation, if any.
pub fn tangent_defects(label: &str, t: &VirtualRep, dim: usize) -> Vec<String> {
    let mut out = Vec::new();
    if let Some((c, m)) = t.iter().find(|(_, m)| *m < 0) {
        out.push(format!("{label}: {c} has multiplicity {m}"));
    }
    if t.has_trivial_character() {
        out.push(format!("{label}: trivial character present"));
    }
    if t.dimension() != dim as i64 {
        out.push(format!("{label}: dimension {} instead of {dim}", t.dimension()));
    }
    out
}

fn summarize(name: String, count: usize, defects: Vec<String>) -> crate::Check {
    if defects.is_empty() {
        crate::Check::new(name, true, format!("{count} fixpoints ok"))
    } else {
        let shown: Vec<_> = defects.iter().take(5).cloned().collect();
        crate::Check::new(name, false, format!("{} defects: {}", defects.len(), shown.join("; ")))
    }
}

fn tangent_cubics<'a>(n: usize, fixpoints: impl Iterator<Item = &'a CubicFixpoint>) -> crate::Check {
    let mut count = 0;
    let mut defects = Vec::new();
    for x in fixpoints {
        count += 1;
        let label = x.to_string();
        match x.tangent_rep(n) {
            Ok(t) => defects.extend(tangent_defects(&label, &t, 4 * n)),
            Err(e) => defects.push(format!("{label}: {e}")),
        }
    }
    summarize(format!("tangent invariants on H_{n}"), count, defects)
}

fn tangent_points<'a>(r: u32, fixpoints: impl Iterator<Item = &'a Tripartition>) -> crate::Check {
    let mut count = 0;
    let mut defects = Vec::new();
    for b in fixpoints {
        count += 1;
        let label = b.to_string();
        match tangent_rep_points(b) {
            Ok(t) => defects.extend(tangent_defects(&label, &t, 2 * r as usize)),
            Err(e) => defects.push(format!("{label}: {e}")),
        }
    }
    summarize(format!("tangent invariants on Hilb^{r}"), count, defects)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bott_core::localize::default_weight_vector;

    #[test]
    fn tripartition_series() {
        let got: Vec<u64> = (0..=5).map(|r| tripartition_count(r).try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 3, 9, 22, 51, 108]);
        assert_eq!(tripartition_count(8), BigInt::from(810));
        assert_eq!(tripartition_count(10), BigInt::from(2640));
    }

    #[test]
    fn cubic_euler_formula() {
        let got: Vec<BigInt> = (3..=8).map(cubic_euler_expected).collect();
        let want: Vec<BigInt> = [130, 650, 1950, 4550, 9100, 16380].into_iter().map(BigInt::from).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn default_vectors_used_for_second_run_differ() {
        assert_ne!(default_weight_vector(3, 0), weight_vector_with_seed(3, 1, 7));
    }
}
