//! Certification of the structural hypotheses on the kinetic coefficients.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, Exact};
use crate::kinetics::{FragmentDistribution, ValidationReport, WeightFunction};
use crate::scalar::Real;

/// Relative tolerance used whenever entries are irrational.
pub const FLOAT_RELATIVE_TOLERANCE: f64 = 1e-12;

/// Arithmetic used when checking local mass conservation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lmc1Mode {
    ExactRational,
    /// Accept `|residual| ≤ ε · j`.
    Tolerance(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Residual {
    Exact(Exact),
    Approx(f64),
}

impl Residual {
    pub fn as_f64(&self) -> f64 {
        match self {
            Residual::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Residual::Approx(r) => *r,
        }
    }
}

/// Residual `Σ_{i<j} i φ_{i,j;k} − j` at one `(j, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lmc1Entry {
    pub j: usize,
    pub k: usize,
    pub residual: Residual,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lmc1Report {
    pub mode: Lmc1Mode,
    pub entries: Vec<Lmc1Entry>,
    pub certified: bool,
    /// First failing `(j, k)`, if any.
    pub first_failure: Option<(usize, usize)>,
}

impl Lmc1Report {
    pub fn max_abs_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual.as_f64().abs()).fold(0.0, f64::max)
    }
}

fn check_fragment_range<T: Real>(phi: &FragmentDistribution<T>, jmax: usize, kmax: usize) -> Result<()> {
    if let Some(p) = phi.max_size() {
        if jmax > p || kmax > p {
            return Err(Error::Range(format!("table has size {p}, asked for jmax = {jmax}, kmax = {kmax}")));
        }
    }
    Ok(())
}

/// Checks `Σ_{i=1}^{j−1} i φ_{i,j;k} = j` for every `2 ≤ j ≤ jmax`, `1 ≤ k ≤ kmax`.
pub fn validate_lmc1<T: Real>(
    phi: &FragmentDistribution<T>,
    jmax: usize,
    kmax: usize,
    mode: Lmc1Mode,
) -> Result<Lmc1Report> {
    if jmax < 2 || kmax < 1 {
        return Err(Error::Range(format!("need jmax ≥ 2 and kmax ≥ 1, got ({jmax}, {kmax})")));
    }
    check_fragment_range(phi, jmax, kmax)?;
    if mode == Lmc1Mode::ExactRational && !phi.has_exact_entries() {
        return Err(Error::Mode(format!("{} has irrational entries", phi.name())));
    }
    let shared_k = phi.is_k_independent();
    let residual_at = |j: usize, k: usize| -> Result<(Residual, bool)> {
        match mode {
            Lmc1Mode::ExactRational => {
                let row = phi.exact_row(j, k)?;
                let mass = row.iter().enumerate().fold(Exact::zero(), |s, (i, v)| s + exact::int(i as i64 + 1) * v);
                let r = mass - exact::int(j as i64);
                let ok = r.is_zero();
                Ok((Residual::Exact(r), ok))
            }
            Lmc1Mode::Tolerance(eps) => {
                let row = phi.row(j, k);
                let mass = row.iter().enumerate().fold(T::zero(), |s, (i, &v)| s + T::from_index(i + 1) * v);
                let r = (mass - T::from_index(j)).as_f64();
                Ok((Residual::Approx(r), r.abs() <= eps * j as f64))
            }
        }
    };
    let mut entries = Vec::with_capacity((jmax - 1) * kmax);
    let mut first_failure = None;
    for j in 2..=jmax {
        let shared = if shared_k { Some(residual_at(j, 1)?) } else { None };
        for k in 1..=kmax {
            let (residual, ok) = match &shared {
                Some(s) => s.clone(),
                None => residual_at(j, k)?,
            };
            if !ok && first_failure.is_none() {
                first_failure = Some((j, k));
            }
            entries.push(Lmc1Entry { j, k, residual });
        }
    }
    Ok(Lmc1Report { mode, entries, certified: first_failure.is_none(), first_failure })
}

/// `Σ_{i=1}^{j−1} φ_{i,j;k}`, the expected number of fragments of one breakup.
pub fn fragment_count<T: Real>(phi: &FragmentDistribution<T>, j: usize, k: usize) -> T {
    phi.row(j, k).into_iter().fold(T::zero(), |s, v| s + v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BcondStatus {
    Certified,
    /// Lexicographically smallest violating `(i, j, k)`.
    Violated { i: usize, j: usize, k: usize },
}

/// Result of checking `φ_{i,j;k} ≤ α₀ + α₁ φ_{i,k;j}` over a finite range.
#[derive(Debug, Clone, PartialEq)]
pub struct BcondWitness {
    pub alpha0: f64,
    pub alpha1: f64,
    pub jmax: usize,
    pub kmax: usize,
    /// Whether the check ran in exact rational arithmetic.
    pub exact: bool,
    pub status: BcondStatus,
}

impl BcondWitness {
    pub fn is_certified(&self) -> bool {
        self.status == BcondStatus::Certified
    }
}

/// Checks `φ_{i,j;k} ≤ α₀ + α₁ φ_{i,k;j}` for `1 ≤ i ≤ j − 1`, `2 ≤ j ≤ jmax`,
/// `j ≤ k ≤ kmax`, in exact arithmetic when every entry is rational and with
/// relative tolerance [`FLOAT_RELATIVE_TOLERANCE`] otherwise.
pub fn find_bcond_witness<T: Real>(
    phi: &FragmentDistribution<T>,
    alpha0: f64,
    alpha1: f64,
    jmax: usize,
    kmax: usize,
) -> Result<BcondWitness> {
    if !(alpha0 >= 0.0 && alpha1 >= 0.0) || !alpha0.is_finite() || !alpha1.is_finite() {
        return Err(Error::Argument(format!("α₀, α₁ must be finite and non-negative, got ({alpha0}, {alpha1})")));
    }
    if jmax < 2 || kmax < jmax {
        return Err(Error::Range(format!("need kmax ≥ jmax ≥ 2, got jmax = {jmax}, kmax = {kmax}")));
    }
    check_fragment_range(phi, jmax, kmax)?;
    let exact = phi.has_exact_entries();
    let violation = if exact {
        bcond_exact(phi, alpha0, alpha1, jmax, kmax)?
    } else {
        bcond_float(phi, alpha0, alpha1, jmax, kmax)
    };
    Ok(BcondWitness {
        alpha0,
        alpha1,
        jmax,
        kmax,
        exact,
        status: match violation {
            None => BcondStatus::Certified,
            Some((i, j, k)) => BcondStatus::Violated { i, j, k },
        },
    })
}

/// Cached rows `φ_{·, n; ·}` for `n ≤ nmax`, or direct access for tables.
struct Rows<V> {
    shared: Option<Vec<Vec<V>>>,
}

impl<V: Clone> Rows<V> {
    fn build(k_independent: bool, nmax: usize, row: impl Fn(usize) -> Result<Vec<V>>) -> Result<Self> {
        if !k_independent {
            return Ok(Self { shared: None });
        }
        let rows = (0..=nmax).map(|n| if n < 2 { Ok(Vec::new()) } else { row(n) }).collect::<Result<_>>()?;
        Ok(Self { shared: Some(rows) })
    }

    fn get(&self, i: usize, n: usize, other: usize, direct: impl Fn(usize, usize, usize) -> V) -> V {
        match &self.shared {
            Some(rows) => rows[n][i - 1].clone(),
            None => direct(i, n, other),
        }
    }
}

fn bcond_exact<T: Real>(
    phi: &FragmentDistribution<T>,
    alpha0: f64,
    alpha1: f64,
    jmax: usize,
    kmax: usize,
) -> Result<Option<(usize, usize, usize)>> {
    let a0 = exact::from_f64(alpha0).expect("finite");
    let a1 = exact::from_f64(alpha1).expect("finite");
    if phi.is_k_independent() {
        // Rows do not depend on the partner size, so the right-hand side is
        // formed once per (i, k).
        let rows: Vec<Vec<Exact>> =
            (0..=kmax).map(|n| if n < 2 { Ok(Vec::new()) } else { phi.exact_row(n, 1) }).collect::<Result<_>>()?;
        let rhs: Vec<Vec<Exact>> = rows.iter().map(|r| r.iter().map(|v| &a0 + &a1 * v).collect()).collect();
        for i in 1..jmax {
            for (j, row) in rows.iter().enumerate().take(jmax + 1).skip(i + 1) {
                let lhs = &row[i - 1];
                if let Some(k) = (j..=kmax).find(|&k| lhs > &rhs[k][i - 1]) {
                    return Ok(Some((i, j, k)));
                }
            }
        }
        return Ok(None);
    }
    let mut first: Option<(usize, usize, usize)> = None;
    for j in 2..=jmax {
        for k in j..=kmax {
            let (rj, rk) = (phi.exact_row(j, k)?, phi.exact_row(k, j)?);
            if let Some(i) = (1..j).find(|&i| rj[i - 1] > &a0 + &a1 * &rk[i - 1]) {
                first = Some(first.map_or((i, j, k), |f| f.min((i, j, k))));
            }
        }
    }
    Ok(first)
}

fn bcond_float<T: Real>(
    phi: &FragmentDistribution<T>,
    alpha0: f64,
    alpha1: f64,
    jmax: usize,
    kmax: usize,
) -> Option<(usize, usize, usize)> {
    let rows = Rows::build(phi.is_k_independent(), kmax, |n| Ok(phi.row(n, 1).into_iter().map(Real::as_f64).collect()))
        .expect("floating rows never fail");
    let direct = |i: usize, n: usize, other: usize| phi.value(i, n, other).as_f64();
    for i in 1..jmax {
        for j in i + 1..=jmax {
            for k in j..=kmax {
                let lhs = rows.get(i, j, k, direct);
                let rhs = alpha0 + alpha1 * rows.get(i, k, j, direct);
                if lhs - rhs > FLOAT_RELATIVE_TOLERANCE * lhs.abs().max(rhs.abs()) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Constants `(α₀, α₁)` known to satisfy the `bCond` inequality for a power law
/// with exponent `ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawConstants {
    pub alpha0: f64,
    pub alpha1: f64,
    /// For `ν < −2`, `α₁` is an upper bound on `Σ_{l≥1} l^{1+ν}`; this is the
    /// width of the bracket `[lower, alpha1]` containing the true sum.
    pub series_bracket: Option<f64>,
}

/// Number of explicit terms before the integral remainder bound kicks in.
const SERIES_TERMS: usize = 100_000;

pub fn power_law_constants(nu: f64) -> Result<PowerLawConstants> {
    if !nu.is_finite() {
        return Err(Error::Argument(format!("exponent must be finite, got {nu}")));
    }
    if nu >= 0.0 {
        // φ ≤ (2+ν) j / (j−1)² ≤ 2(2+ν), from Σ_{l<j} l^{1+ν} ≥ (j−1)^{2+ν}/(2+ν).
        return Ok(PowerLawConstants { alpha0: 2.0 * (2.0 + nu), alpha1: 0.0, series_bracket: None });
    }
    if nu >= -1.0 {
        // i^ν ≤ 1 and every l^{1+ν} ≥ 1, so φ ≤ j / (j−1) ≤ 2.
        return Ok(PowerLawConstants { alpha0: 2.0, alpha1: 0.0, series_bracket: None });
    }
    if nu >= -2.0 {
        return Ok(PowerLawConstants { alpha0: 0.0, alpha1: (2.0 + nu).exp2(), series_bracket: None });
    }
    let s = 1.0 + nu;
    let n = SERIES_TERMS;
    // Descending summation keeps the small terms from being swallowed.
    let partial: f64 = (1..=n).rev().map(|l| (l as f64).powf(s)).sum();
    // Σ_{l>N} l^s lies between ∫_{N+1}^∞ and ∫_N^∞ of x^s.
    let upper_tail = (n as f64).powf(s + 1.0) / (-(s + 1.0));
    let lower_tail = ((n + 1) as f64).powf(s + 1.0) / (-(s + 1.0));
    Ok(PowerLawConstants {
        alpha0: 0.0,
        alpha1: partial + upper_tail,
        series_bracket: Some(upper_tail - lower_tail),
    })
}

/// Checks the weight-class properties of `g` on `grid`: `G₀(0) = 0`, convexity
/// of `G₀`, monotonicity and concavity of `G₁`, and growth of `z G₁′(z)` past
/// the grid midpoint. The grid check is a regression test; divergence itself
/// holds in closed form (see [`WeightFunction::divergence_note`]).
pub fn check_weight_class<T: Real>(g: &WeightFunction<T>, grid: &[T]) -> Result<ValidationReport> {
    if grid.len() < 3 {
        return Err(Error::Argument("grid needs at least three points".into()));
    }
    if !(grid[0] > T::zero()) || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Argument("grid must be positive and strictly increasing".into()));
    }
    let tol = 1e-9;
    let mut report = ValidationReport::new(format!("weight class of {}", g.name()));
    report.record_bool(g.g0(T::zero()) == T::zero(), || "G0(0) != 0".into());

    let z: Vec<f64> = grid.iter().map(|&x| x.as_f64()).collect();
    let g0: Vec<f64> = grid.iter().map(|&x| g.g0(x).as_f64()).collect();
    let g1: Vec<f64> = grid.iter().map(|&x| g.g1(x).as_f64()).collect();
    let slopes = |v: &[f64]| -> Vec<f64> { (0..v.len() - 1).map(|n| (v[n + 1] - v[n]) / (z[n + 1] - z[n])).collect() };

    for (n, &v) in g0.iter().enumerate() {
        report.record(v, || format!("G0({}) = {v} < 0", z[n]));
    }
    let s0 = slopes(&g0);
    for n in 0..s0.len() - 1 {
        let m = s0[n + 1] - s0[n] + tol * s0[n].abs().max(s0[n + 1].abs());
        report.record(m, || format!("G0 not convex near z = {}", z[n + 1]));
    }
    let s1 = slopes(&g1);
    for n in 0..s1.len() {
        report.record(s1[n] + tol * g1[n].abs().max(g1[n + 1].abs()), || format!("G1 decreases near z = {}", z[n]));
    }
    for n in 0..s1.len() - 1 {
        let m = s1[n] - s1[n + 1] + tol * s1[n].abs().max(s1[n + 1].abs());
        report.record(m, || format!("G1 not concave near z = {}", z[n + 1]));
    }
    let mid = grid.len() / 2;
    let zg: Vec<f64> = grid[mid..].iter().map(|&x| g.z_g1_prime(x).as_f64()).collect();
    for n in 0..zg.len() - 1 {
        let m = zg[n + 1] - zg[n] + tol * zg[n].abs();
        report.record(m, || format!("z G1'(z) decreases near z = {}", z[mid + n]));
    }
    let first = zg[0];
    let last = zg[zg.len() - 1];
    report.record_bool(last > first, || format!("z G1'(z) does not grow past the midpoint ({first} → {last})"));
    report.note(g.divergence_note());
    Ok(report)
}

/// `[1, 2, …, n]` as a grid.
pub fn integer_grid<T: Real>(n: usize) -> Vec<T> {
    (1..=n).map(T::from_index).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_lmc1_single_entry() {
        let r = validate_lmc1(&FragmentDistribution::<f64>::uniform(), 5, 3, Lmc1Mode::ExactRational).unwrap();
        assert!(r.certified);
        assert_eq!(r.entries.len(), 4 * 3);
        assert!(r.entries.iter().all(|e| e.residual == Residual::Exact(Exact::zero())));
    }

    #[test]
    fn lmc1_errors() {
        let u = FragmentDistribution::<f64>::uniform();
        assert!(matches!(validate_lmc1(&u, 1, 1, Lmc1Mode::ExactRational), Err(Error::Range(_))));
        let irr = FragmentDistribution::<f64>::power_law(0.5).unwrap();
        assert!(matches!(validate_lmc1(&irr, 5, 1, Lmc1Mode::ExactRational), Err(Error::Mode(_))));
        assert!(validate_lmc1(&irr, 50, 2, Lmc1Mode::Tolerance(1e-12)).unwrap().certified);
    }

    #[test]
    fn lmc1_detects_broken_table() {
        use crate::kinetics::FragmentTable;
        let t = FragmentTable::<f64>::parse("1 2 1 2\n1 2 2 3\n", None).unwrap();
        let r = validate_lmc1(&FragmentDistribution::table(t), 2, 2, Lmc1Mode::ExactRational).unwrap();
        assert!(!r.certified);
        assert_eq!(r.first_failure, Some((2, 2)));
    }

    #[test]
    fn bcond_counterexample_is_lexicographically_smallest() {
        // Uniform with α₀ = 1, α₁ = 0 fails only at j = 2 (φ = 2), first at i = 1, k = 2.
        let w = find_bcond_witness(&FragmentDistribution::<f64>::uniform(), 1.0, 0.0, 10, 10).unwrap();
        assert_eq!(w.status, BcondStatus::Violated { i: 1, j: 2, k: 2 });
        assert!(w.exact);
    }

    #[test]
    fn bcond_table_counterexample_orders_by_fragment_size_first() {
        use crate::kinetics::FragmentTable;
        let five = exact::int(5);
        let table = FragmentTable::<f64>::from_exact(4, [((2, 3, 4), five.clone()), ((1, 4, 4), five)]).unwrap();
        let w = find_bcond_witness(&FragmentDistribution::table(table), 1.0, 0.0, 4, 4).unwrap();
        assert_eq!(w.status, BcondStatus::Violated { i: 1, j: 4, k: 4 });
    }

    #[test]
    fn bcond_range_errors() {
        let u = FragmentDistribution::<f64>::uniform();
        assert!(matches!(find_bcond_witness(&u, 0.0, 1.0, 5, 4), Err(Error::Range(_))));
        assert!(matches!(find_bcond_witness(&u, -1.0, 1.0, 5, 5), Err(Error::Argument(_))));
    }

    #[test]
    fn power_law_constants_regimes() {
        let c = power_law_constants(-1.5).unwrap();
        assert_eq!((c.alpha0, c.alpha1), (0.0, 0.5f64.exp2()));
        let z = power_law_constants(-3.0).unwrap();
        // Σ l^{-2} = π²/6.
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!(z.alpha1 >= exact && z.alpha1 - exact <= z.series_bracket.unwrap() + 1e-12);
        assert_eq!(power_law_constants(0.0).unwrap().alpha1, 0.0);
    }

    #[test]
    fn weight_grid_errors() {
        let g = WeightFunction::power(2.0).unwrap();
        assert!(check_weight_class(&g, &[1.0, 1.0, 2.0]).is_err());
        assert!(check_weight_class(&g, &[0.0, 1.0, 2.0]).is_err());
        assert!(check_weight_class(&g, &[1.0, 2.0]).is_err());
    }
}
