use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{self, Exact};
use crate::scalar::Real;

/// Largest size a fully `(i, j, k)`-dependent table may have.
pub const MAX_TABLE_SIZE: usize = 256;

/// Daughter-distribution rule `φ_{i,j;k}`: the expected number of `i`-clusters
/// produced when a `j`-cluster breaks after hitting a `k`-cluster.
#[derive(Debug, Clone, PartialEq)]
pub enum FragmentRule<T> {
    /// `φ = 2 / (j − 1)`.
    Uniform,
    /// `φ = i^ν j / Σ_{l<j} l^{1+ν}`.
    PowerLaw(T),
    /// `φ = j δ_{i,1}`: every breakup yields monomers only.
    Monomer,
    /// `φ = 2^{−i} · j 2^{j−1} / (2^j − j − 1)`.
    Exponential,
    Table(FragmentTable<T>),
}

/// Dense `(i, j, k)` table, optionally backed by exact rational entries.
#[derive(Debug, Clone, PartialEq)]
pub struct FragmentTable<T> {
    p: usize,
    values: Vec<T>,
    exact: Option<HashMap<(usize, usize, usize), Exact>>,
}

impl<T: Real> FragmentTable<T> {
    fn slot(p: usize, i: usize, j: usize, k: usize) -> usize {
        ((k - 1) * p + (j - 1)) * p + (i - 1)
    }

    fn check_size(p: usize) -> Result<()> {
        if !(2..=MAX_TABLE_SIZE).contains(&p) {
            return Err(Error::Range(format!("fragment table size must lie in 2..={MAX_TABLE_SIZE}, got {p}")));
        }
        Ok(())
    }

    fn check_index(p: usize, i: usize, j: usize, k: usize) -> Result<()> {
        if i == 0 || i >= j || j > p || k == 0 || k > p {
            return Err(Error::Range(format!("entry ({i},{j},{k}) outside 1 ≤ i < j ≤ {p}, 1 ≤ k ≤ {p}")));
        }
        Ok(())
    }

    /// Table from a closure evaluated at every `1 ≤ i < j ≤ p`, `1 ≤ k ≤ p`.
    pub fn from_fn(p: usize, mut f: impl FnMut(usize, usize, usize) -> T) -> Result<Self> {
        Self::check_size(p)?;
        let mut values = vec![T::zero(); p * p * p];
        for k in 1..=p {
            for j in 2..=p {
                for i in 1..j {
                    let v = f(i, j, k);
                    if !(v >= T::zero()) || !v.is_finite() {
                        return Err(Error::Argument(format!("φ_{{{i},{j};{k}}} = {v} is not finite and non-negative")));
                    }
                    values[Self::slot(p, i, j, k)] = v;
                }
            }
        }
        Ok(Self { p, values, exact: None })
    }

    /// Table from exact entries; unlisted entries are zero.
    pub fn from_exact(p: usize, entries: impl IntoIterator<Item = ((usize, usize, usize), Exact)>) -> Result<Self> {
        Self::check_size(p)?;
        let mut values = vec![T::zero(); p * p * p];
        let mut exact = HashMap::new();
        for ((i, j, k), v) in entries {
            Self::check_index(p, i, j, k)?;
            if v < Exact::zero() {
                return Err(Error::Argument(format!("φ_{{{i},{j};{k}}} = {v} is negative")));
            }
            values[Self::slot(p, i, j, k)] = to_real(&v);
            exact.insert((i, j, k), v);
        }
        Ok(Self { p, values, exact: Some(exact) })
    }

    /// Parses the plain-text format: one `i j k value` entry per line, where
    /// `value` is a decimal or an exact fraction `num/den`; `#` starts a
    /// comment line. The size is `p` if given, else the largest index seen.
    pub fn parse(text: &str, p: Option<usize>) -> Result<Self> {
        let mut entries = Vec::new();
        let mut seen = HashMap::new();
        let mut max_index = 0;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |message: String| Error::Parse { line: n + 1, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(perr(format!("expected `i j k value`, found {} fields", fields.len())));
            }
            let mut idx = [0usize; 3];
            for (slot, f) in idx.iter_mut().zip(&fields[..3]) {
                *slot = f.parse().map_err(|_| perr(format!("bad index {f:?}")))?;
            }
            let value = exact::parse(fields[3]).map_err(|e| perr(e.to_string()))?;
            let key = (idx[0], idx[1], idx[2]);
            if seen.insert(key, n + 1).is_some() {
                return Err(perr(format!("duplicate entry {key:?}")));
            }
            max_index = max_index.max(idx[1]).max(idx[2]);
            entries.push((key, value));
        }
        let p = p.unwrap_or(max_index);
        Self::from_exact(p, entries)
    }

    pub fn size(&self) -> usize {
        self.p
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> T {
        if i == 0 || i >= j || j > self.p || k == 0 || k > self.p {
            T::zero()
        } else {
            self.values[Self::slot(self.p, i, j, k)]
        }
    }

    pub fn get_exact(&self, i: usize, j: usize, k: usize) -> Option<Exact> {
        let map = self.exact.as_ref()?;
        Some(map.get(&(i, j, k)).cloned().unwrap_or_else(Exact::zero))
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    fn is_k_independent(&self) -> bool {
        (2..=self.p).all(|j| (1..j).all(|i| (2..=self.p).all(|k| self.get(i, j, k) == self.get(i, j, 1))))
    }
}

fn to_real<T: Real>(v: &Exact) -> T {
    use num_traits::ToPrimitive;
    T::lit(v.to_f64().unwrap_or(f64::NAN))
}

/// A fragment distribution `φ_{i,j;k}` for `1 ≤ i ≤ j − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FragmentDistribution<T> {
    rule: FragmentRule<T>,
    k_independent: bool,
}

impl<T: Real> FragmentDistribution<T> {
    pub fn uniform() -> Self {
        Self { rule: FragmentRule::Uniform, k_independent: true }
    }

    pub fn power_law(nu: T) -> Result<Self> {
        if !nu.is_finite() {
            return Err(Error::Argument(format!("power-law exponent must be finite, got {nu}")));
        }
        Ok(Self { rule: FragmentRule::PowerLaw(nu), k_independent: true })
    }

    pub fn monomer() -> Self {
        Self { rule: FragmentRule::Monomer, k_independent: true }
    }

    pub fn exponential() -> Self {
        Self { rule: FragmentRule::Exponential, k_independent: true }
    }

    pub fn table(table: FragmentTable<T>) -> Self {
        let k_independent = table.is_k_independent();
        Self { rule: FragmentRule::Table(table), k_independent }
    }

    pub fn rule(&self) -> &FragmentRule<T> {
        &self.rule
    }

    pub fn name(&self) -> String {
        match &self.rule {
            FragmentRule::Uniform => "uniform".into(),
            FragmentRule::PowerLaw(nu) => format!("power_law(nu={nu})"),
            FragmentRule::Monomer => "monomer".into(),
            FragmentRule::Exponential => "exponential".into(),
            FragmentRule::Table(t) => format!("table(p={})", t.size()),
        }
    }

    /// True when `φ_{i,j;k}` does not depend on `k`.
    pub fn is_k_independent(&self) -> bool {
        self.k_independent
    }

    /// Largest `j`/`k` the rule is defined for, if bounded.
    pub fn max_size(&self) -> Option<usize> {
        match &self.rule {
            FragmentRule::Table(t) => Some(t.size()),
            _ => None,
        }
    }

    /// Whether `sup φ_{i,j;k}` over all `j ≥ 2` is finite, i.e. `α₁ = 0` is
    /// admissible. Tables are finite and hence bounded.
    pub fn is_bounded(&self) -> bool {
        match &self.rule {
            FragmentRule::Uniform | FragmentRule::Table(_) => true,
            FragmentRule::PowerLaw(nu) => *nu >= -T::one(),
            FragmentRule::Monomer | FragmentRule::Exponential => false,
        }
    }

    /// `φ_{i,j;k}`; zero outside `1 ≤ i ≤ j − 1`.
    pub fn value(&self, i: usize, j: usize, k: usize) -> T {
        if i == 0 || i >= j {
            return T::zero();
        }
        match &self.rule {
            FragmentRule::Table(t) => t.get(i, j, k),
            _ => self.row(j, k)[i - 1],
        }
    }

    /// `[φ_{1,j;k}, …, φ_{j−1,j;k}]`, computed with a single normalising sum.
    pub fn row(&self, j: usize, k: usize) -> Vec<T> {
        if j < 2 {
            return Vec::new();
        }
        let jt = T::from_index(j);
        match &self.rule {
            FragmentRule::Uniform => vec![T::lit(2.0) / (jt - T::one()); j - 1],
            FragmentRule::PowerLaw(nu) => {
                let expo = T::one() + *nu;
                let norm = (1..j).fold(T::zero(), |s, l| s + T::from_index(l).powf(expo));
                (1..j).map(|i| T::from_index(i).powf(*nu) * jt / norm).collect()
            }
            FragmentRule::Monomer => {
                let mut r = vec![T::zero(); j - 1];
                r[0] = jt;
                r
            }
            FragmentRule::Exponential => {
                let xi = xi_real::<T>(j);
                let half = T::lit(0.5);
                let mut scale = T::one();
                (1..j)
                    .map(|_| {
                        scale *= half;
                        xi * scale
                    })
                    .collect()
            }
            FragmentRule::Table(t) => (1..j).map(|i| t.get(i, j, k)).collect(),
        }
    }

    /// Exact rational row, when every entry is rational.
    pub fn exact_row(&self, j: usize, k: usize) -> Result<Vec<Exact>> {
        if j < 2 {
            return Ok(Vec::new());
        }
        let jj = j as i64;
        match &self.rule {
            FragmentRule::Uniform => Ok(vec![Exact::new(2.into(), (jj - 1).into()); j - 1]),
            FragmentRule::PowerLaw(nu) => {
                let n = integer_exponent(*nu).ok_or_else(|| {
                    Error::Mode(format!("power law with non-integer exponent {nu} has irrational entries"))
                })?;
                let norm = (1..jj).fold(Exact::zero(), |s, l| s + exact::powi(l, n + 1));
                Ok((1..jj).map(|i| exact::powi(i, n) * exact::int(jj) / &norm).collect())
            }
            FragmentRule::Monomer => {
                let mut r = vec![Exact::zero(); j - 1];
                r[0] = exact::int(jj);
                Ok(r)
            }
            FragmentRule::Exponential => {
                let x = xi(j)?;
                Ok((1..j).map(|i| &x / Exact::from_integer(exact::pow2(i))).collect())
            }
            FragmentRule::Table(t) => {
                if !t.is_exact() {
                    return Err(Error::Mode("table was built from floating-point values".into()));
                }
                Ok((1..j).map(|i| t.get_exact(i, j, k).unwrap_or_default()).collect())
            }
        }
    }

    /// Whether [`Self::exact_row`] succeeds for this rule.
    pub fn has_exact_entries(&self) -> bool {
        match &self.rule {
            FragmentRule::PowerLaw(nu) => integer_exponent(*nu).is_some(),
            FragmentRule::Table(t) => t.is_exact(),
            _ => true,
        }
    }
}

fn integer_exponent<T: Real>(nu: T) -> Option<i64> {
    let n = nu.as_f64();
    (n == n.round() && n.abs() <= 1024.0).then_some(n as i64)
}

/// `ξ(z) = z 2^{z−1} / (2^z − z − 1)` for `z ≥ 2`, exactly.
pub fn xi(z: usize) -> Result<Exact> {
    if z < 2 {
        return Err(Error::Domain(format!("ξ(z) needs z ≥ 2, got {z}")));
    }
    let num = exact::int(z as i64) * Exact::from_integer(exact::pow2(z - 1));
    let den = Exact::from_integer(exact::pow2(z)) - exact::int(z as i64 + 1);
    Ok(num / den)
}

/// `ξ(z)` in floating point, rearranged as `(z/2) / (1 − (z+1) 2^{−z})` so it
/// stays finite for large `z`.
pub fn xi_real<T: Real>(z: usize) -> T {
    let zt = T::from_index(z);
    let tail = (zt + T::one()) * T::lit(2.0).powi(-(z.min(i32::MAX as usize) as i32));
    zt * T::lit(0.5) / (T::one() - tail)
}
