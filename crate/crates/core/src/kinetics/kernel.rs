use crate::error::{Error, Result};
use crate::kinetics::{ValidationReport, WeightSequence};
use crate::scalar::Real;

/// Rule producing the collision rates `Γ_{i,j}`.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelRule<T> {
    /// `Γ_{i,j} = c`.
    Constant(T),
    /// `Γ_{i,j} = (ij)^α`.
    ProductPower(T),
    /// `Γ_{i,j} = Λ_i Λ_j`.
    LambdaProduct(WeightSequence<T>),
    /// Dense `p × p` table, row-major, 1-based sizes mapped to 0-based storage.
    Table { p: usize, values: Vec<T> },
}

/// Collision kernel together with an optional Λ-domination certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct CollisionKernel<T> {
    rule: KernelRule<T>,
    certificate: Option<WeightSequence<T>>,
}

impl<T: Real> CollisionKernel<T> {
    pub fn constant(c: T) -> Result<Self> {
        if !(c >= T::zero()) || !c.is_finite() {
            return Err(Error::Argument(format!("constant kernel must be finite and non-negative, got {c}")));
        }
        Ok(Self { rule: KernelRule::Constant(c), certificate: None })
    }

    pub fn product_power(alpha: T) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Argument(format!("kernel exponent must be finite, got {alpha}")));
        }
        Ok(Self { rule: KernelRule::ProductPower(alpha), certificate: None })
    }

    /// `Γ_{i,j} = Λ_i Λ_j`, which carries its own certificate.
    pub fn lambda_product(lambda: WeightSequence<T>) -> Self {
        Self { rule: KernelRule::LambdaProduct(lambda.clone()), certificate: Some(lambda) }
    }

    /// Table kernel from `p` rows of length `p`. Symmetry is not enforced here;
    /// [`crate::kinetics::validate_kernel`] reports it.
    pub fn table(rows: Vec<Vec<T>>) -> Result<Self> {
        let p = rows.len();
        if p == 0 {
            return Err(Error::Argument("empty kernel table".into()));
        }
        let mut values = Vec::with_capacity(p * p);
        for row in rows {
            if row.len() != p {
                return Err(Error::Dimension { expected: p, got: row.len() });
            }
            values.extend(row);
        }
        Ok(Self { rule: KernelRule::Table { p, values }, certificate: None })
    }

    /// Attaches a Λ sequence claimed to satisfy `Γ_{i,j} ≤ Λ_i Λ_j`.
    pub fn with_certificate(mut self, lambda: WeightSequence<T>) -> Self {
        self.certificate = Some(lambda);
        self
    }

    pub fn rule(&self) -> &KernelRule<T> {
        &self.rule
    }

    pub fn certificate(&self) -> Option<&WeightSequence<T>> {
        self.certificate.as_ref()
    }

    /// Largest size the rule is defined for, if bounded.
    pub fn max_size(&self) -> Option<usize> {
        match &self.rule {
            KernelRule::Table { p, .. } => Some(*p),
            _ => None,
        }
    }

    /// `Γ_{i,j}` for `i, j ≥ 1`. Table entries outside the table read as zero.
    pub fn rate(&self, i: usize, j: usize) -> T {
        match &self.rule {
            KernelRule::Constant(c) => *c,
            KernelRule::ProductPower(alpha) => (T::from_index(i) * T::from_index(j)).powf(*alpha),
            KernelRule::LambdaProduct(l) => l.get(i) * l.get(j),
            KernelRule::Table { p, values } => {
                if i > *p || j > *p {
                    T::zero()
                } else {
                    values[(i - 1) * p + (j - 1)]
                }
            }
        }
    }

    /// Dense `p × p` matrix `Γ_{i,j}`, row-major with 0-based storage.
    pub fn matrix(&self, p: usize) -> Vec<T> {
        let mut m = Vec::with_capacity(p * p);
        for i in 1..=p {
            for j in 1..=p {
                m.push(self.rate(i, j));
            }
        }
        m
    }

    pub fn is_identically_zero(&self, p: usize) -> bool {
        self.matrix(p).iter().all(|&g| g == T::zero())
    }
}

/// Certifies symmetry and non-negativity of `Γ` over `1..=p`, and, when a Λ
/// sequence is given (or attached to the kernel), `Γ_{i,j} ≤ Λ_i Λ_j`.
///
/// Floating comparisons for the domination bound allow a relative slack of
/// `1e-12`; symmetry and sign are checked exactly.
pub fn validate_kernel<T: Real>(
    gamma: &CollisionKernel<T>,
    lambda: Option<&WeightSequence<T>>,
    p: usize,
) -> Result<ValidationReport> {
    if p < 2 {
        return Err(Error::Range(format!("kernel validation needs p ≥ 2, got {p}")));
    }
    if let Some(max) = gamma.max_size() {
        if p > max {
            return Err(Error::Range(format!("kernel table has size {max}, asked for p = {p}")));
        }
    }
    let mut report = ValidationReport::new("collision kernel");
    let m = gamma.matrix(p);
    let at = |i: usize, j: usize| m[(i - 1) * p + (j - 1)];
    for i in 1..=p {
        for j in 1..=p {
            let g = at(i, j);
            report.record(if g >= T::zero() && g.is_finite() { 0.0 } else { -1.0 }, || {
                format!("Γ_{{{i},{j}}} = {g} is negative or not finite")
            });
            if j > i {
                let h = at(j, i);
                report.record_bool(g == h, || format!("asymmetric at ({i},{j}): Γ_{{{i},{j}}} = {g}, Γ_{{{j},{i}}} = {h}"));
            }
        }
    }
    if let Some(lam) = lambda.or(gamma.certificate()) {
        let l = lam.take(p);
        for i in 1..=p {
            for j in 1..=p {
                let bound = (l[i - 1] * l[j - 1]).as_f64();
                let g = at(i, j).as_f64();
                let slack = bound - g + 1e-12 * bound.abs().max(g.abs());
                report.record(slack, || format!("Γ_{{{i},{j}}} = {g} exceeds Λ_{i}Λ_{j} = {bound}"));
            }
        }
        report.note("Λ-domination checked");
    }
    Ok(report)
}
