//! The truncated breakage system: vector field, Jacobian and weak form.
//!
//! For sizes `1 ≤ i ≤ p`,
//!
//! ```text
//! dψ_i/dt = Σ_{j=i+1}^{p} Σ_{k=1}^{p} Γ_{j,k} φ_{i,j;k} ψ_j ψ_k − [i ≠ 1] Σ_{j=1}^{p} Γ_{i,j} ψ_i ψ_j
//! ```
//!
//! Monomers never break, which is a structural branch on `i == 1` rather than
//! a kinetic coefficient.

mod moments;
mod state;

pub use moments::{mass, moments, number, tail_moment, weighted, MomentReport};
pub use state::StateVector;

use crate::error::{Error, Result};
use crate::kinetics::{validate_kernel, validate_lmc1, CollisionKernel, FragmentDistribution, Lmc1Mode};
use crate::linalg::Matrix;
use crate::scalar::Real;
use crate::sum::{Accumulator, Summation};

/// Kinetic data and truncation size.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig<T> {
    pub p: usize,
    pub kernel: CollisionKernel<T>,
    pub fragments: FragmentDistribution<T>,
}

impl<T: Real> SystemConfig<T> {
    pub fn new(p: usize, kernel: CollisionKernel<T>, fragments: FragmentDistribution<T>) -> Self {
        Self { p, kernel, fragments }
    }
}

/// Strategy for the gain double sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluation {
    /// `Σ_j Σ_k Γ_{j,k} φ_{i,j;k} ψ_j ψ_k`, ascending `j` then `k`.
    Direct,
    /// `Σ_j φ_{i,j} ψ_j R_j` with `R_j = Σ_k Γ_{j,k} ψ_k`; needs `φ`
    /// independent of `k`.
    Factored,
}

#[derive(Debug, Clone)]
enum FragmentStore<T> {
    /// `rows[j][i − 1] = φ_{i,j}`.
    Rows(Vec<Vec<T>>),
    /// `values[((k−1) p + (j−1)) p + (i−1)] = φ_{i,j;k}`.
    Full(Vec<T>),
}

/// Gain and loss parts of the vector field.
#[derive(Debug, Clone, PartialEq)]
pub struct ReactionTerms<T> {
    pub gain: Vec<T>,
    pub loss: Vec<T>,
}

/// A validated truncated system with precomputed kernel and fragment tables.
#[derive(Debug, Clone)]
pub struct System<T> {
    config: SystemConfig<T>,
    gamma: Vec<T>,
    fragments: FragmentStore<T>,
    evaluation: Evaluation,
    summation: Summation,
}

impl<T: Real> System<T> {
    /// Validates the kernel (symmetry, sign, attached certificate) and the
    /// fragment distribution (sign, local mass conservation to `1e-12`
    /// relative) over `1..=p`, then precomputes the tables.
    pub fn new(config: SystemConfig<T>) -> Result<Self> {
        let p = config.p;
        if p < 2 {
            return Err(Error::Range(format!("truncation size must be ≥ 2, got {p}")));
        }
        let kernel_report = validate_kernel(&config.kernel, None, p)?;
        if !kernel_report.certified {
            return Err(Error::Validation(kernel_report.to_string()));
        }
        let phi = &config.fragments;
        let lmc1 = validate_lmc1(phi, p, if phi.is_k_independent() { 1 } else { p }, Lmc1Mode::Tolerance(1e-12))?;
        if !lmc1.certified {
            return Err(Error::Validation(format!(
                "fragment distribution {} violates local mass conservation at (j, k) = {:?}",
                phi.name(),
                lmc1.first_failure.unwrap_or_default()
            )));
        }
        let fragments = if phi.is_k_independent() {
            FragmentStore::Rows((0..=p).map(|j| phi.row(j, 1)).collect())
        } else {
            let mut values = vec![T::zero(); p * p * p];
            for k in 1..=p {
                for j in 2..=p {
                    for (idx, v) in phi.row(j, k).into_iter().enumerate() {
                        values[((k - 1) * p + (j - 1)) * p + idx] = v;
                    }
                }
            }
            FragmentStore::Full(values)
        };
        let stored = match &fragments {
            FragmentStore::Rows(r) => r.iter().flatten().copied().collect::<Vec<_>>(),
            FragmentStore::Full(v) => v.clone(),
        };
        if let Some(v) = stored.iter().find(|v| !(**v >= T::zero()) || !v.is_finite()) {
            return Err(Error::Validation(format!("fragment distribution has entry {v}")));
        }
        let evaluation = if phi.is_k_independent() { Evaluation::Factored } else { Evaluation::Direct };
        Ok(Self { gamma: config.kernel.matrix(p), config, fragments, evaluation, summation: Summation::Ordered })
    }

    /// Forces an evaluation strategy. `Factored` requires a `k`-independent `φ`.
    pub fn with_evaluation(mut self, evaluation: Evaluation) -> Result<Self> {
        if evaluation == Evaluation::Factored && matches!(self.fragments, FragmentStore::Full(_)) {
            return Err(Error::Argument("factored evaluation needs a k-independent fragment distribution".into()));
        }
        self.evaluation = evaluation;
        Ok(self)
    }

    pub fn with_summation(mut self, summation: Summation) -> Self {
        self.summation = summation;
        self
    }

    pub fn p(&self) -> usize {
        self.config.p
    }

    pub fn config(&self) -> &SystemConfig<T> {
        &self.config
    }

    pub fn evaluation(&self) -> Evaluation {
        self.evaluation
    }

    /// `Γ_{i,j}`, 1-based.
    #[inline]
    pub fn gamma(&self, i: usize, j: usize) -> T {
        self.gamma[(i - 1) * self.p() + (j - 1)]
    }

    pub fn gamma_max(&self) -> T {
        self.gamma.iter().fold(T::zero(), |m, &g| m.max(g))
    }

    /// `φ_{i,j;k}`, 1-based; zero unless `i < j`.
    #[inline]
    pub fn phi(&self, i: usize, j: usize, k: usize) -> T {
        if i >= j {
            return T::zero();
        }
        match &self.fragments {
            FragmentStore::Rows(rows) => rows[j][i - 1],
            FragmentStore::Full(v) => {
                let p = self.p();
                v[((k - 1) * p + (j - 1)) * p + (i - 1)]
            }
        }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.p() {
            return Err(Error::Dimension { expected: self.p(), got: n });
        }
        Ok(())
    }

    /// `R_j = Σ_k Γ_{j,k} ψ_k`, ascending `k`.
    fn collision_rates(&self, psi: &[T]) -> Vec<T> {
        let p = self.p();
        (1..=p)
            .map(|j| {
                let mut acc = Accumulator::new(self.summation);
                for k in 1..=p {
                    acc.add(self.gamma(j, k) * psi[k - 1]);
                }
                acc.value()
            })
            .collect()
    }

    /// Gain and loss terms at `psi`.
    pub fn reaction_terms(&self, psi: &[T]) -> Result<ReactionTerms<T>> {
        self.check_dim(psi.len())?;
        let p = self.p();
        let mut gain = vec![T::zero(); p];
        let mut loss = vec![T::zero(); p];
        match self.evaluation {
            Evaluation::Factored => {
                let rates = self.collision_rates(psi);
                for i in 1..=p {
                    let mut acc = Accumulator::new(self.summation);
                    for j in i + 1..=p {
                        acc.add(self.phi(i, j, 1) * psi[j - 1] * rates[j - 1]);
                    }
                    gain[i - 1] = acc.value();
                    if i != 1 {
                        loss[i - 1] = psi[i - 1] * rates[i - 1];
                    }
                }
            }
            Evaluation::Direct => {
                for i in 1..=p {
                    let mut acc = Accumulator::new(self.summation);
                    for j in i + 1..=p {
                        for k in 1..=p {
                            acc.add(self.gamma(j, k) * self.phi(i, j, k) * psi[j - 1] * psi[k - 1]);
                        }
                    }
                    gain[i - 1] = acc.value();
                    if i != 1 {
                        let mut acc = Accumulator::new(self.summation);
                        for j in 1..=p {
                            acc.add(self.gamma(i, j) * psi[i - 1] * psi[j - 1]);
                        }
                        loss[i - 1] = acc.value();
                    }
                }
            }
        }
        Ok(ReactionTerms { gain, loss })
    }

    /// `dψ/dt` written into `out`.
    pub fn rhs_into(&self, psi: &[T], out: &mut [T]) -> Result<()> {
        self.check_dim(out.len())?;
        let ReactionTerms { gain, loss } = self.reaction_terms(psi)?;
        for ((o, g), l) in out.iter_mut().zip(gain).zip(loss) {
            *o = g - l;
        }
        Ok(())
    }

    /// `dψ/dt` at an arbitrary (possibly slightly negative) point.
    pub fn rhs_slice(&self, psi: &[T]) -> Result<Vec<T>> {
        let mut out = vec![T::zero(); self.p()];
        self.rhs_into(psi, &mut out)?;
        Ok(out)
    }

    pub fn rhs(&self, state: &StateVector<T>) -> Result<Vec<T>> {
        self.rhs_slice(state.as_slice())
    }

    /// `J_{i,l} = ∂(dψ_i/dt)/∂ψ_l`, 0-based storage.
    pub fn jacobian_slice(&self, psi: &[T]) -> Result<Matrix<T>> {
        self.check_dim(psi.len())?;
        let p = self.p();
        let rates = self.collision_rates(psi);
        let mut jac = Matrix::zeros(p);
        for i in 1..=p {
            for l in 1..=p {
                let mut acc = Accumulator::new(self.summation);
                for j in i + 1..=p {
                    acc.add(self.phi(i, j, l) * self.gamma(j, l) * psi[j - 1]);
                }
                if l > i {
                    match self.evaluation {
                        Evaluation::Factored => acc.add(self.phi(i, l, 1) * rates[l - 1]),
                        Evaluation::Direct => {
                            for k in 1..=p {
                                acc.add(self.phi(i, l, k) * self.gamma(l, k) * psi[k - 1]);
                            }
                        }
                    }
                }
                let mut v = acc.value();
                if i != 1 {
                    v -= self.gamma(i, l) * psi[i - 1];
                    if i == l {
                        v -= rates[i - 1];
                    }
                }
                jac[(i - 1, l - 1)] = v;
            }
        }
        Ok(jac)
    }

    pub fn jacobian(&self, state: &StateVector<T>) -> Result<Matrix<T>> {
        self.jacobian_slice(state.as_slice())
    }

    /// `Σ_{j=2}^{p} Σ_{k=1}^{p} (υ_j − Σ_{i<j} υ_i φ_{i,j;k}) Γ_{j,k} ψ_j ψ_k`.
    pub fn dissipation(&self, psi: &[T], upsilon: &[T]) -> Result<T> {
        self.check_dim(psi.len())?;
        self.check_dim(upsilon.len())?;
        let p = self.p();
        let mut total = T::zero();
        for j in 2..=p {
            for k in 1..=p {
                let mut inner = T::zero();
                for i in 1..j {
                    inner += upsilon[i - 1] * self.phi(i, j, k);
                }
                total += (upsilon[j - 1] - inner) * self.gamma(j, k) * psi[j - 1] * psi[k - 1];
            }
        }
        Ok(total)
    }

    /// `Σ υ_i (dψ_i/dt) + dissipation(υ)`, which vanishes identically.
    pub fn weak_form_residual(&self, state: &StateVector<T>, deriv: &[T], upsilon: &[T]) -> Result<T> {
        self.check_dim(deriv.len())?;
        let psi = state.as_slice();
        let transport = weighted(deriv, |i| upsilon[i - 1]);
        Ok(transport + self.dissipation(psi, upsilon)?)
    }

    /// `‖dψ/dt‖₁`.
    pub fn rhs_l1(&self, psi: &[T]) -> Result<T> {
        Ok(self.rhs_slice(psi)?.iter().fold(T::zero(), |s, v| s + v.abs()))
    }
}
