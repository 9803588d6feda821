use serde::{Deserialize, Serialize};

use crate::dissrange::hyper_g;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    /// `ν|k|²`
    Standard,
    /// `ν m(|k|)²`, `m(r) = r^{5/4} / g(r)`
    Hyper,
    /// Euler
    None,
}

/// Fourier symbol of the dissipative term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DissipationOperator {
    pub kind: OperatorKind,
    pub nu: f64,
    /// Exponent `γ` in `g(r) = log^γ(2 + r²)`.
    pub g_exponent: f64,
}

impl DissipationOperator {
    pub fn standard(nu: f64) -> Self {
        Self { kind: OperatorKind::Standard, nu, g_exponent: 0.25 }
    }

    pub fn hyper(nu: f64) -> Self {
        Self { kind: OperatorKind::Hyper, nu, g_exponent: 0.25 }
    }

    pub fn inviscid() -> Self {
        Self { kind: OperatorKind::None, nu: 0.0, g_exponent: 0.25 }
    }

    /// `m(r)²` as a function of `r² = |k|²`.
    pub fn m_squared(&self, k2: f64) -> f64 {
        if k2 == 0.0 {
            return 0.0;
        }
        let r = k2.sqrt();
        r.powf(2.5) / hyper_g(r, self.g_exponent).powi(2)
    }

    /// Symbol of `D²`: `|k|²` for the standard operator, `m(|k|)²` for the hyper one.
    pub fn d_squared(&self, k2: f64) -> f64 {
        match self.kind {
            OperatorKind::Hyper => self.m_squared(k2),
            OperatorKind::Standard | OperatorKind::None => k2,
        }
    }

    /// Decay rate of mode `k`, as a function of `|k|²`.
    pub fn symbol(&self, k2: f64) -> f64 {
        match self.kind {
            OperatorKind::None => 0.0,
            _ => self.nu * self.d_squared(k2),
        }
    }

    /// Radius above which `m(r)² > r²`, i.e. where `r^{1/2} > g(r)²`.
    pub fn hyper_crossover(&self) -> Option<f64> {
        let h = |r: f64| r.sqrt() - hyper_g(r, self.g_exponent).powi(2);
        let (mut lo, mut hi) = (1e-6, 1e6);
        if h(lo) > 0.0 || h(hi) <= 0.0 {
            return None;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if h(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_vanish_at_zero_and_grow() {
        for op in [DissipationOperator::standard(0.1), DissipationOperator::hyper(0.1)] {
            assert_eq!(op.symbol(0.0), 0.0);
            let mut prev = 0.0;
            for k2 in 1..2000 {
                let s = op.symbol(k2 as f64);
                assert!(s >= prev);
                prev = s;
            }
        }
        assert_eq!(DissipationOperator::inviscid().symbol(25.0), 0.0);
    }

    #[test]
    fn m_of_eight() {
        let op = DissipationOperator::hyper(1.0);
        let m8 = 8f64.powf(1.25) / 66f64.ln().powf(0.25);
        assert!((op.m_squared(64.0) - m8 * m8).abs() < 1e-12 * m8 * m8);
    }

    #[test]
    fn crossover_splits_lattice() {
        let op = DissipationOperator::hyper(1.0);
        let rc = op.hyper_crossover().unwrap();
        assert!(rc > 1.0 && rc < 2f64.sqrt());
        for k2 in 1..=3 * 32 * 32 {
            let k2 = k2 as f64;
            assert_eq!(op.m_squared(k2) > k2, k2.sqrt() > rc, "k2 = {k2}");
            if k2 >= 4.0 {
                assert!(op.m_squared(k2) < k2 * k2.sqrt().sqrt());
            }
        }
    }
}
