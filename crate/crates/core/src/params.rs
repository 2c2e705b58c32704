//! The constant hierarchy threaded through every procedure.

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::Rational;

/// Pipeline constants. All thresholds are exact rationals; only roots
/// (`√η`, `η^{1/3}`, `η^{1/4}`) are approximated, see [`Parameters::root`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Parameters {
    #[serde(with = "crate::ratio_serde")]
    pub eps: Rational,
    #[serde(with = "crate::ratio_serde")]
    pub eta: Rational,
    #[serde(with = "crate::ratio_serde")]
    pub alpha: Rational,
    /// Near-completeness slack allowed to a typical vertex of the extremal engine.
    #[serde(with = "crate::ratio_serde")]
    pub alpha_prime: Rational,
    #[serde(with = "crate::ratio_serde")]
    pub beta: Rational,
    #[serde(with = "crate::ratio_serde")]
    pub gamma: Rational,
    /// Overrides `c₀ = η⁶/64`.
    #[serde(with = "crate::ratio_serde::option")]
    pub c0: Option<Rational>,
    /// Desk-scale override of the initial class size `t₀`.
    pub class_size: Option<usize>,
    /// Smallest class size a cover block may have. Connecting requires 19.
    pub min_class: usize,
    /// When false, connecting accepts blocks with classes below 19 (only
    /// meaningful for tiny oracle-checked instances).
    pub enforce_connect_floor: bool,
    /// Restarts for heuristic searches.
    pub restarts: usize,
    pub seed: u64,
}

/// Minimum color-class size required to connect two blocks.
pub const CONNECT_CLASS_FLOOR: usize = 19;

impl Default for Parameters {
    fn default() -> Self {
        Parameters {
            eps: Rational::new(1, 1000),
            eta: Rational::new(1, 10),
            alpha: Rational::new(1, 4),
            alpha_prime: Rational::new(1, 100),
            beta: Rational::new(1, 20),
            gamma: Rational::new(3, 10),
            c0: None,
            class_size: None,
            min_class: CONNECT_CLASS_FLOOR,
            enforce_connect_floor: true,
            restarts: 20,
            seed: 0,
        }
    }
}

impl Parameters {
    pub fn c0(&self) -> Rational {
        self.c0.unwrap_or_else(|| pow(self.eta, 6) / Rational::from_integer(64))
    }

    /// `cᵢ = η^{2i}·c₀`.
    pub fn c_i(&self, i: u32) -> Rational {
        pow(self.eta, 2 * i) * self.c0()
    }

    /// `tᵢ = ⌊cᵢ·log₂ n⌋`.
    pub fn log_class_size(&self, i: u32, n: usize) -> usize {
        let c = self.c_i(i).to_f64().unwrap_or(0.0);
        (c * log2(n)).floor().max(0.0) as usize
    }

    /// Initial class size actually used: the override if present, otherwise
    /// `t₀` clamped from below by `min_class`.
    pub fn t0(&self, n: usize) -> usize {
        self.class_size.unwrap_or_else(|| self.log_class_size(0, n).max(self.min_class)).max(1)
    }

    /// Class size after one refinement round: `t_{i+1} = ⌊η²·tᵢ⌋`.
    pub fn next_t(&self, t: usize) -> usize {
        let r = self.eta * self.eta * Rational::from_integer(t as i64);
        r.floor().to_integer().max(0) as usize
    }

    /// Whether `ε ≤ η³ ≤ α⁹`. At desk scale this usually fails; callers treat
    /// it as a warning.
    pub fn hierarchy_ok(&self) -> bool {
        let e3 = pow(self.eta, 3);
        self.eps <= e3 && e3 <= pow(self.alpha, 9)
    }

    pub fn validate(&self) -> Result<(), crate::error::Precondition> {
        let unit = |name: &str, x: Rational| {
            if x > Rational::zero() && x < Rational::one() {
                Ok(())
            } else {
                Err(crate::error::Precondition::new(format!("{name} = {x} must lie in (0,1)")))
            }
        };
        unit("eps", self.eps)?;
        unit("eta", self.eta)?;
        unit("alpha", self.alpha)?;
        unit("alpha_prime", self.alpha_prime)?;
        unit("beta", self.beta)?;
        unit("gamma", self.gamma)?;
        if self.min_class == 0 {
            return Err(crate::error::Precondition::new("min_class must be positive"));
        }
        Ok(())
    }

    /// Rational approximation of `x^{1/k}` with denominator 10⁶, rounded
    /// down when `down` is set and up otherwise.
    pub fn root(x: Rational, k: u32, down: bool) -> Rational {
        let f = x.to_f64().unwrap_or(0.0).powf(1.0 / k as f64) * 1e6;
        let num = if down { f.floor() } else { f.ceil() } as i64;
        Rational::new(num, 1_000_000)
    }

    pub fn sqrt_eta(&self, down: bool) -> Rational {
        Self::root(self.eta, 2, down)
    }
}

pub fn pow(x: Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

pub fn log2(n: usize) -> f64 {
    (n.max(1) as f64).log2()
}

/// `⌈x⌉` for non-negative rationals as `usize`.
pub fn ceil_usize(x: Rational) -> usize {
    x.ceil().to_integer().max(0) as usize
}

pub fn floor_usize(x: Rational) -> usize {
    x.floor().to_integer().max(0) as usize
}

pub fn int(x: usize) -> Rational {
    Rational::from_integer(x as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_i_follows_eta_powers() {
        let p = Parameters::default();
        assert_eq!(p.c0(), Rational::new(1, 64_000_000));
        assert_eq!(p.c_i(1), Rational::new(1, 6_400_000_000));
        // c₀ log₂ n is far below 1 at any desk-scale n.
        assert_eq!(p.log_class_size(0, 1 << 20), 0);
        assert_eq!(p.t0(300), CONNECT_CLASS_FLOOR);
    }

    #[test]
    fn default_hierarchy_is_soft_failure() {
        let p = Parameters::default();
        assert!(p.validate().is_ok());
        // ε = η³ holds, η³ ≤ α⁹ does not.
        assert!(!p.hierarchy_ok());
    }

    #[test]
    fn roots_bracket() {
        let eta = Rational::new(1, 10);
        let lo = Parameters::root(eta, 2, true);
        let hi = Parameters::root(eta, 2, false);
        assert!(lo * lo <= eta && hi * hi >= eta);
        assert!(hi - lo <= Rational::new(1, 1_000_000));
    }

    #[test]
    fn params_roundtrip_json() {
        let p = Parameters { class_size: Some(25), ..Default::default() };
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"1/1000\""));
        let q: Parameters = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        let partial: Parameters = serde_json::from_str(r#"{"eps": "1/500", "alpha": 0.25}"#).unwrap();
        assert_eq!(partial.eps, Rational::new(1, 500));
        assert_eq!(partial.alpha, Rational::new(1, 4));
    }
}
