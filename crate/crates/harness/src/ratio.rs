//! Exact ratio checks on a single matroid.

use num_rational::Ratio;
use serde::Serialize;
use tuza_core::solver::{solve_nu, solve_tau, SolveStatus, SolverConfig, TriangleSystem};
use tuza_core::{BinaryMatroid, WeightedMatroid};

/// The constant 66/23, kept as a pair of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HaxellConstant {
    pub num: u64,
    pub den: u64,
}

pub const HAXELL: HaxellConstant = HaxellConstant { num: 66, den: 23 };

impl HaxellConstant {
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.num, self.den)
    }

    /// `tau <= (num / den) nu`, compared as `den * tau <= num * nu`.
    pub fn admits(&self, tau: u64, nu: u64) -> bool {
        u128::from(self.den) * u128::from(tau) <= u128::from(self.num) * u128::from(nu)
    }
}

/// `tau / nu` as a reduced fraction; `None` when `nu = 0`.
pub fn ratio(tau: u64, nu: u64) -> Option<Ratio<u64>> {
    (nu > 0).then(|| Ratio::new(tau, nu))
}

/// The outcome of one predicate on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub predicate: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioRecord {
    pub size: usize,
    pub triangles: usize,
    /// `None` when the solver gave up.
    pub nu: Option<u64>,
    pub tau: Option<u64>,
    pub fano_free: bool,
    pub chi: Option<usize>,
    pub failures: Vec<Failure>,
}

impl RatioRecord {
    pub fn solved(&self) -> bool {
        self.nu.is_some() && self.tau.is_some()
    }

    pub fn ratio(&self) -> Option<Ratio<u64>> {
        ratio(self.tau?, self.nu?)
    }
}

/// Predicates shared by every campaign; `check_haxell` applies the 66/23
/// bound, which is only claimed for Fano-free instances.
pub fn check_pair(nu: u64, tau: u64, fano_free: bool, check_haxell: bool) -> Vec<Failure> {
    let mut out = Vec::new();
    if nu > tau {
        out.push(Failure { predicate: "nu<=tau", detail: format!("nu {nu} > tau {tau}") });
    }
    if tau > 3 * nu {
        out.push(Failure { predicate: "tau<=3nu", detail: format!("tau {tau} > 3 nu = {}", 3 * nu) });
    }
    if fano_free && tau > 2 * nu {
        out.push(Failure {
            predicate: "fano-free=>tau<=2nu",
            detail: format!("tau {tau} > 2 nu = {} without a Fano restriction", 2 * nu),
        });
    }
    if fano_free && check_haxell && !HAXELL.admits(tau, nu) {
        out.push(Failure { predicate: "tau<=66/23nu", detail: format!("23 tau = {} > 66 nu = {}", 23 * tau, 66 * nu) });
    }
    out
}

/// Computes `nu`, `tau`, the Fano flag and the critical number of `m` with
/// unit weights and checks the ratio predicates on the solved values.
pub fn ratio_check(m: &BinaryMatroid, config: &SolverConfig) -> RatioRecord {
    let sys = TriangleSystem::from_matroid(&WeightedMatroid::unit(m.clone()));
    let optimum = |status, value: Option<u64>| (status == SolveStatus::Optimal).then_some(value).flatten();
    let nu = solve_nu(&sys, config).ok().and_then(|r| optimum(r.status, r.optimum));
    let tau = solve_tau(&sys, config).ok().and_then(|r| optimum(r.status, r.optimum));
    let fano_free = m.is_fano_free();
    let chi = m.critical_number().ok();
    let failures = match (nu, tau) {
        (Some(n), Some(t)) => check_pair(n, t, fano_free, true),
        _ => Vec::new(),
    };
    RatioRecord { size: m.len(), triangles: sys.len(), nu, tau, fano_free, chi, failures }
}
