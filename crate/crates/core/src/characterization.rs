//! The T-map test for 1-Naples parking functions and the Ψ bijection
//! between `PF_{n-1}` and `PF*_{n,n-1}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parking::{is_k_naples, is_parking_function, PreferenceVector};

/// Input and output of T, with the 1-based positions τ decremented.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauTrace {
    pub input: PreferenceVector,
    pub output: PreferenceVector,
    pub decremented: Vec<usize>,
}

/// Applies T left to right. An entry `a_i != 1` (with `i > 1`) drops by one
/// when it equals some already-transformed earlier entry.
pub fn tau_transform(pref: &PreferenceVector) -> TauTrace {
    let n = pref.len();
    let mut seen = vec![false; n + 1];
    let mut out = Vec::with_capacity(n);
    let mut decremented = Vec::new();
    for (i, &a) in pref.entries().iter().enumerate() {
        let t = if i > 0 && a != 1 && seen[a] {
            decremented.push(i + 1);
            a - 1
        } else {
            a
        };
        seen[t] = true;
        out.push(t);
    }
    TauTrace {
        input: pref.clone(),
        output: PreferenceVector::new(out).expect("tau keeps entries in 1..=n"),
        decremented,
    }
}

/// 1-Naples membership decided through T: `α ∈ PF_{n,1}` iff `T(α) ∈ PF_n`.
pub fn is_naples_via_t(pref: &PreferenceVector) -> bool {
    is_parking_function(&tau_transform(pref).output)
}

/// `Ψ(α) = (n + 1 - a_1, ..., n + 1 - a_{n-1}, n)` for a parking function
/// `α` of length `n - 1`.
pub fn psi(pf: &PreferenceVector) -> Result<PreferenceVector> {
    if !is_parking_function(pf) {
        return Err(Error::NotMember(format!("{pf} is not a parking function")));
    }
    let n = pf.len() + 1;
    let mut out: Vec<usize> = pf.entries().iter().map(|&a| n + 1 - a).collect();
    out.push(n);
    PreferenceVector::new(out)
}

/// Inverse of [`psi`]. The input must be `(n-1)`-Naples but not `(n-2)`-Naples.
pub fn psi_inverse(pref: &PreferenceVector) -> Result<PreferenceVector> {
    let n = pref.len();
    if n < 2 || !is_k_naples(pref, n - 1) || is_k_naples(pref, n - 2) {
        return Err(Error::NotMember(format!(
            "{pref} is not in PF*_{{{n},{}}} (needs lookback exactly n - 1)",
            n.saturating_sub(1)
        )));
    }
    let (&last, rest) = pref.entries().split_last().expect("n >= 2");
    assert_eq!(last, n, "every member of PF*_{{n,n-1}} ends in n");
    PreferenceVector::new(rest.iter().map(|&a| n + 1 - a).collect())
}
