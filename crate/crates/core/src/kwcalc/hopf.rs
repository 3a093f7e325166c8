//! Structure constants `x_i x_j = a_ij x_{i+j}` modulo `(β, 8)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::valuation::binomial;
use super::KwError;

pub const MAX_TOTAL: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfTable {
    pub imax: usize,
    pub jmax: usize,
    /// `recursion[i][j]`, from the coproduct recursion.
    pub recursion: Vec<Vec<u8>>,
    /// `binomial[i][j] = C(i+j, i) mod 8`.
    pub binomial: Vec<Vec<u8>>,
    pub mismatches: Vec<(usize, usize)>,
}

impl HopfTable {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u8> {
        self.recursion.get(i)?.get(j).copied()
    }
}

/// Runs `a_ij = Σ_{p=max(0,i−j)}^{i} a_{p,i−p} a_{i−p,j+p−i} (mod 8)` with
/// `a_{i0} = a_{0i} = 1`, and compares with binomials.
pub fn hopf_constants(imax: usize, jmax: usize) -> Result<HopfTable, KwError> {
    let total = imax + jmax;
    if total > MAX_TOTAL {
        return Err(KwError::BoundsExceeded(format!("imax + jmax = {total} exceeds {MAX_TOTAL}")));
    }
    // a[i][j] for i + j <= total
    let mut a = vec![vec![0u8; total + 1]; total + 1];
    for t in 0..=total {
        for i in 0..=t {
            let j = t - i;
            a[i][j] = if i == 0 || j == 0 {
                1
            } else {
                let lo = i.saturating_sub(j);
                (lo..=i).map(|p| a[p][i - p] as u32 * a[i - p][j + p - i] as u32).sum::<u32>() as u8 % 8
            };
        }
    }
    let eight = BigInt::from(8);
    let mut recursion = vec![vec![0u8; jmax + 1]; imax + 1];
    let mut binom = vec![vec![0u8; jmax + 1]; imax + 1];
    let mut mismatches = Vec::new();
    for i in 0..=imax {
        for j in 0..=jmax {
            recursion[i][j] = a[i][j];
            let b = (binomial((i + j) as u64, i as u64) % &eight).to_u8().expect("small");
            binom[i][j] = b;
            if b != a[i][j] {
                mismatches.push((i, j));
            }
        }
    }
    Ok(HopfTable { imax, jmax, recursion, binomial: binom, mismatches })
}
