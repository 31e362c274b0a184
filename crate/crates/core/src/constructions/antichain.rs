use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::binomial;

/// Width parameters for a layer that must hold an antichain of size `m`.
///
/// `w` is the smallest cube dimension holding an `m`-antichain, `h` is
/// `⌊(w−1)/2⌋`, and `x` is the smallest value with `C(x+h, h) ≥ m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AntichainParams {
    pub m: usize,
    pub w: u32,
    pub h: u32,
    pub x: u32,
    /// True when `h = 0` left `x` undefined and `(2, 1, 1)` was substituted.
    pub patched: bool,
}

impl AntichainParams {
    /// `h + x`, the width one layer consumes in the seed cube.
    pub fn span(&self) -> u32 {
        self.h + self.x
    }
}

pub fn antichain_params(m: usize) -> Result<AntichainParams> {
    if m < 2 {
        return Err(Error::Precondition(format!(
            "antichain parameters need m >= 2 (got {m}); unit layers are reduced separately"
        )));
    }
    let m64 = m as u64;
    let w = (1u32..)
        .find(|&w| binomial(w as u64, (w / 2) as u64) >= m64)
        .expect("binomials grow without bound");
    let h = (w - 1) / 2;
    if h == 0 {
        // Only m = 2 reaches here: C(x, 0) = 1 never reaches 2.
        return Ok(AntichainParams { m, w: 2, h: 1, x: 1, patched: true });
    }
    let x = (0u32..)
        .find(|&x| binomial((x + h) as u64, h as u64) >= m64)
        .expect("binomials grow without bound");
    Ok(AntichainParams { m, w, h, x, patched: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let p = antichain_params(3).unwrap();
        assert_eq!((p.w, p.h, p.x, p.patched), (3, 1, 2, false));
        let p = antichain_params(4).unwrap();
        assert_eq!((p.w, p.h, p.x, p.patched), (4, 1, 3, false));
        let p = antichain_params(2).unwrap();
        assert_eq!((p.w, p.h, p.x, p.patched), (2, 1, 1, true));
        assert!(antichain_params(1).is_err());
        assert!(antichain_params(0).is_err());
    }

    #[test]
    fn defining_inequalities_hold() {
        for m in 3..200usize {
            let p = antichain_params(m).unwrap();
            let m = m as u64;
            let (w, h, x) = (p.w as u64, p.h as u64, p.x as u64);
            assert!(binomial(w, w / 2) >= m && m > binomial(w - 1, (w - 1) / 2));
            assert_eq!(h, (w - 1) / 2);
            assert!(binomial(x + h, h) >= m);
            assert!(x == 0 || m > binomial(x - 1 + h, h));
            // x > h always: C(2h, h) < m because 2h < w.
            assert!(x > h);
        }
    }
}
