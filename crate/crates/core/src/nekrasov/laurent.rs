//! Exact Laurent polynomials in one formal variable with i64 coefficients.
//!
//! The variable is x = q^{1/2} = e^{i eps/2}; keeping half-integer powers of
//! q as integer powers of x makes every character manipulation exact. The
//! only division ever needed is by x^2 - 1, which must be exact (a non-zero
//! remainder means a bug upstream, not a numerical issue).

/// coeffs[k] is the coefficient of x^{lo + k}; empty means zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    lo: i64,
    coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(coeff: i64, power: i64) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        Laurent {
            lo: power,
            coeffs: vec![coeff],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.lo += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(other.lo + other.coeffs.len() as i64);
        let mut coeffs = vec![0i64; (hi - lo) as usize];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + k] += c;
        }
        for (k, &c) in other.coeffs.iter().enumerate() {
            coeffs[(other.lo - lo) as usize + k] += c;
        }
        Laurent { lo, coeffs }.trim()
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, s: i64) -> Laurent {
        if s == 0 {
            return Laurent::zero();
        }
        Laurent {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            lo: self.lo + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// x -> 1/x.
    pub fn conj(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let hi = self.lo + self.coeffs.len() as i64 - 1;
        Laurent {
            lo: -hi,
            coeffs: self.coeffs.iter().rev().copied().collect(),
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent {
            lo: self.lo + other.lo,
            coeffs,
        }
        .trim()
    }

    /// Exact division by x^2 - 1; None when the remainder is nonzero.
    pub fn div_exact_x2_minus_1(&self) -> Option<Laurent> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n < 3 {
            return None;
        }
        let mut quot = vec![0i64; n - 2];
        // Divide from the top: x^m = q_{m-2} (x^2 - 1) + lower.
        for m in (2..n).rev() {
            let q = rem[m];
            quot[m - 2] = q;
            rem[m] = 0;
            rem[m - 2] += q;
        }
        if rem[0] != 0 || rem[1] != 0 {
            return None;
        }
        Some(
            Laurent {
                lo: self.lo,
                coeffs: quot,
            }
            .trim(),
        )
    }

    /// Iterate (power, coefficient) over nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.lo + k as i64, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_terms(terms: &[(i64, i64)]) -> Laurent {
        terms
            .iter()
            .fold(Laurent::zero(), |acc, &(p, c)| {
                acc.add(&Laurent::monomial(c, p))
            })
    }

    #[test]
    fn mul_and_conj() {
        // (x - x^{-1}) * (x^{-1} - x) = -(x^2 - 2 + x^{-2})
        let f = from_terms(&[(1, 1), (-1, -1)]);
        let g = f.conj();
        let prod = f.mul(&g);
        assert_eq!(
            prod.terms().collect::<Vec<_>>(),
            vec![(-2, -1), (0, 2), (2, -1)]
        );
    }

    #[test]
    fn exact_division() {
        // (x^2 - 1)(x^3 + 2x - 7 x^{-4})
        let d = from_terms(&[(2, 1), (0, -1)]);
        let q = from_terms(&[(3, 1), (1, 2), (-4, -7)]);
        let p = d.mul(&q);
        assert_eq!(p.div_exact_x2_minus_1().unwrap(), q);
        // and a non-multiple fails
        let bad = p.add(&Laurent::monomial(1, 0));
        assert!(bad.div_exact_x2_minus_1().is_none());
    }
}
