use std::cmp::Ordering;

/// Largest number of ring variables supported.
pub const MAX_VARS: usize = 12;

/// Exponent ceiling; products reaching it are rejected by the checked operations.
pub const EXPONENT_LIMIT: u64 = 1 << 31;

/// A monomial `x_1^a_1 * ... * x_n^a_n`.
///
/// Exponents live in a fixed inline array; entries past the ring's variable
/// count stay zero. The total degree is cached because the monomial order
/// compares it first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
    deg: u32,
    nvars: u8,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
            nvars: nvars as u8,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = Monomial::one(exps.len());
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().sum();
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Total (unweighted) degree.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exponents()
            .iter()
            .zip(weights)
            .map(|(&a, &w)| a as u64 * w as u64)
            .sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..self.nvars as usize {
            r.exps[i] += other.exps[i];
        }
        r.deg += other.deg;
        r
    }

    /// Product with overflow detection at [`EXPONENT_LIMIT`].
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut r = *self;
        for i in 0..self.nvars as usize {
            let e = self.exps[i] as u64 + other.exps[i] as u64;
            if e >= EXPONENT_LIMIT {
                return None;
            }
            r.exps[i] = e as u32;
        }
        r.deg = r.exponents().iter().map(|&e| e as u64).sum::<u64>().min(u32::MAX as u64) as u32;
        Some(r)
    }

    pub fn checked_pow(&self, k: u64) -> Option<Monomial> {
        let mut r = *self;
        let mut deg = 0u64;
        for i in 0..self.nvars as usize {
            let e = self.exps[i] as u64 * k;
            if e >= EXPONENT_LIMIT {
                return None;
            }
            r.exps[i] = e as u32;
            deg += e;
        }
        r.deg = deg.min(u32::MAX as u64) as u32;
        Some(r)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        (0..self.nvars as usize).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut r = *other;
        for i in 0..self.nvars as usize {
            r.exps[i] -= self.exps[i];
        }
        r.deg -= self.deg;
        r
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        let mut deg = 0;
        for i in 0..self.nvars as usize {
            r.exps[i] = self.exps[i].max(other.exps[i]);
            deg += r.exps[i];
        }
        r.deg = deg;
        r
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        (0..self.nvars as usize).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Index of the only variable occurring, if the monomial is a pure power.
    pub fn pure_power_variable(&self) -> Option<usize> {
        let mut found = None;
        for i in 0..self.nvars as usize {
            if self.exps[i] > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic order with `x_1 > x_2 > ... > x_n`.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..self.nvars as usize).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                // a smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        // x > y > z in degree one
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // degree first
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        // x^2 > xy > y^2 > xz > yz > z^2
        let chain = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in chain.windows(2) {
            assert!(w[0] > w[1], "{:?} > {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert!(m(&[1, 1]).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(m(&[1, 1]).quotient_of(&a), m(&[1, 0]));
        assert_eq!(m(&[0, 4]).pure_power_variable(), Some(1));
        assert_eq!(a.pure_power_variable(), None);
    }

    #[test]
    fn overflow_is_detected() {
        let big = m(&[1 << 30, 0]);
        assert!(big.checked_mul(&big).is_none());
        assert!(m(&[3, 1]).checked_pow(1 << 30).is_none());
    }
}
