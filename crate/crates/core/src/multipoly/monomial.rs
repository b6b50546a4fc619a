use std::fmt;

/// Number of variable slots a monomial can hold.
pub const MAX_SLOTS: usize = 16;

/// Exponent vector packed into a u128, one byte per slot, slot 0 in the
/// most significant byte. Integer order on the packed value is lex order
/// with x0 > x1 > ... > x15.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub u128);

#[inline]
fn shift(i: usize) -> u32 {
    8 * (MAX_SLOTS - 1 - i) as u32
}

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_SLOTS, "variable slot out of range");
        Monomial(1u128 << shift(i))
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_SLOTS, "too many variables");
        let mut m = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= 255, "exponent too large");
            m |= (e as u128) << shift(i);
        }
        Monomial(m)
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & 0xff) as u32
    }

    pub fn exps(self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    /// Sum of exponents over slots `from..to`.
    pub fn degree_in(self, from: usize, to: usize) -> u32 {
        (from..to).map(|i| self.exp(i)).sum()
    }

    /// Product; callers guarantee no slot exceeds 255.
    #[inline]
    pub fn mul(self, rhs: Monomial) -> Monomial {
        Monomial(self.0 + rhs.0)
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..MAX_SLOTS).all(|i| self.exp(i) <= other.exp(i))
    }

    /// other / self, assuming `self.divides(other)`.
    pub fn quotient_of(self, other: Monomial) -> Monomial {
        Monomial(other.0 - self.0)
    }

    pub fn with_exp(self, i: usize, e: u32) -> Monomial {
        let cleared = self.0 & !(0xffu128 << shift(i));
        Monomial(cleared | ((e as u128) << shift(i)))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps(MAX_SLOTS))
    }
}
