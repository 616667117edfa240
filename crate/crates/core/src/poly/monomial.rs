use std::fmt;

/// Exponent vector of a monomial `z_0^{e_0} ... z_n^{e_n}`.
///
/// The derived ordering is lexicographic on the exponents; term orders used
/// by the Gröbner machinery live in [`crate::milnor::MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    /// The pure power `z_var^exp`.
    pub fn pure_power(num_vars: usize, var: usize, exp: u32) -> Self {
        let mut e = vec![0; num_vars];
        e[var] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `Some(var)` when the monomial is `z_var^e` with `e > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut nonzero = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise `<=`, i.e. divisibility.
    pub fn le_componentwise(&self, other: &Monomial) -> bool {
        self.divides(other)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Writes the monomial with the given variable names, `1` for the constant.
    pub fn fmt_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (e, name) in self.0.iter().zip(names) {
            if *e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(name)?;
            if *e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

impl From<Vec<u32>> for Monomial {
    fn from(e: Vec<u32>) -> Self {
        Monomial(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::new(vec![2, 1]);
        let b = Monomial::new(vec![1, 3]);
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b), Monomial::new(vec![2, 3]));
        assert_eq!(a.lcm(&b).div(&a), Monomial::new(vec![0, 2]));
        assert!(Monomial::new(vec![2, 0]).is_coprime(&Monomial::new(vec![0, 5])));
    }

    #[test]
    fn pure_powers() {
        assert_eq!(Monomial::new(vec![0, 4, 0]).pure_power_var(), Some(1));
        assert_eq!(Monomial::new(vec![1, 4, 0]).pure_power_var(), None);
        assert_eq!(Monomial::one(3).pure_power_var(), None);
    }
}
