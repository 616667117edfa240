use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational};

/// A polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored and every monomial has exactly
/// `num_vars` exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(vars: Vec<String>) -> Self {
        assert!(!vars.is_empty(), "a polynomial needs at least one variable");
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// Default variable names `x0, x1, ...`.
    pub fn default_vars(num_vars: usize) -> Vec<String> {
        (0..num_vars).map(|i| format!("x{}", i)).collect()
    }

    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Self {
        let n = vars.len();
        Polynomial::from_terms(vars, [(Monomial::one(n), c)])
    }

    /// `Σ z_j^{a_j}`.
    pub fn brieskorn(exponents: &[u32]) -> Self {
        let n = exponents.len();
        Polynomial::from_terms(
            Polynomial::default_vars(n),
            exponents
                .iter()
                .enumerate()
                .map(|(j, &a)| (Monomial::pure_power(n, j, a), Rational::one())),
        )
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.num_vars(), self.num_vars(), "monomial length mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m1, a)| (m1.mul(m), a * c))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Value of the constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.num_vars()))
    }

    /// Renames the variables, keeping the terms.
    pub fn with_vars(mut self, vars: Vec<String>) -> Polynomial {
        assert_eq!(vars.len(), self.vars.len());
        self.vars = vars;
        self
    }

    /// Permutes variables: variable `i` of `self` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        let n = self.num_vars();
        assert_eq!(perm.len(), n);
        let mut vars = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            vars[p] = self.vars[i].clone();
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &p) in perm.iter().enumerate() {
                e[p] = m.exponents()[i];
            }
            (Monomial::new(e), c.clone())
        });
        Polynomial::from_terms(vars, terms)
    }

    /// Exponent tuple `(a_0, ..., a_n)` when the polynomial is `Σ c_j z_j^{a_j}`
    /// with every `c_j` nonzero and every `a_j >= 2`.
    pub fn brieskorn_exponents(&self) -> Option<Vec<u32>> {
        let n = self.num_vars();
        if self.terms.len() != n {
            return None;
        }
        let mut a = vec![0u32; n];
        for m in self.terms.keys() {
            let v = m.pure_power_var()?;
            if a[v] != 0 {
                return None;
            }
            a[v] = m.exponents()[v];
        }
        if a.iter().all(|&e| e >= 2) {
            Some(a)
        } else {
            None
        }
    }
}

/// The partial derivatives `(∂f/∂z_0, ..., ∂f/∂z_n)`.
pub fn jacobian_ideal(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.num_vars()).map(|i| f.derivative(i)).collect()
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms by decreasing total degree, then decreasing
    /// exponent vector; coefficient `1` omitted on non-constant terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", a)?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{}*", a)?;
            }
            m.fmt_with(&self.vars, f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn jacobian_of_cusp() {
        let f = parse_polynomial("x^3 + y^2").unwrap();
        let j = jacobian_ideal(&f);
        assert_eq!(j[0], parse_polynomial_vars("3*x^2", &["x", "y"]));
        assert_eq!(j[1], parse_polynomial_vars("2*y", &["x", "y"]));
    }

    #[test]
    fn jacobian_of_d4_type() {
        let f = parse_polynomial("x^2*y + x*y^2").unwrap();
        let j = jacobian_ideal(&f);
        assert_eq!(j[0], parse_polynomial_vars("2*x*y + y^2", &["x", "y"]));
        assert_eq!(j[1], parse_polynomial_vars("x^2 + 2*x*y", &["x", "y"]));
    }

    #[test]
    fn jacobian_of_constant_is_zero() {
        let f = Polynomial::constant(Polynomial::default_vars(2), q(1));
        let j = jacobian_ideal(&f);
        assert!(j.iter().all(Polynomial::is_zero));
        assert_eq!(j.len(), 2);
    }

    #[test]
    fn display_is_canonical() {
        let f = parse_polynomial("y - 2/3*x^2 + 1").unwrap();
        assert_eq!(f.to_string(), "-2/3*x^2 + y + 1");
        assert_eq!(Polynomial::zero(vec!["x".into()]).to_string(), "0");
    }

    #[test]
    fn brieskorn_detection() {
        let f = parse_polynomial("x^3 + 5*y^2").unwrap();
        assert_eq!(f.brieskorn_exponents(), Some(vec![3, 2]));
        let g = parse_polynomial("x^3 + y^3 + x*y").unwrap();
        assert_eq!(g.brieskorn_exponents(), None);
    }

    fn parse_polynomial_vars(s: &str, vars: &[&str]) -> Polynomial {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        crate::poly::parse_polynomial_with(s, &vars).unwrap()
    }
}
