use std::cmp::Ordering;

use crate::poly::{Monomial, WeightSystem};

/// Term order used for Gröbner computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Weighted degree `Σ β_i e_i`, ties broken by grevlex.
    Weighted(WeightSystem),
    /// Graded reverse lexicographic.
    Grevlex,
}

impl MonomialOrder {
    /// Integer weighted degree; zero for plain grevlex.
    pub fn weight(&self, m: &Monomial) -> u64 {
        match self {
            MonomialOrder::Weighted(w) => m
                .exponents()
                .iter()
                .zip(&w.beta_i)
                .map(|(&e, &b)| e as u64 * b)
                .sum(),
            MonomialOrder::Grevlex => 0,
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.weight(a)
            .cmp(&self.weight(b))
            .then_with(|| grevlex(a, b))
    }

    pub(crate) fn key(&self, m: Monomial) -> Key {
        Key {
            weight: self.weight(&m),
            degree: m.degree(),
            mono: m,
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// A monomial with its cached order data; `Ord` is the term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Key {
    pub weight: u64,
    pub degree: u64,
    pub mono: Monomial,
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then(self.degree.cmp(&other.degree))
            .then_with(|| {
                for (x, y) in self
                    .mono
                    .exponents()
                    .iter()
                    .zip(other.mono.exponents())
                    .rev()
                {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, weights_of};

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.compare(&m(&[2, 0]), &m(&[0, 1])), Ordering::Greater);
        // x*z < y^2 in grevlex with x > y > z.
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0]), &m(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn weighted_breaks_degree() {
        let w = weights_of(&parse_polynomial("x^3 + y^2").unwrap()).unwrap();
        let o = MonomialOrder::Weighted(w);
        // weight(x^2) = 4, weight(y) = 3.
        assert_eq!(o.compare(&m(&[2, 0]), &m(&[0, 1])), Ordering::Greater);
        // weight(x^3) = weight(y^2) = 6; grevlex decides.
        assert_eq!(o.compare(&m(&[3, 0]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn key_order_matches_compare() {
        let o = MonomialOrder::Grevlex;
        let all: Vec<Monomial> = (0..4)
            .flat_map(|a| (0..4).flat_map(move |b| (0..3).map(move |c| m(&[a, b, c]))))
            .collect();
        for a in &all {
            for b in &all {
                let ka = o.key(a.clone());
                let kb = o.key(b.clone());
                assert_eq!(ka.cmp(&kb), o.compare(a, b));
                // multiplicativity
                let c = m(&[1, 0, 2]);
                assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), o.compare(a, b));
            }
        }
    }
}
